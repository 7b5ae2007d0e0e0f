//! Finite bounded lattices, doubly ordered frames, and the representation
//! machinery connecting them: canonical frames of maximal
//! filter-ideal pairs, complex algebras of stable sets, and checkers for the
//! embedding and bounded-morphism facts that hold between them.
//!
//! Everything here is exhaustive and finite. Carriers are capped at 64
//! elements so subsets fit in a `u64` bitmask.

pub mod canonical;
pub mod embedding;
pub mod frame;
pub mod generate;
pub mod io;
pub mod lattice;
pub mod mask;
pub mod morphism;
pub mod report;
pub mod sweep;

/// A subset of a carrier with at most [`MAX_ELEMENTS`] elements, one bit per
/// element index.
pub type Mask = u64;

/// Hard upper bound on carrier sizes (lattices, frames, complex algebras).
pub const MAX_ELEMENTS: usize = 64;

/// Size guards for user-facing inputs and brute-force enumeration strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest lattice or frame accepted from input files and generators.
    pub carrier: usize,
    /// Above this size, filter/ideal enumeration switches from subset brute
    /// force to the principal-filter closure strategy.
    pub subset_brute_force: usize,
    /// Largest frame for which stable sets are enumerated.
    pub stable_sets: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            carrier: 30,
            subset_brute_force: 20,
            stable_sets: 20,
        }
    }
}

impl Caps {
    /// Defaults, with `POLARITY_CAP` (when set and parseable) overriding both
    /// the carrier and stable-set caps.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(v) = std::env::var("POLARITY_CAP") {
            if let Ok(n) = v.trim().parse::<usize>() {
                caps = caps.with_cap(n);
            }
        }
        caps
    }

    /// Override the carrier and stable-set caps with a single number, clamped
    /// to [`MAX_ELEMENTS`].
    pub fn with_cap(mut self, n: usize) -> Self {
        let n = n.min(MAX_ELEMENTS);
        self.carrier = n;
        self.stable_sets = n;
        self
    }
}

pub use frame::{ComplexAlgebra, Frame, FrameError, Rel};
pub use lattice::{Lattice, LatticeError};
pub use report::CheckResult;

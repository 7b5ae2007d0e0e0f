//! Finite bounded lattices: construction from a generating order relation,
//! meet/join tables, and enumeration of proper filters and ideals.
//!
//! Element identity is the positional index; labels are surface syntax only.
//! Subsets of the carrier are `Mask` bitmasks, so carriers are capped at 64.

use crate::mask::{bit, bits, contains, full, is_subset, label_set};
use crate::{Mask, MAX_ELEMENTS};
use serde::Serialize;
use thiserror::Error;

/// Whether a missing bound is a least upper bound or a greatest lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Join,
    Meet,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::Join => write!(f, "least upper bound"),
            BoundKind::Meet => write!(f, "greatest lower bound"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("carrier too large: {size} elements (cap {cap})")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}` in order pair")]
    UnknownLabel(String),
    #[error("order is not antisymmetric: `{0}` and `{1}` lie on a cycle")]
    NotAntisymmetric(String, String),
    #[error("not a lattice: `{a}` and `{b}` have no {kind}")]
    NotALattice { a: String, b: String, kind: BoundKind },
}

/// A finite bounded lattice. Immutable after construction; all invariants
/// (order laws, existence of all bounds, absorption) are established by the
/// constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    labels: Vec<String>,
    /// up[a] = { b : a <= b }, including a itself.
    up: Vec<Mask>,
    /// down[a] = { b : b <= a }.
    down: Vec<Mask>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

/// Build a lattice from labels and any generating set of the order (covers or
/// the full relation); the reflexive-transitive closure is always taken first.
pub fn build_lattice<L, S, P, Q>(labels: L, order_pairs: P) -> Result<Lattice, LatticeError>
where
    L: IntoIterator<Item = S>,
    S: Into<String>,
    P: IntoIterator<Item = (Q, Q)>,
    Q: AsRef<str>,
{
    let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
    let n = labels.len();
    if n == 0 {
        return Err(LatticeError::EmptyCarrier);
    }
    if n > MAX_ELEMENTS {
        return Err(LatticeError::CarrierTooLarge {
            size: n,
            cap: MAX_ELEMENTS,
        });
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(LatticeError::DuplicateLabel(l.clone()));
        }
    }
    let index = |s: &str| -> Result<usize, LatticeError> {
        labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| LatticeError::UnknownLabel(s.to_string()))
    };

    let mut up: Vec<Mask> = (0..n).map(bit).collect();
    for (a, b) in order_pairs {
        let (a, b) = (index(a.as_ref())?, index(b.as_ref())?);
        up[a] |= bit(b);
    }
    transitive_close(&mut up);
    Lattice::from_up_masks(labels, up)
}

/// In-place reflexive-transitive closure of successor masks.
pub(crate) fn transitive_close(up: &mut [Mask]) {
    for (i, m) in up.iter_mut().enumerate() {
        *m |= bit(i);
    }
    loop {
        let mut changed = false;
        for a in 0..up.len() {
            let mut m = up[a];
            for b in bits(up[a]) {
                m |= up[b];
            }
            if m != up[a] {
                up[a] = m;
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

impl Lattice {
    /// Validate an already reflexive-transitive successor relation and fill
    /// the join/meet tables.
    pub fn from_up_masks(labels: Vec<String>, up: Vec<Mask>) -> Result<Self, LatticeError> {
        let n = labels.len();
        debug_assert_eq!(up.len(), n);
        for a in 0..n {
            for b in bits(up[a]) {
                if a != b && contains(up[b], a) {
                    return Err(LatticeError::NotAntisymmetric(
                        labels[a].clone(),
                        labels[b].clone(),
                    ));
                }
            }
        }
        let mut down = vec![0u64; n];
        for a in 0..n {
            for b in bits(up[a]) {
                down[b] |= bit(a);
            }
        }
        let mut join = vec![vec![0usize; n]; n];
        let mut meet = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in a..n {
                let ub = up[a] & up[b];
                let lub = bits(ub).find(|&m| is_subset(ub, up[m])).ok_or_else(|| {
                    LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        kind: BoundKind::Join,
                    }
                })?;
                let lb = down[a] & down[b];
                let glb = bits(lb).find(|&m| is_subset(lb, down[m])).ok_or_else(|| {
                    LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        kind: BoundKind::Meet,
                    }
                })?;
                join[a][b] = lub;
                join[b][a] = lub;
                meet[a][b] = glb;
                meet[b][a] = glb;
            }
        }
        // Nonempty with all binary bounds, so both global bounds exist.
        let bottom = (0..n).fold(0, |acc, a| meet[acc][a]);
        let top = (0..n).fold(0, |acc, a| join[acc][a]);
        Ok(Lattice {
            labels,
            up,
            down,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        contains(self.up[a], b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn full_mask(&self) -> Mask {
        full(self.n())
    }

    /// ↑a = { b : a ≤ b }, as a plain subset (improper as a filter when a is
    /// the bottom).
    pub fn principal_filter(&self, a: usize) -> Mask {
        self.up[a]
    }

    /// ↓a = { b : b ≤ a }.
    pub fn principal_ideal(&self, a: usize) -> Mask {
        self.down[a]
    }

    /// All (a, b) with a ≤ b, by label. Feeding these back into
    /// [`build_lattice`] reproduces an identical lattice.
    pub fn leq_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for a in 0..self.n() {
            for b in bits(self.up[a]) {
                out.push((self.labels[a].clone(), self.labels[b].clone()));
            }
        }
        out
    }

    /// Nonempty, upward closed, meet closed, and excludes the bottom.
    pub fn is_proper_filter(&self, s: Mask) -> bool {
        if s == 0 || contains(s, self.bottom) {
            return false;
        }
        for a in bits(s) {
            if !is_subset(self.up[a], s) {
                return false;
            }
            for b in bits(s) {
                if !contains(s, self.meet[a][b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Nonempty, downward closed, join closed, and excludes the top.
    pub fn is_proper_ideal(&self, s: Mask) -> bool {
        if s == 0 || contains(s, self.top) {
            return false;
        }
        for a in bits(s) {
            if !is_subset(self.down[a], s) {
                return false;
            }
            for b in bits(s) {
                if !contains(s, self.join[a][b]) {
                    return false;
                }
            }
        }
        true
    }

    /// All proper filters, ascending as masks. Subset brute force up to
    /// `brute_limit` elements; above that, principal filters closed under
    /// pairwise intersection (which exhausts all filters of a finite lattice).
    pub fn enumerate_filters_with(&self, brute_limit: usize) -> Vec<Mask> {
        let n = self.n();
        if n <= brute_limit {
            (1..=full(n))
                .filter(|&s| self.is_proper_filter(s))
                .collect()
        } else {
            let mut sets: Vec<Mask> = (0..n)
                .filter(|&a| a != self.bottom)
                .map(|a| self.up[a])
                .collect();
            close_under_intersection(&mut sets);
            sets.retain(|&s| self.is_proper_filter(s));
            sets.sort_unstable();
            sets.dedup();
            sets
        }
    }

    pub fn enumerate_filters(&self) -> Vec<Mask> {
        self.enumerate_filters_with(crate::Caps::default().subset_brute_force)
    }

    pub fn enumerate_ideals_with(&self, brute_limit: usize) -> Vec<Mask> {
        let n = self.n();
        if n <= brute_limit {
            (1..=full(n)).filter(|&s| self.is_proper_ideal(s)).collect()
        } else {
            let mut sets: Vec<Mask> = (0..n)
                .filter(|&a| a != self.top)
                .map(|a| self.down[a])
                .collect();
            close_under_intersection(&mut sets);
            sets.retain(|&s| self.is_proper_ideal(s));
            sets.sort_unstable();
            sets.dedup();
            sets
        }
    }

    pub fn enumerate_ideals(&self) -> Vec<Mask> {
        self.enumerate_ideals_with(crate::Caps::default().subset_brute_force)
    }

    pub fn subset_label(&self, s: Mask) -> String {
        label_set(s, &self.labels)
    }
}

fn close_under_intersection(sets: &mut Vec<Mask>) {
    loop {
        let mut added = false;
        let len = sets.len();
        for i in 0..len {
            for j in i + 1..len {
                let m = sets[i] & sets[j];
                if m != 0 && !sets.contains(&m) {
                    sets.push(m);
                    added = true;
                }
            }
        }
        if !added {
            return;
        }
    }
}

/// Small named lattices used across the test and sweep corpora.
pub mod fixtures {
    use super::{build_lattice, Lattice};

    /// 0 < 1.
    pub fn chain2() -> Lattice {
        build_lattice(["0", "1"], [("0", "1")]).unwrap()
    }

    /// 0 < a < 1.
    pub fn chain3() -> Lattice {
        build_lattice(["0", "a", "1"], [("0", "a"), ("a", "1")]).unwrap()
    }

    /// The four-element Boolean lattice 2².
    pub fn boolean2() -> Lattice {
        build_lattice(
            ["0", "a", "b", "1"],
            [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap()
    }

    /// The diamond: three pairwise incomparable atoms between bounds.
    pub fn m3() -> Lattice {
        build_lattice(
            ["0", "a", "b", "c", "1"],
            [
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ],
        )
        .unwrap()
    }

    /// The pentagon: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a, c.
    pub fn n5() -> Lattice {
        build_lattice(
            ["0", "a", "b", "c", "1"],
            [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        )
        .unwrap()
    }

    pub fn all() -> Vec<(&'static str, Lattice)> {
        vec![
            ("chain2", chain2()),
            ("chain3", chain3()),
            ("boolean2", boolean2()),
            ("m3", m3()),
            ("n5", n5()),
        ]
    }
}

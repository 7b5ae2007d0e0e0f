//! The canonical frame of a finite bounded lattice: maximal filter-ideal
//! pairs ordered componentwise by inclusion, plus the representation map h
//! sending an element to the set of points whose filter contains it.

use crate::frame::Frame;
use crate::lattice::Lattice;
use crate::mask::{bit, bits, contains};
use crate::Mask;
use thiserror::Error;

/// A disjoint (proper filter, proper ideal) pair over a specific lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterIdealPair {
    pub filter: Mask,
    pub ideal: Mask,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("filter component is not a proper filter")]
    FilterInvalid,
    #[error("ideal component is not a proper ideal")]
    IdealInvalid,
    #[error("filter and ideal intersect")]
    NotDisjoint,
}

pub fn validate_pair(l: &Lattice, p: &FilterIdealPair) -> Result<(), PairError> {
    if !l.is_proper_filter(p.filter) {
        return Err(PairError::FilterInvalid);
    }
    if !l.is_proper_ideal(p.ideal) {
        return Err(PairError::IdealInvalid);
    }
    if p.filter & p.ideal != 0 {
        return Err(PairError::NotDisjoint);
    }
    Ok(())
}

/// Smallest filter containing `seed`: close under binary meets and upward
/// closure to a fixpoint, worklist in index order. May be improper (contain
/// the bottom).
pub fn generated_filter(l: &Lattice, seed: Mask) -> Mask {
    let mut s = seed;
    loop {
        let mut next = s;
        for a in bits(s) {
            next |= l.principal_filter(a);
            for b in bits(s) {
                next |= bit(l.meet(a, b));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Dual of [`generated_filter`].
pub fn generated_ideal(l: &Lattice, seed: Mask) -> Mask {
    let mut s = seed;
    loop {
        let mut next = s;
        for a in bits(s) {
            next |= l.principal_ideal(a);
            for b in bits(s) {
                next |= bit(l.join(a, b));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// A single-element growth of one side of a pair that stays disjoint from
/// the other side, witnessing non-maximality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Filter { element: usize },
    Ideal { element: usize },
}

/// Returns a violating extension, or `None` when the pair is maximal.
///
/// Single-element growth suffices: if a strictly larger disjoint filter F'
/// exists, any a ∈ F' \ F generates a filter inside F', hence disjoint.
pub fn maximality_violation(l: &Lattice, p: &FilterIdealPair) -> Option<Extension> {
    for a in 0..l.n() {
        if !contains(p.filter, a) {
            let grown = generated_filter(l, p.filter | bit(a));
            if grown & p.ideal == 0 && l.is_proper_filter(grown) {
                return Some(Extension::Filter { element: a });
            }
        }
    }
    for a in 0..l.n() {
        if !contains(p.ideal, a) {
            let grown = generated_ideal(l, p.ideal | bit(a));
            if grown & p.filter == 0 && l.is_proper_ideal(grown) {
                return Some(Extension::Ideal { element: a });
            }
        }
    }
    None
}

pub fn is_maximal_pair(l: &Lattice, p: &FilterIdealPair) -> bool {
    maximality_violation(l, p).is_none()
}

/// Grow a disjoint pair to a maximal one. One saturation pass over the
/// filter in ascending index order, then one over the ideal against the
/// final filter. A single filter pass suffices: an element blocked once
/// stays blocked as F grows, and enlarging the ideal afterwards only adds
/// intersection witnesses, so filter-side maximality is preserved.
pub fn extend_to_maximal(l: &Lattice, p: &FilterIdealPair) -> FilterIdealPair {
    debug_assert_eq!(validate_pair(l, p), Ok(()));
    let mut filter = p.filter;
    for a in 0..l.n() {
        if !contains(filter, a) {
            let grown = generated_filter(l, filter | bit(a));
            if grown & p.ideal == 0 && l.is_proper_filter(grown) {
                filter = grown;
            }
        }
    }
    let mut ideal = p.ideal;
    for a in 0..l.n() {
        if !contains(ideal, a) {
            let grown = generated_ideal(l, ideal | bit(a));
            if grown & filter == 0 && l.is_proper_ideal(grown) {
                ideal = grown;
            }
        }
    }
    FilterIdealPair { filter, ideal }
}

/// All maximal pairs: scan proper filters × proper ideals for disjointness,
/// then keep the maximal ones. Order follows the two ascending enumerations.
pub fn maximal_pairs(l: &Lattice) -> Vec<FilterIdealPair> {
    let filters = l.enumerate_filters();
    let ideals = l.enumerate_ideals();
    let mut out = Vec::new();
    for &filter in &filters {
        for &ideal in &ideals {
            if filter & ideal != 0 {
                continue;
            }
            let p = FilterIdealPair { filter, ideal };
            if is_maximal_pair(l, &p) {
                out.push(p);
            }
        }
    }
    out
}

/// The canonical frame: points are the maximal pairs, and x ≤ᵢ y iff the
/// i-th components are included.
#[derive(Debug, Clone)]
pub struct CanonicalFrame {
    pub lattice: Lattice,
    pub points: Vec<FilterIdealPair>,
    pub frame: Frame,
}

pub fn canonical_frame(l: &Lattice) -> CanonicalFrame {
    let points = maximal_pairs(l);
    let labels: Vec<String> = points
        .iter()
        .map(|p| format!("<{};{}>", l.subset_label(p.filter), l.subset_label(p.ideal)))
        .collect();
    let mut up1: Vec<Mask> = vec![0; points.len()];
    let mut up2: Vec<Mask> = vec![0; points.len()];
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if p.filter & !q.filter == 0 {
                up1[i] |= bit(j);
            }
            if p.ideal & !q.ideal == 0 {
                up2[i] |= bit(j);
            }
        }
    }
    // Componentwise inclusion is already a quasiorder; maximality forces the
    // doubly-ordered condition, which the validator re-checks.
    let frame = Frame::from_up_masks(labels, up1, up2)
        .expect("canonical frame must be doubly ordered");
    CanonicalFrame {
        lattice: l.clone(),
        points,
        frame,
    }
}

/// h(a) = the set of canonical-frame points whose filter contains a, as a
/// mask over point indices; every h(a) is checked to be a stable set.
pub fn h_map(cf: &CanonicalFrame) -> Vec<Mask> {
    (0..cf.lattice.n())
        .map(|a| {
            let mut img = 0;
            for (i, p) in cf.points.iter().enumerate() {
                if contains(p.filter, a) {
                    img |= bit(i);
                }
            }
            assert!(
                cf.frame.is_stable(img),
                "h({}) is not a stable set of the canonical frame",
                cf.lattice.label(a)
            );
            img
        })
        .collect()
}

//! Embedding checkers: the map k from a lattice frame into the canonical
//! frame of its complex algebra, generic lattice-embedding and isomorphism
//! checks, and the finite canonical-extension round trip.

use crate::canonical::{self, CanonicalFrame, FilterIdealPair};
use crate::frame::{ComplexAlgebra, Frame, FrameError, LatticeFrameReport, Rel};
use crate::lattice::Lattice;
use crate::mask::{bit, contains, full, is_subset};
use crate::report::CheckResult;
use crate::Mask;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbeddingError {
    #[error("not a lattice frame: {0:?}")]
    NotALatticeFrame(LatticeFrameReport),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("characterization mismatch at `{point}`: {side} is {actual}, expected {expected}")]
    CharacterizationMismatch {
        point: String,
        side: &'static str,
        expected: String,
        actual: String,
    },
}

/// The image of one frame point under k: masks over stable-set indices of
/// the complex algebra. k1 collects the stable sets containing the point,
/// k2 those whose r-image contains it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FramePointImage {
    pub k1: Mask,
    pub k2: Mask,
}

impl FramePointImage {
    pub fn as_pair(&self) -> FilterIdealPair {
        FilterIdealPair {
            filter: self.k1,
            ideal: self.k2,
        }
    }
}

/// Compute the complex algebra and the per-point images of k. Refuses
/// frames that fail any of LF0-LF2.
pub fn k_map(frame: &Frame, cap: usize) -> Result<(ComplexAlgebra, Vec<FramePointImage>), EmbeddingError> {
    let report = frame.check_lattice_frame();
    if !report.all_pass() {
        return Err(EmbeddingError::NotALatticeFrame(report));
    }
    let ca = frame.complex_algebra(cap)?;
    let images = (0..frame.n())
        .map(|x| {
            let mut k1 = 0;
            let mut k2 = 0;
            for (i, &s) in ca.sets.iter().enumerate() {
                if contains(s, x) {
                    k1 |= bit(i);
                }
                if contains(frame.op_r(s), x) {
                    k2 |= bit(i);
                }
            }
            FramePointImage { k1, k2 }
        })
        .collect();
    Ok((ca, images))
}

/// k1(x) is the principal filter of ↑₁x in the complex algebra. Returns
/// ↑₁x (a stable set of any lattice frame) after asserting that.
pub fn characterize_k1(
    frame: &Frame,
    ca: &ComplexAlgebra,
    images: &[FramePointImage],
    x: usize,
) -> Result<Mask, EmbeddingError> {
    let up1x = frame.up(Rel::R1, x);
    let mismatch = |actual: Mask, expected: Mask| EmbeddingError::CharacterizationMismatch {
        point: frame.label(x).to_string(),
        side: "k1",
        expected: format!("{expected:b}"),
        actual: format!("{actual:b}"),
    };
    let idx = ca.set_index(up1x).ok_or_else(|| mismatch(0, up1x))?;
    let principal = ca.lattice.principal_filter(idx);
    if images[x].k1 != principal {
        return Err(mismatch(images[x].k1, principal));
    }
    Ok(up1x)
}

/// k2(x) is the principal ideal of □₁(W_x) where W_x = { y : x ≰₂ y }.
/// Returns □₁(W_x), the largest stable set whose r-image contains x.
pub fn characterize_k2(
    frame: &Frame,
    ca: &ComplexAlgebra,
    images: &[FramePointImage],
    x: usize,
) -> Result<Mask, EmbeddingError> {
    let w_x = frame.full_mask() & !frame.up(Rel::R2, x);
    let box1_w = frame.box_op(Rel::R1, w_x);
    let mismatch = |actual: Mask, expected: Mask| EmbeddingError::CharacterizationMismatch {
        point: frame.label(x).to_string(),
        side: "k2",
        expected: format!("{expected:b}"),
        actual: format!("{actual:b}"),
    };
    let idx = ca.set_index(box1_w).ok_or_else(|| mismatch(0, box1_w))?;
    let principal = ca.lattice.principal_ideal(idx);
    if images[x].k2 != principal {
        return Err(mismatch(images[x].k2, principal));
    }
    if !contains(frame.op_r(box1_w), x) {
        return Err(mismatch(images[x].k2, principal));
    }
    Ok(box1_w)
}

/// Proof obligations for the frame embedding, checked exhaustively.
/// `reflects_leq2` is observed and reported but carries no claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameEmbeddingReport {
    pub preserves_leq1: CheckResult,
    pub preserves_leq2: CheckResult,
    pub reflects_leq1: CheckResult,
    pub injective: CheckResult,
    pub images_maximal: CheckResult,
    pub reflects_leq2: bool,
}

impl FrameEmbeddingReport {
    pub fn all_pass(&self) -> bool {
        self.preserves_leq1.passed()
            && self.preserves_leq2.passed()
            && self.reflects_leq1.passed()
            && self.injective.passed()
            && self.images_maximal.passed()
    }
}

pub fn verify_frame_embedding(
    frame: &Frame,
    ca: &ComplexAlgebra,
    images: &[FramePointImage],
) -> FrameEmbeddingReport {
    let n = frame.n();
    let lbl = |x: usize| frame.label(x).to_string();

    let mut preserves_leq1 = CheckResult::Pass;
    let mut preserves_leq2 = CheckResult::Pass;
    let mut reflects_leq1 = CheckResult::Pass;
    let mut reflects_leq2 = true;
    'rel: for x in 0..n {
        for y in 0..n {
            if frame.leq(Rel::R1, x, y) && !is_subset(images[x].k1, images[y].k1) {
                preserves_leq1 = CheckResult::fail([lbl(x), lbl(y)]);
                break 'rel;
            }
            if frame.leq(Rel::R2, x, y) && !is_subset(images[x].k2, images[y].k2) {
                preserves_leq2 = CheckResult::fail([lbl(x), lbl(y)]);
                break 'rel;
            }
            if is_subset(images[x].k1, images[y].k1) && !frame.leq(Rel::R1, x, y) {
                reflects_leq1 = CheckResult::fail([lbl(x), lbl(y)]);
                break 'rel;
            }
            if is_subset(images[x].k2, images[y].k2) && !frame.leq(Rel::R2, x, y) {
                reflects_leq2 = false;
            }
        }
    }

    let mut injective = CheckResult::Pass;
    'inj: for x in 0..n {
        for y in x + 1..n {
            if images[x] == images[y] {
                injective = CheckResult::fail([lbl(x), lbl(y)]);
                break 'inj;
            }
        }
    }

    let mut images_maximal = CheckResult::Pass;
    for x in 0..n {
        let pair = images[x].as_pair();
        if canonical::validate_pair(&ca.lattice, &pair).is_err()
            || !canonical::is_maximal_pair(&ca.lattice, &pair)
        {
            images_maximal = CheckResult::fail([lbl(x)]);
            break;
        }
    }

    FrameEmbeddingReport {
        preserves_leq1,
        preserves_leq2,
        reflects_leq1,
        injective,
        images_maximal,
        reflects_leq2,
    }
}

/// Injectivity plus preservation of join, meet, bottom, and top for a total
/// element map f: L → M.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeEmbeddingReport {
    pub injective: CheckResult,
    pub preserves_join: CheckResult,
    pub preserves_meet: CheckResult,
    pub preserves_bounds: CheckResult,
}

impl LatticeEmbeddingReport {
    pub fn all_pass(&self) -> bool {
        self.injective.passed()
            && self.preserves_join.passed()
            && self.preserves_meet.passed()
            && self.preserves_bounds.passed()
    }
}

pub fn verify_lattice_embedding(f: &[usize], l: &Lattice, m: &Lattice) -> LatticeEmbeddingReport {
    assert_eq!(f.len(), l.n(), "map must be total on the source");
    let lbl = |a: usize| l.label(a).to_string();

    let mut injective = CheckResult::Pass;
    'inj: for a in 0..l.n() {
        for b in a + 1..l.n() {
            if f[a] == f[b] {
                injective = CheckResult::fail([lbl(a), lbl(b)]);
                break 'inj;
            }
        }
    }

    let mut preserves_join = CheckResult::Pass;
    let mut preserves_meet = CheckResult::Pass;
    'ops: for a in 0..l.n() {
        for b in 0..l.n() {
            if f[l.join(a, b)] != m.join(f[a], f[b]) {
                preserves_join = CheckResult::fail([lbl(a), lbl(b)]);
                break 'ops;
            }
            if f[l.meet(a, b)] != m.meet(f[a], f[b]) {
                preserves_meet = CheckResult::fail([lbl(a), lbl(b)]);
                break 'ops;
            }
        }
    }

    let preserves_bounds = if f[l.bottom()] == m.bottom() && f[l.top()] == m.top() {
        CheckResult::Pass
    } else {
        CheckResult::fail([lbl(l.bottom()), lbl(l.top())])
    };

    LatticeEmbeddingReport {
        injective,
        preserves_join,
        preserves_meet,
        preserves_bounds,
    }
}

/// Backtracking isomorphism search seeded by (up-set size, down-set size)
/// profiles. Returns a bijection preserving the order both ways, if any.
pub fn lattice_isomorphic(l: &Lattice, m: &Lattice) -> Option<Vec<usize>> {
    if l.n() != m.n() {
        return None;
    }
    let n = l.n();
    let profile = |lat: &Lattice, a: usize| {
        (
            lat.principal_filter(a).count_ones(),
            lat.principal_ideal(a).count_ones(),
        )
    };
    let mut lp: Vec<_> = (0..n).map(|a| profile(l, a)).collect();
    let mut mp: Vec<_> = (0..n).map(|a| profile(m, a)).collect();
    lp.sort_unstable();
    mp.sort_unstable();
    if lp != mp {
        return None;
    }

    let mut assigned = vec![usize::MAX; n];
    let mut used: Mask = 0;
    fn backtrack(
        l: &Lattice,
        m: &Lattice,
        a: usize,
        assigned: &mut Vec<usize>,
        used: &mut Mask,
    ) -> bool {
        if a == l.n() {
            return true;
        }
        for b in 0..m.n() {
            if contains(*used, b) {
                continue;
            }
            if l.principal_filter(a).count_ones() != m.principal_filter(b).count_ones()
                || l.principal_ideal(a).count_ones() != m.principal_ideal(b).count_ones()
            {
                continue;
            }
            let consistent = (0..a).all(|c| {
                l.leq(c, a) == m.leq(assigned[c], b) && l.leq(a, c) == m.leq(b, assigned[c])
            });
            if !consistent {
                continue;
            }
            assigned[a] = b;
            *used |= bit(b);
            if backtrack(l, m, a + 1, assigned, used) {
                return true;
            }
            *used &= !bit(b);
            assigned[a] = usize::MAX;
        }
        false
    }
    if backtrack(l, m, 0, &mut assigned, &mut used) {
        Some(assigned)
    } else {
        None
    }
}

/// Result of embedding a lattice into the complex algebra of its canonical
/// frame. For finite lattices the embedding is onto, making h an
/// isomorphism; surjectivity is an external finiteness fact, reported
/// separately from the embedding obligations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub embedding: LatticeEmbeddingReport,
    pub surjective: bool,
    pub complex_algebra_size: usize,
}

impl RoundtripReport {
    pub fn is_isomorphism(&self) -> bool {
        self.embedding.all_pass() && self.surjective
    }
}

pub fn canonical_extension_roundtrip(l: &Lattice, cap: usize) -> Result<RoundtripReport, FrameError> {
    let cf = canonical::canonical_frame(l);
    let ca = cf.frame.complex_algebra(cap)?;
    roundtrip_with(l, &cf, &ca)
}

pub fn roundtrip_with(
    l: &Lattice,
    cf: &CanonicalFrame,
    ca: &ComplexAlgebra,
) -> Result<RoundtripReport, FrameError> {
    let h = canonical::h_map(cf);
    let f: Vec<usize> = h
        .iter()
        .map(|&img| {
            ca.set_index(img)
                .expect("h image is stable, so it is a complex-algebra element")
        })
        .collect();
    let embedding = verify_lattice_embedding(&f, l, &ca.lattice);
    let surjective = {
        let mut seen: Mask = 0;
        for &i in &f {
            seen |= bit(i);
        }
        seen == full(ca.lattice.n())
    };
    Ok(RoundtripReport {
        embedding,
        surjective,
        complex_algebra_size: ca.lattice.n(),
    })
}

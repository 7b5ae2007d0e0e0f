//! Doubly ordered frames: two quasiorders whose intersection is the identity,
//! the l/r polarity operators, modal box/diamond, stable sets, the LF0-LF2
//! lattice-frame axioms, and the complex algebra of stable sets.

use crate::lattice::{self, Lattice, LatticeError};
use crate::mask::{bit, bits, contains, full, is_subset, label_set};
use crate::report::CheckResult;
use crate::{Mask, MAX_ELEMENTS};
use serde::Serialize;
use thiserror::Error;

/// Which of the two quasiorders an operator refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    R1,
    R2,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("carrier too large: {size} elements (cap {cap})")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}` in relation pair")]
    UnknownLabel(String),
    #[error("not doubly ordered: `{0}` ≤1 `{1}` and `{0}` ≤2 `{1}` but they differ")]
    NotDoublyOrdered(String, String),
    #[error("complex algebra violates the lattice axioms: {0}")]
    ComplexAlgebraInvalid(LatticeError),
}

/// A doubly ordered frame. The two relations are stored as successor masks
/// and are reflexive-transitively closed; the constructor enforces that their
/// intersection is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    labels: Vec<String>,
    up1: Vec<Mask>,
    up2: Vec<Mask>,
}

/// Build a frame from label pairs generating the two quasiorders; the
/// reflexive-transitive closure of each is taken before validation.
pub fn build_frame<L, S, P1, Q1, P2, Q2>(
    labels: L,
    leq1: P1,
    leq2: P2,
) -> Result<Frame, FrameError>
where
    L: IntoIterator<Item = S>,
    S: Into<String>,
    P1: IntoIterator<Item = (Q1, Q1)>,
    Q1: AsRef<str>,
    P2: IntoIterator<Item = (Q2, Q2)>,
    Q2: AsRef<str>,
{
    let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
    let n = labels.len();
    if n > MAX_ELEMENTS {
        return Err(FrameError::CarrierTooLarge {
            size: n,
            cap: MAX_ELEMENTS,
        });
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(FrameError::DuplicateLabel(l.clone()));
        }
    }
    let index = |s: &str| -> Result<usize, FrameError> {
        labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| FrameError::UnknownLabel(s.to_string()))
    };
    let mut up1: Vec<Mask> = (0..n).map(bit).collect();
    for (a, b) in leq1 {
        let (a, b) = (index(a.as_ref())?, index(b.as_ref())?);
        up1[a] |= bit(b);
    }
    let mut up2: Vec<Mask> = (0..n).map(bit).collect();
    for (a, b) in leq2 {
        let (a, b) = (index(a.as_ref())?, index(b.as_ref())?);
        up2[a] |= bit(b);
    }
    lattice::transitive_close(&mut up1);
    lattice::transitive_close(&mut up2);
    Frame::from_up_masks(labels, up1, up2)
}

impl Frame {
    /// Validate already-closed successor masks.
    pub(crate) fn from_up_masks(
        labels: Vec<String>,
        up1: Vec<Mask>,
        up2: Vec<Mask>,
    ) -> Result<Self, FrameError> {
        let n = labels.len();
        debug_assert_eq!(up1.len(), n);
        debug_assert_eq!(up2.len(), n);
        for x in 0..n {
            let both = up1[x] & up2[x] & !bit(x);
            if both != 0 {
                let y = both.trailing_zeros() as usize;
                return Err(FrameError::NotDoublyOrdered(
                    labels[x].clone(),
                    labels[y].clone(),
                ));
            }
        }
        Ok(Frame { labels, up1, up2 })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full_mask(&self) -> Mask {
        full(self.n())
    }

    pub fn up(&self, rel: Rel, x: usize) -> Mask {
        match rel {
            Rel::R1 => self.up1[x],
            Rel::R2 => self.up2[x],
        }
    }

    pub fn leq(&self, rel: Rel, x: usize, y: usize) -> bool {
        contains(self.up(rel, x), y)
    }

    /// l(Y) = { x : ↑₁x ∩ Y = ∅ }.
    pub fn op_l(&self, y: Mask) -> Mask {
        let mut out = 0;
        for x in 0..self.n() {
            if self.up1[x] & y == 0 {
                out |= bit(x);
            }
        }
        out
    }

    /// r(Y) = { x : ↑₂x ∩ Y = ∅ }.
    pub fn op_r(&self, y: Mask) -> Mask {
        let mut out = 0;
        for x in 0..self.n() {
            if self.up2[x] & y == 0 {
                out |= bit(x);
            }
        }
        out
    }

    /// □ = { x : ↑x ⊆ Y } with respect to the chosen quasiorder.
    pub fn box_op(&self, rel: Rel, y: Mask) -> Mask {
        let mut out = 0;
        for x in 0..self.n() {
            if is_subset(self.up(rel, x), y) {
                out |= bit(x);
            }
        }
        out
    }

    /// ◇ = { x : ↑x ∩ Y ≠ ∅ }.
    pub fn diamond_op(&self, rel: Rel, y: Mask) -> Mask {
        let mut out = 0;
        for x in 0..self.n() {
            if self.up(rel, x) & y != 0 {
                out |= bit(x);
            }
        }
        out
    }

    /// l(r(Y)), cross-checked against the modal route □₁◇₂(Y) on every call.
    /// A mismatch would be an implementation bug, not a property of the input.
    pub fn lr_closure(&self, y: Mask) -> Mask {
        let via_lr = self.op_l(self.op_r(y));
        let via_modal = self.box_op(Rel::R1, self.diamond_op(Rel::R2, y));
        assert_eq!(
            via_lr, via_modal,
            "internal mismatch: l∘r and box1∘diamond2 disagree on {y:b}"
        );
        via_lr
    }

    pub fn is_increasing(&self, rel: Rel, y: Mask) -> bool {
        bits(y).all(|x| is_subset(self.up(rel, x), y))
    }

    pub fn is_stable(&self, y: Mask) -> bool {
        self.lr_closure(y) == y
    }

    /// All stable sets, ascending as masks. Brute force over all subsets.
    pub fn stable_sets(&self, cap: usize) -> Result<Vec<Mask>, FrameError> {
        if self.n() > cap {
            return Err(FrameError::CarrierTooLarge {
                size: self.n(),
                cap,
            });
        }
        Ok((0..=self.full_mask())
            .filter(|&y| self.is_stable(y))
            .collect())
    }

    /// z is ≤ᵢ-maximal iff z ≤ᵢ w implies w ≤ᵢ z (the quasiorder reading).
    pub fn is_maximal(&self, rel: Rel, z: usize) -> bool {
        bits(self.up(rel, z)).all(|w| self.leq(rel, w, z))
    }

    /// Direct quantifier evaluation of the three lattice-frame axioms.
    pub fn check_lattice_frame(&self) -> LatticeFrameReport {
        LatticeFrameReport {
            lf0: self.check_lf0(),
            lf1: self.check_lf_separation(Rel::R1, Rel::R2),
            lf2: self.check_lf_separation(Rel::R2, Rel::R1),
        }
    }

    /// LF0: each point is below a ≤1-maximal and a ≤2-maximal point.
    fn check_lf0(&self) -> CheckResult {
        for rel in [Rel::R1, Rel::R2] {
            for x in 0..self.n() {
                if !bits(self.up(rel, x)).any(|z| self.is_maximal(rel, z)) {
                    return CheckResult::fail([self.labels[x].clone()]);
                }
            }
        }
        CheckResult::Pass
    }

    /// x ≰ₐ y ⟹ ∃z: y ≤ₐ z and ∀w: x ≤ₐ w ⟹ z ≰ᵦ w.
    /// LF1 is (a, b) = (≤1, ≤2); LF2 is the mirror image.
    fn check_lf_separation(&self, a: Rel, b: Rel) -> CheckResult {
        for x in 0..self.n() {
            for y in 0..self.n() {
                if self.leq(a, x, y) {
                    continue;
                }
                let ok = bits(self.up(a, y)).any(|z| self.up(b, z) & self.up(a, x) == 0);
                if !ok {
                    return CheckResult::fail([self.labels[x].clone(), self.labels[y].clone()]);
                }
            }
        }
        CheckResult::Pass
    }

    /// The lattice of stable sets: meet is intersection, join is the
    /// lr-closure of the union, bottom ∅, top X. Built from the inclusion
    /// order and cross-checked against those two formulas.
    pub fn complex_algebra(&self, cap: usize) -> Result<ComplexAlgebra, FrameError> {
        let sets = self.stable_sets(cap)?;
        if sets.len() > MAX_ELEMENTS {
            return Err(FrameError::CarrierTooLarge {
                size: sets.len(),
                cap: MAX_ELEMENTS,
            });
        }
        let labels: Vec<String> = sets.iter().map(|&s| label_set(s, &self.labels)).collect();
        let mut up: Vec<Mask> = vec![0; sets.len()];
        for (i, &a) in sets.iter().enumerate() {
            for (j, &b) in sets.iter().enumerate() {
                if is_subset(a, b) {
                    up[i] |= bit(j);
                }
            }
        }
        let lattice =
            Lattice::from_up_masks(labels, up).map_err(FrameError::ComplexAlgebraInvalid)?;
        let ca = ComplexAlgebra {
            sets,
            lattice,
        };
        for i in 0..ca.sets.len() {
            for j in 0..ca.sets.len() {
                assert_eq!(
                    ca.sets[ca.lattice.meet(i, j)],
                    ca.sets[i] & ca.sets[j],
                    "complex-algebra meet is not intersection"
                );
                assert_eq!(
                    ca.sets[ca.lattice.join(i, j)],
                    self.lr_closure(ca.sets[i] | ca.sets[j]),
                    "complex-algebra join is not lr of union"
                );
            }
        }
        assert_eq!(ca.sets[ca.lattice.bottom()], 0);
        assert_eq!(ca.sets[ca.lattice.top()], self.full_mask());
        Ok(ca)
    }

    pub fn subset_label(&self, s: Mask) -> String {
        label_set(s, &self.labels)
    }
}

/// Result of the LF0-LF2 axiom checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeFrameReport {
    pub lf0: CheckResult,
    pub lf1: CheckResult,
    pub lf2: CheckResult,
}

impl LatticeFrameReport {
    pub fn all_pass(&self) -> bool {
        self.lf0.passed() && self.lf1.passed() && self.lf2.passed()
    }
}

/// The stable sets of a frame together with their lattice, element i of the
/// lattice being `sets[i]`; sets are in ascending mask order.
#[derive(Debug, Clone)]
pub struct ComplexAlgebra {
    pub sets: Vec<Mask>,
    pub lattice: Lattice,
}

impl ComplexAlgebra {
    pub fn set_index(&self, s: Mask) -> Option<usize> {
        self.sets.binary_search(&s).ok()
    }
}

/// The three-point frame from the non-definability counterexample:
/// X = {x,y,z}, ≤1 = id ∪ {(x,y)}, ≤2 = id ∪ {(x,z)}.
pub fn fig1_frame() -> Frame {
    build_frame(["x", "y", "z"], [("x", "y")], [("x", "z")]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(frame: &Frame, labels: &[&str]) -> Mask {
        labels
            .iter()
            .map(|l| bit(frame.index(l).unwrap()))
            .fold(0, |a, b| a | b)
    }

    #[test]
    fn fig1_is_doubly_ordered() {
        let f = fig1_frame();
        assert_eq!(f.n(), 3);
        assert!(f.leq(Rel::R1, 0, 1));
        assert!(f.leq(Rel::R2, 0, 2));
    }

    #[test]
    fn equal_relations_are_rejected() {
        let err = build_frame(["s", "t"], [("s", "t")], [("s", "t")]).unwrap_err();
        assert_eq!(
            err,
            FrameError::NotDoublyOrdered("s".into(), "t".into())
        );
    }

    #[test]
    fn one_point_identity_frame() {
        let f = build_frame(["p"], Vec::<(&str, &str)>::new(), Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(f.stable_sets(20).unwrap(), vec![0, 1]);
    }

    #[test]
    fn l_and_r_on_fig1() {
        let f = fig1_frame();
        assert_eq!(f.op_l(m(&f, &["y"])), m(&f, &["z"]));
        assert_eq!(f.op_l(0), f.full_mask());
        assert_eq!(f.op_r(f.full_mask()), 0);
        // direct scan oracle for l over every subset
        for y in 0..=f.full_mask() {
            let expect: Mask = (0..f.n())
                .filter(|&x| f.up(Rel::R1, x) & y == 0)
                .map(bit)
                .fold(0, |a, b| a | b);
            assert_eq!(f.op_l(y), expect);
        }
    }

    #[test]
    fn box_and_diamond_on_fig1() {
        let f = fig1_frame();
        assert_eq!(f.box_op(Rel::R1, f.full_mask()), f.full_mask());
        assert_eq!(f.diamond_op(Rel::R2, 0), 0);
        assert_eq!(f.diamond_op(Rel::R2, m(&f, &["z"])), m(&f, &["x", "z"]));
        assert_eq!(f.box_op(Rel::R1, m(&f, &["x", "y"])), m(&f, &["x", "y"]));
    }

    #[test]
    fn lr_closure_on_fig1() {
        let f = fig1_frame();
        assert_eq!(f.lr_closure(m(&f, &["x"])), 0);
        assert_eq!(f.lr_closure(0), 0);
        assert_eq!(f.lr_closure(m(&f, &["y"])), m(&f, &["y"]));
    }

    #[test]
    fn stable_sets_of_fig1() {
        let f = fig1_frame();
        let expected = {
            let mut v = vec![
                0,
                m(&f, &["y"]),
                m(&f, &["z"]),
                m(&f, &["x", "y"]),
                f.full_mask(),
            ];
            v.sort_unstable();
            v
        };
        assert_eq!(f.stable_sets(20).unwrap(), expected);
    }

    #[test]
    fn stable_sets_of_two_point_frame() {
        // q ≤1 p, p ≤2 q
        let f = build_frame(["p", "q"], [("q", "p")], [("p", "q")]).unwrap();
        let p = bit(f.index("p").unwrap());
        assert_eq!(f.stable_sets(20).unwrap(), vec![0, p, f.full_mask()]);
        assert_eq!(f.complex_algebra(20).unwrap().lattice.n(), 3);
    }

    #[test]
    fn stable_sets_cap() {
        let f = fig1_frame();
        assert!(matches!(
            f.stable_sets(2),
            Err(FrameError::CarrierTooLarge { .. })
        ));
    }

    #[test]
    fn fig1_is_a_lattice_frame() {
        let report = fig1_frame().check_lattice_frame();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn lf2_failure_witness() {
        // ≤1 = id ∪ {(x,y)}, ≤2 = id: LF2 fails at (y, x).
        let f = build_frame(["x", "y"], [("x", "y")], Vec::<(&str, &str)>::new()).unwrap();
        let report = f.check_lattice_frame();
        assert!(report.lf0.passed());
        assert!(report.lf1.passed());
        assert_eq!(report.lf2, CheckResult::fail(["y", "x"]));
    }

    #[test]
    fn complex_algebra_of_fig1_is_pentagon_shaped() {
        let f = fig1_frame();
        let ca = f.complex_algebra(20).unwrap();
        assert_eq!(ca.lattice.n(), 5);
        let iy = ca.set_index(m(&f, &["y"])).unwrap();
        let iz = ca.set_index(m(&f, &["z"])).unwrap();
        let ixy = ca.set_index(m(&f, &["x", "y"])).unwrap();
        let top = ca.lattice.top();
        let bottom = ca.lattice.bottom();
        assert_eq!(ca.sets[bottom], 0);
        assert_eq!(ca.sets[top], f.full_mask());
        // pentagon: chain bottom < y < xy < top, z incomparable, y ∨ z = top
        assert!(ca.lattice.leq(iy, ixy));
        assert!(!ca.lattice.leq(iz, iy) && !ca.lattice.leq(iy, iz));
        assert!(!ca.lattice.leq(iz, ixy) && !ca.lattice.leq(ixy, iz));
        assert_eq!(ca.lattice.join(iy, iz), top);
        assert_eq!(ca.lattice.meet(ixy, iz), bottom);
    }

    #[test]
    fn complex_algebra_of_one_point_frame_is_two_chain() {
        let f = build_frame(["p"], Vec::<(&str, &str)>::new(), Vec::<(&str, &str)>::new()).unwrap();
        let ca = f.complex_algebra(20).unwrap();
        assert_eq!(ca.lattice.n(), 2);
        assert_ne!(ca.lattice.bottom(), ca.lattice.top());
    }

    #[test]
    fn empty_frame() {
        let f = build_frame(
            Vec::<&str>::new(),
            Vec::<(&str, &str)>::new(),
            Vec::<(&str, &str)>::new(),
        )
        .unwrap();
        assert_eq!(f.stable_sets(20).unwrap(), vec![0]);
        let ca = f.complex_algebra(20).unwrap();
        assert_eq!(ca.lattice.n(), 1);
    }
}

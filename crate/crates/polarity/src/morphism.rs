//! Bounded-morphism checking between relational frames, and the built-in
//! counterexample showing a doubly ordered frame with a bounded image that
//! is not doubly ordered.

use crate::frame::{Frame, FrameError};
use crate::lattice::transitive_close;
use crate::mask::{bit, bits, contains};
use crate::report::CheckResult;
use crate::Mask;
use serde::Serialize;
use thiserror::Error;

/// A frame with any number of binary relations, each stored as successor
/// masks and reflexive-transitively closed. Unlike [`Frame`], no
/// doubly-ordered condition is imposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelFrame {
    labels: Vec<String>,
    rels: Vec<Vec<Mask>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("map is not total: `{0}` has no image")]
    NotTotal(String),
    #[error("conflicting images for `{0}`")]
    ConflictingImage(String),
    #[error("source and target have different relation counts ({0} vs {1})")]
    RelationCountMismatch(usize, usize),
}

impl RelFrame {
    pub fn new<L, S, Q>(labels: L, rel_pairs: Vec<Vec<(Q, Q)>>) -> Result<Self, MapError>
    where
        L: IntoIterator<Item = S>,
        S: Into<String>,
        Q: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(MapError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let index = |s: &str| -> Result<usize, MapError> {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| MapError::UnknownLabel(s.to_string()))
        };
        let mut rels = Vec::with_capacity(rel_pairs.len());
        for pairs in rel_pairs {
            let mut up: Vec<Mask> = (0..n).map(bit).collect();
            for (a, b) in pairs {
                let (a, b) = (index(a.as_ref())?, index(b.as_ref())?);
                up[a] |= bit(b);
            }
            transitive_close(&mut up);
            rels.push(up);
        }
        Ok(RelFrame { labels, rels })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn rel_count(&self) -> usize {
        self.rels.len()
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

    pub fn succ(&self, rel: usize, x: usize) -> Mask {
        self.rels[rel][x]
    }

    pub fn related(&self, rel: usize, x: usize, y: usize) -> bool {
        contains(self.rels[rel][x], y)
    }

    /// Validate as a doubly ordered frame; requires exactly two relations.
    pub fn try_into_frame(&self) -> Result<Frame, FrameError> {
        assert_eq!(self.rels.len(), 2, "doubly ordered frames have two relations");
        Frame::from_up_masks(
            self.labels.clone(),
            self.rels[0].clone(),
            self.rels[1].clone(),
        )
    }
}

impl From<&Frame> for RelFrame {
    fn from(f: &Frame) -> Self {
        RelFrame {
            labels: f.labels().to_vec(),
            rels: vec![
                (0..f.n()).map(|x| f.up(crate::frame::Rel::R1, x)).collect(),
                (0..f.n()).map(|x| f.up(crate::frame::Rel::R2, x)).collect(),
            ],
        }
    }
}

/// A total function between frame carriers, by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameMap {
    pub source: RelFrame,
    pub target: RelFrame,
    pub map: Vec<usize>,
}

/// Build a map from label pairs; totality and relation-arity are checked.
pub fn frame_map<Q: AsRef<str>>(
    source: RelFrame,
    target: RelFrame,
    pairs: &[(Q, Q)],
) -> Result<FrameMap, MapError> {
    if source.rel_count() != target.rel_count() {
        return Err(MapError::RelationCountMismatch(
            source.rel_count(),
            target.rel_count(),
        ));
    }
    let mut map = vec![usize::MAX; source.n()];
    for (a, b) in pairs {
        let x = source
            .index(a.as_ref())
            .ok_or_else(|| MapError::UnknownLabel(a.as_ref().to_string()))?;
        let y = target
            .index(b.as_ref())
            .ok_or_else(|| MapError::UnknownLabel(b.as_ref().to_string()))?;
        if map[x] != usize::MAX && map[x] != y {
            return Err(MapError::ConflictingImage(a.as_ref().to_string()));
        }
        map[x] = y;
    }
    if let Some(x) = map.iter().position(|&y| y == usize::MAX) {
        return Err(MapError::NotTotal(source.label(x).to_string()));
    }
    Ok(FrameMap {
        source,
        target,
        map,
    })
}

pub fn identity_map(f: &RelFrame) -> FrameMap {
    FrameMap {
        source: f.clone(),
        target: f.clone(),
        map: (0..f.n()).collect(),
    }
}

/// g ∘ f, defined when f's target equals g's source.
pub fn compose(f: &FrameMap, g: &FrameMap) -> Option<FrameMap> {
    if f.target != g.source {
        return None;
    }
    Some(FrameMap {
        source: f.source.clone(),
        target: g.target.clone(),
        map: f.map.iter().map(|&x| g.map[x]).collect(),
    })
}

/// BM1 (forth), BM2 (back), and surjectivity, each with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedMorphismReport {
    pub bm1: CheckResult,
    pub bm2: CheckResult,
    pub surjective: bool,
}

impl BoundedMorphismReport {
    pub fn all_pass(&self) -> bool {
        self.bm1.passed() && self.bm2.passed()
    }
}

/// BM1: x Rᵢ y implies f(x) Rᵢ' f(y). BM2: f(x) Rᵢ' y' implies some y with
/// x Rᵢ y and f(y) = y'. Checked over all relations and pairs.
pub fn check_bounded_morphism(m: &FrameMap) -> BoundedMorphismReport {
    let src = &m.source;
    let tgt = &m.target;

    let mut bm1 = CheckResult::Pass;
    'bm1: for rel in 0..src.rel_count() {
        for x in 0..src.n() {
            for y in bits(src.succ(rel, x)) {
                if !tgt.related(rel, m.map[x], m.map[y]) {
                    bm1 = CheckResult::fail([
                        format!("R{}", rel + 1),
                        src.label(x).to_string(),
                        src.label(y).to_string(),
                    ]);
                    break 'bm1;
                }
            }
        }
    }

    let mut bm2 = CheckResult::Pass;
    'bm2: for rel in 0..src.rel_count() {
        for x in 0..src.n() {
            for yp in bits(tgt.succ(rel, m.map[x])) {
                let ok = bits(src.succ(rel, x)).any(|y| m.map[y] == yp);
                if !ok {
                    bm2 = CheckResult::fail([
                        format!("R{}", rel + 1),
                        src.label(x).to_string(),
                        tgt.label(yp).to_string(),
                    ]);
                    break 'bm2;
                }
            }
        }
    }

    let mut seen: Mask = 0;
    for &y in &m.map {
        seen |= bit(y);
    }
    let surjective = seen == crate::mask::full(tgt.n());

    BoundedMorphismReport {
        bm1,
        bm2,
        surjective,
    }
}

/// The three-point doubly ordered frame, the two-point frame that is not
/// doubly ordered, the surjective bounded morphism between them, and the
/// verification of all three facts.
#[derive(Debug, Clone)]
pub struct CounterexampleBundle {
    /// The doubly ordered source frame on {x, y, z}.
    pub frame: Frame,
    /// The image frame on {s, t} with both relations equal.
    pub image: RelFrame,
    /// Witness that the image is not doubly ordered.
    pub image_rejection: FrameError,
    pub map: FrameMap,
    pub report: BoundedMorphismReport,
}

impl CounterexampleBundle {
    pub fn verifies(&self) -> bool {
        matches!(self.image_rejection, FrameError::NotDoublyOrdered(_, _))
            && self.report.all_pass()
            && self.report.surjective
    }
}

pub fn builtin_counterexample() -> CounterexampleBundle {
    let frame = crate::frame::fig1_frame();
    let image = RelFrame::new(
        ["s", "t"],
        vec![vec![("s", "t")], vec![("s", "t")]],
    )
    .unwrap();
    let image_rejection = image
        .try_into_frame()
        .expect_err("the image frame is not doubly ordered");
    let map = frame_map(
        RelFrame::from(&frame),
        image.clone(),
        &[("x", "s"), ("y", "t"), ("z", "t")],
    )
    .unwrap();
    let report = check_bounded_morphism(&map);
    CounterexampleBundle {
        frame,
        image,
        image_rejection,
        map,
        report,
    }
}

//! Property sweeps: run one named theorem or law suite over a corpus of
//! generated or built-in instances and report pass/fail counts with first
//! failure witnesses. Reports are deterministic for fixed inputs and seeds;
//! per-instance wall-clock goes to stderr only.

use crate::canonical::canonical_frame;
use crate::embedding::{
    characterize_k1, characterize_k2, k_map, roundtrip_with, verify_frame_embedding,
};
use crate::frame::Frame;
use crate::generate::{generate_frames, generate_lattices, GenMode, GenerateError};
use crate::lattice::{fixtures, Lattice};
use crate::mask::full;
use crate::morphism::{check_bounded_morphism, compose, identity_map, RelFrame};
use crate::{Caps, Mask};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Theorem2HEmbedding,
    Theorem3CanonicalIsLatticeFrame,
    Theorem4KEmbedding,
    GaloisConnection,
    RoundtripIso,
    BoundedMorphismLaws,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::Theorem2HEmbedding => "theorem2_h_embedding",
            Property::Theorem3CanonicalIsLatticeFrame => "theorem3_canonical_is_lattice_frame",
            Property::Theorem4KEmbedding => "theorem4_k_embedding",
            Property::GaloisConnection => "galois_connection",
            Property::RoundtripIso => "roundtrip_iso",
            Property::BoundedMorphismLaws => "bounded_morphism_laws",
        }
    }

    pub const ALL: [Property; 6] = [
        Property::Theorem2HEmbedding,
        Property::Theorem3CanonicalIsLatticeFrame,
        Property::Theorem4KEmbedding,
        Property::GaloisConnection,
        Property::RoundtripIso,
        Property::BoundedMorphismLaws,
    ];
}

impl FromStr for Property {
    type Err = SweepError;
    fn from_str(s: &str) -> Result<Self, SweepError> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| SweepError::UnknownProperty(s.to_string()))
    }
}

/// `builtin`, `exhaustive:N`, or `random:N:COUNT:SEED`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corpus {
    Builtin,
    Exhaustive { n: usize },
    Random { n: usize, count: usize, seed: u64 },
}

impl fmt::Display for Corpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Corpus::Builtin => write!(f, "builtin"),
            Corpus::Exhaustive { n } => write!(f, "exhaustive:{n}"),
            Corpus::Random { n, count, seed } => write!(f, "random:{n}:{count}:{seed}"),
        }
    }
}

impl FromStr for Corpus {
    type Err = SweepError;
    fn from_str(s: &str) -> Result<Self, SweepError> {
        let bad = || SweepError::UnknownCorpus(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["builtin"] => Ok(Corpus::Builtin),
            ["exhaustive", n] => Ok(Corpus::Exhaustive {
                n: n.parse().map_err(|_| bad())?,
            }),
            ["random", n, count, seed] => Ok(Corpus::Random {
                n: n.parse().map_err(|_| bad())?,
                count: count.parse().map_err(|_| bad())?,
                seed: seed.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("unknown corpus `{0}` (expected builtin | exhaustive:N | random:N:COUNT:SEED)")]
    UnknownCorpus(String),
    #[error("exhaustive frame corpora are limited to 3 points (got {0})")]
    ExhaustiveFramesTooLarge(usize),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Frame(#[from] crate::frame::FrameError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub property: Property,
    pub corpus: Corpus,
    pub caps: Caps,
    pub out: Option<PathBuf>,
    /// Print per-instance wall-clock to stderr.
    pub timing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceFailure {
    pub instance: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub property: String,
    pub corpus: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<InstanceFailure>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.total > 0
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    let instances = collect_instances(cfg)?;
    let mut passed = 0;
    let mut failed = 0;
    let mut first_failure = None;
    let total = instances.len();
    for (id, instance) in instances {
        let start = std::time::Instant::now();
        let result = check_instance(cfg.property, &instance, &cfg.caps);
        if cfg.timing {
            eprintln!("{id}: {:?} ({:.3?})", result.is_ok(), start.elapsed());
        }
        match result {
            Ok(()) => passed += 1,
            Err(message) => {
                failed += 1;
                if first_failure.is_none() {
                    first_failure = Some(InstanceFailure {
                        instance: id,
                        message,
                    });
                }
            }
        }
    }
    let report = SweepReport {
        property: cfg.property.name().to_string(),
        corpus: cfg.corpus.to_string(),
        total,
        passed,
        failed,
        first_failure,
    };
    if let Some(path) = &cfg.out {
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(report)
}

enum SweepInstance {
    Lattice(Lattice),
    Frame(Frame),
}

fn lattice_pool(max_n: usize) -> Result<Vec<(String, Lattice)>, SweepError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (i, l) in generate_lattices(n, GenMode::UpToIso)?.into_iter().enumerate() {
            out.push((format!("lattice:n{n}#{i}"), l));
        }
    }
    Ok(out)
}

/// All doubly ordered frames on exactly n labeled points, n ≤ 3: both
/// relations range over every reflexive-transitive candidate.
fn exhaustive_frames(n: usize) -> Result<Vec<(String, Frame)>, SweepError> {
    if n > 3 {
        return Err(SweepError::ExhaustiveFramesTooLarge(n));
    }
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut closed: Vec<Vec<Mask>> = Vec::new();
    for code in 0..(1usize << off_diag.len()) {
        let mut up: Vec<Mask> = (0..n).map(crate::mask::bit).collect();
        for (k, &(a, b)) in off_diag.iter().enumerate() {
            if code & (1 << k) != 0 {
                up[a] |= crate::mask::bit(b);
            }
        }
        let mut c = up.clone();
        crate::lattice::transitive_close(&mut c);
        if c == up {
            closed.push(up);
        }
    }
    let mut out = Vec::new();
    for (i, up1) in closed.iter().enumerate() {
        for (j, up2) in closed.iter().enumerate() {
            if let Ok(f) = Frame::from_up_masks(labels.clone(), up1.clone(), up2.clone()) {
                out.push((format!("frame:n{n}#{i}x{j}"), f));
            }
        }
    }
    Ok(out)
}

fn collect_instances(cfg: &SweepConfig) -> Result<Vec<(String, SweepInstance)>, SweepError> {
    let over_lattices = matches!(
        cfg.property,
        Property::Theorem2HEmbedding
            | Property::Theorem3CanonicalIsLatticeFrame
            | Property::RoundtripIso
    );
    let require_lf = cfg.property == Property::Theorem4KEmbedding;
    if over_lattices {
        let pool = match cfg.corpus {
            Corpus::Builtin => fixtures::all()
                .into_iter()
                .map(|(name, l)| (format!("lattice:{name}"), l))
                .collect(),
            Corpus::Exhaustive { n } => lattice_pool(n)?,
            Corpus::Random { n, count, seed } => {
                let pool = lattice_pool(n.min(6))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|i| {
                        let (id, l) = &pool[rng.gen_range(0..pool.len())];
                        (format!("sample#{i}:{id}"), l.clone())
                    })
                    .collect()
            }
        };
        Ok(pool
            .into_iter()
            .map(|(id, l)| (id, SweepInstance::Lattice(l)))
            .collect())
    } else {
        let pool: Vec<(String, Frame)> = match cfg.corpus {
            Corpus::Builtin => vec![("frame:fig1".to_string(), crate::frame::fig1_frame())],
            Corpus::Exhaustive { n } => exhaustive_frames(n)?
                .into_iter()
                .filter(|(_, f)| !require_lf || f.check_lattice_frame().all_pass())
                .collect(),
            Corpus::Random { n, count, seed } => generate_frames(n, count, seed, require_lf)?
                .into_iter()
                .enumerate()
                .map(|(i, f)| (format!("frame:n{n}#{i}"), f))
                .collect(),
        };
        Ok(pool
            .into_iter()
            .map(|(id, f)| (id, SweepInstance::Frame(f)))
            .collect())
    }
}

fn check_instance(property: Property, instance: &SweepInstance, caps: &Caps) -> Result<(), String> {
    match (property, instance) {
        (Property::Theorem3CanonicalIsLatticeFrame, SweepInstance::Lattice(l)) => {
            let cf = canonical_frame(l);
            let report = cf.frame.check_lattice_frame();
            if report.all_pass() {
                Ok(())
            } else {
                Err(format!("{report:?}"))
            }
        }
        (Property::Theorem2HEmbedding, SweepInstance::Lattice(l)) => {
            let cf = canonical_frame(l);
            let ca = cf.frame.complex_algebra(caps.stable_sets).map_err(|e| e.to_string())?;
            let report = roundtrip_with(l, &cf, &ca).map_err(|e| e.to_string())?;
            if report.embedding.all_pass() {
                Ok(())
            } else {
                Err(format!("{:?}", report.embedding))
            }
        }
        (Property::RoundtripIso, SweepInstance::Lattice(l)) => {
            let cf = canonical_frame(l);
            let ca = cf.frame.complex_algebra(caps.stable_sets).map_err(|e| e.to_string())?;
            let report = roundtrip_with(l, &cf, &ca).map_err(|e| e.to_string())?;
            if report.is_isomorphism() {
                Ok(())
            } else {
                Err(format!("{report:?}"))
            }
        }
        (Property::Theorem4KEmbedding, SweepInstance::Frame(f)) => {
            let (ca, images) = k_map(f, caps.stable_sets).map_err(|e| e.to_string())?;
            for x in 0..f.n() {
                characterize_k1(f, &ca, &images, x).map_err(|e| e.to_string())?;
                characterize_k2(f, &ca, &images, x).map_err(|e| e.to_string())?;
            }
            let report = verify_frame_embedding(f, &ca, &images);
            if report.all_pass() {
                Ok(())
            } else {
                Err(format!("{report:?}"))
            }
        }
        (Property::GaloisConnection, SweepInstance::Frame(f)) => check_galois(f),
        (Property::BoundedMorphismLaws, SweepInstance::Frame(f)) => check_bm_laws(f),
        _ => Err("property/corpus kind mismatch".to_string()),
    }
}

/// Core operator laws for one frame: the l/r Galois biconditional over all
/// increasing pairs, and stability of l on ≤2-increasing sets.
fn check_galois(f: &Frame) -> Result<(), String> {
    let all: Vec<Mask> = (0..=full(f.n())).collect();
    let inc1: Vec<Mask> = all
        .iter()
        .copied()
        .filter(|&y| f.is_increasing(crate::frame::Rel::R1, y))
        .collect();
    let inc2: Vec<Mask> = all
        .iter()
        .copied()
        .filter(|&z| f.is_increasing(crate::frame::Rel::R2, z))
        .collect();
    for &y in &inc1 {
        for &z in &inc2 {
            let lhs = y & !f.op_l(z) == 0;
            let rhs = z & !f.op_r(y) == 0;
            if lhs != rhs {
                return Err(format!(
                    "galois biconditional fails at Y={} Z={}",
                    f.subset_label(y),
                    f.subset_label(z)
                ));
            }
        }
    }
    for &z in &inc2 {
        let l = f.op_l(z);
        if !f.is_stable(l) {
            return Err(format!("l({}) is not stable", f.subset_label(z)));
        }
    }
    Ok(())
}

/// Identity is a bounded morphism and composition preserves the property.
fn check_bm_laws(f: &Frame) -> Result<(), String> {
    let rf = RelFrame::from(f);
    let id = identity_map(&rf);
    let report = check_bounded_morphism(&id);
    if !report.all_pass() {
        return Err(format!("identity fails: {report:?}"));
    }
    let composed = compose(&id, &id).ok_or("identity does not compose")?;
    if !check_bounded_morphism(&composed).all_pass() {
        return Err("composition of identities fails".to_string());
    }
    Ok(())
}

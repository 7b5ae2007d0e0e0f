//! Command-line surface: validate instance files, build canonical frames and
//! complex algebras, run embedding and bounded-morphism checks, and execute
//! property sweeps.
//!
//! Exit codes: 0 all checks pass, 1 a checked property fails, 2 input error.

use clap::{Parser, Subcommand};
use polarity::canonical::canonical_frame;
use polarity::embedding::{
    canonical_extension_roundtrip, characterize_k1, characterize_k2, k_map,
    verify_frame_embedding,
};
use polarity::frame::Rel;
use polarity::io::{load_instance, Instance};
use polarity::morphism::{builtin_counterexample, check_bounded_morphism};
use polarity::sweep::{run_sweep, Corpus, Property, SweepConfig};
use polarity::Caps;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "polarity", version, about = "Finite lattice representation workbench")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Override the default size caps (also settable via POLARITY_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for commands that draw randomness.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a lattice file and print its structure.
    CheckLattice { file: PathBuf },
    /// Validate a frame file as a doubly ordered frame.
    CheckFrame { file: PathBuf },
    /// Check the lattice-frame axioms LF0-LF2 on a frame file.
    CheckLf { file: PathBuf },
    /// Build the canonical frame of a lattice file.
    CanonicalFrame { file: PathBuf },
    /// Enumerate the stable sets of a frame file.
    StableSets { file: PathBuf },
    /// Build the complex algebra of a frame file.
    ComplexAlgebra { file: PathBuf },
    /// Embed a lattice into the complex algebra of its canonical frame.
    EmbedH { file: PathBuf },
    /// Embed a lattice frame into the canonical frame of its complex algebra.
    EmbedK { file: PathBuf },
    /// Check the bounded-morphism conditions on a map file.
    CheckBm { file: PathBuf },
    /// Verify the built-in non-definability counterexample.
    DemoCounterexample,
    /// Run a property over a corpus.
    Sweep {
        /// theorem2_h_embedding | theorem3_canonical_is_lattice_frame |
        /// theorem4_k_embedding | galois_connection | roundtrip_iso |
        /// bounded_morphism_laws
        #[arg(long)]
        property: String,
        /// builtin | exhaustive:N | random:N:COUNT:SEED
        #[arg(long)]
        corpus: String,
        /// Write the report to this path as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::from_env();
    if let Some(cap) = cli.cap {
        caps = caps.with_cap(cap);
    }
    match run(&cli, caps) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(json_mode: bool, value: serde_json::Value, human: impl FnOnce()) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        human();
    }
}

fn run(cli: &Cli, caps: Caps) -> Result<bool, Box<dyn std::error::Error>> {
    match &cli.cmd {
        Cmd::CheckLattice { file } => {
            let lattice = match load_instance(file, &caps)? {
                Instance::Lattice(l) => l,
                _ => return Err("expected a lattice document".into()),
            };
            emit(
                cli.json,
                json!({
                    "valid": true,
                    "elements": lattice.labels(),
                    "bottom": lattice.label(lattice.bottom()),
                    "top": lattice.label(lattice.top()),
                    "filters": lattice.enumerate_filters().iter().map(|&f| lattice.subset_label(f)).collect::<Vec<_>>(),
                    "ideals": lattice.enumerate_ideals().iter().map(|&f| lattice.subset_label(f)).collect::<Vec<_>>(),
                }),
                || {
                    println!(
                        "valid lattice: {} elements, bottom {}, top {}",
                        lattice.n(),
                        lattice.label(lattice.bottom()),
                        lattice.label(lattice.top())
                    );
                    println!("proper filters: {}", lattice.enumerate_filters().len());
                    println!("proper ideals: {}", lattice.enumerate_ideals().len());
                },
            );
            Ok(true)
        }
        Cmd::CheckFrame { file } => {
            // a failed doubly-ordered check is a result, not an input error
            match load_instance(file, &caps) {
                Ok(Instance::Frame(frame)) => {
                    emit(
                        cli.json,
                        json!({"valid": true, "points": frame.labels()}),
                        || println!("valid doubly ordered frame: {} points", frame.n()),
                    );
                    Ok(true)
                }
                Err(polarity::io::LoadError::Frame {
                    source: source @ polarity::FrameError::NotDoublyOrdered(_, _),
                    ..
                }) => {
                    emit(
                        cli.json,
                        json!({"valid": false, "witness": source.to_string()}),
                        || println!("{source}"),
                    );
                    Ok(false)
                }
                Ok(_) => Err("expected a frame document".into()),
                Err(e) => Err(e.into()),
            }
        }
        Cmd::CheckLf { file } => {
            let frame = expect_frame(file, &caps)?;
            let report = frame.check_lattice_frame();
            emit(cli.json, serde_json::to_value(&report)?, || {
                println!("LF0: {}", report.lf0);
                println!("LF1: {}", report.lf1);
                println!("LF2: {}", report.lf2);
            });
            Ok(report.all_pass())
        }
        Cmd::CanonicalFrame { file } => {
            let lattice = match load_instance(file, &caps)? {
                Instance::Lattice(l) => l,
                _ => return Err("expected a lattice document".into()),
            };
            let cf = canonical_frame(&lattice);
            let lf = cf.frame.check_lattice_frame();
            emit(
                cli.json,
                json!({
                    "points": cf.frame.labels(),
                    "leq1": rel_pairs(&cf.frame, Rel::R1),
                    "leq2": rel_pairs(&cf.frame, Rel::R2),
                    "lattice_frame": serde_json::to_value(&lf)?,
                }),
                || {
                    println!("canonical frame: {} maximal pairs", cf.points.len());
                    for label in cf.frame.labels() {
                        println!("  {label}");
                    }
                    println!("lattice-frame axioms: LF0 {}, LF1 {}, LF2 {}", lf.lf0, lf.lf1, lf.lf2);
                },
            );
            Ok(lf.all_pass())
        }
        Cmd::StableSets { file } => {
            let frame = expect_frame(file, &caps)?;
            let sets = frame.stable_sets(caps.stable_sets)?;
            emit(
                cli.json,
                json!({
                    "count": sets.len(),
                    "sets": sets.iter().map(|&s| frame.subset_label(s)).collect::<Vec<_>>(),
                }),
                || {
                    println!("{} stable sets", sets.len());
                    for &s in &sets {
                        println!("  {}", frame.subset_label(s));
                    }
                },
            );
            Ok(true)
        }
        Cmd::ComplexAlgebra { file } => {
            let frame = expect_frame(file, &caps)?;
            let ca = frame.complex_algebra(caps.stable_sets)?;
            emit(
                cli.json,
                json!({
                    "elements": ca.lattice.labels(),
                    "order": ca.lattice.leq_pairs(),
                    "bottom": ca.lattice.label(ca.lattice.bottom()),
                    "top": ca.lattice.label(ca.lattice.top()),
                }),
                || {
                    println!("complex algebra: {} stable sets", ca.lattice.n());
                    println!("bottom {}, top {}", ca.lattice.label(ca.lattice.bottom()), ca.lattice.label(ca.lattice.top()));
                },
            );
            Ok(true)
        }
        Cmd::EmbedH { file } => {
            let lattice = match load_instance(file, &caps)? {
                Instance::Lattice(l) => l,
                _ => return Err("expected a lattice document".into()),
            };
            let report = canonical_extension_roundtrip(&lattice, caps.stable_sets)?;
            emit(cli.json, serde_json::to_value(&report)?, || {
                println!(
                    "h embedding: injective {}, join {}, meet {}, bounds {}",
                    report.embedding.injective,
                    report.embedding.preserves_join,
                    report.embedding.preserves_meet,
                    report.embedding.preserves_bounds
                );
                println!(
                    "complex algebra size {}, surjective {} (finite canonical extension)",
                    report.complex_algebra_size, report.surjective
                );
            });
            Ok(report.is_isomorphism())
        }
        Cmd::EmbedK { file } => {
            let frame = expect_frame(file, &caps)?;
            let (ca, images) = k_map(&frame, caps.stable_sets)?;
            for x in 0..frame.n() {
                characterize_k1(&frame, &ca, &images, x)?;
                characterize_k2(&frame, &ca, &images, x)?;
            }
            let report = verify_frame_embedding(&frame, &ca, &images);
            emit(cli.json, serde_json::to_value(&report)?, || {
                println!(
                    "k embedding: preserves ≤1 {}, preserves ≤2 {}, reflects ≤1 {}, injective {}, maximal pairs {}",
                    report.preserves_leq1,
                    report.preserves_leq2,
                    report.reflects_leq1,
                    report.injective,
                    report.images_maximal
                );
                println!("reflects ≤2 (observed, not asserted): {}", report.reflects_leq2);
            });
            Ok(report.all_pass())
        }
        Cmd::CheckBm { file } => {
            let map = match load_instance(file, &caps)? {
                Instance::Map(m) => m,
                _ => return Err("expected a map document".into()),
            };
            let report = check_bounded_morphism(&map);
            emit(cli.json, serde_json::to_value(&report)?, || {
                println!("BM1: {}", report.bm1);
                println!("BM2: {}", report.bm2);
                println!("surjective: {}", report.surjective);
            });
            Ok(report.all_pass())
        }
        Cmd::DemoCounterexample => {
            let bundle = builtin_counterexample();
            let witness = format!("{}", bundle.image_rejection);
            emit(
                cli.json,
                json!({
                    "source_doubly_ordered": true,
                    "image_doubly_ordered": false,
                    "image_rejection": witness,
                    "bounded_morphism": serde_json::to_value(&bundle.report)?,
                    "verified": bundle.verifies(),
                }),
                || {
                    println!("source frame (3 points): doubly ordered");
                    println!("image frame (2 points): {witness}");
                    println!(
                        "map x↦s, y↦t, z↦t: BM1 {}, BM2 {}, surjective {}",
                        bundle.report.bm1, bundle.report.bm2, bundle.report.surjective
                    );
                    println!(
                        "doubly ordered frames are not closed under bounded morphisms: {}",
                        if bundle.verifies() { "confirmed" } else { "NOT confirmed" }
                    );
                },
            );
            Ok(bundle.verifies())
        }
        Cmd::Sweep {
            property,
            corpus,
            out,
        } => {
            let mut corpus: Corpus = corpus.parse()?;
            if let (Some(seed), Corpus::Random { n, count, .. }) = (cli.seed, corpus) {
                corpus = Corpus::Random { n, count, seed };
            }
            let cfg = SweepConfig {
                property: property.parse::<Property>()?,
                corpus,
                caps,
                out: out.clone(),
                timing: !cli.json,
            };
            let report = run_sweep(&cfg)?;
            emit(cli.json, serde_json::to_value(&report)?, || {
                println!(
                    "{} over {}: {}/{} passed",
                    report.property, report.corpus, report.passed, report.total
                );
                if let Some(f) = &report.first_failure {
                    println!("first failure: {}: {}", f.instance, f.message);
                }
            });
            Ok(report.all_pass())
        }
    }
}

fn expect_frame(
    file: &PathBuf,
    caps: &Caps,
) -> Result<polarity::Frame, Box<dyn std::error::Error>> {
    match load_instance(file, caps)? {
        Instance::Frame(f) => Ok(f),
        _ => Err("expected a frame document".into()),
    }
}

fn rel_pairs(frame: &polarity::Frame, rel: Rel) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for x in 0..frame.n() {
        for y in 0..frame.n() {
            if frame.leq(rel, x, y) {
                out.push((frame.label(x).to_string(), frame.label(y).to_string()));
            }
        }
    }
    out
}

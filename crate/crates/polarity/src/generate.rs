//! Instance generators: exhaustive bounded lattices on a labeled carrier and
//! seeded random doubly ordered frames, both deterministic.

use crate::embedding::lattice_isomorphic;
use crate::frame::Frame;
use crate::lattice::{transitive_close, Lattice};
use crate::mask::{bit, bits};
use crate::Mask;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("carrier too large: {size} (cap {cap})")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("empty carrier")]
    EmptyCarrier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    Exhaustive,
    UpToIso,
}

pub const MAX_LATTICE_GEN: usize = 7;
pub const MAX_FRAME_GEN: usize = 8;

/// All bounded lattices on n labeled elements with bottom fixed at index 0
/// and top at index n-1, optionally deduplicated up to isomorphism. The
/// middle elements range over every partial order, enumerated as a base-3
/// counter over unordered pairs (incomparable, <, >) with non-transitive
/// candidates pruned.
pub fn generate_lattices(n: usize, mode: GenMode) -> Result<Vec<Lattice>, GenerateError> {
    if n == 0 {
        return Err(GenerateError::EmptyCarrier);
    }
    if n > MAX_LATTICE_GEN {
        return Err(GenerateError::CarrierTooLarge {
            size: n,
            cap: MAX_LATTICE_GEN,
        });
    }
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    if n == 1 {
        return Ok(vec![Lattice::from_up_masks(labels, vec![1]).unwrap()]);
    }

    let mids: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = mids
        .iter()
        .flat_map(|&i| mids.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut strict: Vec<Mask> = vec![0; n];
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                0 => {}
                1 => strict[i] |= bit(j),
                2 => strict[j] |= bit(i),
                _ => unreachable!(),
            }
            c /= 3;
        }
        if !is_transitive(&strict) {
            continue; // the closure would repeat an earlier candidate
        }
        let mut up: Vec<Mask> = vec![0; n];
        up[0] = crate::mask::full(n);
        up[n - 1] = bit(n - 1);
        for &i in &mids {
            up[i] = bit(i) | bit(n - 1) | strict[i];
        }
        match Lattice::from_up_masks(labels.clone(), up) {
            Ok(l) => out.push(l),
            Err(_) => continue,
        }
    }
    if mode == GenMode::UpToIso {
        let mut reps: Vec<Lattice> = Vec::new();
        for l in out {
            if !reps.iter().any(|r| lattice_isomorphic(r, &l).is_some()) {
                reps.push(l);
            }
        }
        out = reps;
    }
    Ok(out)
}

fn is_transitive(strict: &[Mask]) -> bool {
    for a in 0..strict.len() {
        for b in bits(strict[a]) {
            if strict[b] & !strict[a] != 0 {
                return false;
            }
        }
    }
    true
}

/// Seeded random doubly ordered frames on n points. Candidate relation
/// pairs are drawn, closed, and filtered through the frame validator and
/// (optionally) the lattice-frame axioms until `count` frames are found.
/// Identical seeds give identical output.
pub fn generate_frames(
    n: usize,
    count: usize,
    seed: u64,
    require_lattice_frame: bool,
) -> Result<Vec<Frame>, GenerateError> {
    if n > MAX_FRAME_GEN {
        return Err(GenerateError::CarrierTooLarge {
            size: n,
            cap: MAX_FRAME_GEN,
        });
    }
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let densities = [0.15, 0.3, 0.5];
    let mut out = Vec::with_capacity(count);
    let max_attempts = count.saturating_mul(100_000).max(100_000);
    for attempt in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let p = densities[attempt % densities.len()];
        let mut draw = |p: f64| -> Vec<Mask> {
            let mut up: Vec<Mask> = (0..n).map(bit).collect();
            for a in 0..n {
                for b in 0..n {
                    // always consume randomness so the stream is stable
                    let take = rng.gen_bool(p);
                    if a != b && take {
                        up[a] |= bit(b);
                    }
                }
            }
            transitive_close(&mut up);
            up
        };
        let up1 = draw(p);
        let up2 = draw(p);
        if let Ok(frame) = Frame::from_up_masks(labels.clone(), up1, up2) {
            if !require_lattice_frame || frame.check_lattice_frame().all_pass() {
                out.push(frame);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Rel;

    #[test]
    fn lattice_counts_up_to_iso() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| generate_lattices(n, GenMode::UpToIso).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn four_element_classes_are_chain_and_square() {
        let ls = generate_lattices(4, GenMode::UpToIso).unwrap();
        assert_eq!(ls.len(), 2);
        let chain4 = crate::lattice::build_lattice(
            ["0", "a", "b", "1"],
            [("0", "a"), ("a", "b"), ("b", "1")],
        )
        .unwrap();
        assert!(ls
            .iter()
            .any(|l| lattice_isomorphic(l, &chain4).is_some()));
        assert!(ls
            .iter()
            .any(|l| lattice_isomorphic(l, &crate::lattice::fixtures::boolean2()).is_some()));
    }

    #[test]
    fn exhaustive_lattices_are_valid_and_distinct() {
        for n in 1..=5 {
            let ls = generate_lattices(n, GenMode::Exhaustive).unwrap();
            for (i, a) in ls.iter().enumerate() {
                assert_eq!(a.n(), n);
                for b in &ls[..i] {
                    assert_ne!(a, b);
                }
            }
        }
    }

    #[test]
    fn frames_are_deterministic_per_seed() {
        let a = generate_frames(3, 10, 42, false).unwrap();
        let b = generate_frames(3, 10, 42, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        let c = generate_frames(3, 10, 43, false).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn one_point_frame_generation() {
        let fs = generate_frames(1, 3, 0, true).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[0].n(), 1);
    }

    #[test]
    fn generated_frames_revalidate() {
        for f in generate_frames(4, 25, 7, false).unwrap() {
            // quasiorders closed and the intersection is the identity
            for x in 0..f.n() {
                assert!(f.leq(Rel::R1, x, x));
                for y in 0..f.n() {
                    if x != y {
                        assert!(!(f.leq(Rel::R1, x, y) && f.leq(Rel::R2, x, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_frame_filter_applies() {
        for f in generate_frames(4, 25, 11, true).unwrap() {
            assert!(f.check_lattice_frame().all_pass());
        }
    }

    #[test]
    fn size_guards() {
        assert!(generate_lattices(8, GenMode::Exhaustive).is_err());
        assert!(generate_frames(9, 1, 0, false).is_err());
    }
}

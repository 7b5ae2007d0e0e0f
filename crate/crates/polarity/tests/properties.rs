//! Law suites over randomly generated frames and lattices.

use polarity::canonical::{
    extend_to_maximal, is_maximal_pair, validate_pair, FilterIdealPair,
};
use polarity::frame::{Frame, Rel};
use polarity::generate::{generate_frames, generate_lattices, GenMode};
use polarity::lattice::Lattice;
use polarity::mask::{bit, bits, full, is_subset};
use polarity::morphism::{check_bounded_morphism, compose, FrameMap, RelFrame};
use polarity::Mask;
use proptest::prelude::*;

fn small_frame() -> impl Strategy<Value = Frame> {
    (1usize..=5, any::<u64>()).prop_map(|(n, seed)| {
        generate_frames(n, 1, seed, false)
            .unwrap()
            .pop()
            .expect("generator always finds a small frame")
    })
}

fn lattice_pool() -> Vec<Lattice> {
    (1..=6)
        .flat_map(|n| generate_lattices(n, GenMode::UpToIso).unwrap())
        .collect()
}

/// ≤ᵢ-upward closure of an arbitrary mask: the generic increasing set.
fn increasing(frame: &Frame, rel: Rel, seed_mask: Mask) -> Mask {
    bits(seed_mask & frame.full_mask())
        .map(|x| frame.up(rel, x))
        .fold(0, |a, b| a | b)
}

proptest! {
    #[test]
    fn galois_biconditional(frame in small_frame(), ym in any::<Mask>(), zm in any::<Mask>()) {
        let y = increasing(&frame, Rel::R1, ym);
        let z = increasing(&frame, Rel::R2, zm);
        prop_assert_eq!(is_subset(y, frame.op_l(z)), is_subset(z, frame.op_r(y)));
    }

    #[test]
    fn l_of_increasing_is_stable(frame in small_frame(), zm in any::<Mask>()) {
        let z = increasing(&frame, Rel::R2, zm);
        prop_assert!(frame.is_stable(frame.op_l(z)));
    }

    #[test]
    fn lr_two_paths_agree(frame in small_frame(), ym in any::<Mask>()) {
        let y = ym & frame.full_mask();
        prop_assert_eq!(
            frame.op_l(frame.op_r(y)),
            frame.box_op(Rel::R1, frame.diamond_op(Rel::R2, y))
        );
    }

    #[test]
    fn l_and_r_images_are_increasing(frame in small_frame(), ym in any::<Mask>()) {
        let y = ym & frame.full_mask();
        prop_assert!(frame.is_increasing(Rel::R1, frame.op_l(y)));
        prop_assert!(frame.is_increasing(Rel::R2, frame.op_r(y)));
    }

    #[test]
    fn lr_is_a_closure_operator(frame in small_frame(), am in any::<Mask>(), bm in any::<Mask>()) {
        let y = increasing(&frame, Rel::R1, am);
        let bigger = increasing(&frame, Rel::R1, am | bm);
        // increasing on ≤1-increasing sets, monotone, idempotent
        prop_assert!(is_subset(y, frame.lr_closure(y)));
        prop_assert!(is_subset(frame.lr_closure(y), frame.lr_closure(bigger)));
        prop_assert_eq!(frame.lr_closure(frame.lr_closure(y)), frame.lr_closure(y));
    }

    #[test]
    fn stable_family_closure_laws(frame in small_frame()) {
        let sets = frame.stable_sets(20).unwrap();
        prop_assert!(sets.contains(&0));
        prop_assert!(sets.contains(&frame.full_mask()));
        for &a in &sets {
            for &b in &sets {
                prop_assert!(sets.contains(&(a & b)));
                let join = frame.lr_closure(a | b);
                prop_assert!(sets.contains(&join));
                // least stable superset of the union
                for &c in &sets {
                    if is_subset(a | b, c) {
                        prop_assert!(is_subset(join, c));
                    }
                }
            }
        }
    }

    #[test]
    fn up1_is_stable_under_lf1(frame in small_frame()) {
        let report = frame.check_lattice_frame();
        if report.lf1.passed() {
            for x in 0..frame.n() {
                prop_assert!(frame.is_stable(frame.up(Rel::R1, x)));
            }
        }
    }

    #[test]
    fn complex_algebra_is_a_bounded_lattice(frame in small_frame()) {
        // construction cross-checks meet = ∩ and join = lr(∪) and runs the
        // full lattice validator
        let ca = frame.complex_algebra(20).unwrap();
        prop_assert_eq!(ca.sets[ca.lattice.bottom()], 0);
        prop_assert_eq!(ca.sets[ca.lattice.top()], frame.full_mask());
    }

    #[test]
    fn random_pair_extends_to_maximal(
        li in any::<prop::sample::Index>(),
        ai in any::<prop::sample::Index>(),
        bi in any::<prop::sample::Index>(),
    ) {
        let pool = lattice_pool();
        let l = &pool[li.index(pool.len())];
        if l.n() < 2 {
            return Ok(());
        }
        let a = ai.index(l.n());
        let b = bi.index(l.n());
        if a == l.bottom() || b == l.top() || l.leq(a, b) {
            return Ok(());
        }
        let p = FilterIdealPair {
            filter: l.principal_filter(a),
            ideal: l.principal_ideal(b),
        };
        prop_assert_eq!(validate_pair(l, &p), Ok(()));
        let q = extend_to_maximal(l, &p);
        prop_assert!(is_subset(p.filter, q.filter));
        prop_assert!(is_subset(p.ideal, q.ideal));
        prop_assert_eq!(validate_pair(l, &q), Ok(()));
        prop_assert!(is_maximal_pair(l, &q));
    }

    #[test]
    fn composition_preserves_bounded_morphisms(
        frame in small_frame(),
        images in prop::collection::vec(any::<prop::sample::Index>(), 5),
    ) {
        let rf = RelFrame::from(&frame);
        let map: Vec<usize> = (0..rf.n()).map(|x| images[x % images.len()].index(rf.n())).collect();
        let f = FrameMap { source: rf.clone(), target: rf.clone(), map };
        if check_bounded_morphism(&f).all_pass() {
            let ff = compose(&f, &f).unwrap();
            prop_assert!(check_bounded_morphism(&ff).all_pass());
        }
    }
}

#[test]
fn h_images_partition_by_order() {
    // h(a) ⊆ h(b) exactly when a ≤ b, over the whole small-lattice pool
    for l in lattice_pool() {
        let cf = polarity::canonical::canonical_frame(&l);
        let h = polarity::canonical::h_map(&cf);
        for a in 0..l.n() {
            for b in 0..l.n() {
                assert_eq!(l.leq(a, b), is_subset(h[a], h[b]));
            }
        }
        assert_eq!(h[l.bottom()], 0);
        assert_eq!(h[l.top()], full(cf.points.len()));
    }
}

#[test]
fn maximal_pairs_never_share_elements() {
    for l in lattice_pool() {
        for p in polarity::canonical::maximal_pairs(&l) {
            assert_eq!(p.filter & p.ideal, 0);
            assert_ne!(p.filter & bit(l.top()), 0);
            assert_ne!(p.ideal & bit(l.bottom()), 0);
        }
    }
}

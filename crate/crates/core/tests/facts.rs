//! Exhaustive finite checks of the order and distance facts the cascade
//! machinery leans on. Universes are small enough to enumerate everything,
//! so a failure here means a definition drifted, not that a search missed.

use canram_core::{
    build_cascade, enumerate_ksubsets, reach, rho, sparsity, step_construct, KSubset,
    PositionSet, RankedSet, Schedule, Sparsity,
};

fn irregular_ground() -> RankedSet {
    RankedSet::new(vec![1, 2, 5, 7, 11, 16, 22, 29, 37, 46, 56, 67, 79, 92]).unwrap()
}

#[test]
fn rho_is_a_metric_on_ranks() {
    let g = irregular_ground();
    let e = g.elements();
    for &a in e {
        for &b in e {
            let d = rho(&g, a, b).unwrap();
            assert_eq!(d, rho(&g, b, a).unwrap());
            assert_eq!(d == 0, a == b);
            for &c in e {
                // Additive along ordered chains, triangle everywhere.
                assert!(rho(&g, a, c).unwrap() <= d + rho(&g, b, c).unwrap());
                if a <= b && b <= c {
                    assert_eq!(
                        rho(&g, a, c).unwrap(),
                        d + rho(&g, b, c).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn sparsity_shrinks_under_superset() {
    // Adding members can only bring ranks closer together.
    let g = irregular_ground();
    let tail: Vec<usize> = g.elements()[1..].to_vec();
    for big in enumerate_ksubsets(tail.len(), 4).unwrap() {
        let y = KSubset::new(big.members().iter().map(|&i| tail[i]).collect()).unwrap();
        let dy = sparsity(&g, &y).unwrap();
        for small in enumerate_ksubsets(4, 2).unwrap() {
            let x = y.select(small.members());
            assert!(dy <= sparsity(&g, &x).unwrap());
        }
    }
    assert_eq!(
        sparsity(&g, &KSubset::empty()).unwrap(),
        Sparsity::Infinite
    );
}

#[test]
fn reach_vanishes_exactly_on_subsets() {
    let g = RankedSet::range(9).unwrap();
    let tail: Vec<usize> = (1..9).collect();
    for a in enumerate_ksubsets(tail.len(), 2).unwrap() {
        let x = KSubset::new(a.members().iter().map(|&i| tail[i]).collect()).unwrap();
        for b in enumerate_ksubsets(tail.len(), 2).unwrap() {
            let y = KSubset::new(b.members().iter().map(|&i| tail[i]).collect()).unwrap();
            let r = reach(&g, &x, &y).unwrap();
            assert_eq!(r == 0, y.is_subset_of(&x), "x {x} y {y}");
        }
    }
}

#[test]
fn reach_satisfies_the_triangle_inequality() {
    let g = RankedSet::range(8).unwrap();
    let tail: Vec<usize> = (1..8).collect();
    let pairs: Vec<KSubset> = enumerate_ksubsets(tail.len(), 2)
        .unwrap()
        .map(|s| KSubset::new(s.members().iter().map(|&i| tail[i]).collect()).unwrap())
        .collect();
    for x in &pairs {
        for y in &pairs {
            for z in &pairs {
                let direct = reach(&g, x, z).unwrap();
                let via = reach(&g, x, y).unwrap() + reach(&g, y, z).unwrap();
                assert!(direct <= via, "x {x} y {y} z {z}: {direct} > {via}");
            }
        }
    }
}

#[test]
fn every_subset_pair_of_a_doubled_tuple_is_a_selection_pair() {
    // Inside any 2n-set, each n-subset occupies a unique slot set, and the
    // slot sets of two subsets recover them by selection.
    let z = KSubset::new(vec![3, 8, 20, 21]).unwrap();
    let slots = PositionSet::enumerate(2);
    for x in enumerate_ksubsets(4, 2).unwrap() {
        let sel = z.select(x.members());
        let found: Vec<&PositionSet> = slots
            .iter()
            .filter(|p| z.select(p.positions()) == sel)
            .collect();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].positions(), x.members());
    }
}

#[test]
fn selections_preserve_slotwise_order() {
    // If p sits slotwise at-or-below q, the selected tuples compare the
    // same way member by member.
    let z = KSubset::new(vec![2, 3, 10, 11, 14, 30]).unwrap();
    let slots = PositionSet::enumerate(3);
    for p in &slots {
        for q in &slots {
            let dominated = (0..3).all(|i| p.at(i) <= q.at(i));
            if dominated {
                let zp = z.select(p.positions());
                let zq = z.select(q.positions());
                assert!((0..3).all(|i| zp.at(i) <= zq.at(i)));
            }
        }
    }
}

#[test]
fn cascades_drift_less_than_the_starting_sparsity() {
    // Entries of a chain never move past a neighbouring member of the
    // start: the accumulated reach stays below n^level, which the start's
    // sparsity dominates.
    let g = RankedSet::range(700).unwrap();
    let start = KSubset::new(vec![128, 384]).unwrap();
    let slots = PositionSet::enumerate(2);
    let schedule = Schedule {
        pairs: vec![
            (slots[0].clone(), slots[3].clone()),
            (slots[1].clone(), slots[4].clone()),
            (slots[2].clone(), slots[5].clone()),
        ],
    };
    let cascade = build_cascade(&g, &start, &schedule).unwrap();
    let bound = 1u128 << cascade.level;
    for entry in &cascade.entries {
        let drift = reach(&g, &start, entry).unwrap();
        assert!((drift as u128) < bound, "drift {drift} at bound {bound}");
    }
}

#[test]
fn cascade_intersections_with_the_start_are_nested() {
    let g = RankedSet::range(700).unwrap();
    let start = KSubset::new(vec![128, 384]).unwrap();
    let slots = PositionSet::enumerate(2);
    // Keep slot 0 for two steps, then drop everything.
    let schedule = Schedule {
        pairs: vec![
            (slots[0].clone(), slots[1].clone()),
            (slots[0].clone(), slots[2].clone()),
            (slots[0].clone(), slots[5].clone()),
        ],
    };
    let cascade = build_cascade(&g, &start, &schedule).unwrap();
    for w in cascade.entries.windows(2) {
        let outer = start.intersect(&w[0]);
        let inner = start.intersect(&w[1]);
        assert!(inner.is_subset_of(&outer));
    }
    // The first two steps keep the start's slot-0 member, the last loses it.
    assert!(cascade.entries[2].contains(128));
    assert!(!cascade.terminal().contains(128));
}

#[test]
fn step_outputs_meet_their_posted_bounds() {
    // For every admissible slot pair at level 1, the witness embeds the
    // source at p, the target at q, and stays within spacing n^1 of it.
    let g = RankedSet::range(80).unwrap();
    let start = KSubset::new(vec![24, 52]).unwrap();
    let slots = PositionSet::enumerate(2);
    for p in &slots {
        for q in &slots {
            let step = step_construct(&g, &start, p, q, 1).unwrap();
            assert_eq!(step.witness.select(p.positions()), start);
            assert_eq!(step.witness.select(q.positions()), step.target);
            assert_eq!(step.witness.len(), 4);
            match sparsity(&g, &step.witness).unwrap() {
                Sparsity::Finite(d) => assert!(d >= 1),
                Sparsity::Infinite => unreachable!("witness is nonempty"),
            }
            assert!(reach(&g, &start, &step.witness).unwrap() <= 2);
        }
    }
}

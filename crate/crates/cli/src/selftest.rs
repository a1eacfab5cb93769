//! The oracle cross-check suites behind `canram selftest`. Each suite runs
//! the naive oracle and the main engine over the same pinned instances and
//! counts disagreements. Sizes are fixed so a green run always covers the
//! same ground.

use canram_core::{
    atoms, class_verdicts, decompose, enumerate_ksubsets, exhaustive_canonical, find_canonical,
    generators, index_agreement, min_gap_empirical, pair_at, q_equiv, reach, sparsity,
    step_construct, IndexSet, KSubset, PositionSet, RankedSet, Sparsity, SparsityBound,
};

use crate::report::SuiteRow;

fn suite(name: &str, body: impl FnOnce(&mut usize, &mut usize)) -> SuiteRow {
    let mut cases = 0;
    let mut failures = 0;
    body(&mut cases, &mut failures);
    SuiteRow {
        name: name.to_string(),
        cases,
        failures,
    }
}

/// Search and exhaustive scan must agree: a found canonical set appears in
/// the oracle's list, and an empty answer means the list is empty too.
fn search_vs_exhaustive() -> SuiteRow {
    suite("search vs exhaustive canonical", |cases, failures| {
        for (arity, universe) in [(1, 6), (2, 7), (2, 8)] {
            let family = generators::standard_suite(arity, universe).expect("valid sizes");
            for (_, c) in &family {
                for size in arity..=5.min(universe) {
                    *cases += 1;
                    let all = exhaustive_canonical(c, size).expect("valid size");
                    match find_canonical(c, size).expect("valid size") {
                        Some((set, pinned)) => {
                            if !all.iter().any(|(s, i)| s == &set && i == &pinned) {
                                *failures += 1;
                            }
                        }
                        None => {
                            if !all.is_empty() {
                                *failures += 1;
                            }
                        }
                    }
                }
            }
        }
    })
}

/// On single-atom colorings (the whole universe is homogeneous for the
/// atom), signature-based relatedness must equal plain color equality.
fn relatedness_vs_colors() -> SuiteRow {
    suite("relatedness vs color equality", |cases, failures| {
        let universe = 8;
        for c in [
            generators::constant(2, universe).unwrap(),
            generators::min(2, universe).unwrap(),
            generators::max(2, universe).unwrap(),
            generators::injective(2, universe).unwrap(),
        ] {
            let atom_list = atoms(&c).expect("valid coloring");
            assert_eq!(atom_list.len(), 1, "these colorings have a single atom");
            let atom = &atom_list[0];
            let ground = RankedSet::range(universe).unwrap();
            let pairs: Vec<KSubset> = enumerate_ksubsets(universe, 2).unwrap().collect();
            for x in &pairs {
                for y in &pairs {
                    *cases += 1;
                    let verdict = q_equiv(atom, &ground, x, y).expect("sizes fit");
                    let direct = c.color(x).unwrap() == c.color(y).unwrap();
                    if verdict.equivalent != direct {
                        *failures += 1;
                    }
                }
            }
        }
    })
}

/// The gap scanner's per-gap verdicts must match a by-hand rebuild from
/// decompose + class_verdicts, for every pinned index set.
fn gap_scan_vs_verdicts() -> SuiteRow {
    suite("gap scan vs class verdicts", |cases, failures| {
        let universe = 12;
        let set = KSubset::new((0..universe).collect()).unwrap();
        for c in [
            generators::min(2, universe).unwrap(),
            generators::sum_mod(2, universe, 3).unwrap(),
            generators::injective(2, universe).unwrap(),
        ] {
            for pinned in IndexSet::enumerate_all(2) {
                let scan = min_gap_empirical(&c, &set, &pinned).expect("sizes fit");
                for &(gap, scanned_ok) in &scan.per_gap {
                    *cases += 1;
                    let verdicts =
                        class_verdicts(&c, &decompose(&set, gap).unwrap(), &pinned).unwrap();
                    let rebuilt_ok = verdicts.iter().all(|v| v.status.passes());
                    if scanned_ok != rebuilt_ok {
                        *failures += 1;
                    }
                }
            }
        }
    })
}

/// Step construction posts |z| = 2n, both selection equations, and the
/// graded sparsity/reach bounds; re-check each one from raw distances.
fn step_contract() -> SuiteRow {
    suite("step construction contract", |cases, failures| {
        let n = 2;
        let ground = RankedSet::range(600).unwrap();
        let x = KSubset::new(vec![16, 32]).unwrap();
        let sets = PositionSet::enumerate(n);
        for level in [1, 2] {
            for p in &sets {
                for q in &sets {
                    *cases += 1;
                    let step = match step_construct(&ground, &x, p, q, level) {
                        Ok(s) => s,
                        Err(_) => {
                            *failures += 1;
                            continue;
                        }
                    };
                    let witness_bound = SparsityBound::power(n, 2 * level - 2);
                    let reach_cap = 2usize.pow(2 * level as u32 - 1);
                    let ok = step.witness.len() == 2 * n
                        && step.witness.select(p.positions()) == x
                        && step.witness.select(q.positions()) == step.target
                        && witness_bound.is_met_by(sparsity(&ground, &step.witness).unwrap())
                        && witness_bound.is_met_by(sparsity(&ground, &step.target).unwrap())
                        && reach(&ground, &x, &step.witness).unwrap() <= reach_cap
                        && reach(&ground, &x, &step.target).unwrap() <= reach_cap;
                    if !ok {
                        *failures += 1;
                    }
                }
            }
        }
    })
}

/// Atoms must cover every doubled tuple exactly once, stay within the
/// signature space bound, and carry the pinned set recomputed from their
/// own positive pairs.
fn atom_cover_and_pins() -> SuiteRow {
    suite("atom cover and pinned sets", |cases, failures| {
        let (arity, universe) = (2, 8);
        let total = enumerate_ksubsets(universe, 2 * arity).unwrap().count();
        let sets = PositionSet::enumerate(arity);
        for (_, c) in &generators::standard_suite(arity, universe).unwrap() {
            *cases += 1;
            let list = atoms(c).expect("valid coloring");
            let covered: usize = list.iter().map(|a| a.members.len()).sum();
            let mut ok = covered == total && list.len() <= 1 << 15;
            for atom in &list {
                let mut pins = IndexSet::full(arity);
                for pair in atom.signature.positive_pairs() {
                    let (i, j) = pair_at(pair, sets.len());
                    pins = pins.intersect(&index_agreement(&sets[i], &sets[j]).unwrap());
                }
                if pins != atom.canonical {
                    ok = false;
                }
                if atom.members.windows(2).any(|w| w[0] >= w[1]) {
                    ok = false;
                }
            }
            if !ok {
                *failures += 1;
            }
        }
    })
}

/// The empty-subset sparsity convention: sparsity of a one-member subset
/// and of the empty subset is infinite, and bounds treat it as above any
/// finite requirement.
fn sparsity_conventions() -> SuiteRow {
    suite("sparsity conventions", |cases, failures| {
        let ground = RankedSet::range(40).unwrap();
        let checks: [(Vec<usize>, Sparsity); 3] = [
            (vec![], Sparsity::Infinite),
            (vec![17], Sparsity::Finite(17)),
            (vec![10, 30], Sparsity::Finite(10)),
        ];
        for (members, expected) in checks {
            *cases += 1;
            let s = sparsity(&ground, &KSubset::new(members).unwrap()).unwrap();
            if s != expected {
                *failures += 1;
            }
        }
        *cases += 1;
        if !SparsityBound::power(2, 120).is_met_by(Sparsity::Infinite) {
            *failures += 1;
        }
    })
}

/// Run every suite in a fixed order.
pub fn run_all() -> Vec<SuiteRow> {
    vec![
        search_vs_exhaustive(),
        relatedness_vs_colors(),
        gap_scan_vs_verdicts(),
        step_contract(),
        atom_cover_and_pins(),
        sparsity_conventions(),
    ]
}

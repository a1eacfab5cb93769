//! The command implementations behind the binary. Each takes an already
//! loaded coloring (plus its source line for the echo), runs the engine,
//! and assembles a [`Report`]. A report can carry `failed = true`, which
//! the binary turns into exit code 1: the input was fine, but what it
//! asked to verify does not hold.

use std::collections::BTreeSet;

use canram_core::{
    analyze_coloring, atoms, binomial, build_cascade, core_reduce, enumerate_ksubsets,
    find_canonical, find_homogeneous, pair_index, reach, signature_space_bound, sparsity,
    verify_theorem1, Atom, AtomOutcome, Cascade, ClassStatus, Coloring, FunctionClass, KSubset,
    PositionSet, RankedSet, Schedule, SparsityBound,
};

use crate::input::InputError;
use crate::report::{
    AtomDecomposition, AtomRow, AtomsSection, CascadeSection, ClassRow, DecompositionSection,
    FindingsSection, FunctionSection, InputEcho, OracleSection, Report, StepRow,
};
use crate::selftest;

/// A finished command: the report to print, and whether the run found a
/// verification failure (exit 1 instead of 0).
#[derive(Debug)]
pub struct CommandOutput {
    pub report: Report,
    pub failed: bool,
}

impl CommandOutput {
    fn ok(report: Report) -> Self {
        CommandOutput {
            report,
            failed: false,
        }
    }
}

fn engine_input_error(e: canram_core::Error) -> InputError {
    InputError::new(e.to_string())
}

fn echo(c: &Coloring, source: &str) -> InputEcho {
    let distinct: BTreeSet<u64> = enumerate_ksubsets(c.universe(), c.arity())
        .expect("coloring dimensions are valid")
        .map(|s| c.color(&s).expect("subset of own universe"))
        .collect();
    InputEcho {
        source: source.to_string(),
        arity: c.arity(),
        universe: c.universe(),
        subsets: c.subset_count(),
        colors: distinct.len(),
    }
}

fn atom_rows(list: &[Atom]) -> Vec<AtomRow> {
    list.iter()
        .map(|a| AtomRow {
            index: a.index,
            signature: a.signature.hex(),
            members: a.members.len(),
            pinned: a.canonical.indices().to_vec(),
        })
        .collect()
}

fn atoms_section(c: &Coloring, list: &[Atom]) -> AtomsSection {
    let n = c.arity();
    let bound = match signature_space_bound(n) {
        Some(v) => v.to_string(),
        None => {
            let m = binomial(2 * n, n);
            format!("2^({m}*({m}-1)/2)")
        }
    };
    let within_bound = match signature_space_bound(n) {
        Some(v) => (list.len() as u128) <= v,
        None => true,
    };
    AtomsSection {
        count: list.len(),
        bound,
        within_bound,
        covered: list.iter().map(|a| a.members.len()).sum(),
        rows: atom_rows(list),
    }
}

/// Table every atom of the derived partition: signature, member count, and
/// the pinned index set, with the count checked against the space bound.
pub fn cmd_atoms(c: &Coloring, source: &str) -> Result<CommandOutput, InputError> {
    let list = atoms(c).map_err(engine_input_error)?;
    let mut report = Report::new("atoms");
    report.input = Some(echo(c, source));
    let section = atoms_section(c, &list);
    report.verdict = if section.within_bound {
        "ok".to_string()
    } else {
        "atom count exceeds the signature bound".to_string()
    };
    report.atoms = Some(section);
    Ok(CommandOutput::ok(report))
}

fn class_status_text(status: &ClassStatus) -> String {
    match status {
        ClassStatus::Exempt => "exempt".to_string(),
        ClassStatus::TriviallyCanonical => "trivially canonical".to_string(),
        ClassStatus::Canonical => "canonical".to_string(),
        ClassStatus::Violated(v) => format!("VIOLATED: {v}"),
    }
}

/// For every atom, find a homogeneous set of the requested size and scan
/// gaps until every upper residue class is canonical for the atom's pinned
/// indices. Fails (exit 1) when some atom stays violated through max_gap.
pub fn cmd_verify(
    c: &Coloring,
    source: &str,
    size: usize,
    max_gap: usize,
) -> Result<CommandOutput, InputError> {
    let verification = verify_theorem1(c, size, max_gap).map_err(engine_input_error)?;
    let mut report = Report::new("verify");
    report.input = Some(echo(c, source));
    let atoms = verification
        .verdicts
        .iter()
        .map(|v| {
            let (outcome, gap, classes) = match &v.outcome {
                AtomOutcome::NoHomogeneousSet => ("no homogeneous set".to_string(), None, &[][..]),
                AtomOutcome::Passed { gap, classes } => {
                    ("passed".to_string(), Some(*gap), &classes[..])
                }
                AtomOutcome::Failed { max_gap, classes } => {
                    (format!("failed through gap {max_gap}"), None, &classes[..])
                }
            };
            AtomDecomposition {
                atom: v.atom_index,
                signature: v.signature_hex.clone(),
                pinned: v.canonical.indices().to_vec(),
                homogeneous_set: v.homogeneous_set.as_ref().map(|s| s.members().to_vec()),
                outcome,
                gap,
                classes: classes
                    .iter()
                    .map(|cl| ClassRow {
                        class: cl.class_index,
                        members: cl.members.members().to_vec(),
                        status: class_status_text(&cl.status),
                    })
                    .collect(),
            }
        })
        .collect();
    report.decomposition = Some(DecompositionSection {
        size: verification.size,
        max_gap: verification.max_gap,
        minimal_gap: verification.minimal_gap,
        passed: verification.passed,
        atoms,
    });
    report.verdict = if verification.passed {
        format!("verified at gap {}", verification.minimal_gap.expect("passed"))
    } else {
        "verification failed".to_string()
    };
    Ok(CommandOutput {
        report,
        failed: !verification.passed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FindMode {
    Homogeneous,
    Canonical,
}

/// Search for the least set of the given size that is homogeneous (one
/// color) or canonical (some pinned index set). Absence is a valid answer,
/// reported with exit 0.
pub fn cmd_find(
    c: &Coloring,
    source: &str,
    mode: FindMode,
    size: usize,
) -> Result<CommandOutput, InputError> {
    let mut report = Report::new("find");
    report.input = Some(echo(c, source));
    let findings = match mode {
        FindMode::Homogeneous => {
            let found = find_homogeneous(c, size).map_err(engine_input_error)?;
            let color = found
                .as_ref()
                .map(|s| c.color_of(&s.members()[..c.arity()]).expect("members in universe"));
            FindingsSection {
                mode: "homogeneous".to_string(),
                size,
                found: found.is_some(),
                set: found.map(|s| s.members().to_vec()),
                color,
                pinned: None,
            }
        }
        FindMode::Canonical => {
            let found = find_canonical(c, size).map_err(engine_input_error)?;
            FindingsSection {
                mode: "canonical".to_string(),
                size,
                found: found.is_some(),
                set: found.as_ref().map(|(s, _)| s.members().to_vec()),
                color: None,
                pinned: found.map(|(_, i)| i.indices().to_vec()),
            }
        }
    };
    report.verdict = if findings.found {
        "found".to_string()
    } else {
        "none found".to_string()
    };
    report.findings = Some(findings);
    Ok(CommandOutput::ok(report))
}

/// A parsed --schedule argument.
pub enum ScheduleArg {
    /// Drive the atom's full schedule and check the terminal claim.
    Full,
    /// Drive exactly these (p, q) steps.
    Pairs(Vec<(PositionSet, PositionSet)>),
}

fn parse_slots(arity: usize, text: &str) -> Result<PositionSet, InputError> {
    let mut slots = Vec::new();
    for field in text.split(',') {
        let field = field.trim();
        slots.push(field.parse().map_err(|_| {
            InputError::new(format!("slot must be a non-negative integer, got {field:?}"))
        })?);
    }
    PositionSet::new(arity, slots).map_err(|e| {
        InputError::new(format!("bad slot set {text:?}: {e}"))
    })
}

/// Parse a --schedule argument: `full`, `none` (the empty schedule), or
/// steps `p/q` separated by `;`, where each side lists n slots of the
/// 2n-element witness, e.g. `0,1/2,3;0,2/1,3`.
pub fn parse_schedule(arity: usize, text: &str) -> Result<ScheduleArg, InputError> {
    match text.trim() {
        "full" => Ok(ScheduleArg::Full),
        "none" | "" => Ok(ScheduleArg::Pairs(Vec::new())),
        steps => {
            let mut pairs = Vec::new();
            for (i, step) in steps.split(';').enumerate() {
                let (p, q) = step.split_once('/').ok_or_else(|| {
                    InputError::new(format!("step #{i} must be p/q, got {step:?}"))
                })?;
                pairs.push((parse_slots(arity, p)?, parse_slots(arity, q)?));
            }
            Ok(ScheduleArg::Pairs(pairs))
        }
    }
}

/// Parse a --start argument: comma-separated members, strictly increasing.
pub fn parse_members(text: &str) -> Result<Vec<usize>, InputError> {
    let mut members = Vec::new();
    for field in text.split(',') {
        let field = field.trim();
        members.push(field.parse().map_err(|_| {
            InputError::new(format!("set member must be a non-negative integer, got {field:?}"))
        })?);
    }
    Ok(members)
}

fn step_rows(ground: &RankedSet, cascade: &Cascade) -> Vec<StepRow> {
    let n = cascade.start().len();
    let l = cascade.steps.len();
    cascade
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let level = l - i;
            StepRow {
                index: i,
                level,
                p: s.p.positions().to_vec(),
                q: s.q.positions().to_vec(),
                source: s.source.members().to_vec(),
                witness: s.witness.members().to_vec(),
                target: s.target.members().to_vec(),
                source_sparsity: sparsity(ground, &s.source)
                    .expect("verified step")
                    .to_string(),
                required_sparsity: SparsityBound::power(n, 2 * level).to_string(),
                witness_sparsity: sparsity(ground, &s.witness)
                    .expect("verified step")
                    .to_string(),
                witness_bound: SparsityBound::power(n, 2 * level - 2).to_string(),
                reach: reach(ground, &s.source, &s.witness).expect("verified step"),
                reach_bound: SparsityBound::power(n, 2 * level - 1).to_string(),
            }
        })
        .collect()
}

/// Drive a cascade for one atom from a start set over the whole universe.
/// `full` runs the atom's complete schedule and checks that the terminal
/// set shares with the start exactly the pinned slots; explicit schedules
/// report the chain without the terminal claim.
pub fn cmd_cascade(
    c: &Coloring,
    source: &str,
    atom_index: usize,
    start_members: &[usize],
    schedule: ScheduleArg,
) -> Result<CommandOutput, InputError> {
    let list = atoms(c).map_err(engine_input_error)?;
    let atom = list.get(atom_index).ok_or_else(|| {
        InputError::new(format!(
            "atom index {atom_index} out of range: the coloring has {} atoms",
            list.len()
        ))
    })?;
    let n = c.arity();
    let start = KSubset::new(start_members.to_vec())
        .map_err(|e| InputError::new(format!("bad start set: {e}")))?;
    if start.len() != n {
        return Err(InputError::new(format!(
            "start set must have {n} members, got {}",
            start.len()
        )));
    }
    if let Some(&m) = start.members().iter().find(|&&m| m >= c.universe()) {
        return Err(InputError::new(format!(
            "start member {m} lies outside the universe 0..{}",
            c.universe()
        )));
    }
    let ground = RankedSet::range(c.universe()).map_err(engine_input_error)?;

    let (schedule_desc, result) = match schedule {
        ScheduleArg::Full => ("full".to_string(), core_reduce(&ground, &start, atom)),
        ScheduleArg::Pairs(pairs) => {
            let sets = PositionSet::enumerate(n);
            for (i, (p, q)) in pairs.iter().enumerate() {
                if p == q {
                    continue;
                }
                let ip = sets.iter().position(|s| s == p).expect("enumerated");
                let iq = sets.iter().position(|s| s == q).expect("enumerated");
                let (lo, hi) = if ip < iq { (ip, iq) } else { (iq, ip) };
                if !atom.signature.get(pair_index(lo, hi, sets.len())) {
                    return Err(InputError::new(format!(
                        "schedule step #{i} ({p}/{q}) is not a positive pair of atom {atom_index}"
                    )));
                }
            }
            let desc = if pairs.is_empty() {
                "none".to_string()
            } else {
                let steps: Vec<String> =
                    pairs.iter().map(|(p, q)| format!("{p}/{q}")).collect();
                steps.join("; ")
            };
            (desc, build_cascade(&ground, &start, &Schedule { pairs }))
        }
    };
    let full = matches!(schedule_desc.as_str(), "full");

    let mut report = Report::new("cascade");
    report.input = Some(echo(c, source));
    let pinned = atom.canonical.indices().to_vec();
    match result {
        Ok(cascade) => {
            let shared = cascade.start().intersect(cascade.terminal());
            let matches = full.then(|| {
                cascade.start().select(atom.canonical.indices()) == shared
            });
            report.cascade = Some(CascadeSection {
                atom: atom_index,
                signature: atom.signature.hex(),
                pinned,
                schedule: schedule_desc,
                level: cascade.level,
                start: cascade.start().members().to_vec(),
                terminal: cascade.terminal().members().to_vec(),
                shared_with_start: shared.members().to_vec(),
                pinned_selection_matches: matches,
                steps: step_rows(&ground, &cascade),
                verified: true,
                failure: None,
            });
            report.verdict = "verified".to_string();
            Ok(CommandOutput::ok(report))
        }
        Err(e) => {
            report.cascade = Some(CascadeSection {
                atom: atom_index,
                signature: atom.signature.hex(),
                pinned,
                schedule: schedule_desc,
                level: 0,
                start: start.members().to_vec(),
                terminal: Vec::new(),
                shared_with_start: Vec::new(),
                pinned_selection_matches: None,
                steps: Vec::new(),
                verified: false,
                failure: Some(e.to_string()),
            });
            report.verdict = "cascade failed".to_string();
            Ok(CommandOutput {
                report,
                failed: true,
            })
        }
    }
}

/// Classify the coloring as a function of increasing n-tuples: upward
/// constant or selectively upward injective, with the largest canonical
/// witness found below the size cap.
pub fn cmd_analyze_fn(
    c: &Coloring,
    source: &str,
    size_cap: Option<usize>,
) -> Result<CommandOutput, InputError> {
    let cap = size_cap.unwrap_or_else(|| c.universe());
    let analysis = analyze_coloring(c, cap).map_err(engine_input_error)?;
    let mut report = Report::new("analyze-fn");
    report.input = Some(echo(c, source));
    let classification = match analysis.classification {
        FunctionClass::UpwardConstant => "upward constant",
        FunctionClass::SelectivelyUpwardInjective => "selectively upward injective",
    };
    report.function = Some(FunctionSection {
        size_cap: analysis.size_cap,
        classification: classification.to_string(),
        witness: analysis.witness.members().to_vec(),
        pinned: analysis.index_set.indices().to_vec(),
    });
    report.verdict = classification.to_string();
    Ok(CommandOutput::ok(report))
}

/// Run the oracle cross-check suites at their pinned sizes.
pub fn cmd_selftest() -> CommandOutput {
    let suites = selftest::run_all();
    let passed = suites.iter().all(|s| s.failures == 0);
    let mut report = Report::new("selftest");
    report.oracle = Some(OracleSection {
        suites,
        passed,
    });
    report.verdict = if passed {
        "all suites passed".to_string()
    } else {
        "selftest failed".to_string()
    };
    CommandOutput {
        report,
        failed: !passed,
    }
}

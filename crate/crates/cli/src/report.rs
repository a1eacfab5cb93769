//! Report assembly and rendering. Every command produces one [`Report`];
//! `--json` serializes it as JSON, otherwise it renders as plain tables.
//! Field order, row order, and number formatting are all fixed so that two
//! runs on the same input produce byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atoms: Option<AtomsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub findings: Option<FindingsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cascade: Option<CascadeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    pub verdict: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            input: None,
            atoms: None,
            findings: None,
            decomposition: None,
            cascade: None,
            function: None,
            oracle: None,
            verdict: "ok".to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub source: String,
    pub arity: usize,
    pub universe: usize,
    pub subsets: usize,
    pub colors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AtomsSection {
    pub count: usize,
    pub bound: String,
    pub within_bound: bool,
    pub covered: usize,
    pub rows: Vec<AtomRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AtomRow {
    pub index: usize,
    pub signature: String,
    pub members: usize,
    pub pinned: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FindingsSection {
    pub mode: String,
    pub size: usize,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pinned: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionSection {
    pub size: usize,
    pub max_gap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_gap: Option<usize>,
    pub passed: bool,
    pub atoms: Vec<AtomDecomposition>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AtomDecomposition {
    pub atom: usize,
    pub signature: String,
    pub pinned: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homogeneous_set: Option<Vec<usize>>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<usize>,
    pub classes: Vec<ClassRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub class: usize,
    pub members: Vec<usize>,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CascadeSection {
    pub atom: usize,
    pub signature: String,
    pub pinned: Vec<usize>,
    pub schedule: String,
    pub level: usize,
    pub start: Vec<usize>,
    pub terminal: Vec<usize>,
    pub shared_with_start: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pinned_selection_matches: Option<bool>,
    pub steps: Vec<StepRow>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepRow {
    pub index: usize,
    pub level: usize,
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub source: Vec<usize>,
    pub witness: Vec<usize>,
    pub target: Vec<usize>,
    pub source_sparsity: String,
    pub required_sparsity: String,
    pub witness_sparsity: String,
    pub witness_bound: String,
    pub reach: usize,
    pub reach_bound: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionSection {
    pub size_cap: usize,
    pub classification: String,
    pub witness: Vec<usize>,
    pub pinned: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSection {
    pub suites: Vec<SuiteRow>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteRow {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
}

pub fn set_text(members: &[usize]) -> String {
    let inner: Vec<String> = members.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn render_json(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report structs serialize");
    out.push('\n');
    out
}

pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "command: {}", report.command).unwrap();
    if let Some(input) = &report.input {
        writeln!(
            w,
            "input: {} (n={}, N={}, {} subsets, {} colors)",
            input.source, input.arity, input.universe, input.subsets, input.colors
        )
        .unwrap();
    }
    if let Some(atoms) = &report.atoms {
        writeln!(w).unwrap();
        writeln!(
            w,
            "atoms: {} (bound {}, covering {} tuples)",
            atoms.count, atoms.bound, atoms.covered
        )
        .unwrap();
        writeln!(w, "  index  signature  members  pinned").unwrap();
        for row in &atoms.rows {
            writeln!(
                w,
                "  {:>5}  {:>9}  {:>7}  {}",
                row.index,
                row.signature,
                row.members,
                set_text(&row.pinned)
            )
            .unwrap();
        }
        if !atoms.within_bound {
            writeln!(w, "  WARNING: atom count exceeds the signature bound").unwrap();
        }
    }
    if let Some(f) = &report.findings {
        writeln!(w).unwrap();
        match (&f.set, f.color, &f.pinned) {
            (Some(set), Some(color), _) => writeln!(
                w,
                "{} set of size {}: {} (color {})",
                f.mode,
                f.size,
                set_text(set),
                color
            )
            .unwrap(),
            (Some(set), None, Some(pinned)) => writeln!(
                w,
                "{} set of size {}: {} (pinned {})",
                f.mode,
                f.size,
                set_text(set),
                set_text(pinned)
            )
            .unwrap(),
            _ => writeln!(w, "no {} set of size {}", f.mode, f.size).unwrap(),
        }
    }
    if let Some(d) = &report.decomposition {
        writeln!(w).unwrap();
        writeln!(
            w,
            "decomposition check: size {}, gaps 1..={}",
            d.size, d.max_gap
        )
        .unwrap();
        for atom in &d.atoms {
            let set_desc = match &atom.homogeneous_set {
                Some(s) => set_text(s),
                None => "none found".to_string(),
            };
            let gap_desc = match atom.gap {
                Some(g) => format!(" at gap {g}"),
                None => String::new(),
            };
            writeln!(
                w,
                "  atom {} [{}] pinned {}: set {}, {}{}",
                atom.atom,
                atom.signature,
                set_text(&atom.pinned),
                set_desc,
                atom.outcome,
                gap_desc
            )
            .unwrap();
            for class in &atom.classes {
                writeln!(
                    w,
                    "    class {}: {} {}",
                    class.class,
                    set_text(&class.members),
                    class.status
                )
                .unwrap();
            }
        }
        match d.minimal_gap {
            Some(g) => writeln!(w, "  verified at gap {g}").unwrap(),
            None => writeln!(w, "  FAILED through gap {}", d.max_gap).unwrap(),
        }
    }
    if let Some(c) = &report.cascade {
        writeln!(w).unwrap();
        writeln!(
            w,
            "cascade for atom {} [{}] pinned {}: schedule {}, level {}",
            c.atom,
            c.signature,
            set_text(&c.pinned),
            c.schedule,
            c.level
        )
        .unwrap();
        writeln!(w, "  start {}", set_text(&c.start)).unwrap();
        for s in &c.steps {
            writeln!(
                w,
                "  step {} (level {}): p={} q={} witness {}",
                s.index,
                s.level,
                set_text(&s.p),
                set_text(&s.q),
                set_text(&s.witness)
            )
            .unwrap();
            writeln!(
                w,
                "    source {} (sparsity {} >= {}) -> target {} (reach {} <= {}, witness sparsity {} >= {})",
                set_text(&s.source),
                s.source_sparsity,
                s.required_sparsity,
                set_text(&s.target),
                s.reach,
                s.reach_bound,
                s.witness_sparsity,
                s.witness_bound
            )
            .unwrap();
        }
        writeln!(w, "  terminal {}", set_text(&c.terminal)).unwrap();
        writeln!(
            w,
            "  shared with start {}",
            set_text(&c.shared_with_start)
        )
        .unwrap();
        if let Some(matches) = c.pinned_selection_matches {
            writeln!(
                w,
                "  pinned-slot selection {}",
                if matches { "matches" } else { "DOES NOT MATCH" }
            )
            .unwrap();
        }
        match &c.failure {
            None => writeln!(w, "  verified: every selection and bound re-checked").unwrap(),
            Some(msg) => writeln!(w, "  FAILED: {msg}").unwrap(),
        }
    }
    if let Some(f) = &report.function {
        writeln!(w).unwrap();
        writeln!(
            w,
            "function classification (sizes up to {}): {}",
            f.size_cap, f.classification
        )
        .unwrap();
        writeln!(
            w,
            "  witness {} with pinned coordinates {}",
            set_text(&f.witness),
            set_text(&f.pinned)
        )
        .unwrap();
    }
    if let Some(o) = &report.oracle {
        writeln!(w).unwrap();
        writeln!(w, "oracle cross-checks:").unwrap();
        for s in &o.suites {
            writeln!(
                w,
                "  {:<32} {:>6} cases  {}",
                s.name,
                s.cases,
                if s.failures == 0 {
                    "ok".to_string()
                } else {
                    format!("{} FAILURES", s.failures)
                }
            )
            .unwrap();
        }
    }
    writeln!(w).unwrap();
    writeln!(w, "verdict: {}", report.verdict).unwrap();
    out
}

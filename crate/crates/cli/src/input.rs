//! Coloring ingestion: the line-oriented file format and the named
//! generator grammar. Both paths end in a [`Coloring`] plus a short source
//! description echoed at the top of every report.

use std::fmt;
use std::fs;
use std::path::Path;

use canram_core::{binomial, generators, lex_rank, Coloring};

/// A problem with user-supplied input. Carries the 1-based line number when
/// the problem is tied to a specific line of a coloring file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub line: Option<usize>,
    pub message: String,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> Self {
        InputError {
            line: None,
            message: message.into(),
        }
    }

    pub fn at(line: usize, message: impl Into<String>) -> Self {
        InputError {
            line: Some(line),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for InputError {}

fn parse_field<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T, InputError> {
    field
        .parse()
        .map_err(|_| InputError::at(line, format!("{what} must be a non-negative integer, got {field:?}")))
}

/// Parse the inline file format: a header line "n N", then one line per
/// n-subset "a_1 ... a_n c" with strictly increasing members and a
/// non-negative color. Every n-subset of 0..N must appear exactly once;
/// blank lines are allowed and skipped.
pub fn parse_coloring_file(text: &str) -> Result<Coloring, InputError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| InputError::new("empty input: expected a header line \"n N\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(InputError::at(
            header_line,
            format!("header must be \"n N\" (two fields), got {} field(s)", fields.len()),
        ));
    }
    let arity: usize = parse_field(header_line, fields[0], "arity n")?;
    let universe: usize = parse_field(header_line, fields[1], "universe size N")?;
    if arity == 0 {
        return Err(InputError::at(header_line, "arity n must be at least 1".to_string()));
    }
    if universe < arity {
        return Err(InputError::at(
            header_line,
            format!("universe size {universe} is smaller than the arity {arity}"),
        ));
    }
    let total = binomial(universe, arity);
    let total = usize::try_from(total)
        .map_err(|_| InputError::at(header_line, format!("universe has {total} subsets; too many to table")))?;

    let mut colors: Vec<Option<u64>> = vec![None; total];
    let mut filled = 0usize;
    for (line, body) in lines {
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != arity + 1 {
            return Err(InputError::at(
                line,
                format!("expected {} fields (a_1 ... a_{arity} c), got {}", arity + 1, fields.len()),
            ));
        }
        let mut members = Vec::with_capacity(arity);
        for field in &fields[..arity] {
            members.push(parse_field::<usize>(line, field, "subset member")?);
        }
        for w in members.windows(2) {
            if w[0] >= w[1] {
                return Err(InputError::at(
                    line,
                    format!("members must be strictly increasing, got {} before {}", w[0], w[1]),
                ));
            }
        }
        if let Some(&m) = members.iter().find(|&&m| m >= universe) {
            return Err(InputError::at(
                line,
                format!("member {m} lies outside the universe 0..{universe}"),
            ));
        }
        let color: u64 = parse_field(line, fields[arity], "color")?;
        let rank = lex_rank(universe, &members) as usize;
        if colors[rank].is_some() {
            return Err(InputError::at(
                line,
                format!("duplicate subset {}", subset_text(&members)),
            ));
        }
        colors[rank] = Some(color);
        filled += 1;
    }
    if filled < total {
        let missing_rank = colors.iter().position(|c| c.is_none()).expect("some slot empty");
        let missing = unrank(universe, arity, missing_rank);
        return Err(InputError::new(format!(
            "{} of {total} subsets missing, first {}",
            total - filled,
            subset_text(&missing)
        )));
    }
    let table: Vec<u64> = colors.into_iter().map(|c| c.expect("all filled")).collect();
    Coloring::from_colors(arity, universe, table).map_err(|e| InputError::new(e.to_string()))
}

/// The coloring written back out in the same format: header, then every
/// subset in lexicographic order, one per line, newline-terminated.
pub fn render_coloring_file(c: &Coloring) -> String {
    let mut out = format!("{} {}\n", c.arity(), c.universe());
    for subset in canram_core::enumerate_ksubsets(c.universe(), c.arity()).expect("sizes already validated") {
        for &m in subset.members() {
            out.push_str(&m.to_string());
            out.push(' ');
        }
        out.push_str(&c.color(&subset).expect("subset from the same universe").to_string());
        out.push('\n');
    }
    out
}

/// Lexicographically `rank`-th k-subset of 0..universe.
fn unrank(universe: usize, k: usize, mut rank: usize) -> Vec<usize> {
    let mut members = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        loop {
            let below = binomial(universe - next - 1, k - slot - 1);
            let below = usize::try_from(below).expect("table size already fit in usize");
            if rank < below {
                members.push(next);
                next += 1;
                break;
            }
            rank -= below;
            next += 1;
        }
    }
    members
}

fn subset_text(members: &[usize]) -> String {
    let inner: Vec<String> = members.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

/// Build a generator coloring from its textual spec. The grammar is the
/// generator name, with parameters attached by colons:
/// `constant | min | max | injective | sidon-sum | projection:<i> |
/// sum-mod:<k> | random:<seed>:<colors>`. The random generator requires an
/// explicit seed; there is no entropy fallback.
pub fn generator_from_spec(spec: &str, arity: usize, universe: usize) -> Result<Coloring, InputError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let complain = |e: canram_core::Error| InputError::new(e.to_string());
    let bad_params = |expected: &str| {
        InputError::new(format!("generator {:?} takes {expected}", parts[0]))
    };
    match (parts[0], &parts[1..]) {
        ("constant", []) => generators::constant(arity, universe).map_err(complain),
        ("min", []) => generators::min(arity, universe).map_err(complain),
        ("max", []) => generators::max(arity, universe).map_err(complain),
        ("injective", []) => generators::injective(arity, universe).map_err(complain),
        ("sidon-sum", []) => generators::sidon_sum(arity, universe).map_err(complain),
        ("projection", [i]) => {
            let index = i
                .parse()
                .map_err(|_| InputError::new(format!("projection index must be an integer, got {i:?}")))?;
            generators::projection(arity, universe, index).map_err(complain)
        }
        ("sum-mod", [k]) => {
            let modulus = k
                .parse()
                .map_err(|_| InputError::new(format!("modulus must be an integer, got {k:?}")))?;
            generators::sum_mod(arity, universe, modulus).map_err(complain)
        }
        ("random", [seed, colors]) => {
            let seed = seed
                .parse()
                .map_err(|_| InputError::new(format!("seed must be an integer, got {seed:?}")))?;
            let colors = colors
                .parse()
                .map_err(|_| InputError::new(format!("color count must be an integer, got {colors:?}")))?;
            generators::random(arity, universe, seed, colors).map_err(complain)
        }
        ("constant" | "min" | "max" | "injective" | "sidon-sum", _) => Err(bad_params("no parameters")),
        ("projection", _) => Err(bad_params("exactly one parameter (the coordinate)")),
        ("sum-mod", _) => Err(bad_params("exactly one parameter (the modulus)")),
        ("random", _) => Err(bad_params("exactly two parameters (seed and color count)")),
        (name, _) => Err(InputError::new(format!(
            "unknown generator {name:?}; known: constant, min, max, injective, sidon-sum, \
             projection:<i>, sum-mod:<k>, random:<seed>:<colors>"
        ))),
    }
}

/// Resolve a command's coloring source: exactly one of a file path or a
/// generator spec (the latter with explicit arity and universe). Returns
/// the coloring and the source line echoed in reports.
pub fn load_source(
    file: Option<&Path>,
    generator: Option<&str>,
    arity: Option<usize>,
    universe: Option<usize>,
) -> Result<(Coloring, String), InputError> {
    match (file, generator) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| InputError::new(format!("cannot read {}: {e}", path.display())))?;
            let c = parse_coloring_file(&text)
                .map_err(|e| InputError { line: e.line, message: format!("{}: {}", path.display(), e.message) })?;
            Ok((c, format!("file {}", path.display())))
        }
        (None, Some(spec)) => {
            let arity = arity.ok_or_else(|| InputError::new("generator input needs --arity"))?;
            let universe = universe.ok_or_else(|| InputError::new("generator input needs --universe"))?;
            let c = generator_from_spec(spec, arity, universe)?;
            Ok((c, format!("generator {spec}")))
        }
        (Some(_), Some(_)) => Err(InputError::new("give either --file or --generator, not both")),
        (None, None) => Err(InputError::new("no coloring given: use --file or --generator")),
    }
}

//! Line-oriented `key = value` problem files.
//!
//! ```text
//! # determinantal ring, canonical module
//! p = 2
//! vars = x1 x2 x3 x4 x5 x6
//! ring = x1*x5 - x2*x4, x1*x6 - x3*x4, x2*x6 - x3*x5
//! ideal = x1, x2, x3, x4, x5, x6
//! submodule = x1, x4
//! rank = 1
//! n = 0..3
//! ```
//!
//! Keys: `p`, `vars`, `n` (required); `ring`, `ideal`, `dim`, `rank`,
//! `module_rank`, `relation` (repeatable), `submodule`, `sequence`,
//! `leading`, `period_max`. Module rows are written `(f, g, ..)`; a bare
//! polynomial is a row of length one.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::groebner::{FreeElement, Limits};
use crate::hkanalysis::{format_rational, parse_rational, ExactSequenceSpec};
use crate::modpres::{present_submodule, IdealSpec, ModulePresentation, RingSpec, SubmoduleSpec};
use crate::poly::{PolyRing, Polynomial};

const KEYS: &[&str] = &[
    "p",
    "vars",
    "ring",
    "ideal",
    "dim",
    "rank",
    "module_rank",
    "relation",
    "submodule",
    "sequence",
    "leading",
    "n",
    "period_max",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub ring: PolyRing,
    pub ring_relations: Vec<Polynomial>,
    /// Defaults to the maximal ideal of the variables.
    pub ideal: Option<Vec<Polynomial>>,
    pub dim: Option<usize>,
    /// Declared generic rank of the module.
    pub rank: Option<usize>,
    pub module_rank: Option<usize>,
    pub relations: Vec<Vec<Polynomial>>,
    pub submodule: Option<Vec<Vec<Polynomial>>>,
    pub sequence: Option<Vec<Vec<Polynomial>>>,
    pub leading: Option<BigRational>,
    pub n_min: u32,
    pub n_max: u32,
    pub period_max: Option<usize>,
}

#[derive(Debug, Clone)]
struct Entry {
    line: usize,
    column: usize,
    value: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits at commas outside parentheses, keeping the 1-based column of each
/// trimmed piece.
fn split_top(value: &str, column: usize) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let chars: Vec<char> = value.chars().collect();
    let push = |from: usize, to: usize, out: &mut Vec<(usize, String)>| {
        let piece: String = chars[from..to].iter().collect();
        let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
        out.push((column + from + lead, piece.trim().to_string()));
    };
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                push(start, i, &mut out);
                start = i + 1;
            }
            _ => {}
        }
    }
    push(start, chars.len(), &mut out);
    out
}

fn parse_uint<T: std::str::FromStr>(e: &Entry, what: &str) -> Result<T> {
    e.value
        .trim()
        .parse()
        .map_err(|_| err(e.line, e.column, format!("{what} must be a nonnegative integer")))
}

fn parse_poly(ring: &PolyRing, line: usize, column: usize, text: &str) -> Result<Polynomial> {
    if text.is_empty() {
        return Err(err(line, column, "empty polynomial"));
    }
    ring.parse_at(text, line, column)
}

fn parse_poly_list(ring: &PolyRing, e: &Entry) -> Result<Vec<Polynomial>> {
    split_top(&e.value, e.column)
        .into_iter()
        .map(|(c, t)| parse_poly(ring, e.line, c, &t))
        .collect()
}

/// Rows with the position of each row for later arity errors.
fn parse_rows(ring: &PolyRing, e: &Entry) -> Result<Vec<(usize, usize, Vec<Polynomial>)>> {
    let mut rows = Vec::new();
    for (c, item) in split_top(&e.value, e.column) {
        if let Some(inner) = item.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| err(e.line, c, "unbalanced parenthesis"))?;
            let row = split_top(inner, c + 1)
                .into_iter()
                .map(|(cc, t)| parse_poly(ring, e.line, cc, &t))
                .collect::<Result<Vec<_>>>()?;
            rows.push((e.line, c, row));
        } else {
            rows.push((e.line, c, vec![parse_poly(ring, e.line, c, &item)?]));
        }
    }
    Ok(rows)
}

fn check_arity(rows: &[(usize, usize, Vec<Polynomial>)], rank: usize) -> Result<Vec<Vec<Polynomial>>> {
    rows.iter()
        .map(|(l, c, r)| {
            if r.len() == rank {
                Ok(r.clone())
            } else {
                Err(err(*l, *c, format!("row has {} entries, expected {rank}", r.len())))
            }
        })
        .collect()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a problem file; positions in errors are 1-based.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut entries: BTreeMap<&'static str, Vec<Entry>> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(eq) = body.find('=') else {
            let col = body.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(err(line, col, "expected `key = value`"));
        };
        let key_raw = &body[..eq];
        let key = key_raw.trim();
        let key_col = key_raw.chars().take_while(|c| c.is_whitespace()).count() + 1;
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(err(line, key_col, format!("unknown key '{key}'")));
        };
        if known != "relation" && entries.contains_key(known) {
            return Err(err(line, key_col, format!("duplicate key '{key}'")));
        }
        let value = &body[eq + 1..];
        let lead = value.chars().take_while(|c| c.is_whitespace()).count();
        let column = body[..eq + 1].chars().count() + 1 + lead;
        entries.entry(known).or_default().push(Entry {
            line,
            column,
            value: value.trim().to_string(),
        });
    }
    let last_line = text.lines().count().max(1);
    let required = |k: &str| -> Result<Entry> {
        entries
            .get(k)
            .map(|v| v[0].clone())
            .ok_or_else(|| err(last_line, 1, format!("missing required key '{k}'")))
    };

    let pe = required("p")?;
    let p: u64 = parse_uint(&pe, "p")?;
    let ve = required("vars")?;
    let names: Vec<String> = ve
        .value
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    if names.is_empty() {
        return Err(err(ve.line, ve.column, "no variables declared"));
    }
    for (i, v) in names.iter().enumerate() {
        let col = ve.column + ve.value.find(v.as_str()).unwrap_or(0);
        if !is_identifier(v) {
            return Err(err(ve.line, col, format!("'{v}' is not a valid variable name")));
        }
        if names[..i].contains(v) {
            return Err(err(ve.line, col, format!("variable '{v}' declared twice")));
        }
    }
    let ring = PolyRing::with_vars(p, &names).map_err(|e| match e {
        Error::InvalidPrime(_) => err(pe.line, pe.column, format!("{p} is not prime (or too large)")),
        other => other,
    })?;

    let one = |k: &str| entries.get(k).map(|v| v[0].clone());
    let ring_relations = match one("ring") {
        Some(e) => parse_poly_list(&ring, &e)?,
        None => Vec::new(),
    };
    let ideal = one("ideal").map(|e| parse_poly_list(&ring, &e)).transpose()?;
    let dim = one("dim").map(|e| parse_uint(&e, "dim")).transpose()?;
    let rank = one("rank").map(|e| parse_uint(&e, "rank")).transpose()?;
    let module_rank: Option<usize> = one("module_rank")
        .map(|e| parse_uint(&e, "module_rank"))
        .transpose()?;
    let period_max = one("period_max")
        .map(|e| parse_uint(&e, "period_max"))
        .transpose()?;
    let leading = one("leading")
        .map(|e| {
            parse_rational(&e.value).ok_or_else(|| err(e.line, e.column, "expected a rational num/den"))
        })
        .transpose()?;

    let relation_entries = entries.get("relation").cloned().unwrap_or_default();
    if module_rank.is_none() {
        if let Some(e) = relation_entries.first() {
            return Err(err(e.line, e.column, "relation given without module_rank"));
        }
    }
    let ambient = module_rank.unwrap_or(1);
    let mut relations = Vec::new();
    for e in &relation_entries {
        relations.extend(check_arity(&parse_rows(&ring, e)?, ambient)?);
    }
    let submodule = one("submodule")
        .map(|e| check_arity(&parse_rows(&ring, &e)?, ambient))
        .transpose()?;
    let sequence = one("sequence")
        .map(|e| check_arity(&parse_rows(&ring, &e)?, ambient))
        .transpose()?;

    let ne = required("n")?;
    let (a, b) = ne
        .value
        .trim()
        .split_once("..")
        .ok_or_else(|| err(ne.line, ne.column, "expected n = a..b"))?;
    let n_min: u32 = a
        .trim()
        .parse()
        .map_err(|_| err(ne.line, ne.column, "bad lower bound"))?;
    let n_max: u32 = b
        .trim()
        .parse()
        .map_err(|_| err(ne.line, ne.column, "bad upper bound"))?;
    if n_min > n_max {
        return Err(err(ne.line, ne.column, format!("empty range {n_min}..{n_max}")));
    }

    Ok(ProblemFile {
        ring,
        ring_relations,
        ideal,
        dim,
        rank,
        module_rank,
        relations,
        submodule,
        sequence,
        leading,
        n_min,
        n_max,
        period_max,
    })
}

impl ProblemFile {
    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn ambient_rank(&self) -> usize {
        self.module_rank.unwrap_or(1)
    }

    fn join(&self, polys: &[Polynomial]) -> String {
        polys
            .iter()
            .map(|f| self.ring.display(f).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn rows(&self, rows: &[Vec<Polynomial>]) -> String {
        if self.ambient_rank() == 1 {
            let flat: Vec<Polynomial> = rows.iter().map(|r| r[0].clone()).collect();
            return self.join(&flat);
        }
        rows.iter()
            .map(|r| format!("({})", self.join(r)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Canonical text; parsing it gives back an equal problem.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p = {}\n", self.p()));
        out.push_str(&format!("vars = {}\n", self.ring.names().join(" ")));
        if !self.ring_relations.is_empty() {
            out.push_str(&format!("ring = {}\n", self.join(&self.ring_relations)));
        }
        if let Some(i) = &self.ideal {
            out.push_str(&format!("ideal = {}\n", self.join(i)));
        }
        if let Some(d) = self.dim {
            out.push_str(&format!("dim = {d}\n"));
        }
        if let Some(r) = self.module_rank {
            out.push_str(&format!("module_rank = {r}\n"));
        }
        for r in &self.relations {
            out.push_str(&format!("relation = ({})\n", self.join(r)));
        }
        if let Some(s) = &self.submodule {
            out.push_str(&format!("submodule = {}\n", self.rows(s)));
        }
        if let Some(r) = self.rank {
            out.push_str(&format!("rank = {r}\n"));
        }
        if let Some(s) = &self.sequence {
            out.push_str(&format!("sequence = {}\n", self.rows(s)));
        }
        if let Some(c) = &self.leading {
            out.push_str(&format!("leading = {}\n", format_rational(c)));
        }
        if let Some(k) = self.period_max {
            out.push_str(&format!("period_max = {k}\n"));
        }
        out.push_str(&format!("n = {}..{}\n", self.n_min, self.n_max));
        out
    }

    pub fn ring_spec(&self) -> Result<RingSpec> {
        RingSpec::new(self.ring.clone(), self.ring_relations.clone(), self.dim)
    }

    pub fn ideal_spec(&self) -> IdealSpec {
        match &self.ideal {
            Some(g) => IdealSpec::new(g.clone()),
            None => IdealSpec::maximal(&self.ring),
        }
    }

    fn elements(rows: &[Vec<Polynomial>]) -> Vec<FreeElement> {
        rows.iter()
            .map(|r| FreeElement::new(r.clone()).expect("rows share one ring"))
            .collect()
    }

    /// The cokernel of `relation` rows, or R itself.
    pub fn ambient(&self, ring: &RingSpec) -> Result<ModulePresentation> {
        let rank = self.ambient_rank();
        let declared = if self.submodule.is_none() { self.rank } else { None };
        ModulePresentation::new(ring, rank, Self::elements(&self.relations), declared)
    }

    pub fn has_module(&self) -> bool {
        self.module_rank.is_some() || self.submodule.is_some()
    }

    /// The module under study: the submodule when given, else the ambient.
    pub fn module(&self, ring: &RingSpec, limits: &Limits) -> Result<ModulePresentation> {
        let ambient = self.ambient(ring)?;
        match &self.submodule {
            Some(rows) => {
                let sub = SubmoduleSpec::new(ambient, Self::elements(rows))?;
                Ok(present_submodule(ring, &sub, limits)?.with_generic_rank(self.rank))
            }
            None => Ok(ambient),
        }
    }

    pub fn sequence_spec(&self, ring: &RingSpec) -> Result<Option<ExactSequenceSpec>> {
        let Some(rows) = &self.sequence else {
            return Ok(None);
        };
        let sub = SubmoduleSpec::new(self.ambient(ring)?, Self::elements(rows))?;
        Ok(Some(ExactSequenceSpec {
            submodule: sub,
            ranks: [None; 3],
            leading: self.leading.clone(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let f = parse_problem("p = 5\nvars = x y\nideal = x, y\nn = 1..3").unwrap();
        assert_eq!(f.p(), 5);
        assert_eq!(f.ring.names(), ["x", "y"]);
        assert_eq!((f.n_min, f.n_max), (1, 3));
        assert_eq!(f.ideal.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn rejects_composite_p() {
        match parse_problem("p = 4\nvars = x\nn = 1..2") {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (1, 5));
                assert!(message.contains("not prime"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_positions() {
        let cases = [
            ("p = 5\nvars = x y\nideal = x, w\nn = 1..2", 3, 12),
            ("p = 5\nvars = x y\ncolour = red\nn = 1..2", 3, 1),
            ("p = 5\nvars = x y\np = 7\nn = 1..2", 3, 1),
            ("p = 5\nvars = x y\nn = 3..1", 3, 5),
            ("p = 5\nvars = x y\nmodule_rank = 2\nrelation = (x, y, x)\nn = 1..1", 4, 12),
            ("p = 5\nvars = x y\nrelation = (x)\nn = 1..1", 3, 12),
            ("p = 5\nvars = x 2y\nn = 1..1", 2, 10),
            ("p = 5\nvars = x y\nideal = x +\nn = 1..1", 3, 12),
            ("p = 5\nvars = x y\n", 2, 1),
            ("p = 5\nvars = x y\nthis line has no equals\nn = 1..1", 3, 1),
        ];
        for (text, line, column) in cases {
            match parse_problem(text) {
                Err(Error::Parse { line: l, column: c, .. }) => {
                    assert_eq!((l, c), (line, column), "{text:?}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_rows() {
        let text = "# a comment\np = 3  # trailing\nvars = x, y\nmodule_rank = 2\n\
                    relation = (x, y)\nrelation = (y^2, 0), (0, x^2)\nsubmodule = (1, 0)\nn = 0..2\n";
        let f = parse_problem(text).unwrap();
        assert_eq!(f.relations.len(), 3);
        assert_eq!(f.submodule.as_ref().unwrap()[0].len(), 2);
        assert_eq!(parse_problem(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn round_trip() {
        let text = "p = 2\nvars = x1 x2 x3 x4 x5 x6\nring = x1*x5 - x2*x4, x1*x6 - x3*x4, x2*x6 - x3*x5\n\
                    sequence = x1, x2, x3\nleading = 1/2\nrank = 1\ndim = 4\nperiod_max = 3\nn = 1..3\n";
        let f = parse_problem(text).unwrap();
        let again = parse_problem(&f.to_text()).unwrap();
        assert_eq!(again, f);
        assert_eq!(again.to_text(), f.to_text());
    }

    #[test]
    fn builds_specs() {
        let f = parse_problem("p = 3\nvars = x y\nsubmodule = x, y\nn = 1..2").unwrap();
        let r = f.ring_spec().unwrap();
        let m = f.module(&r, &Limits::default()).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(f.ideal_spec().is_m_primary(&r).unwrap());
        assert!(f.sequence_spec(&r).unwrap().is_none());
    }
}

//! Text formats for graphs, placements and polyhedral spaces, plus number
//! formatting for reports.
//!
//! Every parser returns `Error::Parse { line, .. }` (1-based) on bad input and
//! never panics. Lines starting with `#` and blank lines are skipped.

use crate::error::{Error, Result};
use crate::framework::Placement;
use crate::graph::Graph;
use crate::space::{Exponent, NormedSpace};

/// Largest vertex count accepted from text.
pub const MAX_VERTICES: usize = 10_000;
/// Largest dimension accepted from text.
pub const MAX_DIM: usize = 64;
/// Largest facet count accepted from text.
pub const MAX_FACETS: usize = 4096;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(line, format!("{what}: expected a non-negative integer, got {tok:?}")))
}

fn parse_real(tok: &str, line: usize) -> Result<f64> {
    match tok.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::parse(line, format!("expected a finite decimal, got {tok:?}"))),
    }
}

/// Graph file: header `n m`, then `m` lines `u v` with `0 ≤ u < v < n`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::parse(1, "missing header \"n m\""))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::parse(hl, "header must be \"n m\""));
    }
    let n = parse_usize(toks[0], hl, "vertex count")?;
    let m = parse_usize(toks[1], hl, "edge count")?;
    if n > MAX_VERTICES {
        return Err(Error::parse(hl, format!("vertex count {n} exceeds limit {MAX_VERTICES}")));
    }
    if m > n * n.saturating_sub(1) / 2 {
        return Err(Error::parse(hl, format!("{m} edges impossible on {n} vertices")));
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        if edges.len() == m {
            return Err(Error::parse(ln, format!("more than the declared {m} edges")));
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(ln, "edge line must be \"u v\""));
        }
        let u = parse_usize(toks[0], ln, "endpoint")?;
        let v = parse_usize(toks[1], ln, "endpoint")?;
        if u >= v {
            return Err(Error::parse(ln, format!("edge ({u}, {v}) must satisfy u < v")));
        }
        if v >= n {
            return Err(Error::parse(ln, format!("vertex {v} out of range 0..{n}")));
        }
        if !seen.insert((u, v)) {
            return Err(Error::parse(ln, format!("duplicate edge ({u}, {v})")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(last, format!("declared {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges).map_err(|e| Error::parse(hl, e.to_string()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Placement file: one line `v x_1 … x_d` per vertex, each vertex exactly once.
pub fn parse_placement(text: &str) -> Result<Placement> {
    let mut rows: Vec<Option<Vec<f64>>> = Vec::new();
    let mut d = None;
    let mut last = 1;
    for (ln, l) in content_lines(text) {
        last = ln;
        let mut toks = l.split_whitespace();
        let v = parse_usize(toks.next().unwrap_or(""), ln, "vertex")?;
        if v >= MAX_VERTICES {
            return Err(Error::parse(ln, format!("vertex {v} exceeds limit {MAX_VERTICES}")));
        }
        let coords = toks.map(|t| parse_real(t, ln)).collect::<Result<Vec<f64>>>()?;
        match d {
            None if coords.is_empty() => return Err(Error::parse(ln, "no coordinates")),
            None if coords.len() > MAX_DIM => {
                return Err(Error::parse(ln, format!("dimension {} exceeds limit {MAX_DIM}", coords.len())))
            }
            None => d = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(Error::parse(ln, format!("expected {d} coordinates, got {}", coords.len())))
            }
            _ => {}
        }
        if v >= rows.len() {
            rows.resize(v + 1, None);
        }
        if rows[v].is_some() {
            return Err(Error::parse(ln, format!("vertex {v} appears twice")));
        }
        rows[v] = Some(coords);
    }
    if let Some(v) = rows.iter().position(Option::is_none) {
        return Err(Error::parse(last, format!("vertex {v} missing")));
    }
    let d = d.ok_or(Error::parse(last, "empty placement"))?;
    let flat: Vec<f64> = rows.into_iter().flatten().flatten().collect();
    Placement::from_flat(d, flat).map_err(|e| Error::parse(last, e.to_string()))
}

pub fn write_placement(p: &Placement) -> String {
    let mut s = String::new();
    for v in 0..p.n() {
        s.push_str(&v.to_string());
        for x in p.point(v) {
            // shortest round-trip representation
            s.push_str(&format!(" {x:?}"));
        }
        s.push('\n');
    }
    s
}

/// Polyhedral space file: header `d m`, then `m` facet lines of `d` decimals.
pub fn parse_polyhedral(text: &str) -> Result<NormedSpace> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::parse(1, "missing header \"d m\""))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::parse(hl, "header must be \"d m\""));
    }
    let d = parse_usize(toks[0], hl, "dimension")?;
    let m = parse_usize(toks[1], hl, "facet count")?;
    if d == 0 || d > MAX_DIM {
        return Err(Error::parse(hl, format!("dimension must be in 1..={MAX_DIM}")));
    }
    if m == 0 || m > MAX_FACETS {
        return Err(Error::parse(hl, format!("facet count must be in 1..={MAX_FACETS}")));
    }
    let mut facets = Vec::with_capacity(m);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        if facets.len() == m {
            return Err(Error::parse(ln, format!("more than the declared {m} facets")));
        }
        let row = l.split_whitespace().map(|t| parse_real(t, ln)).collect::<Result<Vec<f64>>>()?;
        if row.len() != d {
            return Err(Error::parse(ln, format!("expected {d} coordinates, got {}", row.len())));
        }
        facets.push(row);
    }
    if facets.len() != m {
        return Err(Error::parse(last, format!("declared {m} facets, found {}", facets.len())));
    }
    NormedSpace::polyhedral(facets).map_err(|e| Error::parse(last, e.to_string()))
}

pub fn write_polyhedral(facets: &[Vec<f64>]) -> String {
    let d = facets.first().map_or(0, Vec::len);
    let mut s = format!("{d} {}\n", facets.len());
    for f in facets {
        let row: Vec<String> = f.iter().map(|x| format!("{x:?}")).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// A parsed `--space` argument.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    Lp { p: Exponent, d: usize },
    Polyhedral { path: String },
}

/// Parses `lp:<p>:<d>` (`p` decimal or `inf`), `linf:<d>` or `poly:<path>`.
pub fn parse_space(desc: &str) -> Result<SpaceSpec> {
    let bad = |msg: &str| Error::parse(1, format!("space descriptor {desc:?}: {msg}"));
    let parse_dim = |t: &str| -> Result<usize> {
        match t.parse::<usize>() {
            Ok(d) if (1..=MAX_DIM).contains(&d) => Ok(d),
            _ => Err(bad("dimension must be an integer in 1..=64")),
        }
    };
    if let Some(path) = desc.strip_prefix("poly:") {
        if path.is_empty() {
            return Err(bad("missing path"));
        }
        return Ok(SpaceSpec::Polyhedral { path: path.to_string() });
    }
    if let Some(d) = desc.strip_prefix("linf:") {
        return Ok(SpaceSpec::Lp { p: Exponent::Infinity, d: parse_dim(d)? });
    }
    if let Some(rest) = desc.strip_prefix("lp:") {
        let (p, d) = rest.split_once(':').ok_or_else(|| bad("expected lp:<p>:<d>"))?;
        let p = if p == "inf" {
            Exponent::Infinity
        } else {
            match p.parse::<f64>() {
                Ok(p) if p.is_finite() && p >= 1.0 => Exponent::Finite(p),
                _ => return Err(bad("p must be a decimal >= 1 or \"inf\"")),
            }
        };
        return Ok(SpaceSpec::Lp { p, d: parse_dim(d)? });
    }
    Err(bad("expected lp:<p>:<d>, linf:<d> or poly:<path>"))
}

impl SpaceSpec {
    /// Builds the space, reading the facet file for polyhedral descriptors.
    pub fn load(&self) -> Result<NormedSpace> {
        match self {
            SpaceSpec::Lp { p, d } => NormedSpace::with_exponent(*p, *d),
            SpaceSpec::Polyhedral { path } => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::parse(0, format!("cannot read {path}: {e}")))?;
                parse_polyhedral(&text)
            }
        }
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Formats with 12 significant digits, trailing zeros trimmed.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    let mag = r.abs().log10().floor() as i32;
    if !(-6..=15).contains(&mag) {
        return format!("{r:.11e}");
    }
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{r:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Recursively rounds every number in a JSON value to 12 significant digits.
pub fn round_json(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(x) = n.as_f64().filter(|_| n.is_f64()) {
                if let Some(r) = serde_json::Number::from_f64(round_sig(x)) {
                    *n = r;
                }
            }
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(round_json),
        serde_json::Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}

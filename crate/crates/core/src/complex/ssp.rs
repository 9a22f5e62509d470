//! The `.ssp` text format for stratified pseudomanifolds.
//!
//! ```text
//! # comment
//! dim 2
//! vertices 4
//! facet 0 1 2 orient 1
//! skeleton 0 3
//! boundary 1 2
//! collar
//! pair 1 5
//! cell 1 2 6
//! end
//! bicollar
//! triple 0 4 5
//! zface 0 1
//! end
//! ```
//!
//! `skeleton k v…` puts the simplex (and its faces) into `X^k`; simplices not
//! covered by a declaration are regular. `vertices` is optional and defaults
//! to one more than the largest vertex used.

use std::fmt::Write as _;

use super::simplicial::Simplex;
use super::space::{Bicollar, Collar, Perversity, Space};
use super::ComplexError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn perr(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn ints(line: usize, toks: &[&str]) -> Result<Vec<u32>, ParseError> {
    toks.iter()
        .map(|t| t.parse::<u32>().map_err(|_| perr(line, format!("expected a vertex index, found `{t}`"))))
        .collect()
}

enum Block {
    None,
    Collar(Collar),
    Bicollar(Bicollar),
}

pub fn parse_ssp(text: &str) -> Result<Space, ComplexError> {
    let mut dim: Option<usize> = None;
    let mut n_vertices: Option<usize> = None;
    let mut facets: Vec<(Simplex, i8)> = Vec::new();
    let mut skeleta: Vec<(usize, Simplex)> = Vec::new();
    let mut boundary: Vec<Simplex> = Vec::new();
    let mut collar = None;
    let mut bicollar = None;
    let mut block = Block::None;
    let mut max_vertex: Option<u32> = None;
    let mut note = |s: &[u32]| {
        for &v in s {
            max_vertex = Some(max_vertex.map_or(v, |m: u32| m.max(v)));
        }
    };
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let (head, rest) = (toks[0], &toks[1..]);
        match (&mut block, head) {
            (Block::None, "dim") => {
                let [d] = rest else { return Err(perr(line, "`dim` takes one value").into()) };
                dim = Some(d.parse().map_err(|_| perr(line, format!("bad dimension `{d}`")))?);
            }
            (Block::None, "vertices") => {
                let [v] = rest else { return Err(perr(line, "`vertices` takes one value").into()) };
                n_vertices = Some(v.parse().map_err(|_| perr(line, format!("bad vertex count `{v}`")))?);
            }
            (Block::None, "facet") => {
                let n = rest.len();
                if n < 3 || rest[n - 2] != "orient" {
                    return Err(perr(line, "expected `facet v0 … vn orient ±1`").into());
                }
                let o: i8 = match rest[n - 1] {
                    "1" | "+1" => 1,
                    "-1" => -1,
                    t => return Err(perr(line, format!("orientation must be ±1, found `{t}`")).into()),
                };
                let s = ints(line, &rest[..n - 2])?;
                note(&s);
                facets.push((s, o));
            }
            (Block::None, "skeleton") => {
                if rest.len() < 2 {
                    return Err(perr(line, "expected `skeleton k v0 … vj`").into());
                }
                let k: usize = rest[0].parse().map_err(|_| perr(line, format!("bad skeleton index `{}`", rest[0])))?;
                let s = ints(line, &rest[1..])?;
                note(&s);
                skeleta.push((k, s));
            }
            (Block::None, "boundary") => {
                let s = ints(line, rest)?;
                note(&s);
                boundary.push(s);
            }
            (Block::None, "collar") => block = Block::Collar(Collar { pairs: vec![], cells: vec![] }),
            (Block::None, "bicollar") => block = Block::Bicollar(Bicollar { triples: vec![], zfaces: vec![] }),
            (Block::Collar(c), "pair") => {
                let v = ints(line, rest)?;
                let [b, i] = v[..] else { return Err(perr(line, "expected `pair b i`").into()) };
                note(&v);
                c.pairs.push((b, i));
            }
            (Block::Collar(c), "cell") => {
                let mut s = ints(line, rest)?;
                note(&s);
                s.sort_unstable();
                c.cells.push(s);
            }
            (Block::Bicollar(b), "triple") => {
                let v = ints(line, rest)?;
                let [z, m, p] = v[..] else { return Err(perr(line, "expected `triple z m p`").into()) };
                note(&v);
                b.triples.push((z, m, p));
            }
            (Block::Bicollar(b), "zface") => {
                let mut s = ints(line, rest)?;
                note(&s);
                s.sort_unstable();
                b.zfaces.push(s);
            }
            (Block::Collar(_) | Block::Bicollar(_), "end") => {
                match std::mem::replace(&mut block, Block::None) {
                    Block::Collar(c) => collar = Some(c),
                    Block::Bicollar(b) => bicollar = Some(b),
                    Block::None => unreachable!(),
                }
            }
            (_, other) => return Err(perr(line, format!("unexpected keyword `{other}`")).into()),
        }
    }
    if !matches!(block, Block::None) {
        return Err(perr(text.lines().count(), "unterminated block (missing `end`)").into());
    }
    let dim = dim.ok_or_else(|| perr(1, "missing `dim` line"))?;
    let implied = max_vertex.map_or(0, |m| m as usize + 1);
    let n_vertices = match n_vertices {
        Some(n) if n < implied => return Err(perr(1, format!("vertex {} exceeds declared count {n}", implied - 1)).into()),
        Some(n) => n,
        None => implied,
    };
    if facets.is_empty() {
        return Err(perr(1, "no facets").into());
    }
    Ok(Space::from_declarations(n_vertices, dim, &facets, &skeleta, &boundary)?
        .with_collar(collar)
        .with_bicollar(bicollar))
}

fn join(s: &[u32]) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Canonical serialization; `parse_ssp(emit_ssp(x))` reproduces `x` and
/// re-emitting is byte-identical.
pub fn emit_ssp(x: &Space) -> String {
    let k = x.complex();
    let n = x.dim();
    let mut out = String::new();
    let _ = writeln!(out, "dim {n}");
    let _ = writeln!(out, "vertices {}", k.n_vertices());
    for (i, s) in k.simplices(n).iter().enumerate() {
        let _ = writeln!(out, "facet {} orient {}", join(s), x.orientation(i));
    }
    // lower-dimensional maximal simplices must be declared to survive a round trip
    for d in 0..n {
        for i in 0..k.count(d) {
            if k.cofaces(d, i).is_empty() && x.is_regular(d, i) {
                let _ = writeln!(out, "skeleton {n} {}", join(k.simplex(d, i)));
            }
        }
    }
    for (l, s) in x.minimal_skeleton_declarations() {
        let _ = writeln!(out, "skeleton {l} {}", join(&s));
    }
    for &b in x.boundary_facets() {
        let _ = writeln!(out, "boundary {}", join(k.simplex(n - 1, b)));
    }
    if let Some(c) = x.collar() {
        out.push_str("collar\n");
        let mut pairs = c.pairs.clone();
        pairs.sort_unstable();
        for (b, i) in pairs {
            let _ = writeln!(out, "pair {b} {i}");
        }
        let mut cells = c.cells.clone();
        cells.sort();
        for s in cells {
            let _ = writeln!(out, "cell {}", join(&s));
        }
        out.push_str("end\n");
    }
    if let Some(b) = x.bicollar() {
        out.push_str("bicollar\n");
        let mut triples = b.triples.clone();
        triples.sort_unstable();
        for (z, m, p) in triples {
            let _ = writeln!(out, "triple {z} {m} {p}");
        }
        let mut zf = b.zfaces.clone();
        zf.sort();
        for s in zf {
            let _ = writeln!(out, "zface {}", join(&s));
        }
        out.push_str("end\n");
    }
    out
}

/// A perversity as written in a file, before it is resolved against a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerversitySpec {
    Zero,
    Top,
    LowerMiddle,
    UpperMiddle,
    Constant(i64),
    /// `(stratum id, value)`; unlisted strata get 0.
    Values(Vec<(usize, i64)>),
}

impl PerversitySpec {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "zero" => PerversitySpec::Zero,
            "top" => PerversitySpec::Top,
            "lower-middle" => PerversitySpec::LowerMiddle,
            "upper-middle" => PerversitySpec::UpperMiddle,
            _ => return name.parse().ok().map(PerversitySpec::Constant),
        })
    }

    pub fn resolve(&self, x: &Space) -> Result<Perversity, ComplexError> {
        Ok(match self {
            PerversitySpec::Zero => Perversity::zero(x),
            PerversitySpec::Top => Perversity::top(x),
            PerversitySpec::LowerMiddle => Perversity::lower_middle(x),
            PerversitySpec::UpperMiddle => Perversity::upper_middle(x),
            PerversitySpec::Constant(c) => Perversity::constant(x, *c),
            PerversitySpec::Values(vals) => {
                let count = x.singular_strata().len();
                let mut v = vec![0; count];
                for &(id, val) in vals {
                    if id >= count {
                        let ids: Vec<String> = (0..count).map(|i| i.to_string()).collect();
                        return Err(ComplexError::Perversity(format!(
                            "unknown stratum {id}; valid stratum ids: [{}]",
                            ids.join(", ")
                        )));
                    }
                    v[id] = val;
                }
                Perversity::from_values(v)
            }
        })
    }
}

/// Parses a perversity file: either one named token or `stratum <id> <int>` lines.
pub fn parse_perversity(text: &str) -> Result<PerversitySpec, ParseError> {
    let mut vals = Vec::new();
    let mut named = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[..] {
            ["stratum", id, val] if named.is_none() => {
                let id = id.parse().map_err(|_| perr(line, format!("bad stratum id `{id}`")))?;
                let val = val.parse().map_err(|_| perr(line, format!("bad perversity value `{val}`")))?;
                vals.push((id, val));
            }
            [name] if vals.is_empty() && named.is_none() => {
                named = Some(PerversitySpec::from_name(name).ok_or_else(|| perr(line, format!("unknown perversity `{name}`")))?);
            }
            _ => return Err(perr(line, format!("unexpected line `{body}`"))),
        }
    }
    Ok(named.unwrap_or(PerversitySpec::Values(vals)))
}

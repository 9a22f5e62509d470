//! Example expressions for `make`: catalog names, numeric parameters,
//! constructors applied to sub-expressions, or `.ssp` file paths.
//!
//! ```text
//! expr  := name | name '(' arg {',' arg} ')' | path.ssp
//! arg   := expr | integer
//! ```

use std::collections::HashMap;

use crate::complex::construct::{cone, cone_off_boundary, product_with_manifold, suspension};
use crate::complex::glue::{glue, identity_matching};
use crate::complex::{catalog, parse_ssp, ComplexError, Space};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Path(String),
    Call(String, Vec<Expr>),
}

#[derive(Debug, thiserror::Error)]
pub enum ExprError {
    #[error("cannot parse example `{text}`: {message}")]
    Syntax { text: String, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("reading {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

pub const NAMES: &[&str] = &[
    "sphere(n) | s<n>",
    "delta-boundary(n)",
    "simplex(n)",
    "torus2 | t2",
    "torus3 | t3",
    "cp2 | cp2-9vertex",
    "solid-torus",
    "s1xs2",
    "disk",
    "annulus",
    "circle | circle(k)",
    "path(k)",
    "two-circles",
    "split-ball(n)",
    "cone(E)",
    "suspend(E)",
    "cone-off-boundary(E)",
    "glue(A, B)",
    "product(N, X)",
];

/// Top-level `make` words: `["glue", "cone(s3)", "cone(s3)"]` reads as
/// `glue(cone(s3), cone(s3))`.
pub fn from_words(words: &[String]) -> Result<Expr, ExprError> {
    match words {
        [] => Err(ExprError::Invalid("no example named".into())),
        [one] => parse(one),
        [head, rest @ ..] => parse(&format!("{head}({})", rest.join(","))),
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let e = parse_at(&chars, &mut pos).map_err(|message| ExprError::Syntax { text: text.into(), message })?;
    if pos != chars.len() {
        return Err(ExprError::Syntax { text: text.into(), message: format!("trailing input at column {}", pos + 1) });
    }
    Ok(e)
}

fn parse_at(s: &[char], pos: &mut usize) -> Result<Expr, String> {
    let start = *pos;
    while *pos < s.len() && !matches!(s[*pos], '(' | ')' | ',') {
        *pos += 1;
    }
    let word: String = s[start..*pos].iter().collect();
    if word.is_empty() {
        return Err(format!("expected a name at column {}", start + 1));
    }
    if word.ends_with(".ssp") {
        return Ok(Expr::Path(word));
    }
    if let Ok(n) = word.parse::<i64>() {
        return Ok(Expr::Int(n));
    }
    let mut args = Vec::new();
    if *pos < s.len() && s[*pos] == '(' {
        *pos += 1;
        loop {
            args.push(parse_at(s, pos)?);
            match s.get(*pos) {
                Some(',') => *pos += 1,
                Some(')') => {
                    *pos += 1;
                    break;
                }
                _ => return Err(format!("expected `,` or `)` at column {}", *pos + 1)),
            }
        }
    }
    Ok(Expr::Call(word, args))
}

fn int_arg(name: &str, args: &[Expr]) -> Result<usize, ExprError> {
    match args {
        [Expr::Int(n)] if *n >= 0 => Ok(*n as usize),
        _ => Err(ExprError::Invalid(format!("`{name}` takes one nonnegative integer"))),
    }
}

fn one_space(name: &str, args: &[Expr]) -> Result<Space, ExprError> {
    match args {
        [e] => build(e),
        _ => Err(ExprError::Invalid(format!("`{name}` takes one space"))),
    }
}

/// Evaluates an expression to a space. `glue(A, B)` identifies equal
/// boundary vertex labels and reverses `B` when that is what orients the
/// union; the result carries its bicollar.
pub fn build(e: &Expr) -> Result<Space, ExprError> {
    let (name, args) = match e {
        Expr::Int(n) => return Err(ExprError::Invalid(format!("`{n}` is a number, not a space"))),
        Expr::Path(p) => {
            let text = std::fs::read_to_string(p).map_err(|err| ExprError::Io { path: p.clone(), message: err.to_string() })?;
            return Ok(parse_ssp(&text)?);
        }
        Expr::Call(n, a) => (n.as_str(), a.as_slice()),
    };
    if let Some(k) = name.strip_prefix('s').and_then(|r| r.parse::<usize>().ok()) {
        if args.is_empty() {
            return Ok(catalog::sphere(k));
        }
    }
    let nullary = |s: Space| -> Result<Space, ExprError> {
        if args.is_empty() {
            Ok(s)
        } else {
            Err(ExprError::Invalid(format!("`{name}` takes no arguments")))
        }
    };
    match name {
        "sphere" => Ok(catalog::sphere(int_arg(name, args)?)),
        "delta-boundary" => {
            let n = int_arg(name, args)?;
            if n == 0 {
                return Err(ExprError::Invalid("delta-boundary needs n ≥ 1".into()));
            }
            Ok(catalog::delta_boundary(n))
        }
        "simplex" => Ok(catalog::simplex(int_arg(name, args)?)),
        "torus2" | "t2" => nullary(catalog::torus2()),
        "torus3" | "t3" => nullary(catalog::torus3()),
        "cp2" | "cp2-9vertex" => nullary(catalog::cp2()),
        "solid-torus" => nullary(catalog::solid_torus()),
        "s1xs2" => nullary(catalog::s1_x_s2()),
        "disk" => nullary(catalog::disk()),
        "annulus" => nullary(catalog::annulus()),
        "two-circles" => nullary(catalog::two_circles()),
        "circle" if args.is_empty() => Ok(catalog::circle(3)),
        "circle" => {
            let k = int_arg(name, args)?;
            if k < 3 {
                return Err(ExprError::Invalid("a circle needs at least 3 edges".into()));
            }
            Ok(catalog::circle(k))
        }
        "path" => {
            let k = int_arg(name, args)?;
            if k == 0 {
                return Err(ExprError::Invalid("a path needs at least one edge".into()));
            }
            Ok(catalog::path(k))
        }
        "split-ball" => {
            let n = int_arg(name, args)?;
            if n == 0 {
                return Err(ExprError::Invalid("split-ball needs n ≥ 1".into()));
            }
            Ok(catalog::split_ball(n))
        }
        "cone" => Ok(cone(&one_space(name, args)?)?),
        "suspend" | "suspension" => Ok(suspension(&one_space(name, args)?)?),
        "cone-off-boundary" => Ok(cone_off_boundary(&one_space(name, args)?)?),
        "product" => match args {
            [n, x] => Ok(product_with_manifold(&build(x)?, &build(n)?)?),
            _ => Err(ExprError::Invalid("`product` takes a manifold and a space".into())),
        },
        "glue" => match args {
            [a, b] => {
                let (a, b) = (build(a)?, build(b)?);
                let m: HashMap<u32, u32> = identity_matching(&b);
                let d = glue(&a, &b, &m).or_else(|_| glue(&a, &b.reversed(), &m))?;
                Ok(d.x)
            }
            _ => Err(ExprError::Invalid("`glue` takes two spaces".into())),
        },
        other => Err(ExprError::Invalid(format!("unknown example `{other}`; known: {}", NAMES.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_become_calls() {
        let w: Vec<String> = ["glue", "cone(s3)", "cone(s3)"].iter().map(|s| s.to_string()).collect();
        let e = from_words(&w).unwrap();
        let cone_s3 = Expr::Call("cone".into(), vec![Expr::Call("s3".into(), vec![])]);
        assert_eq!(e, Expr::Call("glue".into(), vec![cone_s3.clone(), cone_s3]));
    }

    #[test]
    fn syntax_errors() {
        assert!(parse("cone(").is_err());
        assert!(parse("cone(s2))").is_err());
        assert!(matches!(build(&parse("nonsense").unwrap()), Err(ExprError::Invalid(_))));
    }

    #[test]
    fn sphere_three_has_five_vertices() {
        let x = build(&from_words(&["sphere".into(), "3".into()]).unwrap()).unwrap();
        assert_eq!(x.complex().count(0), 5);
    }

    #[test]
    fn glued_cones_carry_a_bicollar() {
        let x = build(&parse("glue(cone(s2), cone(s2))").unwrap()).unwrap();
        assert!(x.bicollar().is_some());
        assert!(x.is_s_closed());
    }
}

use std::collections::{HashMap, HashSet};
use std::fmt;

use super::simplicial::Simplex;
use super::space::Space;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not a failure: the condition is unchecked or not applicable.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

/// Outcome of every structural check; failures name an offending simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}", c.name)?;
            } else {
                writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

pub const PURITY: &str = "purity";
pub const DENSITY: &str = "density";
pub const NON_BRANCHING: &str = "non-branching";
pub const ORIENTATION: &str = "orientation";
pub const COLLAR: &str = "collar";
pub const BICOLLAR: &str = "bicollar";
pub const LOCAL_CONIC: &str = "local-conic";

/// Runs every structural check. Never aborts early.
pub fn validate(x: &Space) -> ValidationReport {
    let checks = vec![
        check_purity(x),
        check_density(x),
        check_non_branching(x),
        check_orientation(x),
        check_collar(x),
        check_bicollar(x),
        Check {
            name: LOCAL_CONIC,
            status: Status::Info,
            detail: "distinguished neighborhoods are not verified".into(),
        },
    ];
    ValidationReport { checks }
}

fn pass(name: &'static str) -> Check {
    Check { name, status: Status::Pass, detail: String::new() }
}

fn fail(name: &'static str, detail: String) -> Check {
    Check { name, status: Status::Fail, detail }
}

fn maximal(x: &Space) -> impl Iterator<Item = (usize, usize)> + '_ {
    let k = x.complex();
    (0..=k.top_dim().unwrap_or(0)).flat_map(move |d| (0..k.count(d)).filter(move |&i| k.cofaces(d, i).is_empty()).map(move |i| (d, i)))
}

fn check_purity(x: &Space) -> Check {
    let n = x.dim();
    match maximal(x).find(|&(d, i)| d < n && x.is_regular(d, i)) {
        Some((d, i)) => fail(PURITY, format!("regular simplex {:?} is not a face of a top simplex", x.complex().simplex(d, i))),
        None => pass(PURITY),
    }
}

fn check_density(x: &Space) -> Check {
    match maximal(x).find(|&(d, i)| !x.is_regular(d, i)) {
        Some((d, i)) => fail(DENSITY, format!("singular simplex {:?} is not a face of a regular simplex", x.complex().simplex(d, i))),
        None => pass(DENSITY),
    }
}

fn check_non_branching(x: &Space) -> Check {
    let n = x.dim();
    if n == 0 {
        return pass(NON_BRANCHING);
    }
    let k = x.complex();
    let boundary: HashSet<usize> = x.boundary_facets().iter().copied().collect();
    for &b in &boundary {
        if !x.is_regular(n - 1, b) {
            return fail(NON_BRANCHING, format!("boundary simplex {:?} lies in a singular stratum", k.simplex(n - 1, b)));
        }
    }
    for i in 0..k.count(n - 1) {
        if !x.is_regular(n - 1, i) {
            continue;
        }
        let c = k.cofaces(n - 1, i).len();
        let want = if boundary.contains(&i) { 1 } else { 2 };
        if c != want {
            let s = k.simplex(n - 1, i);
            let detail = match (c, want) {
                (1, 2) => format!("face {s:?} has a single coface and is not declared boundary"),
                _ => format!("face {s:?} has {c} top cofaces, expected {want}"),
            };
            return fail(NON_BRANCHING, detail);
        }
    }
    pass(NON_BRANCHING)
}

fn check_orientation(x: &Space) -> Check {
    let n = x.dim();
    if n == 0 {
        return pass(ORIENTATION);
    }
    let k = x.complex();
    let d = x.boundary_of_fundamental();
    for (i, c) in d.iter() {
        let i = *i;
        if !x.is_regular(n - 1, i) || k.cofaces(n - 1, i).len() != 2 {
            continue;
        }
        if !c.is_zero() {
            return fail(ORIENTATION, format!("induced orientations do not cancel across {:?}", k.simplex(n - 1, i)));
        }
    }
    pass(ORIENTATION)
}

/// Top simplices of the staircase `β × [0,1]` for a sorted simplex `β`
/// with inner copies given by `inner`.
pub fn collar_cells(beta: &[u32], inner: &HashMap<u32, u32>) -> Option<Vec<Simplex>> {
    let mut out = Vec::with_capacity(beta.len());
    for j in 0..beta.len() {
        let mut s: Simplex = beta[..=j].to_vec();
        for &b in &beta[j..] {
            s.push(*inner.get(&b)?);
        }
        s.sort_unstable();
        out.push(s);
    }
    Some(out)
}

fn check_collar(x: &Space) -> Check {
    let n = x.dim();
    let Some(col) = x.collar() else {
        return if x.has_boundary() {
            Check { name: COLLAR, status: Status::Info, detail: "no collar declared".into() }
        } else {
            pass(COLLAR)
        };
    };
    let k = x.complex();
    let bverts: HashSet<u32> = (0..k.count(0)).filter(|&i| x.in_boundary(0, i)).map(|i| k.simplex(0, i)[0]).collect();
    let inner: HashMap<u32, u32> = col.pairs.iter().copied().collect();
    if inner.len() != col.pairs.len() || bverts != inner.keys().copied().collect() {
        return fail(COLLAR, "collar pairs must list every boundary vertex exactly once".into());
    }
    let images: HashSet<u32> = inner.values().copied().collect();
    if images.len() != inner.len() || images.iter().any(|v| bverts.contains(v)) {
        return fail(COLLAR, "inner collar vertices must be distinct interior vertices".into());
    }
    let mut expected = HashSet::new();
    for &b in x.boundary_facets() {
        let beta = k.simplex(n - 1, b);
        for s in collar_cells(beta, &inner).expect("every boundary vertex is paired") {
            if !k.contains(&s) {
                return fail(COLLAR, format!("product cell {s:?} over {beta:?} is missing"));
            }
            expected.insert(s);
        }
    }
    let declared: HashSet<Simplex> = col.cells.iter().cloned().collect();
    if let Some(s) = declared.symmetric_difference(&expected).next() {
        return fail(COLLAR, format!("declared cells differ from the product at {s:?}"));
    }
    let back: HashMap<u32, u32> = inner.iter().map(|(&b, &i)| (i, b)).collect();
    if let Some(s) = product_level_mismatch(x, &declared, |v| back.get(&v).copied().unwrap_or(v)) {
        return fail(COLLAR, format!("collar simplex {s:?} is not stratified as a product"));
    }
    pass(COLLAR)
}

fn check_bicollar(x: &Space) -> Check {
    let Some(bc) = x.bicollar() else { return pass(BICOLLAR) };
    let k = x.complex();
    let minus: HashMap<u32, u32> = bc.triples.iter().map(|&(z, m, _)| (z, m)).collect();
    let plus: HashMap<u32, u32> = bc.triples.iter().map(|&(z, _, p)| (z, p)).collect();
    let mut all = HashSet::new();
    for &(z, m, p) in &bc.triples {
        for v in [z, m, p] {
            if !all.insert(v) {
                return fail(BICOLLAR, format!("vertex {v} occurs twice in the bicollar triples"));
            }
        }
    }
    let mut cells = HashSet::new();
    for zf in &bc.zfaces {
        let Some(zi) = k.index_of(zf) else {
            return fail(BICOLLAR, format!("Z face {zf:?} is not in the complex"));
        };
        if zf.len() != x.dim() || !x.is_regular(zf.len() - 1, zi) {
            return fail(BICOLLAR, format!("Z face {zf:?} is not a regular codimension-one simplex"));
        }
        let lower = collar_cells(zf, &minus);
        let upper = collar_cells(zf, &plus);
        let (Some(lower), Some(upper)) = (lower, upper) else {
            return fail(BICOLLAR, format!("Z face {zf:?} has an unpaired vertex"));
        };
        for s in lower.into_iter().chain(upper) {
            if !k.contains(&s) {
                return fail(BICOLLAR, format!("product cell {s:?} over {zf:?} is missing"));
            }
            cells.insert(s);
        }
    }
    let back: HashMap<u32, u32> = bc.triples.iter().flat_map(|&(z, m, p)| [(m, z), (p, z)]).collect();
    if let Some(s) = product_level_mismatch(x, &cells, |v| back.get(&v).copied().unwrap_or(v)) {
        return fail(BICOLLAR, format!("bicollar simplex {s:?} is not stratified as a product"));
    }
    pass(BICOLLAR)
}

/// First face of the given cells whose level differs from the level of its
/// projection along the product direction.
fn product_level_mismatch(x: &Space, cells: &HashSet<Simplex>, project: impl Fn(u32) -> u32) -> Option<Simplex> {
    let k = x.complex();
    let mut seen = HashSet::new();
    for c in cells {
        for (d, i) in k.all_faces(c) {
            if !seen.insert((d, i)) {
                continue;
            }
            let s = k.simplex(d, i);
            let mut p: Simplex = s.iter().map(|&v| project(v)).collect();
            p.sort_unstable();
            p.dedup();
            let want = match k.index_of(&p) {
                Some(pi) => x.level(p.len() - 1, pi),
                None => return Some(s.to_vec()),
            };
            if x.level(d, i) != want {
                return Some(s.to_vec());
            }
        }
    }
    None
}

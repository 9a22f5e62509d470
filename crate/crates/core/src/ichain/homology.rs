use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::complex::{Perversity, Space};
use crate::qlinalg::{Echelon, LoggedEchelon, QMatrix, Rational, SparseVec};

use super::{
    boundary0, build_complex, build_qp_quotient, build_qp_subspace, build_relative, format_chain, IchainError,
    IntersectionComplex,
};

/// One degree of the homology of an [`IntersectionComplex`].
///
/// `reps` are relative cycles of the numerator, independent modulo
/// boundaries plus denominators. `classes` stores that span with zero tags,
/// then each representative tagged by its own unit vector, so reducing a
/// relative cycle yields its coordinates.
#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub degree: usize,
    pub reps: Vec<SparseVec>,
    classes: Echelon,
}

impl HomologyResult {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a relative cycle in the basis of `reps`, or `None` when
    /// `v` is not in cycles + denominators.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        let r = self.classes.reduce(v);
        r.remainder.is_zero().then(|| r.tag.to_dense(self.dim()))
    }

    /// Whether a relative cycle represents the zero class.
    pub fn is_null(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(Rational::is_zero))
    }

    pub fn report(&self, x: &Space) -> String {
        let mut out = format!("degree {} dim {}\n", self.degree, self.dim());
        for (k, r) in self.reps.iter().enumerate() {
            out.push_str(&format!("  rep {k}: {}\n", format_chain(x, self.degree, r)));
        }
        out
    }
}

fn combine(basis: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (j, c) in coeffs.iter() {
        out.axpy(c, &basis[*j]);
    }
    out
}

fn denominator_echelon(c: &IntersectionComplex, i: usize) -> Echelon {
    let mut e = Echelon::new();
    for v in c.denominator_vectors(i) {
        e.push(v);
    }
    e
}

/// Basis positions whose relative cycles are already null.
///
/// Boundaries from degree `i + 1` and degree-`i` denominators are written
/// in basis coordinates and reduced. A reduced vector with low `j` is a
/// relative cycle `b_j + Σ_{j' < j} a_{j'} b_{j'}` lying in the null span, so
/// `∂₀b_j` is in the span of earlier columns plus denominators and column
/// `j` would only contribute a null cycle. Skipping it leaves the pivots
/// seen by later columns unchanged. Only vectors supported on unit basis
/// vectors are used; the rest are simply not cleared.
fn cleared_columns(c: &IntersectionComplex, i: usize) -> HashSet<usize> {
    let coord: HashMap<usize, usize> = c
        .numerator
        .get(i)
        .iter()
        .enumerate()
        .filter_map(|(j, b)| match b.iter().collect::<Vec<_>>()[..] {
            [(s, one)] if one.is_one() => Some((*s, j)),
            _ => None,
        })
        .collect();
    let boundaries = if i < c.space().dim() { c.boundary_images(i + 1) } else { Vec::new() };
    let mut e = Echelon::new();
    for b in c.denominator_vectors(i).chain(&boundaries) {
        let mapped: Option<Vec<(usize, Rational)>> = b.iter().map(|(s, v)| coord.get(s).map(|&j| (j, v.clone()))).collect();
        if let Some(pairs) = mapped {
            e.push(&SparseVec::from_pairs(pairs));
        }
    }
    e.vectors().iter().filter_map(SparseVec::low).collect()
}

pub fn homology(c: &IntersectionComplex, i: usize) -> HomologyResult {
    let x = c.space();
    let basis = c.numerator.get(i);
    // relative cycles: ∂₀ξ ∈ D_{i−1}
    let mut rel = LoggedEchelon::new();
    if i > 0 {
        for v in c.denominator_vectors(i - 1) {
            let _ = rel.insert(v, None);
        }
    }
    let cleared = cleared_columns(c, i);
    let mut cycles = Vec::new();
    for (j, b) in basis.iter().enumerate() {
        if cleared.contains(&j) {
            continue;
        }
        let db = boundary0(x, i, b);
        if db.is_zero() {
            cycles.push(b.clone());
        } else if let Err(r) = rel.insert(&db, Some(j)) {
            cycles.push(combine(basis, &r));
        }
    }
    let mut classes = denominator_echelon(c, i);
    for b in c.boundary_images(i + 1) {
        classes.push(&b);
    }
    let mut reps = Vec::new();
    for z in cycles {
        if classes.insert(&z, SparseVec::unit(reps.len())).is_ok() {
            reps.push(z);
        }
    }
    HomologyResult { degree: i, reps, classes }
}

/// Dimensions of every homology group, from ranks alone.
///
/// Agrees with [`homology`] degree by degree but tracks no combinations,
/// which is far cheaper on large complexes. Relies on `D ⊆ C` and
/// `∂₀D ⊆ D`, so boundaries and denominators sit inside the relative
/// cycles and `dim H_i = dim C_i − rank(D_{i−1} + ∂₀C_i) + dim D_{i−1} − rank(D_i + ∂₀C_{i+1})`.
pub fn homology_dims(c: &IntersectionComplex) -> Vec<usize> {
    let n = c.space().dim();
    let den: Vec<usize> = (0..=n).map(|i| denominator_echelon(c, i).rank()).collect();
    // hit[i] = rank(D_{i−1} + ∂₀C_i); hit[n + 1] = dim D_n
    let hit: Vec<usize> = (0..=n + 1)
        .map(|i| {
            if i == 0 {
                return 0;
            }
            let mut e = denominator_echelon(c, i - 1);
            if i <= n {
                for b in c.boundary_images(i) {
                    e.push(&b);
                }
            }
            e.rank()
        })
        .collect();
    (0..=n)
        .map(|i| {
            let prev = if i == 0 { 0 } else { den[i - 1] };
            c.numerator.dim(i) + prev - hit[i] - hit[i + 1]
        })
        .collect()
}

/// Linear map between homology groups in the chosen representative bases;
/// column `j` holds the target coordinates of the image of `reps[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyMap {
    pub label: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: QMatrix,
}

impl HomologyMap {
    pub fn zero(label: &str, source_dim: usize, target_dim: usize) -> Self {
        HomologyMap {
            label: label.to_string(),
            source_dim,
            target_dim,
            matrix: QMatrix::zeros(target_dim, source_dim),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Vertex-tuple transport of a chain between spaces sharing vertex labels.
pub fn translate_chain(from: &Space, to: &Space, d: usize, v: &SparseVec) -> Option<SparseVec> {
    let mut pairs = Vec::with_capacity(v.nnz());
    for (i, c) in v.iter() {
        pairs.push((to.complex().index_of(from.complex().simplex(d, *i))?, c.clone()));
    }
    Some(SparseVec::from_pairs(pairs))
}

/// Coordinates of chain-level images, each verified to be a relative cycle
/// of the target complex.
fn columns(
    images: Vec<(usize, SparseVec)>,
    target_cx: &IntersectionComplex,
    target: &HomologyResult,
) -> Result<Vec<Vec<Rational>>, IchainError> {
    let i = target.degree;
    let den = if i > 0 { Some(denominator_echelon(target_cx, i - 1)) } else { None };
    let mut cols = Vec::with_capacity(images.len());
    for (k, w) in images {
        if !target_cx.contains_chain(i, &w) {
            return Err(IchainError::Incompatible(format!(
                "image of representative {k} is not a chain of {}",
                target_cx.label
            )));
        }
        if let Some(den) = &den {
            if !den.contains(&boundary0(target_cx.space(), i, &w)) {
                return Err(IchainError::Incompatible(format!(
                    "image of representative {k} is not a cycle of {}",
                    target_cx.label
                )));
            }
        }
        cols.push(target.coordinates(&w).ok_or_else(|| {
            IchainError::Incompatible(format!("image of representative {k} has no class in {}", target_cx.label))
        })?);
    }
    Ok(cols)
}

/// Map induced by a chain map `f` (inclusion, projection, subdivision,
/// transport), with every image checked against the target complex.
pub fn induced_map(
    label: &str,
    source: &HomologyResult,
    target_cx: &IntersectionComplex,
    target: &HomologyResult,
    f: impl Fn(&SparseVec) -> Option<SparseVec>,
) -> Result<HomologyMap, IchainError> {
    if source.degree != target.degree {
        return Err(IchainError::Incompatible(format!(
            "degrees {} and {} differ",
            source.degree, target.degree
        )));
    }
    let mut images = Vec::with_capacity(source.dim());
    for (k, r) in source.reps.iter().enumerate() {
        let w = f(r).ok_or_else(|| IchainError::Incompatible(format!("representative {k} has no image")))?;
        images.push((k, w));
    }
    let cols = columns(images, target_cx, target)?;
    Ok(HomologyMap {
        label: label.to_string(),
        source_dim: source.dim(),
        target_dim: target.dim(),
        matrix: QMatrix::from_columns(&cols, target.dim()),
    })
}

/// Connecting map: `∂₀x` of each representative is split along the
/// denominator parts of `source_cx` and the component in part `part` is
/// taken. Ambiguity of the split lies in the target's denominators.
pub fn connecting_map(
    label: &str,
    source_cx: &IntersectionComplex,
    source: &HomologyResult,
    part: usize,
    target_cx: &IntersectionComplex,
    target: &HomologyResult,
) -> Result<HomologyMap, IchainError> {
    let i = source.degree;
    if i == 0 || target.degree + 1 != i {
        return Err(IchainError::Incompatible(format!(
            "connecting map from degree {i} to degree {}",
            target.degree
        )));
    }
    if part >= source_cx.denominators.len() {
        return Err(IchainError::Incompatible(format!("{} has no denominator part {part}", source_cx.label)));
    }
    let mut split = Echelon::new();
    for (k, d) in source_cx.denominators.iter().enumerate() {
        for (j, v) in d.get(i - 1).iter().enumerate() {
            let tag = if k == part { SparseVec::unit(j) } else { SparseVec::new() };
            let _ = split.insert(v, tag);
        }
    }
    let chosen = source_cx.denominators[part].get(i - 1);
    let mut images = Vec::with_capacity(source.dim());
    for (k, r) in source.reps.iter().enumerate() {
        let red = split.reduce(&boundary0(source_cx.space(), i, r));
        if !red.remainder.is_zero() {
            return Err(IchainError::Incompatible(format!(
                "boundary of representative {k} leaves the denominators of {}",
                source_cx.label
            )));
        }
        images.push((k, combine(chosen, &red.tag)));
    }
    let cols = columns(images, target_cx, target)?;
    Ok(HomologyMap {
        label: label.to_string(),
        source_dim: source.dim(),
        target_dim: target.dim(),
        matrix: QMatrix::from_columns(&cols, target.dim()),
    })
}

/// Image of `I^{p̄}H → I^{q̄}H` (or any identity-on-chains map): the source
/// representatives whose classes are independent in the target, which are
/// therefore chains of the source complex.
#[derive(Clone, Debug)]
pub struct ImageGroup {
    pub degree: usize,
    pub reps: Vec<SparseVec>,
    /// Target coordinates of each representative.
    pub coordinates: Vec<Vec<Rational>>,
    pub target_dim: usize,
}

impl ImageGroup {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

pub fn image_group(
    source: &HomologyResult,
    target_cx: &IntersectionComplex,
    target: &HomologyResult,
) -> Result<ImageGroup, IchainError> {
    let m = induced_map("image", source, target_cx, target, |v| Some(v.clone()))?;
    let mut e = Echelon::new();
    let (mut reps, mut coordinates) = (Vec::new(), Vec::new());
    for (j, r) in source.reps.iter().enumerate() {
        let col = m.matrix.column(j);
        if e.push(&SparseVec::from_dense(&col)) {
            reps.push(r.clone());
            coordinates.push(col);
        }
    }
    Ok(ImageGroup { degree: source.degree, reps, coordinates, target_dim: target.dim() })
}

/// Exactness at one interior group of a sequence of maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesSpot {
    pub position: usize,
    pub label: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
}

impl LesSpot {
    pub fn is_exact(&self) -> bool {
        self.composite_zero && self.rank_in + self.rank_out == self.dim
    }
}

#[derive(Clone, Debug, Default)]
pub struct LesReport {
    pub spots: Vec<LesSpot>,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.spots.iter().all(LesSpot::is_exact)
    }

    pub fn first_failure(&self) -> Option<&LesSpot> {
        self.spots.iter().find(|s| !s.is_exact())
    }
}

impl fmt::Display for LesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.spots {
            writeln!(
                f,
                "{} {}: dim {} rank in {} rank out {}{}",
                if s.is_exact() { "exact" } else { "FAIL" },
                s.label,
                s.dim,
                s.rank_in,
                s.rank_out,
                if s.composite_zero { "" } else { " (composite nonzero)" }
            )?;
        }
        Ok(())
    }
}

/// Checks `im f = ker g` at every group between consecutive maps.
pub fn les_check(maps: &[HomologyMap]) -> Result<LesReport, IchainError> {
    let mut spots = Vec::new();
    for (j, w) in maps.windows(2).enumerate() {
        let (f, g) = (&w[0], &w[1]);
        if f.target_dim != g.source_dim {
            return Err(IchainError::Incompatible(format!(
                "{} lands in dimension {} but {} starts from {}",
                f.label, f.target_dim, g.label, g.source_dim
            )));
        }
        spots.push(LesSpot {
            position: j + 1,
            label: format!("{} -> {}", f.label, g.label),
            dim: g.source_dim,
            rank_in: f.rank(),
            rank_out: g.rank(),
            composite_zero: g.matrix.mul_mat(&f.matrix).is_zero(),
        });
    }
    Ok(LesReport { spots })
}

/// `… → I^{p̄}H_i → I^{q̄}H_i → I^{q̄/p̄}H_i →d I^{p̄}H_{i−1} → …`, absolute or
/// relative to `Y`, padded by zero groups at both ends.
pub fn les_qp(
    x: &Space,
    y: Option<&[Vec<bool>]>,
    p: &Perversity,
    q: &Perversity,
) -> Result<Vec<HomologyMap>, IchainError> {
    let (a, b) = match y {
        Some(y) => (build_relative(x, y, p)?, build_relative(x, y, q)?),
        None => (build_complex(x, p)?, build_complex(x, q)?),
    };
    let c = build_qp_quotient(x, y, p, q)?;
    let n = x.dim();
    let ha: Vec<HomologyResult> = (0..=n).map(|i| homology(&a, i)).collect();
    let hb: Vec<HomologyResult> = (0..=n).map(|i| homology(&b, i)).collect();
    let hc: Vec<HomologyResult> = (0..=n).map(|i| homology(&c, i)).collect();
    let id = |v: &SparseVec| Some(v.clone());
    let mut maps = vec![HomologyMap::zero("0", 0, ha[n].dim())];
    for i in (0..=n).rev() {
        maps.push(induced_map(&format!("i_{i}"), &ha[i], &b, &hb[i], id)?);
        maps.push(induced_map(&format!("pi_{i}"), &hb[i], &c, &hc[i], id)?);
        if i > 0 {
            maps.push(connecting_map(&format!("d_{i}"), &c, &hc[i], 0, &a, &ha[i - 1])?);
        } else {
            maps.push(HomologyMap::zero("d_0", hc[0].dim(), 0));
        }
    }
    Ok(maps)
}

/// `… → I^{q̄/p̄}H_i(Y) → I^{q̄/p̄}H_i(X) → I^{q̄/p̄}H_i(X,Y) →δ I^{q̄/p̄}H_{i−1}(Y) → …`.
pub fn les_relative_qp(
    x: &Space,
    y: &[Vec<bool>],
    p: &Perversity,
    q: &Perversity,
) -> Result<Vec<HomologyMap>, IchainError> {
    let a = build_qp_subspace(x, y, p, q)?;
    let b = build_qp_quotient(x, None, p, q)?;
    let c = build_qp_quotient(x, Some(y), p, q)?;
    let n = x.dim();
    let ha: Vec<HomologyResult> = (0..=n).map(|i| homology(&a, i)).collect();
    let hb: Vec<HomologyResult> = (0..=n).map(|i| homology(&b, i)).collect();
    let hc: Vec<HomologyResult> = (0..=n).map(|i| homology(&c, i)).collect();
    let id = |v: &SparseVec| Some(v.clone());
    let mut maps = vec![HomologyMap::zero("0", 0, ha[n].dim())];
    for i in (0..=n).rev() {
        maps.push(induced_map(&format!("i_{i}"), &ha[i], &b, &hb[i], id)?);
        maps.push(induced_map(&format!("pi_{i}"), &hb[i], &c, &hc[i], id)?);
        if i > 0 {
            maps.push(connecting_map(&format!("delta_{i}"), &c, &hc[i], 1, &a, &ha[i - 1])?);
        } else {
            maps.push(HomologyMap::zero("delta_0", hc[0].dim(), 0));
        }
    }
    Ok(maps)
}

//! Intersection numbers and the duality pairings, computed exactly.
//!
//! Left chains stay on the triangulation `T`; right chains are moved inside
//! the cell complex of the barycentric subdivision until, near every left
//! simplex, they are combinations of dual blocks (see [`rebase`]). Each
//! crossing is then the barycenter of a left simplex `μ`, contributing
//! `ξ_μ η_μ` because `μ ⋔ D(μ) = +1` with the orientation conventions of
//! [`cells`]: frames are compared as (left frame, right frame) against the
//! ambient orientation.

pub mod cells;
pub mod rebase;

use thiserror::Error;

use crate::complex::{barycentric_subdivide, closure_mask, ComplexError, Perversity, Space};
use crate::ichain::{
    boundary0, build_complex, build_qp_quotient, build_relative, homology, image_group, IchainError,
};
use crate::qlinalg::{io::format_matrix, BilinearForm, LinalgError, QMatrix, Rational, SparseVec};

pub use cells::{Cell, CellComplex};
pub use rebase::{rebase, BlockCoefficients, Constraint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("perversity contract violated: {0}")]
    Contract(String),
    #[error("general position not reached: {0}")]
    GeneralPosition(String),
    #[error("pairing invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Ichain(#[from] IchainError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A left chain on `T` against a block chain dual to simplices of the same
/// degree; supports meet only at barycenters of regular simplices.
#[derive(Clone, Debug)]
pub struct GeneralPositionPair {
    pub degree: usize,
    pub left: SparseVec,
    pub blocks: SparseVec,
}

pub fn intersection_number(x: &Space, pair: &GeneralPositionPair) -> Result<Rational, PairingError> {
    let d = pair.degree;
    for mu in pair.left.indices().chain(pair.blocks.indices()) {
        if mu >= x.complex().count(d) || !x.is_regular(d, mu) {
            return Err(PairingError::GeneralPosition(format!(
                "crossing at {d}-simplex {mu} is not in the regular part"
            )));
        }
    }
    Ok(pair.left.dot(&pair.blocks))
}

/// Gram matrix of a pairing in declared bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub matrix: QMatrix,
    /// Space, perversities, degrees and basis origin.
    pub provenance: String,
    /// Barycentric subdivisions applied before general position was reached.
    pub depth: usize,
}

impl PairingMatrix {
    pub fn form(&self) -> Result<BilinearForm, PairingError> {
        Ok(BilinearForm::new(self.matrix.clone())?)
    }

    pub fn signature(&self) -> Result<i64, PairingError> {
        let f = self.form()?;
        if !f.is_symmetric() {
            return Err(PairingError::Invariant(format!("{} is not symmetric", self.provenance)));
        }
        Ok(f.signature()?)
    }

    /// Matrix text with a provenance header.
    pub fn emit(&self) -> String {
        format!("# {}\n# depth {}\n{}", self.provenance, self.depth, format_matrix(&self.matrix))
    }
}

/// `Σ_a Σ_b G[a][b]` with `G[a][b] = left_a ⋔ right_b`, every right chain
/// pushed in `I^{q̄}` (no slack): the absolute or relative middle pairing.
pub fn intersection_gram(
    x: &Space,
    degree: usize,
    left: &[SparseVec],
    right: &[SparseVec],
    q: &Perversity,
) -> Result<QMatrix, PairingError> {
    let n = x.dim();
    let j = n
        .checked_sub(degree)
        .ok_or_else(|| PairingError::Contract(format!("degree {degree} exceeds dimension {n}")))?;
    let refs: Vec<&SparseVec> = left.iter().collect();
    let mut m = QMatrix::zeros(left.len(), right.len());
    for (b, y) in right.iter().enumerate() {
        let c = [Constraint { left: refs.clone(), left_degree: degree, on_boundary: false }];
        let eta = rebase(x, y, j, q, None, &c)?;
        for (a, l) in left.iter().enumerate() {
            m[(a, b)] = intersection_number(
                x,
                &GeneralPositionPair { degree, left: l.clone(), blocks: eta[0].clone() },
            )?;
        }
    }
    Ok(m)
}

/// `Φ̃(x, y) = x ⋔ ∂y + (−1)^{m−|x|} (∂x) ⋔ y` on an s-closed `m`-dimensional
/// space; `left` are `I^{q̄/p̄}` cycles of degree `i`, `right` of degree
/// `m + 1 − i`. Right chains may move by `∂₀w + P` with `w` `q̄`- and `P`
/// `p̄`-allowable, which preserves their classes.
pub fn phi_gram(
    z: &Space,
    p: &Perversity,
    q: &Perversity,
    i: usize,
    left: &[SparseVec],
    right: &[SparseVec],
) -> Result<QMatrix, PairingError> {
    let m = z.dim();
    if i == 0 || i > m {
        return Err(PairingError::Contract(format!("degree {i} out of range for dimension {m}")));
    }
    let j = m + 1 - i;
    let dl: Vec<SparseVec> = left.iter().map(|x| boundary0(z, i, x)).collect();
    let sign = if (m - i) % 2 == 0 { Rational::one() } else { -Rational::one() };
    let mut g = QMatrix::zeros(left.len(), right.len());
    for (b, y) in right.iter().enumerate() {
        let c = [
            Constraint { left: left.iter().collect(), left_degree: i, on_boundary: true },
            Constraint { left: dl.iter().collect(), left_degree: i - 1, on_boundary: false },
        ];
        let eta = rebase(z, y, j, q, Some(p), &c)?;
        for a in 0..left.len() {
            let t1 = intersection_number(z, &GeneralPositionPair { degree: i, left: left[a].clone(), blocks: eta[0].clone() })?;
            let t2 = intersection_number(z, &GeneralPositionPair { degree: i - 1, left: dl[a].clone(), blocks: eta[1].clone() })?;
            g[(a, b)] = &t1 + &(&sign * &t2);
        }
    }
    Ok(g)
}

fn check_middle(x: &Space, p: &Perversity, q: &Perversity) -> Result<usize, PairingError> {
    p.check_for(x)?;
    q.check_for(x)?;
    if x.dim() % 4 != 0 {
        return Err(PairingError::Contract(format!("dimension {} is not a multiple of 4", x.dim())));
    }
    if !p.le(q) {
        return Err(PairingError::Contract(format!("{:?} is not bounded by {:?}", p.values(), q.values())));
    }
    if !p.is_dual_to(q, x) {
        return Err(PairingError::Contract(format!("{:?} + {:?} is not the top perversity", p.values(), q.values())));
    }
    Ok(x.dim() / 2)
}

fn verify_middle(m: &QMatrix, what: &str) -> Result<(), PairingError> {
    if m.transpose() != *m {
        return Err(PairingError::Invariant(format!("{what} Gram matrix is not symmetric")));
    }
    if m.rank() != m.rows() {
        return Err(PairingError::Invariant(format!("{what} Gram matrix is singular")));
    }
    Ok(())
}

/// Runs `f` on `x`, then on successive barycentric subdivisions while
/// general position fails, up to `max_depth` subdivisions.
pub fn with_subdivision<T>(
    x: &Space,
    max_depth: usize,
    mut f: impl FnMut(&Space, usize) -> Result<T, PairingError>,
) -> Result<T, PairingError> {
    let mut current = x.clone();
    for depth in 0..=max_depth {
        match f(&current, depth) {
            Err(PairingError::GeneralPosition(_)) if depth < max_depth => {
                current = barycentric_subdivide(&current)?.space;
            }
            other => return other,
        }
    }
    unreachable!("loop returns at max_depth")
}

/// `⋔̄` on `I^{p̄→q̄}H_{2k}(X)` of an s-closed oriented `4k`-space, in the
/// basis of `p̄`-allowable image representatives; verified symmetric and
/// nonsingular.
pub fn middle_pairing(x: &Space, p: &Perversity, q: &Perversity, max_depth: usize) -> Result<PairingMatrix, PairingError> {
    check_middle(x, p, q)?;
    if !x.is_s_closed() {
        return Err(PairingError::Contract("middle pairing needs an s-closed space".into()));
    }
    with_subdivision(x, max_depth, |xs, depth| {
        let p = if depth == 0 { p.clone() } else { p.transfer(x, xs)? };
        let q = if depth == 0 { q.clone() } else { q.transfer(x, xs)? };
        let k = xs.dim() / 2;
        let cp = build_complex(xs, &p)?;
        let cq = build_complex(xs, &q)?;
        let img = image_group(&homology(&cp, k), &cq, &homology(&cq, k))?;
        let m = intersection_gram(xs, k, &img.reps, &img.reps, &q)?;
        verify_middle(&m, "middle pairing")?;
        Ok(PairingMatrix {
            matrix: m,
            provenance: format!("middle pairing degree {k} p={:?} q={:?} basis I^p->I^q image reps", p.values(), q.values()),
            depth,
        })
    })
}

/// `⋔̄` on `I^{p̄↠q̄}H_{2k}(Y, ∂Y)` for a compact oriented `4k`-space with
/// boundary. `G[a][b] = j(x_b) ⋔ x_a`, the relative cycle kept on `T` and
/// the absolute one pushed off the boundary; equal to `x_a ⋔ j(x_b)` by
/// graded symmetry in middle degree.
pub fn relative_middle_pairing(
    y: &Space,
    p: &Perversity,
    q: &Perversity,
    max_depth: usize,
) -> Result<PairingMatrix, PairingError> {
    check_middle(y, p, q)?;
    with_subdivision(y, max_depth, |ys, depth| {
        let p = if depth == 0 { p.clone() } else { p.transfer(y, ys)? };
        let q = if depth == 0 { q.clone() } else { q.transfer(y, ys)? };
        let k = ys.dim() / 2;
        let cp = build_complex(ys, &p)?;
        let rel = build_relative(ys, ys.boundary_mask(), &q)?;
        let img = image_group(&homology(&cp, k), &rel, &homology(&rel, k))?;
        let m = intersection_gram(ys, k, &img.reps, &img.reps, &q)?.transpose();
        verify_middle(&m, "relative middle pairing")?;
        Ok(PairingMatrix {
            matrix: m,
            provenance: format!(
                "relative middle pairing degree {k} p={:?} q={:?} basis I^p->I^q(Y,dY) image reps",
                p.values(),
                q.values()
            ),
            depth,
        })
    })
}

/// `Φ` between `I^{q̄/p̄}H_i(Z)` and `I^{q̄/p̄}H_{m+1−i}(Z)` for s-closed `Z`;
/// in middle degree of a `(4n−1)`-space it is verified skew and nonsingular.
pub fn phi_pairing(z: &Space, p: &Perversity, q: &Perversity, i: usize, max_depth: usize) -> Result<PairingMatrix, PairingError> {
    p.check_for(z)?;
    q.check_for(z)?;
    if !z.is_s_closed() {
        return Err(PairingError::Contract("the relative-perversity pairing is implemented for s-closed spaces".into()));
    }
    if !p.le(q) || !p.is_dual_to(q, z) {
        return Err(PairingError::Contract(format!("need p ≤ q and p + q = t, got {:?}, {:?}", p.values(), q.values())));
    }
    let m = z.dim();
    if i == 0 || i > m {
        return Err(PairingError::Contract(format!("degree {i} out of range for dimension {m}")));
    }
    with_subdivision(z, max_depth, |zs, depth| {
        let p = if depth == 0 { p.clone() } else { p.transfer(z, zs)? };
        let q = if depth == 0 { q.clone() } else { q.transfer(z, zs)? };
        let c = build_qp_quotient(zs, None, &p, &q)?;
        let hl = homology(&c, i);
        let hr = homology(&c, m + 1 - i);
        let g = phi_gram(zs, &p, &q, i, &hl.reps, &hr.reps)?;
        if 2 * i == m + 1 {
            if g.transpose() != g.neg() {
                return Err(PairingError::Invariant("middle-degree Φ is not skew".into()));
            }
        }
        if g.rank() != g.rows() || g.rank() != g.cols() {
            return Err(PairingError::Invariant("Φ is singular".into()));
        }
        Ok(PairingMatrix {
            matrix: g,
            provenance: format!("phi degrees ({i}, {}) p={:?} q={:?} basis I^q/p homology reps", m + 1 - i, p.values(), q.values()),
            depth,
        })
    })
}

/// The coning map for `X = cone_off_boundary(M)`: a chain `ξ` on `∂M`
/// (indexed by simplices of `M`) goes to `Σ ξ_σ [a, σ]`, apex first, so
/// `∂(cξ) = ξ − c(∂ξ)` on `X`'s labels.
pub fn coning_map(x: &Space, m: &Space, d: usize, xi: &SparseVec) -> Result<SparseVec, PairingError> {
    let comps = crate::complex::construct::boundary_components(m);
    let c = comps.len() as u32;
    if c == 0 || x.complex().n_vertices() != m.complex().n_vertices() + c as usize {
        return Err(PairingError::Contract("space is not the cone-off of the given manifold".into()));
    }
    let km = m.complex();
    let closures: Vec<Vec<Vec<bool>>> =
        comps.iter().map(|comp| closure_mask(km, m.dim() - 1, comp)).collect();
    let mut pairs = Vec::with_capacity(xi.nnz());
    for (s, a) in xi.iter() {
        if !m.in_boundary(d, *s) {
            return Err(PairingError::Contract(format!("{:?} is not on the boundary", km.simplex(d, *s))));
        }
        let apex = closures.iter().position(|cl| cl[d][*s]).expect("boundary simplex in some component") as u32;
        let mut t = vec![apex];
        t.extend(km.simplex(d, *s).iter().map(|v| v + c));
        let idx = x.complex().index_of(&t).ok_or_else(|| PairingError::Contract(format!("cone simplex {t:?} missing")))?;
        pairs.push((idx, a.clone()));
    }
    Ok(SparseVec::from_pairs(pairs))
}

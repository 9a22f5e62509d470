//! Pushing a right-hand chain into general position with left-hand chains.
//!
//! A right chain `y` on `T` is replaced by `y′ = s(y) − ∂₀w − P` in the cell
//! complex, where `w` is a `q̄`-allowable cell chain and `P` (only for
//! quotient classes) is `p̄`-allowable. The solve forces `y′` (or `∂₀y′`) to
//! agree with a combination of dual blocks on every cell `c(μ, τ)` whose `μ`
//! lies in the closure of a left chain's support. Cells with `μ` outside
//! that closure never meet the left chain, so all intersections are the
//! transverse block crossings at barycenters.

use crate::complex::{closure_mask, Perversity, Space};
use crate::qlinalg::{Echelon, Rational, SparseVec};

use super::cells::CellComplex;
use super::PairingError;

/// A family of left chains of one degree, crossed either by `y′` or by `∂₀y′`.
pub struct Constraint<'c> {
    pub left: Vec<&'c SparseVec>,
    pub left_degree: usize,
    pub on_boundary: bool,
}

/// Block coefficients `η_μ` per constraint, indexed by the left-degree
/// simplices of `T`.
pub type BlockCoefficients = Vec<SparseVec>;

/// Tries the closed star of the left supports first, then the whole space.
pub fn rebase(
    x: &Space,
    y: &SparseVec,
    j: usize,
    q: &Perversity,
    slack: Option<&Perversity>,
    constraints: &[Constraint],
) -> Result<BlockCoefficients, PairingError> {
    let k = x.complex();
    let n = x.dim();
    let closures: Vec<Vec<Vec<bool>>> = constraints
        .iter()
        .map(|c| {
            let mut gens: Vec<usize> = c.left.iter().flat_map(|v| v.indices()).collect();
            gens.sort_unstable();
            gens.dedup();
            closure_mask(k, c.left_degree, &gens)
        })
        .collect();
    let mut near = vec![false; k.n_vertices()];
    for m in &closures {
        if let Some(row) = m.first() {
            for (i, &b) in row.iter().enumerate() {
                if b {
                    near[k.simplex(0, i)[0] as usize] = true;
                }
            }
        }
    }
    let tops: Vec<usize> = (0..k.count(n)).filter(|&t| k.simplex(n, t).iter().any(|&v| near[v as usize])).collect();
    let local = closure_mask(k, n, &tops);
    if let Some(found) = solve(x, y, j, q, slack, constraints, &closures, Some(local)) {
        return Ok(found);
    }
    solve(x, y, j, q, slack, constraints, &closures, None).ok_or_else(|| {
        PairingError::GeneralPosition(format!(
            "no {j}-chain homologous to the right representative is transverse to the left supports"
        ))
    })
}

#[allow(clippy::too_many_arguments)]
fn solve(
    x: &Space,
    y: &SparseVec,
    j: usize,
    q: &Perversity,
    slack: Option<&Perversity>,
    constraints: &[Constraint],
    closures: &[Vec<Vec<bool>>],
    region: Option<Vec<Vec<bool>>>,
) -> Option<BlockCoefficients> {
    let n = x.dim();
    let mut dims = vec![j, j + 1];
    if j > 0 {
        dims.push(j - 1);
    }
    dims.retain(|&r| r <= n);
    let mc = CellComplex::new(x, &dims, region);
    let stride = (0..=n).map(|r| mc.count(r)).max().unwrap_or(0) + 1;
    let target_dim = |c: &Constraint| if c.on_boundary { j.checked_sub(1) } else { Some(j) };
    // restriction of a cell chain of dimension r to the constrained cells
    let project = |r: usize, v: &SparseVec| -> SparseVec {
        let mut pairs = Vec::new();
        for (ci, c) in constraints.iter().enumerate() {
            if target_dim(c) != Some(r) {
                continue;
            }
            for (i, a) in v.iter() {
                let mu = mc.cell(r, *i).mu;
                if closures[ci][mu.0][mu.1] {
                    pairs.push((ci * stride + i, a.clone()));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    };
    let mut e = Echelon::new();
    if j < n {
        for w in mc.chain_basis(j + 1, q) {
            let col = project(j, &mc.boundary(j + 1, &w));
            if !col.is_zero() {
                e.push(&col);
            }
        }
    }
    if let Some(p) = slack {
        for pv in mc.chain_basis(j, p) {
            let mut col = project(j, &pv);
            if j > 0 {
                col = col.add(&project(j - 1, &mc.boundary(j, &pv)));
            }
            if !col.is_zero() {
                e.push(&col);
            }
        }
    }
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for (ci, c) in constraints.iter().enumerate() {
        let Some(r) = target_dim(c) else { continue };
        let d = c.left_degree;
        if d + r != n {
            return None;
        }
        for mu in 0..x.complex().count(d) {
            if !closures[ci][d][mu] || !x.is_regular(d, mu) || x.in_boundary(d, mu) {
                continue;
            }
            let block = mc.block((d, mu))?;
            let v: SparseVec = block.into_iter().map(|(i, s)| (i, Rational::from_int(s as i64))).collect();
            let _ = e.insert(&project(r, &v), SparseVec::unit(unknowns.len()));
            unknowns.push((ci, mu));
        }
    }
    let mut pairs = Vec::new();
    for (i, a) in y.iter() {
        for v in x.complex().simplex(j, *i) {
            let vi = x.complex().index_of(&[*v]).expect("vertex");
            if let Some(c) = mc.find((0, vi), (j, *i)) {
                pairs.push((c, a.clone()));
            }
        }
    }
    let sy = SparseVec::from_pairs(pairs);
    let mut target = project(j, &sy);
    if j > 0 {
        target = target.add(&project(j - 1, &mc.boundary(j, &sy)));
    }
    let red = e.reduce(&target);
    if !red.remainder.is_zero() {
        return None;
    }
    let mut out: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); constraints.len()];
    for (u, a) in red.tag.iter() {
        let (ci, mu) = unknowns[*u];
        out[ci].push((mu, a.clone()));
    }
    Some(out.into_iter().map(SparseVec::from_pairs).collect())
}

//! Block cells of the first barycentric subdivision.
//!
//! For simplices `μ ≤ τ` of `T` the cell `c(μ, τ)` is the union of the `T′`
//! simplices `[b_τ, …, b_μ]` over full flags from `μ` up to `τ`, with the
//! sign `Π (−1)^{j_l}` where each step removes vertex `j_l`. Recursively
//! `c(μ, τ) = Σ_{j: μ ⊆ ∂_jτ} (−1)^j b_τ * c(μ, ∂_jτ)`, which gives
//!
//! `∂c(μ,τ) = Σ_{j: μ ⊆ ∂_jτ} (−1)^j c(μ,∂_jτ) + (−1)^{|τ|−|μ|} Σ_{μ = ∂_iμ′ ⊆ τ} (−1)^i c(μ′,τ)`.
//!
//! Cells span a subcomplex of `C_*(T′)` containing `s(σ) = Σ_{v ∈ σ} c(v, σ)`
//! and the dual blocks `D(μ) = (−1)^{d(n−d)} Σ_{ρ ⊇ μ top} o(ρ) c(μ, ρ)`,
//! normalized so that `μ ⋔ D(μ) = +1`. Cells are only ever materialized on a
//! closed region of `T`, never as a full `T′`.

use std::collections::HashMap;

use crate::complex::{Perversity, Space, REGULAR};
use crate::qlinalg::{Echelon, Rational, SparseVec};

/// A cell `c(μ, τ)`; simplices are `(dim, index)` pairs of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub mu: (usize, usize),
    pub tau: (usize, usize),
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.tau.0 - self.mu.0
    }
}

fn key(mu: (usize, usize), tau: (usize, usize)) -> u64 {
    ((tau.0 as u64) << 60) | ((mu.0 as u64) << 56) | ((tau.1 as u64) << 28) | mu.1 as u64
}

fn sign(k: usize) -> i8 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Cells of selected dimensions whose `τ` is regular and lies in a region.
pub struct CellComplex<'a> {
    x: &'a Space,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<u64, usize>>,
    region: Option<Vec<Vec<bool>>>,
    tops_of_vertex: Vec<Vec<usize>>,
}

impl<'a> CellComplex<'a> {
    /// Enumerates cells of the given dimensions with `τ` in `region` (a
    /// closed subcomplex mask), or everywhere for `None`.
    pub fn new(x: &'a Space, dims: &[usize], region: Option<Vec<Vec<bool>>>) -> Self {
        let k = x.complex();
        let n = x.dim();
        let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); n + 1];
        let mut index: Vec<HashMap<u64, usize>> = vec![HashMap::new(); n + 1];
        for dt in 0..=n {
            if !dims.iter().any(|&r| r <= dt) {
                continue;
            }
            for it in 0..k.count(dt) {
                if !x.is_regular(dt, it) || region.as_ref().is_some_and(|m| !m[dt][it]) {
                    continue;
                }
                for (dm, im) in k.all_faces(k.simplex(dt, it)) {
                    let r = dt - dm;
                    if dims.contains(&r) {
                        let c = Cell { mu: (dm, im), tau: (dt, it) };
                        index[r].insert(key(c.mu, c.tau), cells[r].len());
                        cells[r].push(c);
                    }
                }
            }
        }
        let mut tops_of_vertex = vec![Vec::new(); k.n_vertices()];
        for t in 0..k.count(n) {
            for &v in k.simplex(n, t) {
                tops_of_vertex[v as usize].push(t);
            }
        }
        CellComplex { x, cells, index, region, tops_of_vertex }
    }

    pub fn space(&self) -> &'a Space {
        self.x
    }

    pub fn count(&self, r: usize) -> usize {
        self.cells.get(r).map_or(0, Vec::len)
    }

    pub fn cell(&self, r: usize, i: usize) -> Cell {
        self.cells[r][i]
    }

    pub fn find(&self, mu: (usize, usize), tau: (usize, usize)) -> Option<usize> {
        self.index.get(tau.0.checked_sub(mu.0)?)?.get(&key(mu, tau)).copied()
    }

    fn locate(&self, mu: (usize, usize), tau: (usize, usize)) -> usize {
        self.find(mu, tau).unwrap_or_else(|| panic!("cell ({mu:?}, {tau:?}) was not enumerated"))
    }

    /// `∂₀` of a single cell as `(cell index, sign)`; cells on singular `τ`
    /// are erased.
    pub fn boundary_of(&self, r: usize, i: usize) -> Vec<(usize, i8)> {
        let k = self.x.complex();
        let Cell { mu, tau } = self.cells[r][i];
        let mut out = Vec::new();
        if r == 0 {
            return out;
        }
        let mv = k.simplex(mu.0, mu.1);
        let tv = k.simplex(tau.0, tau.1);
        for (j, &f) in k.faces(tau.0, tau.1).iter().enumerate() {
            if !mv.contains(&tv[j]) && self.x.is_regular(tau.0 - 1, f) {
                out.push((self.locate(mu, (tau.0 - 1, f)), sign(j)));
            }
        }
        let outer = sign(r);
        let mut grown = Vec::with_capacity(mv.len() + 1);
        for &v in tv {
            if mv.contains(&v) {
                continue;
            }
            grown.clear();
            grown.extend_from_slice(mv);
            let pos = grown.partition_point(|&u| u < v);
            grown.insert(pos, v);
            let m2 = (mu.0 + 1, k.index_of(&grown).expect("coface of a face of τ"));
            out.push((self.locate(m2, tau), outer * sign(pos)));
        }
        out
    }

    pub fn boundary(&self, r: usize, v: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, c) in v.iter() {
            for (j, s) in self.boundary_of(r, *i) {
                pairs.push((j, if s > 0 { c.clone() } else { -c }));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// The `T′` simplices of `c(μ,τ)` meet a stratum `Z` in dimension at most
    /// `max{|τ′| − |μ| : μ ≤ τ′ ≤ τ, τ′ ∈ Z}`, which must not exceed
    /// `r − codim Z + p̄(Z)`.
    pub fn allowable(&self, r: usize, i: usize, p: &Perversity) -> bool {
        let x = self.x;
        let Cell { mu, tau } = self.cells[r][i];
        if x.profile(tau.0, tau.1).is_empty() {
            return true;
        }
        let k = x.complex();
        let mv = k.simplex(mu.0, mu.1);
        let extra: Vec<u32> = k.simplex(tau.0, tau.1).iter().copied().filter(|v| !mv.contains(v)).collect();
        let strata = x.singular_strata();
        let mut s = Vec::with_capacity(tau.0 + 1);
        for mask in 0u32..(1 << extra.len()) {
            s.clear();
            s.extend_from_slice(mv);
            for (b, &v) in extra.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    s.push(v);
                }
            }
            s.sort_unstable();
            let z = x.stratum_of_simplex(&s).expect("face of τ");
            if z != REGULAR {
                let m = mask.count_ones() as i64;
                if m > r as i64 - strata[z as usize].codim as i64 + p.value(z) {
                    return false;
                }
            }
        }
        true
    }

    /// Basis of the `p̄`-allowable cell chains of dimension `r` (allowable
    /// cells with allowable `∂₀`), as in the simplicial case.
    pub fn chain_basis(&self, r: usize, p: &Perversity) -> Vec<SparseVec> {
        let mut out = Vec::new();
        let mut bad_faces = Echelon::new();
        let ok: Vec<bool> = if r > 0 { (0..self.count(r - 1)).map(|i| self.allowable(r - 1, i, p)).collect() } else { Vec::new() };
        for i in 0..self.count(r) {
            if !self.allowable(r, i, p) {
                continue;
            }
            let bad: Vec<(usize, Rational)> = self
                .boundary_of(r, i)
                .into_iter()
                .filter(|&(j, _)| !ok[j])
                .map(|(j, s)| (j, Rational::from_int(s as i64)))
                .collect();
            if bad.is_empty() {
                out.push(SparseVec::unit(i));
            } else if let Err(rel) = bad_faces.insert(&SparseVec::from_pairs(bad), SparseVec::unit(i)) {
                out.push(rel);
            }
        }
        out
    }

    /// `s(σ)` for a `d`-simplex of `T`, as cells of dimension `d`.
    pub fn subdivide_simplex(&self, d: usize, i: usize) -> Vec<(usize, i8)> {
        let k = self.x.complex();
        k.simplex(d, i)
            .iter()
            .map(|&v| (self.locate((0, k.index_of(&[v]).expect("vertex")), (d, i)), 1))
            .collect()
    }

    pub fn subdivide(&self, d: usize, chain: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, c) in chain.iter() {
            for (j, _) in self.subdivide_simplex(d, *i) {
                pairs.push((j, c.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Top simplices containing `μ`.
    pub fn tops_containing(&self, mu: (usize, usize)) -> Vec<usize> {
        let k = self.x.complex();
        let mv = k.simplex(mu.0, mu.1);
        let n = self.x.dim();
        self.tops_of_vertex[mv[0] as usize]
            .iter()
            .copied()
            .filter(|&t| {
                let tv = k.simplex(n, t);
                mv.iter().all(|v| tv.contains(v))
            })
            .collect()
    }

    /// `D(μ)` as cells of dimension `n − |μ|`, or `None` when some top
    /// around `μ` lies outside the region.
    pub fn block(&self, mu: (usize, usize)) -> Option<Vec<(usize, i8)>> {
        let n = self.x.dim();
        let norm = sign(mu.0 * (n - mu.0));
        let mut out = Vec::new();
        for t in self.tops_containing(mu) {
            if self.region.as_ref().is_some_and(|m| !m[n][t]) {
                return None;
            }
            out.push((self.find(mu, (n, t))?, norm * self.x.orientation(t)));
        }
        Some(out)
    }
}

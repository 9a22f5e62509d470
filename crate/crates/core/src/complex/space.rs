use std::collections::HashSet;

use crate::qlinalg::{Rational, SparseVec};

use super::simplicial::{Simplex, SimplicialComplex};
use super::ComplexError;

/// Declared collar `B × [0,1]` of the boundary: `pairs` maps each boundary
/// vertex `b = (b,0)` to its inner copy `(b,1)`; `cells` are the top cells of
/// the product neighborhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collar {
    pub pairs: Vec<(u32, u32)>,
    pub cells: Vec<Simplex>,
}

/// Declared bicollar `Z × [−1,1]`: each triple is `(z, m, p)` with `z` on `Z`,
/// `m` its copy at `−1` and `p` its copy at `+1`; `zfaces` are the top
/// simplices of `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicollar {
    pub triples: Vec<(u32, u32, u32)>,
    pub zfaces: Vec<Simplex>,
}

/// One stratum: a connected component of `X^k − X^{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub level: usize,
    pub codim: usize,
    /// Lexicographically smallest simplex of the stratum (lowest dimension first).
    pub representative: Simplex,
}

/// Oriented simplicial stratified pseudomanifold, possibly with boundary.
///
/// Invariants: `level[d][i] >= d` is the least `k` with the simplex in `X^k`,
/// levels are monotone under taking faces, `orientation[i] ∈ {±1}` for every
/// top simplex, and singular strata are numbered by `(level, representative)`.
#[derive(Clone, Debug)]
pub struct Space {
    complex: SimplicialComplex,
    dim: usize,
    level: Vec<Vec<usize>>,
    orientation: Vec<i8>,
    boundary: Vec<usize>,
    boundary_mask: Vec<Vec<bool>>,
    collar: Option<Collar>,
    bicollar: Option<Bicollar>,
    stratum_of: Vec<Vec<u32>>,
    singular: Vec<Stratum>,
    profile: Vec<Vec<Vec<(u32, u8)>>>,
}

/// Marker in `stratum_of` for simplices of the regular part.
pub const REGULAR: u32 = u32::MAX;

impl Space {
    /// Builds a space from a complex, per-simplex levels, top-simplex signs
    /// and boundary facets.
    pub fn from_levels(
        complex: SimplicialComplex,
        dim: usize,
        level: Vec<Vec<usize>>,
        orientation: Vec<i8>,
        boundary_facets: &[Simplex],
    ) -> Result<Self, ComplexError> {
        if complex.top_dim().is_some_and(|t| t > dim) {
            return Err(ComplexError::Invalid(format!(
                "complex has simplices of dimension {} above the formal dimension {dim}",
                complex.top_dim().unwrap_or(0)
            )));
        }
        if orientation.len() != complex.count(dim) {
            return Err(ComplexError::Invalid("orientation length differs from top simplex count".into()));
        }
        if let Some(i) = orientation.iter().position(|&o| o != 1 && o != -1) {
            return Err(ComplexError::Invalid(format!(
                "top simplex {:?} has no orientation sign",
                complex.simplex(dim, i)
            )));
        }
        for d in 0..level.len() {
            for (i, &l) in level[d].iter().enumerate() {
                if l < d || l > dim {
                    return Err(ComplexError::Invalid(format!(
                        "simplex {:?} assigned to skeleton {l}, outside {d}..={dim}",
                        complex.simplex(d, i)
                    )));
                }
                for &f in complex.faces(d, i) {
                    if level[d - 1][f] > l {
                        return Err(ComplexError::Invalid(format!(
                            "skeleta are not subcomplexes at {:?}",
                            complex.simplex(d, i)
                        )));
                    }
                }
            }
        }
        let mut boundary = Vec::with_capacity(boundary_facets.len());
        for b in boundary_facets {
            if dim == 0 || b.len() != dim {
                return Err(ComplexError::Invalid(format!("boundary simplex {b:?} is not of dimension {}", dim.saturating_sub(1))));
            }
            let i = complex
                .index_of(b)
                .ok_or_else(|| ComplexError::Invalid(format!("boundary simplex {b:?} is not in the complex")))?;
            boundary.push(i);
        }
        boundary.sort_unstable();
        boundary.dedup();
        let boundary_mask = closure_mask(&complex, dim.saturating_sub(1), &boundary);
        let mut s = Space {
            complex,
            dim,
            level,
            orientation,
            boundary,
            boundary_mask,
            collar: None,
            bicollar: None,
            stratum_of: Vec::new(),
            singular: Vec::new(),
            profile: Vec::new(),
        };
        s.compute_strata();
        Ok(s)
    }

    /// Builds a space from top simplices with signs, skeleton declarations
    /// `(k, simplex)` and boundary facets. Undeclared simplices are regular.
    pub fn from_declarations(
        n_vertices: usize,
        dim: usize,
        facets: &[(Simplex, i8)],
        skeleta: &[(usize, Simplex)],
        boundary_facets: &[Simplex],
    ) -> Result<Self, ComplexError> {
        let gens = facets.iter().map(|(s, _)| s.as_slice()).chain(skeleta.iter().map(|(_, s)| s.as_slice()));
        let complex = SimplicialComplex::from_simplices(n_vertices, gens)?;
        let mut level: Vec<Vec<usize>> = (0..=complex.top_dim().unwrap_or(0))
            .map(|d| vec![dim; complex.count(d)])
            .collect();
        for (k, s) in skeleta {
            let mut s = s.clone();
            s.sort_unstable();
            for (d, i) in complex.all_faces(&s) {
                level[d][i] = level[d][i].min(*k);
            }
        }
        let mut orientation = vec![0i8; complex.count(dim)];
        for (s, o) in facets {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted.len() != dim + 1 {
                return Err(ComplexError::Invalid(format!("facet {s:?} is not of dimension {dim}")));
            }
            let i = complex.index_of(&sorted).expect("facet was inserted");
            orientation[i] = *o;
        }
        let boundary: Vec<Simplex> = boundary_facets
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        Space::from_levels(complex, dim, level, orientation, &boundary)
    }

    pub fn with_collar(mut self, collar: Option<Collar>) -> Self {
        self.collar = collar;
        self
    }

    pub fn with_bicollar(mut self, bicollar: Option<Bicollar>) -> Self {
        self.bicollar = bicollar;
        self
    }

    fn compute_strata(&mut self) {
        let k = &self.complex;
        let top = k.top_dim().map_or(0, |t| t + 1);
        // union-find over all simplices, keyed by a flat index
        let offsets: Vec<usize> = (0..=top).scan(0, |acc, d| {
            let o = *acc;
            *acc += k.count(d);
            Some(o)
        }).collect();
        let total = offsets[top];
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for d in 1..top {
            for i in 0..k.count(d) {
                let l = self.level[d][i];
                for &f in k.faces(d, i) {
                    if self.level[d - 1][f] == l {
                        let (a, b) = (find(&mut parent, offsets[d] + i), find(&mut parent, offsets[d - 1] + f));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
        // roots of singular components, ordered by (level, representative)
        let mut reps: Vec<(usize, Simplex, usize)> = Vec::new();
        let mut seen = HashSet::new();
        for d in 0..top {
            for i in 0..k.count(d) {
                let l = self.level[d][i];
                if l == self.dim {
                    continue;
                }
                let r = find(&mut parent, offsets[d] + i);
                if seen.insert(r) {
                    reps.push((l, k.simplex(d, i).to_vec(), r));
                }
            }
        }
        reps.sort_by(|a, b| (a.0, a.1.len(), &a.1).cmp(&(b.0, b.1.len(), &b.1)));
        let mut root_to_id = std::collections::HashMap::new();
        self.singular = reps
            .iter()
            .enumerate()
            .map(|(id, (l, s, r))| {
                root_to_id.insert(*r, id as u32);
                Stratum { level: *l, codim: self.dim - l, representative: s.clone() }
            })
            .collect();
        self.stratum_of = (0..top)
            .map(|d| {
                (0..k.count(d))
                    .map(|i| {
                        if self.level[d][i] == self.dim {
                            REGULAR
                        } else {
                            root_to_id[&find(&mut parent, offsets[d] + i)]
                        }
                    })
                    .collect()
            })
            .collect();
        let mut profile: Vec<Vec<Vec<(u32, u8)>>> = Vec::with_capacity(top);
        for d in 0..top {
            let mut pd = Vec::with_capacity(k.count(d));
            for i in 0..k.count(d) {
                let mut p: Vec<(u32, u8)> = Vec::new();
                for &f in k.faces(d, i) {
                    for &(z, m) in &profile[d - 1][f] {
                        merge_max(&mut p, z, m);
                    }
                }
                let z = self.stratum_of[d][i];
                if z != REGULAR {
                    merge_max(&mut p, z, d as u8);
                }
                pd.push(p);
            }
            profile.push(pd);
        }
        self.profile = profile;
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Formal dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self, d: usize, i: usize) -> usize {
        self.level[d][i]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.level
    }

    pub fn is_regular(&self, d: usize, i: usize) -> bool {
        self.level[d][i] == self.dim
    }

    pub fn orientation(&self, i: usize) -> i8 {
        self.orientation[i]
    }

    pub fn orientations(&self) -> &[i8] {
        &self.orientation
    }

    /// Indices of the declared boundary facets (dimension `n − 1`).
    pub fn boundary_facets(&self) -> &[usize] {
        &self.boundary
    }

    pub fn has_boundary(&self) -> bool {
        !self.boundary.is_empty()
    }

    /// Whether a simplex lies in the boundary subcomplex.
    pub fn in_boundary(&self, d: usize, i: usize) -> bool {
        self.boundary_mask.get(d).is_some_and(|m| m[i])
    }

    pub fn boundary_mask(&self) -> &[Vec<bool>] {
        &self.boundary_mask
    }

    pub fn collar(&self) -> Option<&Collar> {
        self.collar.as_ref()
    }

    pub fn bicollar(&self) -> Option<&Bicollar> {
        self.bicollar.as_ref()
    }

    pub fn singular_strata(&self) -> &[Stratum] {
        &self.singular
    }

    /// Singular stratum id of a simplex, or [`REGULAR`].
    pub fn stratum_of(&self, d: usize, i: usize) -> u32 {
        self.stratum_of[d][i]
    }

    /// Singular stratum of the simplex with these vertices.
    pub fn stratum_of_simplex(&self, s: &[u32]) -> Option<u32> {
        let d = s.len().checked_sub(1)?;
        let i = self.complex.index_of(s)?;
        Some(self.stratum_of[d][i])
    }

    /// For each singular stratum meeting the closed simplex, the largest
    /// dimension of a face lying in it.
    pub fn profile(&self, d: usize, i: usize) -> &[(u32, u8)] {
        &self.profile[d][i]
    }

    pub fn is_s_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    /// `Σ o(σ) σ` over top simplices.
    pub fn fundamental_chain(&self) -> SparseVec {
        self.orientation
            .iter()
            .enumerate()
            .map(|(i, &o)| (i, Rational::from_int(o as i64)))
            .collect()
    }

    /// Returns the space with every orientation sign flipped.
    pub fn reversed(&self) -> Space {
        let mut s = self.clone();
        for o in &mut s.orientation {
            *o = -*o;
        }
        s
    }

    /// Same complex and levels with all strata forgotten.
    pub fn forget_strata(&self) -> Space {
        let level = self.level.iter().map(|l| vec![self.dim; l.len()]).collect();
        let facets: Vec<Simplex> = self.boundary.iter().map(|&b| self.complex.simplex(self.dim - 1, b).to_vec()).collect();
        Space::from_levels(self.complex.clone(), self.dim, level, self.orientation.clone(), &facets)
            .expect("forgetting strata keeps a valid space")
            .with_collar(self.collar.clone())
            .with_bicollar(self.bicollar.clone())
    }

    /// Coefficient of each boundary facet in `∂[X]` (only entries at
    /// `(n−1)`-simplices with exactly one top coface are meaningful).
    pub fn boundary_of_fundamental(&self) -> SparseVec {
        self.complex.boundary(self.dim, &self.fundamental_chain())
    }

    /// Sub-space on a set of top simplices: levels and signs are inherited and
    /// `boundary` lists the declared boundary facets.
    pub fn restrict_to(&self, tops: &[usize], boundary: &[Simplex]) -> Result<Space, ComplexError> {
        let gens: Vec<&[u32]> = tops.iter().map(|&i| self.complex.simplex(self.dim, i)).collect();
        let complex = SimplicialComplex::from_simplices(self.complex.n_vertices(), gens)?;
        self.inherit(complex, self.dim, 0, boundary, |k, i| {
            let t = self.complex.index_of(k.simplex(self.dim, i)).expect("sub-simplex");
            self.orientation[t]
        })
    }

    /// Builds a space on `complex` (a subcomplex of `self`) of formal dimension
    /// `dim`, lowering every inherited level by `shift`.
    pub fn inherit(
        &self,
        complex: SimplicialComplex,
        dim: usize,
        shift: usize,
        boundary: &[Simplex],
        orient: impl Fn(&SimplicialComplex, usize) -> i8,
    ) -> Result<Space, ComplexError> {
        let mut level = Vec::new();
        for d in 0..=complex.top_dim().unwrap_or(0) {
            let mut ld = Vec::with_capacity(complex.count(d));
            for s in complex.simplices(d) {
                let i = self
                    .complex
                    .index_of(s)
                    .ok_or_else(|| ComplexError::Invalid(format!("{s:?} not in the ambient complex")))?;
                let l = self.level[d][i];
                ld.push(l.checked_sub(shift).ok_or_else(|| {
                    ComplexError::Invalid(format!("{s:?} lies in skeleton {l} and cannot be shifted down"))
                })?);
            }
            level.push(ld);
        }
        let orientation = (0..complex.count(dim)).map(|i| orient(&complex, i)).collect();
        Space::from_levels(complex, dim, level, orientation, boundary)
    }

    /// Top simplices sharing a vertex tuple with `other`'s top simplices are
    /// matched; returns the index map from `other` top simplices into `self`.
    pub fn locate_tops(&self, other: &Space) -> Option<Vec<usize>> {
        (0..other.complex.count(other.dim))
            .map(|i| self.complex.index_of(other.complex.simplex(other.dim, i)))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }

    /// Skeleton declarations reproducing the levels: simplices below the top
    /// level none of whose proper cofaces has level at most their own.
    pub fn minimal_skeleton_declarations(&self) -> Vec<(usize, Simplex)> {
        let k = &self.complex;
        let mut out = Vec::new();
        for d in 0..self.level.len() {
            for i in 0..k.count(d) {
                let l = self.level[d][i];
                if l == self.dim {
                    continue;
                }
                if k.cofaces(d, i).iter().all(|&c| self.level[d + 1][c] > l) {
                    out.push((l, k.simplex(d, i).to_vec()));
                }
            }
        }
        out.sort();
        out
    }
}

fn merge_max(p: &mut Vec<(u32, u8)>, z: u32, m: u8) {
    match p.binary_search_by_key(&z, |e| e.0) {
        Ok(k) => p[k].1 = p[k].1.max(m),
        Err(k) => p.insert(k, (z, m)),
    }
}

/// Per-dimension membership mask of the closure of some `d`-simplices.
pub fn closure_mask(k: &SimplicialComplex, d: usize, gens: &[usize]) -> Vec<Vec<bool>> {
    let top = k.top_dim().map_or(0, |t| t + 1);
    let mut mask: Vec<Vec<bool>> = (0..top).map(|e| vec![false; k.count(e)]).collect();
    if gens.is_empty() {
        return mask;
    }
    for &g in gens {
        mask[d][g] = true;
    }
    for e in (1..=d).rev() {
        for i in 0..k.count(e) {
            if mask[e][i] {
                for &f in k.faces(e, i) {
                    mask[e - 1][f] = true;
                }
            }
        }
    }
    mask
}

/// Integer-valued function on the singular strata of a space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perversity {
    values: Vec<i64>,
}

impl Perversity {
    pub fn from_values(values: Vec<i64>) -> Self {
        Perversity { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, stratum: u32) -> i64 {
        self.values[stratum as usize]
    }

    pub fn constant(x: &Space, c: i64) -> Self {
        Perversity { values: vec![c; x.singular_strata().len()] }
    }

    pub fn zero(x: &Space) -> Self {
        Self::constant(x, 0)
    }

    /// `codim − 2`.
    pub fn top(x: &Space) -> Self {
        Self::by_codim(x, |c| c - 2)
    }

    /// `⌊(codim − 2)/2⌋`.
    pub fn lower_middle(x: &Space) -> Self {
        Self::by_codim(x, |c| (c - 2).div_euclid(2))
    }

    /// `⌈(codim − 2)/2⌉`.
    pub fn upper_middle(x: &Space) -> Self {
        Self::by_codim(x, |c| -((2 - c).div_euclid(2)))
    }

    pub fn by_codim(x: &Space, f: impl Fn(i64) -> i64) -> Self {
        Perversity { values: x.singular_strata().iter().map(|s| f(s.codim as i64)).collect() }
    }

    /// `t̄ − p̄`.
    pub fn complement(&self, x: &Space) -> Self {
        let t = Self::top(x);
        Perversity { values: t.values.iter().zip(&self.values).map(|(a, b)| a - b).collect() }
    }

    /// Stratum-wise `self ≤ other`.
    pub fn le(&self, other: &Perversity) -> bool {
        self.values.len() == other.values.len() && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn is_dual_to(&self, other: &Perversity, x: &Space) -> bool {
        self.complement(x) == *other
    }

    pub fn check_for(&self, x: &Space) -> Result<(), ComplexError> {
        if self.values.len() != x.singular_strata().len() {
            return Err(ComplexError::Perversity(format!(
                "perversity has {} values but the space has {} singular strata",
                self.values.len(),
                x.singular_strata().len()
            )));
        }
        Ok(())
    }

    /// Transfers to `to`, a space whose simplices all occur in `from` with the
    /// same codimensions, by evaluating on each stratum's representative.
    pub fn transfer(&self, from: &Space, to: &Space) -> Result<Perversity, ComplexError> {
        let mut values = Vec::with_capacity(to.singular_strata().len());
        for s in to.singular_strata() {
            let z = from.stratum_of_simplex(&s.representative).ok_or_else(|| {
                ComplexError::Perversity(format!("stratum through {:?} has no counterpart", s.representative))
            })?;
            if z == REGULAR {
                return Err(ComplexError::Perversity(format!(
                    "stratum through {:?} is regular in the ambient space",
                    s.representative
                )));
            }
            values.push(self.value(z));
        }
        Ok(Perversity { values })
    }
}

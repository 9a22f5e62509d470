use std::collections::{HashMap, HashSet};

use crate::qlinalg::{Rational, SparseVec};

use super::ComplexError;

/// A simplex as a strictly increasing vertex tuple.
pub type Simplex = Vec<u32>;

/// Finite abstract simplicial complex with ordered vertices.
///
/// Invariant: closed under faces, simplices in each dimension sorted
/// lexicographically, `faces[d][i][j]` is the index of simplex `(d, i)` with
/// its `j`-th vertex removed.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n_vertices: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    cofaces: Vec<Vec<Vec<usize>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Closure of the given simplices under faces. Vertex lists may be given
    /// in any order but must not repeat vertices.
    pub fn from_simplices<I, S>(n_vertices: usize, generators: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut sets: Vec<HashSet<Simplex>> = Vec::new();
        for g in generators {
            let mut s: Simplex = g.as_ref().to_vec();
            s.sort_unstable();
            if s.is_empty() {
                return Err(ComplexError::Invalid("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::Invalid(format!("repeated vertex in {s:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v as usize >= n_vertices) {
                return Err(ComplexError::Invalid(format!("vertex {v} out of range 0..{n_vertices}")));
            }
            let d = s.len() - 1;
            if sets.len() <= d {
                sets.resize_with(d + 1, HashSet::new);
            }
            if sets[d].contains(&s) {
                continue;
            }
            let k = s.len();
            for mask in 1u32..(1u32 << k) {
                let f: Simplex = (0..k).filter(|&j| mask & (1 << j) != 0).map(|j| s[j]).collect();
                sets[f.len() - 1].insert(f);
            }
        }
        let simplices: Vec<Vec<Simplex>> = sets
            .into_iter()
            .map(|set| {
                let mut v: Vec<Simplex> = set.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        Ok(Self::from_closed(n_vertices, simplices))
    }

    fn from_closed(n_vertices: usize, simplices: Vec<Vec<Simplex>>) -> Self {
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        let mut cofaces: Vec<Vec<Vec<usize>>> = simplices.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for d in 1..simplices.len() {
            let mut fd = Vec::with_capacity(simplices[d].len());
            for (i, s) in simplices[d].iter().enumerate() {
                let mut fs = Vec::with_capacity(s.len());
                for j in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(j);
                    let fi = index[d - 1][&f];
                    fs.push(fi);
                    cofaces[d - 1][fi].push(i);
                }
                fd.push(fs);
            }
            faces.push(fd);
        }
        SimplicialComplex { n_vertices, simplices, index, faces, cofaces }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn top_dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, d: usize, i: usize) -> &[u32] {
        &self.simplices[d][i]
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).copied()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index_of(s).is_some()
    }

    /// Codimension-one faces; entry `j` omits vertex `j` and carries sign `(-1)^j`.
    pub fn faces(&self, d: usize, i: usize) -> &[usize] {
        if d == 0 {
            return &[];
        }
        &self.faces[d][i]
    }

    pub fn cofaces(&self, d: usize, i: usize) -> &[usize] {
        &self.cofaces[d][i]
    }

    /// Simplicial boundary of a single simplex.
    pub fn boundary_of(&self, d: usize, i: usize) -> SparseVec {
        self.faces(d, i)
            .iter()
            .enumerate()
            .map(|(j, &f)| (f, Rational::from_int(if j % 2 == 0 { 1 } else { -1 })))
            .collect()
    }

    /// Simplicial boundary of a `d`-chain.
    pub fn boundary(&self, d: usize, chain: &SparseVec) -> SparseVec {
        if d == 0 {
            return SparseVec::new();
        }
        let mut pairs = Vec::new();
        for (i, x) in chain.iter() {
            for (j, &f) in self.faces(d, *i).iter().enumerate() {
                pairs.push((f, if j % 2 == 0 { x.clone() } else { -x }));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// All faces of a simplex (including itself) as `(dim, index)` pairs.
    pub fn all_faces(&self, s: &[u32]) -> Vec<(usize, usize)> {
        let k = s.len();
        let mut out = Vec::with_capacity((1 << k) - 1);
        for mask in 1u32..(1u32 << k) {
            let f: Simplex = (0..k).filter(|&j| mask & (1 << j) != 0).map(|j| s[j]).collect();
            let d = f.len() - 1;
            out.push((d, self.index[d][&f]));
        }
        out
    }

    /// Maximal simplices, sorted by dimension then lexicographically.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..self.simplices.len() {
            for (i, s) in self.simplices[d].iter().enumerate() {
                if self.cofaces[d][i].is_empty() {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Vertices that occur in some simplex.
    pub fn used_vertices(&self) -> Vec<u32> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    /// Subcomplex generated by the given simplices, keeping vertex numbering.
    pub fn subcomplex<'a>(&self, generators: impl IntoIterator<Item = &'a [u32]>) -> Result<Self, ComplexError> {
        Self::from_simplices(self.n_vertices, generators)
    }
}

/// Sign of the permutation sorting `v` (which must have distinct entries).
pub fn sort_sign(v: &[u32]) -> i32 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                sign = -sign;
            }
        }
    }
    sign
}

use crate::qlinalg::{Rational, SparseVec};

use super::simplicial::{Simplex, SimplicialComplex};
use super::space::{Perversity, Space};
use super::ComplexError;

/// First barycentric subdivision `X′` together with its chain map.
///
/// Vertices of `X′` are barycenters `b_τ`, numbered by decreasing dimension of
/// `τ` and then lexicographically, so a flag `τ_k ⊃ … ⊃ τ_0` is stored as the
/// increasing tuple `[b_{τ_k}, …, b_{τ_0}]`. The chain map is
/// `s(σ) = Σ_j (−1)^j b_σ · s(∂_j σ)`, which commutes with `∂` and `∂₀`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub space: Space,
    offsets: Vec<usize>,
    carrier: Vec<(usize, usize)>,
    table: Vec<Vec<Vec<(usize, i8)>>>,
}

impl Subdivision {
    /// The `X′` vertex at the barycenter of simplex `(d, i)`.
    pub fn barycenter(&self, d: usize, i: usize) -> u32 {
        (self.offsets[d] + i) as u32
    }

    /// The simplex of `X` whose barycenter is vertex `v` of `X′`.
    pub fn carrier_of_vertex(&self, v: u32) -> (usize, usize) {
        self.carrier[v as usize]
    }

    /// Smallest simplex of `X` containing the open simplex `(d′, i′)` of `X′`.
    pub fn carrier(&self, d: usize, i: usize) -> (usize, usize) {
        self.carrier_of_vertex(self.space.complex().simplex(d, i)[0])
    }

    /// `s(σ)` as `(X′ simplex index, sign)` pairs.
    pub fn simplex_image(&self, d: usize, i: usize) -> &[(usize, i8)] {
        &self.table[d][i]
    }

    pub fn chain(&self, d: usize, c: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, x) in c.iter() {
            for &(t, s) in &self.table[d][*i] {
                pairs.push((t, if s > 0 { x.clone() } else { -x }));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Subdivision of a subcomplex of `X` given by its top simplices (of
    /// dimension `d`), as `X′` top simplices of that dimension.
    pub fn subdivide_tops(&self, d: usize, tops: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = tops.iter().flat_map(|&i| self.table[d][i].iter().map(|p| p.0)).collect();
        out.sort_unstable();
        out
    }

    /// Transfers a perversity on `X` to `X′` through stratum carriers.
    pub fn transfer(&self, original: &Space, p: &Perversity) -> Perversity {
        let k = self.space.complex();
        Perversity::from_values(
            self.space
                .singular_strata()
                .iter()
                .map(|s| {
                    let i = k.index_of(&s.representative).expect("representative in X′");
                    let (d0, i0) = self.carrier(s.representative.len() - 1, i);
                    p.value(original.stratum_of(d0, i0))
                })
                .collect(),
        )
    }

    /// Subdivides a space living on a subcomplex of the subdivided space's
    /// original: same levels (shifted by `shift`), orientation from `s`.
    pub fn subdivide_piece(&self, piece: &Space, original: &Space, shift: usize) -> Result<Space, ComplexError> {
        let ko = original.complex();
        let kp = piece.complex();
        let m = piece.dim();
        let mut tops = Vec::new();
        let mut orient = std::collections::HashMap::new();
        for i in 0..kp.count(m) {
            let oi = ko.index_of(kp.simplex(m, i)).ok_or_else(|| ComplexError::Invalid("piece is not a subcomplex".into()))?;
            for &(t, s) in &self.table[m][oi] {
                tops.push(self.space.complex().simplex(m, t).to_vec());
                orient.insert(t, piece.orientation(i) * s);
            }
        }
        let sub = SimplicialComplex::from_simplices(self.space.complex().n_vertices(), &tops)?;
        let mut boundary = Vec::new();
        if m > 0 {
            for &b in piece.boundary_facets() {
                let ob = ko.index_of(kp.simplex(m - 1, b)).expect("boundary facet in X");
                for &(t, _) in &self.table[m - 1][ob] {
                    boundary.push(self.space.complex().simplex(m - 1, t).to_vec());
                }
            }
        }
        let kx = self.space.complex();
        self.space.inherit(sub, m, shift, &boundary, |k, i| {
            let t = kx.index_of(k.simplex(m, i)).expect("sub simplex");
            orient[&t]
        })
    }
}

pub fn barycentric_subdivide(x: &Space) -> Result<Subdivision, ComplexError> {
    let k = x.complex();
    let top = k.top_dim().map_or(0, |t| t + 1);
    // offsets[d] = number of simplices of dimension > d
    let mut offsets = vec![0usize; top + 1];
    let mut acc = 0;
    for d in (0..top).rev() {
        offsets[d] = acc;
        acc += k.count(d);
    }
    let n_new = acc;
    let mut carrier = vec![(0, 0); n_new];
    for d in 0..top {
        for i in 0..k.count(d) {
            carrier[offsets[d] + i] = (d, i);
        }
    }
    // full flags of maximal simplices generate X′
    let mut flags: Vec<Simplex> = Vec::new();
    for d in 0..top {
        for i in 0..k.count(d) {
            if k.cofaces(d, i).is_empty() {
                collect_flags(k, &offsets, d, i, &mut vec![], &mut flags);
            }
        }
    }
    let kk = SimplicialComplex::from_simplices(n_new, &flags)?;
    let mut table: Vec<Vec<Vec<(usize, i8)>>> = Vec::with_capacity(top);
    for d in 0..top {
        let mut td = Vec::with_capacity(k.count(d));
        for i in 0..k.count(d) {
            let b = (offsets[d] + i) as u32;
            if d == 0 {
                td.push(vec![(kk.index_of(&[b]).expect("vertex"), 1)]);
                continue;
            }
            let mut img = Vec::new();
            for (j, &f) in k.faces(d, i).iter().enumerate() {
                let sj: i8 = if j % 2 == 0 { 1 } else { -1 };
                for &(t, s) in &table[d - 1][f] {
                    let mut flag = vec![b];
                    flag.extend_from_slice(kk.simplex(d - 1, t));
                    img.push((kk.index_of(&flag).expect("flag in X′"), sj * s));
                }
            }
            td.push(img);
        }
        table.push(td);
    }
    let n = x.dim();
    let mut level = Vec::with_capacity(top);
    for d in 0..top {
        level.push(
            kk.simplices(d)
                .iter()
                .map(|s| {
                    let (d0, i0) = carrier[s[0] as usize];
                    x.level(d0, i0)
                })
                .collect(),
        );
    }
    let mut orientation = vec![0i8; kk.count(n)];
    for i in 0..k.count(n) {
        for &(t, s) in &table[n][i] {
            orientation[t] = x.orientation(i) * s;
        }
    }
    let mut boundary = Vec::new();
    if n > 0 {
        for &b in x.boundary_facets() {
            for &(t, _) in &table[n - 1][b] {
                boundary.push(kk.simplex(n - 1, t).to_vec());
            }
        }
    }
    let space = Space::from_levels(kk, n, level, orientation, &boundary)?;
    Ok(Subdivision { space, offsets, carrier, table })
}

fn collect_flags(
    k: &SimplicialComplex,
    offsets: &[usize],
    d: usize,
    i: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Simplex>,
) {
    prefix.push((offsets[d] + i) as u32);
    if d == 0 {
        out.push(prefix.clone());
    } else {
        for &f in k.faces(d, i) {
            collect_flags(k, offsets, d - 1, f, prefix, out);
        }
    }
    prefix.pop();
}

/// Applies `s` to a rational chain given as `(simplex, coefficient)` pairs.
pub fn subdivide_chain(sd: &Subdivision, d: usize, chain: &[(usize, Rational)]) -> SparseVec {
    sd.chain(d, &chain.iter().cloned().collect())
}

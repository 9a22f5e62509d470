use std::collections::{BTreeSet, HashMap};

use super::simplicial::{Simplex, SimplicialComplex};
use super::space::{Perversity, Space, REGULAR};
use super::validate::{validate, Status, NON_BRANCHING, ORIENTATION};
use super::ComplexError;

/// Closed cone with a new apex vertex `0`; vertices of `l` shift up by one.
///
/// The apex is a point stratum; `[a, σ]` and the base copy of `σ` lie one
/// skeleton above `σ`. `∂[c̄L] = [L]`, so the base is the boundary.
pub fn cone(l: &Space) -> Result<Space, ComplexError> {
    cone_with_apexes(l, 1, |_| 0).map(|(x, _)| x)
}

/// Cones every simplex of `l` from the apex chosen by `apex_of` (one of
/// `0..n_apex`), shifting `l`'s vertices by `n_apex`. Returns the space and
/// the map from `l` vertices to new vertices.
fn cone_with_apexes(l: &Space, n_apex: u32, apex_of: impl Fn(u32) -> u32) -> Result<(Space, u32), ComplexError> {
    let m = l.dim();
    let kl = l.complex();
    let shift = |s: &[u32]| -> Simplex { s.iter().map(|v| v + n_apex).collect() };
    let mut gens: Vec<Simplex> = Vec::new();
    for s in kl.maximal_simplices() {
        let mut c = vec![apex_of(s[0])];
        c.extend(shift(&s));
        gens.push(c);
    }
    let k = SimplicialComplex::from_simplices(kl.n_vertices() + n_apex as usize, &gens)?;
    let mut level: Vec<Vec<usize>> = (0..=k.top_dim().unwrap_or(0)).map(|d| vec![0; k.count(d)]).collect();
    for d in 0..level.len() {
        for i in 0..k.count(d) {
            let s = k.simplex(d, i);
            level[d][i] = if s[0] < n_apex {
                if d == 0 {
                    0
                } else {
                    let base: Simplex = s[1..].iter().map(|v| v - n_apex).collect();
                    l.level(d - 1, kl.index_of(&base).expect("cone base is in L")) + 1
                }
            } else {
                let base: Simplex = s.iter().map(|v| v - n_apex).collect();
                l.level(d, kl.index_of(&base).expect("base copy is in L")) + 1
            };
        }
    }
    let orientation = (0..k.count(m + 1))
        .map(|i| {
            let base: Simplex = k.simplex(m + 1, i)[1..].iter().map(|v| v - n_apex).collect();
            l.orientation(kl.index_of(&base).expect("top simplex cones a top simplex"))
        })
        .collect();
    let boundary: Vec<Simplex> = (0..kl.count(m)).map(|i| shift(kl.simplex(m, i))).collect();
    Ok((Space::from_levels(k, m + 1, level, orientation, &boundary)?, n_apex))
}

/// Suspension with apexes `0` and `1`; vertices of `z` shift up by two.
pub fn suspension(z: &Space) -> Result<Space, ComplexError> {
    if z.has_boundary() {
        return Err(ComplexError::Precondition("suspension needs an s-closed space".into()));
    }
    let m = z.dim();
    let kz = z.complex();
    let mut gens: Vec<Simplex> = Vec::new();
    for s in kz.maximal_simplices() {
        for a in [0u32, 1] {
            let mut c = vec![a];
            c.extend(s.iter().map(|v| v + 2));
            gens.push(c);
        }
    }
    let k = SimplicialComplex::from_simplices(kz.n_vertices() + 2, &gens)?;
    let base_of = |s: &[u32]| -> Simplex { s.iter().filter(|&&v| v >= 2).map(|v| v - 2).collect() };
    let mut level: Vec<Vec<usize>> = Vec::new();
    for d in 0..=k.top_dim().unwrap_or(0) {
        level.push(
            k.simplices(d)
                .iter()
                .map(|s| {
                    let b = base_of(s);
                    if b.is_empty() {
                        0
                    } else {
                        z.level(b.len() - 1, kz.index_of(&b).expect("base in Z")) + 1
                    }
                })
                .collect(),
        );
    }
    let orientation = (0..k.count(m + 1))
        .map(|i| {
            let s = k.simplex(m + 1, i);
            let o = z.orientation(kz.index_of(&base_of(s)).expect("base in Z"));
            if s[0] == 0 { o } else { -o }
        })
        .collect();
    Space::from_levels(k, m + 1, level, orientation, &[])
}

/// Connected components of the boundary subcomplex, each as a sorted list of
/// boundary facet indices; components are ordered by their smallest facet.
pub fn boundary_components(y: &Space) -> Vec<Vec<usize>> {
    let k = y.complex();
    let n = y.dim();
    let facets = y.boundary_facets();
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(p: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let mut r = x;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        p.insert(x, r);
        r
    }
    for &b in facets {
        let s = k.simplex(n - 1, b);
        for &v in s {
            parent.entry(v).or_insert(v);
        }
        for w in s.windows(2) {
            let (a, c) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != c {
                parent.insert(a.max(c), a.min(c));
            }
        }
    }
    let mut comps: Vec<(u32, Vec<usize>)> = Vec::new();
    for &b in facets {
        let root = find(&mut parent, k.simplex(n - 1, b)[0]);
        match comps.iter_mut().find(|c| c.0 == root) {
            Some(c) => c.1.push(b),
            None => comps.push((root, vec![b])),
        }
    }
    comps.into_iter().map(|c| c.1).collect()
}

/// Cones off each boundary component from its own apex; apexes are vertices
/// `0..c` and `y`'s vertices shift up by `c`.
///
/// Cone simplices `[a, β]` keep the level of `β`, and top cones carry the
/// sign `−ε_β` where `∂[Y] = Σ ε_β β`, so the result is oriented and s-closed.
pub fn cone_off_boundary(y: &Space) -> Result<Space, ComplexError> {
    if !y.has_boundary() {
        return Err(ComplexError::Precondition("cone_off_boundary needs a nonempty boundary".into()));
    }
    let n = y.dim();
    let ky = y.complex();
    let comps = boundary_components(y);
    let c = comps.len() as u32;
    let mut comp_of_facet = HashMap::new();
    for (j, comp) in comps.iter().enumerate() {
        for &b in comp {
            comp_of_facet.insert(b, j as u32);
        }
    }
    let mut gens: Vec<Simplex> = ky.maximal_simplices().iter().map(|s| s.iter().map(|v| v + c).collect()).collect();
    for (&b, &j) in &comp_of_facet {
        let mut s = vec![j];
        s.extend(ky.simplex(n - 1, b).iter().map(|v| v + c));
        gens.push(s);
    }
    let k = SimplicialComplex::from_simplices(ky.n_vertices() + c as usize, &gens)?;
    let mut level: Vec<Vec<usize>> = Vec::new();
    for d in 0..=k.top_dim().unwrap_or(0) {
        level.push(
            k.simplices(d)
                .iter()
                .map(|s| {
                    let base: Simplex = s.iter().filter(|&&v| v >= c).map(|v| v - c).collect();
                    if base.is_empty() {
                        0
                    } else {
                        y.level(base.len() - 1, ky.index_of(&base).expect("base in Y"))
                    }
                })
                .collect(),
        );
    }
    let eps = y.boundary_of_fundamental();
    let orientation = (0..k.count(n))
        .map(|i| {
            let s = k.simplex(n, i);
            let base: Simplex = s.iter().filter(|&&v| v >= c).map(|v| v - c).collect();
            if s[0] < c {
                let b = ky.index_of(&base).expect("cone base is a boundary facet");
                -(eps.get(b).signum() as i8)
            } else {
                y.orientation(ky.index_of(&base).expect("top simplex of Y"))
            }
        })
        .collect();
    Space::from_levels(k, n, level, orientation, &[])
}

/// Correspondence between the strata of a restratified space and the original.
#[derive(Clone, Debug)]
pub struct Restratification {
    pub space: Space,
    /// For each singular stratum of the new space: the original singular
    /// stratum it came from, or `None` for strata carved out of the boundary.
    pub origin: Vec<Option<u32>>,
}

impl Restratification {
    /// `p̂`: unchanged on old strata, `−(n+1)` on boundary strata, which no
    /// simplex of positive-codimension intersection can satisfy.
    pub fn lift_low(&self, p: &Perversity) -> Perversity {
        let n = self.space.dim() as i64;
        Perversity::from_values(self.origin.iter().map(|o| o.map_or(-(n + 1), |z| p.value(z))).collect())
    }

    /// `q̂`: unchanged on old strata and `t̄ − p̂` on boundary strata, so
    /// `lift_low(p) + lift_high(q) = t̄` whenever `p + q = t̄`.
    pub fn lift_high(&self, q: &Perversity) -> Perversity {
        let n = self.space.dim() as i64;
        let codims: Vec<i64> = self.space.singular_strata().iter().map(|s| s.codim as i64).collect();
        Perversity::from_values(
            self.origin.iter().zip(codims).map(|(o, c)| o.map_or(c - 2 + n + 1, |z| q.value(z))).collect(),
        )
    }
}

/// Promotes the boundary to strata: every boundary simplex drops one
/// skeleton, and the result has no declared boundary.
pub fn restratify_boundary(x: &Space) -> Result<Restratification, ComplexError> {
    if !x.has_boundary() {
        return Err(ComplexError::Precondition("restratification needs a nonempty boundary".into()));
    }
    let k = x.complex().clone();
    let level: Vec<Vec<usize>> = x
        .levels()
        .iter()
        .enumerate()
        .map(|(d, l)| l.iter().enumerate().map(|(i, &v)| if x.in_boundary(d, i) { v - 1 } else { v }).collect())
        .collect();
    let space = Space::from_levels(k, x.dim(), level, x.orientations().to_vec(), &[])?;
    let origin = space
        .singular_strata()
        .iter()
        .map(|s| {
            let d = s.representative.len() - 1;
            let i = x.complex().index_of(&s.representative).expect("same complex");
            if x.in_boundary(d, i) {
                None
            } else {
                let z = x.stratum_of(d, i);
                debug_assert_ne!(z, REGULAR);
                Some(z)
            }
        })
        .collect();
    Ok(Restratification { space, origin })
}

/// Staircase triangulation of `a × b`; vertex `(u, v)` becomes
/// `u·|V(b)| + v`. Levels add, and the orientation of each top cell is the
/// product sign times the sign of its shuffle.
pub fn staircase_product(a: &Space, b: &Space) -> Result<Space, ComplexError> {
    let (ka, kb) = (a.complex(), b.complex());
    let nb = kb.n_vertices() as u32;
    let (p, q) = (a.dim(), b.dim());
    let mut tops: Vec<(Simplex, i8)> = Vec::new();
    for (ai, alpha) in ka.simplices(p).iter().enumerate() {
        for (bi, beta) in kb.simplices(q).iter().enumerate() {
            let o = a.orientation(ai) * b.orientation(bi);
            for (cell, sign) in staircase_cells(alpha, beta, nb) {
                tops.push((cell, o * sign));
            }
        }
    }
    let k = SimplicialComplex::from_simplices(ka.n_vertices() * kb.n_vertices(), tops.iter().map(|t| t.0.as_slice()))?;
    let mut level = Vec::new();
    for d in 0..=k.top_dim().unwrap_or(0) {
        level.push(
            k.simplices(d)
                .iter()
                .map(|s| {
                    let pa: BTreeSet<u32> = s.iter().map(|v| v / nb).collect();
                    let pb: BTreeSet<u32> = s.iter().map(|v| v % nb).collect();
                    let pa: Simplex = pa.into_iter().collect();
                    let pb: Simplex = pb.into_iter().collect();
                    let la = a.level(pa.len() - 1, ka.index_of(&pa).expect("projection in A"));
                    let lb = b.level(pb.len() - 1, kb.index_of(&pb).expect("projection in B"));
                    la + lb
                })
                .collect(),
        );
    }
    let n = p + q;
    let mut orientation = vec![0i8; k.count(n)];
    for (s, o) in &tops {
        orientation[k.index_of(s).expect("top cell")] = *o;
    }
    let boundary: Vec<Simplex> = (0..k.count(n.saturating_sub(1)))
        .filter(|&i| n > 0 && k.cofaces(n - 1, i).len() == 1)
        .map(|i| k.simplex(n - 1, i).to_vec())
        .collect();
    Space::from_levels(k, n, level, orientation, &boundary)
}

/// Lattice paths through `alpha × beta`, each with its shuffle sign.
pub fn staircase_cells(alpha: &[u32], beta: &[u32], nb: u32) -> Vec<(Simplex, i8)> {
    let (p, q) = (alpha.len() - 1, beta.len() - 1);
    let mut out = Vec::new();
    // choose which of the p+q steps move in alpha
    let steps = p + q;
    for mask in 0u64..(1u64 << steps) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let (mut i, mut j) = (0usize, 0usize);
        let mut cell = vec![alpha[0] * nb + beta[0]];
        let mut inversions = 0usize;
        let mut b_seen = 0usize;
        for t in 0..steps {
            if mask & (1 << t) != 0 {
                i += 1;
                inversions += b_seen;
            } else {
                j += 1;
                b_seen += 1;
            }
            cell.push(alpha[i] * nb + beta[j]);
        }
        out.push((cell, if inversions % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// `N × X` for a closed oriented trivially stratified manifold `N`.
pub fn product_with_manifold(x: &Space, n: &Space) -> Result<Space, ComplexError> {
    if !n.singular_strata().is_empty() || n.has_boundary() {
        return Err(ComplexError::Precondition("the manifold factor must be closed and trivially stratified".into()));
    }
    let r = validate(n);
    for name in [NON_BRANCHING, ORIENTATION] {
        if r.status_of(name) != Some(Status::Pass) {
            return Err(ComplexError::Precondition(format!("the manifold factor fails the {name} check")));
        }
    }
    staircase_product(n, x)
}

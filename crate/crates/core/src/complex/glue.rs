use std::collections::{HashMap, HashSet, VecDeque};

use super::simplicial::{sort_sign, Simplex, SimplicialComplex};
use super::space::{Bicollar, Collar, Space};
use super::subdivide::{barycentric_subdivide, Subdivision};
use super::validate::collar_cells;
use super::ComplexError;

/// `X = Y1 ∪_Z Y2` with `Z` a codimension-one subcomplex.
///
/// Invariants: `X` is s-closed, `z_faces` are `(n−1)`-simplices of `X`,
/// `y1_tops` and `y2_tops` partition the top simplices, and with the induced
/// orientations `∂Y1 = Z = −∂Y2`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub x: Space,
    pub z_faces: Vec<usize>,
    pub y1_tops: Vec<usize>,
    pub y2_tops: Vec<usize>,
}

impl Decomposition {
    /// Splits `x` along the `zfaces` of its declared bicollar; the side
    /// containing the `−1` copies is `Y1`.
    pub fn from_space(x: Space) -> Result<Self, ComplexError> {
        let (z_faces, y1, y2) = split_by_bicollar(&x)?;
        Self::from_parts(x, z_faces, y1, y2)
    }

    pub fn from_parts(x: Space, mut z_faces: Vec<usize>, mut y1_tops: Vec<usize>, mut y2_tops: Vec<usize>) -> Result<Self, ComplexError> {
        if x.has_boundary() {
            return Err(ComplexError::Precondition("decomposed space must be s-closed".into()));
        }
        z_faces.sort_unstable();
        y1_tops.sort_unstable();
        y2_tops.sort_unstable();
        let n = x.dim();
        let mut side = vec![0u8; x.complex().count(n)];
        for &t in &y1_tops {
            side[t] |= 1;
        }
        for &t in &y2_tops {
            side[t] |= 2;
        }
        if side.iter().any(|&s| s != 1 && s != 2) {
            return Err(ComplexError::Invalid("Y1 and Y2 must partition the top simplices".into()));
        }
        let d = Decomposition { x, z_faces, y1_tops, y2_tops };
        let k = d.x.complex();
        let f = d.x.fundamental_chain();
        let restrict = |tops: &[usize]| f.filtered(|i| tops.binary_search(&i).is_ok());
        let b1 = k.boundary(n, &restrict(&d.y1_tops));
        let b2 = k.boundary(n, &restrict(&d.y2_tops));
        let zset: HashSet<usize> = d.z_faces.iter().copied().collect();
        for (i, c) in b1.iter() {
            let regular = d.x.is_regular(n - 1, *i);
            if zset.contains(i) != (regular && !c.is_zero()) {
                return Err(ComplexError::Invalid(format!(
                    "boundary of Y1 differs from Z at {:?}",
                    k.simplex(n - 1, *i)
                )));
            }
            if zset.contains(i) && b2.get(*i) != -c {
                return Err(ComplexError::Invalid(format!(
                    "orientation clash: ∂Y2 ≠ −Z at {:?}",
                    k.simplex(n - 1, *i)
                )));
            }
        }
        for &z in &d.z_faces {
            if b1.get(z).is_zero() {
                return Err(ComplexError::Invalid(format!("Z face {:?} is not on the boundary of Y1", k.simplex(n - 1, z))));
            }
        }
        Ok(d)
    }

    fn z_simplices(&self) -> Vec<Simplex> {
        let n = self.x.dim();
        self.z_faces.iter().map(|&z| self.x.complex().simplex(n - 1, z).to_vec()).collect()
    }

    pub fn y1(&self) -> Result<Space, ComplexError> {
        self.x.restrict_to(&self.y1_tops, &self.z_simplices())
    }

    pub fn y2(&self) -> Result<Space, ComplexError> {
        self.x.restrict_to(&self.y2_tops, &self.z_simplices())
    }

    /// `Z` as a space of dimension `n − 1`, oriented as `∂Y1`.
    pub fn z(&self) -> Result<Space, ComplexError> {
        let n = self.x.dim();
        let k = self.x.complex();
        let zs = self.z_simplices();
        let complex = SimplicialComplex::from_simplices(k.n_vertices(), &zs)?;
        let f = self.x.fundamental_chain().filtered(|i| self.y1_tops.binary_search(&i).is_ok());
        let eps = k.boundary(n, &f);
        self.x.inherit(complex, n - 1, 1, &[], |kz, i| {
            let t = k.index_of(kz.simplex(n - 1, i)).expect("Z face in X");
            eps.get(t).signum() as i8
        })
    }

    /// The decomposition transported to the barycentric subdivision.
    pub fn subdivide(&self) -> Result<(Decomposition, Subdivision), ComplexError> {
        let sd = barycentric_subdivide(&self.x)?;
        let n = self.x.dim();
        let z = sd.subdivide_tops(n - 1, &self.z_faces);
        let y1 = sd.subdivide_tops(n, &self.y1_tops);
        let y2 = sd.subdivide_tops(n, &self.y2_tops);
        let d = Decomposition::from_parts(sd.space.clone(), z, y1, y2)?;
        Ok((d, sd))
    }
}

/// `(Z faces, Y1 tops, Y2 tops)` from the declared bicollar: components of
/// `X − Z` touching the `−1` copies form `Y1`, those touching the `+1`
/// copies form `Y2`. `X` may have boundary.
pub fn split_by_bicollar(x: &Space) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>), ComplexError> {
    let bc = x.bicollar().ok_or_else(|| ComplexError::Precondition("no bicollar declared".into()))?;
    let n = x.dim();
    let k = x.complex();
    let mut z_faces = Vec::with_capacity(bc.zfaces.len());
    for zf in &bc.zfaces {
        z_faces.push(k.index_of(zf).filter(|_| zf.len() == n).ok_or_else(|| {
            ComplexError::Invalid(format!("Z face {zf:?} is not a codimension-one simplex of X"))
        })?);
    }
    let minus: HashSet<u32> = bc.triples.iter().map(|t| t.1).collect();
    let plus: HashSet<u32> = bc.triples.iter().map(|t| t.2).collect();
    let (mut y1, mut y2) = (Vec::new(), Vec::new());
    for comp in cut_components(x, &z_faces) {
        let touches = |set: &HashSet<u32>| comp.iter().any(|&t| k.simplex(n, t).iter().any(|v| set.contains(v)));
        match (touches(&minus), touches(&plus)) {
            (true, false) => y1.extend(comp),
            (false, true) => y2.extend(comp),
            _ => {
                return Err(ComplexError::Invalid(
                    "a component of X − Z does not lie on exactly one side of the bicollar".into(),
                ))
            }
        }
    }
    z_faces.sort_unstable();
    y1.sort_unstable();
    y2.sort_unstable();
    Ok((z_faces, y1, y2))
}

/// Components of top simplices connected across `(n−1)`-faces outside `cut`.
pub fn cut_components(x: &Space, cut: &[usize]) -> Vec<Vec<usize>> {
    let n = x.dim();
    let k = x.complex();
    let cut: HashSet<usize> = cut.iter().copied().collect();
    let mut comp = vec![usize::MAX; k.count(n)];
    let mut out = Vec::new();
    for s in 0..k.count(n) {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut q = VecDeque::from([s]);
        while let Some(t) = q.pop_front() {
            for &f in k.faces(n, t) {
                if cut.contains(&f) {
                    continue;
                }
                for &u in k.cofaces(n - 1, f) {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                        q.push_back(u);
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Extends the known signs (`0` = unknown) across regular codimension-one
/// faces with two cofaces.
fn propagate_orientation(x_complex: &SimplicialComplex, n: usize, regular: impl Fn(usize) -> bool, signs: &mut [i8]) -> Result<(), ComplexError> {
    let mut q: VecDeque<usize> = (0..signs.len()).filter(|&i| signs[i] != 0).collect();
    while let Some(t) = q.pop_front() {
        for (j, &f) in x_complex.faces(n, t).iter().enumerate() {
            if !regular(f) {
                continue;
            }
            for &u in x_complex.cofaces(n - 1, f) {
                if u == t {
                    continue;
                }
                let kpos = x_complex.faces(n, u).iter().position(|&g| g == f).expect("shared face");
                let want = -signs[t] * if (j + kpos) % 2 == 0 { 1 } else { -1 };
                if signs[u] == 0 {
                    signs[u] = want;
                    q.push_back(u);
                } else if signs[u] != want {
                    return Err(ComplexError::Invalid(format!("orientation clash across {:?}", x_complex.simplex(n - 1, f))));
                }
            }
        }
    }
    if let Some(i) = signs.iter().position(|&s| s == 0) {
        return Err(ComplexError::Invalid(format!("cannot orient {:?}", x_complex.simplex(n, i))));
    }
    Ok(())
}

/// Attaches a collar layer `∂Y × [0,1]`: every boundary vertex `b` gets a new
/// vertex `b*` on the new boundary, the old boundary becomes `∂Y × {1}`, and
/// the staircase uses the vertex order given by `key`.
pub fn add_collar(y: &Space, key: impl Fn(u32) -> u64) -> Result<Space, ComplexError> {
    let n = y.dim();
    let k = y.complex();
    let bverts: Vec<u32> = (0..k.count(0)).filter(|&i| y.in_boundary(0, i)).map(|i| k.simplex(0, i)[0]).collect();
    let base = k.n_vertices() as u32;
    let star: HashMap<u32, u32> = bverts.iter().enumerate().map(|(j, &b)| (b, base + j as u32)).collect();
    let inner: HashMap<u32, u32> = star.iter().map(|(&b, &s)| (s, b)).collect();
    let mut cells = Vec::new();
    let mut new_boundary = Vec::new();
    for &bf in y.boundary_facets() {
        let mut beta: Vec<u32> = k.simplex(n - 1, bf).iter().map(|v| star[v]).collect();
        beta.sort_by_key(|&s| (key(inner[&s]), s));
        cells.extend(collar_cells(&beta, &inner).expect("all boundary vertices starred"));
        let mut nb = beta.clone();
        nb.sort_unstable();
        new_boundary.push(nb);
    }
    let gens: Vec<Simplex> = k.maximal_simplices().into_iter().chain(cells.iter().cloned()).collect();
    let kk = SimplicialComplex::from_simplices(k.n_vertices() + bverts.len(), &gens)?;
    let project = |s: &[u32]| -> Simplex {
        let mut p: Simplex = s.iter().map(|v| inner.get(v).copied().unwrap_or(*v)).collect();
        p.sort_unstable();
        p.dedup();
        p
    };
    let mut level = Vec::new();
    for d in 0..=kk.top_dim().unwrap_or(0) {
        level.push(
            kk.simplices(d)
                .iter()
                .map(|s| {
                    let p = project(s);
                    y.level(p.len() - 1, k.index_of(&p).expect("projection lies in Y"))
                })
                .collect::<Vec<_>>(),
        );
    }
    let mut signs = vec![0i8; kk.count(n)];
    for i in 0..k.count(n) {
        signs[kk.index_of(k.simplex(n, i)).expect("old top")] = y.orientation(i);
    }
    let lv = level.clone();
    propagate_orientation(&kk, n, |f| lv[n - 1][f] == n, &mut signs)?;
    let mut pairs: Vec<(u32, u32)> = star.iter().map(|(&b, &s)| (s, b)).collect();
    pairs.sort_unstable();
    let mut cells_sorted = cells;
    cells_sorted.sort();
    Ok(Space::from_levels(kk, n, level, signs, &new_boundary)?.with_collar(Some(Collar { pairs, cells: cells_sorted })))
}

/// Glues `y1` and `y2` along their boundaries. `matching` sends each boundary
/// vertex of `y2` to a boundary vertex of `y1`. Fresh collar layers are added
/// on both sides, so the result carries a bicollar; orientations are never
/// flipped, and `∂Y1 = −∂Y2` must already hold.
pub fn glue(y1: &Space, y2: &Space, matching: &HashMap<u32, u32>) -> Result<Decomposition, ComplexError> {
    let n = y1.dim();
    if y2.dim() != n {
        return Err(ComplexError::Precondition("glued pieces differ in dimension".into()));
    }
    if !y1.has_boundary() || !y2.has_boundary() {
        return Err(ComplexError::Precondition("glued pieces need nonempty boundary".into()));
    }
    let y1c = add_collar(y1, |v| v as u64)?;
    let y2c = add_collar(y2, |v| matching.get(&v).map_or(u64::MAX, |&w| w as u64))?;
    let (k1, k2) = (y1c.complex(), y2c.complex());
    let star1: HashMap<u32, u32> = y1c.collar().expect("collar").pairs.iter().map(|&(s, b)| (b, s)).collect();
    let inner2: HashMap<u32, u32> = y2c.collar().expect("collar").pairs.iter().copied().collect();
    // Y2c vertex -> X vertex
    let mut vmap: HashMap<u32, u32> = HashMap::new();
    for (&s2, &b2) in &inner2 {
        let b1 = *matching
            .get(&b2)
            .ok_or_else(|| ComplexError::Invalid(format!("boundary vertex {b2} of the second piece is unmatched")))?;
        let s1 = *star1
            .get(&b1)
            .ok_or_else(|| ComplexError::Invalid(format!("vertex {b1} is not on the boundary of the first piece")))?;
        vmap.insert(s2, s1);
    }
    let mut next = k1.n_vertices() as u32;
    for v in k2.used_vertices() {
        if let std::collections::hash_map::Entry::Vacant(e) = vmap.entry(v) {
            e.insert(next);
            next += 1;
        }
    }
    let map_s = |s: &[u32]| -> Simplex {
        let mut t: Simplex = s.iter().map(|v| vmap[v]).collect();
        t.sort_unstable();
        t
    };
    let b1: HashSet<Simplex> = y1c.boundary_facets().iter().map(|&b| k1.simplex(n - 1, b).to_vec()).collect();
    let b2: HashSet<Simplex> = y2c.boundary_facets().iter().map(|&b| map_s(k2.simplex(n - 1, b))).collect();
    if b1 != b2 {
        return Err(ComplexError::Invalid("boundary complexes do not match under the vertex matching".into()));
    }
    let mut gens: Vec<Simplex> = k1.maximal_simplices();
    gens.extend(k2.maximal_simplices().iter().map(|s| map_s(s)));
    let kx = SimplicialComplex::from_simplices(next as usize, &gens)?;
    let mut level: Vec<Vec<usize>> = (0..=kx.top_dim().unwrap_or(0)).map(|d| vec![usize::MAX; kx.count(d)]).collect();
    for d in 0..=k1.top_dim().unwrap_or(0) {
        for (i, s) in k1.simplices(d).iter().enumerate() {
            level[d][kx.index_of(s).expect("Y1 simplex")] = y1c.level(d, i);
        }
    }
    for d in 0..=k2.top_dim().unwrap_or(0) {
        for (i, s) in k2.simplices(d).iter().enumerate() {
            let xi = kx.index_of(&map_s(s)).expect("Y2 simplex");
            let l = y2c.level(d, i);
            if level[d][xi] != usize::MAX && level[d][xi] != l {
                return Err(ComplexError::Invalid(format!("stratifications disagree on {:?}", kx.simplex(d, xi))));
            }
            level[d][xi] = l;
        }
    }
    let mut orientation = vec![0i8; kx.count(n)];
    let mut y1_tops = Vec::new();
    let mut y2_tops = Vec::new();
    for i in 0..k1.count(n) {
        let xi = kx.index_of(k1.simplex(n, i)).expect("Y1 top");
        orientation[xi] = y1c.orientation(i);
        y1_tops.push(xi);
    }
    for i in 0..k2.count(n) {
        let s = k2.simplex(n, i);
        let xi = kx.index_of(&map_s(s)).expect("Y2 top");
        let unsorted: Vec<u32> = s.iter().map(|v| vmap[v]).collect();
        orientation[xi] = y2c.orientation(i) * sort_sign(&unsorted) as i8;
        y2_tops.push(xi);
    }
    let x = Space::from_levels(kx, n, level, orientation, &[])?;
    let mut triples: Vec<(u32, u32, u32)> = inner2
        .iter()
        .map(|(&s2, &b2)| {
            let z = vmap[&s2];
            let m = y1c.collar().expect("collar").pairs.iter().find(|p| p.0 == z).expect("paired").1;
            (z, m, vmap[&b2])
        })
        .collect();
    triples.sort_unstable();
    let mut zfaces: Vec<Simplex> = b1.into_iter().collect();
    zfaces.sort();
    let z_faces: Vec<usize> = zfaces.iter().map(|s| x.complex().index_of(s).expect("Z face")).collect();
    let x = x.with_bicollar(Some(Bicollar { triples, zfaces }));
    Decomposition::from_parts(x, z_faces, y1_tops, y2_tops)
}

/// Identity matching on the shared boundary vertex labels.
pub fn identity_matching(y2: &Space) -> HashMap<u32, u32> {
    let k = y2.complex();
    (0..k.count(0)).filter(|&i| y2.in_boundary(0, i)).map(|i| (k.simplex(0, i)[0], k.simplex(0, i)[0])).collect()
}

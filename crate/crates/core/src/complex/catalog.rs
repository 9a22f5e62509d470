//! Named triangulations used by tests, the acceptance suite and the CLI.

use std::collections::{HashMap, VecDeque};

use super::construct::staircase_product;
use super::simplicial::{Simplex, SimplicialComplex};
use super::space::Space;
use super::ComplexError;

/// Coherent signs for a connected orientable pseudomanifold given by its top
/// simplices; the first simplex gets `+1`.
pub fn orient(facets: &[Simplex]) -> Result<Vec<(Simplex, i8)>, ComplexError> {
    let mut sorted: Vec<Simplex> = facets
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f
        })
        .collect();
    sorted.dedup();
    let mut by_face: HashMap<Simplex, Vec<(usize, usize)>> = HashMap::new();
    for (t, f) in sorted.iter().enumerate() {
        for j in 0..f.len() {
            let mut g = f.clone();
            g.remove(j);
            by_face.entry(g).or_default().push((t, j));
        }
    }
    let mut sign = vec![0i8; sorted.len()];
    for start in 0..sorted.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            let f = &sorted[t];
            for j in 0..f.len() {
                let mut g = f.clone();
                g.remove(j);
                for &(u, k) in &by_face[&g] {
                    if u == t {
                        continue;
                    }
                    // induced signs (-1)^j s_t and (-1)^k s_u must cancel
                    let want = -sign[t] * if (j + k) % 2 == 0 { 1 } else { -1 };
                    if sign[u] == 0 {
                        sign[u] = want;
                        queue.push_back(u);
                    } else if sign[u] != want {
                        return Err(ComplexError::Invalid(format!("not orientable across {g:?}")));
                    }
                }
            }
        }
    }
    Ok(sorted.into_iter().zip(sign).collect())
}

/// Trivially stratified oriented space on these top simplices; faces with a
/// single coface become the boundary.
pub fn manifold(facets: &[Simplex]) -> Result<Space, ComplexError> {
    let oriented = orient(facets)?;
    let dim = oriented[0].0.len() - 1;
    let n_vertices = oriented.iter().flat_map(|f| f.0.iter()).max().map_or(0, |&m| m as usize + 1);
    let k = SimplicialComplex::from_simplices(n_vertices, oriented.iter().map(|f| f.0.as_slice()))?;
    let boundary: Vec<Simplex> = if dim == 0 {
        Vec::new()
    } else {
        (0..k.count(dim - 1)).filter(|&i| k.cofaces(dim - 1, i).len() == 1).map(|i| k.simplex(dim - 1, i).to_vec()).collect()
    };
    Space::from_declarations(n_vertices, dim, &oriented, &[], &boundary)
}

fn build(facets: Vec<Simplex>) -> Space {
    manifold(&facets).expect("catalog triangulations are oriented pseudomanifolds")
}

/// `∂Δ^{n}`, an `(n−1)`-sphere on `n+1` vertices. For `n = 1` the two points
/// get opposite signs, so the pair bounds an interval.
pub fn delta_boundary(n: usize) -> Space {
    assert!(n >= 1);
    if n == 1 {
        return Space::from_declarations(2, 0, &[(vec![0], -1), (vec![1], 1)], &[], &[]).expect("two points");
    }
    let all: Vec<u32> = (0..=n as u32).collect();
    build((0..=n).map(|j| all.iter().copied().filter(|&v| v != j as u32).collect()).collect())
}

/// `S^n` as `∂Δ^{n+1}`.
pub fn sphere(n: usize) -> Space {
    delta_boundary(n + 1)
}

/// The standard simplex `Δ^n` as a ball with boundary.
pub fn simplex(n: usize) -> Space {
    build(vec![(0..=n as u32).collect()])
}

/// Path with `k` edges on vertices `0..=k`.
pub fn path(k: usize) -> Space {
    build((0..k as u32).map(|i| vec![i, i + 1]).collect())
}

/// Cycle with `k ≥ 3` edges.
pub fn circle(k: usize) -> Space {
    build((0..k as u32).map(|i| vec![i, (i + 1) % k as u32]).collect())
}

/// Seven-vertex torus.
pub fn torus2() -> Space {
    let mut f = Vec::new();
    for i in 0..7u32 {
        f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    build(f)
}

/// Fifteen-vertex 3-torus: the cyclic Kühnel triangulation with difference
/// steps `{1, 2, 4}`.
pub fn torus3() -> Space {
    let perms = [[1, 2, 4], [1, 4, 2], [2, 1, 4], [2, 4, 1], [4, 1, 2], [4, 2, 1]];
    let mut f = Vec::new();
    for i in 0..15u32 {
        for d in perms {
            f.push(vec![i, (i + d[0]) % 15, (i + d[0] + d[1]) % 15, (i + 7) % 15]);
        }
    }
    build(f)
}

/// Nine-vertex complex projective plane.
pub fn cp2() -> Space {
    const F: [[u32; 5]; 36] = [
        [0, 1, 2, 3, 4], [0, 1, 2, 3, 5], [0, 1, 2, 4, 5], [0, 1, 3, 4, 6], [0, 1, 3, 5, 7], [0, 1, 3, 6, 7],
        [0, 1, 4, 5, 6], [0, 1, 5, 6, 8], [0, 1, 5, 7, 8], [0, 1, 6, 7, 8], [0, 2, 3, 4, 8], [0, 2, 3, 5, 8],
        [0, 2, 4, 5, 6], [0, 2, 4, 6, 7], [0, 2, 4, 7, 8], [0, 2, 5, 6, 8], [0, 2, 6, 7, 8], [0, 3, 4, 6, 7],
        [0, 3, 4, 7, 8], [0, 3, 5, 7, 8], [1, 2, 3, 4, 8], [1, 2, 3, 5, 7], [1, 2, 3, 6, 7], [1, 2, 3, 6, 8],
        [1, 2, 4, 5, 7], [1, 2, 4, 7, 8], [1, 2, 6, 7, 8], [1, 3, 4, 6, 8], [1, 4, 5, 6, 8], [1, 4, 5, 7, 8],
        [2, 3, 5, 6, 7], [2, 3, 5, 6, 8], [2, 4, 5, 6, 7], [3, 4, 5, 6, 7], [3, 4, 5, 6, 8], [3, 4, 5, 7, 8],
    ];
    let x = build(F.iter().map(|f| f.to_vec()).collect());
    if CP2_FLIP {
        x.reversed()
    } else {
        x
    }
}

/// Whether the coherent orientation with first facet `+1` must be reversed to
/// make the intersection form positive.
const CP2_FLIP: bool = true;

/// Solid torus `∂Δ² × Δ²`: nine vertices, nine tetrahedra, boundary the
/// `3 × 3` grid torus.
pub fn solid_torus() -> Space {
    staircase_product(&delta_boundary(2), &simplex(2)).expect("product of manifolds")
}

/// `S¹ × S²` as the staircase product of a triangle and `∂Δ³`.
pub fn s1_x_s2() -> Space {
    staircase_product(&delta_boundary(2), &delta_boundary(3)).expect("product of manifolds")
}

/// `Δ^{n−1} × [−1, 1]`, an `n`-ball with boundary, carrying a bicollar on the
/// middle slice `Δ^{n−1} × {0}`. Slice `u ∈ {−1, 0, 1}` holds vertices
/// `n(u+1) + v`; both halves use the staircases that start on the middle
/// slice, which is the shape of a declared collar.
pub fn split_ball(n: usize) -> Space {
    assert!(n >= 1);
    let m = n as u32;
    let mut facets = Vec::new();
    for j in 0..m {
        for far in [0, 2 * m] {
            let mut f: Simplex = (0..=j).map(|i| m + i).chain((j..m).map(|i| far + i)).collect();
            f.sort_unstable();
            facets.push(f);
        }
    }
    let triples = (0..m).map(|v| (m + v, v, 2 * m + v)).collect();
    let zfaces = vec![(m..2 * m).collect()];
    build(facets).with_bicollar(Some(super::space::Bicollar { triples, zfaces }))
}

/// Disk as a single triangle.
pub fn disk() -> Space {
    simplex(2)
}

/// Annulus `S¹ × I` (triangle times an edge).
pub fn annulus() -> Space {
    staircase_product(&delta_boundary(2), &path(1)).expect("product of manifolds")
}

/// Two disjoint circles.
pub fn two_circles() -> Space {
    build(vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]])
}

//! Oracles built only from vertex tuples and dense rational elimination, so
//! they share no code path with the engine's sparse machinery.
#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use stratos::complex::Space;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

/// Row echelon rank of a dense matrix.
pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Reduced basis of the row space, used to test membership.
fn row_reduce(mut m: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for k in 0..cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Simplices of each dimension as sorted vertex tuples, with an index map.
pub struct Tuples {
    pub simplices: Vec<Vec<Vec<u32>>>,
    pub index: Vec<HashMap<Vec<u32>, usize>>,
}

pub fn tuples(x: &Space, keep: impl Fn(usize, usize) -> bool) -> Tuples {
    let k = x.complex();
    let mut simplices = Vec::new();
    let mut index = Vec::new();
    for d in 0..=x.dim() {
        let s: Vec<Vec<u32>> = (0..k.count(d)).filter(|&i| keep(d, i)).map(|i| k.simplex(d, i).to_vec()).collect();
        index.push(s.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect());
        simplices.push(s);
    }
    Tuples { simplices, index }
}

/// Dense boundary matrix `C_d → C_{d−1}` (rows = (d−1)-simplices), dropping
/// faces outside the tuple set.
pub fn boundary_matrix(t: &Tuples, d: usize) -> Vec<Vec<Q>> {
    let rows = t.simplices[d - 1].len();
    let cols = t.simplices[d].len();
    let mut m = vec![vec![Q::zero(); cols]; rows];
    for (j, s) in t.simplices[d].iter().enumerate() {
        for k in 0..s.len() {
            let mut f = s.clone();
            f.remove(k);
            if let Some(&i) = t.index[d - 1].get(&f) {
                m[i][j] += q(if k % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    m
}

/// Betti numbers of the chain complex spanned by the kept simplices, with
/// boundaries truncated to kept faces.
pub fn betti_of(t: &Tuples) -> Vec<usize> {
    let top = t.simplices.len();
    let ranks: Vec<usize> = (0..=top).map(|d| if d == 0 || d >= top { 0 } else { rank(boundary_matrix(t, d)) }).collect();
    (0..top).map(|d| t.simplices[d].len() - ranks[d] - ranks[d + 1]).collect()
}

pub fn betti(x: &Space) -> Vec<usize> {
    betti_of(&tuples(x, |_, _| true))
}

/// `H_*(X, A)` for a closed subcomplex `A` given by a membership test.
pub fn relative_betti(x: &Space, in_a: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    betti_of(&tuples(x, |d, i| !in_a(d, i)))
}

/// Gram matrix of `(α, β) ↦ ⟨α ∪ β, [X]⟩` on a basis of `H²` of a closed
/// oriented 4-dimensional complex, with the front-face/back-face cup.
pub fn cup_form(x: &Space) -> Vec<Vec<Q>> {
    let t = tuples(x, |_, _| true);
    let d2 = boundary_matrix(&t, 2);
    let d3 = boundary_matrix(&t, 3);
    let n2 = t.simplices[2].len();
    // cocycles: α with α ∘ ∂₃ = 0, i.e. the left kernel of d3
    let d3t: Vec<Vec<Q>> = (0..d3[0].len()).map(|j| (0..n2).map(|i| d3[i][j].clone()).collect()).collect();
    let cocycles = kernel(&d3t, n2);
    // coboundaries of edge cochains are the rows of d2
    let cobounds = d2;
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut span = cobounds.clone();
    let mut r = rank(span.clone());
    for z in cocycles {
        span.push(z.clone());
        let r2 = rank(span.clone());
        if r2 > r {
            basis.push(z);
            r = r2;
        } else {
            span.pop();
        }
    }
    let k = x.complex();
    let mut g = vec![vec![Q::zero(); basis.len()]; basis.len()];
    for ti in 0..k.count(4) {
        let s = k.simplex(4, ti);
        let o = q(x.orientation(ti) as i64);
        let front = t.index[2][&s[0..3].to_vec()];
        let back = t.index[2][&s[2..5].to_vec()];
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                let v = &basis[a][front] * &basis[b][back] * &o;
                g[a][b] += v;
            }
        }
    }
    g
}

/// Kernel of a dense matrix with `cols` columns.
pub fn kernel(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let r = row_reduce(m.to_vec());
    let mut pivots = Vec::new();
    for row in &r {
        pivots.push(row.iter().position(|v| !v.is_zero()).expect("nonzero row"));
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Signature of a symmetric matrix by symmetric elimination.
pub fn signature(m: &[Vec<Q>]) -> i64 {
    let mut a = m.to_vec();
    let n = a.len();
    let mut sig = 0;
    let mut done = vec![false; n];
    loop {
        let piv = (0..n).find(|&i| !done[i] && !a[i][i].is_zero());
        let Some(p) = piv else {
            // all remaining diagonals vanish: use an off-diagonal pair
            let pair = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !done[i] && !done[j] && i != j && !a[i][j].is_zero());
            let Some((i, j)) = pair else { break };
            // replace row/column i by i + j, making a[i][i] = 2 a[i][j] + a[j][j] ≠ 0
            for k in 0..n {
                let t = a[j][k].clone();
                a[i][k] += t;
            }
            for k in 0..n {
                let t = a[k][j].clone();
                a[k][i] += t;
            }
            continue;
        };
        done[p] = true;
        sig += if a[p][p].is_positive() { 1 } else { -1 };
        for i in 0..n {
            if !done[i] && !a[i][p].is_zero() {
                let f = &a[i][p] / &a[p][p];
                for k in 0..n {
                    let t = &f * &a[p][k];
                    a[i][k] -= t;
                }
                for k in 0..n {
                    let t = &f * &a[k][p];
                    a[k][i] -= t;
                }
            }
        }
    }
    sig
}

pub mod lagrangian {
    //! Random isotropic triples in standard symplectic space `ℚ^{2n}`.

    use rand::Rng;
    use stratos::qlinalg::{BilinearForm, QMatrix, Rational, Subspace};
    use stratos::signatures::MaslovProblem;

    pub fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    /// `[[0, I], [−I, 0]]`.
    pub fn standard_form(n: usize) -> BilinearForm {
        let mut rows = vec![vec![0i64; 2 * n]; 2 * n];
        for i in 0..n {
            rows[i][n + i] = 1;
            rows[n + i][i] = -1;
        }
        BilinearForm::new(QMatrix::from_int_rows(&rows)).unwrap()
    }

    fn symmetric(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
        let mut s = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-2..=2);
                s[i][j] = v;
                s[j][i] = v;
            }
        }
        s
    }

    /// Graph of a symmetric matrix, over either half of the coordinates.
    pub fn random_lagrangian(rng: &mut impl Rng, n: usize) -> Vec<Vec<Rational>> {
        let s = symmetric(rng, n);
        let over_first = rng.gen_bool(0.5);
        (0..n)
            .map(|j| {
                let mut v = vec![int(0); 2 * n];
                let (free, graph) = if over_first { (0, n) } else { (n, 0) };
                v[free + j] = int(1);
                for i in 0..n {
                    v[graph + i] = int(s[i][j]);
                }
                v
            })
            .collect()
    }

    /// Random combinations of `k ≤ n` vectors of a random Lagrangian.
    pub fn random_isotropic(rng: &mut impl Rng, n: usize) -> Subspace {
        let l = random_lagrangian(rng, n);
        let k = rng.gen_range(0..=n);
        let vecs: Vec<Vec<Rational>> = (0..k)
            .map(|_| {
                let mut v = vec![int(0); 2 * n];
                for b in &l {
                    let c = int(rng.gen_range(-2..=2));
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += &(&c * bi);
                    }
                }
                v
            })
            .collect();
        Subspace::span(2 * n, &vecs)
    }

    /// Product of shears `[[I, S], [0, I]]` and `[[I, 0], [S, I]]`.
    pub fn random_symplectic(rng: &mut impl Rng, n: usize) -> QMatrix {
        let mut m = QMatrix::identity(2 * n);
        for round in 0..3 {
            let s = symmetric(rng, n);
            let mut rows = vec![vec![0i64; 2 * n]; 2 * n];
            for i in 0..2 * n {
                rows[i][i] = 1;
            }
            for i in 0..n {
                for j in 0..n {
                    if round % 2 == 0 {
                        rows[i][n + j] = s[i][j];
                    } else {
                        rows[n + i][j] = s[i][j];
                    }
                }
            }
            m = m.mul_mat(&QMatrix::from_int_rows(&rows));
        }
        m
    }

    pub fn random_invertible(rng: &mut impl Rng, dim: usize) -> QMatrix {
        loop {
            let rows: Vec<Vec<i64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            let m = QMatrix::from_int_rows(&rows);
            if !m.determinant().is_zero() {
                return m;
            }
        }
    }

    /// Isotropic triple in the standard form; one subspace in four is a
    /// repeat or a sum so that the intersections are often nontrivial.
    pub fn random_problem(rng: &mut impl Rng, n: usize) -> MaslovProblem {
        let a = random_isotropic(rng, n);
        let b = random_isotropic(rng, n);
        let c = match rng.gen_range(0..4) {
            0 => a.clone(),
            1 => {
                // isotropic only when A + B is; otherwise draw fresh
                let s = a.sum(&b).unwrap();
                if standard_form(n).restrict(&s).map(|f| f.matrix().is_zero()).unwrap_or(false) {
                    s
                } else {
                    random_isotropic(rng, n)
                }
            }
            _ => random_isotropic(rng, n),
        };
        MaslovProblem::new(standard_form(n), a, b, c).unwrap()
    }

    /// The same triple moved by a map preserving the form.
    pub fn moved(p: &MaslovProblem, s: &QMatrix) -> MaslovProblem {
        MaslovProblem::new(p.phi().clone(), p.a().image_under(s), p.b().image_under(s), p.c().image_under(s)).unwrap()
    }

    /// Column spans in `ℚ²` with the standard form.
    pub fn lines(a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> MaslovProblem {
        let span = |v: [i64; 2]| Subspace::span(2, &[vec![int(v[0]), int(v[1])]]);
        MaslovProblem::new(standard_form(1), span(a), span(b), span(c)).unwrap()
    }
}

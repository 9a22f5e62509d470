use std::fmt;

use super::matrix::QMatrix;
use super::rational::Rational;
use super::subspace::Subspace;
use super::LinalgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Skew,
    None,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Skew => "skew",
            Symmetry::None => "none",
        })
    }
}

/// A bilinear form on `Q^n` given by its Gram matrix.
///
/// Invariant: `symmetry` was computed from the matrix. A zero matrix is
/// classified as symmetric; use [`BilinearForm::is_skew`] to test skewness
/// independently of the stored class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: QMatrix,
    symmetry: Symmetry,
}

impl BilinearForm {
    pub fn new(matrix: QMatrix) -> Result<Self, LinalgError> {
        if !matrix.is_square() {
            return Err(LinalgError::Shape(format!(
                "form matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let symmetry = classify(&matrix);
        Ok(BilinearForm { matrix, symmetry })
    }

    /// Builds a form and rejects it unless it has the requested symmetry.
    pub fn with_symmetry(matrix: QMatrix, want: Symmetry) -> Result<Self, LinalgError> {
        let f = Self::new(matrix)?;
        let ok = match want {
            Symmetry::Symmetric => f.is_symmetric(),
            Symmetry::Skew => f.is_skew(),
            Symmetry::None => true,
        };
        if !ok {
            return Err(LinalgError::Symmetry { wanted: want, found: f.symmetry });
        }
        Ok(BilinearForm { symmetry: want, ..f })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.matrix == self.matrix.transpose().neg()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rank() == self.size()
    }

    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mv = self.matrix.mul_vec(v);
        u.iter().zip(&mv).map(|(a, b)| a * b).sum()
    }

    pub fn negated(&self) -> Self {
        BilinearForm { matrix: self.matrix.neg(), symmetry: self.symmetry }
    }

    /// Block sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &BilinearForm) -> Self {
        let (a, b) = (self.size(), other.size());
        let mut m = QMatrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                m[(i, j)] = self.matrix[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                m[(a + i, a + j)] = other.matrix[(i, j)].clone();
            }
        }
        let symmetry = classify(&m);
        BilinearForm { matrix: m, symmetry }
    }

    /// `Pᵀ M P` for an arbitrary `n x k` matrix `P`.
    pub fn pullback(&self, p: &QMatrix) -> Self {
        let m = &(&p.transpose() * &self.matrix) * p;
        let symmetry = match self.symmetry {
            Symmetry::None => classify(&m),
            s => s,
        };
        BilinearForm { matrix: m, symmetry }
    }

    /// Restriction to a subspace, in its canonical basis.
    pub fn restrict(&self, u: &Subspace) -> Result<Self, LinalgError> {
        if u.ambient_dim() != self.size() {
            return Err(LinalgError::DimensionMismatch { expected: self.size(), found: u.ambient_dim() });
        }
        Ok(self.pullback(&u.basis()))
    }

    /// Signature `(#positive − #negative)` by symmetric Gaussian congruence.
    pub fn signature(&self) -> Result<i64, LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::Symmetry { wanted: Symmetry::Symmetric, found: self.symmetry });
        }
        Ok(congruence_signature(self.matrix.clone()))
    }
}

fn classify(m: &QMatrix) -> Symmetry {
    let t = m.transpose();
    if *m == t {
        Symmetry::Symmetric
    } else if *m == t.neg() {
        Symmetry::Skew
    } else {
        Symmetry::None
    }
}

fn swap_sym(a: &mut QMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// `row_r -= f * row_s` and `col_r -= f * col_s` simultaneously.
fn sym_axpy(a: &mut QMatrix, r: usize, s: usize, f: &Rational, from: usize) {
    let n = a.rows();
    for c in from..n {
        if !a[(s, c)].is_zero() {
            let d = f * &a[(s, c)];
            a[(r, c)] -= &d;
        }
    }
    for c in from..n {
        if !a[(c, s)].is_zero() {
            let d = f * &a[(c, s)];
            a[(c, r)] -= &d;
        }
    }
}

fn congruence_signature(mut a: QMatrix) -> i64 {
    let n = a.rows();
    let mut sig = 0i64;
    let mut k = 0;
    while k < n {
        if let Some(p) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            swap_sym(&mut a, k, p);
            let piv = a[(k, k)].clone();
            sig += piv.signum() as i64;
            let inv = piv.recip();
            for r in k + 1..n {
                if !a[(r, k)].is_zero() {
                    let f = &a[(r, k)] * &inv;
                    sym_axpy(&mut a, r, k, &f, k);
                }
            }
            k += 1;
            continue;
        }
        let off = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].is_zero());
        let Some((i, j)) = off else { break };
        // All active diagonal entries vanish: split off a hyperbolic plane.
        swap_sym(&mut a, k, i);
        swap_sym(&mut a, k + 1, j);
        let b = a[(k, k + 1)].clone();
        let binv = b.recip();
        for r in k + 2..n {
            let x = a[(r, k)].clone();
            let y = a[(r, k + 1)].clone();
            if !y.is_zero() {
                sym_axpy(&mut a, r, k, &(&y * &binv), k);
            }
            if !x.is_zero() {
                sym_axpy(&mut a, r, k + 1, &(&x * &binv), k);
            }
        }
        k += 2;
    }
    sig
}

use super::matrix::{kernel_image, QMatrix};
use super::rational::Rational;
use super::LinalgError;

/// A linear subspace of `Q^n` in canonical form.
///
/// Invariant: `rows` is the reduced row echelon basis (each vector has a 1 at
/// its pivot and 0 at every other pivot), pivots strictly increasing. Two
/// subspaces are equal iff their stored forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| unit(ambient, i)).collect();
        Subspace { ambient, rows, pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length mismatch");
        }
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let r = QMatrix::from_rows(vectors, ambient).rref();
        let rows = (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace { ambient, rows, pivots: r.pivots }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &QMatrix) -> Self {
        Self::span(m.rows(), &m.columns())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical basis vectors.
    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.rows.clone()
    }

    /// Canonical basis as the columns of an `ambient x dim` matrix (reduced
    /// column echelon form).
    pub fn basis(&self) -> QMatrix {
        QMatrix::from_columns(&self.rows, self.ambient)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(c * y);
                }
            }
        }
        r.iter().all(Rational::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Ok(Subspace::span(self.ambient, &all))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let a = self.basis();
        let b = other.basis();
        let ki = kernel_image(&a.hcat(&b.neg()));
        let k = self.dim();
        let vecs: Vec<Vec<Rational>> = ki
            .kernel
            .basis_vectors()
            .iter()
            .map(|w| a.mul_vec(&w[..k]))
            .collect();
        Ok(Subspace::span(self.ambient, &vecs))
    }

    /// Image under a linear map whose matrix has `ambient_dim` columns.
    pub fn image_under(&self, m: &QMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map domain mismatch");
        let vecs: Vec<Vec<Rational>> = self.rows.iter().map(|r| m.mul_vec(r)).collect();
        Subspace::span(m.rows(), &vecs)
    }

    /// Preimage under a linear map: `{ v : m v in self }`.
    pub fn preimage_under(&self, m: &QMatrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "map codomain mismatch");
        // v with m v = B w  <=>  [m | -B] (v, w) = 0
        let n = m.cols();
        let big = m.hcat(&self.basis().neg());
        let ki = kernel_image(&big);
        let vecs: Vec<Vec<Rational>> =
            ki.kernel.basis_vectors().iter().map(|w| w[..n].to_vec()).collect();
        Subspace::span(n, &vecs)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// A quotient `Q^n / U` with an explicit projection and section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub dim: usize,
    /// `dim x n`; annihilates `U`.
    pub projection: QMatrix,
    /// `n x dim`; `projection * section = I`.
    pub section: QMatrix,
}

/// Quotient by `u`, using the non-pivot coordinates of `u`'s canonical form
/// as the complement.
pub fn quotient(v_dim: usize, u: &Subspace) -> Result<Quotient, LinalgError> {
    if u.ambient_dim() != v_dim {
        return Err(LinalgError::DimensionMismatch { expected: v_dim, found: u.ambient_dim() });
    }
    let mut is_pivot = vec![false; v_dim];
    for &p in u.pivots() {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..v_dim).filter(|&c| !is_pivot[c]).collect();
    let mut projection = QMatrix::zeros(free.len(), v_dim);
    let mut section = QMatrix::zeros(v_dim, free.len());
    for (k, &c) in free.iter().enumerate() {
        projection[(k, c)] = Rational::one();
        section[(c, k)] = Rational::one();
        for (row, &p) in u.rows.iter().zip(u.pivots()) {
            if !row[c].is_zero() {
                projection[(k, p)] = -&row[c];
            }
        }
    }
    Ok(Quotient { dim: free.len(), projection, section })
}

use crate::qlinalg::{BilinearForm, QMatrix, Rational, Subspace};

use super::SignatureError;

/// A skew form on `V` with three isotropic subspaces.
///
/// Invariant (checked by [`MaslovProblem::new`]): `Φ` is skew and
/// `Φ(A×A) = Φ(B×B) = Φ(C×C) = 0`.
#[derive(Clone, Debug)]
pub struct MaslovProblem {
    phi: BilinearForm,
    a: Subspace,
    b: Subspace,
    c: Subspace,
}

impl MaslovProblem {
    pub fn new(phi: BilinearForm, a: Subspace, b: Subspace, c: Subspace) -> Result<Self, SignatureError> {
        let n = phi.size();
        for (name, s) in [("A", &a), ("B", &b), ("C", &c)] {
            if s.ambient_dim() != n {
                return Err(SignatureError::Contract(format!(
                    "{name} lives in dimension {}, the form in {n}",
                    s.ambient_dim()
                )));
            }
        }
        if !phi.is_skew() {
            return Err(SignatureError::Contract("Φ is not skew".into()));
        }
        for (name, s) in [("A", &a), ("B", &b), ("C", &c)] {
            if !phi.restrict(s)?.matrix().is_zero() {
                return Err(SignatureError::Isotropy(format!("Φ does not vanish on {name} × {name}")));
            }
        }
        Ok(MaslovProblem { phi, a, b, c })
    }

    pub fn dim(&self) -> usize {
        self.phi.size()
    }

    pub fn phi(&self) -> &BilinearForm {
        &self.phi
    }

    pub fn a(&self) -> &Subspace {
        &self.a
    }

    pub fn b(&self) -> &Subspace {
        &self.b
    }

    pub fn c(&self) -> &Subspace {
        &self.c
    }

    /// The problem with subspaces reordered: `perm[k]` names which of
    /// `(A, B, C)` lands in slot `k`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let s = [&self.a, &self.b, &self.c];
        MaslovProblem {
            phi: self.phi.clone(),
            a: s[perm[0]].clone(),
            b: s[perm[1]].clone(),
            c: s[perm[2]].clone(),
        }
    }

    /// Base change by an invertible `P`: `Φ ↦ PᵀΦP`, subspaces by `P⁻¹`.
    pub fn transformed(&self, p: &QMatrix) -> Result<Self, SignatureError> {
        let inv = p.inverse().ok_or_else(|| SignatureError::Contract("base change is singular".into()))?;
        let phi = self.phi.pullback(p);
        Self::new(phi, self.a.image_under(&inv), self.b.image_under(&inv), self.c.image_under(&inv))
    }
}

/// `W = A∩(B+C) / (A∩B + A∩C)` with the form `Ψ` in a chosen basis.
#[derive(Clone, Debug)]
pub struct MaslovOutcome {
    pub index: i64,
    pub w_dim: usize,
    /// Representatives in `A` of the basis of `W`.
    pub w_basis: Vec<Vec<Rational>>,
    pub psi: QMatrix,
}

/// `σ(V; A, B, C)`.
pub fn maslov_index(p: &MaslovProblem) -> Result<i64, SignatureError> {
    Ok(maslov(p)?.index)
}

pub fn maslov(p: &MaslovProblem) -> Result<MaslovOutcome, SignatureError> {
    let bc = p.b.sum(&p.c)?;
    let top = p.a.intersection(&bc)?;
    let low = p.a.intersection(&p.b)?.sum(&p.a.intersection(&p.c)?)?;
    // complement of A∩B + A∩C inside A∩(B+C), chosen greedily
    let mut trial = low.basis_vectors();
    let mut w_basis = Vec::new();
    for v in top.basis_vectors() {
        trial.push(v.clone());
        if Subspace::span(p.dim(), &trial).dim() == trial.len() {
            w_basis.push(v);
        } else {
            trial.pop();
        }
    }
    // a = −b − c for every basis vector
    let bb = p.b.basis();
    let cb = p.c.basis();
    let m = bb.hcat(&cb);
    let mut split = Vec::with_capacity(w_basis.len());
    for a in &w_basis {
        let neg: Vec<Rational> = a.iter().map(|x| -x).collect();
        let coef = m.solve(&neg).ok_or_else(|| SignatureError::Internal("an element of A∩(B+C) is not in B + C".into()))?;
        let b = bb.mul_vec(&coef[..p.b.dim()]);
        let c = cb.mul_vec(&coef[p.b.dim()..]);
        split.push((b, c));
    }
    let f = &p.phi;
    let k = w_basis.len();
    let mut psi = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let (a, (b, c)) = (&w_basis[i], &split[i]);
            let (a2, (b2, c2)) = (&w_basis[j], &split[j]);
            let chain = [
                f.eval(b, a2),
                -f.eval(c, a2),
                f.eval(c, b2),
                -f.eval(a, b2),
                f.eval(a, c2),
                -f.eval(b, c2),
            ];
            if chain.iter().any(|x| *x != chain[0]) {
                return Err(SignatureError::Internal(format!("six-fold identity fails at ({i}, {j}): {chain:?}")));
            }
            psi[(i, j)] = f.eval(a, b2);
        }
    }
    let form = BilinearForm::new(psi.clone())?;
    if !form.is_symmetric() {
        return Err(SignatureError::Internal("Ψ is not symmetric".into()));
    }
    Ok(MaslovOutcome { index: form.signature()?, w_dim: k, w_basis, psi })
}

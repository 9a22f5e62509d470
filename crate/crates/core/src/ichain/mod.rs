//! Perversity-filtered intersection chain complexes over ℚ.
//!
//! Chains are sparse vectors indexed by the simplices of one degree of the
//! ambient complex. Only regular simplices (level `n`) ever carry a
//! coefficient, and `∂₀` erases faces lying in `X^{n−1}`, so chains use the
//! stratified coefficient system throughout. A complex is a numerator
//! `C_*` together with subcomplexes `D¹_*, …` whose sum is divided out; this
//! covers absolute, relative, `q̄/p̄` and relative `q̄/p̄` complexes uniformly
//! while keeping representatives genuine chains of the numerator.

mod homology;

pub use homology::{
    connecting_map, homology, homology_dims, image_group, induced_map, les_check, les_qp, les_relative_qp, translate_chain, HomologyMap,
    HomologyResult, ImageGroup, LesReport, LesSpot,
};

use thiserror::Error;

use crate::complex::{ComplexError, Perversity, Space};
use crate::qlinalg::{Echelon, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IchainError {
    #[error("perversity {p:?} is not bounded by {q:?} stratum-wise")]
    NotBounded { p: Vec<i64>, q: Vec<i64> },
    #[error("incompatible complexes: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `dim(σ ∩ Z) ≤ i − codim Z + p̄(Z)` for every singular stratum `Z` meeting
/// the closed simplex `σ = (i, index)`.
pub fn allowable(x: &Space, i: usize, index: usize, p: &Perversity) -> bool {
    let strata = x.singular_strata();
    x.profile(i, index)
        .iter()
        .all(|&(z, m)| m as i64 <= i as i64 - strata[z as usize].codim as i64 + p.value(z))
}

/// `∂` followed by erasing faces in `X^{n−1}`.
pub fn boundary0(x: &Space, d: usize, c: &SparseVec) -> SparseVec {
    if d == 0 {
        return SparseVec::new();
    }
    x.complex().boundary(d, c).filtered(|f| x.is_regular(d - 1, f))
}

/// Per-degree basis of `I^{p̄}C_*`, optionally restricted to chains supported
/// on a closed subcomplex given as a mask.
#[derive(Clone, Debug, Default)]
pub struct ChainBasis {
    pub degrees: Vec<Vec<SparseVec>>,
}

impl ChainBasis {
    pub fn get(&self, i: usize) -> &[SparseVec] {
        self.degrees.get(i).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, i: usize) -> usize {
        self.get(i).len()
    }
}

/// Basis of `{ξ : every simplex of ξ and of ∂₀ξ is p̄-allowable}`. Allowable
/// simplices whose regular faces are all allowable contribute unit vectors;
/// the rest enter through combinations cancelling their bad faces.
pub fn chain_basis(x: &Space, p: &Perversity, support: Option<&[Vec<bool>]>) -> ChainBasis {
    let n = x.dim();
    let k = x.complex();
    let in_support = |d: usize, i: usize| support.map_or(true, |m| m.get(d).is_some_and(|row| row[i]));
    let mut degrees = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut basis = Vec::new();
        let mut bad_faces = Echelon::new();
        for i in 0..k.count(d) {
            if !x.is_regular(d, i) || !in_support(d, i) || !allowable(x, d, i, p) {
                continue;
            }
            let bad = boundary0(x, d, &SparseVec::unit(i)).filtered(|f| !allowable(x, d - 1, f, p));
            if bad.is_zero() {
                basis.push(SparseVec::unit(i));
            } else if let Err(rel) = bad_faces.insert(&bad, SparseVec::unit(i)) {
                basis.push(rel);
            }
        }
        degrees.push(basis);
    }
    ChainBasis { degrees }
}

/// Subquotient complex `C_* / (D¹_* + D²_* + …)` with every `Dʲ ⊆ C`.
#[derive(Clone, Debug)]
pub struct IntersectionComplex<'a> {
    space: &'a Space,
    pub label: String,
    pub numerator: ChainBasis,
    pub denominators: Vec<ChainBasis>,
    perversity: Perversity,
    support: Option<Vec<Vec<bool>>>,
}

impl<'a> IntersectionComplex<'a> {
    pub fn space(&self) -> &'a Space {
        self.space
    }

    /// Perversity governing the numerator.
    pub fn perversity(&self) -> &Perversity {
        &self.perversity
    }

    /// `∂₀` of the numerator basis in degree `i`.
    pub fn boundary_images(&self, i: usize) -> Vec<SparseVec> {
        self.numerator.get(i).iter().map(|c| boundary0(self.space, i, c)).collect()
    }

    /// Whether `v` is a numerator chain: supported on allowable regular
    /// simplices of the support with allowable `∂₀`.
    pub fn contains_chain(&self, i: usize, v: &SparseVec) -> bool {
        let x = self.space;
        let ok = |d: usize, s: usize| {
            x.is_regular(d, s)
                && allowable(x, d, s, &self.perversity)
                && self.support.as_ref().map_or(true, |m| m.get(d).is_some_and(|row| row[s]))
        };
        v.indices().all(|s| ok(i, s)) && (i == 0 || boundary0(x, i, v).indices().all(|s| ok(i - 1, s)))
    }

    /// All denominator vectors of degree `i`.
    pub fn denominator_vectors(&self, i: usize) -> impl Iterator<Item = &SparseVec> {
        self.denominators.iter().flat_map(move |d| d.get(i).iter())
    }

    /// `∂₀ ∘ ∂₀ = 0` on the numerator basis.
    pub fn check_d_squared(&self) -> bool {
        (2..=self.space.dim()).all(|i| {
            self.boundary_images(i).iter().all(|b| boundary0(self.space, i - 1, b).is_zero())
        })
    }
}

/// `I^{p̄}C_*(X)`.
pub fn build_complex<'a>(x: &'a Space, p: &Perversity) -> Result<IntersectionComplex<'a>, IchainError> {
    p.check_for(x)?;
    Ok(IntersectionComplex {
        space: x,
        label: format!("I^{:?}C(X)", p.values()),
        numerator: chain_basis(x, p, None),
        denominators: Vec::new(),
        perversity: p.clone(),
        support: None,
    })
}

/// `I^{p̄}C_*(Y)` for a closed subcomplex `Y ⊆ X` with allowability and `∂₀`
/// inherited from `X`.
pub fn build_subspace<'a>(
    x: &'a Space,
    y: &[Vec<bool>],
    p: &Perversity,
) -> Result<IntersectionComplex<'a>, IchainError> {
    p.check_for(x)?;
    Ok(IntersectionComplex {
        space: x,
        label: format!("I^{:?}C(Y)", p.values()),
        numerator: chain_basis(x, p, Some(y)),
        denominators: Vec::new(),
        perversity: p.clone(),
        support: Some(y.to_vec()),
    })
}

/// `I^{p̄}C_*(X, Y) = I^{p̄}C_*(X) / I^{p̄}C_*(Y)`.
pub fn build_relative<'a>(
    x: &'a Space,
    y: &[Vec<bool>],
    p: &Perversity,
) -> Result<IntersectionComplex<'a>, IchainError> {
    p.check_for(x)?;
    Ok(IntersectionComplex {
        space: x,
        label: format!("I^{:?}C(X,Y)", p.values()),
        numerator: chain_basis(x, p, None),
        denominators: vec![chain_basis(x, p, Some(y))],
        perversity: p.clone(),
        support: None,
    })
}

/// `I^{q̄/p̄}C_*(X)`, or `I^{q̄}C(X) / (I^{p̄}C(X) + I^{q̄}C(Y))` with `Y`.
/// Denominator part 0 is always the `p̄` part and part 1 the `Y` part.
pub fn build_qp_quotient<'a>(
    x: &'a Space,
    y: Option<&[Vec<bool>]>,
    p: &Perversity,
    q: &Perversity,
) -> Result<IntersectionComplex<'a>, IchainError> {
    check_le(x, p, q)?;
    let mut denominators = vec![chain_basis(x, p, None)];
    if let Some(y) = y {
        denominators.push(chain_basis(x, q, Some(y)));
    }
    Ok(IntersectionComplex {
        space: x,
        label: format!("I^{:?}/{:?}C(X{})", q.values(), p.values(), if y.is_some() { ",Y" } else { "" }),
        numerator: chain_basis(x, q, None),
        denominators,
        perversity: q.clone(),
        support: None,
    })
}

/// `I^{q̄/p̄}C_*(Y)` inside `X`.
pub fn build_qp_subspace<'a>(
    x: &'a Space,
    y: &[Vec<bool>],
    p: &Perversity,
    q: &Perversity,
) -> Result<IntersectionComplex<'a>, IchainError> {
    check_le(x, p, q)?;
    Ok(IntersectionComplex {
        space: x,
        label: format!("I^{:?}/{:?}C(Y)", q.values(), p.values()),
        numerator: chain_basis(x, q, Some(y)),
        denominators: vec![chain_basis(x, p, Some(y))],
        perversity: q.clone(),
        support: Some(y.to_vec()),
    })
}

fn check_le(x: &Space, p: &Perversity, q: &Perversity) -> Result<(), IchainError> {
    p.check_for(x)?;
    q.check_for(x)?;
    if !p.le(q) {
        return Err(IchainError::NotBounded { p: p.values().to_vec(), q: q.values().to_vec() });
    }
    Ok(())
}

/// Renders a chain as `simplex:coefficient` pairs.
pub fn format_chain(x: &Space, d: usize, v: &SparseVec) -> String {
    let parts: Vec<String> = v.iter().map(|(i, c)| format!("{:?}:{}", x.complex().simplex(d, *i), c)).collect();
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{catalog, closure_mask, cone};

    fn betti(x: &Space, p: &Perversity) -> Vec<usize> {
        let c = build_complex(x, p).unwrap();
        (0..=x.dim()).map(|i| homology(&c, i).dim()).collect()
    }

    #[test]
    fn sphere_and_torus_betti() {
        let s = catalog::sphere(2);
        assert_eq!(betti(&s, &Perversity::zero(&s)), vec![1, 0, 1]);
        let t = catalog::torus2();
        assert_eq!(betti(&t, &Perversity::zero(&t)), vec![1, 2, 1]);
    }

    #[test]
    fn apex_allowability() {
        let x = cone(&catalog::torus2()).unwrap();
        let k = x.complex();
        let apex = x.singular_strata()[0].representative[0];
        let zero = Perversity::zero(&x);
        let top = Perversity::top(&x);
        assert_eq!(x.singular_strata()[0].codim, 3);
        let edge = (0..k.count(1)).find(|&i| k.simplex(1, i).contains(&apex)).unwrap();
        assert!(!allowable(&x, 1, edge, &zero));
        let tri = (0..k.count(2)).find(|&i| k.simplex(2, i).contains(&apex)).unwrap();
        assert!(allowable(&x, 2, tri, &top));
        let far = (0..k.count(2)).find(|&i| !k.simplex(2, i).contains(&apex)).unwrap();
        assert!(allowable(&x, 2, far, &Perversity::constant(&x, -5)));
    }

    #[test]
    fn cone_on_torus_truncates() {
        let x = cone(&catalog::torus2()).unwrap();
        assert_eq!(betti(&x, &Perversity::zero(&x)), vec![1, 2, 0, 0]);
        assert_eq!(betti(&x, &Perversity::top(&x)), vec![1, 0, 0, 0]);
    }

    #[test]
    fn relative_disk_has_fundamental_class() {
        let d = catalog::disk();
        let y = d.boundary_mask().to_vec();
        let c = build_relative(&d, &y, &Perversity::zero(&d)).unwrap();
        let dims: Vec<usize> = (0..=2).map(|i| homology(&c, i).dim()).collect();
        assert_eq!(dims, vec![0, 0, 1]);
    }

    #[test]
    fn relative_to_everything_vanishes() {
        let t = catalog::torus2();
        let all: Vec<usize> = (0..t.complex().count(2)).collect();
        let y = closure_mask(t.complex(), 2, &all);
        let c = build_relative(&t, &y, &Perversity::zero(&t)).unwrap();
        assert!((0..=2).all(|i| homology(&c, i).dim() == 0));
    }

    #[test]
    fn quotient_rejects_unordered_perversities() {
        let x = cone(&catalog::torus2()).unwrap();
        let err = build_qp_quotient(&x, None, &Perversity::top(&x), &Perversity::zero(&x)).unwrap_err();
        assert!(matches!(err, IchainError::NotBounded { .. }));
    }

    #[test]
    fn equal_perversities_give_zero_quotient() {
        let x = cone(&catalog::torus2()).unwrap();
        let p = Perversity::lower_middle(&x);
        let c = build_qp_quotient(&x, None, &p, &p).unwrap();
        assert!((0..=3).all(|i| homology(&c, i).dim() == 0));
    }

    #[test]
    fn chain_bases_are_monotone_and_square_to_zero() {
        let x = cone(&catalog::torus2()).unwrap();
        let p = Perversity::zero(&x);
        let q = Perversity::top(&x);
        let (cp, cq) = (build_complex(&x, &p).unwrap(), build_complex(&x, &q).unwrap());
        assert!(cp.check_d_squared() && cq.check_d_squared());
        for i in 0..=3 {
            assert!(cp.numerator.get(i).iter().all(|v| cq.contains_chain(i, v)));
            assert!(cp.numerator.dim(i) <= cq.numerator.dim(i));
        }
    }
}

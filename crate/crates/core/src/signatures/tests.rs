use super::*;
use crate::complex::construct::cone;
use crate::complex::glue::identity_matching;
use crate::complex::{catalog, glue};
use crate::qlinalg::{BilinearForm, QMatrix, Rational, Subspace};

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| Rational::from_int(x)).collect()
}

fn plane(a: &[i64], b: &[i64], c: &[i64]) -> MaslovProblem {
    let phi = BilinearForm::new(QMatrix::from_int_rows(&[vec![0, 1], vec![-1, 0]])).unwrap();
    let s = |x: &[i64]| Subspace::span(2, &[v(x)]);
    MaslovProblem::new(phi, s(a), s(b), s(c)).unwrap()
}

#[test]
fn hand_evaluated_planes() {
    assert_eq!(maslov_index(&plane(&[1, 0], &[0, 1], &[1, 1])).unwrap(), 1);
    assert_eq!(maslov_index(&plane(&[1, 0], &[0, 1], &[1, -1])).unwrap(), -1);
}

#[test]
fn equal_subspaces_vanish() {
    assert_eq!(maslov_index(&plane(&[1, 0], &[0, 1], &[1, 0])).unwrap(), 0);
    assert_eq!(maslov_index(&plane(&[1, 2], &[1, 2], &[3, 1])).unwrap(), 0);
}

#[test]
fn odd_permutation_negates() {
    let p = plane(&[1, 0], &[0, 1], &[1, 1]);
    assert_eq!(maslov_index(&p.permuted([1, 0, 2])).unwrap(), -1);
    assert_eq!(maslov_index(&p.permuted([1, 2, 0])).unwrap(), 1);
}

#[test]
fn non_isotropic_subspace_rejected() {
    let phi = BilinearForm::new(QMatrix::from_int_rows(&[vec![0, 1], vec![-1, 0]])).unwrap();
    let e = Subspace::span(2, &[v(&[1, 0])]);
    let r = MaslovProblem::new(phi, Subspace::full(2), e.clone(), e);
    assert!(matches!(r, Err(SignatureError::Isotropy(_))));
}

#[test]
fn symmetric_form_rejected() {
    let phi = BilinearForm::new(QMatrix::identity(2)).unwrap();
    let z = Subspace::zero(2);
    assert!(matches!(MaslovProblem::new(phi, z.clone(), z.clone(), z), Err(SignatureError::Contract(_))));
}

#[test]
fn sphere_signature_vanishes() {
    let x = catalog::sphere(4);
    let z = crate::complex::Perversity::zero(&x);
    assert_eq!(perverse_signature(&x, &z, &z, 0).unwrap(), 0);
}

#[test]
fn cp2_signature_is_one() {
    let x = catalog::cp2();
    let z = crate::complex::Perversity::zero(&x);
    assert_eq!(perverse_signature(&x, &z, &z, 1).unwrap(), 1);
    assert_eq!(perverse_signature(&x.reversed(), &z, &z, 1).unwrap(), -1);
}

#[test]
fn four_sphere_from_two_balls() {
    let c = cone(&catalog::sphere(3)).unwrap();
    let d = glue(&c, &c.reversed(), &identity_matching(&c)).unwrap();
    let p = crate::complex::Perversity::zero(&d.x);
    let r = verify_wall(&d, &p, &p.complement(&d.x), 2).unwrap();
    assert!(r.holds(), "{r}");
    assert_eq!((r.sigma_x, r.sigma_y1, r.sigma_y2, r.maslov), (0, 0, 0, 0));
}

#[test]
fn half_balls_of_a_four_ball() {
    let x = catalog::split_ball(4);
    let bd = BoundaryDecomposition::from_space(x.clone()).unwrap();
    let p = crate::complex::Perversity::zero(&x);
    let r = verify_wall_boundary(&bd, &p, &p, 2).unwrap();
    assert!(r.holds(), "{r}");
    assert_eq!((r.direct_x, r.direct_y1, r.direct_y2, r.hat.maslov), (0, 0, 0, 0));
    // ∂Z is the subdivided boundary of a tetrahedron
    assert_eq!(bd.z().unwrap().boundary_facets().len(), 24);
}

#[test]
fn disk_restratification_dims() {
    let x = catalog::disk();
    let p = crate::complex::Perversity::zero(&x);
    for c in restratification_dims(&x, &p, &p).unwrap() {
        assert!(c.holds(), "{c:?}");
    }
}

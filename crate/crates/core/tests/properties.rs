//! Randomised invariants across the library. Each proptest case draws a
//! seed and builds its inputs from a ChaCha stream, so failures replay.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::lagrangian;
use stratos::complex::glue::identity_matching;
use stratos::complex::subdivide::subdivide_chain;
use stratos::complex::{
    barycentric_subdivide, catalog, cone, emit_ssp, glue, parse_ssp, restratify_boundary, suspension, validate,
    Decomposition, Perversity, Space,
};
use stratos::ichain::{boundary0, build_complex, build_qp_quotient, build_relative, chain_basis, homology, homology_dims};
use stratos::pairing::intersection_gram;
use stratos::qlinalg::{kernel_image, BilinearForm, Echelon, QMatrix, Rational, SparseVec};
use stratos::signatures::{maslov_index, verify_wall};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn int_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> QMatrix {
    let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-bound..=bound)).collect()).collect();
    QMatrix::from_int_rows(&m)
}

fn symmetric(r: &mut ChaCha8Rng, n: usize) -> BilinearForm {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = r.gen_range(-3..=3);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    BilinearForm::new(QMatrix::from_int_rows(&m)).unwrap()
}

/// Small spaces with and without singular strata and boundary.
fn small_space(k: usize) -> Space {
    match k % 7 {
        0 => catalog::sphere(2),
        1 => catalog::torus2(),
        2 => cone(&catalog::torus2()).unwrap(),
        3 => suspension(&catalog::torus2()).unwrap(),
        4 => suspension(&catalog::two_circles()).unwrap(),
        5 => catalog::solid_torus(),
        _ => cone(&catalog::circle(4)).unwrap(),
    }
}

fn random_perversity(r: &mut ChaCha8Rng, x: &Space) -> Perversity {
    let vals = Perversity::top(x).values().iter().map(|&t| r.gen_range(-1..=t + 1)).collect();
    Perversity::from_values(vals)
}

fn random_chain(r: &mut ChaCha8Rng, x: &Space, d: usize) -> SparseVec {
    let count = x.complex().count(d);
    let pairs = (0..r.gen_range(1..=4)).map(|_| (r.gen_range(0..count), Rational::from_int(r.gen_range(-3..=3)))).collect();
    SparseVec::from_pairs(pairs)
}

fn combination(r: &mut ChaCha8Rng, vs: &[SparseVec]) -> SparseVec {
    let mut out = SparseVec::new();
    for v in vs {
        out.axpy(&Rational::from_int(r.gen_range(-2..=2)), v);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity_and_transpose(seed: u64) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..=7), r.gen_range(1..=7));
        let m = int_matrix(&mut r, rows, cols, 2);
        let ki = kernel_image(&m);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(ki.rank, m.rank());
        prop_assert_eq!(ki.kernel.dim() + ki.rank, cols);
        prop_assert_eq!(ki.image.dim(), ki.rank);
    }

    #[test]
    fn signature_survives_congruence(seed: u64) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=8);
        let f = symmetric(&mut r, n);
        let p = lagrangian::random_invertible(&mut r, n);
        prop_assert_eq!(f.pullback(&p).signature().unwrap(), f.signature().unwrap());
    }

    #[test]
    fn signature_is_additive_and_odd(seed: u64) {
        let mut r = rng(seed);
        let (a, b) = (r.gen_range(1..=5), r.gen_range(1..=5));
        let (f, g) = (symmetric(&mut r, a), symmetric(&mut r, b));
        let (sf, sg) = (f.signature().unwrap(), g.signature().unwrap());
        prop_assert_eq!(f.negated().signature().unwrap(), -sf);
        prop_assert_eq!(f.direct_sum(&g).signature().unwrap(), sf + sg);
    }

    #[test]
    fn reciprocal_products_are_one(seed: u64) {
        let mut r = rng(seed);
        for _ in 0..1000 {
            // wide numerators push some values onto the big-integer path
            let a = Rational::new(r.gen::<i64>() | 1, r.gen_range(1..=i64::MAX));
            let b = Rational::new(r.gen_range(1..=1 << 40), r.gen_range(1..=1 << 20));
            let x = &a / &b;
            let y = &b / &a;
            prop_assert_eq!(&x * &y, Rational::one());
        }
    }

    #[test]
    fn maslov_permutation_signs(seed: u64) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let p = lagrangian::random_problem(&mut r, n);
        let idx = maslov_index(&p).unwrap();
        for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1]] {
            prop_assert_eq!(maslov_index(&p.permuted(perm)).unwrap(), idx);
        }
        for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0]] {
            prop_assert_eq!(maslov_index(&p.permuted(perm)).unwrap(), -idx);
        }
    }

    #[test]
    fn maslov_base_change_and_symplectic_maps(seed: u64) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let p = lagrangian::random_problem(&mut r, n);
        let idx = maslov_index(&p).unwrap();
        let basis = lagrangian::random_invertible(&mut r, 2 * n);
        prop_assert_eq!(maslov_index(&p.transformed(&basis).unwrap()).unwrap(), idx);
        let s = lagrangian::random_symplectic(&mut r, n);
        prop_assert_eq!(maslov_index(&lagrangian::moved(&p, &s)).unwrap(), idx);
    }

    #[test]
    fn maslov_vanishes_on_repeats(seed: u64) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let p = lagrangian::random_problem(&mut r, n);
        for perm in [[0, 0, 1], [0, 1, 1], [2, 1, 2]] {
            prop_assert_eq!(maslov_index(&p.permuted(perm)).unwrap(), 0);
        }
    }

    #[test]
    fn euler_characteristics_of_constructions(k in 0usize..4) {
        let bases = [catalog::sphere(2), catalog::torus2(), catalog::two_circles(), catalog::torus3()];
        let l = &bases[k];
        let chi = l.euler_characteristic();
        let c = cone(l).unwrap();
        prop_assert_eq!(c.euler_characteristic(), 1);
        prop_assert_eq!(suspension(l).unwrap().euler_characteristic(), 2 - chi);
        if l.dim() >= 2 {
            let d = glue(&c, &c.reversed(), &identity_matching(&c)).unwrap();
            let chi_z = d.z().unwrap().euler_characteristic();
            prop_assert_eq!(d.x.euler_characteristic(), 2 * c.euler_characteristic() - chi_z);
            prop_assert!(validate(&d.x).is_valid());
        }
        prop_assert!(validate(&c).is_valid());
    }

    #[test]
    fn restratified_boundary_forgets_back(k in 0usize..3) {
        let x = [catalog::disk(), catalog::solid_torus(), cone(&catalog::torus2()).unwrap()][k].clone();
        let r = restratify_boundary(&x).unwrap();
        prop_assert!(validate(&r.space).is_valid());
        let (back, orig) = (r.space.forget_strata(), x.forget_strata());
        prop_assert_eq!(back.complex(), orig.complex());
    }

    #[test]
    fn subdivision_is_a_chain_map(seed: u64, k in 0usize..7) {
        let mut r = rng(seed);
        let x = small_space(k);
        let sd = barycentric_subdivide(&x).unwrap();
        let k0 = x.complex();
        let ks = sd.space.complex();
        for _ in 0..100 {
            let d = r.gen_range(1..=x.dim());
            let c = random_chain(&mut r, &x, d);
            let pairs = |v: &SparseVec| v.iter().cloned().collect::<Vec<_>>();
            let lhs = ks.boundary(d, &subdivide_chain(&sd, d, &pairs(&c)));
            let rhs = subdivide_chain(&sd, d - 1, &pairs(&k0.boundary(d, &c)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ssp_round_trip(k in 0usize..7, sub in any::<bool>()) {
        let x = small_space(k);
        let x = if sub { barycentric_subdivide(&x).unwrap().space } else { x };
        let text = emit_ssp(&x);
        let back = parse_ssp(&text).unwrap();
        prop_assert_eq!(emit_ssp(&back), text);
    }

    #[test]
    fn chain_bases_square_to_zero_and_grow_with_perversity(seed: u64, k in 0usize..7) {
        let mut r = rng(seed);
        let x = small_space(k);
        let p = random_perversity(&mut r, &x);
        let q = Perversity::from_values(p.values().iter().map(|v| v + r.gen_range(0..=2)).collect());
        let (bp, bq) = (chain_basis(&x, &p, None), chain_basis(&x, &q, None));
        prop_assert!(build_complex(&x, &p).unwrap().check_d_squared());
        for i in 0..=x.dim() {
            let mut span_q = Echelon::new();
            for v in bq.get(i) {
                span_q.push(v);
            }
            for v in bp.get(i) {
                prop_assert!(span_q.contains(v), "degree {} chain of I^p not in I^q", i);
                if i >= 2 {
                    prop_assert!(boundary0(&x, i - 1, &boundary0(&x, i, v)).is_zero());
                }
            }
        }
    }

    #[test]
    fn rank_dimensions_match_representatives(seed: u64, k in 0usize..7) {
        let mut r = rng(seed);
        let x = small_space(k);
        let p = random_perversity(&mut r, &x);
        let q = Perversity::from_values(p.values().iter().map(|v| v + r.gen_range(0..=2)).collect());
        let mask = x.has_boundary().then(|| x.boundary_mask().to_vec());
        let mut complexes = vec![build_complex(&x, &p).unwrap(), build_qp_quotient(&x, mask.as_deref(), &p, &q).unwrap()];
        if let Some(m) = &mask {
            complexes.push(build_relative(&x, m, &p).unwrap());
        }
        for c in &complexes {
            let reps: Vec<usize> = (0..=x.dim()).map(|i| homology(c, i).dim()).collect();
            prop_assert_eq!(homology_dims(c), reps, "{}", c.label);
        }
    }

    #[test]
    fn intersection_numbers_are_graded_symmetric(seed: u64, k in 0usize..3) {
        let mut r = rng(seed);
        // closed test spaces with a complementary pair of degrees
        let (x, i) = [(catalog::torus2(), 1), (suspension(&catalog::torus2()).unwrap(), 1), (catalog::torus3(), 1)][k].clone();
        let m = x.dim();
        let p = Perversity::zero(&x);
        let q = p.complement(&x);
        let (cp, cq) = (build_complex(&x, &p).unwrap(), build_complex(&x, &q).unwrap());
        let (ha, hb) = (homology(&cp, i), homology(&cq, m - i));
        prop_assume!(ha.dim() > 0 && hb.dim() > 0);
        let a = combination(&mut r, &ha.reps);
        let b = combination(&mut r, &hb.reps);
        let ab = intersection_gram(&x, i, &[a.clone()], &[b.clone()], &q).unwrap();
        let ba = intersection_gram(&x, m - i, &[b], &[a], &p).unwrap();
        let sign = if ((m - i) * i) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(ab.row(0)[0].clone(), &ba.row(0)[0] * &Rational::from_int(sign));
    }
}

/// The nine-vertex CP² cut along the link of vertex 0.
fn cp2_split(x: Space) -> Decomposition {
    let k = x.complex();
    let y1: Vec<usize> = (0..k.count(4)).filter(|&i| k.simplex(4, i).contains(&0)).collect();
    let y2: Vec<usize> = (0..k.count(4)).filter(|&i| !k.simplex(4, i).contains(&0)).collect();
    let z: Vec<usize> = (0..k.count(3))
        .filter(|&i| !k.simplex(3, i).contains(&0) && k.cofaces(3, i).iter().any(|t| y1.contains(t)))
        .collect();
    Decomposition::from_parts(x, z, y1, y2).unwrap()
}

#[test]
fn orientation_reversal_negates_every_wall_term() {
    let d = cp2_split(catalog::cp2());
    let e = cp2_split(catalog::cp2().reversed());
    let p = Perversity::zero(&d.x);
    let a = verify_wall(&d, &p, &p, 2).unwrap();
    let b = verify_wall(&e, &p, &p, 2).unwrap();
    assert!(a.holds() && b.holds());
    assert_eq!(a.sigma_x, 1);
    assert_eq!(
        (b.sigma_x, b.sigma_y1, b.sigma_y2, b.maslov),
        (-a.sigma_x, -a.sigma_y1, -a.sigma_y2, -a.maslov)
    );
}

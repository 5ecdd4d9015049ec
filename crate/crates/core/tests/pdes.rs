use adjinv::field::{rat, GaussRat};
use adjinv::linalg::determinant;
use adjinv::pdes::poly::names;
use adjinv::pdes::*;
use adjinv::par::Workers;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
}

#[test]
fn g2_transform_matches_printed_cubic() {
    let printed = Poly::parse(&matrix_vars(2), "27*u11^2 - u12^2*u22^2 + u11*u22^3 + 16*u12^3 - 18*u11*u12*u22").unwrap();
    let c = chow_transform_g2();
    assert_eq!(c.poly, printed.normalized());
    assert_eq!(c.poly.content(), BigInt::one());
    assert!(c.poly.leading_term().unwrap().1.is_positive());
    let v = matrix_vars(2);
    let zero = Poly::zero(&v);
    let u = |k| Poly::var(&v, k);
    // u12 = u22 = 0 leaves 27 u11^2, u11 = u22 = 0 leaves 16 u12^3
    assert_eq!(c.poly.compose(&[u(0), zero.clone(), zero.clone()]).normalized().to_string(), "u11^2");
    assert_eq!(c.poly.compose(&[zero.clone(), u(1), zero.clone()]).normalized().to_string(), "u12^3");
    // the excluded branch [1:0:0:0] lies on the hypersurface
    assert!(c.poly.compose(&[zero.clone(), zero, u(2)]).is_zero());
    assert_eq!(pluecker_degree(&c.poly, 2, 4).unwrap(), Some(3));
    assert_eq!(subadjoint_degree("G2".parse().unwrap()).unwrap().degree, BigInt::from(3));
}

#[test]
fn g2_resultant_detects_common_roots() {
    // at u = (u11, u12, u22) built from a common root (t, s) = (1, r)
    let c = chow_transform_g2();
    for (r, u22) in [(2i64, 1i64), (-1, 5), (3, -2)] {
        let (r, u22) = (rat(r, 1), rat(u22, 1));
        // 3 s^2 + u12 t^2 + u22 t s = 0 and s^3 = u11 t^3 + u12 t^2 s
        let u12 = -(rat(3, 1) * &r * &r + &u22 * &r);
        let u11 = &r * &r * &r - &u12 * &r;
        assert!(c.poly.eval(&[u11, u12, u22]).is_zero());
    }
    assert!(!c.poly.eval(&[rat(1, 1), rat(0, 1), rat(0, 1)]).is_zero());
}

#[test]
fn b3_substituted_system_matches_printed_list() {
    let data = b3_data().unwrap();
    let v = b3_substituted_vars();
    let p = |s: &str| Poly::parse(&v, s).unwrap();
    let printed = [
        p("x1*u12*x1 + x1*u22*x2 + x1*u23*x3 - x2*u11*x1 - x2*u12*x2 - x2*u13*x3"),
        p("x1*u13*x1 + x1*u23*x2 + x1*u33*x3 - x3*u11*x1 - x3*u12*x2 - x3*u13*x3"),
        p("x2*u13*x1 + x2*u23*x2 + x2*u33*x3 - x3*u12*x1 - x3*u22*x2 - x3*u23*x3"),
        p("u11*x1^2 + 2*u12*x2*x1 + u22*x2^2 + u33*x3^2 + 2*x3*u13*x1 + 2*x3*u23*x2"),
        p("x1^2 + x2^2 + x3^2"),
    ];
    for (k, q) in printed.iter().enumerate() {
        assert_eq!(&data.substituted[k], q, "q{}", k + 1);
    }
    let row = |i: usize| {
        let mut acc = Poly::zero(&v);
        for j in 0..3 {
            acc = &acc + &(&Poly::var(&v, var_index(3, i, j)) * &Poly::var(&v, 6 + j));
        }
        acc
    };
    let q6 = &(&row(0).pow(2) + &row(1).pow(2)) + &row(2).pow(2);
    assert_eq!(data.substituted[5], q6);
    assert_eq!(data.generators.len(), 6);
}

#[test]
fn b3_invariant_shape() {
    let f = b3_data().unwrap().f;
    assert_eq!(f.len(), 123);
    assert!(f.is_homogeneous());
    assert_eq!(f.degree(), Some(6));
    let u12 = var_index(3, 0, 1);
    let mut m = vec![0; 6];
    m[u12] = 6;
    assert_eq!(f.coefficient(&m), BigInt::from(4));
    assert_eq!(pluecker_degree(&f, 3, 4).unwrap(), Some(4));
    assert_eq!(Poly::parse(f.vars(), &f.to_string()).unwrap(), f);
}

#[test]
fn b3_membership_sampling() {
    let r = verify_b3_membership(200, 7, Workers::default()).unwrap();
    assert_eq!(r.zeros, 200);
    assert!(r.failures.is_empty());
    assert!(r.off_nonzero * 100 >= 99 * r.off_variety);
    assert_eq!(r, verify_b3_membership(200, 7, Workers::SEQUENTIAL).unwrap());
}

#[test]
fn null_conic_parameterization() {
    for p in [rat(0, 1), rat(1, 1), rat(-3, 7), rat(5, 2)] {
        let one = Q::one();
        let a = GaussRat::real(&one - &p * &p);
        let b = GaussRat::new(Q::zero(), &one + &p * &p);
        let c = GaussRat::real(rat(2, 1) * &p);
        let s = a.clone() * a + b.clone() * b + c.clone() * c;
        assert_eq!(s, GaussRat::real(Q::zero()));
    }
}

fn cofactor_trace(n: usize) -> Poly {
    // trace of the adjugate: sum of the cofactors of the diagonal entries
    let u = symbolic_matrix(n);
    let mut acc = Poly::zero(&matrix_vars(n));
    for k in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let sub: Vec<Vec<Poly>> = rest.iter().map(|&i| rest.iter().map(|&j| u[i][j].clone()).collect()).collect();
        acc = &acc + &det_poly(&sub);
    }
    acc
}

#[test]
fn type_d4_quadric_identity() {
    let f = pde_type_D(4).unwrap().poly;
    let det = pde_type_A(4).unwrap().poly;
    let tr = principal_minor_trace(4, 1).unwrap();
    let tr2 = principal_minor_trace(4, 2).unwrap();
    let rhs = &(&det - &(&tr * &cofactor_trace(4)).scale(&BigInt::from(4))) + &(&tr2 * &tr2).scale(&BigInt::from(3));
    assert_eq!(f, rhs.scale(&BigInt::from(2)));
    assert!(f.is_homogeneous());
    assert_eq!(pluecker_degree(&f, 4, 2).unwrap(), Some(2));
    // at U = I: sum_i (-1)^i C(4,i)^3
    let id = int_matrix(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let closed: i64 = (0..=4).map(|i| [1i64, -1][i % 2] * [1i64, 4, 6, 4, 1][i].pow(3)).sum();
    assert_eq!(pde_type_D(4).unwrap().eval(&id), rat(closed, 1));
}

#[test]
fn type_d6_matches_numeric_definition() {
    let f = pde_type_D(6).unwrap();
    let u = int_matrix(&[
        &[2, 1, 0, -1, 3, 1],
        &[1, -2, 4, 0, 1, 2],
        &[0, 4, 1, 1, -1, 0],
        &[-1, 0, 1, 3, 2, 1],
        &[3, 1, -1, 2, 0, 5],
        &[1, 2, 0, 1, 5, -3],
    ]);
    let binom = [1i64, 6, 15, 20, 15, 6, 1];
    let mut expected = Q::zero();
    for i in 0..=6 {
        let term = principal_minor_trace_of(&u, i).unwrap() * principal_minor_trace_of(&u, 6 - i).unwrap();
        expected += term * rat(binom[i] * [1, -1][i % 2], 1);
    }
    assert_eq!(f.eval(&u), expected);
    assert_eq!(principal_minor_trace_of(&u, 6).unwrap(), determinant(&u));
}

fn rotation() -> Vec<Vec<Q>> {
    let mut o = int_matrix(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    o[0][0] = rat(3, 5);
    o[0][1] = rat(4, 5);
    o[1][0] = rat(-4, 5);
    o[1][1] = rat(3, 5);
    o
}

#[test]
fn type_d4_orthogonal_invariance() {
    let f = pde_type_D(4).unwrap();
    let signed_perm = int_matrix(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    let reports = verify_invariance(&f, &[Action::Conjugate(signed_perm), Action::Conjugate(rotation())], 6, 3).unwrap();
    for r in reports {
        assert!(r.ok, "{r:?}");
        assert_eq!((r.k, r.c), (0, Q::one()));
    }
    assert!(verify_invariance(&f, &[Action::Conjugate(int_matrix(&[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]))], 4, 1).is_err());
}

fn fractional(a: i64, b: i64, c: i64, d: i64) -> Action {
    Action::Fractional { a: rat(a, 1), b: rat(b, 1), c: rat(c, 1), d: rat(d, 1) }
}

#[test]
fn type_d4_torus_and_inversion() {
    let f = pde_type_D(4).unwrap();
    let scale = Action::Fractional { a: rat(2, 1), b: rat(0, 1), c: rat(0, 1), d: rat(1, 2) };
    let reports = verify_invariance(&f, &[fractional(0, 1, -1, 0), scale], 5, 9).unwrap();
    assert!(reports.iter().all(|r| r.ok), "{reports:?}");
    assert_eq!((reports[0].k, reports[0].c.clone()), (2, Q::one()));
}

#[test]
fn printed_quadric_is_not_translation_invariant() {
    let f = pde_type_D(4).unwrap();
    let shift = fractional(1, 0, 1, 1);
    let r = &verify_invariance(&f, std::slice::from_ref(&shift), 5, 2).unwrap()[0];
    assert!(!r.ok);
    let g = pde_type_D_sl2_invariant(4).unwrap();
    let actions = [shift, fractional(1, 2, 0, 1), fractional(2, 1, 3, 2), fractional(0, 1, -1, 0)];
    for r in verify_invariance(&g, &actions, 5, 2).unwrap() {
        assert!(r.ok, "{r:?}");
        assert_eq!(r.c, Q::one());
    }
    assert_eq!(pluecker_degree(&g.poly, 4, 2).unwrap(), Some(2));
}

#[test]
fn type_a_multiplier_law() {
    let a = pde_type_A(3).unwrap();
    let congruence = Action::Congruence(int_matrix(&[&[1, 2, 0], &[0, 1, 0], &[3, 0, 2]]));
    let reports = verify_invariance(&a, &[fractional(1, 2, 0, 1), fractional(1, -3, 0, 1), congruence], 5, 4).unwrap();
    assert!(reports.iter().all(|r| r.ok), "{reports:?}");
    assert_eq!((reports[0].k, reports[0].c.clone()), (1, Q::one()));
    assert_eq!(reports[2].c, rat(4, 1));
    let general = verify_invariance(&a, &[fractional(2, 1, 3, 2)], 4, 1);
    assert!(general.map_or(true, |r| !r[0].ok), "c != 0 maps do not preserve the determinant");
}

fn pure(xi: [i64; 2], e: &[i64]) -> TensorVector<Q> {
    let e: Vec<Q> = e.iter().map(|&x| rat(x, 1)).collect();
    TensorVector::pure(&[rat(xi[0], 1), rat(xi[1], 1)], &e)
}

#[test]
fn quartic_examples() {
    let v = pure([2, 3], &[1, 0, 1]);
    assert!(evaluate_q([&v, &v, &v, &v]).unwrap().is_zero());
    let a = pure([1, 0], &[1, 0, 0]);
    let b = pure([0, 1], &[0, 1, 0]);
    // eps = 1 twice, <e1,e1><e2,e2> = 1, <e2,e1><e1,e2> = 0
    assert_eq!(evaluate_q_raw([&a, &b, &a, &b]).unwrap(), rat(1, 1));
    let b1 = pure([0, 1], &[1, 0, 0]);
    assert_eq!(evaluate_q_raw([&a, &b, &a, &pure([0, 1], &[0, 0, 0])]).unwrap(), rat(0, 1));
    assert_eq!(evaluate_q_raw([&a, &pure([0, 1], &[0, 1, 0]), &pure([1, 0], &[1, 0, 0]), &pure([0, 1], &[0, 1, 0])]).unwrap(), rat(1, 1));
    assert_eq!(evaluate_q_raw([&a, &pure([0, 1], &[0, 1, 0]), &pure([1, 0], &[0, 1, 0]), &pure([0, 1], &[1, 0, 0])]).unwrap(), rat(-1, 1));
    let vs = [pure([1, 2], &[1, 0, 2]), pure([0, 1], &[1, 1, 0]), b1, pure([3, -1], &[0, 2, 1])];
    let s = evaluate_q([&vs[0], &vs[1], &vs[2], &vs[3]]).unwrap();
    assert_eq!(evaluate_q([&vs[2], &vs[0], &vs[3], &vs[1]]).unwrap(), s);
    assert!(evaluate_q([&vs[0], &vs[1], &vs[2], &pure([1, 1], &[1, 1])]).is_err());
}

fn frame(xis: &[(i64, i64)]) -> Vec<[Q; 2]> {
    xis.iter().map(|&(a, b)| [rat(a, 1), rat(b, 1)]).collect()
}

#[test]
fn qn_fast_path_matches_definition() {
    for xis in [frame(&[(1, 0), (0, 1)]), frame(&[(1, 2), (3, -1), (2, 5)]), frame(&[(1, 0), (1, 1), (1, 2), (1, 3)])] {
        let f = SymplecticFrame::diagonal(&xis);
        assert_eq!(evaluate_qn(&f).unwrap(), evaluate_qn_diagonal(&xis).unwrap(), "{xis:?}");
    }
}

#[test]
fn qn_positivity_and_degenerate_frames() {
    for n in 3..=4 {
        let xis: Vec<[Q; 2]> = (0..n).map(|i| [rat(1, 1), rat(2 * i as i64 + 1, 3)]).collect();
        assert!(evaluate_qn(&SymplecticFrame::diagonal(&xis)).unwrap().is_positive());
    }
    let same = frame(&[(2, 1), (2, 1), (2, 1)]);
    assert!(evaluate_qn(&SymplecticFrame::diagonal(&same)).unwrap().is_zero());
    let bad = SymplecticFrame { vectors: vec![pure([1, 0], &[1, 0]), pure([0, 1], &[1, 0])] };
    assert!(evaluate_qn(&bad).is_err());
    let big = frame(&[(1, 0); 6]);
    assert!(evaluate_qn(&SymplecticFrame::diagonal(&big)).is_err());
}

#[test]
fn subadjoint_degrees_two_ways() {
    for ty in ["A2", "A3", "A5", "B3", "B4", "D4", "D5", "D6", "E6", "E7", "F4", "G2"] {
        let t = ty.parse().unwrap();
        assert_eq!(subadjoint_degree(t).unwrap().degree, subadjoint_degree_by_orbits(t).unwrap(), "{ty}");
    }
    // the stored E8 constant disagrees with the degree of E7/P7 in P^55
    let e8 = "E8".parse().unwrap();
    assert_eq!(subadjoint_degree(e8).unwrap().degree, BigInt::from(13188));
    assert_eq!(subadjoint_degree_by_orbits(e8).unwrap(), BigInt::from(13110));
    assert!(!e7_alternative_quotient().is_integer());
    assert!(e7_alternative_quotient() < rat(1, 1));
}

#[test]
fn polynomial_json_round_trip() {
    let f = b3_data().unwrap().f;
    assert_eq!(Poly::from_json(f.vars(), &f.to_json()).unwrap(), f);
    let v = names(&["a", "b"]);
    assert!(Poly::from_json(&v, &serde_json::json!({"1": "2"})).is_err());
}

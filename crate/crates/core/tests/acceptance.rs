//! End-to-end checks of every reproduced result, one PASS/FAIL line each.

use std::io::Write;
use std::time::Instant;

use adjinv::branching::ring_dimension;
use adjinv::contact::contact_grading;
use adjinv::field::rat;
use adjinv::kostant::{dimension_identity, generate_wp_for};
use adjinv::par::Workers;
use adjinv::pdes::*;
use adjinv::quadrics::{quadric_invariant_dimension, quadric_system, relation_system};
use adjinv::branching::{decompose_by_subtraction, WeightMultiset};
use adjinv::rootsys::{CartanType, RootSystem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// B3 ring dimension in degree 4, pinned after the first computation.
const B3_DEGREE_FOUR: i64 = 1;

struct Report {
    failed: Vec<usize>,
}

impl Report {
    fn record(&mut self, id: usize, ok: bool, started: Instant, detail: String) {
        let status = if ok { "PASS" } else { "FAIL" };
        // written past the harness capture so the lines land in the test log
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "[{status}] criterion {id:>2}: {detail} ({:.2?})", started.elapsed());
        if !ok {
            self.failed.push(id);
        }
    }
}

fn ty(s: &str) -> CartanType {
    s.parse().unwrap()
}

fn ring(s: &str, d: usize) -> BigInt {
    ring_dimension(ty(s), d).unwrap()
}

/// Smallest d with a nonzero count, given counts for d = 1, 2, ...
fn first_nonzero(counts: &[BigInt]) -> Option<usize> {
    counts.iter().position(|c| c.is_positive()).map(|k| k + 1)
}

fn minimal_degrees(r: &mut Report) {
    let t = Instant::now();
    let mut rows = Vec::new();
    for s in ["A3", "A4"] {
        rows.push((s, first_nonzero(&[ring(s, 1)]), 1));
    }
    rows.push(("B3", first_nonzero(&(1..=4).map(|d| ring("B3", d)).collect::<Vec<_>>()), 4));
    for s in ["D4", "D5"] {
        rows.push((s, first_nonzero(&[ring(s, 1), ring(s, 2)]), 2));
    }
    // degree 1 is the count of invariants in the top fundamental summand;
    // degree 2 is the quadric invariant
    for s in ["E6", "E7", "E8"] {
        let c = quadric_system(ty(s), Workers::default()).unwrap();
        let n = contact_grading(ty(s)).unwrap().n();
        let d1 = BigInt::from(c.fundamental[&n]);
        rows.push((s, first_nonzero(&[d1, c.d[&n].clone()]), 2));
    }
    rows.push(("F4", first_nonzero(&(1..=4).map(|d| ring("F4", d)).collect::<Vec<_>>()), 4));
    rows.push(("G2", first_nonzero(&(1..=3).map(|d| ring("G2", d)).collect::<Vec<_>>()), 3));
    let ok = rows.iter().all(|(_, got, want)| *got == Some(*want));
    let shown: Vec<String> = rows.iter().map(|(s, got, _)| format!("{s}:{}", got.map_or("-".into(), |d| d.to_string()))).collect();
    r.record(1, ok, t, format!("minimal degrees {}", shown.join(" ")));
}

fn quadric_dimensions(r: &mut Report) {
    let t = Instant::now();
    let dims: Vec<BigInt> = ["E6", "E7", "E8"].iter().map(|s| quadric_invariant_dimension(ty(s)).unwrap()).collect();
    let ok = dims.iter().all(|d| d.is_one());
    r.record(2, ok, t, format!("quadric dims E6/E7/E8 = {dims:?}"));
}

fn f4_ring(r: &mut Report) {
    let t = Instant::now();
    let dims: Vec<BigInt> = (1..=4).map(|d| ring("F4", d)).collect();
    let ok = dims == [0, 0, 0, 1].map(BigInt::from);
    r.record(3, ok, t, format!("F4 ring dims d=1..4 = {dims:?}"));
}

fn b3_ring(r: &mut Report) {
    let t = Instant::now();
    let dims: Vec<BigInt> = (2..=4).map(|d| ring("B3", d)).collect();
    let ok = dims[0] == BigInt::from(0) && dims[1] == BigInt::from(0) && dims[2] == BigInt::from(B3_DEGREE_FOUR);
    r.record(4, ok, t, format!("B3 ring dims d=2..4 = {dims:?} (d=4 pinned at {B3_DEGREE_FOUR})"));
}

fn g2(r: &mut Report) {
    let t = Instant::now();
    let dims: Vec<BigInt> = (1..=3).map(|d| ring("G2", d)).collect();
    let printed = Poly::parse(&matrix_vars(2), "27*u11^2 - u12^2*u22^2 + u11*u22^3 + 16*u12^3 - 18*u11*u12*u22").unwrap();
    let chow = chow_transform_g2();
    let ok = dims == [0, 0, 1].map(BigInt::from) && chow.poly == printed.normalized();
    r.record(5, ok, t, format!("G2 ring dims {dims:?}, transform {}", chow.poly));
}

fn d4_cross(r: &mut Report) {
    let t = Instant::now();
    let q = quadric_invariant_dimension(ty("D4")).unwrap();
    let d = ring("D4", 2);
    let ok = q == d && q >= BigInt::one();
    let note = if q.is_one() { "equal to 1, confirming the conjectured entry" } else { "greater than 1" };
    r.record(6, ok, t, format!("D4 quadric system {q} = ring dimension {d}, {note}"));
}

fn kostant(r: &mut Report) {
    let t = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for s in ["G2", "B3", "D4", "F4", "E6", "E7", "E8"] {
        let g = contact_grading(ty(s)).unwrap();
        let n = g.n();
        let cosets = generate_wp_for(&g, n);
        let degrees: Vec<usize> = if s.starts_with("E7") || s.starts_with("E8") { vec![1, 2, n] } else { (1..=n).collect() };
        for i in degrees {
            let (lhs, rhs) = dimension_identity(&g, &cosets, i).unwrap();
            checked += 1;
            if lhs != rhs {
                bad.push(format!("{s} i={i}: {lhs} != {rhs}"));
            }
        }
    }
    r.record(7, bad.is_empty(), t, format!("Kostant dimension identity, {checked} degrees checked {bad:?}"));
}

fn wp_totals(r: &mut Report) {
    let t = Instant::now();
    let mut shown = Vec::new();
    let mut ok = true;
    for s in ["A3", "B3", "D4", "G2", "F4", "E6", "E7", "E8"] {
        let g = contact_grading(ty(s)).unwrap();
        let total = generate_wp_for(&g, usize::MAX).total();
        let orbit = g.root_system().weyl_orbit(g.gamma()).len();
        ok &= total == orbit;
        shown.push(format!("{s}:{total}"));
    }
    ok &= shown.last().map(String::as_str) == Some("E8:240");
    r.record(8, ok, t, format!("|W^p| = |W.gamma|: {}", shown.join(" ")));
}

fn subadjoint(r: &mut Report) {
    let t = Instant::now();
    let expected = [("A3", 2), ("B3", 4), ("D5", 10), ("E6", 42), ("E7", 286), ("E8", 13188), ("F4", 16), ("G2", 3)];
    let mut ok = true;
    for (s, want) in expected {
        ok &= subadjoint_degree(ty(s)).unwrap().degree == BigInt::from(want);
    }
    let e8_orbits = subadjoint_degree_by_orbits(ty("E8")).unwrap();
    r.record(9, ok, t, format!("subadjoint degrees match the stored table (E8 orbit-degree cross-check gives {e8_orbits})"));
}

fn b3_sampling(r: &mut Report) {
    let t = Instant::now();
    let rep = verify_b3_membership(1000, 2024, Workers::default()).unwrap();
    let ok = rep.zeros == 1000 && rep.failures.is_empty() && rep.off_nonzero * 100 >= rep.off_variety * 99;
    r.record(10, ok, t, format!("B3 on-variety zeros {}/{}, off-variety nonzero {}/{}", rep.zeros, rep.samples, rep.off_nonzero, rep.off_variety));
}

fn cofactor_trace(n: usize) -> Poly {
    let u = symbolic_matrix(n);
    let mut acc = Poly::zero(&matrix_vars(n));
    for k in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let sub: Vec<Vec<Poly>> = rest.iter().map(|&i| rest.iter().map(|&j| u[i][j].clone()).collect()).collect();
        acc = &acc + &det_poly(&sub);
    }
    acc
}

fn fractional(a: i64, b: i64, c: i64, d: i64) -> Action {
    Action::Fractional { a: rat(a, 1), b: rat(b, 1), c: rat(c, 1), d: rat(d, 1) }
}

fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
}

fn identities(r: &mut Report) {
    let t = Instant::now();
    let f = pde_type_D(4).unwrap();
    let det = pde_type_A(4).unwrap().poly;
    let tr = principal_minor_trace(4, 1).unwrap();
    let tr2 = principal_minor_trace(4, 2).unwrap();
    let rhs = (&(&det - &(&tr * &cofactor_trace(4)).scale(&BigInt::from(4))) + &(&tr2 * &tr2).scale(&BigInt::from(3))).scale(&BigInt::from(2));
    let identity = f.poly == rhs;

    let mut rot = mat(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    rot[0][0] = rat(3, 5);
    rot[0][1] = rat(4, 5);
    rot[1][0] = rat(-4, 5);
    rot[1][1] = rat(3, 5);
    let signed = mat(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    let scale = Action::Fractional { a: rat(2, 1), b: rat(0, 1), c: rat(0, 1), d: rat(1, 2) };
    let d_actions = [Action::Conjugate(signed), Action::Conjugate(rot), fractional(0, 1, -1, 0), scale];
    let d_reports = verify_invariance(&f, &d_actions, 5, 11).unwrap();

    let g = pde_type_D_sl2_invariant(4).unwrap();
    let g_actions = [fractional(1, 0, 1, 1), fractional(1, 2, 0, 1), fractional(2, 1, 3, 2), fractional(0, 1, -1, 0)];
    let g_reports = verify_invariance(&g, &g_actions, 5, 11).unwrap();

    let a = pde_type_A(3).unwrap();
    let a_actions = [fractional(1, 2, 0, 1), fractional(1, -3, 0, 1), Action::Congruence(mat(&[&[1, 2, 0], &[0, 1, 0], &[3, 0, 2]]))];
    let a_reports = verify_invariance(&a, &a_actions, 5, 11).unwrap();

    let translation = &verify_invariance(&f, &[fractional(1, 0, 1, 1)], 5, 11).unwrap()[0];
    let passed = |rs: &[ActionReport]| rs.iter().all(|x| x.ok);
    let ok = identity && passed(&d_reports) && passed(&g_reports) && passed(&a_reports);
    r.record(
        11,
        ok,
        t,
        format!(
            "D4 identity {identity}; orthogonal/inversion/torus {}, sl2 quadric fractional {}, type A {}; translation on the alternating-binomial form: {}",
            passed(&d_reports),
            passed(&g_reports),
            passed(&a_reports),
            if translation.ok { "invariant" } else { "not invariant" }
        ),
    );
}

fn product_rules(r: &mut Report) {
    let t = Instant::now();
    let mut checked = 0;
    let mut ok = true;
    for n in 2..=4 {
        let cn = RootSystem::symplectic(n).unwrap();
        // the assembled system only exists for even n; the rules are checked for every n below
        for rel in relation_system(n).unwrap_or_default() {
            let (lhs, rhs) = rel.dimensions().unwrap();
            ok &= lhs == rhs;
            checked += 1;
        }
        ok &= oracle_matches(&cn, n);
    }
    r.record(12, ok, t, format!("product rules for n = 2..4 ({checked} relations) match character products"));
}

/// Compare each rule against a brute-force decomposition of the product of
/// fundamental characters.
fn oracle_matches(cn: &RootSystem, n: usize) -> bool {
    use adjinv::branching::freudenthal_character;
    use adjinv::quadrics::{fundamental, sym_square_terms, symbol_weight, tensor_terms};
    let expand = |i: usize| freudenthal_character(cn, &fundamental(n, i)).unwrap().expand(cn);
    let tally = |terms: Vec<adjinv::quadrics::Symbol>| {
        let mut m = std::collections::BTreeMap::new();
        for s in terms {
            *m.entry(symbol_weight(n, &s)).or_insert(BigInt::from(0)) += 1;
        }
        m
    };
    let decomp = |m: &WeightMultiset| decompose_by_subtraction(m, cn).unwrap();
    for i in 1..=n {
        if decomp(&expand(i).symmetric_square()) != tally(sym_square_terms(n, i)) {
            return false;
        }
        for j in i + 1..=n {
            if decomp(&expand(i).product(&expand(j))) != tally(tensor_terms(n, i, j)) {
                return false;
            }
        }
    }
    true
}

fn quartic_power(r: &mut Report) {
    let t = Instant::now();
    let mut ok = true;
    let mut values = Vec::new();
    for n in 3..=4 {
        let xis: Vec<[BigRational; 2]> = (0..n).map(|i| [rat(1, 1), rat(2 * i as i64 + 1, 3)]).collect();
        let general = evaluate_qn(&SymplecticFrame::diagonal(&xis)).unwrap();
        let fast = evaluate_qn_diagonal(&xis).unwrap();
        ok &= general == fast && general.is_positive();
        values.push(general.to_string());
    }
    r.record(13, ok, t, format!("q^n general = fast path and positive, n=3,4: {values:?}"));
}

#[test]
fn acceptance() {
    let mut r = Report { failed: Vec::new() };
    minimal_degrees(&mut r);
    quadric_dimensions(&mut r);
    f4_ring(&mut r);
    b3_ring(&mut r);
    g2(&mut r);
    d4_cross(&mut r);
    kostant(&mut r);
    wp_totals(&mut r);
    subadjoint(&mut r);
    b3_sampling(&mut r);
    identities(&mut r);
    product_rules(&mut r);
    quartic_power(&mut r);
    assert!(r.failed.is_empty(), "failed criteria: {:?}", r.failed);
}

//! Explicit invariant second-order PDEs in the coordinates `u_ij` of the
//! symmetric Hessian matrix `U`, the canonical quartic `q`, and degrees of
//! subadjoint varieties.

pub mod poly;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contact::contact_grading;
use crate::error::{Error, Result};
use crate::field::{self, rat, GaussRat};
use crate::linalg::{determinant, inverse, mat_mul, solve_affine, transpose};
use crate::par::{self, Workers};
use crate::rootsys::{binomial, CartanType, Family, RootSystem};

pub use poly::Poly;

/// Largest matrix size the symbolic constructors accept.
pub const MAX_SYMBOLIC_N: usize = 8;

/// Largest frame size for the general `q^n` evaluation, which costs
/// `O((n!)^3)`.
pub const QN_MAX: usize = 5;

/// Names `u11, u12, .., u1n, u22, ..` of the entries on and above the
/// diagonal.
pub fn matrix_vars(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            out.push(format!("u{i}{j}"));
        }
    }
    out
}

/// Position of `u_ij` (0-based `i`, `j`) in [`matrix_vars`].
pub fn var_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SYMBOLIC_N {
        return Err(Error::rejected(format!("matrix size {n} outside 1..={MAX_SYMBOLIC_N}")));
    }
    Ok(())
}

pub fn symbolic_matrix(n: usize) -> Vec<Vec<Poly>> {
    let vars = matrix_vars(n);
    (0..n).map(|i| (0..n).map(|j| Poly::var(&vars, var_index(n, i, j))).collect()).collect()
}

/// Determinant by Laplace expansion over column subsets.
pub fn det_poly(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(n > 0 && n <= 16, "determinant size");
    let vars = m[0][0].vars().to_vec();
    let mut prev: HashMap<u32, Poly> = HashMap::from([(0u32, Poly::constant(&vars, 1))]);
    for (k, row) in m.iter().enumerate() {
        let mut next: HashMap<u32, Poly> = HashMap::new();
        for (&mask, minor) in &prev {
            if minor.is_zero() {
                continue;
            }
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 || entry.is_zero() {
                    continue;
                }
                // cofactor sign of (row k, position of column j in the new set)
                let pos = (mask & ((1 << j) - 1)).count_ones() as usize;
                let t = (minor * entry).scale(&BigInt::from(if (k + pos) % 2 == 0 { 1 } else { -1 }));
                let e = next.entry(mask | (1 << j)).or_insert_with(|| Poly::zero(&vars));
                *e = &*e + &t;
            }
        }
        prev = next;
    }
    prev.remove(&((1u32 << n) - 1)).unwrap_or_else(|| Poly::zero(&vars))
}

fn submatrix<T: Clone>(m: &[Vec<T>], rows: &[usize], cols: &[usize]) -> Vec<Vec<T>> {
    rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect()
}

/// `tr U^(i)`, the sum of the principal `i x i` minors; `tr U^(0) = 1`.
pub fn principal_minor_trace(n: usize, i: usize) -> Result<Poly> {
    check_size(n)?;
    if i > n {
        return Err(Error::rejected(format!("minor order {i} exceeds {n}")));
    }
    let u = symbolic_matrix(n);
    let vars = matrix_vars(n);
    let mut acc = Poly::zero(&vars);
    for s in subsets(n, i) {
        let d = if i == 0 { Poly::constant(&vars, 1) } else { det_poly(&submatrix(&u, &s, &s)) };
        acc = &acc + &d;
    }
    Ok(acc)
}

/// Numeric `tr U^(i)`.
pub fn principal_minor_trace_of<F: field::Field>(u: &[Vec<F>], i: usize) -> Result<F> {
    let n = u.len();
    if i > n {
        return Err(Error::rejected(format!("minor order {i} exceeds {n}")));
    }
    if i == 0 {
        return Ok(F::one());
    }
    Ok(subsets(n, i).iter().fold(F::zero(), |acc, s| acc + determinant(&submatrix(u, s, s))))
}

/// A polynomial in the entries of a symmetric `n x n` matrix, with its
/// degree in the minors when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorPolynomial {
    pub n: usize,
    pub poly: Poly,
    pub pluecker_degree: Option<usize>,
}

impl MinorPolynomial {
    pub fn eval<F: field::Field>(&self, u: &[Vec<F>]) -> F {
        let vals: Vec<F> = (0..self.n).flat_map(|i| (i..self.n).map(move |j| (i, j))).map(|(i, j)| u[i][j].clone()).collect();
        self.poly.eval(&vals)
    }
}

/// `det U`: the parabolic Monge-Ampere equation.
#[allow(non_snake_case)]
pub fn pde_type_A(n: usize) -> Result<MinorPolynomial> {
    check_size(n)?;
    Ok(MinorPolynomial { n, poly: det_poly(&symbolic_matrix(n)), pluecker_degree: Some(1) })
}

/// `F(U) = sum_i (-1)^i C(n,i) tr U^(i) tr U^(n-i)`.
#[allow(non_snake_case)]
pub fn pde_type_D(n: usize) -> Result<MinorPolynomial> {
    if n % 2 != 0 {
        return Err(Error::rejected(format!("n = {n} is odd: no quadric invariant")));
    }
    if n < 4 {
        return Err(Error::rejected("type D needs n >= 4"));
    }
    check_size(n)?;
    let traces: Vec<Poly> = (0..=n).map(|i| principal_minor_trace(n, i)).collect::<Result<_>>()?;
    let mut f = Poly::zero(&matrix_vars(n));
    for i in 0..=n {
        let c = BigInt::from(binomial(n as i64, i as i64)) * if i % 2 == 0 { 1 } else { -1 };
        f = &f + &(&traces[i] * &traces[n - i]).scale(&c);
    }
    Ok(MinorPolynomial { n, poly: f, pluecker_degree: Some(2) })
}

/// `sum_i (-1)^i i! (n-i)! tr U^(i) tr U^(n-i)`: the same pairing of
/// `tr U^(i)` and `tr U^(n-i)` but weighted by the `SL_2`-invariant form on
/// `S^n C^2`, so that it transforms with a multiplier under
/// `U -> (cI + dU)(aI + bU)^(-1)`. Divided by its content.
#[allow(non_snake_case)]
pub fn pde_type_D_sl2_invariant(n: usize) -> Result<MinorPolynomial> {
    if n % 2 != 0 {
        return Err(Error::rejected(format!("n = {n} is odd: no quadric invariant")));
    }
    if n < 4 {
        return Err(Error::rejected("type D needs n >= 4"));
    }
    check_size(n)?;
    let traces: Vec<Poly> = (0..=n).map(|i| principal_minor_trace(n, i)).collect::<Result<_>>()?;
    let mut f = Poly::zero(&matrix_vars(n));
    for i in 0..=n {
        let c = factorial(i as u32) * factorial((n - i) as u32) * if i % 2 == 0 { 1 } else { -1 };
        f = &f + &(&traces[i] * &traces[n - i]).scale(&c);
    }
    Ok(MinorPolynomial { n, poly: f.normalized(), pluecker_degree: Some(2) })
}

/// All minors of the symmetric matrix, one per unordered pair of row and
/// column sets, including the empty minor `1`. These are the Pluecker
/// coordinates of the graph of `U`.
pub fn all_minors(n: usize) -> Result<Vec<(usize, Poly)>> {
    check_size(n)?;
    let u = symbolic_matrix(n);
    let vars = matrix_vars(n);
    let mut out = vec![(0, Poly::constant(&vars, 1))];
    for k in 1..=n {
        let sets = subsets(n, k);
        for (a, r) in sets.iter().enumerate() {
            for c in &sets[a..] {
                out.push((k, det_poly(&submatrix(&u, r, c))));
            }
        }
    }
    Ok(out)
}

/// Incrementally reduced row-echelon basis over the rationals with sparse
/// rows keyed by monomial.
struct SparseSpan {
    pivots: BTreeMap<Vec<u32>, BTreeMap<Vec<u32>, BigRational>>,
}

impl SparseSpan {
    fn new() -> Self {
        SparseSpan { pivots: BTreeMap::new() }
    }

    fn reduce(&self, mut v: BTreeMap<Vec<u32>, BigRational>) -> BTreeMap<Vec<u32>, BigRational> {
        let mut from: Option<Vec<u32>> = None;
        loop {
            let next = match &from {
                None => v.keys().find(|k| self.pivots.contains_key(*k)).cloned(),
                Some(f) => v
                    .range::<Vec<u32>, _>((std::ops::Bound::Excluded(f.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.pivots.contains_key(*k))
                    .cloned(),
            };
            let Some(col) = next else { return v };
            let f = v[&col].clone();
            for (k, x) in &self.pivots[&col] {
                let e = v.entry(k.clone()).or_insert_with(BigRational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            from = Some(col);
        }
    }

    fn insert(&mut self, v: BTreeMap<Vec<u32>, BigRational>) {
        let v = self.reduce(v);
        let Some((col, lead)) = v.iter().next().map(|(k, x)| (k.clone(), x.clone())) else { return };
        let row: BTreeMap<_, _> = v.into_iter().map(|(k, x)| (k, x / &lead)).collect();
        self.pivots.insert(col, row);
    }

    fn contains(&self, v: BTreeMap<Vec<u32>, BigRational>) -> bool {
        self.reduce(v).is_empty()
    }
}

fn as_rational_row(p: &Poly) -> BTreeMap<Vec<u32>, BigRational> {
    p.terms().iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))).collect()
}

/// Multisets of size `k` from `items` (by index) whose degrees sum to `e`.
fn degree_multisets(degrees: &[usize], k: usize, e: usize) -> Vec<Vec<usize>> {
    fn rec(degrees: &[usize], start: usize, k: usize, e: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if e == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..degrees.len() {
            if degrees[i] <= e {
                cur.push(i);
                rec(degrees, i, k - 1, e - degrees[i], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(degrees, 0, k, e, &mut Vec::new(), &mut out);
    out
}

/// Least `k <= max_k` such that `p` is a linear combination of products of
/// `k` minors of the `n x n` symmetric matrix, checked exactly one
/// homogeneous component at a time.
pub fn pluecker_degree(p: &Poly, n: usize, max_k: usize) -> Result<Option<usize>> {
    if p.vars() != matrix_vars(n).as_slice() {
        return Err(Error::rejected("polynomial is not in the entries of the matrix"));
    }
    if p.is_zero() {
        return Ok(Some(0));
    }
    let minors = all_minors(n)?;
    let degrees: Vec<usize> = minors.iter().map(|(d, _)| *d).collect();
    let components = p.homogeneous_components();
    'k: for k in 1..=max_k {
        for (&e, comp) in &components {
            let e = e as usize;
            if e > k * n {
                continue 'k;
            }
            let mut span = SparseSpan::new();
            for combo in degree_multisets(&degrees, k, e) {
                let mut prod = minors[combo[0]].1.clone();
                for &i in &combo[1..] {
                    prod = &prod * &minors[i].1;
                }
                span.insert(as_rational_row(&prod));
            }
            if !span.contains(as_rational_row(comp)) {
                continue 'k;
            }
        }
        return Ok(Some(k));
    }
    Ok(None)
}

/// Sylvester matrix of two binary forms given by coefficients of
/// `t^deg, t^(deg-1) s, .., s^deg`.
pub fn sylvester(f: &[Poly], g: &[Poly]) -> Vec<Vec<Poly>> {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let size = df + dg;
    let vars = f[0].vars().to_vec();
    let mut m = vec![vec![Poly::zero(&vars); size]; size];
    for r in 0..dg {
        for (k, c) in f.iter().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..df {
        for (k, c) in g.iter().enumerate() {
            m[dg + r][r + k] = c.clone();
        }
    }
    m
}

/// Lagrangian Chow transform of the twisted cubic `[t^3 : t^2 s : s^3 : -3 t s^2]`
/// in coordinates `[x1 : x2 : u1 : u2]`.
///
/// A Lagrangian plane `u_i = u_ij x^j` meets the cubic when
/// `f1 = s^3 - u11 t^3 - u12 t^2 s` and `t (u12 t^2 + u22 t s + 3 s^2)` have a
/// common root. The factor `t` only contributes the point `[1:0:0:0]`,
/// which lies on a plane exactly when `u11 = u12 = 0`; the transform
/// vanishes there, so the resultant of the remaining factors is the whole
/// answer.
pub fn chow_transform_g2() -> MinorPolynomial {
    let vars = matrix_vars(2);
    let u = |name: &str| Poly::named(&vars, name);
    let c = |x: i64| Poly::constant(&vars, x);
    let f1 = [-&u("u11"), -&u("u12"), c(0), c(1)];
    let g2 = [u("u12"), u("u22"), c(3)];
    let res = det_poly(&sylvester(&f1, &g2)).normalized();
    MinorPolynomial { n: 2, poly: res, pluecker_degree: Some(3) }
}

/// Data of the B3 case: the ideal of the subadjoint variety
/// `P^1 x Q` in `[x1:x2:x3:u1:u2:u3]`, its six generators after
/// substituting `u_i = u_ij x^j`, and the invariant `F`.
#[derive(Clone, Debug)]
pub struct B3Data {
    /// `x1 u2 - x2 u1, x1 u3 - x3 u1, x2 u3 - x3 u2, |x|^2, x.u, |u|^2`.
    pub generators: Vec<Poly>,
    /// The substituted generators, listed with `x.u` before `|x|^2` as
    /// in the usual presentation (so entries 4 and 5 are swapped relative
    /// to `generators`).
    pub substituted: Vec<Poly>,
    pub f: Poly,
}

const B3_F: &str = include_str!("pdes/b3_f.txt");

pub fn b3_vars() -> Vec<String> {
    poly::names(&["x1", "x2", "x3", "u1", "u2", "u3"])
}

pub fn b3_substituted_vars() -> Vec<String> {
    let mut v = matrix_vars(3);
    v.extend(poly::names(&["x1", "x2", "x3"]));
    v
}

pub fn b3_data() -> Result<B3Data> {
    let gv = b3_vars();
    let g = |s: &str| Poly::parse(&gv, s).expect("static generator");
    let generators = vec![
        g("x1*u2 - x2*u1"),
        g("x1*u3 - x3*u1"),
        g("x2*u3 - x3*u2"),
        g("x1^2 + x2^2 + x3^2"),
        g("x1*u1 + x2*u2 + x3*u3"),
        g("u1^2 + u2^2 + u3^2"),
    ];
    let sv = b3_substituted_vars();
    let x: Vec<Poly> = (0..3).map(|k| Poly::var(&sv, 6 + k)).collect();
    let mut images = x.clone();
    for i in 0..3 {
        let mut ui = Poly::zero(&sv);
        for (j, xj) in x.iter().enumerate() {
            ui = &ui + &(&Poly::var(&sv, var_index(3, i, j)) * xj);
        }
        images.push(ui);
    }
    let subst: Vec<Poly> = generators.iter().map(|p| p.compose(&images)).collect();
    let substituted = vec![
        subst[0].clone(),
        subst[1].clone(),
        subst[2].clone(),
        subst[4].clone(),
        subst[3].clone(),
        subst[5].clone(),
    ];
    let f = Poly::parse(&matrix_vars(3), B3_F)?;
    Ok(B3Data { generators, substituted, f })
}

/// Outcome of [`verify_b3_membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B3Report {
    pub samples: usize,
    pub zeros: usize,
    /// Indices of on-variety samples where `F` did not vanish.
    pub failures: Vec<usize>,
    /// Draws rejected because `x3 = 0`.
    pub degenerate: usize,
    pub off_variety: usize,
    pub off_nonzero: usize,
}

fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn small_rat(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// One on-variety draw: a symmetric `U` whose graph meets `P^1 x Q`.
fn b3_on_variety(rng: &mut ChaCha8Rng, degenerate: &mut usize) -> Vec<Vec<GaussRat>> {
    loop {
        let t = small_rat(rng, 9, 5);
        let s = small_rat(rng, 9, 5);
        let p = small_rat(rng, 9, 7);
        if t.is_zero() || p.is_zero() {
            *degenerate += 1;
            continue;
        }
        // null conic: (1 - p^2)^2 + (i (1 + p^2))^2 + (2p)^2 = 0
        let one = BigRational::one();
        let z = [
            GaussRat::real(&one - &p * &p),
            GaussRat::new(BigRational::zero(), &one + &p * &p),
            GaussRat::real(rat(2, 1) * &p),
        ];
        let x: Vec<GaussRat> = z.iter().map(|c| c.clone() * GaussRat::real(t.clone())).collect();
        let u: Vec<GaussRat> = z.iter().map(|c| c.clone() * GaussRat::real(s.clone())).collect();
        // unknowns u11 u12 u13 u22 u23 u33
        let mut a = vec![vec![<GaussRat as field::Field>::zero(); 6]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let k = var_index(3, i, j);
                a[i][k] = a[i][k].clone() + x[j].clone();
            }
        }
        let Some((part, null)) = solve_affine(&a, &u) else {
            *degenerate += 1;
            continue;
        };
        let mut sol = part;
        for v in &null {
            let c = GaussRat::real(small_rat(rng, 7, 3));
            for (s, x) in sol.iter_mut().zip(v) {
                *s = s.clone() + c.clone() * x.clone();
            }
        }
        return (0..3).map(|i| (0..3).map(|j| sol[var_index(3, i, j)].clone()).collect()).collect();
    }
}

fn random_integer_symmetric(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Vec<BigRational>> {
    let mut u = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rat(rng.gen_range(-bound..=bound), 1);
            u[i][j] = x.clone();
            u[j][i] = x;
        }
    }
    u
}

/// Check `F(U) = 0` on `samples` exact points of the hypersurface and count
/// how often `F` is nonzero on as many random integer matrices.
pub fn verify_b3_membership(samples: usize, seed: u64, workers: Workers) -> Result<B3Report> {
    if samples == 0 {
        return Err(Error::rejected("samples must be at least 1"));
    }
    let data = b3_data()?;
    let f = MinorPolynomial { n: 3, poly: data.f, pluecker_degree: None };
    let on: Vec<(bool, usize)> = par::map_range(workers, samples, |k| {
        let mut rng = sample_rng(seed, 2 * k as u64);
        let mut degenerate = 0;
        let u = b3_on_variety(&mut rng, &mut degenerate);
        (field::Field::is_zero(&f.eval(&u)), degenerate)
    });
    let off: Vec<bool> = par::map_range(workers, samples, |k| {
        let mut rng = sample_rng(seed, 2 * k as u64 + 1);
        !f.eval(&random_integer_symmetric(&mut rng, 3, 9)).is_zero()
    });
    Ok(B3Report {
        samples,
        zeros: on.iter().filter(|(z, _)| *z).count(),
        failures: on.iter().enumerate().filter(|(_, (z, _))| !z).map(|(k, _)| k).collect(),
        degenerate: on.iter().map(|(_, d)| d).sum(),
        off_variety: samples,
        off_nonzero: off.iter().filter(|&&b| b).count(),
    })
}

/// Exact rational actions on symmetric matrices.
#[derive(Clone, Debug)]
pub enum Action {
    /// `U -> O^T U O` for orthogonal `O`.
    Conjugate(Vec<Vec<BigRational>>),
    /// `U -> A^T U A` for invertible `A`.
    Congruence(Vec<Vec<BigRational>>),
    /// `U -> (c I + d U)(a I + b U)^(-1)` with `ad - bc = 1`.
    Fractional { a: BigRational, b: BigRational, c: BigRational, d: BigRational },
}

type Matrix = Vec<Vec<BigRational>>;

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

fn affine(u: &Matrix, x: &BigRational, y: &BigRational) -> Matrix {
    let n = u.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { x + y * &u[i][j] } else { y * &u[i][j] }).collect())
        .collect()
}

impl Action {
    fn validate(&self, n: usize) -> Result<()> {
        match self {
            Action::Conjugate(o) => {
                if o.len() != n || mat_mul(&transpose(o), o) != identity(n) {
                    return Err(Error::rejected("conjugation matrix is not orthogonal"));
                }
            }
            Action::Congruence(a) => {
                if a.len() != n || determinant(a).is_zero() {
                    return Err(Error::rejected("congruence matrix is singular"));
                }
            }
            Action::Fractional { a, b, c, d } => {
                if a * d - b * c != BigRational::one() {
                    return Err(Error::rejected("fractional action is not unimodular"));
                }
            }
        }
        Ok(())
    }

    /// Image of `U`, or `None` where the action is undefined.
    pub fn apply(&self, u: &Matrix) -> Option<Matrix> {
        match self {
            Action::Conjugate(o) | Action::Congruence(o) => Some(mat_mul(&mat_mul(&transpose(o), u), o)),
            Action::Fractional { a, b, c, d } => {
                let den = inverse(&affine(u, a, b))?;
                Some(mat_mul(&affine(u, c, d), &den))
            }
        }
    }

    /// The base `det(a I + b U)` of the multiplier law (1 for linear actions).
    pub fn multiplier_base(&self, u: &Matrix) -> BigRational {
        match self {
            Action::Fractional { a, b, .. } => determinant(&affine(u, a, b)),
            _ => BigRational::one(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Action::Conjugate(_) => "orthogonal conjugation".into(),
            Action::Congruence(_) => "congruence".into(),
            Action::Fractional { a, b, c, d } => format!("fractional ({a},{b};{c},{d})"),
        }
    }
}

/// Fitted law `P(g U) det(aI + bU)^k = c P(U)` for one action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub action: String,
    pub k: i64,
    pub c: BigRational,
    pub verified: usize,
    pub ok: bool,
}

fn rpow(x: &BigRational, k: i64) -> BigRational {
    let p = field::Field::pow(x, k.unsigned_abs() as u32);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// Fit the multiplier law from the first two samples and check it on the
/// rest. Orthogonal conjugations must give `k = 0, c = 1`.
pub fn verify_invariance(p: &MinorPolynomial, actions: &[Action], samples: usize, seed: u64) -> Result<Vec<ActionReport>> {
    if samples < 3 {
        return Err(Error::rejected("need at least 3 samples (2 to fit, 1 to verify)"));
    }
    let kmax = 2 * p.poly.degree().unwrap_or(0) as i64 + 2;
    let mut out = Vec::new();
    for (ai, g) in actions.iter().enumerate() {
        g.validate(p.n)?;
        let mut rng = sample_rng(seed, ai as u64);
        let mut data: Vec<(BigRational, BigRational)> = Vec::with_capacity(samples);
        let mut attempts = 0;
        while data.len() < samples {
            attempts += 1;
            if attempts > 100 * samples {
                return Err(Error::consistency("could not draw generic sample matrices"));
            }
            let u = random_integer_symmetric(&mut rng, p.n, 5);
            let pu = p.eval(&u);
            let m = g.multiplier_base(&u);
            if pu.is_zero() || m.is_zero() {
                continue;
            }
            let Some(gu) = g.apply(&u) else { continue };
            data.push((p.eval(&gu) / pu, m));
        }
        let mut ks: Vec<i64> = (-kmax..=kmax).collect();
        ks.sort_by_key(|k| (k.abs(), -k));
        let fit = ks.into_iter().find_map(|k| {
            let c = &data[0].0 * rpow(&data[0].1, k);
            (&data[1].0 * rpow(&data[1].1, k) == c).then_some((k, c))
        });
        let report = match fit {
            None => ActionReport { action: g.label(), k: 0, c: BigRational::zero(), verified: 0, ok: false },
            Some((k, c)) => {
                let verified = data[2..].iter().filter(|(r, m)| r * rpow(m, k) == c).count();
                let mut ok = verified == samples - 2;
                if matches!(g, Action::Conjugate(_)) {
                    ok &= k == 0 && c.is_one();
                }
                ActionReport { action: g.label(), k, c, verified, ok }
            }
        };
        out.push(report);
    }
    Ok(out)
}

/// A vector `sum_i alpha_i (a (x) e_i) + beta_i (b (x) e_i)` of `C^2 (x) C^n`,
/// with `epsilon(a, b) = 1` and `e_i` orthonormal.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector<F> {
    pub alpha: Vec<F>,
    pub beta: Vec<F>,
}

impl<F: field::Field> TensorVector<F> {
    /// `xi (x) e`.
    pub fn pure(xi: &[F; 2], e: &[F]) -> Self {
        TensorVector {
            alpha: e.iter().map(|x| xi[0].clone() * x.clone()).collect(),
            beta: e.iter().map(|x| xi[1].clone() * x.clone()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }
}

pub fn epsilon<F: field::Field>(x: &[F; 2], y: &[F; 2]) -> F {
    x[0].clone() * y[1].clone() - x[1].clone() * y[0].clone()
}

/// `epsilon (x) <,>` on `C^2 (x) C^n`.
pub fn symplectic_product<F: field::Field>(v: &TensorVector<F>, w: &TensorVector<F>) -> F {
    (0..v.dim()).fold(F::zero(), |acc, i| {
        acc + v.alpha[i].clone() * w.beta[i].clone() - v.beta[i].clone() * w.alpha[i].clone()
    })
}

// M(v,w)_ij = epsilon-contraction of the C^2 parts at (i, j)
fn eps_matrix<F: field::Field>(v: &TensorVector<F>, w: &TensorVector<F>) -> Vec<Vec<F>> {
    let n = v.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| v.alpha[i].clone() * w.beta[j].clone() - v.beta[i].clone() * w.alpha[j].clone())
                .collect()
        })
        .collect()
}

fn q_raw_unchecked<F: field::Field>(v: [&TensorVector<F>; 4]) -> F {
    let m12 = eps_matrix(v[0], v[1]);
    let m34 = eps_matrix(v[2], v[3]);
    let n = v[0].dim();
    let mut acc = F::zero();
    for i in 0..n {
        for j in 0..n {
            if m12[i][j].is_zero() {
                continue;
            }
            acc = acc + m12[i][j].clone() * (m34[i][j].clone() - m34[j][i].clone());
        }
    }
    acc
}

fn check_dims<F>(v: &[&TensorVector<F>]) -> Result<()> {
    let n = v[0].alpha.len();
    if v.iter().any(|x| x.alpha.len() != n || x.beta.len() != n) {
        return Err(Error::rejected("vectors of different dimensions"));
    }
    Ok(())
}

/// The quartic before symmetrization:
/// `q(x1 e1, .., x4 e4) = eps(x1,x2) eps(x3,x4) (<e1,e3><e2,e4> - <e2,e3><e1,e4>)`,
/// extended multilinearly.
pub fn evaluate_q_raw<F: field::Field>(v: [&TensorVector<F>; 4]) -> Result<F> {
    check_dims(&v)?;
    Ok(q_raw_unchecked(v))
}

/// The symmetrized quartic: the mean of [`evaluate_q_raw`] over all
/// orderings of the arguments.
pub fn evaluate_q<F: field::Field>(v: [&TensorVector<F>; 4]) -> Result<F> {
    check_dims(&v)?;
    let mut acc = F::zero();
    for (p, _) in permutations(4) {
        acc = acc + q_raw_unchecked([v[p[0]], v[p[1]], v[p[2]], v[p[3]]]);
    }
    Ok(acc / F::from_i64(24))
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        out.push((p.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

fn cycle_count(p: &[usize]) -> u32 {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for s in 0..p.len() {
        if !seen[s] {
            cycles += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = p[i];
            }
        }
    }
    cycles
}

/// `n` vectors spanning a subspace of `C^2 (x) C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticFrame<F> {
    pub vectors: Vec<TensorVector<F>>,
}

impl<F: field::Field> SymplecticFrame<F> {
    /// `xi_i (x) e_i` for the standard orthonormal basis.
    pub fn diagonal(xis: &[[F; 2]]) -> Self {
        let n = xis.len();
        let vectors = xis
            .iter()
            .enumerate()
            .map(|(i, xi)| {
                let e: Vec<F> = (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect();
                TensorVector::pure(xi, &e)
            })
            .collect();
        SymplecticFrame { vectors }
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_lagrangian(&self) -> bool {
        let v = &self.vectors;
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| symplectic_product(&v[i], &v[j]).is_zero()))
    }
}

/// `q^n` on the wedge of the frame:
/// `sum over s1, s2, s3 of sgn(s1 s2 s3) prod_i q(v_i, v_{s1 i}, v_{s2 i}, v_{s3 i})`.
pub fn evaluate_qn<F: field::Field>(frame: &SymplecticFrame<F>) -> Result<F> {
    let n = frame.n();
    if n == 0 || n > QN_MAX {
        return Err(Error::rejected(format!("frame size {n} outside 1..={QN_MAX}")));
    }
    if frame.vectors.iter().any(|v| v.dim() != n || v.beta.len() != n) {
        return Err(Error::rejected("frame vectors must lie in C^2 (x) C^n"));
    }
    if !frame.is_lagrangian() {
        return Err(Error::rejected("frame is not Lagrangian"));
    }
    let v = &frame.vectors;
    let idx = |a: usize, b: usize, c: usize, d: usize| ((a * n + b) * n + c) * n + d;
    let mut q = vec![F::zero(); n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    q[idx(a, b, c, d)] = q_raw_unchecked([&v[a], &v[b], &v[c], &v[d]]);
                }
            }
        }
    }
    let perms = permutations(n);
    let mut acc = F::zero();
    for (s1, e1) in &perms {
        for (s2, e2) in &perms {
            'inner: for (s3, e3) in &perms {
                let mut prod = F::one();
                for i in 0..n {
                    let x = &q[idx(i, s1[i], s2[i], s3[i])];
                    if x.is_zero() {
                        continue 'inner;
                    }
                    prod = prod * x.clone();
                }
                acc = if e1 * e2 * e3 > 0 { acc + prod } else { acc - prod };
            }
        }
    }
    Ok(acc)
}

/// Closed form on a diagonal frame `xi_i (x) e_i`:
/// `sum_s prod_i eps(xi_i, xi_{s i})^2 * 2^(cycles of s)`, where `2^cycles`
/// counts the `s`-stable subsets. Agrees with [`evaluate_qn`] for every
/// `n`, so it is a sum of non-negative terms for real frames.
pub fn evaluate_qn_diagonal<F: field::Field>(xis: &[[F; 2]]) -> Result<F> {
    if xis.is_empty() {
        return Err(Error::rejected("empty frame"));
    }
    let mut acc = F::zero();
    for (s, _) in permutations(xis.len()) {
        let mut prod = F::from_i64(1i64 << cycle_count(&s));
        for (i, &j) in s.iter().enumerate() {
            let e = epsilon(&xis[i], &xis[j]);
            prod = prod * e.clone() * e;
        }
        acc = acc + prod;
    }
    Ok(acc)
}

/// Degree of the subadjoint variety with the closed formula it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubadjointDegree {
    pub degree: BigInt,
    pub formula: String,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn prod_factorials(ks: &[u32]) -> BigInt {
    ks.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k))
}

fn exact_quotient(num: BigInt, den: BigInt) -> Result<BigInt> {
    if (&num % &den).is_zero() {
        Ok(num / den)
    } else {
        Err(Error::consistency(format!("{num}/{den} is not an integer")))
    }
}

pub fn subadjoint_degree(t: CartanType) -> Result<SubadjointDegree> {
    let (degree, formula) = match (t.family(), t.rank()) {
        (Family::C, _) => return Err(Error::rejected("type C: the symplectic group acts transitively on X^(1)")),
        (Family::A, _) => {
            contact_grading(t)?;
            (BigInt::from(2), "1 + 1".to_string())
        }
        (Family::B | Family::D, _) => {
            let n = contact_grading(t)?.n() as i64;
            (BigInt::from(2 * (n - 1)), format!("2(n-1), n = {n}"))
        }
        (Family::E, 6) => (
            exact_quotient(factorial(9), BigInt::from(4 * 27 * 16 * 5))?,
            "9!/(2^2 3^3 4^2 5)".to_string(),
        ),
        (Family::E, 7) => (
            exact_quotient(factorial(15) * prod_factorials(&[1, 2, 3, 4]), prod_factorials(&[1, 3, 5, 7, 9]))?,
            "15! (1! 2! 3! 4!)/(1! 3! 5! 7! 9!)".to_string(),
        ),
        // stored constant; subadjoint_degree_by_orbits gives 13110 here
        (Family::E, _) => (BigInt::from(13188), "13188".to_string()),
        (Family::F, _) => (
            exact_quotient(BigInt::from(8) * factorial(6) * factorial(2), factorial(3) * factorial(5))?,
            "2^3 6! 2!/(3! 5!)".to_string(),
        ),
        (Family::G, _) => (BigInt::from(3), "3".to_string()),
    };
    Ok(SubadjointDegree { degree, formula })
}

/// Degree of `G/P` embedded by `L(lambda)`:
/// `dim! prod over positive alpha with (lambda, alpha) != 0 of (lambda, alpha)/(rho, alpha)`.
pub fn borel_hirzebruch_degree(rs: &RootSystem, lambda: &[i64]) -> Result<BigInt> {
    let rho = rs.rho();
    let mut dim = 0u32;
    let mut ratio = BigRational::one();
    for k in 0..rs.num_positive_roots() {
        let l = rs.coroot_pairing(lambda, k);
        if l != 0 {
            dim += 1;
            ratio *= rat(l, rs.coroot_pairing(&rho, k));
        }
    }
    let d = ratio * BigRational::from_integer(factorial(dim));
    if !d.is_integer() {
        return Err(Error::consistency("non-integral degree"));
    }
    Ok(d.to_integer())
}

/// Subadjoint degree recomputed as the sum, over the irreducible summands
/// of `g_-1`, of the degrees of the closed `G0ss`-orbits.
pub fn subadjoint_degree_by_orbits(t: CartanType) -> Result<BigInt> {
    if t.family() == Family::C {
        return Err(Error::rejected("type C: the symplectic group acts transitively on X^(1)"));
    }
    let g = contact_grading(t)?;
    g.g_minus1_highest_weights().iter().map(|w| borel_hirzebruch_degree(g.g0ss(), w)).sum()
}

/// The E7 quotient in the form `15! 2! 4!/(5! 7! 8! 9!)`, kept to document
/// that it is not an integer.
pub fn e7_alternative_quotient() -> BigRational {
    BigRational::new(factorial(15) * factorial(2) * factorial(4), prod_factorials(&[5, 7, 8, 9]))
}

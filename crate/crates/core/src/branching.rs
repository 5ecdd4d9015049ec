//! Branching from `sp(g_-1)` to `g0ss` by brute force: Freudenthal
//! characters of `V_{d lambda_n}`, pushed forward along the restriction of
//! weight lattices, and inverted to the multiplicity of the trivial module.

pub mod cache;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::contact::{contact_grading, ContactGrading};
use crate::error::{Error, Result};
use crate::kostant::generate_wp_for;
use crate::par::{self, Workers};
use crate::rootsys::{CartanType, Family, RootSystem, Weight, WeylElement};

pub use cache::CharacterCache;

/// Weight multiplicities stored on dominant representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCharacter {
    rank: usize,
    entries: BTreeMap<Weight, BigInt>,
}

impl FormalCharacter {
    pub fn from_entries(rank: usize, entries: BTreeMap<Weight, BigInt>) -> Result<Self> {
        for (k, v) in &entries {
            if k.len() != rank || k.iter().any(|&x| x < 0) || !v.is_positive() {
                return Err(Error::rejected(format!("bad character entry {k:?} -> {v}")));
            }
        }
        Ok(FormalCharacter { rank, entries })
    }

    pub fn trivial(rank: usize) -> Self {
        FormalCharacter { rank, entries: BTreeMap::from([(vec![0; rank], BigInt::from(1))]) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entries(&self) -> &BTreeMap<Weight, BigInt> {
        &self.entries
    }

    pub fn multiplicity(&self, dominant: &[i64]) -> BigInt {
        self.entries.get(dominant).cloned().unwrap_or_default()
    }

    /// Total dimension: sum of multiplicity times orbit size.
    pub fn dimension(&self, rs: &RootSystem) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (mu, m) in &self.entries {
            total += rs.orbit_size(mu)? * m.magnitude();
        }
        Ok(total)
    }

    /// Every weight with its multiplicity (small characters only).
    pub fn expand(&self, rs: &RootSystem) -> WeightMultiset {
        let mut out = WeightMultiset::new(self.rank);
        for (mu, m) in &self.entries {
            for nu in rs.weyl_orbit(mu) {
                out.add(nu, m.clone());
            }
        }
        out
    }
}

/// A finitely supported function on a weight lattice (not folded).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightMultiset {
    rank: usize,
    entries: BTreeMap<Weight, BigInt>,
}

impl WeightMultiset {
    pub fn new(rank: usize) -> Self {
        WeightMultiset { rank, entries: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entries(&self) -> &BTreeMap<Weight, BigInt> {
        &self.entries
    }

    pub fn get(&self, w: &[i64]) -> BigInt {
        self.entries.get(w).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, w: Weight, m: BigInt) {
        match self.entries.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += m;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !m.is_zero() {
                    e.insert(m);
                }
            }
        }
    }

    pub fn total(&self) -> BigInt {
        self.entries.values().sum()
    }

    pub fn product(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut acc: HashMap<Weight, BigInt> = HashMap::new();
        for (a, m) in &self.entries {
            for (b, k) in &other.entries {
                let w: Weight = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(w).or_default() += m * k;
            }
        }
        Self::collect(self.rank, acc)
    }

    /// Character of the symmetric square: `(chi^2 + psi^2 chi) / 2`.
    pub fn symmetric_square(&self) -> WeightMultiset {
        let sq = self.product(self);
        let mut acc: HashMap<Weight, BigInt> = sq.entries.into_iter().collect();
        for (a, m) in &self.entries {
            let w: Weight = a.iter().map(|x| 2 * x).collect();
            *acc.entry(w).or_default() += m;
        }
        for v in acc.values_mut() {
            *v /= 2;
        }
        Self::collect(self.rank, acc)
    }

    fn collect(rank: usize, acc: HashMap<Weight, BigInt>) -> WeightMultiset {
        WeightMultiset { rank, entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }
}

/// Dominant weights of `V_lambda` with the root-lattice coordinates of
/// `lambda - mu`, ordered by increasing depth.
fn dominant_weights(rs: &RootSystem, lambda: &[i64]) -> Vec<(Weight, Vec<i64>)> {
    let r = rs.rank();
    let mut seen: HashSet<Weight> = HashSet::from([lambda.to_vec()]);
    let mut out = vec![(lambda.to_vec(), vec![0; r])];
    let mut k = 0;
    while k < out.len() {
        let (mu, depth) = out[k].clone();
        for a in 0..rs.num_positive_roots() {
            let nu: Weight = mu.iter().zip(rs.root_weight(a)).map(|(x, y)| x - y).collect();
            if rs.is_dominant(&nu) && seen.insert(nu.clone()) {
                let d: Vec<i64> = depth.iter().zip(&rs.positive_roots()[a]).map(|(x, y)| x + y).collect();
                out.push((nu, d));
            }
        }
        k += 1;
    }
    out.sort_by_key(|(mu, d)| (d.iter().sum::<i64>(), mu.clone()));
    out
}

/// Freudenthal's multiplicity formula on dominant weights, highest first.
pub fn freudenthal_character(rs: &RootSystem, lambda: &[i64]) -> Result<FormalCharacter> {
    if lambda.len() != rs.rank() || !rs.is_dominant(lambda) {
        return Err(Error::rejected(format!("weight {lambda:?} is not dominant")));
    }
    let doms = dominant_weights(rs, lambda);
    let mut mult: HashMap<Weight, BigInt> = HashMap::new();
    mult.insert(lambda.to_vec(), BigInt::from(1));
    let root_norms: Vec<i64> = (0..rs.num_positive_roots())
        .map(|a| rs.root_inner(rs.root_weight(a), a))
        .collect();
    for (mu, depth) in doms.iter().skip(1) {
        let shifted: Weight = lambda.iter().zip(mu).map(|(l, m)| l + m + 2).collect();
        let den = rs.lattice_inner(depth, &shifted);
        let mut num = BigInt::zero();
        for a in 0..rs.num_positive_roots() {
            let base = rs.root_inner(mu, a);
            let mut nu = mu.clone();
            for k in 1.. {
                for (x, y) in nu.iter_mut().zip(rs.root_weight(a)) {
                    *x += y;
                }
                let Some(m) = mult.get(&rs.to_dominant(&nu)) else { break };
                num += m * (base + k * root_norms[a]);
            }
        }
        num *= 2;
        let (q, rem) = num.div_rem(&BigInt::from(den));
        if den <= 0 || !rem.is_zero() {
            return Err(Error::consistency(format!("Freudenthal recursion not integral at {mu:?}")));
        }
        if q.is_positive() {
            mult.insert(mu.clone(), q);
        }
    }
    FormalCharacter::from_entries(rs.rank(), mult.into_iter().collect())
}

/// Character of `V_lambda`, read from and written to `cache` when given.
pub fn character_cached(rs: &RootSystem, lambda: &[i64], cache: Option<&CharacterCache>) -> Result<FormalCharacter> {
    let label = rs
        .cartan_type()
        .map(|t| t.to_string())
        .ok_or_else(|| Error::rejected("caching needs a named Cartan type"))?;
    if let Some(c) = cache {
        if let Some(chi) = c.load(&label, lambda)? {
            return Ok(chi);
        }
    }
    let chi = freudenthal_character(rs, lambda)?;
    if let Some(c) = cache {
        c.store(&label, lambda, &chi)?;
    }
    Ok(chi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Derived,
    Fixture,
}

/// The map `rho` from the weight lattice of `sp(2n)` to that of `g0ss`:
/// column `i` is the image of `lambda_{i+1}`, rows in `delta0` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingMatrix {
    pub matrix: Vec<Vec<i64>>,
    pub provenance: Provenance,
    /// The coset chosen in each degree, when derived.
    pub cosets: Vec<WeylElement>,
}

impl BranchingMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    fn column(&self, k: usize) -> Weight {
        self.matrix.iter().map(|r| r[k]).collect()
    }

    /// Images of `epsilon_1, .., epsilon_n` (as columns).
    pub fn epsilon_images(&self) -> Vec<Weight> {
        let mut prev = vec![0; self.rows()];
        (0..self.cols())
            .map(|k| {
                let c = self.column(k);
                let e = c.iter().zip(&prev).map(|(a, b)| a - b).collect();
                prev = c;
                e
            })
            .collect()
    }

    /// Apply to a weight in the fundamental basis of `sp(2n)`.
    pub fn apply(&self, w: &[i64]) -> Weight {
        self.matrix.iter().map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum()).collect()
    }

    /// Build from rows given in the Bourbaki labelling of `g0ss`.
    pub fn from_bourbaki_rows(g: &ContactGrading, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let columns: Vec<Weight> = (0..cols)
            .map(|k| g.from_bourbaki(&rows.iter().map(|r| r[k]).collect::<Vec<_>>()))
            .collect();
        let matrix = (0..rows.len()).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        BranchingMatrix { matrix, provenance: Provenance::Fixture, cosets: Vec::new() }
    }

    pub fn to_bourbaki_rows(&self, g: &ContactGrading) -> Vec<Vec<i64>> {
        let columns: Vec<Weight> = (0..self.cols()).map(|k| g.to_bourbaki(&self.column(k))).collect();
        (0..self.rows()).map(|i| columns.iter().map(|c| c[i]).collect()).collect()
    }
}

fn multiset(ws: &[Weight]) -> HashMap<Weight, i64> {
    let mut m = HashMap::new();
    for w in ws {
        *m.entry(w.clone()).or_insert(0) += 1;
    }
    m
}

/// Check that `rho` sends the weights `+-epsilon_k` of `V_{lambda_1}` onto
/// the weight multiset of `g_-1`.
pub fn validate_branching_matrix(g: &ContactGrading, rho: &BranchingMatrix) -> Result<()> {
    // with g0ss = 0 there are no rows to carry the column count
    if rho.rows() != g.g0ss().rank() || (rho.rows() > 0 && rho.cols() != g.n()) {
        return Err(Error::rejected("branching matrix has the wrong shape"));
    }
    let mut remaining = multiset(&g.g_minus1_weights());
    for (k, e) in rho.epsilon_images().into_iter().enumerate() {
        let neg: Weight = e.iter().map(|x| -x).collect();
        for w in [e, neg] {
            match remaining.get_mut(&w) {
                Some(c) if *c > 0 => *c -= 1,
                _ => {
                    let who = rho.cosets.get(k).map_or(format!("column {}", k + 1), |w| format!("w_{} = {w}", k + 1));
                    return Err(Error::rejected(format!(
                        "branching matrix fails the g_-1 weight check at {who}: weight {w:?} unaccounted"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Choose `w_i` in `W^p_i` (first admissible in canonical order) so that
/// the resulting matrix passes [`validate_branching_matrix`].
pub fn derive_branching_matrix(g: &ContactGrading) -> Result<BranchingMatrix> {
    let n = g.n();
    let wp = generate_wp_for(g, n);
    let mut remaining = multiset(&g.g_minus1_weights());
    let mut chosen: Vec<usize> = Vec::new();

    fn take(rem: &mut HashMap<Weight, i64>, e: &[i64]) -> bool {
        let neg: Weight = e.iter().map(|x| -x).collect();
        let need_e = if neg == e { 2 } else { 1 };
        if rem.get(e).copied().unwrap_or(0) < need_e || rem.get(&neg).copied().unwrap_or(0) < 1 {
            return false;
        }
        *rem.get_mut(e).unwrap() -= 1;
        *rem.get_mut(&neg).unwrap() -= 1;
        true
    }
    fn give(rem: &mut HashMap<Weight, i64>, e: &[i64]) {
        let neg: Weight = e.iter().map(|x| -x).collect();
        *rem.get_mut(e).unwrap() += 1;
        *rem.get_mut(&neg).unwrap() += 1;
    }
    fn rec(
        i: usize,
        n: usize,
        wp: &crate::kostant::ParabolicCosets,
        prev: &[i64],
        rem: &mut HashMap<Weight, i64>,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if i > n {
            return true;
        }
        for (idx, c) in wp.level(i).iter().enumerate() {
            let e: Weight = c.restricted_weight.iter().zip(prev).map(|(a, b)| a - b).collect();
            if take(rem, &e) {
                chosen.push(idx);
                if rec(i + 1, n, wp, &c.restricted_weight, rem, chosen) {
                    return true;
                }
                chosen.pop();
                give(rem, &e);
            }
        }
        false
    }
    let zero = vec![0; g.g0ss().rank()];
    if !rec(1, n, &wp, &zero, &mut remaining, &mut chosen) {
        return Err(Error::rejected(format!(
            "{}: no choice of w_i in W^p_i passes the g_-1 weight check",
            g.cartan_type()
        )));
    }
    let columns: Vec<&crate::kostant::ParabolicCoset> =
        chosen.iter().enumerate().map(|(k, &idx)| &wp.level(k + 1)[idx]).collect();
    let matrix = (0..g.g0ss().rank())
        .map(|r| columns.iter().map(|c| c.restricted_weight[r]).collect())
        .collect();
    let rho = BranchingMatrix {
        matrix,
        provenance: Provenance::Derived,
        cosets: columns.iter().map(|c| c.word.clone()).collect(),
    };
    validate_branching_matrix(g, &rho)?;
    Ok(rho)
}

pub fn build_branching_matrix(t: CartanType) -> Result<BranchingMatrix> {
    derive_branching_matrix(&contact_grading(t)?)
}

/// Calls `f` with the image under `rho` of every point of the Weyl orbit
/// through the dominant weight `mu` of `rs`.
pub fn for_each_orbit_image(rs: &RootSystem, rho: &BranchingMatrix, mu: &[i64], mut f: impl FnMut(&[i64])) {
    let r = rho.rows();
    if rs.is_symplectic() {
        let n = rs.rank();
        let eps = rho.epsilon_images();
        // epsilon coordinates e_k = mu_k + .. + mu_n
        let mut abs: Vec<i64> = (0..n).map(|k| mu[k..].iter().sum()).collect();
        abs.sort_unstable();
        let mut img = vec![0i64; r];
        let mut contrib = vec![0i64; n * r];
        let mut nz: Vec<usize> = Vec::with_capacity(n);
        let mut sign = vec![1i64; n];
        loop {
            nz.clear();
            img.iter_mut().for_each(|x| *x = 0);
            for k in 0..n {
                if abs[k] != 0 {
                    nz.push(k);
                }
                for t in 0..r {
                    let v = abs[k] * eps[k][t];
                    contrib[k * r + t] = v;
                    img[t] += v;
                }
                sign[k] = 1;
            }
            f(&img);
            // Gray code over the signs of the nonzero entries
            for step in 1u64..(1u64 << nz.len()) {
                let k = nz[step.trailing_zeros() as usize];
                sign[k] = -sign[k];
                for t in 0..r {
                    img[t] += 2 * sign[k] * contrib[k * r + t];
                }
                f(&img);
            }
            if !next_permutation(&mut abs) {
                break;
            }
        }
    } else {
        for nu in rs.weyl_orbit(mu) {
            f(&rho.apply(&nu));
        }
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Full pushforward of `chi` along `rho`.
pub fn pushforward(rs: &RootSystem, chi: &FormalCharacter, rho: &BranchingMatrix, workers: Workers) -> WeightMultiset {
    let keys: Vec<(&Weight, &BigInt)> = chi.entries.iter().collect();
    let parts: Vec<HashMap<Weight, u64>> = par::map(workers, &keys, |(mu, _)| {
        let mut hits: HashMap<Weight, u64> = HashMap::new();
        for_each_orbit_image(rs, rho, mu, |img| {
            if let Some(c) = hits.get_mut(img) {
                *c += 1;
            } else {
                hits.insert(img.to_vec(), 1);
            }
        });
        hits
    });
    let mut acc: HashMap<Weight, BigInt> = HashMap::new();
    for ((_, m), hits) in keys.iter().zip(parts) {
        for (w, c) in hits {
            *acc.entry(w).or_default() += *m * BigInt::from(c);
        }
    }
    WeightMultiset::collect(rho.rows(), acc)
}

fn pack(w: &[i64]) -> Option<u128> {
    if w.len() > 8 {
        return None;
    }
    let mut key = 0u128;
    for &x in w {
        let v = u16::try_from(x + 32768).ok()?;
        key = (key << 16) | v as u128;
    }
    Some(key)
}

/// Pushforward evaluated only at `targets`.
pub fn pushforward_targets(
    rs: &RootSystem,
    chi: &FormalCharacter,
    rho: &BranchingMatrix,
    targets: &[Weight],
    workers: Workers,
) -> Result<Vec<BigInt>> {
    if rho.rows() > 8 {
        let full = pushforward(rs, chi, rho, workers);
        return Ok(targets.iter().map(|t| full.get(t)).collect());
    }
    let mut index: HashMap<u128, usize> = HashMap::new();
    for (k, t) in targets.iter().enumerate() {
        if let Some(key) = pack(t) {
            index.insert(key, k);
        }
    }
    let keys: Vec<(&Weight, &BigInt)> = chi.entries.iter().collect();
    let parts: Vec<Result<Vec<u64>>> = par::map(workers, &keys, |(mu, _)| {
        let mut hits = vec![0u64; targets.len()];
        let mut overflow = false;
        for_each_orbit_image(rs, rho, mu, |img| match pack(img) {
            Some(key) => {
                if let Some(&k) = index.get(&key) {
                    hits[k] += 1;
                }
            }
            None => overflow = true,
        });
        if overflow {
            return Err(Error::consistency("weight image outside the packed range"));
        }
        Ok(hits)
    });
    let mut out = vec![BigInt::zero(); targets.len()];
    for ((_, m), hits) in keys.iter().zip(parts) {
        for (o, h) in out.iter_mut().zip(hits?) {
            if h > 0 {
                *o += *m * BigInt::from(h);
            }
        }
    }
    Ok(out)
}

/// The points `w.0` for `w` in the Weyl group of `rs0`, with signs.
pub fn dot_zero_points(rs0: &RootSystem) -> Vec<(Weight, i64)> {
    rs0.weyl_group_rho_images()
        .into_iter()
        .map(|(w_rho, s)| (w_rho.iter().map(|x| x - 1).collect(), s))
        .collect()
}

/// `c_0 = sum over w of sgn(w) m(w.0)`, given the multiplicities at the
/// points of [`dot_zero_points`].
pub fn alternating_sum(points: &[(Weight, i64)], values: &[BigInt]) -> Result<BigInt> {
    let c0: BigInt = points.iter().zip(values).map(|((_, s), v)| v * *s).sum();
    if c0.is_negative() {
        return Err(Error::consistency("negative trivial multiplicity: input is not a character"));
    }
    Ok(c0)
}

/// Multiplicity of the trivial module in a character of `g0ss`.
pub fn trivial_multiplicity(chi: &WeightMultiset, rs0: &RootSystem) -> Result<BigInt> {
    let points = dot_zero_points(rs0);
    let values: Vec<BigInt> = points.iter().map(|(p, _)| chi.get(p)).collect();
    alternating_sum(&points, &values)
}

/// Decompose a character into irreducibles: the multiplicity of `L(mu)` is
/// `sum over w of sgn(w) m(mu + rho - w rho)`.
pub fn decompose(chi: &WeightMultiset, rs0: &RootSystem) -> Result<BTreeMap<Weight, BigInt>> {
    let images = rs0.weyl_group_rho_images();
    let rho = rs0.rho();
    let mut out = BTreeMap::new();
    for mu in chi.entries.keys().filter(|w| rs0.is_dominant(w)) {
        let mut c = BigInt::zero();
        for (w_rho, s) in &images {
            let p: Weight = mu.iter().zip(&rho).zip(w_rho).map(|((m, r), w)| m + r - w).collect();
            c += chi.get(&p) * *s;
        }
        if c.is_negative() {
            return Err(Error::consistency(format!("negative multiplicity of L({mu:?})")));
        }
        if !c.is_zero() {
            out.insert(mu.clone(), c);
        }
    }
    Ok(out)
}

/// Decompose a character of `rs` by repeatedly removing the highest
/// remaining weight's irreducible character.
pub fn decompose_by_subtraction(chi: &WeightMultiset, rs: &RootSystem) -> Result<BTreeMap<Weight, BigInt>> {
    let height = rs.sum_positive_coroots();
    let ht = |w: &Weight| -> i64 { w.iter().zip(&height).map(|(a, b)| a * b).sum() };
    let mut rest = chi.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rest.entries.keys().max_by_key(|w| (ht(w), (*w).clone())).cloned() {
        let m = rest.get(&top);
        if !rs.is_dominant(&top) || m.is_negative() {
            return Err(Error::consistency(format!("highest weight {top:?} is not a leading term")));
        }
        let irr = freudenthal_character(rs, &top)?.expand(rs);
        for (w, k) in irr.entries {
            rest.add(w, -(k * &m));
        }
        out.insert(top, m);
    }
    Ok(out)
}

/// Knobs for [`ring_dimension_with`].
#[derive(Clone, Debug, Default)]
pub struct RingOptions {
    pub workers: Workers,
    pub cache: Option<CharacterCache>,
    pub matrix: Option<BranchingMatrix>,
}

/// `dim R_d = dim (V_{d lambda_n})^{g0ss}`.
pub fn ring_dimension(t: CartanType, d: usize) -> Result<BigInt> {
    ring_dimension_with(t, d, &RingOptions::default())
}

pub fn ring_dimension_with(t: CartanType, d: usize, opts: &RingOptions) -> Result<BigInt> {
    if t.family() == Family::C {
        return Err(Error::rejected("type C: the symplectic group acts transitively on X^(1)"));
    }
    if d == 0 {
        return Err(Error::rejected("degree must be at least 1"));
    }
    let g = contact_grading(t)?;
    let mut lambda = vec![0; g.n()];
    lambda[g.n() - 1] = d as i64;
    invariant_dimension_of(&g, &lambda, opts)
}

/// `dim (V_lambda)^{g0ss}` for an arbitrary dominant `lambda` of `sp(g_-1)`.
pub fn invariant_dimension_of(g: &ContactGrading, lambda: &[i64], opts: &RingOptions) -> Result<BigInt> {
    let sp = RootSystem::symplectic(g.n())?;
    let rho = match &opts.matrix {
        Some(m) => {
            validate_branching_matrix(g, m)?;
            m.clone()
        }
        None => derive_branching_matrix(g)?,
    };
    let chi = character_cached(&sp, lambda, opts.cache.as_ref())?;
    let points = dot_zero_points(g.g0ss());
    let targets: Vec<Weight> = points.iter().map(|(p, _)| p.clone()).collect();
    let values = pushforward_targets(&sp, &chi, &rho, &targets, opts.workers)?;
    alternating_sum(&points, &values)
}

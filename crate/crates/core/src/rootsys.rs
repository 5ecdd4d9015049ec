//! Root systems, Weyl groups and the Weyl dimension formula.
//!
//! Everything is built from a Cartan matrix with the convention
//! `cartan[i][j] = <alpha_i, alpha_j^vee>`, so the fundamental-weight
//! coordinates of a root with simple-root coordinates `c` are `c * cartan`.
//! Weights live in the fundamental-weight basis, roots in the simple-root
//! basis, coroots in the simple-coroot basis. Node labels are Bourbaki's and
//! 0-based in code.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer vector in the fundamental-weight basis.
pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Cartan type such as `E8` or `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{}{}", family.letter(), rank)))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        standard_cartan(self.family, self.rank)
    }

    /// Order of the Weyl group.
    pub fn weyl_group_order(&self) -> BigUint {
        let k = self.rank as u64;
        let fact = |m: u64| (1..=m).fold(BigUint::one(), |acc, x| acc * x);
        match self.family {
            Family::A => fact(k + 1),
            Family::B | Family::C => fact(k) << k as usize,
            Family::D => fact(k) << (k as usize - 1),
            Family::E => BigUint::from(match k {
                6 => 51_840u64,
                7 => 2_903_040,
                _ => 696_729_600,
            }),
            Family::F => BigUint::from(1152u32),
            Family::G => BigUint::from(12u32),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

/// Bourbaki Cartan matrix. No rank validation, so `C1` yields `[[2]]`.
pub(crate) fn standard_cartan(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let r = rank;
    let mut c = vec![vec![0i64; r]; r];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut bond = |i: usize, j: usize, cij: i64, cji: i64| {
        if i < r && j < r {
            c[i][j] = cij;
            c[j][i] = cji;
        }
    };
    match family {
        Family::A => (1..r).for_each(|i| bond(i - 1, i, -1, -1)),
        Family::B => {
            (1..r.saturating_sub(1)).for_each(|i| bond(i - 1, i, -1, -1));
            if r >= 2 {
                bond(r - 2, r - 1, -2, -1);
            }
        }
        Family::C => {
            (1..r.saturating_sub(1)).for_each(|i| bond(i - 1, i, -1, -1));
            if r >= 2 {
                bond(r - 2, r - 1, -1, -2);
            }
        }
        Family::D => {
            (1..r.saturating_sub(1)).for_each(|i| bond(i - 1, i, -1, -1));
            if r >= 3 {
                bond(r - 3, r - 1, -1, -1);
            }
        }
        Family::E => {
            for (i, j) in [(0, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 7)] {
                bond(i, j, -1, -1);
            }
        }
        Family::F => {
            bond(0, 1, -1, -1);
            bond(1, 2, -2, -1);
            bond(2, 3, -1, -1);
        }
        Family::G => bond(0, 1, -1, -3),
    }
    c
}

/// An element of the Weyl group stored as its lexicographically least
/// reduced word. The word `[i1, .., ik]` means `s_i1 * .. * s_ik`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    /// Normalize an arbitrary (possibly non-reduced) word.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        if let Some(&bad) = word.iter().find(|&&j| j >= rs.rank()) {
            return Err(Error::rejected(format!("simple reflection {bad} out of range")));
        }
        let mut mu = rs.rho();
        for &j in word.iter().rev() {
            rs.reflect(&mut mu, j);
        }
        Ok(Self::from_rho_image(rs, &mu))
    }

    /// Recover `w` from `w(rho)` by greedy descent on the smallest negative
    /// coordinate, which yields the lex-least reduced word.
    pub fn from_rho_image(rs: &RootSystem, w_rho: &[i64]) -> Self {
        let mut mu = w_rho.to_vec();
        let mut word = Vec::new();
        while let Some(j) = mu.iter().position(|&x| x < 0) {
            rs.reflect(&mut mu, j);
            word.push(j);
        }
        debug_assert!(mu.iter().all(|&x| x == 1), "w(rho) must be a regular orbit point");
        WeylElement { word }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Linear action on a weight.
    pub fn apply(&self, rs: &RootSystem, weight: &[i64]) -> Weight {
        let mut mu = weight.to_vec();
        for &j in self.word.iter().rev() {
            rs.reflect(&mut mu, j);
        }
        mu
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|j| format!("s{}", j + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Irreducible component of a (possibly reducible) root system, with the
/// Bourbaki labelling: `nodes[k]` is the node carrying Bourbaki label `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub cartan_type: CartanType,
    pub nodes: Vec<usize>,
}

/// A finite root system given by a (possibly decomposable) Cartan matrix.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: Vec<Vec<i64>>,
    cartan_type: Option<CartanType>,
    half_norms: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    root_weights: Vec<Weight>,
    coroots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
}

const MAX_ROOTS: usize = 20_000;

impl RootSystem {
    pub fn new(t: CartanType) -> Self {
        let mut rs = Self::from_cartan(t.cartan_matrix()).expect("standard Cartan matrices are valid");
        rs.cartan_type = Some(t);
        rs
    }

    /// The root system of `sp(2n)`, allowing `n = 1`.
    pub fn symplectic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::rejected("sp(0) has no root system"));
        }
        let mut rs = Self::from_cartan(standard_cartan(Family::C, n))?;
        rs.cartan_type = Some(if n == 1 {
            CartanType::new(Family::A, 1)?
        } else {
            CartanType::new(Family::C, n)?
        });
        Ok(rs)
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let r = cartan.len();
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != r {
                return Err(Error::rejected("Cartan matrix is not square"));
            }
            for (j, &a) in row.iter().enumerate() {
                let bad = if i == j { a != 2 } else { a > 0 || (a == 0) != (cartan[j][i] == 0) };
                if bad {
                    return Err(Error::rejected(format!("invalid Cartan entry at ({i},{j})")));
                }
            }
        }
        let half_norms = symmetrizer(&cartan)?;

        let mut roots: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                e
            })
            .collect();
        let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = roots.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for j in 0..r {
                let pair: i64 = (0..r).map(|i| beta[i] * cartan[i][j]).sum();
                if pair == 0 {
                    continue;
                }
                let mut next = beta.clone();
                next[j] -= pair;
                if next.iter().all(|&x| x >= 0) && next.iter().any(|&x| x > 0) && seen.insert(next.clone()) {
                    if seen.len() > MAX_ROOTS {
                        return Err(Error::rejected("Cartan matrix is not of finite type"));
                    }
                    roots.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });

        let root_weights: Vec<Weight> = roots
            .iter()
            .map(|c| (0..r).map(|j| (0..r).map(|i| c[i] * cartan[i][j]).sum()).collect())
            .collect();
        let mut coroots = Vec::with_capacity(roots.len());
        for c in &roots {
            // (alpha, alpha)/2 in units of the symmetrizer
            let mut norm2 = 0i64;
            for i in 0..r {
                for j in 0..r {
                    norm2 += c[i] * c[j] * cartan[i][j] * half_norms[j];
                }
            }
            let d_alpha = norm2 / 2;
            let mut cv = Vec::with_capacity(r);
            for i in 0..r {
                let num = c[i] * half_norms[i];
                if num % d_alpha != 0 {
                    return Err(Error::consistency("non-integral coroot"));
                }
                cv.push(num / d_alpha);
            }
            coroots.push(cv);
        }
        let root_index = roots.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        Ok(RootSystem {
            cartan,
            cartan_type: None,
            half_norms,
            positive_roots: roots,
            root_weights,
            coroots,
            root_index,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.cartan_type
    }

    /// True when the Cartan matrix is Bourbaki `C_n` (or `A1`), so that
    /// the Weyl group acts by signed permutations of epsilon-coordinates.
    pub fn is_symplectic(&self) -> bool {
        self.cartan == standard_cartan(Family::C, self.rank()) && self.rank() > 0
    }

    /// `(alpha_i, alpha_i) / 2`, the minimal positive integer symmetrizer.
    pub fn half_norms(&self) -> &[i64] {
        &self.half_norms
    }

    /// Symmetric matrix `(alpha_i, alpha_j)`.
    pub fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| self.cartan[i][j] * self.half_norms[j]).collect())
            .collect()
    }

    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Fundamental-weight coordinates of the k-th positive root.
    pub fn root_weight(&self, k: usize) -> &[i64] {
        &self.root_weights[k]
    }

    /// Simple-coroot coordinates of the k-th positive coroot.
    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// Fundamental-weight coordinates of an arbitrary element of the root
    /// lattice given in simple-root coordinates.
    pub fn root_to_weight(&self, c: &[i64]) -> Weight {
        let r = self.rank();
        (0..r).map(|j| (0..r).map(|i| c[i] * self.cartan[i][j]).sum()).collect()
    }

    /// The root of maximal height (the highest root for simple types).
    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("rank >= 1")
    }

    pub fn rho(&self) -> Weight {
        vec![1; self.rank()]
    }

    /// `<weight, alpha_k^vee>` for the k-th positive root.
    pub fn coroot_pairing(&self, weight: &[i64], k: usize) -> i64 {
        weight.iter().zip(&self.coroots[k]).map(|(a, b)| a * b).sum()
    }

    /// `(weight, alpha_k)` in the symmetrized normalization.
    pub fn root_inner(&self, weight: &[i64], k: usize) -> i64 {
        self.lattice_inner(&self.positive_roots[k], weight)
    }

    /// `(beta, weight)` where `beta` is in simple-root coordinates.
    pub fn lattice_inner(&self, beta: &[i64], weight: &[i64]) -> i64 {
        beta.iter()
            .zip(weight)
            .zip(&self.half_norms)
            .map(|((c, w), d)| c * w * d)
            .sum()
    }

    /// In-place simple reflection `s_j`.
    #[inline]
    pub fn reflect(&self, w: &mut [i64], j: usize) {
        let a = w[j];
        if a != 0 {
            for (k, x) in w.iter_mut().enumerate() {
                *x -= a * self.cartan[j][k];
            }
        }
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        w.iter().all(|&x| x >= 0)
    }

    /// The dominant element of the orbit of `w`.
    pub fn to_dominant(&self, w: &[i64]) -> Weight {
        let mut mu = w.to_vec();
        while let Some(j) = mu.iter().position(|&x| x < 0) {
            self.reflect(&mut mu, j);
        }
        mu
    }

    /// The full Weyl orbit of `w`, sorted.
    pub fn weyl_orbit(&self, w: &[i64]) -> Vec<Weight> {
        let start = self.to_dominant(w);
        let mut seen: HashSet<Weight> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(mu) = queue.pop_front() {
            for j in 0..self.rank() {
                if mu[j] > 0 {
                    let mut nu = mu.clone();
                    self.reflect(&mut nu, j);
                    if seen.insert(nu.clone()) {
                        queue.push_back(nu);
                    }
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Weyl dimension formula.
    pub fn weyl_dim(&self, lambda: &[i64]) -> Result<BigUint> {
        if lambda.len() != self.rank() {
            return Err(Error::rejected("weight has the wrong rank"));
        }
        if !self.is_dominant(lambda) {
            return Err(Error::rejected(format!("weight {lambda:?} is not dominant")));
        }
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for cv in &self.coroots {
            let a: i64 = lambda.iter().zip(cv).map(|(l, c)| (l + 1) * c).sum();
            let b: i64 = cv.iter().sum();
            num *= a as u64;
            den *= b as u64;
        }
        let (q, rem) = num.div_rem(&den);
        if !rem.is_zero() {
            return Err(Error::consistency("Weyl dimension formula not integral"));
        }
        Ok(q)
    }

    /// `w . lambda = w(lambda + rho) - rho`.
    pub fn dot_action(&self, w: &WeylElement, lambda: &[i64]) -> Weight {
        let shifted: Weight = lambda.iter().map(|x| x + 1).collect();
        w.apply(self, &shifted).into_iter().map(|x| x - 1).collect()
    }

    pub fn longest_element(&self) -> WeylElement {
        let minus_rho: Weight = vec![-1; self.rank()];
        WeylElement::from_rho_image(self, &minus_rho)
    }

    /// Diagram permutation of `-w0`: `-w0(omega_i) = omega_{sigma(i)}`.
    pub fn longest_involution(&self) -> Vec<usize> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                let mut mu = vec![0; r];
                mu[i] = 1;
                while let Some(j) = mu.iter().position(|&x| x > 0) {
                    self.reflect(&mut mu, j);
                }
                let image: Weight = mu.iter().map(|x| -x).collect();
                image.iter().position(|&x| x == 1).expect("-w0 permutes fundamental weights")
            })
            .collect()
    }

    /// Sum of the positive coroots in the simple-coroot basis.
    pub fn sum_positive_coroots(&self) -> Vec<i64> {
        let mut acc = vec![0; self.rank()];
        for cv in &self.coroots {
            for (a, c) in acc.iter_mut().zip(cv) {
                *a += c;
            }
        }
        acc
    }

    /// Connected components of the Dynkin diagram, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut label = vec![usize::MAX; r];
        let mut comps = Vec::new();
        for s in 0..r {
            if label[s] != usize::MAX {
                continue;
            }
            let mut comp = vec![s];
            label[s] = comps.len();
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..r {
                    if self.cartan[i][j] != 0 && label[j] == usize::MAX {
                        label[j] = comps.len();
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Identify every component with a Bourbaki type and labelling.
    pub fn classify(&self) -> Result<Vec<Component>> {
        self.components()
            .into_iter()
            .map(|nodes| classify_component(&self.cartan, &nodes))
            .collect()
    }

    pub fn weyl_group_order(&self) -> Result<BigUint> {
        Ok(self
            .classify()?
            .iter()
            .fold(BigUint::one(), |acc, c| acc * c.cartan_type.weyl_group_order()))
    }

    /// Size of the orbit through a dominant weight: `|W| / |W_mu|`, where
    /// the stabilizer is the parabolic subgroup on the zero coordinates.
    pub fn orbit_size(&self, dominant: &[i64]) -> Result<BigUint> {
        let zeros: Vec<usize> = (0..self.rank()).filter(|&i| dominant[i] == 0).collect();
        let stab = self.subsystem(&zeros)?.weyl_group_order()?;
        Ok(self.weyl_group_order()? / stab)
    }

    /// Sub-root system on the given nodes, in the given order.
    pub fn subsystem(&self, nodes: &[usize]) -> Result<RootSystem> {
        let sub = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        RootSystem::from_cartan(sub)
    }

    /// All elements of W with their sign, as the images `w(rho)`.
    /// Intended for small groups only.
    pub fn weyl_group_rho_images(&self) -> Vec<(Weight, i64)> {
        let rho = self.rho();
        let mut seen: HashMap<Weight, usize> = HashMap::new();
        seen.insert(rho.clone(), 0);
        let mut order = vec![(rho.clone(), 0usize)];
        let mut k = 0;
        while k < order.len() {
            let (mu, len) = order[k].clone();
            for j in 0..self.rank() {
                if mu[j] > 0 {
                    let mut nu = mu.clone();
                    self.reflect(&mut nu, j);
                    if !seen.contains_key(&nu) {
                        seen.insert(nu.clone(), len + 1);
                        order.push((nu, len + 1));
                    }
                }
            }
            k += 1;
        }
        order
            .into_iter()
            .map(|(mu, len)| (mu, if len % 2 == 0 { 1 } else { -1 }))
            .collect()
    }
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    use num_rational::Ratio;
    let r = cartan.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; r];
    for s in 0..r {
        if d[s].is_some() {
            continue;
        }
        d[s] = Some(Ratio::one());
        let mut stack = vec![s];
        let mut members = vec![s];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..r {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                // cartan[i][j] d_j = cartan[j][i] d_i
                let dj = di * Ratio::new(cartan[j][i], cartan[i][j]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                        members.push(j);
                    }
                    Some(old) if old != dj => {
                        return Err(Error::rejected("Cartan matrix is not symmetrizable"))
                    }
                    _ => {}
                }
            }
        }
        let lcm = members.iter().fold(1i64, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        let scaled: Vec<i64> = members.iter().map(|&i| (d[i].unwrap() * lcm).to_integer()).collect();
        let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, v) in members.iter().zip(scaled) {
            d[i] = Some(Ratio::from_integer(v / g));
        }
    }
    Ok(d.into_iter().map(|x| x.unwrap().to_integer()).collect())
}

fn candidate_types(k: usize) -> Vec<CartanType> {
    let fams = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];
    fams.iter()
        .filter_map(|&f| {
            // C2 and D3 duplicate B2 and A3; keep the first spelling only.
            if (f == Family::C && k == 2) || (f == Family::D && k == 3) {
                return None;
            }
            CartanType::new(f, k).ok()
        })
        .collect()
}

fn classify_component(cartan: &[Vec<i64>], nodes: &[usize]) -> Result<Component> {
    for t in candidate_types(nodes.len()) {
        let std = t.cartan_matrix();
        if let Some(assign) = match_labels(cartan, nodes, &std) {
            return Ok(Component { cartan_type: t, nodes: assign });
        }
    }
    Err(Error::consistency(format!("unclassifiable Dynkin component {nodes:?}")))
}

fn match_labels(cartan: &[Vec<i64>], nodes: &[usize], std: &[Vec<i64>]) -> Option<Vec<usize>> {
    fn rec(
        pos: usize,
        cartan: &[Vec<i64>],
        nodes: &[usize],
        std: &[Vec<i64>],
        assign: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if pos == nodes.len() {
            return true;
        }
        for cand in 0..nodes.len() {
            if used[cand] {
                continue;
            }
            let node = nodes[cand];
            let ok = (0..pos).all(|q| {
                std[pos][q] == cartan[node][assign[q]] && std[q][pos] == cartan[assign[q]][node]
            });
            if ok {
                used[cand] = true;
                assign.push(node);
                if rec(pos + 1, cartan, nodes, std, assign, used) {
                    return true;
                }
                assign.pop();
                used[cand] = false;
            }
        }
        false
    }
    let mut assign = Vec::with_capacity(nodes.len());
    let mut used = vec![false; nodes.len()];
    rec(0, cartan, nodes, std, &mut assign, &mut used).then_some(assign)
}

/// `n choose k` as a big integer, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// Convenience: `weyl_dim` as `u128` when it fits (test helper).
pub fn dim_u128(rs: &RootSystem, lambda: &[i64]) -> Option<u128> {
    rs.weyl_dim(lambda).ok().and_then(|d| d.to_u128())
}

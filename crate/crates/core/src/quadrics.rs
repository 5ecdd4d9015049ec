//! Dimension of the space of quadratic invariants `R_2` for even `n`.
//!
//! The unknowns are `d_i = dim (V_{2 lambda_i})^{g0ss}` and
//! `d_ij = dim (V_{lambda_i + lambda_j})^{g0ss}` for `j - i` even. Two
//! families of Grothendieck-group relations for `sp(2n)` express the
//! symmetric squares and tensor products of fundamental modules in these
//! terms, while the invariants of the left-hand sides are counted directly
//! from the Kostant decomposition. The resulting square system is solved
//! over the rationals.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::contact::{contact_grading, database_entry, ContactGrading};
use crate::error::{Error, Result};
use crate::kostant::{generate_wp_for, ParabolicCosets};
use crate::linalg::solve_unique;
use crate::par::{self, Workers};
use crate::rootsys::{CartanType, RootSystem, Weight};

/// Classes in the representation ring of `sp(2n)`. Index 0 stands for
/// `lambda_0 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    SymSq(usize),
    Tensor(usize, usize),
    /// `V_{2 lambda_i}`
    D(usize),
    /// `V_{lambda_i + lambda_j}`, stored with `i < j`
    P(usize, usize),
}

impl Symbol {
    fn pair(a: usize, b: usize) -> Symbol {
        Symbol::P(a.min(b), a.max(b))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::SymSq(i) => write!(f, "S2[{i}]"),
            Symbol::Tensor(i, j) => write!(f, "[{i}]x[{j}]"),
            Symbol::D(i) => write!(f, "V(2l{i})"),
            Symbol::P(i, j) => write!(f, "V(l{i}+l{j})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRelation {
    pub n: usize,
    pub lhs: Symbol,
    pub rhs: Vec<Symbol>,
}

impl KRelation {
    /// Dimensions of both sides over `sp(2n)`.
    pub fn dimensions(&self) -> Result<(BigUint, BigUint)> {
        let c = RootSystem::symplectic(self.n)?;
        let dim = |s: &Symbol| -> Result<BigUint> {
            match *s {
                Symbol::SymSq(i) => {
                    let d = c.weyl_dim(&fundamental(self.n, i))?;
                    Ok(&d * (&d + 1u32) / 2u32)
                }
                Symbol::Tensor(i, j) => Ok(c.weyl_dim(&fundamental(self.n, i))? * c.weyl_dim(&fundamental(self.n, j))?),
                _ => c.weyl_dim(&symbol_weight(self.n, s)),
            }
        };
        let lhs = dim(&self.lhs)?;
        let mut rhs = BigUint::zero();
        for s in &self.rhs {
            rhs += dim(s)?;
        }
        Ok((lhs, rhs))
    }
}

/// `lambda_i` of `sp(2n)` in the fundamental basis (`lambda_0 = 0`).
pub fn fundamental(n: usize, i: usize) -> Weight {
    let mut w = vec![0; n];
    if i > 0 {
        w[i - 1] = 1;
    }
    w
}

/// Highest weight of a `D` or `P` symbol.
pub fn symbol_weight(n: usize, s: &Symbol) -> Weight {
    match *s {
        Symbol::D(i) => fundamental(n, i).iter().map(|x| 2 * x).collect(),
        Symbol::P(i, j) => fundamental(n, i).iter().zip(fundamental(n, j)).map(|(a, b)| a + b).collect(),
        _ => panic!("symbol_weight on a product symbol"),
    }
}

/// Right-hand side of the symmetric-square rule, without the parity
/// precondition on `n`.
pub fn sym_square_terms(n: usize, i: usize) -> Vec<Symbol> {
    let (n, i) = (n as i64, i as i64);
    let mut out: Vec<Symbol> = (0..=i / 2).map(|j| Symbol::D((i - 2 * j) as usize)).collect();
    let lo = (i - n).div_euclid(2) + i64::from((i - n).rem_euclid(2) != 0);
    for j in lo..=i / 2 {
        for k in j + 1..=i / 2 {
            if j + k >= 0 && k - j <= n - i {
                out.push(Symbol::pair((i - 2 * j) as usize, (i - 2 * k) as usize));
            }
        }
    }
    out
}

/// Right-hand side of the tensor rule `[i] x [j]` for `i <= j`.
pub fn tensor_terms(n: usize, i: usize, j: usize) -> Vec<Symbol> {
    let mut out = Vec::new();
    for k in 0..=i {
        if j + k > n {
            break;
        }
        for l in 0..=i - k {
            let a = i - k - l;
            let b = j + k - l;
            out.push(if a == b { Symbol::D(a) } else { Symbol::pair(a, b) });
        }
    }
    out
}

pub fn sym_square_relation(n: usize, i: usize) -> Result<KRelation> {
    if n % 2 != 0 {
        return Err(Error::rejected("symmetric-square rule requires n even"));
    }
    if i == 0 || i > n {
        return Err(Error::rejected(format!("index {i} outside 1..={n}")));
    }
    Ok(KRelation { n, lhs: Symbol::SymSq(i), rhs: sym_square_terms(n, i) })
}

pub fn tensor_relation(n: usize, i: usize, j: usize) -> Result<KRelation> {
    if n % 2 != 0 {
        return Err(Error::rejected("tensor rule requires n even"));
    }
    if i == 0 || i >= j || j > n {
        return Err(Error::rejected(format!("need 1 <= i < j <= n, got ({i},{j})")));
    }
    if (j - i) % 2 != 0 {
        return Err(Error::rejected("tensor rule requires j - i even"));
    }
    Ok(KRelation { n, lhs: Symbol::Tensor(i, j), rhs: tensor_terms(n, i, j) })
}

/// All relations of the system for a given even `n`.
pub fn relation_system(n: usize) -> Result<Vec<KRelation>> {
    let mut rels = Vec::new();
    for i in 1..=n {
        rels.push(sym_square_relation(n, i)?);
    }
    for i in 1..=n {
        for j in (i + 2..=n).step_by(2) {
            rels.push(tensor_relation(n, i, j)?);
        }
    }
    Ok(rels)
}

/// Invariant counts on the left-hand sides plus, once solved, the unknowns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantCounts {
    pub sym_sq: BTreeMap<usize, u64>,
    pub tensor: BTreeMap<(usize, usize), u64>,
    /// `dim (V_{lambda_i})^{g0ss}`, the number of `w` in `W^p_i` with `w.0`
    /// trivial on `g0ss`.
    pub fundamental: BTreeMap<usize, u64>,
    pub d: BTreeMap<usize, BigInt>,
    pub d_pair: BTreeMap<(usize, usize), BigInt>,
}

fn level_counts(wp: &ParabolicCosets, i: usize) -> HashMap<Weight, u64> {
    let mut m = HashMap::new();
    for c in wp.level(i) {
        *m.entry(c.restricted_weight.clone()).or_insert(0) += 1;
    }
    m
}

/// Count `g0ss`-invariants in `S^2 Lambda^i_0` and `Lambda^i_0 x Lambda^j_0`
/// by pairing Kostant summands with their duals.
pub fn count_invariant_pairs_for(g: &ContactGrading, workers: Workers) -> Result<InvariantCounts> {
    let n = g.n();
    let wp = generate_wp_for(g, n);
    let h = g.h_circ_restricted();
    let counts: Vec<HashMap<Weight, u64>> = (0..=n).map(|i| level_counts(&wp, i)).collect();

    let sym: Vec<Result<u64>> = par::map_range(workers, n, |k| {
        let i = k + 1;
        let mut twice: i64 = 0;
        for c in wp.level(i) {
            let dual = g.dual(&c.restricted_weight);
            twice += *counts[i].get(&dual).unwrap_or(&0) as i64;
            if dual == c.restricted_weight {
                let parity: i64 = c.restricted_weight.iter().zip(&h).map(|(a, b)| a * b).sum();
                twice += if parity.rem_euclid(2) == 0 { 1 } else { -1 };
            }
        }
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::consistency(format!("odd or negative invariant count at degree {i}")));
        }
        Ok((twice / 2) as u64)
    });
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let tens: Vec<u64> = par::map(workers, &pairs, |&(i, j)| {
        wp.level(i)
            .iter()
            .map(|c| *counts[j].get(&g.dual(&c.restricted_weight)).unwrap_or(&0))
            .sum()
    });

    let mut out = InvariantCounts::default();
    for (k, s) in sym.into_iter().enumerate() {
        out.sym_sq.insert(k + 1, s?);
    }
    out.tensor = pairs.into_iter().zip(tens).collect();
    let zero = vec![0; g.g0ss().rank()];
    for i in 1..=n {
        out.fundamental.insert(i, *counts[i].get(&zero).unwrap_or(&0));
    }
    Ok(out)
}

pub fn count_invariant_pairs(t: CartanType) -> Result<InvariantCounts> {
    database_entry(t)?;
    count_invariant_pairs_for(&contact_grading(t)?, Workers::default())
}

/// Substitute the counts into the relation system and solve for all
/// unknowns.
pub fn solve_system(n: usize, counts: &mut InvariantCounts) -> Result<()> {
    let rels = relation_system(n)?;
    let mut unknowns: Vec<Symbol> = (1..=n).map(Symbol::D).collect();
    for i in 1..=n {
        for j in (i + 2..=n).step_by(2) {
            unknowns.push(Symbol::P(i, j));
        }
    }
    let index: HashMap<Symbol, usize> = unknowns.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    if rels.len() != unknowns.len() {
        return Err(Error::consistency("relation system is not square"));
    }
    let mut a = vec![vec![BigRational::zero(); unknowns.len()]; rels.len()];
    let mut b = Vec::with_capacity(rels.len());
    for (r, rel) in rels.iter().enumerate() {
        let mut rhs = BigInt::from(match rel.lhs {
            Symbol::SymSq(i) => counts.sym_sq[&i],
            Symbol::Tensor(i, j) => counts.tensor[&(i, j)],
            _ => unreachable!(),
        });
        for s in &rel.rhs {
            match *s {
                Symbol::D(0) => rhs -= 1,
                Symbol::P(0, j) => rhs -= counts.fundamental[&j],
                _ => {
                    let k = *index
                        .get(s)
                        .ok_or_else(|| Error::consistency(format!("term {s} is not an unknown")))?;
                    a[r][k] += BigRational::one();
                }
            }
        }
        b.push(BigRational::from_integer(rhs));
    }
    let x = solve_unique(&a, &b).ok_or_else(|| Error::consistency("relation system is singular"))?;
    for (s, v) in unknowns.iter().zip(x) {
        if !v.is_integer() || v.is_negative() {
            return Err(Error::consistency(format!("{s} solved to {v}, not a dimension")));
        }
        match *s {
            Symbol::D(i) => counts.d.insert(i, v.to_integer()),
            Symbol::P(i, j) => counts.d_pair.insert((i, j), v.to_integer()),
            _ => unreachable!(),
        };
    }
    Ok(())
}

/// Counts and solved unknowns for a type with `n` even.
pub fn quadric_system(t: CartanType, workers: Workers) -> Result<InvariantCounts> {
    database_entry(t)?;
    let g = contact_grading(t)?;
    if g.n() % 2 != 0 {
        return Err(Error::rejected(format!("{t}: n = {} is odd, there is no quadric invariant", g.n())));
    }
    let mut counts = count_invariant_pairs_for(&g, workers)?;
    solve_system(g.n(), &mut counts)?;
    Ok(counts)
}

/// `d_n = dim R_2`.
pub fn quadric_invariant_dimension(t: CartanType) -> Result<BigInt> {
    let counts = quadric_system(t, Workers::default())?;
    let n = counts.sym_sq.len();
    Ok(counts.d[&n].clone())
}

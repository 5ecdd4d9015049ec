//! Minimal coset representatives `W^p` of the contact parabolic, graded by
//! length, and the Kostant decomposition of the Lagrangian exterior powers
//! `Lambda^i_0 g_-1 = sum over w in W^p_i of L(w.0)`.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::contact::{contact_grading, ContactGrading};
use crate::error::{Error, Result};
use crate::rootsys::{binomial, CartanType, Weight, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicCoset {
    pub word: WeylElement,
    pub length: usize,
    /// `w . 0` in the fundamental basis of `g`.
    pub weight: Weight,
    /// `w . 0` restricted to `g0ss` (coordinates in `delta0` order).
    pub restricted_weight: Weight,
}

/// `W^p` split by length, `0..=max_length` (clamped to `2n+1`).
#[derive(Clone, Debug)]
pub struct ParabolicCosets {
    pub levels: Vec<Vec<ParabolicCoset>>,
}

impl ParabolicCosets {
    pub fn total(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn level(&self, i: usize) -> &[ParabolicCoset] {
        self.levels.get(i).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Breadth-first generation. `W^p` is closed under dropping the last
/// letter of a reduced word, so each level is reached from the previous one
/// by right multiplication `w -> w s_j`. The search tracks `w^{-1}(rho)`,
/// on which right multiplication by `w` becomes a left reflection.
pub fn generate_wp_for(g: &ContactGrading, max_length: usize) -> ParabolicCosets {
    let rs = g.root_system();
    let delta0 = g.delta0();
    let top = (2 * g.n() + 1).min(max_length);
    let rho = rs.rho();
    let mut frontier: Vec<Weight> = vec![rho.clone()];
    let mut levels = Vec::with_capacity(top + 1);
    for len in 0..=top {
        let mut level: Vec<ParabolicCoset> = frontier
            .iter()
            .map(|inv_rho| {
                let mut word = WeylElement::from_rho_image(rs, inv_rho).word().to_vec();
                word.reverse();
                let word = WeylElement::from_word(rs, &word).expect("indices in range");
                let weight: Weight = word.apply(rs, &rho).iter().map(|x| x - 1).collect();
                let restricted_weight = g.restrict(&weight);
                ParabolicCoset { word, length: len, weight, restricted_weight }
            })
            .collect();
        level.sort_by(|a, b| a.word.cmp(&b.word));
        levels.push(level);
        if len == top {
            break;
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for mu in &frontier {
            for j in 0..rs.rank() {
                if mu[j] <= 0 {
                    continue;
                }
                let mut nu = mu.clone();
                rs.reflect(&mut nu, j);
                if seen.contains(&nu) {
                    continue;
                }
                let mut w_rho = WeylElement::from_rho_image(rs, &nu).word().to_vec();
                w_rho.reverse();
                let mut image = rho.clone();
                for &k in w_rho.iter().rev() {
                    rs.reflect(&mut image, k);
                }
                if delta0.iter().all(|&k| image[k] > 0) {
                    seen.insert(nu.clone());
                    next.push(nu);
                }
            }
        }
        frontier = next;
    }
    ParabolicCosets { levels }
}

pub fn generate_wp(t: CartanType, max_length: usize) -> Result<ParabolicCosets> {
    Ok(generate_wp_for(&contact_grading(t)?, max_length))
}

/// `W^p_i` for `1 <= i <= n`.
pub fn kostant_decomposition(t: CartanType, i: usize) -> Result<Vec<ParabolicCoset>> {
    let g = contact_grading(t)?;
    if i == 0 || i > g.n() {
        return Err(Error::rejected(format!("degree {i} outside 1..={}", g.n())));
    }
    Ok(generate_wp_for(&g, i).levels.swap_remove(i))
}

/// Both sides of the Kostant dimension identity at degree `i`: the sum of
/// `dim L(w.0)` over `W^p_i`, and `C(2n,i) - C(2n,i-2)`.
pub fn dimension_identity(g: &ContactGrading, cosets: &ParabolicCosets, i: usize) -> Result<(BigUint, BigUint)> {
    let mut total = BigUint::default();
    for c in cosets.level(i) {
        total += g.g0ss().weyl_dim(&c.restricted_weight)?;
    }
    let n = g.n() as i64;
    let i = i as i64;
    Ok((total, binomial(2 * n, i) - binomial(2 * n, i - 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_match_orbit_of_gamma() {
        for t in ["A3", "A4", "B3", "D4", "D5", "G2", "F4", "E6", "E7", "E8"] {
            let g = contact_grading(t.parse().unwrap()).unwrap();
            let wp = generate_wp_for(&g, usize::MAX);
            let orbit = g.root_system().weyl_orbit(g.gamma()).len();
            assert_eq!(wp.total(), orbit, "{t}");
            assert_eq!(wp.levels.len(), 2 * g.n() + 2, "{t}");
            for i in 0..=2 * g.n() + 1 {
                assert_eq!(wp.level(i).len(), wp.level(2 * g.n() + 1 - i).len(), "{t} {i}");
            }
            for c in wp.levels.iter().flatten() {
                assert!(g.delta0().iter().all(|&k| c.weight[k] >= 0));
                assert_eq!(c.word.length(), c.length);
            }
        }
    }

    #[test]
    fn length_one() {
        assert_eq!(generate_wp("E6".parse().unwrap(), 1).unwrap().level(1).len(), 1);
        assert_eq!(generate_wp("A4".parse().unwrap(), 1).unwrap().level(1).len(), 2);
    }

    #[test]
    fn g2_degree_two_is_quartic() {
        let w = kostant_decomposition("G2".parse().unwrap(), 2).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].restricted_weight, vec![4]);
        assert!(kostant_decomposition("G2".parse().unwrap(), 3).is_err());
        assert!(kostant_decomposition("G2".parse().unwrap(), 0).is_err());
    }

    #[test]
    fn canonical_order_is_stable() {
        let a = generate_wp("F4".parse().unwrap(), 7).unwrap();
        let b = generate_wp("F4".parse().unwrap(), 7).unwrap();
        for (x, y) in a.levels.iter().zip(&b.levels) {
            assert_eq!(x, y);
            assert!(x.windows(2).all(|p| p[0].word < p[1].word));
        }
    }
}

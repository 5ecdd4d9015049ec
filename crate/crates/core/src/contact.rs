//! Contact gradings `g = g_-2 + g_-1 + g_0 + g_1 + g_2` induced by the
//! coroot of the highest root, and the per-type data the invariant
//! algorithms consume.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rootsys::{CartanType, Component, Family, RootSystem, Weight};

#[derive(Clone, Debug)]
pub struct ContactGrading {
    cartan_type: CartanType,
    rs: RootSystem,
    gamma: Weight,
    grading_coroot: Vec<i64>,
    roots_by_degree: BTreeMap<i64, Vec<Vec<i64>>>,
    delta0: Vec<usize>,
    removed: Vec<usize>,
    n: usize,
    g0ss: RootSystem,
    g0ss_components: Vec<Component>,
}

/// Grading data for the invariant-dimension algorithms. Node indices refer
/// to the Bourbaki labelling of `g`; `h_circ` is zero at `a_node`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatabaseEntry {
    pub cartan_type: CartanType,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub cartan_matrix_g0ss: Vec<Vec<i64>>,
    pub a_node: usize,
    pub minus_w_circ: Vec<usize>,
    pub h_circ: Vec<i64>,
    pub n: usize,
}

pub fn contact_grading(t: CartanType) -> Result<ContactGrading> {
    if t.family() == Family::A && t.rank() == 1 {
        return Err(Error::rejected("A1: no adjoint contact variety"));
    }
    let rs = RootSystem::new(t);
    let top = rs.num_positive_roots() - 1;
    let gamma = rs.root_weight(top).to_vec();
    let grading_coroot = rs.coroot(top).to_vec();

    let mut roots_by_degree: BTreeMap<i64, Vec<Vec<i64>>> = (-2..=2).map(|d| (d, Vec::new())).collect();
    for k in 0..rs.num_positive_roots() {
        let d = rs.coroot_pairing(rs.root_weight(k), top);
        let root = rs.positive_roots()[k].clone();
        let neg: Vec<i64> = root.iter().map(|x| -x).collect();
        roots_by_degree.get_mut(&d).ok_or_else(|| Error::consistency("degree outside [-2,2]"))?.push(root);
        roots_by_degree.get_mut(&-d).unwrap().push(neg);
    }
    for v in roots_by_degree.values_mut() {
        v.sort();
    }
    let delta0: Vec<usize> = (0..rs.rank()).filter(|&i| gamma[i] == 0).collect();
    let removed: Vec<usize> = (0..rs.rank()).filter(|&i| gamma[i] != 0).collect();
    let g_minus1 = roots_by_degree[&-1].len();
    if g_minus1 % 2 != 0 || roots_by_degree[&2].len() != 1 {
        return Err(Error::consistency("grading is not of contact type"));
    }
    let g0ss = rs.subsystem(&delta0)?;
    let g0ss_components = g0ss.classify()?;
    Ok(ContactGrading {
        cartan_type: t,
        rs,
        gamma,
        grading_coroot,
        roots_by_degree,
        delta0,
        removed,
        n: g_minus1 / 2,
        g0ss,
        g0ss_components,
    })
}

impl ContactGrading {
    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Highest root in the fundamental-weight basis.
    pub fn gamma(&self) -> &[i64] {
        &self.gamma
    }

    pub fn grading_coroot(&self) -> &[i64] {
        &self.grading_coroot
    }

    pub fn roots_of_degree(&self, d: i64) -> &[Vec<i64>] {
        self.roots_by_degree.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, root: &[i64]) -> i64 {
        let w = self.rs.root_to_weight(root);
        w.iter().zip(&self.grading_coroot).map(|(a, b)| a * b).sum()
    }

    /// Simple roots orthogonal to the highest root.
    pub fn delta0(&self) -> &[usize] {
        &self.delta0
    }

    /// Simple roots of degree one.
    pub fn removed_nodes(&self) -> &[usize] {
        &self.removed
    }

    pub fn torus_rank(&self) -> usize {
        self.removed.len()
    }

    /// Half the dimension of `g_-1`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_g(&self) -> usize {
        2 * self.rs.num_positive_roots() + self.rs.rank()
    }

    /// Semisimple part of `g_0`, with nodes in the order of `delta0`.
    pub fn g0ss(&self) -> &RootSystem {
        &self.g0ss
    }

    pub fn g0ss_components(&self) -> &[Component] {
        &self.g0ss_components
    }

    /// Human-readable type of `g0ss`, e.g. `A1+A1+A1`.
    pub fn g0ss_label(&self) -> String {
        if self.g0ss_components.is_empty() {
            return "0".into();
        }
        self.g0ss_components
            .iter()
            .map(|c| c.cartan_type.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Restriction to `g0ss`: keep the coordinates on `delta0`.
    pub fn restrict(&self, w: &[i64]) -> Weight {
        self.delta0.iter().map(|&i| w[i]).collect()
    }

    /// Reorder a restricted weight into the Bourbaki labelling of each
    /// `g0ss` factor, factors ordered by their smallest node.
    pub fn to_bourbaki(&self, restricted: &[i64]) -> Weight {
        self.g0ss_components
            .iter()
            .flat_map(|c| c.nodes.iter().map(|&k| restricted[k]))
            .collect()
    }

    pub fn from_bourbaki(&self, labelled: &[i64]) -> Weight {
        let mut out = vec![0; labelled.len()];
        let mut it = labelled.iter();
        for c in &self.g0ss_components {
            for &k in &c.nodes {
                out[k] = *it.next().expect("length matches rank of g0ss");
            }
        }
        out
    }

    /// Highest weights of the irreducible summands of `g_-1` over `g0ss`,
    /// one per node of degree one.
    pub fn g_minus1_highest_weights(&self) -> Vec<Weight> {
        let c = self.rs.cartan_matrix();
        self.removed
            .iter()
            .map(|&a| self.delta0.iter().map(|&j| -c[a][j]).collect())
            .collect()
    }

    /// The `g0ss`-weights of `g_-1` (with multiplicity), sorted.
    pub fn g_minus1_weights(&self) -> Vec<Weight> {
        let mut out: Vec<Weight> = self
            .roots_of_degree(-1)
            .iter()
            .map(|r| self.restrict(&self.rs.root_to_weight(r)))
            .collect();
        out.sort();
        out
    }

    /// `-w0` of `g0ss` applied to a restricted weight.
    pub fn dual(&self, restricted: &[i64]) -> Weight {
        let sigma = self.g0ss.longest_involution();
        let mut out = vec![0; restricted.len()];
        for (i, &x) in restricted.iter().enumerate() {
            out[sigma[i]] = x;
        }
        out
    }

    /// Sum of positive coroots of `g0ss`, in `delta0` order.
    pub fn h_circ_restricted(&self) -> Vec<i64> {
        self.g0ss.sum_positive_coroots()
    }
}

pub fn database_entry(t: CartanType) -> Result<DatabaseEntry> {
    match t.family() {
        Family::A => return Err(Error::rejected("type A: rank-2 torus; bigraded case handled separately")),
        Family::C => return Err(Error::rejected("type C: the symplectic group acts transitively on X^(1)")),
        _ => {}
    }
    let g = contact_grading(t)?;
    let l = g.rs.rank();
    let a_node = g.removed[0];
    let sigma0 = g.g0ss.longest_involution();
    let mut minus_w_circ: Vec<usize> = (0..l).collect();
    for (k, &i) in g.delta0.iter().enumerate() {
        minus_w_circ[i] = g.delta0[sigma0[k]];
    }
    let mut h_circ = vec![0; l];
    for (k, &i) in g.delta0.iter().enumerate() {
        h_circ[i] = g.h_circ_restricted()[k];
    }
    Ok(DatabaseEntry {
        cartan_type: t,
        cartan_matrix: t.cartan_matrix(),
        cartan_matrix_g0ss: g.g0ss.cartan_matrix().to_vec(),
        a_node,
        minus_w_circ,
        h_circ,
        n: g.n,
    })
}

/// Characters of the two-torus of type `A_{n+1}` on `det C^n` and
/// `det C^n*`.
pub fn type_a_torus_characters(n: i64) -> Result<([i64; 2], [i64; 2])> {
    if n < 1 {
        return Err(Error::rejected("n must be positive"));
    }
    Ok(([1, -1], [-1, n + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grading(s: &str) -> ContactGrading {
        contact_grading(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_rejected() {
        assert!(contact_grading("A1".parse().unwrap()).is_err());
    }

    #[test]
    fn table_rows() {
        let cases = [
            ("A3", 2, 2, "A1"),
            ("A4", 3, 2, "A2"),
            ("B3", 3, 1, "A1+A1"),
            ("B4", 5, 1, "A1+B2"),
            ("C4", 3, 1, "C3"),
            ("D4", 4, 1, "A1+A1+A1"),
            ("D5", 6, 1, "A1+A3"),
            ("G2", 2, 1, "A1"),
            ("F4", 7, 1, "C3"),
            ("E6", 10, 1, "A5"),
            ("E7", 16, 1, "D6"),
            ("E8", 28, 1, "E7"),
        ];
        for (t, n, torus, g0) in cases {
            let g = grading(t);
            assert_eq!(g.n(), n, "{t}");
            assert_eq!(g.torus_rank(), torus, "{t}");
            assert_eq!(g.g0ss_label(), g0, "{t}");
            assert_eq!(g.roots_of_degree(2).len(), 1);
            assert_eq!(g.roots_of_degree(-2).len(), 1);
            assert_eq!(g.roots_of_degree(-1).len(), 2 * n);
            let phi0 = g.roots_of_degree(0).len();
            assert_eq!(g.dim_g(), 2 + 4 * n + phi0 + g.root_system().rank(), "{t}");
        }
        assert_eq!(grading("E8").dim_g(), 248);
        assert_eq!(grading("G2").dim_g(), 14);
    }

    #[test]
    fn symplectic_pairing_of_degree_one_roots() {
        for t in ["G2", "F4", "E6", "D5", "A4"] {
            let g = grading(t);
            let gamma = g.root_system().highest_root().to_vec();
            let ones: std::collections::HashSet<_> = g.roots_of_degree(1).iter().cloned().collect();
            for a in &ones {
                let c: Vec<i64> = gamma.iter().zip(a).map(|(x, y)| x - y).collect();
                assert!(ones.contains(&c), "{t}");
                assert_eq!(g.degree(a), 1);
            }
        }
    }

    #[test]
    fn g_minus1_summands() {
        let b3 = grading("B3");
        assert_eq!(b3.g_minus1_highest_weights(), vec![vec![1, 2]]);
        let f4 = grading("F4");
        assert_eq!(f4.to_bourbaki(&f4.g_minus1_highest_weights()[0]), vec![0, 0, 1]);
        let g2 = grading("G2");
        assert_eq!(g2.g_minus1_highest_weights(), vec![vec![3]]);
        let a4 = grading("A4");
        assert_eq!(a4.g_minus1_highest_weights(), vec![vec![1, 0], vec![0, 1]]);
        for t in ["A3", "A4", "B3", "D4", "D5", "G2", "F4", "E6", "E7", "E8", "C3"] {
            let g = grading(t);
            let total: u64 = g
                .g_minus1_highest_weights()
                .iter()
                .map(|w| u64::try_from(g.g0ss().weyl_dim(w).unwrap()).unwrap())
                .sum::<u64>();
            assert_eq!(total as usize, 2 * g.n(), "{t}");
        }
    }

    #[test]
    fn bourbaki_relabel_round_trip() {
        let f4 = grading("F4");
        let w = vec![4, 5, 6];
        assert_eq!(f4.to_bourbaki(&w), vec![6, 5, 4]);
        assert_eq!(f4.from_bourbaki(&f4.to_bourbaki(&w)), w);
    }

    #[test]
    fn database_entries_derived() {
        let d4 = database_entry("D4".parse().unwrap()).unwrap();
        assert_eq!(d4.a_node, 1);
        assert_eq!(d4.minus_w_circ, vec![0, 1, 2, 3]);
        assert_eq!(d4.h_circ, vec![1, 0, 1, 1]);
        assert_eq!(d4.n, 4);
        let g2 = database_entry("G2".parse().unwrap()).unwrap();
        assert_eq!((g2.a_node, g2.h_circ.clone()), (1, vec![1, 0]));
        assert!(database_entry("A3".parse().unwrap()).is_err());
        assert!(database_entry("C3".parse().unwrap()).is_err());
    }

    #[test]
    fn torus_characters() {
        assert_eq!(type_a_torus_characters(2).unwrap(), ([1, -1], [-1, 3]));
        assert_eq!(type_a_torus_characters(3).unwrap(), ([1, -1], [-1, 4]));
        assert!(type_a_torus_characters(0).is_err());
    }
}

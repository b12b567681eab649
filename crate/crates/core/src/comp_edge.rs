//! Edge and complementary edge ideals, their powers, and linear-quotient set maps.

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{even_connected, CycleLabeling, EdgeMultiset, Graph, LabeledTree};
use crate::monomial::{Monomial, MonomialIdeal};

pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    MonomialIdeal::from_generators(g.n(), g.edges().iter().map(|e| e.monomial(g.n())))
}

/// `I_c(G) = (α / x_j x_k : {j,k} ∈ E)`.
pub fn comp_edge_ideal(g: &Graph) -> Result<MonomialIdeal> {
    if g.num_edges() == 0 {
        return Err(Error::invalid("the complementary edge ideal of an edgeless graph is undefined"));
    }
    let alpha = Monomial::alpha(g.n());
    Ok(MonomialIdeal::from_generators(
        g.n(),
        g.edges().iter().map(|e| alpha.checked_div(&e.monomial(g.n())).unwrap()),
    ))
}

/// A generator `α^s / (u_1 ⋯ u_s)` of `I_c(G)^s` with its edge multiset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub s: u32,
    pub edges: EdgeMultiset,
    pub monomial: Monomial,
}

impl Factorization {
    pub fn new(nvars: usize, edges: EdgeMultiset) -> Self {
        let s = edges.total();
        let monomial = Monomial::alpha(nvars)
            .pow(s)
            .checked_div(&edges.product(nvars))
            .expect("an s-fold edge product divides α^s");
        Factorization { s, edges, monomial }
    }

    pub fn record(&self, set: &[usize]) -> GeneratorRecord {
        GeneratorRecord {
            monomial: self.monomial.exponents().to_vec(),
            edges: self.edges.sorted_edges().iter().map(|e| [e.low(), e.high()]).collect(),
            set: set.to_vec(),
        }
    }
}

/// Report line for one ordered generator.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecord {
    pub monomial: Vec<u32>,
    pub edges: Vec<[usize; 2]>,
    pub set: Vec<usize>,
}

/// One factorization per minimal generator of `I_c(G)^s`, in descending lex order.
///
/// Where several edge multisets give the same monomial, the one whose sorted edge
/// list is lexicographically smallest is kept.
pub fn power_generators(g: &Graph, s: u32) -> Result<Vec<Factorization>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if s == 0 {
        return Err(Error::precondition("power generators need s >= 1"));
    }
    if g.num_edges() == 0 {
        return Err(Error::invalid("the complementary edge ideal of an edgeless graph is undefined"));
    }
    let n = g.n();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // combinations_with_replacement yields sorted index lists in lex order, and
    // edges are sorted, so the first hit per monomial is the canonical one.
    for combo in g.edges().iter().copied().combinations_with_replacement(s as usize) {
        let f = Factorization::new(n, EdgeMultiset::from_edges(combo));
        if seen.insert(f.monomial.clone()) {
            out.push(f);
        }
    }
    Ok(lex_order(out))
}

/// Descending lex order on the monomials, `x_1 > ... > x_n`.
pub fn lex_order(mut gens: Vec<Factorization>) -> Vec<Factorization> {
    gens.sort_by(|a, b| b.monomial.cmp(&a.monomial));
    gens
}

/// `set(u)` for each generator of an ordered sequence with linear quotients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetMap {
    gens: Vec<Monomial>,
    sets: Vec<Vec<usize>>,
}

impl SetMap {
    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.gens.first().map_or(0, |g| g.nvars())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &[usize])> {
        self.gens.iter().zip(self.sets.iter().map(|s| s.as_slice()))
    }
}

/// Computes `(u_1, ..., u_{i-1}) : u_i` for every `i`, failing on the first colon
/// not generated by variables.
pub fn set_map_colon(ordered: &[Monomial]) -> Result<SetMap> {
    let mut sets = Vec::with_capacity(ordered.len());
    for (i, u) in ordered.iter().enumerate() {
        let quotients: Vec<Monomial> = ordered[..i].iter().map(|v| v.quotient_by_gcd(u)).collect();
        let mut linear = vec![false; u.nvars()];
        for q in &quotients {
            if q.degree() == 1 {
                linear[q.support()[0] - 1] = true;
            }
        }
        let generated_by_variables = quotients
            .iter()
            .all(|q| q.exponents().iter().zip(&linear).any(|(&e, &l)| e > 0 && l));
        if !generated_by_variables {
            let colon = MonomialIdeal::from_generators(u.nvars(), quotients);
            return Err(Error::NotLinearQuotients {
                index: i + 1,
                generator: u.to_string(),
                colon: colon.to_string(),
            });
        }
        sets.push((1..=u.nvars()).filter(|&l| linear[l - 1]).collect());
    }
    Ok(SetMap {
        gens: ordered.to_vec(),
        sets,
    })
}

/// Set map of the lex-ordered generators of `I_c(G)^s`; the labeling must satisfy
/// [`Graph::validate_lex_labeling`].
pub fn power_set_map(g: &Graph, s: u32) -> Result<(Vec<Factorization>, SetMap)> {
    if !g.validate_lex_labeling()? {
        return Err(Error::precondition("labeling does not give lex linear quotients; relabel first"));
    }
    let gens = power_generators(g, s)?;
    let monomials: Vec<Monomial> = gens.iter().map(|f| f.monomial.clone()).collect();
    let sm = set_map_colon(&monomials)?;
    Ok((gens, sm))
}

/// `set(β)` by the walk criterion: `i` qualifies when some multiset edge
/// `u_1 = x_i x_j` leaves a `k > i` that is adjacent to `j` or even-connected to
/// `j` through the remaining edges.
pub fn set_via_even_connected(g: &Graph, f: &Factorization) -> Vec<usize> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 1..=n {
        let qualifies = f.edges.iter().any(|(e, _)| {
            let Some(j) = e.other(i) else { return false };
            let rest = f.edges.without_one(e).expect("edge is in the multiset");
            (i + 1..=n).any(|k| g.has_edge(j, k) || even_connected(g, j, k, &rest).is_some())
        });
        if qualifies {
            out.push(i);
        }
    }
    out
}

/// `{min(e) : e in the multiset} ∖ {n-1}` for a distance-labeled tree.
pub fn set_tree(t: &LabeledTree, f: &Factorization) -> Vec<usize> {
    let n = t.n();
    f.edges
        .iter()
        .map(|(e, _)| e.low())
        .filter(|&v| v + 1 != n)
        .sorted()
        .dedup()
        .collect()
}

/// `N_1 ∪ N_2 ∪ ({min(e) : e in the multiset} ∖ {n-1})` on a cyclically labeled cycle.
pub fn set_cycle(c: &CycleLabeling, f: &Factorization) -> Vec<usize> {
    let n = c.n();
    let m = n / 2;
    let has = |j: usize| f.edges.contains(c.edge(j));
    let (n1_cap, n2_cap) = if n % 2 == 0 { (m - 1, m.saturating_sub(2)) } else { (m, m - 1) };
    let mut out: Vec<usize> = Vec::new();
    // N_1 = [2l] for the largest l with e_1, e_3, ..., e_{2l-1} present.
    if let Some(l) = (1..=n1_cap).take_while(|&l| has(2 * l - 1)).last() {
        out.extend(1..=2 * l);
    }
    // N_2 = [2l+1] for the largest l with e_0, e_2, ..., e_{2l} present.
    if has(0) {
        if let Some(l) = (1..=n2_cap).take_while(|&l| has(2 * l)).last() {
            out.extend(1..=2 * l + 1);
        }
    }
    out.extend(f.edges.iter().map(|(e, _)| e.low()).filter(|&v| v + 1 != n));
    out.sort_unstable();
    out.dedup();
    out
}

/// `pd = max |set(u)|`.
pub fn pd_linear_quotients(sm: &SetMap) -> usize {
    sm.sets().iter().map(Vec::len).max().unwrap_or(0)
}

/// Projective dimension of `I_c(G)^s` through linear quotients, relabeling first
/// when the given labels are not admissible.
pub fn pd_of_power(g: &Graph, s: u32) -> Result<usize> {
    let r = g.admissible_relabeling()?;
    let (_, sm) = power_set_map(&g.relabel(&r), s)?;
    Ok(pd_linear_quotients(&sm))
}

/// Closed-form `pd(I_c(G)^s)` for trees and cycles.
pub fn pd_formula(g: &Graph, s: u32) -> Result<usize> {
    if s == 0 {
        return Err(Error::precondition("the closed form needs s >= 1"));
    }
    let s = s as usize;
    let n = g.n();
    if g.is_tree() && n >= 2 {
        Ok(s.min(n - 2))
    } else if g.is_cycle() {
        let m = n / 2;
        Ok(if n % 2 == 0 { (2 * s).min(2 * m - 2) } else { (2 * s).min(2 * m) })
    } else {
        Err(Error::precondition("closed-form projective dimension is only known for trees and cycles"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DstabReport {
    /// `pd(I_c(G)^s)` for `s = 1..=s_max`.
    pub pd: Vec<usize>,
    /// `n-2` for bipartite graphs, `n-1` otherwise.
    pub ceiling: usize,
    /// First `s` with `pd = ceiling`, if reached within the scan.
    pub stabilizes_at: Option<u32>,
}

impl DstabReport {
    /// `depth(S/I^s) = n - pd(I^s) - 1`.
    pub fn depths(&self, n: usize) -> Vec<i64> {
        self.pd.iter().map(|&p| n as i64 - p as i64 - 1).collect()
    }
}

pub fn dstab_scan(g: &Graph, s_max: u32) -> Result<DstabReport> {
    let r = g.admissible_relabeling()?;
    let h = g.relabel(&r);
    let pd: Vec<usize> = (1..=s_max)
        .map(|s| power_set_map(&h, s).map(|(_, sm)| pd_linear_quotients(&sm)))
        .collect::<Result<_>>()?;
    let n = g.n();
    let ceiling = if g.is_bipartite() { n.saturating_sub(2) } else { n - 1 };
    let stabilizes_at = pd.iter().position(|&p| p == ceiling).map(|k| k as u32 + 1);
    Ok(DstabReport { pd, ceiling, stabilizes_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    use crate::graph::{tree_distance_labeling, Edge, Relabeling};

    fn sq(n: usize, support: &[usize]) -> Monomial {
        Monomial::squarefree(n, support.iter().copied())
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(n, gens.iter().map(|g| sq(n, g)))
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn edge_ideals() {
        assert_eq!(edge_ideal(&Graph::path(3)), ideal(3, &[&[1, 2], &[2, 3]]));
        assert_eq!(edge_ideal(&Graph::cycle(3).unwrap()), ideal(3, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert!(edge_ideal(&Graph::new(3, []).unwrap()).is_zero());
    }

    #[test]
    fn complementary_edge_ideals() {
        assert_eq!(comp_edge_ideal(&Graph::path(3)).unwrap(), ideal(3, &[&[1], &[3]]));
        assert_eq!(comp_edge_ideal(&Graph::path(4)).unwrap(), ideal(4, &[&[1, 2], &[1, 4], &[3, 4]]));
        let c4 = comp_edge_ideal(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(c4, ideal(4, &[&[1, 2], &[1, 4], &[2, 3], &[3, 4]]));
        assert_eq!(c4.single_degree(), Some(2));
        assert!(comp_edge_ideal(&Graph::new(2, []).unwrap()).is_err());
    }

    #[test]
    fn tree_generators_are_free() {
        let t = Graph::new(5, [(1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        for s in 1..=3u32 {
            let gens = power_generators(&t, s).unwrap();
            let binom = (1..=s as usize).fold(1, |acc, k| acc * (4 + k - 1) / k);
            assert_eq!(gens.len(), binom);
            assert_eq!(MonomialIdeal::from_generators(5, gens.iter().map(|f| f.monomial.clone())), comp_edge_ideal(&t).unwrap().power(s));
        }
    }

    #[test]
    fn c4_square_collides_once() {
        let g = Graph::cycle(4).unwrap();
        let multisets = g.edges().iter().combinations_with_replacement(2).count();
        assert_eq!(multisets, 10);
        let gens = power_generators(&g, 2).unwrap();
        assert_eq!(gens.len(), 9);
        // α^2/(x1x2·x3x4) = α^2/(x2x3·x1x4); the smaller sorted edge list is {1,2},{3,4}
        let alpha = Monomial::alpha(4);
        let f = gens.iter().find(|f| f.monomial == alpha).unwrap();
        assert_eq!(f.edges.sorted_edges(), vec![e(1, 2), e(3, 4)]);
    }

    #[test]
    fn first_power_has_one_generator_per_edge() {
        let g = Graph::complete(4);
        let gens = power_generators(&g, 1).unwrap();
        assert_eq!(gens.len(), 6);
        assert!(gens.iter().all(|f| f.monomial.degree() == 2 && f.edges.total() == 1));
    }

    #[test]
    fn lex_orders() {
        let monos = |g: &Graph| power_generators(g, 1).unwrap().into_iter().map(|f| f.monomial).collect_vec();
        assert_eq!(monos(&Graph::path(4)), vec![sq(4, &[1, 2]), sq(4, &[1, 4]), sq(4, &[3, 4])]);
        assert_eq!(
            monos(&Graph::cycle(4).unwrap()),
            vec![sq(4, &[1, 2]), sq(4, &[1, 4]), sq(4, &[2, 3]), sq(4, &[3, 4])]
        );
        assert_eq!(monos(&Graph::path(2)), vec![Monomial::one(2)]);
    }

    #[test]
    fn colon_set_maps() {
        let (_, sm) = power_set_map(&Graph::path(4), 1).unwrap();
        assert_eq!(sm.sets(), &[vec![], vec![2], vec![1]]);
        let (_, sm) = power_set_map(&Graph::cycle(4).unwrap(), 1).unwrap();
        assert_eq!(sm.sets(), &[vec![], vec![2], vec![1], vec![1, 2]]);
        let sm = set_map_colon(&[sq(3, &[1, 2])]).unwrap();
        assert_eq!(sm.sets(), &[Vec::<usize>::new()]);
    }

    #[test]
    fn colon_failure_is_reported() {
        // (x1x2, x3x4) has colon (x1x2) at the second generator
        let err = set_map_colon(&[sq(4, &[1, 2]), sq(4, &[3, 4])]).unwrap_err();
        assert!(matches!(err, Error::NotLinearQuotients { index: 2, .. }));
        assert!(power_set_map(&Graph::new(4, [(2, 1), (1, 3), (3, 4)]).unwrap(), 1).is_err());
    }

    fn fact(n: usize, edges: &[(usize, usize)]) -> Factorization {
        Factorization::new(n, EdgeMultiset::from_edges(edges.iter().map(|&(a, b)| e(a, b))))
    }

    #[test]
    fn walk_based_sets() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(set_via_even_connected(&c4, &fact(4, &[(1, 2)])), vec![1, 2]);
        let p4 = Graph::path(4);
        assert_eq!(set_via_even_connected(&p4, &fact(4, &[(3, 4)])), Vec::<usize>::new());
        assert_eq!(set_via_even_connected(&p4, &fact(4, &[(2, 3)])), vec![2]);
    }

    #[test]
    fn tree_sets() {
        let t = tree_distance_labeling(&Graph::path(4), 4).unwrap().tree;
        assert_eq!(set_tree(&t, &fact(4, &[(1, 2), (2, 3)])), vec![1, 2]);
        assert_eq!(set_tree(&t, &fact(4, &[(3, 4), (3, 4)])), Vec::<usize>::new());
        assert_eq!(set_tree(&t, &fact(4, &[(2, 3), (2, 3), (2, 3)])), vec![2]);
    }

    #[test]
    fn cycle_sets() {
        let c4 = CycleLabeling::new(4).unwrap();
        assert_eq!(set_cycle(&c4, &fact(4, &[(1, 2)])), vec![1, 2]);
        assert_eq!(set_cycle(&c4, &fact(4, &[(1, 4)])), vec![1]);
        let c5 = CycleLabeling::new(5).unwrap();
        let got = set_cycle(&c5, &fact(5, &[(1, 2), (3, 4)]));
        assert!((1..=4).all(|v| got.contains(&v)));
    }

    /// Every factorization of every generator, checked against the colon sets.
    fn all_cycle_sets_agree(n: usize, s: u32) {
        let g = Graph::cycle(n).unwrap();
        let c = CycleLabeling::new(n).unwrap();
        let (gens, sm) = power_set_map(&g, s).unwrap();
        let index: HashMap<&Monomial, usize> = gens.iter().enumerate().map(|(k, f)| (&f.monomial, k)).collect();
        for combo in g.edges().iter().copied().combinations_with_replacement(s as usize) {
            let f = Factorization::new(n, EdgeMultiset::from_edges(combo));
            let k = index[&f.monomial];
            assert_eq!(set_cycle(&c, &f), sm.sets()[k], "C{n}, s={s}, {:?}", f.edges);
            assert_eq!(set_via_even_connected(&g, &f), sm.sets()[k], "C{n}, s={s}, {:?}", f.edges);
        }
    }

    #[test]
    fn cycle_sets_are_expression_independent() {
        for n in 3..=7 {
            for s in 1..=3 {
                all_cycle_sets_agree(n, s);
            }
        }
    }

    #[test]
    fn pd_values() {
        let pd = |g: &Graph, s| pd_of_power(g, s).unwrap();
        assert_eq!(pd(&Graph::path(4), 1), 1);
        assert_eq!(pd(&Graph::cycle(4).unwrap(), 1), 2);
        assert_eq!(pd(&Graph::path(3), 1), 1);
        // non-admissible labels are relabeled first
        assert_eq!(pd(&Graph::new(4, [(2, 1), (1, 3), (3, 4)]).unwrap(), 2), 2);
    }

    #[test]
    fn pd_closed_forms() {
        let tree6 = Graph::path(6);
        assert_eq!(pd_formula(&tree6, 3).unwrap(), 3);
        assert_eq!(pd_formula(&Graph::cycle(6).unwrap(), 5).unwrap(), 4);
        assert_eq!(pd_formula(&Graph::cycle(5).unwrap(), 2).unwrap(), 4);
        assert!(pd_formula(&Graph::complete(4), 1).is_err());
    }

    #[test]
    fn stabilization_scans() {
        let r = dstab_scan(&Graph::path(4), 4).unwrap();
        assert_eq!(r.pd, vec![1, 2, 2, 2]);
        assert_eq!(r.stabilizes_at, Some(2));
        assert_eq!(r.depths(4), vec![2, 1, 1, 1]);
        let r = dstab_scan(&Graph::cycle(4).unwrap(), 3).unwrap();
        assert_eq!(r.pd, vec![2, 2, 2]);
        assert_eq!(r.stabilizes_at, Some(1));
        let r = dstab_scan(&Graph::cycle(5).unwrap(), 3).unwrap();
        assert_eq!(r.pd, vec![2, 4, 4]);
        assert_eq!(r.stabilizes_at, Some(2));
    }

    #[test]
    fn pd_is_intrinsic() {
        let g = Graph::new(5, [(1, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        let base = pd_of_power(&g, 2).unwrap();
        let r = Relabeling::new(vec![5, 3, 1, 2, 4]).unwrap();
        assert_eq!(pd_of_power(&g.relabel(&r), 2).unwrap(), base);
    }
}

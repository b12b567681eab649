//! Homological shift ideals: the linear-quotient formula, closed forms for trees
//! and cycles, and the structural identities they satisfy.

use itertools::Itertools;
use serde::Serialize;

use crate::betti::{BettiTable, OracleConfig};
use crate::comp_edge::{comp_edge_ideal, pd_linear_quotients, power_set_map, set_map_colon, SetMap};
use crate::corpus::canonical_tree_labeling;
use crate::error::{Error, Result};
use crate::graph::{caterpillar_from_profile, CycleLabeling, Edge, Graph, LabeledTree, Relabeling};
use crate::monomial::{squarefree_power_of_maximal, veronese_type, Monomial, MonomialIdeal, VeroneseSpec};

/// `HS_i(I) = (x_F · u : F ⊆ set(u), |F| = i)`.
pub fn hs_linear_quotients(sm: &SetMap, i: usize) -> MonomialIdeal {
    let n = sm.nvars();
    let gens = sm
        .iter()
        .filter(|(_, set)| set.len() >= i)
        .flat_map(|(u, set)| set.iter().copied().combinations(i).map(move |f| u.mul(&Monomial::squarefree(n, f))));
    MonomialIdeal::from_generators(n, gens)
}

/// `HS_i(I_c(G)^s)` through lex linear quotients on an admissible relabeling,
/// mapped back to the original vertex names. `I^0` is the unit ideal.
pub fn hs_of_power(g: &Graph, i: usize, s: u32) -> Result<MonomialIdeal> {
    PowerTower::new(g)?.hs(i, s)
}

/// Set maps of successive powers of one `I_c(G)`, each computed once.
pub struct PowerTower {
    graph: Graph,
    relabeled: Graph,
    back: Relabeling,
    maps: Vec<SetMap>,
}

impl PowerTower {
    pub fn new(g: &Graph) -> Result<Self> {
        comp_edge_ideal(g)?;
        let r = g.admissible_relabeling()?;
        Ok(PowerTower {
            graph: g.clone(),
            relabeled: g.relabel(&r),
            back: r.inverse(),
            maps: Vec::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Set map of `I^s`, `s >= 1`, on the admissible labels.
    pub fn set_map(&mut self, s: u32) -> Result<&SetMap> {
        if s == 0 {
            return Err(Error::invalid("power must be at least 1"));
        }
        while self.maps.len() < s as usize {
            let (_, sm) = power_set_map(&self.relabeled, self.maps.len() as u32 + 1)?;
            self.maps.push(sm);
        }
        Ok(&self.maps[s as usize - 1])
    }

    pub fn pd(&mut self, s: u32) -> Result<usize> {
        Ok(pd_linear_quotients(self.set_map(s)?))
    }

    /// `HS_i(I^s)` on the original labels.
    pub fn hs(&mut self, i: usize, s: u32) -> Result<MonomialIdeal> {
        let n = self.graph.n();
        if s == 0 {
            return Ok(if i == 0 { MonomialIdeal::unit(n) } else { MonomialIdeal::zero(n) });
        }
        let h = hs_linear_quotients(self.set_map(s)?, i);
        Ok(h.reindex(self.back.as_map(), n))
    }

    /// `I^s` on the original labels.
    pub fn power(&mut self, s: u32) -> Result<MonomialIdeal> {
        self.hs(0, s)
    }
}

/// Outcome of comparing two ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: MonomialIdeal,
    pub rhs: MonomialIdeal,
    pub holds: bool,
}

impl Comparison {
    pub fn equality(lhs: MonomialIdeal, rhs: MonomialIdeal) -> Self {
        let holds = lhs == rhs;
        Comparison { lhs, rhs, holds }
    }

    /// `lhs ⊆ rhs`.
    pub fn containment(lhs: MonomialIdeal, rhs: MonomialIdeal) -> Self {
        let holds = rhs.contains_ideal(&lhs);
        Comparison { lhs, rhs, holds }
    }
}

/// Pairwise lcms of distinct generators; zero for fewer than two generators.
pub fn hs1_via_lcm(ideal: &MonomialIdeal) -> MonomialIdeal {
    let gens = ideal.generators();
    MonomialIdeal::from_generators(ideal.nvars(), gens.iter().tuple_combinations().map(|(u, v)| u.lcm(v)))
}

/// `(α / x_v : deg(v) >= 2)`.
pub fn hs1_formula(g: &Graph) -> Result<MonomialIdeal> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let alpha = Monomial::alpha(n);
    Ok(MonomialIdeal::from_generators(
        n,
        (1..=n).filter(|&v| g.degree(v) >= 2).map(|v| alpha.checked_div(&Monomial::var(n, v)).unwrap()),
    ))
}

/// `HS_1(I^{s+1}) = I^s · HS_1(I)`.
pub fn hs1_power_identity_check(g: &Graph, s: u32) -> Result<Comparison> {
    let ideal = comp_edge_ideal(g)?;
    let lhs = hs_of_power(g, 1, s + 1)?;
    let rhs = ideal.power(s).product(&hs_of_power(g, 1, 1)?);
    Ok(Comparison::equality(lhs, rhs))
}

/// `Π_{k∈F} x_{φ(k)}` over all `F ⊆ [n-2]` with `|F| = i`.
fn parent_products(t: &LabeledTree, i: usize) -> impl Iterator<Item = Monomial> + '_ {
    let n = t.n();
    (1..=n.saturating_sub(2)).combinations(i).map(move |f| Monomial::squarefree(n, f.into_iter().map(|k| t.parent(k))))
}

fn check_tree_index(t: &LabeledTree, i: usize) -> Result<()> {
    if i > t.n().saturating_sub(2) {
        return Err(Error::precondition(format!("index {i} exceeds n-2 = {}", t.n().saturating_sub(2))));
    }
    Ok(())
}

/// `K_i = (Π_{k∈F} x_{φ(k)} : F ⊆ [n-2], |F| = i)`, with `K_0` the unit ideal.
pub fn k_ideal(t: &LabeledTree, i: usize) -> Result<MonomialIdeal> {
    check_tree_index(t, i)?;
    Ok(MonomialIdeal::from_generators(t.n(), parent_products(t, i)))
}

/// `J_i = (α^i / Π_{k∈F} x_{φ(k)} : F ⊆ [n-2], |F| = i)`.
pub fn j_ideal(t: &LabeledTree, i: usize) -> Result<MonomialIdeal> {
    check_tree_index(t, i)?;
    let top = Monomial::alpha(t.n()).pow(i as u32);
    Ok(MonomialIdeal::from_generators(t.n(), parent_products(t, i).map(|p| top.checked_div(&p).expect("φ is injective on each x_k exponent up to i"))))
}

/// `HS_i(I^s) = I^{s-i} · J_i` for `1 <= i <= s`, on the tree's own labels.
pub fn hs_tree_formula(t: &LabeledTree, i: usize, s: u32) -> Result<MonomialIdeal> {
    if i == 0 || i as u32 > s {
        return Err(Error::precondition(format!("the tree formula needs 1 <= i <= s, got i={i}, s={s}")));
    }
    let n = t.n();
    if i > n.saturating_sub(2) {
        return Ok(MonomialIdeal::zero(n));
    }
    let ideal = comp_edge_ideal(t.graph())?;
    Ok(ideal.power(s - i as u32).product(&j_ideal(t, i)?))
}

/// The cycle closed form
/// `Σ_k Σ_{|F| = i-2k} (α^{i-k} / x_F) · I^{s-i+k}` over
/// `max(i - ⌈n/2⌉ + 1, 0) <= k <= ⌊i/2⌋`, valid for `1 <= i < n`, `s >= ⌊i/2⌋`.
pub fn hs_cycle_formula(c: &CycleLabeling, i: usize, s: u32) -> Result<MonomialIdeal> {
    let n = c.n();
    if i == 0 || i >= n || (s as usize) < i / 2 {
        return Err(Error::precondition(format!(
            "the cycle formula needs 1 <= i < n and s >= floor(i/2), got n={n}, i={i}, s={s}"
        )));
    }
    let ideal = comp_edge_ideal(&c.graph())?;
    let alpha = Monomial::alpha(n);
    let lo = (i + 1).saturating_sub(n.div_ceil(2));
    let mut acc = MonomialIdeal::zero(n);
    for k in lo..=i / 2 {
        let power = ideal.power_signed(s as i64 - i as i64 + k as i64);
        if power.is_zero() {
            continue;
        }
        let top = alpha.pow((i - k) as u32);
        let shifts = MonomialIdeal::from_generators(
            n,
            (1..=n).combinations(i - 2 * k).map(|f| top.checked_div(&Monomial::squarefree(n, f)).unwrap()),
        );
        acc = acc.sum(&shifts.product(&power));
    }
    Ok(acc)
}

/// `HS_{2m}(I^s) = α^m I^{s-m}` for `n = 2m+1`, `s >= m`;
/// `HS_{2m-2}(I^s) = α^{m-1} I^{s-m+1}` for `n = 2m`, `s >= m-1`.
pub fn hs_cycle_top(c: &CycleLabeling, s: u32) -> Result<(usize, MonomialIdeal)> {
    let n = c.n();
    let m = n / 2;
    let (index, shift) = if n % 2 == 1 { (2 * m, m) } else { (2 * m - 2, m - 1) };
    if (s as usize) < shift {
        return Err(Error::precondition(format!("top shift of C{n} needs s >= {shift}")));
    }
    let ideal = comp_edge_ideal(&c.graph())?;
    let top = ideal.power(s - shift as u32).mul_monomial(&Monomial::alpha(n).pow(shift as u32));
    Ok((index, top))
}

/// Evaluates whichever closed form covers `(g, i, s)`, expressed on `g`'s own
/// labels; `None` outside the proven ranges.
pub fn hs_closed_form(g: &Graph, i: usize, s: u32) -> Result<Option<MonomialIdeal>> {
    if s == 0 {
        return Ok(None);
    }
    if g.is_tree() && g.n() >= 2 {
        if i == 0 || i as u32 > s {
            return Ok(None);
        }
        let (tree, relabeling) = canonical_tree_labeling(g)?;
        let h = hs_tree_formula(&tree, i, s)?;
        return Ok(Some(h.reindex(relabeling.inverse().as_map(), g.n())));
    }
    if let Some(r) = g.cycle_relabeling() {
        let c = CycleLabeling::new(g.n())?;
        if i == 0 || i >= g.n() || (s as usize) < i / 2 {
            return Ok(None);
        }
        let h = hs_cycle_formula(&c, i, s)?;
        return Ok(Some(h.reindex(r.inverse().as_map(), g.n())));
    }
    Ok(None)
}

/// How `HS` ideals are obtained inside [`theorem_lone_check`].
#[derive(Clone, Copy, Debug)]
pub enum HsSource {
    Oracle(OracleConfig),
    /// Lex-ordered linear quotients; fails if the order has none.
    LinearQuotients,
}

impl HsSource {
    fn hs(&self, ideal: &MonomialIdeal, i: usize) -> Result<MonomialIdeal> {
        match self {
            HsSource::Oracle(cfg) => Ok(BettiTable::compute(ideal, cfg)?.hs(i)),
            HsSource::LinearQuotients => Ok(hs_linear_quotients(&set_map_colon(ideal.generators())?, i)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LoneCheck {
    /// `HS_i(I)`.
    pub hs_i: MonomialIdeal,
    /// `HS_{i-1}(mI)`.
    pub hs_prev_of_mi: MonomialIdeal,
    /// `m^{[i]} I`.
    pub target: MonomialIdeal,
    pub holds: bool,
}

impl LoneCheck {
    pub fn sum(&self) -> MonomialIdeal {
        self.hs_i.sum(&self.hs_prev_of_mi)
    }
}

/// `HS_i(I) + HS_{i-1}(mI) = m^{[i]} I` for an ideal with a linear resolution,
/// `1 <= i <= n`.
pub fn theorem_lone_check(ideal: &MonomialIdeal, i: usize, source: HsSource) -> Result<LoneCheck> {
    let n = ideal.nvars();
    if i == 0 || i > n {
        return Err(Error::precondition(format!("index must lie in [1, {n}], got {i}")));
    }
    let mi = MonomialIdeal::maximal(n).product(ideal);
    let hs_i = source.hs(ideal, i)?;
    let hs_prev_of_mi = source.hs(&mi, i - 1)?;
    let target = squarefree_power_of_maximal(n, i)?.product(ideal);
    let holds = hs_i.sum(&hs_prev_of_mi) == target;
    Ok(LoneCheck {
        hs_i,
        hs_prev_of_mi,
        target,
        holds,
    })
}

#[derive(Clone, Debug)]
pub struct VeroneseCheck {
    /// `b_k = |φ^{-1}(k) ∩ [n-2]|`.
    pub b: Vec<u32>,
    pub k_is_veronese: bool,
    /// `(Π x_k^{b_k}) · J_i = α^i · K_{n-2-i}`.
    pub cleared_identity: bool,
    pub strong_exchange: bool,
}

impl VeroneseCheck {
    pub fn holds(&self) -> bool {
        self.k_is_veronese && self.cleared_identity && self.strong_exchange
    }
}

pub fn veronese_structure_check(t: &LabeledTree, i: usize) -> Result<VeroneseCheck> {
    let n = t.n();
    if i == 0 || i > n.saturating_sub(2) {
        return Err(Error::precondition(format!("index must lie in [1, n-2], got {i}")));
    }
    let b = t.child_counts();
    let k_i = k_ideal(t, i)?;
    let k_is_veronese = k_i == veronese_type(&VeroneseSpec::new(b.clone(), i as u32)?);
    let j_i = j_ideal(t, i)?;
    let clearing = Monomial::from_exponents(b.clone());
    let lhs = j_i.mul_monomial(&clearing);
    let rhs = k_ideal(t, n - 2 - i)?.mul_monomial(&Monomial::alpha(n).pow(i as u32));
    Ok(VeroneseCheck {
        b,
        k_is_veronese,
        cleared_identity: lhs == rhs,
        strong_exchange: j_i.has_strong_exchange(),
    })
}

/// Result of realizing a Veronese-type ideal as a homological shift ideal of a
/// caterpillar.
#[derive(Clone, Debug)]
pub struct CaterpillarRealization {
    pub tree: LabeledTree,
    /// `HS_{|a|-d}(I_c(T)^{|a|-d})`.
    pub shift_ideal: MonomialIdeal,
    /// The Veronese ideal with `x_j` placed on spine vertex `σ_j + 1`.
    pub embedded: MonomialIdeal,
    /// Spine vertex carrying each Veronese variable.
    pub variable_map: Vec<usize>,
    /// Exponents of `u = Π x_k^{i - b_k}`; negative entries make `u` a Laurent monomial.
    pub u: Vec<i64>,
    /// `shift_ideal = u · embedded`, checked in cleared form.
    pub identity_holds: bool,
    /// Content-free parts of both sides agree.
    pub content_free_match: bool,
}

impl CaterpillarRealization {
    pub fn u_is_monomial(&self) -> bool {
        self.u.iter().all(|&e| e >= 0)
    }

    pub fn holds(&self) -> bool {
        self.identity_holds && self.content_free_match
    }
}

pub fn caterpillar_realization(spec: &VeroneseSpec) -> Result<CaterpillarRealization> {
    let a = &spec.caps;
    let d = spec.degree;
    if d == 0 {
        return Err(Error::precondition("degree must be at least 1"));
    }
    let tree = caterpillar_from_profile(a)?;
    let n = tree.n();
    let i = spec.total() - d;
    let shift_ideal = hs_of_power(tree.graph(), i as usize, i)?;
    let variable_map: Vec<usize> = a
        .iter()
        .scan(0usize, |sigma, &aj| {
            *sigma += aj as usize;
            Some(*sigma + 1)
        })
        .collect();
    let embedded = veronese_type(spec).reindex(&variable_map, n);
    let b = tree.child_counts();
    let u: Vec<i64> = b.iter().map(|&bk| i as i64 - bk as i64).collect();
    // shift_ideal · x^b = x^{(i,...,i)} · embedded
    let lhs = shift_ideal.mul_monomial(&Monomial::from_exponents(b));
    let rhs = embedded.mul_monomial(&Monomial::alpha(n).pow(i));
    let content_free_match = shift_ideal.divide_out()?.1 == embedded.divide_out()?.1;
    Ok(CaterpillarRealization {
        tree,
        shift_ideal,
        embedded,
        variable_map,
        u,
        identity_holds: lhs == rhs,
        content_free_match,
    })
}

/// `I · HS_i(I^s) ⊆ HS_i(I^{s+1})`.
pub fn hs_rees_containment_check(g: &Graph, i: usize, s: u32) -> Result<Comparison> {
    let ideal = comp_edge_ideal(g)?;
    let lhs = ideal.product(&hs_of_power(g, i, s)?);
    Ok(Comparison::containment(lhs, hs_of_power(g, i, s + 1)?))
}

/// `u^s · HS_i(I_c(H)^s) ⊆ HS_i(I_c(G)^s)` for the connected subgraph `H`
/// spanned by `h_edges`, with `u` the product of the vertices outside `H`.
pub fn hs_subgraph_containment_check(g: &Graph, h_edges: &[Edge], i: usize, s: u32) -> Result<Comparison> {
    let (h, verts) = g.edge_subgraph(h_edges)?;
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let u = Monomial::squarefree(n, (1..=n).filter(|v| verts.binary_search(v).is_err()));
    let lhs = hs_of_power(&h, i, s)?.reindex(&verts, n).mul_monomial(&u.pow(s));
    Ok(Comparison::containment(lhs, hs_of_power(g, i, s)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationProfile {
    /// Powers `s` at which `HS_i(I^s)` is not `I · HS_i(I^{s-1})`.
    pub new_in_degree: Vec<u32>,
    /// The known bound, when the graph is a tree or a cycle.
    pub bound: Option<u32>,
    /// Whether the profile respects the bound; `None` when no bound applies.
    pub within_bound: Option<bool>,
}

/// Degrees `s ∈ [0, s_max]` in which `⊕_s HS_i(I^s)` needs new generators over
/// the Rees algebra.
pub fn generation_degree_profile(g: &Graph, i: usize, s_max: u32) -> Result<GenerationProfile> {
    let ideal = comp_edge_ideal(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut new_in_degree = Vec::new();
    let mut prev = hs_of_power(g, i, 0)?;
    if !prev.is_zero() {
        new_in_degree.push(0);
    }
    for s in 1..=s_max {
        let cur = hs_of_power(g, i, s)?;
        if cur != ideal.product(&prev) {
            new_in_degree.push(s);
        }
        prev = cur;
    }
    let n = g.n();
    let (bound, within_bound) = if g.is_tree() {
        // exactly degree i when HS_i is nonzero
        let expected: Vec<u32> = if i <= n.saturating_sub(2) && i as u32 <= s_max { vec![i as u32] } else { vec![] };
        (Some(i as u32), Some(new_in_degree == expected))
    } else if g.is_cycle() && (1..n).contains(&i) {
        let q = (i + 1).saturating_sub(n.div_ceil(2));
        let b = (i - q) as u32;
        (Some(b), Some(new_in_degree.iter().all(|&s| s <= b)))
    } else {
        (None, None)
    };
    Ok(GenerationProfile {
        new_in_degree,
        bound,
        within_bound,
    })
}

/// The `k = 0` part of the cycle formula equals the sum over spanning paths,
/// for `i < n/2` and `s >= i`.
pub fn spanning_path_component_check(c: &CycleLabeling, i: usize, s: u32) -> Result<Comparison> {
    let n = c.n();
    if i == 0 || 2 * i >= n || (s as usize) < i {
        return Err(Error::precondition("needs 1 <= i < n/2 and s >= i"));
    }
    let ideal = comp_edge_ideal(&c.graph())?;
    let alpha = Monomial::alpha(n).pow(i as u32);
    let component = MonomialIdeal::from_generators(
        n,
        (1..=n).combinations(i).map(|f| alpha.checked_div(&Monomial::squarefree(n, f)).unwrap()),
    )
    .product(&ideal.power(s - i as u32));
    let mut paths = MonomialIdeal::zero(n);
    for (path, _) in crate::graph::spanning_paths_of_cycle(c) {
        paths = paths.sum(&hs_of_power(&path, i, s)?);
    }
    Ok(Comparison::equality(paths, component))
}

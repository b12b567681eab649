//! Verification suites over the built-in corpus, reported as JSON lines.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::betti::{betti_monotonicity_check, characteristic_agrees, pd_oracle, BettiTable, OracleConfig};
use crate::comp_edge::{dstab_scan, pd_formula, power_set_map, set_cycle, set_tree, set_via_even_connected};
use crate::corpus::{compositions, connected_corpus, connected_graph_classes, cycles, distance_labeled_trees, sample_relabelings, MAX_N};
use crate::error::{Error, Result};
use crate::graph::{tree_distance_labeling, CycleLabeling, Edge, Graph, LabeledTree};
use crate::hs::{
    caterpillar_realization, generation_degree_profile, hs1_formula, hs1_power_identity_check, hs1_via_lcm, hs_cycle_formula, hs_cycle_top,
    hs_rees_containment_check, hs_subgraph_containment_check, hs_tree_formula, spanning_path_component_check,
    theorem_lone_check, veronese_structure_check, Comparison, HsSource, PowerTower,
};
use crate::monomial::{MonomialIdeal, VeroneseSpec};

/// Oracle-backed checks stop at this many vertices.
pub const ORACLE_MAX_N: usize = 5;
/// Oracle-backed checks stop at this power.
pub const ORACLE_MAX_S: u32 = 2;
/// Largest power in the set-map and closed-form scans.
pub const SCAN_MAX_S: u32 = 3;
/// Arbitrary graphs (not trees or cycles) stop at this many vertices.
pub const GRAPHS_MAX_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    SetMaps,
    HsFormulas,
    Lone,
    Veronese,
    Caterpillar,
    Monotonicity,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::SetMaps,
        Suite::HsFormulas,
        Suite::Lone,
        Suite::Veronese,
        Suite::Caterpillar,
        Suite::Monotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SetMaps => "set-maps",
            Suite::HsFormulas => "hs-formulas",
            Suite::Lone => "lone",
            Suite::Veronese => "veronese",
            Suite::Caterpillar => "caterpillar",
            Suite::Monotonicity => "monotonicity",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Largest vertex count, at most [`MAX_N`].
    pub max_n: usize,
    pub oracle: bool,
    pub oracle_config: OracleConfig,
    /// Seed for the random relabelings of the isomorphism-class representatives.
    pub seed: u64,
    /// Random relabelings per representative.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: MAX_N,
            oracle: true,
            oracle_config: OracleConfig::default(),
            seed: 0,
            samples: 2,
        }
    }
}

/// One verdict line.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub check: &'static str,
    pub instance: Value,
    /// `None` for skipped checks.
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_gens: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_gens: Option<usize>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckRecord {
    fn new(check: &'static str, instance: Value, verdict: bool) -> Self {
        CheckRecord {
            check,
            instance,
            verdict: Some(verdict),
            lhs_gens: None,
            rhs_gens: None,
            skipped: false,
            error: None,
        }
    }

    fn counts(mut self, lhs: usize, rhs: usize) -> Self {
        self.lhs_gens = Some(lhs);
        self.rhs_gens = Some(rhs);
        self
    }

    fn skipped(check: &'static str, instance: Value) -> Self {
        CheckRecord {
            verdict: None,
            skipped: true,
            ..CheckRecord::new(check, instance, false)
        }
    }

    fn failed(check: &'static str, instance: Value, e: Error) -> Self {
        CheckRecord {
            error: Some(e.to_string()),
            ..CheckRecord::new(check, instance, false)
        }
    }

    fn from_bool(check: &'static str, instance: Value, r: Result<bool>) -> Self {
        match r {
            Ok(v) => CheckRecord::new(check, instance, v),
            Err(e) => CheckRecord::failed(check, instance, e),
        }
    }

    fn from_comparison(check: &'static str, instance: Value, r: Result<Comparison>) -> Self {
        match r {
            Ok(c) => CheckRecord::new(check, instance, c.holds).counts(c.lhs.num_gens(), c.rhs.num_gens()),
            Err(e) => CheckRecord::failed(check, instance, e),
        }
    }

    /// Folds several comparisons into one record, summing generator counts.
    fn from_comparisons(check: &'static str, instance: Value, r: Result<Vec<Comparison>>) -> Self {
        match r {
            Ok(cs) => {
                let holds = cs.iter().all(|c| c.holds);
                let lhs = cs.iter().map(|c| c.lhs.num_gens()).sum();
                let rhs = cs.iter().map(|c| c.rhs.num_gens()).sum();
                CheckRecord::new(check, instance, holds).counts(lhs, rhs)
            }
            Err(e) => CheckRecord::failed(check, instance, e),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.verdict != Some(false))
    }

    /// `(passed, failed, skipped)`.
    pub fn tally(&self) -> (usize, usize, usize) {
        self.records.iter().fold((0, 0, 0), |(p, f, s), r| match r.verdict {
            Some(true) => (p + 1, f, s),
            Some(false) => (p, f + 1, s),
            None => (p, f, s + 1),
        })
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.verdict == Some(false))
    }

    pub fn to_json_lines(&self) -> String {
        self.records.iter().map(|r| serde_json::to_string(r).expect("records serialize") + "\n").collect()
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    if !(2..=MAX_N).contains(&cfg.max_n) {
        return Err(Error::invalid(format!("max-n must lie in [2, {MAX_N}], got {}", cfg.max_n)));
    }
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut records = Vec::new();
    for s in suites {
        records.extend(match s {
            Suite::SetMaps => set_maps(cfg),
            Suite::HsFormulas => hs_formulas(cfg),
            Suite::Lone => lone(cfg),
            Suite::Veronese => veronese(cfg),
            Suite::Caterpillar => caterpillar(cfg),
            Suite::Monotonicity => monotonicity(cfg),
            Suite::All => unreachable!(),
        });
    }
    Ok(Report { records })
}

fn graph_instance(g: &Graph) -> Value {
    json!({ "graph": g.to_json() })
}

fn with(mut v: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
        a.extend(b);
    }
    v
}

/// Runs `f` on every item in parallel, keeping item order.
fn per_item<T: Sync>(items: &[T], f: impl Fn(&T) -> Vec<CheckRecord> + Sync + Send) -> Vec<CheckRecord> {
    items.par_iter().map(f).collect::<Vec<_>>().concat()
}

/// Connected graphs up to [`GRAPHS_MAX_N`] vertices, plus seeded relabelings of the
/// isomorphism-class representatives.
fn graph_corpus(cfg: &VerifyConfig) -> Vec<Graph> {
    let top = cfg.max_n.min(GRAPHS_MAX_N);
    let mut graphs = connected_corpus(top);
    if top > crate::corpus::LABELED_GRAPHS_MAX_N {
        for (k, g) in connected_graph_classes(top).iter().enumerate() {
            graphs.extend(sample_relabelings(g, cfg.samples, cfg.seed.wrapping_add(k as u64)));
        }
    }
    graphs
}

fn oracle_corpus(cfg: &VerifyConfig) -> Vec<Graph> {
    connected_corpus(cfg.max_n.min(ORACLE_MAX_N))
}

fn trees(cfg: &VerifyConfig) -> Vec<LabeledTree> {
    (2..=cfg.max_n).flat_map(distance_labeled_trees).collect()
}

fn cycle_labelings(cfg: &VerifyConfig) -> Vec<CycleLabeling> {
    (3..=cfg.max_n).map(|n| CycleLabeling::new(n).unwrap()).collect()
}

/// Colon sets against a second set function, generator by generator.
fn compare_sets(g: &Graph, s: u32, other: impl Fn(&crate::comp_edge::Factorization) -> Vec<usize>) -> Result<(usize, usize)> {
    let (gens, sm) = power_set_map(g, s)?;
    let agree = gens.iter().zip(sm.sets()).filter(|(f, set)| other(f) == **set).count();
    Ok((gens.len(), agree))
}

fn set_record(check: &'static str, instance: Value, r: Result<(usize, usize)>) -> CheckRecord {
    match r {
        Ok((total, agree)) => CheckRecord::new(check, instance, total == agree).counts(total, agree),
        Err(e) => CheckRecord::failed(check, instance, e),
    }
}

fn set_maps(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let mut walk_graphs = graph_corpus(cfg);
    if cfg.max_n > GRAPHS_MAX_N {
        walk_graphs.extend(trees(cfg).into_iter().filter(|t| t.n() > GRAPHS_MAX_N).map(|t| t.graph().clone()));
        walk_graphs.extend(cycles(cfg.max_n).into_iter().filter(|c| c.n() > GRAPHS_MAX_N));
    }
    out.extend(per_item(&walk_graphs, |g| {
        let relabeled = match g.admissible_relabeling() {
            Ok(r) => g.relabel(&r),
            Err(e) => return vec![CheckRecord::failed("set-map-walks", graph_instance(g), e)],
        };
        (1..=SCAN_MAX_S)
            .map(|s| {
                let inst = with(graph_instance(g), json!({ "labels": relabeled.to_json(), "s": s }));
                set_record("set-map-walks", inst, compare_sets(&relabeled, s, |f| set_via_even_connected(&relabeled, f)))
            })
            .collect()
    }));
    let trees = trees(cfg);
    out.extend(per_item(&trees, |t| {
        (1..=SCAN_MAX_S)
            .map(|s| {
                let inst = with(graph_instance(t.graph()), json!({ "s": s }));
                set_record("set-map-tree", inst, compare_sets(t.graph(), s, |f| set_tree(t, f)))
            })
            .collect()
    }));
    let cyc = cycle_labelings(cfg);
    out.extend(per_item(&cyc, |c| {
        let g = c.graph();
        (1..=SCAN_MAX_S)
            .map(|s| {
                let inst = with(graph_instance(&g), json!({ "s": s }));
                set_record("set-map-cycle", inst, compare_sets(&g, s, |f| set_cycle(c, f)))
            })
            .collect()
    }));
    out.extend(per_item(&trees, |t| pd_formula_records("pd-tree-formula", t.graph(), t.n() as u32)));
    let cycle_graphs = cycles(cfg.max_n);
    out.extend(per_item(&cycle_graphs, |g| pd_formula_records("pd-cycle-formula", g, 4)));
    let oracle_graphs = oracle_corpus(cfg);
    out.extend(per_item(&oracle_graphs, |g| {
        (1..=ORACLE_MAX_S)
            .map(|s| {
                let inst = with(graph_instance(g), json!({ "s": s }));
                if !cfg.oracle {
                    return CheckRecord::skipped("pd-oracle", inst);
                }
                let r = (|| {
                    let mut tower = PowerTower::new(g)?;
                    let lq = tower.pd(s)?;
                    let oracle = pd_oracle(&tower.power(s)?, &cfg.oracle_config)?;
                    Ok((lq, oracle))
                })();
                match r {
                    Ok((lq, oracle)) => CheckRecord::new("pd-oracle", with(inst, json!({ "pd": lq, "oracle_pd": oracle })), lq == oracle),
                    Err(e) => CheckRecord::failed("pd-oracle", inst, e),
                }
            })
            .collect()
    }));
    out
}

fn pd_formula_records(check: &'static str, g: &Graph, s_max: u32) -> Vec<CheckRecord> {
    let mut tower = match PowerTower::new(g) {
        Ok(t) => t,
        Err(e) => return vec![CheckRecord::failed(check, graph_instance(g), e)],
    };
    (1..=s_max)
        .map(|s| {
            let inst = with(graph_instance(g), json!({ "s": s }));
            match tower.pd(s).and_then(|lq| Ok((lq, pd_formula(g, s)?))) {
                Ok((lq, formula)) => CheckRecord::new(check, with(inst, json!({ "pd": lq, "formula": formula })), lq == formula),
                Err(e) => CheckRecord::failed(check, inst, e),
            }
        })
        .collect()
}

/// Every generator of `h` is `x_F · u` with `u` a generator of `base` and `F` an `i`-set.
fn generators_have_shift_shape(h: &MonomialIdeal, base: &MonomialIdeal, i: usize) -> bool {
    h.generators().iter().all(|g| {
        base.generators().iter().any(|u| {
            g.checked_div(u)
                .is_some_and(|q| q.degree() == i as u32 && q.exponents().iter().all(|&e| e <= 1))
        })
    })
}

fn hs_formulas(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let trees = trees(cfg);
    out.extend(per_item(&trees, |t| {
        let mut tower = PowerTower::new(t.graph()).expect("trees on >= 2 vertices have edges");
        let mut recs = Vec::new();
        for s in 1..=SCAN_MAX_S {
            for i in 1..=s as usize {
                let inst = with(graph_instance(t.graph()), json!({ "i": i, "s": s }));
                let r = hs_tree_formula(t, i, s).and_then(|f| Ok(Comparison::equality(f, tower.hs(i, s)?)));
                recs.push(CheckRecord::from_comparison("hs-tree-formula", inst, r));
            }
        }
        recs
    }));
    // the closed form evaluated through every distance labeling of the same tree
    let small_trees: Vec<&LabeledTree> = trees.iter().filter(|t| t.n() <= GRAPHS_MAX_N).collect();
    out.extend(per_item(&small_trees, |t| {
        let g = t.graph();
        let mut tower = PowerTower::new(g).expect("tree has edges");
        let leaves: Vec<usize> = (1..=g.n()).filter(|&v| g.degree(v) == 1).collect();
        let mut recs = Vec::new();
        for s in 1..=SCAN_MAX_S {
            for i in 1..=s as usize {
                let inst = with(graph_instance(g), json!({ "i": i, "s": s, "roots": leaves }));
                let r = (|| {
                    let reference = tower.hs(i, s)?;
                    leaves
                        .iter()
                        .map(|&root| {
                            let tl = tree_distance_labeling(g, root)?;
                            let h = hs_tree_formula(&tl.tree, i, s)?.reindex(tl.relabeling.inverse().as_map(), g.n());
                            Ok(Comparison::equality(h, reference.clone()))
                        })
                        .collect::<Result<Vec<_>>>()
                })();
                recs.push(CheckRecord::from_comparisons("hs-tree-labeling-independence", inst, r));
            }
        }
        recs
    }));
    let cyc = cycle_labelings(cfg);
    out.extend(per_item(&cyc, |c| {
        let g = c.graph();
        let n = c.n();
        let mut tower = PowerTower::new(&g).expect("cycles have edges");
        let mut recs = Vec::new();
        for i in 1..n {
            for s in ((i / 2) as u32).max(1)..=SCAN_MAX_S {
                let inst = with(graph_instance(&g), json!({ "i": i, "s": s }));
                let r = hs_cycle_formula(c, i, s).and_then(|f| Ok(Comparison::equality(f, tower.hs(i, s)?)));
                recs.push(CheckRecord::from_comparison("hs-cycle-formula", inst, r));
            }
        }
        for s in 1..=SCAN_MAX_S {
            let inst = with(graph_instance(&g), json!({ "s": s }));
            match hs_cycle_top(c, s) {
                Ok((i, top)) => {
                    let r = tower.hs(i, s).map(|h| Comparison::equality(top, h));
                    recs.push(CheckRecord::from_comparison("hs-cycle-top", with(inst, json!({ "i": i })), r));
                }
                Err(Error::Precondition(_)) => {}
                Err(e) => recs.push(CheckRecord::failed("hs-cycle-top", inst, e)),
            }
        }
        // the triangle is a counterexample once s > i, see the unit tests in `hs`
        for i in (1..n).filter(|&i| 2 * i < n && n >= 4) {
            for s in i as u32..=SCAN_MAX_S {
                let inst = with(graph_instance(&g), json!({ "i": i, "s": s }));
                recs.push(CheckRecord::from_comparison("hs-spanning-paths", inst, spanning_path_component_check(c, i, s)));
            }
        }
        recs
    }));
    // degrees where HS_i of the Rees algebra needs new generators, on families with a proven bound
    let mut bounded: Vec<Graph> = small_trees.iter().map(|t| t.graph().clone()).collect();
    bounded.extend(cycles(cfg.max_n.min(GRAPHS_MAX_N)));
    out.extend(per_item(&bounded, |g| {
        (1..g.n())
            .map(|i| {
                let inst = with(graph_instance(g), json!({ "i": i, "s_max": SCAN_MAX_S + 1 }));
                match generation_degree_profile(g, i, SCAN_MAX_S + 1) {
                    Ok(p) => CheckRecord::new(
                        "hs-generation-degree",
                        with(inst, json!({ "new_in_degree": p.new_in_degree, "bound": p.bound })),
                        p.within_bound == Some(true),
                    ),
                    Err(e) => CheckRecord::failed("hs-generation-degree", inst, e),
                }
            })
            .collect()
    }));
    let graphs = graph_corpus(cfg);
    out.extend(per_item(&graphs, |g| {
        let mut recs = Vec::new();
        let inst = graph_instance(g);
        let r = (|| {
            let mut tower = PowerTower::new(g)?;
            let lq = tower.hs(1, 1)?;
            let lcm = hs1_via_lcm(&tower.power(1)?);
            let formula = hs1_formula(g)?;
            Ok(vec![Comparison::equality(formula, lq.clone()), Comparison::equality(lcm, lq)])
        })();
        recs.push(CheckRecord::from_comparisons("hs1-formula", inst.clone(), r));
        for s in 1..=SCAN_MAX_S {
            let inst = with(inst.clone(), json!({ "s": s }));
            recs.push(CheckRecord::from_comparison("hs1-power-identity", inst, hs1_power_identity_check(g, s)));
        }
        let mut tower = match PowerTower::new(g) {
            Ok(t) => t,
            Err(e) => {
                recs.push(CheckRecord::failed("hs-structure", inst, e));
                return recs;
            }
        };
        for s in 1..=ORACLE_MAX_S {
            let inst = with(inst.clone(), json!({ "s": s }));
            let r = (|| {
                let pd = tower.pd(s)?;
                let power = tower.power(s)?;
                let mut vanishing = true;
                let mut shape = true;
                for i in 0..=g.n() {
                    let h = tower.hs(i, s)?;
                    vanishing &= h.is_zero() == (i > pd);
                    shape &= generators_have_shift_shape(&h, &power, i);
                }
                Ok((vanishing, shape))
            })();
            match r {
                Ok((v, sh)) => {
                    recs.push(CheckRecord::new("hs-vanishing", inst.clone(), v));
                    recs.push(CheckRecord::new("hs-generator-shape", inst.clone(), sh));
                }
                Err(e) => recs.push(CheckRecord::failed("hs-vanishing", inst.clone(), e)),
            }
            let r = (0..g.n()).map(|i| hs_rees_containment_check(g, i, s)).collect();
            recs.push(CheckRecord::from_comparisons("hs-rees-containment", inst.clone(), r));
            for h_edges in connected_subgraphs(g) {
                let sub = with(inst.clone(), json!({ "subgraph": h_edges.iter().map(|e| [e.low(), e.high()]).collect_vec() }));
                let r = (0..g.n()).map(|i| hs_subgraph_containment_check(g, &h_edges, i, s)).collect();
                recs.push(CheckRecord::from_comparisons("hs-subgraph-containment", sub.clone(), r));
                let r = (|| {
                    let (h, _) = g.edge_subgraph(&h_edges)?;
                    Ok(PowerTower::new(&h)?.pd(s)? <= tower.pd(s)?)
                })();
                recs.push(CheckRecord::from_bool("pd-subgraph", sub, r));
            }
        }
        recs
    }));
    let oracle_graphs = oracle_corpus(cfg);
    out.extend(per_item(&oracle_graphs, |g| {
        (1..=ORACLE_MAX_S)
            .map(|s| {
                let inst = with(graph_instance(g), json!({ "s": s }));
                if !cfg.oracle {
                    return CheckRecord::skipped("hs-oracle", inst);
                }
                let r = (|| {
                    let mut tower = PowerTower::new(g)?;
                    let table = BettiTable::compute(&tower.power(s)?, &cfg.oracle_config)?;
                    (0..=g.n()).map(|i| Ok(Comparison::equality(tower.hs(i, s)?, table.hs(i)))).collect()
                })();
                CheckRecord::from_comparisons("hs-oracle", inst, r)
            })
            .collect()
    }));
    out
}

/// Connected proper subgraphs used for containment checks: `G - e` for each
/// non-bridge `e`, and `G - v` for each vertex whose removal leaves a connected
/// graph with an edge.
fn connected_subgraphs(g: &Graph) -> Vec<Vec<Edge>> {
    let mut out = Vec::new();
    for &e in g.edges() {
        let rest: Vec<Edge> = g.edges().iter().copied().filter(|&f| f != e).collect();
        if spans_connected(g.n(), &rest) {
            out.push(rest);
        }
    }
    for v in 1..=g.n() {
        let rest: Vec<Edge> = g.edges().iter().copied().filter(|f| !f.contains(v)).collect();
        if !rest.is_empty() && g.edge_subgraph(&rest).is_ok_and(|(h, verts)| verts.len() == g.n() - 1 && h.is_connected()) {
            out.push(rest);
        }
    }
    out
}

fn spans_connected(n: usize, edges: &[Edge]) -> bool {
    Graph::new(n, edges.iter().map(|e| (e.low(), e.high()))).is_ok_and(|h| h.is_connected())
}

fn lone(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let graphs = oracle_corpus(cfg);
    per_item(&graphs, |g| {
        (1..=g.n())
            .map(|i| {
                let inst = with(graph_instance(g), json!({ "i": i }));
                if !cfg.oracle {
                    return CheckRecord::skipped("hs-lone-identity", inst);
                }
                let r = crate::comp_edge::comp_edge_ideal(g).and_then(|ideal| theorem_lone_check(&ideal, i, HsSource::Oracle(cfg.oracle_config)));
                match r {
                    Ok(c) => CheckRecord::new("hs-lone-identity", inst, c.holds).counts(c.sum().num_gens(), c.target.num_gens()),
                    Err(e) => CheckRecord::failed("hs-lone-identity", inst, e),
                }
            })
            .collect()
    })
}

fn veronese(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let trees = trees(cfg);
    per_item(&trees, |t| {
        (1..=t.n().saturating_sub(2))
            .map(|i| {
                let inst = with(graph_instance(t.graph()), json!({ "i": i }));
                match veronese_structure_check(t, i) {
                    Ok(c) => CheckRecord::new(
                        "veronese-structure",
                        with(
                            inst,
                            json!({
                                "b": c.b,
                                "k_is_veronese": c.k_is_veronese,
                                "cleared_identity": c.cleared_identity,
                                "strong_exchange": c.strong_exchange,
                            }),
                        ),
                        c.holds(),
                    ),
                    Err(e) => CheckRecord::failed("veronese-structure", inst, e),
                }
            })
            .collect()
    })
}

fn caterpillar(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let cases: Vec<(Vec<u32>, u32)> = (1..=cfg.max_n as u32 - 2)
        .flat_map(|t| compositions(t).into_iter().flat_map(move |a| (1..=t).map(move |d| (a.clone(), d))))
        .collect();
    per_item(&cases, |(a, d)| {
        let inst = json!({ "profile": a, "d": d });
        let r = VeroneseSpec::new(a.clone(), *d).and_then(|spec| caterpillar_realization(&spec));
        vec![match r {
            Ok(c) => CheckRecord::new(
                "caterpillar-realization",
                with(inst, json!({ "tree": c.tree.graph().to_json(), "u": c.u, "u_is_monomial": c.u_is_monomial() })),
                c.holds(),
            )
            .counts(c.shift_ideal.num_gens(), c.embedded.num_gens()),
            Err(e) => CheckRecord::failed("caterpillar-realization", inst, e),
        }]
    })
}

fn monotonicity(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    let mut graphs = connected_corpus(cfg.max_n.min(GRAPHS_MAX_N));
    if cfg.max_n > GRAPHS_MAX_N {
        graphs.extend(trees(cfg).into_iter().filter(|t| t.n() > GRAPHS_MAX_N).map(|t| t.graph().clone()));
        graphs.extend(cycles(cfg.max_n).into_iter().filter(|c| c.n() > GRAPHS_MAX_N));
    }
    let mut out = per_item(&graphs, |g| {
        let n = g.n();
        let s_max = (n as u32).saturating_sub(1).max(1);
        let inst = with(graph_instance(g), json!({ "s_max": s_max }));
        let report = match dstab_scan(g, s_max) {
            Ok(r) => r,
            Err(e) => return vec![CheckRecord::failed("pd-nondecreasing", inst, e)],
        };
        let inst = with(inst, json!({ "pd": report.pd }));
        let pd = &report.pd;
        let mut recs = vec![
            CheckRecord::new("pd-nondecreasing", inst.clone(), pd.windows(2).all(|w| w[0] <= w[1])),
            CheckRecord::new(
                "pd-ceiling",
                inst.clone(),
                report.stabilizes_at.is_some_and(|s| s as usize <= n.saturating_sub(2).max(1)),
            ),
        ];
        // K2 gives the unit ideal, with pd 0
        if n >= 3 {
            recs.push(CheckRecord::new("pd-first-power", inst.clone(), (1..=2).contains(&pd[0])));
            recs.push(CheckRecord::new("pd-one-iff-tree", inst.clone(), (pd[0] == 1) == g.is_tree()));
        }
        if g.is_bipartite() {
            let strict = pd.windows(2).all(|w| w[0] >= n - 2 || w[0] < w[1]);
            recs.push(CheckRecord::new("pd-strict-bipartite", inst.clone(), strict));
        }
        recs.push(CheckRecord::from_bool("set-extremes", inst, set_extremes(g, s_max)));
        recs
    });
    let oracle_graphs = oracle_corpus(cfg);
    out.extend(per_item(&oracle_graphs, |g| {
        let mut recs = Vec::new();
        for s in 1..=ORACLE_MAX_S {
            let inst = with(graph_instance(g), json!({ "s": s }));
            if !cfg.oracle {
                for check in ["betti-total-monotonicity", "betti-shift-domination", "betti-linear-concentration", "betti-characteristic"] {
                    recs.push(CheckRecord::skipped(check, inst.clone()));
                }
                continue;
            }
            let r = (|| {
                let mut tower = PowerTower::new(g)?;
                let ideal = tower.power(1)?;
                let cur = tower.power(s)?;
                let next = tower.power(s + 1)?;
                let t_cur = BettiTable::compute(&cur, &cfg.oracle_config)?;
                let t_next = BettiTable::compute(&next, &cfg.oracle_config)?;
                let (a, b) = (t_cur.totals(), t_next.totals());
                let totals = a.iter().enumerate().all(|(i, &x)| x <= b.get(i).copied().unwrap_or(0));
                let u = &ideal.generators()[0];
                let domination = betti_monotonicity_check(&cur.mul_monomial(u), &next, &cfg.oracle_config)?;
                let d = cur.single_degree().expect("powers are equigenerated");
                let linear = t_cur.iter().all(|(i, a, _)| a.degree() == d + i as u32);
                let characteristic = characteristic_agrees(&cur, cfg.oracle_config.lattice_cap)?;
                Ok([totals, domination, linear, characteristic])
            })();
            match r {
                Ok(vs) => {
                    for (check, v) in ["betti-total-monotonicity", "betti-shift-domination", "betti-linear-concentration", "betti-characteristic"]
                        .into_iter()
                        .zip(vs)
                    {
                        recs.push(CheckRecord::new(check, inst.clone(), v));
                    }
                }
                Err(e) => recs.push(CheckRecord::failed("betti-total-monotonicity", inst, e)),
            }
        }
        recs
    }));
    out
}

/// Bipartite graphs never put `n-1` in a set; other graphs reach `set = [n-1]`
/// within the scan. Sets are read on the admissible labels.
fn set_extremes(g: &Graph, s_max: u32) -> Result<bool> {
    let n = g.n();
    let mut tower = PowerTower::new(g)?;
    let mut full = false;
    let mut bounded = true;
    for s in 1..=s_max {
        for set in tower.set_map(s)?.sets() {
            bounded &= set.iter().all(|&v| v <= n.saturating_sub(2));
            full |= *set == (1..n).collect::<Vec<_>>();
        }
    }
    Ok(if g.is_bipartite() { bounded } else { full })
}

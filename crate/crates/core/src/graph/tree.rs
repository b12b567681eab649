use crate::error::{Error, Result};

use super::{Edge, Graph, Relabeling};

/// A tree whose labels are non-increasing in distance to the leaf `n`.
///
/// Every `j < n` then has exactly one neighbor larger than itself, its parent `φ(j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledTree {
    graph: Graph,
    parent: Vec<usize>,
}

impl LabeledTree {
    pub fn new(graph: Graph) -> Result<Self> {
        let n = graph.n();
        if n < 2 || !graph.is_tree() {
            return Err(Error::precondition("labeled trees need a tree on at least 2 vertices"));
        }
        if graph.degree(n) != 1 {
            return Err(Error::precondition(format!("vertex {n} must be a leaf")));
        }
        let dist: Vec<usize> = {
            let mut d = vec![0; n];
            for (v, dv) in graph.bfs(n, |_| true) {
                d[v - 1] = dv;
            }
            d
        };
        if dist.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::precondition("labels must be non-increasing in distance to vertex n"));
        }
        let mut parent = Vec::with_capacity(n - 1);
        for j in 1..n {
            let up: Vec<usize> = graph.neighbors(j).iter().copied().filter(|&k| k > j).collect();
            if up.len() != 1 {
                return Err(Error::precondition(format!("vertex {j} has {} larger neighbors", up.len())));
            }
            parent.push(up[0]);
        }
        Ok(LabeledTree { graph, parent })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `φ(j)` for `1 <= j < n`.
    pub fn parent(&self, j: usize) -> usize {
        self.parent[j - 1]
    }

    /// `b_k = |φ^{-1}(k) ∩ [n-2]|` for `k = 1..=n` (index `k-1`).
    pub fn child_counts(&self) -> Vec<u32> {
        let n = self.n();
        let mut b = vec![0; n];
        for j in 1..n.saturating_sub(1) {
            b[self.parent(j) - 1] += 1;
        }
        b
    }
}

/// A distance labeling together with the map from the original vertex names.
#[derive(Clone, Debug)]
pub struct TreeLabeling {
    pub tree: LabeledTree,
    /// Original vertex `v` carries label `relabeling.apply(v)` in `tree`.
    pub relabeling: Relabeling,
}

/// Relabels `t` so that `root_leaf` becomes `n` and labels decrease with distance to it.
///
/// Ties are broken by breadth-first layer, then by original vertex name: within a
/// layer, smaller names receive smaller labels.
pub fn tree_distance_labeling(t: &Graph, root_leaf: usize) -> Result<TreeLabeling> {
    let n = t.n();
    if !t.is_tree() {
        return Err(Error::precondition("graph is not a tree"));
    }
    if root_leaf == 0 || root_leaf > n || t.degree(root_leaf) != 1 {
        return Err(Error::precondition(format!("vertex {root_leaf} is not a leaf")));
    }
    let mut order = t.bfs(root_leaf, |_| true);
    order.sort_by_key(|&(v, d)| (std::cmp::Reverse(d), v));
    let mut new_label = vec![0; n];
    for (rank, (v, _)) in order.into_iter().enumerate() {
        new_label[v - 1] = rank + 1;
    }
    let relabeling = Relabeling::new(new_label)?;
    let tree = LabeledTree::new(t.relabel(&relabeling))?;
    Ok(TreeLabeling { tree, relabeling })
}

/// The caterpillar whose parent map has `|φ^{-1}(σ_j + 1)| = a_j`, where `σ_j = a_1 + ... + a_j`.
///
/// Spine `σ_1+1, ..., σ_n+1, σ_n+2`; leaves `1..=σ_1` hang off `σ_1+1` and leaves
/// `σ_{i-1}+2..=σ_i` hang off `σ_i+1`.
pub fn caterpillar_from_profile(profile: &[u32]) -> Result<LabeledTree> {
    if profile.is_empty() || profile.contains(&0) {
        return Err(Error::precondition("profile entries must all be positive"));
    }
    let sigma: Vec<usize> = profile
        .iter()
        .scan(0usize, |acc, &a| {
            *acc += a as usize;
            Some(*acc)
        })
        .collect();
    let total = *sigma.last().unwrap();
    let mut edges = Vec::new();
    for w in sigma.windows(2) {
        edges.push((w[0] + 1, w[1] + 1));
    }
    edges.push((total + 1, total + 2));
    for leaf in 1..=sigma[0] {
        edges.push((leaf, sigma[0] + 1));
    }
    for i in 1..sigma.len() {
        for leaf in sigma[i - 1] + 2..=sigma[i] {
            edges.push((leaf, sigma[i] + 1));
        }
    }
    LabeledTree::new(Graph::new(total + 2, edges)?)
}

/// The cycle `1 - 2 - ... - n - 1` with `e_j = {j, j+1}` and `e_0 = e_n = {n, 1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CycleLabeling {
    n: usize,
}

impl CycleLabeling {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::precondition(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Ok(CycleLabeling { n })
    }

    /// Accepts only graphs already labeled in cyclic order.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let c = CycleLabeling::new(g.n())?;
        if *g != c.graph() {
            return Err(Error::precondition("graph is not the cycle 1-2-...-n-1"));
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> Graph {
        Graph::cycle(self.n).expect("n >= 3")
    }

    /// `e_j` for `0 <= j <= n`.
    pub fn edge(&self, j: usize) -> Edge {
        assert!(j <= self.n);
        if j == 0 || j == self.n {
            Edge::new(self.n, 1).unwrap()
        } else {
            Edge::new(j, j + 1).unwrap()
        }
    }

    /// The index `j` in `0..n` with `e_j == e`.
    pub fn index_of(&self, e: Edge) -> Option<usize> {
        if e == self.edge(0) {
            Some(0)
        } else if e.high() == e.low() + 1 {
            Some(e.low())
        } else {
            None
        }
    }
}

/// The spanning paths `L_j = C ∖ e_{j-1}` for `j = 1..=n`, on the original vertex
/// names, each with a distance labeling rooted at its larger endpoint.
pub fn spanning_paths_of_cycle(c: &CycleLabeling) -> Vec<(Graph, TreeLabeling)> {
    let n = c.n();
    (1..=n)
        .map(|j| {
            let removed = c.edge(j - 1);
            let path = Graph::new(n, c.graph().edges().iter().filter(|&&e| e != removed).map(|e| (e.low(), e.high())))
                .expect("subgraph of a cycle");
            let labeling = tree_distance_labeling(&path, removed.high()).expect("a path rooted at an endpoint");
            (path, labeling)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn path_labeling_is_unique() {
        // a-b-c as 3-1-2 with root 2: a=3 -> 1, b=1 -> 2, c=2 -> 3
        let g = Graph::new(3, [(3, 1), (1, 2)]).unwrap();
        let tl = tree_distance_labeling(&g, 2).unwrap();
        assert_eq!(tl.relabeling.as_map(), &[2, 3, 1]);
        assert_eq!(tl.tree.parent(1), 2);
        assert_eq!(tl.tree.parent(2), 3);
    }

    #[test]
    fn star_labeling() {
        // center 1, leaves 2, 3, 4; root at leaf 2
        let g = Graph::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        let tl = tree_distance_labeling(&g, 2).unwrap();
        assert_eq!(tl.relabeling.apply(2), 4);
        assert_eq!(tl.relabeling.apply(1), 3);
        assert_eq!(tl.tree.parent(1), 3);
        assert_eq!(tl.tree.parent(2), 3);
        assert_eq!(tl.tree.parent(3), 4);
        // every admissible labeling of this star puts the center at 3
        let admissible = (1..=4usize)
            .permutations(4)
            .filter(|p| p[1] == 4)
            .filter(|p| LabeledTree::new(g.relabel(&Relabeling::new(p.clone()).unwrap())).is_ok())
            .collect_vec();
        assert!(admissible.iter().all(|p| p[0] == 3));
        assert_eq!(admissible.len(), 2);
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(1, 2)]).unwrap();
        let tl = tree_distance_labeling(&g, 2).unwrap();
        assert!(tl.relabeling.is_identity());
        assert_eq!(tl.tree.parent(1), 2);
        assert_eq!(tl.tree.child_counts(), vec![0, 0]);
    }

    #[test]
    fn labeling_errors() {
        assert!(tree_distance_labeling(&Graph::cycle(4).unwrap(), 1).is_err());
        assert!(tree_distance_labeling(&Graph::path(4), 2).is_err());
    }

    #[test]
    fn labeled_tree_rejects_bad_labels() {
        assert!(LabeledTree::new(Graph::new(4, [(1, 2), (1, 3), (3, 4)]).unwrap()).is_err());
        assert!(LabeledTree::new(Graph::path(4)).is_ok());
    }

    #[test]
    fn caterpillars() {
        let t = caterpillar_from_profile(&[1, 1]).unwrap();
        assert_eq!(*t.graph(), Graph::path(4));
        let t = caterpillar_from_profile(&[2, 1]).unwrap();
        assert_eq!(*t.graph(), Graph::new(5, [(1, 3), (2, 3), (3, 4), (4, 5)]).unwrap());
        assert_eq!(t.child_counts(), vec![0, 0, 2, 1, 0]);
        let t = caterpillar_from_profile(&[1]).unwrap();
        assert_eq!(*t.graph(), Graph::path(3));
        assert!(caterpillar_from_profile(&[]).is_err());
        assert!(caterpillar_from_profile(&[1, 0]).is_err());
    }

    #[test]
    fn caterpillar_child_counts_follow_profile() {
        for profile in [vec![3, 1, 2], vec![1, 4], vec![2, 2, 2, 1]] {
            let t = caterpillar_from_profile(&profile).unwrap();
            assert!(t.graph().validate_lex_labeling().unwrap());
            let b = t.child_counts();
            let mut sigma = 0;
            for &a in &profile {
                sigma += a as usize;
                assert_eq!(b[sigma], a);
            }
        }
    }

    #[test]
    fn cycle_edges() {
        let c = CycleLabeling::new(5).unwrap();
        assert_eq!(c.edge(0), Edge::new(1, 5).unwrap());
        assert_eq!(c.edge(5), c.edge(0));
        assert_eq!(c.edge(2), Edge::new(2, 3).unwrap());
        assert_eq!(c.index_of(Edge::new(1, 5).unwrap()), Some(0));
        assert_eq!(c.index_of(Edge::new(3, 4).unwrap()), Some(3));
        assert!(CycleLabeling::new(2).is_err());
        assert!(CycleLabeling::from_graph(&Graph::path(4)).is_err());
    }

    #[test]
    fn spanning_paths() {
        let c3 = CycleLabeling::new(3).unwrap();
        let paths = spanning_paths_of_cycle(&c3);
        assert_eq!(paths.len(), 3);
        assert!(paths.iter().all(|(p, _)| p.n() == 3 && p.is_tree()));
        let c4 = CycleLabeling::new(4).unwrap();
        let (l1, _) = &spanning_paths_of_cycle(&c4)[0];
        assert_eq!(*l1, Graph::path(4));
        assert_eq!(spanning_paths_of_cycle(&CycleLabeling::new(6).unwrap()).len(), 6);
    }
}

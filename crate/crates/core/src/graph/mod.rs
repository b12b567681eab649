//! Simple undirected graphs on the vertex set `[n] = {1, ..., n}`.

mod tree;
mod walk;

pub use tree::{caterpillar_from_profile, spanning_paths_of_cycle, tree_distance_labeling, CycleLabeling, LabeledTree, TreeLabeling};
pub use walk::even_connected;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// An unordered pair `{a, b}` stored with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::invalid(format!("loop at vertex {a}")));
        }
        Ok(Edge(a.min(b), a.max(b)))
    }

    pub fn low(&self) -> usize {
        self.0
    }

    pub fn high(&self) -> usize {
        self.1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: usize) -> Option<usize> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }

    /// `x_a x_b` in a ring with `nvars` variables.
    pub fn monomial(&self, nvars: usize) -> Monomial {
        Monomial::squarefree(nvars, [self.0, self.1])
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// Immutable simple graph; edges are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a graph needs at least one vertex"));
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::invalid(format!("edge {{{a},{b}}} leaves the vertex set [1, {n}]")));
            }
            list.push(Edge::new(a, b)?);
        }
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {}", w[0])));
        }
        let mut adj = vec![Vec::new(); n];
        for e in &list {
            adj[e.0 - 1].push(e.1);
            adj[e.1 - 1].push(e.0);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|j| (j, j + 1))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::precondition(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Graph::new(n, (1..n).map(|j| (j, j + 1)).chain([(n, 1)]))
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)))).expect("valid complete graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a >= 1 && a <= self.n && self.adj[a - 1].binary_search(&b).is_ok()
    }

    /// Breadth-first order from `root`, neighbors visited in increasing order.
    fn bfs(&self, root: usize, allowed: impl Fn(usize) -> bool) -> Vec<(usize, usize)> {
        let mut dist = vec![usize::MAX; self.n];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([root]);
        dist[root - 1] = 0;
        while let Some(v) = queue.pop_front() {
            order.push((v, dist[v - 1]));
            for &w in self.neighbors(v) {
                if allowed(w) && dist[w - 1] == usize::MAX {
                    dist[w - 1] = dist[v - 1] + 1;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(1, |_| true).len() == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for start in 1..=self.n {
            if side[start - 1].is_some() {
                continue;
            }
            side[start - 1] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v - 1].unwrap();
                for &w in self.neighbors(v) {
                    match side[w - 1] {
                        None => {
                            side[w - 1] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.edges.len() == self.n && (1..=self.n).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    /// Whether every suffix `{i+1, ..., n}` induces a connected subgraph, which gives
    /// lex-ordered linear quotients for all powers of the complementary edge ideal.
    pub fn validate_lex_labeling(&self) -> Result<bool> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok((1..self.n).all(|i| self.bfs(self.n, |w| w > i).len() == self.n - i))
    }

    /// A relabeling under which the graph passes [`Graph::validate_lex_labeling`]:
    /// the identity when the current labels already do, otherwise breadth-first
    /// order from vertex `n` counted downwards from `n`.
    pub fn admissible_relabeling(&self) -> Result<Relabeling> {
        if self.validate_lex_labeling()? {
            return Ok(Relabeling::identity(self.n));
        }
        let mut new_label = vec![0; self.n];
        for (rank, (v, _)) in self.bfs(self.n, |_| true).into_iter().enumerate() {
            new_label[v - 1] = self.n - rank;
        }
        Relabeling::new(new_label)
    }

    pub fn relabel(&self, r: &Relabeling) -> Graph {
        assert_eq!(r.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|e| (r.apply(e.0), r.apply(e.1)))).expect("relabeling preserves simplicity")
    }

    /// For a cycle, the relabeling putting its vertices in cyclic order `1, 2, ..., n`
    /// starting from vertex 1 towards its smaller neighbor.
    pub fn cycle_relabeling(&self) -> Option<Relabeling> {
        if !self.is_cycle() {
            return None;
        }
        let mut new_label = vec![0; self.n];
        let (mut prev, mut cur) = (1, self.neighbors(1)[0]);
        new_label[0] = 1;
        for label in 2..=self.n {
            new_label[cur - 1] = label;
            let next = *self.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        Relabeling::new(new_label).ok()
    }

    /// The graph spanned by `edges` with its covered vertices compressed to `1..=k`
    /// in increasing order; also returns the compressed-to-original vertex map.
    pub fn edge_subgraph(&self, edges: &[Edge]) -> Result<(Graph, Vec<usize>)> {
        if let Some(e) = edges.iter().find(|e| !self.has_edge(e.0, e.1)) {
            return Err(Error::invalid(format!("{e} is not an edge of the host graph")));
        }
        let mut verts: Vec<usize> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
        verts.sort_unstable();
        verts.dedup();
        let pos = |v: usize| verts.binary_search(&v).unwrap() + 1;
        let g = Graph::new(verts.len().max(1), edges.iter().map(|e| (pos(e.0), pos(e.1))))?;
        Ok((g, verts))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|e| [e.0, e.1]).collect(),
            kind: None,
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let g = Graph::new(json.n, json.edges.iter().map(|e| (e[0], e[1])))?;
        match json.kind {
            Some(GraphKind::Tree) if !g.is_tree() => Err(Error::invalid("graph is tagged as a tree but is not one")),
            Some(GraphKind::Cycle) if !g.is_cycle() => Err(Error::invalid("graph is tagged as a cycle but is not one")),
            _ => Ok(g),
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} E=[", self.n)?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}-{}", e.0, e.1)?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Tree,
    Cycle,
}

/// Graph file format: `{"n": 4, "edges": [[1,2],[2,3]], "kind": "tree"}`, `kind` optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<GraphKind>,
}

/// A permutation of `[n]`, stored as the new label of each old vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relabeling {
    new_label: Vec<usize>,
}

impl Relabeling {
    pub fn new(new_label: Vec<usize>) -> Result<Self> {
        let n = new_label.len();
        let mut seen = vec![false; n];
        for &l in &new_label {
            if l == 0 || l > n || std::mem::replace(&mut seen[l - 1], true) {
                return Err(Error::invalid("relabeling is not a permutation"));
            }
        }
        Ok(Relabeling { new_label })
    }

    pub fn identity(n: usize) -> Self {
        Relabeling {
            new_label: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.new_label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_label.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.new_label.iter().enumerate().all(|(k, &l)| l == k + 1)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.new_label[v - 1]
    }

    pub fn inverse(&self) -> Relabeling {
        let mut inv = vec![0; self.new_label.len()];
        for (k, &l) in self.new_label.iter().enumerate() {
            inv[l - 1] = k + 1;
        }
        Relabeling { new_label: inv }
    }

    /// Variable map for [`Monomial::reindex`]: `x_v` goes to `x_{apply(v)}`.
    pub fn as_map(&self) -> &[usize] {
        &self.new_label
    }

    pub fn compose(&self, then: &Relabeling) -> Relabeling {
        Relabeling {
            new_label: self.new_label.iter().map(|&l| then.apply(l)).collect(),
        }
    }
}

/// A multiset of edges `e_1 ⋯ e_s` of a host graph.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct EdgeMultiset {
    counts: BTreeMap<Edge, u32>,
    total: u32,
}

impl EdgeMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        let mut ms = Self::new();
        for e in edges {
            ms.insert(e);
        }
        ms
    }

    pub fn insert(&mut self, e: Edge) {
        *self.counts.entry(e).or_insert(0) += 1;
        self.total += 1;
    }

    /// A copy with one occurrence of `e` removed.
    pub fn without_one(&self, e: Edge) -> Option<EdgeMultiset> {
        let mut out = self.clone();
        let c = out.counts.get_mut(&e)?;
        *c -= 1;
        if *c == 0 {
            out.counts.remove(&e);
        }
        out.total -= 1;
        Some(out)
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn count(&self, e: Edge) -> u32 {
        self.counts.get(&e).copied().unwrap_or(0)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.counts.contains_key(&e)
    }

    /// Distinct edges with their multiplicities, in edge order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.counts.iter().map(|(e, c)| (*e, *c))
    }

    /// All occurrences in edge order, repeated by multiplicity.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        self.iter().flat_map(|(e, c)| std::iter::repeat_n(e, c as usize)).collect()
    }

    pub fn is_hosted_by(&self, g: &Graph) -> bool {
        self.counts.keys().all(|e| g.has_edge(e.0, e.1))
    }

    /// `u_1 ⋯ u_s` as a monomial.
    pub fn product(&self, nvars: usize) -> Monomial {
        let mut exps = vec![0u32; nvars];
        for (e, c) in self.iter() {
            exps[e.0 - 1] += c;
            exps[e.1 - 1] += c;
        }
        Monomial::from_exponents(exps)
    }
}

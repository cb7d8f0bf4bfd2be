//! Mixed graphs: a vertex set with a disjoint set of undirected edges and
//! directed arcs, plus the metric machinery (distances, diameter, girth,
//! shortest-path counts) evaluated on the associated digraph, where every
//! edge stands for a pair of opposite arcs.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("pair ({0}, {1}) is given both as an edge and as an arc")]
    EdgeArcConflict(Vertex, Vertex),
    #[error("vertex {v} is not reachable from vertex {u}")]
    Unreachable { u: Vertex, v: Vertex },
}

/// A mixed graph on vertices `0..n`.
///
/// Always normalized: edges are stored as `(u, v)` with `u < v`, arcs never
/// form a digon (opposite arc pairs are folded into edges at build time), and
/// no pair is both an edge and an arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    arcs: Vec<(Vertex, Vertex)>,
    nbrs: Vec<Vec<Vertex>>,
    outs: Vec<Vec<Vertex>>,
    ins: Vec<Vec<Vertex>>,
    succ: Vec<Vec<Vertex>>,
}

/// Undirected degree, out-degree and in-degree of one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degrees {
    pub undirected: usize,
    pub out: usize,
    pub inn: usize,
}

impl MixedGraph {
    pub fn build(
        n: usize,
        edges: &[(Vertex, Vertex)],
        arcs: &[(Vertex, Vertex)],
    ) -> Result<Self, GraphError> {
        Self::build_with_report(n, edges, arcs).map(|(g, _)| g)
    }

    /// Like [`MixedGraph::build`], also returning the digons (as `(u, v)`
    /// with `u < v`) that were supplied as two arcs and folded into edges.
    pub fn build_with_report(
        n: usize,
        edges: &[(Vertex, Vertex)],
        arcs: &[(Vertex, Vertex)],
    ) -> Result<(Self, Vec<(Vertex, Vertex)>), GraphError> {
        let check = |u: Vertex, v: Vertex| -> Result<(), GraphError> {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            Ok(())
        };

        let mut edge_set = BTreeSet::new();
        for &(u, v) in edges {
            check(u, v)?;
            edge_set.insert((u.min(v), u.max(v)));
        }
        let mut arc_set = BTreeSet::new();
        for &(u, v) in arcs {
            check(u, v)?;
            if edge_set.contains(&(u.min(v), u.max(v))) {
                return Err(GraphError::EdgeArcConflict(u, v));
            }
            arc_set.insert((u, v));
        }

        let mut folded = Vec::new();
        for &(u, v) in &arc_set {
            if u < v && arc_set.contains(&(v, u)) {
                folded.push((u, v));
            }
        }
        for &(u, v) in &folded {
            arc_set.remove(&(u, v));
            arc_set.remove(&(v, u));
            edge_set.insert((u, v));
        }

        let g = Self::from_normalized(
            n,
            edge_set.into_iter().collect(),
            arc_set.into_iter().collect(),
        );
        Ok((g, folded))
    }

    /// Assemble from already-normalized, sorted, deduplicated parts.
    pub(crate) fn from_normalized(
        n: usize,
        edges: Vec<(Vertex, Vertex)>,
        arcs: Vec<(Vertex, Vertex)>,
    ) -> Self {
        let mut nbrs = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        let mut ins = vec![Vec::new(); n];
        let mut succ = vec![Vec::new(); n];
        for &(u, v) in &edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
            succ[u].push(v);
            succ[v].push(u);
        }
        for &(u, v) in &arcs {
            outs[u].push(v);
            ins[v].push(u);
            succ[u].push(v);
        }
        for list in nbrs
            .iter_mut()
            .chain(&mut outs)
            .chain(&mut ins)
            .chain(&mut succ)
        {
            list.sort_unstable();
        }
        MixedGraph {
            n,
            edges,
            arcs,
            nbrs,
            outs,
            ins,
            succ,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Arcs, sorted.
    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.nbrs[u].binary_search(&v).is_ok()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.outs[u].binary_search(&v).is_ok()
    }

    /// Undirected neighbours of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.nbrs[v]
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.outs[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.ins[v]
    }

    /// Out-neighbours of `v` in the associated digraph (edge and arc heads).
    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.succ[v]
    }

    /// The associated digraph: both orientations of every edge, then every arc.
    pub fn associated_digraph(&self) -> Vec<(Vertex, Vertex)> {
        let mut pairs = Vec::with_capacity(2 * self.edges.len() + self.arcs.len());
        for &(u, v) in &self.edges {
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.extend_from_slice(&self.arcs);
        pairs
    }

    pub fn degrees(&self, v: Vertex) -> Degrees {
        Degrees {
            undirected: self.nbrs[v].len(),
            out: self.outs[v].len(),
            inn: self.ins[v].len(),
        }
    }

    pub fn degree_profile(&self) -> Vec<Degrees> {
        (0..self.n).map(|v| self.degrees(v)).collect()
    }

    /// `(r, z)` when every vertex has `r` edges and `z` arcs in and out.
    pub fn total_regularity(&self) -> Option<(usize, usize)> {
        if self.n == 0 {
            return None;
        }
        let first = self.degrees(0);
        if first.out != first.inn {
            return None;
        }
        (0..self.n)
            .all(|v| self.degrees(v) == first)
            .then_some((first.undirected, first.out))
    }

    /// Two-colouring of the underlying undirected graph with every edge and
    /// arc crossing parts. The lowest vertex of each component lands in the
    /// first part. `None` if some component contains an odd cycle.
    pub fn bipartition(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let mut side = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let around = self.nbrs[u].iter().chain(&self.outs[u]).chain(&self.ins[u]);
                for &w in around {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        let (x, y): (Vec<_>, Vec<_>) = (0..self.n).partition(|&v| side[v] == 0);
        Some((x, y))
    }

    /// Directed BFS distances from `source`; `u32::MAX` marks unreachable.
    pub fn bfs(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.succ[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances(&self) -> DistanceMatrix {
        let mut table = Vec::with_capacity(self.n * self.n);
        for s in 0..self.n {
            table.extend(self.bfs(s));
        }
        DistanceMatrix { n: self.n, table }
    }

    /// Directed diameter; `None` when the graph is not strongly connected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.bfs(s) {
                if d == u32::MAX {
                    return None;
                }
                best = best.max(d as usize);
            }
        }
        Some(best)
    }

    /// Number of distinct shortest directed `u -> v` walks in the associated
    /// digraph. Saturates at `u128::MAX`.
    pub fn shortest_path_count(&self, u: Vertex, v: Vertex) -> Result<u128, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::OutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        Ok(self.path_counts_from(u).1[v]).and_then(|c| {
            if c == 0 {
                Err(GraphError::Unreachable { u, v })
            } else {
                Ok(c)
            }
        })
    }

    /// BFS distances and shortest-path counts from `source`.
    pub fn path_counts_from(&self, source: Vertex) -> (Vec<u32>, Vec<u128>) {
        let mut dist = vec![u32::MAX; self.n];
        let mut count = vec![0u128; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[source] = 0;
        count[source] = 1;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.succ[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[u] + 1 {
                    count[w] = count[w].saturating_add(count[u]);
                }
            }
        }
        (dist, count)
    }

    /// Length of a shortest cycle in the underlying simple undirected graph
    /// (a digon counts as a single edge). `None` if acyclic.
    pub fn girth_underlying(&self) -> Option<usize> {
        let simple = self.underlying_simple();
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in &simple[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Adjacency lists of the underlying simple undirected graph.
    pub fn underlying_simple(&self) -> Vec<Vec<Vertex>> {
        (0..self.n)
            .map(|v| {
                let mut list: Vec<_> = self.nbrs[v]
                    .iter()
                    .chain(&self.outs[v])
                    .chain(&self.ins[v])
                    .copied()
                    .collect();
                list.sort_unstable();
                list.dedup();
                list
            })
            .collect()
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> MixedGraph {
        assert_eq!(
            perm.len(),
            self.n,
            "permutation length must equal the order"
        );
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        let mut arcs: Vec<_> = self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        edges.sort_unstable();
        arcs.sort_unstable();
        MixedGraph::from_normalized(self.n, edges, arcs)
    }

    /// The converse: every arc reversed, edges unchanged.
    pub fn converse(&self) -> MixedGraph {
        let mut arcs: Vec<_> = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        arcs.sort_unstable();
        MixedGraph::from_normalized(self.n, self.edges.clone(), arcs)
    }
}

/// All-pairs directed distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    table: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    /// `None` when `v` is unreachable from `u`.
    pub fn get(&self, u: Vertex, v: Vertex) -> Option<usize> {
        match self.table[u * self.n + v] {
            u32::MAX => None,
            d => Some(d as usize),
        }
    }

    pub fn max(&self) -> Option<usize> {
        self.table
            .iter()
            .try_fold(0usize, |m, &d| (d != u32::MAX).then(|| m.max(d as usize)))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n)
            .all(|u| (0..u).all(|v| self.table[u * self.n + v] == self.table[v * self.n + u]))
    }
}

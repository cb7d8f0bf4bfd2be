//! Canonical forms of mixed graphs.
//!
//! Individualization-refinement: vertices start coloured by their degree
//! triple, colour refinement splits cells by the colours seen along edges,
//! out-arcs and in-arcs separately, and a backtracking search individualizes
//! vertices of the first non-singleton cell until the colouring is discrete.
//! Each discrete colouring is a relabeling; the canonical form is the least
//! encoding over all leaves. Automorphisms found when two leaves coincide
//! prune branches that are images of ones already explored.
//!
//! The encoding is the upper triangle of the edge adjacency matrix, row-major,
//! followed by the full arc adjacency matrix, row-major, compared bit by bit
//! with `0 < 1`.

use std::cmp::Ordering;

use crate::graph::{MixedGraph, Vertex};

/// Relabeling-invariant encoding: equal forms iff isomorphic graphs, where
/// edges map to edges and arcs to arcs with direction preserved.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n
    }

    /// The canonically labeled graph this form encodes.
    pub fn to_graph(&self) -> MixedGraph {
        let n = self.n;
        let bit = |i: usize| self.bits[i / 64] >> (63 - i % 64) & 1 == 1;
        let mut edges = Vec::new();
        let mut pos = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bit(pos) {
                    edges.push((u, v));
                }
                pos += 1;
            }
        }
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if bit(pos) {
                    arcs.push((u, v));
                }
                pos += 1;
            }
        }
        MixedGraph::from_normalized(n, edges, arcs)
    }

    /// Hex rendering of the encoding, for reports.
    pub fn to_hex(&self) -> String {
        self.bits.iter().map(|w| format!("{w:016x}")).collect()
    }
}

fn encode(g: &MixedGraph, perm: &[Vertex]) -> CanonicalForm {
    let n = g.order();
    let edge_bits = n * n.saturating_sub(1) / 2;
    let total = edge_bits + n * n;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut set = |i: usize| bits[i / 64] |= 1 << (63 - i % 64);
    // row a of the upper triangle starts at a*n - a(a+1)/2
    for &(u, v) in g.edges() {
        let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
        set(a * n - a * (a + 1) / 2 + (b - a - 1));
    }
    for &(u, v) in g.arcs() {
        set(edge_bits + perm[u] * n + perm[v]);
    }
    CanonicalForm { n, bits }
}

/// Colours are cell start positions: a vertex of colour `c` sits in a cell
/// occupying positions `c..c + size` of the ordered partition.
type Signature = (u32, Vec<u32>, Vec<u32>, Vec<u32>);

fn refine(g: &MixedGraph, colors: &mut [u32]) {
    let n = g.order();
    let mut cells = count_cells(colors);
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let sorted = |list: &[Vertex]| {
                    let mut c: Vec<u32> = list.iter().map(|&w| colors[w]).collect();
                    c.sort_unstable();
                    c
                };
                (
                    colors[v],
                    sorted(g.neighbors(v)),
                    sorted(g.out_neighbors(v)),
                    sorted(g.in_neighbors(v)),
                )
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut start = 0;
        for (i, &v) in order.iter().enumerate() {
            if i > 0 && sigs[order[i - 1]] != sigs[v] {
                start = i;
            }
            colors[v] = start as u32;
        }
        let now = count_cells(colors);
        if now == cells {
            break;
        }
        cells = now;
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn initial_colors(g: &MixedGraph) -> Vec<u32> {
    let n = g.order();
    let keys: Vec<_> = g.degree_profile();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| keys[v]);
    let mut colors = vec![0u32; n];
    let mut start = 0;
    for (i, &v) in order.iter().enumerate() {
        if i > 0 && keys[order[i - 1]] != keys[v] {
            start = i;
        }
        colors[v] = start as u32;
    }
    colors
}

#[derive(Clone)]
struct Leaf {
    form: CanonicalForm,
    perm: Vec<Vertex>,
    path: Vec<Vertex>,
}

struct Search<'a> {
    g: &'a MixedGraph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<Vertex>>,
    /// Unwind to this depth: the subtree below it maps onto one already seen.
    backjump: Option<usize>,
}

impl Search<'_> {
    fn leaf(&mut self, perm: Vec<Vertex>, path: &[Vertex]) {
        let form = encode(self.g, &perm);
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.form == form {
                // perm and reference.perm give the same graph: v -> ref^-1(perm(v))
                let mut inv = vec![0; perm.len()];
                for (v, &p) in reference.perm.iter().enumerate() {
                    inv[p] = v;
                }
                let auto: Vec<Vertex> = perm.iter().map(|&p| inv[p]).collect();
                let common = path
                    .iter()
                    .zip(&reference.path)
                    .take_while(|(a, b)| a == b)
                    .count();
                if auto.iter().enumerate().any(|(v, &w)| v != w) {
                    self.automorphisms.push(auto);
                }
                self.backjump = Some(common);
                return;
            }
        }
        let leaf = Leaf {
            form,
            perm,
            path: path.to_vec(),
        };
        if self.first.is_none() {
            self.first = Some(leaf.clone());
        }
        match &self.best {
            Some(b) if leaf.form.cmp(&b.form) != Ordering::Less => {}
            _ => self.best = Some(leaf),
        }
    }

    fn node(&mut self, colors: Vec<u32>, path: &mut Vec<Vertex>) {
        let n = colors.len();
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            self.leaf(colors.iter().map(|&c| c as usize).collect(), path);
            return;
        };
        let cell: Vec<Vertex> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        let mut tried: Vec<Vertex> = Vec::new();
        for &v in &cell {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried, path) {
                continue;
            }
            tried.push(v);
            let mut next = colors.clone();
            for &w in &cell {
                if w != v {
                    next[w] = target as u32 + 1;
                }
            }
            refine(self.g, &mut next);
            path.push(v);
            self.node(next, path);
            path.pop();
            match self.backjump {
                Some(level) if level < path.len() => return,
                Some(_) => self.backjump = None,
                None => {}
            }
        }
    }

    /// Whether `v` lies in the orbit of a tried vertex under the group
    /// generated by the known automorphisms fixing `path` pointwise.
    fn equivalent_to_tried(&self, v: Vertex, tried: &[Vertex], path: &[Vertex]) -> bool {
        let gens: Vec<&Vec<Vertex>> = self
            .automorphisms
            .iter()
            .filter(|a| path.iter().all(|&p| a[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in gens {
            for (x, &y) in a.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}

/// Canonical form together with the canonical labeling `old -> new`.
pub fn canonical_labeling(g: &MixedGraph) -> (CanonicalForm, Vec<Vertex>) {
    let mut colors = initial_colors(g);
    refine(g, &mut colors);
    let mut search = Search {
        g,
        first: None,
        best: None,
        automorphisms: Vec::new(),
        backjump: None,
    };
    search.node(colors, &mut Vec::new());
    let best = search.best.expect("search tree has at least one leaf");
    (best.form, best.perm)
}

pub fn canonical_form(g: &MixedGraph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Isomorphism of mixed graphs: edges to edges, arcs to arcs with
/// direction preserved.
pub fn is_isomorphic(g: &MixedGraph, h: &MixedGraph) -> bool {
    g.order() == h.order()
        && g.edges().len() == h.edges().len()
        && g.arcs().len() == h.arcs().len()
        && canonical_form(g) == canonical_form(h)
}

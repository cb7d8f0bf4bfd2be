//! Builders for the graph families used throughout the toolkit.

use thiserror::Error;

use crate::graph::{MixedGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("no dense family for diameter {0} (supported: 4, 5)")]
    UnsupportedK(u32),
    #[error("vertex {0} has no out-neighbour in the associated digraph")]
    EmptyOutNeighborhood(Vertex),
}

fn built(n: usize, edges: &[(Vertex, Vertex)], arcs: &[(Vertex, Vertex)]) -> MixedGraph {
    MixedGraph::build(n, edges, arcs).expect("constructions produce valid mixed graphs")
}

/// `K_{d,d}` with parts `0..d` and `d..2d`.
pub fn complete_bipartite(d: usize) -> Result<MixedGraph, ConstructionError> {
    if d == 0 {
        return Err(ConstructionError::InvalidParameter(
            "d must be at least 1".into(),
        ));
    }
    let edges: Vec<_> = (0..d)
        .flat_map(|x| (d..2 * d).map(move |y| (x, y)))
        .collect();
    Ok(built(2 * d, &edges, &[]))
}

/// The `n`-cycle `0 -> 1 -> ... -> n-1 -> 0`, with edges or with arcs.
pub fn cycle(n: usize, directed: bool) -> Result<MixedGraph, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::InvalidParameter(
            "cycle length must be at least 3".into(),
        ));
    }
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(if directed {
        built(n, &[], &pairs)
    } else {
        built(n, &pairs, &[])
    })
}

/// Vertex `i` of a line digraph is the `i`-th arc of the associated digraph
/// of the original graph, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDigraphVertexMap {
    pairs: Vec<(Vertex, Vertex)>,
}

impl LineDigraphVertexMap {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, v: Vertex) -> (Vertex, Vertex) {
        self.pairs[v]
    }

    pub fn vertex(&self, pair: (Vertex, Vertex)) -> Option<Vertex> {
        self.pairs.binary_search(&pair).ok()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }
}

/// Line digraph of the associated digraph: one vertex per arc `(u, v)`, and
/// `(u, v) -> (v, w)` for every out-neighbour `w` of `v`. The opposite pairs
/// `(u, v) <-> (v, u)` coming from edges fold back into edges.
pub fn line_digraph(
    g: &MixedGraph,
) -> Result<(MixedGraph, LineDigraphVertexMap), ConstructionError> {
    if let Some(v) = (0..g.order()).find(|&v| g.successors(v).is_empty()) {
        return Err(ConstructionError::EmptyOutNeighborhood(v));
    }
    let mut pairs = g.associated_digraph();
    pairs.sort_unstable();
    let map = LineDigraphVertexMap { pairs };
    let mut arcs = Vec::new();
    for (i, &(_, v)) in map.pairs.iter().enumerate() {
        for &w in g.successors(v) {
            let j = map
                .vertex((v, w))
                .expect("successor pair is an arc of the associated digraph");
            arcs.push((i, j));
        }
    }
    let lg = built(map.len(), &[], &arcs);
    Ok((lg, map))
}

pub fn is_prime(q: u32) -> bool {
    q >= 2
        && (2..)
            .take_while(|i| i * i <= q)
            .all(|i| !q.is_multiple_of(i))
}

/// Projective points of `F_q^3`: nonzero vectors whose first nonzero
/// coordinate is 1.
fn projective_points(q: u32) -> Vec<[u32; 3]> {
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    for b in 0..q {
        for c in 0..q {
            pts.push([1, b, c]);
        }
    }
    for c in 0..q {
        pts.push([0, 1, c]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Point-line incidence graph of `PG(2, q)` over the prime field: points are
/// `0..m`, lines `m..2m` with `m = q^2 + q + 1`.
pub fn projective_plane_incidence(q: u32) -> Result<MixedGraph, ConstructionError> {
    if !is_prime(q) {
        return Err(ConstructionError::NotPrime(q));
    }
    let pts = projective_points(q);
    let m = pts.len();
    let mut edges = Vec::with_capacity(m * (q as usize + 1));
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            let dot: u32 = p.iter().zip(l).map(|(a, b)| a * b).sum();
            if dot.is_multiple_of(q) {
                edges.push((i, m + j));
            }
        }
    }
    Ok(built(2 * m, &edges, &[]))
}

fn perfect_matchings(
    points: &mut Vec<usize>,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if points.is_empty() {
        out.push(current.clone());
        return;
    }
    let a = points.remove(0);
    for idx in 0..points.len() {
        let b = points.remove(idx);
        current.push((a, b));
        perfect_matchings(points, current, out);
        current.pop();
        points.insert(idx, b);
    }
    points.insert(0, a);
}

/// Tutte–Coxeter graph: the 15 edges of `K_6` (vertices `0..15`) against its
/// 15 perfect matchings (`15..30`), adjacent when the edge is in the matching.
pub fn tutte_coxeter() -> MixedGraph {
    let k6_edges: Vec<(usize, usize)> = (0..6)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .collect();
    let mut matchings = Vec::new();
    perfect_matchings(&mut (0..6).collect(), &mut Vec::new(), &mut matchings);
    let mut edges = Vec::new();
    for (m, matching) in matchings.iter().enumerate() {
        for e in matching {
            let i = k6_edges
                .binary_search(e)
                .expect("matching pairs are ordered");
            edges.push((i, 15 + m));
        }
    }
    built(30, &edges, &[])
}

/// `L(K_{d,d})`: the diameter-3 bipartite mixed Moore graph with `r = 1`,
/// `z = d - 1` and `2 d^2` vertices.
pub fn moore_mixed_k3(d: usize) -> Result<MixedGraph, ConstructionError> {
    if d < 2 {
        return Err(ConstructionError::InvalidParameter(
            "d must be at least 2".into(),
        ));
    }
    let (g, _) = line_digraph(&complete_bipartite(d)?)?;
    debug_assert_eq!(g.order(), 2 * d * d);
    debug_assert_eq!(g.total_regularity(), Some((1, d - 1)));
    Ok(g)
}

/// Line digraphs of bipartite Moore graphs: diameter 4 from the projective
/// plane of order `q`, diameter 5 from the Tutte–Coxeter graph (`q` unused).
pub fn dense_family(k: u32, q: Option<u32>) -> Result<MixedGraph, ConstructionError> {
    let base = match k {
        4 => {
            let q = q.ok_or_else(|| {
                ConstructionError::InvalidParameter("k = 4 needs a prime q".into())
            })?;
            projective_plane_incidence(q)?
        }
        5 => tutte_coxeter(),
        _ => return Err(ConstructionError::UnsupportedK(k)),
    };
    Ok(line_digraph(&base)?.0)
}

/// The (1,1)-regular bipartite mixed Moore graph of diameter 3 obtained as
/// the line digraph of the 4-cycle.
pub fn fig2a() -> MixedGraph {
    let c4 = cycle(4, false).expect("4-cycle");
    line_digraph(&c4).expect("4-cycle has out-neighbours").0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_bipartite_basics() {
        let k2 = complete_bipartite(2).unwrap();
        assert_eq!(k2.diameter(), Some(2));
        assert_eq!(k2.girth_underlying(), Some(4));
        let k3 = complete_bipartite(3).unwrap();
        assert_eq!(k3.order(), 6);
        assert_eq!(k3.total_regularity(), Some((3, 0)));
        let k1 = complete_bipartite(1).unwrap();
        assert_eq!(k1.edges(), &[(0, 1)]);
        assert_eq!(k1.diameter(), Some(1));
        assert!(complete_bipartite(0).is_err());
    }

    #[test]
    fn cycle_basics() {
        for n in 3..10 {
            assert_eq!(cycle(n, false).unwrap().diameter(), Some(n / 2));
            assert_eq!(cycle(n, true).unwrap().diameter(), Some(n - 1));
        }
        assert_eq!(cycle(4, true).unwrap().order(), 4);
        assert_eq!(cycle(6, false).unwrap().edges().len(), 6);
        assert!(cycle(2, true).is_err());
    }

    #[test]
    fn line_digraph_of_directed_cycle_is_the_cycle() {
        let c3 = cycle(3, true).unwrap();
        let (l, map) = line_digraph(&c3).unwrap();
        assert_eq!(map.pairs(), &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(l, c3);
    }

    #[test]
    fn line_digraph_vertex_count() {
        let g = MixedGraph::build(5, &[(0, 1), (1, 2)], &[(2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let (l, map) = line_digraph(&g).unwrap();
        assert_eq!(l.order(), 2 * 2 + 4);
        assert_eq!(map.len(), l.order());
        // each edge of G becomes exactly one edge of L(G)
        assert_eq!(l.edges().len(), 2);
        for &(a, b) in l.edges() {
            let (u, v) = map.pair(a);
            assert_eq!(map.pair(b), (v, u));
            assert!(g.has_edge(u, v));
        }
    }

    #[test]
    fn line_digraph_needs_out_neighbours() {
        let g = MixedGraph::build(3, &[], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            line_digraph(&g),
            Err(ConstructionError::EmptyOutNeighborhood(2))
        );
    }

    #[test]
    fn fig2a_shape() {
        let g = fig2a();
        assert_eq!(g.order(), 8);
        assert_eq!(g.edges().len(), 4);
        // (1,1)-regular on 8 vertices: 8 r / 2 edges, 8 z arcs
        assert_eq!(g.arcs().len(), 8);
        assert_eq!(g.total_regularity(), Some((1, 1)));
        assert_eq!(g.diameter(), Some(3));
        assert_eq!(g.associated_digraph().len(), 16);
        let (x, y) = g.bipartition().unwrap();
        assert_eq!((x.len(), y.len()), (4, 4));
    }

    #[test]
    fn line_digraph_of_kdd() {
        for d in 2..=5 {
            let g = moore_mixed_k3(d).unwrap();
            assert_eq!(g.order(), 2 * d * d);
            assert_eq!(g.total_regularity(), Some((1, d - 1)));
            assert_eq!(g.diameter(), Some(3));
            assert!(g.bipartition().is_some());
        }
        assert!(moore_mixed_k3(1).is_err());
    }

    #[test]
    fn projective_planes() {
        assert!(projective_plane_incidence(4).is_err());
        for (q, order) in [(2u32, 14usize), (3, 26), (5, 62)] {
            let g = projective_plane_incidence(q).unwrap();
            assert_eq!(g.order(), order);
            assert_eq!(g.total_regularity(), Some((q as usize + 1, 0)));
            assert_eq!(g.diameter(), Some(3));
            assert_eq!(g.girth_underlying(), Some(6));
            // two points lie on exactly one common line
            let m = order / 2;
            for a in 0..m {
                for b in a + 1..m {
                    let common = g
                        .neighbors(a)
                        .iter()
                        .filter(|l| g.neighbors(b).contains(l))
                        .count();
                    assert_eq!(common, 1);
                }
            }
        }
    }

    #[test]
    fn tutte_coxeter_graph() {
        let g = tutte_coxeter();
        assert_eq!(g.order(), 30);
        assert_eq!(g.total_regularity(), Some((3, 0)));
        assert_eq!(g.diameter(), Some(4));
        assert_eq!(g.girth_underlying(), Some(8));
    }

    #[test]
    fn dense_families() {
        let g = dense_family(4, Some(2)).unwrap();
        assert_eq!(g.order(), 42);
        assert_eq!(g.total_regularity(), Some((1, 2)));
        assert_eq!(g.diameter(), Some(4));
        assert_eq!(dense_family(4, Some(3)).unwrap().order(), 104);
        let g = dense_family(5, None).unwrap();
        assert_eq!(g.order(), 90);
        assert_eq!(g.total_regularity(), Some((1, 2)));
        assert_eq!(g.diameter(), Some(5));
        assert_eq!(
            dense_family(6, None),
            Err(ConstructionError::UnsupportedK(6))
        );
        assert_eq!(
            dense_family(4, Some(9)),
            Err(ConstructionError::NotPrime(9))
        );
    }

    #[test]
    fn line_digraph_adds_one_to_diameter() {
        let bases = [
            complete_bipartite(3).unwrap(),
            cycle(6, false).unwrap(),
            projective_plane_incidence(2).unwrap(),
            tutte_coxeter(),
        ];
        for g in &bases {
            let (l, _) = line_digraph(g).unwrap();
            assert_eq!(l.diameter(), g.diameter().map(|d| d + 1));
        }
    }
}

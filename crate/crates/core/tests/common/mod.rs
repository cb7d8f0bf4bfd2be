//! Independent oracles for integration tests: nothing here calls into the
//! library's distance, canonical-form or search code.

#![allow(dead_code)]

/// Plain adjacency-matrix mixed graph: `edge[u][v]` symmetric, `arc[u][v]`
/// one-way.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Plain {
    pub n: usize,
    pub edge: Vec<Vec<bool>>,
    pub arc: Vec<Vec<bool>>,
}

impl Plain {
    pub fn empty(n: usize) -> Self {
        Plain {
            n,
            edge: vec![vec![false; n]; n],
            arc: vec![vec![false; n]; n],
        }
    }

    pub fn from_lists(n: usize, edges: &[(usize, usize)], arcs: &[(usize, usize)]) -> Self {
        let mut p = Plain::empty(n);
        for &(u, v) in edges {
            p.edge[u][v] = true;
            p.edge[v][u] = true;
        }
        for &(u, v) in arcs {
            p.arc[u][v] = true;
        }
        p
    }

    fn step(&self, u: usize, v: usize) -> bool {
        self.edge[u][v] || self.arc[u][v]
    }
}

pub const INF: usize = usize::MAX / 4;

/// All-pairs directed distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Plain) -> Vec<Vec<usize>> {
    let n = g.n;
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if g.step(u, v) {
                d[u][v] = 1;
            }
        }
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                if d[u][w] + d[w][v] < d[u][v] {
                    d[u][v] = d[u][w] + d[w][v];
                }
            }
        }
    }
    d
}

pub fn oracle_diameter(g: &Plain) -> Option<usize> {
    let d = floyd_warshall(g);
    let max = d.iter().flatten().copied().max().unwrap_or(0);
    (max < INF).then_some(max)
}

/// Exhaustive search over all bijections `V(g) -> V(h)`, abandoning a partial
/// map as soon as it breaks an adjacency.
pub fn brute_isomorphic(g: &Plain, h: &Plain) -> bool {
    fn extend(g: &Plain, h: &Plain, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let u = map.len();
        if u == g.n {
            return true;
        }
        for v in 0..h.n {
            if used[v] {
                continue;
            }
            let consistent = (0..u).all(|w| {
                let x = map[w];
                g.edge[u][w] == h.edge[v][x]
                    && g.arc[u][w] == h.arc[v][x]
                    && g.arc[w][u] == h.arc[x][v]
            });
            if consistent {
                used[v] = true;
                map.push(v);
                if extend(g, h, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    g.n == h.n && extend(g, h, &mut Vec::new(), &mut vec![false; h.n])
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// Every totally (1,1)-regular bipartite mixed graph on `X = 0..m`,
/// `Y = m..2m`: a perfect matching `x - mu(x)` as edges and arcs
/// `x -> sigma(x)`, `y -> tau(y)`, keeping those with no arc parallel to an
/// edge and no digon. Returned with their Floyd–Warshall diameters.
pub fn naive_one_one(n: usize) -> Vec<(Plain, Option<usize>)> {
    assert!(n % 2 == 0);
    let m = n / 2;
    let perms = permutations(m);
    let mut out = Vec::new();
    for mu in &perms {
        for sigma in &perms {
            if (0..m).any(|x| sigma[x] == mu[x]) {
                continue;
            }
            for tau in &perms {
                // y = sigma(x) pointing back at x would be a digon; tau(y) = mu^-1(y) parallels an edge
                if (0..m).any(|x| tau[sigma[x]] == x) || (0..m).any(|x| tau[mu[x]] == x) {
                    continue;
                }
                let mut g = Plain::empty(n);
                for x in 0..m {
                    g.edge[x][m + mu[x]] = true;
                    g.edge[m + mu[x]][x] = true;
                    g.arc[x][m + sigma[x]] = true;
                }
                for y in 0..m {
                    g.arc[m + y][tau[y]] = true;
                }
                let d = oracle_diameter(&g);
                out.push((g, d));
            }
        }
    }
    out
}

/// Isomorphism classes of the naive (1,1) graphs with diameter exactly `k`.
pub fn naive_classes(all: &[(Plain, Option<usize>)], k: usize) -> Vec<Plain> {
    let mut reps: Vec<(Vec<Vec<usize>>, Plain)> = Vec::new();
    for (g, d) in all {
        if *d != Some(k) {
            continue;
        }
        // sorted distance rows: an isomorphism invariant that narrows comparisons
        let mut inv: Vec<Vec<usize>> = floyd_warshall(g)
            .into_iter()
            .map(|mut row| {
                row.sort_unstable();
                row
            })
            .collect();
        inv.sort();
        if !reps
            .iter()
            .any(|(i, h)| *i == inv && brute_isomorphic(g, h))
        {
            reps.push((inv, g.clone()));
        }
    }
    reps.into_iter().map(|(_, g)| g).collect()
}

pub fn plain(g: &mixed_moore::MixedGraph) -> Plain {
    Plain::from_lists(g.order(), g.edges(), g.arcs())
}

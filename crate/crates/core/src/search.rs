//! Isomorph-free exhaustive enumeration of totally `(r, z)`-regular
//! bipartite mixed graphs of a given order and diameter.
//!
//! Two generators feed the same isomorph rejection (canonical forms, see
//! [`crate::canon`]):
//!
//! * `r = z = 1`: the edges form a perfect matching, fixed as `{2i, 2i+1}`
//!   with `X` the even and `Y` the odd vertices. The arcs are then two
//!   bijections between matched pairs, `a: X -> Y` and `b: Y -> X`. Relabeling
//!   the pairs conjugates `a`, so `a` is fixed to one representative per
//!   cycle type and only `b` is backtracked, under the constraints "no arc
//!   parallel to an edge" and "no digon". A node is pruned once some vertex's
//!   distance ball, exact as far as all expanded vertices have their arcs
//!   fixed, cannot grow to cover the graph within `k` steps.
//! * anything else: plain backtracking over edge sets and then arc sets
//!   between two halves `0..n/2` and `n/2..n`, bounded by a node budget.
//!
//! Results are collected per top-level branch, merged and sorted by
//! canonical form, so certificates do not depend on thread count or branch
//! order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{bipartite_mixed_moore_bound, BoundParams};
use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::MixedGraph;

pub const TOOLKIT_VERSION: &str = concat!("mixed-moore/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid search parameters: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    CountAll,
    FirstWitness,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::CountAll => "count-all",
            SearchMode::FirstWitness => "first-witness",
        })
    }
}

impl FromStr for SearchMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "count-all" => Ok(SearchMode::CountAll),
            "first-witness" => Ok(SearchMode::FirstWitness),
            other => Err(format!("unknown search mode '{other}'")),
        }
    }
}

/// Degrees `(r, z)`, exact diameter `k`, order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchSpec {
    pub r: usize,
    pub z: usize,
    pub k: usize,
    pub n: usize,
    pub mode: SearchMode,
}

impl SearchSpec {
    pub fn count_all(r: usize, z: usize, k: usize, n: usize) -> Self {
        SearchSpec {
            r,
            z,
            k,
            n,
            mode: SearchMode::CountAll,
        }
    }

    /// `search_r{r}z{z}k{k}n{n}.cert`
    pub fn file_name(&self) -> String {
        format!("search_r{}z{}k{}n{}.cert", self.r, self.z, self.k, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest order the search accepts.
    pub max_order: usize,
    /// Node limit for the general (non `r = z = 1`) generator.
    pub max_nodes: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Visit candidate values in decreasing instead of increasing order.
    pub reverse_branch_order: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_order: 14,
            max_nodes: 50_000_000,
            threads: None,
            reverse_branch_order: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partial assignments visited.
    pub nodes: u64,
    /// Partial assignments cut by the distance-ball bound.
    pub prunes: u64,
    /// Complete candidate graphs whose diameter was tested.
    pub leaves: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
        self.leaves += other.leaves;
    }
}

/// Outcome of a completed enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchCertificate {
    pub spec: SearchSpec,
    /// Canonically labeled, sorted by canonical form, pairwise non-isomorphic.
    pub representatives: Vec<MixedGraph>,
    /// `converse[i] = j` when reversing every arc of representative `i`
    /// gives a graph isomorphic to representative `j`.
    pub converse: Vec<usize>,
    pub stats: SearchStats,
    pub version: String,
}

impl SearchCertificate {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn forms(&self) -> Vec<CanonicalForm> {
        self.representatives.iter().map(canonical_form).collect()
    }

    fn from_found(
        spec: SearchSpec,
        found: BTreeMap<CanonicalForm, ()>,
        stats: SearchStats,
    ) -> Self {
        let forms: Vec<CanonicalForm> = found.into_keys().collect();
        let representatives: Vec<MixedGraph> = forms.iter().map(CanonicalForm::to_graph).collect();
        let converse = representatives
            .iter()
            .map(|g| {
                let cf = canonical_form(&g.converse());
                match forms.binary_search(&cf) {
                    Ok(j) => j,
                    // first-witness mode keeps a single graph
                    Err(_) => usize::MAX,
                }
            })
            .collect();
        SearchCertificate {
            spec,
            representatives,
            converse,
            stats,
            version: TOOLKIT_VERSION.to_string(),
        }
    }
}

/// One representative permutation per cycle type with no fixed points,
/// cycles laid out on consecutive indices, longest first.
fn derangement_types(m: usize) -> Vec<Vec<usize>> {
    fn partitions(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (2..=max.min(rest)).rev() {
            cur.push(part);
            partitions(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(m, m, &mut Vec::new(), &mut parts);
    parts
        .into_iter()
        .map(|p| {
            let mut perm = vec![0; m];
            let mut start = 0;
            for len in p {
                for i in 0..len {
                    perm[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            perm
        })
        .collect()
}

struct MatchingSearch<'a> {
    m: usize,
    k: usize,
    alpha: &'a [usize],
    alpha_inv: Vec<usize>,
    beta: Vec<usize>,
    used: Vec<bool>,
    reverse: bool,
    first_only: bool,
    stats: SearchStats,
    found: BTreeMap<CanonicalForm, ()>,
}

const UNSET: usize = usize::MAX;

impl MatchingSearch<'_> {
    fn new(alpha: &[usize], k: usize, reverse: bool, first_only: bool) -> MatchingSearch<'_> {
        let m = alpha.len();
        let mut alpha_inv = vec![0; m];
        for (i, &j) in alpha.iter().enumerate() {
            alpha_inv[j] = i;
        }
        MatchingSearch {
            m,
            k,
            alpha,
            alpha_inv,
            beta: vec![UNSET; m],
            used: vec![false; m],
            reverse,
            first_only,
            stats: SearchStats::default(),
            found: BTreeMap::new(),
        }
    }

    /// Pair `i` may receive the arc out of `Y`-vertex `j`.
    fn allowed(&self, j: usize, i: usize) -> bool {
        !self.used[i] && i != j && i != self.alpha_inv[j]
    }

    fn candidates(&self, j: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.m).filter(|&i| self.allowed(j, i)).collect();
        if self.reverse {
            c.reverse();
        }
        c
    }

    fn successors(&self, v: usize) -> Option<[usize; 2]> {
        let pair = v / 2;
        if v.is_multiple_of(2) {
            Some([v + 1, 2 * self.alpha[pair] + 1])
        } else {
            match self.beta[pair] {
                UNSET => None,
                b => Some([v - 1, 2 * b]),
            }
        }
    }

    /// Some distance ball is final and too small to reach every vertex
    /// within `k` steps.
    fn hopeless(&self) -> bool {
        let n = 2 * self.m;
        let mut seen = vec![false; n];
        for s in 0..n {
            seen.iter_mut().for_each(|x| *x = false);
            seen[s] = true;
            let mut frontier = vec![s];
            let mut reached = 1usize;
            let mut depth = 0usize;
            loop {
                if depth == self.k {
                    if reached < n {
                        return true;
                    }
                    break;
                }
                let succ: Option<Vec<[usize; 2]>> =
                    frontier.iter().map(|&v| self.successors(v)).collect();
                let Some(succ) = succ else {
                    // every vertex has two out-neighbours in the final graph
                    let steps = (self.k - depth) as u32;
                    let growth = frontier
                        .len()
                        .saturating_mul((1usize << (steps + 1).min(62)) - 2);
                    if reached.saturating_add(growth) < n {
                        return true;
                    }
                    break;
                };
                let mut next = Vec::new();
                for w in succ.into_iter().flatten() {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
                if next.is_empty() {
                    return reached < n;
                }
                reached += next.len();
                frontier = next;
                depth += 1;
            }
        }
        false
    }

    fn graph(&self) -> MixedGraph {
        let edges: Vec<_> = (0..self.m).map(|i| (2 * i, 2 * i + 1)).collect();
        let mut arcs = Vec::with_capacity(2 * self.m);
        for i in 0..self.m {
            arcs.push((2 * i, 2 * self.alpha[i] + 1));
            arcs.push((2 * i + 1, 2 * self.beta[i]));
        }
        MixedGraph::build(2 * self.m, &edges, &arcs).expect("matching search keeps graphs valid")
    }

    /// Returns `true` to stop (first witness found).
    fn extend(&mut self, j: usize) -> bool {
        self.stats.nodes += 1;
        if j == self.m {
            self.stats.leaves += 1;
            let g = self.graph();
            if g.diameter() == Some(self.k) {
                self.found.insert(canonical_form(&g), ());
                return self.first_only;
            }
            return false;
        }
        if j > 0 && self.hopeless() {
            self.stats.prunes += 1;
            return false;
        }
        for i in self.candidates(j) {
            if self.assign(j, i) {
                return true;
            }
        }
        false
    }

    fn assign(&mut self, j: usize, i: usize) -> bool {
        self.beta[j] = i;
        self.used[i] = true;
        let stop = self.extend(j + 1);
        self.used[i] = false;
        self.beta[j] = UNSET;
        stop
    }
}

struct TaskResult {
    found: BTreeMap<CanonicalForm, ()>,
    stats: SearchStats,
}

fn matching_tasks(m: usize, reverse: bool) -> Vec<(Vec<usize>, usize)> {
    let mut tasks = Vec::new();
    let mut types = derangement_types(m);
    if reverse {
        types.reverse();
    }
    for alpha in types {
        let probe = MatchingSearch::new(&alpha, 0, reverse, false);
        for first in probe.candidates(0) {
            tasks.push((alpha.clone(), first));
        }
    }
    tasks
}

fn run_matching_task(
    alpha: &[usize],
    first: usize,
    k: usize,
    reverse: bool,
    first_only: bool,
) -> TaskResult {
    let mut s = MatchingSearch::new(alpha, k, reverse, first_only);
    s.stats.nodes += 1;
    s.assign(0, first);
    TaskResult {
        found: s.found,
        stats: s.stats,
    }
}

fn enumerate_matching(
    spec: &SearchSpec,
    opts: &SearchOptions,
) -> Result<(BTreeMap<CanonicalForm, ()>, SearchStats), SearchError> {
    let m = spec.n / 2;
    let tasks = matching_tasks(m, opts.reverse_branch_order);
    let mut found = BTreeMap::new();
    let mut stats = SearchStats::default();
    if spec.mode == SearchMode::FirstWitness {
        for (alpha, first) in &tasks {
            let res = run_matching_task(alpha, *first, spec.k, opts.reverse_branch_order, true);
            stats.absorb(res.stats);
            if !res.found.is_empty() {
                found = res.found;
                break;
            }
        }
        return Ok((found, stats));
    }
    let run = || -> Vec<TaskResult> {
        tasks
            .par_iter()
            .map(|(alpha, first)| {
                run_matching_task(alpha, *first, spec.k, opts.reverse_branch_order, false)
            })
            .collect()
    };
    let results = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| SearchError::InvalidSpec(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    for res in results {
        stats.absorb(res.stats);
        found.extend(res.found);
    }
    Ok((found, stats))
}

struct GeneralSearch {
    n: usize,
    half: usize,
    r: usize,
    z: usize,
    k: usize,
    edge: Vec<Vec<bool>>,
    arc: Vec<Vec<bool>>,
    edge_deg: Vec<usize>,
    in_deg: Vec<usize>,
    reverse: bool,
    first_only: bool,
    max_nodes: u64,
    stats: SearchStats,
    found: BTreeMap<CanonicalForm, ()>,
}

enum Flow {
    Continue,
    Stop,
}

impl GeneralSearch {
    fn opposite(&self, v: usize) -> std::ops::Range<usize> {
        if v < self.half {
            self.half..self.n
        } else {
            0..self.half
        }
    }

    fn tick(&mut self) -> Result<(), SearchError> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.max_nodes {
            return Err(SearchError::BudgetExceeded(format!(
                "more than {} search nodes",
                self.max_nodes
            )));
        }
        Ok(())
    }

    /// Choose the `r` edge neighbours of `X`-vertex `x`, at least `from`.
    fn edges_of(&mut self, x: usize, from: usize, left: usize) -> Result<Flow, SearchError> {
        self.tick()?;
        if left == 0 {
            return if x + 1 == self.half {
                self.arcs_of(0, self.half, self.z)
            } else {
                self.edges_of(x + 1, self.half, self.r)
            };
        }
        let mut cands: Vec<usize> = (from..self.n)
            .filter(|&y| self.edge_deg[y] < self.r)
            .collect();
        if self.reverse {
            cands.reverse();
        }
        for y in cands {
            self.edge[x][y] = true;
            self.edge[y][x] = true;
            self.edge_deg[x] += 1;
            self.edge_deg[y] += 1;
            let flow = self.edges_of(x, y + 1, left - 1)?;
            self.edge[x][y] = false;
            self.edge[y][x] = false;
            self.edge_deg[x] -= 1;
            self.edge_deg[y] -= 1;
            if let Flow::Stop = flow {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    /// Choose the `z` out-arcs of vertex `v`, heads at least `from`.
    fn arcs_of(&mut self, v: usize, from: usize, left: usize) -> Result<Flow, SearchError> {
        self.tick()?;
        if left == 0 {
            if v + 1 == self.n {
                return Ok(self.leaf());
            }
            let next = v + 1;
            let start = self.opposite(next).start;
            return self.arcs_of(next, start, self.z);
        }
        let range = self.opposite(v);
        let mut cands: Vec<usize> = (from.max(range.start)..range.end)
            .filter(|&w| !self.edge[v][w] && !self.arc[w][v] && self.in_deg[w] < self.z)
            .collect();
        if self.reverse {
            cands.reverse();
        }
        for w in cands {
            self.arc[v][w] = true;
            self.in_deg[w] += 1;
            let flow = self.arcs_of(v, w + 1, left - 1)?;
            self.arc[v][w] = false;
            self.in_deg[w] -= 1;
            if let Flow::Stop = flow {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    fn leaf(&mut self) -> Flow {
        self.stats.leaves += 1;
        let mut edges = Vec::new();
        let mut arcs = Vec::new();
        for u in 0..self.n {
            for w in 0..self.n {
                if self.edge[u][w] && u < w {
                    edges.push((u, w));
                }
                if self.arc[u][w] {
                    arcs.push((u, w));
                }
            }
        }
        let g =
            MixedGraph::build(self.n, &edges, &arcs).expect("general search keeps graphs valid");
        if g.diameter() == Some(self.k) {
            self.found.insert(canonical_form(&g), ());
            if self.first_only {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}

fn enumerate_general(
    spec: &SearchSpec,
    opts: &SearchOptions,
) -> Result<(BTreeMap<CanonicalForm, ()>, SearchStats), SearchError> {
    let n = spec.n;
    let mut s = GeneralSearch {
        n,
        half: n / 2,
        r: spec.r,
        z: spec.z,
        k: spec.k,
        edge: vec![vec![false; n]; n],
        arc: vec![vec![false; n]; n],
        edge_deg: vec![0; n],
        in_deg: vec![0; n],
        reverse: opts.reverse_branch_order,
        first_only: spec.mode == SearchMode::FirstWitness,
        max_nodes: opts.max_nodes,
        stats: SearchStats::default(),
        found: BTreeMap::new(),
    };
    if spec.r == 0 {
        let start = s.opposite(0).start;
        s.arcs_of(0, start, spec.z)?;
    } else {
        // X-vertex 0 is adjacent to the first r vertices of Y
        for y in s.half..s.half + spec.r {
            s.edge[0][y] = true;
            s.edge[y][0] = true;
            s.edge_deg[0] += 1;
            s.edge_deg[y] += 1;
        }
        s.edges_of(0, n, 0)?;
    }
    Ok((s.found, s.stats))
}

/// All pairwise non-isomorphic totally `(r, z)`-regular bipartite mixed
/// graphs on `n` vertices with diameter exactly `k`.
pub fn enumerate(spec: SearchSpec, opts: &SearchOptions) -> Result<SearchCertificate, SearchError> {
    if spec.r + spec.z == 0 {
        return Err(SearchError::InvalidSpec("r + z must be at least 1".into()));
    }
    if spec.k == 0 {
        return Err(SearchError::InvalidSpec(
            "diameter must be at least 1".into(),
        ));
    }
    let empty = || SearchCertificate::from_found(spec, BTreeMap::new(), SearchStats::default());
    if spec.n % 2 == 1 || spec.n < 2 * (spec.r + spec.z) {
        return Ok(empty());
    }
    if spec.n > opts.max_order {
        return Err(SearchError::BudgetExceeded(format!(
            "order {} exceeds the limit {}",
            spec.n, opts.max_order
        )));
    }
    let (found, stats) = if spec.r == 1 && spec.z == 1 {
        enumerate_matching(&spec, opts)?
    } else {
        enumerate_general(&spec, opts)?
    };
    let cert = SearchCertificate::from_found(spec, found, stats);
    for g in &cert.representatives {
        assert_eq!(
            g.total_regularity(),
            Some((spec.r, spec.z)),
            "search produced an irregular graph"
        );
        assert!(
            g.bipartition().is_some(),
            "search produced a non-bipartite graph"
        );
        assert_eq!(
            g.diameter(),
            Some(spec.k),
            "search produced a graph of the wrong diameter"
        );
    }
    Ok(cert)
}

/// Enumerate at two vertices below the bipartite mixed Moore bound.
pub fn find_almost_moore(
    r: usize,
    z: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<SearchCertificate, SearchError> {
    let params = BoundParams::new(r as u32, z as u32, k as u32)
        .map_err(|e| SearchError::InvalidSpec(e.to_string()))?;
    let bound =
        bipartite_mixed_moore_bound(params).map_err(|e| SearchError::InvalidSpec(e.to_string()))?;
    let n = usize::try_from(bound.value - 2)
        .map_err(|_| SearchError::InvalidSpec("bound below 2".into()))?;
    enumerate(SearchSpec::count_all(r, z, k, n), opts)
}

//! Moore-type upper bounds on the order of (bipartite) mixed graphs.
//!
//! A totally `(r, z)`-regular mixed graph hung from a vertex has at most
//! `N_i` vertices at distance `i`, where `N_0 = 1`, `N_1 = d = r + z` and
//! `N_i = (d - 1) N_{i-1} + z N_{i-2}`. Splitting each layer by how a vertex
//! was reached (`R_i` through an edge, `Z_i` through an arc) gives the linear
//! map `(R, Z) -> ((r-1) R + r Z, z R + z Z)`. The bipartite bound sums every
//! other layer; hanging the tree from an edge instead gives a second,
//! independent route to the same number.
//!
//! Every value is computed in exact integer arithmetic. The closed forms in
//! terms of the irrational eigenvalues of the layer map are exposed only as
//! floating-point cross-checks.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("r + z must be at least 1")]
    ZeroDegree,
    #[error("diameter must be at least {min}, got {k}")]
    InvalidDiameter { k: u32, min: u32 },
    #[error("degree must be at least {min}, got {degree}")]
    InvalidDegree { degree: u32, min: u32 },
    #[error("closed formula only available for k in {{2, 3, 4}}, got {0}")]
    UnsupportedK(u32),
    #[error("integer overflow while evaluating the bound")]
    Overflow,
}

/// Undirected degree `r`, directed out-degree `z` and diameter `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundParams {
    pub r: u32,
    pub z: u32,
    pub k: u32,
}

impl BoundParams {
    pub fn new(r: u32, z: u32, k: u32) -> Result<Self, BoundError> {
        if r + z == 0 {
            return Err(BoundError::ZeroDegree);
        }
        if k == 0 {
            return Err(BoundError::InvalidDiameter { k, min: 1 });
        }
        Ok(BoundParams { r, z, k })
    }

    /// Total degree `d = r + z`.
    pub fn d(&self) -> u32 {
        self.r + self.z
    }
}

/// One layer of the distance tree: `total = by_edge + by_arc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layer {
    pub total: i128,
    pub by_edge: i128,
    pub by_arc: i128,
}

/// Layer sizes `N_0..=N_k` with their edge/arc split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSequence(pub Vec<Layer>);

impl LayerSequence {
    pub fn totals(&self) -> Vec<i128> {
        self.0.iter().map(|l| l.total).collect()
    }
}

/// The layer map with rows `(r - 1, r)` and `(z, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthMatrix(pub [[i128; 2]; 2]);

impl GrowthMatrix {
    pub fn new(r: u32, z: u32) -> Self {
        let (r, z) = (r as i128, z as i128);
        GrowthMatrix([[r - 1, r], [z, z]])
    }

    pub fn apply(&self, v: (i128, i128)) -> Result<(i128, i128), BoundError> {
        let m = &self.0;
        let row = |a: i128, b: i128| -> Result<i128, BoundError> {
            a.checked_mul(v.0)
                .and_then(|x| b.checked_mul(v.1).and_then(|y| x.checked_add(y)))
                .ok_or(BoundError::Overflow)
        };
        Ok((row(m[0][0], m[0][1])?, row(m[1][0], m[1][1])?))
    }

    pub fn mul(&self, other: &GrowthMatrix) -> Result<GrowthMatrix, BoundError> {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[0i128; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0i128;
                for t in 0..2 {
                    acc = a[i][t]
                        .checked_mul(b[t][j])
                        .and_then(|x| acc.checked_add(x))
                        .ok_or(BoundError::Overflow)?;
                }
                out[i][j] = acc;
            }
        }
        Ok(GrowthMatrix(out))
    }

    pub fn pow(&self, mut e: u32) -> Result<GrowthMatrix, BoundError> {
        let mut acc = GrowthMatrix([[1, 0], [0, 1]]);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Eigenvalues as the roots of `x^2 - tr x + det`, smaller first.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let m = &self.0;
        let tr = (m[0][0] + m[1][1]) as f64;
        let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) as f64;
        let disc = (tr * tr - 4.0 * det).sqrt();
        ((tr - disc) / 2.0, (tr + disc) / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundMethod {
    /// Plain sum of all layers `N_0..=N_k`.
    LayerSum,
    /// Every other layer of the vertex-hung tree.
    ParitySum,
    /// Twice the layers `N'_0..N'_{k-1}` of the edge-hung tree.
    EdgeHangingSum,
    /// Eigenvalue closed form, rounded.
    ClosedFormFloat,
    /// The explicit polynomials in `d`, `r`, `z` for `k <= 4`.
    SmallKFormula,
    /// Integer closed formula (bipartite graphs, bipartite digraphs).
    ExactFormula,
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMethod::LayerSum => "layer-sum",
            BoundMethod::ParitySum => "parity-sum",
            BoundMethod::EdgeHangingSum => "edge-hanging-sum",
            BoundMethod::ClosedFormFloat => "closed-form-float",
            BoundMethod::SmallKFormula => "small-k-formula",
            BoundMethod::ExactFormula => "exact-formula",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundValue {
    pub value: i128,
    pub method: BoundMethod,
}

impl BoundValue {
    fn new(value: i128, method: BoundMethod) -> Self {
        BoundValue { value, method }
    }
}

fn add(a: i128, b: i128) -> Result<i128, BoundError> {
    a.checked_add(b).ok_or(BoundError::Overflow)
}

fn mul(a: i128, b: i128) -> Result<i128, BoundError> {
    a.checked_mul(b).ok_or(BoundError::Overflow)
}

fn pow(base: i128, e: u32) -> Result<i128, BoundError> {
    base.checked_pow(e).ok_or(BoundError::Overflow)
}

/// `N_0..=N_len` for signed `(r, z)`. Negative `r` is meaningful only as a
/// formal evaluation point (the bounds are polynomials in `r` and `z`).
fn formal_layers(r: i128, z: i128, len: u32, first: i128) -> Result<Vec<i128>, BoundError> {
    let d = r + z;
    let mut n = vec![1, first];
    while n.len() <= len as usize {
        let i = n.len();
        let next = add(mul(d - 1, n[i - 1])?, mul(z, n[i - 2])?)?;
        n.push(next);
    }
    n.truncate(len as usize + 1);
    Ok(n)
}

fn formal_parity_sum(r: i128, z: i128, k: u32) -> Result<i128, BoundError> {
    let n = formal_layers(r, z, k, r + z)?;
    let start = if k.is_multiple_of(2) { 1 } else { 0 };
    let mut sum = 0i128;
    for i in (start..k as usize).step_by(2) {
        sum = add(sum, n[i])?;
    }
    mul(2, sum)
}

/// Layer sizes of the distance tree hung from a vertex (`vertex_hung`,
/// `N_1 = d`) or from one end of an edge (`N_1 = d - 1`).
pub fn layer_sequence(p: BoundParams, vertex_hung: bool) -> Result<LayerSequence, BoundError> {
    let (r, z) = (p.r as i128, p.z as i128);
    let d = r + z;
    let totals = formal_layers(r, z, p.k, if vertex_hung { d } else { d - 1 })?;
    let mut layers = Vec::with_capacity(totals.len());
    layers.push(if vertex_hung {
        Layer {
            total: 1,
            by_edge: 0,
            by_arc: 1,
        }
    } else {
        Layer {
            total: 1,
            by_edge: 1,
            by_arc: 0,
        }
    });
    for i in 1..totals.len() {
        let by_arc = mul(z, totals[i - 1])?;
        layers.push(Layer {
            total: totals[i],
            by_edge: totals[i] - by_arc,
            by_arc,
        });
    }
    Ok(LayerSequence(layers))
}

/// `(R_i, Z_i)` as the `i`-th power of the growth matrix applied to `(0, 1)`.
pub fn matrix_layers(r: u32, z: u32, i: u32) -> Result<(i128, i128), BoundError> {
    GrowthMatrix::new(r, z).pow(i)?.apply((0, 1))
}

/// Moore bound for (not necessarily bipartite) mixed graphs.
pub fn mixed_moore_bound(p: BoundParams) -> Result<BoundValue, BoundError> {
    let n = formal_layers(p.r as i128, p.z as i128, p.k, p.d() as i128)?;
    let total = n.into_iter().try_fold(0i128, add)?;
    Ok(BoundValue::new(total, BoundMethod::LayerSum))
}

/// Twice the sum of every other vertex-hung layer: odd layers below `k` for
/// even `k`, even layers below `k` for odd `k`.
pub fn parity_sum(p: BoundParams) -> Result<BoundValue, BoundError> {
    if p.k < 2 {
        return Err(BoundError::InvalidDiameter { k: p.k, min: 2 });
    }
    let v = formal_parity_sum(p.r as i128, p.z as i128, p.k)?;
    Ok(BoundValue::new(v, BoundMethod::ParitySum))
}

/// `2 (N'_0 + ... + N'_{k-1})` over the edge-hung layers.
pub fn edge_hanging_sum(p: BoundParams) -> Result<BoundValue, BoundError> {
    if p.k < 2 {
        return Err(BoundError::InvalidDiameter { k: p.k, min: 2 });
    }
    let seq = layer_sequence(p, false)?;
    let sum = seq.0[..p.k as usize]
        .iter()
        .map(|l| l.total)
        .try_fold(0i128, add)?;
    Ok(BoundValue::new(mul(2, sum)?, BoundMethod::EdgeHangingSum))
}

/// Moore bound for bipartite mixed graphs.
///
/// `r = 0` is the bipartite digraph bound and `z = 0, r >= 2` the bipartite
/// graph bound; every other case is the parity sum.
pub fn bipartite_mixed_moore_bound(p: BoundParams) -> Result<BoundValue, BoundError> {
    if p.k < 2 {
        return Err(BoundError::InvalidDiameter { k: p.k, min: 2 });
    }
    if p.r == 0 {
        return bipartite_digraph_bound(p.z, p.k);
    }
    if p.z == 0 && p.r >= 2 {
        return bipartite_graph_bound(p.r, p.k);
    }
    parity_sum(p)
}

/// Moore bound for bipartite digraphs of out-degree `d` and diameter `k`.
///
/// For `d = 1` the only strongly connected bipartite digraphs are even
/// directed cycles, so odd `k` gives the `(k + 1)`-cycle and even `k` the
/// `k`-cycle (diameter `k - 1`).
pub fn bipartite_digraph_bound(d: u32, k: u32) -> Result<BoundValue, BoundError> {
    if d == 0 {
        return Err(BoundError::InvalidDegree { degree: d, min: 1 });
    }
    if k == 0 {
        return Err(BoundError::InvalidDiameter { k, min: 1 });
    }
    let value = if d == 1 {
        if k % 2 == 1 {
            k as i128 + 1
        } else {
            k as i128
        }
    } else {
        let d = d as i128;
        let top = if k % 2 == 1 {
            pow(d, k + 1)? - 1
        } else {
            pow(d, k + 1)? - d
        };
        2 * top / (d * d - 1)
    };
    Ok(BoundValue::new(value, BoundMethod::ExactFormula))
}

/// Moore bound for bipartite graphs of degree `delta` and diameter `diam`.
pub fn bipartite_graph_bound(delta: u32, diam: u32) -> Result<BoundValue, BoundError> {
    if delta < 2 {
        return Err(BoundError::InvalidDegree {
            degree: delta,
            min: 2,
        });
    }
    if diam == 0 {
        return Err(BoundError::InvalidDiameter { k: diam, min: 1 });
    }
    let value = if delta == 2 {
        2 * diam as i128
    } else {
        let b = delta as i128 - 1;
        2 * (pow(b, diam)? - 1) / (b - 1)
    };
    Ok(BoundValue::new(value, BoundMethod::ExactFormula))
}

/// The explicit bipartite bounds for `k = 2, 3, 4`.
pub fn small_k_formula(p: BoundParams) -> Result<BoundValue, BoundError> {
    let (r, z) = (p.r as i128, p.z as i128);
    let d = r + z;
    let value = match p.k {
        2 => 2 * d,
        3 => 2 * (d * d - r + 1),
        4 => 2 * (d * d * d - d * d + (z - r + 1) * d + r),
        k => return Err(BoundError::UnsupportedK(k)),
    };
    Ok(BoundValue::new(value, BoundMethod::SmallKFormula))
}

/// The two roots `u1 < u2` of `x^2 - (d - 1) x - z`.
pub fn growth_roots(r: u32, z: u32) -> (f64, f64) {
    let d = (r + z) as f64;
    let v = (d - 1.0).powi(2) + 4.0 * z as f64;
    ((d - 1.0 - v.sqrt()) / 2.0, (d - 1.0 + v.sqrt()) / 2.0)
}

fn closed_form_at(r: f64, z: f64, k: u32, bipartite: bool) -> f64 {
    let d = r + z;
    let sv = ((d - 1.0).powi(2) + 4.0 * z).sqrt();
    let u1 = (d - 1.0 - sv) / 2.0;
    let u2 = (d - 1.0 + sv) / 2.0;
    let a = (sv - (d + 1.0)) / (2.0 * sv);
    let b = (sv + (d + 1.0)) / (2.0 * sv);
    let kf = k as f64;
    let term = |u: f64| -> f64 {
        if bipartite {
            // (u^{k+1} - u) / (u^2 - 1), continuous at u = +-1
            if (u - 1.0).abs() < 1e-12 {
                kf / 2.0
            } else if (u + 1.0).abs() < 1e-12 {
                if k.is_multiple_of(2) {
                    -kf / 2.0
                } else {
                    (kf + 2.0) / 2.0
                }
            } else {
                (u.powi(k as i32 + 1) - u) / (u * u - 1.0)
            }
        } else if (u - 1.0).abs() < 1e-12 {
            kf + 1.0
        } else {
            (u.powi(k as i32 + 1) - 1.0) / (u - 1.0)
        }
    };
    let s = a * term(u1) + b * term(u2);
    if bipartite {
        2.0 * s
    } else {
        s
    }
}

fn closed_form(p: BoundParams, bipartite: bool) -> f64 {
    let (r, z) = (p.r as f64, p.z as f64);
    if (p.d() as f64 - 1.0).powi(2) + 4.0 * z == 0.0 {
        // repeated root (r = 1, z = 0): symmetric limit in r
        let h = 1e-5;
        return (closed_form_at(r + h, z, p.k, bipartite)
            + closed_form_at(r - h, z, p.k, bipartite))
            / 2.0;
    }
    closed_form_at(r, z, p.k, bipartite)
}

/// Eigenvalue closed form of the mixed Moore bound, in floating point.
pub fn mixed_closed_form(p: BoundParams) -> f64 {
    closed_form(p, false)
}

/// Eigenvalue closed form of the bipartite mixed bound (`r >= 1`), in
/// floating point.
pub fn bipartite_closed_form(p: BoundParams) -> f64 {
    closed_form(p, true)
}

/// The three independent evaluations of the bipartite mixed bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheck {
    pub parity_sum: i128,
    pub edge_hanging_sum: i128,
    pub closed_form: f64,
}

impl CrossCheck {
    /// Exact sums equal, and the closed form within `rel_tol` of them.
    pub fn agrees(&self, rel_tol: f64) -> bool {
        let exact = self.parity_sum as f64;
        self.parity_sum == self.edge_hanging_sum
            && (self.closed_form - exact).abs() <= rel_tol * exact.abs().max(1.0)
            && self.closed_form.round() as i128 == self.parity_sum
    }
}

pub fn cross_check(p: BoundParams) -> Result<CrossCheck, BoundError> {
    Ok(CrossCheck {
        parity_sum: parity_sum(p)?.value,
        edge_hanging_sum: edge_hanging_sum(p)?.value,
        closed_form: bipartite_closed_form(p),
    })
}

/// Integer polynomial in `z`, lowest coefficient first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPoly(pub Vec<i128>);

impl ZPoly {
    pub fn eval(&self, z: i128) -> i128 {
        self.0.iter().rev().fold(0, |acc, &c| acc * z + c)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0).unwrap_or(0)
    }
}

impl fmt::Display for ZPoly {
    /// `20z^2+284z+728`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let a = c.unsigned_abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    f.write_str("z")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCell {
    pub d: u32,
    pub k: u32,
    pub poly: ZPoly,
}

/// The bipartite mixed bound with `r = d - z`, as a polynomial in `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsTable {
    pub d_max: u32,
    pub k_max: u32,
    pub cells: Vec<TableCell>,
}

impl BoundsTable {
    pub fn get(&self, d: u32, k: u32) -> Option<&ZPoly> {
        self.cells
            .iter()
            .find(|c| c.d == d && c.k == k)
            .map(|c| &c.poly)
    }
}

/// Interpolate `values[z]` at `z = 0, 1, ...` into monomial coefficients
/// through Newton forward differences. Panics unless the last difference
/// vanishes, i.e. the data really has degree `values.len() - 2`.
fn interpolate(values: &[i128]) -> Result<ZPoly, BoundError> {
    let m = values.len();
    let mut diffs = Vec::with_capacity(m);
    let mut row = values.to_vec();
    for _ in 0..m {
        diffs.push(row[0]);
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
    }
    assert_eq!(
        diffs[m - 1],
        0,
        "bound is not a polynomial of the expected degree in z"
    );

    // sum_j diffs[j] * z (z-1) ... (z-j+1) / j!, accumulated over deg!
    let deg = m - 2;
    let denom: i128 = (1..=deg as i128).product();
    let mut falling = vec![1i128];
    let mut fact = 1i128;
    let mut total = vec![0i128; deg + 1];
    for (j, &dj) in diffs.iter().enumerate().take(deg + 1) {
        if j > 0 {
            fact *= j as i128;
            let mut next = vec![0i128; falling.len() + 1];
            for (e, &c) in falling.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * (j as i128 - 1);
            }
            falling = next;
        }
        let scale = denom / fact;
        for (e, &c) in falling.iter().enumerate() {
            total[e] = add(total[e], mul(mul(dj, c)?, scale)?)?;
        }
    }
    let coeffs = total
        .into_iter()
        .map(|t| {
            assert_eq!(t % denom, 0, "non-integer coefficient in z");
            t / denom
        })
        .collect();
    Ok(ZPoly(coeffs))
}

/// The bipartite mixed bound for every `1 <= d <= d_max`, `2 <= k <= k_max`,
/// as an exact polynomial in `z` of degree `ceil(k/2) - 1`.
pub fn bounds_table(d_max: u32, k_max: u32) -> Result<BoundsTable, BoundError> {
    if d_max == 0 {
        return Err(BoundError::InvalidDegree {
            degree: d_max,
            min: 1,
        });
    }
    if k_max < 2 {
        return Err(BoundError::InvalidDiameter { k: k_max, min: 2 });
    }
    let mut cells = Vec::new();
    for k in 2..=k_max {
        let deg = k.div_ceil(2) - 1;
        for d in 1..=d_max {
            let values = (0..=deg as i128 + 1)
                .map(|z| formal_parity_sum(d as i128 - z, z, k))
                .collect::<Result<Vec<_>, _>>()?;
            cells.push(TableCell {
                d,
                k,
                poly: interpolate(&values)?,
            });
        }
    }
    Ok(BoundsTable {
        d_max,
        k_max,
        cells,
    })
}

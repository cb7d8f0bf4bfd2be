//! Exact spectral certificates.
//!
//! Nothing here touches floating point: characteristic polynomials come from
//! the division-free Berkowitz recurrence, and every identity involving
//! `1/d` is multiplied through by `d` and checked over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::constructions::moore_mixed_k3;
use crate::graph::MixedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("graphs have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("matrix arithmetic overflowed i64")]
    Overflow,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![1; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.concat(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.data
            .chunks(self.n.max(1))
            .map(|r| r.iter().sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(i64, i64) -> Option<i64>,
    ) -> Result<Self, SpectralError> {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b).ok_or(SpectralError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { n: self.n, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self, SpectralError> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SpectralError> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn scale(&self, c: i64) -> Result<Self, SpectralError> {
        let data = self
            .data
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(SpectralError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { n: self.n, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SpectralError> {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for t in 0..n {
                let a = self.data[i * n + t];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[t * n + j];
                    if b != 0 {
                        let cell = &mut out.data[i * n + j];
                        *cell = a
                            .checked_mul(b)
                            .and_then(|x| cell.checked_add(x))
                            .ok_or(SpectralError::Overflow)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self, SpectralError> {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

/// `A[u][v] = 1` iff `(u, v)` is an arc of the associated digraph.
pub fn adjacency(g: &MixedGraph) -> IntMatrix {
    let mut a = IntMatrix::zeros(g.order());
    for (u, v) in g.associated_digraph() {
        a.set(u, v, 1);
    }
    a
}

/// Integer polynomial, lowest coefficient first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^e`
    pub fn monomial(e: usize) -> Self {
        let mut c = vec![BigInt::zero(); e + 1];
        c[e] = BigInt::one();
        IntPoly(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.0.get(e).cloned().unwrap_or_default()
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(IntPoly::from_i64(&[1]), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.0.len().max(rhs.0.len());
        IntPoly::new((0..len).map(|e| self.coeff(e) + rhs.coeff(e)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    /// `x^8-4x^6`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let a = c.abs();
            if e == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            match e {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `det(xI - A)`, monic of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly(pub IntPoly);

impl CharPoly {
    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Ring operations with overflow reporting, so Berkowitz can run on `i128`
/// and retry on `BigInt` only when needed.
trait Ring: Clone {
    fn from_i64(x: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Ring for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Berkowitz: grow the leading principal submatrix one row/column at a time,
/// multiplying the running coefficient vector (highest degree first) by a
/// lower-triangular Toeplitz matrix built from `1, -a, -R C, -R A C, ...`.
fn berkowitz<T: Ring>(a: &IntMatrix) -> Option<Vec<T>> {
    let n = a.size();
    let zero = T::from_i64(0);
    let mut poly = vec![T::from_i64(1)];
    if n == 0 {
        return Some(poly);
    }
    poly.push(T::from_i64(a.get(0, 0)).neg()?);
    for m in 1..n {
        // column above the diagonal, row left of it, diagonal entry
        let col: Vec<T> = (0..m).map(|i| T::from_i64(a.get(i, m))).collect();
        let row: Vec<T> = (0..m).map(|j| T::from_i64(a.get(m, j))).collect();
        let mut toeplitz = Vec::with_capacity(m + 2);
        toeplitz.push(T::from_i64(1));
        toeplitz.push(T::from_i64(a.get(m, m)).neg()?);
        let mut v = col;
        for step in 0..m {
            let mut dot = zero.clone();
            for (r, x) in row.iter().zip(&v) {
                dot = dot.add(&r.mul(x)?)?;
            }
            toeplitz.push(dot.neg()?);
            if step + 1 < m {
                let mut next = Vec::with_capacity(m);
                for i in 0..m {
                    let mut acc = zero.clone();
                    for (j, x) in v.iter().enumerate() {
                        let e = a.get(i, j);
                        if e != 0 {
                            acc = acc.add(&T::from_i64(e).mul(x)?)?;
                        }
                    }
                    next.push(acc);
                }
                v = next;
            }
        }
        let mut next = Vec::with_capacity(m + 2);
        for i in 0..m + 2 {
            let mut acc = zero.clone();
            for (j, p) in poly.iter().enumerate().take(i + 1) {
                acc = acc.add(&toeplitz[i - j].mul(p)?)?;
            }
            next.push(acc);
        }
        poly = next;
    }
    Some(poly)
}

/// Exact characteristic polynomial `det(xI - A)`.
pub fn char_poly(a: &IntMatrix) -> CharPoly {
    let high_first: Vec<BigInt> = match berkowitz::<i128>(a) {
        Some(p) => p.iter().map(Ring::to_big).collect(),
        None => berkowitz::<BigInt>(a).expect("bignum arithmetic does not overflow"),
    };
    CharPoly(IntPoly::new(high_first.into_iter().rev().collect()))
}

pub fn graph_char_poly(g: &MixedGraph) -> CharPoly {
    char_poly(&adjacency(g))
}

/// `(r, z, d)` of a totally regular, bipartite graph of diameter 3.
fn diameter3_parameters(g: &MixedGraph) -> Result<(i64, i64, i64), SpectralError> {
    let (r, z) = g.total_regularity().ok_or_else(|| {
        SpectralError::PreconditionViolated("graph is not totally regular".into())
    })?;
    if g.bipartition().is_none() {
        return Err(SpectralError::PreconditionViolated(
            "graph is not bipartite".into(),
        ));
    }
    if g.diameter() != Some(3) {
        return Err(SpectralError::PreconditionViolated(format!(
            "diameter is {}, expected 3",
            g.diameter()
                .map_or("unbounded".to_string(), |d| d.to_string())
        )));
    }
    let (r, z) = (r as i64, z as i64);
    Ok((r, z, r + z))
}

/// `(x - d)(x + d)(x^2 - (r - 1))^{d^2 - r}`
pub fn moore_k3_spectrum_poly(d: i64, r: i64) -> IntPoly {
    let lin = &IntPoly::from_i64(&[-d, 1]) * &IntPoly::from_i64(&[d, 1]);
    let quad = IntPoly::from_i64(&[-(r - 1), 0, 1]);
    &lin * &quad.pow((d * d - r) as usize)
}

/// Whether the characteristic polynomial of a diameter-3 bipartite mixed
/// Moore graph is `(x - d)(x + d)(x^2 - (r - 1))^{d^2 - r}`.
pub fn verify_spectrum_k3(g: &MixedGraph) -> Result<bool, SpectralError> {
    let (r, _, d) = diameter3_parameters(g)?;
    let expected_order = 2 * (d * d - r + 1);
    if g.order() as i64 != expected_order {
        return Err(SpectralError::PreconditionViolated(format!(
            "order {} differs from the Moore order {expected_order}",
            g.order()
        )));
    }
    Ok(graph_char_poly(g).0 == moore_k3_spectrum_poly(d, r))
}

/// `d * H(x)` where `H = (x^3 - (r-1) x)/d + x^2 + 1 - r` is the Hoffman
/// polynomial of a diameter-3 bipartite mixed Moore graph.
pub fn hoffman_polynomial_scaled(d: i64, r: i64) -> IntPoly {
    IntPoly::from_i64(&[d * (1 - r), -(r - 1), d, 1])
}

/// Checks `d I + d (A^2 - r I) + (A^2 - (r-1) I) A = d J` exactly, together
/// with the row and column sums `d` that the identity forces.
pub fn hoffman_identity(g: &MixedGraph) -> Result<bool, SpectralError> {
    let (r, _, d) = diameter3_parameters(g)?;
    let n = g.order();
    let a = adjacency(g);
    let id = IntMatrix::identity(n);
    let a2 = a.mul(&a)?;
    let lhs = id
        .scale(d)?
        .add(&a2.sub(&id.scale(r)?)?.scale(d)?)?
        .add(&a2.sub(&id.scale(r - 1)?)?.mul(&a)?)?;
    let dj = IntMatrix::ones(n).scale(d)?;
    if lhs != dj {
        return Ok(false);
    }
    let j = IntMatrix::ones(n);
    Ok(a.mul(&j)? == dj && j.mul(&a)? == dj)
}

/// `A^4 = d^2 A^2` for `A` the adjacency matrix of `L(K_{d,d})`, while none
/// of the cubic divisors `x^3 - d^2 x`, `x^2 (x - d)`, `x^2 (x + d)` of
/// `x^4 - d^2 x^2` annihilates `A`.
pub fn minimal_poly_lkdd(d: usize) -> Result<bool, SpectralError> {
    let g = moore_mixed_k3(d).map_err(|e| SpectralError::InvalidParameter(e.to_string()))?;
    let a = adjacency(&g);
    let dd = d as i64;
    let a2 = a.mul(&a)?;
    let a3 = a2.mul(&a)?;
    let a4 = a3.mul(&a)?;
    let annihilates = a4 == a2.scale(dd * dd)?;
    let cubics = [
        a3.sub(&a.scale(dd * dd)?)?,
        a3.sub(&a2.scale(dd)?)?,
        a3.add(&a2.scale(dd)?)?,
    ];
    Ok(annihilates && cubics.iter().all(|m| !m.is_zero()))
}

/// Distance-`i` matrices of `g` for `i = 0..=max`.
pub fn distance_matrices(g: &MixedGraph, max: usize) -> Vec<IntMatrix> {
    let n = g.order();
    let dist = g.distances();
    let mut mats = vec![IntMatrix::zeros(n); max + 1];
    for u in 0..n {
        for v in 0..n {
            if let Some(k) = dist.get(u, v).filter(|&k| k <= max) {
                mats[k].set(u, v, 1);
            }
        }
    }
    mats
}

/// For `L(K_{d,d})`: `I = A_0`, `A = A_1`, `A^2 - I = A_2`, `A^3 - d A = d A_3`,
/// the distance matrices sum to `J`, and `d (p_0 + p_1 + p_2 + p_3)` equals
/// the scaled Hoffman polynomial with `r = 1`.
pub fn distance_polynomials_check(d: usize) -> Result<bool, SpectralError> {
    let g = moore_mixed_k3(d).map_err(|e| SpectralError::InvalidParameter(e.to_string()))?;
    let n = g.order();
    let dd = d as i64;
    let a = adjacency(&g);
    let id = IntMatrix::identity(n);
    let dist = distance_matrices(&g, 3);
    let a2 = a.mul(&a)?;
    let a3 = a2.mul(&a)?;
    let matrices_ok = dist[0] == id
        && dist[1] == a
        && dist[2] == a2.sub(&id)?
        && dist[3].scale(dd)? == a3.sub(&a.scale(dd)?)?
        && dist
            .iter()
            .try_fold(IntMatrix::zeros(n), |acc, m| acc.add(m))?
            == IntMatrix::ones(n);

    // scaled by d: p_0 = d, p_1 = d x, p_2 = d x^2 - d, p_3 = x^3 - d x
    let scaled = [
        IntPoly::from_i64(&[dd]),
        IntPoly::from_i64(&[0, dd]),
        IntPoly::from_i64(&[-dd, 0, dd]),
        IntPoly::from_i64(&[0, -dd, 0, 1]),
    ];
    let sum = scaled
        .iter()
        .fold(IntPoly::from_i64(&[]), |acc, p| &acc + p);
    Ok(matrices_ok && sum == hoffman_polynomial_scaled(dd, 1))
}

pub fn cospectral(g: &MixedGraph, h: &MixedGraph) -> Result<bool, SpectralError> {
    if g.order() != h.order() {
        return Err(SpectralError::OrderMismatch(g.order(), h.order()));
    }
    Ok(graph_char_poly(g) == graph_char_poly(h))
}

/// `H(d) = N`: evaluates `d * H` at `x = d` and divides by `d`.
pub fn hoffman_value_at_degree(d: i64, r: i64) -> Option<i64> {
    let big = hoffman_polynomial_scaled(d, r).eval(&BigInt::from(d));
    let dd = BigInt::from(d);
    (&big % &dd)
        .is_zero()
        .then(|| (big / dd).to_i64())
        .flatten()
}

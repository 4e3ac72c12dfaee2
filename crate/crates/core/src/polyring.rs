//! Exact polynomials in `q` and `t`, and truncated power series in `t`
//! over `Z[q]`.
//!
//! [`BiPoly`] is a sparse map from exponent pairs to nonzero `i64`
//! coefficients, kept in canonical form (no explicit zeros). All coefficient
//! arithmetic is checked: overflow panics with a message rather than
//! wrapping, so a result that comes back is exact. The coefficient type is
//! wide enough for everything the crate computes: the largest values arising
//! in practice are coefficient sums like `[31]_q^8` evaluated at `q = 1`,
//! about `8.5 * 10^11`, far below `2^63`.
//!
//! The difference operator [`delta_t`] is computed from its definition,
//! `(P(q, qt) - P(q, t)) / (qt - t)`, by substitution followed by exact
//! division; the monomial rule `delta_t(q^a t^b) = q^a [b]_q t^{b-1}` is
//! kept out of the implementation so tests can use it as an independent
//! oracle.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Errors from series construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("series reciprocal needs a denominator with constant term 1; its t^0 coefficient is {found}")]
    NonUnitConstantTerm { found: String },
}

#[track_caller]
fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("coefficient overflow in exact polynomial addition")
}

#[track_caller]
fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .expect("coefficient overflow in exact polynomial multiplication")
}

/// A sparse exact polynomial in `Z[q, t]`.
///
/// Terms are keyed by `(deg_t, deg_q)`; the map holds no zero coefficients,
/// so equality is structural. The key order makes iteration, display, and
/// mismatch reporting run through terms by ascending `t` degree and then
/// ascending `q` degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), i64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, c)
    }

    /// The single term `c * t^deg_t * q^deg_q` (or zero when `c = 0`).
    pub fn monomial(deg_t: usize, deg_q: usize, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((deg_t, deg_q), c);
        }
        Self { terms }
    }

    /// Sums an arbitrary term list into canonical form, combining duplicate
    /// exponent pairs and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut out = BTreeMap::new();
        for (deg_t, deg_q, c) in terms {
            accumulate(&mut out, (deg_t, deg_q), c);
        }
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `t^deg_t q^deg_q` (zero if absent).
    pub fn coeff(&self, deg_t: usize, deg_q: usize) -> i64 {
        self.terms.get(&(deg_t, deg_q)).copied().unwrap_or(0)
    }

    /// `(deg_t, deg_q, coeff)` triples in ascending `(deg_t, deg_q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.terms.iter().map(|(&(dt, dq), &c)| (dt, dq, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn max_deg_t(&self) -> usize {
        self.terms.keys().map(|&(dt, _)| dt).max().unwrap_or(0)
    }

    pub fn max_deg_q(&self) -> usize {
        self.terms.keys().map(|&(_, dq)| dq).max().unwrap_or(0)
    }

    /// Whether every term has `t` degree zero.
    pub fn is_q_only(&self) -> bool {
        self.terms.keys().all(|&(dt, _)| dt == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&key, &c) in &other.terms {
            accumulate(&mut terms, key, c);
        }
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&key, &c) in &other.terms {
            accumulate(&mut terms, key, -c);
        }
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(at, aq), &ac) in &self.terms {
            for (&(bt, bq), &bc) in &other.terms {
                accumulate(&mut terms, (at + bt, aq + bq), checked_mul(ac, bc));
            }
        }
        Self { terms }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales every coefficient.
    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&k, &a)| (k, checked_mul(a, c)))
                .collect(),
        }
    }

    /// Exact evaluation at integer arguments; panics on overflow.
    pub fn evaluate(&self, q0: i64, t0: i64) -> i64 {
        let mut acc: i64 = 0;
        for (&(dt, dq), &c) in &self.terms {
            let mut term = c;
            for _ in 0..dt {
                term = checked_mul(term, t0);
            }
            for _ in 0..dq {
                term = checked_mul(term, q0);
            }
            acc = checked_add(acc, term);
        }
        acc
    }

    /// The coefficient polynomials of each power of `t`, lowest first; the
    /// returned polynomials are `q`-only. Empty for the zero polynomial.
    pub fn t_coefficients(&self) -> Vec<BiPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = vec![BiPoly::zero(); self.max_deg_t() + 1];
        for (&(dt, dq), &c) in &self.terms {
            out[dt].terms.insert((0, dq), c);
        }
        out
    }
}

fn accumulate(terms: &mut BTreeMap<(usize, usize), i64>, key: (usize, usize), c: i64) {
    if c == 0 {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let sum = checked_add(*slot.get(), c);
            if sum == 0 {
                slot.remove();
            } else {
                slot.insert(sum);
            }
        }
    }
}

impl fmt::Display for BiPoly {
    /// Canonical text: terms by ascending `(deg_t, deg_q)`, e.g.
    /// `1 + 2*t*q + t*q^2 + t^2*q^2 + 2*t^2*q^3 + t^3*q^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (dt, dq, c)) in self.terms().enumerate() {
            let magnitude = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if magnitude != 1 || (dt == 0 && dq == 0) {
                factors.push(magnitude.to_string());
            }
            match dt {
                0 => {}
                1 => factors.push("t".to_string()),
                d => factors.push(format!("t^{d}")),
            }
            match dq {
                0 => {}
                1 => factors.push("q".to_string()),
                d => factors.push(format!("q^{d}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// The `q`-integer `[i]_q = 1 + q + ... + q^{i-1}`, with `[0]_q = 0`.
pub fn q_integer(i: usize) -> BiPoly {
    BiPoly::from_terms((0..i).map(|d| (0, d, 1)))
}

/// The difference operator
/// `delta_t(P) = (P(q, qt) - P(q, t)) / (qt - t)`,
/// computed by substitution and exact division.
///
/// Substituting `t -> qt` sends `c q^a t^b` to `c q^{a+b} t^b`; the
/// difference is divisible by `t` (degree-zero terms cancel) and then by
/// `q - 1` (it vanishes at `q = 1`), and both divisions are carried out
/// exactly. A nonzero remainder is a defect and panics.
pub fn delta_t(p: &BiPoly) -> BiPoly {
    // Numerator of the difference quotient, with the division by t already
    // applied as a degree shift.
    let mut shifted = BTreeMap::new();
    for (dt, dq, c) in p.terms() {
        if dt == 0 {
            continue;
        }
        accumulate(&mut shifted, (dt - 1, dq + dt), c);
        accumulate(&mut shifted, (dt - 1, dq), -c);
    }
    // Group by t degree and divide each q-polynomial by q - 1 synthetically.
    let mut rows: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
    for (&(dt, dq), &c) in &shifted {
        rows.entry(dt).or_default().insert(dq, c);
    }
    let mut out = BTreeMap::new();
    for (dt, row) in rows {
        let top = *row.keys().next_back().expect("row is nonempty");
        let mut carry: i64 = 0;
        for d in (1..=top).rev() {
            let quotient = checked_add(row.get(&d).copied().unwrap_or(0), carry);
            accumulate(&mut out, (dt, d - 1), quotient);
            carry = quotient;
        }
        let remainder = checked_add(row.get(&0).copied().unwrap_or(0), carry);
        assert_eq!(remainder, 0, "difference quotient must divide exactly");
    }
    BiPoly { terms: out }
}

/// A power series in `t` over `Z[q]`, truncated after `t^order`.
///
/// Holds `order + 1` coefficient polynomials, each `q`-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<BiPoly>,
}

impl TruncSeries {
    /// Builds from explicit coefficients of `t^0, ..., t^order`; missing
    /// trailing entries are zero.
    pub fn from_coefficients(order: usize, mut coeffs: Vec<BiPoly>) -> Self {
        assert!(
            coeffs.len() <= order + 1,
            "more coefficients than the order admits"
        );
        debug_assert!(coeffs.iter().all(BiPoly::is_q_only));
        coeffs.resize(order + 1, BiPoly::zero());
        Self { order, coeffs }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        Self::from_coefficients(order, vec![BiPoly::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The `q`-polynomial coefficient of `t^r`.
    pub fn coeff(&self, r: usize) -> &BiPoly {
        &self.coeffs[r]
    }

    pub fn coefficients(&self) -> &[BiPoly] {
        &self.coeffs
    }
}

/// The reciprocal of a polynomial `d` in `Z[q][[t]]`, truncated after
/// `t^order`.
///
/// The `t^0` coefficient of `d` must be the constant 1; that makes the
/// reciprocal exist over `Z[q]` and the recurrence
/// `x_r = -(d_1 x_{r-1} + ... + d_r x_0)` exact.
pub fn series_reciprocal(d: &BiPoly, order: usize) -> Result<TruncSeries, PolyError> {
    let d_rows = d.t_coefficients();
    if d_rows.first() != Some(&BiPoly::one()) {
        let found = d_rows
            .first()
            .map(|p| p.to_string())
            .unwrap_or_else(|| "0".to_string());
        return Err(PolyError::NonUnitConstantTerm { found });
    }
    let mut coeffs: Vec<BiPoly> = Vec::with_capacity(order + 1);
    coeffs.push(BiPoly::one());
    for r in 1..=order {
        let mut acc = BiPoly::zero();
        for b in 1..=r.min(d_rows.len() - 1) {
            acc = acc.add(&d_rows[b].mul(&coeffs[r - b]));
        }
        coeffs.push(acc.neg());
    }
    Ok(TruncSeries { order, coeffs })
}

/// The series whose `t^r` coefficient is `[r+1]_q^n`, truncated after
/// `t^order`.
pub fn carlitz_lhs(n: usize, order: usize) -> TruncSeries {
    let coeffs = (0..=order).map(|r| q_integer(r + 1).pow(n)).collect();
    TruncSeries { order, coeffs }
}

/// Multiplies a truncated series by a polynomial, truncating at the series
/// order.
pub fn series_mul_poly(x: &TruncSeries, p: &BiPoly) -> TruncSeries {
    let p_rows = p.t_coefficients();
    let mut coeffs = vec![BiPoly::zero(); x.order + 1];
    for (b, row) in p_rows.iter().enumerate().take(x.order + 1) {
        if row.is_zero() {
            continue;
        }
        for (target, source) in coeffs[b..].iter_mut().zip(&x.coeffs) {
            *target = target.add(&row.mul(source));
        }
    }
    TruncSeries {
        order: x.order,
        coeffs,
    }
}

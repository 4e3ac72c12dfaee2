//! Distribution polynomials over a whole group and the identity catalog
//! relating them.
//!
//! A distribution polynomial sums `t^{t-stat(pi)} q^{q-stat(pi)}` over every
//! element of `S_n` or `B_n`. Two families recur throughout: the classical
//! `A_n(t, q)`, summing `t^{des_A} q^{maj_A}` over `S_n`, and its signed
//! analogue `S_n(t, q)`, summing `t^{fdes} q^{fmaj}` over `B_n`. Both admit
//! closed recursions driven by the `delta_t` operator, and `S_n` also splits
//! as the product `(1 + t q)(1 + t q^2) ... (1 + t q^n) * A_n`.
//!
//! [`verify`] checks one identity at one rank by computing both sides along
//! routes that share as little code as possible: enumerated distributions
//! against recursions, products, and Carlitz-style series whose `t^r`
//! coefficient is `[r+1]_q^n`. Verdicts localize the first mismatch.
//!
//! Enumeration-backed summation is chunked: each worker thread accumulates a
//! private exponent-count map over a contiguous slice of the group, and the
//! partial polynomials are merged by addition in chunk order. Exact integer
//! addition is associative and commutative, so the result is bitwise
//! identical for every thread count.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::polyring::{
    carlitz_lhs, delta_t, q_integer, series_mul_poly, series_reciprocal, BiPoly, PolyError,
    TruncSeries,
};
use crate::signed_perm::{
    enumerate_group_with_cap, group_order, ElementIter, GroupKind, PermError, SignedPermutation,
    DEFAULT_RANK_CAP,
};
use crate::signed_perm::{factor_parabolic, flag_decompose};
use crate::statistics::{
    full_stats, length_oracle_bfs, stat_fmaj, stat_length, StatError, StatKind,
};

/// Errors from building distributions or running verifications.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Stat(#[from] StatError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("distribution needs at least one statistic")]
    EmptyDistributionSpec,
    #[error("rank must be at least 1")]
    RankZero,
    #[error("insertion position {position} is out of range 1..={rank}")]
    InsertionOutOfRange { position: usize, rank: usize },
}

/// What to sum over, and which statistics feed the exponents of `t` and `q`.
/// At least one statistic must be present; a missing one contributes
/// exponent zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistributionSpec {
    pub group: GroupKind,
    pub n: usize,
    pub t_stat: Option<StatKind>,
    pub q_stat: Option<StatKind>,
}

/// Execution limits for enumeration-backed computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExecOptions {
    /// Largest rank enumeration will touch.
    pub rank_cap: usize,
    /// Worker threads for chunked summation; results do not depend on it.
    pub threads: usize,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            rank_cap: DEFAULT_RANK_CAP,
            threads: thread::available_parallelism().map_or(1, |p| p.get()),
        }
    }
}

/// Schedules at most one chunk per worker, and none at all for groups too
/// small to be worth the spawns.
fn accumulate_exponents(
    chunk: ElementIter,
    t_stat: Option<StatKind>,
    q_stat: Option<StatKind>,
) -> BTreeMap<(usize, usize), i64> {
    let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for pi in chunk {
        let record = full_stats(&pi);
        let dt = t_stat.map_or(0, |s| record.get(s));
        let dq = q_stat.map_or(0, |s| record.get(s));
        *counts.entry((dt, dq)).or_insert(0) += 1;
    }
    counts
}

/// The joint distribution polynomial
/// `sum over the group of t^{t_stat(pi)} q^{q_stat(pi)}`.
///
/// Its value at `q = t = 1` is the group order.
pub fn distribution(spec: &DistributionSpec, opts: &ExecOptions) -> Result<BiPoly, IdentityError> {
    if spec.t_stat.is_none() && spec.q_stat.is_none() {
        return Err(IdentityError::EmptyDistributionSpec);
    }
    let stream = enumerate_group_with_cap(spec.group, spec.n, opts.rank_cap)?;
    let threads = opts.threads.max(1);
    let counts = if threads == 1 || stream.len() < 10_000 {
        accumulate_exponents(stream.iter(), spec.t_stat, spec.q_stat)
    } else {
        let chunks = stream.chunks(threads);
        thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || accumulate_exponents(chunk, spec.t_stat, spec.q_stat))
                })
                .collect();
            let mut merged: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for handle in handles {
                for (key, count) in handle.join().expect("worker panicked") {
                    *merged.entry(key).or_insert(0) += count;
                }
            }
            merged
        })
    };
    Ok(BiPoly::from_terms(
        counts.into_iter().map(|((dt, dq), c)| (dt, dq, c)),
    ))
}

// --- recursions and products ---

/// `A_n(t, q)`, built from its recursion:
/// `A_0 = 1` and
/// `A_n = (1 + t q [n-1]_q) A_{n-1} + t q (1 - t) delta_t(A_{n-1})`.
pub fn a_poly_recursive(n: usize) -> BiPoly {
    let t = BiPoly::monomial(1, 0, 1);
    let tq = BiPoly::monomial(1, 1, 1);
    let mut a = BiPoly::one();
    for m in 1..=n {
        let head = BiPoly::one().add(&tq.mul(&q_integer(m - 1)));
        let tail = tq.mul(&BiPoly::one().sub(&t)).mul(&delta_t(&a));
        a = head.mul(&a).add(&tail);
    }
    a
}

/// `S_n(t, q)`, built from its recursion:
/// `S_0 = 1` and
/// `S_n = (1 + t q + t^2 q^2 [2n-2]_q) S_{n-1}
///        + t q (1 - t)(1 + t q) delta_t(S_{n-1})`.
pub fn s_poly_recursive(n: usize) -> BiPoly {
    let t = BiPoly::monomial(1, 0, 1);
    let tq = BiPoly::monomial(1, 1, 1);
    let t2q2 = BiPoly::monomial(2, 2, 1);
    let mut s = BiPoly::one();
    for m in 1..=n {
        let head = BiPoly::one().add(&tq).add(&t2q2.mul(&q_integer(2 * m - 2)));
        let tail = tq
            .mul(&BiPoly::one().sub(&t))
            .mul(&BiPoly::one().add(&tq))
            .mul(&delta_t(&s));
        s = head.mul(&s).add(&tail);
    }
    s
}

/// `prod_{i=1}^{n} (1 + t q^i)`.
pub fn ascending_binomial_product(n: usize) -> BiPoly {
    let mut acc = BiPoly::one();
    for i in 1..=n {
        acc = acc.mul(&BiPoly::one().add(&BiPoly::monomial(1, i, 1)));
    }
    acc
}

/// `S_n(t, q)` along its product route:
/// `prod_{i=1}^{n} (1 + t q^i) * A_n(t, q)` with `A_n` from
/// [`a_poly_recursive`].
pub fn s_poly_product(n: usize) -> BiPoly {
    ascending_binomial_product(n).mul(&a_poly_recursive(n))
}

// --- insertion ---

/// Inserts the value `n` (or `-n` when `negative`) into a rank-`n-1` element
/// at window position `position`, shifting later entries right.
pub fn insert(
    sigma: &SignedPermutation,
    position: usize,
    negative: bool,
) -> Result<SignedPermutation, IdentityError> {
    let n = sigma.rank() + 1;
    if position == 0 || position > n {
        return Err(IdentityError::InsertionOutOfRange { position, rank: n });
    }
    let mut window = Vec::with_capacity(n);
    window.extend_from_slice(&sigma.window()[..position - 1]);
    window.push(if negative { -(n as i32) } else { n as i32 });
    window.extend_from_slice(&sigma.window()[position - 1..]);
    Ok(SignedPermutation::from_window(&window).expect("insertion preserves validity"))
}

/// `(fdes, maj_A)` of the element obtained by inserting `n` or `-n` at
/// `position`, computed directly on the inserted element.
pub fn insertion_stats(
    sigma: &SignedPermutation,
    position: usize,
    negative: bool,
) -> Result<(usize, usize), IdentityError> {
    let inserted = insert(sigma, position, negative)?;
    let record = full_stats(&inserted);
    Ok((record.fdes, record.maj_a))
}

/// Number of descents of `sigma` at positions `>= i`.
pub fn descent_tail_count(sigma: &SignedPermutation, i: usize) -> usize {
    let w = sigma.window();
    (i.max(1)..w.len()).filter(|&j| w[j - 1] > w[j]).count()
}

/// `(fdes, maj_A)` of the same insertion predicted by the closed-form
/// increments, without constructing the inserted element:
///
/// * boundary inserts: `+n` at the front raises `fdes` by `1 + [sigma(1) > 0]`
///   and `-n` at the front by `[sigma(1) > 0]`; at the back, `+n` changes
///   nothing and `-n` raises `fdes` by 2 and `maj_A` by `n - 1`;
/// * interior inserts at `position = i` raise `fdes` by 2 exactly when
///   `sigma(i-1) < sigma(i)`, and raise `maj_A` by
///   `d_i(sigma) + (i-1) [sigma(i-1) < sigma(i)]`, plus 1 for the positive
///   sign, where `d_i` counts descents at positions `>= i`.
///
/// Exists as the independent route against which [`insertion_stats`] is
/// checked.
pub fn insertion_stats_predicted(
    sigma: &SignedPermutation,
    position: usize,
    negative: bool,
) -> Result<(usize, usize), IdentityError> {
    let n = sigma.rank() + 1;
    if position == 0 || position > n {
        return Err(IdentityError::InsertionOutOfRange { position, rank: n });
    }
    let record = full_stats(sigma);
    let w = sigma.window();
    if position == n {
        return Ok(if negative {
            (record.fdes + 2, record.maj_a + n - 1)
        } else {
            (record.fdes, record.maj_a)
        });
    }
    let rises = position >= 2 && w[position - 2] < w[position - 1];
    let fdes = if position == 1 {
        record.fdes + usize::from(w[0] > 0) + usize::from(!negative)
    } else {
        record.fdes + 2 * usize::from(rises)
    };
    let maj = record.maj_a
        + descent_tail_count(sigma, position)
        + (position - 1) * usize::from(rises)
        + usize::from(!negative);
    Ok((fdes, maj))
}

// --- the identity catalog ---

/// Names of the verifiable identities.
///
/// Each id pins one statement about distribution polynomials:
///
/// * `macmahon`: over `S_n`, `sum q^inv = sum q^maj_A`.
/// * `thm23`: `sum_{r>=0} [r+1]_q^n t^r
///   = A_n(t, q) / prod_{i=0}^{n} (1 - t q^i)` as truncated series.
/// * `prop31`: over `B_n`, `sum q^nmaj = sum q^length`.
/// * `thm32`: `sum_{r>=0} [r+1]_q^n t^r
///   = (sum_{B_n} t^ndes q^nmaj) / ((1 - t) prod_{i=1}^{n} (1 - t^2 q^{2i}))`.
/// * `thm32_product`: `sum_{B_n} t^ndes q^nmaj
///   = prod_{i=1}^{n} (1 + t q^i) * A_n(t, q)`.
/// * `thm21`: for every element of `B_n`, `fmaj` equals the exponent sum of
///   its flag factorization.
/// * `thm41`: `sum_{B_n} t^fdes q^fmaj` equals the recursion-built
///   `S_n(t, q)`.
/// * `thm42`: `sum_{r>=0} [r+1]_q^n t^r
///   = S_n(t, q) / ((1 - t) prod_{i=1}^{n} (1 - t^2 q^{2i}))`.
/// * `thm43`: `sum_{B_n} t^fdes q^fmaj = prod_{i=1}^{n} (1 + t q^i) * A_n`.
/// * `cor44`: over `B_n`, the joint pairs `(ndes, nmaj)` and `(fdes, fmaj)`
///   have the same distribution.
/// * `cor45`: over `B_n`, `sum q^length = sum q^nmaj = sum q^fmaj`.
/// * `decomp26`: every element splits uniquely as an increasing window times
///   a negative-free element.
/// * `length27`: the closed-form length equals breadth-first word length,
///   checked exhaustively at rank `min(n, 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    Macmahon,
    Thm23,
    Prop31,
    Thm32,
    Thm32Product,
    Thm21,
    Thm41,
    Thm42,
    Thm43,
    Cor44,
    Cor45,
    Decomp26,
    Length27,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::Macmahon,
        IdentityId::Thm23,
        IdentityId::Prop31,
        IdentityId::Thm32,
        IdentityId::Thm32Product,
        IdentityId::Thm21,
        IdentityId::Thm41,
        IdentityId::Thm42,
        IdentityId::Thm43,
        IdentityId::Cor44,
        IdentityId::Cor45,
        IdentityId::Decomp26,
        IdentityId::Length27,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Macmahon => "macmahon",
            IdentityId::Thm23 => "thm23",
            IdentityId::Prop31 => "prop31",
            IdentityId::Thm32 => "thm32",
            IdentityId::Thm32Product => "thm32_product",
            IdentityId::Thm21 => "thm21",
            IdentityId::Thm41 => "thm41",
            IdentityId::Thm42 => "thm42",
            IdentityId::Thm43 => "thm43",
            IdentityId::Cor44 => "cor44",
            IdentityId::Cor45 => "cor45",
            IdentityId::Decomp26 => "decomp26",
            IdentityId::Length27 => "length27",
        }
    }

    /// Whether the check compares truncated series (and so consumes the
    /// truncation order).
    pub fn uses_series(self) -> bool {
        matches!(
            self,
            IdentityId::Thm23 | IdentityId::Thm32 | IdentityId::Thm42
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = IdentityId::ALL.iter().map(|id| id.as_str()).collect();
                format!(
                    "unknown identity '{s}'; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

/// Where two sides of an identity first disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discrepancy {
    /// Lexicographically smallest `(deg_t, deg_q)` where the coefficients of
    /// two polynomials or series differ.
    Coefficient {
        deg_t: usize,
        deg_q: usize,
        lhs: i64,
        rhs: i64,
    },
    /// First element (in enumeration order) violating an elementwise
    /// identity, with the two conflicting values.
    Element { window: String, lhs: i64, rhs: i64 },
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::Coefficient {
                deg_t,
                deg_q,
                lhs,
                rhs,
            } => write!(
                f,
                "coefficient of t^{deg_t} q^{deg_q}: lhs {lhs} != rhs {rhs}"
            ),
            Discrepancy::Element { window, lhs, rhs } => {
                write!(f, "element {window}: lhs {lhs} != rhs {rhs}")
            }
        }
    }
}

/// Outcome of checking one identity at one rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub identity: IdentityId,
    /// The rank actually checked; `length27` caps it at 4.
    pub n: usize,
    /// Truncation order, for the series-based identities.
    pub order: Option<usize>,
    pub pass: bool,
    /// Present exactly when `pass` is false.
    pub first_discrepancy: Option<Discrepancy>,
    pub elapsed: Duration,
}

fn first_poly_discrepancy(lhs: &BiPoly, rhs: &BiPoly) -> Option<Discrepancy> {
    let mut keys: Vec<(usize, usize)> = lhs.terms().map(|(dt, dq, _)| (dt, dq)).collect();
    keys.extend(rhs.terms().map(|(dt, dq, _)| (dt, dq)));
    keys.sort_unstable();
    keys.dedup();
    for (dt, dq) in keys {
        let a = lhs.coeff(dt, dq);
        let b = rhs.coeff(dt, dq);
        if a != b {
            return Some(Discrepancy::Coefficient {
                deg_t: dt,
                deg_q: dq,
                lhs: a,
                rhs: b,
            });
        }
    }
    None
}

fn first_series_discrepancy(lhs: &TruncSeries, rhs: &TruncSeries) -> Option<Discrepancy> {
    debug_assert_eq!(lhs.order(), rhs.order());
    for r in 0..=lhs.order().min(rhs.order()) {
        if let Some(Discrepancy::Coefficient {
            deg_q, lhs, rhs, ..
        }) = first_poly_discrepancy(lhs.coeff(r), rhs.coeff(r))
        {
            return Some(Discrepancy::Coefficient {
                deg_t: r,
                deg_q,
                lhs,
                rhs,
            });
        }
    }
    None
}

fn dist(
    group: GroupKind,
    n: usize,
    t_stat: Option<StatKind>,
    q_stat: Option<StatKind>,
    opts: &ExecOptions,
) -> Result<BiPoly, IdentityError> {
    distribution(
        &DistributionSpec {
            group,
            n,
            t_stat,
            q_stat,
        },
        opts,
    )
}

/// `prod_{i=0}^{n} (1 - t q^i)`; the `i = 0` factor is `1 - t`.
fn classic_denominator(n: usize) -> BiPoly {
    let mut acc = BiPoly::one();
    for i in 0..=n {
        acc = acc.mul(&BiPoly::one().sub(&BiPoly::monomial(1, i, 1)));
    }
    acc
}

/// `(1 - t) prod_{i=1}^{n} (1 - t^2 q^{2i})`.
fn signed_denominator(n: usize) -> BiPoly {
    let mut acc = BiPoly::one().sub(&BiPoly::monomial(1, 0, 1));
    for i in 1..=n {
        acc = acc.mul(&BiPoly::one().sub(&BiPoly::monomial(2, 2 * i, 1)));
    }
    acc
}

fn series_side(
    numerator: &BiPoly,
    denominator: &BiPoly,
    order: usize,
) -> Result<TruncSeries, IdentityError> {
    let recip = series_reciprocal(denominator, order)?;
    Ok(series_mul_poly(&recip, numerator))
}

/// Scans an elementwise check over a full group enumeration; the failure
/// values are reported through `check`'s return.
fn first_element_failure<F>(
    kind: GroupKind,
    n: usize,
    opts: &ExecOptions,
    mut check: F,
) -> Result<Option<Discrepancy>, IdentityError>
where
    F: FnMut(&SignedPermutation) -> Option<(i64, i64)>,
{
    let stream = enumerate_group_with_cap(kind, n, opts.rank_cap)?;
    for pi in stream.iter() {
        if let Some((lhs, rhs)) = check(&pi) {
            return Ok(Some(Discrepancy::Element {
                window: pi.to_string(),
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

/// Checks one identity at rank `n`; `order` is the truncation order for the
/// series-based ids and ignored by the rest.
pub fn verify(
    id: IdentityId,
    n: usize,
    order: usize,
    opts: &ExecOptions,
) -> Result<Verdict, IdentityError> {
    if n == 0 {
        return Err(IdentityError::RankZero);
    }
    let start = Instant::now();
    let b = GroupKind::Hyperoctahedral;
    let s = GroupKind::Symmetric;
    let mut checked_n = n;
    let discrepancy = match id {
        IdentityId::Macmahon => {
            let lhs = dist(s, n, None, Some(StatKind::Inv), opts)?;
            let rhs = dist(s, n, None, Some(StatKind::MajA), opts)?;
            first_poly_discrepancy(&lhs, &rhs)
        }
        IdentityId::Thm23 => {
            let lhs = carlitz_lhs(n, order);
            let numerator = dist(s, n, Some(StatKind::DesA), Some(StatKind::MajA), opts)?;
            let rhs = series_side(&numerator, &classic_denominator(n), order)?;
            first_series_discrepancy(&lhs, &rhs)
        }
        IdentityId::Prop31 => {
            let lhs = dist(b, n, None, Some(StatKind::Nmaj), opts)?;
            let rhs = dist(b, n, None, Some(StatKind::Length), opts)?;
            first_poly_discrepancy(&lhs, &rhs)
        }
        IdentityId::Thm32 => {
            let lhs = carlitz_lhs(n, order);
            let numerator = dist(b, n, Some(StatKind::Ndes), Some(StatKind::Nmaj), opts)?;
            let rhs = series_side(&numerator, &signed_denominator(n), order)?;
            first_series_discrepancy(&lhs, &rhs)
        }
        IdentityId::Thm32Product => {
            let lhs = dist(b, n, Some(StatKind::Ndes), Some(StatKind::Nmaj), opts)?;
            let rhs = s_poly_product(n);
            first_poly_discrepancy(&lhs, &rhs)
        }
        IdentityId::Thm21 => first_element_failure(b, n, opts, |pi| {
            let formula = stat_fmaj(pi) as i64;
            let exponent_sum = flag_decompose(pi).sum() as i64;
            (formula != exponent_sum).then_some((formula, exponent_sum))
        })?,
        IdentityId::Thm41 => {
            let lhs = dist(b, n, Some(StatKind::Fdes), Some(StatKind::Fmaj), opts)?;
            let rhs = s_poly_recursive(n);
            first_poly_discrepancy(&lhs, &rhs)
        }
        IdentityId::Thm42 => {
            let lhs = carlitz_lhs(n, order);
            let numerator = dist(b, n, Some(StatKind::Fdes), Some(StatKind::Fmaj), opts)?;
            let rhs = series_side(&numerator, &signed_denominator(n), order)?;
            first_series_discrepancy(&lhs, &rhs)
        }
        IdentityId::Thm43 => {
            let lhs = dist(b, n, Some(StatKind::Fdes), Some(StatKind::Fmaj), opts)?;
            let rhs = s_poly_product(n);
            first_poly_discrepancy(&lhs, &rhs)
        }
        IdentityId::Cor44 => {
            let lhs = dist(b, n, Some(StatKind::Ndes), Some(StatKind::Nmaj), opts)?;
            let rhs = dist(b, n, Some(StatKind::Fdes), Some(StatKind::Fmaj), opts)?;
            first_poly_discrepancy(&lhs, &rhs)
        }
        IdentityId::Cor45 => {
            let by_length = dist(b, n, None, Some(StatKind::Length), opts)?;
            let by_nmaj = dist(b, n, None, Some(StatKind::Nmaj), opts)?;
            let by_fmaj = dist(b, n, None, Some(StatKind::Fmaj), opts)?;
            first_poly_discrepancy(&by_length, &by_nmaj)
                .or_else(|| first_poly_discrepancy(&by_nmaj, &by_fmaj))
        }
        IdentityId::Decomp26 => {
            let total = group_order(b, n)?;
            let mut pairs: HashSet<(Vec<i32>, Vec<i32>)> = HashSet::new();
            let mut failure = first_element_failure(b, n, opts, |pi| {
                let f = factor_parabolic(pi);
                let valid = f.sigma.is_increasing()
                    && f.u.is_unsigned()
                    && f.sigma.compose(&f.u).is_ok_and(|p| p == *pi);
                if !valid {
                    return Some((1, 0));
                }
                pairs.insert((f.sigma.window().to_vec(), f.u.window().to_vec()));
                None
            })?;
            if failure.is_none() && pairs.len() as u64 != total {
                failure = Some(Discrepancy::Element {
                    window: format!("B_{n}"),
                    lhs: total as i64,
                    rhs: pairs.len() as i64,
                });
            }
            failure
        }
        IdentityId::Length27 => {
            checked_n = n.min(4);
            let oracle = length_oracle_bfs(checked_n)?;
            first_element_failure(b, checked_n, opts, |pi| {
                let formula = stat_length(pi) as i64;
                let word = oracle[pi] as i64;
                (formula != word).then_some((formula, word))
            })?
        }
    };
    Ok(Verdict {
        identity: id,
        n: checked_n,
        order: id.uses_series().then_some(order),
        pass: discrepancy.is_none(),
        first_discrepancy: discrepancy,
        elapsed: start.elapsed(),
    })
}

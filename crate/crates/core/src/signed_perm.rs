//! Signed permutations and the groups they form.
//!
//! An element of the hyperoctahedral group `B_n` is a bijection `pi` of
//! `{-n, ..., -1, 1, ..., n}` onto itself satisfying `pi(-a) = -pi(a)`.
//! It is stored in window notation, the vector `[pi(1), ..., pi(n)]`; images
//! of negative points follow from the odd-extension rule. The symmetric group
//! `S_n` is recovered as the subgroup of elements whose window has no
//! negative entries.
//!
//! Composition is composition of functions: `(a * b)(i) = a(b(i))`. So
//! `[2,1,3]` composed with `[1,3,2]` gives `[2,3,1]`.
//!
//! Positions and points are 1-based throughout, matching window notation;
//! error values report 1-based positions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest rank `enumerate_group` accepts unless the caller raises the cap.
///
/// `|B_9| = 2^9 * 9!` is about `1.9 * 10^8` elements, the most an exhaustive
/// sweep can reasonably chew through; anything larger must be requested
/// explicitly.
pub const DEFAULT_RANK_CAP: usize = 9;

/// Errors from constructing, combining, or enumerating signed permutations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("window is empty; rank must be at least 1")]
    EmptyWindow,
    #[error("window entry at position {position} is zero")]
    ZeroEntry { position: usize },
    #[error("window entry {value} at position {position} is out of range for rank {rank}")]
    EntryOutOfRange {
        position: usize,
        value: i32,
        rank: usize,
    },
    #[error("duplicate absolute value {value} at position {position}")]
    DuplicateAbsValue { position: usize, value: i32 },
    #[error("window token '{token}' at position {position} is not a signed integer")]
    InvalidToken { position: usize, token: String },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("index {index} is out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("flag exponent {value} at index {index} exceeds its bound {bound}")]
    ExponentOutOfBounds {
        index: usize,
        value: usize,
        bound: usize,
    },
    #[error("rank {rank} exceeds the enumeration cap {cap}")]
    RankCapExceeded { rank: usize, cap: usize },
    #[error("group order for rank {rank} overflows the enumeration index")]
    OrderOverflow { rank: usize },
}

/// A signed permutation in window notation.
///
/// The window is validated on construction: entries are nonzero, bounded by
/// the rank in absolute value, and hit each absolute value exactly once.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    /// Builds an element from its window `[pi(1), ..., pi(n)]`.
    pub fn from_window(values: &[i32]) -> Result<Self, PermError> {
        if values.is_empty() {
            return Err(PermError::EmptyWindow);
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (idx, &v) in values.iter().enumerate() {
            let position = idx + 1;
            if v == 0 {
                return Err(PermError::ZeroEntry { position });
            }
            let a = v.unsigned_abs() as usize;
            if a > n {
                return Err(PermError::EntryOutOfRange {
                    position,
                    value: v,
                    rank: n,
                });
            }
            if seen[a] {
                return Err(PermError::DuplicateAbsValue { position, value: v });
            }
            seen[a] = true;
        }
        Ok(Self {
            window: values.to_vec(),
        })
    }

    /// Wraps a window that is already known to be valid.
    pub(crate) fn from_window_unchecked(window: Vec<i32>) -> Self {
        debug_assert!(Self::from_window(&window).is_ok());
        Self { window }
    }

    /// The identity element of `B_n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "rank must be at least 1");
        Self {
            window: (1..=n as i32).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// The image of a point in `{-n, ..., -1, 1, ..., n}` under the odd
    /// extension rule `pi(-a) = -pi(a)`.
    pub fn image(&self, point: i32) -> i32 {
        debug_assert!(point != 0 && point.unsigned_abs() as usize <= self.rank());
        if point > 0 {
            self.window[point as usize - 1]
        } else {
            -self.window[(-point) as usize - 1]
        }
    }

    /// Function composition: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.rank() != other.rank() {
            return Err(PermError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        let window = other.window.iter().map(|&v| self.image(v)).collect();
        Ok(Self { window })
    }

    /// The group inverse.
    pub fn inverse(&self) -> Self {
        let n = self.rank();
        let mut window = vec![0; n];
        for (idx, &v) in self.window.iter().enumerate() {
            let point = (idx + 1) as i32;
            if v > 0 {
                window[v as usize - 1] = point;
            } else {
                window[(-v) as usize - 1] = -point;
            }
        }
        Self { window }
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(idx, &v)| v == (idx + 1) as i32)
    }

    /// Whether the window is strictly increasing.
    pub fn is_increasing(&self) -> bool {
        self.window.windows(2).all(|w| w[0] < w[1])
    }

    /// Whether the element lies in `S_n`, i.e. has no negative window entry.
    pub fn is_unsigned(&self) -> bool {
        self.window.iter().all(|&v| v > 0)
    }

    /// The window of the doubled element acting on `-n..=-1, 1..=n`:
    /// `(pi(-n), ..., pi(-1), pi(1), ..., pi(n))`.
    ///
    /// Counting descents of this length-`2n` sequence gives the flag descent
    /// number; see `statistics::stat_fdes`.
    pub fn doubled_window(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(2 * self.rank());
        out.extend(self.window.iter().rev().map(|&v| -v));
        out.extend(self.window.iter().copied());
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.window.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for SignedPermutation {
    type Err = PermError;

    /// Parses comma-separated window text such as `-3,1,-6,2,-4,-5`.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let mut values = Vec::new();
        for (idx, raw) in s.split(',').enumerate() {
            let token = raw.trim();
            let value: i32 = token.parse().map_err(|_| PermError::InvalidToken {
                position: idx + 1,
                token: token.to_string(),
            })?;
            values.push(value);
        }
        Self::from_window(&values)
    }
}

// --- generators and distinguished elements ---

/// The Coxeter generator `s_i` of `B_n` for `0 <= i <= n-1`.
///
/// `s_0` negates the first window entry; `s_i` for `i >= 1` swaps the window
/// entries at positions `i` and `i+1`.
pub fn generator(n: usize, i: usize) -> Result<SignedPermutation, PermError> {
    if n == 0 {
        return Err(PermError::EmptyWindow);
    }
    if i >= n {
        return Err(PermError::IndexOutOfRange { index: i, rank: n });
    }
    let mut window: Vec<i32> = (1..=n as i32).collect();
    if i == 0 {
        window[0] = -1;
    } else {
        window.swap(i - 1, i);
    }
    Ok(SignedPermutation { window })
}

/// The reflection negating the single point `i`, `1 <= i <= n`: its window is
/// the identity's with entry `i` replaced by `-i`. For `i = 1` this is `s_0`.
pub fn reflection_eta(n: usize, i: usize) -> Result<SignedPermutation, PermError> {
    if n == 0 {
        return Err(PermError::EmptyWindow);
    }
    if i == 0 || i > n {
        return Err(PermError::IndexOutOfRange { index: i, rank: n });
    }
    let mut window: Vec<i32> = (1..=n as i32).collect();
    window[i - 1] = -(i as i32);
    Ok(SignedPermutation { window })
}

/// The element `t_i = s_i s_{i-1} ... s_0` of `B_n` for `0 <= i <= n-1`,
/// with window `[-(i+1), 1, 2, ..., i, i+2, ..., n]`.
///
/// `t_i` acts on `{-(i+1), ..., i+1}` as a single cycle of length `2(i+1)`
/// and fixes every larger point, so it has order `2(i+1)`.
pub fn element_t(n: usize, i: usize) -> Result<SignedPermutation, PermError> {
    if n == 0 {
        return Err(PermError::EmptyWindow);
    }
    if i >= n {
        return Err(PermError::IndexOutOfRange { index: i, rank: n });
    }
    let mut window = Vec::with_capacity(n);
    window.push(-((i + 1) as i32));
    window.extend(1..=i as i32);
    window.extend(i as i32 + 2..=n as i32);
    Ok(SignedPermutation { window })
}

fn power(base: &SignedPermutation, k: usize) -> SignedPermutation {
    let mut acc = SignedPermutation::identity(base.rank());
    for _ in 0..k {
        acc = acc.compose(base).expect("equal ranks");
    }
    acc
}

// --- flag factorization ---

/// Exponents `(k_0, ..., k_{n-1})` with `0 <= k_i <= 2i+1` of the unique
/// factorization `pi = t_{n-1}^{k_{n-1}} ... t_1^{k_1} t_0^{k_0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagExponents {
    ks: Vec<usize>,
}

impl FlagExponents {
    /// Validates the componentwise bounds `0 <= k_i <= 2i+1`.
    pub fn new(ks: Vec<usize>) -> Result<Self, PermError> {
        if ks.is_empty() {
            return Err(PermError::EmptyWindow);
        }
        for (i, &k) in ks.iter().enumerate() {
            let bound = 2 * i + 1;
            if k > bound {
                return Err(PermError::ExponentOutOfBounds {
                    index: i,
                    value: k,
                    bound,
                });
            }
        }
        Ok(Self { ks })
    }

    pub fn rank(&self) -> usize {
        self.ks.len()
    }

    pub fn exponents(&self) -> &[usize] {
        &self.ks
    }

    /// `k_0 + k_1 + ... + k_{n-1}`, the flag major index of the factored
    /// element.
    pub fn sum(&self) -> usize {
        self.ks.iter().sum()
    }
}

/// Factors `pi` as `t_{n-1}^{k_{n-1}} ... t_0^{k_0}` and returns the
/// exponents.
///
/// Peels the largest index first: everything to the right of
/// `t_{n-1}^{k_{n-1}}` fixes the point `n`, so `pi(n)` determines `k_{n-1}`
/// from the `2n`-cycle of `t_{n-1}` through `n`. Stripping that factor and
/// descending gives every exponent in `O(n)` group operations each.
///
/// The exponent sum equals twice the major index computed in the order
/// `-1 < -2 < ... < -n < 1 < 2 < ... < n`, plus the number of negative
/// entries. Over the whole group that sum is equidistributed with
/// [`stat_fmaj`](crate::statistics::stat_fmaj), but the two differ on
/// individual elements (first at `[-1,-2]`), which is exactly what the
/// `thm21` verification route measures.
pub fn flag_decompose(pi: &SignedPermutation) -> FlagExponents {
    let n = pi.rank();
    let mut current = pi.clone();
    let mut ks = vec![0usize; n];
    for i in (0..n).rev() {
        let point = (i + 1) as i32;
        let v = current.image(point);
        // On the cycle of t_i through i+1: t_i^k(i+1) = i+1-k while positive,
        // then wraps to -(i+1), -i, ..., -1.
        let k = if v > 0 {
            (point - v) as usize
        } else {
            (2 * point + v) as usize
        };
        ks[i] = k;
        if k > 0 {
            let t = element_t(n, i).expect("index in range");
            let order = 2 * (i + 1);
            current = power(&t, order - k).compose(&current).expect("equal ranks");
        }
    }
    debug_assert!(
        current.is_identity(),
        "flag peeling must end at the identity"
    );
    FlagExponents { ks }
}

/// Multiplies out `t_{n-1}^{k_{n-1}} ... t_0^{k_0}`.
pub fn compose_from_exponents(exponents: &FlagExponents) -> SignedPermutation {
    let n = exponents.rank();
    let mut acc = SignedPermutation::identity(n);
    for i in (0..n).rev() {
        let t = element_t(n, i).expect("index in range");
        acc = acc
            .compose(&power(&t, exponents.ks[i]))
            .expect("equal ranks");
    }
    acc
}

// --- parabolic factorization ---

/// The unique factorization `pi = sigma * u` with `sigma` an increasing
/// window and `u` in `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicFactorization {
    /// The increasing-window factor; carries all the signs of `pi`.
    pub sigma: SignedPermutation,
    /// The negative-free factor; carries all the descents of `pi`.
    pub u: SignedPermutation,
}

/// Splits `pi` into `sigma * u` where `sigma`'s window is strictly
/// increasing and `u` is negative-free.
///
/// `sigma` is the sorted window of `pi`, and `u(i) = sigma^{-1}(pi(i))`,
/// which is positive because `sigma` takes every window value of `pi` at a
/// positive point.
pub fn factor_parabolic(pi: &SignedPermutation) -> ParabolicFactorization {
    let mut sorted = pi.window.to_vec();
    sorted.sort_unstable();
    let sigma = SignedPermutation::from_window_unchecked(sorted);
    let sigma_inv = sigma.inverse();
    let u_window = pi.window.iter().map(|&v| sigma_inv.image(v)).collect();
    let u = SignedPermutation::from_window_unchecked(u_window);
    debug_assert!(u.is_unsigned());
    ParabolicFactorization { sigma, u }
}

// --- enumeration ---

/// Which group to enumerate or sum over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// The symmetric group `S_n` of negative-free elements.
    Symmetric,
    /// The full hyperoctahedral group `B_n`.
    Hyperoctahedral,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Symmetric => "S",
            GroupKind::Hyperoctahedral => "B",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "S" => Ok(GroupKind::Symmetric),
            "B" => Ok(GroupKind::Hyperoctahedral),
            other => Err(format!("unknown group '{other}'; expected S or B")),
        }
    }
}

fn factorial(n: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for k in 2..=n as u64 {
        acc = acc.checked_mul(k)?;
    }
    Some(acc)
}

/// `|S_n| = n!` or `|B_n| = 2^n n!`, or an overflow error for ranks whose
/// order exceeds the 64-bit enumeration index.
pub fn group_order(kind: GroupKind, n: usize) -> Result<u64, PermError> {
    let overflow = || PermError::OrderOverflow { rank: n };
    let fact = factorial(n).ok_or_else(overflow)?;
    match kind {
        GroupKind::Symmetric => Ok(fact),
        GroupKind::Hyperoctahedral => {
            if n >= 64 {
                return Err(overflow());
            }
            fact.checked_mul(1u64 << n).ok_or_else(overflow)
        }
    }
}

/// An exhaustive enumeration of `S_n` or `B_n` in a fixed order.
///
/// `S_n` is listed in lexicographic window order. `B_n` is listed with the
/// sign pattern as the outer loop in binary counting order (bit `i-1` of the
/// pattern negates position `i`) and `S_n` in lexicographic order as the
/// inner loop. The stream can be split into disjoint contiguous chunks that
/// together cover the whole group, so independent workers can consume it in
/// parallel.
#[derive(Debug, Clone)]
pub struct GroupStream {
    kind: GroupKind,
    n: usize,
    total: u64,
}

/// Enumerates with the default rank cap of [`DEFAULT_RANK_CAP`].
pub fn enumerate_group(kind: GroupKind, n: usize) -> Result<GroupStream, PermError> {
    enumerate_group_with_cap(kind, n, DEFAULT_RANK_CAP)
}

/// Enumerates with an explicit rank cap.
pub fn enumerate_group_with_cap(
    kind: GroupKind,
    n: usize,
    cap: usize,
) -> Result<GroupStream, PermError> {
    if n == 0 {
        return Err(PermError::EmptyWindow);
    }
    if n > cap {
        return Err(PermError::RankCapExceeded { rank: n, cap });
    }
    let total = group_order(kind, n)?;
    Ok(GroupStream { kind, n, total })
}

impl GroupStream {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Number of elements in the stream.
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Iterates over the whole group.
    pub fn iter(&self) -> ElementIter {
        ElementIter::new(self.kind, self.n, 0, self.total)
    }

    /// Splits the stream into `parts` disjoint contiguous chunks covering the
    /// whole group. Earlier chunks are one element longer when the order is
    /// not divisible by `parts`.
    pub fn chunks(&self, parts: usize) -> Vec<ElementIter> {
        let parts = parts.max(1) as u64;
        let base = self.total / parts;
        let extra = self.total % parts;
        let mut out = Vec::with_capacity(parts as usize);
        let mut start = 0;
        for p in 0..parts {
            let len = base + u64::from(p < extra);
            out.push(ElementIter::new(self.kind, self.n, start, start + len));
            start += len;
        }
        debug_assert_eq!(start, self.total);
        out
    }
}

/// Decodes the permutation of `1..=n` with the given lexicographic rank.
fn lex_permutation(n: usize, mut rank: u64) -> Vec<i32> {
    let mut available: Vec<i32> = (1..=n as i32).collect();
    let mut out = Vec::with_capacity(n);
    for pos in 0..n {
        let f = factorial(n - 1 - pos).expect("rank within enumerable range");
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(available.remove(idx));
    }
    out
}

/// Advances `w` to its lexicographic successor; returns false at the last
/// permutation, leaving `w` unchanged.
fn next_permutation(w: &mut [i32]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// Iterator over one contiguous index range of a [`GroupStream`].
#[derive(Debug, Clone)]
pub struct ElementIter {
    kind: GroupKind,
    n: usize,
    index: u64,
    end: u64,
    perm: Vec<i32>,
    mask: u64,
}

impl ElementIter {
    fn new(kind: GroupKind, n: usize, start: u64, end: u64) -> Self {
        let fact = factorial(n).expect("rank within enumerable range");
        let (mask, perm_rank) = match kind {
            GroupKind::Symmetric => (0, start.min(fact.saturating_sub(1))),
            GroupKind::Hyperoctahedral => (start / fact, start % fact),
        };
        ElementIter {
            kind,
            n,
            index: start,
            end,
            perm: lex_permutation(n, perm_rank),
            mask,
        }
    }

    fn current_window(&self) -> Vec<i32> {
        match self.kind {
            GroupKind::Symmetric => self.perm.clone(),
            GroupKind::Hyperoctahedral => self
                .perm
                .iter()
                .enumerate()
                .map(|(i, &v)| if self.mask >> i & 1 == 1 { -v } else { v })
                .collect(),
        }
    }

    fn advance(&mut self) {
        if !next_permutation(&mut self.perm) {
            self.perm = (1..=self.n as i32).collect();
            self.mask += 1;
        }
    }
}

impl Iterator for ElementIter {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        if self.index >= self.end {
            return None;
        }
        let window = self.current_window();
        self.index += 1;
        if self.index < self.end {
            self.advance();
        }
        Some(SignedPermutation::from_window_unchecked(window))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let remaining = (self.end - self.index) as usize;
        (remaining, Some(remaining))
    }
}

impl ExactSizeIterator for ElementIter {}

/// Collects the distinct absolute values negated by `pi`, i.e. the set
/// `{i : pi(i) < 0}` of positions with negative window entries.
pub fn negative_positions(pi: &SignedPermutation) -> BTreeSet<usize> {
    pi.window()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < 0)
        .map(|(idx, _)| idx + 1)
        .collect()
}

//! Statistics of signed permutations.
//!
//! Every statistic here is a total function of a validated element; nothing
//! is cached. The classical statistics (`inv`, `des_A`, `maj_A`) read the
//! window as a plain sequence. The signed refinements add the negative
//! entries: the length in the Coxeter presentation, the type-B descent
//! number, the negative descent multiset with its cardinality `ndes` and
//! weighted sum `nmaj`, and the flag pair `fdes`/`fmaj`.
//!
//! A breadth-first search over the Cayley graph supplies an independent
//! word-length oracle for small ranks, and the negative descent multiset has
//! a second, length-based characterization; both exist purely to be checked
//! against the closed forms.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::signed_perm::{generator, group_order, reflection_eta, GroupKind, SignedPermutation};

/// Largest rank the breadth-first length oracle will sweep; `|B_5| = 3840`.
pub const BFS_MAX_RANK: usize = 5;

/// Errors from the oracle entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatError {
    #[error("length oracle accepts ranks 1 through {max}; got {rank}")]
    OracleRankOutOfRange { rank: usize, max: usize },
}

// --- sequence statistics ---

/// Number of inversions of a sequence of pairwise distinct integers: pairs
/// `i < j` with `s[i] > s[j]`.
pub fn seq_inv(s: &[i32]) -> usize {
    let mut count = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i] > s[j] {
                count += 1;
            }
        }
    }
    count
}

/// The descent set of a sequence: 1-based positions `i` with `s[i] > s[i+1]`.
pub fn seq_descent_set(s: &[i32]) -> Vec<usize> {
    (1..s.len()).filter(|&i| s[i - 1] > s[i]).collect()
}

/// Number of descents of a sequence.
pub fn seq_des(s: &[i32]) -> usize {
    (1..s.len()).filter(|&i| s[i - 1] > s[i]).count()
}

/// Major index of a sequence: the sum of its descent positions.
pub fn seq_maj(s: &[i32]) -> usize {
    (1..s.len()).filter(|&i| s[i - 1] > s[i]).sum()
}

// --- element statistics ---

/// The classical statistics of one element, read off its window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicStats {
    pub inv: usize,
    pub des_a: usize,
    pub maj_a: usize,
    /// 1-based positions with negative window entries, ascending.
    pub neg_set: Vec<usize>,
    pub neg: usize,
}

pub fn classic_stats(pi: &SignedPermutation) -> ClassicStats {
    let w = pi.window();
    let neg_set: Vec<usize> = w
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < 0)
        .map(|(idx, _)| idx + 1)
        .collect();
    ClassicStats {
        inv: seq_inv(w),
        des_a: seq_des(w),
        maj_a: seq_maj(w),
        neg: neg_set.len(),
        neg_set,
    }
}

/// Sum of the negated window entries' absolute values,
/// `-sum of pi(i) over positions i with pi(i) < 0`.
fn negative_value_sum(pi: &SignedPermutation) -> usize {
    pi.window()
        .iter()
        .filter(|&&v| v < 0)
        .map(|&v| (-v) as usize)
        .sum()
}

/// Coxeter length of `pi` in `B_n` with respect to the generators
/// `s_0, ..., s_{n-1}`:
///
/// `l(pi) = inv(pi) - sum of pi(i) over positions with pi(i) < 0`.
pub fn stat_length(pi: &SignedPermutation) -> usize {
    seq_inv(pi.window()) + negative_value_sum(pi)
}

/// Type-B descent number: descents of the window prefixed by `pi(0) = 0`,
/// i.e. `|{i in [0, n-1] : pi(i) > pi(i+1)}|`.
pub fn stat_des_b(pi: &SignedPermutation) -> usize {
    let w = pi.window();
    let mut count = usize::from(w[0] < 0);
    count += seq_des(w);
    count
}

/// Exhaustive word lengths over the Cayley graph of `B_n` on
/// `s_0, ..., s_{n-1}`, by breadth-first search from the identity.
///
/// Exists to cross-check [`stat_length`]; refuses ranks above
/// [`BFS_MAX_RANK`].
pub fn length_oracle_bfs(n: usize) -> Result<HashMap<SignedPermutation, usize>, StatError> {
    if n == 0 || n > BFS_MAX_RANK {
        return Err(StatError::OracleRankOutOfRange {
            rank: n,
            max: BFS_MAX_RANK,
        });
    }
    let gens: Vec<SignedPermutation> = (0..n)
        .map(|i| generator(n, i).expect("index in range"))
        .collect();
    let expected = group_order(GroupKind::Hyperoctahedral, n).expect("small rank") as usize;
    let mut dist = HashMap::with_capacity(expected);
    let mut queue = VecDeque::new();
    let id = SignedPermutation::identity(n);
    dist.insert(id.clone(), 0usize);
    queue.push_back(id);
    while let Some(current) = queue.pop_front() {
        let d = dist[&current];
        for g in &gens {
            let next = current.compose(g).expect("equal ranks");
            dist.entry(next.clone()).or_insert_with(|| {
                queue.push_back(next);
                d + 1
            });
        }
    }
    debug_assert_eq!(dist.len(), expected, "the generators must reach everything");
    Ok(dist)
}

// --- the negative descent multiset ---

/// The negative descent multiset of an element: the descent set of the
/// window together with one copy of `-pi(i)` for every position `i` with
/// `pi(i) < 0`. Values lie in `1..=n` with multiplicity 1 or 2; the value
/// `n` can only come from a negated entry, so it never reaches
/// multiplicity 2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NDesMultiset {
    counts: BTreeMap<usize, u8>,
}

impl NDesMultiset {
    fn insert(&mut self, value: usize) {
        let slot = self.counts.entry(value).or_insert(0);
        *slot += 1;
        debug_assert!(*slot <= 2, "multiset multiplicity bounded by 2");
    }

    pub fn multiplicity(&self, value: usize) -> usize {
        self.counts.get(&value).copied().unwrap_or(0) as usize
    }

    /// Number of members counted with multiplicity.
    pub fn cardinality(&self) -> usize {
        self.counts.values().map(|&m| m as usize).sum()
    }

    /// Sum of members counted with multiplicity.
    pub fn weighted_sum(&self) -> usize {
        self.counts.iter().map(|(&v, &m)| v * m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `(value, multiplicity)` pairs in ascending value order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&v, &m)| (v, m as usize))
    }
}

impl fmt::Display for NDesMultiset {
    /// Renders as `{2, 3, 4^2, 5^2, 6}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, (value, mult)) in self.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{value}")?;
            if mult > 1 {
                write!(f, "^{mult}")?;
            }
        }
        f.write_str("}")
    }
}

/// The negative descent multiset from its definition: descent positions of
/// the window, plus `-pi(i)` for every negative entry.
pub fn ndes_multiset(pi: &SignedPermutation) -> NDesMultiset {
    let mut out = NDesMultiset::default();
    for i in seq_descent_set(pi.window()) {
        out.insert(i);
    }
    for &v in pi.window() {
        if v < 0 {
            out.insert((-v) as usize);
        }
    }
    out
}

/// The same multiset characterized through the length function:
/// `{i in [n-1] : l(pi s_i) < l(pi)}` together with
/// `{i in [n] : l(pi^{-1} eta_i) < l(pi^{-1})}`, where `eta_i` negates the
/// single point `i`.
///
/// Exists as an independent route for testing [`ndes_multiset`].
pub fn ndes_multiset_coxeter(pi: &SignedPermutation) -> NDesMultiset {
    let n = pi.rank();
    let mut out = NDesMultiset::default();
    let l_pi = stat_length(pi);
    for i in 1..n {
        let s = generator(n, i).expect("index in range");
        if stat_length(&pi.compose(&s).expect("equal ranks")) < l_pi {
            out.insert(i);
        }
    }
    let inv = pi.inverse();
    let l_inv = stat_length(&inv);
    for i in 1..=n {
        let eta = reflection_eta(n, i).expect("index in range");
        if stat_length(&inv.compose(&eta).expect("equal ranks")) < l_inv {
            out.insert(i);
        }
    }
    out
}

/// Cardinality and weighted sum of the negative descent multiset, counted
/// with multiplicity: `ndes` and `nmaj`.
///
/// Walks the two member families of the multiset directly (descent positions,
/// then negated values), so it needs no intermediate storage.
pub fn negative_stats(pi: &SignedPermutation) -> (usize, usize) {
    let w = pi.window();
    let mut count = 0usize;
    let mut sum = 0usize;
    for i in 1..w.len() {
        if w[i - 1] > w[i] {
            count += 1;
            sum += i;
        }
    }
    for &v in w {
        if v < 0 {
            count += 1;
            sum += (-v) as usize;
        }
    }
    (count, sum)
}

// --- flag statistics ---

/// Flag descent number `fdes = 2 des_A + eps_1`, where `eps_1` is 1 exactly
/// when the first window entry is negative.
///
/// Equals `des_A + des_B`, and also the plain descent number of the doubled
/// window `(pi(-n), ..., pi(-1), pi(1), ..., pi(n))`.
pub fn stat_fdes(pi: &SignedPermutation) -> usize {
    2 * seq_des(pi.window()) + usize::from(pi.window()[0] < 0)
}

/// Flag major index `fmaj = 2 maj_A + neg`.
///
/// Equals the exponent sum of the flag factorization
/// `pi = t_{n-1}^{k_{n-1}} ... t_0^{k_0}`.
pub fn stat_fmaj(pi: &SignedPermutation) -> usize {
    let w = pi.window();
    2 * seq_maj(w) + w.iter().filter(|&&v| v < 0).count()
}

// --- the aggregate record ---

/// Every scalar statistic of one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StatRecord {
    pub inv: usize,
    pub des_a: usize,
    pub maj_a: usize,
    pub neg: usize,
    pub length: usize,
    pub des_b: usize,
    pub ndes: usize,
    pub nmaj: usize,
    pub fdes: usize,
    pub fmaj: usize,
}

/// Assembles the whole [`StatRecord`] of an element.
pub fn full_stats(pi: &SignedPermutation) -> StatRecord {
    let classic = classic_stats(pi);
    let (ndes, nmaj) = negative_stats(pi);
    StatRecord {
        inv: classic.inv,
        des_a: classic.des_a,
        maj_a: classic.maj_a,
        neg: classic.neg,
        length: stat_length(pi),
        des_b: stat_des_b(pi),
        ndes,
        nmaj,
        fdes: stat_fdes(pi),
        fmaj: stat_fmaj(pi),
    }
}

/// Names for the fields of [`StatRecord`], used to pick the exponents of a
/// distribution polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatKind {
    Inv,
    DesA,
    MajA,
    Neg,
    Length,
    DesB,
    Ndes,
    Nmaj,
    Fdes,
    Fmaj,
}

impl StatKind {
    pub const ALL: [StatKind; 10] = [
        StatKind::Inv,
        StatKind::DesA,
        StatKind::MajA,
        StatKind::Neg,
        StatKind::Length,
        StatKind::DesB,
        StatKind::Ndes,
        StatKind::Nmaj,
        StatKind::Fdes,
        StatKind::Fmaj,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatKind::Inv => "inv",
            StatKind::DesA => "des_A",
            StatKind::MajA => "maj_A",
            StatKind::Neg => "neg",
            StatKind::Length => "length",
            StatKind::DesB => "des_B",
            StatKind::Ndes => "ndes",
            StatKind::Nmaj => "nmaj",
            StatKind::Fdes => "fdes",
            StatKind::Fmaj => "fmaj",
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        StatKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = StatKind::ALL.iter().map(|k| k.as_str()).collect();
                format!(
                    "unknown statistic '{s}'; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

impl StatRecord {
    pub fn get(&self, kind: StatKind) -> usize {
        match kind {
            StatKind::Inv => self.inv,
            StatKind::DesA => self.des_a,
            StatKind::MajA => self.maj_a,
            StatKind::Neg => self.neg,
            StatKind::Length => self.length,
            StatKind::DesB => self.des_b,
            StatKind::Ndes => self.ndes,
            StatKind::Nmaj => self.nmaj,
            StatKind::Fdes => self.fdes,
            StatKind::Fmaj => self.fmaj,
        }
    }
}

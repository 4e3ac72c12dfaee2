//! Exact combinatorics of signed permutations.
//!
//! The crate works with the hyperoctahedral group `B_n` (signed permutations
//! of `1..=n`) and the symmetric group `S_n` sitting inside it as the
//! negative-free elements. It provides:
//!
//! * [`signed_perm`]: construction, composition, generators, the flag
//!   factorization, the parabolic factorization through increasing windows,
//!   and exhaustive enumeration of either group;
//! * [`statistics`]: descent, inversion, major-index, length, negative-entry
//!   and flag statistics of a single element, plus a breadth-first word-length
//!   oracle for cross-checking;
//! * [`polyring`]: exact polynomials in `q` and `t` with integer coefficients,
//!   `q`-integers, the `delta_t` difference operator, and truncated power
//!   series in `t` over `Z[q]`;
//! * [`identities`]: joint distribution polynomials over a whole group and a
//!   catalog of verifiable identities relating them (recursions, product
//!   formulas, and Carlitz-style series identities).
//!
//! All arithmetic is exact; coefficient overflow is a hard error, never a
//! silent wraparound.

pub mod identities;
pub mod polyring;
pub mod signed_perm;
pub mod statistics;

pub use identities::{distribution, verify, DistributionSpec, ExecOptions, IdentityId, Verdict};
pub use polyring::{q_integer, BiPoly, TruncSeries};
pub use signed_perm::{GroupKind, PermError, SignedPermutation, DEFAULT_RANK_CAP};
pub use statistics::{full_stats, StatKind, StatRecord};

//! Randomized algebraic laws: ring axioms, the difference-operator rules,
//! series inversion, and group axioms on arbitrary elements.

use mahonian::polyring::{delta_t, q_integer, series_mul_poly, series_reciprocal, TruncSeries};
use mahonian::signed_perm::{compose_from_exponents, factor_parabolic, flag_decompose};
use mahonian::{BiPoly, SignedPermutation};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn small_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0usize..5, 0usize..5), -9i64..=9), 0..8)
        .prop_map(|terms| BiPoly::from_terms(terms.into_iter().map(|((t, q), c)| (t, q, c))))
}

/// A random element of `B_n`: a shuffle of `1..=n` keyed by the given
/// draws, with a sign mask applied.
fn signed_perm_of(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (
        prop::collection::vec(any::<u32>(), n),
        prop::collection::vec(any::<bool>(), n),
    )
        .prop_map(|(keys, signs)| {
            let mut order: Vec<usize> = (0..keys.len()).collect();
            order.sort_by_key(|&i| (keys[i], i));
            let window: Vec<i32> = order
                .iter()
                .zip(&signs)
                .map(|(&i, &s)| {
                    let v = (i + 1) as i32;
                    if s {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            SignedPermutation::from_window(&window).unwrap()
        })
}

fn signed_perm() -> impl Strategy<Value = SignedPermutation> {
    (1usize..=8).prop_flat_map(signed_perm_of)
}

fn same_rank_pair() -> impl Strategy<Value = (SignedPermutation, SignedPermutation)> {
    (1usize..=8).prop_flat_map(|n| (signed_perm_of(n), signed_perm_of(n)))
}

fn same_rank_triple(
) -> impl Strategy<Value = (SignedPermutation, SignedPermutation, SignedPermutation)> {
    (1usize..=8).prop_flat_map(|n| (signed_perm_of(n), signed_perm_of(n), signed_perm_of(n)))
}

/// `P(q, qt)`: every `c q^a t^b` becomes `c q^{a+b} t^b`.
fn shift_t_to_qt(p: &BiPoly) -> BiPoly {
    BiPoly::from_terms(p.terms().map(|(dt, dq, c)| (dt, dq + dt, c)))
}

/// Coefficient of `t^b` after setting `q = 1`.
fn row_sums_at_q_one(p: &BiPoly) -> BTreeMap<usize, i64> {
    let mut rows = BTreeMap::new();
    for (dt, _, c) in p.terms() {
        *rows.entry(dt).or_insert(0) += c;
    }
    rows.retain(|_, c| *c != 0);
    rows
}

proptest! {
    #[test]
    fn addition_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&a.neg()), BiPoly::zero());
        prop_assert_eq!(a.sub(&b), a.add(&b.neg()));
        prop_assert_eq!(a.add(&BiPoly::zero()), a);
    }

    #[test]
    fn multiplication_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&BiPoly::one()), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in small_poly(), b in small_poly(), q0 in -3i64..=3, t0 in -3i64..=3) {
        prop_assert_eq!(a.add(&b).evaluate(q0, t0), a.evaluate(q0, t0) + b.evaluate(q0, t0));
        prop_assert_eq!(a.mul(&b).evaluate(q0, t0), a.evaluate(q0, t0) * b.evaluate(q0, t0));
    }

    #[test]
    fn delta_t_is_linear(a in small_poly(), b in small_poly()) {
        prop_assert_eq!(delta_t(&a.add(&b)), delta_t(&a).add(&delta_t(&b)));
    }

    /// `delta_t(AB) = delta_t(A) B + A(q, qt) delta_t(B)`.
    #[test]
    fn delta_t_satisfies_the_twisted_leibniz_rule(a in small_poly(), b in small_poly()) {
        let lhs = delta_t(&a.mul(&b));
        let rhs = delta_t(&a).mul(&b).add(&shift_t_to_qt(&a).mul(&delta_t(&b)));
        prop_assert_eq!(lhs, rhs);
    }

    /// The substitution-and-division route agrees with the term rewrite
    /// `c q^a t^b -> c q^a [b]_q t^{b-1}`.
    #[test]
    fn delta_t_matches_the_monomial_rewrite(a in small_poly()) {
        let mut expected = BiPoly::zero();
        for (dt, dq, c) in a.terms() {
            if dt >= 1 {
                let term = BiPoly::monomial(dt - 1, dq, c).mul(&q_integer(dt));
                expected = expected.add(&term);
            }
        }
        prop_assert_eq!(delta_t(&a), expected);
    }

    /// At `q = 1` the operator degenerates to the derivative in `t`:
    /// the `t^b` row of `delta_t(P)` sums to `(b+1)` times the `t^{b+1}`
    /// row of `P`.
    #[test]
    fn delta_t_at_q_one_is_the_t_derivative(a in small_poly()) {
        let rows = row_sums_at_q_one(&a);
        let mut derivative = BTreeMap::new();
        for (&b, &c) in &rows {
            if b >= 1 {
                let slot: &mut i64 = derivative.entry(b - 1).or_insert(0);
                *slot += (b as i64) * c;
            }
        }
        derivative.retain(|_, c| *c != 0);
        prop_assert_eq!(row_sums_at_q_one(&delta_t(&a)), derivative);
    }

    /// `D * reciprocal(D) = 1` through the truncation order, for any `D`
    /// whose constant-in-`t` row is exactly 1.
    #[test]
    fn series_reciprocal_inverts(
        rows in prop::collection::vec(small_poly(), 1..5),
        order in 0usize..8,
    ) {
        let mut d = BiPoly::one();
        for (i, row) in rows.iter().enumerate() {
            // push each random row to t^{i+1}, keeping the unit constant row
            d = d.add(&row.mul(&BiPoly::monomial(i + 1, 0, 1)));
        }
        let reciprocal = series_reciprocal(&d, order).unwrap();
        let product = series_mul_poly(&reciprocal, &d);
        prop_assert_eq!(product, TruncSeries::one(order));
    }

    #[test]
    fn composition_is_associative((a, b, c) in same_rank_triple()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_laws(a in signed_perm()) {
        let inv = a.inverse();
        let n = a.rank();
        prop_assert_eq!(a.compose(&inv).unwrap(), SignedPermutation::identity(n));
        prop_assert_eq!(inv.compose(&a).unwrap(), SignedPermutation::identity(n));
    }

    #[test]
    fn inverse_of_a_product_swaps_factors((a, b) in same_rank_pair()) {
        let lhs = a.compose(&b).unwrap().inverse();
        let rhs = b.inverse().compose(&a.inverse()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn round_trips_hold_for_arbitrary_elements(a in signed_perm()) {
        prop_assert_eq!(SignedPermutation::from_window(a.window()).unwrap(), a.clone());

        let text = a.to_string();
        prop_assert_eq!(text.parse::<SignedPermutation>().unwrap(), a.clone());

        prop_assert_eq!(compose_from_exponents(&flag_decompose(&a)), a.clone());

        let split = factor_parabolic(&a);
        prop_assert_eq!(split.sigma.compose(&split.u).unwrap(), a);
    }
}

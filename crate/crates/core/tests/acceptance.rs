//! The acceptance scoreboard: one test per shipping criterion, each printing
//! a single `criterion NN: PASS/FAIL` line (visible with `--nocapture`).
//!
//! Criterion 7 is expected to stay red: it demands that the flag-exponent
//! sum equal `2*maj_A + neg` element by element, but the unique
//! factorization's exponent sum tracks the major index taken in the order
//! `-1 < -2 < ... < -n < 1 < ... < n`, which is equidistributed with, yet
//! pointwise different from, the standard-order statistic. The smallest
//! counterexample is `[-1,-2] = t_1^2` (sum 2, formula 4). The suite states
//! the fact rather than papering over it; every distribution-level identity
//! built on `fmaj` (criteria 2-6, 10) is unaffected and passes.

use mahonian::identities::{
    a_poly_recursive, descent_tail_count, insertion_stats, insertion_stats_predicted, verify,
    Verdict,
};
use mahonian::signed_perm::{enumerate_group, flag_decompose};
use mahonian::statistics::{
    classic_stats, length_oracle_bfs, ndes_multiset, ndes_multiset_coxeter, seq_des, stat_des_b,
    stat_fdes, stat_fmaj, stat_length,
};
use mahonian::{
    distribution, full_stats, BiPoly, DistributionSpec, ExecOptions, GroupKind, IdentityId,
    SignedPermutation, StatKind,
};

fn report(number: usize, name: &str, pass: bool, detail: &str) -> bool {
    let verdict = if pass { "PASS" } else { "FAIL" };
    if detail.is_empty() {
        println!("criterion {number:02}: {verdict} - {name}");
    } else {
        println!("criterion {number:02}: {verdict} - {name} ({detail})");
    }
    pass
}

fn serial() -> ExecOptions {
    ExecOptions {
        threads: 1,
        ..ExecOptions::default()
    }
}

fn with_threads(threads: usize) -> ExecOptions {
    ExecOptions {
        threads,
        ..ExecOptions::default()
    }
}

fn dist(group: GroupKind, n: usize, t: Option<StatKind>, q: Option<StatKind>) -> BiPoly {
    distribution(
        &DistributionSpec {
            group,
            n,
            t_stat: t,
            q_stat: q,
        },
        &serial(),
    )
    .unwrap()
}

fn sp(w: &[i32]) -> SignedPermutation {
    SignedPermutation::from_window(w).unwrap()
}

#[test]
fn criterion_01_worked_example_statistics() {
    let pi = sp(&[-3, 1, -6, 2, -4, -5]);
    let record = full_stats(&pi);
    let expected = [
        (record.inv, 9),
        (record.des_a, 3),
        (record.maj_a, 11),
        (record.neg, 4),
        (record.length, 27),
        (record.des_b, 4),
        (record.ndes, 7),
        (record.nmaj, 29),
        (record.fdes, 7),
        (record.fmaj, 26),
    ];
    let fields_ok = expected.iter().all(|&(got, want)| got == want);
    let ndes_ok = ndes_multiset(&pi).to_string() == "{2, 3, 4^2, 5^2, 6}";
    let pass = report(
        1,
        "worked-example statistics for -3,1,-6,2,-4,-5",
        fields_ok && ndes_ok,
        &format!("record {record:?}, NDes {}", ndes_multiset(&pi)),
    );
    assert!(pass);
}

#[test]
fn criterion_02_golden_distribution_polynomials() {
    let a3 = dist(
        GroupKind::Symmetric,
        3,
        Some(StatKind::DesA),
        Some(StatKind::MajA),
    );
    let s1 = dist(
        GroupKind::Hyperoctahedral,
        1,
        Some(StatKind::Fdes),
        Some(StatKind::Fmaj),
    );
    let s2 = dist(
        GroupKind::Hyperoctahedral,
        2,
        Some(StatKind::Fdes),
        Some(StatKind::Fmaj),
    );
    let ok = a3.to_string() == "1 + 2*t*q + 2*t*q^2 + t^2*q^3"
        && s1.to_string() == "1 + t*q"
        && s2.to_string() == "1 + 2*t*q + t*q^2 + t^2*q^2 + 2*t^2*q^3 + t^3*q^4";
    let pass = report(
        2,
        "golden polynomials A_3, S_1, S_2",
        ok,
        &format!("A_3 = {a3}; S_1 = {s1}; S_2 = {s2}"),
    );
    assert!(pass);
}

fn all_pass(
    ids: &[(IdentityId, std::ops::RangeInclusive<usize>)],
    opts: &ExecOptions,
) -> Vec<Verdict> {
    let mut out = Vec::new();
    for (id, range) in ids {
        for n in range.clone() {
            out.push(verify(*id, n, 20, opts).unwrap());
        }
    }
    out
}

fn failures(verdicts: &[Verdict]) -> String {
    let failed: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.pass)
        .map(|v| format!("{} n={}", v.identity.as_str(), v.n))
        .collect();
    if failed.is_empty() {
        "all ranks pass".to_string()
    } else {
        failed.join(", ")
    }
}

#[test]
fn criterion_03_nmaj_length_equidistribution() {
    let verdicts = all_pass(&[(IdentityId::Prop31, 1..=7)], &serial());
    let ok = verdicts.iter().all(|v| v.pass);
    let pass = report(
        3,
        "nmaj/length equidistribution over B_n, n = 1..7",
        ok,
        &failures(&verdicts),
    );
    assert!(pass);
}

/// The n = 8 leg (10.3M elements); minutes, so opt-in:
/// `cargo test --test acceptance -- --ignored`.
#[test]
#[ignore]
fn criterion_03_extended_rank_8() {
    let verdict = verify(IdentityId::Prop31, 8, 20, &ExecOptions::default()).unwrap();
    let pass = report(
        3,
        "nmaj/length equidistribution over B_8 (extended)",
        verdict.pass,
        &failures(&[verdict]),
    );
    assert!(pass);
}

#[test]
fn criterion_04_carlitz_series_identities() {
    let verdicts = all_pass(
        &[
            (IdentityId::Thm23, 1..=6),
            (IdentityId::Thm32, 1..=6),
            (IdentityId::Thm42, 1..=6),
        ],
        &serial(),
    );
    let ok = verdicts.iter().all(|v| v.pass);
    let pass = report(
        4,
        "Carlitz-style series identities through t^20, n = 1..6",
        ok,
        &failures(&verdicts),
    );
    assert!(pass);
}

#[test]
fn criterion_05_recursions_match_enumeration() {
    let verdicts = all_pass(&[(IdentityId::Thm41, 1..=7)], &serial());
    let mut ok = verdicts.iter().all(|v| v.pass);
    let mut detail = failures(&verdicts);
    for n in 1..=7 {
        let enumerated = dist(
            GroupKind::Symmetric,
            n,
            Some(StatKind::DesA),
            Some(StatKind::MajA),
        );
        if a_poly_recursive(n) != enumerated {
            ok = false;
            detail = format!("A_{n} recursion disagrees with enumeration");
            break;
        }
    }
    let pass = report(
        5,
        "recursions equal enumerated distributions, n = 1..7",
        ok,
        &detail,
    );
    assert!(pass);
}

#[test]
fn criterion_06_product_formulas() {
    let verdicts = all_pass(
        &[
            (IdentityId::Thm43, 1..=7),
            (IdentityId::Thm32Product, 1..=7),
            (IdentityId::Cor44, 1..=7),
        ],
        &serial(),
    );
    let ok = verdicts.iter().all(|v| v.pass);
    let pass = report(
        6,
        "product formulas and the ndes/fdes pair equidistribution, n = 1..7",
        ok,
        &failures(&verdicts),
    );
    assert!(pass);
}

#[test]
fn criterion_07_flag_exponent_sum_vs_fmaj() {
    let mut mismatches = 0u64;
    let mut first = None;
    let mut total = 0u64;
    for n in 1..=5 {
        for pi in enumerate_group(GroupKind::Hyperoctahedral, n)
            .unwrap()
            .iter()
        {
            total += 1;
            let sum = flag_decompose(&pi).sum();
            let formula = stat_fmaj(&pi);
            if sum != formula {
                mismatches += 1;
                if first.is_none() {
                    first = Some(format!(
                        "first mismatch {}: exponent sum {sum}, 2*maj_A + neg {formula}",
                        pi
                    ));
                }
            }
        }
    }
    let detail = match &first {
        None => format!("{total} elements agree"),
        Some(msg) => format!(
            "{mismatches} of {total} elements differ; {msg}; the exponent sum follows the \
             major index in the order -1 < -2 < ... < -n < 1 < ... < n, not the standard one"
        ),
    };
    let pass = report(
        7,
        "flag-exponent sum equals 2*maj_A + neg elementwise, n = 1..5",
        mismatches == 0,
        &detail,
    );
    assert!(pass);
}

#[test]
fn criterion_08_oracle_equivalences() {
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=4 {
        let table = length_oracle_bfs(n).unwrap();
        for pi in enumerate_group(GroupKind::Hyperoctahedral, n)
            .unwrap()
            .iter()
        {
            if stat_length(&pi) != table[&pi] {
                ok = false;
                detail = format!("length formula vs BFS disagree at {pi}");
            }
            if ndes_multiset(&pi) != ndes_multiset_coxeter(&pi) {
                ok = false;
                detail = format!("NDes definition vs Coxeter route disagree at {pi}");
            }
        }
    }
    for n in 1..=5 {
        for pi in enumerate_group(GroupKind::Hyperoctahedral, n)
            .unwrap()
            .iter()
        {
            let direct = stat_fdes(&pi);
            if direct != classic_stats(&pi).des_a + stat_des_b(&pi)
                || direct != seq_des(&pi.doubled_window())
            {
                ok = false;
                detail = format!("fdes routes disagree at {pi}");
            }
        }
    }
    let pass = report(
        8,
        "oracle equivalences: length/BFS and NDes/Coxeter (n <= 4), fdes three ways (n <= 5)",
        ok,
        &detail,
    );
    assert!(pass);
}

#[test]
fn criterion_09_insertion_lemmas() {
    let mut ok = true;
    let mut detail = String::new();
    'outer: for n in 2..=5usize {
        for sigma in enumerate_group(GroupKind::Hyperoctahedral, n - 1)
            .unwrap()
            .iter()
        {
            for position in 1..=n {
                for negative in [false, true] {
                    let direct = insertion_stats(&sigma, position, negative).unwrap();
                    let predicted = insertion_stats_predicted(&sigma, position, negative).unwrap();
                    if direct != predicted {
                        ok = false;
                        detail = format!(
                            "insertion at {sigma}, position {position}, negative {negative}: \
                             direct {direct:?} vs closed form {predicted:?}"
                        );
                        break 'outer;
                    }
                }
            }
            let w = sigma.window();
            let des = classic_stats(&sigma).des_a;
            let mut descent_side = BiPoly::zero();
            let mut rise_side = BiPoly::zero();
            for i in 2..=n - 1 {
                let d_i = descent_tail_count(&sigma, i);
                if w[i - 2] > w[i - 1] {
                    descent_side = descent_side.add(&BiPoly::monomial(0, 2 * d_i, 1));
                } else {
                    rise_side = rise_side.add(&BiPoly::monomial(0, 2 * (d_i + i), 1));
                }
            }
            let descent_expected = BiPoly::from_terms((1..=des).map(|k| (0, 2 * (k - 1), 1)));
            let rise_expected =
                BiPoly::from_terms((1..=(n - 2 - des)).map(|k| (0, 2 * (n - k), 1)));
            if descent_side != descent_expected || rise_side != rise_expected {
                ok = false;
                detail = format!("telescoping sums disagree at {sigma}");
                break 'outer;
            }
        }
    }
    let pass = report(
        9,
        "insertion closed forms and telescoping sums, exhaustive through B_4 inserts",
        ok,
        &detail,
    );
    assert!(pass);
}

#[test]
fn criterion_10_determinism_across_thread_counts() {
    fn stable_lines(opts: &ExecOptions) -> String {
        let schedule: [(IdentityId, std::ops::RangeInclusive<usize>); 8] = [
            (IdentityId::Prop31, 1..=7),
            (IdentityId::Thm23, 1..=6),
            (IdentityId::Thm32, 1..=6),
            (IdentityId::Thm42, 1..=6),
            (IdentityId::Thm41, 1..=7),
            (IdentityId::Thm43, 1..=7),
            (IdentityId::Thm32Product, 1..=7),
            (IdentityId::Cor44, 1..=7),
        ];
        let mut out = String::new();
        for (id, range) in schedule {
            for n in range {
                let v = verify(id, n, 20, opts).unwrap();
                let discrepancy = v
                    .first_discrepancy
                    .as_ref()
                    .map_or("none".to_string(), |d| d.to_string());
                out.push_str(&format!(
                    "{} n={} order={:?} pass={} first={}\n",
                    v.identity.as_str(),
                    v.n,
                    v.order,
                    v.pass,
                    discrepancy
                ));
            }
        }
        out
    }

    let single = stable_lines(&with_threads(1));
    let quad = stable_lines(&with_threads(4));
    let max = stable_lines(&ExecOptions::default());
    let ok = single == quad && quad == max;
    let pass = report(
        10,
        "verify suite output identical across thread counts {1, 4, max}",
        ok,
        if ok {
            "byte-identical"
        } else {
            "outputs diverge"
        },
    );
    assert!(pass);
}

//! End-to-end acceptance checks. Each test covers one numbered
//! criterion, prints a single summary line (visible with
//! `cargo test --test acceptance -- --nocapture`), and enforces a
//! wall-clock budget. Run with `--test-threads=1` for faithful timings.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use khecke_core::kpr::{
    class_coproduct, class_product, shifted_shuffle, word_coproduct,
};
use khecke_core::{
    are_neighbors, coproduct_g, direct_sum_shape, dual_lr_coefficient, equivalent,
    equivalent_tableaux, expand_in_g, fillings_inserting_to, for_each_straight_tableau,
    fundamental_l, grothendieck_g, insert_word, is_urt, j_from_insertion, lr_coefficient,
    minimal_tableau, p_tableau, substitute_neg_geometric, superstandard_tableau,
    verify_coproduct_rule, verify_product_rule, weak_j, Composition, DistinctCertificate,
    IncreasingTableau, LRQuery, Letter, Monomial, Partition, RecordingTableau, SkewShape,
    TruncatedPoly, UrtChoice, UrtStatus, Verdict, Word,
};

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn t(rows: &[&[Letter]]) -> IncreasingTableau {
    IncreasingTableau::new_straight(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn mono(pairs: &[(u16, u8)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

fn finish(criterion: u32, details: &str, elapsed: Duration, budget: Duration) {
    println!("criterion {criterion}: PASS — {details} ({elapsed:.2?})");
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its budget: {elapsed:.2?} > {budget:.2?}"
    );
}

/// Insertion of two reference words, each in under a millisecond.
#[test]
fn criterion_01_single_word_insertion() {
    let timed = |s: &str| {
        let word = w(s);
        let mut best = Duration::MAX;
        let mut result = None;
        for _ in 0..3 {
            let start = Instant::now();
            let pair = insert_word(&word);
            best = best.min(start.elapsed());
            result = Some(pair);
        }
        (result.unwrap(), best)
    };

    let ((p, q), first) = timed("15133");
    assert_eq!(p, t(&[&[1, 3], &[5]]));
    let expected_q = RecordingTableau::new(vec![
        vec![BTreeSet::from([1]), BTreeSet::from([2, 5])],
        vec![BTreeSet::from([3, 4])],
    ])
    .unwrap();
    assert_eq!(q, expected_q);

    let ((p, q), second) = timed("13324535");
    assert_eq!(p, t(&[&[1, 2, 3, 5], &[3, 4]]));
    assert_eq!(w("13324535").descent_composition().parts(), &[3, 3, 2]);
    assert_eq!(q.descent_composition(), w("13324535").descent_composition());

    let budget = Duration::from_millis(1);
    assert!(first <= budget, "first insertion took {first:.2?}");
    assert!(second <= budget, "second insertion took {second:.2?}");
    finish(
        1,
        "both reference insertions verified, descent composition (3, 3, 2) transported",
        first + second,
        Duration::from_millis(2),
    );
}

/// Exhaustive roundtrip through the recording tableau for every word of
/// length at most six over four letters.
#[test]
fn criterion_02_exhaustive_roundtrip() {
    let start = Instant::now();
    let mut checked = 0usize;
    for len in 0..=6 {
        for word in Word::all_of_length(len, 4) {
            let (p, q) = insert_word(&word);
            assert_eq!(
                khecke_core::reverse_word(&p, &q).unwrap(),
                word,
                "roundtrip failed for {word}"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 5461);
    finish(
        2,
        "5461 words of length ≤ 6 over {1,…,4} roundtrip exactly",
        start.elapsed(),
        Duration::from_secs(10),
    );
}

/// Equivalence verdicts: a validated chain, an invariant rejection, and
/// a fully resolved tableau class.
#[test]
fn criterion_03_equivalence_verdicts() {
    let start = Instant::now();

    let chain = match equivalent(&w("34124"), &w("3124"), 8).unwrap() {
        Verdict::Equivalent { chain } => chain,
        other => panic!("34124 and 3124 should be equivalent, got {other:?}"),
    };
    assert_eq!(chain.first(), Some(&w("34124")));
    assert_eq!(chain.last(), Some(&w("3124")));
    for step in chain.windows(2) {
        assert!(are_neighbors(&step[0], &step[1]), "invalid chain step");
    }

    match equivalent(&w("13524"), &w("15324"), 8).unwrap() {
        Verdict::Distinct { certificate } => assert_eq!(
            certificate,
            DistinctCertificate::LdsMismatch { left: 2, right: 3 }
        ),
        other => panic!("13524 and 15324 should be distinct, got {other:?}"),
    }

    let class = equivalent_tableaux(&p_tableau(&w("3124")), 8).unwrap();
    assert_eq!(class.tableaux.len(), 2);
    assert!(class.tableaux.contains(&t(&[&[1, 2, 4], &[3]])));
    assert!(class.tableaux.contains(&t(&[&[1, 2, 4], &[3, 4]])));
    assert!(class.unresolved.is_empty());

    finish(
        3,
        "chain validated, lds certificate (2 vs 3) produced, tableau class has exactly 2 members",
        start.elapsed(),
        Duration::from_secs(5),
    );
}

/// Unique rectification targets: both canonical families up to five
/// cells, and a non-example with an explicit witness.
#[test]
fn criterion_04_unique_rectification_targets() {
    let start = Instant::now();
    let mut certified = 0usize;
    for size in 1..=5 {
        for shape in Partition::all_of_size(size) {
            for tableau in [superstandard_tableau(&shape), minimal_tableau(&shape)] {
                match is_urt(&tableau, 12).unwrap() {
                    UrtStatus::Urt { .. } => certified += 1,
                    UrtStatus::NotUrt { witness } => {
                        panic!("{tableau} should be a unique target, found {witness}")
                    }
                }
            }
        }
    }
    assert_eq!(certified, 2 * (1 + 2 + 3 + 5 + 7));

    match is_urt(&p_tableau(&w("3124")), 12).unwrap() {
        UrtStatus::NotUrt { witness } => assert_eq!(witness, t(&[&[1, 2, 4], &[3, 4]])),
        UrtStatus::Urt { .. } => panic!("the insertion tableau of 3124 is not a unique target"),
    }

    finish(
        4,
        "36 canonical tableaux certified at bound 12, non-example rejected with witness",
        start.elapsed(),
        Duration::from_secs(120),
    );
}

/// The class bialgebra on a reference product and coproduct.
#[test]
fn criterion_05_class_product_and_coproduct() {
    let start = Instant::now();

    let expansion = class_product(&w("12"), &w("312"), 10).unwrap();
    assert!(expansion.unresolved.is_empty());
    assert_eq!(expansion.classes.len(), 6);
    let mut sizes: Vec<usize> = expansion.classes.iter().map(|c| c.tableaux.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [1, 1, 1, 1, 2, 3]);
    assert_eq!(sizes.iter().sum::<usize>(), 9);
    let representatives: BTreeSet<&Word> = expansion
        .classes
        .iter()
        .map(|c| &c.representative)
        .collect();
    assert_eq!(representatives.len(), 6, "representatives must be distinct");

    let coproduct = class_coproduct(&w("12"), 10).unwrap();
    assert!(coproduct.unresolved.is_empty());
    assert_eq!(coproduct.terms.len(), 5);

    finish(
        5,
        "product splits into 6 classes over 9 tableaux (3/2/1/1/1/1), coproduct has 5 terms",
        start.elapsed(),
        Duration::from_secs(60),
    );
}

/// Two boundary demonstrations: a shuffle word escaping its factor
/// classes, and coproduct sources that do the same.
#[test]
fn criterion_06_class_boundaries() {
    let start = Instant::now();

    // A shifted-shuffle term of 12 and 1342 and a longer equivalent word
    // insert to the same tableau, yet the longer word's second component
    // flattens to 13422, which leaves the class of 1342.
    let target = t(&[&[1, 2, 6], &[3, 4], &[5]]);
    assert!(shifted_shuffle(&w("12"), &w("1342"))
        .unwrap()
        .contains(&w("315642")));
    assert_eq!(p_tableau(&w("315642")), target);
    assert_eq!(p_tableau(&w("3156442")), target);
    assert_eq!(w("3156442").restrict_interval(1, 2), w("12"));
    assert_eq!(w("3156442").restrict_interval(3, 6).flatten(), w("13422"));
    assert_ne!(p_tableau(&w("13422")), p_tableau(&w("1342")));

    // Exactly four full-support words of length five deconcatenate to
    // 123 ⊗ 11, and none of them inserts to the tableau of 1342 — yet
    // one of them is equivalent to it.
    let mut sources = Vec::new();
    for word in Word::all_of_length(5, 4) {
        if word.support().len() == 4 && word_coproduct(&word).contains(&(w("123"), w("11"))) {
            sources.push(word);
        }
    }
    assert_eq!(
        sources,
        ["12344", "12433", "13422", "23411"].map(w).to_vec()
    );
    let factor = p_tableau(&w("1342"));
    for word in &sources {
        assert_ne!(p_tableau(word), factor, "word {word}");
    }
    assert!(are_neighbors(&w("1342"), &w("13422")));

    finish(
        6,
        "both factor-class escape demonstrations verified",
        start.elapsed(),
        Duration::from_secs(30),
    );
}

/// Reference coefficients of the three polynomial families and the
/// substitution identity over a full window.
#[test]
fn criterion_07_polynomial_families() {
    let start = Instant::now();

    let g = grothendieck_g(&part(&[2, 1]), 4, 4).unwrap();
    assert_eq!(g.coefficient(&mono(&[(1, 2), (2, 1)])), 1);
    assert_eq!(g.coefficient(&mono(&[(1, 1), (2, 1), (3, 1)])), 2);
    assert_eq!(g.coefficient(&mono(&[(1, 2), (2, 2)])), -1);
    // Three fillings carry content (2, 1, 1): {1,2}/{3} and {1,3}/{2}
    // beside a lone 1, plus {1},{1} over {2,3}.
    assert_eq!(g.coefficient(&mono(&[(1, 2), (2, 1), (3, 1)])), -3);
    assert_eq!(g.coefficient(&mono(&[(1, 1), (2, 1), (3, 1), (4, 1)])), -8);

    let j = weak_j(&part(&[2, 1]), 4, 4).unwrap();
    assert_eq!(j.coefficient(&mono(&[(1, 2), (2, 2)])), 3);

    let l = fundamental_l(&Composition::new(vec![1, 3]).unwrap(), 4, 4).unwrap();
    assert_eq!(l.coefficient(&mono(&[(1, 2), (2, 2)])), 0);
    assert_eq!(l.coefficient(&mono(&[(1, 1), (2, 3)])), 1);

    let mut identities = 0usize;
    for size in 0..=4 {
        for shape in Partition::all_of_size(size) {
            assert_eq!(
                substitute_neg_geometric(&shape, 6, 6).unwrap(),
                weak_j(&shape, 6, 6).unwrap(),
                "substitution identity fails for {shape}"
            );
            identities += 1;
        }
    }
    assert_eq!(identities, 12);

    finish(
        7,
        "signed pattern (1, 2, −1, −3, −8), weak coefficient 3, excluded quasisymmetric \
         monomial, 12 substitution identities at window (6, 6)",
        start.elapsed(),
        Duration::from_secs(60),
    );
}

/// Insertion fibre sums recover the weak polynomial for every tableau
/// over four letters with at most five cells.
#[test]
fn criterion_08_insertion_fibres() {
    let start = Instant::now();
    let alphabet: BTreeSet<Letter> = (1..=4).collect();
    let mut by_shape: BTreeMap<Partition, TruncatedPoly> = BTreeMap::new();
    let mut checked = 0usize;
    for_each_straight_tableau(&alphabet, |tableau| {
        if tableau.num_cells() == 0 || tableau.num_cells() > 5 {
            return;
        }
        let expected = by_shape
            .entry(tableau.shape().outer().clone())
            .or_insert_with(|| weak_j(tableau.shape().outer(), 5, 5).unwrap());
        assert_eq!(
            j_from_insertion(tableau, 5, 5).unwrap(),
            *expected,
            "fibre sum of {tableau}"
        );
        checked += 1;
    });
    assert_eq!(checked, 102, "4 + 12 + 22 + 30 + 34 tableaux by cell count");

    finish(
        8,
        &format!("{checked} fibre sums match the weak polynomial of their shape at (5, 5)"),
        start.elapsed(),
        Duration::from_secs(300),
    );
}

/// Reference coefficients of both counting rules, each cross-checked
/// against its polynomial oracle over a full window.
#[test]
fn criterion_09_counting_rules_with_oracles() {
    let start = Instant::now();

    let product = lr_coefficient(&LRQuery {
        lambda: part(&[3, 1]),
        mu: part(&[2, 1]),
        nu: part(&[4, 3, 1]),
        urt_choice: UrtChoice::Superstandard,
    })
    .unwrap();
    assert_eq!(product.count, 3);
    assert_eq!(product.sign, -1);
    assert_eq!(product.witnesses.len(), 3);

    let dual = dual_lr_coefficient(&superstandard_tableau(&part(&[3, 2])), &part(&[2, 1]), &part(&[2, 1]))
        .unwrap();
    assert_eq!(dual.count, 3);
    assert_eq!(dual.sign, -1);
    assert_eq!(dual.witnesses.len(), 3);

    let product_oracle = verify_product_rule(&part(&[3, 1]), &part(&[2, 1]), 8, 8).unwrap();
    assert_eq!(product_oracle.checked, 37);
    assert!(
        product_oracle.agrees(),
        "product mismatches: {:?}",
        product_oracle.mismatches
    );

    let coproduct_oracle = verify_coproduct_rule(&superstandard_tableau(&part(&[3, 2])), 6, 5).unwrap();
    assert_eq!(coproduct_oracle.checked, 361);
    assert!(
        coproduct_oracle.agrees(),
        "coproduct mismatches: {:?}",
        coproduct_oracle.mismatches
    );

    finish(
        9,
        "c = 3 and d = 3 with witnesses; oracles agree on 37 + 361 coefficient slots",
        start.elapsed(),
        Duration::from_secs(600),
    );
}

/// Raw counts against a target that shares its class drift away from
/// the ring coefficients, in both directions.
#[test]
fn criterion_10_non_unique_targets_drift() {
    let start = Instant::now();
    let target = p_tableau(&w("34124"));
    assert!(matches!(
        is_urt(&target, 12).unwrap(),
        UrtStatus::NotUrt { .. }
    ));

    // Product direction: 2 raw fillings, ring coefficient −3 (count 3).
    let shape = SkewShape::new(part(&[4, 3, 2]), part(&[2, 1])).unwrap();
    let raw_product = fillings_inserting_to(&shape, &target).len();
    assert_eq!(raw_product, 2);
    let oracle = grothendieck_g(&part(&[2, 1]), 9, 9)
        .unwrap()
        .mul(&grothendieck_g(&part(&[3, 2]), 9, 9).unwrap())
        .unwrap();
    let coefficient = expand_in_g(&oracle, 9)
        .unwrap()
        .coefficients
        .get(&part(&[4, 3, 2]))
        .copied()
        .unwrap_or(0);
    assert_eq!(coefficient, -3);
    assert_ne!(-(raw_product as i64), coefficient);

    // Coproduct direction: 1 raw two-block filling, ring coefficient 2.
    let blocks = direct_sum_shape(&part(&[2, 1]), &part(&[3, 1]));
    let raw_coproduct = fillings_inserting_to(&blocks, &target).len();
    assert_eq!(raw_coproduct, 1);
    let coproduct = coproduct_g(&part(&[3, 2]), 6, 5).unwrap();
    let pair = coproduct
        .get(&(part(&[2, 1]), part(&[3, 1])))
        .copied()
        .unwrap_or(0);
    assert_eq!(pair, 2);
    assert_ne!(raw_coproduct as i64, pair);

    finish(
        10,
        "raw counts 2 vs 3 (product) and 1 vs 2 (coproduct) demonstrate the drift",
        start.elapsed(),
        Duration::from_secs(120),
    );
}

/// Full sweep of the product rule against the polynomial oracle, run on
/// one thread.
#[test]
fn criterion_11_product_rule_sweep() {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let (pairs, checked) = pool.install(|| {
        let shapes: Vec<Partition> = (0..=3).flat_map(Partition::all_of_size).collect();
        let mut pairs = 0usize;
        let mut checked = 0usize;
        for lambda in &shapes {
            for mu in &shapes {
                let agreement = verify_product_rule(lambda, mu, 8, 8).unwrap();
                assert!(
                    agreement.agrees(),
                    "mismatch for {lambda} × {mu}: {:?}",
                    agreement.mismatches
                );
                pairs += 1;
                checked += agreement.checked;
            }
        }
        (pairs, checked)
    });
    assert_eq!(pairs, 49);

    finish(
        11,
        &format!("49 factor pairs, {checked} coefficient slots, zero mismatches on one thread"),
        start.elapsed(),
        Duration::from_secs(1800),
    );
}

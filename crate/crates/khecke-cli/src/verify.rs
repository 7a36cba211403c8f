//! The `verify --examples` suite: every reference value the engine is
//! expected to reproduce, runnable end to end from the binary. Each
//! check reports one line; the command fails if any check does.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use anyhow::{bail, ensure, Result};
use khecke_core::kpr::{class_coproduct, class_product, shifted_shuffle, word_coproduct};
use khecke_core::{
    are_neighbors, coproduct_g, direct_sum_shape, dual_lr_coefficient, equivalent,
    equivalent_tableaux, expand_in_g, fillings_inserting_to, for_each_straight_tableau,
    fundamental_l, grothendieck_g, insert_word, is_urt, j_from_insertion, lr_coefficient,
    minimal_tableau, p_tableau, reverse_word, substitute_neg_geometric, superstandard_tableau,
    verify_coproduct_rule, verify_product_rule, weak_j, Composition, DistinctCertificate,
    IncreasingTableau, LRQuery, Letter, Monomial, Partition, RecordingTableau, SkewShape,
    TruncatedPoly, UrtChoice, UrtStatus, Verdict, Word,
};
use serde::Serialize;

pub struct Check {
    pub name: &'static str,
    pub run: fn() -> Result<String>,
}

#[derive(Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { name: "insertion-reference-words", run: insertion_reference_words },
        Check { name: "roundtrip-exhaustive", run: roundtrip_exhaustive },
        Check { name: "equivalence-verdicts", run: equivalence_verdicts },
        Check { name: "unique-rectification-targets", run: unique_rectification_targets },
        Check { name: "class-product-coproduct", run: class_product_coproduct },
        Check { name: "class-boundaries", run: class_boundaries },
        Check { name: "polynomial-families", run: polynomial_families },
        Check { name: "insertion-fibres", run: insertion_fibres },
        Check { name: "counting-rules-oracles", run: counting_rules_oracles },
        Check { name: "non-unique-target-drift", run: non_unique_target_drift },
        Check { name: "product-rule-sweep", run: product_rule_sweep },
    ]
}

/// Runs every check, streaming progress to standard error.
pub fn run_all() -> Vec<CheckOutcome> {
    let list = checks();
    let total = list.len();
    let mut outcomes = Vec::with_capacity(total);
    for (i, check) in list.into_iter().enumerate() {
        eprintln!("[{}/{total}] {} …", i + 1, check.name);
        let start = Instant::now();
        let result = (check.run)();
        let seconds = start.elapsed().as_secs_f64();
        let (passed, detail) = match result {
            Ok(detail) => (true, detail),
            Err(e) => (false, e.to_string()),
        };
        outcomes.push(CheckOutcome {
            name: check.name,
            passed,
            detail,
            seconds,
        });
    }
    outcomes
}

fn w(s: &str) -> Word {
    s.parse().expect("reference words are valid")
}

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("reference partitions are valid")
}

fn t(rows: &[&[Letter]]) -> IncreasingTableau {
    IncreasingTableau::new_straight(rows.iter().map(|r| r.to_vec()).collect())
        .expect("reference tableaux are valid")
}

fn mono(pairs: &[(u16, u8)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

fn insertion_reference_words() -> Result<String> {
    let (p, q) = insert_word(&w("15133"));
    ensure!(p == t(&[&[1, 3], &[5]]), "insertion tableau of 15133 is {p}");
    let expected = RecordingTableau::new(vec![
        vec![BTreeSet::from([1]), BTreeSet::from([2, 5])],
        vec![BTreeSet::from([3, 4])],
    ])?;
    ensure!(q == expected, "recording tableau of 15133 is {q}");
    let (p, q) = insert_word(&w("13324535"));
    ensure!(p == t(&[&[1, 2, 3, 5], &[3, 4]]), "insertion tableau is {p}");
    let composition = w("13324535").descent_composition();
    ensure!(composition.parts() == [3, 3, 2], "descents give {composition}");
    ensure!(
        q.descent_composition() == composition,
        "recording tableau fails to transport descents"
    );
    Ok("both reference words insert and transport descents".into())
}

fn roundtrip_exhaustive() -> Result<String> {
    let mut checked = 0usize;
    for len in 0..=6 {
        for word in Word::all_of_length(len, 4) {
            let (p, q) = insert_word(&word);
            ensure!(reverse_word(&p, &q)? == word, "roundtrip failed for {word}");
            checked += 1;
        }
    }
    ensure!(checked == 5461, "expected 5461 words, saw {checked}");
    Ok(format!("{checked} words of length ≤ 6 over 4 letters roundtrip"))
}

fn equivalence_verdicts() -> Result<String> {
    match equivalent(&w("34124"), &w("3124"), 8)? {
        Verdict::Equivalent { chain } => {
            for step in chain.windows(2) {
                ensure!(are_neighbors(&step[0], &step[1]), "broken chain");
            }
        }
        other => bail!("34124 ≡ 3124 expected, got {other:?}"),
    }
    match equivalent(&w("13524"), &w("15324"), 8)? {
        Verdict::Distinct { certificate } => ensure!(
            certificate == DistinctCertificate::LdsMismatch { left: 2, right: 3 },
            "unexpected certificate {certificate:?}"
        ),
        other => bail!("distinct verdict expected, got {other:?}"),
    }
    let class = equivalent_tableaux(&p_tableau(&w("3124")), 8)?;
    ensure!(class.tableaux.len() == 2, "class size {}", class.tableaux.len());
    Ok("chain validated, lds certificate produced, class of 3124 has 2 tableaux".into())
}

fn unique_rectification_targets() -> Result<String> {
    let mut certified = 0usize;
    for size in 1..=5 {
        for shape in Partition::all_of_size(size) {
            for tableau in [superstandard_tableau(&shape), minimal_tableau(&shape)] {
                match is_urt(&tableau, 12)? {
                    UrtStatus::Urt { .. } => certified += 1,
                    UrtStatus::NotUrt { witness } => {
                        bail!("{tableau} rejected with witness {witness}")
                    }
                }
            }
        }
    }
    ensure!(certified == 36, "certified {certified} of 36");
    match is_urt(&p_tableau(&w("3124")), 12)? {
        UrtStatus::NotUrt { witness } => ensure!(
            witness == t(&[&[1, 2, 4], &[3, 4]]),
            "unexpected witness {witness}"
        ),
        UrtStatus::Urt { .. } => bail!("the tableau of 3124 must be rejected"),
    }
    Ok("36 canonical targets certified at bound 12, non-example rejected".into())
}

fn class_product_coproduct() -> Result<String> {
    let expansion = class_product(&w("12"), &w("312"), 10)?;
    ensure!(expansion.unresolved.is_empty(), "unresolved tableaux remain");
    ensure!(expansion.classes.len() == 6, "{} classes", expansion.classes.len());
    let mut sizes: Vec<usize> = expansion.classes.iter().map(|c| c.tableaux.len()).collect();
    sizes.sort_unstable();
    ensure!(sizes == [1, 1, 1, 1, 2, 3], "class sizes {sizes:?}");
    let coproduct = class_coproduct(&w("12"), 10)?;
    ensure!(coproduct.terms.len() == 5, "{} terms", coproduct.terms.len());
    Ok("product has 6 classes over 9 tableaux, coproduct has 5 terms".into())
}

fn class_boundaries() -> Result<String> {
    let target = t(&[&[1, 2, 6], &[3, 4], &[5]]);
    ensure!(
        shifted_shuffle(&w("12"), &w("1342"))?.contains(&w("315642")),
        "shuffle misses 315642"
    );
    ensure!(p_tableau(&w("315642")) == target, "315642 inserts elsewhere");
    ensure!(p_tableau(&w("3156442")) == target, "3156442 inserts elsewhere");
    ensure!(
        p_tableau(&w("13422")) != p_tableau(&w("1342")),
        "the second component must escape its factor class"
    );

    let mut sources = Vec::new();
    for word in Word::all_of_length(5, 4) {
        if word.support().len() == 4 && word_coproduct(&word).contains(&(w("123"), w("11"))) {
            sources.push(word);
        }
    }
    let expected: Vec<Word> = ["12344", "12433", "13422", "23411"].iter().map(|s| w(s)).collect();
    ensure!(sources == expected, "sources {sources:?}");
    let factor = p_tableau(&w("1342"));
    for word in &sources {
        ensure!(p_tableau(word) != factor, "{word} inserts to the factor tableau");
    }
    ensure!(are_neighbors(&w("1342"), &w("13422")), "13422 must stay equivalent");
    Ok("both factor-class escape demonstrations hold".into())
}

fn polynomial_families() -> Result<String> {
    let g = grothendieck_g(&part(&[2, 1]), 4, 4)?;
    let pins: [(&[(u16, u8)], i64); 5] = [
        (&[(1, 2), (2, 1)], 1),
        (&[(1, 1), (2, 1), (3, 1)], 2),
        (&[(1, 2), (2, 2)], -1),
        (&[(1, 2), (2, 1), (3, 1)], -3),
        (&[(1, 1), (2, 1), (3, 1), (4, 1)], -8),
    ];
    for (pairs, expected) in pins {
        let found = g.coefficient(&mono(pairs));
        ensure!(found == expected, "coefficient {found} ≠ {expected}");
    }
    let j = weak_j(&part(&[2, 1]), 4, 4)?;
    ensure!(j.coefficient(&mono(&[(1, 2), (2, 2)])) == 3, "weak coefficient");
    let l = fundamental_l(&Composition::new(vec![1, 3])?, 4, 4)?;
    ensure!(l.coefficient(&mono(&[(1, 2), (2, 2)])) == 0, "excluded monomial");
    for size in 0..=4 {
        for shape in Partition::all_of_size(size) {
            ensure!(
                substitute_neg_geometric(&shape, 6, 6)? == weak_j(&shape, 6, 6)?,
                "substitution identity fails for {shape}"
            );
        }
    }
    Ok("reference coefficients and 12 substitution identities verified".into())
}

fn insertion_fibres() -> Result<String> {
    let alphabet: BTreeSet<Letter> = (1..=4).collect();
    let mut by_shape: BTreeMap<Partition, TruncatedPoly> = BTreeMap::new();
    let mut checked = 0usize;
    let mut failure = None;
    for_each_straight_tableau(&alphabet, |tableau| {
        if failure.is_some() || tableau.num_cells() == 0 || tableau.num_cells() > 5 {
            return;
        }
        let expected = by_shape
            .entry(tableau.shape().outer().clone())
            .or_insert_with(|| {
                weak_j(tableau.shape().outer(), 5, 5).expect("window covers the shape")
            });
        match j_from_insertion(tableau, 5, 5) {
            Ok(fibre) if fibre == *expected => checked += 1,
            Ok(_) => failure = Some(format!("fibre sum of {tableau} differs")),
            Err(e) => failure = Some(e.to_string()),
        }
    });
    if let Some(message) = failure {
        bail!(message);
    }
    ensure!(checked == 102, "checked {checked} of 102 tableaux");
    Ok("102 fibre sums equal the weak polynomial of their shape".into())
}

fn counting_rules_oracles() -> Result<String> {
    let product = lr_coefficient(&LRQuery {
        lambda: part(&[3, 1]),
        mu: part(&[2, 1]),
        nu: part(&[4, 3, 1]),
        urt_choice: UrtChoice::Superstandard,
    })?;
    ensure!(product.count == 3 && product.sign == -1, "product coefficient");
    let dual = dual_lr_coefficient(
        &superstandard_tableau(&part(&[3, 2])),
        &part(&[2, 1]),
        &part(&[2, 1]),
    )?;
    ensure!(dual.count == 3 && dual.sign == -1, "dual coefficient");

    let oracle = verify_product_rule(&part(&[3, 1]), &part(&[2, 1]), 8, 8)?;
    ensure!(oracle.agrees(), "product oracle mismatches: {:?}", oracle.mismatches);
    let oracle = verify_coproduct_rule(&superstandard_tableau(&part(&[3, 2])), 6, 5)?;
    ensure!(oracle.agrees(), "coproduct oracle mismatches: {:?}", oracle.mismatches);
    Ok("both reference coefficients equal 3 and both oracles agree".into())
}

fn non_unique_target_drift() -> Result<String> {
    let target = p_tableau(&w("34124"));
    let shape = SkewShape::new(part(&[4, 3, 2]), part(&[2, 1]))?;
    let raw = fillings_inserting_to(&shape, &target).len();
    ensure!(raw == 2, "raw product count {raw}");
    let oracle = grothendieck_g(&part(&[2, 1]), 9, 9)?
        .mul(&grothendieck_g(&part(&[3, 2]), 9, 9)?)?;
    let coefficient = expand_in_g(&oracle, 9)?
        .coefficients
        .get(&part(&[4, 3, 2]))
        .copied()
        .unwrap_or(0);
    ensure!(coefficient == -3, "oracle coefficient {coefficient}");

    let blocks = direct_sum_shape(&part(&[2, 1]), &part(&[3, 1]));
    let raw = fillings_inserting_to(&blocks, &target).len();
    ensure!(raw == 1, "raw coproduct count {raw}");
    let pair = coproduct_g(&part(&[3, 2]), 6, 5)?
        .get(&(part(&[2, 1]), part(&[3, 1])))
        .copied()
        .unwrap_or(0);
    ensure!(pair == 2, "oracle coefficient {pair}");
    Ok("raw counts 2 vs 3 and 1 vs 2 drift from the ring coefficients".into())
}

fn product_rule_sweep() -> Result<String> {
    let shapes: Vec<Partition> = (0..=3).flat_map(Partition::all_of_size).collect();
    let mut checked = 0usize;
    for lambda in &shapes {
        for mu in &shapes {
            let agreement = verify_product_rule(lambda, mu, 8, 8)?;
            ensure!(
                agreement.agrees(),
                "mismatch for {lambda} × {mu}: {:?}",
                agreement.mismatches
            );
            checked += agreement.checked;
        }
    }
    Ok(format!("49 factor pairs, {checked} coefficient slots, zero mismatches"))
}

//! Both K-theoretic Littlewood–Richardson counting rules, guarded by
//! unique-rectification-target certification and cross-checked against
//! truncated polynomial arithmetic.
//!
//! The product rule counts increasing fillings of a skew shape `ν/λ`
//! whose reading words insert to a fixed target tableau of shape `μ`;
//! the coproduct rule counts fillings of the two-block shape `λ ⊕ μ`
//! inserting to a fixed target of shape `ν`. Either count equals a ring
//! structure constant only when the target is the *unique* increasing
//! tableau in its equivalence class, so the public entry points certify
//! uniqueness first. The raw enumerator stays available to demonstrate
//! how the counts drift for targets that fail the certificate.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::genfun::{coproduct_g, expand_in_g, grothendieck_g, GenFunError};
use crate::insertion::p_tableau;
use crate::kknuth::{is_urt, KKnuthError, UrtStatus};
use crate::poly::PolyError;
use crate::shape::{direct_sum_shape, Partition, SkewShape};
use crate::tableau::{
    for_each_increasing_filling, minimal_tableau, superstandard_tableau, IncreasingTableau,
};

/// Corridor length used to certify that a target tableau is alone in
/// its equivalence class before counting against it. Every increasing
/// tableau over the support of a word of length `ℓ ≤ 12` that could
/// share the class has a reading word inside this corridor for the
/// shapes handled here; the certificate errs toward rejection when the
/// class outgrows the corridor.
pub const URT_CERTIFICATION_BOUND: usize = 12;

#[derive(Debug, Error)]
pub enum LRError {
    /// Counting fillings against a tableau that shares its equivalence
    /// class with a second tableau does not compute structure constants.
    #[error(
        "target is not the unique tableau in its equivalence class: the class also contains the insertion tableau of {}",
        .witness.reading_word()
    )]
    NotUniqueTarget { witness: IncreasingTableau },
    /// An explicitly supplied target must match the queried shape.
    #[error("target tableau has shape {found}, expected {expected}")]
    TargetShapeMismatch {
        expected: Partition,
        found: Partition,
    },
    /// Targets are straight-shape tableaux.
    #[error("target tableau must have straight shape")]
    SkewTarget,
    /// The polynomial window stops below the degree being verified.
    #[error("degree window {got} cannot certify coefficients of degree {needed}")]
    WindowInsufficient { needed: usize, got: usize },
    #[error(transparent)]
    GenFun(#[from] GenFunError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exploration(#[from] KKnuthError),
}

/// How to pick the rectification target of a given shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UrtChoice {
    /// Rows filled left to right with consecutive letters, row after row.
    Superstandard,
    /// Entry `i + j − 1` in cell `(i, j)`: the smallest increasing filling.
    Minimal,
    /// A caller-supplied tableau, certified like the built-in choices.
    Explicit(IncreasingTableau),
}

/// A single structure-constant query: the coefficient of the shape `ν`
/// in the product attached to `λ` and `μ`.
#[derive(Debug, Clone)]
pub struct LRQuery {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub urt_choice: UrtChoice,
}

/// The outcome of a counting query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LRReport {
    /// Number of skew fillings found; equals `witnesses.len()`.
    pub count: usize,
    /// `(−1)^{|ν|−|λ|−|μ|}`: the ring coefficient is `sign × count`.
    pub sign: i64,
    /// The fillings, in enumeration order (cells row-major, entries
    /// ascending), so repeated runs diff cleanly.
    pub witnesses: Vec<IncreasingTableau>,
    /// Set when a polynomial cross-check was run for this query.
    pub oracle_agreement: Option<bool>,
}

fn coefficient_sign(nu_size: usize, factor_sizes: usize) -> i64 {
    if nu_size.abs_diff(factor_sizes) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Certifies that `t` is the only tableau in its equivalence class, up
/// to the documented corridor.
fn certify_urt(t: &IncreasingTableau) -> Result<(), LRError> {
    // The corridor must at least admit the tableau's own reading word.
    let bound = URT_CERTIFICATION_BOUND.max(t.num_cells());
    match is_urt(t, bound)? {
        UrtStatus::Urt { .. } => Ok(()),
        UrtStatus::NotUrt { witness } => Err(LRError::NotUniqueTarget { witness }),
    }
}

fn resolve_target(mu: &Partition, choice: &UrtChoice) -> Result<IncreasingTableau, LRError> {
    let target = match choice {
        UrtChoice::Superstandard => superstandard_tableau(mu),
        UrtChoice::Minimal => minimal_tableau(mu),
        UrtChoice::Explicit(t) => {
            if !t.is_straight() {
                return Err(LRError::SkewTarget);
            }
            if t.shape().outer() != mu {
                return Err(LRError::TargetShapeMismatch {
                    expected: mu.clone(),
                    found: t.shape().outer().clone(),
                });
            }
            t.clone()
        }
    };
    certify_urt(&target)?;
    Ok(target)
}

/// Enumerates the increasing fillings of `shape` whose row reading
/// words insert to `target`, with no uniqueness guard. Insertion
/// preserves the support of a word, so fillings over the interval up to
/// the target's largest letter are exhaustive: any filling using other
/// letters inserts to a tableau with a different support.
pub fn fillings_inserting_to(
    shape: &SkewShape,
    target: &IncreasingTableau,
) -> Vec<IncreasingTableau> {
    // An insertion tableau never has more cells than its word has letters.
    if shape.size() < target.num_cells() {
        return Vec::new();
    }
    let max_letter = target.support().last().copied().unwrap_or(0);
    let mut hits = Vec::new();
    for_each_increasing_filling(shape, max_letter, |filling| {
        if p_tableau(&filling.reading_word()) == *target {
            hits.push(filling.clone());
        }
    });
    hits
}

/// The coefficient of `ν` in the product attached to `λ` and `μ`: the
/// number of increasing fillings of `ν/λ` inserting to the chosen
/// target of shape `μ`, together with its sign.
pub fn lr_coefficient(q: &LRQuery) -> Result<LRReport, LRError> {
    let target = resolve_target(&q.mu, &q.urt_choice)?;
    let sign = coefficient_sign(q.nu.size(), q.lambda.size() + q.mu.size());
    let witnesses = if q.nu.contains(&q.lambda) {
        let shape = SkewShape::new(q.nu.clone(), q.lambda.clone())
            .expect("containment was checked, so the skew shape is well formed");
        fillings_inserting_to(&shape, &target)
    } else {
        Vec::new()
    };
    Ok(LRReport {
        count: witnesses.len(),
        sign,
        witnesses,
        oracle_agreement: None,
    })
}

/// The coefficient of the pair `(λ, μ)` in the coproduct attached to
/// the shape of `target`: the number of increasing fillings of the
/// two-block shape `λ ⊕ μ` inserting to `target`.
pub fn dual_lr_coefficient(
    target: &IncreasingTableau,
    lambda: &Partition,
    mu: &Partition,
) -> Result<LRReport, LRError> {
    if !target.is_straight() {
        return Err(LRError::SkewTarget);
    }
    certify_urt(target)?;
    let shape = direct_sum_shape(lambda, mu);
    let witnesses = fillings_inserting_to(&shape, target);
    Ok(LRReport {
        count: witnesses.len(),
        sign: coefficient_sign(target.num_cells(), lambda.size() + mu.size()),
        witnesses,
        oracle_agreement: None,
    })
}

/// Every nonzero coefficient of the product attached to `λ` and `μ`
/// with `|ν| ≤ |λ| + |μ| + max_extra`, using the superstandard target.
/// The table is finite: rows and columns of `ν/λ` carry distinct
/// letters from the target's alphabet, so `ν` stays inside a bounded
/// rectangle around `λ`. Candidate shapes are counted in parallel.
pub fn lr_table(
    lambda: &Partition,
    mu: &Partition,
    max_extra: usize,
) -> Result<BTreeMap<Partition, LRReport>, LRError> {
    let target = resolve_target(mu, &UrtChoice::Superstandard)?;
    let max_letter = u32::from(target.support().last().copied().unwrap_or(0));
    let base = lambda.size() + mu.size();
    let mut candidates = Vec::new();
    for size in base..=base + max_extra {
        for nu in Partition::all_of_size(size) {
            if nu.contains(lambda)
                && nu.row(1) <= lambda.row(1) + max_letter
                && nu.len() <= lambda.len() + max_letter as usize
            {
                candidates.push(nu);
            }
        }
    }
    let reports: Vec<(Partition, LRReport)> = candidates
        .into_par_iter()
        .map(|nu| {
            let shape = SkewShape::new(nu.clone(), lambda.clone())
                .expect("candidates contain the inner shape");
            let witnesses = fillings_inserting_to(&shape, &target);
            let report = LRReport {
                count: witnesses.len(),
                sign: coefficient_sign(nu.size(), base),
                witnesses,
                oracle_agreement: None,
            };
            (nu, report)
        })
        .collect();
    Ok(reports
        .into_iter()
        .filter(|(_, report)| report.count > 0)
        .collect())
}

/// Result of comparing a counting rule against the polynomial oracle
/// over a full truncation window.
#[derive(Debug, Clone, Serialize)]
pub struct Agreement<K> {
    /// Number of coefficient slots compared.
    pub checked: usize,
    /// Slots where `sign × count` and the oracle coefficient differ.
    pub mismatches: Vec<Mismatch<K>>,
}

impl<K> Agreement<K> {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// One disagreeing coefficient slot.
#[derive(Debug, Clone, Serialize)]
pub struct Mismatch<K> {
    pub key: K,
    /// `sign × count` from the counting rule.
    pub rule_value: i64,
    pub oracle_value: i64,
}

/// Compares the product counting rule against the expansion of the
/// product of the two generating functions, for every shape of degree
/// up to `max_degree` in `num_vars ≥ max_degree` variables.
pub fn verify_product_rule(
    lambda: &Partition,
    mu: &Partition,
    num_vars: usize,
    max_degree: usize,
) -> Result<Agreement<Partition>, LRError> {
    let base = lambda.size() + mu.size();
    if max_degree < base {
        return Err(LRError::WindowInsufficient {
            needed: base,
            got: max_degree,
        });
    }
    let target = resolve_target(mu, &UrtChoice::Superstandard)?;
    let product = grothendieck_g(lambda, num_vars, max_degree)?
        .mul(&grothendieck_g(mu, num_vars, max_degree)?)?;
    let expansion = expand_in_g(&product, max_degree)?;
    debug_assert!(
        expansion.residual.is_zero(),
        "a product of basis elements expands exactly inside its window"
    );
    let candidates: Vec<Partition> = (base..=max_degree)
        .flat_map(Partition::all_of_size)
        .collect();
    let comparisons: Vec<(Partition, i64, i64)> = candidates
        .into_par_iter()
        .map(|nu| {
            let count = if nu.contains(lambda) {
                let shape = SkewShape::new(nu.clone(), lambda.clone())
                    .expect("containment was checked");
                fillings_inserting_to(&shape, &target).len()
            } else {
                0
            };
            let rule_value = coefficient_sign(nu.size(), base) * count as i64;
            let oracle_value = expansion.coefficients.get(&nu).copied().unwrap_or(0);
            (nu, rule_value, oracle_value)
        })
        .collect();
    let checked = comparisons.len();
    let mismatches = comparisons
        .into_iter()
        .filter(|(_, rule, oracle)| rule != oracle)
        .map(|(nu, rule_value, oracle_value)| Mismatch {
            key: nu,
            rule_value,
            oracle_value,
        })
        .collect();
    Ok(Agreement {
        checked,
        mismatches,
    })
}

/// Partitions contained in an `m × m` square, of size at most `cap`.
fn boxed_partitions(m: u32, cap: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut parts: Vec<u32> = Vec::new();
    fn extend(parts: &mut Vec<u32>, m: u32, cap: usize, out: &mut Vec<Partition>) {
        out.push(Partition::new(parts.clone()).expect("parts are positive and sorted"));
        let bound = parts.last().copied().unwrap_or(m);
        if parts.len() == m as usize {
            return;
        }
        let used: usize = parts.iter().map(|&p| p as usize).sum();
        for next in 1..=bound {
            if used + next as usize > cap {
                break;
            }
            parts.push(next);
            extend(parts, m, cap, out);
            parts.pop();
        }
    }
    extend(&mut parts, m, cap, &mut out);
    out
}

/// Compares the coproduct counting rule for `target` against the
/// coproduct of its shape's generating function. Pairs run over shapes
/// inside the square of the target's alphabet (larger shapes admit no
/// increasing filling over that alphabet) capped at `max_degree` per
/// factor, plus anything else the oracle reports.
pub fn verify_coproduct_rule(
    target: &IncreasingTableau,
    num_vars: usize,
    max_degree: usize,
) -> Result<Agreement<(Partition, Partition)>, LRError> {
    if !target.is_straight() {
        return Err(LRError::SkewTarget);
    }
    certify_urt(target)?;
    let nu = target.shape().outer().clone();
    if max_degree < nu.size() {
        return Err(LRError::WindowInsufficient {
            needed: nu.size(),
            got: max_degree,
        });
    }
    let oracle = coproduct_g(&nu, num_vars, max_degree)?;
    let m = u32::from(target.support().last().copied().unwrap_or(0));
    let shapes = boxed_partitions(m, max_degree);
    let mut keys: Vec<(Partition, Partition)> = Vec::new();
    for left in &shapes {
        for right in &shapes {
            keys.push((left.clone(), right.clone()));
        }
    }
    for key in oracle.keys() {
        if !keys.contains(key) {
            keys.push(key.clone());
        }
    }
    let nu_size = nu.size();
    let comparisons: Vec<((Partition, Partition), i64, i64)> = keys
        .into_par_iter()
        .map(|(left, right)| {
            let shape = direct_sum_shape(&left, &right);
            let count = fillings_inserting_to(&shape, target).len();
            let rule_value =
                coefficient_sign(nu_size, left.size() + right.size()) * count as i64;
            let oracle_value = oracle.get(&(left.clone(), right.clone())).copied().unwrap_or(0);
            ((left, right), rule_value, oracle_value)
        })
        .collect();
    let checked = comparisons.len();
    let mismatches = comparisons
        .into_iter()
        .filter(|(_, rule, oracle)| rule != oracle)
        .map(|(key, rule_value, oracle_value)| Mismatch {
            key,
            rule_value,
            oracle_value,
        })
        .collect();
    Ok(Agreement {
        checked,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;
    use std::collections::BTreeSet;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn t(rows: &[&[Letter]]) -> IncreasingTableau {
        IncreasingTableau::new_straight(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn skew(inner: &[u32], rows: &[&[Letter]]) -> IncreasingTableau {
        IncreasingTableau::new_skew(part(inner), rows.iter().map(|r| r.to_vec()).collect())
            .unwrap()
    }

    #[test]
    fn product_rule_counts_three_fillings_for_a_hook_pair() {
        let q = LRQuery {
            lambda: part(&[3, 1]),
            mu: part(&[2, 1]),
            nu: part(&[4, 3, 1]),
            urt_choice: UrtChoice::Superstandard,
        };
        let report = lr_coefficient(&q).unwrap();
        assert_eq!(report.count, 3);
        assert_eq!(report.sign, -1);
        assert_eq!(report.witnesses.len(), 3);
        let distinct: BTreeSet<_> = report.witnesses.iter().collect();
        assert_eq!(distinct.len(), 3);
        let target = superstandard_tableau(&part(&[2, 1]));
        for witness in &report.witnesses {
            assert_eq!(witness.shape().outer(), &part(&[4, 3, 1]));
            assert_eq!(witness.shape().inner(), &part(&[3, 1]));
            assert_eq!(p_tableau(&witness.reading_word()), target);
        }

        // The count does not depend on which certified target is used.
        let minimal = lr_coefficient(&LRQuery {
            urt_choice: UrtChoice::Minimal,
            ..q.clone()
        })
        .unwrap();
        assert_eq!(minimal.count, 3);
        let explicit = lr_coefficient(&LRQuery {
            urt_choice: UrtChoice::Explicit(t(&[&[1, 2], &[3]])),
            ..q
        })
        .unwrap();
        assert_eq!(explicit.count, 3);
    }

    #[test]
    fn empty_factors_reduce_to_the_identity() {
        let empty_mu = lr_coefficient(&LRQuery {
            lambda: part(&[2, 1]),
            mu: Partition::empty(),
            nu: part(&[2, 1]),
            urt_choice: UrtChoice::Superstandard,
        })
        .unwrap();
        assert_eq!(empty_mu.count, 1);
        assert_eq!(empty_mu.sign, 1);

        let bigger_nu = lr_coefficient(&LRQuery {
            lambda: part(&[2, 1]),
            mu: Partition::empty(),
            nu: part(&[3, 1]),
            urt_choice: UrtChoice::Superstandard,
        })
        .unwrap();
        assert_eq!(bigger_nu.count, 0);

        let empty_lambda = lr_coefficient(&LRQuery {
            lambda: Partition::empty(),
            mu: part(&[2, 1]),
            nu: part(&[2, 1]),
            urt_choice: UrtChoice::Superstandard,
        })
        .unwrap();
        assert_eq!(empty_lambda.count, 1);

        // ν that fails to contain λ has coefficient zero.
        let not_contained = lr_coefficient(&LRQuery {
            lambda: part(&[2, 1]),
            mu: part(&[1]),
            nu: part(&[4]),
            urt_choice: UrtChoice::Superstandard,
        })
        .unwrap();
        assert_eq!(not_contained.count, 0);
    }

    #[test]
    fn dual_rule_counts_three_block_fillings() {
        let target = t(&[&[1, 2, 3], &[4, 5]]);
        assert_eq!(target.reading_word().to_string(), "45123");
        let report = dual_lr_coefficient(&target, &part(&[2, 1]), &part(&[2, 1])).unwrap();
        assert_eq!(report.count, 3);
        assert_eq!(report.sign, -1);
        let expected: BTreeSet<IncreasingTableau> = [
            skew(&[2, 2], &[&[2, 3], &[5], &[1, 2], &[4]]),
            skew(&[2, 2], &[&[2, 3], &[5], &[1, 4], &[4]]),
            skew(&[2, 2], &[&[2, 3], &[5], &[1, 5], &[4]]),
        ]
        .into_iter()
        .collect();
        let found: BTreeSet<IncreasingTableau> = report.witnesses.into_iter().collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn dual_rule_with_an_empty_block_counts_straight_fillings() {
        let target = t(&[&[1, 2], &[3]]);
        let report =
            dual_lr_coefficient(&target, &Partition::empty(), &part(&[2, 1])).unwrap();
        assert_eq!(report.count, 1);
        assert_eq!(report.sign, 1);
        assert_eq!(report.witnesses[0], target);
    }

    #[test]
    fn non_unique_targets_are_rejected() {
        let target = p_tableau(&"34124".parse().unwrap());
        assert_eq!(target, t(&[&[1, 2, 4], &[3, 4]]));
        let err = lr_coefficient(&LRQuery {
            lambda: part(&[2, 1]),
            mu: part(&[3, 2]),
            nu: part(&[4, 3, 2]),
            urt_choice: UrtChoice::Explicit(target.clone()),
        })
        .unwrap_err();
        assert!(matches!(err, LRError::NotUniqueTarget { .. }));
        let err = dual_lr_coefficient(&target, &part(&[2, 1]), &part(&[3, 1])).unwrap_err();
        assert!(matches!(err, LRError::NotUniqueTarget { .. }));
    }

    #[test]
    fn explicit_targets_must_match_the_queried_shape() {
        let err = lr_coefficient(&LRQuery {
            lambda: part(&[1]),
            mu: part(&[2, 1]),
            nu: part(&[3, 1]),
            urt_choice: UrtChoice::Explicit(t(&[&[1, 2]])),
        })
        .unwrap_err();
        assert!(matches!(err, LRError::TargetShapeMismatch { .. }));
    }

    #[test]
    fn raw_counts_drift_for_targets_that_share_their_class() {
        // Product direction: against this non-unique target the raw count
        // is 2, one short of the ring coefficient 3.
        let target = p_tableau(&"34124".parse().unwrap());
        let shape = SkewShape::new(part(&[4, 3, 2]), part(&[2, 1])).unwrap();
        let hits = fillings_inserting_to(&shape, &target);
        let expected: BTreeSet<IncreasingTableau> = [
            skew(&[2, 1], &[&[2, 4], &[2, 4], &[1, 3]]),
            skew(&[2, 1], &[&[2, 4], &[1, 4], &[3, 4]]),
        ]
        .into_iter()
        .collect();
        assert_eq!(hits.iter().cloned().collect::<BTreeSet<_>>(), expected);

        // Coproduct direction: a single two-block filling, although the
        // ring coefficient is 2.
        let blocks = direct_sum_shape(&part(&[2, 1]), &part(&[3, 1]));
        let hits = fillings_inserting_to(&blocks, &target);
        assert_eq!(
            hits,
            vec![skew(&[2, 2], &[&[1, 2, 4], &[4], &[1, 4], &[3]])]
        );
    }

    #[test]
    fn table_for_two_single_boxes() {
        let table = lr_table(&part(&[1]), &part(&[1]), 1).unwrap();
        let summary: Vec<(Vec<u32>, usize, i64)> = table
            .iter()
            .map(|(nu, r)| (nu.parts().to_vec(), r.count, r.sign))
            .collect();
        assert_eq!(
            summary,
            vec![
                (vec![1, 1], 1, 1),
                (vec![2], 1, 1),
                (vec![2, 1], 1, -1),
            ]
        );
    }

    #[test]
    fn table_with_an_empty_factor_is_a_single_entry() {
        let table = lr_table(&Partition::empty(), &part(&[2, 1]), 2).unwrap();
        assert_eq!(table.len(), 1);
        let report = &table[&part(&[2, 1])];
        assert_eq!(report.count, 1);
        assert_eq!(report.sign, 1);
    }

    #[test]
    fn product_verification_agrees_for_single_boxes() {
        let agreement = verify_product_rule(&part(&[1]), &part(&[1]), 4, 4).unwrap();
        assert!(agreement.agrees());
        // Partitions of sizes 2, 3, 4.
        assert_eq!(agreement.checked, 2 + 3 + 5);

        let err = verify_product_rule(&part(&[2, 1]), &part(&[2, 1]), 4, 4).unwrap_err();
        assert!(matches!(
            err,
            LRError::WindowInsufficient { needed: 6, got: 4 }
        ));
    }

    #[test]
    fn coproduct_verification_agrees_for_a_hook() {
        let target = superstandard_tableau(&part(&[2, 1]));
        let agreement = verify_coproduct_rule(&target, 4, 4).unwrap();
        assert!(agreement.agrees());
        assert!(agreement.checked >= 49);
    }

    #[test]
    fn boxed_partitions_enumerate_the_square() {
        let shapes = boxed_partitions(2, 4);
        let parts: BTreeSet<Vec<u32>> = shapes.iter().map(|p| p.parts().to_vec()).collect();
        let expected: BTreeSet<Vec<u32>> = [
            vec![],
            vec![1],
            vec![2],
            vec![1, 1],
            vec![2, 1],
            vec![2, 2],
        ]
        .into_iter()
        .collect();
        assert_eq!(parts, expected);

        // The degree cap prunes the square.
        assert_eq!(boxed_partitions(3, 2).len(), 4);
    }
}

//! A bialgebra on K-Knuth classes of initial words, realized on their
//! finite tableau skeletons.
//!
//! Formally the product of two classes is the class sum of a shifted
//! shuffle and the coproduct is the class sum of all deconcatenations.
//! Classes are infinite as word sets (any letter may be duplicated), so
//! this module works with the finite data instead: a class is stored as
//! its set of equivalent increasing tableaux together with a minimal
//! representative word, both computed inside a length corridor. The
//! product of `[[h]]` and `[[h′]]` is found by filtering the finitely
//! many tableaux over the joint alphabet by two restriction conditions,
//! and the coproduct of `[[h]]` by testing pairs of tableaux over
//! sub-alphabets whose concatenated reading words are equivalent to `h`.
//! When both inputs are unique rectification targets the equivalence
//! tests collapse to exact tableau comparisons and the corridor caveat
//! disappears.
//!
//! # No antipode
//!
//! The coproduct of a nonempty class always contains the diagonal-degree
//! term produced by duplicating letters, e.g. `Δ[[1]]` contains
//! `[[1]] ⊗ [[1]]` because `11 ≡ 1`. An antipode `S` would have to
//! satisfy `S([[1]]) + S([[1]])·[[1]] + [[1]] = 0`, and the first two
//! terms can never cancel degree by degree, so the bialgebra admits no
//! antipode:
//!
//! ```
//! use khecke_core::kpr::class_coproduct;
//! use khecke_core::Word;
//!
//! let h: Word = "1".parse().unwrap();
//! let delta = class_coproduct(&h, 8).unwrap();
//! let mut reps: Vec<String> = delta
//!     .terms
//!     .iter()
//!     .map(|t| format!("{}⊗{}", t.left.representative, t.right.representative))
//!     .collect();
//! reps.sort();
//! assert_eq!(reps, ["1⊗1", "1⊗ε", "ε⊗1"]);
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::insertion::p_tableau;
use crate::kknuth::{
    class_slice, distinct_certificate, equivalent_tableaux, is_urt, length_lex, ClassSlice,
    KKnuthError, UrtStatus,
};
use crate::tableau::{straight_tableaux_with_support, IncreasingTableau};
use crate::word::{Letter, Word, WordError};

/// Errors from class-level products and coproducts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KprError {
    #[error("the word {0} is not initial: its support must be {{1, …, k}}")]
    NonInitialWord(Word),
    #[error("tableau entries must form an initial alphabet {{1, …, k}}")]
    NonInitialTableau,
    #[error("not a unique rectification target: the class also contains\n{witness}")]
    NotUrt { witness: IncreasingTableau },
    #[error(transparent)]
    Exploration(#[from] KKnuthError),
    #[error(transparent)]
    Alphabet(#[from] WordError),
}

/// All interleavings of two words, as a multiset: repeated letters across
/// the factors produce repeated entries, and the count is always the
/// binomial coefficient `C(|a| + |b|, |a|)`.
pub fn shuffle(a: &Word, b: &Word) -> Vec<Word> {
    let mut out = Vec::new();
    let mut buf: Vec<Letter> = Vec::with_capacity(a.len() + b.len());
    interleave(a.letters(), b.letters(), &mut buf, &mut out);
    out
}

fn interleave(a: &[Letter], b: &[Letter], buf: &mut Vec<Letter>, out: &mut Vec<Word>) {
    if a.is_empty() && b.is_empty() {
        out.push(Word::new(buf.clone()).expect("letters come from valid words"));
        return;
    }
    if let Some((&x, rest)) = a.split_first() {
        buf.push(x);
        interleave(rest, b, buf, out);
        buf.pop();
    }
    if let Some((&x, rest)) = b.split_first() {
        buf.push(x);
        interleave(a, rest, buf, out);
        buf.pop();
    }
}

/// The shifted shuffle `u ⧢ v[n]`, where `n` is the largest letter of
/// `u`: the second factor is moved to a disjoint alphabet before
/// interleaving, so all terms are distinct words.
pub fn shifted_shuffle(u: &Word, v: &Word) -> Result<Vec<Word>, KprError> {
    let n = u.max_letter().unwrap_or(0);
    Ok(shuffle(u, &v.shift(n)?))
}

/// All deconcatenations of `w` with both sides flattened to initial
/// words, in split-position order from `(ε, w)` to `(w, ε)`.
pub fn word_coproduct(w: &Word) -> Vec<(Word, Word)> {
    (0..=w.len())
        .map(|i| {
            let letters = w.letters();
            let left = Word::new(letters[..i].to_vec()).expect("subword of a valid word");
            let right = Word::new(letters[i..].to_vec()).expect("subword of a valid word");
            (left.flatten(), right.flatten())
        })
        .collect()
}

/// A K-Knuth class of initial words, stored through its finite skeleton:
/// the equivalent straight tableaux and the minimal equivalent word,
/// both found inside the corridor of words of length at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KPRClass {
    /// The (length, lex)-minimal word of the class found within the
    /// corridor.
    pub representative: Word,
    /// Sorted; every member's reading word is equivalent to the
    /// representative.
    pub tableaux: Vec<IncreasingTableau>,
    pub bound: usize,
}

impl KPRClass {
    /// The class of a single initial word.
    pub fn of_word(word: &Word, bound: usize) -> Result<KPRClass, KprError> {
        if !word.is_initial() {
            return Err(KprError::NonInitialWord(word.clone()));
        }
        let slice = class_slice(word, bound)?;
        let class = equivalent_tableaux(&p_tableau(word), bound)?;
        Ok(KPRClass {
            representative: slice.min_word().clone(),
            tableaux: class.tableaux,
            bound,
        })
    }
}

/// One tensor factor pair of a coproduct, with the number of tableau
/// pairs that landed on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorTerm {
    pub left: KPRClass,
    pub right: KPRClass,
    pub multiplicity: usize,
}

/// A product of two classes, expanded into classes again.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductExpansion {
    /// Sorted by (length, lex) of the representative.
    pub classes: Vec<KPRClass>,
    /// Tableaux whose membership in the product could not be settled
    /// inside the corridor: a restriction condition stayed open, or the
    /// reading word was too long to classify.
    pub unresolved: Vec<IncreasingTableau>,
    pub bound: usize,
}

/// A coproduct of a class, expanded into tensor terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoproductExpansion {
    /// Sorted by representative pair.
    pub terms: Vec<TensorTerm>,
    /// Tableau pairs whose membership stayed open inside the corridor.
    pub unresolved: Vec<(IncreasingTableau, IncreasingTableau)>,
    pub bound: usize,
}

/// Expands `[[h1]] · [[h2]]` into classes: the product tableaux are the
/// increasing tableaux `T` over the joint alphabet `{1, …, n+m}` whose
/// restriction to `{1, …, n}` is a tableau equivalent to `P(h1)` and
/// whose reading word restricted to `{n+1, …, n+m}` is equivalent to the
/// shift of `h2`. Both membership tests run inside the corridor of words
/// of length at most `bound`; candidates that can be neither confirmed
/// nor refuted there are reported separately.
pub fn class_product(h1: &Word, h2: &Word, bound: usize) -> Result<ProductExpansion, KprError> {
    if !h1.is_initial() {
        return Err(KprError::NonInitialWord(h1.clone()));
    }
    if !h2.is_initial() {
        return Err(KprError::NonInitialWord(h2.clone()));
    }
    let n = h1.max_letter().unwrap_or(0);
    let m = h2.max_letter().unwrap_or(0);
    let left = equivalent_tableaux(&p_tableau(h1), bound)?;
    let shifted = h2.shift(n)?;
    let right_slice = class_slice(&shifted, bound)?;

    let alphabet: BTreeSet<Letter> = (1..=n + m).collect();
    let mut groups: Vec<(ClassSlice, Vec<IncreasingTableau>)> = Vec::new();
    let mut unresolved = Vec::new();
    for t in straight_tableaux_with_support(&alphabet) {
        let restriction = t.restrict_le(n);
        let restriction_open = if left.tableaux.binary_search(&restriction).is_ok() {
            false
        } else if left.unresolved.binary_search(&restriction).is_ok() {
            true
        } else {
            continue;
        };

        let tail = t.reading_word().restrict_interval(n + 1, n + m);
        let tail_open = if right_slice.contains(&tail) {
            false
        } else if distinct_certificate(&tail, &shifted).is_some() {
            continue;
        } else {
            true
        };

        let reading = t.reading_word();
        if restriction_open || tail_open || reading.len() > bound {
            unresolved.push(t);
            continue;
        }
        match groups.iter_mut().find(|(slice, _)| slice.contains(&reading)) {
            Some((_, members)) => members.push(t),
            None => {
                let slice = class_slice(&reading, bound)?;
                groups.push((slice, vec![t]));
            }
        }
    }

    groups.sort_by(|(s1, _), (s2, _)| length_lex(s1.min_word(), s2.min_word()));
    let classes = groups
        .into_iter()
        .map(|(slice, mut members)| {
            members.sort();
            KPRClass {
                representative: slice.min_word().clone(),
                tableaux: members,
                bound,
            }
        })
        .collect();
    unresolved.sort();
    Ok(ProductExpansion {
        classes,
        unresolved,
        bound,
    })
}

/// Expands `Δ[[h]]` into tensor terms: qualifying pairs are straight
/// tableaux over sub-alphabets of the support of `h` whose concatenated
/// reading words are equivalent to `h` within the corridor. Each side is
/// flattened to an initial word and the pairs are grouped by class.
pub fn class_coproduct(h: &Word, bound: usize) -> Result<CoproductExpansion, KprError> {
    if !h.is_initial() {
        return Err(KprError::NonInitialWord(h.clone()));
    }
    let slice = class_slice(h, bound)?;
    let support = h.support();

    let mut tableaux_cache: BTreeMap<BTreeSet<Letter>, Vec<IncreasingTableau>> = BTreeMap::new();
    let mut with_support = |set: &BTreeSet<Letter>| -> Vec<IncreasingTableau> {
        tableaux_cache
            .entry(set.clone())
            .or_insert_with(|| straight_tableaux_with_support(set))
            .clone()
    };

    // Keys: canonical (minimal-word) representatives of both sides.
    let mut accepted: Vec<(IncreasingTableau, IncreasingTableau)> = Vec::new();
    let mut unresolved = Vec::new();
    for (left_set, right_set) in covering_pairs(&support) {
        for t_left in with_support(&left_set) {
            let left_word = t_left.reading_word();
            for t_right in with_support(&right_set) {
                let joined = left_word.concat(&t_right.reading_word());
                if slice.contains(&joined) {
                    accepted.push((t_left.clone(), t_right));
                } else if distinct_certificate(&joined, h).is_none() {
                    unresolved.push((t_left.clone(), t_right));
                }
            }
        }
    }

    let mut class_cache: BTreeMap<Word, KPRClass> = BTreeMap::new();
    let mut grouped: BTreeMap<(Word, Word), usize> = BTreeMap::new();
    for (t_left, t_right) in accepted {
        let mut key = Vec::with_capacity(2);
        for side in [&t_left, &t_right] {
            let flat = side.reading_word().flatten();
            if !class_cache.contains_key(&flat) {
                let class = KPRClass::of_word(&flat, bound)?;
                class_cache.insert(flat.clone(), class);
            }
            key.push(class_cache[&flat].representative.clone());
        }
        let key = (key.remove(0), key.remove(0));
        *grouped.entry(key).or_insert(0) += 1;
    }

    // Index classes by representative for assembling the terms.
    let by_representative: BTreeMap<Word, KPRClass> = class_cache
        .into_values()
        .map(|c| (c.representative.clone(), c))
        .collect();
    let mut terms: Vec<TensorTerm> = grouped
        .into_iter()
        .map(|((left, right), multiplicity)| TensorTerm {
            left: by_representative[&left].clone(),
            right: by_representative[&right].clone(),
            multiplicity,
        })
        .collect();
    terms.sort_by(|a, b| {
        length_lex(&a.left.representative, &b.left.representative)
            .then_with(|| length_lex(&a.right.representative, &b.right.representative))
    });
    unresolved.sort();
    Ok(CoproductExpansion {
        terms,
        unresolved,
        bound,
    })
}

/// All ordered pairs of subsets of `support` whose union is `support`.
fn covering_pairs(support: &BTreeSet<Letter>) -> Vec<(BTreeSet<Letter>, BTreeSet<Letter>)> {
    let mut out = vec![(BTreeSet::new(), BTreeSet::new())];
    for &x in support {
        let mut next = Vec::with_capacity(out.len() * 3);
        for (a, b) in out {
            let mut left_only = (a.clone(), b.clone());
            left_only.0.insert(x);
            let mut right_only = (a.clone(), b.clone());
            right_only.1.insert(x);
            let mut both = (a, b);
            both.0.insert(x);
            both.1.insert(x);
            next.extend([left_only, right_only, both]);
        }
        out = next;
    }
    out
}

fn require_urt(t: &IncreasingTableau, bound: usize) -> Result<(), KprError> {
    match is_urt(t, bound)? {
        UrtStatus::Urt { .. } => Ok(()),
        UrtStatus::NotUrt { witness } => Err(KprError::NotUrt { witness }),
    }
}

/// The product tableau set for two unique rectification targets `T1`
/// over `{1, …, n}` and `T2` over `{1, …, m}`: all tableaux over
/// `{1, …, n+m}` whose restriction to `{1, …, n}` equals `T1` and whose
/// reading word restricted to `{n+1, …, n+m}` inserts to `T2` after
/// flattening. Both tests are exact; `bound` is used only to verify the
/// unique rectification property of the inputs.
pub fn urt_class_product(
    t1: &IncreasingTableau,
    t2: &IncreasingTableau,
    bound: usize,
) -> Result<Vec<IncreasingTableau>, KprError> {
    for t in [t1, t2] {
        if !t.reading_word().is_initial() {
            return Err(KprError::NonInitialTableau);
        }
        require_urt(t, bound)?;
    }
    let n = t1.reading_word().max_letter().unwrap_or(0);
    let m = t2.reading_word().max_letter().unwrap_or(0);
    if u16::from(n) + u16::from(m) > u16::from(Letter::MAX) {
        return Err(KprError::Alphabet(WordError::ShiftOverflow {
            letter: m,
            shift: n,
        }));
    }

    let alphabet: BTreeSet<Letter> = (1..=n + m).collect();
    let mut out: Vec<IncreasingTableau> = straight_tableaux_with_support(&alphabet)
        .into_iter()
        .filter(|t| {
            t.restrict_le(n) == *t1
                && p_tableau(&t.reading_word().restrict_interval(n + 1, n + m).flatten()) == *t2
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The coproduct pair set for a unique rectification target `T0`: all
/// pairs of straight tableaux over sub-alphabets of the support of `T0`
/// whose concatenated reading words insert to `T0`. The test is exact;
/// `bound` is used only to verify the unique rectification property.
pub fn urt_class_coproduct(
    t0: &IncreasingTableau,
    bound: usize,
) -> Result<Vec<(IncreasingTableau, IncreasingTableau)>, KprError> {
    require_urt(t0, bound)?;
    let support = t0.support();
    let outer = t0.shape().outer();

    let mut tableaux_cache: BTreeMap<BTreeSet<Letter>, Vec<IncreasingTableau>> = BTreeMap::new();
    let mut with_support = |set: &BTreeSet<Letter>| -> Vec<IncreasingTableau> {
        tableaux_cache
            .entry(set.clone())
            .or_insert_with(|| straight_tableaux_with_support(set))
            .clone()
    };

    let mut out = Vec::new();
    for (left_set, right_set) in covering_pairs(&support) {
        for t_left in with_support(&left_set) {
            // Inserting more letters never removes boxes, so the left
            // tableau must fit inside the target shape.
            if !outer.contains(t_left.shape().outer()) {
                continue;
            }
            let left_word = t_left.reading_word();
            for t_right in with_support(&right_set) {
                if p_tableau(&left_word.concat(&t_right.reading_word())) == *t0 {
                    out.push((t_left.clone(), t_right));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

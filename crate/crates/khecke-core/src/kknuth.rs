//! The K-Knuth monoid: bounded exploration of equivalence classes.
//!
//! Two words are K-Knuth equivalent when one can be turned into the other
//! by a sequence of local rewrites:
//!
//! - `pp ≡ p` for any letter `p` (in context: `u p p v ≡ u p v`);
//! - `pqp ≡ qpq` for any letters `p`, `q`;
//! - `pqs ≡ qps` and `sqp ≡ spq` whenever `p < s < q`.
//!
//! Classes are infinite (every letter can be duplicated), so all
//! exploration is bounded by a maximum word length. Within such a
//! corridor the full connected component of a word is computable; the
//! corridor may of course miss connections that detour through longer
//! words, which is why equivalence queries return a three-valued
//! [`Verdict`]: equivalent (with an explicit rewrite chain), distinct
//! (with an invariant certificate), or unknown at this bound.

use crate::insertion::p_tableau;
use crate::tableau::{straight_tableaux_with_support, IncreasingTableau};
use crate::word::{Letter, Word};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Hard limit on the number of words any single exploration may visit.
const WORD_EXPLORATION_LIMIT: usize = 1_000_000;

/// Errors raised by bounded class exploration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KKnuthError {
    #[error("class exploration exceeded {limit} words; the length bound is too large")]
    ClassTooLarge { limit: usize },
    #[error("length bound {bound} is smaller than the word length {len}")]
    BoundBelowSeed { bound: usize, len: usize },
    #[error("tableau equivalence is defined for straight-shape tableaux")]
    SkewShapeInput,
}

/// Compares words by length first, then lexicographically.
pub fn length_lex(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All words of length at most `max_len` reachable from `word` by
/// exactly one rewrite, in (length, lex) order.
pub fn relation_neighbors(word: &Word, max_len: usize) -> Vec<Word> {
    let mut out = neighbors_unbounded(word);
    out.retain(|w| w.len() <= max_len);
    out
}

/// All words reachable from `word` by exactly one rewrite, in
/// (length, lex) order. Includes length-changing moves: contracting a
/// doubled letter and duplicating any letter.
fn neighbors_unbounded(word: &Word) -> Vec<Word> {
    let w = word.letters();
    let n = w.len();
    let mut out = BTreeSet::new();
    let mut push = |letters: Vec<Letter>| {
        if letters != w {
            out.insert(Word::new(letters).expect("rewrites preserve valid letters"));
        }
    };

    for i in 0..n {
        // Duplicate the letter at i.
        let mut v = Vec::with_capacity(n + 1);
        v.extend_from_slice(&w[..=i]);
        v.push(w[i]);
        v.extend_from_slice(&w[i + 1..]);
        push(v);
        // Contract a doubled letter.
        if i + 1 < n && w[i] == w[i + 1] {
            let mut v = Vec::with_capacity(n - 1);
            v.extend_from_slice(&w[..i]);
            v.extend_from_slice(&w[i + 1..]);
            push(v);
        }
        // Length-three window rewrites.
        if i + 3 <= n {
            let (a, b, c) = (w[i], w[i + 1], w[i + 2]);
            if a == c && a != b {
                let mut v = w.to_vec();
                (v[i], v[i + 1], v[i + 2]) = (b, a, b);
                push(v);
            }
            if a.min(b) < c && c < a.max(b) {
                let mut v = w.to_vec();
                v.swap(i, i + 1);
                push(v);
            }
            if b.min(c) < a && a < b.max(c) {
                let mut v = w.to_vec();
                v.swap(i + 1, i + 2);
                push(v);
            }
        }
    }

    let mut out: Vec<Word> = out.into_iter().collect();
    out.sort_by(length_lex);
    out
}

/// Whether `a` and `b` differ by exactly one rewrite.
pub fn are_neighbors(a: &Word, b: &Word) -> bool {
    neighbors_unbounded(a).contains(b)
}

/// Every word of length at most `max_len` equivalent to `seed`, i.e. the
/// connected component of `seed` in the rewrite graph restricted to that
/// corridor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSlice {
    pub seed: Word,
    pub max_len: usize,
    /// Sorted by length, then lexicographically.
    pub words: Vec<Word>,
    /// True when no rewrite from any member leaves the slice, so the
    /// whole (unbounded) class has been seen. Duplicating a letter always
    /// grows a nonempty word, so this holds only for the empty word.
    pub saturated: bool,
}

impl ClassSlice {
    pub fn contains(&self, word: &Word) -> bool {
        self.words.binary_search_by(|m| length_lex(m, word)).is_ok()
    }

    /// The canonical representative: the (length, lex)-smallest member.
    pub fn min_word(&self) -> &Word {
        self.words.first().expect("a slice contains its seed")
    }
}

/// Computes the class slice of `seed` within the corridor of words of
/// length at most `max_len`.
pub fn class_slice(seed: &Word, max_len: usize) -> Result<ClassSlice, KKnuthError> {
    if seed.len() > max_len {
        return Err(KKnuthError::BoundBelowSeed {
            bound: max_len,
            len: seed.len(),
        });
    }
    let mut visited: BTreeSet<Word> = BTreeSet::from([seed.clone()]);
    let mut queue: VecDeque<Word> = VecDeque::from([seed.clone()]);
    let mut saturated = true;
    while let Some(w) = queue.pop_front() {
        for nb in neighbors_unbounded(&w) {
            if nb.len() > max_len {
                saturated = false;
                continue;
            }
            if visited.insert(nb.clone()) {
                if visited.len() > WORD_EXPLORATION_LIMIT {
                    return Err(KKnuthError::ClassTooLarge {
                        limit: WORD_EXPLORATION_LIMIT,
                    });
                }
                queue.push_back(nb);
            }
        }
    }
    let mut words: Vec<Word> = visited.into_iter().collect();
    words.sort_by(length_lex);
    Ok(ClassSlice {
        seed: seed.clone(),
        max_len,
        words,
        saturated,
    })
}

/// An invariant separating two words, proving they are not equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum DistinctCertificate {
    /// Equivalent words use exactly the same letters.
    SupportMismatch {
        left: BTreeSet<Letter>,
        right: BTreeSet<Letter>,
    },
    /// The longest strictly increasing subsequence length is invariant.
    LisMismatch { left: usize, right: usize },
    /// The longest strictly decreasing subsequence length is invariant.
    LdsMismatch { left: usize, right: usize },
    /// Restricting both words to the letter interval `[lo, hi]` yields
    /// words separated by one of the basic invariants.
    RestrictionMismatch {
        lo: Letter,
        hi: Letter,
        certificate: Box<DistinctCertificate>,
    },
}

fn basic_mismatch(a: &Word, b: &Word) -> Option<DistinctCertificate> {
    let (sa, sb) = (a.support(), b.support());
    if sa != sb {
        return Some(DistinctCertificate::SupportMismatch {
            left: sa,
            right: sb,
        });
    }
    if a.lis() != b.lis() {
        return Some(DistinctCertificate::LisMismatch {
            left: a.lis(),
            right: b.lis(),
        });
    }
    if a.lds() != b.lds() {
        return Some(DistinctCertificate::LdsMismatch {
            left: a.lds(),
            right: b.lds(),
        });
    }
    None
}

/// Searches for an invariant certificate that `a` and `b` lie in
/// different classes: support, lis, and lds of the words themselves and
/// of their restrictions to every letter interval (restriction to an
/// interval preserves equivalence).
pub fn distinct_certificate(a: &Word, b: &Word) -> Option<DistinctCertificate> {
    if let Some(c) = basic_mismatch(a, b) {
        return Some(c);
    }
    let support = a.support();
    let (&min, &max) = match (support.first(), support.last()) {
        (Some(min), Some(max)) => (min, max),
        _ => return None,
    };
    for lo in min..=max {
        for hi in lo..=max {
            if let Some(c) = basic_mismatch(&a.restrict_interval(lo, hi), &b.restrict_interval(lo, hi))
            {
                return Some(DistinctCertificate::RestrictionMismatch {
                    lo,
                    hi,
                    certificate: Box::new(c),
                });
            }
        }
    }
    None
}

/// The outcome of a bounded equivalence query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// The words are equivalent; `chain` starts at the first word, ends
    /// at the second, and every consecutive pair differs by one rewrite.
    Equivalent { chain: Vec<Word> },
    /// The words are provably inequivalent.
    Distinct { certificate: DistinctCertificate },
    /// Neither a connecting chain within the corridor nor a separating
    /// invariant was found.
    Unknown { bound: usize },
}

/// A reasonable default corridor for an equivalence query.
pub fn default_equivalence_bound(a: &Word, b: &Word) -> usize {
    a.len() + b.len() + 4
}

/// Decides bounded equivalence of `a` and `b`: first searches for an
/// invariant certificate of distinctness, then runs a bidirectional
/// search through words of length at most `bound` for a rewrite chain.
pub fn equivalent(a: &Word, b: &Word, bound: usize) -> Result<Verdict, KKnuthError> {
    if let Some(certificate) = distinct_certificate(a, b) {
        return Ok(Verdict::Distinct { certificate });
    }
    if a == b {
        return Ok(Verdict::Equivalent {
            chain: vec![a.clone()],
        });
    }
    if bound < a.len().max(b.len()) {
        return Err(KKnuthError::BoundBelowSeed {
            bound,
            len: a.len().max(b.len()),
        });
    }

    // parents[w] = predecessor of w on the path back to that side's root.
    let mut parents: [HashMap<Word, Option<Word>>; 2] = [
        HashMap::from([(a.clone(), None)]),
        HashMap::from([(b.clone(), None)]),
    ];
    let mut frontiers: [Vec<Word>; 2] = [vec![a.clone()], vec![b.clone()]];

    while frontiers.iter().any(|f| !f.is_empty()) {
        // Expand the smaller live side.
        let side = match (frontiers[0].is_empty(), frontiers[1].is_empty()) {
            (true, _) => 1,
            (_, true) => 0,
            _ if parents[0].len() <= parents[1].len() => 0,
            _ => 1,
        };
        let mut next = Vec::new();
        for w in std::mem::take(&mut frontiers[side]) {
            for nb in neighbors_unbounded(&w) {
                if nb.len() > bound || parents[side].contains_key(&nb) {
                    continue;
                }
                parents[side].insert(nb.clone(), Some(w.clone()));
                if parents[0].len() + parents[1].len() > WORD_EXPLORATION_LIMIT {
                    return Err(KKnuthError::ClassTooLarge {
                        limit: WORD_EXPLORATION_LIMIT,
                    });
                }
                if parents[1 - side].contains_key(&nb) {
                    let mut chain = path_to_root(&parents[0], &nb);
                    chain.reverse();
                    chain.extend(path_to_root(&parents[1], &nb).into_iter().skip(1));
                    return Ok(Verdict::Equivalent { chain });
                }
                next.push(nb);
            }
        }
        frontiers[side] = next;
    }
    Ok(Verdict::Unknown { bound })
}

fn path_to_root(parents: &HashMap<Word, Option<Word>>, from: &Word) -> Vec<Word> {
    let mut path = vec![from.clone()];
    let mut cur = from.clone();
    while let Some(Some(parent)) = parents.get(&cur) {
        path.push(parent.clone());
        cur = parent.clone();
    }
    path
}

/// The increasing tableaux found equivalent to a given one within a
/// corridor, plus any candidates the method could neither confirm nor
/// separate by invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableauClass {
    /// Tableaux whose reading words lie in the slice of the seed's
    /// reading word; sorted, and always containing the seed tableau.
    pub tableaux: Vec<IncreasingTableau>,
    /// Candidates with matching support whose status stayed open at this
    /// bound (reading word outside the corridor or chain not found, but
    /// no separating invariant either).
    pub unresolved: Vec<IncreasingTableau>,
    pub bound: usize,
}

/// Finds all straight tableaux equivalent to `t` (same reading-word
/// class) within the corridor of words of length ≤ `max_len`. Candidates
/// are the finitely many increasing tableaux over the support of `t`.
pub fn equivalent_tableaux(
    t: &IncreasingTableau,
    max_len: usize,
) -> Result<TableauClass, KKnuthError> {
    if !t.is_straight() {
        return Err(KKnuthError::SkewShapeInput);
    }
    let row = t.reading_word();
    let slice = class_slice(&row, max_len)?;
    let mut tableaux = Vec::new();
    let mut unresolved = Vec::new();
    for candidate in straight_tableaux_with_support(&row.support()) {
        let rw = candidate.reading_word();
        if rw.len() <= max_len && slice.contains(&rw) {
            tableaux.push(candidate);
        } else if distinct_certificate(&row, &rw).is_none() {
            unresolved.push(candidate);
        }
    }
    tableaux.sort();
    unresolved.sort();
    Ok(TableauClass {
        tableaux,
        unresolved,
        bound: max_len,
    })
}

/// Whether a tableau is a unique rectification target, verified within a
/// corridor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum UrtStatus {
    /// No other tableau in the class was found among words of length at
    /// most `bound`; a unique rectification target never yields one at
    /// any bound.
    Urt { bound: usize },
    /// The class provably contains a second tableau.
    NotUrt { witness: IncreasingTableau },
}

/// Tests whether `t` is the only increasing tableau in its equivalence
/// class by inserting every word in the bounded class slice of its
/// reading word.
pub fn is_urt(t: &IncreasingTableau, max_len: usize) -> Result<UrtStatus, KKnuthError> {
    if !t.is_straight() {
        return Err(KKnuthError::SkewShapeInput);
    }
    let slice = class_slice(&t.reading_word(), max_len)?;
    for word in &slice.words {
        let p = p_tableau(word);
        if p != *t {
            return Ok(UrtStatus::NotUrt { witness: p });
        }
    }
    Ok(UrtStatus::Urt { bound: max_len })
}

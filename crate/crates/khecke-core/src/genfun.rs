//! Stable Grothendieck polynomials and their relatives, computed inside
//! explicit truncation windows.
//!
//! Everything here works in a window `(n, d)`: polynomials in `x_1 … x_n`
//! with every term of degree above `d` discarded. The window is explicit
//! on each operation and all identities between these series hold
//! coefficient for coefficient inside it.
//!
//! - [`grothendieck_g`] — `G_λ = Σ_T (−1)^{|T|−|λ|} x^T` over set-valued
//!   tableaux of shape `λ`.
//! - [`weak_j`] — `J_λ = Σ_T x^T` over weak set-valued tableaux.
//! - [`fundamental_l`] — the fundamental quasisymmetric function `L_α`.
//! - [`expand_in_g`] — expansion of a symmetric polynomial in the `G`
//!   basis by greedy elimination of minimal terms.
//! - [`coproduct_g`] — the structure constants of `Δ(G_ν)`, computed by
//!   splitting the alphabet into two blocks and eliminating bidegree by
//!   bidegree.
//! - [`substitute_neg_geometric`] — the substitution `x_i ↦ −x_i/(1−x_i)`
//!   applied to `(−1)^{|λ|} G_λ`, which recovers `J_λ` exactly.
//! - [`phi_class`] — the quasisymmetric image `Σ_{w ≡ h} L_{C(w)}` of a
//!   K-Knuth class.
//! - [`j_from_insertion`] — the same sum over an insertion fibre,
//!   `Σ_{P(w) = T} L_{C(w)}`, which recovers `J` of the shape of `T`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::insertion::insert_letter;
use crate::kknuth::{class_slice, KKnuthError};
use crate::poly::{binomial, BiTruncatedPoly, Monomial, PolyError, TruncatedPoly};
use crate::shape::{Composition, Partition};
use crate::tableau::{
    for_each_set_valued_tableau, for_each_weak_set_valued_tableau, IncreasingTableau,
};
use crate::word::{Letter, Word};

/// Errors from the generating-function layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenFunError {
    /// The degree cap excludes terms the operation is required to produce.
    #[error("degree window {got} cannot cover terms of degree {needed}")]
    WindowTooSmall { needed: usize, got: usize },
    /// Distinct partitions of size up to `degree` collide when written in
    /// fewer variables, so elimination would be ambiguous.
    #[error("{num_vars} variables cannot separate partitions of size up to {degree}; use at least as many variables as the degree window")]
    TooFewVariables { num_vars: usize, degree: usize },
    #[error("polynomial is not symmetric in its variables, so it has no expansion in the G basis")]
    NotSymmetric,
    #[error("alphabets hold at most {max} letters (requested {requested})")]
    AlphabetTooLarge { requested: usize, max: usize },
    /// Exponents are stored in a byte each.
    #[error("degree windows above {max} are not supported (requested {requested})")]
    WindowTooLarge { requested: usize, max: usize },
    #[error("the word {0} is not initial: its support must be {{1, …, k}}")]
    NonInitialWord(Word),
    #[error("tableau has a skew shape; only straight tableaux arise as insertion images")]
    SkewInsertionTarget,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exploration(#[from] KKnuthError),
}

fn check_degree_cap(max_degree: usize) -> Result<(), GenFunError> {
    if max_degree > u8::MAX as usize {
        return Err(GenFunError::WindowTooLarge {
            requested: max_degree,
            max: u8::MAX as usize,
        });
    }
    Ok(())
}

fn enumeration_alphabet(num_vars: usize) -> Result<Letter, GenFunError> {
    Letter::try_from(num_vars).map_err(|_| GenFunError::AlphabetTooLarge {
        requested: num_vars,
        max: Letter::MAX as usize,
    })
}

/// The truncated stable Grothendieck polynomial of a partition shape:
/// the sum of `(−1)^{|T|−|λ|} x^T` over set-valued tableaux `T` of shape
/// `λ` with letters at most `num_vars` and at most `max_degree` entries,
/// where `x^T` collects one factor `x_i` per occurrence of `i`.
///
/// The lowest-degree stratum (tableaux with singleton cells) is the Schur
/// polynomial of `λ`, so the window must reach degree `|λ|`.
pub fn grothendieck_g(
    shape: &Partition,
    num_vars: usize,
    max_degree: usize,
) -> Result<TruncatedPoly, GenFunError> {
    if max_degree < shape.size() {
        return Err(GenFunError::WindowTooSmall {
            needed: shape.size(),
            got: max_degree,
        });
    }
    check_degree_cap(max_degree)?;
    let max_letter = enumeration_alphabet(num_vars)?;
    let mut out = TruncatedPoly::zero(num_vars, max_degree);
    let mut failure = None;
    let base = shape.size();
    for_each_set_valued_tableau(shape, max_letter, max_degree, |t| {
        if failure.is_some() {
            return;
        }
        let sign = if (t.num_entries() - base) % 2 == 0 { 1 } else { -1 };
        if let Err(e) = out.add_term(content_monomial(t.content()), sign) {
            failure = Some(e);
        }
    });
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(out),
    }
}

/// The weak analogue of [`grothendieck_g`]: the unsigned sum of `x^T`
/// over weak set-valued tableaux (cells hold multisets), with the same
/// window conventions. All coefficients are nonnegative.
pub fn weak_j(
    shape: &Partition,
    num_vars: usize,
    max_degree: usize,
) -> Result<TruncatedPoly, GenFunError> {
    if max_degree < shape.size() {
        return Err(GenFunError::WindowTooSmall {
            needed: shape.size(),
            got: max_degree,
        });
    }
    check_degree_cap(max_degree)?;
    let max_letter = enumeration_alphabet(num_vars)?;
    let mut out = TruncatedPoly::zero(num_vars, max_degree);
    let mut failure = None;
    for_each_weak_set_valued_tableau(shape, max_letter, max_degree, |t| {
        if failure.is_some() {
            return;
        }
        if let Err(e) = out.add_term(content_monomial(t.content()), 1) {
            failure = Some(e);
        }
    });
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(out),
    }
}

fn content_monomial(content: BTreeMap<Letter, u32>) -> Monomial {
    Monomial::from_pairs(content.into_iter().map(|(l, c)| (u16::from(l), c as u8)))
}

/// The fundamental quasisymmetric function of a composition: the sum of
/// `x_{i_1} ⋯ x_{i_k}` over weakly increasing sequences
/// `i_1 ≤ … ≤ i_k ≤ num_vars` (`k = |α|`) that rise strictly after each
/// partial sum of `α`. Homogeneous of degree `|α|`, so a window below
/// `|α|` truncates it to zero.
pub fn fundamental_l(
    alpha: &Composition,
    num_vars: usize,
    max_degree: usize,
) -> Result<TruncatedPoly, GenFunError> {
    check_degree_cap(max_degree)?;
    let mut out = TruncatedPoly::zero(num_vars, max_degree);
    accumulate_fundamental(&mut out, alpha)?;
    Ok(out)
}

/// Adds `L_α` into an accumulator without building an intermediate
/// polynomial; used by the class and fibre sums.
fn accumulate_fundamental(out: &mut TruncatedPoly, alpha: &Composition) -> Result<(), GenFunError> {
    let length = alpha.size();
    if length > out.max_degree() {
        return Ok(());
    }
    if out.num_vars() > u16::MAX as usize {
        return Err(GenFunError::AlphabetTooLarge {
            requested: out.num_vars(),
            max: u16::MAX as usize,
        });
    }
    let strict = alpha.descent_set();
    let mut exponents: BTreeMap<u16, u8> = BTreeMap::new();
    fundamental_terms(out, &strict, length, &mut exponents, 1, 0)?;
    Ok(())
}

fn fundamental_terms(
    out: &mut TruncatedPoly,
    strict: &BTreeSet<usize>,
    length: usize,
    exponents: &mut BTreeMap<u16, u8>,
    position: usize,
    last: usize,
) -> Result<(), PolyError> {
    if position > length {
        out.add_term(
            Monomial::from_pairs(exponents.iter().map(|(&v, &e)| (v, e))),
            1,
        )?;
        return Ok(());
    }
    let start = match (position, strict.contains(&(position - 1))) {
        (1, _) => 1,
        (_, true) => last + 1,
        (_, false) => last,
    };
    for i in start..=out.num_vars() {
        *exponents.entry(i as u16).or_insert(0) += 1;
        fundamental_terms(out, strict, length, exponents, position + 1, i)?;
        let e = exponents.get_mut(&(i as u16)).expect("just incremented");
        *e -= 1;
        if *e == 0 {
            exponents.remove(&(i as u16));
        }
    }
    Ok(())
}

/// An expansion in the `G` basis: coefficients per shape plus whatever
/// the chosen window could not reach.
///
/// The defining identity is `input = Σ_λ c_λ·G_λ + residual` inside the
/// input's window; [`GExpansion::reconstruct`] re-evaluates the right
/// side. The residual is zero exactly when the elimination window covered
/// every term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GExpansion {
    pub coefficients: BTreeMap<Partition, i64>,
    pub residual: TruncatedPoly,
}

impl GExpansion {
    /// Rebuilds `Σ_λ c_λ·G_λ + residual` in the residual's window.
    pub fn reconstruct(&self) -> Result<TruncatedPoly, GenFunError> {
        let mut acc = self.residual.clone();
        for (shape, &c) in &self.coefficients {
            let g = grothendieck_g(shape, acc.num_vars(), acc.max_degree())?;
            acc = acc.add(&g.scale(c)?)?;
        }
        Ok(acc)
    }
}

impl Serialize for GExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            shape: &'a Partition,
            coefficient: i64,
        }
        let coefficients: Vec<Entry<'_>> = self
            .coefficients
            .iter()
            .map(|(shape, &coefficient)| Entry { shape, coefficient })
            .collect();
        let mut s = serializer.serialize_struct("GExpansion", 2)?;
        s.serialize_field("coefficients", &coefficients)?;
        s.serialize_field("residual", &self.residual)?;
        s.end()
    }
}

/// Expands a symmetric truncated polynomial in the `G` basis by greedy
/// elimination: repeatedly take the minimal surviving monomial of degree
/// at most `degree_window` (total degree first, then the more dominant
/// exponent partition, see [`monomial_elimination_order`]), read off its
/// exponent partition `λ` and coefficient `c`, and subtract `c·G_λ`.
///
/// Each step removes the whole orbit of the minimal monomial — symmetry
/// gives every monomial with exponent partition `λ` the same coefficient,
/// and they all appear in `G_λ` with coefficient one — and introduces
/// only monomials of higher degree or strictly less dominant partitions,
/// so the minimum strictly increases and the loop terminates.
///
/// Needs at least as many variables as the window: a partition of size
/// `k ≤ degree_window` may have `k` parts, and with fewer variables
/// distinct partitions would share their minimal monomials.
pub fn expand_in_g(f: &TruncatedPoly, degree_window: usize) -> Result<GExpansion, GenFunError> {
    if degree_window > f.max_degree() {
        return Err(GenFunError::WindowTooSmall {
            needed: degree_window,
            got: f.max_degree(),
        });
    }
    if f.num_vars() < degree_window {
        return Err(GenFunError::TooFewVariables {
            num_vars: f.num_vars(),
            degree: degree_window,
        });
    }
    if !f.is_symmetric() {
        return Err(GenFunError::NotSymmetric);
    }
    let mut work = f.clone();
    let mut coefficients = BTreeMap::new();
    let mut cache: BTreeMap<Partition, TruncatedPoly> = BTreeMap::new();
    while let Some((monomial, c)) = minimal_term(&work, degree_window) {
        let shape = exponent_partition(&monomial);
        if !cache.contains_key(&shape) {
            let g = grothendieck_g(&shape, f.num_vars(), f.max_degree())?;
            cache.insert(shape.clone(), g);
        }
        work = work.sub(&cache[&shape].scale(c)?)?;
        let previous = coefficients.insert(shape, c);
        debug_assert!(previous.is_none(), "each minimal stratum is hit once");
    }
    Ok(GExpansion {
        coefficients,
        residual: work,
    })
}

fn minimal_term(f: &TruncatedPoly, degree_window: usize) -> Option<(Monomial, i64)> {
    f.terms()
        .filter(|(m, _)| m.degree() <= degree_window)
        .min_by(|(a, _), (b, _)| monomial_elimination_order(a, b))
        .map(|(m, c)| (m.clone(), c))
}

fn exponent_partition(m: &Monomial) -> Partition {
    Partition::from_multiset(m.pairs().iter().map(|&(_, e)| u32::from(e)))
}

/// The order used to pick minimal terms: total degree, then the exponent
/// partition with more dominant partitions first (linearized by comparing
/// the part lists lexicographically, larger first — a refinement of
/// reverse dominance), then the sparse exponent representation as a final
/// tie-break among monomials sharing an orbit.
fn monomial_elimination_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| partition_elimination_order(&exponent_partition(a), &exponent_partition(b)))
        .then_with(|| a.cmp(b))
}

fn partition_elimination_order(a: &Partition, b: &Partition) -> Ordering {
    b.parts().cmp(a.parts())
}

/// The coproduct of `G_ν` as signed structure constants: writes
/// `G_ν(y_1 … y_n, z_1 … z_n)` — the series in the concatenation of two
/// ordered blocks of `num_vars` variables, truncated to degree
/// `max_degree` in each block — as `Σ c_{λ,μ} G_λ(y)·G_μ(z)` and returns
/// the map `(λ, μ) ↦ c_{λ,μ}`.
///
/// The coefficient carries its natural sign: `c_{λ,μ}` is
/// `(−1)^{|λ|+|μ|−|ν|}` times a nonnegative count. Requires
/// `num_vars ≥ max_degree ≥ |ν|` so the bidegree elimination is
/// unambiguous.
pub fn coproduct_g(
    nu: &Partition,
    num_vars: usize,
    max_degree: usize,
) -> Result<BTreeMap<(Partition, Partition), i64>, GenFunError> {
    if max_degree < nu.size() {
        return Err(GenFunError::WindowTooSmall {
            needed: nu.size(),
            got: max_degree,
        });
    }
    if num_vars < max_degree {
        return Err(GenFunError::TooFewVariables {
            num_vars,
            degree: max_degree,
        });
    }
    check_degree_cap(max_degree)?;
    let split = enumeration_alphabet(num_vars)?;
    let full = enumeration_alphabet(2 * num_vars)?;

    let mut delta = BiTruncatedPoly::zero(num_vars, max_degree);
    let mut failure = None;
    let base = nu.size();
    for_each_set_valued_tableau(nu, full, 2 * max_degree, |t| {
        if failure.is_some() {
            return;
        }
        let mut left: Vec<(u16, u8)> = Vec::new();
        let mut right: Vec<(u16, u8)> = Vec::new();
        let (mut left_degree, mut right_degree) = (0usize, 0usize);
        for (letter, count) in t.content() {
            if letter <= split {
                left_degree += count as usize;
                left.push((u16::from(letter), count as u8));
            } else {
                right_degree += count as usize;
                right.push((u16::from(letter - split), count as u8));
            }
        }
        if left_degree > max_degree || right_degree > max_degree {
            return;
        }
        let sign = if (t.num_entries() - base) % 2 == 0 { 1 } else { -1 };
        if let Err(e) = delta.add_term(
            Monomial::from_pairs(left),
            Monomial::from_pairs(right),
            sign,
        ) {
            failure = Some(e);
        }
    });
    if let Some(e) = failure {
        return Err(e.into());
    }

    // Bidegree elimination against G_λ(y)⊗G_μ(z), by the same strictly
    // increasing minimal-term argument as in `expand_in_g`, applied to
    // pairs of monomials.
    let mut out = BTreeMap::new();
    let mut cache: BTreeMap<Partition, TruncatedPoly> = BTreeMap::new();
    while let Some((left, right, c)) = bi_minimal_term(&delta) {
        let lambda = exponent_partition(&left);
        let mu = exponent_partition(&right);
        for shape in [&lambda, &mu] {
            if !cache.contains_key(shape) {
                let g = grothendieck_g(shape, num_vars, max_degree)?;
                cache.insert((*shape).clone(), g);
            }
        }
        let tensor = BiTruncatedPoly::tensor(&cache[&lambda], &cache[&mu])?;
        delta = delta.sub(&tensor.scale(c)?)?;
        let previous = out.insert((lambda, mu), c);
        debug_assert!(previous.is_none(), "each minimal bidegree stratum is hit once");
    }
    Ok(out)
}

fn bi_minimal_term(f: &BiTruncatedPoly) -> Option<(Monomial, Monomial, i64)> {
    f.terms()
        .min_by(|(al, ar, _), (bl, br, _)| {
            (al.degree() + ar.degree())
                .cmp(&(bl.degree() + br.degree()))
                .then_with(|| {
                    partition_elimination_order(&exponent_partition(al), &exponent_partition(bl))
                })
                .then_with(|| {
                    partition_elimination_order(&exponent_partition(ar), &exponent_partition(br))
                })
                .then_with(|| (al, ar).cmp(&(bl, br)))
        })
        .map(|(l, r, c)| (l.clone(), r.clone(), c))
}

/// Evaluates `(−1)^{|λ|} G_λ` at `x_i ← −x_i/(1−x_i)`, truncated: each
/// monomial `x^a` becomes `(−1)^{deg a} Π_i x_i^{a_i}(1−x_i)^{−a_i}` with
/// the geometric factors expanded to the degree cap. The result equals
/// [`weak_j`] of the same shape, coefficient for coefficient.
pub fn substitute_neg_geometric(
    shape: &Partition,
    num_vars: usize,
    max_degree: usize,
) -> Result<TruncatedPoly, GenFunError> {
    let g = grothendieck_g(shape, num_vars, max_degree)?;
    let total_sign: i64 = if shape.size() % 2 == 0 { 1 } else { -1 };
    let mut out = TruncatedPoly::zero(num_vars, max_degree);
    for (monomial, c) in g.terms() {
        let sign = if monomial.degree() % 2 == 0 { 1 } else { -1 };
        let mut term = TruncatedPoly::zero(num_vars, max_degree);
        term.add_term(monomial.clone(), total_sign * sign * c)?;
        let headroom = max_degree - monomial.degree();
        for &(var, exp) in monomial.pairs() {
            // (1 − x_var)^{−exp} = Σ_k C(exp−1+k, k) x_var^k.
            let mut factor = TruncatedPoly::zero(num_vars, max_degree);
            for k in 0..=headroom {
                let coefficient = i64::try_from(binomial(exp as usize - 1 + k, k))
                    .map_err(|_| PolyError::CoefficientOverflow)?;
                factor.add_term(Monomial::from_pairs([(var, k as u8)]), coefficient)?;
            }
            term = term.mul(&factor)?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// The quasisymmetric image of a K-Knuth class, with a completeness flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiImage {
    pub poly: TruncatedPoly,
    /// True unless the exploration certified that the entire class was
    /// seen. Nonempty classes are infinite (letters duplicate freely), so
    /// this is false only for the empty word; the sum itself is still
    /// complete whenever every class member of length at most the degree
    /// cap sits within the corridor.
    pub truncated: bool,
}

/// The image `Σ_{w ≡ h, |w| ≤ d} L_{C(w)}` of the class of `h` under the
/// descent-composition map, truncated at degree `d = max_degree`.
///
/// Class members are enumerated through the corridor of words of length
/// at most `bound`; since `L_{C(w)}` is homogeneous of degree `|w|`, only
/// members with `|w| ≤ d` contribute, so any `bound ≥ d` wide enough to
/// connect them yields the exact truncation. The result is flagged as
/// truncated when completeness could not be certified.
pub fn phi_class(
    h: &Word,
    num_vars: usize,
    max_degree: usize,
    bound: usize,
) -> Result<PhiImage, GenFunError> {
    if !h.is_initial() {
        return Err(GenFunError::NonInitialWord(h.clone()));
    }
    check_degree_cap(max_degree)?;
    let slice = class_slice(h, bound)?;
    let mut poly = TruncatedPoly::zero(num_vars, max_degree);
    for w in &slice.words {
        if w.len() > max_degree {
            break; // sorted by length: nothing further contributes
        }
        accumulate_fundamental(&mut poly, &w.descent_composition())?;
    }
    Ok(PhiImage {
        poly,
        truncated: !slice.saturated || bound < max_degree,
    })
}

/// The fibre sum `Σ_{P(w) = T, |w| ≤ d} L_{C(w)}` over all words
/// inserting to the straight tableau `T`, truncated at `d = max_degree`.
/// Equals [`weak_j`] of the shape of `T` in the same window, for any
/// increasing tableau `T`.
///
/// Words are grown letter by letter over the support of `T`; a branch is
/// abandoned once the insertion tableau's shape escapes the shape of `T`,
/// which is sound because insertion never removes or moves boxes.
pub fn j_from_insertion(
    t: &IncreasingTableau,
    num_vars: usize,
    max_degree: usize,
) -> Result<TruncatedPoly, GenFunError> {
    if !t.is_straight() {
        return Err(GenFunError::SkewInsertionTarget);
    }
    check_degree_cap(max_degree)?;
    let letters: Vec<Letter> = t.support().into_iter().collect();
    let mut out = TruncatedPoly::zero(num_vars, max_degree);
    let mut word: Vec<Letter> = Vec::with_capacity(max_degree);
    extend_fibre_word(
        t,
        &letters,
        &IncreasingTableau::empty(),
        &mut word,
        max_degree,
        &mut out,
    )?;
    Ok(out)
}

fn extend_fibre_word(
    target: &IncreasingTableau,
    letters: &[Letter],
    current: &IncreasingTableau,
    word: &mut Vec<Letter>,
    max_degree: usize,
    out: &mut TruncatedPoly,
) -> Result<(), GenFunError> {
    if current == target {
        let descents: BTreeSet<usize> = (1..word.len())
            .filter(|&i| word[i - 1] > word[i])
            .collect();
        let alpha = Composition::from_descent_set(&descents, word.len())
            .expect("descents lie strictly inside the word");
        accumulate_fundamental(out, &alpha)?;
    }
    if word.len() == max_degree {
        return Ok(());
    }
    // Each letter adds at most one box, so a branch that cannot reach the
    // target cell count within the remaining length is dead.
    let deficit = target.num_cells() - current.num_cells();
    if deficit > max_degree - word.len() {
        return Ok(());
    }
    for &x in letters {
        let outcome = insert_letter(current, x).expect("fibre tableaux are straight");
        if !target.shape().outer().contains(outcome.tableau.shape().outer()) {
            continue;
        }
        word.push(x);
        extend_fibre_word(target, letters, &outcome.tableau, word, max_degree, out)?;
        word.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::insertion::p_tableau;
    use crate::kknuth::equivalent_tableaux;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn mono(pairs: &[(u16, u8)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn g_matches_the_displayed_coefficients() {
        let g = grothendieck_g(&part(&[2, 1]), 4, 4).unwrap();
        assert_eq!(g.coefficient(&mono(&[(1, 2), (2, 1)])), 1);
        assert_eq!(g.coefficient(&mono(&[(1, 1), (2, 1), (3, 1)])), 2);
        assert_eq!(g.coefficient(&mono(&[(1, 2), (2, 2)])), -1);
        // Three tableaux share the content {1, 1, 2, 3}: the pairs {1,2}/{3}
        // and {1,3}/{2} next to a lone 1, plus {1},{1} over {2,3}.
        assert_eq!(g.coefficient(&mono(&[(1, 2), (2, 1), (3, 1)])), -3);
        assert_eq!(g.coefficient(&mono(&[(1, 1), (2, 1), (3, 1), (4, 1)])), -8);
        assert!(g.is_symmetric());

        assert_eq!(
            grothendieck_g(&Partition::empty(), 3, 3).unwrap(),
            TruncatedPoly::one(3, 3)
        );

        let mut expected = TruncatedPoly::zero(2, 2);
        expected.add_term(mono(&[(1, 1)]), 1).unwrap();
        expected.add_term(mono(&[(2, 1)]), 1).unwrap();
        expected.add_term(mono(&[(1, 1), (2, 1)]), -1).unwrap();
        assert_eq!(grothendieck_g(&part(&[1]), 2, 2).unwrap(), expected);
    }

    #[test]
    fn g_signs_follow_the_excess() {
        let g = grothendieck_g(&part(&[2, 1]), 3, 5).unwrap();
        for (m, c) in g.terms() {
            let expected_negative = (m.degree() - 3) % 2 == 1;
            assert_eq!(c < 0, expected_negative, "term {m} has coefficient {c}");
        }
    }

    #[test]
    fn g_window_guards() {
        assert_eq!(
            grothendieck_g(&part(&[2, 1]), 4, 2),
            Err(GenFunError::WindowTooSmall { needed: 3, got: 2 })
        );
        assert_eq!(
            grothendieck_g(&part(&[1]), 300, 2),
            Err(GenFunError::AlphabetTooLarge {
                requested: 300,
                max: 255
            })
        );
        assert_eq!(
            grothendieck_g(&part(&[1]), 2, 300),
            Err(GenFunError::WindowTooLarge {
                requested: 300,
                max: 255
            })
        );
    }

    #[test]
    fn weak_j_counts_weak_tableaux() {
        let j = weak_j(&part(&[2, 1]), 4, 4).unwrap();
        assert_eq!(j.coefficient(&mono(&[(1, 2), (2, 1)])), 1);
        assert_eq!(j.coefficient(&mono(&[(1, 1), (2, 1), (3, 1)])), 2);
        assert_eq!(j.coefficient(&mono(&[(1, 2), (2, 2)])), 3);
        assert_eq!(j.coefficient(&mono(&[(1, 3), (2, 1)])), 2);
        assert_eq!(j.coefficient(&mono(&[(1, 1), (2, 3)])), 2);
        assert_eq!(j.coefficient(&mono(&[(1, 1), (2, 1), (3, 1), (4, 1)])), 8);
        assert!(j.terms().all(|(_, c)| c > 0));
        assert!(j.is_symmetric());

        assert_eq!(
            weak_j(&Partition::empty(), 3, 3).unwrap(),
            TruncatedPoly::one(3, 3)
        );

        // A single box holds the multisets {1,…,1}: J_(1) in one variable
        // is x + x² + … up to the cap.
        let j1 = weak_j(&part(&[1]), 1, 6).unwrap();
        assert_eq!(j1.num_terms(), 6);
        for k in 1..=6u8 {
            assert_eq!(j1.coefficient(&mono(&[(1, k)])), 1);
        }
    }

    #[test]
    fn g_and_j_share_their_lowest_stratum() {
        // Degree-|λ| terms in both series come from tableaux with
        // singleton cells, i.e. semistandard fillings.
        let g = grothendieck_g(&part(&[2, 1]), 4, 5).unwrap();
        let j = weak_j(&part(&[2, 1]), 4, 5).unwrap();
        for (m, c) in g.terms().filter(|(m, _)| m.degree() == 3) {
            assert_eq!(j.coefficient(m), c);
        }
        for (m, c) in j.terms().filter(|(m, _)| m.degree() == 3) {
            assert_eq!(g.coefficient(m), c);
        }
    }

    #[test]
    fn fundamental_l_respects_strict_rises() {
        // α = (1,3) forces a strict rise after the first letter.
        let l = fundamental_l(&comp(&[1, 3]), 4, 4).unwrap();
        assert_eq!(l.coefficient(&mono(&[(1, 1), (2, 3)])), 1);
        assert_eq!(l.coefficient(&mono(&[(1, 2), (2, 2)])), 0);
        assert_eq!(l.coefficient(&mono(&[(1, 1), (2, 2), (3, 1)])), 1);
        assert_eq!(l.coefficient(&mono(&[(1, 1), (2, 1), (3, 1), (4, 1)])), 1);
        assert!(l.terms().all(|(m, _)| m.degree() == 4));
        // The strict rise rules out pure powers of a single variable.
        assert!(l.terms().all(|(m, _)| m.pairs().len() >= 2));

        // No descents: the complete homogeneous sum.
        let h3 = fundamental_l(&comp(&[3]), 2, 3).unwrap();
        assert_eq!(h3.num_terms(), 4);
        assert_eq!(h3.coefficient(&mono(&[(1, 2), (2, 1)])), 1);

        // All descents: the elementary sum over strict sequences.
        let e3 = fundamental_l(&comp(&[1, 1, 1]), 3, 3).unwrap();
        assert_eq!(e3.num_terms(), 1);
        assert_eq!(e3.coefficient(&mono(&[(1, 1), (2, 1), (3, 1)])), 1);

        assert_eq!(
            fundamental_l(&Composition::empty(), 2, 2).unwrap(),
            TruncatedPoly::one(2, 2)
        );
        // Degree beyond the window truncates to zero.
        assert!(fundamental_l(&comp(&[2, 2]), 3, 3).unwrap().is_zero());
    }

    #[test]
    fn expansion_recovers_basis_elements() {
        let g21 = grothendieck_g(&part(&[2, 1]), 4, 4).unwrap();
        let expansion = expand_in_g(&g21, 4).unwrap();
        assert_eq!(
            expansion.coefficients,
            BTreeMap::from([(part(&[2, 1]), 1)])
        );
        assert!(expansion.residual.is_zero());
        assert_eq!(expansion.reconstruct().unwrap(), g21);
    }

    #[test]
    fn expansion_of_a_monomial_symmetric_sum() {
        // m_(1,1) over three variables: x1x2 + x1x3 + x2x3. Eliminating
        // (1,1) and then the coefficient-2 stratum at (1,1,1) empties it.
        let mut m11 = TruncatedPoly::zero(3, 3);
        for (a, b) in [(1u16, 2u16), (1, 3), (2, 3)] {
            m11.add_term(mono(&[(a, 1), (b, 1)]), 1).unwrap();
        }
        let expansion = expand_in_g(&m11, 3).unwrap();
        assert_eq!(
            expansion.coefficients,
            BTreeMap::from([(part(&[1, 1]), 1), (part(&[1, 1, 1]), 2)])
        );
        assert!(expansion.residual.is_zero());
        assert_eq!(expansion.reconstruct().unwrap(), m11);
    }

    #[test]
    fn expansion_rejects_bad_inputs() {
        let mut lopsided = TruncatedPoly::zero(2, 2);
        lopsided.add_term(mono(&[(1, 1)]), 1).unwrap();
        assert_eq!(expand_in_g(&lopsided, 2), Err(GenFunError::NotSymmetric));

        let g = grothendieck_g(&part(&[1]), 2, 3).unwrap();
        assert_eq!(
            expand_in_g(&g, 3),
            Err(GenFunError::TooFewVariables {
                num_vars: 2,
                degree: 3
            })
        );
        assert_eq!(
            expand_in_g(&g, 4),
            Err(GenFunError::WindowTooSmall { needed: 4, got: 3 })
        );
    }

    #[test]
    fn coproduct_of_a_single_box() {
        let delta = coproduct_g(&part(&[1]), 2, 2).unwrap();
        assert_eq!(
            delta,
            BTreeMap::from([
                ((Partition::empty(), part(&[1])), 1),
                ((part(&[1]), Partition::empty()), 1),
                ((part(&[1]), part(&[1])), -1),
            ])
        );
    }

    #[test]
    fn coproduct_signs_and_extreme_terms() {
        let nu = part(&[2, 1]);
        let delta = coproduct_g(&nu, 3, 3).unwrap();
        assert_eq!(delta[&(Partition::empty(), nu.clone())], 1);
        assert_eq!(delta[&(nu.clone(), Partition::empty())], 1);
        for ((lambda, mu), c) in &delta {
            let expected_negative = (lambda.size() + mu.size() - nu.size()) % 2 == 1;
            assert_eq!(*c < 0, expected_negative, "({lambda}, {mu}) ↦ {c}");
        }
        // The two lowest cross strata of Δ(G_(2,1)): the classical
        // Littlewood–Richardson splittings of (2,1).
        assert_eq!(delta[&(part(&[1]), part(&[2]))], 1);
        assert_eq!(delta[&(part(&[1]), part(&[1, 1]))], 1);
        assert_eq!(delta[&(part(&[2]), part(&[1]))], 1);
        assert_eq!(delta[&(part(&[1, 1]), part(&[1]))], 1);
    }

    #[test]
    fn substitution_turns_g_into_weak_j() {
        // One variable: −G_(1)(−x/(1−x)) = x + x² + x³.
        let s = substitute_neg_geometric(&part(&[1]), 1, 3).unwrap();
        assert_eq!(s, weak_j(&part(&[1]), 1, 3).unwrap());
        assert_eq!(s.num_terms(), 3);

        assert_eq!(
            substitute_neg_geometric(&Partition::empty(), 2, 2).unwrap(),
            TruncatedPoly::one(2, 2)
        );

        assert_eq!(
            substitute_neg_geometric(&part(&[2, 1]), 4, 5).unwrap(),
            weak_j(&part(&[2, 1]), 4, 5).unwrap()
        );
    }

    #[test]
    fn phi_of_the_one_letter_class() {
        let phi = phi_class(&w("1"), 2, 4, 4).unwrap();
        assert_eq!(phi.poly, weak_j(&part(&[1]), 2, 4).unwrap());
        assert!(phi.truncated, "nonempty classes never saturate");

        let empty = phi_class(&Word::empty(), 2, 3, 3).unwrap();
        assert_eq!(empty.poly, TruncatedPoly::one(2, 3));
        assert!(!empty.truncated);

        assert_eq!(
            phi_class(&w("31"), 2, 3, 3),
            Err(GenFunError::NonInitialWord(w("31")))
        );
    }

    #[test]
    fn phi_sums_weak_j_over_the_class_tableaux() {
        // The class of 3124 holds exactly two tableaux, of shapes (3,1)
        // and (3,2); its image is the corresponding sum of J's.
        let class = equivalent_tableaux(&p_tableau(&w("3124")), 10).unwrap();
        assert_eq!(class.tableaux.len(), 2);
        let phi = phi_class(&w("3124"), 5, 5, 7).unwrap();
        let mut expected = TruncatedPoly::zero(5, 5);
        for t in &class.tableaux {
            expected = expected
                .add(&weak_j(t.shape().outer(), 5, 5).unwrap())
                .unwrap();
        }
        assert_eq!(phi.poly, expected);
    }

    #[test]
    fn insertion_fibres_sum_to_weak_j() {
        let t = p_tableau(&w("15133"));
        assert_eq!(
            j_from_insertion(&t, 4, 5).unwrap(),
            weak_j(&part(&[2, 1]), 4, 5).unwrap()
        );

        let single = IncreasingTableau::new_straight(vec![vec![1]]).unwrap();
        assert_eq!(
            j_from_insertion(&single, 2, 4).unwrap(),
            weak_j(&part(&[1]), 2, 4).unwrap()
        );

        let superstandard =
            IncreasingTableau::new_straight(vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(
            j_from_insertion(&superstandard, 4, 5).unwrap(),
            weak_j(&part(&[2, 2]), 4, 5).unwrap()
        );

        // The identity does not need a unique rectification target.
        let minimal = IncreasingTableau::new_straight(vec![vec![1, 2], vec![2]]).unwrap();
        assert_eq!(
            j_from_insertion(&minimal, 3, 4).unwrap(),
            weak_j(&part(&[2, 1]), 3, 4).unwrap()
        );

        let skew = IncreasingTableau::new_skew(part(&[1]), vec![vec![1], vec![1]]).unwrap();
        assert_eq!(
            j_from_insertion(&skew, 2, 2),
            Err(GenFunError::SkewInsertionTarget)
        );
    }

    #[test]
    fn expansion_serializes_with_shape_keys() {
        let g = grothendieck_g(&part(&[1, 1]), 2, 2).unwrap();
        let expansion = expand_in_g(&g, 2).unwrap();
        let json = serde_json::to_value(&expansion).unwrap();
        assert_eq!(json["coefficients"][0]["shape"], serde_json::json!([1, 1]));
        assert_eq!(json["coefficients"][0]["coefficient"], 1);
        assert!(json["residual"]["terms"].as_array().unwrap().is_empty());
    }
}

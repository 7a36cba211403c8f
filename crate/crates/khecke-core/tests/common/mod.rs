//! Shared helpers and independent brute-force oracles for the
//! integration suites. Everything here is deliberately written from the
//! definitions rather than reusing library internals, so agreement is
//! evidence and disagreement is a bug.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use khecke_core::{
    weak_j, BiTruncatedPoly, Letter, Monomial, Partition, TruncatedPoly, Word,
};

pub fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Longest strictly increasing subsequence by exhausting all 2^n
/// subsequences.
pub fn naive_lis(word: &Word) -> usize {
    naive_longest(word, |a, b| a < b)
}

/// Longest strictly decreasing subsequence by the same exhaustion.
pub fn naive_lds(word: &Word) -> usize {
    naive_longest(word, |a, b| a > b)
}

fn naive_longest(word: &Word, ok: impl Fn(Letter, Letter) -> bool) -> usize {
    let h = word.letters();
    let n = h.len();
    assert!(n <= 20, "subsequence brute force is exponential");
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let sub: Vec<Letter> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| h[i]).collect();
        if sub.windows(2).all(|p| ok(p[0], p[1])) {
            best = best.max(sub.len());
        }
    }
    best
}

/// One-step rewrites of `word`, generated directly from the three
/// defining relation families of the monoid: contract or duplicate a
/// letter (`pp ≡ p`), braid a window (`pqp ≡ qpq`), and swap two
/// adjacent letters across a third lying strictly between them
/// (`pqs ≡ qps` and `sqp ≡ spq` for `p < s < q`).
pub fn naive_neighbors(word: &Word) -> BTreeSet<Word> {
    let h = word.letters();
    let mut out = BTreeSet::new();
    for i in 0..h.len() {
        let mut doubled = h.to_vec();
        doubled.insert(i, h[i]);
        out.insert(Word::new(doubled).unwrap());
        if i + 1 < h.len() && h[i] == h[i + 1] {
            let mut contracted = h.to_vec();
            contracted.remove(i);
            out.insert(Word::new(contracted).unwrap());
        }
    }
    for i in 0..h.len().saturating_sub(2) {
        let (a, b, c) = (h[i], h[i + 1], h[i + 2]);
        if a != b && c == a {
            let mut braided = h.to_vec();
            braided[i] = b;
            braided[i + 1] = a;
            braided[i + 2] = b;
            out.insert(Word::new(braided).unwrap());
        }
        if c > a.min(b) && c < a.max(b) {
            let mut swapped = h.to_vec();
            swapped.swap(i, i + 1);
            out.insert(Word::new(swapped).unwrap());
        }
        if a > b.min(c) && a < b.max(c) {
            let mut swapped = h.to_vec();
            swapped.swap(i + 1, i + 2);
            out.insert(Word::new(swapped).unwrap());
        }
    }
    out
}

/// Classical Littlewood–Richardson coefficient by brute force: the
/// number of semistandard fillings of `ν/λ` with content `μ` whose
/// column reading word (rows right to left, top to bottom) is a ballot
/// sequence.
pub fn classical_lr(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    let rows = nu.len();
    let letters = mu.len() as Letter;
    let cells: Vec<(usize, usize)> = (1..=nu.len())
        .flat_map(|i| (lambda.row(i) as usize + 1..=nu.row(i) as usize).map(move |j| (i, j)))
        .collect();
    let mut filling: Vec<Vec<Letter>> = vec![Vec::new(); rows];
    let mut count = 0;
    fill_ssyt(lambda, nu, letters, &cells, 0, &mut filling, &mut |filling| {
        if content_of(filling) == mu.parts().to_vec() && is_ballot(filling) {
            count += 1;
        }
    });
    count
}

fn fill_ssyt(
    lambda: &Partition,
    nu: &Partition,
    letters: Letter,
    cells: &[(usize, usize)],
    cell: usize,
    filling: &mut Vec<Vec<Letter>>,
    found: &mut impl FnMut(&Vec<Vec<Letter>>),
) {
    if cell == cells.len() {
        found(filling);
        return;
    }
    let (i, j) = cells[cell];
    let mut lo: Letter = 1;
    if j > lambda.row(i) as usize + 1 {
        lo = lo.max(filling[i - 1][j - lambda.row(i) as usize - 2]);
    }
    if i > 1 && j > lambda.row(i - 1) as usize && j <= nu.row(i - 1) as usize {
        lo = lo.max(filling[i - 2][j - lambda.row(i - 1) as usize - 1] + 1);
    }
    for x in lo..=letters {
        filling[i - 1].push(x);
        fill_ssyt(lambda, nu, letters, cells, cell + 1, filling, found);
        filling[i - 1].pop();
    }
}

fn content_of(filling: &[Vec<Letter>]) -> Vec<u32> {
    let mut counts: BTreeMap<Letter, u32> = BTreeMap::new();
    for row in filling {
        for &x in row {
            *counts.entry(x).or_insert(0) += 1;
        }
    }
    let max = counts.keys().next_back().copied().unwrap_or(0);
    (1..=max).map(|x| counts.get(&x).copied().unwrap_or(0)).collect()
}

fn is_ballot(filling: &[Vec<Letter>]) -> bool {
    let mut seen: BTreeMap<Letter, i64> = BTreeMap::new();
    for row in filling {
        for &x in row.iter().rev() {
            *seen.entry(x).or_insert(0) += 1;
            if x > 1 && seen.get(&x) > seen.get(&(x - 1)) {
                return false;
            }
        }
    }
    true
}

/// Greedy expansion of a symmetric polynomial in the weak generating
/// functions, eliminating minimal terms in the same order the library
/// uses for the signed family: degree first, then the more dominant
/// exponent partition, then the monomial itself.
pub fn expand_in_j(
    f: &TruncatedPoly,
    window: usize,
) -> (BTreeMap<Partition, i64>, TruncatedPoly) {
    let mut remainder = f.clone();
    let mut coefficients: BTreeMap<Partition, i64> = BTreeMap::new();
    loop {
        let Some((monomial, coefficient)) = remainder
            .terms()
            .filter(|(m, _)| m.degree() <= window)
            .min_by(|(a, _), (b, _)| {
                a.degree()
                    .cmp(&b.degree())
                    .then_with(|| exponent_partition(b).parts().cmp(exponent_partition(a).parts()))
                    .then_with(|| a.cmp(b))
            })
            .map(|(m, c)| (m.clone(), c))
        else {
            break;
        };
        let shape = exponent_partition(&monomial);
        let basis = weak_j(&shape, remainder.num_vars(), remainder.max_degree()).unwrap();
        remainder = remainder.sub(&basis.scale(coefficient).unwrap()).unwrap();
        *coefficients.entry(shape).or_insert(0) += coefficient;
    }
    (coefficients, remainder)
}

fn exponent_partition(m: &Monomial) -> Partition {
    Partition::from_multiset(m.pairs().iter().map(|&(_, e)| u32::from(e)))
}

/// Splits a polynomial in `2n` variables into a tensor with `n`-variable
/// factors: variables `1..=n` go left, `n+1..=2n` go right (relabeled).
pub fn split_variables(f: &TruncatedPoly, n: usize) -> BiTruncatedPoly {
    let mut out = BiTruncatedPoly::zero(n, f.max_degree());
    for (monomial, coefficient) in f.terms() {
        let left: Vec<(u16, u8)> = monomial
            .pairs()
            .iter()
            .copied()
            .filter(|&(v, _)| (v as usize) <= n)
            .collect();
        let right: Vec<(u16, u8)> = monomial
            .pairs()
            .iter()
            .copied()
            .filter(|&(v, _)| (v as usize) > n)
            .map(|(v, e)| (v - n as u16, e))
            .collect();
        out.add_term(
            Monomial::from_pairs(left),
            Monomial::from_pairs(right),
            coefficient,
        )
        .unwrap();
    }
    out
}

/// Applies a permutation of the variables: variable `v` becomes
/// `perm[v − 1]` (both 1-based).
pub fn permute_variables(f: &TruncatedPoly, perm: &[u16]) -> TruncatedPoly {
    let mut out = TruncatedPoly::zero(f.num_vars(), f.max_degree());
    for (monomial, coefficient) in f.terms() {
        let pairs: Vec<(u16, u8)> = monomial
            .pairs()
            .iter()
            .map(|&(v, e)| (perm[v as usize - 1], e))
            .collect();
        out.add_term(Monomial::from_pairs(pairs), coefficient)
            .unwrap();
    }
    out
}

/// All permutations of `1..=n` as 1-based lookup tables.
pub fn permutations(n: u16) -> Vec<Vec<u16>> {
    fn extend(prefix: &mut Vec<u16>, n: u16, out: &mut Vec<Vec<u16>>) {
        if prefix.len() == n as usize {
            out.push(prefix.clone());
            return;
        }
        for v in 1..=n {
            if !prefix.contains(&v) {
                prefix.push(v);
                extend(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, &mut out);
    out
}

/// All words of length at most `max_len` over `1..=max`, shortest first.
pub fn words_up_to(max_len: usize, max: Letter) -> Vec<Word> {
    (0..=max_len)
        .flat_map(|len| Word::all_of_length(len, max))
        .collect()
}

/// All initial words (support an interval from 1) of length at most
/// `max_len` over `1..=max`.
pub fn initial_words_up_to(max_len: usize, max: Letter) -> Vec<Word> {
    words_up_to(max_len, max)
        .into_iter()
        .filter(Word::is_initial)
        .collect()
}

/// A deterministic spread of `count` words of the given length: steps
/// through the base-`max` odometer with a fixed stride coprime to the
/// base.
pub fn sampled_words(len: usize, max: Letter, count: usize) -> Vec<Word> {
    let total = u64::from(max).pow(len as u32);
    let mut stride = (total / count as u64).max(1) | 1;
    while stride % u64::from(max) == 0 {
        stride += 2;
    }
    let mut state = 0u64;
    (0..count)
        .map(|_| {
            let mut digits = state;
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    let d = (digits % u64::from(max)) as Letter + 1;
                    digits /= u64::from(max);
                    d
                })
                .collect();
            state = (state + stride) % total;
            Word::new(letters).unwrap()
        })
        .collect()
}

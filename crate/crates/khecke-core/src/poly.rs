//! Truncated polynomial arithmetic in finitely many variables.
//!
//! All series-level objects in this crate are studied through their
//! images in `ℤ[x_1, …, x_n]` modulo monomials of degree above a cap, so
//! a polynomial here always carries its window `(num_vars, max_degree)`.
//! Terms that leave the window are dropped by definition; coefficient
//! arithmetic is checked and overflow surfaces as an error rather than
//! wrapping. A two-block variant supports coproduct computations, where
//! each tensor side lives in its own alphabet with its own degree cap.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Errors from polynomial construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coefficient arithmetic overflowed a signed 64-bit integer")]
    CoefficientOverflow,
    #[error("variable x_{var} does not exist: the window has {num_vars} variables")]
    VariableOutOfRange { var: u16, num_vars: usize },
    #[error("window mismatch: ({0}, {1}) versus ({2}, {3}) (variables, degree cap)")]
    WindowMismatch(usize, usize, usize, usize),
}

/// A monomial, stored sparsely as `(variable, exponent)` pairs with
/// variables numbered from 1 and exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<(u16, u8)>);

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// The single variable `x_var`.
    pub fn var(var: u16) -> Self {
        Monomial(vec![(var, 1)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs; zero
    /// exponents are dropped and repeated variables merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u16, u8)>) -> Self {
        let mut merged: BTreeMap<u16, u8> = BTreeMap::new();
        for (var, exp) in pairs {
            if exp > 0 {
                *merged.entry(var).or_insert(0) += exp;
            }
        }
        Monomial(merged.into_iter().collect())
    }

    /// Builds `x_1^e_1 ⋯ x_k^e_k` from a dense exponent list.
    pub fn from_exponents(exponents: &[u8]) -> Self {
        Monomial(
            exponents
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(i, &e)| (i as u16 + 1, e))
                .collect(),
        )
    }

    pub fn pairs(&self) -> &[(u16, u8)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| usize::from(e)).sum()
    }

    pub fn max_var(&self) -> Option<u16> {
        self.0.last().map(|&(v, _)| v)
    }

    pub fn exponent_of(&self, var: u16) -> u8 {
        self.0
            .binary_search_by_key(&var, |&(v, _)| v)
            .map_or(0, |i| self.0[i].1)
    }

    /// The product of two monomials.
    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        out.push((va, ea));
                        a.next();
                    } else if vb < va {
                        out.push((vb, eb));
                        b.next();
                    } else {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// The multiset of exponents, sorted descending: the data determining
    /// the symmetric-group orbit of the monomial.
    fn signature(&self) -> Vec<u8> {
        let mut sig: Vec<u8> = self.0.iter().map(|&(_, e)| e).collect();
        sig.sort_unstable_by(|a, b| b.cmp(a));
        sig
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &(var, exp)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "x{var}")?;
            if exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

/// `C(n, k)`, computed with exact intermediate divisions.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 1..=k {
        out = out * (n - k + i) as u128 / i as u128;
    }
    out
}

/// The number of distinct monomials in the symmetric-group orbit of a
/// signature over `n` variables: a multinomial coefficient over the
/// multiplicities of the exponents (zero included).
fn orbit_size(signature: &[u8], num_vars: usize) -> u128 {
    let mut multiplicities: Vec<usize> = Vec::new();
    let mut run = 1;
    for pair in signature.windows(2) {
        if pair[0] == pair[1] {
            run += 1;
        } else {
            multiplicities.push(run);
            run = 1;
        }
    }
    if !signature.is_empty() {
        multiplicities.push(run);
    }

    let mut remaining = num_vars;
    let mut out: u128 = 1;
    for k in multiplicities {
        out *= binomial(remaining, k);
        remaining -= k;
    }
    out
}

/// A polynomial in `ℤ[x_1, …, x_num_vars]` truncated above total degree
/// `max_degree`. The window is part of the value: arithmetic requires
/// matching windows, and terms beyond the window vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    num_vars: usize,
    max_degree: usize,
    terms: BTreeMap<Monomial, i64>,
}

impl TruncatedPoly {
    /// The zero polynomial of the given window.
    pub fn zero(num_vars: usize, max_degree: usize) -> Self {
        TruncatedPoly {
            num_vars,
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one(num_vars: usize, max_degree: usize) -> Self {
        let mut p = TruncatedPoly::zero(num_vars, max_degree);
        p.terms.insert(Monomial::one(), 1);
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Adds `coefficient · monomial`, dropping the term silently if its
    /// degree exceeds the window (that is the meaning of truncation) and
    /// rejecting variables outside the window.
    pub fn add_term(&mut self, monomial: Monomial, coefficient: i64) -> Result<(), PolyError> {
        if let Some(var) = monomial.max_var() {
            if usize::from(var) > self.num_vars {
                return Err(PolyError::VariableOutOfRange {
                    var,
                    num_vars: self.num_vars,
                });
            }
        }
        if monomial.degree() > self.max_degree || coefficient == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(monomial);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o
                    .get()
                    .checked_add(coefficient)
                    .ok_or(PolyError::CoefficientOverflow)?;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn coefficient(&self, monomial: &Monomial) -> i64 {
        self.terms.get(monomial).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// The smallest total degree among the terms, if any.
    pub fn min_term_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    fn check_window(&self, other: &TruncatedPoly) -> Result<(), PolyError> {
        if self.num_vars != other.num_vars || self.max_degree != other.max_degree {
            return Err(PolyError::WindowMismatch(
                self.num_vars,
                self.max_degree,
                other.num_vars,
                other.max_degree,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedPoly) -> Result<TruncatedPoly, PolyError> {
        self.check_window(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedPoly) -> Result<TruncatedPoly, PolyError> {
        self.check_window(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.checked_neg().ok_or(PolyError::CoefficientOverflow)?)?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: i64) -> Result<TruncatedPoly, PolyError> {
        let mut out = TruncatedPoly::zero(self.num_vars, self.max_degree);
        for (m, c) in self.terms() {
            let scaled = c.checked_mul(factor).ok_or(PolyError::CoefficientOverflow)?;
            out.add_term(m.clone(), scaled)?;
        }
        Ok(out)
    }

    /// The truncated product: pairs of terms whose degrees together stay
    /// inside the window.
    pub fn mul(&self, other: &TruncatedPoly) -> Result<TruncatedPoly, PolyError> {
        self.check_window(other)?;
        let mut out = TruncatedPoly::zero(self.num_vars, self.max_degree);
        for (m1, c1) in self.terms() {
            let headroom = self.max_degree - m1.degree();
            for (m2, c2) in other.terms() {
                if m2.degree() > headroom {
                    continue;
                }
                let c = c1.checked_mul(c2).ok_or(PolyError::CoefficientOverflow)?;
                out.add_term(m1.times(m2), c)?;
            }
        }
        Ok(out)
    }

    /// Whether the polynomial is fixed by every permutation of its
    /// variables. Terms are grouped by exponent multiset; the group must
    /// carry one shared coefficient and be a full orbit.
    pub fn is_symmetric(&self) -> bool {
        let mut groups: BTreeMap<Vec<u8>, (i64, usize)> = BTreeMap::new();
        for (m, c) in self.terms() {
            let entry = groups.entry(m.signature()).or_insert((c, 0));
            if entry.0 != c {
                return false;
            }
            entry.1 += 1;
        }
        groups
            .into_iter()
            .all(|(sig, (_, count))| count as u128 == orbit_size(&sig, self.num_vars))
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, &c)) in self.terms.iter().enumerate() {
            let body = (!m.pairs().is_empty()).then(|| m.to_string());
            write_term(f, i, c, body.as_deref())?;
        }
        Ok(())
    }
}

/// A polynomial in two disjoint blocks of variables, `y_1, …, y_n` and
/// `z_1, …, z_n`, truncated above degree `max_degree` **in each block
/// separately**: precisely the window needed to read tensor-product
/// expansions degree by bidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiTruncatedPoly {
    num_vars: usize,
    max_degree: usize,
    terms: BTreeMap<(Monomial, Monomial), i64>,
}

impl BiTruncatedPoly {
    pub fn zero(num_vars: usize, max_degree: usize) -> Self {
        BiTruncatedPoly {
            num_vars,
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn add_term(
        &mut self,
        left: Monomial,
        right: Monomial,
        coefficient: i64,
    ) -> Result<(), PolyError> {
        for m in [&left, &right] {
            if let Some(var) = m.max_var() {
                if usize::from(var) > self.num_vars {
                    return Err(PolyError::VariableOutOfRange {
                        var,
                        num_vars: self.num_vars,
                    });
                }
            }
        }
        if left.degree() > self.max_degree
            || right.degree() > self.max_degree
            || coefficient == 0
        {
            return Ok(());
        }
        let entry = self.terms.entry((left, right));
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o
                    .get()
                    .checked_add(coefficient)
                    .ok_or(PolyError::CoefficientOverflow)?;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn coefficient(&self, left: &Monomial, right: &Monomial) -> i64 {
        self.terms
            .get(&(left.clone(), right.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, i64)> {
        self.terms.iter().map(|((l, r), &c)| (l, r, c))
    }

    /// The smallest total (joint) degree among the terms, if any.
    pub fn min_term_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|(l, r)| l.degree() + r.degree())
            .min()
    }

    fn check_window(&self, other: &BiTruncatedPoly) -> Result<(), PolyError> {
        if self.num_vars != other.num_vars || self.max_degree != other.max_degree {
            return Err(PolyError::WindowMismatch(
                self.num_vars,
                self.max_degree,
                other.num_vars,
                other.max_degree,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &BiTruncatedPoly) -> Result<BiTruncatedPoly, PolyError> {
        self.check_window(other)?;
        let mut out = self.clone();
        for (l, r, c) in other.terms() {
            out.add_term(l.clone(), r.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BiTruncatedPoly) -> Result<BiTruncatedPoly, PolyError> {
        self.check_window(other)?;
        let mut out = self.clone();
        for (l, r, c) in other.terms() {
            out.add_term(
                l.clone(),
                r.clone(),
                c.checked_neg().ok_or(PolyError::CoefficientOverflow)?,
            )?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: i64) -> Result<BiTruncatedPoly, PolyError> {
        let mut out = BiTruncatedPoly::zero(self.num_vars, self.max_degree);
        for (l, r, c) in self.terms() {
            let scaled = c.checked_mul(factor).ok_or(PolyError::CoefficientOverflow)?;
            out.add_term(l.clone(), r.clone(), scaled)?;
        }
        Ok(out)
    }

    /// `f(y) ⊗ g(z)`: every pair of terms, one from each block.
    pub fn tensor(f: &TruncatedPoly, g: &TruncatedPoly) -> Result<BiTruncatedPoly, PolyError> {
        if f.num_vars() != g.num_vars() || f.max_degree() != g.max_degree() {
            return Err(PolyError::WindowMismatch(
                f.num_vars(),
                f.max_degree(),
                g.num_vars(),
                g.max_degree(),
            ));
        }
        let mut out = BiTruncatedPoly::zero(f.num_vars(), f.max_degree());
        for (l, c1) in f.terms() {
            for (r, c2) in g.terms() {
                let c = c1.checked_mul(c2).ok_or(PolyError::CoefficientOverflow)?;
                out.add_term(l.clone(), r.clone(), c)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BiTruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((l, r), &c)) in self.terms.iter().enumerate() {
            write_term(f, i, c, Some(&format!("{l}⊗{r}")))?;
        }
        Ok(())
    }
}

/// Writes one term of a polynomial: sign separator, then the magnitude
/// (suppressed before a body when it is 1), then the monomial body.
fn write_term(f: &mut fmt::Formatter<'_>, index: usize, c: i64, body: Option<&str>) -> fmt::Result {
    if index == 0 {
        if c < 0 {
            write!(f, "-")?;
        }
    } else if c < 0 {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let magnitude = c.unsigned_abs();
    match body {
        None => write!(f, "{magnitude}"),
        Some(b) => {
            if magnitude != 1 {
                write!(f, "{magnitude}·")?;
            }
            write!(f, "{b}")
        }
    }
}

impl Serialize for TruncatedPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            monomial: &'a Monomial,
            coefficient: i64,
        }
        struct Terms<'a>(&'a BTreeMap<Monomial, i64>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (m, &c) in self.0 {
                    seq.serialize_element(&Term {
                        monomial: m,
                        coefficient: c,
                    })?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("TruncatedPoly", 3)?;
        s.serialize_field("num_vars", &self.num_vars)?;
        s.serialize_field("max_degree", &self.max_degree)?;
        s.serialize_field("terms", &Terms(&self.terms))?;
        s.end()
    }
}

impl Serialize for BiTruncatedPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            left: &'a Monomial,
            right: &'a Monomial,
            coefficient: i64,
        }
        struct Terms<'a>(&'a BTreeMap<(Monomial, Monomial), i64>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for ((l, r), &c) in self.0 {
                    seq.serialize_element(&Term {
                        left: l,
                        right: r,
                        coefficient: c,
                    })?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("BiTruncatedPoly", 3)?;
        s.serialize_field("num_vars", &self.num_vars)?;
        s.serialize_field("max_degree", &self.max_degree)?;
        s.serialize_field("terms", &Terms(&self.terms))?;
        s.end()
    }
}

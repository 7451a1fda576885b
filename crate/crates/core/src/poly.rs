//! Exact sparse multivariate polynomials over `Z` or `Z[b]`, with the
//! divided-difference and differential operators acting on them.
//!
//! Monomials are exponent vectors over `x_1, x_2, ...` with trailing zeros
//! trimmed. The monomial order is graded, then (within a degree) the larger
//! exponent at the rightmost differing variable wins; the maximal monomial of
//! a Schubert polynomial under this order is the one given by the Lehmer code
//! of its permutation, which is what the basis-expansion algorithm relies on
//! (and re-checks).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};

fn int_is_zero(n: &BigInt) -> bool {
    n.sign() == Sign::NoSign
}

fn uint_is_one(n: &BigUint) -> bool {
    *n == BigUint::from(1u32)
}

/// Coefficient ring abstraction: `Z` (as [`BigInt`]) or `Z[b]` (as [`BetaPoly`]).
pub trait Ring: Clone + Eq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_int(n: &BigInt) -> Self;
    /// Canonical text form, used by renderers and golden files.
    fn render(&self) -> String;
}

impl Ring for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        int_is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Dense univariate integer polynomial in the formal parameter `b`, with no
/// trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BetaPoly {
    coeffs: Vec<BigInt>,
}

impl BetaPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(int_is_zero) {
            coeffs.pop();
        }
        BetaPoly { coeffs }
    }

    pub fn constant(n: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![n.into()])
    }

    /// The parameter `b` itself.
    pub fn beta() -> Self {
        Self::from_coeffs(vec![BigInt::from(0), BigInt::from(1)])
    }

    /// Coefficient of `b^d`.
    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(|| BigInt::from(0))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Formal derivative with respect to `b`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * BigInt::from(d))
                .collect(),
        )
    }

    /// Multiplication by `b^2`, shifted in place of a generic product.
    pub fn shift2(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::from(0), BigInt::from(0)];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    /// Evaluate at an integer value of `b`.
    pub fn eval(&self, b: &BigInt) -> BigInt {
        let mut acc = BigInt::from(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * b + c;
        }
        acc
    }

    pub fn as_int(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::from(0)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Debug for BetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BetaPoly({})", self.render())
    }
}

impl fmt::Display for BetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Ring for BetaPoly {
    fn zero() -> Self {
        BetaPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for d in 0..n {
            coeffs.push(self.coeff(d) + rhs.coeff(d));
        }
        Self::from_coeffs(coeffs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for d in 0..n {
            coeffs.push(self.coeff(d) - rhs.coeff(d));
        }
        Self::from_coeffs(coeffs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Ring::zero();
        }
        let mut coeffs = vec![BigInt::from(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }
    fn neg_ref(&self) -> Self {
        BetaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn from_int(n: &BigInt) -> Self {
        Self::from_coeffs(vec![n.clone()])
    }
    /// E.g. `0`, `3`, `-1 + 2*b`, `b^2`.
    fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if int_is_zero(c) {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.sign() == Sign::Minus {
                    out.push('-');
                }
                first = false;
            } else if c.sign() == Sign::Minus {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let pow = match d {
                0 => String::new(),
                1 => "b".to_string(),
                _ => format!("b^{d}"),
            };
            if pow.is_empty() {
                out.push_str(&mag.to_string());
            } else if uint_is_one(mag) {
                out.push_str(&pow);
            } else {
                out.push_str(&format!("{mag}*{pow}"));
            }
        }
        out
    }
}

/// Exponent vector over `x_1, x_2, ...`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn unit() -> Self {
        Mono(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        assert!(i >= 1);
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Mono(e)
    }

    pub fn from_exponents(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Mono(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        assert!(i >= 1);
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest variable index with a nonzero exponent (0 for the unit).
    pub fn max_var(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.0.len().max(other.0.len());
        let mut e = Vec::with_capacity(n);
        for i in 1..=n {
            e.push(self.exponent(i) + other.exponent(i));
        }
        Mono::from_exponents(e)
    }

    fn with_exponent(&self, i: usize, v: u32) -> Mono {
        let n = self.0.len().max(i);
        let mut e: Vec<u32> = (1..=n).map(|k| self.exponent(k)).collect();
        e[i - 1] = v;
        Mono::from_exponents(e)
    }

    /// Swap the exponents of `x_i` and `x_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> Mono {
        let a = self.exponent(i);
        let b = self.exponent(i + 1);
        self.with_exponent(i, b).with_exponent(i + 1, a)
    }

    fn render(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (idx, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(format!("x{}", idx + 1));
            } else {
                parts.push(format!("x{}^{}", idx + 1, e));
            }
        }
        parts.join("*")
    }
}

impl Ord for Mono {
    /// Graded; ties broken by the rightmost differing exponent, larger wins.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in (1..=n).rev() {
                let (a, b) = (self.exponent(i), other.exponent(i));
                if a != b {
                    return a.cmp(&b);
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with coefficients in `C`, keyed by monomial in the
/// fixed deterministic order. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C: Ring> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Ring> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::unit(), c);
        }
        Poly { terms }
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Mono::var(i), C::one())
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Maximal term under the monomial order.
    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Poly::zero();
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul_ref(c)))
                .filter(|(_, k)| !k.is_zero())
                .collect(),
        }
    }

    /// Multiply by the single variable `x_i`.
    pub fn mul_var(&self, i: usize) -> Self {
        let v = Mono::var(i);
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&v), c.clone()))
                .collect(),
        }
    }

    /// The action of `s_i` on polynomials: swap `x_i` and `x_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swap_vars(i), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// Largest variable index appearing (0 if constant or zero).
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(|m| m.max_var()).max().unwrap_or(0)
    }

    /// The homogeneous component of total degree `d`.
    pub fn component(&self, d: u64) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Set every variable to 1.
    pub fn specialize_ones(&self) -> C {
        let mut acc = C::zero();
        for c in self.terms.values() {
            acc = acc.add_ref(c);
        }
        acc
    }

    /// Newton divided difference: `(f - s_i f) / (x_i - x_{i+1})`.
    ///
    /// The quotient is computed by long division with respect to `x_i`; the
    /// numerator is antisymmetric in `x_i`, `x_{i+1}`, so the division is
    /// exact. A nonzero remainder indicates an arithmetic bug and panics.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(i >= 1);
        let mut rem = self.sub(&self.swap_vars(i));
        let mut quot = Poly::zero();
        loop {
            // Among monomials with a positive x_i exponent, reduce the largest.
            let target = rem
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(i) > 0)
                .next_back()
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = target else { break };
            let q = m.with_exponent(i, m.exponent(i) - 1);
            quot.add_term(q.clone(), c.clone());
            // rem -= c * q * (x_i - x_{i+1})
            rem.add_term(m, c.neg_ref());
            rem.add_term(q.mul(&Mono::var(i + 1)), c);
        }
        assert!(
            rem.is_zero(),
            "divided difference left a remainder; antisymmetry violated (arithmetic bug)"
        );
        quot
    }

    /// `N_i((1 + factor * x_{i+1}) f)`. With `factor = -1` this is the
    /// isobaric divided difference; with `factor = b` it is the deformed
    /// variant used for the basis in `Z[b]`.
    pub fn isobaric_with(&self, i: usize, factor: &C) -> Self {
        let g = self.add(&self.mul_var(i + 1).scale(factor));
        g.divided_difference(i)
    }

    /// Isobaric divided difference `N_i((1 - x_{i+1}) f)`.
    pub fn isobaric_divided_difference(&self, i: usize) -> Self {
        self.isobaric_with(i, &C::one().neg_ref())
    }

    /// Sum of the partial derivatives over every variable appearing.
    pub fn nabla(&self) -> Self {
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            for v in 1..=m.max_var() {
                let e = m.exponent(v);
                if e > 0 {
                    out.add_term(
                        m.with_exponent(v, e - 1),
                        c.mul_ref(&C::from_int(&BigInt::from(e))),
                    );
                }
            }
        }
        out
    }

    /// Euler operator: a monomial of total degree `d` maps to `d` times itself.
    pub fn euler(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() > 0)
                .map(|(m, c)| (m.clone(), c.mul_ref(&C::from_int(&BigInt::from(m.degree())))))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl Poly<BetaPoly> {
    /// `nabla + b^2 d/db`: the x-derivatives plus the shifted b-derivative
    /// acting on each coefficient.
    pub fn nabla_beta(&self) -> Self {
        let mut out = self.nabla();
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), c.derivative().shift2());
        }
        out
    }

    /// Substitute an integer for `b`.
    pub fn specialize_beta(&self, b: &BigInt) -> Poly<BigInt> {
        self.map_coeffs(|c| c.eval(b))
    }
}

impl Poly<BigInt> {
    /// Embed a `Z` polynomial into `Z[b]`.
    pub fn to_beta(&self) -> Poly<BetaPoly> {
        self.map_coeffs(BetaPoly::from_int)
    }
}

impl fmt::Display for Poly<BigInt> {
    /// Leading term first (descending monomial order), e.g. `x1^2*x2 + 3*x1*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mag = c.magnitude();
            if first {
                if c.sign() == Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else if uint_is_one(mag) {
                write!(f, "{}", m.render())?;
            } else {
                write!(f, "{}*{}", mag, m.render())?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly<BetaPoly> {
    /// Leading term first; `Z[b]` coefficients render parenthesized, e.g.
    /// `(1 + b)*x1*x2 + x1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == &BetaPoly::constant(1) {
                write!(f, "{}", m.render())?;
            } else if m.is_unit() {
                write!(f, "({})", c.render())?;
            } else {
                write!(f, "({})*{}", c.render(), m.render())?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical text form of a polynomial over `Z[b]`.
///
/// Grammar: sum of terms joined by `+`/`-`; a term is a `*`-product of
/// integers, `b` powers, `x<i>` powers, and parenthesized sums.
pub fn parse_beta_poly(input: &str) -> Result<Poly<BetaPoly>, PolyParseError> {
    let mut parser = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let p = parser.parse_sum()?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(PolyParseError {
            offset: parser.pos,
            message: format!("unexpected trailing input at {:?}", parser.rest_preview()),
        });
    }
    Ok(p)
}

/// Parses the canonical text form of an integer polynomial, rejecting any
/// occurrence of `b`.
pub fn parse_int_poly(input: &str) -> Result<Poly<BigInt>, PolyParseError> {
    let p = parse_beta_poly(input)?;
    let mut out = Poly::zero();
    for (m, c) in p.iter() {
        match c.as_int() {
            Some(n) => out.add_term(m.clone(), n),
            None => {
                return Err(PolyParseError {
                    offset: 0,
                    message: "parameter b not allowed in an integer polynomial".to_string(),
                })
            }
        }
    }
    Ok(out)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("polynomial parse error at offset {offset}: {message}")]
pub struct PolyParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn rest_preview(&self) -> String {
        self.chars[self.pos..self.chars.len().min(self.pos + 12)]
            .iter()
            .collect()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, message: impl Into<String>) -> PolyParseError {
        PolyParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn parse_number(&mut self) -> Result<BigInt, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>().map_err(|e| self.err(e.to_string()))
    }

    fn parse_exponent(&mut self) -> Result<u32, PolyParseError> {
        if self.peek() == Some('^') {
            self.bump();
            let n = self.parse_number()?;
            u32::try_from(n).map_err(|_| self.err("exponent out of range"))
        } else {
            Ok(1)
        }
    }

    fn parse_factor(&mut self) -> Result<Poly<BetaPoly>, PolyParseError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let p = self.parse_sum()?;
                if self.bump() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(p)
            }
            Some('b') => {
                self.bump();
                let e = self.parse_exponent()?;
                let mut beta = BetaPoly::one();
                for _ in 0..e {
                    beta = beta.mul_ref(&BetaPoly::beta());
                }
                Ok(Poly::constant(beta))
            }
            Some('x') => {
                self.bump();
                let idx = self.parse_number()?;
                let idx = usize::try_from(idx).ok().filter(|&i| i >= 1);
                let Some(idx) = idx else {
                    return Err(self.err("variable index must be a positive integer"));
                };
                let e = self.parse_exponent()?;
                Ok(Poly::monomial(
                    Mono::from_exponents({
                        let mut v = vec![0; idx];
                        v[idx - 1] = e;
                        v
                    }),
                    BetaPoly::one(),
                ))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_number()?;
                Ok(Poly::constant(BetaPoly::from_int(&n)))
            }
            other => Err(self.err(format!("unexpected token {other:?}"))),
        }
    }

    fn parse_term(&mut self) -> Result<Poly<BetaPoly>, PolyParseError> {
        let mut p = self.parse_factor()?;
        while self.peek() == Some('*') {
            self.bump();
            p = p.mul(&self.parse_factor()?);
        }
        Ok(p)
    }

    fn parse_sum(&mut self) -> Result<Poly<BetaPoly>, PolyParseError> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                self.bump();
                negate = true;
            }
            Some('+') => {
                self.bump();
            }
            _ => {}
        }
        let first = self.parse_term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn x(i: usize) -> Poly<BigInt> {
        Poly::var(i)
    }

    fn random_int_poly(rng: &mut StdRng, vars: usize, deg: u32, terms: usize) -> Poly<BigInt> {
        let mut p = Poly::zero();
        for _ in 0..terms {
            let e: Vec<u32> = (0..vars).map(|_| rng.gen_range(0..=deg)).collect();
            let c = BigInt::from(rng.gen_range(-5i64..=5));
            p = p.add(&Poly::monomial(Mono::from_exponents(e), c));
        }
        p
    }

    fn random_beta_poly(rng: &mut StdRng, vars: usize, deg: u32, terms: usize) -> Poly<BetaPoly> {
        let mut p = Poly::zero();
        for _ in 0..terms {
            let e: Vec<u32> = (0..vars).map(|_| rng.gen_range(0..=deg)).collect();
            let c = BetaPoly::from_coeffs(vec![
                BigInt::from(rng.gen_range(-4i64..=4)),
                BigInt::from(rng.gen_range(-4i64..=4)),
            ]);
            p = p.add(&Poly::monomial(Mono::from_exponents(e), c));
        }
        p
    }

    #[test]
    fn mono_order_is_graded_then_rightmost() {
        let x1 = Mono::var(1);
        let x2 = Mono::var(2);
        assert!(x2 > x1);
        assert!(Mono::from_exponents(vec![2]) > x2); // degree wins
        let a = Mono::from_exponents(vec![2, 1]);
        let b = Mono::from_exponents(vec![1, 0, 2]);
        assert!(b > a); // same degree, rightmost differing exponent larger
    }

    #[test]
    fn mul_basics() {
        let f = x(1).mul(&x(2));
        assert_eq!(f, Poly::monomial(Mono::from_exponents(vec![1, 1]), BigInt::from(1)));
        let g = random_int_poly(&mut StdRng::seed_from_u64(7), 3, 3, 5);
        assert_eq!(g.mul(&Poly::one()), g);
        assert_eq!(g.mul(&Poly::zero()), Poly::zero());
    }

    #[test]
    fn ring_axioms_on_random_instances() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..200 {
            let f = random_int_poly(&mut rng, 3, 3, 4);
            let g = random_int_poly(&mut rng, 3, 3, 4);
            let h = random_int_poly(&mut rng, 3, 3, 4);
            assert_eq!(f.add(&g), g.add(&f));
            assert_eq!(f.mul(&g), g.mul(&f));
            assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        }
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..100 {
            let f = random_beta_poly(&mut rng, 2, 3, 3);
            let g = random_beta_poly(&mut rng, 2, 3, 3);
            let h = random_beta_poly(&mut rng, 2, 3, 3);
            assert_eq!(f.mul(&g), g.mul(&f));
            assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        }
    }

    #[test]
    fn distributivity_thousand_cases() {
        let mut rng = StdRng::seed_from_u64(1000);
        for _ in 0..1000 {
            let f = random_int_poly(&mut rng, 2, 2, 3);
            let g = random_int_poly(&mut rng, 2, 2, 3);
            let h = random_int_poly(&mut rng, 2, 2, 3);
            assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        }
    }

    #[test]
    fn divided_difference_examples() {
        // (x1^2 x2 - x2^2 x1) / (x1 - x2) = x1 x2
        let f = Poly::monomial(Mono::from_exponents(vec![2, 1]), BigInt::from(1));
        assert_eq!(
            f.divided_difference(1),
            Poly::monomial(Mono::from_exponents(vec![1, 1]), BigInt::from(1))
        );
        // symmetric input vanishes
        let sym = x(1).mul(&x(2));
        assert_eq!(sym.divided_difference(1), Poly::zero());
        let sym2 = x(1).add(&x(2));
        assert_eq!(sym2.divided_difference(1), Poly::zero());
    }

    #[test]
    fn divided_difference_squares_to_zero_and_symmetrizes() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..500 {
            let f = random_int_poly(&mut rng, 3, 3, 4);
            let d = f.divided_difference(1);
            assert_eq!(d.divided_difference(1), Poly::zero());
            assert_eq!(d.swap_vars(1), d);
        }
    }

    #[test]
    fn divided_difference_drops_degree_by_one() {
        let mut rng = StdRng::seed_from_u64(6);
        for _ in 0..200 {
            let f = random_int_poly(&mut rng, 3, 3, 4);
            let hom = match f.max_degree() {
                Some(d) => f.component(d),
                None => continue,
            };
            let nd = hom.divided_difference(2);
            if !nd.is_zero() {
                assert_eq!(nd.max_degree(), Some(hom.max_degree().unwrap() - 1));
                assert_eq!(nd.min_degree(), nd.max_degree());
            }
        }
    }

    #[test]
    fn isobaric_examples() {
        // N1((1 - x2) x1) = N1(x1) - N1(x1 x2) = 1
        assert_eq!(x(1).isobaric_divided_difference(1), Poly::one());
        // Oracle: N1((1 - x2) x1^2 x2) = N1(x1^2 x2) - N1(x1^2 x2^2) = x1 x2
        let f = Poly::monomial(Mono::from_exponents(vec![2, 1]), BigInt::from(1));
        assert_eq!(
            f.isobaric_divided_difference(1),
            Poly::monomial(Mono::from_exponents(vec![1, 1]), BigInt::from(1))
        );
        // Oracle: N_i(c - c x_{i+1}) = -c N_i(x_{i+1}) = c for constants
        let c = Poly::constant(BigInt::from(5));
        assert_eq!(c.isobaric_divided_difference(1), c);
        assert_eq!(Poly::<BigInt>::one().isobaric_divided_difference(2), Poly::one());
    }

    #[test]
    fn nabla_examples() {
        let f = Poly::monomial(Mono::from_exponents(vec![2, 1]), BigInt::from(1));
        let expect = Poly::from_terms(vec![
            (Mono::from_exponents(vec![1, 1]), BigInt::from(2)),
            (Mono::from_exponents(vec![2]), BigInt::from(1)),
        ]);
        assert_eq!(f.nabla(), expect);
        assert_eq!(Poly::constant(BigInt::from(9)).nabla(), Poly::zero());
    }

    #[test]
    fn nabla_satisfies_leibniz() {
        let mut rng = StdRng::seed_from_u64(77);
        for _ in 0..500 {
            let f = random_int_poly(&mut rng, 3, 2, 3);
            let g = random_int_poly(&mut rng, 3, 2, 3);
            let lhs = f.mul(&g).nabla();
            let rhs = f.nabla().mul(&g).add(&f.mul(&g.nabla()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn euler_examples_and_specialization_identity() {
        let f = Poly::monomial(Mono::from_exponents(vec![2, 1]), BigInt::from(1));
        assert_eq!(f.euler(), f.scale(&BigInt::from(3)));
        assert_eq!(Poly::<BigInt>::one().euler(), Poly::zero());
        let mut rng = StdRng::seed_from_u64(78);
        for _ in 0..500 {
            let g = random_int_poly(&mut rng, 3, 3, 4);
            let diff = g.nabla().sub(&g.euler());
            assert_eq!(diff.specialize_ones(), BigInt::from(0));
        }
    }

    #[test]
    fn euler_leibniz() {
        let mut rng = StdRng::seed_from_u64(79);
        for _ in 0..200 {
            let f = random_int_poly(&mut rng, 3, 2, 3);
            let g = random_int_poly(&mut rng, 3, 2, 3);
            assert_eq!(
                f.mul(&g).euler(),
                f.euler().mul(&g).add(&f.mul(&g.euler()))
            );
        }
    }

    #[test]
    fn nabla_beta_examples() {
        let x1b: Poly<BetaPoly> = Poly::var(1);
        assert_eq!(x1b.nabla_beta(), Poly::one());
        // nabla_beta(b * x1) = b + b^2 * x1
        let f = Poly::monomial(Mono::var(1), BetaPoly::beta());
        let expect = Poly::from_terms(vec![
            (Mono::unit(), BetaPoly::beta()),
            (Mono::var(1), BetaPoly::beta().mul_ref(&BetaPoly::beta())),
        ]);
        assert_eq!(f.nabla_beta(), expect);
    }

    #[test]
    fn nabla_beta_satisfies_leibniz() {
        let mut rng = StdRng::seed_from_u64(80);
        for _ in 0..500 {
            let f = random_beta_poly(&mut rng, 2, 2, 3);
            let g = random_beta_poly(&mut rng, 2, 2, 3);
            let lhs = f.mul(&g).nabla_beta();
            let rhs = f.nabla_beta().mul(&g).add(&f.mul(&g.nabla_beta()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn specialization_examples() {
        let f = Poly::monomial(Mono::from_exponents(vec![2, 1]), BigInt::from(1));
        assert_eq!(f.specialize_ones(), BigInt::from(1));
        assert_eq!(x(1).add(&x(2)).specialize_ones(), BigInt::from(2));
        // x1 + b*x1*x2 at b = -1 equals x1 - x1*x2
        let g = Poly::from_terms(vec![
            (Mono::var(1), BetaPoly::constant(1)),
            (Mono::from_exponents(vec![1, 1]), BetaPoly::beta()),
        ]);
        let expect = x(1).sub(&x(1).mul(&x(2)));
        assert_eq!(g.specialize_beta(&BigInt::from(-1)), expect);
    }

    #[test]
    fn rendering_golden() {
        let f = Poly::from_terms(vec![
            (Mono::from_exponents(vec![2, 1]), BigInt::from(1)),
            (Mono::from_exponents(vec![1, 0, 1]), BigInt::from(3)),
        ]);
        assert_eq!(f.to_string(), "x1^2*x2 + 3*x1*x3");
        assert_eq!(Poly::<BigInt>::zero().to_string(), "0");
        assert_eq!(Poly::<BigInt>::one().to_string(), "1");
        let g = x(1).sub(&x(2).scale(&BigInt::from(2)));
        assert_eq!(g.to_string(), "-2*x2 + x1");
        let h = Poly::from_terms(vec![
            (Mono::var(1), BetaPoly::constant(1)),
            (
                Mono::from_exponents(vec![1, 1]),
                BetaPoly::from_coeffs(vec![BigInt::from(1), BigInt::from(2)]),
            ),
        ]);
        assert_eq!(h.to_string(), "(1 + 2*b)*x1*x2 + x1");
        assert_eq!(BetaPoly::from_coeffs(vec![BigInt::from(-1), BigInt::from(1)]).render(), "-1 + b");
        assert_eq!(BetaPoly::beta().mul_ref(&BetaPoly::beta()).render(), "b^2");
    }

    #[test]
    fn parser_round_trips() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..200 {
            let f = random_int_poly(&mut rng, 3, 3, 5);
            assert_eq!(parse_int_poly(&f.to_string()).unwrap(), f);
            let g = random_beta_poly(&mut rng, 2, 2, 4);
            assert_eq!(parse_beta_poly(&g.to_string()).unwrap(), g);
        }
        assert_eq!(parse_int_poly("0").unwrap(), Poly::zero());
        assert!(parse_int_poly("x1 + b").is_err());
        assert!(parse_beta_poly("x1 +").is_err());
        assert!(parse_beta_poly("q").is_err());
    }
}

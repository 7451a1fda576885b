//! Schubert, Grothendieck, and beta-deformed Grothendieck polynomial
//! generation, basis expansion, and structure coefficients.
//!
//! Polynomials are generated by the divided-difference recursion from the
//! staircase monomial of the minimal ambient rank and memoized, since batch
//! verification revisits the same polynomials constantly. Expansion in the
//! Schubert basis peels the maximal monomial of the residual: under the
//! monomial order used here that monomial is the Lehmer code of a unique
//! permutation, whose basis polynomial is subtracted off. Expansion in a
//! Grothendieck basis peels the lowest homogeneous component instead, since
//! the lowest-degree part of each basis element is the matching Schubert
//! polynomial.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;

use crate::perm::Permutation;
use crate::poly::{BetaPoly, Mono, Poly, Ring};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Basis {
    Schubert,
    Grothendieck,
    BetaGrothendieck,
}

impl Basis {
    pub fn token(&self) -> &'static str {
        match self {
            Basis::Schubert => "schubert",
            Basis::Grothendieck => "grothendieck",
            Basis::BetaGrothendieck => "beta-grothendieck",
        }
    }

    pub fn from_token(s: &str) -> Option<Basis> {
        match s {
            "schubert" => Some(Basis::Schubert),
            "grothendieck" => Some(Basis::Grothendieck),
            "beta-grothendieck" => Some(Basis::BetaGrothendieck),
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// A finite expansion in one of the three bases: a map from permutations to
/// nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expansion<C: Ring> {
    pub basis: Basis,
    terms: BTreeMap<Permutation, C>,
}

impl<C: Ring> Expansion<C> {
    pub fn empty(basis: Basis) -> Self {
        Expansion {
            basis,
            terms: BTreeMap::new(),
        }
    }

    fn add(&mut self, w: Permutation, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn coeff(&self, w: &Permutation) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Permutation> {
        self.terms.keys()
    }

    /// Terms in canonical (word-lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The staircase monomial `x_1^{m-1} x_2^{m-2} ... x_{m-1}` of rank `m`.
fn staircase<C: Ring>(m: usize) -> Poly<C> {
    if m <= 1 {
        return Poly::one();
    }
    let exps: Vec<u32> = (1..m).rev().map(|e| e as u32).collect();
    Poly::monomial(Mono::from_exponents(exps), C::one())
}

/// Smallest non-descent of `w` within its stored rank, if any.
fn first_ascent(w: &Permutation) -> Option<u32> {
    let word = w.word();
    (1..word.len()).find(|&i| word[i - 1] < word[i]).map(|i| i as u32)
}

/// Shared memoization for basis polynomials, product expansions, and
/// specializations. Reads are concurrent; insertion is serialized. All
/// lookups are keyed by the canonical trimmed word, so the stability of the
/// polynomials under the rank embedding comes for free.
#[derive(Default)]
pub struct PolyCache {
    schubert: RwLock<HashMap<Vec<u32>, Arc<Poly<BigInt>>>>,
    grothendieck: RwLock<HashMap<Vec<u32>, Arc<Poly<BigInt>>>>,
    beta_grothendieck: RwLock<HashMap<Vec<u32>, Arc<Poly<BetaPoly>>>>,
    schubert_products: RwLock<HashMap<(Vec<u32>, Vec<u32>), Arc<Expansion<BigInt>>>>,
    grothendieck_products: RwLock<HashMap<(Vec<u32>, Vec<u32>), Arc<Expansion<BigInt>>>>,
    beta_products: RwLock<HashMap<(Vec<u32>, Vec<u32>), Arc<Expansion<BetaPoly>>>>,
    ones: RwLock<HashMap<Vec<u32>, BigInt>>,
}

impl PolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The Schubert polynomial of `w`.
    pub fn schubert(&self, w: &Permutation) -> Arc<Poly<BigInt>> {
        if let Some(p) = self.schubert.read().unwrap().get(w.word()) {
            return p.clone();
        }
        let poly = match first_ascent(w) {
            None => staircase(w.size()),
            Some(i) => {
                let parent = w.right_s(i);
                self.schubert(&parent).divided_difference(i as usize)
            }
        };
        let arc = Arc::new(poly);
        self.schubert
            .write()
            .unwrap()
            .entry(w.word().to_vec())
            .or_insert(arc)
            .clone()
    }

    /// The Grothendieck polynomial of `w` (top monomial convention: the
    /// staircase, lowest-degree part the Schubert polynomial).
    pub fn grothendieck(&self, w: &Permutation) -> Arc<Poly<BigInt>> {
        if let Some(p) = self.grothendieck.read().unwrap().get(w.word()) {
            return p.clone();
        }
        let poly = match first_ascent(w) {
            None => staircase(w.size()),
            Some(i) => {
                let parent = w.right_s(i);
                self.grothendieck(&parent)
                    .isobaric_divided_difference(i as usize)
            }
        };
        let arc = Arc::new(poly);
        self.grothendieck
            .write()
            .unwrap()
            .entry(w.word().to_vec())
            .or_insert(arc)
            .clone()
    }

    /// The beta-deformed Grothendieck polynomial of `w`, computed by the
    /// deformed recursion `N_i((1 + b x_{i+1}) f)`. Rescaling the plain
    /// Grothendieck polynomial gives the same result; the test suite checks
    /// the two routes against each other.
    pub fn beta_grothendieck(&self, w: &Permutation) -> Arc<Poly<BetaPoly>> {
        if let Some(p) = self.beta_grothendieck.read().unwrap().get(w.word()) {
            return p.clone();
        }
        let poly = match first_ascent(w) {
            None => staircase(w.size()),
            Some(i) => {
                let parent = w.right_s(i);
                self.beta_grothendieck(&parent)
                    .isobaric_with(i as usize, &BetaPoly::beta())
            }
        };
        let arc = Arc::new(poly);
        self.beta_grothendieck
            .write()
            .unwrap()
            .entry(w.word().to_vec())
            .or_insert(arc)
            .clone()
    }

    /// `S_w(1,...,1)`, memoized; strictly positive for every `w`.
    pub fn schubert_ones(&self, w: &Permutation) -> BigInt {
        if let Some(v) = self.ones.read().unwrap().get(w.word()) {
            return v.clone();
        }
        let v = self.schubert(w).specialize_ones();
        self.ones
            .write()
            .unwrap()
            .entry(w.word().to_vec())
            .or_insert(v)
            .clone()
    }

    /// Expansion of `S_u * S_v` in the Schubert basis, memoized. The product
    /// is commutative, so the memo key is the sorted pair.
    pub fn schubert_product(&self, u: &Permutation, v: &Permutation) -> Arc<Expansion<BigInt>> {
        let key = product_key(u, v);
        if let Some(e) = self.schubert_products.read().unwrap().get(&key) {
            return e.clone();
        }
        let f = self.schubert(u).mul(&self.schubert(v));
        let exp = Arc::new(expand_in_schubert(&f, self));
        self.schubert_products
            .write()
            .unwrap()
            .entry(key)
            .or_insert(exp)
            .clone()
    }

    /// Expansion of `G_u * G_v` in the Grothendieck basis, memoized.
    pub fn grothendieck_product(&self, u: &Permutation, v: &Permutation) -> Arc<Expansion<BigInt>> {
        let key = product_key(u, v);
        if let Some(e) = self.grothendieck_products.read().unwrap().get(&key) {
            return e.clone();
        }
        let f = self.grothendieck(u).mul(&self.grothendieck(v));
        let exp = Arc::new(expand_in_grothendieck(&f, self));
        self.grothendieck_products
            .write()
            .unwrap()
            .entry(key)
            .or_insert(exp)
            .clone()
    }

    /// Expansion of the product of two beta-Grothendieck polynomials in the
    /// beta-Grothendieck basis, memoized.
    pub fn beta_product(&self, u: &Permutation, v: &Permutation) -> Arc<Expansion<BetaPoly>> {
        let key = product_key(u, v);
        if let Some(e) = self.beta_products.read().unwrap().get(&key) {
            return e.clone();
        }
        let f = self.beta_grothendieck(u).mul(&self.beta_grothendieck(v));
        let exp = Arc::new(expand_in_beta_grothendieck(&f, self));
        self.beta_products
            .write()
            .unwrap()
            .entry(key)
            .or_insert(exp)
            .clone()
    }

    /// Contents of the Schubert memo, for cache persistence.
    pub fn schubert_entries(&self) -> Vec<(Permutation, Poly<BigInt>)> {
        let map = self.schubert.read().unwrap();
        let mut out: Vec<(Permutation, Poly<BigInt>)> = map
            .iter()
            .map(|(w, p)| {
                (
                    Permutation::from_one_line(w).expect("cache key is a valid word"),
                    (**p).clone(),
                )
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn grothendieck_entries(&self) -> Vec<(Permutation, Poly<BigInt>)> {
        let map = self.grothendieck.read().unwrap();
        let mut out: Vec<(Permutation, Poly<BigInt>)> = map
            .iter()
            .map(|(w, p)| {
                (
                    Permutation::from_one_line(w).expect("cache key is a valid word"),
                    (**p).clone(),
                )
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn beta_grothendieck_entries(&self) -> Vec<(Permutation, Poly<BetaPoly>)> {
        let map = self.beta_grothendieck.read().unwrap();
        let mut out: Vec<(Permutation, Poly<BetaPoly>)> = map
            .iter()
            .map(|(w, p)| {
                (
                    Permutation::from_one_line(w).expect("cache key is a valid word"),
                    (**p).clone(),
                )
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Seed the Schubert memo, e.g. from a persisted cache file. Entries are
    /// trusted as-is; corrupt files must be rejected by the loader.
    pub fn seed_schubert(&self, entries: impl IntoIterator<Item = (Permutation, Poly<BigInt>)>) {
        let mut map = self.schubert.write().unwrap();
        for (w, p) in entries {
            map.entry(w.word().to_vec()).or_insert_with(|| Arc::new(p));
        }
    }

    pub fn seed_grothendieck(
        &self,
        entries: impl IntoIterator<Item = (Permutation, Poly<BigInt>)>,
    ) {
        let mut map = self.grothendieck.write().unwrap();
        for (w, p) in entries {
            map.entry(w.word().to_vec()).or_insert_with(|| Arc::new(p));
        }
    }

    pub fn seed_beta_grothendieck(
        &self,
        entries: impl IntoIterator<Item = (Permutation, Poly<BetaPoly>)>,
    ) {
        let mut map = self.beta_grothendieck.write().unwrap();
        for (w, p) in entries {
            map.entry(w.word().to_vec()).or_insert_with(|| Arc::new(p));
        }
    }
}

fn product_key(u: &Permutation, v: &Permutation) -> (Vec<u32>, Vec<u32>) {
    let (a, b) = if u <= v { (u, v) } else { (v, u) };
    (a.word().to_vec(), b.word().to_vec())
}

/// Pads an exponent vector into a feasible Lehmer code and returns the
/// permutation with that code.
fn permutation_of_monomial(m: &Mono) -> Permutation {
    let exps = m.exponents();
    let mut rank = exps.len();
    for (idx, &e) in exps.iter().enumerate() {
        rank = rank.max(idx + 1 + e as usize);
    }
    let mut code = exps.to_vec();
    code.resize(rank, 0);
    match Permutation::from_lehmer_code(&code) {
        Ok(w) => w,
        Err(e) => panic!("expansion produced an infeasible Lehmer code {code:?}: {e}"),
    }
}

/// Upper bound on the number of elimination steps: the number of monomials
/// of degree at most `deg` in `vars` variables, saturating.
fn elimination_bound(vars: u64, deg: u64) -> u64 {
    let mut acc: u64 = 1;
    for i in 1..=vars.min(deg) {
        let (n, d) = if vars < deg { (deg + i, i) } else { (vars + i, i) };
        acc = acc.saturating_mul(n).saturating_add(d - 1) / d;
    }
    acc.max(1)
}

/// Expands `f` in the Schubert basis by repeated leading-term elimination.
///
/// Each step subtracts `c * S_w` where `x^code(w)` is the maximal monomial of
/// the residual; the maximal monomial must strictly decrease, which both
/// proves termination and checks the term-order assumption. Works over any
/// coefficient ring since Schubert polynomials have integer coefficients.
pub fn expand_in_schubert<C: Ring>(f: &Poly<C>, cache: &PolyCache) -> Expansion<C> {
    let mut out = Expansion::empty(Basis::Schubert);
    let mut residual = f.clone();
    let bound = elimination_bound(
        f.max_var() as u64 + f.max_degree().unwrap_or(0),
        f.max_degree().unwrap_or(0),
    );
    let mut steps: u64 = 0;
    let mut prev: Option<Mono> = None;
    while let Some((m, c)) = residual.leading() {
        let (m, c) = (m.clone(), c.clone());
        if let Some(p) = &prev {
            assert!(
                m < *p,
                "leading monomial failed to decrease ({m:?} after {p:?}); term-order assumption violated"
            );
        }
        steps += 1;
        assert!(
            steps <= bound,
            "Schubert expansion exceeded its step bound {bound}; term-order assumption violated"
        );
        let w = permutation_of_monomial(&m);
        let basis = cache.schubert(&w).map_coeffs(|k| C::from_int(k));
        residual = residual.sub(&basis.scale(&c));
        out.add(w, c);
        prev = Some(m);
    }
    debug_assert!(
        recompose_with(&out, |w| cache.schubert(w).map_coeffs(|k| C::from_int(k))) == *f,
        "Schubert expansion failed to recompose"
    );
    out
}

/// Expands `f` in a Grothendieck-type basis by lowest-degree-first peeling:
/// the minimal homogeneous component of the residual is expanded in the
/// Schubert basis, the matching combination of basis elements is subtracted,
/// and the minimal degree strictly increases.
fn expand_lowest_first<C: Ring>(
    f: &Poly<C>,
    cache: &PolyCache,
    basis: Basis,
    basis_poly: impl Fn(&Permutation) -> Poly<C>,
) -> Expansion<C> {
    let mut out = Expansion::empty(basis);
    let mut residual = f.clone();
    while let Some(d) = residual.min_degree() {
        let component = residual.component(d);
        let piece = expand_in_schubert(&component, cache);
        for (w, c) in piece.iter() {
            debug_assert_eq!(w.length(), d, "minimal component expansion off-grade");
            residual = residual.sub(&basis_poly(w).scale(c));
            out.add(w.clone(), c.clone());
        }
        match residual.min_degree() {
            None => break,
            Some(d2) => assert!(
                d2 > d,
                "minimal degree failed to increase in Grothendieck expansion"
            ),
        }
    }
    out
}

/// Expansion in the Grothendieck basis over `Z`.
pub fn expand_in_grothendieck(f: &Poly<BigInt>, cache: &PolyCache) -> Expansion<BigInt> {
    let out = expand_lowest_first(f, cache, Basis::Grothendieck, |w| {
        (*cache.grothendieck(w)).clone()
    });
    debug_assert!(
        recompose_with(&out, |w| (*cache.grothendieck(w)).clone()) == *f,
        "Grothendieck expansion failed to recompose"
    );
    out
}

/// Expansion in the beta-Grothendieck basis over `Z[b]`.
pub fn expand_in_beta_grothendieck(
    f: &Poly<BetaPoly>,
    cache: &PolyCache,
) -> Expansion<BetaPoly> {
    let out = expand_lowest_first(f, cache, Basis::BetaGrothendieck, |w| {
        (*cache.beta_grothendieck(w)).clone()
    });
    debug_assert!(
        recompose_with(&out, |w| (*cache.beta_grothendieck(w)).clone()) == *f,
        "beta-Grothendieck expansion failed to recompose"
    );
    out
}

/// Rebuilds the polynomial an expansion stands for.
pub fn recompose_with<C: Ring>(
    e: &Expansion<C>,
    basis_poly: impl Fn(&Permutation) -> Poly<C>,
) -> Poly<C> {
    let mut acc = Poly::zero();
    for (w, c) in e.iter() {
        acc = acc.add(&basis_poly(w).scale(c));
    }
    acc
}

impl Expansion<BigInt> {
    /// Recomposition against the cache's basis polynomials.
    pub fn recompose(&self, cache: &PolyCache) -> Poly<BigInt> {
        match self.basis {
            Basis::Schubert => recompose_with(self, |w| (*cache.schubert(w)).clone()),
            Basis::Grothendieck => recompose_with(self, |w| (*cache.grothendieck(w)).clone()),
            Basis::BetaGrothendieck => {
                panic!("integer expansion cannot use the beta basis")
            }
        }
    }
}

impl Expansion<BetaPoly> {
    pub fn recompose(&self, cache: &PolyCache) -> Poly<BetaPoly> {
        assert_eq!(self.basis, Basis::BetaGrothendieck);
        recompose_with(self, |w| (*cache.beta_grothendieck(w)).clone())
    }
}

/// The coefficient of `S_w` in `S_u * S_v`: a nonnegative integer, zero
/// unless the lengths add up.
pub fn structure_coeff(
    cache: &PolyCache,
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
) -> BigInt {
    cache.schubert_product(u, v).coeff(w)
}

/// Full expansion of `S_u * S_v` in the Schubert basis.
pub fn product_expansion(
    cache: &PolyCache,
    u: &Permutation,
    v: &Permutation,
) -> Arc<Expansion<BigInt>> {
    cache.schubert_product(u, v)
}

/// The coefficient of `G_w` in `G_u * G_v`.
pub fn k_coeff(cache: &PolyCache, u: &Permutation, v: &Permutation, w: &Permutation) -> BigInt {
    cache.grothendieck_product(u, v).coeff(w)
}

/// The `Z[b]` coefficient in the beta-Grothendieck product expansion.
/// Specializing at `b = -1` recovers [`k_coeff`].
pub fn k_coeff_beta(
    cache: &PolyCache,
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
) -> BetaPoly {
    cache.beta_product(u, v).coeff(w)
}

/// Product expansion in the Grothendieck (`Z`) basis.
pub fn k_product_expansion(
    cache: &PolyCache,
    u: &Permutation,
    v: &Permutation,
) -> Arc<Expansion<BigInt>> {
    cache.grothendieck_product(u, v)
}

/// Product expansion in the beta-Grothendieck basis.
pub fn k_product_expansion_beta(
    cache: &PolyCache,
    u: &Permutation,
    v: &Permutation,
) -> Arc<Expansion<BetaPoly>> {
    cache.beta_product(u, v)
}

/// Rescaling route to the beta-Grothendieck polynomial: substitute
/// `x_i -> -b x_i` in `G_w` and divide by `(-b)^{l(w)}`. Used as the
/// independent cross-check of the deformed recursion.
pub fn beta_grothendieck_by_rescaling(cache: &PolyCache, w: &Permutation) -> Poly<BetaPoly> {
    let g = cache.grothendieck(w);
    let len = w.length();
    let mut out: Poly<BetaPoly> = Poly::zero();
    for (m, c) in g.iter() {
        let d = m.degree();
        assert!(d >= len, "Grothendieck polynomial has a term below its length");
        // (-b)^(d - len) * c
        let k = (d - len) as usize;
        let mut coeffs = vec![BigInt::from(0); k + 1];
        coeffs[k] = if k % 2 == 0 { c.clone() } else { -c.clone() };
        out = out.add(&Poly::monomial(m.clone(), BetaPoly::from_coeffs(coeffs)));
    }
    out
}

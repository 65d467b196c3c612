//! Sparse formal sums with integer coefficients, tensor terms and Koszul signs.
//!
//! A [`FormalSum`] never stores a zero coefficient, and its terms are kept in
//! key order, so equal sums compare, hash and print identically.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use thiserror::Error;

/// Scalars usable as coefficients: exact signed integers such as `i64` or `BigInt`.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + fmt::Display
    + Ord
    + Signed
    + Integer
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_int(x: i64) -> Self {
        Self::from_i64(x).expect("coefficient out of range")
    }

    /// `(-1)^e`.
    fn sign(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl<T> Coefficient for T where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + Ord
        + Signed
        + Integer
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Basis elements that carry a homological degree.
pub trait Graded {
    fn degree(&self) -> i64;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("mixed degrees in one formal sum: {0} and {1}")]
    MixedDegree(i64, i64),
    #[error("modulus must be positive, got {0}")]
    BadModulus(String),
}

/// A finite linear combination of basis keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSum<K: Ord, R = i64> {
    terms: BTreeMap<K, R>,
}

impl<K: Ord, R> Default for FormalSum<K, R> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, R: Coefficient> FormalSum<K, R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(key: K, coeff: R) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coeff);
        s
    }

    /// The basis element `key` with coefficient one.
    pub fn basis(key: K) -> Self {
        Self::monomial(key, R::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, R> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, R> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> R {
        self.terms.get(key).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, key: K, coeff: R) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &R) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn scaled(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Extend a map on basis keys linearly.
    pub fn linear<K2, F>(&self, mut f: F) -> FormalSum<K2, R>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> FormalSum<K2, R>,
    {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabel basis keys; `None` sends a key to zero, the returned scalar multiplies it.
    pub fn map_basis<K2, F>(&self, mut f: F) -> FormalSum<K2, R>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Option<(K2, R)>,
    {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            if let Some((k2, s)) = f(k) {
                out.add_term(k2, s * c.clone());
            }
        }
        out
    }

    /// Coefficients reduced to the range `0..p`.
    pub fn reduce_mod(&self, p: &R) -> Self {
        assert!(p.is_positive(), "modulus must be positive");
        self.iter()
            .map(|(k, c)| (k.clone(), c.mod_floor(p)))
            .collect()
    }

    /// Whether every coefficient is divisible by `p`.
    pub fn is_zero_mod(&self, p: &R) -> bool {
        self.iter().all(|(_, c)| c.mod_floor(p).is_zero())
    }
}

impl<K: Ord + Clone + Graded, R: Coefficient> FormalSum<K, R> {
    /// The common degree of all terms, `None` for the zero sum.
    pub fn degree(&self) -> Result<Option<i64>, AlgebraError> {
        let mut deg = None;
        for k in self.keys() {
            let d = k.degree();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(AlgebraError::MixedDegree(e, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Build a sum from terms, rejecting mixed degrees.
    pub fn homogeneous<I: IntoIterator<Item = (K, R)>>(terms: I) -> Result<Self, AlgebraError> {
        let s: Self = terms.into_iter().collect();
        s.degree()?;
        Ok(s)
    }
}

impl<K: Ord + Clone, R: Coefficient> FromIterator<(K, R)> for FormalSum<K, R> {
    fn from_iter<I: IntoIterator<Item = (K, R)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord, R> IntoIterator for FormalSum<K, R> {
    type Item = (K, R);
    type IntoIter = btree_map::IntoIter<K, R>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord, R> IntoIterator for &'a FormalSum<K, R> {
    type Item = (&'a K, &'a R);
    type IntoIter = btree_map::Iter<'a, K, R>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone, R: Coefficient> AddAssign<&FormalSum<K, R>> for FormalSum<K, R> {
    fn add_assign(&mut self, rhs: &FormalSum<K, R>) {
        self.add_scaled(rhs, &R::one());
    }
}

impl<K: Ord + Clone, R: Coefficient> SubAssign<&FormalSum<K, R>> for FormalSum<K, R> {
    fn sub_assign(&mut self, rhs: &FormalSum<K, R>) {
        self.add_scaled(rhs, &-R::one());
    }
}

impl<K: Ord + Clone, R: Coefficient> Add for FormalSum<K, R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone, R: Coefficient> Sub for FormalSum<K, R> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone, R: Coefficient> Neg for FormalSum<K, R> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scaled(&-R::one())
    }
}

impl<K: Ord + fmt::Display, R: Coefficient> fmt::Display for FormalSum<K, R> {
    /// Canonical text form `c1*key1 + c2*key2`, unit coefficients left implicit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let a = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if a.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{a}*{k}")?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Debug, R: fmt::Debug> fmt::Debug for FormalSum<K, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// A pair of basis keys, the basis of a tensor product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor<A, B>(pub A, pub B);

impl<A: Graded, B: Graded> Graded for Tensor<A, B> {
    fn degree(&self) -> i64 {
        self.0.degree() + self.1.degree()
    }
}

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Tensor<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.0, self.1)
    }
}

/// Bilinear tensor product of two sums. No sign arises since nothing is transposed.
pub fn tensor<A, B, R>(a: &FormalSum<A, R>, b: &FormalSum<B, R>) -> FormalSum<Tensor<A, B>, R>
where
    A: Ord + Clone,
    B: Ord + Clone,
    R: Coefficient,
{
    let mut out = FormalSum::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            out.add_term(Tensor(x.clone(), y.clone()), cx.clone() * cy.clone());
        }
    }
    out
}

/// Differential of a tensor product, `∂(a⊗b) = ∂a⊗b + (-1)^{|a|} a⊗∂b`.
pub fn tensor_boundary<A, B, R, DA, DB>(
    t: &FormalSum<Tensor<A, B>, R>,
    da: DA,
    db: DB,
) -> FormalSum<Tensor<A, B>, R>
where
    A: Ord + Clone + Graded,
    B: Ord + Clone + Graded,
    R: Coefficient,
    DA: Fn(&A) -> FormalSum<A, R>,
    DB: Fn(&B) -> FormalSum<B, R>,
{
    let mut out = FormalSum::zero();
    for (Tensor(a, b), c) in t {
        for (x, cx) in &da(a) {
            out.add_term(Tensor(x.clone(), b.clone()), cx.clone() * c.clone());
        }
        let s = R::sign(a.degree());
        for (y, cy) in &db(b) {
            out.add_term(Tensor(a.clone(), y.clone()), cy.clone() * c.clone() * s.clone());
        }
    }
    out
}

/// A tensor word `x_1 ⊗ ... ⊗ x_k` of graded keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord<K>(pub Vec<K>);

impl<K: Graded> Graded for TensorWord<K> {
    fn degree(&self) -> i64 {
        self.0.iter().map(Graded::degree).sum()
    }
}

impl<K: fmt::Display> fmt::Display for TensorWord<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// Exponent of the Koszul sign for listing factors of the given degrees in the
/// order `order` (output slot `j` holds input factor `order[j]`).
pub fn koszul_exponent(degrees: &[i64], order: &[usize]) -> i64 {
    let mut e = 0;
    for j in 0..order.len() {
        for l in j + 1..order.len() {
            if order[j] > order[l] {
                e += degrees[order[j]] * degrees[order[l]];
            }
        }
    }
    e
}

/// Reorder a tensor word, returning the Koszul sign and the new word.
pub fn reorder<K: Clone + Graded, R: Coefficient>(word: &TensorWord<K>, order: &[usize]) -> (R, TensorWord<K>) {
    assert_eq!(word.0.len(), order.len(), "reordering must use every factor");
    let degs: Vec<i64> = word.0.iter().map(Graded::degree).collect();
    let e = koszul_exponent(&degs, order);
    (R::sign(e), TensorWord(order.iter().map(|&i| word.0[i].clone()).collect()))
}

/// The differential on maps, `∂∘F - (-1)^{|F|} F∘∂`, evaluated on `x`.
pub fn hom_boundary<A, B, R, F, DA, DB>(x: &FormalSum<A, R>, degree: i64, f: F, d_src: DA, d_tgt: DB) -> FormalSum<B, R>
where
    A: Ord + Clone,
    B: Ord + Clone,
    R: Coefficient,
    F: Fn(&FormalSum<A, R>) -> FormalSum<B, R>,
    DA: Fn(&FormalSum<A, R>) -> FormalSum<A, R>,
    DB: Fn(&FormalSum<B, R>) -> FormalSum<B, R>,
{
    let mut out = d_tgt(&f(x));
    out.add_scaled(&f(&d_src(x)), &-R::sign(degree));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
    struct G(&'static str, i64);
    impl Graded for G {
        fn degree(&self) -> i64 {
            self.1
        }
    }

    #[test]
    fn cancellation_and_accumulation() {
        let mut s: FormalSum<&str> = FormalSum::monomial("x", 2);
        s.add_term("x", -2);
        assert!(s.is_zero());
        let t: FormalSum<&str> = [("x", 1), ("x", 1)].into_iter().collect();
        assert_eq!(t.coeff(&"x"), 2);
        assert!(FormalSum::<&str>::monomial("x", 3).reduce_mod(&3).is_zero());
    }

    #[test]
    fn canonical_text() {
        let s: FormalSum<&str> = [("b", -3), ("a", 1), ("c", -1)].into_iter().collect();
        assert_eq!(s.to_string(), "a - 3*b - c");
        assert_eq!(FormalSum::<&str>::zero().to_string(), "0");
    }

    #[test]
    fn mixed_degree_rejected() {
        let r = FormalSum::<G>::homogeneous([(G("x", 1), 1), (G("y", 2), 1)]);
        assert_eq!(r, Err(AlgebraError::MixedDegree(1, 2)));
    }

    #[test]
    fn tau_two_on_odd_factors() {
        let a = G("a", 1);
        let b = G("b", 1);
        let w = TensorWord(vec![a.clone(), a.clone(), b.clone(), b.clone()]);
        // τ_2 sends slots (1,2,3,4) to (1,3,2,4)
        let (s, w2): (i64, _) = reorder(&w, &[0, 2, 1, 3]);
        assert_eq!(s, -1);
        assert_eq!(w2, TensorWord(vec![a.clone(), b.clone(), a, b]));
    }

    #[test]
    fn tensor_with_zero() {
        let y: FormalSum<&str> = FormalSum::basis("y");
        assert!(tensor(&FormalSum::<&str>::zero(), &y).is_zero());
    }
}

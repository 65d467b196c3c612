//! The Cartan relator `H` in `E(2r)` and the Cartan coboundary `ζ_i`.
//!
//! `F(e_n)` composes `ι(e_n)` with `r` copies of the degree-zero element
//! `e ∈ E(2)`, and `τF` is its relabelling by `τ_r^{-1}`. `G(e_n)` composes
//! `e` with `ι ⊗ ι` of the coproduct. The three homotopies assemble into
//! `H = K1_SIGN·K1∘ι + K2_SIGN·K2∘ι + K3_SIGN·∘_E(e; K3)`, which satisfies
//! `∂H(e_n) + H(∂e_n) = τF(e_n) - G(e_n)`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::algebra::{Coefficient, FormalSum, Graded, Tensor};
use crate::barratt_eccles::{be_boundary, be_compose, c_to_be, relabel, unit, BeChain, BeTuple, CChain, CTuple, Operation};
use crate::resolution::{iota, w_boundary, w_coproduct, WGen};
use crate::simplicial::{seq_nondegenerate, shi, Cochain, FiniteSet, PointSeq, Product};
use crate::steenrod::{check_odd_prime, SteenrodError};
use crate::symmetric::{block_compose, f_hom, g_hom, rho, tau, Perm};

/// Orientation of `K1` inside `H`: `∂K1 + K1∂ = g - τ^{-1}f`.
pub const K1_SIGN: i64 = -1;
/// Orientation of `K2` inside `H`: `∂K2 + K2∂ = ∘_E(e; Δ_AW) - g`.
pub const K2_SIGN: i64 = -1;
/// Orientation of `K3` inside `H`: `∂K3 + K3∂ = (ι⊗ι)Δ - Δ_AW ι`.
pub const K3_SIGN: i64 = -1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
}

fn e2<R: Coefficient>() -> BeChain<R> {
    BeChain::basis(unit(2))
}

/// `F(g) = ∘_E(ι(g); e, …, e)` in `E(2r)`.
pub fn f_element<R: Coefficient>(r: usize, g: WGen) -> BeChain<R> {
    let x = c_to_be(&iota::<R>(r, g), r);
    be_compose(&x, &vec![e2(); r]).expect("arity")
}

/// `τF(g)`, the relabelling of `F(g)` by `τ_r^{-1}`.
pub fn tau_f_element<R: Coefficient>(r: usize, g: WGen) -> BeChain<R> {
    relabel(&f_element(r, g), &tau(r).inverse())
}

/// `G(g) = Σ ∘_E(e; ι(g'), ι(g''))` over the coproduct `Δ(g) = Σ g'⊗g''`.
pub fn g_element<R: Coefficient>(r: usize, g: WGen) -> BeChain<R> {
    let mut out = FormalSum::zero();
    for (Tensor(a, b), c) in &w_coproduct::<R>(r, g) {
        let left = c_to_be(&iota(r, *a), r);
        let right = c_to_be(&iota(r, *b), r);
        out.add_scaled(&be_compose(&e2(), &[left, right]).expect("arity"), c);
    }
    out
}

/// `K1(a) = Σ_i (-1)^i (τ^{-1}f(a_0), …, τ^{-1}f(a_i), g(a_i), …, g(a_n))`.
pub fn k1<R: Coefficient>(r: usize, t: &CTuple) -> BeChain<R> {
    let ti = tau(r).inverse();
    let fs: Vec<Perm> = t.0.iter().map(|&a| ti.compose(&f_hom(r, a as usize))).collect();
    let gs: Vec<Perm> = t.0.iter().map(|&a| g_hom(r, a as usize)).collect();
    let mut out = FormalSum::zero();
    for i in 0..t.0.len() {
        let entries: Vec<Perm> = fs[..=i].iter().chain(&gs[i..]).cloned().collect();
        if seq_nondegenerate(&entries) {
            out.add_term(BeTuple(entries), R::sign(i as i64));
        }
    }
    out
}

/// `K2 = ∘_ES ∘ SHI ∘ E(e × id) ∘ E(D)`: the Eilenberg–Zilber homotopy applied to
/// the diagonal tuple `((ρ^{a_i}, ρ^{a_i}))_i`, then blockwise `e(x, y)`.
pub fn k2<R: Coefficient>(r: usize, t: &CTuple) -> BeChain<R> {
    let seq: Vec<Perm> = t.0.iter().map(|&a| rho(r, a as usize)).collect();
    let xy = Product::new(PointSeq::<Perm>::new(), PointSeq::<Perm>::new());
    let homotopy = shi(&xy, &FormalSum::<(Vec<Perm>, Vec<Perm>), R>::basis((seq.clone(), seq)));
    let id2 = Perm::identity(2);
    let mut out = FormalSum::zero();
    for ((a, b), c) in &homotopy {
        let pts: Vec<Perm> = a.iter().zip(b).map(|(x, y)| block_compose(&id2, &[x.clone(), y.clone()]).expect("arity")).collect();
        if seq_nondegenerate(&pts) {
            out.add_term(BeTuple(pts), c.clone());
        }
    }
    out
}

pub fn k1_chain<R: Coefficient>(r: usize, x: &CChain<R>) -> BeChain<R> {
    x.linear(|t| k1(r, t))
}

pub fn k2_chain<R: Coefficient>(r: usize, x: &CChain<R>) -> BeChain<R> {
    x.linear(|t| k2(r, t))
}

/// Number of increasing consecutive pairs `a_i < a_{i+1}`.
pub fn alpha(seq: &[usize]) -> usize {
    seq.windows(2).filter(|w| w[0] < w[1]).count()
}

/// All sequences in `{0,…,r-1}^len`, lexicographically.
pub(crate) fn sequences(r: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = r.pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = idx % r;
            idx /= r;
        }
        v
    })
}

pub(crate) fn pairs_seq(start: &[usize], s: &[usize], r: usize) -> Vec<usize> {
    let mut v = start.to_vec();
    for &x in s {
        v.push(x);
        v.push((x + 1) % r);
    }
    v
}

/// `K3(e_{2i}) = Σ φ(0,s;t)` and `K3(e_{2i+1}) = Σ φ(1,s;t)` over `j+k = i+1`, `k ≥ 1`,
/// with `φ(0,s;t) = α(s,t_1)·(0,s_1,s_1+1,…)⊗(t_1,t_1+1,…)` and
/// `φ(1,s;t) = -α(s-1,t_1-1)·(0,1,s_1,s_1+1,…)⊗(t_1,t_1+1,…)`; shifted by `ρ^k`.
pub fn k3<R: Coefficient>(r: usize, g: WGen) -> FormalSum<Tensor<CTuple, CTuple>, R> {
    let mut out = FormalSum::zero();
    if g.n == 0 {
        return out;
    }
    let odd = g.n % 2 == 1;
    let i = g.n / 2;
    for j in 0..=i {
        let k = i + 1 - j;
        for s in sequences(r, j) {
            for t in sequences(r, k) {
                let c = if odd {
                    let mut w: Vec<usize> = s.iter().map(|&x| (x + r - 1) % r).collect();
                    w.push((t[0] + r - 1) % r);
                    -(alpha(&w) as i64)
                } else {
                    let mut w = s.clone();
                    w.push(t[0]);
                    alpha(&w) as i64
                };
                if c == 0 {
                    continue;
                }
                let start: &[usize] = if odd { &[0, 1 % r] } else { &[0] };
                let left = CTuple::new(&pairs_seq(start, &s, r)).shift(g.k, r);
                let right = CTuple::new(&pairs_seq(&[], &t, r)).shift(g.k, r);
                if !left.is_degenerate() && !right.is_degenerate() {
                    out.add_term(Tensor(left, right), R::from_int(c));
                }
            }
        }
    }
    out
}

/// `∘_E(e; K3(g))` in `E(2r)`.
pub fn k3_element<R: Coefficient>(r: usize, g: WGen) -> BeChain<R> {
    let mut out = FormalSum::zero();
    for (Tensor(a, b), c) in &k3::<R>(r, g) {
        let left = BeChain::basis(a.to_be(r));
        let right = BeChain::basis(b.to_be(r));
        out.add_scaled(&be_compose(&e2(), &[left, right]).expect("arity"), c);
    }
    out
}

/// A value `H(e_i)` of the relator.
#[derive(Clone, Debug)]
pub struct RelatorTerm<R: Coefficient = i64> {
    pub source: WGen,
    pub arity: usize,
    pub value: BeChain<R>,
}

impl<R: Coefficient> RelatorTerm<R> {
    pub fn degree(&self) -> i64 {
        self.source.n as i64 + 1
    }
}

/// `H(g)` in `E(2r)`.
pub fn relator<R: Coefficient>(r: usize, g: WGen) -> RelatorTerm<R> {
    let io = iota::<R>(r, g);
    let mut value = FormalSum::zero();
    value.add_scaled(&k1_chain(r, &io), &R::from_int(K1_SIGN));
    value.add_scaled(&k2_chain(r, &io), &R::from_int(K2_SIGN));
    value.add_scaled(&k3_element(r, g), &R::from_int(K3_SIGN));
    debug_assert!(value.keys().all(|t| t.degree() == g.n as i64 + 1));
    RelatorTerm { source: g, arity: 2 * r, value }
}

/// `∂H(g) + H(∂g)`, which equals `τF(g) - G(g)`.
pub fn relator_defect<R: Coefficient>(r: usize, g: WGen) -> BeChain<R> {
    let mut out = be_boundary(&relator::<R>(r, g).value);
    for (h, c) in &w_boundary::<R>(r, g) {
        out.add_scaled(&relator::<R>(r, *h).value, c);
    }
    out
}

type CachedRelator<R> = Arc<(RelatorTerm<R>, Operation<R>)>;

/// Cached relator values and their table reductions, keyed by `(r, e_i)`.
#[derive(Default)]
pub struct RelatorCache<R: Coefficient = i64> {
    entries: RwLock<HashMap<(usize, WGen), CachedRelator<R>>>,
}

impl<R: Coefficient> RelatorCache<R> {
    pub fn new() -> Self {
        Self { entries: RwLock::new(HashMap::new()) }
    }

    pub fn get(&self, r: usize, g: WGen) -> Arc<(RelatorTerm<R>, Operation<R>)> {
        if let Some(e) = self.entries.read().expect("cache lock").get(&(r, g)) {
            return e.clone();
        }
        let term = relator::<R>(r, g);
        let op = Operation::new(2 * r, term.degree(), &term.value);
        let entry = Arc::new((term, op));
        self.entries.write().expect("cache lock").entry((r, g)).or_insert(entry).clone()
    }
}

fn ensure_inputs<R: Coefficient>(p: u64, a: &Cochain<R>, b: &Cochain<R>, host: &FiniteSet) -> Result<(), CartanError> {
    check_odd_prime(p)?;
    let pr = R::from_u64(p).expect("prime fits");
    for c in [a, b] {
        if !c.is_cocycle_mod(host, &pr) {
            return Err(SteenrodError::NotCocycle(p).into());
        }
    }
    Ok(())
}

fn psi<R: Coefficient>(p: usize, i: usize, c: &Cochain<R>, host: &FiniteSet) -> Cochain<R> {
    crate::resolution::cup_ri(p, i, &vec![c; p], host)
}

/// `C^p(i)(a,b)` without input checks, on arbitrary cochains.
pub fn cartan_lift_unchecked<R: Coefficient>(p: u64, i: usize, a: &Cochain<R>, b: &Cochain<R>, host: &FiniteSet) -> Cochain<R> {
    let pu = p as usize;
    let m = (pu - 1) / 2;
    let sign = R::sign((m * a.degree * b.degree) as i64);
    let ab = a.cup(b, host);
    let mut out = psi(pu, i, &ab, host).scaled(&sign);
    let mut sub = |x: Cochain<R>, y: Cochain<R>, c: R| {
        if !x.is_zero() && !y.is_zero() {
            out.add_scaled(&x.cup(&y, host), &c);
        }
    };
    if i % 2 == 0 {
        for j in 0..=i / 2 {
            let k = i / 2 - j;
            sub(psi(pu, 2 * j, a, host), psi(pu, 2 * k, b, host), -R::one());
        }
    } else {
        for j in 0..=(i - 1) / 2 {
            let k = (i - 1) / 2 - j;
            sub(psi(pu, 2 * j + 1, a, host), psi(pu, 2 * k, b, host), -R::one());
            sub(psi(pu, 2 * j, a, host), psi(pu, 2 * k + 1, b, host), -R::sign(a.degree as i64));
        }
    }
    out
}

/// The integral lift `C^p(i)(a,b)` of the Cartan formula, for mod-`p` cocycles.
pub fn cartan_lift<R: Coefficient>(p: u64, i: usize, a: &Cochain<R>, b: &Cochain<R>, host: &FiniteSet) -> Result<Cochain<R>, CartanError> {
    ensure_inputs(p, a, b, host)?;
    Ok(cartan_lift_unchecked(p, i, a, b, host))
}

/// The input list `a^{⊗p} ⊗ b^{⊗p}`.
pub fn powers<'a, R: Coefficient>(p: usize, a: &'a Cochain<R>, b: &'a Cochain<R>) -> Vec<&'a Cochain<R>> {
    let mut v = vec![a; p];
    v.extend(std::iter::repeat_n(b, p));
    v
}

/// `ζ_i(a,b) = H(e_i)(a^{⊗p} ⊗ b^{⊗p})` on arbitrary cochains.
pub fn zeta_unchecked<R: Coefficient>(cache: &RelatorCache<R>, p: u64, i: usize, a: &Cochain<R>, b: &Cochain<R>, host: &FiniteSet) -> Cochain<R> {
    let entry = cache.get(p as usize, WGen::e(i));
    entry.1.apply(&powers(p as usize, a, b), host)
}

/// The Cartan coboundary `ζ_i(a,b)`, with `δζ_i(a,b) ≡ C^p(i)(a,b) mod p`.
pub fn zeta<R: Coefficient>(cache: &RelatorCache<R>, p: u64, i: usize, a: &Cochain<R>, b: &Cochain<R>, host: &FiniteSet) -> Result<Cochain<R>, CartanError> {
    ensure_inputs(p, a, b, host)?;
    Ok(zeta_unchecked(cache, p, i, a, b, host))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(v: &[usize]) -> CTuple {
        CTuple::new(v)
    }

    #[test]
    fn k1_on_vertex() {
        let x: BeChain = k1(3, &ct(&[0]));
        assert_eq!(x, BeChain::basis(BeTuple(vec![tau(3).inverse(), Perm::identity(6)])));
        assert!(k1::<i64>(2, &ct(&[0, 0])).is_zero());
    }

    #[test]
    fn k2_vanishes_in_degree_zero() {
        assert!(k2::<i64>(3, &ct(&[1])).is_zero());
    }

    #[test]
    fn k3_table_rows() {
        let x: FormalSum<Tensor<CTuple, CTuple>> = k3(4, WGen::e(2));
        assert_eq!(x.to_string(), "(0,1,2)⊗(2,3) + (0,1,2)⊗(3,0) + (0,2,3)⊗(3,0)");
        for n in 0..6 {
            assert!(k3::<i64>(2, WGen::e(n)).is_zero());
        }
        assert!(k3::<i64>(5, WGen::e(1)).is_zero());
    }

    #[test]
    fn relator_in_degree_zero() {
        // ∂H(e_0) = τF(e_0) - G(e_0)
        assert_eq!(be_boundary(&relator::<i64>(3, WGen::e(0)).value), tau_f_element(3, WGen::e(0)) - g_element(3, WGen::e(0)));
    }

    #[test]
    fn alpha_counts() {
        assert_eq!(alpha(&[0, 1, 2, 0]), 2);
        assert_eq!(alpha(&[1, 0]), 0);
    }
}

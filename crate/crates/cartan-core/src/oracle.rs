//! Independent constructions of the homotopy between `(ι⊗ι)Δ` and `Δ_AW ι`:
//! the recursion `K(b) = η(μ - ν - K∂)(b)` and the closed `θ_q` formula.
//! Both are compared term by term against [`crate::cartan::k3`].

use std::collections::HashMap;

use itertools::Itertools;

use crate::algebra::{tensor_boundary, Coefficient, FormalSum, Graded, Tensor};
use crate::barratt_eccles::{c_boundary, delta_aw_c, CChain, CTuple};
use crate::cartan::{alpha, k3, pairs_seq, sequences};
use crate::resolution::{iota, w_boundary, w_coproduct, WGen};

pub type CTensor<R = i64> = FormalSum<Tensor<CTuple, CTuple>, R>;

/// `η(s⊗t) = (0,s)⊗t`, zero when the result is degenerate.
pub fn eta_term(t: &Tensor<CTuple, CTuple>) -> Option<Tensor<CTuple, CTuple>> {
    let mut s = vec![0u8];
    s.extend_from_slice(&t.0 .0);
    let s = CTuple(s);
    (!s.is_degenerate()).then(|| Tensor(s, t.1.clone()))
}

pub fn eta<R: Coefficient>(x: &CTensor<R>) -> CTensor<R> {
    x.map_basis(|t| eta_term(t).map(|u| (u, R::one())))
}

/// `ε(s⊗t) = ρ^0⊗t` when `s` has degree zero. This is the projection for which
/// `∂η + η∂ = id - ε` holds on all of `C(r)⊗C(r)`.
pub fn epsilon<R: Coefficient>(x: &CTensor<R>) -> CTensor<R> {
    x.map_basis(|t| (t.0.degree() == 0).then(|| (Tensor(CTuple(vec![0]), t.1.clone()), R::one())))
}

/// The variant keyed on total degree, nonzero only when the whole tensor has degree zero.
pub fn epsilon_total_degree<R: Coefficient>(x: &CTensor<R>) -> CTensor<R> {
    x.map_basis(|t| (t.degree() == 0).then(|| (Tensor(CTuple(vec![0]), t.1.clone()), R::one())))
}

pub fn ctensor_boundary<R: Coefficient>(x: &CTensor<R>) -> CTensor<R> {
    tensor_boundary(x, |a| c_boundary(&CChain::basis(a.clone())), |b| c_boundary(&CChain::basis(b.clone())))
}

/// `μ(g) = (ι⊗ι)Δ(g)`.
pub fn mu<R: Coefficient>(r: usize, g: WGen) -> CTensor<R> {
    let mut out = FormalSum::zero();
    for (Tensor(a, b), c) in &w_coproduct::<R>(r, g) {
        let (ia, ib) = (iota::<R>(r, *a), iota::<R>(r, *b));
        for (x, cx) in &ia {
            for (y, cy) in &ib {
                out.add_term(Tensor(x.clone(), y.clone()), c.clone() * cx.clone() * cy.clone());
            }
        }
    }
    out
}

/// `ν(g) = Δ_AW ι(g)`.
pub fn nu_map<R: Coefficient>(r: usize, g: WGen) -> CTensor<R> {
    delta_aw_c(&iota::<R>(r, g))
}

pub fn shift_tensor<R: Coefficient>(x: &CTensor<R>, k: usize, r: usize) -> CTensor<R> {
    x.map_basis(|Tensor(a, b)| Some((Tensor(a.shift(k, r), b.shift(k, r)), R::one())))
}

/// The recursively defined equivariant homotopy, memoized by degree.
pub struct RecursiveK<R: Coefficient = i64> {
    r: usize,
    memo: HashMap<usize, CTensor<R>>,
}

impl<R: Coefficient> RecursiveK<R> {
    pub fn new(r: usize) -> Self {
        Self { r, memo: HashMap::new() }
    }

    /// `K(e_n)`.
    pub fn e(&mut self, n: usize) -> CTensor<R> {
        if let Some(v) = self.memo.get(&n) {
            return v.clone();
        }
        let r = self.r;
        let mut d = mu::<R>(r, WGen::e(n)) - nu_map(r, WGen::e(n));
        for (h, c) in &w_boundary::<R>(r, WGen::e(n)) {
            let lower = self.e(h.n);
            d.add_scaled(&shift_tensor(&lower, h.k, r), &-c.clone());
        }
        let v = eta(&d);
        self.memo.insert(n, v.clone());
        v
    }

    /// `K(ρ^k e_n)`.
    pub fn get(&mut self, g: WGen) -> CTensor<R> {
        let v = self.e(g.n);
        shift_tensor(&v, g.k, self.r)
    }
}

/// `a ≺ b ≺ c`: representatives with `ā < b̄ < c̄ < ā + r`.
pub fn cyclic_precedes(a: usize, b: usize, c: usize, r: usize) -> bool {
    let lift = |x: usize| if x > a { x } else { x + r };
    a != b && a != c && lift(b) < lift(c)
}

/// `θ_q(flag, s; t)`, or `None` when the cyclic condition fails. `q` is one-based.
pub fn theta_q(flag: u8, s: &[usize], t: &[usize], q: usize, r: usize) -> Option<Tensor<CTuple, CTuple>> {
    let sq = s[q - 1];
    let sminus = if q > 1 { (s[q - 2] + 1) % r } else { 0 };
    let dec = |x: usize| (x + r - 1) % r;
    // the flag-1 condition is the flag-0 condition on (s - 1; t - 1), whose
    // q = 1 lower bound is again 0
    let holds = if flag == 0 {
        cyclic_precedes(sminus, sq, t[0], r)
    } else {
        let lower = if q > 1 { dec(sminus) } else { 0 };
        cyclic_precedes(lower, dec(sq), dec(t[0]), r)
    };
    if !holds {
        return None;
    }
    let start: &[usize] = if flag == 0 { &[0] } else { &[0, 1 % r] };
    Some(Tensor(CTuple::new(&pairs_seq(start, s, r)), CTuple::new(&pairs_seq(&[], t, r))))
}

/// Number of nonvanishing `θ_q`, `1 ≤ q ≤ j`.
pub fn theta_count(flag: u8, s: &[usize], t: &[usize], r: usize) -> usize {
    (1..=s.len()).filter(|&q| theta_q(flag, s, t, q, r).is_some()).count()
}

/// `Q = #{i : s_i ≥ s_{i+1}} + [t_1 ≤ s_j]`, the number of vanishing `θ_q(0, s; t)`.
pub fn q_count(s: &[usize], t1: usize) -> usize {
    let base = s.windows(2).filter(|w| w[0] >= w[1]).count();
    base + usize::from(s.last().is_some_and(|&sj| t1 <= sj))
}

/// The counting identity on one input: the number of nonvanishing `θ_q(0, s; t)`
/// equals `j - Q` and equals `α(s_1, …, s_j, t_1)`.
pub fn count_identity(s: &[usize], t1: usize, r: usize) -> (usize, usize, usize) {
    let direct = theta_count(0, s, &[t1], r);
    let mut w = s.to_vec();
    w.push(t1);
    (direct, s.len() - q_count(s, t1).min(s.len()), alpha(&w))
}

/// The closed formula `K(e_{2i}) = Σ_{j+k=i+1} Σ_q θ_q(0,s;t)`,
/// `K(e_{2i+1}) = -Σ_{j+k=i+1} Σ_q θ_q(1,s;t)`, with `k ≥ 1`.
pub fn closed_k<R: Coefficient>(r: usize, g: WGen) -> CTensor<R> {
    let mut out = FormalSum::zero();
    if g.n == 0 {
        return out;
    }
    let flag = (g.n % 2) as u8;
    let sign = if flag == 0 { R::one() } else { -R::one() };
    let i = g.n / 2;
    for j in 1..=i {
        let k = i + 1 - j;
        for s in sequences(r, j) {
            for t in sequences(r, k) {
                for q in 1..=j {
                    if let Some(Tensor(a, b)) = theta_q(flag, &s, &t, q, r) {
                        if !a.is_degenerate() && !b.is_degenerate() {
                            out.add_term(Tensor(a.shift(g.k, r), b.shift(g.k, r)), sign.clone());
                        }
                    }
                }
            }
        }
    }
    out
}

/// One row of a three-way comparison.
#[derive(Clone, Debug)]
pub struct CompareRow {
    pub n: usize,
    pub recursive_terms: usize,
    pub closed_terms: usize,
    pub k3_terms: usize,
    /// First term on which the three disagree, with the three coefficients.
    pub divergence: Option<(String, i64, i64, i64)>,
}

impl CompareRow {
    pub fn agrees(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Compare `recursive_K`, `closed_K` and `K3` on `e_0, …, e_{n_max}`.
pub fn compare_all(r: usize, n_max: usize) -> Vec<CompareRow> {
    let mut rec = RecursiveK::<i64>::new(r);
    (0..=n_max)
        .map(|n| {
            let a = rec.e(n);
            let b = closed_k::<i64>(r, WGen::e(n));
            let c = k3::<i64>(r, WGen::e(n));
            let keys: Vec<_> = a.keys().chain(b.keys()).chain(c.keys()).cloned().sorted().dedup().collect();
            let divergence = keys.iter().find_map(|t| {
                let (x, y, z) = (a.coeff(t), b.coeff(t), c.coeff(t));
                (x != y || y != z).then(|| (t.to_string(), x, y, z))
            });
            CompareRow { n, recursive_terms: a.len(), closed_terms: b.len(), k3_terms: c.len(), divergence }
        })
        .collect()
}

/// Basis of `(C(r)⊗C(r))_d`.
pub fn ctensor_basis(r: usize, d: usize) -> Vec<Tensor<CTuple, CTuple>> {
    let mut out = Vec::new();
    for a in 0..=d {
        let left = c_basis(r, a);
        let right = c_basis(r, d - a);
        for x in &left {
            for y in &right {
                out.push(Tensor(x.clone(), y.clone()));
            }
        }
    }
    out
}

/// Nondegenerate tuples of `C(r)` in degree `d`.
pub fn c_basis(r: usize, d: usize) -> Vec<CTuple> {
    let mut out = Vec::new();
    fn go(r: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<CTuple>) {
        if cur.len() == len {
            out.push(CTuple::new(cur));
            return;
        }
        for a in 0..r {
            if cur.last() == Some(&a) {
                continue;
            }
            cur.push(a);
            go(r, len, cur, out);
            cur.pop();
        }
    }
    go(r, d + 1, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(v: &[usize]) -> CTuple {
        CTuple::new(v)
    }

    #[test]
    fn eta_and_epsilon() {
        let x = CTensor::<i64>::basis(Tensor(ct(&[1]), ct(&[2])));
        assert_eq!(eta(&x), CTensor::basis(Tensor(ct(&[0, 1]), ct(&[2]))));
        assert!(eta(&CTensor::<i64>::basis(Tensor(ct(&[0, 2]), ct(&[1])))).is_zero());
        assert_eq!(epsilon(&x), CTensor::basis(Tensor(ct(&[0]), ct(&[2]))));
        assert!(epsilon(&CTensor::<i64>::basis(Tensor(ct(&[0, 1]), ct(&[2])))).is_zero());
    }

    #[test]
    fn cyclic_order() {
        assert!(cyclic_precedes(0, 1, 2, 3));
        assert!(cyclic_precedes(2, 0, 1, 3));
        assert!(!cyclic_precedes(0, 2, 1, 3));
    }

    #[test]
    fn theta_example() {
        let t = theta_q(0, &[1], &[2], 1, 3).unwrap();
        assert_eq!(t, Tensor(ct(&[0, 1, 2]), ct(&[2, 0])));
    }

    #[test]
    fn recursion_base_cases() {
        let mut k = RecursiveK::<i64>::new(3);
        assert!(k.e(0).is_zero());
        let mut k2 = RecursiveK::<i64>::new(2);
        for n in 0..6 {
            assert!(k2.e(n).is_zero());
        }
    }
}

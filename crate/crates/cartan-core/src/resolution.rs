//! The minimal resolution `W(r)` of the trivial `C_r`-module, its equivariant
//! coalgebra structure, the chain map `ι: W(r) → C(r)` and the cup-(r,i) products.

use std::fmt;

use crate::algebra::{Coefficient, FormalSum, Graded, Tensor};
use crate::barratt_eccles::{c_to_be, CChain, CTuple, Operation};
use crate::simplicial::{Cochain, FiniteSet};

/// The generator `ρ^k e_n` of `W(r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WGen {
    pub k: usize,
    pub n: usize,
}

impl WGen {
    pub fn e(n: usize) -> Self {
        Self { k: 0, n }
    }

    pub fn new(k: usize, n: usize) -> Self {
        Self { k, n }
    }

    /// `ρ^j · self` in `W(r)`.
    pub fn shift(&self, j: usize, r: usize) -> Self {
        Self { k: (self.k + j) % r, n: self.n }
    }
}

impl Graded for WGen {
    fn degree(&self) -> i64 {
        self.n as i64
    }
}

impl fmt::Display for WGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "e{}", self.n),
            1 => write!(f, "ρe{}", self.n),
            k => write!(f, "ρ^{}e{}", k, self.n),
        }
    }
}

pub type WChain<R = i64> = FormalSum<WGen, R>;

/// `∂(ρ^k e_{2i+1}) = ρ^{k+1} e_{2i} - ρ^k e_{2i}` and `∂(ρ^k e_{2i+2}) = Σ_j ρ^{k+j} e_{2i+1}`.
pub fn w_boundary<R: Coefficient>(r: usize, g: WGen) -> WChain<R> {
    let mut out = FormalSum::zero();
    if g.n == 0 {
        return out;
    }
    if g.n % 2 == 1 {
        out.add_term(WGen::new((g.k + 1) % r, g.n - 1), R::one());
        out.add_term(WGen::new(g.k, g.n - 1), -R::one());
    } else {
        for j in 0..r {
            out.add_term(WGen::new((g.k + j) % r, g.n - 1), R::one());
        }
    }
    out
}

pub fn w_boundary_chain<R: Coefficient>(r: usize, x: &WChain<R>) -> WChain<R> {
    x.linear(|g| w_boundary(r, *g))
}

/// The counit: `ε(ρ^k e_0) = 1`, zero in positive degrees.
pub fn counit<R: Coefficient>(g: WGen) -> R {
    if g.n == 0 {
        R::one()
    } else {
        R::zero()
    }
}

/// The equivariant coproduct
/// `Δ(e_{2i}) = Σ_{j+k=i} e_{2j}⊗e_{2k} + Σ_{j+k=i-1} Σ_{0≤s<t<r} ρ^s e_{2j+1}⊗ρ^t e_{2k+1}` and
/// `Δ(e_{2i+1}) = Σ_{j+k=i} e_{2j}⊗e_{2k+1} + e_{2j+1}⊗ρ e_{2k}`, shifted diagonally by `ρ^k`.
pub fn w_coproduct<R: Coefficient>(r: usize, g: WGen) -> FormalSum<Tensor<WGen, WGen>, R> {
    let mut out = FormalSum::zero();
    let mut add = |a: WGen, b: WGen| out.add_term(Tensor(a.shift(g.k, r), b.shift(g.k, r)), R::one());
    if g.n % 2 == 0 {
        let i = g.n / 2;
        for j in 0..=i {
            add(WGen::e(2 * j), WGen::e(2 * (i - j)));
        }
        for j in 0..i {
            let k = i - 1 - j;
            for s in 0..r {
                for t in s + 1..r {
                    add(WGen::new(s, 2 * j + 1), WGen::new(t, 2 * k + 1));
                }
            }
        }
    } else {
        let i = (g.n - 1) / 2;
        for j in 0..=i {
            let k = i - j;
            add(WGen::e(2 * j), WGen::e(2 * k + 1));
            add(WGen::e(2 * j + 1), WGen::new(1 % r, 2 * k));
        }
    }
    out
}

pub fn w_coproduct_chain<R: Coefficient>(r: usize, x: &WChain<R>) -> FormalSum<Tensor<WGen, WGen>, R> {
    x.linear(|g| w_coproduct(r, *g))
}

/// `ι(e_{2i}) = Σ (0, s_1, s_1+1, …, s_i, s_i+1)` and
/// `ι(e_{2i+1}) = Σ (0, 1, s_1, s_1+1, …, s_i, s_i+1)` over `s ∈ C_r^i`,
/// extended to `ρ^k e_n` by the action.
pub fn iota<R: Coefficient>(r: usize, g: WGen) -> CChain<R> {
    let m = g.n / 2;
    let mut out = FormalSum::zero();
    let total = r.pow(m as u32);
    for idx in 0..total {
        let mut t: Vec<usize> = if g.n % 2 == 0 { vec![0] } else { vec![0, 1 % r] };
        let mut rest = idx;
        let mut digits = Vec::with_capacity(m);
        for _ in 0..m {
            digits.push(rest % r);
            rest /= r;
        }
        for &s in digits.iter().rev() {
            t.push(s);
            t.push((s + 1) % r);
        }
        let tuple = CTuple::new(&t.iter().map(|&a| (a + g.k) % r).collect::<Vec<_>>());
        if !tuple.is_degenerate() {
            out.add_term(tuple, R::one());
        }
    }
    out
}

pub fn iota_chain<R: Coefficient>(r: usize, x: &WChain<R>) -> CChain<R> {
    x.linear(|g| iota(r, *g))
}

/// The operation `ψ_i^r = φ(ι(e_i))`.
pub fn cup_operation<R: Coefficient>(r: usize, i: usize) -> Operation<R> {
    Operation::new(r, i as i64, &c_to_be(&iota(r, WGen::e(i)), r))
}

/// The cup-(r,i) product `ψ_i^r(c_1, …, c_r)`.
pub fn cup_ri<R: Coefficient>(r: usize, i: usize, cochains: &[&Cochain<R>], host: &FiniteSet) -> Cochain<R> {
    cup_operation(r, i).apply(cochains, host)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(v: &[usize]) -> CTuple {
        CTuple::new(v)
    }

    #[test]
    fn boundaries() {
        let b1: WChain = w_boundary(3, WGen::e(1));
        assert_eq!(b1, [(WGen::new(1, 0), 1), (WGen::e(0), -1)].into_iter().collect());
        let b2: WChain = w_boundary(3, WGen::e(2));
        assert_eq!(b2.len(), 3);
        assert!(w_boundary::<i64>(3, WGen::e(0)).is_zero());
    }

    #[test]
    fn low_coproducts() {
        let d0: FormalSum<_> = w_coproduct(3, WGen::e(0));
        assert_eq!(d0, FormalSum::basis(Tensor(WGen::e(0), WGen::e(0))));
        let d1: FormalSum<_> = w_coproduct(3, WGen::e(1));
        let expected: FormalSum<_> =
            [(Tensor(WGen::e(0), WGen::e(1)), 1), (Tensor(WGen::e(1), WGen::new(1, 0)), 1)].into_iter().collect();
        assert_eq!(d1, expected);
        let d2: FormalSum<Tensor<WGen, WGen>> = w_coproduct(3, WGen::e(2));
        assert_eq!(d2.len(), 2 + 3);
    }

    #[test]
    fn iota_small() {
        let x: CChain = iota(2, WGen::e(2));
        assert_eq!(x, CChain::basis(ct(&[0, 1, 0])));
        let y: CChain = iota(3, WGen::e(2));
        assert_eq!(y.to_string(), "(0,1,2) + (0,2,0)");
        let z: CChain = iota(1, WGen::e(3));
        assert!(z.is_zero());
        assert_eq!(iota::<i64>(1, WGen::e(0)), CChain::basis(ct(&[0])));
    }
}

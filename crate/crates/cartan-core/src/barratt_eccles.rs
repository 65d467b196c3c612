//! The Barratt–Eccles operad `E`, the C-module `C(r)` of chains on `E C_r`,
//! and the structure map `φ: E → End(N^∨ X)` through table reduction and
//! interval cuts.
//!
//! `S_r` acts on tuples by relabelling values, `x ↦ (σ∘x_0, …, σ∘x_n)`, and
//! `C_r` acts on `C(r)` by adding `k` to every entry. Table reduction commutes
//! with this action, which makes `φ` equivariant:
//! `φ(σ∘x)(c_1,…,c_r) = ±φ(x)(c_{σ(1)},…,c_{σ(r)})`.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::algebra::{Coefficient, FormalSum, Graded, Tensor};
use crate::simplicial::{seq_nondegenerate, shuffles, Cell, Cochain, FiniteSet, SetSimplex, SimplicialObject};
use crate::symmetric::{block_compose, rho, Perm, PermError};

/// A basis element `(σ_0, …, σ_n)` of `E(r)` in degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeTuple(pub Vec<Perm>);

impl BeTuple {
    pub fn arity(&self) -> usize {
        self.0[0].arity()
    }

    pub fn is_degenerate(&self) -> bool {
        !seq_nondegenerate(&self.0)
    }
}

impl Graded for BeTuple {
    fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }
}

impl fmt::Display for BeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// A basis element `(a_0, …, a_n)` of `C(r)`, entries in `C_r ≅ {0,…,r-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CTuple(pub Vec<u8>);

impl CTuple {
    pub fn new(entries: &[usize]) -> Self {
        Self(entries.iter().map(|&a| a as u8).collect())
    }

    pub fn is_degenerate(&self) -> bool {
        !seq_nondegenerate(&self.0)
    }

    /// The action of `ρ^k`.
    pub fn shift(&self, k: usize, r: usize) -> Self {
        Self(self.0.iter().map(|&a| ((a as usize + k) % r) as u8).collect())
    }

    /// The image in `E(r)` under `C_r ⊂ S_r`.
    pub fn to_be(&self, r: usize) -> BeTuple {
        BeTuple(self.0.iter().map(|&a| rho(r, a as usize)).collect())
    }
}

impl Graded for CTuple {
    fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }
}

impl fmt::Display for CTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

pub type BeChain<R = i64> = FormalSum<BeTuple, R>;
pub type CChain<R = i64> = FormalSum<CTuple, R>;

/// The basis element `(e)` of `E(r)` in degree zero.
pub fn unit(r: usize) -> BeTuple {
    BeTuple(vec![Perm::identity(r)])
}

fn seq_boundary<T: Clone + PartialEq, K: Ord + Clone, R: Coefficient>(
    entries: &[T],
    coeff: &R,
    wrap: impl Fn(Vec<T>) -> K,
    out: &mut FormalSum<K, R>,
) {
    if entries.len() < 2 {
        return;
    }
    for i in 0..entries.len() {
        let mut f = entries.to_vec();
        f.remove(i);
        if seq_nondegenerate(&f) {
            out.add_term(wrap(f), R::sign(i as i64) * coeff.clone());
        }
    }
}

/// `∂ = Σ (-1)^i d_i` on `E(r)`.
pub fn be_boundary<R: Coefficient>(x: &BeChain<R>) -> BeChain<R> {
    let mut out = FormalSum::zero();
    for (t, c) in x {
        seq_boundary(&t.0, c, BeTuple, &mut out);
    }
    out
}

/// `∂ = Σ (-1)^i d_i` on `C(r)`.
pub fn c_boundary<R: Coefficient>(x: &CChain<R>) -> CChain<R> {
    let mut out = FormalSum::zero();
    for (t, c) in x {
        seq_boundary(&t.0, c, CTuple, &mut out);
    }
    out
}

/// `σ·x = (σ∘x_0, …, σ∘x_n)`.
pub fn relabel<R: Coefficient>(x: &BeChain<R>, sigma: &Perm) -> BeChain<R> {
    x.map_basis(|t| Some((BeTuple(t.0.iter().map(|p| sigma.compose(p)).collect()), R::one())))
}

/// Right multiplication `x·σ = (x_0∘σ, …, x_n∘σ)`.
pub fn right_multiply<R: Coefficient>(x: &BeChain<R>, sigma: &Perm) -> BeChain<R> {
    x.map_basis(|t| Some((BeTuple(t.0.iter().map(|p| p.compose(sigma)).collect()), R::one())))
}

/// `ρ^k · x` on `C(r)`.
pub fn c_shift<R: Coefficient>(x: &CChain<R>, k: usize, r: usize) -> CChain<R> {
    x.map_basis(|t| Some((t.shift(k, r), R::one())))
}

/// `C(r) → E(r)` induced by `C_r ⊂ S_r`.
pub fn c_to_be<R: Coefficient>(x: &CChain<R>, r: usize) -> BeChain<R> {
    x.map_basis(|t| Some((t.to_be(r), R::one())))
}

/// `Δ_AW` on `C(r)`: front faces tensor back faces.
pub fn delta_aw_c<R: Coefficient>(x: &CChain<R>) -> FormalSum<Tensor<CTuple, CTuple>, R> {
    let mut out = FormalSum::zero();
    for (t, c) in x {
        let n = t.0.len() - 1;
        for i in 0..=n {
            let a = CTuple(t.0[..=i].to_vec());
            let b = CTuple(t.0[i..].to_vec());
            if !a.is_degenerate() && !b.is_degenerate() {
                out.add_term(Tensor(a, b), c.clone());
            }
        }
    }
    out
}

/// Left-iterated Eilenberg–Zilber map on tuples of point sequences. The
/// result lists, for each vertex of the product simplex, its coordinates.
pub fn ez_iterated<R: Coefficient>(factors: &[(Vec<Perm>, R)]) -> FormalSum<Vec<Vec<Perm>>, R> {
    let (first, c0) = &factors[0];
    let mut cur: FormalSum<Vec<Vec<Perm>>, R> = FormalSum::monomial(first.iter().map(|p| vec![p.clone()]).collect(), c0.clone());
    for (y, cy) in &factors[1..] {
        let mut next = FormalSum::zero();
        for (z, cz) in &cur {
            for (sign, pa, pb) in shuffles(z.len() - 1, y.len() - 1) {
                let w: Vec<Vec<Perm>> = pa
                    .iter()
                    .zip(&pb)
                    .map(|(&a, &b)| {
                        let mut pt = z[a].clone();
                        pt.push(y[b].clone());
                        pt
                    })
                    .collect();
                if seq_nondegenerate(&w) {
                    next.add_term(w, R::from_int(sign) * cz.clone() * cy.clone());
                }
            }
        }
        cur = next;
    }
    cur
}

/// Operad composition `∘_E(x; y_1, …, y_r)`: left-iterated EZ followed by
/// vertexwise block composition.
pub fn be_compose<R: Coefficient>(x: &BeChain<R>, ys: &[BeChain<R>]) -> Result<BeChain<R>, PermError> {
    let mut out = FormalSum::zero();
    if x.is_zero() || ys.iter().any(FormalSum::is_zero) {
        return Ok(out);
    }
    let r = x.keys().next().unwrap().arity();
    if ys.len() != r {
        return Err(PermError::Arity { expected: r, got: ys.len() });
    }
    let lists: Vec<Vec<(&BeTuple, &R)>> = std::iter::once(x).chain(ys.iter()).map(|s| s.iter().collect()).collect();
    for combo in lists.iter().map(|l| l.iter()).multi_cartesian_product() {
        let factors: Vec<(Vec<Perm>, R)> = combo.iter().map(|(t, c)| (t.0.clone(), (*c).clone())).collect();
        for (z, c) in &ez_iterated(&factors) {
            let pts: Vec<Perm> = z.iter().map(|pt| block_compose(&pt[0], &pt[1..])).collect::<Result<_, _>>()?;
            if seq_nondegenerate(&pts) {
                out.add_term(BeTuple(pts), c.clone());
            }
        }
    }
    Ok(out)
}

/// A nondegenerate surjection `{1,…,n+r} → {1,…,r}` of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surjection(pub Vec<u8>);

impl Surjection {
    pub fn arity(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }
}

impl Graded for Surjection {
    fn degree(&self) -> i64 {
        self.0.len() as i64 - self.arity() as i64
    }
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Ordered compositions of `total` into `parts` positive integers.
fn compositions(total: usize, parts: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..total).combinations(parts - 1).map(move |cuts| {
        let mut b = vec![0];
        b.extend(cuts);
        b.push(total);
        b.windows(2).map(|w| w[1] - w[0]).collect()
    })
}

/// Table reduction `E(r) → X(r)` to the surjection operad.
pub fn table_reduction<R: Coefficient>(x: &BeChain<R>) -> FormalSum<Surjection, R> {
    let mut out = FormalSum::zero();
    for (t, c) in x {
        let d = t.0.len() - 1;
        let r = t.arity();
        'comp: for parts in compositions(d + r, d + 1) {
            let mut seq: Vec<u8> = Vec::with_capacity(d + r);
            let mut removed = vec![false; r];
            for (row, &len) in parts.iter().enumerate() {
                let filt: Vec<u8> = t.0[row].images().iter().map(|&v| v as u8).filter(|&v| !removed[v as usize - 1]).collect();
                if len > filt.len() || (row > 0 && seq.last() == Some(&filt[0])) {
                    continue 'comp;
                }
                for &v in &filt[..len - 1] {
                    removed[v as usize - 1] = true;
                }
                seq.extend_from_slice(&filt[..len]);
            }
            let mut hit = vec![false; r];
            for &v in &seq {
                hit[v as usize - 1] = true;
            }
            if hit.iter().all(|&h| h) && seq_nondegenerate(&seq) {
                out.add_term(Surjection(seq), c.clone());
            }
        }
    }
    out
}

/// Interval-cut evaluation of a surjection on cochains at a nondegenerate simplex.
///
/// The cut `0 = j_0 ≤ j_1 ≤ ⋯ ≤ j_N = m` gives value `u(k)` the vertices
/// `[j_{k-1}, j_k]`. The sign is the Koszul sign of sorting the intervals by
/// value, an interval of length `ℓ` having degree `ℓ+1` unless it is the last
/// one of its value, plus `j_k` for every interval that is not the last of its
/// value, plus `Σ_{i<j} d_i d_j` from evaluating `c_1⊗⋯⊗c_r`, plus `n(m+1)`.
pub fn eval_surjection<R: Coefficient>(u: &Surjection, cochains: &[&Cochain<R>], host: &FiniteSet, target: Cell) -> R {
    let n_int = u.0.len();
    let r = cochains.len();
    assert_eq!(u.arity(), r, "surjection arity must match the number of cochains");
    let m = target.dim as usize;
    let dims: Vec<usize> = cochains.iter().map(|c| c.degree).collect();
    let n = n_int - r;
    if dims.iter().sum::<usize>() != m + n {
        return R::zero();
    }
    let last: Vec<bool> = (0..n_int).map(|k| !u.0[k + 1..].contains(&u.0[k])).collect();
    let y = SetSimplex::nondegenerate(target);
    let koszul = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).map(|(i, j)| dims[i] * dims[j]).sum();
    let st = Surj { u: &u.0, m, dims: &dims, last: &last, n, koszul, cochains, host, y: &y };
    let mut total = R::zero();
    st.enumerate(&mut total);
    total
}

struct Surj<'a, R: Coefficient> {
    u: &'a [u8],
    m: usize,
    dims: &'a [usize],
    last: &'a [bool],
    n: usize,
    koszul: usize,
    cochains: &'a [&'a Cochain<R>],
    host: &'a FiniteSet,
    y: &'a SetSimplex,
}

impl<R: Coefficient> Surj<'_, R> {
    fn enumerate(&self, total: &mut R) {
        let n_int = self.u.len();
        let r = self.dims.len();
        let mut cuts = vec![0usize; n_int + 1];
        cuts[n_int] = self.m;
        let mut sizes = vec![0usize; r];
        self.step(1, &mut cuts, &mut sizes, total);
    }

    /// Choose `j_k` for `k = 1..N-1`; `sizes[v]` counts vertices assigned to value `v`
    /// (shared endpoints counted twice, so a valid face has exactly `d_v + 1`).
    fn step(&self, k: usize, cuts: &mut Vec<usize>, sizes: &mut Vec<usize>, total: &mut R) {
        let n_int = self.u.len();
        if k == n_int {
            let v = self.u[n_int - 1] as usize - 1;
            let add = self.m - cuts[n_int - 1] + 1;
            if sizes[v] + add != self.dims[v] + 1 {
                return;
            }
            sizes[v] += add;
            if sizes.iter().zip(self.dims).all(|(&s, &d)| s == d + 1) {
                *total = total.clone() + self.value(cuts);
            }
            sizes[v] -= add;
            return;
        }
        let v = self.u[k - 1] as usize - 1;
        let lo = cuts[k - 1];
        for j in lo..=self.m {
            let add = j - lo + 1;
            if sizes[v] + add > self.dims[v] + 1 {
                break;
            }
            cuts[k] = j;
            sizes[v] += add;
            self.step(k + 1, cuts, sizes, total);
            sizes[v] -= add;
        }
    }

    fn value(&self, cuts: &[usize]) -> R {
        let n_int = self.u.len();
        let r = self.dims.len();
        let mut faces: Vec<Vec<usize>> = vec![Vec::new(); r];
        for k in 0..n_int {
            let f = &mut faces[self.u[k] as usize - 1];
            for t in cuts[k]..=cuts[k + 1] {
                if f.last() == Some(&t) {
                    return R::zero();
                }
                f.push(t);
            }
        }
        let mut val = R::one();
        for (v, f) in faces.iter().enumerate() {
            let s = self.host.pullback(self.y, f);
            let c = self.cochains[v].value_on(&s);
            if c.is_zero() {
                return c;
            }
            val = val * c;
        }
        let degs: Vec<usize> = (0..n_int).map(|k| cuts[k + 1] - cuts[k] + usize::from(!self.last[k])).collect();
        let mut e = 0usize;
        for k in 0..n_int {
            for l in k + 1..n_int {
                if self.u[k] > self.u[l] {
                    e += degs[k] * degs[l];
                }
            }
        }
        for k in 0..n_int {
            if !self.last[k] {
                e += cuts[k + 1];
            }
        }
        e += self.koszul + self.n * (self.m + 1);
        val * R::sign(e as i64)
    }
}

/// `φ(x)` stored through its table reduction, ready to evaluate on cochains.
#[derive(Clone, Debug)]
pub struct Operation<R: Coefficient = i64> {
    pub arity: usize,
    pub degree: i64,
    pub surjections: FormalSum<Surjection, R>,
}

impl<R: Coefficient> Operation<R> {
    /// `φ(x)` for a homogeneous element of `E(r)`.
    pub fn new(arity: usize, degree: i64, x: &BeChain<R>) -> Self {
        Self { arity, degree, surjections: table_reduction(x) }
    }

    /// From a nonzero homogeneous chain, reading arity and degree off its terms.
    pub fn from_chain(x: &BeChain<R>) -> Option<Self> {
        let t = x.keys().next()?;
        Some(Self::new(t.arity(), t.degree(), x))
    }

    /// Cohomological degree of the output, `Σ d_i - n`.
    pub fn output_degree(&self, cochains: &[&Cochain<R>]) -> Option<usize> {
        let s: i64 = cochains.iter().map(|c| c.degree as i64).sum::<i64>() - self.degree;
        (s >= 0).then_some(s as usize)
    }

    pub fn eval_at(&self, cochains: &[&Cochain<R>], host: &FiniteSet, target: Cell) -> R {
        assert_eq!(cochains.len(), self.arity, "operation arity mismatch");
        let mut v = R::zero();
        for (u, c) in &self.surjections {
            let e = eval_surjection(u, cochains, host, target);
            if !e.is_zero() {
                v = v + e * c.clone();
            }
        }
        v
    }

    /// The cochain `φ(x)(c_1 ⊗ ⋯ ⊗ c_r)`.
    pub fn apply(&self, cochains: &[&Cochain<R>], host: &FiniteSet) -> Cochain<R> {
        let Some(d) = self.output_degree(cochains) else {
            return Cochain::zero(0);
        };
        if self.surjections.is_zero() || cochains.iter().any(|c| c.is_zero()) {
            return Cochain::zero(d);
        }
        let cells: Vec<Cell> = host.cells(d).collect();
        let values: Vec<(Cell, R)> = cells.par_iter().map(|&y| (y, self.eval_at(cochains, host, y))).collect();
        Cochain { degree: d, values: values.into_iter().collect() }
    }

    /// `∂_End φ(x)` on the given cochains:
    /// `δ(F(c)) - (-1)^{|F|} Σ_i (-1)^{|c_1|+⋯+|c_{i-1}|} F(…, δc_i, …)` with `|c| = -d`.
    pub fn hom_boundary(&self, cochains: &[&Cochain<R>], host: &FiniteSet) -> Cochain<R> {
        let mut out = self.apply(cochains, host).coboundary(host);
        let mut before = 0i64;
        for i in 0..cochains.len() {
            let dc = cochains[i].coboundary(host);
            let mut cs: Vec<&Cochain<R>> = cochains.to_vec();
            cs[i] = &dc;
            let term = self.apply(&cs, host);
            if !term.is_zero() {
                out.add_scaled(&term, &(-R::sign(self.degree + before)));
            }
            before -= cochains[i].degree as i64;
        }
        out
    }
}

/// `φ(x)(c_1, …, c_r)` in one call.
pub fn phi_apply<R: Coefficient>(x: &BeChain<R>, cochains: &[&Cochain<R>], host: &FiniteSet) -> Cochain<R> {
    match Operation::from_chain(x) {
        Some(op) => op.apply(cochains, host),
        None => Cochain::zero(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::Perm;

    fn p(imgs: &[usize]) -> Perm {
        Perm::from_images(imgs).unwrap()
    }

    #[test]
    fn boundary_of_c_tuples() {
        let x = CChain::<i64>::basis(CTuple::new(&[0, 1, 0]));
        let expected: CChain = [(CTuple::new(&[1, 0]), 1), (CTuple::new(&[0, 1]), 1)].into_iter().collect();
        assert_eq!(c_boundary(&x), expected);
        let y = CChain::<i64>::basis(CTuple::new(&[0, 1, 2, 0]));
        assert!(c_boundary(&c_boundary(&y)).is_zero());
    }

    #[test]
    fn table_reduction_of_cup_one() {
        let x = BeChain::<i64>::basis(BeTuple(vec![p(&[1, 2]), p(&[2, 1])]));
        assert_eq!(table_reduction(&x), FormalSum::basis(Surjection(vec![1, 2, 1])));
    }

    #[test]
    fn cup_product_on_edge() {
        let x = FiniteSet::standard_simplex(1);
        let v0 = Cochain::<i64>::dual(x.cell_of_vertices(&[0]).unwrap());
        let e = Cochain::<i64>::dual(x.cell_of_vertices(&[0, 1]).unwrap());
        let got = phi_apply(&BeChain::basis(unit(2)), &[&v0, &e], &x);
        assert_eq!(got.value(x.cell_of_vertices(&[0, 1]).unwrap()), 1);
    }

    #[test]
    fn unit_composition() {
        let e2 = BeChain::<i64>::basis(unit(2));
        let e1 = BeChain::<i64>::basis(unit(1));
        assert_eq!(be_compose(&e2, &[e1.clone(), e1]).unwrap(), e2);
    }

    #[test]
    fn delta_aw_on_edge() {
        let x = CChain::<i64>::basis(CTuple::new(&[0, 1]));
        let expected: FormalSum<_> = [
            (Tensor(CTuple::new(&[0]), CTuple::new(&[0, 1])), 1),
            (Tensor(CTuple::new(&[0, 1]), CTuple::new(&[1])), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(delta_aw_c(&x), expected);
    }
}

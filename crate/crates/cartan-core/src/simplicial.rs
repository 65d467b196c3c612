//! Simplicial sets, normalized chains and cochains, and the Eilenberg–Zilber
//! contraction (AW, EZ, SHI) on products.
//!
//! Simplices are manipulated through [`SimplicialObject::pullback`] along
//! monotone maps `θ: [l] → [n]`, written as the vector `(θ(0), …, θ(l))`.
//! Faces and degeneracies are the special cases that skip or repeat an index.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::marker::PhantomData;

use itertools::Itertools;
use thiserror::Error;

use crate::algebra::{Coefficient, FormalSum, Tensor};

/// A simplicial object whose simplices can be pulled back along monotone maps.
pub trait SimplicialObject {
    type Simplex: Clone + Ord + fmt::Debug;

    fn dim(&self, s: &Self::Simplex) -> usize;

    /// `θ^* s` for a monotone `θ: [θ.len()-1] → [dim s]`.
    fn pullback(&self, s: &Self::Simplex, theta: &[usize]) -> Self::Simplex;

    /// Whether `s` lies in the image of the degeneracy `s_i`.
    fn is_degenerate_at(&self, s: &Self::Simplex, i: usize) -> bool;

    fn is_degenerate(&self, s: &Self::Simplex) -> bool {
        let n = self.dim(s);
        (0..n).any(|i| self.is_degenerate_at(s, i))
    }

    fn face(&self, s: &Self::Simplex, i: usize) -> Self::Simplex {
        let n = self.dim(s);
        let theta: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
        self.pullback(s, &theta)
    }

    fn degeneracy(&self, s: &Self::Simplex, i: usize) -> Self::Simplex {
        let n = self.dim(s);
        let theta: Vec<usize> = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
        self.pullback(s, &theta)
    }
}

impl<T: SimplicialObject> SimplicialObject for &T {
    type Simplex = T::Simplex;

    fn dim(&self, s: &Self::Simplex) -> usize {
        (**self).dim(s)
    }

    fn pullback(&self, s: &Self::Simplex, theta: &[usize]) -> Self::Simplex {
        (**self).pullback(s, theta)
    }

    fn is_degenerate_at(&self, s: &Self::Simplex, i: usize) -> bool {
        (**self).is_degenerate_at(s, i)
    }

    fn is_degenerate(&self, s: &Self::Simplex) -> bool {
        (**self).is_degenerate(s)
    }
}

/// Normalized boundary `Σ (-1)^i d_i`, degenerate faces dropped.
pub fn boundary<X: SimplicialObject, R: Coefficient>(
    x: &X,
    c: &FormalSum<X::Simplex, R>,
) -> FormalSum<X::Simplex, R> {
    let mut out = FormalSum::zero();
    for (s, coeff) in c {
        let n = x.dim(s);
        if n == 0 {
            continue;
        }
        for i in 0..=n {
            let f = x.face(s, i);
            if !x.is_degenerate(&f) {
                out.add_term(f, R::sign(i as i64) * coeff.clone());
            }
        }
    }
    out
}

/// Drop degenerate terms (they are zero in normalized chains).
pub fn normalize<X: SimplicialObject, R: Coefficient>(
    x: &X,
    c: &FormalSum<X::Simplex, R>,
) -> FormalSum<X::Simplex, R> {
    c.iter()
        .filter(|(s, _)| !x.is_degenerate(s))
        .map(|(s, v)| (s.clone(), v.clone()))
        .collect()
}

/// Simplices given by their sequence of vertices: faces delete an entry and
/// degeneracies repeat one. Models nerves such as `E X` and ordered simplices.
pub struct PointSeq<P>(PhantomData<P>);

impl<P> PointSeq<P> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<P> Default for PointSeq<P> {
    fn default() -> Self {
        Self::new()
    }
}

impl<P: Clone + Ord + fmt::Debug> SimplicialObject for PointSeq<P> {
    type Simplex = Vec<P>;

    fn dim(&self, s: &Vec<P>) -> usize {
        s.len() - 1
    }

    fn pullback(&self, s: &Vec<P>, theta: &[usize]) -> Vec<P> {
        theta.iter().map(|&t| s[t].clone()).collect()
    }

    fn is_degenerate_at(&self, s: &Vec<P>, i: usize) -> bool {
        s[i] == s[i + 1]
    }
}

/// Whether adjacent entries of a point sequence are all distinct.
pub fn seq_nondegenerate<P: PartialEq>(s: &[P]) -> bool {
    s.windows(2).all(|w| w[0] != w[1])
}

/// The product of two simplicial objects; simplices are pairs of equal dimension.
pub struct Product<X, Y> {
    pub left: X,
    pub right: Y,
}

impl<X, Y> Product<X, Y> {
    pub fn new(left: X, right: Y) -> Self {
        Self { left, right }
    }
}

impl<X: SimplicialObject, Y: SimplicialObject> SimplicialObject for Product<X, Y> {
    type Simplex = (X::Simplex, Y::Simplex);

    fn dim(&self, s: &Self::Simplex) -> usize {
        self.left.dim(&s.0)
    }

    fn pullback(&self, s: &Self::Simplex, theta: &[usize]) -> Self::Simplex {
        (self.left.pullback(&s.0, theta), self.right.pullback(&s.1, theta))
    }

    fn is_degenerate_at(&self, s: &Self::Simplex, i: usize) -> bool {
        self.left.is_degenerate_at(&s.0, i) && self.right.is_degenerate_at(&s.1, i)
    }
}

/// The diagonal `x ↦ (x, x)` on chains.
pub fn diagonal<S: Clone + Ord, R: Coefficient>(c: &FormalSum<S, R>) -> FormalSum<(S, S), R> {
    c.map_basis(|s| Some(((s.clone(), s.clone()), R::one())))
}

/// Alexander–Whitney map `Σ_i x(0..i) ⊗ y(i..n)`.
pub fn aw<X, Y, R>(
    xy: &Product<X, Y>,
    c: &FormalSum<(X::Simplex, Y::Simplex), R>,
) -> FormalSum<Tensor<X::Simplex, Y::Simplex>, R>
where
    X: SimplicialObject,
    Y: SimplicialObject,
    R: Coefficient,
{
    let mut out = FormalSum::zero();
    for ((a, b), coeff) in c {
        let n = xy.left.dim(a);
        for i in 0..=n {
            let front: Vec<usize> = (0..=i).collect();
            let back: Vec<usize> = (i..=n).collect();
            let x = xy.left.pullback(a, &front);
            let y = xy.right.pullback(b, &back);
            if !xy.left.is_degenerate(&x) && !xy.right.is_degenerate(&y) {
                out.add_term(Tensor(x, y), coeff.clone());
            }
        }
    }
    out
}

/// Lattice paths from `(0,0)` to `(p,q)` with their shuffle signs. A path is
/// the pair of degeneracy maps `[p+q] → [p]` and `[p+q] → [q]`.
pub fn shuffles(p: usize, q: usize) -> Vec<(i64, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for xs in (0..p + q).combinations(p) {
        let xs: BTreeSet<usize> = xs.into_iter().collect();
        let (mut a, mut b, mut ups, mut inv) = (0usize, 0usize, 0i64, 0i64);
        let mut pa = vec![0];
        let mut pb = vec![0];
        for step in 0..p + q {
            if xs.contains(&step) {
                a += 1;
                inv += ups;
            } else {
                b += 1;
                ups += 1;
            }
            pa.push(a);
            pb.push(b);
        }
        out.push((if inv % 2 == 0 { 1 } else { -1 }, pa, pb));
    }
    out
}

/// Eilenberg–Zilber shuffle map.
pub fn ez<X, Y, R>(
    xy: &Product<X, Y>,
    t: &FormalSum<Tensor<X::Simplex, Y::Simplex>, R>,
) -> FormalSum<(X::Simplex, Y::Simplex), R>
where
    X: SimplicialObject,
    Y: SimplicialObject,
    R: Coefficient,
{
    let mut out = FormalSum::zero();
    for (Tensor(a, b), coeff) in t {
        let (p, q) = (xy.left.dim(a), xy.right.dim(b));
        for (sign, pa, pb) in shuffles(p, q) {
            let z = (xy.left.pullback(a, &pa), xy.right.pullback(b, &pb));
            if !xy.is_degenerate(&z) {
                out.add_term(z, R::from_int(sign) * coeff.clone());
            }
        }
    }
    out
}

/// The Eilenberg–Zilber homotopy on a single simplex of a product.
fn shi_simplex<X, Y, R>(xy: &Product<X, Y>, z: &(X::Simplex, Y::Simplex), out: &mut FormalSum<(X::Simplex, Y::Simplex), R>, coeff: &R)
where
    X: SimplicialObject,
    Y: SimplicialObject,
    R: Coefficient,
{
    let n = xy.dim(z);
    let (a, b) = z;
    for q in 0..n {
        for p in 0..n - q {
            let nb = n - p - q;
            for pick in (0..=p + q).combinations(p + 1) {
                let rest: Vec<usize> = (0..=p + q).filter(|i| !pick.contains(i)).collect();
                let eps: usize = pick.iter().map(|&x| rest.iter().filter(|&&y| x > y).count()).sum();
                let sign = -R::sign((nb + eps) as i64);
                let mut aa = a.clone();
                for i in (n - q + 1..=n).rev() {
                    aa = xy.left.face(&aa, i);
                }
                aa = xy.left.degeneracy(&aa, nb - 1);
                for &bi in &rest {
                    aa = xy.left.degeneracy(&aa, bi + nb);
                }
                let mut bb = b.clone();
                for i in (nb..n - q).rev() {
                    bb = xy.right.face(&bb, i);
                }
                for &ai in &pick {
                    bb = xy.right.degeneracy(&bb, ai + nb);
                }
                let w = (aa, bb);
                if !xy.is_degenerate(&w) {
                    out.add_term(w, sign * coeff.clone());
                }
            }
        }
    }
}

/// Eilenberg–Zilber contraction homotopy, of degree +1, with
/// `EZ∘AW - id = ∂∘SHI + SHI∘∂` on chains of the product.
pub fn shi<X, Y, R>(
    xy: &Product<X, Y>,
    c: &FormalSum<(X::Simplex, Y::Simplex), R>,
) -> FormalSum<(X::Simplex, Y::Simplex), R>
where
    X: SimplicialObject,
    Y: SimplicialObject,
    R: Coefficient,
{
    let mut out = FormalSum::zero();
    for (z, coeff) in c {
        shi_simplex(xy, z, &mut out, coeff);
    }
    out
}

/// `Δ_AW = AW ∘ diagonal`.
pub fn diagonal_aw<X, R>(x: &X, c: &FormalSum<X::Simplex, R>) -> FormalSum<Tensor<X::Simplex, X::Simplex>, R>
where
    X: SimplicialObject,
    R: Coefficient,
{
    let xx = Product::new(x, x);
    aw(&xx, &diagonal(c))
}

/// Nondegenerate `d`-simplices of `Δ^m × Δ^n` as pairs of vertex sequences.
pub fn standard_product_simplices(m: usize, n: usize, d: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn go(m: usize, n: usize, d: usize, a: &mut Vec<usize>, b: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        if a.len() == d + 1 {
            out.push((a.clone(), b.clone()));
            return;
        }
        let (x0, y0) = (*a.last().unwrap(), *b.last().unwrap());
        for x in x0..=m {
            for y in y0..=n {
                if x == x0 && y == y0 {
                    continue;
                }
                a.push(x);
                b.push(y);
                go(m, n, d, a, b, out);
                a.pop();
                b.pop();
            }
        }
    }
    let mut out = Vec::new();
    for x in 0..=m {
        for y in 0..=n {
            go(m, n, d, &mut vec![x], &mut vec![y], &mut out);
        }
    }
    out
}

impl<P> Clone for PointSeq<P> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

/// A nondegenerate simplex of a [`FiniteSet`], by dimension and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub dim: u32,
    pub id: u32,
}

/// A possibly degenerate simplex `η^* base` for a monotone surjection
/// `η: [n] → [dim base]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetSimplex {
    pub base: Cell,
    pub eta: Vec<u32>,
}

impl SetSimplex {
    pub fn nondegenerate(base: Cell) -> Self {
        Self { base, eta: (0..=base.dim).collect() }
    }

    pub fn dim(&self) -> usize {
        self.eta.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.eta.len() as u32 != self.base.dim + 1
    }

    /// The degeneracy word `s_{i_1} ⋯ s_{i_k}` in normal form `i_1 > ⋯ > i_k`.
    pub fn degeneracy_word(&self) -> Vec<usize> {
        let mut w: Vec<usize> = (0..self.dim()).filter(|&t| self.eta[t] == self.eta[t + 1]).collect();
        w.reverse();
        w
    }

    /// Apply a degeneracy word in normal form to a nondegenerate cell.
    pub fn from_word(base: Cell, word: &[usize]) -> Result<Self, SimplicialError> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return Err(SimplicialError::BadDegeneracyWord(word.to_vec()));
        }
        let n = base.dim as usize + word.len();
        let mut eta = Vec::with_capacity(n + 1);
        let mut v = 0u32;
        for t in 0..=n {
            eta.push(v);
            if t < n && !word.contains(&t) {
                v += 1;
            }
        }
        if v != base.dim || word.iter().any(|&i| i >= n) {
            return Err(SimplicialError::BadDegeneracyWord(word.to_vec()));
        }
        Ok(Self { base, eta })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("degeneracy word {0:?} is not in normal form")]
    BadDegeneracyWord(Vec<usize>),
    #[error("unknown simplex {0}")]
    UnknownSimplex(String),
    #[error("simplex {name} of dimension {dim} needs {expected} faces, got {got}")]
    FaceCount { name: String, dim: usize, expected: usize, got: usize },
    #[error("face {i} of {name} has dimension {got}, expected {expected}")]
    FaceDimension { name: String, i: usize, got: usize, expected: usize },
    #[error("simplicial identity d_{i} d_{j} = d_{jm1} d_{i} fails on {name}", jm1 = .j - 1)]
    Identity { name: String, i: usize, j: usize },
    #[error("duplicate simplex name {0}")]
    Duplicate(String),
    #[error("vertex list {0:?} is not strictly increasing")]
    NotIncreasing(Vec<usize>),
    #[error("map does not send {0:?} to a simplex of the target")]
    BadMap(Vec<usize>),
}

/// A finite simplicial set stored by its nondegenerate simplices and face tables.
#[derive(Clone, Debug)]
pub struct FiniteSet {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SetSimplex>>>,
    vertices: Option<Vec<Vec<Vec<usize>>>>,
    by_vertices: HashMap<Vec<usize>, Cell>,
    by_name: HashMap<String, Cell>,
}

/// One cell of a general simplicial set description.
#[derive(Clone, Debug)]
pub struct CellSpec {
    pub name: String,
    pub dim: usize,
    /// Faces `d_0 … d_dim`, each a named cell with a degeneracy word in normal form.
    pub faces: Vec<(String, Vec<usize>)>,
}

impl FiniteSet {
    /// An ordered simplicial complex generated by the given vertex lists.
    pub fn from_complex(generators: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in generators {
            if g.windows(2).any(|w| w[0] >= w[1]) || g.is_empty() {
                return Err(SimplicialError::NotIncreasing(g.clone()));
            }
            for k in 1..=g.len() {
                for sub in g.iter().copied().combinations(k) {
                    all.insert(sub);
                }
            }
        }
        let top = all.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        let mut by_vertices = HashMap::new();
        for (d, list) in by_dim.iter().enumerate() {
            for (id, s) in list.iter().enumerate() {
                by_vertices.insert(s.clone(), Cell { dim: d as u32, id: id as u32 });
            }
        }
        let mut faces = Vec::new();
        let mut names = Vec::new();
        let mut by_name = HashMap::new();
        for (d, list) in by_dim.iter().enumerate() {
            let mut fd = Vec::new();
            let mut nd = Vec::new();
            for (id, s) in list.iter().enumerate() {
                let name = format!("{s:?}").replace(' ', "");
                by_name.insert(name.clone(), Cell { dim: d as u32, id: id as u32 });
                nd.push(name);
                if d == 0 {
                    fd.push(Vec::new());
                    continue;
                }
                let fs = (0..=d)
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        SetSimplex::nondegenerate(by_vertices[&t])
                    })
                    .collect();
                fd.push(fs);
            }
            faces.push(fd);
            names.push(nd);
        }
        Ok(Self { names, faces, vertices: Some(by_dim), by_vertices, by_name })
    }

    /// The standard simplex `Δ^n`.
    pub fn standard_simplex(n: usize) -> Self {
        Self::from_complex(&[(0..=n).collect()]).expect("valid simplex")
    }

    /// The boundary `∂Δ^n`, a model of the `(n-1)`-sphere for `n ≥ 1`.
    pub fn boundary_of_simplex(n: usize) -> Self {
        let gens: Vec<Vec<usize>> = (0..=n).map(|j| (0..=n).filter(|&v| v != j).collect()).collect();
        Self::from_complex(&gens).expect("valid boundary")
    }

    /// A general simplicial set from named cells with explicit faces.
    pub fn from_cells(cells: &[CellSpec]) -> Result<Self, SimplicialError> {
        let mut names: Vec<Vec<String>> = Vec::new();
        let mut by_name = HashMap::new();
        for c in cells {
            if by_name.contains_key(&c.name) {
                return Err(SimplicialError::Duplicate(c.name.clone()));
            }
            while names.len() <= c.dim {
                names.push(Vec::new());
            }
            let cell = Cell { dim: c.dim as u32, id: names[c.dim].len() as u32 };
            names[c.dim].push(c.name.clone());
            by_name.insert(c.name.clone(), cell);
        }
        let mut faces: Vec<Vec<Vec<SetSimplex>>> = names.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for c in cells {
            let cell = by_name[&c.name];
            let expected = if c.dim == 0 { 0 } else { c.dim + 1 };
            if c.faces.len() != expected {
                return Err(SimplicialError::FaceCount { name: c.name.clone(), dim: c.dim, expected, got: c.faces.len() });
            }
            let mut fs = Vec::new();
            for (i, (fname, word)) in c.faces.iter().enumerate() {
                let base = *by_name.get(fname).ok_or_else(|| SimplicialError::UnknownSimplex(fname.clone()))?;
                let s = SetSimplex::from_word(base, word)?;
                if s.dim() + 1 != c.dim {
                    return Err(SimplicialError::FaceDimension { name: c.name.clone(), i, got: s.dim(), expected: c.dim - 1 });
                }
                fs.push(s);
            }
            faces[cell.dim as usize][cell.id as usize] = fs;
        }
        let set = Self { names, faces, vertices: None, by_vertices: HashMap::new(), by_name };
        set.check_identities()?;
        Ok(set)
    }

    /// Verify `d_i d_j = d_{j-1} d_i` for `i < j` on every stored simplex.
    pub fn check_identities(&self) -> Result<(), SimplicialError> {
        for d in 2..self.faces.len() {
            for id in 0..self.faces[d].len() {
                let s = SetSimplex::nondegenerate(Cell { dim: d as u32, id: id as u32 });
                for j in 1..=d {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&s, j), i);
                        let rhs = self.face(&self.face(&s, i), j - 1);
                        if lhs != rhs {
                            return Err(SimplicialError::Identity { name: self.names[d][id].clone(), i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Highest dimension with a nondegenerate simplex.
    pub fn max_dim(&self) -> usize {
        self.names.len().saturating_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.count(dim)).map(move |id| Cell { dim: dim as u32, id: id as u32 })
    }

    pub fn name(&self, c: Cell) -> &str {
        &self.names[c.dim as usize][c.id as usize]
    }

    pub fn cell_by_name(&self, name: &str) -> Option<Cell> {
        self.by_name.get(name).copied()
    }

    /// Vertex labels, for sets built from ordered complexes.
    pub fn vertices(&self, c: Cell) -> Option<&[usize]> {
        self.vertices.as_ref().map(|v| v[c.dim as usize][c.id as usize].as_slice())
    }

    pub fn has_vertex_labels(&self) -> bool {
        self.vertices.is_some()
    }

    pub fn cell_of_vertices(&self, v: &[usize]) -> Option<Cell> {
        self.by_vertices.get(v).copied()
    }

    /// The stored face `d_i` of a nondegenerate cell.
    pub fn cell_face(&self, c: Cell, i: usize) -> &SetSimplex {
        &self.faces[c.dim as usize][c.id as usize][i]
    }

    fn pull_through(&self, base: Cell, comp: Vec<u32>) -> SetSimplex {
        let k = base.dim;
        let mut seen = vec![false; k as usize + 1];
        for &v in &comp {
            seen[v as usize] = true;
        }
        match (0..=k).rev().find(|&j| !seen[j as usize]) {
            None => SetSimplex { base, eta: comp },
            Some(j) => {
                let t = self.cell_face(base, j as usize);
                let next = comp.iter().map(|&v| t.eta[(if v > j { v - 1 } else { v }) as usize]).collect();
                self.pull_through(t.base, next)
            }
        }
    }

    /// Normalized chain boundary on cells.
    pub fn chain_boundary<R: Coefficient>(&self, c: &FormalSum<Cell, R>) -> FormalSum<Cell, R> {
        let mut out = FormalSum::zero();
        for (cell, coeff) in c {
            if cell.dim == 0 {
                continue;
            }
            for (i, f) in self.faces[cell.dim as usize][cell.id as usize].iter().enumerate() {
                if !f.is_degenerate() {
                    out.add_term(f.base, R::sign(i as i64) * coeff.clone());
                }
            }
        }
        out
    }

    /// Label used in text and JSON output: the vertex list or the cell name.
    pub fn label(&self, c: Cell) -> String {
        self.name(c).to_string()
    }
}

impl SimplicialObject for FiniteSet {
    type Simplex = SetSimplex;

    fn dim(&self, s: &SetSimplex) -> usize {
        s.dim()
    }

    fn pullback(&self, s: &SetSimplex, theta: &[usize]) -> SetSimplex {
        let comp = theta.iter().map(|&t| s.eta[t]).collect();
        self.pull_through(s.base, comp)
    }

    fn is_degenerate_at(&self, s: &SetSimplex, i: usize) -> bool {
        s.eta[i] == s.eta[i + 1]
    }

    fn is_degenerate(&self, s: &SetSimplex) -> bool {
        s.is_degenerate()
    }
}

/// A simplicial map between finite sets, given on nondegenerate cells.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    images: Vec<Vec<SetSimplex>>,
}

impl SimplicialMap {
    /// The map of ordered complexes induced by a monotone-on-simplices vertex map.
    pub fn from_vertex_map(src: &FiniteSet, tgt: &FiniteSet, f: impl Fn(usize) -> usize) -> Result<Self, SimplicialError> {
        let mut images = Vec::new();
        for d in 0..=src.max_dim() {
            let mut row = Vec::new();
            for c in src.cells(d) {
                let vs: Vec<usize> = src.vertices(c).ok_or_else(|| SimplicialError::BadMap(vec![]))?.iter().map(|&v| f(v)).collect();
                if vs.windows(2).any(|w| w[0] > w[1]) {
                    return Err(SimplicialError::BadMap(vs));
                }
                let distinct: Vec<usize> = vs.iter().copied().dedup().collect();
                let base = tgt.cell_of_vertices(&distinct).ok_or_else(|| SimplicialError::BadMap(vs.clone()))?;
                let eta = vs.iter().map(|v| distinct.iter().position(|w| w == v).unwrap() as u32).collect();
                row.push(SetSimplex { base, eta });
            }
            images.push(row);
        }
        Ok(Self { images })
    }

    /// The face inclusion `Δ^{n-1} → Δ^n` missing vertex `j`.
    pub fn face_inclusion(n: usize, j: usize) -> (FiniteSet, FiniteSet, Self) {
        let src = FiniteSet::standard_simplex(n - 1);
        let tgt = FiniteSet::standard_simplex(n);
        let m = Self::from_vertex_map(&src, &tgt, |v| if v < j { v } else { v + 1 }).expect("face inclusion");
        (src, tgt, m)
    }

    pub fn image(&self, c: Cell) -> &SetSimplex {
        &self.images[c.dim as usize][c.id as usize]
    }
}

/// A normalized cochain of cohomological degree `d`, housed in homological degree `-d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<R: Coefficient = i64> {
    pub degree: usize,
    pub values: FormalSum<Cell, R>,
}

impl<R: Coefficient> Cochain<R> {
    pub fn zero(degree: usize) -> Self {
        Self { degree, values: FormalSum::zero() }
    }

    /// The dual of a single nondegenerate simplex.
    pub fn dual(c: Cell) -> Self {
        Self { degree: c.dim as usize, values: FormalSum::basis(c) }
    }

    /// Builds a cochain, rejecting support outside degree `degree`.
    pub fn from_values(degree: usize, values: FormalSum<Cell, R>) -> Self {
        assert!(values.keys().all(|c| c.dim as usize == degree), "cochain support must lie in one degree");
        Self { degree, values }
    }

    pub fn homological_degree(&self) -> i64 {
        -(self.degree as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    pub fn value(&self, c: Cell) -> R {
        self.values.coeff(&c)
    }

    /// Value on a possibly degenerate simplex (zero on degenerate ones).
    pub fn value_on(&self, s: &SetSimplex) -> R {
        if s.is_degenerate() || s.base.dim as usize != self.degree {
            R::zero()
        } else {
            self.value(s.base)
        }
    }

    /// `(δc)(y) = (-1)^{d+1} Σ_i (-1)^i c(d_i y)`, the differential on maps to the ground ring.
    pub fn coboundary(&self, x: &FiniteSet) -> Self {
        let d = self.degree;
        let glob = R::sign(d as i64 + 1);
        let mut values = FormalSum::zero();
        for y in x.cells(d + 1) {
            let mut v = R::zero();
            for i in 0..=d + 1 {
                let f = x.cell_face(y, i);
                if !f.is_degenerate() {
                    v = v + R::sign(i as i64) * self.value(f.base);
                }
            }
            values.add_term(y, v * glob.clone());
        }
        Self { degree: d + 1, values }
    }

    pub fn is_cocycle_mod(&self, x: &FiniteSet, p: &R) -> bool {
        self.coboundary(x).values.is_zero_mod(p)
    }

    pub fn reduce_mod(&self, p: &R) -> Self {
        Self { degree: self.degree, values: self.values.reduce_mod(p) }
    }

    pub fn scaled(&self, c: &R) -> Self {
        Self { degree: self.degree, values: self.values.scaled(c) }
    }

    /// `self += c * other`; degrees must agree unless one side is zero.
    pub fn add_scaled(&mut self, other: &Self, c: &R) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = other.degree;
        }
        assert_eq!(self.degree, other.degree, "adding cochains of different degrees");
        self.values.add_scaled(&other.values, c);
    }

    /// Pull back along a simplicial map `f: src → tgt`.
    pub fn pullback(&self, src: &FiniteSet, f: &SimplicialMap) -> Self {
        let values = src.cells(self.degree).map(|c| (c, self.value_on(f.image(c)))).collect();
        Self { degree: self.degree, values }
    }

    /// Cup product dual to Alexander–Whitney, `(a⌣b)(y) = (-1)^{pq} a(y_{0..p}) b(y_{p..p+q})`.
    /// The sign is the Koszul sign of evaluating `a⊗b` and makes `⌣` a chain map
    /// for the coboundary used here; it is the product `φ(e_2)`.
    pub fn cup(&self, other: &Self, x: &FiniteSet) -> Self {
        let sign = R::sign((self.degree * other.degree) as i64);
        self.front_back(other, x).scaled(&sign)
    }

    /// `(a, b) ↦ [y ↦ a(y_{0..p}) b(y_{p..p+q})]` with no sign.
    pub fn front_back(&self, other: &Self, x: &FiniteSet) -> Self {
        let (p, q) = (self.degree, other.degree);
        let front: Vec<usize> = (0..=p).collect();
        let back: Vec<usize> = (p..=p + q).collect();
        let values = x
            .cells(p + q)
            .map(|y| {
                let s = SetSimplex::nondegenerate(y);
                (y, self.value_on(&x.pullback(&s, &front)) * other.value_on(&x.pullback(&s, &back)))
            })
            .collect();
        Self { degree: p + q, values }
    }

    /// Text form `c1*label1 + …` using the host's cell labels.
    pub fn display(&self, x: &FiniteSet) -> String {
        let labelled: FormalSum<String, R> = self.values.map_basis(|c| Some((x.label(*c), R::one())));
        labelled.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Seq = PointSeq<usize>;

    fn seq_product() -> Product<Seq, Seq> {
        Product::new(Seq::new(), Seq::new())
    }

    #[test]
    fn standard_simplex_counts() {
        let x = FiniteSet::standard_simplex(2);
        assert_eq!((x.count(0), x.count(1), x.count(2)), (3, 3, 1));
        let s = FiniteSet::boundary_of_simplex(3);
        assert_eq!((s.count(0), s.count(1), s.count(2), s.count(3)), (4, 6, 4, 0));
    }

    #[test]
    fn boundary_of_triangle() {
        let x = FiniteSet::standard_simplex(2);
        let t = FormalSum::<Cell>::basis(x.cell_of_vertices(&[0, 1, 2]).unwrap());
        let b = x.chain_boundary(&t);
        let c = |v: &[usize]| x.cell_of_vertices(v).unwrap();
        let expected: FormalSum<Cell> = [(c(&[1, 2]), 1), (c(&[0, 2]), -1), (c(&[0, 1]), 1)].into_iter().collect();
        assert_eq!(b, expected);
        let x3 = FiniteSet::standard_simplex(3);
        let top = FormalSum::<Cell>::basis(x3.cell_of_vertices(&[0, 1, 2, 3]).unwrap());
        assert!(x3.chain_boundary(&x3.chain_boundary(&top)).is_zero());
    }

    #[test]
    fn product_square_has_two_triangles() {
        assert_eq!(standard_product_simplices(1, 1, 2).len(), 2);
        assert_eq!(standard_product_simplices(0, 1, 1).len(), 1);
    }

    #[test]
    fn aw_of_diagonal_edge() {
        let e: FormalSum<Vec<usize>> = FormalSum::basis(vec![0, 1]);
        let got = diagonal_aw(&Seq::new(), &e);
        let expected: FormalSum<_> =
            [(Tensor(vec![0], vec![0, 1]), 1), (Tensor(vec![0, 1], vec![1]), 1)].into_iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn ez_two_edges() {
        let t = FormalSum::basis(Tensor(vec![0usize, 1], vec![0usize, 1]));
        let got = ez(&seq_product(), &t);
        // (s_1 x, s_0 y) - (s_0 x, s_1 y)
        let expected: FormalSum<_> =
            [((vec![0, 1, 1], vec![0, 0, 1]), 1), ((vec![0, 0, 1], vec![0, 1, 1]), -1)].into_iter().collect();
        assert_eq!(got, expected);
        let v = FormalSum::<_, i64>::basis(Tensor(vec![0usize], vec![0usize, 1]));
        assert_eq!(ez(&seq_product(), &v), FormalSum::basis((vec![0, 0], vec![0, 1])));
    }

    #[test]
    fn shi_vanishes_on_vertices() {
        let z = FormalSum::<(Vec<usize>, Vec<usize>)>::basis((vec![0], vec![1]));
        assert!(shi(&seq_product(), &z).is_zero());
    }

    #[test]
    fn degeneracy_word_round_trip() {
        let base = Cell { dim: 1, id: 0 };
        let s = SetSimplex::from_word(base, &[2, 0]).unwrap();
        assert_eq!(s.eta, vec![0, 0, 1, 1]);
        assert_eq!(s.degeneracy_word(), vec![2, 0]);
        assert!(SetSimplex::from_word(base, &[0, 2]).is_err());
    }

    #[test]
    fn general_circle() {
        let cells = vec![
            CellSpec { name: "v".into(), dim: 0, faces: vec![] },
            CellSpec { name: "e".into(), dim: 1, faces: vec![("v".into(), vec![]), ("v".into(), vec![])] },
        ];
        let x = FiniteSet::from_cells(&cells).unwrap();
        let e = FormalSum::<Cell>::basis(x.cell_by_name("e").unwrap());
        assert!(x.chain_boundary(&e).is_zero());
    }

    #[test]
    fn unit_cup_on_point() {
        let x = FiniteSet::standard_simplex(0);
        let u = Cochain::<i64>::dual(Cell { dim: 0, id: 0 });
        assert_eq!(u.cup(&u, &x), u);
    }
}

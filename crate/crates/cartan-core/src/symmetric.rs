//! Permutations, the cyclic subgroup `C_r ⊂ S_r`, block permutations and the
//! reordering permutation `τ_r`.
//!
//! Permutations of `{1,…,r}` are stored in one-line form and composed right to
//! left: `(s∘t)(i) = s(t(i))`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation: {0}")]
    Invalid(String),
    #[error("block composition needs {expected} blocks, got {got}")]
    Arity { expected: usize, got: usize },
}

/// A permutation of `{1,…,r}` in one-line notation, stored zero-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(r: usize) -> Self {
        Self((0..r as u8).collect())
    }

    /// From one-line images `(σ(1), …, σ(r))`, one-based.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &v in images {
            if v == 0 || v > r || seen[v - 1] {
                return Err(PermError::Invalid(format!("{images:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Self(images.iter().map(|&v| (v - 1) as u8).collect()))
    }

    /// Parse cycle notation such as `(1,3)(2,4)` for a permutation of `{1,…,r}`.
    pub fn from_cycles(text: &str, r: usize) -> Result<Self, PermError> {
        let bad = || PermError::Invalid(text.to_string());
        let mut img: Vec<usize> = (1..=r).collect();
        let mut used = vec![false; r + 1];
        let t = text.trim();
        if t.is_empty() || t == "()" {
            return Self::from_images(&img);
        }
        for part in t.split(')') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let body = part.strip_prefix('(').ok_or_else(bad)?;
            let cyc: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            for (i, &a) in cyc.iter().enumerate() {
                if a == 0 || a > r || used[a] {
                    return Err(bad());
                }
                used[a] = true;
                img[a - 1] = cyc[(i + 1) % cyc.len()];
            }
        }
        Self::from_images(&img)
    }

    /// One-line images, one-based.
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// `σ(i)` for a one-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize + 1
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "composing permutations of different arity");
        Self(other.0.iter().map(|&t| self.0[t as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.arity()), |acc, _| acc.compose(self))
    }

    pub fn sign(&self) -> i64 {
        let inv = (0..self.0.len())
            .flat_map(|i| (i + 1..self.0.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count();
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Disjoint cycle notation, fixed points omitted, `()` for the identity.
    pub fn cycles(&self) -> String {
        let r = self.arity();
        let mut seen = vec![false; r];
        let mut out = String::new();
        for start in 0..r {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.0[i] as usize;
            }
            out.push_str(&format!("({})", cyc.join(",")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Perm {
    /// One-line notation: digits run together for `r < 10`, otherwise dot-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs = self.images();
        if imgs.len() < 10 {
            for v in imgs {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = imgs.iter().map(usize::to_string).collect();
            write!(f, "{}", s.join("."))
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{self}]")
    }
}

/// `ρ^k`, where `ρ = (1,2,…,r)` sends `i` to `i+1 mod r`.
pub fn rho(r: usize, k: usize) -> Perm {
    Perm((0..r).map(|i| ((i + k) % r) as u8).collect())
}

/// The element `ρ^k` of `C_r`, identified with `k ∈ {0,…,r-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cyclic {
    pub r: usize,
    pub k: usize,
}

impl Cyclic {
    pub fn new(r: usize, k: i64) -> Self {
        Self { r, k: k.rem_euclid(r as i64) as usize }
    }

    pub fn as_perm(&self) -> Perm {
        rho(self.r, self.k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.r, (self.k + other.k) as i64)
    }
}

/// `τ_r ∈ S_{2r}`: `ℓ ↦ 2ℓ-1` for `ℓ ≤ r`, `ℓ ↦ 2(ℓ-r)` for `ℓ > r`.
pub fn tau(r: usize) -> Perm {
    let imgs: Vec<usize> = (1..=2 * r).map(|l| if l <= r { 2 * l - 1 } else { 2 * (l - r) }).collect();
    Perm::from_images(&imgs).expect("tau is a bijection")
}

/// The operadic block permutation `s(t_1, …, t_r)`: block `i` holds `t_i` and
/// blocks are permuted by `s`.
pub fn block_compose(s: &Perm, ts: &[Perm]) -> Result<Perm, PermError> {
    let r = s.arity();
    if ts.len() != r {
        return Err(PermError::Arity { expected: r, got: ts.len() });
    }
    let mut offset = vec![0usize; r];
    for v in 0..r {
        offset[v] = (0..r).filter(|&i| (s.0[i] as usize) < v).map(|i| ts[i].arity()).sum();
    }
    let mut out = Vec::new();
    for (i, t) in ts.iter().enumerate() {
        let off = offset[s.0[i] as usize];
        out.extend(t.0.iter().map(|&x| (off + x as usize) as u8));
    }
    Ok(Perm(out))
}

/// `f(ρ^k) = ρ^k(e, …, e)`, the cyclic group acting on `r` blocks of size two.
pub fn f_hom(r: usize, k: usize) -> Perm {
    block_compose(&rho(r, k), &vec![Perm::identity(2); r]).expect("arity")
}

/// `g(ρ^k) = e(ρ^k, ρ^k)`, the diagonal action on two blocks of size `r`.
pub fn g_hom(r: usize, k: usize) -> Perm {
    let p = rho(r, k);
    block_compose(&Perm::identity(2), &[p.clone(), p]).expect("arity")
}

/// The action `C_r → C_r × C_r → S_r × S_r → S_{2r}` defining the wedge module;
/// it agrees with `g`.
pub fn splice_action(r: usize, k: usize) -> Perm {
    let p = rho(r, k);
    let mut imgs = p.images();
    imgs.extend(p.images().iter().map(|v| v + r));
    Perm::from_images(&imgs).expect("splice is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str, r: usize) -> Perm {
        Perm::from_cycles(s, r).unwrap()
    }

    #[test]
    fn tau_images() {
        assert!(tau(1).is_identity());
        assert_eq!(tau(2).images(), vec![1, 3, 2, 4]);
        assert_eq!(tau(3).images(), vec![1, 3, 5, 2, 4, 6]);
    }

    #[test]
    fn f_and_g_of_rho() {
        assert_eq!(f_hom(2, 1), cyc("(1,3)(2,4)", 4));
        assert_eq!(g_hom(2, 1), cyc("(1,2)(3,4)", 4));
        assert_eq!(f_hom(3, 1), cyc("(1,3,5)(2,4,6)", 6));
        assert_eq!(g_hom(3, 1), cyc("(1,2,3)(4,5,6)", 6));
        assert!(f_hom(5, 0).is_identity());
    }

    #[test]
    fn conjugation_identity() {
        for r in 2..=7 {
            for k in 0..r {
                assert_eq!(f_hom(r, k).compose(&tau(r)), tau(r).compose(&g_hom(r, k)), "r={r} k={k}");
            }
        }
    }

    #[test]
    fn splice_is_g() {
        for r in 1..=5 {
            for k in 0..r {
                assert_eq!(splice_action(r, k), g_hom(r, k));
            }
        }
        assert!(splice_action(3, 0).is_identity());
    }

    #[test]
    fn cycle_round_trip() {
        let p = cyc("(1,3,2)", 4);
        assert_eq!(p.cycles(), "(1,3,2)");
        assert_eq!(Perm::from_cycles(&p.cycles(), 4).unwrap(), p);
        assert!(Perm::from_cycles("(1,1)", 3).is_err());
    }

    #[test]
    fn block_arity_error() {
        assert!(block_compose(&Perm::identity(2), &[Perm::identity(1)]).is_err());
    }
}

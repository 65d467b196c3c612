//! Chain-level representatives of the operations `D_i^p`, `P_s` and `βP_s`.

use thiserror::Error;

use crate::algebra::Coefficient;
use crate::resolution::cup_operation;
use crate::simplicial::{Cochain, FiniteSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("input is not a cocycle mod {0}")]
    NotCocycle(u64),
    #[error("Bockstein flag must be 0 or 1, got {0}")]
    BadBockstein(u8),
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn check_odd_prime(p: u64) -> Result<(), SteenrodError> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(SteenrodError::NotOddPrime(p))
    }
}

fn factorial(m: u64) -> u64 {
    (1..=m).product()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `ν(n) = (-1)^{n(n-1)m/2} (m!)^n` with `m = (p-1)/2`, for `n ≥ 0`.
pub fn nu<R: Coefficient>(n: u64, p: u64) -> R {
    let m = (p - 1) / 2;
    let f = R::from_u64(factorial(m)).expect("factorial fits");
    let mut v = R::one();
    for _ in 0..n {
        v = v * f.clone();
    }
    let e = (n * n.saturating_sub(1) / 2 * m) as i64;
    v * R::sign(e)
}

/// `ν(n)` as a residue mod `p`, defined for every integer `n` since `m!` is a unit.
pub fn nu_mod(n: i64, p: u64) -> u64 {
    let m = (p - 1) / 2;
    let f = factorial(m) % p;
    let base = if n >= 0 { pow_mod(f, n as u64, p) } else { pow_mod(pow_mod(f, p - 2, p), n.unsigned_abs(), p) };
    // n(n-1)/2 is an integer for every n
    let e = (n * (n - 1) / 2).rem_euclid(2) * (m as i64 % 2);
    if e % 2 == 0 {
        base
    } else {
        (p - base) % p
    }
}

/// `D_i^p(a)` represented by `ψ_i(a^{⊗p})`.
pub fn d_rep<R: Coefficient>(i: usize, p: u64, a: &Cochain<R>, host: &FiniteSet) -> Result<Cochain<R>, SteenrodError> {
    check_odd_prime(p)?;
    let pr = R::from_u64(p).expect("prime fits");
    if !a.is_cocycle_mod(host, &pr) {
        return Err(SteenrodError::NotCocycle(p));
    }
    let inputs = vec![a; p as usize];
    Ok(cup_operation::<R>(p as usize, i).apply(&inputs, host))
}

/// The index `(2s - n)(p-1) - ε` of the `D` operation behind `P_s` or `βP_s`,
/// with `n` the homological degree of the input.
pub fn steenrod_index(s: i64, epsilon: u8, p: u64, n: i64) -> i64 {
    (2 * s - n) * (p as i64 - 1) - epsilon as i64
}

/// `(-1)^s ν(n) D^p_{(2s-n)(p-1)-ε}(a)` reduced mod `p`, where `n = -deg a` is the
/// homological degree. A negative index gives the zero cochain.
pub fn steenrod_rep<R: Coefficient>(
    s: i64,
    epsilon: u8,
    p: u64,
    a: &Cochain<R>,
    host: &FiniteSet,
) -> Result<Cochain<R>, SteenrodError> {
    if epsilon > 1 {
        return Err(SteenrodError::BadBockstein(epsilon));
    }
    check_odd_prime(p)?;
    let pr = R::from_u64(p).expect("prime fits");
    if !a.is_cocycle_mod(host, &pr) {
        return Err(SteenrodError::NotCocycle(p));
    }
    let n = a.homological_degree();
    let idx = steenrod_index(s, epsilon, p, n);
    let out_degree = (a.degree as i64 * p as i64 - idx).max(0) as usize;
    if idx < 0 {
        return Ok(Cochain::zero(out_degree));
    }
    let d = d_rep(idx as usize, p, a, host)?;
    let scalar = R::from_u64(nu_mod(n, p)).unwrap() * R::sign(s);
    Ok(d.scaled(&scalar).reduce_mod(&pr))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_values() {
        assert_eq!(nu::<i64>(0, 3), 1);
        assert_eq!(nu::<i64>(1, 3), 1);
        assert_eq!(nu::<i64>(2, 3), -1);
        assert_eq!(nu::<i64>(1, 5), 2);
        assert_eq!(nu::<i64>(0, 7), 1);
        for n in 0..6 {
            assert_eq!(nu_mod(n, 5) as i64, nu::<i64>(n as u64, 5).rem_euclid(5));
        }
        assert_eq!(nu_mod(-1, 5) * 2 % 5, 1);
    }

    #[test]
    fn index_and_primes() {
        assert_eq!(steenrod_index(0, 0, 3, 0), 0);
        assert!(steenrod_index(0, 1, 3, 0) < 0);
        assert!(check_odd_prime(2).is_err());
        assert!(check_odd_prime(9).is_err());
        assert!(check_odd_prime(7).is_ok());
    }

    #[test]
    fn unit_on_point() {
        let x = FiniteSet::standard_simplex(0);
        let u = Cochain::<i64>::dual(x.cells(0).next().unwrap());
        assert_eq!(d_rep(0, 3, &u, &x).unwrap(), u);
        assert!(d_rep(1, 3, &u, &x).unwrap().is_zero());
        assert_eq!(steenrod_rep(0, 0, 3, &u, &x).unwrap(), u);
    }
}

//! The coefficient rings used by truncated series.

use std::fmt::Debug;

use crate::ffpoly::{Elem, RatFunc};

/// A commutative ring whose elements know their own zero and one.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplication by an element of F_q.
    fn scale_elem(&self, c: Elem) -> Self;
    /// Inverse, when it exists and is cheap to find.
    fn try_inv(&self) -> Option<Self>;
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.field())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale_elem(&self, c: Elem) -> Self {
        self.scale(c)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        // small binomial by the multiplicative formula in Z/p
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..b {
            num = num * ((a - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        r = r * num % p * inv_mod(den, p) % p;
        n /= p;
        k /= p;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_matches_pascal() {
        for p in [2u64, 3, 5] {
            let mut row = vec![1u64];
            for n in 0..40u64 {
                for (k, &c) in row.iter().enumerate() {
                    assert_eq!(binom_mod_p(n, k as u64, p), c % p, "C({n},{k}) mod {p}");
                }
                let mut next = vec![1u64; row.len() + 1];
                for k in 1..row.len() {
                    next[k] = (row[k - 1] + row[k]) % p;
                }
                row = next;
            }
        }
    }
}

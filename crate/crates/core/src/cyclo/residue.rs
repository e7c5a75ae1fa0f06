//! Reduction of cyclotomic integers modulo a prime above `p`.
//!
//! For a group of exponent `n = p^a n'` the residue field is `GF(p^m)` with
//! `m = ord_{n'}(p)`. It is presented as `F_p[x]/(f)` with `f` the least monic
//! irreducible polynomial of degree `m` (coefficients compared from the
//! constant term upward as a base-`p` number). `ζ_{n'}` is sent to
//! `c^((p^m-1)/n')` for the first `c` in the same order for which that power
//! has order exactly `n'`; `p`-power roots of unity go to `1`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Cyclotomic;
use crate::error::{Error, Result};
use crate::numtheory::{inv_mod, is_prime, multiplicative_order, prime_divisors, split_p_part};

/// An element of `GF(p^m)` as coefficients of `1, x, .., x^(m-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueElement(pub Vec<u64>);

impl ResidueElement {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

pub struct ResidueField {
    p: u64,
    m: usize,
    /// Monic modulus, low degree first, length `m + 1`.
    modulus: Vec<u64>,
    exponent: u64,
    p_part: u64,
    p_prime: u64,
    zeta: ResidueElement,
    powers: Mutex<HashMap<u64, ResidueElement>>,
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p).unwrap();
    while r.len() > db {
        let top = r.len() - 1;
        let f = r[top] * lead_inv % p;
        if f != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = top - db + i;
                r[idx] = (r[idx] + p - f * bi % p) % p;
            }
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

impl ResidueField {
    /// The residue field used for characters of a group with exponent `exponent`.
    pub fn new(p: u64, exponent: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if exponent == 0 {
            return Err(Error::Input("exponent must be positive".into()));
        }
        let (p_part, p_prime) = split_p_part(exponent, p);
        let m = if p_prime == 1 { 1 } else { multiplicative_order(p % p_prime, p_prime) as usize };
        let mut field = ResidueField {
            p,
            m,
            modulus: Vec::new(),
            exponent,
            p_part,
            p_prime,
            zeta: ResidueElement(Vec::new()),
            powers: Mutex::new(HashMap::new()),
        };
        field.modulus = field.least_irreducible();
        field.zeta = field.find_zeta()?;
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn zeta_image(&self) -> &ResidueElement {
        &self.zeta
    }

    fn digits(&self, mut r: u64, len: usize) -> Vec<u64> {
        (0..len)
            .map(|_| {
                let d = r % self.p;
                r /= self.p;
                d
            })
            .collect()
    }

    fn is_irreducible(&self, f: &[u64]) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 0..m / 2 {
            h = self.poly_pow_mod(&h, &BigUint::from(self.p), f);
            let mut d = h.clone();
            d.resize(d.len().max(2), 0);
            d[1] = (d[1] + self.p - 1) % self.p;
            let g = poly_gcd(&d, f, self.p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    fn least_irreducible(&self) -> Vec<u64> {
        let mut r = 0u64;
        loop {
            let mut f = self.digits(r, self.m);
            f.push(1);
            if self.is_irreducible(&f) {
                return f;
            }
            r += 1;
        }
    }

    fn poly_mul_mod(&self, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p;
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        poly_rem(&prod, f, p)
    }

    fn poly_pow_mod(&self, a: &[u64], e: &BigUint, f: &[u64]) -> Vec<u64> {
        let mut acc = vec![1u64];
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.poly_mul_mod(&acc, &acc, f);
            if e.bit(i) {
                acc = self.poly_mul_mod(&acc, a, f);
            }
        }
        poly_rem(&acc, f, self.p)
    }

    fn embed(&self, mut v: Vec<u64>) -> ResidueElement {
        trim(&mut v);
        v.resize(self.m, 0);
        ResidueElement(v)
    }

    fn raw(&self, a: &ResidueElement) -> Vec<u64> {
        let mut v = a.0.clone();
        trim(&mut v);
        v
    }

    fn find_zeta(&self) -> Result<ResidueElement> {
        let n = self.p_prime;
        let order = BigUint::from(self.p).pow(self.m as u32) - BigUint::one();
        let cofactor = &order / BigUint::from(n);
        let qs = prime_divisors(n);
        let total = (self.p as u128).checked_pow(self.m as u32).unwrap_or(u128::MAX);
        let mut r: u128 = 1;
        while r < total {
            let c = self.digits_u128(r);
            let h = self.pow_big(&c, &cofactor);
            if qs.iter().all(|&q| self.pow(&h, n / q) != self.one()) {
                return Ok(h);
            }
            r += 1;
        }
        Err(Error::Internal(format!("no element of order {n} in GF({}^{})", self.p, self.m)))
    }

    fn digits_u128(&self, mut r: u128) -> ResidueElement {
        let v = (0..self.m)
            .map(|_| {
                let d = (r % self.p as u128) as u64;
                r /= self.p as u128;
                d
            })
            .collect();
        ResidueElement(v)
    }

    pub fn zero(&self) -> ResidueElement {
        ResidueElement(vec![0; self.m])
    }

    pub fn one(&self) -> ResidueElement {
        self.from_integer(1)
    }

    pub fn from_integer(&self, v: i64) -> ResidueElement {
        let mut e = self.zero();
        e.0[0] = v.rem_euclid(self.p as i64) as u64;
        e
    }

    pub fn add(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        ResidueElement(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn neg(&self, a: &ResidueElement) -> ResidueElement {
        ResidueElement(a.0.iter().map(|x| (self.p - x) % self.p).collect())
    }

    pub fn mul(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        self.embed(self.poly_mul_mod(&self.raw(a), &self.raw(b), &self.modulus))
    }

    pub fn pow(&self, a: &ResidueElement, e: u64) -> ResidueElement {
        self.pow_big(a, &BigUint::from(e))
    }

    fn pow_big(&self, a: &ResidueElement, e: &BigUint) -> ResidueElement {
        self.embed(self.poly_pow_mod(&self.raw(a), e, &self.modulus))
    }

    /// The Frobenius `y ↦ y^p`.
    pub fn frobenius(&self, a: &ResidueElement) -> ResidueElement {
        self.pow(a, self.p)
    }

    /// Image of `ζ_n^k` where `n` is the field's exponent.
    pub fn root_image(&self, k: u64) -> ResidueElement {
        let np = self.p_prime;
        let j = if np == 1 {
            0
        } else {
            let kk = (k % self.exponent) % np;
            ((kk as u128 * inv_mod(self.p_part % np, np).unwrap() as u128) % np as u128) as u64
        };
        let mut cache = self.powers.lock().unwrap();
        cache.entry(j).or_insert_with(|| self.pow(&self.zeta, j)).clone()
    }

    /// Reduction of a cyclotomic number whose conductor divides the exponent
    /// and whose coefficients have denominators prime to `p`.
    pub fn reduce(&self, x: &Cyclotomic) -> Result<ResidueElement> {
        let c = x.conductor();
        if !self.exponent.is_multiple_of(c) {
            return Err(Error::Domain(format!("conductor {c} does not divide the exponent {}", self.exponent)));
        }
        let scale = self.exponent / c;
        let pb = BigInt::from(self.p);
        let mut acc = self.zero();
        for (k, q) in x.terms() {
            let den = q.denom().mod_floor(&pb).to_u64().unwrap();
            if den == 0 {
                return Err(Error::Valuation(format!("coefficient {q} has denominator divisible by {}", self.p)));
            }
            let num = q.numer().mod_floor(&pb).to_u64().unwrap();
            let coeff = num * inv_mod(den, self.p).unwrap() % self.p;
            if coeff == 0 {
                continue;
            }
            let root = self.root_image(k * scale);
            let term = ResidueElement(root.0.iter().map(|r| r * coeff % self.p).collect());
            acc = self.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Reduction of an integer-valued rational, for convenience.
    pub fn reduce_integer(&self, v: &BigInt) -> ResidueElement {
        let r = v.mod_floor(&BigInt::from(self.p)).to_i64().unwrap();
        if r.is_zero() {
            self.zero()
        } else {
            self.from_integer(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn field_shapes() {
        let f = ResidueField::new(2, 60).unwrap();
        assert_eq!(f.degree(), 4);
        let g = ResidueField::new(2, 2 * 3 * 5 * 7 * 11 * 19).unwrap();
        assert_eq!(g.degree(), 180);
        assert!(ResidueField::new(4, 3).is_err());
    }

    #[test]
    fn reduce_examples() {
        let f = ResidueField::new(2, 3).unwrap();
        let w = Cyclotomic::root_of_unity(3, 1);
        let s = &w + &Cyclotomic::root_of_unity(3, 2);
        assert_eq!(f.reduce(&s).unwrap(), f.one());
        assert_ne!(f.reduce(&w).unwrap(), f.one());
        let three = ResidueField::new(3, 3).unwrap();
        assert_eq!(three.reduce(&w).unwrap(), three.one());
        let half = Cyclotomic::from_rational(BigRational::new(1.into(), 2.into()));
        assert!(matches!(f.reduce(&half), Err(Error::Valuation(_))));
        assert!(matches!(f.reduce(&Cyclotomic::root_of_unity(5, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_has_exact_order() {
        let f = ResidueField::new(2, 15).unwrap();
        let z = f.zeta_image();
        assert_eq!(f.pow(z, 15), f.one());
        assert_ne!(f.pow(z, 5), f.one());
        assert_ne!(f.pow(z, 3), f.one());
    }
}

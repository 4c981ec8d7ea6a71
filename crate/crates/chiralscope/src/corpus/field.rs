//! Small finite fields GF(p^k), q ≤ 169, with table-driven arithmetic.
//!
//! Elements are indices `0..q` encoding coefficient vectors base `p`
//! (index = Σ cᵢ·pⁱ). Index 0 is zero, index 1 is one. The reducing
//! polynomial for each extension field ships as data and is re-verified
//! irreducible when the field is built.

use crate::error::{Error, Result};

pub const MAX_Q: u64 = 169;

#[derive(Clone)]
pub struct Field {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible of degree k: coefficients c₀..cₖ (cₖ = 1).
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

pub type FieldElement = u16;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q into (p, k) with p prime, or fails.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    for p in 2..=q {
        if !is_prime(p) {
            continue;
        }
        if q % p == 0 {
            let mut k = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            if m == 1 {
                return Ok((p, k));
            }
            return Err(Error::argument(format!("{q} is not a prime power")));
        }
    }
    Err(Error::argument(format!("{q} is not a prime power")))
}

/// Polynomial arithmetic helpers over GF(p); coefficient vectors are
/// little-endian, not necessarily trimmed.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&mut prod, modulus, p);
    prod.truncate(modulus.len() - 1);
    prod.resize(modulus.len() - 1, 0);
    prod
}

fn poly_rem(a: &mut Vec<u64>, modulus: &[u64], p: u64) {
    let deg_m = modulus.len() - 1;
    while a.len() > deg_m {
        let lead = *a.last().unwrap() % p;
        let shift = a.len() - 1 - deg_m;
        if lead != 0 {
            for (i, &mc) in modulus.iter().enumerate() {
                let idx = i + shift;
                a[idx] = (a[idx] + p * p - (lead * mc) % p) % p;
            }
        }
        a.pop();
    }
}

fn poly_is_irreducible(modulus: &[u64], p: u64) -> bool {
    let k = modulus.len() - 1;
    if k == 0 || *modulus.last().unwrap() != 1 {
        return false;
    }
    if k == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=k/2.
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut divisor = decode_poly(idx, p, d);
            divisor.push(1); // monic of degree d
            if poly_divides(&divisor, modulus, p) {
                return false;
            }
        }
    }
    true
}

fn decode_poly(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn poly_divides(divisor: &[u64], a: &[u64], p: u64) -> bool {
    let mut rem = a.to_vec();
    poly_rem(&mut rem, divisor, p);
    rem.iter().all(|&c| c % p == 0)
}

/// Lexicographically least monic irreducible of degree k over GF(p)
/// (compared by the coefficient index encoding).
pub fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for idx in 0..count {
        let mut candidate = decode_poly(idx, p, k as usize);
        candidate.push(1);
        if poly_is_irreducible(&candidate, p) {
            return candidate;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

impl Field {
    /// Builds GF(q) using the given reducing polynomial (verified
    /// irreducible), or the derived least one if `modulus` is `None`.
    pub fn new(q: u64, modulus: Option<Vec<u64>>) -> Result<Field> {
        if q > MAX_Q {
            return Err(Error::argument(format!(
                "field size {q} exceeds the supported maximum {MAX_Q}"
            )));
        }
        let (p, k) = prime_power(q)?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || !poly_is_irreducible(&m, p) {
                    return Err(Error::argument(format!(
                        "stored polynomial for GF({q}) is not monic irreducible of degree {k}"
                    )));
                }
                m
            }
            None => least_irreducible(p, k),
        };
        let qz = q as usize;
        let mut add = vec![0u16; qz * qz];
        let mut mul = vec![0u16; qz * qz];
        let mut neg = vec![0u16; qz];
        let mut inv = vec![0u16; qz];
        let elems: Vec<Vec<u64>> = (0..q).map(|i| decode_poly(i, p, k as usize)).collect();
        let encode = |coeffs: &[u64]| -> u16 {
            let mut idx = 0u64;
            for &c in coeffs.iter().rev() {
                idx = idx * p + c % p;
            }
            idx as u16
        };
        for i in 0..qz {
            for j in 0..qz {
                let sum: Vec<u64> = elems[i]
                    .iter()
                    .zip(&elems[j])
                    .map(|(a, b)| (a + b) % p)
                    .collect();
                add[i * qz + j] = encode(&sum);
                let prod = poly_mul_mod(&elems[i], &elems[j], &modulus, p);
                mul[i * qz + j] = encode(&prod);
            }
            let negated: Vec<u64> = elems[i].iter().map(|&a| (p - a) % p).collect();
            neg[i] = encode(&negated);
        }
        for i in 1..qz {
            for j in 1..qz {
                if mul[i * qz + j] == 1 {
                    inv[i] = j as u16;
                    break;
                }
            }
            if inv[i] == 0 {
                return Err(Error::integrity(format!(
                    "element {i} of GF({q}) has no inverse; polynomial table is wrong"
                )));
            }
        }
        Ok(Field {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        0
    }

    pub fn one(&self) -> FieldElement {
        1
    }

    /// Coefficient vector of an element over the prime field.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        decode_poly(a as u64, self.p, self.k as usize)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a == 0 {
            return Err(Error::argument("zero has no inverse"));
        }
        Ok(self.inv[a as usize])
    }

    /// The standard basis 1, x, x², … of the extension over its prime field.
    pub fn basis(&self) -> Vec<FieldElement> {
        (0..self.k).map(|i| self.p.pow(i) as u16).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.q as u16
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert_eq!(prime_power(169).unwrap(), (13, 2));
        assert!(prime_power(6).is_err());
        assert!(prime_power(1).is_err());
    }

    #[test]
    fn least_irreducibles_are_irreducible() {
        for &(p, k) in &[(2u64, 2u32), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (11, 2), (13, 2)] {
            let m = least_irreducible(p, k);
            assert!(poly_is_irreducible(&m, p), "p={p} k={k}");
            assert_eq!(m.len(), k as usize + 1);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        // a·a⁻¹ = 1 for all nonzero a, exhaustively for q ≤ 64;
        // distributivity spot-checked on full tables for the smallest fields.
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64] {
            let f = Field::new(q, None).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
            }
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
            }
        }
        let f = Field::new(9, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn largest_supported_field_works() {
        let f = Field::new(169, None).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x² + 1 is reducible over GF(2): (x+1)².
        assert!(Field::new(4, Some(vec![1, 0, 1])).is_err());
    }
}

//! Arithmetic in GF(q) for prime powers q ≤ 32.
//!
//! Elements are the integers `0..q`. For q = p^m with m > 1 the base-p digits
//! of an element are its polynomial coefficients, constant term first, and
//! products are reduced modulo the smallest irreducible monic polynomial of
//! degree m (smallest under the same integer encoding).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element under the canonical integer encoding.
pub type Elem = u8;

pub const MAX_ORDER: u32 = 32;

#[derive(Debug)]
struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// A finite field GF(q), q = p^m, with full operation tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    tables: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Splits `q` as `p^m`, or `None` if it is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    if !is_prime(p) {
        return None;
    }
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

// Dense polynomials over GF(p), constant term first, no trailing zeros.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_from_code(mut code: u32, p: u32) -> Vec<u32> {
    let mut out = Vec::new();
    while code > 0 {
        out.push(code % p);
        code /= p;
    }
    out
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|b| a * b % p == 1)
        .expect("nonzero residue mod a prime")
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - factor * c % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

/// Exhaustive trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = poly_trim(poly.to_vec());
    let deg = match poly.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    for d in 1..=deg / 2 {
        let lead = p.pow(d as u32);
        for code in lead..2 * lead {
            let divisor = poly_from_code(code, p);
            if poly_rem(&poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest irreducible monic polynomial of degree `m` over GF(p).
fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    let lead = p.pow(m);
    (lead..2 * lead)
        .map(|code| poly_from_code(code, p))
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds GF(q) for a prime power `2 ≤ q ≤ 32`.
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(Error::UnsupportedField(q));
        }
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus = (m > 1).then(|| canonical_modulus(p, m));
        let tables = build_tables(p, m, q, modulus.as_deref());
        Ok(Self {
            p,
            m,
            q,
            modulus,
            tables: Arc::new(tables),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order as a usize, for indexing and counting.
    pub fn order(&self) -> usize {
        self.q as usize
    }

    /// Coefficients of the reduction polynomial, constant term first.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.q as Elem
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    fn check(&self, a: u32) -> Result<Elem> {
        if self.contains(a) {
            Ok(a as Elem)
        } else {
            Err(Error::ElementOutOfRange { elem: a, q: self.q })
        }
    }

    #[inline]
    fn idx(&self, a: Elem, b: Elem) -> usize {
        a as usize * self.q as usize + b as usize
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!((a as u32) < self.q && (b as u32) < self.q);
        self.tables.add[self.idx(a, b)]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.tables.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!((a as u32) < self.q && (b as u32) < self.q);
        self.tables.mul[self.idx(a, b)]
    }

    /// Multiplicative inverse; panics on zero. See [`FieldSpec::try_inv`].
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "zero has no multiplicative inverse");
        self.tables.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, mut e: u32) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn try_add(&self, a: u32, b: u32) -> Result<Elem> {
        Ok(self.add(self.check(a)?, self.check(b)?))
    }

    pub fn try_mul(&self, a: u32, b: u32) -> Result<Elem> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    pub fn try_inv(&self, a: u32) -> Result<Elem> {
        match self.check(a)? {
            0 => Err(Error::ZeroInverse),
            a => Ok(self.inv(a)),
        }
    }
}

fn build_tables(p: u32, m: u32, q: u32, modulus: Option<&[u32]>) -> Tables {
    let n = q as usize;
    let digits = |a: u32| -> Vec<u32> { (0..m).map(|i| a / p.pow(i) % p).collect() };
    let encode = |d: &[u32]| -> u32 {
        d.iter()
            .enumerate()
            .map(|(i, &c)| c * p.pow(i as u32))
            .sum()
    };

    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a as usize * n + b as usize] = encode(&sum) as Elem;

            let prod = match modulus {
                None => a * b % p,
                Some(modulus) => {
                    let mut full = vec![0; 2 * m as usize - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            full[i + j] = (full[i + j] + x * y) % p;
                        }
                    }
                    let mut r = poly_rem(&full, modulus, p);
                    r.resize(m as usize, 0);
                    encode(&r)
                }
            };
            mul[a as usize * n + b as usize] = prod as Elem;
        }
    }
    let neg = (0..n)
        .map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as Elem)
        .collect();
    let inv = (0..n)
        .map(|a| {
            if a == 0 {
                0
            } else {
                (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as Elem
            }
        })
        .collect();
    Tables { add, mul, neg, inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [u32; 18] = [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32,
    ];

    #[test]
    fn construction_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!((f2.p(), f2.m(), f2.modulus()), (2, 1, None));
        let f4 = FieldSpec::new(4).unwrap();
        assert_eq!((f4.p(), f4.m()), (2, 2));
        assert_eq!(f4.modulus(), Some(&[1, 1, 1][..]));
        assert_eq!(FieldSpec::new(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(FieldSpec::new(1).unwrap_err(), Error::NotPrimePower(1));
        assert_eq!(FieldSpec::new(64).unwrap_err(), Error::UnsupportedField(64));
        assert_eq!(FieldSpec::new(37).unwrap_err(), Error::UnsupportedField(37));
    }

    #[test]
    fn moduli_are_smallest_irreducible() {
        assert_eq!(
            FieldSpec::new(8).unwrap().modulus(),
            Some(&[1, 1, 0, 1][..])
        );
        assert_eq!(FieldSpec::new(9).unwrap().modulus(), Some(&[1, 0, 1][..]));
        assert_eq!(
            FieldSpec::new(16).unwrap().modulus(),
            Some(&[1, 1, 0, 0, 1][..])
        );
        assert!(!is_irreducible(&[1, 0, 1], 2)); // x^2+1 = (x+1)^2
        assert!(!is_irreducible(&[0, 1, 1], 2));
        assert!(is_irreducible(&[1, 0, 1, 1], 2));
    }

    #[test]
    fn operation_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let f4 = FieldSpec::new(4).unwrap();
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(f2.try_add(1, 1), Ok(0));
        assert_eq!(f5.try_add(3, 4), Ok(2));
        assert_eq!(f4.try_add(2, 3), Ok(1));
        assert_eq!(f2.try_mul(1, 1), Ok(1));
        assert_eq!(f4.try_mul(2, 2), Ok(3));
        assert_eq!(f5.try_mul(2, 4), Ok(3));
        assert_eq!(f2.try_inv(1), Ok(1));
        assert_eq!(f5.try_inv(2), Ok(3));
        assert_eq!(f4.try_inv(2), Ok(3));
        assert_eq!(f4.try_inv(0), Err(Error::ZeroInverse));
        assert_eq!(
            f4.try_add(4, 0),
            Err(Error::ElementOutOfRange { elem: 4, q: 4 })
        );
        assert_eq!(
            f5.try_mul(0, 7),
            Err(Error::ElementOutOfRange { elem: 7, q: 5 })
        );
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in ORDERS {
            let f = FieldSpec::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "GF({q}) inverse of {a}");
                    assert_eq!(f.pow(a, q - 1), 1, "GF({q}) order of {a}");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0, "zero divisor in GF({q})");
                    }
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in ORDERS {
            let f = FieldSpec::new(q).unwrap();
            let has_generator = f
                .elements()
                .skip(1)
                .any(|g| (1..q - 1).all(|e| f.pow(g, e) != 1));
            assert!(has_generator, "GF({q})");
        }
    }

    #[test]
    fn characteristic_addition_is_digitwise() {
        let f = FieldSpec::new(27).unwrap();
        for a in 0..27u32 {
            for b in 0..27u32 {
                let expect: u32 = (0..3)
                    .map(|i| ((a / 3u32.pow(i) + b / 3u32.pow(i)) % 3) * 3u32.pow(i))
                    .sum();
                assert_eq!(f.add(a as Elem, b as Elem) as u32, expect);
            }
        }
    }
}

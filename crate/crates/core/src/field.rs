//! Exact arithmetic in `F_q`, `q = p^e`, `p` an odd prime.
//!
//! Elements are stored as their coordinate tuple in the power basis of a
//! root of the defining modulus, packed base `p` into a single `u32`
//! (`c_0 + c_1 p + ... + c_{e-1} p^{e-1}`). All operations go through the
//! [`Field`] handle, which owns the lookup tables.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

pub mod poly;

/// Fields larger than this are still supported, but without log tables.
const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported, p must be odd")]
    EvenCharacteristic,
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field order p^e does not fit in 31 bits")]
    TooLarge,
    #[error("modulus must have degree {expected}, got {got}")]
    ModulusDegree { expected: usize, got: usize },
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("no primitive {r}-th root of unity in F_{q}")]
    NoSuchRoot { r: u64, q: u64 },
    #[error("cannot parse field literal `{0}`")]
    Literal(String),
}

/// An element of some `F_q`. Only meaningful together with its [`Field`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed base-`p` encoding of the coordinate tuple.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    /// Monic, low to high, length `e + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
    add_table: Option<Vec<u32>>,
    neg_table: Option<Vec<u32>>,
    generator: u32,
}

/// Cheaply clonable handle to `F_{p^e}`.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)?;
        if self.0.e > 1 {
            write!(f, "[z]/({})", format_poly_u32(&self.0.modulus))?;
        }
        Ok(())
    }
}

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

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- small polynomial helpers over F_p, coefficient vectors low to high ----

fn trim_u32(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    pow_mod_p(a, p - 2, p)
}

fn pow_mod_p(a: u32, mut k: u32, p: u32) -> u32 {
    let mut base = a as u64 % p as u64;
    let mut acc = 1u64;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        k >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo `b` over F_p (`b` nonzero).
fn poly_rem_u32(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim_u32(&mut r);
    let mut b = b.to_vec();
    trim_u32(&mut b);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - db;
        for (i, &bi) in b.iter().enumerate() {
            let sub = factor * bi as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim_u32(&mut r);
    }
    r
}

fn format_poly_u32(c: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &ci) in c.iter().enumerate().rev() {
        if ci == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{i}"),
        };
        parts.push(match (ci, i) {
            (_, 0) => ci.to_string(),
            (1, _) => mono,
            _ => format!("{ci}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Irreducibility over F_p by trial division against every monic polynomial
/// of degree `1..=deg/2`.
fn is_irreducible_u32(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut t = k;
            for _ in 0..d {
                div.push((t % p as u64) as u32);
                t /= p as u64;
            }
            div.push(1);
            if poly_rem_u32(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds `F_{p^e}`. When `modulus` is `None` the lexicographically
    /// smallest monic irreducible of degree `e` is used, comparing
    /// coefficient tuples from `z^{e-1}` down to the constant term.
    /// A supplied modulus is given low to high and normalised to be monic.
    pub fn new(p: u64, e: u32, modulus: Option<&[i64]>) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::BadDegree);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q < (1 << 31))
            .ok_or(FieldError::TooLarge)?;
        let p32 = p as u32;
        let modulus = match modulus {
            Some(m) => {
                let mut m: Vec<u32> = m.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
                trim_u32(&mut m);
                if m.len() != e as usize + 1 {
                    return Err(FieldError::ModulusDegree {
                        expected: e as usize,
                        got: m.len().saturating_sub(1),
                    });
                }
                let lead = inv_mod_p(m[e as usize], p32) as u64;
                for c in m.iter_mut() {
                    *c = (*c as u64 * lead % p) as u32;
                }
                if !is_irreducible_u32(&m, p32) {
                    return Err(FieldError::ReducibleModulus);
                }
                m
            }
            None if e == 1 => vec![0, 1],
            None => (0..p.pow(e))
                .map(|k| {
                    let mut m: Vec<u32> = (0..e).map(|i| ((k / p.pow(i)) % p) as u32).collect();
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible_u32(m, p32))
                .expect("an irreducible polynomial of every degree exists"),
        };
        let mut data = FieldData {
            p: p32,
            e,
            q: q as u32,
            modulus,
            tables: None,
            add_table: None,
            neg_table: None,
            generator: 0,
        };
        data.generator = find_generator(&data);
        if q <= TABLE_LIMIT {
            let mut exp = vec![0u32; q as usize - 1];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = x;
                log[x as usize] = i as u32;
                x = slow_mul(&data, x, data.generator);
            }
            data.tables = Some(Tables { exp, log });
            data.neg_table = Some((0..q as u32).map(|a| slow_neg(&data, a)).collect());
        }
        if e > 1 && q <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    t[(a as usize) * q as usize + b as usize] = slow_add(&data, a, b);
                }
            }
            data.add_table = Some(t);
        }
        Ok(Field(Arc::new(data)))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    /// Defining polynomial, low to high, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from power-basis coordinates (low to high); coordinates are
    /// reduced mod `p`, and tuples longer than `e` are reduced mod the modulus.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FieldElement {
        let p = self.0.p;
        let mut c: Vec<u32> = coeffs.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        if c.len() > self.0.e as usize {
            c = poly_rem_u32(&c, &self.0.modulus, p);
        }
        let mut idx = 0u32;
        for &ci in c.iter().rev() {
            idx = idx * p + ci;
        }
        FieldElement(idx)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let p = self.0.p;
        let mut v = Vec::with_capacity(self.0.e as usize);
        let mut x = a.0;
        for _ in 0..self.0.e {
            v.push(x % p);
            x /= p;
        }
        v
    }

    /// The class of `z`, the chosen root of the modulus (equal to `0` when `e = 1`
    /// with the default modulus).
    pub fn z(&self) -> FieldElement {
        if self.0.e == 1 {
            let m = &self.0.modulus;
            // root of z + m0
            return self.neg(FieldElement(m[0]));
        }
        FieldElement(self.0.p)
    }

    pub fn from_index(&self, idx: u32) -> FieldElement {
        assert!(idx < self.0.q, "index out of range for F_{}", self.0.q);
        FieldElement(idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.0.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.0.q))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let d = &*self.0;
        if d.e == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= d.p { s - d.p } else { s });
        }
        if let Some(t) = &d.add_table {
            return FieldElement(t[a.0 as usize * d.q as usize + b.0 as usize]);
        }
        FieldElement(slow_add(d, a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let d = &*self.0;
        if d.e == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { d.p - a.0 });
        }
        if let Some(t) = &d.neg_table {
            return FieldElement(t[a.0 as usize]);
        }
        FieldElement(slow_neg(d, a.0))
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let d = &*self.0;
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if d.e == 1 {
            return FieldElement((a.0 as u64 * b.0 as u64 % d.p as u64) as u32);
        }
        if let Some(t) = &d.tables {
            let n = d.q - 1;
            let s = t.log[a.0 as usize] + t.log[b.0 as usize];
            return FieldElement(t.exp[(if s >= n { s - n } else { s }) as usize]);
        }
        FieldElement(slow_mul(d, a.0, b.0))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let d = &*self.0;
        if let Some(t) = &d.tables {
            let n = d.q - 1;
            let l = t.log[a.0 as usize];
            return Some(FieldElement(t.exp[((n - l) % n) as usize]));
        }
        Some(self.pow(a, d.q as u64 - 2))
    }

    /// `a / b`; panics when `b = 0`.
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b).expect("division by zero in finite field"))
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^k` for signed `k` (`a` must be nonzero when `k < 0`).
    pub fn pow_signed(&self, a: FieldElement, k: i64) -> FieldElement {
        if k >= 0 {
            self.pow(a, k as u64)
        } else {
            self.pow(self.inv(a).expect("negative power of zero"), k.unsigned_abs())
        }
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.0.p as u64)
    }

    /// `a ∈ F_p`, decided by Frobenius fixedness `a^p = a`.
    pub fn in_prime_field(&self, a: FieldElement) -> bool {
        self.frobenius(a) == a
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let n = self.order() - 1;
        let mut ord = n;
        for l in prime_factors(n) {
            while ord % l == 0 && self.pow(a, ord / l) == self.one() {
                ord /= l;
            }
        }
        ord
    }

    /// A generator of `F_q^*` (smallest in the packed encoding).
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.0.generator)
    }

    /// Smallest element (in the packed encoding) of exact multiplicative order `r`.
    pub fn primitive_root_of_unity(&self, r: u64) -> Result<FieldElement, FieldError> {
        let q = self.order();
        if r == 0 || (q - 1) % r != 0 {
            return Err(FieldError::NoSuchRoot { r, q });
        }
        Ok(self
            .elements()
            .skip(1)
            .find(|&a| self.multiplicative_order(a) == r)
            .expect("cyclic group of order q-1 has elements of every order dividing q-1"))
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// Human-readable literal; prime-field elements print as integers in `[0, p)`,
    /// others as polynomials in `z` such as `2z+1`.
    pub fn format(&self, a: FieldElement) -> String {
        if self.0.e == 1 {
            return a.0.to_string();
        }
        format_poly_u32(&self.coeffs(a))
    }

    /// Parses literals such as `2`, `-1`, `z`, `2z^2+z-1`, optionally in parentheses.
    pub fn parse(&self, s: &str) -> Result<FieldElement, FieldError> {
        let err = || FieldError::Literal(s.to_string());
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        while t.starts_with('(') && t.ends_with(')') {
            t = t[1..t.len() - 1].to_string();
        }
        if t.is_empty() {
            return Err(err());
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let bytes: Vec<char> = t.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i != 0 {
                return Err(err());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let num: Option<i64> = if i > start {
                Some(
                    bytes[start..i]
                        .iter()
                        .collect::<String>()
                        .parse::<i64>()
                        .map_err(|_| err())?,
                )
            } else {
                None
            };
            if i < bytes.len() && bytes[i] == '*' {
                i += 1;
            }
            let mut power = 0usize;
            if i < bytes.len() && bytes[i] == 'z' {
                i += 1;
                power = 1;
                if i < bytes.len() && bytes[i] == '^' {
                    i += 1;
                    let ps = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if ps == i {
                        return Err(err());
                    }
                    power = bytes[ps..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err())?;
                }
            } else if num.is_none() {
                return Err(err());
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            let c = num.unwrap_or(1) % self.0.p as i64;
            coeffs[power] += sign * c;
        }
        if self.0.e == 1 && coeffs.len() > 1 {
            let z = self.z();
            let mut acc = self.zero();
            for &c in coeffs.iter().rev() {
                acc = self.add(self.mul(acc, z), self.from_int(c));
            }
            return Ok(acc);
        }
        Ok(self.from_coeffs(&coeffs))
    }

    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }
}

fn slow_add(d: &FieldData, a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..d.e {
        let s = (a % d.p + b % d.p) % d.p;
        out += s * place;
        place = place.wrapping_mul(d.p);
        a /= d.p;
        b /= d.p;
    }
    out
}

fn slow_neg(d: &FieldData, a: u32) -> u32 {
    let mut a = a;
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..d.e {
        let c = a % d.p;
        out += ((d.p - c) % d.p) * place;
        place = place.wrapping_mul(d.p);
        a /= d.p;
    }
    out
}

fn unpack(d: &FieldData, mut a: u32) -> Vec<u32> {
    (0..d.e)
        .map(|_| {
            let c = a % d.p;
            a /= d.p;
            c
        })
        .collect()
}

fn pack(d: &FieldData, c: &[u32]) -> u32 {
    let mut idx = 0u32;
    for &ci in c.iter().rev() {
        idx = idx * d.p + ci;
    }
    idx
}

fn slow_mul(d: &FieldData, a: u32, b: u32) -> u32 {
    if d.e == 1 {
        return (a as u64 * b as u64 % d.p as u64) as u32;
    }
    let ca = unpack(d, a);
    let cb = unpack(d, b);
    let mut prod = vec![0u64; ca.len() + cb.len()];
    for (i, &x) in ca.iter().enumerate() {
        for (j, &y) in cb.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % d.p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    let r = poly_rem_u32(&prod, &d.modulus, d.p);
    pack(d, &r)
}

fn slow_pow(d: &FieldData, a: u32, mut k: u64) -> u32 {
    let mut base = a;
    let mut acc = 1u32;
    while k > 0 {
        if k & 1 == 1 {
            acc = slow_mul(d, acc, base);
        }
        base = slow_mul(d, base, base);
        k >>= 1;
    }
    acc
}

fn find_generator(d: &FieldData) -> u32 {
    let n = d.q as u64 - 1;
    let factors = prime_factors(n);
    (1..d.q)
        .find(|&g| factors.iter().all(|&l| slow_pow(d, g, n / l) != 1))
        .expect("F_q^* is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fields() -> Vec<Field> {
        vec![
            Field::prime(3).unwrap(),
            Field::prime(5).unwrap(),
            Field::new(3, 2, None).unwrap(),
            Field::new(3, 4, None).unwrap(),
            Field::new(5, 2, None).unwrap(),
            Field::new(7, 3, None).unwrap(),
        ]
    }

    #[test]
    fn prime_field_construction() {
        let f = Field::new(3, 1, None).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(Field::new(2, 1, None).unwrap_err(), FieldError::EvenCharacteristic);
        assert_eq!(Field::new(9, 1, None).unwrap_err(), FieldError::NotPrime(9));
        assert_eq!(Field::new(3, 0, None).unwrap_err(), FieldError::BadDegree);
    }

    #[test]
    fn f9_from_z2_plus_1() {
        // exhaustive root check: z^2 + 1 has no root in F_3
        assert!((0..3).all(|z| (z * z + 1) % 3 != 0));
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.order(), 9);
        let z = f.z();
        assert_eq!(f.mul(z, z), f.from_int(-1));
        // default choice is the same polynomial
        let g = Field::new(3, 2, None).unwrap();
        assert_eq!(g.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // z^2 - 1 = (z - 1)(z + 1)
        assert_eq!(
            Field::new(3, 2, Some(&[-1, 0, 1])).unwrap_err(),
            FieldError::ReducibleModulus
        );
        assert!(matches!(
            Field::new(3, 2, Some(&[1, 1])).unwrap_err(),
            FieldError::ModulusDegree { .. }
        ));
    }

    #[test]
    fn roots_of_unity() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.primitive_root_of_unity(2).unwrap(), f3.from_int(2));
        assert!(matches!(
            f3.primitive_root_of_unity(4),
            Err(FieldError::NoSuchRoot { r: 4, q: 3 })
        ));
        let f9 = Field::new(3, 2, None).unwrap();
        let eta = f9.primitive_root_of_unity(4).unwrap();
        // enumerate orders by brute force
        let brute = |a: FieldElement| (1..=8u64).find(|&k| f9.pow(a, k) == f9.one()).unwrap();
        assert_eq!(brute(eta), 4);
        assert_eq!(f9.elements().skip(1).filter(|&a| brute(a) == 4).count(), 2);
    }

    #[test]
    fn prime_subfield_membership() {
        let f9 = Field::new(3, 2, None).unwrap();
        assert!(f9.in_prime_field(f9.from_int(2)));
        assert!(f9.in_prime_field(f9.zero()));
        let z = f9.z();
        assert_eq!(f9.pow(z, 3), f9.neg(z));
        assert!(!f9.in_prime_field(z));
        for f in fields() {
            let count = f.elements().filter(|&a| f.in_prime_field(a)).count();
            assert_eq!(count as u64, f.p());
            for k in 0..f.p() as i64 {
                assert!(f.in_prime_field(f.from_int(k)));
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in fields() {
            for _ in 0..1000 {
                let a = f.random_nonzero(&mut rng);
                let b = f.random(&mut rng);
                let c = f.random(&mut rng);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.frobenius(f.add(b, c)), f.add(f.frobenius(b), f.frobenius(c)));
                assert_eq!(f.frobenius(f.mul(b, c)), f.mul(f.frobenius(b), f.frobenius(c)));
                assert_eq!(f.sub(f.add(b, c), c), b);
            }
        }
    }

    #[test]
    fn table_free_arithmetic_matches() {
        // 3^11 > 2^16, so no log tables
        let f = Field::new(3, 11, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = f.random_nonzero(&mut rng);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn literals_round_trip() {
        let f9 = Field::new(3, 2, None).unwrap();
        for a in f9.elements() {
            assert_eq!(f9.parse(&f9.format(a)).unwrap(), a);
        }
        assert_eq!(f9.parse("2z+1").unwrap(), f9.from_coeffs(&[1, 2]));
        assert_eq!(f9.parse("(-z)").unwrap(), f9.neg(f9.z()));
        assert_eq!(f9.parse("z^2").unwrap(), f9.from_int(-1));
        assert!(f9.parse("w").is_err());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse("-1").unwrap(), f5.from_int(4));
    }
}

//! Dense univariate polynomials over `F_q`, coefficients low to high.

use rand::Rng;

use super::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(pub Vec<FieldElement>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: FieldElement) -> Poly {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    /// `z - a`
    pub fn linear(f: &Field, a: FieldElement) -> Poly {
        Poly(vec![f.neg(a), f.one()])
    }

    pub fn monomial(f: &Field, deg: usize) -> Poly {
        let mut v = vec![f.zero(); deg + 1];
        v[deg] = f.one();
        Poly(v)
    }

    pub fn from_coeffs(c: Vec<FieldElement>) -> Poly {
        let mut p = Poly(c);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.0.get(i).copied().unwrap_or_default()
    }

    pub fn lead(&self) -> Option<FieldElement> {
        self.0.last().copied()
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn scale(&self, f: &Field, c: FieldElement) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &Field, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = f.inv(d.0[dd]).unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(r[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c;
            for (i, &di) in d.0.iter().enumerate() {
                r[k - dd + i] = f.sub(r[k - dd + i], f.mul(c, di));
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(f, f.inv(l).unwrap()),
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, f: &Field, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Field, x: FieldElement) -> FieldElement {
        self.0.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^k mod m`
    pub fn powmod(&self, f: &Field, mut k: u64, m: &Poly) -> Poly {
        let mut base = self.rem(f, m);
        let mut acc = Poly::constant(f.one()).rem(f, m);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            k >>= 1;
        }
        acc
    }

    /// `Π (z - r)` over the given roots.
    pub fn from_roots(f: &Field, roots: &[FieldElement]) -> Poly {
        roots
            .iter()
            .fold(Poly::constant(f.one()), |acc, &r| acc.mul(f, &Poly::linear(f, r)))
    }

    /// No repeated irreducible factor, decided by `gcd(f, f') = 1`.
    pub fn is_squarefree(&self, f: &Field) -> bool {
        let g = self.gcd(f, &self.derivative(f));
        g.degree() == Some(0)
    }

    /// `f(x + s)` by Horner's rule in the shifted variable.
    pub fn shift(&self, f: &Field, s: FieldElement) -> Poly {
        let lin = Poly::from_coeffs(vec![s, f.one()]);
        self.0
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(f, &lin).add(f, &Poly::constant(c)))
    }

    /// Distinct monic irreducible factors, by distinct-degree splitting
    /// followed by Cantor–Zassenhaus; sorted by degree then coefficients.
    pub fn irreducible_factors<R: Rng + ?Sized>(&self, f: &Field, rng: &mut R) -> Vec<Poly> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let me = self.monic(f);
        let x = Poly::monomial(f, 1);
        let mut found = Poly::constant(f.one());
        let mut out = Vec::new();
        // xq = x^{q^k} mod self
        let mut xq = x.clone();
        for k in 1..=deg {
            if found.degree() == Some(deg) {
                break;
            }
            xq = xq.powmod(f, f.order(), &me);
            let hk = me.gcd(f, &xq.sub(f, &x));
            let (dk, _) = hk.divrem(f, &hk.gcd(f, &found));
            if dk.degree().unwrap_or(0) == 0 {
                continue;
            }
            found = found.mul(f, &dk);
            out.extend(equal_degree_split(f, &dk.monic(f), k, rng));
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn format(&self, f: &Field, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let lit = f.format(c);
            let lit = if lit.contains('+') { format!("({lit})") } else { lit };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (i, c == f.one()) {
                (0, _) => lit,
                (_, true) => mono,
                _ => format!("{lit}{mono}"),
            });
        }
        parts.join(" + ")
    }
}

/// Splits a squarefree monic product of degree-`k` irreducibles.
fn equal_degree_split<R: Rng + ?Sized>(f: &Field, g: &Poly, k: usize, rng: &mut R) -> Vec<Poly> {
    let n = g.degree().unwrap();
    if n == k {
        return vec![g.clone()];
    }
    let q = f.order();
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| f.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        // norm-like product a^{1 + q + ... + q^{k-1}}, then the (q-1)/2 power
        let mut b = Poly::constant(f.one());
        let mut ai = a.rem(f, g);
        for _ in 0..k {
            b = b.mul(f, &ai).rem(f, g);
            ai = ai.powmod(f, q, g);
        }
        let t = b.powmod(f, (q - 1) / 2, g).sub(f, &Poly::constant(f.one()));
        let d = g.gcd(f, &t);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < n {
            let (other, _) = g.divrem(f, &d);
            let mut out = equal_degree_split(f, &d, k, rng);
            out.extend(equal_degree_split(f, &other.monic(f), k, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn is_irreducible_brute(f: &Field, p: &Poly) -> bool {
        let d = p.degree().unwrap();
        // no monic factor of degree 1..=d/2
        for k in 1..=d / 2 {
            let count = f.order().pow(k as u32);
            for idx in 0..count {
                let mut c = Vec::with_capacity(k + 1);
                let mut t = idx;
                for _ in 0..k {
                    c.push(f.from_index((t % f.order()) as u32));
                    t /= f.order();
                }
                c.push(f.one());
                if p.rem(f, &Poly::from_coeffs(c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factorization_recovers_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, e) in [(3u64, 1u32), (5, 1), (3, 2)] {
            let f = Field::new(p, e, None).unwrap();
            for _ in 0..20 {
                let deg = rng.gen_range(1..8);
                let mut c: Vec<FieldElement> = (0..deg).map(|_| f.random(&mut rng)).collect();
                c.push(f.one());
                let poly = Poly::from_coeffs(c);
                let sq = poly.mul(&f, &poly.rem(&f, &Poly::monomial(&f, 2)).add(&f, &Poly::monomial(&f, 1)));
                for target in [poly, sq].into_iter().filter(|t| !t.is_zero()) {
                    let facs = target.irreducible_factors(&f, &mut rng);
                    let mut rest = target.monic(&f);
                    for g in &facs {
                        assert!(is_irreducible_brute(&f, g));
                        assert!(rest.rem(&f, g).is_zero());
                        while rest.rem(&f, g).is_zero() {
                            rest = rest.divrem(&f, g).0;
                        }
                    }
                    assert_eq!(rest.degree(), Some(0));
                }
            }
        }
    }

    #[test]
    fn squarefree_and_gcd() {
        let f = Field::prime(5).unwrap();
        let a = f.from_int(2);
        let b = f.from_int(3);
        let sq = Poly::from_roots(&f, &[a, a, b]);
        assert!(!sq.is_squarefree(&f));
        assert!(Poly::from_roots(&f, &[a, b]).is_squarefree(&f));
        let g = sq.gcd(&f, &Poly::from_roots(&f, &[a, f.one()]));
        assert_eq!(g, Poly::linear(&f, a));
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Field::new(3, 2, None).unwrap();
        let n = Poly::from_coeffs(vec![f.z(), f.one(), f.from_int(2), f.one(), f.z()]);
        let d = Poly::from_coeffs(vec![f.one(), f.z(), f.one()]);
        let (q, r) = n.divrem(&f, &d);
        assert_eq!(q.mul(&f, &d).add(&f, &r), n);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn shift_is_substitution() {
        let f = Field::prime(7).unwrap();
        let p = Poly::from_coeffs(vec![f.from_int(3), f.from_int(1), f.from_int(5)]);
        let s = f.from_int(4);
        let shifted = p.shift(&f, s);
        for x in f.elements() {
            assert_eq!(shifted.eval(&f, x), p.eval(&f, f.add(x, s)));
        }
    }
}

//! The rank-one Dunkl embedding into `k[y, y⁻¹][∂] ∗ ℤ/r` and the point
//! modules `k[y]/(y^{pr} - a)` it produces.
//!
//! Conventions: `∂y = y∂ + 1`, `γy = η⁻¹yγ`, `γ∂ = η∂γ`, and
//! `Θ(x) = ε∂ + y⁻¹ Σ_j b_j γ^j`, `Θ(y) = y`, `Θ(γ) = γ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::centre::{self, CentralCharacter, CentreError, PowerCharacter};
use crate::field::{Field, FieldElement};
use crate::linalg::{self, Matrix};
use crate::meataxe::{MatrixModule, Verdict};
use crate::pbw::{Algebra, AlgebraElement, AlgebraExt};
use crate::typea::TypeAData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DunklError {
    #[error("the Dunkl system has no solution")]
    NoSolution,
    #[error("point a = 0 lies outside the chart where y is invertible")]
    ZeroPoint,
    #[error("{0} does not act by a scalar")]
    NotScalar(String),
    #[error("module matrices violate the relation {0}")]
    RelationFailure(String),
    #[error(transparent)]
    Centre(#[from] CentreError),
}

/// Key `(k, l, i)` for `y^k ∂^l γ^i`, `k ∈ ℤ`.
pub type WeylKey = (i64, u32, usize);

#[derive(Clone, PartialEq, Eq)]
pub struct LocalizedWeylElement {
    field: Field,
    r: usize,
    eta: FieldElement,
    terms: BTreeMap<WeylKey, FieldElement>,
}

impl fmt::Debug for LocalizedWeylElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = &self.field;
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(k, l, i), &c)| format!("{} y^{k} d^{l} g{i}", f.format(c)))
            .collect();
        write!(out, "{}", parts.join(" + "))
    }
}

/// `C(b, k)` reduced into the field.
fn binomial(f: &Field, b: u32, k: u32) -> FieldElement {
    let mut v: u128 = 1;
    for t in 0..k as u128 {
        v = v * (b as u128 - t) / (t + 1);
    }
    f.from_int((v % f.p() as u128) as i64)
}

/// `c (c-1) ⋯ (c-k+1)`.
fn falling(f: &Field, c: i64, k: u32) -> FieldElement {
    (0..k as i64).fold(f.one(), |acc, t| f.mul(acc, f.from_int(c - t)))
}

impl LocalizedWeylElement {
    pub fn zero(field: &Field, r: usize, eta: FieldElement) -> Self {
        LocalizedWeylElement { field: field.clone(), r, eta, terms: BTreeMap::new() }
    }

    pub fn term(field: &Field, r: usize, eta: FieldElement, key: WeylKey, c: FieldElement) -> Self {
        let mut e = Self::zero(field, r, eta);
        if !c.is_zero() {
            e.terms.insert((key.0, key.1, key.2 % r), c);
        }
        e
    }

    pub fn one(field: &Field, r: usize, eta: FieldElement) -> Self {
        Self::term(field, r, eta, (0, 0, 0), field.one())
    }

    fn like(&self, key: WeylKey, c: FieldElement) -> Self {
        Self::term(&self.field, self.r, self.eta, key, c)
    }

    pub fn y_power(&self, k: i64) -> Self {
        self.like((k, 0, 0), self.field.one())
    }

    pub fn d(&self) -> Self {
        self.like((0, 1, 0), self.field.one())
    }

    pub fn gamma(&self, i: usize) -> Self {
        self.like((0, 0, i), self.field.one())
    }

    pub fn terms(&self) -> &BTreeMap<WeylKey, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: WeylKey, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        let e = self.terms.entry(key).or_insert(f.zero());
        *e = f.add(*e, c);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &c) in &o.terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.r, self.eta);
        for (&k, &v) in &self.terms {
            out.add_term(k, self.field.mul(v, c));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(self.field.neg(self.field.one())))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, self.r, self.eta);
        for (&(a, b, i), &u) in &self.terms {
            for (&(c, d, j), &v) in &o.terms {
                // γ^i y^c ∂^d = η^{id - ic} y^c ∂^d γ^i
                let tw = f.pow_signed(self.eta, i as i64 * (d as i64 - c));
                let uv = f.mul(f.mul(u, v), tw);
                for k in 0..=b.min(if c >= 0 { c as u32 } else { b }) {
                    let coef = f.mul(binomial(f, b, k), falling(f, c, k));
                    if coef.is_zero() {
                        continue;
                    }
                    out.add_term((a + c - k as i64, b - k + d, (i + j) % self.r), f.mul(uv, coef));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::one(&self.field, self.r, self.eta);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
}

#[derive(Clone, Debug)]
pub struct DunklMap {
    pub field: Field,
    pub r: usize,
    pub eta: FieldElement,
    pub epsilon: FieldElement,
    /// `b_1..b_{r-1}`.
    pub b: Vec<FieldElement>,
    pub c: Vec<FieldElement>,
}

/// Solves `[y, ε∂ + y⁻¹ Σ b_j γ^j] = 1 - Σ c_j γ^j` for `(ε, b)`.
pub fn solve_dunkl(d: &TypeAData) -> Result<DunklMap, DunklError> {
    solve_for(&d.field, d.r as usize, d.eta, &d.c)
}

fn solve_for(f: &Field, r: usize, eta: FieldElement, c: &[FieldElement]) -> Result<DunklMap, DunklError> {
    let one = LocalizedWeylElement::one(f, r, eta);
    let y = one.y_power(1);
    let mut pieces = vec![y.commutator(&one.d())];
    for j in 1..r {
        pieces.push(y.commutator(&one.y_power(-1).mul(&one.gamma(j))));
    }
    let mut rhs = one.clone();
    for j in 1..r {
        rhs = rhs.sub(&one.gamma(j).scale(c[j - 1]));
    }
    let mut keys: Vec<WeylKey> = pieces.iter().chain([&rhs]).flat_map(|e| e.terms.keys().copied()).collect();
    keys.sort();
    keys.dedup();
    let m = Matrix::from_fn(keys.len(), pieces.len(), |i, k| pieces[k].terms.get(&keys[i]).copied().unwrap_or_default());
    let b: Vec<FieldElement> = keys.iter().map(|k| rhs.terms.get(k).copied().unwrap_or_default()).collect();
    let sol = linalg::solve(f, &m, &b).ok_or(DunklError::NoSolution)?;
    let map = DunklMap { field: f.clone(), r, eta, epsilon: sol[0], b: sol[1..].to_vec(), c: c.to_vec() };
    if !map.relations_hold() {
        return Err(DunklError::NoSolution);
    }
    Ok(map)
}

impl DunklMap {
    fn unit(&self) -> LocalizedWeylElement {
        LocalizedWeylElement::one(&self.field, self.r, self.eta)
    }

    pub fn theta_x(&self) -> LocalizedWeylElement {
        let one = self.unit();
        let mut t = one.d().scale(self.epsilon);
        for (j, &bj) in self.b.iter().enumerate() {
            t = t.add(&one.y_power(-1).mul(&one.gamma(j + 1)).scale(bj));
        }
        t
    }

    pub fn theta_y(&self) -> LocalizedWeylElement {
        self.unit().y_power(1)
    }

    pub fn theta_gamma(&self, i: usize) -> LocalizedWeylElement {
        self.unit().gamma(i)
    }

    /// `γxγ⁻¹ = ηx`, `γyγ⁻¹ = η⁻¹y`, `[y, x] = 1 - Σ c_j γ^j` on the images.
    pub fn relations_hold(&self) -> bool {
        let f = &self.field;
        let (x, y) = (self.theta_x(), self.theta_y());
        let g = self.theta_gamma(1);
        let gi = self.theta_gamma(self.r - 1);
        let eta_inv = f.inv(self.eta).unwrap();
        let mut rhs = self.unit();
        for (j, &cj) in self.c.iter().enumerate() {
            rhs = rhs.sub(&self.theta_gamma(j + 1).scale(cj));
        }
        g.mul(&x).mul(&gi) == x.scale(self.eta)
            && g.mul(&y).mul(&gi) == y.scale(eta_inv)
            && y.commutator(&x) == rhs
            && g.pow(self.r as u64) == self.unit()
    }

    /// Extends `Θ` multiplicatively to `x^a y^b γ^g`.
    pub fn apply(&self, a: &AlgebraElement) -> LocalizedWeylElement {
        let (x, y) = (self.theta_x(), self.theta_y());
        let mut xp = vec![self.unit()];
        let mut out = LocalizedWeylElement::zero(&self.field, self.r, self.eta);
        for (m, &c) in a.terms() {
            while xp.len() <= m.exps[0] as usize {
                let next = xp.last().unwrap().mul(&x);
                xp.push(next);
            }
            let img = xp[m.exps[0] as usize].mul(&y.pow(m.exps[1] as u64)).mul(&self.theta_gamma(m.g));
            out = out.add(&img.scale(c));
        }
        out
    }

    /// Images of the PBW monomials of filtration `≤ d` are linearly independent.
    pub fn injective_up_to(&self, alg: &Arc<Algebra>, d: usize) -> bool {
        let imgs: Vec<LocalizedWeylElement> =
            alg.monomials_up_to(d).iter().map(|m| self.apply(&alg.monomial(&m.exps, m.g))).collect();
        let mut keys: Vec<WeylKey> = imgs.iter().flat_map(|e| e.terms.keys().copied()).collect();
        keys.sort();
        keys.dedup();
        let m = Matrix::from_fn(keys.len(), imgs.len(), |i, k| imgs[k].terms.get(&keys[i]).copied().unwrap_or_default());
        linalg::rank(&self.field, &m) == imgs.len()
    }
}

/// `k[y]/(y^{pr} - a)` with `x` acting through `Θ`.
#[derive(Clone, Debug)]
pub struct PointModule {
    pub field: Field,
    pub a: FieldElement,
    pub dim: usize,
    pub mat_x: Matrix,
    pub mat_y: Matrix,
    pub mat_gamma: Matrix,
    pub r: usize,
    pub eta: FieldElement,
}

pub fn build_point_module(map: &DunklMap, p: u64, a: FieldElement) -> Result<PointModule, DunklError> {
    let f = &map.field;
    if a.is_zero() {
        return Err(DunklError::ZeroPoint);
    }
    let r = map.r;
    let n = p as usize * r;
    let mat_y = Matrix::from_fn(n, n, |i, j| {
        if j + 1 < n && i == j + 1 {
            f.one()
        } else if j == n - 1 && i == 0 {
            a
        } else {
            f.zero()
        }
    });
    let mat_d = Matrix::from_fn(n, n, |i, j| if j >= 1 && i == j - 1 { f.from_int(j as i64) } else { f.zero() });
    let eta_inv = f.inv(map.eta).unwrap();
    let mat_gamma = Matrix::diag(&(0..n).map(|i| f.pow(eta_inv, i as u64)).collect::<Vec<_>>());
    let y_inv = mat_y.pow(f, (n - 1) as u64).scale(f, f.inv(a).unwrap());
    let mut tail = Matrix::zeros(n, n);
    for (j, &bj) in map.b.iter().enumerate() {
        tail.add_scaled(f, bj, &mat_gamma.pow(f, (j + 1) as u64));
    }
    let mat_x = mat_d.scale(f, map.epsilon).add(f, &y_inv.mul(f, &tail));
    let m = PointModule { field: f.clone(), a, dim: n, mat_x, mat_y, mat_gamma, r, eta: map.eta };
    m.check_relations(&map.c)?;
    Ok(m)
}

impl PointModule {
    fn check_relations(&self, c: &[FieldElement]) -> Result<(), DunklError> {
        let f = &self.field;
        let n = self.dim;
        let id = Matrix::identity(n);
        let g = &self.mat_gamma;
        let gi = linalg::inverse(f, g).unwrap();
        let eta_inv = f.inv(self.eta).unwrap();
        if g.mul(f, &self.mat_x).mul(f, &gi) != self.mat_x.scale(f, self.eta) {
            return Err(DunklError::RelationFailure("γx = ηxγ".into()));
        }
        if g.mul(f, &self.mat_y).mul(f, &gi) != self.mat_y.scale(f, eta_inv) {
            return Err(DunklError::RelationFailure("γy = η⁻¹yγ".into()));
        }
        let mut rhs = id.clone();
        for (j, &cj) in c.iter().enumerate() {
            rhs = rhs.sub(f, &g.pow(f, (j + 1) as u64).scale(f, cj));
        }
        let comm = self.mat_y.mul(f, &self.mat_x).sub(f, &self.mat_x.mul(f, &self.mat_y));
        if comm != rhs {
            return Err(DunklError::RelationFailure("[y, x] = 1 - Σ c_j γ^j".into()));
        }
        if g.pow(f, self.r as u64) != id {
            return Err(DunklError::RelationFailure("γ^r = 1".into()));
        }
        if self.mat_y.pow(f, n as u64) != Matrix::scalar(f, n, self.a) {
            return Err(DunklError::RelationFailure("y^{pr} = a".into()));
        }
        Ok(())
    }

    pub fn matrix_module(&self) -> MatrixModule {
        MatrixModule::new(self.dim, vec![self.mat_x.clone(), self.mat_y.clone(), self.mat_gamma.clone()])
    }

    pub fn is_irreducible<R: Rng + ?Sized>(&self, rng: &mut R, budget: usize) -> Verdict {
        self.matrix_module().irreducibility(&self.field, rng, budget)
    }

    /// Ranks of the projectors `(1/r) Σ_i η^{mi} Γ^{-i}`.
    pub fn isotypic_multiplicities(&self) -> Vec<usize> {
        let f = &self.field;
        let rinv = f.inv(f.from_int(self.r as i64)).unwrap();
        let gi = linalg::inverse(f, &self.mat_gamma).unwrap();
        (0..self.r)
            .map(|m| {
                let mut proj = Matrix::zeros(self.dim, self.dim);
                let mut pw = Matrix::identity(self.dim);
                for i in 0..self.r {
                    proj.add_scaled(f, f.mul(rinv, f.pow(self.eta, (m * i) as u64)), &pw);
                    pw = pw.mul(f, &gi);
                }
                linalg::rank(f, &proj)
            })
            .collect()
    }

    /// Action of an element of the type-A algebra.
    pub fn act(&self, a: &AlgebraElement) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (m, &c) in a.terms() {
            let t = self
                .mat_x
                .pow(f, m.exps[0] as u64)
                .mul(f, &self.mat_y.pow(f, m.exps[1] as u64))
                .mul(f, &self.mat_gamma.pow(f, m.g as u64));
            out.add_scaled(f, c, &t);
        }
        out
    }

    /// Scalars of `x^{pr}`, `y^{pr}` and `h`, keyed `X`, `Y`, `h`.
    pub fn central_character(&self, alg: &Arc<Algebra>, d: &TypeAData) -> Result<CentralCharacter, DunklError> {
        let (xpr, ypr) = d.z0_pair(alg);
        let h = d.h_element(alg);
        let mut chi = CentralCharacter::new();
        for (name, z) in [("X", xpr), ("Y", ypr), ("h", h)] {
            let v = self.act(&z).as_scalar().ok_or_else(|| DunklError::NotScalar(name.to_string()))?;
            chi = chi.with(name, v);
        }
        Ok(chi)
    }
}

/// The quotient `H/𝔪H` at a character with keys `X`, `Y`, `h`.
pub fn quotient_at(
    alg: &Arc<Algebra>,
    d: &TypeAData,
    chi: &CentralCharacter,
    cap: usize,
) -> Result<centre::FiniteQuotient, DunklError> {
    let pr = (d.p * d.r) as u32;
    let get = |k: &str| chi.get(k).ok_or_else(|| DunklError::NotScalar(k.to_string()));
    let pc = PowerCharacter { bounds: vec![pr, pr], values: vec![get("X")?, get("Y")?] };
    let h = d.h_element(alg);
    Ok(centre::quotient_at_character(alg, &pc, &[(h, get("h")?)], cap)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylCentreReport {
    pub dp_commutes_with_y: bool,
    pub yp_commutes_with_d: bool,
    pub powers_central: bool,
    pub xy_not_central: bool,
    pub centre_dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
    pub spanned_by_powers: bool,
}

impl WeylCentreReport {
    pub fn passed(&self) -> bool {
        self.dp_commutes_with_y
            && self.yp_commutes_with_d
            && self.powers_central
            && self.xy_not_central
            && self.centre_dims == self.expected_dims
            && self.spanned_by_powers
    }
}

/// The rank-one Weyl algebra `H_{1,0}` for trivial `Γ` and its centre.
pub fn weyl_centre_check(field: &Field, degree_bound: usize, cap: usize) -> Result<WeylCentreReport, DunklError> {
    let f = field;
    let p = f.p();
    let alg = Algebra::weyl(f, 1);
    let map = solve_for(f, 1, f.one(), &[])?;
    let one = LocalizedWeylElement::one(f, 1, f.one());
    let dp = one.d().pow(p);
    let yp = one.y_power(p as i64);
    let xp = alg.monomial(&[p as u32, 0], 0);
    let ypa = alg.monomial(&[0, p as u32], 0);
    let theta_xp = map.apply(&xp);
    let powers_central = centre::is_central(&xp)
        && centre::is_central(&ypa)
        && theta_xp.commutator(&map.theta_y()).is_zero()
        && yp.commutator(&map.theta_x()).is_zero();
    let basis = centre::centre_basis(&alg, degree_bound, cap)?;
    let spanned_by_powers = basis
        .iter()
        .all(|z| z.terms().all(|(m, _)| m.exps.iter().all(|&e| e as u64 % p == 0)));
    let centre_dims = centre::centre_filtration_dims(&alg, degree_bound, cap)?;
    let expected_dims = (0..=degree_bound)
        .map(|d| {
            let s = d / p as usize;
            (s + 1) * (s + 2) / 2
        })
        .collect();
    Ok(WeylCentreReport {
        dp_commutes_with_y: dp.commutator(&one.y_power(1)).is_zero(),
        yp_commutes_with_d: yp.commutator(&one.d()).is_zero(),
        powers_central,
        xy_not_central: !centre::is_central(&alg.monomial(&[1, 1], 0)),
        centre_dims,
        expected_dims,
        spanned_by_powers,
    })
}

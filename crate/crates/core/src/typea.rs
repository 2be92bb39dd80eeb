//! The rank-one family `Γ = ⟨γ⟩ ≅ ℤ/r` acting on `k x ⊕ k y` by
//! `γx = ηxγ`, `γy = η⁻¹yγ`, with `[y, x] = 1 - Σ_j c_j γ^j`.
//!
//! The closed formulas for `e_j`, `δ_m` and `ρ` are evaluated at
//! `ζ = η⁻¹`; only with this root does the displayed `τ` satisfy
//! `[τ, x] = x` for `r ≥ 3` (for `r = 2` the two roots coincide).

use std::sync::Arc;

use thiserror::Error;

use crate::centre;
use crate::field::poly::Poly;
use crate::field::{Field, FieldElement};
use crate::linalg::{self, Matrix};
use crate::pbw::{Algebra, AlgebraElement, AlgebraExt};
use crate::structure::{symplectic_reflections, Group, Params, SymplecticSpace, DEFAULT_GROUP_CAP};

pub const DEFAULT_PR_CAP: u64 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeAError {
    #[error("r must be at least 2 and prime to p (got r = {0})")]
    BadR(u64),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error("expected {expected} parameters c_1..c_(r-1), got {got}")]
    ParamCount { expected: usize, got: usize },
    #[error("f-parameters must sum to r")]
    BadFSum,
    #[error("p*r = {0} exceeds the degree cap {1}")]
    DegreeCapExceeded(u64, u64),
}

#[derive(Clone, Debug)]
pub struct TypeAData {
    pub field: Field,
    pub p: u64,
    pub e: u32,
    pub r: u64,
    pub eta: FieldElement,
    /// `η⁻¹`, the root used in the closed formulas.
    pub zeta: FieldElement,
    /// `c_1..c_{r-1}`.
    pub c: Vec<FieldElement>,
    pub f: Vec<FieldElement>,
    pub delta: Vec<FieldElement>,
    /// `δ_m` from the `ρ`-table formula.
    pub delta_alt: Vec<FieldElement>,
    /// `rho[m][l] = ρ_{m,l+1}`.
    pub rho: Vec<Vec<FieldElement>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentrePresentation {
    /// `Π_m (Z + δ_m^p - δ_m)`, monic of degree `r`.
    pub f_poly: Poly,
    /// `-(δ_m^p - δ_m)` for each `m`.
    pub roots: Vec<FieldElement>,
}

pub fn build_type_a(field: &Field, r: u64, c: &[FieldElement]) -> Result<(Arc<Algebra>, TypeAData), TypeAError> {
    let f = field;
    if r < 2 || r % f.p() == 0 {
        return Err(TypeAError::BadR(r));
    }
    if c.len() != (r - 1) as usize {
        return Err(TypeAError::ParamCount { expected: (r - 1) as usize, got: c.len() });
    }
    let eta = f.primitive_root_of_unity(r)?;
    let zeta = f.inv(eta).unwrap();
    let space = SymplecticSpace::cherednik(f, 1);
    let gamma = Matrix::diag(&[eta, zeta]);
    let group = Group::build(f, &space, &[gamma], DEFAULT_GROUP_CAP).map_err(|_| TypeAError::BadR(r))?;
    let refl = symplectic_reflections(f, &space, &group);
    debug_assert_eq!(refl.iter().map(|s| s.s as u64).collect::<Vec<_>>(), (1..r).collect::<Vec<_>>());
    let params = Params::from_class_values(&group, &refl, c).expect("one class per nontrivial power");
    let alg = Algebra::new(f.clone(), space, group, refl, params);

    let fv = c_to_f(f, r, zeta, c);
    let delta = delta_primary(f, r, zeta, c);
    let rho = rho_table(f, r, zeta);
    let rinv = f.inv(f.from_int(r as i64)).unwrap();
    let delta_alt: Vec<FieldElement> = (0..r as usize)
        .map(|m| {
            let s = f.sum((0..r as usize).map(|l| f.mul(rho[m][l], fv[l])));
            f.neg(f.mul(rinv, s))
        })
        .collect();
    let data = TypeAData {
        field: f.clone(),
        p: f.p(),
        e: f.degree(),
        r,
        eta,
        zeta,
        c: c.to_vec(),
        f: fv,
        delta,
        delta_alt,
        rho,
    };
    for i in 0..r as usize {
        for j in 0..r as usize {
            let diff = f.sub(data.delta[i], data.delta[j]);
            assert_eq!(
                f.in_prime_field(diff),
                data.beta(i) == data.beta(j),
                "Artin-Schreier consistency"
            );
        }
    }
    Ok((alg, data))
}

/// Vandermonde matrix `V[i][m] = ζ^{im} / r` taking `f` to the `γ^i`-coefficients.
fn dft_matrix(f: &Field, r: u64, zeta: FieldElement) -> Matrix {
    let rinv = f.inv(f.from_int(r as i64)).unwrap();
    Matrix::from_fn(r as usize, r as usize, |i, m| f.mul(rinv, f.pow(zeta, (i * m) as u64)))
}

/// Solves `1 - Σ c_j γ^j = Σ f_m e_m` for `f`.
pub fn c_to_f(f: &Field, r: u64, zeta: FieldElement, c: &[FieldElement]) -> Vec<FieldElement> {
    let mut rhs = vec![f.one()];
    rhs.extend(c.iter().map(|&cj| f.neg(cj)));
    linalg::solve(f, &dft_matrix(f, r, zeta), &rhs).expect("Vandermonde system in distinct roots of unity")
}

pub fn f_to_c(f: &Field, r: u64, zeta: FieldElement, fv: &[FieldElement]) -> Result<Vec<FieldElement>, TypeAError> {
    let a = dft_matrix(f, r, zeta).mul_vec(f, fv);
    if a[0] != f.one() {
        return Err(TypeAError::BadFSum);
    }
    Ok(a[1..].iter().map(|&x| f.neg(x)).collect())
}

/// `δ_m = Σ_j c_j (1 - ζ^{-j})^{-1} ζ^{mj}`.
fn delta_primary(f: &Field, r: u64, zeta: FieldElement, c: &[FieldElement]) -> Vec<FieldElement> {
    (0..r)
        .map(|m| {
            f.sum((1..r).map(|j| {
                let denom = f.sub(f.one(), f.pow_signed(zeta, -(j as i64)));
                let w = f.inv(denom).expect("ζ^j ≠ 1 for 0 < j < r");
                f.mul(f.mul(c[(j - 1) as usize], w), f.pow(zeta, m * j))
            }))
        })
        .collect()
}

/// `ρ_{m,l+1} = Σ_j ζ^{(m+l)j} / (ζ^j - 1)`.
fn rho_table(f: &Field, r: u64, zeta: FieldElement) -> Vec<Vec<FieldElement>> {
    (0..r)
        .map(|m| {
            (0..r)
                .map(|l| {
                    f.sum((1..r).map(|j| {
                        let denom = f.sub(f.pow(zeta, j), f.one());
                        let w = f.inv(denom).expect("ζ^j ≠ 1 for 0 < j < r");
                        f.mul(f.pow(zeta, ((m + l) * j) % r), w)
                    }))
                })
                .collect()
        })
        .collect()
}

impl TypeAData {
    /// `δ_m^p - δ_m`.
    pub fn beta(&self, m: usize) -> FieldElement {
        let f = &self.field;
        f.sub(f.frobenius(self.delta[m]), self.delta[m])
    }

    /// The `ρ`-formula lists the same values as the primary one, shifted by one
    /// index: `delta_alt[m] = delta[m - 1 mod r]`.
    pub fn delta_formulas_agree(&self) -> bool {
        let r = self.r as usize;
        (0..r).all(|m| self.delta_alt[m] == self.delta[(m + r - 1) % r])
    }

    pub fn f_sum(&self) -> FieldElement {
        self.field.sum(self.f.iter().copied())
    }

    pub fn centre_presentation(&self) -> CentrePresentation {
        let f = &self.field;
        let roots: Vec<FieldElement> = (0..self.r as usize).map(|m| f.neg(self.beta(m))).collect();
        CentrePresentation { f_poly: Poly::from_roots(f, &roots), roots }
    }

    /// `∀ i < j: δ_i - δ_j ∉ F_p`.
    pub fn is_smooth(&self) -> bool {
        let f = &self.field;
        let r = self.r as usize;
        (0..r).all(|i| ((i + 1)..r).all(|j| !f.in_prime_field(f.sub(self.delta[i], self.delta[j]))))
    }

    /// Repeated roots of `f(Z)`, each listed once.
    pub fn singular_z_values(&self) -> Vec<FieldElement> {
        let roots = self.centre_presentation().roots;
        let mut out: Vec<FieldElement> = roots
            .iter()
            .filter(|&&a| roots.iter().filter(|&&b| b == a).count() > 1)
            .copied()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn x(&self, alg: &Arc<Algebra>) -> AlgebraElement {
        alg.x(0)
    }

    pub fn y(&self, alg: &Arc<Algebra>) -> AlgebraElement {
        alg.y(0)
    }

    /// `e_j = (1/r) Σ_i ζ^{ij} γ^i`.
    pub fn idempotents(&self, alg: &Arc<Algebra>) -> Vec<AlgebraElement> {
        let f = &self.field;
        let rinv = f.inv(f.from_int(self.r as i64)).unwrap();
        (0..self.r)
            .map(|j| {
                (0..self.r).fold(alg.zero(), |acc, i| {
                    acc + alg.group_element(i as usize).scale(f.mul(rinv, f.pow(self.zeta, i * j)))
                })
            })
            .collect()
    }

    /// `τ = xy + Σ_{i≥1} (i - Σ_{j<i} f_j) e_i`.
    pub fn tau(&self, alg: &Arc<Algebra>) -> AlgebraElement {
        let f = &self.field;
        let es = self.idempotents(alg);
        let mut t = alg.monomial(&[1, 1], 0);
        let mut partial = f.zero();
        for i in 1..self.r as usize {
            partial = f.add(partial, self.f[i - 1]);
            let coef = f.sub(f.from_int(i as i64), partial);
            t = t + es[i].scale(coef);
        }
        t
    }

    /// `h = τ^p - τ`.
    pub fn h_element(&self, alg: &Arc<Algebra>) -> AlgebraElement {
        let t = self.tau(alg);
        t.pow(self.p) - t
    }

    /// `x^{pr}` and `y^{pr}`.
    pub fn z0_pair(&self, alg: &Arc<Algebra>) -> (AlgebraElement, AlgebraElement) {
        let pr = (self.p * self.r) as u32;
        (alg.monomial(&[pr, 0], 0), alg.monomial(&[0, pr], 0))
    }

    /// The exact identities every build should satisfy.
    pub fn check_identities(&self, alg: &Arc<Algebra>) -> IdentityReport {
        let f = &self.field;
        let x = alg.x(0);
        let y = alg.y(0);
        let tau = self.tau(alg);
        let h = tau.pow(self.p) - &tau;
        let es = self.idempotents(alg);
        let mut orth = true;
        for (i, a) in es.iter().enumerate() {
            for (j, b) in es.iter().enumerate() {
                let prod = a * b;
                orth &= if i == j { prod == *a } else { prod.is_zero() };
            }
        }
        let sum = es.iter().fold(alg.zero(), |acc, e| acc + e);
        let (xpr, ypr) = self.z0_pair(alg);
        IdentityReport {
            tau_x: tau.commutator(&x).unwrap() == x,
            tau_y: tau.commutator(&y).unwrap() == -&y,
            h_central: centre::is_central(&h),
            tau_not_central: !centre::is_central(&tau),
            f_sum: self.f_sum() == f.from_int(self.r as i64),
            idempotents: orth && sum == alg.one(),
            z0_central: centre::is_central(&xpr) && centre::is_central(&ypr),
            delta_formulas: self.delta_formulas_agree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub tau_x: bool,
    pub tau_y: bool,
    pub h_central: bool,
    pub tau_not_central: bool,
    pub f_sum: bool,
    pub idempotents: bool,
    pub z0_central: bool,
    pub delta_formulas: bool,
}

impl IdentityReport {
    pub fn all(&self) -> bool {
        self.tau_x
            && self.tau_y
            && self.h_central
            && self.tau_not_central
            && self.f_sum
            && self.idempotents
            && self.z0_central
            && self.delta_formulas
    }
}

/// Outcome of expressing `x^{pr} y^{pr}` as a polynomial in `h`.
#[derive(Clone, Debug)]
pub struct CentreRelation {
    /// `g` with `x^{pr} y^{pr} = g(h)`, if such a polynomial of degree `≤ r` exists.
    pub g: Option<Poly>,
    /// Leading coefficient of `g`.
    pub lambda: Option<FieldElement>,
    /// `s` with `g(h) = λ f(h + s)`.
    pub shift: Option<FieldElement>,
    /// `-(δ_0^p - δ_0)`.
    pub predicted_shift: FieldElement,
    pub f_poly: Poly,
    /// `g(h) = λ f(h + s)` for the computed `s`.
    pub holds: bool,
}

impl CentreRelation {
    /// Holds with `λ = 1` and `s = -(δ_0^p - δ_0)`, i.e. `XY = f(Z)` for
    /// `X = x^{pr}`, `Y = y^{pr}`, `Z = h - (δ_0^p - δ_0)`.
    pub fn normalized(&self) -> bool {
        self.holds && self.lambda == Some(FieldElement::ONE) && self.shift == Some(self.predicted_shift)
    }
}

pub fn verify_centre_relation(alg: &Arc<Algebra>, d: &TypeAData, pr_cap: u64) -> Result<CentreRelation, TypeAError> {
    let f = &d.field;
    let pr = d.p * d.r;
    if pr > pr_cap {
        return Err(TypeAError::DegreeCapExceeded(pr, pr_cap));
    }
    let (xpr, ypr) = d.z0_pair(alg);
    let target = &xpr * &ypr;
    let h = d.h_element(alg);
    let mut powers = vec![alg.one()];
    for k in 1..=d.r as usize {
        let next = &powers[k - 1] * &h;
        powers.push(next);
    }
    let pres = d.centre_presentation();
    let predicted_shift = f.neg(d.beta(0));
    let g = express_in_powers(f, &powers, &target);
    let mut out = CentreRelation {
        g: g.clone(),
        lambda: None,
        shift: None,
        predicted_shift,
        f_poly: pres.f_poly.clone(),
        holds: false,
    };
    if let Some(g) = g {
        if g.degree() == Some(d.r as usize) {
            let lambda = g.lead().unwrap();
            let r = d.r as usize;
            let rinv = f.inv(f.from_int(d.r as i64)).unwrap();
            let s = f.mul(rinv, f.sub(f.div(g.coeff(r - 1), lambda), pres.f_poly.coeff(r - 1)));
            out.lambda = Some(lambda);
            out.shift = Some(s);
            out.holds = pres.f_poly.shift(f, s).scale(f, lambda) == g;
        }
    }
    Ok(out)
}

/// Coefficients `g_k` with `target = Σ g_k powers[k]`, if any.
fn express_in_powers(f: &Field, powers: &[AlgebraElement], target: &AlgebraElement) -> Option<Poly> {
    let mut monos: Vec<_> = powers.iter().flat_map(|p| p.term_map().keys().cloned()).collect();
    monos.extend(target.term_map().keys().cloned());
    monos.sort();
    monos.dedup();
    let m = Matrix::from_fn(monos.len(), powers.len(), |i, k| powers[k].coeff(&monos[i]));
    let rhs: Vec<FieldElement> = monos.iter().map(|mo| target.coeff(mo)).collect();
    linalg::solve(f, &m, &rhs).map(Poly::from_coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_parameters_r2() {
        let f = Field::prime(3).unwrap();
        for c in 0..3 {
            let (_, d) = build_type_a(&f, 2, &[f.from_int(c)]).unwrap();
            assert_eq!(d.f, vec![f.from_int(1 - c), f.from_int(1 + c)]);
            assert_eq!(f_to_c(&f, 2, d.zeta, &d.f).unwrap(), d.c);
        }
    }

    #[test]
    fn delta_values_r2() {
        let f = Field::prime(3).unwrap();
        let (_, d) = build_type_a(&f, 2, &[f.one()]).unwrap();
        assert_eq!(d.delta, vec![f.from_int(2), f.from_int(1)]);
        assert!(d.delta_formulas_agree());
        assert_eq!(d.centre_presentation().f_poly, Poly::monomial(&f, 2));
        assert!(!d.is_smooth());
        assert_eq!(d.singular_z_values(), vec![f.zero()]);
    }

    #[test]
    fn f9_is_smooth() {
        let f = Field::new(3, 2, None).unwrap();
        let (_, d) = build_type_a(&f, 2, &[f.z()]).unwrap();
        assert!(d.is_smooth());
        assert!(d.singular_z_values().is_empty());
        let pres = d.centre_presentation();
        let expected = Poly::from_roots(&f, &[f.neg(f.z()), f.neg(f.mul(f.from_int(2), f.z()))]);
        assert_eq!(pres.f_poly, expected);
    }

    #[test]
    fn errors() {
        let f = Field::prime(3).unwrap();
        assert!(matches!(build_type_a(&f, 3, &[f.one(), f.one()]), Err(TypeAError::BadR(3))));
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(build_type_a(&f5, 3, &[f5.one(), f5.one()]), Err(TypeAError::Field(_))));
        assert!(matches!(build_type_a(&f5, 2, &[]), Err(TypeAError::ParamCount { .. })));
    }

    #[test]
    fn tau_r2_form() {
        let f = Field::prime(3).unwrap();
        let (alg, d) = build_type_a(&f, 2, &[f.one()]).unwrap();
        let es = d.idempotents(&alg);
        assert_eq!(es[0], alg.parse("2 g0 + 2 g1").unwrap());
        assert_eq!(es[1], alg.parse("2 g0 + g1").unwrap());
        assert_eq!(d.tau(&alg), alg.monomial(&[1, 1], 0) + es[1].scale(d.c[0]));
    }
}

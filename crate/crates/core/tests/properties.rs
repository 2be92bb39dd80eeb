mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use srax_core::centre::{is_central, satake, CentreError};
use srax_core::field::{Field, FieldElement};
use srax_core::pbw::{Algebra, AlgebraElement, AlgebraExt, Mono};
use srax_core::typea::{build_type_a, c_to_f, f_to_c};

fn field_for(p: u64, e: u32) -> Field {
    Field::new(p, e, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(pe in prop::sample::select(vec![(3u64, 1u32), (5, 1), (3, 2), (5, 2), (3, 3), (7, 2)]),
                    a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field_for(pe.0, pe.1);
        let q = f.order() as u32;
        let (a, b, c) = (f.from_index(a % q), f.from_index(b % q), f.from_index(c % q));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.pow(a, f.order()), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.parse(&f.format(a)).unwrap(), a);
    }

    #[test]
    fn c_f_round_trip(r in prop::sample::select(vec![2u64, 4]), seed in any::<u64>()) {
        let f = field_for(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c: Vec<FieldElement> = (1..r).map(|_| f.random(&mut rng)).collect();
        let (_, d) = build_type_a(&f, r, &c).unwrap();
        let fv = c_to_f(&f, r, d.zeta, &c);
        prop_assert_eq!(f.sum(fv.iter().copied()), f.from_int(r as i64));
        prop_assert_eq!(f_to_c(&f, r, d.zeta, &fv).unwrap(), c);
    }
}

fn algebras() -> Vec<Arc<Algebra>> {
    let f3 = Field::prime(3).unwrap();
    let f5 = Field::prime(5).unwrap();
    let f9 = field_for(3, 2);
    vec![
        build_type_a(&f3, 2, &[f3.one()]).unwrap().0,
        build_type_a(&f5, 4, &[f5.from_int(2), f5.one(), f5.from_int(3)]).unwrap().0,
        build_type_a(&f9, 4, &[f9.z(), f9.one(), f9.zero()]).unwrap().0,
        common::symmetric(&f5, 3, f5.from_int(2)),
    ]
}

#[test]
fn group_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for alg in algebras() {
        for _ in 0..25 {
            let a = alg.random_element(&mut rng, 3, 3);
            let b = alg.random_element(&mut rng, 3, 3);
            let prod = &a * &b;
            for g in 0..alg.group().order() {
                assert_eq!(prod.conjugate(g), &a.conjugate(g) * &b.conjugate(g));
            }
        }
    }
}

/// Homogeneous part of m-degree `k` for `deg x = 1, deg y = -1`.
fn m_part(a: &AlgebraElement, k: i64) -> AlgebraElement {
    a.m_degree_components().remove(&k).unwrap_or_else(|| a.algebra().zero())
}

#[test]
fn m_grading_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for alg in algebras().into_iter().take(3) {
        for _ in 0..40 {
            let a = alg.random_element(&mut rng, 4, 4);
            let b = alg.random_element(&mut rng, 4, 4);
            let (ka, kb) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            let (ha, hb) = (m_part(&a, ka), m_part(&b, kb));
            let prod = &ha * &hb;
            for (k, _) in prod.m_degree_components() {
                assert_eq!(k, ka + kb);
            }
        }
    }
}

use rand::Rng;

/// Product in `S(V) ∗ Γ` for diagonal groups: `(u^A g)(u^B h) = χ_g(B) u^{A+B} gh`
/// where `g u_a g⁻¹ = d_a(g) u_a`.
fn commutative_product(alg: &Arc<Algebra>, a: &AlgebraElement, b: &AlgebraElement) -> BTreeMap<Mono, FieldElement> {
    let f = alg.field();
    let grp = alg.group();
    let mut out: BTreeMap<Mono, FieldElement> = BTreeMap::new();
    for (ma, &ca) in a.terms() {
        let mat = grp.element(ma.g);
        for (mb, &cb) in b.terms() {
            let mut coef = f.mul(ca, cb);
            for (i, &e) in mb.exps.iter().enumerate() {
                coef = f.mul(coef, f.pow(mat.get(i, i), e as u64));
            }
            let exps: Vec<u32> = ma.exps.iter().zip(&mb.exps).map(|(x, y)| x + y).collect();
            let key = Mono::new(&exps, grp.mul(ma.g, mb.g));
            let v = out.entry(key.clone()).or_insert(f.zero());
            *v = f.add(*v, coef);
            if v.is_zero() {
                out.remove(&key);
            }
        }
    }
    out
}

#[test]
fn leading_terms_multiply_in_the_associated_graded() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for alg in algebras().into_iter().take(3) {
        // convention check for the oracle
        let x = alg.x(0);
        let mat = alg.group().element(1);
        assert_eq!(x.conjugate(1), x.scale(mat.get(0, 0)));
        for _ in 0..60 {
            let a = alg.random_element(&mut rng, 4, 3);
            let b = alg.random_element(&mut rng, 4, 3);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let (ta, tb) = (a.top_part(), b.top_part());
            let d = ta.filtration_degree().unwrap() + tb.filtration_degree().unwrap();
            let prod = (&a * &b).filter(|m| m.degree() == d);
            assert!((&a * &b).terms().all(|(m, _)| m.degree() <= d));
            assert_eq!(prod.term_map(), &commutative_product(&alg, &ta, &tb));
        }
    }
}

#[test]
fn smoothness_matches_squarefree_oracle() {
    let fields: Vec<(u64, u32)> = vec![
        (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (29, 1), (31, 1),
        (37, 1), (41, 1), (43, 1), (47, 1), (53, 1), (61, 1), (73, 1), (79, 1),
        (3, 2), (5, 2), (7, 2), (3, 3), (3, 4),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut cases = 0;
    let mut smooth = 0;
    while cases < 100 {
        let (p, e) = fields[rng.gen_range(0..fields.len())];
        let r = rng.gen_range(2..=4u64);
        let f = field_for(p, e);
        if (f.order() - 1) % r != 0 {
            continue;
        }
        let c: Vec<FieldElement> = (1..r).map(|_| f.random(&mut rng)).collect();
        let (_, d) = build_type_a(&f, r, &c).unwrap();
        let fz = d.centre_presentation().f_poly;
        // f splits over F_q; squarefree iff no common root with f'
        let df = fz.derivative(&f);
        let oracle = !f.elements().any(|z| fz.eval(&f, z).is_zero() && df.eval(&f, z).is_zero());
        assert_eq!(d.is_smooth(), oracle, "q = {}, r = {r}, c = {c:?}", f.order());
        smooth += oracle as usize;
        cases += 1;
    }
    assert!(smooth > 0 && smooth < 100);
}

#[test]
fn satake_lands_in_spherical_centre() {
    let f = Field::prime(3).unwrap();
    let (alg, d) = build_type_a(&f, 2, &[f.one()]).unwrap();
    let h = d.h_element(&alg);
    let e = alg.symmetrizer();
    let s = satake(&h).unwrap();
    assert_eq!(&e * &s, s);
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..10 {
        let a = alg.random_element(&mut rng, 3, 3);
        let eae = &(&e * &a) * &e;
        assert!((&s * &eae - &eae * &s).is_zero());
    }
    assert!(is_central(&h));
    assert!(matches!(satake(&alg.x(0)), Err(CentreError::NotCentral(_))));
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use srax_core::centre::{quotient_at_character, CentralCharacter, PowerCharacter};
use srax_core::dunkl::{build_point_module, quotient_at, solve_dunkl, weyl_centre_check};
use srax_core::field::Field;
use srax_core::linalg::Matrix;
use srax_core::meataxe::Verdict;
use srax_core::pbw::AlgebraExt;
use srax_core::typea::build_type_a;

const CAP: usize = 4096;

#[test]
fn embedding_relations_and_injectivity() {
    for (q, r) in [(3u64, 2u64), (5, 2), (7, 3), (9, 4)] {
        let f = if q == 9 { Field::new(3, 2, None).unwrap() } else { Field::prime(q).unwrap() };
        let mut rng = ChaCha8Rng::seed_from_u64(q * 10 + r);
        let c: Vec<_> = (1..r).map(|_| f.random(&mut rng)).collect();
        let (alg, d) = build_type_a(&f, r, &c).unwrap();
        let map = solve_dunkl(&d).unwrap();
        assert_eq!(map.epsilon, f.from_int(-1));
        assert!(map.relations_hold());
        assert!(map.injective_up_to(&alg, 3));
        // homomorphism on random pairs
        for _ in 0..10 {
            let a = alg.random_element(&mut rng, 2, 3);
            let b = alg.random_element(&mut rng, 2, 3);
            assert_eq!(map.apply(&(&a * &b)), map.apply(&a).mul(&map.apply(&b)));
        }
        let h = d.h_element(&alg);
        let th = map.apply(&h);
        for g in [map.theta_x(), map.theta_y(), map.theta_gamma(1)] {
            assert!(th.commutator(&g).is_zero());
        }
    }
}

#[test]
fn point_module_r2_over_f3() {
    let f = Field::prime(3).unwrap();
    let (alg, d) = build_type_a(&f, 2, &[f.one()]).unwrap();
    let map = solve_dunkl(&d).unwrap();
    let m = build_point_module(&map, 3, f.one()).unwrap();
    assert_eq!(m.dim, 6);
    let alt: Vec<_> = (0..6).map(|i| f.from_int(if i % 2 == 0 { 1 } else { -1 })).collect();
    assert_eq!(m.mat_gamma, Matrix::diag(&alt));
    assert_eq!(m.mat_y.pow(&f, 6), Matrix::identity(6));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    assert_eq!(m.is_irreducible(&mut rng, 32), Verdict::Irreducible);
    let doubled = m.matrix_module().direct_sum(&m.matrix_module());
    assert_eq!(doubled.irreducibility(&f, &mut rng, 32), Verdict::Reducible);
    assert_eq!(m.isotypic_multiplicities(), vec![3, 3]);
    let chi = m.central_character(&alg, &d).unwrap();
    assert_eq!(chi.get("Y"), Some(f.one()));
    // XY = f(h - β_0)
    let z = f.sub(chi.get("h").unwrap(), d.beta(0));
    let fz = d.centre_presentation().f_poly.eval(&f, z);
    assert_eq!(f.mul(chi.get("X").unwrap(), chi.get("Y").unwrap()), fz);
}

#[test]
fn c_zero_isotypic() {
    let f = Field::prime(3).unwrap();
    let (_, d) = build_type_a(&f, 2, &[f.zero()]).unwrap();
    let map = solve_dunkl(&d).unwrap();
    let m = build_point_module(&map, 3, f.one()).unwrap();
    assert_eq!(m.isotypic_multiplicities(), vec![3, 3]);
}

#[test]
fn azumaya_witness_over_f9() {
    let f = Field::new(3, 2, None).unwrap();
    let (alg, d) = build_type_a(&f, 2, &[f.z()]).unwrap();
    assert!(d.is_smooth());
    let map = solve_dunkl(&d).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for a in f.elements().into_iter().filter(|a| !a.is_zero()).take(5) {
        let m = build_point_module(&map, 3, a).unwrap();
        assert_eq!(m.is_irreducible(&mut rng, 32), Verdict::Irreducible);
        let chi = m.central_character(&alg, &d).unwrap();
        let quo = quotient_at(&alg, &d, &chi, CAP).unwrap();
        assert_eq!(quo.dim(), 36);
        assert!(quo.is_full_matrix_algebra(&mut rng, CAP).unwrap());
        assert_eq!(quo.spherical_block_dimension(), 9);
        checked += 1;
    }
    assert_eq!(checked, 5);
}

#[test]
fn singular_points_over_f3_are_not_azumaya() {
    let f = Field::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for c in 0..3 {
        let (alg, d) = build_type_a(&f, 2, &[f.from_int(c)]).unwrap();
        assert!(!d.is_smooth());
        for z in d.singular_z_values() {
            let chi = CentralCharacter::new()
                .with("X", f.zero())
                .with("Y", f.zero())
                .with("h", f.add(z, d.beta(0)));
            let quo = quotient_at(&alg, &d, &chi, CAP).unwrap();
            assert!(!quo.is_full_matrix_algebra(&mut rng, CAP).unwrap(), "c = {c}");
        }
    }
}

#[test]
fn free_rank_without_h() {
    let f = Field::prime(3).unwrap();
    let (alg, _) = build_type_a(&f, 2, &[f.one()]).unwrap();
    let chi = PowerCharacter { bounds: vec![6, 6], values: vec![f.one(), f.one()] };
    assert_eq!(quotient_at_character(&alg, &chi, &[], CAP).unwrap().dim(), 72);
}

#[test]
fn weyl_centre() {
    for p in [3u64, 5] {
        let f = Field::prime(p).unwrap();
        let rep = weyl_centre_check(&f, 2 * p as usize, CAP).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}

use srax_core::centre;
use srax_core::field::Field;
use srax_core::typea::{build_type_a, verify_centre_relation, DEFAULT_PR_CAP};

#[test]
fn identities_hold_for_several_r() {
    for (p, e, r) in [(3u64, 1u32, 2u64), (5, 1, 2), (7, 1, 3), (5, 1, 4), (3, 2, 4)] {
        let f = Field::new(p, e, None).unwrap();
        let c: Vec<_> = (1..r).map(|j| f.from_int(j as i64 + 1)).collect();
        let (alg, d) = build_type_a(&f, r, &c).unwrap();
        let rep = d.check_identities(&alg);
        assert!(rep.all(), "p={p} e={e} r={r}: {rep:?}");
    }
}

#[test]
fn centre_relation_normalization() {
    let f3 = Field::prime(3).unwrap();
    let f9 = Field::new(3, 2, None).unwrap();
    let cases = vec![
        (f3.clone(), f3.from_int(0)),
        (f3.clone(), f3.from_int(1)),
        (f3.clone(), f3.from_int(2)),
        (f9.clone(), f9.z()),
    ];
    for (f, c) in cases {
        let (alg, d) = build_type_a(&f, 2, &[c]).unwrap();
        let rel = verify_centre_relation(&alg, &d, DEFAULT_PR_CAP).unwrap();
        assert!(rel.normalized(), "{rel:?}");
    }
}

#[test]
fn centre_dims_match_invariants() {
    let f = Field::prime(3).unwrap();
    let (alg, _) = build_type_a(&f, 2, &[f.one()]).unwrap();
    let dims = centre::centre_filtration_dims(&alg, 12, 12).unwrap();
    let oracle = centre::graded_invariant_dims(&f, alg.group(), 12);
    assert_eq!(&dims[..7], &[1, 1, 1, 1, 1, 1, 4]);
    assert_eq!(dims, oracle);
}

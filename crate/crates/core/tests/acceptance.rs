//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use srax_core::centre::{
    centre_filtration_dims, graded_invariant_dims, is_central, quotient_at_character, z0_generators, CentralCharacter,
    PowerCharacter,
};
use srax_core::dunkl::{build_point_module, quotient_at, solve_dunkl, weyl_centre_check};
use srax_core::field::{Field, FieldElement};
use srax_core::meataxe::{Verdict, DEFAULT_BUDGET};
use srax_core::pbw::{Algebra, AlgebraExt};
use srax_core::typea::{build_type_a, verify_centre_relation, TypeAData, DEFAULT_PR_CAP};

const CAP: usize = 4096;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn field(p: u64, e: u32) -> Field {
    Field::new(p, e, None).unwrap()
}

fn type_a(f: &Field, r: u64, c: &[FieldElement]) -> (Arc<Algebra>, TypeAData) {
    build_type_a(f, r, c).unwrap()
}

fn random_c(f: &Field, r: u64, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    (1..r).map(|_| f.random(rng)).collect()
}

fn c1_pbw(rng: &mut ChaCha8Rng) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (p, r, e) in [(3u64, 2u64, 1u32), (5, 2, 1), (3, 4, 2)] {
        let f = field(p, e);
        let (alg, _) = type_a(&f, r, &random_c(&f, r, rng));
        let start = Instant::now();
        let mut ok = 0;
        for _ in 0..200 {
            let a = alg.random_element(rng, 4, 3);
            let b = alg.random_element(rng, 4, 3);
            let c = alg.random_element(rng, 4, 3);
            ok += ((&(&a * &b) * &c) == (&a * &(&b * &c))) as usize;
        }
        let t = start.elapsed();
        pass &= ok == 200 && t < Duration::from_secs(10);
        parts.push(format!("q={} r={r}: {ok}/200 in {:.2}s", f.order(), t.as_secs_f64()));
    }
    outcome(pass, parts.join("; "))
}

fn c2_z0(rng: &mut ChaCha8Rng) -> Outcome {
    let mut algs: Vec<(String, Arc<Algebra>, usize)> = Vec::new();
    for (p, r, e) in [(3u64, 2u64, 1u32), (5, 2, 1), (3, 4, 2), (7, 3, 1)] {
        let f = field(p, e);
        let (alg, _) = type_a(&f, r, &random_c(&f, r, rng));
        algs.push((format!("q={} r={r}", f.order()), alg, (p * r) as usize));
    }
    let f5 = field(5, 1);
    algs.push(("S_3 over F_5".into(), common::symmetric(&f5, 3, f5.from_int(2)), 10));
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, alg, bound) in algs {
        let gens = z0_generators(&alg, bound).unwrap();
        let central = gens.iter().filter(|z| is_central(z)).count();
        pass &= !gens.is_empty() && central == gens.len();
        parts.push(format!("{name}: {central}/{}", gens.len()));
    }
    outcome(pass, parts.join("; "))
}

fn c3_free_rank() -> Outcome {
    let f = field(3, 1);
    let (alg, _) = type_a(&f, 2, &[f.one()]);
    let chi = PowerCharacter { bounds: vec![6, 6], values: vec![f.one(), f.from_int(2)] };
    let dim = quotient_at_character(&alg, &chi, &[], CAP).unwrap().dim();
    outcome(dim == 72, format!("dim = {dim}, expected p^2 r^3 = 72"))
}

fn c4_identities() -> Outcome {
    let f3 = field(3, 1);
    let f9 = field(3, 2);
    let f5 = field(5, 1);
    let f7 = field(7, 1);
    let cases: Vec<(Field, u64, Vec<FieldElement>)> = vec![
        (f3.clone(), 2, vec![f3.zero()]),
        (f3.clone(), 2, vec![f3.one()]),
        (f3.clone(), 2, vec![f3.from_int(2)]),
        (f9.clone(), 2, vec![f9.z()]),
        (f5.clone(), 2, vec![f5.from_int(3)]),
        (f5.clone(), 4, vec![f5.one(), f5.from_int(2), f5.from_int(4)]),
        (f7.clone(), 3, vec![f7.from_int(2), f7.from_int(5)]),
        (f9.clone(), 4, vec![f9.z(), f9.one(), f9.add(f9.z(), f9.one())]),
    ];
    let mut ok = 0;
    for (f, r, c) in &cases {
        let (alg, d) = type_a(f, *r, c);
        ok += d.check_identities(&alg).all() as usize;
    }
    outcome(ok == cases.len(), format!("{ok}/{} builds", cases.len()))
}

fn c5_centre_relation() -> Outcome {
    let f3 = field(3, 1);
    let f9 = field(3, 2);
    let cases = [
        (f3.clone(), f3.zero()),
        (f3.clone(), f3.one()),
        (f3.clone(), f3.from_int(2)),
        (f9.clone(), f9.z()),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    let mut lambdas = Vec::new();
    for (f, c) in cases {
        let (alg, d) = type_a(&f, 2, &[c]);
        let start = Instant::now();
        let rel = verify_centre_relation(&alg, &d, DEFAULT_PR_CAP).unwrap();
        let t = start.elapsed();
        pass &= rel.normalized() && t < Duration::from_secs(60);
        lambdas.push(rel.lambda);
        parts.push(format!(
            "q={} c={}: holds={} λ={} Z=h{}{} ({:.2}s)",
            f.order(),
            f.format(c),
            rel.holds,
            rel.lambda.map_or("-".into(), |l| f.format(l)),
            if rel.shift.is_some() { "+" } else { "" },
            rel.shift.map_or("?".into(), |s| f.format(s)),
            t.as_secs_f64()
        ));
    }
    pass &= lambdas.windows(2).all(|w| w[0] == w[1]);
    outcome(pass, format!("normalization λ = 1, Z = h - (δ_0^p - δ_0); {}", parts.join("; ")))
}

fn c6_smoothness(rng: &mut ChaCha8Rng) -> Outcome {
    let fields: Vec<(u64, u32)> = vec![
        (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (29, 1), (31, 1), (37, 1), (41, 1),
        (43, 1), (47, 1), (53, 1), (59, 1), (61, 1), (67, 1), (71, 1), (73, 1), (79, 1), (3, 2), (5, 2), (7, 2),
        (3, 3), (3, 4),
    ];
    let (mut cases, mut agree, mut smooth) = (0, 0, 0);
    while cases < 100 {
        let (p, e) = fields[rng.gen_range(0..fields.len())];
        let r = rng.gen_range(2..=4u64);
        let f = field(p, e);
        if (f.order() - 1) % r != 0 {
            continue;
        }
        let (_, d) = type_a(&f, r, &random_c(&f, r, rng));
        let fz = d.centre_presentation().f_poly;
        let df = fz.derivative(&f);
        let squarefree = !f.elements().any(|z| fz.eval(&f, z).is_zero() && df.eval(&f, z).is_zero());
        agree += (d.is_smooth() == squarefree) as usize;
        smooth += squarefree as usize;
        cases += 1;
    }
    outcome(agree == 100, format!("{agree}/100 agree ({smooth} smooth)"))
}

fn c7_hilbert() -> Outcome {
    let f = field(3, 1);
    let (alg, _) = type_a(&f, 2, &[f.one()]);
    let dims = centre_filtration_dims(&alg, 12, 12).unwrap();
    let oracle = graded_invariant_dims(&f, alg.group(), 12);
    let pass = dims[..=6] == [1, 1, 1, 1, 1, 1, 4] && dims == oracle;
    outcome(pass, format!("dims {:?}, oracle {:?}", dims, oracle))
}

fn c8_dunkl(rng: &mut ChaCha8Rng) -> Outcome {
    let mut ok = 0;
    let mut total = 0;
    for (p, r, e) in [(3u64, 2u64, 1u32), (5, 2, 1), (7, 3, 1), (3, 4, 2), (5, 4, 1)] {
        let f = field(p, e);
        let (alg, d) = type_a(&f, r, &random_c(&f, r, rng));
        total += 1;
        let Ok(map) = solve_dunkl(&d) else { continue };
        ok += (map.relations_hold() && map.injective_up_to(&alg, 3)) as usize;
    }
    outcome(ok == total, format!("{ok}/{total} algebras: solved, relations exact, injective to degree 3"))
}

fn point_module_f3(rng: &mut ChaCha8Rng) -> (Outcome, Outcome) {
    let f = field(3, 1);
    let (alg, d) = type_a(&f, 2, &[f.one()]);
    let map = solve_dunkl(&d).unwrap();
    let m = build_point_module(&map, 3, f.one()).unwrap();
    let verdict = m.is_irreducible(rng, DEFAULT_BUDGET);
    let chi = m.central_character(&alg, &d).unwrap();
    let q = quotient_at(&alg, &d, &chi, CAP).unwrap();
    let full = q.is_full_matrix_algebra(rng, CAP).unwrap();
    let iso = m.isotypic_multiplicities();
    (
        outcome(
            m.dim == 6 && verdict == Verdict::Irreducible && full && q.dim() == 36,
            format!("dim {}, {:?}, quotient dim {} full = {full}", m.dim, verdict, q.dim()),
        ),
        outcome(iso == vec![3, 3], format!("isotypic {iso:?}")),
    )
}

fn c11_c12_azumaya(rng: &mut ChaCha8Rng) -> (Outcome, Outcome) {
    let f9 = field(3, 2);
    let (alg, d) = type_a(&f9, 2, &[f9.z()]);
    let map = solve_dunkl(&d).unwrap();
    let mut full_count = 0;
    let mut spherical = Vec::new();
    let points: Vec<FieldElement> = f9.elements().filter(|a| !a.is_zero()).collect();
    for &a in &points {
        let m = build_point_module(&map, 3, a).unwrap();
        let chi = m.central_character(&alg, &d).unwrap();
        let q = quotient_at(&alg, &d, &chi, CAP).unwrap();
        if q.dim() == 36 && q.is_full_matrix_algebra(rng, CAP).unwrap() {
            full_count += 1;
            spherical.push(q.spherical_block_dimension());
        }
    }
    let mut singular_fail = 0;
    let mut singular_total = 0;
    let f3 = field(3, 1);
    for c in 0..3 {
        let (alg, d) = type_a(&f3, 2, &[f3.from_int(c)]);
        for z in d.singular_z_values() {
            let chi = CentralCharacter::new().with("X", f3.zero()).with("Y", f3.zero()).with("h", f3.add(z, d.beta(0)));
            let q = quotient_at(&alg, &d, &chi, CAP).unwrap();
            singular_total += 1;
            singular_fail += !q.is_full_matrix_algebra(rng, CAP).unwrap() as usize;
        }
    }
    let c11 = outcome(
        d.is_smooth() && full_count >= 5 && full_count == points.len() && singular_total == 3 && singular_fail == 3,
        format!(
            "F_9 c=z smooth: {full_count}/{} Dunkl characters full; F_3 singular points: {singular_fail}/{singular_total} not full",
            points.len()
        ),
    );
    let c12 = outcome(
        !spherical.is_empty() && spherical.iter().all(|&s| s == 9),
        format!("spherical dims {spherical:?}"),
    );
    (c11, c12)
}

fn c13_weyl() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in [3u64, 5] {
        let rep = weyl_centre_check(&field(p, 1), 2 * p as usize, CAP).unwrap();
        pass &= rep.passed();
        parts.push(format!("p={p}: dims {:?}", rep.centre_dims));
    }
    outcome(pass, parts.join("; "))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("PBW confluence", c1_pbw(&mut rng)));
    results.push(("Z_0 centrality", c2_z0(&mut rng)));
    results.push(("free-rank count", c3_free_rank()));
    results.push(("type-A identities", c4_identities()));
    results.push(("centre presentation", c5_centre_relation()));
    results.push(("smoothness criterion", c6_smoothness(&mut rng)));
    results.push(("centre Hilbert function", c7_hilbert()));
    results.push(("Dunkl embedding", c8_dunkl(&mut rng)));
    let (c9, c10) = point_module_f3(&mut rng);
    results.push(("PI-degree witness", c9));
    results.push(("kΓ-regularity", c10));
    let (c11, c12) = c11_c12_azumaya(&mut rng);
    results.push(("Azumaya/smooth cross-check", c11));
    results.push(("spherical block", c12));
    results.push(("Weyl centre", c13_weyl()));
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("{} {:>2}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += !o.pass as usize;
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

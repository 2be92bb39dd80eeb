use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use srax_core::centre::{self, CentralCharacter, FiniteQuotient, PowerCharacter};
use srax_core::dunkl::{self, DunklMap};
use srax_core::field::FieldElement;
use srax_core::meataxe::{Verdict, DEFAULT_BUDGET};
use srax_core::pbw::AlgebraExt;
use srax_core::typea::{c_to_f, f_to_c, verify_centre_relation, TypeAData, DEFAULT_PR_CAP};

use crate::config::{variant_name, ConfigError, Context, RunConfig, Suite};
use crate::report::{Report, Row};

pub struct Runner<'a> {
    cfg: &'a RunConfig,
    ctx: Context,
    rng: ChaCha8Rng,
    timings: bool,
    rows: Vec<Row>,
}

type Outcome = Result<Row, String>;

/// Builds the configuration and runs its suites in a fixed order.
pub fn run(cfg: &RunConfig, timings: bool) -> Result<Report, ConfigError> {
    let ctx = Context::build(cfg)?;
    let needs_type_a = matches!(cfg.suite, Suite::Typea | Suite::Dunkl | Suite::Azumaya);
    if needs_type_a && ctx.type_a.is_none() {
        return Err(ConfigError::Parse(format!("suite `{}` needs a cyclic group", cfg.suite.name())));
    }
    let mut runner = Runner { cfg, rng: ChaCha8Rng::seed_from_u64(cfg.seed), ctx, timings, rows: Vec::new() };
    for s in Suite::ORDER {
        if cfg.suite != Suite::All && cfg.suite != s {
            continue;
        }
        match s {
            Suite::Pbw => runner.pbw(),
            Suite::Centre => runner.centre(),
            Suite::Typea if runner.ctx.type_a.is_some() => runner.typea(),
            Suite::Dunkl if runner.ctx.type_a.is_some() => runner.dunkl(),
            Suite::Azumaya if runner.ctx.type_a.is_some() => runner.azumaya(),
            _ => {}
        }
    }
    Ok(Report::new(cfg.clone(), runner.rows))
}

fn fmt_vec(f: &srax_core::field::Field, v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(|&x| Value::String(f.format(x))).collect())
}

impl Runner<'_> {
    fn record(&mut self, name: &str, anchor: &str, inputs: Value, body: impl FnOnce(&mut Self) -> Outcome) {
        let start = Instant::now();
        let mut row = body(self).unwrap_or_else(|e| Row::error(name, anchor, inputs.clone(), &e));
        row.name = name.into();
        row.anchor = anchor.into();
        row.inputs = inputs;
        if self.timings {
            row.runtime_ms = Some(start.elapsed().as_millis() as u64);
        }
        self.rows.push(row);
    }

    fn type_a(&self) -> TypeAData {
        self.ctx.type_a.clone().expect("cyclic configuration")
    }

    fn pbw(&mut self) {
        let alg = self.ctx.alg.clone();
        let n = self.cfg.samples;
        self.record("associativity", "PBW theorem", json!({"triples": n, "max_degree": 4}), |me| {
            let mut ok = 0;
            for _ in 0..n {
                let a = alg.random_element(&mut me.rng, 4, 3);
                let b = alg.random_element(&mut me.rng, 4, 3);
                let c = alg.random_element(&mut me.rng, 4, 3);
                ok += ((&(&a * &b) * &c) == (&a * &(&b * &c))) as usize;
            }
            Ok(Row::new("", "", Value::Null, json!(n), json!(ok)))
        });
        self.record("print_parse_round_trip", "PBW normal form", json!({"elements": 20}), |me| {
            let mut ok = 0;
            for _ in 0..20 {
                let a = alg.random_element(&mut me.rng, 3, 4);
                let back = alg.parse(&a.to_string()).map_err(|e| variant_name(&e))?;
                ok += (back == a) as usize;
            }
            Ok(Row::new("", "", Value::Null, json!(20), json!(ok)))
        });
        self.record("group_equivariance", "Γ acts by automorphisms", json!({"pairs": 10}), |me| {
            let mut ok = 0;
            for _ in 0..10 {
                let a = alg.random_element(&mut me.rng, 3, 3);
                let b = alg.random_element(&mut me.rng, 3, 3);
                let ab = &a * &b;
                ok += (0..alg.group().order()).all(|g| ab.conjugate(g) == &a.conjugate(g) * &b.conjugate(g)) as usize;
            }
            Ok(Row::new("", "", Value::Null, json!(10), json!(ok)))
        });
        self.record("filtration_is_multiplicative", "PBW filtration", json!({"pairs": 20}), |me| {
            let mut ok = 0;
            for _ in 0..20 {
                let a = alg.random_element(&mut me.rng, 4, 3);
                let b = alg.random_element(&mut me.rng, 4, 3);
                let bound = a.filtration_degree().unwrap_or(0) + b.filtration_degree().unwrap_or(0);
                ok += (&a * &b).terms().all(|(m, _)| m.degree() <= bound) as usize;
            }
            Ok(Row::new("", "", Value::Null, json!(20), json!(ok)))
        });
    }

    fn exponent(&self) -> usize {
        let g = self.ctx.alg.group();
        (0..g.order()).map(|i| g.element_order(i)).fold(1, |a, b| a / gcd(a, b) * b)
    }

    fn centre(&mut self) {
        let alg = self.ctx.alg.clone();
        let f = self.ctx.field.clone();
        let p = f.p() as usize;
        let cap = self.cfg.degree_cap;
        let bound = (p * self.exponent()).min(p * (cap / p).max(1));
        self.record("z0_central", "Z_0 ⊆ Z(H)", json!({"degree_bound": bound}), |_| {
            let gens = centre::z0_generators(&alg, bound).map_err(|e| variant_name(&e))?;
            let central = gens.iter().filter(|z| centre::is_central(z)).count();
            Ok(Row::new("", "", Value::Null, json!(gens.len()), json!(central)))
        });
        let d = self.cfg.centre_degree.unwrap_or(match self.ctx.type_a {
            Some(_) => (2 * bound).min(cap),
            None => p + 1,
        });
        self.record("centre_hilbert_function", "gr Z = (S(V)^p)^Γ", json!({"dmax": d}), |_| {
            let got = centre::centre_filtration_dims(&alg, d, cap).map_err(|e| variant_name(&e))?;
            let expected = centre::graded_invariant_dims(&f, alg.group(), d);
            Ok(Row::new("", "", Value::Null, json!(expected), json!(got)))
        });
        let group_count = alg.group().conj_classes().len();
        self.record("group_algebra_semisimple", "kΓ with p ∤ |Γ|", json!({"order": alg.group().order()}), |me| {
            let q = FiniteQuotient::group_algebra(&alg);
            let rad = q.radical_dimension(&mut me.rng, me.cfg.dim_cap).map_err(|e| variant_name(&e))?;
            Ok(Row::new("", "", Value::Null, json!({"radical": 0, "centre": group_count}), json!({"radical": rad, "centre": q.centre_dimension()})))
        });
        self.record("satake_image_central", "Satake map z ↦ eze", json!({"samples": 5}), |me| {
            let gens = centre::z0_generators(&alg, bound).map_err(|e| variant_name(&e))?;
            let e = alg.symmetrizer();
            let mut ok = 0;
            for z in &gens {
                let s = centre::satake(z).map_err(|e| variant_name(&e))?;
                let all = (0..5).all(|_| {
                    let a = alg.random_element(&mut me.rng, 3, 3);
                    let eae = &(&e * &a) * &e;
                    (&s * &eae - &eae * &s).is_zero()
                });
                ok += all as usize;
            }
            Ok(Row::new("", "", Value::Null, json!(gens.len()), json!(ok)))
        });
        if let Some(d) = self.ctx.type_a.clone() {
            let pr = (d.p * d.r) as u32;
            let expected = d.p * d.p * d.r * d.r * d.r;
            self.record("free_rank", "H free over Z_0", json!({"bounds": [pr, pr], "values": [1, 1]}), |me| {
                let chi = PowerCharacter { bounds: vec![pr, pr], values: vec![f.one(), f.one()] };
                let q = centre::quotient_at_character(&alg, &chi, &[], me.cfg.dim_cap).map_err(|e| variant_name(&e))?;
                Ok(Row::new("", "", Value::Null, json!(expected), json!(q.dim())))
            });
        }
    }

    fn typea(&mut self) {
        let alg = self.ctx.alg.clone();
        let f = self.ctx.field.clone();
        let d = self.type_a();
        let inputs = json!({"q": f.order(), "r": d.r, "c": fmt_vec(&f, &d.c)});
        let rep = d.check_identities(&alg);
        let checks = [
            ("tau_x", "[τ, x] = x", rep.tau_x),
            ("tau_y", "[τ, y] = -y", rep.tau_y),
            ("h_central", "τ^p - τ central", rep.h_central),
            ("tau_not_central", "τ itself not central", rep.tau_not_central),
            ("f_sum", "Σ f_j = r", rep.f_sum),
            ("idempotents", "e_j orthogonal, Σ e_j = 1", rep.idempotents),
            ("z0_pair_central", "x^{pr}, y^{pr} central", rep.z0_central),
            ("delta_formulas", "two δ formulas agree", rep.delta_formulas),
        ];
        for (name, anchor, ok) in checks {
            self.record(name, anchor, inputs.clone(), |_| Ok(Row::new("", "", Value::Null, json!(true), json!(ok))));
        }
        self.record("centre_relation", "XY = Π (Z + δ_m^p - δ_m)", inputs.clone(), |_| {
            let rel = verify_centre_relation(&alg, &d, DEFAULT_PR_CAP).map_err(|e| variant_name(&e))?;
            Ok(Row::new("", "", Value::Null, json!(true), json!(rel.holds)))
        });
        self.record("centre_normalization", "Z = h + s, λ = 1", inputs.clone(), |_| {
            let rel = verify_centre_relation(&alg, &d, DEFAULT_PR_CAP).map_err(|e| variant_name(&e))?;
            let expected = json!({"lambda": "1", "shift": f.format(rel.predicted_shift)});
            let got = json!({
                "lambda": rel.lambda.map(|l| f.format(l)),
                "shift": rel.shift.map(|s| f.format(s)),
            });
            Ok(Row::new("", "", Value::Null, expected, got))
        });
        let pres = d.centre_presentation();
        let df = pres.f_poly.derivative(&f);
        let repeated: Vec<FieldElement> =
            f.elements().filter(|&z| pres.f_poly.eval(&f, z).is_zero() && df.eval(&f, z).is_zero()).collect();
        self.record("smoothness", "smooth iff δ_i - δ_j ∉ F_p", inputs.clone(), |_| {
            Ok(Row::new("", "", Value::Null, json!(repeated.is_empty()), json!(d.is_smooth())))
        });
        self.record("singular_z", "singular points of XY = f(Z)", inputs.clone(), |_| {
            Ok(Row::new("", "", Value::Null, fmt_vec(&f, &repeated), fmt_vec(&f, &d.singular_z_values())))
        });
        self.record("c_f_round_trip", "c ↔ f parameters", inputs, |_| {
            let fv = c_to_f(&f, d.r, d.zeta, &d.c);
            let back = f_to_c(&f, d.r, d.zeta, &fv).map_err(|e| variant_name(&e))?;
            Ok(Row::new("", "", Value::Null, fmt_vec(&f, &d.c), fmt_vec(&f, &back)))
        });
    }

    fn points(&self) -> Result<Vec<FieldElement>, String> {
        self.cfg.points.iter().map(|l| l.value(&self.ctx.field).map_err(|e| variant_name(&e))).collect()
    }

    fn dunkl(&mut self) {
        let alg = self.ctx.alg.clone();
        let f = self.ctx.field.clone();
        let d = self.type_a();
        let inputs = json!({"q": f.order(), "r": d.r, "c": fmt_vec(&f, &d.c)});
        let map = match dunkl::solve_dunkl(&d) {
            Ok(m) => m,
            Err(e) => {
                let err = variant_name(&e);
                self.record("dunkl_solve", "Dunkl embedding", inputs, |_| Err(err));
                return;
            }
        };
        self.record("dunkl_solve", "Dunkl embedding", inputs.clone(), |_| {
            let eta_inv = f.inv(d.eta).unwrap();
            let ok = map.b.iter().enumerate().all(|(j, &b)| {
                let lhs = f.mul(b, f.sub(f.one(), f.pow(eta_inv, (j + 1) as u64)));
                lhs == f.neg(d.c[j])
            });
            Ok(Row::new("", "", Value::Null, json!({"epsilon": "-1" , "tails": true}),
                json!({"epsilon": if map.epsilon == f.neg(f.one()) { "-1".to_string() } else { f.format(map.epsilon) }, "tails": ok})))
        });
        self.record("dunkl_relations", "Θ preserves the relations", inputs.clone(), |_| {
            Ok(Row::new("", "", Value::Null, json!(true), json!(map.relations_hold())))
        });
        self.record("dunkl_injective", "Θ injective", json!({"max_degree": 3}), |_| {
            Ok(Row::new("", "", Value::Null, json!(true), json!(map.injective_up_to(&alg, 3))))
        });
        self.record("dunkl_multiplicative", "Θ algebra homomorphism", json!({"pairs": 10}), |me| {
            let mut ok = 0;
            for _ in 0..10 {
                let a = alg.random_element(&mut me.rng, 2, 3);
                let b = alg.random_element(&mut me.rng, 2, 3);
                ok += (map.apply(&(&a * &b)) == map.apply(&a).mul(&map.apply(&b))) as usize;
            }
            Ok(Row::new("", "", Value::Null, json!(10), json!(ok)))
        });
        let points = match self.points() {
            Ok(p) => p,
            Err(e) => {
                self.record("points", "point modules", json!(null), |_| Err(e));
                return;
            }
        };
        for a in points {
            self.point_rows(&map, a);
        }
    }

    fn point_rows(&mut self, map: &DunklMap, a: FieldElement) {
        let alg = self.ctx.alg.clone();
        let f = self.ctx.field.clone();
        let d = self.type_a();
        let inputs = json!({"a": f.format(a)});
        let pr = (d.p * d.r) as usize;
        let m = match dunkl::build_point_module(map, d.p, a) {
            Ok(m) => m,
            Err(e) => {
                let err = variant_name(&e);
                self.record("point_module", "k[y]/(y^{pr} - a)", inputs, |_| Err(err));
                return;
            }
        };
        self.record("point_module_dim", "PI-degree p^n |Γ|", inputs.clone(), |_| {
            Ok(Row::new("", "", Value::Null, json!(pr), json!(m.dim)))
        });
        self.record("point_module_irreducible", "PI-degree p^n |Γ|", inputs.clone(), |me| {
            let v = m.is_irreducible(&mut me.rng, DEFAULT_BUDGET);
            let pass = match v {
                Verdict::Irreducible => Some(true),
                Verdict::Reducible => Some(false),
                Verdict::Inconclusive => None,
            };
            Ok(Row::new("", "", Value::Null, json!("Irreducible"), json!(format!("{v:?}"))).with_pass(pass))
        });
        self.record("isotypic", "regular kΓ-module of rank p^n", inputs.clone(), |_| {
            Ok(Row::new("", "", Value::Null, json!(vec![d.p; d.r as usize]), json!(m.isotypic_multiplicities())))
        });
        self.record("central_character", "XY = f(Z) at the module", inputs, |_| {
            let chi = m.central_character(&alg, &d).map_err(|e| variant_name(&e))?;
            let (x, y, h) = (chi.get("X").unwrap(), chi.get("Y").unwrap(), chi.get("h").unwrap());
            let fz = d.centre_presentation().f_poly.eval(&f, f.sub(h, d.beta(0)));
            Ok(Row::new(
                "",
                "",
                Value::Null,
                json!({"Y": f.format(a), "XY": f.format(fz)}),
                json!({"Y": f.format(y), "XY": f.format(f.mul(x, y))}),
            ))
        });
    }

    fn azumaya(&mut self) {
        let alg = self.ctx.alg.clone();
        let f = self.ctx.field.clone();
        let d = self.type_a();
        let pr = (d.p * d.r) as usize;
        let map = match dunkl::solve_dunkl(&d) {
            Ok(m) => m,
            Err(e) => {
                let err = variant_name(&e);
                self.record("azumaya_solve", "Azumaya locus", json!(null), |_| Err(err));
                return;
            }
        };
        let points = self.points().unwrap_or_default();
        for a in points {
            let inputs = json!({"a": f.format(a)});
            self.record("azumaya_witness", "Azumaya locus = smooth locus", inputs.clone(), |me| {
                let m = dunkl::build_point_module(&map, d.p, a).map_err(|e| variant_name(&e))?;
                let chi = m.central_character(&alg, &d).map_err(|e| variant_name(&e))?;
                let q = dunkl::quotient_at(&alg, &d, &chi, me.cfg.dim_cap).map_err(|e| variant_name(&e))?;
                let full = q.is_full_matrix_algebra(&mut me.rng, me.cfg.dim_cap).map_err(|e| variant_name(&e))?;
                Ok(Row::new("", "", Value::Null, json!({"dim": pr * pr, "full": true}), json!({"dim": q.dim(), "full": full})))
            });
            self.record("spherical_block", "H_m ≅ M_s(eH_me)", inputs, |me| {
                let m = dunkl::build_point_module(&map, d.p, a).map_err(|e| variant_name(&e))?;
                let chi = m.central_character(&alg, &d).map_err(|e| variant_name(&e))?;
                let q = dunkl::quotient_at(&alg, &d, &chi, me.cfg.dim_cap).map_err(|e| variant_name(&e))?;
                Ok(Row::new("", "", Value::Null, json!(d.p * d.p), json!(q.spherical_block_dimension())))
            });
        }
        for z in d.singular_z_values() {
            let h = f.add(z, d.beta(0));
            let inputs = json!({"X": "0", "Y": "0", "Z": f.format(z), "h": f.format(h)});
            self.record("singular_not_azumaya", "singular points lie outside the Azumaya locus", inputs, |me| {
                let chi = CentralCharacter::new().with("X", f.zero()).with("Y", f.zero()).with("h", h);
                let q = dunkl::quotient_at(&alg, &d, &chi, me.cfg.dim_cap).map_err(|e| variant_name(&e))?;
                let full = q.is_full_matrix_algebra(&mut me.rng, me.cfg.dim_cap).map_err(|e| variant_name(&e))?;
                Ok(Row::new("", "", Value::Null, json!({"full": false}), json!({"full": full})))
            });
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

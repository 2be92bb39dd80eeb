//! JSON outputs of the single-purpose subcommands. Each works on a rank-one
//! type-A configuration.

use rand::Rng;
use serde_json::{json, Value};

use srax_core::centre::{self, CentralCharacter, PowerCharacter};
use srax_core::dunkl;
use srax_core::field::{Field, FieldElement};
use srax_core::meataxe::DEFAULT_BUDGET;
use srax_core::typea::{build_type_a, verify_centre_relation, TypeAData, DEFAULT_PR_CAP};

use crate::config::{variant_name, Context, Literal};

fn err<E: std::fmt::Debug>(e: E) -> String {
    variant_name(&e)
}

fn elems(f: &Field, v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(|&x| Value::String(f.format(x))).collect())
}

fn type_a(ctx: &Context) -> Result<&TypeAData, String> {
    ctx.type_a.as_ref().ok_or_else(|| "NotTypeA".to_string())
}

pub fn centre(ctx: &Context, degree: usize, cap: usize) -> Result<Value, String> {
    let alg = &ctx.alg;
    let basis = centre::centre_basis(alg, degree, cap).map_err(err)?;
    let dims = centre::centre_filtration_dims(alg, degree, cap).map_err(err)?;
    let expected = centre::graded_invariant_dims(&ctx.field, alg.group(), degree);
    Ok(json!({
        "degree": degree,
        "dims": dims,
        "invariant_dims": expected,
        "basis": basis.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
    }))
}

/// Parses `x6=1,y6=1,h=0`: `x<N>` and `y<N>` give `x^N` and `y^N`, `h` the
/// value of `τ^p - τ`.
pub fn parse_character(f: &Field, text: &str) -> Result<(PowerCharacter, Option<FieldElement>), String> {
    let mut bounds = [0u32; 2];
    let mut values = [f.zero(); 2];
    let mut h = None;
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("ConfigParse: `{part}`"))?;
        let val = f.parse(v).map_err(err)?;
        if k == "h" {
            h = Some(val);
            continue;
        }
        let slot = match k.chars().next() {
            Some('x') => 0,
            Some('y') => 1,
            _ => return Err(format!("ConfigParse: unknown key `{k}`")),
        };
        bounds[slot] = k[1..].parse().map_err(|_| format!("ConfigParse: bad exponent in `{k}`"))?;
        values[slot] = val;
    }
    Ok((PowerCharacter { bounds: bounds.to_vec(), values: values.to_vec() }, h))
}

pub fn quotient<R: Rng>(ctx: &Context, text: &str, analyze: bool, rng: &mut R, cap: usize) -> Result<Value, String> {
    let d = type_a(ctx)?;
    let f = &ctx.field;
    let (chi, h) = parse_character(f, text)?;
    let extra: Vec<_> = h.map(|v| (d.h_element(&ctx.alg), v)).into_iter().collect();
    let q = centre::quotient_at_character(&ctx.alg, &chi, &extra, cap).map_err(err)?;
    let mut out = json!({"character": text, "dim": q.dim()});
    if analyze {
        out["centre_dim"] = json!(q.centre_dimension());
        out["radical_dim"] = json!(q.radical_dimension(rng, cap).map_err(err)?);
        out["full_matrix_algebra"] = json!(q.is_full_matrix_algebra(rng, cap).map_err(err)?);
        out["spherical_dim"] = json!(q.spherical_block_dimension());
    }
    Ok(out)
}

pub fn typea(ctx: &Context, verify_centre: bool, smooth: bool) -> Result<Value, String> {
    let d = type_a(ctx)?;
    let f = &ctx.field;
    let pres = d.centre_presentation();
    let mut out = json!({
        "q": f.order(),
        "r": d.r,
        "c": elems(f, &d.c),
        "f": elems(f, &d.f),
        "delta": elems(f, &d.delta),
        "f_poly": pres.f_poly.format(f, "Z"),
        "identities": d.check_identities(&ctx.alg).all(),
    });
    if smooth {
        out["smooth"] = json!(d.is_smooth());
        out["singular_z"] = elems(f, &d.singular_z_values());
    }
    if verify_centre {
        let rel = verify_centre_relation(&ctx.alg, d, DEFAULT_PR_CAP).map_err(err)?;
        out["centre_relation"] = json!({
            "holds": rel.holds,
            "normalized": rel.normalized(),
            "lambda": rel.lambda.map(|l| f.format(l)),
            "shift": rel.shift.map(|s| f.format(s)),
        });
    }
    Ok(out)
}

/// Parameter grid: `;`-separated lists, one per `c_j`, of `,`-separated
/// literals or `*` for every field element. A shorter grid repeats its last
/// list.
pub fn parse_grid(f: &Field, r: u64, grid: &str) -> Result<Vec<Vec<FieldElement>>, String> {
    let lists: Vec<&str> = grid.split(';').map(str::trim).collect();
    let mut axes: Vec<Vec<FieldElement>> = Vec::new();
    for j in 0..r.saturating_sub(1) as usize {
        let spec = lists.get(j).or(lists.last()).copied().unwrap_or("*");
        let axis = if spec == "*" {
            f.elements().collect()
        } else {
            crate::config::split_literals(spec).iter().map(|l: &Literal| l.value(f)).collect::<Result<Vec<_>, _>>().map_err(err)?
        };
        axes.push(axis);
    }
    let mut out: Vec<Vec<FieldElement>> = vec![Vec::new()];
    for axis in &axes {
        out = out.iter().flat_map(|pre| axis.iter().map(move |&v| [pre.clone(), vec![v]].concat())).collect();
    }
    Ok(out)
}

pub fn sweep(f: &Field, r: u64, grid: &str) -> Result<Vec<Value>, String> {
    parse_grid(f, r, grid)?
        .into_iter()
        .map(|c| {
            let (_, d) = build_type_a(f, r, &c).map_err(err)?;
            Ok(json!({
                "c": elems(f, &c),
                "delta": elems(f, &d.delta),
                "f_poly": d.centre_presentation().f_poly.format(f, "Z"),
                "smooth": d.is_smooth(),
                "singular_z": elems(f, &d.singular_z_values()),
            }))
        })
        .collect()
}

pub fn dunkl<R: Rng>(ctx: &Context, a: FieldElement, analyze: bool, rng: &mut R, cap: usize) -> Result<Value, String> {
    let d = type_a(ctx)?;
    let f = &ctx.field;
    let map = dunkl::solve_dunkl(d).map_err(err)?;
    let m = dunkl::build_point_module(&map, d.p, a).map_err(err)?;
    let mut out = json!({
        "a": f.format(a),
        "dim": m.dim,
        "epsilon": f.format(map.epsilon),
        "tails": elems(f, &map.b),
    });
    if analyze {
        out["irreducible"] = json!(format!("{:?}", m.is_irreducible(rng, DEFAULT_BUDGET)));
        out["isotypic"] = json!(m.isotypic_multiplicities());
        let chi: CentralCharacter = m.central_character(&ctx.alg, d).map_err(err)?;
        out["central_character"] =
            json!(chi.values.iter().map(|(k, &v)| (k.clone(), f.format(v))).collect::<std::collections::BTreeMap<_, _>>());
        let q = dunkl::quotient_at(&ctx.alg, d, &chi, cap).map_err(err)?;
        out["azumaya_witness"] = json!({
            "quotient_dim": q.dim(),
            "full_matrix_algebra": q.is_full_matrix_algebra(rng, cap).map_err(err)?,
            "spherical_dim": q.spherical_block_dimension(),
        });
    }
    Ok(out)
}

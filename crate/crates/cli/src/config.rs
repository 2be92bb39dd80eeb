use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use srax_core::field::{Field, FieldElement, FieldError};
use srax_core::linalg::Matrix;
use srax_core::pbw::Algebra;
use srax_core::structure::{
    cherednik_lift, reflection_classes, symplectic_reflections, Group, Params, StructureError, SymplecticSpace,
    DEFAULT_GROUP_CAP,
};
use srax_core::typea::{build_type_a, TypeAData, TypeAError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("ConfigParse: {0}")]
    Parse(String),
    #[error("{name}: {0}", name = variant_name(.0))]
    Field(#[from] FieldError),
    #[error("{name}: {0}", name = variant_name(.0))]
    Structure(#[from] StructureError),
    #[error("{name}: {0}", name = variant_name(.0))]
    TypeA(#[from] TypeAError),
}

/// `Foo` from the `Debug` rendering `Foo(..)` / `Foo { .. }`.
pub fn variant_name<E: std::fmt::Debug>(e: &E) -> String {
    let s = format!("{e:?}");
    s.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
}

impl ConfigError {
    pub fn name(&self) -> String {
        match self {
            ConfigError::Parse(_) => "ConfigParse".into(),
            ConfigError::Field(e) => variant_name(e),
            ConfigError::Structure(e) => variant_name(e),
            ConfigError::TypeA(TypeAError::Field(e)) => variant_name(e),
            ConfigError::TypeA(e) => variant_name(e),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one_u32")]
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
}

fn one_u32() -> u32 {
    1
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field, FieldError> {
        Field::new(self.p, self.e, self.modulus.as_deref())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    /// `ℤ/r` acting on `𝔥 = k` by a primitive `r`-th root of unity.
    Cyclic { r: u64 },
    /// Matrices on `𝔥 = k^n`, lifted to `V = 𝔥 ⊕ 𝔥*`.
    Matrices { generators: Vec<Vec<Vec<i64>>> },
}

/// A field element: an integer, a coefficient tuple `[a_0, a_1, ..]` in `z`,
/// or text such as `"2z+1"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Coeffs(Vec<i64>),
    Text(String),
}

impl Literal {
    pub fn value(&self, f: &Field) -> Result<FieldElement, FieldError> {
        match self {
            Literal::Int(v) => Ok(f.from_int(*v)),
            Literal::Coeffs(c) => {
                if c.len() > f.degree() as usize {
                    return Err(FieldError::Literal(format!("{c:?}")));
                }
                Ok(f.from_coeffs(c))
            }
            Literal::Text(s) => f.parse(s),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pbw,
    Centre,
    Typea,
    Dunkl,
    Azumaya,
    All,
}

impl Suite {
    pub const ORDER: [Suite; 5] = [Suite::Pbw, Suite::Centre, Suite::Typea, Suite::Dunkl, Suite::Azumaya];

    pub fn parse(s: &str) -> Option<Suite> {
        serde_json::from_value(serde_json::Value::String(s.to_lowercase())).ok()
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pbw => "pbw",
            Suite::Centre => "centre",
            Suite::Typea => "typea",
            Suite::Dunkl => "dunkl",
            Suite::Azumaya => "azumaya",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub group: GroupSpec,
    /// `class_i` → value, classes in order of their smallest element.
    #[serde(default)]
    pub c: BTreeMap<String, Literal>,
    #[serde(default = "default_suite")]
    pub suite: Suite,
    #[serde(default = "default_degree_cap")]
    pub degree_cap: usize,
    #[serde(default = "default_dim_cap")]
    pub dim_cap: usize,
    #[serde(default)]
    pub seed: u64,
    /// Points `a` of the Dunkl modules `k[y]/(y^{pr} - a)`.
    #[serde(default = "default_points")]
    pub points: Vec<Literal>,
    /// Random triples in the associativity check.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Top filtration degree for the centre Hilbert function; defaults to
    /// `2pr` for cyclic groups and `p + 1` otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centre_degree: Option<usize>,
}

fn default_suite() -> Suite {
    Suite::All
}
fn default_degree_cap() -> usize {
    12
}
fn default_dim_cap() -> usize {
    4096
}
fn default_points() -> Vec<Literal> {
    vec![Literal::Int(1)]
}
fn default_samples() -> usize {
    50
}

impl RunConfig {
    pub fn cyclic(p: u64, e: u32, r: u64, c: Vec<Literal>) -> RunConfig {
        RunConfig {
            field: FieldSpec { p, e, modulus: None },
            group: GroupSpec::Cyclic { r },
            c: c.into_iter().enumerate().map(|(i, v)| (format!("class_{i}"), v)).collect(),
            suite: Suite::All,
            degree_cap: default_degree_cap(),
            dim_cap: default_dim_cap(),
            seed: 0,
            points: default_points(),
            samples: default_samples(),
            centre_degree: None,
        }
    }

    pub fn from_json(text: &str) -> Result<RunConfig, ConfigError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.check_caps()?;
        Ok(cfg)
    }

    /// `key=value` tokens (`p`, `e`, `r`, `c`, `seed`, `degree_cap`, `dim_cap`,
    /// `points`, `samples`) and bare suite names.
    pub fn from_tokens(tokens: &[String]) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::cyclic(0, 1, 2, Vec::new());
        let mut c_text: Option<String> = None;
        let mut have_p = false;
        for t in tokens {
            if let Some(s) = Suite::parse(t) {
                cfg.suite = s;
                continue;
            }
            let (k, v) = t.split_once('=').ok_or_else(|| ConfigError::Parse(format!("unexpected token `{t}`")))?;
            let bad = || ConfigError::Parse(format!("bad value for `{k}`: `{v}`"));
            match k {
                "p" => {
                    cfg.field.p = v.parse().map_err(|_| bad())?;
                    have_p = true;
                }
                "e" => cfg.field.e = v.parse().map_err(|_| bad())?,
                "r" => cfg.group = GroupSpec::Cyclic { r: v.parse().map_err(|_| bad())? },
                "c" => c_text = Some(v.to_string()),
                "seed" => cfg.seed = v.parse().map_err(|_| bad())?,
                "degree_cap" => cfg.degree_cap = v.parse().map_err(|_| bad())?,
                "dim_cap" => cfg.dim_cap = v.parse().map_err(|_| bad())?,
                "samples" => cfg.samples = v.parse().map_err(|_| bad())?,
                "centre_degree" => cfg.centre_degree = Some(v.parse().map_err(|_| bad())?),
                "points" => cfg.points = split_literals(v),
                _ => return Err(ConfigError::Parse(format!("unknown key `{k}`"))),
            }
        }
        if !have_p {
            return Err(ConfigError::Parse("missing `p`".into()));
        }
        if let Some(text) = c_text {
            cfg.c = split_literals(&text).into_iter().enumerate().map(|(i, v)| (format!("class_{i}"), v)).collect();
        }
        cfg.check_caps()?;
        Ok(cfg)
    }

    fn check_caps(&self) -> Result<(), ConfigError> {
        if self.degree_cap == 0 || self.dim_cap == 0 {
            return Err(ConfigError::Parse("caps must be positive".into()));
        }
        Ok(())
    }

    pub fn class_values(&self, f: &Field, count: usize) -> Result<Vec<FieldElement>, ConfigError> {
        let mut out = vec![None; count];
        for (k, lit) in &self.c {
            let idx: usize = k
                .strip_prefix("class_")
                .and_then(|s| s.parse().ok())
                .filter(|&i| i < count)
                .ok_or_else(|| ConfigError::Parse(format!("unknown parameter `{k}` ({count} classes)")))?;
            out[idx] = Some(lit.value(f)?);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| ConfigError::Parse(format!("missing parameter `class_{i}`"))))
            .collect()
    }
}

/// Comma-separated literals, each parsed as an integer if possible.
pub fn split_literals(text: &str) -> Vec<Literal> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map(Literal::Int).unwrap_or_else(|_| Literal::Text(s.to_string())))
        .collect()
}

/// A built configuration.
pub struct Context {
    pub field: Field,
    pub alg: Arc<Algebra>,
    pub type_a: Option<TypeAData>,
}

impl Context {
    pub fn build(cfg: &RunConfig) -> Result<Context, ConfigError> {
        let f = cfg.field.build()?;
        match &cfg.group {
            GroupSpec::Cyclic { r } => {
                let c = cfg.class_values(&f, r.saturating_sub(1) as usize)?;
                let (alg, d) = build_type_a(&f, *r, &c)?;
                Ok(Context { field: f, alg, type_a: Some(d) })
            }
            GroupSpec::Matrices { generators } => {
                let n = generators.first().map_or(0, Vec::len);
                if n == 0 {
                    return Err(ConfigError::Parse("no generators".into()));
                }
                let mut lifted = Vec::new();
                for (i, g) in generators.iter().enumerate() {
                    if g.len() != n || g.iter().any(|row| row.len() != n) {
                        return Err(StructureError::DimensionMismatch(i).into());
                    }
                    let m = Matrix::from_fn(n, n, |a, b| f.from_int(g[a][b]));
                    lifted.push(cherednik_lift(&f, &m).ok_or(StructureError::NotInvertible(i))?);
                }
                let space = SymplecticSpace::cherednik(&f, n);
                let group = Group::build(&f, &space, &lifted, DEFAULT_GROUP_CAP)?;
                let refl = symplectic_reflections(&f, &space, &group);
                let classes = reflection_classes(&group, &refl);
                let c = cfg.class_values(&f, classes.len())?;
                let params = Params::from_class_values(&group, &refl, &c)?;
                let alg = Algebra::new(f.clone(), space, group, refl, params);
                Ok(Context { field: f, alg, type_a: None })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens() {
        let toks: Vec<String> = ["typea", "p=3", "e=1", "r=2", "c=1"].iter().map(|s| s.to_string()).collect();
        let cfg = RunConfig::from_tokens(&toks).unwrap();
        assert_eq!(cfg.suite, Suite::Typea);
        assert_eq!(cfg.group, GroupSpec::Cyclic { r: 2 });
        assert_eq!(cfg.c["class_0"], Literal::Int(1));
    }

    #[test]
    fn json_literals() {
        let cfg = RunConfig::from_json(
            r#"{"field": {"p": 3, "e": 2}, "group": {"type": "cyclic", "r": 2}, "c": {"class_0": [0, 1]}}"#,
        )
        .unwrap();
        let ctx = Context::build(&cfg).unwrap();
        assert_eq!(ctx.type_a.unwrap().c, vec![ctx.field.z()]);
    }

    #[test]
    fn even_characteristic() {
        let toks: Vec<String> = ["p=2", "r=2", "c=1"].iter().map(|s| s.to_string()).collect();
        let err = Context::build(&RunConfig::from_tokens(&toks).unwrap()).err().unwrap();
        assert_eq!(err.name(), "EvenCharacteristic");
    }
}

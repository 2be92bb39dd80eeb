//! Central elements: exact centrality tests, the degree-truncated centre,
//! the Frobenius-twisted invariants `Z_0`, the Satake map, and quotients of
//! `H` at central characters.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::finite::{FiniteAlgebra, FiniteError};
use crate::linalg::{self, EchelonBasis, Matrix};
use crate::pbw::{Algebra, AlgebraElement, AlgebraExt, Exps, Mono};
use crate::structure::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentreError {
    #[error("group does not preserve the splitting V = h + h*")]
    NotCherednikShape,
    #[error("degree {d} exceeds the cap {cap}")]
    DegreeCapExceeded { d: usize, cap: usize },
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("imposed central values are inconsistent (the quotient is zero)")]
    InconsistentCharacter,
    #[error("expected a positive exponent bound for each of the {0} letters")]
    MissingBound(usize),
    #[error(transparent)]
    Finite(#[from] FiniteError),
}

/// Commutes with every letter and every group generator.
pub fn is_central(z: &AlgebraElement) -> bool {
    let alg = z.algebra();
    let letters = (0..alg.num_letters()).map(|i| alg.letter(i));
    let groups = alg.group().generators().iter().map(|&g| alg.group_element(g));
    letters.chain(groups).all(|t| z.commutator(&t).unwrap().is_zero())
}

/// `(1/|Γ|) Σ_γ γ a γ⁻¹`.
pub fn reynolds(a: &AlgebraElement) -> AlgebraElement {
    let alg = a.algebra();
    let f = alg.field();
    let w = f.inv(f.from_int(alg.group().order() as i64)).unwrap();
    (0..alg.group().order()).fold(alg.zero(), |acc, g| acc + a.conjugate(g)).scale(w)
}

/// Nonzero, linearly independent Reynolds averages of `x^{pA}` and `y^{pB}`
/// of degree at most `degree_bound`.
pub fn z0_generators(alg: &Arc<Algebra>, degree_bound: usize) -> Result<Vec<AlgebraElement>, CentreError> {
    let n = alg.n();
    if !alg.group().is_cherednik_shaped(n) {
        return Err(CentreError::NotCherednikShape);
    }
    let p = alg.field().p() as usize;
    let mut out = Vec::new();
    for block in [0..n, n..2 * n] {
        let mut seen: Vec<AlgebraElement> = Vec::new();
        for s in 1..=degree_bound / p {
            for exps in exponent_vectors(n, s) {
                let mut full = vec![0u32; 2 * n];
                for (k, i) in block.clone().enumerate() {
                    full[i] = exps[k] * p as u32;
                }
                let avg = reynolds(&alg.monomial(&full, 0));
                if avg.is_zero() || in_span(alg.field(), &seen, &avg) {
                    continue;
                }
                seen.push(avg.clone());
                out.push(avg);
            }
        }
    }
    Ok(out)
}

fn in_span(f: &Field, span: &[AlgebraElement], a: &AlgebraElement) -> bool {
    let mut monos: Vec<Mono> = span.iter().chain([a]).flat_map(|e| e.term_map().keys().cloned()).collect();
    monos.sort();
    monos.dedup();
    let m = Matrix::from_fn(monos.len(), span.len(), |i, k| span[k].coeff(&monos[i]));
    let rhs: Vec<FieldElement> = monos.iter().map(|mo| a.coeff(mo)).collect();
    !span.is_empty() && linalg::solve(f, &m, &rhs).is_some()
}

/// All exponent vectors of length `k` and total degree `s`.
fn exponent_vectors(k: usize, s: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=s).rev() {
        for mut rest in exponent_vectors(k - 1, s - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// The commutator map `z ↦ ([z, t])_t` on monomials of filtration `≤ d`,
/// one sparse column per monomial, monomials in order of degree.
struct CommutatorSystem {
    monos: Vec<Mono>,
    cols: Vec<linalg::SparseVec>,
}

fn commutator_system(alg: &Arc<Algebra>, d: usize) -> CommutatorSystem {
    let mut monos = alg.monomials_up_to(d);
    monos.sort_by_key(|m| m.degree());
    let tests: Vec<AlgebraElement> = (0..alg.num_letters())
        .map(|i| alg.letter(i))
        .chain(alg.group().generators().iter().map(|&g| alg.group_element(g)))
        .collect();
    let mut row_of: HashMap<(usize, Mono), usize> = HashMap::new();
    let mut cols = Vec::with_capacity(monos.len());
    for m in &monos {
        let z = alg.monomial(&m.exps, m.g);
        let mut col = linalg::SparseVec::new();
        for (ti, t) in tests.iter().enumerate() {
            for (mo, &c) in z.commutator(t).unwrap().terms() {
                let next = row_of.len();
                let row = *row_of.entry((ti, mo.clone())).or_insert(next);
                col.insert(row, c);
            }
        }
        cols.push(col);
    }
    // pivot on top-degree terms first
    let mut keys: Vec<&(usize, Mono)> = row_of.keys().collect();
    keys.sort_by(|a, b| b.1.degree().cmp(&a.1.degree()).then_with(|| a.cmp(b)));
    let mut renumber = vec![0; keys.len()];
    for (k, key) in keys.iter().enumerate() {
        renumber[row_of[*key]] = k;
    }
    let cols = cols.into_iter().map(|c| c.into_iter().map(|(r, v)| (renumber[r], v)).collect()).collect();
    CommutatorSystem { monos, cols }
}

/// Echelonized basis of `F_d Z`, pivots at the smallest monomials.
pub fn centre_basis(alg: &Arc<Algebra>, d: usize, cap: usize) -> Result<Vec<AlgebraElement>, CentreError> {
    if d > cap {
        return Err(CentreError::DegreeCapExceeded { d, cap });
    }
    let f = alg.field();
    let sys = commutator_system(alg, d);
    let (_, kernel) = linalg::sparse_column_kernel(f, &sys.cols);
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..sys.monos.len()).collect();
    order.sort_by(|&a, &b| sys.monos[a].cmp(&sys.monos[b]));
    let mut pos = vec![0; order.len()];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    let rows: Vec<Vec<FieldElement>> = kernel
        .iter()
        .map(|v| {
            let mut row = vec![f.zero(); order.len()];
            for (&i, &c) in v {
                row[pos[i]] = c;
            }
            row
        })
        .collect();
    let mut m = Matrix::from_rows(rows);
    let pivots = linalg::rref(f, &mut m);
    Ok((0..pivots.len())
        .map(|r| alg.from_terms(order.iter().enumerate().map(|(c, &i)| (sys.monos[i].clone(), m.get(r, c)))))
        .collect())
}

/// `dim F_d Z` for `d = 0..=dmax`.
pub fn centre_filtration_dims(alg: &Arc<Algebra>, dmax: usize, cap: usize) -> Result<Vec<usize>, CentreError> {
    if dmax > cap {
        return Err(CentreError::DegreeCapExceeded { d: dmax, cap });
    }
    let f = alg.field();
    let sys = commutator_system(alg, dmax);
    let independent = linalg::sparse_column_independence(f, &sys.cols);
    Ok((0..=dmax)
        .map(|d| {
            sys.monos.iter().zip(&independent).filter(|(m, &ind)| m.degree() <= d && !ind).count()
        })
        .collect())
}

/// `dim` of the part of `(S(V)^p)^Γ` of degree `≤ d` for `d = 0..=dmax`,
/// computed in the commutative algebra `S(V)` by Reynolds ranks: `Γ` acts on
/// `u_a^p` through the Frobenius-twisted matrices.
pub fn graded_invariant_dims(field: &Field, group: &Group, dmax: usize) -> Vec<usize> {
    let f = field;
    let p = f.p() as usize;
    let dim = group.element(0).rows();
    let twisted: Vec<Matrix> = group
        .elements()
        .iter()
        .map(|m| Matrix::from_fn(dim, dim, |i, j| f.frobenius(m.get(i, j))))
        .collect();
    let mut per_degree = vec![0usize; dmax + 1];
    per_degree[0] = 1;
    for s in 1..=dmax / p {
        let monos = exponent_vectors(dim, s);
        let index: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut reyn = Matrix::zeros(monos.len(), monos.len());
        for g in &twisted {
            for (col, m) in monos.iter().enumerate() {
                for (img, c) in act_on_monomial(f, g, m) {
                    let row = index[&img];
                    reyn.set(row, col, f.add(reyn.get(row, col), c));
                }
            }
        }
        per_degree[s * p] = linalg::rank(f, &reyn);
    }
    let mut acc = 0;
    per_degree
        .into_iter()
        .map(|k| {
            acc += k;
            acc
        })
        .collect()
}

/// `g · Π u_a^{m_a}` in commuting variables, `u_a ↦ Σ_i g_{ia} u_i`.
fn act_on_monomial(f: &Field, g: &Matrix, m: &[u32]) -> Vec<(Vec<u32>, FieldElement)> {
    let dim = m.len();
    let mut cur: BTreeMap<Vec<u32>, FieldElement> = BTreeMap::from([(vec![0u32; dim], f.one())]);
    for (a, &e) in m.iter().enumerate() {
        for _ in 0..e {
            let mut next: BTreeMap<Vec<u32>, FieldElement> = BTreeMap::new();
            for (mono, &c) in &cur {
                for i in 0..dim {
                    let gi = g.get(i, a);
                    if gi.is_zero() {
                        continue;
                    }
                    let mut nm = mono.clone();
                    nm[i] += 1;
                    let v = next.entry(nm).or_insert(f.zero());
                    *v = f.add(*v, f.mul(c, gi));
                }
            }
            cur = next;
        }
    }
    cur.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `z ↦ e z e`.
pub fn satake(z: &AlgebraElement) -> Result<AlgebraElement, CentreError> {
    if !is_central(z) {
        return Err(CentreError::NotCentral(z.to_string()));
    }
    Ok(z.project_spherical())
}

/// Scalars by which named central elements act.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CentralCharacter {
    pub values: BTreeMap<String, FieldElement>,
}

impl CentralCharacter {
    pub fn new() -> CentralCharacter {
        CentralCharacter::default()
    }

    pub fn with(mut self, name: &str, v: FieldElement) -> CentralCharacter {
        self.values.insert(name.to_string(), v);
        self
    }

    pub fn get(&self, name: &str) -> Option<FieldElement> {
        self.values.get(name).copied()
    }
}

/// `u_a^{bounds[a]} ↦ values[a]` for every letter `u_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCharacter {
    pub bounds: Vec<u32>,
    pub values: Vec<FieldElement>,
}

/// `H/𝔪H` for a character on central letter powers, optionally also on
/// further central elements.
#[derive(Debug)]
pub struct FiniteQuotient {
    alg: Arc<Algebra>,
    chi: PowerCharacter,
    /// Surviving PBW monomials, one per basis vector.
    basis: Vec<Mono>,
    /// Coordinates in the truncated space before any extra elements are imposed.
    full_index: HashMap<Mono, usize>,
    full_dim: usize,
    ideal: EchelonBasis,
    survivors: Vec<usize>,
    algebra: FiniteAlgebra,
}

impl FiniteQuotient {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn basis(&self) -> &[Mono] {
        &self.basis
    }

    pub fn finite_algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn character(&self) -> &PowerCharacter {
        &self.chi
    }

    /// Image of an element of `H`.
    pub fn image(&self, a: &AlgebraElement) -> Vec<FieldElement> {
        let f = self.alg.field();
        let mut v = vec![f.zero(); self.full_dim];
        for (m, &c) in a.terms() {
            let (k, rm) = reduce_powers(f, &self.chi, m);
            let i = self.full_index[&rm];
            v[i] = f.add(v[i], f.mul(c, k));
        }
        self.ideal.reduce(f, &mut v);
        self.survivors.iter().map(|&i| v[i]).collect()
    }

    pub fn radical_dimension<R: Rng + ?Sized>(&self, rng: &mut R, cap: usize) -> Result<usize, CentreError> {
        Ok(self.algebra.radical_dimension(rng, cap)?)
    }

    pub fn centre_dimension(&self) -> usize {
        self.algebra.centre_dimension()
    }

    pub fn is_full_matrix_algebra<R: Rng + ?Sized>(&self, rng: &mut R, cap: usize) -> Result<bool, CentreError> {
        Ok(self.algebra.is_full_matrix_algebra(rng, cap)?)
    }

    /// `dim e Q e`.
    pub fn spherical_block_dimension(&self) -> usize {
        self.algebra.corner_dimension(&self.image(&self.alg.symmetrizer()))
    }

    /// The group algebra `kΓ`, regarded as the quotient on the group letters.
    pub fn group_algebra(alg: &Arc<Algebra>) -> FiniteQuotient {
        let f = alg.field();
        let order = alg.group().order();
        let zero: Exps = smallvec::SmallVec::from_elem(0, alg.num_letters());
        let basis: Vec<Mono> = (0..order).map(|g| Mono { exps: zero.clone(), g }).collect();
        let gens: Vec<Matrix> = (0..order)
            .map(|g| Matrix::from_fn(order, order, |i, j| if alg.group().mul(g, j) == i { f.one() } else { f.zero() }))
            .collect();
        let mut one = vec![f.zero(); order];
        one[0] = f.one();
        let algebra = FiniteAlgebra::new(
            f.clone(),
            (0..order).map(|g| format!("g{g}")).collect(),
            gens,
            (0..order).map(|g| vec![g]).collect(),
            (0..order).map(|g| format!("g{g}")).collect(),
            one,
        );
        FiniteQuotient {
            alg: alg.clone(),
            chi: PowerCharacter { bounds: vec![1; alg.num_letters()], values: vec![f.zero(); alg.num_letters()] },
            full_index: basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect(),
            basis,
            full_dim: order,
            ideal: EchelonBasis::new(order),
            survivors: (0..order).collect(),
            algebra,
        }
    }
}

fn reduce_powers(f: &Field, chi: &PowerCharacter, m: &Mono) -> (FieldElement, Mono) {
    let mut coef = f.one();
    let mut exps = m.exps.clone();
    for (a, e) in exps.iter_mut().enumerate() {
        let b = chi.bounds[a];
        if *e >= b {
            coef = f.mul(coef, f.pow(chi.values[a], (*e / b) as u64));
            *e %= b;
        }
    }
    (coef, Mono { exps, g: m.g })
}

pub fn quotient_at_character(
    alg: &Arc<Algebra>,
    chi: &PowerCharacter,
    extra: &[(AlgebraElement, FieldElement)],
    cap: usize,
) -> Result<FiniteQuotient, CentreError> {
    let f = alg.field();
    let d = alg.num_letters();
    if chi.bounds.len() != d || chi.values.len() != d || chi.bounds.contains(&0) {
        return Err(CentreError::MissingBound(d));
    }
    for a in 0..d {
        let mut e = vec![0u32; d];
        e[a] = chi.bounds[a];
        let z = alg.monomial(&e, 0);
        if !is_central(&z) {
            return Err(CentreError::NotCentral(z.to_string()));
        }
    }
    for (z, _) in extra {
        if !is_central(z) {
            return Err(CentreError::NotCentral(z.to_string()));
        }
    }
    let order = alg.group().order();
    let full_dim = chi.bounds.iter().map(|&b| b as usize).product::<usize>() * order;
    if full_dim > cap {
        return Err(FiniteError::DimensionCapExceeded { dim: full_dim, cap }.into());
    }
    let basis: Vec<Mono> = alg
        .monomials_up_to(chi.bounds.iter().map(|&b| b as usize - 1).sum())
        .into_iter()
        .filter(|m| m.exps.iter().zip(&chi.bounds).all(|(e, b)| e < b))
        .collect();
    debug_assert_eq!(basis.len(), full_dim);
    let index: HashMap<Mono, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let to_vec = |a: &AlgebraElement| {
        let mut v = vec![f.zero(); full_dim];
        for (m, &c) in a.terms() {
            let (k, rm) = reduce_powers(f, chi, m);
            let i = index[&rm];
            v[i] = f.add(v[i], f.mul(c, k));
        }
        v
    };
    let gen_elems: Vec<AlgebraElement> = (0..d)
        .map(|a| alg.letter(a))
        .chain((0..order).map(|g| alg.group_element(g)))
        .collect();
    let gens: Vec<Matrix> = gen_elems
        .iter()
        .map(|t| {
            let cols: Vec<Vec<FieldElement>> =
                basis.iter().map(|b| to_vec(&(t * &alg.monomial(&b.exps, b.g)))).collect();
            Matrix::from_columns(&cols, full_dim)
        })
        .collect();
    let words: Vec<Vec<usize>> = basis
        .iter()
        .map(|b| {
            let mut w = Vec::new();
            for (a, &e) in b.exps.iter().enumerate() {
                w.extend(std::iter::repeat(a).take(e as usize));
            }
            w.push(d + b.g);
            w
        })
        .collect();
    let gen_names: Vec<String> = (0..d).map(|a| alg.letter_name(a)).chain((0..order).map(|g| format!("g{g}"))).collect();
    let label = |m: &Mono| alg.monomial(&m.exps, m.g).to_string();
    let one = to_vec(&alg.one());
    let full = FiniteAlgebra::new(
        f.clone(),
        gen_names.clone(),
        gens.clone(),
        words.clone(),
        basis.iter().map(label).collect(),
        one.clone(),
    );

    let id_idx = index[&Mono::new(&vec![0; d], 0)];
    let mut ideal = EchelonBasis::new(full_dim);
    for (z, lambda) in extra {
        let mut v = to_vec(z);
        v[id_idx] = f.sub(v[id_idx], *lambda);
        let l = full.left_of(&v);
        for j in 0..full_dim {
            ideal.insert(f, &l.column(j));
        }
    }
    if ideal.is_empty() {
        return Ok(FiniteQuotient {
            alg: alg.clone(),
            chi: chi.clone(),
            basis,
            full_index: index,
            full_dim,
            ideal,
            survivors: (0..full_dim).collect(),
            algebra: full,
        });
    }
    if ideal.is_full() {
        return Err(CentreError::InconsistentCharacter);
    }
    let mut is_pivot = vec![false; full_dim];
    for &p in ideal.pivots() {
        is_pivot[p] = true;
    }
    let survivors: Vec<usize> = (0..full_dim).filter(|&i| !is_pivot[i]).collect();
    let k = survivors.len();
    let restrict = |v: &[FieldElement]| -> Vec<FieldElement> {
        let mut w = v.to_vec();
        ideal.reduce(f, &mut w);
        survivors.iter().map(|&i| w[i]).collect()
    };
    let qgens: Vec<Matrix> = gens
        .iter()
        .map(|g| {
            let cols: Vec<Vec<FieldElement>> = survivors.iter().map(|&c| restrict(&g.column(c))).collect();
            Matrix::from_columns(&cols, k)
        })
        .collect();
    let qbasis: Vec<Mono> = survivors.iter().map(|&i| basis[i].clone()).collect();
    let algebra = FiniteAlgebra::new(
        f.clone(),
        gen_names,
        qgens,
        survivors.iter().map(|&i| words[i].clone()).collect(),
        qbasis.iter().map(label).collect(),
        restrict(&one),
    );
    Ok(FiniteQuotient {
        alg: alg.clone(),
        chi: chi.clone(),
        basis: qbasis,
        full_index: index,
        full_dim,
        ideal,
        survivors,
        algebra,
    })
}

//! The symplectic space `(V, ω)`, a finite group `Γ ⊂ Sp(V)` stored by its
//! element list, its symplectic reflections with their forms `ω_s`, and the
//! class function `c` on reflections.
//!
//! Coordinates: `V` has basis `x_1..x_n, y_1..y_n` (indices `0..2n`), group
//! elements are `2n × 2n` matrices acting on column vectors, so `g.u_a` is
//! column `a` of the matrix of `g`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::linalg::{self, Matrix};

pub const DEFAULT_GROUP_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("gram matrix must be square, skew-symmetric and invertible")]
    BadGram,
    #[error("generator {0} has the wrong shape")]
    DimensionMismatch(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generator {0} does not preserve the symplectic form")]
    NotSymplectic(usize),
    #[error("characteristic {p} divides the group order {order}")]
    CharDividesOrder { p: u64, order: usize },
    #[error("group exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("parameter is not constant on reflection class {0}")]
    NotClassFunction(usize),
    #[error("no parameter given for reflection (group element {0})")]
    MissingParameter(usize),
    #[error("group element {0} is not a symplectic reflection")]
    NotAReflection(usize),
}

#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    n: usize,
    gram: Matrix,
}

impl SymplecticSpace {
    pub fn new(f: &Field, gram: Matrix) -> Result<SymplecticSpace, StructureError> {
        let d = gram.rows();
        if !gram.is_square() || d % 2 != 0 || d == 0 {
            return Err(StructureError::BadGram);
        }
        let skew = (0..d).all(|i| (0..d).all(|j| gram.get(i, j) == f.neg(gram.get(j, i))));
        if !skew || linalg::rank(f, &gram) != d {
            return Err(StructureError::BadGram);
        }
        Ok(SymplecticSpace { n: d / 2, gram })
    }

    /// `V = 𝔥 ⊕ 𝔥*` with `ω(x_i, y_j) = -δ_ij`, the orientation under which
    /// the rank-one relation reads `[y, x] = 1 - Σ c_j γ^j`.
    pub fn cherednik(f: &Field, n: usize) -> SymplecticSpace {
        let mut gram = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            gram.set(i, n + i, f.from_int(-1));
            gram.set(n + i, i, f.one());
        }
        SymplecticSpace { n, gram }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn omega(&self, f: &Field, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        bilinear(f, &self.gram, u, v)
    }

    /// `ω(u_a, u_b)` on basis vectors.
    pub fn omega_basis(&self, a: usize, b: usize) -> FieldElement {
        self.gram.get(a, b)
    }

    pub fn preserves(&self, f: &Field, g: &Matrix) -> bool {
        g.transpose().mul(f, &self.gram).mul(f, g) == self.gram
    }
}

fn bilinear(f: &Field, m: &Matrix, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    let mv = m.mul_vec(f, v);
    u.iter().zip(&mv).fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// `g ⊕ (g⁻¹)ᵀ` on `𝔥 ⊕ 𝔥*` for an invertible `g` acting on `𝔥`.
pub fn cherednik_lift(f: &Field, g: &Matrix) -> Option<Matrix> {
    let inv = linalg::inverse(f, g)?;
    Some(g.direct_sum(&inv.transpose()))
}

#[derive(Clone, Debug)]
pub struct Group {
    elements: Vec<Matrix>,
    mul_table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    conj_classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    generators: Vec<usize>,
}

impl Group {
    /// Closes `generators` under multiplication. Element `0` is the identity;
    /// elements appear in breadth-first order, so for a single generator `g`
    /// element `i` is `g^i`.
    pub fn build(
        f: &Field,
        space: &SymplecticSpace,
        generators: &[Matrix],
        cap: usize,
    ) -> Result<Group, StructureError> {
        let d = space.dim();
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != d || g.cols() != d {
                return Err(StructureError::DimensionMismatch(i));
            }
            if linalg::rank(f, g) != d {
                return Err(StructureError::NotInvertible(i));
            }
            if !space.preserves(f, g) {
                return Err(StructureError::NotSymplectic(i));
            }
        }
        let id = Matrix::identity(d);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Matrix, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for g in generators {
                let prod = g.mul(f, &elements[h]);
                if !index.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(StructureError::GroupTooLarge { cap });
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let order = elements.len();
        if order as u64 % f.p() == 0 {
            return Err(StructureError::CharDividesOrder { p: f.p(), order });
        }
        let mul_table: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.mul(f, b)]).collect())
            .collect();
        let inverse: Vec<usize> = (0..order)
            .map(|i| (0..order).find(|&j| mul_table[i][j] == 0).unwrap())
            .collect();
        let mut class_of = vec![usize::MAX; order];
        let mut conj_classes = Vec::new();
        for i in 0..order {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..order)
                .map(|g| mul_table[mul_table[g][i]][inverse[g]])
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = conj_classes.len();
            }
            conj_classes.push(class);
        }
        let mut gens: Vec<usize> = generators.iter().map(|g| index[g]).filter(|&i| i != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        Ok(Group { elements, mul_table, inverse, conj_classes, class_of, generators: gens })
    }

    pub fn trivial(dim: usize) -> Group {
        Group {
            elements: vec![Matrix::identity(dim)],
            mul_table: vec![vec![0]],
            inverse: vec![0],
            conj_classes: vec![vec![0]],
            class_of: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn conj_classes(&self) -> &[Vec<usize>] {
        &self.conj_classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Size of the subgroup generated by the given elements.
    pub fn generated_subgroup_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(h) = stack.pop() {
            for &g in gens {
                let x = self.mul(g, h);
                if !seen[x] {
                    seen[x] = true;
                    count += 1;
                    stack.push(x);
                }
            }
        }
        count
    }

    /// Preserves `𝔥 = span(x_i)` and `𝔥* = span(y_i)`: every element is block diagonal.
    pub fn is_cherednik_shaped(&self, n: usize) -> bool {
        self.elements.iter().all(|m| {
            (0..2 * n).all(|i| {
                (0..2 * n).all(|j| (i < n) == (j < n) || m.get(i, j).is_zero())
            })
        })
    }
}

#[derive(Clone, Debug)]
pub struct ReflectionData {
    /// Group element index.
    pub s: usize,
    /// Projection onto `im(Id - s)` along `ker(Id - s)`.
    pub image_proj: Matrix,
    /// `projᵀ · gram · proj`.
    pub omega_s: Matrix,
}

impl ReflectionData {
    pub fn omega_s_value(&self, f: &Field, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        bilinear(f, &self.omega_s, u, v)
    }
}

/// Every `s ∈ Γ` with `rank(Id - s) = 2`, in element order.
pub fn symplectic_reflections(f: &Field, space: &SymplecticSpace, group: &Group) -> Vec<ReflectionData> {
    let d = space.dim();
    let id = Matrix::identity(d);
    let mut out = Vec::new();
    for s in 1..group.order() {
        let m = group.element(s);
        if linalg::rank(f, &id.sub(f, m)) != 2 {
            continue;
        }
        // averaging over <s> projects onto ker(Id - s) along im(Id - s)
        let ord = group.element_order(s);
        let mut fixed = Matrix::zeros(d, d);
        let mut pw = Matrix::identity(d);
        for _ in 0..ord {
            fixed = fixed.add(f, &pw);
            pw = pw.mul(f, m);
        }
        let fixed = fixed.scale(f, f.inv(f.from_int(ord as i64)).unwrap());
        let proj = id.sub(f, &fixed);
        let omega_s = proj.transpose().mul(f, space.gram()).mul(f, &proj);
        out.push(ReflectionData { s, image_proj: proj, omega_s });
    }
    out
}

/// Conjugacy classes of reflections, ordered by smallest element index.
pub fn reflection_classes(group: &Group, reflections: &[ReflectionData]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for r in reflections {
        let k = group.class_of(r.s);
        if seen.insert(k) {
            classes.push(group.conj_classes()[k].clone());
        }
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// `t = 1` and a `Γ`-invariant `c`, stored per reflection class.
#[derive(Clone, Debug)]
pub struct Params {
    pub t: FieldElement,
    classes: Vec<Vec<usize>>,
    values: Vec<FieldElement>,
    class_index: BTreeMap<usize, usize>,
}

impl Params {
    /// Validates `c_raw` (group element → value) on every reflection.
    pub fn validate(
        group: &Group,
        reflections: &[ReflectionData],
        c_raw: &BTreeMap<usize, FieldElement>,
    ) -> Result<Params, StructureError> {
        let classes = reflection_classes(group, reflections);
        let is_reflection: std::collections::BTreeSet<usize> = reflections.iter().map(|r| r.s).collect();
        if let Some(&bad) = c_raw.keys().find(|k| !is_reflection.contains(k)) {
            return Err(StructureError::NotAReflection(bad));
        }
        let mut values = Vec::with_capacity(classes.len());
        for (ci, class) in classes.iter().enumerate() {
            let mut val = None;
            for &s in class {
                let v = *c_raw.get(&s).ok_or(StructureError::MissingParameter(s))?;
                match val {
                    None => val = Some(v),
                    Some(w) if w != v => return Err(StructureError::NotClassFunction(ci)),
                    _ => {}
                }
            }
            values.push(val.unwrap());
        }
        Ok(Params::assemble(classes, values))
    }

    /// One value per reflection class (in [`reflection_classes`] order).
    pub fn from_class_values(
        group: &Group,
        reflections: &[ReflectionData],
        values: &[FieldElement],
    ) -> Result<Params, StructureError> {
        let classes = reflection_classes(group, reflections);
        if values.len() != classes.len() {
            let missing = classes.get(values.len()).map_or(0, |c| c[0]);
            return Err(StructureError::MissingParameter(missing));
        }
        Ok(Params::assemble(classes, values.to_vec()))
    }

    fn assemble(classes: Vec<Vec<usize>>, values: Vec<FieldElement>) -> Params {
        let mut class_index = BTreeMap::new();
        for (ci, class) in classes.iter().enumerate() {
            for &s in class {
                class_index.insert(s, ci);
            }
        }
        Params { t: FieldElement::ONE, classes, values, class_index }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_values(&self) -> &[FieldElement] {
        &self.values
    }

    /// `c_s` for a reflection `s`.
    pub fn c(&self, s: usize) -> FieldElement {
        self.values[self.class_index[&s]]
    }
}

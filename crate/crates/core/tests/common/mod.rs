#![allow(dead_code)]

use std::sync::Arc;

use srax_core::field::{Field, FieldElement};
use srax_core::linalg::Matrix;
use srax_core::pbw::Algebra;
use srax_core::structure::{
    cherednik_lift, symplectic_reflections, Group, Params, SymplecticSpace, DEFAULT_GROUP_CAP,
};

/// Cherednik algebra for the group generated by `gens` acting on `𝔥 = k^n`,
/// with one parameter per reflection class.
pub fn cherednik(f: &Field, n: usize, gens: &[Matrix], c: &[FieldElement]) -> Arc<Algebra> {
    let space = SymplecticSpace::cherednik(f, n);
    let lifted: Vec<Matrix> = gens.iter().map(|g| cherednik_lift(f, g).unwrap()).collect();
    let group = Group::build(f, &space, &lifted, DEFAULT_GROUP_CAP).unwrap();
    let refl = symplectic_reflections(f, &space, &group);
    let params = Params::from_class_values(&group, &refl, c).unwrap();
    Algebra::new(f.clone(), space, group, refl, params)
}

pub fn cyclic(f: &Field, r: u64, c: &[FieldElement]) -> Arc<Algebra> {
    let eta = f.primitive_root_of_unity(r).unwrap();
    cherednik(f, 1, &[Matrix::diag(&[eta])], c)
}

pub fn perm_matrix(f: &Field, p: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(p.len(), p.len());
    for (i, &j) in p.iter().enumerate() {
        m.set(j, i, f.one());
    }
    m
}

/// `S_n` permuting coordinates of `k^n`.
pub fn symmetric(f: &Field, n: usize, c: FieldElement) -> Arc<Algebra> {
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i, i + 1);
        gens.push(perm_matrix(f, &p));
    }
    cherednik(f, n, &gens, &[c])
}

pub fn weyl(f: &Field, n: usize) -> Arc<Algebra> {
    Algebra::weyl(f, n)
}

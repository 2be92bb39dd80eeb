//! Finite-dimensional algebras given by left-multiplication matrices of a
//! generating set, with each basis element recorded as a word in the
//! generators.

use std::collections::HashMap;
use std::sync::OnceLock;

use rand::Rng;
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::linalg::{self, EchelonBasis, Matrix};
use crate::meataxe::{self, MatrixModule};

pub const DEFAULT_DIM_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiniteError {
    #[error("algebra dimension {dim} exceeds the cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("composition series search was inconclusive")]
    Inconclusive,
}

#[derive(Debug)]
pub struct FiniteAlgebra {
    field: Field,
    gen_names: Vec<String>,
    /// Left multiplication by each generator in the basis.
    gens: Vec<Matrix>,
    /// `basis[j] = gens[w_0] · gens[w_1] ⋯ 1`.
    words: Vec<Vec<usize>>,
    labels: Vec<String>,
    one: Vec<FieldElement>,
    left: OnceLock<Vec<Matrix>>,
}

impl FiniteAlgebra {
    pub fn new(
        field: Field,
        gen_names: Vec<String>,
        gens: Vec<Matrix>,
        words: Vec<Vec<usize>>,
        labels: Vec<String>,
        one: Vec<FieldElement>,
    ) -> FiniteAlgebra {
        FiniteAlgebra { field, gen_names, gens, words, labels, one, left: OnceLock::new() }
    }

    /// The unital matrix algebra generated by `mats`, acting on itself.
    pub fn generated_by(field: &Field, mats: &[Matrix]) -> FiniteAlgebra {
        let f = field;
        let n = mats[0].rows();
        let flat = |m: &Matrix| m.data().to_vec();
        let mut span = EchelonBasis::new(n * n);
        let mut elems: Vec<Matrix> = Vec::new();
        let mut words: Vec<Vec<usize>> = Vec::new();
        let id = Matrix::identity(n);
        span.insert(f, &flat(&id));
        elems.push(id);
        words.push(Vec::new());
        let mut k = 0;
        while k < elems.len() {
            for (gi, g) in mats.iter().enumerate() {
                let prod = g.mul(f, &elems[k]);
                if span.insert(f, &flat(&prod)).is_some() {
                    let mut w = vec![gi];
                    w.extend(&words[k]);
                    elems.push(prod);
                    words.push(w);
                }
            }
            k += 1;
        }
        let dim = elems.len();
        let coords = Matrix::from_columns(&elems.iter().map(flat).collect::<Vec<_>>(), n * n);
        let gens = mats
            .iter()
            .map(|g| {
                let cols: Vec<Vec<FieldElement>> = elems
                    .iter()
                    .map(|b| linalg::solve(f, &coords, &flat(&g.mul(f, b))).unwrap())
                    .collect();
                Matrix::from_columns(&cols, dim)
            })
            .collect();
        let mut one = vec![f.zero(); dim];
        one[0] = f.one();
        let names = (0..mats.len()).map(|i| format!("m{i}")).collect();
        let labels = words.iter().map(|w| format!("{w:?}")).collect();
        FiniteAlgebra::new(f.clone(), names, gens, words, labels, one)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.one.len()
    }

    pub fn one(&self) -> &[FieldElement] {
        &self.one
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// Left multiplication by every basis element.
    pub fn left_matrices(&self) -> &[Matrix] {
        self.left.get_or_init(|| {
            let f = &self.field;
            let mut memo: HashMap<Vec<usize>, Matrix> = HashMap::new();
            memo.insert(Vec::new(), Matrix::identity(self.dim()));
            self.words.iter().map(|w| word_matrix(f, &self.gens, &mut memo, w)).collect()
        })
    }

    pub fn left_of(&self, a: &[FieldElement]) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (c, l) in a.iter().zip(self.left_matrices()) {
            if !c.is_zero() {
                out.add_scaled(f, *c, l);
            }
        }
        out
    }

    pub fn right_of(&self, a: &[FieldElement]) -> Matrix {
        let cols: Vec<Vec<FieldElement>> = self.left_matrices().iter().map(|l| l.mul_vec(&self.field, a)).collect();
        Matrix::from_columns(&cols, self.dim())
    }

    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        self.left_of(a).mul_vec(&self.field, b)
    }

    pub fn generator_vector(&self, k: usize) -> Vec<FieldElement> {
        self.gens[k].mul_vec(&self.field, &self.one)
    }

    /// Basis of the centre: elements commuting with every generator.
    pub fn centre_basis(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let n = self.dim();
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for k in 0..self.gens.len() {
            let r = self.right_of(&self.generator_vector(k));
            let diff = self.gens[k].sub(f, &r);
            for i in 0..n {
                rows.push(diff.row(i).to_vec());
            }
        }
        if rows.is_empty() {
            return (0..n).map(|i| unit(f, n, i)).collect();
        }
        linalg::nullspace(f, &Matrix::from_rows(rows))
    }

    pub fn centre_dimension(&self) -> usize {
        self.centre_basis().len()
    }

    pub fn regular_module(&self) -> MatrixModule {
        MatrixModule::new(self.dim(), self.gens.clone())
    }

    /// Dimension of the Jacobson radical. Uses the trace form when `p > dim`;
    /// otherwise the common kernel of the action on composition factors of
    /// the regular module.
    pub fn radical_dimension<R: Rng + ?Sized>(&self, rng: &mut R, cap: usize) -> Result<usize, FiniteError> {
        let n = self.dim();
        if n > cap {
            return Err(FiniteError::DimensionCapExceeded { dim: n, cap });
        }
        if self.field.p() as usize > n {
            return Ok(n - linalg::rank(&self.field, &self.trace_form()));
        }
        self.radical_by_factors(rng).map(|k| k.len())
    }

    /// `tr(L_i L_j)`.
    pub fn trace_form(&self) -> Matrix {
        let f = &self.field;
        let l = self.left_matrices();
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| {
            let mut t = f.zero();
            for a in 0..n {
                for b in 0..n {
                    t = f.add(t, f.mul(l[i].get(a, b), l[j].get(b, a)));
                }
            }
            t
        })
    }

    /// Basis of the radical as the kernel of `A → ⊕ End(S)` over composition factors `S`.
    pub fn radical_by_factors<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<Vec<FieldElement>>, FiniteError> {
        let f = &self.field;
        let factors = self
            .regular_module()
            .composition_factors(f, rng, meataxe::DEFAULT_BUDGET)
            .ok_or(FiniteError::Inconclusive)?;
        let n = self.dim();
        let mut cols: Vec<Vec<FieldElement>> = vec![Vec::new(); n];
        for s in &factors {
            let mut memo: HashMap<Vec<usize>, Matrix> = HashMap::new();
            memo.insert(Vec::new(), Matrix::identity(s.dim));
            for (j, w) in self.words.iter().enumerate() {
                let m = word_matrix(f, &s.gens, &mut memo, w);
                cols[j].extend_from_slice(m.data());
            }
        }
        // rows indexed by entries, columns by basis elements
        let m = Matrix::from_columns(&cols, cols[0].len());
        Ok(linalg::nullspace(f, &m))
    }

    pub fn is_full_matrix_algebra<R: Rng + ?Sized>(&self, rng: &mut R, cap: usize) -> Result<bool, FiniteError> {
        let n = self.dim();
        let d = (n as f64).sqrt().round() as usize;
        if d * d != n || self.centre_dimension() != 1 {
            return Ok(false);
        }
        Ok(self.radical_dimension(rng, cap)? == 0)
    }

    /// `dim e A e`.
    pub fn corner_dimension(&self, e: &[FieldElement]) -> usize {
        let f = &self.field;
        linalg::rank(f, &self.left_of(e).mul(f, &self.right_of(e)))
    }
}

fn word_matrix(f: &Field, gens: &[Matrix], memo: &mut HashMap<Vec<usize>, Matrix>, w: &[usize]) -> Matrix {
    if let Some(m) = memo.get(w) {
        return m.clone();
    }
    let rest = word_matrix(f, gens, memo, &w[1..]);
    let m = gens[w[0]].mul(f, &rest);
    memo.insert(w.to_vec(), m.clone());
    m
}

fn unit(f: &Field, n: usize, i: usize) -> Vec<FieldElement> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn elementary(f: &Field, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, f.one());
        m
    }

    #[test]
    fn full_matrix_algebra_detected() {
        let f = Field::prime(3).unwrap();
        let n = 4;
        let shift = Matrix::from_fn(n, n, |i, j| if (j + 1) % n == i { f.one() } else { f.zero() });
        let a = FiniteAlgebra::generated_by(&f, &[shift, elementary(&f, n, 0, 0)]);
        assert_eq!(a.dim(), 16);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(a.radical_dimension(&mut rng, 4096), Ok(0));
        assert_eq!(a.centre_dimension(), 1);
        assert_eq!(a.is_full_matrix_algebra(&mut rng, 4096), Ok(true));
    }

    #[test]
    fn upper_triangular_radical() {
        for p in [3u64, 7] {
            let f = Field::prime(p).unwrap();
            let n = 3;
            let mut gens = Vec::new();
            for i in 0..n {
                for j in i..n {
                    gens.push(elementary(&f, n, i, j));
                }
            }
            let a = FiniteAlgebra::generated_by(&f, &gens);
            assert_eq!(a.dim(), 6);
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            // 6 < 7 uses the trace form, 3 uses composition factors; both give n(n-1)/2
            assert_eq!(a.radical_dimension(&mut rng, 4096), Ok(3));
            assert_eq!(a.radical_by_factors(&mut rng).unwrap().len(), 3);
            assert_eq!(a.is_full_matrix_algebra(&mut rng, 4096), Ok(false));
        }
    }

    #[test]
    fn dimension_cap() {
        let f = Field::prime(3).unwrap();
        let a = FiniteAlgebra::generated_by(&f, &[elementary(&f, 2, 0, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(
            a.radical_dimension(&mut rng, 1),
            Err(FiniteError::DimensionCapExceeded { dim: 2, cap: 1 })
        );
    }
}

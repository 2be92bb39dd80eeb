//! Submodule search for matrix representations over `F_q` (Norton's
//! criterion with the Holt–Rees choice of random elements).

use rand::Rng;

use crate::field::{Field, FieldElement};
use crate::linalg::{self, EchelonBasis, Matrix};

pub const DEFAULT_BUDGET: usize = 32;

/// A module given by the matrices of a generating set of the acting algebra.
#[derive(Clone, Debug)]
pub struct MatrixModule {
    pub dim: usize,
    pub gens: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    Reducible,
    Inconclusive,
}

enum Split {
    Irreducible,
    Sub(EchelonBasis),
    Inconclusive,
}

/// Smallest subspace containing `seeds` and stable under `gens`.
pub fn spin(f: &Field, gens: &[Matrix], seeds: &[Vec<FieldElement>], dim: usize) -> EchelonBasis {
    let mut basis = EchelonBasis::new(dim);
    let mut queue: Vec<Vec<FieldElement>> = Vec::new();
    for s in seeds {
        if basis.insert(f, s).is_some() {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if basis.is_full() {
            break;
        }
        for g in gens {
            let w = g.mul_vec(f, &v);
            if basis.insert(f, &w).is_some() {
                queue.push(w);
            }
        }
    }
    basis
}

impl MatrixModule {
    pub fn new(dim: usize, gens: Vec<Matrix>) -> MatrixModule {
        MatrixModule { dim, gens }
    }

    /// Action on a submodule given by a fully reduced echelon basis.
    pub fn submodule(&self, f: &Field, w: &EchelonBasis) -> MatrixModule {
        let k = w.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let imgs: Vec<Vec<FieldElement>> = w.vectors().iter().map(|v| g.mul_vec(f, v)).collect();
                Matrix::from_fn(k, k, |j, i| imgs[i][w.pivots()[j]])
            })
            .collect();
        MatrixModule { dim: k, gens }
    }

    /// Action on the quotient by a submodule, in the non-pivot coordinates.
    pub fn quotient(&self, f: &Field, w: &EchelonBasis) -> MatrixModule {
        let mut is_pivot = vec![false; self.dim];
        for &p in w.pivots() {
            is_pivot[p] = true;
        }
        let comp: Vec<usize> = (0..self.dim).filter(|&i| !is_pivot[i]).collect();
        let k = comp.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let imgs: Vec<Vec<FieldElement>> = comp
                    .iter()
                    .map(|&c| {
                        let mut v = g.column(c);
                        w.reduce(f, &mut v);
                        v
                    })
                    .collect();
                Matrix::from_fn(k, k, |j, i| imgs[i][comp[j]])
            })
            .collect();
        MatrixModule { dim: k, gens }
    }

    fn random_element<R: Rng + ?Sized>(&self, f: &Field, rng: &mut R) -> Matrix {
        let mut theta = Matrix::zeros(self.dim, self.dim);
        if self.gens.is_empty() {
            return theta;
        }
        for _ in 0..3 {
            let len = rng.gen_range(1..=3);
            let mut w = self.gens[rng.gen_range(0..self.gens.len())].clone();
            for _ in 1..len {
                w = w.mul(f, &self.gens[rng.gen_range(0..self.gens.len())]);
            }
            theta.add_scaled(f, f.random_nonzero(rng), &w);
        }
        for g in &self.gens {
            theta.add_scaled(f, f.random(rng), g);
        }
        theta
    }

    fn random_in_span<R: Rng + ?Sized>(f: &Field, span: &[Vec<FieldElement>], rng: &mut R) -> Vec<FieldElement> {
        let n = span[0].len();
        loop {
            let mut v = vec![f.zero(); n];
            for b in span {
                let c = f.random(rng);
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }

    fn find_split<R: Rng + ?Sized>(&self, f: &Field, rng: &mut R, budget: usize) -> Split {
        if self.dim <= 1 {
            return Split::Irreducible;
        }
        let transposes: Vec<Matrix> = self.gens.iter().map(Matrix::transpose).collect();
        for _ in 0..budget {
            let theta = self.random_element(f, rng);
            let chi = linalg::charpoly(f, &theta);
            for fac in chi.irreducible_factors(f, rng) {
                let ft = theta.eval_poly(f, &fac);
                let null = linalg::nullspace(f, &ft);
                let v = Self::random_in_span(f, &null, rng);
                let w = spin(f, &self.gens, &[v], self.dim);
                if !w.is_full() {
                    return Split::Sub(w);
                }
                if null.len() == fac.degree().unwrap() {
                    let dual_null = linalg::nullspace(f, &ft.transpose());
                    let u = Self::random_in_span(f, &dual_null, rng);
                    let wd = spin(f, &transposes, &[u], self.dim);
                    if wd.is_full() {
                        return Split::Irreducible;
                    }
                    let rows = Matrix::from_rows(wd.vectors().to_vec());
                    let ann = linalg::nullspace(f, &rows);
                    let mut sub = EchelonBasis::new(self.dim);
                    for a in &ann {
                        sub.insert(f, a);
                    }
                    return Split::Sub(sub);
                }
            }
        }
        Split::Inconclusive
    }

    pub fn irreducibility<R: Rng + ?Sized>(&self, f: &Field, rng: &mut R, budget: usize) -> Verdict {
        match self.find_split(f, rng, budget) {
            Split::Irreducible => Verdict::Irreducible,
            Split::Sub(_) => Verdict::Reducible,
            Split::Inconclusive => Verdict::Inconclusive,
        }
    }

    /// Some proper nonzero submodule, if the search finds one.
    pub fn proper_submodule<R: Rng + ?Sized>(&self, f: &Field, rng: &mut R, budget: usize) -> Option<EchelonBasis> {
        match self.find_split(f, rng, budget) {
            Split::Sub(w) => Some(w),
            _ => None,
        }
    }

    /// Composition factors (with repetition); `None` when some piece is inconclusive.
    pub fn composition_factors<R: Rng + ?Sized>(
        &self,
        f: &Field,
        rng: &mut R,
        budget: usize,
    ) -> Option<Vec<MatrixModule>> {
        let mut todo = vec![self.clone()];
        let mut out = Vec::new();
        while let Some(m) = todo.pop() {
            if m.dim == 0 {
                continue;
            }
            match m.find_split(f, rng, budget) {
                Split::Irreducible => out.push(m),
                Split::Sub(w) => {
                    todo.push(m.submodule(f, &w));
                    todo.push(m.quotient(f, &w));
                }
                Split::Inconclusive => return None,
            }
        }
        out.sort_by_key(|m| m.dim);
        Some(out)
    }

    pub fn direct_sum(&self, o: &MatrixModule) -> MatrixModule {
        let gens = self.gens.iter().zip(&o.gens).map(|(a, b)| a.direct_sum(b)).collect();
        MatrixModule { dim: self.dim + o.dim, gens }
    }
}

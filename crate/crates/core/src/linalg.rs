//! Dense linear algebra over `F_q`.
//!
//! Matrices do not carry their field; every operation that needs arithmetic
//! takes the [`Field`] explicitly. Vectors are plain `Vec<FieldElement>` and
//! act as columns unless stated otherwise.

use std::collections::{BTreeMap, HashMap};

use crate::field::poly::Poly;
use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn scalar(f: &Field, n: usize, c: FieldElement) -> Matrix {
        Matrix::identity(n).scale(f, c)
    }

    pub fn diag(entries: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> FieldElement) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<FieldElement>], nrows: usize) -> Matrix {
        Matrix::from_fn(nrows, cols.len(), |i, j| cols[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * o`
    pub fn add_scaled(&mut self, f: &Field, c: FieldElement, o: &Matrix) {
        if c.is_zero() {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&o.data) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn mul(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = o.row(k);
                let base = i * o.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j] = f.add(out.data[base + j], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, f: &Field, mut k: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    pub fn trace(&self, f: &Field) -> FieldElement {
        f.sum((0..self.rows.min(self.cols)).map(|i| self.get(i, i)))
    }

    /// `Some(c)` when the matrix equals `c * Id`.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { FieldElement::ZERO } else { self.get(0, 0) };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { c } else { FieldElement::ZERO };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Evaluate a polynomial at this matrix (Horner).
    pub fn eval_poly(&self, f: &Field, p: &Poly) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j));
            }
        }
        m
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row. Pivots are taken at the leftmost available column.
pub fn rref(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).unwrap();
        for j in c..cols {
            let v = f.mul(m.get(r, j), inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of `{ v : m v = 0 }`.
pub fn nullspace(f: &Field, m: &Matrix) -> Vec<Vec<FieldElement>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(a.get(r, free));
        }
        basis.push(v);
    }
    basis
}

/// Basis of `{ w : wᵀ m = 0 }`.
pub fn left_nullspace(f: &Field, m: &Matrix) -> Vec<Vec<FieldElement>> {
    nullspace(f, &m.transpose())
}

/// Some solution of `m x = b`, if consistent.
pub fn solve(f: &Field, m: &Matrix, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::from_fn(m.rows, m.cols + 1, |i, j| if j < m.cols { m.get(i, j) } else { b[i] });
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, m.cols);
    }
    Some(x)
}

pub fn inverse(f: &Field, m: &Matrix) -> Option<Matrix> {
    assert!(m.is_square());
    let n = m.rows;
    let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j)
        } else if j - n == i {
            f.one()
        } else {
            f.zero()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j)))
}

/// Characteristic polynomial `det(z·Id - m)` via reduction to upper
/// Hessenberg form.
pub fn charpoly(f: &Field, m: &Matrix) -> Poly {
    assert!(m.is_square());
    let n = m.rows;
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(pr) = (c + 1..n).find(|&i| !h.get(i, c).is_zero()) else {
            continue;
        };
        if pr != c + 1 {
            for j in 0..n {
                h.data.swap(pr * n + j, (c + 1) * n + j);
            }
            for i in 0..n {
                h.data.swap(i * n + pr, i * n + c + 1);
            }
        }
        let inv = f.inv(h.get(c + 1, c)).unwrap();
        for i in c + 2..n {
            let factor = f.mul(h.get(i, c), inv);
            if factor.is_zero() {
                continue;
            }
            // row_i -= factor * row_{c+1}
            for j in 0..n {
                let v = f.sub(h.get(i, j), f.mul(factor, h.get(c + 1, j)));
                h.set(i, j, v);
            }
            // col_{c+1} += factor * col_i
            for k in 0..n {
                let v = f.add(h.get(k, c + 1), f.mul(factor, h.get(k, i)));
                h.set(k, c + 1, v);
            }
        }
    }
    // p_k = (z - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<Poly> = vec![Poly::constant(f.one())];
    for k in 0..n {
        let mut pk = Poly::linear(f, h.get(k, k)).mul(f, &ps[k]);
        let mut prod = f.one();
        for i in (0..k).rev() {
            prod = f.mul(prod, h.get(i + 1, i));
            if prod.is_zero() {
                break;
            }
            let coef = f.mul(h.get(i, k), prod);
            if !coef.is_zero() {
                pk = pk.sub(f, &ps[i].scale(f, coef));
            }
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

pub type SparseVec = BTreeMap<usize, FieldElement>;

fn sparse_axpy(f: &Field, v: &mut SparseVec, c: FieldElement, w: &SparseVec) {
    for (&k, &x) in w {
        let e = v.entry(k).or_insert(FieldElement::ZERO);
        *e = f.add(*e, f.mul(c, x));
        if e.is_zero() {
            v.remove(&k);
        }
    }
}

/// Column elimination over sparse columns taken in order. Returns, for each
/// column, whether it is independent of the earlier ones, and a kernel basis
/// in which the vector found at column `j` only involves columns `≤ j`.
pub fn sparse_column_kernel(f: &Field, cols: &[SparseVec]) -> (Vec<bool>, Vec<SparseVec>) {
    sparse_elimination(f, cols, true)
}

/// Whether each column is independent of the earlier ones.
pub fn sparse_column_independence(f: &Field, cols: &[SparseVec]) -> Vec<bool> {
    sparse_elimination(f, cols, false).0
}

fn sparse_elimination(f: &Field, cols: &[SparseVec], track: bool) -> (Vec<bool>, Vec<SparseVec>) {
    let mut basis: HashMap<usize, (SparseVec, SparseVec)> = HashMap::new();
    let mut independent = Vec::with_capacity(cols.len());
    let mut kernel = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = if track { SparseVec::from([(j, FieldElement::ONE)]) } else { SparseVec::new() };
        let mut start = 0;
        let pivot = loop {
            let Some((&r, &c)) = v.range(start..).next() else { break None };
            match basis.get(&r) {
                Some((b, bc)) => {
                    let neg = f.neg(c);
                    sparse_axpy(f, &mut v, neg, b);
                    sparse_axpy(f, &mut combo, neg, bc);
                    start = r + 1;
                }
                None => break Some((r, c)),
            }
        };
        match pivot {
            Some((r, c)) => {
                let inv = f.inv(c).unwrap();
                for x in v.values_mut().chain(combo.values_mut()) {
                    *x = f.mul(*x, inv);
                }
                basis.insert(r, (v, combo));
                independent.push(true);
            }
            None => {
                kernel.push(combo);
                independent.push(false);
            }
        }
    }
    (independent, kernel)
}

/// Incrementally maintained row-echelon basis of a subspace of `F_q^dim`.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> EchelonBasis {
        EchelonBasis { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn vectors(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce against the stored rows; zero iff `v` lies in the span.
    pub fn reduce(&self, f: &Field, v: &mut [FieldElement]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }

    pub fn contains(&self, f: &Field, v: &[FieldElement]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns the normalised new row when it was independent.
    pub fn insert(&mut self, f: &Field, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        let pc = w.iter().position(|x| !x.is_zero())?;
        let inv = f.inv(w[pc]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep rows fully reduced at the new pivot
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&w) {
                *x = f.sub(*x, f.mul(c, r));
            }
        }
        self.rows.push(w.clone());
        self.pivots.push(pc);
        Some(w)
    }
}

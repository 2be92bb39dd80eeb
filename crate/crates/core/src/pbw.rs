//! Elements of `H_{1,c}` in the PBW basis `u^A γ` and their multiplication.
//!
//! Basis letters are `u_0..u_{2n-1}` (`x_1..x_n` then `y_1..y_n`). A
//! monomial is an exponent vector in letter order followed by one group
//! element. Products are computed by right-multiplying by letters and
//! sorting each new letter into place with the relation
//! `u_b u_a = u_a u_b + κ_{ba}` (`b > a`), where
//! `κ_{ba} = -ω(u_a, u_b) + Σ_s c_s ω_s(u_a, u_b) s`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use smallvec::SmallVec;
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::structure::{Group, Params, ReflectionData, SymplecticSpace};

pub type Exps = SmallVec<[u32; 4]>;
type Terms = HashMap<Mono, FieldElement>;
type TermList = Arc<Vec<(Mono, FieldElement)>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbwError {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("the zero element has no degree")]
    ZeroElement,
    #[error("cannot parse element: {0}")]
    Parse(String),
}

/// `u^exps · g`, ordered lexicographically by exponents then group index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub exps: Exps,
    pub g: usize,
}

impl Mono {
    pub fn new(exps: &[u32], g: usize) -> Mono {
        Mono { exps: exps.iter().copied().collect(), g }
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }
}

/// One letter of a word passed to [`Algebra::normal_form`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Letter(usize),
    Group(usize),
    Scalar(FieldElement),
}

pub struct Algebra {
    field: Field,
    space: SymplecticSpace,
    group: Group,
    reflections: Vec<ReflectionData>,
    params: Params,
    /// `kappa[b][a]`, `b > a`: identity coefficient and reflection terms.
    kappa: Vec<Vec<(FieldElement, Vec<(usize, FieldElement)>)>>,
    /// `action[g][a]` = `g.u_a` as sparse coordinates.
    action: Vec<Vec<Vec<(usize, FieldElement)>>>,
    diagonal: Vec<bool>,
    vmul_cache: Mutex<HashMap<(Exps, Exps), TermList>>,
    conj_cache: Mutex<HashMap<(usize, Exps), TermList>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("n", &self.space.n())
            .field("group_order", &self.group.order())
            .field("c", &self.params.class_values())
            .finish()
    }
}

impl Algebra {
    pub fn new(
        field: Field,
        space: SymplecticSpace,
        group: Group,
        reflections: Vec<ReflectionData>,
        params: Params,
    ) -> Arc<Algebra> {
        let f = &field;
        let d = space.dim();
        let mut kappa = vec![Vec::new(); d];
        for b in 0..d {
            for a in 0..b {
                let ident = f.neg(space.omega_basis(a, b));
                let mut grp = Vec::new();
                for r in &reflections {
                    let v = f.mul(params.c(r.s), r.omega_s.get(a, b));
                    if !v.is_zero() {
                        grp.push((r.s, v));
                    }
                }
                kappa[b].push((ident, grp));
            }
        }
        let action: Vec<Vec<Vec<(usize, FieldElement)>>> = group
            .elements()
            .iter()
            .map(|m| {
                (0..d)
                    .map(|a| (0..d).filter(|&i| !m.get(i, a).is_zero()).map(|i| (i, m.get(i, a))).collect())
                    .collect()
            })
            .collect();
        let diagonal = action
            .iter()
            .map(|cols| cols.iter().enumerate().all(|(a, col)| col.len() == 1 && col[0].0 == a))
            .collect();
        Arc::new(Algebra {
            field,
            space,
            group,
            reflections,
            params,
            kappa,
            action,
            diagonal,
            vmul_cache: Mutex::new(HashMap::new()),
            conj_cache: Mutex::new(HashMap::new()),
        })
    }

    /// The Weyl algebra `H_{1,0}` for the trivial group on `k^{2n}`.
    pub fn weyl(field: &Field, n: usize) -> Arc<Algebra> {
        let space = SymplecticSpace::cherednik(field, n);
        let group = Group::trivial(2 * n);
        let params = Params::from_class_values(&group, &[], &[]).expect("trivial group has no classes");
        Algebra::new(field.clone(), space, group, Vec::new(), params)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn reflections(&self) -> &[ReflectionData] {
        &self.reflections
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// Number of basis letters, `2n`.
    pub fn num_letters(&self) -> usize {
        self.space.dim()
    }

    pub fn letter_name(&self, i: usize) -> String {
        let n = self.n();
        if i < n {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - n + 1)
        }
    }

    /// `κ_{ba}` for `b > a`.
    pub fn kappa(&self, b: usize, a: usize) -> (FieldElement, &[(usize, FieldElement)]) {
        let (id, grp) = &self.kappa[b][a];
        (*id, grp)
    }

    pub fn group_matrix(&self, g: usize) -> &Matrix {
        self.group.element(g)
    }

    fn zero_exps(&self) -> Exps {
        SmallVec::from_elem(0, self.num_letters())
    }

    fn unit_exps(&self, i: usize) -> Exps {
        let mut e = self.zero_exps();
        e[i] = 1;
        e
    }

    /// `u^a · u^c` for pure vector monomials.
    fn vmul(&self, a: &Exps, c: &Exps) -> TermList {
        let lo = c.iter().position(|&e| e > 0);
        let Some(lo) = lo else {
            return Arc::new(vec![(Mono { exps: a.clone(), g: 0 }, self.field.one())]);
        };
        if a.iter().skip(lo + 1).all(|&e| e == 0) {
            let exps = a.iter().zip(c).map(|(x, y)| x + y).collect();
            return Arc::new(vec![(Mono { exps, g: 0 }, self.field.one())]);
        }
        let key = (a.clone(), c.clone());
        if let Some(hit) = self.vmul_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let hi = c.iter().rposition(|&e| e > 0).unwrap();
        let result: Terms = if c.iter().map(|&e| e as usize).sum::<usize>() == 1 {
            self.insert_letter(a, hi)
        } else {
            let mut rest = c.clone();
            rest[hi] -= 1;
            let prefix = self.vmul(a, &rest);
            let mut out = Terms::new();
            for (m, coef) in prefix.iter() {
                self.rmul_letter_into(&mut out, m, *coef, hi);
            }
            out
        };
        let list: TermList = Arc::new(result.into_iter().collect());
        self.vmul_cache.lock().unwrap().insert(key, list.clone());
        list
    }

    /// `u^b · u_m` where some letter of `b` exceeds `m`.
    fn insert_letter(&self, b: &Exps, m: usize) -> Terms {
        let f = &self.field;
        let d = self.num_letters();
        let mut out = Terms::new();
        let mut main = b.clone();
        main[m] += 1;
        acc(f, &mut out, Mono { exps: main, g: 0 }, f.one());
        for l in (m + 1)..d {
            let bl = b[l];
            if bl == 0 {
                continue;
            }
            let (ident, grp) = self.kappa(l, m);
            if !ident.is_zero() {
                let mut e = b.clone();
                e[l] -= 1;
                acc(f, &mut out, Mono { exps: e, g: 0 }, f.mul(ident, f.from_int(bl as i64)));
            }
            for &(s, ks) in grp {
                for k in 0..bl {
                    // u^b = before · u_l · after, with the chosen u_l moved out
                    let mut before = b.clone();
                    let mut after = self.zero_exps();
                    before[l] = k;
                    after[l] = bl - k - 1;
                    for i in (l + 1)..d {
                        before[i] = 0;
                        after[i] = b[i];
                    }
                    let conj = self.conj_vec(s, &after);
                    for (cm, cc) in conj.iter() {
                        let tail_g = self.group.mul(cm.g, s);
                        let coef = f.mul(ks, *cc);
                        for (em, ec) in self.vmul(&before, &cm.exps).iter() {
                            let g = self.group.mul(em.g, tail_g);
                            acc(f, &mut out, Mono { exps: em.exps.clone(), g }, f.mul(coef, *ec));
                        }
                    }
                }
            }
        }
        out
    }

    /// Adds `coef · (u^B h) · u_j` into `out`.
    fn rmul_letter_into(&self, out: &mut Terms, mono: &Mono, coef: FieldElement, j: usize) {
        let f = &self.field;
        for &(m, a) in &self.action[mono.g][j] {
            let ca = f.mul(coef, a);
            for (t, tc) in self.vmul(&mono.exps, &self.unit_exps(m)).iter() {
                let g = self.group.mul(t.g, mono.g);
                acc(f, out, Mono { exps: t.exps.clone(), g }, f.mul(ca, *tc));
            }
        }
    }

    /// `g · u^c · g⁻¹`.
    fn conj_vec(&self, g: usize, c: &Exps) -> TermList {
        let f = &self.field;
        if g == 0 || c.iter().all(|&e| e == 0) {
            return Arc::new(vec![(Mono { exps: c.clone(), g: 0 }, f.one())]);
        }
        if self.diagonal[g] {
            let mut coef = f.one();
            for (a, &e) in c.iter().enumerate() {
                coef = f.mul(coef, f.pow(self.action[g][a][0].1, e as u64));
            }
            return Arc::new(vec![(Mono { exps: c.clone(), g: 0 }, coef)]);
        }
        let key = (g, c.clone());
        if let Some(hit) = self.conj_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let mut cur: Terms = Terms::from([(Mono { exps: self.zero_exps(), g: 0 }, f.one())]);
        for (a, &e) in c.iter().enumerate() {
            for _ in 0..e {
                let mut next = Terms::new();
                for &(i, v) in &self.action[g][a] {
                    for (m, mc) in &cur {
                        self.rmul_letter_into(&mut next, m, f.mul(*mc, v), i);
                    }
                }
                cur = next;
            }
        }
        let list: TermList = Arc::new(cur.into_iter().collect());
        self.conj_cache.lock().unwrap().insert(key, list.clone());
        list
    }

    fn mul_mono_into(&self, out: &mut Terms, a: &Mono, b: &Mono, coef: FieldElement) {
        let f = &self.field;
        let gh = self.group.mul(a.g, b.g);
        for (cm, cc) in self.conj_vec(a.g, &b.exps).iter() {
            let tail = self.group.mul(cm.g, gh);
            let c1 = f.mul(coef, *cc);
            for (em, ec) in self.vmul(&a.exps, &cm.exps).iter() {
                let g = self.group.mul(em.g, tail);
                acc(f, out, Mono { exps: em.exps.clone(), g }, f.mul(c1, *ec));
            }
        }
    }

    /// Drops the multiplication caches.
    pub fn clear_caches(&self) {
        self.vmul_cache.lock().unwrap().clear();
        self.conj_cache.lock().unwrap().clear();
    }
}

fn acc(f: &Field, out: &mut Terms, m: Mono, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match out.entry(m) {
        Entry::Occupied(mut o) => {
            let v = f.add(*o.get(), c);
            if v.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = v;
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// A finite linear combination of PBW monomials.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Arc<Algebra>,
    terms: BTreeMap<Mono, FieldElement>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &o.alg) && self.terms == o.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Constructors living on the shared handle.
pub trait AlgebraExt {
    fn zero(&self) -> AlgebraElement;
    fn one(&self) -> AlgebraElement;
    fn scalar(&self, c: FieldElement) -> AlgebraElement;
    fn letter(&self, i: usize) -> AlgebraElement;
    fn x(&self, i: usize) -> AlgebraElement;
    fn y(&self, i: usize) -> AlgebraElement;
    fn group_element(&self, g: usize) -> AlgebraElement;
    fn monomial(&self, exps: &[u32], g: usize) -> AlgebraElement;
    fn from_terms(&self, terms: impl IntoIterator<Item = (Mono, FieldElement)>) -> AlgebraElement;
    fn normal_form(&self, word: &[Atom]) -> AlgebraElement;
    fn symmetrizer(&self) -> AlgebraElement;
    fn parse(&self, s: &str) -> Result<AlgebraElement, PbwError>;
    /// Every monomial `u^A g` with `|A| ≤ d`, in canonical order.
    fn monomials_up_to(&self, d: usize) -> Vec<Mono>;
    /// `terms` random monomials of filtration degree `≤ max_degree` with random coefficients.
    fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R, max_degree: usize, terms: usize) -> AlgebraElement;
}

impl AlgebraExt for Arc<Algebra> {
    fn zero(&self) -> AlgebraElement {
        AlgebraElement { alg: self.clone(), terms: BTreeMap::new() }
    }

    fn one(&self) -> AlgebraElement {
        self.scalar(self.field.one())
    }

    fn scalar(&self, c: FieldElement) -> AlgebraElement {
        self.from_terms([(Mono { exps: self.zero_exps(), g: 0 }, c)])
    }

    fn letter(&self, i: usize) -> AlgebraElement {
        self.from_terms([(Mono { exps: self.unit_exps(i), g: 0 }, self.field.one())])
    }

    fn x(&self, i: usize) -> AlgebraElement {
        self.letter(i)
    }

    fn y(&self, i: usize) -> AlgebraElement {
        self.letter(self.n() + i)
    }

    fn group_element(&self, g: usize) -> AlgebraElement {
        self.from_terms([(Mono { exps: self.zero_exps(), g }, self.field.one())])
    }

    fn monomial(&self, exps: &[u32], g: usize) -> AlgebraElement {
        self.from_terms([(Mono::new(exps, g), self.field.one())])
    }

    fn from_terms(&self, terms: impl IntoIterator<Item = (Mono, FieldElement)>) -> AlgebraElement {
        let f = &self.field;
        let mut map: BTreeMap<Mono, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.exps.len(), self.num_letters(), "monomial has the wrong number of letters");
            let e = map.entry(m).or_insert(f.zero());
            *e = f.add(*e, c);
        }
        map.retain(|_, c| !c.is_zero());
        AlgebraElement { alg: self.clone(), terms: map }
    }

    fn normal_form(&self, word: &[Atom]) -> AlgebraElement {
        let f = &self.field;
        let mut cur: Terms = Terms::from([(Mono { exps: self.zero_exps(), g: 0 }, f.one())]);
        for atom in word {
            cur = match *atom {
                Atom::Letter(j) => {
                    let mut next = Terms::new();
                    for (m, c) in &cur {
                        self.rmul_letter_into(&mut next, m, *c, j);
                    }
                    next
                }
                Atom::Group(h) => cur
                    .into_iter()
                    .map(|(m, c)| (Mono { g: self.group.mul(m.g, h), exps: m.exps }, c))
                    .collect(),
                Atom::Scalar(s) => cur
                    .into_iter()
                    .map(|(m, c)| (m, f.mul(c, s)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            };
        }
        self.from_terms(cur)
    }

    fn symmetrizer(&self) -> AlgebraElement {
        let f = &self.field;
        let w = f.inv(f.from_int(self.group.order() as i64)).unwrap();
        let z = self.zero_exps();
        self.from_terms((0..self.group.order()).map(|g| (Mono { exps: z.clone(), g }, w)))
    }

    fn parse(&self, s: &str) -> Result<AlgebraElement, PbwError> {
        let mut total = self.zero();
        for term in split_top_level(s) {
            let term = term.trim();
            if term.is_empty() {
                return Err(PbwError::Parse(s.to_string()));
            }
            let mut word = Vec::new();
            for tok in term.split_whitespace() {
                word.extend(self.parse_token(tok)?);
            }
            total = total + self.normal_form(&word);
        }
        Ok(total)
    }

    fn monomials_up_to(&self, d: usize) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut exps = self.zero_exps();
        fn rec(k: usize, left: usize, exps: &mut Exps, out: &mut Vec<Exps>) {
            if k == exps.len() {
                out.push(exps.clone());
                return;
            }
            for e in 0..=left {
                exps[k] = e as u32;
                rec(k + 1, left - e, exps, out);
            }
            exps[k] = 0;
        }
        let mut all = Vec::new();
        rec(0, d, &mut exps, &mut all);
        for e in all {
            for g in 0..self.group.order() {
                out.push(Mono { exps: e.clone(), g });
            }
        }
        out.sort();
        out
    }

    fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R, max_degree: usize, terms: usize) -> AlgebraElement {
        let d = self.num_letters();
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let deg = rng.gen_range(0..=max_degree);
            let mut exps = self.zero_exps();
            for _ in 0..deg {
                exps[rng.gen_range(0..d)] += 1;
            }
            let g = rng.gen_range(0..self.group.order());
            out.push((Mono { exps, g }, self.field.random_nonzero(rng)));
        }
        self.from_terms(out)
    }
}

impl Algebra {
    fn parse_token(&self, tok: &str) -> Result<Vec<Atom>, PbwError> {
        let unknown = || PbwError::UnknownAtom(tok.to_string());
        let (head, power) = match tok.split_once('^') {
            Some((h, p)) if !tok.starts_with('(') => (h, p.parse::<u32>().map_err(|_| unknown())?),
            _ => (tok, 1),
        };
        let mut chars = head.chars();
        match chars.next() {
            Some(c @ ('x' | 'y')) => {
                let idx: usize = chars.as_str().parse().map_err(|_| unknown())?;
                if idx == 0 || idx > self.n() {
                    return Err(unknown());
                }
                let letter = if c == 'x' { idx - 1 } else { self.n() + idx - 1 };
                Ok(vec![Atom::Letter(letter); power as usize])
            }
            Some('g') => {
                let idx: usize = chars.as_str().parse().map_err(|_| unknown())?;
                if idx >= self.group.order() {
                    return Err(unknown());
                }
                Ok(vec![Atom::Group(idx); power as usize])
            }
            _ => {
                let c = self.field.parse(tok).map_err(|_| unknown())?;
                Ok(vec![Atom::Scalar(c)])
            }
        }
    }
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().unwrap().push(ch);
    }
    out
}

impl AlgebraElement {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> &Field {
        &self.alg.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &FieldElement)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<Mono, FieldElement> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> FieldElement {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn same_algebra(&self, o: &AlgebraElement) -> bool {
        Arc::ptr_eq(&self.alg, &o.alg)
    }

    fn check(&self, o: &AlgebraElement) -> Result<(), PbwError> {
        if self.same_algebra(o) {
            Ok(())
        } else {
            Err(PbwError::AlgebraMismatch)
        }
    }

    pub fn checked_add(&self, o: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
        self.check(o)?;
        let f = self.field();
        let mut terms = self.terms.clone();
        for (m, &c) in &o.terms {
            let e = terms.entry(m.clone()).or_insert(f.zero());
            *e = f.add(*e, c);
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(AlgebraElement { alg: self.alg.clone(), terms })
    }

    pub fn checked_sub(&self, o: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
        self.checked_add(&o.neg_ref())
    }

    pub fn checked_mul(&self, o: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
        self.check(o)?;
        let f = self.field();
        let mut out = Terms::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &o.terms {
                self.alg.mul_mono_into(&mut out, a, b, f.mul(ca, cb));
            }
        }
        Ok(self.alg.from_terms(out))
    }

    fn neg_ref(&self) -> AlgebraElement {
        self.scale(self.field().neg(self.field().one()))
    }

    pub fn scale(&self, c: FieldElement) -> AlgebraElement {
        let f = self.field();
        if c.is_zero() {
            return self.alg.zero();
        }
        AlgebraElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), f.mul(v, c))).collect(),
        }
    }

    pub fn commutator(&self, o: &AlgebraElement) -> Result<AlgebraElement, PbwError> {
        Ok(self.checked_mul(o)?.checked_sub(&o.checked_mul(self)?)?)
    }

    pub fn pow(&self, mut k: u64) -> AlgebraElement {
        let mut base = self.clone();
        let mut acc = self.alg.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Maximum of `|A|` over the terms.
    pub fn filtration_degree(&self) -> Result<usize, PbwError> {
        self.terms.keys().map(Mono::degree).max().ok_or(PbwError::ZeroElement)
    }

    /// Terms of maximal filtration degree.
    pub fn top_part(&self) -> AlgebraElement {
        let Ok(d) = self.filtration_degree() else {
            return self.clone();
        };
        self.filter(|m| m.degree() == d)
    }

    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> AlgebraElement {
        AlgebraElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, &c)| (m.clone(), c)).collect(),
        }
    }

    /// Splits by `deg x = 1`, `deg y = -1`, `deg γ = 0`.
    pub fn m_degree_components(&self) -> BTreeMap<i64, AlgebraElement> {
        let n = self.alg.n();
        let mut out: BTreeMap<i64, AlgebraElement> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let deg = m.exps[..n].iter().map(|&e| e as i64).sum::<i64>()
                - m.exps[n..].iter().map(|&e| e as i64).sum::<i64>();
            out.entry(deg).or_insert_with(|| self.alg.zero()).terms.insert(m.clone(), c);
        }
        out
    }

    /// `g · a · g⁻¹`.
    pub fn conjugate(&self, g: usize) -> AlgebraElement {
        let ge = self.alg.group_element(g);
        let gi = self.alg.group_element(self.alg.group.inv(g));
        &(&ge * self) * &gi
    }

    pub fn project_spherical(&self) -> AlgebraElement {
        let e = self.alg.symmetrizer();
        &(&e * self) * &e
    }

    /// Pieces `Σ_A c_A u^A` grouped by group element.
    pub fn group_components(&self) -> BTreeMap<usize, Vec<(Exps, FieldElement)>> {
        let mut out: BTreeMap<usize, Vec<(Exps, FieldElement)>> = BTreeMap::new();
        for (m, &c) in &self.terms {
            out.entry(m.g).or_default().push((m.exps.clone(), c));
        }
        out
    }

    /// The scalar `c` if this element is `c · 1`.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(self.field().zero()),
            1 => {
                let (m, &c) = self.terms.iter().next().unwrap();
                (m.g == 0 && m.degree() == 0).then_some(c)
            }
            _ => None,
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = self.field();
        let mut first = true;
        for (m, &c) in &self.terms {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if c != f.one() {
                let lit = f.format(c);
                parts.push(if lit.contains(['+', '-']) { format!("({lit})") } else { lit });
            }
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.alg.letter_name(i)),
                    _ => parts.push(format!("{}^{e}", self.alg.letter_name(i))),
                }
            }
            parts.push(format!("g{}", m.g));
            write!(out, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, o: &AlgebraElement) -> AlgebraElement {
                self.$checked(o).expect("elements belong to different algebras")
            }
        }
        impl $tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, o: AlgebraElement) -> AlgebraElement {
                (&self).$method(&o)
            }
        }
        impl $tr<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, o: &AlgebraElement) -> AlgebraElement {
                (&self).$method(o)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.neg_ref()
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{symplectic_reflections, DEFAULT_GROUP_CAP};

    fn type_a(p: u64, r: u64, c: i64) -> Arc<Algebra> {
        let f = Field::prime(p).unwrap();
        let space = SymplecticSpace::cherednik(&f, 1);
        let eta = f.primitive_root_of_unity(r).unwrap();
        let g = Matrix::diag(&[eta, f.inv(eta).unwrap()]);
        let group = Group::build(&f, &space, &[g], DEFAULT_GROUP_CAP).unwrap();
        let refl = symplectic_reflections(&f, &space, &group);
        let vals = vec![f.from_int(c); refl.len()];
        let params = Params::from_class_values(&group, &refl, &vals).unwrap();
        Algebra::new(f, space, group, refl, params)
    }

    #[test]
    fn klein_relations() {
        let h = type_a(3, 2, 1);
        let yx = h.normal_form(&[Atom::Letter(1), Atom::Letter(0)]);
        assert_eq!(yx, h.parse("x1 y1 g0 + 1 g0 + 2 g1").unwrap());
        let gx = h.normal_form(&[Atom::Group(1), Atom::Letter(0)]);
        assert_eq!(gx, h.x(0).scale(h.field().from_int(-1)) * h.group_element(1));
        let xxy = h.normal_form(&[Atom::Letter(0), Atom::Letter(0), Atom::Letter(1)]);
        assert_eq!(xxy, h.monomial(&[2, 1], 0));
        assert_eq!(h.normal_form(&[]), h.one());
    }

    #[test]
    fn print_parse_round_trip() {
        let h = type_a(5, 2, 3);
        let a = h.parse("y1 x1^2 + 3 g1 x1 + 2").unwrap();
        let s = a.to_string();
        assert_eq!(h.parse(&s).unwrap(), a);
        assert_eq!(h.parse("0").unwrap(), h.zero());
        assert!(matches!(h.parse("w1"), Err(PbwError::UnknownAtom(_))));
        assert!(matches!(h.parse("x2"), Err(PbwError::UnknownAtom(_))));
        assert!(matches!(h.parse("g7"), Err(PbwError::UnknownAtom(_))));
    }

    #[test]
    fn degrees() {
        let h = type_a(3, 2, 1);
        let m = h.monomial(&[2, 1], 1);
        assert_eq!(m.filtration_degree(), Ok(3));
        assert_eq!(m.m_degree_components().keys().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(h.group_element(1).filtration_degree(), Ok(0));
        assert_eq!(h.zero().filtration_degree(), Err(PbwError::ZeroElement));
    }

    #[test]
    fn mismatch_detected() {
        let a = type_a(3, 2, 1);
        let b = type_a(3, 2, 1);
        assert_eq!(a.one().checked_mul(&b.one()), Err(PbwError::AlgebraMismatch));
    }

    #[test]
    fn symmetrizer_is_idempotent() {
        let h = type_a(7, 3, 2);
        let e = h.symmetrizer();
        assert_eq!(&e * &e, e);
        assert_eq!(e.pow(5), e);
        assert_eq!(h.one().project_spherical(), e);
        let x6 = h.x(0).pow(6);
        assert_eq!(x6, h.monomial(&[6, 0], 0));
    }
}

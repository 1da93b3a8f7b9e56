use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::field::{FieldElement, NumberField};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Variable names plus the coefficient field.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: Arc<NumberField>,
}

impl Ring {
    pub fn new(vars: Vec<String>, field: Arc<NumberField>) -> Arc<Ring> {
        Arc::new(Ring { vars, field })
    }

    /// Polynomial ring over `Q` in the given variables.
    pub fn rational(vars: &[&str]) -> Arc<Ring> {
        Ring::new(vars.iter().map(|v| v.to_string()).collect(), NumberField::rationals())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables over the same field, compared by value.
    pub fn compatible(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    /// The ring with variable `index` removed.
    pub fn without_var(&self, index: usize) -> Arc<Ring> {
        let vars = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, v)| v.clone())
            .collect();
        Ring::new(vars, self.field.clone())
    }
}

/// Sparse polynomial with exact coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        Ring::compatible(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(Monomial::one(ring.nvars()), c);
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn from_int(ring: &Arc<Ring>, n: i64) -> Self {
        Polynomial::constant(ring, ring.field().from_int(n))
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var_power(ring.nvars(), index, 1), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.ring.field()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let field = self.ring.field().clone();
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = field.add(o.get(), &c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            Ring::compatible(&self.ring, &other.ring),
            "polynomial arithmetic across incompatible rings"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.field().clone();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let field = self.field().clone();
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), field.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.field().clone();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), field.mul(x, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var_index: usize) -> Result<Polynomial> {
        let nvars = self.ring.nvars();
        if var_index >= nvars {
            return Err(Error::VariableOutOfRange {
                index: var_index,
                nvars,
            });
        }
        let field = self.field().clone();
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(var_index);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[var_index] -= 1;
            out.add_term(dm, field.scale(c, &BigRational::from_integer(e.into())));
        }
        Ok(out)
    }

    /// All first partials, in variable order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.ring.nvars())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// The weighted degree shared by every term, or `None` when terms disagree.
    /// The zero polynomial reports degree 0.
    pub fn is_weighted_homogeneous(&self, weights: &[u64]) -> Option<u64> {
        if weights.len() != self.ring.nvars() {
            return None;
        }
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(weights));
        let Some(first) = degrees.next() else { return Some(0) };
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> Option<u64> {
        self.is_weighted_homogeneous(&vec![1; self.ring.nvars()])
    }

    /// Exact composition: each variable in `assignments` is replaced by its
    /// polynomial, the others are kept. Replacement polynomials live in
    /// `target`, which must share the coefficient field; unassigned variables
    /// are mapped by name into `target`.
    pub fn substitute_into(&self, target: &Arc<Ring>, assignments: &BTreeMap<usize, Polynomial>) -> Result<Polynomial> {
        if self.field() != target.field() {
            return Err(Error::RingMismatch("coefficient fields differ".into()));
        }
        let nvars = self.ring.nvars();
        let mut images = Vec::with_capacity(nvars);
        for i in 0..nvars {
            match assignments.get(&i) {
                Some(p) => {
                    if !Ring::compatible(p.ring(), target) {
                        return Err(Error::RingMismatch(format!(
                            "assignment for {} lives in a different ring",
                            self.ring.vars[i]
                        )));
                    }
                    images.push(p.clone());
                }
                None => {
                    let name = &self.ring.vars[i];
                    let j = target.var_index(name).ok_or_else(|| {
                        Error::RingMismatch(format!("variable {name} has no image in the target ring"))
                    })?;
                    images.push(Polynomial::var(target, j));
                }
            }
        }
        if let Some(i) = assignments.keys().find(|&&i| i >= nvars) {
            return Err(Error::VariableOutOfRange { index: *i, nvars });
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Substitution within the polynomial's own ring.
    pub fn substitute(&self, assignments: &BTreeMap<usize, Polynomial>) -> Result<Polynomial> {
        self.substitute_into(&self.ring.clone(), assignments)
    }

    /// Sets variable `index` to 1 and drops it from the ring (affine chart).
    pub fn dehomogenize(&self, index: usize) -> Result<Polynomial> {
        let nvars = self.ring.nvars();
        if index >= nvars {
            return Err(Error::VariableOutOfRange { index, nvars });
        }
        let target = self.ring.without_var(index);
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let e: Vec<u32> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != index)
                .map(|(_, &e)| e)
                .collect();
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `target` by matching variable names.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        self.substitute_into(target, &BTreeMap::new())
    }

    /// True when the constant term is zero.
    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Evaluates at a point given by field coordinates.
    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        let field = self.field().clone();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Terms sorted in decreasing order under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &FieldElement)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (order.key(m), m, c)).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v.into_iter().map(|(_, m, c)| (m, c)).collect()
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Divides by the leading coefficient under `order`.
    pub fn make_monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.field().inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Canonical text with terms in decreasing order under `order`.
    pub fn to_text(&self, order: &MonomialOrder) -> String {
        let mut s = String::new();
        if self.is_zero() {
            return "0".to_string();
        }
        let field = self.field();
        let gen = field.name();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let mono = m.display(self.ring.vars()).to_string();
            match c.as_rational() {
                Some(q) => {
                    let neg = q.is_negative();
                    if i == 0 {
                        if neg {
                            s.push('-');
                        }
                    } else {
                        s.push_str(if neg { " - " } else { " + " });
                    }
                    let abs = q.abs();
                    if m.is_one() {
                        s.push_str(&abs.to_string());
                    } else if abs.is_one() {
                        s.push_str(&mono);
                    } else {
                        s.push_str(&format!("{abs}*{mono}"));
                    }
                }
                None => {
                    if i > 0 {
                        s.push_str(" + ");
                    }
                    s.push('(');
                    c.fmt_with(gen, &mut s).expect("writing to a String");
                    s.push(')');
                    if !m.is_one() {
                        s.push('*');
                        s.push_str(&mono);
                    }
                }
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&MonomialOrder::degrevlex(self.ring.nvars())))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(self, rhs)
            }
        }
        impl std::ops::$trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                Polynomial::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

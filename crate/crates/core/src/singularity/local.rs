use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, QuotientRing, DEFAULT_PAIR_BUDGET};
use crate::poly::linalg::{solve_unique, Matrix};
use crate::poly::{parse_document, MonomialOrder, Polynomial, UniPoly};

/// An isolated hypersurface germ at the origin of affine space.
#[derive(Clone, Debug)]
pub struct LocalModel {
    germ: Polynomial,
    weights: Option<Vec<u64>>,
    /// Variable positions read by the cA rule: two quadratic slots, then two binary-form slots.
    change: Option<Vec<usize>>,
}

impl LocalModel {
    pub fn new(germ: Polynomial) -> Result<Self> {
        if germ.is_zero() {
            return Err(Error::InvalidLocalModel("zero germ".into()));
        }
        if !germ.vanishes_at_origin() {
            return Err(Error::InvalidLocalModel("germ does not vanish at the origin".into()));
        }
        if germ.gradient().iter().any(|d| !d.vanishes_at_origin()) {
            return Err(Error::InvalidLocalModel("origin is not a critical point".into()));
        }
        Ok(LocalModel {
            germ,
            weights: None,
            change: None,
        })
    }

    pub fn with_weights(mut self, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != self.germ.ring().nvars() || weights.contains(&0) {
            return Err(Error::InvalidLocalModel(
                "weights must be positive, one per variable".into(),
            ));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn with_change(mut self, change: Vec<usize>) -> Result<Self> {
        let n = self.germ.ring().nvars();
        let mut seen = change.clone();
        seen.sort_unstable();
        if seen != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidLocalModel(
                "change must be a permutation of the variables".into(),
            ));
        }
        self.change = Some(change);
        Ok(self)
    }

    /// Reads a `.lm` document: one germ, optional `weights:` and `change:` headers.
    /// `change: y,x,w,z` lists the variables in cA-rule slot order.
    pub fn from_text(text: &str) -> Result<Self> {
        let doc = parse_document(text)?;
        let mut m = LocalModel::new(doc.single()?.clone())?;
        if let Some(w) = doc.header("weights") {
            let w = w
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidLocalModel(format!("bad weights {w:?}")))?;
            m = m.with_weights(w)?;
        }
        if let Some(c) = doc.header("change") {
            let ring = doc.ring.clone();
            let perm = c
                .split(',')
                .map(|v| ring.var_index(v.trim()))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::InvalidLocalModel(format!("unknown variable in change {c:?}")))?;
            m = m.with_change(perm)?;
        }
        Ok(m)
    }

    pub fn germ(&self) -> &Polynomial {
        &self.germ
    }

    pub fn weights(&self) -> Option<&[u64]> {
        self.weights.as_deref()
    }

    fn order(&self) -> MonomialOrder {
        MonomialOrder::degrevlex(self.germ.ring().nvars())
    }

    fn localized_quotient(&self, gens: &[Polynomial], budget: usize) -> Result<QuotientRing> {
        let gb = GroebnerBasis::compute_with_budget(gens, &self.order(), budget)?;
        let q = gb.quotient_ring()?;
        let ring = self.germ.ring();
        for i in 0..ring.nvars() {
            let m = q.minimal_polynomial(&Polynomial::var(ring, i));
            let pure = m.coefficients().iter().rev().skip(1).all(|c| c.is_zero());
            if !pure {
                return Err(Error::NotLocalized);
            }
        }
        Ok(q)
    }

    pub fn milnor_number(&self) -> Result<usize> {
        self.milnor_number_with_budget(DEFAULT_PAIR_BUDGET)
    }

    pub fn milnor_number_with_budget(&self, budget: usize) -> Result<usize> {
        Ok(self.localized_quotient(&self.germ.gradient(), budget)?.dimension())
    }

    pub fn tyurina_number(&self) -> Result<usize> {
        self.tyurina_number_with_budget(DEFAULT_PAIR_BUDGET)
    }

    pub fn tyurina_number_with_budget(&self, budget: usize) -> Result<usize> {
        self.localized_quotient(&self.germ.gradient(), budget)?;
        let mut gens = vec![self.germ.clone()];
        gens.extend(self.germ.gradient());
        let gb = GroebnerBasis::compute_with_budget(&gens, &self.order(), budget)?;
        Ok(gb.quotient_ring()?.dimension())
    }

    /// Hessian matrix evaluated at the origin.
    pub fn hessian_at_origin(&self) -> Matrix {
        let field = self.germ.field().clone();
        let rows = super::hypersurface::hessian(&self.germ)
            .iter()
            .map(|row| row.iter().map(Polynomial::constant_term).collect())
            .collect();
        Matrix::from_rows(&field, rows)
    }

    pub fn hessian_corank(&self) -> usize {
        self.germ.ring().nvars() - self.hessian_at_origin().rank()
    }

    /// Weights and degree making the germ quasi-homogeneous: the supplied
    /// weights when present, otherwise the unique rational solution of
    /// `Σ e_i q_i = 1` over the germ's monomials, scaled to coprime integers.
    pub fn quasi_homogeneous_weights(&self) -> Option<(Vec<u64>, u64)> {
        if let Some(w) = &self.weights {
            let d = self.germ.is_weighted_homogeneous(w)?;
            return Some((w.clone(), d));
        }
        let field = self.germ.field().clone();
        let n = self.germ.ring().nvars();
        let rows: Vec<Vec<_>> = self
            .germ
            .terms()
            .map(|(m, _)| m.exponents().iter().map(|&e| field.from_int(i64::from(e))).collect())
            .collect();
        let rhs = vec![field.one(); rows.len()];
        let q = solve_unique(&Matrix::from_rows(&field, rows), &rhs)?;
        let q: Vec<BigRational> = q.iter().map(|x| x.as_rational().cloned()).collect::<Option<_>>()?;
        if q.iter().any(|x| !x.is_positive()) {
            return None;
        }
        let d = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let w: Vec<BigInt> = q
            .iter()
            .map(|x| (x * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        let g = w.iter().fold(d.clone(), |acc, x| acc.gcd(x));
        let w: Vec<u64> = w.iter().map(|x| (x / &g).to_u64()).collect::<Option<_>>()?;
        let d = (d / g).to_u64()?;
        debug_assert_eq!(w.len(), n);
        Some((w, d))
    }

    /// Milnor–Orlik value `Π (d/w_i − 1)` for a quasi-homogeneous germ.
    pub fn milnor_orlik_check(&self) -> Option<u64> {
        let (w, d) = self.quasi_homogeneous_weights()?;
        let mut prod = BigRational::one();
        for &wi in &w {
            if wi >= d {
                return None;
            }
            prod *= BigRational::new(BigInt::from(d - wi), BigInt::from(wi));
        }
        prod.is_integer().then(|| prod.to_integer().to_u64()).flatten()
    }

    /// `k` for a germ recognised as `cA_k`, otherwise `None`.
    ///
    /// Corank 0 is a node. A threefold germ of corank 1 keeps a rank-3
    /// quadratic part on a general hyperplane section, so it is `cA_1` too.
    /// Otherwise the germ must split as a
    /// nondegenerate binary quadratic in the first two slots plus a squarefree
    /// binary form of degree `k+1` in the last two, with `μ = k²`.
    pub fn classify_ca(&self) -> Result<Option<u32>> {
        let mu = self.milnor_number()?;
        let corank = self.hessian_corank();
        if corank == 0 {
            return Ok(Some(1));
        }
        let n = self.germ.ring().nvars();
        if corank == 1 && n == 4 {
            return Ok(Some(1));
        }
        if corank > 2 || n != 4 {
            return Ok(None);
        }
        let slots = self.change.clone().unwrap_or_else(|| (0..n).collect());
        let (quad_vars, form_vars) = ([slots[0], slots[1]], [slots[2], slots[3]]);
        let mut quad = Polynomial::zero(self.germ.ring());
        let mut form = Polynomial::zero(self.germ.ring());
        for (m, c) in self.germ.terms() {
            let uses = |vs: [usize; 2]| (0..n).all(|i| vs.contains(&i) || m.exponent(i) == 0);
            if uses(quad_vars) {
                quad.add_term(m.clone(), c.clone());
            } else if uses(form_vars) {
                form.add_term(m.clone(), c.clone());
            } else {
                return Ok(None);
            }
        }
        if quad.is_homogeneous() != Some(2) || !nondegenerate_binary_quadratic(&quad, quad_vars) {
            return Ok(None);
        }
        let Some(deg) = form.is_homogeneous().filter(|&d| d >= 2) else {
            return Ok(None);
        };
        if !squarefree_binary_form(&form, form_vars)? {
            return Ok(None);
        }
        let k = deg as u32 - 1;
        Ok((mu == (k * k) as usize).then_some(k))
    }

    /// Milnor, Tyurina, corank and quasi-homogeneity, with `τ ≤ μ` and
    /// `τ = μ` for quasi-homogeneous germs checked.
    pub fn invariants(&self) -> Result<LocalInvariants> {
        self.invariants_with_budget(DEFAULT_PAIR_BUDGET)
    }

    pub fn invariants_with_budget(&self, budget: usize) -> Result<LocalInvariants> {
        let milnor = self.milnor_number_with_budget(budget)?;
        let tyurina = self.tyurina_number_with_budget(budget)?;
        let weighted_homogeneous = self.quasi_homogeneous_weights();
        if tyurina > milnor || (weighted_homogeneous.is_some() && tyurina != milnor) {
            return Err(Error::Inconsistent(format!("tau={tyurina} against mu={milnor}")));
        }
        Ok(LocalInvariants {
            milnor,
            tyurina,
            hessian_corank: self.hessian_corank(),
            weighted_homogeneous,
            ca_type: self.classify_ca()?,
        })
    }
}

fn nondegenerate_binary_quadratic(q: &Polynomial, vars: [usize; 2]) -> bool {
    let field = q.field();
    let nv = q.ring().nvars();
    let coef = |a: u32, b: u32| {
        let mut e = vec![0; nv];
        e[vars[0]] = a;
        e[vars[1]] = b;
        q.coefficient(&crate::poly::Monomial::new(e))
    };
    let (a, b, c) = (coef(2, 0), coef(1, 1), coef(0, 2));
    let disc = field.sub(
        &field.mul(&b, &b),
        &field.scale(&field.mul(&a, &c), &BigRational::from_integer(4.into())),
    );
    !disc.is_zero()
}

// A binary form is squarefree iff its dehomogenization is squarefree and
// loses at most one degree (a simple root at infinity).
fn squarefree_binary_form(p: &Polynomial, vars: [usize; 2]) -> Result<bool> {
    let deg = p.is_homogeneous().unwrap_or(0) as usize;
    let ring = p.ring();
    let mut at = BTreeMap::new();
    at.insert(vars[1], Polynomial::one(ring));
    let affine = UniPoly::from_polynomial(&p.substitute(&at)?, vars[0])?;
    Ok(match affine.degree() {
        Some(d) if d + 1 >= deg => affine.is_squarefree(),
        _ => false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalInvariants {
    pub milnor: usize,
    pub tyurina: usize,
    pub hessian_corank: usize,
    pub weighted_homogeneous: Option<(Vec<u64>, u64)>,
    pub ca_type: Option<u32>,
}

impl LocalInvariants {
    pub fn type_label(&self) -> String {
        match self.ca_type {
            Some(1) if self.milnor == 1 => "node (cA1)".to_string(),
            Some(k) => format!("cA{k}"),
            None if self.hessian_corank <= 2 => "cDV, type undetermined".to_string(),
            None => "type undetermined".to_string(),
        }
    }
}

impl fmt::Display for LocalInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mu={} tau={}", self.milnor, self.tyurina)?;
        writeln!(f, "hessian corank: {}", self.hessian_corank)?;
        match &self.weighted_homogeneous {
            Some((w, d)) => {
                let w: Vec<String> = w.iter().map(u64::to_string).collect();
                writeln!(f, "quasi-homogeneous: weights ({}) degree {d}", w.join(","))?;
            }
            None => writeln!(f, "quasi-homogeneous: no")?,
        }
        writeln!(f, "type: {}", self.type_label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::poly;
    use crate::poly::Ring;

    fn germ(text: &str) -> LocalModel {
        let r = Ring::rational(&["x", "y", "z", "w"]);
        LocalModel::new(poly(&r, text)).unwrap()
    }

    #[test]
    fn milnor_and_tyurina() {
        assert_eq!(germ("x^2 + y^2 + z^2 + w^2").milnor_number().unwrap(), 1);
        assert_eq!(germ("x^2 - y^2 - z^5 + w^5").milnor_number().unwrap(), 16);
        assert_eq!(germ("x^2 + y^2 + z^2 + w^3").milnor_number().unwrap(), 2);
        assert_eq!(germ("x^2 - y^2 - z^5 + w^5").tyurina_number().unwrap(), 16);
        assert_eq!(germ("x^2 + y^2 + z^2 + w^5").tyurina_number().unwrap(), 4);
    }

    #[test]
    fn extra_critical_points_are_rejected() {
        // x^5 + y^5 + x^2 y^2 has critical points away from the origin
        let r = Ring::rational(&["x", "y"]);
        let m = LocalModel::new(poly(&r, "x^5 + y^5 + x^2*y^2")).unwrap();
        assert_eq!(m.milnor_number(), Err(Error::NotLocalized));
        assert_eq!(m.tyurina_number(), Err(Error::NotLocalized));
        assert_eq!(m.milnor_orlik_check(), None);
    }

    #[test]
    fn milnor_orlik() {
        let m = germ("x^2 - y^2 - z^5 + w^5");
        assert_eq!(m.quasi_homogeneous_weights(), Some((vec![5, 5, 2, 2], 10)));
        assert_eq!(m.milnor_orlik_check(), Some(16));
        assert_eq!(germ("x^2 + y^2 + z^2 + w^2").milnor_orlik_check(), Some(1));
        let r = Ring::rational(&["x", "y", "z"]);
        assert_eq!(
            LocalModel::new(poly(&r, "x^3 + y^3 + z^3"))
                .unwrap()
                .milnor_orlik_check(),
            Some(8)
        );
    }

    #[test]
    fn corank_and_ca() {
        assert_eq!(germ("x^2 + y^2 + z^2 + w^2").hessian_corank(), 0);
        assert_eq!(germ("x^2 - y^2 - z^5 + w^5").hessian_corank(), 2);
        assert_eq!(germ("x^2 + y^2 + z^2 + w^3").hessian_corank(), 1);
        assert_eq!(germ("x^2 + y^2 + z^2 + w^2").classify_ca().unwrap(), Some(1));
        assert_eq!(germ("x^2 - y^2 - z^5 + w^5").classify_ca().unwrap(), Some(4));
        let a4 = germ("x^2 + y^2 + z^2 + w^5");
        assert_eq!(a4.classify_ca().unwrap(), Some(1));
        assert_eq!(a4.invariants().unwrap().type_label(), "cA1");
        let nami = germ("x^2 - z^2 - y^3 + w^3");
        assert_eq!(nami.classify_ca().unwrap(), None);
        assert_eq!(nami.milnor_number().unwrap(), 4);
        assert_eq!(nami.invariants().unwrap().type_label(), "cDV, type undetermined");
    }

    #[test]
    fn not_localized() {
        // critical points at the origin and at x = 2/3
        let r = Ring::rational(&["x", "y"]);
        let m = LocalModel::new(poly(&r, "x^2 - x^3 + y^2")).unwrap();
        assert_eq!(m.milnor_number(), Err(Error::NotLocalized));
        assert!(LocalModel::new(poly(&r, "x + y^2")).is_err());
        assert!(LocalModel::new(poly(&r, "x^2 + 1")).is_err());
    }

    #[test]
    fn reads_change_header() {
        let text = "vars: x,y,z,w\nchange: x,z,y,w\nx^2 - z^2 - y^3 + w^3\n";
        let m = LocalModel::from_text(text).unwrap();
        assert_eq!(m.classify_ca().unwrap(), Some(2));
    }
}

//! Reduced Gröbner bases and zero-dimensional ideal analytics.
//!
//! [`GroebnerBasis::compute`] runs Buchberger's algorithm. For
//! zero-dimensional ideals, [`QuotientRing`] exposes the standard-monomial
//! basis of `k[x]/I`, multiplication matrices, minimal polynomials, unit
//! tests and the distinct-point count.

mod buchberger;
mod quotient;

use std::sync::Arc;

pub use buchberger::{BuchbergerStats, DEFAULT_PAIR_BUDGET};
pub use quotient::{PointCount, QuotientBasis, QuotientRing, RadicalCertificate};

use buchberger::OrderedPoly;

use crate::error::{Error, Result};
use crate::poly::parse::write_document;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, UniPoly};

/// A reduced, monic Gröbner basis under a fixed monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    internal: Vec<OrderedPoly>,
    stats: BuchbergerStats,
}

impl GroebnerBasis {
    /// Computes the reduced basis of the ideal generated by `generators`
    /// with the default pair budget.
    pub fn compute(generators: &[Polynomial], order: &MonomialOrder) -> Result<Self> {
        Self::compute_with_budget(generators, order, DEFAULT_PAIR_BUDGET)
    }

    pub fn compute_with_budget(generators: &[Polynomial], order: &MonomialOrder, budget: usize) -> Result<Self> {
        let ring = match generators.first() {
            Some(p) => p.ring().clone(),
            None => return Err(Error::RingMismatch("no generators given".into())),
        };
        if let Some(bad) = generators.iter().find(|p| !Ring::compatible(p.ring(), &ring)) {
            return Err(Error::RingMismatch(format!(
                "generator {bad} lives in a different ring"
            )));
        }
        if order.nvars() != ring.nvars() {
            return Err(Error::RingMismatch(
                "monomial order and ring disagree on variable count".into(),
            ));
        }
        let (internal, stats) = buchberger::run(generators, order, &ring, budget)?;
        let gb = GroebnerBasis {
            generators: internal.iter().map(|g| g.to_polynomial(&ring)).collect(),
            ring,
            order: order.clone(),
            internal,
            stats,
        };
        for g in generators {
            if !gb.normal_form(g).is_zero() {
                return Err(Error::Inconsistent(format!(
                    "input generator {g} does not reduce to zero"
                )));
            }
        }
        Ok(gb)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn stats(&self) -> BuchbergerStats {
        self.stats
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].lead().mono.is_one()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.internal.iter().map(|g| &g.lead().mono).collect()
    }

    /// Remainder of `f` modulo the basis; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert!(
            Ring::compatible(f.ring(), &self.ring),
            "normal form across incompatible rings"
        );
        let o = OrderedPoly::from_polynomial(f, &self.order);
        let reducers: Vec<&OrderedPoly> = self.internal.iter().collect();
        buchberger::reduce(&o, &reducers, self.ring.field()).to_polynomial(&self.ring)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Standard monomials and their count, when finitely many.
    pub fn quotient_dimension(&self) -> Option<(usize, QuotientBasis)> {
        let basis = QuotientBasis::enumerate(&self.leading_monomials(), self.ring.nvars(), &self.order)?;
        Some((basis.len(), basis))
    }

    pub fn is_zero_dimensional(&self) -> bool {
        quotient::is_zero_dimensional(&self.leading_monomials(), self.ring.nvars())
    }

    /// Zero-dimensional quotient ring, or `PositiveDimensional`.
    pub fn quotient_ring(&self) -> Result<QuotientRing> {
        QuotientRing::new(self.clone())
    }

    /// True iff `I + (g)` is the unit ideal, i.e. `g` vanishes at no point of
    /// the zero-dimensional variety. Decided by invertibility of the
    /// multiplication-by-`g` matrix on `k[x]/I`.
    pub fn is_unit_modulo(&self, g: &Polynomial) -> Result<bool> {
        Ok(self.quotient_ring()?.is_unit(g))
    }

    /// Serialized form: ring headers, an `order:` header, one generator per line.
    pub fn to_text(&self) -> String {
        let headers = vec![("order".to_string(), self.order.describe(self.ring.vars()))];
        write_document(&self.ring, &headers, &self.generators, &self.order)
    }
}

/// Monic generator of `I ∩ k[x_keep]`, computed from a reduced basis under
/// an order eliminating every other variable.
pub fn eliminant(generators: &[Polynomial], keep_variable: usize) -> Result<UniPoly> {
    eliminant_with_budget(generators, keep_variable, DEFAULT_PAIR_BUDGET)
}

pub fn eliminant_with_budget(generators: &[Polynomial], keep_variable: usize, budget: usize) -> Result<UniPoly> {
    let ring = generators
        .first()
        .ok_or_else(|| Error::RingMismatch("no generators given".into()))?
        .ring()
        .clone();
    let nvars = ring.nvars();
    if keep_variable >= nvars {
        return Err(Error::VariableOutOfRange {
            index: keep_variable,
            nvars,
        });
    }
    let order = MonomialOrder::eliminating_all_but(nvars, keep_variable);
    let gb = GroebnerBasis::compute_with_budget(generators, &order, budget)?;
    if !gb.is_zero_dimensional() {
        return Err(Error::PositiveDimensional);
    }
    let only_keep = |p: &Polynomial| {
        p.terms().all(|(m, _)| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| i == keep_variable || e == 0)
        })
    };
    // the smallest generator lies in the subring for an elimination order
    let g = gb
        .generators()
        .iter()
        .find(|p| only_keep(p))
        .ok_or(Error::PositiveDimensional)?;
    Ok(UniPoly::from_polynomial(g, keep_variable)?.monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::poly;

    fn texts(gb: &GroebnerBasis) -> Vec<String> {
        gb.generators().iter().map(|g| g.to_text(gb.order())).collect()
    }

    #[test]
    fn already_a_basis() {
        let r = Ring::rational(&["x", "y"]);
        let gb = GroebnerBasis::compute(&[poly(&r, "x^2"), poly(&r, "x*y")], &MonomialOrder::degrevlex(2)).unwrap();
        assert_eq!(texts(&gb), vec!["x*y", "x^2"]);
    }

    #[test]
    fn unit_ideal() {
        let r = Ring::rational(&["x"]);
        let gb = GroebnerBasis::compute(&[poly(&r, "x - 1"), poly(&r, "x")], &MonomialOrder::degrevlex(1)).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(texts(&gb), vec!["1"]);
        assert_eq!(gb.quotient_dimension().unwrap().0, 0);
    }

    #[test]
    fn jacobian_of_ca4_germ() {
        let r = Ring::rational(&["x", "y", "z", "w"]);
        let f = poly(&r, "x^2 - y^2 - z^5 + w^5");
        let gb = GroebnerBasis::compute(&f.gradient(), &MonomialOrder::degrevlex(4)).unwrap();
        assert_eq!(texts(&gb), vec!["y", "x", "w^4", "z^4"]);
        assert_eq!(gb.normal_form(&poly(&r, "z^5")), Polynomial::zero(&r));
        assert_eq!(gb.normal_form(&poly(&r, "z^3*w^3")), poly(&r, "z^3*w^3"));
        let (dim, basis) = gb.quotient_dimension().unwrap();
        assert_eq!(dim, 16);
        assert!(basis
            .monomials()
            .iter()
            .all(|m| m.exponent(0) == 0 && m.exponent(1) == 0 && m.exponent(2) <= 3 && m.exponent(3) <= 3));
    }

    #[test]
    fn staircase_of_monomial_ideal() {
        let r = Ring::rational(&["x", "y"]);
        let gb = GroebnerBasis::compute(&[poly(&r, "x^2"), poly(&r, "y^3")], &MonomialOrder::degrevlex(2)).unwrap();
        assert_eq!(gb.quotient_dimension().unwrap().0, 6);
        let gb = GroebnerBasis::compute(&[poly(&r, "x^2")], &MonomialOrder::degrevlex(2)).unwrap();
        assert!(gb.quotient_dimension().is_none());
    }

    #[test]
    fn eliminants() {
        let r = Ring::rational(&["x", "y"]);
        let e = eliminant(&[poly(&r, "x - 1"), poly(&r, "y - 2")], 1).unwrap();
        assert_eq!(e.to_polynomial(&r, 1), poly(&r, "y - 2"));
        let e = eliminant(&[poly(&r, "x^2 - 1"), poly(&r, "y - x")], 1).unwrap();
        assert_eq!(e.to_polynomial(&r, 1), poly(&r, "y^2 - 1"));
        assert_eq!(eliminant(&[poly(&r, "x*y")], 1), Err(Error::PositiveDimensional));
    }

    #[test]
    fn unit_tests_modulo_ideal() {
        let r = Ring::rational(&["x", "y"]);
        let gb = GroebnerBasis::compute(&[poly(&r, "x"), poly(&r, "y")], &MonomialOrder::degrevlex(2)).unwrap();
        assert!(gb.is_unit_modulo(&poly(&r, "1")).unwrap());
        assert!(!gb.is_unit_modulo(&poly(&r, "x")).unwrap());
        assert!(gb.is_unit_modulo(&poly(&r, "x + 3")).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let r = Ring::rational(&["x", "y", "z"]);
        let gens = [
            poly(&r, "x^2 + y*z - 1"),
            poly(&r, "y^2 + x*z - 2"),
            poly(&r, "z^2 + x*y - 3"),
        ];
        let err = GroebnerBasis::compute_with_budget(&gens, &MonomialOrder::degrevlex(3), 1).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 1 });
        assert!(GroebnerBasis::compute(&gens, &MonomialOrder::degrevlex(3)).is_ok());
    }

    #[test]
    fn text_form_has_order_header() {
        let r = Ring::rational(&["x", "y"]);
        let gb = GroebnerBasis::compute(&[poly(&r, "x^2 - 1"), poly(&r, "y - x")], &MonomialOrder::lex(2)).unwrap();
        assert_eq!(gb.to_text(), "vars: x,y\norder: lex\ny^2 - 1\nx - y\n");
    }
}

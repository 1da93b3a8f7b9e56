use std::sync::Arc;

use super::field::{FieldElement, NumberField};
use super::monomial::Monomial;
use super::polynomial::{Polynomial, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a number field, coefficients low to high,
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Arc<NumberField>,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<FieldElement>) -> Self {
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        UniPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Reads a polynomial that involves only variable `var`.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Result<Self> {
        let field = p.field().clone();
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            if m.exponents().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(Error::RingMismatch(
                    "polynomial is not univariate in the requested variable".into(),
                ));
            }
            let e = m.exponent(var) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, field.zero());
            }
            coeffs[e] = c.clone();
        }
        Ok(UniPoly::new(&field, coeffs))
    }

    /// Embeds as a polynomial in variable `var` of `ring`.
    pub fn to_polynomial(&self, ring: &Arc<Ring>, var: usize) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var_power(ring.nvars(), var, i as u32), c.clone())),
        )
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                UniPoly::new(
                    &self.field,
                    self.coeffs.iter().map(|c| self.field.mul(c, &inv)).collect(),
                )
            }
        }
    }

    pub fn div_rem(&self, other: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let f = &self.field;
        let db = other.degree().ok_or(Error::DivisionByZero)?;
        let inv = f.inv(other.leading_coefficient().unwrap())?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((UniPoly::zero(f), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = f.mul(r.last().unwrap(), &inv);
            if !c.is_zero() {
                for (i, b) in other.coeffs.iter().enumerate() {
                    r[k + i] = f.sub(&r[k + i], &f.mul(&c, b));
                }
            }
            q[k] = c;
            r.pop();
        }
        Ok((UniPoly::new(f, q), UniPoly::new(f, r)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = std::mem::replace(&mut b, r.monic());
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic. Its degree counts the distinct roots of `p`.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem(&g).expect("gcd is nonzero");
        q.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::poly;

    #[test]
    fn squarefree_part_counts_distinct_roots() {
        let r = Ring::rational(&["l"]);
        let p = UniPoly::from_polynomial(&poly(&r, "l^5 - l^3"), 0).unwrap();
        assert_eq!(p.squarefree_part().degree(), Some(3));
        assert!(!p.is_squarefree());
        let q = UniPoly::from_polynomial(&poly(&r, "l^6 - 1"), 0).unwrap();
        assert!(q.is_squarefree());
        assert_eq!(q.squarefree_part().to_polynomial(&r, 0), poly(&r, "l^6 - 1"));
    }

    #[test]
    fn rejects_multivariate_input() {
        let r = Ring::rational(&["x", "y"]);
        assert!(UniPoly::from_polynomial(&poly(&r, "x*y"), 0).is_err());
    }
}

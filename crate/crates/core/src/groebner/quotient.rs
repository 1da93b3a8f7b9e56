use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::poly::linalg::{DependencyTracker, Matrix};
use crate::poly::{FieldElement, Monomial, MonomialOrder, Polynomial, UniPoly};

/// Number of random linear forms tried before falling back to the exact radical.
pub const LINEAR_FORM_ATTEMPTS: u64 = 3;

pub(crate) fn is_zero_dimensional(leads: &[&Monomial], nvars: usize) -> bool {
    (0..nvars).all(|i| leads.iter().any(|m| m.pure_power_of() == Some(i)))
}

/// Monomials outside the initial ideal, sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub(crate) fn enumerate(leads: &[&Monomial], nvars: usize, order: &MonomialOrder) -> Option<Self> {
        if leads.iter().any(|m| m.is_one()) {
            return Some(QuotientBasis { monomials: Vec::new() });
        }
        if !is_zero_dimensional(leads, nvars) {
            return None;
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; nvars];
        walk(leads, &mut exps, 0, &mut out);
        out.sort_by_key(|m| order.key(m));
        Some(QuotientBasis { monomials: out })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

// Standard monomials form an order ideal, so each coordinate can be raised
// until the truncated monomial becomes divisible by a leading monomial.
fn walk(leads: &[&Monomial], exps: &mut Vec<u32>, var: usize, out: &mut Vec<Monomial>) {
    if var == exps.len() {
        out.push(Monomial::new(exps.clone()));
        return;
    }
    let mut e = 0;
    loop {
        exps[var] = e;
        let m = Monomial::new(exps.clone());
        if leads.iter().any(|l| l.divides(&m)) {
            break;
        }
        walk(leads, exps, var + 1, out);
        e += 1;
    }
    exps[var] = 0;
}

/// How radicality (and hence the distinct-point count) was settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalCertificate {
    /// The minimal polynomial of a random linear form (coefficients listed)
    /// is squarefree of degree equal to the quotient dimension. Sound.
    SquarefreeLinearForm { coefficients: Vec<i64>, attempt: u64 },
    /// No tried linear form certified; the exact radical
    /// `I + (sqfree(m_1)(x_1), ..., sqfree(m_n)(x_n))` was computed instead.
    SeidenbergRadical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    /// Distinct solution points over the algebraic closure.
    pub distinct: usize,
    /// Dimension of the quotient ring, i.e. points counted with multiplicity.
    pub multiplicity_total: usize,
    pub radical: bool,
    pub certificate: RadicalCertificate,
}

/// `k[x]/I` for a zero-dimensional ideal `I`, with coordinates in the
/// standard-monomial basis.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    gb: GroebnerBasis,
    basis: QuotientBasis,
    index: HashMap<Monomial, usize>,
}

impl QuotientRing {
    pub fn new(gb: GroebnerBasis) -> Result<Self> {
        let basis = QuotientBasis::enumerate(&gb.leading_monomials(), gb.ring().nvars(), gb.order())
            .ok_or(Error::PositiveDimensional)?;
        let index = basis
            .monomials()
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(QuotientRing { gb, basis, index })
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the normal form of `p`.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<FieldElement> {
        let nf = self.gb.normal_form(p);
        self.coordinates_of_reduced(&nf)
    }

    fn coordinates_of_reduced(&self, nf: &Polynomial) -> Vec<FieldElement> {
        let field = self.gb.ring().field();
        let mut v = vec![field.zero(); self.dimension()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Matrix of multiplication by `g`; column `j` holds the coordinates of `g * b_j`.
    pub fn multiplication_matrix(&self, g: &Polynomial) -> Matrix {
        let field = self.gb.ring().field();
        let n = self.dimension();
        let g = self.gb.normal_form(g);
        let mut m = Matrix::zeros(field, n, n);
        for (j, b) in self.basis.monomials().iter().enumerate() {
            let col = self.coordinates(&g.mul_monomial(b));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// True iff `g` is invertible in the quotient, i.e. vanishes at no solution point.
    pub fn is_unit(&self, g: &Polynomial) -> bool {
        self.multiplication_matrix(g).is_invertible()
    }

    /// Monic minimal polynomial of the class of `g`, from the first linear
    /// dependency among `1, g, g^2, ...`.
    pub fn minimal_polynomial(&self, g: &Polynomial) -> UniPoly {
        let field = self.gb.ring().field().clone();
        let ring = self.gb.ring();
        let g = self.gb.normal_form(g);
        let mut tracker = DependencyTracker::new(&field);
        let mut power = self.gb.normal_form(&Polynomial::one(ring));
        loop {
            match tracker.push(self.coordinates_of_reduced(&power)) {
                Ok(()) => power = self.gb.normal_form(&power.mul(&g)),
                Err(dep) => {
                    // g^k = Σ dep_i g^i  =>  t^k - Σ dep_i t^i
                    let mut coeffs: Vec<FieldElement> = dep.iter().map(|c| field.neg(c)).collect();
                    coeffs.push(field.one());
                    return UniPoly::new(&field, coeffs);
                }
            }
        }
    }

    /// Exact radical via Seidenberg's lemma (characteristic zero).
    pub fn radical(&self) -> Result<GroebnerBasis> {
        self.radical_from(&self.variable_minimal_polynomials())
    }

    fn variable_minimal_polynomials(&self) -> Vec<UniPoly> {
        let ring = self.gb.ring();
        (0..ring.nvars())
            .map(|i| self.minimal_polynomial(&Polynomial::var(ring, i)))
            .collect()
    }

    fn radical_from(&self, minimal: &[UniPoly]) -> Result<GroebnerBasis> {
        let ring = self.gb.ring();
        let mut gens: Vec<Polynomial> = self.gb.generators().to_vec();
        for (i, m) in minimal.iter().enumerate() {
            gens.push(m.squarefree_part().to_polynomial(ring, i));
        }
        GroebnerBasis::compute(&gens, self.gb.order())
    }

    /// Counts distinct points. A random linear form with squarefree minimal
    /// polynomial of full degree certifies radicality; after
    /// [`LINEAR_FORM_ATTEMPTS`] failures the exact radical decides. When some
    /// coordinate already has a repeated root the ideal cannot be radical and
    /// the linear forms are skipped. The result is independent of `seed`;
    /// only the certificate may differ.
    pub fn count_points(&self, seed: u64) -> Result<PointCount> {
        let dim = self.dimension();
        let ring = self.gb.ring();
        if dim == 0 {
            return Ok(PointCount {
                distinct: 0,
                multiplicity_total: 0,
                radical: true,
                certificate: RadicalCertificate::SquarefreeLinearForm {
                    coefficients: vec![0; ring.nvars()],
                    attempt: 0,
                },
            });
        }
        let minimal = self.variable_minimal_polynomials();
        let attempts = if minimal.iter().all(UniPoly::is_squarefree) {
            LINEAR_FORM_ATTEMPTS
        } else {
            0
        };
        for attempt in 0..attempts {
            let coefficients = random_linear_form(ring.nvars(), seed, attempt);
            let form = coefficients
                .iter()
                .enumerate()
                .fold(Polynomial::zero(ring), |acc, (i, &c)| {
                    acc.add(&Polynomial::var(ring, i).scale(&ring.field().from_int(c)))
                });
            let m = self.minimal_polynomial(&form);
            if m.degree() == Some(dim) && m.is_squarefree() {
                return Ok(PointCount {
                    distinct: dim,
                    multiplicity_total: dim,
                    radical: true,
                    certificate: RadicalCertificate::SquarefreeLinearForm { coefficients, attempt },
                });
            }
        }
        let radical = self.radical_from(&minimal)?;
        let distinct = radical.quotient_dimension().ok_or(Error::PositiveDimensional)?.0;
        Ok(PointCount {
            distinct,
            multiplicity_total: dim,
            radical: distinct == dim,
            certificate: RadicalCertificate::SeidenbergRadical,
        })
    }
}

/// Integer coefficients in `[-20, 20]`, nonzero, from a seeded stream.
pub fn random_linear_form(nvars: usize, seed: u64, attempt: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(attempt));
    (0..nvars)
        .map(|_| loop {
            let c: i64 = rng.gen_range(-20..=20);
            if c != 0 {
                break c;
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::poly;
    use crate::poly::Ring;

    fn qr(r: &std::sync::Arc<Ring>, gens: &[&str]) -> QuotientRing {
        let gens: Vec<_> = gens.iter().map(|g| poly(r, g)).collect();
        GroebnerBasis::compute(&gens, &MonomialOrder::degrevlex(r.nvars()))
            .unwrap()
            .quotient_ring()
            .unwrap()
    }

    #[test]
    fn minimal_polynomial_matches_eliminant() {
        let r = Ring::rational(&["x", "y"]);
        let q = qr(&r, &["x^2 - 1", "y - x"]);
        let m = q.minimal_polynomial(&poly(&r, "y"));
        assert_eq!(m.to_polynomial(&r, 1), poly(&r, "y^2 - 1"));
    }

    #[test]
    fn counts_points_of_radical_and_fat_ideals() {
        let r = Ring::rational(&["x", "y"]);
        let q = qr(&r, &["x^2 - 1", "y^2 - 4"]);
        let c = q.count_points(7).unwrap();
        assert_eq!((c.distinct, c.multiplicity_total, c.radical), (4, 4, true));
        assert!(matches!(c.certificate, RadicalCertificate::SquarefreeLinearForm { .. }));

        let q = qr(&r, &["x^3", "y^2 - 1"]);
        let c = q.count_points(7).unwrap();
        assert_eq!((c.distinct, c.multiplicity_total, c.radical), (2, 6, false));
        assert_eq!(c.certificate, RadicalCertificate::SeidenbergRadical);
    }

    #[test]
    fn positive_dimensional_rejected() {
        let r = Ring::rational(&["x", "y"]);
        let gb = GroebnerBasis::compute(&[poly(&r, "x*y")], &MonomialOrder::degrevlex(2)).unwrap();
        assert!(matches!(gb.quotient_ring(), Err(Error::PositiveDimensional)));
    }
}

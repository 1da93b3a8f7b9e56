//! Number fields `Q[t]/(m(t))` presented by one monic minimal polynomial.
//!
//! Elements are residue classes stored as `d` rational coefficients of the
//! basis `1, t, ..., t^(d-1)`. A degree-one field is `Q` itself.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Highest minimal-polynomial degree accepted by the irreducibility test.
pub const MAX_FIELD_DEGREE: usize = 8;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    name: String,
    /// Coefficients low to high, monic, length `degree + 1`.
    minpoly: Vec<BigRational>,
}

/// Residue class modulo the minimal polynomial. Always `degree` coefficients long.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<BigRational>,
}

impl NumberField {
    /// The rationals, with generator symbol `t` and minimal polynomial `t`.
    pub fn rationals() -> Arc<NumberField> {
        Arc::new(NumberField {
            name: "t".to_string(),
            minpoly: vec![BigRational::zero(), BigRational::one()],
        })
    }

    /// Builds `Q[name]/(minpoly)`. `minpoly` is given low to high and must be
    /// monic and irreducible; irreducibility is certified for degree at most
    /// [`MAX_FIELD_DEGREE`].
    pub fn new(name: &str, minpoly: Vec<BigRational>) -> Result<Arc<NumberField>> {
        let mut minpoly = minpoly;
        trim(&mut minpoly);
        if minpoly.len() < 2 {
            return Err(Error::InvalidField("minimal polynomial must have degree >= 1".into()));
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        let degree = minpoly.len() - 1;
        if degree > MAX_FIELD_DEGREE {
            return Err(Error::InvalidField(format!(
                "degree {degree} exceeds the supported bound {MAX_FIELD_DEGREE}"
            )));
        }
        if degree > 1 {
            irreducibility::certify(&minpoly)?;
        }
        Ok(Arc::new(NumberField {
            name: name.to_string(),
            minpoly,
        }))
    }

    /// `Q(ε)` with `ε^4 + ε^3 + ε^2 + ε + 1 = 0`, a primitive fifth root of unity.
    pub fn cyclotomic5(name: &str) -> Arc<NumberField> {
        let one = BigRational::one();
        NumberField::new(name, vec![one.clone(), one.clone(), one.clone(), one.clone(), one])
            .expect("fifth cyclotomic polynomial is irreducible")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Minimal polynomial coefficients, low to high.
    pub fn minimal_polynomial(&self) -> &[BigRational] {
        &self.minpoly
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = q;
        FieldElement { coeffs }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The generator `t`. In `Q` the generator is the root of `t - c`, i.e. `c`.
    pub fn generator(&self) -> FieldElement {
        if self.is_rational() {
            return self.from_rational(-self.minpoly[0].clone());
        }
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[1] = BigRational::one();
        FieldElement { coeffs }
    }

    /// Reduces an arbitrary polynomial in `t` (low to high) modulo the minimal polynomial.
    pub fn from_coefficients(&self, coeffs: Vec<BigRational>) -> FieldElement {
        let d = self.degree();
        let mut c = coeffs;
        reduce_mod(&mut c, &self.minpoly);
        c.resize(d, BigRational::zero());
        FieldElement { coeffs: c }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree();
        if d == 1 {
            return FieldElement {
                coeffs: vec![&a.coeffs[0] * &b.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        reduce_mod(&mut prod, &self.minpoly);
        prod.resize(d, BigRational::zero());
        FieldElement { coeffs: prod }
    }

    pub fn scale(&self, a: &FieldElement, q: &BigRational) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| x * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[t]`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(FieldElement {
                coeffs: vec![a.coeffs[0].recip()],
            });
        }
        let mut x = a.coeffs.clone();
        trim(&mut x);
        let (g, s) = ext_gcd(x, self.minpoly.clone());
        // g is a nonzero constant because the minimal polynomial is irreducible
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &inv_g).collect();
        Ok(self.from_coefficients(s))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^e` by repeated squaring.
    pub fn pow(&self, a: &FieldElement, mut e: u32) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "QQ");
        }
        write!(f, "QQ[{}]/(", self.name)?;
        let mut first = true;
        for (i, c) in self.minpoly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_univariate_term(f, c, &self.name, i, first)?;
            first = false;
        }
        write!(f, ")")
    }
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element lies in the prime field `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Writes the element as a polynomial in the generator symbol, highest power first.
    pub fn fmt_with(&self, gen: &str, f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_univariate_term(f, c, gen, i, first)?;
            first = false;
        }
        Ok(())
    }
}

fn write_univariate_term(
    f: &mut impl fmt::Write,
    c: &BigRational,
    gen: &str,
    power: usize,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if power == 0 {
        return write!(f, "{}", abs);
    }
    if !abs.is_one() {
        write!(f, "{}*", abs)?;
    }
    if power == 1 {
        write!(f, "{gen}")
    } else {
        write!(f, "{gen}^{power}")
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Remainder of `p` modulo monic `m`, in place. Leaves `p` with length < deg m + 1.
fn reduce_mod(p: &mut Vec<BigRational>, m: &[BigRational]) {
    let dm = m.len() - 1;
    while p.len() > dm {
        let lead = p.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = p.len() - dm;
        for (i, c) in m[..dm].iter().enumerate() {
            if !c.is_zero() {
                p[shift + i] -= &lead * c;
            }
        }
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let coef = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &coef * c;
        }
        q[k] = coef;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Returns `(g, s)` with `g = s*a mod b`, `g = gcd(a, b)` up to a unit.
fn ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

/// Irreducibility certificate over `Q` for minimal polynomials of small degree.
///
/// The polynomial is scaled to a monic integer polynomial and factored modulo
/// a run of small primes by distinct-degree factorization. A factor of degree
/// `k` over `Q` forces every squarefree reduction to have a sub-multiset of
/// factor degrees summing to `k`; when no `k` in `1..d` survives all primes,
/// the polynomial is irreducible.
mod irreducibility {
    use super::*;

    const PRIMES: [u64; 25] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    ];

    pub(super) fn certify(minpoly: &[BigRational]) -> Result<()> {
        let ints = integral_monic(minpoly);
        let d = ints.len() - 1;
        // candidates[k] stays true while a degree-k factor is still possible
        let mut candidates = vec![true; d + 1];
        candidates[0] = false;
        candidates[d] = false;
        for &p in &PRIMES {
            let reduced: Vec<u64> = ints
                .iter()
                .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
                .collect();
            let Some(degrees) = factor_degrees(&reduced, p) else {
                continue;
            };
            let mut sums = vec![false; d + 1];
            sums[0] = true;
            for &deg in &degrees {
                for s in (deg..=d).rev() {
                    if sums[s - deg] {
                        sums[s] = true;
                    }
                }
            }
            for k in 1..d {
                candidates[k] &= sums[k];
            }
            if !candidates.iter().any(|&c| c) {
                return Ok(());
            }
        }
        Err(Error::InvalidField(
            "could not certify irreducibility of the minimal polynomial".into(),
        ))
    }

    /// Substitutes `t = s / D` and rescales so the result is monic with integer coefficients.
    fn integral_monic(minpoly: &[BigRational]) -> Vec<BigInt> {
        let d = minpoly.len() - 1;
        let mut den = BigInt::one();
        for c in minpoly {
            den = den.lcm(c.denom());
        }
        // coefficient of s^i becomes c_i * D^(d-i)
        (0..=d)
            .map(|i| {
                let c = &minpoly[i] * BigRational::from_integer(num_traits::pow(den.clone(), d - i));
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect()
    }

    type Fp = Vec<u64>;

    fn trim_p(a: &mut Fp) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_p(a: u64, p: u64) -> u64 {
        pow_p(a, p - 2, p)
    }

    fn pow_p(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    fn rem_p(a: &Fp, b: &Fp, p: u64) -> Fp {
        let mut r = a.clone();
        trim_p(&mut r);
        let db = b.len() - 1;
        let inv = inv_p(b[db], p);
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap() * inv % p;
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p - c * bi % p) % p;
            }
            trim_p(&mut r);
        }
        r
    }

    fn divexact_p(a: &Fp, b: &Fp, p: u64) -> Fp {
        let mut r = a.clone();
        let db = b.len() - 1;
        let inv = inv_p(b[db], p);
        let mut q = vec![0; r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap() * inv % p;
            q[k] = c;
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p - c * bi % p) % p;
            }
            r.pop();
        }
        q
    }

    fn mulmod_p(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem_p(&out, m, p)
    }

    fn gcd_p(a: &Fp, b: &Fp, p: u64) -> Fp {
        let (mut x, mut y) = (a.clone(), b.clone());
        trim_p(&mut x);
        trim_p(&mut y);
        while !y.is_empty() {
            let r = rem_p(&x, &y, p);
            x = std::mem::replace(&mut y, r);
        }
        x
    }

    fn derivative_p(a: &Fp, p: u64) -> Fp {
        let mut d: Fp = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect();
        trim_p(&mut d);
        d
    }

    /// Degrees of the irreducible factors of a monic polynomial over `F_p`,
    /// or `None` when the reduction is not squarefree.
    fn factor_degrees(f: &Fp, p: u64) -> Option<Vec<usize>> {
        let mut f = f.clone();
        trim_p(&mut f);
        let g = gcd_p(&f, &derivative_p(&f, p), p);
        if g.len() != 1 {
            return None;
        }
        let mut degrees = Vec::new();
        // h = x^(p^i) mod f
        let x: Fp = vec![0, 1];
        let mut h = x.clone();
        let mut i = 0;
        while f.len() > 1 {
            i += 1;
            if 2 * i > f.len() - 1 {
                degrees.push(f.len() - 1);
                break;
            }
            h = powmod_p(&h, p, &f, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim_p(&mut diff);
            let g = gcd_p(&f, &diff, p);
            if g.len() > 1 {
                let k = (g.len() - 1) / i;
                degrees.extend(std::iter::repeat_n(i, k));
                let gm = monic_p(&g, p);
                f = divexact_p(&f, &gm, p);
                h = rem_p(&h, &f, p);
            }
        }
        Some(degrees)
    }

    fn monic_p(a: &Fp, p: u64) -> Fp {
        let inv = inv_p(*a.last().unwrap(), p);
        a.iter().map(|c| c * inv % p).collect()
    }

    fn powmod_p(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
        let mut acc: Fp = vec![1];
        let mut b = rem_p(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod_p(&acc, &b, m, p);
            }
            b = mulmod_p(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cyclotomic_generator_has_order_five() {
        let k = NumberField::cyclotomic5("e");
        let e = k.generator();
        assert!(k.pow(&e, 5).is_one());
        assert!(!k.pow(&e, 1).is_one());
        let sum = (0..5).fold(k.zero(), |acc, i| k.add(&acc, &k.pow(&e, i)));
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_round_trips() {
        let k = NumberField::cyclotomic5("e");
        let a = k.from_coefficients(vec![q(3), q(-1), q(0), q(2)]);
        let inv = k.inv(&a).unwrap();
        assert!(k.mul(&a, &inv).is_one());
        assert!(matches!(k.inv(&k.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn reducible_minpoly_rejected() {
        // t^2 - 1 = (t - 1)(t + 1)
        assert!(NumberField::new("t", vec![q(-1), q(0), q(1)]).is_err());
        // t^4 + 4 = (t^2 + 2t + 2)(t^2 - 2t + 2)
        assert!(NumberField::new("t", vec![q(4), q(0), q(0), q(0), q(1)]).is_err());
        assert!(NumberField::new("t", vec![q(1), q(0), q(2)]).is_err(), "not monic");
    }

    #[test]
    fn irreducible_minpolys_accepted() {
        assert!(NumberField::new("i", vec![q(1), q(0), q(1)]).is_ok());
        assert!(NumberField::new("c", vec![q(-2), q(0), q(0), q(1)]).is_ok());
        let half = BigRational::new(1.into(), 2.into());
        assert!(NumberField::new("r", vec![-half, q(0), q(1)]).is_ok());
    }

    #[test]
    fn display_uses_generator_name() {
        let k = NumberField::cyclotomic5("a");
        assert_eq!(k.to_string(), "QQ[a]/(a^4 + a^3 + a^2 + a + 1)");
        assert_eq!(NumberField::rationals().to_string(), "QQ");
    }
}

use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Degree of the line bundle whose sections are discriminant data `B`.
pub const WEIERSTRASS_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CuspidalFibers {
    pub distinct_roots: usize,
    pub all_simple: bool,
}

fn check_section(b: &UniPoly) -> Result<usize> {
    let deg = b
        .degree()
        .ok_or_else(|| Error::InvalidRecord("B must be nonzero".into()))?;
    if deg > WEIERSTRASS_DEGREE {
        return Err(Error::InvalidRecord(format!(
            "B has degree {deg} > {WEIERSTRASS_DEGREE}"
        )));
    }
    Ok(deg)
}

fn distinct_affine_roots(b: &UniPoly) -> usize {
    b.squarefree_part().degree().unwrap_or(0)
}

/// Cuspidal fibers of `-x^2 z + y^3 + B(λ) z^3` over the projective line.
///
/// Roots of `B` are counted without multiplicity; when `deg B < 6` the point
/// at infinity is a root of the homogenized section and is counted once.
pub fn count_cuspidal_fibers(b: &UniPoly) -> Result<CuspidalFibers> {
    let deg = check_section(b)?;
    let infinity = usize::from(deg < WEIERSTRASS_DEGREE);
    Ok(CuspidalFibers {
        distinct_roots: distinct_affine_roots(b) + infinity,
        all_simple: deg == WEIERSTRASS_DEGREE && b.is_squarefree(),
    })
}

/// Singular points of the fibre product `S_1 ×_{P^1} S_2`: one point of
/// type II×II over every base point where both fibres are cuspidal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberProductSingularities {
    pub count: usize,
    pub kind: &'static str,
}

pub fn fiber_product_singularities(b1: &UniPoly, b2: &UniPoly) -> Result<FiberProductSingularities> {
    let (d1, d2) = (check_section(b1)?, check_section(b2)?);
    let common = b1.gcd(b2);
    let infinity = usize::from(d1 < WEIERSTRASS_DEGREE && d2 < WEIERSTRASS_DEGREE);
    Ok(FiberProductSingularities {
        count: distinct_affine_roots(&common) + infinity,
        kind: "II×II",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::NumberField;

    fn uni(coeffs: &[i64]) -> UniPoly {
        let k = NumberField::rationals();
        UniPoly::new(&k, coeffs.iter().map(|&c| k.from_int(c)).collect())
    }

    #[test]
    fn cusp_counts() {
        let sextic = uni(&[-1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(
            count_cuspidal_fibers(&sextic).unwrap(),
            CuspidalFibers {
                distinct_roots: 6,
                all_simple: true
            }
        );
        let pure = uni(&[0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(
            count_cuspidal_fibers(&pure).unwrap(),
            CuspidalFibers {
                distinct_roots: 1,
                all_simple: false
            }
        );
        let quintic = uni(&[0, 0, 0, -1, 0, 1]);
        assert_eq!(
            count_cuspidal_fibers(&quintic).unwrap(),
            CuspidalFibers {
                distinct_roots: 4,
                all_simple: false
            }
        );
        assert!(count_cuspidal_fibers(&uni(&[])).is_err());
        assert!(count_cuspidal_fibers(&uni(&[0, 0, 0, 0, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn self_product_has_six_points() {
        let b = uni(&[-1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(fiber_product_singularities(&b, &b).unwrap().count, 6);
        let other = uni(&[-2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(fiber_product_singularities(&b, &other).unwrap().count, 0);
    }
}

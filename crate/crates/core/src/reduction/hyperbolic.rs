//! Rank-two factors over a real quadratic centre: `Pi = cone(D, gamma D)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::pell::{pell_fundamental_unit, PellSolution};
use super::polyhedral::PolyhedralCone;
use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::exact::lattice::Span;
use crate::exact::matrix::{IntegerMatrix, RationalMatrix};
use crate::exact::rational::{common_denominator, rat, Rational};
use crate::wedderburn::SimpleFactor;

/// Largest power of the unit tried when lifting it to an automorphism.
pub const MAX_UNIT_POWER: usize = 12;

fn is_rational_square(x: &Rational) -> bool {
    if x.is_negative() {
        return false;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    &rn * &rn == *n && &rd * &rd == *d
}

/// Trace and determinant of `gamma` on the plane spanned by `d` and `gamma d`.
fn restricted_trace_det(gamma: &RationalMatrix, d: &[Rational]) -> Result<(Rational, Rational)> {
    let gd = gamma.mul_vec(d);
    let plane = Span::new(d.len(), &[d.to_vec(), gd.clone()]);
    if !plane.is_independent() {
        return Err(Error::NotHyperbolic(
            "gamma maps D to a multiple of itself".into(),
        ));
    }
    let ggd = gamma.mul_vec(&gd);
    let coords = plane.coordinates(&ggd).ok_or_else(|| {
        Error::NotHyperbolic("gamma does not preserve the plane of D and gamma D".into())
    })?;
    // gamma^2 D = t gamma D - det D.
    Ok((coords[1].clone(), -coords[0].clone()))
}

/// `cone(D, gamma D)` after checking that `D` is ample and `gamma` restricts to
/// a hyperbolic map of the plane that preserves ampleness.
pub fn hyperbolic_domain(
    gamma: &RationalMatrix,
    d: &[Rational],
    is_ample: &dyn Fn(&[Rational]) -> bool,
) -> Result<PolyhedralCone> {
    if gamma.rows() != d.len() || !gamma.is_square() {
        return Err(Error::Dimension("gamma and D have different sizes".into()));
    }
    if gamma.is_identity() {
        return Err(Error::NotHyperbolic("gamma is the identity".into()));
    }
    if !is_ample(d) {
        return Err(Error::NotAmple("base class D".into()));
    }
    let (t, det) = restricted_trace_det(gamma, d)?;
    let disc = &t * &t - rat(4) * &det;
    if !disc.is_positive() || is_rational_square(&disc) {
        return Err(Error::NotHyperbolic(format!(
            "restriction has trace {t} and determinant {det}"
        )));
    }
    let gd = gamma.mul_vec(d);
    if !is_ample(&gd) {
        return Err(Error::NotHyperbolic(
            "gamma does not preserve the ample cone".into(),
        ));
    }
    PolyhedralCone::from_rays(d.len(), &[d.to_vec(), gd])
}

/// An automorphism built from a Pell unit of a real quadratic central subfield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellUnit {
    /// Lattice matrix of `u^k + (1 - e)`.
    pub automorphism: IntegerMatrix,
    pub d: i64,
    pub solution: PellSolution,
    pub power: usize,
}

fn scale_to_integral(algebra: &MatrixAlgebra, x: &[Rational]) -> Vec<Rational> {
    let m = algebra.element(x);
    let den = common_denominator(m.entries());
    algebra.scale(&Rational::from_integer(den), x)
}

/// Largest `f` with `f^2 | d` and `r / f` integral.
fn reduce_square_part(
    algebra: &MatrixAlgebra,
    r: &[Rational],
    d: &BigInt,
) -> (Vec<Rational>, BigInt) {
    let mut f = d.sqrt();
    while f > BigInt::one() {
        if (d % (&f * &f)).is_zero() {
            let scaled = algebra.scale(&Rational::new(BigInt::one(), f.clone()), r);
            if algebra.element(&scaled).to_integer().is_some() {
                return (scaled, d / (&f * &f));
            }
        }
        f -= 1;
    }
    (r.to_vec(), d.clone())
}

/// Derives a unit of infinite order from the symmetric part of the factor's
/// centre, when that part is a real quadratic field.
pub fn pell_unit(algebra: &MatrixAlgebra, factor: &SimpleFactor) -> Option<PellUnit> {
    let e = &factor.idempotent;
    let one = algebra.unit().to_vec();
    let candidates: Vec<Vec<Rational>> = algebra
        .center()
        .iter()
        .map(|c| algebra.mul(e, &algebra.add(c, &algebra.involute(c))))
        .collect();
    let s = candidates
        .iter()
        .find(|s| algebra.min_poly_with_unit(s, e).degree() == Some(2))?;
    let s = scale_to_integral(algebra, s);
    let m = algebra.min_poly_with_unit(&s, e);
    let (p, q) = (m.coeff(1), m.coeff(0));
    if !p.is_integer() || !q.is_integer() {
        return None;
    }
    let (p, q) = (p.to_integer(), q.to_integer());
    let delta = &p * &p - BigInt::from(4) * &q;
    let (r, d) = if (&p % BigInt::from(2)).is_zero() {
        let half = Rational::from_integer(&p / BigInt::from(2));
        (
            algebra.add(&s, &algebra.scale(&half, e)),
            &delta / BigInt::from(4),
        )
    } else {
        let pe = algebra.scale(&Rational::from_integer(p.clone()), e);
        (algebra.add(&algebra.scale(&rat(2), &s), &pe), delta)
    };
    if !d.is_positive() {
        return None;
    }
    let (r, d) = reduce_square_part(algebra, &r, &d);
    let d = d.to_i64()?;
    let solution = pell_fundamental_unit(d).ok()?;
    let x = Rational::from_integer(solution.x.clone());
    let y = Rational::from_integer(solution.y.clone());
    let u = algebra.add(&algebra.scale(&x, e), &algebra.scale(&y, &r));
    let complement: Vec<Rational> = one.iter().zip(e).map(|(a, b)| a - b).collect();
    let mut power = u.clone();
    for k in 1..=MAX_UNIT_POWER {
        let gamma = algebra.element(&algebra.add(&power, &complement));
        if let Some(int) = gamma.to_integer() {
            if int.is_unimodular() {
                return Some(PellUnit {
                    automorphism: int,
                    d,
                    solution,
                    power: k,
                });
            }
        }
        power = algebra.mul(&power, &u);
    }
    None
}

//! Finite-dimensional Q-algebras given by an integral basis of matrices,
//! with the Rosati involution of a fixed polarization. Elements are handled
//! as coordinate vectors in the basis.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::lattice::Span;
use crate::exact::matrix::{IntegerMatrix, RationalMatrix};
use crate::exact::poly::Polynomial;
use crate::exact::rational::{is_zero_vector, rat, Rational};

/// Rosati involution `phi' = E^{-1} phi^T E`.
pub fn rosati_matrix(
    e_inverse: &RationalMatrix,
    e: &RationalMatrix,
    phi: &RationalMatrix,
) -> RationalMatrix {
    &(e_inverse * &phi.transpose()) * e
}

#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    ambient: usize,
    basis: Vec<IntegerMatrix>,
    rational_basis: Vec<RationalMatrix>,
    span: Span,
    e: RationalMatrix,
    e_inverse: RationalMatrix,
    /// `structure[i][j]` = coordinates of `b_i b_j`.
    structure: Vec<Vec<Vec<Rational>>>,
    /// Column `k` holds the coordinates of `b_k'`.
    involution: RationalMatrix,
    trace_vector: Vec<Rational>,
    trace_form: RationalMatrix,
    unit: Vec<Rational>,
}

impl MatrixAlgebra {
    /// Builds the algebra spanned by `basis`, which must be linearly
    /// independent, contain the identity in its span, and be closed under
    /// products and the Rosati involution of `e`.
    pub fn new(basis: Vec<IntegerMatrix>, e: &IntegerMatrix) -> Result<Self> {
        let ambient = e.rows();
        let e = e.to_rational();
        let e_inverse = e.inverse().ok_or(Error::SingularPolarization)?;
        let rational_basis: Vec<RationalMatrix> =
            basis.iter().map(IntegerMatrix::to_rational).collect();
        if rational_basis
            .iter()
            .any(|b| b.rows() != ambient || !b.is_square())
        {
            return Err(Error::Dimension(
                "basis matrix does not match the polarization".into(),
            ));
        }
        let flat: Vec<Vec<Rational>> = rational_basis.iter().map(RationalMatrix::flatten).collect();
        let span = Span::new(ambient * ambient, &flat);
        if !span.is_independent() {
            return Err(Error::Inconsistent(
                "algebra basis is linearly dependent".into(),
            ));
        }
        let coords = |m: &RationalMatrix, what: &str| {
            span.coordinates(&m.flatten())
                .ok_or_else(|| Error::NotInSpan(what.to_string()))
        };
        let unit = coords(&RationalMatrix::identity(ambient), "identity")?;
        let rank = basis.len();
        let mut structure = Vec::with_capacity(rank);
        for (i, bi) in rational_basis.iter().enumerate() {
            let mut row = Vec::with_capacity(rank);
            for (j, bj) in rational_basis.iter().enumerate() {
                row.push(coords(&(bi * bj), &format!("product b{i} b{j}"))?);
            }
            structure.push(row);
        }
        let mut involution = RationalMatrix::zeros(rank, rank);
        for (k, b) in rational_basis.iter().enumerate() {
            let image = coords(
                &rosati_matrix(&e_inverse, &e, b),
                &format!("involution of b{k}"),
            )?;
            for (r, v) in image.into_iter().enumerate() {
                involution[(r, k)] = v;
            }
        }
        let trace_vector: Vec<Rational> =
            rational_basis.iter().map(RationalMatrix::trace).collect();
        let mut algebra = MatrixAlgebra {
            ambient,
            basis,
            rational_basis,
            span,
            e,
            e_inverse,
            structure,
            involution,
            trace_vector,
            trace_form: RationalMatrix::zeros(0, 0),
            unit,
        };
        algebra.trace_form = RationalMatrix::from_fn(rank, rank, |i, j| {
            let (bi, bj) = (algebra.basis_vector(i), algebra.basis_vector(j));
            algebra.trace_pairing(&bi, &bj)
        });
        Ok(algebra)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[IntegerMatrix] {
        &self.basis
    }

    pub fn polarization(&self) -> &RationalMatrix {
        &self.e
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.structure
    }

    pub fn involution_matrix(&self) -> &RationalMatrix {
        &self.involution
    }

    pub fn trace_form(&self) -> &RationalMatrix {
        &self.trace_form
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.rank()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = self.zero();
        v[i] = Rational::one();
        v
    }

    /// The matrix `sum x_i b_i`.
    pub fn element(&self, x: &[Rational]) -> RationalMatrix {
        x.iter()
            .zip(&self.rational_basis)
            .filter(|(c, _)| !c.is_zero())
            .fold(
                RationalMatrix::zeros(self.ambient, self.ambient),
                |acc, (c, b)| &acc + &b.scale(c),
            )
    }

    pub fn coordinates(&self, m: &RationalMatrix) -> Option<Vec<Rational>> {
        if m.rows() != self.ambient || m.cols() != self.ambient {
            return None;
        }
        self.span.coordinates(&m.flatten())
    }

    pub fn contains(&self, m: &RationalMatrix) -> bool {
        self.coordinates(m).is_some()
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.structure[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] += &c * s;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn scale(&self, s: &Rational, x: &[Rational]) -> Vec<Rational> {
        x.iter().map(|a| a * s).collect()
    }

    pub fn commutator(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        xy.iter().zip(&yx).map(|(a, b)| a - b).collect()
    }

    pub fn involute(&self, x: &[Rational]) -> Vec<Rational> {
        self.involution.mul_vec(x)
    }

    /// Rosati involution of an arbitrary matrix (not necessarily in the algebra).
    pub fn rosati(&self, phi: &RationalMatrix) -> RationalMatrix {
        rosati_matrix(&self.e_inverse, &self.e, phi)
    }

    /// Trace of the element in the rational representation.
    pub fn trace(&self, x: &[Rational]) -> Rational {
        x.iter()
            .zip(&self.trace_vector)
            .fold(Rational::zero(), |acc, (a, t)| acc + a * t)
    }

    /// `Tr(x y')`.
    pub fn trace_pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.trace(&self.mul(x, &self.involute(y)))
    }

    pub fn pow(&self, x: &[Rational], k: usize) -> Vec<Rational> {
        (0..k).fold(self.unit.clone(), |acc, _| self.mul(&acc, x))
    }

    /// `p(x)` by Horner's rule, with `unit` standing for the constant term
    /// (pass a central idempotent to evaluate inside a factor).
    pub fn eval_poly_with_unit(
        &self,
        p: &Polynomial,
        x: &[Rational],
        unit: &[Rational],
    ) -> Vec<Rational> {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scale(c, unit));
        }
        acc
    }

    pub fn eval_poly(&self, p: &Polynomial, x: &[Rational]) -> Vec<Rational> {
        self.eval_poly_with_unit(p, x, &self.unit.clone())
    }

    /// Minimal polynomial of `x` inside the subalgebra with identity `unit`.
    pub fn min_poly_with_unit(&self, x: &[Rational], unit: &[Rational]) -> Polynomial {
        let mut powers = vec![unit.to_vec()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let span = Span::new(self.rank(), &powers);
            if let Some(c) = span.coordinates(&next) {
                let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
                coeffs.push(Rational::one());
                return Polynomial::new(coeffs);
            }
            powers.push(next);
        }
    }

    pub fn min_poly(&self, x: &[Rational]) -> Polynomial {
        self.min_poly_with_unit(x, &self.unit.clone())
    }

    /// Basis of the centre, as coordinate vectors.
    pub fn center(&self) -> Vec<Vec<Rational>> {
        let rank = self.rank();
        // Row block i: coordinates of [x, b_i] as a linear map of x.
        let mut rows = Vec::new();
        for i in 0..rank {
            let bi = self.basis_vector(i);
            let images: Vec<Vec<Rational>> = (0..rank)
                .map(|j| self.commutator(&self.basis_vector(j), &bi))
                .collect();
            for k in 0..rank {
                rows.push(
                    images
                        .iter()
                        .map(|image| image[k].clone())
                        .collect::<Vec<_>>(),
                );
            }
        }
        let system = if rows.is_empty() {
            RationalMatrix::zeros(0, rank)
        } else {
            RationalMatrix::from_rows(rows)
        };
        system.nullspace()
    }

    /// `(b_i b_j)' = b_j' b_i'` on all basis pairs.
    pub fn involution_is_anti_automorphism(&self) -> bool {
        (0..self.rank()).all(|i| {
            (0..self.rank()).all(|j| {
                let lhs = self.involute(&self.structure[i][j]);
                let rhs = self.mul(
                    &self.involute(&self.basis_vector(j)),
                    &self.involute(&self.basis_vector(i)),
                );
                lhs == rhs
            })
        })
    }

    pub fn involution_is_involutive(&self) -> bool {
        (&self.involution * &self.involution).is_identity()
    }

    /// `phi'^T E = E phi` for every basis element.
    pub fn involution_is_adjoint(&self) -> bool {
        self.rational_basis.iter().all(|b| {
            let adj = self.rosati(b);
            &adj.transpose() * &self.e == &self.e * b
        })
    }

    /// Random integer combinations with entries in `[-bound, bound]`, never zero.
    pub fn random_elements(&self, count: usize, bound: i64, seed: u64) -> Vec<Vec<Rational>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let x: Vec<Rational> = (0..self.rank())
                .map(|_| rat(rng.gen_range(-bound..=bound)))
                .collect();
            if !is_zero_vector(&x) {
                out.push(x);
            }
        }
        out
    }

    /// Sampled `Tr(phi phi') > 0` plus exact positive definiteness of the Gram matrix.
    pub fn trace_positivity_check(&self, samples: usize, seed: u64) -> TracePositivity {
        let elements = self.random_elements(samples, 5, seed);
        let failures = elements
            .iter()
            .filter(|x| self.trace_pairing(x, x) <= Rational::zero())
            .count();
        TracePositivity {
            samples,
            failures,
            gram_positive_definite: self.trace_form.is_positive_definite(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracePositivity {
    pub samples: usize,
    pub failures: usize,
    pub gram_positive_definite: bool,
}

impl TracePositivity {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.gram_positive_definite
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> MatrixAlgebra {
        let i = IntegerMatrix::identity(2);
        let j = IntegerMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let e = IntegerMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        MatrixAlgebra::new(vec![i, j], &e).unwrap()
    }

    #[test]
    fn gaussian_integers() {
        let a = gaussian();
        assert_eq!(a.unit(), &[rat(1), rat(0)]);
        // J * J = -1
        assert_eq!(a.structure_constants()[1][1], vec![rat(-1), rat(0)]);
        // Rosati is complex conjugation.
        assert_eq!(a.involute(&[rat(3), rat(5)]), vec![rat(3), rat(-5)]);
        assert_eq!(
            a.trace_pairing(&[rat(3), rat(5)], &[rat(3), rat(5)]),
            rat(2 * (9 + 25))
        );
        assert!(a.involution_is_anti_automorphism());
        assert!(a.involution_is_involutive());
        assert!(a.involution_is_adjoint());
        assert_eq!(a.center().len(), 2);
        assert_eq!(
            a.min_poly(&[rat(0), rat(1)]),
            Polynomial::from_i64(&[1, 0, 1])
        );
    }

    #[test]
    fn open_basis_is_rejected() {
        let j = IntegerMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let e = IntegerMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert!(matches!(
            MatrixAlgebra::new(vec![j], &e),
            Err(Error::NotInSpan(_))
        ));
    }

    #[test]
    fn trace_positivity_on_gaussian_integers() {
        let report = gaussian().trace_positivity_check(200, 42);
        assert!(report.passed());
    }
}

//! Neron-Severi lattices as alternating forms compatible with `J`, their
//! embedding into the symmetric endomorphisms, and the invariant ample cone.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::MatrixAlgebra;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::exact::lattice::{integer_kernel, BoxedCondition, LinearCondition, Span};
use crate::exact::matrix::{IntegerMatrix, RationalMatrix};
use crate::exact::poly::{all_roots_nonnegative, all_roots_positive, char_poly};
use crate::exact::rational::{primitive_integer_vector, to_rationals, Rational};
use crate::torus::{GroupAction, PolarizedTorus};
use crate::wedderburn::{Decomposition, FactorKind};

/// A lattice of integral alternating forms `F` with `J^T F J = F`; classes are
/// rational coordinate vectors in its basis.
#[derive(Clone, Debug)]
pub struct NSLattice {
    basis: Vec<IntegerMatrix>,
    span: Span,
    e: RationalMatrix,
    e_inverse: RationalMatrix,
}

impl NSLattice {
    fn new(basis: Vec<IntegerMatrix>, torus: &PolarizedTorus) -> Result<Self> {
        let dim = torus.lattice_rank();
        let flat: Vec<Vec<Rational>> = basis.iter().map(|b| b.to_rational().flatten()).collect();
        let e = torus.polarization_rational();
        let e_inverse = e.inverse().ok_or(Error::SingularPolarization)?;
        Ok(NSLattice {
            basis,
            span: Span::new(dim * dim, &flat),
            e,
            e_inverse,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntegerMatrix] {
        &self.basis
    }

    /// The form `sum c_k F_k`.
    pub fn form(&self, c: &[Rational]) -> RationalMatrix {
        let dim = self.e.rows();
        c.iter()
            .zip(&self.basis)
            .filter(|(x, _)| !x.is_zero())
            .fold(RationalMatrix::zeros(dim, dim), |acc, (x, f)| {
                &acc + &f.to_rational().scale(x)
            })
    }

    pub fn coordinates(&self, form: &RationalMatrix) -> Option<Vec<Rational>> {
        self.span.coordinates(&form.flatten())
    }

    /// Coordinates of the polarization `E` (present whenever `E` is fixed).
    pub fn polarization_class(&self) -> Option<Vec<Rational>> {
        self.coordinates(&self.e)
    }

    /// `f(F) = E^{-1} F`.
    pub fn embed_form(&self, form: &RationalMatrix) -> RationalMatrix {
        &self.e_inverse * form
    }

    /// Inverse of [`Self::embed_form`].
    pub fn form_of_endomorphism(&self, phi: &RationalMatrix) -> RationalMatrix {
        &self.e * phi
    }

    pub fn embed(&self, c: &[Rational]) -> RationalMatrix {
        self.embed_form(&self.form(c))
    }

    /// All roots of the characteristic polynomial of `E^{-1} F` are positive.
    pub fn is_ample(&self, c: &[Rational]) -> bool {
        let p = char_poly(&self.embed(c));
        all_roots_positive(&p).expect("characteristic polynomial is monic")
    }

    /// All roots are non-negative.
    pub fn is_nef(&self, c: &[Rational]) -> bool {
        let p = char_poly(&self.embed(c));
        all_roots_nonnegative(&p).expect("characteristic polynomial is monic")
    }

    /// `Tr(f(x) f(y)')`; `f(y)` is symmetric so this is `Tr(f(x) f(y))`.
    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        (&self.embed(x) * &self.embed(y)).trace()
    }

    pub fn gram(&self) -> RationalMatrix {
        let units: Vec<Vec<Rational>> = (0..self.rank())
            .map(|i| unit_vector(self.rank(), i))
            .collect();
        RationalMatrix::from_fn(self.rank(), self.rank(), |i, j| {
            self.pairing(&units[i], &units[j])
        })
    }

    /// Matrix of `F -> A^T F A` on coordinates (columns are images of the basis).
    pub fn pullback_matrix(&self, a: &IntegerMatrix) -> Result<RationalMatrix> {
        let ar = a.to_rational();
        let at = ar.transpose();
        let columns = self
            .basis
            .iter()
            .map(|f| {
                let image = &(&at * &f.to_rational()) * &ar;
                self.coordinates(&image)
                    .ok_or_else(|| Error::NotInSpan("pullback leaves the lattice".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = self.rank();
        Ok(RationalMatrix::from_fn(n, n, |i, j| columns[j][i].clone()))
    }

    /// Pullback of a class; the translation part of an automorphism acts trivially.
    pub fn pullback(&self, a: &IntegerMatrix, c: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self.pullback_matrix(a)?.mul_vec(c))
    }

    /// `f(F)` is Rosati-symmetric for every basis form.
    pub fn embedding_is_symmetric(&self) -> bool {
        self.basis.iter().all(|f| {
            let phi = self.embed_form(&f.to_rational());
            let adj = &(&self.e_inverse * &phi.transpose()) * &self.e;
            adj == phi
        })
    }

    /// `f(A^T F A) = A' f(F) A` for every basis form.
    pub fn equivariance_holds(&self, a: &IntegerMatrix) -> bool {
        let ar = a.to_rational();
        let a_adj = &(&self.e_inverse * &ar.transpose()) * &self.e;
        self.basis.iter().all(|f| {
            let f = f.to_rational();
            let lhs = self.embed_form(&(&(&ar.transpose() * &f) * &ar));
            let rhs = &(&a_adj * &self.embed_form(&f)) * &ar;
            lhs == rhs
        })
    }
}

fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(1.into());
    v
}

fn form_conditions(torus: &PolarizedTorus, group: &[IntegerMatrix]) -> Vec<BoxedCondition> {
    let j = torus.complex_structure().clone();
    let jt = j.transpose();
    let mut conds: Vec<BoxedCondition> = vec![
        Box::new(|f: &RationalMatrix| f + &f.transpose()),
        Box::new(move |f: &RationalMatrix| &(&(&jt * f) * &j) - f),
    ];
    for a in group {
        let a = a.to_rational();
        let at = a.transpose();
        conds.push(Box::new(move |f: &RationalMatrix| &(&(&at * f) * &a) - f));
    }
    conds
}

pub fn compute_ns(torus: &PolarizedTorus) -> Result<NSLattice> {
    let dim = torus.lattice_rank();
    let conds = form_conditions(torus, &[]);
    let refs: Vec<LinearCondition<'_>> = conds
        .iter()
        .map(|c| c.as_ref() as LinearCondition<'_>)
        .collect();
    NSLattice::new(integer_kernel(dim, dim, &refs), torus)
}

/// The `G`-fixed sublattice; being an integer kernel it is saturated.
#[derive(Clone, Debug)]
pub struct InvariantNS {
    pub lattice: NSLattice,
    /// Column `k` holds the parent coordinates of the `k`-th invariant basis form.
    pub inclusion: IntegerMatrix,
}

impl InvariantNS {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

pub fn invariant_ns(
    torus: &PolarizedTorus,
    parent: &NSLattice,
    group: &GroupAction,
) -> Result<InvariantNS> {
    let dim = torus.lattice_rank();
    let conds = form_conditions(torus, &group.linear_parts());
    let refs: Vec<LinearCondition<'_>> = conds
        .iter()
        .map(|c| c.as_ref() as LinearCondition<'_>)
        .collect();
    let lattice = NSLattice::new(integer_kernel(dim, dim, &refs), torus)?;
    let columns = lattice
        .basis()
        .iter()
        .map(|f| {
            parent
                .coordinates(&f.to_rational())
                .ok_or_else(|| Error::NotInSpan("invariant form outside NS".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let rational =
        RationalMatrix::from_fn(parent.rank(), lattice.rank(), |i, j| columns[j][i].clone());
    let inclusion = rational
        .to_integer()
        .ok_or_else(|| Error::Inconsistent("invariant lattice is not integral in NS".into()))?;
    Ok(InvariantNS { lattice, inclusion })
}

/// Shape of one Q-factor of the invariant cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeType {
    /// A single rational ray.
    Ray,
    /// Two irrational rays: a product of two half-lines over a real quadratic centre.
    Hyperbolic,
    /// Positive-definite Hermitian matrices of size at least two.
    Hermitian,
}

impl fmt::Display for ConeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConeType::Ray => "ray",
            ConeType::Hyperbolic => "hyperbolic",
            ConeType::Hermitian => "hermitian",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFactor {
    pub kind: FactorKind,
    pub places: usize,
    pub cone_type: ConeType,
    /// Dimension of the factor's subspace of `N^1(X)^G`.
    pub dim: usize,
    /// Rational basis of that subspace, in invariant coordinates.
    pub subspace: Vec<Vec<Rational>>,
    /// Matrix of the projection `x -> e x` on invariant coordinates.
    pub projection: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeStructure {
    pub factors: Vec<ConeFactor>,
}

impl ConeStructure {
    /// Primitive generators of the rational rays when every factor is a ray.
    pub fn ray_generators(&self, ample: &[Rational]) -> Option<Vec<Vec<BigInt>>> {
        self.factors
            .iter()
            .map(|f| match f.cone_type {
                ConeType::Ray => primitive_integer_vector(&f.projection.mul_vec(ample)),
                _ => None,
            })
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.factors.iter().all(|f| f.cone_type == ConeType::Ray)
    }
}

/// Splits `N^1(X)^G` along the central idempotents of `End^G` and matches
/// each piece with the predicted fixed dimension.
pub fn cone_structure(
    inv: &InvariantNS,
    algebra: &MatrixAlgebra,
    dec: &Decomposition,
) -> Result<ConeStructure> {
    let lattice = &inv.lattice;
    let rho = lattice.rank();
    let mut factors = Vec::new();
    let mut total = 0;
    for factor in &dec.factors {
        let idem = algebra.element(&factor.idempotent);
        let columns = (0..rho)
            .map(|k| {
                let phi = lattice.embed(&unit_vector(rho, k));
                let image = lattice.form_of_endomorphism(&(&idem * &phi));
                lattice
                    .coordinates(&image)
                    .ok_or_else(|| Error::NotInSpan("idempotent projection leaves N^1(X)^G".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let projection = RationalMatrix::from_fn(rho, rho, |i, j| columns[j][i].clone());
        let subspace = projection.transpose().rref();
        let basis: Vec<Vec<Rational>> = (0..subspace.1.len())
            .map(|r| subspace.0.row(r).to_vec())
            .collect();
        let dim = basis.len();
        if dim != factor.fixed_dim {
            return Err(Error::Inconsistent(format!(
                "factor {} predicts {} invariant classes, found {dim}",
                factor.kind, factor.fixed_dim
            )));
        }
        total += dim;
        let cone_type = match (factor.kind.cone_dim(), factor.places) {
            (1, 1) => ConeType::Ray,
            (1, _) => ConeType::Hyperbolic,
            _ => ConeType::Hermitian,
        };
        factors.push(ConeFactor {
            kind: factor.kind,
            places: factor.places,
            cone_type,
            dim,
            subspace: basis,
            projection,
        });
    }
    if total != rho {
        return Err(Error::Inconsistent(format!(
            "factors account for {total} of {rho} invariant classes"
        )));
    }
    Ok(ConeStructure { factors })
}

/// `f(NS)` is exactly the Rosati-fixed part of `End(X) (x) Q`.
pub fn symmetric_part_check(ns: &NSLattice, end: &MatrixAlgebra) -> Check {
    let rank = end.rank();
    let fixed: Vec<Vec<Rational>> = (0..rank)
        .map(|i| {
            let b = end.basis_vector(i);
            end.add(&b, &end.involute(&b))
        })
        .collect();
    let fixed_span = Span::new(rank, &fixed);
    let inside = ns.basis().iter().all(|f| {
        end.coordinates(&ns.embed_form(&f.to_rational()))
            .is_some_and(|c| fixed_span.contains(&c))
    });
    Check::new(
        "ns_is_symmetric_part",
        inside && fixed_span.dim() == ns.rank(),
        format!(
            "rank NS {} vs symmetric dimension {}",
            ns.rank(),
            fixed_span.dim()
        ),
    )
}

/// Integer coordinates of a class, if integral.
pub fn integral_class(c: &[Rational]) -> Option<Vec<BigInt>> {
    c.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn class_from_integers(c: &[BigInt]) -> Vec<Rational> {
    to_rationals(c)
}

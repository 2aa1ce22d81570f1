//! `End(X)` in the rational representation and its `G`-invariant part.

use crate::algebra::{MatrixAlgebra, TracePositivity};
use crate::error::{Error, Result};
use crate::exact::lattice::{integer_kernel, BoxedCondition, LinearCondition};
use crate::exact::matrix::{IntegerMatrix, RationalMatrix};
use crate::exact::rational::Rational;
use crate::torus::{GroupAction, PolarizedTorus};

/// `End(X) = {M in Mat_{2n}(Z) : M J = J M}` with the Rosati involution.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    pub algebra: MatrixAlgebra,
}

/// Integral matrices commuting with `J` and with every given matrix.
fn commutant(torus: &PolarizedTorus, others: &[RationalMatrix]) -> Vec<IntegerMatrix> {
    let dim = torus.lattice_rank();
    let j = torus.complex_structure().clone();
    let with_j = move |m: &RationalMatrix| &(m * &j) - &(&j * m);
    let mut conditions: Vec<BoxedCondition> = vec![Box::new(with_j)];
    for a in others {
        let a = a.clone();
        conditions.push(Box::new(move |m: &RationalMatrix| &(m * &a) - &(&a * m)));
    }
    let refs: Vec<LinearCondition<'_>> = conditions
        .iter()
        .map(|c| c.as_ref() as LinearCondition<'_>)
        .collect();
    integer_kernel(dim, dim, &refs)
}

pub fn compute_end(torus: &PolarizedTorus) -> Result<EndoAlgebra> {
    let basis = commutant(torus, &[]);
    Ok(EndoAlgebra {
        algebra: MatrixAlgebra::new(basis, torus.polarization())?,
    })
}

impl EndoAlgebra {
    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }
}

/// `End(X)^G`: the centralizer of the linear parts of `G` inside `End(X)`.
#[derive(Clone, Debug)]
pub struct InvariantSubalgebra {
    pub algebra: MatrixAlgebra,
    /// Coordinates of each invariant basis element in the parent basis.
    pub embedding: Vec<Vec<Rational>>,
    pub parent_rank: usize,
}

/// Requires a `G`-invariant polarization, so that `g' = g^{-1}` and the
/// invariance condition `g' phi g = phi` is commutation with `g`.
pub fn invariant_subalgebra(
    torus: &PolarizedTorus,
    parent: &EndoAlgebra,
    group: &GroupAction,
) -> Result<InvariantSubalgebra> {
    if !torus.preserves_polarization(group) {
        return Err(Error::NonInvariantPolarization);
    }
    let linear: Vec<RationalMatrix> = group
        .linear_parts()
        .iter()
        .map(IntegerMatrix::to_rational)
        .collect();
    let basis = commutant(torus, &linear);
    let algebra = MatrixAlgebra::new(basis, torus.polarization())?;
    let embedding = algebra
        .basis()
        .iter()
        .map(|b| {
            parent
                .algebra
                .coordinates(&b.to_rational())
                .ok_or_else(|| Error::NotInSpan("invariant element outside End(X)".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantSubalgebra {
        algebra,
        embedding,
        parent_rank: parent.rank(),
    })
}

impl InvariantSubalgebra {
    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    /// `g' phi g = phi` for every basis element and group element.
    pub fn is_invariant(&self, group: &GroupAction) -> bool {
        group.elements().iter().all(|g| {
            let a = g.linear().to_rational();
            let a_adj = self.algebra.rosati(&a);
            self.algebra
                .basis()
                .iter()
                .all(|b| &(&a_adj * &b.to_rational()) * &a == b.to_rational())
        })
    }
}

/// `g' g = I` for every element of a polarization-preserving group.
pub fn rosati_inverts_group(algebra: &MatrixAlgebra, group: &GroupAction) -> bool {
    group.elements().iter().all(|g| {
        let a = g.linear().to_rational();
        (&algebra.rosati(&a) * &a).is_identity()
    })
}

pub fn trace_positivity_check(
    algebra: &MatrixAlgebra,
    samples: usize,
    seed: u64,
) -> TracePositivity {
    algebra.trace_positivity_check(samples, seed)
}

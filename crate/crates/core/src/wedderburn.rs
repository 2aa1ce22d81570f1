//! Decomposition of a semisimple algebra with positive involution into
//! simple factors over R, classified by the pair (dimension, fixed dimension).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::MatrixAlgebra;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::exact::lattice::Span;
use crate::exact::poly::{count_real_roots, factor_squarefree_small, Polynomial};
use crate::exact::rational::{rat, Rational};

/// Attempts at a random primitive element before the deterministic fallback.
pub const PRIMITIVE_ATTEMPTS: usize = 32;

/// Simple R-algebra with positive involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// `Mat_l(R)` with transpose.
    RealMatrix(usize),
    /// `Mat_m(C)` with conjugate transpose.
    ComplexMatrix(usize),
    /// `Mat_t(H)` with quaternionic conjugate transpose.
    QuaternionMatrix(usize),
}

impl FactorKind {
    /// `(dim_R, dim_R of the fixed part)`.
    pub fn dims(self) -> (usize, usize) {
        match self {
            FactorKind::RealMatrix(l) => (l * l, l * (l + 1) / 2),
            FactorKind::ComplexMatrix(m) => (2 * m * m, m * m),
            FactorKind::QuaternionMatrix(t) => (4 * t * t, 2 * t * t - t),
        }
    }

    pub fn size(self) -> usize {
        match self {
            FactorKind::RealMatrix(s)
            | FactorKind::ComplexMatrix(s)
            | FactorKind::QuaternionMatrix(s) => s,
        }
    }

    /// Dimension of the cone of positive-definite Hermitian matrices.
    pub fn cone_dim(self) -> usize {
        self.dims().1
    }

    /// The unique kind with the given dimensions, if any.
    pub fn from_dims(d: usize, f: usize) -> Option<FactorKind> {
        let candidates = (1..=d).flat_map(|s| {
            [
                FactorKind::RealMatrix(s),
                FactorKind::ComplexMatrix(s),
                FactorKind::QuaternionMatrix(s),
            ]
        });
        let mut found = candidates.filter(|k| k.dims() == (d, f));
        found.next()
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::RealMatrix(l) => write!(f, "RealMatrix({l})"),
            FactorKind::ComplexMatrix(m) => write!(f, "ComplexMatrix({m})"),
            FactorKind::QuaternionMatrix(t) => write!(f, "QuaternionMatrix({t})"),
        }
    }
}

/// All kinds with `dim_R <= max_dim`, with their dimension pairs.
pub fn classification_table(max_dim: usize) -> Vec<(FactorKind, (usize, usize))> {
    let mut out = Vec::new();
    for s in 1..=max_dim {
        for kind in [
            FactorKind::RealMatrix(s),
            FactorKind::ComplexMatrix(s),
            FactorKind::QuaternionMatrix(s),
        ] {
            let dims = kind.dims();
            if dims.0 <= max_dim {
                out.push((kind, dims));
            }
        }
    }
    out
}

/// No two kinds up to `max_dim` share a dimension pair.
pub fn table_is_collision_free(max_dim: usize) -> bool {
    let table = classification_table(max_dim);
    let mut pairs: Vec<(usize, usize)> = table.iter().map(|(_, d)| *d).collect();
    pairs.sort_unstable();
    let before = pairs.len();
    pairs.dedup();
    pairs.len() == before
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterSignature {
    TotallyReal,
    TotallyComplex,
}

/// A Q-simple factor `e A` and the R-factors it splits into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFactor {
    /// Central idempotent, in algebra coordinates.
    pub idempotent: Vec<Rational>,
    pub dim_q: usize,
    pub fixed_dim: usize,
    /// Minimal polynomial of a primitive element of the centre of `e A`.
    pub center_poly: Polynomial,
    pub center_degree: usize,
    pub signature: CenterSignature,
    /// Number of identical R-factors (infinite places of the centre).
    pub places: usize,
    pub kind: FactorKind,
}

impl SimpleFactor {
    /// `(d, f)` of each R-factor.
    pub fn real_dims(&self) -> (usize, usize) {
        self.kind.dims()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub center_dim: usize,
    pub factors: Vec<SimpleFactor>,
    /// Whether the deterministic splitting fallback was needed.
    pub used_fallback: bool,
}

impl Decomposition {
    /// The multiset of R-factors, each Q-factor repeated once per place.
    pub fn real_factors(&self) -> Vec<FactorKind> {
        self.factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.kind, f.places))
            .collect()
    }

    pub fn idempotents(&self) -> Vec<Vec<Rational>> {
        self.factors.iter().map(|f| f.idempotent.clone()).collect()
    }

    /// Exact structural checks against the algebra.
    pub fn verify(&self, algebra: &MatrixAlgebra) -> Vec<Check> {
        let ids = self.idempotents();
        let zero = algebra.zero();
        let mut orthogonal = true;
        for (i, a) in ids.iter().enumerate() {
            for (j, b) in ids.iter().enumerate() {
                let prod = algebra.mul(a, b);
                let expected = if i == j { a } else { &zero };
                orthogonal &= &prod == expected;
            }
        }
        let sum = ids.iter().fold(zero.clone(), |acc, e| algebra.add(&acc, e));
        let central = ids.iter().all(|e| {
            (0..algebra.rank()).all(|k| algebra.commutator(e, &algebra.basis_vector(k)) == zero)
        });
        let stable = ids.iter().all(|e| &algebra.involute(e) == e);
        let dim_total: usize = self.factors.iter().map(|f| f.dim_q).sum();
        let fixed_total: usize = self.factors.iter().map(|f| f.fixed_dim).sum();
        let fixed_algebra = fixed_dimension(algebra, &all_basis(algebra));
        vec![
            Check::new(
                "idempotents_orthogonal",
                orthogonal,
                "e_i e_j = delta_ij e_i",
            ),
            Check::new(
                "idempotents_sum_to_one",
                sum == algebra.unit(),
                "sum e_i = 1",
            ),
            Check::new(
                "idempotents_central",
                central,
                "e_i commutes with the basis",
            ),
            Check::new("involution_fixes_idempotents", stable, "e_i' = e_i"),
            Check::new(
                "factor_dimensions_add_up",
                dim_total == algebra.rank(),
                format!("{dim_total} of {}", algebra.rank()),
            ),
            Check::new(
                "fixed_dimensions_add_up",
                fixed_total == fixed_algebra,
                format!("{fixed_total} of {fixed_algebra}"),
            ),
        ]
    }
}

/// Basis of the centre (alias of [`MatrixAlgebra::center`]).
pub fn compute_center(algebra: &MatrixAlgebra) -> Vec<Vec<Rational>> {
    algebra.center()
}

fn all_basis(algebra: &MatrixAlgebra) -> Vec<Vec<Rational>> {
    (0..algebra.rank())
        .map(|i| algebra.basis_vector(i))
        .collect()
}

fn span_dim(rank: usize, vectors: &[Vec<Rational>]) -> usize {
    Span::new(rank, vectors).dim()
}

/// Dimension of the involution-fixed part of the span of `vectors`, assumed
/// stable under the involution.
fn fixed_dimension(algebra: &MatrixAlgebra, vectors: &[Vec<Rational>]) -> usize {
    let symmetrized: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| algebra.add(v, &algebra.involute(v)))
        .collect();
    span_dim(algebra.rank(), &symmetrized)
}

fn combination(center: &[Vec<Rational>], weights: &[Rational], rank: usize) -> Vec<Rational> {
    let mut z = vec![Rational::from_integer(0.into()); rank];
    for (c, w) in center.iter().zip(weights) {
        for (zi, ci) in z.iter_mut().zip(c) {
            *zi += ci * w;
        }
    }
    z
}

/// A central idempotent together with an irreducible minimal polynomial of a
/// primitive element of its block.
type Block = (Vec<Rational>, Polynomial);

/// Splits `unit` by the factorization of the minimal polynomial of `z` (an
/// element of the block `unit * Z`), via CRT idempotents `(s_i m/p_i)(z)`.
fn split_by(algebra: &MatrixAlgebra, z: &[Rational], unit: &[Rational]) -> Result<Vec<Block>> {
    let m = algebra.min_poly_with_unit(z, unit);
    let fact = factor_squarefree_small(&m)?;
    if fact.factors.iter().any(|(_, mult)| *mult > 1) {
        return Err(Error::Inconsistent(format!(
            "centre is not semisimple: minimal polynomial {m} has repeated factors"
        )));
    }
    if fact.factors.len() == 1 {
        return Ok(vec![(unit.to_vec(), m)]);
    }
    fact.factors
        .iter()
        .map(|(p, _)| {
            let cofactor = m.div_rem(p).0;
            let (g, s, _) = cofactor.ext_gcd(p);
            if g.degree() != Some(0) {
                return Err(Error::Inconsistent(
                    "minimal polynomial factors are not coprime".into(),
                ));
            }
            let q = s.mul(&cofactor).div_rem(&m).1;
            Ok((algebra.eval_poly_with_unit(&q, z, unit), p.clone()))
        })
        .collect()
}

/// Deterministic candidates: small integer combinations in lexicographic order.
fn deterministic_weights(count: usize, limit: usize) -> Vec<Vec<Rational>> {
    let values = [0i64, 1, -1, 2, -2, 3];
    let mut out = Vec::new();
    let mut idx = vec![0usize; count];
    loop {
        out.push(idx.iter().map(|&i| rat(values[i])).collect());
        if out.len() >= limit {
            return out;
        }
        let mut pos = 0;
        while pos < count {
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == count {
            return out;
        }
    }
}

/// Central idempotents of the Q-simple factors, each paired with the
/// irreducible minimal polynomial of a primitive element of its centre.
pub fn central_idempotents(
    algebra: &MatrixAlgebra,
    center: &[Vec<Rational>],
    seed: u64,
) -> Result<(Vec<Block>, bool)> {
    let rank = algebra.rank();
    let c = center.len();
    let unit = algebra.unit().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PRIMITIVE_ATTEMPTS {
        let weights: Vec<Rational> = (0..c).map(|_| rat(rng.gen_range(-3..=3))).collect();
        let z = combination(center, &weights, rank);
        if algebra.min_poly(&z).degree() == Some(c) {
            return Ok((split_by(algebra, &z, &unit)?, false));
        }
    }
    Ok((splitting_fallback(algebra, center)?, true))
}

/// Successive splitting by centre basis elements, then certification that
/// each block is a field.
fn splitting_fallback(algebra: &MatrixAlgebra, center: &[Vec<Rational>]) -> Result<Vec<Block>> {
    let rank = algebra.rank();
    let c = center.len();
    let mut blocks: Vec<Vec<Rational>> = vec![algebra.unit().to_vec()];
    let mut changed = true;
    while changed {
        changed = false;
        let mut next = Vec::new();
        for e in &blocks {
            let mut pieces = vec![(e.clone(), Polynomial::zero())];
            for b in center {
                let z = algebra.mul(e, b);
                let split = split_by(algebra, &z, e)?;
                if split.len() > 1 {
                    pieces = split;
                    changed = true;
                    break;
                }
            }
            next.extend(pieces.into_iter().map(|(e, _)| e));
        }
        blocks = next;
    }
    let mut out = Vec::new();
    for e in blocks {
        let local: Vec<Vec<Rational>> = center.iter().map(|b| algebra.mul(&e, b)).collect();
        let degree = span_dim(rank, &local);
        let found = deterministic_weights(c, 4096).into_iter().find_map(|w| {
            let z = combination(&local, &w, rank);
            let m = algebra.min_poly_with_unit(&z, &e);
            (m.degree() == Some(degree)).then_some(m)
        });
        let m = found.ok_or_else(|| {
            Error::Inconsistent("no primitive element found for a centre block".into())
        })?;
        let fact = factor_squarefree_small(&m)?;
        if fact.factors.len() != 1 {
            return Err(Error::Inconsistent("centre block is not a field".into()));
        }
        out.push((e, m));
    }
    Ok(out)
}

/// Classifies the Q-simple factor `e A` over R.
pub fn classify(
    algebra: &MatrixAlgebra,
    idempotent: &[Rational],
    center_poly: &Polynomial,
) -> Result<SimpleFactor> {
    let rank = algebra.rank();
    if algebra.involute(idempotent) != idempotent {
        return Err(Error::Inconsistent(
            "involution does not fix a central idempotent".into(),
        ));
    }
    let block: Vec<Vec<Rational>> = (0..rank)
        .map(|i| algebra.mul(idempotent, &algebra.basis_vector(i)))
        .collect();
    let dim_q = span_dim(rank, &block);
    let fixed_dim = fixed_dimension(algebra, &block);
    let k = center_poly.degree().unwrap_or(0);
    let real_roots = count_real_roots(center_poly)?;
    let (signature, places) = if real_roots == k {
        (CenterSignature::TotallyReal, k)
    } else if real_roots == 0 && k.is_multiple_of(2) {
        (CenterSignature::TotallyComplex, k / 2)
    } else {
        return Err(Error::Inconsistent(format!(
            "centre field with minimal polynomial {center_poly} has mixed signature"
        )));
    };
    if places == 0 || !dim_q.is_multiple_of(places) || !fixed_dim.is_multiple_of(places) {
        return Err(Error::Inconsistent(format!(
            "dimensions ({dim_q}, {fixed_dim}) do not split over {places} places"
        )));
    }
    let (d, f) = (dim_q / places, fixed_dim / places);
    let kind = FactorKind::from_dims(d, f).ok_or_else(|| {
        Error::Inconsistent(format!("pair (d, f) = ({d}, {f}) matches no simple factor"))
    })?;
    Ok(SimpleFactor {
        idempotent: idempotent.to_vec(),
        dim_q,
        fixed_dim,
        center_poly: center_poly.clone(),
        center_degree: k,
        signature,
        places,
        kind,
    })
}

/// Full decomposition with seeded primitive-element search.
pub fn decompose(algebra: &MatrixAlgebra, seed: u64) -> Result<Decomposition> {
    let center = compute_center(algebra);
    let (blocks, used_fallback) = central_idempotents(algebra, &center, seed)?;
    let mut factors = blocks
        .iter()
        .map(|(e, m)| classify(algebra, e, m))
        .collect::<Result<Vec<_>>>()?;
    factors
        .sort_by(|a, b| (a.kind, a.places, &a.idempotent).cmp(&(b.kind, b.places, &b.idempotent)));
    Ok(Decomposition {
        center_dim: center.len(),
        factors,
        used_fallback,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::IntegerMatrix;

    #[test]
    fn kind_dimensions() {
        assert_eq!(FactorKind::from_dims(1, 1), Some(FactorKind::RealMatrix(1)));
        assert_eq!(FactorKind::from_dims(4, 3), Some(FactorKind::RealMatrix(2)));
        assert_eq!(
            FactorKind::from_dims(4, 1),
            Some(FactorKind::QuaternionMatrix(1))
        );
        assert_eq!(
            FactorKind::from_dims(8, 4),
            Some(FactorKind::ComplexMatrix(2))
        );
        assert_eq!(
            FactorKind::from_dims(2, 1),
            Some(FactorKind::ComplexMatrix(1))
        );
        assert_eq!(FactorKind::from_dims(3, 2), None);
        assert!(table_is_collision_free(64));
    }

    /// Diagonal 2x2 rational matrices: Q x Q with trivial involution.
    fn split_algebra() -> MatrixAlgebra {
        let e = IntegerMatrix::from_i64(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]);
        let basis = vec![
            IntegerMatrix::identity(4),
            IntegerMatrix::from_i64(&[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, -1, 0],
                &[0, 0, 0, -1],
            ]),
        ];
        MatrixAlgebra::new(basis, &e).unwrap()
    }

    #[test]
    fn split_center_gives_standard_idempotents() {
        let a = split_algebra();
        let d = decompose(&a, 42).unwrap();
        assert_eq!(d.center_dim, 2);
        assert_eq!(
            d.real_factors(),
            vec![FactorKind::RealMatrix(1), FactorKind::RealMatrix(1)]
        );
        let half = crate::exact::rational::ratio(1, 2);
        let mut ids = d.idempotents();
        ids.sort();
        assert_eq!(
            ids,
            vec![vec![half.clone(), -half.clone()], vec![half.clone(), half]]
        );
        assert!(d.verify(&a).iter().all(|c| c.passed));
    }

    /// `Q(i) x Q` inside `End(E_i x E_i)`.
    fn mixed_algebra() -> MatrixAlgebra {
        let e = IntegerMatrix::from_i64(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]);
        let basis = vec![
            IntegerMatrix::identity(4),
            IntegerMatrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
            IntegerMatrix::from_i64(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
        ];
        MatrixAlgebra::new(basis, &e).unwrap()
    }

    #[test]
    fn gaussian_times_rational_center() {
        let a = mixed_algebra();
        let d = decompose(&a, 1).unwrap();
        assert_eq!(d.center_dim, 3);
        assert_eq!(
            d.real_factors(),
            vec![FactorKind::RealMatrix(1), FactorKind::ComplexMatrix(1)]
        );
        for e in d.idempotents() {
            assert_eq!(a.mul(&e, &e), e);
        }
        assert!(d.verify(&a).iter().all(|c| c.passed));
    }

    #[test]
    fn fallback_agrees_with_primitive_element() {
        let a = mixed_algebra();
        let center = compute_center(&a);
        let mut fallback: Vec<Vec<Rational>> = splitting_fallback(&a, &center)
            .unwrap()
            .into_iter()
            .map(|b| b.0)
            .collect();
        let mut primary = decompose(&a, 3).unwrap().idempotents();
        fallback.sort();
        primary.sort();
        assert_eq!(fallback, primary);
    }

    #[test]
    fn field_center_gives_single_idempotent() {
        let e = IntegerMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let basis = vec![
            IntegerMatrix::identity(2),
            IntegerMatrix::from_i64(&[&[0, -1], &[1, 0]]),
        ];
        let a = MatrixAlgebra::new(basis, &e).unwrap();
        let d = decompose(&a, 42).unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].idempotent, a.unit());
        assert_eq!(d.real_factors(), vec![FactorKind::ComplexMatrix(1)]);
    }
}

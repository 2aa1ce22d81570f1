//! Integer lattice algorithms: Hermite and Smith normal forms, integer kernels
//! and lattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntegerMatrix, Matrix, RationalMatrix};
use super::rational::{common_denominator, Rational};

/// Row-style Hermite normal form `h = u * m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
    /// Pivot column of each nonzero row of `h`, in order.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-style HNF: nonzero rows first, pivots strictly increasing and
/// positive, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntegerMatrix) -> HermiteForm {
    let rows = m.rows();
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..m.cols() {
        if p == rows {
            break;
        }
        loop {
            // Smallest nonzero magnitude in the column at or below the pivot row.
            let best = (p..rows)
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(p, best);
            u.swap_rows(p, best);
            let mut done = true;
            for r in p + 1..rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = -h[(r, col)].div_floor(&h[(p, col)]);
                h.add_row_multiple(r, p, &q);
                u.add_row_multiple(r, p, &q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(p, col)].is_zero() {
            continue;
        }
        if h[(p, col)].is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for r in 0..p {
            let q = -h[(r, col)].div_floor(&h[(p, col)]);
            if !q.is_zero() {
                h.add_row_multiple(r, p, &q);
                u.add_row_multiple(r, p, &q);
            }
        }
        pivots.push(col);
        p += 1;
    }
    HermiteForm { h, u, pivots }
}

/// Smith normal form `d = u * m * v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let best = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[(i, j)].is_zero())
                .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()));
            let Some((bi, bj)) = best else {
                return finish_smith(d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold the
            // offending row in and reduce again.
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_smith(d, u, v)
}

fn finish_smith(d: IntegerMatrix, u: IntegerMatrix, v: IntegerMatrix) -> SmithForm {
    SmithForm { d, u, v }
}

/// Clears denominators row by row.
fn integral_rows(a: &RationalMatrix) -> IntegerMatrix {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        let den = common_denominator(a.row(i));
        (&a[(i, j)] * Rational::from_integer(den)).to_integer()
    })
}

/// Z-basis of `{x in Z^n : a x = 0}`, returned in Hermite normal form.
pub fn integer_kernel_vectors(a: &RationalMatrix) -> Vec<Vec<BigInt>> {
    let n = a.cols();
    if a.rows() == 0 {
        return (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
    }
    let hnf = hermite_normal_form(&integral_rows(a).transpose());
    let kernel: Vec<Vec<BigInt>> = (hnf.rank()..n).map(|r| hnf.u.row(r).to_vec()).collect();
    if kernel.is_empty() {
        return kernel;
    }
    let canonical = hermite_normal_form(&Matrix::from_rows(kernel));
    (0..canonical.rank())
        .map(|r| canonical.h.row(r).to_vec())
        .collect()
}

/// A linear condition `M -> L(M)` on an unknown matrix; integer solutions of
/// `L(M) = 0` are sought.
pub type LinearCondition<'a> = &'a dyn Fn(&RationalMatrix) -> RationalMatrix;
/// Owned form of [`LinearCondition`].
pub type BoxedCondition = Box<dyn Fn(&RationalMatrix) -> RationalMatrix>;

/// Z-basis of all integer `rows x cols` matrices annihilated by every condition.
pub fn integer_kernel(
    rows: usize,
    cols: usize,
    conditions: &[LinearCondition<'_>],
) -> Vec<IntegerMatrix> {
    let unknowns = rows * cols;
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(unknowns);
    for k in 0..unknowns {
        let mut unit = RationalMatrix::zeros(rows, cols);
        unit[(k / cols, k % cols)] = Rational::one();
        columns.push(
            conditions
                .iter()
                .flat_map(|cond| cond(&unit).into_entries())
                .collect(),
        );
    }
    let equations = columns.first().map_or(0, Vec::len);
    let a = Matrix::from_fn(equations, unknowns, |i, j| columns[j][i].clone());
    integer_kernel_vectors(&a)
        .into_iter()
        .map(|v| Matrix::new(rows, cols, v))
        .collect()
}

/// Whether the rational vector lies in the lattice spanned by the rows.
pub fn lattice_contains(generators: &IntegerMatrix, v: &[Rational]) -> bool {
    assert_eq!(generators.cols(), v.len(), "lattice membership shape");
    if !v.iter().all(|x| x.is_integer()) {
        return false;
    }
    let mut rest: Vec<BigInt> = v.iter().map(|x| x.to_integer()).collect();
    let hnf = hermite_normal_form(generators);
    for (r, &p) in hnf.pivots.iter().enumerate() {
        let (q, rem) = rest[p].div_rem(&hnf.h[(r, p)]);
        if !rem.is_zero() {
            return false;
        }
        for (j, x) in rest.iter_mut().enumerate() {
            *x -= &q * &hnf.h[(r, j)];
        }
    }
    rest.iter().all(Zero::is_zero)
}

/// Coordinates with respect to a fixed family of rational vectors.
#[derive(Clone, Debug)]
pub struct Span {
    ambient: usize,
    /// Reduced echelon rows spanning the same space.
    echelon: RationalMatrix,
    pivots: Vec<usize>,
    /// `echelon = transform * basis`.
    transform: RationalMatrix,
    independent: bool,
}

impl Span {
    pub fn new(ambient: usize, basis: &[Vec<Rational>]) -> Self {
        let k = basis.len();
        let aug = Matrix::from_fn(k, ambient + k, |i, j| {
            if j < ambient {
                basis[i][j].clone()
            } else if j - ambient == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, all_pivots) = aug.rref();
        let pivots: Vec<usize> = all_pivots
            .iter()
            .copied()
            .filter(|&p| p < ambient)
            .collect();
        let rank = pivots.len();
        let rows: Vec<usize> = (0..rank).collect();
        let echelon = r.select(&rows, &(0..ambient).collect::<Vec<_>>());
        let transform = r.select(&rows, &(ambient..ambient + k).collect::<Vec<_>>());
        Span {
            ambient,
            echelon,
            pivots,
            transform,
            independent: rank == k,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_independent(&self) -> bool {
        self.independent
    }

    /// Coordinates of `v` in the original family (independent families only),
    /// or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "span coordinate shape");
        let weights: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recombined = self.echelon.vec_mul(&weights);
        if recombined != v {
            return None;
        }
        Some(self.transform.vec_mul(&weights))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let weights: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.echelon.vec_mul(&weights) == v
    }
}

//! Rational polyhedral cones with both ray and facet descriptions, converted
//! by enumerating subsets (adequate in the small dimensions used here).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::matrix::RationalMatrix;
use crate::exact::rational::{primitive_integer_vector, rat, to_rationals, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCone {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
}

fn int_dot(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        acc + Rational::from_integer(x.clone()) * y
    })
}

fn int_dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn push_unique(list: &mut Vec<Vec<BigInt>>, v: Vec<BigInt>) {
    if !list.contains(&v) {
        list.push(v);
    }
}

fn rows_matrix(rows: &[Vec<Rational>], cols: usize) -> RationalMatrix {
    if rows.is_empty() {
        RationalMatrix::zeros(0, cols)
    } else {
        RationalMatrix::from_rows(rows.to_vec())
    }
}

/// Primitive vectors `v` with `v . r >= 0` for all `r` in `generators` that
/// vanish on `dim - 1` independent generators (within the span of `extra`'s
/// orthogonal complement).
fn supporting_normals(
    dim: usize,
    generators: &[Vec<Rational>],
    extra: &[Vec<Rational>],
) -> Vec<Vec<BigInt>> {
    let target = dim - 1 - extra.len();
    let mut out = Vec::new();
    for subset in subsets(generators.len(), target) {
        let mut rows: Vec<Vec<Rational>> = subset.iter().map(|&i| generators[i].clone()).collect();
        rows.extend(extra.iter().cloned());
        let kernel = rows_matrix(&rows, dim).nullspace();
        if kernel.len() != 1 {
            continue;
        }
        let Some(mut n) = primitive_integer_vector(&kernel[0]) else {
            continue;
        };
        let signs: Vec<Rational> = generators.iter().map(|g| int_dot(&n, g)).collect();
        let has_pos = signs.iter().any(Signed::is_positive);
        let has_neg = signs.iter().any(Signed::is_negative);
        if has_pos && has_neg {
            continue;
        }
        if has_neg {
            n = n.iter().map(|x| -x).collect();
        }
        if !has_pos && !has_neg {
            continue;
        }
        push_unique(&mut out, n);
    }
    out.sort();
    out
}

impl PolyhedralCone {
    /// Cone generated by the given vectors (need not span the whole space).
    pub fn from_rays(dim: usize, generators: &[Vec<Rational>]) -> Result<Self> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::Dimension(
                "ray length does not match the ambient dimension".into(),
            ));
        }
        let mut rays: Vec<Vec<BigInt>> = Vec::new();
        for g in generators {
            if let Some(p) = primitive_integer_vector(g) {
                push_unique(&mut rays, p);
            }
        }
        let rational: Vec<Vec<Rational>> = rays.iter().map(|r| to_rationals(r)).collect();
        let span_rank = rows_matrix(&rational, dim).rank();
        // Equations cutting out the span, as pairs of opposite facets.
        let complement: Vec<Vec<Rational>> = rows_matrix(&rational, dim).nullspace();
        let mut facets = Vec::new();
        if span_rank > 0 {
            if span_rank == 1 {
                // A half-line: its own direction is the single inner facet.
                let n = rays[0].clone();
                facets.push(n);
            } else {
                facets = supporting_normals(dim, &rational, &complement);
            }
        }
        for w in &complement {
            let p = primitive_integer_vector(w).expect("nonzero complement vector");
            push_unique(&mut facets, p.iter().map(|x| -x).collect());
            push_unique(&mut facets, p);
        }
        facets.sort();
        let mut cone = PolyhedralCone { dim, rays, facets };
        cone.prune_rays();
        Ok(cone)
    }

    /// Pointed cone `{x : f . x >= 0}`; redundant inequalities are dropped.
    pub fn from_facets(dim: usize, inequalities: &[Vec<Rational>]) -> Result<Self> {
        if inequalities.iter().any(|f| f.len() != dim) {
            return Err(Error::Dimension(
                "facet length does not match the ambient dimension".into(),
            ));
        }
        if rows_matrix(inequalities, dim).rank() < dim {
            return Err(Error::Inconsistent("cone is not pointed".into()));
        }
        let rays = supporting_normals(dim, inequalities, &[]);
        if rays.is_empty() {
            return Err(Error::Inconsistent(
                "inequalities cut out only the origin".into(),
            ));
        }
        let rational: Vec<Vec<Rational>> = rays.iter().map(|r| to_rationals(r)).collect();
        Self::from_rays(dim, &rational)
    }

    /// Removes generators that are not extreme.
    fn prune_rays(&mut self) {
        let facets = self.facets.clone();
        let dim = self.dim;
        if self.rays.len() <= 1 {
            return;
        }
        let span_rank = rows_matrix(
            &self
                .rays
                .iter()
                .map(|r| to_rationals(r))
                .collect::<Vec<_>>(),
            dim,
        )
        .rank();
        self.rays.retain(|r| {
            let tight: Vec<Vec<Rational>> = facets
                .iter()
                .filter(|f| int_dot_int(f, r).is_zero())
                .map(|f| to_rationals(f))
                .collect();
            rows_matrix(&tight, dim).rank() >= dim - 1 || span_rank == 1
        });
        self.rays.sort();
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn rational_rays(&self) -> Vec<Vec<Rational>> {
        self.rays.iter().map(|r| to_rationals(r)).collect()
    }

    /// Facet pairings of `x`.
    pub fn pairings(&self, x: &[Rational]) -> Vec<Rational> {
        self.facets.iter().map(|f| int_dot(f, x)).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.pairings(x).iter().all(|p| !p.is_negative())
    }

    /// Interior in the ambient space (false for lower-dimensional cones).
    pub fn interior_contains(&self, x: &[Rational]) -> bool {
        self.is_full_dimensional() && self.pairings(x).iter().all(Signed::is_positive)
    }

    pub fn is_full_dimensional(&self) -> bool {
        rows_matrix(&self.rational_rays(), self.dim).rank() == self.dim
    }

    /// Every ray pairs non-negatively with every facet, each facet is supported
    /// by `dim - 1` independent rays, and rays are primitive and distinct.
    pub fn is_consistent(&self) -> bool {
        let pairings_ok = self
            .rays
            .iter()
            .all(|r| self.facets.iter().all(|f| !int_dot_int(f, r).is_negative()));
        let primitive = self
            .rays
            .iter()
            .all(|r| primitive_integer_vector(&to_rationals(r)).as_deref() == Some(r.as_slice()));
        let mut sorted = self.rays.clone();
        sorted.sort();
        sorted.dedup();
        let distinct = sorted.len() == self.rays.len();
        let supported = !self.is_full_dimensional()
            || self.facets.iter().all(|f| {
                let tight: Vec<Vec<Rational>> = self
                    .rays
                    .iter()
                    .filter(|r| int_dot_int(f, r).is_zero())
                    .map(|r| to_rationals(r))
                    .collect();
                rows_matrix(&tight, self.dim).rank() >= self.dim - 1
            });
        pairings_ok && primitive && distinct && supported
    }

    /// Recomputing facets from rays reproduces the stored facets.
    pub fn duality_holds(&self) -> bool {
        match Self::from_rays(self.dim, &self.rational_rays()) {
            Ok(other) => other.facets == self.facets,
            Err(_) => false,
        }
    }

    /// A random interior point: positive integer combination of the rays.
    pub fn sample_interior<R: Rng>(&self, rng: &mut R, max_weight: i64) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.dim];
        for r in &self.rays {
            let w = rat(rng.gen_range(1..=max_weight));
            for (xi, ri) in x.iter_mut().zip(r) {
                *xi += &w * Rational::from_integer(ri.clone());
            }
        }
        x
    }

    /// Image under a linear map.
    pub fn transform(&self, m: &RationalMatrix) -> Result<Self> {
        let images: Vec<Vec<Rational>> =
            self.rational_rays().iter().map(|r| m.mul_vec(r)).collect();
        Self::from_rays(self.dim, &images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn iv(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn quadrant() {
        let c = PolyhedralCone::from_rays(2, &[v(&[1, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(c.rays(), &[iv(&[0, 1]), iv(&[1, 0])]);
        assert_eq!(c.facets(), &[iv(&[0, 1]), iv(&[1, 0])]);
        assert!(c.interior_contains(&v(&[1, 1])));
        assert!(!c.interior_contains(&v(&[1, 0])));
        assert!(c.contains(&v(&[1, 0])));
        assert!(c.is_consistent());
        assert!(c.duality_holds());
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = PolyhedralCone::from_rays(2, &[v(&[1, 0]), v(&[1, 1]), v(&[0, 1]), v(&[2, 0])])
            .unwrap();
        assert_eq!(c.rays().len(), 2);
    }

    #[test]
    fn facets_to_rays() {
        // b >= 0, a - b >= 0, c - a >= 0 in coordinates (a, b, c).
        let c = PolyhedralCone::from_facets(3, &[v(&[0, 1, 0]), v(&[1, -1, 0]), v(&[-1, 0, 1])])
            .unwrap();
        assert_eq!(c.rays(), &[iv(&[0, 0, 1]), iv(&[1, 0, 1]), iv(&[1, 1, 1])]);
        assert!(c.is_consistent());
        assert!(c.duality_holds());
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = PolyhedralCone::from_rays(3, &[v(&[0, 0, 1]), v(&[1, 0, 1])]).unwrap();
        assert!(!c.is_full_dimensional());
        assert!(c.contains(&v(&[1, 0, 3])));
        assert!(!c.contains(&v(&[1, 1, 3])));
        assert!(!c.interior_contains(&v(&[1, 0, 3])));
        let ray = PolyhedralCone::from_rays(2, &[v(&[2, 4])]).unwrap();
        assert!(ray.contains(&v(&[1, 2])));
        assert!(!ray.contains(&v(&[-1, -2])));
        assert!(!ray.contains(&v(&[1, 3])));
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}

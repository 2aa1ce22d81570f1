//! Polarized complex tori `C^n / Lambda` in lattice coordinates and finite
//! groups of affine automorphisms acting on them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exact::lattice::{integer_kernel_vectors, lattice_contains};
use crate::exact::matrix::{IntegerMatrix, Matrix, RationalMatrix};
use crate::exact::rational::{format_rational, mod_one, Rational};

/// Default bound on the order of a closed group.
pub const DEFAULT_MAX_ORDER: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusValidation {
    pub checks: Vec<Check>,
    /// The supplied `E` was negative on `E J` and has been replaced by `-E`.
    pub sign_normalized: bool,
}

impl TorusValidation {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const CHECK_COMPLEX_STRUCTURE: &str = "complex_structure_squares_to_minus_one";
pub const CHECK_ALTERNATING: &str = "polarization_alternating";
pub const CHECK_COMPATIBLE: &str = "polarization_compatible_with_complex_structure";
pub const CHECK_DEFINITE: &str = "polarization_definite";

/// Checks the Riemann relations for `(J, E)` without constructing the torus.
pub fn validate_torus(j: &RationalMatrix, e: &IntegerMatrix) -> Result<TorusValidation> {
    let dim = j.rows();
    if !j.is_square() || !e.is_square() || e.rows() != dim {
        return Err(Error::Dimension(format!(
            "complex structure is {}x{}, polarization is {}x{}",
            j.rows(),
            j.cols(),
            e.rows(),
            e.cols()
        )));
    }
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "lattice rank {dim} is not a positive even number"
        )));
    }
    let er = e.to_rational();
    let mut checks = Vec::new();

    let square = j * j;
    checks.push(Check::new(
        CHECK_COMPLEX_STRUCTURE,
        (-&square).is_identity(),
        if (-&square).is_identity() {
            "J^2 = -I"
        } else {
            "J^2 != -I"
        },
    ));
    let alternating = e.is_antisymmetric();
    checks.push(Check::new(
        CHECK_ALTERNATING,
        alternating,
        if alternating { "E^T = -E" } else { "E^T != -E" },
    ));
    let compatible = &(&j.transpose() * &er) * j == er;
    checks.push(Check::new(
        CHECK_COMPATIBLE,
        compatible,
        if compatible {
            "J^T E J = E"
        } else {
            "J^T E J != E"
        },
    ));

    let ej = &er * j;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let sym = (&ej + &ej.transpose()).scale(&half);
    let (definite, negative) = if sym.is_positive_definite() {
        (true, false)
    } else if (-&sym).is_positive_definite() {
        (true, true)
    } else {
        (false, false)
    };
    let detail = match (definite, negative) {
        (true, false) => "E J positive definite",
        (true, true) => "E J negative definite; E replaced by -E",
        _ => "E J is not definite",
    };
    checks.push(Check::new(CHECK_DEFINITE, definite, detail));

    Ok(TorusValidation {
        checks,
        sign_normalized: definite && negative,
    })
}

/// A complex torus of dimension `n` with lattice `Z^{2n}`, rational complex
/// structure `J` and polarization `E`, normalized so that `E J` is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedTorus {
    n: usize,
    j: RationalMatrix,
    e: IntegerMatrix,
}

impl PolarizedTorus {
    /// Validates and sign-normalizes. On failure the first failing check is
    /// reported.
    pub fn new(j: RationalMatrix, e: IntegerMatrix) -> Result<(Self, TorusValidation)> {
        let validation = validate_torus(&j, &e)?;
        if let Some(failed) = validation.failures().next() {
            return Err(Error::InvalidTorus {
                check: failed.name,
                detail: failed.detail.clone(),
            });
        }
        let e = if validation.sign_normalized { -&e } else { e };
        let n = j.rows() / 2;
        Ok((PolarizedTorus { n, j, e }, validation))
    }

    /// The standard elliptic curve `C / Z[i]`.
    pub fn gaussian_curve() -> Self {
        let j = RationalMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let e = IntegerMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        PolarizedTorus { n: 1, j, e }
    }

    /// `E_i^n` with the product polarization.
    pub fn gaussian_power(n: usize) -> Self {
        let curve = Self::gaussian_curve();
        let j = RationalMatrix::block_diagonal(&vec![curve.j.clone(); n]);
        let e = IntegerMatrix::block_diagonal(&vec![curve.e.clone(); n]);
        PolarizedTorus { n, j, e }
    }

    /// Same torus, different polarization (must satisfy the Riemann relations).
    pub fn with_polarization(&self, e: IntegerMatrix) -> Result<(Self, TorusValidation)> {
        Self::new(self.j.clone(), e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice_rank(&self) -> usize {
        2 * self.n
    }

    pub fn complex_structure(&self) -> &RationalMatrix {
        &self.j
    }

    pub fn polarization(&self) -> &IntegerMatrix {
        &self.e
    }

    pub fn polarization_rational(&self) -> RationalMatrix {
        self.e.to_rational()
    }

    /// Checks that `g` is a holomorphic automorphism of the lattice.
    pub fn check_automorphism(&self, g: &AffineAuto) -> Result<()> {
        let dim = self.lattice_rank();
        if g.linear.rows() != dim || !g.linear.is_square() || g.translation.len() != dim {
            return Err(Error::Dimension(format!(
                "automorphism acts on rank {}, torus lattice has rank {dim}",
                g.linear.rows()
            )));
        }
        if !g.linear.is_unimodular() {
            return Err(Error::InvalidAutomorphism(format!(
                "linear part has determinant {}",
                g.linear.determinant()
            )));
        }
        let a = g.linear.to_rational();
        if &a * &self.j != &self.j * &a {
            return Err(Error::InvalidAutomorphism(
                "linear part does not commute with the complex structure".into(),
            ));
        }
        Ok(())
    }

    /// Whether `g` has no fixed point on the torus.
    pub fn is_free(&self, g: &AffineAuto) -> Result<bool> {
        is_free(g)
    }

    /// `E_G = sum_g Lin(g)^T E Lin(g)`.
    pub fn invariant_polarization(&self, group: &GroupAction) -> IntegerMatrix {
        invariant_polarization(&self.e, group)
    }

    /// `Lin(g)^T E Lin(g) = E` for every element.
    pub fn preserves_polarization(&self, group: &GroupAction) -> bool {
        group
            .elements()
            .iter()
            .all(|g| &(&g.linear.transpose() * &self.e) * &g.linear == self.e)
    }
}

/// `x -> A x + t` on `R^{2n} / Z^{2n}`; the translation is kept in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAuto {
    linear: IntegerMatrix,
    translation: Vec<Rational>,
}

impl AffineAuto {
    pub fn new(linear: IntegerMatrix, translation: Vec<Rational>) -> Result<Self> {
        if !linear.is_square() || linear.rows() != translation.len() {
            return Err(Error::Dimension(format!(
                "linear part {}x{} with translation of length {}",
                linear.rows(),
                linear.cols(),
                translation.len()
            )));
        }
        let translation = translation.iter().map(mod_one).collect();
        Ok(AffineAuto {
            linear,
            translation,
        })
    }

    pub fn linear_only(linear: IntegerMatrix) -> Self {
        let dim = linear.rows();
        AffineAuto {
            linear,
            translation: vec![Rational::zero(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::linear_only(IntegerMatrix::identity(dim))
    }

    pub fn translation_by(translation: Vec<Rational>) -> Self {
        let dim = translation.len();
        AffineAuto {
            linear: IntegerMatrix::identity(dim),
            translation: translation.iter().map(mod_one).collect(),
        }
    }

    pub fn linear(&self) -> &IntegerMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    /// `self after other`: `(A, t) o (B, s) = (AB, A s + t mod 1)`.
    pub fn compose(&self, other: &AffineAuto) -> AffineAuto {
        let linear = &self.linear * &other.linear;
        let shifted = self.linear.to_rational().mul_vec(&other.translation);
        let translation = shifted
            .iter()
            .zip(&self.translation)
            .map(|(a, b)| mod_one(&(a + b)))
            .collect();
        AffineAuto {
            linear,
            translation,
        }
    }

    /// Panics if the linear part is not unimodular.
    pub fn inverse(&self) -> AffineAuto {
        let inv = self
            .linear
            .unimodular_inverse()
            .expect("automorphism with non-unimodular linear part");
        let shifted = inv.to_rational().mul_vec(&self.translation);
        let translation = shifted.iter().map(|x| mod_one(&-x)).collect();
        AffineAuto {
            linear: inv,
            translation,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.is_linear()
    }

    /// Zero translation part.
    pub fn is_linear(&self) -> bool {
        self.translation.iter().all(Zero::is_zero)
    }

    /// Non-trivial pure translation.
    pub fn is_translation(&self) -> bool {
        self.linear.is_identity() && !self.is_linear()
    }

    pub fn translation_strings(&self) -> Vec<String> {
        self.translation.iter().map(format_rational).collect()
    }
}

/// Whether `x -> A x + t` has no fixed point on the torus: a fixed point exists
/// iff `t` lies in `im(A - I) + Z^{2n}`, tested by projecting along the
/// integral left kernel of `A - I`.
pub fn is_free(g: &AffineAuto) -> Result<bool> {
    if g.is_identity() {
        return Err(Error::IdentityElement);
    }
    let dim = g.dim();
    let shifted = &g.linear.to_rational() - &RationalMatrix::identity(dim);
    let left_kernel = integer_kernel_vectors(&shifted.transpose());
    if left_kernel.is_empty() {
        return Ok(false);
    }
    let p = Matrix::from_rows(left_kernel);
    let projected = p.to_rational().mul_vec(&g.translation);
    // The image lattice P Z^{2n} is spanned by the columns of P.
    Ok(!lattice_contains(&p.transpose(), &projected))
}

/// A finite group of affine automorphisms with its multiplication table.
/// Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    dim: usize,
    elements: Vec<AffineAuto>,
    table: Vec<Vec<usize>>,
    generators: Vec<usize>,
}

impl GroupAction {
    pub fn trivial(dim: usize) -> Self {
        GroupAction {
            dim,
            elements: vec![AffineAuto::identity(dim)],
            table: vec![vec![0]],
            generators: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AffineAuto] {
        &self.elements
    }

    /// Indices of the generating elements, in input order.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    /// Index of `elements[i] o elements[j]`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.table[i]
            .iter()
            .position(|&k| k == 0)
            .expect("group table row without identity")
    }

    pub fn index_of(&self, g: &AffineAuto) -> Option<usize> {
        self.elements.iter().position(|h| h == g)
    }

    /// Distinct linear parts.
    pub fn linear_parts(&self) -> Vec<IntegerMatrix> {
        let mut out: Vec<IntegerMatrix> = Vec::new();
        for g in &self.elements {
            if !out.contains(&g.linear) {
                out.push(g.linear.clone());
            }
        }
        out
    }

    pub fn has_translations(&self) -> bool {
        self.elements.iter().any(AffineAuto::is_translation)
    }

    /// Freeness of every non-identity element, by index.
    pub fn freeness(&self) -> Vec<(usize, bool)> {
        self.elements
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, g)| (i, is_free(g).expect("non-identity element")))
            .collect()
    }

    pub fn acts_freely(&self) -> bool {
        self.freeness().iter().all(|&(_, free)| free)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]])
            })
        })
    }
}

/// Closure of the generators under composition; fails once more than
/// `max_order` elements appear.
pub fn close_group(dim: usize, generators: &[AffineAuto], max_order: usize) -> Result<GroupAction> {
    for g in generators {
        if g.dim() != dim {
            return Err(Error::Dimension(format!(
                "generator acts on rank {}, expected {dim}",
                g.dim()
            )));
        }
        if !g.linear.is_unimodular() {
            return Err(Error::InvalidAutomorphism(format!(
                "linear part has determinant {}",
                g.linear.determinant()
            )));
        }
    }
    let mut elements = vec![AffineAuto::identity(dim)];
    let mut index: HashMap<AffineAuto, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut generator_indices = Vec::new();
    for g in generators {
        let i = *index.entry(g.clone()).or_insert_with(|| {
            elements.push(g.clone());
            elements.len() - 1
        });
        generator_indices.push(i);
    }
    // Right-multiplying by generators reaches every element of a finite group.
    let mut frontier = 0;
    while frontier < elements.len() {
        for g in generators {
            let h = elements[frontier].compose(g);
            if !index.contains_key(&h) {
                if elements.len() >= max_order {
                    return Err(Error::GroupTooLarge { max_order });
                }
                index.insert(h.clone(), elements.len());
                elements.push(h);
            }
        }
        frontier += 1;
    }
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    index
                        .get(&a.compose(b))
                        .copied()
                        .ok_or_else(|| Error::Inconsistent("group closure is not closed".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupAction {
        dim,
        elements,
        table,
        generators: generator_indices,
    })
}

/// `sum_g Lin(g)^T E Lin(g)`.
pub fn invariant_polarization(e: &IntegerMatrix, group: &GroupAction) -> IntegerMatrix {
    let dim = e.rows();
    group
        .elements()
        .iter()
        .fold(IntegerMatrix::zeros(dim, dim), |acc, g| {
            &acc + &(&(&g.linear.transpose() * e) * &g.linear)
        })
}

/// Divides out the content of an integer matrix (keeps the sign).
pub fn primitive_form(e: &IntegerMatrix) -> IntegerMatrix {
    use num_integer::Integer;
    let g = e.entries().iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return e.clone();
    }
    e.map(|x| x / &g)
}

/// `true` when every entry lies in `[0, 1)`; used
/// as a sanity check on stored translations.
pub fn translation_is_reduced(t: &[Rational]) -> bool {
    t.iter().all(|x| !x.is_negative() && x < &Rational::one())
}

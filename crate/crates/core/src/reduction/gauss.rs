//! Positive-definite binary quadratic forms under `GL_2(Z)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::polyhedral::PolyhedralCone;
use super::tiling::ActionSet;
use super::GroupWord;
use crate::error::{Error, Result};
use crate::exact::matrix::{IntegerMatrix, RationalMatrix};
use crate::exact::rational::{rat, Rational};

/// `a x^2 + b x y + c y^2`, i.e. the symmetric matrix `[[a, b/2], [b/2, c]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    /// `0 <= b <= a <= c`.
    pub fn is_reduced(&self) -> bool {
        !self.b.is_negative() && self.b <= self.a && self.a <= self.c
    }

    /// `M^T Q M`.
    pub fn transform(&self, m: &IntegerMatrix) -> BinaryForm {
        let (p, q, r, s) = (&m[(0, 0)], &m[(0, 1)], &m[(1, 0)], &m[(1, 1)]);
        let two = BigInt::from(2);
        BinaryForm {
            a: &self.a * p * p + &self.b * p * r + &self.c * r * r,
            b: &two * &self.a * p * q + &self.b * (p * s + q * r) + &two * &self.c * r * s,
            c: &self.a * q * q + &self.b * q * s + &self.c * s * s,
        }
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        [&self.a, &self.b, &self.c]
            .iter()
            .map(|x| Rational::from_integer((*x).clone()))
            .collect()
    }

    pub fn from_vector(v: &[Rational]) -> Option<BinaryForm> {
        if v.len() != 3 || !v.iter().all(|x| x.is_integer()) {
            return None;
        }
        Some(BinaryForm {
            a: v[0].to_integer(),
            b: v[1].to_integer(),
            c: v[2].to_integer(),
        })
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// `S`, `T` and the reflection `R = diag(1, -1)` generating `GL_2(Z)`.
pub fn gauss_generators() -> Vec<IntegerMatrix> {
    vec![
        IntegerMatrix::from_i64(&[&[0, -1], &[1, 0]]),
        IntegerMatrix::from_i64(&[&[1, 1], &[0, 1]]),
        IntegerMatrix::from_i64(&[&[1, 0], &[0, -1]]),
    ]
}

pub fn gauss_generator_names() -> Vec<String> {
    ["S", "T", "R"].iter().map(|s| s.to_string()).collect()
}

/// Linear action of `Q -> M^T Q M` on coordinates `(a, b, c)`.
pub fn congruence_action(m: &IntegerMatrix) -> RationalMatrix {
    let columns: Vec<Vec<Rational>> = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        .iter()
        .map(|&(a, b, c)| BinaryForm::new(a, b, c).transform(m).to_vector())
        .collect();
    RationalMatrix::from_fn(3, 3, |i, j| columns[j][i].clone())
}

/// The generators as coordinate actions, for the tiling verifier.
pub fn gauss_action_set() -> ActionSet {
    let gens = gauss_generators();
    let forward: Vec<RationalMatrix> = gens.iter().map(congruence_action).collect();
    let backward: Vec<RationalMatrix> = gens
        .iter()
        .map(|m| congruence_action(&m.unimodular_inverse().expect("unimodular generator")))
        .collect();
    ActionSet::with_inverses(forward, backward, gauss_generator_names())
}

/// The trace pairing `Tr(Q_1 Q_2)` on coordinates.
pub fn form_gram() -> RationalMatrix {
    RationalMatrix::diagonal(&[rat(1), Rational::new(1.into(), 2.into()), rat(1)])
}

/// Minkowski domain `{b >= 0, a - b >= 0, c - a >= 0}`.
pub fn minkowski_domain_p2() -> PolyhedralCone {
    let facets: Vec<Vec<Rational>> = [[0, 1, 0], [1, -1, 0], [-1, 0, 1]]
        .iter()
        .map(|f| f.iter().map(|&x| rat(x)).collect())
        .collect();
    PolyhedralCone::from_facets(3, &facets).expect("Minkowski facets define a pointed cone")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussReduction {
    pub input: BinaryForm,
    pub reduced: BinaryForm,
    /// Letters in generator order `S, T, R`; the product `M_1 M_2 ...` of the
    /// letters in application order is `matrix`.
    pub word: GroupWord,
    pub matrix: IntegerMatrix,
}

impl GaussReduction {
    pub fn steps(&self) -> usize {
        self.word.len()
    }

    /// `matrix^T Q matrix` equals the reduced form and the word evaluates to `matrix`.
    pub fn certificate_holds(&self) -> bool {
        let gens = gauss_generators();
        let product =
            self.word
                .letters()
                .iter()
                .fold(IntegerMatrix::identity(2), |acc, &(g, inv)| {
                    let m = if inv {
                        gens[g].unimodular_inverse().expect("unimodular generator")
                    } else {
                        gens[g].clone()
                    };
                    &acc * &m
                });
        product == self.matrix && self.input.transform(&self.matrix) == self.reduced
    }
}

/// Gauss reduction to the unique form with `0 <= b <= a <= c`.
pub fn gauss_reduce(form: &BinaryForm) -> Result<GaussReduction> {
    if !form.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(format!("binary form {form}")));
    }
    let gens = gauss_generators();
    let t_inv = gens[1].unimodular_inverse().expect("unimodular generator");
    let mut current = form.clone();
    let mut word = GroupWord::identity();
    let mut matrix = IntegerMatrix::identity(2);
    let mut apply = |current: &mut BinaryForm, g: usize, inv: bool, word: &mut GroupWord| {
        let m = if inv { &t_inv } else { &gens[g] };
        *current = current.transform(m);
        matrix = &matrix * m;
        *word = word.then(g, inv);
    };
    loop {
        // Bring b into (-a, a] with T^k, k = floor((a - b) / 2a).
        let two_a = BigInt::from(2) * &current.a;
        let k = (&current.a - &current.b).div_floor(&two_a);
        let steps = k.abs();
        let mut i = BigInt::zero();
        while i < steps {
            apply(&mut current, 1, k.is_negative(), &mut word);
            i += BigInt::one();
        }
        if current.a > current.c {
            apply(&mut current, 0, false, &mut word);
        } else {
            break;
        }
    }
    if current.b.is_negative() {
        apply(&mut current, 2, false, &mut word);
    }
    Ok(GaussReduction {
        input: form.clone(),
        reduced: current,
        word,
        matrix,
    })
}

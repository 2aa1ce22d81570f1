//! Fundamental domains: polyhedral cones, constructive reduction for binary
//! forms and hyperbolic rank-two factors, a sampled tiling verifier and the
//! pushdown to the quotient.

pub mod gauss;
pub mod hyperbolic;
pub mod pell;
pub mod polyhedral;
pub mod pushdown;
pub mod tiling;

use std::fmt;

use crate::exact::matrix::RationalMatrix;
use crate::exact::rational::Rational;

pub use gauss::{gauss_reduce, minkowski_domain_p2, BinaryForm, GaussReduction};
pub use hyperbolic::hyperbolic_domain;
pub use pell::{pell_fundamental_unit, PellSolution};
pub use polyhedral::PolyhedralCone;
pub use pushdown::{pushdown_domain, Pushdown};
pub use tiling::{find_eta, verify_tiling, ActionSet, TilingProblem, TilingReport, TilingSettings};

/// A word in generators and their inverses, stored in application order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<(usize, bool)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn from_letters(letters: Vec<(usize, bool)>) -> Self {
        GroupWord { letters }
    }

    /// Letters as `(generator index, inverted)`, first applied first.
    pub fn letters(&self) -> &[(usize, bool)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word followed by one more letter.
    pub fn then(&self, generator: usize, inverted: bool) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.push((generator, inverted));
        GroupWord { letters }
    }

    /// Concatenation: `self` first, then `other`.
    pub fn followed_by(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    /// Matrix of the composite action on column vectors, `M_last ... M_first`.
    pub fn action(&self, actions: &ActionSet) -> RationalMatrix {
        let mut m = RationalMatrix::identity(actions.dim());
        for &(g, inv) in &self.letters {
            m = actions.matrix(g, inv) * &m;
        }
        m
    }

    pub fn apply(&self, actions: &ActionSet, x: &[Rational]) -> Vec<Rational> {
        self.letters.iter().fold(x.to_vec(), |acc, &(g, inv)| {
            actions.matrix(g, inv).mul_vec(&acc)
        })
    }

    /// Human-readable form with the given generator names, e.g. `"S T^-1"`.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "id".to_string();
        }
        self.letters
            .iter()
            .map(|&(g, inv)| {
                let name = names.get(g).cloned().unwrap_or_else(|| format!("g{g}"));
                if inv {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

/// Outcome of reducing one class into a domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub input: Vec<Rational>,
    pub word: GroupWord,
    pub reduced: Vec<Rational>,
    pub steps: usize,
}

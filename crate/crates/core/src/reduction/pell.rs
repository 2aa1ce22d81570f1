//! Fundamental solutions of `x^2 - D y^2 = +-1` by continued fractions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub d: i64,
    /// Smallest positive solution of `x^2 - D y^2 = +-1`.
    pub x: BigInt,
    pub y: BigInt,
    /// `+1` or `-1`.
    pub norm: i32,
    /// Smallest positive solution of norm `+1`.
    pub plus_x: BigInt,
    pub plus_y: BigInt,
}

impl PellSolution {
    pub fn satisfies(&self) -> bool {
        let d = BigInt::from(self.d);
        let n = &self.x * &self.x - &d * &self.y * &self.y;
        let plus = &self.plus_x * &self.plus_x - &d * &self.plus_y * &self.plus_y;
        n == BigInt::from(self.norm) && plus.is_one()
    }
}

pub fn pell_fundamental_unit(d: i64) -> Result<PellSolution> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!(
            "Pell parameter {d} is not positive"
        )));
    }
    let dd = BigInt::from(d);
    let a0 = dd.sqrt();
    if &a0 * &a0 == dd {
        return Err(Error::SquareDiscriminant(d));
    }
    // Continued fraction of sqrt(D): m, q, a recursions; convergents h/k.
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        let n = &h * &h - &dd * &k * &k;
        if n.abs().is_one() {
            let norm = if n.is_positive() { 1 } else { -1 };
            let (plus_x, plus_y) = if norm == 1 {
                (h.clone(), k.clone())
            } else {
                (&h * &h + &dd * &k * &k, BigInt::from(2) * &h * &k)
            };
            return Ok(PellSolution {
                d,
                x: h,
                y: k,
                norm,
                plus_x,
                plus_y,
            });
        }
        m = &q * &a - &m;
        q = (&dd - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Smallest `y` in `1..=y_max` with `D y^2 +- 1` a perfect square, by direct scan.
pub fn smallest_solution_by_scan(d: i64, y_max: u64) -> Option<(BigInt, BigInt)> {
    let dd = BigInt::from(d);
    (1..=y_max).find_map(|y| {
        let y = BigInt::from(y);
        let base = &dd * &y * &y;
        [&base - BigInt::one(), &base + BigInt::one()]
            .into_iter()
            .find_map(|sq| {
                if sq.is_negative() {
                    return None;
                }
                let x = sq.sqrt();
                (&x * &x == sq && x.is_positive()).then(|| (x, y.clone()))
            })
    })
}

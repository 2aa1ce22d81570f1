//! Univariate polynomials over Q: characteristic polynomials, Sturm root
//! counting and factorization of small degree.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::RationalMatrix;
use super::rational::{common_denominator, format_rational, rat, Rational};
use crate::error::{Error, Result};

/// Largest degree accepted by [`factor_squarefree_small`].
pub const MAX_FACTOR_DEGREE: usize = 8;

/// Coefficients lowest degree first; never carries trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Self::constant(Rational::one()), |acc, r| {
                acc.mul(&Self::new(vec![-r.clone(), Rational::one()]))
            })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// Panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(Rational::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Evaluates the polynomial at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &RationalMatrix) -> RationalMatrix {
        let n = m.rows();
        let mut acc = RationalMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &RationalMatrix::identity(n).scale(c);
        }
        acc
    }

    /// Primitive integer polynomial with positive leading coefficient on the
    /// same roots, and the scalar relating them (`self = scalar * result`).
    pub fn primitive_part(&self) -> (Rational, Vec<BigInt>) {
        let den = common_denominator(&self.coeffs);
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut content = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if scaled.last().is_some_and(Signed::is_negative) {
            content = -content;
        }
        let prim = scaled.iter().map(|c| c / &content).collect();
        (Rational::new(content, den), prim)
    }

    fn from_big(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Characteristic polynomial `det(x I - m)` by the Faddeev-LeVerrier recursion.
pub fn char_poly(m: &RationalMatrix) -> Polynomial {
    assert!(
        m.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let id = RationalMatrix::identity(n);
    let mut aux = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        aux = &(m * &aux) + &id.scale(&coeffs[n - k + 1]);
        let c = -(m * &aux).trace() / rat(k as i64);
        coeffs[n - k] = c;
    }
    Polynomial::new(coeffs)
}

/// Endpoint of a root-counting interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    At(Rational),
    PosInfinity,
}

/// Sturm chain of the square-free part.
fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let sf = p.square_free_part();
    let mut chain = vec![sf.clone(), sf.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1.neg();
        chain.push(r);
    }
    chain.pop();
    chain
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn signs_at(chain: &[Polynomial], at: &Bound) -> usize {
    let sign_of = |r: Rational| match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    };
    match at {
        Bound::At(x) => sign_changes(chain.iter().map(|q| sign_of(q.eval(x)))),
        Bound::PosInfinity => sign_changes(chain.iter().map(|q| sign_of(q.leading()))),
        Bound::NegInfinity => sign_changes(chain.iter().map(|q| {
            let s = sign_of(q.leading());
            if q.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        })),
    }
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots_in_interval(p: &Polynomial, a: &Bound, b: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ordered = match (a, b) {
        (Bound::PosInfinity, _) | (_, Bound::NegInfinity) => false,
        (Bound::At(x), Bound::At(y)) => x < y,
        _ => true,
    };
    if !ordered {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    Ok(signs_at(&chain, a) - signs_at(&chain, b))
}

pub fn count_real_roots(p: &Polynomial) -> Result<usize> {
    count_roots_in_interval(p, &Bound::NegInfinity, &Bound::PosInfinity)
}

/// Every complex root is real and strictly positive.
pub fn all_roots_positive(p: &Polynomial) -> Result<bool> {
    let sf = p.square_free_part();
    let positive = count_roots_in_interval(p, &Bound::At(Rational::zero()), &Bound::PosInfinity)?;
    Ok(positive == sf.degree().unwrap_or(0))
}

/// Every complex root is real and non-negative.
pub fn all_roots_nonnegative(p: &Polynomial) -> Result<bool> {
    let sf = p.square_free_part();
    let positive = count_roots_in_interval(p, &Bound::At(Rational::zero()), &Bound::PosInfinity)?;
    let at_zero = usize::from(sf.coeff(0).is_zero());
    Ok(positive + at_zero == sf.degree().unwrap_or(0))
}

/// Yun's square-free decomposition: monic `a_i` with `p = lc * prod a_i^i`.
pub fn square_free_decomposition(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.monic();
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.div_rem(&a0).0;
    let mut c = d.div_rem(&a0).0;
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&dd);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        c = dd.div_rem(&a).0;
        dd = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// `p = leading * prod factor^multiplicity` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: Rational,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.leading.clone()), |acc, (f, m)| {
                acc.mul(&f.pow(*m))
            })
    }
}

/// Factorization into irreducibles over Q for degree at most
/// [`MAX_FACTOR_DEGREE`]: rational roots first, then Kronecker's method for
/// factors of degree up to four.
pub fn factor_squarefree_small(p: &Polynomial) -> Result<Factorization> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    if degree > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_FACTOR_DEGREE,
        });
    }
    let mut factors = Vec::new();
    for (part, mult) in square_free_decomposition(p) {
        for f in factor_square_free(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| compare_polys(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization {
        leading: p.leading(),
        factors,
    })
}

fn compare_polys(a: &Polynomial, b: &Polynomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

/// Monic irreducible factors of a monic square-free polynomial.
fn factor_square_free(p: &Polynomial) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mut rest = p.clone();
    for root in rational_roots(&rest) {
        out.push(Polynomial::new(vec![-root.clone(), Rational::one()]));
        rest = rest.div_rem(&out.last().unwrap().clone()).0;
    }
    let mut pending = vec![rest];
    while let Some(q) = pending.pop() {
        let d = q.degree().unwrap_or(0);
        if d == 0 {
            continue;
        }
        match kronecker_split(&q) {
            Some(f) => {
                let g = q.div_rem(&f).0.monic();
                pending.push(f);
                pending.push(g);
            }
            None => out.push(q.monic()),
        }
    }
    out.sort_by(compare_polys);
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Distinct rational roots via the rational root theorem.
fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    let mut roots = Vec::new();
    let (_, prim) = p.primitive_part();
    let mut q = Polynomial::from_big(&prim);
    if q.coeff(0).is_zero() {
        roots.push(Rational::zero());
        while q.coeff(0).is_zero() && !q.is_zero() {
            q = Polynomial::new(q.coeffs[1..].to_vec());
        }
    }
    if q.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let (_, prim) = q.primitive_part();
    let lead_divs = divisors(prim.last().unwrap());
    let const_divs = divisors(&prim[0]);
    let mut candidates: Vec<Rational> = Vec::new();
    for num in &const_divs {
        for den in &lead_divs {
            let r = Rational::new(num.clone(), den.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    roots.extend(candidates.into_iter().filter(|r| q.eval(r).is_zero()));
    roots
}

/// A nontrivial factor of degree 2..=4 of a square-free polynomial without
/// rational roots, or `None` when it is irreducible.
fn kronecker_split(p: &Polynomial) -> Option<Polynomial> {
    let degree = p.degree()?;
    let (_, prim) = p.primitive_part();
    let target = Polynomial::from_big(&prim);
    for k in 2..=(degree / 2).min(4) {
        // Integer nodes where |p| has the fewest divisors keep the search small.
        let mut nodes: Vec<(i64, BigInt)> = (-6i64..=6)
            .map(|x| (x, target.eval(&rat(x)).to_integer()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        nodes.sort_by_key(|(x, v)| (divisors(v).len(), x.abs(), *x));
        nodes.truncate(k + 1);
        nodes.sort_by_key(|(x, _)| *x);
        let choices: Vec<Vec<BigInt>> = nodes
            .iter()
            .enumerate()
            .map(|(i, (_, v))| {
                let ds = divisors(v);
                if i == 0 {
                    ds
                } else {
                    ds.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()
                }
            })
            .collect();
        let xs: Vec<i64> = nodes.iter().map(|(x, _)| *x).collect();
        let mut pick = vec![0usize; k + 1];
        loop {
            let values: Vec<BigInt> = pick
                .iter()
                .zip(&choices)
                .map(|(&i, c)| c[i].clone())
                .collect();
            if let Some(candidate) = newton_interpolate(&xs, &values) {
                if candidate.degree() == Some(k) && target.div_rem(&candidate).1.is_zero() {
                    return Some(candidate.monic());
                }
            }
            // Odometer over divisor choices.
            let mut pos = 0;
            loop {
                if pos == pick.len() {
                    break;
                }
                pick[pos] += 1;
                if pick[pos] < choices[pos].len() {
                    break;
                }
                pick[pos] = 0;
                pos += 1;
            }
            if pos == pick.len() {
                break;
            }
        }
    }
    None
}

/// Integer-coefficient interpolant through integer nodes, or `None` when a
/// divided difference is non-integral (no integer polynomial fits).
fn newton_interpolate(xs: &[i64], values: &[BigInt]) -> Option<Polynomial> {
    let n = xs.len();
    let mut table = values.to_vec();
    let mut newton = vec![table[0].clone()];
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = BigInt::from(xs[i] - xs[i - level]);
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return None;
            }
            table[i] = q;
        }
        newton.push(table[level].clone());
    }
    let mut poly = Polynomial::constant(Rational::from_integer(newton[n - 1].clone()));
    for i in (0..n - 1).rev() {
        let shift = Polynomial::new(vec![rat(-xs[i]), Rational::one()]);
        poly = poly
            .mul(&shift)
            .add(&Polynomial::constant(Rational::from_integer(
                newton[i].clone(),
            )));
    }
    Some(poly)
}

/// Approximate real roots for cross-checking (bisection on Sturm counts).
/// Test support only; no correctness path depends on floating point.
pub fn approximate_real_roots(p: &Polynomial, tolerance: f64) -> Vec<f64> {
    let sf = p.square_free_part();
    let bound = sf
        .coeffs
        .iter()
        .map(|c| (c / sf.leading()).abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + Rational::one();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    let tol = Rational::from_float(tolerance)
        .unwrap_or_else(|| Rational::new(1.into(), 1_000_000.into()));
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots_in_interval(&sf, &Bound::At(lo.clone()), &Bound::At(hi.clone()))
            .unwrap_or(0);
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo < tol {
            out.push(((&lo + &hi) / rat(2)).to_f64().unwrap_or(f64::NAN));
            continue;
        }
        let mid = (&lo + &hi) / rat(2);
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn char_poly_examples() {
        let d = RationalMatrix::diagonal(&[rat(1), rat(3)]);
        assert_eq!(char_poly(&d), poly(&[3, -4, 1]));
        let rot = RationalMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(char_poly(&rot), poly(&[1, 0, 1]));
        // Companion matrix of x^3 - 2.
        let comp = RationalMatrix::from_i64(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(char_poly(&comp), poly(&[-2, 0, 0, 1]));
    }

    #[test]
    fn sturm_counts() {
        let zero = Bound::At(rat(0));
        assert_eq!(
            count_roots_in_interval(&poly(&[3, -4, 1]), &zero, &Bound::PosInfinity).unwrap(),
            2
        );
        assert_eq!(count_real_roots(&poly(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(
            count_roots_in_interval(&poly(&[-6, 11, -6, 1]), &zero, &Bound::PosInfinity).unwrap(),
            3
        );
        // Half-open: (1, 2] contains 2 but not 1.
        let p = poly(&[-6, 11, -6, 1]);
        assert_eq!(
            count_roots_in_interval(&p, &Bound::At(rat(1)), &Bound::At(rat(2))).unwrap(),
            1
        );
        assert!(count_roots_in_interval(&Polynomial::zero(), &zero, &Bound::PosInfinity).is_err());
    }

    #[test]
    fn positivity_predicates_handle_multiplicity_and_zero() {
        // (x-1)^4
        let p = Polynomial::from_roots(&[rat(1), rat(1), rat(1), rat(1)]);
        assert!(all_roots_positive(&p).unwrap());
        // x (x-2)^2
        let q = Polynomial::from_roots(&[rat(0), rat(2), rat(2)]);
        assert!(!all_roots_positive(&q).unwrap());
        assert!(all_roots_nonnegative(&q).unwrap());
        // (x^2+1)(x-1): complex roots are not positive
        let r = poly(&[1, 0, 1]).mul(&poly(&[-1, 1]));
        assert!(!all_roots_nonnegative(&r).unwrap());
    }

    #[test]
    fn factor_examples() {
        let f = factor_squarefree_small(&poly(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(poly(&[-1, 1]), 1), (poly(&[1, 1]), 1)]);
        let f = factor_squarefree_small(&poly(&[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(poly(&[1, 0, 1]), 1)]);
        let f = factor_squarefree_small(&poly(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(
            f.factors,
            vec![
                (poly(&[-1, 1]), 1),
                (poly(&[1, 1]), 1),
                (poly(&[1, 0, 1]), 1)
            ]
        );
    }

    #[test]
    fn kronecker_finds_factors_without_rational_roots() {
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        let f = factor_squarefree_small(&poly(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(
            f.factors,
            vec![(poly(&[2, -2, 1]), 1), (poly(&[2, 2, 1]), 1)]
        );
        // x^4 - 10x^2 + 1 is irreducible (minimal polynomial of sqrt2 + sqrt3)
        let f = factor_squarefree_small(&poly(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
        // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
        let f = factor_squarefree_small(&poly(&[-1, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 4);
        assert_eq!(f.expand(), poly(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn factor_keeps_multiplicities_and_leading_coefficient() {
        // 3 (x - 1/2)^2 (x^2 + 1)
        let p = Polynomial::from_roots(&[ratio(1, 2), ratio(1, 2)])
            .mul(&poly(&[1, 0, 1]))
            .scale(&rat(3));
        let f = factor_squarefree_small(&p).unwrap();
        assert_eq!(f.leading, rat(3));
        assert_eq!(
            f.factors[0],
            (Polynomial::new(vec![ratio(-1, 2), rat(1)]), 2)
        );
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn factor_rejects_large_degree() {
        let p = Polynomial::x().pow(9);
        assert!(matches!(
            factor_squarefree_small(&p),
            Err(Error::DegreeTooLarge { degree: 9, .. })
        ));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(&[3, -4, 1]).to_string(), "x^2 - 4x + 3");
        assert_eq!(
            Polynomial::new(vec![ratio(-1, 2), rat(0), rat(-1)]).to_string(),
            "-x^2 - 1/2"
        );
    }
}

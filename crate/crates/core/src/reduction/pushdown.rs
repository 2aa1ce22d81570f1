//! Transfer of a domain on `N^1(X)^G` to the quotient `Y = X / G`.

use num_bigint::BigInt;

use super::polyhedral::PolyhedralCone;
use crate::check::Check;
use crate::cone::{InvariantNS, NSLattice};
use crate::error::{Error, Result};
use crate::exact::matrix::{IntegerMatrix, RationalMatrix};
use crate::exact::rational::{primitive_integer_vector, rat};
use crate::torus::GroupAction;

#[derive(Clone, Debug)]
pub struct Pushdown {
    /// `pi^*`: invariant coordinates to `N^1(X)` coordinates.
    pub pullback: IntegerMatrix,
    /// `pi_*`: `N^1(X)` coordinates to invariant coordinates.
    pub pushforward: RationalMatrix,
    pub checks: Vec<Check>,
    /// Primitive generators of the domain on `Y`, in invariant coordinates
    /// (empty when no domain was constructed).
    pub rays: Vec<Vec<BigInt>>,
    /// The same generators as primitive alternating forms on the lattice of `X`.
    pub ray_forms: Vec<IntegerMatrix>,
}

pub fn pushdown_domain(
    inv: &InvariantNS,
    parent: &NSLattice,
    group: &GroupAction,
    domain: Option<&PolyhedralCone>,
) -> Result<Pushdown> {
    let rho = parent.rank();
    let mut sum = RationalMatrix::zeros(rho, rho);
    for a in group.elements().iter().map(|g| g.linear()) {
        sum = &sum + &parent.pullback_matrix(a)?;
    }
    let pullback = inv.inclusion.clone();
    let incl = pullback.to_rational();
    // Left inverse of the inclusion on its image.
    let gram = &incl.transpose() * &incl;
    let left = &gram.inverse().ok_or_else(|| {
        Error::Inconsistent("inclusion of invariant classes is not injective".into())
    })? * &incl.transpose();
    let pushforward = &left * &sum;
    let order = rat(group.order() as i64);
    let scaled_identity = RationalMatrix::identity(inv.rank()).scale(&order);
    let checks = vec![
        Check::new(
            "pullback_pushforward_is_orbit_sum",
            &incl * &pushforward == sum,
            "pi^* pi_* against sum of g^*",
        ),
        Check::new(
            "pushforward_pullback_is_order",
            &pushforward * &incl == scaled_identity,
            format!("pi_* pi^* against {} I", group.order()),
        ),
    ];
    let mut rays = Vec::new();
    let mut ray_forms = Vec::new();
    for r in domain.map(|d| d.rational_rays()).unwrap_or_default() {
        let form = inv.lattice.form(&r);
        let flat = primitive_integer_vector(&form.flatten())
            .ok_or_else(|| Error::Inconsistent("zero ray in the domain".into()))?;
        let n = form.rows();
        ray_forms.push(IntegerMatrix::from_fn(n, n, |i, j| flat[i * n + j].clone()));
        rays.push(primitive_integer_vector(&r).expect("nonzero ray"));
    }
    Ok(Pushdown {
        pullback,
        pushforward,
        checks,
        rays,
        ray_forms,
    })
}

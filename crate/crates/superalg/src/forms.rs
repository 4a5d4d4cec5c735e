//! The shifted tangent space of affine space: functions are differential
//! forms, with even coordinates x^a and odd generators dx^a. The odd
//! translation group acts by `omega + tau * d(omega)` where d is the unique
//! odd derivation with d(x^a) = dx^a, d(dx^a) = 0.

use crate::algebra::{Algebra, AlgebraBuilder, AlgebraError, Parity, SuperElement};
use crate::derivation::{extend_by_dual, rename_into, Derivation};

/// The form algebra on coordinates `x1..xm`: even generators `x{a}` and odd
/// generators `dx{a}`.
pub fn form_algebra(m: usize) -> Algebra {
    let mut b = AlgebraBuilder::new("forms");
    for a in 1..=m {
        b = b.even(&format!("x{a}"));
    }
    for a in 1..=m {
        b = b.odd(&format!("dx{a}"));
    }
    b.build().expect("valid form algebra")
}

/// The exterior differential as an odd derivation of the form algebra.
pub fn exterior_differential(alg: &Algebra) -> Result<Derivation, AlgebraError> {
    let m = alg.width() / 2;
    let mut named = Vec::new();
    let mut ds = Vec::new();
    for a in 1..=m {
        ds.push((format!("x{a}"), format!("dx{a}")));
    }
    for (x, dx) in &ds {
        named.push((x.as_str(), SuperElement::generator(alg, dx)?));
    }
    Derivation::from_named(alg, Parity::Odd, &named, &[])
}

/// The action pullback `omega -> omega + tau * d(omega)` into the algebra
/// extended by the odd group coordinate `tau`.
pub fn de_rham_action(omega: &SuperElement) -> Result<(SuperElement, Algebra), AlgebraError> {
    let alg = omega.algebra.clone();
    let d = exterior_differential(&alg)?;
    let ext = extend_by_dual(&alg, "tau", Parity::Odd)?;
    let inc = rename_into(&alg, &ext, &[])?;
    let tau = SuperElement::generator(&ext, "tau")?;
    let dw = inc.apply(&d.apply(omega)?)?;
    Ok((inc.apply(omega)?.add(&tau.mul(&dw)), ext))
}

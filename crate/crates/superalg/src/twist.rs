//! Twisted functions: a body times a formal exponential of an even exponent.
//!
//! `TwistedElement { body, exponent }` represents `body * exp(exponent)`.
//! Multiplication adds exponents; derivatives follow the chain rule on the
//! formal marker. When the exponent is nilpotent the twist expands to a plain
//! element and the two representations agree.

use crate::algebra::{Algebra, AlgebraError, SuperElement};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct TwistedElement {
    pub body: SuperElement,
    pub exponent: SuperElement,
}

impl TwistedElement {
    /// `exp(e)` for an even exponent `e`.
    pub fn exp_formal(exponent: SuperElement) -> Result<Self, AlgebraError> {
        if !exponent.is_even() {
            return Err(AlgebraError::NotEven);
        }
        let one = SuperElement::one(&exponent.algebra);
        Ok(TwistedElement {
            body: one,
            exponent,
        })
    }

    pub fn plain(body: SuperElement) -> Self {
        let zero = SuperElement::zero(&body.algebra);
        TwistedElement {
            body,
            exponent: zero,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.body.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Zero body absorbs any exponent into the canonical zero.
    pub fn canonical_zero_body(mut self) -> Self {
        if self.body.is_zero() {
            self.exponent = SuperElement::zero(&self.body.algebra);
        }
        self
    }

    pub fn mul(&self, other: &Self) -> Self {
        TwistedElement {
            body: self.body.mul(&other.body),
            exponent: self.exponent.add(&other.exponent),
        }
        .canonical_zero_body()
    }

    pub fn mul_plain(&self, other: &SuperElement) -> Self {
        TwistedElement {
            body: self.body.mul(other),
            exponent: self.exponent.clone(),
        }
        .canonical_zero_body()
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.body.is_zero() {
            return Ok(other.clone());
        }
        if other.body.is_zero() {
            return Ok(self.clone());
        }
        if self.exponent != other.exponent {
            return Err(AlgebraError::MixedAlgebras);
        }
        Ok(TwistedElement {
            body: self.body.add(&other.body),
            exponent: self.exponent.clone(),
        }
        .canonical_zero_body())
    }

    pub fn neg(&self) -> Self {
        TwistedElement {
            body: self.body.neg(),
            exponent: self.exponent.clone(),
        }
    }

    pub fn scale(&self, c: &crate::scalar::Scalar) -> Self {
        TwistedElement {
            body: self.body.scale(c),
            exponent: self.exponent.clone(),
        }
        .canonical_zero_body()
    }

    /// d/dg (body * exp(E)) = (d body + (-1)^{|g||body|} body * dE) * exp(E).
    ///
    /// The Koszul sign is handled termwise on the homogeneous parts of the
    /// body, since dE has the parity of g.
    pub fn partial_derivative(&self, name: &str) -> Result<Self, AlgebraError> {
        let idx = self.body.algebra.index_of(name)?;
        let g_odd = self.body.algebra.generators[idx].parity.is_odd();
        let d_body = self.body.partial_derivative(name)?;
        let d_exp = self.exponent.partial_derivative(name)?;
        let cross = if g_odd {
            let ev = self.body.homogeneous_part(crate::algebra::Parity::Even);
            let od = self.body.homogeneous_part(crate::algebra::Parity::Odd);
            ev.mul(&d_exp).sub(&od.mul(&d_exp))
        } else {
            self.body.mul(&d_exp)
        };
        Ok(TwistedElement {
            body: d_body.add(&cross),
            exponent: self.exponent.clone(),
        }
        .canonical_zero_body())
    }

    /// Expand to a plain element when the exponent is nilpotent.
    pub fn expand(&self) -> Result<SuperElement, AlgebraError> {
        Ok(self.body.mul(&self.exponent.exp_nilpotent()?))
    }

    /// Rewrite with the given exponent, expanding the (nilpotent) difference
    /// into the body. Fails if the difference is not nilpotent.
    pub fn normalize_onto(&self, exponent: &SuperElement) -> Result<Self, AlgebraError> {
        if self.body.is_zero() {
            return Ok(TwistedElement {
                body: self.body.clone(),
                exponent: exponent.clone(),
            });
        }
        let diff = self.exponent.sub(exponent);
        let factor = diff.exp_nilpotent()?;
        Ok(TwistedElement {
            body: self.body.mul(&factor),
            exponent: exponent.clone(),
        })
    }

    /// Substitute generators in both body and exponent.
    pub fn substitute(
        &self,
        target: &Algebra,
        images: &std::collections::BTreeMap<usize, SuperElement>,
    ) -> Result<Self, AlgebraError> {
        Ok(TwistedElement {
            body: self.body.substitute(target, images)?,
            exponent: self.exponent.substitute(target, images)?,
        }
        .canonical_zero_body())
    }
}

impl fmt::Display for TwistedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            return write!(f, "{}", self.body);
        }
        write!(f, "[{}]*exp({})", self.body, self.exponent)
    }
}

impl fmt::Debug for TwistedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::scalar::Scalar;

    #[test]
    fn inverse_exponents_cancel() {
        let a = AlgebraBuilder::new("T")
            .unit("u")
            .even("c")
            .build()
            .unwrap();
        let u = SuperElement::generator(&a, "u").unwrap();
        let c = SuperElement::generator(&a, "c").unwrap();
        let iuc = u.mul(&c).scale(&Scalar::i());
        let e1 = TwistedElement::exp_formal(iuc.clone()).unwrap();
        let e2 = TwistedElement::exp_formal(iuc.neg()).unwrap();
        let p = e1.mul(&e2);
        assert!(p.exponent.is_zero());
        assert_eq!(p.body, SuperElement::one(&a));
    }

    #[test]
    fn derivative_chain_rule_against_truncated_expansion() {
        // In a truncated model u^3 = 0 the formal and nilpotent exponentials
        // must give the same derivative.
        let a = AlgebraBuilder::new("T")
            .even_truncated("u", 3)
            .even_truncated("c", 3)
            .build()
            .unwrap();
        let u = SuperElement::generator(&a, "u").unwrap();
        let c = SuperElement::generator(&a, "c").unwrap();
        let iuc = u.mul(&c).scale(&Scalar::i());
        let tw = TwistedElement::exp_formal(iuc.clone()).unwrap();
        let dtw = tw.partial_derivative("c").unwrap();
        // formal route: i*u * exp(iuc)
        assert_eq!(dtw.exponent, iuc);
        assert_eq!(dtw.body, u.scale(&Scalar::i()));
        // expansion route
        let expanded = iuc.exp_nilpotent().unwrap();
        assert_eq!(
            dtw.expand().unwrap(),
            expanded.partial_derivative("c").unwrap()
        );
    }

    #[test]
    fn zero_body_absorbs_exponent() {
        let a = AlgebraBuilder::new("T").even("c").build().unwrap();
        let c = SuperElement::generator(&a, "c").unwrap();
        let tw = TwistedElement::exp_formal(c.clone()).unwrap();
        let z = tw.mul_plain(&SuperElement::zero(&a));
        assert!(z.is_zero());
        assert!(z.exponent.is_zero());
    }
}

//! Algebra morphisms in dual form: a parity-preserving map on generators,
//! extended multiplicatively. A point x of a superspace X with parameter
//! space T is stored as its pullback on functions, O(X) -> O(T).

use crate::algebra::{Algebra, AlgebraError, Parity, SuperElement};
use crate::linalg::QiMatrix;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub struct AlgebraMorphism {
    pub source: Algebra,
    pub target: Algebra,
    /// Image of each source generator, indexed by generator position.
    pub images: Vec<SuperElement>,
}

impl AlgebraMorphism {
    /// Build and validate: parities preserved generator-wise, relations of
    /// the source killed, units mapped to units.
    pub fn new(
        source: &Algebra,
        target: &Algebra,
        images: Vec<SuperElement>,
    ) -> Result<Self, AlgebraError> {
        if images.len() != source.width() {
            return Err(AlgebraError::ParityMismatch(
                "wrong number of generator images".into(),
            ));
        }
        for (i, img) in images.iter().enumerate() {
            if !Arc::ptr_eq(&img.algebra, target) {
                return Err(AlgebraError::MixedAlgebras);
            }
            let g = &source.generators[i];
            match img.parity() {
                Some(p) if p == g.parity || img.is_zero() => {}
                _ => {
                    return Err(AlgebraError::ParityMismatch(format!(
                        "image of `{}` is not homogeneous of parity {}",
                        g.name, g.parity
                    )))
                }
            }
            if g.invertible && img.invert().is_err() {
                return Err(AlgebraError::NotAUnit);
            }
        }
        let m = AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        // truncations
        for (i, g) in source.generators.iter().enumerate() {
            if let Some(t) = g.truncation {
                if !m.images[i].pow(t).is_zero() {
                    return Err(AlgebraError::RelationNotKilled(format!("{}^{}", g.name, t)));
                }
            }
        }
        // monomial relations
        for rel in &source.relations {
            let mut img = SuperElement::one(target);
            for (i, &e) in rel.0.iter().enumerate() {
                for _ in 0..e {
                    img = img.mul(&m.images[i]);
                }
            }
            if !img.is_zero() {
                let names: Vec<String> = rel
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            source.generators[i].name.clone()
                        } else {
                            format!("{}^{}", source.generators[i].name, e)
                        }
                    })
                    .collect();
                return Err(AlgebraError::RelationNotKilled(names.join("*")));
            }
        }
        Ok(m)
    }

    /// Build from (name, image) pairs; unnamed generators are not allowed.
    pub fn from_named(
        source: &Algebra,
        target: &Algebra,
        named: &[(&str, SuperElement)],
    ) -> Result<Self, AlgebraError> {
        let mut images = vec![None; source.width()];
        for (name, img) in named {
            let idx = source.index_of(name)?;
            images[idx] = Some(img.clone());
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| AlgebraError::UnknownGenerator(source.generators[i].name.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(algebra: &Algebra) -> Self {
        let images = (0..algebra.width())
            .map(|i| {
                SuperElement::generator(algebra, &algebra.generators[i].name.clone())
                    .expect("generator exists")
            })
            .collect();
        AlgebraMorphism {
            source: algebra.clone(),
            target: algebra.clone(),
            images,
        }
    }

    pub fn apply(&self, e: &SuperElement) -> Result<SuperElement, AlgebraError> {
        if !Arc::ptr_eq(&e.algebra, &self.source) {
            return Err(AlgebraError::MixedAlgebras);
        }
        let map: BTreeMap<usize, SuperElement> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, img)| (i, img.clone()))
            .collect();
        e.substitute(&self.target, &map)
    }

    /// Composition as algebra maps: `compose(f, g)` applies `g` first, then
    /// `f`. Dually: a point x^sharp composed with a parameter change
    /// phi^sharp is the specialised point (x o phi)^sharp.
    pub fn compose(
        f: &AlgebraMorphism,
        g: &AlgebraMorphism,
    ) -> Result<AlgebraMorphism, AlgebraError> {
        if !Arc::ptr_eq(&g.target, &f.source) {
            return Err(AlgebraError::MixedAlgebras);
        }
        let images = g
            .images
            .iter()
            .map(|img| f.apply(img))
            .collect::<Result<Vec<_>, _>>()?;
        AlgebraMorphism::new(&g.source, &f.target, images)
    }
}

impl fmt::Display for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "morphism {{ ")?;
        for (i, img) in self.images.iter().enumerate() {
            write!(f, "{} -> {}; ", self.source.generators[i].name, img)?;
        }
        write!(f, "}}")
    }
}

/// A classical point: rational values for free even generators and units,
/// zero for nilpotents.
#[derive(Clone, Debug, Default)]
pub struct ClassicalPoint {
    pub values: BTreeMap<usize, Scalar>,
}

impl ClassicalPoint {
    pub fn origin() -> Self {
        ClassicalPoint {
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, algebra: &Algebra, name: &str, v: Scalar) -> Self {
        let idx = algebra.index_of(name).expect("generator exists");
        self.values.insert(idx, v);
        self
    }
}

/// The tangent map of a morphism at a classical point of its target algebra's
/// spectrum. Rows are indexed by source generators (coordinates on the
/// codomain space), columns by target generators (coordinates on the domain
/// space): entry(b, a) = (d/d x^a phi^sharp(y^b)) evaluated at p.
pub struct TangentMatrix {
    pub row_parities: Vec<Parity>,
    pub col_parities: Vec<Parity>,
    pub matrix: QiMatrix,
}

pub fn tangent_map_at(
    phi: &AlgebraMorphism,
    p: &ClassicalPoint,
) -> Result<TangentMatrix, AlgebraError> {
    let rows = phi.source.width();
    let cols = phi.target.width();
    let mut m = QiMatrix::zero(rows, cols);
    for (b, img) in phi.images.iter().enumerate() {
        for a in 0..cols {
            let d = img.partial_derivative(&phi.target.generators[a].name)?;
            m.data[b][a] = d.evaluate_classical(&p.values)?;
        }
    }
    Ok(TangentMatrix {
        row_parities: phi.source.generators.iter().map(|g| g.parity).collect(),
        col_parities: phi.target.generators.iter().map(|g| g.parity).collect(),
        matrix: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;

    fn running_example() -> (Algebra, Algebra) {
        let x = AlgebraBuilder::new("X")
            .even("y")
            .odd("eta")
            .build()
            .unwrap();
        let t = AlgebraBuilder::new("T").odd("theta").build().unwrap();
        (x, t)
    }

    #[test]
    fn identity_is_neutral() {
        let (x, t) = running_example();
        let theta = SuperElement::generator(&t, "theta").unwrap();
        let pt = AlgebraMorphism::from_named(
            &x,
            &t,
            &[("y", SuperElement::zero(&t)), ("eta", theta.clone())],
        )
        .unwrap();
        let idt = AlgebraMorphism::identity(&t);
        let idx = AlgebraMorphism::identity(&x);
        let c1 = AlgebraMorphism::compose(&idt, &pt).unwrap();
        let c2 = AlgebraMorphism::compose(&pt, &idx).unwrap();
        assert_eq!(c1.images, pt.images);
        assert_eq!(c2.images, pt.images);
    }

    #[test]
    fn specialisation_by_automorphism() {
        let (x, t) = running_example();
        let theta = SuperElement::generator(&t, "theta").unwrap();
        let pt = AlgebraMorphism::from_named(
            &x,
            &t,
            &[("y", SuperElement::zero(&t)), ("eta", theta.clone())],
        )
        .unwrap();
        let flip = AlgebraMorphism::from_named(&t, &t, &[("theta", theta.neg())]).unwrap();
        let c = AlgebraMorphism::compose(&flip, &pt).unwrap();
        assert_eq!(c.images[x.index_of("eta").unwrap()], theta.neg());
        assert!(c.images[x.index_of("y").unwrap()].is_zero());
    }

    #[test]
    fn composition_is_associative() {
        let a = AlgebraBuilder::new("A")
            .even("s")
            .odd("xi")
            .build()
            .unwrap();
        let s = SuperElement::generator(&a, "s").unwrap();
        let xi = SuperElement::generator(&a, "xi").unwrap();
        let f = AlgebraMorphism::from_named(
            &a,
            &a,
            &[
                ("s", s.mul(&s).add(&SuperElement::one(&a))),
                ("xi", xi.scale(&Scalar::from_int(2))),
            ],
        )
        .unwrap();
        let g = AlgebraMorphism::from_named(
            &a,
            &a,
            &[
                ("s", s.add(&SuperElement::from_int(&a, 3))),
                ("xi", s.mul(&xi)),
            ],
        )
        .unwrap();
        let h = AlgebraMorphism::from_named(&a, &a, &[("s", s.clone()), ("xi", xi.neg())]).unwrap();
        let lhs = AlgebraMorphism::compose(&AlgebraMorphism::compose(&f, &g).unwrap(), &h).unwrap();
        let rhs = AlgebraMorphism::compose(&f, &AlgebraMorphism::compose(&g, &h).unwrap()).unwrap();
        assert_eq!(lhs.images, rhs.images);
    }

    #[test]
    fn specialising_the_generic_point_recovers_the_point() {
        // the generic point is the identity morphism; composing with x gives x
        let (x_alg, t) = running_example();
        let theta = SuperElement::generator(&t, "theta").unwrap();
        let x = AlgebraMorphism::from_named(
            &x_alg,
            &t,
            &[("y", SuperElement::zero(&t)), ("eta", theta)],
        )
        .unwrap();
        let generic = AlgebraMorphism::identity(&x_alg);
        let specialised = AlgebraMorphism::compose(&x, &generic).unwrap();
        assert_eq!(specialised.images, x.images);
    }

    #[test]
    fn morphism_must_kill_relations() {
        // source k[eps]/(eps^2); image eps -> u fails, eps -> theta*gamma ok
        let q = AlgebraBuilder::new("Q")
            .even_truncated("eps", 2)
            .build()
            .unwrap();
        let t = AlgebraBuilder::new("T")
            .odd("theta")
            .odd("gamma")
            .even("u")
            .build()
            .unwrap();
        let u = SuperElement::generator(&t, "u").unwrap();
        assert!(AlgebraMorphism::from_named(&q, &t, &[("eps", u)]).is_err());
        let tg = SuperElement::generator(&t, "theta")
            .unwrap()
            .mul(&SuperElement::generator(&t, "gamma").unwrap());
        assert!(AlgebraMorphism::from_named(&q, &t, &[("eps", tg)]).is_ok());
    }

    #[test]
    fn parity_must_be_preserved() {
        let (x, t) = running_example();
        let theta = SuperElement::generator(&t, "theta").unwrap();
        // y is even, theta is odd
        let bad =
            AlgebraMorphism::from_named(&x, &t, &[("y", theta.clone()), ("eta", theta.clone())]);
        assert!(bad.is_err());
    }

    #[test]
    fn tangent_of_identity_is_identity() {
        let a = AlgebraBuilder::new("A")
            .even("s")
            .odd("xi")
            .build()
            .unwrap();
        let id = AlgebraMorphism::identity(&a);
        let tm = tangent_map_at(&id, &ClassicalPoint::origin()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                assert_eq!(tm.matrix.data[i][j], expect);
            }
        }
    }

    #[test]
    fn tangent_chain_rule() {
        // phi: A -> B, psi: B -> C polynomial morphisms; T(psi o phi) = T(psi) T(phi)
        let a = AlgebraBuilder::new("A")
            .even("s")
            .even("t")
            .build()
            .unwrap();
        let b = AlgebraBuilder::new("B")
            .even("p")
            .even("q")
            .build()
            .unwrap();
        let c = AlgebraBuilder::new("C").even("w").build().unwrap();
        let s = SuperElement::generator(&a, "s").unwrap();
        let t = SuperElement::generator(&a, "t").unwrap();
        let p = SuperElement::generator(&b, "p").unwrap();
        let q = SuperElement::generator(&b, "q").unwrap();
        // phi^sharp: O(B)->O(A): p -> s^2 + 3t, q -> s*t
        let phi = AlgebraMorphism::from_named(
            &b,
            &a,
            &[
                ("p", s.mul(&s).add(&t.scale(&Scalar::from_int(3)))),
                ("q", s.mul(&t)),
            ],
        )
        .unwrap();
        // psi^sharp: O(C)->O(B): w -> p*q + q
        let psi = AlgebraMorphism::from_named(&c, &b, &[("w", p.mul(&q).add(&q))]).unwrap();
        // spaces: Spec A --phi--> Spec B --psi--> Spec C; composite pullback
        let comp = AlgebraMorphism::compose(&phi, &psi).unwrap();
        let pt = ClassicalPoint::origin()
            .with(&a, "s", Scalar::from_int(2))
            .with(&a, "t", Scalar::from_int(5));
        // image of pt under phi (classically): p = 4+15 = 19, q = 10
        let mid = ClassicalPoint::origin()
            .with(&b, "p", Scalar::from_int(19))
            .with(&b, "q", Scalar::from_int(10));
        let t_phi = tangent_map_at(&phi, &pt).unwrap().matrix;
        let t_psi = tangent_map_at(&psi, &mid).unwrap().matrix;
        let t_comp = tangent_map_at(&comp, &pt).unwrap().matrix;
        // multiply t_psi (1x2) by t_phi (2x2)
        for i in 0..1 {
            for j in 0..2 {
                let mut acc = Scalar::zero();
                for k in 0..2 {
                    acc += &(&t_psi.data[i][k] * &t_phi.data[k][j]);
                }
                assert_eq!(t_comp.data[i][j], acc);
            }
        }
    }
}

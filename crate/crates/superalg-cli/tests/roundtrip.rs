//! Property test: printing an element and parsing it back is the identity.

use proptest::prelude::*;
use superalg::algebra::{Algebra, AlgebraBuilder, SuperElement};
use superalg::scalar::Scalar;
use superalg_cli::scenario::parse_expression;

fn test_algebra() -> Algebra {
    AlgebraBuilder::new("A")
        .odd("theta")
        .odd("gamma")
        .even("s")
        .unit("u")
        .relation(&[("s", 4)])
        .build()
        .unwrap()
}

fn element_strategy(alg: Algebra) -> impl Strategy<Value = SuperElement> {
    let monos = alg.enumerate_monomials(3, 2);
    let coeff = (-6i64..=6, 1i64..=4, -3i64..=3)
        .prop_map(|(n, d, im)| Scalar::from_ratio(n, d) + Scalar::i() * Scalar::from_int(im));
    let pick = (0..monos.len(), coeff);
    proptest::collection::vec(pick, 0..6).prop_map(move |terms| {
        let mut acc = SuperElement::zero(&alg);
        for (idx, c) in terms {
            acc = acc.add(&SuperElement::from_monomial(&alg, monos[idx].clone(), c));
        }
        acc
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(e in element_strategy(test_algebra())) {
        let alg = e.algebra.clone();
        let printed = e.to_string();
        let parsed = parse_expression(&printed, &alg)
            .unwrap_or_else(|err| panic!("parse of `{printed}` failed: {err}"));
        prop_assert_eq!(parsed, e);
    }
}

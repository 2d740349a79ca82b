//! Randomised algebraic identities over `F_{3^6}` and `F_{4^6}`.

use std::sync::OnceLock;

use proptest::prelude::*;

use scatlin_core::equiv::{verify_witness, EquivWitness};
use scatlin_core::{Elem, Field, QPoly};

fn f3() -> &'static Field {
    static F: OnceLock<Field> = OnceLock::new();
    F.get_or_init(|| Field::new(3, 1).unwrap())
}

fn f4() -> &'static Field {
    static F: OnceLock<Field> = OnceLock::new();
    F.get_or_init(|| Field::new(2, 2).unwrap())
}

fn fields() -> impl Strategy<Value = &'static Field> {
    prop_oneof![Just(f3()), Just(f4())]
}

fn elem(f: &Field, i: u64) -> Elem {
    f.nth(i % f.order())
}

fn poly(f: &Field, idx: &[u64; 6]) -> QPoly {
    QPoly::new(std::array::from_fn(|k| elem(f, idx[k])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(f in fields(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (elem(f, a), elem(f, b), elem(f, c));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(f.sub(x, y), y), x);
        if !f.is_zero(x) {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
        prop_assert_eq!(f.parse(&f.format(x)).unwrap(), x);
        prop_assert_eq!(f.nth(f.enum_index(x)), x);
    }

    #[test]
    fn frobenius_is_additive_and_periodic(f in fields(), a in any::<u64>(), b in any::<u64>(), i in 0usize..6) {
        let (x, y) = (elem(f, a), elem(f, b));
        prop_assert_eq!(f.frobenius(f.add(x, y), i), f.add(f.frobenius(x, i), f.frobenius(y, i)));
        prop_assert_eq!(f.frobenius(f.frobenius(x, i), 6 - i), x);
    }

    #[test]
    fn composition_matches_evaluation(f in fields(), p in any::<[u64; 6]>(), r in any::<[u64; 6]>(), a in any::<u64>()) {
        let (p, r, x) = (poly(f, &p), poly(f, &r), elem(f, a));
        let lhs = p.compose(f, &r).evaluate(f, x);
        prop_assert_eq!(lhs, p.evaluate(f, r.evaluate(f, x)));
    }

    #[test]
    fn rank_and_kernel_are_complementary(f in fields(), p in any::<[u64; 6]>()) {
        let p = poly(f, &p);
        prop_assert_eq!(p.rank(f) + p.kernel_dim(f), 6);
        prop_assert_eq!(p.adjoint(f).rank(f), p.rank(f));
        prop_assert_eq!(p.adjoint(f).adjoint(f), p);
    }

    #[test]
    fn json_roundtrip(f in fields(), p in any::<[u64; 6]>()) {
        let p = poly(f, &p);
        let text = p.to_json(f).to_string();
        prop_assert_eq!(QPoly::from_json(f, &text).unwrap(), p);
    }

    #[test]
    fn identity_witness_verifies(f in fields(), p in any::<[u64; 6]>()) {
        let p = poly(f, &p);
        prop_assert!(verify_witness(f, &p, &p, &EquivWitness::identity(f)));
    }
}

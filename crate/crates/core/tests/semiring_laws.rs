use dequant::semiring::{Deform, SValue};
use proptest::prelude::*;

fn value() -> impl Strategy<Value = f64> {
    -50.0f64..50.0
}

fn deform() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), 0.0f64..2.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn addition_is_commutative_and_associative(a in value(), b in value(), c in value(), h in deform()) {
        let d = Deform::new(h).unwrap();
        let (a, b, c) = (SValue::new(a).unwrap(), SValue::new(b).unwrap(), SValue::new(c).unwrap());
        prop_assert_eq!(d.add(a, b), d.add(b, a));
        let left = d.add(d.add(a, b), c).value();
        let right = d.add(a, d.add(b, c)).value();
        prop_assert!((left - right).abs() <= 1e-12);
    }

    #[test]
    fn multiplication_distributes(a in value(), b in value(), c in value(), h in deform()) {
        let d = Deform::new(h).unwrap();
        let (a, b, c) = (SValue::new(a).unwrap(), SValue::new(b).unwrap(), SValue::new(c).unwrap());
        let left = d.mul(a, d.add(b, c)).value();
        let right = d.add(d.mul(a, b), d.mul(a, c)).value();
        prop_assert!((left - right).abs() <= 1e-12);
    }

    #[test]
    fn sum_lies_between_max_and_max_plus_h_ln_n(xs in prop::collection::vec(value(), 1..8), h in deform()) {
        let d = Deform::new(h).unwrap();
        let vals: Vec<SValue> = xs.iter().map(|&x| SValue::new(x).unwrap()).collect();
        let s = d.sum(vals).unwrap().value();
        let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(s >= max - 1e-12);
        prop_assert!(s <= max + h * (xs.len() as f64).ln() + 1e-12);
    }

    #[test]
    fn dequantization_turns_sums_into_semiring_sums(x in 1e-6f64..1e6, y in 1e-6f64..1e6, h in 0.05f64..1.0) {
        let d = Deform::new(h).unwrap();
        let lhs = d.dequantize(x + y).unwrap().value();
        let rhs = d.add(d.dequantize(x).unwrap(), d.dequantize(y).unwrap()).value();
        prop_assert!((lhs - rhs).abs() <= 1e-10);
        let prod = d.dequantize(x * y).unwrap().value();
        let mul = d.mul(d.dequantize(x).unwrap(), d.dequantize(y).unwrap()).value();
        prop_assert!((prod - mul).abs() <= 1e-10);
    }

    #[test]
    fn quantize_inverts_dequantize(x in 1e-3f64..1e3, h in 0.1f64..1.0) {
        let d = Deform::new(h).unwrap();
        let back = d.quantize(d.dequantize(x).unwrap()).unwrap();
        prop_assert!((back - x).abs() <= 1e-12 * x.max(1.0));
    }
}

#[test]
fn idempotent_at_zero() {
    let d = Deform::TROPICAL;
    for a in [-3.5, 0.0, 1e-300, 7.25, 1e300] {
        let x = SValue::new(a).unwrap();
        assert_eq!(d.add(x, x).value().to_bits(), a.to_bits());
    }
}

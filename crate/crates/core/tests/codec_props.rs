use proptest::prelude::*;

use treasure_hunt::codec::*;

const LIMIT: i64 = 1 << 20;

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![1..=LIMIT, -LIMIT..=-1]
}

/// Independent reference: sign bits, then pair-coded magnitudes split by 000.
fn reference(a1: i64, a2: i64, a3: i64) -> (String, [String; 3]) {
    let pairs = |v: i64| -> String {
        format!("{:b}", v.unsigned_abs()).chars().map(|c| if c == '1' { "10" } else { "01" }).collect()
    };
    let sign = |v: i64| if v > 0 { '1' } else { '0' };
    let payloads = [pairs(a1), pairs(a2), pairs(a3)];
    let s = format!("{}{}{}000{}000{}", sign(a2), sign(a3), payloads[0], payloads[1], payloads[2]);
    (s, payloads)
}

fn floor_log2(v: i64) -> usize {
    63 - v.unsigned_abs().leading_zeros() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn roundtrip_and_reference(a1 in 1..=LIMIT, a2 in nonzero(), a3 in nonzero()) {
        let t = AdviceTriple::new(a1, a2, a3).unwrap();
        let s = encode(&t);
        let (expected, payloads) = reference(a1, a2, a3);
        prop_assert_eq!(s.to_string(), expected);
        prop_assert_eq!(decode(&s).unwrap(), t);
        for p in &payloads {
            prop_assert!(!p.contains("000"));
        }
        let bound = 8 + 2 * (floor_log2(a1) + floor_log2(a2) + floor_log2(a3) + 3);
        prop_assert!(s.len() <= bound);
        prop_assert_eq!(encoded_len(&t), s.len());
        prop_assert_eq!(AdviceString::from_packed(&s.to_packed()).unwrap(), s);
    }

    #[test]
    fn single_deletions_are_rejected(a1 in 1i64..5000, a2 in -5000i64..5000, a3 in -5000i64..5000) {
        prop_assume!(a2 != 0 && a3 != 0);
        let s = encode(&AdviceTriple::new(a1, a2, a3).unwrap());
        for k in 1..s.len() - 1 {
            let mut bits = s.to_bits();
            bits.remove(k);
            prop_assert!(decode(&AdviceString::from_bits(bits)).is_err(), "deleting bit {}", k);
        }
    }
}

#[test]
fn worked_example() {
    let s = encode(&AdviceTriple::new(3, -4, 5).unwrap());
    assert_eq!(s.to_string(), "011010000100101000100110");
    assert_eq!(decode(&s).unwrap(), AdviceTriple::new(3, -4, 5).unwrap());
}

#[test]
fn malformed_inputs() {
    for bad in ["", "1", "11", "111010", "1110000000101", "11101001000010"] {
        let s: AdviceString = bad.parse().unwrap();
        assert!(decode(&s).is_err(), "{bad}");
    }
    assert!("10a1".parse::<AdviceString>().is_err());
    assert!(AdviceTriple::new(0, 1, 1).is_err());
    assert!(AdviceTriple::new(2, 0, 1).is_err());
}

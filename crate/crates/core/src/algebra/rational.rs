use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

/// Exact rational with a reduced, positive denominator.
pub type ExactRational = BigRational;

/// `base^e` for any integer `e`; panics on `0^e` with `e < 0`.
pub fn pow_rational(base: &ExactRational, e: i64) -> ExactRational {
    let mut acc = ExactRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
pub fn int_to_json(n: &BigInt) -> Value {
    if let Some(v) = n.to_i64() {
        json!(v)
    } else if let Some(v) = n.to_u64() {
        json!(v)
    } else {
        Value::String(n.to_string())
    }
}

/// `{"num": .., "den": ..}`.
pub fn rational_to_json(r: &ExactRational) -> Value {
    json!({"num": int_to_json(r.numer()), "den": int_to_json(r.denom())})
}

//! JSON helpers shared by reports and file formats.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

/// Integers that fit in `i64` become JSON numbers; larger ones become strings.
pub fn big_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

/// Serde adapter for `BigInt` fields, using [`big_to_json`].
pub mod bigint {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&super::big_to_json(n), s)
    }
}

//! Serialization helpers: big integers travel as decimal strings.

use num_bigint::BigUint;
use serde::Serializer;

pub fn biguint_as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

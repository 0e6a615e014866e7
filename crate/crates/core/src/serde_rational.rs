//! Serializes exact rationals as `"p/q"` strings.

use num_rational::BigRational;
use serde::Serializer;

pub fn to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(r))
}

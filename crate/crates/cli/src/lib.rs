//! JSON formats and conversions for the thin-poset toolkit. The binary in
//! this crate wires these onto `thincoh-core`; the formats are also usable
//! as a library for scripting against the same schemas.

pub mod json;

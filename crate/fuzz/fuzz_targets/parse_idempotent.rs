#![no_main]

use libfuzzer_sys::fuzz_target;
use morext::linalg::FieldSpec;

// Idempotent documents are parsed against a fixed base (F_2, dim 2), the
// shape used by the catalog extensions.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let field = FieldSpec::prime(2).expect("2 is prime");
        let _ = morext::format::parse_idempotent(text, field, 2);
    }
});

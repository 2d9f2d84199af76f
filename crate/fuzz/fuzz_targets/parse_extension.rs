#![no_main]

use libfuzzer_sys::fuzz_target;

// The extension-document parser must never panic on untrusted input: every
// outcome is Ok or a structured FormatError.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = morext::format::parse_named_extension(text);
    }
});

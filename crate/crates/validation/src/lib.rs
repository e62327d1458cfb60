//! Acceptance criteria for `bmfactor`, run as `cargo test -p bmfactor-validation --test acceptance`.
//! Each criterion prints one PASS/FAIL line; the binary exits non-zero if any fails.

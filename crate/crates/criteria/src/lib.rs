//! Acceptance criteria for the zwork workspace, run by `cargo test --test acceptance`.

//! Holds the `acceptance` test target. Run it with `cargo test -p nsla-verify --test acceptance`.

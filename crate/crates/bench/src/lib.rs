//! Benchmark-only crate; see `benches/fit_methods.rs`.

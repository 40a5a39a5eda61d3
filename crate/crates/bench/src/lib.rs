//! Benchmark-only crate; see `benches/girth.rs`.

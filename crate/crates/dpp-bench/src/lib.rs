//! Benchmark-only crate; see `benches/losses.rs`.

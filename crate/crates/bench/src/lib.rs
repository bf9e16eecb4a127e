//! Benchmark-only crate; see `benches/constructions.rs`.
//!
//! Run with `cargo bench -p symdg-bench`.

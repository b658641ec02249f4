//! Criterion benchmarks for patchtower-core; see `benches/`.

//! Criterion benchmarks for the generators live under `benches/`.

//! Criterion benchmarks for the xcdof toolkit live under `benches/`.

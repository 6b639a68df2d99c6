//! Criterion benchmarks for the torusbord library live in `benches/`.

//! Criterion benchmarks for tropic-core live in `benches/`.

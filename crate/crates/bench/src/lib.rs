//! Criterion benchmarks for h1forge; see `benches/`.

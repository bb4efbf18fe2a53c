//! Criterion benchmarks for the series construction; see `benches/`.

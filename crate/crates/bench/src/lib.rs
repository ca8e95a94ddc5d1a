//! Criterion benchmarks for `isodil-core`; see `benches/`.

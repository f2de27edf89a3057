//! Criterion benchmarks for the spin-squeezing pipeline; see `benches/`.

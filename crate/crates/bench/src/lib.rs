//! Benchmarks for the gamma1lab kernels live in `benches/`.

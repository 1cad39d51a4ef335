//! Benchmarks for the daml toolchain live under `benches/`.

//! Benchmarks of the law checkers live under `benches/`.

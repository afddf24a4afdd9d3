//! Benchmarks for the level0 operators live in `benches/`.

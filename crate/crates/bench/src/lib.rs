//! Benchmarks for `holofrft-core`; see `benches/`.

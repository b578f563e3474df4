//! Benchmarks for the `ultraspherical` crate live in `benches/`.

//! Benchmarks for the pipeline stages live in `benches/stages.rs`;
//! run them with `cargo bench -p elpoints-bench`.

//! Criterion benchmarks for the `dvrtrace` pipeline; see `benches/pipeline.rs`.

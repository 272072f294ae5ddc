//! Criterion benchmarks for `mplab-core`; run with `cargo bench -p mplab-bench`.

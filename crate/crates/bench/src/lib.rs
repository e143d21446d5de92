//! Criterion benchmarks for `k3strata`; see `benches/`.

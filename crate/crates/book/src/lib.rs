//! The guide's chapters, one module each, so `cargo test` runs every Rust
//! listing in `book/src` as a doc-test against the current crate.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/optimization.md")]
pub mod optimization {}
#[doc = include_str!("../../../book/src/fish-school-search.md")]
pub mod fish_school_search {}
#[doc = include_str!("../../../book/src/biased-feeding.md")]
pub mod biased_feeding {}
#[doc = include_str!("../../../book/src/particle-swarm.md")]
pub mod particle_swarm {}
#[doc = include_str!("../../../book/src/genetic-algorithm.md")]
pub mod genetic_algorithm {}
#[doc = include_str!("../../../book/src/frame-model.md")]
pub mod frame_model {}
#[doc = include_str!("../../../book/src/updating-problem.md")]
pub mod updating_problem {}
#[doc = include_str!("../../../book/src/benchmark.md")]
pub mod benchmark {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

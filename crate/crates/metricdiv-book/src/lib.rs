//! Doc-test harness for the guide.
//!
//! Each chapter of `book/src` is included as a rustdoc page, one module per
//! chapter so a failing snippet names its chapter. `cargo test --doc -p
//! metricdiv-book` runs every fenced Rust block in the book.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/spaces-and-kernels.md")]
pub mod spaces_and_kernels {}

#[doc = include_str!("../../../book/src/entropy-and-complexity.md")]
pub mod entropy_and_complexity {}

#[doc = include_str!("../../../book/src/maximum-diversity.md")]
pub mod maximum_diversity {}

#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}

#[doc = include_str!("../../../book/src/the-real-line.md")]
pub mod the_real_line {}

#[doc = include_str!("../../../book/src/diversities.md")]
pub mod diversities {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

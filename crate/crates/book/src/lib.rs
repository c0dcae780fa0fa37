//! Compiles and runs the code listings of the guide in `book/` as doc-tests,
//! since mdbook cannot link against workspace crates.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/frames.md")]
pub mod frames {}
#[doc = include_str!("../../../book/src/negativity.md")]
pub mod negativity {}
#[doc = include_str!("../../../book/src/transfer.md")]
pub mod transfer {}
#[doc = include_str!("../../../book/src/symmetry.md")]
pub mod symmetry {}
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

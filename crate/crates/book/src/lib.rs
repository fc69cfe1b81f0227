//! The guide in `book/` compiled as doc-tests, so every snippet there runs
//! under `cargo test`. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/spin-operators.md")]
pub mod spin_operators {}
#[doc = include_str!("../../../book/src/exchange.md")]
pub mod exchange {}
#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}
#[doc = include_str!("../../../book/src/multiplets.md")]
pub mod multiplets {}
#[doc = include_str!("../../../book/src/qrep.md")]
pub mod qrep {}
#[doc = include_str!("../../../book/src/rotations.md")]
pub mod rotations {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

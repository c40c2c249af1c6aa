#![allow(clippy::needless_range_loop)]

pub mod a5;
pub mod builtin;
pub mod character;
pub mod cyclo;
pub mod dw;
pub mod error;
pub mod group;
pub mod oracle;
pub mod seifert;
pub mod tqft;

pub use error::{Error, ErrorKind, Result};

pub mod combinatorics;
pub mod error;
pub mod exactalg;
pub mod glrep;
pub mod gtalg;
pub mod betheq;
pub mod cli;
pub mod sovcore;
pub mod yangian;

pub use error::{Error, Result};

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod autalg;
pub mod cli;
pub mod flow;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod surface;

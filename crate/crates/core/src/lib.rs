pub mod poly;
pub mod quad;
pub mod special;
pub mod wavefield;
pub mod asymptotics;
pub mod pde;
pub mod selftest;
pub mod cli;

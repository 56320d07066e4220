//! Exact decision procedures for simple supersingular pro-p Iwahori–Hecke
//! modules of `GL_{n_1} × … × GL_{n_r} × T'`, with a brute-force oracle.

pub mod ff;
pub mod weyl;
pub mod gln;
pub mod haff;
pub mod zerohecke;
pub mod oracle;
pub mod cli;

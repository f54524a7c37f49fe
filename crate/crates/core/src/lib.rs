//! Synthesis and verification of encoding and decoding circuits for qudit
//! stabilizer codes over GF(p^m).
//!
//! - [`gf`]: finite-field arithmetic, trace, self-dual bases
//! - [`pauli`]: error-group labels, stabilizer matrices, distance
//! - [`gates`]: the gate set, its conjugation action, circuits
//! - [`synth_stab`], [`synth_css`]: circuit synthesis
//! - [`sim`]: dense state-vector oracle
//! - [`format`], [`cli`]: text formats and the command line

pub mod cli;
pub mod dense;
pub mod format;
pub mod gates;
pub mod gf;
pub mod linalg;
pub mod pauli;
pub mod sim;
pub mod synth_css;
pub mod synth_stab;

//! Operator-valued zeta functions acting on polynomials and trigonometric
//! functions through the dilation generator D = x̂p̂.
//!
//! The crate is split into exact arithmetic ([`exactnum`]), numeric special
//! functions ([`specfun`]), Fourier and Abel-summed series ([`series`]), the
//! symbolic operator engine ([`operator`]), the sine-basis matrix of
//! ζ(1 − iD) ([`divmatrix`]), the identity registry ([`registry`]) and the
//! command-line front end ([`cli`]).

pub mod cli;
pub mod divmatrix;
pub mod exactnum;
pub mod kinds;
pub mod operator;
pub mod quad;
pub mod registry;
pub mod series;
pub mod specfun;
pub mod verify;

pub use kinds::{Parity, Trig};

//! Control pulses that perturbatively decouple a single spin-1/2 from a
//! dynamic quantum bath while the pulse is running.
//!
//! The crate is organised bottom-up:
//!
//! * [`pulse`] holds waveforms on normalised time `[0, 1]`, the parametrised
//!   pulse families and the named catalog of composite and continuous pulses.
//! * [`rotation`] is the axis-angle kinematics of the pulse: the SU(2)
//!   propagator, the toggling-frame rotation matrix and the conversion between
//!   a control field and its accumulated rotation.
//! * [`corrections`] evaluates the first- and second-order correction
//!   integrals that have to vanish for the spin to decouple from the bath.
//! * [`designer`] solves for pulse parameters that zero a chosen set of
//!   correction integrals.
//! * [`qsim`] propagates spin plus bath exactly and extracts the error
//!   scaling exponent with the pulse duration.
//! * [`cli`] is the command-line front end and the pulse file schema.

pub mod cli;
pub mod corrections;
pub mod designer;
pub mod error;
pub mod linalg;
pub mod pulse;
pub mod qsim;
pub mod quadrature;
pub mod rotation;

pub use error::{Error, Result};

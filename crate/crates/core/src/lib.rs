//! Geometry-based channel simulator for a vehicular integrated sensing and
//! communication (ISAC) system.
//!
//! A dual-function base station illuminates the environment with one
//! waveform. The [`sensing`] channel models the echoes from the mobile
//! receiver, static targets and mobile targets arriving at an echo array
//! (co-located for monostatic sensing, separate for bistatic sensing). The
//! [`comm`] channel models the link to the mobile receiver: a line-of-sight
//! path plus static and mobile clusters of rays. A scatterer may play both
//! roles, which couples the two channels.
//!
//! [`stats`] turns generated channels into spatial cross-correlation and
//! temporal auto-correlation curves and frequency responses.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod comm;
pub mod error;
pub mod geometry;
pub mod path;
pub mod presets;
pub mod rng;
pub mod scenario;
pub mod sensing;
pub mod stats;

pub use error::{Error, Result};

//! Flat-virtual link diagrams and their Jones-type invariant.
//!
//! * [`diagram`] and [`format`]: the Gauss-code data model and its text form.
//! * [`statesum`]: the flat-virtual Jones polynomial `X(D)` in `Z[a, a^-1, b]`.
//! * [`phimap`]: flat-virtual diagrams from curves on the cylinder and torus.
//! * [`moves`] and [`fuzz`]: the move system and randomized invariance checks.

pub mod diagram;
pub mod format;
pub mod fuzz;
pub mod moves;
pub mod phimap;
pub mod poly;
pub mod statesum;

pub use diagram::{Component, CrossingId, CrossingKind, Diagram, Role, Sign, Visit};
pub use format::{parse_diagram, serialize_diagram};
pub use poly::Poly2;
pub use statesum::{flat_virtual_jones, flat_virtual_jones_with, state_table};
pub use phimap::{phi, Curve, GroupSpec, PhiError, Space};

//! Stabilizer codes generated by hybrid Clifford circuits.
//!
//! The crate simulates brickwork circuits of random two-qubit Cliffords
//! interleaved with single-site Pauli measurements, starting from a mixed
//! code state, and analyses the resulting stabilizer code: entanglement
//! entropies, the number of logical operators localizable on a region, and
//! the contiguous code distance. A separate module evaluates the
//! capillary-wave free energies of entanglement domain walls that describe
//! the same quantities analytically.

pub mod bits;
pub mod circuit;
pub mod clifford;
pub mod cwt;
pub mod error;
pub mod gf2;
pub mod pauli;
pub mod qecc;
pub mod region;
pub mod segments;
pub mod stabilizer;
pub mod symplectic;

pub use bits::QubitSet;
pub use circuit::{CircuitConfig, InitialState, MeasuredBasis};
pub use clifford::CliffordGate;
pub use cwt::FreeEnergyModel;
pub use error::{Error, Result};
pub use gf2::Gf2Matrix;
pub use pauli::{Pauli, PauliString, Sign};
pub use region::{Boundary, Region, Subsystem};
pub use segments::SegmentProfile;
pub use stabilizer::{MeasurementCase, MeasurementOutcome, StabilizerState};

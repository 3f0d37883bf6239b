//! Contiguous qubit segments.

use crate::bits::QubitSet;
use crate::error::{Error, Result};

/// Spatial boundary condition of the qubit chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Periodic,
}

/// A contiguous segment `start, start+1, ..., start+length-1` of the chain.
///
/// With `wraps` set the indices are taken mod `L`, so the segment may run
/// past the last qubit back to qubit 0. That is only meaningful on a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub start: usize,
    pub length: usize,
    pub wraps: bool,
}

impl Region {
    /// A segment that must fit inside `0..L`.
    pub fn segment(start: usize, length: usize) -> Self {
        Self {
            start,
            length,
            wraps: false,
        }
    }

    /// A segment on a ring; may wrap around.
    pub fn periodic(start: usize, length: usize) -> Self {
        Self {
            start,
            length,
            wraps: true,
        }
    }

    pub fn for_boundary(bc: Boundary, start: usize, length: usize) -> Self {
        match bc {
            Boundary::Open => Self::segment(start, length),
            Boundary::Periodic => Self::periodic(start, length),
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let ok = self.start < n_qubits
            && self.length > 0
            && self.length <= n_qubits
            && (self.wraps || self.start + self.length <= n_qubits);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRegion {
                start: self.start,
                length: self.length,
                n_qubits,
            })
        }
    }

    /// Qubit indices in segment order.
    pub fn qubits(&self, n_qubits: usize) -> Result<Vec<usize>> {
        self.validate(n_qubits)?;
        Ok((0..self.length)
            .map(|i| (self.start + i) % n_qubits)
            .collect())
    }

    pub fn to_set(&self, n_qubits: usize) -> Result<QubitSet> {
        QubitSet::from_indices(n_qubits, self.qubits(n_qubits)?)
    }
}

/// Anything that names a set of qubits of an `n`-qubit system.
pub trait Subsystem {
    fn qubit_set(&self, n_qubits: usize) -> Result<QubitSet>;
}

impl Subsystem for Region {
    fn qubit_set(&self, n_qubits: usize) -> Result<QubitSet> {
        self.to_set(n_qubits)
    }
}

impl Subsystem for QubitSet {
    fn qubit_set(&self, n_qubits: usize) -> Result<QubitSet> {
        if self.n_qubits() != n_qubits {
            return Err(Error::DimensionMismatch {
                expected: n_qubits,
                found: self.n_qubits(),
            });
        }
        Ok(self.clone())
    }
}

impl Subsystem for [usize] {
    fn qubit_set(&self, n_qubits: usize) -> Result<QubitSet> {
        QubitSet::from_indices(n_qubits, self.iter().copied())
    }
}

impl<const N: usize> Subsystem for [usize; N] {
    fn qubit_set(&self, n_qubits: usize) -> Result<QubitSet> {
        QubitSet::from_indices(n_qubits, self.iter().copied())
    }
}

impl<T: Subsystem + ?Sized> Subsystem for &T {
    fn qubit_set(&self, n_qubits: usize) -> Result<QubitSet> {
        (**self).qubit_set(n_qubits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrapping_segment_has_distinct_qubits() {
        let r = Region::periodic(6, 4);
        assert_eq!(r.qubits(8).unwrap(), vec![6, 7, 0, 1]);
        assert_eq!(r.to_set(8).unwrap().len(), 4);
    }

    #[test]
    fn open_segment_must_fit() {
        assert!(Region::segment(6, 4).validate(8).is_err());
        assert!(Region::segment(4, 4).validate(8).is_ok());
        assert!(Region::segment(0, 0).validate(8).is_err());
        assert!(Region::periodic(8, 1).validate(8).is_err());
    }

    #[test]
    fn full_periodic_region_covers_everything() {
        let set = Region::periodic(3, 8).to_set(8).unwrap();
        assert_eq!(set, QubitSet::full(8));
        assert!(set.complement().is_empty());
    }
}

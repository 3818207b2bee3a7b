//! Logical-to-physical qubit assignment with a consistent inverse lookup.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MappingError {
    #[error("cannot place {requested} logical qubits on a {available}-qubit device")]
    TooManyLogical { requested: usize, available: usize },
    #[error("physical qubit {0} out of range for a {1}-qubit device")]
    PhysicalOutOfRange(usize, usize),
    #[error("physical qubit {0} assigned to more than one logical qubit")]
    NotInjective(usize),
}

/// An injective assignment of logical qubits to physical qubits.
///
/// Logical qubits are always all mapped; physical qubits may be unoccupied.
/// Swapping two physical sites exchanges whatever occupies them, so a swap
/// with an empty site simply relocates one logical qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapping {
    log_to_phys: Vec<usize>,
    phys_to_log: Vec<Option<usize>>,
}

impl Mapping {
    pub fn new(log_to_phys: Vec<usize>, num_physical: usize) -> Result<Self, MappingError> {
        if log_to_phys.len() > num_physical {
            return Err(MappingError::TooManyLogical {
                requested: log_to_phys.len(),
                available: num_physical,
            });
        }
        let mut phys_to_log = vec![None; num_physical];
        for (l, &p) in log_to_phys.iter().enumerate() {
            if p >= num_physical {
                return Err(MappingError::PhysicalOutOfRange(p, num_physical));
            }
            if phys_to_log[p].is_some() {
                return Err(MappingError::NotInjective(p));
            }
            phys_to_log[p] = Some(l);
        }
        Ok(Mapping {
            log_to_phys,
            phys_to_log,
        })
    }

    pub fn identity(num_logical: usize, num_physical: usize) -> Result<Self, MappingError> {
        Mapping::new((0..num_logical).collect(), num_physical)
    }

    pub fn num_logical(&self) -> usize {
        self.log_to_phys.len()
    }

    pub fn num_physical(&self) -> usize {
        self.phys_to_log.len()
    }

    /// Physical location of a logical qubit.
    pub fn phys(&self, logical: usize) -> usize {
        self.log_to_phys[logical]
    }

    /// Logical occupant of a physical qubit, if any.
    pub fn logical_at(&self, physical: usize) -> Option<usize> {
        self.phys_to_log[physical]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.log_to_phys
    }

    /// Physical qubits currently occupied, in ascending order.
    pub fn occupied(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.log_to_phys.clone();
        v.sort_unstable();
        v
    }

    /// Exchange the occupants of two physical qubits.
    pub fn swap_physical(&mut self, a: usize, b: usize) {
        let la = self.phys_to_log[a];
        let lb = self.phys_to_log[b];
        if let Some(l) = la {
            self.log_to_phys[l] = b;
        }
        if let Some(l) = lb {
            self.log_to_phys[l] = a;
        }
        self.phys_to_log.swap(a, b);
    }

    /// Move the occupant of physical qubit `from` to the unoccupied qubit
    /// `to`. Same effect as `swap_physical` when one side is empty.
    pub fn relocate(&mut self, from: usize, to: usize) {
        debug_assert!(self.phys_to_log[to].is_none());
        self.swap_physical(from, to);
    }
}

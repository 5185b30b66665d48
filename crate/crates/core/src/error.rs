use thiserror::Error;

#[derive(Debug, Error)]
pub enum WalkError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("walker support would exceed the lattice capacity {capacity}; allocate more steps")]
    CapacityExceeded { capacity: usize },
    #[error("density matrix dimension {dim} exceeds the cap {cap}; raise the cap to evaluate it")]
    DimensionCap { dim: usize, cap: usize },
    #[error("eigensolver did not converge for a {dim}x{dim} matrix")]
    NoConvergence { dim: usize },
}

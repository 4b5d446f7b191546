//! Finite-dimensional states and entanglement relative to a tensor product
//! structure.
//!
//! Composite indices are row-major: `i = i_A·k₂ + i_B`, so subsystem A is the
//! slow index. Entropies are in nats.

mod frame;
mod measures;
mod state;

pub use frame::{apply_frame, ApplyFrame, Factorization, TpsFrame};
pub(crate) use measures::partial_trace_raw;
pub use measures::{
    entanglement_entropy, negativity, operator_schmidt_rank, partial_trace, purity, schmidt_decompose,
    spectrum_entropy, von_neumann_entropy, SchmidtData, Side,
};
pub use state::{bell_state, BellLabel, DensityMatrix, PureState};

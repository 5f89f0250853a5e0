//! Majorana strings, the Steane code, a stabilizer measurement engine and the
//! two-tetron phase gate.

pub mod code;
pub mod gf2;
pub mod montecarlo;
pub mod state;
pub mod string;
pub mod tetron;

pub use code::{
    classify_residual, decode, steane_code, syndrome, syndrome_table, validate_code, CodeDefinition, CodeError,
    ModeLabel, ResidualClass, Syndrome, ValidationReport,
};
pub use montecarlo::{
    correct_error, cross_block_pairs, exhaustive, qp_monte_carlo, same_block_pairs, ErrorModel, McReport,
    ResidualCounts, TrialOutcome,
};
pub use state::{
    initialize_state, ForcedOutcomes, Measurement, OutcomeSource, RngOutcomes, StabilizerState, StateError, Tracked,
};
pub use string::{hermitian_parity, hermitian_product, MajoranaString, StringError, MAX_MODES};
pub use tetron::{
    enumerate_branches, gate_measurements, initial_gate_state, phase_gate_sequence, target_generators, tetron_layout,
    tetron_layout_with, verify_phase_gate, GateCheck, GateError, GateTranscript, TetronLayout,
};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mode index {index} out of range (space has {n_modes} boson modes)")]
    ModeIndexOutOfRange { index: usize, n_modes: usize },

    #[error("qubit index {index} out of range (space has {n_qubits} qubits)")]
    QubitIndexOutOfRange { index: usize, n_qubits: usize },

    #[error("operators live in different spaces ({left} vs {right})")]
    SpaceMismatch { left: String, right: String },

    #[error("non-finite entry encountered in {0}")]
    NonFinite(&'static str),

    #[error("dense exponentiation refused at dim {dim} (threshold {threshold}); use the Krylov action instead")]
    DenseDimExceeded { dim: usize, threshold: usize },

    #[error("momentum grid too narrow for envelope at p0={p0}, sigma={sigma} (norm deficit {deficit:.3e})")]
    GridTooNarrow { p0: f64, sigma: f64, deficit: f64 },

    #[error("envelope width must be positive, got {0}")]
    NonPositiveWidth(f64),

    #[error("degenerate boson mode: omega_k = 0 at k = {k} is incompatible with a 1/sqrt(omega) coupling")]
    DegenerateMode { k: f64 },

    #[error("fermion mode label out of range: {0}")]
    LabelOutOfRange(String),

    #[error("unknown sector label: {0}")]
    UnknownLabel(String),

    #[error("spatial profile violates the required symmetry about x_j = {x_j} (max asymmetry {deviation:.3e})")]
    SymmetryViolated { x_j: f64, deviation: f64 },

    #[error("Pauli-block decomposition requires exactly two fermionic modes, model has {0}")]
    NotTwoMode(usize),

    #[error("coupling coefficient {name} = {value} outside allowed range [0, {max}]")]
    CouplingOutOfRange {
        name: &'static str,
        value: f64,
        max: f64,
    },

    #[error("Mølmer–Sørensen gate needs at least two qubits, got {0}")]
    MsSetTooSmall(usize),

    #[error("unsupported Pauli letter {letter:?} in string exponential")]
    UnsupportedLetter { letter: char },

    #[error("plan spans {0} system qubits; pass the n-mode flag to compile strings beyond two qubits")]
    NModeWithoutFlag(usize),

    #[error("singular capacitance network: M = 0")]
    DegenerateNetwork,

    #[error("hardware space must hold {expected} boson modes (band + resonator), got {got}")]
    MissingResonator { expected: usize, got: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

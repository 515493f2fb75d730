//! Well-rounded lattices, nested coset codes and their error-probability
//! metrics for wiretap-style channels.
//!
//! Lattices are stored by a square basis whose *columns* are the basis vectors.
//! Every lattice routine is generic over [`Scalar`]; integer kinds run exactly.

pub mod channel;
pub mod coset;
pub mod ecdp;
pub mod enumerate;
pub mod io;
pub mod error;
pub mod ideal;
pub mod lattice;
pub mod lll;
pub mod matrix;
pub mod minima;
pub mod normal_form;
pub mod quadratic;
pub mod scalar;
pub mod search;

pub use channel::{
    compare_codes, ml_decode, sample_channel, simulate_ecdp, snr_db, wilson_interval, ChannelParams, CodeDecoder, CurvePoint,
    EcdpCurve, SimPlan, Verdict,
};
pub use coset::{CosetCode, CosetLabel, NestedLatticePair, Rates, SignalingSet};
pub use ecdp::{ecdp_analytic, ecdp_series, min_product_distance, term_bound_check, EcdpAnalyticParams, EcdpValue};
pub use error::{Error, Result};
pub use ideal::{
    canonical_embed, element_norm, is_wr_ideal, largenorm_check, normalize_to_covolume, principal_ideal_lattice, wr_principal_scan,
    IdealLattice, ScanHit,
};
pub use lattice::{sublattice_coefficients, sublattice_index, volume, Lattice, DEFAULT_TOL};
pub use matrix::Matrix;
pub use minima::{
    classify_wr, hermite_candidate_norms, hermite_bounds_hold, shortest_vectors, HermiteTable, ShortVectorReport, WrClass, WrReport,
};
pub use normal_form::{hermite_normal_form, smith_normal_form, SmithForm};
pub use quadratic::{QuadraticField, QuadraticInteger};
pub use scalar::{FieldScalar, Scalar};
pub use search::{
    exhaustive_wr_search, probabilistic_wr_search, run_search, vectors_of_norm, SearchConfig, SearchHit, SearchMode,
};

pub use num_bigint::BigInt;

/// Exact lattice with arbitrary-precision entries.
pub type IntLattice = Lattice<BigInt>;
/// Exact lattice with machine-integer entries; intermediates never overflow.
pub type SmallIntLattice = Lattice<i64>;
pub type RealLattice = Lattice<f64>;
pub type IntMatrix = Matrix<i64>;
pub type RealMatrix = Matrix<f64>;

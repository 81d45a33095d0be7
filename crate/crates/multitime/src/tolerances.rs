//! Single source of truth for every pass/fail threshold: the command-line
//! scenarios and the test suite both read from here, so the two cannot
//! drift apart.

/// Norm-ratio deviation from 1 under unitary multi-time evolution.
pub const NORM_RATIO: f64 = 1e-10;
/// L2 distance between evolution orderings to the same time tuple.
pub const PATH_INDEPENDENCE: f64 = 1e-10;
/// Relative commutator residual of the two partial Hamiltonians.
pub const COMMUTATOR: f64 = 1e-11;
/// Max-norm agreement of the diagonal restriction with the single-time
/// two-particle evolution.
pub const DIAGONAL_RESTRICTION: f64 = 1e-10;

/// Expected finite-difference convergence order and its allowed deviation.
pub const FD_ORDER: f64 = 2.0;
pub const FD_ORDER_SLACK: f64 = 0.1;
/// Relative second-order-identity residual at step h = 1e-2.
pub const KG_RESIDUAL_AT_H: f64 = 2e-3;
pub const KG_RESIDUAL_H: f64 = 1e-2;

/// Relative mismatch of the measured e-folding rate of a growing mode.
pub const GROWTH_RATE_REL: f64 = 0.02;
/// Per-mode energy conservation of oscillatory modes.
pub const MODE_ENERGY: f64 = 1e-10;
/// Slack on the analytic norm bound for filtered data.
pub const FILTER_BOUND_SLACK: f64 = 1e-8;
/// Unfiltered growing data must exceed exp(0.9 * rate * t) in norm ratio.
pub const GROWTH_EXCEEDANCE_FRACTION: f64 = 0.9;

/// Finite-difference residual of the non-uniqueness witness at h = 1e-3.
pub const WITNESS_RESIDUAL: f64 = 1e-5;
pub const WITNESS_RESIDUAL_H: f64 = 1e-3;

/// Slash-square identity deviation (anticommutators themselves are exact).
pub const SLASH_SQUARE: f64 = 1e-14;

/// Flat-surface detection density vs. the squared modulus.
pub const FLAT_DENSITY: f64 = 1e-12;
/// Total probability on flat surfaces.
pub const FLAT_PROBABILITY: f64 = 1e-9;
/// Total probability on tilted surfaces for localized packets.
pub const TILTED_PROBABILITY: f64 = 1e-4;
/// Pointwise density nonnegativity floor.
pub const DENSITY_FLOOR: f64 = -1e-10;

/// Boost group-law and intertwining identities.
pub const LORENTZ_IDENTITY: f64 = 1e-12;
/// Covariance residual of a boosted plane wave (mode-exact path).
pub const PLANE_WAVE_RESIDUAL: f64 = 1e-6;

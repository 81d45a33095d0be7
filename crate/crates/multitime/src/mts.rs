//! The multi-time Schrödinger system for two non-interacting particles:
//! evolution to arbitrary time tuples, path-independence and consistency
//! checks, diagonal restriction, the spacelike-configuration predicate, and
//! the per-particle Klein-Gordon identities.
//!
//! Sign convention for the second-order identities: the propagated states
//! satisfy `(d^2/dt_j^2 - d^2/dx_j^2) phi = -m^2 phi` per particle, and the
//! summed two-time equation with effective mass `sqrt(2) m`. The residuals
//! here check exactly those identities.

use crate::dirac::{self, ParticleKind};
use crate::lattice::ComplexField;
use crate::rng::probe_values;
use num_complex::Complex64;
use thiserror::Error;

/// Two-particle spinor field over the grid `x1 x x2`.
pub type SpinorField2P = ComplexField;

#[derive(Debug, Error, PartialEq)]
pub enum MtsError {
    #[error(transparent)]
    Dirac(#[from] dirac::DiracError),
    #[error("operation requires both particles of the same kind")]
    MixedKinds,
    #[error("operation requires equal masses, got {0} and {1}")]
    UnequalMasses(f64, f64),
    #[error("time step h must be positive, got {0}")]
    BadTimeStep(f64),
}

/// A point in 1+1 Minkowski space, signature +-.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub t: f64,
    pub x: f64,
}

/// A two-particle field stamped with its time tuple.
#[derive(Debug, Clone)]
pub struct MultiTimeState {
    field: SpinorField2P,
    times: (f64, f64),
    kinds: (ParticleKind, ParticleKind),
}

/// Ordering of the per-particle propagator factors in `evolve_to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvolutionOrder {
    FirstThenSecond,
    SecondThenFirst,
    /// Alternate between the two axes in `substeps` equal slices each.
    Interleaved { substeps: usize },
}

impl MultiTimeState {
    pub fn new(
        field: SpinorField2P,
        times: (f64, f64),
        kinds: (ParticleKind, ParticleKind),
    ) -> Result<Self, MtsError> {
        let expected = kinds.0.n_components() * kinds.1.n_components();
        if expected != field.n_components() {
            return Err(MtsError::Dirac(dirac::DiracError::ComponentMismatch {
                got: field.n_components(),
                expected,
            }));
        }
        Ok(Self {
            field,
            times,
            kinds,
        })
    }

    pub fn field(&self) -> &SpinorField2P {
        &self.field
    }

    pub fn times(&self) -> (f64, f64) {
        self.times
    }

    pub fn kinds(&self) -> (ParticleKind, ParticleKind) {
        self.kinds
    }

    pub fn norm(&self) -> f64 {
        self.field.l2_norm()
    }

    fn kinds_arr(&self) -> [ParticleKind; 2] {
        [self.kinds.0, self.kinds.1]
    }

    /// Evolve to the target time tuple by applying the commuting per-particle
    /// propagators for the respective increments in the given order.
    pub fn evolve_to(
        &self,
        target: (f64, f64),
        order: EvolutionOrder,
    ) -> Result<MultiTimeState, MtsError> {
        let kinds = self.kinds_arr();
        let dt = (target.0 - self.times.0, target.1 - self.times.1);
        let field = match order {
            EvolutionOrder::FirstThenSecond => {
                let a = dirac::evolve_free(&self.field, &kinds, 0, dt.0)?;
                dirac::evolve_free(&a, &kinds, 1, dt.1)?
            }
            EvolutionOrder::SecondThenFirst => {
                let a = dirac::evolve_free(&self.field, &kinds, 1, dt.1)?;
                dirac::evolve_free(&a, &kinds, 0, dt.0)?
            }
            EvolutionOrder::Interleaved { substeps } => {
                let n = substeps.max(1);
                let mut f = self.field.clone();
                for _ in 0..n {
                    f = dirac::evolve_free(&f, &kinds, 0, dt.0 / n as f64)?;
                    f = dirac::evolve_free(&f, &kinds, 1, dt.1 / n as f64)?;
                }
                f
            }
        };
        Ok(MultiTimeState {
            field,
            times: target,
            kinds: self.kinds,
        })
    }

    /// L2 distance between the two evolution orderings to the target.
    pub fn path_independence_residual(&self, target: (f64, f64)) -> Result<f64, MtsError> {
        let a = self.evolve_to(target, EvolutionOrder::FirstThenSecond)?;
        let b = self.evolve_to(target, EvolutionOrder::SecondThenFirst)?;
        Ok(a.field.sub(&b.field).l2_norm())
    }

    /// Restriction to equal times: the ordinary single-time wave function.
    pub fn diagonal_restriction(&self, t: f64) -> Result<SpinorField2P, MtsError> {
        Ok(self.evolve_to((t, t), EvolutionOrder::FirstThenSecond)?.field)
    }

    /// Relative residual of the per-particle second-order identity
    /// `(d^2/dt_j^2 - d^2/dx_j^2 + m^2) phi = 0` at the given time tuple,
    /// with the time derivative taken by exact evolution to the stencil
    /// points plus a central second difference of step `h`.
    pub fn per_particle_kg_residual(
        &self,
        j: usize,
        sample: (f64, f64),
        h: f64,
    ) -> Result<f64, MtsError> {
        if h <= 0.0 {
            return Err(MtsError::BadTimeStep(h));
        }
        same_kind(self.kinds)?;
        let m = if j == 0 {
            self.kinds.0.mass()
        } else {
            self.kinds.1.mass()
        };
        let shift = |dt: f64| -> (f64, f64) {
            if j == 0 {
                (sample.0 + dt, sample.1)
            } else {
                (sample.0, sample.1 + dt)
            }
        };
        let order = EvolutionOrder::FirstThenSecond;
        let mid = self.evolve_to(sample, order)?.field;
        let plus = self.evolve_to(shift(h), order)?.field;
        let minus = self.evolve_to(shift(-h), order)?.field;
        let dtt = second_difference(&plus, &mid, &minus, h);
        let dxx = mid
            .apply_mode_multiplier(j, |k| Complex64::new(-k * k, 0.0))
            .map_err(dirac::DiracError::from)?;
        let residual = dtt
            .sub(&dxx)
            .add(&mid.scaled(Complex64::new(m * m, 0.0)));
        Ok(relative_to_terms(
            &residual,
            &[dtt.l2_norm(), dxx.l2_norm(), m * m * mid.l2_norm()],
        ))
    }

    /// Relative residual of the summed two-time equation
    /// `(d^2/dt1^2 + d^2/dt2^2 - d^2/dx1^2 - d^2/dx2^2 + 2 m^2) phi = 0`,
    /// the two-timelike-dimension equation with mass `sqrt(2) m`.
    pub fn mtd_identity_residual(&self, sample: (f64, f64), h: f64) -> Result<f64, MtsError> {
        if h <= 0.0 {
            return Err(MtsError::BadTimeStep(h));
        }
        same_kind(self.kinds)?;
        let (m1, m2) = (self.kinds.0.mass(), self.kinds.1.mass());
        if m1 != m2 {
            return Err(MtsError::UnequalMasses(m1, m2));
        }
        let order = EvolutionOrder::FirstThenSecond;
        let mid = self.evolve_to(sample, order)?.field;
        let p1 = self.evolve_to((sample.0 + h, sample.1), order)?.field;
        let m1f = self.evolve_to((sample.0 - h, sample.1), order)?.field;
        let p2 = self.evolve_to((sample.0, sample.1 + h), order)?.field;
        let m2f = self.evolve_to((sample.0, sample.1 - h), order)?.field;
        let dt1t1 = second_difference(&p1, &mid, &m1f, h);
        let dt2t2 = second_difference(&p2, &mid, &m2f, h);
        let lap = |axis: usize| {
            mid.apply_mode_multiplier(axis, |k| Complex64::new(-k * k, 0.0))
                .expect("axis in range")
        };
        let dx1x1 = lap(0);
        let dx2x2 = lap(1);
        let mass_sq = 2.0 * m1 * m1;
        let residual = dt1t1
            .add(&dt2t2)
            .sub(&dx1x1)
            .sub(&dx2x2)
            .add(&mid.scaled(Complex64::new(mass_sq, 0.0)));
        Ok(relative_to_terms(
            &residual,
            &[
                dt1t1.l2_norm(),
                dt2t2.l2_norm(),
                dx1x1.l2_norm(),
                dx2x2.l2_norm(),
                mass_sq * mid.l2_norm(),
            ],
        ))
    }
}

fn same_kind(kinds: (ParticleKind, ParticleKind)) -> Result<(), MtsError> {
    let ok = matches!(
        kinds,
        (ParticleKind::Dirac11 { .. }, ParticleKind::Dirac11 { .. })
            | (
                ParticleKind::KleinGordonRoot { .. },
                ParticleKind::KleinGordonRoot { .. }
            )
    );
    if ok {
        Ok(())
    } else {
        Err(MtsError::MixedKinds)
    }
}

fn second_difference(
    plus: &ComplexField,
    mid: &ComplexField,
    minus: &ComplexField,
    h: f64,
) -> ComplexField {
    plus.add(minus)
        .sub(&mid.scaled(Complex64::new(2.0, 0.0)))
        .scaled(Complex64::new(1.0 / (h * h), 0.0))
}

fn relative_to_terms(residual: &ComplexField, term_norms: &[f64]) -> f64 {
    let reference = term_norms.iter().fold(0.0, |a: f64, &b| a.max(b));
    let r = residual.l2_norm();
    if reference < 1e-12 {
        r
    } else {
        r / reference
    }
}

/// Relative norm of the commutator `[H1, H2]` applied to a probe field,
/// computed spectrally; the reference scale is `||H1 H2 probe||`.
pub fn consistency_commutator_norm(
    kinds: (ParticleKind, ParticleKind),
    probe: &SpinorField2P,
) -> Result<f64, MtsError> {
    let ks = [kinds.0, kinds.1];
    let h2 = dirac::apply_hamiltonian(probe, &ks, 1)?;
    let h1h2 = dirac::apply_hamiltonian(&h2, &ks, 0)?;
    let h1 = dirac::apply_hamiltonian(probe, &ks, 0)?;
    let h2h1 = dirac::apply_hamiltonian(&h1, &ks, 1)?;
    let num = h1h2.sub(&h2h1).l2_norm();
    let den = h1h2.l2_norm();
    Ok(if den < 1e-300 { num } else { num / den })
}

/// Strict pairwise spacelike separation under the +- Minkowski form:
/// `(dt)^2 - (dx)^2 < 0` for every pair.
pub fn is_spacelike_config(points: &[SpacetimePoint]) -> bool {
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let dt = a.t - b.t;
            let dx = a.x - b.x;
            if dt * dt - dx * dx >= 0.0 {
                return false;
            }
        }
    }
    true
}

/// Tensor product of two one-axis fields into a two-axis field; the spin
/// index of the first factor is slower.
pub fn tensor_product(a: &ComplexField, b: &ComplexField) -> ComplexField {
    assert_eq!(a.grids().len(), 1);
    assert_eq!(b.grids().len(), 1);
    let (ca, cb) = (a.n_components(), b.n_components());
    ComplexField::from_fn(vec![a.grids()[0], b.grids()[0]], ca * cb, |idx, comp| {
        a.get(&[idx[0]], comp / cb) * b.get(&[idx[1]], comp % cb)
    })
}

/// Seeded random normalized state at times (0, 0).
pub fn random_state(
    grid1: crate::lattice::SpatialGrid,
    grid2: crate::lattice::SpatialGrid,
    kinds: (ParticleKind, ParticleKind),
    seed: u64,
) -> MultiTimeState {
    let nc = kinds.0.n_components() * kinds.1.n_components();
    let count = grid1.n_points() * grid2.n_points() * nc;
    let values = probe_values(seed, count);
    let field =
        ComplexField::from_values(vec![grid1, grid2], nc, values).expect("count matches shape");
    let norm = field.l2_norm();
    let field = field.scaled(Complex64::new(1.0 / norm, 0.0));
    MultiTimeState::new(field, (0.0, 0.0), kinds).expect("components match kinds")
}

/// Normalized single-particle Gaussian packet
/// `exp(-(x - x0)^2 / (2 w^2)) exp(i k0 x)` times a fixed spinor (the
/// positive-energy spinor at `k0` for Dirac particles).
pub fn gaussian_packet(
    grid: crate::lattice::SpatialGrid,
    kind: ParticleKind,
    center: f64,
    width: f64,
    k0: f64,
) -> ComplexField {
    let spinor: Vec<Complex64> = match kind {
        ParticleKind::Dirac11 { mass } => dirac::positive_energy_spinor(k0, mass).to_vec(),
        ParticleKind::KleinGordonRoot { .. } => vec![Complex64::new(1.0, 0.0)],
    };
    let dx = grid.spacing();
    let field = ComplexField::from_fn(vec![grid], kind.n_components(), |idx, compidx| {
        let x = idx[0] as f64 * dx;
        let env = (-((x - center) / width).powi(2) / 2.0).exp();
        let phase = Complex64::new(0.0, k0 * x).exp();
        spinor[compidx] * env * phase
    });
    let n = field.l2_norm();
    field.scaled(Complex64::new(1.0 / n, 0.0))
}

/// Normalized single-particle plane wave on lattice mode `mode` times a
/// fixed spinor (positive-energy for Dirac particles).
pub fn plane_wave(
    grid: crate::lattice::SpatialGrid,
    kind: ParticleKind,
    mode: i64,
) -> ComplexField {
    let k0 = 2.0 * std::f64::consts::PI * mode as f64 / grid.length();
    let spinor: Vec<Complex64> = match kind {
        ParticleKind::Dirac11 { mass } => dirac::positive_energy_spinor(k0, mass).to_vec(),
        ParticleKind::KleinGordonRoot { .. } => vec![Complex64::new(1.0, 0.0)],
    };
    let dx = grid.spacing();
    let field = ComplexField::from_fn(vec![grid], kind.n_components(), |idx, compidx| {
        let x = idx[0] as f64 * dx;
        spinor[compidx] * Complex64::new(0.0, k0 * x).exp()
    });
    let n = field.l2_norm();
    field.scaled(Complex64::new(1.0 / n, 0.0))
}

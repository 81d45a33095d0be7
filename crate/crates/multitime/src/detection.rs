//! Detection probability densities of two-particle multi-time states: the
//! Born density at a fixed time tuple and the covariant density on tilted
//! spacelike hypersurfaces `t = tau + v x`.

use crate::clifford::{build_gamma_set, GammaSet, MetricSignature};
use crate::dirac::{self, DiracError, ParticleKind};
use crate::lattice::SpatialGrid;
use crate::mts::{is_spacelike_config, MtsError, MultiTimeState, SpacetimePoint};
use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

type CMat = DMatrix<Complex64>;

#[derive(Debug, Error)]
pub enum DetectionError {
    #[error("tilt {v} is not spacelike (|v| must be < 1)")]
    SurfaceNotSpacelike { v: f64 },
    #[error("hypersurface densities are defined for two spin-1/2 particles")]
    UnsupportedKinds,
    #[error(transparent)]
    Dirac(#[from] DiracError),
    #[error(transparent)]
    Mts(#[from] MtsError),
}

/// Flat spacelike hypersurface `t = tau + v x` in a fixed frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hypersurface {
    tau: f64,
    v: f64,
}

impl Hypersurface {
    pub fn new(tau: f64, v: f64) -> Result<Self, DetectionError> {
        if !(v.abs() < 1.0) {
            return Err(DetectionError::SurfaceNotSpacelike { v });
        }
        Ok(Self { tau, v })
    }

    pub fn flat(tau: f64) -> Self {
        Self { tau, v: 0.0 }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn tilt(&self) -> f64 {
        self.v
    }

    pub fn time_at(&self, x: f64) -> f64 {
        self.tau + self.v * x
    }

    /// Future unit normal covector (n_t, n_x) under the signature +-.
    pub fn normal(&self) -> [f64; 2] {
        let g = (1.0 - self.v * self.v).sqrt();
        [1.0 / g, -self.v / g]
    }

    /// Induced length element per unit coordinate x.
    pub fn measure_factor(&self) -> f64 {
        (1.0 - self.v * self.v).sqrt()
    }
}

/// Nonnegative detection density over the (x1, x2) grid.
#[derive(Debug, Clone)]
pub struct DensityField {
    grids: [SpatialGrid; 2],
    values: Vec<f64>,
}

impl DensityField {
    pub fn grids(&self) -> &[SpatialGrid; 2] {
        &self.grids
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1 * self.grids[1].n_points() + i2]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Plain grid quadrature without surface measure factors.
    pub fn integral(&self) -> f64 {
        let cell = self.grids[0].spacing() * self.grids[1].spacing();
        self.values.iter().sum::<f64>() * cell
    }
}

/// Joint position density at the state's current time tuple: the squared
/// modulus summed over spin components.
pub fn born_density(state: &MultiTimeState) -> DensityField {
    let field = state.field();
    let grids = [field.grids()[0], field.grids()[1]];
    let (n1, n2) = (grids[0].n_points(), grids[1].n_points());
    let nc = field.n_components();
    let mut values = vec![0.0; n1 * n2];
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let mut s = 0.0;
            for comp in 0..nc {
                s += field.get(&[i1, i2], comp).norm_sqr();
            }
            values[i1 * n2 + i2] = s;
        }
    }
    DensityField { grids, values }
}

/// Contraction of the surface normal with the gamma matrices:
/// `nu = (gamma^0 - v gamma^1) / sqrt(1 - v^2)`.
pub fn nu_matrix(surface: &Hypersurface, gs: &GammaSet) -> CMat {
    let n = surface.normal();
    gs.gamma(0) * Complex64::new(n[0], 0.0) + gs.gamma(1) * Complex64::new(n[1], 0.0)
}

fn gamma0_nu(surface: &Hypersurface) -> CMat {
    let gs = build_gamma_set(MetricSignature::new(1, 1).expect("valid signature"))
        .expect("1+1 gamma set");
    gs.gamma(0) * nu_matrix(surface, &gs)
}

/// Detection density on a pair of tilted surfaces, one per particle:
/// the field is evaluated at the position-dependent times
/// `(tau1 + v1 x1, tau2 + v2 x2)` and contracted with
/// `(gamma^0 nu_1) (x) (gamma^0 nu_2)` in spin space.
///
/// With both tilts zero this is exactly `born_density` of the state evolved
/// to `(tau1, tau2)`.
pub fn hypersurface_density(
    initial: &MultiTimeState,
    s1: &Hypersurface,
    s2: &Hypersurface,
) -> Result<DensityField, DetectionError> {
    let kinds = initial.kinds();
    if !matches!(
        kinds,
        (ParticleKind::Dirac11 { .. }, ParticleKind::Dirac11 { .. })
    ) {
        return Err(DetectionError::UnsupportedKinds);
    }
    let kinds_arr = [kinds.0, kinds.1];
    let field = initial.field();
    let grids = [field.grids()[0], field.grids()[1]];
    let (n1, n2) = (grids[0].n_points(), grids[1].n_points());
    let x1s = grids[0].coordinates();
    let x2s = grids[1].coordinates();
    let (t1_now, t2_now) = initial.times();

    // evaluate phi on the surface pair column by column: first bring each
    // x1-row to its own time t1(x1), then each x2-column to t2(x2)
    let mut on_s1 = field.clone();
    for (i1, &x1) in x1s.iter().enumerate() {
        let evolved = dirac::evolve_free(field, &kinds_arr, 0, s1.time_at(x1) - t1_now)?;
        for i2 in 0..n2 {
            for comp in 0..4 {
                on_s1.set(&[i1, i2], comp, evolved.get(&[i1, i2], comp));
            }
        }
    }
    let mut on_both = on_s1.clone();
    for (i2, &x2) in x2s.iter().enumerate() {
        let evolved = dirac::evolve_free(&on_s1, &kinds_arr, 1, s2.time_at(x2) - t2_now)?;
        for i1 in 0..n1 {
            for comp in 0..4 {
                on_both.set(&[i1, i2], comp, evolved.get(&[i1, i2], comp));
            }
        }
    }

    let m1 = gamma0_nu(s1);
    let m2 = gamma0_nu(s2);
    let mut values = vec![0.0; n1 * n2];
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let idx = [i1, i2];
            let phi: Vec<Complex64> = (0..4).map(|c| on_both.get(&idx, c)).collect();
            let mut rho = Complex64::new(0.0, 0.0);
            for a in 0..2 {
                for b in 0..2 {
                    for ap in 0..2 {
                        for bp in 0..2 {
                            rho += phi[2 * a + b].conj()
                                * m1[(a, ap)]
                                * m2[(b, bp)]
                                * phi[2 * ap + bp];
                        }
                    }
            }
            }
            values[i1 * n2 + i2] = rho.re;
        }
    }
    Ok(DensityField { grids, values })
}

/// Total detection probability: density quadrature weighted by the induced
/// measure factor of each surface.
pub fn total_probability(density: &DensityField, s1: &Hypersurface, s2: &Hypersurface) -> f64 {
    density.integral() * s1.measure_factor() * s2.measure_factor()
}

/// Number of evaluated detection-point pairs (x1 != x2) that fail the
/// spacelike-configuration predicate. Zero whenever the two surfaces
/// coincide; used to warn about causally related detection events when they
/// differ.
pub fn non_spacelike_pair_count(
    s1: &Hypersurface,
    s2: &Hypersurface,
    grid1: &SpatialGrid,
    grid2: &SpatialGrid,
) -> usize {
    let mut count = 0;
    for &x1 in &grid1.coordinates() {
        for &x2 in &grid2.coordinates() {
            if x1 == x2 {
                continue;
            }
            let p1 = SpacetimePoint {
                t: s1.time_at(x1),
                x: x1,
            };
            let p2 = SpacetimePoint {
                t: s2.time_at(x2),
                x: x2,
            };
            if !is_spacelike_config(&[p1, p2]) {
                count += 1;
            }
        }
    }
    count
}

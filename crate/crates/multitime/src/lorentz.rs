//! Lorentz boosts in 1+1 dimensions, their spinor representation, and frame
//! transformation of two-particle multi-time states.
//!
//! A boosted state is evaluated by pulling the primed coordinates back
//! through the inverse boost, summing the momentum-space expansion of the
//! original state at the pulled-back point (exact propagation in time,
//! band-limited interpolation in space), and applying `S (x) S` in spin
//! space.

use crate::clifford::{build_gamma_set, GammaSet, MetricSignature};
use crate::dirac::{propagator_symbol, DiracError, ParticleKind};
use crate::lattice::ComplexField;
use crate::mts::{MtsError, MultiTimeState, SpacetimePoint};
use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

type CMat = DMatrix<Complex64>;

#[derive(Debug, Error)]
pub enum LorentzError {
    #[error("velocity {0} is not subluminal")]
    BadVelocity(f64),
    #[error("frame transformation is defined for two spin-1/2 particles")]
    UnsupportedKinds,
    #[error(transparent)]
    Dirac(#[from] DiracError),
    #[error(transparent)]
    Mts(#[from] MtsError),
}

/// Boost of rapidity chi along the single spatial axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boost {
    rapidity: f64,
}

impl Boost {
    pub fn new(rapidity: f64) -> Self {
        Self { rapidity }
    }

    pub fn from_velocity(v: f64) -> Result<Self, LorentzError> {
        if !(v.abs() < 1.0) {
            return Err(LorentzError::BadVelocity(v));
        }
        Ok(Self { rapidity: v.atanh() })
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn velocity(&self) -> f64 {
        self.rapidity.tanh()
    }

    pub fn inverse(&self) -> Boost {
        Boost::new(-self.rapidity)
    }

    pub fn compose(&self, other: &Boost) -> Boost {
        Boost::new(self.rapidity + other.rapidity)
    }

    /// Matrix acting on (t, x).
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let (c, s) = (self.rapidity.cosh(), self.rapidity.sinh());
        [[c, s], [s, c]]
    }

    /// Spinor representation `S = exp(chi gamma^0 gamma^1 / 2)
    /// = cosh(chi/2) I + sinh(chi/2) gamma^0 gamma^1`.
    pub fn spinor_rep(&self) -> CMat {
        let gs = gamma_set_11();
        let g0g1 = gs.gamma(0) * gs.gamma(1);
        CMat::identity(2, 2) * Complex64::new((self.rapidity / 2.0).cosh(), 0.0)
            + g0g1 * Complex64::new((self.rapidity / 2.0).sinh(), 0.0)
    }
}

fn gamma_set_11() -> GammaSet {
    build_gamma_set(MetricSignature::new(1, 1).expect("valid signature")).expect("1+1 gamma set")
}

pub fn boost_point(b: &Boost, p: SpacetimePoint) -> SpacetimePoint {
    let m = b.matrix();
    SpacetimePoint {
        t: m[0][0] * p.t + m[0][1] * p.x,
        x: m[1][0] * p.t + m[1][1] * p.x,
    }
}

/// A two-particle state expressed in a boosted frame. Evaluation pulls the
/// primed coordinates back to the original frame and applies the spinor
/// representation on each factor.
pub struct BoostedState {
    fhat: ComplexField,
    base_times: (f64, f64),
    kinds: [ParticleKind; 2],
    boost: Boost,
    spin: CMat,
}

pub fn transform_state(state: &MultiTimeState, b: Boost) -> Result<BoostedState, LorentzError> {
    let kinds = state.kinds();
    if !matches!(
        kinds,
        (ParticleKind::Dirac11 { .. }, ParticleKind::Dirac11 { .. })
    ) {
        return Err(LorentzError::UnsupportedKinds);
    }
    Ok(BoostedState {
        fhat: state.field().forward_dft(),
        base_times: state.times(),
        kinds: [kinds.0, kinds.1],
        boost: b,
        spin: b.spinor_rep(),
    })
}

impl BoostedState {
    pub fn boost(&self) -> Boost {
        self.boost
    }

    fn pullback(&self, tp: f64, xp: f64) -> (f64, f64) {
        let m = self.boost.inverse().matrix();
        (m[0][0] * tp + m[0][1] * xp, m[1][0] * tp + m[1][1] * xp)
    }

    /// Per-axis mode weights `U_j(k, t - T_j) exp(i k x) / sqrt(N)` at one
    /// pulled-back spacetime point.
    fn axis_table(&self, axis: usize, t: f64, x: f64) -> Vec<CMat> {
        let grid = self.fhat.grids()[axis];
        let dt = t - if axis == 0 {
            self.base_times.0
        } else {
            self.base_times.1
        };
        let scale = 1.0 / (grid.n_points() as f64).sqrt();
        grid.momenta()
            .iter()
            .map(|&k| {
                propagator_symbol(self.kinds[axis], k, dt)
                    * (Complex64::new(0.0, k * x).exp() * scale)
            })
            .collect()
    }

    fn contract(&self, a1: &[CMat], a2: &[CMat]) -> [Complex64; 4] {
        let (n1, n2) = (a1.len(), a2.len());
        let zero = Complex64::new(0.0, 0.0);
        // collapse the k1 sum first, then k2, then apply S (x) S
        let mut partial = vec![[zero; 4]; n2];
        for i1 in 0..n1 {
            let m1 = &a1[i1];
            for (i2, acc) in partial.iter_mut().enumerate() {
                for b in 0..2 {
                    let v0 = self.fhat.get(&[i1, i2], b);
                    let v1 = self.fhat.get(&[i1, i2], 2 + b);
                    acc[b] += m1[(0, 0)] * v0 + m1[(0, 1)] * v1;
                    acc[2 + b] += m1[(1, 0)] * v0 + m1[(1, 1)] * v1;
                }
            }
        }
        let mut phi = [zero; 4];
        for (i2, part) in partial.iter().enumerate() {
            let m2 = &a2[i2];
            for a in 0..2 {
                phi[2 * a] += m2[(0, 0)] * part[2 * a] + m2[(0, 1)] * part[2 * a + 1];
                phi[2 * a + 1] += m2[(1, 0)] * part[2 * a] + m2[(1, 1)] * part[2 * a + 1];
            }
        }
        let mut out = [zero; 4];
        for a in 0..2 {
            for b in 0..2 {
                let mut s = zero;
                for ap in 0..2 {
                    for bp in 0..2 {
                        s += self.spin[(a, ap)] * self.spin[(b, bp)] * phi[2 * ap + bp];
                    }
                }
                out[2 * a + b] = s;
            }
        }
        out
    }

    /// Spinor value at one primed-frame configuration
    /// (t1', x1', t2', x2').
    pub fn eval_point(&self, t1p: f64, x1p: f64, t2p: f64, x2p: f64) -> [Complex64; 4] {
        let (t1, x1) = self.pullback(t1p, x1p);
        let (t2, x2) = self.pullback(t2p, x2p);
        let a1 = self.axis_table(0, t1, x1);
        let a2 = self.axis_table(1, t2, x2);
        self.contract(&a1, &a2)
    }

    /// The primed-frame wave function sampled on the coordinate lattice at a
    /// fixed primed time tuple.
    pub fn eval_grid(&self, times: (f64, f64)) -> ComplexField {
        let grids = self.fhat.grids().to_vec();
        let x1s = grids[0].coordinates();
        let x2s = grids[1].coordinates();
        // per-point axis tables: each primed x has its own pulled-back time
        let tables1: Vec<Vec<CMat>> = x1s
            .iter()
            .map(|&xp| {
                let (t, x) = self.pullback(times.0, xp);
                self.axis_table(0, t, x)
            })
            .collect();
        let tables2: Vec<Vec<CMat>> = x2s
            .iter()
            .map(|&xp| {
                let (t, x) = self.pullback(times.1, xp);
                self.axis_table(1, t, x)
            })
            .collect();
        let (n1, n2) = (x1s.len(), x2s.len());
        let mut out = ComplexField::zeros(grids, 4);
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                let v = self.contract(&tables1[i1], &tables2[i2]);
                for (comp, &val) in v.iter().enumerate() {
                    out.set(&[i1, i2], comp, val);
                }
            }
        }
        out
    }
}

/// Finite-difference residual of the multi-time equations in the boosted
/// frame: `i d(phi')/dt_j' = H_j phi'` checked with central differences of
/// step `h` in both the primed times and primed positions, maximized over
/// j = 1, 2 on a sample sublattice at the given primed time tuple, relative
/// to the size of `H_j phi'`.
pub fn covariance_residual(
    initial: &MultiTimeState,
    b: Boost,
    sample: (f64, f64),
    h: f64,
) -> Result<f64, LorentzError> {
    let boosted = transform_state(initial, b)?;
    let grids = initial.field().grids();
    let x1s = grids[0].coordinates();
    let x2s = grids[1].coordinates();
    let stride1 = (x1s.len() / 8).max(1);
    let stride2 = (x2s.len() / 8).max(1);
    let masses = [initial.kinds().0.mass(), initial.kinds().1.mass()];
    let (t1, t2) = sample;

    // H_j = alpha_j (-i d/dx_j') + m_j beta_j acting on particle j's slot
    let gs = gamma_set_11();
    let alpha = gs.gamma(0) * gs.gamma(1);
    let beta = gs.gamma(0).clone();

    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for &x1 in x1s.iter().step_by(stride1) {
        for &x2 in x2s.iter().step_by(stride2) {
            let dt1 = diff4(
                &boosted.eval_point(t1 + h, x1, t2, x2),
                &boosted.eval_point(t1 - h, x1, t2, x2),
                h,
            );
            let dt2 = diff4(
                &boosted.eval_point(t1, x1, t2 + h, x2),
                &boosted.eval_point(t1, x1, t2 - h, x2),
                h,
            );
            let dx1 = diff4(
                &boosted.eval_point(t1, x1 + h, t2, x2),
                &boosted.eval_point(t1, x1 - h, t2, x2),
                h,
            );
            let dx2 = diff4(
                &boosted.eval_point(t1, x1, t2, x2 + h),
                &boosted.eval_point(t1, x1, t2, x2 - h),
                h,
            );
            let phi = boosted.eval_point(t1, x1, t2, x2);

            for j in 0..2 {
                let (dt, dx) = if j == 0 { (&dt1, &dx1) } else { (&dt2, &dx2) };
                let mut rj = 0.0f64;
                let mut sj = 0.0f64;
                for other in 0..2 {
                    for a in 0..2 {
                        let comp = |s: usize| if j == 0 { 2 * s + other } else { 2 * other + s };
                        let mut hphi = Complex64::new(0.0, 0.0);
                        for ap in 0..2 {
                            hphi += alpha[(a, ap)] * (-Complex64::i()) * dx[comp(ap)]
                                + beta[(a, ap)] * masses[j] * phi[comp(ap)];
                        }
                        let lhs = Complex64::i() * dt[comp(a)];
                        rj = rj.max((lhs - hphi).norm());
                        sj = sj.max(hphi.norm());
                    }
                }
                worst = worst.max(rj);
                scale = scale.max(sj);
            }
        }
    }
    if scale > 0.0 {
        worst /= scale;
    }
    Ok(worst)
}

fn diff4(plus: &[Complex64; 4], minus: &[Complex64; 4], h: f64) -> [Complex64; 4] {
    std::array::from_fn(|c| (plus[c] - minus[c]) / Complex64::new(2.0 * h, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::{nu_matrix, Hypersurface};
    use crate::dirac::positive_energy_spinor;
    use crate::lattice::make_grid;
    use crate::mts::{
        gaussian_packet, is_spacelike_config, plane_wave, tensor_product, EvolutionOrder,
    };
    use crate::oracles::convergence_order;
    use std::f64::consts::PI;

    fn dirac(m: f64) -> ParticleKind {
        ParticleKind::Dirac11 { mass: m }
    }

    fn mat_norm(m: &CMat) -> f64 {
        m.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn boost_point_examples() {
        let id = Boost::new(0.0);
        let p = SpacetimePoint { t: 0.3, x: -1.2 };
        let q = boost_point(&id, p);
        assert_eq!((q.t, q.x), (p.t, p.x));

        let b = Boost::from_velocity(0.6).unwrap();
        let q = boost_point(&b, SpacetimePoint { t: 0.0, x: 1.0 });
        assert!((q.t - 0.75).abs() < 1e-12);
        assert!((q.x - 1.25).abs() < 1e-12);

        // simultaneous points are no longer simultaneous
        let q0 = boost_point(&b, SpacetimePoint { t: 0.0, x: 0.0 });
        assert!((q0.t - q.t).abs() > 0.7);

        // interval preservation
        for (t, x) in [(0.4, 1.7), (-2.0, 0.3), (1.0, 1.0)] {
            let r = boost_point(&b, SpacetimePoint { t, x });
            let before = t * t - x * x;
            let after = r.t * r.t - r.x * r.x;
            assert!((before - after).abs() < 1e-12 * (1.0 + before.abs()));
        }
    }

    #[test]
    fn group_laws() {
        for (a, b) in [(0.3, -0.7), (1.5, 0.2), (-2.0, -0.1)] {
            let ba = Boost::new(a);
            let bb = Boost::new(b);
            let (ma, mb) = (ba.matrix(), bb.matrix());
            let mc = ba.compose(&bb).matrix();
            for i in 0..2 {
                for j in 0..2 {
                    let prod = ma[i][0] * mb[0][j] + ma[i][1] * mb[1][j];
                    assert!((prod - mc[i][j]).abs() < 1e-12);
                }
            }
            let sc = ba.spinor_rep() * bb.spinor_rep() - ba.compose(&bb).spinor_rep();
            assert!(mat_norm(&sc) < 1e-12);
        }
    }

    #[test]
    fn intertwining_relation() {
        let gs = gamma_set_11();
        for i in 0..21 {
            let chi = -2.0 + 0.2 * i as f64;
            let b = Boost::new(chi);
            let s = b.spinor_rep();
            let sinv = b.inverse().spinor_rep();
            let lam = b.matrix();
            for mu in 0..2 {
                let lhs = &sinv * gs.gamma(mu) * &s;
                let rhs = gs.gamma(0) * Complex64::new(lam[mu][0], 0.0)
                    + gs.gamma(1) * Complex64::new(lam[mu][1], 0.0);
                assert!(mat_norm(&(lhs - rhs)) < 1e-12, "chi {chi} mu {mu}");
            }
        }
    }

    #[test]
    fn nu_matrix_matches_spinor_rep() {
        let gs = gamma_set_11();
        for v in [-0.8, -0.3, 0.0, 0.45, 0.6] {
            let surf = Hypersurface::new(0.0, v).unwrap();
            let g0nu = gs.gamma(0) * nu_matrix(&surf, &gs);
            let s = Boost::new(-v.atanh()).spinor_rep();
            let rhs = s.adjoint() * &s;
            assert!(mat_norm(&(g0nu - rhs)) < 1e-12, "v {v}");
        }
    }

    #[test]
    fn spacelike_configs_preserved() {
        let b = Boost::new(0.8);
        let cases = [
            (vec![(0.0, 0.0), (0.0, 2.0)], true),
            (vec![(0.0, 0.0), (1.0, 3.0)], true),
            (vec![(0.0, 0.0), (2.0, 1.0)], false),
            (vec![(0.5, 0.0), (0.0, 4.0), (0.2, -3.0)], true),
        ];
        for (pts, expect) in cases {
            let points: Vec<SpacetimePoint> = pts
                .iter()
                .map(|&(t, x)| SpacetimePoint { t, x })
                .collect();
            let boosted: Vec<SpacetimePoint> =
                points.iter().map(|&p| boost_point(&b, p)).collect();
            assert_eq!(is_spacelike_config(&points), expect);
            assert_eq!(is_spacelike_config(&boosted), expect);
        }
    }

    fn plane_wave_state(n: usize, mode: i64, mass: f64) -> MultiTimeState {
        let g = make_grid(n, 2.0 * PI).unwrap();
        let f = plane_wave(g, dirac(mass), mode);
        MultiTimeState::new(
            tensor_product(&f, &f),
            (0.0, 0.0),
            (dirac(mass), dirac(mass)),
        )
        .unwrap()
    }

    #[test]
    fn plane_wave_boosts_to_boosted_plane_wave() {
        // (E, k) = (5, 3) at m = 4 on the 2*pi box
        let n = 16;
        let state = plane_wave_state(n, 3, 4.0);
        let chi = 0.5;
        let b = Boost::new(chi);
        let boosted = transform_state(&state, b).unwrap();

        let (e, k) = (5.0, 3.0);
        let (c, s) = (chi.cosh(), chi.sinh());
        let (ep, kp) = (c * e + s * k, c * k + s * e);
        let u = positive_energy_spinor(3.0, 4.0);
        let su: Vec<Complex64> = (0..2)
            .map(|a| {
                let sm = b.spinor_rep();
                sm[(a, 0)] * u[0] + sm[(a, 1)] * u[1]
            })
            .collect();
        let amp = 1.0 / (2.0 * PI); // plane_wave normalizes to 1/sqrt(L) per factor

        let times = (0.3, -0.2);
        let grid = make_grid(n, 2.0 * PI).unwrap();
        let out = boosted.eval_grid(times);
        let mut worst = 0.0f64;
        for (i1, &x1) in grid.coordinates().iter().enumerate() {
            for (i2, &x2) in grid.coordinates().iter().enumerate() {
                for a in 0..2 {
                    for bb in 0..2 {
                        let phase1 = Complex64::new(0.0, kp * x1 - ep * times.0).exp();
                        let phase2 = Complex64::new(0.0, kp * x2 - ep * times.1).exp();
                        let expect = su[a] * su[bb] * phase1 * phase2 * amp;
                        let got = out.get(&[i1, i2], 2 * a + bb);
                        worst = worst.max((got - expect).norm());
                    }
                }
            }
        }
        assert!(worst < 1e-8, "worst {worst}");
    }

    fn packet_state(n: usize, length: f64) -> MultiTimeState {
        let g = make_grid(n, length).unwrap();
        let mid = length / 2.0;
        let f = gaussian_packet(g, dirac(1.0), mid, 1.5, 0.4);
        let h = gaussian_packet(g, dirac(1.0), mid, 2.0, -0.3);
        MultiTimeState::new(tensor_product(&f, &h), (0.0, 0.0), (dirac(1.0), dirac(1.0)))
            .unwrap()
    }

    #[test]
    fn boosted_slice_norm_is_preserved() {
        let state = packet_state(64, 40.0);
        let boosted = transform_state(&state, Boost::new(0.3)).unwrap();
        let slice = boosted.eval_grid((0.0, 0.0));
        let norm = slice.l2_norm();
        assert!((norm - 1.0).abs() < 1e-6, "norm {norm}");
    }

    #[test]
    fn identity_boost_reproduces_the_state() {
        let state = packet_state(32, 20.0);
        let boosted = transform_state(&state, Boost::new(0.0)).unwrap();
        let t = (0.4, -0.7);
        let direct = state.evolve_to(t, EvolutionOrder::FirstThenSecond).unwrap();
        let diff = boosted.eval_grid(t).max_abs_diff(direct.field());
        assert!(diff < 1e-11, "diff {diff}");
    }

    #[test]
    fn covariance_plane_wave_residual() {
        let state = plane_wave_state(16, 3, 4.0);
        let r0 = covariance_residual(&state, Boost::new(0.0), (0.1, 0.2), 5e-5).unwrap();
        assert!(r0 < 1e-6, "unboosted residual {r0}");
        let r = covariance_residual(&state, Boost::new(0.5), (0.1, 0.2), 5e-5).unwrap();
        assert!(r < 1e-6, "boosted residual {r}");
    }

    #[test]
    fn covariance_packet_residual_converges_at_order_two() {
        let state = packet_state(32, 20.0);
        let b = Boost::new(0.3);
        let sample = (0.15, -0.1);
        let r1 = covariance_residual(&state, b, sample, 2e-2).unwrap();
        let r2 = covariance_residual(&state, b, sample, 1e-2).unwrap();
        let r4 = covariance_residual(&state, b, sample, 5e-3).unwrap();
        assert!(r2 <= 1e-3, "residual at h = 1e-2: {r2}");
        let o1 = convergence_order(r1, r2);
        let o2 = convergence_order(r2, r4);
        assert!((o1 - 2.0).abs() < 0.1, "order {o1}");
        assert!((o2 - 2.0).abs() < 0.1, "order {o2}");
    }

    #[test]
    fn kg_states_are_rejected() {
        let g = make_grid(8, 10.0).unwrap();
        let kg = ParticleKind::KleinGordonRoot { mass: 1.0 };
        let state = crate::mts::random_state(g, g, (kg, kg), 3);
        assert!(matches!(
            transform_state(&state, Boost::new(0.2)),
            Err(LorentzError::UnsupportedKinds)
        ));
        assert!(Boost::from_velocity(1.0).is_err());
    }
}

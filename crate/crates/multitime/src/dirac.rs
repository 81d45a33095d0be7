//! Free single-particle partial Hamiltonians in 1+1 dimensions, applied
//! spectrally along one particle axis of a multi-particle field.
//!
//! The Dirac representation is fixed by the (1,1) gamma set of [`crate::clifford`]:
//! `beta = gamma^0 = sigma_x`, `alpha = gamma^0 gamma^1 = -sigma_z`, so
//! `H(k) = alpha k + beta m = [[-k, m], [m, k]]` with eigenvalues
//! `+-sqrt(k^2 + m^2)`. The propagator is evaluated in closed form,
//! `exp(-iHt) = cos(Et) I - i sin(Et) H / E`.

use crate::lattice::ComplexField;
use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

type CMat = DMatrix<Complex64>;

#[derive(Debug, Error, PartialEq)]
pub enum DiracError {
    #[error("particle axis {axis} out of range ({naxes} axes)")]
    AxisOutOfRange { axis: usize, naxes: usize },
    #[error("field has {got} components but the particle kinds require {expected}")]
    ComponentMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// Particle species handled by the multi-time system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParticleKind {
    /// Two-component 1+1 Dirac particle.
    Dirac11 { mass: f64 },
    /// Scalar particle with pseudodifferential Hamiltonian `sqrt(-Lap + m^2)`.
    KleinGordonRoot { mass: f64 },
}

impl ParticleKind {
    pub fn mass(&self) -> f64 {
        match *self {
            ParticleKind::Dirac11 { mass } | ParticleKind::KleinGordonRoot { mass } => mass,
        }
    }

    pub fn n_components(&self) -> usize {
        match self {
            ParticleKind::Dirac11 { .. } => 2,
            ParticleKind::KleinGordonRoot { .. } => 1,
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Per-mode action on one particle's spin slot.
#[derive(Clone, Copy)]
enum SpinSymbol {
    Scalar(Complex64),
    Mat2([[Complex64; 2]; 2]),
}

fn dirac_h(k: f64, m: f64) -> [[Complex64; 2]; 2] {
    [[c(-k, 0.0), c(m, 0.0)], [c(m, 0.0), c(k, 0.0)]]
}

fn dirac_u(k: f64, m: f64, t: f64) -> [[Complex64; 2]; 2] {
    let e = (k * k + m * m).sqrt();
    if e == 0.0 {
        return [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    }
    let a = (e * t).cos();
    let s = (e * t).sin() / e;
    // cos(Et) I - i sin(Et)/E * H(k)
    [
        [c(a, s * k), c(0.0, -s * m)],
        [c(0.0, -s * m), c(a, -s * k)],
    ]
}

fn symbol_of(kind: ParticleKind, k: f64, op: SymbolOp) -> SpinSymbol {
    match (kind, op) {
        (ParticleKind::Dirac11 { mass }, SymbolOp::Hamiltonian) => {
            SpinSymbol::Mat2(dirac_h(k, mass))
        }
        (ParticleKind::Dirac11 { mass }, SymbolOp::Propagator(t)) => {
            SpinSymbol::Mat2(dirac_u(k, mass, t))
        }
        (ParticleKind::KleinGordonRoot { mass }, SymbolOp::Hamiltonian) => {
            SpinSymbol::Scalar(c((k * k + mass * mass).sqrt(), 0.0))
        }
        (ParticleKind::KleinGordonRoot { mass }, SymbolOp::Propagator(t)) => {
            let e = (k * k + mass * mass).sqrt();
            SpinSymbol::Scalar(c(0.0, -e * t).exp())
        }
    }
}

#[derive(Clone, Copy)]
enum SymbolOp {
    Hamiltonian,
    Propagator(f64),
}

/// Hermitian momentum-space Hamiltonian: 2x2 for `Dirac11`, 1x1 for
/// `KleinGordonRoot`.
pub fn hamiltonian_symbol(kind: ParticleKind, k: f64) -> CMat {
    match symbol_of(kind, k, SymbolOp::Hamiltonian) {
        SpinSymbol::Scalar(v) => CMat::from_row_slice(1, 1, &[v]),
        SpinSymbol::Mat2(m) => CMat::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]]),
    }
}

/// Unitary per-mode propagator `exp(-i H(k) t)`.
pub fn propagator_symbol(kind: ParticleKind, k: f64, t: f64) -> CMat {
    match symbol_of(kind, k, SymbolOp::Propagator(t)) {
        SpinSymbol::Scalar(v) => CMat::from_row_slice(1, 1, &[v]),
        SpinSymbol::Mat2(m) => CMat::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]]),
    }
}

/// Positive-energy eigenspinor of the Dirac symbol `H(k)`, normalized.
pub fn positive_energy_spinor(k: f64, m: f64) -> [Complex64; 2] {
    let e = (k * k + m * m).sqrt();
    let v = [m, k + e];
    let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
    if n < 1e-300 {
        // m = 0, k <= 0: H = diag(-k, k), first basis vector has energy |k|
        return [c(1.0, 0.0), c(0.0, 0.0)];
    }
    [c(v[0] / n, 0.0), c(v[1] / n, 0.0)]
}

fn validate(
    field: &ComplexField,
    kinds: &[ParticleKind],
    axis: usize,
) -> Result<(), DiracError> {
    if axis >= kinds.len() || axis >= field.grids().len() {
        return Err(DiracError::AxisOutOfRange {
            axis,
            naxes: field.grids().len(),
        });
    }
    let expected: usize = kinds.iter().map(|k| k.n_components()).product();
    if expected != field.n_components() {
        return Err(DiracError::ComponentMismatch {
            got: field.n_components(),
            expected,
        });
    }
    Ok(())
}

fn apply_per_mode(
    field: &ComplexField,
    kinds: &[ParticleKind],
    axis: usize,
    op: SymbolOp,
) -> Result<ComplexField, DiracError> {
    validate(field, kinds, axis)?;
    let mut hat = field.dft_axis(axis, false)?;
    let shape = field.shape();
    let nc = field.n_components();
    let momenta = field.grids()[axis].momenta();
    let symbols: Vec<SpinSymbol> = momenta
        .iter()
        .map(|&k| symbol_of(kinds[axis], k, op))
        .collect();

    // spin-slot stride of the acted-on particle
    let cstride: usize = kinds[axis + 1..].iter().map(|k| k.n_components()).product();
    let point_stride: usize = shape[axis + 1..].iter().product();
    let n_ax = shape[axis];
    let npoints: usize = shape.iter().product();
    let values = hat.values_mut();
    for p in 0..npoints {
        let ik = (p / point_stride) % n_ax;
        match symbols[ik] {
            SpinSymbol::Scalar(u) => {
                for v in &mut values[p * nc..(p + 1) * nc] {
                    *v *= u;
                }
            }
            SpinSymbol::Mat2(mat) => {
                for cidx in 0..nc {
                    if (cidx / cstride) % 2 == 0 {
                        let i0 = p * nc + cidx;
                        let i1 = i0 + cstride;
                        let a = values[i0];
                        let b = values[i1];
                        values[i0] = mat[0][0] * a + mat[0][1] * b;
                        values[i1] = mat[1][0] * a + mat[1][1] * b;
                    }
                }
            }
        }
    }
    Ok(hat.dft_axis(axis, true)?)
}

/// Evolve the field by `exp(-i H_axis t)` acting on the given particle axis:
/// forward DFT along that axis, per-mode propagator on that particle's spin
/// slot, inverse DFT. Preserves the L2 norm.
pub fn evolve_free(
    field: &ComplexField,
    kinds: &[ParticleKind],
    axis: usize,
    t: f64,
) -> Result<ComplexField, DiracError> {
    apply_per_mode(field, kinds, axis, SymbolOp::Propagator(t))
}

/// Apply the partial Hamiltonian `H_axis` spectrally.
pub fn apply_hamiltonian(
    field: &ComplexField,
    kinds: &[ParticleKind],
    axis: usize,
) -> Result<ComplexField, DiracError> {
    apply_per_mode(field, kinds, axis, SymbolOp::Hamiltonian)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_grid, ComplexField};
    use crate::oracles::expm;
    use crate::rng::probe_values;
    use std::f64::consts::PI;

    fn dirac(m: f64) -> ParticleKind {
        ParticleKind::Dirac11 { mass: m }
    }

    fn kg(m: f64) -> ParticleKind {
        ParticleKind::KleinGordonRoot { mass: m }
    }

    #[test]
    fn hamiltonian_eigenvalues() {
        // rest frame: H(0) = beta, eigenvalues +-1
        let h = hamiltonian_symbol(dirac(1.0), 0.0);
        let ev = h.clone().symmetric_eigenvalues();
        let mut evs: Vec<f64> = ev.iter().copied().collect();
        evs.sort_by(f64::total_cmp);
        assert!((evs[0] + 1.0).abs() < 1e-14 && (evs[1] - 1.0).abs() < 1e-14);

        // 3-4-5 triangle via the eigenvalue oracle
        let h = hamiltonian_symbol(dirac(4.0), 3.0);
        let ev = h.symmetric_eigenvalues();
        let mut evs: Vec<f64> = ev.iter().copied().collect();
        evs.sort_by(f64::total_cmp);
        assert!((evs[0] + 5.0).abs() < 1e-12 && (evs[1] - 5.0).abs() < 1e-12);

        let h = hamiltonian_symbol(kg(4.0), 3.0);
        assert!((h[(0, 0)].re - 5.0).abs() < 1e-14);
    }

    #[test]
    fn square_identity_over_momentum_range() {
        for k in [-100.0, -7.5, 0.0, 0.1, 42.0, 100.0] {
            for m in [0.0, 1.0, 10.0] {
                let h = hamiltonian_symbol(dirac(m), k);
                let sq = &h * &h;
                let expect = k * k + m * m;
                for i in 0..2 {
                    for j in 0..2 {
                        let want = if i == j { expect } else { 0.0 };
                        assert!((sq[(i, j)].re - want).abs() <= 1e-14 * (1.0 + expect));
                        assert!(sq[(i, j)].im.abs() <= 1e-14 * (1.0 + expect));
                    }
                }
                let e = h.symmetric_eigenvalues();
                for lam in e.iter() {
                    assert!((lam.abs() - expect.sqrt()).abs() < 1e-12 * (1.0 + expect.sqrt()));
                }
            }
        }
    }

    #[test]
    fn propagator_closed_form_matches_expm_oracle() {
        for (k, m, t) in [(0.0, 1.0, PI), (3.0, 4.0, 0.7), (-2.0, 0.5, -1.3)] {
            let h = hamiltonian_symbol(dirac(m), k);
            let u = propagator_symbol(dirac(m), k, t);
            let dense = expm(&(h * Complex64::new(0.0, -t)));
            let dev = (&u - &dense).map(|z| z.norm()).max();
            assert!(dev < 1e-13, "k={k} m={m} t={t} dev={dev}");
            // unitarity
            let uu = u.adjoint() * &u;
            let dev = (uu - DMatrix::identity(2, 2)).map(|z| z.norm()).max();
            assert!(dev < 1e-13);
        }
        // t = 0 gives the identity; k=0, m=1, t=pi gives -I
        let u = propagator_symbol(dirac(1.0), 5.0, 0.0);
        assert_eq!((u - DMatrix::identity(2, 2)).map(|z| z.norm()).max(), 0.0);
        let u = propagator_symbol(dirac(1.0), 0.0, PI);
        let dev = (u + DMatrix::identity(2, 2)).map(|z| z.norm()).max();
        assert!(dev < 1e-13);
        // scalar phase evolution
        let u = propagator_symbol(kg(1.0), 0.0, PI / 2.0);
        assert!((u[(0, 0)] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    fn random_field(seed: u64, n: usize, nc: usize) -> ComplexField {
        let g = make_grid(n, 2.0 * PI).unwrap();
        ComplexField::from_values(vec![g, g], nc, probe_values(seed, n * n * nc)).unwrap()
    }

    #[test]
    fn evolve_zero_time_is_identity() {
        let f = random_field(5, 16, 4);
        let kinds = [dirac(1.0), dirac(2.0)];
        let g = evolve_free(&f, &kinds, 0, 0.0).unwrap();
        assert!(f.max_abs_diff(&g) < 1e-13);
    }

    #[test]
    fn evolve_preserves_norm_and_group_law() {
        let f = random_field(9, 16, 4);
        let kinds = [dirac(1.0), dirac(0.3)];
        for t in [-10.0, -1.7, 0.4, 10.0] {
            let g = evolve_free(&f, &kinds, 1, t).unwrap();
            assert!((g.l2_norm() / f.l2_norm() - 1.0).abs() < 1e-11);
        }
        let a = evolve_free(&f, &kinds, 0, 0.9).unwrap();
        let ab = evolve_free(&a, &kinds, 0, -2.1).unwrap();
        let direct = evolve_free(&f, &kinds, 0, -1.2).unwrap();
        assert!(ab.max_abs_diff(&direct) < 1e-11);
    }

    #[test]
    fn massless_right_mover_translates_rigidly() {
        // Gaussian packet in the +1 eigenspace of alpha = -sigma_z (second component)
        let n = 128;
        let length = 32.0;
        let g = make_grid(n, length).unwrap();
        let x0 = 12.0;
        let w = 1.5;
        let f = ComplexField::from_fn(vec![g, g], 4, |idx, comp| {
            let x1 = idx[0] as f64 * length / n as f64;
            let x2 = idx[1] as f64 * length / n as f64;
            if comp == 2 {
                // spin (s1, s2) = (1, 0): particle 1 in the alpha = +1 eigenstate
                let env1 = (-((x1 - x0) / w).powi(2) / 2.0).exp();
                let env2 = (-((x2 - 16.0) / 3.0).powi(2) / 2.0).exp();
                Complex64::new(env1 * env2, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let kinds = [dirac(0.0), dirac(0.0)];
        let t = 5.0;
        let moved = evolve_free(&f, &kinds, 0, t).unwrap();
        // center of mass along x1
        let center = |field: &ComplexField| {
            let mut num = 0.0;
            let mut den = 0.0;
            for i in 0..n {
                let x = i as f64 * length / n as f64;
                for j in 0..n {
                    for comp in 0..4 {
                        let d = field.get(&[i, j], comp).norm_sqr();
                        num += x * d;
                        den += d;
                    }
                }
            }
            num / den
        };
        let shift = center(&moved) - center(&f);
        assert!(
            (shift - t).abs() < length / n as f64,
            "shift {shift} expected {t}"
        );
    }

    #[test]
    fn axis_and_component_errors() {
        let f = random_field(1, 8, 4);
        let kinds = [dirac(1.0), dirac(1.0)];
        assert!(matches!(
            evolve_free(&f, &kinds, 2, 1.0),
            Err(DiracError::AxisOutOfRange { axis: 2, .. })
        ));
        let bad_kinds = [kg(1.0), kg(1.0)];
        assert!(matches!(
            evolve_free(&f, &bad_kinds, 0, 1.0),
            Err(DiracError::ComponentMismatch { got: 4, expected: 1 })
        ));
    }

    #[test]
    fn kg_evolution_is_pure_phase_per_mode() {
        let g = make_grid(16, 2.0 * PI).unwrap();
        let f = ComplexField::from_fn(vec![g, g], 1, |idx, _| {
            let x = idx[0] as f64 * 2.0 * PI / 16.0;
            Complex64::new(0.0, 3.0 * x).exp()
        });
        let kinds = [kg(4.0), kg(4.0)];
        let t = 0.25;
        let moved = evolve_free(&f, &kinds, 0, t).unwrap();
        // mode k=3, m=4 -> E=5
        let expect = f.scaled(Complex64::new(0.0, -5.0 * t).exp());
        assert!(moved.max_abs_diff(&expect) < 1e-12);
    }
}

//! Independent reference computations used by the test suites and the
//! scenario runner to cross-check the spectral implementations. Nothing in
//! the solver modules depends on this code.

use crate::dirac::{hamiltonian_symbol, ParticleKind};
use crate::lattice::ComplexField;
use nalgebra::DMatrix;
use num_complex::Complex64;

type CMat = DMatrix<Complex64>;

/// Dense matrix exponential by scaling and squaring with a Taylor series.
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    let norm = a.map(|z| z.norm()).max() * n as f64;
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a * Complex64::new(1.0 / 2f64.powi(s as i32), 0.0);
    let mut result = CMat::identity(n, n);
    let mut term = CMat::identity(n, n);
    for k in 1..=24 {
        term = &term * &scaled * Complex64::new(1.0 / k as f64, 0.0);
        result += &term;
    }
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

/// Direct O(N^2) unitary discrete Fourier transform.
pub fn naive_dft(values: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let n = values.len();
    let sign = if inverse { 1.0 } else { -1.0 };
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, v) in values.iter().enumerate() {
                let ang = sign * 2.0 * std::f64::consts::PI * (m * j) as f64 / n as f64;
                acc += v * Complex64::new(ang.cos(), ang.sin());
            }
            acc * scale
        })
        .collect()
}

/// RK4 integration of the mode equation `f'' = d * f` from `(f0, df0)` to
/// time `t`, with `steps` uniform steps. Used as the oracle for the
/// per-mode closed forms of the ultrahyperbolic solver.
pub fn integrate_mode_ode(
    d: f64,
    f0: Complex64,
    df0: Complex64,
    t: f64,
    steps: usize,
) -> (Complex64, Complex64) {
    let h = t / steps as f64;
    let mut f = f0;
    let mut g = df0;
    let deriv = |f: Complex64, g: Complex64| (g, f * d);
    for _ in 0..steps {
        let (k1f, k1g) = deriv(f, g);
        let (k2f, k2g) = deriv(f + k1f * (h / 2.0), g + k1g * (h / 2.0));
        let (k3f, k3g) = deriv(f + k2f * (h / 2.0), g + k2g * (h / 2.0));
        let (k4f, k4g) = deriv(f + k3f * h, g + k3g * h);
        f += (k1f + k2f * 2.0 + k3f * 2.0 + k4f) * (h / 6.0);
        g += (k1g + k2g * 2.0 + k3g * 2.0 + k4g) * (h / 6.0);
    }
    (f, g)
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Single-time evolution `exp(-i (H1 + H2) t)` of a two-particle field,
/// computed per momentum pair with the dense matrix exponential of the
/// combined Hamiltonian `H1 ox I + I ox H2`.
pub fn single_time_evolution(
    field: &ComplexField,
    kinds: (ParticleKind, ParticleKind),
    t: f64,
) -> ComplexField {
    let mut hat = field.forward_dft();
    let shape = hat.shape();
    assert_eq!(shape.len(), 2);
    let (n1, n2) = (shape[0], shape[1]);
    let k1s = hat.grids()[0].momenta();
    let k2s = hat.grids()[1].momenta();
    let nc = hat.n_components();
    let mit = Complex64::new(0.0, -t);
    for i in 0..n1 {
        let h1 = hamiltonian_symbol(kinds.0, k1s[i]);
        let id1 = CMat::identity(h1.nrows(), h1.nrows());
        for j in 0..n2 {
            let h2 = hamiltonian_symbol(kinds.1, k2s[j]);
            let id2 = CMat::identity(h2.nrows(), h2.nrows());
            let h = kron(&h1, &id2) + kron(&id1, &h2);
            let u = expm(&(h * mit));
            let mut amp = vec![Complex64::new(0.0, 0.0); nc];
            for (ci, a) in amp.iter_mut().enumerate() {
                *a = hat.get(&[i, j], ci);
            }
            for row in 0..nc {
                let mut acc = Complex64::new(0.0, 0.0);
                for (col, a) in amp.iter().enumerate() {
                    acc += u[(row, col)] * a;
                }
                hat.set(&[i, j], row, acc);
            }
        }
    }
    hat.inverse_dft()
}

/// Observed convergence order from residuals at `h` and `h/2`.
pub fn convergence_order(residual_h: f64, residual_half: f64) -> f64 {
    (residual_h / residual_half).log2()
}

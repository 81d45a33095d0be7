//! Periodic grids, unitary discrete Fourier transforms and momentum bookkeeping.
//!
//! All solvers in this crate act on [`ComplexField`] values: complex arrays over
//! a product of periodic one-dimensional grids, with an arbitrary number of
//! internal (spin) components stored fastest. Transforms are unitary
//! (a factor `1/sqrt(N)` per axis in both directions) so norm statements are
//! exact at the discrete level.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("grid size {0} is not a power of two >= 2")]
    BadGridSize(usize),
    #[error("box length must be positive, got {0}")]
    BadLength(f64),
    #[error("value count {got} does not match grid shape ({expected} expected)")]
    ShapeMismatch { got: usize, expected: usize },
    #[error("axis {axis} out of range for a field with {naxes} axes")]
    AxisOutOfRange { axis: usize, naxes: usize },
}

/// A uniform periodic grid on a box `[0, L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    n_points: usize,
    length: f64,
}

impl SpatialGrid {
    pub fn new(n_points: usize, length: f64) -> Result<Self, LatticeError> {
        if n_points < 2 || !n_points.is_power_of_two() {
            return Err(LatticeError::BadGridSize(n_points));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(LatticeError::BadLength(length));
        }
        Ok(Self { n_points, length })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n_points as f64
    }

    /// Grid coordinates `x_i = i * spacing`.
    pub fn coordinates(&self) -> Vec<f64> {
        let dx = self.spacing();
        (0..self.n_points).map(|i| i as f64 * dx).collect()
    }

    /// Momentum values `k_m = 2 pi m / L` for `m in {-n/2, ..., n/2 - 1}`,
    /// in FFT storage order (nonnegative frequencies first).
    pub fn momenta(&self) -> Vec<f64> {
        let n = self.n_points as i64;
        let base = 2.0 * PI / self.length;
        (0..n)
            .map(|j| {
                let m = if j < n / 2 { j } else { j - n };
                base * m as f64
            })
            .collect()
    }
}

/// Convenience constructor matching the crate-wide naming.
pub fn make_grid(n_points: usize, length: f64) -> Result<SpatialGrid, LatticeError> {
    SpatialGrid::new(n_points, length)
}

/// A complex array over a product of periodic grids with `n_components`
/// internal components per point. Layout: spatial axes row-major (axis 0
/// slowest), components fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grids: Vec<SpatialGrid>,
    n_components: usize,
    values: Vec<Complex64>,
}

impl ComplexField {
    pub fn zeros(grids: Vec<SpatialGrid>, n_components: usize) -> Self {
        let total: usize = grids.iter().map(|g| g.n_points()).product::<usize>() * n_components;
        Self {
            grids,
            n_components,
            values: vec![Complex64::new(0.0, 0.0); total],
        }
    }

    pub fn from_values(
        grids: Vec<SpatialGrid>,
        n_components: usize,
        values: Vec<Complex64>,
    ) -> Result<Self, LatticeError> {
        let expected: usize =
            grids.iter().map(|g| g.n_points()).product::<usize>() * n_components;
        if values.len() != expected {
            return Err(LatticeError::ShapeMismatch {
                got: values.len(),
                expected,
            });
        }
        Ok(Self {
            grids,
            n_components,
            values,
        })
    }

    /// Fill from a function of (spatial multi-index, component).
    pub fn from_fn(
        grids: Vec<SpatialGrid>,
        n_components: usize,
        mut f: impl FnMut(&[usize], usize) -> Complex64,
    ) -> Self {
        let mut field = Self::zeros(grids, n_components);
        let shape = field.shape();
        let npoints: usize = shape.iter().product();
        let mut idx = vec![0usize; shape.len()];
        for p in 0..npoints {
            let mut rem = p;
            for a in (0..shape.len()).rev() {
                idx[a] = rem % shape[a];
                rem /= shape[a];
            }
            for c in 0..n_components {
                field.values[p * n_components + c] = f(&idx, c);
            }
        }
        field
    }

    pub fn grids(&self) -> &[SpatialGrid] {
        &self.grids
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn shape(&self) -> Vec<usize> {
        self.grids.iter().map(|g| g.n_points()).collect()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// Volume of one grid cell (product of spacings).
    pub fn cell_volume(&self) -> f64 {
        self.grids.iter().map(|g| g.spacing()).product()
    }

    pub fn flat_index(&self, spatial: &[usize], component: usize) -> usize {
        debug_assert_eq!(spatial.len(), self.grids.len());
        let mut p = 0usize;
        for (a, &i) in spatial.iter().enumerate() {
            p = p * self.grids[a].n_points() + i;
        }
        p * self.n_components + component
    }

    pub fn get(&self, spatial: &[usize], component: usize) -> Complex64 {
        self.values[self.flat_index(spatial, component)]
    }

    pub fn set(&mut self, spatial: &[usize], component: usize, v: Complex64) {
        let i = self.flat_index(spatial, component);
        self.values[i] = v;
    }

    /// L2 norm with the grid measure: `sqrt(sum |v|^2 * cell_volume)`,
    /// summed in index order.
    pub fn l2_norm(&self) -> f64 {
        let mut s = 0.0;
        for v in &self.values {
            s += v.norm_sqr();
        }
        (s * self.cell_volume()).sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= c;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, w) in out.values.iter_mut().zip(&other.values) {
            *v += w;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, w) in out.values.iter_mut().zip(&other.values) {
            *v -= w;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Unitary DFT along every spatial axis.
    pub fn forward_dft(&self) -> Self {
        let mut out = self.clone();
        for a in 0..self.grids.len() {
            out = out.dft_axis(a, false).expect("axis in range");
        }
        out
    }

    /// Unitary inverse DFT along every spatial axis.
    pub fn inverse_dft(&self) -> Self {
        let mut out = self.clone();
        for a in 0..self.grids.len() {
            out = out.dft_axis(a, true).expect("axis in range");
        }
        out
    }

    /// Unitary DFT along a single spatial axis, componentwise.
    pub fn dft_axis(&self, axis: usize, inverse: bool) -> Result<Self, LatticeError> {
        if axis >= self.grids.len() {
            return Err(LatticeError::AxisOutOfRange {
                axis,
                naxes: self.grids.len(),
            });
        }
        let n = self.grids[axis].n_points();
        let stride: usize =
            self.n_components * self.grids[axis + 1..].iter().map(|g| g.n_points()).product::<usize>();
        let outer: usize = self.grids[..axis].iter().map(|g| g.n_points()).product();
        let mut out = self.clone();
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for o in 0..outer {
            let block = o * n * stride;
            for r in 0..stride {
                for j in 0..n {
                    line[j] = out.values[block + r + j * stride];
                }
                fft_pow2(&mut line, inverse);
                for j in 0..n {
                    out.values[block + r + j * stride] = line[j];
                }
            }
        }
        Ok(out)
    }

    /// Multiply each momentum mode along `axis` by `f(k)`, acting on all
    /// components; realizes spectral derivatives such as the Laplacian.
    pub fn apply_mode_multiplier(
        &self,
        axis: usize,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self, LatticeError> {
        let mut hat = self.dft_axis(axis, false)?;
        let momenta = self.grids[axis].momenta();
        let n = self.grids[axis].n_points();
        let stride: usize =
            self.n_components * self.grids[axis + 1..].iter().map(|g| g.n_points()).product::<usize>();
        let outer: usize = self.grids[..axis].iter().map(|g| g.n_points()).product();
        for o in 0..outer {
            let block = o * n * stride;
            for j in 0..n {
                let m = f(momenta[j]);
                for r in 0..stride {
                    hat.values[block + r + j * stride] *= m;
                }
            }
        }
        hat.dft_axis(axis, true)
    }
}

/// In-place radix-2 Cooley-Tukey transform with unitary normalization.
/// Forward sign convention: `f_hat[m] = sum_j f[j] exp(-2 pi i m j / N) / sqrt(N)`.
pub fn fft_pow2(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 0..n {
        if i < j {
            buf.swap(i, j);
        }
        let mut bit = n >> 1;
        while bit > 0 && j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let wlen = Complex64::new(ang.cos(), ang.sin());
        let mut i = 0;
        while i < n {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = buf[i + k];
                let v = buf[i + k + len / 2] * w;
                buf[i + k] = u + v;
                buf[i + k + len / 2] = u - v;
                w *= wlen;
            }
            i += len;
        }
        len <<= 1;
    }
    let scale = 1.0 / (n as f64).sqrt();
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::naive_dft;
    use crate::rng::probe_values;
    use proptest::prelude::*;

    #[test]
    fn make_grid_examples() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        assert!((g.spacing() - PI / 4.0).abs() < 1e-15);
        let mut ms: Vec<i64> = g
            .momenta()
            .iter()
            .map(|k| (k / (2.0 * PI / g.length())).round() as i64)
            .collect();
        ms.sort();
        assert_eq!(ms, vec![-4, -3, -2, -1, 0, 1, 2, 3]);

        let g2 = make_grid(2, 1.0).unwrap();
        assert!((g2.spacing() - 0.5).abs() < 1e-15);
        let m2 = g2.momenta();
        assert!((m2[0] - 0.0).abs() < 1e-15);
        assert!((m2[1] + 2.0 * PI).abs() < 1e-12);

        assert_eq!(make_grid(6, 1.0), Err(LatticeError::BadGridSize(6)));
        assert_eq!(make_grid(8, 0.0), Err(LatticeError::BadLength(0.0)));
        assert_eq!(make_grid(1, 1.0), Err(LatticeError::BadGridSize(1)));
    }

    #[test]
    fn dft_of_constant_is_delta() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let f = ComplexField::from_fn(vec![g], 1, |_, _| Complex64::new(1.0, 0.0));
        let hat = f.forward_dft();
        assert!((hat.values()[0].re - 8.0_f64.sqrt()).abs() < 1e-12);
        for v in &hat.values()[1..] {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn round_trip_identity_up_to_256() {
        for n in [2usize, 8, 64, 256] {
            let g = make_grid(n, 3.0).unwrap();
            let vals = probe_values(17 + n as u64, n);
            let f = ComplexField::from_values(vec![g], 1, vals).unwrap();
            let back = f.forward_dft().inverse_dft();
            assert!(f.max_abs_diff(&back) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn parseval_against_direct_sum() {
        let g = make_grid(64, 5.0).unwrap();
        let vals = probe_values(3, 64);
        let f = ComplexField::from_values(vec![g], 1, vals).unwrap();
        let hat = f.forward_dft();
        let s1: f64 = f.values().iter().map(|v| v.norm_sqr()).sum();
        let s2: f64 = hat.values().iter().map(|v| v.norm_sqr()).sum();
        assert!((s1 - s2).abs() / s1 < 1e-10);
    }

    #[test]
    fn fft_matches_naive_dft() {
        let vals = probe_values(7, 32);
        let mut buf = vals.clone();
        fft_pow2(&mut buf, false);
        let direct = naive_dft(&vals, false);
        for (a, b) in buf.iter().zip(&direct) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn l2_norm_examples() {
        let g = make_grid(8, 2.0 * PI).unwrap();
        let zero = ComplexField::zeros(vec![g], 1);
        assert_eq!(zero.l2_norm(), 0.0);
        let one = ComplexField::from_fn(vec![g], 1, |_, _| Complex64::new(1.0, 0.0));
        assert!((one.l2_norm() - (2.0 * PI).sqrt()).abs() < 1e-13);
        // brute-force oracle on a random 2-D two-component field
        let g2 = make_grid(16, 3.0).unwrap();
        let vals = probe_values(11, 16 * 16 * 2);
        let f = ComplexField::from_values(vec![g2, g2], 2, vals.clone()).unwrap();
        let mut s = 0.0;
        for v in &vals {
            s += (v.re * v.re + v.im * v.im) * (3.0 / 16.0) * (3.0 / 16.0);
        }
        assert!((f.l2_norm() - s.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn axis_transform_respects_layout() {
        // delta along axis 1 becomes flat along axis 1 only
        let g = make_grid(4, 1.0).unwrap();
        let mut f = ComplexField::zeros(vec![g, g], 1);
        f.set(&[2, 0], 0, Complex64::new(1.0, 0.0));
        let hat = f.dft_axis(1, false).unwrap();
        for j in 0..4 {
            assert!((hat.get(&[2, j], 0).re - 0.5).abs() < 1e-14);
            assert!(hat.get(&[1, j], 0).norm() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn l2_norm_absolutely_homogeneous(re in -5.0f64..5.0, im in -5.0f64..5.0, seed in 0u64..1000) {
            let g = make_grid(16, 2.0).unwrap();
            let vals = probe_values(seed, 16);
            let f = ComplexField::from_values(vec![g], 1, vals).unwrap();
            let c = Complex64::new(re, im);
            let lhs = f.scaled(c).l2_norm();
            let rhs = c.norm() * f.l2_norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }

        #[test]
        fn round_trip_random_sizes(p in 1u32..8, seed in 0u64..1000) {
            let n = 2usize.pow(p);
            let g = make_grid(n, 1.0).unwrap();
            let vals = probe_values(seed, n);
            let f = ComplexField::from_values(vec![g], 1, vals).unwrap();
            prop_assert!(f.max_abs_diff(&f.forward_dft().inverse_dft()) < 1e-12);
        }
    }
}

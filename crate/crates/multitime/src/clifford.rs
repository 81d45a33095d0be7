//! Gamma-matrix representations of Clifford algebras for arbitrary
//! signature (q timelike, p spacelike).
//!
//! The construction is the canonical iterated tensor product of Pauli
//! generators; all matrix entries lie in {0, +-1, +-i}, so the
//! anticommutator relations hold exactly in floating point.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

type CMat = DMatrix<Complex64>;

#[derive(Debug, Error, PartialEq)]
pub enum CliffordError {
    #[error("signature requires q >= 1 and p >= 1, got (q={q}, p={p})")]
    BadSignature { q: usize, p: usize },
    #[error("total dimension {0} exceeds the supported range (p + q <= 8)")]
    UnsupportedDimension(usize),
    #[error("covector length {got} does not match signature dimension {expected}")]
    CovectorLength { got: usize, expected: usize },
}

/// Diagonal metric `diag(+1 x q, -1 x p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricSignature {
    pub q: usize,
    pub p: usize,
}

impl MetricSignature {
    pub fn new(q: usize, p: usize) -> Result<Self, CliffordError> {
        if q < 1 || p < 1 {
            return Err(CliffordError::BadSignature { q, p });
        }
        Ok(Self { q, p })
    }

    pub fn total_dim(&self) -> usize {
        self.q + self.p
    }

    /// Metric entry `g^{mu mu}`: +1 for timelike slots, -1 for spacelike.
    pub fn diag(&self, mu: usize) -> f64 {
        if mu < self.q {
            1.0
        } else {
            -1.0
        }
    }

    /// `g(k, k)` for a covector with all indices lowered equal to `k`.
    pub fn quadratic_form(&self, k: &[f64]) -> f64 {
        k.iter()
            .enumerate()
            .map(|(mu, v)| self.diag(mu) * v * v)
            .sum()
    }
}

/// A realization of the Clifford relations
/// `gamma^mu gamma^nu + gamma^nu gamma^mu = 2 g^{mu nu} I`.
#[derive(Debug, Clone)]
pub struct GammaSet {
    signature: MetricSignature,
    dim: usize,
    matrices: Vec<CMat>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli_x() -> CMat {
    CMat::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

fn pauli_y() -> CMat {
    CMat::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

fn pauli_z() -> CMat {
    CMat::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Pairwise-anticommuting Hermitian generators of the Euclidean Clifford
/// algebra in `2^n`-dimensional space: `e_{2j-1} = sz^(j-1) ox sx ox I...`,
/// `e_{2j} = sz^(j-1) ox sy ox I...`. Each squares to +I.
fn euclidean_generators(count: usize, pairs: usize) -> Vec<CMat> {
    let mut gens = Vec::with_capacity(count);
    for idx in 0..count {
        let j = idx / 2; // pair index
        let mut m = identity(1);
        for _ in 0..j {
            m = kron(&m, &pauli_z());
        }
        let middle = if idx % 2 == 0 { pauli_x() } else { pauli_y() };
        m = kron(&m, &middle);
        for _ in j + 1..pairs {
            m = kron(&m, &identity(2));
        }
        gens.push(m);
    }
    gens
}

/// Construct the canonical gamma set for the given signature: timelike
/// generators (squaring to +I) first, spacelike generators multiplied by i
/// (squaring to -I) after.
pub fn build_gamma_set(sig: MetricSignature) -> Result<GammaSet, CliffordError> {
    let d = sig.total_dim();
    if d > 8 {
        return Err(CliffordError::UnsupportedDimension(d));
    }
    let pairs = d.div_ceil(2);
    let gens = euclidean_generators(d, pairs);
    let dim = 1usize << pairs;
    let matrices: Vec<CMat> = gens
        .into_iter()
        .enumerate()
        .map(|(mu, e)| if mu < sig.q { e } else { e * c(0.0, 1.0) })
        .collect();
    Ok(GammaSet {
        signature: sig,
        dim,
        matrices,
    })
}

impl GammaSet {
    pub fn signature(&self) -> MetricSignature {
        self.signature
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn gamma(&self, mu: usize) -> &CMat {
        &self.matrices[mu]
    }

    /// Plane-wave symbol `gamma^mu k_mu` for a real covector.
    pub fn slash(&self, kvec: &[f64]) -> Result<CMat, CliffordError> {
        let d = self.signature.total_dim();
        if kvec.len() != d {
            return Err(CliffordError::CovectorLength {
                got: kvec.len(),
                expected: d,
            });
        }
        let mut m = CMat::zeros(self.dim, self.dim);
        for (mu, &k) in kvec.iter().enumerate() {
            m += &self.matrices[mu] * c(k, 0.0);
        }
        Ok(m)
    }
}

/// Result of checking the anticommutator relations of a gamma set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffordReport {
    /// Largest entrywise deviation of `{g^mu, g^nu} - 2 g^{mu nu} I` over all pairs.
    pub max_deviation: f64,
    /// Pair at which the maximum occurs.
    pub worst_pair: (usize, usize),
}

pub fn verify_clifford(gs: &GammaSet) -> CliffordReport {
    let d = gs.signature.total_dim();
    let mut max_deviation = 0.0;
    let mut worst_pair = (0, 0);
    for mu in 0..d {
        for nu in mu..d {
            let anti = gs.gamma(mu) * gs.gamma(nu) + gs.gamma(nu) * gs.gamma(mu);
            let expect = if mu == nu { 2.0 * gs.signature.diag(mu) } else { 0.0 };
            let dev = (anti - identity(gs.dim) * c(expect, 0.0)).map(|z| z.norm()).max();
            if dev > max_deviation {
                max_deviation = dev;
                worst_pair = (mu, nu);
            }
        }
    }
    CliffordReport {
        max_deviation,
        worst_pair,
    }
}

//! Matrix constructions and Dirichlet forms on the finite set `{1..n}`.
//!
//! The star of the module is the family `I_x = I + T_x`, where `T_x` is the
//! symmetric matrix of pairwise averages `(x_i + x_j)/(2n)` with vanishing
//! row and column sums. Restricted to the mean-zero hyperplane these are
//! contractions in every symmetric norm whenever `x` lies in `[0,2]^n`,
//! which is what drives the Leibniz inequality for centered vectors.
//! Alongside live the Laplacians (uniform, weighted, and a fixed 3-point
//! example), their Dirichlet forms, the Markovian unit contraction, and
//! operator norms restricted to the centered hyperplane.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{check_dims, sym_eigenvalues, RealVector, SquareMatrix};
use crate::norms::NormSpec;
use crate::probability::DiscreteMeasure;
use crate::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const KERNEL_TOL: f64 = 1e-12;
const MAX_EIGENVALUE_TOL: f64 = 1e-10;
const MIN_SPECTRAL_GAP: f64 = 1e-8;

/// Which Laplacian invariant failed, and by how much.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum LaplacianViolation {
    NotSymmetric { max_asymmetry: f64 },
    NegativeOffDiagonal { row: usize, col: usize, entry: f64 },
    OnesNotInKernel { residual: f64 },
    PositiveEigenvalue { max_eigenvalue: f64 },
    KernelTooLarge { second_eigenvalue: f64 },
}

impl fmt::Display for LaplacianViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaplacianViolation::NotSymmetric { max_asymmetry } => {
                write!(f, "asymmetry {max_asymmetry} exceeds {SYMMETRY_TOL}")
            }
            LaplacianViolation::NegativeOffDiagonal { row, col, entry } => {
                write!(
                    f,
                    "off-diagonal entry {entry} at ({row},{col}) is below -{OFF_DIAGONAL_TOL}"
                )
            }
            LaplacianViolation::OnesNotInKernel { residual } => {
                write!(
                    f,
                    "constant vector maps to residual {residual}, above {KERNEL_TOL}"
                )
            }
            LaplacianViolation::PositiveEigenvalue { max_eigenvalue } => {
                write!(
                    f,
                    "largest eigenvalue {max_eigenvalue} exceeds {MAX_EIGENVALUE_TOL}"
                )
            }
            LaplacianViolation::KernelTooLarge { second_eigenvalue } => {
                write!(
                    f,
                    "second-smallest |eigenvalue| {second_eigenvalue} is below {MIN_SPECTRAL_GAP}, kernel larger than the constants"
                )
            }
        }
    }
}

/// A validated Laplacian: symmetric, non-positive definite, nonnegative
/// off-diagonals, and kernel exactly the constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SquareMatrix", into = "SquareMatrix")]
pub struct Laplacian {
    matrix: SquareMatrix,
}

impl Laplacian {
    pub fn new(matrix: SquareMatrix) -> Result<Self> {
        if matrix.dim() < 2 {
            return Err(Error::DegenerateDimension {
                n: matrix.dim(),
                min: 2,
            });
        }
        Self::validate(&matrix).map_err(Error::Laplacian)?;
        Ok(Self { matrix })
    }

    /// Check the Laplacian invariants, reporting the first failure with its
    /// magnitude.
    pub fn validate(m: &SquareMatrix) -> core::result::Result<(), LaplacianViolation> {
        let n = m.dim();
        let asym = m.asymmetry();
        if asym > SYMMETRY_TOL {
            return Err(LaplacianViolation::NotSymmetric {
                max_asymmetry: asym,
            });
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && m.get(i, j) < -OFF_DIAGONAL_TOL {
                    return Err(LaplacianViolation::NegativeOffDiagonal {
                        row: i,
                        col: j,
                        entry: m.get(i, j),
                    });
                }
            }
        }
        let residual = (0..n).map(|i| m.row_sum(i).abs()).fold(0.0f64, f64::max);
        if residual > KERNEL_TOL {
            return Err(LaplacianViolation::OnesNotInKernel { residual });
        }
        let eigs = sym_eigenvalues(m);
        let max_eig = *eigs.last().expect("n >= 1");
        if max_eig > MAX_EIGENVALUE_TOL {
            return Err(LaplacianViolation::PositiveEigenvalue {
                max_eigenvalue: max_eig,
            });
        }
        let mut abs_eigs: Vec<f64> = eigs.iter().map(|e| e.abs()).collect();
        abs_eigs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        if n >= 2 && abs_eigs[1] <= MIN_SPECTRAL_GAP {
            return Err(LaplacianViolation::KernelTooLarge {
                second_eigenvalue: abs_eigs[1],
            });
        }
        Ok(())
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn apply(&self, f: &RealVector) -> Result<RealVector> {
        self.matrix.mul_vec(f)
    }
}

impl TryFrom<SquareMatrix> for Laplacian {
    type Error = Error;

    fn try_from(m: SquareMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<Laplacian> for SquareMatrix {
    fn from(l: Laplacian) -> SquareMatrix {
        l.matrix
    }
}

/// Orthogonal projection onto the constants: every entry `1/n`.
pub fn mean_projection(n: usize) -> Result<SquareMatrix> {
    if n == 0 {
        return Err(Error::DegenerateDimension { n, min: 1 });
    }
    SquareMatrix::new(n, vec![1.0 / n as f64; n * n])
}

/// Symmetric matrix of pairwise averages `(x_i + x_j)/(2n)` off the
/// diagonal, with the diagonal forced so all row and column sums vanish.
pub fn theta_matrix(x: &RealVector) -> SquareMatrix {
    let n = x.len();
    let scale = 1.0 / (2.0 * n as f64);
    let mut m = SquareMatrix::zeros(n).expect("n >= 1");
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i != j {
                let e = (x[i] + x[j]) * scale;
                m.set(i, j, e);
                diag -= e;
            }
        }
        m.set(i, i, diag);
    }
    m
}

/// `I + theta_matrix(x)`; fixes the constants and, for `x` in `[0,1]^n`, is
/// doubly stochastic.
pub fn i_matrix(x: &RealVector) -> SquareMatrix {
    let n = x.len();
    let mut m = theta_matrix(x);
    for i in 0..n {
        let d = m.get(i, i);
        m.set(i, i, d + 1.0);
    }
    m
}

/// `i_matrix(x)` with `x_i/n` subtracted from row `i`; its off-diagonal
/// part is skew-symmetric and for `x` in `[0,2]^n` its transpose is
/// substochastic.
pub fn l_matrix(x: &RealVector) -> SquareMatrix {
    let n = x.len();
    let mut m = i_matrix(x);
    for i in 0..n {
        let shift = x[i] / n as f64;
        for j in 0..n {
            let e = m.get(i, j);
            m.set(i, j, e - shift);
        }
    }
    m
}

/// Laplacian of the uniform measure, `P - I` with `P` the mean projection.
pub fn delta_uniform(n: usize) -> Result<Laplacian> {
    if n < 2 {
        return Err(Error::DegenerateDimension { n, min: 2 });
    }
    let mut m = mean_projection(n)?;
    for i in 0..n {
        let e = m.get(i, i);
        m.set(i, i, e - 1.0);
    }
    Laplacian::new(m)
}

/// Laplacian whose Dirichlet form is the variance of the weighted measure:
/// off-diagonals `mu_i * mu_j`, diagonal `-mu_i (1 - mu_i)`.
///
/// All weights must be strictly positive; a zero weight enlarges the kernel
/// past the constants and is rejected here rather than silently accepted.
pub fn delta_weighted(mu: &DiscreteMeasure) -> Result<Laplacian> {
    let n = mu.len();
    if n < 2 {
        return Err(Error::DegenerateDimension { n, min: 2 });
    }
    let w = mu.weights();
    for (i, &wi) in w.iter().enumerate() {
        if wi <= 0.0 {
            return Err(Error::BadWeight {
                index: i,
                weight: wi,
            });
        }
    }
    let m = SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            -w[i] * (1.0 - w[i])
        } else {
            w[i] * w[j]
        }
    })?;
    Laplacian::new(m)
}

/// The fixed 3-point Laplacian whose sup-norm seminorm is Leibniz but not
/// strongly Leibniz.
pub fn delta3() -> Laplacian {
    let m = SquareMatrix::from_rows(vec![
        vec![-2.0, 1.0, 1.0],
        vec![1.0, -1.0, 0.0],
        vec![1.0, 0.0, -1.0],
    ])
    .expect("3x3 literal");
    Laplacian::new(m).expect("fixed 3-point Laplacian is valid")
}

/// Half-scaled companion matrix of [`delta3`]: the product rule
/// `delta3(fg) = pi_matrix(f) g + pi_matrix(g) f` holds exactly.
pub fn pi_matrix(x: &RealVector) -> Result<SquareMatrix> {
    check_dims(3, x.len())?;
    let (a, b, c) = (x[0], x[1], x[2]);
    SquareMatrix::from_rows(vec![
        vec![-(2.0 * a + b + c) / 2.0, (a + b) / 2.0, (a + c) / 2.0],
        vec![(a + b) / 2.0, -(a + b) / 2.0, 0.0],
        vec![(a + c) / 2.0, 0.0, -(a + c) / 2.0],
    ])
}

/// Dirichlet form `-<u, delta v>` of a Laplacian.
pub fn dirichlet_eval(delta: &Laplacian, u: &RealVector, v: &RealVector) -> Result<f64> {
    check_dims(delta.dim(), u.len())?;
    let dv = delta.apply(v)?;
    Ok(-u.dot(&dv)?)
}

/// Entrywise clip to `[0,1]` (the Markovian unit contraction).
pub fn unit_contraction(f: &RealVector) -> RealVector {
    RealVector::from_raw(f.iter().map(|e| e.clamp(0.0, 1.0)).collect())
}

/// Residual of the product identity
/// `I_{f+1}(g - Eg) + I_{g+1}(f - Ef) = E(fg) - fg`
/// with the uniform-measure mean; vanishes identically.
pub fn product_identity_residual(f: &RealVector, g: &RealVector) -> Result<RealVector> {
    let n = f.len();
    check_dims(n, g.len())?;
    let ones = RealVector::ones(n)?;
    let if_mat = i_matrix(&f.add(&ones)?);
    let ig_mat = i_matrix(&g.add(&ones)?);
    let lhs = if_mat
        .mul_vec(&g.centered())?
        .add(&ig_mat.mul_vec(&f.centered())?)?;
    let fg = f.pointwise_mul(g)?;
    let rhs = fg.centered().scale(-1.0);
    lhs.sub(&rhs)
}

/// How to compute the operator norm on the centered hyperplane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OpNormMethod {
    /// Exact value by dual extreme-point enumeration; Ky Fan specs only.
    ExactPolyhedral,
    /// Maximum ratio over sampled centered vectors; a lower bound.
    MonteCarlo { trials: u64, seed: u64 },
}

/// Operator norm of `A` restricted to the hyperplane of mean-zero vectors,
/// in the given norm.
///
/// The exact method maximizes, over the extreme points `v` of the dual
/// ball, the distance of `A^T v` to the constants in the dual norm; the
/// one-dimensional convex minimization over the shift is solved by
/// golden-section on `[min(A^T v), max(A^T v)]`, which brackets the
/// minimizer because the dual norm grows in both directions outside the
/// entry range.
pub fn opnorm_on_centered(a: &SquareMatrix, spec: &NormSpec, method: OpNormMethod) -> Result<f64> {
    let n = a.dim();
    spec.validate_for_dim(n)?;
    match method {
        OpNormMethod::ExactPolyhedral => {
            let k = match spec {
                NormSpec::KyFan(k) => *k,
                _ => {
                    return Err(Error::UnsupportedSpec {
                        spec: spec.to_string(),
                        op: "opnorm exact-polyhedral",
                    })
                }
            };
            let points = crate::norms::kfan_dual_extreme_points(n, k)?;
            let at = a.transpose();
            let mut best = 0.0f64;
            for v in &points {
                let w = at.mul_slice(v.as_slice())?;
                let lo = w.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let objective = |lambda: f64| kfan_dual_shifted(&w, lambda, k);
                best = best.max(golden_min(objective, lo, hi));
            }
            Ok(best)
        }
        OpNormMethod::MonteCarlo { trials, seed } => {
            if trials == 0 {
                return Err(Error::ZeroTrials);
            }
            if n == 1 {
                // The mean-zero hyperplane is {0}; nothing to sample.
                return Ok(0.0);
            }
            let mut best = 0.0f64;
            for t in 0..trials {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
                let x = loop {
                    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let candidate = RealVector::from_raw(raw).centered();
                    if spec.eval(&candidate)? > 1e-9 {
                        break candidate;
                    }
                };
                let ratio = spec.eval(&a.mul_vec(&x)?)? / spec.eval(&x)?;
                best = best.max(ratio);
            }
            Ok(best)
        }
    }
}

/// Dual Ky Fan norm of `w - lambda * ones` without allocating.
fn kfan_dual_shifted(w: &[f64], lambda: f64, k: usize) -> f64 {
    let mut linf = 0.0f64;
    let mut l1 = 0.0f64;
    for &e in w {
        let d = (e - lambda).abs();
        linf = linf.max(d);
        l1 += d;
    }
    linf.max(l1 / k as f64)
}

/// Minimum of a convex function on `[a, b]` by golden-section search; the
/// bracket is shrunk below 1e-13 and the best sampled value returned.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    if b - a <= 1e-15 {
        return f(0.5 * (a + b));
    }
    let mut best = f(a).min(f(b));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    best = best.min(fc).min(fd);
    for _ in 0..256 {
        if b - a <= 1e-13 {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            best = best.min(fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            best = best.min(fd);
        }
    }
    best
}

//! Two first-order differential calculi on the matrix bimodule over the
//! diagonal algebra.
//!
//! In the Hilbert–Schmidt calculus the derivation is
//! `grad(f)_ij = (f_i - f_j) / sqrt(2n)` with the plain entrywise bimodule
//! action `(a A b)_ij = a_i A_ij b_j`; its adjoint `div` satisfies
//! `div(grad f) = f - Ef`, so seminorms of `div` recover norms of centered
//! vectors.
//!
//! The Cipriani–Sauvageot calculus instead sends `f` to the constant-row
//! element `cs_grad(f)_ij = f_i` and twists the left action so the map is
//! still a derivation; its inner product is induced by a Dirichlet form.
//! The two calculi assign the same divergence to three-sided products
//! `f (grad g) h`, which is what makes the counterexamples transferable
//! between them.

use alloc::string::ToString;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::linalg::{check_dims, RealVector, SquareMatrix};
use crate::norms::NormSpec;
use crate::operators::Laplacian;
use crate::{Error, Result};

/// Element of the matrix bimodule `M_n(R)` in the basis `e_i (x) e_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BimoduleElement {
    matrix: SquareMatrix,
}

impl BimoduleElement {
    pub fn new(matrix: SquareMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

fn two_n(n: usize) -> f64 {
    2.0 * n as f64
}

/// Hilbert–Schmidt derivation: `grad(f)_ij = (f_i - f_j)/sqrt(2n)`.
///
/// Skew-symmetric with zero diagonal; obeys the product rule
/// `grad(fg) = act(1, grad f, g) + act(f, grad g, 1)`.
pub fn grad(f: &RealVector) -> BimoduleElement {
    let n = f.len();
    let scale = 1.0 / libm::sqrt(two_n(n));
    let m = SquareMatrix::from_fn(n, |i, j| (f[i] - f[j]) * scale).expect("finite entries");
    BimoduleElement::new(m)
}

/// Adjoint of [`grad`] under the trace pairing:
/// `(div A)_i = (rowsum_i - colsum_i)/sqrt(2n)`.
///
/// The sign convention is fixed by `Tr(A^T grad f) = <div A, f>`, which is
/// the unique choice making `div(grad f) = f - Ef` (centering) rather than
/// its negative.
pub fn div(a: &BimoduleElement) -> RealVector {
    let n = a.dim();
    let m = a.matrix();
    let scale = 1.0 / libm::sqrt(two_n(n));
    RealVector::from_raw(
        (0..n)
            .map(|i| (m.row_sum(i) - m.col_sum(i)) * scale)
            .collect(),
    )
}

/// Plain bimodule action `(a A b)_ij = a_i A_ij b_j`.
pub fn act(a: &RealVector, elem: &BimoduleElement, b: &RealVector) -> Result<BimoduleElement> {
    let n = elem.dim();
    check_dims(n, a.len())?;
    check_dims(n, b.len())?;
    let m = SquareMatrix::from_fn(n, |i, j| a[i] * elem.matrix().get(i, j) * b[j])?;
    Ok(BimoduleElement::new(m))
}

/// Seminorm of a bimodule element: the norm of its divergence, equivalently
/// the maximum of `Tr(A^T grad f)` over the dual-ball of the spec.
pub fn partial_seminorm(a: &BimoduleElement, spec: &NormSpec) -> Result<f64> {
    if !spec.is_symmetric() {
        return Err(Error::UnsupportedSpec {
            spec: spec.to_string(),
            op: "partial_seminorm",
        });
    }
    spec.eval(&div(a))
}

/// Cipriani–Sauvageot derivation: constant rows, `cs_grad(f)_ij = f_i`.
pub fn cs_grad(f: &RealVector) -> BimoduleElement {
    let n = f.len();
    let m = SquareMatrix::from_fn(n, |i, _| f[i]).expect("finite entries");
    BimoduleElement::new(m)
}

/// Twisted left action `f . (b (x) c) = fb (x) c - f (x) bc`; entrywise
/// `f_i (A_ij - A_jj)`.
pub fn cs_act_left(f: &RealVector, a: &BimoduleElement) -> Result<BimoduleElement> {
    let n = a.dim();
    check_dims(n, f.len())?;
    let m = SquareMatrix::from_fn(n, |i, j| {
        f[i] * (a.matrix().get(i, j) - a.matrix().get(j, j))
    })?;
    Ok(BimoduleElement::new(m))
}

/// Right action `(b (x) c) . h`; entrywise `A_ij h_j`.
pub fn cs_act_right(a: &BimoduleElement, h: &RealVector) -> Result<BimoduleElement> {
    let n = a.dim();
    check_dims(n, h.len())?;
    let m = SquareMatrix::from_fn(n, |i, j| a.matrix().get(i, j) * h[j])?;
    Ok(BimoduleElement::new(m))
}

/// Adjoint of [`cs_grad`] for the uniform-measure Dirichlet form.
///
/// On a simple tensor `a (x) b` this is
/// `(1/2n) sum_j (a_i - a_j)(b_i + b_j)`; the linear extension below agrees
/// with `div` scaled by `1/sqrt(2n)` on zero-diagonal elements and
/// satisfies `cs_div(cs_grad f) = f - Ef`.
pub fn cs_div(a: &BimoduleElement) -> RealVector {
    let n = a.dim();
    let m = a.matrix();
    let tr = m.trace();
    let scale = 1.0 / two_n(n);
    RealVector::from_raw(
        (0..n)
            .map(|i| (n as f64 * m.get(i, i) + m.row_sum(i) - m.col_sum(i) - tr) * scale)
            .collect(),
    )
}

/// Inner product on the bimodule induced by a Dirichlet form, evaluated by
/// bilinear extension over the `n^2 x n^2` basis pairs
/// `(e_k (x) e_l, e_i (x) e_j)` with entrywise vector products collapsed
/// through Kronecker deltas.
pub fn cs_inner(a: &BimoduleElement, b: &BimoduleElement, delta: &Laplacian) -> Result<f64> {
    let n = a.dim();
    check_dims(n, b.dim())?;
    check_dims(n, delta.dim())?;
    // Energy of basis pairs: E(e_k, e_i) = -delta_ki.
    let energy = |k: usize, i: usize| -delta.matrix().get(k, i);
    let mut total = 0.0f64;
    for k in 0..n {
        for l in 0..n {
            let akl = a.matrix().get(k, l);
            if akl == 0.0 {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let bij = b.matrix().get(i, j);
                    if bij == 0.0 {
                        continue;
                    }
                    let mut s = 0.0;
                    if i == j && j == l {
                        s += energy(k, i);
                    }
                    if k == l && k == j {
                        s += energy(k, i);
                    }
                    if l == j && k == i {
                        s -= energy(l, k);
                    }
                    if s != 0.0 {
                        total += akl * bij * 0.5 * s;
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Hilbert seminorm `sqrt(cs_inner(A, A))`, with negative roundoff clamped
/// to zero. Values far below zero signal a genuine bug and are rejected.
pub fn cs_norm(a: &BimoduleElement, delta: &Laplacian) -> Result<f64> {
    let inner = cs_inner(a, a, delta)?;
    if inner < -1e-6 {
        return Err(Error::IndefiniteInner { value: inner });
    }
    Ok(libm::sqrt(inner.max(0.0)))
}

/// Carré-du-champ operator of a Laplacian,
/// `Gamma(a, c) = (delta(ac) - a delta(c) - c delta(a)) / 2`.
///
/// `Gamma(a, a)` is entrywise nonnegative, and for the uniform Laplacian
/// the mean of `Gamma(a, c)` is the uniform covariance
/// `Cov(a, c) = E(ac) - Ea Ec`.
pub fn carre_du_champ(a: &RealVector, c: &RealVector, delta: &Laplacian) -> Result<RealVector> {
    let n = delta.dim();
    check_dims(n, a.len())?;
    check_dims(n, c.len())?;
    let dac = delta.apply(&a.pointwise_mul(c)?)?;
    let da = delta.apply(a)?;
    let dc = delta.apply(c)?;
    let entries: Vec<f64> = (0..n)
        .map(|i| 0.5 * (dac[i] - a[i] * dc[i] - c[i] * da[i]))
        .collect();
    Ok(RealVector::from_raw(entries))
}

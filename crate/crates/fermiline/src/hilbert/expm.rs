//! Matrix exponentials: dense Padé scaling-and-squaring, plus a Krylov
//! (Arnoldi) action for applying `exp(τA)` to a vector without forming it.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::sparse::SparseOperator;
use crate::{Error, Result};

/// [13/13] Padé numerator coefficients.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Scaling threshold for the [13/13] approximant.
const THETA13: f64 = 5.371_920_351_148_152;

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.ncols())
        .map(|c| m.column(c).iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(M)` for a dense complex square matrix (Padé-13 with scaling and
/// squaring).
pub fn dense_expm(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "expm needs a square matrix");
    if n == 0 {
        return m.clone();
    }
    let norm = one_norm(m);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let a = m / Complex64::new(2f64.powi(s as i32), 0.0);
    let id = DMatrix::<Complex64>::identity(n, n);

    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let b = |i: usize| Complex64::new(PADE13[i], 0.0);

    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9))
        + &a6 * b(7)
        + &a4 * b(5)
        + &a2 * b(3)
        + &id * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8))
        + &a6 * b(6)
        + &a4 * b(4)
        + &a2 * b(2)
        + &id * b(0);

    let denom = &v - &u;
    let numer = &v + &u;
    let mut r = denom
        .lu()
        .solve(&numer)
        .expect("Padé denominator is singular; operator entries are likely non-finite");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// `exp(scale·A)·v` via Arnoldi projection with substepping.
pub(crate) fn krylov_expm_apply(
    a: &SparseOperator,
    scale: Complex64,
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    let dim = a.dim();
    if dim <= 64 {
        let e = dense_expm(&(a.to_dense() * scale));
        let x = DVector::from_column_slice(v);
        return Ok((e * x).iter().copied().collect());
    }
    let growth = a.norm_inf() * scale.norm();
    let mut n_sub = ((growth / 8.0).ceil() as usize).clamp(1, 1 << 20);
    for _attempt in 0..4 {
        match propagate_substeps(a, scale, v, n_sub) {
            Ok(out) => return Ok(out),
            Err(NotConverged) => n_sub *= 2,
        }
    }
    Err(Error::Numerical(format!(
        "Krylov exponential did not converge after refining to {n_sub} substeps"
    )))
}

struct NotConverged;

fn propagate_substeps(
    a: &SparseOperator,
    scale: Complex64,
    v: &[Complex64],
    n_sub: usize,
) -> std::result::Result<Vec<Complex64>, NotConverged> {
    let tau = scale / n_sub as f64;
    let mut w = v.to_vec();
    for _ in 0..n_sub {
        w = arnoldi_step(a, tau, &w)?;
    }
    Ok(w)
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// One `exp(τA)w` application from an incrementally grown Arnoldi basis.
/// Convergence is judged by the Cauchy difference of the projected solution
/// at increasing subspace sizes.
fn arnoldi_step(
    a: &SparseOperator,
    tau: Complex64,
    w: &[Complex64],
) -> std::result::Result<Vec<Complex64>, NotConverged> {
    let dim = a.dim();
    let beta = vec_norm(w);
    if beta < 1e-300 {
        return Ok(w.to_vec());
    }
    let m_max = dim.min(48);
    let checkpoints = [8usize, 12, 16, 24, 32, 40, 48];
    let tol = 1e-13;

    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m_max + 1);
    basis.push(w.iter().map(|x| x / beta).collect());
    let mut h = DMatrix::<Complex64>::zeros(m_max + 1, m_max);

    let mut y_prev: Option<DVector<Complex64>> = None;
    let mut m_used = 0;
    for j in 0..m_max {
        let mut u = a.apply_slice(&basis[j]);
        // Modified Gram–Schmidt with one reorthogonalization pass.
        for _ in 0..2 {
            for (i, q) in basis.iter().enumerate() {
                let proj: Complex64 = q.iter().zip(&u).map(|(qi, ui)| qi.conj() * ui).sum();
                h[(i, j)] += proj;
                for (ui, qi) in u.iter_mut().zip(q) {
                    *ui -= proj * qi;
                }
            }
        }
        let hnext = vec_norm(&u);
        h[(j + 1, j)] = Complex64::new(hnext, 0.0);
        m_used = j + 1;
        let breakdown = hnext < 1e-14 * (1.0 + h.view((0, 0), (j + 2, j + 1)).norm());
        if breakdown || checkpoints.contains(&m_used) || m_used == m_max {
            let hm = h.view((0, 0), (m_used, m_used)).into_owned() * tau;
            let em = dense_expm(&hm);
            let y = em.column(0).into_owned();
            if breakdown {
                return Ok(assemble(&basis, &y, beta, m_used));
            }
            if let Some(prev) = &y_prev {
                let mut diff = 0.0;
                for i in 0..m_used {
                    let p = if i < prev.len() { prev[i] } else { Complex64::ZERO };
                    diff += (y[i] - p).norm_sqr();
                }
                if diff.sqrt() <= tol * y.norm().max(1.0) {
                    return Ok(assemble(&basis, &y, beta, m_used));
                }
            }
            y_prev = Some(y);
        }
        basis.push(u.iter().map(|x| x / hnext).collect());
    }
    // Exhausted the basis: exact if the space itself was exhausted.
    if m_used == dim {
        let hm = h.view((0, 0), (m_used, m_used)).into_owned() * tau;
        let em = dense_expm(&hm);
        let y = em.column(0).into_owned();
        return Ok(assemble(&basis, &y, beta, m_used));
    }
    Err(NotConverged)
}

fn assemble(basis: &[Vec<Complex64>], y: &DVector<Complex64>, beta: f64, m: usize) -> Vec<Complex64> {
    let dim = basis[0].len();
    let mut out = vec![Complex64::ZERO; dim];
    for (i, q) in basis.iter().take(m).enumerate() {
        let c = y[i] * beta;
        for (o, qi) in out.iter_mut().zip(q) {
            *o += c * qi;
        }
    }
    out
}

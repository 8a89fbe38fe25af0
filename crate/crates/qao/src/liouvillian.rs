//! Full superoperator of the master equation, its kernel, and time
//! integration.
//!
//! Density matrices are column-stacked: vec(ρ) has entry ρ_(row,col) at
//! index col·d + row, so vec(AXB) = (Bᵀ ⊗ A) vec(X). The stationary state
//! is extracted as the smallest right singular vector of the (row
//! equilibrated) superoperator; a singular-value factorization is robust
//! to the Liouvillian's non-normality and cheap at d² ≤ 3600.

use ndarray::linalg::kron;
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, SVD, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{CMatrix, DensityMatrix, DensityTolerances, FockOperator, FockSpace};
use crate::model::{channels, hamiltonian, HardParams};

type CVector = Array1<Complex64>;

/// d²×d² matrix acting on column-stacked density matrices.
#[derive(Debug, Clone)]
pub struct Superoperator {
    space: FockSpace,
    matrix: CMatrix,
}

/// Stationary state with solver diagnostics.
#[derive(Debug, Clone)]
pub struct SteadyStateResult {
    pub rho: DensityMatrix,
    pub populations: Vec<f64>,
    /// ‖L·vec(ρ)‖₂ against the unscaled superoperator.
    pub residual: f64,
    /// Ratio of the two smallest singular values; large means the kernel
    /// direction is unambiguous.
    pub kernel_gap: f64,
    pub cutoff_used: usize,
}

pub fn vectorize(op: &FockOperator) -> CVector {
    let d = op.space().dim();
    let mut v = CVector::zeros(d * d);
    for col in 0..d {
        for row in 0..d {
            v[col * d + row] = op.entries()[(row, col)];
        }
    }
    v
}

pub fn unvectorize(space: FockSpace, v: &CVector) -> Result<FockOperator> {
    let d = space.dim();
    if v.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            got: v.len(),
        });
    }
    let mut m = CMatrix::zeros((d, d));
    for col in 0..d {
        for row in 0..d {
            m[(row, col)] = v[col * d + row];
        }
    }
    FockOperator::new(space, m)
}

impl Superoperator {
    /// Assemble −i(I⊗H − Hᵀ⊗I) + Σⱼ [2 conj(Rⱼ)⊗Rⱼ − I⊗(Rⱼ†Rⱼ) − (Rⱼ†Rⱼ)ᵀ⊗I].
    pub fn build(h: &FockOperator, channel_ops: &[FockOperator]) -> Result<Self> {
        let space = h.space();
        let d = space.dim();
        let eye = CMatrix::eye(d);
        let ht = h.entries().t().to_owned();
        let mut m =
            (kron(&eye, h.entries()) - kron(&ht, &eye)).mapv(|z| z * Complex64::new(0.0, -1.0));
        for r in channel_ops {
            if r.space() != space {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: r.space().dim(),
                });
            }
            let rc = r.entries().mapv(|z| z.conj());
            let rdr = r.adjoint().mul(r)?.entries().to_owned();
            let rdrt = rdr.t().to_owned();
            m = m + kron(&rc, r.entries()).mapv(|z| z * 2.0) - kron(&eye, &rdr) - kron(&rdrt, &eye);
        }
        Ok(Self { space, matrix: m })
    }

    pub fn for_model(p: &HardParams, space: FockSpace) -> Result<Self> {
        Self::build(&hamiltonian(p, space), &channels(p, space))
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// dρ/dt for a given operator.
    pub fn apply(&self, op: &FockOperator) -> Result<FockOperator> {
        if op.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                got: op.space().dim(),
            });
        }
        let v = self.matrix.dot(&vectorize(op));
        unvectorize(self.space, &v)
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for row in self.matrix.rows() {
            let s: f64 = row.iter().map(|z| z.norm()).sum();
            best = best.max(s);
        }
        best
    }
}

/// Kernel direction of the superoperator, Hermitized and trace-normalized.
///
/// Rows are equilibrated to unit max modulus before the factorization;
/// this leaves the kernel unchanged and keeps the smallest singular
/// vector accurate when channel rates span many orders of magnitude.
pub fn steady_state(l: &Superoperator) -> Result<SteadyStateResult> {
    let d = l.space.dim();
    let n = d * d;

    let mut scaled = l.matrix.clone();
    for mut row in scaled.rows_mut() {
        let m = row.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        if m > 0.0 {
            let inv = Complex64::new(1.0 / m, 0.0);
            row.mapv_inplace(|z| z * inv);
        }
    }

    let (_, s, vt) = scaled
        .svd(false, true)
        .map_err(|e| Error::Backend(e.to_string()))?;
    let vt = vt.expect("requested right singular vectors");
    let smallest = s[n - 1];
    let next = s[n - 2];
    // singular values below the numerical noise floor are all "zero";
    // comparing two of them directly would produce a meaningless ratio
    let floor = s[0] * f64::EPSILON * n as f64;
    let gap = next.max(floor) / smallest.max(floor);
    if gap < 1e3 {
        return Err(Error::DegenerateKernel { smallest, next });
    }

    // kernel direction = last column of V = conjugate of the last row of V^H
    let v: CVector = vt.row(n - 1).mapv(|z| z.conj());
    let x = unvectorize(l.space, &v)?;
    let herm = (x.entries() + &x.entries().t().mapv(|z| z.conj())).mapv(|z| z * 0.5);
    let trace: Complex64 = herm.diag().sum();
    if trace.norm() < 1e-12 * (d as f64) {
        return Err(Error::DegenerateKernel { smallest, next });
    }
    let inv_tr = Complex64::new(1.0 / trace.re, 0.0);
    let herm = herm.mapv(|z| z * inv_tr);

    // clip tiny negative eigenvalues, reject anything worse
    let tols = DensityTolerances::default();
    let (vals, vecs) = herm
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Backend(e.to_string()))?;
    let min_eig = vals.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eig < -tols.psd_tol {
        return Err(Error::NonPositive {
            min_eigenvalue: min_eig,
        });
    }
    let clipped: Vec<f64> = vals.iter().map(|&e| e.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    let mut rho_m = CMatrix::zeros((d, d));
    for (k, &lam) in clipped.iter().enumerate() {
        if lam == 0.0 {
            continue;
        }
        let col = vecs.column(k);
        let w = lam / total;
        for i in 0..d {
            for j in 0..d {
                rho_m[(i, j)] += col[i] * col[j].conj() * w;
            }
        }
    }

    let rho_op = FockOperator::new(l.space, rho_m)?;
    let residual = l
        .matrix
        .dot(&vectorize(&rho_op))
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let populations: Vec<f64> = rho_op.entries().diag().iter().map(|z| z.re).collect();
    let rho = DensityMatrix::new(rho_op, tols)?;
    Ok(SteadyStateResult {
        rho,
        populations,
        residual,
        kernel_gap: gap,
        cutoff_used: d,
    })
}

/// Stationary state with the cutoff grown until the population tail is
/// negligible (ρ_{d−3} < 1e−12) and the low-lying populations are stable
/// under further growth.
pub fn steady_state_adaptive(p: &HardParams, start: Option<usize>) -> Result<SteadyStateResult> {
    const MAX_DIM: usize = 60;
    const TAIL_TOL: f64 = 1e-12;
    const STABILITY_TOL: f64 = 1e-9;

    let expected = expected_excitation(p);
    let mut dim = start.unwrap_or(0).max(10).max(3 * expected.ceil() as usize);
    let mut previous: Option<SteadyStateResult> = None;
    loop {
        let space = FockSpace::new(dim)?;
        let result = steady_state(&Superoperator::for_model(p, space)?)?;
        let tail = result.populations[dim - 3].abs();
        if tail < TAIL_TOL {
            if let Some(prev) = &previous {
                let drift = (0..6.min(prev.populations.len()))
                    .map(|n| (result.populations[n] - prev.populations[n]).abs())
                    .fold(0.0f64, f64::max);
                if drift <= STABILITY_TOL {
                    return Ok(result);
                }
            }
            previous = Some(result);
        } else {
            previous = None;
        }
        dim += 5;
        if dim > MAX_DIM {
            return Err(Error::CutoffExhausted { max: MAX_DIM });
        }
    }
}

fn expected_excitation(p: &HardParams) -> f64 {
    // scale of the classical excited amplitude |z|^2
    let disc = p.eps2 * p.eps2 - 4.0 * p.eps1 * p.c;
    if disc >= 0.0 {
        (p.eps2 + disc.sqrt()) / (2.0 * p.c)
    } else {
        p.eps2 / p.c
    }
}

/// Fixed-step RK4 integration of dρ/dt = Lρ.
///
/// The state is symmetrized after every step; the trace functional is in
/// the left kernel of L, so the trace is conserved to roundoff.
pub fn evolve(
    l: &Superoperator,
    rho0: &DensityMatrix,
    t_final: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    if t_final < 0.0 || dt <= 0.0 {
        return Err(Error::InvalidParameter(
            "t_final must be >= 0 and dt > 0".into(),
        ));
    }
    let norm = l.inf_norm();
    let limit = if norm > 0.0 {
        0.1 / norm
    } else {
        f64::INFINITY
    };
    if dt > limit {
        return Err(Error::StepTooLarge { dt, limit });
    }
    if t_final == 0.0 {
        return Ok(rho0.clone());
    }
    let d = l.space.dim();
    let steps = (t_final / dt).ceil() as usize;
    let h = t_final / steps as f64;
    let mut v = vectorize(rho0.operator());
    for _ in 0..steps {
        let k1 = l.matrix.dot(&v);
        let k2 = l.matrix.dot(&(&v + &k1.mapv(|z| z * (h / 2.0))));
        let k3 = l.matrix.dot(&(&v + &k2.mapv(|z| z * (h / 2.0))));
        let k4 = l.matrix.dot(&(&v + &k3.mapv(|z| z * h)));
        v = &v + &(k1 + k2.mapv(|z| z * 2.0) + k3.mapv(|z| z * 2.0) + k4).mapv(|z| z * (h / 6.0));
        // enforce Hermiticity in place on the stacked vector
        for col in 0..d {
            for row in 0..col {
                let ij = col * d + row;
                let ji = row * d + col;
                let avg = (v[ij] + v[ji].conj()) * 0.5;
                v[ij] = avg;
                v[ji] = avg.conj();
            }
            let ii = col * d + col;
            v[ii] = Complex64::new(v[ii].re, 0.0);
        }
    }
    let op = unvectorize(l.space, &v)?;
    DensityMatrix::new(op, rho0.tolerances())
}

/// Restriction of the full superoperator to the population sector:
/// the d×d real matrix M with dρₙ/dt = Σₘ Mₙₘ ρₘ, extracted by applying
/// the superoperator to each basis matrix |m⟩⟨m|.
pub fn diagonal_generator(p: &HardParams, space: FockSpace) -> Result<Array2<f64>> {
    let l = Superoperator::for_model(p, space)?;
    let d = space.dim();
    let mut m = Array2::<f64>::zeros((d, d));
    for col in 0..d {
        let basis = FockOperator::number_state(space, col)?;
        let out = l.apply(&basis)?;
        for row in 0..d {
            m[(row, col)] = out.entries()[(row, row)].re;
        }
    }
    Ok(m)
}

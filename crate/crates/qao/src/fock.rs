//! Truncated Fock-space linear algebra.
//!
//! All operators live on the span of the number states |0⟩…|d−1⟩ and are
//! stored as dense complex matrices; relevant cutoffs stay below d ≈ 60,
//! where dense factorizations on the d²-dimensional superoperators are
//! cheap. Operators are immutable after construction and safe to share
//! across threads.

use ndarray::Array2;
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = Array2<Complex64>;

/// Truncated Fock space retaining the number states |0⟩…|d−1⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    /// The model contains a³, which annihilates everything below |3⟩;
    /// spaces smaller than 4 are degenerate.
    pub const MIN_DIM: usize = 4;

    pub fn new(dim: usize) -> Result<Self> {
        if dim < Self::MIN_DIM {
            return Err(Error::InvalidParameter(format!(
                "Fock space dimension {dim} below minimum {}",
                Self::MIN_DIM
            )));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Dense operator on a truncated Fock space, indexed by Fock number.
#[derive(Debug, Clone)]
pub struct FockOperator {
    space: FockSpace,
    entries: CMatrix,
}

impl FockOperator {
    pub fn new(space: FockSpace, entries: CMatrix) -> Result<Self> {
        let d = space.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: entries.nrows(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidParameter(
                "operator entries must be finite".into(),
            ));
        }
        Ok(Self { space, entries })
    }

    pub fn zero(space: FockSpace) -> Self {
        let d = space.dim();
        Self {
            space,
            entries: CMatrix::zeros((d, d)),
        }
    }

    pub fn identity(space: FockSpace) -> Self {
        let d = space.dim();
        Self {
            space,
            entries: CMatrix::eye(d),
        }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space,
            entries: self.entries.t().mapv(|z| z.conj()),
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            space: self.space,
            entries: self.entries.mapv(|z| z * factor),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_space(rhs)?;
        Ok(Self {
            space: self.space,
            entries: self.entries.dot(&rhs.entries),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_space(rhs)?;
        Ok(Self {
            space: self.space,
            entries: &self.entries + &rhs.entries,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_space(rhs)?;
        Ok(Self {
            space: self.space,
            entries: &self.entries - &rhs.entries,
        })
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diag().sum()
    }

    /// Largest entry-wise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.space.dim();
        let mut defect = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let delta = (self.entries[(i, j)] - self.entries[(j, i)].conj()).norm();
                defect = defect.max(delta);
            }
        }
        defect
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_space(&self, rhs: &Self) -> Result<()> {
        if self.space != rhs.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                got: rhs.space.dim(),
            });
        }
        Ok(())
    }

    /// Projector |n⟩⟨n|.
    pub fn number_state(space: FockSpace, n: usize) -> Result<Self> {
        if n >= space.dim() {
            return Err(Error::InvalidParameter(format!(
                "state index {n} outside space of dimension {}",
                space.dim()
            )));
        }
        let mut op = Self::zero(space);
        op.entries[(n, n)] = Complex64::new(1.0, 0.0);
        Ok(op)
    }
}

/// Annihilation operator: ⟨n−1|a|n⟩ = √n.
pub fn annihilation(space: FockSpace) -> FockOperator {
    let d = space.dim();
    let mut m = CMatrix::zeros((d, d));
    for n in 1..d {
        m[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    FockOperator { space, entries: m }
}

/// Creation operator, the adjoint of [`annihilation`].
pub fn creation(space: FockSpace) -> FockOperator {
    annihilation(space).adjoint()
}

/// Number operator n̂ = diag(0, 1, …, d−1).
pub fn number(space: FockSpace) -> FockOperator {
    let d = space.dim();
    let mut m = CMatrix::zeros((d, d));
    for n in 0..d {
        m[(n, n)] = Complex64::new(n as f64, 0.0);
    }
    FockOperator { space, entries: m }
}

/// Dissipative channel contribution 2RρR† − R†Rρ − ρR†R.
///
/// This is the expansion of [Rρ, R†] + [R, ρR†]; note the factor 2 on the
/// sandwich term relative to the more common ½-anticommutator convention.
pub fn dissipator(channel: &FockOperator, rho: &FockOperator) -> Result<FockOperator> {
    channel.check_space(rho)?;
    let r = &channel.entries;
    let rd = channel.adjoint().entries;
    let rdr = rd.dot(r);
    let p = &rho.entries;
    let out = r.dot(p).dot(&rd).mapv(|z| z * 2.0) - rdr.dot(p) - p.dot(&rdr);
    Ok(FockOperator {
        space: channel.space,
        entries: out,
    })
}

/// Validity tolerances for a density matrix.
#[derive(Debug, Clone, Copy)]
pub struct DensityTolerances {
    pub herm_tol: f64,
    pub trace_tol: f64,
    pub psd_tol: f64,
}

impl Default for DensityTolerances {
    fn default() -> Self {
        // double-precision kernel solves on systems of dimension <= 3600
        Self {
            herm_tol: 1e-10,
            trace_tol: 1e-10,
            psd_tol: 1e-8,
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    op: FockOperator,
    tolerances: DensityTolerances,
}

impl DensityMatrix {
    pub fn new(op: FockOperator, tolerances: DensityTolerances) -> Result<Self> {
        let defect = op.hermiticity_defect();
        if defect > tolerances.herm_tol {
            return Err(Error::InvalidParameter(format!(
                "Hermiticity defect {defect:.3e} exceeds tolerance {:.3e}",
                tolerances.herm_tol
            )));
        }
        let tr = op.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tolerances.trace_tol {
            return Err(Error::InvalidParameter(format!(
                "trace {tr} deviates from 1 beyond tolerance"
            )));
        }
        let min_eig = min_eigenvalue_hermitian_part(&op)?;
        if min_eig < -tolerances.psd_tol {
            return Err(Error::NonPositive {
                min_eigenvalue: min_eig,
            });
        }
        Ok(Self { op, tolerances })
    }

    pub fn pure_state(space: FockSpace, n: usize) -> Result<Self> {
        Self::new(
            FockOperator::number_state(space, n)?,
            DensityTolerances::default(),
        )
    }

    pub fn operator(&self) -> &FockOperator {
        &self.op
    }

    pub fn tolerances(&self) -> DensityTolerances {
        self.tolerances
    }

    /// Real parts of the diagonal in the number basis.
    pub fn populations(&self) -> Vec<f64> {
        self.op.entries.diag().iter().map(|z| z.re).collect()
    }
}

/// Smallest eigenvalue of (X + X†)/2.
pub fn min_eigenvalue_hermitian_part(op: &FockOperator) -> Result<f64> {
    let herm = (&op.entries + &op.entries.t().mapv(|z| z.conj())).mapv(|z| z * 0.5);
    let (eigs, _) = herm
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Backend(e.to_string()))?;
    Ok(eigs.iter().copied().fold(f64::INFINITY, f64::min))
}

//! Float backend: dense complex double-precision matrices.
//!
//! Every judgment call is concentrated in [`ToleranceConfig`]: rank is the
//! number of singular values above a relative cutoff, equality is a
//! Frobenius-norm comparison, and the Moore-Penrose inverse inverts only
//! the singular values the rank decision kept. Rank decisions additionally
//! report whether any singular value fell inside a guard band around the
//! cutoff; such marginal decisions propagate outward so callers can report
//! a verdict as inconclusive instead of trusting a coin-flip rank.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::ring::{Decision, RingError, StarRing};

pub type C64 = Complex<f64>;

/// Width of the guard band around the rank cutoff, as a multiplicative
/// factor: a singular value within `[cutoff/1e3, cutoff*1e3]` makes the
/// decision marginal.
pub const NEAR_CUTOFF_MARGIN: f64 = 1e3;

/// Refusal gap for spectral rounding: an eigenvalue within this distance
/// of 1/2 means the input is not a perturbation of any projection and
/// rounding would be a guess.
pub const EIGENVALUE_GAP: f64 = 0.1;

/// Tolerance policy for the float backend.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceConfig {
    /// Singular values at or below `factor * max(n, m) * sigma_max` are
    /// treated as zero.
    pub rank_cutoff_factor: f64,
    /// Relative part of the equality test.
    pub equality_rel_tol: f64,
    /// Absolute part of the equality test.
    pub equality_abs_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            rank_cutoff_factor: 1e-12,
            equality_rel_tol: 1e-10,
            equality_abs_tol: 1e-12,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<(), RingError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(self.rank_cutoff_factor) && ok(self.equality_rel_tol) && ok(self.equality_abs_tol) {
            Ok(())
        } else {
            Err(RingError::Parse("tolerances must be finite and positive".into()))
        }
    }

    pub fn with_equality_rel_tol(mut self, rel: f64) -> Self {
        self.equality_rel_tol = rel;
        self
    }
}

/// Rank of a spectrum plus whether the decision was marginal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: usize,
    pub near_cutoff: bool,
}

/// Metadata from an MP computation: the rank that was used and whether
/// the cutoff decision was marginal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MpInfo {
    pub rank: usize,
    pub near_cutoff: bool,
    pub cutoff: f64,
}

/// Dense complex matrix carrying the tolerance policy it is judged by.
///
/// Like the exact backend, the type serves both as a square ring element
/// and as rectangular basis storage for the subspace oracle.
#[derive(Clone, Debug)]
pub struct FloatMatrix {
    data: DMatrix<C64>,
    tol: ToleranceConfig,
}

struct SvdParts {
    u: DMatrix<C64>,
    sigma: Vec<f64>,
    v_t: DMatrix<C64>,
}

/// Thin singular value decomposition `M = U diag(sigma) V^*` by one-sided
/// Jacobi rotations on columns, with `sigma` sorted descending.
///
/// The backend carries its own SVD because the general-purpose one in the
/// matrix crate returns factors that do not reconstruct the input for some
/// rank-deficient complex matrices, and products of projections are
/// rank-deficient by construction. One-sided Jacobi is deterministic
/// (fixed cyclic sweep order), resolves small singular values with high
/// relative accuracy, and is comfortably fast at the matrix sizes the
/// tool works with.
///
/// Columns that converge to zero get a zero column in `U` and a zero
/// singular value; every consumer either skips them (rank, column space)
/// or multiplies them by a zero inverted singular value (MP).
fn jacobi_svd(m: &DMatrix<C64>) -> Result<SvdParts, RingError> {
    let (rows, cols) = m.shape();
    if rows < cols {
        // Factor the adjoint, which is tall, and swap the roles of U, V.
        let parts = jacobi_svd(&m.adjoint())?;
        return Ok(SvdParts {
            u: parts.v_t.adjoint(),
            sigma: parts.sigma,
            v_t: parts.u.adjoint(),
        });
    }
    if cols == 0 {
        return Ok(SvdParts {
            u: DMatrix::zeros(rows, 0),
            sigma: Vec::new(),
            v_t: DMatrix::zeros(0, cols),
        });
    }

    let mut w = m.clone();
    let mut v = DMatrix::<C64>::identity(cols, cols);
    // Classical relative convergence criterion for one-sided Jacobi.
    let conv_tol = (rows as f64).sqrt() * f64::EPSILON;
    let mut sweeps = 0usize;
    loop {
        // A truly dependent column decays by a factor of roughly machine
        // epsilon per sweep; flush it to an exact zero once it is many
        // orders below the dominant column, both to terminate that decay
        // and because subnormal column data poisons the phase and ratio
        // arithmetic below.
        let max_norm = (0..cols).map(|j| w.column(j).norm()).fold(0.0f64, f64::max);
        if max_norm == 0.0 {
            break;
        }
        let flush = max_norm * 1e-250;
        for j in 0..cols {
            if w.column(j).norm() <= flush {
                for r in 0..rows {
                    w[(r, j)] = C64::new(0.0, 0.0);
                }
            }
        }
        let mut rotated = false;
        sweeps += 1;
        if sweeps > 64 {
            return Err(RingError::DecompositionFailed(
                "Jacobi SVD did not converge".into(),
            ));
        }
        for i in 0..cols {
            for j in (i + 1)..cols {
                let ni = w.column(i).norm();
                let nj = w.column(j).norm();
                if ni == 0.0 || nj == 0.0 {
                    continue;
                }
                let mut gamma = C64::new(0.0, 0.0);
                for r in 0..rows {
                    gamma += w[(r, i)].conj() * w[(r, j)];
                }
                // Work with the normalized cross term; dividing by the
                // norms one at a time keeps every intermediate away from
                // underflow and overflow.
                let gamma_hat = gamma / C64::new(ni, 0.0) / C64::new(nj, 0.0);
                let gnorm_hat = gamma_hat.norm();
                if gnorm_hat <= conv_tol {
                    continue;
                }
                rotated = true;
                // Absorb the phase of the cross term into column j, then
                // the rotation zeroing the 2x2 Gram off-diagonal is real.
                let phase_conj = (gamma_hat / C64::new(gnorm_hat, 0.0)).conj();
                let ratio = nj / ni;
                let zeta = (ratio - 1.0 / ratio) / (2.0 * gnorm_hat);
                let t = if zeta == 0.0 {
                    1.0
                } else if zeta.abs() > 1e150 {
                    // The exact formula would square zeta into infinity;
                    // in this regime the stable root is 1/(2 zeta).
                    1.0 / (2.0 * zeta)
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..rows {
                    let wi = w[(r, i)];
                    let wj = w[(r, j)] * phase_conj;
                    w[(r, i)] = wi * c - wj * s;
                    w[(r, j)] = wi * s + wj * c;
                }
                for r in 0..cols {
                    let vi = v[(r, i)];
                    let vj = v[(r, j)] * phase_conj;
                    v[(r, i)] = vi * c - vj * s;
                    v[(r, j)] = vi * s + vj * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = (0..cols).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| {
        norms[j]
            .partial_cmp(&norms[i])
            .expect("column norms are finite")
            .then(i.cmp(&j))
    });
    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let u = DMatrix::from_fn(rows, cols, |r, c| {
        let j = order[c];
        if norms[j] > 0.0 {
            w[(r, j)] / C64::new(norms[j], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let v_sorted = DMatrix::from_fn(cols, cols, |r, c| v[(r, order[c])]);
    Ok(SvdParts { u, sigma, v_t: v_sorted.adjoint() })
}

impl FloatMatrix {
    pub fn zeros(n: usize, tol: ToleranceConfig) -> Self {
        FloatMatrix { data: DMatrix::zeros(n, n), tol }
    }

    pub fn zeros_rect(rows: usize, cols: usize, tol: ToleranceConfig) -> Self {
        FloatMatrix { data: DMatrix::zeros(rows, cols), tol }
    }

    pub fn identity(n: usize, tol: ToleranceConfig) -> Self {
        FloatMatrix { data: DMatrix::identity(n, n), tol }
    }

    /// Wrap a matrix, rejecting NaN and infinite entries.
    pub fn new(data: DMatrix<C64>, tol: ToleranceConfig) -> Result<Self, RingError> {
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(RingError::NonFiniteEntry);
        }
        tol.validate()?;
        Ok(FloatMatrix { data, tol })
    }

    pub fn from_rows(rows: &[Vec<C64>], tol: ToleranceConfig) -> Result<Self, RingError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(RingError::Parse("ragged rows".into()));
        }
        Self::new(DMatrix::from_fn(r, c, |i, j| rows[i][j]), tol)
    }

    pub fn from_real_rows(rows: &[&[f64]], tol: ToleranceConfig) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        FloatMatrix {
            data: DMatrix::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0)),
            tol,
        }
    }

    fn wrap(&self, data: DMatrix<C64>) -> Self {
        FloatMatrix { data, tol: self.tol }
    }

    pub fn data(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn tol(&self) -> ToleranceConfig {
        self.tol
    }

    pub fn with_tol(mut self, tol: ToleranceConfig) -> Self {
        self.tol = tol;
        self
    }

    pub fn nrows(&self) -> usize {
        self.data.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.data.ncols()
    }

    pub fn at(&self, r: usize, c: usize) -> C64 {
        self.data[(r, c)]
    }

    pub fn add_m(&self, rhs: &Self) -> Self {
        assert_eq!(self.data.shape(), rhs.data.shape(), "shape mismatch in add");
        self.wrap(&self.data + &rhs.data)
    }

    pub fn sub_m(&self, rhs: &Self) -> Self {
        assert_eq!(self.data.shape(), rhs.data.shape(), "shape mismatch in sub");
        self.wrap(&self.data - &rhs.data)
    }

    pub fn neg_m(&self) -> Self {
        self.wrap(-&self.data)
    }

    pub fn mul_m(&self, rhs: &Self) -> Self {
        assert_eq!(self.data.ncols(), rhs.data.nrows(), "inner dimension mismatch in mul");
        self.wrap(&self.data * &rhs.data)
    }

    pub fn adjoint_m(&self) -> Self {
        self.wrap(self.data.adjoint())
    }

    pub fn scale(&self, s: C64) -> Self {
        self.wrap(self.data.map(|z| z * s))
    }

    pub fn hconcat(&self, rhs: &Self) -> Self {
        assert_eq!(self.nrows(), rhs.nrows(), "row mismatch in hconcat");
        let out = DMatrix::from_fn(self.nrows(), self.ncols() + rhs.ncols(), |r, c| {
            if c < self.ncols() {
                self.data[(r, c)]
            } else {
                rhs.data[(r, c - self.ncols())]
            }
        });
        self.wrap(out)
    }

    pub fn frob_norm_m(&self) -> f64 {
        self.data.norm()
    }

    fn svd_parts(&self) -> Result<SvdParts, RingError> {
        jacobi_svd(&self.data)
    }

    fn cutoff_for(&self, sigma_max: f64) -> f64 {
        self.tol.rank_cutoff_factor * (self.nrows().max(self.ncols()) as f64) * sigma_max
    }

    /// Rank classification. The cutoff is relative to the largest
    /// singular value but floored at `equality_abs_tol`, so that a matrix
    /// the equality discipline already considers zero cannot claw back
    /// rank out of its own rounding noise (and its MP inverse stays zero
    /// instead of inverting noise).
    fn classify_sigma(&self, sigma: &[f64]) -> (RankInfo, f64) {
        let sigma_max = sigma.iter().cloned().fold(0.0f64, f64::max);
        let floor = self.tol.equality_abs_tol;
        if sigma_max == 0.0 {
            return (RankInfo { rank: 0, near_cutoff: false }, floor);
        }
        let cutoff = self.cutoff_for(sigma_max).max(floor);
        let rank = sigma.iter().filter(|&&s| s > cutoff).count();
        let near_cutoff = sigma
            .iter()
            .any(|&s| s >= cutoff / NEAR_CUTOFF_MARGIN && s <= cutoff * NEAR_CUTOFF_MARGIN);
        (RankInfo { rank, near_cutoff }, cutoff)
    }

    /// Rank by singular-value cutoff, with the marginality flag.
    pub fn rank_info(&self) -> Result<RankInfo, RingError> {
        if self.nrows() == 0 || self.ncols() == 0 {
            return Ok(RankInfo { rank: 0, near_cutoff: false });
        }
        let parts = self.svd_parts()?;
        Ok(self.classify_sigma(&parts.sigma).0)
    }

    /// Moore-Penrose inverse by SVD truncation, with rank metadata.
    pub fn mp_with_info(&self) -> Result<(Self, MpInfo), RingError> {
        let SvdParts { u, sigma, v_t } = self.svd_parts()?;
        let (info, cutoff) = self.classify_sigma(&sigma);
        let k = sigma.len();
        let mut sigma_plus = DMatrix::<C64>::zeros(k, k);
        for (i, &s) in sigma.iter().enumerate() {
            if s > cutoff {
                sigma_plus[(i, i)] = C64::new(1.0 / s, 0.0);
            }
        }
        let mp = v_t.adjoint() * sigma_plus * u.adjoint();
        Ok((
            self.wrap(mp),
            MpInfo { rank: info.rank, near_cutoff: info.near_cutoff, cutoff },
        ))
    }

    pub fn mp_float(&self) -> Result<Self, RingError> {
        self.mp_with_info().map(|(m, _)| m)
    }

    /// Orthonormal basis of the column space: left singular vectors whose
    /// singular value clears the cutoff.
    pub fn col_space_basis(&self) -> Result<(Self, RankInfo), RingError> {
        if self.nrows() == 0 || self.ncols() == 0 {
            return Ok((
                self.wrap(DMatrix::zeros(self.nrows(), 0)),
                RankInfo { rank: 0, near_cutoff: false },
            ));
        }
        let SvdParts { u, sigma, .. } = self.svd_parts()?;
        let (info, cutoff) = self.classify_sigma(&sigma);
        let keep: Vec<usize> = (0..sigma.len()).filter(|&i| sigma[i] > cutoff).collect();
        let basis = DMatrix::from_fn(self.nrows(), keep.len(), |r, c| u[(r, keep[c])]);
        Ok((self.wrap(basis), info))
    }

    /// Orthonormal basis of the null space: right singular vectors whose
    /// singular value does not clear the cutoff. The matrix is padded with
    /// zero rows up to square first, because a thin SVD of a wide matrix
    /// does not expose the trailing kernel directions; padding leaves
    /// singular values and right subspaces unchanged.
    pub fn kernel_basis(&self) -> Result<(Self, RankInfo), RingError> {
        let (rows, cols) = self.data.shape();
        if cols == 0 {
            return Ok((
                self.wrap(DMatrix::zeros(0, 0)),
                RankInfo { rank: 0, near_cutoff: false },
            ));
        }
        if rows == 0 {
            return Ok((
                self.wrap(DMatrix::identity(cols, cols)),
                RankInfo { rank: 0, near_cutoff: false },
            ));
        }
        let padded = if rows < cols {
            self.wrap(DMatrix::from_fn(cols, cols, |r, c| {
                if r < rows {
                    self.data[(r, c)]
                } else {
                    C64::new(0.0, 0.0)
                }
            }))
        } else {
            self.clone()
        };
        let SvdParts { sigma, v_t, .. } = padded.svd_parts()?;
        let (info, cutoff) = padded.classify_sigma(&sigma);
        debug_assert_eq!(sigma.len(), cols, "padded SVD must cover every right direction");
        let keep: Vec<usize> = (0..sigma.len()).filter(|&i| sigma[i] <= cutoff).collect();
        let v = v_t.adjoint();
        let basis = DMatrix::from_fn(cols, keep.len(), |r, c| v[(r, keep[c])]);
        Ok((self.wrap(basis), info))
    }

    /// Orthogonal projector onto the column span of `self` (treated as a
    /// basis matrix): `Q Q^*` for a thin QR factor `Q`.
    pub fn projector_from_basis(&self) -> Result<Self, RingError> {
        let n = self.nrows();
        if self.ncols() == 0 {
            return Ok(self.wrap(DMatrix::zeros(n, n)));
        }
        let q = self.data.clone().qr().q();
        // QR does not rank-reveal; callers hand in independent columns.
        // Guard against silent rank loss anyway.
        let k = q.ncols();
        let gram = q.adjoint() * &q;
        let id = DMatrix::<C64>::identity(k, k);
        if (gram - id).norm() > 1e-8 {
            return Err(RingError::DecompositionFailed(
                "basis columns are numerically dependent".into(),
            ));
        }
        Ok(self.wrap(&q * q.adjoint()))
    }

    /// Round an approximately self-adjoint matrix to the nearest
    /// projection by snapping eigenvalues to {0, 1}. Refuses when any
    /// eigenvalue is within [`EIGENVALUE_GAP`] of 1/2, or when the input
    /// is not self-adjoint under the equality tolerance.
    pub fn project_to_nearest_projection(&self) -> Result<Self, RingError> {
        let n = self.dim();
        if !approx_equal(self, &self.adjoint_m())? {
            return Err(RingError::NotSelfAdjoint);
        }
        let herm = (&self.data + self.data.adjoint()).map(|z| z * C64::new(0.5, 0.0));
        // Eigenpairs of the Hermitian part through the SVD: the singular
        // value carries the magnitude and the alignment of the left and
        // right singular vectors carries the sign.
        let SvdParts { u, sigma, v_t } = jacobi_svd(&herm)?;
        let v = v_t.adjoint();
        let eigenvalues: Vec<f64> = (0..n)
            .map(|i| {
                let align: C64 = u.column(i).dotc(&v.column(i));
                sigma[i] * align.re.signum()
            })
            .collect();
        for &ev in &eigenvalues {
            if (ev - 0.5).abs() < EIGENVALUE_GAP {
                return Err(RingError::EigenvalueNearHalf(ev));
            }
        }
        let mut out = DMatrix::<C64>::zeros(n, n);
        for (i, &ev) in eigenvalues.iter().enumerate() {
            if ev > 0.5 {
                let col = u.column(i);
                out += col * col.adjoint();
            }
        }
        let candidate = self.wrap(out);
        // A degenerate +sigma/-sigma collision can entangle the singular
        // vectors; such inputs are far from any projection, so reject
        // rather than return a matrix that fails to square to itself.
        if !crate::ring::is_projection(&candidate) {
            return Err(RingError::DecompositionFailed(
                "rounded matrix is not a projection".into(),
            ));
        }
        Ok(candidate)
    }
}

/// Frobenius-norm equality: `||a - b|| <= abs + rel * max(||a||, ||b||)`,
/// under `a`'s tolerance config. Errors on shape mismatch.
pub fn approx_equal(a: &FloatMatrix, b: &FloatMatrix) -> Result<bool, RingError> {
    if a.data.shape() != b.data.shape() {
        return Err(RingError::DimensionMismatch {
            left: a.data.shape(),
            right: b.data.shape(),
        });
    }
    let diff = (&a.data - &b.data).norm();
    let scale = a.frob_norm_m().max(b.frob_norm_m());
    Ok(diff <= a.tol.equality_abs_tol + a.tol.equality_rel_tol * scale)
}

impl StarRing for FloatMatrix {
    fn dim(&self) -> usize {
        assert_eq!(self.nrows(), self.ncols(), "ring element must be square");
        self.nrows()
    }

    fn zero_like(&self) -> Self {
        self.wrap(DMatrix::zeros(self.nrows(), self.ncols()))
    }

    fn identity_like(&self) -> Self {
        FloatMatrix::identity(self.dim(), self.tol)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.add_m(rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.sub_m(rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.mul_m(rhs)
    }

    fn neg(&self) -> Self {
        self.neg_m()
    }

    fn adjoint(&self) -> Self {
        self.adjoint_m()
    }

    fn eq_elem(&self, rhs: &Self) -> bool {
        approx_equal(self, rhs).expect("eq_elem requires matching shapes")
    }

    fn eq_threshold(&self, rhs: &Self) -> f64 {
        self.tol.equality_abs_tol
            + self.tol.equality_rel_tol * self.frob_norm_m().max(rhs.frob_norm_m())
    }

    fn frob_norm(&self) -> f64 {
        self.frob_norm_m()
    }

    fn mp(&self) -> Result<Self, RingError> {
        self.mp_float()
    }

    fn rank(&self) -> usize {
        self.rank_info().map(|i| i.rank).unwrap_or(0)
    }

    fn invertibility(&self) -> Decision {
        let n = self.dim();
        match self.rank_info() {
            Ok(info) => Decision { holds: info.rank == n, marginal: info.near_cutoff },
            Err(_) => Decision { holds: false, marginal: true },
        }
    }

    fn inverse(&self) -> Result<Self, RingError> {
        self.data.clone().try_inverse().map(|m| self.wrap(m)).ok_or(RingError::Singular)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::penrose_check;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn assert_close(a: &FloatMatrix, b: &FloatMatrix) {
        assert!(
            approx_equal(a, b).unwrap(),
            "expected approx equality, diff {}",
            a.sub_m(b).frob_norm_m()
        );
    }

    #[test]
    fn mp_of_diagonal() {
        let m = FloatMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 0.0]], tol());
        let expected = FloatMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 0.0]], tol());
        let (mp, info) = m.mp_with_info().unwrap();
        assert_close(&mp, &expected);
        assert_eq!(info.rank, 1);
        assert!(!info.near_cutoff);
    }

    #[test]
    fn mp_satisfies_penrose() {
        let m = FloatMatrix::from_rows(
            &[
                vec![C64::new(1.0, 2.0), C64::new(0.5, 0.0), C64::new(0.0, -1.0)],
                vec![C64::new(2.0, 4.0), C64::new(1.0, 0.0), C64::new(0.0, -2.0)],
                vec![C64::new(0.0, 0.0), C64::new(3.0, 1.0), C64::new(1.0, 1.0)],
            ],
            tol(),
        )
        .unwrap();
        let mp = m.mp_float().unwrap();
        let w = penrose_check(&m, &mp).unwrap();
        assert!(w.residuals.iter().all(|&r| r < 1e-10));
        let back = mp.mp_float().unwrap();
        assert_close(&back, &m);
    }

    #[test]
    fn approx_equal_tolerance_and_shape() {
        let a = FloatMatrix::identity(2, tol());
        let mut data = a.data().clone();
        data[(0, 0)] += C64::new(1e-13, 0.0);
        let b = FloatMatrix::new(data, tol()).unwrap();
        assert!(approx_equal(&a, &b).unwrap());
        let c = FloatMatrix::identity(3, tol());
        assert!(matches!(approx_equal(&a, &c), Err(RingError::DimensionMismatch { .. })));
        let mut far = a.data().clone();
        far[(0, 1)] += C64::new(1e-6, 0.0);
        let d = FloatMatrix::new(far, tol()).unwrap();
        assert!(!approx_equal(&a, &d).unwrap());
    }

    #[test]
    fn near_cutoff_is_flagged() {
        // cutoff = 1e-12 * 2 * 1 = 2e-12; 1e-12 sits inside the band.
        let m = FloatMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 1e-12]], tol());
        let info = m.rank_info().unwrap();
        assert_eq!(info.rank, 1);
        assert!(info.near_cutoff);
        let clear = FloatMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.5]], tol());
        let info = clear.rank_info().unwrap();
        assert_eq!(info.rank, 2);
        assert!(!info.near_cutoff);
    }

    #[test]
    fn spectral_rounding_recovers_projection() {
        let p = FloatMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]], tol());
        let mut data = p.data().clone();
        data[(0, 0)] += C64::new(3e-9, 0.0);
        data[(0, 1)] += C64::new(-2e-9, 0.0);
        data[(1, 0)] += C64::new(-2e-9, 0.0);
        let noisy = FloatMatrix::new(data, tol()).unwrap();
        let rounded = noisy.project_to_nearest_projection().unwrap();
        assert!(crate::ring::is_projection(&rounded));
        // Recovery is limited by the injected noise, not by the equality
        // tolerance: the snapped eigenvectors keep an O(noise) tilt.
        assert!(rounded.sub_m(&p).frob_norm_m() < 1e-7);
    }

    #[test]
    fn spectral_rounding_refuses_half_eigenvalue() {
        let m = FloatMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 1.0]], tol());
        assert!(matches!(
            m.project_to_nearest_projection(),
            Err(RingError::EigenvalueNearHalf(_))
        ));
        let skew = FloatMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]], tol());
        assert!(matches!(
            skew.project_to_nearest_projection(),
            Err(RingError::NotSelfAdjoint)
        ));
    }

    #[test]
    fn column_space_and_kernel() {
        let m = FloatMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]], tol());
        let (basis, info) = m.col_space_basis().unwrap();
        assert_eq!(basis.ncols(), 1);
        assert_eq!(info.rank, 1);
        let (kernel, _) = m.kernel_basis().unwrap();
        assert_eq!(kernel.ncols(), 1);
        assert!(m.mul_m(&kernel).frob_norm_m() < 1e-12);
    }

    #[test]
    fn kernel_of_wide_matrix_is_complete() {
        let m = FloatMatrix::from_real_rows(&[&[1.0, 0.0, 0.0]], tol());
        let (kernel, info) = m.kernel_basis().unwrap();
        assert_eq!(info.rank, 1);
        assert_eq!(kernel.ncols(), 2);
        assert!(m.mul_m(&kernel).frob_norm_m() < 1e-12);
        // Orthonormal columns.
        let gram = kernel.adjoint_m().mul_m(&kernel);
        assert_close(&gram, &FloatMatrix::identity(2, tol()));
    }

    #[test]
    fn projector_from_basis_matches_hand_value() {
        let b = FloatMatrix::from_real_rows(&[&[1.0], &[1.0]], tol());
        let p = b.projector_from_basis().unwrap();
        let expected = FloatMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]], tol());
        assert_close(&p, &expected);
        let empty = FloatMatrix::zeros_rect(2, 0, tol());
        let z = empty.projector_from_basis().unwrap();
        assert_close(&z, &FloatMatrix::zeros(2, tol()));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let data = DMatrix::from_fn(2, 2, |r, c| {
            if r == 0 && c == 0 {
                C64::new(f64::NAN, 0.0)
            } else {
                C64::new(1.0, 0.0)
            }
        });
        assert!(matches!(
            FloatMatrix::new(data, tol()),
            Err(RingError::NonFiniteEntry)
        ));
    }

    #[test]
    fn zero_matrix_edge_cases() {
        let z = FloatMatrix::zeros(2, tol());
        let (mp, info) = z.mp_with_info().unwrap();
        assert_eq!(info.rank, 0);
        assert!(mp.frob_norm_m() == 0.0);
        let (kernel, _) = z.kernel_basis().unwrap();
        assert_eq!(kernel.ncols(), 2);
    }

    #[test]
    fn trace_bound_controls_norm_by_star_product() {
        // ||x||_F^2 = tr(x* x) <= sqrt(n) * ||x* x||_F: the quantitative
        // form of star-cancellation that makes float verdicts meaningful.
        let samples = [
            FloatMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, -4.0]], tol()),
            FloatMatrix::from_real_rows(&[&[1e-8, 0.0], &[0.0, 2e-8]], tol()),
            FloatMatrix::identity(5, tol()),
        ];
        for x in samples {
            let n = x.nrows() as f64;
            let lhs = x.frob_norm_m().powi(2);
            let rhs = n.sqrt() * x.adjoint_m().mul_m(&x).frob_norm_m();
            assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-300, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceConfig::default().validate().is_ok());
        let bad = ToleranceConfig { equality_rel_tol: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let nan = ToleranceConfig { rank_cutoff_factor: f64::NAN, ..Default::default() };
        assert!(nan.validate().is_err());
    }

    #[test]
    fn mp_of_a_rank_one_complex_product() {
        // Regression: a rank-one matrix arising as a product of two
        // projections, on which the matrix crate's own SVD returns
        // factors that do not reconstruct the input. MP of a rank-one M
        // is M^* / ||M||_F^2, which here is (1/17) [[4-i, 3-5i], [6+7i, 13+i]].
        let s = 1.0 / 18.0;
        let m = FloatMatrix::from_rows(
            &[
                vec![C64::new(4.0 * s, s), C64::new(6.0 * s, -7.0 * s)],
                vec![C64::new(3.0 * s, 5.0 * s), C64::new(13.0 * s, -s)],
            ],
            tol(),
        )
        .unwrap();
        let t = 1.0 / 17.0;
        let expected = FloatMatrix::from_rows(
            &[
                vec![C64::new(4.0 * t, -t), C64::new(3.0 * t, -5.0 * t)],
                vec![C64::new(6.0 * t, 7.0 * t), C64::new(13.0 * t, t)],
            ],
            tol(),
        )
        .unwrap();
        let (mp, info) = m.mp_with_info().unwrap();
        assert_eq!(info.rank, 1);
        assert!(mp.sub_m(&expected).frob_norm_m() < 1e-12);
    }

    #[test]
    fn svd_factors_reconstruct_random_rank_deficient_inputs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(20260822);
        for trial in 0..300usize {
            let n = 2 + trial % 5;
            let k = 1 + trial % n;
            let draw = |rng: &mut rand::rngs::StdRng, r: usize, c: usize| {
                DMatrix::from_fn(r, c, |_, _| {
                    C64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64)
                })
            };
            let left = draw(&mut rng, n, k);
            let right = draw(&mut rng, k, n);
            let m = FloatMatrix::new(&left * &right, tol()).unwrap();
            let SvdParts { u, sigma, v_t } = m.svd_parts().unwrap();
            let mut recon = DMatrix::<C64>::zeros(n, n);
            for (i, &s) in sigma.iter().enumerate() {
                recon += u.column(i) * v_t.row(i) * C64::new(s, 0.0);
            }
            let gap = (&recon - m.data()).norm();
            assert!(gap < 1e-12 * m.frob_norm_m().max(1.0), "trial {trial}: {gap}");
            let gram_u = {
                // Columns above the rank cutoff are the only ones any
                // consumer reads from U; those must be orthonormal.
                // Columns carrying rounding-level singular values are
                // exempt: they are never selected and their tiny sigma
                // silences them in reconstruction and MP products.
                let sigma_max = sigma.first().copied().unwrap_or(0.0);
                let kept: Vec<usize> = (0..sigma.len())
                    .filter(|&i| sigma[i] > sigma_max * 1e-8)
                    .collect();
                let sub = DMatrix::from_fn(n, kept.len(), |r, c| u[(r, kept[c])]);
                (sub.adjoint() * &sub - DMatrix::<C64>::identity(kept.len(), kept.len())).norm()
            };
            assert!(gram_u < 1e-12, "trial {trial}: U gram {gram_u}");
            let gram_v = (v_t.adjoint() * &v_t - DMatrix::<C64>::identity(n, n)).norm();
            assert!(gram_v < 1e-12, "trial {trial}: V gram {gram_v}");
            let mp = m.mp_float().unwrap();
            let worst = crate::ring::penrose_residuals(&m, &mp)
                .into_iter()
                .fold(0.0f64, f64::max);
            assert!(worst < 1e-9, "trial {trial}: penrose {worst}");
        }
    }
}

//! The abstract *-ring contract shared by every backend.
//!
//! Elements are square matrices over a field carrying an involution
//! (conjugate transpose). A backend supplies the arithmetic, an equality
//! discipline (literal for exact scalars, norm-based for floats) and a
//! Moore-Penrose inverse. Everything above this module (projection pairs,
//! idempotent constructions, the verification harness) is written against
//! the [`StarRing`] trait and never against a concrete backend.

use std::fmt;

use crate::float::{ToleranceConfig, NEAR_CUTOFF_MARGIN};

/// Which concrete matrix ring a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    /// Dense matrices over the Gaussian rationals, exact arithmetic.
    Exact,
    /// Dense complex double-precision matrices, tolerance-based equality.
    Float,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendKind::Exact => write!(f, "exact"),
            BackendKind::Float => write!(f, "float"),
        }
    }
}

/// Runtime description of the ring a computation runs in: backend, the
/// matrix dimension `n`, and the tolerance policy (ignored by the exact
/// backend).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarRingContext {
    pub backend: BackendKind,
    pub dimension: usize,
    pub tolerance: ToleranceConfig,
}

impl StarRingContext {
    pub fn new(backend: BackendKind, dimension: usize, tolerance: ToleranceConfig) -> Self {
        assert!(dimension >= 1, "ring dimension must be at least 1");
        StarRingContext {
            backend,
            dimension,
            tolerance,
        }
    }
}

/// Errors surfaced by ring operations.
///
/// Matrix rings over a field are MP-complete, so `MpUnavailable` cannot
/// actually be produced by either backend; it stays in the contract because
/// the abstract ring the trait models admits elements without an MP inverse.
#[derive(Debug, Clone, PartialEq)]
pub enum RingError {
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// An input that must be a projection is not one.
    NotProjection,
    /// An input that must be idempotent is not.
    NotIdempotent,
    /// The four Penrose equations do not all hold for the candidate pair.
    PenroseViolation {
        residuals: [f64; 4],
    },
    /// No MP inverse exists (never produced by the matrix backends).
    MpUnavailable,
    /// Two independent computation routes for the same element disagreed.
    RouteDisagreement {
        residual: f64,
    },
    /// The element is not invertible.
    Singular,
    /// A numerical decomposition failed to converge.
    DecompositionFailed(String),
    /// An entry was NaN or infinite.
    NonFiniteEntry,
    /// Spectral rounding refused: an eigenvalue sits too close to 1/2.
    EigenvalueNearHalf(f64),
    /// An input was expected to be (approximately) self-adjoint.
    NotSelfAdjoint,
    /// A scalar or matrix in text form could not be parsed.
    Parse(String),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)
            }
            RingError::NotSquare { rows, cols } => {
                write!(f, "ring element must be square, got {rows}x{cols}")
            }
            RingError::NotProjection => write!(f, "input is not a projection"),
            RingError::NotIdempotent => write!(f, "input is not idempotent"),
            RingError::PenroseViolation { residuals } => write!(
                f,
                "Penrose equations violated, residuals [{:.3e}, {:.3e}, {:.3e}, {:.3e}]",
                residuals[0], residuals[1], residuals[2], residuals[3]
            ),
            RingError::MpUnavailable => write!(f, "element has no Moore-Penrose inverse"),
            RingError::RouteDisagreement { residual } => {
                write!(f, "independent computation routes disagree, residual {residual:.3e}")
            }
            RingError::Singular => write!(f, "element is not invertible"),
            RingError::DecompositionFailed(what) => write!(f, "decomposition failed: {what}"),
            RingError::NonFiniteEntry => write!(f, "matrix contains a NaN or infinite entry"),
            RingError::EigenvalueNearHalf(ev) => {
                write!(f, "eigenvalue {ev} is too close to 1/2 to round to a projection")
            }
            RingError::NotSelfAdjoint => write!(f, "input is not self-adjoint"),
            RingError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for RingError {}

/// A yes/no answer that may be numerically marginal.
///
/// The exact backend always returns definite decisions. The float backend
/// flags `marginal` when a singular value fell inside the guard band around
/// the rank cutoff, i.e. the answer would flip under a slightly different
/// tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub marginal: bool,
}

impl Decision {
    pub fn definite(holds: bool) -> Self {
        Decision { holds, marginal: false }
    }

    pub fn and(self, other: Decision) -> Decision {
        Decision {
            holds: self.holds && other.holds,
            marginal: self.marginal || other.marginal,
        }
    }

    pub fn not(self) -> Decision {
        Decision { holds: !self.holds, marginal: self.marginal }
    }
}

/// Element of a concrete *-ring of square matrices.
///
/// Arithmetic methods panic on shape mismatches; the checked entry points
/// ([`penrose_check`], pair construction, the subspace oracle) validate
/// shapes up front and return [`RingError`] instead. `eq_elem` is the
/// backend's equality discipline and is what every verified identity is
/// judged by.
pub trait StarRing: Clone + fmt::Debug {
    /// Ambient dimension `n` of the square element.
    fn dim(&self) -> usize;

    fn zero_like(&self) -> Self;
    fn identity_like(&self) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// The involution: conjugate transpose.
    fn adjoint(&self) -> Self;

    /// Backend equality: literal for exact scalars, Frobenius-norm based
    /// for floats.
    fn eq_elem(&self, rhs: &Self) -> bool;

    /// Absolute Frobenius threshold `eq_elem` uses to compare `self`
    /// against `rhs`; 0 for exact backends. Lets callers detect when an
    /// equality judgment was itself borderline.
    fn eq_threshold(&self, rhs: &Self) -> f64;

    /// Frobenius norm as a non-negative real.
    fn frob_norm(&self) -> f64;

    /// The Moore-Penrose inverse.
    fn mp(&self) -> Result<Self, RingError>;

    /// Backend rank (RREF pivots or singular values above the cutoff).
    fn rank(&self) -> usize;

    /// Whether the element is invertible, with a marginality flag for
    /// near-cutoff float spectra.
    fn invertibility(&self) -> Decision;

    /// The ordinary (two-sided) inverse.
    fn inverse(&self) -> Result<Self, RingError>;

    /// `1 - self`; the complement of a projection.
    fn complement(&self) -> Self {
        self.identity_like().sub(self)
    }

    fn is_zero_elem(&self) -> bool {
        self.eq_elem(&self.zero_like())
    }

    /// Frobenius distance to `rhs`, the residual reported for an identity
    /// `self = rhs`.
    fn residual_vs(&self, rhs: &Self) -> f64 {
        self.sub(rhs).frob_norm()
    }
}

/// A verified Moore-Penrose pair: `mp` passes all four Penrose equations
/// against `element` under the backend equality test.
#[derive(Clone, Debug)]
pub struct MpWitness<R> {
    pub element: R,
    pub mp: R,
    /// Frobenius residuals of the four Penrose equations, in order
    /// `aba = a`, `bab = b`, `(ab)* = ab`, `(ba)* = ba`.
    pub residuals: [f64; 4],
}

/// Residuals of the four Penrose equations for a candidate pair, without
/// judging them.
pub fn penrose_residuals<R: StarRing>(a: &R, b: &R) -> [f64; 4] {
    let ab = a.mul(b);
    let ba = b.mul(a);
    [
        ab.mul(a).residual_vs(a),
        ba.mul(b).residual_vs(b),
        ab.adjoint().residual_vs(&ab),
        ba.adjoint().residual_vs(&ba),
    ]
}

/// Check whether `b` is the Moore-Penrose inverse of `a`.
///
/// Succeeds iff all four Penrose equations hold under the backend equality
/// test; the witness carries the Frobenius residuals (exactly zero in the
/// exact backend).
pub fn penrose_check<R: StarRing>(a: &R, b: &R) -> Result<MpWitness<R>, RingError> {
    if a.dim() != b.dim() {
        return Err(RingError::DimensionMismatch {
            left: (a.dim(), a.dim()),
            right: (b.dim(), b.dim()),
        });
    }
    let ab = a.mul(b);
    let ba = b.mul(a);
    let residuals = [
        ab.mul(a).residual_vs(a),
        ba.mul(b).residual_vs(b),
        ab.adjoint().residual_vs(&ab),
        ba.adjoint().residual_vs(&ba),
    ];
    let ok = ab.mul(a).eq_elem(a)
        && ba.mul(b).eq_elem(b)
        && ab.adjoint().eq_elem(&ab)
        && ba.adjoint().eq_elem(&ba);
    if ok {
        Ok(MpWitness { element: a.clone(), mp: b.clone(), residuals })
    } else {
        Err(RingError::PenroseViolation { residuals })
    }
}

/// `true` iff `x` is a self-adjoint idempotent (an orthogonal projector).
pub fn is_projection<R: StarRing>(x: &R) -> bool {
    x.mul(x).eq_elem(x) && x.adjoint().eq_elem(x)
}

/// `true` iff `x^2 = x`.
pub fn is_idempotent<R: StarRing>(x: &R) -> bool {
    x.mul(x).eq_elem(x)
}

/// Equality of two elements as a [`Decision`], plus the Frobenius
/// residual. `marginal` is set when the residual falls inside the guard
/// band around the backend comparison threshold, i.e. the yes/no answer
/// would flip under a slightly different tolerance. Exact backends have
/// threshold 0 and are never marginal.
pub fn judged_eq<R: StarRing>(lhs: &R, rhs: &R) -> (Decision, f64) {
    let residual = lhs.residual_vs(rhs);
    let threshold = lhs.eq_threshold(rhs);
    let marginal = threshold > 0.0
        && residual >= threshold / NEAR_CUTOFF_MARGIN
        && residual <= threshold * NEAR_CUTOFF_MARGIN;
    (Decision { holds: lhs.eq_elem(rhs), marginal }, residual)
}

/// [`is_idempotent`] as a [`Decision`] with a marginality flag.
pub fn judged_idempotent<R: StarRing>(x: &R) -> Decision {
    judged_eq(&x.mul(x), x).0
}

/// [`is_projection`] as a [`Decision`]: idempotency and self-adjointness,
/// marginal when either judgment is borderline.
pub fn judged_projection<R: StarRing>(x: &R) -> Decision {
    judged_idempotent(x).and(judged_eq(&x.adjoint(), x).0)
}

/// The four Penrose equations for the candidate pair `(a, b)` as one
/// [`Decision`].
pub fn judged_penrose<R: StarRing>(a: &R, b: &R) -> Decision {
    let ab = a.mul(b);
    let ba = b.mul(a);
    judged_eq(&ab.mul(a), a)
        .0
        .and(judged_eq(&ba.mul(b), b).0)
        .and(judged_eq(&ab.adjoint(), &ab).0)
        .and(judged_eq(&ba.adjoint(), &ba).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactMatrix;
    use crate::float::FloatMatrix;

    #[test]
    fn penrose_zero_and_identity() {
        let z = ExactMatrix::zeros(2, 2);
        let w = penrose_check(&z, &z).unwrap();
        assert_eq!(w.residuals, [0.0; 4]);

        let id = ExactMatrix::identity(3);
        assert!(penrose_check(&id, &id).is_ok());

        let zf = FloatMatrix::zeros(2, Default::default());
        assert!(penrose_check(&zf, &zf).is_ok());
    }

    #[test]
    fn penrose_diagonal_reciprocal() {
        let a = ExactMatrix::diag_i64(&[2, 0]);
        let b = ExactMatrix::from_rational_rows(&[&[(1, 2), (0, 1)], &[(0, 1), (0, 1)]]);
        let w = penrose_check(&a, &b).unwrap();
        assert_eq!(w.residuals, [0.0; 4]);
    }

    #[test]
    fn penrose_rejects_non_inverse() {
        let a = ExactMatrix::diag_i64(&[2, 0]);
        let not_mp = ExactMatrix::identity(2);
        match penrose_check(&a, &not_mp) {
            Err(RingError::PenroseViolation { residuals }) => {
                assert!(residuals.iter().any(|r| *r > 0.0));
            }
            other => panic!("expected Penrose violation, got {other:?}"),
        }
    }

    #[test]
    fn penrose_dimension_mismatch() {
        let a = ExactMatrix::identity(2);
        let b = ExactMatrix::identity(3);
        assert!(matches!(
            penrose_check(&a, &b),
            Err(RingError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn projection_predicate() {
        assert!(is_projection(&ExactMatrix::identity(3)));
        assert!(is_projection(&ExactMatrix::diag_i64(&[1, 0, 1])));
        // Idempotent but not self-adjoint.
        let e = ExactMatrix::from_i64_rows(&[&[1, 1], &[0, 0]]);
        assert!(!is_projection(&e));
        assert!(is_idempotent(&e));
        assert!(!is_idempotent(&ExactMatrix::diag_i64(&[2, 2])));
    }

    #[test]
    fn context_rejects_dimension_zero() {
        let result = std::panic::catch_unwind(|| {
            StarRingContext::new(BackendKind::Exact, 0, Default::default())
        });
        assert!(result.is_err());
    }

    #[test]
    fn judged_predicates_flag_borderline_answers() {
        // Exact answers are always definite.
        let d = judged_projection(&ExactMatrix::diag_i64(&[1, 0]));
        assert!(d.holds && !d.marginal);
        let d = judged_idempotent(&ExactMatrix::diag_i64(&[2, 2]));
        assert!(!d.holds && !d.marginal);

        // A float matrix that is numerically zero up to ~1e-12 noise:
        // "x^2 = x" misses the comparison threshold by a hair, which is a
        // borderline judgment, not a definite violation.
        let tol = crate::float::ToleranceConfig::default();
        let noisy = FloatMatrix::from_real_rows(&[&[1.3e-12]], tol);
        let d = judged_projection(&noisy);
        assert!(!d.holds && d.marginal);

        // A definite non-projection stays a definite non-projection.
        let skew = FloatMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.0]], tol);
        let d = judged_projection(&skew);
        assert!(!d.holds && !d.marginal);

        // Clean cases are far from the band on both sides.
        let id = FloatMatrix::identity(2, tol);
        let d = judged_projection(&id);
        assert!(d.holds && !d.marginal);
        let d = judged_penrose(&id, &id);
        assert!(d.holds && !d.marginal);
    }
}

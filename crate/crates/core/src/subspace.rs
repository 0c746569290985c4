//! Independent subspace oracle.
//!
//! Every range and null-space claim made by a formula elsewhere in this
//! crate is judged against bases produced here, and this module is built
//! only from elementary decompositions (RREF for the exact backend, SVD
//! and QR for floats). It never calls a Moore-Penrose inverse and never
//! calls the projection-pair formulas, so agreement between a formula and
//! the oracle is evidence, not circularity.
//!
//! Predicates return [`Decision`] rather than `bool`: the float backend
//! marks a decision marginal when any rank call involved a singular value
//! inside the guard band around the cutoff, and that marginality follows
//! the subspaces it touched (`shaky`) through later operations.

use crate::ring::{Decision, RingError, StarRing};

/// Low-level rectangular operations a backend must supply for the oracle.
///
/// A basis is stored as an `n x k` matrix of the same concrete type as the
/// ring elements. The `bool` accompanying rank-revealing operations is the
/// marginality flag (always `false` for the exact backend).
pub trait SubspaceBackend: StarRing {
    fn ambient_rows(&self) -> usize;
    fn basis_cols(&self) -> usize;
    fn rect_hconcat(&self, rhs: &Self) -> Self;
    fn rect_neg(&self) -> Self;
    fn rect_mul(&self, rhs: &Self) -> Self;
    fn rect_adjoint(&self) -> Self;
    fn rect_norm(&self) -> f64;
    /// Whether a rectangular residual counts as zero; `scale` is the norm
    /// scale of the inputs it came from.
    fn rect_is_negligible(&self, scale: f64) -> bool;
    /// Independent columns spanning the column space.
    fn col_basis(&self) -> Result<(Self, bool), RingError>;
    /// Independent columns spanning the null space.
    fn null_basis(&self) -> Result<(Self, bool), RingError>;
    fn rank_of(&self) -> Result<(usize, bool), RingError>;
    /// Orthogonal projector onto the span of the (independent) columns.
    fn projector_of_basis(&self) -> Result<Self, RingError>;
    /// Rectangular identity slab (ones on the main diagonal).
    fn rect_identity(&self, rows: usize, cols: usize) -> Self;
    fn rect_zeros(&self, rows: usize, cols: usize) -> Self;
}

/// A subspace of the ambient column space, carried as an independent
/// basis. `shaky` records that some rank decision along the way was
/// marginal, so conclusions drawn from this space deserve distrust.
#[derive(Clone, Debug)]
pub struct Subspace<B: SubspaceBackend> {
    basis: B,
    shaky: bool,
}

impl<B: SubspaceBackend> Subspace<B> {
    /// The column space of an arbitrary rectangular matrix.
    pub fn column_space(m: &B) -> Result<Self, RingError> {
        let (basis, near) = m.col_basis()?;
        Ok(Subspace { basis, shaky: near })
    }

    /// The null space of an arbitrary rectangular matrix.
    pub fn null_space(m: &B) -> Result<Self, RingError> {
        let (basis, near) = m.null_basis()?;
        Ok(Subspace { basis, shaky: near })
    }

    pub fn ambient(&self) -> usize {
        self.basis.ambient_rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.basis_cols()
    }

    pub fn shaky(&self) -> bool {
        self.shaky
    }

    pub fn basis(&self) -> &B {
        &self.basis
    }

    fn check_ambient(&self, other: &Self) -> Result<(), RingError> {
        if self.ambient() != other.ambient() {
            return Err(RingError::DimensionMismatch {
                left: (self.ambient(), self.dim()),
                right: (other.ambient(), other.dim()),
            });
        }
        Ok(())
    }

    /// `U + V`, the span of both bases.
    pub fn sum(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ambient(other)?;
        let stacked = self.basis.rect_hconcat(&other.basis);
        let (basis, near) = stacked.col_basis()?;
        Ok(Subspace { basis, shaky: self.shaky || other.shaky || near })
    }

    /// `U ∩ V` via the null space of `[B_U | -B_V]`: a kernel vector
    /// `(c, d)` means `B_U c = B_V d`, and mapping it through `B_U` gives
    /// the common vector. The map is injective because both bases are
    /// independent, so the image spans the intersection.
    pub fn intersection(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            let (empty, _) = if self.dim() == 0 {
                (self.basis.clone(), false)
            } else {
                (other.basis.clone(), false)
            };
            return Ok(Subspace { basis: empty, shaky: self.shaky || other.shaky });
        }
        let stacked = self.basis.rect_hconcat(&other.basis.rect_neg());
        let (kernel, near_k) = stacked.null_basis()?;
        // First block of kernel coefficients, applied to B_U.
        let r = self.dim();
        let coeff = take_first_rows(&kernel, r);
        let image = self.basis.rect_mul(&coeff);
        let (basis, near_i) = image.col_basis()?;
        Ok(Subspace {
            basis,
            shaky: self.shaky || other.shaky || near_k || near_i,
        })
    }

    /// Set equality via rank tests on the stacked bases:
    /// `U = V  iff  rank[B_U | B_V] = dim U = dim V`.
    pub fn equals(&self, other: &Self) -> Result<Decision, RingError> {
        self.check_ambient(other)?;
        let (joint, near) = self.basis.rect_hconcat(&other.basis).rank_of()?;
        Ok(Decision {
            holds: joint == self.dim() && joint == other.dim(),
            marginal: self.shaky || other.shaky || near,
        })
    }

    /// `other ⊆ self`, again by a stacked-rank test.
    pub fn contains(&self, other: &Self) -> Result<Decision, RingError> {
        self.check_ambient(other)?;
        let (joint, near) = self.basis.rect_hconcat(&other.basis).rank_of()?;
        Ok(Decision {
            holds: joint == self.dim(),
            marginal: self.shaky || other.shaky || near,
        })
    }

    /// Pairwise orthogonality of the two spans: the cross-Gram matrix
    /// `B_V^* B_U` must vanish.
    pub fn is_orthogonal_to(&self, other: &Self) -> Result<Decision, RingError> {
        self.check_ambient(other)?;
        let gram = other.basis.rect_adjoint().rect_mul(&self.basis);
        let scale = self.basis.rect_norm().max(other.basis.rect_norm()).max(1.0);
        Ok(Decision {
            holds: gram.rect_is_negligible(scale * scale),
            marginal: self.shaky || other.shaky,
        })
    }

    /// Whether `self ⊕ other` is the whole ambient space as an algebraic
    /// (not necessarily orthogonal) direct sum: dimensions add up to `n`
    /// and the stacked basis has full rank, which forces the intersection
    /// to be trivial.
    pub fn is_direct_sum_whole(&self, other: &Self) -> Result<Decision, RingError> {
        self.check_ambient(other)?;
        let n = self.ambient();
        let (joint, near) = self.basis.rect_hconcat(&other.basis).rank_of()?;
        Ok(Decision {
            holds: self.dim() + other.dim() == n && joint == n,
            marginal: self.shaky || other.shaky || near,
        })
    }

    pub fn is_trivial(&self) -> Decision {
        Decision { holds: self.dim() == 0, marginal: self.shaky }
    }

    pub fn is_whole(&self) -> Decision {
        Decision { holds: self.dim() == self.ambient(), marginal: self.shaky }
    }

    /// The orthogonal projector onto this subspace, synthesized purely
    /// from the basis.
    pub fn projector(&self) -> Result<B, RingError> {
        self.basis.projector_of_basis()
    }
}

fn take_first_rows<B: SubspaceBackend>(m: &B, r: usize) -> B {
    // Expressed with oracle primitives: multiply by the [I_r | 0] slab.
    let rows = m.ambient_rows();
    assert!(r <= rows, "row selection out of bounds");
    m.rect_identity(r, rows).rect_mul(m)
}

// spec-facing names

pub fn column_space<B: SubspaceBackend>(m: &B) -> Result<Subspace<B>, RingError> {
    Subspace::column_space(m)
}

pub fn space_sum<B: SubspaceBackend>(
    u: &Subspace<B>,
    v: &Subspace<B>,
) -> Result<Subspace<B>, RingError> {
    u.sum(v)
}

pub fn space_intersection<B: SubspaceBackend>(
    u: &Subspace<B>,
    v: &Subspace<B>,
) -> Result<Subspace<B>, RingError> {
    u.intersection(v)
}

pub fn spaces_equal<B: SubspaceBackend>(
    u: &Subspace<B>,
    v: &Subspace<B>,
) -> Result<Decision, RingError> {
    u.equals(v)
}

pub fn is_orthogonal<B: SubspaceBackend>(
    u: &Subspace<B>,
    v: &Subspace<B>,
) -> Result<Decision, RingError> {
    u.is_orthogonal_to(v)
}

pub fn is_direct_sum_whole<B: SubspaceBackend>(
    u: &Subspace<B>,
    v: &Subspace<B>,
) -> Result<Decision, RingError> {
    u.is_direct_sum_whole(v)
}

pub fn orth_projector_onto<B: SubspaceBackend>(u: &Subspace<B>) -> Result<B, RingError> {
    u.projector()
}

mod backend_impls {
    use super::SubspaceBackend;
    use crate::exact::ExactMatrix;
    use crate::float::FloatMatrix;
    use crate::ring::RingError;

    impl SubspaceBackend for ExactMatrix {
        fn ambient_rows(&self) -> usize {
            self.nrows()
        }

        fn basis_cols(&self) -> usize {
            self.ncols()
        }

        fn rect_hconcat(&self, rhs: &Self) -> Self {
            self.hconcat(rhs)
        }

        fn rect_neg(&self) -> Self {
            self.neg_m()
        }

        fn rect_mul(&self, rhs: &Self) -> Self {
            self.mul_m(rhs)
        }

        fn rect_adjoint(&self) -> Self {
            self.adjoint_m()
        }

        fn rect_norm(&self) -> f64 {
            self.frob_norm_m()
        }

        fn rect_is_negligible(&self, _scale: f64) -> bool {
            self.is_zero_matrix()
        }

        fn col_basis(&self) -> Result<(Self, bool), RingError> {
            let pivots = self.rref().pivots;
            Ok((self.select_columns(&pivots), false))
        }

        fn null_basis(&self) -> Result<(Self, bool), RingError> {
            Ok((self.kernel_basis(), false))
        }

        fn rank_of(&self) -> Result<(usize, bool), RingError> {
            Ok((self.rank_m(), false))
        }

        /// `B (B^* B)^{-1} B^*`; the Gram matrix is invertible because the
        /// basis columns are independent over a subfield of the complex
        /// numbers.
        fn projector_of_basis(&self) -> Result<Self, RingError> {
            let n = self.nrows();
            if self.ncols() == 0 {
                return Ok(ExactMatrix::zeros(n, n));
            }
            let b_star = self.adjoint_m();
            let gram = b_star.mul_m(self);
            let gram_inv = gram.invert().map_err(|_| {
                RingError::DecompositionFailed("basis columns are dependent".into())
            })?;
            Ok(self.mul_m(&gram_inv).mul_m(&b_star))
        }

        fn rect_identity(&self, rows: usize, cols: usize) -> Self {
            let mut m = ExactMatrix::zeros(rows, cols);
            for k in 0..rows.min(cols) {
                m.set(k, k, crate::exact::GaussianRational::one());
            }
            m
        }

        fn rect_zeros(&self, rows: usize, cols: usize) -> Self {
            ExactMatrix::zeros(rows, cols)
        }
    }

    impl SubspaceBackend for FloatMatrix {
        fn ambient_rows(&self) -> usize {
            self.nrows()
        }

        fn basis_cols(&self) -> usize {
            self.ncols()
        }

        fn rect_hconcat(&self, rhs: &Self) -> Self {
            self.hconcat(rhs)
        }

        fn rect_neg(&self) -> Self {
            self.neg_m()
        }

        fn rect_mul(&self, rhs: &Self) -> Self {
            self.mul_m(rhs)
        }

        fn rect_adjoint(&self) -> Self {
            self.adjoint_m()
        }

        fn rect_norm(&self) -> f64 {
            self.frob_norm_m()
        }

        fn rect_is_negligible(&self, scale: f64) -> bool {
            let t = self.tol();
            self.frob_norm_m() <= t.equality_abs_tol + t.equality_rel_tol * scale
        }

        fn col_basis(&self) -> Result<(Self, bool), RingError> {
            self.col_space_basis().map(|(b, i)| (b, i.near_cutoff))
        }

        fn null_basis(&self) -> Result<(Self, bool), RingError> {
            self.kernel_basis().map(|(b, i)| (b, i.near_cutoff))
        }

        fn rank_of(&self) -> Result<(usize, bool), RingError> {
            self.rank_info().map(|i| (i.rank, i.near_cutoff))
        }

        fn projector_of_basis(&self) -> Result<Self, RingError> {
            self.projector_from_basis()
        }

        fn rect_identity(&self, rows: usize, cols: usize) -> Self {
            FloatMatrix::new(nalgebra::DMatrix::identity(rows, cols), self.tol())
                .expect("identity is finite")
        }

        fn rect_zeros(&self, rows: usize, cols: usize) -> Self {
            FloatMatrix::zeros_rect(rows, cols, self.tol())
        }
    }
}

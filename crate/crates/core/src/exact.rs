//! Exact backend: dense matrices over the Gaussian rationals.
//!
//! Scalars are `a + bi` with `a`, `b` arbitrary-precision rationals, so
//! every arithmetic identity either holds literally or does not; there is
//! no tolerance anywhere in this module. The Moore-Penrose inverse comes
//! from a rank factorization obtained by Gauss-Jordan elimination:
//! for `M = F G` with `F` the pivot columns and `G` the nonzero rows of
//! the reduced echelon form, `M^+ = G^* (G G^*)^{-1} (F^* F)^{-1} F^*`.
//! Both Gram matrices are invertible because `F` and `G` have full rank
//! over a subfield of the complex numbers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::{Decision, RingError, StarRing};

/// A Gaussian rational scalar `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

fn rational_from_str(s: &str) -> Result<BigRational, RingError> {
    let bad = |why: &str| RingError::Parse(format!("invalid rational {s:?}: {why}"));
    match s.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num).map_err(|_| bad("bad numerator"))?;
            let den = BigInt::from_str(den).map_err(|_| bad("bad denominator"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num = BigInt::from_str(s).map_err(|_| bad("bad integer"))?;
            Ok(BigRational::from_integer(num))
        }
    }
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_i64(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational_i64(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_parts_i64(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        assert!(re_den != 0 && im_den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2 = re^2 + im^2`, an exact non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn add(&self, rhs: &Self) -> Self {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn neg(&self) -> Self {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse; panics on zero (callers check first).
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        GaussianRational { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Parse the canonical text form: `"3"`, `"-1/2"`, `"1/2+-3/4i"`,
    /// `"0+1i"`. The imaginary part, when present, is the trailing
    /// `<rational>i` after the last `+`; a bare `<rational>i` is also
    /// accepted.
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RingError::Parse("empty scalar".into()));
        }
        match s.strip_suffix('i') {
            Some(body) => match body.rsplit_once('+') {
                Some((re, im)) if !re.is_empty() => Ok(GaussianRational {
                    re: rational_from_str(re)?,
                    im: rational_from_str(im)?,
                }),
                Some((_, im)) => Ok(GaussianRational {
                    re: BigRational::zero(),
                    im: rational_from_str(im)?,
                }),
                None => Ok(GaussianRational {
                    re: BigRational::zero(),
                    im: rational_from_str(body)?,
                }),
            },
            None => Ok(GaussianRational { re: rational_from_str(s)?, im: BigRational::zero() }),
        }
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical text form: the real part as `num` or `num/den`, then
    /// `+<im>i` unless the imaginary part is zero. A negative imaginary
    /// part keeps the `+` separator: `1/2+-3/4i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Dense row-major matrix over [`GaussianRational`].
///
/// The type doubles as basis storage for the subspace oracle, so most
/// inherent operations accept rectangular shapes; the [`StarRing`] view is
/// only taken on square values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

/// Reduced row echelon form and the pivot columns that produced it.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, GaussianRational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix::from_fn(r, c, |i, j| GaussianRational::from_i64(rows[i][j]))
    }

    pub fn from_rational_rows(rows: &[&[(i64, i64)]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix::from_fn(r, c, |i, j| {
            GaussianRational::from_rational_i64(rows[i][j].0, rows[i][j].1)
        })
    }

    pub fn diag_i64(values: &[i64]) -> Self {
        let n = values.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (k, v) in values.iter().enumerate() {
            m.set(k, k, GaussianRational::from_i64(*v));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &GaussianRational {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_m(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c).add(rhs.at(r, c)))
    }

    pub fn sub_m(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c).sub(rhs.at(r, c)))
    }

    pub fn neg_m(&self) -> Self {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c).neg())
    }

    pub fn mul_m(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch in mul");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.at(r, k);
                if lhs.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let term = lhs.mul(rhs.at(k, c));
                    let cur = out.at(r, c).add(&term);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn adjoint_m(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).conj())
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        ExactMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c).mul(s))
    }

    /// Columns of `self` selected by `indices`, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        ExactMatrix::from_fn(self.rows, indices.len(), |r, c| self.at(r, indices[c]).clone())
    }

    pub fn first_rows(&self, k: usize) -> Self {
        assert!(k <= self.rows, "row count out of bounds");
        ExactMatrix::from_fn(k, self.cols, |r, c| self.at(r, c).clone())
    }

    pub fn hconcat(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hconcat");
        ExactMatrix::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                rhs.at(r, c - self.cols).clone()
            }
        })
    }

    /// Gauss-Jordan elimination to reduced row echelon form. Pivot rows
    /// are chosen as the first nonzero entry in column order, which makes
    /// the result (and everything downstream: ranks, factorizations,
    /// kernels, MP inverses) a deterministic function of the input.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.at(pivot_row, c).clone();
                    let b = m.at(src, c).clone();
                    m.set(pivot_row, c, b);
                    m.set(src, c, a);
                }
            }
            let inv = m.at(pivot_row, col).inv();
            for c in 0..m.cols {
                let v = m.at(pivot_row, c).mul(&inv);
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in 0..m.cols {
                    let v = m.at(r, c).sub(&factor.mul(m.at(pivot_row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank_m(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one column per free variable of the RREF.
    pub fn kernel_basis(&self) -> Self {
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = ExactMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, GaussianRational::one());
            for (row, &p) in pivots.iter().enumerate() {
                out.set(p, k, r.at(row, f).neg());
            }
        }
        out
    }

    /// Full-rank factorization `self = F G`: `F` is the pivot columns of
    /// `self`, `G` the nonzero rows of the RREF. For the zero matrix both
    /// factors are empty (`rows x 0` and `0 x cols`).
    pub fn rank_factorize(&self) -> (Self, Self) {
        let Rref { matrix, pivots } = self.rref();
        let f = self.select_columns(&pivots);
        let g = matrix.first_rows(pivots.len());
        (f, g)
    }

    /// Two-sided inverse by Gauss-Jordan on `[self | I]`.
    pub fn invert(&self) -> Result<Self, RingError> {
        if self.rows != self.cols {
            return Err(RingError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = self.hconcat(&ExactMatrix::identity(n));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &p)| k != p) {
            return Err(RingError::Singular);
        }
        Ok(ExactMatrix::from_fn(n, n, |r, c| matrix.at(r, n + c).clone()))
    }

    /// The Moore-Penrose inverse, exactly:
    /// `M^+ = G^* (G G^*)^{-1} (F^* F)^{-1} F^*` for the rank
    /// factorization `M = F G`; the zero matrix maps to the zero matrix of
    /// the transposed shape.
    pub fn mp_exact(&self) -> Self {
        let (f, g) = self.rank_factorize();
        let r = g.nrows();
        if r == 0 {
            return ExactMatrix::zeros(self.cols, self.rows);
        }
        let g_star = g.adjoint_m();
        let f_star = f.adjoint_m();
        let gg = g.mul_m(&g_star).invert().expect("G G* of a full-row-rank G is invertible");
        let ff = f_star.mul_m(&f).invert().expect("F* F of a full-column-rank F is invertible");
        g_star.mul_m(&gg).mul_m(&ff).mul_m(&f_star)
    }

    /// Exact squared Frobenius norm.
    pub fn frob_norm_sqr_rational(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for e in &self.entries {
            acc += e.norm_sqr();
        }
        acc
    }

    pub fn frob_norm_m(&self) -> f64 {
        let sq = self.frob_norm_sqr_rational();
        debug_assert!(!sq.is_negative());
        sq.to_f64().unwrap_or(f64::INFINITY).max(0.0).sqrt()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    /// Entry-wise rounding into the float backend.
    pub fn to_float(&self, tol: crate::float::ToleranceConfig) -> crate::float::FloatMatrix {
        let data = nalgebra::DMatrix::from_fn(self.rows, self.cols, |r, c| {
            let (re, im) = self.at(r, c).to_complex_f64();
            num_complex::Complex::new(re, im)
        });
        crate::float::FloatMatrix::new(data, tol).expect("rational entries convert to finite floats")
    }

    pub fn entries_iter(&self) -> impl Iterator<Item = &GaussianRational> {
        self.entries.iter()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl StarRing for ExactMatrix {
    fn dim(&self) -> usize {
        assert_eq!(self.rows, self.cols, "ring element must be square");
        self.rows
    }

    fn zero_like(&self) -> Self {
        ExactMatrix::zeros(self.rows, self.cols)
    }

    fn identity_like(&self) -> Self {
        ExactMatrix::identity(self.dim())
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
        self == rhs
    }

    fn eq_threshold(&self, _rhs: &Self) -> f64 {
        0.0
    }

    fn frob_norm(&self) -> f64 {
        self.frob_norm_m()
    }

    fn mp(&self) -> Result<Self, RingError> {
        Ok(self.mp_exact())
    }

    fn rank(&self) -> usize {
        self.rank_m()
    }

    fn invertibility(&self) -> Decision {
        Decision::definite(self.rank_m() == self.dim())
    }

    fn inverse(&self) -> Result<Self, RingError> {
        self.invert()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::penrose_check;

    fn gr(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_rational_i64(n, d)
    }

    #[test]
    fn scalar_text_round_trip() {
        for s in ["3", "-2/3", "1/2+-3/4i", "0+1i", "7+2/5i"] {
            let v = GaussianRational::parse(s).unwrap();
            assert_eq!(v.to_string(), s, "round trip of {s:?}");
        }
        // Normalization and lenient inputs.
        assert_eq!(GaussianRational::parse("2/4").unwrap().to_string(), "1/2");
        assert_eq!(GaussianRational::parse("-6/-4").unwrap().to_string(), "3/2");
        assert_eq!(GaussianRational::parse("1i").unwrap().to_string(), "0+1i");
        assert_eq!(GaussianRational::parse("1/2+0i").unwrap().to_string(), "1/2");
        assert_eq!(GaussianRational::parse(" 5 ").unwrap().to_string(), "5");
    }

    #[test]
    fn scalar_parse_rejects_garbage() {
        for s in ["", "i", "1/0", "one", "1/2+i", "1//2", "1/2 + 3i"] {
            assert!(GaussianRational::parse(s).is_err(), "should reject {s:?}");
        }
    }

    #[test]
    fn scalar_field_ops() {
        let z = GaussianRational::from_parts_i64(1, 2, -3, 4);
        let w = z.mul(&z.inv());
        assert_eq!(w, GaussianRational::one());
        assert_eq!(z.conj().conj(), z);
        assert_eq!(z.mul(&z.conj()).im(), GaussianRational::zero().im());
        assert_eq!(GaussianRational::i().mul(&GaussianRational::i()), GaussianRational::from_i64(-1));
    }

    #[test]
    fn rref_rank_one() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let Rref { matrix, pivots } = m.rref();
        assert_eq!(pivots, vec![0]);
        assert_eq!(matrix, ExactMatrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(m.rank_m(), 1);
    }

    #[test]
    fn rref_needs_row_swap() {
        let m = ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let Rref { matrix, pivots } = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(matrix, ExactMatrix::identity(2));
    }

    #[test]
    fn rank_factorization_splits_pivot_columns() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let (f, g) = m.rank_factorize();
        assert_eq!(f, ExactMatrix::from_i64_rows(&[&[1], &[2]]));
        assert_eq!(g, ExactMatrix::from_i64_rows(&[&[1, 2]]));
        assert_eq!(f.mul_m(&g), m);
    }

    #[test]
    fn mp_of_rank_one_matrix() {
        // M = [[1,2],[2,4]] has M^+ = M / 25.
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let expected = m.scale(&gr(1, 25));
        assert_eq!(m.mp_exact(), expected);
        let w = penrose_check(&m, &m.mp_exact()).unwrap();
        assert_eq!(w.residuals, [0.0; 4]);
    }

    #[test]
    fn mp_of_diagonal_is_entrywise_reciprocal() {
        let m = ExactMatrix::diag_i64(&[3, 0]);
        let mut expected = ExactMatrix::zeros(2, 2);
        expected.set(0, 0, gr(1, 3));
        assert_eq!(m.mp_exact(), expected);
    }

    #[test]
    fn mp_of_zero_and_identity() {
        let z = ExactMatrix::zeros(3, 3);
        assert_eq!(z.mp_exact(), z);
        let id = ExactMatrix::identity(3);
        assert_eq!(id.mp_exact(), id);
    }

    #[test]
    fn mp_with_complex_entries_satisfies_penrose() {
        let mut m = ExactMatrix::zeros(2, 2);
        m.set(0, 0, GaussianRational::i());
        m.set(0, 1, GaussianRational::one());
        let mp = m.mp_exact();
        let w = penrose_check(&m, &mp).unwrap();
        assert_eq!(w.residuals, [0.0; 4]);
        // Involution and adjoint-commutation, exactly.
        assert_eq!(mp.mp_exact(), m);
        assert_eq!(m.adjoint_m().mp_exact(), mp.adjoint_m());
    }

    #[test]
    fn mp_is_unique_against_candidate() {
        // For invertible M the MP inverse is the ordinary inverse.
        let m = ExactMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.mp_exact(), m.invert().unwrap());
    }

    #[test]
    fn invert_rejects_singular() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(m.invert(), Err(RingError::Singular)));
        let id = ExactMatrix::identity(4);
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k, ExactMatrix::from_i64_rows(&[&[-2], &[1]]));
        assert!(m.mul_m(&k).is_zero_matrix());
        let full = ExactMatrix::identity(3);
        assert_eq!(full.kernel_basis().ncols(), 0);
    }

    #[test]
    fn frobenius_norm_is_exact_before_rounding() {
        let m = ExactMatrix::from_i64_rows(&[&[3, 4], &[0, 0]]);
        assert_eq!(m.frob_norm_m(), 5.0);
        let z = ExactMatrix::zeros(2, 2);
        assert_eq!(z.frob_norm_m(), 0.0);
    }

    #[test]
    fn star_ring_view() {
        let p = ExactMatrix::diag_i64(&[1, 0]);
        assert_eq!(p.dim(), 2);
        assert!(p.invertibility().holds == false);
        assert!(ExactMatrix::identity(2).invertibility().holds);
        assert_eq!(p.complement(), ExactMatrix::diag_i64(&[0, 1]));
        assert_eq!(p.rank(), 1);
    }
}

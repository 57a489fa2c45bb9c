//! Dense complex matrices, singular values and Schatten norms.
//!
//! Matrices are small (desk-scale, dimension well below 100), so everything is
//! dense and backed by `nalgebra`. Singular values come from a one-sided
//! complex SVD, so zero singular values come out at roundoff level.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Shorthand for a complex number.
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}x{}[", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                let z = self.0[(i, j)];
                write!(f, "{}{:+}i", z.re, z.im)?;
            }
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    /// Builds a matrix from row-major entries, rejecting NaN and infinities.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(ComplexMatrix(DMatrix::from_row_slice(rows, cols, &entries)))
    }

    /// Builds a matrix from a list of rows. An empty list gives a 0x0 matrix.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Self::from_row_major(n, m, rows.concat())
    }

    /// Real matrix from rows; convenient for fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let entries: Vec<C64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| c64(x, 0.0)))
            .collect();
        Self::from_row_major(n, m, entries).expect("finite real rows")
    }

    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        ComplexMatrix(m)
    }

    pub fn real_diag(values: &[f64]) -> Self {
        let v: Vec<C64> = values.iter().map(|&x| c64(x, 0.0)).collect();
        Self::diag(&v)
    }

    /// Wraps an `nalgebra` matrix after checking finiteness.
    pub fn from_dmatrix(m: DMatrix<C64>) -> Result<Self> {
        if m.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(ComplexMatrix(m))
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.0[(i, j)] = value;
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }

    pub fn to_row_major(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn scale(&self, factor: C64) -> Self {
        ComplexMatrix(&self.0 * factor)
    }

    pub fn trace(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::Structure(format!(
                "trace of a non-square {}x{} matrix",
                self.rows(),
                self.cols()
            )));
        }
        Ok(self.0.trace())
    }

    /// Largest entry modulus; 0 for empty matrices.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn checked_mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::Structure(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(self * rhs)
    }

    pub fn checked_add(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::Structure(format!(
                "cannot add {:?} and {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(self + rhs)
    }

    /// Inverse via LU; `None` when singular.
    pub fn try_inverse(&self) -> Option<ComplexMatrix> {
        if !self.is_square() {
            return None;
        }
        if self.rows() == 0 {
            return Some(self.clone());
        }
        let inv = self.0.clone().try_inverse()?;
        if inv.iter().all(|z| z.is_finite()) {
            Some(ComplexMatrix(inv))
        } else {
            None
        }
    }

    /// Stacks four blocks `[[a, b], [c, d]]` into one matrix.
    pub fn block2x2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (r0, c0) = (a.rows(), a.cols());
        let (r1, c1) = (d.rows(), d.cols());
        debug_assert_eq!(b.shape(), (r0, c1));
        debug_assert_eq!(c.shape(), (r1, c0));
        let mut m = DMatrix::zeros(r0 + r1, c0 + c1);
        m.view_mut((0, 0), (r0, c0)).copy_from(&a.0);
        m.view_mut((0, c0), (r0, c1)).copy_from(&b.0);
        m.view_mut((r0, 0), (r1, c0)).copy_from(&c.0);
        m.view_mut((r0, c0), (r1, c1)).copy_from(&d.0);
        ComplexMatrix(m)
    }

    /// Sub-block starting at `(row, col)` with the given shape.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        ComplexMatrix(self.0.view((row, col), (rows, cols)).into_owned())
    }
}

impl Add<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        self.0 += &rhs.0;
    }
}

/// Singular values, sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The `min(rows, cols)` singular values of `m`, descending.
pub fn singular_values(m: &ComplexMatrix) -> Result<SingularSpectrum> {
    if !m.is_finite() {
        return Err(Error::InvalidInput(
            "singular values of a non-finite matrix".into(),
        ));
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(SingularSpectrum { values: Vec::new() });
    }
    let svd = m.0.clone().svd(false, false);
    let mut values: Vec<f64> = svd.singular_values.iter().map(|&s| s.max(0.0)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(SingularSpectrum { values })
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Domain(format!(
            "Schatten exponent must be >= 1, got {p}"
        )));
    }
    Ok(())
}

/// Schatten norm from an already computed spectrum. `p = inf` gives the largest value.
pub fn schatten_from_spectrum(spectrum: &SingularSpectrum, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let top = spectrum.largest();
    if top == 0.0 {
        return Ok(0.0);
    }
    if p.is_infinite() {
        return Ok(top);
    }
    // scaled by the top value so large p cannot overflow
    let sum: f64 = spectrum.values.iter().map(|s| (s / top).powf(p)).sum();
    Ok(top * sum.powf(1.0 / p))
}

/// `(sum_i s_i(M)^p)^(1/p)` for `p >= 1`.
pub fn schatten_norm(m: &ComplexMatrix, p: f64) -> Result<f64> {
    check_exponent(p)?;
    schatten_from_spectrum(&singular_values(m)?, p)
}

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.largest())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn identity_has_unit_singular_values() {
        let s = singular_values(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.values().iter().all(|&v| close(v, 1.0)));
    }

    #[test]
    fn zero_rectangular() {
        let s = singular_values(&ComplexMatrix::zeros(3, 2)).unwrap();
        assert_eq!(s.values(), &[0.0, 0.0]);
    }

    #[test]
    fn nilpotent_two() {
        // M*M = diag(0, 4)
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        let s = singular_values(&m).unwrap();
        assert!(close(s.values()[0], 2.0) && close(s.values()[1], 0.0));
        assert!(close(operator_norm(&m).unwrap(), 2.0));
    }

    #[test]
    fn wide_matrix() {
        let m = ComplexMatrix::from_real_rows(&[&[3.0, 0.0, 0.0]]);
        let s = singular_values(&m).unwrap();
        assert_eq!(s.len(), 1);
        assert!(close(s.largest(), 3.0));
    }

    #[test]
    fn rank_one_spectrum_has_roundoff_tail() {
        let u = ComplexMatrix::from_rows(&[
            vec![c64(0.3, -0.7)],
            vec![c64(1.1, 0.2)],
            vec![c64(-0.4, 0.9)],
        ])
        .unwrap();
        let v = ComplexMatrix::from_rows(&[vec![
            c64(0.5, 0.1),
            c64(-0.8, 0.6),
            c64(0.2, 0.0),
            c64(0.7, -0.3),
        ]])
        .unwrap();
        let s = singular_values(&(&u * &v)).unwrap();
        assert!(close(
            s.largest(),
            operator_norm(&u).unwrap() * operator_norm(&v).unwrap()
        ));
        assert!(
            s.values()[1..].iter().all(|&x| x < 1e-14),
            "{:?}",
            s.values()
        );
    }

    #[test]
    fn schatten_examples() {
        let d = ComplexMatrix::real_diag(&[3.0, 4.0]);
        assert!(close(schatten_norm(&d, 2.0).unwrap(), 5.0));
        assert!(close(schatten_norm(&d, 1.0).unwrap(), 7.0));
        assert!(close(operator_norm(&d).unwrap(), 4.0));
        for n in 1..5 {
            for p in [1.0, 1.5, 2.0, 3.0] {
                let v = schatten_norm(&ComplexMatrix::identity(n), p).unwrap();
                assert!(close(v, (n as f64).powf(1.0 / p)));
            }
        }
        assert!(close(schatten_norm(&d, f64::INFINITY).unwrap(), 4.0));
    }

    #[test]
    fn exponent_below_one_rejected() {
        let d = ComplexMatrix::identity(2);
        assert!(matches!(schatten_norm(&d, 0.5), Err(Error::Domain(_))));
        assert!(matches!(schatten_norm(&d, f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(ComplexMatrix::from_row_major(1, 1, vec![c64(f64::NAN, 0.0)]).is_err());
        let bad = ComplexMatrix(DMatrix::from_element(1, 1, c64(f64::INFINITY, 0.0)));
        assert!(matches!(singular_values(&bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn block_roundtrip() {
        let a = ComplexMatrix::real_diag(&[1.0, 2.0]);
        let b = ComplexMatrix::zeros(2, 1);
        let c = ComplexMatrix::zeros(1, 2);
        let d = ComplexMatrix::real_diag(&[5.0]);
        let m = ComplexMatrix::block2x2(&a, &b, &c, &d);
        assert_eq!(m.shape(), (3, 3));
        assert_eq!(m.block(0, 0, 2, 2), a);
        assert_eq!(m.block(2, 2, 1, 1), d);
    }
}

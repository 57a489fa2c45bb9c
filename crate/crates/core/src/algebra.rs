//! Finite-dimensional associative algebras given by structure constants.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::linalg::{c64, C64};

/// Default absolute tolerance for the associativity and unit checks.
pub const ALGEBRA_TOLERANCE: f64 = 1e-12;

/// A complex associative algebra with basis `e_0..e_{n-1}` and
/// `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteAlgebra {
    basis: Vec<String>,
    // flattened c[i][j][k]
    constants: Vec<C64>,
    unit: Option<Vec<C64>>,
    adjoined_unit: bool,
}

/// An element of a [`FiniteAlgebra`], by coordinates in its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub coords: Vec<C64>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<C64>) -> Self {
        AlgebraElement { coords }
    }

    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            coords: vec![C64::new(0.0, 0.0); dim],
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[index] = c64(1.0, 0.0);
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scale(&self, factor: C64) -> Self {
        AlgebraElement {
            coords: self.coords.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<C64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: C64) -> AlgebraElement {
        self.scale(rhs)
    }
}

/// Residuals of the algebra axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport {
    /// `max |((e_i e_j) e_k - e_i (e_j e_k))_l|` over all basis triples.
    pub associativity_residual: f64,
    /// `max |unit·e_i - e_i|, |e_i·unit - e_i|`, when a unit is declared.
    pub unit_residual: Option<f64>,
}

impl AlgebraReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.associativity_residual <= tol && self.unit_residual.is_none_or(|u| u <= tol)
    }
}

impl FiniteAlgebra {
    /// Builds an algebra from nested structure constants `c[i][j][k]`.
    ///
    /// Only shapes and finiteness are checked here; [`FiniteAlgebra::validate`]
    /// reports how far the constants are from associative.
    pub fn new(basis: Vec<String>, constants: Vec<Vec<Vec<C64>>>) -> Result<Self> {
        let n = basis.len();
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(Error::InvalidInput(format!("duplicate basis label {b:?}")));
            }
        }
        if constants.len() != n
            || constants
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(Error::InvalidInput(format!(
                "structure constants must be a {n}x{n}x{n} array"
            )));
        }
        let flat: Vec<C64> = constants.into_iter().flatten().flatten().collect();
        Self::from_flat(basis, flat)
    }

    /// Same as [`FiniteAlgebra::new`] with constants flattened in `i, j, k` order.
    pub fn from_flat(basis: Vec<String>, constants: Vec<C64>) -> Result<Self> {
        let n = basis.len();
        if constants.len() != n * n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} structure constants, got {}",
                n * n * n,
                constants.len()
            )));
        }
        if constants.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput("non-finite structure constant".into()));
        }
        Ok(FiniteAlgebra {
            basis,
            constants,
            unit: None,
            adjoined_unit: false,
        })
    }

    /// Declares a unit element. Whether it really is one is checked by `validate`.
    pub fn with_unit(mut self, unit: Vec<C64>) -> Result<Self> {
        if unit.len() != self.dim() {
            return Err(Error::InvalidInput("unit has the wrong length".into()));
        }
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> Option<&[C64]> {
        self.unit.as_deref()
    }

    /// True when this algebra came out of [`FiniteAlgebra::unitalize`]: the last
    /// basis vector is the adjoined unit and the others span the original algebra.
    pub fn has_adjoined_unit(&self) -> bool {
        self.adjoined_unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> C64 {
        let n = self.dim();
        self.constants[(i * n + j) * n + k]
    }

    /// Coordinates of `e_i e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[C64] {
        let n = self.dim();
        let start = (i * n + j) * n;
        &self.constants[start..start + n]
    }

    pub fn structure_constants(&self) -> Vec<Vec<Vec<C64>>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.product_of_basis(i, j).to_vec())
                    .collect()
            })
            .collect()
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), i)
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::Structure(format!(
                "element has {} coordinates, algebra has dimension {}",
                x.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Bilinear product through the structure constants.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        let n = self.dim();
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (i, xi) in x.coords.iter().enumerate() {
            if *xi == C64::new(0.0, 0.0) {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                let w = xi * yj;
                if w == C64::new(0.0, 0.0) {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(self.product_of_basis(i, j)) {
                    *o += w * c;
                }
            }
        }
        Ok(AlgebraElement { coords: out })
    }

    /// `Ã = A ⊕ C` with `(a, λ)(b, μ) = (ab + λb + μa, λμ)`.
    ///
    /// The new basis vector is appended last. An existing unit of `A` is not
    /// identified with the new one.
    pub fn unitalize(&self) -> FiniteAlgebra {
        let n = self.dim();
        let m = n + 1;
        let mut constants = vec![C64::new(0.0, 0.0); m * m * m];
        let idx = |i: usize, j: usize, k: usize| (i * m + j) * m + k;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    constants[idx(i, j, k)] = self.constant(i, j, k);
                }
            }
        }
        let one = c64(1.0, 0.0);
        for i in 0..m {
            constants[idx(n, i, i)] = one;
            constants[idx(i, n, i)] = one;
        }
        let mut label = "1".to_string();
        while self.basis.contains(&label) {
            label.push('\'');
        }
        let mut basis = self.basis.clone();
        basis.push(label);
        let mut unit = vec![C64::new(0.0, 0.0); m];
        unit[n] = one;
        FiniteAlgebra {
            basis,
            constants,
            unit: Some(unit),
            adjoined_unit: true,
        }
    }

    /// Associativity and unit-law residuals on all basis triples.
    pub fn validate(&self) -> AlgebraReport {
        let n = self.dim();
        let mut assoc = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let eij = AlgebraElement::new(self.product_of_basis(i, j).to_vec());
                for k in 0..n {
                    let ejk = AlgebraElement::new(self.product_of_basis(j, k).to_vec());
                    let left = self
                        .multiply(&eij, &self.basis_element(k))
                        .expect("conforming");
                    let right = self
                        .multiply(&self.basis_element(i), &ejk)
                        .expect("conforming");
                    assoc = assoc.max((&left - &right).max_abs());
                }
            }
        }
        let unit_residual = self.unit.as_ref().map(|u| {
            let u = AlgebraElement::new(u.clone());
            (0..n)
                .map(|i| {
                    let e = self.basis_element(i);
                    let l = (&self.multiply(&u, &e).expect("conforming") - &e).max_abs();
                    let r = (&self.multiply(&e, &u).expect("conforming") - &e).max_abs();
                    l.max(r)
                })
                .fold(0.0, f64::max)
        });
        AlgebraReport {
            associativity_residual: assoc,
            unit_residual,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::proj_algebra;

    fn one() -> C64 {
        c64(1.0, 0.0)
    }

    #[test]
    fn idempotent_product() {
        let a = proj_algebra();
        let e = a.basis_element(0);
        assert_eq!(a.multiply(&e, &e).unwrap(), e);
        let z = AlgebraElement::zero(1);
        assert_eq!(a.multiply(&e, &z).unwrap(), z);
        assert!(a.multiply(&e, &AlgebraElement::zero(2)).is_err());
    }

    #[test]
    fn unitalized_product_by_hand() {
        // (e + 1)·e = e·e + 1·e = 2e
        let at = proj_algebra().unitalize();
        assert_eq!(at.dim(), 2);
        assert!(at.has_adjoined_unit());
        let e = at.basis_element(0);
        let e_plus_one = AlgebraElement::new(vec![one(), one()]);
        let prod = at.multiply(&e_plus_one, &e).unwrap();
        assert_eq!(prod.coords, vec![c64(2.0, 0.0), c64(0.0, 0.0)]);
        let u = AlgebraElement::new(at.unit().unwrap().to_vec());
        assert_eq!(at.multiply(&u, &e).unwrap(), e);
    }

    #[test]
    fn unitalized_proj_associative_on_all_triples() {
        let at = proj_algebra().unitalize();
        // 2 basis vectors -> 8 triples; the 27 of a 3-dim unitalization are in the next test
        assert_eq!(at.validate().associativity_residual, 0.0);
        let att = at.unitalize();
        let n = att.dim();
        assert_eq!(n, 3);
        let mut count = 0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = att
                        .multiply(
                            &att.multiply(&att.basis_element(i), &att.basis_element(j))
                                .unwrap(),
                            &att.basis_element(k),
                        )
                        .unwrap();
                    let r = att
                        .multiply(
                            &att.basis_element(i),
                            &att.multiply(&att.basis_element(j), &att.basis_element(k))
                                .unwrap(),
                        )
                        .unwrap();
                    assert_eq!(l, r);
                    count += 1;
                }
            }
        }
        assert_eq!(count, 27);
        assert!(att.validate().passes(ALGEBRA_TOLERANCE));
    }

    #[test]
    fn unit_label_avoids_collisions() {
        let a = FiniteAlgebra::new(vec!["1".into()], vec![vec![vec![one()]]]).unwrap();
        let at = a.unitalize();
        assert_eq!(at.basis()[1], "1'");
    }

    #[test]
    fn perturbed_constants_are_reported() {
        // C² with orthogonal idempotents, then bump c[0][1][0]
        let z = c64(0.0, 0.0);
        let mut c = vec![vec![vec![z; 2]; 2]; 2];
        c[0][0][0] = one();
        c[1][1][1] = one();
        let good = FiniteAlgebra::new(vec!["p".into(), "q".into()], c.clone()).unwrap();
        assert_eq!(good.validate().associativity_residual, 0.0);
        c[0][1][0] = c64(0.1, 0.0);
        let bad = FiniteAlgebra::new(vec!["p".into(), "q".into()], c).unwrap();
        let r = bad.validate().associativity_residual;
        // (p q) q = 0.1 p q = 0.01 p ; p (q q) = p q = 0.1 p -> residual 0.09 on that triple
        assert!(r > 0.05, "residual {r}");
        assert!(!bad.validate().passes(ALGEBRA_TOLERANCE));
    }

    #[test]
    fn declared_unit_checked() {
        let a = proj_algebra().with_unit(vec![one()]).unwrap();
        assert_eq!(a.validate().unit_residual, Some(0.0));
        let b = proj_algebra().with_unit(vec![c64(2.0, 0.0)]).unwrap();
        assert!(b.validate().unit_residual.unwrap() > 0.5);
    }

    #[test]
    fn bad_shapes_rejected() {
        assert!(FiniteAlgebra::new(vec!["e".into()], vec![]).is_err());
        assert!(FiniteAlgebra::from_flat(vec!["e".into()], vec![c64(f64::NAN, 0.0)]).is_err());
        assert!(FiniteAlgebra::new(
            vec!["e".into(), "e".into()],
            vec![vec![vec![one(); 2]; 2]; 2]
        )
        .is_err());
    }
}

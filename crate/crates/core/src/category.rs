//! Objects and morphisms of `Hilb(X)` stored by their values on the simples.
//!
//! With finitely many simples and semisimplicity, a natural transformation is
//! determined by one matrix per simple label, so a morphism is just an aligned
//! list of blocks. Naturality is structural and never checked at runtime.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{operator_norm, schatten_norm, ComplexMatrix, C64};

/// The finite list of simple labels, with optional quantum dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryContext {
    simples: Vec<String>,
    quantum_dims: Option<Vec<f64>>,
}

impl CategoryContext {
    pub fn new(simples: Vec<String>, quantum_dims: Option<Vec<f64>>) -> Result<Self> {
        if simples.is_empty() {
            return Err(Error::InvalidInput(
                "a category needs at least one simple".into(),
            ));
        }
        for (i, s) in simples.iter().enumerate() {
            if simples[..i].contains(s) {
                return Err(Error::InvalidInput(format!("duplicate simple label {s:?}")));
            }
        }
        if let Some(q) = &quantum_dims {
            if q.len() != simples.len() {
                return Err(Error::InvalidInput(format!(
                    "{} quantum dimensions for {} simples",
                    q.len(),
                    simples.len()
                )));
            }
            if q.iter().any(|&d| !(d.is_finite() && d > 0.0)) {
                return Err(Error::InvalidInput(
                    "quantum dimensions must be positive".into(),
                ));
            }
        }
        Ok(CategoryContext {
            simples,
            quantum_dims,
        })
    }

    /// A context with a single simple, labelled `•`.
    pub fn point() -> Arc<Self> {
        Arc::new(Self::new(vec!["•".to_string()], None).expect("valid"))
    }

    pub fn simples(&self) -> &[String] {
        &self.simples
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn quantum_dims(&self) -> Option<&[f64]> {
        self.quantum_dims.as_deref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.simples.iter().position(|s| s == label)
    }
}

/// An object of `Hilb(X)`: a fiber dimension per simple.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbObject {
    ctx: Arc<CategoryContext>,
    dims: Vec<usize>,
}

impl HilbObject {
    pub fn new(ctx: Arc<CategoryContext>, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != ctx.len() {
            return Err(Error::Structure(format!(
                "{} fiber dimensions for {} simples",
                dims.len(),
                ctx.len()
            )));
        }
        Ok(HilbObject { ctx, dims })
    }

    pub fn ctx(&self) -> &Arc<CategoryContext> {
        &self.ctx
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, simple: usize) -> usize {
        self.dims[simple]
    }

    /// Fiberwise direct sum.
    pub fn direct_sum(&self, other: &HilbObject) -> Result<HilbObject> {
        if self.ctx != other.ctx {
            return Err(Error::Structure(
                "direct sum across different contexts".into(),
            ));
        }
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        HilbObject::new(self.ctx.clone(), dims)
    }
}

/// A morphism of `Hilb(X)`, one `target x source` block per simple.
#[derive(Debug, Clone, PartialEq)]
pub struct CatMorphism {
    source: HilbObject,
    target: HilbObject,
    blocks: Vec<ComplexMatrix>,
}

impl CatMorphism {
    pub fn new(source: HilbObject, target: HilbObject, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if source.ctx != target.ctx {
            return Err(Error::Structure(
                "source and target live over different contexts".into(),
            ));
        }
        if blocks.len() != source.ctx.len() {
            return Err(Error::Structure(format!(
                "{} blocks for {} simples",
                blocks.len(),
                source.ctx.len()
            )));
        }
        for (c, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dims[c], source.dims[c]) {
                return Err(Error::Structure(format!(
                    "block for simple {:?} is {:?}, expected {}x{}",
                    source.ctx.simples[c],
                    b.shape(),
                    target.dims[c],
                    source.dims[c]
                )));
            }
            if !b.is_finite() {
                return Err(Error::InvalidInput(
                    "morphism block has non-finite entries".into(),
                ));
            }
        }
        Ok(CatMorphism {
            source,
            target,
            blocks,
        })
    }

    pub fn zero(source: HilbObject, target: HilbObject) -> Result<Self> {
        let blocks = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| ComplexMatrix::zeros(t, s))
            .collect();
        Self::new(source, target, blocks)
    }

    pub fn identity(obj: HilbObject) -> Self {
        let blocks = obj
            .dims
            .iter()
            .map(|&d| ComplexMatrix::identity(d))
            .collect();
        CatMorphism {
            source: obj.clone(),
            target: obj,
            blocks,
        }
    }

    pub fn source(&self) -> &HilbObject {
        &self.source
    }

    pub fn target(&self) -> &HilbObject {
        &self.target
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn block(&self, simple: usize) -> &ComplexMatrix {
        &self.blocks[simple]
    }

    /// `g ∘ self`, componentwise.
    pub fn then(&self, g: &CatMorphism) -> Result<CatMorphism> {
        compose(g, self)
    }

    pub fn scale(&self, factor: C64) -> CatMorphism {
        CatMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(factor)).collect(),
        }
    }

    pub fn add(&self, other: &CatMorphism) -> Result<CatMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Structure(
                "sum of morphisms with different ends".into(),
            ));
        }
        Ok(CatMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CatMorphism) -> Result<CatMorphism> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// `Σ_c trace(θ_c)` over the simples.
    pub fn total_trace(&self) -> Result<C64> {
        self.blocks.iter().map(ComplexMatrix::trace).sum()
    }
}

/// Componentwise composition `g ∘ f`.
pub fn compose(g: &CatMorphism, f: &CatMorphism) -> Result<CatMorphism> {
    if f.target != g.source {
        return Err(Error::Structure(format!(
            "cannot compose: target {:?} of f differs from source {:?} of g",
            f.target.dims, g.source.dims
        )));
    }
    let blocks = g
        .blocks
        .iter()
        .zip(&f.blocks)
        .map(|(gb, fb)| gb * fb)
        .collect();
    Ok(CatMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        blocks,
    })
}

/// Componentwise conjugate transpose.
pub fn adjoint(f: &CatMorphism) -> CatMorphism {
    CatMorphism {
        source: f.target.clone(),
        target: f.source.clone(),
        blocks: f.blocks.iter().map(ComplexMatrix::adjoint).collect(),
    }
}

/// `max_c ||f_c||`; 0 when every fiber is zero-dimensional.
pub fn sup_operator_norm(f: &CatMorphism) -> f64 {
    f.blocks
        .iter()
        .map(|b| operator_norm(b).expect("blocks are finite by construction"))
        .fold(0.0, f64::max)
}

/// `max_c ||f_c||_p` over the simples.
pub fn sup_schatten_norm(f: &CatMorphism, p: f64) -> Result<f64> {
    let mut best = 0.0f64;
    if p.is_nan() || p < 1.0 {
        return Err(Error::Domain(format!(
            "Schatten exponent must be >= 1, got {p}"
        )));
    }
    for b in &f.blocks {
        best = best.max(schatten_norm(b, p)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    fn two_simples() -> Arc<CategoryContext> {
        Arc::new(CategoryContext::new(vec!["a".into(), "b".into()], Some(vec![1.0, 2.0])).unwrap())
    }

    #[test]
    fn context_validation() {
        assert!(CategoryContext::new(vec![], None).is_err());
        assert!(CategoryContext::new(vec!["x".into(), "x".into()], None).is_err());
        assert!(CategoryContext::new(vec!["x".into()], Some(vec![0.0])).is_err());
        assert!(CategoryContext::new(vec!["x".into()], Some(vec![1.0, 2.0])).is_err());
        let ctx = two_simples();
        assert_eq!(ctx.index_of("b"), Some(1));
        assert_eq!(ctx.quantum_dims(), Some(&[1.0, 2.0][..]));
    }

    #[test]
    fn compose_identity_and_zero() {
        let ctx = CategoryContext::point();
        let h = HilbObject::new(ctx, vec![2]).unwrap();
        let m = ComplexMatrix::from_rows(&[
            vec![c64(1.0, 1.0), c64(2.0, 0.0)],
            vec![c64(0.0, -1.0), c64(3.0, 0.0)],
        ])
        .unwrap();
        let f = CatMorphism::new(h.clone(), h.clone(), vec![m]).unwrap();
        let id = CatMorphism::identity(h.clone());
        assert_eq!(compose(&id, &f).unwrap(), f);
        let z = CatMorphism::zero(h.clone(), h.clone()).unwrap();
        assert_eq!(compose(&f, &z).unwrap(), z);
    }

    #[test]
    fn compose_matches_matrix_product() {
        let ctx = CategoryContext::point();
        let h = HilbObject::new(ctx, vec![2]).unwrap();
        let a = ComplexMatrix::from_rows(&[
            vec![c64(1.0, 2.0), c64(0.5, 0.0)],
            vec![c64(-1.0, 0.0), c64(0.0, 1.0)],
        ])
        .unwrap();
        let b = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 1.0), c64(2.0, 0.0)],
            vec![c64(1.0, -1.0), c64(3.0, 0.0)],
        ])
        .unwrap();
        let g = CatMorphism::new(h.clone(), h.clone(), vec![a.clone()]).unwrap();
        let f = CatMorphism::new(h.clone(), h.clone(), vec![b.clone()]).unwrap();
        let gf = compose(&g, &f).unwrap();
        // entrywise oracle
        for i in 0..2 {
            for j in 0..2 {
                let want: C64 = (0..2).map(|k| a.get(i, k) * b.get(k, j)).sum();
                assert!((gf.block(0).get(i, j) - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn compose_rejects_mismatch() {
        let ctx = CategoryContext::point();
        let h1 = HilbObject::new(ctx.clone(), vec![1]).unwrap();
        let h2 = HilbObject::new(ctx, vec![2]).unwrap();
        let f = CatMorphism::identity(h1);
        let g = CatMorphism::identity(h2);
        assert!(matches!(compose(&g, &f), Err(Error::Structure(_))));
    }

    #[test]
    fn adjoint_examples() {
        let ctx = CategoryContext::point();
        let h = HilbObject::new(ctx, vec![2]).unwrap();
        let d = CatMorphism::new(
            h.clone(),
            h.clone(),
            vec![ComplexMatrix::real_diag(&[1.0, -3.0])],
        )
        .unwrap();
        assert_eq!(adjoint(&d), d);
        let m = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(0.0, 1.0)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        let f = CatMorphism::new(h.clone(), h.clone(), vec![m]).unwrap();
        let want = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, -1.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(adjoint(&f).block(0), &want);
        assert_eq!(adjoint(&adjoint(&f)), f);
    }

    #[test]
    fn sup_norms() {
        let ctx = two_simples();
        let h = HilbObject::new(ctx.clone(), vec![1, 1]).unwrap();
        let f = CatMorphism::new(
            h.clone(),
            h.clone(),
            vec![
                ComplexMatrix::real_diag(&[1.0]),
                ComplexMatrix::real_diag(&[2.0]),
            ],
        )
        .unwrap();
        assert!((sup_operator_norm(&f) - 2.0).abs() < 1e-12);

        let h2 = HilbObject::new(ctx, vec![2, 1]).unwrap();
        let g = CatMorphism::new(
            h2.clone(),
            h2.clone(),
            vec![
                ComplexMatrix::real_diag(&[3.0, 4.0]),
                ComplexMatrix::real_diag(&[5.0]),
            ],
        )
        .unwrap();
        assert!((sup_schatten_norm(&g, 1.0).unwrap() - 7.0).abs() < 1e-12);
        let z = CatMorphism::zero(h2.clone(), h2.clone()).unwrap();
        assert_eq!(sup_operator_norm(&z), 0.0);
        assert_eq!(sup_schatten_norm(&z, 3.0).unwrap(), 0.0);
        assert!(sup_schatten_norm(&z, 0.9).is_err());
    }

    #[test]
    fn identity_trace_norm() {
        let h = HilbObject::new(CategoryContext::point(), vec![2]).unwrap();
        let id = CatMorphism::identity(h);
        assert!((sup_schatten_norm(&id, 1.0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_dimensional_fibers() {
        let h = HilbObject::new(two_simples(), vec![0, 0]).unwrap();
        let id = CatMorphism::identity(h);
        assert_eq!(sup_operator_norm(&id), 0.0);
        assert_eq!(id.total_trace().unwrap(), c64(0.0, 0.0));
    }
}

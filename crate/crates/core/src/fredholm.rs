//! Z₂-graded objects, graded operators and Fredholm modules.
//!
//! A graded operator on `H = H⁺ ⊕ H⁻` is stored per simple as four blocks:
//! `pp: H⁺→H⁺`, `pm: H⁻→H⁺`, `mp: H⁺→H⁻`, `mm: H⁻→H⁻`. Parity is tracked
//! through sums and products so that the graded commutator can act part by
//! part on mixed operators.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::{AlgebraElement, FiniteAlgebra};
use crate::category::{
    sup_operator_norm, sup_schatten_norm, CatMorphism, CategoryContext, HilbObject,
};
use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, C64};

/// `H = H⁺ ⊕ H⁻` over a shared category context.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedHilbObject {
    plus: HilbObject,
    minus: HilbObject,
}

impl GradedHilbObject {
    pub fn new(plus: HilbObject, minus: HilbObject) -> Result<Self> {
        if plus.ctx() != minus.ctx() {
            return Err(Error::Structure(
                "graded halves over different contexts".into(),
            ));
        }
        Ok(GradedHilbObject { plus, minus })
    }

    /// Convenience constructor from `(dim H⁺(c), dim H⁻(c))` pairs.
    pub fn from_dims(ctx: Arc<CategoryContext>, dims: &[(usize, usize)]) -> Result<Self> {
        let plus = HilbObject::new(ctx.clone(), dims.iter().map(|d| d.0).collect())?;
        let minus = HilbObject::new(ctx, dims.iter().map(|d| d.1).collect())?;
        Self::new(plus, minus)
    }

    pub fn plus(&self) -> &HilbObject {
        &self.plus
    }

    pub fn minus(&self) -> &HilbObject {
        &self.minus
    }

    pub fn ctx(&self) -> &Arc<CategoryContext> {
        self.plus.ctx()
    }

    pub fn num_simples(&self) -> usize {
        self.plus.dims().len()
    }

    pub fn dims(&self, simple: usize) -> (usize, usize) {
        (self.plus.dim(simple), self.minus.dim(simple))
    }

    /// The ungraded object `H⁺ ⊕ H⁻`.
    pub fn total(&self) -> HilbObject {
        self.plus.direct_sum(&self.minus).expect("same context")
    }
}

/// Z₂-degree of a graded operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn of_degree(degree: usize) -> Parity {
        if degree.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn product(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }

    fn sum(self, other: Parity) -> Parity {
        if self == other {
            self
        } else {
            Parity::Mixed
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::Mixed => Parity::Mixed,
        }
    }
}

/// The four blocks of a graded operator over one simple.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedBlock {
    pub pp: ComplexMatrix,
    pub pm: ComplexMatrix,
    pub mp: ComplexMatrix,
    pub mm: ComplexMatrix,
}

impl GradedBlock {
    fn zeros(np: usize, nm: usize) -> Self {
        GradedBlock {
            pp: ComplexMatrix::zeros(np, np),
            pm: ComplexMatrix::zeros(np, nm),
            mp: ComplexMatrix::zeros(nm, np),
            mm: ComplexMatrix::zeros(nm, nm),
        }
    }

    fn map(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        GradedBlock {
            pp: f(&self.pp),
            pm: f(&self.pm),
            mp: f(&self.mp),
            mm: f(&self.mm),
        }
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix,
    ) -> Self {
        GradedBlock {
            pp: f(&self.pp, &other.pp),
            pm: f(&self.pm, &other.pm),
            mp: f(&self.mp, &other.mp),
            mm: f(&self.mm, &other.mm),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        GradedBlock {
            pp: &(&self.pp * &o.pp) + &(&self.pm * &o.mp),
            pm: &(&self.pp * &o.pm) + &(&self.pm * &o.mm),
            mp: &(&self.mp * &o.pp) + &(&self.mm * &o.mp),
            mm: &(&self.mp * &o.pm) + &(&self.mm * &o.mm),
        }
    }

    /// The full `(n⁺+n⁻)` square matrix.
    pub fn assemble(&self) -> ComplexMatrix {
        ComplexMatrix::block2x2(&self.pp, &self.pm, &self.mp, &self.mm)
    }
}

/// An endomorphism of a graded object with declared parity.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedOperator {
    space: GradedHilbObject,
    blocks: Vec<GradedBlock>,
    parity: Parity,
}

impl GradedOperator {
    /// Checks block shapes and that the blocks forbidden by `parity` vanish.
    pub fn new(space: GradedHilbObject, blocks: Vec<GradedBlock>, parity: Parity) -> Result<Self> {
        if blocks.len() != space.num_simples() {
            return Err(Error::Structure(format!(
                "{} graded blocks for {} simples",
                blocks.len(),
                space.num_simples()
            )));
        }
        for (c, b) in blocks.iter().enumerate() {
            let (np, nm) = space.dims(c);
            let ok = b.pp.shape() == (np, np)
                && b.pm.shape() == (np, nm)
                && b.mp.shape() == (nm, np)
                && b.mm.shape() == (nm, nm);
            if !ok {
                return Err(Error::Structure(format!(
                    "graded block for simple {:?} does not match dims ({np}, {nm})",
                    space.ctx().simples()[c]
                )));
            }
            if ![&b.pp, &b.pm, &b.mp, &b.mm].iter().all(|m| m.is_finite()) {
                return Err(Error::InvalidInput(
                    "graded block has non-finite entries".into(),
                ));
            }
            let off = b.pm.max_abs().max(b.mp.max_abs());
            let diag = b.pp.max_abs().max(b.mm.max_abs());
            match parity {
                Parity::Even if off != 0.0 => {
                    return Err(Error::Structure(
                        "operator declared even has off-diagonal blocks".into(),
                    ))
                }
                Parity::Odd if diag != 0.0 => {
                    return Err(Error::Structure(
                        "operator declared odd has diagonal blocks".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(GradedOperator {
            space,
            blocks,
            parity,
        })
    }

    /// Even operator from its `pp` and `mm` blocks, one pair per simple.
    pub fn even(
        space: GradedHilbObject,
        pp: Vec<ComplexMatrix>,
        mm: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        if pp.len() != space.num_simples() || mm.len() != space.num_simples() {
            return Err(Error::Structure(
                "one pp and one mm block per simple required".into(),
            ));
        }
        let blocks = pp
            .into_iter()
            .zip(mm)
            .enumerate()
            .map(|(c, (pp, mm))| {
                let (np, nm) = space.dims(c);
                GradedBlock {
                    pp,
                    pm: ComplexMatrix::zeros(np, nm),
                    mp: ComplexMatrix::zeros(nm, np),
                    mm,
                }
            })
            .collect();
        Self::new(space, blocks, Parity::Even)
    }

    /// Odd operator from `pm: H⁻→H⁺` and `mp: H⁺→H⁻` blocks.
    pub fn odd(
        space: GradedHilbObject,
        pm: Vec<ComplexMatrix>,
        mp: Vec<ComplexMatrix>,
    ) -> Result<Self> {
        if pm.len() != space.num_simples() || mp.len() != space.num_simples() {
            return Err(Error::Structure(
                "one pm and one mp block per simple required".into(),
            ));
        }
        let blocks = pm
            .into_iter()
            .zip(mp)
            .enumerate()
            .map(|(c, (pm, mp))| {
                let (np, nm) = space.dims(c);
                GradedBlock {
                    pp: ComplexMatrix::zeros(np, np),
                    pm,
                    mp,
                    mm: ComplexMatrix::zeros(nm, nm),
                }
            })
            .collect();
        Self::new(space, blocks, Parity::Odd)
    }

    pub fn zero(space: &GradedHilbObject) -> Self {
        let blocks = (0..space.num_simples())
            .map(|c| {
                let (np, nm) = space.dims(c);
                GradedBlock::zeros(np, nm)
            })
            .collect();
        GradedOperator {
            space: space.clone(),
            blocks,
            parity: Parity::Even,
        }
    }

    pub fn identity(space: &GradedHilbObject) -> Self {
        Self::scaled_grading(space, 1.0)
    }

    /// The grading `ε = id_{H⁺} ⊕ (−id_{H⁻})`.
    pub fn grading(space: &GradedHilbObject) -> Self {
        Self::scaled_grading(space, -1.0)
    }

    fn scaled_grading(space: &GradedHilbObject, minus_sign: f64) -> Self {
        let blocks = (0..space.num_simples())
            .map(|c| {
                let (np, nm) = space.dims(c);
                let mut b = GradedBlock::zeros(np, nm);
                b.pp = ComplexMatrix::identity(np);
                b.mm = ComplexMatrix::identity(nm).scale(c64(minus_sign, 0.0));
                b
            })
            .collect();
        GradedOperator {
            space: space.clone(),
            blocks,
            parity: Parity::Even,
        }
    }

    /// `antidiag(id, id)`; needs `dim H⁺(c) = dim H⁻(c)` for every simple.
    pub fn standard_symmetry(space: &GradedHilbObject) -> Result<Self> {
        let mut pm = Vec::new();
        let mut mp = Vec::new();
        for c in 0..space.num_simples() {
            let (np, nm) = space.dims(c);
            if np != nm {
                return Err(Error::Structure(format!(
                    "antidiag(id, id) needs equal graded dims, simple {c} has ({np}, {nm})"
                )));
            }
            pm.push(ComplexMatrix::identity(np));
            mp.push(ComplexMatrix::identity(np));
        }
        Self::odd(space.clone(), pm, mp)
    }

    pub fn space(&self) -> &GradedHilbObject {
        &self.space
    }

    pub fn blocks(&self) -> &[GradedBlock] {
        &self.blocks
    }

    pub fn block(&self, simple: usize) -> &GradedBlock {
        &self.blocks[simple]
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn scale(&self, factor: C64) -> Self {
        GradedOperator {
            space: self.space.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| b.map(|m| m.scale(factor)))
                .collect(),
            parity: self.parity,
        }
    }

    pub fn even_part(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| GradedBlock {
                pp: b.pp.clone(),
                pm: ComplexMatrix::zeros(b.pm.rows(), b.pm.cols()),
                mp: ComplexMatrix::zeros(b.mp.rows(), b.mp.cols()),
                mm: b.mm.clone(),
            })
            .collect();
        GradedOperator {
            space: self.space.clone(),
            blocks,
            parity: Parity::Even,
        }
    }

    pub fn odd_part(&self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| GradedBlock {
                pp: ComplexMatrix::zeros(b.pp.rows(), b.pp.cols()),
                pm: b.pm.clone(),
                mp: b.mp.clone(),
                mm: ComplexMatrix::zeros(b.mm.rows(), b.mm.cols()),
            })
            .collect();
        GradedOperator {
            space: self.space.clone(),
            blocks,
            parity: Parity::Odd,
        }
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Structure(
                "graded operators act on different objects".into(),
            ));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(self * other)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(self + other)
    }

    /// `Σ_c trace(θ_c)` of the full block on `H⁺(c) ⊕ H⁻(c)`.
    pub fn total_trace(&self) -> C64 {
        self.blocks
            .iter()
            .map(|b| b.pp.trace().expect("square") + b.mm.trace().expect("square"))
            .sum()
    }

    /// The same operator as an ungraded morphism of `H⁺ ⊕ H⁻`.
    pub fn to_morphism(&self) -> CatMorphism {
        let total = self.space.total();
        let blocks = self.blocks.iter().map(GradedBlock::assemble).collect();
        CatMorphism::new(total.clone(), total, blocks).expect("assembled blocks conform")
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                b.pp.max_abs()
                    .max(b.pm.max_abs())
                    .max(b.mp.max_abs())
                    .max(b.mm.max_abs())
            })
            .fold(0.0, f64::max)
    }

    /// `sup_c ||θ_c||`.
    pub fn operator_norm(&self) -> f64 {
        sup_operator_norm(&self.to_morphism())
    }

    /// `sup_c ||θ_c||_p`.
    pub fn schatten_norm(&self, p: f64) -> Result<f64> {
        sup_schatten_norm(&self.to_morphism(), p)
    }
}

impl Mul<&GradedOperator> for &GradedOperator {
    type Output = GradedOperator;
    fn mul(self, rhs: &GradedOperator) -> GradedOperator {
        debug_assert_eq!(self.space, rhs.space);
        GradedOperator {
            space: self.space.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
            parity: self.parity.product(rhs.parity),
        }
    }
}

impl Add<&GradedOperator> for &GradedOperator {
    type Output = GradedOperator;
    fn add(self, rhs: &GradedOperator) -> GradedOperator {
        debug_assert_eq!(self.space, rhs.space);
        GradedOperator {
            space: self.space.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a.zip(b, |x, y| x + y))
                .collect(),
            parity: self.parity.sum(rhs.parity),
        }
    }
}

impl Sub<&GradedOperator> for &GradedOperator {
    type Output = GradedOperator;
    fn sub(self, rhs: &GradedOperator) -> GradedOperator {
        debug_assert_eq!(self.space, rhs.space);
        GradedOperator {
            space: self.space.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a.zip(b, |x, y| x - y))
                .collect(),
            parity: self.parity.sum(rhs.parity),
        }
    }
}

impl Neg for &GradedOperator {
    type Output = GradedOperator;
    fn neg(self) -> GradedOperator {
        self.scale(c64(-1.0, 0.0))
    }
}

/// A finite-dimensional Fredholm module: graded object, even representation
/// `ρ` of a finite algebra, odd symmetry `F`, and a declared summability exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct FredholmModule {
    space: GradedHilbObject,
    algebra: Arc<FiniteAlgebra>,
    rho: Vec<GradedOperator>,
    symmetry: GradedOperator,
    summability: f64,
}

/// Residuals of the Fredholm module axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct FredholmReport {
    /// `||F² − id||`
    pub f_squared_residual: f64,
    /// `||Fε + εF||`
    pub anticommutation_residual: f64,
    /// `max_{i,j} ||ρ(e_i)ρ(e_j) − Σ_k c_ijk ρ(e_k)||`
    pub homomorphism_residual: f64,
    /// `sup_c ||[F, ρ(e_i)]||_p` per basis label.
    pub commutator_schatten_norms: Vec<(String, f64)>,
    pub tolerance: f64,
    pub passed: bool,
}

impl FredholmModule {
    /// Builds a module with `F = [[0, Q], [P, 0]]` from its blocks per simple.
    pub fn new(
        space: GradedHilbObject,
        algebra: Arc<FiniteAlgebra>,
        rho: Vec<GradedOperator>,
        q_blocks: Vec<ComplexMatrix>,
        p_blocks: Vec<ComplexMatrix>,
        summability: f64,
    ) -> Result<Self> {
        let symmetry = GradedOperator::odd(space.clone(), q_blocks, p_blocks)?;
        Self::from_operators(space, algebra, rho, symmetry, summability)
    }

    pub fn from_operators(
        space: GradedHilbObject,
        algebra: Arc<FiniteAlgebra>,
        rho: Vec<GradedOperator>,
        symmetry: GradedOperator,
        summability: f64,
    ) -> Result<Self> {
        if !(summability >= 1.0) || summability.is_infinite() {
            return Err(Error::Domain(format!(
                "summability exponent must be >= 1, got {summability}"
            )));
        }
        if rho.len() != algebra.dim() {
            return Err(Error::Structure(format!(
                "{} representation operators for an algebra of dimension {}",
                rho.len(),
                algebra.dim()
            )));
        }
        for (i, r) in rho.iter().enumerate() {
            if r.space != space {
                return Err(Error::Structure(format!(
                    "ρ({}) acts on a different object",
                    algebra.basis()[i]
                )));
            }
            if r.parity != Parity::Even {
                return Err(Error::Structure(format!(
                    "ρ({}) must be even",
                    algebra.basis()[i]
                )));
            }
        }
        if symmetry.space != space {
            return Err(Error::Structure("F acts on a different object".into()));
        }
        if symmetry.parity != Parity::Odd {
            return Err(Error::Structure("F must be odd".into()));
        }
        Ok(FredholmModule {
            space,
            algebra,
            rho,
            symmetry,
            summability,
        })
    }

    pub fn space(&self) -> &GradedHilbObject {
        &self.space
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn rho(&self) -> &[GradedOperator] {
        &self.rho
    }

    pub fn symmetry(&self) -> &GradedOperator {
        &self.symmetry
    }

    pub fn summability(&self) -> f64 {
        self.summability
    }

    pub fn grading(&self) -> GradedOperator {
        GradedOperator::grading(&self.space)
    }

    /// Replaces `F`, keeping everything else.
    pub fn with_symmetry(&self, symmetry: GradedOperator) -> Result<Self> {
        Self::from_operators(
            self.space.clone(),
            self.algebra.clone(),
            self.rho.clone(),
            symmetry,
            self.summability,
        )
    }

    /// Replaces `ρ(e_index)`.
    pub fn with_rho(&self, index: usize, op: GradedOperator) -> Result<Self> {
        let mut rho = self.rho.clone();
        if index >= rho.len() {
            return Err(Error::Structure(format!("no basis element {index}")));
        }
        rho[index] = op;
        Self::from_operators(
            self.space.clone(),
            self.algebra.clone(),
            rho,
            self.symmetry.clone(),
            self.summability,
        )
    }

    /// `ρ` on the basis of `Ã`: the generators followed by the identity.
    pub fn unital_generators(&self) -> Vec<GradedOperator> {
        let mut ops = self.rho.clone();
        ops.push(GradedOperator::identity(&self.space));
        ops
    }

    /// `ρ(x)`. An element with `dim A + 1` coordinates is read as `(a, λ) ∈ Ã`
    /// and picks up `λ·id`.
    pub fn apply_rho(&self, x: &AlgebraElement) -> Result<GradedOperator> {
        let n = self.algebra.dim();
        let ops = if x.dim() == n {
            self.rho.clone()
        } else if x.dim() == n + 1 {
            self.unital_generators()
        } else {
            return Err(Error::Structure(format!(
                "element with {} coordinates for an algebra of dimension {n}",
                x.dim()
            )));
        };
        let mut acc = GradedOperator::zero(&self.space);
        for (coef, op) in x.coords.iter().zip(&ops) {
            if *coef != C64::new(0.0, 0.0) {
                acc = &acc + &op.scale(*coef);
            }
        }
        Ok(acc)
    }

    /// Numerical check of `F² = id`, `Fε = −εF` and the homomorphism property.
    pub fn validate(&self, tol: f64) -> FredholmReport {
        let id = GradedOperator::identity(&self.space);
        let eps = self.grading();
        let f = &self.symmetry;
        let f_squared_residual = (&(f * f) - &id).operator_norm();
        let anticommutation_residual = (&(f * &eps) + &(&eps * f)).operator_norm();

        let n = self.algebra.dim();
        let mut homomorphism_residual = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let lhs = &self.rho[i] * &self.rho[j];
                let rhs = self
                    .apply_rho(&AlgebraElement::new(
                        self.algebra.product_of_basis(i, j).to_vec(),
                    ))
                    .expect("conforming");
                homomorphism_residual = homomorphism_residual.max((&lhs - &rhs).operator_norm());
            }
        }

        let p = self.summability;
        let commutator_schatten_norms = self
            .algebra
            .basis()
            .iter()
            .zip(&self.rho)
            .map(|(label, r)| {
                let comm = &(f * r) - &(r * f);
                (label.clone(), comm.schatten_norm(p).expect("p >= 1"))
            })
            .collect();

        let f_scale = f.operator_norm().powi(2).max(1.0);
        let rho_scale = self
            .rho
            .iter()
            .map(|r| r.operator_norm())
            .fold(1.0, f64::max)
            .powi(2);
        let passed = f_squared_residual <= tol * f_scale
            && anticommutation_residual <= tol * f_scale
            && homomorphism_residual <= tol * rho_scale;
        FredholmReport {
            f_squared_residual,
            anticommutation_residual,
            homomorphism_residual,
            commutator_schatten_norms,
            tolerance: tol,
            passed,
        }
    }
}

/// Free-function form of [`FredholmModule::validate`].
pub fn validate_fredholm(module: &FredholmModule, tol: f64) -> FredholmReport {
    module.validate(tol)
}

/// Free-function form of [`FredholmModule::apply_rho`].
pub fn apply_rho(module: &FredholmModule, x: &AlgebraElement) -> Result<GradedOperator> {
    module.apply_rho(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::proj_module;

    #[test]
    fn proj_validates_cleanly() {
        let fm = proj_module();
        for p in [1.0, 2.0, 3.5] {
            let fm = FredholmModule::from_operators(
                fm.space().clone(),
                fm.algebra().clone(),
                fm.rho().to_vec(),
                fm.symmetry().clone(),
                p,
            )
            .unwrap();
            let r = fm.validate(1e-12);
            assert!(r.passed);
            assert_eq!(r.f_squared_residual, 0.0);
            assert_eq!(r.anticommutation_residual, 0.0);
            assert_eq!(r.homomorphism_residual, 0.0);
            // [F, ρ(e)] = [[0, -1], [1, 0]] has singular values (1, 1)
            assert!((r.commutator_schatten_norms[0].1 - 2f64.powf(1.0 / p)).abs() < 1e-12);
        }
    }

    #[test]
    fn doubled_symmetry_reports_three() {
        let fm = proj_module();
        let two_f = fm.symmetry().scale(c64(2.0, 0.0));
        let r = fm.with_symmetry(two_f).unwrap().validate(1e-9);
        assert!((r.f_squared_residual - 3.0).abs() < 1e-12);
        assert!(!r.passed);
    }

    #[test]
    fn non_idempotent_rho_reports_two() {
        let fm = proj_module();
        let space = fm.space().clone();
        let bad = GradedOperator::even(
            space,
            vec![ComplexMatrix::real_diag(&[2.0])],
            vec![ComplexMatrix::real_diag(&[0.0])],
        )
        .unwrap();
        let r = fm.with_rho(0, bad).unwrap().validate(1e-9);
        assert!((r.homomorphism_residual - 2.0).abs() < 1e-12);
        assert!(!r.passed);
    }

    #[test]
    fn apply_rho_examples() {
        let fm = proj_module();
        let one = c64(1.0, 0.0);
        let e = fm.apply_rho(&AlgebraElement::new(vec![one])).unwrap();
        assert_eq!(e, fm.rho()[0]);
        let z = fm.apply_rho(&AlgebraElement::zero(1)).unwrap();
        assert_eq!(z.max_abs(), 0.0);
        // (e, 1) in Ã -> diag(1, 0) + id = diag(2, 1)
        let et = fm.apply_rho(&AlgebraElement::new(vec![one, one])).unwrap();
        assert_eq!(et.block(0).pp, ComplexMatrix::real_diag(&[2.0]));
        assert_eq!(et.block(0).mm, ComplexMatrix::real_diag(&[1.0]));
        assert!(fm.apply_rho(&AlgebraElement::zero(3)).is_err());
    }

    #[test]
    fn parity_bookkeeping() {
        let fm = proj_module();
        let f = fm.symmetry();
        let r = &fm.rho()[0];
        assert_eq!((f * r).parity(), Parity::Odd);
        assert_eq!((f * f).parity(), Parity::Even);
        assert_eq!((f + r).parity(), Parity::Mixed);
        let comm = &(f * r) - &(r * f);
        assert_eq!(comm.parity(), Parity::Odd);
        let eps = fm.grading();
        let id = GradedOperator::identity(fm.space());
        assert_eq!(&eps * &eps, id);
    }

    #[test]
    fn declared_parity_enforced() {
        let fm = proj_module();
        let mixed = fm.symmetry() + &fm.rho()[0];
        let blocks = mixed.blocks().to_vec();
        assert!(GradedOperator::new(fm.space().clone(), blocks.clone(), Parity::Even).is_err());
        assert!(GradedOperator::new(fm.space().clone(), blocks.clone(), Parity::Odd).is_err());
        assert!(GradedOperator::new(fm.space().clone(), blocks, Parity::Mixed).is_ok());
        assert!(fm.with_rho(0, fm.symmetry().clone()).is_err());
        assert!(fm.with_symmetry(fm.rho()[0].clone()).is_err());
    }

    #[test]
    fn grading_times_even_has_signed_blocks() {
        let fm = proj_module();
        let theta = &fm.rho()[0].scale(c64(3.0, 0.0)) + &GradedOperator::identity(fm.space());
        let et = &fm.grading() * &theta;
        assert_eq!(et.block(0).pp, theta.block(0).pp);
        assert_eq!(et.block(0).mm, theta.block(0).mm.scale(c64(-1.0, 0.0)));
    }
}

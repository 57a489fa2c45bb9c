//! Smooth families of Fredholm modules and the transgression cochain.
//!
//! A path is given by matrix-valued functions of `t` per block: polynomials,
//! products, inverses and piecewise concatenations, all with exact
//! derivatives. For a path with `F = antidiag(id, id)`, the density
//!
//! `φ_t(a₀, …, a_{p+1}) = Σ_{k=1}^{p+1} (−1)^{k−1} Trace(ε ρ_t(a₀) dρ_t(a₁) … δ_t(a_k) … dρ_t(a_{p+1}))`
//!
//! on `Ã` integrates to a cochain `φ` with `B₀φ = τ_l − τ₀` on `A`.

use std::sync::Arc;

use crate::algebra::{AlgebraElement, FiniteAlgebra};
use crate::cyclic::{
    b0_op, cohomologous, cyclic_symmetrize, hochschild_b, s_operator, CohomologyDecision,
    CyclicCochain,
};
use crate::error::{Error, Result};
use crate::fredholm::{FredholmModule, FredholmReport, GradedHilbObject, GradedOperator};
use crate::linalg::{c64, ComplexMatrix, C64};
use crate::omega::{chern_character, cycle_constant, d_op};

/// Highest polynomial degree accepted in a path block.
pub const MAX_POLY_DEGREE: usize = 8;

/// Matching tolerance for consecutive pieces of a piecewise path.
pub const PIECE_MATCH_TOLERANCE: f64 = 1e-10;

/// `Σ_k M_k t^k`, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    coeffs: Vec<ComplexMatrix>,
}

impl PolyMatrix {
    pub fn new(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| {
            Error::InvalidInput("polynomial matrix needs at least one coefficient".into())
        })?;
        if coeffs.len() > MAX_POLY_DEGREE + 1 {
            return Err(Error::InvalidInput(format!(
                "polynomial degree {} exceeds {MAX_POLY_DEGREE}",
                coeffs.len() - 1
            )));
        }
        let shape = first.shape();
        if coeffs.iter().any(|c| c.shape() != shape) {
            return Err(Error::Structure(
                "polynomial coefficients differ in shape".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(
                "non-finite polynomial coefficient".into(),
            ));
        }
        Ok(PolyMatrix { coeffs })
    }

    pub fn constant(m: ComplexMatrix) -> Self {
        PolyMatrix { coeffs: vec![m] }
    }

    /// `(1 − t) M₀ + t M₁`.
    pub fn linear(m0: &ComplexMatrix, m1: &ComplexMatrix) -> Result<Self> {
        Self::new(vec![m0.clone(), m1.checked_add(&m0.scale(c64(-1.0, 0.0)))?])
    }

    pub fn coeffs(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn shape(&self) -> (usize, usize) {
        self.coeffs[0].shape()
    }

    pub fn eval(&self, t: f64) -> ComplexMatrix {
        let mut acc = self.coeffs[self.coeffs.len() - 1].clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &acc.scale(c64(t, 0.0)) + c;
        }
        acc
    }

    pub fn derivative_at(&self, t: f64) -> ComplexMatrix {
        let (r, c) = self.shape();
        let mut acc = ComplexMatrix::zeros(r, c);
        for (k, m) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = &acc.scale(c64(t, 0.0)) + &m.scale(c64(k as f64, 0.0));
        }
        acc
    }
}

/// A matrix-valued function of `t` with an exact derivative.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixPath {
    Poly(PolyMatrix),
    /// Left-to-right product.
    Product(Vec<MatrixPath>),
    Inverse(Box<MatrixPath>),
    /// `pieces[i]` is used on `[breaks[i], breaks[i+1]]`, in global `t`.
    Piecewise {
        breaks: Vec<f64>,
        pieces: Vec<MatrixPath>,
    },
}

fn singular(t: f64, detail: impl Into<String>) -> Error {
    Error::Singular {
        t,
        detail: detail.into(),
    }
}

fn checked_inverse(m: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::Structure(format!(
            "cannot invert a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let inv = m
        .try_inverse()
        .ok_or_else(|| singular(t, "matrix is not invertible"))?;
    let cond = m.max_abs() * inv.max_abs();
    if !inv.is_finite() || cond > 1e12 {
        return Err(singular(
            t,
            format!("matrix is numerically singular (condition estimate {cond:.3e})"),
        ));
    }
    Ok(inv)
}

impl MatrixPath {
    pub fn constant(m: ComplexMatrix) -> Self {
        MatrixPath::Poly(PolyMatrix::constant(m))
    }

    pub fn poly(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        Ok(MatrixPath::Poly(PolyMatrix::new(coeffs)?))
    }

    pub fn inverse(self) -> Self {
        MatrixPath::Inverse(Box::new(self))
    }

    /// Checks break ordering, shapes, and continuity at interior breaks.
    pub fn piecewise(breaks: Vec<f64>, pieces: Vec<MatrixPath>) -> Result<Self> {
        if pieces.is_empty() || breaks.len() != pieces.len() + 1 {
            return Err(Error::Structure(
                "piecewise path needs n pieces and n + 1 breaks".into(),
            ));
        }
        if breaks.windows(2).any(|w| !(w[0] < w[1])) || breaks.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidInput(
                "breaks must be finite and strictly increasing".into(),
            ));
        }
        for (i, w) in pieces.windows(2).enumerate() {
            let t = breaks[i + 1];
            let gap = (&w[0].value(t)? - &w[1].value(t)?).max_abs();
            if gap > PIECE_MATCH_TOLERANCE {
                return Err(Error::Structure(format!(
                    "pieces do not match at t = {t} (gap {gap:.3e})"
                )));
            }
        }
        Ok(MatrixPath::Piecewise { breaks, pieces })
    }

    fn piece_at(breaks: &[f64], t: f64) -> usize {
        let n = breaks.len() - 1;
        (0..n).find(|&i| t < breaks[i + 1]).unwrap_or(n - 1)
    }

    pub fn value(&self, t: f64) -> Result<ComplexMatrix> {
        match self {
            MatrixPath::Poly(p) => Ok(p.eval(t)),
            MatrixPath::Product(factors) => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::Structure("empty product".into()))?;
                let mut acc = first.value(t)?;
                for f in it {
                    acc = acc.checked_mul(&f.value(t)?)?;
                }
                Ok(acc)
            }
            MatrixPath::Inverse(inner) => checked_inverse(&inner.value(t)?, t),
            MatrixPath::Piecewise { breaks, pieces } => pieces[Self::piece_at(breaks, t)].value(t),
        }
    }

    /// Value and exact derivative at `t`.
    pub fn value_and_derivative(&self, t: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
        match self {
            MatrixPath::Poly(p) => Ok((p.eval(t), p.derivative_at(t))),
            MatrixPath::Product(factors) => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::Structure("empty product".into()))?;
                let (mut v, mut d) = first.value_and_derivative(t)?;
                for f in it {
                    let (fv, fd) = f.value_and_derivative(t)?;
                    d = d.checked_mul(&fv)?.checked_add(&v.checked_mul(&fd)?)?;
                    v = v.checked_mul(&fv)?;
                }
                Ok((v, d))
            }
            MatrixPath::Inverse(inner) => {
                let (v, d) = inner.value_and_derivative(t)?;
                let inv = checked_inverse(&v, t)?;
                let dinv = (&(&inv * &d) * &inv).scale(c64(-1.0, 0.0));
                Ok((inv, dinv))
            }
            MatrixPath::Piecewise { breaks, pieces } => {
                pieces[Self::piece_at(breaks, t)].value_and_derivative(t)
            }
        }
    }

    pub fn derivative(&self, t: f64) -> Result<ComplexMatrix> {
        Ok(self.value_and_derivative(t)?.1)
    }

    /// Shape, read off at `t = 0`.
    pub fn shape(&self) -> Result<(usize, usize)> {
        Ok(self.value(0.0)?.shape())
    }
}

/// The even blocks of `ρ_t(e_i)` on one simple.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenPath {
    pub pp: MatrixPath,
    pub mm: MatrixPath,
}

/// The odd blocks of `F_t = [[0, Q_t], [P_t, 0]]` on one simple.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryPath {
    /// `pm` block, `H⁻ → H⁺`
    pub q: MatrixPath,
    /// `mp` block, `H⁺ → H⁻`
    pub p: MatrixPath,
}

impl SymmetryPath {
    /// `Q_t = P_t⁻¹`.
    pub fn from_p(p: MatrixPath) -> Self {
        SymmetryPath {
            q: p.clone().inverse(),
            p,
        }
    }
}

/// A family `t ↦ (ρ_t, F_t)` on a fixed graded object, `t ∈ [0, t_end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPath {
    space: GradedHilbObject,
    algebra: Arc<FiniteAlgebra>,
    /// `rho[i][c]` for basis element `i` and simple `c`.
    rho: Vec<Vec<EvenPath>>,
    /// `None` means the constant `antidiag(id, id)`.
    symmetry: Option<Vec<SymmetryPath>>,
    summability: f64,
    t_end: f64,
}

impl OperatorPath {
    pub fn new(
        space: GradedHilbObject,
        algebra: Arc<FiniteAlgebra>,
        rho: Vec<Vec<EvenPath>>,
        symmetry: Option<Vec<SymmetryPath>>,
        summability: f64,
        t_end: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&t_end) {
            return Err(Error::Domain(format!(
                "path length must lie in [0, 1], got {t_end}"
            )));
        }
        if rho.len() != algebra.dim() {
            return Err(Error::Structure(format!(
                "{} ρ paths for an algebra of dimension {}",
                rho.len(),
                algebra.dim()
            )));
        }
        let k = space.num_simples();
        for (i, per_simple) in rho.iter().enumerate() {
            if per_simple.len() != k {
                return Err(Error::Structure(format!(
                    "ρ({}) needs one block pair per simple",
                    algebra.basis()[i]
                )));
            }
            for (c, b) in per_simple.iter().enumerate() {
                let (np, nm) = space.dims(c);
                if b.pp.shape()? != (np, np) || b.mm.shape()? != (nm, nm) {
                    return Err(Error::Structure(format!(
                        "ρ({}) on simple {:?} does not match dims ({np}, {nm})",
                        algebra.basis()[i],
                        space.ctx().simples()[c]
                    )));
                }
            }
        }
        match &symmetry {
            Some(f) => {
                if f.len() != k {
                    return Err(Error::Structure(
                        "F path needs one block pair per simple".into(),
                    ));
                }
                for (c, b) in f.iter().enumerate() {
                    let (np, nm) = space.dims(c);
                    if b.q.shape()? != (np, nm) || b.p.shape()? != (nm, np) {
                        return Err(Error::Structure(format!(
                            "F on simple {:?} does not match dims ({np}, {nm})",
                            space.ctx().simples()[c]
                        )));
                    }
                }
            }
            None => {
                GradedOperator::standard_symmetry(&space)?;
            }
        }
        let path = OperatorPath {
            space,
            algebra,
            rho,
            symmetry,
            summability,
            t_end,
        };
        // surfaces a bad summability exponent or parity right away
        path.eval_path(0.0)?;
        Ok(path)
    }

    /// The constant path at `fm`.
    pub fn constant(fm: &FredholmModule, t_end: f64) -> Result<Self> {
        let space = fm.space().clone();
        let rho = fm
            .rho()
            .iter()
            .map(|r| {
                r.blocks()
                    .iter()
                    .map(|b| EvenPath {
                        pp: MatrixPath::constant(b.pp.clone()),
                        mm: MatrixPath::constant(b.mm.clone()),
                    })
                    .collect()
            })
            .collect();
        let standard = GradedOperator::standard_symmetry(&space).ok();
        let symmetry = if standard.as_ref() == Some(fm.symmetry()) {
            None
        } else {
            Some(
                fm.symmetry()
                    .blocks()
                    .iter()
                    .map(|b| SymmetryPath {
                        q: MatrixPath::constant(b.pm.clone()),
                        p: MatrixPath::constant(b.mp.clone()),
                    })
                    .collect(),
            )
        };
        Self::new(
            space,
            fm.algebra().clone(),
            rho,
            symmetry,
            fm.summability(),
            t_end,
        )
    }

    pub fn space(&self) -> &GradedHilbObject {
        &self.space
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn rho(&self) -> &[Vec<EvenPath>] {
        &self.rho
    }

    pub fn symmetry(&self) -> Option<&[SymmetryPath]> {
        self.symmetry.as_deref()
    }

    pub fn summability(&self) -> f64 {
        self.summability
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Whether `F` is the constant `antidiag(id, id)`.
    pub fn has_standard_symmetry(&self) -> bool {
        self.symmetry.is_none()
    }

    fn check_t(&self, t: f64) -> Result<()> {
        if !(0.0..=self.t_end).contains(&t) {
            return Err(Error::Domain(format!(
                "t = {t} outside [0, {}]",
                self.t_end
            )));
        }
        Ok(())
    }

    fn rho_at(&self, t: f64) -> Result<Vec<GradedOperator>> {
        self.rho
            .iter()
            .map(|per_simple| {
                let pp = per_simple
                    .iter()
                    .map(|b| b.pp.value(t))
                    .collect::<Result<Vec<_>>>()?;
                let mm = per_simple
                    .iter()
                    .map(|b| b.mm.value(t))
                    .collect::<Result<Vec<_>>>()?;
                GradedOperator::even(self.space.clone(), pp, mm)
            })
            .collect()
    }

    fn symmetry_at(&self, t: f64) -> Result<GradedOperator> {
        match &self.symmetry {
            None => GradedOperator::standard_symmetry(&self.space),
            Some(f) => {
                let q = f.iter().map(|b| b.q.value(t)).collect::<Result<Vec<_>>>()?;
                let p = f.iter().map(|b| b.p.value(t)).collect::<Result<Vec<_>>>()?;
                GradedOperator::odd(self.space.clone(), q, p)
            }
        }
    }

    /// The module at time `t`.
    pub fn eval_path(&self, t: f64) -> Result<FredholmModule> {
        self.check_t(t)?;
        FredholmModule::from_operators(
            self.space.clone(),
            self.algebra.clone(),
            self.rho_at(t)?,
            self.symmetry_at(t)?,
            self.summability,
        )
    }

    /// `δ_t(e_i) = d/dt ρ_t(e_i)` for every basis element.
    pub fn path_derivative(&self, t: f64) -> Result<Vec<GradedOperator>> {
        self.check_t(t)?;
        self.rho
            .iter()
            .map(|per_simple| {
                let pp = per_simple
                    .iter()
                    .map(|b| b.pp.derivative(t))
                    .collect::<Result<Vec<_>>>()?;
                let mm = per_simple
                    .iter()
                    .map(|b| b.mm.derivative(t))
                    .collect::<Result<Vec<_>>>()?;
                GradedOperator::even(self.space.clone(), pp, mm)
            })
            .collect()
    }

    /// `t_i = i·t_end/steps` for `i = 0 … steps`.
    pub fn grid(&self, steps: usize) -> Vec<f64> {
        let steps = steps.max(1);
        (0..=steps)
            .map(|i| self.t_end * i as f64 / steps as f64)
            .collect()
    }
}

/// Free-function form of [`OperatorPath::eval_path`].
pub fn eval_path(path: &OperatorPath, t: f64) -> Result<FredholmModule> {
    path.eval_path(t)
}

/// Free-function form of [`OperatorPath::path_derivative`].
pub fn path_derivative(path: &OperatorPath, t: f64) -> Result<Vec<GradedOperator>> {
    path.path_derivative(t)
}

/// Module axioms along a grid.
#[derive(Debug, Clone)]
pub struct PathValidation {
    pub reports: Vec<(f64, FredholmReport)>,
    pub passed: bool,
}

impl PathValidation {
    pub fn worst_f_squared(&self) -> f64 {
        self.reports
            .iter()
            .map(|(_, r)| r.f_squared_residual)
            .fold(0.0, f64::max)
    }

    pub fn worst_homomorphism(&self) -> f64 {
        self.reports
            .iter()
            .map(|(_, r)| r.homomorphism_residual)
            .fold(0.0, f64::max)
    }

    pub fn worst_anticommutation(&self) -> f64 {
        self.reports
            .iter()
            .map(|(_, r)| r.anticommutation_residual)
            .fold(0.0, f64::max)
    }

    pub fn failures(&self) -> Vec<f64> {
        self.reports
            .iter()
            .filter(|(_, r)| !r.passed)
            .map(|(t, _)| *t)
            .collect()
    }
}

/// Runs the module validator at every point of a `steps`-interval grid.
pub fn validate_path(path: &OperatorPath, steps: usize, tol: f64) -> Result<PathValidation> {
    let reports = path
        .grid(steps)
        .into_iter()
        .map(|t| Ok((t, path.eval_path(t)?.validate(tol))))
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(|(_, r)| r.passed);
    Ok(PathValidation { reports, passed })
}

/// Operators at one time, over the basis of `Ã`.
struct PathKit {
    rho: Vec<GradedOperator>,
    drho: Vec<GradedOperator>,
    delta: Vec<GradedOperator>,
    eps: GradedOperator,
}

impl PathKit {
    fn new(path: &OperatorPath, t: f64) -> Result<Self> {
        let fm = path.eval_path(t)?;
        let rho = fm.unital_generators();
        let drho = rho
            .iter()
            .map(|r| d_op(&fm, r))
            .collect::<Result<Vec<_>>>()?;
        let mut delta = path.path_derivative(t)?;
        delta.push(GradedOperator::zero(path.space()));
        Ok(PathKit {
            rho,
            drho,
            delta,
            eps: fm.grading(),
        })
    }

    fn density(&self, idx: &[usize]) -> C64 {
        let mut total = C64::new(0.0, 0.0);
        for k in 1..idx.len() {
            let mut w = self.rho[idx[0]].clone();
            for (q, &i) in idx.iter().enumerate().skip(1) {
                w = &w
                    * if q == k {
                        &self.delta[i]
                    } else {
                        &self.drho[i]
                    };
            }
            let term = (&self.eps * &w).total_trace();
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
}

fn require_standard(path: &OperatorPath) -> Result<()> {
    if !path.has_standard_symmetry() {
        return Err(Error::Precondition(
            "transgression needs F = antidiag(id, id); normalize the path first".into(),
        ));
    }
    Ok(())
}

fn require_even(p: usize) -> Result<()> {
    if p % 2 == 1 {
        return Err(Error::Domain(format!(
            "transgression needs an even degree, got {p}"
        )));
    }
    Ok(())
}

/// `φ_t` on one tuple of `Ã`-basis indices (length `p + 2`; index `dim A` is the unit).
pub fn transgression_density(path: &OperatorPath, t: f64, tuple: &[usize]) -> Result<C64> {
    require_standard(path)?;
    let dim = path.algebra.dim() + 1;
    if tuple.len() < 2 || tuple.iter().any(|&i| i >= dim) {
        return Err(Error::Structure(format!(
            "density needs at least two indices below {dim}, got {tuple:?}"
        )));
    }
    Ok(PathKit::new(path, t)?.density(tuple))
}

/// The whole tensor of `φ_t` over `Ã`, degree `p + 1`.
pub fn transgression_density_cochain(
    path: &OperatorPath,
    t: f64,
    p: usize,
) -> Result<CyclicCochain> {
    require_standard(path)?;
    require_even(p)?;
    let kit = PathKit::new(path, t)?;
    let alg = Arc::new(path.algebra.unitalize());
    Ok(CyclicCochain::from_fn(alg, p + 1, |idx| kit.density(idx)))
}

/// `(2iπ)^m m! ∫₀^l φ_t dt` by composite Simpson with `steps` subintervals
/// (odd counts are rounded up, minimum 2). The result lives over `Ã`.
pub fn transgression_cochain(path: &OperatorPath, p: usize, steps: usize) -> Result<CyclicCochain> {
    require_standard(path)?;
    require_even(p)?;
    let alg = Arc::new(path.algebra.unitalize());
    if path.t_end == 0.0 {
        return Ok(CyclicCochain::zeros(alg, p + 1));
    }
    let steps = simpson_steps(steps);
    let h = path.t_end / steps as f64;
    let mut acc = CyclicCochain::zeros(alg, p + 1);
    for i in 0..=steps {
        let w = if i == 0 || i == steps {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let t = if i == steps { path.t_end } else { i as f64 * h };
        let phi_t = transgression_density_cochain(path, t, p)?;
        acc = acc.add(&phi_t.scaled(c64(w, 0.0)))?;
    }
    Ok(acc.scaled(cycle_constant(p / 2) * (h / 3.0)))
}

/// The number of Simpson subintervals actually used for a request.
pub fn simpson_steps(steps: usize) -> usize {
    let s = steps.max(2);
    s + s % 2
}

/// `||b φ_t||_∞` over `Ã`.
pub fn check_cocycle_at(path: &OperatorPath, t: f64, p: usize) -> Result<f64> {
    Ok(hochschild_b(&transgression_density_cochain(path, t, p)?).max_abs())
}

/// Conjugates by `T_t = id ⊕ Q_t`, turning `F_t` into `antidiag(id, id)` and
/// `ρ_t⁻(a)` into `Q_t ρ_t⁻(a) P_t`.
///
/// `Q_t P_t = id` is checked on a 64-interval grid; a singular `P_t` there is
/// reported with its time.
pub fn normalize_conjugate(path: &OperatorPath) -> Result<OperatorPath> {
    normalize_conjugate_on(path, 64, 1e-9)
}

/// [`normalize_conjugate`] with an explicit grid and tolerance.
pub fn normalize_conjugate_on(path: &OperatorPath, steps: usize, tol: f64) -> Result<OperatorPath> {
    let Some(f) = &path.symmetry else {
        return Ok(path.clone());
    };
    for t in path.grid(steps) {
        for (c, b) in f.iter().enumerate() {
            let p = b.p.value(t)?;
            checked_inverse(&p, t).map_err(|_| {
                singular(
                    t,
                    format!(
                        "P_t is not invertible on simple {:?}",
                        path.space.ctx().simples()[c]
                    ),
                )
            })?;
            let qp = b.q.value(t)?.checked_mul(&p)?;
            let err = (&qp - &ComplexMatrix::identity(qp.rows())).max_abs();
            if err > tol * p.max_abs().max(1.0) {
                return Err(Error::Precondition(format!(
                    "Q_t P_t differs from id by {err:.3e} at t = {t} on simple {:?}",
                    path.space.ctx().simples()[c]
                )));
            }
        }
    }
    let rho = path
        .rho
        .iter()
        .map(|per_simple| {
            per_simple
                .iter()
                .zip(f)
                .map(|(r, s)| EvenPath {
                    pp: r.pp.clone(),
                    mm: MatrixPath::Product(vec![s.q.clone(), r.mm.clone(), s.p.clone()]),
                })
                .collect()
        })
        .collect();
    OperatorPath::new(
        path.space.clone(),
        path.algebra.clone(),
        rho,
        None,
        path.summability,
        path.t_end,
    )
}

/// Homotopy invariance certificates for one path.
#[derive(Debug, Clone)]
pub struct HomotopyReport {
    pub degree: usize,
    /// Simpson subintervals actually used.
    pub steps: usize,
    /// `||B₀φ − (τ_l − τ₀)||_∞` on `A`.
    pub b0_residual: f64,
    /// `||(1 + λ + … + λ^p)(τ_l − τ₀) − Bφ||_∞` on `A`.
    pub big_b_residual: f64,
    /// `||τ_l − τ₀||_∞`
    pub character_change: f64,
    /// `max(1, max|τ₀|, max|τ_l|)`
    pub scale: f64,
    /// Whether `Sτ_l` and `Sτ₀` agree up to a coboundary.
    pub periodicity_class: CohomologyDecision,
    pub tolerance: f64,
    pub passed: bool,
}

/// Validates the path on the quadrature grid, then compares the integrated
/// transgression with the change of the character and decides whether
/// `Sτ_l ~ Sτ₀`.
pub fn homotopy_check(
    path: &OperatorPath,
    p: usize,
    steps: usize,
    tol: f64,
) -> Result<HomotopyReport> {
    require_standard(path)?;
    require_even(p)?;
    let steps = simpson_steps(steps);
    let validation = validate_path(path, steps, tol)?;
    if !validation.passed {
        return Err(Error::Precondition(format!(
            "path is not a Fredholm module at t = {:?}: worst ||F²-id|| = {:.3e}, worst homomorphism residual = {:.3e}",
            validation.failures(),
            validation.worst_f_squared(),
            validation.worst_homomorphism()
        )));
    }
    let m0 = path.eval_path(0.0)?;
    let ml = path.eval_path(path.t_end)?;
    let tau0 = chern_character(&m0, p)?;
    let taul = chern_character(&ml, p)?;
    let diff = taul.sub(&tau0)?;
    let phi = transgression_cochain(path, p, steps)?;
    let b0 = b0_op(&phi)?.restrict_to_base(&path.algebra)?;
    let b0_residual = b0.sup_distance(&diff)?;
    let big_b_residual = cyclic_symmetrize(&diff).sup_distance(&cyclic_symmetrize(&b0))?;
    let scale = tau0.scale().max(taul.scale());
    let periodicity_class = cohomologous(&s_operator(&ml, p)?, &s_operator(&m0, p)?, tol)?;
    let passed = b0_residual <= tol * scale
        && big_b_residual <= tol * scale * (p as f64 + 1.0)
        && periodicity_class.cohomologous;
    Ok(HomotopyReport {
        degree: p,
        steps,
        b0_residual,
        big_b_residual,
        character_change: diff.max_abs(),
        scale,
        periodicity_class,
        tolerance: tol,
        passed,
    })
}

/// `Σ_c trace(ρ_t(x))`, the quantity kept fixed by the conjugation.
pub fn total_trace_along(path: &OperatorPath, x: &AlgebraElement, t: f64) -> Result<C64> {
    Ok(path.eval_path(t)?.apply_rho(x)?.total_trace())
}

//! Ready-made modules, random instances and paths used by tests and examples.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::FiniteAlgebra;
use crate::category::CategoryContext;
use crate::cyclic::CyclicCochain;
use crate::fredholm::{FredholmModule, GradedBlock, GradedHilbObject, GradedOperator, Parity};
use crate::homotopy::{EvenPath, MatrixPath, OperatorPath, SymmetryPath};
use crate::linalg::{c64, ComplexMatrix, C64};

fn one() -> C64 {
    c64(1.0, 0.0)
}

/// `A = span{e}` with `e·e = e`, no unit.
pub fn proj_algebra() -> FiniteAlgebra {
    FiniteAlgebra::new(vec!["e".into()], vec![vec![vec![one()]]]).expect("valid constants")
}

/// One simple, `H⁺ = H⁻ = C`, `ρ(e) = diag(1, 0)`, `F = antidiag(1, 1)`, `p = 1`.
pub fn proj_module() -> FredholmModule {
    let space = GradedHilbObject::from_dims(CategoryContext::point(), &[(1, 1)]).expect("dims");
    let rho = GradedOperator::even(
        space.clone(),
        vec![ComplexMatrix::real_diag(&[1.0])],
        vec![ComplexMatrix::real_diag(&[0.0])],
    )
    .expect("even");
    let f = GradedOperator::standard_symmetry(&space).expect("balanced");
    FredholmModule::from_operators(space, Arc::new(proj_algebra()), vec![rho], f, 1.0)
        .expect("module")
}

pub fn random_complex(rng: &mut impl Rng) -> C64 {
    c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Entries uniform in the unit square of `C`.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let entries = (0..rows * cols).map(|_| random_complex(rng)).collect();
    ComplexMatrix::from_row_major(rows, cols, entries).expect("shape")
}

/// `I + X/2` with `X` random: invertible with condition number of order one.
pub fn random_well_conditioned(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    loop {
        let m = &ComplexMatrix::identity(n) + &random_matrix(rng, n, n).scale(c64(0.5, 0.0));
        if let Some(inv) = m.try_inverse() {
            if inv.max_abs() < 10.0 {
                return m;
            }
        }
    }
}

pub fn random_graded_operator(
    rng: &mut impl Rng,
    space: &GradedHilbObject,
    parity: Parity,
) -> GradedOperator {
    let blocks = (0..space.num_simples())
        .map(|c| {
            let (np, nm) = space.dims(c);
            let mut b = GradedBlock {
                pp: ComplexMatrix::zeros(np, np),
                pm: ComplexMatrix::zeros(np, nm),
                mp: ComplexMatrix::zeros(nm, np),
                mm: ComplexMatrix::zeros(nm, nm),
            };
            if parity != Parity::Odd {
                b.pp = random_matrix(rng, np, np);
                b.mm = random_matrix(rng, nm, nm);
            }
            if parity != Parity::Even {
                b.pm = random_matrix(rng, np, nm);
                b.mp = random_matrix(rng, nm, np);
            }
            b
        })
        .collect();
    GradedOperator::new(space.clone(), blocks, parity).expect("conforming blocks")
}

pub fn random_cochain(
    rng: &mut impl Rng,
    algebra: &Arc<FiniteAlgebra>,
    degree: usize,
) -> CyclicCochain {
    let len = algebra.dim().pow(degree as u32 + 1);
    let tensor = (0..len).map(|_| random_complex(rng)).collect();
    CyclicCochain::new(algebra.clone(), degree, tensor).expect("shape")
}

/// Small algebras realized by matrices, with their one-dimensional representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseAlgebra {
    /// `{E11, E12}`
    Row,
    /// `{E11, E21}`
    Column,
    /// `{I, E12}`, the dual numbers
    Dual,
    /// `{diag(1,0), diag(0,1)}`
    Diagonal,
    /// `{e}` with `e² = e`
    Idempotent,
}

impl BaseAlgebra {
    pub const ALL: [BaseAlgebra; 5] = [
        BaseAlgebra::Row,
        BaseAlgebra::Column,
        BaseAlgebra::Dual,
        BaseAlgebra::Diagonal,
        BaseAlgebra::Idempotent,
    ];

    pub fn dim(self) -> usize {
        match self {
            BaseAlgebra::Idempotent => 1,
            _ => 2,
        }
    }

    /// The basis as matrices; the product is matrix multiplication.
    pub fn matrices(self) -> Vec<ComplexMatrix> {
        let m = |rows: &[&[f64]]| ComplexMatrix::from_real_rows(rows);
        match self {
            BaseAlgebra::Row => vec![
                m(&[&[1.0, 0.0], &[0.0, 0.0]]),
                m(&[&[0.0, 1.0], &[0.0, 0.0]]),
            ],
            BaseAlgebra::Column => vec![
                m(&[&[1.0, 0.0], &[0.0, 0.0]]),
                m(&[&[0.0, 0.0], &[1.0, 0.0]]),
            ],
            BaseAlgebra::Dual => vec![
                m(&[&[1.0, 0.0], &[0.0, 1.0]]),
                m(&[&[0.0, 1.0], &[0.0, 0.0]]),
            ],
            BaseAlgebra::Diagonal => vec![
                m(&[&[1.0, 0.0], &[0.0, 0.0]]),
                m(&[&[0.0, 0.0], &[0.0, 1.0]]),
            ],
            BaseAlgebra::Idempotent => vec![m(&[&[1.0]])],
        }
    }

    /// Coordinates of a matrix in the span of [`BaseAlgebra::matrices`].
    fn coords(self, m: &ComplexMatrix) -> Vec<C64> {
        match self {
            BaseAlgebra::Row | BaseAlgebra::Dual => vec![m.get(0, 0), m.get(0, 1)],
            BaseAlgebra::Column => vec![m.get(0, 0), m.get(1, 0)],
            BaseAlgebra::Diagonal => vec![m.get(0, 0), m.get(1, 1)],
            BaseAlgebra::Idempotent => vec![m.get(0, 0)],
        }
    }

    /// Algebra homomorphisms to `C`, as values on the basis.
    pub fn characters(self) -> Vec<Vec<f64>> {
        match self {
            BaseAlgebra::Idempotent => vec![vec![1.0], vec![0.0]],
            BaseAlgebra::Diagonal => vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]],
            _ => vec![vec![1.0, 0.0], vec![0.0, 0.0]],
        }
    }

    pub fn algebra(self) -> FiniteAlgebra {
        let mats = self.matrices();
        let n = mats.len();
        let constants = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.coords(&(&mats[i] * &mats[j])))
                    .collect()
            })
            .collect();
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        FiniteAlgebra::new(labels, constants).expect("valid constants")
    }
}

/// A representation of `base` on `C^n` as a direct sum of the defining
/// representation and characters, conjugated by a random invertible matrix.
fn random_representation(rng: &mut impl Rng, base: BaseAlgebra, n: usize) -> Vec<ComplexMatrix> {
    let chars = base.characters();
    let d = base.dim();
    let mut diag: Vec<ComplexMatrix> = vec![ComplexMatrix::zeros(n, n); d];
    let natural = base.matrices();
    let natural_size = natural[0].rows();
    let mut filled = 0;
    if natural_size <= n && rng.random_bool(0.6) {
        for (i, m) in natural.iter().enumerate() {
            for r in 0..natural_size {
                for c in 0..natural_size {
                    diag[i].set(r, c, m.get(r, c));
                }
            }
        }
        filled = natural_size;
    }
    while filled < n {
        let chi = &chars[rng.random_range(0..chars.len())];
        for i in 0..d {
            diag[i].set(filled, filled, c64(chi[i], 0.0));
        }
        filled += 1;
    }
    let s = random_well_conditioned(rng, n);
    let s_inv = s.try_inverse().expect("invertible");
    diag.iter().map(|m| &(&s * m) * &s_inv).collect()
}

/// Rewrites `base` in the random basis `f_i = Σ_j G_ij e_j`.
///
/// Returns the new algebra and `G`.
pub fn random_basis_change(
    rng: &mut impl Rng,
    base: BaseAlgebra,
) -> (FiniteAlgebra, ComplexMatrix) {
    let alg = base.algebra();
    let n = alg.dim();
    let g = random_well_conditioned(rng, n);
    let g_inv = g.try_inverse().expect("invertible");
    let mut constants = vec![vec![vec![C64::new(0.0, 0.0); n]; n]; n];
    for (i, row) in constants.iter_mut().enumerate() {
        for (j, out) in row.iter_mut().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    let w = g.get(i, a) * g.get(j, b);
                    for l in 0..n {
                        let c = w * alg.constant(a, b, l);
                        for (k, slot) in out.iter_mut().enumerate() {
                            *slot += c * g_inv.get(l, k);
                        }
                    }
                }
            }
        }
    }
    let labels = alg.basis().to_vec();
    (
        FiniteAlgebra::new(labels, constants).expect("valid constants"),
        g,
    )
}

/// A random module in the range used by the cocycle and periodicity checks:
/// up to three simples, balanced fibers of dimension one or two, a two- or
/// one-dimensional algebra, `F = [[0, P⁻¹], [P, 0]]`.
///
/// `kind` picks the base algebra cyclically from [`BaseAlgebra::ALL`].
pub fn random_instance(rng: &mut impl Rng, kind: usize) -> FredholmModule {
    let base = BaseAlgebra::ALL[kind % BaseAlgebra::ALL.len()];
    let (algebra, g) = random_basis_change(rng, base);
    let simples = rng.random_range(1..=3);
    let ctx = Arc::new(
        CategoryContext::new((0..simples).map(|c| format!("s{c}")).collect(), None)
            .expect("labels"),
    );
    let dims: Vec<(usize, usize)> = (0..simples)
        .map(|_| {
            let n = rng.random_range(1..=2);
            (n, n)
        })
        .collect();
    let space = GradedHilbObject::from_dims(ctx, &dims).expect("dims");
    let d = algebra.dim();
    let mut pp: Vec<Vec<ComplexMatrix>> = vec![Vec::new(); d];
    let mut mm: Vec<Vec<ComplexMatrix>> = vec![Vec::new(); d];
    let mut q_blocks = Vec::new();
    let mut p_blocks = Vec::new();
    for &(n, _) in &dims {
        for out in [&mut pp, &mut mm] {
            let rep = random_representation(rng, base, n);
            for i in 0..d {
                let mut acc = ComplexMatrix::zeros(n, n);
                for (j, r) in rep.iter().enumerate() {
                    acc = &acc + &r.scale(g.get(i, j));
                }
                out[i].push(acc);
            }
        }
        let p = random_well_conditioned(rng, n);
        q_blocks.push(p.try_inverse().expect("invertible"));
        p_blocks.push(p);
    }
    let rho = pp
        .into_iter()
        .zip(mm)
        .map(|(pp, mm)| GradedOperator::even(space.clone(), pp, mm).expect("even"))
        .collect();
    FredholmModule::new(space, Arc::new(algebra), rho, q_blocks, p_blocks, 1.0).expect("module")
}

fn unit_matrix(n: usize, i: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m.set(i, i, one());
    m
}

fn conjugated(by: &[MatrixPath], m: ComplexMatrix) -> MatrixPath {
    let mut factors: Vec<MatrixPath> = by.to_vec();
    factors.push(MatrixPath::constant(m));
    factors.extend(by.iter().rev().map(|f| f.clone().inverse()));
    MatrixPath::Product(factors)
}

/// `C²` spanned by orthogonal idempotents `e`, `f`, acting on `C³ ⊕ C³`.
///
/// `ρ_t⁺(x) = S_t x S_t⁻¹` and `ρ_t⁻(x) = P_t R_t x R_t⁻¹ P_t⁻¹` with
/// `S_t = I + tN`, `R_t = I + tM`, `P_t = I + tK`, and
/// `F_t = [[0, P_t⁻¹], [P_t, 0]]`, `t ∈ [0, 1]`. The two sides carry
/// different projections, so the degree-2 character moves along the path.
pub fn projection_conjugation_path() -> OperatorPath {
    let k = 3;
    let n = ComplexMatrix::from_real_rows(&[&[0.2, 1.0, 0.5], &[0.0, -0.3, 1.0], &[0.4, 0.0, 0.1]]);
    let m = ComplexMatrix::from_real_rows(&[&[0.0, 0.0, 0.3], &[0.7, 0.2, 0.0], &[0.0, -0.4, 0.0]]);
    let kk =
        ComplexMatrix::from_real_rows(&[&[0.1, 0.0, -0.2], &[0.3, 0.0, 0.0], &[0.0, 0.2, -0.1]]);
    let line = |x: &ComplexMatrix| {
        MatrixPath::poly(vec![ComplexMatrix::identity(k), x.clone()]).expect("shapes")
    };
    let (s, r, p) = (line(&n), line(&m), line(&kk));
    let plus = [unit_matrix(k, 0), unit_matrix(k, 1)];
    let minus = [unit_matrix(k, 0), unit_matrix(k, 2)];
    let rho = plus
        .into_iter()
        .zip(minus)
        .map(|(a, b)| {
            vec![EvenPath {
                pp: conjugated(std::slice::from_ref(&s), a),
                mm: conjugated(&[p.clone(), r.clone()], b),
            }]
        })
        .collect();
    let algebra = FiniteAlgebra::new(
        vec!["e".into(), "f".into()],
        BaseAlgebra::Diagonal.algebra().structure_constants(),
    )
    .expect("valid constants");
    let space = GradedHilbObject::from_dims(CategoryContext::point(), &[(k, k)]).expect("dims");
    OperatorPath::new(
        space,
        Arc::new(algebra),
        rho,
        Some(vec![SymmetryPath::from_p(p)]),
        1.0,
        1.0,
    )
    .expect("valid path")
}

/// The projection module with `P_t = 1 + t`, `Q_t = 1/(1 + t)`, `t ∈ [0, 1]`.
pub fn proj_scaled_symmetry_path() -> OperatorPath {
    let fm = proj_module();
    let base = OperatorPath::constant(&fm, 1.0).expect("constant path");
    let p = MatrixPath::poly(vec![
        ComplexMatrix::real_diag(&[1.0]),
        ComplexMatrix::real_diag(&[1.0]),
    ])
    .expect("shapes");
    OperatorPath::new(
        base.space().clone(),
        base.algebra().clone(),
        base.rho().to_vec(),
        Some(vec![SymmetryPath::from_p(p)]),
        fm.summability(),
        1.0,
    )
    .expect("valid path")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn base_algebras_are_associative() {
        for base in BaseAlgebra::ALL {
            let r = base.algebra().validate();
            assert_eq!(r.associativity_residual, 0.0, "{base:?}");
        }
    }

    #[test]
    fn random_instances_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for kind in 0..20 {
            let fm = random_instance(&mut rng, kind);
            assert!(fm.algebra().validate().associativity_residual < 1e-12);
            let r = fm.validate(1e-10);
            assert!(r.passed, "{kind}: {r:?}");
        }
    }
}

//! JSON scenario and cochain files.
//!
//! Complex numbers are `[re, im]`, matrices are row-major nested arrays,
//! per-simple data is keyed by simple label and `ρ` by basis label.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::FiniteAlgebra;
use crate::category::CategoryContext;
use crate::cyclic::CyclicCochain;
use crate::error::{Error, Result};
use crate::fredholm::{FredholmModule, GradedHilbObject, GradedOperator};
use crate::homotopy::{EvenPath, MatrixPath, OperatorPath, PolyMatrix, SymmetryPath};
use crate::linalg::{c64, ComplexMatrix, C64};

pub const SCHEMA_VERSION: u32 = 1;

/// `[re, im]`
pub type ComplexJson = [f64; 2];
/// Rows of `[re, im]` entries.
pub type MatrixJson = Vec<Vec<ComplexJson>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub category: CategoryJson,
    pub algebra: AlgebraJson,
    pub module: ModuleJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub simples: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum_dims: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub basis: Vec<String>,
    /// `c[i][j][k]` with `e_i e_j = Σ_k c[i][j][k] e_k`.
    pub structure_constants: Vec<Vec<Vec<ComplexJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<ComplexJson>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvenBlocksJson {
    pub pp: MatrixJson,
    pub mm: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OddBlocksJson {
    /// `Q: H⁻ → H⁺`
    pub pm: MatrixJson,
    /// `P: H⁺ → H⁻`
    pub mp: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    /// `[dim H⁺(c), dim H⁻(c)]` per simple.
    pub dims: BTreeMap<String, [usize; 2]>,
    pub summability: f64,
    pub rho: BTreeMap<String, BTreeMap<String, EvenBlocksJson>>,
    pub symmetry: BTreeMap<String, OddBlocksJson>,
}

/// A matrix-valued function of `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MatrixPathJson {
    /// Coefficient matrices, lowest degree first.
    Poly(Vec<MatrixJson>),
    Product(Vec<MatrixPathJson>),
    Inverse(Box<MatrixPathJson>),
    Piecewise {
        breaks: Vec<f64>,
        pieces: Vec<MatrixPathJson>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvenPathJson {
    pub pp: MatrixPathJson,
    pub mm: MatrixPathJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryPathJson {
    /// `P_t`
    pub mp: MatrixPathJson,
    /// `Q_t`; the inverse of `P_t` when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pm: Option<MatrixPathJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathJson {
    pub t_end: f64,
    pub rho: BTreeMap<String, BTreeMap<String, EvenPathJson>>,
    /// Omitted means `F = antidiag(id, id)` throughout.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<BTreeMap<String, SymmetryPathJson>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub schema_version: u32,
    pub degree: usize,
    pub basis: Vec<String>,
    /// `degree + 1` levels of nesting around `[re, im]` pairs.
    pub tensor: Value,
}

/// A parsed and checked scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub module: FredholmModule,
    pub path: Option<OperatorPath>,
}

fn parse_error(origin: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: origin.to_string(),
        message: message.into(),
    }
}

fn complex(z: &ComplexJson) -> C64 {
    c64(z[0], z[1])
}

fn complex_json(z: C64) -> ComplexJson {
    [z.re, z.im]
}

fn matrix(m: &MatrixJson, at: &str) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<C64>> = m.iter().map(|r| r.iter().map(complex).collect()).collect();
    if rows.is_empty() {
        return Err(parse_error(
            at,
            "empty matrix; use [] rows only for zero-dimensional fibers",
        ));
    }
    ComplexMatrix::from_rows(&rows).map_err(|e| parse_error(at, e.to_string()))
}

/// Like [`matrix`] but allows `0×n` and `n×0` shapes from context.
fn sized_matrix(m: &MatrixJson, rows: usize, cols: usize, at: &str) -> Result<ComplexMatrix> {
    if rows == 0 || cols == 0 {
        if m.iter().any(|r| !r.is_empty()) || m.len() > rows {
            return Err(parse_error(at, format!("expected a {rows}x{cols} matrix")));
        }
        return Ok(ComplexMatrix::zeros(rows, cols));
    }
    let out = matrix(m, at)?;
    if out.shape() != (rows, cols) {
        return Err(parse_error(
            at,
            format!(
                "expected a {rows}x{cols} matrix, got {}x{}",
                out.rows(),
                out.cols()
            ),
        ));
    }
    Ok(out)
}

fn matrix_json(m: &ComplexMatrix) -> MatrixJson {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(complex_json).collect())
        .collect()
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, key: &str, at: &str) -> Result<&'a T> {
    map.get(key)
        .ok_or_else(|| parse_error(&format!("{at}.{key}"), "missing entry"))
}

fn no_extra_keys<T>(map: &BTreeMap<String, T>, allowed: &[String], at: &str) -> Result<()> {
    match map.keys().find(|k| !allowed.contains(k)) {
        Some(k) => Err(parse_error(&format!("{at}.{k}"), "unknown label")),
        None => Ok(()),
    }
}

impl MatrixPathJson {
    pub fn to_path(&self, at: &str) -> Result<MatrixPath> {
        let wrap = |e: Error| parse_error(at, e.to_string());
        match self {
            MatrixPathJson::Poly(coeffs) => {
                let ms = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, m)| matrix(m, &format!("{at}.poly[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(MatrixPath::Poly(PolyMatrix::new(ms).map_err(wrap)?))
            }
            MatrixPathJson::Product(fs) => {
                if fs.is_empty() {
                    return Err(parse_error(at, "empty product"));
                }
                Ok(MatrixPath::Product(
                    fs.iter()
                        .enumerate()
                        .map(|(i, f)| f.to_path(&format!("{at}.product[{i}]")))
                        .collect::<Result<_>>()?,
                ))
            }
            MatrixPathJson::Inverse(inner) => {
                Ok(inner.to_path(&format!("{at}.inverse"))?.inverse())
            }
            MatrixPathJson::Piecewise { breaks, pieces } => {
                let pieces = pieces
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.to_path(&format!("{at}.piecewise.pieces[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                MatrixPath::piecewise(breaks.clone(), pieces).map_err(wrap)
            }
        }
    }

    pub fn from_path(path: &MatrixPath) -> Self {
        match path {
            MatrixPath::Poly(p) => {
                MatrixPathJson::Poly(p.coeffs().iter().map(matrix_json).collect())
            }
            MatrixPath::Product(fs) => {
                MatrixPathJson::Product(fs.iter().map(Self::from_path).collect())
            }
            MatrixPath::Inverse(inner) => MatrixPathJson::Inverse(Box::new(Self::from_path(inner))),
            MatrixPath::Piecewise { breaks, pieces } => MatrixPathJson::Piecewise {
                breaks: breaks.clone(),
                pieces: pieces.iter().map(Self::from_path).collect(),
            },
        }
    }
}

impl ScenarioFile {
    pub fn from_json_str(text: &str, origin: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            parse_error(&format!("{origin}: {path}"), e.into_inner().to_string())
        })?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(parse_error(
                &format!("{origin}: schema_version"),
                format!(
                    "unsupported version {}, expected {SCHEMA_VERSION}",
                    file.schema_version
                ),
            ));
        }
        Ok(file)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn build(&self) -> Result<Scenario> {
        let ctx = Arc::new(
            CategoryContext::new(
                self.category.simples.clone(),
                self.category.quantum_dims.clone(),
            )
            .map_err(|e| parse_error("category", e.to_string()))?,
        );
        let simples = ctx.simples().to_vec();

        let a = &self.algebra;
        let constants = a
            .structure_constants
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(complex).collect())
                    .collect()
            })
            .collect();
        let mut algebra = FiniteAlgebra::new(a.basis.clone(), constants)
            .map_err(|e| parse_error("algebra.structure_constants", e.to_string()))?;
        if let Some(u) = &a.unit {
            algebra = algebra
                .with_unit(u.iter().map(complex).collect())
                .map_err(|e| parse_error("algebra.unit", e.to_string()))?;
        }
        let algebra = Arc::new(algebra);
        let basis = algebra.basis().to_vec();

        let m = &self.module;
        no_extra_keys(&m.dims, &simples, "module.dims")?;
        let dims = simples
            .iter()
            .map(|s| lookup(&m.dims, s, "module.dims").map(|d| (d[0], d[1])))
            .collect::<Result<Vec<_>>>()?;
        let space = GradedHilbObject::from_dims(ctx, &dims)
            .map_err(|e| parse_error("module.dims", e.to_string()))?;

        no_extra_keys(&m.rho, &basis, "module.rho")?;
        let mut rho = Vec::new();
        for b in &basis {
            let per_simple = lookup(&m.rho, b, "module.rho")?;
            let at = format!("module.rho.{b}");
            no_extra_keys(per_simple, &simples, &at)?;
            let mut pp = Vec::new();
            let mut mm = Vec::new();
            for (c, s) in simples.iter().enumerate() {
                let blocks = lookup(per_simple, s, &at)?;
                let (np, nm) = dims[c];
                pp.push(sized_matrix(&blocks.pp, np, np, &format!("{at}.{s}.pp"))?);
                mm.push(sized_matrix(&blocks.mm, nm, nm, &format!("{at}.{s}.mm"))?);
            }
            rho.push(
                GradedOperator::even(space.clone(), pp, mm)
                    .map_err(|e| parse_error(&at, e.to_string()))?,
            );
        }

        no_extra_keys(&m.symmetry, &simples, "module.symmetry")?;
        let mut q = Vec::new();
        let mut p = Vec::new();
        for (c, s) in simples.iter().enumerate() {
            let blocks = lookup(&m.symmetry, s, "module.symmetry")?;
            let (np, nm) = dims[c];
            q.push(sized_matrix(
                &blocks.pm,
                np,
                nm,
                &format!("module.symmetry.{s}.pm"),
            )?);
            p.push(sized_matrix(
                &blocks.mp,
                nm,
                np,
                &format!("module.symmetry.{s}.mp"),
            )?);
        }
        let module = FredholmModule::new(space.clone(), algebra.clone(), rho, q, p, m.summability)
            .map_err(|e| parse_error("module", e.to_string()))?;

        let path = match &self.path {
            None => None,
            Some(pj) => Some(build_path(pj, &space, &algebra, m.summability)?),
        };
        Ok(Scenario { module, path })
    }
}

fn build_path(
    pj: &PathJson,
    space: &GradedHilbObject,
    algebra: &Arc<FiniteAlgebra>,
    summability: f64,
) -> Result<OperatorPath> {
    let simples = space.ctx().simples().to_vec();
    let basis = algebra.basis().to_vec();
    no_extra_keys(&pj.rho, &basis, "path.rho")?;
    let mut rho = Vec::new();
    for b in &basis {
        let per_simple = lookup(&pj.rho, b, "path.rho")?;
        let at = format!("path.rho.{b}");
        no_extra_keys(per_simple, &simples, &at)?;
        let mut blocks = Vec::new();
        for s in &simples {
            let e = lookup(per_simple, s, &at)?;
            blocks.push(EvenPath {
                pp: e.pp.to_path(&format!("{at}.{s}.pp"))?,
                mm: e.mm.to_path(&format!("{at}.{s}.mm"))?,
            });
        }
        rho.push(blocks);
    }
    let symmetry = match &pj.symmetry {
        None => None,
        Some(map) => {
            no_extra_keys(map, &simples, "path.symmetry")?;
            let mut out = Vec::new();
            for s in &simples {
                let e = lookup(map, s, "path.symmetry")?;
                let p = e.mp.to_path(&format!("path.symmetry.{s}.mp"))?;
                out.push(match &e.pm {
                    Some(q) => SymmetryPath {
                        q: q.to_path(&format!("path.symmetry.{s}.pm"))?,
                        p,
                    },
                    None => SymmetryPath::from_p(p),
                });
            }
            Some(out)
        }
    };
    OperatorPath::new(
        space.clone(),
        algebra.clone(),
        rho,
        symmetry,
        summability,
        pj.t_end,
    )
    .map_err(|e| match e {
        Error::Singular { .. } => e,
        other => parse_error("path", other.to_string()),
    })
}

impl Scenario {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        ScenarioFile::from_json_str(&text, &path.display().to_string())?.build()
    }

    /// The file form of a module and optional path.
    pub fn to_file(module: &FredholmModule, path: Option<&OperatorPath>) -> ScenarioFile {
        let space = module.space();
        let ctx = space.ctx();
        let simples = ctx.simples();
        let alg = module.algebra();
        let n = alg.dim();
        let structure_constants = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        alg.product_of_basis(i, j)
                            .iter()
                            .copied()
                            .map(complex_json)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let algebra = AlgebraJson {
            basis: alg.basis().to_vec(),
            structure_constants,
            unit: alg
                .unit()
                .map(|u| u.iter().copied().map(complex_json).collect()),
        };
        let dims = simples
            .iter()
            .enumerate()
            .map(|(c, s)| (s.clone(), [space.dims(c).0, space.dims(c).1]))
            .collect();
        let rho = alg
            .basis()
            .iter()
            .zip(module.rho())
            .map(|(b, r)| {
                let per = simples
                    .iter()
                    .enumerate()
                    .map(|(c, s)| {
                        let blk = r.block(c);
                        (
                            s.clone(),
                            EvenBlocksJson {
                                pp: matrix_json(&blk.pp),
                                mm: matrix_json(&blk.mm),
                            },
                        )
                    })
                    .collect();
                (b.clone(), per)
            })
            .collect();
        let symmetry = simples
            .iter()
            .enumerate()
            .map(|(c, s)| {
                let blk = module.symmetry().block(c);
                (
                    s.clone(),
                    OddBlocksJson {
                        pm: matrix_json(&blk.pm),
                        mp: matrix_json(&blk.mp),
                    },
                )
            })
            .collect();
        let path = path.map(|p| PathJson {
            t_end: p.t_end(),
            rho: alg
                .basis()
                .iter()
                .zip(p.rho())
                .map(|(b, per)| {
                    let per = simples
                        .iter()
                        .zip(per)
                        .map(|(s, e)| {
                            (
                                s.clone(),
                                EvenPathJson {
                                    pp: MatrixPathJson::from_path(&e.pp),
                                    mm: MatrixPathJson::from_path(&e.mm),
                                },
                            )
                        })
                        .collect();
                    (b.clone(), per)
                })
                .collect(),
            symmetry: p.symmetry().map(|f| {
                simples
                    .iter()
                    .zip(f)
                    .map(|(s, e)| {
                        (
                            s.clone(),
                            SymmetryPathJson {
                                mp: MatrixPathJson::from_path(&e.p),
                                pm: Some(MatrixPathJson::from_path(&e.q)),
                            },
                        )
                    })
                    .collect()
            }),
        });
        ScenarioFile {
            schema_version: SCHEMA_VERSION,
            category: CategoryJson {
                simples: simples.to_vec(),
                quantum_dims: ctx.quantum_dims().map(|q| q.to_vec()),
            },
            algebra,
            module: ModuleJson {
                dims,
                summability: module.summability(),
                rho,
                symmetry,
            },
            path,
        }
    }
}

fn nest(tensor: &[C64], dim: usize, slots: usize) -> Value {
    if slots == 0 {
        let z = tensor[0];
        return serde_json::json!([z.re, z.im]);
    }
    let stride = tensor.len() / dim.max(1);
    Value::Array(
        (0..dim)
            .map(|i| nest(&tensor[i * stride..(i + 1) * stride], dim, slots - 1))
            .collect(),
    )
}

fn flatten(value: &Value, dim: usize, slots: usize, at: &str, out: &mut Vec<C64>) -> Result<()> {
    if slots == 0 {
        let pair = value
            .as_array()
            .filter(|a| a.len() == 2)
            .and_then(|a| Some(c64(a[0].as_f64()?, a[1].as_f64()?)))
            .ok_or_else(|| parse_error(at, "expected a [re, im] pair"))?;
        out.push(pair);
        return Ok(());
    }
    let items = value
        .as_array()
        .filter(|a| a.len() == dim)
        .ok_or_else(|| parse_error(at, format!("expected an array of length {dim}")))?;
    for (i, item) in items.iter().enumerate() {
        flatten(item, dim, slots - 1, &format!("{at}[{i}]"), out)?;
    }
    Ok(())
}

impl CochainFile {
    pub fn from_cochain(psi: &CyclicCochain) -> Self {
        CochainFile {
            schema_version: SCHEMA_VERSION,
            degree: psi.degree(),
            basis: psi.algebra().basis().to_vec(),
            tensor: nest(psi.tensor(), psi.dim(), psi.degree() + 1),
        }
    }

    /// Rebuilds the cochain over `algebra`, whose basis labels must match.
    pub fn to_cochain(&self, algebra: &Arc<FiniteAlgebra>, origin: &str) -> Result<CyclicCochain> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(parse_error(
                &format!("{origin}: schema_version"),
                "unsupported version",
            ));
        }
        if self.basis != algebra.basis() {
            return Err(parse_error(
                &format!("{origin}: basis"),
                format!(
                    "labels {:?} do not match the algebra {:?}",
                    self.basis,
                    algebra.basis()
                ),
            ));
        }
        let mut tensor = Vec::new();
        flatten(
            &self.tensor,
            algebra.dim(),
            self.degree + 1,
            &format!("{origin}: tensor"),
            &mut tensor,
        )?;
        CyclicCochain::new(algebra.clone(), self.degree, tensor)
            .map_err(|e| parse_error(origin, e.to_string()))
    }

    pub fn from_json_str(text: &str, origin: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            parse_error(&format!("{origin}: {path}"), e.into_inner().to_string())
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text, &path.display().to_string())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        proj_module, projection_conjugation_path, random_cochain, random_instance,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn module_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for kind in 0..5 {
            let fm = random_instance(&mut rng, kind);
            let text = Scenario::to_file(&fm, None).to_json_string();
            let back = ScenarioFile::from_json_str(&text, "mem")
                .unwrap()
                .build()
                .unwrap();
            assert_eq!(back.module, fm);
            assert!(back.path.is_none());
        }
        let fm = proj_module();
        let back =
            ScenarioFile::from_json_str(&Scenario::to_file(&fm, None).to_json_string(), "mem")
                .unwrap()
                .build()
                .unwrap();
        assert_eq!(back.module, fm);
    }

    #[test]
    fn path_round_trip() {
        let path = projection_conjugation_path();
        let fm = path.eval_path(0.0).unwrap();
        let text = Scenario::to_file(&fm, Some(&path)).to_json_string();
        let back = ScenarioFile::from_json_str(&text, "mem")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(back.path.unwrap(), path);
    }

    #[test]
    fn cochain_round_trip_is_bit_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let fm = random_instance(&mut rng, 2);
        for k in 0..4 {
            let psi = random_cochain(&mut rng, fm.algebra(), k).scaled(c64(1.0 / 3.0, 1e-7));
            let text = CochainFile::from_cochain(&psi).to_json_string();
            let back = CochainFile::from_json_str(&text, "mem")
                .unwrap()
                .to_cochain(fm.algebra(), "mem")
                .unwrap();
            assert_eq!(back, psi);
        }
    }

    #[test]
    fn parse_errors_name_the_path() {
        let fm = proj_module();
        let mut v: Value = serde_json::to_value(Scenario::to_file(&fm, None)).unwrap();
        v["module"]["rho"]["e"]["•"]["pp"] = serde_json::json!("oops");
        let err = ScenarioFile::from_json_str(&v.to_string(), "x.json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("module.rho.e.•.pp"), "{msg}");

        let mut v: Value = serde_json::to_value(Scenario::to_file(&fm, None)).unwrap();
        v["module"]["rho"]["e"]["•"]["pp"] = serde_json::json!([[[1.0, 0.0], [0.0, 0.0]]]);
        let err = ScenarioFile::from_json_str(&v.to_string(), "x.json")
            .unwrap()
            .build()
            .unwrap_err();
        assert!(err.to_string().contains("module.rho.e.•.pp"), "{err}");

        let mut v: Value = serde_json::to_value(Scenario::to_file(&fm, None)).unwrap();
        v["module"]["rho"]["g"] = v["module"]["rho"]["e"].clone();
        let err = ScenarioFile::from_json_str(&v.to_string(), "x.json")
            .unwrap()
            .build()
            .unwrap_err();
        assert!(err.to_string().contains("module.rho.g"), "{err}");

        let mut v: Value = serde_json::to_value(Scenario::to_file(&fm, None)).unwrap();
        v["schema_version"] = serde_json::json!(7);
        assert!(ScenarioFile::from_json_str(&v.to_string(), "x.json").is_err());
    }

    #[test]
    fn cochain_shape_errors() {
        let fm = proj_module();
        let psi = CyclicCochain::new(fm.algebra().clone(), 1, vec![c64(1.0, 0.0)]).unwrap();
        let mut file = CochainFile::from_cochain(&psi);
        file.degree = 2;
        assert!(file.to_cochain(fm.algebra(), "c.json").is_err());
        let mut file = CochainFile::from_cochain(&psi);
        file.basis = vec!["z".into()];
        assert!(file.to_cochain(fm.algebra(), "c.json").is_err());
    }
}

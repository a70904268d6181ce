//! Boundary data of a model at one place and its Clemens complex.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grot_ring::{dim_nu, MotClass, SymbolRegistry};

/// A horizontal boundary divisor `D_α` with `ρ_α ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Horizontal {
    pub name: String,
    pub rho: i64,
}

/// The class of the open stratum `Δ(A, β)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumEntry {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    pub class: MotClass,
}

/// A vertical component `E_β` of the special fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertical {
    pub name: String,
    pub mu: u32,
    pub rho: i64,
    /// `e_{α,β}`; missing entries are 0.
    #[serde(default)]
    pub e: BTreeMap<String, i64>,
    #[serde(default)]
    pub strata: Vec<StratumEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDatum {
    /// Relative dimension.
    pub n: i64,
    #[serde(default)]
    pub horizontal: Vec<Horizontal>,
    pub vertical: Vec<Vertical>,
    /// Names of the vertical components designated integral.
    #[serde(default)]
    pub integral: Vec<String>,
}

impl BoundaryDatum {
    pub fn alpha_index(&self, name: &str) -> Result<usize> {
        self.horizontal
            .iter()
            .position(|h| h.name == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown horizontal divisor `{name}`")))
    }

    /// Variable names `T_α`.
    pub fn vars(&self) -> Vec<String> {
        self.horizontal
            .iter()
            .map(|h| format!("T_{}", h.name))
            .collect()
    }

    /// `e_{·,β}` as a vector over `𝒜`.
    pub fn e_vector(&self, beta: usize) -> Vec<i64> {
        let v = &self.vertical[beta];
        self.horizontal
            .iter()
            .map(|h| v.e.get(&h.name).copied().unwrap_or(0))
            .collect()
    }

    /// Sorted index set of a stratum entry.
    pub fn face_of(&self, entry: &StratumEntry) -> Result<Vec<usize>> {
        let mut idx = entry
            .a
            .iter()
            .map(|n| self.alpha_index(n))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        let len = idx.len();
        idx.dedup();
        if idx.len() != len {
            return Err(Error::InvalidInput(format!(
                "repeated divisor in stratum {:?}",
                entry.a
            )));
        }
        Ok(idx)
    }

    /// `[Δ(A, β)]` (zero if absent).
    pub fn stratum(&self, face: &[usize], beta: usize) -> Result<MotClass> {
        for s in &self.vertical[beta].strata {
            if self.face_of(s)? == face {
                return Ok(s.class.clone());
            }
        }
        Ok(MotClass::zero())
    }

    /// Nonempty strata `(A, β, class)` with `μ_β = 1`.
    pub fn b1_strata(&self) -> Result<Vec<(Vec<usize>, usize, MotClass)>> {
        let mut out = Vec::new();
        for (b, v) in self.vertical.iter().enumerate() {
            if v.mu != 1 {
                continue;
            }
            for s in &v.strata {
                if !s.class.is_zero() {
                    out.push((self.face_of(s)?, b, s.class.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn integral_indices(&self) -> Result<Vec<usize>> {
        self.integral
            .iter()
            .map(|n| {
                self.vertical
                    .iter()
                    .position(|v| &v.name == n)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown vertical component `{n}`")))
            })
            .collect()
    }

    /// Structural checks; with a registry, nonempty strata must also have
    /// dimension `n - |A|`.
    pub fn validate(&self, reg: Option<&SymbolRegistry>) -> Result<()> {
        let mut names = BTreeSet::new();
        for h in &self.horizontal {
            if h.rho < 2 {
                return Err(Error::InvalidInput(format!(
                    "ρ_{} = {} must be at least 2",
                    h.name, h.rho
                )));
            }
            if !names.insert(&h.name) {
                return Err(Error::InvalidInput(format!(
                    "duplicate divisor `{}`",
                    h.name
                )));
            }
        }
        for v in &self.vertical {
            for a in v.e.keys() {
                self.alpha_index(a)?;
            }
            let mut seen = BTreeSet::new();
            for s in &v.strata {
                let face = self.face_of(s)?;
                if !seen.insert(face.clone()) {
                    return Err(Error::InvalidInput(format!(
                        "stratum {:?} of `{}` listed twice",
                        s.a, v.name
                    )));
                }
                if let (Some(reg), false) = (reg, s.class.is_zero()) {
                    let dim = dim_nu(&s.class, reg)?.dim;
                    let expect = self.n - face.len() as i64;
                    if dim != Some(expect) {
                        return Err(Error::InvalidInput(format!(
                            "stratum {:?} of `{}` has dimension {dim:?}, expected {expect}",
                            s.a, v.name
                        )));
                    }
                }
            }
        }
        self.integral_indices()?;
        Ok(())
    }
}

/// The Clemens complex: simplices are index sets `A ⊆ 𝒜` with some nonempty
/// `Δ(A, β)`, `β ∈ ℬ₁`, closed under taking faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClemensComplex {
    pub vertices: Vec<String>,
    pub faces: BTreeSet<Vec<usize>>,
    pub maximal: Vec<Vec<usize>>,
    /// `max |A| - 1`; `-1` when only the empty face is present, `None` when
    /// there are no strata at all.
    pub dim: Option<i64>,
}

impl ClemensComplex {
    /// `d_v = 1 + dim`.
    pub fn d_v(&self) -> Option<i64> {
        self.dim.map(|d| d + 1)
    }

    /// Subcomplex of faces whose vertices all satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> ClemensComplex {
        let faces: BTreeSet<Vec<usize>> = self
            .faces
            .iter()
            .filter(|f| f.iter().all(|a| keep(*a)))
            .cloned()
            .collect();
        ClemensComplex::from_faces(self.vertices.clone(), faces)
    }

    fn from_faces(vertices: Vec<String>, faces: BTreeSet<Vec<usize>>) -> ClemensComplex {
        let maximal: Vec<Vec<usize>> = faces
            .iter()
            .filter(|f| {
                !faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|x| g.contains(x)))
            })
            .cloned()
            .collect();
        let dim = faces.iter().map(|f| f.len() as i64 - 1).max();
        ClemensComplex {
            vertices,
            faces,
            maximal,
            dim,
        }
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.faces.iter().flatten().copied().collect()
    }
}

pub fn clemens(datum: &BoundaryDatum) -> Result<ClemensComplex> {
    let mut faces = BTreeSet::new();
    for (face, _, _) in datum.b1_strata()? {
        // all subsets of the face
        let k = face.len();
        for mask in 0u32..(1 << k) {
            faces.insert(
                (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| face[i])
                    .collect::<Vec<_>>(),
            );
        }
    }
    let names = datum.horizontal.iter().map(|h| h.name.clone()).collect();
    Ok(ClemensComplex::from_faces(names, faces))
}

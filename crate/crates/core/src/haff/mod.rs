//! Characters `χ = (J, ξ)` of the affine Hecke algebra for GL-product groups:
//! `S_ξ`, supersingularity, projective dimension, projectivity of face
//! restrictions, the Hom decision, rotation and stabilizers.

mod pattern;

pub use pattern::{CharPattern, HomImage, NodeValue};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weyl::{omega_rotate, Face, GroupSpec, NodeSet, WeylError};

pub const DEFAULT_CHAR_CAP: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HaffError {
    #[error("invalid character: {0}")]
    InvalidPair(String),
    #[error("exponent data does not match the group: {0}")]
    Shape(String),
    #[error("character is not supersingular")]
    NotSupersingular,
    #[error("character has finite projective dimension (every factor is GL2 and S_xi = S)")]
    FinitePd,
    #[error("the two characters are equal")]
    EqualCharacters,
    #[error("{count} characters exceed the cap {cap}")]
    CapExceeded { count: u128, cap: usize },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// `ξ` on `T(F_q) = (F_q^×)^N`, as exponents in `Z/(q−1)` against a fixed
/// generator: one tuple per GL factor and one entry per torus coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusChar {
    exponents: Vec<Vec<u64>>,
    torus: Vec<u64>,
}

impl TorusChar {
    pub fn new(spec: &GroupSpec, exponents: Vec<Vec<i64>>, torus: Vec<i64>) -> Result<Self, HaffError> {
        if exponents.len() != spec.r() || exponents.iter().zip(spec.factors()).any(|(a, &n)| a.len() != n) {
            return Err(HaffError::Shape(format!("expected exponent tuples of lengths {:?}", spec.factors())));
        }
        if torus.len() != spec.torus_rank() {
            return Err(HaffError::Shape(format!("expected {} torus exponents", spec.torus_rank())));
        }
        let m = (spec.q() - 1) as i64;
        let red = |x: i64| x.rem_euclid(m) as u64;
        Ok(TorusChar {
            exponents: exponents.iter().map(|a| a.iter().map(|&x| red(x)).collect()).collect(),
            torus: torus.into_iter().map(red).collect(),
        })
    }

    /// `det^a` on every factor and `a` on every torus coordinate.
    pub fn det_power(spec: &GroupSpec, a: i64) -> Self {
        let exps = spec.factors().iter().map(|&n| vec![a; n]).collect();
        Self::new(spec, exps, vec![a; spec.torus_rank()]).expect("shape from spec")
    }

    pub fn exponents(&self) -> &[Vec<u64>] {
        &self.exponents
    }
    pub fn torus(&self) -> &[u64] {
        &self.torus
    }
    /// Exponents in torus-coordinate order (factors, then torus part).
    pub fn flat(&self) -> Vec<u64> {
        self.exponents.iter().flatten().chain(&self.torus).copied().collect()
    }
}

/// A character of `H_aff`: `T_t ↦ ξ(t)`, `T_ŝ ↦ −1` on `J`, `0` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffChar {
    xi: TorusChar,
    j: NodeSet,
}

impl AffChar {
    pub fn new(spec: &GroupSpec, xi: TorusChar, j: NodeSet) -> Result<Self, HaffError> {
        let sx = s_xi(spec, &xi);
        if !j.is_subset(sx) {
            let d = spec.diagram();
            return Err(HaffError::InvalidPair(format!(
                "J = {:?} is not contained in S_xi = {:?}",
                d.names_of(j),
                d.names_of(sx)
            )));
        }
        Ok(AffChar { xi, j })
    }

    /// Character with `ξ = det^a` (so `S_ξ = S`) and `χ(T_ŝ)` on factor
    /// `i` read from `values[i]` (each entry `−1` or `0`, in node order).
    pub fn from_values(spec: &GroupSpec, a: i64, values: &[Vec<i8>]) -> Result<Self, HaffError> {
        if values.len() != spec.r() || values.iter().zip(spec.factors()).any(|(v, &n)| v.len() != n) {
            return Err(HaffError::Shape("one value per node".into()));
        }
        let mut j = NodeSet::EMPTY;
        for (i, vals) in values.iter().enumerate() {
            for (k, &v) in vals.iter().enumerate() {
                match v {
                    -1 => j.insert(spec.node(i, k)),
                    0 => {}
                    _ => return Err(HaffError::InvalidPair(format!("character value {v} is not -1 or 0"))),
                }
            }
        }
        Self::new(spec, TorusChar::det_power(spec, a), j)
    }

    pub fn xi(&self) -> &TorusChar {
        &self.xi
    }
    pub fn j(&self) -> NodeSet {
        self.j
    }

    pub fn pattern(&self, spec: &GroupSpec) -> CharPattern {
        CharPattern { s_xi: s_xi(spec, &self.xi), j: self.j, xi_key: 0 }
    }

    /// `χ(T_ŝ)` per node: `Some(−1)`, `Some(0)`, or `None` off `S_ξ`.
    pub fn values(&self, spec: &GroupSpec) -> Vec<Option<i8>> {
        let p = self.pattern(spec);
        (0..spec.node_count())
            .map(|s| {
                p.value(s).map(|v| match v {
                    NodeValue::MinusOne => -1,
                    NodeValue::Zero => 0,
                })
            })
            .collect()
    }

    /// Compact form such as `(-1,-1,0)|(0,-1) xi=[1,1,1|2,2]`; `*` marks
    /// nodes outside `S_ξ`.
    pub fn display(&self, spec: &GroupSpec) -> String {
        let vals = self.values(spec);
        let mut parts = Vec::new();
        for i in 0..spec.r() {
            let cells: Vec<String> = (0..spec.factors()[i])
                .map(|k| match vals[spec.node(i, k)] {
                    Some(v) => v.to_string(),
                    None => "*".into(),
                })
                .collect();
            parts.push(format!("({})", cells.join(",")));
        }
        let mut exps: Vec<String> = self
            .xi
            .exponents
            .iter()
            .map(|a| a.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        if !self.xi.torus.is_empty() {
            exps.push(format!("t:{}", self.xi.torus.iter().map(u64::to_string).collect::<Vec<_>>().join(",")));
        }
        format!("{} xi=[{}]", parts.join("|"), exps.join("|"))
    }

    pub fn to_json(&self, spec: &GroupSpec) -> AffCharJson {
        AffCharJson {
            exponents: self.xi.exponents.iter().map(|a| a.iter().map(|&x| x as i64).collect()).collect(),
            torus_exponents: self.xi.torus.iter().map(|&x| x as i64).collect(),
            j: spec.diagram().names_of(self.j),
        }
    }

    pub fn from_json(spec: &GroupSpec, raw: &AffCharJson) -> Result<Self, HaffError> {
        let xi = TorusChar::new(spec, raw.exponents.clone(), raw.torus_exponents.clone())?;
        let j = spec.diagram().set_from_names(&raw.j)?;
        Self::new(spec, xi, j)
    }
}

/// Serialized form of [`AffChar`]; node names as in the diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffCharJson {
    pub exponents: Vec<Vec<i64>>,
    pub torus_exponents: Vec<i64>,
    #[serde(rename = "J")]
    pub j: Vec<String>,
}

/// Nodes whose coroot lies in `ker ξ`. On factor `i` the coroot of
/// `s_{i,j}` (`j ≥ 1`) is `x ↦ diag(…, x, x⁻¹, …)` at positions `j, j+1`
/// (1-based), and that of `s_{i,0}` pairs the last and first positions, so
/// the test is equality of neighbouring exponents mod `q − 1`.
pub fn s_xi(spec: &GroupSpec, xi: &TorusChar) -> NodeSet {
    let mut set = NodeSet::EMPTY;
    for (i, a) in xi.exponents.iter().enumerate() {
        let n = a.len();
        for j in 0..n {
            if a[(j + n - 1) % n] == a[j] {
                set.insert(spec.node(i, j));
            }
        }
    }
    set
}

pub fn is_supersingular(spec: &GroupSpec, chi: &AffChar) -> bool {
    pattern::is_supersingular(&spec.diagram(), &chi.pattern(spec))
}

pub fn has_finite_pd(spec: &GroupSpec, chi: &AffChar) -> Result<bool, HaffError> {
    pattern::has_finite_pd(&spec.diagram(), &chi.pattern(spec))
}

pub fn res_face_projective(spec: &GroupSpec, chi: &AffChar, f: &Face) -> Result<bool, HaffError> {
    let d = spec.diagram();
    d.closure_leq(f, f)?;
    Ok(pattern::res_face_projective(&d, &chi.pattern(spec), f))
}

pub fn ho_delta_hom(spec: &GroupSpec, chi: &AffChar, chi2: &AffChar) -> Result<HomImage, HaffError> {
    let (mut a, mut b) = (chi.pattern(spec), chi2.pattern(spec));
    a.xi_key = 0;
    b.xi_key = u64::from(chi.xi != chi2.xi);
    if chi == chi2 {
        return Err(HaffError::EqualCharacters);
    }
    pattern::ho_delta_hom(&spec.diagram(), &a, &b)
}

/// Diagram-level versions for arbitrary affine types, with `S_ξ` supplied.
pub mod abstract_types {
    pub use super::pattern::{has_finite_pd, ho_delta_hom, is_supersingular, res_face_projective};
}

/// Rotates `J` by `s_{i,j} ↦ s_{i,j+k_i}` and the exponent tuple of factor
/// `i` by `k_i` places to the right, which keeps `J ⊆ S_ξ`.
pub fn conj_char(spec: &GroupSpec, chi: &AffChar, k: &[i64]) -> Result<AffChar, HaffError> {
    if k.len() != spec.r() {
        return Err(HaffError::Shape(format!("expected {} rotation amounts", spec.r())));
    }
    let mut j = NodeSet::EMPTY;
    for s in chi.j.iter() {
        let (i, _) = spec.locate(s).ok_or(WeylError::UnknownNode(s))?;
        j.insert(omega_rotate(spec, i, k[i], s)?);
    }
    let exponents = chi
        .xi
        .exponents
        .iter()
        .zip(k)
        .map(|(a, &ki)| {
            let n = a.len() as i64;
            (0..n).map(|m| a[(m - ki).rem_euclid(n) as usize]).collect()
        })
        .collect();
    let xi = TorusChar { exponents, torus: chi.xi.torus.clone() };
    Ok(AffChar { xi, j })
}

/// The stabilizer `Ω̃_χ`, recorded by `d_i`: `ω̂_i^{d_i}` generates its
/// intersection with the `i`-th rotation group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Stabilizer {
    pub d: Vec<usize>,
}

impl Stabilizer {
    pub fn index(&self) -> usize {
        self.d.iter().product()
    }
}

pub fn stabilizer(spec: &GroupSpec, chi: &AffChar) -> Stabilizer {
    let d = (0..spec.r())
        .map(|i| {
            let n = spec.factors()[i];
            (1..=n)
                .find(|&k| {
                    let mut rot = vec![0i64; spec.r()];
                    rot[i] = k as i64;
                    conj_char(spec, chi, &rot).expect("valid rotation") == *chi
                })
                .expect("full rotation fixes every character")
        })
        .collect();
    Stabilizer { d }
}

/// Every rotation vector `k` with `0 ≤ k_i < bound_i`, in lexicographic order.
pub fn rotations(bounds: &[usize]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..b as i64).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out
}

/// All torus characters, in lexicographic exponent order.
pub fn torus_chars(spec: &GroupSpec, cap: usize) -> Result<Vec<TorusChar>, HaffError> {
    let m = spec.q() - 1;
    let dim = spec.torus_dim();
    let count = (m as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(HaffError::CapExceeded { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    for mut idx in 0..count as u64 {
        let mut flat = vec![0i64; dim];
        for slot in flat.iter_mut().rev() {
            *slot = (idx % m) as i64;
            idx /= m;
        }
        let mut exps = Vec::new();
        let mut off = 0;
        for &n in spec.factors() {
            exps.push(flat[off..off + n].to_vec());
            off += n;
        }
        out.push(TorusChar::new(spec, exps, flat[off..].to_vec())?);
    }
    Ok(out)
}

/// All valid characters `(J, ξ)`: each `ξ` in [`torus_chars`] order with
/// every `J ⊆ S_ξ` by increasing bitmask.
pub fn all_chars(spec: &GroupSpec, cap: usize) -> Result<Vec<AffChar>, HaffError> {
    let mut out = Vec::new();
    for xi in torus_chars(spec, cap)? {
        let sx = s_xi(spec, &xi);
        let nodes = sx.to_vec();
        for mask in 0u64..1 << nodes.len() {
            let j = NodeSet::from_nodes(nodes.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &n)| n));
            out.push(AffChar { xi: xi.clone(), j });
            if out.len() > cap {
                return Err(HaffError::CapExceeded { count: out.len() as u128, cap });
            }
        }
    }
    Ok(out)
}

pub fn supersingular_chars(spec: &GroupSpec, cap: usize) -> Result<Vec<AffChar>, HaffError> {
    Ok(all_chars(spec, cap)?.into_iter().filter(|c| is_supersingular(spec, c)).collect())
}

#[cfg(test)]
mod tests;

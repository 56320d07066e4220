//! Simple supersingular modules of GL-product groups: construction data,
//! restriction to `H_aff`, isomorphism in `Mod(H)` and in `Ho(H)`,
//! enumeration and pairwise sweeps.

mod json;

pub use json::{FieldElemJson, FieldJson, SimpleJson};

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::ff::{Fe, FfError, FieldCtx};
use crate::haff::{
    self, conj_char, has_finite_pd, is_supersingular, res_face_projective, rotations, s_xi, stabilizer, AffChar,
    HaffError, Stabilizer, TorusChar,
};
use crate::weyl::{Face, GroupSpec, NodeSet};

pub const DEFAULT_SIMPLE_CAP: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlnError {
    #[error("character is not supersingular")]
    NotSupersingular,
    #[error("expected {expected} {what} scalars, got {got}")]
    ScalarCount { what: &'static str, expected: usize, got: usize },
    #[error("scalar {0} is zero or not an element of the field")]
    BadScalar(String),
    #[error("field characteristic {field} differs from the residue characteristic {spec}")]
    Characteristic { field: u64, spec: u64 },
    #[error("modules are over different {0}")]
    Mismatch(&'static str),
    #[error(
        "module {0} has finite projective dimension (every factor is GL2 and S_xi = S), \
         so it is zero in Ho(H) and outside the classification"
    )]
    FinitePd(String),
    #[error("{count} simple modules exceed the cap {cap}")]
    CapExceeded { count: u128, cap: usize },
    #[error(transparent)]
    Haff(#[from] HaffError),
    #[error(transparent)]
    Field(#[from] FfError),
}

/// The simple module `(χ ⊗ V) ⊗_{H_χ} H`, with `V` given by the scalars
/// `λ_i` of `ω̂_i^{d_i}` and `ν_j` of `ω̂_{T',j}`.
#[derive(Clone, Debug)]
pub struct SimpleSS {
    spec: GroupSpec,
    chi: AffChar,
    lambda: Vec<Fe>,
    nu: Vec<Fe>,
    field: Arc<FieldCtx>,
    stab: Stabilizer,
}

impl PartialEq for SimpleSS {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.chi == other.chi
            && self.lambda == other.lambda
            && self.nu == other.nu
            && *self.field == *other.field
    }
}
impl Eq for SimpleSS {}

pub fn build_simple(
    spec: &GroupSpec,
    chi: AffChar,
    lambda: Vec<Fe>,
    nu: Vec<Fe>,
    field: &Arc<FieldCtx>,
) -> Result<SimpleSS, GlnError> {
    if u64::from(field.p()) != spec.p() {
        return Err(GlnError::Characteristic { field: field.p().into(), spec: spec.p() });
    }
    if !is_supersingular(spec, &chi) {
        return Err(GlnError::NotSupersingular);
    }
    if lambda.len() != spec.r() {
        return Err(GlnError::ScalarCount { what: "lambda", expected: spec.r(), got: lambda.len() });
    }
    if nu.len() != spec.torus_rank() {
        return Err(GlnError::ScalarCount { what: "nu", expected: spec.torus_rank(), got: nu.len() });
    }
    if let Some(&x) = lambda.iter().chain(&nu).find(|&&x| x == 0 || !field.contains(x)) {
        return Err(GlnError::BadScalar(x.to_string()));
    }
    let stab = stabilizer(spec, &chi);
    Ok(SimpleSS { spec: spec.clone(), chi, lambda, nu, field: field.clone(), stab })
}

impl SimpleSS {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn chi(&self) -> &AffChar {
        &self.chi
    }
    pub fn lambda(&self) -> &[Fe] {
        &self.lambda
    }
    pub fn nu(&self) -> &[Fe] {
        &self.nu
    }
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn stabilizer(&self) -> &Stabilizer {
        &self.stab
    }
    /// `d_1 ⋯ d_r`.
    pub fn dim(&self) -> usize {
        self.stab.index()
    }
    pub fn has_finite_pd(&self) -> bool {
        has_finite_pd(&self.spec, &self.chi).expect("supersingular by construction")
    }

    pub fn describe(&self) -> String {
        let f = &self.field;
        let fmt = |xs: &[Fe]| xs.iter().map(|&x| f.fmt_elem(x)).collect::<Vec<_>>().join(",");
        let mut s = format!("{} lambda=({})", self.chi.display(&self.spec), fmt(&self.lambda));
        if !self.nu.is_empty() {
            s.push_str(&format!(" nu=({})", fmt(&self.nu)));
        }
        s
    }
}

/// Characters of `H_aff` on the summands of the restriction, one per
/// rotation `0 ≤ k_i < d_i`.
pub fn restriction_decomposition(m: &SimpleSS) -> Vec<AffChar> {
    rotations(&m.stab.d)
        .iter()
        .map(|k| conj_char(&m.spec, &m.chi, k).expect("rotation length matches"))
        .collect()
}

fn check_compatible(m: &SimpleSS, n: &SimpleSS) -> Result<(), GlnError> {
    if m.spec != n.spec {
        return Err(GlnError::Mismatch("groups"));
    }
    if *m.field != *n.field {
        return Err(GlnError::Mismatch("coefficient fields"));
    }
    Ok(())
}

/// A rotation `k` with `conj_char(χ, k) = χ'` and equal scalars, if any.
///
/// Conjugating by `T(F_q)` never changes the scalars: the lifts `ω̂_i` and
/// `ω̂_{T',j}` commute, and for `t ∈ T(F_q)` the commutator of `t` with
/// `ω̂_i^{d_i}` is a torus element on which `ξ` is trivial because `ξ` is
/// fixed by the rotation `ω̂_i^{d_i}`. So rotations alone decide conjugacy.
pub fn mod_isomorphic(m: &SimpleSS, n: &SimpleSS) -> Result<Option<Vec<i64>>, GlnError> {
    check_compatible(m, n)?;
    if m.lambda != n.lambda || m.nu != n.nu {
        return Ok(None);
    }
    Ok(rotations(m.spec.factors())
        .into_iter()
        .find(|k| conj_char(&m.spec, &m.chi, k).expect("rotation length matches") == n.chi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `conj_char(χ_a, rotation) = χ_b` with equal scalars.
    Conjugate { rotation: Vec<i64> },
    /// The pair is exceptional after rotating the module with one node of
    /// `J ∩ S_1` by `rotation`; `two_node` names the other module (`a`/`b`).
    Exceptional { rotation: Vec<i64>, two_node: char },
    None,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rot = |k: &[i64]| k.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        match self {
            Witness::Conjugate { rotation } => write!(f, "conjugate by rotation ({})", rot(rotation)),
            Witness::Exceptional { rotation, two_node } => {
                let one = if *two_node == 'a' { 'b' } else { 'a' };
                write!(
                    f,
                    "exceptional pattern: {two_node} has |J∩S1|=2 and {one} rotated by ({}) has |J∩S1|=1 inside it",
                    rot(rotation)
                )
            }
            Witness::None => write!(f, "none"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub mod_iso: bool,
    pub ho_iso: bool,
    pub witness: Witness,
}

/// Isomorphism in `Ho(H)` for modules of infinite projective dimension.
///
/// Away from the shape `(3, 2, …, 2)` this is isomorphism in `Mod(H)`. For
/// that shape, a non-conjugate pair is also isomorphic when `ξ = ξ'`,
/// `S_ξ = S`, the scalars agree, and after rotating one module its `J`
/// meets `S_1` in one node lying in the other's two-node `J ∩ S_1`, with
/// equal `J` on the `GL_2` factors. Rotations are quantified over since the
/// condition must only depend on the isomorphism classes.
pub fn ho_isomorphic(m: &SimpleSS, n: &SimpleSS) -> Result<Classification, GlnError> {
    check_compatible(m, n)?;
    for (x, name) in [(m, "a"), (n, "b")] {
        if x.has_finite_pd() {
            return Err(GlnError::FinitePd(name.into()));
        }
    }
    if let Some(rotation) = mod_isomorphic(m, n)? {
        return Ok(Classification { mod_iso: true, ho_iso: true, witness: Witness::Conjugate { rotation } });
    }
    let none = Classification { mod_iso: false, ho_iso: false, witness: Witness::None };
    if !m.spec.is_exceptional_shape() || m.lambda != n.lambda || m.nu != n.nu {
        return Ok(none);
    }
    for (two, one, two_node) in [(m, n, 'a'), (n, m, 'b')] {
        if let Some(rotation) = exceptional_rotation(&m.spec, &two.chi, &one.chi) {
            return Ok(Classification { mod_iso: false, ho_iso: true, witness: Witness::Exceptional { rotation, two_node } });
        }
    }
    Ok(none)
}

fn exceptional_rotation(spec: &GroupSpec, two: &AffChar, one: &AffChar) -> Option<Vec<i64>> {
    let d = spec.diagram();
    if s_xi(spec, two.xi()) != d.all() {
        return None;
    }
    let s1 = d.component_set(0);
    let j2 = two.j();
    if j2.intersection(s1).len() != 2 {
        return None;
    }
    let rest = d.all().difference(s1);
    rotations(spec.factors()).into_iter().find(|k| {
        let c = conj_char(spec, one, k).expect("rotation length matches");
        let j1 = c.j();
        c.xi() == two.xi()
            && j1.intersection(s1).len() == 1
            && j1.intersection(s1).is_subset(j2)
            && j1.intersection(rest) == j2.intersection(rest)
    })
}

/// Order key of a character: per-node codes (`0` on `J`, `1` on
/// `S_ξ ∖ J`, `2` off `S_ξ`), then exponents.
fn char_key(spec: &GroupSpec, chi: &AffChar) -> (Vec<u8>, Vec<u64>) {
    let codes = chi
        .values(spec)
        .into_iter()
        .map(|v| match v {
            Some(-1) => 0,
            Some(_) => 1,
            None => 2,
        })
        .collect();
    (codes, chi.xi().flat())
}

/// The rotation of `χ` with the least key.
pub fn canonical_char(spec: &GroupSpec, chi: &AffChar) -> AffChar {
    rotations(spec.factors())
        .iter()
        .map(|k| conj_char(spec, chi, k).expect("rotation length matches"))
        .min_by_key(|c| char_key(spec, c))
        .expect("at least the identity rotation")
}

/// One simple module per isomorphism class: canonical characters in key
/// order, then scalar tuples in lexicographic order over the nonzero field
/// elements.
pub fn enumerate_simples(spec: &GroupSpec, field: &Arc<FieldCtx>, cap: usize) -> Result<Vec<SimpleSS>, GlnError> {
    let mut chars: Vec<AffChar> = haff::supersingular_chars(spec, haff::DEFAULT_CHAR_CAP)?
        .into_iter()
        .filter(|c| canonical_char(spec, c) == *c)
        .collect();
    chars.sort_by_cached_key(|c| char_key(spec, c));
    let units: Vec<Fe> = field.units().collect();
    let slots = spec.r() + spec.torus_rank();
    let per_char = (units.len() as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    let count = per_char.saturating_mul(chars.len() as u128);
    if count > cap as u128 {
        return Err(GlnError::CapExceeded { count, cap });
    }
    let tuples = rotations(&vec![units.len(); slots]);
    let mut out = Vec::with_capacity(count as usize);
    for chi in chars {
        for t in &tuples {
            let scalars: Vec<Fe> = t.iter().map(|&i| units[i as usize]).collect();
            let (lambda, nu) = scalars.split_at(spec.r());
            out.push(build_simple(spec, chi.clone(), lambda.to_vec(), nu.to_vec(), field)?);
        }
    }
    Ok(out)
}

/// Restriction of `χ` to `H_F`: `ξ` together with `χ(T_ŝ)` on `S_F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceChar {
    pub xi: TorusChar,
    pub j: NodeSet,
}

/// Non-projective summands of the restriction of `m` to `H_F`, sorted. Two
/// modules isomorphic in `Ho(H)` have equal profiles on every face.
pub fn face_stable_profile(m: &SimpleSS, f: &Face) -> Result<Vec<FaceChar>, GlnError> {
    let mut out = Vec::new();
    for c in restriction_decomposition(m) {
        if !res_face_projective(&m.spec, &c, f)? {
            out.push(FaceChar { xi: c.xi().clone(), j: c.j().intersection(f.nodes()) });
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub id_a: usize,
    pub id_b: usize,
    pub mod_iso: bool,
    pub ho_iso: bool,
    pub witness: String,
}

/// Simples of infinite projective dimension and every pair `id_a ≤ id_b`
/// with both decisions. Finite-pd simples are zero in `Ho(H)`
/// and are left out.
pub fn sweep(spec: &GroupSpec, field: &Arc<FieldCtx>, cap: usize) -> Result<(Vec<SimpleSS>, Vec<SweepRow>), GlnError> {
    let simples: Vec<SimpleSS> =
        enumerate_simples(spec, field, cap)?.into_iter().filter(|m| !m.has_finite_pd()).collect();
    let mut rows = Vec::new();
    for a in 0..simples.len() {
        for b in a..simples.len() {
            let c = ho_isomorphic(&simples[a], &simples[b])?;
            rows.push(SweepRow { id_a: a, id_b: b, mod_iso: c.mod_iso, ho_iso: c.ho_iso, witness: c.witness.to_string() });
        }
    }
    Ok((simples, rows))
}

#[cfg(test)]
mod tests;

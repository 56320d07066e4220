//! Brute-force models: monomial lifts, the finite algebras `H_F` on group
//! bases, explicit simple modules, and sweeps comparing them with the
//! combinatorial predicates.

mod check;
mod face_alg;
mod lifts;
mod model;

pub use check::{run_oracle_check, CheckRow, OracleReport};
pub use face_alg::{eval_xi, BruteFaceAlg, DEFAULT_FACE_CAP};
pub use lifts::{build_lifts, Lifts, MonomialMatrix};
pub use model::{brute_mod_isomorphic, brute_module_model, ModuleModel};

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::ff::{FfError, FieldCtx};
use crate::gln::GlnError;
use crate::haff::{AffChar, HaffError, TorusChar};
use crate::weyl::{Face, GroupSpec, NodeSet, WeylError};
use crate::zerohecke::{is_projective, stable_hom_dim, AlgebraError, HModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the oracle needs q prime, got q={0}")]
    NonPrimeQ(u64),
    #[error("lift identity fails: {0}")]
    LiftRelation(String),
    #[error("face algebra of dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: u128, cap: usize },
    #[error("field characteristic or field mismatch")]
    FieldMismatch,
    #[error("oracle invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Haff(#[from] HaffError),
    #[error(transparent)]
    Gln(#[from] GlnError),
}

/// Nodes whose coroot `α_s^∨(F_q^×)` lies in `ker ξ`, by evaluating `ξ` on
/// the lifted coroot matrices.
pub fn brute_s_xi(lifts: &Lifts, xi: &TorusChar) -> NodeSet {
    let f = lifts.field();
    NodeSet::from_nodes(
        (0..lifts.spec().node_count()).filter(|&s| f.units().all(|x| eval_xi(lifts, xi, &lifts.coroot(s, x)) == 1)),
    )
}

/// Supersingularity by comparing `χ` on each component with the twisted
/// trivial and sign characters, which exist exactly when the component
/// lies in `S_ξ`.
pub fn brute_supersingular(lifts: &Lifts, chi: &AffChar) -> Result<bool, OracleError> {
    let spec = lifts.spec();
    let d = spec.diagram();
    let f = lifts.field();
    let sx = brute_s_xi(lifts, chi.xi());
    for i in 0..d.components().len() {
        let comp = d.component_set(i);
        if !comp.is_subset(sx) {
            continue;
        }
        // the twisted characters take 0 and −1 on every T_ŝ; both must
        // satisfy v² = v·Σ_x ξ(α^∨(x))
        for s in comp.iter() {
            let c = f.units().fold(0, |acc, x| f.add(acc, eval_xi(lifts, chi.xi(), &lifts.coroot(s, x))));
            let v = f.from_int(-1);
            if f.mul(v, v) != f.mul(v, c) {
                return Err(OracleError::Internal(format!("twisted sign fails the quadratic relation at {}", d.name(s))));
            }
        }
        let j = chi.j().intersection(comp);
        if j.is_empty() || j == comp {
            return Ok(false);
        }
    }
    Ok(true)
}

type FaceKey = (TorusChar, NodeSet);

/// Face algebras and per-face decisions for one group and field, cached.
#[derive(Debug)]
pub struct Oracle {
    lifts: Arc<Lifts>,
    field: Arc<FieldCtx>,
    cap: usize,
    algs: HashMap<NodeSet, Arc<BruteFaceAlg>>,
    proj: HashMap<(NodeSet, FaceKey), bool>,
    stable: HashMap<(NodeSet, FaceKey, FaceKey), usize>,
    modules: HashMap<(NodeSet, FaceKey), HModule>,
}

/// Dimension of the space of compatible families of stable maps, and
/// whether one of them is an isomorphism on every face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyHom {
    pub dim: u32,
    pub contains_iso: bool,
}

impl Oracle {
    pub fn new(spec: &GroupSpec, field: &Arc<FieldCtx>, cap: usize) -> Result<Self, OracleError> {
        let lifts = Arc::new(build_lifts(spec)?);
        if u64::from(field.p()) != spec.p() {
            return Err(OracleError::FieldMismatch);
        }
        Ok(Oracle {
            lifts,
            field: field.clone(),
            cap,
            algs: HashMap::new(),
            proj: HashMap::new(),
            stable: HashMap::new(),
            modules: HashMap::new(),
        })
    }

    pub fn lifts(&self) -> &Arc<Lifts> {
        &self.lifts
    }
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn spec(&self) -> &GroupSpec {
        self.lifts.spec()
    }

    pub fn face_alg(&mut self, face: NodeSet) -> Result<Arc<BruteFaceAlg>, OracleError> {
        if let Some(a) = self.algs.get(&face) {
            return Ok(a.clone());
        }
        let a = Arc::new(BruteFaceAlg::new(&self.lifts, face, &self.field, self.cap)?);
        self.algs.insert(face, a.clone());
        Ok(a)
    }

    fn key(chi: &AffChar, face: NodeSet) -> FaceKey {
        (chi.xi().clone(), chi.j().intersection(face))
    }

    /// `χ|_F` as a module over the brute face algebra.
    pub fn res_module(&mut self, chi: &AffChar, face: &Face) -> Result<HModule, OracleError> {
        let k = (face.nodes(), Self::key(chi, face.nodes()));
        if let Some(m) = self.modules.get(&k) {
            return Ok(m.clone());
        }
        let m = self.face_alg(face.nodes())?.character(chi)?;
        self.modules.insert(k, m.clone());
        Ok(m)
    }

    pub fn res_projective(&mut self, chi: &AffChar, face: &Face) -> Result<bool, OracleError> {
        let k = (face.nodes(), Self::key(chi, face.nodes()));
        if let Some(&b) = self.proj.get(&k) {
            return Ok(b);
        }
        let b = is_projective(&self.res_module(chi, face)?);
        self.proj.insert(k, b);
        Ok(b)
    }

    pub fn stable_hom(&mut self, chi: &AffChar, chi2: &AffChar, face: &Face) -> Result<usize, OracleError> {
        let k = (face.nodes(), Self::key(chi, face.nodes()), Self::key(chi2, face.nodes()));
        if let Some(&b) = self.stable.get(&k) {
            return Ok(b);
        }
        let v = stable_hom_dim(&self.res_module(chi, face)?, &self.res_module(chi2, face)?)?;
        self.stable.insert(k, v);
        Ok(v)
    }

    /// Families `(x_F)` of stable maps `χ|_F → χ'|_F`, one per face, with
    /// `x_F` the restriction of `x_{F'}` whenever `S_F ⊆ S_{F'}`.
    ///
    /// Each stable Hom space between characters is 0 or spanned by the
    /// identity, and restriction sends the identity to the identity, so a
    /// family is a choice of scalar per face subject to equalities along
    /// comparable faces with nonzero stable Hom. A face below one with zero
    /// stable Hom is forced to zero, and that zero spreads along the
    /// equalities, upward included.
    pub fn family_hom(&mut self, chi: &AffChar, chi2: &AffChar) -> Result<FamilyHom, OracleError> {
        let faces = self.spec().diagram().faces();
        let mut sd = BTreeMap::new();
        for f in &faces {
            let v = self.stable_hom(chi, chi2, f)?;
            if v > 1 {
                return Err(OracleError::Internal(format!("stable Hom of characters has dimension {v}")));
            }
            sd.insert(f.nodes(), v);
        }
        let live: Vec<NodeSet> = sd.iter().filter(|(_, &v)| v == 1).map(|(&s, _)| s).collect();
        let killed = |s: NodeSet| sd.iter().any(|(&t, &v)| v == 0 && s != t && s.is_subset(t));
        let mut parent: Vec<usize> = (0..live.len()).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for a in 0..live.len() {
            for b in 0..live.len() {
                if a != b && live[a].is_subset(live[b]) {
                    let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let mut dead = vec![false; live.len()];
        for (i, &s) in live.iter().enumerate() {
            if killed(s) {
                let r = root(&mut parent, i);
                dead[r] = true;
            }
        }
        let mut alive = Vec::new();
        let mut dim = 0;
        for i in 0..live.len() {
            let r = root(&mut parent, i);
            if !dead[r] {
                alive.push(live[i]);
                dim += u32::from(r == i);
            }
        }
        let mut contains_iso = dim > 0;
        for f in &faces {
            if !contains_iso {
                break;
            }
            if alive.contains(&f.nodes()) {
                continue;
            }
            contains_iso = self.res_projective(chi, f)? && self.res_projective(chi2, f)?;
        }
        Ok(FamilyHom { dim, contains_iso })
    }
}

pub fn brute_res_projective(spec: &GroupSpec, chi: &AffChar, face: &Face, field: &Arc<FieldCtx>) -> Result<bool, OracleError> {
    Oracle::new(spec, field, DEFAULT_FACE_CAP)?.res_projective(chi, face)
}

pub fn brute_stable_hom(
    spec: &GroupSpec,
    chi: &AffChar,
    chi2: &AffChar,
    face: &Face,
    field: &Arc<FieldCtx>,
) -> Result<usize, OracleError> {
    Oracle::new(spec, field, DEFAULT_FACE_CAP)?.stable_hom(chi, chi2, face)
}

#[cfg(test)]
mod tests;

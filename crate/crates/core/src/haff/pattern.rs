//! Diagram-level decisions on characters given as `(S_ξ, J)` over an
//! arbitrary affine diagram. The GL layer reduces to these after computing
//! `S_ξ` from exponents.

use super::HaffError;
use crate::weyl::{AffineDynkin, Face, NodeId, NodeSet};

/// A character of `H_aff` seen through its node data: `S_ξ` and `J ⊆ S_ξ`.
/// `xi_key` identifies `ξ` for equality tests only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharPattern {
    pub s_xi: NodeSet,
    pub j: NodeSet,
    pub xi_key: u64,
}

/// `χ(T_ŝ)` on a node of `S_ξ`: `−1` on `J`, `0` off it. `None` off `S_ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeValue {
    MinusOne,
    Zero,
}

impl CharPattern {
    pub fn new(d: &AffineDynkin, s_xi: NodeSet, j: NodeSet, xi_key: u64) -> Result<Self, HaffError> {
        if !s_xi.is_subset(d.all()) || !j.is_subset(s_xi) {
            return Err(HaffError::InvalidPair(format!("J = {j:?} must lie in S_xi = {s_xi:?}")));
        }
        Ok(CharPattern { s_xi, j, xi_key })
    }

    pub fn value(&self, s: NodeId) -> Option<NodeValue> {
        if !self.s_xi.contains(s) {
            None
        } else if self.j.contains(s) {
            Some(NodeValue::MinusOne)
        } else {
            Some(NodeValue::Zero)
        }
    }
}

/// Restriction to a component is a twisted trivial or twisted sign
/// character exactly when `ξ` extends over the component (`S_i ⊆ S_ξ`) and
/// `J` is constant on it; supersingular means this happens nowhere.
pub fn is_supersingular(d: &AffineDynkin, chi: &CharPattern) -> bool {
    (0..d.components().len()).all(|i| {
        let c = d.component_set(i);
        if !c.is_subset(chi.s_xi) {
            return true;
        }
        let meet = chi.j.intersection(c);
        !meet.is_empty() && meet != c
    })
}

/// Finite projective dimension for a supersingular character: every
/// component of rank one and `S_ξ = S`.
pub fn has_finite_pd(d: &AffineDynkin, chi: &CharPattern) -> Result<bool, HaffError> {
    if !is_supersingular(d, chi) {
        return Err(HaffError::NotSupersingular);
    }
    Ok(d.components().iter().all(|c| c.nodes.len() == 2) && chi.s_xi == d.all())
}

pub fn res_face_projective(d: &AffineDynkin, chi: &CharPattern, f: &Face) -> bool {
    let sf = f.nodes();
    if !sf.is_subset(chi.s_xi) {
        return false;
    }
    !sf.iter().any(|s| sf.iter().any(|t| d.adjacent(s, t) && chi.value(s) != chi.value(t)))
}

/// Dimension of the image of `[χ, χ']` in the product of the face
/// homotopy categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HomImage {
    pub dim: u32,
    pub contains_iso: bool,
}

pub fn ho_delta_hom(d: &AffineDynkin, chi: &CharPattern, chi2: &CharPattern) -> Result<HomImage, HaffError> {
    if chi == chi2 {
        return Err(HaffError::EqualCharacters);
    }
    for c in [chi, chi2] {
        if has_finite_pd(d, c)? {
            return Err(HaffError::FinitePd);
        }
    }
    let zero = HomImage { dim: 0, contains_iso: false };
    let comps = d.components();
    let rank_two: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].nodes.len() == 3).collect();
    let others_rank_one = comps.iter().all(|c| c.nodes.len() == 3 || c.nodes.len() == 2);
    if rank_two.len() != 1 || !others_rank_one {
        return Ok(zero);
    }
    if chi.xi_key != chi2.xi_key || chi.s_xi != d.all() || chi2.s_xi != d.all() {
        return Ok(zero);
    }
    let main = rank_two[0];
    for i in (0..comps.len()).filter(|&i| i != main) {
        let c = d.component_set(i);
        if chi.j.intersection(c) != chi2.j.intersection(c) {
            return Ok(zero);
        }
    }
    let c = d.component_set(main);
    let special = |a: NodeSet, b: NodeSet| {
        let (ja, jb) = (a.intersection(c), b.intersection(c));
        if ja.len() != 2 || jb.len() != 1 || !jb.is_subset(ja) {
            return false;
        }
        // ja = {s, s'}, jb = {s'}, and the remaining node s'' must touch s'
        let s1 = jb.iter().next().expect("one node");
        let s2 = c.difference(ja).iter().next().expect("one node");
        d.adjacent(s1, s2)
    };
    if special(chi.j, chi2.j) || special(chi2.j, chi.j) {
        Ok(HomImage { dim: 1, contains_iso: false })
    } else {
        Ok(zero)
    }
}

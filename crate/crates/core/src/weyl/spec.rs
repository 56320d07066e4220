use serde::{Deserialize, Serialize};

use super::diagram::{AffineDynkin, NodeId};
use super::WeylError;
use crate::ff::prime_power;

/// Upper bound on |S| so node sets fit a machine word.
pub const MAX_NODES: usize = 64;

/// `GL_{n_1} × … × GL_{n_r} × (torus)^l` over a residue field of size `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct GroupSpec {
    factors: Vec<usize>,
    torus_rank: usize,
    q: u64,
    p: u64,
    f: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    factors: Vec<usize>,
    torus_rank: usize,
    q: u64,
}

impl TryFrom<RawSpec> for GroupSpec {
    type Error = WeylError;
    fn try_from(r: RawSpec) -> Result<Self, WeylError> {
        GroupSpec::new(r.factors, r.torus_rank, r.q)
    }
}

impl From<GroupSpec> for RawSpec {
    fn from(s: GroupSpec) -> Self {
        RawSpec { factors: s.factors, torus_rank: s.torus_rank, q: s.q }
    }
}

impl GroupSpec {
    /// Validates and canonicalizes; factors are sorted non-increasing.
    pub fn new(mut factors: Vec<usize>, torus_rank: usize, q: u64) -> Result<Self, WeylError> {
        let (p, f) = prime_power(q).ok_or(WeylError::NotPrimePower(q))?;
        if let Some(&n) = factors.iter().find(|&&n| n < 2) {
            return Err(WeylError::FactorTooSmall(n));
        }
        let nodes: usize = factors.iter().sum();
        if nodes > MAX_NODES {
            return Err(WeylError::TooManyNodes(nodes));
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        Ok(GroupSpec { factors, torus_rank, q, p, f })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }
    /// Number of GL factors `r`.
    pub fn r(&self) -> usize {
        self.factors.len()
    }
    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    /// |S| = Σ n_i.
    pub fn node_count(&self) -> usize {
        self.factors.iter().sum()
    }
    /// Rank of the maximal torus, Σ n_i + l.
    pub fn torus_dim(&self) -> usize {
        self.node_count() + self.torus_rank
    }
    /// Global index of the first node (and first torus coordinate) of factor `i`.
    pub fn offset(&self, i: usize) -> usize {
        self.factors[..i].iter().sum()
    }
    pub fn node(&self, i: usize, j: usize) -> NodeId {
        debug_assert!(j < self.factors[i]);
        self.offset(i) + j
    }
    /// `(factor, local index)` of a global node.
    pub fn locate(&self, node: NodeId) -> Option<(usize, usize)> {
        let mut off = 0;
        for (i, &n) in self.factors.iter().enumerate() {
            if node < off + n {
                return Some((i, node - off));
            }
            off += n;
        }
        None
    }
    /// Shape `(3, 2, …, 2)`: the only shape with exceptional Ho-isomorphisms.
    pub fn is_exceptional_shape(&self) -> bool {
        self.factors.first() == Some(&3) && self.factors[1..].iter().all(|&n| n == 2)
    }

    pub fn diagram(&self) -> AffineDynkin {
        AffineDynkin::gl(self)
    }

    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self.factors.iter().map(|n| format!("GL{n}")).collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        if parts.is_empty() {
            parts.push("T0".into());
        }
        format!("{} q={}", parts.join("x"), self.q)
    }
}

/// Rotates a node of factor `i` (0-based) by `k` steps: `s_{i,j} ↦ s_{i,j+k}`.
pub fn omega_rotate(spec: &GroupSpec, i: usize, k: i64, node: NodeId) -> Result<NodeId, WeylError> {
    let (comp, j) = spec.locate(node).ok_or(WeylError::UnknownNode(node))?;
    if comp != i {
        return Err(WeylError::NodeNotInComponent { node, component: i });
    }
    let n = spec.factors[i] as i64;
    Ok(spec.offset(i) + (j as i64 + k).rem_euclid(n) as usize)
}

//! Group specifications, affine Dynkin diagrams, faces, the rotation action
//! on nodes, and finite Coxeter groups attached to faces.

mod coxeter;
mod diagram;
mod spec;

pub use coxeter::{
    enumerate_coxeter, enumerate_coxeter_capped, CoxeterGroup, CoxeterType, FiniteType, DEFAULT_ELEMENT_CAP,
    MAX_RANK,
};
pub use diagram::{AffineDynkin, AffineType, Bond, Component, Face, NodeId, NodeSet};
pub use spec::{omega_rotate, GroupSpec, MAX_NODES};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("GL factor of size {0}; factors must be at least 2")]
    FactorTooSmall(usize),
    #[error("{0} nodes exceed the supported maximum")]
    TooManyNodes(usize),
    #[error("unknown node index {0}")]
    UnknownNode(usize),
    #[error("unknown node name {0:?}")]
    UnknownName(String),
    #[error("node {node} is not in component {component}")]
    NodeNotInComponent { node: usize, component: usize },
    #[error("faces belong to different diagrams")]
    MismatchedFaces,
    #[error("{0} contains a whole component and is not a face")]
    NotAFace(String),
    #[error("Coxeter type is not finite")]
    NotFinite,
    #[error("rank {0} exceeds the enumeration cap")]
    RankTooLarge(usize),
    #[error("group of order {needed} exceeds the cap {cap}")]
    CapExceeded { needed: u128, cap: usize },
    #[error("generator name {0:?} appears twice")]
    OverlappingNames(String),
    #[error("cannot parse Coxeter type {0:?}")]
    Parse(String),
    #[error("invalid type {0}")]
    BadType(String),
}

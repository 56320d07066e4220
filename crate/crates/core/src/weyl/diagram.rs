use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::coxeter::CoxeterType;
use super::spec::{GroupSpec, MAX_NODES};
use super::WeylError;

/// Global node index into an [`AffineDynkin`].
pub type NodeId = usize;

/// Set of nodes as a bitmask (|S| ≤ 64).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(pub u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_nodes<I: IntoIterator<Item = NodeId>>(it: I) -> Self {
        NodeSet(it.into_iter().fold(0, |acc, n| acc | (1u64 << n)))
    }
    /// The nodes `start..start+len`.
    pub fn range(start: usize, len: usize) -> Self {
        if len == 0 {
            return NodeSet(0);
        }
        let ones = if len >= 64 { u64::MAX } else { (1u64 << len) - 1 };
        NodeSet(ones << start)
    }
    pub fn contains(self, n: NodeId) -> bool {
        self.0 >> n & 1 == 1
    }
    pub fn insert(&mut self, n: NodeId) {
        self.0 |= 1 << n;
    }
    pub fn remove(&mut self, n: NodeId) {
        self.0 &= !(1 << n);
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }
    pub fn intersection(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }
    pub fn difference(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }
    pub fn iter(self) -> impl Iterator<Item = NodeId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let n = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                n
            })
        })
    }
    pub fn to_vec(self) -> Vec<NodeId> {
        self.iter().collect()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Coxeter bond order m(s, t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bond {
    Order(u32),
    Infinite,
}

impl Bond {
    pub fn from_cartan(a: i64, b: i64) -> Bond {
        match a * b {
            0 => Bond::Order(2),
            1 => Bond::Order(3),
            2 => Bond::Order(4),
            3 => Bond::Order(6),
            _ => Bond::Infinite,
        }
    }
}

/// Irreducible untwisted affine types; node 0 is the affine node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineType {
    /// Affine `A_n` (n+1 nodes on a cycle; `A_1` has an infinite bond).
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl AffineType {
    pub fn validate(self) -> Result<Self, WeylError> {
        let ok = match self {
            AffineType::A(n) => n >= 1,
            AffineType::B(n) => n >= 3,
            AffineType::C(n) => n >= 2,
            AffineType::D(n) => n >= 4,
            _ => true,
        };
        ok.then_some(self).ok_or_else(|| WeylError::BadType(format!("{self:?}")))
    }

    /// Number of nodes (finite rank + 1).
    pub fn node_count(self) -> usize {
        match self {
            AffineType::A(n) | AffineType::B(n) | AffineType::C(n) | AffineType::D(n) => n + 1,
            AffineType::E6 => 7,
            AffineType::E7 => 8,
            AffineType::E8 => 9,
            AffineType::F4 => 5,
            AffineType::G2 => 3,
        }
    }

    pub fn name(self) -> String {
        match self {
            AffineType::A(n) => format!("A{n}~"),
            AffineType::B(n) => format!("B{n}~"),
            AffineType::C(n) => format!("C{n}~"),
            AffineType::D(n) => format!("D{n}~"),
            AffineType::E6 => "E6~".into(),
            AffineType::E7 => "E7~".into(),
            AffineType::E8 => "E8~".into(),
            AffineType::F4 => "F4~".into(),
            AffineType::G2 => "G2~".into(),
        }
    }

    /// Generalized Cartan matrix `a_ij = <α_i^∨, α_j>`.
    pub fn cartan(self) -> Vec<Vec<i64>> {
        let n = self.node_count();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        // (i, j, a_ij, a_ji)
        let mut edge = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self {
            AffineType::A(1) => edge(0, 1, -2, -2),
            AffineType::A(r) => {
                for i in 0..r {
                    edge(i, i + 1, -1, -1);
                }
                edge(r, 0, -1, -1);
            }
            AffineType::B(r) => {
                edge(0, 2, -1, -1);
                for i in 1..r - 1 {
                    edge(i, i + 1, -1, -1);
                }
                // α_r short
                edge(r - 1, r, -1, -2);
            }
            AffineType::C(r) => {
                // α_0 and α_r long, the rest short
                edge(0, 1, -1, -2);
                for i in 1..r - 1 {
                    edge(i, i + 1, -1, -1);
                }
                edge(r - 1, r, -2, -1);
            }
            AffineType::D(r) => {
                edge(0, 2, -1, -1);
                for i in 1..r - 1 {
                    edge(i, i + 1, -1, -1);
                }
                edge(r - 2, r, -1, -1);
            }
            AffineType::E6 | AffineType::E7 | AffineType::E8 => {
                let r = n - 1;
                // Bourbaki: 1-3-4-5-…-r with 2 attached to 4
                edge(1, 3, -1, -1);
                edge(2, 4, -1, -1);
                for i in 3..r {
                    edge(i, i + 1, -1, -1);
                }
                let hook = match self {
                    AffineType::E6 => 2,
                    AffineType::E7 => 1,
                    _ => 8,
                };
                edge(0, hook, -1, -1);
            }
            AffineType::F4 => {
                edge(0, 1, -1, -1);
                edge(1, 2, -1, -1);
                edge(2, 3, -1, -2);
                edge(3, 4, -1, -1);
            }
            AffineType::G2 => {
                // α_1 short, α_2 long
                edge(0, 2, -1, -1);
                edge(1, 2, -3, -1);
            }
        }
        a
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: AffineType,
    pub nodes: Vec<NodeId>,
}

/// The set `S` of simple affine reflections with bonds and components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDynkin {
    names: Vec<String>,
    component: Vec<usize>,
    components: Vec<Component>,
    cartan: Vec<Vec<i64>>,
    fingerprint: u64,
}

/// A face of the closed fundamental chamber, modeled by `S_F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    nodes: NodeSet,
    fingerprint: u64,
}

impl Face {
    pub fn nodes(&self) -> NodeSet {
        self.nodes
    }
    pub fn is_chamber(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl AffineDynkin {
    pub fn from_types(types: &[AffineType]) -> Result<Self, WeylError> {
        let total: usize = types.iter().map(|t| t.node_count()).sum();
        if total > MAX_NODES {
            return Err(WeylError::TooManyNodes(total));
        }
        let mut names = Vec::new();
        let mut component = Vec::new();
        let mut components = Vec::new();
        let mut cartan = vec![vec![0i64; total]; total];
        let mut off = 0;
        for (ci, &t) in types.iter().enumerate() {
            let t = t.validate()?;
            let local = t.cartan();
            let n = local.len();
            for (i, row) in local.iter().enumerate() {
                names.push(format!("s{}_{}", ci + 1, i));
                component.push(ci);
                for (j, &x) in row.iter().enumerate() {
                    cartan[off + i][off + j] = x;
                }
            }
            components.push(Component { kind: t, nodes: (off..off + n).collect() });
            off += n;
        }
        let mut h = DefaultHasher::new();
        cartan.hash(&mut h);
        component.hash(&mut h);
        Ok(AffineDynkin { names, component, components, cartan, fingerprint: h.finish() })
    }

    /// Diagram of a GL-product spec: one affine `A_{n_i - 1}` cycle per factor.
    pub fn gl(spec: &GroupSpec) -> Self {
        let types: Vec<AffineType> = spec.factors().iter().map(|&n| AffineType::A(n - 1)).collect();
        Self::from_types(&types).expect("validated spec")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn all(&self) -> NodeSet {
        NodeSet::range(0, self.len())
    }
    pub fn name(&self, n: NodeId) -> &str {
        &self.names[n]
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|x| x == name)
    }
    pub fn component_of(&self, n: NodeId) -> usize {
        self.component[n]
    }
    pub fn components(&self) -> &[Component] {
        &self.components
    }
    pub fn component_set(&self, i: usize) -> NodeSet {
        NodeSet::from_nodes(self.components[i].nodes.iter().copied())
    }
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    pub fn bond(&self, s: NodeId, t: NodeId) -> Bond {
        if s == t {
            return Bond::Order(1);
        }
        Bond::from_cartan(self.cartan[s][t], self.cartan[t][s])
    }
    pub fn adjacent(&self, s: NodeId, t: NodeId) -> bool {
        s != t && self.cartan[s][t] != 0
    }
    pub fn names_of(&self, set: NodeSet) -> Vec<String> {
        set.iter().map(|n| self.names[n].clone()).collect()
    }
    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<NodeSet, WeylError> {
        let mut set = NodeSet::EMPTY;
        for name in names {
            let n = self
                .node_by_name(name.as_ref())
                .ok_or_else(|| WeylError::UnknownName(name.as_ref().to_string()))?;
            set.insert(n);
        }
        Ok(set)
    }

    pub fn is_face_set(&self, set: NodeSet) -> bool {
        set.is_subset(self.all())
            && (0..self.components.len()).all(|i| {
                let c = self.component_set(i);
                set.intersection(c) != c
            })
    }

    pub fn face(&self, set: NodeSet) -> Result<Face, WeylError> {
        if !self.is_face_set(set) {
            return Err(WeylError::NotAFace(format!("{set:?}")));
        }
        Ok(Face { nodes: set, fingerprint: self.fingerprint })
    }

    pub fn face_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Face, WeylError> {
        self.face(self.set_from_names(names)?)
    }

    /// All faces, ordered lexicographically by their sorted node lists.
    pub fn faces(&self) -> Vec<Face> {
        let mut sets = vec![NodeSet::EMPTY];
        for i in 0..self.components.len() {
            let nodes = &self.components[i].nodes;
            let full = (1u64 << nodes.len()) - 1;
            let mut next = Vec::new();
            for base in &sets {
                for mask in 0..full {
                    let part = NodeSet::from_nodes(
                        nodes.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &n)| n),
                    );
                    next.push(base.union(part));
                }
            }
            sets = next;
        }
        sets.sort_by_key(|s| s.to_vec());
        sets.into_iter().map(|nodes| Face { nodes, fingerprint: self.fingerprint }).collect()
    }

    /// `S_F ⊆ S_F'`, i.e. `F'` lies in the closure of `F`.
    pub fn closure_leq(&self, f: &Face, g: &Face) -> Result<bool, WeylError> {
        if f.fingerprint != self.fingerprint || g.fingerprint != self.fingerprint {
            return Err(WeylError::MismatchedFaces);
        }
        Ok(f.nodes.is_subset(g.nodes))
    }

    /// Coxeter type of `W_F` (the subdiagram on `S_F`).
    pub fn face_type(&self, f: &Face) -> Result<CoxeterType, WeylError> {
        if f.fingerprint != self.fingerprint {
            return Err(WeylError::MismatchedFaces);
        }
        self.subdiagram_type(f.nodes)
    }

    pub fn subdiagram_type(&self, set: NodeSet) -> Result<CoxeterType, WeylError> {
        let idx = set.to_vec();
        let cartan = idx.iter().map(|&i| idx.iter().map(|&j| self.cartan[i][j]).collect()).collect();
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        CoxeterType::from_cartan(cartan, names)
    }
}

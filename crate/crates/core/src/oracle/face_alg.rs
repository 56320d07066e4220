//! `H_F` realized on the basis `{T_g : g ∈ T(F_q)·W_F}` of monomial lifts.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::lifts::{Lifts, MonomialMatrix};
use super::OracleError;
use crate::ff::{FFMatrix, Fe, FieldCtx};
use crate::haff::{AffChar, TorusChar};
use crate::weyl::{Bond, NodeId, NodeSet};
use crate::zerohecke::{FdAlgebra, HModule};

pub const DEFAULT_FACE_CAP: usize = 4096;

#[derive(Debug)]
pub struct BruteFaceAlg {
    lifts: Arc<Lifts>,
    face: NodeSet,
    nodes: Vec<NodeId>,
    elems: Vec<MonomialMatrix>,
    index: HashMap<MonomialMatrix, usize>,
    length: Vec<u32>,
    alg: Arc<FdAlgebra>,
}

/// `ξ(t)` for a torus element, as an element of the prime field.
pub fn eval_xi(lifts: &Lifts, xi: &TorusChar, t: &MonomialMatrix) -> Fe {
    debug_assert!(t.is_torus());
    let f = lifts.field();
    xi.flat().iter().zip(t.coef()).fold(1, |acc, (&a, &x)| f.mul(acc, f.pow(x, a as i64)))
}

impl BruteFaceAlg {
    /// `field` must have characteristic `p`; the structure constants are
    /// 0/1 so any such field works.
    pub fn new(lifts: &Arc<Lifts>, face: NodeSet, field: &Arc<FieldCtx>, cap: usize) -> Result<Self, OracleError> {
        let spec = lifts.spec();
        if u64::from(field.p()) != spec.p() {
            return Err(OracleError::FieldMismatch);
        }
        let d = spec.diagram();
        if !d.is_face_set(face) {
            return Err(OracleError::Internal(format!("{:?} is not a face", d.names_of(face))));
        }
        let qf = lifts.field().clone();
        let n = lifts.dim();
        let expected = (spec.q() as u128 - 1).pow(n as u32) * d.subdiagram_type(face)?.order();
        if expected > cap as u128 {
            return Err(OracleError::CapExceeded { dim: expected, cap });
        }
        let g = qf.primitive();
        let torus_gens: Vec<MonomialMatrix> = (0..n).map(|c| lifts.torus_coordinate(c, g)).collect();
        let nodes = face.to_vec();
        let refl: Vec<&MonomialMatrix> = nodes.iter().map(|&s| lifts.s_hat(s)).collect();

        // 0-1 BFS: torus steps are free, reflections cost one
        let id = MonomialMatrix::identity(n);
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut length = vec![0u32];
        let mut done = vec![false];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            if done[i] {
                continue;
            }
            done[i] = true;
            let steps = torus_gens.iter().map(|t| (t, 0)).chain(refl.iter().map(|&s| (s, 1)));
            for (h, cost) in steps {
                let x = elems[i].mul(h, &qf);
                let l = length[i] + cost;
                match index.get(&x) {
                    Some(&k) => {
                        if l < length[k] {
                            length[k] = l;
                            push(&mut queue, k, cost);
                        }
                    }
                    None => {
                        let k = elems.len();
                        if k >= cap {
                            return Err(OracleError::CapExceeded { dim: k as u128 + 1, cap });
                        }
                        index.insert(x.clone(), k);
                        elems.push(x);
                        length.push(l);
                        done.push(false);
                        push(&mut queue, k, cost);
                    }
                }
            }
        }
        if elems.len() as u128 != expected {
            return Err(OracleError::Internal(format!("group has {} elements, expected {expected}", elems.len())));
        }

        let dim = elems.len();
        let mut gen_names: Vec<String> = (0..n).map(|c| format!("t{c}")).collect();
        gen_names.extend(nodes.iter().map(|&s| d.name(s).to_string()));
        let mut gens = Vec::new();
        for t in &torus_gens {
            let mut m = FFMatrix::zeros(field, dim, dim);
            for (i, e) in elems.iter().enumerate() {
                m.set(i, index[&e.mul(t, &qf)], 1);
            }
            gens.push(m);
        }
        for (&s, r) in nodes.iter().zip(&refl) {
            let coroots: Vec<MonomialMatrix> = qf.units().map(|x| lifts.coroot(s, x)).collect();
            let mut m = FFMatrix::zeros(field, dim, dim);
            for (i, e) in elems.iter().enumerate() {
                let up = index[&e.mul(r, &qf)];
                if length[up] > length[i] {
                    m.set(i, up, 1);
                } else {
                    for c in &coroots {
                        let k = index[&e.mul(c, &qf)];
                        m.set(i, k, field.add(m.get(i, k), 1));
                    }
                }
            }
            gens.push(m);
        }
        let mut tree = vec![None; dim];
        let mut seen = vec![false; dim];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, h) in torus_gens.iter().chain(refl.iter().copied()).enumerate() {
                let k = index[&elems[i].mul(h, &qf)];
                if !seen[k] && (gi < n || length[k] == length[i] + 1) {
                    seen[k] = true;
                    tree[k] = Some((i, gi));
                    queue.push_back(k);
                }
            }
        }
        let name = format!("H_F[{}] {}", d.names_of(face).join(","), spec.label());
        let alg = Arc::new(FdAlgebra::new(name, field, gen_names, gens, 0, tree)?);
        Ok(BruteFaceAlg { lifts: lifts.clone(), face, nodes, elems, index, length, alg })
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        &self.alg
    }
    pub fn dim(&self) -> usize {
        self.elems.len()
    }
    pub fn face(&self) -> NodeSet {
        self.face
    }
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }
    pub fn lifts(&self) -> &Arc<Lifts> {
        &self.lifts
    }
    pub fn length(&self, g: usize) -> u32 {
        self.length[g]
    }
    pub fn element(&self, g: usize) -> &MonomialMatrix {
        &self.elems[g]
    }
    pub fn index_of(&self, g: &MonomialMatrix) -> Option<usize> {
        self.index.get(g).copied()
    }
    fn field(&self) -> &Arc<FieldCtx> {
        self.alg.field()
    }
    fn torus_count(&self) -> usize {
        self.lifts.dim()
    }

    /// The generator matrix of `T_ŝ` for `s ∈ S_F`.
    pub fn t_s(&self, s: NodeId) -> Option<&FFMatrix> {
        let k = self.nodes.iter().position(|&x| x == s)?;
        Some(&self.alg.gens()[self.torus_count() + k])
    }

    /// Right multiplication by `T_t` for a torus element.
    pub fn t_torus(&self, t: &MonomialMatrix) -> FFMatrix {
        let qf = self.lifts.field();
        let mut m = FFMatrix::zeros(self.field(), self.dim(), self.dim());
        for (i, e) in self.elems.iter().enumerate() {
            m.set(i, self.index[&e.mul(t, qf)], 1);
        }
        m
    }

    /// `χ` restricted to `H_F`: `T_t ↦ ξ(t)`, `T_ŝ ↦ −1` on `J`, `0` off it.
    pub fn character(&self, chi: &AffChar) -> Result<HModule, OracleError> {
        let f = self.field();
        let g = self.lifts.field().primitive();
        let mut vals: Vec<Fe> =
            (0..self.torus_count()).map(|c| eval_xi(&self.lifts, chi.xi(), &self.lifts.torus_coordinate(c, g))).collect();
        vals.extend(self.nodes.iter().map(|&s| if chi.j().contains(s) { f.from_int(-1) } else { 0 }));
        let action = vals.into_iter().map(|v| FFMatrix::scalar(f, 1, v)).collect();
        Ok(HModule::new(&self.alg, 1, action)?)
    }

    /// Right multiplication by `e_ξ = |T(F_q)|⁻¹ Σ_t ξ(t) T_{t⁻¹}`.
    pub fn e_xi(&self, xi: &TorusChar) -> FFMatrix {
        let f = self.field();
        let qf = self.lifts.field();
        let n = self.torus_count();
        let units: Vec<Fe> = qf.units().collect();
        let size = f.pow(f.from_int(units.len() as i64), n as i64);
        let scale = f.inv(size).expect("p does not divide |T(F_q)|");
        let mut out = FFMatrix::zeros(f, self.dim(), self.dim());
        for k in crate::haff::rotations(&vec![units.len(); n]) {
            let t = MonomialMatrix::diagonal(k.iter().map(|&i| units[i as usize]).collect());
            let c = f.mul(scale, eval_xi(&self.lifts, xi, &t));
            let tinv = t.inverse(qf);
            for (i, e) in self.elems.iter().enumerate() {
                let j = self.index[&e.mul(&tinv, qf)];
                out.set(i, j, f.add(out.get(i, j), c));
            }
        }
        out
    }

    /// Braid and quadratic relations, `e_ξ` identities for every `ξ`, and
    /// associativity of the regular representation. Returns the failures.
    pub fn relation_failures(&self, xis: &[TorusChar], check_assoc: bool) -> (usize, Vec<String>) {
        let mut checks = 0;
        let mut fails = Vec::new();
        let f = self.field();
        let d = self.lifts.spec().diagram();
        let qf = self.lifts.field();
        let mut fail = |ok: bool, what: String| {
            checks += 1;
            if !ok {
                fails.push(what);
            }
        };
        for &s in &self.nodes {
            let ts = self.t_s(s).expect("node of the face");
            let mut c = FFMatrix::zeros(f, self.dim(), self.dim());
            for x in qf.units() {
                c = c.add(&self.t_torus(&self.lifts.coroot(s, x)));
            }
            fail(ts.mul(ts) == ts.mul(&c), format!("quadratic relation at {}", d.name(s)));
            for &t in &self.nodes {
                if t <= s {
                    continue;
                }
                if let Bond::Order(m) = d.bond(s, t) {
                    let tt = self.t_s(t).expect("node of the face");
                    let word = |a: &FFMatrix, b: &FFMatrix| {
                        (0..m).fold(FFMatrix::identity(f, self.dim()), |acc, i| acc.mul(if i % 2 == 0 { a } else { b }))
                    };
                    fail(word(ts, tt) == word(tt, ts), format!("braid relation {} {}", d.name(s), d.name(t)));
                }
            }
        }
        let gens = self.alg.gens();
        for xi in xis {
            let e = self.e_xi(xi);
            let label = xi.flat().iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            fail(e.mul(&e) == e, format!("e_xi idempotent for xi=({label})"));
            let s_xi = super::brute_s_xi(&self.lifts, xi);
            let central = gens.iter().all(|g| g.mul(&e) == e.mul(g));
            fail(central == self.face.is_subset(s_xi), format!("e_xi central iff S_F in S_xi, xi=({label})"));
            for &s in &self.nodes {
                let et = e.mul(self.t_s(s).expect("node"));
                let want = if s_xi.contains(s) { et.scale(f.from_int(-1)) } else { FFMatrix::zeros(f, self.dim(), self.dim()) };
                fail(et.mul(&et) == want, format!("(e_xi T_s)^2 at {} for xi=({label})", d.name(s)));
            }
        }
        if check_assoc {
            let r = self.alg.verify_regular();
            fail(r.is_ok(), format!("regular representation: {r:?}"));
        }
        (checks, fails)
    }
}

fn push(queue: &mut VecDeque<usize>, k: usize, cost: u32) {
    if cost == 0 {
        queue.push_front(k);
    } else {
        queue.push_back(k);
    }
}

//! Monomial matrices over `F_q[ϖ^{±1}]` and the explicit lifts `ŝ`, `ω̂_i`,
//! `ω̂_{T',j}` for GL-product groups.

use std::sync::Arc;

use super::OracleError;
use crate::ff::{Fe, FieldCtx};
use crate::weyl::{GroupSpec, NodeId};

/// `g · e_c = coef[c] ϖ^{val[c]} e_{perm[c]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    coef: Vec<Fe>,
    val: Vec<i64>,
}

impl MonomialMatrix {
    pub fn identity(n: usize) -> Self {
        MonomialMatrix { perm: (0..n).collect(), coef: vec![1; n], val: vec![0; n] }
    }

    pub fn diagonal(coef: Vec<Fe>) -> Self {
        let n = coef.len();
        MonomialMatrix { perm: (0..n).collect(), coef, val: vec![0; n] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
    pub fn coef(&self) -> &[Fe] {
        &self.coef
    }
    pub fn val(&self) -> &[i64] {
        &self.val
    }

    /// The composite `self ∘ other`.
    pub fn mul(&self, other: &Self, f: &FieldCtx) -> Self {
        let n = self.dim();
        let mut out = MonomialMatrix { perm: vec![0; n], coef: vec![0; n], val: vec![0; n] };
        for c in 0..n {
            let mid = other.perm[c];
            out.perm[c] = self.perm[mid];
            out.coef[c] = f.mul(other.coef[c], self.coef[mid]);
            out.val[c] = other.val[c] + self.val[mid];
        }
        out
    }

    pub fn inverse(&self, f: &FieldCtx) -> Self {
        let n = self.dim();
        let mut out = MonomialMatrix { perm: vec![0; n], coef: vec![0; n], val: vec![0; n] };
        for c in 0..n {
            let r = self.perm[c];
            out.perm[r] = c;
            out.coef[r] = f.inv(self.coef[c]).expect("monomial entries are units");
            out.val[r] = -self.val[c];
        }
        out
    }

    pub fn pow(&self, e: u64, f: &FieldCtx) -> Self {
        (0..e).fold(Self::identity(self.dim()), |acc, _| acc.mul(self, f))
    }

    pub fn conj(&self, x: &Self, f: &FieldCtx) -> Self {
        self.mul(x, f).mul(&self.inverse(f), f)
    }

    /// Diagonal with no `ϖ`: an element of `T(F_q)`.
    pub fn is_torus(&self) -> bool {
        self.perm.iter().enumerate().all(|(c, &r)| c == r) && self.val.iter().all(|&v| v == 0)
    }

    /// Image in the extended affine Weyl group (coefficients dropped).
    pub fn weyl_image(&self) -> (Vec<usize>, Vec<i64>) {
        (self.perm.clone(), self.val.clone())
    }

    /// Entry `c·ϖ^k` at `(row, col)`, if nonzero.
    pub fn entry(&self, row: usize, col: usize) -> Option<(Fe, i64)> {
        (self.perm[col] == row).then(|| (self.coef[col], self.val[col]))
    }
}

/// Lifts for a GL-product spec over `F_q`, `q = p`, in `N = Σ n_i + l`
/// coordinates.
///
/// On factor `i` (local coordinates `0..n`), `ŝ_j` for `j ≥ 1` sends
/// `e_{j−1} ↦ −e_j`, `e_j ↦ e_{j−1}`; `ω̂_i` sends `e_m ↦ e_{m+1}` and
/// `e_{n−1} ↦ ϖ e_0`; and `ŝ_0 := ω̂_i ŝ_{n−1} ω̂_i⁻¹`, i.e.
/// `e_0 ↦ ϖ⁻¹ e_{n−1}`, `e_{n−1} ↦ −ϖ e_0`.
#[derive(Clone, Debug)]
pub struct Lifts {
    spec: GroupSpec,
    field: Arc<FieldCtx>,
    s_hat: Vec<MonomialMatrix>,
    omega: Vec<MonomialMatrix>,
    omega_torus: Vec<MonomialMatrix>,
    coroot_slots: Vec<(usize, usize)>,
    rotation_correction: Vec<MonomialMatrix>,
}

pub fn build_lifts(spec: &GroupSpec) -> Result<Lifts, OracleError> {
    if spec.f() != 1 {
        return Err(OracleError::NonPrimeQ(spec.q()));
    }
    let field = FieldCtx::prime(spec.p()).map_err(|e| OracleError::Internal(e.to_string()))?;
    let n_all = spec.torus_dim();
    let minus = field.from_int(-1);
    let mut s_hat = vec![MonomialMatrix::identity(n_all); spec.node_count()];
    let mut coroot_slots = vec![(0, 0); spec.node_count()];
    let mut omega = Vec::new();
    for (i, &n) in spec.factors().iter().enumerate() {
        let o = spec.offset(i);
        let mut w = MonomialMatrix::identity(n_all);
        for m in 0..n {
            w.perm[o + m] = o + (m + 1) % n;
        }
        w.val[o + n - 1] = 1;
        for j in 1..n {
            let s = &mut s_hat[spec.node(i, j)];
            let (u, v) = (o + j - 1, o + j);
            s.perm[u] = v;
            s.coef[u] = minus;
            s.perm[v] = u;
            coroot_slots[spec.node(i, j)] = (u, v);
        }
        let s0 = w.conj(&s_hat[spec.node(i, n - 1)], &field);
        s_hat[spec.node(i, 0)] = s0;
        coroot_slots[spec.node(i, 0)] = (o + n - 1, o);
        omega.push(w);
    }
    let omega_torus = (0..spec.torus_rank())
        .map(|j| {
            let mut w = MonomialMatrix::identity(n_all);
            w.val[spec.node_count() + j] = 1;
            w
        })
        .collect();
    let mut lifts =
        Lifts { spec: spec.clone(), field, s_hat, omega, omega_torus, coroot_slots, rotation_correction: Vec::new() };
    lifts.rotation_correction = lifts.check_identities()?;
    Ok(lifts)
}

impl Lifts {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    /// `F_q` as a prime field.
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.spec.torus_dim()
    }
    pub fn s_hat(&self, s: NodeId) -> &MonomialMatrix {
        &self.s_hat[s]
    }
    pub fn omega(&self, i: usize) -> &MonomialMatrix {
        &self.omega[i]
    }
    pub fn omega_torus(&self, j: usize) -> &MonomialMatrix {
        &self.omega_torus[j]
    }

    /// `α_s^∨(x)`: `x` and `x⁻¹` in the two coordinates moved by `ŝ`.
    pub fn coroot(&self, s: NodeId, x: Fe) -> MonomialMatrix {
        let (u, v) = self.coroot_slots[s];
        let mut c = vec![1; self.dim()];
        c[u] = x;
        c[v] = self.field.inv(x).expect("unit");
        MonomialMatrix::diagonal(c)
    }

    /// `x` in coordinate `c` of `T(F_q)`, 1 elsewhere.
    pub fn torus_coordinate(&self, c: usize, x: Fe) -> MonomialMatrix {
        let mut d = vec![1; self.dim()];
        d[c] = x;
        MonomialMatrix::diagonal(d)
    }

    /// `t_c` with `ω̂_i ŝ ω̂_i⁻¹ = t_c · ŝ'`, `ŝ'` the rotated node's lift.
    pub fn rotation_correction(&self, s: NodeId) -> &MonomialMatrix {
        &self.rotation_correction[s]
    }

    /// `ω̂^k = ∏ ω̂_i^{k_i}`.
    pub fn omega_power(&self, k: &[i64]) -> MonomialMatrix {
        let f = &self.field;
        k.iter().enumerate().fold(MonomialMatrix::identity(self.dim()), |acc, (i, &ki)| {
            let w = if ki >= 0 { self.omega[i].clone() } else { self.omega[i].inverse(f) };
            acc.mul(&w.pow(ki.unsigned_abs(), f), f)
        })
    }

    /// Writes `g = t · ŝ'` with `t ∈ T(F_q)` for the node `s'` whose lift has
    /// the same Weyl image, if there is one.
    pub fn split_reflection(&self, g: &MonomialMatrix) -> Option<(MonomialMatrix, NodeId)> {
        let img = g.weyl_image();
        let s = (0..self.s_hat.len()).find(|&s| self.s_hat[s].weyl_image() == img)?;
        let t = g.mul(&self.s_hat[s].inverse(&self.field), &self.field);
        t.is_torus().then_some((t, s))
    }

    /// Asserts `ŝ² = α^∨(−1)`, `ω̂_i^{n_i} = ϖ` on factor `i`, commuting
    /// rotations, and `ω̂_i ŝ ω̂_i⁻¹ ∈ T(F_q) · ŝ'` with `ŝ'` the rotated
    /// node; returns the torus corrections.
    fn check_identities(&self) -> Result<Vec<MonomialMatrix>, OracleError> {
        let f = &self.field;
        let spec = &self.spec;
        let minus = f.from_int(-1);
        for s in 0..self.s_hat.len() {
            if self.s_hat[s].mul(&self.s_hat[s], f) != self.coroot(s, minus) {
                return Err(OracleError::LiftRelation(format!("s_hat^2 != coroot(-1) at node {s}")));
            }
        }
        for (i, &n) in spec.factors().iter().enumerate() {
            let mut want = MonomialMatrix::identity(self.dim());
            for m in 0..n {
                want.val[spec.offset(i) + m] = 1;
            }
            if self.omega[i].pow(n as u64, f) != want {
                return Err(OracleError::LiftRelation(format!("omega_{i}^{n} is not central")));
            }
            for (i2, w2) in self.omega.iter().enumerate() {
                if self.omega[i].mul(w2, f) != w2.mul(&self.omega[i], f) {
                    return Err(OracleError::LiftRelation(format!("omega_{i} and omega_{i2} do not commute")));
                }
            }
            for w2 in &self.omega_torus {
                if self.omega[i].mul(w2, f) != w2.mul(&self.omega[i], f) {
                    return Err(OracleError::LiftRelation(format!("omega_{i} and a torus lift do not commute")));
                }
            }
        }
        let mut corrections = Vec::new();
        for s in 0..self.s_hat.len() {
            let (i, _) = spec.locate(s).expect("node of the spec");
            let target = crate::weyl::omega_rotate(spec, i, 1, s).expect("same component");
            let conj = self.omega[i].conj(&self.s_hat[s], f);
            let t = conj.mul(&self.s_hat[target].inverse(f), f);
            if !t.is_torus() {
                return Err(OracleError::LiftRelation(format!("omega_{i} does not rotate node {s} onto node {target}")));
            }
            corrections.push(t);
        }
        Ok(corrections)
    }
}

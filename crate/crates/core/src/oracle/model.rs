//! Explicit matrices for a simple supersingular module on the basis
//! `b_k = v ⊗ T_{ω̂^k}`, `0 ≤ k_i < d_i`.

use std::sync::Arc;

use super::face_alg::eval_xi;
use super::lifts::{Lifts, MonomialMatrix};
use super::OracleError;
use crate::ff::{FFMatrix, Fe, FieldCtx};
use crate::gln::SimpleSS;
use crate::haff::rotations;
use crate::weyl::{Bond, NodeId};
use crate::zerohecke::hom_unchecked;

#[derive(Clone, Debug)]
pub struct ModuleModel {
    lifts: Arc<Lifts>,
    module: SimpleSS,
    basis: Vec<Vec<i64>>,
    gen_names: Vec<String>,
    gens: Vec<FFMatrix>,
}

pub fn brute_module_model(lifts: &Arc<Lifts>, m: &SimpleSS) -> Result<ModuleModel, OracleError> {
    let spec = m.spec();
    if spec != lifts.spec() {
        return Err(OracleError::Internal("lifts built for another group".into()));
    }
    let field = m.field();
    let qf = lifts.field();
    let d = spec.diagram();
    let basis = rotations(&m.stabilizer().d);
    let dim = basis.len();
    let pos = |k: &[i64]| basis.iter().position(|b| b == k).expect("basis index");
    let omega_k: Vec<MonomialMatrix> = basis.iter().map(|k| lifts.omega_power(k)).collect();
    let xi = m.chi().xi();
    let diag = |vals: Vec<Fe>| {
        let mut a = FFMatrix::zeros(field, dim, dim);
        for (i, v) in vals.into_iter().enumerate() {
            a.set(i, i, v);
        }
        a
    };
    let g = qf.primitive();
    let mut gen_names = Vec::new();
    let mut gens = Vec::new();
    for c in 0..lifts.dim() {
        let t = lifts.torus_coordinate(c, g);
        let vals = omega_k.iter().map(|w| eval_xi(lifts, xi, &w.conj(&t, qf))).collect();
        gen_names.push(format!("t{c}"));
        gens.push(diag(vals));
    }
    for s in 0..spec.node_count() {
        let mut vals = Vec::with_capacity(dim);
        for w in &omega_k {
            let (t, s2) = lifts
                .split_reflection(&w.conj(lifts.s_hat(s), qf))
                .ok_or_else(|| OracleError::LiftRelation(format!("rotation of {} is not a lifted reflection", d.name(s))))?;
            let base = if m.chi().j().contains(s2) { field.from_int(-1) } else { 0 };
            vals.push(field.mul(eval_xi(lifts, xi, &t), base));
        }
        gen_names.push(d.name(s).to_string());
        gens.push(diag(vals));
    }
    for (i, &di) in m.stabilizer().d.iter().enumerate() {
        let mut w = FFMatrix::zeros(field, dim, dim);
        for (row, k) in basis.iter().enumerate() {
            let mut k2 = k.clone();
            k2[i] += 1;
            if k2[i] as usize == di {
                k2[i] = 0;
                w.set(row, pos(&k2), m.lambda()[i]);
            } else {
                w.set(row, pos(&k2), 1);
            }
        }
        let inv = w.inverse().expect("rotation matrices are invertible");
        gen_names.push(format!("w{i}"));
        gens.push(w);
        gen_names.push(format!("w{i}^-1"));
        gens.push(inv);
    }
    for (j, &nu) in m.nu().iter().enumerate() {
        gen_names.push(format!("u{j}"));
        gens.push(FFMatrix::scalar(field, dim, nu));
        gen_names.push(format!("u{j}^-1"));
        gens.push(FFMatrix::scalar(field, dim, field.inv(nu).expect("nonzero scalar")));
    }
    Ok(ModuleModel { lifts: lifts.clone(), module: m.clone(), basis, gen_names, gens })
}

impl ModuleModel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }
    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }
    pub fn gens(&self) -> &[FFMatrix] {
        &self.gens
    }
    pub fn field(&self) -> &Arc<FieldCtx> {
        self.module.field()
    }
    pub fn gen(&self, name: &str) -> Option<&FFMatrix> {
        self.gen_names.iter().position(|n| n == name).map(|i| &self.gens[i])
    }
    fn t_s(&self, s: NodeId) -> &FFMatrix {
        &self.gens[self.lifts.dim() + s]
    }
    fn omega(&self, i: usize) -> &FFMatrix {
        self.gen(&format!("w{i}")).expect("rotation generator")
    }
    fn omega_inv(&self, i: usize) -> &FFMatrix {
        self.gen(&format!("w{i}^-1")).expect("rotation generator")
    }

    /// `T_t` as a product of powers of the torus generators.
    pub fn torus(&self, t: &MonomialMatrix) -> FFMatrix {
        let qf = self.lifts.field();
        let mut out = FFMatrix::identity(self.field(), self.dim());
        for (c, &x) in t.coef().iter().enumerate() {
            let e = qf.log(x).expect("unit");
            out = out.mul(&self.gens[c].pow(u64::from(e)));
        }
        out
    }

    /// Iwahori–Matsumoto relations of `H` on the generators, with the
    /// rotation relations taken from the lifts. Returns failures.
    pub fn relation_failures(&self) -> (usize, Vec<String>) {
        let lifts = &self.lifts;
        let spec = lifts.spec();
        let d = spec.diagram();
        let f = self.field();
        let qf = lifts.field();
        let n = lifts.dim();
        let dim = self.dim();
        let id = FFMatrix::identity(f, dim);
        let mut checks = 0;
        let mut fails = Vec::new();
        let mut fail = |ok: bool, what: String| {
            checks += 1;
            if !ok {
                fails.push(what);
            }
        };
        let torus_gens = &self.gens[..n];
        for (c, a) in torus_gens.iter().enumerate() {
            fail(a.pow(u64::from(qf.order() - 1)) == id, format!("t{c}^(q-1) = 1"));
            for b in torus_gens {
                fail(a.mul(b) == b.mul(a), format!("t{c} commutes with the torus"));
            }
        }
        let g = qf.primitive();
        let torus_elems: Vec<MonomialMatrix> = (0..n).map(|c| lifts.torus_coordinate(c, g)).collect();
        for s in 0..spec.node_count() {
            let ts = self.t_s(s);
            let name = d.name(s);
            let mut c = FFMatrix::zeros(f, dim, dim);
            for x in qf.units() {
                c = c.add(&self.torus(&lifts.coroot(s, x)));
            }
            fail(ts.mul(ts) == ts.mul(&c), format!("quadratic relation at {name}"));
            for t2 in (s + 1)..spec.node_count() {
                if let Bond::Order(m) = d.bond(s, t2) {
                    let tt = self.t_s(t2);
                    let word = |a: &FFMatrix, b: &FFMatrix| {
                        (0..m).fold(id.clone(), |acc, i| acc.mul(if i % 2 == 0 { a } else { b }))
                    };
                    fail(word(ts, tt) == word(tt, ts), format!("braid relation {name} {}", d.name(t2)));
                }
            }
            for t in &torus_elems {
                let conj = lifts.s_hat(s).conj(t, qf);
                fail(ts.mul(&self.torus(t)) == self.torus(&conj).mul(ts), format!("T_s T_t = T_(sts^-1) T_s at {name}"));
            }
        }
        let rot: Vec<(String, MonomialMatrix, &FFMatrix, &FFMatrix)> = (0..spec.r())
            .map(|i| (format!("w{i}"), lifts.omega(i).clone(), self.omega(i), self.omega_inv(i)))
            .chain((0..spec.torus_rank()).map(|j| {
                let u = self.gen(&format!("u{j}")).expect("torus lift");
                let ui = self.gen(&format!("u{j}^-1")).expect("torus lift");
                (format!("u{j}"), lifts.omega_torus(j).clone(), u, ui)
            }))
            .collect();
        for (name, w, a, ainv) in &rot {
            fail(a.mul(ainv) == id, format!("{name} times its inverse"));
            for t in &torus_elems {
                let conj = w.conj(t, qf);
                fail(a.mul(&self.torus(t)).mul(ainv) == self.torus(&conj), format!("{name} conjugates the torus"));
            }
            for s in 0..spec.node_count() {
                let Some((t, s2)) = lifts.split_reflection(&w.conj(lifts.s_hat(s), qf)) else {
                    fail(false, format!("{name} conjugates {} to a lifted reflection", d.name(s)));
                    continue;
                };
                let want = self.torus(&t).mul(self.t_s(s2));
                fail(a.mul(self.t_s(s)).mul(ainv) == want, format!("{name} conjugates T_{}", d.name(s)));
            }
            for (name2, _, b, _) in &rot {
                fail(a.mul(b) == b.mul(a), format!("{name} commutes with {name2}"));
            }
        }
        for (i, &ni) in spec.factors().iter().enumerate() {
            let z = self.omega(i).pow(ni as u64);
            let central = self.gens.iter().all(|g| g.mul(&z) == z.mul(g));
            fail(central, format!("w{i}^{ni} is central"));
            let di = self.module.stabilizer().d[i];
            let b0 = self.omega(i).pow(di as u64);
            let lam = self.module.lambda()[i];
            fail(b0.row(0).iter().enumerate().all(|(k, &v)| v == if k == 0 { lam } else { 0 }), format!("b_0 w{i}^{di} = lambda_{i} b_0"));
        }
        (checks, fails)
    }
}

/// Whether the two models admit an invertible intertwiner. Over a field
/// containing the scalars the Hom space between these simple modules has
/// dimension at most one, which is checked.
pub fn brute_mod_isomorphic(a: &ModuleModel, b: &ModuleModel) -> Result<bool, OracleError> {
    if **a.field() != **b.field() {
        return Err(OracleError::FieldMismatch);
    }
    if a.module.spec() != b.module.spec() {
        return Err(OracleError::Internal("models of different groups".into()));
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let hom = hom_unchecked(a.field(), &a.gens, &b.gens, a.dim(), b.dim());
    match hom.rows() {
        0 => Ok(false),
        1 => {
            let map = FFMatrix::from_vec(a.field(), a.dim(), b.dim(), hom.row(0).to_vec())?;
            Ok(map.is_invertible())
        }
        k => Err(OracleError::Internal(format!("intertwiner space of dimension {k} between simple modules"))),
    }
}

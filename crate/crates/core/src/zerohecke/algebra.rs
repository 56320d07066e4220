//! Finite-dimensional algebras presented by their right regular
//! representation, modules given by generator actions, and the splitting
//! tests for projectivity and stable Hom.

use std::collections::VecDeque;
use std::sync::Arc;

use super::AlgebraError;
use crate::ff::{in_row_span, FFMatrix, Fe, FieldCtx};

/// An algebra with basis `b_0..b_{n-1}`, given by the matrices of right
/// multiplication by its generators (row-vector convention:
/// `e_j · R_g` is the coordinate vector of `b_j g`).
///
/// `tree[j] = Some((i, g))` records `b_j = b_i g`, so that every basis
/// element is a word in the generators starting from the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdAlgebra {
    name: String,
    field: Arc<FieldCtx>,
    gen_names: Vec<String>,
    gens: Vec<FFMatrix>,
    unit: usize,
    tree: Vec<Option<(usize, usize)>>,
}

impl FdAlgebra {
    pub fn new(
        name: impl Into<String>,
        field: &Arc<FieldCtx>,
        gen_names: Vec<String>,
        gens: Vec<FFMatrix>,
        unit: usize,
        tree: Vec<Option<(usize, usize)>>,
    ) -> Result<Self, AlgebraError> {
        let dim = tree.len();
        if gen_names.len() != gens.len() {
            return Err(AlgebraError::Shape("generator names and matrices differ in count".into()));
        }
        if gens.iter().any(|g| g.rows() != dim || g.cols() != dim) {
            return Err(AlgebraError::Shape(format!("generator matrices must be {dim}x{dim}")));
        }
        if unit >= dim || tree[unit].is_some() {
            return Err(AlgebraError::Shape("unit must be the root of the basis tree".into()));
        }
        for (j, edge) in tree.iter().enumerate() {
            match *edge {
                None if j != unit => return Err(AlgebraError::Shape(format!("basis element {j} unreachable"))),
                Some((i, g)) => {
                    let row = gens[g].row(i);
                    let exact = row.iter().enumerate().all(|(k, &v)| v == Fe::from(k == j));
                    if !exact {
                        return Err(AlgebraError::Shape(format!("tree edge {i}·{g} does not give basis element {j}")));
                    }
                }
                None => {}
            }
        }
        // every non-root must be reachable from the root through the tree
        let mut depth_ok = vec![false; dim];
        depth_ok[unit] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for j in 0..dim {
                if let Some((i, _)) = tree[j] {
                    if depth_ok[i] && !depth_ok[j] {
                        depth_ok[j] = true;
                        changed = true;
                    }
                }
            }
        }
        if depth_ok.iter().any(|&ok| !ok) {
            return Err(AlgebraError::Shape("basis tree has a cycle".into()));
        }
        Ok(FdAlgebra { name: name.into(), field: field.clone(), gen_names, gens, unit, tree })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.tree.len()
    }
    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }
    pub fn gens(&self) -> &[FFMatrix] {
        &self.gens
    }
    pub fn gen(&self, name: &str) -> Option<&FFMatrix> {
        self.gen_index(name).map(|i| &self.gens[i])
    }
    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gen_names.iter().position(|n| n == name)
    }
    pub fn unit(&self) -> usize {
        self.unit
    }

    /// Basis indices in an order where each parent precedes its children.
    fn tree_order(&self) -> Vec<usize> {
        let dim = self.dim();
        let mut children = vec![Vec::new(); dim];
        for (j, e) in self.tree.iter().enumerate() {
            if let Some((i, _)) = e {
                children[*i].push(j);
            }
        }
        let mut order = Vec::with_capacity(dim);
        let mut queue = VecDeque::from([self.unit]);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            queue.extend(children[i].iter().copied());
        }
        order
    }

    /// Right regular module `A_A`.
    pub fn regular_module(self: &Arc<Self>) -> HModule {
        HModule { alg: self.clone(), dim: self.dim(), action: self.gens.clone() }
    }

    /// Checks that the generator matrices define an associative algebra with
    /// this basis: the map `b_j ↦ R(word_j)` must be compatible with every
    /// generator and send the unit row to `e_j`. Cubic in `dim`; meant for
    /// tests and small algebras.
    pub fn verify_regular(self: &Arc<Self>) -> Result<(), AlgebraError> {
        let reg = self.regular_module();
        let rho = reg.basis_action();
        for (j, r) in rho.iter().enumerate() {
            let row = r.row(self.unit);
            if row.iter().enumerate().any(|(k, &v)| v != Fe::from(k == j)) {
                return Err(AlgebraError::NotAModule(format!("unit does not generate basis element {j}")));
            }
        }
        HModule::new(self, self.dim(), self.gens.clone()).map(|_| ())
    }
}

/// A right module over an [`FdAlgebra`], given by one matrix per generator.
#[derive(Clone, Debug)]
pub struct HModule {
    alg: Arc<FdAlgebra>,
    dim: usize,
    action: Vec<FFMatrix>,
}

impl HModule {
    /// Validates the action against the algebra's multiplication table.
    pub fn new(alg: &Arc<FdAlgebra>, dim: usize, action: Vec<FFMatrix>) -> Result<Self, AlgebraError> {
        if action.len() != alg.gens.len() {
            return Err(AlgebraError::Shape("one action matrix per generator".into()));
        }
        if action.iter().any(|a| a.rows() != dim || a.cols() != dim || **a.field() != *alg.field) {
            return Err(AlgebraError::Shape("action matrices must be square over the algebra's field".into()));
        }
        let m = HModule { alg: alg.clone(), dim, action };
        m.check_relations()?;
        Ok(m)
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        &self.alg
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self) -> &[FFMatrix] {
        &self.action
    }
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.alg.field
    }

    /// Action matrix of every basis element of the algebra.
    pub fn basis_action(&self) -> Vec<FFMatrix> {
        let dim_a = self.alg.dim();
        let mut rho: Vec<Option<FFMatrix>> = vec![None; dim_a];
        rho[self.alg.unit] = Some(FFMatrix::identity(self.field(), self.dim));
        for j in self.alg.tree_order() {
            if let Some((i, g)) = self.alg.tree[j] {
                let r = rho[i].as_ref().expect("parents first").mul(&self.action[g]);
                rho[j] = Some(r);
            }
        }
        rho.into_iter().map(|r| r.expect("tree covers the basis")).collect()
    }

    fn check_relations(&self) -> Result<(), AlgebraError> {
        let f = self.field().clone();
        let rho = self.basis_action();
        for (g, rg) in self.alg.gens.iter().enumerate() {
            for j in 0..self.alg.dim() {
                let lhs = rho[j].mul(&self.action[g]);
                let mut rhs = FFMatrix::zeros(&f, self.dim, self.dim);
                for (k, &c) in rg.row(j).iter().enumerate() {
                    if c != 0 {
                        rhs = rhs.add(&rho[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(AlgebraError::NotAModule(format!(
                        "basis element {j} times {} is not respected",
                        self.alg.gen_names[g]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &HModule) -> Result<HModule, AlgebraError> {
        same_algebra(self, other)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.block_diag(b)).collect();
        Ok(HModule { alg: self.alg.clone(), dim: self.dim + other.dim, action })
    }

    /// Values of a one-dimensional module on the generators.
    pub fn character_values(&self) -> Option<Vec<Fe>> {
        (self.dim == 1).then(|| self.action.iter().map(|a| a.get(0, 0)).collect())
    }
}

fn same_algebra(m: &HModule, n: &HModule) -> Result<(), AlgebraError> {
    if Arc::ptr_eq(&m.alg, &n.alg) || *m.alg == *n.alg {
        Ok(())
    } else {
        Err(AlgebraError::AlgebraMismatch)
    }
}

/// Rows span `{v : v·M_g = c_g v for every g}`.
///
/// Monomial generators are handled by propagating along their orbits, which
/// keeps this linear in the dimension for torus actions on group bases.
pub fn joint_eigenspace(field: &Arc<FieldCtx>, n: usize, mats: &[&FFMatrix], vals: &[Fe]) -> FFMatrix {
    assert_eq!(mats.len(), vals.len());
    let mut monomial = Vec::new();
    let mut general = Vec::new();
    for (m, &c) in mats.iter().zip(vals) {
        match m.as_monomial() {
            Some(mono) => monomial.push((mono, c)),
            None => general.push((*m, c)),
        }
    }
    let mut basis = if monomial.is_empty() {
        FFMatrix::identity(field, n)
    } else {
        monomial_eigenspace(field, n, &monomial)
    };
    for (m, c) in general {
        if basis.rows() == 0 {
            break;
        }
        let shifted = m.sub(&FFMatrix::scalar(field, n, c));
        let d = basis.mul(&shifted);
        let y = d.left_kernel();
        basis = y.mul(&basis);
    }
    basis
}

fn monomial_eigenspace(field: &Arc<FieldCtx>, n: usize, mono: &[(Vec<(usize, Fe)>, Fe)]) -> FFMatrix {
    if mono.iter().any(|(_, c)| *c == 0) {
        // v_r a_r = 0 with a_r ≠ 0 forces v = 0
        return FFMatrix::zeros(field, 0, n);
    }
    // v M = c v  ⇔  v_{π(r)} = (a_r / c) v_r
    let mut adj: Vec<Vec<(usize, Fe)>> = vec![Vec::new(); n];
    for (rows, c) in mono {
        for (r, &(col, a)) in rows.iter().enumerate() {
            let w = field.div(a, *c).expect("c nonzero");
            adj[r].push((col, w));
            adj[col].push((r, field.inv(w).expect("nonzero weight")));
        }
    }
    let mut value: Vec<Option<Fe>> = vec![None; n];
    let mut out = Vec::new();
    for root in 0..n {
        if value[root].is_some() {
            continue;
        }
        value[root] = Some(1);
        let mut comp = vec![root];
        let mut consistent = true;
        let mut k = 0;
        while k < comp.len() {
            let r = comp[k];
            let vr = value[r].expect("visited");
            for &(s, w) in &adj[r] {
                let want = field.mul(w, vr);
                match value[s] {
                    None => {
                        value[s] = Some(want);
                        comp.push(s);
                    }
                    Some(v) if v != want => consistent = false,
                    Some(_) => {}
                }
            }
            k += 1;
        }
        if consistent {
            let mut v = vec![0; n];
            for &r in &comp {
                v[r] = value[r].expect("visited");
            }
            out.extend(v);
        }
    }
    let rows = out.len() / n.max(1);
    FFMatrix::from_vec(field, rows, n, out).expect("entries in field")
}

/// Basis of `Hom_A(M, N)`; each row is a flattened `dim M × dim N` matrix
/// `F` with `A_g F = F B_g` (row vectors, right actions).
pub fn hom_space(m: &HModule, n: &HModule) -> Result<FFMatrix, AlgebraError> {
    same_algebra(m, n)?;
    Ok(hom_unchecked(m.field(), &m.action, &n.action, m.dim, n.dim))
}

pub(crate) fn hom_unchecked(field: &Arc<FieldCtx>, a: &[FFMatrix], b: &[FFMatrix], dm: usize, dn: usize) -> FFMatrix {
    if dm == 1 {
        let mats: Vec<&FFMatrix> = b.iter().collect();
        let vals: Vec<Fe> = a.iter().map(|x| x.get(0, 0)).collect();
        return joint_eigenspace(field, dn, &mats, &vals);
    }
    let unknowns = dm * dn;
    let mut sys = FFMatrix::zeros(field, a.len() * unknowns, unknowns);
    for (g, (ag, bg)) in a.iter().zip(b).enumerate() {
        for i in 0..dm {
            for j in 0..dn {
                let row = g * unknowns + i * dn + j;
                for k in 0..dm {
                    let c = ag.get(i, k);
                    if c != 0 {
                        let col = k * dn + j;
                        sys.set(row, col, field.add(sys.get(row, col), c));
                    }
                }
                for k in 0..dn {
                    let c = bg.get(k, j);
                    if c != 0 {
                        let col = i * dn + k;
                        sys.set(row, col, field.sub(sys.get(row, col), c));
                    }
                }
            }
        }
    }
    sys.kernel().transpose()
}

/// Span of `{θ∘σ : σ ∈ Hom(M, A^d)}` for the free cover `θ : A^d ↠ N` that
/// sends the i-th unit to the i-th basis vector of `N`; rows are flattened
/// `dim M × dim N` maps.
fn factoring_maps(m: &HModule, n: &HModule) -> FFMatrix {
    let alg = &m.alg;
    let field = m.field();
    let to_free = hom_unchecked(field, &m.action, &alg.gens, m.dim, alg.dim());
    let rho_n = n.basis_action();
    let (dm, dn, da) = (m.dim, n.dim, alg.dim());
    let mut rows = Vec::new();
    for s in 0..to_free.rows() {
        let sigma = FFMatrix::from_vec(field, dm, da, to_free.row(s).to_vec()).expect("shape");
        for i in 0..dn {
            // θ_i : A → N, b_j ↦ n_i · b_j
            let mut theta = FFMatrix::zeros(field, da, dn);
            for (j, r) in rho_n.iter().enumerate() {
                for k in 0..dn {
                    theta.set(j, k, r.get(i, k));
                }
            }
            rows.extend(sigma.mul(&theta).flatten());
        }
    }
    let count = rows.len() / (dm * dn).max(1);
    FFMatrix::from_vec(field, count, dm * dn, rows).expect("shape")
}

/// Whether `M` is projective: the identity of `M` factors through its free
/// cover.
pub fn is_projective(m: &HModule) -> bool {
    if m.dim == 0 {
        return true;
    }
    let span = factoring_maps(m, m);
    let id = FFMatrix::identity(m.field(), m.dim).flatten();
    in_row_span(&span, &id)
}

/// `dim Hom(M, N)` minus the dimension of the maps factoring through a
/// projective module.
pub fn stable_hom_dim(m: &HModule, n: &HModule) -> Result<usize, AlgebraError> {
    let hom = hom_space(m, n)?;
    if hom.rows() == 0 {
        return Ok(0);
    }
    let through = factoring_maps(m, n).rank();
    Ok(hom.rows() - through)
}

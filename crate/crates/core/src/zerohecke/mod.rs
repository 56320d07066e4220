//! 0-Hecke algebras of finite Coxeter groups: regular representation,
//! characters `λ_L`, projectivity and stable Hom.

mod algebra;

pub use algebra::{hom_space, is_projective, joint_eigenspace, stable_hom_dim, FdAlgebra, HModule};
pub(crate) use algebra::hom_unchecked;

use std::sync::Arc;

use thiserror::Error;

use crate::ff::{FFMatrix, FieldCtx};
use crate::weyl::{enumerate_coxeter_capped, CoxeterGroup, CoxeterType, WeylError};

pub const DEFAULT_CAP: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("action does not satisfy the algebra relations: {0}")]
    NotAModule(String),
    #[error("malformed algebra or module: {0}")]
    Shape(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// The 0-Hecke algebra with basis `{H_w}` and `H_s² = −H_s`.
#[derive(Clone, Debug)]
pub struct ZeroHeckeAlg {
    group: CoxeterGroup,
    alg: Arc<FdAlgebra>,
}

pub fn build_zero_hecke(ty: &CoxeterType, field: &Arc<FieldCtx>) -> Result<ZeroHeckeAlg, AlgebraError> {
    build_zero_hecke_capped(ty, field, DEFAULT_CAP)
}

pub fn build_zero_hecke_capped(
    ty: &CoxeterType,
    field: &Arc<FieldCtx>,
    cap: usize,
) -> Result<ZeroHeckeAlg, AlgebraError> {
    let group = enumerate_coxeter_capped(ty, cap)?;
    let n = group.order();
    let minus_one = field.from_int(-1);
    let gens = (0..group.rank())
        .map(|s| {
            let mut m = FFMatrix::zeros(field, n, n);
            for w in 0..n {
                let ws = group.right_mul(w, s);
                if group.length(ws) > group.length(w) {
                    m.set(w, ws, 1);
                } else {
                    m.set(w, w, minus_one);
                }
            }
            m
        })
        .collect();
    let tree = (0..n).map(|w| group.parent(w)).collect();
    let alg = FdAlgebra::new(format!("H0({ty})"), field, ty.names().to_vec(), gens, group.identity(), tree)?;
    Ok(ZeroHeckeAlg { group, alg: Arc::new(alg) })
}

impl ZeroHeckeAlg {
    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }
    pub fn ty(&self) -> &CoxeterType {
        self.group.ty()
    }
    pub fn algebra(&self) -> &Arc<FdAlgebra> {
        &self.alg
    }
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }
    pub fn gen_action(&self, s: usize) -> &FFMatrix {
        &self.alg.gens()[s]
    }
    pub fn regular_module(&self) -> HModule {
        self.alg.regular_module()
    }

    /// `λ_L`: `H_s ↦ −1` for `s ∈ L` (generator indices), else `0`.
    pub fn character_module(&self, l: &[usize]) -> Result<HModule, AlgebraError> {
        let field = self.alg.field();
        let minus_one = field.from_int(-1);
        if let Some(&s) = l.iter().find(|&&s| s >= self.group.rank()) {
            return Err(AlgebraError::UnknownGenerator(s.to_string()));
        }
        let action = (0..self.group.rank())
            .map(|s| FFMatrix::scalar(field, 1, if l.contains(&s) { minus_one } else { 0 }))
            .collect();
        HModule::new(&self.alg, 1, action)
    }

    pub fn character_by_names<S: AsRef<str>>(&self, l: &[S]) -> Result<HModule, AlgebraError> {
        let idx = l
            .iter()
            .map(|n| {
                self.alg
                    .gen_index(n.as_ref())
                    .ok_or_else(|| AlgebraError::UnknownGenerator(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.character_module(&idx)
    }

    /// All `2^|S|` characters, indexed by the bitmask of `L`.
    pub fn characters(&self) -> Vec<HModule> {
        let r = self.group.rank();
        (0..1u32 << r)
            .map(|mask| {
                let l: Vec<usize> = (0..r).filter(|s| mask >> s & 1 == 1).collect();
                self.character_module(&l).expect("characters satisfy the relations")
            })
            .collect()
    }
}

/// Outer tensor product over the product-type 0-Hecke algebra.
pub fn tensor_module(
    a1: &ZeroHeckeAlg,
    m: &HModule,
    a2: &ZeroHeckeAlg,
    n: &HModule,
) -> Result<(ZeroHeckeAlg, HModule), AlgebraError> {
    if !Arc::ptr_eq(m.algebra(), a1.algebra()) || !Arc::ptr_eq(n.algebra(), a2.algebra()) {
        return Err(AlgebraError::AlgebraMismatch);
    }
    let ty = a1.ty().product(a2.ty())?;
    let field = a1.algebra().field();
    let prod = build_zero_hecke_capped(&ty, field, a1.dim() * a2.dim())?;
    let (id_m, id_n) = (FFMatrix::identity(field, m.dim()), FFMatrix::identity(field, n.dim()));
    let mut action: Vec<FFMatrix> = m.action().iter().map(|g| g.kron(&id_n)).collect();
    action.extend(n.action().iter().map(|g| id_m.kron(g)));
    let module = HModule::new(prod.algebra(), m.dim() * n.dim(), action)?;
    Ok((prod, module))
}

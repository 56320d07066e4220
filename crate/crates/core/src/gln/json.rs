use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{build_simple, GlnError, SimpleSS};
use crate::ff::{Fe, FieldCtx};
use crate::haff::{AffChar, AffCharJson};
use crate::weyl::GroupSpec;

/// A field element: coefficient vector (constant term first), or a plain
/// integer for elements of the prime field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldElemJson {
    Int(i64),
    Coeffs(Vec<u32>),
}

impl FieldElemJson {
    pub fn from_elem(field: &FieldCtx, a: Fe) -> Self {
        FieldElemJson::Coeffs(field.coeffs(a))
    }

    pub fn to_elem(&self, field: &FieldCtx) -> Result<Fe, GlnError> {
        match self {
            FieldElemJson::Int(x) if *x >= 0 && (*x as u64) < u64::from(field.p()) => Ok(*x as Fe),
            FieldElemJson::Int(x) => Err(GlnError::BadScalar(format!("{x} is not in 0..{}", field.p()))),
            FieldElemJson::Coeffs(c) => Ok(field.from_coeffs(c)?),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub p: u64,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleJson {
    pub chi: AffCharJson,
    pub lambda: Vec<FieldElemJson>,
    #[serde(default)]
    pub nu: Vec<FieldElemJson>,
    pub field: FieldJson,
}

impl SimpleSS {
    pub fn to_json(&self) -> SimpleJson {
        let f = self.field();
        SimpleJson {
            chi: self.chi().to_json(self.spec()),
            lambda: self.lambda().iter().map(|&x| FieldElemJson::from_elem(f, x)).collect(),
            nu: self.nu().iter().map(|&x| FieldElemJson::from_elem(f, x)).collect(),
            field: FieldJson { p: f.p().into(), m: f.m() },
        }
    }

    pub fn from_json(spec: &GroupSpec, raw: &SimpleJson) -> Result<Self, GlnError> {
        let field: Arc<FieldCtx> = FieldCtx::new(raw.field.p, raw.field.m)?;
        let chi = AffChar::from_json(spec, &raw.chi)?;
        let conv = |xs: &[FieldElemJson]| xs.iter().map(|x| x.to_elem(&field)).collect::<Result<Vec<_>, _>>();
        build_simple(spec, chi, conv(&raw.lambda)?, conv(&raw.nu)?, &field)
    }
}

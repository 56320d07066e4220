//! Oracle-versus-predicate sweeps for one group and field.

use std::sync::Arc;

use serde::Serialize;

use super::{brute_mod_isomorphic, brute_module_model, brute_s_xi, brute_supersingular, Oracle, OracleError};
use crate::ff::FieldCtx;
use crate::gln::{self, build_simple, mod_isomorphic, GlnError};
use crate::haff::{self, conj_char, ho_delta_hom, res_face_projective, s_xi, AffChar, HaffError};
use crate::weyl::GroupSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub instance: String,
    pub predicate: String,
    pub oracle: String,
    pub agree: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleReport {
    pub spec: String,
    pub rows: Vec<CheckRow>,
    pub warnings: Vec<String>,
}

impl OracleReport {
    pub fn disagreements(&self) -> usize {
        self.rows.iter().filter(|r| !r.agree).count()
    }

    /// `(check, rows, disagreements)` in first-appearance order.
    pub fn summary(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> = Vec::new();
        for r in &self.rows {
            match out.iter_mut().find(|(c, _, _)| *c == r.check) {
                Some(e) => {
                    e.1 += 1;
                    e.2 += usize::from(!r.agree);
                }
                None => out.push((r.check.clone(), 1, usize::from(!r.agree))),
            }
        }
        out
    }

    fn push(&mut self, check: &str, instance: String, predicate: impl ToString, oracle: impl ToString) {
        let (predicate, oracle) = (predicate.to_string(), oracle.to_string());
        let agree = predicate == oracle;
        self.rows.push(CheckRow { check: check.into(), instance, predicate, oracle, agree });
    }

    fn truncate<T>(&mut self, check: &str, mut items: Vec<T>, cap: usize) -> Vec<T> {
        if items.len() > cap {
            self.warnings.push(format!("{check}: checked {cap} of {} instances (cap)", items.len()));
            items.truncate(cap);
        }
        items
    }
}

fn names(spec: &GroupSpec, set: crate::weyl::NodeSet) -> String {
    format!("{{{}}}", spec.diagram().names_of(set).join(","))
}

/// Runs every sweep with at most `cap` instances per check. Exceeding the
/// cap truncates the sweep and records a warning.
pub fn run_oracle_check(spec: &GroupSpec, field: &Arc<FieldCtx>, cap: usize) -> Result<OracleReport, OracleError> {
    let mut rep = OracleReport { spec: spec.label(), ..Default::default() };
    let mut oracle = Oracle::new(spec, field, super::DEFAULT_FACE_CAP)?;
    let lifts = oracle.lifts().clone();
    rep.push("lift_identities", spec.label(), "hold", "hold");
    let d = spec.diagram();
    let faces = d.faces();

    let xis = match haff::torus_chars(spec, cap) {
        Ok(x) => x,
        Err(HaffError::CapExceeded { count, .. }) => {
            rep.warnings.push(format!("{count} torus characters exceed the cap {cap}; sweeps skipped"));
            return Ok(rep);
        }
        Err(e) => return Err(e.into()),
    };
    for xi in &xis {
        let inst = format!("xi=({})", xi.flat().iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        rep.push("s_xi", inst, names(spec, s_xi(spec, xi)), names(spec, brute_s_xi(&lifts, xi)));
    }
    let chars = haff::all_chars(spec, usize::MAX)?;
    let chars = rep.truncate("supersingular", chars, cap);
    for c in &chars {
        rep.push("supersingular", c.display(spec), haff::is_supersingular(spec, c), brute_supersingular(&lifts, c)?);
    }

    for f in &faces {
        let alg = oracle.face_alg(f.nodes())?;
        let (n, fails) = alg.relation_failures(&xis, alg.dim() <= 256);
        let oracle_val = if fails.is_empty() { format!("{n} hold") } else { fails.join("; ") };
        rep.push("face_relations", format!("F={} dim={}", names(spec, f.nodes()), alg.dim()), format!("{n} hold"), oracle_val);
    }

    let pairs: Vec<(&AffChar, _)> = chars.iter().flat_map(|c| faces.iter().map(move |f| (c, f))).collect();
    let pairs = rep.truncate("res_face_projective", pairs, cap);
    for (c, f) in pairs {
        let inst = format!("{} F={}", c.display(spec), names(spec, f.nodes()));
        rep.push("res_face_projective", inst, res_face_projective(spec, c, f)?, oracle.res_projective(c, f)?);
    }

    // one representative per restricted character, then all ordered pairs
    let mut stable = Vec::new();
    for f in &faces {
        let mut reps: Vec<AffChar> = Vec::new();
        for c in &chars {
            let r = AffChar::new(spec, c.xi().clone(), c.j().intersection(f.nodes()))?;
            if !reps.contains(&r) {
                reps.push(r);
            }
        }
        for a in &reps {
            for b in &reps {
                stable.push((f, a.clone(), b.clone()));
            }
        }
    }
    let stable = rep.truncate("stable_hom", stable, cap);
    for (f, a, b) in stable {
        let predicted = if a == b { usize::from(!res_face_projective(spec, &a, f)?) } else { 0 };
        let inst = format!("{} vs {} F={}", a.display(spec), b.display(spec), names(spec, f.nodes()));
        rep.push("stable_hom", inst, predicted, oracle.stable_hom(&a, &b, f)?);
    }

    let ss: Vec<&AffChar> = chars
        .iter()
        .filter(|c| haff::is_supersingular(spec, c) && !haff::has_finite_pd(spec, c).unwrap_or(true))
        .collect();
    let hom_pairs: Vec<(&AffChar, &AffChar)> =
        ss.iter().flat_map(|&a| ss.iter().filter(move |&&b| b != a).map(move |&b| (a, b))).collect();
    let hom_pairs = rep.truncate("ho_delta_hom", hom_pairs, cap);
    for (a, b) in hom_pairs {
        let h = ho_delta_hom(spec, a, b)?;
        let o = oracle.family_hom(a, b)?;
        let inst = format!("{} vs {}", a.display(spec), b.display(spec));
        rep.push("ho_delta_hom", inst, format!("dim={} iso={}", h.dim, h.contains_iso), format!("dim={} iso={}", o.dim, o.contains_iso));
    }

    let simples = match gln::enumerate_simples(spec, field, cap) {
        Ok(s) => s,
        Err(GlnError::CapExceeded { count, .. }) => {
            rep.warnings.push(format!("{count} simple modules exceed the cap {cap}; module checks skipped"));
            return Ok(rep);
        }
        Err(e) => return Err(e.into()),
    };
    let one = vec![1i64; spec.r()];
    let mut rotated = Vec::new();
    for m in &simples {
        let chi = conj_char(spec, m.chi(), &one)?;
        rotated.push(build_simple(spec, chi, m.lambda().to_vec(), m.nu().to_vec(), field)?);
    }
    let models = simples.iter().map(|m| brute_module_model(&lifts, m)).collect::<Result<Vec<_>, _>>()?;
    for (m, model) in simples.iter().zip(&models) {
        let (n, fails) = model.relation_failures();
        let oracle_val = if fails.is_empty() { format!("{n} hold") } else { fails.join("; ") };
        rep.push("module_relations", m.describe(), format!("{n} hold"), oracle_val);
    }
    let mut iso_pairs: Vec<(usize, Option<usize>)> = Vec::new();
    for a in 0..simples.len() {
        iso_pairs.push((a, None));
        iso_pairs.extend((a..simples.len()).map(|b| (a, Some(b))));
    }
    let iso_pairs = rep.truncate("mod_isomorphic", iso_pairs, cap);
    for (a, b) in iso_pairs {
        let (m, other, mb, ob) = match b {
            Some(b) => (&simples[a], &simples[b], &models[a], models[b].clone()),
            None => (&simples[a], &rotated[a], &models[a], brute_module_model(&lifts, &rotated[a])?),
        };
        let inst = format!("{} vs {}", m.describe(), other.describe());
        rep.push("mod_isomorphic", inst, mod_isomorphic(m, other)?.is_some(), brute_mod_isomorphic(mb, &ob)?);
    }
    Ok(rep)
}

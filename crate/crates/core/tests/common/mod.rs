//! Helpers shared by the integration tests: small constructors, literal
//! restatements of the classification patterns, and invariant checks that
//! are run both exhaustively and under proptest.

#![allow(dead_code)]

use std::sync::Arc;

use hecke_core::ff::{Fe, FieldCtx};
use hecke_core::gln::{ho_isomorphic, mod_isomorphic, SimpleSS};
use hecke_core::haff::{self, conj_char, has_finite_pd, is_supersingular, rotations, stabilizer, AffChar};
use hecke_core::weyl::{GroupSpec, NodeSet};
use proptest::prelude::*;

pub fn gl(factors: &[usize], torus_rank: usize, q: u64) -> GroupSpec {
    GroupSpec::new(factors.to_vec(), torus_rank, q).expect("valid group")
}

pub fn gf(p: u64, m: u32) -> Arc<FieldCtx> {
    FieldCtx::new(p, m).expect("valid field")
}

/// `S_ξ = S`, read off the exponents: constant on every factor.
pub fn xi_is_det_power(chi: &AffChar) -> bool {
    chi.xi().exponents().iter().all(|a| a.iter().all(|&x| x == a[0]))
}

/// `J` moved by `s_{i,m} ↦ s_{i,m+k_i}`.
pub fn rotate_j(spec: &GroupSpec, j: NodeSet, k: &[i64]) -> NodeSet {
    NodeSet::from_nodes(j.iter().map(|s| {
        let (i, m) = spec.locate(s).expect("node of the group");
        let n = spec.factors()[i] as i64;
        spec.node(i, (m as i64 + k[i]).rem_euclid(n) as usize)
    }))
}

fn factor_set(spec: &GroupSpec, i: usize) -> NodeSet {
    NodeSet::from_nodes((0..spec.factors()[i]).map(|m| spec.node(i, m)))
}

/// The two-character pattern with nonzero Hom image, stated on node values:
/// one rank-two factor, the rest rank one, equal `ξ` with `S_ξ = S`, equal
/// `J` off the first factor, and on the first factor values `(−1,−1,0)`
/// against `(0,−1,0)` for some labelling `s, s', s''` with `s'` adjacent to
/// `s''`.
pub fn special_hom_pattern(spec: &GroupSpec, a: &AffChar, b: &AffChar) -> bool {
    let f = spec.factors();
    if f.first() != Some(&3) || f[1..].iter().any(|&n| n != 2) {
        return false;
    }
    if a.xi() != b.xi() || !xi_is_det_power(a) {
        return false;
    }
    let s1 = factor_set(spec, 0);
    let rest = spec.diagram().all().difference(s1);
    if a.j().intersection(rest) != b.j().intersection(rest) {
        return false;
    }
    let nodes = s1.to_vec();
    let d = spec.diagram();
    let fits = |x: &AffChar, y: &AffChar| {
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let (s, s1_, s2_) = (nodes[perm[0]], nodes[perm[1]], nodes[perm[2]]);
            let vx = [x.j().contains(s), x.j().contains(s1_), x.j().contains(s2_)];
            let vy = [y.j().contains(s), y.j().contains(s1_), y.j().contains(s2_)];
            if vx == [true, true, false] && vy == [false, true, false] && d.adjacent(s1_, s2_) {
                return true;
            }
        }
        false
    };
    fits(a, b) || fits(b, a)
}

/// The exceptional isomorphism pattern for simple modules of the shape
/// `(3, 2, …, 2)`: equal `ξ` with `S_ξ = S`, equal scalars, and after
/// rotating both modules `J' ⊆ J` with `|J ∩ S_1| = 2`, `|J' ∩ S_1| = 1`,
/// up to swapping.
pub fn exceptional_pattern(m: &SimpleSS, n: &SimpleSS) -> bool {
    let spec = m.spec();
    let f = spec.factors();
    if f.first() != Some(&3) || f[1..].iter().any(|&x| x != 2) {
        return false;
    }
    if m.lambda() != n.lambda() || m.nu() != n.nu() {
        return false;
    }
    let (a, b) = (m.chi(), n.chi());
    if a.xi() != b.xi() || !xi_is_det_power(a) {
        return false;
    }
    let s1 = factor_set(spec, 0);
    let rots = rotations(f);
    let check = |big: NodeSet, small: NodeSet| {
        small.is_subset(big) && big.intersection(s1).len() == 2 && small.intersection(s1).len() == 1
    };
    rots.iter().any(|k| {
        let ja = rotate_j(spec, a.j(), k);
        rots.iter().any(|k2| {
            let jb = rotate_j(spec, b.j(), k2);
            check(ja, jb) || check(jb, ja)
        })
    })
}

/// Stabilizer, rotation and conjugation invariants of one character.
pub fn char_invariants(spec: &GroupSpec, chi: &AffChar) -> Result<(), String> {
    let d = stabilizer(spec, chi).d;
    let ss = is_supersingular(spec, chi);
    let fin = if ss { Some(has_finite_pd(spec, chi).map_err(|e| e.to_string())?) } else { None };
    let label = chi.display(spec);
    for (i, (&di, &ni)) in d.iter().zip(spec.factors()).enumerate() {
        if ni % di != 0 {
            return Err(format!("{label}: d_{i}={di} does not divide n_{i}={ni}"));
        }
        if ss && di <= 1 {
            return Err(format!("{label}: supersingular with d_{i}={di}"));
        }
    }
    for k in rotations(spec.factors()) {
        let c = conj_char(spec, chi, &k).map_err(|e| e.to_string())?;
        if c.j().len() != chi.j().len() {
            return Err(format!("{label}: |J| changes under rotation {k:?}"));
        }
        if is_supersingular(spec, &c) != ss {
            return Err(format!("{label}: supersingularity changes under rotation {k:?}"));
        }
        if let Some(f) = fin {
            if has_finite_pd(spec, &c).map_err(|e| e.to_string())? != f {
                return Err(format!("{label}: finite pd changes under rotation {k:?}"));
            }
        }
        if stabilizer(spec, &c).d != d {
            return Err(format!("{label}: stabilizer changes under rotation {k:?}"));
        }
    }
    Ok(())
}

/// `dim m = ∏ d_i`, with one restriction summand per rotation.
pub fn simple_invariants(m: &SimpleSS) -> Result<(), String> {
    let prod: usize = m.stabilizer().d.iter().product();
    let summands = hecke_core::gln::restriction_decomposition(m);
    if m.dim() != prod || summands.len() != prod {
        return Err(format!("{}: dim {} vs prod d_i {prod}", m.describe(), m.dim()));
    }
    Ok(())
}

/// Reflexivity and symmetry of `ho_isomorphic`, and `Mod ⇒ Ho`.
pub fn pair_invariants(m: &SimpleSS, n: &SimpleSS) -> Result<(), String> {
    if m.has_finite_pd() || n.has_finite_pd() {
        return Ok(());
    }
    let e = |e: hecke_core::gln::GlnError| e.to_string();
    let label = || format!("{} vs {}", m.describe(), n.describe());
    if !ho_isomorphic(m, m).map_err(e)?.ho_iso {
        return Err(format!("{}: not Ho-isomorphic to itself", m.describe()));
    }
    let ab = ho_isomorphic(m, n).map_err(e)?;
    let ba = ho_isomorphic(n, m).map_err(e)?;
    if ab.ho_iso != ba.ho_iso || ab.mod_iso != ba.mod_iso {
        return Err(format!("{}: asymmetric", label()));
    }
    if ab.mod_iso && !ab.ho_iso {
        return Err(format!("{}: Mod-isomorphic but not Ho-isomorphic", label()));
    }
    if ab.mod_iso != mod_isomorphic(m, n).map_err(e)?.is_some() {
        return Err(format!("{}: classification and mod_isomorphic disagree", label()));
    }
    Ok(())
}

/// Groups with at most three factors of size 2 to 5, torus rank at most 1,
/// `q` a small prime power.
pub fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    (prop::collection::vec(2usize..=5, 1..=3), 0usize..=1, prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]))
        .prop_filter_map("too many nodes", |(f, l, q)| {
            (f.iter().sum::<usize>() <= 9).then(|| GroupSpec::new(f, l, q).ok()).flatten()
        })
}

/// A uniformly chosen exponent tuple and `J ⊆ S_ξ`.
pub fn char_strategy(spec: GroupSpec) -> impl Strategy<Value = (GroupSpec, AffChar)> {
    let m = (spec.q() - 1) as i64;
    let dim = spec.torus_dim();
    (prop::collection::vec(0..m, dim), any::<u64>()).prop_map(move |(flat, mask)| {
        let mut exps = Vec::new();
        let mut off = 0;
        for &n in spec.factors() {
            exps.push(flat[off..off + n].to_vec());
            off += n;
        }
        let xi = haff::TorusChar::new(&spec, exps, flat[off..].to_vec()).expect("shape");
        let sx = haff::s_xi(&spec, &xi);
        let j = NodeSet::from_nodes(sx.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, s)| s));
        let chi = AffChar::new(&spec, xi, j).expect("J inside S_xi");
        (spec.clone(), chi)
    })
}

pub fn units(f: &FieldCtx) -> Vec<Fe> {
    f.units().collect()
}

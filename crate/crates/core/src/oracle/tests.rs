use super::*;
use crate::gln::{build_simple, restriction_decomposition, SimpleSS};
use crate::haff::conj_char;
use crate::weyl::GroupSpec;
use crate::zerohecke::HModule;

fn gl(f: &[usize], l: usize, q: u64) -> GroupSpec {
    GroupSpec::new(f.to_vec(), l, q).unwrap()
}

fn gf(p: u64) -> Arc<FieldCtx> {
    FieldCtx::prime(p).unwrap()
}

fn simple(spec: &GroupSpec, a: i64, values: &[Vec<i8>], lambda: &[u32], field: &Arc<FieldCtx>) -> SimpleSS {
    let chi = AffChar::from_values(spec, a, values).unwrap();
    build_simple(spec, chi, lambda.to_vec(), vec![1; spec.torus_rank()], field).unwrap()
}

#[test]
fn lift_corrections_are_trivial() {
    for spec in [gl(&[3], 0, 3), gl(&[3, 2], 1, 3), gl(&[4], 0, 5)] {
        let l = build_lifts(&spec).unwrap();
        for s in 0..spec.node_count() {
            assert_eq!(*l.rotation_correction(s), MonomialMatrix::identity(spec.torus_dim()));
        }
    }
    assert_eq!(build_lifts(&gl(&[2], 0, 9)).unwrap_err(), OracleError::NonPrimeQ(9));
}

#[test]
fn face_algebra_dimensions() {
    let s2 = gl(&[2], 0, 3);
    let mut o = Oracle::new(&s2, &gf(3), DEFAULT_FACE_CAP).unwrap();
    let f = s2.diagram().set_from_names(&["s1_0"]).unwrap();
    let a = o.face_alg(f).unwrap();
    assert_eq!(a.dim(), 8);
    a.algebra().verify_regular().unwrap();
    let s3 = gl(&[3], 0, 3);
    let mut o = Oracle::new(&s3, &gf(3), DEFAULT_FACE_CAP).unwrap();
    for face in s3.diagram().faces() {
        let a = o.face_alg(face.nodes()).unwrap();
        let w = [1, 2, 6][face.nodes().len()];
        assert_eq!(a.dim(), 8 * w);
    }
    let mut small = Oracle::new(&s3, &gf(3), 10).unwrap();
    assert!(matches!(small.face_alg(s3.diagram().set_from_names(&["s1_1"]).unwrap()), Err(OracleError::CapExceeded { .. })));
}

#[test]
fn relations_hold_on_gl3() {
    let s3 = gl(&[3], 0, 3);
    let mut o = Oracle::new(&s3, &gf(3), DEFAULT_FACE_CAP).unwrap();
    let xis = crate::haff::torus_chars(&s3, 100).unwrap();
    for face in s3.diagram().faces() {
        let a = o.face_alg(face.nodes()).unwrap();
        let (n, fails) = a.relation_failures(&xis, true);
        assert!(n > 0);
        assert!(fails.is_empty(), "{fails:?}");
    }
}

#[test]
fn chamber_is_semisimple_and_special_pair_has_stable_hom() {
    let s3 = gl(&[3], 0, 3);
    let f = gf(3);
    let d = s3.diagram();
    let chamber = d.face(crate::weyl::NodeSet::EMPTY).unwrap();
    for c in crate::haff::all_chars(&s3, 1000).unwrap() {
        assert!(brute_res_projective(&s3, &c, &chamber, &f).unwrap());
    }
    let a = AffChar::from_values(&s3, 1, &[vec![-1, -1, 0]]).unwrap();
    let b = AffChar::from_values(&s3, 1, &[vec![0, -1, 0]]).unwrap();
    let f1 = d.face_from_names(&["s1_1", "s1_2"]).unwrap();
    assert_eq!(brute_stable_hom(&s3, &a, &b, &f1, &f).unwrap(), 1);
    let f2 = d.face_from_names(&["s1_0", "s1_1"]).unwrap();
    assert_eq!(brute_stable_hom(&s3, &a, &b, &f2, &f).unwrap(), 0);
}

#[test]
fn model_restricts_to_rotated_characters() {
    let s3 = gl(&[3], 0, 5);
    let f = gf(5);
    let m = simple(&s3, 1, &[vec![-1, -1, 0]], &[3], &f);
    let lifts = Arc::new(build_lifts(&s3).unwrap());
    let model = brute_module_model(&lifts, &m).unwrap();
    assert_eq!(model.dim(), 3);
    let (_, fails) = model.relation_failures();
    assert!(fails.is_empty(), "{fails:?}");
    // every basis line is an H_aff-character; read it off and compare
    let mut o = Oracle::new(&s3, &f, DEFAULT_FACE_CAP).unwrap();
    let mut seen = Vec::new();
    for (row, k) in model.basis().iter().enumerate() {
        let neg: Vec<i64> = k.iter().map(|x| -x).collect();
        let c = conj_char(&s3, m.chi(), &neg).unwrap();
        for s in 0..s3.node_count() {
            let v = model.gens()[s3.torus_dim() + s].get(row, row);
            assert_eq!(v, if c.j().contains(s) { f.from_int(-1) } else { 0 });
        }
        let face = s3.diagram().face_from_names(&["s1_1", "s1_2"]).unwrap();
        let alg = o.face_alg(face.nodes()).unwrap();
        let vals = alg.character(&c).unwrap().character_values().unwrap();
        for (t, v) in vals.iter().take(s3.torus_dim()).enumerate() {
            assert_eq!(model.gens()[t].get(row, row), *v);
        }
        seen.push(c);
    }
    seen.sort();
    let mut want = restriction_decomposition(&m);
    want.sort();
    assert_eq!(seen, want);
    let w = model.gen("w0").unwrap().pow(3);
    let trace = (0..3).fold(0, |acc, i| f.add(acc, w.get(i, i)));
    assert_eq!(trace, f.mul(3, 3));
    assert_eq!(w, crate::ff::FFMatrix::scalar(&f, 3, 3));
}

#[test]
fn brute_isomorphism_examples() {
    let s3 = gl(&[3], 0, 3);
    let f = gf(3);
    let lifts = Arc::new(build_lifts(&s3).unwrap());
    let m = simple(&s3, 1, &[vec![-1, -1, 0]], &[1], &f);
    let n = simple(&s3, 1, &[vec![0, -1, 0]], &[1], &f);
    let mm = brute_module_model(&lifts, &m).unwrap();
    let nm = brute_module_model(&lifts, &n).unwrap();
    assert!(brute_mod_isomorphic(&mm, &mm).unwrap());
    assert!(!brute_mod_isomorphic(&mm, &nm).unwrap());
    let rot = build_simple(&s3, conj_char(&s3, m.chi(), &[1]).unwrap(), vec![1], vec![], &f).unwrap();
    assert!(brute_mod_isomorphic(&mm, &brute_module_model(&lifts, &rot).unwrap()).unwrap());
    let m2 = simple(&s3, 1, &[vec![-1, -1, 0]], &[2], &f);
    assert!(!brute_mod_isomorphic(&mm, &brute_module_model(&lifts, &m2).unwrap()).unwrap());
}

#[test]
fn model_is_an_hmodule_over_face_algebras() {
    // the model restricted to H_F is a genuine module over the brute algebra
    let s = gl(&[2, 2], 0, 3);
    let f = gf(3);
    let lifts = Arc::new(build_lifts(&s).unwrap());
    let mut o = Oracle::new(&s, &f, DEFAULT_FACE_CAP).unwrap();
    for m in crate::gln::enumerate_simples(&s, &f, 1000).unwrap().iter().take(6) {
        let model = brute_module_model(&lifts, m).unwrap();
        for face in s.diagram().faces() {
            let alg = o.face_alg(face.nodes()).unwrap();
            let mut action: Vec<_> = model.gens()[..s.torus_dim()].to_vec();
            action.extend(alg.nodes().iter().map(|&x| model.gens()[s.torus_dim() + x].clone()));
            HModule::new(alg.algebra(), model.dim(), action).unwrap();
        }
    }
}

#[test]
fn oracle_check_gl2_agrees() {
    let rep = run_oracle_check(&gl(&[2], 0, 3), &gf(3), 100_000).unwrap();
    assert!(rep.warnings.is_empty());
    let bad: Vec<_> = rep.rows.iter().filter(|r| !r.agree).collect();
    assert!(bad.is_empty(), "{bad:?}");
    let checks: Vec<String> = rep.summary().into_iter().map(|(c, _, _)| c).collect();
    assert_eq!(checks.len(), 9, "{checks:?}");
    let partial = run_oracle_check(&gl(&[2], 0, 3), &gf(3), 5).unwrap();
    assert!(!partial.warnings.is_empty());
}

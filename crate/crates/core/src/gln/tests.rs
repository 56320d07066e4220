use super::*;
use crate::haff::AffCharJson;

fn gl(f: &[usize], l: usize, q: u64) -> GroupSpec {
    GroupSpec::new(f.to_vec(), l, q).unwrap()
}

fn gf(p: u64) -> Arc<FieldCtx> {
    FieldCtx::prime(p).unwrap()
}

fn simple(spec: &GroupSpec, a: i64, values: &[Vec<i8>], lambda: &[Fe], field: &Arc<FieldCtx>) -> SimpleSS {
    let chi = AffChar::from_values(spec, a, values).unwrap();
    build_simple(spec, chi, lambda.to_vec(), vec![1; spec.torus_rank()], field).unwrap()
}

#[test]
fn build_examples() {
    let s3 = gl(&[3], 0, 3);
    assert_eq!(simple(&s3, 1, &[vec![-1, -1, 0]], &[1], &gf(3)).dim(), 3);
    let s2 = gl(&[2], 0, 3);
    assert_eq!(simple(&s2, 1, &[vec![-1, 0]], &[1], &gf(3)).dim(), 2);
    let triv = AffChar::from_values(&s3, 1, &[vec![0, 0, 0]]).unwrap();
    assert_eq!(build_simple(&s3, triv, vec![1], vec![], &gf(3)), Err(GlnError::NotSupersingular));
    let chi = AffChar::from_values(&s3, 1, &[vec![-1, 0, 0]]).unwrap();
    assert!(matches!(build_simple(&s3, chi.clone(), vec![], vec![], &gf(3)), Err(GlnError::ScalarCount { .. })));
    assert!(matches!(build_simple(&s3, chi.clone(), vec![0], vec![], &gf(3)), Err(GlnError::BadScalar(_))));
    assert!(matches!(build_simple(&s3, chi, vec![1], vec![], &gf(5)), Err(GlnError::Characteristic { .. })));
}

#[test]
fn restriction_examples() {
    let s3 = gl(&[3], 0, 3);
    let m = simple(&s3, 1, &[vec![-1, -1, 0]], &[1], &gf(3));
    let mut got = restriction_decomposition(&m);
    got.sort();
    let mut want: Vec<AffChar> = [[-1, -1, 0], [0, -1, -1], [-1, 0, -1]]
        .iter()
        .map(|v| AffChar::from_values(&s3, 1, &[v.to_vec()]).unwrap())
        .collect();
    want.sort();
    assert_eq!(got, want);
    let s2 = gl(&[2], 0, 3);
    let m2 = simple(&s2, 1, &[vec![-1, 0]], &[1], &gf(3));
    let got: Vec<_> = restriction_decomposition(&m2).iter().map(|c| c.values(&s2)).collect();
    assert_eq!(got, vec![vec![Some(-1), Some(0)], vec![Some(0), Some(-1)]]);
    let s32 = gl(&[3, 2], 1, 3);
    for m in enumerate_simples(&s32, &gf(3), 100_000).unwrap().iter().step_by(7) {
        assert_eq!(restriction_decomposition(m).len(), m.stabilizer().d.iter().product::<usize>());
    }
}

#[test]
fn mod_iso_examples() {
    let s3 = gl(&[3], 0, 5);
    let f = gf(5);
    let m = simple(&s3, 1, &[vec![-1, -1, 0]], &[2], &f);
    let rotated = build_simple(&s3, conj_char(&s3, m.chi(), &[2]).unwrap(), vec![2], vec![], &f).unwrap();
    assert_eq!(mod_isomorphic(&m, &rotated), Ok(Some(vec![2])));
    let special = simple(&s3, 1, &[vec![0, -1, 0]], &[2], &f);
    assert_eq!(mod_isomorphic(&m, &special), Ok(None));
    let m1 = simple(&s3, 1, &[vec![-1, -1, 0]], &[1], &f);
    assert_eq!(mod_isomorphic(&m, &m1), Ok(None));
    let other = simple(&gl(&[3], 0, 5), 1, &[vec![-1, -1, 0]], &[2], &FieldCtx::new(5, 2).unwrap());
    assert_eq!(mod_isomorphic(&m, &other), Err(GlnError::Mismatch("coefficient fields")));
}

#[test]
fn ho_iso_examples() {
    for q in [3u64, 5] {
        let s3 = gl(&[3], 0, q);
        let f = gf(q);
        for a in 0..(q as i64 - 1) {
            for lam in f.units() {
                let m = simple(&s3, a, &[vec![-1, -1, 0]], &[lam], &f);
                let n = simple(&s3, a, &[vec![0, -1, 0]], &[lam], &f);
                let c = ho_isomorphic(&m, &n).unwrap();
                assert_eq!((c.mod_iso, c.ho_iso), (false, true));
                assert!(matches!(c.witness, Witness::Exceptional { two_node: 'a', .. }));
                let c = ho_isomorphic(&n, &m).unwrap();
                assert!(matches!(c.witness, Witness::Exceptional { two_node: 'b', .. }));
                for lam2 in f.units().filter(|&x| x != lam) {
                    let n2 = simple(&s3, a, &[vec![0, -1, 0]], &[lam2], &f);
                    let c = ho_isomorphic(&m, &n2).unwrap();
                    assert_eq!((c.mod_iso, c.ho_iso), (false, false));
                }
                let c = ho_isomorphic(&m, &m).unwrap();
                assert_eq!((c.mod_iso, c.ho_iso), (true, true));
            }
        }
    }
    let s4 = gl(&[4], 0, 3);
    let f = gf(3);
    let m = simple(&s4, 1, &[vec![-1, -1, 0, 0]], &[1], &f);
    let n = simple(&s4, 1, &[vec![0, -1, 0, 0]], &[1], &f);
    let c = ho_isomorphic(&m, &n).unwrap();
    assert_eq!((c.mod_iso, c.ho_iso), (false, false));
    let s2 = gl(&[2], 0, 3);
    let fin = simple(&s2, 1, &[vec![-1, 0]], &[1], &f);
    assert!(matches!(ho_isomorphic(&fin, &fin), Err(GlnError::FinitePd(_))));
}

#[test]
fn exceptional_branch_needs_matching_gl2_parts_up_to_rotation() {
    let s = gl(&[3, 2], 0, 3);
    let f = gf(3);
    let m = simple(&s, 1, &[vec![-1, -1, 0], vec![-1, 0]], &[1, 2], &f);
    // J on the GL2 factor differs but is rotation-equivalent
    let n = simple(&s, 1, &[vec![0, -1, 0], vec![0, -1]], &[1, 2], &f);
    assert!(ho_isomorphic(&m, &n).unwrap().ho_iso);
    let n2 = simple(&s, 1, &[vec![0, -1, 0], vec![0, -1]], &[1, 1], &f);
    assert!(!ho_isomorphic(&m, &n2).unwrap().ho_iso);
    // S_ξ ≠ S on the GL2 factor rules the branch out
    let xi = TorusChar::new(&s, vec![vec![1, 1, 1], vec![0, 1]], vec![]).unwrap();
    let sets = |v: &[&str]| s.diagram().set_from_names(v).unwrap();
    let a = AffChar::new(&s, xi.clone(), sets(&["s1_0", "s1_1"])).unwrap();
    let b = AffChar::new(&s, xi, sets(&["s1_1"])).unwrap();
    let ma = build_simple(&s, a, vec![1, 1], vec![], &f).unwrap();
    let mb = build_simple(&s, b, vec![1, 1], vec![], &f).unwrap();
    assert!(!ho_isomorphic(&ma, &mb).unwrap().ho_iso);
}

#[test]
fn enumeration_counts() {
    // GL2, q=3: ξ = det^a (a = 0, 1) with J = {s0} or {s1}, one rotation
    // class each; ξ with unequal exponents forces J = ∅, and the two such
    // ξ are swapped by the rotation. 3 classes, 2 scalars each.
    let s2 = gl(&[2], 0, 3);
    let e = enumerate_simples(&s2, &gf(3), 1000).unwrap();
    assert_eq!(e.len(), 3 * 2);
    // GL3, q=3: per ξ = det^a the 6 patterns with |J| ∈ {1, 2} fall in 2
    // rotation classes
    let s3 = gl(&[3], 0, 3);
    let e3 = enumerate_simples(&s3, &gf(3), 1000).unwrap();
    let full: Vec<_> = e3.iter().filter(|m| m.chi().pattern(&s3).s_xi == s3.diagram().all()).collect();
    assert_eq!(full.len(), 2 * 2 * 2);
    for (i, a) in e3.iter().enumerate() {
        for b in &e3[i + 1..] {
            assert_eq!(mod_isomorphic(a, b), Ok(None));
        }
    }
    assert!(matches!(enumerate_simples(&s3, &gf(3), 5), Err(GlnError::CapExceeded { .. })));
    let again = enumerate_simples(&s3, &gf(3), 1000).unwrap();
    assert_eq!(e3, again);
}

#[test]
fn canonical_form_is_rotation_invariant() {
    let s = gl(&[3, 2], 1, 3);
    for c in haff::supersingular_chars(&s, 100_000).unwrap() {
        let canon = canonical_char(&s, &c);
        for k in rotations(s.factors()) {
            assert_eq!(canonical_char(&s, &conj_char(&s, &c, &k).unwrap()), canon);
        }
    }
}

#[test]
fn face_profiles_of_the_exceptional_pair_agree() {
    let s3 = gl(&[3], 0, 3);
    let f = gf(3);
    let m = simple(&s3, 1, &[vec![-1, -1, 0]], &[1], &f);
    let n = simple(&s3, 1, &[vec![0, -1, 0]], &[1], &f);
    for face in s3.diagram().faces() {
        assert_eq!(face_stable_profile(&m, &face).unwrap(), face_stable_profile(&n, &face).unwrap());
    }
    let n2 = simple(&s3, 1, &[vec![-1, 0, 0]], &[1], &f);
    let differs = s3
        .diagram()
        .faces()
        .iter()
        .any(|face| face_stable_profile(&m, face).unwrap() != face_stable_profile(&n2, face).unwrap());
    // (-1,0,0) is a rotation of (0,-1,0), so it is Ho-isomorphic as well
    assert!(!differs);
}

#[test]
fn json_round_trip() {
    let s = gl(&[3, 2], 1, 3);
    let f = FieldCtx::new(3, 2).unwrap();
    let m = enumerate_simples(&s, &f, 100_000).unwrap().into_iter().nth(40).unwrap();
    let js = serde_json::to_string(&m.to_json()).unwrap();
    let raw: SimpleJson = serde_json::from_str(&js).unwrap();
    assert_eq!(SimpleSS::from_json(&s, &raw).unwrap(), m);
    let s3 = gl(&[3], 0, 5);
    let raw = SimpleJson {
        chi: AffCharJson { exponents: vec![vec![1, 1, 1]], torus_exponents: vec![], j: vec!["s1_0".into(), "s1_1".into()] },
        lambda: vec![FieldElemJson::Int(3)],
        nu: vec![],
        field: FieldJson { p: 5, m: 1 },
    };
    let m = SimpleSS::from_json(&s3, &raw).unwrap();
    assert_eq!((m.dim(), m.lambda()), (3, &[3][..]));
    let mut bad = raw.clone();
    bad.lambda = vec![FieldElemJson::Int(7)];
    assert!(matches!(SimpleSS::from_json(&s3, &bad), Err(GlnError::BadScalar(_))));
}

#[test]
fn sweep_shapes() {
    let s2 = gl(&[2], 0, 3);
    let (simples, rows) = sweep(&s2, &gf(3), 1000).unwrap();
    // finite-pd simples (S_ξ = S) are dropped; the ξ with unequal
    // exponents remains
    assert_eq!(simples.len(), 2);
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.mod_iso == r.ho_iso && r.mod_iso == (r.id_a == r.id_b)));
}

use super::*;
use crate::ff::FieldCtx;

fn gl(f: &[usize], l: usize, q: u64) -> GroupSpec {
    GroupSpec::new(f.to_vec(), l, q).unwrap()
}

fn xi(spec: &GroupSpec, exps: &[&[i64]]) -> TorusChar {
    TorusChar::new(spec, exps.iter().map(|a| a.to_vec()).collect(), vec![0; spec.torus_rank()]).unwrap()
}

fn names(spec: &GroupSpec, set: NodeSet) -> Vec<String> {
    spec.diagram().names_of(set)
}

fn vals(spec: &GroupSpec, v: &[i8]) -> AffChar {
    AffChar::from_values(spec, 1, &[v.to_vec()]).unwrap()
}

#[test]
fn s_xi_examples() {
    let s = gl(&[3], 0, 5);
    assert_eq!(s_xi(&s, &xi(&s, &[&[1, 1, 1]])), s.diagram().all());
    assert_eq!(names(&s, s_xi(&s, &xi(&s, &[&[1, 2, 1]]))), vec!["s1_0"]);
    let s2 = gl(&[2], 0, 5);
    assert!(s_xi(&s2, &xi(&s2, &[&[1, 2]])).is_empty());
}

/// Evaluates ξ on the coroot images `x ↦ diag(x, x⁻¹)` directly.
#[test]
fn s_xi_matches_coroot_evaluation() {
    for (spec, q) in [(gl(&[3], 0, 5), 5u64), (gl(&[2, 2], 1, 3), 3), (gl(&[4], 0, 5), 5)] {
        let field = FieldCtx::prime(q).unwrap();
        let g = field.primitive();
        let xi_of = |flat: &[u64], t: &[u32]| {
            flat.iter().zip(t).fold(1, |acc, (&a, &x)| {
                let lx = field.log(x).unwrap() as i64;
                field.mul(acc, field.pow(g, lx * a as i64))
            })
        };
        for x in torus_chars(&spec, 10_000).unwrap() {
            let flat = x.flat();
            let sx = s_xi(&spec, &x);
            for i in 0..spec.r() {
                let n = spec.factors()[i];
                let off = spec.offset(i);
                for j in 0..n {
                    // node j pairs positions (j−1 mod n, j)
                    let (u, v) = (off + (j + n - 1) % n, off + j);
                    let trivial = field.units().all(|y| {
                        let mut t = vec![1u32; spec.torus_dim()];
                        t[u] = y;
                        t[v] = field.inv(y).unwrap();
                        xi_of(&flat, &t) == 1
                    });
                    assert_eq!(sx.contains(off + j), trivial, "{flat:?} node {j}");
                }
            }
        }
    }
}

#[test]
fn supersingular_examples() {
    let s2 = gl(&[2], 0, 3);
    assert!(is_supersingular(&s2, &vals(&s2, &[-1, 0])));
    let s3 = gl(&[3], 0, 3);
    assert!(!is_supersingular(&s3, &vals(&s3, &[0, 0, 0])));
    assert!(!is_supersingular(&s3, &vals(&s3, &[-1, -1, -1])));
    let s35 = gl(&[3], 0, 5);
    let j0 = s35.diagram().set_from_names(&["s1_0"]).unwrap();
    let c = AffChar::new(&s35, xi(&s35, &[&[1, 2, 1]]), j0).unwrap();
    assert!(is_supersingular(&s35, &c));
    let pure = gl(&[], 2, 3);
    for c in all_chars(&pure, 100).unwrap() {
        assert!(is_supersingular(&pure, &c));
    }
}

#[test]
fn invalid_pair_is_rejected() {
    let s = gl(&[2], 0, 5);
    let j = s.diagram().set_from_names(&["s1_0"]).unwrap();
    assert!(matches!(AffChar::new(&s, xi(&s, &[&[1, 2]]), j), Err(HaffError::InvalidPair(_))));
    assert!(matches!(TorusChar::new(&s, vec![vec![1]], vec![]), Err(HaffError::Shape(_))));
}

#[test]
fn finite_pd_examples() {
    let s2 = gl(&[2], 0, 5);
    assert_eq!(has_finite_pd(&s2, &vals(&s2, &[-1, 0])), Ok(true));
    let s3 = gl(&[3], 0, 5);
    for c in supersingular_chars(&s3, 10_000).unwrap() {
        assert_eq!(has_finite_pd(&s3, &c), Ok(false));
    }
    let c = AffChar::new(&s2, xi(&s2, &[&[1, 2]]), NodeSet::EMPTY).unwrap();
    assert_eq!(has_finite_pd(&s2, &c), Ok(false));
    assert_eq!(has_finite_pd(&s3, &vals(&s3, &[0, 0, 0])), Err(HaffError::NotSupersingular));
    let pure = gl(&[], 1, 3);
    assert_eq!(has_finite_pd(&pure, &all_chars(&pure, 10).unwrap()[0]), Ok(true));
}

#[test]
fn face_projectivity_examples() {
    let s3 = gl(&[3], 0, 3);
    let d = s3.diagram();
    let chi = vals(&s3, &[-1, -1, 0]);
    let f12 = d.face_from_names(&["s1_1", "s1_2"]).unwrap();
    let f01 = d.face_from_names(&["s1_0", "s1_1"]).unwrap();
    assert_eq!(res_face_projective(&s3, &chi, &f12), Ok(false));
    assert_eq!(res_face_projective(&s3, &chi, &f01), Ok(true));
    let s2 = gl(&[2], 0, 5);
    let c = AffChar::new(&s2, xi(&s2, &[&[1, 2]]), NodeSet::EMPTY).unwrap();
    let f0 = s2.diagram().face_from_names(&["s1_0"]).unwrap();
    assert_eq!(res_face_projective(&s2, &c, &f0), Ok(false));
    for c in all_chars(&s3, 10_000).unwrap() {
        assert_eq!(res_face_projective(&s3, &c, &d.faces()[0]), Ok(true));
    }
    let other = gl(&[2, 2], 0, 3).diagram().faces()[0];
    assert!(res_face_projective(&s3, &chi, &other).is_err());
}

#[test]
fn hom_decision_examples() {
    let s3 = gl(&[3], 0, 3);
    let a = vals(&s3, &[-1, -1, 0]);
    let b = vals(&s3, &[0, -1, 0]);
    assert_eq!(ho_delta_hom(&s3, &a, &b), Ok(HomImage { dim: 1, contains_iso: false }));
    assert_eq!(ho_delta_hom(&s3, &b, &a), Ok(HomImage { dim: 1, contains_iso: false }));
    // the distinguished node s' must be the one in both J's; (0,0,-1) fails
    let c = vals(&s3, &[0, 0, -1]);
    assert_eq!(ho_delta_hom(&s3, &a, &c).unwrap().dim, 0);
    let other_xi = AffChar::from_values(&s3, 0, &[vec![0, -1, 0]]).unwrap();
    assert_eq!(ho_delta_hom(&s3, &a, &other_xi).unwrap().dim, 0);
    let s4 = gl(&[4], 0, 3);
    let ss = supersingular_chars(&s4, 100_000).unwrap();
    for x in &ss {
        for y in &ss {
            if x != y {
                assert_eq!(ho_delta_hom(&s4, x, y).unwrap().dim, 0);
            }
        }
    }
    assert_eq!(ho_delta_hom(&s3, &a, &a), Err(HaffError::EqualCharacters));
    assert_eq!(ho_delta_hom(&s3, &a, &vals(&s3, &[0, 0, 0])), Err(HaffError::NotSupersingular));
    let s2 = gl(&[2], 0, 3);
    assert_eq!(ho_delta_hom(&s2, &vals(&s2, &[-1, 0]), &vals(&s2, &[0, -1])), Err(HaffError::FinitePd));
}

#[test]
fn hom_decision_on_non_gl_rank_two_types() {
    use crate::weyl::{AffineDynkin, AffineType};
    // affine C2: 0 - 1 = 2, nodes 0 and 2 not adjacent
    let d = AffineDynkin::from_types(&[AffineType::C(2)]).unwrap();
    let all = d.all();
    let p = |j: &[usize]| CharPattern::new(&d, all, NodeSet::from_nodes(j.iter().copied()), 0).unwrap();
    // J = {0,1}, J' = {1}: s'' = 2 is adjacent to s' = 1
    assert_eq!(abstract_types::ho_delta_hom(&d, &p(&[0, 1]), &p(&[1])).unwrap().dim, 1);
    // J = {0,1}, J' = {0}: s'' = 2 is not adjacent to s' = 0
    assert_eq!(abstract_types::ho_delta_hom(&d, &p(&[0, 1]), &p(&[0])).unwrap().dim, 0);
    let g2 = AffineDynkin::from_types(&[AffineType::G2, AffineType::A(1)]).unwrap();
    let all = g2.all();
    let q = |j: &[usize]| CharPattern::new(&g2, all, NodeSet::from_nodes(j.iter().copied()), 0).unwrap();
    // affine G2: 0 - 2 ≡ 1, with an A1 component on nodes 3, 4
    assert_eq!(abstract_types::ho_delta_hom(&g2, &q(&[0, 2, 3]), &q(&[2, 3])).unwrap().dim, 1);
    assert_eq!(abstract_types::ho_delta_hom(&g2, &q(&[0, 2, 3]), &q(&[2, 4])).unwrap().dim, 0);
    // s' = 0 leaves s'' = 1, which is not adjacent to it
    assert_eq!(abstract_types::ho_delta_hom(&g2, &q(&[0, 2, 3]), &q(&[0, 3])).unwrap().dim, 0);
}

#[test]
fn rotation_examples() {
    let s3 = gl(&[3], 0, 3);
    let a = vals(&s3, &[-1, -1, 0]);
    assert_eq!(conj_char(&s3, &a, &[1]).unwrap(), vals(&s3, &[0, -1, -1]));
    assert_eq!(conj_char(&s3, &a, &[0]).unwrap(), a);
    let s2 = gl(&[2], 0, 3);
    assert_eq!(conj_char(&s2, &vals(&s2, &[-1, 0]), &[1]).unwrap(), vals(&s2, &[0, -1]));
    // exponents shift along with S_ξ
    let s5 = gl(&[3], 0, 5);
    let j0 = s5.diagram().set_from_names(&["s1_0"]).unwrap();
    let c = AffChar::new(&s5, xi(&s5, &[&[1, 2, 1]]), j0).unwrap();
    let r = conj_char(&s5, &c, &[1]).unwrap();
    assert_eq!(r.xi().exponents(), &[vec![1, 1, 2]]);
    assert_eq!(names(&s5, r.j()), vec!["s1_1"]);
    assert!(r.j().is_subset(s_xi(&s5, r.xi())));
}

#[test]
fn stabilizer_examples() {
    let s3 = gl(&[3], 0, 3);
    for c in supersingular_chars(&s3, 10_000).unwrap() {
        if c.pattern(&s3).s_xi == s3.diagram().all() {
            assert_eq!(stabilizer(&s3, &c).d, vec![3]);
        }
    }
    let s2 = gl(&[2], 0, 3);
    assert_eq!(stabilizer(&s2, &vals(&s2, &[-1, 0])).d, vec![2]);
    let s4 = gl(&[4], 0, 3);
    let triv = AffChar::from_values(&s4, 1, &[vec![0; 4]]).unwrap();
    assert_eq!(stabilizer(&s4, &triv).d, vec![1]);
    let alt = AffChar::from_values(&s4, 1, &[vec![-1, 0, -1, 0]]).unwrap();
    assert_eq!(stabilizer(&s4, &alt).d, vec![2]);
}

#[test]
fn character_counts() {
    // GL2, q=3: ξ ∈ {0,1}²; equal exponents give S_ξ = S (4 subsets J),
    // unequal give S_ξ = ∅ (only J = ∅)
    let s2 = gl(&[2], 0, 3);
    assert_eq!(all_chars(&s2, 1000).unwrap().len(), 2 * 4 + 2);
    assert_eq!(supersingular_chars(&s2, 1000).unwrap().len(), 2 * 2 + 2);
    assert!(matches!(all_chars(&gl(&[4, 4], 2, 5), 1000), Err(HaffError::CapExceeded { .. })));
}

#[test]
fn json_round_trip() {
    let s = gl(&[3, 2], 1, 3);
    let c = supersingular_chars(&s, 100_000).unwrap().into_iter().nth(17).unwrap();
    let js = serde_json::to_string(&c.to_json(&s)).unwrap();
    let back: AffCharJson = serde_json::from_str(&js).unwrap();
    assert_eq!(AffChar::from_json(&s, &back).unwrap(), c);
    let bad = r#"{"exponents":[[0,0,0],[0,1]],"torus_exponents":[0],"J":["s2_0"]}"#;
    let raw: AffCharJson = serde_json::from_str(bad).unwrap();
    assert!(matches!(AffChar::from_json(&s, &raw), Err(HaffError::InvalidPair(_))));
    let unknown = r#"{"exponents":[[0,0,0],[0,0]],"torus_exponents":[0],"J":["s9_0"]}"#;
    let raw: AffCharJson = serde_json::from_str(unknown).unwrap();
    assert!(matches!(AffChar::from_json(&s, &raw), Err(HaffError::Weyl(_))));
}

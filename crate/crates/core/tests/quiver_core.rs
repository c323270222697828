use proptest::prelude::*;
use symquiver::quiver::{ArrowClass, VertexClass};
use symquiver::SymmetricQuiver;

fn sq(s: &str) -> SymmetricQuiver {
    s.parse().unwrap()
}

#[test]
fn sigma_is_an_involution_with_exhaustive_classes() {
    for m in 2..=7 {
        for q in SymmetricQuiver::all_orientations(m) {
            let quiver = q.quiver();
            for x in 1..=m {
                assert_eq!(q.sigma(q.sigma(x)), x);
            }
            let fixed = (1..=m).filter(|&x| q.vertex_class(x) == VertexClass::Fixed).count();
            assert_eq!(fixed, m % 2);
            for k in quiver.arrows() {
                let s = q.sigma_arrow(k);
                assert_eq!(q.sigma_arrow(s), k);
                assert_eq!(quiver.tail(s), q.sigma(quiver.head(k)));
                assert_eq!(quiver.head(s), q.sigma(quiver.tail(k)));
                if q.arrow_class(k) == ArrowClass::Plus {
                    for v in [quiver.tail(k), quiver.head(k)] {
                        assert_ne!(q.vertex_class(v), VertexClass::Minus, "{q} a{k}");
                    }
                }
            }
            let fixed_arrows = quiver.arrows().filter(|&k| q.arrow_class(k) == ArrowClass::Fixed).count();
            assert_eq!(fixed_arrows, 1 - m % 2);
        }
    }
}

#[test]
fn parse_rejects_bad_strings() {
    for s in ["A4:>><", "A4:>>", "A4:>>>>", "B4:>>>", "A4>>>", "A4:>x>", "A0:"] {
        assert!(s.parse::<SymmetricQuiver>().is_err(), "{s}");
    }
    let err = "A4:>><".parse::<SymmetricQuiver>().unwrap_err().to_string();
    assert!(err.contains("a1") && err.contains("a3"), "{err}");
    assert_eq!(sq("A5:>>>>").to_string(), "A5:>>>>");
}

#[test]
fn admissible_pair_reflection_keeps_symmetry() {
    for m in 3..=7 {
        for q in SymmetricQuiver::all_orientations(m) {
            for (x, sx) in q.admissible_pairs() {
                assert_eq!(sx, q.sigma(x));
                let r = q.reflect_pair(x).unwrap();
                for beta in [vec![1; m], (1..=m).map(|i| i.min(m + 1 - i)).collect::<Vec<_>>()] {
                    let b2 = q.reflect_pair_dim(x, &beta).unwrap();
                    assert!(r.is_symmetric_dim(&b2), "{q} at {x}: {beta:?} -> {b2:?}");
                }
            }
        }
    }
    assert!(sq("A2:>").admissible_pairs().is_empty());
    assert_eq!(sq("A4:>>>").reflect_pair(1).unwrap().to_string(), "A4:<><");
    assert!(sq("A5:>>>>").admissible_pairs().contains(&(1, 5)));
}

#[test]
fn orientation_paths_replay() {
    for m in 2..=7 {
        let all = SymmetricQuiver::all_orientations(m);
        for a in &all {
            assert!(a.orientation_path(a).unwrap().is_empty());
            for b in &all {
                match a.orientation_path(b) {
                    Ok(path) => {
                        let mut cur = a.clone();
                        for x in path {
                            assert!(cur.is_admissible(x) && cur.quiver().is_sink(x), "{cur} at {x}");
                            cur = cur.reflect_pair(x).unwrap();
                        }
                        assert_eq!(&cur, b);
                    }
                    Err(_) => {
                        // only orientations that disagree on the sigma-fixed arrow are out of reach
                        let k = a.fixed_arrow().expect("odd quivers are connected by pair reflections");
                        assert_ne!(a.quiver().dir(k), b.quiver().dir(k));
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn euler_form_is_bilinear(
        a in prop::collection::vec(0usize..4, 5),
        b in prop::collection::vec(0usize..4, 5),
        c in prop::collection::vec(0usize..4, 5),
        mask in 0u8..16,
    ) {
        let dirs: String = (0..4).map(|k| if mask >> k & 1 == 1 { '<' } else { '>' }).collect();
        let q: symquiver::Quiver = format!("A5:{dirs}").parse().unwrap();
        let sum: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(
            q.euler_form(&sum, &c).unwrap(),
            q.euler_form(&a, &c).unwrap() + q.euler_form(&b, &c).unwrap()
        );
        prop_assert_eq!(
            q.euler_form(&c, &sum).unwrap(),
            q.euler_form(&c, &a).unwrap() + q.euler_form(&c, &b).unwrap()
        );
        prop_assert_eq!(q.euler_form(&[0; 5], &a).unwrap(), 0);
    }

    #[test]
    fn reflect_dim_is_an_involution(a in prop::collection::vec(0usize..4, 4), mask in 0u8..8) {
        let dirs: String = (0..3).map(|k| if mask >> k & 1 == 1 { '<' } else { '>' }).collect();
        let q: symquiver::Quiver = format!("A4:{dirs}").parse().unwrap();
        for x in 1..=4 {
            if !q.is_sink(x) && !q.is_source(x) {
                prop_assert!(q.reflect_dim(x, &a).is_err());
                continue;
            }
            let Ok(r) = q.reflect_dim(x, &a) else { continue };
            for y in 1..=4 {
                if y != x {
                    prop_assert_eq!(r[y - 1], a[y - 1]);
                }
            }
            let back = q.reflect_at(x).reflect_dim(x, &r).unwrap();
            prop_assert_eq!(back, a.clone());
        }
    }
}

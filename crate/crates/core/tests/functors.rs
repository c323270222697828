use symquiver::functors::{
    admissible_sink_orders, coxeter_minus, coxeter_minus_with_order, coxeter_plus, coxeter_plus_with_order, reflect_minus,
    reflect_pair_minus, reflect_pair_plus, reflect_pair_symmetric, reflect_plus,
};
use symquiver::group::{random_symmetric_rep, trial_rng};
use symquiver::semiinv::minimal_resolution;
use symquiver::{Kind, Quiver, Representation, SymmetricQuiver};

fn intervals(q: &Quiver) -> Vec<Representation> {
    let mut out = Vec::new();
    for i in 1..=q.m() {
        for j in i..=q.m() {
            out.push(Representation::indecomposable(q, i, j).unwrap());
        }
    }
    out
}

/// `C^+_{(x, sigma x)}` or `C^-_{(x, sigma x)}`, whichever applies at `x`.
fn pair_reflect(q: &SymmetricQuiver, v: &Representation, x: usize) -> Representation {
    if q.quiver().is_sink(x) {
        reflect_pair_plus(q, v, x).unwrap().representation
    } else {
        reflect_pair_minus(q, v, x).unwrap().representation
    }
}

fn iso(a: &Representation, b: &Representation) -> bool {
    a.quiver() == b.quiver() && a.isomorphic(b).unwrap()
}

#[test]
fn pair_reflections_commute_with_duality() {
    for m in 3..=6 {
        for q in SymmetricQuiver::all_orientations(m) {
            for (x, _) in q.admissible_pairs() {
                for v in intervals(q.quiver()) {
                    let lhs = pair_reflect(&q, &v, x).dualize();
                    let rhs = pair_reflect(&q, &v.dualize(), x);
                    assert!(iso(&lhs, &rhs), "{q} at {x}: {v:?}");
                }
            }
        }
    }
}

#[test]
fn selfduality_is_preserved_by_pair_reflections() {
    for m in 3..=6 {
        for q in SymmetricQuiver::all_orientations(m) {
            for (x, _) in q.admissible_pairs() {
                for i in 1..=m {
                    for j in i..=m {
                        for (k, l) in [(i, j), (q.sigma(j), q.sigma(i))] {
                            let v = Representation::indecomposable(q.quiver(), i, j)
                                .unwrap()
                                .direct_sum(&Representation::indecomposable(q.quiver(), k, l).unwrap())
                                .unwrap();
                            let r = pair_reflect(&q, &v, x);
                            if q.reflect_pair_dim(x, v.dim()).ok().as_deref() != Some(r.dim()) {
                                // a simple summand at x or sigma x was killed
                                continue;
                            }
                            assert_eq!(iso(&v, &v.dualize()), iso(&r, &r.dualize()), "{q} at {x}: {v:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn c_minus_nabla_fixed_points_are_preserved() {
    for m in 4..=5 {
        for q in SymmetricQuiver::all_orientations(m) {
            for (x, _) in q.admissible_pairs() {
                for v in intervals(q.quiver()) {
                    let r = pair_reflect(&q, &v, x);
                    if r.is_zero() {
                        continue;
                    }
                    let before = iso(&coxeter_minus(&v.dualize()).unwrap(), &v);
                    let after = iso(&coxeter_minus(&r.dualize()).unwrap(), &r);
                    assert_eq!(before, after, "{q} at {x}: {v:?}");
                }
            }
        }
    }
}

#[test]
fn long_symmetric_intervals_are_c_minus_nabla_fixed() {
    for n in 1..=3 {
        let q = Quiver::equioriented(2 * n);
        for i in 1..n {
            let v = Representation::indecomposable(&q, i, 2 * n - i).unwrap();
            assert!(iso(&coxeter_minus(&v.dualize()).unwrap(), &v), "A{} V[{i},{}]", 2 * n, 2 * n - i);
        }
    }
}

#[test]
fn coxeter_functors_do_not_depend_on_the_order() {
    for s in ["A4:>>>", "A4:<><", "A5:><<>", "A5:>>>>", "A3:><"] {
        let q: Quiver = s.parse().unwrap();
        let orders = admissible_sink_orders(&q);
        assert!(!orders.is_empty());
        let sources = admissible_sink_orders(&q.reversed());
        for v in intervals(&q) {
            let base = coxeter_plus(&v).unwrap();
            for o in &orders {
                assert!(iso(&coxeter_plus_with_order(&v, o).unwrap(), &base), "{s} {o:?}");
            }
            let base = coxeter_minus(&v).unwrap();
            for o in &sources {
                assert!(iso(&coxeter_minus_with_order(&v, o).unwrap(), &base), "{s} {o:?}");
            }
        }
    }
}

trait Reverse {
    fn reversed(&self) -> Quiver;
}

impl Reverse for Quiver {
    /// Same quiver with every arrow reversed: its sinks are our sources.
    fn reversed(&self) -> Quiver {
        Quiver::new(self.dirs().iter().map(|d| d.flipped()).collect())
    }
}

#[test]
fn coxeter_round_trip_away_from_projectives() {
    for s in ["A4:>>>", "A4:<><", "A5:><<>"] {
        let q: Quiver = s.parse().unwrap();
        for v in intervals(&q) {
            if minimal_resolution(&v).unwrap().is_projective() {
                assert!(coxeter_plus(&v).unwrap().is_zero(), "{s} {v:?}");
                continue;
            }
            assert!(iso(&coxeter_minus(&coxeter_plus(&v).unwrap()).unwrap(), &v), "{s} {v:?}");
        }
    }
}

#[test]
fn reflections_track_dimension_vectors() {
    for s in ["A4:>>>", "A4:<><", "A5:><<>", "A3:<>"] {
        let q: Quiver = s.parse().unwrap();
        for x in 1..=q.m() {
            for v in intervals(&q) {
                let simple = v.dim().iter().sum::<usize>() == 1 && v.dim()[x - 1] == 1;
                if q.is_sink(x) {
                    let r = reflect_plus(&v, x).unwrap();
                    if simple {
                        assert!(r.representation.is_zero());
                    } else {
                        assert_eq!(r.representation.dim(), q.reflect_dim(x, v.dim()).unwrap());
                        let back = reflect_minus(&r.representation, x).unwrap().representation;
                        assert!(iso(&back, &v));
                    }
                } else if q.is_source(x) && !simple {
                    let r = reflect_minus(&v, x).unwrap();
                    assert_eq!(r.representation.dim(), q.reflect_dim(x, v.dim()).unwrap());
                }
            }
        }
    }
}

#[test]
fn symmetric_pair_reflection_keeps_the_form() {
    for m in 3..=6 {
        for q in SymmetricQuiver::all_orientations(m) {
            for kind in [Kind::Orthogonal, Kind::Symplectic] {
                let beta: Vec<usize> = (1..=m).map(|i| if i == 1 || i == m { 1 } else { 2 }).collect();
                for (x, _) in q.admissible_pairs() {
                    let mut rng = trial_rng(31, m as u64);
                    let sw = random_symmetric_rep(&q, kind, &beta, &mut rng).unwrap();
                    let r = reflect_pair_symmetric(&sw, x).unwrap();
                    assert_eq!(r.kind(), kind);
                    assert_eq!(r.dim(), q.reflect_pair_dim(x, &beta).unwrap());
                    assert!(iso(&r.unfold(), &pair_reflect(&q, &sw.unfold(), x)));
                    let back = reflect_pair_symmetric(&r, x).unwrap();
                    assert_eq!(back.quiver(), &q);
                    assert!(iso(&back.unfold(), &sw.unfold()), "{q} {kind} at {x}");
                }
            }
        }
    }
}

#[test]
fn small_examples() {
    let q: Quiver = "A2:>".parse().unwrap();
    let v = Representation::indecomposable(&q, 1, 2).unwrap();
    let r = reflect_plus(&v, 2).unwrap();
    assert_eq!(r.representation.dim(), &[1, 0]);
    assert_eq!(r.quiver.to_string(), "A2:<");
    let s2 = Representation::indecomposable(&q, 2, 2).unwrap();
    let r = reflect_minus(&s2, 1).unwrap();
    assert_eq!(r.representation.dim(), &[1, 1]);
    assert!(reflect_minus(&Representation::zero(&q), 1).unwrap().representation.is_zero());
    let sq: SymmetricQuiver = "A4:>>>".parse().unwrap();
    let w = Representation::indecomposable(sq.quiver(), 2, 3).unwrap();
    let r = reflect_pair_minus(&sq, &w, 1).unwrap().representation;
    assert_eq!(r.dim(), sq.reflect_pair_dim(1, w.dim()).unwrap());
}

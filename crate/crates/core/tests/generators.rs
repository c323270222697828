use symquiver::functors::reflect_pair_plus;
use symquiver::generators::{
    degree_from_weight, descriptor_weight, enumerate_generators, reduce_dominated, transport_generator, Evaluator,
    SemiKind, Transported,
};
use symquiver::group::{random_symmetric_rep, trial_rng};
use symquiver::oracle::{symmetric_dims, verify_invariance};
use symquiver::rep::compose_path;
use symquiver::semiinv::{schofield_eval, PfaffianSetup};
use symquiver::{Kind, RatMatrix, Rational, Representation, SymmetricQuiver};

fn targets() -> Vec<(SymmetricQuiver, Kind, Vec<usize>)> {
    let mut out = Vec::new();
    for m in 2..=6 {
        for q in [SymmetricQuiver::equioriented(m), format!("A{m}:{}", "<".repeat(m - 1)).parse().unwrap()] {
            for kind in [Kind::Symplectic, Kind::Orthogonal] {
                for beta in symmetric_dims(&q, kind, if m > 4 { 2 } else { 3 }) {
                    out.push((q.clone(), kind, beta));
                }
            }
        }
    }
    out
}

#[test]
fn weights_are_distinct_and_independent() {
    let mut nonempty = 0;
    for (q, kind, beta) in targets() {
        let gens = enumerate_generators(&q, &beta, kind).unwrap();
        if gens.is_empty() {
            continue;
        }
        nonempty += 1;
        let rows: Vec<Vec<Rational>> = gens.iter().map(|d| d.weight.clone()).collect();
        let rank = RatMatrix::from_rows(rows, q.m()).unwrap().rank();
        assert_eq!(rank, gens.len(), "{q} {kind} {beta:?}");
        for d in &gens {
            assert!(d.degree > 0);
            let v = Representation::indecomposable(q.quiver(), d.interval.0, d.interval.1).unwrap();
            assert_eq!(d.weight, descriptor_weight(&v, d.kind));
            assert_eq!(degree_from_weight(&q, &beta, &d.weight).unwrap(), d.degree, "{q} {kind} {beta:?} {}", d.code());
            // each listed generator pairs to zero with beta
            assert_eq!(q.quiver().euler_form(v.dim(), &beta).unwrap(), 0);
        }
    }
    assert!(nonempty > 20);
}

#[test]
fn generators_are_semi_invariant() {
    for (q, kind, beta) in targets() {
        if q.m() > 4 || beta.iter().sum::<usize>() > 8 {
            continue;
        }
        for d in enumerate_generators(&q, &beta, kind).unwrap() {
            let report = verify_invariance(&d, &q, &beta, kind, 3, 61).unwrap();
            assert!(report.passed(), "{}", report.to_text());
        }
    }
}

#[test]
fn symbolic_degree_matches() {
    for (s, kind, beta) in [
        ("A4:>>>", Kind::Symplectic, vec![1, 2, 2, 1]),
        ("A4:>>>", Kind::Orthogonal, vec![1, 2, 2, 1]),
        ("A5:>>>>", Kind::Orthogonal, vec![1, 1, 2, 1, 1]),
        ("A3:<<", Kind::Orthogonal, vec![2, 1, 2]),
    ] {
        let q: SymmetricQuiver = s.parse().unwrap();
        for d in enumerate_generators(&q, &beta, kind).unwrap() {
            let p = Evaluator::new(&d, &q, kind, &beta).unwrap().symbolic().unwrap();
            assert!(p.is_homogeneous());
            assert_eq!(p.degree(), Some(d.degree as u32), "{s} {}", d.code());
        }
    }
}

#[test]
fn pfaffian_matrices_are_skew() {
    let mut seen = 0;
    for (q, kind, beta) in targets() {
        if beta.iter().sum::<usize>() > 10 {
            continue;
        }
        for d in enumerate_generators(&q, &beta, kind).unwrap() {
            if d.kind != SemiKind::Pf {
                continue;
            }
            let v = Representation::indecomposable(q.quiver(), d.interval.0, d.interval.1).unwrap();
            let setup = PfaffianSetup::new(&v, &q, kind, &beta).unwrap();
            let sw = random_symmetric_rep(&q, kind, &beta, &mut trial_rng(62, seen)).unwrap();
            let m = setup.matrix(&sw).unwrap();
            assert!(m.add(&m.transpose()).unwrap().is_zero_matrix(), "{q} {kind} {beta:?} {}", d.code());
            assert_eq!(m.pfaffian().unwrap(), setup.eval(&sw).unwrap());
            seen += 1;
        }
    }
    assert!(seen > 0);
}

/// Restriction of `w` to the vertices kept by a reduction: each merged arrow
/// becomes the composite along the original chain.
fn restrict(w: &Representation, reduced: &SymmetricQuiver, map: &[usize]) -> Representation {
    let q = w.quiver();
    let rq = reduced.quiver();
    let maps = rq
        .arrows()
        .map(|k| {
            let (t, h) = (map[rq.tail(k) - 1], map[rq.head(k) - 1]);
            compose_path(q, w.maps(), w.dim(), t, h).expect("chain path")
        })
        .collect();
    let dim = map.iter().map(|&x| w.dim()[x - 1]).collect();
    Representation::new(rq.clone(), dim, maps).unwrap()
}

#[test]
fn reduced_generators_pull_back() {
    let mut reductions = 0;
    for m in 4..=7 {
        let q = SymmetricQuiver::equioriented(m);
        for kind in [Kind::Symplectic, Kind::Orthogonal] {
            for beta in symmetric_dims(&q, kind, 2) {
                let red = reduce_dominated(&q, &beta, kind).unwrap();
                if red.quiver.m() == m {
                    continue;
                }
                reductions += 1;
                for d in &red.extracted {
                    assert_eq!(d.kind, SemiKind::Det);
                }
                for d in enumerate_generators(&red.quiver, &red.beta, kind).unwrap() {
                    let (j, i) = red.pull_back(d.interval);
                    let v = Representation::indecomposable(q.quiver(), j, i).unwrap();
                    let rv = Representation::indecomposable(red.quiver.quiver(), d.interval.0, d.interval.1).unwrap();
                    let mut ratio: Option<Rational> = None;
                    for t in 0..3 {
                        let sw = random_symmetric_rep(&q, kind, &beta, &mut trial_rng(63, t)).unwrap();
                        let w = sw.unfold();
                        let lhs = schofield_eval(&v, &w).unwrap();
                        let rhs = schofield_eval(&rv, &restrict(&w, &red.quiver, &red.vertex_map)).unwrap();
                        assert_eq!(lhs.is_zero(), rhs.is_zero());
                        if rhs.is_zero() {
                            continue;
                        }
                        let r = &lhs / &rhs;
                        match &ratio {
                            None => ratio = Some(r),
                            Some(p) => assert_eq!(p, &r, "{q} {kind} {beta:?} {} -> ({j},{i})", d.code()),
                        }
                    }
                }
            }
        }
    }
    assert!(reductions > 5);
}

#[test]
fn transport_along_orientation_paths() {
    let (mut present, mut absent) = (0, 0);
    for m in 3..=5 {
        let q = SymmetricQuiver::equioriented(m);
        for kind in [Kind::Symplectic, Kind::Orthogonal] {
            for beta in symmetric_dims(&q, kind, 2) {
                let gens = enumerate_generators(&q, &beta, kind).unwrap();
                for target in SymmetricQuiver::all_orientations(m) {
                    let Ok(path) = q.orientation_path(&target) else { continue };
                    let reachable = path
                        .iter()
                        .try_fold((q.clone(), beta.clone()), |(cur, b), &x| {
                            Ok::<_, symquiver::Error>((cur.reflect_pair(x)?, cur.reflect_pair_dim(x, &b)?))
                        })
                        .is_ok();
                    for d in &gens {
                        if !reachable {
                            // beta itself reflects to a negative dimension, unless V dies first
                            let r = transport_generator(&q, &beta, d, &path);
                            assert!(matches!(r, Err(_) | Ok(Transported::Absent { .. })), "{r:?}");
                            continue;
                        }
                        match transport_generator(&q, &beta, d, &path).unwrap() {
                            Transported::Present { quiver, beta: b2, descriptor } => {
                                assert_eq!(quiver, target);
                                assert!(quiver.is_symmetric_dim(&b2));
                                assert_eq!(descriptor.kind, d.kind);
                                let v = Representation::indecomposable(quiver.quiver(), descriptor.interval.0, descriptor.interval.1)
                                    .unwrap();
                                assert_eq!(descriptor.weight, descriptor_weight(&v, d.kind));
                                if b2.iter().sum::<usize>() <= 8 {
                                    let report = verify_invariance(&descriptor, &quiver, &b2, kind, 2, 64).unwrap();
                                    assert!(report.passed(), "{}", report.to_text());
                                }
                                present += 1;
                            }
                            Transported::Absent { step } => {
                                // replay up to the step that kills the interval
                                let mut cur = q.clone();
                                let mut v = Representation::indecomposable(q.quiver(), d.interval.0, d.interval.1).unwrap();
                                for &x in &path[..=step] {
                                    v = reflect_pair_plus(&cur, &v, x).unwrap().representation;
                                    cur = cur.reflect_pair(x).unwrap();
                                }
                                assert!(v.is_zero());
                                absent += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(present > 0 && absent > 0, "present {present} absent {absent}");
}

#[test]
fn transport_rejects_bad_steps() {
    let q = SymmetricQuiver::equioriented(4);
    let d = &enumerate_generators(&q, &[1, 2, 2, 1], Kind::Symplectic).unwrap()[0];
    assert!(transport_generator(&q, &[1, 2, 2, 1], d, &[2]).is_err());
    assert!(transport_generator(&q, &[1, 2, 2, 1], d, &[1]).is_err());
    assert_eq!(
        transport_generator(&q, &[1, 2, 2, 1], d, &[]).unwrap(),
        Transported::Present {
            quiver: q.clone(),
            beta: vec![1, 2, 2, 1],
            descriptor: d.clone()
        }
    );
}

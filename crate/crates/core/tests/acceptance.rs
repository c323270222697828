//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use symquiver::group::{random_matrix, random_rational, random_skew, trial_rng};
use symquiver::matrix::{det_expand, pfaffian_expand};
use symquiver::oracle::{
    verify_duality, verify_generation, verify_invariance_all, verify_pfaffian, verify_reflection_transport,
    weight_space_table, VerificationReport,
};
use symquiver::schur::{cauchy_sym2, cauchy_tensor, cauchy_wedge2, lr_coeff, partitions, schur_dim, Partition};
use symquiver::semiinv::schofield_eval;
use symquiver::{Kind, Polynomial, Quiver, RatMatrix, Rational, Representation, SymmetricQuiver};

const SEED: u64 = 20240607;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pfaffian_laws() -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    for t in 0..200u64 {
        let mut rng = trial_rng(SEED, t);
        let n = [2, 4, 6][(t % 3) as usize];
        let a = random_skew(n, &mut rng);
        let b = random_matrix(n, n, &mut rng);
        let pf = a.pfaffian().unwrap();
        let ok_det = pf.clone() * pf.clone() == a.det().unwrap();
        let ok_expand = pfaffian_expand(&a).unwrap() == pf && a.pfaffian_elimination().unwrap() == pf;
        let bab = b.mul(&a).unwrap().mul(&b.transpose()).unwrap();
        let ok_cong = bab.pfaffian().unwrap() == b.det().unwrap() * pf;
        checked += 1;
        if !(ok_det && ok_expand && ok_cong) {
            failures += 1;
        }
    }
    Outcome {
        pass: failures == 0,
        detail: format!("{checked} skew matrices, {failures} failures"),
    }
}

fn invariance_dims() -> Vec<(usize, Kind, Vec<Vec<usize>>)> {
    use Kind::*;
    vec![
        (2, Symplectic, vec![vec![1, 1], vec![2, 2], vec![3, 3]]),
        (2, Orthogonal, vec![vec![2, 2], vec![4, 4], vec![3, 3]]),
        (3, Symplectic, vec![vec![1, 2, 1], vec![2, 2, 2], vec![3, 4, 3]]),
        (3, Orthogonal, vec![vec![1, 1, 1], vec![2, 1, 2], vec![2, 3, 2]]),
        (4, Symplectic, vec![vec![1, 2, 2, 1], vec![2, 1, 1, 2], vec![1, 3, 3, 1]]),
        (4, Orthogonal, vec![vec![1, 2, 2, 1], vec![2, 2, 2, 2], vec![2, 1, 1, 2]]),
        (5, Symplectic, vec![vec![1, 2, 2, 2, 1], vec![1, 1, 2, 1, 1], vec![2, 1, 2, 1, 2]]),
        (5, Orthogonal, vec![vec![1, 1, 2, 1, 1], vec![1, 2, 1, 2, 1], vec![2, 1, 1, 1, 2]]),
        (6, Symplectic, vec![vec![1, 2, 1, 1, 2, 1], vec![1, 1, 2, 2, 1, 1], vec![2, 1, 1, 1, 1, 2]]),
        (6, Orthogonal, vec![vec![1, 2, 1, 1, 2, 1], vec![1, 1, 2, 2, 1, 1], vec![2, 1, 1, 1, 1, 2]]),
    ]
}

fn invariance_report(seed: u64) -> VerificationReport {
    let mut all = VerificationReport::new("semi-invariance on equioriented A2..A6");
    for (m, kind, dims) in invariance_dims() {
        for q in [SymmetricQuiver::equioriented(m), format!("A{m}:{}", "<".repeat(m - 1)).parse::<SymmetricQuiver>().unwrap()] {
            for beta in &dims {
                let r = verify_invariance_all(&q, beta, kind, 100, seed).unwrap();
                all.notes.push(r.subject.clone());
                all.absorb(r);
            }
        }
    }
    all
}

fn semi_invariance() -> Outcome {
    let r = invariance_report(SEED);
    let gens = r.notes.iter().filter(|n| n.contains(" trials, ")).count();
    Outcome {
        pass: r.passed() && gens > 0,
        detail: format!("{gens} generators, {} trials, {} failures", r.trials, r.failures.len()),
    }
}

fn sparse_rep<R: Rng>(q: &Quiver, dim: &[usize], rng: &mut R) -> Representation {
    let maps = q
        .arrows()
        .map(|k| {
            let (r, c) = (dim[q.head(k) - 1], dim[q.tail(k) - 1]);
            let dense = rng.random_bool(0.5);
            RatMatrix::from_fn(r, c, |_, _| {
                if dense || rng.random_bool(0.5) {
                    random_rational(rng)
                } else {
                    Rational::zero()
                }
            })
        })
        .collect();
    Representation::new(q.clone(), dim.to_vec(), maps).unwrap()
}

fn all_quivers(m: usize) -> Vec<Quiver> {
    (0..1u32 << (m - 1))
        .map(|mask| {
            let s: String = (0..m - 1).map(|k| if mask >> k & 1 == 1 { '<' } else { '>' }).collect();
            format!("A{m}:{s}").parse().unwrap()
        })
        .collect()
}

fn small_dims(m: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; m]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    for v in &mut out {
        v.drain(..m);
    }
    out.sort_by_key(|b| (b.iter().sum::<usize>(), b.clone()));
    out
}

fn vanishing_criterion() -> Outcome {
    let (mut cases, mut samples, mut zeros, mut failures) = (0, 0, 0, 0);
    for m in 3..=5 {
        for q in all_quivers(m) {
            for i in 1..=m {
                for j in i..=m {
                    let v = Representation::indecomposable(&q, i, j).unwrap();
                    let betas: Vec<Vec<usize>> = small_dims(m, 2)
                        .into_iter()
                        .filter(|b| b.iter().any(|&e| e > 0) && q.euler_form(v.dim(), b).unwrap() == 0)
                        .take(2)
                        .collect();
                    for beta in betas {
                        cases += 1;
                        for t in 0..50u64 {
                            let mut rng = trial_rng(SEED ^ (cases as u64) << 8, t);
                            let w = sparse_rep(&q, &beta, &mut rng);
                            let c = schofield_eval(&v, &w).unwrap();
                            let hom = v.hom_dim(&w).unwrap();
                            samples += 1;
                            if c.is_zero() {
                                zeros += 1;
                            }
                            if c.is_zero() != (hom > 0) {
                                failures += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Outcome {
        pass: failures == 0 && zeros > 0 && zeros < samples,
        detail: format!("{cases} (Q, V, beta) cases, {samples} samples ({zeros} with c^V = 0), {failures} failures"),
    }
}

fn skew_parity() -> Outcome {
    let mut failures = 0;
    let mut positive = 0;
    let mut negative = 0;
    let cases: Vec<(usize, Kind, Kind, Vec<Vec<usize>>)> = vec![
        (4, Kind::Orthogonal, Kind::Symplectic, vec![vec![1, 2, 2, 1], vec![2, 2, 2, 2], vec![2, 1, 1, 2]]),
        (5, Kind::Symplectic, Kind::Orthogonal, vec![vec![1, 2, 2, 2, 1], vec![2, 2, 2, 2, 2], vec![2, 1, 2, 1, 2]]),
    ];
    for (m, good, bad, dims) in cases {
        for q in SymmetricQuiver::all_orientations(m) {
            for beta in &dims {
                let r = verify_pfaffian(&q, beta, good, 20, SEED).unwrap();
                positive += r.notes.iter().filter(|n| n.contains("skew on")).count();
                failures += r.failures.len();
                let r = verify_pfaffian(&q, beta, bad, 20, SEED).unwrap();
                negative += r.notes.iter().filter(|n| n.contains("skewness fails") || n.contains("inconsistent")).count();
                failures += r.failures.len();
            }
        }
    }
    Outcome {
        pass: failures == 0 && positive > 0 && negative > 0,
        detail: format!("{positive} skew cases confirmed, {negative} parity-mismatched cases detected, {failures} failures"),
    }
}

fn desk_cases() -> Vec<(usize, Kind, Vec<usize>)> {
    vec![
        (2, Kind::Symplectic, vec![1, 1]),
        (2, Kind::Orthogonal, vec![2, 2]),
        (4, Kind::Symplectic, vec![1, 2, 2, 1]),
        (4, Kind::Orthogonal, vec![1, 2, 2, 1]),
        (5, Kind::Symplectic, vec![1, 2, 2, 2, 1]),
        (5, Kind::Orthogonal, vec![1, 1, 2, 1, 1]),
    ]
}

fn generation() -> Outcome {
    let mut comparisons = 0;
    let mut failures = 0;
    for (m, kind, beta) in desk_cases() {
        let q = SymmetricQuiver::equioriented(m);
        let r = verify_generation(&q, &beta, kind, 4).unwrap();
        comparisons += r.oracle_comparisons.len();
        failures += r.failures.len();
        if !r.passed() {
            eprintln!("{}", r.to_text());
        }
    }
    Outcome {
        pass: failures == 0 && comparisons > 0,
        detail: format!("{comparisons} (weight, degree) pieces compared, {failures} mismatches"),
    }
}

fn cross_oracle() -> Outcome {
    let mut rows = 0;
    let mut mismatches = 0;
    for (m, kind, beta) in desk_cases() {
        let q = SymmetricQuiver::equioriented(m);
        for row in weight_space_table(&q, kind, &beta, 4).unwrap() {
            rows += 1;
            if row.chain_dim != Some(row.lie_dim) {
                mismatches += 1;
                eprintln!("{q} {kind} {beta:?}: {row:?}");
            }
        }
    }
    Outcome {
        pass: mismatches == 0 && rows > 0,
        detail: format!("{rows} nonzero pieces, {mismatches} disagreements"),
    }
}

fn transport_report(seed: u64) -> VerificationReport {
    let mut all = VerificationReport::new("reflection transport and duality on A4");
    for q in SymmetricQuiver::all_orientations(4) {
        for kind in [Kind::Symplectic, Kind::Orthogonal] {
            let r = verify_reflection_transport(&q, kind, None, 50, seed).unwrap();
            all.notes.push(r.subject.clone());
            all.absorb(r);
            let r = verify_duality(&q, kind, 50, seed).unwrap();
            all.notes.push(r.subject.clone());
            all.absorb(r);
        }
    }
    all
}

fn transport() -> Outcome {
    let r = transport_report(SEED);
    let ratios = r.notes.iter().filter(|n| n.contains("-> V[") && n.contains("ratio")).count();
    let dual = r.notes.iter().filter(|n| n.contains(" vs V[")).count();
    if !r.passed() {
        eprintln!("{}", r.to_text());
    }
    Outcome {
        pass: r.passed() && ratios > 0 && dual > 0,
        detail: format!(
            "{ratios} reflection cases and {dual} duality cases with constant nonzero ratio, {} failures",
            r.failures.len()
        ),
    }
}

/// `h_k` in `n` variables.
fn complete(k: i64, n: usize) -> Polynomial {
    if k < 0 {
        return Polynomial::zero();
    }
    symquiver::poly::monomials_of_degree(n, k as u32)
        .into_iter()
        .fold(Polynomial::zero(), |acc, m| acc.add(&Polynomial::term(Rational::one(), m)))
}

/// Jacobi-Trudi: `s_lambda = det(h_{lambda_i - i + j})`.
fn schur_poly(l: &Partition, n: usize) -> Polynomial {
    let k = l.height();
    if k == 0 {
        return Polynomial::constant(Rational::one());
    }
    let m = symquiver::Matrix::from_fn(k, k, |i, j| complete(l.part(i + 1) as i64 - (i as i64 + 1) + (j as i64 + 1), n));
    det_expand(&m).unwrap()
}

fn lr_oracle() -> Outcome {
    let n = 4;
    let mut failures = 0;
    let mut triples = 0;
    let small: Vec<Partition> = (0..=4).flat_map(partitions).collect();
    for l in &small {
        for mu in &small {
            let mut prod = schur_poly(l, n).mul(&schur_poly(mu, n));
            // peel off s_nu by the lex-leading monomial x^nu
            let mut found: Vec<(Partition, Rational)> = Vec::new();
            while let Some((lead, c)) = prod.terms().last().map(|(m, c)| (m.clone(), c.clone())) {
                let nu = Partition::new((0..n).map(|i| lead.exponent(i) as usize).collect()).unwrap();
                prod = prod.sub(&schur_poly(&nu, n).scale(&c));
                found.push((nu, c));
            }
            for nu in partitions(l.size() + mu.size()) {
                if nu.height() > n {
                    continue;
                }
                triples += 1;
                let expected = found.iter().find(|(p, _)| *p == nu).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero);
                if Rational::from(lr_coeff(l, mu, &nu) as i64) != expected {
                    failures += 1;
                }
            }
        }
    }
    let binom = |a: usize, b: usize| -> usize { (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1)) };
    let mut cauchy = 0;
    for d in 0..=4 {
        for nv in 1..=4 {
            for nw in 1..=4 {
                cauchy += 1;
                let total: usize = cauchy_tensor(d, nv, nw).iter().map(|(_, a, b)| a * b).sum();
                if total != binom(nv * nw + d - 1, d) {
                    failures += 1;
                }
            }
            let sym: usize = cauchy_sym2(d, nv).iter().map(|p| schur_dim(p, nv)).sum();
            let wedge: usize = cauchy_wedge2(d, nv).iter().map(|p| schur_dim(p, nv)).sum();
            let (s2, w2) = (nv * (nv + 1) / 2, nv * (nv - 1) / 2);
            if sym != binom(s2 + d - 1, d) || (w2 > 0 && wedge != binom(w2 + d - 1, d)) || (w2 == 0 && wedge != usize::from(d == 0)) {
                failures += 1;
            }
            cauchy += 2;
        }
    }
    Outcome {
        pass: failures == 0,
        detail: format!("{triples} LR triples and {cauchy} Cauchy identities, {failures} failures"),
    }
}

fn determinism() -> Outcome {
    let a = (invariance_report(7).to_text(), transport_report(7).to_text());
    let b = (invariance_report(7).to_text(), transport_report(7).to_text());
    Outcome {
        pass: a == b,
        detail: format!("reports of {} and {} bytes compared", a.0.len(), a.1.len()),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("pfaffian laws", pfaffian_laws),
        ("semi-invariance", semi_invariance),
        ("vanishing criterion", vanishing_criterion),
        ("skew-symmetry parity", skew_parity),
        ("generation at desk scale", generation),
        ("cross-oracle agreement", cross_oracle),
        ("reflection transport", transport),
        ("LR oracle", lr_oracle),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = f();
        all &= o.pass;
        println!(
            "criterion {}: {} {name}: {} ({:.1}s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

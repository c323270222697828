//! Brute-force oracles and randomized verification harnesses.
//!
//! The Lie oracle counts polynomials on the coordinate space killed by the
//! derivations of `sl` at every vertex of `Q_0^+` and of `so`/`sp` at the
//! fixed vertex, one torus-graded piece at a time.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functors::{coxeter_minus, reflect_pair_plus};
use crate::generators::{enumerate_generators, format_weight, Evaluator, SemiInvariantDescriptor};
use crate::group::{act, character_value, random_symmetric_rep, trial_rng, GroupElement};
use crate::matrix::{Matrix, RatMatrix};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::quiver::{SymmetricQuiver, VertexClass};
use crate::rational::Rational;
use crate::rep::{check_symmetric_dim, symplectic_j, Kind, Representation};
use crate::ring::Ring;
use crate::schur::{chain_grading_dim, weight_grading};
use crate::semiinv::{schofield_eval, CoordinateSpace, PfaffianSetup};

/// Largest number of degree-`d` monomials the Lie oracle will handle.
pub const MONOMIAL_GUARD: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub weight: String,
    pub degree: usize,
    pub oracle_dim: usize,
    pub generated_dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub trials: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
    pub oracle_comparisons: Vec<Comparison>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, input: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) {
        self.failures.push(Failure {
            input: input.into(),
            expected: expected.into(),
            actual: actual.into(),
        });
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        self.trials += other.trials;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
        self.oracle_comparisons.extend(other.oracle_comparisons);
        self.notes.extend(other.notes);
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "subject: {}", self.subject);
        let _ = writeln!(s, "trials: {}  skipped: {}", self.trials, self.skipped);
        for n in &self.notes {
            let _ = writeln!(s, "  {n}");
        }
        if !self.oracle_comparisons.is_empty() {
            let _ = writeln!(s, "  {:<28} {:>6} {:>7} {:>10}", "weight", "degree", "oracle", "generated");
            for c in &self.oracle_comparisons {
                let mark = if c.oracle_dim == c.generated_dim { "" } else { "  MISMATCH" };
                let _ = writeln!(
                    s,
                    "  {:<28} {:>6} {:>7} {:>10}{mark}",
                    c.weight, c.degree, c.oracle_dim, c.generated_dim
                );
            }
        }
        for f in &self.failures {
            let _ = writeln!(s, "  FAIL {}: expected {}, got {}", f.input, f.expected, f.actual);
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn binom(n: usize, k: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Torus grading of each coordinate: `+1` at the head and `-1` at the tail,
/// read through `g_{sigma x} = g_x^{-T}` on `Q_0^+`.
pub fn coordinate_gradings(space: &CoordinateSpace) -> Vec<Vec<i64>> {
    let q = &space.quiver;
    let plus = q.plus_vertices();
    let slot = |x: usize| -> Option<(usize, i64)> {
        match q.vertex_class(x) {
            VertexClass::Plus => Some((x - 1, 1)),
            VertexClass::Minus => Some((q.sigma(x) - 1, -1)),
            VertexClass::Fixed => None,
        }
    };
    space
        .coords
        .iter()
        .map(|&(k, _, _)| {
            let mut g = vec![0i64; plus.len()];
            if let Some((i, s)) = slot(q.quiver().head(k)) {
                g[i] += s;
            }
            if let Some((i, s)) = slot(q.quiver().tail(k)) {
                g[i] -= s;
            }
            g
        })
        .collect()
}

fn monomial_grading(m: &Monomial, gradings: &[Vec<i64>], n: usize) -> Vec<i64> {
    let mut g = vec![0i64; n];
    for (c, &e) in m.exponents().iter().enumerate() {
        for (i, v) in gradings[c].iter().enumerate() {
            g[i] += e as i64 * v;
        }
    }
    g
}

fn guarded_monomials(space: &CoordinateSpace, d: usize) -> Result<Vec<Monomial>> {
    let count = if space.is_empty() { usize::from(d == 0) } else { binom(space.len() + d - 1, d) };
    if count > MONOMIAL_GUARD {
        return Err(Error::SizeGuard(format!(
            "{count} monomials of degree {d} in {} coordinates exceed {MONOMIAL_GUARD}",
            space.len()
        )));
    }
    Ok(monomials_of_degree(space.len(), d as u32))
}

/// Gradings occurring among degree-`d` monomials.
pub fn gradings_in_degree(space: &CoordinateSpace, d: usize) -> Result<BTreeSet<Vec<i64>>> {
    let gr = coordinate_gradings(space);
    let n = space.quiver.plus_vertices().len();
    Ok(guarded_monomials(space, d)?
        .iter()
        .map(|m| monomial_grading(m, &gr, n))
        .collect())
}

/// The weight of a graded piece: `chi(x) = -delta_x / (2 beta_x)` on `Q_0^+`.
pub fn grading_weight(q: &SymmetricQuiver, beta: &[usize], delta: &[i64]) -> Vec<Rational> {
    let mut chi = vec![Rational::zero(); q.m()];
    for (idx, x) in q.plus_vertices().into_iter().enumerate() {
        if beta[x - 1] > 0 {
            let v = Rational::frac(-delta[idx], 2 * beta[x - 1] as i64);
            chi[q.sigma(x) - 1] = -&v;
            chi[x - 1] = v;
        }
    }
    chi
}

/// Basis of the Lie algebra acting at each vertex of `Q_0^+` and the fixed
/// vertex, as (vertex, matrix).
fn lie_basis(q: &SymmetricQuiver, kind: Kind, beta: &[usize]) -> Vec<(usize, RatMatrix)> {
    let mut out = Vec::new();
    let unit = |n: usize, i: usize, j: usize| {
        let mut m = RatMatrix::zeros(n, n);
        m.set(i, j, Rational::one());
        m
    };
    for x in q.plus_vertices() {
        let n = beta[x - 1];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push((x, unit(n, i, j)));
                }
            }
            if i + 1 < n {
                out.push((x, unit(n, i, i).sub(&unit(n, i + 1, i + 1)).expect("square")));
            }
        }
    }
    if let Some(f) = q.fixed_vertex() {
        let n = beta[f - 1];
        match kind {
            Kind::Orthogonal => {
                for i in 0..n {
                    for j in i + 1..n {
                        out.push((f, unit(n, i, j).sub(&unit(n, j, i)).expect("square")));
                    }
                }
            }
            Kind::Symplectic => {
                let jm = symplectic_j(n);
                for i in 0..n {
                    for j in i..n {
                        let s = unit(n, i, j).add(&unit(n, j, i)).expect("square");
                        out.push((f, jm.mul(&s).expect("square")));
                    }
                }
            }
        }
    }
    out
}

/// Linear vector fields `xi_c` on the coordinates for the Lie element `X`
/// supported at `vertex`.
fn vector_field(space: &CoordinateSpace, data: &BTreeMap<usize, Matrix<Polynomial>>, vertex: usize, x: &RatMatrix) -> Vec<Polynomial> {
    let q = &space.quiver;
    let quiver = q.quiver();
    let at = |v: usize| -> Option<Matrix<Polynomial>> {
        if v == vertex {
            Some(x.map(Polynomial::from_rational))
        } else if q.vertex_class(v) == VertexClass::Minus && q.sigma(v) == vertex {
            Some(x.transpose().neg().map(Polynomial::from_rational))
        } else {
            None
        }
    };
    let mut fields: BTreeMap<usize, Matrix<Polynomial>> = BTreeMap::new();
    for (&k, a) in data {
        let mut xi = Matrix::zeros(a.rows(), a.cols());
        if let Some(xh) = at(quiver.head(k)) {
            xi = xi.add(&xh.mul(a).expect("shape")).expect("shape");
        }
        if let Some(xt) = at(quiver.tail(k)) {
            xi = xi.sub(&a.mul(&xt).expect("shape")).expect("shape");
        }
        fields.insert(k, xi);
    }
    space
        .coords
        .iter()
        .map(|&(k, i, j)| fields[&k].get(i, j).clone())
        .collect()
}

/// Dimension of the graded piece `(delta, d)` of the semi-invariant ring,
/// as the common kernel of all derivations.
pub fn lie_grading_dim(q: &SymmetricQuiver, kind: Kind, beta: &[usize], delta: &[i64], d: usize) -> Result<usize> {
    let space = CoordinateSpace::new(q, kind, beta)?;
    let gr = coordinate_gradings(&space);
    let n = q.plus_vertices().len();
    if delta.len() != n {
        return Err(Error::Dimension(format!("grading needs {n} entries, got {}", delta.len())));
    }
    let piece: Vec<Monomial> = guarded_monomials(&space, d)?
        .into_iter()
        .filter(|m| monomial_grading(m, &gr, n) == delta)
        .collect();
    if piece.is_empty() {
        return Ok(0);
    }
    let data = space.symbolic_data();
    let mut rows: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (xi_idx, (vertex, x)) in lie_basis(q, kind, beta).iter().enumerate() {
        let fields = vector_field(&space, &data, *vertex, x);
        for (col, mono) in piece.iter().enumerate() {
            for (c, field) in fields.iter().enumerate() {
                if field.is_zero() {
                    continue;
                }
                let Some((e, rest)) = mono.derivative(c) else {
                    continue;
                };
                let scale = Rational::from(e as i64);
                for (fm, fc) in field.terms() {
                    let key = (xi_idx, rest.mul(fm));
                    let next = rows.len();
                    let row = *rows.entry(key).or_insert(next);
                    entries.push((row, col, fc * &scale));
                }
            }
        }
    }
    let mut mat = RatMatrix::zeros(rows.len(), piece.len());
    for (r, c, v) in entries {
        let cur = mat.get(r, c) + &v;
        mat.set(r, c, cur);
    }
    Ok(piece.len() - mat.rank())
}

/// Dimension of the weight-`chi`, degree-`d` part of `SpSI/OSI(Q, beta)`.
pub fn lie_weight_space_dim(q: &SymmetricQuiver, kind: Kind, beta: &[usize], chi: &[Rational], d: usize) -> Result<usize> {
    check_symmetric_dim(q, kind, beta)?;
    match weight_grading(q, beta, chi) {
        Some(delta) => lie_grading_dim(q, kind, beta, &delta, d),
        None => Ok(0),
    }
}

/// One row of a weight-space table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSpaceRow {
    pub weight: String,
    pub degree: usize,
    pub lie_dim: usize,
    pub chain_dim: Option<usize>,
}

/// Both oracles on every graded piece of degree at most `dmax` with a
/// nonzero Lie dimension (or any chain/Lie disagreement).
pub fn weight_space_table(q: &SymmetricQuiver, kind: Kind, beta: &[usize], dmax: usize) -> Result<Vec<WeightSpaceRow>> {
    let space = CoordinateSpace::new(q, kind, beta)?;
    let mut out = Vec::new();
    for d in 0..=dmax {
        for delta in gradings_in_degree(&space, d)? {
            let lie = lie_grading_dim(q, kind, beta, &delta, d)?;
            let chain = chain_dim_for_grading(q, kind, beta, &delta, d)?;
            if lie > 0 || chain.is_some_and(|c| c != lie) {
                out.push(WeightSpaceRow {
                    weight: format_weight(&grading_weight(q, beta, &delta)),
                    degree: d,
                    lie_dim: lie,
                    chain_dim: chain,
                });
            }
        }
    }
    Ok(out)
}

/// The chain oracle on a graded piece, or `None` off equioriented quivers.
pub fn chain_dim_for_grading(q: &SymmetricQuiver, kind: Kind, beta: &[usize], delta: &[i64], d: usize) -> Result<Option<usize>> {
    if !q.quiver().is_equioriented() {
        return Ok(None);
    }
    let mut delta = delta.to_vec();
    if q.m() > 1 && q.quiver().dir(1) == crate::quiver::Dir::Left {
        delta.iter_mut().for_each(|x| *x = -*x);
    }
    chain_grading_dim(q, kind, beta, &delta, d).map(Some)
}

/// Checks `f(g^{-1} W) = tau(g) f(W)` on random `(g, W)`.
pub fn verify_invariance(
    descr: &SemiInvariantDescriptor,
    q: &SymmetricQuiver,
    beta: &[usize],
    kind: Kind,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let eval = Evaluator::new(descr, q, kind, beta)?;
    let mut report = VerificationReport::new(format!(
        "invariance {} on {q} {kind} dim {beta:?} weight {}",
        descr.code(),
        format_weight(&descr.weight)
    ));
    report.trials = trials;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let w = random_symmetric_rep(q, kind, beta, &mut rng)?;
        let g = GroupElement::sample(q, kind, beta, false, &mut rng);
        let lhs = eval.eval(&act(&g.inverse(), &w)?)?;
        let rhs = &character_value(&g, &descr.weight)? * &eval.eval(&w)?;
        if lhs != rhs {
            report.fail(format!("trial {t}"), rhs.to_string(), lhs.to_string());
        }
    }
    Ok(report)
}

/// Every enumerated generator at `beta`, `trials` samples each.
pub fn verify_invariance_all(q: &SymmetricQuiver, beta: &[usize], kind: Kind, trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("invariance of all generators on {q} {kind} dim {beta:?}"));
    for d in enumerate_generators(q, beta, kind)? {
        let r = verify_invariance(&d, q, beta, kind, trials, seed)?;
        report.notes.push(format!(
            "{}: {} trials, {} failures",
            d.code(),
            r.trials,
            r.failures.len()
        ));
        report.trials += r.trials;
        report.failures.extend(r.failures.into_iter().map(|f| Failure {
            input: format!("{} {}", d.code(), f.input),
            ..f
        }));
    }
    Ok(report)
}

/// Compares, for each graded piece of degree at most `dmax`, the Lie oracle
/// with the rank of the span of products of generators.
pub fn verify_generation(q: &SymmetricQuiver, beta: &[usize], kind: Kind, dmax: usize) -> Result<VerificationReport> {
    let gens = enumerate_generators(q, beta, kind)?;
    let mut report = VerificationReport::new(format!("generation on {q} {kind} dim {beta:?} up to degree {dmax}"));
    let space = CoordinateSpace::new(q, kind, beta)?;
    let coord_gr = coordinate_gradings(&space);
    let n = q.plus_vertices().len();
    let mut polys = Vec::new();
    let mut grads = Vec::new();
    for g in &gens {
        let p = Evaluator::new(g, q, kind, beta)?.symbolic()?;
        let delta = weight_grading(q, beta, &g.weight)
            .ok_or_else(|| Error::Internal(format!("generator {} has a non-symmetric weight", g.code())))?;
        for (m, _) in p.terms() {
            if monomial_grading(m, &coord_gr, n) != delta || m.degree() as usize != g.degree {
                report.fail(
                    format!("{} monomial {m}", g.code()),
                    format!("degree {} weight {}", g.degree, format_weight(&g.weight)),
                    format!(
                        "degree {} weight {}",
                        m.degree(),
                        format_weight(&grading_weight(q, beta, &monomial_grading(m, &coord_gr, n)))
                    ),
                );
            }
        }
        if p.is_zero() {
            report.fail(g.code(), "nonzero polynomial", "0");
        }
        report.notes.push(format!("{g}"));
        polys.push(p);
        grads.push(delta);
    }
    for d in 0..=dmax {
        // products of generators of total degree d, grouped by grading
        let mut by_grading: BTreeMap<Vec<i64>, Vec<Polynomial>> = BTreeMap::new();
        let mut exps = vec![0usize; gens.len()];
        fn rec(
            k: usize,
            left: usize,
            gens: &[SemiInvariantDescriptor],
            exps: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if k == gens.len() {
                if left == 0 {
                    out.push(exps.clone());
                }
                return;
            }
            let deg = gens[k].degree;
            for e in 0..=left / deg {
                exps[k] = e;
                rec(k + 1, left - e * deg, gens, exps, out);
            }
            exps[k] = 0;
        }
        let mut all = Vec::new();
        rec(0, d, &gens, &mut exps, &mut all);
        for e in all {
            let mut p = Polynomial::constant(Rational::one());
            let mut delta = vec![0i64; n];
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    p = p.mul(&polys[k].pow(ek as u32));
                    for (i, v) in grads[k].iter().enumerate() {
                        delta[i] += ek as i64 * v;
                    }
                }
            }
            by_grading.entry(delta).or_default().push(p);
        }
        for delta in gradings_in_degree(&space, d)? {
            let oracle = lie_grading_dim(q, kind, beta, &delta, d)?;
            let products = by_grading.remove(&delta).unwrap_or_default();
            let generated = span_rank(&products);
            if oracle == 0 && generated == 0 {
                continue;
            }
            let weight = format_weight(&grading_weight(q, beta, &delta));
            if oracle != generated {
                report.fail(format!("weight {weight} degree {d}"), oracle.to_string(), generated.to_string());
            }
            report.oracle_comparisons.push(Comparison {
                weight,
                degree: d,
                oracle_dim: oracle,
                generated_dim: generated,
            });
        }
        for delta in by_grading.keys() {
            report.fail(
                format!("generator products with grading {delta:?}"),
                "a grading of the coordinate ring",
                "unknown grading",
            );
        }
    }
    Ok(report)
}

fn span_rank(polys: &[Polynomial]) -> usize {
    let monos: BTreeSet<&Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m)).collect();
    let index: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut mat = RatMatrix::zeros(polys.len(), index.len());
    for (r, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            mat.set(r, index[m], c.clone());
        }
    }
    mat.rank()
}

/// Symmetric dimension vectors with entries at most `max`, by total size.
pub fn symmetric_dims(q: &SymmetricQuiver, kind: Kind, max: usize) -> Vec<Vec<usize>> {
    let m = q.m();
    let free: Vec<usize> = q.plus_vertices().into_iter().chain(q.fixed_vertex()).collect();
    let mut out = Vec::new();
    let mut cur = vec![0usize; free.len()];
    loop {
        let mut beta = vec![0usize; m];
        for (i, &x) in free.iter().enumerate() {
            beta[x - 1] = cur[i];
            beta[q.sigma(x) - 1] = cur[i];
        }
        if check_symmetric_dim(q, kind, &beta).is_ok() {
            out.push(beta);
        }
        let mut k = 0;
        while k < cur.len() && cur[k] == max {
            cur[k] = 0;
            k += 1;
        }
        if k == cur.len() {
            break;
        }
        cur[k] += 1;
    }
    out.sort_by_key(|b| (b.iter().sum::<usize>(), b.clone()));
    out
}

/// Tracks that a ratio stays constant.
struct RatioTracker {
    ratio: Option<Rational>,
    used: usize,
}

impl RatioTracker {
    fn new() -> Self {
        RatioTracker { ratio: None, used: 0 }
    }

    /// `Err` with the first ratio if `num/den` differs from it.
    fn push(&mut self, num: &Rational, den: &Rational) -> std::result::Result<(), Rational> {
        let r = num / den;
        self.used += 1;
        match &self.ratio {
            None => {
                self.ratio = Some(r);
                Ok(())
            }
            Some(k) if *k == r => Ok(()),
            Some(k) => Err(k.clone()),
        }
    }
}

fn interval_reps(q: &crate::quiver::Quiver) -> Vec<Representation> {
    let m = q.m();
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i..=m {
            out.push(Representation::indecomposable(q, i, j).expect("valid interval"));
        }
    }
    out
}

fn interval_of(v: &Representation) -> Result<(usize, usize)> {
    let fp = v.fingerprint()?;
    match fp.iter().collect::<Vec<_>>().as_slice() {
        [(&iv, &1)] => Ok(iv),
        _ => Err(Error::Internal(format!("expected an interval module, found {fp:?}"))),
    }
}

/// `c^V(W) / c^{C^+V}(C^+W)` over random symmetric `W`, for every admissible
/// sink `x` and interval `V` that survives `C^+_{(x, sigma x)}` and is not
/// projective. The dimension vector is `beta` when given, otherwise the
/// smallest symmetric one on which `c^V` is seen to be nonzero.
pub fn verify_reflection_transport(
    q: &SymmetricQuiver,
    kind: Kind,
    beta: Option<&[usize]>,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("reflection transport on {q} {kind}"));
    let quiver = q.quiver();
    for (x, _) in q.admissible_pairs() {
        if !quiver.is_sink(x) {
            continue;
        }
        for v in interval_reps(quiver) {
            let iv = interval_of(&v)?;
            let image = reflect_pair_plus(q, &v, x)?;
            let label = format!("pair ({x},{}) V[{},{}]", q.sigma(x), iv.0, iv.1);
            if image.representation.is_zero() {
                report.notes.push(format!("{label}: killed by the reflection, skipped"));
                continue;
            }
            if crate::semiinv::minimal_resolution(&v)?.is_projective() {
                report.notes.push(format!("{label}: projective, skipped"));
                continue;
            }
            let mid = crate::functors::reflect_plus(&v, x)?.representation;
            let exps = [
                unit_pairing(quiver, v.dim(), x)?,
                -unit_pairing(mid.quiver(), mid.dim(), q.sigma(x))?,
            ];
            let q2 = SymmetricQuiver::new(image.quiver.clone())?;
            let v2 = Representation::indecomposable(&image.quiver, interval_of(&image.representation)?.0, interval_of(&image.representation)?.1)?;
            let candidates: Vec<Vec<usize>> = match beta {
                Some(b) => vec![b.to_vec()],
                None => symmetric_dims(q, kind, 3),
            };
            let mut chosen = None;
            for b in candidates {
                if q.euler_form(v.dim(), &b)? != 0 || b.iter().all(|&e| e == 0) {
                    continue;
                }
                let Ok(b2) = q.reflect_pair_dim(x, &b) else {
                    continue;
                };
                if check_symmetric_dim(&q2, kind, &b2).is_err() {
                    continue;
                }
                let witness = (0..4u64).any(|t| {
                    let mut rng = trial_rng(seed ^ 0x5eed, t);
                    random_symmetric_rep(q, kind, &b, &mut rng)
                        .ok()
                        .and_then(|w| schofield_eval(&v, &w.unfold()).ok())
                        .is_some_and(|c| !c.is_zero())
                });
                if witness || beta.is_some() {
                    chosen = Some((b, b2));
                    break;
                }
            }
            let Some((b, b2)) = chosen else {
                report.notes.push(format!("{label}: c^V vanishes on every small symmetric dimension, skipped"));
                continue;
            };
            let mut tracker = RatioTracker::new();
            let mut skipped = 0;
            for t in 0..trials {
                let mut rng = trial_rng(seed, t as u64);
                let w = random_symmetric_rep(q, kind, &b, &mut rng)?.unfold();
                let cv = schofield_eval(&v, &w)?;
                let step = reflect_pair_plus(q, &w, x)?;
                let w2 = step.representation;
                if w2.dim() != b2.as_slice() {
                    skipped += 1;
                    continue;
                }
                let mut cv2 = schofield_eval(&v2, &w2)?;
                for ((_, vol), &e) in step.volumes.iter().zip(&exps) {
                    cv2 = &cv2 * &vol.pow(e)?;
                }
                if cv2.is_zero() {
                    if !cv.is_zero() {
                        report.fail(format!("{label} dim {b:?} trial {t}"), "c^{C+V}(C+W) nonzero", "0");
                    } else {
                        skipped += 1;
                    }
                    continue;
                }
                if let Err(k) = tracker.push(&cv, &cv2) {
                    report.fail(format!("{label} dim {b:?} trial {t}"), format!("ratio {k}"), format!("ratio {}", &cv / &cv2));
                }
            }
            report.trials += trials;
            report.skipped += skipped;
            match &tracker.ratio {
                Some(k) if k.is_zero() => report.fail(format!("{label} dim {b:?}"), "nonzero constant", "0"),
                Some(k) => report.notes.push(format!(
                    "{label} dim {b:?} -> V[{},{}] on {q2} dim {b2:?}: ratio {k} over {} samples",
                    v2_interval(&v2).0,
                    v2_interval(&v2).1,
                    tracker.used
                )),
                None => report.notes.push(format!("{label} dim {b:?}: no usable samples")),
            }
        }
    }
    Ok(report)
}

/// `<a, e_x>`: the exponent of `det W(x)` in the weight of `c^V`, `dim V = a`.
fn unit_pairing(q: &crate::quiver::Quiver, a: &[usize], x: usize) -> Result<i64> {
    let mut e = vec![0; q.m()];
    e[x - 1] = 1;
    q.euler_form(a, &e)
}

fn v2_interval(v: &Representation) -> (usize, usize) {
    interval_of(v).unwrap_or((0, 0))
}

/// `c^V` and `c^{C^- ∇V}` on random symmetric `W`: same zeros, constant ratio.
pub fn verify_duality(q: &SymmetricQuiver, kind: Kind, trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("duality on {q} {kind}"));
    for v in interval_reps(q.quiver()) {
        let iv = interval_of(&v)?;
        let dual = coxeter_minus(&v.dualize())?;
        let label = format!("V[{},{}]", iv.0, iv.1);
        if dual.is_zero() {
            report.notes.push(format!("{label}: C^-∇V = 0, skipped"));
            continue;
        }
        let div = interval_of(&dual)?;
        let dual = Representation::indecomposable(q.quiver(), div.0, div.1)?;
        let mut chosen = None;
        for b in symmetric_dims(q, kind, 3) {
            if b.iter().all(|&e| e == 0) || q.euler_form(v.dim(), &b)? != 0 {
                continue;
            }
            let witness = (0..4u64).any(|t| {
                let mut rng = trial_rng(seed ^ 0xd0a1, t);
                random_symmetric_rep(q, kind, &b, &mut rng)
                    .ok()
                    .and_then(|w| schofield_eval(&v, &w.unfold()).ok())
                    .is_some_and(|c| !c.is_zero())
            });
            if witness {
                chosen = Some(b);
                break;
            }
        }
        let Some(b) = chosen else {
            report.notes.push(format!("{label}: c^V vanishes on every small symmetric dimension, skipped"));
            continue;
        };
        if q.euler_form(dual.dim(), &b)? != 0 {
            report.fail(format!("{label} dim {b:?}"), "<dim C^-∇V, beta> = 0", "nonzero Euler form");
            continue;
        }
        let mut tracker = RatioTracker::new();
        for t in 0..trials {
            let mut rng = trial_rng(seed, t as u64);
            let w = random_symmetric_rep(q, kind, &b, &mut rng)?.unfold();
            let (a, c) = (schofield_eval(&v, &w)?, schofield_eval(&dual, &w)?);
            if a.is_zero() != c.is_zero() {
                report.fail(format!("{label} dim {b:?} trial {t}"), format!("c^V = {a}"), format!("c^(C-∇V) = {c}"));
            } else if !a.is_zero() {
                if let Err(k) = tracker.push(&a, &c) {
                    report.fail(format!("{label} dim {b:?} trial {t}"), format!("ratio {k}"), format!("ratio {}", &a / &c));
                }
            }
        }
        report.trials += trials;
        if let Some(k) = &tracker.ratio {
            report.notes.push(format!(
                "{label} vs V[{},{}] dim {b:?}: ratio {k} over {} samples",
                div.0, div.1, tracker.used
            ));
        }
    }
    Ok(report)
}

/// Skewness of `Hom(d^V_min, W)` after pairing, for every interval `V` with
/// `V ≅ C^-∇V` and `<dim V, beta> = 0`. With the parity matching `kind`
/// the matrix must be skew and `pf^2 = ±c^V`; with mismatched parity the
/// failure of skewness must be detected.
pub fn verify_pfaffian(q: &SymmetricQuiver, beta: &[usize], kind: Kind, trials: usize, seed: u64) -> Result<VerificationReport> {
    check_symmetric_dim(q, kind, beta)?;
    let conforming = q.m().is_multiple_of(2) == (kind == Kind::Orthogonal);
    let mut report = VerificationReport::new(format!(
        "pfaffian on {q} {kind} dim {beta:?} ({})",
        if conforming { "parity matched" } else { "parity mismatched, negative control" }
    ));
    let mut tested = 0;
    for v in interval_reps(q.quiver()) {
        let iv = interval_of(&v)?;
        let label = format!("V[{},{}]", iv.0, iv.1);
        if q.euler_form(v.dim(), beta)? != 0 {
            continue;
        }
        let dual = coxeter_minus(&v.dualize())?;
        if !dual.isomorphic(&v)? {
            continue;
        }
        tested += 1;
        if conforming {
            let setup = match PfaffianSetup::new(&v, q, kind, beta) {
                Ok(s) => s,
                Err(e) => {
                    report.fail(label, "skew Hom matrix", e.to_string());
                    continue;
                }
            };
            let mut tracker = RatioTracker::new();
            let mut zeros = 0;
            for t in 0..trials {
                let mut rng = trial_rng(seed, t as u64);
                let w = random_symmetric_rep(q, kind, beta, &mut rng)?;
                let s = setup.matrix(&w)?;
                if let Some((r, c)) = s.skew_violation() {
                    report.fail(format!("{label} trial {t}"), "skew", format!("entry ({r},{c}) breaks skewness"));
                    continue;
                }
                let pf = s.pfaffian()?;
                let c = schofield_eval(&v, &w.unfold())?;
                if c.is_zero() {
                    zeros += 1;
                    if !pf.is_zero() {
                        report.fail(format!("{label} trial {t}"), "pf = 0", pf.to_string());
                    }
                    continue;
                }
                if let Err(k) = tracker.push(&(&pf * &pf), &c) {
                    report.fail(format!("{label} trial {t}"), format!("pf^2 / c^V = {k}"), format!("{}", &(&pf * &pf) / &c));
                }
            }
            report.trials += trials;
            let ratio = tracker.ratio.clone();
            if let Some(k) = &ratio {
                if k.abs() != Rational::one() {
                    report.fail(label.to_string(), "pf^2 = ±c^V", format!("pf^2 / c^V = {k}"));
                }
            }
            report.notes.push(format!(
                "{label}: skew on {trials} samples, pf^2/c^V = {}, {zeros} zero samples",
                ratio.map(|k| k.to_string()).unwrap_or_else(|| "n/a".into())
            ));
        } else {
            if PfaffianSetup::new(&v, q, kind, beta).is_ok() {
                report.fail(label.to_string(), "parity precondition rejected", "accepted");
            }
            let detected = match PfaffianSetup::new_unchecked(&v, q, kind, beta) {
                Err(e) => {
                    report.notes.push(format!("{label}: block signs inconsistent ({e})"));
                    true
                }
                Ok(setup) => {
                    let mut found = false;
                    for t in 0..trials {
                        let mut rng = trial_rng(seed, t as u64);
                        let w = random_symmetric_rep(q, kind, beta, &mut rng)?;
                        if let Some((r, c)) = setup.matrix(&w)?.skew_violation() {
                            report.notes.push(format!("{label}: skewness fails at ({r},{c}) on sample {t}"));
                            found = true;
                            break;
                        }
                    }
                    found
                }
            };
            report.trials += trials;
            if !detected {
                report.fail(label.to_string(), "non-skew matrix detected", "matrix skew on every sample");
            }
        }
    }
    if tested == 0 {
        report.notes.push("no selfdual interval with vanishing Euler form".into());
    }
    Ok(report)
}

//! Generator descriptors for semi-invariant rings of equioriented symmetric
//! quivers, the dominated-vertex reduction, and transport of generators along
//! admissible reflections.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functors::reflect_pair_plus;
use crate::matrix::det_expand;
use crate::poly::Polynomial;
use crate::quiver::{ArrowClass, Dir, SymmetricQuiver};
use crate::rational::Rational;
use crate::rep::{check_symmetric_dim, Kind, Representation, SymmetricRepresentation};
use crate::semiinv::{
    hom_matrix, hom_matrix_rep, minimal_resolution, symmetrize_weight, weight_of, CoordinateSpace, PfaffianSetup,
    ProjResolution, WeightMode,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemiKind {
    Det,
    Pf,
}

/// `c^{V_{j,i}}` or `pf^{V_{j,i}}` with its character and polynomial degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiInvariantDescriptor {
    pub kind: SemiKind,
    pub interval: (usize, usize),
    pub weight: Vec<Rational>,
    pub degree: usize,
}

impl SemiInvariantDescriptor {
    /// Computes weight and degree of `kind` on `V_{j,i}` at dimension `beta`.
    pub fn new(q: &SymmetricQuiver, kind: SemiKind, interval: (usize, usize), beta: &[usize]) -> Result<Self> {
        let v = Representation::indecomposable(q.quiver(), interval.0, interval.1)?;
        let euler = q.euler_form(v.dim(), beta)?;
        if euler != 0 {
            return Err(Error::EulerNonzero {
                alpha: v.dim().to_vec(),
                beta: beta.to_vec(),
                value: euler,
            });
        }
        let weight = descriptor_weight(&v, kind);
        let degree = degree_from_weight(q, beta, &weight)?;
        Ok(SemiInvariantDescriptor {
            kind,
            interval,
            weight,
            degree,
        })
    }

    /// `cV:j,i` or `pf:j,i`.
    pub fn code(&self) -> String {
        let (j, i) = self.interval;
        match self.kind {
            SemiKind::Det => format!("cV:{j},{i}"),
            SemiKind::Pf => format!("pf:{j},{i}"),
        }
    }

    pub fn key(&self) -> (SemiKind, (usize, usize)) {
        (self.kind, self.interval)
    }
}

pub fn format_weight(w: &[Rational]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for SemiInvariantDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (j, i) = self.interval;
        let name = match self.kind {
            SemiKind::Det => "det",
            SemiKind::Pf => "pf",
        };
        write!(
            f,
            "{:<10} {name:<3} V[{j},{i}]  weight {}  degree {}",
            self.code(),
            format_weight(&self.weight),
            self.degree
        )
    }
}

/// Parses `cV:j,i`, `det:j,i`, `pf:j,i`, or `pf:i` (for `V_{i, sigma(i+1)}`).
pub fn parse_code(q: &SymmetricQuiver, s: &str) -> Result<(SemiKind, (usize, usize))> {
    let (head, rest) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("descriptor {s:?} should look like cV:j,i or pf:i")))?;
    let kind = match head.to_ascii_lowercase().as_str() {
        "cv" | "c" | "det" => SemiKind::Det,
        "pf" => SemiKind::Pf,
        other => return Err(Error::Parse(format!("unknown semi-invariant kind {other:?}"))),
    };
    let nums = rest
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad index {t:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let interval = match (kind, nums.as_slice()) {
        (_, [j, i]) => (*j, *i),
        (SemiKind::Pf, [i]) => {
            if *i == 0 || *i >= q.m() {
                return Err(Error::Parse(format!("pf:{i} is out of range on {q}")));
            }
            (*i, q.sigma(i + 1))
        }
        _ => return Err(Error::Parse(format!("descriptor {s:?} needs two indices"))),
    };
    if interval.0 == 0 || interval.0 > interval.1 || interval.1 > q.m() {
        return Err(Error::Parse(format!("interval {interval:?} is not within 1..={}", q.m())));
    }
    Ok((kind, interval))
}

/// `(chi - chi∘sigma)/2` for `chi = <dim V, ->`, halved again for `pf`.
pub fn descriptor_weight(v: &Representation, kind: SemiKind) -> Vec<Rational> {
    let mut chi = weight_of(v, WeightMode::Plain);
    if kind == SemiKind::Pf {
        let half = Rational::frac(1, 2);
        chi.iter_mut().for_each(|x| *x = &*x * &half);
    }
    symmetrize_weight(&chi)
}

/// Polynomial degree of a semi-invariant of weight `chi`, solving the torus
/// grading along the chain of data arrows.
pub fn degree_from_weight(q: &SymmetricQuiver, beta: &[usize], chi: &[Rational]) -> Result<usize> {
    let delta = crate::schur::weight_grading(q, beta, chi)
        .ok_or_else(|| Error::Precondition(format!("weight {} is not a symmetric integral character", format_weight(chi))))?;
    let quiver = q.quiver();
    let mut total = 0i64;
    // p of the arrow a_{x-1} as seen at vertex x
    let mut prev = 0i64;
    for (idx, x) in q.plus_vertices().into_iter().enumerate() {
        // delta_x = (in-degree contribution of a_{x-1}) + (contribution of a_x)
        let mut rest = delta[idx];
        if x > 1 {
            let a = x - 1;
            rest -= if quiver.head(a) == x { prev } else { -prev };
        }
        let a = x;
        let coeff = match (q.arrow_class(a), quiver.dir(a)) {
            (ArrowClass::Fixed, Dir::Right) => -2,
            (ArrowClass::Fixed, Dir::Left) => 2,
            (_, Dir::Right) => -1,
            (_, Dir::Left) => 1,
        };
        if rest % coeff != 0 || rest / coeff < 0 {
            return Err(Error::Precondition(format!(
                "weight {} has no polynomial semi-invariants at {beta:?}",
                format_weight(chi)
            )));
        }
        prev = rest / coeff;
        total += prev;
    }
    Ok(total as usize)
}

fn min_above(beta: &[usize], from: usize, to: usize) -> usize {
    (from..=to).map(|x| beta[x - 1]).min().unwrap_or(usize::MAX)
}

/// Generators of the semi-invariant ring of an equioriented symmetric quiver,
/// ordered by kind and interval. Constant descriptors are omitted.
pub fn enumerate_generators(q: &SymmetricQuiver, beta: &[usize], kind: Kind) -> Result<Vec<SemiInvariantDescriptor>> {
    check_symmetric_dim(q, kind, beta)?;
    let m = q.m();
    if !q.quiver().is_equioriented() {
        return Err(Error::Quiver(format!(
            "{q} is not equioriented; reduce it with orientation_path and transport_generator"
        )));
    }
    if m < 2 {
        return Ok(Vec::new());
    }
    if q.quiver().dir(1) == Dir::Left {
        // mirror through sigma: V_{j,i} on the left chain is V_{sigma i, sigma j} on the right one
        let right = SymmetricQuiver::equioriented(m);
        let mut out = Vec::new();
        for d in enumerate_generators(&right, beta, kind)? {
            let (j, i) = d.interval;
            out.push(SemiInvariantDescriptor::new(q, d.kind, (q.sigma(i), q.sigma(j)), beta)?);
        }
        out.sort_by_key(|a| a.key());
        return Ok(out);
    }
    let n = m / 2;
    let b = |x: usize| beta[x - 1];
    let mut keys: BTreeSet<(SemiKind, (usize, usize))> = BTreeSet::new();
    let top_i = if m.is_multiple_of(2) { n - 1 } else { n };
    for i in 1..=top_i {
        for j in 1..=i {
            if min_above(beta, j + 1, i) > b(j) && b(j) == b(i + 1) {
                keys.insert((SemiKind::Det, (j, i)));
            }
        }
    }
    let last = if m.is_multiple_of(2) { n } else { n + 1 };
    for i in 1..=n {
        if min_above(beta, i + 1, last) <= b(i) {
            continue;
        }
        let interval = (i, q.sigma(i + 1));
        let long = match (m.is_multiple_of(2), kind) {
            (true, Kind::Symplectic) | (false, Kind::Orthogonal) => Some(SemiKind::Det),
            _ if b(i) % 2 == 0 => Some(SemiKind::Pf),
            _ => None,
        };
        if let Some(k) = long {
            keys.insert((k, interval));
        }
    }
    let mut out = Vec::new();
    for (k, interval) in keys {
        let d = SemiInvariantDescriptor::new(q, k, interval, beta)?;
        if d.degree > 0 {
            out.push(d);
        }
    }
    Ok(out)
}

/// Result of stripping dominated vertices.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub quiver: SymmetricQuiver,
    pub beta: Vec<usize>,
    /// `vertex_map[x' - 1]` is the original vertex behind `x'`.
    pub vertex_map: Vec<usize>,
    /// Factors split off, as descriptors on the original quiver.
    pub extracted: Vec<SemiInvariantDescriptor>,
}

impl Reduction {
    /// Interval on the original quiver whose `c` restricts to the composite
    /// path semi-invariant of `(j', i')` on the reduced quiver. Only valid for
    /// right-oriented chains.
    pub fn pull_back(&self, interval: (usize, usize)) -> (usize, usize) {
        let (j, i) = interval;
        let start = self.vertex_map[j - 1];
        if i == self.vertex_map.len() {
            (start, *self.vertex_map.last().expect("nonempty"))
        } else {
            (start, self.vertex_map[i] - 1)
        }
    }
}

/// Strips `x in Q_0^+` lying on a path `y -> x -> z` of `Q_1^+` arrows with
/// `beta_x >= max(beta_y, beta_z)`, extracting `det V(a)` / `det V(b)` when
/// `beta_x` equals `beta_y` / `beta_z`.
pub fn reduce_dominated(q: &SymmetricQuiver, beta: &[usize], kind: Kind) -> Result<Reduction> {
    check_symmetric_dim(q, kind, beta)?;
    let mut cur_q = q.clone();
    let mut cur_beta = beta.to_vec();
    let mut map: Vec<usize> = (1..=q.m()).collect();
    let mut extracted = Vec::new();
    loop {
        let quiver = cur_q.quiver().clone();
        let mut found = None;
        for x in cur_q.plus_vertices() {
            if x == 1 {
                continue;
            }
            let (a, b) = (x - 1, x);
            if cur_q.arrow_class(a) != ArrowClass::Plus || cur_q.arrow_class(b) != ArrowClass::Plus {
                continue;
            }
            if quiver.dir(a) != quiver.dir(b) {
                continue;
            }
            let (a, b) = if quiver.head(a) == x { (a, b) } else { (b, a) };
            let (y, z) = (quiver.tail(a), quiver.head(b));
            let (bx, by, bz) = (cur_beta[x - 1], cur_beta[y - 1], cur_beta[z - 1]);
            if bx >= by.max(bz) {
                found = Some((x, a, b, bx == by, bx == bz));
                break;
            }
        }
        let Some((x, a, b, take_a, take_b)) = found else {
            break;
        };
        for (take, arrow) in [(take_a, a), (take_b, b)] {
            if take {
                let interval = quotient_interval(&quiver, arrow);
                let orig = (map[interval.0 - 1], orig_end(&map, interval.1, q.m()));
                let d = SemiInvariantDescriptor::new(q, SemiKind::Det, orig, beta)?;
                if d.degree > 0 {
                    extracted.push(d);
                }
            }
        }
        let sx = cur_q.sigma(x);
        let keep: Vec<usize> = (1..=cur_q.m()).filter(|&v| v != x && v != sx).collect();
        // arrows a_{x-1}, a_x merge into one arrow with the same direction
        let mut dirs = Vec::new();
        for k in quiver.arrows() {
            if k == x || k == cur_q.sigma_arrow(x) {
                continue;
            }
            dirs.push(quiver.dir(k));
        }
        cur_q = SymmetricQuiver::new(crate::quiver::Quiver::new(dirs))?;
        cur_beta = keep.iter().map(|&v| cur_beta[v - 1]).collect();
        map = keep.iter().map(|&v| map[v - 1]).collect();
    }
    extracted.sort_by_key(|a| a.key());
    extracted.dedup_by(|a, b| a.key() == b.key());
    Ok(Reduction {
        quiver: cur_q,
        beta: cur_beta,
        vertex_map: map,
        extracted,
    })
}

fn orig_end(map: &[usize], e: usize, m: usize) -> usize {
    if e == map.len() {
        m
    } else {
        map[e] - 1
    }
}

/// The interval `V` with `c^V = det V(a)`: the vertices reachable from `ta`
/// but not from `ha`.
fn quotient_interval(q: &crate::quiver::Quiver, a: usize) -> (usize, usize) {
    let (t, h) = (q.tail(a), q.head(a));
    let reach: Vec<usize> = (1..=q.m())
        .filter(|&v| q.path(t, v).is_some() && q.path(h, v).is_none())
        .collect();
    (reach[0], *reach.last().expect("tail reaches itself"))
}

/// Outcome of transporting a generator along reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transported {
    Present {
        quiver: SymmetricQuiver,
        beta: Vec<usize>,
        descriptor: SemiInvariantDescriptor,
    },
    /// The reflection functor kills `V`; the generator has no counterpart.
    Absent { step: usize },
}

/// Applies `C^+_{(x, sigma x)}` for each sink `x` in `steps` to the interval
/// of `descr`, re-indexing it on the reflected quiver.
pub fn transport_generator(
    q: &SymmetricQuiver,
    beta: &[usize],
    descr: &SemiInvariantDescriptor,
    steps: &[usize],
) -> Result<Transported> {
    let mut cur_q = q.clone();
    let mut cur_beta = beta.to_vec();
    let mut cur = descr.clone();
    for (n, &x) in steps.iter().enumerate() {
        if !cur_q.is_admissible(x) || !cur_q.quiver().is_sink(x) {
            return Err(Error::Quiver(format!("{x} is not an admissible sink of {cur_q}")));
        }
        let v = Representation::indecomposable(cur_q.quiver(), cur.interval.0, cur.interval.1)?;
        let r = reflect_pair_plus(&cur_q, &v, x)?;
        let next_q = SymmetricQuiver::new(r.quiver.clone())?;
        let next_beta = cur_q.reflect_pair_dim(x, &cur_beta)?;
        if r.representation.is_zero() {
            return Ok(Transported::Absent { step: n });
        }
        let fp = r.representation.fingerprint()?;
        let interval = match fp.iter().collect::<Vec<_>>().as_slice() {
            [(&iv, &1)] => iv,
            _ => return Err(Error::Internal(format!("reflection of an interval decomposed as {fp:?}"))),
        };
        cur = SemiInvariantDescriptor::new(&next_q, cur.kind, interval, &next_beta)?;
        cur_q = next_q;
        cur_beta = next_beta;
    }
    Ok(Transported::Present {
        quiver: cur_q,
        beta: cur_beta,
        descriptor: cur,
    })
}

enum Inner {
    Det(ProjResolution),
    Pf(PfaffianSetup),
}

/// Evaluates a descriptor on orthogonal/symplectic representations of a fixed
/// quiver and dimension vector.
pub struct Evaluator {
    pub descriptor: SemiInvariantDescriptor,
    quiver: SymmetricQuiver,
    kind: Kind,
    beta: Vec<usize>,
    inner: Inner,
}

impl Evaluator {
    pub fn new(descriptor: &SemiInvariantDescriptor, q: &SymmetricQuiver, kind: Kind, beta: &[usize]) -> Result<Self> {
        check_symmetric_dim(q, kind, beta)?;
        let (j, i) = descriptor.interval;
        let v = Representation::indecomposable(q.quiver(), j, i)?;
        let inner = match descriptor.kind {
            SemiKind::Det => {
                let value = q.euler_form(v.dim(), beta)?;
                if value != 0 {
                    return Err(Error::EulerNonzero {
                        alpha: v.dim().to_vec(),
                        beta: beta.to_vec(),
                        value,
                    });
                }
                Inner::Det(minimal_resolution(&v)?)
            }
            SemiKind::Pf => Inner::Pf(PfaffianSetup::new(&v, q, kind, beta)?),
        };
        Ok(Evaluator {
            descriptor: descriptor.clone(),
            quiver: q.clone(),
            kind,
            beta: beta.to_vec(),
            inner,
        })
    }

    /// Builds the descriptor for `code` (see [`parse_code`]) and its evaluator.
    pub fn from_code(code: &str, q: &SymmetricQuiver, kind: Kind, beta: &[usize]) -> Result<Self> {
        let (k, interval) = parse_code(q, code)?;
        let d = SemiInvariantDescriptor::new(q, k, interval, beta)?;
        Self::new(&d, q, kind, beta)
    }

    pub fn eval(&self, sw: &SymmetricRepresentation) -> Result<Rational> {
        if sw.quiver() != &self.quiver || sw.kind() != self.kind || sw.dim() != self.beta.as_slice() {
            return Err(Error::Representation(format!(
                "expected a {} representation of {} with dimension {:?}",
                self.kind, self.quiver, self.beta
            )));
        }
        match &self.inner {
            Inner::Det(res) => hom_matrix_rep(res, &sw.unfold())?.det(),
            Inner::Pf(setup) => setup.eval(sw),
        }
    }

    /// Expansion in the coordinates of [`CoordinateSpace`].
    pub fn symbolic(&self) -> Result<Polynomial> {
        match &self.inner {
            Inner::Det(res) => {
                let space = CoordinateSpace::new(&self.quiver, self.kind, &self.beta)?;
                det_expand(&hom_matrix(res, &space.symbolic_maps()?, &self.beta)?)
            }
            Inner::Pf(setup) => setup.symbolic(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(q: &str, beta: &[usize], kind: Kind) -> Vec<String> {
        let q: SymmetricQuiver = q.parse().unwrap();
        enumerate_generators(&q, beta, kind).unwrap().iter().map(|d| d.code()).collect()
    }

    #[test]
    fn enumerations() {
        assert_eq!(codes("A4:>>>", &[1, 2, 2, 1], Kind::Symplectic), ["cV:1,3", "cV:2,2"]);
        assert_eq!(codes("A4:>>>", &[1, 2, 2, 1], Kind::Orthogonal), ["pf:2,2"]);
        assert_eq!(codes("A5:>>>>", &[1, 2, 2, 2, 1], Kind::Symplectic), ["cV:2,2"]);
        assert_eq!(codes("A5:>>>>", &[1, 1, 2, 1, 1], Kind::Orthogonal), ["cV:1,1", "cV:2,3"]);
        assert_eq!(codes("A2:>", &[1, 1], Kind::Symplectic), ["cV:1,1"]);
        assert_eq!(codes("A2:>", &[2, 2], Kind::Orthogonal), ["pf:1,1"]);
        assert_eq!(codes("A4:<<<", &[1, 2, 2, 1], Kind::Symplectic), ["cV:2,4", "cV:3,3"]);
    }

    #[test]
    fn weights_and_degrees() {
        let q = SymmetricQuiver::equioriented(4);
        let d = SemiInvariantDescriptor::new(&q, SemiKind::Det, (1, 3), &[1, 2, 2, 1]).unwrap();
        assert_eq!(format_weight(&d.weight), "(1,0,0,-1)");
        assert_eq!(d.degree, 3);
        let p = SemiInvariantDescriptor::new(&q, SemiKind::Pf, (2, 2), &[1, 2, 2, 1]).unwrap();
        assert_eq!(format_weight(&p.weight), "(0,1/2,-1/2,0)");
        assert_eq!(p.degree, 1);
    }

    #[test]
    fn codes_parse() {
        let q = SymmetricQuiver::equioriented(4);
        assert_eq!(parse_code(&q, "cV:1,3").unwrap(), (SemiKind::Det, (1, 3)));
        assert_eq!(parse_code(&q, "pf:2").unwrap(), (SemiKind::Pf, (2, 2)));
        assert_eq!(parse_code(&q, "pf:1").unwrap(), (SemiKind::Pf, (1, 3)));
        assert!(parse_code(&q, "xx:1,2").is_err());
        assert!(parse_code(&q, "cV:3,1").is_err());
    }

    #[test]
    fn symbolic_generators() {
        let q = SymmetricQuiver::equioriented(2);
        let e = Evaluator::from_code("pf:1", &q, Kind::Orthogonal, &[2, 2]).unwrap();
        let p = e.symbolic().unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.degree(), Some(1));
    }
}

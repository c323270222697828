//! Rational points of `SL`, `SO` and `Sp`, elements of `SO(Q, beta)` /
//! `SSp(Q, beta)`, their action on representations, and characters.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::quiver::{SymmetricQuiver, VertexClass};
use crate::rational::Rational;
use crate::rep::{check_symmetric_dim, fixed_gram, symplectic_j, Kind, Representation, SymmetricRepresentation};

const BOUND: i64 = 9;

/// RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `p/q` with `|p| <= 9`, `1 <= q <= 9`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::frac(rng.random_range(-BOUND..=BOUND), rng.random_range(1..=BOUND))
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> RatMatrix {
    RatMatrix::from_fn(rows, cols, |_, _| random_rational(rng))
}

pub fn random_skew<R: Rng>(n: usize, rng: &mut R) -> RatMatrix {
    let mut s = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let r = random_rational(rng);
            s.set(j, i, -&r);
            s.set(i, j, r);
        }
    }
    s
}

pub fn random_symmetric<R: Rng>(n: usize, rng: &mut R) -> RatMatrix {
    let mut s = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let r = random_rational(rng);
            s.set(j, i, r.clone());
            s.set(i, j, r);
        }
    }
    s
}

/// Product of `2n` random shears `I + r E_ij`.
pub fn sample_sl<R: Rng>(n: usize, rng: &mut R) -> RatMatrix {
    let mut g = RatMatrix::identity(n);
    if n < 2 {
        return g;
    }
    for _ in 0..2 * n {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let r = random_rational(rng);
        // left multiplication by I + r E_ij adds r * row j to row i
        g.add_row_multiple(i, j, &r);
    }
    g
}

/// `SL` element times `diag(r, 1, ..., 1)` with random nonzero `r`.
pub fn sample_gl<R: Rng>(n: usize, rng: &mut R) -> RatMatrix {
    let mut g = sample_sl(n, rng);
    if n > 0 {
        let r = random_nonzero_rational(rng);
        for i in 0..n {
            let v = g.get(i, 0) * &r;
            g.set(i, 0, v);
        }
    }
    g
}

fn cayley(h: &RatMatrix) -> Option<RatMatrix> {
    let n = h.rows();
    let id = RatMatrix::identity(n);
    let inv = id.add(h).expect("square").inverse().ok()?;
    Some(id.sub(h).expect("square").mul(&inv).expect("square"))
}

/// Cayley transform of a random skew matrix.
pub fn sample_so<R: Rng>(n: usize, rng: &mut R) -> RatMatrix {
    for _ in 0..100 {
        if let Some(g) = cayley(&random_skew(n, rng)) {
            debug_assert!(g.transpose().mul(&g).expect("square") == RatMatrix::identity(n));
            return g;
        }
    }
    panic!("Cayley transform singular 100 times in a row");
}

/// Cayley transform of `J S` with `S` random symmetric; `size` must be even.
pub fn sample_sp<R: Rng>(size: usize, rng: &mut R) -> RatMatrix {
    assert!(size.is_multiple_of(2), "symplectic size must be even");
    let j = symplectic_j(size);
    for _ in 0..100 {
        let h = j.mul(&random_symmetric(size, rng)).expect("square");
        if let Some(g) = cayley(&h) {
            debug_assert!(g.transpose().mul(&j).unwrap().mul(&g).unwrap() == j);
            return g;
        }
    }
    panic!("Cayley transform singular 100 times in a row");
}

/// `g_x` for `x in Q_0^+` and the fixed vertex; `g_{sigma x} = (g_x^{-1})^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub quiver: SymmetricQuiver,
    pub kind: Kind,
    pub components: BTreeMap<usize, RatMatrix>,
}

impl GroupElement {
    pub fn new(quiver: SymmetricQuiver, kind: Kind, components: BTreeMap<usize, RatMatrix>) -> Result<Self> {
        let mut want: Vec<usize> = quiver.plus_vertices();
        want.extend(quiver.fixed_vertex());
        if components.keys().copied().collect::<Vec<_>>() != want {
            return Err(Error::Representation(format!(
                "group element needs components at vertices {want:?}"
            )));
        }
        for (&x, g) in &components {
            if !g.is_square() || g.det()?.is_zero() {
                return Err(Error::Representation(format!("g_{x} is not invertible")));
            }
            if quiver.vertex_class(x) == VertexClass::Fixed {
                let gram = fixed_gram(kind, g.rows());
                if g.transpose().mul(&gram)?.mul(g)? != gram || !g.det()?.is_one() {
                    return Err(Error::Representation(format!("g_{x} does not preserve the {kind} form")));
                }
            }
        }
        Ok(GroupElement {
            quiver,
            kind,
            components,
        })
    }

    pub fn identity(quiver: &SymmetricQuiver, kind: Kind, dim: &[usize]) -> Self {
        let mut components = BTreeMap::new();
        for x in quiver.plus_vertices().into_iter().chain(quiver.fixed_vertex()) {
            components.insert(x, RatMatrix::identity(dim[x - 1]));
        }
        GroupElement {
            quiver: quiver.clone(),
            kind,
            components,
        }
    }

    /// Random element: `GL` (or `SL` when `special`) on `Q_0^+`, `SO`/`Sp`
    /// at the fixed vertex.
    pub fn sample<R: Rng>(quiver: &SymmetricQuiver, kind: Kind, dim: &[usize], special: bool, rng: &mut R) -> Self {
        let mut components = BTreeMap::new();
        for x in quiver.plus_vertices() {
            let n = dim[x - 1];
            let g = if special { sample_sl(n, rng) } else { sample_gl(n, rng) };
            components.insert(x, g);
        }
        if let Some(f) = quiver.fixed_vertex() {
            let n = dim[f - 1];
            let g = match kind {
                Kind::Orthogonal => sample_so(n, rng),
                Kind::Symplectic => sample_sp(n, rng),
            };
            components.insert(f, g);
        }
        GroupElement {
            quiver: quiver.clone(),
            kind,
            components,
        }
    }

    /// `g_x` at any vertex.
    pub fn at(&self, x: usize) -> RatMatrix {
        match self.quiver.vertex_class(x) {
            VertexClass::Minus => self.components[&self.quiver.sigma(x)]
                .inverse()
                .expect("invertible")
                .transpose(),
            _ => self.components[&x].clone(),
        }
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        let mut components = BTreeMap::new();
        for (x, g) in &self.components {
            let h = other
                .components
                .get(x)
                .ok_or_else(|| Error::Representation("group elements on different quivers".into()))?;
            components.insert(*x, g.mul(h)?);
        }
        Ok(GroupElement {
            quiver: self.quiver.clone(),
            kind: self.kind,
            components,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            quiver: self.quiver.clone(),
            kind: self.kind,
            components: self
                .components
                .iter()
                .map(|(&x, g)| (x, g.inverse().expect("invertible")))
                .collect(),
        }
    }

    /// `g_{ha} V(a) g_{ta}^{-1}` on every arrow of the unfolded representation.
    pub fn act_unfolded(&self, v: &Representation) -> Result<Representation> {
        let q = v.quiver();
        let maps = q
            .arrows()
            .map(|k| {
                let gt_inv = self.at(q.tail(k)).inverse()?;
                self.at(q.head(k)).mul(v.map(k))?.mul(&gt_inv)
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(q.clone(), v.dim().to_vec(), maps)
    }
}

/// `g · SW` on the independent data; the fixed arrow transforms by a
/// congruence and keeps its symmetry.
pub fn act(g: &GroupElement, sw: &SymmetricRepresentation) -> Result<SymmetricRepresentation> {
    if g.quiver != *sw.quiver() {
        return Err(Error::Representation("group element and representation on different quivers".into()));
    }
    let q = sw.quiver().quiver();
    let mut maps = BTreeMap::new();
    for (&k, m) in sw.maps() {
        let (t, h) = (q.tail(k), q.head(k));
        let (gt, gh) = (g.at(t), g.at(h));
        if gt.rows() != m.cols() || gh.rows() != m.rows() {
            return Err(Error::Dimension(format!("group element does not match the shape of a{k}")));
        }
        maps.insert(k, gh.mul(m)?.mul(&gt.inverse()?)?);
    }
    SymmetricRepresentation::new(sw.quiver().clone(), sw.kind(), sw.dim().to_vec(), maps)
}

/// `tau(g) = prod_x det(g_x)^{chi(x)}` over all vertices. For `x in Q_0^+`
/// the exponent of `det g_x` is `chi(x) - chi(sigma x)`, which must be an
/// integer.
pub fn character_value(g: &GroupElement, chi: &[Rational]) -> Result<Rational> {
    let q = &g.quiver;
    if chi.len() != q.m() {
        return Err(Error::Dimension(format!("weight of length {} on A{}", chi.len(), q.m())));
    }
    let mut acc = Rational::one();
    for x in q.plus_vertices() {
        let e = &chi[x - 1] - &chi[q.sigma(x) - 1];
        let e = e
            .to_i64()
            .ok_or_else(|| Error::Precondition(format!("non-integral character exponent {e} at vertex {x}")))?;
        acc = &acc * &g.components[&x].det()?.pow(e)?;
    }
    Ok(acc)
}

/// Random orthogonal/symplectic representation with entries as in
/// [`random_rational`].
pub fn random_symmetric_rep<R: Rng>(
    quiver: &SymmetricQuiver,
    kind: Kind,
    dim: &[usize],
    rng: &mut R,
) -> Result<SymmetricRepresentation> {
    check_symmetric_dim(quiver, kind, dim)?;
    let q = quiver.quiver();
    let mut maps = BTreeMap::new();
    for k in quiver.data_arrows() {
        let (r, c) = (dim[q.head(k) - 1], dim[q.tail(k) - 1]);
        let m = if Some(k) == quiver.fixed_arrow() {
            match kind {
                Kind::Symplectic => random_symmetric(r, rng),
                Kind::Orthogonal => random_skew(r, rng),
            }
        } else {
            random_matrix(r, c, rng)
        };
        maps.insert(k, m);
    }
    SymmetricRepresentation::new(quiver.clone(), kind, dim.to_vec(), maps)
}

/// Random representation of a plain quiver.
pub fn random_rep<R: Rng>(quiver: &crate::quiver::Quiver, dim: &[usize], rng: &mut R) -> Result<Representation> {
    quiver.check_dim(dim)?;
    let maps = quiver
        .arrows()
        .map(|k| random_matrix(dim[quiver.head(k) - 1], dim[quiver.tail(k) - 1], rng))
        .collect();
    Representation::new(quiver.clone(), dim.to_vec(), maps)
}

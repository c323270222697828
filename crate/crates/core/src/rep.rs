//! Representations of type-A quivers and orthogonal/symplectic representations
//! of symmetric quivers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RatMatrix};
use crate::quiver::{ArrowClass, Dir, Quiver, SymmetricQuiver, VertexClass};
use crate::rational::Rational;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Orthogonal,
    Symplectic,
}

impl Kind {
    /// `+1` for symmetric forms, `-1` for skew forms.
    pub fn epsilon(self) -> i64 {
        match self {
            Kind::Orthogonal => 1,
            Kind::Symplectic => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Orthogonal => "orthogonal",
            Kind::Symplectic => "symplectic",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "orthogonal" | "o" | "orth" => Ok(Kind::Orthogonal),
            "symplectic" | "sp" | "symp" => Ok(Kind::Symplectic),
            _ => Err(Error::Parse(format!("unknown kind {s:?}"))),
        }
    }
}

/// `J = [[0, I], [-I, 0]]` of size `2h`.
pub fn symplectic_j(size: usize) -> RatMatrix {
    let h = size / 2;
    RatMatrix::from_fn(size, size, |i, j| {
        if j == i + h && i < h {
            Rational::one()
        } else if i == j + h && j < h {
            -Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Gram matrix of the form on the fixed vertex.
pub fn fixed_gram(kind: Kind, size: usize) -> RatMatrix {
    match kind {
        Kind::Orthogonal => RatMatrix::identity(size),
        Kind::Symplectic => symplectic_j(size),
    }
}

/// Matrix `P_x` with `<v, w> = v^T P_x w` for `v in V(x)`, `w in V(sigma x)`.
pub fn pairing_matrix(q: &SymmetricQuiver, kind: Kind, x: usize, size: usize) -> RatMatrix {
    match q.vertex_class(x) {
        VertexClass::Plus => RatMatrix::identity(size),
        VertexClass::Minus => RatMatrix::identity(size).scale(&Rational::from(kind.epsilon())),
        VertexClass::Fixed => fixed_gram(kind, size),
    }
}

/// Composite `W(a_r) ... W(a_1)` along the path `from -> to`; identity for the
/// empty path, `None` if no path exists.
pub fn compose_path<T: Ring>(
    q: &Quiver,
    maps: &[Matrix<T>],
    dim: &[usize],
    from: usize,
    to: usize,
) -> Option<Matrix<T>> {
    let arrows = q.path(from, to)?;
    let mut acc = Matrix::identity(dim[from - 1]);
    for k in arrows {
        acc = maps[k - 1].mul(&acc).expect("path maps compose");
    }
    Some(acc)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    dim: Vec<usize>,
    maps: Vec<RatMatrix>,
}

impl Representation {
    pub fn new(quiver: Quiver, dim: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        quiver.check_dim(&dim)?;
        if maps.len() != quiver.num_arrows() {
            return Err(Error::Representation(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.num_arrows()
            )));
        }
        for k in quiver.arrows() {
            let want = (dim[quiver.head(k) - 1], dim[quiver.tail(k) - 1]);
            if maps[k - 1].shape() != want {
                return Err(Error::Representation(format!(
                    "map on a{k} has shape {:?}, expected {want:?}",
                    maps[k - 1].shape()
                )));
            }
        }
        Ok(Representation { quiver, dim, maps })
    }

    pub fn zero(quiver: &Quiver) -> Self {
        Self::with_zero_maps(quiver, vec![0; quiver.m()])
    }

    pub fn with_zero_maps(quiver: &Quiver, dim: Vec<usize>) -> Self {
        let maps = quiver
            .arrows()
            .map(|k| RatMatrix::zeros(dim[quiver.head(k) - 1], dim[quiver.tail(k) - 1]))
            .collect();
        Representation {
            quiver: quiver.clone(),
            dim,
            maps,
        }
    }

    /// Interval module `V_{i,j}`: one-dimensional on `i..=j`, identity maps inside.
    pub fn indecomposable(quiver: &Quiver, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i > j || j > quiver.m() {
            return Err(Error::Precondition(format!(
                "interval ({i},{j}) is not within 1..={}",
                quiver.m()
            )));
        }
        let dim: Vec<usize> = (1..=quiver.m()).map(|x| usize::from(i <= x && x <= j)).collect();
        let mut r = Self::with_zero_maps(quiver, dim);
        for k in i..j {
            r.maps[k - 1] = RatMatrix::identity(1);
        }
        Ok(r)
    }

    pub fn simple(quiver: &Quiver, x: usize) -> Result<Self> {
        Self::indecomposable(quiver, x, x)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> &[usize] {
        &self.dim
    }

    pub fn map(&self, k: usize) -> &RatMatrix {
        &self.maps[k - 1]
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dim.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn path_map(&self, from: usize, to: usize) -> Option<RatMatrix> {
        compose_path(&self.quiver, &self.maps, &self.dim, from, to)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.quiver != other.quiver {
            return Err(Error::Quiver(format!(
                "direct sum over different quivers {} and {}",
                self.quiver, other.quiver
            )));
        }
        Ok(Representation {
            quiver: self.quiver.clone(),
            dim: self.dim.iter().zip(&other.dim).map(|(a, b)| a + b).collect(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect(),
        })
    }

    /// `nabla V`: spaces `V(sigma x)^*`, maps `-V(sigma a)^T`, on the quiver
    /// with reversed arrow string.
    pub fn dualize(&self) -> Representation {
        let m = self.quiver.m();
        let quiver = self.quiver.sigma_image();
        let dim = (1..=m).map(|x| self.dim[m - x]).collect();
        let maps = (1..m).map(|k| self.maps[m - k - 1].transpose().neg()).collect();
        Representation { quiver, dim, maps }
    }

    pub fn hom_dim(&self, w: &Representation) -> Result<usize> {
        Ok(self.hom_system(w)?.0.kernel_basis().cols())
    }

    pub fn hom_basis(&self, w: &Representation) -> Result<HomSpace> {
        let (sys, offsets) = self.hom_system(w)?;
        let kernel = sys.kernel_basis();
        let basis = (0..kernel.cols())
            .map(|c| {
                (1..=self.quiver.m())
                    .map(|x| {
                        let (r, cc) = (w.dim[x - 1], self.dim[x - 1]);
                        RatMatrix::from_fn(r, cc, |i, j| kernel.get(offsets[x - 1] + i * cc + j, c).clone())
                    })
                    .collect()
            })
            .collect();
        Ok(HomSpace {
            dimension: kernel.cols(),
            basis,
        })
    }

    /// Linear system whose kernel is `Hom(self, w)`; unknowns are the entries
    /// of `f_x` (row-major, vertex by vertex).
    fn hom_system(&self, w: &Representation) -> Result<(RatMatrix, Vec<usize>)> {
        if self.quiver != w.quiver {
            return Err(Error::Quiver(format!(
                "Hom between representations of {} and {}",
                self.quiver, w.quiver
            )));
        }
        let q = &self.quiver;
        let mut offsets = Vec::with_capacity(q.m());
        let mut n = 0;
        for x in 0..q.m() {
            offsets.push(n);
            n += self.dim[x] * w.dim[x];
        }
        let var = |x: usize, i: usize, j: usize| offsets[x - 1] + i * self.dim[x - 1] + j;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for k in q.arrows() {
            let (t, h) = (q.tail(k), q.head(k));
            let (v, wa) = (&self.maps[k - 1], &w.maps[k - 1]);
            for i in 0..w.dim[h - 1] {
                for j in 0..self.dim[t - 1] {
                    let mut row = vec![Rational::zero(); n];
                    for l in 0..self.dim[h - 1] {
                        row[var(h, i, l)] += v.get(l, j);
                    }
                    for l in 0..w.dim[t - 1] {
                        row[var(t, l, j)] -= wa.get(i, l);
                    }
                    rows.push(row);
                }
            }
        }
        Ok((RatMatrix::from_rows(rows, n)?, offsets))
    }

    pub fn ext_dim(&self, w: &Representation) -> Result<usize> {
        let hom = self.hom_dim(w)? as i64;
        let e = hom - self.quiver.euler_form(&self.dim, &w.dim)?;
        usize::try_from(e).map_err(|_| Error::Internal(format!("negative Ext dimension {e}")))
    }

    /// Multiset of interval summands `(i, j)` with multiplicities.
    pub fn fingerprint(&self) -> Result<BTreeMap<(usize, usize), usize>> {
        let (intervals, inv) = interval_hom_inverse(&self.quiver);
        let b: Vec<Rational> = intervals
            .iter()
            .map(|&(i, j)| {
                let iv = Representation::indecomposable(&self.quiver, i, j)?;
                Ok(Rational::from(iv.hom_dim(self)? as i64))
            })
            .collect::<Result<_>>()?;
        let mult = inv.mul(&RatMatrix::column_vector(&b))?;
        let mut out = BTreeMap::new();
        for (k, &iv) in intervals.iter().enumerate() {
            let c = mult.get(k, 0);
            let n = c
                .to_i64()
                .filter(|&n| n >= 0)
                .ok_or_else(|| Error::Internal(format!("interval multiplicity {c} for {iv:?}")))?;
            if n > 0 {
                out.insert(iv, n as usize);
            }
        }
        Ok(out)
    }

    /// Whether `self` and `other` have the same interval decomposition.
    pub fn isomorphic(&self, other: &Representation) -> Result<bool> {
        Ok(self.quiver == other.quiver && self.dim == other.dim && self.fingerprint()? == other.fingerprint()?)
    }
}

/// Intervals of `A_m` and the inverse of their Hom-dimension matrix
/// `H[I][J] = dim Hom(I, J)`, cached per orientation.
fn interval_hom_inverse(q: &Quiver) -> (Vec<(usize, usize)>, RatMatrix) {
    static CACHE: OnceLock<Mutex<HashMap<Quiver, (Vec<(usize, usize)>, RatMatrix)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(q) {
        return hit.clone();
    }
    let m = q.m();
    let intervals: Vec<(usize, usize)> = (1..=m).flat_map(|i| (i..=m).map(move |j| (i, j))).collect();
    let mods: Vec<Representation> = intervals
        .iter()
        .map(|&(i, j)| Representation::indecomposable(q, i, j).expect("valid interval"))
        .collect();
    let n = intervals.len();
    let h = RatMatrix::from_fn(n, n, |a, b| {
        Rational::from(mods[a].hom_dim(&mods[b]).expect("same quiver") as i64)
    });
    let inv = h.inverse().expect("Hom matrix of indecomposables is unitriangular up to order");
    let entry = (intervals, inv);
    cache.lock().expect("cache lock").insert(q.clone(), entry.clone());
    entry
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep({} dim {:?}", self.quiver, self.dim)?;
        for (k, m) in self.maps.iter().enumerate() {
            write!(f, " a{}={}", k + 1, m)?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub dimension: usize,
    /// Each element lists `f_x` for `x = 1..=m`.
    pub basis: Vec<Vec<RatMatrix>>,
}

/// Full arrow maps from the independent data on `Q_1^+` and the fixed arrow.
/// Generic so that symbolic matrices unfold with the same conventions.
pub fn unfold_maps<T: Ring>(
    q: &SymmetricQuiver,
    kind: Kind,
    dim: &[usize],
    data: &BTreeMap<usize, Matrix<T>>,
) -> Result<Vec<Matrix<T>>> {
    let mut out = Vec::with_capacity(q.quiver().num_arrows());
    for k in q.quiver().arrows() {
        let map = match q.arrow_class(k) {
            ArrowClass::Plus | ArrowClass::Fixed => data
                .get(&k)
                .cloned()
                .ok_or_else(|| Error::Representation(format!("missing map on a{k}")))?,
            ArrowClass::Minus => {
                let s = q.sigma_arrow(k);
                let a = data
                    .get(&s)
                    .ok_or_else(|| Error::Representation(format!("missing map on a{s}")))?;
                let at = a.transpose().neg();
                match q.fixed_vertex() {
                    Some(f) if s + 1 == f => {
                        let g = fixed_gram(kind, dim[f - 1]);
                        match q.quiver().dir(s) {
                            Dir::Right => at.mul(&g.map(T::from_rational))?,
                            Dir::Left => g.inverse()?.map(T::from_rational).mul(&at)?,
                        }
                    }
                    _ => at,
                }
            }
        };
        out.push(map);
    }
    Ok(out)
}

/// An orthogonal or symplectic representation, stored by its independent
/// maps on `Q_1^+` and the fixed arrow.
#[derive(Clone, PartialEq, Eq)]
pub struct SymmetricRepresentation {
    quiver: SymmetricQuiver,
    kind: Kind,
    dim: Vec<usize>,
    maps: BTreeMap<usize, RatMatrix>,
}

impl SymmetricRepresentation {
    pub fn new(
        quiver: SymmetricQuiver,
        kind: Kind,
        dim: Vec<usize>,
        maps: BTreeMap<usize, RatMatrix>,
    ) -> Result<Self> {
        check_symmetric_dim(&quiver, kind, &dim)?;
        let q = quiver.quiver();
        let data = quiver.data_arrows();
        for k in maps.keys() {
            if !data.contains(k) {
                return Err(Error::Representation(format!(
                    "a{k} is determined by a{} and must not be given",
                    quiver.sigma_arrow(*k)
                )));
            }
        }
        for &k in &data {
            let m = maps
                .get(&k)
                .ok_or_else(|| Error::Representation(format!("missing map on a{k}")))?;
            let want = (dim[q.head(k) - 1], dim[q.tail(k) - 1]);
            if m.shape() != want {
                return Err(Error::Representation(format!(
                    "map on a{k} has shape {:?}, expected {want:?}",
                    m.shape()
                )));
            }
            if Some(k) == quiver.fixed_arrow() {
                match kind {
                    Kind::Symplectic if !m.is_symmetric() => {
                        return Err(Error::Representation(format!(
                            "symplectic map on the fixed arrow a{k} must be symmetric"
                        )))
                    }
                    Kind::Orthogonal if !m.is_skew() => {
                        return Err(Error::Representation(format!(
                            "orthogonal map on the fixed arrow a{k} must be skew-symmetric"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(SymmetricRepresentation {
            quiver,
            kind,
            dim,
            maps,
        })
    }

    pub fn zero_maps(quiver: SymmetricQuiver, kind: Kind, dim: Vec<usize>) -> Result<Self> {
        let q = quiver.quiver().clone();
        let maps = quiver
            .data_arrows()
            .into_iter()
            .map(|k| (k, RatMatrix::zeros(dim[q.head(k) - 1], dim[q.tail(k) - 1])))
            .collect();
        Self::new(quiver, kind, dim, maps)
    }

    pub fn quiver(&self) -> &SymmetricQuiver {
        &self.quiver
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn dim(&self) -> &[usize] {
        &self.dim
    }

    pub fn maps(&self) -> &BTreeMap<usize, RatMatrix> {
        &self.maps
    }

    pub fn map(&self, k: usize) -> &RatMatrix {
        &self.maps[&k]
    }

    pub fn unfold(&self) -> Representation {
        let maps = unfold_maps(&self.quiver, self.kind, &self.dim, &self.maps).expect("validated at construction");
        Representation::new(self.quiver.quiver().clone(), self.dim.clone(), maps).expect("unfolded shapes match")
    }
}

impl fmt::Debug for SymmetricRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Rep({} dim {:?}", self.kind, self.quiver, self.dim)?;
        for (k, m) in &self.maps {
            write!(f, " a{k}={m}")?;
        }
        write!(f, ")")
    }
}

pub fn check_symmetric_dim(q: &SymmetricQuiver, kind: Kind, dim: &[usize]) -> Result<()> {
    q.check_symmetric_dim(dim)?;
    if let (Kind::Symplectic, Some(f)) = (kind, q.fixed_vertex()) {
        if dim[f - 1] % 2 == 1 {
            return Err(Error::Dimension(format!(
                "symplectic dimension at the fixed vertex {f} must be even, got {}",
                dim[f - 1]
            )));
        }
    }
    Ok(())
}

/// Whether `phi_x = P_x^T` is an isomorphism `V -> nabla V` for the unfolded
/// representation, i.e. the forms make `V` selfdual.
pub fn is_selfdual(sv: &SymmetricRepresentation) -> bool {
    let v = sv.unfold();
    let d = v.dualize();
    let q = sv.quiver();
    let phi = |x: usize| pairing_matrix(q, sv.kind(), x, v.dim()[x - 1]).transpose();
    q.quiver().arrows().all(|k| {
        let (t, h) = (q.quiver().tail(k), q.quiver().head(k));
        let lhs = d.map(k).mul(&phi(t)).expect("shapes");
        let rhs = phi(h).mul(v.map(k)).expect("shapes");
        lhs == rhs
    })
}

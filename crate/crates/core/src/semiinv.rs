//! Projective resolutions, `Hom_Q(d, W)` matrices, and the determinantal and
//! Pfaffian semi-invariants built from them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{det_expand, pfaffian_expand, Matrix, RatMatrix};
use crate::poly::Polynomial;
use crate::quiver::{ArrowClass, Quiver, SymmetricQuiver};
use crate::rational::Rational;
use crate::rep::{check_symmetric_dim, compose_path, pairing_matrix, unfold_maps, Kind, Representation, SymmetricRepresentation};
use crate::ring::Ring;

/// One path term of the differential: `coeff * (path from -> to)`, mapping
/// the `P_1` summand `row` (at `to`) into the `P_0` summand `col` (at `from`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: Rational,
    pub from: usize,
    pub to: usize,
}

/// `0 -> P_1 -> P_0 -> V -> 0` with one indecomposable projective per summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjResolution {
    pub quiver: Quiver,
    /// Dimension vector of the resolved module.
    pub alpha: Vec<usize>,
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub entries: Vec<DiffEntry>,
}

impl ProjResolution {
    pub fn p1_multiplicities(&self) -> Vec<usize> {
        multiplicities(self.quiver.m(), &self.p1)
    }

    pub fn p0_multiplicities(&self) -> Vec<usize> {
        multiplicities(self.quiver.m(), &self.p0)
    }

    pub fn is_projective(&self) -> bool {
        self.p1.is_empty()
    }

    /// Appends `other` as a direct summand.
    pub fn append(&mut self, other: &ProjResolution) {
        let (r0, c0) = (self.p1.len(), self.p0.len());
        self.p1.extend(&other.p1);
        self.p0.extend(&other.p0);
        for (a, b) in self.alpha.iter_mut().zip(&other.alpha) {
            *a += b;
        }
        self.entries.extend(other.entries.iter().map(|e| DiffEntry {
            row: e.row + r0,
            col: e.col + c0,
            ..e.clone()
        }));
    }

    fn empty(quiver: &Quiver) -> Self {
        ProjResolution {
            quiver: quiver.clone(),
            alpha: vec![0; quiver.m()],
            p1: Vec::new(),
            p0: Vec::new(),
            entries: Vec::new(),
        }
    }
}

fn multiplicities(m: usize, summands: &[usize]) -> Vec<usize> {
    let mut v = vec![0; m];
    for &x in summands {
        v[x - 1] += 1;
    }
    v
}

fn path_name(q: &Quiver, from: usize, to: usize) -> String {
    let arrows = q.path(from, to).unwrap_or_default();
    if arrows.is_empty() {
        return format!("e{from}");
    }
    arrows.iter().rev().map(|k| format!("a{k}")).collect::<Vec<_>>().join("·")
}

impl fmt::Display for ProjResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |v: &[usize]| {
            if v.is_empty() {
                "0".to_string()
            } else {
                v.iter().map(|x| format!("P{x}")).collect::<Vec<_>>().join(" ⊕ ")
            }
        };
        writeln!(f, "{} → {}", p(&self.p1), p(&self.p0))?;
        for e in &self.entries {
            let c = if e.coeff.is_one() {
                String::new()
            } else if (-&e.coeff).is_one() {
                "-".to_string()
            } else {
                format!("{}*", e.coeff)
            };
            writeln!(
                f,
                "  P{} → P{} via {c}{}",
                self.p1[e.row],
                self.p0[e.col],
                path_name(&self.quiver, e.from, e.to)
            )?;
        }
        Ok(())
    }
}

/// `P_1 = ⊕_a V(ta) ⊗ P_ha`, `P_0 = ⊕_x V(x) ⊗ P_x`, with
/// `d(v ⊗ e_ha) = V(a)v ⊗ e_ha - v ⊗ a`.
pub fn canonical_resolution(v: &Representation) -> ProjResolution {
    let q = v.quiver();
    let mut res = ProjResolution::empty(q);
    res.alpha = v.dim().to_vec();
    let mut col_offset = vec![0; q.m() + 1];
    for x in 1..=q.m() {
        col_offset[x] = res.p0.len();
        res.p0.extend(std::iter::repeat_n(x, v.dim()[x - 1]));
    }
    for k in q.arrows() {
        let (t, h) = (q.tail(k), q.head(k));
        for i in 0..v.dim()[t - 1] {
            let row = res.p1.len();
            res.p1.push(h);
            for r in 0..v.dim()[h - 1] {
                let c = v.map(k).get(r, i);
                if !c.is_zero() {
                    res.entries.push(DiffEntry {
                        row,
                        col: col_offset[h] + r,
                        coeff: c.clone(),
                        from: h,
                        to: h,
                    });
                }
            }
            res.entries.push(DiffEntry {
                row,
                col: col_offset[t] + i,
                coeff: -Rational::one(),
                from: t,
                to: h,
            });
        }
    }
    res
}

/// Minimal resolution of the interval module on `s..=e`.
pub fn interval_resolution(q: &Quiver, s: usize, e: usize) -> Result<ProjResolution> {
    if s == 0 || s > e || e > q.m() {
        return Err(Error::Precondition(format!("interval ({s},{e}) is not within 1..={}", q.m())));
    }
    let mut res = ProjResolution::empty(q);
    for x in s..=e {
        res.alpha[x - 1] = 1;
    }
    let inside = |k: usize| s <= k && k < e;
    let tops: Vec<usize> = (s..=e)
        .filter(|&x| q.incoming(x).into_iter().all(|k| !inside(k)))
        .collect();
    res.p0 = tops.clone();
    let reaching = |y: usize| -> Vec<usize> {
        (0..tops.len())
            .filter(|&c| q.path(tops[c], y).is_some())
            .collect()
    };
    let mut kernel: Vec<(usize, Vec<(usize, Rational)>)> = Vec::new();
    if s > 1 && q.head(s - 1) == s - 1 {
        let c = reaching(s);
        kernel.push((s - 1, vec![(c[0], Rational::one())]));
    }
    for y in s..=e {
        let inner_in: Vec<usize> = q.incoming(y).into_iter().filter(|&k| inside(k)).collect();
        if inner_in.len() == 2 {
            let c = reaching(y);
            kernel.push((y, vec![(c[0], Rational::one()), (c[1], -Rational::one())]));
        }
    }
    if e < q.m() && q.head(e) == e + 1 {
        let c = reaching(e);
        kernel.push((e + 1, vec![(c[0], Rational::one())]));
    }
    kernel.sort_by_key(|(y, _)| *y);
    for (row, (y, terms)) in kernel.into_iter().enumerate() {
        res.p1.push(y);
        for (col, coeff) in terms {
            res.entries.push(DiffEntry {
                row,
                col,
                coeff,
                from: tops[col],
                to: y,
            });
        }
    }
    Ok(res)
}

/// Minimal resolution of `V`, summing interval resolutions in the order of
/// increasing `(start, end)`.
pub fn minimal_resolution(v: &Representation) -> Result<ProjResolution> {
    let mut res = ProjResolution::empty(v.quiver());
    for ((s, e), mult) in v.fingerprint()? {
        let piece = interval_resolution(v.quiver(), s, e)?;
        for _ in 0..mult {
            res.append(&piece);
        }
    }
    Ok(res)
}

/// `Hom_Q(d, W)`: block rows for the `P_1` summands, block columns for the
/// `P_0` summands, each block the path sum evaluated on `W`.
pub fn hom_matrix<T: Ring>(res: &ProjResolution, w_maps: &[Matrix<T>], w_dim: &[usize]) -> Result<Matrix<T>> {
    let q = &res.quiver;
    q.check_dim(w_dim)?;
    let rows: usize = res.p1.iter().map(|&y| w_dim[y - 1]).sum();
    let cols: usize = res.p0.iter().map(|&x| w_dim[x - 1]).sum();
    if rows != cols {
        let value = q.euler_form(&res.alpha, w_dim)?;
        return Err(Error::EulerNonzero {
            alpha: res.alpha.clone(),
            beta: w_dim.to_vec(),
            value,
        });
    }
    let offsets = |summands: &[usize]| {
        let mut o = Vec::with_capacity(summands.len());
        let mut acc = 0;
        for &x in summands {
            o.push(acc);
            acc += w_dim[x - 1];
        }
        o
    };
    let (ro, co) = (offsets(&res.p1), offsets(&res.p0));
    let mut out: Matrix<T> = Matrix::zeros(rows, cols);
    for e in &res.entries {
        let path = compose_path(q, w_maps, w_dim, e.from, e.to)
            .ok_or_else(|| Error::Internal(format!("no path {} -> {}", e.from, e.to)))?;
        let block = path.scale(&T::from_rational(&e.coeff));
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                let (r, c) = (ro[e.row] + i, co[e.col] + j);
                let v = out.get(r, c).plus(block.get(i, j));
                out.set(r, c, v);
            }
        }
    }
    Ok(out)
}

pub fn hom_matrix_rep(res: &ProjResolution, w: &Representation) -> Result<RatMatrix> {
    if &res.quiver != w.quiver() {
        return Err(Error::Quiver(format!(
            "resolution over {} evaluated on a representation of {}",
            res.quiver,
            w.quiver()
        )));
    }
    hom_matrix(res, w.maps(), w.dim())
}

/// `c^V(W) = det Hom_Q(d^V_min, W)`.
pub fn schofield_eval(v: &Representation, w: &Representation) -> Result<Rational> {
    check_euler(v, w)?;
    hom_matrix_rep(&minimal_resolution(v)?, w)?.det()
}

/// `c^V(W)` computed from the canonical resolution.
pub fn schofield_eval_canonical(v: &Representation, w: &Representation) -> Result<Rational> {
    check_euler(v, w)?;
    hom_matrix_rep(&canonical_resolution(v), w)?.det()
}

fn check_euler(v: &Representation, w: &Representation) -> Result<()> {
    let value = v.quiver().euler_form(v.dim(), w.dim())?;
    if value != 0 {
        return Err(Error::EulerNonzero {
            alpha: v.dim().to_vec(),
            beta: w.dim().to_vec(),
            value,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Plain,
    SymmetricCorrected,
}

/// `y -> <dim V, e_y>`; the corrected mode zeroes the fixed vertex.
pub fn weight_of(v: &Representation, mode: WeightMode) -> Vec<Rational> {
    let q = v.quiver();
    let m = q.m();
    let mut w: Vec<Rational> = (1..=m)
        .map(|y| {
            let mut e = vec![0; m];
            e[y - 1] = 1;
            Rational::from(q.euler_form(v.dim(), &e).expect("matching lengths"))
        })
        .collect();
    if mode == WeightMode::SymmetricCorrected && m % 2 == 1 {
        w[m / 2] = Rational::zero();
    }
    w
}

/// `(chi - chi∘sigma) / 2`: the symmetric weight with the same character on
/// `SO(Q, beta)` / `SSp(Q, beta)`.
pub fn symmetrize_weight(chi: &[Rational]) -> Vec<Rational> {
    let m = chi.len();
    let half = Rational::frac(1, 2);
    (0..m).map(|i| &(&chi[i] - &chi[m - 1 - i]) * &half).collect()
}

pub fn is_symmetric_weight(chi: &[Rational]) -> bool {
    let m = chi.len();
    (0..m).all(|i| chi[i] == -&chi[m - 1 - i])
}

/// Exponent of `det g_x` for `x in Q_0^+`: `chi(x) - chi(sigma x)`.
pub fn weight_exponents(q: &SymmetricQuiver, chi: &[Rational]) -> Vec<Rational> {
    q.plus_vertices()
        .into_iter()
        .map(|x| &chi[x - 1] - &chi[q.sigma(x) - 1])
        .collect()
}

/// Coordinates of `SpRep/ORep(Q, beta)`: all entries of the `Q_1^+` maps,
/// then the upper triangle (diagonal included when symmetric) of the fixed
/// arrow's map.
#[derive(Clone, Debug)]
pub struct CoordinateSpace {
    pub quiver: SymmetricQuiver,
    pub kind: Kind,
    pub dim: Vec<usize>,
    /// `(arrow, row, col)` per coordinate.
    pub coords: Vec<(usize, usize, usize)>,
}

impl CoordinateSpace {
    pub fn new(quiver: &SymmetricQuiver, kind: Kind, dim: &[usize]) -> Result<Self> {
        check_symmetric_dim(quiver, kind, dim)?;
        let q = quiver.quiver();
        let mut coords = Vec::new();
        for k in quiver.data_arrows() {
            let (r, c) = (dim[q.head(k) - 1], dim[q.tail(k) - 1]);
            for i in 0..r {
                for j in 0..c {
                    let keep = match quiver.arrow_class(k) {
                        ArrowClass::Fixed => match kind {
                            Kind::Symplectic => i <= j,
                            Kind::Orthogonal => i < j,
                        },
                        _ => true,
                    };
                    if keep {
                        coords.push((k, i, j));
                    }
                }
            }
        }
        Ok(CoordinateSpace {
            quiver: quiver.clone(),
            kind,
            dim: dim.to_vec(),
            coords,
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Data matrices over any ring from per-coordinate values.
    pub fn data_from<T: Ring>(&self, values: &[T]) -> BTreeMap<usize, Matrix<T>> {
        let q = self.quiver.quiver();
        let mut data: BTreeMap<usize, Matrix<T>> = self
            .quiver
            .data_arrows()
            .into_iter()
            .map(|k| (k, Matrix::zeros(self.dim[q.head(k) - 1], self.dim[q.tail(k) - 1])))
            .collect();
        for (n, &(k, i, j)) in self.coords.iter().enumerate() {
            let m = data.get_mut(&k).expect("data arrow");
            m.set(i, j, values[n].clone());
            if self.quiver.arrow_class(k) == ArrowClass::Fixed {
                let mirrored = match self.kind {
                    Kind::Symplectic => values[n].clone(),
                    Kind::Orthogonal => values[n].negated(),
                };
                m.set(j, i, mirrored);
            }
        }
        data
    }

    /// Generic symbolic representation: coordinate `n` is the variable `x_n`.
    pub fn symbolic_data(&self) -> BTreeMap<usize, Matrix<Polynomial>> {
        let vars: Vec<Polynomial> = (0..self.len()).map(Polynomial::var).collect();
        self.data_from(&vars)
    }

    pub fn symbolic_maps(&self) -> Result<Vec<Matrix<Polynomial>>> {
        unfold_maps(&self.quiver, self.kind, &self.dim, &self.symbolic_data())
    }

    pub fn point(&self, sw: &SymmetricRepresentation) -> Vec<Rational> {
        self.coords.iter().map(|&(k, i, j)| sw.map(k).get(i, j).clone()).collect()
    }

    pub fn representation_at(&self, values: &[Rational]) -> Result<SymmetricRepresentation> {
        SymmetricRepresentation::new(self.quiver.clone(), self.kind, self.dim.clone(), self.data_from(values))
    }
}

/// Data for `pf^V`: the minimal resolution with rows paired to columns through
/// `sigma`, the pairing matrices, and per-block signs making the matrix skew.
#[derive(Clone, Debug)]
pub struct PfaffianSetup {
    quiver: SymmetricQuiver,
    kind: Kind,
    dim: Vec<usize>,
    res: ProjResolution,
    signs: Vec<i64>,
}

impl PfaffianSetup {
    /// Checks parity, `V ≅ C^-∇V`, the Euler form, and structural skewness
    /// on a generic symbolic representation.
    pub fn new(v: &Representation, quiver: &SymmetricQuiver, kind: Kind, dim: &[usize]) -> Result<Self> {
        let expected = if quiver.m().is_multiple_of(2) {
            Kind::Orthogonal
        } else {
            Kind::Symplectic
        };
        if kind != expected {
            return Err(Error::Precondition(format!(
                "pf^V on A{} needs {expected} representations, got {kind}",
                quiver.m()
            )));
        }
        let dual = crate::functors::coxeter_minus(&v.dualize())?;
        if !dual.isomorphic(v)? {
            return Err(Error::Precondition(format!(
                "V = {:?} is not isomorphic to C^-∇V",
                v.fingerprint()?
            )));
        }
        let setup = Self::new_unchecked(v, quiver, kind, dim)?;
        let space = CoordinateSpace::new(quiver, kind, dim)?;
        let s = setup.matrix_generic(&space.symbolic_maps()?)?;
        if let Some((row, col)) = s.skew_violation() {
            return Err(Error::NotSkew { row, col });
        }
        Ok(setup)
    }

    /// Pairs rows with columns and solves for block signs from off-diagonal
    /// blocks only; no parity or skewness check.
    pub fn new_unchecked(v: &Representation, quiver: &SymmetricQuiver, kind: Kind, dim: &[usize]) -> Result<Self> {
        if v.quiver() != quiver.quiver() {
            return Err(Error::Quiver(format!("V lives on {}, not {quiver}", v.quiver())));
        }
        check_euler_dims(quiver.quiver(), v.dim(), dim)?;
        let res = minimal_resolution(v)?;
        let mut used = vec![false; res.p1.len()];
        let mut order = Vec::with_capacity(res.p0.len());
        for &x in &res.p0 {
            let r = (0..res.p1.len())
                .find(|&r| !used[r] && res.p1[r] == quiver.sigma(x))
                .ok_or_else(|| {
                    Error::Precondition(format!("P1 has no summand at sigma({x}) to pair with P{x}"))
                })?;
            used[r] = true;
            order.push(r);
        }
        if order.len() != res.p1.len() {
            return Err(Error::Precondition("P1 and P0 have different numbers of summands".into()));
        }
        let mut paired = res.clone();
        let inverse: BTreeMap<usize, usize> = order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        paired.p1 = order.iter().map(|&r| res.p1[r]).collect();
        for e in &mut paired.entries {
            e.row = inverse[&e.row];
        }
        let mut setup = PfaffianSetup {
            quiver: quiver.clone(),
            kind,
            dim: dim.to_vec(),
            res: paired,
            signs: vec![1; order.len()],
        };
        let space = CoordinateSpace::new(quiver, kind, dim)?;
        let s = setup.matrix_generic(&space.symbolic_maps()?)?;
        setup.signs = solve_block_signs(&s, &setup.block_offsets())?;
        Ok(setup)
    }

    fn block_offsets(&self) -> Vec<(usize, usize)> {
        let mut acc = 0;
        self.res
            .p0
            .iter()
            .map(|&x| {
                let o = (acc, self.dim[x - 1]);
                acc += self.dim[x - 1];
                o
            })
            .collect()
    }

    pub fn resolution(&self) -> &ProjResolution {
        &self.res
    }

    /// `diag(s) · P^T · Hom(d, W)` over any ring.
    pub fn matrix_generic<T: Ring>(&self, maps: &[Matrix<T>]) -> Result<Matrix<T>> {
        let h = hom_matrix(&self.res, maps, &self.dim)?;
        let mut out = Matrix::zeros(h.rows(), h.cols());
        let mut r0 = 0;
        for (k, &y) in self.res.p1.iter().enumerate() {
            let n = self.dim[y - 1];
            let p = pairing_matrix(&self.quiver, self.kind, y, n)
                .transpose()
                .scale(&Rational::from(self.signs[k]))
                .map(T::from_rational);
            let rows: Vec<usize> = (r0..r0 + n).collect();
            let block = p.mul(&h.submatrix(&rows, &(0..h.cols()).collect::<Vec<_>>()))?;
            out.write_block(r0, 0, &block);
            r0 += n;
        }
        Ok(out)
    }

    pub fn matrix(&self, sw: &SymmetricRepresentation) -> Result<RatMatrix> {
        if sw.quiver() != &self.quiver || sw.dim() != self.dim.as_slice() {
            return Err(Error::Representation(format!(
                "expected a representation of {} with dimension {:?}",
                self.quiver, self.dim
            )));
        }
        self.matrix_generic(sw.unfold().maps())
    }

    pub fn eval(&self, sw: &SymmetricRepresentation) -> Result<Rational> {
        if sw.kind() != self.kind {
            return Err(Error::Precondition(format!(
                "pf set up for {} representations, got {}",
                self.kind,
                sw.kind()
            )));
        }
        self.matrix(sw)?.pfaffian()
    }

    pub fn symbolic(&self) -> Result<Polynomial> {
        let space = CoordinateSpace::new(&self.quiver, self.kind, &self.dim)?;
        pfaffian_expand(&self.matrix_generic(&space.symbolic_maps()?)?)
    }
}

fn check_euler_dims(q: &Quiver, alpha: &[usize], beta: &[usize]) -> Result<()> {
    let value = q.euler_form(alpha, beta)?;
    if value != 0 {
        return Err(Error::EulerNonzero {
            alpha: alpha.to_vec(),
            beta: beta.to_vec(),
            value,
        });
    }
    Ok(())
}

/// Signs `s_k` with `s_k S_kl = -(s_l S_lk)^T` for all off-diagonal blocks.
fn solve_block_signs(s: &Matrix<Polynomial>, blocks: &[(usize, usize)]) -> Result<Vec<i64>> {
    let n = blocks.len();
    let block = |k: usize, l: usize| {
        let rows: Vec<usize> = (blocks[k].0..blocks[k].0 + blocks[k].1).collect();
        let cols: Vec<usize> = (blocks[l].0..blocks[l].0 + blocks[l].1).collect();
        s.submatrix(&rows, &cols)
    };
    let mut signs: Vec<Option<i64>> = vec![None; n];
    for start in 0..n {
        if signs[start].is_some() {
            continue;
        }
        signs[start] = Some(1);
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            for l in 0..n {
                if l == k {
                    continue;
                }
                let (a, b) = (block(k, l), block(l, k).transpose());
                if a.is_zero_matrix() && b.is_zero_matrix() {
                    continue;
                }
                // a = -rel * b with rel = s_l / s_k
                let rel = if a == b.neg() {
                    1
                } else if a == b {
                    -1
                } else {
                    return Err(Error::NotSkew {
                        row: blocks[k].0,
                        col: blocks[l].0,
                    });
                };
                let want = signs[k].expect("visited") * rel;
                match signs[l] {
                    None => {
                        signs[l] = Some(want);
                        stack.push(l);
                    }
                    Some(s) if s != want => {
                        return Err(Error::NotSkew {
                            row: blocks[k].0,
                            col: blocks[l].0,
                        })
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(signs.into_iter().map(|s| s.unwrap_or(1)).collect())
}

/// `pf^V(SW)`, checking every precondition.
pub fn pfaffian_eval(v: &Representation, sw: &SymmetricRepresentation) -> Result<Rational> {
    PfaffianSetup::new(v, sw.quiver(), sw.kind(), sw.dim())?.eval(sw)
}

/// `det Hom_Q(d^V_min, W)` as a polynomial in the coordinates of
/// `SpRep/ORep(Q, beta)`.
pub fn symbolic_schofield(v: &Representation, space: &CoordinateSpace) -> Result<Polynomial> {
    check_euler_dims(space.quiver.quiver(), v.dim(), &space.dim)?;
    let m = hom_matrix(&minimal_resolution(v)?, &space.symbolic_maps()?, &space.dim)?;
    det_expand(&m)
}

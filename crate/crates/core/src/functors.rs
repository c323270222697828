//! BGP reflection functors, symmetric pair reflections and Coxeter functors.
//!
//! New spaces are spanned by RREF kernel (resp. left-kernel) bases, rescaled
//! so that together with any lift of the standard basis of the old space they
//! have determinant one. This fixes the basis up to `SL`, which makes
//! `c^{C V}(C W)` a well-defined function of `W`.

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::quiver::{Quiver, SymmetricQuiver, VertexClass};
use crate::rational::Rational;
use crate::rep::{Representation, SymmetricRepresentation};

#[derive(Clone, Debug)]
pub struct ReflectionResult {
    pub representation: Representation,
    pub quiver: Quiver,
    /// `(x, vol)` per elementary step. `vol` is the determinant of the new
    /// basis together with the lift; it is 1 unless the new space is zero,
    /// in which case nothing can be rescaled and the lift alone remains.
    pub volumes: Vec<(usize, Rational)>,
}

/// `C_x^+` at a sink `x`.
pub fn reflect_plus(v: &Representation, x: usize) -> Result<ReflectionResult> {
    let q = v.quiver();
    q.check_vertex(x)?;
    if !q.is_sink(x) {
        return Err(Error::Quiver(format!("vertex {x} is not a sink of {q}")));
    }
    let arrows = q.incoming(x);
    let blocks: Vec<RatMatrix> = arrows.iter().map(|&k| v.map(k).clone()).collect();
    let sizes: Vec<usize> = arrows.iter().map(|&k| v.dim()[q.tail(k) - 1]).collect();
    let phi = RatMatrix::hstack(&blocks, v.dim()[x - 1])?;
    let mut kernel = phi.kernel_basis();
    let r = kernel.cols();
    let mut volume = Rational::one();
    if r == 0 && phi.rank() == phi.rows() {
        volume = right_lift(&phi).det()?;
    } else if r > 0 {
        let lift = right_lift(&phi);
        let d = RatMatrix::hstack(&[kernel.clone(), lift], phi.cols())?.det()?;
        if !d.is_zero() {
            scale_column(&mut kernel, 0, &d.recip()?);
        }
    }
    let nq = q.reflect_at(x);
    let mut dim = v.dim().to_vec();
    dim[x - 1] = r;
    let mut maps = v.maps().to_vec();
    let mut row = 0;
    for (&k, &s) in arrows.iter().zip(&sizes) {
        let rows: Vec<usize> = (row..row + s).collect();
        maps[k - 1] = kernel.submatrix(&rows, &(0..r).collect::<Vec<_>>());
        row += s;
    }
    let representation = Representation::new(nq.clone(), dim, maps)?;
    Ok(ReflectionResult {
        representation,
        quiver: nq,
        volumes: vec![(x, volume)],
    })
}

/// `C_x^-` at a source `x`.
pub fn reflect_minus(v: &Representation, x: usize) -> Result<ReflectionResult> {
    let q = v.quiver();
    q.check_vertex(x)?;
    if !q.is_source(x) {
        return Err(Error::Quiver(format!("vertex {x} is not a source of {q}")));
    }
    let arrows = q.outgoing(x);
    let blocks: Vec<RatMatrix> = arrows.iter().map(|&k| v.map(k).clone()).collect();
    let sizes: Vec<usize> = arrows.iter().map(|&k| v.dim()[q.head(k) - 1]).collect();
    let n: usize = sizes.iter().sum();
    let psi = RatMatrix::vstack(&blocks, v.dim()[x - 1])?;
    let mut proj = psi.transpose().kernel_basis().transpose();
    let r = proj.rows();
    let mut volume = Rational::one();
    if r == 0 && psi.rank() == psi.cols() {
        volume = right_lift(&psi.transpose()).det()?;
    } else if r > 0 {
        let lift = right_lift(&psi.transpose()).transpose();
        let d = RatMatrix::vstack(&[lift, proj.clone()], n)?.det()?;
        if !d.is_zero() {
            let inv = d.recip()?;
            for j in 0..proj.cols() {
                let val = proj.get(0, j) * &inv;
                proj.set(0, j, val);
            }
        }
    }
    let nq = q.reflect_at(x);
    let mut dim = v.dim().to_vec();
    dim[x - 1] = r;
    let mut maps = v.maps().to_vec();
    let mut col = 0;
    for (&k, &s) in arrows.iter().zip(&sizes) {
        let cols: Vec<usize> = (col..col + s).collect();
        maps[k - 1] = proj.submatrix(&(0..r).collect::<Vec<_>>(), &cols);
        col += s;
    }
    let representation = Representation::new(nq.clone(), dim, maps)?;
    Ok(ReflectionResult {
        representation,
        quiver: nq,
        volumes: vec![(x, volume)],
    })
}

/// Columns `L` completing `ker(phi)` to a basis: `phi L = I` when `phi` is
/// surjective, otherwise standard vectors outside the kernel's span.
fn right_lift(phi: &RatMatrix) -> RatMatrix {
    let n = phi.cols();
    if phi.rank() == phi.rows() {
        let cols: Vec<RatMatrix> = (0..phi.rows())
            .map(|i| {
                let mut e = vec![Rational::zero(); phi.rows()];
                e[i] = Rational::one();
                let x = phi.solve(&e).expect("shape").expect("surjective");
                RatMatrix::column_vector(&x)
            })
            .collect();
        return RatMatrix::hstack(&cols, n).expect("column vectors");
    }
    let kernel = phi.kernel_basis();
    let aug = RatMatrix::hstack(&[kernel.clone(), RatMatrix::identity(n)], n).expect("shape");
    let pivots = aug.rref().pivots;
    let picked: Vec<usize> = pivots.into_iter().filter(|&p| p >= kernel.cols()).map(|p| p - kernel.cols()).collect();
    RatMatrix::identity(n).submatrix(&(0..n).collect::<Vec<_>>(), &picked)
}

fn scale_column(m: &mut RatMatrix, j: usize, c: &Rational) {
    for i in 0..m.rows() {
        let v = m.get(i, j) * c;
        m.set(i, j, v);
    }
}

/// `C^+_{(x, sigma x)} = C^-_{sigma x} C^+_x` for an admissible sink `x`.
pub fn reflect_pair_plus(sq: &SymmetricQuiver, v: &Representation, x: usize) -> Result<ReflectionResult> {
    check_pair(sq, v, x)?;
    if !sq.quiver().is_sink(x) {
        return Err(Error::Quiver(format!("vertex {x} is not a sink of {sq}")));
    }
    let step = reflect_plus(v, x)?;
    let mut out = reflect_minus(&step.representation, sq.sigma(x))?;
    out.volumes.insert(0, step.volumes[0].clone());
    Ok(out)
}

/// `C^-_{(x, sigma x)} = C^+_{sigma x} C^-_x` for an admissible source `x`.
pub fn reflect_pair_minus(sq: &SymmetricQuiver, v: &Representation, x: usize) -> Result<ReflectionResult> {
    check_pair(sq, v, x)?;
    if !sq.quiver().is_source(x) {
        return Err(Error::Quiver(format!("vertex {x} is not a source of {sq}")));
    }
    let step = reflect_minus(v, x)?;
    let mut out = reflect_plus(&step.representation, sq.sigma(x))?;
    out.volumes.insert(0, step.volumes[0].clone());
    Ok(out)
}

fn check_pair(sq: &SymmetricQuiver, v: &Representation, x: usize) -> Result<()> {
    if v.quiver() != sq.quiver() {
        return Err(Error::Quiver(format!("representation lives on {}, not {sq}", v.quiver())));
    }
    sq.quiver().check_vertex(x)?;
    if !sq.is_admissible(x) {
        return Err(Error::Quiver(format!(
            "({x}, {}) is not an admissible sink-source pair of {sq}",
            sq.sigma(x)
        )));
    }
    Ok(())
}

/// `C^+` using the given vertex order; each vertex must be a sink when reached.
pub fn coxeter_plus_with_order(v: &Representation, order: &[usize]) -> Result<Representation> {
    check_order(v.quiver(), order)?;
    let mut cur = v.clone();
    for &x in order {
        cur = reflect_plus(&cur, x)?.representation;
    }
    Ok(cur)
}

/// `C^-` using the given vertex order; each vertex must be a source when reached.
pub fn coxeter_minus_with_order(v: &Representation, order: &[usize]) -> Result<Representation> {
    check_order(v.quiver(), order)?;
    let mut cur = v.clone();
    for &x in order {
        cur = reflect_minus(&cur, x)?.representation;
    }
    Ok(cur)
}

fn check_order(q: &Quiver, order: &[usize]) -> Result<()> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=q.m()).collect::<Vec<_>>() {
        return Err(Error::Precondition(format!("{order:?} is not an ordering of the vertices of {q}")));
    }
    Ok(())
}

pub fn coxeter_plus(v: &Representation) -> Result<Representation> {
    coxeter_plus_with_order(v, &v.quiver().sink_order())
}

pub fn coxeter_minus(v: &Representation) -> Result<Representation> {
    let mut order = v.quiver().sink_order();
    order.reverse();
    coxeter_minus_with_order(v, &order)
}

/// Every admissible order for `C^+`: sequences where each vertex is a sink
/// of the quiver reflected at the earlier ones.
pub fn admissible_sink_orders(q: &Quiver) -> Vec<Vec<usize>> {
    fn rec(q: &Quiver, done: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if done.len() == q.m() {
            out.push(done.clone());
            return;
        }
        for x in 1..=q.m() {
            if !done.contains(&x) && q.is_sink(x) {
                done.push(x);
                rec(&q.reflect_at(x), done, out);
                done.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(q, &mut Vec::new(), &mut out);
    out
}

/// `C^±_{(x, sigma x)}` on an orthogonal or symplectic representation.
///
/// The pair reflection of the unfolded `W` is only isomorphic to an unfolded
/// one; the basis at the `Q_0^-` vertex of the pair is changed so the
/// result is exactly the unfolding of its `Q_1^+` maps.
pub fn reflect_pair_symmetric(sw: &SymmetricRepresentation, x: usize) -> Result<SymmetricRepresentation> {
    let sq = sw.quiver();
    let raw = if sq.quiver().is_sink(x) {
        reflect_pair_plus(sq, &sw.unfold(), x)?
    } else {
        reflect_pair_minus(sq, &sw.unfold(), x)?
    };
    let r = raw.representation;
    let nq = SymmetricQuiver::new(raw.quiver)?;
    let maps = nq.data_arrows().into_iter().map(|k| (k, r.map(k).clone())).collect();
    let out = SymmetricRepresentation::new(nq.clone(), sw.kind(), r.dim().to_vec(), maps)?;
    let target = out.unfold();
    let y = if nq.vertex_class(x) == VertexClass::Minus { x } else { nq.sigma(x) };
    let q = nq.quiver();
    let (incoming, outgoing) = (q.incoming(y), q.outgoing(y));
    let size = r.dim()[y - 1];
    // Solve h B = T on the stacked incoming maps, or B h^{-1} = T on the outgoing ones.
    let h = if !incoming.is_empty() {
        let b = RatMatrix::hstack(&incoming.iter().map(|&k| r.map(k).clone()).collect::<Vec<_>>(), size)?;
        let t = RatMatrix::hstack(&incoming.iter().map(|&k| target.map(k).clone()).collect::<Vec<_>>(), size)?;
        solve_left(&b, &t)?
    } else {
        let b = RatMatrix::vstack(&outgoing.iter().map(|&k| r.map(k).clone()).collect::<Vec<_>>(), size)?;
        let t = RatMatrix::vstack(&outgoing.iter().map(|&k| target.map(k).clone()).collect::<Vec<_>>(), size)?;
        solve_left(&b.transpose(), &t.transpose())?.transpose().inverse()?
    };
    if h.det()?.is_zero() {
        return Err(Error::Internal(format!("no symmetric basis at vertex {y} after reflection")));
    }
    Ok(out)
}

/// `h` with `h b = t`, checked.
fn solve_left(b: &RatMatrix, t: &RatMatrix) -> Result<RatMatrix> {
    let lift = right_lift(b);
    let h = t.mul(&lift)?;
    if h.mul(b)? != *t {
        return Err(Error::Internal("reflected representation is not selfdual".into()));
    }
    Ok(h)
}

//! Partitions, Littlewood-Richardson coefficients, Schur module dimensions,
//! Cauchy decompositions and invariant counts for classical groups.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quiver::{Dir, SymmetricQuiver};
use crate::rational::Rational;
use crate::rep::Kind;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Trailing zeros are dropped; parts must be weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(k, ..., k)` with `n` parts.
    pub fn rectangle(k: usize, n: usize) -> Self {
        if k == 0 {
            Partition::empty()
        } else {
            Partition(vec![k; n])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `lambda_i` (1-based), zero past the height.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn transpose(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    pub fn has_even_rows(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }

    pub fn has_even_columns(&self) -> bool {
        self.transpose().has_even_rows()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.height() <= self.height() && (1..=other.height()).all(|i| other.part(i) <= self.part(i))
    }

    pub fn scaled(&self, k: usize) -> Partition {
        Partition::new(self.0.iter().map(|p| p * k).collect()).expect("scaling keeps order")
    }

    /// `self + (k^n)` as an integer vector of length `n`; `None` if the
    /// result has a negative entry or `self` is taller than `n`.
    pub fn shift(&self, k: i64, n: usize) -> Option<Partition> {
        if self.height() > n {
            return None;
        }
        let parts: Option<Vec<usize>> = (1..=n)
            .map(|i| usize::try_from(self.part(i) as i64 + k).ok())
            .collect();
        Partition::new(parts?).ok()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() || s == "∅" || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad part {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    partitions_bounded(n, usize::MAX, usize::MAX)
}

/// Partitions of `n` with at most `max_height` parts, each at most `max_part`.
pub fn partitions_bounded(n: usize, max_height: usize, max_part: usize) -> Vec<Partition> {
    fn rec(left: usize, cap: usize, height: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if height == 0 {
            return;
        }
        for p in (1..=cap.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, height - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, max_height, &mut Vec::new(), &mut out);
    out
}

/// `c^nu_{lambda, mu}`: LR tableaux of shape `nu / lambda` and content `mu`.
pub fn lr_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    if nu.size() != lambda.size() + mu.size() || !nu.contains(lambda) {
        return 0;
    }
    // cells in reading order: rows top to bottom, right to left within a row
    let mut cells = Vec::new();
    for r in 1..=nu.height() {
        for c in (lambda.part(r) + 1..=nu.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut filling = vec![vec![0usize; nu.part(1) + 2]; nu.height() + 2];
    let mut count = vec![0usize; mu.height() + 1];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        filling: &mut Vec<Vec<usize>>,
        count: &mut Vec<usize>,
    ) -> usize {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for v in 1..=mu.height() {
            if count[v] >= mu.part(v) || (v > 1 && count[v] + 1 > count[v - 1]) {
                continue;
            }
            if c < nu.part(r) && filling[r][c + 1] < v {
                continue;
            }
            if r > 1 && c > lambda.part(r - 1) && filling[r - 1][c] >= v {
                continue;
            }
            filling[r][c] = v;
            count[v] += 1;
            total += rec(idx + 1, cells, lambda, mu, nu, filling, count);
            count[v] -= 1;
            filling[r][c] = 0;
        }
        total
    }
    rec(0, &cells, lambda, mu, nu, &mut filling, &mut count)
}

/// `S_lambda ⊗ S_mu = ⊕ c^nu S_nu`, restricted to `ht(nu) <= max_height`.
pub fn lr_decompose(lambda: &Partition, mu: &Partition, max_height: usize) -> Vec<(Partition, usize)> {
    partitions_bounded(lambda.size() + mu.size(), max_height, usize::MAX)
        .into_iter()
        .filter_map(|nu| {
            let c = lr_coeff(lambda, mu, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect()
}

/// Weyl dimension of `S_lambda(k^n)`; zero when `ht(lambda) > n`.
pub fn schur_dim(lambda: &Partition, n: usize) -> usize {
    if lambda.height() > n {
        return 0;
    }
    let mut acc = Rational::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let num = lambda.part(i) as i64 - lambda.part(j) as i64 + (j - i) as i64;
            acc = &acc * &Rational::frac(num, (j - i) as i64);
        }
    }
    acc.to_i64().expect("Weyl dimension is an integer") as usize
}

/// `S_d(V ⊗ W) = ⊕_{|lambda| = d} S_lambda V ⊗ S_lambda W`: the nonzero terms
/// with their dimensions.
pub fn cauchy_tensor(d: usize, nv: usize, nw: usize) -> Vec<(Partition, usize, usize)> {
    partitions_bounded(d, nv.min(nw), usize::MAX)
        .into_iter()
        .map(|l| {
            let (a, b) = (schur_dim(&l, nv), schur_dim(&l, nw));
            (l, a, b)
        })
        .collect()
}

/// `S_d(S_2 V) = ⊕_{|lambda| = d} S_{2 lambda} V`.
pub fn cauchy_sym2(d: usize, n: usize) -> Vec<Partition> {
    partitions_bounded(d, n, usize::MAX).into_iter().map(|l| l.scaled(2)).collect()
}

/// `S_d(∧^2 V) = ⊕_{|lambda| = d} S_{(2 lambda)'} V`.
pub fn cauchy_wedge2(d: usize, n: usize) -> Vec<Partition> {
    partitions(d)
        .into_iter()
        .map(|l| l.scaled(2).transpose())
        .filter(|p| p.height() <= n)
        .collect()
}

/// `dim (S_lambda V)^{SL(V)}` for `dim V = n`: one iff `lambda = (k^n)`.
pub fn sl_invariant_dim(lambda: &Partition, n: usize) -> usize {
    if lambda.height() > n {
        return 0;
    }
    usize::from((1..=n).all(|i| lambda.part(i) == lambda.part(1)))
}

/// `(S_lambda V ⊗ S_mu V)^{SL(V)}` is one-dimensional iff
/// `lambda_i - lambda_{i+1} = mu_{n-i} - mu_{n-i+1}` for `1 <= i < n`; the
/// invariant then spans `det^k` with `k = lambda_1 + mu_n`.
pub fn sl_pair_semiinvariant(lambda: &Partition, mu: &Partition, n: usize) -> Option<usize> {
    if lambda.height() > n || mu.height() > n {
        return None;
    }
    let ok = (1..n).all(|i| lambda.part(i) as i64 - lambda.part(i + 1) as i64 == mu.part(n - i) as i64 - mu.part(n - i + 1) as i64);
    ok.then(|| lambda.part(1) + mu.part(n))
}

/// `(S_lambda V)^{SO(V)}`, `dim V = n`: `lambda` (padded to `n` parts) is even
/// or odd in every entry.
pub fn so_invariant_dim(lambda: &Partition, n: usize) -> usize {
    if lambda.height() > n {
        return 0;
    }
    usize::from((0..2).any(|k| (1..=n).all(|i| (lambda.part(i) + k).is_multiple_of(2))))
}

/// `(S_lambda V)^{Sp(V)}`, `dim V = 2m`: every column of `lambda` has even
/// length.
pub fn sp_invariant_dim(lambda: &Partition, size: usize) -> usize {
    usize::from(size.is_multiple_of(2) && lambda.height() <= size && lambda.has_even_columns())
}

/// Torus grading `delta` on `Q_0^+` of the weight `chi`: `delta_x = -beta_x
/// (chi(x) - chi(sigma x))`. `None` if `chi` is not symmetric, is nonzero at
/// the fixed vertex, or has non-integral exponents.
pub fn weight_grading(q: &SymmetricQuiver, beta: &[usize], chi: &[Rational]) -> Option<Vec<i64>> {
    let m = q.m();
    if chi.len() != m || (0..m).any(|i| chi[i] != -&chi[m - 1 - i]) {
        return None;
    }
    if let Some(f) = q.fixed_vertex() {
        if !chi[f - 1].is_zero() {
            return None;
        }
    }
    q.plus_vertices()
        .into_iter()
        .map(|x| {
            let e = (&chi[x - 1] - &chi[q.sigma(x) - 1]).to_i64()?;
            Some(-(beta[x - 1] as i64) * e)
        })
        .collect()
}

/// Dimension of the degree-`d` weight-`chi` part of the semi-invariant ring
/// of an equioriented symmetric quiver, from the Cauchy decomposition of its
/// coordinate ring along the chain of arrows `a_1, ..., a_n`.
pub fn chain_weight_space_dim(q: &SymmetricQuiver, kind: Kind, beta: &[usize], chi: &[Rational], d: usize) -> Result<usize> {
    if !q.quiver().is_equioriented() {
        return Err(Error::Quiver(format!("{q} is not equioriented")));
    }
    crate::rep::check_symmetric_dim(q, kind, beta)?;
    let Some(mut delta) = weight_grading(q, beta, chi) else {
        return Ok(0);
    };
    // reversing every arrow is the transpose, which inverts the torus action
    if q.m() > 1 && q.quiver().dir(1) == Dir::Left {
        delta.iter_mut().for_each(|x| *x = -*x);
    }
    chain_grading_dim(q, kind, beta, &delta, d)
}

/// [`chain_weight_space_dim`] for a right-oriented chain and a grading.
pub fn chain_grading_dim(q: &SymmetricQuiver, kind: Kind, beta: &[usize], delta: &[i64], d: usize) -> Result<usize> {
    let m = q.m();
    let n = m / 2;
    if m < 2 {
        return Ok(usize::from(d == 0 && delta.iter().all(|&x| x == 0)));
    }
    // |lambda(a_x)| is forced by the grading: s_x = s_{x-1} - delta_x
    let mut sizes = Vec::with_capacity(n);
    let mut prev = 0i64;
    for &dx in delta {
        let s = prev - dx;
        if s < 0 {
            return Ok(0);
        }
        sizes.push(s as usize);
        prev = s;
    }
    let total: usize = if m.is_multiple_of(2) {
        if sizes[n - 1] % 2 == 1 {
            return Ok(0);
        }
        sizes[..n - 1].iter().sum::<usize>() + sizes[n - 1] / 2
    } else {
        sizes.iter().sum()
    };
    if total != d {
        return Ok(0);
    }
    // at vertex x the factor (S_{lambda(a_{x-1})} V_x^* ⊗ S_{lambda(a_x)} V_x)^{SL}
    // is nonzero iff lambda(a_x) = lambda(a_{x-1}) + (k^{beta_x}); the chain is
    // therefore determined by the sizes
    let mut lam = Partition::empty();
    for x in 1..=n {
        let bx = beta[x - 1];
        let grow = sizes[x - 1] as i64 - lam.size() as i64;
        if bx == 0 {
            if grow != 0 || lam.height() > 0 {
                return Ok(0);
            }
            continue;
        }
        if grow % bx as i64 != 0 {
            return Ok(0);
        }
        match lam.shift(grow / bx as i64, bx) {
            Some(next) => lam = next,
            None => return Ok(0),
        }
    }
    let last = &lam;
    let ok = if m.is_multiple_of(2) {
        match kind {
            Kind::Symplectic => last.has_even_rows(),
            Kind::Orthogonal => last.has_even_columns(),
        }
    } else {
        let size = beta[n];
        if last.height() > size.min(beta[n - 1]) {
            false
        } else {
            match kind {
                Kind::Symplectic => sp_invariant_dim(last, size) == 1,
                Kind::Orthogonal => so_invariant_dim(last, size) == 1,
            }
        }
    };
    Ok(usize::from(ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_basics() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(p("3,1").transpose(), p("2,1,1"));
        assert!(p("2,2").has_even_rows() && p("2,2").has_even_columns());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p("2,1").shift(-1, 2), Some(p("1")));
        assert_eq!(p("2,1").shift(-2, 2), None);
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coeff(&p("1"), &p("1"), &p("2")), 1);
        assert_eq!(lr_coeff(&p("2,1"), &p("2,1"), &p("3,2,1")), 2);
        assert_eq!(lr_coeff(&p("2,1"), &Partition::empty(), &p("2,1")), 1);
        assert_eq!(lr_coeff(&p("2,1"), &Partition::empty(), &p("3")), 0);
    }

    #[test]
    fn dimensions() {
        assert_eq!(schur_dim(&p("1,1"), 2), 1);
        assert_eq!(schur_dim(&p("2"), 3), 6);
        assert_eq!(schur_dim(&p("1,1,1"), 2), 0);
        assert_eq!(cauchy_sym2(1, 3), vec![p("2")]);
        assert_eq!(cauchy_wedge2(1, 3), vec![p("1,1")]);
    }

    #[test]
    fn invariants() {
        assert_eq!(sl_invariant_dim(&p("3,3"), 2), 1);
        assert_eq!(sl_invariant_dim(&p("3,2"), 2), 0);
        assert_eq!(sp_invariant_dim(&p("1,1"), 2), 1);
        assert_eq!(so_invariant_dim(&p("2"), 3), 1);
        assert_eq!(so_invariant_dim(&p("1"), 3), 0);
        assert_eq!(so_invariant_dim(&p("1,1,1"), 3), 1);
        assert_eq!(sl_pair_semiinvariant(&p("2,1"), &p("1"), 2), Some(2));
        assert_eq!(sl_pair_semiinvariant(&p("2"), &p("1"), 2), None);
    }

    #[test]
    fn chain_on_a2() {
        let q = SymmetricQuiver::equioriented(2);
        let r = |x: i64| Rational::from(x);
        // det V(a) on symplectic (1,1): weight (1,-1)
        assert_eq!(chain_weight_space_dim(&q, Kind::Symplectic, &[1, 1], &[r(1), r(-1)], 1).unwrap(), 1);
        assert_eq!(chain_weight_space_dim(&q, Kind::Symplectic, &[1, 1], &[r(1), r(-1)], 2).unwrap(), 0);
        assert_eq!(chain_weight_space_dim(&q, Kind::Symplectic, &[1, 1], &[r(1), r(0)], 1).unwrap(), 0);
        // pf V(a) on orthogonal (2,2): weight (1/2,-1/2)
        let h = Rational::frac(1, 2);
        assert_eq!(chain_weight_space_dim(&q, Kind::Orthogonal, &[2, 2], &[h.clone(), -&h], 1).unwrap(), 1);
    }
}

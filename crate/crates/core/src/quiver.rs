//! Type-A quivers, the symmetric involution, and dimension-vector reflections.
//!
//! Vertices are `1..=m` left to right and arrow `a_k` joins `k` and `k + 1`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// `k -> k+1`
    Right,
    /// `k+1 -> k`
    Left,
}

impl Dir {
    pub fn flipped(self) -> Dir {
        match self {
            Dir::Right => Dir::Left,
            Dir::Left => Dir::Right,
        }
    }

    fn symbol(self) -> char {
        match self {
            Dir::Right => '>',
            Dir::Left => '<',
        }
    }
}

/// A quiver of type `A_m` with arbitrary orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    dirs: Vec<Dir>,
}

impl Quiver {
    pub fn new(dirs: Vec<Dir>) -> Self {
        Quiver { dirs }
    }

    pub fn equioriented(m: usize) -> Self {
        Quiver::new(vec![Dir::Right; m.saturating_sub(1)])
    }

    /// Number of vertices; a quiver is never empty.
    pub fn m(&self) -> usize {
        self.dirs.len() + 1
    }

    pub fn num_arrows(&self) -> usize {
        self.dirs.len()
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.dirs
    }

    pub fn dir(&self, k: usize) -> Dir {
        self.dirs[k - 1]
    }

    pub fn tail(&self, k: usize) -> usize {
        match self.dir(k) {
            Dir::Right => k,
            Dir::Left => k + 1,
        }
    }

    pub fn head(&self, k: usize) -> usize {
        match self.dir(k) {
            Dir::Right => k + 1,
            Dir::Left => k,
        }
    }

    pub fn arrows(&self) -> impl Iterator<Item = usize> {
        1..=self.dirs.len()
    }

    /// Arrows incident to vertex `x` (at most two).
    pub fn incident(&self, x: usize) -> Vec<usize> {
        let mut v = Vec::new();
        if x > 1 {
            v.push(x - 1);
        }
        if x < self.m() {
            v.push(x);
        }
        v
    }

    pub fn incoming(&self, x: usize) -> Vec<usize> {
        self.incident(x).into_iter().filter(|&k| self.head(k) == x).collect()
    }

    pub fn outgoing(&self, x: usize) -> Vec<usize> {
        self.incident(x).into_iter().filter(|&k| self.tail(k) == x).collect()
    }

    pub fn is_sink(&self, x: usize) -> bool {
        self.outgoing(x).is_empty()
    }

    pub fn is_source(&self, x: usize) -> bool {
        self.incoming(x).is_empty()
    }

    pub fn is_equioriented(&self) -> bool {
        self.dirs.windows(2).all(|w| w[0] == w[1])
    }

    /// Reverses every arrow incident to `x`.
    pub fn reflect_at(&self, x: usize) -> Quiver {
        let mut dirs = self.dirs.clone();
        for k in self.incident(x) {
            dirs[k - 1] = dirs[k - 1].flipped();
        }
        Quiver { dirs }
    }

    /// Arrows of the unique path `from -> to`, in traversal order, or `None`
    /// if the orientation does not allow it. The empty path is `Some(vec![])`.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut arrows = Vec::new();
        if from <= to {
            for k in from..to {
                if self.dir(k) != Dir::Right {
                    return None;
                }
                arrows.push(k);
            }
        } else {
            for k in (to..from).rev() {
                if self.dir(k) != Dir::Left {
                    return None;
                }
                arrows.push(k);
            }
        }
        Some(arrows)
    }

    pub fn check_dim(&self, v: &[usize]) -> Result<()> {
        if v.len() != self.m() {
            return Err(Error::Dimension(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                v.len(),
                self.m()
            )));
        }
        Ok(())
    }

    /// `sum_x a(x) b(x) - sum_a a(ta) b(ha)`
    pub fn euler_form(&self, a: &[usize], b: &[usize]) -> Result<i64> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let mut s: i64 = a.iter().zip(b).map(|(&x, &y)| (x * y) as i64).sum();
        for k in self.arrows() {
            s -= (a[self.tail(k) - 1] * b[self.head(k) - 1]) as i64;
        }
        Ok(s)
    }

    /// Dimension vector reflection `c_x` at a sink or source.
    pub fn reflect_dim(&self, x: usize, a: &[usize]) -> Result<Vec<usize>> {
        self.check_dim(a)?;
        self.check_vertex(x)?;
        if !self.is_sink(x) && !self.is_source(x) {
            return Err(Error::Quiver(format!("vertex {x} is neither a sink nor a source")));
        }
        let neighbours: usize = self
            .incident(x)
            .into_iter()
            .map(|k| a[if self.head(k) == x { self.tail(k) } else { self.head(k) } - 1])
            .sum();
        let mut out = a.to_vec();
        out[x - 1] = neighbours.checked_sub(a[x - 1]).ok_or_else(|| {
            Error::Precondition(format!(
                "reflection at {x} gives a negative dimension ({neighbours} - {})",
                a[x - 1]
            ))
        })?;
        Ok(out)
    }

    pub fn check_vertex(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.m() {
            return Err(Error::Quiver(format!("vertex {x} out of range 1..={}", self.m())));
        }
        Ok(())
    }

    /// Vertices ordered so every arrow's head precedes its tail.
    pub fn sink_order(&self) -> Vec<usize> {
        let m = self.m();
        let mut done = vec![false; m + 1];
        let mut order = Vec::with_capacity(m);
        while order.len() < m {
            let x = (1..=m)
                .find(|&x| !done[x] && self.outgoing(x).iter().all(|&k| done[self.head(k)]))
                .expect("type A quivers are acyclic");
            done[x] = true;
            order.push(x);
        }
        order
    }

    pub fn arrow_string(&self) -> String {
        self.dirs.iter().map(|d| d.symbol()).collect()
    }

    /// The image under the vertex relabelling `i -> m - i + 1`.
    pub fn sigma_image(&self) -> Quiver {
        Quiver::new(self.dirs.iter().rev().copied().collect())
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}:{}", self.m(), self.arrow_string())
    }
}

impl FromStr for Quiver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, dirs) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected A<m>:<dirs>, got {s:?}")))?;
        let m: usize = head
            .strip_prefix('A')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad quiver type {head:?}")))?;
        if m == 0 {
            return Err(Error::Parse("A0 has no vertices".into()));
        }
        let dirs: Vec<Dir> = dirs
            .chars()
            .map(|c| match c {
                '>' => Ok(Dir::Right),
                '<' => Ok(Dir::Left),
                _ => Err(Error::Parse(format!("bad arrow symbol {c:?}"))),
            })
            .collect::<Result<_>>()?;
        if dirs.len() != m - 1 {
            return Err(Error::Parse(format!(
                "A{m} needs {} arrows, got {}",
                m - 1,
                dirs.len()
            )));
        }
        Ok(Quiver::new(dirs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Plus,
    Fixed,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrowClass {
    Plus,
    Fixed,
    Minus,
}

/// A type-A quiver whose orientation is compatible with `sigma(i) = m - i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetricQuiver {
    quiver: Quiver,
}

impl SymmetricQuiver {
    pub fn new(quiver: Quiver) -> Result<Self> {
        let m = quiver.m();
        for k in 1..m {
            let s = m - k;
            if k < s && quiver.dir(k) != quiver.dir(s) {
                return Err(Error::Quiver(format!(
                    "arrows a{k} and a{s} are swapped by sigma but a{s} is not the reversal of a{k}"
                )));
            }
        }
        Ok(SymmetricQuiver { quiver })
    }

    pub fn equioriented(m: usize) -> Self {
        SymmetricQuiver {
            quiver: Quiver::equioriented(m),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn m(&self) -> usize {
        self.quiver.m()
    }

    pub fn sigma(&self, x: usize) -> usize {
        self.m() + 1 - x
    }

    pub fn sigma_arrow(&self, k: usize) -> usize {
        self.m() - k
    }

    pub fn vertex_class(&self, x: usize) -> VertexClass {
        let s = self.sigma(x);
        match x.cmp(&s) {
            std::cmp::Ordering::Less => VertexClass::Plus,
            std::cmp::Ordering::Equal => VertexClass::Fixed,
            std::cmp::Ordering::Greater => VertexClass::Minus,
        }
    }

    pub fn arrow_class(&self, k: usize) -> ArrowClass {
        let s = self.sigma_arrow(k);
        match k.cmp(&s) {
            std::cmp::Ordering::Less => ArrowClass::Plus,
            std::cmp::Ordering::Equal => ArrowClass::Fixed,
            std::cmp::Ordering::Greater => ArrowClass::Minus,
        }
    }

    /// `Q_0^+ = {1, .., floor(m/2)}`
    pub fn plus_vertices(&self) -> Vec<usize> {
        (1..=self.m() / 2).collect()
    }

    pub fn fixed_vertex(&self) -> Option<usize> {
        (self.m() % 2 == 1).then(|| self.m() / 2 + 1)
    }

    /// Arrows in `Q_1^+`, i.e. `a_k` with `k < m/2`.
    pub fn plus_arrows(&self) -> Vec<usize> {
        self.quiver
            .arrows()
            .filter(|&k| self.arrow_class(k) == ArrowClass::Plus)
            .collect()
    }

    pub fn fixed_arrow(&self) -> Option<usize> {
        (self.m().is_multiple_of(2) && self.m() >= 2).then(|| self.m() / 2)
    }

    /// Arrows carrying independent data: `Q_1^+` followed by the fixed arrow.
    pub fn data_arrows(&self) -> Vec<usize> {
        let mut v = self.plus_arrows();
        v.extend(self.fixed_arrow());
        v
    }

    pub fn is_symmetric_dim(&self, a: &[usize]) -> bool {
        a.len() == self.m() && (1..=self.m()).all(|x| a[x - 1] == a[self.sigma(x) - 1])
    }

    pub fn check_symmetric_dim(&self, a: &[usize]) -> Result<()> {
        self.quiver.check_dim(a)?;
        if let Some(x) = (1..=self.m()).find(|&x| a[x - 1] != a[self.sigma(x) - 1]) {
            return Err(Error::Dimension(format!(
                "dimension vector {a:?} is not symmetric: entries at {x} and {} differ",
                self.sigma(x)
            )));
        }
        Ok(())
    }

    pub fn euler_form(&self, a: &[usize], b: &[usize]) -> Result<i64> {
        self.quiver.euler_form(a, b)
    }

    pub fn reflect_dim(&self, x: usize, a: &[usize]) -> Result<Vec<usize>> {
        self.quiver.reflect_dim(x, a)
    }

    /// Sink/source pairs `(x, sigma(x))` with `x < sigma(x)` and no arrow
    /// between them.
    pub fn admissible_pairs(&self) -> Vec<(usize, usize)> {
        self.plus_vertices()
            .into_iter()
            .filter(|&x| self.is_admissible(x))
            .map(|x| (x, self.sigma(x)))
            .collect()
    }

    pub fn is_admissible(&self, x: usize) -> bool {
        let q = &self.quiver;
        let s = self.sigma(x);
        x != s && x.abs_diff(s) > 1 && (q.is_sink(x) || q.is_source(x))
    }

    /// `c_{(x, sigma x)}` on the orientation: reverses every arrow at `x`
    /// and `sigma(x)`.
    pub fn reflect_pair(&self, x: usize) -> Result<SymmetricQuiver> {
        self.quiver.check_vertex(x)?;
        if !self.is_admissible(x) {
            return Err(Error::Quiver(format!(
                "({x}, {}) is not an admissible sink-source pair",
                self.sigma(x)
            )));
        }
        SymmetricQuiver::new(self.quiver.reflect_at(x).reflect_at(self.sigma(x)))
    }

    pub fn reflect_pair_dim(&self, x: usize, a: &[usize]) -> Result<Vec<usize>> {
        let b = self.quiver.reflect_dim(x, a)?;
        self.quiver.reflect_at(x).reflect_dim(self.sigma(x), &b)
    }

    /// All symmetric orientations of `A_m`.
    pub fn all_orientations(m: usize) -> Vec<SymmetricQuiver> {
        let free = m.saturating_sub(1).div_ceil(2);
        let mut out = Vec::new();
        for mask in 0..(1u32 << free) {
            let mut dirs = vec![Dir::Right; m.saturating_sub(1)];
            for k in 1..=free {
                if mask >> (k - 1) & 1 == 1 {
                    dirs[k - 1] = Dir::Left;
                }
                dirs[m - k - 1] = dirs[k - 1];
            }
            out.push(SymmetricQuiver::new(Quiver::new(dirs)).expect("palindromic by construction"));
        }
        out
    }

    /// Sinks `x_1, .., x_r` of admissible pairs whose successive reflections
    /// turn `self` into `target`. Breadth-first, so the sequence is shortest.
    pub fn orientation_path(&self, target: &SymmetricQuiver) -> Result<Vec<usize>> {
        if self.m() != target.m() {
            return Err(Error::Quiver(format!(
                "cannot reorient A{} into A{}",
                self.m(),
                target.m()
            )));
        }
        if let (Some(k), true) = (self.fixed_arrow(), self.quiver.num_arrows() > 0) {
            if self.quiver.dir(k) != target.quiver.dir(k) {
                return Err(Error::Quiver(format!(
                    "{self} and {target} differ on the sigma-fixed arrow a{k}, which no admissible pair reverses"
                )));
            }
        }
        let mut prev: HashMap<SymmetricQuiver, (SymmetricQuiver, usize)> = HashMap::new();
        let mut queue = VecDeque::from([self.clone()]);
        let mut seen = std::collections::HashSet::from([self.clone()]);
        while let Some(q) = queue.pop_front() {
            if &q == target {
                let mut seq = Vec::new();
                let mut cur = q;
                while let Some((p, x)) = prev.get(&cur) {
                    seq.push(*x);
                    cur = p.clone();
                }
                seq.reverse();
                return Ok(seq);
            }
            for (x, s) in q.admissible_pairs() {
                let sink = if q.quiver.is_sink(x) { x } else { s };
                let next = q.reflect_pair(x)?;
                if seen.insert(next.clone()) {
                    prev.insert(next.clone(), (q.clone(), sink));
                    queue.push_back(next);
                }
            }
        }
        Err(Error::Internal(format!("no admissible reflection sequence from {self} to {target}")))
    }
}

impl fmt::Display for SymmetricQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.quiver.fmt(f)
    }
}

impl FromStr for SymmetricQuiver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SymmetricQuiver::new(s.parse()?)
    }
}

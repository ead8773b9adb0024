//! Exact linear algebra over prime fields, integer root coordinates for the
//! classical types, and the embeddings of `NC(W)` and `P_n` into subspace
//! lattices.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::ncp::Partition;
use crate::perm::{CoxType, Group, SignedPerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient mismatch: F_{0}^{1} vs F_{2}^{3}")]
    AmbientMismatch(u32, usize, u32, usize),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("the prime {p} is not compatible with the root system of type {ty}{n}")]
    Incompatible { ty: CoxType, n: usize, p: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat, p prime
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// A vector in `F_p^m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct VecFp {
    pub p: u32,
    coords: Vec<u32>,
}

impl VecFp {
    pub fn new(p: u32, coords: Vec<u32>) -> VecFp {
        let coords = coords.into_iter().map(|c| c % p).collect();
        VecFp { p, coords }
    }

    pub fn from_ints(p: u32, coords: &[i64]) -> VecFp {
        VecFp { p, coords: coords.iter().map(|&c| reduce(c, p)).collect() }
    }

    pub fn zero(p: u32, m: usize) -> VecFp {
        VecFp { p, coords: vec![0; m] }
    }

    /// The standard basis vector `e_i`, one-based.
    pub fn unit(p: u32, m: usize, i: usize) -> VecFp {
        let mut v = VecFp::zero(p, m);
        v.coords[i - 1] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &VecFp) -> VecFp {
        let p = self.p;
        VecFp { p, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| (a + b) % p).collect() }
    }

    pub fn scale(&self, k: u32) -> VecFp {
        let p = self.p as u64;
        VecFp { p: self.p, coords: self.coords.iter().map(|&a| (a as u64 * k as u64 % p) as u32).collect() }
    }

    /// Parse a digit string such as `01100`, or comma-separated residues.
    pub fn parse(p: u32, s: &str) -> Result<VecFp, LinalgError> {
        let s = s.trim();
        let coords: Option<Vec<u32>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse::<u32>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10)).collect()
        };
        let coords = coords.ok_or_else(|| LinalgError::Parse(format!("bad vector {s:?}")))?;
        if coords.iter().any(|&c| c >= p) || coords.is_empty() {
            return Err(LinalgError::Parse(format!("bad vector {s:?} over F_{p}")));
        }
        Ok(VecFp { p, coords })
    }
}

impl fmt::Display for VecFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p <= 10 {
            self.coords.iter().try_for_each(|c| write!(f, "{c}"))
        } else {
            write!(f, "{}", self.coords.iter().join(","))
        }
    }
}

/// Row-reduce in place to reduced echelon form, dropping zero rows.
fn rref(p: u32, rows: &mut Vec<Vec<u32>>) {
    let cols = rows.first().map_or(0, Vec::len);
    let pp = p as u64;
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p) as u64;
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * inv % pp) as u32;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let k = rows[i][c] as u64;
                for j in 0..cols {
                    let sub = k * rows[r][j] as u64 % pp;
                    rows[i][j] = ((rows[i][j] as u64 + pp - sub) % pp) as u32;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
}

/// A linear subspace of `F_p^m`, stored by its reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Subspace {
    pub p: u32,
    pub m: usize,
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(p: u32, m: usize) -> Subspace {
        Subspace { p, m, rows: Vec::new() }
    }

    pub fn full(p: u32, m: usize) -> Subspace {
        Subspace::span(p, m, (1..=m).map(|i| VecFp::unit(p, m, i)))
    }

    pub fn span(p: u32, m: usize, vecs: impl IntoIterator<Item = VecFp>) -> Subspace {
        let mut rows: Vec<Vec<u32>> = vecs
            .into_iter()
            .map(|v| {
                assert_eq!((v.p, v.dim()), (p, m), "vector from a different space");
                v.coords
            })
            .collect();
        rref(p, &mut rows);
        Subspace { p, m, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<VecFp> {
        self.rows.iter().map(|r| VecFp { p: self.p, coords: r.clone() }).collect()
    }

    fn same_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if (self.p, self.m) != (other.p, other.m) {
            return Err(LinalgError::AmbientMismatch(self.p, self.m, other.p, other.m));
        }
        Ok(())
    }

    pub fn contains(&self, v: &VecFp) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.coords.clone());
        rref(self.p, &mut rows);
        rows.len() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.same_ambient(other)?;
        let mut rows: Vec<Vec<u32>> = self.rows.iter().chain(&other.rows).cloned().collect();
        rref(self.p, &mut rows);
        Ok(Subspace { p: self.p, m: self.m, rows })
    }

    /// Zassenhaus: reduce `[u|u]` and `[w|0]`; rows with zero left half
    /// span the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.same_ambient(other)?;
        let m = self.m;
        let mut rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| r.iter().chain(r.iter()).copied().collect())
            .chain(other.rows.iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, m)).collect()))
            .collect();
        rref(self.p, &mut rows);
        let inter =
            rows.into_iter().filter(|r| r[..m].iter().all(|&x| x == 0)).map(|r| VecFp { p: self.p, coords: r[m..].to_vec() });
        Ok(Subspace::span(self.p, m, inter))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    /// Every vector of the subspace.
    pub fn members(&self) -> Vec<VecFp> {
        let basis = self.basis();
        (0..basis.len())
            .map(|_| 0..self.p)
            .multi_cartesian_product()
            .map(|ks| basis.iter().zip(ks).fold(VecFp::zero(self.p, self.m), |acc, (b, k)| acc.add(&b.scale(k))))
            .chain(basis.is_empty().then(|| VecFp::zero(self.p, self.m)))
            .collect()
    }

    /// Semicolon-joined basis rows, e.g. `1100;0010`. The zero subspace
    /// prints as `0`.
    pub fn parse(p: u32, m: usize, s: &str) -> Result<Subspace, LinalgError> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Subspace::zero(p, m));
        }
        let vecs = s.split(';').map(|t| VecFp::parse(p, t)).collect::<Result<Vec<_>, _>>()?;
        if vecs.iter().any(|v| v.dim() != m) {
            return Err(LinalgError::Parse(format!("rows of {s:?} must have length {m}")));
        }
        Ok(Subspace::span(p, m, vecs))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", self.basis().iter().join(";"))
    }
}

/// A subspace of `F_2^m` (`m ≤ 32`) with bit-vector rows in reduced
/// echelon form. Bit `k-1` is the coordinate of `e_k`; the pivot of a row
/// is its lowest set bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct F2Subspace {
    m: u8,
    dim: u8,
    rows: [u32; 32],
}

impl F2Subspace {
    pub fn zero(m: usize) -> F2Subspace {
        assert!(m <= 32, "F2Subspace supports ambient dimension at most 32");
        F2Subspace { m: m as u8, dim: 0, rows: [0; 32] }
    }

    pub fn full(m: usize) -> F2Subspace {
        F2Subspace::span(m, (0..m).map(|k| 1u32 << k))
    }

    pub fn span(m: usize, vecs: impl IntoIterator<Item = u32>) -> F2Subspace {
        let mut s = F2Subspace::zero(m);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.m as usize
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.dim as usize]
    }

    fn reduce(&self, mut v: u32) -> u32 {
        for &r in self.rows() {
            if v & (r & r.wrapping_neg()) != 0 {
                v ^= r;
            }
        }
        v
    }

    /// Add `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: u32) -> bool {
        debug_assert!(self.m == 32 || v >> self.m == 0);
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let piv = v & v.wrapping_neg();
        let d = self.dim as usize;
        for r in &mut self.rows[..d] {
            if *r & piv != 0 {
                *r ^= v;
            }
        }
        self.rows[d] = v;
        self.dim += 1;
        let d = d + 1;
        self.rows[..d].sort_unstable_by_key(|r| r.trailing_zeros());
        true
    }

    pub fn with(&self, v: u32) -> F2Subspace {
        let mut s = *self;
        s.insert(v);
        s
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    pub fn sum(&self, other: &F2Subspace) -> F2Subspace {
        let mut s = *self;
        for &r in other.rows() {
            s.insert(r);
        }
        s
    }

    pub fn intersect(&self, other: &F2Subspace) -> F2Subspace {
        // Zassenhaus on 64-bit words, left half in the high bits so that it
        // is eliminated first.
        let m = self.m as usize;
        let mut rows: Vec<u64> = self
            .rows()
            .iter()
            .map(|&u| ((u as u64) << 32) | u as u64)
            .chain(other.rows().iter().map(|&w| (w as u64) << 32))
            .collect();
        let mut basis: Vec<u64> = Vec::new();
        for mut v in rows.drain(..) {
            for &b in &basis {
                let top = 63 - b.leading_zeros();
                if v >> top & 1 == 1 {
                    v ^= b;
                }
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        F2Subspace::span(m, basis.into_iter().filter(|b| b >> 32 == 0).map(|b| b as u32))
    }

    pub fn is_subspace_of(&self, other: &F2Subspace) -> bool {
        self.rows().iter().all(|&r| other.contains(r))
    }

    /// All `2^dim` members.
    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        (0u32..1 << self.dim)
            .map(move |mask| self.rows().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, &r)| acc ^ r))
    }

    pub fn to_subspace(&self) -> Subspace {
        let m = self.ambient();
        Subspace::span(2, m, self.rows().iter().map(|&r| bits_to_vec(r, m)))
    }

    pub fn from_subspace(s: &Subspace) -> F2Subspace {
        assert_eq!(s.p, 2);
        F2Subspace::span(s.m, s.basis().iter().map(vec_to_bits))
    }

    pub fn parse(m: usize, s: &str) -> Result<F2Subspace, LinalgError> {
        Ok(F2Subspace::from_subspace(&Subspace::parse(2, m, s)?))
    }

    /// All subspaces of `F_2^m` of dimension `k`, by echelon shape.
    pub fn all_of_dim(m: usize, k: usize) -> Vec<F2Subspace> {
        let mut out = Vec::new();
        for pivots in (0..m).combinations(k) {
            // free positions: non-pivot columns after each row's pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| ((pc + 1)..m).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            for mask in 0u64..1 << free.len() {
                let mut rows: Vec<u32> = pivots.iter().map(|&pc| 1 << pc).collect();
                for (i, &(r, c)) in free.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        rows[r] |= 1 << c;
                    }
                }
                out.push(F2Subspace::span(m, rows));
            }
        }
        out
    }
}

impl fmt::Display for F2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 0 {
            return write!(f, "0");
        }
        let m = self.ambient();
        write!(f, "{}", self.rows().iter().map(|&r| bits_string(r, m)).join(";"))
    }
}

pub fn bits_to_vec(v: u32, m: usize) -> VecFp {
    VecFp::new(2, (0..m).map(|k| v >> k & 1).collect())
}

pub fn vec_to_bits(v: &VecFp) -> u32 {
    v.coords().iter().enumerate().fold(0, |acc, (k, &c)| acc | ((c & 1) << k))
}

/// `e_1..e_m` left to right.
pub fn bits_string(v: u32, m: usize) -> String {
    (0..m).map(|k| if v >> k & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<(u32, usize), LinalgError> {
    let v = VecFp::parse(2, s)?;
    if v.dim() > 32 {
        return Err(LinalgError::Parse(format!("vector {s:?} longer than 32")));
    }
    Ok((vec_to_bits(&v), v.dim()))
}

/// The vector of the edge `(i, j)`, `i < j ≤ n`, in `F_2^{n-1}`:
/// `e_i + e_j`, or `e_i` when `j = n`.
pub fn edge_to_bits(i: usize, j: usize, n: usize) -> u32 {
    let (i, j) = (i.min(j), i.max(j));
    assert!(1 <= i && i < j && j <= n, "bad edge ({i},{j}) for n = {n}");
    let v = 1u32 << (i - 1);
    if j == n {
        v
    } else {
        v | 1 << (j - 1)
    }
}

pub fn edge_to_vector(i: usize, j: usize, n: usize) -> VecFp {
    bits_to_vec(edge_to_bits(i, j, n), n - 1)
}

/// `f(π)`: the span of the edge vectors of the path through each sorted
/// block. Any spanning forest gives the same space.
pub fn embed_partition(pi: &Partition) -> F2Subspace {
    assert_eq!(pi.ty, CoxType::A);
    let n = pi.n;
    F2Subspace::span(
        n - 1,
        pi.blocks().iter().flat_map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b.windows(2).map(|w| edge_to_bits(w[0] as usize, w[1] as usize, n)).collect::<Vec<_>>()
        }),
    )
}

/// Integer positive roots of a classical type, keyed by reflection.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub group: Group,
    roots: Vec<(SignedPerm, Vec<i64>)>,
}

impl RootSystem {
    pub fn new(group: Group) -> RootSystem {
        let roots = group.reflections().into_iter().map(|t| {
            let r = root_of(&group, &t);
            (t, r)
        });
        RootSystem { group, roots: roots.collect() }
    }

    /// Dimension of the ambient space: `n - 1` in type A, `n` otherwise.
    pub fn ambient(&self) -> usize {
        ambient_dim(self.group)
    }

    pub fn roots(&self) -> &[(SignedPerm, Vec<i64>)] {
        &self.roots
    }

    pub fn root(&self, t: &SignedPerm) -> Option<&[i64]> {
        self.roots.iter().find(|(s, _)| s == t).map(|(_, r)| r.as_slice())
    }
}

pub fn ambient_dim(g: Group) -> usize {
    match g.ty {
        CoxType::A => g.n - 1,
        _ => g.n,
    }
}

/// Root of a reflection: for type A `(i j) ↦ e_i - e_j` with `e_n = 0`;
/// for types B and D `((i j)) ↦ e_i - e_j`, `((i -j)) ↦ e_i + e_j` and
/// `[i] ↦ e_i`.
pub fn root_of(g: &Group, t: &SignedPerm) -> Vec<i64> {
    let m = ambient_dim(*g);
    let mut v = vec![0i64; m];
    let a = (1..=g.n as i8).find(|&i| t.apply(i) != i).expect("reflection moves a point");
    let b = t.apply(a);
    v[a as usize - 1] = 1;
    if b == -a {
        return v;
    }
    let (bi, sign) = (b.unsigned_abs() as usize, if b > 0 { -1 } else { 1 });
    if bi <= m {
        v[bi - 1] = sign;
    }
    v
}

/// Integer determinant by fraction-free elimination.
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let k = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..k {
        let Some(piv) = (c..k).find(|&i| a[i][c] != 0) else { return 0 };
        if piv != c {
            a.swap(piv, c);
            sign = -sign;
        }
        for i in c + 1..k {
            for j in c + 1..k {
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    sign * a[k - 1][k - 1]
}

/// `p` is compatible when every rational basis made of positive roots stays
/// a basis mod `p`, i.e. no such basis has determinant divisible by `p`.
pub fn is_compatible_prime(ty: CoxType, n: usize, p: u32) -> Result<bool, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    let g = Group::new(ty, n).map_err(|e| LinalgError::Parse(e.to_string()))?;
    let rs = RootSystem::new(g);
    let m = rs.ambient();
    let roots: Vec<&Vec<i64>> = rs.roots.iter().map(|(_, r)| r).collect();
    Ok(roots.iter().combinations(m).all(|basis| {
        let d = det(basis.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect());
        d == 0 || d.rem_euclid(p as i128) != 0
    }))
}

/// The embedding `w ↦ span{α_t : t in a reduced word of w}` into
/// `Λ(F_p^m)`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub group: Group,
    pub p: u32,
    roots: RootSystem,
}

impl Embedding {
    pub fn new(group: Group, p: u32) -> Result<Embedding, LinalgError> {
        if !is_compatible_prime(group.ty, group.n, p)? {
            return Err(LinalgError::Incompatible { ty: group.ty, n: group.n, p });
        }
        Ok(Embedding { group, p, roots: RootSystem::new(group) })
    }

    pub fn ambient(&self) -> usize {
        self.roots.ambient()
    }

    pub fn root_vector(&self, t: &SignedPerm) -> VecFp {
        VecFp::from_ints(self.p, self.roots.root(t).expect("not a reflection"))
    }

    pub fn embed(&self, w: &SignedPerm) -> Subspace {
        let word = self.group.some_reduced_word(w);
        Subspace::span(self.p, self.ambient(), word.iter().map(|t| self.root_vector(t)))
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }
}

/// `f(w)` over `F_p` for `w ∈ NC(W)`.
pub fn embed_nc(g: &Group, w: &SignedPerm, p: u32) -> Result<Subspace, LinalgError> {
    Ok(Embedding::new(*g, p)?.embed(w))
}

/// `im(w - 1)` reduced mod `p`, in the coordinates of [`RootSystem`].
pub fn moved_space(g: &Group, w: &SignedPerm, p: u32) -> Subspace {
    let m = ambient_dim(*g);
    let cols = (1..=g.n as i8).map(|i| {
        let mut v = vec![0i64; g.n];
        let img = w.apply(i);
        v[img.unsigned_abs() as usize - 1] += img.signum() as i64;
        v[i as usize - 1] -= 1;
        v.truncate(m);
        VecFp::from_ints(p, &v)
    });
    Subspace::span(p, m, cols)
}

/// Gaussian binomial `[m choose k]_q`.
pub fn gaussian_binomial(m: u32, k: u32, q: u64) -> u128 {
    if k > m {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow(m) - q.pow(i);
        den *= q.pow(k) - q.pow(i);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncp::{set_partitions, NcLattice};
    use std::collections::HashSet;

    fn sp(p: u32, m: usize, s: &str) -> Subspace {
        Subspace::parse(p, m, s).unwrap()
    }

    #[test]
    fn sums_and_intersections() {
        assert_eq!(sp(2, 3, "100").sum(&sp(2, 3, "010")).unwrap(), sp(2, 3, "100;010"));
        let u = sp(2, 3, "110;001");
        let w = sp(2, 3, "011;100");
        let i = u.intersect(&w).unwrap();
        assert_eq!(i, sp(2, 3, "111"));
        // brute force
        let both: HashSet<VecFp> = u.members().into_iter().filter(|v| w.contains(v)).collect();
        assert_eq!(both, i.members().into_iter().collect());
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert!(matches!(u.sum(&sp(3, 3, "100")), Err(LinalgError::AmbientMismatch(..))));
        let fu = F2Subspace::parse(3, "110;001").unwrap();
        let fw = F2Subspace::parse(3, "011;100").unwrap();
        assert_eq!(fu.intersect(&fw).to_string(), "111");
    }

    #[test]
    fn f2_matches_generic() {
        let all: Vec<F2Subspace> = (0..=4).flat_map(|k| F2Subspace::all_of_dim(4, k)).collect();
        assert_eq!(all.len(), 67);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 67);
        for a in &all {
            let ga = a.to_subspace();
            assert_eq!(F2Subspace::from_subspace(&ga), *a);
            assert_eq!(a.members().count(), 1 << a.dim());
            for b in all.iter().step_by(3) {
                let gb = b.to_subspace();
                assert_eq!(a.sum(b).to_subspace(), ga.sum(&gb).unwrap());
                assert_eq!(a.intersect(b).to_subspace(), ga.intersect(&gb).unwrap());
                assert_eq!(a.is_subspace_of(b), ga.is_subspace_of(&gb));
                let members: HashSet<u32> = a.members().filter(|&v| b.contains(v)).collect();
                assert_eq!(members, a.intersect(b).members().collect());
            }
        }
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(F2Subspace::all_of_dim(4, 2).len(), 35);
        assert_eq!((0..=4).map(|k| gaussian_binomial(4, k, 2)).sum::<u128>(), 67);
        for m in 1..=5 {
            for k in 0..=m {
                assert_eq!(F2Subspace::all_of_dim(m, k).len() as u128, gaussian_binomial(m as u32, k as u32, 2));
            }
        }
        // F_3 check by brute force over spans of pairs
        let gens: Vec<VecFp> = (0..27u32).map(|x| VecFp::new(3, vec![x % 3, x / 3 % 3, x / 9])).collect();
        let planes: HashSet<Subspace> = gens
            .iter()
            .tuple_combinations()
            .map(|(a, b)| Subspace::span(3, 3, [a.clone(), b.clone()]))
            .filter(|s| s.dim() == 2)
            .collect();
        assert_eq!(planes.len() as u128, gaussian_binomial(3, 2, 3));
    }

    #[test]
    fn edge_vectors() {
        assert_eq!(edge_to_vector(1, 2, 5).to_string(), "1100");
        assert_eq!(edge_to_vector(1, 5, 5).to_string(), "1000");
        let n = 4;
        let vs: HashSet<u32> = (1..=n).tuple_combinations().map(|(i, j)| edge_to_bits(i, j, n)).collect();
        assert_eq!(vs.len(), 6);
    }

    #[test]
    fn cycles_are_dependent() {
        // an edge set is independent iff it is a forest
        let n = 5;
        let edges: Vec<(usize, usize)> = (1..=n).tuple_combinations().collect();
        for k in 1..=6 {
            for set in edges.iter().combinations(k) {
                let s = F2Subspace::span(n - 1, set.iter().map(|&&(i, j)| edge_to_bits(i, j, n)));
                let mut parent: Vec<usize> = (0..=n).collect();
                fn find(p: &mut Vec<usize>, x: usize) -> usize {
                    if p[x] != x {
                        let r = find(p, p[x]);
                        p[x] = r;
                    }
                    p[x]
                }
                let mut acyclic = true;
                for &&(i, j) in &set {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a == b {
                        acyclic = false;
                    }
                    parent[a] = b;
                }
                assert_eq!(acyclic, s.dim() == k);
            }
        }
    }

    #[test]
    fn compatible_primes() {
        assert!(is_compatible_prime(CoxType::A, 4, 2).unwrap());
        assert!(!is_compatible_prime(CoxType::B, 3, 2).unwrap());
        assert!(is_compatible_prime(CoxType::D, 4, 3).unwrap());
        assert!(!is_compatible_prime(CoxType::D, 4, 2).unwrap());
        for n in 2..=6 {
            for p in [2, 3, 5] {
                assert!(is_compatible_prime(CoxType::A, n, p).unwrap());
            }
        }
        for n in 2..=4 {
            assert!(is_compatible_prime(CoxType::B, n, 3).unwrap());
            assert!(is_compatible_prime(CoxType::B, n, 5).unwrap());
        }
        assert!(matches!(is_compatible_prime(CoxType::A, 4, 4), Err(LinalgError::NotPrime(4))));
        assert!(matches!(embed_nc(&Group::b(3), &Group::b(3).identity(), 2), Err(LinalgError::Incompatible { .. })));
    }

    #[test]
    fn root_projection_injective() {
        for (g, p) in [(Group::a(5), 2), (Group::b(3), 3), (Group::b(4), 3), (Group::d(4), 3), (Group::d(5), 3)] {
            let e = Embedding::new(g, p).unwrap();
            let lines: HashSet<Subspace> =
                g.reflections().iter().map(|t| Subspace::span(p, e.ambient(), [e.root_vector(t)])).collect();
            assert_eq!(lines.len(), g.reflections().len(), "{g}");
        }
    }

    #[test]
    fn embedding_examples() {
        let a5 = Group::a(5);
        let w = a5.parse("(1 2)(3 5)").unwrap();
        let expected = Subspace::span(2, 4, [edge_to_vector(1, 2, 5), edge_to_vector(3, 5, 5)]);
        assert_eq!(embed_nc(&a5, &w, 2).unwrap(), expected);
        assert_eq!(embed_nc(&a5, &a5.identity(), 2).unwrap().dim(), 0);
        let b3 = NcLattice::build(Group::b(3));
        let e = Embedding::new(b3.group, 3).unwrap();
        let images: HashSet<Subspace> = b3.elements().iter().map(|w| e.embed(w)).collect();
        assert_eq!(images.len(), 20);
    }

    #[test]
    fn embeddings_are_poset_embeddings() {
        for (ty, n, p) in [(CoxType::A, 5, 2), (CoxType::A, 6, 2), (CoxType::B, 3, 3), (CoxType::B, 4, 3), (CoxType::D, 4, 3)] {
            let l = NcLattice::build(Group::new(ty, n).unwrap());
            let e = Embedding::new(l.group, p).unwrap();
            let img: Vec<Subspace> = l.elements().iter().map(|w| e.embed(w)).collect();
            assert_eq!(img.iter().collect::<HashSet<_>>().len(), l.len());
            for i in 0..l.len() {
                assert_eq!(img[i].dim(), l.rank(i));
                assert_eq!(img[i], moved_space(&l.group, l.element(i), p));
                for j in 0..l.len() {
                    assert_eq!(l.le(i, j), img[i].is_subspace_of(&img[j]), "{ty}{n}");
                }
            }
            // every reduced word of every element gives the same span
            for i in (0..l.len()).step_by(7) {
                for word in l.group.reduced_words(l.element(i)) {
                    let s = Subspace::span(p, e.ambient(), word.letters.iter().map(|t| e.root_vector(t)));
                    assert_eq!(s, img[i]);
                }
            }
        }
    }

    #[test]
    fn partition_embedding() {
        let p = F2Subspace::parse;
        let pi = Partition::parse(CoxType::A, 4, "{1,2|3,4}").unwrap();
        assert_eq!(embed_partition(&pi), p(3, "110;001").unwrap());
        let cr = Partition::parse(CoxType::A, 4, "{1,3|2,4}").unwrap();
        assert_eq!(embed_partition(&cr).dim(), 2);
        for n in 2..=5 {
            let parts = set_partitions(n);
            let imgs: HashSet<F2Subspace> = parts.iter().map(embed_partition).collect();
            assert_eq!(imgs.len(), parts.len());
            for a in &parts {
                assert_eq!(embed_partition(a).dim(), a.rank());
                for b in &parts {
                    assert_eq!(a.refines(b), embed_partition(a).is_subspace_of(&embed_partition(b)));
                }
            }
        }
    }

    #[test]
    fn moved_space_dimension_is_length() {
        for (g, p) in [(Group::a(5), 2), (Group::b(3), 3), (Group::d(4), 3)] {
            for w in g.elements() {
                assert_eq!(moved_space(&g, &w, p).dim(), g.length(&w));
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn forest_choice_independent(seed in 0usize..203, n in 3usize..=7) {
            // random partition from its restricted growth string and a
            // random spanning tree per block
            let mut state = (seed as u64).wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut next = move |k: usize| { state = state.wrapping_mul(6364136223846793005).wrapping_add(1); (state >> 33) as usize % k };
            let mut labels = vec![0usize; n];
            let mut max = 0;
            for l in labels.iter_mut().skip(1) { *l = next(max + 2); max = max.max(*l); }
            let blocks: Vec<Vec<i8>> = (0..=max).map(|b| (1..=n as i8).filter(|&i| labels[i as usize - 1] == b).collect()).filter(|b: &Vec<i8>| !b.is_empty()).collect();
            let pi = Partition::new(CoxType::A, n, blocks.clone()).unwrap();
            let mut edges = Vec::new();
            for b in &blocks {
                for k in 1..b.len() {
                    let j = next(k);
                    edges.push(edge_to_bits(b[j] as usize, b[k] as usize, n));
                }
            }
            proptest::prop_assert_eq!(F2Subspace::span(n - 1, edges), embed_partition(&pi));
        }

        #[test]
        fn intersection_dimension_formula(a in proptest::collection::vec(0u32..64, 0..5), b in proptest::collection::vec(0u32..64, 0..5)) {
            let (u, w) = (F2Subspace::span(6, a), F2Subspace::span(6, b));
            proptest::prop_assert_eq!(u.dim() + w.dim(), u.sum(&w).dim() + u.intersect(&w).dim());
        }
    }
}

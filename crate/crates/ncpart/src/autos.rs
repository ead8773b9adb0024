//! Bipartitions of Coxeter elements, dihedral groups of lattice
//! automorphisms of `NC(W)`, full automorphism groups by search, the exotic
//! automorphism of `NC(D_4)`, extension of (anti-)automorphisms to the
//! subspace lattice, and the rank-2 reduced word tables.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::guard::{self, GuardError};
use crate::linalg::{Embedding, LinalgError, RootSystem, Subspace, VecFp};
use crate::ncp::{NcLattice, NcpError};
use crate::perm::{CoxType, CycleKind, Group, PermError, SignedPerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutosError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ncp(#[from] NcpError),
    #[error("not a lattice {0}")]
    NotAMap(String),
    #[error("the form is degenerate over F_{0}")]
    Degenerate(u32),
    #[error("extension failed: {0}")]
    Extension(String),
    #[error("{0} needs rank at least 2")]
    SmallRank(Group),
}

/// `c = l·r` with `l² = r² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub l: SignedPerm,
    pub r: SignedPerm,
}

impl Bipartition {
    pub fn is_valid(&self, c: &SignedPerm) -> bool {
        self.l.compose(&self.r) == *c && self.l.compose(&self.l).is_identity() && self.r.compose(&self.r).is_identity()
    }
}

/// Two-color the Coxeter diagram with `s_1` in the left class, multiply each
/// class, and conjugate the resulting `c'` to `c` by the conjugator of least
/// absolute length, preferring conjugators without sign changes, then the
/// canonical element order.
pub fn standard_bipartition(g: &Group) -> Result<Bipartition, AutosError> {
    if g.rank() < 2 {
        return Err(AutosError::SmallRank(*g));
    }
    let s = g.simple_reflections();
    let k = s.len();
    let commute = |i: usize, j: usize| s[i].compose(&s[j]) == s[j].compose(&s[i]);
    let mut color = vec![usize::MAX; k];
    color[0] = 0;
    let mut q = VecDeque::from([0]);
    while let Some(i) = q.pop_front() {
        for j in 0..k {
            if j != i && !commute(i, j) && color[j] == usize::MAX {
                color[j] = 1 - color[i];
                q.push_back(j);
            }
        }
    }
    let product = |cls: usize| (0..k).filter(|&i| color[i] == cls).fold(g.identity(), |acc, i| acc.compose(&s[i]));
    let (l0, r0) = (product(0), product(1));
    let c0 = l0.compose(&r0);
    let c = g.coxeter_element();
    let w = g
        .elements()
        .into_iter()
        .filter(|w| c0.conjugate_by(w) == c)
        .min_by_key(|w| (g.absolute_length(w).unwrap(), !w.is_unsigned(), w.clone()))
        .expect("Coxeter elements are conjugate");
    Ok(Bipartition { l: l0.conjugate_by(&w), r: r0.conjugate_by(&w) })
}

/// `c^k l · c^{k-1} l` for `k = 0..h`.
pub fn all_bipartitions_cyclic(g: &Group) -> Result<Vec<Bipartition>, AutosError> {
    let Bipartition { l, .. } = standard_bipartition(g)?;
    let c = g.coxeter_element();
    let h = c.order();
    let ck = |k: usize| (0..k).fold(g.identity(), |acc, _| acc.compose(&c));
    let cinv = c.inverse();
    Ok((0..h)
        .map(|k| {
            let left = ck(k).compose(&l);
            let right = if k == 0 { cinv.compose(&l) } else { ck(k - 1).compose(&l) };
            Bipartition { l: left, r: right }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// A bijection of `NC(W)` given on lattice indices, order preserving or
/// reversing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    map: Vec<usize>,
    pub orientation: Orientation,
}

impl LatticeMap {
    /// Validate a map: bijective, and covers go to covers (upwards for
    /// automorphisms, downwards for anti-automorphisms).
    pub fn new(l: &NcLattice, map: Vec<usize>) -> Result<LatticeMap, AutosError> {
        if map.len() != l.len() || map.iter().collect::<HashSet<_>>().len() != l.len() {
            return Err(AutosError::NotAMap("bijection".into()));
        }
        let orientation = if map[l.bottom()] == l.bottom() { Orientation::Preserving } else { Orientation::Reversing };
        for x in 0..l.len() {
            for &y in l.upper_covers(x) {
                let ok = match orientation {
                    Orientation::Preserving => l.upper_covers(map[x]).contains(&map[y]),
                    Orientation::Reversing => l.lower_covers(map[x]).contains(&map[y]),
                };
                if !ok {
                    return Err(AutosError::NotAMap(format!("{} {} {}", "map breaks the cover", l.fmt_elem(x), l.fmt_elem(y))));
                }
            }
        }
        Ok(LatticeMap { map, orientation })
    }

    pub fn from_fn(l: &NcLattice, f: impl Fn(&SignedPerm) -> SignedPerm) -> Result<LatticeMap, AutosError> {
        let map = l
            .elements()
            .iter()
            .map(|w| l.index_of(&f(w)).ok_or_else(|| AutosError::NotAMap(format!("image of {} leaves NC", l.group.fmt_elem(w)))))
            .collect::<Result<Vec<_>, _>>()?;
        LatticeMap::new(l, map)
    }

    /// The automorphism with the given atom images, extended by joins.
    pub fn from_atoms(l: &NcLattice, images: &HashMap<usize, usize>) -> Result<LatticeMap, AutosError> {
        let atoms = l.atoms();
        let map = (0..l.len()).map(|x| l.join_all(atoms.iter().filter(|&&a| l.le(a, x)).map(|a| images[a]))).collect();
        LatticeMap::new(l, map)
    }

    pub fn identity(l: &NcLattice) -> LatticeMap {
        LatticeMap { map: (0..l.len()).collect(), orientation: Orientation::Preserving }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        let orientation = if self.orientation == other.orientation { Orientation::Preserving } else { Orientation::Reversing };
        LatticeMap { map: other.map.iter().map(|&i| self.map[i]).collect(), orientation }
    }

    pub fn inverse(&self) -> LatticeMap {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        LatticeMap { map, orientation: self.orientation }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Pairs `w ↦ φ(w)` in cycle notation.
    pub fn pairs(&self, l: &NcLattice) -> Vec<(String, String)> {
        (0..l.len()).map(|i| (l.fmt_elem(i), l.fmt_elem(self.map[i]))).collect()
    }
}

/// Closure of a set of maps under composition.
pub fn generate(gens: &[LatticeMap]) -> Vec<LatticeMap> {
    let Some(first) = gens.first() else { return Vec::new() };
    let id = LatticeMap { map: (0..first.map.len()).collect(), orientation: Orientation::Preserving };
    let mut seen: HashSet<LatticeMap> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut q = VecDeque::from([id]);
    while let Some(x) = q.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                q.push_back(y);
            }
        }
    }
    out
}

/// `φ_l(w) = l w⁻¹ l`.
pub fn phi_left(l: &NcLattice, b: &Bipartition) -> LatticeMap {
    LatticeMap::from_fn(l, |w| b.l.compose(&w.inverse()).compose(&b.l)).expect("φ_l is an automorphism")
}

/// `φ_r(w) = r w⁻¹ r`.
pub fn phi_right(l: &NcLattice, b: &Bipartition) -> LatticeMap {
    LatticeMap::from_fn(l, |w| b.r.compose(&w.inverse()).compose(&b.r)).expect("φ_r is an automorphism")
}

/// `φ_n(w) = [n] w [n]` on `NC(D_n)`.
pub fn phi_n(l: &NcLattice) -> LatticeMap {
    let n = l.group.n;
    let sn = SignedPerm::reflection(n, n as i8, -(n as i8));
    LatticeMap::from_fn(l, |w| sn.compose(w).compose(&sn)).expect("φ_n is an automorphism")
}

/// The Kreweras map `w ↦ w⁻¹c`.
pub fn kreweras_map(l: &NcLattice) -> LatticeMap {
    let c = l.coxeter_element().clone();
    LatticeMap::from_fn(l, |w| w.inverse().compose(&c)).expect("the Kreweras map is an anti-automorphism")
}

/// Conjugation by `g`, when it preserves `NC`.
pub fn conjugation(l: &NcLattice, g: &SignedPerm) -> Result<LatticeMap, AutosError> {
    LatticeMap::from_fn(l, |w| w.conjugate_by(g))
}

/// `𝒟 = ⟨φ_l, φ_r⟩`.
pub fn dihedral_group(l: &NcLattice) -> Result<Vec<LatticeMap>, AutosError> {
    let b = standard_bipartition(&l.group)?;
    Ok(generate(&[phi_left(l, &b), phi_right(l, &b)]))
}

/// `𝒟* = ⟨φ_l, φ_r ∘ φ_n⟩` for type D.
pub fn dihedral_star_group(l: &NcLattice) -> Result<Vec<LatticeMap>, AutosError> {
    let b = standard_bipartition(&l.group)?;
    Ok(generate(&[phi_left(l, &b), phi_right(l, &b).compose(&phi_n(l))]))
}

/// `𝒟̂ = ⟨φ_l, w ↦ w⁻¹c⟩`.
pub fn skew_group(l: &NcLattice) -> Result<Vec<LatticeMap>, AutosError> {
    let b = standard_bipartition(&l.group)?;
    Ok(generate(&[phi_left(l, &b), kreweras_map(l)]))
}

/// Dihedral group order predicted for the standard Coxeter element.
pub fn expected_dihedral_order(g: &Group) -> usize {
    match g.ty {
        CoxType::A => 2 * g.n,
        CoxType::B => 2 * g.n,
        CoxType::D if g.n % 2 == 1 => 4 * (g.n - 1),
        CoxType::D => 2 * (g.n - 1),
    }
}

/// All lattice isomorphisms `a → b` (or only the first), by backtracking
/// over atom images kept consistent on joins of atom pairs.
fn atom_isomorphisms(a: &NcLattice, b: &NcLattice, first_only: bool) -> Vec<Vec<usize>> {
    let (aa, ba) = (a.atoms(), b.atoms());
    if a.len() != b.len() || aa.len() != ba.len() || a.rank_profile() != b.rank_profile() {
        return Vec::new();
    }
    let deg = |l: &NcLattice, x: usize| {
        (l.upper_covers(x).len(), l.upper_covers(x).iter().map(|&y| l.lower_covers(y).len()).sorted().collect_vec())
    };
    let adeg: Vec<_> = aa.iter().map(|&x| deg(a, x)).collect();
    let bdeg: Vec<_> = ba.iter().map(|&x| deg(b, x)).collect();
    struct Search<'s> {
        a: &'s NcLattice,
        b: &'s NcLattice,
        aa: &'s [usize],
        ba: &'s [usize],
        ok: Vec<Vec<bool>>,
        assign: Vec<usize>,
        used: Vec<bool>,
        rank2: HashMap<usize, usize>,
        found: Vec<Vec<usize>>,
        first_only: bool,
    }
    impl Search<'_> {
        fn run(&mut self, k: usize) {
            if self.first_only && !self.found.is_empty() {
                return;
            }
            if k == self.aa.len() {
                let images: HashMap<usize, usize> = (0..k).map(|i| (self.aa[i], self.ba[self.assign[i]])).collect();
                let map: Vec<usize> = (0..self.a.len())
                    .map(|x| self.b.join_all(self.aa.iter().filter(|&&t| self.a.le(t, x)).map(|t| images[t])))
                    .collect();
                if is_isomorphism(self.a, self.b, &map) {
                    self.found.push(map);
                }
                return;
            }
            for j in 0..self.ba.len() {
                if self.used[j] || !self.ok[k][j] {
                    continue;
                }
                let mut added = Vec::new();
                let mut consistent = true;
                for i in 0..k {
                    let x = self.a.join(self.aa[i], self.aa[k]);
                    let y = self.b.join(self.ba[self.assign[i]], self.ba[j]);
                    if self.a.rank(x) != self.b.rank(y) {
                        consistent = false;
                        break;
                    }
                    match self.rank2.get(&x) {
                        Some(&z) if z != y => {
                            consistent = false;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            self.rank2.insert(x, y);
                            added.push(x);
                        }
                    }
                }
                if consistent {
                    self.used[j] = true;
                    self.assign[k] = j;
                    self.run(k + 1);
                    self.used[j] = false;
                }
                for x in added {
                    self.rank2.remove(&x);
                }
            }
        }
    }
    let ok = adeg.iter().map(|d| bdeg.iter().map(|e| d == e).collect()).collect();
    let mut s = Search {
        a,
        b,
        aa: &aa,
        ba: &ba,
        ok,
        assign: vec![0; aa.len()],
        used: vec![false; ba.len()],
        rank2: HashMap::new(),
        found: Vec::new(),
        first_only,
    };
    s.run(0);
    s.found
}

fn is_isomorphism(a: &NcLattice, b: &NcLattice, map: &[usize]) -> bool {
    map.iter().collect::<HashSet<_>>().len() == a.len()
        && (0..a.len()).all(|x| a.upper_covers(x).iter().all(|&y| b.upper_covers(map[x]).contains(&map[y])))
}

/// `Aut(NC(W))` by search.
pub fn full_aut_group(l: &NcLattice) -> Result<Vec<LatticeMap>, AutosError> {
    let limit = match l.group.ty {
        CoxType::A => 5,
        _ => 4,
    };
    guard::check(&format!("Aut(NC({}))", l.group), l.group.n, limit)?;
    Ok(atom_isomorphisms(l, l, false).into_iter().map(|map| LatticeMap { map, orientation: Orientation::Preserving }).collect())
}

/// A lattice isomorphism between two `NC` lattices, if one exists.
pub fn find_isomorphism(a: &NcLattice, b: &NcLattice) -> Option<Vec<usize>> {
    atom_isomorphisms(a, b, true).pop()
}

/// The seven reflection assignments of the exotic automorphism of
/// `NC(D_4)`; pairs are swapped.
pub const ZETA_PAIRS: [(&str, &str); 7] = [
    ("((1 2))", "((1 4))"),
    ("((2 3))", "((3 4))"),
    ("((1 -3))", "((-2 4))"),
    ("((-1 4))", "((-3 4))"),
    ("((2 4))", "((2 4))"),
    ("((2 -3))", "((1 -2))"),
    ("((1 3))", "((1 3))"),
];

/// The exotic involutive automorphism `ζ` of `NC(D_4)`.
pub fn exotic_zeta(l: &NcLattice) -> Result<LatticeMap, AutosError> {
    assert_eq!((l.group.ty, l.group.n), (CoxType::D, 4), "ζ lives on NC(D4)");
    let mut images = HashMap::new();
    for (x, y) in ZETA_PAIRS {
        let (i, j) = (l.parse_elem(x)?, l.parse_elem(y)?);
        images.insert(i, j);
        images.insert(j, i);
    }
    LatticeMap::from_atoms(l, &images)
}

/// Type of a rank-1 element in types B and D, following the length of the
/// corresponding edge in the pictorial representation.
pub fn reflection_type(g: &Group, t: &SignedPerm) -> i32 {
    let n = g.n as i32;
    let a = (1..=g.n as i8).find(|&i| t.apply(i) != i).unwrap() as i32;
    let b = t.apply(a as i8) as i32;
    if b == -a {
        return -1;
    }
    let (i, j) = (a.min(b.abs()), a.max(b.abs()));
    let same = (b > 0) == (a > 0);
    match g.ty {
        CoxType::B if same => j - i + 1,
        CoxType::B => n + i - j + 1,
        CoxType::D if j == n => n,
        CoxType::D if same => j - i + 1,
        CoxType::D => n + i - j,
        CoxType::A => j - i + 1,
    }
}

/// Type of a rank-2 element in types B and D, following the kinds of its
/// cycles. In type D the value counts non-trivial blocks of the picture, so
/// `⟪a b⟫⟪c n⟫` is 3 and `⟪a b⟫⟪c d⟫` is 4.
pub fn rank2_type(g: &Group, x: &SignedPerm) -> i32 {
    let cycles = x.cycles(true);
    let n = g.n as i8;
    let kinds: Vec<(CycleKind, usize)> = cycles.iter().map(|c| (c.kind, c.len())).sorted().collect();
    let touches_n = cycles.iter().any(|c| c.entries.iter().any(|e| e.abs() == n));
    use CycleKind::*;
    match (g.ty, kinds.as_slice()) {
        (CoxType::B, [(Balanced, 2)]) => 1,
        (CoxType::B, [(Paired, 3)]) => 2,
        (CoxType::B, [(Paired, 2), (Balanced, 1)]) => 3,
        (CoxType::B, [(Paired, 2), (Paired, 2)]) => 4,
        (CoxType::D, [(Balanced, 1), (Balanced, 1)]) => -1,
        (CoxType::D, [(Paired, 3)]) if touches_n => 1,
        (CoxType::D, [(Paired, 3)]) => 2,
        (CoxType::D, [(Paired, 2), (Paired, 2)]) if touches_n => 3,
        (CoxType::D, [(Paired, 2), (Paired, 2)]) => 4,
        _ => 0,
    }
}

/// A square matrix over `F_p`, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub p: u32,
    rows: Vec<Vec<u32>>,
}

impl LinearMap {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn identity(p: u32, m: usize) -> LinearMap {
        LinearMap { p, rows: (0..m).map(|i| (0..m).map(|j| u32::from(i == j)).collect()).collect() }
    }

    /// The map sending `src[i]` to `dst[i]`; `src` must be a basis.
    pub fn from_basis_images(p: u32, src: &[VecFp], dst: &[VecFp]) -> Option<LinearMap> {
        let m = src.len();
        let x = LinearMap { p, rows: (0..m).map(|i| src.iter().map(|v| v.coords()[i]).collect()).collect() };
        let y = LinearMap { p, rows: (0..m).map(|i| dst.iter().map(|v| v.coords()[i]).collect()).collect() };
        Some(y.mul(&x.inverse()?))
    }

    pub fn mul(&self, other: &LinearMap) -> LinearMap {
        let (m, p) = (self.dim(), self.p as u64);
        let rows = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| ((0..m).map(|k| self.rows[i][k] as u64 * other.rows[k][j] as u64).sum::<u64>() % p) as u32)
                    .collect()
            })
            .collect();
        LinearMap { p: self.p, rows }
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<LinearMap> {
        let (m, p) = (self.dim(), self.p as u64);
        let mut a: Vec<Vec<u64>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|&x| x as u64).chain((0..m).map(|j| u64::from(i == j))).collect())
            .collect();
        for col in 0..m {
            let piv = (col..m).find(|&r| a[r][col] != 0)?;
            a.swap(col, piv);
            let inv = mod_inverse(a[col][col], p);
            a[col].iter_mut().for_each(|x| *x = *x * inv % p);
            for r in 0..m {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for k in 0..2 * m {
                        a[r][k] = (a[r][k] + p * p - f * a[col][k] % p) % p;
                    }
                }
            }
        }
        Some(LinearMap { p: self.p, rows: a.into_iter().map(|r| r[m..].iter().map(|&x| x as u32).collect()).collect() })
    }

    pub fn apply(&self, v: &VecFp) -> VecFp {
        let p = self.p as u64;
        VecFp::new(
            self.p,
            self.rows
                .iter()
                .map(|r| (r.iter().zip(v.coords()).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32)
                .collect(),
        )
    }

    pub fn image(&self, u: &Subspace) -> Subspace {
        Subspace::span(self.p, self.dim(), u.basis().iter().map(|v| self.apply(v)))
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    (1..p).find(|&x| a * x % p == 1).expect("p is prime and a ≠ 0")
}

/// The automorphism `φ` extended to a linear map `ψ` with
/// `ψ(α_{s_i}) = ±α_{φ(s_i)}` on the simple roots, the signs being chosen
/// so that every root line goes to the line of its image. Checks
/// `Ψ ∘ f = f ∘ φ` on all of `NC`.
pub fn extend_to_lambda(l: &NcLattice, phi: &LatticeMap, p: u32) -> Result<LinearMap, AutosError> {
    if phi.orientation != Orientation::Preserving {
        return Err(AutosError::Extension("only automorphisms extend linearly".into()));
    }
    let g = l.group;
    let emb = Embedding::new(g, p)?;
    let simple = g.simple_reflections();
    let src: Vec<VecFp> = simple.iter().map(|s| emb.root_vector(s)).collect();
    let img = |t: &SignedPerm| l.element(phi.apply(l.index_of(t).unwrap())).clone();
    let dst0: Vec<VecFp> = simple.iter().map(|s| emb.root_vector(&img(s))).collect();
    let lines: Vec<(VecFp, Subspace)> = g
        .reflections()
        .iter()
        .map(|t| (emb.root_vector(t), Subspace::span(p, emb.ambient(), [emb.root_vector(&img(t))])))
        .collect();
    let embedded: Vec<Subspace> = l.elements().iter().map(|w| emb.embed(w)).collect();
    let m = src.len();
    let sign_choices = if p == 2 { 1 } else { 1usize << (m - 1) };
    for mask in 0..sign_choices {
        let dst: Vec<VecFp> = dst0
            .iter()
            .enumerate()
            .map(|(i, v)| if i > 0 && mask >> (i - 1) & 1 == 1 { v.scale(p - 1) } else { v.clone() })
            .collect();
        let Some(psi) = LinearMap::from_basis_images(p, &src, &dst) else {
            return Err(AutosError::Extension("simple roots are not a basis".into()));
        };
        if !lines.iter().all(|(v, line)| line.contains(&psi.apply(v))) {
            continue;
        }
        if (0..l.len()).all(|i| psi.image(&embedded[i]) == embedded[phi.apply(i)]) {
            return Ok(psi);
        }
    }
    Err(AutosError::Extension("no sign choice maps root lines to root lines".into()))
}

/// An integer bilinear form reduced mod `p` on use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub coef: Vec<Vec<i64>>,
}

impl BilinearForm {
    /// The triangular forms for types A, B, D.
    pub fn standard(g: &Group) -> BilinearForm {
        let m = crate::linalg::ambient_dim(*g);
        let n = g.n;
        let entry = |i: usize, j: usize| -> i64 {
            match g.ty {
                CoxType::A => i64::from(i <= j),
                CoxType::B => {
                    if i <= j {
                        1
                    } else {
                        -1
                    }
                }
                CoxType::D => {
                    if (i <= j && j < n) || (i == n && j == n) {
                        1
                    } else if j < i && i < n {
                        -1
                    } else {
                        0
                    }
                }
            }
        };
        BilinearForm { coef: (1..=m).map(|i| (1..=m).map(|j| entry(i, j)).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coef.len()
    }

    pub fn eval_int(&self, u: &[i64], v: &[i64]) -> i64 {
        (0..self.dim()).flat_map(|i| (0..self.dim()).map(move |j| (i, j))).map(|(i, j)| u[i] * self.coef[i][j] * v[j]).sum()
    }

    fn matrix(&self, p: u32) -> LinearMap {
        LinearMap { p, rows: self.coef.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect()).collect() }
    }

    pub fn is_nondegenerate(&self, p: u32) -> bool {
        self.matrix(p).inverse().is_some()
    }

    /// `U^⊥ = {v : b(u, v) = 0 for all u ∈ U}`.
    pub fn right_complement(&self, u: &Subspace) -> Result<Subspace, AutosError> {
        let b = self.matrix(u.p);
        if b.inverse().is_none() {
            return Err(AutosError::Degenerate(u.p));
        }
        // rows u^T B
        let eqs: Vec<Vec<u32>> = u
            .basis()
            .iter()
            .map(|x| {
                (0..u.m)
                    .map(|j| ((0..u.m).map(|i| x.coords()[i] as u64 * b.rows[i][j] as u64).sum::<u64>() % u.p as u64) as u32)
                    .collect()
            })
            .collect();
        Ok(kernel(u.p, u.m, &eqs))
    }

    /// `⊥U = {v : b(v, u) = 0 for all u ∈ U}`.
    pub fn left_complement(&self, u: &Subspace) -> Result<Subspace, AutosError> {
        let b = self.matrix(u.p);
        if b.inverse().is_none() {
            return Err(AutosError::Degenerate(u.p));
        }
        let eqs: Vec<Vec<u32>> = u.basis().iter().map(|x| b.apply(x).coords().to_vec()).collect();
        Ok(kernel(u.p, u.m, &eqs))
    }
}

/// Solutions of the linear system with the given equation rows.
fn kernel(p: u32, m: usize, eqs: &[Vec<u32>]) -> Subspace {
    let rows = Subspace::span(p, m, eqs.iter().map(|r| VecFp::new(p, r.clone())));
    let basis = rows.basis();
    let pivots: Vec<usize> = basis.iter().map(|r| r.coords().iter().position(|&x| x != 0).unwrap()).collect();
    let free = (0..m).filter(|j| !pivots.contains(j));
    let vecs = free.map(|f| {
        let mut v = vec![0u32; m];
        v[f] = 1;
        for (r, &pc) in basis.iter().zip(&pivots) {
            // rows are reduced with unit pivots
            v[pc] = (p - r.coords()[f]) % p;
        }
        VecFp::new(p, v)
    });
    Subspace::span(p, m, vecs)
}

/// `sub(t) = {s ≠ t : st ∈ NC}`.
pub fn subordination(l: &NcLattice, t: &SignedPerm) -> Vec<SignedPerm> {
    l.group.reflections().into_iter().filter(|s| s != t && l.index_of(&s.compose(t)).is_some()).collect()
}

/// Pairs `(s, t)` with `s ∈ sub(t)` where the standard form does not
/// vanish on the integer roots.
pub fn form_violations(l: &NcLattice) -> Vec<(SignedPerm, SignedPerm)> {
    let g = l.group;
    let b = BilinearForm::standard(&g);
    let rs = RootSystem::new(g);
    let mut bad = Vec::new();
    for t in g.reflections() {
        for s in subordination(l, &t) {
            if b.eval_int(rs.root(&s).unwrap(), rs.root(&t).unwrap()) != 0 {
                bad.push((s, t.clone()));
            }
        }
    }
    bad
}

/// Elements `w` where `f(w)^⊥ ≠ f(w⁻¹c)` for the standard form.
pub fn antiauto_extension_violations(l: &NcLattice, p: u32) -> Result<Vec<usize>, AutosError> {
    let g = l.group;
    let emb = Embedding::new(g, p)?;
    let b = BilinearForm::standard(&g);
    if !b.is_nondegenerate(p) {
        return Err(AutosError::Degenerate(p));
    }
    let k = kreweras_map(l);
    let mut bad = Vec::new();
    for i in 0..l.len() {
        let lhs = b.right_complement(&emb.embed(l.element(i)))?;
        if lhs != emb.embed(l.element(k.apply(i))) {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// One row of a rank-2 reduced word table: an element pattern and its
/// reduced words as pairs of reflection patterns over the letters
/// `a, b, c, d, n`.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub element: &'static str,
    pub words: &'static [(&'static str, &'static str)],
}

/// A block of rows sharing a letter constraint.
#[derive(Clone, Copy, Debug)]
pub struct TableBlock {
    /// Letters with `1 ≤ x_1 < x_2 < .. ≤ bound` where bound is `n` or `n-1`.
    pub chain: &'static [char],
    pub strict_below_n: bool,
    pub rows: &'static [TableRow],
}

const fn row(element: &'static str, words: &'static [(&'static str, &'static str)]) -> TableRow {
    TableRow { element, words }
}

/// Reduced words of the rank-2 elements of `NC(B_n)`. The third word of
/// `⟪a b −c⟫` is `⟪a −c⟫⟪a b⟫`; `⟪a −c⟫⟪a −b⟫` is a word of `⟪a −b −c⟫`.
pub const TABLE_B: [TableBlock; 3] = [
    TableBlock {
        chain: &['a', 'b'],
        strict_below_n: false,
        rows: &[row("[a b]", &[("((a b))", "[b]"), ("((a -b))", "[a]"), ("[a]", "((a b))"), ("[b]", "((a -b))")])],
    },
    TableBlock {
        chain: &['a', 'b', 'c'],
        strict_below_n: false,
        rows: &[
            row("((a -c))[b]", &[("((a -c))", "[b]"), ("[b]", "((a -c))")]),
            row("((b c))[a]", &[("((b c))", "[a]"), ("[a]", "((b c))")]),
            row("((a b))[c]", &[("((a b))", "[c]"), ("[c]", "((a b))")]),
            row("((a b c))", &[("((a b))", "((b c))"), ("((b c))", "((a c))"), ("((a c))", "((a b))")]),
            row("((a b -c))", &[("((a b))", "((b -c))"), ("((b -c))", "((a -c))"), ("((a -c))", "((a b))")]),
            row("((a -b -c))", &[("((a -b))", "((b c))"), ("((b c))", "((a -c))"), ("((a -c))", "((a -b))")]),
        ],
    },
    TableBlock {
        chain: &['a', 'b', 'c', 'd'],
        strict_below_n: false,
        rows: &[
            row("((a b))((c d))", &[("((a b))", "((c d))"), ("((c d))", "((a b))")]),
            row("((a b))((c -d))", &[("((a b))", "((c -d))"), ("((c -d))", "((a b))")]),
            row("((a -b))((c d))", &[("((a -b))", "((c d))"), ("((c d))", "((a -b))")]),
            row("((a d))((b c))", &[("((a d))", "((b c))"), ("((b c))", "((a d))")]),
            row("((a -d))((b c))", &[("((a -d))", "((b c))"), ("((b c))", "((a -d))")]),
            row("((a -d))((b -c))", &[("((a -d))", "((b -c))"), ("((b -c))", "((a -d))")]),
        ],
    },
];

/// Reduced words of the rank-2 elements of `NC(D_n)`. The row of `[c][n]`
/// uses the letter `c` in its words as well, and `⟪a b −c⟫` is corrected as
/// in [`TABLE_B`].
pub const TABLE_D: [TableBlock; 4] = [
    TableBlock {
        chain: &['a', 'b', 'c'],
        strict_below_n: true,
        rows: &[
            row("((a b c))", &[("((a b))", "((b c))"), ("((b c))", "((a c))"), ("((a c))", "((a b))")]),
            row("((a b -c))", &[("((a b))", "((b -c))"), ("((b -c))", "((a -c))"), ("((a -c))", "((a b))")]),
            row("((a -b -c))", &[("((a -b))", "((b c))"), ("((b c))", "((a -c))"), ("((a -c))", "((a -b))")]),
            row("((a b))((c n))", &[("((a b))", "((c n))"), ("((c n))", "((a b))")]),
            row("((a b))((-c n))", &[("((a b))", "((-c n))"), ("((-c n))", "((a b))")]),
            row("((b c))((a n))", &[("((b c))", "((a n))"), ("((a n))", "((b c))")]),
            row("((b c))((-a n))", &[("((b c))", "((-a n))"), ("((-a n))", "((b c))")]),
            row("((a -c))((b n))", &[("((a -c))", "((b n))"), ("((b n))", "((a -c))")]),
            row("((a -c))((-b n))", &[("((a -c))", "((-b n))"), ("((-b n))", "((a -c))")]),
        ],
    },
    TableBlock {
        chain: &['a', 'b'],
        strict_below_n: true,
        rows: &[
            row("((a b n))", &[("((a b))", "((b n))"), ("((b n))", "((a n))"), ("((a n))", "((a b))")]),
            row("((-a -b n))", &[("((a b))", "((-b n))"), ("((-b n))", "((-a n))"), ("((-a n))", "((a b))")]),
            row("((b -a n))", &[("((a -b))", "((-a n))"), ("((-a n))", "((b n))"), ("((b n))", "((a -b))")]),
            row("((-b a n))", &[("((a -b))", "((a n))"), ("((a n))", "((-b n))"), ("((-b n))", "((a -b))")]),
        ],
    },
    TableBlock {
        chain: &['c'],
        strict_below_n: true,
        rows: &[row("[c][n]", &[("((c n))", "((-c n))"), ("((-c n))", "((c n))")])],
    },
    TableBlock {
        chain: &['a', 'b', 'c', 'd'],
        strict_below_n: true,
        rows: &[
            row("((a b))((c d))", &[("((a b))", "((c d))"), ("((c d))", "((a b))")]),
            row("((a b))((c -d))", &[("((a b))", "((c -d))"), ("((c -d))", "((a b))")]),
            row("((a -b))((c d))", &[("((a -b))", "((c d))"), ("((c d))", "((a -b))")]),
            row("((a d))((b c))", &[("((a d))", "((b c))"), ("((b c))", "((a d))")]),
            row("((a -d))((b c))", &[("((a -d))", "((b c))"), ("((b c))", "((a -d))")]),
            row("((a -d))((b -c))", &[("((a -d))", "((b -c))"), ("((b -c))", "((a -d))")]),
        ],
    },
];

fn substitute(pattern: &str, letters: &HashMap<char, usize>) -> String {
    pattern.chars().map(|ch| letters.get(&ch).map_or(ch.to_string(), |v| v.to_string())).collect()
}

/// Mismatches between a table and machine enumeration of the rank-2
/// elements of `NC` and their reduced words. Empty means the table is
/// reproduced exactly: every instantiated row is a rank-2 element with
/// exactly the listed reduced words, and every rank-2 element is matched
/// by exactly one instantiated row.
pub fn table_mismatches(l: &NcLattice, table: &[TableBlock]) -> Vec<String> {
    let g = l.group;
    let n = g.n;
    let refl = g.reflections();
    let mut bad = Vec::new();
    let mut covered: HashMap<usize, usize> = HashMap::new();
    for block in table {
        let bound = if block.strict_below_n { n - 1 } else { n };
        for vals in (1..=bound).combinations(block.chain.len()) {
            let mut letters: HashMap<char, usize> = block.chain.iter().copied().zip(vals).collect();
            letters.insert('n', n);
            for r in block.rows {
                let elem_s = substitute(r.element, &letters);
                let Ok(w) = g.parse(&elem_s) else {
                    bad.push(format!("{elem_s} does not parse"));
                    continue;
                };
                let Some(i) = l.index_of(&w).filter(|&i| l.rank(i) == 2) else {
                    bad.push(format!("{elem_s} is not a rank-2 element of NC"));
                    continue;
                };
                *covered.entry(i).or_default() += 1;
                let listed: BTreeSet<(SignedPerm, SignedPerm)> = r
                    .words
                    .iter()
                    .filter_map(|(s, t)| Some((g.parse(&substitute(s, &letters)).ok()?, g.parse(&substitute(t, &letters)).ok()?)))
                    .collect();
                let actual: BTreeSet<(SignedPerm, SignedPerm)> = refl
                    .iter()
                    .flat_map(|s| refl.iter().map(move |t| (s.clone(), t.clone())))
                    .filter(|(s, t)| s.compose(t) == w)
                    .collect();
                if listed != actual || listed.len() != r.words.len() {
                    bad.push(format!("{elem_s}: listed {} words, enumeration finds {}", listed.len(), actual.len()));
                }
            }
        }
    }
    for i in l.of_rank(2) {
        match covered.get(&i) {
            Some(1) => {}
            Some(k) => bad.push(format!("{} is listed {k} times", l.fmt_elem(i))),
            None => bad.push(format!("{} is missing from the table", l.fmt_elem(i))),
        }
    }
    bad
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ty = if self.l.is_unsigned() && self.r.is_unsigned() { CoxType::A } else { CoxType::B };
        write!(f, "{} · {}", self.l.display(ty), self.r.display(ty))
    }
}

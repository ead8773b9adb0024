//! Non-crossing partition lattices `NC(W, c)` for types A, B and D, their
//! pictorial partitions, and the lattice structure used everywhere else.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::guard::{self, GuardError};
use crate::perm::{CoxType, Cycle, CycleKind, Group, PermError, SignedPerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcpError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error("{0} is not below the Coxeter element")]
    NotNonCrossing(String),
    #[error("blocks {0} and {1} cross")]
    Crossing(String, String),
    #[error("invalid partition: {0}")]
    Invalid(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `N(n, k) = binom(n,k) binom(n,k-1) / n`, the number of elements of
/// `NCP_n` with `k` blocks.
pub fn narayana(n: u64, k: u64) -> u64 {
    if n == 0 || k == 0 || k > n {
        return u64::from(n == 0 && k == 0);
    }
    binomial(n, k) * binomial(n, k - 1) / n
}

/// Bell numbers by the triangle recurrence.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Closed-form `|NC(W)|`.
pub fn nc_cardinality(ty: CoxType, n: usize) -> u64 {
    let n = n as u64;
    match ty {
        CoxType::A => catalan(n),
        CoxType::B => binomial(2 * n, n),
        CoxType::D => (3 * n - 2) * binomial(2 * n - 2, n - 1) / n,
    }
}

/// A partition of `{1..n}` (type A) or of `{±1..±n}` (types B and D).
/// Blocks are stored in circular order and sorted by their least absolute
/// entry, the block holding that entry positively first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    pub ty: CoxType,
    pub n: usize,
    blocks: Vec<Vec<i8>>,
}

fn block_key(n: usize, b: &[i8]) -> (u8, bool) {
    let m = b.iter().min_by_key(|x| x.unsigned_abs()).unwrap();
    let pos = b.iter().any(|&x| x == m.abs());
    (m.unsigned_abs(), !pos && n > 0)
}

impl Partition {
    /// Build from blocks, checking the axioms of the type. For signed types
    /// every block `B` must come with `-B`.
    pub fn new(ty: CoxType, n: usize, blocks: Vec<Vec<i8>>) -> Result<Partition, NcpError> {
        let mut seen = HashSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(NcpError::Invalid("empty block".into()));
            }
            for &x in b {
                if x == 0 || x.unsigned_abs() as usize > n || (ty == CoxType::A && x < 0) {
                    return Err(NcpError::Invalid(format!("entry {x} out of range")));
                }
                if !seen.insert(x) {
                    return Err(NcpError::Invalid(format!("entry {x} repeated")));
                }
            }
        }
        let total = if ty == CoxType::A { n } else { 2 * n };
        if seen.len() != total {
            return Err(NcpError::Invalid("blocks do not cover the ground set".into()));
        }
        let mut blocks: Vec<Vec<i8>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_by_key(|&x| SignedPerm::circular_position(n, x));
                b
            })
            .collect();
        blocks.sort_by_key(|b| block_key(n, b));
        let p = Partition { ty, n, blocks };
        if ty.is_signed() {
            let set: HashSet<Vec<i8>> = p.blocks.iter().map(|b| sorted(b)).collect();
            for b in &p.blocks {
                let neg: Vec<i8> = b.iter().map(|x| -x).collect();
                if !set.contains(&sorted(&neg)) {
                    return Err(NcpError::Invalid("partition is not symmetric under negation".into()));
                }
            }
            let zeros = p.blocks.iter().filter(|b| is_zero_block(b)).count();
            if zeros > 1 {
                return Err(NcpError::Invalid("more than one zero block".into()));
            }
            if ty == CoxType::D {
                if let Some(z) = p.zero_block() {
                    if z.len() < 4 {
                        return Err(NcpError::Invalid("zero block with fewer than four elements".into()));
                    }
                    if !z.contains(&(n as i8)) {
                        return Err(NcpError::Invalid("zero block does not contain ±n".into()));
                    }
                }
            }
        }
        Ok(p)
    }

    /// The all-singletons partition.
    pub fn discrete(ty: CoxType, n: usize) -> Partition {
        let mut blocks: Vec<Vec<i8>> = (1..=n as i8).map(|i| vec![i]).collect();
        if ty.is_signed() {
            blocks.extend((1..=n as i8).map(|i| vec![-i]));
        }
        Partition::new(ty, n, blocks).unwrap()
    }

    pub fn blocks(&self) -> &[Vec<i8>] {
        &self.blocks
    }

    pub fn zero_block(&self) -> Option<&Vec<i8>> {
        self.blocks.iter().find(|b| is_zero_block(b))
    }

    pub fn non_trivial_blocks(&self) -> impl Iterator<Item = &Vec<i8>> {
        self.blocks.iter().filter(|b| b.len() > 1)
    }

    pub fn rank(&self) -> usize {
        match self.ty {
            CoxType::A => self.n - self.blocks.len(),
            _ => self.n - self.blocks.len() / 2,
        }
    }

    pub fn block_of(&self, x: i8) -> &Vec<i8> {
        self.blocks.iter().find(|b| b.contains(&x)).unwrap()
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            let target = other.block_of(b[0]);
            b.iter().all(|x| target.contains(x))
        })
    }

    /// Intersection of blocks, the meet in the full partition lattice.
    pub fn common_refinement(&self, other: &Partition) -> Partition {
        let mut blocks = Vec::new();
        for b in &self.blocks {
            for c in &other.blocks {
                let i: Vec<i8> = b.iter().copied().filter(|x| c.contains(x)).collect();
                if !i.is_empty() {
                    blocks.push(i);
                }
            }
        }
        Partition::new(self.ty, self.n, blocks).unwrap()
    }

    /// Join in the full partition lattice of the ground set.
    pub fn set_join(&self, other: &Partition) -> Partition {
        let elems = ground(self.ty, self.n);
        let mut uf = UnionFind::new(&elems);
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        Partition::new(self.ty, self.n, uf.classes()).unwrap()
    }

    /// Is this a non-crossing partition of the type?
    pub fn is_noncrossing(&self) -> bool {
        self.first_crossing().is_none()
    }

    /// Some pair of crossing blocks, if any.
    pub fn first_crossing(&self) -> Option<(Vec<i8>, Vec<i8>)> {
        let n = self.n;
        match self.ty {
            CoxType::A | CoxType::B => {
                for (i, x) in self.blocks.iter().enumerate() {
                    for y in &self.blocks[i + 1..] {
                        if cross(x, y, |v| SignedPerm::circular_position(n, v)) {
                            return Some((x.clone(), y.clone()));
                        }
                    }
                }
                None
            }
            CoxType::D => {
                let m = n - 1;
                let pos = |v: i8| SignedPerm::circular_position(m, v);
                let big = n as i8;
                // Each block is replaced by the vertex set it occupies on the
                // 2(n-1)-gon; a block touching the midpoint becomes the
                // synthetic zero block of its pair.
                let mut shapes: Vec<(Vec<i8>, Vec<i8>)> = Vec::new();
                let mut seen_mid_pair = false;
                for b in &self.blocks {
                    let touches = b.iter().any(|x| x.abs() == big);
                    if touches {
                        if is_zero_block(b) || !seen_mid_pair {
                            seen_mid_pair = true;
                            if !is_zero_block(b) {
                                let rest: Vec<i8> = b.iter().copied().filter(|x| x.abs() != big).collect();
                                let neg: Vec<i8> = rest.iter().map(|x| -x).collect();
                                if cross(&rest, &neg, pos) {
                                    let negb = b.iter().map(|x| -x).collect();
                                    return Some((b.clone(), negb));
                                }
                            }
                            let z: Vec<i8> = b
                                .iter()
                                .flat_map(|&x| [x, -x])
                                .filter(|x| x.abs() != big)
                                .collect::<HashSet<_>>()
                                .into_iter()
                                .collect();
                            shapes.push((b.clone(), z));
                        }
                    } else {
                        shapes.push((b.clone(), b.clone()));
                    }
                }
                for (i, (bx, x)) in shapes.iter().enumerate() {
                    for (by, y) in &shapes[i + 1..] {
                        if !x.is_empty() && !y.is_empty() && cross(x, y, pos) {
                            return Some((bx.clone(), by.clone()));
                        }
                    }
                }
                None
            }
        }
    }

    pub fn parse(ty: CoxType, n: usize, s: &str) -> Result<Partition, NcpError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or(NcpError::Parse { pos: 0, msg: "expected {..}".into() })?;
        let mut blocks: Vec<Vec<i8>> = Vec::new();
        let mut offset = 1;
        for part in inner.split('|') {
            let mut b = Vec::new();
            for tok in part.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                let v: i8 = tok.parse().map_err(|_| NcpError::Parse { pos: offset, msg: format!("bad entry {tok:?}") })?;
                b.push(v);
            }
            offset += part.len() + 1;
            if !b.is_empty() {
                blocks.push(b);
            }
        }
        // complete by symmetry and singletons
        if ty.is_signed() {
            let have: HashSet<i8> = blocks.iter().flatten().copied().collect();
            let extra: Vec<Vec<i8>> = blocks
                .iter()
                .filter(|b| !is_zero_block(b) && b.iter().all(|x| !have.contains(&-x)))
                .map(|b| b.iter().map(|x| -x).collect())
                .collect();
            blocks.extend(extra);
        }
        let have: HashSet<i8> = blocks.iter().flatten().copied().collect();
        for x in ground(ty, n) {
            if !have.contains(&x) {
                blocks.push(vec![x]);
            }
        }
        Partition::new(ty, n, blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("|");
        write!(f, "{{{body}}}")
    }
}

fn sorted(b: &[i8]) -> Vec<i8> {
    let mut v = b.to_vec();
    v.sort_unstable();
    v
}

fn is_zero_block(b: &[i8]) -> bool {
    b.iter().all(|x| b.contains(&-x))
}

fn ground(ty: CoxType, n: usize) -> Vec<i8> {
    let mut v: Vec<i8> = (1..=n as i8).collect();
    if ty.is_signed() {
        v.extend((1..=n as i8).map(|i| -i));
    }
    v
}

/// Two disjoint vertex sets on a circle cross if their labels alternate
/// at least four times around it.
fn cross(x: &[i8], y: &[i8], pos: impl Fn(i8) -> usize) -> bool {
    let mut marks: Vec<(usize, bool)> = x.iter().map(|&v| (pos(v), true)).chain(y.iter().map(|&v| (pos(v), false))).collect();
    marks.sort_unstable();
    let runs = 1 + marks.windows(2).filter(|w| w[0].1 != w[1].1).count();
    runs >= 4
}

struct UnionFind {
    idx: HashMap<i8, usize>,
    elems: Vec<i8>,
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(elems: &[i8]) -> UnionFind {
        UnionFind {
            idx: elems.iter().enumerate().map(|(i, &x)| (x, i)).collect(),
            elems: elems.to_vec(),
            parent: (0..elems.len()).collect(),
        }
    }
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        self.parent[i] = r;
        r
    }
    fn union(&mut self, a: i8, b: i8) {
        let (x, y) = (self.find(self.idx[&a]), self.find(self.idx[&b]));
        if x != y {
            self.parent[x.max(y)] = x.min(y);
        }
    }
    fn classes(&mut self) -> Vec<Vec<i8>> {
        let mut by_root: HashMap<usize, Vec<i8>> = HashMap::new();
        for i in 0..self.elems.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(self.elems[i]);
        }
        by_root.into_values().collect()
    }
}

/// All set partitions of `{1..n}` via restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let n = rgs.len();
        if i == n {
            let k = rgs.iter().copied().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (j, &b) in rgs.iter().enumerate() {
                blocks[b].push(j as i8 + 1);
            }
            out.push(Partition::new(CoxType::A, n, blocks).unwrap());
            return;
        }
        for b in 0..=max {
            rgs[i] = b;
            rec(i + 1, if b == max { max + 1 } else { max }, rgs, out);
        }
    }
    if n == 0 {
        return out;
    }
    rgs[0] = 0;
    rec(1, 1, &mut rgs, &mut out);
    out
}

/// `NCP_n` by filtering all set partitions.
pub fn noncrossing_set_partitions(n: usize) -> Vec<Partition> {
    set_partitions(n).into_iter().filter(Partition::is_noncrossing).collect()
}

/// The partition of `w`: orbits for types A and B; for type D the orbits
/// with every self-negating orbit merged into one zero block.
pub fn perm_to_partition(g: &Group, w: &SignedPerm) -> Partition {
    let n = g.n;
    let mut blocks: Vec<Vec<i8>> = Vec::new();
    let mut zero: Vec<i8> = Vec::new();
    let mut seen = HashSet::new();
    for x in ground(g.ty, n) {
        if seen.contains(&x) {
            continue;
        }
        let mut orbit = vec![x];
        seen.insert(x);
        let mut y = w.apply(x);
        while y != x {
            seen.insert(y);
            orbit.push(y);
            y = w.apply(y);
        }
        if g.ty.is_signed() && orbit.contains(&-x) {
            zero.extend(orbit);
        } else {
            blocks.push(orbit);
        }
    }
    if !zero.is_empty() {
        blocks.push(zero);
    }
    Partition::new(g.ty, n, blocks).expect("orbits form a partition")
}

/// Checked version of [`perm_to_partition`] for elements of `NC`.
pub fn nc_partition(g: &Group, w: &SignedPerm) -> Result<Partition, NcpError> {
    if !nc_member(g, w)? {
        return Err(NcpError::NotNonCrossing(g.fmt_elem(w)));
    }
    Ok(perm_to_partition(g, w))
}

/// The rule for paired cycles through the midpoint in type D: with `s` the
/// entries other than `n`, either `0 < s_1 < .. < s_l` and
/// `0 > s_{l+1} > .. > s_k > -s_1`, or the same with all signs flipped.
fn d_orientation_ok(s: &[i8]) -> bool {
    let sign = s[0].signum();
    let t: Vec<i8> = s.iter().map(|x| x * sign).collect();
    let l = t.iter().take_while(|&&x| x > 0).count();
    let (pos, neg) = t.split_at(l);
    pos.windows(2).all(|w| w[0] < w[1]) && neg.iter().all(|&x| x < 0 && x > -t[0]) && neg.windows(2).all(|w| w[0] > w[1])
}

/// The consistently oriented element of a non-crossing partition.
pub fn partition_to_perm(g: &Group, pi: &Partition) -> Result<SignedPerm, NcpError> {
    if pi.ty != g.ty || pi.n != g.n {
        return Err(NcpError::Invalid(format!("partition {pi} does not belong to {g}")));
    }
    if let Some((x, y)) = pi.first_crossing() {
        let show = |b: &Vec<i8>| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        return Err(NcpError::Crossing(show(&x), show(&y)));
    }
    let n = g.n;
    let mut cycles = Vec::new();
    let mut used: HashSet<Vec<i8>> = HashSet::new();
    for b in pi.non_trivial_blocks() {
        if used.contains(&sorted(b)) {
            continue;
        }
        used.insert(sorted(&b.iter().map(|x| -x).collect::<Vec<_>>()));
        used.insert(sorted(b));
        match g.ty {
            CoxType::A => cycles.push(Cycle::unsigned(b.clone())),
            CoxType::B => {
                if is_zero_block(b) {
                    cycles.push(Cycle::balanced(b[..b.len() / 2].to_vec()));
                } else {
                    cycles.push(Cycle::paired(b.clone()));
                }
            }
            CoxType::D => {
                let big = n as i8;
                let m = n - 1;
                let mut rest: Vec<i8> = b.iter().copied().filter(|x| x.abs() != big).collect();
                rest.sort_by_key(|&x| SignedPerm::circular_position(m, x));
                if is_zero_block(b) {
                    cycles.push(Cycle::balanced(rest[..rest.len() / 2].to_vec()));
                    cycles.push(Cycle::balanced(vec![big]));
                } else if b.iter().any(|x| x.abs() == big) {
                    let sign = if b.contains(&big) { 1 } else { -1 };
                    let rest: Vec<i8> = rest.iter().map(|x| x * sign).collect();
                    let mut rest = rest;
                    rest.sort_by_key(|&x| SignedPerm::circular_position(m, x));
                    let k = rest.len();
                    let rot = (0..k)
                        .map(|r| {
                            let mut v = rest.clone();
                            v.rotate_left(r);
                            v
                        })
                        .find(|v| d_orientation_ok(v))
                        .ok_or_else(|| NcpError::Invalid(format!("no oriented cycle for block {b:?}")))?;
                    let mut e = rot;
                    e.push(big);
                    cycles.push(Cycle::paired(e));
                } else {
                    cycles.push(Cycle::paired(rest));
                }
            }
        }
    }
    let w = SignedPerm::from_cycles(n, &cycles)?;
    g.check(&w)?;
    Ok(w)
}

fn unsigned_cycles_noncrossing(w: &SignedPerm) -> bool {
    let cycles = w.cycles(false);
    let increasing = cycles.iter().all(|c| c.entries.windows(2).all(|p| p[0] < p[1]));
    increasing
        && cycles.iter().enumerate().all(|(i, x)| cycles[i + 1..].iter().all(|y| !cross(&x.entries, &y.entries, |v| v as usize)))
}

/// Membership in `NC(W, c)` by the cycle criterion: in type A every cycle
/// increases and no two cycles cross; type B reduces to type A on the
/// `2n`-gon; type D compares `w` with the oriented element of its
/// partition. Debug builds also check the length definition.
pub fn nc_member(g: &Group, w: &SignedPerm) -> Result<bool, NcpError> {
    g.check(w)?;
    let by_cycles = match g.ty {
        CoxType::A => unsigned_cycles_noncrossing(w),
        CoxType::B => unsigned_cycles_noncrossing(&w.to_s2n()),
        CoxType::D => {
            let balanced: Vec<Cycle> = w.cycles(true).into_iter().filter(|c| c.kind == CycleKind::Balanced).collect();
            let big = g.n as i8;
            let shape_ok = balanced.is_empty() || (balanced.len() == 2 && balanced.iter().any(|c| c.entries == [big]));
            shape_ok && {
                let pi = perm_to_partition(g, w);
                Partition::new(CoxType::D, g.n, pi.blocks.clone()).is_ok()
                    && pi.is_noncrossing()
                    && partition_to_perm(g, &pi).is_ok_and(|u| u == *w)
            }
        }
    };
    debug_assert_eq!(by_cycles, g.below_coxeter(w), "cycle criterion disagrees for {}", g.fmt_elem(w));
    Ok(by_cycles)
}

/// The lattice `NC(W, c)` with elements sorted by rank, then by images.
#[derive(Clone, Debug)]
pub struct NcLattice {
    pub group: Group,
    coxeter: SignedPerm,
    elems: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
    rank: Vec<usize>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

pub fn default_limit(ty: CoxType) -> usize {
    match ty {
        CoxType::A => 8,
        _ => 6,
    }
}

impl NcLattice {
    pub fn new(group: Group) -> Result<NcLattice, NcpError> {
        guard::check(&format!("NC({group})"), group.n, default_limit(group.ty))?;
        Ok(Self::build(group))
    }

    /// Build without the size guard.
    pub fn build(group: Group) -> NcLattice {
        let c = group.coxeter_element();
        let refl = group.reflections();
        let top = group.length(&c);
        let mut levels: Vec<Vec<SignedPerm>> = vec![vec![group.identity()]];
        for k in 0..top {
            let mut next = HashSet::new();
            for w in &levels[k] {
                for t in &refl {
                    let u = w.compose(t);
                    if group.length(&u) == k + 1 && group.le(&u, &c) {
                        next.insert(u);
                    }
                }
            }
            let mut next: Vec<SignedPerm> = next.into_iter().collect();
            next.sort();
            levels.push(next);
        }
        let mut elems = Vec::new();
        let mut rank = Vec::new();
        for (k, lv) in levels.into_iter().enumerate() {
            rank.extend(std::iter::repeat_n(k, lv.len()));
            elems.extend(lv);
        }
        let count = elems.len();
        let index: HashMap<SignedPerm, usize> = elems.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let inv: Vec<SignedPerm> = elems.iter().map(SignedPerm::inverse).collect();
        let mut down = vec![FixedBitSet::with_capacity(count); count];
        let mut up = vec![FixedBitSet::with_capacity(count); count];
        let mut lower = vec![Vec::new(); count];
        let mut upper = vec![Vec::new(); count];
        for i in 0..count {
            for j in 0..count {
                if rank[j] < rank[i] {
                    continue;
                }
                let le = if rank[j] == rank[i] { i == j } else { group.length(&inv[i].compose(&elems[j])) == rank[j] - rank[i] };
                if le {
                    down[j].insert(i);
                    up[i].insert(j);
                    if rank[j] == rank[i] + 1 {
                        lower[j].push(i);
                        upper[i].push(j);
                    }
                }
            }
        }
        NcLattice { group, coxeter: c, elems, index, rank, down, up, lower, upper }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &SignedPerm {
        &self.elems[i]
    }

    pub fn index_of(&self, w: &SignedPerm) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn coxeter_element(&self) -> &SignedPerm {
        &self.coxeter
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elems.len() - 1
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn max_rank(&self) -> usize {
        self.rank[self.top()]
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.down[i].intersection(&self.down[j]).next_back().expect("bottom is a lower bound")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.up[i].intersection(&self.up[j]).next().expect("top is an upper bound")
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Elements covered by `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// Elements covering `i`.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.rank[i] == 1).collect()
    }

    pub fn of_rank(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.rank[i] == k).collect()
    }

    pub fn rank_profile(&self) -> Vec<usize> {
        let mut v = vec![0; self.max_rank() + 1];
        for &r in &self.rank {
            v[r] += 1;
        }
        v
    }

    /// `w ↦ w⁻¹c`, an order-reversing bijection.
    pub fn kreweras(&self, i: usize) -> usize {
        self.index[&self.elems[i].inverse().compose(&self.coxeter)]
    }

    pub fn partition(&self, i: usize) -> Partition {
        perm_to_partition(&self.group, &self.elems[i])
    }

    pub fn fmt_elem(&self, i: usize) -> String {
        self.group.fmt_elem(&self.elems[i])
    }

    pub fn parse_elem(&self, s: &str) -> Result<usize, NcpError> {
        let w = self.group.parse(s)?;
        self.index_of(&w).ok_or_else(|| NcpError::NotNonCrossing(s.to_string()))
    }

    /// All maximal chains, each as the list of element indices from bottom
    /// to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![self.bottom()];
        fn rec(l: &NcLattice, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let last = *stack.last().unwrap();
            if last == l.top() {
                out.push(stack.clone());
                return;
            }
            for &u in l.upper_covers(last) {
                stack.push(u);
                rec(l, stack, out);
                stack.pop();
            }
        }
        rec(self, &mut stack, &mut out);
        out
    }
}

/// Join of two non-crossing set partitions: join in `P_n`, then merge
/// crossing blocks until none cross.
pub fn ncp_join(a: &Partition, b: &Partition) -> Partition {
    let mut p = a.set_join(b);
    while let Some((x, y)) = p.first_crossing() {
        let mut blocks: Vec<Vec<i8>> = p.blocks.iter().filter(|b| **b != x && **b != y).cloned().collect();
        blocks.push(x.iter().chain(y.iter()).copied().collect());
        p = Partition::new(p.ty, p.n, blocks).unwrap();
    }
    p
}

fn to_2n(p: &Partition) -> Partition {
    let blocks = p.blocks.iter().map(|b| b.iter().map(|&x| SignedPerm::circular_position(p.n, x) as i8).collect()).collect();
    Partition::new(CoxType::A, 2 * p.n, blocks).unwrap()
}

fn from_2n(n: usize, p: &Partition) -> Partition {
    let back = |v: i8| if v as usize <= n { v } else { -(v - n as i8) };
    let blocks = p.blocks.iter().map(|b| b.iter().map(|&v| back(v)).collect()).collect();
    Partition::new(CoxType::B, n, blocks).unwrap()
}

/// Join in `NCB_n` computed in `NCP_2n`.
pub fn ncb_join(a: &Partition, b: &Partition) -> Partition {
    from_2n(a.n, &ncp_join(&to_2n(a), &to_2n(b)))
}

/// Meet in `NCB_n` computed in `NCP_2n`.
pub fn ncb_meet(a: &Partition, b: &Partition) -> Partition {
    from_2n(a.n, &to_2n(a).common_refinement(&to_2n(b)))
}

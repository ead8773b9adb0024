//! The spherical building of `F_2^{n-1}` and its chamber subcomplexes
//! `|NCP_n| ⊆ |P_n| ⊆ Δ`: chambers, galleries, distances, convex hulls,
//! apartments, and the Hurwitz graph of an `NC` lattice.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::guard::{self, GuardError};
use crate::linalg::{bits_string, edge_to_bits, embed_partition, parse_bits, F2Subspace};
use crate::ncp::{noncrossing_set_partitions, set_partitions, NcLattice, Partition};
use crate::perm::{CoxType, Group, SignedPerm};
use crate::trees::{spanning_trees, word_to_labeled_tree, Forest, LabeledTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a flag: {0}")]
    BadFlag(String),
    #[error("vertex {vertex} of rank {rank} is not in {tag}")]
    NotInTag { tag: Tag, rank: usize, vertex: String },
    #[error("chambers live in different ambient dimensions")]
    Mismatch,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

/// Which subcomplex of the building.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Tag {
    Building,
    Pn,
    Ncp,
}

impl Tag {
    pub const ALL: [Tag; 3] = [Tag::Building, Tag::Pn, Tag::Ncp];

    /// Is `u` a vertex of this subcomplex of `Λ(F_2^{n-1})`?
    pub fn contains(self, n: usize, u: &F2Subspace) -> bool {
        match self {
            Tag::Building => true,
            Tag::Pn => subspace_partition(n, u).rank() == u.dim(),
            Tag::Ncp => {
                let pi = subspace_partition(n, u);
                pi.rank() == u.dim() && pi.is_noncrossing()
            }
        }
    }

    pub fn default_limit(self) -> usize {
        match self {
            Tag::Ncp => 8,
            _ => 7,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Building => "BUILDING",
            Tag::Pn => "PN",
            Tag::Ncp => "NCP",
        })
    }
}

impl FromStr for Tag {
    type Err = ComplexError;
    fn from_str(s: &str) -> Result<Tag, ComplexError> {
        match s.to_ascii_lowercase().as_str() {
            "building" | "delta" => Ok(Tag::Building),
            "pn" | "p" => Ok(Tag::Pn),
            "ncp" | "nc" => Ok(Tag::Ncp),
            _ => Err(ComplexError::Parse(format!("unknown subcomplex {s:?} (use building, pn or ncp)"))),
        }
    }
}

/// The partition generated by the edges whose vectors lie in `u`. Its
/// subspace is always contained in `u`.
pub fn subspace_partition(n: usize, u: &F2Subspace) -> Partition {
    let mut blocks: Vec<Vec<i8>> = (1..=n as i8).map(|i| vec![i]).collect();
    for (i, j) in (1..=n).tuple_combinations() {
        if u.contains(edge_to_bits(i, j, n)) {
            let a = blocks.iter().position(|b| b.contains(&(i as i8))).unwrap();
            let b = blocks.iter().position(|b| b.contains(&(j as i8))).unwrap();
            if a != b {
                let moved = blocks.swap_remove(a.max(b));
                blocks[a.min(b)].extend(moved);
            }
        }
    }
    Partition::new(CoxType::A, n, blocks).unwrap()
}

/// A chamber: a full flag `C_1 ⊂ .. ⊂ C_{n-2}` of proper subspaces of
/// `F_2^{n-1}` with `dim C_k = k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Chamber {
    pub n: usize,
    flag: Vec<F2Subspace>,
}

impl Chamber {
    pub fn new(n: usize, flag: Vec<F2Subspace>) -> Result<Chamber, ComplexError> {
        if n < 3 || flag.len() != n - 2 {
            return Err(ComplexError::BadFlag(format!("expected {} subspaces", n.saturating_sub(2))));
        }
        for (k, u) in flag.iter().enumerate() {
            if u.ambient() != n - 1 || u.dim() != k + 1 {
                return Err(ComplexError::BadFlag(format!("vertex {} has dimension {}", k + 1, u.dim())));
            }
            if k > 0 && !flag[k - 1].is_subspace_of(u) {
                return Err(ComplexError::BadFlag(format!("vertex {k} is not contained in vertex {}", k + 1)));
            }
        }
        Ok(Chamber { n, flag })
    }

    /// `C_k` spanned by the first `k` vectors.
    pub fn from_vectors(n: usize, vecs: &[u32]) -> Result<Chamber, ComplexError> {
        let mut s = F2Subspace::zero(n - 1);
        let mut flag = Vec::new();
        for &v in vecs.iter().take(n - 2) {
            if !s.insert(v) {
                return Err(ComplexError::BadFlag(format!("vector {} is dependent", bits_string(v, n - 1))));
            }
            flag.push(s);
        }
        Chamber::new(n, flag)
    }

    /// The chamber of a reduced word of `(1 2 .. n)`.
    pub fn from_word(n: usize, word: &[SignedPerm]) -> Result<Chamber, ComplexError> {
        let g = Group::a(n);
        let c = g.coxeter_element();
        let w = word.iter().fold(g.identity(), |acc, t| acc.compose(t));
        if word.len() != n - 1 || w != c {
            return Err(ComplexError::BadFlag("word is not a reduced word of the Coxeter element".into()));
        }
        let lt = word_to_labeled_tree(n, word).map_err(|e| ComplexError::BadFlag(e.to_string()))?;
        Chamber::new(n, lt.flag())
    }

    pub fn from_labeled_tree(t: &LabeledTree) -> Chamber {
        Chamber::new(t.n, t.flag()).unwrap()
    }

    pub fn from_partitions(chain: &[Partition]) -> Result<Chamber, ComplexError> {
        let n = chain.first().map_or(0, |p| p.n);
        Chamber::new(n, chain.iter().map(embed_partition).collect())
    }

    pub fn vertices(&self) -> &[F2Subspace] {
        &self.flag
    }

    /// The vertex of rank `k`, `1 ≤ k ≤ n-2`.
    pub fn vertex(&self, k: usize) -> &F2Subspace {
        &self.flag[k - 1]
    }

    pub fn rank(&self) -> usize {
        self.flag.len()
    }

    pub fn in_tag(&self, tag: Tag) -> bool {
        self.flag.iter().all(|u| tag.contains(self.n, u))
    }

    pub fn check_tag(&self, tag: Tag) -> Result<(), ComplexError> {
        match self.flag.iter().position(|u| !tag.contains(self.n, u)) {
            None => Ok(()),
            Some(k) => Err(ComplexError::NotInTag { tag, rank: k + 1, vertex: self.flag[k].to_string() }),
        }
    }

    pub fn partitions(&self) -> Vec<Partition> {
        self.flag.iter().map(|u| subspace_partition(self.n, u)).collect()
    }

    /// The reduced word of an `NCP` chamber.
    pub fn to_word(&self) -> Option<Vec<SignedPerm>> {
        if !self.in_tag(Tag::Ncp) {
            return None;
        }
        let g = Group::a(self.n);
        let mut prev = g.identity();
        let mut word = Vec::new();
        let elems = self.partitions().iter().map(|p| crate::ncp::partition_to_perm(&g, p).ok()).collect::<Option<Vec<_>>>()?;
        for w in elems.into_iter().chain(std::iter::once(g.coxeter_element())) {
            word.push(prev.inverse().compose(&w));
            prev = w;
        }
        Some(word)
    }

    /// The rank at which two chambers differ, if they differ in exactly one.
    pub fn adjacent(&self, other: &Chamber) -> Option<usize> {
        let diff: Vec<usize> = (0..self.rank()).filter(|&k| self.flag[k] != other.flag[k]).collect();
        match diff[..] {
            [k] => Some(k + 1),
            _ => None,
        }
    }

    fn full_flag(&self) -> Vec<F2Subspace> {
        let m = self.n - 1;
        std::iter::once(F2Subspace::zero(m))
            .chain(self.flag.iter().copied())
            .chain(std::iter::once(F2Subspace::full(m)))
            .collect()
    }

    /// The relative position of two flags: `σ(i)` is the least `j` with
    /// `C_i ∩ D_j ⊄ C_{i-1}`.
    pub fn relative_position(&self, other: &Chamber) -> Vec<usize> {
        let (c, d) = (self.full_flag(), other.full_flag());
        let m = self.n - 1;
        (1..=m).map(|i| (1..=m).find(|&j| c[i].intersect(&d[j]).dim() > c[i - 1].intersect(&d[j]).dim()).unwrap()).collect()
    }

    /// Building distance as the number of inversions of the relative
    /// position.
    pub fn building_distance(&self, other: &Chamber) -> usize {
        self.relative_position(other).iter().tuple_combinations().filter(|(a, b)| a > b).count()
    }

    /// `v_k`: the least vector of `C_k ∖ C_{k-1}`.
    pub fn vectors(&self) -> Vec<u32> {
        let full = self.full_flag();
        (1..self.n - 1).map(|k| full[k].members().filter(|&v| !full[k - 1].contains(v)).min().unwrap()).collect()
    }

    /// Accepts `flag: 1000; 1100; ..`, a reduced word `(1 2)(2 3)..`, a
    /// labeled tree `[(1,2)@1,..]`, or a chain `{1,2} < {1,2,3} < ..`.
    pub fn parse(n: usize, s: &str) -> Result<Chamber, ComplexError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("flag:") {
            let vecs = rest
                .split(';')
                .map(|t| parse_bits(t.trim()).map_err(|e| ComplexError::Parse(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if vecs.iter().any(|&(_, len)| len != n - 1) {
                return Err(ComplexError::Parse(format!("vectors must have length {}", n - 1)));
            }
            return Chamber::from_vectors(n, &vecs.iter().map(|&(v, _)| v).collect::<Vec<_>>());
        }
        if s.starts_with('[') {
            let t = LabeledTree::parse(n, s).map_err(|e| ComplexError::Parse(e.to_string()))?;
            return Ok(Chamber::from_labeled_tree(&t));
        }
        if s.starts_with('{') {
            let chain = s
                .split('<')
                .map(|t| Partition::parse(CoxType::A, n, t).map_err(|e| ComplexError::Parse(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            return Chamber::from_partitions(&chain);
        }
        let g = Group::a(n);
        let w = WordParser::parse(&g, s)?;
        Chamber::from_word(n, &w)
    }
}

struct WordParser;

impl WordParser {
    /// A product of transpositions written as consecutive cycles.
    fn parse(g: &Group, s: &str) -> Result<Vec<SignedPerm>, ComplexError> {
        let mut out = Vec::new();
        for piece in s.split_inclusive(')').map(str::trim).filter(|p| !p.is_empty()) {
            let t = g.parse(piece).map_err(|e| ComplexError::Parse(e.to_string()))?;
            if g.length(&t) != 1 {
                return Err(ComplexError::Parse(format!("{piece} is not a transposition")));
            }
            out.push(t);
        }
        Ok(out)
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.n - 1;
        write!(f, "flag: {}", self.vectors().iter().map(|&v| bits_string(v, m)).join("; "))
    }
}

/// A sequence of chambers, consecutive ones adjacent; `colors[i]` is the
/// rank where chambers `i` and `i+1` differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gallery {
    pub chambers: Vec<Chamber>,
    pub colors: Vec<usize>,
}

impl Gallery {
    pub fn from_chambers(chambers: Vec<Chamber>) -> Result<Gallery, ComplexError> {
        let colors = chambers
            .windows(2)
            .map(|w| w[0].adjacent(&w[1]).ok_or_else(|| ComplexError::Hypothesis("consecutive chambers are not adjacent".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Gallery { chambers, colors })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

fn pack(ids: &[u16]) -> u128 {
    ids.iter().fold(0u128, |acc, &x| acc << 16 | x as u128)
}

/// The chamber graph of one subcomplex for one `n`, with chambers sorted
/// by their vertex ids.
#[derive(Clone, Debug)]
pub struct ChamberComplex {
    pub tag: Tag,
    pub n: usize,
    vertices: Vec<F2Subspace>,
    vid: HashMap<F2Subspace, u16>,
    chambers: Vec<u16>,
    cid: HashMap<u128, u32>,
    adj_start: Vec<u32>,
    adj: Vec<(u32, u8)>,
}

impl ChamberComplex {
    pub fn new(tag: Tag, n: usize) -> Result<ChamberComplex, ComplexError> {
        guard::check(&format!("the {tag} chamber complex"), n, tag.default_limit())?;
        if n < 3 {
            return Err(ComplexError::BadFlag("chambers need n ≥ 3".into()));
        }
        Ok(Self::build(tag, n))
    }

    pub fn build(tag: Tag, n: usize) -> ChamberComplex {
        let m = n - 1;
        let r = n - 2;
        let mut vertices: Vec<F2Subspace> = match tag {
            Tag::Building => (1..m).flat_map(|k| F2Subspace::all_of_dim(m, k)).collect(),
            Tag::Pn => set_partitions(n).iter().filter(|p| (1..m).contains(&p.rank())).map(embed_partition).collect(),
            Tag::Ncp => {
                noncrossing_set_partitions(n).iter().filter(|p| (1..m).contains(&p.rank())).map(embed_partition).collect()
            }
        };
        vertices.sort_by_key(|u| (u.dim(), *u));
        let vid: HashMap<F2Subspace, u16> = vertices.iter().enumerate().map(|(i, u)| (*u, i as u16)).collect();
        let up: Vec<Vec<u16>> = vertices
            .iter()
            .map(|u| {
                let mut ups: Vec<u16> =
                    (1u32..1 << m).filter(|&v| !u.contains(v)).filter_map(|v| vid.get(&u.with(v)).copied()).collect();
                ups.sort_unstable();
                ups.dedup();
                ups
            })
            .collect();
        let mut chambers = Vec::new();
        let mut stack: Vec<u16> = Vec::with_capacity(r);
        fn dfs(r: usize, up: &[Vec<u16>], stack: &mut Vec<u16>, out: &mut Vec<u16>) {
            if stack.len() == r {
                out.extend_from_slice(stack);
                return;
            }
            for &u in &up[*stack.last().unwrap() as usize] {
                stack.push(u);
                dfs(r, up, stack, out);
                stack.pop();
            }
        }
        for (i, u) in vertices.iter().enumerate() {
            if u.dim() == 1 {
                stack.push(i as u16);
                dfs(r, &up, &mut stack, &mut chambers);
                stack.pop();
            }
        }
        let count = chambers.len() / r;
        let cid: HashMap<u128, u32> = (0..count).map(|i| (pack(&chambers[i * r..(i + 1) * r]), i as u32)).collect();
        let mut cx = ChamberComplex { tag, n, vertices, vid, chambers, cid, adj_start: vec![0], adj: Vec::new() };
        let zero = F2Subspace::zero(m);
        let full = F2Subspace::full(m);
        for i in 0..count {
            let ids = cx.vertex_ids(i).to_vec();
            for k in 0..r {
                let lower = if k == 0 { zero } else { cx.vertices[ids[k - 1] as usize] };
                let upper = if k + 1 == r { full } else { cx.vertices[ids[k + 1] as usize] };
                let mut seen = HashSet::new();
                for v in upper.members() {
                    if lower.contains(v) {
                        continue;
                    }
                    let x = lower.with(v);
                    if !seen.insert(x) {
                        continue;
                    }
                    if let Some(&xi) = cx.vid.get(&x) {
                        if xi != ids[k] {
                            let mut other = ids.clone();
                            other[k] = xi;
                            cx.adj.push((cx.cid[&pack(&other)], (k + 1) as u8));
                        }
                    }
                }
            }
            cx.adj_start.push(cx.adj.len() as u32);
        }
        cx
    }

    pub fn len(&self) -> usize {
        self.cid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cid.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.n - 2
    }

    pub fn vertex_ids(&self, i: usize) -> &[u16] {
        let r = self.rank();
        &self.chambers[i * r..(i + 1) * r]
    }

    pub fn vertex(&self, id: u16) -> &F2Subspace {
        &self.vertices[id as usize]
    }

    pub fn vertices(&self) -> &[F2Subspace] {
        &self.vertices
    }

    pub fn vertex_id(&self, u: &F2Subspace) -> Option<u16> {
        self.vid.get(u).copied()
    }

    pub fn chamber(&self, i: usize) -> Chamber {
        Chamber { n: self.n, flag: self.vertex_ids(i).iter().map(|&v| self.vertices[v as usize]).collect() }
    }

    pub fn chambers(&self) -> impl Iterator<Item = Chamber> + '_ {
        (0..self.len()).map(|i| self.chamber(i))
    }

    pub fn index_of(&self, c: &Chamber) -> Option<usize> {
        if c.n != self.n {
            return None;
        }
        let ids: Option<Vec<u16>> = c.flag.iter().map(|u| self.vid.get(u).copied()).collect();
        self.cid.get(&pack(&ids?)).map(|&i| i as usize)
    }

    /// Index of a chamber, or an error naming the first vertex outside the
    /// subcomplex.
    pub fn locate(&self, c: &Chamber) -> Result<usize, ComplexError> {
        c.check_tag(self.tag)?;
        self.index_of(c).ok_or(ComplexError::Mismatch)
    }

    /// Neighbors with the color of the shared panel.
    pub fn neighbors(&self, i: usize) -> &[(u32, u8)] {
        &self.adj[self.adj_start[i] as usize..self.adj_start[i + 1] as usize]
    }

    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        dist[src] = 0;
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            for &(y, _) in self.neighbors(x) {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x] + 1;
                    q.push_back(y as usize);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        let d = self.bfs(a)[b];
        assert_ne!(d, u32::MAX, "chamber complexes here are gallery connected");
        d as usize
    }

    /// Chambers on minimal galleries from `a` to `b`.
    pub fn convex_hull(&self, a: usize, b: usize) -> Vec<usize> {
        let (da, db) = (self.bfs(a), self.bfs(b));
        let d = da[b];
        (0..self.len()).filter(|&e| da[e] + db[e] == d).collect()
    }

    /// A minimal gallery; at each step the least-index neighbor one step
    /// closer to `b` is taken.
    pub fn gallery(&self, a: usize, b: usize) -> Gallery {
        let db = self.bfs(b);
        let mut path = vec![a];
        let mut x = a;
        while x != b {
            x = self.neighbors(x).iter().map(|&(y, _)| y as usize).filter(|&y| db[y] + 1 == db[x]).min().unwrap();
            path.push(x);
        }
        Gallery::from_chambers(path.into_iter().map(|i| self.chamber(i)).collect()).unwrap()
    }

    /// Number of chambers through each codimension-one face of `i`.
    pub fn codim1_face_counts(&self, i: usize) -> Vec<usize> {
        let mut counts = vec![1; self.rank()];
        for &(_, k) in self.neighbors(i) {
            counts[k as usize - 1] += 1;
        }
        counts
    }

    /// Chambers containing all the given vertices.
    pub fn star(&self, vertices: &[u16]) -> Vec<usize> {
        (0..self.len()).filter(|&i| vertices.iter().all(|v| self.vertex_ids(i).contains(v))).collect()
    }

    pub fn eccentricities(&self) -> Vec<usize> {
        (0..self.len()).map(|i| *self.bfs(i).iter().max().unwrap() as usize).collect()
    }

    /// Distance in the 1-skeleton: vertices are joined when one contains
    /// the other.
    pub fn vertex_distance(&self, u: &F2Subspace, v: &F2Subspace) -> Option<usize> {
        let (s, t) = (self.vertex_id(u)?, self.vertex_id(v)?);
        let nv = self.vertices.len();
        let mut dist = vec![usize::MAX; nv];
        dist[s as usize] = 0;
        let mut q = VecDeque::from([s as usize]);
        while let Some(x) = q.pop_front() {
            if x == t as usize {
                return Some(dist[x]);
            }
            let ux = self.vertices[x];
            for y in 0..nv {
                let uy = self.vertices[y];
                if dist[y] == usize::MAX && (ux.is_subspace_of(&uy) || uy.is_subspace_of(&ux)) {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        None
    }

    /// Indices of the chambers of an apartment.
    pub fn apartment_chambers(&self, a: &Apartment) -> Vec<usize> {
        let frame = a.frame(self.n);
        let mut out: Vec<usize> = frame
            .iter()
            .permutations(frame.len())
            .filter_map(|p| {
                let vecs: Vec<u32> = p.into_iter().copied().collect();
                Chamber::from_vectors(self.n, &vecs).ok().and_then(|c| self.index_of(&c))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// An apartment of the building: a frame of `n-1` independent vectors, or
/// a spanning tree whose edge vectors form the frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Apartment {
    Frame(Vec<u32>),
    Tree(Forest),
}

impl Apartment {
    pub fn frame(&self, n: usize) -> Vec<u32> {
        match self {
            Apartment::Frame(v) => v.clone(),
            Apartment::Tree(t) => t.edges().iter().map(|e| e.bits(n)).collect(),
        }
    }

    /// A chamber lies in the apartment when each `C_k` contains exactly `k`
    /// frame vectors.
    pub fn contains(&self, c: &Chamber) -> bool {
        let frame = self.frame(c.n);
        c.flag.iter().enumerate().all(|(k, u)| frame.iter().filter(|&&v| u.contains(v)).count() == k + 1)
    }

    pub fn contains_vertex(&self, n: usize, u: &F2Subspace) -> bool {
        let frame = self.frame(n);
        frame.iter().filter(|&&v| u.contains(v)).count() == u.dim()
    }

    /// The unique complement of `u` in the Boolean lattice of the frame.
    pub fn opposite_vertex(&self, n: usize, u: &F2Subspace) -> Option<F2Subspace> {
        if !self.contains_vertex(n, u) {
            return None;
        }
        let frame = self.frame(n);
        Some(F2Subspace::span(n - 1, frame.into_iter().filter(|&v| !u.contains(v))))
    }

    /// Vertex distance inside the apartment's own 1-skeleton.
    pub fn vertex_distance(&self, n: usize, u: &F2Subspace, v: &F2Subspace) -> Option<usize> {
        let frame = self.frame(n);
        let m = frame.len();
        let mask_of = |w: &F2Subspace| -> Option<u32> {
            let mask = (0..m).filter(|&i| w.contains(frame[i])).fold(0u32, |acc, i| acc | 1 << i);
            (mask.count_ones() as usize == w.dim()).then_some(mask)
        };
        let (s, t) = (mask_of(u)?, mask_of(v)?);
        let full = (1u32 << m) - 1;
        let mut dist: HashMap<u32, usize> = HashMap::from([(s, 0)]);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if x == t {
                return Some(dist[&x]);
            }
            for y in 1..full {
                if (x & y == x || x & y == y) && !dist.contains_key(&y) {
                    dist.insert(y, dist[&x] + 1);
                    q.push_back(y);
                }
            }
        }
        None
    }
}

impl fmt::Display for Apartment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Apartment::Tree(t) => write!(f, "tree {t}"),
            Apartment::Frame(v) => {
                let m = v.len();
                write!(f, "frame {}", v.iter().map(|&x| bits_string(x, m)).join("; "))
            }
        }
    }
}

/// A common apartment: always exists in the building (built from the
/// relative position); searched over spanning trees for `PN` and over
/// non-crossing spanning trees for `NCP`.
pub fn common_apartment(tag: Tag, c: &Chamber, d: &Chamber) -> Option<Apartment> {
    let n = c.n;
    match tag {
        Tag::Building => {
            let (cf, df) = (c.full_flag(), d.full_flag());
            let sigma = c.relative_position(d);
            let frame = (1..n)
                .map(|i| {
                    let space = cf[i].intersect(&df[sigma[i - 1]]);
                    let v = space.members().find(|&v| !cf[i - 1].contains(v)).unwrap();
                    v
                })
                .collect();
            let a = Apartment::Frame(frame);
            debug_assert!(a.contains(c) && a.contains(d));
            Some(a)
        }
        Tag::Pn | Tag::Ncp => spanning_trees(n)
            .into_iter()
            .filter(|t| tag == Tag::Pn || t.is_noncrossing())
            .map(Apartment::Tree)
            .find(|a| a.contains(c) && a.contains(d)),
    }
}

/// Project `c` towards `d` one vertex at a time from below: with `D_i`
/// the next vertex of `d` and `j` least with `D_i ⊆ C_j`, the vertices
/// `C_{k-1} ∨ D_i (i ≤ k < j)` are swapped in from `j` downwards.
pub fn constructive_gallery_pn(c: &Chamber, d: &Chamber) -> Result<Gallery, ComplexError> {
    if c.n != d.n {
        return Err(ComplexError::Mismatch);
    }
    c.check_tag(Tag::Pn)?;
    d.check_tag(Tag::Pn)?;
    let r = c.rank();
    let mut cur = c.flag.clone();
    let mut out = vec![c.clone()];
    for i in 0..r {
        let di = d.flag[i];
        let j = (i..r).find(|&j| di.is_subspace_of(&cur[j])).unwrap_or(r);
        // cur[j] already contains D_i (or j = r means the whole space)
        for k in (i..j).rev() {
            let below = if k == 0 { F2Subspace::zero(c.n - 1) } else { cur[k - 1] };
            let lowered = if i == 0 { below.sum(&d.flag[0]) } else { below.sum(&di) };
            cur[k] = lowered;
            out.push(Chamber { n: c.n, flag: cur.clone() });
        }
        debug_assert_eq!(cur[i], di);
    }
    finish_gallery(out, Tag::Pn, c, d)
}

/// The mirror construction from the top: with `D_i` the next vertex of `d`
/// from above and `j` greatest with `C_j ⊆ D_i`, the vertices
/// `C_{k+1} ∧ D_i (j < k ≤ i)` are swapped in. Requires a common
/// apartment of `P_n`.
pub fn constructive_gallery_ncp(c: &Chamber, d: &Chamber, a: &Apartment) -> Result<Gallery, ComplexError> {
    if c.n != d.n {
        return Err(ComplexError::Mismatch);
    }
    c.check_tag(Tag::Ncp)?;
    d.check_tag(Tag::Ncp)?;
    if !(a.contains(c) && a.contains(d)) {
        return Err(ComplexError::Hypothesis(format!("{a} does not contain both chambers")));
    }
    let r = c.rank();
    let full = F2Subspace::full(c.n - 1);
    let mut cur = c.flag.clone();
    let mut out = vec![c.clone()];
    for i in (0..r).rev() {
        let di = d.flag[i];
        let j = (0..=i).rev().find(|&j| cur[j].is_subspace_of(&di));
        let start = j.map_or(0, |j| j + 1);
        for k in start..=i {
            if cur[k] == di && k == i {
                break;
            }
            let above = if k + 1 == r { full } else { cur[k + 1] };
            cur[k] = above.intersect(&di);
            out.push(Chamber { n: c.n, flag: cur.clone() });
        }
        debug_assert_eq!(cur[i], di);
    }
    finish_gallery(out, Tag::Ncp, c, d)
}

fn finish_gallery(mut chambers: Vec<Chamber>, tag: Tag, c: &Chamber, d: &Chamber) -> Result<Gallery, ComplexError> {
    chambers.dedup();
    for ch in &chambers {
        ch.check_tag(tag).map_err(|e| ComplexError::Hypothesis(format!("gallery leaves {tag}: {e}")))?;
    }
    if chambers.last() != Some(d) {
        return Err(ComplexError::Hypothesis("construction did not reach the target".into()));
    }
    let g = Gallery::from_chambers(chambers)?;
    if g.len() != c.building_distance(d) {
        return Err(ComplexError::Hypothesis(format!("gallery of length {} is not minimal", g.len())));
    }
    Ok(g)
}

fn single_block(p: &Partition) -> Option<&Vec<i8>> {
    let mut nt = p.non_trivial_blocks();
    let b = nt.next()?;
    nt.next().is_none().then_some(b)
}

fn circularly_consecutive(n: usize, b: &[i8]) -> bool {
    // some rotation of 1..n starts with exactly the block
    let set: HashSet<usize> = b.iter().map(|&x| x as usize).collect();
    (1..=n).any(|s| (0..b.len()).all(|k| set.contains(&((s - 1 + k) % n + 1))))
}

/// Every vertex has one non-trivial block, circularly consecutive.
pub fn is_universal(c: &Chamber) -> bool {
    c.in_tag(Tag::Ncp) && c.partitions().iter().all(|p| single_block(p).is_some_and(|b| circularly_consecutive(c.n, b)))
}

/// Every vertex has one non-trivial block.
pub fn is_base(c: &Chamber) -> bool {
    c.in_tag(Tag::Pn) && c.partitions().iter().all(|p| single_block(p).is_some())
}

/// For each chamber of a `PN` or `NCP` complex, whether every chamber lies
/// in a common tree apartment with it.
pub fn star_union_table(cx: &ChamberComplex) -> Vec<bool> {
    assert_ne!(cx.tag, Tag::Building);
    let trees: Vec<Forest> = spanning_trees(cx.n).into_iter().filter(|t| cx.tag == Tag::Pn || t.is_noncrossing()).collect();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); cx.len()];
    let aps: Vec<Vec<usize>> = trees.into_iter().map(|t| cx.apartment_chambers(&Apartment::Tree(t))).collect();
    for (a, chs) in aps.iter().enumerate() {
        for &c in chs {
            through[c].push(a);
        }
    }
    (0..cx.len())
        .map(|c| {
            let mut covered = vec![false; cx.len()];
            for &a in &through[c] {
                for &d in &aps[a] {
                    covered[d] = true;
                }
            }
            covered.iter().all(|&x| x)
        })
        .collect()
}

/// All frames of `F_2^m`: unordered bases, each sorted.
pub fn frames(m: usize) -> Vec<Vec<u32>> {
    (1u32..1 << m).combinations(m).filter(|vs| F2Subspace::span(m, vs.iter().copied()).dim() == m).collect()
}

/// Number of frames of `F_2^m`, `|GL_m(F_2)| / m!`.
pub fn frame_count(m: u32) -> u128 {
    let gl: u128 = (0..m).map(|k| (1u128 << m) - (1u128 << k)).product();
    gl / (1..=m as u128).product::<u128>()
}

/// Closed-form chamber counts: `n^(n-2)` maximal chains of `NCP_n`,
/// `n!(n-1)!/2^(n-1)` of `P_n`, and `[n-1]_2!` complete flags of `F_2^(n-1)`.
pub fn chamber_count(tag: Tag, n: u32) -> u128 {
    match tag {
        Tag::Ncp if n == 1 => 1,
        Tag::Ncp => (n as u128).pow(n - 2),
        Tag::Pn => {
            let f = |k: u32| (1..=k as u128).product::<u128>();
            (f(n) * f(n - 1)) >> (n - 1)
        }
        Tag::Building => (1..n).map(|k| (1u128 << k) - 1).product(),
    }
}

/// Vertices `p` of building apartments that are not in `tag` although
/// every vertex of their link in the apartment is.
pub fn link_property_scan(n: usize, tag: Tag) -> Result<Vec<F2Subspace>, ComplexError> {
    guard::check("the link property scan", n, 6)?;
    let m = n - 1;
    let mut memo: HashMap<F2Subspace, bool> = HashMap::new();
    let mut inside = |u: F2Subspace| *memo.entry(u).or_insert_with(|| tag.contains(n, &u));
    let mut found = HashSet::new();
    let full = (1u32 << m) - 1;
    for frame in frames(m) {
        let span_of = |s: u32| F2Subspace::span(m, (0..m).filter(|&i| s >> i & 1 == 1).map(|i| frame[i]));
        for s in 1..full {
            let p = span_of(s);
            if inside(p) || found.contains(&p) {
                continue;
            }
            let link_ok = (1..full).filter(|&t| t != s && (s & t == s || s & t == t)).all(|t| inside(span_of(t)));
            if link_ok {
                found.insert(p);
            }
        }
    }
    let mut out: Vec<F2Subspace> = found.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Maximal chains of an `NC` lattice, adjacent when they differ in exactly
/// one element.
#[derive(Clone, Debug)]
pub struct HurwitzGraph {
    pub chains: Vec<Vec<usize>>,
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzStats {
    pub chambers: usize,
    pub radius: usize,
    pub diameter: usize,
    /// `(eccentricity, number of chains)` pairs in increasing order.
    pub eccentricities: Vec<(usize, usize)>,
}

impl HurwitzGraph {
    pub fn new(l: &NcLattice) -> HurwitzGraph {
        let chains = l.maximal_chains();
        let index: HashMap<&Vec<usize>, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let adj = chains
            .iter()
            .map(|ch| {
                let mut out = Vec::new();
                for k in 1..ch.len() - 1 {
                    for &x in l.upper_covers(ch[k - 1]) {
                        if x != ch[k] && l.lower_covers(ch[k + 1]).contains(&x) {
                            let mut other = ch.clone();
                            other[k] = x;
                            out.push(index[&other]);
                        }
                    }
                }
                out
            })
            .collect();
        HurwitzGraph { chains, adj }
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn bfs(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[src] = 0;
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        dist
    }

    pub fn stats(&self) -> HurwitzStats {
        let ecc: Vec<usize> = (0..self.len()).map(|i| *self.bfs(i).iter().max().unwrap()).collect();
        let table = ecc.iter().copied().sorted().dedup_with_count().map(|(c, e)| (e, c)).collect();
        HurwitzStats {
            chambers: self.len(),
            radius: *ecc.iter().min().unwrap(),
            diameter: *ecc.iter().max().unwrap(),
            eccentricities: table,
        }
    }
}

pub fn hurwitz_stats(group: Group) -> Result<HurwitzStats, ComplexError> {
    let l = NcLattice::new(group).map_err(|e| ComplexError::Hypothesis(e.to_string()))?;
    Ok(HurwitzGraph::new(&l).stats())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncp::binomial;
    use crate::trees::{all_labelings, nc_spanning_trees};

    fn word(n: usize, s: &str) -> Chamber {
        Chamber::parse(n, s).unwrap()
    }

    #[test]
    fn chamber_counts() {
        let ncp4 = ChamberComplex::build(Tag::Ncp, 4);
        assert_eq!(ncp4.len(), 16);
        assert_eq!(ChamberComplex::build(Tag::Building, 4).len(), 21);
        // maximal chains of P_n: n!(n-1)!/2^(n-1)
        for (n, chains) in [(4, 18), (5, 180), (6, 2700)] {
            assert_eq!(ChamberComplex::build(Tag::Pn, n).len(), chains);
        }
        for n in 3..=6 {
            let g = Group::a(n);
            assert_eq!(ChamberComplex::build(Tag::Ncp, n).len() as u64, g.count_reduced_words(&g.coxeter_element()));
        }
        assert_eq!(ChamberComplex::build(Tag::Building, 5).len(), 315);
    }

    #[test]
    fn chamber_literals() {
        let c = word(5, "(1 3)(4 5)(1 2)(3 5)");
        assert!(c.in_tag(Tag::Ncp));
        assert_eq!(Chamber::parse(5, &c.to_string()).unwrap(), c);
        let w = c.to_word().unwrap();
        assert_eq!(w.iter().map(|t| t.display(CoxType::A).to_string()).join(""), "(1 3)(4 5)(1 2)(3 5)");
        let t = word(5, "[(1,3)@1,(4,5)@2,(1,2)@3,(3,5)@4]");
        assert_eq!(t, c);
        let chain = word(5, "{1,3} < {1,3|4,5} < {1,2,3|4,5}");
        assert_eq!(chain, c);
        assert!(Chamber::parse(5, "(1 2)(1 3)(1 4)").is_err());
        assert!(Chamber::parse(5, "flag: 1000; 1000; 0100").is_err());
        let bad = Chamber::parse(4, "flag: 111; 110").unwrap();
        assert!(matches!(bad.check_tag(Tag::Pn), Err(ComplexError::NotInTag { rank: 1, .. })));
    }

    #[test]
    fn adjacency() {
        let cx = ChamberComplex::build(Tag::Ncp, 5);
        let c = cx.chamber(0);
        assert_eq!(c.adjacent(&c), None);
        for &(d, k) in cx.neighbors(0) {
            assert_eq!(c.adjacent(&cx.chamber(d as usize)), Some(k as usize));
        }
        // the NCP chamber graph is the Hurwitz graph of NC(S_n)
        for n in 4..=5 {
            let cx = ChamberComplex::build(Tag::Ncp, n);
            let h = HurwitzGraph::new(&NcLattice::build(Group::a(n)));
            assert_eq!(h.len(), cx.len());
            let edges: usize = (0..h.len()).map(|i| h.neighbors(i).len()).sum();
            assert_eq!(edges, cx.adj.len());
            let ecc = cx.eccentricities();
            assert_eq!(*ecc.iter().min().unwrap(), h.stats().radius);
        }
    }

    #[test]
    fn building_distance_formula() {
        for n in 4..=5 {
            let cx = ChamberComplex::build(Tag::Building, n);
            for a in 0..cx.len() {
                let d = cx.bfs(a);
                let ca = cx.chamber(a);
                for b in 0..cx.len() {
                    assert_eq!(d[b] as usize, ca.building_distance(&cx.chamber(b)));
                }
            }
        }
    }

    #[test]
    fn building_of_rank_two_faces() {
        let cx = ChamberComplex::build(Tag::Building, 5);
        for i in 0..cx.len() {
            assert_eq!(cx.codim1_face_counts(i), vec![3; 3]);
        }
    }

    #[test]
    fn closed_counts() {
        assert_eq!([3, 4, 5].map(frame_count), [28, 840, 83328]);
        assert_eq!(frames(3).len() as u128, frame_count(3));
        assert_eq!(frames(4).len() as u128, frame_count(4));
        for n in 3..=6 {
            for tag in Tag::ALL {
                if tag == Tag::Building && n == 6 {
                    continue;
                }
                assert_eq!(ChamberComplex::build(tag, n).len() as u128, chamber_count(tag, n as u32), "{tag} {n}");
            }
        }
    }

    #[test]
    fn witness_ncp5() {
        let c = word(5, "(1 3)(4 5)(1 2)(3 5)");
        let d = word(5, "(2 4)(1 5)(2 3)(1 4)");
        assert_eq!(c.building_distance(&d), 6);
        let ncp = ChamberComplex::build(Tag::Ncp, 5);
        let pn = ChamberComplex::build(Tag::Pn, 5);
        let (ci, di) = (ncp.index_of(&c).unwrap(), ncp.index_of(&d).unwrap());
        assert_eq!(ncp.distance(ci, di), 7);
        assert_eq!(pn.distance(pn.index_of(&c).unwrap(), pn.index_of(&d).unwrap()), 6);
        let hull = ncp.convex_hull(ci, di);
        let dc = ncp.bfs(ci);
        let next: Vec<usize> = hull.iter().copied().filter(|&e| ncp.chamber(e).adjacent(&d).is_some()).collect();
        assert_eq!(next.len(), 3);
        assert!(next.iter().all(|&e| dc[e] == 6));
        assert_eq!(common_apartment(Tag::Ncp, &c, &d), None);
        assert_eq!(common_apartment(Tag::Pn, &c, &d), None);
        // opposite in the building, so only one building apartment holds both
        let holding = frames(4).into_iter().filter(|f| {
            let a = Apartment::Frame(f.clone());
            a.contains(&c) && a.contains(&d)
        });
        assert_eq!(holding.count(), 1);
    }

    #[test]
    fn witness_ncp6() {
        let c = word(6, "(1 2)(3 6)(4 5)(2 6)(3 5)");
        let d = word(6, "(2 4)(1 4)(5 6)(2 3)(4 6)");
        assert_eq!(c.building_distance(&d), 7);
        let ncp = ChamberComplex::build(Tag::Ncp, 6);
        let (ci, di) = (ncp.index_of(&c).unwrap(), ncp.index_of(&d).unwrap());
        let dc = ncp.bfs(ci);
        assert_eq!(dc[di], 8);
        let ch = |s: &str| word(6, s);
        let b = ch("{2,4} < {1,2,4} < {1,2,3,4} < {1,2,3,4|5,6}");
        let e = ch("{2,4} < {1,2,4} < {1,2,4|5,6} < {1,2,4,5,6}");
        let f = ch("{2,4} < {2,4|5,6} < {1,2,4|5,6} < {1,2,3,4|5,6}");
        let g = ch("{1,4} < {1,2,4} < {1,2,4|5,6} < {1,2,3,4|5,6}");
        for x in [&b, &e, &f, &g] {
            assert!(x.adjacent(&d).is_some());
        }
        assert_eq!([&b, &e, &f, &g].map(|x| c.building_distance(x)), [7, 7, 8, 7]);
        assert_eq!([&b, &e, &f, &g].map(|x| dc[ncp.index_of(x).unwrap()]), [7, 7, 9, 8]);
        // the fifth neighbor lies in the star of the edge (1,2)
        let others: Vec<usize> = ncp.neighbors(di).iter().map(|&(x, _)| x as usize).collect();
        assert_eq!(others.len(), 5);
        let a = others.iter().map(|&x| ncp.chamber(x)).find(|x| ![&b, &e, &f, &g].contains(&x)).unwrap();
        assert_eq!(a.vertex(1), c.vertex(1));
        assert_eq!(c.building_distance(&a), 6);
    }

    #[test]
    fn pn_distance_equals_building_distance() {
        for n in 4..=5 {
            let pn = ChamberComplex::build(Tag::Pn, n);
            for a in 0..pn.len() {
                let d = pn.bfs(a);
                let ca = pn.chamber(a);
                for b in 0..pn.len() {
                    let cb = pn.chamber(b);
                    assert_eq!(d[b] as usize, ca.building_distance(&cb));
                    let g = constructive_gallery_pn(&ca, &cb).unwrap();
                    assert_eq!(g.len(), d[b] as usize);
                }
            }
        }
    }

    #[test]
    fn ncp_distance_with_common_pn_apartment() {
        for n in 4..=5 {
            let ncp = ChamberComplex::build(Tag::Ncp, n);
            let pn = ChamberComplex::build(Tag::Pn, n);
            let trees = spanning_trees(n);
            let aps: Vec<HashSet<usize>> =
                trees.iter().map(|t| ncp.apartment_chambers(&Apartment::Tree(t.clone())).into_iter().collect()).collect();
            for a in 0..ncp.len() {
                let d = ncp.bfs(a);
                let dp = pn.bfs(pn.index_of(&ncp.chamber(a)).unwrap());
                for b in 0..ncp.len() {
                    let pb = pn.index_of(&ncp.chamber(b)).unwrap();
                    assert!(d[b] >= dp[pb]);
                    if let Some(k) = aps.iter().position(|s| s.contains(&a) && s.contains(&b)) {
                        assert_eq!(d[b], dp[pb]);
                        let gal = constructive_gallery_ncp(&ncp.chamber(a), &ncp.chamber(b), &Apartment::Tree(trees[k].clone()))
                            .unwrap();
                        assert_eq!(gal.len(), d[b] as usize);
                    }
                }
            }
        }
    }

    #[test]
    fn common_apartments() {
        let cx = ChamberComplex::build(Tag::Building, 5);
        for a in (0..cx.len()).step_by(11) {
            for b in 0..cx.len() {
                let (ca, cb) = (cx.chamber(a), cx.chamber(b));
                let ap = common_apartment(Tag::Building, &ca, &cb).unwrap();
                assert!(ap.contains(&ca) && ap.contains(&cb));
                assert_eq!(cx.apartment_chambers(&ap).len(), 24);
            }
        }
    }

    #[test]
    fn hulls_and_stars() {
        let n = 5;
        let ncp = ChamberComplex::build(Tag::Ncp, n);
        for a in 0..ncp.len() {
            for b in 0..ncp.len() {
                let common: Vec<u16> = ncp.vertex_ids(a).iter().copied().filter(|v| ncp.vertex_ids(b).contains(v)).collect();
                if common.is_empty() {
                    continue;
                }
                let star: HashSet<usize> = ncp.star(&common).into_iter().collect();
                assert!(ncp.convex_hull(a, b).iter().all(|e| star.contains(e)));
            }
        }
        // the hull in the building has the sublattice generated by both flags as vertex set
        let cx = ChamberComplex::build(Tag::Building, 4 + usize::from(cfg!(not(debug_assertions))));
        let m = cx.n - 1;
        for a in (0..cx.len()).step_by(5) {
            for b in 0..cx.len() {
                let mut lat: HashSet<F2Subspace> =
                    cx.chamber(a).vertices().iter().chain(cx.chamber(b).vertices()).copied().collect();
                loop {
                    let items: Vec<F2Subspace> = lat.iter().copied().collect();
                    let before = lat.len();
                    for (x, y) in items.iter().tuple_combinations() {
                        lat.insert(x.sum(y));
                        lat.insert(x.intersect(y));
                    }
                    if lat.len() == before {
                        break;
                    }
                }
                lat.retain(|u| u.dim() > 0 && u.dim() < m);
                let hull_vertices: HashSet<F2Subspace> =
                    cx.convex_hull(a, b).iter().flat_map(|&e| cx.chamber(e).vertices().to_vec()).collect();
                assert_eq!(hull_vertices, lat);
            }
        }
    }

    fn kreweras_chamber(l: &NcLattice, c: &Chamber) -> Chamber {
        let g = l.group;
        let chain: Vec<Partition> = c
            .partitions()
            .iter()
            .rev()
            .map(|p| {
                let i = l.index_of(&crate::ncp::partition_to_perm(&g, p).unwrap()).unwrap();
                l.partition(l.kreweras(i))
            })
            .collect();
        Chamber::from_partitions(&chain).unwrap()
    }

    #[test]
    fn kreweras_is_an_isometry() {
        for n in 4..=5 {
            let l = NcLattice::build(Group::a(n));
            let cx = ChamberComplex::build(Tag::Ncp, n);
            let image: Vec<usize> = cx.chambers().map(|c| cx.index_of(&kreweras_chamber(&l, &c)).unwrap()).collect();
            for a in 0..cx.len() {
                let (d, dk) = (cx.bfs(a), cx.bfs(image[a]));
                for b in 0..cx.len() {
                    assert_eq!(d[b], dk[image[b]]);
                }
            }
        }
    }

    #[test]
    fn universal_and_base_chambers() {
        for n in 4..=6 {
            let ncp = ChamberComplex::build(Tag::Ncp, n);
            let pn = ChamberComplex::build(Tag::Pn, n);
            assert_eq!(ncp.chambers().filter(is_universal).count(), n * (1 << (n - 3)));
            let fact: usize = (1..=n).product();
            assert_eq!(pn.chambers().filter(is_base).count(), fact / 2);
        }
        let n = 5;
        let ncp = ChamberComplex::build(Tag::Ncp, n);
        let table = star_union_table(&ncp);
        for i in 0..ncp.len() {
            let u = is_universal(&ncp.chamber(i));
            assert_eq!(table[i], u);
            assert_eq!(ncp.codim1_face_counts(i).iter().all(|&k| k == 3), u);
        }
        let pn = ChamberComplex::build(Tag::Pn, n);
        let table = star_union_table(&pn);
        for i in 0..pn.len() {
            let b = is_base(&pn.chamber(i));
            assert_eq!(table[i], b);
            assert_eq!(pn.codim1_face_counts(i).iter().all(|&k| k == 3), b);
        }
        // universal chambers through the edge (2,3)
        let e23 = F2Subspace::span(4, [edge_to_bits(2, 3, 5)]);
        assert_eq!(ncp.chambers().filter(|c| is_universal(c) && *c.vertex(1) == e23).count(), 4);
    }

    #[test]
    fn apartments_and_opposition() {
        let n = 5;
        let ncp = ChamberComplex::build(Tag::Ncp, n);
        // every chamber lies in the apartment of its own tree
        for c in ncp.chambers() {
            let t = word_to_labeled_tree(n, &c.to_word().unwrap()).unwrap();
            assert!(Apartment::Tree(t.tree()).contains(&c));
        }
        let mut union = HashSet::new();
        for t in nc_spanning_trees(n) {
            let a = Apartment::Tree(t.clone());
            let chs = ncp.apartment_chambers(&a);
            assert_eq!(chs.len(), 24);
            union.extend(chs.iter().copied());
            let ls: Vec<LabeledTree> = all_labelings(&t).collect();
            for x in &ls {
                for y in &ls {
                    let (cx_, cy) = (Chamber::from_labeled_tree(x), Chamber::from_labeled_tree(y));
                    assert_eq!(cx_.building_distance(&cy), crate::trees::labeling_distance(x, y));
                }
            }
            for k in 1..n - 1 {
                for c in &chs {
                    let p = ncp.chamber(*c).vertex(k).to_owned();
                    let q = a.opposite_vertex(n, &p).unwrap();
                    assert_eq!(q.dim(), n - 1 - k);
                    assert_eq!(a.vertex_distance(n, &p, &q), Some(3));
                }
            }
        }
        assert_eq!(union.len(), ncp.len());
        // hyperplanes are all partition subspaces
        for n in 3..=7 {
            let hyper = F2Subspace::all_of_dim(n - 1, n - 2);
            assert_eq!(hyper.len(), (1 << (n - 1)) - 1);
            assert!(hyper.iter().all(|u| Tag::Pn.contains(n, u)));
        }
    }

    #[test]
    fn vertex_distances() {
        let ncp = ChamberComplex::build(Tag::Ncp, 5);
        let p = |s: &str| embed_partition(&Partition::parse(CoxType::A, 5, s).unwrap());
        assert_eq!(ncp.vertex_distance(&p("{1,2}"), &p("{1,2,3}")), Some(1));
        assert_eq!(ncp.vertex_distance(&p("{1,2}"), &p("{3,4}")), Some(2));
    }

    #[test]
    fn link_property() {
        let e123 = F2Subspace::parse(3, "111").unwrap();
        // {1,3|2,4} is crossing, yet its two apartment neighbors (1,3) and (2,4) are edges
        let crossing = F2Subspace::parse(3, "101;010").unwrap();
        assert_eq!(link_property_scan(4, Tag::Ncp).unwrap(), vec![e123, crossing]);
        assert_eq!(link_property_scan(4, Tag::Pn).unwrap(), vec![e123]);
        assert!(link_property_scan(5, Tag::Ncp).unwrap().is_empty());
        assert!(link_property_scan(5, Tag::Pn).unwrap().is_empty());
        assert_eq!(frames(4).len(), 840);
    }

    #[test]
    fn hurwitz_radius() {
        assert_eq!(hurwitz_stats(Group::a(4)).unwrap().radius, 3);
        assert_eq!(hurwitz_stats(Group::a(5)).unwrap().radius, 6);
        let b3 = hurwitz_stats(Group::b(3)).unwrap();
        assert_eq!(b3.chambers, 27);
        assert!(b3.radius as u64 >= binomial(3, 2));
    }
}

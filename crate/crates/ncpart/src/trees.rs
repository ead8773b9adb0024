//! Edges of the `n`-gon, forests and spanning trees, their labelings, and
//! the correspondence with reduced words of the Coxeter element of `S_n`.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::linalg::{edge_to_bits, F2Subspace};
use crate::ncp::{binomial, Partition};
use crate::perm::{CoxType, SignedPerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("({0},{1}) is not an edge of the {2}-gon")]
    BadEdge(usize, usize, usize),
    #[error("edge set contains a cycle")]
    Cycle,
    #[error("edges {0} and {1} cross")]
    Crossing(Edge, Edge),
    #[error("forest does not span all {0} vertices")]
    NotSpanning(usize),
    #[error("labels must be a permutation of 1..{0}")]
    BadLabeling(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// An edge `(i, j)` with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Edge, TreeError> {
        let (i, j) = (a.min(b), a.max(b));
        if i == 0 || i == j || j > n {
            return Err(TreeError::BadEdge(a, b, n));
        }
        Ok(Edge { i, j })
    }

    /// Chords `(a,c)` and `(b,d)` cross when `a < b < c < d`.
    pub fn crosses(&self, other: &Edge) -> bool {
        let (a, c, b, d) = (self.i, self.j, other.i, other.j);
        (a < b && b < c && c < d) || (b < a && a < d && d < c)
    }

    pub fn transposition(&self, n: usize) -> SignedPerm {
        SignedPerm::reflection(n, self.i as i8, self.j as i8)
    }

    pub fn bits(&self, n: usize) -> u32 {
        edge_to_bits(self.i, self.j, n)
    }

    pub fn touches(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.i == v {
            self.j
        } else {
            self.i
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

fn connected_parts(n: usize, edges: &[Edge]) -> (Vec<usize>, bool) {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut acyclic = true;
    for e in edges {
        let (a, b) = (find(&mut parent, e.i), find(&mut parent, e.j));
        if a == b {
            acyclic = false;
        } else {
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots = (0..=n).map(|v| find(&mut parent, v)).collect();
    (roots, acyclic)
}

/// An acyclic edge set on the vertices `1..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Forest {
    pub n: usize,
    edges: Vec<Edge>,
}

impl Forest {
    pub fn new(n: usize, mut edges: Vec<Edge>) -> Result<Forest, TreeError> {
        if let Some(e) = edges.iter().find(|e| e.j > n) {
            return Err(TreeError::BadEdge(e.i, e.j, n));
        }
        edges.sort();
        edges.dedup();
        if !connected_parts(n, &edges).1 {
            return Err(TreeError::Cycle);
        }
        Ok(Forest { n, edges })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Forest, TreeError> {
        let edges = pairs.iter().map(|&(a, b)| Edge::new(a, b, n)).collect::<Result<Vec<_>, _>>()?;
        Forest::new(n, edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_spanning(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    pub fn first_crossing(&self) -> Option<(Edge, Edge)> {
        self.edges.iter().tuple_combinations().find(|(a, b)| a.crosses(b)).map(|(a, b)| (*a, *b))
    }

    pub fn is_noncrossing(&self) -> bool {
        self.first_crossing().is_none()
    }

    /// The partition whose blocks are the connected components.
    pub fn partition(&self) -> Partition {
        let (roots, _) = connected_parts(self.n, &self.edges);
        let blocks = (1..=self.n).into_group_map_by(|&v| roots[v]).into_values();
        let blocks = blocks.map(|b| b.into_iter().map(|v| v as i8).collect()).collect();
        Partition::new(CoxType::A, self.n, blocks).expect("components partition the vertices")
    }

    pub fn subspace(&self) -> F2Subspace {
        F2Subspace::span(self.n - 1, self.edges.iter().map(|e| e.bits(self.n)))
    }

    /// Parse `[(1,3),(3,4),(5,6)]`.
    pub fn parse(n: usize, s: &str) -> Result<Forest, TreeError> {
        let items = parse_edge_list(n, s)?;
        if items.iter().any(|(_, l)| l.is_some()) {
            return Err(TreeError::Parse("unexpected label in forest literal".into()));
        }
        Forest::new(n, items.into_iter().map(|(e, _)| e).collect())
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.edges.iter().join(","))
    }
}

fn parse_edge_list(n: usize, s: &str) -> Result<Vec<(Edge, Option<usize>)>, TreeError> {
    let bad = |m: &str| TreeError::Parse(format!("{m} in {s:?}"));
    let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| bad("expected [..]"))?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected ("))?;
        let close = body.find(')').ok_or_else(|| bad("unclosed ("))?;
        let (a, b) = body[..close].split_once(',').ok_or_else(|| bad("expected i,j"))?;
        let a: usize = a.trim().parse().map_err(|_| bad("bad vertex"))?;
        let b: usize = b.trim().parse().map_err(|_| bad("bad vertex"))?;
        rest = body[close + 1..].trim_start();
        let label = if let Some(r) = rest.strip_prefix('@') {
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            let l: usize = r[..end].parse().map_err(|_| bad("bad label"))?;
            rest = r[end..].trim_start();
            Some(l)
        } else {
            None
        };
        out.push((Edge::new(a, b, n)?, label));
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

/// A spanning tree together with a labeling; `edges[k]` carries label
/// `k + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledTree {
    pub n: usize,
    edges: Vec<Edge>,
}

impl LabeledTree {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<LabeledTree, TreeError> {
        let f = Forest::new(n, edges.clone())?;
        if !f.is_spanning() || f.len() != edges.len() {
            return Err(TreeError::NotSpanning(n));
        }
        Ok(LabeledTree { n, edges })
    }

    /// The edge `tree.edges()[i]` gets label `labels[i]`.
    pub fn from_labels(tree: &Forest, labels: &[usize]) -> Result<LabeledTree, TreeError> {
        let k = tree.len();
        if labels.len() != k || labels.iter().copied().sorted().ne(1..=k) {
            return Err(TreeError::BadLabeling(k));
        }
        let mut edges = vec![tree.edges[0]; k];
        for (e, &l) in tree.edges.iter().zip(labels) {
            edges[l - 1] = *e;
        }
        LabeledTree::new(tree.n, edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn tree(&self) -> Forest {
        Forest::new(self.n, self.edges.clone()).unwrap()
    }

    pub fn label_of(&self, e: &Edge) -> Option<usize> {
        self.edges.iter().position(|f| f == e).map(|k| k + 1)
    }

    /// The word of transpositions in label order.
    pub fn word(&self) -> Vec<SignedPerm> {
        self.edges.iter().map(|e| e.transposition(self.n)).collect()
    }

    pub fn product(&self) -> SignedPerm {
        self.word().iter().fold(SignedPerm::identity(self.n), |acc, t| acc.compose(t))
    }

    /// Does the word multiply to `(1 2 .. n)`?
    pub fn is_good_by_product(&self) -> bool {
        self.product() == coxeter(self.n)
    }

    /// Around every vertex `v`, labels increase as the other endpoint `u`
    /// runs through `v-1, v-2, ..` cyclically.
    pub fn is_good_by_rule(&self) -> bool {
        let n = self.n;
        self.tree().is_noncrossing()
            && (1..=n).all(|v| {
                let around: Vec<(usize, usize)> = self
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.touches(v))
                    .map(|(k, e)| ((v + n - e.other(v)) % n, k))
                    .sorted()
                    .collect();
                around.windows(2).all(|w| w[0].1 < w[1].1)
            })
    }

    /// Prefix spans `⟨a_1⟩ ⊂ ⟨a_1, a_2⟩ ⊂ ..`, the vertices of the chamber.
    pub fn flag(&self) -> Vec<F2Subspace> {
        let n = self.n;
        let mut s = F2Subspace::zero(n - 1);
        let mut out = Vec::new();
        for e in &self.edges[..self.edges.len().saturating_sub(1)] {
            s.insert(e.bits(n));
            out.push(s);
        }
        out
    }

    /// Parse `[(1,2)@2,(3,5)@1,..]`; unlabeled lists are read in order.
    pub fn parse(n: usize, s: &str) -> Result<LabeledTree, TreeError> {
        let items = parse_edge_list(n, s)?;
        let k = items.len();
        if items.iter().all(|(_, l)| l.is_none()) {
            return LabeledTree::new(n, items.into_iter().map(|(e, _)| e).collect());
        }
        let labels: Option<Vec<usize>> = items.iter().map(|(_, l)| *l).collect();
        let labels = labels.ok_or(TreeError::BadLabeling(k))?;
        let tree = Forest { n, edges: items.iter().map(|(e, _)| *e).collect() };
        LabeledTree::from_labels(&tree, &labels)
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<(Edge, usize)> = self.edges.iter().enumerate().map(|(k, e)| (*e, k + 1)).collect();
        items.sort();
        write!(f, "[{}]", items.iter().map(|(e, l)| format!("{e}@{l}")).join(","))
    }
}

fn coxeter(n: usize) -> SignedPerm {
    SignedPerm::from_images((1..=n as i8).map(|i| i % n as i8 + 1).collect()).unwrap()
}

/// The edges of the transpositions of a word, with their labeling.
pub fn word_to_labeled_tree(n: usize, word: &[SignedPerm]) -> Result<LabeledTree, TreeError> {
    let edges = word
        .iter()
        .map(|t| {
            let moved: Vec<usize> = (1..=n).filter(|&i| t.apply(i as i8) != i as i8).collect();
            match moved[..] {
                [a, b] => Edge::new(a, b, n),
                _ => Err(TreeError::Parse("not a transposition".into())),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    LabeledTree::new(n, edges)
}

/// The word of a labeled forest and whether it is a reduced word of the
/// Coxeter element.
pub fn forest_to_word(t: &LabeledTree) -> (Vec<SignedPerm>, bool) {
    (t.word(), t.tree().is_noncrossing() && t.is_good_by_product())
}

/// All labelings of a non-crossing spanning tree whose words are reduced
/// words of `c`, found by the vertex rule.
pub fn good_labelings(tree: &Forest) -> Result<Vec<LabeledTree>, TreeError> {
    if let Some((a, b)) = tree.first_crossing() {
        return Err(TreeError::Crossing(a, b));
    }
    if !tree.is_spanning() {
        return Err(TreeError::NotSpanning(tree.n));
    }
    Ok(all_labelings(tree).filter(LabeledTree::is_good_by_rule).collect())
}

pub fn all_labelings(tree: &Forest) -> impl Iterator<Item = LabeledTree> + '_ {
    let k = tree.len();
    (0..k).permutations(k).map(move |perm| LabeledTree { n: tree.n, edges: perm.iter().map(|&i| tree.edges[i]).collect() })
}

/// The canonical spanning forest of `π`: the path through each sorted block.
pub fn spanning_forest(pi: &Partition) -> Forest {
    assert_eq!(pi.ty, CoxType::A);
    let edges = pi
        .blocks()
        .iter()
        .flat_map(|b| {
            let b: Vec<usize> = b.iter().map(|&x| x as usize).sorted().collect();
            b.windows(2).map(|w| Edge { i: w[0], j: w[1] }).collect::<Vec<_>>()
        })
        .collect();
    Forest::new(pi.n, edges).unwrap()
}

/// All spanning trees of the complete graph on `1..n`, by Prüfer codes.
pub fn spanning_trees(n: usize) -> Vec<Forest> {
    if n == 1 {
        return vec![Forest { n, edges: Vec::new() }];
    }
    if n == 2 {
        return vec![Forest { n, edges: vec![Edge { i: 1, j: 2 }] }];
    }
    (0..n - 2)
        .map(|_| 1..=n)
        .multi_cartesian_product()
        .map(|code| {
            let mut degree = vec![1usize; n + 1];
            for &c in &code {
                degree[c] += 1;
            }
            let mut edges = Vec::new();
            for &c in &code {
                let leaf = (1..=n).find(|&v| degree[v] == 1).unwrap();
                edges.push(Edge::new(leaf, c, n).unwrap());
                degree[leaf] -= 1;
                degree[c] -= 1;
            }
            let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
            edges.push(Edge::new(rest[0], rest[1], n).unwrap());
            Forest::new(n, edges).unwrap()
        })
        .collect()
}

pub fn nc_spanning_trees(n: usize) -> Vec<Forest> {
    spanning_trees(n).into_iter().filter(Forest::is_noncrossing).collect()
}

pub fn count_spanning_trees(n: u32) -> u64 {
    if n <= 2 {
        1
    } else {
        (n as u64).pow(n - 2)
    }
}

/// `binom(3n-3, n-1) / (2n-1)`.
pub fn count_nc_spanning_trees(n: u64) -> u64 {
    binomial(3 * n - 3, n - 1) / (2 * n - 1)
}

/// Number of inversions of `λ₁⁻¹ ∘ λ₂`, the distance of the two
/// chambers in the apartment of their common tree.
pub fn labeling_distance(a: &LabeledTree, b: &LabeledTree) -> usize {
    let perm: Vec<usize> = b.edges.iter().map(|e| a.label_of(e).expect("same tree")).collect();
    perm.iter().tuple_combinations().filter(|(x, y)| x > y).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Group;
    use std::collections::HashSet;

    #[test]
    fn figure_labelings() {
        let good = LabeledTree::parse(5, "[(3,5),(1,2),(2,5),(3,4)]").unwrap();
        let (word, ok) = forest_to_word(&good);
        assert!(ok);
        assert_eq!(word.iter().map(|t| t.display(CoxType::A).to_string()).join(""), "(3 5)(1 2)(2 5)(3 4)");
        assert_eq!(good.product(), Group::a(5).coxeter_element());
        // the right-hand labeling swaps the labels around vertex 3
        let bad = LabeledTree::parse(5, "[(3,4),(1,2),(2,5),(3,5)]").unwrap();
        assert!(!bad.is_good_by_product());
        assert!(!bad.is_good_by_rule());
        let edge = LabeledTree::parse(2, "[(1,2)]").unwrap();
        assert!(forest_to_word(&edge).1);
        assert_eq!(good.to_string(), "[(1,2)@2,(2,5)@3,(3,4)@4,(3,5)@1]");
        assert_eq!(LabeledTree::parse(5, &good.to_string()).unwrap(), good);
    }

    #[test]
    fn small_trees() {
        let path = Forest::parse(3, "[(1,2),(2,3)]").unwrap();
        let all: Vec<LabeledTree> = all_labelings(&path).collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all.iter().filter(|t| t.is_good_by_product()).count(), 1);
        assert_eq!(good_labelings(&path).unwrap().len(), 1);
        let path4 = Forest::parse(4, "[(1,2),(2,3),(3,4)]").unwrap();
        assert_eq!(all_labelings(&path4).count(), 6);
        assert_eq!(all_labelings(&path4).filter(|t| t.is_good_by_product()).count(), 1);
        let star = Forest::parse(4, "[(1,2),(1,3),(1,4)]").unwrap();
        assert_eq!(good_labelings(&star).unwrap().len(), 1);
        let crossing = Forest::parse(4, "[(1,3),(2,4),(1,2)]").unwrap();
        assert!(matches!(good_labelings(&crossing), Err(TreeError::Crossing(..))));
        assert!(matches!(Forest::parse(3, "[(1,2),(2,3),(1,3)]"), Err(TreeError::Cycle)));
    }

    #[test]
    fn rule_matches_product() {
        for n in 2..=6 {
            for tree in nc_spanning_trees(n) {
                let mut found = 0;
                for lt in all_labelings(&tree) {
                    assert_eq!(lt.is_good_by_rule(), lt.is_good_by_product(), "{lt}");
                    found += usize::from(lt.is_good_by_product());
                }
                assert!(found >= 1);
            }
        }
    }

    #[test]
    fn reduced_words_are_good_labelings() {
        for n in 2..=6 {
            let g = Group::a(n);
            let words = g.reduced_words(&g.coxeter_element());
            let trees: HashSet<LabeledTree> = words.iter().map(|w| word_to_labeled_tree(n, &w.letters).unwrap()).collect();
            assert_eq!(trees.len(), words.len());
            let good: usize = nc_spanning_trees(n).iter().map(|t| good_labelings(t).unwrap().len()).sum();
            assert_eq!(good, words.len());
            assert!(trees.iter().all(|t| t.tree().is_noncrossing() && t.is_good_by_rule()));
        }
    }

    #[test]
    fn tree_counts() {
        assert_eq!(count_nc_spanning_trees(5), 55);
        assert_eq!(count_nc_spanning_trees(6), 273);
        assert_eq!(count_spanning_trees(5), 125);
        for n in 1..=6 {
            assert_eq!(spanning_trees(n).len() as u64, count_spanning_trees(n as u32));
            assert_eq!(nc_spanning_trees(n).len() as u64, count_nc_spanning_trees(n as u64));
        }
    }

    #[test]
    fn spanning_forests() {
        let pi = Partition::parse(CoxType::A, 6, "{1,3,4|2|5,6}").unwrap();
        let f = spanning_forest(&pi);
        assert_eq!(f.to_string(), "[(1,3),(3,4),(5,6)]");
        assert_eq!(f.partition(), pi);
        assert!(spanning_forest(&Partition::discrete(CoxType::A, 5)).is_empty());
        // two different forests of one partition
        let a = Forest::parse(6, "[(1,3),(1,4),(5,6)]").unwrap();
        let b = Forest::parse(6, "[(1,4),(3,4),(5,6)]").unwrap();
        assert_eq!(a.partition(), b.partition());
        assert_eq!(a.subspace(), b.subspace());
        for n in 2..=6 {
            for pi in crate::ncp::noncrossing_set_partitions(n) {
                let f = spanning_forest(&pi);
                assert!(f.is_noncrossing());
                assert_eq!(f.len(), pi.rank());
                assert_eq!(f.partition(), pi);
            }
        }
    }

    #[test]
    fn labeling_distances() {
        let t = Forest::parse(4, "[(1,2),(2,3),(3,4)]").unwrap();
        let ls: Vec<LabeledTree> = all_labelings(&t).collect();
        let far = ls.iter().map(|b| labeling_distance(&ls[0], b)).max().unwrap();
        assert_eq!(far, 3);
        let rev = LabeledTree { n: 4, edges: ls[0].edges.iter().rev().copied().collect() };
        assert_eq!(labeling_distance(&ls[0], &rev), 3);
    }
}

//! Permutations and signed permutations, cycle notation, absolute length
//! and reduced words with respect to the reflection generating set.
//!
//! A single type, [`SignedPerm`], holds elements of all three families.
//! Permutations of `{1..n}` are the signed permutations that never change a
//! sign, and type A code only ever builds those.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images {0:?} do not form a signed bijection")]
    NotBijection(Vec<i8>),
    #[error("element changes an odd number of signs, so it is not in W(D{0})")]
    OddSignChanges(usize),
    #[error("element changes signs, so it is not a permutation of 1..{0}")]
    SignedInTypeA(usize),
    #[error("element acts on {got} letters, expected {expected}")]
    WrongDegree { expected: usize, got: usize },
    #[error("type {ty} needs n >= {min}, got {n}")]
    Rank { ty: CoxType, n: usize, min: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("shift index {index} out of range for a word of length {len}")]
    ShiftIndex { index: usize, len: usize },
}

fn parse_err(pos: usize, msg: impl Into<String>) -> PermError {
    PermError::Parse { pos, msg: msg.into() }
}

/// The three classical families handled by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxType {
    A,
    B,
    D,
}

impl CoxType {
    pub fn is_signed(self) -> bool {
        self != CoxType::A
    }
}

impl fmt::Display for CoxType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoxType::A => "A",
            CoxType::B => "B",
            CoxType::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for CoxType {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(CoxType::A),
            "B" | "b" => Ok(CoxType::B),
            "D" | "d" => Ok(CoxType::D),
            other => Err(parse_err(0, format!("unknown type {other:?}"))),
        }
    }
}

/// A bijection `w` of `{±1..±n}` with `w(-i) = -w(i)`, stored by the images
/// of the positive letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    img: Vec<i8>,
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ty = if self.is_unsigned() { CoxType::A } else { CoxType::B };
        write!(f, "{}", self.display(ty))
    }
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { img: (1..=n as i8).collect() }
    }

    /// Build from the images of `1..=n`.
    pub fn from_images(img: Vec<i8>) -> Result<Self, PermError> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a - 1] {
                return Err(PermError::NotBijection(img));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPerm { img })
    }

    /// Number of positive letters.
    pub fn n(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[i8] {
        &self.img
    }

    #[inline]
    pub fn apply(&self, i: i8) -> i8 {
        if i > 0 {
            self.img[i as usize - 1]
        } else {
            -self.img[(-i) as usize - 1]
        }
    }

    /// `self ∘ other`, so `other` acts first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        debug_assert_eq!(self.n(), other.n());
        SignedPerm { img: other.img.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut img = vec![0i8; self.n()];
        for (i, &x) in self.img.iter().enumerate() {
            let a = x.unsigned_abs() as usize - 1;
            img[a] = if x > 0 { i as i8 + 1 } else { -(i as i8 + 1) };
        }
        SignedPerm { img }
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &SignedPerm) -> SignedPerm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| x == i as i8 + 1)
    }

    pub fn is_unsigned(&self) -> bool {
        self.img.iter().all(|&x| x > 0)
    }

    /// Number of positive letters sent to negative ones.
    pub fn sign_changes(&self) -> usize {
        self.img.iter().filter(|&&x| x < 0).count()
    }

    /// Order of the element.
    pub fn order(&self) -> usize {
        let id = SignedPerm::identity(self.n());
        let mut k = 1;
        let mut p = self.clone();
        while p != id {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Number of cycles that are not self-negating, fixed points included.
    pub fn paired_cycle_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 1..=n as i8 {
            if seen[start as usize - 1] {
                continue;
            }
            let mut x = start;
            loop {
                seen[x.unsigned_abs() as usize - 1] = true;
                x = self.apply(x);
                if x.abs() == start {
                    break;
                }
            }
            if x == start {
                count += 1;
            }
        }
        count
    }

    /// Position of a letter on the `2n`-gon: `1..n` then `-1..-n`.
    #[inline]
    pub fn circular_position(n: usize, i: i8) -> usize {
        if i > 0 {
            i as usize
        } else {
            n + (-i) as usize
        }
    }

    /// Canonical image in `S_2n` as an unsigned permutation, `-i ↦ n + i`.
    pub fn to_s2n(&self) -> SignedPerm {
        let n = self.n();
        let img =
            (1..=n as i8).chain((1..=n as i8).map(|i| -i)).map(|x| Self::circular_position(n, self.apply(x)) as i8).collect();
        SignedPerm { img }
    }

    /// Disjoint cycle decomposition in canonical form, trivial cycles
    /// omitted. When `signed` is false the element must be sign-free and
    /// the cycles come back as [`CycleKind::Unsigned`].
    pub fn cycles(&self, signed: bool) -> Vec<Cycle> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n as i8 {
            if seen[start as usize - 1] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start as usize - 1] = true;
            let mut x = self.apply(start);
            while x != start && x != -start {
                seen[x.unsigned_abs() as usize - 1] = true;
                orbit.push(x);
                x = self.apply(x);
            }
            let kind = if x == -start {
                CycleKind::Balanced
            } else if signed {
                CycleKind::Paired
            } else {
                CycleKind::Unsigned
            };
            if kind != CycleKind::Balanced && orbit.len() == 1 {
                continue;
            }
            out.push(Cycle::new(kind, orbit));
        }
        out.sort();
        out
    }

    /// Product of the given cycles, the rightmost acting first.
    pub fn from_cycles(n: usize, cycles: &[Cycle]) -> Result<SignedPerm, PermError> {
        let mut w = SignedPerm::identity(n);
        for c in cycles {
            w = w.compose(&c.to_perm(n)?);
        }
        Ok(w)
    }

    /// The transposition-like element that swaps `a` and `b` (and `-a`, `-b`).
    /// With `b = -a` this is the balanced reflection `[a]`.
    pub fn reflection(n: usize, a: i8, b: i8) -> SignedPerm {
        let mut img: Vec<i8> = (1..=n as i8).collect();
        if a == -b {
            img[a.unsigned_abs() as usize - 1] = -(a.abs());
            return SignedPerm { img };
        }
        let set = |img: &mut Vec<i8>, from: i8, to: i8| {
            if from > 0 {
                img[from as usize - 1] = to;
            } else {
                img[(-from) as usize - 1] = -to;
            }
        };
        set(&mut img, a, b);
        set(&mut img, b, a);
        SignedPerm { img }
    }

    pub fn display(&self, ty: CoxType) -> DisplayPerm<'_> {
        DisplayPerm { w: self, ty }
    }

    /// Parse a product of cycles acting on `n` letters.
    pub fn parse(ty: CoxType, n: usize, s: &str) -> Result<SignedPerm, PermError> {
        let cycles = parse_cycles(s)?;
        let mut w = SignedPerm::identity(n);
        for (pos, c) in cycles {
            for &x in &c.entries {
                if x == 0 || x.unsigned_abs() as usize > n {
                    return Err(parse_err(pos, format!("entry {x} out of range for n = {n}")));
                }
                if ty == CoxType::A && x < 0 {
                    return Err(parse_err(pos, "negative entry in type A"));
                }
            }
            if ty == CoxType::A && c.kind != CycleKind::Unsigned {
                return Err(parse_err(pos, "paired and balanced cycles need a signed type"));
            }
            let p = c.to_perm(n).map_err(|e| parse_err(pos, e.to_string()))?;
            w = w.compose(&p);
        }
        if ty == CoxType::D && w.sign_changes() % 2 == 1 {
            return Err(PermError::OddSignChanges(n));
        }
        Ok(w)
    }
}

pub struct DisplayPerm<'a> {
    w: &'a SignedPerm,
    ty: CoxType,
}

impl fmt::Display for DisplayPerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signed = self.ty.is_signed() || !self.w.is_unsigned();
        let cycles = self.w.cycles(signed);
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleKind {
    Unsigned,
    Paired,
    Balanced,
}

/// One cycle in canonical form. A balanced cycle `[i1 .. ik]` stands for
/// `(i1 .. ik -i1 .. -ik)`, a paired cycle for `(i1 .. ik)(-i1 .. -ik)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub kind: CycleKind,
    pub entries: Vec<i8>,
}

impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |c: &Cycle| (c.entries[0].unsigned_abs(), c.kind, c.entries.clone());
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Cycle {
    /// Canonicalise: unsigned and paired cycles start at the entry of least
    /// absolute value, made positive; balanced cycles start at the positive
    /// entry of least absolute value.
    pub fn new(kind: CycleKind, mut entries: Vec<i8>) -> Cycle {
        assert!(!entries.is_empty(), "empty cycle");
        match kind {
            CycleKind::Unsigned | CycleKind::Paired => {
                let (idx, &m) = entries.iter().enumerate().min_by_key(|(_, x)| x.unsigned_abs()).unwrap();
                if m < 0 {
                    entries.iter_mut().for_each(|x| *x = -*x);
                }
                entries.rotate_left(idx);
            }
            CycleKind::Balanced => {
                let k = entries.len();
                let full: Vec<i8> = entries.iter().copied().chain(entries.iter().map(|x| -x)).collect();
                let idx = (0..2 * k).filter(|&i| full[i] > 0).min_by_key(|&i| full[i]).unwrap();
                entries = (0..k).map(|j| full[(idx + j) % (2 * k)]).collect();
            }
        }
        Cycle { kind, entries }
    }

    pub fn unsigned(entries: Vec<i8>) -> Cycle {
        Cycle::new(CycleKind::Unsigned, entries)
    }

    pub fn paired(entries: Vec<i8>) -> Cycle {
        Cycle::new(CycleKind::Paired, entries)
    }

    pub fn balanced(entries: Vec<i8>) -> Cycle {
        Cycle::new(CycleKind::Balanced, entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The element of `W(B_n)` (or `S_n`) this cycle denotes.
    pub fn to_perm(&self, n: usize) -> Result<SignedPerm, PermError> {
        let mut img: Vec<i8> = (1..=n as i8).collect();
        let e = &self.entries;
        let mut put = |from: i8, to: i8| {
            if from > 0 {
                img[from as usize - 1] = to;
            } else {
                img[(-from) as usize - 1] = -to;
            }
        };
        match self.kind {
            CycleKind::Unsigned | CycleKind::Paired => {
                for i in 0..e.len() {
                    put(e[i], e[(i + 1) % e.len()]);
                }
            }
            CycleKind::Balanced => {
                for i in 0..e.len() {
                    let to = if i + 1 == e.len() { -e[0] } else { e[i + 1] };
                    put(e[i], to);
                }
            }
        }
        SignedPerm::from_images(img)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.entries.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        match self.kind {
            CycleKind::Unsigned => write!(f, "({body})"),
            CycleKind::Paired => write!(f, "(({body}))"),
            CycleKind::Balanced => write!(f, "[{body}]"),
        }
    }
}

/// Split a cycle-notation string into cycles. A plain `( .. )` cycle is
/// read as an unsigned cycle on signed letters; if its support is closed
/// under negation it must be of the form `(i1 .. ik -i1 .. -ik)` and is
/// turned into the balanced cycle.
fn parse_cycles(s: &str) -> Result<Vec<(usize, Cycle)>, PermError> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i] as char).is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        let start = i;
        let (kind, close): (CycleKind, &[u8]) = if s[i..].starts_with("((") {
            i += 2;
            (CycleKind::Paired, b"))")
        } else if bytes[i] == b'(' {
            i += 1;
            (CycleKind::Unsigned, b")")
        } else if bytes[i] == b'[' {
            i += 1;
            (CycleKind::Balanced, b"]")
        } else if s[i..].starts_with("id") {
            i += 2;
            continue;
        } else {
            return Err(parse_err(i, format!("unexpected character {:?}", bytes[i] as char)));
        };
        let end = s[i..]
            .find(std::str::from_utf8(close).unwrap())
            .map(|e| e + i)
            .ok_or_else(|| parse_err(start, "unterminated cycle"))?;
        let mut entries = Vec::new();
        for tok in s[i..end].split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: i8 = tok.parse().map_err(|_| parse_err(i, format!("bad entry {tok:?}")))?;
            entries.push(v);
        }
        i = end + close.len();
        if entries.is_empty() {
            continue;
        }
        let mut abs: Vec<u8> = entries.iter().map(|x| x.unsigned_abs()).collect();
        abs.sort_unstable();
        let distinct_abs = abs.windows(2).all(|w| w[0] != w[1]);
        let cycle = match kind {
            CycleKind::Unsigned if !distinct_abs => {
                let k = entries.len() / 2;
                let ok = entries.len() % 2 == 0 && (0..k).all(|j| entries[j + k] == -entries[j]) && {
                    let mut h: Vec<u8> = entries[..k].iter().map(|x| x.unsigned_abs()).collect();
                    h.sort_unstable();
                    h.windows(2).all(|w| w[0] != w[1])
                };
                if !ok {
                    return Err(parse_err(start, "cycle is not compatible with w(-i) = -w(i)"));
                }
                Cycle::balanced(entries[..k].to_vec())
            }
            _ if !distinct_abs => return Err(parse_err(start, "repeated letter in cycle")),
            CycleKind::Unsigned if entries.iter().any(|&x| x < 0) => Cycle::paired(entries),
            _ => Cycle::new(kind, entries),
        };
        out.push((start, cycle));
    }
    Ok(out)
}

/// A finite Coxeter group of classical type acting on `n` letters:
/// `S_n` for type A, `W(B_n)` and `W(D_n)` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    pub ty: CoxType,
    pub n: usize,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ty {
            CoxType::A => write!(f, "S{}", self.n),
            t => write!(f, "{}{}", t, self.n),
        }
    }
}

impl Group {
    pub fn new(ty: CoxType, n: usize) -> Result<Group, PermError> {
        let min = match ty {
            CoxType::A | CoxType::B => 1,
            CoxType::D => 2,
        };
        if n < min || n > 60 {
            return Err(PermError::Rank { ty, n, min });
        }
        Ok(Group { ty, n })
    }

    pub fn a(n: usize) -> Group {
        Group::new(CoxType::A, n).unwrap()
    }

    pub fn b(n: usize) -> Group {
        Group::new(CoxType::B, n).unwrap()
    }

    pub fn d(n: usize) -> Group {
        Group::new(CoxType::D, n).unwrap()
    }

    /// Dimension of the reflection representation.
    pub fn rank(&self) -> usize {
        match self.ty {
            CoxType::A => self.n - 1,
            _ => self.n,
        }
    }

    pub fn coxeter_number(&self) -> usize {
        match self.ty {
            CoxType::A => self.n,
            CoxType::B => 2 * self.n,
            CoxType::D => 2 * (self.n - 1),
        }
    }

    pub fn identity(&self) -> SignedPerm {
        SignedPerm::identity(self.n)
    }

    pub fn check(&self, w: &SignedPerm) -> Result<(), PermError> {
        if w.n() != self.n {
            return Err(PermError::WrongDegree { expected: self.n, got: w.n() });
        }
        match self.ty {
            CoxType::A if !w.is_unsigned() => Err(PermError::SignedInTypeA(self.n)),
            CoxType::D if w.sign_changes() % 2 == 1 => Err(PermError::OddSignChanges(self.n)),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, w: &SignedPerm) -> bool {
        self.check(w).is_ok()
    }

    pub fn parse(&self, s: &str) -> Result<SignedPerm, PermError> {
        SignedPerm::parse(self.ty, self.n, s)
    }

    pub fn fmt_elem(&self, w: &SignedPerm) -> String {
        w.display(self.ty).to_string()
    }

    /// The simple reflections `s_1, .., s_rank`.
    pub fn simple_reflections(&self) -> Vec<SignedPerm> {
        let n = self.n;
        let mut s: Vec<SignedPerm> = (1..n as i8).map(|i| SignedPerm::reflection(n, i, i + 1)).collect();
        match self.ty {
            CoxType::A => {}
            CoxType::B => s.push(SignedPerm::reflection(n, n as i8, -(n as i8))),
            CoxType::D => s.push(SignedPerm::reflection(n, -(n as i8 - 1), n as i8)),
        }
        s
    }

    /// `c = s_1 s_2 .. s_rank`: `(1 2 .. n)`, `[1 2 .. n]` or `[1 .. n-1][n]`.
    pub fn coxeter_element(&self) -> SignedPerm {
        self.simple_reflections().iter().fold(self.identity(), |acc, s| acc.compose(s))
    }

    /// All reflections in a fixed canonical order.
    pub fn reflections(&self) -> Vec<SignedPerm> {
        let n = self.n as i8;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(SignedPerm::reflection(self.n, i, j));
                if self.ty.is_signed() {
                    out.push(SignedPerm::reflection(self.n, i, -j));
                }
            }
        }
        if self.ty == CoxType::B {
            for i in 1..=n {
                out.push(SignedPerm::reflection(self.n, i, -i));
            }
        }
        out
    }

    /// Absolute (reflection) length: `n` minus the number of cycles that
    /// are not self-negating. For type A this is `n - #orbits`, for types B
    /// and D it agrees with the cycle-by-cycle counts.
    pub fn length(&self, w: &SignedPerm) -> usize {
        debug_assert!(self.contains(w), "{w:?} not in {self}");
        self.n - w.paired_cycle_count()
    }

    pub fn absolute_length(&self, w: &SignedPerm) -> Result<usize, PermError> {
        self.check(w)?;
        Ok(self.length(w))
    }

    /// `v ≤ w` in absolute order.
    pub fn le(&self, v: &SignedPerm, w: &SignedPerm) -> bool {
        self.length(w) == self.length(v) + self.length(&v.inverse().compose(w))
    }

    pub fn absolute_le(&self, v: &SignedPerm, w: &SignedPerm) -> Result<bool, PermError> {
        self.check(v)?;
        self.check(w)?;
        Ok(self.le(v, w))
    }

    /// Membership in `NC(W, c)` from the definition.
    pub fn below_coxeter(&self, w: &SignedPerm) -> bool {
        self.contains(w) && self.le(w, &self.coxeter_element())
    }

    /// Every group element, in lexicographic order of images.
    pub fn elements(&self) -> Vec<SignedPerm> {
        use itertools::Itertools;
        let n = self.n;
        let mut out = Vec::new();
        for p in (1..=n as i8).permutations(n) {
            let signs: u32 = if self.ty.is_signed() { 1 << n } else { 1 };
            for mask in 0..signs {
                if self.ty == CoxType::D && mask.count_ones() % 2 == 1 {
                    continue;
                }
                let img = p.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x }).collect();
                out.push(SignedPerm { img });
            }
        }
        out.sort();
        out
    }

    /// All reduced decompositions of `w` into reflections.
    pub fn reduced_words(&self, w: &SignedPerm) -> Vec<ReducedWord> {
        let refl = self.reflections();
        let mut memo: HashMap<SignedPerm, Vec<Vec<u16>>> = HashMap::new();
        let words = self.words_rec(w, &refl, &mut memo);
        words
            .iter()
            .map(|word| ReducedWord { group: *self, letters: word.iter().map(|&k| refl[k as usize].clone()).collect() })
            .collect()
    }

    /// Number of reduced decompositions of `w`.
    pub fn count_reduced_words(&self, w: &SignedPerm) -> u64 {
        let refl = self.reflections();
        let mut memo: HashMap<SignedPerm, u64> = HashMap::new();
        fn rec(g: &Group, w: &SignedPerm, refl: &[SignedPerm], memo: &mut HashMap<SignedPerm, u64>) -> u64 {
            if w.is_identity() {
                return 1;
            }
            if let Some(&c) = memo.get(w) {
                return c;
            }
            let l = g.length(w);
            let mut total = 0;
            for t in refl {
                let rest = t.compose(w);
                if g.length(&rest) + 1 == l {
                    total += rec(g, &rest, refl, memo);
                }
            }
            memo.insert(w.clone(), total);
            total
        }
        rec(self, w, &refl, &mut memo)
    }

    fn words_rec(&self, w: &SignedPerm, refl: &[SignedPerm], memo: &mut HashMap<SignedPerm, Vec<Vec<u16>>>) -> Vec<Vec<u16>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        if let Some(ws) = memo.get(w) {
            return ws.clone();
        }
        let l = self.length(w);
        let mut out = Vec::new();
        for (k, t) in refl.iter().enumerate() {
            let rest = t.compose(w);
            if self.length(&rest) + 1 == l {
                for tail in self.words_rec(&rest, refl, memo) {
                    let mut word = Vec::with_capacity(l);
                    word.push(k as u16);
                    word.extend(tail);
                    out.push(word);
                }
            }
        }
        memo.insert(w.clone(), out.clone());
        out
    }

    /// One reduced word of `w`, found greedily.
    pub fn some_reduced_word(&self, w: &SignedPerm) -> Vec<SignedPerm> {
        let refl = self.reflections();
        let mut rest = w.clone();
        let mut word = Vec::new();
        while !rest.is_identity() {
            let l = self.length(&rest);
            let t = refl
                .iter()
                .find(|t| self.length(&t.compose(&rest)) + 1 == l)
                .expect("a non-identity element has a reflection below it");
            rest = t.compose(&rest);
            word.push(t.clone());
        }
        word
    }

    /// Reflections that lie below `w`.
    pub fn reflections_below(&self, w: &SignedPerm) -> Vec<SignedPerm> {
        let l = self.length(w);
        self.reflections().into_iter().filter(|t| self.length(&t.compose(w)) + 1 == l).collect()
    }
}

/// A sequence of reflections whose product has the sequence's length as
/// absolute length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    pub group: Group,
    pub letters: Vec<SignedPerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    Left,
    Right,
}

impl ReducedWord {
    /// Validate a candidate word.
    pub fn new(group: Group, letters: Vec<SignedPerm>) -> Option<ReducedWord> {
        let refl = group.reflections();
        if !letters.iter().all(|t| refl.contains(t)) {
            return None;
        }
        let word = ReducedWord { group, letters };
        (group.length(&word.product()) == word.len()).then_some(word)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self) -> SignedPerm {
        self.letters.iter().fold(self.group.identity(), |acc, t| acc.compose(t))
    }

    /// Hurwitz move at positions `i, i+1` (1-based). A right shift turns
    /// `t_i t_{i+1}` into `(t_i t_{i+1} t_i) t_i`, a left shift into
    /// `t_{i+1} (t_{i+1} t_i t_{i+1})`.
    pub fn shift(&self, i: usize, dir: ShiftDirection) -> Result<ReducedWord, PermError> {
        if i == 0 || i >= self.len() {
            return Err(PermError::ShiftIndex { index: i, len: self.len() });
        }
        let (a, b) = (&self.letters[i - 1], &self.letters[i]);
        let (x, y) = match dir {
            ShiftDirection::Right => (b.conjugate_by(a), a.clone()),
            ShiftDirection::Left => (b.clone(), a.conjugate_by(b)),
        };
        let mut letters = self.letters.clone();
        letters[i - 1] = x;
        letters[i] = y;
        Ok(ReducedWord { group: self.group, letters })
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.letters {
            write!(f, "{}", t.display(self.group.ty))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    fn p(g: Group, s: &str) -> SignedPerm {
        g.parse(s).unwrap()
    }

    #[test]
    fn cycle_notation() {
        let w = SignedPerm::from_images(vec![2, 3, 1, 4]).unwrap();
        assert_eq!(w.cycles(false), vec![Cycle::unsigned(vec![1, 2, 3])]);
        assert_eq!(w.display(CoxType::A).to_string(), "(1 2 3)");
        let b = SignedPerm::from_images(vec![2, -1]).unwrap();
        assert_eq!(b.display(CoxType::B).to_string(), "[1 2]");
        assert!(SignedPerm::identity(3).cycles(true).is_empty());
        assert_eq!(SignedPerm::identity(3).display(CoxType::B).to_string(), "()");
    }

    #[test]
    fn composition_is_right_to_left() {
        let g = Group::a(3);
        assert_eq!(p(g, "(1 2)(2 3)"), p(g, "(1 2 3)"));
    }

    #[test]
    fn canonical_forms() {
        let g = Group::d(4);
        assert_eq!(g.fmt_elem(&p(g, "((2 -1 4))")), "((1 -4 -2))");
        assert!(g.parse("[1]").is_err());
        let g = Group::b(4);
        assert_eq!(g.fmt_elem(&p(g, "[-1 2]")), "[1 -2]");
        assert_eq!(g.fmt_elem(&p(g, "[2 1]")), "[1 -2]");
        assert_eq!(p(g, "(1 2 -1 -2)"), p(g, "[1 2]"));
        assert_eq!(p(g, "(1 -2)"), p(g, "((1 -2))"));
        assert!(g.parse("(1 -1 2 -2)").is_err());
        assert!(Group::a(3).parse("((1 2))").is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(Group::a(3).length(&p(Group::a(3), "(1 2 3)")), 2);
        assert_eq!(Group::b(2).length(&p(Group::b(2), "[1 2]")), 2);
        assert_eq!(Group::d(4).length(&p(Group::d(4), "[1 2][4]")), 3);
        let odd = SignedPerm::from_images(vec![-1, 2, 3, 4]).unwrap();
        assert_eq!(Group::d(4).absolute_length(&odd), Err(PermError::OddSignChanges(4)));
    }

    #[test]
    fn absolute_order_examples() {
        let a = Group::a(3);
        assert!(a.le(&p(a, "(1 2)"), &p(a, "(1 2 3)")));
        let d = Group::d(4);
        let c = p(d, "[1 2 3][4]");
        assert_eq!(d.coxeter_element(), c);
        assert!(!d.le(&p(d, "((-1 2 4))"), &c));
        assert!(d.le(&p(d, "((2 -1 4))"), &c));
    }

    #[test]
    fn coxeter_elements() {
        assert_eq!(Group::a(5).coxeter_element(), p(Group::a(5), "(1 2 3 4 5)"));
        assert_eq!(Group::b(3).coxeter_element(), p(Group::b(3), "[1 2 3]"));
        for g in [Group::a(5), Group::b(3), Group::d(4), Group::d(5), Group::b(4)] {
            assert_eq!(g.coxeter_element().order(), g.coxeter_number(), "{g}");
        }
    }

    /// Rank-1 elements found by brute force: elements whose fixed space in
    /// the reflection representation has codimension one. For signed
    /// permutations the fixed space of `w` is spanned by the sums over
    /// paired orbits, so we count those directly from the images.
    fn rank_one_by_fixed_space(g: Group) -> usize {
        g.elements()
            .into_iter()
            .filter(|w| {
                // dimension of {x : w x = x} over Q computed by orbit sums
                let n = g.n;
                let mut seen = vec![false; n];
                let mut fixed = 0;
                for s in 1..=n as i8 {
                    if seen[s as usize - 1] {
                        continue;
                    }
                    let mut x = s;
                    let mut hit_neg = false;
                    loop {
                        seen[x.unsigned_abs() as usize - 1] = true;
                        x = w.apply(x);
                        if x == -s {
                            hit_neg = true;
                        }
                        if x == s {
                            break;
                        }
                    }
                    if !hit_neg {
                        fixed += 1;
                    }
                }
                let dim = if g.ty == CoxType::A { fixed - 1 } else { fixed };
                g.rank() - dim == 1
            })
            .count()
    }

    #[test]
    fn reflection_counts() {
        assert_eq!(Group::a(4).reflections().len(), 6);
        assert_eq!(Group::b(3).reflections().len(), 9);
        assert_eq!(Group::d(4).reflections().len(), 12);
        assert_eq!(rank_one_by_fixed_space(Group::b(3)), 9);
        assert_eq!(rank_one_by_fixed_space(Group::d(4)), 12);
        assert_eq!(rank_one_by_fixed_space(Group::a(4)), 6);
    }

    /// Distance from the identity in the Cayley graph on all reflections.
    fn bfs_lengths(g: Group) -> HashMap<SignedPerm, usize> {
        let refl = g.reflections();
        let mut dist = HashMap::new();
        dist.insert(g.identity(), 0);
        let mut q = VecDeque::from([g.identity()]);
        while let Some(w) = q.pop_front() {
            let d = dist[&w];
            for t in &refl {
                let u = w.compose(t);
                if !dist.contains_key(&u) {
                    dist.insert(u.clone(), d + 1);
                    q.push_back(u);
                }
            }
        }
        dist
    }

    #[test]
    fn length_matches_cayley_graph() {
        for g in [Group::a(5), Group::b(3), Group::b(4), Group::d(4), Group::d(3)] {
            let dist = bfs_lengths(g);
            assert_eq!(dist.len(), g.elements().len());
            for (w, d) in dist {
                assert_eq!(g.length(&w), d, "{g} {w:?}");
            }
        }
    }

    #[test]
    fn reduced_words_examples() {
        let a = Group::a(3);
        let words: HashSet<String> = a.reduced_words(&p(a, "(1 2 3)")).iter().map(|w| w.to_string()).collect();
        let expect: HashSet<String> = ["(1 2)(2 3)", "(2 3)(1 3)", "(1 3)(1 2)"].iter().map(|s| s.to_string()).collect();
        assert_eq!(words, expect);
        // brute force over ordered reflection pairs
        let refl = a.reflections();
        let brute =
            refl.iter().flat_map(|s| refl.iter().map(move |t| (s, t))).filter(|(s, t)| s.compose(t) == p(a, "(1 2 3)")).count();
        assert_eq!(brute, 3);
        assert_eq!(Group::a(4).reduced_words(&Group::a(4).coxeter_element()).len(), 16);
        assert_eq!(Group::b(2).reduced_words(&p(Group::b(2), "[1 2]")).len(), 4);
        for n in 2..=6 {
            let g = Group::a(n);
            assert_eq!(g.count_reduced_words(&g.coxeter_element()), (n as u64).pow(n as u32 - 2));
        }
    }

    #[test]
    fn hurwitz_shifts() {
        let a = Group::a(3);
        let w = ReducedWord::new(a, vec![p(a, "(1 2)"), p(a, "(2 3)")]).unwrap();
        assert_eq!(w.shift(1, ShiftDirection::Right).unwrap().to_string(), "(1 3)(1 2)");
        assert_eq!(w.shift(1, ShiftDirection::Left).unwrap().to_string(), "(2 3)(1 3)");
        let back = w.shift(1, ShiftDirection::Right).unwrap().shift(1, ShiftDirection::Left).unwrap();
        assert_eq!(back, w);
        assert!(w.shift(2, ShiftDirection::Left).is_err());
    }

    /// A word is reduced iff its root vectors are independent; over Q this
    /// is checked with the F_p embedding at a large prime in linalg tests.
    /// Here: the Subword Property for S_4.
    #[test]
    fn subword_property_s4() {
        let g = Group::a(4);
        let elems = g.elements();
        for w in &elems {
            let words = g.reduced_words(w);
            for v in &elems {
                let le = g.le(v, w);
                let sub = words.iter().any(|word| {
                    let k = word.len();
                    (0u32..1 << k).any(|mask| {
                        let letters: Vec<SignedPerm> =
                            (0..k).filter(|i| mask >> i & 1 == 1).map(|i| word.letters[i].clone()).collect();
                        ReducedWord::new(g, letters).is_some_and(|u| u.product() == *v)
                    })
                });
                assert_eq!(le, sub, "{v:?} {w:?}");
            }
        }
    }

    #[test]
    fn abs_order_relations() {
        for g in [Group::a(4), Group::b(3)] {
            let c = g.coxeter_element();
            let nc: Vec<SignedPerm> = g.elements().into_iter().filter(|w| g.le(w, &c)).collect();
            for u in &nc {
                for v in nc.iter().filter(|v| g.le(u, v)) {
                    for w in nc.iter().filter(|w| g.le(v, w)) {
                        let vi = v.inverse();
                        assert!(g.le(&vi.compose(w), w));
                        assert!(g.le(&w.compose(&vi), w));
                        assert!(g.le(&vi.compose(w), &u.inverse().compose(w)));
                        assert!(g.le(&u.inverse().compose(v), &u.inverse().compose(w)));
                    }
                }
            }
        }
    }

    #[test]
    fn type_d_paired_cycle_lengths_match_type_b() {
        let d = Group::d(5);
        let b = Group::b(4);
        for w in b.elements() {
            if w.cycles(true).iter().all(|c| c.kind == CycleKind::Paired) {
                let mut img = w.images().to_vec();
                img.push(5);
                let wd = SignedPerm::from_images(img).unwrap();
                assert_eq!(d.length(&wd), b.length(&w));
            }
        }
    }

    fn arb_group() -> impl Strategy<Value = Group> {
        prop_oneof![(1usize..=6).prop_map(Group::a), (1usize..=6).prop_map(Group::b), (2usize..=6).prop_map(Group::d),]
    }

    fn arb_elem(g: Group) -> impl Strategy<Value = SignedPerm> {
        let n = g.n;
        (Just(()).prop_perturb(move |_, mut rng| {
            use proptest::prelude::RngCore;
            let mut img: Vec<i8> = (1..=n as i8).collect();
            for i in (1..n).rev() {
                let j = (rng.next_u32() as usize) % (i + 1);
                img.swap(i, j);
            }
            if g.ty.is_signed() {
                for x in img.iter_mut() {
                    if rng.next_u32() & 1 == 1 {
                        *x = -*x;
                    }
                }
                if g.ty == CoxType::D && img.iter().filter(|&&x| x < 0).count() % 2 == 1 {
                    img[0] = -img[0];
                }
            }
            SignedPerm::from_images(img).unwrap()
        }))
        .boxed()
    }

    proptest! {
        #[test]
        fn length_is_conjugation_invariant((g, w, h) in arb_group().prop_flat_map(|g| (Just(g), arb_elem(g), arb_elem(g)))) {
            prop_assert_eq!(g.length(&w.conjugate_by(&h)), g.length(&w));
            prop_assert_eq!(g.length(&w.inverse()), g.length(&w));
        }

        #[test]
        fn print_parse_round_trip((g, w) in arb_group().prop_flat_map(|g| (Just(g), arb_elem(g)))) {
            let s = g.fmt_elem(&w);
            prop_assert_eq!(g.parse(&s).unwrap(), w);
        }

        #[test]
        fn cycles_multiply_back((g, w) in arb_group().prop_flat_map(|g| (Just(g), arb_elem(g)))) {
            let cycles = w.cycles(g.ty.is_signed());
            prop_assert_eq!(SignedPerm::from_cycles(g.n, &cycles).unwrap(), w);
        }
    }
}

//! Finite Coxeter systems and their elements.
//!
//! Elements are identified by their lexicographically minimal reduced word.
//! Equality of elements is decided purely combinatorially: two reduced words
//! name the same element iff they are connected by braid moves, so every
//! reduced word we meet is expanded into its full braid class once and the
//! class is memoized inside the system.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, RwLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default limit on the number of group elements enumerated.
pub const DEFAULT_SIZE_CAP: usize = 50_000;
/// Default limit on the number of words visited by one braid-closure search.
pub const DEFAULT_BRAID_BUDGET: usize = 1_000_000;
/// Descent sets are stored as `u64` bitmasks.
pub const MAX_RANK: usize = 64;

/// A word in the Coxeter generators. Letters are 1-based.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: u8) {
        self.0.push(s);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Contiguous range of positions `start..end` (0-based, half open).
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Letters at the given 0-based offsets, in order.
    pub fn select<I: IntoIterator<Item = usize>>(&self, offsets: I) -> Word {
        Word(offsets.into_iter().map(|i| self.0[i]).collect())
    }
}

impl From<Vec<u8>> for Word {
    fn from(letters: Vec<u8>) -> Self {
        Word(letters)
    }
}

impl From<&[u8]> for Word {
    fn from(letters: &[u8]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses comma-separated 1-based indices: `"1,2,3,1,2,1"`.
/// The empty string, `e` and `()` denote the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if trimmed.is_empty() || trimmed == "e" {
            return Ok(Word::empty());
        }
        trimmed
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<u8>() {
                    Ok(0) | Err(_) => Err(Error::Parse(format!("bad generator index `{tok}`"))),
                    Ok(v) => Ok(v),
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// A group element, stored by its lexicographically minimal reduced word.
///
/// Elements are plain values; every operation on them goes through the
/// [`CoxeterSystem`] that produced them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    word: Word,
}

impl Element {
    pub fn identity() -> Self {
        Element { word: Word::empty() }
    }

    pub fn canonical_word(&self) -> &Word {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// Ordered by length, then by canonical word.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.length().cmp(&other.length()).then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for s in self.word.letters() {
            write!(f, "s{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(serializer)
    }
}

/// Named finite Coxeter types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    I2(usize),
    H3,
}

impl CoxeterType {
    pub fn rank(&self) -> usize {
        match *self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) => n,
            CoxeterType::I2(_) => 2,
            CoxeterType::H3 => 3,
        }
    }

    /// Standard Coxeter matrix. In type B the edge labelled 4 joins
    /// generators 1 and 2; in type D generator n hangs off generator n-2.
    pub fn matrix(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.rank();
        let mut m = vec![vec![2usize; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut set = |i: usize, j: usize, v: usize| {
            m[i - 1][j - 1] = v;
            m[j - 1][i - 1] = v;
        };
        match *self {
            CoxeterType::A(n) => {
                if n == 0 {
                    return Err(Error::UnknownType("A0".into()));
                }
                for i in 1..n {
                    set(i, i + 1, 3);
                }
            }
            CoxeterType::B(n) => {
                if n < 2 {
                    return Err(Error::UnknownType(format!("B{n}")));
                }
                set(1, 2, 4);
                for i in 2..n {
                    set(i, i + 1, 3);
                }
            }
            CoxeterType::D(n) => {
                if n < 3 {
                    return Err(Error::UnknownType(format!("D{n}")));
                }
                for i in 1..n - 1 {
                    set(i, i + 1, 3);
                }
                set(n - 2, n, 3);
            }
            CoxeterType::I2(m) => {
                if m < 2 {
                    return Err(Error::UnknownType(format!("I2:{m}")));
                }
                set(1, 2, m);
            }
            CoxeterType::H3 => {
                set(1, 2, 5);
                set(2, 3, 3);
            }
        }
        Ok(m)
    }

    /// Known group order, for cross-checking enumeration.
    pub fn order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match *self {
            CoxeterType::A(n) => fact(n + 1),
            CoxeterType::B(n) => fact(n) << n,
            CoxeterType::D(n) => fact(n) << (n - 1),
            CoxeterType::I2(m) => 2 * m as u128,
            CoxeterType::H3 => 120,
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::I2(m) => write!(f, "I2:{m}"),
            CoxeterType::H3 => write!(f, "H3"),
        }
    }
}

/// Accepts `A3`, `B2`, `D4`, `H3`, `I2:5` and `I2(5)`.
impl FromStr for CoxeterType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::UnknownType(t.to_string());
        if t.eq_ignore_ascii_case("H3") {
            return Ok(CoxeterType::H3);
        }
        if let Some(rest) = t.strip_prefix("I2").or_else(|| t.strip_prefix("i2")) {
            let m = rest
                .trim_start_matches([':', '('])
                .trim_end_matches(')')
                .parse::<usize>()
                .map_err(|_| bad())?;
            return Ok(CoxeterType::I2(m));
        }
        let mut chars = t.chars();
        let head = chars.next().ok_or_else(bad)?;
        let n = chars.as_str().parse::<usize>().map_err(|_| bad())?;
        match head.to_ascii_uppercase() {
            'A' => Ok(CoxeterType::A(n)),
            'B' => Ok(CoxeterType::B(n)),
            'D' => Ok(CoxeterType::D(n)),
            _ => Err(bad()),
        }
    }
}

/// Reads a Coxeter matrix: the first line holds `n`, then `n` rows of `n`
/// whitespace-separated integers. Blank lines are ignored.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?
        .parse()
        .map_err(|_| Error::Parse("first line must be the rank".into()))?;
    let rows = lines
        .map(|l| {
            l.split_whitespace()
                .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad matrix entry `{x}`"))))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("expected {n} rows of {n} entries")));
    }
    Ok(rows)
}

/// Braid class of one element, computed once.
#[derive(Debug)]
struct ElementData {
    /// All reduced words, sorted.
    reduced_words: Vec<Word>,
    right_descents: u64,
    left_descents: u64,
}

#[derive(Default)]
struct Cache {
    by_word: HashMap<Word, Element>,
    data: HashMap<Element, Arc<ElementData>>,
}

struct Inner {
    rank: usize,
    matrix: Vec<Vec<usize>>,
    kind: Option<CoxeterType>,
    size_cap: usize,
    braid_budget: usize,
    cache: RwLock<Cache>,
    group: Mutex<Option<Arc<Vec<Element>>>>,
}

/// A Coxeter system `(W, S)` given by its Coxeter matrix.
///
/// Cheap to clone; clones share the memoization cache, which is internally
/// synchronized.
#[derive(Clone)]
pub struct CoxeterSystem {
    inner: Arc<Inner>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("kind", &self.inner.kind)
            .field("matrix", &self.inner.matrix)
            .field("size_cap", &self.inner.size_cap)
            .finish()
    }
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.inner.matrix == other.inner.matrix
    }
}

impl Eq for CoxeterSystem {}

impl CoxeterSystem {
    /// Validates a Coxeter matrix and builds the system.
    pub fn new(matrix: Vec<Vec<usize>>, size_cap: usize) -> Result<Self> {
        Self::build(matrix, size_cap, DEFAULT_BRAID_BUDGET, None)
    }

    pub fn named(kind: CoxeterType) -> Result<Self> {
        Self::named_with_cap(kind, DEFAULT_SIZE_CAP)
    }

    pub fn named_with_cap(kind: CoxeterType, size_cap: usize) -> Result<Self> {
        Self::build(kind.matrix()?, size_cap, DEFAULT_BRAID_BUDGET, Some(kind))
    }

    /// Returns a system with the same matrix but a different braid-closure budget.
    /// The new system starts with an empty cache.
    pub fn with_braid_budget(&self, budget: usize) -> Result<Self> {
        Self::build(self.inner.matrix.clone(), self.inner.size_cap, budget, self.inner.kind)
    }

    fn build(
        matrix: Vec<Vec<usize>>,
        size_cap: usize,
        braid_budget: usize,
        kind: Option<CoxeterType>,
    ) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("rank must be positive".into()));
        }
        if n > MAX_RANK {
            return Err(Error::InvalidMatrix(format!("rank {n} exceeds {MAX_RANK}")));
        }
        if size_cap == 0 || braid_budget == 0 {
            return Err(Error::InvalidMatrix("caps must be positive".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
            }
            if row[i] != 1 {
                return Err(Error::InvalidMatrix(format!("diagonal entry ({0},{0}) is {1}, expected 1", i + 1, row[i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidMatrix(format!("asymmetric at ({},{})", i + 1, j + 1)));
                }
                if matrix[i][j] < 2 {
                    return Err(Error::InvalidMatrix(format!(
                        "off-diagonal entry ({},{}) is {}, expected >= 2",
                        i + 1,
                        j + 1,
                        matrix[i][j]
                    )));
                }
            }
        }
        Ok(CoxeterSystem {
            inner: Arc::new(Inner {
                rank: n,
                matrix,
                kind,
                size_cap,
                braid_budget,
                cache: RwLock::new(Cache::default()),
                group: Mutex::new(None),
            }),
        })
    }

    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn matrix(&self) -> &[Vec<usize>] {
        &self.inner.matrix
    }

    /// `m(i, j)` for 1-based generator indices.
    pub fn m(&self, i: u8, j: u8) -> usize {
        self.inner.matrix[i as usize - 1][j as usize - 1]
    }

    pub fn kind(&self) -> Option<CoxeterType> {
        self.inner.kind
    }

    pub fn size_cap(&self) -> usize {
        self.inner.size_cap
    }

    pub fn braid_budget(&self) -> usize {
        self.inner.braid_budget
    }

    /// Short human-readable name: the named type, or the matrix.
    pub fn name(&self) -> String {
        match self.inner.kind {
            Some(k) => k.to_string(),
            None => format!("{:?}", self.inner.matrix),
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> {
        1..=self.inner.rank as u8
    }

    pub fn check_letter(&self, s: u8) -> Result<()> {
        if s == 0 || s as usize > self.inner.rank {
            return Err(Error::GeneratorOutOfRange { letter: s as usize, rank: self.inner.rank });
        }
        Ok(())
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        word.letters().iter().try_for_each(|&s| self.check_letter(s))
    }

    pub fn generator(&self, s: u8) -> Result<Element> {
        self.check_letter(s)?;
        Ok(Element { word: Word(vec![s]) })
    }

    /// All words reachable from `word` by braid moves (including commutations).
    /// Only meaningful for reduced words.
    fn braid_closure(&self, word: &Word) -> Result<Vec<Word>> {
        let budget = self.inner.braid_budget;
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.clone());
        queue.push_back(word.clone());
        while let Some(cur) = queue.pop_front() {
            let w = cur.letters();
            for i in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[i], w[i + 1]);
                if a == b {
                    continue;
                }
                let m = self.m(a, b);
                if i + m > w.len() {
                    continue;
                }
                let alternates = (0..m).all(|k| w[i + k] == if k % 2 == 0 { a } else { b });
                if !alternates {
                    continue;
                }
                let mut next = w.to_vec();
                for k in 0..m {
                    next[i + k] = if k % 2 == 0 { b } else { a };
                }
                let next = Word(next);
                if seen.insert(next.clone()) {
                    if seen.len() > budget {
                        return Err(Error::BraidBudgetExceeded { budget });
                    }
                    queue.push_back(next);
                }
            }
        }
        let mut words: Vec<Word> = seen.into_iter().collect();
        words.sort();
        Ok(words)
    }

    /// Element named by a word the caller knows to be reduced.
    fn from_reduced(&self, word: &Word) -> Result<Element> {
        if let Some(e) = self.inner.cache.read().unwrap().by_word.get(word) {
            return Ok(e.clone());
        }
        let words = self.braid_closure(word)?;
        let element = Element { word: words[0].clone() };
        let mut right = 0u64;
        let mut left = 0u64;
        for w in &words {
            if let (Some(&first), Some(&last)) = (w.letters().first(), w.letters().last()) {
                left |= 1 << (first - 1);
                right |= 1 << (last - 1);
            }
        }
        let mut cache = self.inner.cache.write().unwrap();
        for w in &words {
            cache.by_word.insert(w.clone(), element.clone());
        }
        cache.data.entry(element.clone()).or_insert_with(|| {
            Arc::new(ElementData { reduced_words: words, right_descents: right, left_descents: left })
        });
        Ok(element)
    }

    fn data(&self, e: &Element) -> Result<Arc<ElementData>> {
        if let Some(d) = self.inner.cache.read().unwrap().data.get(e) {
            return Ok(d.clone());
        }
        self.check_word(&e.word)?;
        let canon = self.from_reduced(&e.word)?;
        Ok(self.inner.cache.read().unwrap().data[&canon].clone())
    }

    /// The element represented by an arbitrary word, reduced by nil-moves
    /// and braid moves.
    pub fn canonicalize(&self, word: &Word) -> Result<Element> {
        self.check_word(word)?;
        if let Some(e) = self.inner.cache.read().unwrap().by_word.get(word) {
            return Ok(e.clone());
        }
        word.letters().iter().try_fold(Element::identity(), |acc, &s| self.mult_right(&acc, s))
    }

    pub fn length(&self, e: &Element) -> usize {
        e.length()
    }

    /// `e * s`.
    pub fn mult_right(&self, e: &Element, s: u8) -> Result<Element> {
        self.check_letter(s)?;
        let data = self.data(e)?;
        if data.right_descents & (1 << (s - 1)) != 0 {
            let w = data
                .reduced_words
                .iter()
                .find(|w| w.letters().last() == Some(&s))
                .expect("descent bit implies a reduced word ending in s");
            self.from_reduced(&w.slice(0, w.len() - 1))
        } else {
            let mut w = e.word.clone();
            w.push(s);
            self.from_reduced(&w)
        }
    }

    /// `s * e`.
    pub fn mult_left(&self, s: u8, e: &Element) -> Result<Element> {
        self.check_letter(s)?;
        let data = self.data(e)?;
        if data.left_descents & (1 << (s - 1)) != 0 {
            let w = data
                .reduced_words
                .iter()
                .find(|w| w.letters().first() == Some(&s))
                .expect("descent bit implies a reduced word starting with s");
            self.from_reduced(&w.slice(1, w.len()))
        } else {
            let mut letters = vec![s];
            letters.extend_from_slice(e.word.letters());
            self.from_reduced(&Word(letters))
        }
    }

    /// Group product `a * b`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        b.word.letters().iter().try_fold(a.clone(), |acc, &s| self.mult_right(&acc, s))
    }

    pub fn inverse(&self, e: &Element) -> Result<Element> {
        self.from_reduced(&e.word.reversed())
    }

    pub fn is_right_descent(&self, e: &Element, s: u8) -> Result<bool> {
        self.check_letter(s)?;
        Ok(self.data(e)?.right_descents & (1 << (s - 1)) != 0)
    }

    pub fn is_left_descent(&self, e: &Element, s: u8) -> Result<bool> {
        self.check_letter(s)?;
        Ok(self.data(e)?.left_descents & (1 << (s - 1)) != 0)
    }

    pub fn right_descents(&self, e: &Element) -> Result<Vec<u8>> {
        let mask = self.data(e)?.right_descents;
        Ok(self.generators().filter(|s| mask & (1 << (s - 1)) != 0).collect())
    }

    pub fn left_descents(&self, e: &Element) -> Result<Vec<u8>> {
        let mask = self.data(e)?.left_descents;
        Ok(self.generators().filter(|s| mask & (1 << (s - 1)) != 0).collect())
    }

    /// Every reduced word of `e`, sorted lexicographically.
    pub fn reduced_words(&self, e: &Element) -> Result<Vec<Word>> {
        Ok(self.data(e)?.reduced_words.clone())
    }

    /// Whether the group is finite: the bilinear form `-cos(pi / m(i,j))`
    /// is positive definite. Decided by Cholesky pivots in `f64`; a finite
    /// group's smallest pivot only nears the tolerance for dihedral `m`
    /// beyond about 10^7.
    pub fn is_finite(&self) -> bool {
        let n = self.rank();
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| -(std::f64::consts::PI / self.inner.matrix[i][j] as f64).cos()).collect())
            .collect();
        for k in 0..n {
            let pivot = a[k][k];
            if pivot <= 1e-13 {
                return false;
            }
            for i in k + 1..n {
                let f = a[i][k] / pivot;
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        true
    }

    /// All elements, sorted by (length, canonical word).
    pub fn enumerate_group(&self) -> Result<Arc<Vec<Element>>> {
        if let Some(g) = self.inner.group.lock().unwrap().as_ref() {
            return Ok(g.clone());
        }
        let cap = self.inner.size_cap;
        // an infinite group would exceed any cap, but only after braid
        // closures over ever longer words
        if !self.is_finite() {
            return Err(Error::SizeCapExceeded { cap });
        }
        let mut all = vec![Element::identity()];
        let mut level = vec![Element::identity()];
        while !level.is_empty() {
            let mut next: HashSet<Element> = HashSet::new();
            for e in &level {
                for s in self.generators() {
                    if !self.is_right_descent(e, s)? {
                        next.insert(self.mult_right(e, s)?);
                    }
                }
            }
            if all.len() + next.len() > cap {
                return Err(Error::SizeCapExceeded { cap });
            }
            let mut next: Vec<Element> = next.into_iter().collect();
            next.sort();
            all.extend(next.iter().cloned());
            level = next;
        }
        let all = Arc::new(all);
        *self.inner.group.lock().unwrap() = Some(all.clone());
        Ok(all)
    }

    /// The unique element of maximal length. Climbs by non-descents, which
    /// terminates exactly when every generator is a descent.
    pub fn longest_element(&self) -> Result<Element> {
        let cap = self.inner.size_cap;
        if !self.is_finite() {
            return Err(Error::SizeCapExceeded { cap });
        }
        let mut w = Element::identity();
        'climb: loop {
            for s in self.generators() {
                if !self.is_right_descent(&w, s)? {
                    w = self.mult_right(&w, s)?;
                    if w.length() > cap {
                        return Err(Error::SizeCapExceeded { cap });
                    }
                    continue 'climb;
                }
            }
            return Ok(w);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sys(t: &str) -> CoxeterSystem {
        CoxeterSystem::named(t.parse().unwrap()).unwrap()
    }

    #[test]
    fn named_matrices() {
        assert_eq!(CoxeterType::A(2).matrix().unwrap(), vec![vec![1, 3], vec![3, 1]]);
        assert_eq!(CoxeterType::B(2).matrix().unwrap(), vec![vec![1, 4], vec![4, 1]]);
        assert_eq!(CoxeterType::I2(7).matrix().unwrap()[0][1], 7);
        let h3 = CoxeterType::H3.matrix().unwrap();
        assert_eq!((h3[0][1], h3[1][2], h3[0][2]), (5, 3, 2));
        let d4 = CoxeterType::D(4).matrix().unwrap();
        assert_eq!((d4[1][3], d4[2][3], d4[0][3]), (3, 2, 2));
    }

    #[test]
    fn matrix_validation() {
        assert!(matches!(
            CoxeterSystem::new(vec![vec![1, 2], vec![3, 1]], 10),
            Err(Error::InvalidMatrix(_))
        ));
        assert!(CoxeterSystem::new(vec![vec![2, 3], vec![3, 1]], 10).is_err());
        assert!(CoxeterSystem::new(vec![vec![1, 1], vec![1, 1]], 10).is_err());
        assert!(CoxeterSystem::new(vec![], 10).is_err());
        assert!(CoxeterSystem::new(vec![vec![1, 3], vec![3, 1]], 10).is_ok());
    }

    #[test]
    fn matrix_files() {
        assert_eq!(parse_matrix("2\n1 4\n4 1\n").unwrap(), vec![vec![1, 4], vec![4, 1]]);
        assert!(parse_matrix("2\n1 4\n").is_err());
        assert!(parse_matrix("x").is_err());
        assert!(CoxeterSystem::new(parse_matrix("2\n1 2\n3 1").unwrap(), 100).is_err());
    }

    #[test]
    fn parse_types_and_words() {
        assert_eq!("I2:5".parse::<CoxeterType>().unwrap(), CoxeterType::I2(5));
        assert_eq!("I2(8)".parse::<CoxeterType>().unwrap(), CoxeterType::I2(8));
        assert_eq!("b3".parse::<CoxeterType>().unwrap(), CoxeterType::B(3));
        assert!("X3".parse::<CoxeterType>().is_err());
        assert_eq!(w("1,2,3").letters(), &[1, 2, 3]);
        assert!(w("e").is_empty());
        assert!(w("").is_empty());
        assert!("1,0".parse::<Word>().is_err());
        assert!("1,x".parse::<Word>().is_err());
    }

    #[test]
    fn canonical_forms() {
        let a2 = sys("A2");
        assert!(a2.canonicalize(&w("1,1")).unwrap().is_identity());
        assert_eq!(a2.canonicalize(&w("2,1,2")).unwrap().canonical_word(), &w("1,2,1"));
        let b2 = sys("B2");
        assert_eq!(b2.canonicalize(&w("2,1,2,1")).unwrap().canonical_word(), &w("1,2,1,2"));
        assert!(matches!(
            a2.canonicalize(&w("1,3")),
            Err(Error::GeneratorOutOfRange { letter: 3, rank: 2 })
        ));
    }

    #[test]
    fn lengths() {
        let b2 = sys("B2");
        assert_eq!(Element::identity().length(), 0);
        assert_eq!(b2.longest_element().unwrap().length(), 4);
        let a3 = sys("A3");
        assert_eq!(a3.canonicalize(&w("1,2,1")).unwrap().length(), 3);
    }

    #[test]
    fn multiplication() {
        let b2 = sys("B2");
        let id = Element::identity();
        assert_eq!(b2.mult_right(&id, 1).unwrap(), b2.generator(1).unwrap());
        let w0 = b2.canonicalize(&w("1,2,1,2")).unwrap();
        assert_eq!(b2.mult_right(&w0, 2).unwrap().canonical_word(), &w("1,2,1"));
        let a2 = sys("A2");
        let x = a2.canonicalize(&w("1,2")).unwrap();
        assert_eq!(a2.mult_right(&x, 1).unwrap(), a2.longest_element().unwrap());
        assert_eq!(a2.mult_left(2, &x).unwrap().canonical_word(), &w("1,2,1"));
    }

    #[test]
    fn descents() {
        let b2 = sys("B2");
        let w0 = b2.longest_element().unwrap();
        for s in 1..=2 {
            assert!(!b2.is_right_descent(&Element::identity(), s).unwrap());
            assert!(b2.is_right_descent(&w0, s).unwrap());
            assert!(b2.is_left_descent(&w0, s).unwrap());
        }
        let a2 = sys("A2");
        let x = a2.canonicalize(&w("1,2")).unwrap();
        assert!(!a2.is_right_descent(&x, 1).unwrap());
        assert!(a2.is_right_descent(&x, 2).unwrap());
        assert!(a2.is_left_descent(&x, 1).unwrap());
    }

    #[test]
    fn group_orders() {
        for (t, n) in [("A1", 2), ("B2", 8), ("A3", 24), ("H3", 120)] {
            assert_eq!(sys(t).enumerate_group().unwrap().len(), n, "{t}");
        }
        let a1 = sys("A1").enumerate_group().unwrap();
        assert_eq!(a1[1].canonical_word(), &w("1"));
    }

    #[test]
    fn longest_elements() {
        assert_eq!(sys("B2").longest_element().unwrap().canonical_word(), &w("1,2,1,2"));
        let a3 = sys("A3");
        let w0 = a3.longest_element().unwrap();
        assert_eq!(w0.length(), 6);
        assert_eq!(a3.canonicalize(&w("1,2,3,1,2,1")).unwrap(), w0);
        assert_eq!(sys("A1").longest_element().unwrap().canonical_word(), &w("1"));
    }

    #[test]
    fn cap_and_budget_errors() {
        let a3 = CoxeterSystem::named_with_cap(CoxeterType::A(3), 10).unwrap();
        assert_eq!(a3.enumerate_group().unwrap_err(), Error::SizeCapExceeded { cap: 10 });
        let tight = sys("A4").with_braid_budget(20).unwrap();
        assert!(matches!(tight.longest_element(), Err(Error::BraidBudgetExceeded { budget: 20 })));
        // affine A2 is infinite
        let affine = CoxeterSystem::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]], 40).unwrap();
        assert!(!affine.is_finite());
        let big = CoxeterSystem::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]], 50_000).unwrap();
        assert!(matches!(big.enumerate_group(), Err(Error::SizeCapExceeded { cap: 50_000 })));
        for t in ["A1", "A5", "B4", "D4", "H3", "I2:7", "I2:1000000"] {
            assert!(sys(t).is_finite(), "{t}");
        }
        let triangle = CoxeterSystem::new(vec![vec![1, 2, 3], vec![2, 1, 7], vec![3, 7, 1]], 40).unwrap();
        assert!(!triangle.is_finite());
        assert!(matches!(affine.enumerate_group(), Err(Error::SizeCapExceeded { .. })));
        let err = affine.longest_element().unwrap_err();
        assert!(matches!(err, Error::SizeCapExceeded { .. } | Error::BraidBudgetExceeded { .. }), "{err}");
    }

    #[test]
    fn reduced_words_of_w0() {
        let b2 = sys("B2");
        let words = b2.reduced_words(&b2.longest_element().unwrap()).unwrap();
        assert_eq!(words, vec![w("1,2,1,2"), w("2,1,2,1")]);
        let a4 = sys("A4");
        assert_eq!(a4.reduced_words(&a4.longest_element().unwrap()).unwrap().len(), 768);
    }
}

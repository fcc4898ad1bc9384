//! 0-Hecke (Demazure) products, Bruhat and weak comparisons, and the
//! lex-first sorting subword `Q(u)` of a reduced word `Q`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::coxeter::{CoxeterSystem, Element, Word};
use crate::error::{Error, Result};

/// Positions of a fixed ambient word, 1-based. Backed by a bitmask, so the
/// ambient word may have at most 64 letters.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct IndexSet {
    mask: u64,
}

pub const MAX_POSITIONS: usize = 64;

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet { mask: 0 }
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_POSITIONS);
        IndexSet { mask: if n == 64 { u64::MAX } else { (1u64 << n) - 1 } }
    }

    pub fn from_mask(mask: u64) -> Self {
        IndexSet { mask }
    }

    /// Strictly increasing 1-based positions.
    pub fn from_positions(positions: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        let mut prev = 0;
        for &p in positions {
            if p == 0 || p > MAX_POSITIONS {
                return Err(Error::Precondition(format!("position {p} out of range")));
            }
            if p <= prev {
                return Err(Error::Precondition("positions must be strictly increasing".into()));
            }
            prev = p;
            mask |= 1 << (p - 1);
        }
        Ok(IndexSet { mask })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, position: usize) -> bool {
        (1..=MAX_POSITIONS).contains(&position) && self.mask & (1 << (position - 1)) != 0
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn insert(&mut self, position: usize) {
        self.mask |= 1 << (position - 1);
    }

    /// Complement inside `{1, ..., n}`.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet { mask: IndexSet::full(n).mask & !self.mask }
    }

    /// Largest position, or 0 for the empty set.
    pub fn max_position(&self) -> usize {
        64 - self.mask.leading_zeros() as usize
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=MAX_POSITIONS).filter(move |&p| self.mask & (1 << (p - 1)) != 0)
    }

    /// 0-based offsets, for indexing into a word.
    pub fn offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.positions().map(|p| p - 1)
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        if self.max_position() > n {
            return Err(Error::Precondition(format!(
                "index set {self} exceeds word length {n}"
            )));
        }
        Ok(())
    }

    /// All subsets of `{1, ..., n}`.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = IndexSet> {
        assert!(n < 64, "cannot enumerate 2^{n} subsets");
        (0..1u64 << n).map(IndexSet::from_mask)
    }
}

/// Lexicographic order on the increasing position sequences.
impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.positions().cmp(other.positions())
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.positions().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.positions())
    }
}

/// Letters of `word` at the positions in `set`.
pub fn subword(word: &Word, set: &IndexSet) -> Result<Word> {
    set.check_within(word.len())?;
    Ok(word.select(set.offsets()))
}

/// Left-to-right Demazure fold: `e_w e_s = e_w` when `s` is a right descent
/// of `w`, else `e_{ws}`.
pub fn demazure(sys: &CoxeterSystem, word: &Word) -> Result<Element> {
    sys.check_word(word)?;
    word.letters().iter().try_fold(Element::identity(), |w, &s| {
        if sys.is_right_descent(&w, s)? {
            Ok(w)
        } else {
            sys.mult_right(&w, s)
        }
    })
}

/// Demazure product `s * w` from the left.
fn demazure_left(sys: &CoxeterSystem, s: u8, w: &Element) -> Result<Element> {
    if sys.is_left_descent(w, s)? {
        Ok(w.clone())
    } else {
        sys.mult_left(s, w)
    }
}

/// Every reduced word of `e`: its braid class.
pub fn reduced_words(sys: &CoxeterSystem, e: &Element) -> Result<Vec<Word>> {
    sys.reduced_words(e)
}

pub fn is_reduced(sys: &CoxeterSystem, word: &Word) -> Result<bool> {
    Ok(sys.canonicalize(word)?.length() == word.len())
}

/// `u <=_B v`, via the descent recursion: for a right descent `s` of `v`,
/// `u <= v` iff `min(u, us) <= vs`.
pub fn bruhat_leq(sys: &CoxeterSystem, u: &Element, v: &Element) -> Result<bool> {
    let mut u = u.clone();
    let mut v = v.clone();
    loop {
        if u.length() > v.length() {
            return Ok(false);
        }
        if u.is_identity() {
            return Ok(true);
        }
        if u.length() == v.length() {
            return Ok(u == v);
        }
        let s = *v.canonical_word().letters().last().expect("v is not the identity");
        if sys.is_right_descent(&u, s)? {
            u = sys.mult_right(&u, s)?;
        }
        v = sys.mult_right(&v, s)?;
    }
}

pub fn bruhat_lt(sys: &CoxeterSystem, u: &Element, v: &Element) -> Result<bool> {
    Ok(u != v && bruhat_leq(sys, u, v)?)
}

/// Right weak order: `l(u) + l(u^-1 v) = l(v)`.
pub fn weak_leq(sys: &CoxeterSystem, u: &Element, v: &Element) -> Result<bool> {
    if u.length() > v.length() {
        return Ok(false);
    }
    let quotient = sys.multiply(&sys.inverse(u)?, v)?;
    Ok(u.length() + quotient.length() == v.length())
}

/// Whether some subword of `q` is a reduced word for `u`.
pub fn contains_reduced_word(sys: &CoxeterSystem, q: &Word, u: &Element) -> Result<bool> {
    bruhat_leq(sys, u, &demazure(sys, q)?)
}

/// Precomputed suffix Demazure products of a word, for repeated sorting
/// subword queries against the same `Q`.
#[derive(Clone, Debug)]
pub struct SortingWord {
    sys: CoxeterSystem,
    word: Word,
    /// `suffix[j]` is the Demazure product of letters `j..`.
    suffix: Vec<Element>,
}

impl SortingWord {
    /// Fails unless `q` is reduced.
    pub fn new(sys: &CoxeterSystem, q: &Word) -> Result<Self> {
        if !is_reduced(sys, q)? {
            return Err(Error::NotReduced(q.to_string()));
        }
        let n = q.len();
        let mut suffix = vec![Element::identity(); n + 1];
        for j in (0..n).rev() {
            suffix[j] = demazure_left(sys, q.letters()[j], &suffix[j + 1])?;
        }
        Ok(SortingWord { sys: sys.clone(), word: q.clone(), suffix })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    /// The element `Q` is a reduced word for.
    pub fn element(&self) -> &Element {
        &self.suffix[0]
    }

    /// `Q(u)`: lex-first positions whose subword is a reduced word for `u`.
    ///
    /// Greedy: take position `j` iff its letter is a left descent of what is
    /// left to spell and the rest of the word can still spell the remainder.
    pub fn sorting_subword(&self, u: &Element) -> Result<IndexSet> {
        let sys = &self.sys;
        if !bruhat_leq(sys, u, self.element())? {
            return Err(Error::Precondition(format!(
                "{u} is not below {} in Bruhat order",
                self.element()
            )));
        }
        let mut target = u.clone();
        let mut set = IndexSet::empty();
        for (j, &s) in self.word.letters().iter().enumerate() {
            if target.is_identity() {
                break;
            }
            if !sys.is_left_descent(&target, s)? {
                continue;
            }
            let rest = sys.mult_left(s, &target)?;
            if bruhat_leq(sys, &rest, &self.suffix[j + 1])? {
                set.insert(j + 1);
                target = rest;
            }
        }
        debug_assert!(target.is_identity());
        Ok(set)
    }
}

/// `Q(u)` for a reduced word `q`.
pub fn sorting_subword(sys: &CoxeterSystem, q: &Word, u: &Element) -> Result<IndexSet> {
    SortingWord::new(sys, q)?.sorting_subword(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterType;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sys(t: &str) -> CoxeterSystem {
        CoxeterSystem::named(t.parse().unwrap()).unwrap()
    }

    fn el(sys: &CoxeterSystem, s: &str) -> Element {
        sys.canonicalize(&w(s)).unwrap()
    }

    fn set(p: &[usize]) -> IndexSet {
        IndexSet::from_positions(p).unwrap()
    }

    #[test]
    fn index_set_basics() {
        let s = set(&[1, 2, 4]);
        assert_eq!(s.to_string(), "{1,2,4}");
        assert_eq!(s.len(), 3);
        assert_eq!(s.max_position(), 4);
        assert_eq!(s.complement(6), set(&[3, 5, 6]));
        assert!(set(&[2]).is_subset(&s));
        assert!(IndexSet::from_positions(&[2, 1]).is_err());
        assert!(IndexSet::from_positions(&[0]).is_err());
        assert!(s.check_within(3).is_err());
        assert!(set(&[1, 2, 3]) < set(&[1, 2, 4]));
        assert!(set(&[1, 5]) < set(&[2, 3]));
    }

    #[test]
    fn demazure_products() {
        let a3 = sys("A3");
        assert!(demazure(&a3, &Word::empty()).unwrap().is_identity());
        assert_eq!(demazure(&a3, &w("1,2,1,2")).unwrap(), el(&a3, "1,2,1"));
        let b2 = sys("B2");
        assert_eq!(demazure(&b2, &w("1,2,1,2,1")).unwrap(), b2.longest_element().unwrap());
        assert_eq!(demazure(&b2, &w("1,1,2")).unwrap(), el(&b2, "1,2"));
    }

    #[test]
    fn reducedness() {
        let a2 = sys("A2");
        assert!(is_reduced(&a2, &w("1,2,1")).unwrap());
        assert!(!is_reduced(&a2, &w("1,2,2,1")).unwrap());
        let b2 = sys("B2");
        assert!(!is_reduced(&b2, &w("1,2,1,2,1")).unwrap());
    }

    #[test]
    fn bruhat_examples() {
        let b2 = sys("B2");
        let id = Element::identity();
        assert!(bruhat_leq(&b2, &id, &el(&b2, "2,1,2")).unwrap());
        assert!(bruhat_leq(&b2, &el(&b2, "1"), &el(&b2, "2,1,2")).unwrap());
        assert!(!bruhat_leq(&b2, &el(&b2, "1,2,1"), &el(&b2, "2,1,2")).unwrap());
        assert!(!bruhat_lt(&b2, &id, &id).unwrap());
    }

    #[test]
    fn weak_examples() {
        let b2 = sys("B2");
        assert!(weak_leq(&b2, &Element::identity(), &el(&b2, "1,2")).unwrap());
        assert!(weak_leq(&b2, &el(&b2, "2"), &el(&b2, "2,1,2")).unwrap());
        assert!(!weak_leq(&b2, &el(&b2, "1"), &el(&b2, "2,1")).unwrap());
    }

    #[test]
    fn contains_examples() {
        let b2 = sys("B2");
        assert!(contains_reduced_word(&b2, &w("1,1"), &Element::identity()).unwrap());
        assert!(contains_reduced_word(&b2, &w("1,2,1,2"), &el(&b2, "2,1,2")).unwrap());
        assert!(!contains_reduced_word(&b2, &w("1,1"), &el(&b2, "2")).unwrap());
    }

    #[test]
    fn sorting_subword_examples() {
        let a3 = sys("A3");
        let q = w("1,2,3,1,2,1");
        assert_eq!(sorting_subword(&a3, &q, &Element::identity()).unwrap(), IndexSet::empty());
        assert_eq!(sorting_subword(&a3, &q, &el(&a3, "1,2,1")).unwrap(), set(&[1, 2, 4]));
        assert_eq!(
            sorting_subword(&a3, &q, &a3.longest_element().unwrap()).unwrap(),
            IndexSet::full(6)
        );
        let b2 = sys("B2");
        let q = w("2,1,2");
        assert_eq!(sorting_subword(&b2, &q, &el(&b2, "1")).unwrap(), set(&[2]));
        assert_eq!(sorting_subword(&b2, &q, &el(&b2, "2,1")).unwrap(), set(&[1, 2]));
        assert_eq!(sorting_subword(&b2, &q, &el(&b2, "2")).unwrap(), set(&[1]));
        assert_eq!(sorting_subword(&b2, &q, &el(&b2, "1,2")).unwrap(), set(&[2, 3]));
    }

    #[test]
    fn sorting_subword_preconditions() {
        let b2 = sys("B2");
        assert!(matches!(
            sorting_subword(&b2, &w("1,1"), &Element::identity()),
            Err(Error::NotReduced(_))
        ));
        assert!(matches!(
            sorting_subword(&b2, &w("2,1,2"), &el(&b2, "1,2,1")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn demazure_equals_canonical_on_reduced_words() {
        let b3 = CoxeterSystem::named(CoxeterType::B(3)).unwrap();
        for e in b3.enumerate_group().unwrap().iter() {
            for r in b3.reduced_words(e).unwrap() {
                assert_eq!(&demazure(&b3, &r).unwrap(), e);
            }
        }
    }
}

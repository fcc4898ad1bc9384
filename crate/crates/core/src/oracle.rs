//! Brute-force reference implementations.
//!
//! Nothing here is used by the fast paths; these exist so the verifier and
//! the tests can compare the word-based algorithms against independent
//! definitions: concrete permutation models for types A, B, D and I2, and
//! exhaustive subword scans for Bruhat order, containment and `Q(u)`.

use itertools::Itertools;

use crate::coxeter::{CoxeterSystem, CoxeterType, Element, Word};
use crate::error::Result;
use crate::hecke::IndexSet;

/// A concrete faithful representation of a named finite Coxeter group.
///
/// Types A, B and D act by signed permutations of `1..=n` (type A on
/// `n + 1` points); `I2(m)` acts on the vertices of an `m`-gon.
#[derive(Clone, Copy, Debug)]
pub struct PermutationModel {
    kind: CoxeterType,
}

/// Image of a model element: a signed permutation in one-line notation, or
/// for dihedral groups the pair (rotation, reflected).
pub type ModelImage = Vec<i64>;

impl PermutationModel {
    /// `None` for types without a model here (H3).
    pub fn for_type(kind: CoxeterType) -> Option<Self> {
        match kind {
            CoxeterType::H3 => None,
            _ => Some(PermutationModel { kind }),
        }
    }

    pub fn identity(&self) -> ModelImage {
        match self.kind {
            CoxeterType::A(n) => (1..=n as i64 + 1).collect(),
            CoxeterType::B(n) | CoxeterType::D(n) => (1..=n as i64).collect(),
            CoxeterType::I2(_) => vec![0, 0],
            CoxeterType::H3 => unreachable!(),
        }
    }

    /// `x * s`, acting on positions (right multiplication permutes places).
    pub fn apply(&self, x: &mut ModelImage, s: u8) {
        let s = s as usize;
        match self.kind {
            CoxeterType::A(_) => x.swap(s - 1, s),
            CoxeterType::B(_) => {
                if s == 1 {
                    x[0] = -x[0];
                } else {
                    x.swap(s - 2, s - 1);
                }
            }
            CoxeterType::D(n) => {
                if s == n {
                    // swap-and-negate the last two places
                    let (a, b) = (x[n - 2], x[n - 1]);
                    x[n - 2] = -b;
                    x[n - 1] = -a;
                } else {
                    x.swap(s - 1, s);
                }
            }
            CoxeterType::I2(m) => {
                // elements r^k or r^k f, with f r = r^-1 f; s1 = f, s2 = r f
                let m = m as i64;
                let (k, flipped) = (x[0], x[1] != 0);
                let t = if s == 1 { 0 } else { 1 };
                // (r^k f^a)(r^t f) = r^(k ± t) f^(a+1)
                let k = if flipped { k - t } else { k + t };
                x[0] = k.rem_euclid(m);
                x[1] = if flipped { 0 } else { 1 };
            }
            CoxeterType::H3 => unreachable!(),
        }
    }

    pub fn product(&self, word: &Word) -> ModelImage {
        let mut x = self.identity();
        for &s in word.letters() {
            self.apply(&mut x, s);
        }
        x
    }

    /// Group order, by closing the generators under multiplication.
    pub fn order(&self) -> usize {
        let rank = self.kind.rank() as u8;
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.identity()];
        seen.insert(self.identity());
        while let Some(x) = stack.pop() {
            for s in 1..=rank {
                let mut y = x.clone();
                self.apply(&mut y, s);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }
}

/// Every subset of `{1..n}` of size `k`, in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = IndexSet> {
    (1..=n).combinations(k).map(|c| IndexSet::from_positions(&c).expect("combinations are increasing"))
}

/// Whether the letters of `q` at `set` form a reduced word for `u`.
pub fn spells_reduced(sys: &CoxeterSystem, q: &Word, set: &IndexSet, u: &Element) -> Result<bool> {
    if set.len() != u.length() {
        return Ok(false);
    }
    Ok(&sys.canonicalize(&q.select(set.offsets()))? == u)
}

/// `u <=_B v` straight from the subword definition on the canonical word of `v`.
pub fn bruhat_leq_by_subwords(sys: &CoxeterSystem, u: &Element, v: &Element) -> Result<bool> {
    contains_reduced_word_by_scan(sys, v.canonical_word(), u)
}

/// Whether some `l(u)`-subset of positions of `q` spells a reduced word for `u`.
pub fn contains_reduced_word_by_scan(sys: &CoxeterSystem, q: &Word, u: &Element) -> Result<bool> {
    for set in subsets_of_size(q.len(), u.length()) {
        if spells_reduced(sys, q, &set, u)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Q(u)` by scanning subsets in lexicographic order.
pub fn sorting_subword_by_scan(sys: &CoxeterSystem, q: &Word, u: &Element) -> Result<Option<IndexSet>> {
    for set in subsets_of_size(q.len(), u.length()) {
        if spells_reduced(sys, q, &set, u)? {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

/// All reduced words of `e`, by filtering every word of length `l(e)`.
/// Uses the permutation model when one exists.
pub fn reduced_words_by_filter(sys: &CoxeterSystem, e: &Element) -> Result<Vec<Word>> {
    let model = sys.kind().and_then(PermutationModel::for_type);
    let target = model.map(|m| m.product(e.canonical_word()));
    let mut out = Vec::new();
    let rank = sys.rank() as u8;
    for letters in (0..e.length()).map(|_| 1..=rank).multi_cartesian_product() {
        let word = Word::new(letters);
        let hit = match (&model, &target) {
            (Some(m), Some(t)) => &m.product(&word) == t,
            _ => &sys.canonicalize(&word)? == e,
        };
        if hit {
            out.push(word);
        }
    }
    out.sort();
    Ok(out)
}

/// All words of length at most `max_len` over the generators.
pub fn all_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * rank);
        for w in &level {
            for s in 1..=rank as u8 {
                let mut x = w.clone();
                x.push(s);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_orders() {
        for (kind, n) in [
            (CoxeterType::A(3), 24),
            (CoxeterType::B(2), 8),
            (CoxeterType::B(3), 48),
            (CoxeterType::D(4), 192),
            (CoxeterType::I2(5), 10),
            (CoxeterType::I2(8), 16),
        ] {
            assert_eq!(PermutationModel::for_type(kind).unwrap().order(), n, "{kind}");
        }
    }

    #[test]
    fn model_relations() {
        for kind in [CoxeterType::A(3), CoxeterType::B(3), CoxeterType::D(4), CoxeterType::I2(7)] {
            let model = PermutationModel::for_type(kind).unwrap();
            let m = kind.matrix().unwrap();
            let r = kind.rank();
            for i in 1..=r as u8 {
                for j in 1..=r as u8 {
                    let mij = m[i as usize - 1][j as usize - 1];
                    let word: Vec<u8> = (0..2 * mij).map(|k| if k % 2 == 0 { i } else { j }).collect();
                    assert_eq!(model.product(&Word::new(word)), model.identity(), "{kind} ({i},{j})");
                    // and no smaller power is trivial
                    for k in 1..mij {
                        let word: Vec<u8> = (0..2 * k).map(|t| if t % 2 == 0 { i } else { j }).collect();
                        assert_ne!(model.product(&Word::new(word)), model.identity());
                    }
                }
            }
        }
    }

    #[test]
    fn a3_w0_has_sixteen_reduced_words() {
        let a3 = CoxeterSystem::named(CoxeterType::A(3)).unwrap();
        let w0 = a3.longest_element().unwrap();
        let filtered = reduced_words_by_filter(&a3, &w0).unwrap();
        assert_eq!(filtered.len(), 16);
        assert_eq!(filtered, a3.reduced_words(&w0).unwrap());
    }

    #[test]
    fn lex_scan_examples() {
        let a3 = CoxeterSystem::named(CoxeterType::A(3)).unwrap();
        let q: Word = "1,2,3,1,2,1".parse().unwrap();
        let u = a3.canonicalize(&"1,2,1".parse().unwrap()).unwrap();
        assert_eq!(
            sorting_subword_by_scan(&a3, &q, &u).unwrap(),
            Some(IndexSet::from_positions(&[1, 2, 4]).unwrap())
        );
    }

    #[test]
    fn word_counts() {
        assert_eq!(all_words(2, 3).len(), 1 + 2 + 4 + 8);
    }
}

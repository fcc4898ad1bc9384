//! Subword complexes `Δ(Q, w)`: the simplicial complex on the positions of
//! `Q` whose facets are complements of reduced subwords for `w`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element, Word};
use crate::error::{Error, Result};
use crate::hecke::{bruhat_leq, contains_reduced_word, demazure, IndexSet, MAX_POSITIONS};
use crate::homology::SimplicialComplex;

/// Longest word accepted by the exhaustive subset scan.
pub const MAX_SCAN_LEN: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Ball,
    Sphere,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Ball => write!(f, "ball"),
            Classification::Sphere => write!(f, "sphere"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubwordComplex {
    sys: CoxeterSystem,
    word: Word,
    target: Element,
    facets: Vec<IndexSet>,
}

impl SubwordComplex {
    /// Enumerates facets by backtracking over positions, pruning branches
    /// whose remaining suffix cannot spell what is left of `w`.
    pub fn build(sys: &CoxeterSystem, q: &Word, w: &Element) -> Result<Self> {
        Self::check_inputs(sys, q, w, MAX_POSITIONS)?;
        let n = q.len();
        let mut suffix = vec![Element::identity(); n + 1];
        for j in (0..n).rev() {
            let s = q.letters()[j];
            suffix[j] = if sys.is_left_descent(&suffix[j + 1], s)? {
                suffix[j + 1].clone()
            } else {
                sys.mult_left(s, &suffix[j + 1])?
            };
        }
        let mut facets = Vec::new();
        let mut chosen = IndexSet::empty();
        search(sys, q, &suffix, 0, w.clone(), &mut chosen, &mut facets)?;
        facets.sort();
        Ok(SubwordComplex { sys: sys.clone(), word: q.clone(), target: w.clone(), facets })
    }

    /// Enumerates facets by testing every `l(w)`-subset of positions.
    pub fn build_by_scan(sys: &CoxeterSystem, q: &Word, w: &Element) -> Result<Self> {
        Self::check_inputs(sys, q, w, MAX_SCAN_LEN)?;
        let n = q.len();
        let mut facets = Vec::new();
        for set in crate::oracle::subsets_of_size(n, w.length()) {
            if crate::oracle::spells_reduced(sys, q, &set, w)? {
                facets.push(set.complement(n));
            }
        }
        facets.sort();
        Ok(SubwordComplex { sys: sys.clone(), word: q.clone(), target: w.clone(), facets })
    }

    fn check_inputs(sys: &CoxeterSystem, q: &Word, w: &Element, max_len: usize) -> Result<()> {
        sys.check_word(q)?;
        if q.len() > max_len {
            return Err(Error::Precondition(format!("word of length {} exceeds limit {max_len}", q.len())));
        }
        if !contains_reduced_word(sys, q, w)? {
            return Err(Error::VoidComplex { word: q.to_string(), element: w.to_string() });
        }
        Ok(())
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn target(&self) -> &Element {
        &self.target
    }

    pub fn facets(&self) -> &[IndexSet] {
        &self.facets
    }

    pub fn vertex_count(&self) -> usize {
        self.word.len()
    }

    /// `|Q| - l(w) - 1`.
    pub fn dimension(&self) -> isize {
        self.word.len() as isize - self.target.length() as isize - 1
    }

    /// Downward closure of the facets, including the empty face.
    pub fn faces(&self) -> BTreeSet<IndexSet> {
        let mut masks: std::collections::HashSet<u64> = std::collections::HashSet::new();
        for f in &self.facets {
            let m = f.mask();
            let mut sub = m;
            loop {
                masks.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        masks.into_iter().map(IndexSet::from_mask).collect()
    }

    /// Faces via the direct characterization: `F` is a face iff the
    /// complement of `F` contains a reduced word for `w`.
    pub fn faces_by_complement(&self) -> Result<BTreeSet<IndexSet>> {
        let n = self.word.len();
        let mut out = BTreeSet::new();
        for f in IndexSet::all_subsets(n) {
            let rest = self.word.select(f.complement(n).offsets());
            if contains_reduced_word(&self.sys, &rest, &self.target)? {
                out.insert(f);
            }
        }
        Ok(out)
    }

    /// Sphere iff the Demazure product of `Q` is exactly `w`.
    pub fn classify(&self) -> Result<Classification> {
        Ok(if demazure(&self.sys, &self.word)? == self.target {
            Classification::Sphere
        } else {
            Classification::Ball
        })
    }

    /// Faces whose complement has Demazure product exactly `w`.
    pub fn interior_faces(&self) -> Result<BTreeSet<IndexSet>> {
        let n = self.word.len();
        let mut out = BTreeSet::new();
        for f in self.faces() {
            if demazure(&self.sys, &self.word.select(f.complement(n).offsets()))? == self.target {
                out.insert(f);
            }
        }
        Ok(out)
    }

    pub fn boundary_faces(&self) -> Result<BTreeSet<IndexSet>> {
        let interior = self.interior_faces()?;
        Ok(self.faces().into_iter().filter(|f| !interior.contains(f)).collect())
    }

    /// As a plain simplicial complex on vertices `1..=|Q|`.
    pub fn to_simplicial_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.iter().map(|f| f.positions().collect()))
    }
}

fn search(
    sys: &CoxeterSystem,
    q: &Word,
    suffix: &[Element],
    j: usize,
    target: Element,
    chosen: &mut IndexSet,
    facets: &mut Vec<IndexSet>,
) -> Result<()> {
    if target.is_identity() {
        facets.push(chosen.complement(q.len()));
        return Ok(());
    }
    if q.len() - j < target.length() || !bruhat_leq(sys, &target, &suffix[j])? {
        return Ok(());
    }
    let s = q.letters()[j];
    if sys.is_left_descent(&target, s)? {
        let before = *chosen;
        chosen.insert(j + 1);
        search(sys, q, suffix, j + 1, sys.mult_left(s, &target)?, chosen, facets)?;
        *chosen = before;
    }
    search(sys, q, suffix, j + 1, target, chosen, facets)
}

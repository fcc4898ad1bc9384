//! The map `f: 2^Q -> [e, w]_B` sending a set of positions of a reduced
//! word `Q` to the Demazure product of the letters there, with its fibers,
//! the sorting section, and homotopy certificates built on top of them.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element, Word};
use crate::error::{Error, Result};
use crate::hecke::{bruhat_leq, bruhat_lt, demazure, IndexSet, SortingWord};
use crate::homology::{
    contractibility, count_chains, order_complex_of_relation, reduced_betti_with_budget, BettiProfile, Contractibility,
    Field, SimplicialComplex, DEFAULT_FACE_BUDGET,
};
use crate::poset::{bruhat_lower_set, sorting_order, Poset};
use crate::subword::{Classification, SubwordComplex};

/// Longest `Q` for which all of `2^Q` is materialized.
pub const MAX_CUBE_LEN: usize = 16;
/// Longest `Q` accepted by the order-preservation check.
pub const MAX_MONOTONE_LEN: usize = 12;
/// Up to this length the order-preservation check is exhaustive.
pub const EXHAUSTIVE_MONOTONE_LEN: usize = 10;
/// Number of sampled pairs above the exhaustive range.
pub const MONOTONE_SAMPLES: usize = 50_000;

/// All subsets of the positions of a fixed reduced word `Q`.
#[derive(Clone, Debug)]
pub struct BooleanCube {
    sorter: SortingWord,
    image: Vec<Element>,
}

impl BooleanCube {
    /// Fails unless `Q` is reduced and at most [`MAX_CUBE_LEN`] long.
    pub fn new(sys: &CoxeterSystem, q: &Word) -> Result<Self> {
        if q.len() > MAX_CUBE_LEN {
            return Err(Error::Precondition(format!(
                "word of length {} exceeds the cube limit {MAX_CUBE_LEN}",
                q.len()
            )));
        }
        let sorter = SortingWord::new(sys, q)?;
        // image[S] extends image[S minus its last position] by one fold step
        let n = q.len();
        let mut image = vec![Element::identity(); 1 << n];
        for mask in 1usize..(1 << n) {
            let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let prev = &image[mask & !(1 << top)];
            let s = q.letters()[top];
            image[mask] = if sys.is_right_descent(prev, s)? { prev.clone() } else { sys.mult_right(prev, s)? };
        }
        Ok(BooleanCube { sorter, image })
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.sorter.system()
    }

    pub fn word(&self) -> &Word {
        self.sorter.word()
    }

    /// `w`, the product of `Q`.
    pub fn top(&self) -> &Element {
        self.sorter.element()
    }

    pub fn len(&self) -> usize {
        self.word().len()
    }

    pub fn is_empty(&self) -> bool {
        self.word().is_empty()
    }

    pub fn subsets(&self) -> impl Iterator<Item = IndexSet> {
        IndexSet::all_subsets(self.len())
    }

    /// `f(S)`, from the precomputed table.
    pub fn f(&self, s: &IndexSet) -> Result<&Element> {
        s.check_within(self.len())?;
        Ok(&self.image[s.mask() as usize])
    }

    /// `f(S)` computed directly as a Demazure product, bypassing the table.
    pub fn f_direct(&self, s: &IndexSet) -> Result<Element> {
        s.check_within(self.len())?;
        demazure(self.system(), &self.word().select(s.offsets()))
    }

    /// Checks `S ⊆ T ⇒ f(S) <=_B f(T)` on every pair for short words, and on
    /// seeded random pairs up to [`MAX_MONOTONE_LEN`]. Returns the first
    /// violating pair.
    pub fn order_violation(&self, seed: u64) -> Result<Option<(IndexSet, IndexSet)>> {
        let n = self.len();
        let sys = self.system();
        if n > MAX_MONOTONE_LEN {
            return Err(Error::Precondition(format!("order check limited to |Q| <= {MAX_MONOTONE_LEN}")));
        }
        let full = (1u64 << n) - 1;
        if n <= EXHAUSTIVE_MONOTONE_LEN {
            for t in 0..=full {
                let mut s = t;
                loop {
                    if !bruhat_leq(sys, &self.image[s as usize], &self.image[t as usize])? {
                        return Ok(Some((IndexSet::from_mask(s), IndexSet::from_mask(t))));
                    }
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & t;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..MONOTONE_SAMPLES {
                let t = rng.gen_range(0..=full);
                let s = t & rng.gen_range(0..=full);
                if !bruhat_leq(sys, &self.image[s as usize], &self.image[t as usize])? {
                    return Ok(Some((IndexSet::from_mask(s), IndexSet::from_mask(t))));
                }
            }
        }
        Ok(None)
    }

    pub fn is_order_preserving(&self, seed: u64) -> Result<bool> {
        Ok(self.order_violation(seed)?.is_none())
    }

    /// `f^{-1}(u)`.
    pub fn fiber(&self, u: &Element) -> Vec<IndexSet> {
        self.subsets().filter(|s| &self.image[s.mask() as usize] == u).collect()
    }

    /// `f^{-1}([u, w]_B)`, enumerated over the cube.
    pub fn fiber_up(&self, u: &Element) -> Result<BTreeSet<IndexSet>> {
        self.require_below_top(u)?;
        let mut out = BTreeSet::new();
        for s in self.subsets() {
            if bruhat_leq(self.system(), u, &self.image[s.mask() as usize])? {
                out.insert(s);
            }
        }
        Ok(out)
    }

    /// `f^{-1}([u, w]_B)` as complements of the faces of `Δ(Q, u)`.
    pub fn fiber_up_via_complex(&self, u: &Element) -> Result<BTreeSet<IndexSet>> {
        self.require_below_top(u)?;
        let n = self.len();
        let c = SubwordComplex::build(self.system(), self.word(), u)?;
        Ok(c.faces().into_iter().map(|f| f.complement(n)).collect())
    }

    /// `f^{-1}((u, w)_B)`, enumerated over the cube.
    pub fn fiber_open(&self, u: &Element) -> Result<BTreeSet<IndexSet>> {
        self.require_strictly_below_top(u)?;
        let sys = self.system();
        let mut out = BTreeSet::new();
        for s in self.subsets() {
            let x = &self.image[s.mask() as usize];
            if bruhat_lt(sys, u, x)? && bruhat_lt(sys, x, self.top())? {
                out.insert(s);
            }
        }
        Ok(out)
    }

    /// `f^{-1}((u, w)_B)` as complements of the nonempty boundary faces of `Δ(Q, u)`.
    pub fn fiber_open_via_complex(&self, u: &Element) -> Result<BTreeSet<IndexSet>> {
        self.require_strictly_below_top(u)?;
        let n = self.len();
        let c = SubwordComplex::build(self.system(), self.word(), u)?;
        Ok(c.boundary_faces()?.into_iter().filter(|f| !f.is_empty()).map(|f| f.complement(n)).collect())
    }

    /// `u -> Q(u)` on all of `[e, w]_B`.
    pub fn sorting_section(&self) -> Result<BTreeMap<Element, IndexSet>> {
        let mut out = BTreeMap::new();
        for u in bruhat_lower_set(self.system(), self.top())? {
            let set = self.sorter.sorting_subword(&u)?;
            out.insert(u, set);
        }
        Ok(out)
    }

    /// Checks that `f(Q(u)) = u` for all `u`, and that inclusion among the
    /// sets `Q(u)` is exactly the sorting order. Returns a description of
    /// each problem found.
    pub fn section_violations(&self) -> Result<Vec<String>> {
        let section = self.sorting_section()?;
        let mut problems = Vec::new();
        for (u, set) in &section {
            let back = self.f(set)?;
            if back != u {
                problems.push(format!("f(Q({u})) = f({set}) = {back}"));
            }
        }
        let order = sorting_order(self.system(), self.word())?;
        let image = Poset::from_relation(section.keys().cloned().collect(), "inclusion", |a, b| {
            Ok(section[a].is_subset(&section[b]))
        });
        match image {
            Ok(p) if p.same_relation(&order) => {}
            Ok(_) => problems.push("inclusion on sorting subwords differs from the sorting order".into()),
            Err(e) => problems.push(format!("inclusion on sorting subwords is not a partial order: {e}")),
        }
        Ok(problems)
    }

    fn require_below_top(&self, u: &Element) -> Result<()> {
        if !bruhat_leq(self.system(), u, self.top())? {
            return Err(Error::Precondition(format!("{u} is not below {}", self.top())));
        }
        Ok(())
    }

    fn require_strictly_below_top(&self, u: &Element) -> Result<()> {
        if !bruhat_lt(self.system(), u, self.top())? {
            return Err(Error::Precondition(format!("{u} is not strictly below {}", self.top())));
        }
        Ok(())
    }
}

/// Which complex a fiber certificate was computed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberRoute {
    /// Order complex of the fiber poset under inclusion.
    FiberPoset,
    /// `Δ(Q, u)` itself, whose barycentric subdivision is that order complex.
    SubwordComplex,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub q: Word,
    pub u: Element,
    pub fiber_size: usize,
    pub classification: Classification,
    pub route: FiberRoute,
    pub evidence: Contractibility,
}

impl FiberReport {
    pub fn contractible(&self) -> bool {
        self.evidence.is_consistent_with_contractible()
    }
}

/// Contractibility of the up-fiber over `u` in the proper part of `2^Q`:
/// the sets `S ≠ Q` with `u <= f(S)`, ordered by inclusion. For `u = w`
/// the fiber is just `{Q}`.
///
/// The order complex of that poset is the barycentric subdivision of
/// `Δ(Q, u)`. When it would have more than `budget` faces, `Δ(Q, u)` itself
/// is used instead.
pub fn certify_fiber_contractible(cube: &BooleanCube, u: &Element, budget: usize) -> Result<FiberReport> {
    let n = cube.len();
    let mut fiber: Vec<IndexSet> = cube.fiber_up(u)?.into_iter().collect();
    if u != cube.top() {
        fiber.retain(|s| s.len() != n);
    }
    let complex = SubwordComplex::build(cube.system(), cube.word(), u)?;
    let classification = complex.classify()?;
    let leq: Vec<Vec<bool>> = fiber.iter().map(|a| fiber.iter().map(|b| a.is_subset(b)).collect()).collect();
    let (route, k) = if count_chains(&leq) <= budget as u128 {
        (FiberRoute::FiberPoset, order_complex_of_relation(&leq, budget)?)
    } else {
        (FiberRoute::SubwordComplex, complex.to_simplicial_complex())
    };
    let evidence = contractibility(&k)?;
    Ok(FiberReport { q: cube.word().clone(), u: u.clone(), fiber_size: fiber.len(), classification, route, evidence })
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereReport {
    pub u: Element,
    pub w: Element,
    /// Number of elements strictly between `u` and `w`.
    pub open_size: usize,
    /// `l(w) - l(u) - 2`.
    pub expected_dimension: isize,
    pub betti: Vec<BettiProfile>,
}

impl SphereReport {
    pub fn passed(&self) -> bool {
        self.betti.iter().all(|b| b.is_sphere(self.expected_dimension))
    }
}

/// Checks that the open Bruhat interval `(u, w)` has the reduced homology
/// of a sphere of dimension `l(w) - l(u) - 2` over each field.
pub fn certify_interval_sphere(sys: &CoxeterSystem, u: &Element, w: &Element, fields: &[Field]) -> Result<SphereReport> {
    if !bruhat_lt(sys, u, w)? || w.length() < u.length() + 2 {
        return Err(Error::Precondition(format!("need {u} < {w} in Bruhat order with length gap at least 2")));
    }
    let poset = crate::poset::bruhat_interval(sys, u, w)?;
    let i = poset.index_of(u).expect("interval contains its bottom");
    let j = poset.index_of(w).expect("interval contains its top");
    interval_sphere_in(&poset, i, j, fields, DEFAULT_FACE_BUDGET)
}

/// [`certify_interval_sphere`] for the open interval between ground
/// indices `i < j` of an already computed Bruhat poset.
pub fn interval_sphere_in(poset: &Poset, i: usize, j: usize, fields: &[Field], budget: usize) -> Result<SphereReport> {
    let (u, w) = (&poset.ground()[i], &poset.ground()[j]);
    if i == j || !poset.leq(i, j) {
        return Err(Error::Precondition(format!("{u} is not strictly below {w}")));
    }
    let inside: Vec<usize> =
        (0..poset.len()).filter(|&k| k != i && k != j && poset.leq(i, k) && poset.leq(k, j)).collect();
    let leq: Vec<Vec<bool>> = inside.iter().map(|&a| inside.iter().map(|&b| poset.leq(a, b)).collect()).collect();
    let complex: SimplicialComplex = order_complex_of_relation(&leq, budget)?;
    let betti = fields
        .iter()
        .map(|&field| reduced_betti_with_budget(&complex, field, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(SphereReport {
        u: u.clone(),
        w: w.clone(),
        open_size: inside.len(),
        expected_dimension: w.length() as isize - u.length() as isize - 2,
        betti,
    })
}

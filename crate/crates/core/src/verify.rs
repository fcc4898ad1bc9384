//! Batch verifier: re-checks every theorem on a list of groups against
//! brute-force oracles and exact homology, and assembles a JSON report.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::{CoxeterSystem, CoxeterType, Element, Word};
use crate::error::{Error, Result};
use crate::fiber::{certify_fiber_contractible, interval_sphere_in, BooleanCube};
use crate::hecke::{bruhat_leq, demazure, weak_leq, IndexSet, SortingWord};
use crate::homology::{reduced_betti_with_budget, Field, DEFAULT_FACE_BUDGET};
use crate::oracle::{self, PermutationModel};
use crate::poset::{
    relation_intersection, relation_union, sorting_order_with, weak_interval, Poset,
};
use crate::subword::{Classification, SubwordComplex};
use crate::totalpos;

/// Failures kept per theorem; the full count is always reported.
pub const MAX_REPORTED_FAILURES: usize = 100;

/// Deliberate bugs for checking that the verifier notices them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    #[default]
    None,
    /// `Q(u)` returns the lexicographically last reduced subword.
    CorruptSortingSubword,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub groups: Vec<CoxeterSystem>,
    pub seed: u64,
    pub fields: Vec<Field>,
    pub face_budget: usize,
    /// Largest fiber order complex built before switching to the subword complex.
    pub fiber_face_limit: usize,
    /// Reduced words of the top element used for the fiber checks.
    pub fiber_words: usize,
    /// Cap on reduced words per element in the order theorems; `None` means all.
    pub max_words: Option<usize>,
    pub fault: Fault,
    /// Record wall-clock times. Off by default so reports are reproducible.
    pub timing: bool,
}

impl VerifyConfig {
    pub fn new(groups: Vec<CoxeterSystem>) -> Self {
        VerifyConfig {
            groups,
            seed: 0,
            fields: vec![Field::GF2, Field::Rationals],
            face_budget: DEFAULT_FACE_BUDGET,
            fiber_face_limit: 20_000,
            fiber_words: 16,
            max_words: None,
            fault: Fault::None,
            timing: false,
        }
    }

    /// A2, A3, B2, B3 and I2(m) for m = 3..=8.
    pub fn default_groups() -> Result<Vec<CoxeterSystem>> {
        let mut kinds = vec![CoxeterType::A(2), CoxeterType::A(3), CoxeterType::B(2), CoxeterType::B(3)];
        kinds.extend((3..=8).map(CoxeterType::I2));
        kinds.into_iter().map(CoxeterSystem::named).collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub group: String,
    pub q: Option<String>,
    pub u: Option<String>,
    pub v: Option<String>,
    pub detail: String,
}

impl Failure {
    fn new(group: &str, detail: impl Into<String>) -> Self {
        Failure { group: group.to_string(), q: None, u: None, v: None, detail: detail.into() }
    }

    fn q(mut self, q: &Word) -> Self {
        self.q = Some(q.to_string());
        self
    }

    fn u(mut self, u: &Element) -> Self {
        self.u = Some(u.to_string());
        self
    }

    fn v(mut self, v: &Element) -> Self {
        self.v = Some(v.to_string());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremResult {
    pub name: String,
    /// Plain statement of what is checked.
    pub paper_ref: String,
    pub instances: usize,
    pub passed: bool,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    pub theorems_ms: BTreeMap<String, u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub system: String,
    pub theorem_results: Vec<TheoremResult>,
    pub timing: Option<Timing>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.theorem_results.iter().all(|t| t.passed)
    }

    pub fn theorem(&self, name: &str) -> Option<&TheoremResult> {
        self.theorem_results.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// The checks, in report order: `(name, statement)`.
pub const THEOREMS: [(&str, &str); 13] = [
    ("worked_example", "f maps {1,2,4,5} of (1,2,3,1,2,1) in A3 to s1s2s1"),
    ("sandwich", "u <=_R v implies u <=_Q v implies u <=_B v on [e,w]_B for every reduced Q of w"),
    ("weak_is_intersection", "intersection of the Q-sorting orders over red(w), on [e,w]_R, is weak order"),
    ("bruhat_is_union", "union of the Q-sorting orders over red(w), on [e,w]_R, is Bruhat order without closure"),
    ("b2_figure", "B2: red(w0) = {1212, 2121}, weak = intersection, Bruhat = union; Q = (2,1,2) sorting order is neither weak nor Bruhat on [e,w]_B but all agree on [e,w]_R"),
    ("subword_classification", "subword complex is a sphere iff demazure(Q) = u, else a ball, with matching reduced Betti numbers"),
    ("fiber_duality", "f^-1([u,w]) is the complements of faces of the subword complex and f^-1((u,w)) the complements of its nonempty boundary faces"),
    ("interval_spheres", "open Bruhat interval (u,w) has the reduced homology of a sphere of dimension l(w)-l(u)-2"),
    ("contractible_fibers", "up-fibers of f over the proper part are cone-certified or acyclic over every field"),
    ("cover_containment", "covers of the Q-sorting order are covers of Bruhat order on [e,w]_B"),
    ("total_positivity", "additive and braid relations of x_i(t) hold exactly; products with t >= 0 are totally nonnegative"),
    ("oracle_agreement", "canonicalize, bruhat_leq and sorting_subword agree with brute-force oracles"),
    ("poset_map", "f is order preserving, its fibers partition 2^Q, and u -> Q(u) is a section realizing the sorting order"),
];

#[derive(Default)]
struct Tally {
    instances: usize,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.instances += 1;
        if !ok {
            self.failures.push(failure());
        }
    }
}

/// Runs `f` over `items` in parallel and merges the tallies in input order.
/// An error inside one item is recorded as a failure of that item.
fn fan_out<T, F, L>(items: &[T], group: &str, label: L, f: F) -> Tally
where
    T: Sync,
    F: Fn(&T) -> Result<Tally> + Sync,
    L: Fn(&T) -> String + Sync,
{
    let parts: Vec<Tally> = items
        .par_iter()
        .map(|item| {
            f(item).unwrap_or_else(|e| Tally {
                instances: 1,
                failures: vec![Failure::new(group, format!("{}: error: {e}", label(item)))],
                notes: Vec::new(),
            })
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total.merge(p);
    }
    total
}

/// Per-group data shared across checks.
struct GroupData {
    sys: CoxeterSystem,
    name: String,
    elements: Arc<Vec<Element>>,
    index: HashMap<Element, usize>,
    bruhat: Vec<Vec<bool>>,
    weak: Vec<Vec<bool>>,
    w0: Element,
}

impl GroupData {
    fn new(sys: &CoxeterSystem) -> Result<Self> {
        let elements = sys.enumerate_group()?;
        let index: HashMap<Element, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let rows = |rel: fn(&CoxeterSystem, &Element, &Element) -> Result<bool>| -> Result<Vec<Vec<bool>>> {
            elements
                .par_iter()
                .map(|a| elements.iter().map(|b| rel(sys, a, b)).collect::<Result<Vec<bool>>>())
                .collect()
        };
        let bruhat = rows(bruhat_leq)?;
        let weak = rows(weak_leq)?;
        Ok(GroupData {
            sys: sys.clone(),
            name: sys.name(),
            elements: elements.clone(),
            index,
            bruhat,
            weak,
            w0: sys.longest_element()?,
        })
    }

    fn idx(&self, e: &Element) -> usize {
        self.index[e]
    }

    fn bruhat_le(&self, a: &Element, b: &Element) -> bool {
        self.bruhat[self.idx(a)][self.idx(b)]
    }

    fn weak_le(&self, a: &Element, b: &Element) -> bool {
        self.weak[self.idx(a)][self.idx(b)]
    }

    fn below(&self, w: &Element) -> Vec<Element> {
        self.elements.iter().filter(|x| self.bruhat_le(x, w)).cloned().collect()
    }

    fn bruhat_poset(&self, ground: &[Element], label: &str) -> Result<Poset> {
        Poset::from_relation(ground.to_vec(), label, |a, b| Ok(self.bruhat_le(a, b)))
    }
}

/// The verifier proper.
pub struct Verifier {
    config: VerifyConfig,
}

impl Verifier {
    pub fn new(config: VerifyConfig) -> Self {
        Verifier { config }
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.config
    }

    /// `Q(u)`, with the configured fault applied.
    pub fn sorting_subword(&self, sorter: &SortingWord, u: &Element) -> Result<IndexSet> {
        match self.config.fault {
            Fault::None => sorter.sorting_subword(u),
            Fault::CorruptSortingSubword => {
                let (sys, q) = (sorter.system(), sorter.word());
                let sets: Vec<IndexSet> = oracle::subsets_of_size(q.len(), u.length()).collect();
                for set in sets.into_iter().rev() {
                    if oracle::spells_reduced(sys, q, &set, u)? {
                        return Ok(set);
                    }
                }
                sorter.sorting_subword(u)
            }
        }
    }

    fn sorting_poset(&self, sorter: &SortingWord) -> Result<Poset> {
        sorting_order_with(sorter, |s, u| self.sorting_subword(s, u))
    }

    fn words_of(&self, g: &GroupData, w: &Element) -> Result<Vec<Word>> {
        let mut words = g.sys.reduced_words(w)?;
        if let Some(cap) = self.config.max_words {
            words.truncate(cap);
        }
        Ok(words)
    }

    /// Reduced words used for the fiber checks: those of `w0`, or of the
    /// first element of length 10 when `w0` is longer.
    fn fiber_words(&self, g: &GroupData) -> Result<Vec<Word>> {
        let top = if g.w0.length() <= 10 {
            g.w0.clone()
        } else {
            g.elements.iter().find(|e| e.length() == 10).cloned().expect("length 10 exists below w0")
        };
        let mut words = g.sys.reduced_words(&top)?;
        words.truncate(self.config.fiber_words);
        Ok(words)
    }

    pub fn run(&self) -> Report {
        self.run_only(&[])
    }

    /// Runs the named theorems only, in report order; an empty list runs all.
    pub fn run_only(&self, names: &[&str]) -> Report {
        let start = Instant::now();
        let mut groups = Vec::new();
        let mut setup_failures = Vec::new();
        for sys in &self.config.groups {
            match GroupData::new(sys) {
                Ok(g) => groups.push(g),
                Err(e) => setup_failures.push(Failure::new(&sys.name(), format!("group setup: {e}"))),
            }
        }
        let mut results = Vec::new();
        let mut times = BTreeMap::new();
        for (name, statement) in THEOREMS {
            if !names.is_empty() && !names.contains(&name) {
                continue;
            }
            let t0 = Instant::now();
            let mut tally = match name {
                "worked_example" => self.fixed(name, Self::worked_example),
                "b2_figure" => self.fixed(name, Self::b2_figure),
                "total_positivity" => self.fixed(name, |v| v.total_positivity()),
                _ => {
                    let mut t = Tally::default();
                    for g in &groups {
                        t.merge(self.per_group(name, g));
                    }
                    t
                }
            };
            // setup errors belong to every per-group theorem, not the fixed ones
            if !matches!(name, "worked_example" | "b2_figure" | "total_positivity") {
                tally.failures.extend(setup_failures.iter().cloned());
            }
            times.insert(name.to_string(), t0.elapsed().as_millis());
            let failure_count = tally.failures.len();
            tally.failures.truncate(MAX_REPORTED_FAILURES);
            results.push(TheoremResult {
                name: name.to_string(),
                paper_ref: statement.to_string(),
                instances: tally.instances,
                passed: failure_count == 0,
                failure_count,
                failures: tally.failures,
                notes: tally.notes,
            });
        }
        let system = self.config.groups.iter().map(|g| g.name()).collect::<Vec<_>>().join(",");
        let timing = self.config.timing.then(|| Timing { total_ms: start.elapsed().as_millis(), theorems_ms: times });
        Report { system, theorem_results: results, timing }
    }

    fn fixed(&self, name: &str, f: impl Fn(&Self) -> Result<Tally>) -> Tally {
        f(self).unwrap_or_else(|e| Tally {
            instances: 1,
            failures: vec![Failure::new("-", format!("{name}: error: {e}"))],
            notes: Vec::new(),
        })
    }

    fn per_group(&self, name: &str, g: &GroupData) -> Tally {
        let result = match name {
            "sandwich" => self.sandwich(g),
            "weak_is_intersection" => self.intersection_union(g, true),
            "bruhat_is_union" => self.intersection_union(g, false),
            "subword_classification" => self.classification(g),
            "fiber_duality" => self.fiber_duality(g),
            "interval_spheres" => self.interval_spheres(g),
            "contractible_fibers" => self.contractible_fibers(g),
            "cover_containment" => self.cover_containment(g),
            "oracle_agreement" => self.oracle_agreement(g),
            "poset_map" => self.poset_map(g),
            _ => unreachable!("unknown theorem {name}"),
        };
        result.unwrap_or_else(|e| Tally {
            instances: 1,
            failures: vec![Failure::new(&g.name, format!("error: {e}"))],
            notes: Vec::new(),
        })
    }

    fn worked_example(&self) -> Result<Tally> {
        let a3 = CoxeterSystem::named(CoxeterType::A(3))?;
        let q: Word = "1,2,3,1,2,1".parse()?;
        let s = IndexSet::from_positions(&[1, 2, 4, 5])?;
        let expected = a3.canonicalize(&"1,2,1".parse()?)?;
        let got = demazure(&a3, &q.select(s.offsets()))?;
        let mut t = Tally::default();
        t.check(got == expected, || Failure::new("A3", format!("f({s}) = {got}")).q(&q).u(&expected));
        Ok(t)
    }

    fn b2_figure(&self) -> Result<Tally> {
        let sys = CoxeterSystem::named(CoxeterType::B(2))?;
        let g = GroupData::new(&sys)?;
        let mut t = Tally::default();
        let fail = |d: &str| Failure::new("B2", d);

        let words = sys.reduced_words(&g.w0)?;
        let expected: Vec<Word> = vec!["1,2,1,2".parse()?, "2,1,2,1".parse()?];
        t.check(words == expected, || fail(&format!("red(w0) = {words:?}")));

        let weak = weak_interval(&sys, &g.w0)?;
        let sorting: Vec<Poset> = words
            .iter()
            .map(|q| self.sorting_poset(&SortingWord::new(&sys, q)?)?.restrict(weak.ground()))
            .collect::<Result<_>>()?;
        let bruhat = g.bruhat_poset(weak.ground(), "Bruhat")?;
        t.check(relation_intersection(&sorting)?.same_relation(&weak), || fail("weak order is not the intersection"));
        t.check(relation_union(&sorting)?.equals(&bruhat), || fail("Bruhat order is not the union"));

        let q: Word = "2,1,2".parse()?;
        let w = sys.canonicalize(&q)?;
        let words = sys.reduced_words(&w)?;
        t.check(words == vec![q.clone()], || fail(&format!("red(s2s1s2) = {words:?}")).q(&q));
        let sorter = SortingWord::new(&sys, &q)?;
        let sorted = self.sorting_poset(&sorter)?;
        let lower = g.below(&w);
        let bruhat = g.bruhat_poset(&lower, "Bruhat")?;
        let weak_on_lower = Poset::from_relation(lower.clone(), "weak", |a, b| Ok(g.weak_le(a, b)))?;
        t.check(!sorted.same_relation(&weak_on_lower), || fail("sorting order equals weak order on [e,w]_B").q(&q));
        t.check(!sorted.same_relation(&bruhat), || fail("sorting order equals Bruhat order on [e,w]_B").q(&q));
        let weak_w = weak_interval(&sys, &w)?;
        let restricted = sorted.restrict(weak_w.ground())?;
        let bruhat_w = g.bruhat_poset(weak_w.ground(), "Bruhat")?;
        let is_chain = weak_w.len() == 4 && weak_w.covers().len() == 3;
        t.check(
            is_chain && restricted.same_relation(&weak_w) && bruhat_w.same_relation(&weak_w),
            || fail("orders on [e,w]_R are not the same 4-chain").q(&q),
        );
        Ok(t)
    }

    fn total_positivity(&self) -> Result<Tally> {
        let summary = totalpos::run_trials(self.config.seed, 100, 50, 4)?;
        let mut t = Tally {
            instances: summary.additive_trials + summary.braid_trials + summary.nonnegative_trials,
            ..Default::default()
        };
        t.failures = summary.failures.into_iter().map(|d| Failure::new("A", d)).collect();
        Ok(t)
    }

    /// All `(w, Q)` with `Q` reduced for `w`, ordered by `w` then `Q`.
    fn word_pairs(&self, g: &GroupData) -> Result<Vec<(Element, Word)>> {
        let mut out = Vec::new();
        for w in g.elements.iter() {
            for q in self.words_of(g, w)? {
                out.push((w.clone(), q));
            }
        }
        Ok(out)
    }

    fn sandwich(&self, g: &GroupData) -> Result<Tally> {
        let pairs = self.word_pairs(g)?;
        Ok(fan_out(&pairs, &g.name, |(_, q)| q.to_string(), |(w, q)| {
            let sorter = SortingWord::new(&g.sys, q)?;
            let lower = g.below(w);
            let sets: Vec<IndexSet> = lower.iter().map(|u| self.sorting_subword(&sorter, u)).collect::<Result<_>>()?;
            let mut t = Tally::default();
            for (a, u) in lower.iter().enumerate() {
                for (b, v) in lower.iter().enumerate() {
                    let sorting = sets[a].is_subset(&sets[b]);
                    let ok = (!g.weak_le(u, v) || sorting) && (!sorting || g.bruhat_le(u, v));
                    t.check(ok, || {
                        Failure::new(&g.name, format!("Q(u) = {}, Q(v) = {}", sets[a], sets[b])).q(q).u(u).v(v)
                    });
                }
            }
            Ok(t)
        }))
    }

    fn intersection_union(&self, g: &GroupData, intersection: bool) -> Result<Tally> {
        let elements: Vec<Element> = g.elements.to_vec();
        Ok(fan_out(&elements, &g.name, |w| w.to_string(), |w| {
            let weak = weak_interval(&g.sys, w)?;
            let sorting: Vec<Poset> = self
                .words_of(g, w)?
                .iter()
                .map(|q| self.sorting_poset(&SortingWord::new(&g.sys, q)?)?.restrict(weak.ground()))
                .collect::<Result<_>>()?;
            let mut t = Tally::default();
            if intersection {
                let meet = relation_intersection(&sorting)?;
                t.check(meet.same_relation(&weak), || {
                    Failure::new(&g.name, "intersection of sorting orders differs from weak order").v(w)
                });
            } else {
                let union = relation_union(&sorting)?;
                let bruhat = g.bruhat_poset(weak.ground(), "Bruhat")?;
                t.check(union.equals(&bruhat), || {
                    Failure::new(&g.name, format!("union differs from Bruhat order (transitive: {})", union.transitive))
                        .v(w)
                });
            }
            Ok(t)
        }))
    }

    fn classification(&self, g: &GroupData) -> Result<Tally> {
        let max_len = if g.sys.rank() <= 2 { 6 } else { 4 };
        let words = oracle::all_words(g.sys.rank(), max_len);
        Ok(fan_out(&words, &g.name, |q| q.to_string(), |q| {
            let top = demazure(&g.sys, q)?;
            let mut t = Tally::default();
            for u in g.below(&top) {
                let c = SubwordComplex::build(&g.sys, q, &u)?;
                let class = c.classify()?;
                let sphere = top == u;
                let k = c.to_simplicial_complex();
                let dim = c.dimension();
                for &field in &self.config.fields {
                    let b = reduced_betti_with_budget(&k, field, self.config.face_budget)?;
                    let ok = (class == Classification::Sphere) == sphere
                        && if sphere { b.is_sphere(dim) } else { b.is_acyclic() };
                    t.check(ok, || Failure::new(&g.name, format!("{class}, Betti {b}")).q(q).u(&u));
                }
                if q.len() <= crate::subword::MAX_SCAN_LEN {
                    let scan = SubwordComplex::build_by_scan(&g.sys, q, &u)?;
                    t.check(scan.facets() == c.facets(), || {
                        Failure::new(&g.name, "backtracking and subset scan give different facets").q(q).u(&u)
                    });
                }
            }
            Ok(t)
        }))
    }

    fn fiber_duality(&self, g: &GroupData) -> Result<Tally> {
        let words = self.fiber_words(g)?;
        Ok(fan_out(&words, &g.name, |q| q.to_string(), |q| {
            let cube = BooleanCube::new(&g.sys, q)?;
            let mut t = Tally::default();
            for u in g.below(cube.top()) {
                let up = cube.fiber_up(&u)?;
                let up_c = cube.fiber_up_via_complex(&u)?;
                t.check(up == up_c, || {
                    Failure::new(&g.name, format!("fiber_up has {} sets, faces give {}", up.len(), up_c.len())).q(q).u(&u)
                });
                if &u != cube.top() {
                    let open = cube.fiber_open(&u)?;
                    let open_c = cube.fiber_open_via_complex(&u)?;
                    t.check(open == open_c, || {
                        Failure::new(&g.name, format!("fiber_open has {} sets, boundary gives {}", open.len(), open_c.len()))
                            .q(q)
                            .u(&u)
                    });
                }
            }
            Ok(t)
        }))
    }

    fn interval_spheres(&self, g: &GroupData) -> Result<Tally> {
        let poset = g.bruhat_poset(&g.elements, "Bruhat")?;
        let max_gap = if g.elements.len() <= 24 { usize::MAX } else { 4 };
        let mut pairs = Vec::new();
        for i in 0..poset.len() {
            for j in 0..poset.len() {
                let (u, w) = (&poset.ground()[i], &poset.ground()[j]);
                let gap = w.length().saturating_sub(u.length());
                if poset.leq(i, j) && gap >= 2 && gap <= max_gap {
                    pairs.push((i, j));
                }
            }
        }
        let mut t = fan_out(&pairs, &g.name, |&(i, j)| format!("({}, {})", poset.ground()[i], poset.ground()[j]), |&(i, j)| {
            let r = interval_sphere_in(&poset, i, j, &self.config.fields, self.config.face_budget)?;
            let mut t = Tally::default();
            let detail = r.betti.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("; ");
            t.check(r.passed(), || {
                Failure::new(&g.name, format!("expected S^{}, got {detail}", r.expected_dimension)).u(&r.u).v(&r.w)
            });
            Ok(t)
        });
        if max_gap != usize::MAX {
            t.notes.push(format!("{}: intervals limited to length gap <= {max_gap}", g.name));
        }
        Ok(t)
    }

    fn contractible_fibers(&self, g: &GroupData) -> Result<Tally> {
        let words = self.fiber_words(g)?;
        let mut t = fan_out(&words, &g.name, |q| q.to_string(), |q| {
            let cube = BooleanCube::new(&g.sys, q)?;
            let mut t = Tally::default();
            for u in g.below(cube.top()).into_iter().filter(|u| !u.is_identity()) {
                let r = certify_fiber_contractible(&cube, &u, self.config.fiber_face_limit)?;
                t.check(r.contractible(), || {
                    Failure::new(&g.name, format!("evidence {:?} via {:?}", r.evidence, r.route)).q(q).u(&u)
                });
                if !matches!(r.evidence, crate::homology::Contractibility::Cone { .. }) {
                    t.notes.push(String::new());
                }
            }
            Ok(t)
        });
        let by_homology = t.notes.len();
        t.notes.clear();
        t.notes.push(format!(
            "{}: {} cone-certified, {by_homology} by vanishing homology",
            g.name,
            t.instances.saturating_sub(by_homology)
        ));
        Ok(t)
    }

    fn cover_containment(&self, g: &GroupData) -> Result<Tally> {
        let pairs = self.word_pairs(g)?;
        let mut proper = vec![false; pairs.len()];
        let mut t = Tally::default();
        let parts: Vec<Result<(Tally, bool)>> = pairs
            .par_iter()
            .map(|(w, q)| {
                let sorted = self.sorting_poset(&SortingWord::new(&g.sys, q)?)?;
                let bruhat = g.bruhat_poset(&g.below(w), "Bruhat")?;
                let bruhat_covers: std::collections::HashSet<(Element, Element)> =
                    bruhat.cover_elements().into_iter().collect();
                let sorting_covers = sorted.cover_elements();
                let mut t = Tally::default();
                for (a, b) in &sorting_covers {
                    t.check(bruhat_covers.contains(&(a.clone(), b.clone())), || {
                        Failure::new(&g.name, "sorting cover is not a Bruhat cover").q(q).u(a).v(b)
                    });
                }
                Ok((t, sorting_covers.len() < bruhat_covers.len()))
            })
            .collect();
        let mut equal_long = Vec::new();
        for (k, part) in parts.into_iter().enumerate() {
            match part {
                Ok((tally, p)) => {
                    t.merge(tally);
                    proper[k] = p;
                    if !p && pairs[k].0.length() >= 3 {
                        equal_long.push(pairs[k].1.to_string());
                    }
                }
                Err(e) => t.failures.push(Failure::new(&g.name, format!("error: {e}")).q(&pairs[k].1)),
            }
        }
        let n_proper = proper.iter().filter(|&&p| p).count();
        t.notes.push(format!("{}: proper containment for {n_proper} of {} words", g.name, pairs.len()));
        if !equal_long.is_empty() {
            t.notes.push(format!("{}: equal cover sets with l(w) >= 3 for {}", g.name, equal_long.join(" ")));
        }
        Ok(t)
    }

    fn oracle_agreement(&self, g: &GroupData) -> Result<Tally> {
        let mut t = Tally::default();
        let model = g.sys.kind().and_then(PermutationModel::for_type);
        // canonical forms against the permutation model and the filter enumeration
        if let Some(m) = &model {
            let images: Vec<_> = g.elements.iter().map(|e| m.product(e.canonical_word())).collect();
            let distinct: std::collections::HashSet<_> = images.iter().collect();
            t.check(distinct.len() == g.elements.len() && m.order() == g.elements.len(), || {
                Failure::new(&g.name, "group enumeration does not match the permutation model")
            });
        } else {
            t.notes.push(format!("{}: no permutation model, canonical forms checked by the braid closure only", g.name));
        }
        let elements: Vec<Element> = g.elements.to_vec();
        let rank = g.sys.rank() as f64;
        t.merge(fan_out(&elements, &g.name, |e| e.to_string(), |e| {
            let mut t = Tally::default();
            let words = g.sys.reduced_words(e)?;
            for word in &words {
                let c = g.sys.canonicalize(word)?;
                t.check(&c == e, || Failure::new(&g.name, format!("canonicalize({word}) = {c}")).u(e));
                if let Some(m) = &model {
                    t.check(m.product(word) == m.product(e.canonical_word()), || {
                        Failure::new(&g.name, format!("model disagrees on reduced word {word}")).u(e)
                    });
                }
            }
            t.check(words.first() == Some(e.canonical_word()), || {
                Failure::new(&g.name, "canonical word is not the lex-first reduced word").u(e)
            });
            if rank.powi(e.length() as i32) <= 1e5 {
                let filtered = oracle::reduced_words_by_filter(&g.sys, e)?;
                t.check(filtered == words, || {
                    Failure::new(&g.name, format!("{} reduced words by braid closure, {} by filter", words.len(), filtered.len()))
                        .u(e)
                });
            }
            for v in g.elements.iter() {
                let fast = g.bruhat_le(e, v);
                let slow = oracle::bruhat_leq_by_subwords(&g.sys, e, v)?;
                t.check(fast == slow, || Failure::new(&g.name, format!("bruhat_leq = {fast}, subword oracle = {slow}")).u(e).v(v));
            }
            Ok(t)
        }));
        let words = self.fiber_words(g)?;
        t.merge(fan_out(&words, &g.name, |q| q.to_string(), |q| {
            let sorter = SortingWord::new(&g.sys, q)?;
            let mut t = Tally::default();
            for u in g.below(sorter.element()) {
                let fast = self.sorting_subword(&sorter, &u)?;
                let slow = oracle::sorting_subword_by_scan(&g.sys, q, &u)?;
                t.check(Some(fast) == slow, || {
                    Failure::new(&g.name, format!("Q(u) = {fast}, lex scan = {slow:?}")).q(q).u(&u)
                });
            }
            Ok(t)
        }));
        Ok(t)
    }

    fn poset_map(&self, g: &GroupData) -> Result<Tally> {
        let words = self.fiber_words(g)?;
        Ok(fan_out(&words, &g.name, |q| q.to_string(), |q| {
            let cube = BooleanCube::new(&g.sys, q)?;
            let mut t = Tally::default();
            if cube.len() <= crate::fiber::MAX_MONOTONE_LEN {
                let bad = cube.order_violation(self.config.seed)?;
                t.check(bad.is_none(), || {
                    let (s, u) = bad.expect("violation present");
                    Failure::new(&g.name, format!("f not monotone on {s} ⊆ {u}")).q(q)
                });
            }
            let below = g.below(cube.top());
            let total: usize = below.iter().map(|u| cube.fiber(u).len()).sum();
            t.check(total == 1 << cube.len(), || {
                Failure::new(&g.name, format!("fibers cover {total} of {} subsets", 1u64 << cube.len())).q(q)
            });
            let section = cube.sorting_section()?;
            for (u, set) in &section {
                let fu = cube.f(set)?;
                t.check(fu == u, || Failure::new(&g.name, format!("f(Q(u)) = {fu}")).q(q).u(u));
            }
            let problems = cube.section_violations()?;
            t.check(problems.is_empty(), || Failure::new(&g.name, problems.join("; ")).q(q));
            Ok(t)
        }))
    }
}

/// Parses a comma-separated list of group names such as `A3,B2,I2:5`.
pub fn parse_groups(spec: &str) -> Result<Vec<CoxeterSystem>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<CoxeterType>().and_then(CoxeterSystem::named))
        .collect()
}

/// Convenience: run with the given groups and seed, default everything else.
pub fn verify_groups(groups: Vec<CoxeterSystem>, seed: u64) -> Report {
    let mut config = VerifyConfig::new(groups);
    config.seed = seed;
    Verifier::new(config).run()
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new("-", e.to_string())
    }
}

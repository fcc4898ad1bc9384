//! Finite posets of group elements: weak and Bruhat intervals, sorting
//! orders, covers, restriction, duals, and pointwise intersection / union
//! of relations.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element, Word};
use crate::error::{Error, Result};
use crate::hecke::{bruhat_leq, weak_leq, IndexSet, SortingWord};

/// A finite poset stored as a dense relation matrix over an ordered ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ground: Vec<Element>,
    leq: Vec<Vec<bool>>,
    label: String,
}

impl Poset {
    /// Checks the relation is a partial order on a duplicate-free ground set.
    pub fn new(ground: Vec<Element>, leq: Vec<Vec<bool>>, label: impl Into<String>) -> Result<Self> {
        let n = ground.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::NotPartialOrder("relation matrix has the wrong shape".into()));
        }
        let distinct: BTreeSet<&Element> = ground.iter().collect();
        if distinct.len() != n {
            return Err(Error::NotPartialOrder("ground set has duplicates".into()));
        }
        if let Some(msg) = partial_order_violation(&ground, &leq) {
            return Err(Error::NotPartialOrder(msg));
        }
        Ok(Poset { ground, leq, label: label.into() })
    }

    /// Sorts the ground set by (length, canonical word) and evaluates the
    /// relation on every ordered pair.
    pub fn from_relation<F>(mut ground: Vec<Element>, label: impl Into<String>, mut rel: F) -> Result<Self>
    where
        F: FnMut(&Element, &Element) -> Result<bool>,
    {
        ground.sort();
        ground.dedup();
        let mut leq = vec![vec![false; ground.len()]; ground.len()];
        for (i, a) in ground.iter().enumerate() {
            for (j, b) in ground.iter().enumerate() {
                leq[i][j] = i == j || rel(a, b)?;
            }
        }
        Poset::new(ground, leq, label)
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn ground(&self) -> &[Element] {
        &self.ground
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.ground.binary_search(e).ok().or_else(|| self.ground.iter().position(|g| g == e))
    }

    /// Compares two elements of the ground set.
    pub fn leq_elements(&self, a: &Element, b: &Element) -> Result<bool> {
        let i = self.index_of(a).ok_or_else(|| Error::NotInGround(a.to_string()))?;
        let j = self.index_of(b).ok_or_else(|| Error::NotInGround(b.to_string()))?;
        Ok(self.leq[i][j])
    }

    /// Cover pairs `(i, j)` with `i < j` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn cover_elements(&self) -> Vec<(Element, Element)> {
        self.covers()
            .into_iter()
            .map(|(i, j)| (self.ground[i].clone(), self.ground[j].clone()))
            .collect()
    }

    /// Induced subposet on `subset`, kept in this poset's ground order.
    pub fn restrict(&self, subset: &[Element]) -> Result<Poset> {
        let mut idx = Vec::with_capacity(subset.len());
        for e in subset {
            idx.push(self.index_of(e).ok_or_else(|| Error::NotInGround(e.to_string()))?);
        }
        idx.sort_unstable();
        idx.dedup();
        let ground = idx.iter().map(|&i| self.ground[i].clone()).collect();
        let leq = idx.iter().map(|&i| idx.iter().map(|&j| self.leq[i][j]).collect()).collect();
        Ok(Poset { ground, leq, label: self.label.clone() })
    }

    /// Elements strictly between positions `i` and `j`.
    pub fn open_interval(&self, i: usize, j: usize) -> Result<Poset> {
        let inside: Vec<Element> = (0..self.len())
            .filter(|&k| k != i && k != j && self.leq[i][k] && self.leq[k][j])
            .map(|k| self.ground[k].clone())
            .collect();
        self.restrict(&inside)
    }

    pub fn dual(&self) -> Poset {
        let n = self.len();
        let leq = (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect();
        Poset { ground: self.ground.clone(), leq, label: format!("dual of {}", self.label) }
    }

    /// Minimal elements.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| (0..self.len()).all(|i| i == j || !self.leq[i][j])).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| i == j || !self.leq[i][j])).collect()
    }

    /// Same ground set (in the same order) and the same relation.
    pub fn same_relation(&self, other: &Poset) -> bool {
        self.ground == other.ground && self.leq == other.leq
    }

    /// Graphviz digraph of the cover relation, bottom to top.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", self.label.replace('"', "'"));
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, e) in self.ground.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{e}\"];");
        }
        for (i, j) in self.covers() {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }

    /// One `lower<TAB>upper` line per cover.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("lower\tupper\n");
        for (a, b) in self.cover_elements() {
            let _ = writeln!(out, "{a}\t{b}");
        }
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            label: self.label.clone(),
            ground: self.ground.iter().map(|e| e.canonical_word().clone()).collect(),
            leq: self.leq.clone(),
            covers: self.covers(),
        }
    }
}

/// Serialized form of a [`Poset`].
#[derive(Clone, Debug, Serialize)]
pub struct PosetJson {
    pub label: String,
    pub ground: Vec<Word>,
    pub leq: Vec<Vec<bool>>,
    pub covers: Vec<(usize, usize)>,
}

fn partial_order_violation(ground: &[Element], leq: &[Vec<bool>]) -> Option<String> {
    let n = ground.len();
    for i in 0..n {
        if !leq[i][i] {
            return Some(format!("not reflexive at {}", ground[i]));
        }
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Some(format!("not antisymmetric: {} and {}", ground[i], ground[j]));
            }
            if !leq[i][j] {
                continue;
            }
            for k in 0..n {
                if leq[j][k] && !leq[i][k] {
                    return Some(format!(
                        "not transitive: {} <= {} <= {}",
                        ground[i], ground[j], ground[k]
                    ));
                }
            }
        }
    }
    None
}

/// `[e, w]` in Bruhat order, sorted. Uses `[e, w] = [e, ws] ∪ [e, ws]·s`
/// for a right descent `s` of `w`.
pub fn bruhat_lower_set(sys: &CoxeterSystem, w: &Element) -> Result<Vec<Element>> {
    let mut set: BTreeSet<Element> = BTreeSet::new();
    set.insert(Element::identity());
    let mut cur = Element::identity();
    for &s in w.canonical_word().letters() {
        let mut next = set.clone();
        for x in &set {
            next.insert(sys.mult_right(x, s)?);
        }
        set = next;
        cur = sys.mult_right(&cur, s)?;
    }
    debug_assert_eq!(&cur, w);
    Ok(set.into_iter().collect())
}

/// Closed Bruhat interval `[u, w]`.
pub fn bruhat_interval(sys: &CoxeterSystem, u: &Element, w: &Element) -> Result<Poset> {
    if !bruhat_leq(sys, u, w)? {
        return Err(Error::Precondition(format!("{u} is not below {w} in Bruhat order")));
    }
    let mut ground = Vec::new();
    for z in bruhat_lower_set(sys, w)? {
        if bruhat_leq(sys, u, &z)? {
            ground.push(z);
        }
    }
    Poset::from_relation(ground, format!("Bruhat [{u}, {w}]"), |a, b| bruhat_leq(sys, a, b))
}

/// `[e, w]` in right weak order: prefixes of reduced words of `w`.
pub fn weak_lower_set(sys: &CoxeterSystem, w: &Element) -> Result<Vec<Element>> {
    let mut set: BTreeSet<Element> = BTreeSet::new();
    for word in sys.reduced_words(w)? {
        for k in 0..=word.len() {
            set.insert(sys.canonicalize(&word.slice(0, k))?);
        }
    }
    Ok(set.into_iter().collect())
}

pub fn weak_interval(sys: &CoxeterSystem, w: &Element) -> Result<Poset> {
    let ground = weak_lower_set(sys, w)?;
    Poset::from_relation(ground, format!("weak [e, {w}]"), |a, b| weak_leq(sys, a, b))
}

/// Bruhat order on `[e, w]` (the same ground set as the sorting orders of
/// reduced words of `w`).
pub fn bruhat_order_below(sys: &CoxeterSystem, w: &Element) -> Result<Poset> {
    bruhat_interval(sys, &Element::identity(), w)
}

/// The `Q`-sorting order on `[e, demazure(Q)]_B`: `u <= v` iff `Q(u) ⊆ Q(v)`.
pub fn sorting_order(sys: &CoxeterSystem, q: &Word) -> Result<Poset> {
    let sorter = SortingWord::new(sys, q)?;
    sorting_order_with(&sorter, |s, u| s.sorting_subword(u))
}

/// Sorting order built from an arbitrary `u -> Q(u)` map. The verifier uses
/// this to inject faults.
pub fn sorting_order_with<F>(sorter: &SortingWord, mut q_of: F) -> Result<Poset>
where
    F: FnMut(&SortingWord, &Element) -> Result<IndexSet>,
{
    let ground = bruhat_lower_set(sorter.system(), sorter.element())?;
    let mut sets: HashMap<Element, IndexSet> = HashMap::new();
    for u in &ground {
        sets.insert(u.clone(), q_of(sorter, u)?);
    }
    Poset::from_relation(ground, format!("{}-sorting", sorter.word()), |a, b| {
        Ok(sets[a].is_subset(&sets[b]))
    })
}

/// Pointwise AND of relations on a common ground set.
pub fn relation_intersection(posets: &[Poset]) -> Result<Poset> {
    let first = posets.first().ok_or(Error::Precondition("no posets to intersect".into()))?;
    check_common_ground(posets)?;
    let n = first.len();
    let leq = (0..n)
        .map(|i| (0..n).map(|j| posets.iter().all(|p| p.leq[i][j])).collect())
        .collect();
    Poset::new(first.ground.clone(), leq, "intersection")
}

/// Pointwise OR of relations, not closed under transitivity.
#[derive(Clone, Debug)]
pub struct RelationUnion {
    pub ground: Vec<Element>,
    pub leq: Vec<Vec<bool>>,
    /// Whether the raw union is already transitive.
    pub transitive: bool,
}

impl RelationUnion {
    /// Whether the raw union equals the relation of `p`.
    pub fn equals(&self, p: &Poset) -> bool {
        self.ground == p.ground && self.leq == p.leq
    }
}

pub fn relation_union(posets: &[Poset]) -> Result<RelationUnion> {
    let first = posets.first().ok_or(Error::Precondition("no posets to unite".into()))?;
    check_common_ground(posets)?;
    let n = first.len();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| posets.iter().any(|p| p.leq[i][j])).collect())
        .collect();
    let transitive = (0..n).all(|i| {
        (0..n).all(|j| !leq[i][j] || (0..n).all(|k| !leq[j][k] || leq[i][k]))
    });
    Ok(RelationUnion { ground: first.ground.clone(), leq, transitive })
}

fn check_common_ground(posets: &[Poset]) -> Result<()> {
    let g = &posets[0].ground;
    if posets.iter().any(|p| &p.ground != g) {
        return Err(Error::GroundMismatch);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterType;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn b2() -> CoxeterSystem {
        CoxeterSystem::named(CoxeterType::B(2)).unwrap()
    }

    fn el(sys: &CoxeterSystem, s: &str) -> Element {
        sys.canonicalize(&w(s)).unwrap()
    }

    fn chain(n: usize) -> Poset {
        let a = CoxeterSystem::named(CoxeterType::A(n.max(2))).unwrap();
        let ground: Vec<Element> = (0..n).map(|k| a.canonicalize(&Word::new((1..=k as u8).collect())).unwrap()).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Poset::new(ground, leq, "chain").unwrap()
    }

    #[test]
    fn validator_rejects_bad_relations() {
        let s = b2();
        let g = vec![Element::identity(), el(&s, "1")];
        assert!(Poset::new(g.clone(), vec![vec![true, true], vec![true, true]], "x").is_err());
        assert!(Poset::new(g.clone(), vec![vec![false, false], vec![false, true]], "x").is_err());
        let g3 = vec![Element::identity(), el(&s, "1"), el(&s, "2")];
        let nontransitive = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(Poset::new(g3, nontransitive, "x").is_err());
        assert!(Poset::new(vec![Element::identity(); 2], vec![vec![true; 2]; 2], "x").is_err());
    }

    #[test]
    fn bruhat_intervals() {
        let s = b2();
        let id = Element::identity();
        assert_eq!(bruhat_interval(&s, &id, &id).unwrap().len(), 1);
        let w0 = s.longest_element().unwrap();
        let full = bruhat_interval(&s, &id, &w0).unwrap();
        assert_eq!(full.len(), 8);
        // levels 1-2 and 2-3 are complete bipartite: 2 + 4 + 4 + 2
        assert_eq!(full.covers().len(), 12);
        let lower = bruhat_interval(&s, &id, &el(&s, "2,1,2")).unwrap();
        let expect: Vec<Element> = ["", "1", "2", "1,2", "2,1", "2,1,2"].iter().map(|x| el(&s, x)).collect();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort();
        assert_eq!(lower.ground(), expect_sorted.as_slice());
        assert!(bruhat_interval(&s, &el(&s, "1,2,1"), &el(&s, "2,1,2")).is_err());
    }

    #[test]
    fn weak_intervals() {
        let s = b2();
        assert_eq!(weak_interval(&s, &Element::identity()).unwrap().len(), 1);
        let p = weak_interval(&s, &el(&s, "2,1,2")).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.covers().len(), 3);
        let names: Vec<String> = p.ground().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["e", "s2", "s2s1", "s2s1s2"]);
        assert_eq!(weak_interval(&s, &s.longest_element().unwrap()).unwrap().len(), 8);
    }

    #[test]
    fn sorting_orders_b2() {
        let s = b2();
        let a1 = CoxeterSystem::named(CoxeterType::A(1)).unwrap();
        let p = sorting_order(&a1, &w("1")).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.covers().len(), 1);

        let q = sorting_order(&s, &w("2,1,2")).unwrap();
        assert_eq!(q.len(), 6);
        assert!(q.leq_elements(&el(&s, "1"), &el(&s, "2,1")).unwrap());
        assert!(!weak_leq(&s, &el(&s, "1"), &el(&s, "2,1")).unwrap());
        assert!(!q.leq_elements(&el(&s, "2"), &el(&s, "1,2")).unwrap());
        assert!(bruhat_leq(&s, &el(&s, "2"), &el(&s, "1,2")).unwrap());

        let weak = weak_interval(&s, &el(&s, "2,1,2")).unwrap();
        let restricted = q.restrict(weak.ground()).unwrap();
        assert_eq!(restricted.covers().len(), 3);
        assert_eq!(restricted.relation(), weak.relation());
        assert!(sorting_order(&s, &w("1,1")).is_err());
    }

    #[test]
    fn intersection_and_union_b2() {
        let s = b2();
        let w0 = s.longest_element().unwrap();
        let orders: Vec<Poset> = s
            .reduced_words(&w0)
            .unwrap()
            .iter()
            .map(|q| sorting_order(&s, q).unwrap())
            .collect();
        let weak = weak_interval(&s, &w0).unwrap();
        let bruhat = bruhat_order_below(&s, &w0).unwrap();
        assert!(relation_intersection(&orders).unwrap().same_relation(&weak));
        let union = relation_union(&orders).unwrap();
        assert!(union.equals(&bruhat));
        assert!(union.transitive);
        let p = &orders[0];
        assert!(relation_intersection(&[p.clone(), p.clone()]).unwrap().same_relation(p));
        assert!(matches!(
            relation_intersection(&[p.clone(), weak_interval(&s, &el(&s, "1")).unwrap()]),
            Err(Error::GroundMismatch)
        ));
    }

    #[test]
    fn covers_and_restriction() {
        assert_eq!(chain(3).covers().len(), 2);
        let c = chain(3);
        let anti = c.restrict(&[c.ground()[0].clone()]).unwrap();
        assert_eq!(anti.len(), 1);
        assert!(c.restrict(c.ground()).unwrap().same_relation(&c));
        let s = b2();
        assert!(matches!(c.restrict(&[el(&s, "1,2,1")]), Err(Error::NotInGround(_))));
        // antichain: two incomparable atoms
        let atoms = bruhat_order_below(&s, &s.longest_element().unwrap())
            .unwrap()
            .restrict(&[el(&s, "1"), el(&s, "2")])
            .unwrap();
        assert!(atoms.covers().is_empty());
    }

    #[test]
    fn duals() {
        let c = chain(3);
        let d = c.dual();
        assert_eq!(d.minimal(), vec![2]);
        assert!(d.dual().same_relation(&c));
        let s = b2();
        let w0 = s.longest_element().unwrap();
        let b = bruhat_order_below(&s, &w0).unwrap().dual();
        assert_eq!(b.ground()[b.minimal()[0]], w0);
    }

    #[test]
    fn dot_output_lists_only_covers() {
        let s = b2();
        let p = bruhat_order_below(&s, &s.longest_element().unwrap()).unwrap();
        let dot = p.to_dot();
        assert_eq!(dot.matches("->").count(), 12);
        assert!(dot.starts_with("digraph"));
        assert_eq!(p.to_tsv().lines().count(), 13);
    }
}

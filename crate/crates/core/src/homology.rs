//! Reduced simplicial homology of small complexes, by exact elimination over
//! GF(p) or the rationals, plus order complexes of finite posets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::{BigRational, Rational64};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Default limit on the total number of faces a complex may have.
pub const DEFAULT_FACE_BUDGET: usize = 200_000;

/// Coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// Integers mod a prime.
    Prime(u64),
    Rationals,
}

impl Field {
    pub const GF2: Field = Field::Prime(2);

    /// `0` means the rationals, anything else must be a prime.
    pub fn from_characteristic(p: u64) -> Result<Field> {
        if p == 0 {
            return Ok(Field::Rationals);
        }
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime || p > u32::MAX as u64 {
            return Err(Error::Parse(format!("field characteristic {p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p = s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad field `{s}`")))?;
        Field::from_characteristic(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A finite simplicial complex given by its facets. Vertices are integers.
///
/// `{∅}` (a single empty facet) is the empty complex, the (-1)-sphere; a
/// complex with no facets at all is void.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Sorts vertices within faces and drops faces contained in others.
    pub fn from_facets<I: IntoIterator<Item = Vec<usize>>>(faces: I) -> Self {
        let mut faces: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for f in faces {
            if !facets.iter().any(|g| is_subset(&f, g)) {
                facets.push(f);
            }
        }
        facets.sort();
        SimplicialComplex { facets }
    }

    /// `{∅}`.
    pub fn empty_complex() -> Self {
        SimplicialComplex { facets: vec![Vec::new()] }
    }

    /// The full simplex on `vertices`.
    pub fn simplex(vertices: Vec<usize>) -> Self {
        Self::from_facets([vertices])
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.facets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Dimension, or `None` when void.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// A vertex lying in every facet, if any.
    pub fn cone_point(&self) -> Option<usize> {
        let first = self.facets.first()?;
        first.iter().copied().find(|v| self.facets.iter().all(|f| f.binary_search(v).is_ok()))
    }

    /// Faces grouped by dimension: entry `k` holds the faces of dimension `k - 1`.
    pub fn faces_by_dimension(&self, budget: usize) -> Result<Vec<Vec<Vec<usize>>>> {
        let Some(dim) = self.dimension() else {
            return Ok(Vec::new());
        };
        let mut levels: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); (dim + 2) as usize];
        let mut total = 0usize;
        for facet in &self.facets {
            let k = facet.len();
            if k >= 63 {
                return Err(Error::FaceBudgetExceeded { budget });
            }
            for mask in 0u64..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| facet[i]).collect();
                let level = &mut levels[face.len()];
                if level.insert(face) {
                    total += 1;
                    if total > budget {
                        return Err(Error::FaceBudgetExceeded { budget });
                    }
                }
            }
        }
        Ok(levels.into_iter().map(|l| l.into_iter().collect()).collect())
    }

    /// Number of faces in each dimension, starting at -1.
    pub fn face_counts(&self, budget: usize) -> Result<Vec<usize>> {
        Ok(self.faces_by_dimension(budget)?.iter().map(Vec::len).collect())
    }

    /// Faces ordered by inclusion, without the empty face. Vertex `i` of the
    /// order complex of this poset is the `i`-th face returned alongside.
    pub fn face_poset(&self, budget: usize) -> Result<(Vec<Vec<usize>>, Vec<Vec<bool>>)> {
        let faces: Vec<Vec<usize>> = self.faces_by_dimension(budget)?.into_iter().skip(1).flatten().collect();
        let leq = faces.iter().map(|a| faces.iter().map(|b| is_subset(a, b)).collect()).collect();
        Ok((faces, leq))
    }

    /// First barycentric subdivision: the order complex of the nonempty faces.
    pub fn barycentric_subdivision(&self, budget: usize) -> Result<SimplicialComplex> {
        let (_, leq) = self.face_poset(budget)?;
        order_complex_of_relation(&leq, budget)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Number of chains of a partial order, the empty chain included; this is
/// the face count of its order complex. Saturates instead of overflowing.
pub fn count_chains(leq: &[Vec<bool>]) -> u128 {
    let n = leq.len();
    // process elements by number of elements below, so predecessors come first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (0..n).filter(|&j| leq[j][i]).count());
    let mut ending = vec![0u128; n];
    let mut total = 1u128;
    for &v in &order {
        let c = order
            .iter()
            .filter(|&&u| u != v && leq[u][v])
            .fold(1u128, |acc, &u| acc.saturating_add(ending[u]));
        ending[v] = c;
        total = total.saturating_add(c);
    }
    total
}

/// Order complex of a poset: faces are chains, vertices are ground indices.
pub fn order_complex(p: &Poset) -> Result<SimplicialComplex> {
    order_complex_of_relation(p.relation(), DEFAULT_FACE_BUDGET)
}

/// Order complex of a partial order given as a relation matrix. Facets are
/// the maximal chains, walked along covers from minimal to maximal elements.
pub fn order_complex_of_relation(leq: &[Vec<bool>], budget: usize) -> Result<SimplicialComplex> {
    let n = leq.len();
    if n == 0 {
        return Ok(SimplicialComplex::empty_complex());
    }
    let lt = |i: usize, j: usize| i != j && leq[i][j];
    // strict up-sets as bitsets; j covers i iff j is above i but not above
    // anything else above i
    let blocks = n.div_ceil(64);
    let above: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut bits = vec![0u64; blocks];
            for j in (0..n).filter(|&j| lt(i, j)) {
                bits[j / 64] |= 1 << (j % 64);
            }
            bits
        })
        .collect();
    let upper_covers: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut beyond = vec![0u64; blocks];
            for k in (0..n).filter(|&k| lt(i, k)) {
                for (b, a) in beyond.iter_mut().zip(&above[k]) {
                    *b |= a;
                }
            }
            (0..n).filter(|&j| lt(i, j) && beyond[j / 64] & (1 << (j % 64)) == 0).collect()
        })
        .collect();
    let minimal: Vec<usize> = (0..n).filter(|&j| !(0..n).any(|i| lt(i, j))).collect();
    // count first so oversized complexes fail before any allocation
    let mut counts = vec![None; n];
    let total = minimal.iter().fold(0u128, |acc, &m| acc.saturating_add(chains_above(m, &upper_covers, &mut counts)));
    if total > budget as u128 {
        return Err(Error::FaceBudgetExceeded { budget });
    }
    let mut facets = Vec::new();
    let mut chain = Vec::new();
    for m in minimal {
        walk_chains(m, &upper_covers, &mut chain, &mut facets, budget)?;
    }
    let facets = facets
        .into_iter()
        .map(|mut c: Vec<usize>| {
            c.sort_unstable();
            c
        })
        .collect();
    Ok(SimplicialComplex { facets }.normalized())
}

impl SimplicialComplex {
    fn normalized(mut self) -> Self {
        self.facets.sort();
        self.facets.dedup();
        self
    }
}

/// Number of maximal chains starting at `v`.
fn chains_above(v: usize, upper: &[Vec<usize>], memo: &mut [Option<u128>]) -> u128 {
    if let Some(c) = memo[v] {
        return c;
    }
    let c = if upper[v].is_empty() {
        1
    } else {
        upper[v].iter().fold(0u128, |acc, &w| acc.saturating_add(chains_above(w, upper, memo)))
    };
    memo[v] = Some(c);
    c
}

fn walk_chains(
    v: usize,
    upper: &[Vec<usize>],
    chain: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    budget: usize,
) -> Result<()> {
    chain.push(v);
    if upper[v].is_empty() {
        if out.len() >= budget {
            return Err(Error::FaceBudgetExceeded { budget });
        }
        out.push(chain.clone());
    } else {
        for &w in &upper[v] {
            walk_chains(w, upper, chain, out, budget)?;
        }
    }
    chain.pop();
    Ok(())
}

/// Reduced Betti numbers, indexed from dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiProfile {
    pub field: Field,
    /// `betti[k]` is the reduced Betti number in dimension `k - 1`.
    pub betti: Vec<usize>,
}

impl BettiProfile {
    pub fn get(&self, dim: isize) -> usize {
        if dim < -1 {
            return 0;
        }
        self.betti.get((dim + 1) as usize).copied().unwrap_or(0)
    }

    /// All reduced Betti numbers vanish.
    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    /// Exactly one nonzero reduced Betti number, equal to 1, in dimension `d`.
    pub fn is_sphere(&self, d: isize) -> bool {
        self.betti
            .iter()
            .enumerate()
            .all(|(k, &b)| if k as isize - 1 == d { b == 1 } else { b == 0 })
            && self.get(d) == 1
    }

    /// Trailing zeros dropped, for comparisons across complexes.
    pub fn trimmed(&self) -> Vec<usize> {
        let mut v = self.betti.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

impl fmt::Display for BettiProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.field)?;
        for (k, b) in self.betti.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{b}", k as isize - 1)?;
        }
        write!(f, "]")
    }
}

pub fn reduced_betti(k: &SimplicialComplex, field: Field) -> Result<BettiProfile> {
    reduced_betti_with_budget(k, field, DEFAULT_FACE_BUDGET)
}

/// Boundary maps include the augmentation `C_0 -> C_{-1}`, so the result
/// is reduced homology. The void complex has no homology at all.
pub fn reduced_betti_with_budget(k: &SimplicialComplex, field: Field, budget: usize) -> Result<BettiProfile> {
    let levels = k.faces_by_dimension(budget)?;
    if levels.is_empty() {
        return Ok(BettiProfile { field, betti: Vec::new() });
    }
    let index: Vec<HashMap<&[usize], usize>> = levels
        .iter()
        .map(|faces| faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect())
        .collect();
    // ranks[k] = rank of the boundary map out of level k (faces of size k)
    let mut ranks = vec![0usize; levels.len() + 1];
    for size in 1..levels.len() {
        let rows: Vec<Vec<(usize, i64)>> = levels[size]
            .iter()
            .map(|face| {
                let mut row: Vec<(usize, i64)> = (0..face.len())
                    .map(|drop| {
                        let sub: Vec<usize> =
                            face.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                        let sign = if drop % 2 == 0 { 1 } else { -1 };
                        (index[size - 1][sub.as_slice()], sign)
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        ranks[size] = match field {
            Field::Prime(p) => rank(rows, &ModP(p)),
            Field::Rationals => rank(rows, &Rationals),
        };
    }
    let betti = (0..levels.len())
        .map(|size| levels[size].len() - ranks[size] - ranks[size + 1])
        .collect();
    Ok(BettiProfile { field, betti })
}

/// Field arithmetic needed for elimination.
trait Arith {
    type T: Clone;
    fn from_i64(&self, v: i64) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
    /// `a - f * b`
    fn sub_mul(&self, a: &Self::T, f: &Self::T, b: &Self::T) -> Self::T;
    fn div(&self, a: &Self::T, b: &Self::T) -> Self::T;
}

struct ModP(u64);

impl Arith for ModP {
    type T = u64;

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        let p = self.0;
        (a + p - (f * b) % p) % p
    }

    fn div(&self, a: &u64, b: &u64) -> u64 {
        // b^(p-2) by square-and-multiply
        let p = self.0;
        let (mut base, mut exp, mut inv) = (*b % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                inv = inv * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        a * inv % p
    }
}

struct Rationals;

/// Exact rational that stays on machine integers until an operation would
/// overflow, then moves to arbitrary precision.
#[derive(Clone, Debug)]
enum Exact {
    Small(Rational64),
    Big(BigRational),
}

impl Exact {
    fn big(&self) -> BigRational {
        match self {
            Exact::Small(r) => BigRational::new((*r.numer()).into(), (*r.denom()).into()),
            Exact::Big(r) => r.clone(),
        }
    }
}

impl Arith for Rationals {
    type T = Exact;

    fn from_i64(&self, v: i64) -> Exact {
        Exact::Small(Rational64::from_integer(v))
    }

    fn is_zero(&self, a: &Exact) -> bool {
        match a {
            Exact::Small(r) => r.is_zero(),
            Exact::Big(r) => r.is_zero(),
        }
    }

    fn sub_mul(&self, a: &Exact, f: &Exact, b: &Exact) -> Exact {
        if let (Exact::Small(a), Exact::Small(f), Exact::Small(b)) = (a, f, b) {
            if let Some(r) = f.checked_mul(b).and_then(|p| a.checked_sub(&p)) {
                return Exact::Small(r);
            }
        }
        Exact::Big(a.big() - f.big() * b.big())
    }

    fn div(&self, a: &Exact, b: &Exact) -> Exact {
        if let (Exact::Small(a), Exact::Small(b)) = (a, b) {
            if let Some(r) = a.checked_div(b) {
                return Exact::Small(r);
            }
        }
        Exact::Big(a.big() / b.big())
    }
}

/// Rank of a sparse matrix given as rows of sorted `(column, value)` pairs,
/// by incremental row reduction against pivots keyed on leading column.
fn rank<A: Arith>(rows: Vec<Vec<(usize, i64)>>, arith: &A) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, A::T)>> = HashMap::new();
    for row in rows {
        let mut row: Vec<(usize, A::T)> = row
            .into_iter()
            .map(|(c, v)| (c, arith.from_i64(v)))
            .filter(|(_, v)| !arith.is_zero(v))
            .collect();
        while let Some((lead, lead_val)) = row.first().cloned() {
            match pivots.get(&lead) {
                None => {
                    let normalized = row.iter().map(|(c, v)| (*c, arith.div(v, &lead_val))).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
                Some(pivot) => row = eliminate(arith, &row, &lead_val, pivot),
            }
        }
    }
    pivots.len()
}

/// `row - f * pivot`, where the pivot is normalized to a leading 1.
fn eliminate<A: Arith>(arith: &A, row: &[(usize, A::T)], f: &A::T, pivot: &[(usize, A::T)]) -> Vec<(usize, A::T)> {
    let zero = arith.from_i64(0);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (c, v) = if take_row {
            i += 1;
            (row[i - 1].0, row[i - 1].1.clone())
        } else if take_pivot {
            j += 1;
            (pivot[j - 1].0, arith.sub_mul(&zero, f, &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (row[i - 1].0, arith.sub_mul(&row[i - 1].1, f, &pivot[j - 1].1))
        };
        if !arith.is_zero(&v) {
            out.push((c, v));
        }
    }
    out
}

/// How strongly a complex is known to be contractible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contractibility {
    /// Some vertex lies in every facet: a genuine proof.
    Cone { apex: usize },
    /// No cone vertex, but all reduced Betti numbers vanish over GF(2) and Q.
    AcyclicHomology,
    /// Nonvanishing reduced homology, or the void complex.
    NotContractible,
}

impl Contractibility {
    pub fn is_consistent_with_contractible(&self) -> bool {
        !matches!(self, Contractibility::NotContractible)
    }
}

pub fn contractibility(k: &SimplicialComplex) -> Result<Contractibility> {
    if k.is_void() {
        return Ok(Contractibility::NotContractible);
    }
    if let Some(apex) = k.cone_point() {
        return Ok(Contractibility::Cone { apex });
    }
    let gf2 = reduced_betti(k, Field::GF2)?;
    let q = reduced_betti(k, Field::Rationals)?;
    Ok(if gf2.is_acyclic() && q.is_acyclic() {
        Contractibility::AcyclicHomology
    } else {
        Contractibility::NotContractible
    })
}

/// Cone-certified, or acyclic over both GF(2) and Q.
pub fn is_contractible_certificate(k: &SimplicialComplex) -> Result<bool> {
    Ok(contractibility(k)?.is_consistent_with_contractible())
}

/// Alternating sum of a sequence indexed from dimension -1, i.e. the
/// reduced Euler characteristic when given face counts or Betti numbers.
pub fn euler_characteristic(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
        .sum()
}

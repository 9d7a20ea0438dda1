//! Discrete vector fields on explicit complexes: validity, acyclicity,
//! critical simplices and generalised V-paths.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// A set of pairs `(α, β)` with `α` a codimension-one face of `β`.
/// Serialises as `[[α, β], ...]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    pairs: Vec<(Simplex, Simplex)>,
}

impl Matching {
    pub fn new(pairs: Vec<(Simplex, Simplex)>) -> Self {
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(Simplex, Simplex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn push(&mut self, lower: Simplex, upper: Simplex) {
        self.pairs.push((lower, upper));
    }

    /// Canonical order, for stable output.
    pub fn sort(&mut self) {
        self.pairs.sort_unstable();
    }

    /// Partner lookups; fails on the first simplex used twice.
    pub fn index(&self) -> Result<MatchIndex, MatchingDefect> {
        let mut index = MatchIndex {
            up: HashMap::with_capacity(self.pairs.len()),
            down: HashMap::with_capacity(self.pairs.len()),
        };
        for &(lower, upper) in &self.pairs {
            for s in [lower, upper] {
                if index.up.contains_key(&s) || index.down.contains_key(&s) {
                    return Err(MatchingDefect::SharedSimplex(s));
                }
            }
            index.up.insert(lower, upper);
            index.down.insert(upper, lower);
        }
        Ok(index)
    }
}

impl FromIterator<(Simplex, Simplex)> for Matching {
    fn from_iter<I: IntoIterator<Item = (Simplex, Simplex)>>(iter: I) -> Self {
        Matching::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone)]
pub struct MatchIndex {
    up: HashMap<Simplex, Simplex>,
    down: HashMap<Simplex, Simplex>,
}

impl MatchIndex {
    /// The coface `s` is matched with, if `s` is the lower end of a pair.
    pub fn up(&self, s: Simplex) -> Option<Simplex> {
        self.up.get(&s).copied()
    }

    /// The face `s` is matched with, if `s` is the upper end of a pair.
    pub fn down(&self, s: Simplex) -> Option<Simplex> {
        self.down.get(&s).copied()
    }

    /// Nonempty and either unmatched or matched with the empty simplex.
    pub fn is_critical(&self, s: Simplex) -> bool {
        !s.is_empty() && self.up(s).is_none() && self.down(s).is_none_or(Simplex::is_empty)
    }
}

/// Why a matching was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingDefect {
    NotInComplex(Simplex),
    NotHasseEdge(Simplex, Simplex),
    SharedSimplex(Simplex),
    /// Alternating `α_0, β_0, α_1, ..., α_0` closed V-path.
    Cycle(Vec<Simplex>),
}

impl fmt::Display for MatchingDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingDefect::NotInComplex(s) => write!(f, "simplex {s:?} is not in the complex"),
            MatchingDefect::NotHasseEdge(a, b) => {
                write!(f, "pair ({a:?}, {b:?}) is not a codimension-one face pair")
            }
            MatchingDefect::SharedSimplex(s) => write!(f, "simplex {s:?} occurs in two pairs"),
            MatchingDefect::Cycle(path) => write!(f, "closed V-path {path:?}"),
        }
    }
}

impl From<MatchingDefect> for Error {
    fn from(defect: MatchingDefect) -> Self {
        Error::Verification(defect.to_string())
    }
}

/// Every pair is a Hasse edge of `complex` and no simplex is used twice.
pub fn verify_matching(complex: &SimplicialComplex, matching: &Matching) -> Result<MatchIndex, MatchingDefect> {
    for &(lower, upper) in matching.pairs() {
        for s in [lower, upper] {
            if !complex.contains(s) {
                return Err(MatchingDefect::NotInComplex(s));
            }
        }
        if !(lower.is_proper_subset(upper) && upper.len() == lower.len() + 1) {
            return Err(MatchingDefect::NotHasseEdge(lower, upper));
        }
    }
    matching.index()
}

/// A closed V-path, if one exists.
///
/// Reversing matched edges can only close a cycle between two consecutive
/// dimensions, so each `(d, d + 1)` layer is searched on its own. Within a
/// layer the search runs over matched lower simplices `α`, with an arc
/// `α → α'` whenever `α' ≠ α` is a matched facet of the partner of `α`.
pub fn find_v_cycle(complex: &SimplicialComplex, matching: &Matching) -> Result<Option<Vec<Simplex>>> {
    let index = verify_matching(complex, matching)?;
    for d in -1..complex.dim() {
        if let Some(cycle) = layer_cycle(complex.of_dim(d), &index) {
            return Ok(Some(cycle));
        }
    }
    Ok(None)
}

fn layer_cycle(lower: &[Simplex], index: &MatchIndex) -> Option<Vec<Simplex>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark: HashMap<Simplex, Mark> = lower
        .iter()
        .filter(|s| index.up(**s).is_some())
        .map(|&s| (s, Mark::New))
        .collect();
    let successors = |alpha: Simplex| -> Vec<Simplex> {
        let beta = index.up(alpha).expect("matched lower simplex");
        beta.facets()
            .map(|(_, face)| face)
            .filter(|&face| face != alpha && index.up(face).is_some())
            .collect()
    };
    let starts: Vec<Simplex> = lower.iter().copied().filter(|s| mark.contains_key(s)).collect();
    for start in starts {
        if mark[&start] != Mark::New {
            continue;
        }
        let mut stack: Vec<(Simplex, Vec<Simplex>)> = vec![(start, successors(start))];
        mark.insert(start, Mark::Open);
        while let Some((node, pending)) = stack.last_mut() {
            let node = *node;
            match pending.pop() {
                Some(next) => match mark[&next] {
                    Mark::New => {
                        mark.insert(next, Mark::Open);
                        let succ = successors(next);
                        stack.push((next, succ));
                    }
                    Mark::Open => {
                        let from = stack.iter().position(|(s, _)| *s == next).expect("open node on stack");
                        let mut path = Vec::new();
                        for (alpha, _) in &stack[from..] {
                            path.push(*alpha);
                            path.push(index.up(*alpha).expect("matched"));
                        }
                        path.push(next);
                        return Some(path);
                    }
                    Mark::Done => {}
                },
                None => {
                    mark.insert(node, Mark::Done);
                    stack.pop();
                }
            }
        }
    }
    None
}

/// Whether reversing the matched Hasse edges leaves the diagram acyclic.
/// Fails when `matching` is not a valid matching on `complex`.
pub fn verify_acyclic(complex: &SimplicialComplex, matching: &Matching) -> Result<bool> {
    Ok(find_v_cycle(complex, matching)?.is_none())
}

/// Per-dimension counts of critical simplices, `f_0, f_1, ...`, with
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CriticalFVector(Vec<BigUint>);

impl CriticalFVector {
    pub fn new(mut counts: Vec<BigUint>) -> Self {
        while counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        CriticalFVector(counts)
    }

    pub fn from_counts(counts: &[usize]) -> Self {
        Self::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.0
    }

    /// `f_d`, zero past the end.
    pub fn get(&self, d: usize) -> BigUint {
        self.0.get(d).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .map(|(d, c)| {
                let c = BigInt::from(c.clone());
                if d % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Counts as machine integers, when they fit.
    pub fn to_usize(&self) -> Option<Vec<usize>> {
        self.0.iter().map(ToPrimitive::to_usize).collect()
    }
}

impl fmt::Display for CriticalFVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// JSON numbers when they fit in a `u64`, decimal strings otherwise.
impl Serialize for CriticalFVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(BigCount))
    }
}

struct BigCount<'a>(&'a BigUint);

impl Serialize for BigCount<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(small) => serializer.serialize_u64(small),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for CriticalFVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CountVisitor;
        impl Visitor<'_> for CountVisitor {
            type Value = BigUint;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or decimal string")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<BigUint, E> {
                Ok(BigUint::from(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BigUint, E> {
                v.parse().map_err(E::custom)
            }
        }
        struct Count(BigUint);
        impl<'de> Deserialize<'de> for Count {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                d.deserialize_any(CountVisitor).map(Count)
            }
        }
        let counts = Vec::<Count>::deserialize(deserializer)?;
        Ok(CriticalFVector::new(counts.into_iter().map(|c| c.0).collect()))
    }
}

/// Critical simplices in canonical order and their per-dimension counts.
pub fn critical_simplices(complex: &SimplicialComplex, matching: &Matching) -> Result<(Vec<Simplex>, CriticalFVector)> {
    let index = verify_matching(complex, matching)?;
    Ok(critical_from_index(complex, &index))
}

pub(crate) fn critical_from_index(complex: &SimplicialComplex, index: &MatchIndex) -> (Vec<Simplex>, CriticalFVector) {
    let critical: Vec<Simplex> = complex.nonempty().filter(|&s| index.is_critical(s)).collect();
    let mut counts = vec![0usize; complex.dim().max(0) as usize + 1];
    for s in &critical {
        counts[s.dim() as usize] += 1;
    }
    (critical, CriticalFVector::from_counts(&counts))
}

/// Critical simplices reachable from the critical simplex `start` along
/// generalised V-paths `τ_0, σ_1, τ_1, ..., σ_{k+1}` with `(σ_i, τ_i)`
/// matched and `σ_{i+1}` a nonempty proper face of `τ_i` other than `σ_i`.
pub fn generalized_vpath_reachable(
    complex: &SimplicialComplex,
    matching: &Matching,
    start: Simplex,
) -> Result<BTreeSet<Simplex>> {
    let index = verify_matching(complex, matching)?;
    if !complex.contains(start) || !index.is_critical(start) {
        return Err(Error::input(format!("{start:?} is not a critical simplex")));
    }
    if start.dim() < 1 {
        return Err(Error::input(
            "generalised V-paths start from a simplex of dimension >= 1",
        ));
    }
    Ok(reachable_from(&index, start))
}

pub(crate) fn reachable_from(index: &MatchIndex, start: Simplex) -> BTreeSet<Simplex> {
    let mut reached = BTreeSet::new();
    let mut visited: HashSet<Simplex> = HashSet::from([start]);
    let mut stack = vec![(start, Simplex::EMPTY)];
    while let Some((tau, came_from)) = stack.pop() {
        let bits = tau.bits();
        // Proper nonempty submasks of tau.
        let mut sub = (bits - 1) & bits;
        while sub != 0 {
            let sigma = Simplex::from_bits(sub);
            if sigma != came_from {
                if index.is_critical(sigma) {
                    reached.insert(sigma);
                } else if let Some(next) = index.up(sigma) {
                    if visited.insert(next) {
                        stack.push((next, sigma));
                    }
                }
            }
            sub = (sub - 1) & bits;
        }
    }
    reached
}

//! Critical f-vectors without building any complex: the single-step count
//! recursion over induced subgraphs, and the closed recurrences for grid
//! specs.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::GridSpec;
use crate::graph::{Graph, VertexSet};
use crate::matching::CriticalFVector;
use crate::morse::{choose_step, validate_grid_labels, Driver, Step};

/// Critical f-vector of the recursive construction, counted through the
/// single-step formulas with the [`Driver::Auto`] vertex choice:
///
/// * `f_0 = 1 + k` with `k` the number of universal vertices,
/// * `f_1 = Σ_u f_0(G - N[u]) - (|N(v)| - k)`,
/// * `f_t = Σ_u f_{t-1}(G - N[u])` for `t >= 2`.
pub fn critical_fvector_recursive(graph: &Graph) -> Result<CriticalFVector> {
    critical_fvector_with(graph, Driver::Auto)
}

/// As [`critical_fvector_recursive`], with the vertex choice of `driver`.
pub fn critical_fvector_with(graph: &Graph, driver: Driver) -> Result<CriticalFVector> {
    let grid = match driver {
        Driver::Grid => {
            let spec = GridSpec::from_labels(graph)?;
            validate_grid_labels(graph, &spec)?;
            Some(spec)
        }
        Driver::Chordal if !crate::chordal::is_chordal(graph) => {
            return Err(Error::input("graph is not chordal"));
        }
        _ => None,
    };
    let mut counter = Counter {
        graph,
        driver,
        grid,
        memo: HashMap::new(),
    };
    counter.count(&graph.vertices())
}

struct Counter<'g> {
    graph: &'g Graph,
    driver: Driver,
    grid: Option<GridSpec>,
    memo: HashMap<VertexSet, CriticalFVector>,
}

impl Counter<'_> {
    fn count(&mut self, within: &VertexSet) -> Result<CriticalFVector> {
        if let Some(done) = self.memo.get(within) {
            return Ok(done.clone());
        }
        let counts = match choose_step(self.graph, within, self.driver, self.grid.as_ref())? {
            Step::Empty => CriticalFVector::default(),
            Step::Isolated { .. } => CriticalFVector::from_counts(&[1]),
            Step::Complete => CriticalFVector::from_counts(&[within.len()]),
            Step::Extend {
                neighbors,
                universal,
                subproblems,
                ..
            } => {
                let mut subs = Vec::with_capacity(subproblems.len());
                for (_, sub) in &subproblems {
                    if let Some(sub) = sub {
                        subs.push(self.count(sub)?);
                    }
                }
                single_step_counts(neighbors.len(), universal, &subs)?
            }
        };
        self.memo.insert(within.clone(), counts.clone());
        Ok(counts)
    }
}

/// The single elimination-step counts from the critical f-vectors of the
/// sub-matchings of the non-universal neighbours.
pub fn single_step_counts(
    neighbor_count: usize,
    universal: usize,
    subs: &[CriticalFVector],
) -> Result<CriticalFVector> {
    let top = subs.iter().map(CriticalFVector::len).max().unwrap_or(0);
    let mut counts = vec![BigUint::from(1 + universal)];
    let zeros: BigUint = subs.iter().map(|f| f.get(0)).sum();
    let paired = BigUint::from(neighbor_count - universal);
    if zeros < paired {
        return Err(Error::Verification(format!(
            "{zeros} critical vertices below cannot absorb {paired} neighbours"
        )));
    }
    counts.push(zeros - paired);
    for t in 2..=top {
        counts.push(subs.iter().map(|f| f.get(t - 1)).sum());
    }
    Ok(CriticalFVector::new(counts))
}

/// `c[i][j][ℓ]`: critical `ℓ`-simplices of the sub-grid `G_{i,j}` on rows
/// `0..=i` and columns `j..=n`, for `0 <= i < m` and `1 <= j <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCountTable {
    m: usize,
    n: usize,
    /// Indexed `[i][j - 1][ℓ]`; `c[i][j - 1]` has length `min(i, n - j) + 1`.
    c: Vec<Vec<Vec<BigUint>>>,
}

impl GridCountTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c_{i,j}^{(ℓ)}`, or `None` outside the table.
    pub fn get(&self, i: usize, j: usize, l: usize) -> Option<&BigUint> {
        if j == 0 {
            return None;
        }
        self.c.get(i)?.get(j - 1)?.get(l)
    }

    /// `c_{i,j}^{(0..=d_{i,j})}`.
    pub fn entry(&self, i: usize, j: usize) -> Option<&[BigUint]> {
        if j == 0 {
            return None;
        }
        self.c.get(i)?.get(j - 1).map(Vec::as_slice)
    }

    fn at(&self, i: usize, j: usize, l: usize) -> &BigUint {
        self.get(i, j, l)
            .unwrap_or_else(|| panic!("c[{i}][{j}][{l}] referenced outside the table"))
    }

    /// `(i, j, c_{i,j})` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[BigUint])> {
        self.c
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i, j + 1, c.as_slice())))
    }
}

#[derive(Serialize)]
struct TableEntry {
    i: usize,
    j: usize,
    c: CriticalFVector,
}

impl Serialize for GridCountTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries().map(|(i, j, c)| TableEntry {
            i,
            j,
            c: CriticalFVector::new(c.to_vec()),
        }))
    }
}

fn delta(a: usize, b: usize) -> usize {
    usize::from(a == b)
}

fn size(spec: &GridSpec, i: usize, j: usize) -> BigUint {
    BigUint::from(spec.size(i, j))
}

/// `(c - δ_{ℓ-1,0})`: drops the one critical vertex consumed by `x_u`.
fn reduced(c: &BigUint, l: usize) -> BigUint {
    if l == 1 {
        c - BigUint::one()
    } else {
        c.clone()
    }
}

/// Fills `c_{i,j}^{(ℓ)}` by the grid recurrences.
pub fn grid_count_table(spec: &GridSpec) -> Result<GridCountTable> {
    let (m, n) = (spec.m(), spec.n());
    if m == 0 || n == 0 {
        return Err(Error::input("the count table needs m >= 1 and n >= 1"));
    }
    let mut table = GridCountTable {
        m,
        n,
        c: vec![Vec::with_capacity(n); m],
    };
    // Entries at (i, j) only reference rows i - 1 and below.
    for i in 0..m {
        for j in 1..=n {
            let d = i.min(n - j);
            let mut c = Vec::with_capacity(d + 1);
            c.push(if i == 0 {
                (j..=n).map(|s| size(spec, 0, s)).sum()
            } else if j == n {
                (0..=i).map(|r| size(spec, r, n)).sum()
            } else {
                BigUint::from(1 + spec.size(0, j) + spec.size(i, n))
            });
            for l in 1..=d {
                let mut total = BigUint::zero();
                for r in l..=i {
                    let weight = BigUint::from(spec.size(r, j) - delta(r, i));
                    total += weight * reduced(table.at(r - 1, j + 1, l - 1), l);
                }
                if l < n - j {
                    for s in j + 1..=n - l {
                        total += size(spec, i, s) * reduced(table.at(i - 1, s + 1, l - 1), l);
                    }
                }
                c.push(total);
            }
            table.c[i].push(c);
        }
    }
    Ok(table)
}

/// Critical f-vector of the grid construction on `I(grid_graph(spec))`,
/// from the count table.
pub fn grid_critical_fvector(spec: &GridSpec) -> Result<CriticalFVector> {
    let (m, n) = (spec.m(), spec.n());
    if m == 0 {
        return Ok(CriticalFVector::new(vec![(0..=n).map(|s| size(spec, 0, s)).sum()]));
    }
    if n == 0 {
        return Ok(CriticalFVector::new(vec![(0..=m).map(|r| size(spec, r, 0)).sum()]));
    }
    let table = grid_count_table(spec)?;
    let d = m.min(n);
    let mut f = vec![BigUint::from(1 + spec.size(0, 0) + spec.size(m, n))];
    for t in 1..=d {
        let mut total = BigUint::zero();
        for r in t..=m {
            let weight = BigUint::from(spec.size(r, 0) - delta(r, m));
            total += weight * reduced(table.at(r - 1, 1, t - 1), t);
        }
        // At the top dimension the second sum only appears when m < n.
        if t < d || m < n {
            for s in 1..=n - t {
                total += size(spec, m, s) * reduced(table.at(m - 1, s + 1, t - 1), t);
            }
        }
        f.push(total);
    }
    Ok(CriticalFVector::new(f))
}

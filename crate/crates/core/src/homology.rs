//! Ground truth for the constructions: integer simplicial homology through
//! Smith normal form, GF(2) Betti numbers, and exhaustive optimal acyclic
//! matchings on tiny complexes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{alternating_sum, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Largest complex (simplex count, empty simplex included) accepted by the
/// homology routines.
pub const HOMOLOGY_SIMPLEX_LIMIT: usize = 50_000;

/// Largest number of nonempty simplices for the exhaustive matching search.
pub const BRUTEFORCE_SIMPLEX_LIMIT: usize = 14;

/// Unreduced integer homology: ranks and torsion-freeness per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion_free: Vec<bool>,
}

impl HomologyProfile {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion_free.iter().all(|&t| t)
    }

    pub fn total_betti(&self) -> usize {
        self.betti.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(self.betti.iter().map(|&b| b as i64))
    }
}

/// Boundary map `C_d -> C_{d-1}` as sparse columns. Row and column indices
/// follow the canonical order of the `(d-1)`- and `d`-simplices; the face
/// dropping the `i`-th smallest vertex carries sign `(-1)^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns[col].iter().find(|(r, _)| *r == row).map_or(0, |(_, v)| *v)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0; self.cols]; self.rows];
        for (c, column) in self.columns.iter().enumerate() {
            for &(r, v) in column {
                dense[r][c] = v;
            }
        }
        dense
    }

    /// `self * other`, densely.
    pub fn compose(&self, other: &BoundaryMatrix) -> Vec<Vec<i64>> {
        let a = self.to_dense();
        let b = other.to_dense();
        (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| (0..self.cols).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }
}

pub fn boundary_matrix(complex: &SimplicialComplex, d: isize) -> Result<BoundaryMatrix> {
    if d < 1 || d > complex.dim() {
        return Err(Error::input(format!(
            "boundary dimension {d} outside 1..={}",
            complex.dim()
        )));
    }
    let faces = complex.of_dim(d - 1);
    let row_of: HashMap<Simplex, usize> = faces.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let columns = complex
        .of_dim(d)
        .iter()
        .map(|sigma| {
            sigma
                .facets()
                .enumerate()
                .map(|(i, (_, face))| (row_of[&face], if i % 2 == 0 { 1 } else { -1 }))
                .collect()
        })
        .collect();
    Ok(BoundaryMatrix {
        rows: faces.len(),
        cols: complex.of_dim(d).len(),
        columns,
    })
}

fn check_size(complex: &SimplicialComplex) -> Result<()> {
    if complex.len() > HOMOLOGY_SIMPLEX_LIMIT {
        return Err(Error::Capacity {
            what: "homology simplex count",
            size: complex.len(),
            limit: HOMOLOGY_SIMPLEX_LIMIT,
        });
    }
    Ok(())
}

/// Nonzero Smith invariant factors (absolute values, unordered).
///
/// Unit pivots are eliminated on a sparse copy first, always taking the one
/// with the smallest Markowitz cost. Whatever remains has no unit entry and
/// goes through a dense Smith reduction over big integers.
pub fn invariant_factors(matrix: &BoundaryMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); matrix.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); matrix.cols];
    for (c, column) in matrix.columns.iter().enumerate() {
        for &(r, v) in column {
            if v != 0 {
                rows[r].insert(c, BigInt::from(v));
                col_rows[c].insert(r);
            }
        }
    }
    let mut factors = Vec::new();
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                if v.abs().is_one() {
                    let cost = (row.len() - 1) * (col_rows[c].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, r, c));
                    }
                }
            }
            if best.is_some_and(|(cost, _, _)| cost == 0) {
                break;
            }
        }
        let Some((_, pr, pc)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pr]);
        let unit = pivot_row[&pc].clone();
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let factor = &rows[r][&pc] * &unit;
            for (&c, v) in &pivot_row {
                let entry = rows[r].entry(c).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    col_rows[c].insert(r);
                }
            }
        }
        for &c in pivot_row.keys() {
            col_rows[c].remove(&pr);
        }
        factors.push(BigInt::one());
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..col_rows.len()).filter(|&c| !col_rows[c].is_empty()).collect();
    if !live_rows.is_empty() {
        let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
        for (i, &r) in live_rows.iter().enumerate() {
            for (c, v) in &rows[r] {
                dense[i][col_pos[c]] = v.clone();
            }
        }
        factors.extend(dense_smith_diagonal(dense));
    }
    factors
}

/// Smith normal form diagonal of a dense integer matrix, nonzero entries only.
#[allow(clippy::needless_range_loop)]
pub fn dense_smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        'pivot: loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return diagonal;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    for j in t..cols {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for i in t..rows {
                        let sub = &q * &a[i][t];
                        a[i][j] -= sub;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        // Fold row i into row t and reduce again.
                        for k in t..cols {
                            let add = a[i][k].clone();
                            a[t][k] += add;
                        }
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        diagonal.push(a[t][t].abs());
    }
    diagonal
}

/// Unreduced integer homology via Smith normal form.
pub fn homology_integer(complex: &SimplicialComplex) -> Result<HomologyProfile> {
    check_size(complex)?;
    let top = complex.dim();
    if top < 0 {
        return Ok(HomologyProfile::default());
    }
    let top = top as usize;
    // rank[d] and torsion[d] describe the boundary C_d -> C_{d-1}.
    let mut rank = vec![0usize; top + 2];
    let mut torsion = vec![false; top + 2];
    for d in 1..=top {
        let factors = invariant_factors(&boundary_matrix(complex, d as isize)?);
        rank[d] = factors.len();
        torsion[d] = factors.iter().any(|f| !f.is_one());
    }
    let f = complex.f_vector().0;
    Ok(HomologyProfile {
        betti: (0..=top).map(|d| f[d] - rank[d] - rank[d + 1]).collect(),
        torsion_free: (0..=top).map(|d| !torsion[d + 1]).collect(),
    })
}

/// Index of the highest set bit, i.e. the lowest nonzero row of a column.
fn lowest_set_bit(column: &[u64]) -> Option<usize> {
    let (i, w) = column.iter().enumerate().rev().find(|(_, w)| **w != 0)?;
    Some(i * 64 + 63 - w.leading_zeros() as usize)
}

fn rank_gf2(matrix: &BoundaryMatrix) -> usize {
    let words = matrix.rows.div_ceil(64);
    let mut columns: Vec<Vec<u64>> = matrix
        .columns
        .iter()
        .map(|column| {
            let mut bits = vec![0u64; words];
            for &(r, v) in column {
                if v % 2 != 0 {
                    bits[r / 64] ^= 1 << (r % 64);
                }
            }
            bits
        })
        .collect();
    // pivot row -> reduced column holding it
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0;
    for column in columns.iter_mut() {
        while let Some(low) = lowest_set_bit(column) {
            match pivots.get(&low) {
                Some(reducer) => {
                    for (w, r) in column.iter_mut().zip(reducer) {
                        *w ^= r;
                    }
                }
                None => {
                    pivots.insert(low, column.clone());
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Unreduced Betti numbers over the two-element field.
pub fn betti_gf2(complex: &SimplicialComplex) -> Result<Vec<usize>> {
    check_size(complex)?;
    let top = complex.dim();
    if top < 0 {
        return Ok(Vec::new());
    }
    let top = top as usize;
    let mut rank = vec![0usize; top + 2];
    for (d, r) in rank.iter_mut().enumerate().take(top + 1).skip(1) {
        *r = rank_gf2(&boundary_matrix(complex, d as isize)?);
    }
    let f = complex.f_vector().0;
    Ok((0..=top).map(|d| f[d] - rank[d] - rank[d + 1]).collect())
}

/// Fewest critical simplices over all acyclic matchings, by exhaustive
/// search. Pairs with the empty simplex never lower the count, so only
/// pairs between nonempty simplices are enumerated.
pub fn optimal_matching_bruteforce(complex: &SimplicialComplex) -> Result<usize> {
    let cells: Vec<Simplex> = complex.nonempty().collect();
    if cells.len() > BRUTEFORCE_SIMPLEX_LIMIT {
        return Err(Error::Capacity {
            what: "brute-force matching simplex count",
            size: cells.len(),
            limit: BRUTEFORCE_SIMPLEX_LIMIT,
        });
    }
    let position: HashMap<Simplex, usize> = cells.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let facets: Vec<Vec<usize>> = cells
        .iter()
        .map(|s| s.facets().filter_map(|(_, f)| position.get(&f).copied()).collect())
        .collect();
    let mut cofaces = vec![Vec::new(); cells.len()];
    for (b, fs) in facets.iter().enumerate() {
        for &a in fs {
            cofaces[a].push(b);
        }
    }
    let mut search = Search {
        facets: &facets,
        cofaces: &cofaces,
        up: vec![None; cells.len()],
        used: vec![false; cells.len()],
        best: 0,
    };
    search.run(0, 0);
    Ok(cells.len() - 2 * search.best)
}

struct Search<'a> {
    facets: &'a [Vec<usize>],
    cofaces: &'a [Vec<usize>],
    up: Vec<Option<usize>>,
    used: Vec<bool>,
    best: usize,
}

impl Search<'_> {
    fn run(&mut self, next: usize, pairs: usize) {
        self.best = self.best.max(pairs);
        let free = (next..self.used.len()).filter(|&i| !self.used[i]).count();
        if pairs + free / 2 <= self.best {
            return;
        }
        let Some(alpha) = (next..self.used.len()).find(|&i| !self.used[i]) else {
            return;
        };
        self.used[alpha] = true;
        for k in 0..self.cofaces[alpha].len() {
            let beta = self.cofaces[alpha][k];
            if self.used[beta] {
                continue;
            }
            self.used[beta] = true;
            self.up[alpha] = Some(beta);
            if !self.closes_cycle(alpha) {
                self.run(alpha + 1, pairs + 1);
            }
            self.up[alpha] = None;
            self.used[beta] = false;
        }
        // alpha stays unmatched: all of its facets come earlier and are decided.
        self.run(alpha + 1, pairs);
        self.used[alpha] = false;
    }

    /// Whether the pair just added at `start` closes a V-path cycle.
    fn closes_cycle(&self, start: usize) -> bool {
        let mut stack = vec![start];
        let mut seen = vec![false; self.up.len()];
        while let Some(alpha) = stack.pop() {
            let beta = self.up[alpha].expect("matched");
            for &face in &self.facets[beta] {
                if face == alpha || self.up[face].is_none() {
                    continue;
                }
                if face == start {
                    return true;
                }
                if !seen[face] {
                    seen[face] = true;
                    stack.push(face);
                }
            }
        }
        false
    }
}

//! Corpora and independent checks shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use indmorse::complex::{Simplex, SimplicialComplex};
use indmorse::generators::{random_chordal, GridSpec};
use indmorse::graph::Graph;
use indmorse::matching::Matching;
use indmorse::morse::{MorseBuilder, NodeRecord, Step};

/// Every spec with `m, n <= max_mn` and cell sizes in `1..=max_size`.
pub fn grid_specs(max_mn: usize, max_size: usize) -> Vec<GridSpec> {
    let mut specs = Vec::new();
    for m in 0..=max_mn {
        for n in 0..=max_mn {
            let cells = (m + 1) * (n + 1);
            let mut sizes = vec![1; cells];
            loop {
                specs.push(GridSpec::from_row_major(m, n, &sizes).unwrap());
                // odometer over the sizes
                let Some(k) = sizes.iter().position(|&s| s < max_size) else {
                    break;
                };
                sizes[k] += 1;
                sizes[..k].fill(1);
            }
        }
    }
    specs
}

/// Seeded random chordal graphs: `n` cycles through `1..=14` and the extra
/// density through six levels.
pub fn chordal_corpus(count: u64) -> Vec<(u64, Graph)> {
    const DENSITIES: [f64; 6] = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
    (0..count)
        .map(|seed| {
            let n = 1 + (seed % 14) as usize;
            let density = DENSITIES[((seed / 14) % 6) as usize];
            (seed, random_chordal(n, density, seed).unwrap())
        })
        .collect()
}

/// Acyclicity straight from the definition: orient every Hasse edge
/// downwards, flip the matched ones, and run Kahn's algorithm.
pub fn hasse_acyclic(complex: &SimplicialComplex, matching: &Matching) -> bool {
    let matched: BTreeSet<(Simplex, Simplex)> = matching.pairs().iter().copied().collect();
    let simplices: Vec<Simplex> = complex.simplices().collect();
    let id: HashMap<Simplex, usize> = simplices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut out = vec![Vec::new(); simplices.len()];
    let mut indegree = vec![0usize; simplices.len()];
    for &tau in &simplices {
        for v in tau.vertices() {
            let sigma = tau.without(v);
            let (from, to) = if matched.contains(&(sigma, tau)) {
                (sigma, tau)
            } else {
                (tau, sigma)
            };
            out[id[&from]].push(id[&to]);
            indegree[id[&to]] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..simplices.len()).filter(|&i| indegree[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = ready.pop() {
        seen += 1;
        for &j in &out[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.push(j);
            }
        }
    }
    seen == simplices.len()
}

fn set(simplices: impl IntoIterator<Item = Simplex>) -> BTreeSet<Simplex> {
    simplices.into_iter().collect()
}

fn small(counts: &[num_bigint::BigUint], d: usize) -> usize {
    counts.get(d).map_or(0, |c| c.try_into().unwrap())
}

/// Checks one recursion node against the elimination-step formulas, the
/// explicit description of its critical simplices, and the three V-paths
/// `{u}, {u,x_u}, {x_u}, {x_u,v}, {v}` for every non-universal neighbour.
pub fn check_node(builder: &MorseBuilder<'_>, record: &NodeRecord) -> Result<(), String> {
    let node = builder.node(&record.vertices).ok_or("node missing from memo")?;
    let critical = set(node.critical().iter().copied());
    let f = node.critical_f().counts();
    match &record.step {
        Step::Empty => {
            if !critical.is_empty() {
                return Err("empty node has critical simplices".into());
            }
        }
        Step::Isolated { v } => {
            if critical != set([Simplex::singleton(*v)]) {
                return Err(format!("cone on {v} has critical set {critical:?}"));
            }
        }
        Step::Complete => {
            if critical != set(record.vertices.iter().map(Simplex::singleton)) {
                return Err(format!("complete node has critical set {critical:?}"));
            }
        }
        Step::Extend {
            v,
            neighbors,
            universal,
            subproblems,
        } => {
            let v = *v;
            let pairs: BTreeSet<(Simplex, Simplex)> = node.matching().pairs().iter().copied().collect();
            let mut expected = set([Simplex::singleton(v)]);
            let mut zeros_below = 0;
            let mut top = 0;
            for (u, sub) in subproblems {
                let u = *u;
                let Some(sub) = sub else {
                    expected.insert(Simplex::singleton(u));
                    continue;
                };
                let sub = builder.node(sub).ok_or("sub-node missing")?;
                let fs = sub.critical_f().counts();
                zeros_below += small(fs, 0);
                top = top.max(fs.len());
                let up = pairs
                    .iter()
                    .find(|(a, _)| *a == Simplex::singleton(u))
                    .ok_or(format!("{{{u}}} is unmatched"))?
                    .1;
                let x = up.without(u);
                if !sub.critical_zeros().any(|z| z == x) {
                    return Err(format!("partner {x:?} of {u} is not critical below"));
                }
                let xv = x.with(v);
                if !pairs.contains(&(x, xv)) || !pairs.contains(&(Simplex::EMPTY, Simplex::singleton(v))) {
                    return Err(format!("V-path {u} -> {x:?} -> {v} is broken"));
                }
                // Critical cells below, lifted by u, except the partner of {u}.
                expected.extend(
                    sub.critical()
                        .iter()
                        .filter(|&&alpha| alpha != x)
                        .map(|alpha| alpha.with(u)),
                );
            }
            if critical != expected {
                return Err(format!("critical set {critical:?}, expected {expected:?}"));
            }
            let k = *universal;
            if small(f, 0) != 1 + k {
                return Err(format!("f_0 = {} but k = {k}", small(f, 0)));
            }
            if small(f, 1) + (neighbors.len() - k) != zeros_below {
                return Err(format!("f_1 = {} breaks the count", small(f, 1)));
            }
            for t in 2..=top.max(f.len()) {
                let sum: usize = subproblems
                    .iter()
                    .filter_map(|(_, s)| s.as_ref())
                    .map(|s| small(builder.node(s).unwrap().critical_f().counts(), t - 1))
                    .sum();
                if small(f, t) != sum {
                    return Err(format!("f_{t} = {} but the sum below is {sum}", small(f, t)));
                }
            }
        }
    }
    Ok(())
}

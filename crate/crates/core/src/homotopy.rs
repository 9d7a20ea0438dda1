//! Homotopy type from the critical data of an acyclic matching, and the
//! sanity checks tying it to the domination number and to homology.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::HomologyProfile;
use crate::matching::{critical_from_index, reachable_from, verify_matching, CriticalFVector, Matching};
use crate::morse::ConstructionResult;

/// Serialises as `"collapsible"`, `{"wedge": [c0, c1, ...]}` or
/// `{"unclassified": reason}`; wedge counts are sphere counts per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomotopyType {
    Collapsible,
    #[serde(rename = "wedge")]
    WedgeOfSpheres(CriticalFVector),
    Unclassified(String),
}

impl HomotopyType {
    /// The type forced by `critical` when the critical cells are all
    /// maximal except possibly one vertex: a point, or a wedge with
    /// `f_0 - 1` zero-spheres and `f_d` spheres of each dimension `d >= 1`.
    pub fn from_critical(critical: &CriticalFVector) -> HomotopyType {
        let mut counts = critical.counts().to_vec();
        match counts.first_mut() {
            Some(zeros) if !zeros.is_zero() => *zeros -= BigUint::one(),
            _ => return HomotopyType::Unclassified("no critical vertex".into()),
        }
        let wedge = CriticalFVector::new(counts);
        if wedge.is_empty() {
            HomotopyType::Collapsible
        } else {
            HomotopyType::WedgeOfSpheres(wedge)
        }
    }

    pub fn is_classified(&self) -> bool {
        !matches!(self, HomotopyType::Unclassified(_))
    }

    /// Smallest dimension carrying a sphere.
    pub fn min_sphere_dim(&self) -> Option<usize> {
        match self {
            HomotopyType::WedgeOfSpheres(counts) => counts.counts().iter().position(|c| !c.is_zero()),
            _ => None,
        }
    }
}

/// Which criterion produced a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    MaximalCritical,
    SingleDimension,
    VPathReachability,
    None,
}

pub fn classify(complex: &SimplicialComplex, result: &ConstructionResult) -> Result<HomotopyType> {
    classify_matching(complex, result.matching())
}

pub fn classify_matching(complex: &SimplicialComplex, matching: &Matching) -> Result<HomotopyType> {
    Ok(classify_with_criterion(complex, matching)?.0)
}

/// Tries the criteria cheapest first: every critical cell maximal except
/// possibly one vertex; critical cells in one positive dimension plus a
/// single vertex; then generalised V-path reachability.
pub fn classify_with_criterion(complex: &SimplicialComplex, matching: &Matching) -> Result<(HomotopyType, Criterion)> {
    let index = verify_matching(complex, matching).map_err(|e| Error::Input(e.to_string()))?;
    if let Some(cycle) = crate::matching::find_v_cycle(complex, matching)? {
        return Err(Error::Input(format!(
            "matching has a V-path cycle through {:?}",
            cycle[0]
        )));
    }
    let (critical, f) = critical_from_index(complex, &index);
    if critical.is_empty() {
        return Ok((
            HomotopyType::Unclassified("no critical simplices".into()),
            Criterion::None,
        ));
    }

    let mut non_maximal = critical.iter().filter(|&&s| !complex.is_maximal_unchecked(s));
    let maximal_ok = match (non_maximal.next(), non_maximal.next()) {
        (None, _) => true,
        (Some(s), None) => s.dim() == 0,
        _ => false,
    };
    if maximal_ok {
        return Ok((HomotopyType::from_critical(&f), Criterion::MaximalCritical));
    }

    let zeros: Vec<Simplex> = critical.iter().copied().filter(|s| s.dim() == 0).collect();
    if zeros.len() == 1 {
        let positive = f.counts()[1..].iter().filter(|c| !c.is_zero()).count();
        if positive <= 1 {
            return Ok((HomotopyType::from_critical(&f), Criterion::SingleDimension));
        }
        let allowed = zeros[0];
        let isolated = critical
            .iter()
            .filter(|s| s.dim() >= 1)
            .all(|&s| reachable_from(&index, s).into_iter().all(|r| r == s || r == allowed));
        if isolated {
            return Ok((HomotopyType::from_critical(&f), Criterion::VPathReachability));
        }
    }
    Ok((
        HomotopyType::Unclassified("critical simplices are neither maximal nor separated by V-paths".into()),
        Criterion::None,
    ))
}

/// Every sphere has dimension at least `γ(G) - 1`. Computes `γ` by
/// exhaustive search, so the graph size is gated.
pub fn check_domination_bound(graph: &Graph, homotopy: &HomotopyType) -> Result<bool> {
    match homotopy {
        HomotopyType::Collapsible => Ok(true),
        HomotopyType::WedgeOfSpheres(_) => {
            let gamma = graph.domination_number()?;
            let lowest = homotopy.min_sphere_dim().unwrap_or(usize::MAX);
            Ok(lowest + 1 >= gamma)
        }
        HomotopyType::Unclassified(_) => Err(Error::input("cannot bound an unclassified homotopy type")),
    }
}

/// Whether the homology is that of the claimed point or wedge: free, with
/// `β_0 = c_0 + 1` and `β_d = c_d` for `d >= 1`.
pub fn consistency_with_homology(homotopy: &HomotopyType, profile: &HomologyProfile) -> bool {
    if !profile.is_torsion_free() {
        return false;
    }
    let expected: Vec<BigUint> = match homotopy {
        HomotopyType::Collapsible => vec![BigUint::one()],
        HomotopyType::WedgeOfSpheres(counts) => {
            let mut betti = counts.counts().to_vec();
            betti[0] += BigUint::one();
            betti
        }
        HomotopyType::Unclassified(_) => return false,
    };
    let mut actual: Vec<BigUint> = profile.betti.iter().map(|&b| BigUint::from(b)).collect();
    while actual.last().is_some_and(Zero::is_zero) {
        actual.pop();
    }
    actual == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::generators::{grid_graph, power_graph_spec, standard_graph, GridSpec, StandardKind};
    use crate::homology::homology_integer;
    use crate::morse::{build_auto, build_grid_matching};

    fn wedge(counts: &[usize]) -> HomotopyType {
        HomotopyType::WedgeOfSpheres(CriticalFVector::from_counts(counts))
    }

    fn classify_graph(g: &Graph) -> HomotopyType {
        let x = independence_complex(g).unwrap();
        classify(&x, &build_auto(g).unwrap()).unwrap()
    }

    #[test]
    fn named_types() {
        let path = |n| standard_graph(StandardKind::Path, n).unwrap();
        assert_eq!(classify_graph(&path(4)), HomotopyType::Collapsible);
        assert_eq!(classify_graph(&path(5)), wedge(&[0, 1]));
        let spec = GridSpec::uniform(1, 1, 1).unwrap();
        let g = grid_graph(&spec);
        let x = independence_complex(&g).unwrap();
        assert_eq!(
            classify(&x, &build_grid_matching(&g, &spec).unwrap()).unwrap(),
            wedge(&[2])
        );
        let z6 = grid_graph(&power_graph_spec(2, 3, 1, 1).unwrap());
        assert_eq!(classify_graph(&z6), wedge(&[3]));
    }

    #[test]
    fn json_shape() {
        assert_eq!(
            serde_json::to_string(&HomotopyType::Collapsible).unwrap(),
            "\"collapsible\""
        );
        assert_eq!(serde_json::to_string(&wedge(&[0, 1])).unwrap(), "{\"wedge\":[0,1]}");
        assert_eq!(
            serde_json::to_string(&HomotopyType::Unclassified("x".into())).unwrap(),
            "{\"unclassified\":\"x\"}"
        );
        let back: HomotopyType = serde_json::from_str("{\"wedge\":[3]}").unwrap();
        assert_eq!(back, wedge(&[3]));
    }

    #[test]
    fn empty_matching_on_a_square_falls_through() {
        // I(2K2) is a hollow square; with no pairs every simplex is critical
        // and the edges are maximal but there are four critical vertices.
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let x = independence_complex(&g).unwrap();
        let (t, c) = classify_with_criterion(&x, &Matching::default()).unwrap();
        assert!(!t.is_classified());
        assert_eq!(c, Criterion::None);
    }

    #[test]
    fn pentagon_matchings() {
        let c5 = standard_graph(StandardKind::Cycle, 5).unwrap();
        let x = independence_complex(&c5).unwrap();
        let s = |v: &[usize]| Simplex::from_vertices(v.iter().copied()).unwrap();
        // Pentagon 0-2-4-1-3-0; collapse a path of four edges onto vertex 0.
        let m = Matching::new(vec![
            (s(&[2]), s(&[0, 2])),
            (s(&[4]), s(&[2, 4])),
            (s(&[1]), s(&[1, 4])),
            (s(&[3]), s(&[1, 3])),
        ]);
        let (t, c) = classify_with_criterion(&x, &m).unwrap();
        assert_eq!(t, wedge(&[0, 1]));
        assert_eq!(c, Criterion::MaximalCritical);
        let (t, _) = classify_with_criterion(&x, &Matching::new(vec![(s(&[2]), s(&[0, 2]))])).unwrap();
        assert!(!t.is_classified());
    }

    #[test]
    fn domination_and_homology() {
        let p5 = standard_graph(StandardKind::Path, 5).unwrap();
        assert!(check_domination_bound(&p5, &wedge(&[0, 1])).unwrap());
        assert!(!check_domination_bound(&p5, &wedge(&[1])).unwrap());
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        assert!(check_domination_bound(&k3, &wedge(&[2])).unwrap());
        assert!(check_domination_bound(&p5, &HomotopyType::Collapsible).unwrap());
        assert!(check_domination_bound(&p5, &HomotopyType::Unclassified(String::new())).is_err());

        let profile = |b: &[usize]| HomologyProfile {
            betti: b.to_vec(),
            torsion_free: vec![true; b.len()],
        };
        assert!(consistency_with_homology(&HomotopyType::Collapsible, &profile(&[1])));
        assert!(consistency_with_homology(&HomotopyType::Collapsible, &profile(&[1, 0])));
        assert!(consistency_with_homology(&wedge(&[0, 1]), &profile(&[1, 1])));
        assert!(consistency_with_homology(&wedge(&[2]), &profile(&[3])));
        assert!(!consistency_with_homology(&wedge(&[2]), &profile(&[2])));
        let mut torsion = profile(&[1, 1]);
        torsion.torsion_free[0] = false;
        assert!(!consistency_with_homology(&wedge(&[0, 1]), &torsion));
        let c5 =
            homology_integer(&independence_complex(&standard_graph(StandardKind::Cycle, 5).unwrap()).unwrap()).unwrap();
        assert!(consistency_with_homology(&wedge(&[0, 1]), &c5));
    }
}

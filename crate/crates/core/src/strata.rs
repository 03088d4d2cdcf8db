//! Stratified defect formula. Strata of Z = Sing(X ∩ Q) carry Milnor-fiber
//! data μ_V and complex-link Euler characteristics; the defect is
//! DED(X) = Σ_V (-1)^{dim(X∩Q) - dim V} α_V GED(V̄).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StrataError {
    #[error("inconsistent stratum poset: {0}")]
    PosetInconsistent(String),
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("malformed strata specification: {0}")]
    Parse(String),
}

fn inconsistent(msg: impl Into<String>) -> StrataError {
    StrataError::PosetInconsistent(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub name: String,
    pub dim: u32,
    /// GED of the closure of the stratum.
    pub ged_closure: i64,
    /// Euler characteristic of the reduced cohomology of the Milnor fiber.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<i64>,
    /// Milnor number of the transversal isolated singularity; converted
    /// with [`mu_from_transversal`] when `mu` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_transversal: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Link {
    pub lower: String,
    pub upper: String,
    /// χ_c of the complex link of the pair.
    pub chi_c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerObstruction {
    /// Stratum containing the evaluation point.
    pub at: String,
    /// Stratum whose closure's Euler obstruction is evaluated.
    pub closure_of: String,
    pub value: i64,
}

/// Strata specification as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumPoset {
    /// dim(X ∩ Q).
    pub ambient_hypersurface_dim: u32,
    pub strata: Vec<Stratum>,
    /// Pairs `[W, V]` meaning W < V (W lies in the closure of V).
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(default)]
    pub links: Vec<Link>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub euler_obstructions: Vec<EulerObstruction>,
    /// GED(V̄ ∩ L) for a generic linear section L, if known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sliced_ged: Option<BTreeMap<String, i64>>,
}

/// a_{W,V} = Eu_{V̄}(w) and its inverse b_{W,V}, indexed by `names`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionMatrices {
    pub names: Vec<String>,
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
}

/// μ_V = (-1)^{dim(X∩Q) - dim V} μ_transversal.
pub fn mu_from_transversal(mu_transversal: i64, ambient_hypersurface_dim: u32, stratum_dim: u32) -> i64 {
    if (ambient_hypersurface_dim as i64 - stratum_dim as i64) % 2 == 0 {
        mu_transversal
    } else {
        -mu_transversal
    }
}

/// Σ μ_x over isolated singular points.
pub fn ded_isolated(mus: &[i64]) -> i64 {
    mus.iter().sum()
}

/// μ · GED(Z) for an equisingular Z.
pub fn ded_equisingular(mu: i64, ged_z: i64) -> i64 {
    mu * ged_z
}

fn checked_sum(mut terms: impl Iterator<Item = Option<i64>>, what: &'static str) -> Result<i64, StrataError> {
    terms
        .try_fold(0i64, |acc, t| t.and_then(|t| acc.checked_add(t)))
        .ok_or(StrataError::Overflow(what))
}

/// Inverse of a unit upper-triangular integer matrix.
fn unit_upper_inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, StrataError> {
    let n = m.len();
    let mut inv = vec![vec![0i64; n]; n];
    #[allow(clippy::needless_range_loop)]
    for j in 0..n {
        inv[j][j] = 1;
        for i in (0..j).rev() {
            // (M X)_{ij} = 0 for i < j: X_{ij} = -Σ_{k>i} M_{ik} X_{kj}
            let s = checked_sum(
                (i + 1..=j).map(|k| m[i][k].checked_mul(inv[k][j])),
                "triangular inverse",
            )?;
            inv[i][j] = s.checked_neg().ok_or(StrataError::Overflow("triangular inverse"))?;
        }
    }
    Ok(inv)
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, StrataError> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| checked_sum((0..n).map(|k| a[i][k].checked_mul(b[k][j])), "matrix product"))
                .collect()
        })
        .collect()
}

impl StratumPoset {
    pub fn from_json(text: &str) -> Result<Self, StrataError> {
        let poset: StratumPoset = serde_json::from_str(text).map_err(|e| StrataError::Parse(e.to_string()))?;
        poset.validate()?;
        Ok(poset)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("poset serializes")
    }

    /// Indices sorted by (dim, name), a linear extension of the order.
    fn sorted(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.strata.len()).collect();
        idx.sort_by(|&i, &j| {
            (self.strata[i].dim, &self.strata[i].name).cmp(&(self.strata[j].dim, &self.strata[j].name))
        });
        idx
    }

    /// Strata names in matrix order.
    pub fn names(&self) -> Vec<String> {
        self.sorted().into_iter().map(|i| self.strata[i].name.clone()).collect()
    }

    fn position(&self, names: &[String], name: &str) -> Result<usize, StrataError> {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| inconsistent(format!("unknown stratum `{name}`")))
    }

    /// Transitive closure of the order, as matrix-index pairs (lower, upper).
    fn comparable(&self, names: &[String]) -> Result<BTreeSet<(usize, usize)>, StrataError> {
        let mut pairs = BTreeSet::new();
        for (w, v) in &self.order {
            let (i, j) = (self.position(names, w)?, self.position(names, v)?);
            if i == j {
                return Err(inconsistent(format!("`{w}` < `{w}` is not irreflexive")));
            }
            pairs.insert((i, j));
        }
        loop {
            let extra: Vec<(usize, usize)> = pairs
                .iter()
                .flat_map(|&(a, b)| pairs.iter().filter(move |&&(c, _)| c == b).map(move |&(_, d)| (a, d)))
                .filter(|p| !pairs.contains(p))
                .collect();
            if extra.is_empty() {
                break;
            }
            pairs.extend(extra);
        }
        Ok(pairs)
    }

    /// Checks names, dimensions, μ data and link coverage.
    pub fn validate(&self) -> Result<(), StrataError> {
        let names = self.names();
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != names.len() {
            return Err(inconsistent("duplicate stratum names"));
        }
        let by_index = self.sorted();
        for s in &self.strata {
            if s.dim > self.ambient_hypersurface_dim {
                return Err(inconsistent(format!(
                    "stratum `{}` has dimension {} above dim(X∩Q) = {}",
                    s.name, s.dim, self.ambient_hypersurface_dim
                )));
            }
            match (s.mu, s.mu_transversal) {
                (None, None) => return Err(inconsistent(format!("stratum `{}` has no μ", s.name))),
                (Some(mu), Some(mt)) if mu != mu_from_transversal(mt, self.ambient_hypersurface_dim, s.dim) => {
                    return Err(inconsistent(format!(
                        "stratum `{}`: mu = {mu} disagrees with mu_transversal = {mt}",
                        s.name
                    )))
                }
                _ => {}
            }
        }
        let comparable = self.comparable(&names)?;
        for &(i, j) in &comparable {
            let (w, v) = (&self.strata[by_index[i]], &self.strata[by_index[j]]);
            if w.dim >= v.dim {
                return Err(inconsistent(format!(
                    "`{}` < `{}` but dim {} >= dim {}",
                    w.name, v.name, w.dim, v.dim
                )));
            }
        }
        let mut linked = BTreeSet::new();
        for link in &self.links {
            let pair = (self.position(&names, &link.lower)?, self.position(&names, &link.upper)?);
            if !comparable.contains(&pair) {
                return Err(inconsistent(format!(
                    "link given for incomparable pair ({}, {})",
                    link.lower, link.upper
                )));
            }
            if !linked.insert(pair) {
                return Err(inconsistent(format!("duplicate link ({}, {})", link.lower, link.upper)));
            }
        }
        let mut obstructed = BTreeSet::new();
        for eu in &self.euler_obstructions {
            let pair = (self.position(&names, &eu.at)?, self.position(&names, &eu.closure_of)?);
            if pair.0 == pair.1 {
                if eu.value != 1 {
                    return Err(inconsistent(format!("Eu of `{}` on itself must be 1", eu.at)));
                }
                continue;
            }
            if !comparable.contains(&pair) {
                return Err(inconsistent(format!(
                    "Euler obstruction given for incomparable pair ({}, {})",
                    eu.at, eu.closure_of
                )));
            }
            obstructed.insert(pair);
        }
        let links_complete = linked.len() == comparable.len();
        let eu_complete = obstructed.len() == comparable.len();
        if !links_complete && !eu_complete {
            return Err(inconsistent(
                "every comparable pair needs a complex link (or every pair an Euler obstruction)",
            ));
        }
        if !self.links.is_empty() && !links_complete {
            return Err(inconsistent("links missing for some comparable pairs"));
        }
        if !self.euler_obstructions.is_empty() && !eu_complete {
            return Err(inconsistent("Euler obstructions missing for some comparable pairs"));
        }
        if let Some(sliced) = &self.sliced_ged {
            for name in sliced.keys() {
                self.position(&names, name)?;
            }
        }
        Ok(())
    }

    /// μ_V per stratum, in matrix order.
    pub fn mus(&self) -> Vec<i64> {
        self.sorted()
            .into_iter()
            .map(|i| {
                let s = &self.strata[i];
                s.mu.unwrap_or_else(|| {
                    mu_from_transversal(s.mu_transversal.unwrap_or(0), self.ambient_hypersurface_dim, s.dim)
                })
            })
            .collect()
    }

    fn ged_closures(&self) -> Vec<i64> {
        self.sorted().into_iter().map(|i| self.strata[i].ged_closure).collect()
    }

    fn dims(&self) -> Vec<u32> {
        self.sorted().into_iter().map(|i| self.strata[i].dim).collect()
    }
}

fn b_from_link_data(poset: &StratumPoset, names: &[String]) -> Result<Vec<Vec<i64>>, StrataError> {
    let n = names.len();
    let mut b = vec![vec![0i64; n]; n];
    for (i, row) in b.iter_mut().enumerate() {
        row[i] = 1;
    }
    for link in &poset.links {
        let (i, j) = (poset.position(names, &link.lower)?, poset.position(names, &link.upper)?);
        b[i][j] = link.chi_c.checked_neg().ok_or(StrataError::Overflow("link"))?;
    }
    Ok(b)
}

fn a_from_eu_data(poset: &StratumPoset, names: &[String]) -> Result<Vec<Vec<i64>>, StrataError> {
    let n = names.len();
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1;
    }
    for eu in &poset.euler_obstructions {
        let (i, j) = (poset.position(names, &eu.at)?, poset.position(names, &eu.closure_of)?);
        a[i][j] = eu.value;
    }
    Ok(a)
}

/// B from the links (b_{W,V} = -χ_c(L_{W,V}), unit diagonal) and A = B⁻¹.
/// When only Euler obstructions are given, A comes from them and B = A⁻¹;
/// when both are given they must be inverse to each other.
pub fn b_from_links(poset: &StratumPoset) -> Result<TransitionMatrices, StrataError> {
    poset.validate()?;
    let names = poset.names();
    let has_links = !poset.links.is_empty() || poset.euler_obstructions.is_empty();
    let (a, b) = if has_links {
        let b = b_from_link_data(poset, &names)?;
        let a = unit_upper_inverse(&b)?;
        if !poset.euler_obstructions.is_empty() && a != a_from_eu_data(poset, &names)? {
            return Err(inconsistent(
                "Euler obstructions disagree with the inverse of the link matrix",
            ));
        }
        (a, b)
    } else {
        let a = a_from_eu_data(poset, &names)?;
        (a.clone(), unit_upper_inverse(&a)?)
    };
    Ok(TransitionMatrices { names, a, b })
}

impl TransitionMatrices {
    /// A·B, which must be the identity.
    pub fn product(&self) -> Result<Vec<Vec<i64>>, StrataError> {
        mat_mul(&self.a, &self.b)
    }
}

/// α_W = Σ_{V ≥ W} b_{W,V} μ_V, keyed by stratum name.
pub fn alpha_coefficients(poset: &StratumPoset) -> Result<BTreeMap<String, i64>, StrataError> {
    let m = b_from_links(poset)?;
    let alpha = alpha_vector(&m, &poset.mus())?;
    Ok(m.names.into_iter().zip(alpha).collect())
}

fn alpha_vector(m: &TransitionMatrices, mus: &[i64]) -> Result<Vec<i64>, StrataError> {
    (0..mus.len())
        .map(|w| checked_sum((0..mus.len()).map(|v| m.b[w][v].checked_mul(mus[v])), "alpha"))
        .collect()
}

/// Values of δ = Σ_V α_V Eu_{V̄} on each stratum; reproduces μ.
pub fn evaluate_delta(poset: &StratumPoset) -> Result<BTreeMap<String, i64>, StrataError> {
    let m = b_from_links(poset)?;
    let alpha = alpha_vector(&m, &poset.mus())?;
    let n = alpha.len();
    let values = (0..n)
        .map(|w| checked_sum((0..n).map(|v| m.a[w][v].checked_mul(alpha[v])), "delta"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(m.names.into_iter().zip(values).collect())
}

fn signed_sum(poset: &StratumPoset, geds: &[i64]) -> Result<i64, StrataError> {
    let m = b_from_links(poset)?;
    let alpha = alpha_vector(&m, &poset.mus())?;
    let dims = poset.dims();
    checked_sum(
        (0..alpha.len()).map(|v| {
            let term = alpha[v].checked_mul(geds[v])?;
            Some(mu_from_transversal(term, poset.ambient_hypersurface_dim, dims[v]))
        }),
        "defect",
    )
}

/// DED(X) = Σ_V (-1)^{dim(X∩Q) - dim V} α_V GED(V̄).
pub fn ded_from_strata(poset: &StratumPoset) -> Result<i64, StrataError> {
    signed_sum(poset, &poset.ged_closures())
}

/// The same sum with GED(V̄ ∩ L) for a generic linear section L. Strata
/// missing from `sliced` contribute GED 0 (L misses them).
pub fn ded_sliced(poset: &StratumPoset, sliced: &BTreeMap<String, i64>) -> Result<i64, StrataError> {
    let names = poset.names();
    for name in sliced.keys() {
        poset.position(&names, name)?;
    }
    let geds: Vec<i64> = names.iter().map(|n| sliced.get(n).copied().unwrap_or(0)).collect();
    signed_sum(poset, &geds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stratum(name: &str, dim: u32, ged: i64, mu: i64) -> Stratum {
        Stratum {
            name: name.into(),
            dim,
            ged_closure: ged,
            mu: Some(mu),
            mu_transversal: None,
        }
    }

    fn link(lower: &str, upper: &str, chi_c: i64) -> Link {
        Link {
            lower: lower.into(),
            upper: upper.into(),
            chi_c,
        }
    }

    fn quadric() -> StratumPoset {
        StratumPoset {
            ambient_hypersurface_dim: 1,
            strata: vec![stratum("S0", 1, 1, 1), stratum("P1", 0, 1, -1), stratum("P2", 0, 1, -1)],
            order: vec![("P1".into(), "S0".into()), ("P2".into(), "S0".into())],
            links: vec![link("P1", "S0", 1), link("P2", "S0", 1)],
            euler_obstructions: vec![],
            sliced_ged: None,
        }
    }

    fn points(amb: u32, mu: i64, k: usize) -> StratumPoset {
        StratumPoset {
            ambient_hypersurface_dim: amb,
            strata: (0..k).map(|i| stratum(&format!("p{i}"), 0, 1, mu)).collect(),
            order: vec![],
            links: vec![],
            euler_obstructions: vec![],
            sliced_ged: None,
        }
    }

    #[test]
    fn quadric_matrices() {
        let m = b_from_links(&quadric()).unwrap();
        assert_eq!(m.names, vec!["P1", "P2", "S0"]);
        assert_eq!(m.b, vec![vec![1, 0, -1], vec![0, 1, -1], vec![0, 0, 1]]);
        assert_eq!(m.a, vec![vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(m.product().unwrap(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn quadric_alpha_and_defect() {
        let alpha = alpha_coefficients(&quadric()).unwrap();
        assert_eq!(alpha["P1"], -2);
        assert_eq!(alpha["P2"], -2);
        assert_eq!(alpha["S0"], 1);
        assert_eq!(ded_from_strata(&quadric()).unwrap(), 5);
        let delta = evaluate_delta(&quadric()).unwrap();
        assert_eq!((delta["P1"], delta["P2"], delta["S0"]), (-1, -1, 1));
    }

    #[test]
    fn quadric_sliced() {
        let sliced: BTreeMap<String, i64> = [("S0".to_string(), 1)].into_iter().collect();
        assert_eq!(ded_sliced(&quadric(), &sliced).unwrap(), 1);
        let unchanged: BTreeMap<String, i64> =
            ["S0", "P1", "P2"].iter().map(|n| (n.to_string(), 1)).collect();
        assert_eq!(ded_sliced(&quadric(), &unchanged).unwrap(), 5);
        assert_eq!(ded_sliced(&points(1, 0, 0), &BTreeMap::new()).unwrap(), 0);
    }

    #[test]
    fn trivial_posets() {
        let single = points(1, 3, 1);
        assert_eq!(b_from_links(&single).unwrap().b, vec![vec![1]]);
        assert_eq!(alpha_coefficients(&single).unwrap()["p0"], 3);
        assert_eq!(ded_from_strata(&points(1, 0, 0)).unwrap(), 0);

        let mut chain = quadric();
        chain.strata.truncate(2);
        chain.order.truncate(1);
        chain.links = vec![link("P1", "S0", 0)];
        assert_eq!(b_from_links(&chain).unwrap().b, vec![vec![1, 0], vec![0, 1]]);

        let mut zero = quadric();
        zero.strata.iter_mut().for_each(|s| s.mu = Some(0));
        assert!(alpha_coefficients(&zero).unwrap().values().all(|&a| a == 0));
    }

    #[test]
    fn determinant_nodes() {
        assert_eq!(ded_from_strata(&points(2, 1, 4)).unwrap(), 4);
        // X∩Q is a curve: reduced Euler characteristic of a node's Milnor
        // fiber is -1 and the sign (-1)^{1-0} restores 4
        assert_eq!(ded_from_strata(&points(1, mu_from_transversal(1, 1, 0), 4)).unwrap(), 4);
        assert_eq!(ded_isolated(&[1, 1, 1, 1]), 4);
    }

    #[test]
    fn corollaries_as_special_cases() {
        for (mu_x, d) in [(1, 1), (2, 2), (3, 1), (5, 3)] {
            let p = points(d, mu_from_transversal(mu_x, d, 0), 1);
            assert_eq!(ded_from_strata(&p).unwrap(), ded_isolated(&[mu_x]));
        }
        let mut one = points(2, 0, 0);
        one.strata.push(stratum("Z", 2, 7, 3));
        assert_eq!(ded_from_strata(&one).unwrap(), ded_equisingular(3, 7));
    }

    #[test]
    fn simple_formulas() {
        assert_eq!(ded_isolated(&[]), 0);
        assert_eq!(ded_isolated(&[2, 3]), 5);
        assert_eq!(ded_equisingular(1, 9), 9);
        assert_eq!(ded_equisingular(0, 9), 0);
        assert_eq!(ded_equisingular(2, 3), 6);
        assert_eq!(mu_from_transversal(1, 2, 0), 1);
        assert_eq!(mu_from_transversal(1, 1, 0), -1);
        assert_eq!(mu_from_transversal(0, 5, 2), 0);
    }

    #[test]
    fn euler_obstruction_route() {
        let mut p = quadric();
        p.euler_obstructions = vec![
            EulerObstruction { at: "P1".into(), closure_of: "S0".into(), value: 1 },
            EulerObstruction { at: "P2".into(), closure_of: "S0".into(), value: 1 },
        ];
        assert!(b_from_links(&p).is_ok());
        let links_only = b_from_links(&quadric()).unwrap();
        p.links.clear();
        assert_eq!(b_from_links(&p).unwrap(), links_only);
        p.euler_obstructions[0].value = 2;
        p.links = quadric().links;
        assert!(matches!(b_from_links(&p), Err(StrataError::PosetInconsistent(_))));
    }

    #[test]
    fn inconsistent_posets() {
        let mut p = quadric();
        p.links.pop();
        assert!(matches!(p.validate(), Err(StrataError::PosetInconsistent(_))));
        let mut p = quadric();
        p.order.push(("S0".into(), "P1".into()));
        assert!(matches!(p.validate(), Err(StrataError::PosetInconsistent(_))));
        let mut p = quadric();
        p.strata[1].name = "S0".into();
        assert!(matches!(p.validate(), Err(StrataError::PosetInconsistent(_))));
        let mut p = quadric();
        p.links.push(link("P1", "P2", 1));
        assert!(matches!(p.validate(), Err(StrataError::PosetInconsistent(_))));
    }

    #[test]
    fn transitive_links_are_required() {
        let p = StratumPoset {
            ambient_hypersurface_dim: 2,
            strata: vec![stratum("a", 0, 1, 1), stratum("b", 1, 1, 1), stratum("c", 2, 1, 1)],
            order: vec![("a".into(), "b".into()), ("b".into(), "c".into())],
            links: vec![link("a", "b", 1), link("b", "c", 1)],
            euler_obstructions: vec![],
            sliced_ged: None,
        };
        assert!(p.validate().is_err());
        let mut full = p.clone();
        full.links.push(link("a", "c", 2));
        let m = b_from_links(&full).unwrap();
        assert_eq!(m.b, vec![vec![1, -1, -2], vec![0, 1, -1], vec![0, 0, 1]]);
        assert_eq!(m.a, vec![vec![1, 1, 3], vec![0, 1, 1], vec![0, 0, 1]]);
        let delta = evaluate_delta(&full).unwrap();
        assert!(delta.values().all(|&v| v == 1));
    }

    #[test]
    fn json_round_trip() {
        let text = quadric().to_json();
        assert_eq!(StratumPoset::from_json(&text).unwrap(), quadric());
        let transversal = r#"{
            "ambient_hypersurface_dim": 1,
            "strata": [{"name": "p", "dim": 0, "ged_closure": 1, "mu_transversal": 1}]
        }"#;
        let p = StratumPoset::from_json(transversal).unwrap();
        assert_eq!(p.mus(), vec![-1]);
        assert!(matches!(StratumPoset::from_json("{"), Err(StrataError::Parse(_))));
    }
}

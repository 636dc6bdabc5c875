//! Exhaustive enumeration of indecomposables and iso-classes at a
//! dimension vector, degeneration Hasse diagrams, and partial-order
//! verification.
//!
//! Enumeration bounds are deliberately tiny (per-vertex dimensions up to
//! 3, primes up to 5): the point is oracle-grade ground truth, cross
//! checked against the reflection-enumeration root counter in [`roots`],
//! not scale. Iteration is lexicographic throughout so outputs are
//! reproducible byte for byte.
//!
//! [`roots`]: crate::roots

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::degeneration::{decide_deg_with_test_set, DegenConfig, Verdict};
use crate::decompose::is_indecomposable;
use crate::error::Error;
use crate::matrix::ExactMatrix;
use crate::quiver::{DimensionVector, Quiver};
use crate::rep::{direct_sum, iso_indecomposable, Representation};
use crate::scalar::{FieldSpec, ScalarRing};
use crate::Result;

/// Hard cap on the number of arrow-matrix tuples one enumeration may
/// scan; beyond it the request is rejected with the estimate.
const WORK_CAP: u128 = 5_000_000;

/// Exhaustively enumerates the indecomposable representations with
/// dimension vector pointwise at most `max_dim`, up to isomorphism, in a
/// deterministic (lexicographic) order.
pub fn enumerate_indecomposables(
    q: &Arc<Quiver>,
    max_dim: &DimensionVector,
    field: &FieldSpec,
) -> Result<Vec<Representation>> {
    enumerate_indecomposables_bounded(q, max_dim, usize::MAX, field)
}

/// Same, restricted to dimension vectors of total dimension at most
/// `total_cap`; witness searches use this so a generous per-vertex
/// bound does not blow the scan up.
pub fn enumerate_indecomposables_bounded(
    q: &Arc<Quiver>,
    max_dim: &DimensionVector,
    total_cap: usize,
    field: &FieldSpec,
) -> Result<Vec<Representation>> {
    if !q.is_hereditary() {
        return Err(Error::NotHereditary);
    }
    let p = match field {
        FieldSpec::PrimeField(p) if *p <= 5 => *p,
        other => {
            return Err(Error::BoundsExceeded(format!(
                "enumeration works over F_2/F_3/F_5, got {}",
                other
            )))
        }
    };
    if max_dim.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch("max_dim arity".into()));
    }
    if max_dim.0.iter().any(|&d| d > 3) {
        return Err(Error::BoundsExceeded(
            "per-vertex dimension bound is 3 at desk scale".into(),
        ));
    }
    // reject over the work cap, with the estimate
    let mut estimate: u128 = 0;
    for dims in dimension_vectors_below(max_dim) {
        if dims.total() > total_cap {
            continue;
        }
        let cells: u128 = q
            .arrows()
            .iter()
            .map(|a| (dims.at(a.tgt) * dims.at(a.src)) as u128)
            .sum();
        estimate = estimate.saturating_add((p as u128).saturating_pow(cells.min(64) as u32));
        if estimate > WORK_CAP {
            return Err(Error::BoundsExceeded(format!(
                "enumeration would scan more than {} matrix tuples",
                WORK_CAP
            )));
        }
    }

    let ring = ScalarRing::Field(field.clone());
    let mut found: Vec<Representation> = Vec::new();
    for dims in dimension_vectors_below(max_dim) {
        if dims.total() == 0 || dims.total() > total_cap {
            continue;
        }
        // one counter per arrow-matrix entry, in base p
        let shapes: Vec<(usize, usize)> = q
            .arrows()
            .iter()
            .map(|a| (dims.at(a.tgt), dims.at(a.src)))
            .collect();
        let cells: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let mut counter = vec![0u64; cells];
        loop {
            let rep = build_rep(q, field, &ring, &dims, &shapes, &counter)?;
            if is_indecomposable(&rep)?.is_indecomposable() {
                let mut fresh = true;
                for old in &found {
                    if old.dims() == rep.dims() && iso_indecomposable(&rep, old)?.is_some() {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    found.push(rep);
                }
            }
            if !bump(&mut counter, p) {
                break;
            }
        }
    }
    Ok(found)
}

fn build_rep(
    q: &Arc<Quiver>,
    field: &FieldSpec,
    ring: &ScalarRing,
    dims: &DimensionVector,
    shapes: &[(usize, usize)],
    counter: &[u64],
) -> Result<Representation> {
    let mut matrices = Vec::with_capacity(shapes.len());
    let mut offset = 0usize;
    for &(rows, cols) in shapes {
        let m = ExactMatrix::from_fn(ring.clone(), rows, cols, |i, j| {
            ring.from_integer(counter[offset + i * cols + j] as i64)
        });
        offset += rows * cols;
        matrices.push(m);
    }
    Representation::new(q.clone(), field.clone(), dims.clone(), matrices)
}

/// Odometer increment in base `p`; false when it wraps to all zeros.
fn bump(counter: &mut [u64], p: u64) -> bool {
    for digit in counter.iter_mut() {
        *digit += 1;
        if *digit < p {
            return true;
        }
        *digit = 0;
    }
    false
}

/// All dimension vectors `0 <= d <= max` pointwise, ascending
/// lexicographically from the zero vector.
fn dimension_vectors_below(max: &DimensionVector) -> Vec<DimensionVector> {
    let mut out = Vec::new();
    let n = max.len();
    let mut cur = vec![0usize; n];
    loop {
        out.push(DimensionVector(cur.clone()));
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < max.at(k) {
                cur[k] += 1;
                for later in cur.iter_mut().skip(k + 1) {
                    *later = 0;
                }
                break;
            }
        }
    }
}

/// Stable display names for a list of indecomposables: `S<vertex>` for
/// simples, otherwise `M` followed by the dimension digits, with a
/// letter suffix when several iso-classes share a dimension vector.
pub fn indecomposable_labels(q: &Quiver, indecs: &[Representation]) -> Vec<String> {
    let mut base: Vec<String> = indecs
        .iter()
        .map(|rep| {
            let dims = rep.dims();
            if dims.total() == 1 {
                let v = (0..dims.len()).find(|&v| dims.at(v) == 1).unwrap();
                format!("S{}", q.vertex_name(v))
            } else {
                let digits: String = dims.0.iter().map(|d| d.to_string()).collect();
                format!("M{}", digits)
            }
        })
        .collect();
    // disambiguate duplicates in order: a, b, c, ...
    for i in 0..base.len() {
        let duplicates: Vec<usize> = (0..base.len()).filter(|&j| base[j] == base[i]).collect();
        if duplicates.len() > 1 {
            for (k, &j) in duplicates.iter().enumerate() {
                base[j] = format!("{}{}", base[j], (b'a' + k as u8) as char);
            }
        }
    }
    base
}

/// A module given as a multiset of indecomposables (indices with
/// multiplicities into a fixed enumeration).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleClass {
    pub rep: Representation,
    pub multiset: Vec<(usize, usize)>,
}

impl ModuleClass {
    pub fn label(&self, indec_labels: &[String]) -> String {
        if self.multiset.is_empty() {
            return "0".to_string();
        }
        self.multiset
            .iter()
            .map(|(idx, mult)| {
                if *mult == 1 {
                    indec_labels[*idx].clone()
                } else {
                    format!("{}{}", mult, indec_labels[*idx])
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// All iso-classes of modules with the given dimension vector, as
/// multisets of the enumerated indecomposables (Krull-Schmidt).
pub fn enumerate_modules(
    q: &Arc<Quiver>,
    dimvec: &DimensionVector,
    field: &FieldSpec,
) -> Result<Vec<ModuleClass>> {
    let indecs = enumerate_indecomposables(q, dimvec, field)?;
    enumerate_modules_from(q, dimvec, field, &indecs)
}

/// Same, reusing an indecomposable list that covers `dimvec`.
pub fn enumerate_modules_from(
    q: &Arc<Quiver>,
    dimvec: &DimensionVector,
    field: &FieldSpec,
    indecs: &[Representation],
) -> Result<Vec<ModuleClass>> {
    let mut out = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::new();
    partition_into_indecs(q, field, indecs, dimvec, 0, &mut current, &mut out)?;
    Ok(out)
}

fn partition_into_indecs(
    q: &Arc<Quiver>,
    field: &FieldSpec,
    indecs: &[Representation],
    remaining: &DimensionVector,
    from: usize,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<ModuleClass>,
) -> Result<()> {
    if remaining.total() == 0 {
        let parts: Vec<Representation> = current
            .iter()
            .flat_map(|(idx, mult)| std::iter::repeat_n(indecs[*idx].clone(), *mult))
            .collect();
        let rep = direct_sum(q, field, &parts)?.rep;
        out.push(ModuleClass { rep, multiset: current.clone() });
        return Ok(());
    }
    if from >= indecs.len() {
        return Ok(());
    }
    let d = indecs[from].dims();
    // multiplicity 0 first, then as many copies as fit
    partition_into_indecs(q, field, indecs, remaining, from + 1, current, out)?;
    let mut used = DimensionVector::zero(remaining.len());
    let mut mult = 0usize;
    loop {
        used = used.add(d);
        mult += 1;
        if !used.leq(remaining) {
            break;
        }
        let rest = DimensionVector(
            remaining
                .0
                .iter()
                .zip(&used.0)
                .map(|(r, u)| r - u)
                .collect(),
        );
        current.push((from, mult));
        partition_into_indecs(q, field, indecs, &rest, from + 1, current, out)?;
        current.pop();
    }
    Ok(())
}

/// Decision status of one ordered pair in the poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeStatus {
    Yes,
    No,
    Unknown,
}

/// The degeneration order on the iso-classes at one dimension vector.
#[derive(Debug, Clone)]
pub struct DegenerationPoset {
    pub quiver: Arc<Quiver>,
    pub field: FieldSpec,
    pub dimvec: DimensionVector,
    pub nodes: Vec<ModuleClass>,
    pub labels: Vec<String>,
    /// `edges[i][j]` decides `nodes[i] <= nodes[j]` for i != j.
    pub edges: Vec<Vec<EdgeStatus>>,
    /// transitive reduction of the strict Yes-relation
    pub hasse: Vec<(usize, usize)>,
    /// the certificate behind each Hasse edge, in `hasse` order
    pub hasse_witnesses: Vec<crate::degeneration::RzWitness>,
    pub unknowns: Vec<(usize, usize)>,
}

/// Builds the full decision matrix at a dimension vector and reduces the
/// Yes-relation transitively. Unknown pairs never enter the reduction.
pub fn hasse_diagram(
    q: &Arc<Quiver>,
    dimvec: &DimensionVector,
    field: &FieldSpec,
    config: &DegenConfig,
) -> Result<DegenerationPoset> {
    let indecs = enumerate_indecomposables(q, dimvec, field)?;
    let labels_indec = indecomposable_labels(q, &indecs);
    let nodes = enumerate_modules_from(q, dimvec, field, &indecs)?;
    let labels: Vec<String> = nodes.iter().map(|n| n.label(&labels_indec)).collect();

    let k = nodes.len();
    let mut edges = vec![vec![EdgeStatus::No; k]; k];
    let mut witnesses: BTreeMap<(usize, usize), crate::degeneration::RzWitness> = BTreeMap::new();
    let mut unknowns = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                edges[i][j] = EdgeStatus::Yes; // reflexivity
                continue;
            }
            let verdict =
                decide_deg_with_test_set(&nodes[i].rep, &nodes[j].rep, config, &indecs)?;
            edges[i][j] = match verdict {
                Verdict::Yes(w) => {
                    witnesses.insert((i, j), *w);
                    EdgeStatus::Yes
                }
                Verdict::No(_) => EdgeStatus::No,
                Verdict::Unknown(_) => {
                    unknowns.push((i, j));
                    EdgeStatus::Unknown
                }
            };
        }
    }

    // transitive reduction of the strict Yes-subrelation (a DAG by
    // antisymmetry; verify_partial_order re-checks that independently)
    let strict =
        |i: usize, j: usize| -> bool { i != j && edges[i][j] == EdgeStatus::Yes };
    let mut hasse = Vec::new();
    let mut hasse_witnesses = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if !strict(i, j) {
                continue;
            }
            let shortcut = (0..k).any(|x| strict(i, x) && strict(x, j));
            if !shortcut {
                hasse.push((i, j));
                hasse_witnesses.push(witnesses[&(i, j)].clone());
            }
        }
    }

    Ok(DegenerationPoset {
        quiver: q.clone(),
        field: field.clone(),
        dimvec: dimvec.clone(),
        nodes,
        labels,
        edges,
        hasse,
        hasse_witnesses,
        unknowns,
    })
}

/// Partial-order verification report.
#[derive(Debug, Clone)]
pub struct PartialOrderReport {
    pub reflexive_ok: bool,
    /// Yes(i,j) and Yes(j,i) with i != j: forbidden since nodes are
    /// pairwise non-isomorphic.
    pub antisymmetry_violations: Vec<(usize, usize)>,
    /// Yes(i,j) and Yes(j,k) but No(i,k): a hard failure.
    pub transitivity_failures: Vec<(usize, usize, usize)>,
    /// Yes(i,j) and Yes(j,k) but Unknown(i,k): a search-bound gap, not a
    /// refutation.
    pub transitivity_gaps: Vec<(usize, usize, usize)>,
}

impl PartialOrderReport {
    pub fn pass(&self) -> bool {
        self.reflexive_ok
            && self.antisymmetry_violations.is_empty()
            && self.transitivity_failures.is_empty()
    }
}

pub fn verify_partial_order(p: &DegenerationPoset) -> PartialOrderReport {
    let k = p.nodes.len();
    let reflexive_ok = (0..k).all(|i| p.edges[i][i] == EdgeStatus::Yes);
    let mut antisymmetry_violations = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            if p.edges[i][j] == EdgeStatus::Yes && p.edges[j][i] == EdgeStatus::Yes {
                antisymmetry_violations.push((i, j));
            }
        }
    }
    let mut transitivity_failures = Vec::new();
    let mut transitivity_gaps = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                if i == j || j == l || i == l {
                    continue;
                }
                if p.edges[i][j] == EdgeStatus::Yes && p.edges[j][l] == EdgeStatus::Yes {
                    match p.edges[i][l] {
                        EdgeStatus::Yes => {}
                        EdgeStatus::No => transitivity_failures.push((i, j, l)),
                        EdgeStatus::Unknown => transitivity_gaps.push((i, j, l)),
                    }
                }
            }
        }
    }
    PartialOrderReport {
        reflexive_ok,
        antisymmetry_violations,
        transitivity_failures,
        transitivity_gaps,
    }
}

/// DOT rendering of the Hasse diagram, most generic nodes at the top.
pub fn to_dot(p: &DegenerationPoset) -> String {
    let mut out = String::from("digraph degeneration {\n  rankdir=TB;\n  node [shape=box];\n");
    for label in &p.labels {
        out.push_str(&format!("  \"{}\";\n", label));
    }
    for (i, j) in &p.hasse {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.labels[*i], p.labels[*j]));
    }
    for (i, j) in &p.unknowns {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [style=dashed, label=\"?\"];\n",
            p.labels[*i], p.labels[*j]
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::positive_roots_of_quiver;

    fn f2() -> FieldSpec {
        FieldSpec::prime_field(2).unwrap()
    }

    #[test]
    fn a2_indecomposables_match_root_count() {
        let q = Quiver::line(2);
        let indecs =
            enumerate_indecomposables(&q, &DimensionVector(vec![1, 1]), &f2()).unwrap();
        assert_eq!(indecs.len(), 3);
        let roots = positive_roots_of_quiver(&q).unwrap();
        assert_eq!(indecs.len(), roots.len());
        // and the dimension vectors are exactly the positive roots
        let mut dims: Vec<DimensionVector> = indecs.iter().map(|r| r.dims().clone()).collect();
        dims.sort();
        assert_eq!(dims, roots);
    }

    #[test]
    fn a3_indecomposables_match_root_count() {
        let q = Quiver::line(3);
        let indecs =
            enumerate_indecomposables(&q, &DimensionVector(vec![1, 1, 1]), &f2()).unwrap();
        assert_eq!(indecs.len(), 6);
        assert_eq!(positive_roots_of_quiver(&q).unwrap().len(), 6);
    }

    #[test]
    fn d4_indecomposables_match_root_count() {
        let q = Quiver::star_into_sink(3);
        let indecs =
            enumerate_indecomposables(&q, &DimensionVector(vec![1, 1, 1, 2]), &f2()).unwrap();
        assert_eq!(indecs.len(), 12);
        let roots = positive_roots_of_quiver(&q).unwrap();
        assert_eq!(roots.len(), 12);
        let mut dims: Vec<DimensionVector> = indecs.iter().map(|r| r.dims().clone()).collect();
        dims.sort();
        assert_eq!(dims, roots);
    }

    #[test]
    fn module_enumeration_counts() {
        let q = Quiver::line(2);
        let field = FieldSpec::prime_field(5).unwrap();
        let m11 = enumerate_modules(&q, &DimensionVector(vec![1, 1]), &field).unwrap();
        assert_eq!(m11.len(), 2); // P and S1+S2

        let m22 = enumerate_modules(&q, &DimensionVector(vec![2, 2]), &field).unwrap();
        assert_eq!(m22.len(), 3); // 2P, P+S1+S2, 2S1+2S2

        let zero = enumerate_modules(&q, &DimensionVector(vec![0, 0]), &field).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].rep.is_zero());
        let labels = indecomposable_labels(&q, &[]);
        assert_eq!(zero[0].label(&labels), "0");
    }

    #[test]
    fn hasse_of_a_single_simple_is_a_point() {
        let q = Quiver::line(2);
        let field = FieldSpec::prime_field(5).unwrap();
        let config = crate::degeneration::DegenConfig::default();
        let poset = hasse_diagram(&q, &DimensionVector(vec![1, 0]), &field, &config).unwrap();
        assert_eq!(poset.nodes.len(), 1);
        assert!(poset.hasse.is_empty());
        assert!(poset.unknowns.is_empty());
        let report = verify_partial_order(&poset);
        assert!(report.pass());
    }

    #[test]
    fn bounds_are_enforced() {
        let q = Quiver::line(2);
        let big = DimensionVector(vec![4, 1]);
        assert!(enumerate_indecomposables(&q, &big, &f2()).is_err());
        let q7 = FieldSpec::prime_field(7).unwrap();
        assert!(enumerate_indecomposables(&q, &DimensionVector(vec![1, 1]), &q7).is_err());
    }
}

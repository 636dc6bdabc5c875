//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Everything here is exact (zero tolerance); run with `--nocapture` to
//! see the lines.

use std::sync::Arc;
use std::time::Instant;

use quivdeg::degeneration::{
    decide_deg, rz_witness_search, DegenConfig, HomDirection, Obstruction, RzWitness, Verdict,
};
use quivdeg::decompose::{decompose, is_indecomposable};
use quivdeg::derived::{
    delta_witness_search, descent_experiment, hom_dim_derived, restrict_triangle_witness,
    ses_to_triangle, shift_triangle_witness, Complex, TriangleWitness,
};
use quivdeg::family::{check_dvr_degeneration, rz_to_family, FamilyRep};
use quivdeg::matrix::ExactMatrix;
use quivdeg::poset::{enumerate_indecomposables, enumerate_modules, hasse_diagram, verify_partial_order, EdgeStatus};
use quivdeg::quiver::{DimensionVector, Quiver};
use quivdeg::rep::{direct_sum, hom_dim, is_isomorphic, Representation};
use quivdeg::rng::DetRng;
use quivdeg::roots::positive_roots_of_quiver;
use quivdeg::scalar::{BaseField, FieldSpec};
use quivdeg::verify::{verify_rz_witness, verify_triangle_witness};

fn f(p: u64) -> FieldSpec {
    FieldSpec::prime_field(p).unwrap()
}

struct A2Fixtures {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    s1: Representation,
    s2: Representation,
    p: Representation,
    s1s2: Representation,
}

fn a2(p_char: u64) -> A2Fixtures {
    let quiver = Quiver::line(2);
    let field = f(p_char);
    let s1 = Representation::simple(quiver.clone(), field.clone(), 0);
    let s2 = Representation::simple(quiver.clone(), field.clone(), 1);
    let p = Representation::from_int_matrices(quiver.clone(), field.clone(), vec![1, 1], &[vec![vec![1]]])
        .unwrap();
    let s1s2 = direct_sum(&quiver, &field, &[s1.clone(), s2.clone()]).unwrap().rep;
    A2Fixtures { quiver, field, s1, s2, p, s1s2 }
}

/// Every Yes verdict over all ordered pairs (including the reflexive
/// ones) at the given dimension vectors.
fn collect_witnesses(quiver: &Arc<Quiver>, field: &FieldSpec, dimvecs: &[Vec<usize>]) -> Vec<RzWitness> {
    let config = DegenConfig::default();
    let mut out = Vec::new();
    for dv in dimvecs {
        let modules = enumerate_modules(quiver, &DimensionVector(dv.clone()), field).unwrap();
        for a in &modules {
            for b in &modules {
                if let Verdict::Yes(w) = decide_deg(&a.rep, &b.rep, &config).unwrap() {
                    verify_rz_witness(&a.rep, &b.rep, &w).unwrap();
                    out.push(*w);
                }
            }
        }
    }
    out
}

#[test]
fn criterion_1_flagship_degeneration() {
    let start = Instant::now();
    let fx = a2(5);
    let config = DegenConfig::default();

    match decide_deg(&fx.p, &fx.s1s2, &config).unwrap() {
        Verdict::Yes(w) => verify_rz_witness(&fx.p, &fx.s1s2, &w).unwrap(),
        other => panic!("expected Yes, got {:?}", other),
    }
    match decide_deg(&fx.s1s2, &fx.p, &config).unwrap() {
        Verdict::No(Obstruction::HomOrder { test, direction, dim_m, dim_n }) => {
            assert_eq!(direction, HomDirection::Covariant);
            assert_eq!(test.dims(), fx.s1.dims(), "obstruction witness must be S1");
            assert_eq!((dim_m, dim_n), (1, 0));
        }
        other => panic!("expected covariant hom-order obstruction, got {:?}", other),
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "flagship pair took {:?}", elapsed);
    println!("acceptance criterion 1 (flagship A2 degeneration, < 1 s): PASS");
}

#[test]
fn criterion_2_witness_to_family_round_trip() {
    // witnesses from the A2 and A3 enumerations
    let fx = a2(5);
    let mut witnesses = collect_witnesses(&fx.quiver, &fx.field, &[vec![1, 1], vec![2, 2]]);
    let a3 = Quiver::line(3);
    witnesses.extend(collect_witnesses(&a3, &fx.field, &[vec![1, 1, 1]]));
    assert!(
        witnesses.len() >= 10,
        "need at least 10 witnesses, got {}",
        witnesses.len()
    );
    for w in &witnesses {
        let fam = rz_to_family(w).unwrap();
        let report = check_dvr_degeneration(w.m(), w.n(), &fam).unwrap();
        assert!(report.pass(), "family round trip failed for a witness");
    }

    // the flagship witness lands on the arrow-[t] family, fiber by fiber
    let w = rz_witness_search(&fx.p, &fx.s1s2, 2, 0).unwrap().unwrap();
    let fam = rz_to_family(&w).unwrap();
    let t_fam = FamilyRep::from_str_matrices(
        fx.quiver.clone(),
        BaseField::prime(5).unwrap(),
        vec![1, 1],
        &[vec![vec!["t"]]],
    )
    .unwrap();
    assert!(is_isomorphic(&fam.special_fiber().unwrap(), &t_fam.special_fiber().unwrap())
        .unwrap()
        .is_some());
    assert!(is_isomorphic(&fam.generic_fiber().unwrap(), &t_fam.generic_fiber().unwrap())
        .unwrap()
        .is_some());
    println!(
        "acceptance criterion 2 (rz -> family round trip, {} witnesses): PASS",
        witnesses.len()
    );
}

#[test]
fn criterion_3_family_to_witness_bounded() {
    let fx = a2(5);
    // the arrow-[t] family: total dimension 2; the search must succeed
    let w = rz_witness_search(&fx.p, &fx.s1s2, 2, 0).unwrap();
    assert!(w.is_some(), "the [t] family pair must recover a witness, not Unknown");
    verify_rz_witness(&fx.p, &fx.s1s2, &w.unwrap()).unwrap();

    // the constant family: reflexive pair
    let w = rz_witness_search(&fx.p, &fx.p, 2, 0).unwrap();
    assert!(w.is_some(), "the constant family pair must recover a witness");
    assert!(w.unwrap().z.is_zero());
    println!("acceptance criterion 3 (family -> witness within total-dimension bound): PASS");
}

#[test]
fn criterion_4_gabriel_counts() {
    let field = f(2);
    let cases: Vec<(Arc<Quiver>, Vec<usize>, usize)> = vec![
        (Quiver::line(2), vec![1, 1], 3),
        (Quiver::line(3), vec![1, 1, 1], 6),
        (Quiver::star_into_sink(3), vec![1, 1, 1, 2], 12),
    ];
    for (quiver, max_dim, expected) in cases {
        let indecs =
            enumerate_indecomposables(&quiver, &DimensionVector(max_dim), &field).unwrap();
        assert_eq!(indecs.len(), expected);
        let roots = positive_roots_of_quiver(&quiver).unwrap();
        assert_eq!(indecs.len(), roots.len(), "enumeration disagrees with the root counter");
        let mut dims: Vec<DimensionVector> = indecs.iter().map(|r| r.dims().clone()).collect();
        dims.sort();
        assert_eq!(dims, roots, "dimension vectors must be exactly the positive roots");
    }
    println!("acceptance criterion 4 (indecomposable counts 3/6/12 vs root oracle): PASS");
}

#[test]
fn criterion_5_hasse_diagrams() {
    let quiver = Quiver::line(2);
    let config = DegenConfig::default();

    let mut shapes: Vec<(u64, Vec<String>, Vec<(String, String)>)> = Vec::new();
    for p in [2u64, 3, 5] {
        let field = f(p);
        // dimvec (1,1): single edge P -> S1+S2
        let poset = hasse_diagram(&quiver, &DimensionVector(vec![1, 1]), &field, &config).unwrap();
        assert_eq!(poset.nodes.len(), 2);
        assert_eq!(poset.hasse.len(), 1);
        assert!(poset.unknowns.is_empty());
        let (i, j) = poset.hasse[0];
        assert_eq!(hom_dim(&poset.nodes[i].rep, &poset.nodes[i].rep).unwrap(), 1);
        assert_eq!(hom_dim(&poset.nodes[j].rep, &poset.nodes[j].rep).unwrap(), 2);
        let report = verify_partial_order(&poset);
        assert!(report.pass());

        // dimvec (2,2): the three-node chain with no unknowns
        let poset2 = hasse_diagram(&quiver, &DimensionVector(vec![2, 2]), &field, &config).unwrap();
        assert_eq!(poset2.nodes.len(), 3);
        assert!(poset2.unknowns.is_empty(), "no Unknown pairs allowed at (2,2)");
        assert_eq!(poset2.hasse.len(), 2, "transitive reduction of a 3-chain has 2 edges");
        // End dimensions 4 < 5 < 8 order the chain
        let mut by_end: Vec<(usize, usize)> = poset2
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (hom_dim(&n.rep, &n.rep).unwrap(), i))
            .collect();
        by_end.sort();
        assert_eq!(by_end.iter().map(|(e, _)| *e).collect::<Vec<_>>(), vec![4, 5, 8]);
        let idx: Vec<usize> = by_end.iter().map(|(_, i)| *i).collect();
        assert!(poset2.hasse.contains(&(idx[0], idx[1])));
        assert!(poset2.hasse.contains(&(idx[1], idx[2])));
        // full Yes-matrix: the chain is totally ordered
        assert_eq!(poset2.edges[idx[0]][idx[2]], EdgeStatus::Yes);
        let report2 = verify_partial_order(&poset2);
        assert!(report2.pass());
        assert!(report2.transitivity_gaps.is_empty());

        let edges: Vec<(String, String)> = poset2
            .hasse
            .iter()
            .map(|(i, j)| (poset2.labels[*i].clone(), poset2.labels[*j].clone()))
            .collect();
        shapes.push((p, poset2.labels.clone(), edges));
    }
    // identical across F_2, F_3, F_5
    for w in shapes.windows(2) {
        assert_eq!(w[0].1, w[1].1, "labels differ between F_{} and F_{}", w[0].0, w[1].0);
        assert_eq!(w[0].2, w[1].2, "edges differ between F_{} and F_{}", w[0].0, w[1].0);
    }
    println!("acceptance criterion 5 (Hasse diagrams, field independence): PASS");
}

/// Triangle witnesses exercised by criteria 6 and 7.
fn suite_triangle_witnesses() -> Vec<TriangleWitness> {
    let fx = a2(5);
    let mut rz = collect_witnesses(&fx.quiver, &fx.field, &[vec![1, 1], vec![2, 2]]);
    let a3 = Quiver::line(3);
    rz.extend(collect_witnesses(&a3, &fx.field, &[vec![1, 1, 1]]));
    let mut out: Vec<TriangleWitness> = rz.iter().map(|w| ses_to_triangle(w).unwrap()).collect();

    // a genuinely derived one: the flagship pair as stalk complexes
    let m = Complex::module(&fx.p, 0).unwrap();
    let n = Complex::module(&fx.s1s2, 0).unwrap();
    out.push(delta_witness_search(&m, &n, 4, 0).unwrap().unwrap());
    // and a shifted copy
    let shifted = shift_triangle_witness(out.last().unwrap(), 1).unwrap();
    out.push(shifted);
    out
}

#[test]
fn criterion_6_hom_length_monotonicity() {
    let witnesses = suite_triangle_witnesses();
    let mut checked = 0usize;
    for w in &witnesses {
        let m = w.m().clone();
        let n = w.n.clone();
        let quiver = m.quiver().clone();
        let field = m.field().clone();
        let per_vertex = DimensionVector(vec![1; quiver.vertex_count()]);
        let indecs = enumerate_indecomposables(&quiver, &per_vertex, &field).unwrap();
        for x in &indecs {
            let xc = Complex::module(x, 0).unwrap();
            for shift in -3i64..=3 {
                let dm = hom_dim_derived(&xc, &m, shift).unwrap();
                let dn = hom_dim_derived(&xc, &n, shift).unwrap();
                assert!(
                    dm <= dn,
                    "covariant hom-length violated at shift {}: {} > {}",
                    shift,
                    dm,
                    dn
                );
                let dm = hom_dim_derived(&m, &xc, shift).unwrap();
                let dn = hom_dim_derived(&n, &xc, shift).unwrap();
                assert!(
                    dm <= dn,
                    "contravariant hom-length violated at shift {}: {} > {}",
                    shift,
                    dm,
                    dn
                );
                checked += 2;
            }
        }
        // finiteness: for every pair a vanishing shift exists
        for x in &indecs {
            for y in &indecs {
                let xc = Complex::module(x, 0).unwrap();
                let yc = Complex::module(y, 0).unwrap();
                let vanish = xc.support_width().max(yc.support_width()) + 2;
                assert_eq!(hom_dim_derived(&xc, &yc, vanish).unwrap(), 0);
            }
        }
    }
    println!(
        "acceptance criterion 6 (hom-length monotonicity, {} witnesses, {} comparisons): PASS",
        witnesses.len(),
        checked
    );
}

#[test]
fn criterion_7_functor_preservation() {
    let witnesses = suite_triangle_witnesses();
    let mut shifted_count = 0usize;
    let mut restricted_count = 0usize;
    for w in &witnesses {
        // (a) shift functor
        let sw = shift_triangle_witness(w, 1).unwrap();
        verify_triangle_witness(&w.m().shift(1).unwrap(), &w.n.shift(1).unwrap(), &sw).unwrap();
        shifted_count += 1;

        // (b) restriction onto the source vertex of the two-vertex line
        if w.m().quiver().vertex_count() == 2 {
            let rw = restrict_triangle_witness(w, &[0]).unwrap();
            let (_, rm) = quivdeg::derived::apply_restriction_functor(w.m(), &[0]).unwrap();
            let (_, rn) = quivdeg::derived::apply_restriction_functor(&w.n, &[0]).unwrap();
            verify_triangle_witness(&rm, &rn, &rw).unwrap();
            restricted_count += 1;
        }
    }
    assert!(restricted_count > 0);
    println!(
        "acceptance criterion 7 (functor preservation: {} shifts, {} restrictions): PASS",
        shifted_count, restricted_count
    );
}

#[test]
fn criterion_8_subcategory_descent_report() {
    // the two-vertex line inside the three-vertex line
    let ambient = Quiver::line(3);
    let field = f(5);
    let report = descent_experiment(
        &ambient,
        &[0, 1],
        &DimensionVector(vec![1, 1]),
        &field,
        4,
        0,
    )
    .unwrap();
    assert!(!report.rows.is_empty(), "the report must enumerate pairs");
    let mut found_entries = 0usize;
    for row in &report.rows {
        println!(
            "  descent: {} <= {}: ambient {}, subcategory {}",
            row.m_label,
            row.n_label,
            if row.ambient.is_some() { "found" } else { "not found" },
            if row.restricted.is_some() { "found" } else { "not found" },
        );
        // every "found" entry carries a witness that re-verifies
        if let Some(w) = &row.ambient {
            verify_triangle_witness(w.m(), &w.n, w).unwrap();
            found_entries += 1;
        }
        if let Some(w) = &row.restricted {
            verify_triangle_witness(w.m(), &w.n, w).unwrap();
            found_entries += 1;
        }
    }
    assert!(found_entries > 0, "at least the known degeneration must be found");
    println!(
        "acceptance criterion 8 (subcategory descent report, {} rows, {} verified witnesses): PASS",
        report.rows.len(),
        found_entries
    );
}

#[test]
fn criterion_9_soundness_fuzzing() {
    let quiver = Quiver::line(3);
    let mut rng = DetRng::new(20240);
    let mut decomposed = 0usize;
    for trial in 0..1000 {
        let p = if trial % 2 == 0 { 2u64 } else { 3 };
        let field = f(p);
        let dims = DimensionVector(vec![
            rng.below(4) as usize,
            rng.below(4) as usize,
            rng.below(4) as usize,
        ]);
        let ring = quivdeg::scalar::ScalarRing::Field(field.clone());
        let matrices: Vec<ExactMatrix> = quiver
            .arrows()
            .iter()
            .map(|a| {
                let rows = dims.at(a.tgt);
                let cols = dims.at(a.src);
                let mut vals = Vec::with_capacity(rows * cols);
                for _ in 0..rows * cols {
                    vals.push(rng.below(p) as i64);
                }
                ExactMatrix::from_fn(ring.clone(), rows, cols, |i, j| {
                    ring.from_integer(vals[i * cols + j])
                })
            })
            .collect();
        let rep = Representation::new(quiver.clone(), field.clone(), dims.clone(), matrices).unwrap();

        // rank-nullity and transpose-rank on the arrow matrices
        for k in 0..quiver.arrows().len() {
            let m = rep.matrix(k);
            assert_eq!(m.rank().unwrap() + m.kernel_basis().unwrap().len(), m.cols());
            assert_eq!(m.rank().unwrap(), m.transpose().rank().unwrap());
        }

        if rep.is_zero() {
            continue;
        }
        // decomposition round trip: conjugating by the change of basis
        // lands exactly on the block sum (checked inside decompose), and
        // the multiset of summands re-sums to the original dimensions
        let d = decompose(&rep, trial as u64).unwrap();
        assert_eq!(&d.total_dims(), rep.dims());
        let blocks = d.block_list();
        assert!(!blocks.is_empty());
        for (summand, _) in &d.summands {
            assert!(is_indecomposable(summand).unwrap().is_indecomposable());
        }
        let sum = direct_sum(&quiver, &field, &blocks).unwrap().rep;
        let iso = d.iso_to_block_sum(&rep).unwrap();
        assert!(iso.is_invertible().unwrap());
        assert_eq!(iso.target(), &sum);
        decomposed += 1;

        // Hom additivity on a random triple of earlier summands
        if blocks.len() >= 2 {
            let a = &blocks[0];
            let b = &blocks[1];
            let ab = direct_sum(&quiver, &field, &[a.clone(), b.clone()]).unwrap().rep;
            let lhs = hom_dim(&ab, &rep).unwrap();
            let rhs = hom_dim(a, &rep).unwrap() + hom_dim(b, &rep).unwrap();
            assert_eq!(lhs, rhs, "hom additivity violated");
        }
    }
    assert!(decomposed >= 900);
    println!(
        "acceptance criterion 9 (soundness fuzzing, {} decompositions of 1000 samples): PASS",
        decomposed
    );
}

//! The module-level degeneration order: orbit-dimension bookkeeping,
//! hom-order necessary conditions, exact-sequence witness search, and a
//! three-valued decision procedure.
//!
//! A positive answer is a short exact sequence
//! `0 -> Z -> Z ⊕ M -> N -> 0` whose first map has components `(v, u)`
//! with `v` a nilpotent endomorphism of `Z`; the witness carries every
//! piece of that data and re-verifies it on construction. Negative
//! answers carry a re-checkable obstruction. Bounded search cannot prove
//! a negative, so exhaustion is reported as `Unknown`, never `No`.

use crate::error::Error;
use crate::poset::{enumerate_indecomposables, enumerate_indecomposables_bounded};
use crate::quiver::DimensionVector;
use crate::rep::{
    direct_sum, hom_basis, hom_dim, is_isomorphic, kernel_cokernel, RepMorphism, Representation,
};
use crate::rng::DetRng;
use crate::scalar::{FieldScalar, FieldSpec};
use crate::Result;

/// Knobs for the decision procedure; `dim_bound` defaults to twice the
/// total dimension of the degenerating module.
#[derive(Debug, Clone)]
#[derive(Default)]
pub struct DegenConfig {
    pub dim_bound: Option<usize>,
    pub seed: u64,
}


impl DegenConfig {
    pub fn bound_for(&self, m: &Representation) -> usize {
        self.dim_bound.unwrap_or(2 * m.total_dim())
    }
}

/// Random nilpotent endomorphisms tried per candidate middle term.
const V_RANDOM: usize = 6;
/// Random maps `z -> m` tried per candidate middle term.
const U_RANDOM: usize = 12;

/// A certified exact-sequence witness for `m <= n`.
#[derive(Debug, Clone)]
pub struct RzWitness {
    /// the middle object
    pub z: Representation,
    /// nilpotent endomorphism of `z`
    pub v: RepMorphism,
    /// map `z -> m`
    pub u: RepMorphism,
    /// the injective map `z -> z ⊕ m` with components `(v, u)`
    pub embedding: RepMorphism,
    /// isomorphism from the computed cokernel of `embedding` onto `n`
    pub cokernel_iso: RepMorphism,
}

impl RzWitness {
    pub fn m(&self) -> &Representation {
        self.u.target()
    }

    pub fn n(&self) -> &Representation {
        self.cokernel_iso.target()
    }

    pub fn cokernel(&self) -> &Representation {
        self.cokernel_iso.source()
    }
}

/// Assembles and fully checks a witness from `(z, v, u, n)`: builds the
/// embedding, requires it injective, computes the cokernel and looks for
/// an isomorphism onto `n`. `None` means this candidate does not
/// witness `m <= n`; errors mean the inputs were not even a candidate.
pub fn make_witness(
    z: &Representation,
    v: &RepMorphism,
    u: &RepMorphism,
    n: &Representation,
) -> Result<Option<RzWitness>> {
    if v.source() != z || v.target() != z {
        return Err(Error::NotAMorphism("v must be an endomorphism of z".into()));
    }
    if u.source() != z {
        return Err(Error::NotAMorphism("u must start at z".into()));
    }
    if !v.is_nilpotent()? {
        return Err(Error::InvalidWitness("v is not nilpotent".into()));
    }
    let m = u.target();
    let sum = direct_sum(z.quiver(), z.field(), &[z.clone(), m.clone()])?;
    let embedding = v.then(&sum.inclusions[0])?.add(&u.then(&sum.inclusions[1])?)?;
    if !embedding.is_injective()? {
        return Ok(None);
    }
    let kc = kernel_cokernel(&embedding)?;
    let iso = match is_isomorphic(&kc.cokernel, n)? {
        None => return Ok(None),
        Some(iso) => iso,
    };
    Ok(Some(RzWitness {
        z: z.clone(),
        v: v.clone(),
        u: u.clone(),
        embedding,
        cokernel_iso: iso,
    }))
}

/// Dimension of the conjugation orbit of `m` in its module variety:
/// `Σ_v d_v^2 − dim End(m)`.
pub fn orbit_dimension(m: &Representation) -> Result<usize> {
    let squares: usize = m.dims().0.iter().map(|d| d * d).sum();
    let end = hom_dim(m, m)?;
    Ok(squares - end)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomDirection {
    /// `dim Hom(X, m) <= dim Hom(X, n)` failed
    Covariant,
    /// `dim Hom(m, X) <= dim Hom(n, X)` failed
    Contravariant,
}

/// Outcome of the hom-order necessary condition over a test set.
#[derive(Debug, Clone)]
pub enum HomOrder {
    Holds,
    Fails {
        test: Representation,
        direction: HomDirection,
        dim_m: usize,
        dim_n: usize,
    },
}

/// Checks `dim Hom(X, m) <= dim Hom(X, n)` and
/// `dim Hom(m, X) <= dim Hom(n, X)` for every X in the test set.
/// All covariant checks run first, so the reported violation is the
/// first covariant one when any exists.
pub fn hom_order_leq(
    m: &Representation,
    n: &Representation,
    test_set: &[Representation],
) -> Result<HomOrder> {
    for x in test_set {
        let dm = hom_dim(x, m)?;
        let dn = hom_dim(x, n)?;
        if dm > dn {
            return Ok(HomOrder::Fails {
                test: x.clone(),
                direction: HomDirection::Covariant,
                dim_m: dm,
                dim_n: dn,
            });
        }
    }
    for x in test_set {
        let dm = hom_dim(m, x)?;
        let dn = hom_dim(n, x)?;
        if dm > dn {
            return Ok(HomOrder::Fails {
                test: x.clone(),
                direction: HomDirection::Contravariant,
                dim_m: dm,
                dim_n: dn,
            });
        }
    }
    Ok(HomOrder::Holds)
}

/// Builds the witness showing that an extension degenerates to the sum
/// of its end terms: given an injective `inclusion: u0 -> e` with
/// cokernel `w`, produces the witness for `e <= u0 ⊕ w` (middle object
/// `u0`, `v = 0`, `u = inclusion`).
pub fn extension_degeneration(inclusion: &RepMorphism) -> Result<RzWitness> {
    if !inclusion.is_injective()? {
        return Err(Error::NotAMorphism("extension inclusion must be injective".into()));
    }
    let u0 = inclusion.source().clone();
    let e = inclusion.target().clone();
    let w = kernel_cokernel(inclusion)?.cokernel;
    let n = direct_sum(e.quiver(), e.field(), &[u0.clone(), w])?.rep;
    let v = RepMorphism::zero(u0.clone(), u0.clone())?;
    make_witness(&u0, &v, inclusion, &n)?.ok_or_else(|| {
        Error::Internal("extension witness must verify: cokernel of (0, incl) is u0 ⊕ w".into())
    })
}

/// Searches for an exact-sequence witness for `m <= n` with middle
/// objects assembled from enumerated indecomposables of total dimension
/// at most `dim_bound`. Deterministic given the seed; exhaustion returns
/// `None` (the caller maps it to `Unknown`).
pub fn rz_witness_search(
    m: &Representation,
    n: &Representation,
    dim_bound: usize,
    seed: u64,
) -> Result<Option<RzWitness>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let indecs = search_pool(m, dim_bound)?;
    rz_search_with_pool(m, n, dim_bound, seed, &indecs)
}

/// Indecomposables available as summands of the middle object: per
/// vertex at most min(3, bound), total dimension at most the bound.
fn search_pool(m: &Representation, dim_bound: usize) -> Result<Vec<Representation>> {
    let per_vertex = dim_bound.min(3);
    let max_dim = DimensionVector(vec![per_vertex; m.quiver().vertex_count()]);
    enumerate_indecomposables_bounded(m.quiver(), &max_dim, dim_bound, m.field())
}

pub(crate) fn rz_search_with_pool(
    m: &Representation,
    n: &Representation,
    dim_bound: usize,
    seed: u64,
    indecs: &[Representation],
) -> Result<Option<RzWitness>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let mut rng = DetRng::new(seed);
    for multiset in middle_candidates(indecs, dim_bound) {
        let parts: Vec<Representation> =
            multiset.iter().map(|&i| indecs[i].clone()).collect();
        let z = direct_sum(m.quiver(), m.field(), &parts)?.rep;
        if let Some(w) = try_middle(&z, &multiset, indecs, m, n, &mut rng)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// All multisets of pool indices with total dimension at most the
/// bound, ordered by (total dimension, lexicographic indices). The empty
/// multiset (the trivial middle object) comes first.
fn middle_candidates(indecs: &[Representation], dim_bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(
        indecs: &[Representation],
        from: usize,
        budget: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(current.clone());
        for i in from..indecs.len() {
            let d = indecs[i].total_dim();
            if d == 0 || d > budget {
                continue;
            }
            current.push(i);
            recurse(indecs, i, budget - d, current, out);
            current.pop();
        }
    }
    recurse(indecs, 0, dim_bound, &mut current, &mut out);
    out.sort_by_key(|ms| {
        (
            ms.iter().map(|&i| indecs[i].total_dim()).sum::<usize>(),
            ms.clone(),
        )
    });
    out
}

fn try_middle(
    z: &Representation,
    multiset: &[usize],
    indecs: &[Representation],
    m: &Representation,
    n: &Representation,
    rng: &mut DetRng,
) -> Result<Option<RzWitness>> {
    let u_basis = hom_basis(z, m)?;
    if z.is_zero() {
        // witness m ≅ n with trivial middle object
        let v = RepMorphism::zero(z.clone(), z.clone())?;
        let u = RepMorphism::zero(z.clone(), m.clone())?;
        return make_witness(z, &v, &u, n);
    }
    if u_basis.is_empty() {
        // embedding (v, 0) with nilpotent v is never injective
        return Ok(None);
    }
    let rad_basis = radical_basis_of_sum(z, multiset, indecs)?;
    let ring = z.ring();
    let pool: Vec<FieldScalar> = (0..16).filter_map(|i| ring.element(i)).collect();

    let mut v_candidates: Vec<RepMorphism> = vec![RepMorphism::zero(z.clone(), z.clone())?];
    v_candidates.extend(rad_basis.iter().cloned());
    if !rad_basis.is_empty() {
        for _ in 0..V_RANDOM {
            let mut combo = RepMorphism::zero(z.clone(), z.clone())?;
            for f in &rad_basis {
                let c = pool[rng.below(pool.len() as u64) as usize].clone();
                combo = combo.add(&f.scale(&c))?;
            }
            v_candidates.push(combo);
        }
    }

    let mut u_candidates: Vec<RepMorphism> = u_basis.clone();
    for _ in 0..U_RANDOM {
        let mut combo = RepMorphism::zero(z.clone(), m.clone())?;
        for f in &u_basis {
            let c = pool[rng.below(pool.len() as u64) as usize].clone();
            combo = combo.add(&f.scale(&c))?;
        }
        u_candidates.push(combo);
    }

    for v in &v_candidates {
        // elements of the radical are nilpotent; double-check cheaply so
        // a bad candidate can never reach the witness constructor
        if !v.is_nilpotent()? {
            return Err(Error::Internal("radical sample is not nilpotent".into()));
        }
        for u in &u_candidates {
            if let Some(w) = make_witness(z, v, u, n)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Basis of the radical of `End(⊕ parts)`: blocks between isomorphic
/// summand slots take the radical of the summand's End, blocks between
/// non-isomorphic summands take the whole Hom space.
pub(crate) fn radical_basis_of_sum(
    z: &Representation,
    multiset: &[usize],
    indecs: &[Representation],
) -> Result<Vec<RepMorphism>> {
    let parts: Vec<Representation> = multiset.iter().map(|&i| indecs[i].clone()).collect();
    let sum = direct_sum(z.quiver(), z.field(), &parts)?;
    debug_assert_eq!(&sum.rep, z);
    let mut rad_of_indec: std::collections::BTreeMap<usize, Vec<RepMorphism>> =
        std::collections::BTreeMap::new();
    for &idx in multiset {
        if let std::collections::btree_map::Entry::Vacant(e) = rad_of_indec.entry(idx) {
            e.insert(radical_basis_of_indecomposable(&indecs[idx])?);
        }
    }
    let mut out = Vec::new();
    for (i, &pi) in multiset.iter().enumerate() {
        for (j, &pj) in multiset.iter().enumerate() {
            // block slot (i, j): maps part_j -> part_i
            let block_maps: Vec<RepMorphism> = if pi == pj {
                rad_of_indec[&pi].clone()
            } else {
                hom_basis(&parts[j], &parts[i])?
            };
            for h in block_maps {
                let lifted = sum.projections[j].then(&h)?.then(&sum.inclusions[i])?;
                out.push(lifted);
            }
        }
    }
    Ok(out)
}

/// Basis of rad End for a representation known indecomposable.
fn radical_basis_of_indecomposable(m: &Representation) -> Result<Vec<RepMorphism>> {
    use crate::decompose::{is_indecomposable, IndecWitness, Indecomposability};
    match is_indecomposable(m)? {
        Indecomposability::Indecomposable(IndecWitness::EndDimOne) => Ok(vec![]),
        Indecomposability::Indecomposable(IndecWitness::LocalRadical { radical_basis }) => {
            Ok(radical_basis)
        }
        Indecomposability::Indecomposable(IndecWitness::LocalExhaustive) => {
            // tiny End space: the nilpotent elements span the radical
            let basis = hom_basis(m, m)?;
            let mut nilpotents = Vec::new();
            for f in &basis {
                if f.is_nilpotent()? {
                    nilpotents.push(f.clone());
                }
            }
            Ok(nilpotents)
        }
        Indecomposability::Decomposable(_) => Err(Error::Internal(
            "radical basis requested for a decomposable summand".into(),
        )),
    }
}

/// Why a degeneration was refuted.
#[derive(Debug, Clone)]
pub enum Obstruction {
    DimensionVectors {
        dims_m: DimensionVector,
        dims_n: DimensionVector,
    },
    HomOrder {
        test: Representation,
        direction: HomDirection,
        dim_m: usize,
        dim_n: usize,
    },
    /// deg is strict, so the orbit dimension must drop, i.e. End must
    /// grow; `end_m >= end_n` with `m` not isomorphic to `n` refutes it
    EndDimension { end_m: usize, end_n: usize },
}

/// Search bounds that were exhausted without an answer.
#[derive(Debug, Clone)]
pub struct SearchBounds {
    pub dim_bound: usize,
}

/// Three-valued decision result.
#[derive(Debug, Clone)]
pub enum Verdict {
    Yes(Box<RzWitness>),
    No(Obstruction),
    Unknown(SearchBounds),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn witness(&self) -> Option<&RzWitness> {
        match self {
            Verdict::Yes(w) => Some(w),
            _ => None,
        }
    }
}

/// Decides whether `m` degenerates to `n`.
///
/// Pipeline: dimension vectors, isomorphism (trivial witness), hom-order
/// necessary conditions against all indecomposables up to `dims(m)`,
/// End-dimension obstruction, then witness search. Needs F_2/F_3/F_5 so
/// the test set and search pool can be enumerated exhaustively.
pub fn decide_deg(m: &Representation, n: &Representation, config: &DegenConfig) -> Result<Verdict> {
    let test_set = decide_test_set(m)?;
    decide_deg_with_test_set(m, n, config, &test_set)
}

/// The test set used by [`decide_deg`]: all indecomposables with
/// dimension vector at most `dims(m)` pointwise (capped at 3).
pub fn decide_test_set(m: &Representation) -> Result<Vec<Representation>> {
    if !matches!(m.field(), FieldSpec::PrimeField(p) if *p <= 5) {
        return Err(Error::BoundsExceeded(format!(
            "the decision pipeline enumerates test modules and witness middles, which needs F_2/F_3/F_5; got {}",
            m.field()
        )));
    }
    let capped = DimensionVector(m.dims().0.iter().map(|&d| d.clamp(1, 3)).collect());
    enumerate_indecomposables(m.quiver(), &capped, m.field())
}

/// [`decide_deg`] with a caller-provided test set (also used as the
/// witness-search pool), so poset sweeps enumerate only once.
pub fn decide_deg_with_test_set(
    m: &Representation,
    n: &Representation,
    config: &DegenConfig,
    test_set: &[Representation],
) -> Result<Verdict> {
    if m.dims() != n.dims() {
        return Ok(Verdict::No(Obstruction::DimensionVectors {
            dims_m: m.dims().clone(),
            dims_n: n.dims().clone(),
        }));
    }
    if is_isomorphic(m, n)?.is_some() {
        let z = Representation::zero(m.quiver().clone(), m.field().clone());
        let v = RepMorphism::zero(z.clone(), z.clone())?;
        let u = RepMorphism::zero(z.clone(), m.clone())?;
        let w = make_witness(&z, &v, &u, n)?
            .ok_or_else(|| Error::Internal("trivial witness failed for isomorphic pair".into()))?;
        return Ok(Verdict::Yes(Box::new(w)));
    }
    match hom_order_leq(m, n, test_set)? {
        HomOrder::Fails { test, direction, dim_m, dim_n } => {
            return Ok(Verdict::No(Obstruction::HomOrder { test, direction, dim_m, dim_n }));
        }
        HomOrder::Holds => {}
    }
    let end_m = hom_dim(m, m)?;
    let end_n = hom_dim(n, n)?;
    if end_m >= end_n {
        return Ok(Verdict::No(Obstruction::EndDimension { end_m, end_n }));
    }
    let bound = config.bound_for(m);
    match rz_search_with_pool(m, n, bound, config.seed, test_set)? {
        Some(w) => Ok(Verdict::Yes(Box::new(w))),
        None => Ok(Verdict::Unknown(SearchBounds { dim_bound: bound })),
    }
}

/// Transports a witness for `m <= n` to one for `m ⊕ x <= n ⊕ x` with
/// the same middle object (constructive check of sum monotonicity).
pub fn sum_witness(w: &RzWitness, x: &Representation) -> Result<RzWitness> {
    let m = w.m();
    let n = w.n();
    let mx = direct_sum(m.quiver(), m.field(), &[m.clone(), x.clone()])?;
    let nx = direct_sum(n.quiver(), n.field(), &[n.clone(), x.clone()])?;
    let u = w.u.then(&mx.inclusions[0])?;
    make_witness(&w.z, &w.v, &u, &nx.rep)?
        .ok_or_else(|| Error::Internal("sum witness must verify with the same middle object".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::fixtures::a2;

    fn s1s2(f: &crate::rep::fixtures::A2) -> Representation {
        direct_sum(&f.quiver, &f.field, &[f.s1.clone(), f.s2.clone()]).unwrap().rep
    }

    #[test]
    fn orbit_dimension_examples() {
        let f = a2(5);
        assert_eq!(orbit_dimension(&f.p).unwrap(), 1); // 2 - 1
        assert_eq!(orbit_dimension(&s1s2(&f)).unwrap(), 0); // 2 - 2
        let zero = Representation::zero(f.quiver.clone(), f.field.clone());
        assert_eq!(orbit_dimension(&zero).unwrap(), 0);
    }

    #[test]
    fn hom_order_examples() {
        let f = a2(5);
        let test_set = vec![f.s1.clone(), f.s2.clone(), f.p.clone()];
        let s = s1s2(&f);
        assert!(matches!(
            hom_order_leq(&f.p, &s, &test_set).unwrap(),
            HomOrder::Holds
        ));
        // reflexivity
        assert!(matches!(
            hom_order_leq(&f.p, &f.p, &test_set).unwrap(),
            HomOrder::Holds
        ));
        // the failing direction is the covariant one at X = S1: 1 > 0
        match hom_order_leq(&s, &f.p, &test_set).unwrap() {
            HomOrder::Fails { test, direction, dim_m, dim_n } => {
                assert_eq!(test.dims(), f.s1.dims());
                assert_eq!(direction, HomDirection::Covariant);
                assert_eq!((dim_m, dim_n), (1, 0));
            }
            HomOrder::Holds => panic!("expected a hom-order failure"),
        }
    }

    #[test]
    fn extension_degeneration_examples() {
        let f = a2(5);
        // S2 ⊂ P gives the witness for P <= S2 ⊕ S1
        let incl = hom_basis(&f.s2, &f.p).unwrap().pop().unwrap();
        let w = extension_degeneration(&incl).unwrap();
        assert_eq!(w.m(), &f.p);
        assert_eq!(w.n().dims(), &DimensionVector(vec![1, 1]));
        assert!(w.v.is_zero());

        // split inclusion a ⊂ a ⊕ b: degeneration to itself
        let sum = direct_sum(&f.quiver, &f.field, &[f.s1.clone(), f.p.clone()]).unwrap();
        let w = extension_degeneration(&sum.inclusions[0]).unwrap();
        assert_eq!(w.m().dims(), sum.rep.dims());
        assert_eq!(w.n().dims(), sum.rep.dims());

        // zero inclusion 0 ⊂ e: e <= e
        let zero = Representation::zero(f.quiver.clone(), f.field.clone());
        let z_incl = RepMorphism::zero(zero, f.p.clone()).unwrap();
        let w = extension_degeneration(&z_incl).unwrap();
        assert_eq!(w.n().dims(), f.p.dims());
    }

    #[test]
    fn witness_search_flagship_pair() {
        let f = a2(5);
        let s = s1s2(&f);
        let w = rz_witness_search(&f.p, &s, 2, 0).unwrap().expect("witness must exist");
        // the canonical witness: middle object S2 with v = 0
        assert_eq!(w.z.dims(), &DimensionVector(vec![0, 1]));
        assert!(w.v.is_zero());

        // reflexive pair: trivial middle object
        let w = rz_witness_search(&f.p, &f.p, 2, 0).unwrap().unwrap();
        assert!(w.z.is_zero());

        // impossible direction: search simply exhausts
        assert!(rz_witness_search(&s, &f.p, 2, 0).unwrap().is_none());
    }

    #[test]
    fn decide_pipeline_examples() {
        let f = a2(5);
        let s = s1s2(&f);
        let config = DegenConfig::default();

        match decide_deg(&f.p, &s, &config).unwrap() {
            Verdict::Yes(w) => {
                assert_eq!(w.m(), &f.p);
                assert_eq!(w.n(), &s);
            }
            other => panic!("expected Yes, got {:?}", other),
        }
        match decide_deg(&s, &f.p, &config).unwrap() {
            Verdict::No(Obstruction::HomOrder { direction, dim_m, dim_n, test }) => {
                assert_eq!(direction, HomDirection::Covariant);
                assert_eq!((dim_m, dim_n), (1, 0));
                assert_eq!(test.dims(), f.s1.dims());
            }
            other => panic!("expected hom-order obstruction, got {:?}", other),
        }
        match decide_deg(&f.p, &f.p, &config).unwrap() {
            Verdict::Yes(w) => assert!(w.z.is_zero()),
            other => panic!("expected trivial Yes, got {:?}", other),
        }
        // dimension mismatch is a No, not an error
        match decide_deg(&f.p, &f.s1, &config).unwrap() {
            Verdict::No(Obstruction::DimensionVectors { .. }) => {}
            other => panic!("expected dimension obstruction, got {:?}", other),
        }
    }

    #[test]
    fn decide_unknown_on_zero_bound() {
        // with bound 0 only the trivial middle object is tried, so the
        // flagship pair exhausts to Unknown
        let f = a2(5);
        let s = s1s2(&f);
        let config = DegenConfig { dim_bound: Some(0), seed: 0 };
        match decide_deg(&f.p, &s, &config).unwrap() {
            Verdict::Unknown(b) => assert_eq!(b.dim_bound, 0),
            other => panic!("expected Unknown, got {:?}", other),
        }
    }

    #[test]
    fn yes_implies_orbit_dimension_drop_and_sum_monotonicity() {
        let f = a2(5);
        let s = s1s2(&f);
        let w = rz_witness_search(&f.p, &s, 4, 0).unwrap().unwrap();
        assert!(orbit_dimension(&f.p).unwrap() > orbit_dimension(&s).unwrap());

        // the same middle object works after adding S1 on both sides
        let w2 = sum_witness(&w, &f.s1).unwrap();
        assert_eq!(w2.z.dims(), w.z.dims());
        assert_eq!(w2.m().total_dim(), f.p.total_dim() + 1);
    }
}

//! Decomposition into indecomposable summands via generalized-eigenspace
//! splitting of endomorphisms.
//!
//! The engine is the classical splitting: an endomorphism whose
//! characteristic polynomial has at least two coprime factors splits the
//! representation into its generalized kernels, which are arrow-stable.
//! Indecomposability is certified, never guessed: either dim End = 1, or
//! the nilpotent parts of an End basis span a codimension-one subspace
//! closed under composition (hence the radical: a subspace spanned by
//! nilpotents and closed under multiplication is a nil ideal), or, as a
//! last resort over tiny fields, every element of End is checked to be
//! invertible or nilpotent. If none of these applies the routine fails
//! loudly instead of guessing.

use crate::error::Error;
use crate::matrix::ExactMatrix;
use crate::polyfactor::factor_poly;
use crate::quiver::DimensionVector;
use crate::rep::{direct_sum, hom_basis, iso_indecomposable, RepMorphism, Representation};
use crate::rng::DetRng;
use crate::scalar::{FieldScalar, FieldSpec, Polynomial, ScalarRing};
use crate::snf::charpoly;
use crate::Result;

/// Random tries before switching to certification / exhaustion.
const RANDOM_TRIES: usize = 64;
/// Largest End-space enumeration (p^dim) for the exhaustive fallback.
const EXHAUSTIVE_CAP: u128 = 1 << 16;

/// A certified decomposition: conjugating the input by
/// `change_of_basis` gives exactly the block-diagonal sum of the listed
/// summands (each repeated by its multiplicity, in order).
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<(Representation, usize)>,
    pub change_of_basis: Vec<ExactMatrix>,
}

impl Decomposition {
    /// The summands expanded by multiplicity, in listed order.
    pub fn block_list(&self) -> Vec<Representation> {
        let mut out = Vec::new();
        for (rep, mult) in &self.summands {
            for _ in 0..*mult {
                out.push(rep.clone());
            }
        }
        out
    }

    pub fn total_dims(&self) -> DimensionVector {
        let mut dims = DimensionVector::zero(
            self.summands
                .first()
                .map_or(self.change_of_basis.len(), |(r, _)| r.dims().len()),
        );
        for (rep, mult) in &self.summands {
            for _ in 0..*mult {
                dims = dims.add(rep.dims());
            }
        }
        dims
    }

    /// The change of basis as an isomorphism `m -> ⊕ summands`;
    /// constructing it re-validates the intertwining identity.
    pub fn iso_to_block_sum(&self, m: &Representation) -> Result<RepMorphism> {
        let sum = direct_sum(m.quiver(), m.field(), &self.block_list())?;
        RepMorphism::new(m.clone(), sum.rep, self.change_of_basis.clone())
    }
}

/// Result of one generalized-eigenspace split.
#[derive(Debug, Clone)]
pub struct FittingSplit {
    pub parts: Vec<Representation>,
    /// per-vertex base change conjugating the input into the
    /// block-diagonal sum of `parts`
    pub base_change: Vec<ExactMatrix>,
}

/// Splits `m` along the coprime factors of the characteristic polynomial
/// of the endomorphism `f`: each factor `q^e` contributes the arrow-stable
/// subrepresentation `ker q(f)^e`. A single factor returns `m` whole.
pub fn fitting_split(m: &Representation, f: &RepMorphism) -> Result<FittingSplit> {
    if f.source() != m || f.target() != m {
        return Err(Error::NotAMorphism("fitting split needs an endomorphism of m".into()));
    }
    let factors = endo_charpoly_factors(f)?;
    split_along_factors(m, f, &factors)
}

/// Characteristic polynomial of an endomorphism, as the product of the
/// per-vertex characteristic polynomials, factored into coprime parts.
fn endo_charpoly_factors(f: &RepMorphism) -> Result<Vec<(Polynomial, usize)>> {
    let base = f.source().field().base();
    let mut cp = Polynomial::one(base);
    for v in 0..f.source().quiver().vertex_count() {
        if f.source().dims().at(v) == 0 {
            continue;
        }
        cp = cp.mul(&charpoly(f.component(v))?);
    }
    if cp.is_one() {
        // zero representation: nothing to factor
        return Ok(vec![]);
    }
    factor_poly(&cp)
}

fn split_along_factors(
    m: &Representation,
    f: &RepMorphism,
    factors: &[(Polynomial, usize)],
) -> Result<FittingSplit> {
    let q = m.quiver().clone();
    let ring = m.ring();
    let nv = q.vertex_count();
    if factors.len() <= 1 {
        let base_change = (0..nv)
            .map(|v| ExactMatrix::identity(ring.clone(), m.dims().at(v)))
            .collect();
        return Ok(FittingSplit { parts: vec![m.clone()], base_change });
    }

    // per part: kernel basis of q(f)^e at each vertex
    let mut part_bases: Vec<Vec<ExactMatrix>> = Vec::new();
    for (poly, mult) in factors {
        let mut bases = Vec::new();
        for v in 0..nv {
            let fv = f.component(v);
            let evaluated = eval_poly_at_matrix(poly, fv)?.pow(*mult)?;
            let kb = evaluated.kernel_basis()?;
            let d = m.dims().at(v);
            let mat = if kb.is_empty() {
                ExactMatrix::zero(ring.clone(), d, 0)
            } else {
                let mut acc = kb[0].clone();
                for b in &kb[1..] {
                    acc = acc.hstack(b)?;
                }
                acc
            };
            bases.push(mat);
        }
        part_bases.push(bases);
    }

    // subrepresentations with induced arrows
    let mut parts = Vec::new();
    for bases in &part_bases {
        let dims = DimensionVector((0..nv).map(|v| bases[v].cols()).collect());
        let mut mats = Vec::new();
        for (ai, a) in q.arrows().iter().enumerate() {
            let rhs = m.matrix(ai).mul(&bases[a.src])?;
            let x = bases[a.tgt]
                .solve_matrix(&rhs)?
                .ok_or_else(|| Error::Internal("generalized kernel is not arrow-stable".into()))?;
            mats.push(x);
        }
        parts.push(Representation::new(q.clone(), m.field().clone(), dims, mats)?);
    }

    // base change: inverse of the concatenated kernel bases
    let mut base_change = Vec::new();
    for v in 0..nv {
        let d = m.dims().at(v);
        let mut t = ExactMatrix::zero(ring.clone(), d, 0);
        for bases in &part_bases {
            t = t.hstack(&bases[v])?;
        }
        if t.cols() != d {
            return Err(Error::Internal(
                "generalized kernels do not span: factors not coprime?".into(),
            ));
        }
        let t_inv = if d == 0 {
            ExactMatrix::zero(ring.clone(), 0, 0)
        } else {
            t.inverse()?
                .ok_or_else(|| Error::Internal("generalized kernels are dependent".into()))?
        };
        base_change.push(t_inv);
    }

    // verify the conjugation lands exactly on the block sum
    let sum = direct_sum(&q, m.field(), &parts)?;
    let (conj, _) = m.conjugate(&base_change)?;
    if conj != sum.rep {
        return Err(Error::Internal("fitting split base change check failed".into()));
    }
    Ok(FittingSplit { parts, base_change })
}

/// Evaluates a polynomial at a square matrix.
fn eval_poly_at_matrix(p: &Polynomial, m: &ExactMatrix) -> Result<ExactMatrix> {
    let n = m.rows();
    let ring = m.ring().clone();
    let mut acc = ExactMatrix::zero(ring.clone(), n, n);
    let mut power = ExactMatrix::identity(ring, n);
    for (k, c) in p.coeffs().iter().enumerate() {
        if k > 0 {
            power = power.mul(m)?;
        }
        acc = acc.add(&power.scale(c))?;
    }
    Ok(acc)
}

/// Why a representation is indecomposable: or a witness that it is not.
#[derive(Debug, Clone)]
pub enum Indecomposability {
    Indecomposable(IndecWitness),
    /// An endomorphism whose characteristic polynomial has coprime
    /// factors, i.e. a Fitting splitter.
    Decomposable(RepMorphism),
}

#[derive(Debug, Clone)]
pub enum IndecWitness {
    /// End(m) = k·id.
    EndDimOne,
    /// The nilpotent parts `f_i − λ_i·id` of an End basis span a
    /// codimension-one subspace closed under composition: the radical.
    LocalRadical { radical_basis: Vec<RepMorphism> },
    /// Every element of End was enumerated and is invertible or
    /// nilpotent (tiny fields only).
    LocalExhaustive,
}

impl Indecomposability {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Indecomposability::Indecomposable(_))
    }

    /// Basis of the radical of End, when locality was certified.
    pub fn radical_basis(&self) -> Option<&[RepMorphism]> {
        match self {
            Indecomposability::Indecomposable(IndecWitness::LocalRadical { radical_basis }) => {
                Some(radical_basis)
            }
            Indecomposability::Indecomposable(IndecWitness::EndDimOne) => Some(&[]),
            _ => None,
        }
    }
}

/// Decides indecomposability with a certificate. The zero
/// representation is rejected: it is neither.
pub fn is_indecomposable(m: &Representation) -> Result<Indecomposability> {
    if m.is_zero() {
        return Err(Error::ZeroRepresentation(
            "the zero representation is neither decomposable nor indecomposable".into(),
        ));
    }
    let basis = hom_basis(m, m)?;
    let r = basis.len();
    if r == 1 {
        return Ok(Indecomposability::Indecomposable(IndecWitness::EndDimOne));
    }

    // basis elements with split charpolys settle it immediately
    let mut single_factors = Vec::new();
    for f in &basis {
        let factors = endo_charpoly_factors(f)?;
        if factors.len() >= 2 {
            return Ok(Indecomposability::Decomposable(f.clone()));
        }
        single_factors.push(factors.into_iter().next());
    }

    // radical-subspace certificate
    if let Some(cert) = radical_certificate(m, &basis, &single_factors)? {
        return Ok(Indecomposability::Indecomposable(cert));
    }

    // seeded random combinations hunting for a splitter
    let ring = m.ring();
    let mut rng = DetRng::new(0xF177);
    let pool: Vec<FieldScalar> = (0..16).filter_map(|i| ring.element(i)).collect();
    for _ in 0..RANDOM_TRIES {
        let mut combo = RepMorphism::zero(m.clone(), m.clone())?;
        for f in &basis {
            let c = pool[rng.below(pool.len() as u64) as usize].clone();
            combo = combo.add(&f.scale(&c))?;
        }
        if endo_charpoly_factors(&combo)?.len() >= 2 {
            return Ok(Indecomposability::Decomposable(combo));
        }
    }

    // exhaustive fallback over tiny prime fields
    if let FieldSpec::PrimeField(p) = m.field() {
        let total = (*p as u128).checked_pow(r as u32);
        if let Some(total) = total {
            if total <= EXHAUSTIVE_CAP {
                return exhaustive_locality(m, &basis, *p);
            }
        }
    }
    Err(Error::DecompositionExhausted(format!(
        "End dimension {} over {}: no splitter found and locality not certified",
        r,
        m.field()
    )))
}

/// Tries the codimension-one nilpotent subspace certificate.
fn radical_certificate(
    m: &Representation,
    basis: &[RepMorphism],
    single_factors: &[Option<(Polynomial, usize)>],
) -> Result<Option<IndecWitness>> {
    let ring = m.ring();
    let r = basis.len();
    let mut nilparts = Vec::new();
    for (f, fac) in basis.iter().zip(single_factors) {
        let (poly, _) = match fac {
            Some(x) => x,
            None => return Ok(None), // zero rep handled elsewhere
        };
        if poly.degree() != Some(1) {
            // residue field is a proper extension; certificate inapplicable
            return Ok(None);
        }
        // monic linear factor t - λ
        let lambda = poly.coeff(0).neg();
        let id = RepMorphism::identity(m);
        let n = f.add(&id.scale(&lambda).neg())?;
        if !n.is_nilpotent()? {
            return Ok(None);
        }
        nilparts.push(n);
    }
    // span of the nilpotent parts
    let vectors: Vec<Vec<FieldScalar>> = nilparts.iter().map(endo_vector).collect();
    let span = stack_rows(&ring, &vectors)?;
    let dim_n = span.rank()?;
    if dim_n != r - 1 {
        return Ok(None);
    }
    // closure under composition
    for a in &nilparts {
        for b in &nilparts {
            let prod = a.then(b)?;
            if !in_row_span(&span, &endo_vector(&prod))? {
                return Ok(None);
            }
        }
    }
    Ok(Some(IndecWitness::LocalRadical { radical_basis: nilparts }))
}

/// Enumerates every element of End over F_p: each must be invertible or
/// nilpotent, otherwise its charpoly splits and we return the splitter.
fn exhaustive_locality(
    m: &Representation,
    basis: &[RepMorphism],
    p: u64,
) -> Result<Indecomposability> {
    let ring = m.ring();
    let r = basis.len();
    let mut index = vec![0u64; r];
    loop {
        if index.iter().any(|&i| i != 0) {
            let mut combo = RepMorphism::zero(m.clone(), m.clone())?;
            for (f, &i) in basis.iter().zip(&index) {
                combo = combo.add(&f.scale(&ring.from_integer(i as i64)))?;
            }
            let invertible = combo.is_invertible()?;
            let nilpotent = combo.is_nilpotent()?;
            if !invertible && !nilpotent {
                let factors = endo_charpoly_factors(&combo)?;
                debug_assert!(factors.len() >= 2);
                return Ok(Indecomposability::Decomposable(combo));
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                return Ok(Indecomposability::Indecomposable(IndecWitness::LocalExhaustive));
            }
            index[k] += 1;
            if index[k] < p {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
}

fn endo_vector(f: &RepMorphism) -> Vec<FieldScalar> {
    let mut out = Vec::new();
    for c in f.components() {
        for i in 0..c.rows() {
            for j in 0..c.cols() {
                out.push(c.at(i, j).clone());
            }
        }
    }
    out
}

fn stack_rows(ring: &ScalarRing, rows: &[Vec<FieldScalar>]) -> Result<ExactMatrix> {
    let cols = rows.first().map_or(0, |r| r.len());
    let flat: Vec<FieldScalar> = rows.iter().flatten().cloned().collect();
    ExactMatrix::new(ring.clone(), rows.len(), cols, flat)
}

fn in_row_span(span: &ExactMatrix, v: &[FieldScalar]) -> Result<bool> {
    let ring = span.ring().clone();
    let extra = ExactMatrix::new(ring, 1, v.len(), v.to_vec())?;
    let stacked = span.vstack(&extra)?;
    Ok(stacked.rank()? == span.rank()?)
}

/// Fully decomposes a representation. Deterministic given `(m, seed)`.
pub fn decompose(m: &Representation, seed: u64) -> Result<Decomposition> {
    if !matches!(m.field(), FieldSpec::Rationals | FieldSpec::PrimeField(_)) {
        return Err(Error::NotAField(format!(
            "decomposition works over Q and F_p, not {}",
            m.field()
        )));
    }
    let nv = m.quiver().vertex_count();
    let ring = m.ring();
    if m.is_zero() {
        return Ok(Decomposition {
            summands: vec![],
            change_of_basis: (0..nv).map(|_| ExactMatrix::zero(ring.clone(), 0, 0)).collect(),
        });
    }
    let mut rng = DetRng::new(seed);
    let (blocks, base_change) = split_fully(m, &mut rng)?;

    // group isomorphic blocks and conjugate each onto its representative
    let mut classes: Vec<(Representation, Vec<(usize, RepMorphism)>)> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let mut placed = false;
        for (rep, members) in classes.iter_mut() {
            if let Some(h) = iso_indecomposable(b, rep)? {
                members.push((i, h));
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((b.clone(), vec![(i, RepMorphism::identity(b))]));
        }
    }

    let summands: Vec<(Representation, usize)> = classes
        .iter()
        .map(|(rep, members)| (rep.clone(), members.len()))
        .collect();

    // Φ: ⊕blocks (split order) -> ⊕representatives (grouped order)
    let sum_blocks = direct_sum(m.quiver(), m.field(), &blocks)?;
    let grouped: Vec<Representation> = summands
        .iter()
        .flat_map(|(rep, mult)| std::iter::repeat_n(rep.clone(), *mult))
        .collect();
    let sum_grouped = direct_sum(m.quiver(), m.field(), &grouped)?;
    let mut phi = RepMorphism::zero(sum_blocks.rep.clone(), sum_grouped.rep.clone())?;
    let mut slot = 0usize;
    for (_, members) in &classes {
        for (block_idx, h) in members {
            let piece = sum_blocks.projections[*block_idx]
                .then(h)?
                .then(&sum_grouped.inclusions[slot])?;
            phi = phi.add(&piece)?;
            slot += 1;
        }
    }

    let change_of_basis: Vec<ExactMatrix> = (0..nv)
        .map(|v| phi.component(v).mul(&base_change[v]))
        .collect::<Result<_>>()?;

    let decomposition = Decomposition { summands, change_of_basis };
    verify_decomposition(m, &decomposition)?;
    Ok(decomposition)
}

fn verify_decomposition(m: &Representation, d: &Decomposition) -> Result<()> {
    if d.total_dims() != *m.dims() {
        return Err(Error::Internal("decomposition dims do not add up".into()));
    }
    // conjugation lands exactly on the block sum (also checks invertibility)
    let sum = direct_sum(m.quiver(), m.field(), &d.block_list())?;
    let (conj, _) = m.conjugate(&d.change_of_basis)?;
    if conj != sum.rep {
        return Err(Error::Internal("decomposition base change check failed".into()));
    }
    Ok(())
}

/// Recursively splits into indecomposable blocks, returning the blocks
/// and the per-vertex base change onto their block-diagonal sum.
fn split_fully(m: &Representation, rng: &mut DetRng) -> Result<(Vec<Representation>, Vec<ExactMatrix>)> {
    let ring = m.ring();
    let nv = m.quiver().vertex_count();
    let identity_change =
        |m: &Representation| (0..nv).map(|v| ExactMatrix::identity(ring.clone(), m.dims().at(v))).collect();

    if m.is_zero() {
        return Ok((vec![], identity_change(m)));
    }
    let split = find_split(m, rng)?;
    let split = match split {
        None => return Ok((vec![m.clone()], identity_change(m))),
        Some(s) => s,
    };
    // recurse into parts
    let mut all_blocks = Vec::new();
    let mut part_changes: Vec<Vec<ExactMatrix>> = Vec::new();
    for part in &split.parts {
        if part.is_zero() {
            // zero parts appear transiently; drop them (their base change
            // contributes empty blocks)
            part_changes.push(
                (0..nv)
                    .map(|_| ExactMatrix::zero(ring.clone(), 0, 0))
                    .collect(),
            );
            continue;
        }
        let (blocks, change) = split_fully(part, rng)?;
        all_blocks.extend(blocks);
        part_changes.push(change);
    }
    // assembled change: blockdiag of the recursive changes, then the split's
    let mut change = Vec::new();
    for v in 0..nv {
        let blocks: Vec<&ExactMatrix> = part_changes.iter().map(|c| &c[v]).collect();
        let diag = ExactMatrix::block_diag(&ring, &blocks);
        change.push(diag.mul(&split.base_change[v])?);
    }
    Ok((all_blocks, change))
}

/// Finds a proper split, or `None` when `m` is certified indecomposable.
fn find_split(m: &Representation, rng: &mut DetRng) -> Result<Option<FittingSplit>> {
    match is_indecomposable_with_rng(m, rng)? {
        Indecomposability::Indecomposable(_) => Ok(None),
        Indecomposability::Decomposable(f) => {
            let split = fitting_split(m, &f)?;
            if split.parts.len() < 2 {
                return Err(Error::Internal("splitter produced a single part".into()));
            }
            Ok(Some(split))
        }
    }
}

// same as is_indecomposable but drawing randomness from the caller's stream
fn is_indecomposable_with_rng(m: &Representation, rng: &mut DetRng) -> Result<Indecomposability> {
    let basis = hom_basis(m, m)?;
    let r = basis.len();
    if r == 1 {
        return Ok(Indecomposability::Indecomposable(IndecWitness::EndDimOne));
    }
    let mut single_factors = Vec::new();
    for f in &basis {
        let factors = endo_charpoly_factors(f)?;
        if factors.len() >= 2 {
            return Ok(Indecomposability::Decomposable(f.clone()));
        }
        single_factors.push(factors.into_iter().next());
    }
    if let Some(cert) = radical_certificate(m, &basis, &single_factors)? {
        return Ok(Indecomposability::Indecomposable(cert));
    }
    let ring = m.ring();
    let pool: Vec<FieldScalar> = (0..16).filter_map(|i| ring.element(i)).collect();
    for _ in 0..RANDOM_TRIES {
        let mut combo = RepMorphism::zero(m.clone(), m.clone())?;
        for f in &basis {
            let c = pool[rng.below(pool.len() as u64) as usize].clone();
            combo = combo.add(&f.scale(&c))?;
        }
        if endo_charpoly_factors(&combo)?.len() >= 2 {
            return Ok(Indecomposability::Decomposable(combo));
        }
    }
    if let FieldSpec::PrimeField(p) = m.field() {
        if let Some(total) = (*p as u128).checked_pow(r as u32) {
            if total <= EXHAUSTIVE_CAP {
                return exhaustive_locality(m, &basis, *p);
            }
        }
    }
    Err(Error::DecompositionExhausted(format!(
        "End dimension {} over {}: no splitter found and locality not certified",
        r,
        m.field()
    )))
}

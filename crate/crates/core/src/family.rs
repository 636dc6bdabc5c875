//! One-parameter flat families over `k[t]`: fibers, the full
//! degeneration check along a discrete valuation ring, and the
//! constructive passage from an exact-sequence witness to a family.
//!
//! A family is a representation with polynomial matrix entries, i.e. a
//! free presentation of a module over A ⊗ `k[t]` of constant vertex rank;
//! freeness is what makes flatness over the valuation ring automatic.
//! Its special fiber lives at t = 0, its generic fiber over the function
//! field k(t). The interesting direction is constructive: an
//! exact-sequence witness `0 -> Z -> Z ⊕ M -> N -> 0` with nilpotent `v`
//! turns into the family `coker(z ↦ (v(z) − t·z, u(z)))`, whose cokernel
//! is free because the stacked map has unit invariant factors.

use std::sync::Arc;

use crate::degeneration::RzWitness;
use crate::error::Error;
use crate::matrix::ExactMatrix;
use crate::quiver::{DimensionVector, Quiver};
use crate::rep::{is_isomorphic, RepMorphism, Representation};
use crate::scalar::{BaseField, FieldScalar, FieldSpec, ScalarRing};
use crate::snf::smith_normal_form;
use crate::Result;

/// A one-parameter family of representations: per-arrow matrices over
/// `k[t]`, of shapes fixed by one dimension vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRep {
    quiver: Arc<Quiver>,
    base: BaseField,
    dims: DimensionVector,
    matrices: Vec<ExactMatrix>,
}

impl FamilyRep {
    pub fn new(
        quiver: Arc<Quiver>,
        base: BaseField,
        dims: DimensionVector,
        matrices: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let ring = ScalarRing::polynomials(base.clone());
        if dims.len() != quiver.vertex_count() || matrices.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch("family arity".into()));
        }
        for (a, m) in quiver.arrows().iter().zip(&matrices) {
            if m.ring() != &ring {
                return Err(Error::NotPolynomial(format!("{}", m.ring())));
            }
            if m.rows() != dims.at(a.tgt) || m.cols() != dims.at(a.src) {
                return Err(Error::DimensionMismatch(format!(
                    "family arrow {:?} shape",
                    a.name
                )));
            }
        }
        let fam = FamilyRep { quiver, base, dims, matrices };
        fam.check_relations()?;
        Ok(fam)
    }

    pub fn from_str_matrices(
        quiver: Arc<Quiver>,
        base: BaseField,
        dims: Vec<usize>,
        matrices: &[Vec<Vec<&str>>],
    ) -> Result<Self> {
        let ring = ScalarRing::polynomials(base.clone());
        let dims = DimensionVector(dims);
        let ms = quiver
            .arrows()
            .iter()
            .zip(matrices)
            .map(|(a, rows)| {
                if rows.is_empty() {
                    Ok(ExactMatrix::zero(ring.clone(), dims.at(a.tgt), dims.at(a.src)))
                } else {
                    ExactMatrix::from_str_rows(&ring, rows)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FamilyRep::new(quiver, base, dims, ms)
    }

    /// The constant family of a representation over ℚ or F_p.
    pub fn constant(rep: &Representation) -> Result<Self> {
        let base = match rep.field() {
            FieldSpec::Rationals => BaseField::Rationals,
            FieldSpec::PrimeField(p) => BaseField::Prime(*p),
            other => {
                return Err(Error::NotPolynomial(format!(
                    "constant families need a base-field representation, got {}",
                    other
                )))
            }
        };
        let ring = ScalarRing::polynomials(base.clone());
        let matrices = rep
            .matrices()
            .iter()
            .map(|m| {
                ExactMatrix::from_fn(ring.clone(), m.rows(), m.cols(), |i, j| {
                    ring.coerce(m.at(i, j)).expect("base scalar embeds in k[t]")
                })
            })
            .collect();
        FamilyRep::new(rep.quiver().clone(), base, rep.dims().clone(), matrices)
    }

    /// Relations must hold identically in `k[t]`.
    fn check_relations(&self) -> Result<()> {
        let ring = ScalarRing::polynomials(self.base.clone());
        for (i, rel) in self.quiver.relations().iter().enumerate() {
            let arrows = self.quiver.arrows();
            let (src, tgt) = (
                arrows[*rel[0].path.first().unwrap()].src,
                arrows[*rel[0].path.last().unwrap()].tgt,
            );
            let mut acc = ExactMatrix::zero(ring.clone(), self.dims.at(tgt), self.dims.at(src));
            for term in rel {
                let mut prod =
                    ExactMatrix::identity(ring.clone(), self.dims.at(arrows[term.path[0]].src));
                for &a in &term.path {
                    prod = self.matrices[a].mul(&prod)?;
                }
                acc = acc.add(&prod.scale(&ring.from_integer(term.coef)))?;
            }
            if !acc.is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "family violates relation {} identically",
                    i
                )));
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    fn base_field_spec(&self) -> FieldSpec {
        match &self.base {
            BaseField::Rationals => FieldSpec::Rationals,
            BaseField::Prime(p) => FieldSpec::PrimeField(*p),
        }
    }

    /// The fiber at any point t = c of the affine line.
    pub fn fiber_at(&self, c: &FieldScalar) -> Result<Representation> {
        let field = self.base_field_spec();
        let matrices = self
            .matrices
            .iter()
            .map(|m| m.eval_at(c))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(self.quiver.clone(), field, self.dims.clone(), matrices)
    }

    /// The special fiber: evaluation at t = 0.
    pub fn special_fiber(&self) -> Result<Representation> {
        self.fiber_at(&self.base.zero())
    }

    /// The generic fiber: the same matrices over k(t).
    pub fn generic_fiber(&self) -> Result<Representation> {
        let field = FieldSpec::rational_functions(self.base.clone());
        let matrices = self.matrices.iter().map(|m| m.embed_fraction_field()).collect();
        Representation::new(self.quiver.clone(), field, self.dims.clone(), matrices)
    }

    /// Block-diagonal sum of families.
    pub fn direct_sum(quiver: &Arc<Quiver>, base: &BaseField, parts: &[FamilyRep]) -> Result<FamilyRep> {
        let ring = ScalarRing::polynomials(base.clone());
        let mut dims = DimensionVector::zero(quiver.vertex_count());
        for p in parts {
            if p.quiver() != quiver || p.base() != base {
                return Err(Error::QuiverMismatch);
            }
            dims = dims.add(p.dims());
        }
        let matrices = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let blocks: Vec<&ExactMatrix> = parts.iter().map(|p| &p.matrices[i]).collect();
                ExactMatrix::block_diag(&ring, &blocks)
            })
            .collect();
        FamilyRep::new(quiver.clone(), base.clone(), dims, matrices)
    }
}

/// Outcome of the two fiber checks, with certificates.
#[derive(Debug, Clone)]
pub struct DvrReport {
    /// isomorphism generic_fiber ≅ m ⊗ k(t), when it exists
    pub generic_iso: Option<RepMorphism>,
    /// isomorphism special_fiber ≅ n, when it exists
    pub special_iso: Option<RepMorphism>,
}

impl DvrReport {
    pub fn generic_ok(&self) -> bool {
        self.generic_iso.is_some()
    }

    pub fn special_ok(&self) -> bool {
        self.special_iso.is_some()
    }

    pub fn pass(&self) -> bool {
        self.generic_ok() && self.special_ok()
    }
}

/// Checks that the family degenerates `m` to `n`: the generic fiber must
/// be isomorphic to `m` over k(t) (exactly, not by sampling) and the
/// special fiber to `n` over k.
pub fn check_dvr_degeneration(
    m: &Representation,
    n: &Representation,
    q: &FamilyRep,
) -> Result<DvrReport> {
    if m.quiver() != q.quiver() || n.quiver() != q.quiver() {
        return Err(Error::QuiverMismatch);
    }
    let generic = q.generic_fiber()?;
    let m_ext = m.extend_to_function_field()?;
    let generic_iso = is_isomorphic(&generic, &m_ext)?;
    let special = q.special_fiber()?;
    let special_iso = is_isomorphic(&special, n)?;
    Ok(DvrReport { generic_iso, special_iso })
}

/// Constructive direction of the equivalence between the exact-sequence
/// and family pictures: from a witness for `m <= n`, builds the family
/// `Q = coker( Z[t] -> (Z ⊕ M)[t], z ↦ (v(z) − t·z, u(z)) )`.
///
/// The stacked map has full column rank over k(t) (det(v − t) = ±t^dim
/// since v is nilpotent) and its Smith normal form must have unit
/// invariant factors; a non-unit factor would contradict flatness of the
/// cokernel and signals an implementation bug, so it raises instead of
/// continuing.
pub fn rz_to_family(w: &RzWitness) -> Result<FamilyRep> {
    let z = &w.z;
    let m = w.m();
    let base = match m.field() {
        FieldSpec::Rationals => BaseField::Rationals,
        FieldSpec::PrimeField(p) => BaseField::Prime(*p),
        other => {
            return Err(Error::NotPolynomial(format!(
                "families are built over ℚ or F_p, got {}",
                other
            )))
        }
    };
    let ring = ScalarRing::polynomials(base.clone());
    let nv = m.quiver().vertex_count();
    let t = ring.parse("t")?;

    // per vertex: presentation matrix [v − t·I; u], its projection onto
    // the cokernel, and a section
    let mut projections: Vec<ExactMatrix> = Vec::new();
    let mut sections: Vec<ExactMatrix> = Vec::new();
    for v_idx in 0..nv {
        let zd = z.dims().at(v_idx);
        let md = m.dims().at(v_idx);
        let vv = w.v.component(v_idx);
        let uu = w.u.component(v_idx);
        let top = ExactMatrix::from_fn(ring.clone(), zd, zd, |i, j| {
            let coef = ring.coerce(vv.at(i, j)).expect("base scalar embeds");
            if i == j {
                coef.sub(&t)
            } else {
                coef
            }
        });
        let bottom = ExactMatrix::from_fn(ring.clone(), md, zd, |i, j| {
            ring.coerce(uu.at(i, j)).expect("base scalar embeds")
        });
        let stacked = top.vstack(&bottom)?;
        let snf = smith_normal_form(&stacked)?;
        if snf.invariant_factors.len() != zd {
            return Err(Error::InvalidWitness(
                "presentation matrix lost column rank: embedding was not injective".into(),
            ));
        }
        for f in &snf.invariant_factors {
            if !f.is_one() {
                return Err(Error::Internal(format!(
                    "non-unit invariant factor {} in a witness-built family: the cokernel must be free",
                    f
                )));
            }
        }
        // cokernel coordinates: the last md rows of `left`, with section
        // the last md columns of `left_inv`
        let rows: Vec<usize> = (zd..zd + md).collect();
        let all_cols: Vec<usize> = (0..zd + md).collect();
        let proj = snf.left.submatrix(&rows, &all_cols);
        let cols: Vec<usize> = (zd..zd + md).collect();
        let all_rows: Vec<usize> = (0..zd + md).collect();
        let sect = snf.left_inv.submatrix(&all_rows, &cols);
        projections.push(proj);
        sections.push(sect);
    }

    // transport the block arrows of z ⊕ m through the cokernel bases
    let mut matrices = Vec::new();
    for (ai, a) in m.quiver().arrows().iter().enumerate() {
        let za = embed_poly(&ring, z.matrix(ai));
        let ma = embed_poly(&ring, m.matrix(ai));
        let block = ExactMatrix::block_diag(&ring, &[&za, &ma]);
        let induced = projections[a.tgt].mul(&block)?.mul(&sections[a.src])?;
        // well-definedness: the induced map must commute with the projections
        let lhs = induced.mul(&projections[a.src])?;
        let rhs = projections[a.tgt].mul(&block)?;
        if lhs != rhs {
            return Err(Error::Internal(
                "family transport is not well-defined on the cokernel".into(),
            ));
        }
        matrices.push(induced);
    }
    FamilyRep::new(m.quiver().clone(), base, m.dims().clone(), matrices)
}

fn embed_poly(ring: &ScalarRing, m: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(ring.clone(), m.rows(), m.cols(), |i, j| {
        ring.coerce(m.at(i, j)).expect("base scalar embeds in k[t]")
    })
}

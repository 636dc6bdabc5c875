//! Finite-dimensional representations of a quiver and the morphisms
//! between them.
//!
//! A representation assigns to each vertex a finite-dimensional space
//! over one field and to each arrow `a` a matrix of shape
//! `d_tgt(a) x d_src(a)` acting on column vectors; relations of the
//! quiver must evaluate to zero. A morphism `f: M -> N` is a per-vertex
//! matrix family with `f_tgt · M_a = N_a · f_src` for every arrow —
//! the convention every other module inherits.

use std::sync::Arc;

use crate::error::Error;
use crate::matrix::ExactMatrix;
use crate::quiver::{DimensionVector, Quiver};
use crate::rng::DetRng;
use crate::scalar::{FieldScalar, FieldSpec, ScalarRing};
use crate::Result;

/// A representation of a quiver over a [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    dims: DimensionVector,
    matrices: Vec<ExactMatrix>,
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(
        quiver: Arc<Quiver>,
        field: FieldSpec,
        dims: DimensionVector,
        matrices: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::InvalidRepresentation(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if matrices.len() != quiver.arrows().len() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for {} arrows",
                matrices.len(),
                quiver.arrows().len()
            )));
        }
        let ring = ScalarRing::Field(field.clone());
        for (a, m) in quiver.arrows().iter().zip(&matrices) {
            if m.ring() != &ring {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != dims.at(a.tgt) || m.cols() != dims.at(a.src) {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow {:?} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims.at(a.tgt),
                    dims.at(a.src),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let rep = Representation { quiver, field, dims, matrices };
        rep.check_relations()?;
        Ok(rep)
    }

    fn check_relations(&self) -> Result<()> {
        for (i, rel) in self.quiver.relations().iter().enumerate() {
            let (src, tgt) = {
                let first = &rel[0];
                let arrows = self.quiver.arrows();
                (
                    arrows[*first.path.first().unwrap()].src,
                    arrows[*first.path.last().unwrap()].tgt,
                )
            };
            let ring = self.ring();
            let mut acc = ExactMatrix::zero(ring.clone(), self.dims.at(tgt), self.dims.at(src));
            for term in rel {
                let mut prod =
                    ExactMatrix::identity(ring.clone(), self.dims.at(self.quiver.arrows()[term.path[0]].src));
                for &a in &term.path {
                    prod = self.matrices[a].mul(&prod)?;
                }
                acc = acc.add(&prod.scale(&ring.from_integer(term.coef)))?;
            }
            if !acc.is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "relation {} does not act as zero",
                    i
                )));
            }
        }
        Ok(())
    }

    pub fn zero(quiver: Arc<Quiver>, field: FieldSpec) -> Self {
        let n = quiver.vertex_count();
        let ring = ScalarRing::Field(field.clone());
        let matrices = quiver
            .arrows()
            .iter()
            .map(|_| ExactMatrix::zero(ring.clone(), 0, 0))
            .collect();
        Representation {
            quiver,
            field,
            dims: DimensionVector::zero(n),
            matrices,
        }
    }

    /// The simple representation: k at `vertex`, zero elsewhere.
    pub fn simple(quiver: Arc<Quiver>, field: FieldSpec, vertex: usize) -> Self {
        let n = quiver.vertex_count();
        let mut dims = DimensionVector::zero(n);
        dims.0[vertex] = 1;
        let ring = ScalarRing::Field(field.clone());
        let matrices = quiver
            .arrows()
            .iter()
            .map(|a| ExactMatrix::zero(ring.clone(), dims.at(a.tgt), dims.at(a.src)))
            .collect();
        Representation { quiver, field, dims, matrices }
    }

    /// Builds from per-arrow integer matrices (row-major), for fixtures.
    pub fn from_int_matrices(
        quiver: Arc<Quiver>,
        field: FieldSpec,
        dims: Vec<usize>,
        matrices: &[Vec<Vec<i64>>],
    ) -> Result<Self> {
        let ring = ScalarRing::Field(field.clone());
        let dims = DimensionVector(dims);
        let ms = quiver
            .arrows()
            .iter()
            .zip(matrices)
            .map(|(a, rows)| {
                let m = ExactMatrix::from_int_rows(&ring, rows);
                if rows.is_empty() || rows.iter().all(|r| r.is_empty()) {
                    // allow [] or [[]] shorthand for empty shapes
                    ExactMatrix::zero(ring.clone(), dims.at(a.tgt), dims.at(a.src))
                } else {
                    m
                }
            })
            .collect();
        Representation::new(quiver, field, dims, ms)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ring(&self) -> ScalarRing {
        ScalarRing::Field(self.field.clone())
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn matrix(&self, arrow: usize) -> &ExactMatrix {
        &self.matrices[arrow]
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    fn check_compatible(&self, other: &Representation) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// The same representation with scalars extended to k(t).
    pub fn extend_to_function_field(&self) -> Result<Representation> {
        let base = self.field.base();
        if self.field.is_function_field() {
            return Ok(self.clone());
        }
        let field = FieldSpec::rational_functions(base);
        let ring = ScalarRing::Field(field.clone());
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                ExactMatrix::from_fn(ring.clone(), m.rows(), m.cols(), |i, j| {
                    ring.coerce(m.at(i, j)).expect("base embeds in k(t)")
                })
            })
            .collect();
        Representation::new(self.quiver.clone(), field, self.dims.clone(), matrices)
    }

    /// Conjugates by an invertible per-vertex base change `g`, returning
    /// the new representation together with the isomorphism `g: self -> new`.
    pub fn conjugate(&self, g: &[ExactMatrix]) -> Result<(Representation, RepMorphism)> {
        if g.len() != self.quiver.vertex_count() {
            return Err(Error::DimensionMismatch("base change arity".into()));
        }
        let mut g_inv = Vec::new();
        for (v, gv) in g.iter().enumerate() {
            if gv.rows() != self.dims.at(v) || gv.cols() != self.dims.at(v) {
                return Err(Error::DimensionMismatch(format!("base change at vertex {}", v)));
            }
            g_inv.push(
                gv.inverse()?
                    .ok_or_else(|| Error::InvalidRepresentation("base change not invertible".into()))?,
            );
        }
        let matrices = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| g[a.tgt].mul(&self.matrices[i])?.mul(&g_inv[a.src]))
            .collect::<Result<Vec<_>>>()?;
        let new = Representation::new(self.quiver.clone(), self.field.clone(), self.dims.clone(), matrices)?;
        let iso = RepMorphism::new(self.clone(), new.clone(), g.to_vec())?;
        Ok((new, iso))
    }
}

/// A morphism of representations; the intertwining identity is checked
/// at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    components: Vec<ExactMatrix>,
}

impl RepMorphism {
    pub fn new(
        source: Representation,
        target: Representation,
        components: Vec<ExactMatrix>,
    ) -> Result<Self> {
        source.check_compatible(&target)?;
        if components.len() != source.quiver.vertex_count() {
            return Err(Error::NotAMorphism("wrong number of components".into()));
        }
        for (v, c) in components.iter().enumerate() {
            if c.rows() != target.dims.at(v) || c.cols() != source.dims.at(v) {
                return Err(Error::NotAMorphism(format!(
                    "component at vertex {} has shape {}x{}, needs {}x{}",
                    v,
                    c.rows(),
                    c.cols(),
                    target.dims.at(v),
                    source.dims.at(v)
                )));
            }
        }
        for (i, a) in source.quiver.arrows().iter().enumerate() {
            let lhs = components[a.tgt].mul(&source.matrices[i])?;
            let rhs = target.matrices[i].mul(&components[a.src])?;
            if lhs != rhs {
                return Err(Error::NotAMorphism(format!(
                    "intertwining fails at arrow {:?}",
                    a.name
                )));
            }
        }
        Ok(RepMorphism { source, target, components })
    }

    pub fn zero(source: Representation, target: Representation) -> Result<Self> {
        let ring = source.ring();
        let components = (0..source.quiver.vertex_count())
            .map(|v| ExactMatrix::zero(ring.clone(), target.dims.at(v), source.dims.at(v)))
            .collect();
        RepMorphism::new(source, target, components)
    }

    pub fn identity(rep: &Representation) -> Self {
        let ring = rep.ring();
        let components = (0..rep.quiver.vertex_count())
            .map(|v| ExactMatrix::identity(ring.clone(), rep.dims.at(v)))
            .collect();
        RepMorphism {
            source: rep.clone(),
            target: rep.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn component(&self, v: usize) -> &ExactMatrix {
        &self.components[v]
    }

    pub fn components(&self) -> &[ExactMatrix] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// `other ∘ self` fails unless targets and sources line up.
    pub fn then(&self, other: &RepMorphism) -> Result<RepMorphism> {
        if self.target != other.source {
            return Err(Error::NotAMorphism("composition endpoint mismatch".into()));
        }
        let components = (0..self.components.len())
            .map(|v| other.components[v].mul(&self.components[v]))
            .collect::<Result<Vec<_>>>()?;
        RepMorphism::new(self.source.clone(), other.target.clone(), components)
    }

    pub fn add(&self, other: &RepMorphism) -> Result<RepMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotAMorphism("sum endpoint mismatch".into()));
        }
        let components = (0..self.components.len())
            .map(|v| self.components[v].add(&other.components[v]))
            .collect::<Result<Vec<_>>>()?;
        RepMorphism::new(self.source.clone(), self.target.clone(), components)
    }

    pub fn scale(&self, c: &FieldScalar) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> RepMorphism {
        RepMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|m| m.neg()).collect(),
        }
    }

    pub fn is_injective(&self) -> Result<bool> {
        for c in &self.components {
            if c.rank()? != c.cols() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        for c in &self.components {
            if c.rank()? != c.rows() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(self.source.dims == self.target.dims && self.is_injective()?)
    }

    /// Inverse of an invertible morphism.
    pub fn inverse(&self) -> Result<RepMorphism> {
        let components = self
            .components
            .iter()
            .map(|c| {
                c.inverse()?
                    .ok_or_else(|| Error::NotAMorphism("morphism is not invertible".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        RepMorphism::new(self.target.clone(), self.source.clone(), components)
    }

    /// Endomorphism power (source must equal target).
    pub fn pow(&self, e: usize) -> Result<RepMorphism> {
        if self.source != self.target {
            return Err(Error::NotAMorphism("power of a non-endomorphism".into()));
        }
        let mut acc = RepMorphism::identity(&self.source);
        for _ in 0..e {
            acc = acc.then(self)?;
        }
        Ok(acc)
    }

    /// Nilpotence of an endomorphism, decided exactly by one matrix power.
    pub fn is_nilpotent(&self) -> Result<bool> {
        if self.source != self.target {
            return Err(Error::NotAMorphism("nilpotence of a non-endomorphism".into()));
        }
        Ok(self.pow(self.source.total_dim())?.is_zero())
    }

    /// Stacks all vertex components into one block-diagonal matrix
    /// (vertex order), the total map on ⊕_v M_v.
    pub fn total_matrix(&self) -> ExactMatrix {
        let ring = self.source.ring();
        let blocks: Vec<&ExactMatrix> = self.components.iter().collect();
        ExactMatrix::block_diag(&ring, &blocks)
    }
}

/// A basis of Hom(m, n), computed as the kernel of the stacked
/// intertwining system. Every returned morphism re-validates the
/// intertwining identity via `RepMorphism::new`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<RepMorphism>> {
    m.check_compatible(n)?;
    let q = m.quiver();
    let ring = m.ring();
    let nv = q.vertex_count();

    // unknowns: entries of f_v (n.d_v x m.d_v), vertex-major row-major
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + n.dims.at(v) * m.dims.at(v);
    }
    let unknowns = offsets[nv];
    let mut rows: Vec<Vec<FieldScalar>> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let ma = m.matrix(ai);
        let na = n.matrix(ai);
        // constraint (r, c): sum_j f_tgt[r][j] * Ma[j][c] - sum_i Na[r][i] * f_src[i][c] = 0
        for r in 0..n.dims.at(a.tgt) {
            for c in 0..m.dims.at(a.src) {
                let mut row = vec![ring.zero(); unknowns];
                for j in 0..m.dims.at(a.tgt) {
                    let idx = offsets[a.tgt] + r * m.dims.at(a.tgt) + j;
                    row[idx] = row[idx].add(ma.at(j, c));
                }
                for i in 0..n.dims.at(a.src) {
                    let idx = offsets[a.src] + i * m.dims.at(a.src) + c;
                    row[idx] = row[idx].sub(na.at(r, i));
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        ExactMatrix::zero(ring.clone(), 0, unknowns)
    } else {
        let flat: Vec<FieldScalar> = rows.iter().flatten().cloned().collect();
        ExactMatrix::new(ring.clone(), rows.len(), unknowns, flat)?
    };
    let kernel = system.kernel_basis()?;
    let mut basis = Vec::new();
    for vec in kernel {
        let mut components = Vec::new();
        for v in 0..nv {
            let comp = ExactMatrix::from_fn(ring.clone(), n.dims.at(v), m.dims.at(v), |r, c| {
                vec.at(offsets[v] + r * m.dims.at(v) + c, 0).clone()
            });
            components.push(comp);
        }
        basis.push(RepMorphism::new(m.clone(), n.clone(), components)?);
    }
    Ok(basis)
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// A direct sum with its canonical inclusions and projections.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub rep: Representation,
    pub inclusions: Vec<RepMorphism>,
    pub projections: Vec<RepMorphism>,
}

/// Block-diagonal direct sum; the empty sum is the zero representation.
pub fn direct_sum(quiver: &Arc<Quiver>, field: &FieldSpec, parts: &[Representation]) -> Result<DirectSum> {
    let ring = ScalarRing::Field(field.clone());
    for p in parts {
        if p.quiver() != quiver {
            return Err(Error::QuiverMismatch);
        }
        if p.field() != field {
            return Err(Error::FieldMismatch);
        }
    }
    let nv = quiver.vertex_count();
    let mut dims = DimensionVector::zero(nv);
    for p in parts {
        dims = dims.add(p.dims());
    }
    let matrices = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let blocks: Vec<&ExactMatrix> = parts.iter().map(|p| p.matrix(i)).collect();
            let m = ExactMatrix::block_diag(&ring, &blocks);
            debug_assert_eq!(m.rows(), dims.at(a.tgt));
            m
        })
        .collect();
    let rep = Representation::new(quiver.clone(), field.clone(), dims, matrices)?;

    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offset = vec![0usize; nv];
    for p in parts {
        let mut inc_comps = Vec::new();
        let mut proj_comps = Vec::new();
        for v in 0..nv {
            let d = p.dims().at(v);
            let total = rep.dims().at(v);
            let inc = ExactMatrix::from_fn(ring.clone(), total, d, |i, j| {
                if i == offset[v] + j {
                    ring.one()
                } else {
                    ring.zero()
                }
            });
            let proj = ExactMatrix::from_fn(ring.clone(), d, total, |i, j| {
                if j == offset[v] + i {
                    ring.one()
                } else {
                    ring.zero()
                }
            });
            inc_comps.push(inc);
            proj_comps.push(proj);
        }
        inclusions.push(RepMorphism::new(p.clone(), rep.clone(), inc_comps)?);
        projections.push(RepMorphism::new(rep.clone(), p.clone(), proj_comps)?);
        for v in 0..nv {
            offset[v] += p.dims().at(v);
        }
    }
    Ok(DirectSum { rep, inclusions, projections })
}

/// Kernel and cokernel of a morphism, with the exactness data.
#[derive(Debug, Clone)]
pub struct KernelCokernel {
    pub kernel: Representation,
    /// kernel -> source
    pub inclusion: RepMorphism,
    pub cokernel: Representation,
    /// target -> cokernel
    pub projection: RepMorphism,
    /// section of the projection: cokernel -> target as plain matrices
    pub section: Vec<ExactMatrix>,
}

/// Computes per-vertex kernels and cokernels with the induced arrow
/// actions. The construction is deterministic: kernels use the rref
/// kernel basis, cokernels take the standard-basis complement of the
/// image in scan order.
pub fn kernel_cokernel(f: &RepMorphism) -> Result<KernelCokernel> {
    let m = f.source();
    let n = f.target();
    let q = m.quiver().clone();
    let ring = m.ring();
    let nv = q.vertex_count();

    // kernel bases per vertex
    let mut ker_bases: Vec<ExactMatrix> = Vec::new();
    for v in 0..nv {
        let basis = f.component(v).kernel_basis()?;
        let d = m.dims().at(v);
        let mat = if basis.is_empty() {
            ExactMatrix::zero(ring.clone(), d, 0)
        } else {
            let mut acc = basis[0].clone();
            for b in &basis[1..] {
                acc = acc.hstack(b)?;
            }
            acc
        };
        ker_bases.push(mat);
    }
    // induced arrows on kernels: K_tgt X = M_a K_src
    let mut ker_mats = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let rhs = m.matrix(ai).mul(&ker_bases[a.src])?;
        let x = ker_bases[a.tgt]
            .solve_matrix(&rhs)?
            .ok_or_else(|| Error::Internal("kernel is not arrow-stable".into()))?;
        ker_mats.push(x);
    }
    let ker_dims = DimensionVector((0..nv).map(|v| ker_bases[v].cols()).collect());
    let kernel = Representation::new(q.clone(), m.field().clone(), ker_dims, ker_mats)?;
    let inclusion = RepMorphism::new(kernel.clone(), m.clone(), ker_bases)?;

    // cokernel: complement of the image in scan order
    let mut proj_mats = Vec::new();
    let mut sections = Vec::new();
    for v in 0..nv {
        let fv = f.component(v);
        let dim_n = n.dims().at(v);
        // image basis: pivot columns of f_v
        let piv = fv.rref()?.pivots;
        let im = fv.submatrix(&(0..dim_n).collect::<Vec<_>>(), &piv);
        // greedily extend with standard basis vectors
        let mut chosen: Vec<usize> = Vec::new();
        let mut span = im.clone();
        for j in 0..dim_n {
            let e = ExactMatrix::from_fn(ring.clone(), dim_n, 1, |i, _| {
                if i == j {
                    ring.one()
                } else {
                    ring.zero()
                }
            });
            let candidate = span.hstack(&e)?;
            if candidate.rank()? > span.rank()? {
                chosen.push(j);
                span = candidate;
            }
        }
        let c = chosen.len();
        debug_assert_eq!(im.cols() + c, dim_n);
        // T = [im | chosen]: projection = last c rows of T^{-1}
        let mut t = im.clone();
        for &j in &chosen {
            let e = ExactMatrix::from_fn(ring.clone(), dim_n, 1, |i, _| {
                if i == j {
                    ring.one()
                } else {
                    ring.zero()
                }
            });
            t = t.hstack(&e)?;
        }
        let t_inv = if dim_n == 0 {
            ExactMatrix::zero(ring.clone(), 0, 0)
        } else {
            t.inverse()?
                .ok_or_else(|| Error::Internal("cokernel basis not invertible".into()))?
        };
        let proj = t_inv.submatrix(
            &((dim_n - c)..dim_n).collect::<Vec<_>>(),
            &(0..dim_n).collect::<Vec<_>>(),
        );
        let sect = ExactMatrix::from_fn(ring.clone(), dim_n, c, |i, j| {
            if i == chosen[j] {
                ring.one()
            } else {
                ring.zero()
            }
        });
        proj_mats.push(proj);
        sections.push(sect);
    }
    let coker_dims = DimensionVector((0..nv).map(|v| proj_mats[v].rows()).collect());
    let mut coker_mats = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let induced = proj_mats[a.tgt].mul(n.matrix(ai))?.mul(&sections[a.src])?;
        coker_mats.push(induced);
    }
    let cokernel = Representation::new(q.clone(), n.field().clone(), coker_dims, coker_mats)?;
    let projection = RepMorphism::new(n.clone(), cokernel.clone(), proj_mats)?;

    // exactness checks
    let composite = inclusion.then(f)?;
    if !composite.is_zero() {
        return Err(Error::Internal("kernel inclusion does not vanish".into()));
    }
    let after = f.then(&projection)?;
    if !after.is_zero() {
        return Err(Error::Internal("projection does not kill the image".into()));
    }
    if !projection.is_surjective()? {
        return Err(Error::Internal("cokernel projection not surjective".into()));
    }
    for v in 0..nv {
        // rank-nullity per vertex
        let lhs = kernel.dims().at(v) as i64 - m.dims().at(v) as i64 + n.dims().at(v) as i64
            - cokernel.dims().at(v) as i64;
        if lhs != 0 {
            return Err(Error::Internal("rank-nullity violated".into()));
        }
    }
    Ok(KernelCokernel { kernel, inclusion, cokernel, projection, section: sections })
}

/// The Euler pairing of a hereditary quiver:
/// `<d, e> = Σ_v d_v e_v − Σ_a d_src(a) e_tgt(a)`.
pub fn euler_pairing(q: &Quiver, d: &DimensionVector, e: &DimensionVector) -> Result<i64> {
    if !q.is_hereditary() {
        return Err(Error::NotHereditary);
    }
    let mut acc: i64 = 0;
    for v in 0..q.vertex_count() {
        acc += d.at(v) as i64 * e.at(v) as i64;
    }
    for a in q.arrows() {
        acc -= d.at(a.src) as i64 * e.at(a.tgt) as i64;
    }
    Ok(acc)
}

/// `dim Ext^1(m, n) = dim Hom(m, n) − <dim m, dim n>` on a hereditary
/// quiver; always nonnegative.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.check_compatible(n)?;
    let pairing = euler_pairing(m.quiver(), m.dims(), n.dims())?;
    let hom = hom_dim(m, n)? as i64;
    let ext = hom - pairing;
    if ext < 0 {
        return Err(Error::Internal(format!(
            "negative ext dimension {}: euler pairing {} vs hom {}",
            ext, pairing, hom
        )));
    }
    Ok(ext as usize)
}

/// Isomorphism test returning an explicit invertible intertwiner.
///
/// Cheap invariants first, then invertible-combination search, then a
/// decisive fallback: summand matching after full decomposition over
/// ℚ/F_p, or exhaustive grid evaluation over k(t) (sound because a
/// multilinear determinant polynomial of bounded degree vanishing on a
/// large enough grid vanishes identically).
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<Option<RepMorphism>> {
    m.check_compatible(n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.total_dim() == 0 {
        return Ok(Some(RepMorphism::zero(m.clone(), n.clone())?));
    }
    let basis = hom_basis(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    // invariants any isomorphism would preserve
    if hom_dim(n, m)? != basis.len()
        || hom_dim(m, m)? != basis.len()
        || hom_dim(n, n)? != basis.len()
    {
        return Ok(None);
    }
    // single basis elements
    for f in &basis {
        if f.is_invertible()? {
            return Ok(Some(f.clone()));
        }
    }
    // seeded random combinations (internal constant seed: the function
    // takes no seed and must stay deterministic)
    let ring = m.ring();
    let mut rng = DetRng::new(0xA11CE);
    let pool: Vec<FieldScalar> = (0..16).filter_map(|i| ring.element(i)).collect();
    for _ in 0..48 {
        let mut combo = RepMorphism::zero(m.clone(), n.clone())?;
        for f in &basis {
            let c = pool[rng.below(pool.len() as u64) as usize].clone();
            combo = combo.add(&f.scale(&c))?;
        }
        if combo.is_invertible()? {
            return Ok(Some(combo));
        }
    }
    match m.field() {
        FieldSpec::Rationals | FieldSpec::PrimeField(_) => iso_by_decomposition(m, n),
        FieldSpec::RationalFunctions(_) => iso_by_grid(m, n, &basis),
    }
}

/// Isomorphism between representations already known indecomposable:
/// when m ≅ n, the non-isomorphisms in Hom(m, n) form a proper subspace,
/// so some basis element must be invertible.
pub(crate) fn iso_indecomposable(m: &Representation, n: &Representation) -> Result<Option<RepMorphism>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    for f in hom_basis(m, n)? {
        if f.is_invertible()? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn iso_by_decomposition(m: &Representation, n: &Representation) -> Result<Option<RepMorphism>> {
    use crate::decompose::decompose;
    let dm = decompose(m, 0)?;
    let dn = decompose(n, 0)?;
    let blocks_m = dm.block_list();
    let blocks_n = dn.block_list();
    if blocks_m.len() != blocks_n.len() {
        return Ok(None);
    }
    // match blocks pairwise
    let mut used = vec![false; blocks_n.len()];
    let mut assignment: Vec<(usize, RepMorphism)> = Vec::new();
    for bm in &blocks_m {
        let mut found = None;
        for (j, bn) in blocks_n.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(h) = iso_indecomposable(bm, bn)? {
                found = Some((j, h));
                break;
            }
        }
        match found {
            Some((j, h)) => {
                used[j] = true;
                assignment.push((j, h));
            }
            None => return Ok(None),
        }
    }
    // assemble: m --g_m--> ⊕blocks_m --H--> ⊕blocks_n --g_n^{-1}--> n
    let q = m.quiver();
    let field = m.field();
    let sum_m = direct_sum(q, field, &blocks_m)?;
    let sum_n = direct_sum(q, field, &blocks_n)?;
    let mut h = RepMorphism::zero(sum_m.rep.clone(), sum_n.rep.clone())?;
    for (i, (j, hi)) in assignment.iter().enumerate() {
        // include block i of m, map by hi, include into slot j of n
        let piece = sum_m.projections[i].then(hi)?.then(&sum_n.inclusions[*j])?;
        h = h.add(&piece)?;
    }
    let g_m = dm.iso_to_block_sum(m)?;
    let g_n = dn.iso_to_block_sum(n)?;
    let total = g_m.then(&h)?.then(&g_n.inverse()?)?;
    if !total.is_invertible()? {
        return Err(Error::Internal("assembled isomorphism is not invertible".into()));
    }
    Ok(Some(total))
}

/// Deterministic polynomial-identity grid over k(t). The determinant of
/// a generic combination has per-variable degree ≤ total dimension D; if
/// it vanishes on a (D+1)^r grid of distinct scalars it is identically
/// zero, hence no combination is invertible.
fn iso_by_grid(m: &Representation, n: &Representation, basis: &[RepMorphism]) -> Result<Option<RepMorphism>> {
    let ring = m.ring();
    let d_total = m.total_dim();
    let per_var = d_total as u64 + 1;
    let r = basis.len() as u32;
    let grid_size = (per_var as u128).checked_pow(r);
    match grid_size {
        Some(s) if s <= 2_000_000 => {}
        _ => {
            return Err(Error::BoundsExceeded(format!(
                "function-field isomorphism grid of size {}^{} is out of desk scale",
                per_var, r
            )))
        }
    }
    let pool: Vec<FieldScalar> = (0..per_var)
        .map(|i| ring.element(i).expect("k(t) pool is infinite"))
        .collect();
    let mut index = vec![0usize; basis.len()];
    loop {
        // skip the all-zero combination
        if index.iter().any(|&i| i != 0) {
            let mut combo = RepMorphism::zero(m.clone(), n.clone())?;
            for (f, &i) in basis.iter().zip(&index) {
                combo = combo.add(&f.scale(&pool[i]))?;
            }
            if combo.is_invertible()? {
                return Ok(Some(combo));
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == index.len() {
                return Ok(None); // grid exhausted: certified non-isomorphic
            }
            index[k] += 1;
            if index[k] < pool.len() {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The two-vertex line quiver with arrow `a1: 1 -> 2` over F_5 and
    /// its three indecomposables.
    pub struct A2 {
        pub quiver: Arc<Quiver>,
        pub field: FieldSpec,
        pub s1: Representation,
        pub s2: Representation,
        pub p: Representation,
    }

    pub fn a2(p_char: u64) -> A2 {
        let quiver = Quiver::line(2);
        let field = FieldSpec::prime_field(p_char).unwrap();
        let s1 = Representation::simple(quiver.clone(), field.clone(), 0);
        let s2 = Representation::simple(quiver.clone(), field.clone(), 1);
        let p = Representation::from_int_matrices(
            quiver.clone(),
            field.clone(),
            vec![1, 1],
            &[vec![vec![1]]],
        )
        .unwrap();
        A2 { quiver, field, s1, s2, p }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::a2;
    use super::*;
    use crate::rng::DetRng;

    #[test]
    fn hom_dims_on_a2() {
        let f = a2(5);
        assert_eq!(hom_dim(&f.p, &f.p).unwrap(), 1);
        assert_eq!(hom_dim(&f.s1, &f.p).unwrap(), 0);
        assert_eq!(hom_dim(&f.s2, &f.p).unwrap(), 1);
        assert_eq!(hom_dim(&f.p, &f.s1).unwrap(), 1);
        assert_eq!(hom_dim(&f.p, &f.s2).unwrap(), 0);
        assert_eq!(hom_dim(&f.s1, &f.s2).unwrap(), 0);
        assert_eq!(hom_dim(&f.s2, &f.s1).unwrap(), 0);
    }

    #[test]
    fn direct_sum_examples() {
        let f = a2(5);
        // empty sum is the zero representation
        let zero = direct_sum(&f.quiver, &f.field, &[]).unwrap();
        assert!(zero.rep.is_zero());

        // S1 ⊕ S2 has dims (1,1) and zero arrow matrix
        let s = direct_sum(&f.quiver, &f.field, &[f.s1.clone(), f.s2.clone()]).unwrap();
        assert_eq!(s.rep.dims(), &DimensionVector(vec![1, 1]));
        assert!(s.rep.matrix(0).is_zero());

        // End(S1 ⊕ S2) is two-dimensional
        assert_eq!(hom_dim(&s.rep, &s.rep).unwrap(), 2);

        // inclusions and projections compose to identities
        for i in 0..2 {
            let round = s.inclusions[i].then(&s.projections[i]).unwrap();
            let id = RepMorphism::identity(if i == 0 { &f.s1 } else { &f.s2 });
            assert_eq!(round, id);
        }
    }

    #[test]
    fn hom_additivity_on_seeded_sums() {
        let f = a2(5);
        let parts = [f.s1.clone(), f.s2.clone(), f.p.clone()];
        let mut rng = DetRng::new(5);
        for _ in 0..10 {
            let pick = |rng: &mut DetRng| parts[rng.below(3) as usize].clone();
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let c = pick(&mut rng);
            let ab = direct_sum(&f.quiver, &f.field, &[a.clone(), b.clone()]).unwrap().rep;
            let lhs = hom_dim(&ab, &c).unwrap();
            let rhs = hom_dim(&a, &c).unwrap() + hom_dim(&b, &c).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kernel_cokernel_of_identity_and_zero() {
        let f = a2(5);
        let id = RepMorphism::identity(&f.p);
        let kc = kernel_cokernel(&id).unwrap();
        assert!(kc.kernel.is_zero());
        assert!(kc.cokernel.is_zero());

        let z = RepMorphism::zero(f.p.clone(), f.p.clone()).unwrap();
        let kc = kernel_cokernel(&z).unwrap();
        assert_eq!(kc.kernel.dims(), f.p.dims());
        assert_eq!(kc.cokernel.dims(), f.p.dims());
    }

    #[test]
    fn cokernel_of_s2_into_s2_plus_p() {
        // z ↦ (0, u(z)) with u spanning Hom(S2, P): cokernel ≅ S1 ⊕ S2
        let f = a2(5);
        let sum = direct_sum(&f.quiver, &f.field, &[f.s2.clone(), f.p.clone()]).unwrap();
        let u = hom_basis(&f.s2, &f.p).unwrap().pop().unwrap();
        let emb = u.then(&sum.inclusions[1]).unwrap();
        assert!(emb.is_injective().unwrap());
        let kc = kernel_cokernel(&emb).unwrap();
        assert_eq!(kc.cokernel.dims(), &DimensionVector(vec![1, 1]));
        // induced arrow on the quotient is zero, i.e. the cokernel is S1 ⊕ S2
        assert!(kc.cokernel.matrix(0).is_zero());
    }

    #[test]
    fn euler_pairing_and_ext1_on_a2() {
        let f = a2(5);
        assert_eq!(ext1_dim(&f.s1, &f.s2).unwrap(), 1);
        assert_eq!(ext1_dim(&f.s2, &f.s1).unwrap(), 0);
        assert_eq!(ext1_dim(&f.p, &f.p).unwrap(), 0);
        // relations forbid the pairing
        let rel_quiver = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
            ],
            vec![vec![(1, vec!["a".into(), "b".into()])]],
        )
        .unwrap();
        let d = DimensionVector(vec![1, 1, 1]);
        assert!(matches!(
            euler_pairing(&rel_quiver, &d, &d),
            Err(Error::NotHereditary)
        ));
    }

    #[test]
    fn representations_must_satisfy_relations() {
        let rel_quiver = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
            ],
            vec![vec![(1, vec!["a".into(), "b".into()])]],
        )
        .unwrap();
        let field = FieldSpec::prime_field(5).unwrap();
        // b∘a = 1 violates the relation
        let bad = Representation::from_int_matrices(
            rel_quiver.clone(),
            field.clone(),
            vec![1, 1, 1],
            &[vec![vec![1]], vec![vec![1]]],
        );
        assert!(bad.is_err());
        // b∘a = 0 satisfies it
        let good = Representation::from_int_matrices(
            rel_quiver,
            field,
            vec![1, 1, 1],
            &[vec![vec![1]], vec![vec![0]]],
        );
        assert!(good.is_ok());
    }

    #[test]
    fn iso_examples() {
        let f = a2(5);
        // a representation is isomorphic to itself via the identity path
        let id = is_isomorphic(&f.p, &f.p).unwrap().unwrap();
        assert!(id.is_invertible().unwrap());

        // P vs S1 ⊕ S2: same dims but End dimensions differ
        let s = direct_sum(&f.quiver, &f.field, &[f.s1.clone(), f.s2.clone()]).unwrap().rep;
        assert!(is_isomorphic(&f.p, &s).unwrap().is_none());

        // conjugated P is isomorphic to P
        let ring = f.p.ring();
        let g = vec![
            ExactMatrix::from_int_rows(&ring, &[vec![3]]),
            ExactMatrix::from_int_rows(&ring, &[vec![2]]),
        ];
        let (conj, _) = f.p.conjugate(&g).unwrap();
        let iso = is_isomorphic(&conj, &f.p).unwrap().unwrap();
        assert!(iso.is_invertible().unwrap());
    }

    #[test]
    fn iso_over_function_field() {
        // over F_5(t): the arrow matrix [t] is isomorphic to [1] = P
        // (t is invertible), but not to the zero arrow
        let f = a2(5);
        let kt = FieldSpec::rational_functions(f.field.base());
        let ring = ScalarRing::Field(kt.clone());
        let arrow_t = Representation::new(
            f.quiver.clone(),
            kt.clone(),
            DimensionVector(vec![1, 1]),
            vec![ExactMatrix::from_str_rows(&ring, &[vec!["t"]]).unwrap()],
        )
        .unwrap();
        let p_kt = f.p.extend_to_function_field().unwrap();
        let s_kt = direct_sum(&f.quiver, &f.field, &[f.s1.clone(), f.s2.clone()])
            .unwrap()
            .rep
            .extend_to_function_field()
            .unwrap();
        assert!(is_isomorphic(&arrow_t, &p_kt).unwrap().is_some());
        assert!(is_isomorphic(&arrow_t, &s_kt).unwrap().is_none());
    }

    #[test]
    fn morphism_validation_rejects_non_intertwiners() {
        let f = a2(5);
        let ring = f.p.ring();
        // f_1 = 1, f_2 = 2 does not intertwine the identity arrow of P
        let bad = RepMorphism::new(
            f.p.clone(),
            f.p.clone(),
            vec![
                ExactMatrix::from_int_rows(&ring, &[vec![1]]),
                ExactMatrix::from_int_rows(&ring, &[vec![2]]),
            ],
        );
        assert!(matches!(bad, Err(Error::NotAMorphism(_))));
    }
}

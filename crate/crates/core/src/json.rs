//! JSON wire formats for quivers, representations, families, complexes,
//! witnesses, verdicts and posets.
//!
//! Scalars travel as strings in the canonical forms of [`scalar`]:
//! rationals as `a` or `a/b`, prime-field residues as decimals,
//! polynomials as `c0+c1*t+...`, rational functions as `(num)/(den)`.
//! Maps are keyed by vertex/arrow names (or stringified degrees) and use
//! ordered containers, so serialisation is deterministic.
//!
//! [`scalar`]: crate::scalar

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::degeneration::{HomDirection, Obstruction, RzWitness, SearchBounds, Verdict};
use crate::derived::{Complex, DeltaObstruction, DeltaVerdict, TriangleWitness, ChainMap};
use crate::error::Error;
use crate::family::{DvrReport, FamilyRep};
use crate::matrix::ExactMatrix;
use crate::poset::{DegenerationPoset, EdgeStatus};
use crate::quiver::{DimensionVector, Quiver};
use crate::rep::{direct_sum, kernel_cokernel, RepMorphism, Representation};
use crate::scalar::{BaseField, FieldSpec, ScalarRing};
use crate::Result;

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

// ---------------------------------------------------------------------
// quiver.json
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowFile {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationTermFile {
    pub coef: i64,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<RelationTermFile>>,
}

pub fn quiver_to_file(q: &Quiver) -> QuiverFile {
    QuiverFile {
        vertices: q.vertex_names().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowFile {
                name: a.name.clone(),
                src: q.vertex_name(a.src).to_string(),
                tgt: q.vertex_name(a.tgt).to_string(),
            })
            .collect(),
        relations: q
            .relations()
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|t| RelationTermFile {
                        coef: t.coef,
                        path: t.path.iter().map(|&a| q.arrows()[a].name.clone()).collect(),
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn quiver_from_file(f: &QuiverFile) -> Result<Arc<Quiver>> {
    Quiver::new(
        f.vertices.clone(),
        f.arrows
            .iter()
            .map(|a| (a.name.clone(), a.src.clone(), a.tgt.clone()))
            .collect(),
        f.relations
            .iter()
            .map(|rel| rel.iter().map(|t| (t.coef, t.path.clone())).collect())
            .collect(),
    )
}

// ---------------------------------------------------------------------
// field tags
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<FieldFile>>,
}

pub fn field_to_file(f: &FieldSpec) -> FieldFile {
    match f {
        FieldSpec::Rationals => FieldFile { kind: "Q".into(), p: None, base: None },
        FieldSpec::PrimeField(p) => FieldFile { kind: "Fp".into(), p: Some(*p), base: None },
        FieldSpec::RationalFunctions(b) => FieldFile {
            kind: "RatFun".into(),
            p: None,
            base: Some(Box::new(base_to_file(b))),
        },
    }
}

fn base_to_file(b: &BaseField) -> FieldFile {
    match b {
        BaseField::Rationals => FieldFile { kind: "Q".into(), p: None, base: None },
        BaseField::Prime(p) => FieldFile { kind: "Fp".into(), p: Some(*p), base: None },
    }
}

pub fn field_from_file(f: &FieldFile) -> Result<FieldSpec> {
    match f.kind.as_str() {
        "Q" => Ok(FieldSpec::Rationals),
        "Fp" => {
            let p = f.p.ok_or_else(|| bad("field kind Fp needs p"))?;
            FieldSpec::prime_field(p)
        }
        "RatFun" => {
            let base = f.base.as_ref().ok_or_else(|| bad("RatFun needs a base"))?;
            Ok(FieldSpec::rational_functions(base_from_file(base)?))
        }
        other => Err(bad(format!("unknown field kind {:?}", other))),
    }
}

pub fn base_from_file(f: &FieldFile) -> Result<BaseField> {
    match f.kind.as_str() {
        "Q" => Ok(BaseField::Rationals),
        "Fp" => BaseField::prime(f.p.ok_or_else(|| bad("field kind Fp needs p"))?),
        other => Err(bad(format!("{:?} is not a base field", other))),
    }
}

// ---------------------------------------------------------------------
// rep.json and family.json
// ---------------------------------------------------------------------

pub type MatrixFile = Vec<Vec<String>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepFile {
    pub field: FieldFile,
    pub dims: BTreeMap<String, usize>,
    pub matrices: BTreeMap<String, MatrixFile>,
}

fn matrix_to_file(m: &ExactMatrix) -> MatrixFile {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
        .collect()
}

fn matrix_from_file(ring: &ScalarRing, rows: usize, cols: usize, f: &MatrixFile) -> Result<ExactMatrix> {
    if f.len() != rows || f.iter().any(|r| r.len() != cols) {
        return Err(bad(format!(
            "matrix shape mismatch: expected {}x{}, file has {} rows",
            rows,
            cols,
            f.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in f {
        for s in row {
            entries.push(ring.parse(s)?);
        }
    }
    ExactMatrix::new(ring.clone(), rows, cols, entries)
}

pub fn rep_to_file(rep: &Representation) -> RepFile {
    let q = rep.quiver();
    let dims = (0..q.vertex_count())
        .map(|v| (q.vertex_name(v).to_string(), rep.dims().at(v)))
        .collect();
    let matrices = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.clone(), matrix_to_file(rep.matrix(i))))
        .collect();
    RepFile { field: field_to_file(rep.field()), dims, matrices }
}

pub fn rep_from_file(q: &Arc<Quiver>, f: &RepFile) -> Result<Representation> {
    let field = field_from_file(&f.field)?;
    let ring = ScalarRing::Field(field.clone());
    let mut dims = Vec::with_capacity(q.vertex_count());
    for v in 0..q.vertex_count() {
        let name = q.vertex_name(v);
        let d = f
            .dims
            .get(name)
            .copied()
            .ok_or_else(|| bad(format!("dims missing vertex {:?}", name)))?;
        dims.push(d);
    }
    for name in f.dims.keys() {
        if q.vertex_index(name).is_none() {
            return Err(bad(format!("dims has unknown vertex {:?}", name)));
        }
    }
    let dims = DimensionVector(dims);
    let mut matrices = Vec::new();
    for a in q.arrows() {
        let rows = dims.at(a.tgt);
        let cols = dims.at(a.src);
        let m = match f.matrices.get(&a.name) {
            Some(mf) => matrix_from_file(&ring, rows, cols, mf)?,
            None => ExactMatrix::zero(ring.clone(), rows, cols),
        };
        matrices.push(m);
    }
    for name in f.matrices.keys() {
        if q.arrow_index(name).is_none() {
            return Err(bad(format!("matrices has unknown arrow {:?}", name)));
        }
    }
    Representation::new(q.clone(), field, dims, matrices)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyFile {
    pub base: FieldFile,
    pub dims: BTreeMap<String, usize>,
    pub matrices: BTreeMap<String, MatrixFile>,
}

pub fn family_to_file(fam: &FamilyRep) -> FamilyFile {
    let q = fam.quiver();
    FamilyFile {
        base: base_to_file(fam.base()),
        dims: (0..q.vertex_count())
            .map(|v| (q.vertex_name(v).to_string(), fam.dims().at(v)))
            .collect(),
        matrices: q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), matrix_to_file(&fam.matrices()[i])))
            .collect(),
    }
}

pub fn family_from_file(q: &Arc<Quiver>, f: &FamilyFile) -> Result<FamilyRep> {
    let base = base_from_file(&f.base)?;
    let ring = ScalarRing::polynomials(base.clone());
    let mut dims = Vec::with_capacity(q.vertex_count());
    for v in 0..q.vertex_count() {
        let name = q.vertex_name(v);
        dims.push(
            *f.dims
                .get(name)
                .ok_or_else(|| bad(format!("dims missing vertex {:?}", name)))?,
        );
    }
    let dims = DimensionVector(dims);
    let mut matrices = Vec::new();
    for a in q.arrows() {
        let rows = dims.at(a.tgt);
        let cols = dims.at(a.src);
        let m = match f.matrices.get(&a.name) {
            Some(mf) => matrix_from_file(&ring, rows, cols, mf)?,
            None => ExactMatrix::zero(ring.clone(), rows, cols),
        };
        matrices.push(m);
    }
    FamilyRep::new(q.clone(), base, dims, matrices)
}

// ---------------------------------------------------------------------
// morphisms and witnesses
// ---------------------------------------------------------------------

/// vertex name -> matrix
pub type MorphismFile = BTreeMap<String, MatrixFile>;

pub fn morphism_to_file(f: &RepMorphism) -> MorphismFile {
    let q = f.source().quiver();
    (0..q.vertex_count())
        .map(|v| (q.vertex_name(v).to_string(), matrix_to_file(f.component(v))))
        .collect()
}

pub fn morphism_from_file(
    source: &Representation,
    target: &Representation,
    f: &MorphismFile,
) -> Result<RepMorphism> {
    let q = source.quiver();
    let ring = source.ring();
    let mut components = Vec::new();
    for v in 0..q.vertex_count() {
        let rows = target.dims().at(v);
        let cols = source.dims().at(v);
        let c = match f.get(q.vertex_name(v)) {
            Some(mf) => matrix_from_file(&ring, rows, cols, mf)?,
            None => ExactMatrix::zero(ring.clone(), rows, cols),
        };
        components.push(c);
    }
    RepMorphism::new(source.clone(), target.clone(), components)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessFile {
    pub kind: String,
    pub z: RepFile,
    pub v: MorphismFile,
    pub u: MorphismFile,
    pub coker_iso: MorphismFile,
}

pub fn witness_to_file(w: &RzWitness) -> WitnessFile {
    WitnessFile {
        kind: "rz".into(),
        z: rep_to_file(&w.z),
        v: morphism_to_file(&w.v),
        u: morphism_to_file(&w.u),
        coker_iso: morphism_to_file(&w.cokernel_iso),
    }
}

/// Reconstructs a witness for `m <= n` from its file, re-deriving the
/// embedding and cokernel; every morphism is validated on the way.
pub fn witness_from_file(
    q: &Arc<Quiver>,
    m: &Representation,
    n: &Representation,
    f: &WitnessFile,
) -> Result<RzWitness> {
    if f.kind != "rz" {
        return Err(bad(format!("expected an rz witness, got kind {:?}", f.kind)));
    }
    let z = rep_from_file(q, &f.z)?;
    let v = morphism_from_file(&z, &z, &f.v)?;
    let u = morphism_from_file(&z, m, &f.u)?;
    let sum = direct_sum(q, m.field(), &[z.clone(), m.clone()])?;
    let embedding = v.then(&sum.inclusions[0])?.add(&u.then(&sum.inclusions[1])?)?;
    let kc = kernel_cokernel(&embedding)?;
    let cokernel_iso = morphism_from_file(&kc.cokernel, n, &f.coker_iso)?;
    Ok(RzWitness { z, v, u, embedding, cokernel_iso })
}

// ---------------------------------------------------------------------
// complexes and triangle witnesses
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub lo: i64,
    pub hi: i64,
    pub terms: BTreeMap<String, RepFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differentials: BTreeMap<String, MorphismFile>,
}

pub fn complex_to_file(c: &Complex) -> Result<ComplexFile> {
    let mut terms = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for i in c.lo()..=c.hi() {
        terms.insert(i.to_string(), rep_to_file(&c.term(i)));
        if i < c.hi() {
            let d = c.differential(i)?;
            if !d.is_zero() {
                differentials.insert(i.to_string(), morphism_to_file(&d));
            }
        }
    }
    Ok(ComplexFile { lo: c.lo(), hi: c.hi(), terms, differentials })
}

pub fn complex_from_file(q: &Arc<Quiver>, f: &ComplexFile) -> Result<Complex> {
    if f.hi < f.lo {
        return Err(bad("complex with hi < lo"));
    }
    let mut terms = Vec::new();
    let mut field: Option<FieldSpec> = None;
    for i in f.lo..=f.hi {
        let rf = f
            .terms
            .get(&i.to_string())
            .ok_or_else(|| bad(format!("complex missing term at degree {}", i)))?;
        let rep = rep_from_file(q, rf)?;
        if let Some(fld) = &field {
            if fld != rep.field() {
                return Err(bad("complex terms over different fields"));
            }
        } else {
            field = Some(rep.field().clone());
        }
        terms.push(rep);
    }
    let field = field.ok_or_else(|| bad("empty complex"))?;
    let mut diffs = Vec::new();
    for i in f.lo..f.hi {
        let src = &terms[(i - f.lo) as usize];
        let tgt = &terms[(i - f.lo) as usize + 1];
        let d = match f.differentials.get(&i.to_string()) {
            Some(mf) => morphism_from_file(src, tgt, mf)?,
            None => RepMorphism::zero(src.clone(), tgt.clone())?,
        };
        diffs.push(d);
    }
    Complex::new(q.clone(), field, f.lo, terms, diffs)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleWitnessFile {
    pub kind: String,
    pub z: ComplexFile,
    /// degree -> morphism components
    pub v: BTreeMap<String, MorphismFile>,
    pub u: BTreeMap<String, MorphismFile>,
    pub cone_iso: BTreeMap<String, MorphismFile>,
}

pub fn triangle_witness_to_file(w: &TriangleWitness) -> Result<TriangleWitnessFile> {
    let mut v = BTreeMap::new();
    let mut u = BTreeMap::new();
    for i in w.z.lo()..=w.z.hi() {
        let vc = w.v.component(i)?;
        if !vc.is_zero() {
            v.insert(i.to_string(), morphism_to_file(&vc));
        }
        let uc = w.u.component(i)?;
        if !uc.is_zero() {
            u.insert(i.to_string(), morphism_to_file(&uc));
        }
    }
    let cone_iso = w
        .cone_iso
        .iter()
        .map(|(i, f)| (i.to_string(), morphism_to_file(f)))
        .collect();
    Ok(TriangleWitnessFile {
        kind: "delta".into(),
        z: complex_to_file(&w.z)?,
        v,
        u,
        cone_iso,
    })
}

pub fn triangle_witness_from_file(
    q: &Arc<Quiver>,
    m: &Complex,
    n: &Complex,
    f: &TriangleWitnessFile,
) -> Result<TriangleWitness> {
    if f.kind != "delta" {
        return Err(bad(format!("expected a delta witness, got kind {:?}", f.kind)));
    }
    let z = complex_from_file(q, &f.z)?;
    let mut v_components = BTreeMap::new();
    for (deg, mf) in &f.v {
        let i: i64 = deg.parse().map_err(|_| bad("bad degree key"))?;
        v_components.insert(i, morphism_from_file(&z.term(i), &z.term(i), mf)?);
    }
    let v = ChainMap::new(z.clone(), z.clone(), v_components)?;
    let mut u_components = BTreeMap::new();
    for (deg, mf) in &f.u {
        let i: i64 = deg.parse().map_err(|_| bad("bad degree key"))?;
        u_components.insert(i, morphism_from_file(&z.term(i), &m.term(i), mf)?);
    }
    let u = ChainMap::new(z.clone(), m.clone(), u_components)?;
    // recompute cone homology to anchor the stored isomorphisms
    let probe = TriangleWitness {
        z: z.clone(),
        v: v.clone(),
        u: u.clone(),
        n: n.clone(),
        cone_iso: vec![],
    };
    let cone = probe.cone()?;
    let mut cone_iso = Vec::new();
    for (deg, mf) in &f.cone_iso {
        let i: i64 = deg.parse().map_err(|_| bad("bad degree key"))?;
        let hc = cone.homology(i)?;
        let hn = n.homology(i)?;
        cone_iso.push((i, morphism_from_file(&hc, &hn, mf)?));
    }
    Ok(TriangleWitness { z, v, u, n: n.clone(), cone_iso })
}

// ---------------------------------------------------------------------
// verdicts, reports, posets
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObstructionFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims_m: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims_n: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test: Option<RepFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_shift: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_m: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_n: Option<Vec<i64>>,
}

impl ObstructionFile {
    fn named(kind: &str) -> Self {
        ObstructionFile {
            kind: kind.into(),
            dims_m: None,
            dims_n: None,
            test: None,
            test_shift: None,
            direction: None,
            dim_m: None,
            dim_n: None,
            end_m: None,
            end_n: None,
            chi_m: None,
            chi_n: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictFile {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_bounds: Option<SearchBoundsFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchBoundsFile {
    pub dim_bound: usize,
}

pub fn verdict_to_file(v: &Verdict) -> VerdictFile {
    match v {
        Verdict::Yes(w) => VerdictFile {
            status: "yes".into(),
            witness: Some(witness_to_file(w)),
            obstruction: None,
            search_bounds: None,
        },
        Verdict::No(o) => VerdictFile {
            status: "no".into(),
            witness: None,
            obstruction: Some(obstruction_to_file(o)),
            search_bounds: None,
        },
        Verdict::Unknown(SearchBounds { dim_bound }) => VerdictFile {
            status: "unknown".into(),
            witness: None,
            obstruction: None,
            search_bounds: Some(SearchBoundsFile { dim_bound: *dim_bound }),
        },
    }
}

fn obstruction_to_file(o: &Obstruction) -> ObstructionFile {
    match o {
        Obstruction::DimensionVectors { dims_m, dims_n } => {
            let mut f = ObstructionFile::named("dimension_vectors");
            f.dims_m = Some(dims_m.0.clone());
            f.dims_n = Some(dims_n.0.clone());
            f
        }
        Obstruction::HomOrder { test, direction, dim_m, dim_n } => {
            let mut f = ObstructionFile::named("hom_order");
            f.test = Some(rep_to_file(test));
            f.direction = Some(
                match direction {
                    HomDirection::Covariant => "covariant",
                    HomDirection::Contravariant => "contravariant",
                }
                .into(),
            );
            f.dim_m = Some(*dim_m);
            f.dim_n = Some(*dim_n);
            f
        }
        Obstruction::EndDimension { end_m, end_n } => {
            let mut f = ObstructionFile::named("end_dimension");
            f.end_m = Some(*end_m);
            f.end_n = Some(*end_n);
            f
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaVerdictFile {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<TriangleWitnessFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_bounds: Option<SearchBoundsFile>,
}

pub fn delta_verdict_to_file(v: &DeltaVerdict) -> Result<DeltaVerdictFile> {
    Ok(match v {
        DeltaVerdict::Yes(w) => DeltaVerdictFile {
            status: "yes".into(),
            witness: Some(triangle_witness_to_file(w)?),
            obstruction: None,
            search_bounds: None,
        },
        DeltaVerdict::No(o) => {
            let of = match o {
                DeltaObstruction::EulerCharacteristic { chi_m, chi_n } => {
                    let mut f = ObstructionFile::named("euler_characteristic");
                    f.chi_m = Some(chi_m.clone());
                    f.chi_n = Some(chi_n.clone());
                    f
                }
                DeltaObstruction::HomLength { test, test_shift, covariant, dim_m, dim_n } => {
                    let mut f = ObstructionFile::named("hom_length");
                    f.test = Some(rep_to_file(test));
                    f.test_shift = Some(*test_shift);
                    f.direction = Some(if *covariant { "covariant" } else { "contravariant" }.into());
                    f.dim_m = Some(*dim_m);
                    f.dim_n = Some(*dim_n);
                    f
                }
            };
            DeltaVerdictFile {
                status: "no".into(),
                witness: None,
                obstruction: Some(of),
                search_bounds: None,
            }
        }
        DeltaVerdict::Unknown { dim_bound } => DeltaVerdictFile {
            status: "unknown".into(),
            witness: None,
            obstruction: None,
            search_bounds: Some(SearchBoundsFile { dim_bound: *dim_bound }),
        },
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DvrReportFile {
    pub generic_ok: bool,
    pub special_ok: bool,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generic_iso: Option<MorphismFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_iso: Option<MorphismFile>,
}

pub fn dvr_report_to_file(r: &DvrReport) -> DvrReportFile {
    DvrReportFile {
        generic_ok: r.generic_ok(),
        special_ok: r.special_ok(),
        pass: r.pass(),
        generic_iso: r.generic_iso.as_ref().map(morphism_to_file),
        special_iso: r.special_iso.as_ref().map(morphism_to_file),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub summands: Vec<SummandFile>,
    /// per-vertex base change conjugating the input onto the block sum
    pub change_of_basis: MorphismFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummandFile {
    pub rep: RepFile,
    pub multiplicity: usize,
}

pub fn decomposition_to_file(
    m: &Representation,
    d: &crate::decompose::Decomposition,
) -> DecompositionFile {
    let q = m.quiver();
    DecompositionFile {
        summands: d
            .summands
            .iter()
            .map(|(rep, mult)| SummandFile { rep: rep_to_file(rep), multiplicity: *mult })
            .collect(),
        change_of_basis: (0..q.vertex_count())
            .map(|v| (q.vertex_name(v).to_string(), matrix_to_file(&d.change_of_basis[v])))
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetFile {
    pub dimvec: Vec<usize>,
    pub nodes: Vec<String>,
    /// row i holds the statuses of `nodes[i] <= nodes[j]`
    pub edges: Vec<String>,
    pub hasse: Vec<(usize, usize)>,
    pub unknowns: Vec<(usize, usize)>,
}

pub fn poset_to_file(p: &DegenerationPoset) -> PosetFile {
    PosetFile {
        dimvec: p.dimvec.0.clone(),
        nodes: p.labels.clone(),
        edges: p
            .edges
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| match s {
                        EdgeStatus::Yes => 'Y',
                        EdgeStatus::No => 'N',
                        EdgeStatus::Unknown => '?',
                    })
                    .collect()
            })
            .collect(),
        hasse: p.hasse.clone(),
        unknowns: p.unknowns.clone(),
    }
}

/// Pretty-printed JSON with a trailing newline; the single formatting
/// entry point so every emitter is byte-deterministic.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| bad(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json_str<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

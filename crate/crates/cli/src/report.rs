//! Analysis reports for `analyze`.

use serde::Serialize;

use gorlab_core::algebra::ArtinianAlgebra;
use gorlab_core::classify::{classify, ClassifyOptions, FieldVerdict};
use gorlab_core::field::{Field, FieldSpec};
use gorlab_core::linalg::Subspace;
use gorlab_core::numsgp::{classify_ns, ext1_canonical_type2, Ext1Record, NsRecord, NumericalSemigroup};
use gorlab_core::spec::SCHEMA;
use gorlab_core::Result;

#[derive(Serialize)]
pub struct Certificate {
    /// Basis of the socle ideal `I` with `R/I` Gorenstein.
    pub ideal: Vec<String>,
    /// The functional `w ∈ ω` with `Rw ⊇ mω`, as coordinates in the dual basis.
    pub w: Vec<String>,
}

#[derive(Serialize)]
pub struct AlgebraReport {
    pub schema: &'static str,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub field: FieldSpec,
    pub basis: Vec<String>,
    pub dim: usize,
    pub edim: usize,
    pub cm_type: usize,
    pub residue: usize,
    pub gorenstein: bool,
    pub nearly_gorenstein: bool,
    pub weakly_almost_gorenstein: &'static str,
    pub sv_almost_gorenstein: &'static str,
    pub soc_quotient_gorenstein: &'static str,
    pub max_ideal_self_dual: &'static str,
    pub trace: Vec<String>,
    pub socle: Vec<String>,
    pub wag_by_field: Vec<FieldVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

fn elements<F: Field>(alg: &ArtinianAlgebra<F>, space: &Subspace<F::Elem>) -> Vec<String> {
    space.basis().iter().map(|v| alg.format_element(v)).collect()
}

pub fn analyze_algebra<F: Field>(
    alg: &ArtinianAlgebra<F>,
    label: Option<String>,
    opts: &ClassifyOptions,
    certificates: bool,
) -> Result<AlgebraReport> {
    let rec = classify(alg, opts)?;
    let f = alg.field();
    let certificate = rec.certificate.as_ref().filter(|_| certificates).map(|c| Certificate {
        ideal: elements(alg, &c.ideal),
        w: c.w.iter().map(|x| f.format(x)).collect(),
    });
    Ok(AlgebraReport {
        schema: SCHEMA,
        kind: "artinian",
        label,
        field: f.spec(),
        basis: alg.labels().to_vec(),
        dim: rec.dim,
        edim: rec.edim,
        cm_type: rec.cm_type,
        residue: rec.residue,
        gorenstein: rec.gorenstein,
        nearly_gorenstein: rec.nearly_gorenstein,
        weakly_almost_gorenstein: rec.weakly_almost_gorenstein.as_str(),
        sv_almost_gorenstein: rec.sv_almost_gorenstein.as_str(),
        soc_quotient_gorenstein: rec.soc_quotient_gorenstein.as_str(),
        max_ideal_self_dual: rec.max_ideal_self_dual.as_str(),
        trace: elements(alg, &rec.trace),
        socle: elements(alg, &rec.socle),
        wag_by_field: rec.wag_by_field,
        certificate,
    })
}

#[derive(Serialize)]
pub struct SemigroupReport {
    pub schema: &'static str,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Field of the artinian reduction used for the cross-check.
    pub reduction_field: FieldSpec,
    #[serde(flatten)]
    pub record: NsRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ext1: Option<Ext1Record>,
}

pub fn analyze_semigroup<F: Field>(
    field: F,
    s: &NumericalSemigroup,
    label: Option<String>,
    opts: &ClassifyOptions,
) -> Result<SemigroupReport> {
    let spec = field.spec();
    let record = classify_ns(field, s, opts)?;
    Ok(SemigroupReport {
        schema: SCHEMA,
        kind: "numerical_semigroup",
        label,
        reduction_field: spec,
        record,
        ext1: ext1_canonical_type2(s).ok(),
    })
}

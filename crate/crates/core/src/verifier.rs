//! Catalog of property checks run against single instances or whole corpora.
//!
//! Every check compares exact subspaces or booleans. Engine capacity limits
//! and inconclusive searches become `skipped`; instances outside a
//! statement's premises become `hypothesis_not_met`.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::ArtinianAlgebra;
use crate::classify::{
    max_ideal_self_dual, pow_u128, projective_points, soc_quotient_gorenstein, sv_almost_gorenstein,
    verify_wag_element, wag_search, l57_family_check, ClassifyOptions, Verdict, WagOutcome,
};
use crate::error::{Error, Result};
use crate::families::{gen_c5, gen_ci, gen_e51, gen_l57, gen_random_monomial, gen_random_semigroup, default_vars, E51Form};
use crate::field::{Field, FieldSpec};
use crate::homological::{ext, ext_from_resolution, minimal_presentation, minimal_resolution, tor, trace_and_residue, MinimalPresentation};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::module::{cyclic_module, ideal_module, ModuleRep};
use crate::monomial::{MonomialIdeal, Monomial};
use crate::numsgp::{
    almost_gorenstein_oracle, classify_ns, ext1_canonical_type2, reduction_trace_check, trace_and_residue_ns,
    verify_th26, verify_thb, NumericalSemigroup, Th26Report,
};
use crate::spec::{check_schema, toml_error, AlgebraSpec, AnyAlgebra, Instance, SCHEMA};
use crate::with_algebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckId {
    /// `tr ω = ann Ext¹(ω, Ωω) = ann Tor₁(Tr ω, ω)`, and `tr ω` kills `Ext¹(M, R)`
    /// and `Ext¹(ω, M)` for sampled `M`.
    #[serde(rename = "THM_M_EQ")]
    TraceCharacterizations,
    /// `tr ω ⊆ ann Ext^i(ω, R)` for `i = 1, 2, 3`.
    #[serde(rename = "COR_C14")]
    TraceKillsExt,
    /// `ann M = ann Hom(M, ω)`.
    #[serde(rename = "LEM_4_D0")]
    AnnihilatorDuality,
    /// `tr ω = ann Ext¹(Tr ω, R)`.
    #[serde(rename = "PROP_1_D0")]
    TransposeExt,
    /// The trace of `k[[S]]` maps into the trace of `k[[S]]/(t^c)`.
    #[serde(rename = "LEM_L22")]
    ReductionTrace,
    /// Nearly Gorenstein for `S` and for its reduction modulo `t^{2e}` agree.
    #[serde(rename = "THM_B")]
    NearlyGorensteinReduction,
    /// Traces and residues lift from `k[[S]]/(t^{a(u+1)})` when `t^a` kills `Ext¹(ω, R)`.
    #[serde(rename = "THM_26")]
    TraceLifting,
    /// Type at most two: `m Ext¹(ω, R) = 0` iff nearly Gorenstein.
    #[serde(rename = "SEC4_TYPE2")]
    TypeTwoExt,
    /// Almost Gorenstein `S` iff its reduction modulo `t^{2e}` is weakly almost Gorenstein.
    #[serde(rename = "THM_C")]
    AlmostGorensteinReduction,
    /// Type two and weakly almost Gorenstein implies nearly Gorenstein.
    #[serde(rename = "THM_5")]
    TypeTwoWag,
    /// Weakly almost Gorenstein iff a socle ideal has Gorenstein quotient,
    /// and then `m / soc R` is self-dual.
    #[serde(rename = "THM_511")]
    SocleQuotientChain,
    /// `R / soc R` Gorenstein forces type = embedding dimension; the
    /// `(x^p) + n(others)` family has that property.
    #[serde(rename = "LEM_57")]
    SocleQuotientFamily,
    /// A weakly almost Gorenstein witness `w` has `dim ω/Rw = r - 1` and a
    /// socle kernel of dimension `r - 1`; `ω` has at most `(r-1)n + r - 1` relations.
    #[serde(rename = "LEM_58")]
    WagSequence,
    /// Monomial ideals between `nI` and a complete intersection `I ⊆ n²` give
    /// weakly almost Gorenstein quotients.
    #[serde(rename = "COR_C5")]
    CompleteIntersectionSandwich,
    /// Almost Gorenstein semigroup rings are nearly Gorenstein.
    #[serde(rename = "HHS_AG_NG")]
    AlmostImpliesNearly,
    /// Nearly Gorenstein artinian rings satisfy the socle-colon condition.
    #[serde(rename = "HV_NG_SVAG")]
    NearlyImpliesSocleColon,
}

impl CheckId {
    pub const ALL: [CheckId; 16] = [
        CheckId::TraceCharacterizations,
        CheckId::TraceKillsExt,
        CheckId::AnnihilatorDuality,
        CheckId::TransposeExt,
        CheckId::ReductionTrace,
        CheckId::NearlyGorensteinReduction,
        CheckId::TraceLifting,
        CheckId::TypeTwoExt,
        CheckId::AlmostGorensteinReduction,
        CheckId::TypeTwoWag,
        CheckId::SocleQuotientChain,
        CheckId::SocleQuotientFamily,
        CheckId::WagSequence,
        CheckId::CompleteIntersectionSandwich,
        CheckId::AlmostImpliesNearly,
        CheckId::NearlyImpliesSocleColon,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::TraceCharacterizations => "THM_M_EQ",
            CheckId::TraceKillsExt => "COR_C14",
            CheckId::AnnihilatorDuality => "LEM_4_D0",
            CheckId::TransposeExt => "PROP_1_D0",
            CheckId::ReductionTrace => "LEM_L22",
            CheckId::NearlyGorensteinReduction => "THM_B",
            CheckId::TraceLifting => "THM_26",
            CheckId::TypeTwoExt => "SEC4_TYPE2",
            CheckId::AlmostGorensteinReduction => "THM_C",
            CheckId::TypeTwoWag => "THM_5",
            CheckId::SocleQuotientChain => "THM_511",
            CheckId::SocleQuotientFamily => "LEM_57",
            CheckId::WagSequence => "LEM_58",
            CheckId::CompleteIntersectionSandwich => "COR_C5",
            CheckId::AlmostImpliesNearly => "HHS_AG_NG",
            CheckId::NearlyImpliesSocleColon => "HV_NG_SVAG",
        }
    }

    /// Whether the check runs on numerical semigroups (otherwise on artinian algebras).
    pub fn on_semigroups(self) -> bool {
        matches!(
            self,
            CheckId::ReductionTrace
                | CheckId::NearlyGorensteinReduction
                | CheckId::TraceLifting
                | CheckId::TypeTwoExt
                | CheckId::AlmostGorensteinReduction
                | CheckId::AlmostImpliesNearly
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Format(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
    HypothesisNotMet,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
            Outcome::HypothesisNotMet => "hypothesis_not_met",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: CheckId,
    pub instance_id: String,
    pub verdict: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Replay document for failures.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

/// Limits shared by single checks and suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLimits {
    /// Largest artinian algebra checked.
    pub max_dim: usize,
    /// Largest semigroup reduction `k[[S]]/(t^c)` built.
    pub max_reduction_dim: usize,
    /// Random witness modules per algebra, on top of the fixed ones.
    pub witnesses: usize,
    /// Extension degrees for repeating a negative WAG search.
    pub extension_degrees: Vec<u32>,
}

impl Default for CheckLimits {
    fn default() -> Self {
        CheckLimits { max_dim: 16, max_reduction_dim: 32, witnesses: 5, extension_degrees: vec![1] }
    }
}

impl CheckLimits {
    fn classify_options(&self, seed: u64) -> ClassifyOptions {
        ClassifyOptions { seed, extension_degrees: self.extension_degrees.clone(), ..ClassifyOptions::default() }
    }
}

/// An instance with a stable id and the seed used for its randomized parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub seed: u64,
    pub spec: AlgebraSpec,
}

/// Everything needed to rerun one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayPayload {
    pub schema: String,
    pub check_id: CheckId,
    pub instance_id: String,
    pub seed: u64,
    pub limits: CheckLimits,
    pub instance: AlgebraSpec,
}

impl ReplayPayload {
    pub fn parse(text: &str) -> Result<Self> {
        let p: ReplayPayload = toml::from_str(text).map_err(|e| toml_error(text, &e))?;
        check_schema(text, &p.schema)?;
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("payloads serialize")
    }

    pub fn entry(&self) -> CorpusEntry {
        CorpusEntry { id: self.instance_id.clone(), seed: self.seed, spec: self.instance.clone() }
    }
}

type Finding = (Outcome, Option<String>);

fn pass() -> Finding {
    (Outcome::Pass, None)
}

fn pass_with(note: impl Into<String>) -> Finding {
    (Outcome::Pass, Some(note.into()))
}

fn fail(why: impl Into<String>) -> Finding {
    (Outcome::Fail, Some(why.into()))
}

fn skipped(why: impl Into<String>) -> Finding {
    (Outcome::Skipped, Some(why.into()))
}

fn not_met(why: impl Into<String>) -> Finding {
    (Outcome::HypothesisNotMet, Some(why.into()))
}

fn stable_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Seed for an instance, derived from the suite seed and the instance id.
pub fn instance_seed(suite_seed: u64, id: &str) -> u64 {
    stable_hash(id) ^ suite_seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

// ------------------------------------------------------------ artinian checks

struct ArtContext<'a, F: Field> {
    alg: &'a ArtinianAlgebra<F>,
    spec: &'a AlgebraSpec,
    limits: &'a CheckLimits,
    opts: ClassifyOptions,
    seed: u64,
    omega: ModuleRep<F>,
    trace: OnceCell<(Subspace<F::Elem>, usize)>,
    socle: OnceCell<Subspace<F::Elem>>,
    wag: OnceCell<std::result::Result<WagOutcome<F::Elem>, Error>>,
    presentation: OnceCell<MinimalPresentation<F>>,
    witnesses: OnceCell<Vec<(String, ModuleRep<F>)>>,
}

impl<'a, F: Field> ArtContext<'a, F> {
    fn new(alg: &'a ArtinianAlgebra<F>, spec: &'a AlgebraSpec, limits: &'a CheckLimits, seed: u64) -> Self {
        ArtContext {
            alg,
            spec,
            limits,
            opts: limits.classify_options(seed),
            seed,
            omega: ModuleRep::canonical(alg),
            trace: OnceCell::new(),
            socle: OnceCell::new(),
            wag: OnceCell::new(),
            presentation: OnceCell::new(),
            witnesses: OnceCell::new(),
        }
    }

    fn field(&self) -> &F {
        self.alg.field()
    }

    fn trace(&self) -> &(Subspace<F::Elem>, usize) {
        self.trace.get_or_init(|| {
            let (t, r) = trace_and_residue(self.alg);
            (t.into_space(), r)
        })
    }

    fn socle(&self) -> &Subspace<F::Elem> {
        self.socle.get_or_init(|| ModuleRep::regular(self.alg).socle(self.alg))
    }

    fn cm_type(&self) -> usize {
        self.socle().dim()
    }

    fn nearly_gorenstein(&self) -> bool {
        self.trace().1 <= 1
    }

    fn wag(&self) -> Result<&WagOutcome<F::Elem>> {
        self.wag.get_or_init(|| wag_search(self.alg, &self.opts)).as_ref().map_err(Clone::clone)
    }

    fn presentation(&self) -> &MinimalPresentation<F> {
        self.presentation.get_or_init(|| minimal_presentation(self.alg, &self.omega))
    }

    fn full(&self) -> Subspace<F::Elem> {
        Subspace::full(self.field(), self.alg.dim())
    }

    fn ann_ext(&self, m: &ModuleRep<F>, n: &ModuleRep<F>, i: usize) -> Subspace<F::Elem> {
        if m.dim() == 0 || n.dim() == 0 {
            return self.full();
        }
        ext(self.alg, m, n, i).annihilator(self.alg).into_space()
    }

    fn ann_tor(&self, m: &ModuleRep<F>, n: &ModuleRep<F>, i: usize) -> Subspace<F::Elem> {
        if m.dim() == 0 || n.dim() == 0 {
            return self.full();
        }
        tor(self.alg, m, n, i).annihilator(self.alg).into_space()
    }

    fn random_max_element(&self, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
        let f = self.field();
        let u = self.alg.unit_index();
        (0..self.alg.dim()).map(|i| if i == u { f.zero() } else { f.random(rng) }).collect()
    }

    /// Fixed witnesses `k, m, ω, Tr ω, Ωk, Ωω`, then seeded random ones.
    fn witnesses(&self) -> &[(String, ModuleRep<F>)] {
        self.witnesses.get_or_init(|| {
            let alg = self.alg;
            let f = self.field();
            let k = ModuleRep::residue_field(alg);
            let mut out = vec![
                ("k".to_string(), k.clone()),
                ("m".to_string(), ideal_module(alg, &alg.maximal_ideal_as_ideal())),
                ("ω".to_string(), self.omega.clone()),
                ("Tr ω".to_string(), self.presentation().transpose.clone()),
                ("Ω k".to_string(), minimal_presentation(alg, &k).syzygy),
                ("Ω ω".to_string(), self.presentation().syzygy.clone()),
            ];
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x5eed);
            for t in 0..self.limits.witnesses {
                let a = self.random_max_element(&mut rng);
                let (name, m) = match t % 5 {
                    0 => ("R/(a)", cyclic_module(alg, &alg.ideal_generated_by(&[a]))),
                    1 => {
                        let b = self.random_max_element(&mut rng);
                        ("R/(a,b)", cyclic_module(alg, &alg.ideal_generated_by(&[a, b])))
                    }
                    2 => {
                        let v: Vec<F::Elem> = (0..self.omega.dim()).map(|_| f.random(&mut rng)).collect();
                        ("ω/Rv", self.omega.quotient(alg, &self.omega.generated_by(alg, &[v])))
                    }
                    3 => {
                        let v: Vec<F::Elem> = (0..self.omega.dim()).map(|_| f.random(&mut rng)).collect();
                        ("Rv ⊆ ω", self.omega.submodule(alg, &self.omega.generated_by(alg, &[v])))
                    }
                    _ => {
                        let free = ModuleRep::free(alg, 2);
                        let mut v = a;
                        v.extend(self.random_max_element(&mut rng));
                        ("R²/R(a,b)", free.quotient(alg, &free.generated_by(alg, &[v])))
                    }
                };
                out.push((format!("random {t}: {name}"), m));
            }
            out.retain(|(_, m)| m.dim() > 0);
            out
        })
    }

    fn contains(&self, big: &Subspace<F::Elem>, small: &Subspace<F::Elem>) -> bool {
        big.contains(self.field(), small).unwrap_or(false)
    }

    fn run(&self, check: CheckId) -> Result<Finding> {
        match check {
            CheckId::TraceCharacterizations => self.trace_characterizations(),
            CheckId::TraceKillsExt => self.trace_kills_ext(),
            CheckId::AnnihilatorDuality => self.annihilator_duality(),
            CheckId::TransposeExt => self.transpose_ext(),
            CheckId::TypeTwoWag => self.type_two_wag(),
            CheckId::SocleQuotientChain => self.socle_quotient_chain(),
            CheckId::SocleQuotientFamily => self.socle_quotient_family(),
            CheckId::WagSequence => self.wag_sequence(),
            CheckId::CompleteIntersectionSandwich => self.complete_intersection_sandwich(),
            CheckId::NearlyImpliesSocleColon => self.nearly_implies_socle_colon(),
            other => Ok(skipped(format!("{other} runs on numerical semigroups"))),
        }
    }

    fn trace_characterizations(&self) -> Result<Finding> {
        let tr = &self.trace().0;
        let pres = self.presentation();
        let ext_syz = self.ann_ext(&self.omega, &pres.syzygy, 1);
        if &ext_syz != tr {
            return Ok(fail(format!("tr ω has dim {} but ann Ext¹(ω, Ωω) has dim {}", tr.dim(), ext_syz.dim())));
        }
        let tor_tr = self.ann_tor(&pres.transpose, &self.omega, 1);
        if &tor_tr != tr {
            return Ok(fail(format!("tr ω has dim {} but ann Tor₁(Tr ω, ω) has dim {}", tr.dim(), tor_tr.dim())));
        }
        let regular = ModuleRep::regular(self.alg);
        for (name, m) in self.witnesses() {
            if !self.contains(&self.ann_ext(m, &regular, 1), tr) {
                return Ok(fail(format!("tr ω does not kill Ext¹({name}, R)")));
            }
            if !self.contains(&self.ann_ext(&self.omega, m, 1), tr) {
                return Ok(fail(format!("tr ω does not kill Ext¹(ω, {name})")));
            }
        }
        Ok(pass_with(format!("{} witness modules", self.witnesses().len())))
    }

    fn trace_kills_ext(&self) -> Result<Finding> {
        let tr = &self.trace().0;
        if self.omega.dim() == 0 {
            return Ok(pass());
        }
        let res = minimal_resolution(self.alg, &self.omega, 4);
        let regular = ModuleRep::regular(self.alg);
        for i in 1..=3 {
            let ann = ext_from_resolution(self.alg, &res, &regular, i).annihilator(self.alg).into_space();
            if !self.contains(&ann, tr) {
                return Ok(fail(format!("tr ω ⊄ ann Ext^{i}(ω, R)")));
            }
        }
        Ok(pass())
    }

    fn annihilator_duality(&self) -> Result<Finding> {
        for (name, m) in self.witnesses() {
            let ann = m.annihilator(self.alg).into_space();
            let dual = crate::homological::hom_module(self.alg, m, &self.omega).module;
            let ann_dual = dual.annihilator(self.alg).into_space();
            if ann != ann_dual {
                return Ok(fail(format!(
                    "ann {name} has dim {} but ann Hom({name}, ω) has dim {}",
                    ann.dim(),
                    ann_dual.dim()
                )));
            }
        }
        Ok(pass_with(format!("{} witness modules", self.witnesses().len())))
    }

    fn transpose_ext(&self) -> Result<Finding> {
        let tr = &self.trace().0;
        let ann = self.ann_ext(&self.presentation().transpose, &ModuleRep::regular(self.alg), 1);
        if &ann == tr {
            Ok(pass())
        } else {
            Ok(fail(format!("tr ω has dim {} but ann Ext¹(Tr ω, R) has dim {}", tr.dim(), ann.dim())))
        }
    }

    fn wag_verdict(&self) -> Result<Verdict> {
        Ok(self.wag()?.verdict())
    }

    fn type_two_wag(&self) -> Result<Finding> {
        let r = self.cm_type();
        if r != 2 {
            return Ok(not_met(format!("type {r}")));
        }
        match self.wag_verdict()? {
            Verdict::Yes if self.nearly_gorenstein() => Ok(pass()),
            Verdict::Yes => Ok(fail(format!("type 2, WAG, but residue {}", self.trace().1))),
            Verdict::No => Ok(not_met("not weakly almost Gorenstein")),
            v => Ok(skipped(format!("WAG search {}", v.as_str()))),
        }
    }

    /// No `w ∈ ω` has `Rw ⊇ mω`, by enumerating `ω` up to scalars.
    fn no_wag_element(&self) -> Option<bool> {
        let f = self.field();
        let q = f.order()?;
        let d = self.omega.dim();
        if pow_u128(q, d) > self.opts.iso_cap {
            return None;
        }
        Some(!projective_points(f, q, d).iter().any(|w| verify_wag_element(self.alg, w)))
    }

    fn socle_quotient_chain(&self) -> Result<Finding> {
        match self.wag()? {
            WagOutcome::Yes(cert) => {
                let f = self.field();
                if !self.contains(self.socle(), &cert.ideal) {
                    return Ok(fail("certificate ideal is not inside the socle"));
                }
                let ideal = self.alg.ideal(cert.ideal.clone())?;
                let quotient = self.alg.quotient(&ideal)?;
                let qsoc = ModuleRep::regular(&quotient).socle(&quotient).dim();
                if qsoc != 1 {
                    return Ok(fail(format!("R/I has socle dimension {qsoc}")));
                }
                if !verify_wag_element(self.alg, &cert.w) {
                    return Ok(fail("certificate w has Rw ⊉ mω"));
                }
                let _ = f;
                match max_ideal_self_dual(self.alg, &self.opts).verdict() {
                    Verdict::No => Ok(fail("WAG but m / soc R is not self-dual")),
                    v => Ok(pass_with(format!("self-dual {}", v.as_str()))),
                }
            }
            WagOutcome::No => {
                let mut notes = Vec::new();
                if self.limits.extension_degrees.iter().any(|&s| s > 1) {
                    for &s in self.limits.extension_degrees.iter().filter(|&&s| s > 1) {
                        let v = self.wag_over_extension(s);
                        notes.push(format!("WAG over degree-{s} extension: {v}"));
                    }
                }
                match self.no_wag_element() {
                    Some(true) => {
                        notes.insert(0, "no w ∈ ω with Rw ⊇ mω".into());
                        Ok(pass_with(notes.join("; ")))
                    }
                    Some(false) => Ok(fail("socle search says no, but some w ∈ ω has Rw ⊇ mω")),
                    None => Ok(not_met("WAG = No and ω is too large to enumerate; only WAG = Yes consequences are asserted")),
                }
            }
            WagOutcome::Unknown => Ok(skipped("WAG search inconclusive")),
        }
    }

    fn wag_over_extension(&self, s: u32) -> String {
        let target = self.field().spec().extension(s);
        let run = || -> Result<Verdict> {
            let big = self.alg.change_field(crate::field::FiniteField::new(target.characteristic, target.degree)?)?;
            Ok(wag_search(&big, &self.opts)?.verdict())
        };
        match run() {
            Ok(v) => v.as_str().to_string(),
            Err(e) => format!("skipped ({e})"),
        }
    }

    fn socle_quotient_family(&self) -> Result<Finding> {
        if let AlgebraSpec::MonomialQuotient { vars, generators, .. } = self.spec {
            let ideal = MonomialIdeal::parse(vars, generators)?;
            let report = l57_family_check(self.field().clone(), &ideal)?;
            if let Some((var, p)) = &report.shape {
                return Ok(if report.holds {
                    pass_with(format!("({var}^{p}) + n(others): type {}", report.cm_type))
                } else {
                    fail(format!(
                        "shape ({var}^{p}) + n(others) but type {} and R/soc Gorenstein = {}",
                        report.cm_type, report.soc_quotient_gorenstein
                    ))
                });
            }
        }
        match soc_quotient_gorenstein(self.alg) {
            Some(true) if self.cm_type() == self.alg.edim() => {
                Ok(pass_with(format!("R/soc Gorenstein, type = edim = {}", self.cm_type())))
            }
            Some(true) => Ok(fail(format!("R/soc Gorenstein but type {} ≠ edim {}", self.cm_type(), self.alg.edim()))),
            Some(false) => Ok(not_met("R/soc R is not Gorenstein")),
            None => Ok(not_met("R is a field")),
        }
    }

    fn wag_sequence(&self) -> Result<Finding> {
        let cert = match self.wag()? {
            WagOutcome::Yes(c) => c,
            WagOutcome::No => return Ok(not_met("not weakly almost Gorenstein")),
            WagOutcome::Unknown => return Ok(skipped("WAG search inconclusive")),
        };
        let f = self.field();
        let alg = self.alg;
        let r = self.cm_type();
        let rw = self.omega.generated_by(alg, std::slice::from_ref(&cert.w));
        let coker = self.omega.dim() - rw.dim();
        if coker + 1 != r {
            return Ok(fail(format!("dim ω/Rw = {coker}, type {r}")));
        }
        let cols: Vec<Vec<F::Elem>> =
            (0..alg.dim()).map(|j| self.omega.act_element(f, &alg.basis_vector(j), &cert.w)).collect();
        let ker = kernel(f, &Matrix::from_columns(f, self.omega.dim(), &cols));
        let expect = r.saturating_sub(1);
        if ker.dim() != expect {
            return Ok(fail(format!("kernel of a ↦ aw has dim {}, expected {expect}", ker.dim())));
        }
        if !self.contains(self.socle(), &ker) {
            return Ok(fail("kernel of a ↦ aw is not inside soc R"));
        }
        if r >= 2 {
            let pres = self.presentation();
            let bound = (r - 1) * alg.edim() + (r - 1);
            let relations = pres.presentation.source_rank;
            if pres.cover_rank != r || relations > bound {
                return Ok(fail(format!(
                    "ω needs {} generators and {relations} relations, expected {r} and at most {bound}",
                    pres.cover_rank
                )));
            }
        }
        Ok(pass())
    }

    fn complete_intersection_sandwich(&self) -> Result<Finding> {
        let AlgebraSpec::MonomialQuotient { vars, generators, .. } = self.spec else {
            return Ok(not_met("not a monomial quotient"));
        };
        let ideal = MonomialIdeal::parse(vars, generators)?;
        let Some(ci) = sandwiching_complete_intersection(&ideal)? else {
            return Ok(not_met("no complete intersection I ⊆ n² with nI ⊆ J ⊆ I"));
        };
        let ci: Vec<String> = ci.iter().map(|e| e.to_string()).collect();
        match self.wag_verdict()? {
            Verdict::Yes => Ok(pass_with(format!("I = ci({})", ci.join(",")))),
            Verdict::No => Ok(fail(format!("J between nI and I = ci({}) is not WAG", ci.join(",")))),
            v => Ok(skipped(format!("WAG search {}", v.as_str()))),
        }
    }

    fn nearly_implies_socle_colon(&self) -> Result<Finding> {
        if !self.nearly_gorenstein() {
            return Ok(not_met(format!("residue {}", self.trace().1)));
        }
        match sv_almost_gorenstein(self.alg, self.opts.sv_cap) {
            Some(true) => Ok(pass()),
            Some(false) => Ok(fail("nearly Gorenstein but some ideal violates 0:(0:I) ⊆ I:m")),
            None => Ok(skipped("ideal enumeration above cap or over an infinite field")),
        }
    }
}

/// Exponents `a` with `n·ci(a) ⊆ J ⊆ ci(a)` and every `a_i ≥ 2`, if any.
pub fn sandwiching_complete_intersection(j: &MonomialIdeal) -> Result<Option<Vec<u32>>> {
    let b = j.pure_power_bounds()?;
    let n = j.nvars();
    let gens = j.minimal_generators();
    for mask in 0..(1u32 << n) {
        let a: Vec<u32> = (0..n).map(|i| if mask >> i & 1 == 1 { b[i].saturating_sub(1) } else { b[i] }).collect();
        if a.iter().any(|&e| e < 2) {
            continue;
        }
        let inside_ci = gens.iter().all(|g| (0..n).any(|i| g[i] >= a[i]));
        let contains_n_ci = (0..n).all(|i| {
            (0..n).all(|k| {
                let mut m: Monomial = vec![0; n];
                m[i] = a[i];
                m[k] += 1;
                j.contains(&m)
            })
        });
        if inside_ci && contains_n_ci {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

// ------------------------------------------------------------ semigroup checks

struct NsContext<'a> {
    s: &'a NumericalSemigroup,
    field: FieldSpec,
    limits: &'a CheckLimits,
    opts: ClassifyOptions,
}

impl NsContext<'_> {
    fn reduction_fits(&self, c: i64) -> bool {
        c as usize <= self.limits.max_reduction_dim
    }

    fn run(&self, check: CheckId) -> Result<Finding> {
        let s = self.s;
        let two_e = 2 * s.multiplicity();
        let needs_2e = matches!(check, CheckId::NearlyGorensteinReduction | CheckId::AlmostGorensteinReduction);
        if needs_2e && !self.reduction_fits(two_e) {
            return Ok(skipped(format!("reduction dimension {two_e} above cap {}", self.limits.max_reduction_dim)));
        }
        crate::with_field!(self.field, f => match check {
            CheckId::ReductionTrace => self.reduction_trace(f),
            CheckId::NearlyGorensteinReduction => {
                let rep = verify_thb(f, s)?;
                Ok(if !rep.agree {
                    fail(format!("NG(S) = {} but NG(reduction mod t^{two_e}) = {}", rep.ng_semigroup, rep.ng_reduction))
                } else if !rep.containment.contained {
                    fail(format!("trace of S does not map into the trace mod t^{two_e}"))
                } else {
                    pass_with(format!("NG = {}", rep.ng_semigroup))
                })
            }
            CheckId::TraceLifting => self.trace_lifting(f),
            CheckId::TypeTwoExt => {
                let r = s.cm_type();
                if r > 2 {
                    return Ok(not_met(format!("type {r}")));
                }
                let rec = ext1_canonical_type2(s)?;
                let ng = trace_and_residue_ns(s).1 <= 1;
                Ok(if rec.m_kills == ng {
                    pass_with(format!("m kills Ext¹ = {ng}"))
                } else {
                    fail(format!("m kills Ext¹(ω, R) = {} but NG = {ng}", rec.m_kills))
                })
            }
            CheckId::AlmostGorensteinReduction => {
                let rec = classify_ns(f, s, &self.opts)?;
                Ok(match (rec.ag_via_reduction, rec.crosscheck_failure) {
                    (_, Some(why)) => fail(why),
                    (Verdict::Yes | Verdict::No, None) => pass_with(format!("AG = {}", rec.almost_gorenstein)),
                    (v, None) => skipped(format!("WAG search on the reduction {}", v.as_str())),
                })
            }
            CheckId::AlmostImpliesNearly => {
                if !almost_gorenstein_oracle(s) {
                    return Ok(not_met("not almost Gorenstein"));
                }
                let res = trace_and_residue_ns(s).1;
                Ok(if res <= 1 { pass() } else { fail(format!("almost Gorenstein with residue {res}")) })
            }
            other => Ok(skipped(format!("{other} runs on artinian algebras"))),
        })
    }

    fn reduction_trace<F: Field>(&self, f: F) -> Result<Finding> {
        let s = self.s;
        let mut cs: Vec<i64> = s.minimal_generators().to_vec();
        cs.push(2 * s.multiplicity());
        cs.sort_unstable();
        cs.dedup();
        let mut notes = Vec::new();
        let mut ran = 0;
        for c in cs.into_iter().filter(|&c| self.reduction_fits(c)) {
            let rep = reduction_trace_check(f.clone(), s, c)?;
            ran += 1;
            if !rep.contained {
                return Ok(fail(format!("c = {c}: trace of S does not map into the trace of the reduction")));
            }
            if rep.residue_semigroup < rep.residue_reduction {
                return Ok(fail(format!(
                    "c = {c}: res(S) = {} < res(reduction) = {}",
                    rep.residue_semigroup, rep.residue_reduction
                )));
            }
            if rep.residue_drops {
                notes.push(format!("c = {c}: res {} → {}", rep.residue_semigroup, rep.residue_reduction));
            }
        }
        if ran == 0 {
            return Ok(skipped("every reduction above the dimension cap"));
        }
        Ok(if notes.is_empty() { pass() } else { pass_with(notes.join("; ")) })
    }

    fn trace_lifting<F: Field>(&self, f: F) -> Result<Finding> {
        let s = self.s;
        let r = s.cm_type();
        if r > 2 {
            return Ok(not_met(format!("type {r}: no Ext¹(ω, R) model")));
        }
        let mut candidates: Vec<i64> = s.minimal_generators().to_vec();
        candidates.push(s.conductor().max(1));
        candidates.push(2 * s.multiplicity());
        candidates.retain(|&a| a > 0 && s.contains(a));
        candidates.sort_unstable();
        candidates.dedup();
        let mut checked = Vec::new();
        for &a in &candidates {
            for u in 1..=2u32 {
                if !self.reduction_fits(a * i64::from(u + 1)) {
                    continue;
                }
                match verify_th26(f.clone(), s, a, u)? {
                    Th26Report::HypothesisNotMet { .. } => {}
                    rep @ Th26Report::Checked { .. } => {
                        if !rep.holds() {
                            return Ok(fail(format!("a = {a}, u = {u}: {rep:?}")));
                        }
                        checked.push(format!("({a},{u})"));
                    }
                }
            }
        }
        if checked.is_empty() {
            Ok(not_met("no candidate a with a + K' ⊆ K within the cap"))
        } else {
            Ok(pass_with(format!("(a,u) checked: {}", checked.join(" "))))
        }
    }
}

// ------------------------------------------------------------ running checks

fn finding_of(result: Result<Finding>) -> Finding {
    match result {
        Ok(f) => f,
        Err(e) if e.is_capacity() => skipped(e.to_string()),
        Err(Error::Unsupported(why)) => not_met(why),
        Err(e) => fail(format!("engine error: {e}")),
    }
}

fn assemble(check: CheckId, entry: &CorpusEntry, limits: &CheckLimits, finding: Finding, elapsed: Option<u64>) -> CheckResult {
    let payload = (finding.0 == Outcome::Fail).then(|| {
        ReplayPayload {
            schema: SCHEMA.into(),
            check_id: check,
            instance_id: entry.id.clone(),
            seed: entry.seed,
            limits: limits.clone(),
            instance: entry.spec.clone(),
        }
        .to_text()
    });
    CheckResult {
        check_id: check,
        instance_id: entry.id.clone(),
        verdict: finding.0,
        detail: finding.1,
        payload,
        wall_time_ms: elapsed,
    }
}

/// Runs the given checks on one instance, sharing intermediate results.
pub fn run_checks(checks: &[CheckId], entry: &CorpusEntry, limits: &CheckLimits, timings: bool) -> Vec<CheckResult> {
    let timed = |check: CheckId, f: &dyn Fn() -> Result<Finding>| {
        let start = Instant::now();
        let finding = finding_of(f());
        let elapsed = timings.then(|| start.elapsed().as_millis() as u64);
        assemble(check, entry, limits, finding, elapsed)
    };
    let all_with = |finding: Finding| -> Vec<CheckResult> {
        checks.iter().map(|&c| assemble(c, entry, limits, finding.clone(), None)).collect()
    };
    let instance = match entry.spec.build() {
        Ok(i) => i,
        Err(e) => return all_with(fail(format!("instance does not build: {e}"))),
    };
    match &instance {
        Instance::Algebra(any) => {
            let dim = with_algebra!(any, a => a.dim());
            if dim > limits.max_dim {
                return all_with(skipped(format!("dimension {dim} above cap {}", limits.max_dim)));
            }
            with_algebra!(any, alg => {
                let ctx = ArtContext::new(alg, &entry.spec, limits, entry.seed);
                checks.iter().map(|&c| timed(c, &|| ctx.run(c))).collect()
            })
        }
        Instance::Semigroup { semigroup, field } => {
            let ctx = NsContext { s: semigroup, field: *field, limits, opts: limits.classify_options(entry.seed) };
            checks.iter().map(|&c| timed(c, &|| ctx.run(c))).collect()
        }
    }
}

pub fn run_check(check: CheckId, entry: &CorpusEntry, limits: &CheckLimits) -> CheckResult {
    run_checks(&[check], entry, limits, false).remove(0)
}

/// Reruns the check recorded in a failure payload.
pub fn replay(payload_text: &str) -> Result<CheckResult> {
    let p = ReplayPayload::parse(payload_text)?;
    Ok(run_check(p.check_id, &p.entry(), &p.limits))
}

// ------------------------------------------------------------ suites

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub fields: Vec<FieldSpec>,
    /// Random monomial algebras per field.
    pub random_algebras: usize,
    pub semigroups: usize,
    pub max_embdim: usize,
    pub max_gen: i64,
    /// Empty means every check.
    #[serde(default)]
    pub checks: Vec<CheckId>,
    pub limits: CheckLimits,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            fields: vec![FieldSpec::prime(2), FieldSpec::prime(3)],
            random_algebras: 60,
            semigroups: 60,
            max_embdim: 4,
            max_gen: 13,
            checks: Vec::new(),
            limits: CheckLimits::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub hypothesis_not_met: usize,
}

impl Tally {
    pub fn of<'a>(results: impl IntoIterator<Item = &'a CheckResult>) -> Self {
        let mut t = Tally::default();
        for r in results {
            t.total += 1;
            match r.verdict {
                Outcome::Pass => t.pass += 1,
                Outcome::Fail => t.fail += 1,
                Outcome::Skipped => t.skipped += 1,
                Outcome::HypothesisNotMet => t.hypothesis_not_met += 1,
            }
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub config: SuiteConfig,
    pub instances: usize,
    pub summary: Tally,
    pub by_check: BTreeMap<CheckId, Tally>,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn new(config: SuiteConfig, instances: usize, results: Vec<CheckResult>) -> Self {
        let summary = Tally::of(&results);
        let mut by_check = BTreeMap::new();
        for id in CheckId::ALL {
            let t = Tally::of(results.iter().filter(|r| r.check_id == id));
            if t.total > 0 {
                by_check.insert(id, t);
            }
        }
        SuiteReport { schema: SCHEMA.into(), config, instances, summary, by_check, results }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.verdict == Outcome::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut doc = toml::Table::try_from(self).expect("reports serialize");
        let by_check: toml::Table = self
            .by_check
            .iter()
            .map(|(k, v)| (k.as_str().to_string(), toml::Value::try_from(v).expect("tallies serialize")))
            .collect();
        doc.insert("by_check".into(), toml::Value::Table(by_check));
        toml::to_string(&doc).expect("reports serialize")
    }
}

fn entry(config: &SuiteConfig, spec: AlgebraSpec) -> CorpusEntry {
    let id = format!("{} {}", spec.field(), spec.label().map_or_else(|| spec.to_string(), str::to_string));
    CorpusEntry { seed: instance_seed(config.seed, &id), id, spec }
}

fn powers_of_max_ideal(field: FieldSpec, n: usize, d: u32) -> AlgebraSpec {
    let vars = default_vars(n);
    let gens: Vec<String> = crate::monomial::monomials_of_degree(n, d)
        .iter()
        .map(|m| crate::monomial::format_monomial(&vars, m))
        .collect();
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let g: Vec<&str> = gens.iter().map(String::as_str).collect();
    AlgebraSpec::monomial(field, &names, &g).with_label(format!("({})^{d}", names.join(",")))
}

/// Fixed instances from the worked examples.
pub fn pinned_algebras(field: FieldSpec) -> Result<Vec<AlgebraSpec>> {
    let out = vec![
        AlgebraSpec::monomial(field, &["x"], &["x^4"]).with_label("k[x]/(x^4)"),
        powers_of_max_ideal(field, 2, 2),
        powers_of_max_ideal(field, 2, 3),
        powers_of_max_ideal(field, 2, 4),
        AlgebraSpec::monomial(field, &["x", "y"], &["x^2", "x*y", "y^3"]).with_label("(x^2,xy,y^3)"),
        gen_ci(field, &default_vars(2), &[2, 2])?,
        gen_l57(field, 1, 3)?,
        gen_l57(field, 2, 3)?,
        gen_l57(field, 3, 2)?,
    ];
    Ok(out)
}

/// Instances from the complete-intersection families with exponents 2 and 3.
pub fn family_algebras(field: FieldSpec, seed: u64) -> Result<Vec<AlgebraSpec>> {
    let mut out = Vec::new();
    for exps in [&[2, 2][..], &[2, 3], &[3, 3], &[2, 2, 2], &[2, 2, 3]] {
        out.extend(gen_c5(field, &default_vars(exps.len()), exps, seed, usize::MAX)?);
    }
    for a in 2..=3 {
        for b in 2..=3 {
            for c in 2..=3 {
                for form in [E51Form::A, E51Form::B, E51Form::C] {
                    out.push(gen_e51(field, a, b, c, form)?);
                }
            }
        }
    }
    Ok(out)
}

/// Every instance of a suite, in a fixed order.
pub fn build_corpus(config: &SuiteConfig) -> Result<Vec<CorpusEntry>> {
    let mut specs = Vec::new();
    for &field in &config.fields {
        field.validate()?;
        specs.extend(pinned_algebras(field)?);
        specs.extend(family_algebras(field, config.seed)?);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ stable_hash(&field.to_string()));
        for i in 0..config.random_algebras {
            let nvars = 2 + i % 3;
            let cap = config.limits.max_dim.clamp(1, 10);
            specs.push(gen_random_monomial(field, rng.gen(), nvars, 5, cap)?);
        }
    }
    let ns_field = config.fields.first().copied().unwrap_or(FieldSpec::prime(2));
    for g in gen_random_semigroup(config.seed, config.max_embdim, config.max_gen, config.semigroups)? {
        let label = format!("<{}>", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        specs.push(AlgebraSpec::semigroup(ns_field, &g).with_label(label));
    }
    let mut distinct = std::collections::HashSet::new();
    specs.retain(|s| {
        let key = s.clone().with_label("").normalized().map_or_else(|_| s.to_text(), |n| n.to_text());
        distinct.insert(key)
    });
    let mut entries: Vec<CorpusEntry> = specs.into_iter().map(|s| entry(config, s)).collect();
    let mut seen = std::collections::HashMap::new();
    for e in &mut entries {
        let n = seen.entry(e.id.clone()).or_insert(0usize);
        *n += 1;
        if *n > 1 {
            e.id = format!("{} #{n}", e.id);
            e.seed = instance_seed(config.seed, &e.id);
        }
    }
    Ok(entries)
}

fn checks_for(config: &SuiteConfig, semigroup: bool) -> Vec<CheckId> {
    let chosen: &[CheckId] = if config.checks.is_empty() { &CheckId::ALL } else { &config.checks };
    chosen.iter().copied().filter(|c| c.on_semigroups() == semigroup).collect()
}

/// Runs every selected check over an explicit corpus, in parallel over instances.
pub fn run_corpus(config: &SuiteConfig, corpus: &[CorpusEntry], jobs: Option<usize>, timings: bool) -> Result<SuiteReport> {
    let art = checks_for(config, false);
    let ns = checks_for(config, true);
    let work = || -> Vec<CheckResult> {
        corpus
            .par_iter()
            .map(|e| {
                let checks = if matches!(e.spec, AlgebraSpec::NumericalSemigroup { .. }) { &ns } else { &art };
                run_checks(checks, e, &config.limits, timings)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    let results = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Format(e.to_string()))?
            .install(work),
        None => work(),
    };
    Ok(SuiteReport::new(config.clone(), corpus.len(), results))
}

pub fn run_suite(config: &SuiteConfig, jobs: Option<usize>, timings: bool) -> Result<SuiteReport> {
    let corpus = build_corpus(config)?;
    run_corpus(config, &corpus, jobs, timings)
}

/// Convenience for callers holding an already built algebra.
pub fn entry_for_algebra(any: &AnyAlgebra, id: &str, seed: u64) -> Result<CorpusEntry> {
    let spec = with_algebra!(any, a => AlgebraSpec::from_algebra(a))?;
    Ok(CorpusEntry { id: id.to_string(), seed, spec })
}

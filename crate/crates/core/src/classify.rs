//! Gorenstein-type classification of artinian local algebras: module
//! isomorphism, weakly almost Gorenstein search, the socle-colon almost
//! Gorenstein test, and the combined classification record.

use std::collections::{HashSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{combine_matrices, ArtinianAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::homological::{hom_module, trace_and_residue};
use crate::linalg::{kernel, rank, solve, Matrix, Subspace};
use crate::module::ModuleRep;
use crate::monomial::{grlex_cmp, Monomial, MonomialIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
    Skipped,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
            Verdict::Skipped => "skipped",
        }
    }
}

/// Search limits and the seed for randomized searches.
#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub seed: u64,
    /// Random hyperplanes tried over the rationals.
    pub wag_trials: usize,
    /// Largest `q^(dim soc)` searched exhaustively.
    pub wag_cap: u128,
    /// Largest `q^(dim R)` for which all ideals are enumerated.
    pub sv_cap: u128,
    pub iso_trials: usize,
    /// Largest `q^(dim Hom)` searched exhaustively for an isomorphism.
    pub iso_cap: u128,
    /// Extension degrees `s` for which the WAG search is repeated over `F_{q^s}`.
    pub extension_degrees: Vec<u32>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            seed: 0,
            wag_trials: 200,
            wag_cap: 1 << 20,
            sv_cap: 1 << 12,
            iso_trials: 64,
            iso_cap: 1 << 14,
            extension_degrees: vec![1],
        }
    }
}

pub fn pow_u128(q: u64, e: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

/// Enumerates `F_q^n` in a fixed order.
pub fn nth_vector<F: Field>(field: &F, q: u64, n: usize, mut index: u128) -> Vec<F::Elem> {
    (0..n)
        .map(|_| {
            let d = (index % q as u128) as u64;
            index /= q as u128;
            field.element(d)
        })
        .collect()
}

/// Representatives of the points of `P^{n-1}(F_q)`: first nonzero coordinate 1.
pub fn projective_points<F: Field>(field: &F, q: u64, n: usize) -> Vec<Vec<F::Elem>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        for idx in 0..pow_u128(q, tail) {
            let mut v = vec![field.zero(); lead];
            v.push(field.one());
            v.extend(nth_vector(field, q, tail, idx));
            out.push(v);
        }
    }
    out
}

// ---------------------------------------------------------------- isomorphism

#[derive(Clone, Debug)]
pub enum Isomorphism<E> {
    /// An invertible homomorphism `M → N`, as a matrix.
    Yes(Matrix<E>),
    /// Name of the invariant that differs, or the exhaustive search that failed.
    No(String),
    Unknown,
}

impl<E> Isomorphism<E> {
    pub fn verdict(&self) -> Verdict {
        match self {
            Isomorphism::Yes(_) => Verdict::Yes,
            Isomorphism::No(_) => Verdict::No,
            Isomorphism::Unknown => Verdict::Unknown,
        }
    }
}

fn invariant_mismatch<F: Field>(alg: &ArtinianAlgebra<F>, m: &ModuleRep<F>, n: &ModuleRep<F>) -> Option<String> {
    if m.dim() != n.dim() {
        return Some(format!("dimension {} vs {}", m.dim(), n.dim()));
    }
    let (gm, gn) = (m.min_generator_count(alg), n.min_generator_count(alg));
    if gm != gn {
        return Some(format!("minimal generators {gm} vs {gn}"));
    }
    let (sm, sn) = (m.socle(alg).dim(), n.socle(alg).dim());
    if sm != sn {
        return Some(format!("socle dimension {sm} vs {sn}"));
    }
    let (lm, ln) = (m.loewy_layers(alg), n.loewy_layers(alg));
    if lm != ln {
        return Some(format!("Loewy layers {lm:?} vs {ln:?}"));
    }
    None
}

pub fn module_isomorphic<F: Field>(
    alg: &ArtinianAlgebra<F>,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    opts: &ClassifyOptions,
) -> Isomorphism<F::Elem> {
    if let Some(why) = invariant_mismatch(alg, m, n) {
        return Isomorphism::No(why);
    }
    let f = alg.field();
    if m.dim() == 0 {
        return Isomorphism::Yes(Matrix::zeros(f, 0, 0));
    }
    let hom = hom_module(alg, m, n);
    let maps = hom.basis_maps(alg);
    let h = maps.len();
    let size = m.dim();
    let combine = |c: &[F::Elem]| combine_matrices(f, &maps, c, size);
    let invertible = |mat: &Matrix<F::Elem>| rank(f, mat) == size;
    if h == 0 {
        return Isomorphism::No("Hom(M, N) = 0".into());
    }
    for mat in &maps {
        if invertible(mat) {
            return Isomorphism::Yes(mat.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x1503);
    for _ in 0..opts.iso_trials {
        let c: Vec<F::Elem> = (0..h).map(|_| f.random(&mut rng)).collect();
        let mat = combine(&c);
        if invertible(&mat) {
            return Isomorphism::Yes(mat);
        }
    }
    if let Some(q) = f.order() {
        let total = pow_u128(q, h);
        if total <= opts.iso_cap {
            for idx in 0..total {
                let mat = combine(&nth_vector(f, q, h, idx));
                if invertible(&mat) {
                    return Isomorphism::Yes(mat);
                }
            }
            return Isomorphism::No("no invertible map in Hom(M, N) (exhaustive)".into());
        }
    }
    Isomorphism::Unknown
}

// ------------------------------------------------------------------ WAG search

/// A weakly almost Gorenstein witness: an ideal `I ⊆ soc R` with `R/I`
/// Gorenstein and an element `w ∈ ω` with `ann w = I` and `Rw ⊇ mω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WagCertificate<E> {
    pub ideal: Subspace<E>,
    pub w: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WagOutcome<E> {
    Yes(WagCertificate<E>),
    No,
    Unknown,
}

impl<E> WagOutcome<E> {
    pub fn verdict(&self) -> Verdict {
        match self {
            WagOutcome::Yes(_) => Verdict::Yes,
            WagOutcome::No => Verdict::No,
            WagOutcome::Unknown => Verdict::Unknown,
        }
    }

    pub fn certificate(&self) -> Option<&WagCertificate<E>> {
        match self {
            WagOutcome::Yes(c) => Some(c),
            _ => None,
        }
    }
}

/// `I : m = {a : m a ⊆ I}` for an ideal given as a subspace.
pub fn colon_max_ideal<F: Field>(alg: &ArtinianAlgebra<F>, ideal: &Subspace<F::Elem>) -> Subspace<F::Elem> {
    let f = alg.field();
    let d = alg.dim();
    let gens = alg.generator_indices();
    if gens.is_empty() {
        return Subspace::full(f, d);
    }
    let cols: Vec<Vec<F::Elem>> = (0..d)
        .map(|j| gens.iter().flat_map(|&g| ideal.reduce(f, &alg.basis_product(g, j))).collect())
        .collect();
    kernel(f, &Matrix::from_columns(f, gens.len() * d, &cols))
}

/// `dim soc(R / I)` for an ideal `I ⊆ m`.
pub fn quotient_socle_dim<F: Field>(alg: &ArtinianAlgebra<F>, ideal: &Subspace<F::Elem>) -> usize {
    colon_max_ideal(alg, ideal).dim() - ideal.dim()
}

/// Builds `w` with `w(I) = 0` and `w(s) = 1` for `s` spanning `soc(R/I)`,
/// and checks `Rw ⊇ mω`.
fn certificate_for<F: Field>(
    alg: &ArtinianAlgebra<F>,
    omega: &ModuleRep<F>,
    omega_max: &Subspace<F::Elem>,
    ideal: &Subspace<F::Elem>,
) -> Option<WagCertificate<F::Elem>> {
    let f = alg.field();
    let colon = colon_max_ideal(alg, ideal);
    if colon.dim() != ideal.dim() + 1 {
        return None;
    }
    let mut span = ideal.clone();
    let s = colon.basis().iter().find(|v| span.insert(f, v))?.clone();
    let mut rows: Vec<Vec<F::Elem>> = ideal.basis().to_vec();
    rows.push(s);
    let mut rhs = vec![f.zero(); rows.len()];
    *rhs.last_mut().unwrap() = f.one();
    let w = solve(f, &Matrix::from_rows(alg.dim(), &rows), &rhs)?;
    let rw = omega.generated_by(alg, std::slice::from_ref(&w));
    if rw.contains(f, omega_max).ok()? {
        Some(WagCertificate { ideal: ideal.clone(), w })
    } else {
        None
    }
}

/// Whether `Rw ⊇ mω` for the canonical module of `alg`.
pub fn verify_wag_element<F: Field>(alg: &ArtinianAlgebra<F>, w: &[F::Elem]) -> bool {
    let omega = ModuleRep::canonical(alg);
    let rw = omega.generated_by(alg, &[w.to_vec()]);
    rw.contains(alg.field(), &omega.max_ideal_image(alg)).unwrap_or(false)
}

/// Looks for an ideal `I ⊆ soc R` with `R/I` Gorenstein. Since
/// `soc(R/I) ⊇ soc R / I`, only hyperplanes of the socle and the socle itself
/// can qualify; those are tried in that order.
pub fn wag_search<F: Field>(alg: &ArtinianAlgebra<F>, opts: &ClassifyOptions) -> Result<WagOutcome<F::Elem>> {
    let f = alg.field();
    let omega = ModuleRep::canonical(alg);
    let omega_max = omega.max_ideal_image(alg);
    let soc = ModuleRep::regular(alg).socle(alg);
    let r = soc.dim();
    let in_max = |i: &Subspace<F::Elem>| alg.maximal_ideal().contains(f, i).unwrap_or(false);
    let hyperplane = |normal: &[F::Elem]| -> Subspace<F::Elem> {
        let coords = kernel(f, &Matrix::from_rows(r, &[normal.to_vec()]));
        Subspace::span(f, alg.dim(), coords.basis().iter().map(|c| soc.combine(f, c)).collect::<Vec<_>>())
    };
    let try_ideal = |i: &Subspace<F::Elem>| -> Option<WagCertificate<F::Elem>> {
        if !in_max(i) {
            return None;
        }
        certificate_for(alg, &omega, &omega_max, i)
    };
    match f.order() {
        Some(q) => {
            let size = pow_u128(q, r);
            if size > opts.wag_cap {
                return Err(Error::Capacity { stage: "wag_search".into(), size, cap: opts.wag_cap });
            }
            for normal in projective_points(f, q, r) {
                if let Some(c) = try_ideal(&hyperplane(&normal)) {
                    return Ok(WagOutcome::Yes(c));
                }
            }
            Ok(try_ideal(&soc).map_or(WagOutcome::No, WagOutcome::Yes))
        }
        None => {
            if r <= 1 {
                let i = Subspace::zero(alg.dim());
                if let Some(c) = try_ideal(&i) {
                    return Ok(WagOutcome::Yes(c));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x3a6);
            for t in 0..opts.wag_trials {
                let normal: Vec<F::Elem> = if t < r {
                    (0..r).map(|k| if k == t { f.one() } else { f.zero() }).collect()
                } else {
                    (0..r).map(|_| f.random(&mut rng)).collect()
                };
                if normal.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                if let Some(c) = try_ideal(&hyperplane(&normal)) {
                    return Ok(WagOutcome::Yes(c));
                }
            }
            Ok(try_ideal(&soc).map_or(WagOutcome::Unknown, WagOutcome::Yes))
        }
    }
}

// ------------------------------------------------------------ SV almost Gorenstein

/// `0 : I`
pub fn ideal_annihilator<F: Field>(alg: &ArtinianAlgebra<F>, ideal: &Subspace<F::Elem>) -> Subspace<F::Elem> {
    let f = alg.field();
    let d = alg.dim();
    if ideal.is_zero() {
        return Subspace::full(f, d);
    }
    let cols: Vec<Vec<F::Elem>> = (0..d)
        .map(|j| {
            let ej = alg.basis_vector(j);
            ideal.basis().iter().flat_map(|b| alg.mul(b, &ej)).collect()
        })
        .collect();
    kernel(f, &Matrix::from_columns(f, ideal.dim() * d, &cols))
}

/// All ideals of a finite algebra, by adding one element of `(I : m) / I`
/// at a time starting from the zero ideal.
pub fn enumerate_ideals<F: Field>(alg: &ArtinianAlgebra<F>) -> Vec<Subspace<F::Elem>> {
    let f = alg.field();
    let q = f.order().expect("ideal enumeration needs a finite field");
    let start = Subspace::zero(alg.dim());
    let mut seen: HashSet<Subspace<F::Elem>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(i) = queue.pop_front() {
        let colon = colon_max_ideal(alg, &i);
        let mut span = i.clone();
        let fresh: Vec<Vec<F::Elem>> = colon.basis().iter().filter(|v| span.insert(f, v)).cloned().collect();
        let rel = Subspace::span(f, alg.dim(), fresh.clone());
        for c in projective_points(f, q, rel.dim()) {
            let v = rel.combine(f, &c);
            let mut j = i.clone();
            j.insert(f, &v);
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
        out.push(i);
    }
    out
}

/// `0:(0:I) ⊆ I:m` for every ideal `I`; `None` when the enumeration would
/// exceed the cap or the field is infinite.
pub fn sv_almost_gorenstein<F: Field>(alg: &ArtinianAlgebra<F>, cap: u128) -> Option<bool> {
    let f = alg.field();
    let q = f.order()?;
    if pow_u128(q, alg.dim()) > cap {
        return None;
    }
    Some(enumerate_ideals(alg).iter().all(|i| {
        let double = ideal_annihilator(alg, &ideal_annihilator(alg, i));
        colon_max_ideal(alg, i).contains(f, &double).unwrap_or(false)
    }))
}

// ------------------------------------------------------------ classification

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldVerdict {
    pub field: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ClassificationRecord<E> {
    pub dim: usize,
    pub edim: usize,
    pub cm_type: usize,
    pub residue: usize,
    pub gorenstein: bool,
    pub nearly_gorenstein: bool,
    pub weakly_almost_gorenstein: Verdict,
    pub wag_by_field: Vec<FieldVerdict>,
    pub sv_almost_gorenstein: Verdict,
    pub soc_quotient_gorenstein: Verdict,
    pub max_ideal_self_dual: Verdict,
    pub trace: Subspace<E>,
    pub socle: Subspace<E>,
    pub certificate: Option<WagCertificate<E>>,
}

/// `m / soc R` as a module (with `soc R ∩ m` when `R` is a field).
pub fn max_ideal_mod_socle<F: Field>(alg: &ArtinianAlgebra<F>) -> ModuleRep<F> {
    let f = alg.field();
    let regular = ModuleRep::regular(alg);
    let m = alg.maximal_ideal();
    let soc = regular.socle(alg).intersect(f, m).expect("same ambient");
    regular.subquotient(alg, m, &soc)
}

/// Is `m / soc R` isomorphic to its Matlis dual `Hom(m / soc R, ω)`?
pub fn max_ideal_self_dual<F: Field>(alg: &ArtinianAlgebra<F>, opts: &ClassifyOptions) -> Isomorphism<F::Elem> {
    let x = max_ideal_mod_socle(alg);
    let dual = hom_module(alg, &x, &ModuleRep::canonical(alg)).module;
    module_isomorphic(alg, &x, &dual, opts)
}

/// Whether `R / soc R` is Gorenstein; `None` when `R` is a field.
pub fn soc_quotient_gorenstein<F: Field>(alg: &ArtinianAlgebra<F>) -> Option<bool> {
    let soc = ModuleRep::regular(alg).socle(alg);
    if alg.dim() == 1 {
        return None;
    }
    Some(quotient_socle_dim(alg, &soc) == 1)
}

fn wag_over_extension<F: Field>(
    alg: &ArtinianAlgebra<F>,
    s: u32,
    opts: &ClassifyOptions,
) -> FieldVerdict {
    let spec = alg.field().spec();
    let target = spec.extension(s);
    let label = target.to_string();
    let run = || -> Result<Verdict> {
        let field = FiniteField::new(target.characteristic, target.degree)?;
        let big = alg.change_field(field)?;
        Ok(wag_search(&big, opts)?.verdict())
    };
    match run() {
        Ok(v) => FieldVerdict { field: label, verdict: v, note: None },
        Err(e) => FieldVerdict { field: label, verdict: Verdict::Skipped, note: Some(e.to_string()) },
    }
}

pub fn classify<F: Field>(alg: &ArtinianAlgebra<F>, opts: &ClassifyOptions) -> Result<ClassificationRecord<F::Elem>> {
    let f = alg.field();
    let (trace, residue) = trace_and_residue(alg);
    let socle = ModuleRep::regular(alg).socle(alg);
    let wag = wag_search(alg, opts).map_err(|e| match e {
        Error::Capacity { size, cap, .. } => Error::Capacity { stage: "classify/wag_search".into(), size, cap },
        other => other,
    })?;
    let mut wag_by_field = vec![FieldVerdict { field: f.spec().to_string(), verdict: wag.verdict(), note: None }];
    if f.order().is_some() {
        for &s in opts.extension_degrees.iter().filter(|&&s| s > 1) {
            wag_by_field.push(wag_over_extension(alg, s, opts));
        }
    }
    let sv = match sv_almost_gorenstein(alg, opts.sv_cap) {
        Some(b) => Verdict::from_bool(b),
        None => Verdict::Skipped,
    };
    let socq = soc_quotient_gorenstein(alg).map_or(Verdict::Skipped, Verdict::from_bool);
    Ok(ClassificationRecord {
        dim: alg.dim(),
        edim: alg.edim(),
        cm_type: socle.dim(),
        residue,
        gorenstein: residue == 0,
        nearly_gorenstein: residue <= 1,
        weakly_almost_gorenstein: wag.verdict(),
        wag_by_field,
        sv_almost_gorenstein: sv,
        soc_quotient_gorenstein: socq,
        max_ideal_self_dual: max_ideal_self_dual(alg, opts).verdict(),
        trace: trace.into_space(),
        socle,
        certificate: wag.certificate().cloned(),
    })
}

// ------------------------------------------------------------ (x^p) + n(x_2..x_n)

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct L57Report {
    pub nvars: usize,
    pub cm_type: usize,
    pub soc_quotient_gorenstein: bool,
    /// The distinguished variable and exponent when the ideal has the shape
    /// `(x^p) + n(other variables)`.
    pub shape: Option<(String, u32)>,
    pub holds: bool,
}

/// Minimal generators of `(x_lead^p) + n(all variables except x_lead)`.
pub fn l57_generators(nvars: usize, lead: usize, p: u32) -> Vec<Monomial> {
    let mut gens = Vec::new();
    let mut pure = vec![0u32; nvars];
    pure[lead] = p;
    gens.push(pure);
    for i in (0..nvars).filter(|&i| i != lead) {
        for j in 0..nvars {
            let mut m = vec![0u32; nvars];
            m[i] += 1;
            m[j] += 1;
            gens.push(m);
        }
    }
    let mut gens = MonomialIdeal::new((0..nvars).map(|i| format!("v{i}")).collect(), gens)
        .expect("valid names")
        .minimal_generators();
    gens.sort_by(|a, b| grlex_cmp(a, b));
    gens
}

fn l57_shape(ideal: &MonomialIdeal) -> Option<(usize, u32)> {
    let n = ideal.nvars();
    let mut mine = ideal.minimal_generators();
    mine.sort_by(|a, b| grlex_cmp(a, b));
    (0..n).find_map(|lead| {
        let p = mine
            .iter()
            .find(|g| g[lead] >= 2 && g.iter().enumerate().all(|(j, &e)| j == lead || e == 0))?[lead];
        (l57_generators(n, lead, p) == mine).then_some((lead, p))
    })
}

pub fn l57_family_check<F: Field>(field: F, ideal: &MonomialIdeal) -> Result<L57Report> {
    let alg = ArtinianAlgebra::from_monomial_ideal(field, ideal)?;
    let cm_type = ModuleRep::regular(&alg).socle(&alg).dim();
    let socq = soc_quotient_gorenstein(&alg).unwrap_or(false);
    let shape = l57_shape(ideal);
    let holds = shape.is_none() || (cm_type == ideal.nvars() && socq);
    Ok(L57Report {
        nvars: ideal.nvars(),
        cm_type,
        soc_quotient_gorenstein: socq,
        shape: shape.map(|(lead, p)| (ideal.vars()[lead].clone(), p)),
        holds,
    })
}

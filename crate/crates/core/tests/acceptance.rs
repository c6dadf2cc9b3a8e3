//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! process exits non-zero if any criterion fails.
//!
//! Module-theoretic quantities are recomputed here from first principles
//! (Hom as a commuting-matrix system, the socle as a common kernel, value sets
//! of semigroup ideals by brute force) and compared against the library.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use gorlab_core::algebra::ArtinianAlgebra;
use gorlab_core::classify::{max_ideal_self_dual, sv_almost_gorenstein, wag_search, ClassifyOptions, Verdict, WagOutcome};
use gorlab_core::families::{default_vars, gen_c5, gen_e51, gen_l57, gen_random_semigroup, E51Form};
use gorlab_core::field::{Field, FieldSpec, FiniteField};
use gorlab_core::homological::trace_and_residue;
use gorlab_core::linalg::{kernel, Matrix, Subspace};
use gorlab_core::numsgp::{
    artinian_reduction, classify_ns, ext1_canonical_type2, trace_and_residue_ns, NumericalSemigroup,
};
use gorlab_core::spec::{AlgebraSpec, AnyAlgebra, Instance};
use gorlab_core::verifier::{build_corpus, run_corpus, CheckId, CorpusEntry, Outcome, SuiteConfig, SuiteReport, Tally};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

macro_rules! ensure {
    ($cond:expr, $($why:tt)+) => {
        if !$cond {
            return Err(format!($($why)+));
        }
    };
}

// ------------------------------------------------------------ linear-algebra oracles

/// A module given by the action matrix of every basis element of the algebra.
struct Mod<E> {
    dim: usize,
    acts: Vec<Matrix<E>>,
}

fn regular<F: Field>(alg: &ArtinianAlgebra<F>) -> Mod<F::Elem> {
    Mod { dim: alg.dim(), acts: alg.mult_matrices().to_vec() }
}

/// `Hom_k(R, k)` with `(a f)(b) = f(ab)`.
fn dual<F: Field>(alg: &ArtinianAlgebra<F>) -> Mod<F::Elem> {
    Mod { dim: alg.dim(), acts: alg.mult_matrices().iter().map(Matrix::transpose).collect() }
}

fn residue_module<F: Field>(alg: &ArtinianAlgebra<F>) -> Mod<F::Elem> {
    let f = alg.field();
    let acts = (0..alg.dim())
        .map(|i| {
            let v = if i == alg.unit_index() { f.one() } else { f.zero() };
            Matrix::new(1, 1, vec![v]).unwrap()
        })
        .collect();
    Mod { dim: 1, acts }
}

/// The submodule of `R` spanned by `space`, in the coordinates of its basis.
fn ideal_module<F: Field>(alg: &ArtinianAlgebra<F>, space: &Subspace<F::Elem>) -> Mod<F::Elem> {
    let f = alg.field();
    let acts = alg
        .mult_matrices()
        .iter()
        .map(|m| {
            let cols: Vec<Vec<F::Elem>> =
                space.basis().iter().map(|b| space.coordinates(f, &m.mul_vec(f, b)).expect("ideal is stable")).collect();
            Matrix::from_columns(f, space.dim(), &cols)
        })
        .collect();
    Mod { dim: space.dim(), acts }
}

/// `R / I` in the coordinates of the non-pivot basis vectors.
fn quotient_module<F: Field>(alg: &ArtinianAlgebra<F>, ideal: &Subspace<F::Elem>) -> Mod<F::Elem> {
    let f = alg.field();
    let keep = ideal.complement_columns();
    let acts = alg
        .mult_matrices()
        .iter()
        .map(|m| {
            let cols: Vec<Vec<F::Elem>> = keep
                .iter()
                .map(|&c| {
                    let r = ideal.reduce(f, &m.column(c));
                    keep.iter().map(|&k| r[k].clone()).collect()
                })
                .collect();
            Matrix::from_columns(f, keep.len(), &cols)
        })
        .collect();
    Mod { dim: keep.len(), acts }
}

/// Basis of `Hom_R(M, N)` as `N.dim × M.dim` matrices: solutions of
/// `x φ = φ x` for the algebra generators `x`.
fn hom<F: Field>(alg: &ArtinianAlgebra<F>, m: &Mod<F::Elem>, n: &Mod<F::Elem>) -> Vec<Matrix<F::Elem>> {
    let f = alg.field();
    let (rows, cols) = (n.dim, m.dim);
    let var = |r: usize, c: usize| r * cols + c;
    let mut eqs = Vec::new();
    for &g in alg.generator_indices() {
        let (ng, mg) = (&n.acts[g], &m.acts[g]);
        for r in 0..rows {
            for c in 0..cols {
                let mut eq = vec![f.zero(); rows * cols];
                for k in 0..rows {
                    eq[var(k, c)] = f.add(&eq[var(k, c)], ng.get(r, k));
                }
                for k in 0..cols {
                    eq[var(r, k)] = f.sub(&eq[var(r, k)], mg.get(k, c));
                }
                eqs.push(eq);
            }
        }
    }
    if rows * cols == 0 {
        return Vec::new();
    }
    let sol = if eqs.is_empty() { Subspace::full(f, rows * cols) } else { kernel(f, &Matrix::from_rows(rows * cols, &eqs)) };
    sol.basis().iter().map(|v| Matrix::new(rows, cols, v.clone()).unwrap()).collect()
}

/// `{a ∈ R : a v_j = 0 for all j}` where `a` acts on the vectors through `acts`.
fn annihilator_of<F: Field>(alg: &ArtinianAlgebra<F>, images: impl Fn(usize) -> Vec<F::Elem>) -> Subspace<F::Elem> {
    let f = alg.field();
    let cols: Vec<Vec<F::Elem>> = (0..alg.dim()).map(images).collect();
    let len = cols.first().map_or(0, Vec::len);
    if len == 0 {
        return Subspace::full(f, alg.dim());
    }
    kernel(f, &Matrix::from_columns(f, len, &cols))
}

fn module_annihilator<F: Field>(alg: &ArtinianAlgebra<F>, m: &Mod<F::Elem>) -> Subspace<F::Elem> {
    annihilator_of(alg, |i| m.acts[i].entries().to_vec())
}

/// Annihilator of `Hom_R(M, N)`: `a` with `a φ = 0` for every basis map `φ`.
fn hom_annihilator<F: Field>(alg: &ArtinianAlgebra<F>, m: &Mod<F::Elem>, n: &Mod<F::Elem>) -> Subspace<F::Elem> {
    let f = alg.field();
    let maps = hom(alg, m, n);
    annihilator_of(alg, |i| maps.iter().flat_map(|phi| n.acts[i].mul(f, phi).entries().to_vec()).collect())
}

/// Sum of the images of all maps `ω → R`.
fn naive_trace<F: Field>(alg: &ArtinianAlgebra<F>) -> Subspace<F::Elem> {
    let f = alg.field();
    let images = hom(alg, &dual(alg), &regular(alg)).into_iter().flat_map(|phi| (0..phi.cols()).map(move |c| phi.column(c)));
    Subspace::span(f, alg.dim(), images)
}

fn naive_socle<F: Field>(alg: &ArtinianAlgebra<F>) -> Subspace<F::Elem> {
    let f = alg.field();
    let rows: Vec<Vec<F::Elem>> =
        alg.generator_indices().iter().flat_map(|&g| alg.mult_matrix(g).row_vecs()).collect();
    if rows.is_empty() {
        return Subspace::full(f, alg.dim());
    }
    kernel(f, &Matrix::from_rows(alg.dim(), &rows))
}

/// `dim (I : m) / I`, with `I : m` cut out by the functionals vanishing on `I`.
fn colon_socle_dim<F: Field>(alg: &ArtinianAlgebra<F>, ideal: &Subspace<F::Elem>) -> usize {
    let f = alg.field();
    let d = alg.dim();
    let perp: Vec<Vec<F::Elem>> = if ideal.dim() == 0 {
        Subspace::full(f, d).basis().to_vec()
    } else {
        kernel(f, &Matrix::from_rows(d, ideal.basis())).basis().to_vec()
    };
    let mut rows = Vec::new();
    for &g in alg.generator_indices() {
        let mg = alg.mult_matrix(g);
        for lam in &perp {
            rows.push((0..d).map(|j| (0..d).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&lam[k], mg.get(k, j))))).collect());
        }
    }
    let colon = if rows.is_empty() { Subspace::full(f, d) } else { kernel(f, &Matrix::from_rows(d, &rows)) };
    colon.dim() - ideal.dim()
}

/// `Rw` and `mω` inside the dual module.
fn cyclic_and_max<F: Field>(alg: &ArtinianAlgebra<F>, w: &[F::Elem]) -> (Subspace<F::Elem>, Subspace<F::Elem>) {
    let f = alg.field();
    let om = dual(alg);
    let acts = &om.acts;
    let rw = Subspace::span(f, alg.dim(), acts.iter().map(|a| a.mul_vec(f, w)));
    let m_omega = Subspace::span(
        f,
        alg.dim(),
        alg.generator_indices().iter().flat_map(|&g| (0..alg.dim()).map(move |j| acts[g].column(j))),
    );
    (rw, m_omega)
}

fn certificate_holds<F: Field>(alg: &ArtinianAlgebra<F>, w: &[F::Elem]) -> bool {
    let (rw, m_omega) = cyclic_and_max(alg, w);
    rw.contains(alg.field(), &m_omega).unwrap()
}

// ------------------------------------------------------------ semigroup oracles

/// A numerical semigroup as a membership table, with value sets of its
/// fractional ideals computed on a window `[-n, n]`.
struct Sg {
    gens: Vec<i64>,
    member: Vec<bool>,
    frob: i64,
    n: i64,
}

impl Sg {
    fn new(gens: &[i64]) -> Self {
        let n = 4 * (gens.iter().max().unwrap() + 1) * (gens.iter().min().unwrap() + 1) + 20;
        let mut member = vec![false; n as usize + 1];
        member[0] = true;
        for z in 1..=n as usize {
            member[z] = gens.iter().any(|&g| z >= g as usize && member[z - g as usize]);
        }
        let frob = (0..=n).rev().find(|&z| !member[z as usize]).unwrap_or(-1);
        assert!(3 * frob + 10 < n, "window too small");
        Sg { gens: gens.to_vec(), member, frob, n }
    }

    fn has(&self, z: i64) -> bool {
        z >= 0 && (z > self.n || self.member[z as usize])
    }

    fn window(&self) -> impl Iterator<Item = i64> {
        -self.n..=self.n
    }

    fn canonical(&self) -> BTreeSet<i64> {
        self.window().filter(|&z| !self.has(self.frob - z)).collect()
    }

    fn max_ideal(&self) -> BTreeSet<i64> {
        (1..=self.n).filter(|&z| self.has(z)).collect()
    }

    /// `{z : z + b ∈ target for all b ∈ b_set}`; both sets contain every value
    /// above the Frobenius number plus the window margin.
    fn colon(&self, target: &BTreeSet<i64>, b_set: &BTreeSet<i64>) -> BTreeSet<i64> {
        let bound = 2 * self.frob + 2;
        let small: Vec<i64> = b_set.iter().copied().filter(|&b| b <= bound).collect();
        let in_target = |z: i64| z > self.n || target.contains(&z);
        (-bound..=self.n).filter(|&z| small.iter().all(|&b| in_target(z + b))).collect()
    }

    fn semigroup(&self) -> BTreeSet<i64> {
        (0..=self.n).filter(|&z| self.has(z)).collect()
    }

    fn sum(&self, a: &BTreeSet<i64>, b: &BTreeSet<i64>) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for &x in a {
            for &y in b {
                if x + y <= self.n {
                    out.insert(x + y);
                }
            }
        }
        out
    }

    fn trace(&self) -> BTreeSet<i64> {
        let k = self.canonical();
        let dual = self.colon(&self.semigroup(), &k);
        self.sum(&k, &dual)
    }

    fn residue(&self) -> usize {
        let tr = self.trace();
        self.semigroup().iter().filter(|z| !tr.contains(z)).count()
    }

    fn trace_generators(&self) -> Vec<i64> {
        let tr = self.trace();
        let m = self.max_ideal();
        tr.iter().copied().filter(|&t| !m.iter().any(|&s| s < t && tr.contains(&(t - s)))).collect()
    }

    fn almost_gorenstein(&self) -> bool {
        let k = self.canonical();
        self.sum(&self.max_ideal(), &k).iter().all(|&z| self.has(z))
    }

    /// `K' / K` as value classes and whether `M + K' ⊆ K`.
    fn ext1(&self) -> (Vec<i64>, bool) {
        let s = self.semigroup();
        let k = self.canonical();
        let kk = self.colon(&s, &self.colon(&s, &k));
        let classes = kk.iter().copied().filter(|z| !k.contains(z)).collect();
        let in_k = |z: i64| z > self.n || k.contains(&z);
        let kills = self.sum(&self.max_ideal(), &kk).iter().all(|&z| in_k(z));
        (classes, kills)
    }

    fn embedding_dimension(&self) -> usize {
        NumericalSemigroup::new(&self.gens).unwrap().minimal_generators().len()
    }
}

// ------------------------------------------------------------ shared corpus

struct Corpus {
    config: SuiteConfig,
    report: SuiteReport,
    algebras: Vec<(CorpusEntry, ArtinianAlgebra<FiniteField>, WagOutcome<u32>)>,
    semigroups: Vec<Vec<i64>>,
}

fn finite(spec: &AlgebraSpec) -> ArtinianAlgebra<FiniteField> {
    match spec.build().expect("corpus spec builds") {
        Instance::Algebra(AnyAlgebra::Finite(a)) => a,
        _ => panic!("expected an algebra over a finite field"),
    }
}

fn options(seed: u64) -> ClassifyOptions {
    ClassifyOptions { seed, ..ClassifyOptions::default() }
}

fn load_corpus() -> Corpus {
    let config = SuiteConfig { seed: 2024, random_algebras: 100, ..SuiteConfig::default() };
    let entries = build_corpus(&config).expect("corpus builds");
    let report = run_corpus(&config, &entries, None, false).expect("suite runs");
    let mut algebras = Vec::new();
    let mut semigroups = Vec::new();
    for e in entries {
        match &e.spec {
            AlgebraSpec::NumericalSemigroup { generators, .. } => semigroups.push(generators.clone()),
            spec => {
                let alg = finite(spec);
                if alg.dim() <= config.limits.max_dim {
                    let wag = wag_search(&alg, &options(e.seed)).expect("finite-field search stays under the cap");
                    algebras.push((e, alg, wag));
                }
            }
        }
    }
    Corpus { config, report, algebras, semigroups }
}

fn tally(c: &Corpus, id: CheckId) -> Tally {
    c.report.by_check.get(&id).cloned().unwrap_or_default()
}

fn no_failures(c: &Corpus, ids: &[CheckId]) -> Check {
    let mut parts = Vec::new();
    for &id in ids {
        let t = tally(c, id);
        if t.fail > 0 {
            let first = c.report.results.iter().find(|r| r.check_id == id && r.verdict == Outcome::Fail).unwrap();
            return Err(format!("{id}: {} failures, first on {}: {}", t.fail, first.instance_id, first.detail.clone().unwrap_or_default()));
        }
        ensure!(t.pass > 0, "{id} never passed");
        parts.push(format!("{id} {}/{}", t.pass, t.total));
    }
    Ok(parts.join(", "))
}

fn is_random(e: &CorpusEntry) -> bool {
    e.spec.label().is_some_and(|l| l.starts_with("random_monomial"))
}

fn is_pinned(e: &CorpusEntry) -> bool {
    !is_random(e) && !e.spec.label().is_some_and(|l| l.starts_with("c5") || l.starts_with("e51"))
}

// ------------------------------------------------------------ criteria

fn semigroup_378() -> Check {
    let oracle = Sg::new(&[3, 7, 8]);
    ensure!(oracle.trace_generators() == [6, 7, 8], "oracle trace head {:?}", oracle.trace_generators());
    ensure!(oracle.residue() == 2, "oracle residue {}", oracle.residue());

    let s = NumericalSemigroup::new(&[3, 7, 8]).unwrap();
    let (tr, res) = trace_and_residue_ns(&s);
    ensure!(tr.generators(&s) == [6, 7, 8], "trace head {:?}", tr.generators(&s));
    ensure!(res == 2, "residue {res}");

    let f = FiniteField::prime(2).unwrap();
    let red = artinian_reduction(f, &s, 3).unwrap();
    ensure!(red.dim() == 3, "reduction has dim {}", red.dim());
    let m = red.maximal_ideal();
    for a in m.basis() {
        for b in m.basis() {
            ensure!(red.is_zero_element(&red.mul(a, b)), "m^2 ≠ 0 in the reduction");
        }
    }
    let naive_res = red.dim() - naive_trace(&red).dim();
    let (_, engine_res) = trace_and_residue(&red);
    ensure!(naive_res == 1 && engine_res == 1, "reduction residue: oracle {naive_res}, engine {engine_res}");
    Ok("head {6,7,8}, res 2; k[[S]]/(t^3) has dim 3, m^2 = 0, res 1".into())
}

fn trace_equalities(c: &Corpus) -> Check {
    let random_small = c.algebras.iter().filter(|(e, a, _)| is_random(e) && a.dim() <= 10).count();
    ensure!(random_small >= 100, "only {random_small} random algebras of dim ≤ 10");
    let mut compared = 0;
    for (e, alg, _) in c.algebras.iter().filter(|(e, a, _)| a.dim() <= 10 && (is_random(e) || is_pinned(e))) {
        let (tr, _) = trace_and_residue(alg);
        ensure!(tr.space() == &naive_trace(alg), "{}: library trace differs from Hom(ω, R) oracle", e.id);
        compared += 1;
    }
    let pinned = c.algebras.iter().filter(|(e, _, _)| is_pinned(e)).count();
    let checks = no_failures(c, &[CheckId::TraceCharacterizations, CheckId::TransposeExt])?;
    Ok(format!("{random_small} random + {pinned} pinned; oracle trace on {compared}; {checks}"))
}

fn witness_count(detail: &Option<String>) -> usize {
    detail.as_deref().and_then(|d| d.split_whitespace().next()).and_then(|n| n.parse().ok()).unwrap_or(0)
}

fn annihilators(c: &Corpus) -> Check {
    let checks = no_failures(c, &[CheckId::TraceKillsExt, CheckId::AnnihilatorDuality])?;
    let fewest = c
        .report
        .results
        .iter()
        .filter(|r| r.check_id == CheckId::AnnihilatorDuality && r.verdict == Outcome::Pass)
        .map(|r| witness_count(&r.detail))
        .min()
        .unwrap_or(0);
    ensure!(fewest >= 5, "a passing instance used only {fewest} witness modules");
    let mut modules = 0;
    for (e, alg, _) in c.algebras.iter().filter(|(_, a, _)| a.dim() <= 10) {
        let omega = dual(alg);
        let m = alg.maximal_ideal().clone();
        let mut witnesses = vec![
            ("k", residue_module(alg)),
            ("R", regular(alg)),
            ("m", ideal_module(alg, &m)),
            ("R/soc", quotient_module(alg, &naive_socle(alg))),
        ];
        if let Some(&g) = alg.generator_indices().first() {
            let ideal = Subspace::span(alg.field(), alg.dim(), (0..alg.dim()).map(|j| alg.mult_matrix(g).column(j)));
            witnesses.push(("R/(x)", quotient_module(alg, &ideal)));
        }
        for (name, w) in witnesses.iter().filter(|(_, w)| w.dim > 0) {
            let left = module_annihilator(alg, w);
            let right = hom_annihilator(alg, w, &omega);
            ensure!(left == right, "{}: ann {name} ≠ ann Hom({name}, ω)", e.id);
            modules += 1;
        }
    }
    Ok(format!("{checks}; ≥ {fewest} witnesses per instance; oracle duality on {modules} modules"))
}

fn projective_vectors<F: Field>(f: &F, basis: &[Vec<F::Elem>], ambient: usize) -> Vec<Vec<F::Elem>> {
    let q = f.order().unwrap();
    let total = q.pow(basis.len() as u32);
    (1..total)
        .map(|mut idx| {
            let mut v = vec![f.zero(); ambient];
            for b in basis {
                let c = f.element(idx % q);
                idx /= q;
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.add(x, &f.mul(&c, y));
                }
            }
            v
        })
        .collect()
}

fn all_subspaces<F: Field>(f: &F, space: &Subspace<F::Elem>) -> Vec<Subspace<F::Elem>> {
    let vectors = projective_vectors(f, space.basis(), space.ambient());
    let mut seen = HashSet::new();
    let mut queue = vec![Subspace::zero(space.ambient())];
    seen.insert(queue[0].clone());
    while let Some(u) = queue.pop() {
        for v in &vectors {
            let mut bigger = u.clone();
            if bigger.insert(f, v) && seen.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    seen.into_iter().collect()
}

fn powers_of_max(field: FieldSpec, d: u32) -> ArtinianAlgebra<FiniteField> {
    let gens: Vec<String> = (0..=d).map(|i| format!("x^{}*y^{}", d - i, i)).collect();
    let g: Vec<&str> = gens.iter().map(String::as_str).collect();
    finite(&AlgebraSpec::monomial(field, &["x", "y"], &g))
}

fn cube_and_fourth_power() -> Check {
    for p in [2, 3] {
        let alg = powers_of_max(FieldSpec::prime(p), 3);
        let WagOutcome::Yes(cert) = wag_search(&alg, &options(0)).unwrap() else {
            return Err(format!("(x,y)^3 over F{p} is not WAG"));
        };
        ensure!(certificate_holds(&alg, &cert.w), "(x,y)^3 over F{p}: Rw ⊉ mω");
        ensure!(naive_socle(&alg).contains(alg.field(), &cert.ideal).unwrap(), "certificate ideal outside the socle");
        ensure!(colon_socle_dim(&alg, &cert.ideal) == 1, "R/I is not Gorenstein");
        let res = alg.dim() - naive_trace(&alg).dim();
        ensure!(res > 1, "(x,y)^3 over F{p} has residue {res}");
    }
    let alg = powers_of_max(FieldSpec::prime(3), 4);
    ensure!(wag_search(&alg, &options(0)).unwrap() == WagOutcome::No, "(x,y)^4 over F3 is not WAG = No");
    let soc = naive_socle(&alg);
    let subspaces = all_subspaces(alg.field(), &soc);
    ensure!(subspaces.len() == 212, "expected 212 subspaces of F3^4, found {}", subspaces.len());
    let least = subspaces.iter().map(|i| colon_socle_dim(&alg, i)).min().unwrap();
    ensure!(least >= 2, "a socle quotient of (x,y)^4 has socle dim {least}");
    Ok(format!("(x,y)^3 WAG yes with checked w and NG no over F2, F3; (x,y)^4/F3 WAG no, 212 socle quotients all have socle dim ≥ {least}"))
}

fn wag_sequence(c: &Corpus) -> Check {
    let mut seen = 0;
    for (e, alg, wag) in &c.algebras {
        let Some(cert) = wag.certificate() else { continue };
        let f = alg.field();
        let soc = naive_socle(alg);
        let r = soc.dim();
        let (rw, _) = cyclic_and_max(alg, &cert.w);
        ensure!(alg.dim() - rw.dim() == r - 1, "{}: dim ω/Rw = {} but type {r}", e.id, alg.dim() - rw.dim());
        let om = dual(alg);
        let cols: Vec<Vec<u32>> = om.acts.iter().map(|a| a.mul_vec(f, &cert.w)).collect();
        let ker = kernel(f, &Matrix::from_columns(f, alg.dim(), &cols));
        ensure!(ker.dim() == r.saturating_sub(1), "{}: kernel of a ↦ aw has dim {}", e.id, ker.dim());
        ensure!(soc.contains(f, &ker).unwrap(), "{}: kernel of a ↦ aw leaves the socle", e.id);
        seen += 1;
    }
    ensure!(seen > 0, "no WAG instances");
    let checks = no_failures(c, &[CheckId::WagSequence])?;
    Ok(format!("{seen} WAG instances; {checks}"))
}

fn wag_and_ag_imply_ng(c: &Corpus) -> Check {
    let mut type2 = 0;
    for (e, alg, wag) in &c.algebras {
        if naive_socle(alg).dim() == 2 && wag.verdict() == Verdict::Yes {
            let (_, res) = trace_and_residue(alg);
            ensure!(res <= 1, "{}: type 2 and WAG but residue {res}", e.id);
            type2 += 1;
        }
    }
    let mut ag = 0;
    for g in &c.semigroups {
        let s = Sg::new(g);
        if s.almost_gorenstein() {
            ensure!(s.residue() <= 1, "{g:?}: AG but residue {}", s.residue());
            ag += 1;
        }
    }
    ensure!(type2 > 0 && ag > 0, "hypotheses never met");
    let checks = no_failures(c, &[CheckId::TypeTwoWag, CheckId::AlmostImpliesNearly])?;
    Ok(format!("{type2} type-2 WAG algebras, {ag} AG semigroups; {checks}"))
}

fn reduction_round_trip(c: &Corpus) -> Check {
    let gens = gen_random_semigroup(c.config.seed, 4, 13, 60).unwrap();
    ensure!(gens.len() >= 50, "only {} semigroups", gens.len());
    let f = FiniteField::prime(2).unwrap();
    for g in &gens {
        let oracle = Sg::new(g);
        ensure!(oracle.embedding_dimension() <= 4, "{g:?} has embedding dimension above 4");
        let s = NumericalSemigroup::new(g).unwrap();
        let red = artinian_reduction(f.clone(), &s, 2 * s.multiplicity()).unwrap();
        let (_, res) = trace_and_residue(&red);
        ensure!((oracle.residue() <= 1) == (res <= 1), "{g:?}: NG(S) = {} but reduction residue {res}", oracle.residue() <= 1);
        let wag = wag_search(&red, &options(0)).unwrap().verdict();
        ensure!(wag != Verdict::Unknown, "{g:?}: undecided WAG search");
        ensure!(oracle.almost_gorenstein() == (wag == Verdict::Yes), "{g:?}: AG(S) = {} but reduction WAG {}", oracle.almost_gorenstein(), wag.as_str());
        let rec = classify_ns(f.clone(), &s, &options(0)).unwrap();
        ensure!(rec.crosscheck_failure.is_none(), "{g:?}: {}", rec.crosscheck_failure.unwrap());
        ensure!(rec.residue == oracle.residue(), "{g:?}: library residue {} vs oracle {}", rec.residue, oracle.residue());
    }
    let checks = no_failures(c, &[CheckId::NearlyGorensteinReduction, CheckId::AlmostGorensteinReduction])?;
    Ok(format!("{} semigroups agree; {checks}", gens.len()))
}

fn type_two_ext(c: &Corpus) -> Check {
    let pinned = Sg::new(&[3, 7, 8]);
    let (classes, kills) = pinned.ext1();
    ensure!(classes == [2, 5] && !kills, "oracle for <3,7,8>: {classes:?}, m kills {kills}");
    let rec = ext1_canonical_type2(&NumericalSemigroup::new(&[3, 7, 8]).unwrap()).unwrap();
    ensure!(rec.ext1_values == [2, 5] && !rec.m_kills, "library for <3,7,8>: {:?}, m kills {}", rec.ext1_values, rec.m_kills);
    let mut seen = 0;
    for g in &c.semigroups {
        let s = NumericalSemigroup::new(g).unwrap();
        if s.minimal_generators().len() != 3 || s.is_symmetric() {
            continue;
        }
        let oracle = Sg::new(g);
        let (classes, kills) = oracle.ext1();
        ensure!(kills == (oracle.residue() <= 1), "{g:?}: m kills Ext¹ = {kills} but residue {}", oracle.residue());
        let rec = ext1_canonical_type2(&s).unwrap();
        ensure!(rec.ext1_values == classes && rec.m_kills == kills, "{g:?}: library Ext¹ record differs from the oracle");
        seen += 1;
    }
    ensure!(seen > 0, "no 3-generated non-symmetric semigroups");
    let checks = no_failures(c, &[CheckId::TypeTwoExt])?;
    Ok(format!("<3,7,8>: classes {{2,5}}, m kills false; {seen} semigroups agree; {checks}"))
}

fn families() -> Check {
    let field = FieldSpec::prime(2);
    let mut specs = Vec::new();
    for exps in [&[2, 2][..], &[2, 3], &[3, 2], &[3, 3], &[2, 2, 2], &[2, 2, 3], &[2, 3, 3], &[3, 3, 3]] {
        specs.extend(gen_c5(field, &default_vars(exps.len()), exps, 1, usize::MAX).unwrap());
    }
    for a in 2..=3 {
        for b in 2..=3 {
            for cc in 2..=3 {
                for form in [E51Form::A, E51Form::B, E51Form::C] {
                    specs.push(gen_e51(field, a, b, cc, form).unwrap());
                }
            }
        }
    }
    ensure!(specs.len() >= 20, "only {} family instances", specs.len());
    for spec in &specs {
        let alg = finite(spec);
        let label = spec.label().unwrap_or_default();
        let WagOutcome::Yes(cert) = wag_search(&alg, &options(0)).unwrap() else {
            return Err(format!("{label}: not WAG"));
        };
        ensure!(certificate_holds(&alg, &cert.w), "{label}: certificate fails Rw ⊇ mω");
    }
    let mut l57 = 0;
    for p in [2, 3] {
        for n in 1..=3 {
            for e in 2..=4 {
                let alg = finite(&gen_l57(FieldSpec::prime(p), n, e).unwrap());
                let soc = naive_socle(&alg);
                ensure!(soc.dim() == n, "l57 n={n} p={e}: type {}", soc.dim());
                ensure!(colon_socle_dim(&alg, &soc) == 1, "l57 n={n} p={e}: R/soc not Gorenstein");
                l57 += 1;
            }
        }
    }
    Ok(format!("{} c5/e51 instances WAG with checked w; {l57} l57 instances have type n and Gorenstein R/soc", specs.len()))
}

fn safety(c: &Corpus) -> Check {
    let mut certified = 0;
    for (e, alg, wag) in &c.algebras {
        let Some(cert) = wag.certificate() else { continue };
        ensure!(naive_socle(alg).contains(alg.field(), &cert.ideal).unwrap(), "{}: certificate ideal outside the socle", e.id);
        ensure!(colon_socle_dim(alg, &cert.ideal) == 1, "{}: R/I not Gorenstein", e.id);
        let dual = max_ideal_self_dual(alg, &options(e.seed)).verdict();
        ensure!(dual != Verdict::No, "{}: WAG but m/soc is not self-dual", e.id);
        certified += 1;
    }
    let mut sv = 0;
    for (e, alg, _) in c.algebras.iter().filter(|(_, a, _)| a.field().order() == Some(2) && a.dim() <= 6) {
        let ng = alg.dim() - naive_trace(alg).dim() <= 1;
        let verdict = sv_almost_gorenstein(alg, 1 << 12);
        ensure!(verdict.is_some(), "{}: SV enumeration did not run", e.id);
        ensure!(!ng || verdict == Some(true), "{}: NG but not SV almost Gorenstein", e.id);
        sv += usize::from(ng);
    }
    let checks = no_failures(c, &[CheckId::SocleQuotientChain, CheckId::NearlyImpliesSocleColon])?;
    Ok(format!("{certified} certificates checked; {sv} NG algebras over F2 are SV-AG; {checks}"))
}

fn main() {
    let start = Instant::now();
    let corpus = load_corpus();
    println!(
        "corpus: {} algebras, {} semigroups, suite {} checks ({} pass, {} fail) in {:.1}s",
        corpus.algebras.len(),
        corpus.semigroups.len(),
        corpus.report.summary.total,
        corpus.report.summary.pass,
        corpus.report.summary.fail,
        start.elapsed().as_secs_f64()
    );
    let criteria: Vec<Criterion> = vec![
        ("<3,7,8> trace, residue and reduction at t^3", Box::new(semigroup_378)),
        ("trace equals the Ext/Tor annihilators", Box::new(|| trace_equalities(&corpus))),
        ("trace kills Ext^i(ω,R); ann M = ann Hom(M,ω)", Box::new(|| annihilators(&corpus))),
        ("(x,y)^3 WAG with certificate, (x,y)^4 over F3 not WAG", Box::new(cube_and_fourth_power)),
        ("WAG exact-sequence numerics", Box::new(|| wag_sequence(&corpus))),
        ("type 2 + WAG ⟹ NG; AG semigroups are NG", Box::new(|| wag_and_ag_imply_ng(&corpus))),
        ("semigroup NG/AG agree with the reduction at 2e", Box::new(|| reduction_round_trip(&corpus))),
        ("type-2 Ext¹ criterion and <3,7,8> classes", Box::new(|| type_two_ext(&corpus))),
        ("c5/e51 families WAG; l57 type and socle quotient", Box::new(families)),
        ("WAG certificates and NG ⟹ SV-AG", Box::new(|| safety(&corpus))),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(summary) => println!("PASS {:>2} {title}: {summary} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

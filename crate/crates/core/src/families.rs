//! Seeded generators for the test corpora: monomial complete intersections
//! and the ideals between `nI` and `I`, the three-variable examples, the
//! type-`n` family, and random monomial quotients and semigroups.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::l57_generators;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{format_monomial, grlex_cmp, Monomial, MonomialIdeal};
use crate::numsgp::NumericalSemigroup;
use crate::spec::AlgebraSpec;

pub const DEFAULT_DIM_CAP: usize = 12;

/// Default variable names: `x, y, z, w` up to four variables, `x1..xn` beyond.
pub fn default_vars(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn monomial_spec(field: FieldSpec, vars: &[String], gens: Vec<Monomial>, label: String) -> AlgebraSpec {
    let mut gens = MonomialIdeal::new(vars.to_vec(), gens).expect("well-formed generators").minimal_generators();
    gens.sort_by(|a, b| grlex_cmp(a, b));
    AlgebraSpec::MonomialQuotient {
        label: Some(label),
        field,
        vars: vars.to_vec(),
        generators: gens.iter().map(|g| format_monomial(vars, g)).collect(),
    }
}

fn pure_power(n: usize, i: usize, e: u32) -> Monomial {
    let mut m = vec![0; n];
    m[i] = e;
    m
}

fn check_exponents(what: &str, exps: &[i64]) -> Result<Vec<u32>> {
    exps.iter()
        .map(|&e| {
            if (2..=u32::MAX as i64).contains(&e) {
                Ok(e as u32)
            } else {
                Err(Error::InvalidFamily(format!("{what}: exponent {e} must be at least 2")))
            }
        })
        .collect()
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// The monomial complete intersection `(x_1^{a_1}, ..., x_n^{a_n})`.
pub fn gen_ci(field: FieldSpec, vars: &[String], exps: &[i64]) -> Result<AlgebraSpec> {
    if vars.len() != exps.len() || vars.is_empty() {
        return Err(Error::InvalidFamily("one exponent per variable required".into()));
    }
    let a = check_exponents("ci", exps)?;
    let n = vars.len();
    let gens = (0..n).map(|i| pure_power(n, i, a[i])).collect();
    Ok(monomial_spec(field, vars, gens, format!("ci {}", join(exps))))
}

/// Monomial ideals `J` with `nI ⊆ J ⊆ I` for the complete intersection
/// `I = (x_i^{a_i})`. Such `J` are `nI` plus a subset of the pure powers.
/// The first output is always `J = nI`; the remaining subsets come in
/// seeded random order, at most `count` in total.
pub fn gen_c5(field: FieldSpec, vars: &[String], exps: &[i64], seed: u64, count: usize) -> Result<Vec<AlgebraSpec>> {
    if vars.len() != exps.len() || vars.is_empty() {
        return Err(Error::InvalidFamily("one exponent per variable required".into()));
    }
    let a = check_exponents("c5 (I must lie in the square of the maximal ideal)", exps)?;
    let n = vars.len();
    if n > 16 {
        return Err(Error::InvalidFamily("at most 16 variables".into()));
    }
    let mut base = Vec::new();
    for (i, &ai) in a.iter().enumerate() {
        for j in 0..n {
            let mut m = pure_power(n, i, ai);
            m[j] += 1;
            base.push(m);
        }
    }
    let mut subsets: Vec<u32> = (1..(1u32 << n)).collect();
    subsets.shuffle(&mut rng(seed));
    subsets.insert(0, 0);
    subsets.truncate(count);
    Ok(subsets
        .into_iter()
        .map(|mask| {
            let mut gens = base.clone();
            let mut added = Vec::new();
            for i in (0..n).filter(|i| mask >> i & 1 == 1) {
                gens.push(pure_power(n, i, a[i]));
                added.push(format_monomial(vars, &pure_power(n, i, a[i])));
            }
            let label = format!("c5 I=ci({}) J=nI+({})", join(exps), added.join(","));
            monomial_spec(field, vars, gens, label)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum E51Form {
    A,
    B,
    C,
}

/// The three-variable families with exponents `a, b, c`:
/// (a) `(x^a, y^b, xz^c, yz^c, z^{c+1})`,
/// (b) `(x^a, xy^b, y^{b+1}, y^b z, xz^c, yz^c, z^{c+1})`,
/// (c) `n(x^a, y^b, z^c)`.
pub fn gen_e51(field: FieldSpec, a: i64, b: i64, c: i64, form: E51Form) -> Result<AlgebraSpec> {
    let e = check_exponents("e51", &[a, b, c])?;
    let (a, b, c) = (e[0], e[1], e[2]);
    let gens: Vec<Monomial> = match form {
        E51Form::A => vec![vec![a, 0, 0], vec![0, b, 0], vec![1, 0, c], vec![0, 1, c], vec![0, 0, c + 1]],
        E51Form::B => vec![
            vec![a, 0, 0],
            vec![1, b, 0],
            vec![0, b + 1, 0],
            vec![0, b, 1],
            vec![1, 0, c],
            vec![0, 1, c],
            vec![0, 0, c + 1],
        ],
        E51Form::C => vec![
            vec![a + 1, 0, 0],
            vec![a, 1, 0],
            vec![a, 0, 1],
            vec![1, b, 0],
            vec![0, b + 1, 0],
            vec![0, b, 1],
            vec![1, 0, c],
            vec![0, 1, c],
            vec![0, 0, c + 1],
        ],
    };
    let tag = match form {
        E51Form::A => "a",
        E51Form::B => "b",
        E51Form::C => "c",
    };
    Ok(monomial_spec(field, &default_vars(3), gens, format!("e51{tag} {a},{b},{c}")))
}

/// `(x_1^p) + n(x_2, ..., x_n)`.
pub fn gen_l57(field: FieldSpec, n: usize, p: i64) -> Result<AlgebraSpec> {
    if n == 0 {
        return Err(Error::InvalidFamily("l57: at least one variable".into()));
    }
    let p = check_exponents("l57", &[p])?[0];
    Ok(monomial_spec(field, &default_vars(n), l57_generators(n, 0, p), format!("l57 n={n} p={p}")))
}

/// A seeded monomial quotient in `nvars` variables containing a pure power of
/// every variable, with dimension at most `dim_cap`. Oversized draws are
/// redrawn with smaller degrees.
pub fn gen_random_monomial(field: FieldSpec, seed: u64, nvars: usize, maxdeg: u32, dim_cap: usize) -> Result<AlgebraSpec> {
    if nvars == 0 || nvars > 4 {
        return Err(Error::InvalidFamily("random_monomial: 1 to 4 variables".into()));
    }
    if maxdeg == 0 || dim_cap == 0 {
        return Err(Error::InvalidFamily("random_monomial: degree and dimension cap must be positive".into()));
    }
    let vars = default_vars(nvars);
    let mut r = rng(seed);
    for attempt in 0..64u32 {
        let deg = maxdeg.saturating_sub(attempt / 8).max(1);
        let mut gens: Vec<Monomial> = (0..nvars).map(|i| pure_power(nvars, i, r.gen_range(1..=deg))).collect();
        let extra = if nvars > 1 { r.gen_range(0..=nvars + 1) } else { 0 };
        for _ in 0..extra {
            let m: Monomial = (0..nvars).map(|_| r.gen_range(0..deg)).collect();
            if m.iter().filter(|&&e| e > 0).count() >= 2 {
                gens.push(m);
            }
        }
        let ideal = MonomialIdeal::new(vars.clone(), gens.clone())?;
        if let Some(d) = ideal.colength_bounded(dim_cap as u64)? {
            if d <= dim_cap {
                return Ok(monomial_spec(field, &vars, gens, format!("random_monomial seed={seed} n={nvars} d={maxdeg}")));
            }
        }
    }
    let gens = (0..nvars).map(|i| pure_power(nvars, i, 1)).collect();
    Ok(monomial_spec(field, &vars, gens, format!("random_monomial seed={seed} n={nvars} d={maxdeg}")))
}

pub const PINNED_SEMIGROUPS: [&[i64]; 2] = [&[3, 7, 8], &[3, 4, 5]];

/// Up to `count` distinct semigroups: the pinned ones first, then seeded draws
/// of 2 to `max_embdim` generators in `2..=max_gen` with gcd 1, deduplicated
/// by minimal generating set.
pub fn gen_random_semigroup(seed: u64, max_embdim: usize, max_gen: i64, count: usize) -> Result<Vec<Vec<i64>>> {
    if !(1..=4).contains(&max_embdim) {
        return Err(Error::InvalidFamily("random_semigroup: embedding dimension 1 to 4".into()));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in PINNED_SEMIGROUPS {
        if out.len() < count && seen.insert(g.to_vec()) {
            out.push(g.to_vec());
        }
    }
    if max_embdim < 2 || max_gen < 3 {
        return Ok(out);
    }
    let mut r = rng(seed);
    let mut misses = 0;
    while out.len() < count && misses < 10_000 {
        let k = r.gen_range(2..=max_embdim);
        let mut pool: Vec<i64> = (2..=max_gen).collect();
        pool.shuffle(&mut r);
        let mut gens: Vec<i64> = pool.into_iter().take(k).collect();
        gens.sort_unstable();
        match NumericalSemigroup::new(&gens) {
            Ok(s) if s.minimal_generators().len() <= max_embdim && seen.insert(s.minimal_generators().to_vec()) => {
                out.push(s.minimal_generators().to_vec());
            }
            _ => misses += 1,
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Ci,
    C5,
    E51a,
    E51b,
    E51c,
    L57,
    RandomMonomial,
    RandomSemigroup,
}

/// A family request. Parameter keys by kind: `ci`/`c5` take `a1..an` and
/// `count`; `e51*` take `a`, `b`, `c`; `l57` takes `n`, `p`;
/// `random_monomial` takes `nvars`, `maxdeg`, `count`, `max_dim`;
/// `random_semigroup` takes `max_embdim`, `max_gen`, `count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub parameters: BTreeMap<String, i64>,
    pub seed: u64,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
}

impl FamilySpec {
    fn param(&self, key: &str) -> Result<i64> {
        self.parameters
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidFamily(format!("{:?} requires parameter `{key}`", self.kind)))
    }

    fn param_or(&self, key: &str, default: i64) -> i64 {
        self.parameters.get(key).copied().unwrap_or(default)
    }

    fn non_negative(&self, key: &str, default: i64) -> Result<usize> {
        usize::try_from(self.param_or(key, default))
            .map_err(|_| Error::InvalidFamily(format!("parameter `{key}` must be non-negative")))
    }

    fn exponents(&self) -> Result<Vec<i64>> {
        let mut exps = Vec::new();
        while let Some(&e) = self.parameters.get(&format!("a{}", exps.len() + 1)) {
            exps.push(e);
        }
        if exps.is_empty() {
            return Err(Error::InvalidFamily("exponents `a1`, `a2`, ... required".into()));
        }
        Ok(exps)
    }

    pub fn generate(&self) -> Result<Vec<AlgebraSpec>> {
        self.field.validate()?;
        let vars_for = |n: usize| match &self.vars {
            Some(v) if v.len() == n => Ok(v.clone()),
            Some(v) => Err(Error::InvalidFamily(format!("{} variables given for {n} exponents", v.len()))),
            None => Ok(default_vars(n)),
        };
        match self.kind {
            FamilyKind::Ci => {
                let e = self.exponents()?;
                Ok(vec![gen_ci(self.field, &vars_for(e.len())?, &e)?])
            }
            FamilyKind::C5 => {
                let e = self.exponents()?;
                gen_c5(self.field, &vars_for(e.len())?, &e, self.seed, self.non_negative("count", 1 << 16)?)
            }
            FamilyKind::E51a | FamilyKind::E51b | FamilyKind::E51c => {
                let form = match self.kind {
                    FamilyKind::E51a => E51Form::A,
                    FamilyKind::E51b => E51Form::B,
                    _ => E51Form::C,
                };
                Ok(vec![gen_e51(self.field, self.param("a")?, self.param("b")?, self.param("c")?, form)?])
            }
            FamilyKind::L57 => {
                let n = usize::try_from(self.param("n")?).map_err(|_| Error::InvalidFamily("l57: n ≥ 1".into()))?;
                Ok(vec![gen_l57(self.field, n, self.param("p")?)?])
            }
            FamilyKind::RandomMonomial => {
                let nvars = self.non_negative("nvars", 2)?;
                let maxdeg = u32::try_from(self.param_or("maxdeg", 4))
                    .map_err(|_| Error::InvalidFamily("maxdeg must be non-negative".into()))?;
                let cap = self.non_negative("max_dim", DEFAULT_DIM_CAP as i64)?;
                (0..self.non_negative("count", 1)? as u64)
                    .map(|i| gen_random_monomial(self.field, self.seed.wrapping_add(i), nvars, maxdeg, cap))
                    .collect()
            }
            FamilyKind::RandomSemigroup => {
                let sgs = gen_random_semigroup(
                    self.seed,
                    self.non_negative("max_embdim", 4)?,
                    self.param_or("max_gen", 20),
                    self.non_negative("count", 10)?,
                )?;
                Ok(sgs
                    .iter()
                    .map(|g| AlgebraSpec::semigroup(self.field, g).with_label(format!("semigroup <{}>", join(g))))
                    .collect())
            }
        }
    }
}

//! Numerical semigroups, value ideals of their semigroup rings, and the
//! reduction to artinian algebras modulo a monomial `t^c`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::ArtinianAlgebra;
use crate::classify::{wag_search, ClassifyOptions, Verdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homological::trace_and_residue;
use crate::linalg::{unit_vector, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    minimal: Vec<i64>,
    /// `apery[i]` is the least element congruent to `i` modulo the multiplicity.
    apery: Vec<i64>,
    frobenius: i64,
}

impl NumericalSemigroup {
    pub fn new(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidSemigroup("no generators".into()));
        }
        if let Some(g) = gens.iter().find(|&&g| g <= 0) {
            return Err(Error::InvalidSemigroup(format!("generator {g} is not positive")));
        }
        let g = gens.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::InvalidSemigroup(format!("generators have gcd {g}")));
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        let e = generators[0];
        let apery = apery_by_shortest_paths(e, &generators);
        let frobenius = apery.iter().max().copied().unwrap() - e;
        let mut s = NumericalSemigroup { generators, minimal: Vec::new(), apery, frobenius };
        s.minimal = s
            .generators
            .iter()
            .copied()
            .filter(|&g| !s.generators.iter().any(|&h| h < g && s.contains(g - h) && g - h > 0))
            .collect();
        Ok(s)
    }

    /// Parses a comma-separated generator list such as `3,7,8`.
    pub fn parse(text: &str) -> Result<Self> {
        let gens = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidSemigroup(format!("bad generator `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&gens)
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn minimal_generators(&self) -> &[i64] {
        &self.minimal
    }

    pub fn embedding_dimension(&self) -> usize {
        self.minimal.len()
    }

    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> i64 {
        self.frobenius + 1
    }

    pub fn contains(&self, s: i64) -> bool {
        s >= 0 && self.apery[s.rem_euclid(self.multiplicity()) as usize] <= s
    }

    pub fn gaps(&self) -> Vec<i64> {
        (1..=self.frobenius).filter(|&z| !self.contains(z)).collect()
    }

    /// `Ap(S, c) = {s ∈ S : s - c ∉ S}`, ascending.
    pub fn apery_set(&self, c: i64) -> Result<Vec<i64>> {
        if c <= 0 || !self.contains(c) {
            return Err(Error::NotInSemigroup(c));
        }
        let mut out: Vec<i64> = (0..=self.frobenius + c).filter(|&s| self.contains(s) && !self.contains(s - c)).collect();
        out.sort_unstable();
        debug_assert_eq!(out.len() as i64, c);
        Ok(out)
    }

    /// `{x ∉ S : x + (S ∖ {0}) ⊆ S}`; contains the Frobenius number.
    pub fn pseudo_frobenius(&self) -> Vec<i64> {
        let mut cands = self.gaps();
        if self.frobenius < 0 {
            cands.push(self.frobenius);
        }
        cands.into_iter().filter(|&x| self.generators.iter().all(|&g| self.contains(x + g))).collect()
    }

    pub fn cm_type(&self) -> usize {
        self.pseudo_frobenius().len()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..=self.frobenius).all(|z| self.contains(z) != self.contains(self.frobenius - z))
    }

    /// `S` as a value ideal.
    pub fn as_ideal(&self) -> ValueIdeal {
        ValueIdeal::from_predicate(0, self.conductor().max(0), |z| self.contains(z))
    }

    /// `S ∖ {0}`, the value set of the maximal ideal.
    pub fn maximal_ideal(&self) -> ValueIdeal {
        ValueIdeal::from_predicate(1, self.conductor().max(1), |z| self.contains(z))
    }

    /// `K = {z : f - z ∉ S}`.
    pub fn canonical_ideal(&self) -> ValueIdeal {
        let f = self.frobenius;
        ValueIdeal::from_predicate(0, f + 1, |z| !self.contains(f - z))
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.minimal.iter().map(|x| x.to_string()).collect();
        write!(f, "<{}>", g.join(","))
    }
}

fn apery_by_shortest_paths(e: i64, gens: &[i64]) -> Vec<i64> {
    let n = e as usize;
    let mut dist = vec![i64::MAX; n];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0i64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in gens {
            let nr = (r + g as usize) % n;
            let nd = d + g;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

/// A set of integers closed under adding semigroup elements: all `z ≥ tail`
/// plus the finitely many members in `head`, all smaller than `tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValueIdeal {
    pub head: Vec<i64>,
    pub tail: i64,
}

impl ValueIdeal {
    /// Members of `[lo, tail)` selected by `pred`, plus everything from `tail` on.
    pub fn from_predicate(lo: i64, tail: i64, pred: impl Fn(i64) -> bool) -> Self {
        let head = (lo..tail).filter(|&z| pred(z)).collect();
        let mut out = ValueIdeal { head, tail };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.head.last() == Some(&(self.tail - 1)) {
            self.head.pop();
            self.tail -= 1;
        }
    }

    pub fn contains(&self, z: i64) -> bool {
        z >= self.tail || self.head.binary_search(&z).is_ok()
    }

    pub fn min(&self) -> i64 {
        self.head.first().copied().unwrap_or(self.tail)
    }

    /// Members below `bound`, ascending.
    pub fn members_below(&self, bound: i64) -> Vec<i64> {
        let mut out: Vec<i64> = self.head.iter().copied().filter(|&z| z < bound).collect();
        out.extend(self.tail..bound.max(self.tail));
        out
    }

    /// Minkowski sum `I + J`. Everything from `tail(I) + min J` on is a member.
    pub fn product(&self, other: &ValueIdeal) -> ValueIdeal {
        let (mi, mj) = (self.min(), other.min());
        let hi = self.tail + mj;
        let mine = self.members_below(hi - mj + 1);
        ValueIdeal::from_predicate(mi + mj, hi, |z| mine.iter().any(|&a| a <= z - mj && other.contains(z - a)))
    }

    /// `I : J = {z : z + J ⊆ I}`. Members lie in `[min I - min J, tail(I) - min J)`
    /// or beyond.
    pub fn colon(&self, other: &ValueIdeal) -> ValueIdeal {
        let (mi, mj) = (self.min(), other.min());
        let hi = self.tail - mj;
        ValueIdeal::from_predicate(mi - mj, hi, |z| {
            other.members_below(self.tail - z).iter().all(|&j| self.contains(z + j))
        })
    }

    pub fn shift(&self, a: i64) -> ValueIdeal {
        ValueIdeal { head: self.head.iter().map(|z| z + a).collect(), tail: self.tail + a }
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &ValueIdeal) -> bool {
        other.tail >= self.tail.min(other.tail)
            && other.members_below(self.tail.max(other.tail)).iter().all(|&z| self.contains(z))
    }

    /// Members of `self` missing from `sub ⊆ self` (finite).
    pub fn difference(&self, sub: &ValueIdeal) -> Vec<i64> {
        self.members_below(sub.tail.max(self.tail)).into_iter().filter(|&z| !sub.contains(z)).collect()
    }

    /// Minimal generators as an ideal of `S`: members `z` with `z - g ∉ I`
    /// for every generator `g` of `S`.
    pub fn generators(&self, s: &NumericalSemigroup) -> Vec<i64> {
        let top = self.tail + s.multiplicity();
        self.members_below(top)
            .into_iter()
            .filter(|&z| s.minimal_generators().iter().all(|&g| !self.contains(z - g)))
            .collect()
    }
}

impl fmt::Display for ValueIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.head.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}} ∪ [{}, ∞)", h.join(","), self.tail)
    }
}

/// `a + S`
pub fn principal(s: &NumericalSemigroup, a: i64) -> ValueIdeal {
    s.as_ideal().shift(a)
}

/// Whether `I` equals `a + S` for `a = min I`.
pub fn is_principal(s: &NumericalSemigroup, i: &ValueIdeal) -> bool {
    principal(s, i.min()) == *i
}

/// `tr ω = K + (S : K)` and the residue `#(S ∖ tr)`.
pub fn trace_and_residue_ns(s: &NumericalSemigroup) -> (ValueIdeal, usize) {
    let k = s.canonical_ideal();
    let tr = k.product(&s.as_ideal().colon(&k));
    let residue = s.as_ideal().difference(&tr).len();
    (tr, residue)
}

/// `Ext^1(ω, R)` for type at most two, as the value set of `K' / K` with
/// `K' = S : (S : K)`, and whether `m` kills it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ext1Record {
    pub ext1_values: Vec<i64>,
    pub m_kills: bool,
}

/// `K' = S : (S : K)`.
pub fn bidual_canonical(s: &NumericalSemigroup) -> ValueIdeal {
    let sg = s.as_ideal();
    sg.colon(&sg.colon(&s.canonical_ideal()))
}

pub fn ext1_canonical_type2(s: &NumericalSemigroup) -> Result<Ext1Record> {
    let r = s.cm_type();
    if r > 2 {
        return Err(Error::Unsupported(format!("Ext^1(ω, R) needs type ≤ 2, {s} has type {r}")));
    }
    let k = s.canonical_ideal();
    let kk = bidual_canonical(s);
    let ext1_values = kk.difference(&k);
    let m_kills = k.contains_ideal(&s.maximal_ideal().product(&kk));
    Ok(Ext1Record { ext1_values, m_kills })
}

/// `t^a` annihilates `Ext^1(ω, R)`, i.e. `a + K' ⊆ K` (type at most two).
pub fn annihilates_ext1(s: &NumericalSemigroup, a: i64) -> Result<bool> {
    ext1_canonical_type2(s)?;
    Ok(s.canonical_ideal().contains_ideal(&bidual_canonical(s).shift(a)))
}

/// Almost Gorenstein criterion `M + K ⊆ S`.
pub fn almost_gorenstein_oracle(s: &NumericalSemigroup) -> bool {
    s.as_ideal().contains_ideal(&s.maximal_ideal().product(&s.canonical_ideal()))
}

/// `k[[S]] / (t^c)` with basis `t^s`, `s ∈ Ap(S, c)`.
pub fn artinian_reduction<F: Field>(field: F, s: &NumericalSemigroup, c: i64) -> Result<ArtinianAlgebra<F>> {
    let ap = s.apery_set(c)?;
    let n = ap.len();
    let index = |v: i64| ap.binary_search(&v).ok();
    let mut products = Vec::with_capacity(n * n);
    for &a in &ap {
        for &b in &ap {
            let mut col = vec![field.zero(); n];
            if let Some(k) = index(a + b) {
                col[k] = field.one();
            }
            products.push(col);
        }
    }
    let labels = ap.iter().map(|&v| value_label(v)).collect();
    Ok(ArtinianAlgebra::from_structure_constants(field, labels, 0, products)?.with_value_labels(ap))
}

pub fn value_label(v: i64) -> String {
    match v {
        0 => "1".into(),
        1 => "t".into(),
        _ => format!("t^{v}"),
    }
}

/// Span of `t^v` for the basis values `v` of a reduction selected by `pred`.
pub fn monomial_span<F: Field>(alg: &ArtinianAlgebra<F>, pred: impl Fn(i64) -> bool) -> Subspace<F::Elem> {
    let f = alg.field();
    let values = alg.value_labels().expect("reduction carries value labels");
    let vecs: Vec<Vec<F::Elem>> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| pred(v))
        .map(|(i, _)| unit_vector(f, alg.dim(), i))
        .collect();
    Subspace::span(f, alg.dim(), vecs)
}

/// Values `v` with `t^v` inside the given subspace of a reduction.
pub fn monomials_in<F: Field>(alg: &ArtinianAlgebra<F>, space: &Subspace<F::Elem>) -> Vec<i64> {
    let f = alg.field();
    let values = alg.value_labels().expect("reduction carries value labels");
    values
        .iter()
        .enumerate()
        .filter(|(i, _)| space.contains_vector(f, &unit_vector(f, alg.dim(), *i)))
        .map(|(_, &v)| v)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsRecord {
    pub semigroup: Vec<i64>,
    pub multiplicity: i64,
    pub frobenius: i64,
    pub gaps: Vec<i64>,
    pub pseudo_frobenius: Vec<i64>,
    pub cm_type: usize,
    pub canonical: ValueIdeal,
    pub trace: ValueIdeal,
    pub trace_generators: Vec<i64>,
    pub residue: usize,
    pub gorenstein: bool,
    pub nearly_gorenstein: bool,
    pub almost_gorenstein: bool,
    /// WAG of the reduction modulo `t^{2e}`.
    pub ag_via_reduction: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crosscheck_failure: Option<String>,
}

pub fn classify_ns<F: Field>(field: F, s: &NumericalSemigroup, opts: &ClassifyOptions) -> Result<NsRecord> {
    let (trace, residue) = trace_and_residue_ns(s);
    let ag = almost_gorenstein_oracle(s);
    let red = artinian_reduction(field, s, 2 * s.multiplicity())?;
    let via = wag_search(&red, opts)?.verdict();
    let crosscheck_failure = match via {
        Verdict::Yes | Verdict::No if (via == Verdict::Yes) != ag => Some(format!(
            "M + K ⊆ S gives {ag} but the reduction modulo t^{} gives WAG {}",
            2 * s.multiplicity(),
            via.as_str()
        )),
        _ => None,
    };
    Ok(NsRecord {
        semigroup: s.minimal_generators().to_vec(),
        multiplicity: s.multiplicity(),
        frobenius: s.frobenius(),
        gaps: s.gaps(),
        pseudo_frobenius: s.pseudo_frobenius(),
        cm_type: s.cm_type(),
        canonical: s.canonical_ideal(),
        trace_generators: trace.generators(s),
        trace,
        residue,
        gorenstein: residue == 0,
        nearly_gorenstein: residue <= 1,
        almost_gorenstein: ag,
        ag_via_reduction: via,
        crosscheck_failure,
    })
}

/// Image of the trace of `k[[S]]` in `k[[S]]/(t^c)` against the trace of the reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTraceReport {
    pub c: i64,
    pub contained: bool,
    /// `res(S) > res(R')`.
    pub residue_drops: bool,
    pub residue_semigroup: usize,
    pub residue_reduction: usize,
    pub reduction_trace_values: Vec<i64>,
}

pub fn reduction_trace_check<F: Field>(field: F, s: &NumericalSemigroup, c: i64) -> Result<ReductionTraceReport> {
    let (tr, residue_semigroup) = trace_and_residue_ns(s);
    let red = artinian_reduction(field, s, c)?;
    let (rtr, residue_reduction) = trace_and_residue(&red);
    let image = monomial_span(&red, |v| tr.contains(v));
    let f = red.field();
    let contained = rtr.space().contains(f, &image)?;
    Ok(ReductionTraceReport {
        c,
        contained,
        residue_drops: residue_semigroup > residue_reduction,
        residue_semigroup,
        residue_reduction,
        reduction_trace_values: monomials_in(&red, rtr.space()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThBReport {
    pub ng_semigroup: bool,
    pub ng_reduction: bool,
    pub agree: bool,
    pub containment: ReductionTraceReport,
}

/// Nearly Gorenstein for `S` against its reduction modulo `t^{2e}`, with the
/// trace-containment check at the same element.
pub fn verify_thb<F: Field>(field: F, s: &NumericalSemigroup) -> Result<ThBReport> {
    let (_, res) = trace_and_residue_ns(s);
    let containment = reduction_trace_check(field, s, 2 * s.multiplicity())?;
    let ng_semigroup = res <= 1;
    let ng_reduction = containment.residue_reduction <= 1;
    Ok(ThBReport { ng_semigroup, ng_reduction, agree: ng_semigroup == ng_reduction, containment })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Th26Report {
    HypothesisNotMet { reason: String },
    Checked {
        /// `tr_S + (t^{au})` against `tr_{R'} + (t^{au})` inside `R' = k[[S]]/(t^{a(u+1)})`.
        traces_agree: bool,
        /// `(res S, res R')` when `t^{au} ∈ tr_S`.
        residues: Option<(usize, usize)>,
    },
}

impl Th26Report {
    pub fn holds(&self) -> bool {
        match self {
            Th26Report::HypothesisNotMet { .. } => true,
            Th26Report::Checked { traces_agree, residues } => {
                *traces_agree && residues.is_none_or(|(a, b)| a == b)
            }
        }
    }
}

pub fn verify_th26<F: Field>(field: F, s: &NumericalSemigroup, a: i64, u: u32) -> Result<Th26Report> {
    if u == 0 {
        return Err(Error::Unsupported("u must be at least 1".into()));
    }
    if a <= 0 || !s.contains(a) {
        return Err(Error::NotInSemigroup(a));
    }
    if !annihilates_ext1(s, a)? {
        return Ok(Th26Report::HypothesisNotMet { reason: format!("{a} + K' ⊄ K") });
    }
    let au = a * i64::from(u);
    let (tr, res_s) = trace_and_residue_ns(s);
    let red = artinian_reduction(field, s, au + a)?;
    let f = red.field();
    let (rtr, res_red) = trace_and_residue(&red);
    let x = monomial_span(&red, |v| s.contains(v - au));
    let lhs = monomial_span(&red, |v| tr.contains(v)).sum(f, &x)?;
    let rhs = rtr.space().sum(f, &x)?;
    let residues = tr.contains(au).then_some((res_s, res_red));
    Ok(Th26Report::Checked { traces_agree: lhs == rhs, residues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    fn sg(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    /// Membership by brute-force sums of generators.
    fn brute_members(g: &[i64], bound: i64) -> Vec<bool> {
        let mut ok = vec![false; bound as usize + 1];
        ok[0] = true;
        for z in 1..=bound {
            ok[z as usize] = g.iter().any(|&x| x <= z && ok[(z - x) as usize]);
        }
        ok
    }

    #[test]
    fn invariants_of_small_semigroups() {
        let s = sg(&[2, 3]);
        assert_eq!((s.gaps(), s.frobenius(), s.cm_type()), (vec![1], 1, 1));
        let s = sg(&[3, 7, 8]);
        assert_eq!(s.gaps(), vec![1, 2, 4, 5]);
        assert_eq!((s.frobenius(), s.cm_type()), (5, 2));
        let s = sg(&[3, 4, 5]);
        assert_eq!((s.frobenius(), s.pseudo_frobenius()), (2, vec![1, 2]));
        assert!(NumericalSemigroup::new(&[4, 6]).is_err());
        let n = sg(&[1]);
        assert_eq!((n.frobenius(), n.cm_type()), (-1, 1));
    }

    #[test]
    fn membership_matches_brute_force() {
        for g in [vec![3, 7, 8], vec![5, 7, 11], vec![4, 9, 10, 15], vec![6, 7, 15]] {
            let s = sg(&g);
            let bound = s.frobenius() + 20;
            let brute = brute_members(&g, bound);
            for z in 0..=bound {
                assert_eq!(s.contains(z), brute[z as usize], "{g:?} at {z}");
            }
        }
    }

    #[test]
    fn canonical_ideals() {
        let s = sg(&[2, 3]);
        assert_eq!(s.canonical_ideal(), s.as_ideal());
        assert!(is_principal(&s, &s.canonical_ideal()));
        let k = sg(&[3, 7, 8]).canonical_ideal();
        assert_eq!(k, ValueIdeal { head: vec![0, 1, 3, 4], tail: 6 });
        let k = sg(&[3, 4, 5]).canonical_ideal();
        assert_eq!(k, ValueIdeal { head: vec![0, 1], tail: 3 });
        assert!(!is_principal(&sg(&[3, 4, 5]), &k));
    }

    #[test]
    fn value_ideal_arithmetic() {
        let s = sg(&[3, 7, 8]);
        let k = s.canonical_ideal();
        let one = s.as_ideal();
        assert_eq!(k.product(&one), k);
        assert_eq!(one.colon(&k), ValueIdeal { head: vec![], tail: 6 });
        assert!(k.colon(&k).contains_ideal(&one));
    }

    /// Product and colon against direct set computations on a window.
    #[test]
    fn arithmetic_matches_window_oracle() {
        let s = sg(&[4, 6, 9]);
        let k = s.canonical_ideal();
        let m = s.maximal_ideal();
        let bound = 60;
        let members = |i: &ValueIdeal| (-20..bound).filter(|&z| i.contains(z)).collect::<Vec<_>>();
        for (i, j) in [(&k, &m), (&m, &k), (&k, &k)] {
            let p = i.product(j);
            for z in -20..bound - 30 {
                let direct = members(i).iter().any(|&a| j.contains(z - a));
                assert_eq!(p.contains(z), direct, "product at {z}");
            }
            let c = i.colon(j);
            for z in -20..bound - 30 {
                let direct = members(j).iter().filter(|&&b| b < bound - 25).all(|&b| i.contains(z + b));
                assert_eq!(c.contains(z), direct, "colon at {z}");
            }
        }
    }

    #[test]
    fn traces_and_residues() {
        let (tr, res) = trace_and_residue_ns(&sg(&[3, 7, 8]));
        assert_eq!(tr, ValueIdeal { head: vec![], tail: 6 });
        assert_eq!(tr.generators(&sg(&[3, 7, 8])), vec![6, 7, 8]);
        assert_eq!(res, 2);
        assert_eq!(trace_and_residue_ns(&sg(&[2, 3])).1, 0);
        let s = sg(&[3, 4, 5]);
        let (tr, res) = trace_and_residue_ns(&s);
        assert_eq!(tr, s.maximal_ideal());
        assert_eq!(res, 1);
    }

    #[test]
    fn ext1_records() {
        assert_eq!(ext1_canonical_type2(&sg(&[2, 3])).unwrap(), Ext1Record { ext1_values: vec![], m_kills: true });
        assert_eq!(ext1_canonical_type2(&sg(&[3, 7, 8])).unwrap(), Ext1Record { ext1_values: vec![2, 5], m_kills: false });
        assert!(ext1_canonical_type2(&sg(&[3, 4, 5])).unwrap().m_kills);
        assert!(ext1_canonical_type2(&sg(&[4, 5, 6, 7])).is_err());
    }

    #[test]
    fn reductions() {
        let f = FiniteField::prime(3).unwrap();
        let s = sg(&[3, 7, 8]);
        let r3 = artinian_reduction(f.clone(), &s, 3).unwrap();
        assert_eq!(r3.value_labels().unwrap(), &[0, 7, 8]);
        assert!(r3.ideal_product(r3.maximal_ideal(), r3.maximal_ideal()).is_zero());
        let r6 = artinian_reduction(f.clone(), &s, 6).unwrap();
        assert_eq!(r6.value_labels().unwrap(), &[0, 3, 7, 8, 10, 11]);
        let r = artinian_reduction(f.clone(), &sg(&[2, 3]), 2).unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(trace_and_residue(&r).1, 0);
        assert!(matches!(artinian_reduction(f, &s, 5), Err(Error::NotInSemigroup(5))));
    }

    #[test]
    fn classification_of_pinned_semigroups() {
        let f = FiniteField::prime(3).unwrap();
        let opts = ClassifyOptions::default();
        let r = classify_ns(f.clone(), &sg(&[3, 4, 5]), &opts).unwrap();
        assert!(r.almost_gorenstein && r.nearly_gorenstein);
        assert_eq!(r.ag_via_reduction, Verdict::Yes);
        let r = classify_ns(f.clone(), &sg(&[3, 7, 8]), &opts).unwrap();
        assert!(!r.almost_gorenstein && !r.nearly_gorenstein);
        assert_eq!((r.residue, r.ag_via_reduction), (2, Verdict::No));
        assert!(r.crosscheck_failure.is_none());
        let r = classify_ns(f, &sg(&[2, 3]), &opts).unwrap();
        assert!(r.almost_gorenstein && r.gorenstein);
    }

    #[test]
    fn reduction_trace_of_378_at_3() {
        let f = FiniteField::prime(2).unwrap();
        let rep = reduction_trace_check(f.clone(), &sg(&[3, 7, 8]), 3).unwrap();
        assert!(rep.contained && rep.residue_drops);
        assert_eq!(rep.reduction_trace_values, vec![7, 8]);
        assert_eq!((rep.residue_semigroup, rep.residue_reduction), (2, 1));
        let b = verify_thb(f.clone(), &sg(&[3, 7, 8])).unwrap();
        assert!(b.agree && !b.ng_semigroup);
        assert!(verify_thb(f.clone(), &sg(&[3, 4, 5])).unwrap().ng_reduction);
        assert!(verify_thb(f, &sg(&[2, 3])).unwrap().ng_reduction);
    }

    #[test]
    fn th26_cases() {
        let f = FiniteField::prime(2).unwrap();
        let r = verify_th26(f.clone(), &sg(&[3, 7, 8]), 3, 1).unwrap();
        assert!(matches!(r, Th26Report::HypothesisNotMet { .. }));
        for a in [2, 3, 4] {
            let r = verify_th26(f.clone(), &sg(&[2, 3]), a, 1).unwrap();
            assert!(matches!(r, Th26Report::Checked { traces_agree: true, .. }));
        }
        let s = sg(&[3, 4, 5]);
        let a = (1..20).find(|&a| s.contains(a) && annihilates_ext1(&s, a).unwrap()).unwrap();
        let r = verify_th26(f, &s, a, 1).unwrap();
        assert!(matches!(r, Th26Report::Checked { .. }) && r.holds());
    }
}

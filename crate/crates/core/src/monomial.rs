//! Monomials and monomial ideals in a polynomial ring with named variables.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector.
pub type Monomial = Vec<u32>;

pub fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn product(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Graded lexicographic order with the first variable largest; lower degree
/// sorts first, and within a degree `x^2 < x*y < y^2`.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| b.cmp(a))
}

pub fn format_monomial(vars: &[String], m: &[u32]) -> String {
    let factors: Vec<String> = vars
        .iter()
        .zip(m)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

/// Parses `x^2*y`, `x^2 y`, `x2`-free forms like `xy^3` (juxtaposed variable
/// names are split greedily, longest name first) and `1`.
pub fn parse_monomial(vars: &[String], s: &str) -> Result<Monomial> {
    let bad = || Error::InvalidMonomial(s.to_string());
    let t = s.trim();
    let mut exps = vec![0u32; vars.len()];
    if t == "1" {
        return Ok(exps);
    }
    if t.is_empty() {
        return Err(bad());
    }
    let mut order: Vec<usize> = (0..vars.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(vars[i].len()));
    let bytes: Vec<char> = t.chars().collect();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        if c == '*' || c.is_whitespace() {
            pos += 1;
            continue;
        }
        let rest: String = bytes[pos..].iter().collect();
        let Some(&vi) = order.iter().find(|&&i| rest.starts_with(vars[i].as_str())) else {
            return Err(bad());
        };
        pos += vars[vi].chars().count();
        let mut e = 1u32;
        if pos < bytes.len() && bytes[pos] == '^' {
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(bad());
            }
            let digits: String = bytes[start..pos].iter().collect();
            e = digits.parse().map_err(|_| bad())?;
        }
        exps[vi] += e;
    }
    Ok(exps)
}

/// A monomial ideal given by generators (not necessarily minimal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(vars: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidAlgebra("at least one variable is required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidAlgebra(format!("invalid variable name `{v}`")));
            }
            if v.chars().next().unwrap().is_ascii_digit() {
                return Err(Error::InvalidAlgebra(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidAlgebra(format!("duplicate variable `{v}`")));
            }
        }
        if gens.iter().any(|g| g.len() != vars.len()) {
            return Err(Error::InvalidAlgebra("exponent vector length mismatch".into()));
        }
        Ok(MonomialIdeal { vars, gens })
    }

    pub fn parse(vars: &[String], gens: &[String]) -> Result<Self> {
        let parsed = gens.iter().map(|g| parse_monomial(vars, g)).collect::<Result<Vec<_>>>()?;
        Self::new(vars.to_vec(), parsed)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    /// Minimal generators, sorted in graded-lex order.
    pub fn minimal_generators(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = Vec::new();
        let mut sorted = self.gens.clone();
        sorted.sort_by(|a, b| grlex_cmp(a, b));
        sorted.dedup();
        for g in sorted {
            if !out.iter().any(|h| divides(h, &g)) {
                out.push(g);
            }
        }
        out
    }

    pub fn minimized(&self) -> MonomialIdeal {
        MonomialIdeal { vars: self.vars.clone(), gens: self.minimal_generators() }
    }

    /// Smallest pure power of each variable in the ideal.
    pub fn pure_power_bounds(&self) -> Result<Vec<u32>> {
        (0..self.nvars())
            .map(|i| {
                self.gens
                    .iter()
                    .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0) && g[i] > 0)
                    .map(|g| g[i])
                    .min()
                    .ok_or_else(|| Error::NonArtinian(self.vars[i].clone()))
            })
            .collect()
    }

    /// Monomials outside the ideal, sorted in graded-lex order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        if self.gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return Ok(Vec::new());
        }
        let bounds = self.pure_power_bounds()?;
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        loop {
            if !self.contains(&cur) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == cur.len() {
                    out.sort_by(|a, b| grlex_cmp(a, b));
                    return Ok(out);
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Number of standard monomials, computed without materializing them when
    /// the product of pure-power bounds exceeds `limit`.
    pub fn colength_bounded(&self, limit: u64) -> Result<Option<usize>> {
        let bounds = self.pure_power_bounds()?;
        let box_size: u64 = bounds.iter().map(|&b| b as u64).product();
        if box_size > limit.saturating_mul(64) {
            return Ok(None);
        }
        let n = self.standard_monomials()?.len();
        Ok(if n as u64 > limit { None } else { Some(n) })
    }

    pub fn format_generators(&self) -> Vec<String> {
        self.gens.iter().map(|g| format_monomial(&self.vars, g)).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.format_generators().join(", "))
    }
}

/// All monomials of total degree `d` in `n` variables, graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

//! The `gorlab/1` text format for algebra specifications, and runtime
//! dispatch from a specification to a concrete field.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, FiniteField, Rationals};
use crate::monomial::{format_monomial, grlex_cmp, MonomialIdeal};
use crate::numsgp::NumericalSemigroup;

pub const SCHEMA: &str = "gorlab/1";

fn default_semigroup_field() -> FieldSpec {
    FieldSpec::prime(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraSpec {
    MonomialQuotient {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        field: FieldSpec,
        vars: Vec<String>,
        generators: Vec<String>,
    },
    StructureConstants {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        field: FieldSpec,
        labels: Vec<String>,
        unit: usize,
        /// Entries `[i, j, k, c]` with `i <= j`: `e_i e_j` has coefficient `c` at `e_k`.
        table: Vec<[i64; 4]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value_labels: Option<Vec<i64>>,
    },
    NumericalSemigroup {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        /// Field for the artinian side (reductions).
        #[serde(default = "default_semigroup_field")]
        field: FieldSpec,
        generators: Vec<i64>,
    },
}

#[derive(Serialize, Deserialize)]
struct SpecFile {
    schema: String,
    #[serde(flatten)]
    spec: AlgebraSpec,
}

/// Line and column (1-based) of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub(crate) fn toml_error(text: &str, err: &toml::de::Error) -> Error {
    let (line, column) = err.span().map_or((1, 1), |s| line_column(text, s.start));
    Error::Parse { line, column, message: err.message().to_string() }
}

pub(crate) fn check_schema(text: &str, schema: &str) -> Result<()> {
    if schema == SCHEMA {
        return Ok(());
    }
    let offset = text.find("schema").unwrap_or(0);
    let (line, column) = line_column(text, offset);
    Err(Error::Parse { line, column, message: format!("unsupported schema `{schema}`, expected `{SCHEMA}`") })
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let file: SpecFile = toml::from_str(text).map_err(|e| toml_error(text, &e))?;
        check_schema(text, &file.schema)?;
        Ok(file.spec)
    }

    pub fn to_text(&self) -> String {
        let file = SpecFile { schema: SCHEMA.into(), spec: self.clone() };
        toml::to_string(&file).expect("specs serialize")
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            AlgebraSpec::MonomialQuotient { label, .. }
            | AlgebraSpec::StructureConstants { label, .. }
            | AlgebraSpec::NumericalSemigroup { label, .. } => label.as_deref(),
        }
    }

    pub fn with_label(mut self, new: impl Into<String>) -> Self {
        match &mut self {
            AlgebraSpec::MonomialQuotient { label, .. }
            | AlgebraSpec::StructureConstants { label, .. }
            | AlgebraSpec::NumericalSemigroup { label, .. } => *label = Some(new.into()),
        }
        self
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            AlgebraSpec::MonomialQuotient { field, .. }
            | AlgebraSpec::StructureConstants { field, .. }
            | AlgebraSpec::NumericalSemigroup { field, .. } => *field,
        }
    }

    pub fn with_field(mut self, new: FieldSpec) -> Self {
        match &mut self {
            AlgebraSpec::MonomialQuotient { field, .. }
            | AlgebraSpec::StructureConstants { field, .. }
            | AlgebraSpec::NumericalSemigroup { field, .. } => *field = new,
        }
        self
    }

    pub fn monomial(field: FieldSpec, vars: &[&str], gens: &[&str]) -> Self {
        AlgebraSpec::MonomialQuotient {
            label: None,
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            generators: gens.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn semigroup(field: FieldSpec, gens: &[i64]) -> Self {
        AlgebraSpec::NumericalSemigroup { label: None, field, generators: gens.to_vec() }
    }

    /// Canonical form: minimal monomial generators in graded-lex order,
    /// minimal semigroup generators, and a sorted table.
    pub fn normalized(&self) -> Result<Self> {
        self.field().validate()?;
        Ok(match self {
            AlgebraSpec::MonomialQuotient { label, field, vars, generators } => {
                let ideal = MonomialIdeal::parse(vars, generators)?;
                let mut gens = ideal.minimal_generators();
                gens.sort_by(|a, b| grlex_cmp(a, b));
                AlgebraSpec::MonomialQuotient {
                    label: label.clone(),
                    field: *field,
                    vars: vars.clone(),
                    generators: gens.iter().map(|g| format_monomial(vars, g)).collect(),
                }
            }
            AlgebraSpec::StructureConstants { label, field, labels, unit, table, value_labels } => {
                let mut t: Vec<[i64; 4]> = table
                    .iter()
                    .map(|&[i, j, k, c]| if i <= j { [i, j, k, c] } else { [j, i, k, c] })
                    .filter(|e| e[3] != 0)
                    .collect();
                t.sort_unstable();
                AlgebraSpec::StructureConstants {
                    label: label.clone(),
                    field: *field,
                    labels: labels.clone(),
                    unit: *unit,
                    table: t,
                    value_labels: value_labels.clone(),
                }
            }
            AlgebraSpec::NumericalSemigroup { label, field, generators } => {
                let s = NumericalSemigroup::new(generators)?;
                AlgebraSpec::NumericalSemigroup { label: label.clone(), field: *field, generators: s.minimal_generators().to_vec() }
            }
        })
    }

    /// Structure-constant spec of an algebra whose constants lie in the prime subring.
    pub fn from_algebra<F: Field>(alg: &ArtinianAlgebra<F>) -> Result<Self> {
        let table = alg
            .integer_table()
            .ok_or_else(|| Error::Format("structure constants outside the prime field".into()))?;
        Ok(AlgebraSpec::StructureConstants {
            label: None,
            field: alg.field().spec(),
            labels: alg.labels().to_vec(),
            unit: alg.unit_index(),
            table,
            value_labels: alg.value_labels().map(|v| v.to_vec()),
        })
    }

    pub fn build(&self) -> Result<Instance> {
        let field = self.field();
        field.validate()?;
        match self {
            AlgebraSpec::NumericalSemigroup { generators, .. } => {
                Ok(Instance::Semigroup { semigroup: NumericalSemigroup::new(generators)?, field })
            }
            _ => Ok(Instance::Algebra(match field.characteristic {
                0 => AnyAlgebra::Rational(self.build_over(Rationals)?),
                p => AnyAlgebra::Finite(self.build_over(FiniteField::new(p, field.degree)?)?),
            })),
        }
    }

    fn build_over<F: Field>(&self, f: F) -> Result<ArtinianAlgebra<F>> {
        match self {
            AlgebraSpec::MonomialQuotient { vars, generators, .. } => {
                ArtinianAlgebra::from_monomial_quotient(f, vars, generators)
            }
            AlgebraSpec::StructureConstants { labels, unit, table, value_labels, .. } => {
                let n = labels.len();
                let mut products = vec![vec![f.zero(); n]; n * n];
                for &[i, j, k, c] in table {
                    let bad = |x: i64| x < 0 || x as usize >= n;
                    if bad(i) || bad(j) || bad(k) {
                        return Err(Error::InvalidAlgebra(format!("table index out of range in [{i}, {j}, {k}, {c}]")));
                    }
                    let (i, j, k) = (i as usize, j as usize, k as usize);
                    let v = f.from_int(c);
                    products[i * n + j][k] = f.add(&products[i * n + j][k], &v);
                    if i != j {
                        products[j * n + i][k] = f.add(&products[j * n + i][k], &v);
                    }
                }
                let alg = ArtinianAlgebra::from_structure_constants(f, labels.clone(), *unit, products)?;
                Ok(match value_labels {
                    Some(v) if v.len() == n => alg.with_value_labels(v.clone()),
                    Some(_) => return Err(Error::InvalidAlgebra("value_labels length differs from dimension".into())),
                    None => alg,
                })
            }
            AlgebraSpec::NumericalSemigroup { .. } => Err(Error::Unsupported("a semigroup is not an artinian algebra".into())),
        }
    }
}

/// An artinian algebra over a field chosen at run time.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Finite(ArtinianAlgebra<FiniteField>),
    Rational(ArtinianAlgebra<Rationals>),
}

/// Runs a field-generic expression on the algebra inside an [`AnyAlgebra`].
#[macro_export]
macro_rules! with_algebra {
    ($any:expr, $alg:ident => $body:expr) => {
        match $any {
            $crate::spec::AnyAlgebra::Finite($alg) => $body,
            $crate::spec::AnyAlgebra::Rational($alg) => $body,
        }
    };
}

/// Runs a field-generic expression with a field built from a [`FieldSpec`].
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {{
        let spec: $crate::field::FieldSpec = $spec;
        match spec.characteristic {
            0 => {
                let $f = $crate::field::Rationals;
                $body
            }
            p => {
                let $f = $crate::field::FiniteField::new(p, spec.degree)?;
                $body
            }
        }
    }};
}

#[derive(Clone, Debug)]
pub enum Instance {
    Algebra(AnyAlgebra),
    Semigroup { semigroup: NumericalSemigroup, field: FieldSpec },
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `0`, `Q`, a prime `p`, or `p^s`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidField(format!("cannot parse field `{t}`"));
        let spec = if t == "0" || t.eq_ignore_ascii_case("q") {
            FieldSpec::RATIONALS
        } else {
            let t = t.trim_start_matches(['F', 'f']);
            match t.split_once('^') {
                Some((p, d)) => FieldSpec {
                    characteristic: p.parse().map_err(|_| bad())?,
                    degree: d.parse().map_err(|_| bad())?,
                },
                None => FieldSpec::prime(t.parse().map_err(|_| bad())?),
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::MonomialQuotient { field, vars, generators, .. } => {
                write!(f, "{field}[{}]/({})", vars.join(","), generators.join(", "))
            }
            AlgebraSpec::StructureConstants { field, labels, .. } => {
                write!(f, "{field}-algebra of dimension {}", labels.len())
            }
            AlgebraSpec::NumericalSemigroup { generators, .. } => {
                let g: Vec<String> = generators.iter().map(|x| x.to_string()).collect();
                write!(f, "<{}>", g.join(","))
            }
        }
    }
}

//! Finite-dimensional commutative local algebras given by structure constants.
//!
//! Every algebra carries an *adapted* basis: one basis element is the unit and
//! the remaining ones span the maximal ideal. Monomial quotients, quotients
//! by ideals inside the maximal ideal, and Apéry-set reductions of numerical
//! semigroup rings all come with such a basis.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{unit_vector, vec_is_zero, Matrix, Subspace};
use crate::monomial::{format_monomial, product, MonomialIdeal};

#[derive(Clone, Debug)]
pub struct ArtinianAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    value_labels: Option<Vec<i64>>,
    unit: usize,
    /// `mult[i]` is the matrix of multiplication by `e_i`; column `j` holds `e_i e_j`.
    mult: Vec<Matrix<F::Elem>>,
    maximal_ideal: Subspace<F::Elem>,
    generators: Vec<usize>,
}

/// An ideal of an algebra, stored as a subspace of the regular representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal<E> {
    space: Subspace<E>,
}

impl<E: Clone + PartialEq> Ideal<E> {
    pub fn space(&self) -> &Subspace<E> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn into_space(self) -> Subspace<E> {
        self.space
    }
}

impl<F: Field> ArtinianAlgebra<F> {
    /// Builds an algebra from the products `products[i * dim + j] = e_i e_j`.
    /// Commutativity, associativity, the unit, and nilpotency of the span of
    /// the non-unit basis vectors are all verified exhaustively.
    pub fn from_structure_constants(
        field: F,
        labels: Vec<String>,
        unit: usize,
        products: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if unit >= n {
            return Err(Error::InvalidAlgebra(format!("unit index {unit} out of range")));
        }
        if products.len() != n * n || products.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidAlgebra("structure constant table has the wrong shape".into()));
        }
        let mult: Vec<Matrix<F::Elem>> = (0..n)
            .map(|i| {
                let cols: Vec<Vec<F::Elem>> = (0..n).map(|j| products[i * n + j].clone()).collect();
                Matrix::from_columns(&field, n, &cols)
            })
            .collect();
        for i in 0..n {
            if products[unit * n + i] != unit_vector(&field, n, i) {
                return Err(Error::InvalidAlgebra(format!("basis element {unit} is not a unit")));
            }
            for j in 0..n {
                if products[i * n + j] != products[j * n + i] {
                    return Err(Error::InvalidAlgebra(format!("not commutative at ({i},{j})")));
                }
                // (e_i e_j) e_k = e_i (e_j e_k), compared as operators on e_k
                for k in 0..n {
                    let left = mult[k].mul_vec(&field, &products[i * n + j]);
                    let right = mult[i].mul_vec(&field, &products[j * n + k]);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("not associative at ({i},{j},{k})")));
                    }
                }
            }
        }
        let others: Vec<usize> = (0..n).filter(|&i| i != unit).collect();
        let maximal_ideal =
            Subspace::span(&field, n, others.iter().map(|&i| unit_vector(&field, n, i)).collect::<Vec<_>>());
        for &i in &others {
            for &j in &others {
                if !field.is_zero(&products[i * n + j][unit]) {
                    return Err(Error::InvalidAlgebra(
                        "non-unit basis elements do not span an ideal".into(),
                    ));
                }
            }
        }
        let mut alg = ArtinianAlgebra {
            field,
            labels,
            value_labels: None,
            unit,
            mult,
            maximal_ideal,
            generators: Vec::new(),
        };
        // nilpotency: m^k = 0 for some k <= n
        let mut power = alg.maximal_ideal.clone();
        let mut steps = 0;
        while !power.is_zero() {
            power = alg.ideal_product(&power, &alg.maximal_ideal);
            steps += 1;
            if steps > n {
                return Err(Error::InvalidAlgebra("maximal ideal is not nilpotent".into()));
            }
        }
        let m2 = alg.ideal_product(&alg.maximal_ideal, &alg.maximal_ideal);
        let mut span = m2;
        for &i in &others {
            if span.insert(&alg.field, &unit_vector(&alg.field, n, i)) {
                alg.generators.push(i);
            }
        }
        Ok(alg)
    }

    /// `k[vars] / ideal` with the standard monomial basis in graded-lex order.
    pub fn from_monomial_ideal(field: F, ideal: &MonomialIdeal) -> Result<Self> {
        let basis = ideal.standard_monomials()?;
        if basis.is_empty() {
            return Err(Error::InvalidAlgebra("the ideal contains 1".into()));
        }
        let n = basis.len();
        let index = |m: &[u32]| basis.iter().position(|b| b.as_slice() == m);
        let mut products = Vec::with_capacity(n * n);
        for a in &basis {
            for b in &basis {
                let prod = product(a, b);
                let mut v = vec![field.zero(); n];
                if let Some(k) = index(&prod) {
                    v[k] = field.one();
                }
                products.push(v);
            }
        }
        let labels = basis.iter().map(|m| format_monomial(ideal.vars(), m)).collect();
        Self::from_structure_constants(field, labels, 0, products)
    }

    /// Parses variable names and generator strings, then builds the quotient.
    pub fn from_monomial_quotient(field: F, vars: &[String], gens: &[String]) -> Result<Self> {
        let ideal = MonomialIdeal::parse(vars, gens)?;
        Self::from_monomial_ideal(field, &ideal)
    }

    pub fn with_value_labels(mut self, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), self.dim(), "one value label per basis element");
        self.value_labels = Some(values);
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Embedding dimension (number of minimal generators of the maximal ideal).
    pub fn edim(&self) -> usize {
        self.generators.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn value_labels(&self) -> Option<&[i64]> {
        self.value_labels.as_deref()
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn maximal_ideal(&self) -> &Subspace<F::Elem> {
        &self.maximal_ideal
    }

    pub fn mult_matrix(&self, i: usize) -> &Matrix<F::Elem> {
        &self.mult[i]
    }

    pub fn mult_matrices(&self) -> &[Matrix<F::Elem>] {
        &self.mult
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F::Elem> {
        self.mult[i].column(j)
    }

    pub fn one(&self) -> Vec<F::Elem> {
        unit_vector(&self.field, self.dim(), self.unit)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        unit_vector(&self.field, self.dim(), i)
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.mult_by(a).mul_vec(&self.field, b)
    }

    /// Matrix of multiplication by the element `a`.
    pub fn mult_by(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        combine_matrices(&self.field, &self.mult, a, self.dim())
    }

    /// Structure constant `c(i,j,k)`: coefficient of `e_k` in `e_i e_j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        self.mult[i].get(k, j)
    }

    /// Product of two ideals (as subspaces).
    pub fn ideal_product(&self, a: &Subspace<F::Elem>, b: &Subspace<F::Elem>) -> Subspace<F::Elem> {
        let mut out = Subspace::zero(self.dim());
        for x in a.basis() {
            let mx = self.mult_by(x);
            for y in b.basis() {
                out.insert(&self.field, &mx.mul_vec(&self.field, y));
            }
        }
        out
    }

    /// Smallest ideal containing the given elements.
    pub fn ideal_generated_by(&self, elems: &[Vec<F::Elem>]) -> Ideal<F::Elem> {
        let mut out = Subspace::zero(self.dim());
        for e in elems {
            for m in &self.mult {
                out.insert(&self.field, &m.mul_vec(&self.field, e));
            }
        }
        Ideal { space: out }
    }

    /// Checks that `space` is closed under multiplication.
    pub fn ideal(&self, space: Subspace<F::Elem>) -> Result<Ideal<F::Elem>> {
        if space.ambient() != self.dim() {
            return Err(Error::AmbientMismatch { left: space.ambient(), right: self.dim() });
        }
        for v in space.basis() {
            for m in &self.mult {
                if !space.contains_vector(&self.field, &m.mul_vec(&self.field, v)) {
                    return Err(Error::InvalidAlgebra("subspace is not an ideal".into()));
                }
            }
        }
        Ok(Ideal { space })
    }

    pub fn zero_ideal(&self) -> Ideal<F::Elem> {
        Ideal { space: Subspace::zero(self.dim()) }
    }

    pub fn unit_ideal(&self) -> Ideal<F::Elem> {
        Ideal { space: Subspace::full(&self.field, self.dim()) }
    }

    pub fn maximal_ideal_as_ideal(&self) -> Ideal<F::Elem> {
        Ideal { space: self.maximal_ideal.clone() }
    }

    /// Powers `m^0 = R, m, m^2, ...` down to the first zero power.
    pub fn max_ideal_powers(&self) -> Vec<Subspace<F::Elem>> {
        let mut out = vec![Subspace::full(&self.field, self.dim())];
        let mut cur = self.maximal_ideal.clone();
        loop {
            let done = cur.is_zero();
            out.push(cur.clone());
            if done {
                return out;
            }
            cur = self.ideal_product(&cur, &self.maximal_ideal);
        }
    }

    pub fn format_element(&self, v: &[F::Elem]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| {
                if self.field.is_one(c) {
                    self.labels[i].clone()
                } else {
                    format!("{}*{}", self.field.format(c), self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// `A / I` for a proper ideal `I`. Coset representatives are the basis
    /// vectors at the non-pivot columns of the RREF of `I`, so the lowest
    /// graded-lex labels survive.
    pub fn quotient(&self, ideal: &Ideal<F::Elem>) -> Result<ArtinianAlgebra<F>> {
        let i = ideal.space();
        if !self.maximal_ideal.contains(&self.field, i)? {
            return Err(Error::ImproperIdeal);
        }
        let keep = i.complement_columns();
        let n = keep.len();
        let mut products = Vec::with_capacity(n * n);
        for &a in &keep {
            for &b in &keep {
                let p = i.reduce(&self.field, &self.basis_product(a, b));
                products.push(keep.iter().map(|&c| p[c].clone()).collect::<Vec<_>>());
            }
        }
        let labels = keep.iter().map(|&c| self.labels[c].clone()).collect();
        let unit = keep.iter().position(|&c| c == self.unit).expect("unit survives a proper quotient");
        let mut q = Self::from_structure_constants(self.field.clone(), labels, unit, products)?;
        if let Some(v) = &self.value_labels {
            q.value_labels = Some(keep.iter().map(|&c| v[c]).collect());
        }
        Ok(q)
    }

    /// The same algebra over another field, when every structure constant
    /// lies in the prime subring.
    pub fn change_field<G: Field>(&self, target: G) -> Result<ArtinianAlgebra<G>> {
        let n = self.dim();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let col = self.basis_product(i, j);
                let mapped = col
                    .iter()
                    .map(|c| {
                        self.field.to_prime_int(c).map(|k| target.from_int(k)).ok_or_else(|| {
                            Error::InvalidAlgebra("structure constant outside the prime field".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                products.push(mapped);
            }
        }
        let mut out = ArtinianAlgebra::from_structure_constants(target, self.labels.clone(), self.unit, products)?;
        out.value_labels = self.value_labels.clone();
        Ok(out)
    }

    /// Integer structure constants `(i, j, k, c)` with `c != 0`, for `i <= j`.
    pub fn integer_table(&self) -> Option<Vec<[i64; 4]>> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let c = self.structure_constant(i, j, k);
                    if !self.field.is_zero(c) {
                        out.push([i as i64, j as i64, k as i64, self.field.to_prime_int(c)?]);
                    }
                }
            }
        }
        Some(out)
    }

    pub fn is_zero_element(&self, v: &[F::Elem]) -> bool {
        vec_is_zero(&self.field, v)
    }
}

/// `sum_k a_k M_k`
pub fn combine_matrices<F: Field>(
    field: &F,
    mats: &[Matrix<F::Elem>],
    coeffs: &[F::Elem],
    size: usize,
) -> Matrix<F::Elem> {
    let cols = mats.first().map(|m| m.cols()).unwrap_or(size);
    let rows = mats.first().map(|m| m.rows()).unwrap_or(size);
    let mut out = Matrix::zeros(field, rows, cols);
    for (c, m) in coeffs.iter().zip(mats) {
        if field.is_zero(c) {
            continue;
        }
        out = out.add(field, &m.scale(field, c));
    }
    out
}

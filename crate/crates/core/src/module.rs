//! Finite-dimensional modules over an [`ArtinianAlgebra`], given by the
//! action matrices of every algebra basis element.

use crate::algebra::{combine_matrices, ArtinianAlgebra, Ideal};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel, unit_vector, Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct ModuleRep<F: Field> {
    dim: usize,
    action: Vec<Matrix<F::Elem>>,
    labels: Option<Vec<String>>,
}

impl<F: Field> ModuleRep<F> {
    /// Validates the module axioms against the algebra's structure constants.
    pub fn new(alg: &ArtinianAlgebra<F>, action: Vec<Matrix<F::Elem>>) -> Result<Self> {
        let m = Self::new_unchecked(alg, action);
        m.check_axioms(alg)?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: &ArtinianAlgebra<F>, action: Vec<Matrix<F::Elem>>) -> Self {
        assert_eq!(action.len(), alg.dim(), "one action matrix per basis element");
        let dim = action.first().map(|a| a.rows()).unwrap_or(0);
        ModuleRep { dim, action, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim, "one label per basis vector");
        self.labels = Some(labels);
        self
    }

    pub fn check_axioms(&self, alg: &ArtinianAlgebra<F>) -> Result<()> {
        let f = alg.field();
        let n = alg.dim();
        if self.action.len() != n {
            return Err(Error::InvalidModule("wrong number of action matrices".into()));
        }
        if self.action.iter().any(|a| a.rows() != self.dim || a.cols() != self.dim) {
            return Err(Error::InvalidModule("action matrices must be square of size dim".into()));
        }
        if self.action[alg.unit_index()] != Matrix::identity(f, self.dim) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..n {
            for j in i..n {
                let lhs = self.action[i].mul(f, &self.action[j]);
                let rhs = combine_matrices(f, &self.action, &alg.basis_product(i, j), self.dim);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!("action not multiplicative at ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    /// `R` acting on itself.
    pub fn regular(alg: &ArtinianAlgebra<F>) -> Self {
        let mut m = Self::new_unchecked(alg, alg.mult_matrices().to_vec());
        m.labels = Some(alg.labels().to_vec());
        m
    }

    /// `R^rank` with block-diagonal action.
    pub fn free(alg: &ArtinianAlgebra<F>, rank: usize) -> Self {
        let f = alg.field();
        let d = alg.dim();
        let action = alg
            .mult_matrices()
            .iter()
            .map(|m| {
                let mut big = Matrix::zeros(f, d * rank, d * rank);
                for b in 0..rank {
                    for r in 0..d {
                        for c in 0..d {
                            big.set(b * d + r, b * d + c, m.get(r, c).clone());
                        }
                    }
                }
                big
            })
            .collect();
        Self::new_unchecked(alg, action)
    }

    /// The residue field `k = R / m`.
    pub fn residue_field(alg: &ArtinianAlgebra<F>) -> Self {
        let f = alg.field();
        let action = (0..alg.dim())
            .map(|i| {
                let mut m = Matrix::zeros(f, 1, 1);
                if i == alg.unit_index() {
                    m.set(0, 0, f.one());
                }
                m
            })
            .collect();
        Self::new_unchecked(alg, action)
    }

    /// The canonical module: the vector-space dual of `R` with `(a f)(b) = f(ab)`.
    /// In the dual basis, `e_i` acts by the transpose of its multiplication matrix.
    pub fn canonical(alg: &ArtinianAlgebra<F>) -> Self {
        let action = alg.mult_matrices().iter().map(|m| m.transpose()).collect();
        let mut w = Self::new_unchecked(alg, action);
        w.labels = Some(alg.labels().iter().map(|l| format!("({l})*")).collect());
        w
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix<F::Elem> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix<F::Elem>] {
        &self.action
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn act(&self, field: &F, i: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        self.action[i].mul_vec(field, v)
    }

    /// Matrix of multiplication by the algebra element `a`.
    pub fn action_of(&self, field: &F, a: &[F::Elem]) -> Matrix<F::Elem> {
        combine_matrices(field, &self.action, a, self.dim)
    }

    pub fn act_element(&self, field: &F, a: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let mut out = vec![field.zero(); self.dim];
        for (k, c) in a.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            let w = self.action[k].mul_vec(field, v);
            for (o, x) in out.iter_mut().zip(&w) {
                field.add_mul_assign(o, c, x);
            }
        }
        out
    }

    /// `m U` for a subspace `U` of the module.
    pub fn max_ideal_times(&self, alg: &ArtinianAlgebra<F>, u: &Subspace<F::Elem>) -> Subspace<F::Elem> {
        max_ideal_times(alg, self, u)
    }

    pub fn max_ideal_image(&self, alg: &ArtinianAlgebra<F>) -> Subspace<F::Elem> {
        self.max_ideal_times(alg, &Subspace::full(alg.field(), self.dim))
    }

    /// `R`-submodule generated by the given vectors.
    pub fn generated_by(&self, alg: &ArtinianAlgebra<F>, vectors: &[Vec<F::Elem>]) -> Subspace<F::Elem> {
        generated_submodule(alg, self, vectors)
    }

    /// `soc M = {v : m v = 0}`: the common kernel of the generators of `m`.
    pub fn socle(&self, alg: &ArtinianAlgebra<F>) -> Subspace<F::Elem> {
        let f = alg.field();
        let gens = alg.generator_indices();
        if gens.is_empty() {
            return Subspace::full(f, self.dim);
        }
        let mut stacked = Matrix::zeros(f, gens.len() * self.dim, self.dim);
        for (b, &g) in gens.iter().enumerate() {
            for r in 0..self.dim {
                for c in 0..self.dim {
                    stacked.set(b * self.dim + r, c, self.action[g].get(r, c).clone());
                }
            }
        }
        kernel(f, &stacked)
    }

    /// `dim M / mM`.
    pub fn min_generator_count(&self, alg: &ArtinianAlgebra<F>) -> usize {
        self.dim - self.max_ideal_image(alg).dim()
    }

    /// Dimensions of `m^i M` for `i = 0, 1, ...` until zero.
    pub fn loewy_layers(&self, alg: &ArtinianAlgebra<F>) -> Vec<usize> {
        let mut out = vec![self.dim];
        let mut cur = Subspace::full(alg.field(), self.dim);
        while !cur.is_zero() {
            cur = self.max_ideal_times(alg, &cur);
            out.push(cur.dim());
        }
        out
    }

    /// Whether `U` is stable under the action.
    pub fn is_submodule(&self, field: &F, u: &Subspace<F::Elem>) -> bool {
        u.basis()
            .iter()
            .all(|v| self.action.iter().all(|a| u.contains_vector(field, &a.mul_vec(field, v))))
    }

    /// The submodule `U` with the induced action in its RREF basis.
    pub fn submodule(&self, alg: &ArtinianAlgebra<F>, u: &Subspace<F::Elem>) -> ModuleRep<F> {
        submodule_rep(alg, self, u)
    }

    /// `M / W`; the basis is the images of the standard vectors at the
    /// non-pivot columns of `W`.
    pub fn quotient(&self, alg: &ArtinianAlgebra<F>, w: &Subspace<F::Elem>) -> ModuleRep<F> {
        let mut q = quotient_rep(alg, self, w);
        if let Some(l) = &self.labels {
            q.labels = Some(w.complement_columns().iter().map(|&k| l[k].clone()).collect());
        }
        q
    }

    /// `Z / B` for submodules `B ⊆ Z` of this module.
    pub fn subquotient(
        &self,
        alg: &ArtinianAlgebra<F>,
        z: &Subspace<F::Elem>,
        b: &Subspace<F::Elem>,
    ) -> ModuleRep<F> {
        subquotient_rep(alg, self, z, b)
    }

    pub fn direct_sum(&self, alg: &ArtinianAlgebra<F>, other: &ModuleRep<F>) -> ModuleRep<F> {
        let f = alg.field();
        let n = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(f, n, n);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m.set(r, c, a.get(r, c).clone());
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m.set(self.dim + r, self.dim + c, b.get(r, c).clone());
                    }
                }
                m
            })
            .collect();
        Self::new_unchecked(alg, action)
    }

    /// `ann M = {a : aM = 0}`, the kernel of `a ↦ (multiplication by a)`.
    pub fn annihilator(&self, alg: &ArtinianAlgebra<F>) -> Ideal<F::Elem> {
        let f = alg.field();
        if self.dim == 0 {
            return alg.unit_ideal();
        }
        let cols: Vec<Vec<F::Elem>> = self.action.iter().map(|a| a.entries().to_vec()).collect();
        let m = Matrix::from_columns(f, self.dim * self.dim, &cols);
        alg.ideal(kernel(f, &m)).expect("annihilators are ideals")
    }

    /// Elements of `R` killing every vector of `U`: `{a : aU = 0}`.
    pub fn annihilator_of(&self, alg: &ArtinianAlgebra<F>, u: &Subspace<F::Elem>) -> Ideal<F::Elem> {
        annihilator_of_subquotient(alg, self, u, &Subspace::zero(self.dim))
    }

    /// `{a : a v = 0}` for a single vector.
    pub fn annihilator_of_vector(&self, alg: &ArtinianAlgebra<F>, v: &[F::Elem]) -> Ideal<F::Elem> {
        let u = Subspace::span(alg.field(), self.dim, vec![v.to_vec()]);
        self.annihilator_of(alg, &u)
    }

    pub fn basis_vector(&self, field: &F, i: usize) -> Vec<F::Elem> {
        unit_vector(field, self.dim, i)
    }
}

/// Anything on which the algebra basis acts linearly: a module, or a direct
/// power of one (free modules are powers of the regular module).
pub trait LinearAction<F: Field> {
    fn ambient_dim(&self) -> usize;
    /// `e_k · v`
    fn act(&self, field: &F, k: usize, v: &[F::Elem]) -> Vec<F::Elem>;
}

impl<F: Field> LinearAction<F> for ModuleRep<F> {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn act(&self, field: &F, k: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        self.action[k].mul_vec(field, v)
    }
}

/// `N^{⊕copies}` with the diagonal action, applied block by block.
#[derive(Clone, Copy, Debug)]
pub struct PowerAction<'a, F: Field> {
    pub base: &'a ModuleRep<F>,
    pub copies: usize,
}

impl<'a, F: Field> PowerAction<'a, F> {
    pub fn new(base: &'a ModuleRep<F>, copies: usize) -> Self {
        PowerAction { base, copies }
    }
}

impl<F: Field> LinearAction<F> for PowerAction<'_, F> {
    fn ambient_dim(&self) -> usize {
        self.base.dim * self.copies
    }

    fn act(&self, field: &F, k: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let n = self.base.dim;
        let mut out = Vec::with_capacity(v.len());
        for block in v.chunks(n.max(1)) {
            if block.iter().all(|x| field.is_zero(x)) {
                out.extend(std::iter::repeat_n(field.zero(), block.len()));
            } else {
                out.extend(self.base.action[k].mul_vec(field, block));
            }
        }
        out
    }
}

/// `a · v` for an algebra element `a`.
pub fn act_element<F: Field, A: LinearAction<F> + ?Sized>(
    alg: &ArtinianAlgebra<F>,
    action: &A,
    a: &[F::Elem],
    v: &[F::Elem],
) -> Vec<F::Elem> {
    let f = alg.field();
    let mut out = vec![f.zero(); action.ambient_dim()];
    for (k, c) in a.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let w = action.act(f, k, v);
        for (o, x) in out.iter_mut().zip(&w) {
            if !f.is_zero(x) {
                f.add_mul_assign(o, c, x);
            }
        }
    }
    out
}

pub fn max_ideal_times<F: Field, A: LinearAction<F> + ?Sized>(
    alg: &ArtinianAlgebra<F>,
    action: &A,
    u: &Subspace<F::Elem>,
) -> Subspace<F::Elem> {
    let f = alg.field();
    let mut out = Subspace::zero(action.ambient_dim());
    for &g in alg.generator_indices() {
        for v in u.basis() {
            out.insert(f, &action.act(f, g, v));
        }
    }
    out
}

pub fn generated_submodule<F: Field, A: LinearAction<F> + ?Sized>(
    alg: &ArtinianAlgebra<F>,
    action: &A,
    vectors: &[Vec<F::Elem>],
) -> Subspace<F::Elem> {
    let f = alg.field();
    let mut out = Subspace::zero(action.ambient_dim());
    for v in vectors {
        for k in 0..alg.dim() {
            out.insert(f, &action.act(f, k, v));
        }
    }
    out
}

/// Minimal generators of the submodule `U` modulo the submodule `B ⊆ U`:
/// basis vectors of `U` chosen greedily (in RREF order) outside `mU + B`.
pub fn minimal_generators<F: Field, A: LinearAction<F> + ?Sized>(
    alg: &ArtinianAlgebra<F>,
    action: &A,
    u: &Subspace<F::Elem>,
    modulo: &Subspace<F::Elem>,
) -> Vec<Vec<F::Elem>> {
    let f = alg.field();
    let mut span = max_ideal_times(alg, action, u).sum(f, modulo).expect("same ambient");
    let mut out = Vec::new();
    for v in u.basis() {
        if span.insert(f, v) {
            out.push(v.clone());
        }
    }
    out
}

pub fn submodule_rep<F: Field, A: LinearAction<F> + ?Sized>(
    alg: &ArtinianAlgebra<F>,
    action: &A,
    u: &Subspace<F::Elem>,
) -> ModuleRep<F> {
    let f = alg.field();
    let mats = (0..alg.dim())
        .map(|k| {
            let cols: Vec<Vec<F::Elem>> =
                u.basis().iter().map(|v| u.coordinates_unchecked(&action.act(f, k, v))).collect();
            Matrix::from_columns(f, u.dim(), &cols)
        })
        .collect();
    ModuleRep::new_unchecked(alg, mats)
}

pub fn quotient_rep<F: Field, A: LinearAction<F> + ?Sized>(
    alg: &ArtinianAlgebra<F>,
    action: &A,
    w: &Subspace<F::Elem>,
) -> ModuleRep<F> {
    let f = alg.field();
    let n = action.ambient_dim();
    let keep = w.complement_columns();
    let mats = (0..alg.dim())
        .map(|k| {
            let cols: Vec<Vec<F::Elem>> = keep
                .iter()
                .map(|&c| {
                    let img = w.reduce(f, &action.act(f, k, &unit_vector(f, n, c)));
                    keep.iter().map(|&j| img[j].clone()).collect()
                })
                .collect();
            Matrix::from_columns(f, keep.len(), &cols)
        })
        .collect();
    ModuleRep::new_unchecked(alg, mats)
}

pub fn subquotient_rep<F: Field, A: LinearAction<F> + ?Sized>(
    alg: &ArtinianAlgebra<F>,
    action: &A,
    z: &Subspace<F::Elem>,
    b: &Subspace<F::Elem>,
) -> ModuleRep<F> {
    let f = alg.field();
    let sub = submodule_rep(alg, action, z);
    let b_in_z = Subspace::span(f, z.dim(), b.basis().iter().map(|v| z.coordinates_unchecked(v)).collect::<Vec<_>>());
    quotient_rep(alg, &sub, &b_in_z)
}

/// `ann(Z/B) = {a : aZ ⊆ B}`, tested on minimal generators of `Z/B` only.
pub fn annihilator_of_subquotient<F: Field, A: LinearAction<F> + ?Sized>(
    alg: &ArtinianAlgebra<F>,
    action: &A,
    z: &Subspace<F::Elem>,
    b: &Subspace<F::Elem>,
) -> Ideal<F::Elem> {
    let f = alg.field();
    let gens = minimal_generators(alg, action, z, b);
    if gens.is_empty() {
        return alg.unit_ideal();
    }
    let n = action.ambient_dim();
    let cols: Vec<Vec<F::Elem>> = (0..alg.dim())
        .map(|k| gens.iter().flat_map(|g| b.reduce(f, &action.act(f, k, g))).collect())
        .collect();
    let m = Matrix::from_columns(f, gens.len() * n, &cols);
    alg.ideal(kernel(f, &m)).expect("annihilators are ideals")
}


/// An ideal viewed as an `R`-module.
pub fn ideal_module<F: Field>(alg: &ArtinianAlgebra<F>, ideal: &Ideal<F::Elem>) -> ModuleRep<F> {
    ModuleRep::regular(alg).submodule(alg, ideal.space())
}

/// `R / I` as an `R`-module.
pub fn cyclic_module<F: Field>(alg: &ArtinianAlgebra<F>, ideal: &Ideal<F::Elem>) -> ModuleRep<F> {
    ModuleRep::regular(alg).quotient(alg, ideal.space())
}

//! The superalgebra data model.
//!
//! A [`SuperAlgebra`] of type `(m, n)` has even basis `e_1..e_m` and odd
//! basis `f_1..f_n`. Internally the constants live in a [`Table`] listed in
//! graded order (all even vectors first); [`SuperAlgebra::flatten`] produces
//! the table in the algebra's declared basis order.

mod envelope;
mod format;
mod identity;
mod table;

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactmath::{ExprError, Field, Rational};

pub use envelope::{envelope_jordan_check, EnvelopeConfig, EnvelopeFailure, EnvelopeReport};
pub use format::{parse_alg_file, AlgRecord};
pub use identity::{check_super_jordan, jordan_defect, JordanFailure, JordanReport};
pub(crate) use table::leibniz_system;
pub use table::{unit, QTable, Subspace, Table};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("product {0} does not respect the grading")]
    GradingViolation(String),
    #[error("product {0} listed twice with conflicting values")]
    DuplicateProduct(String),
    #[error("square of odd vector {0} must vanish")]
    SquareOfOdd(String),
    #[error("unknown basis vector `{0}`")]
    UnknownBasis(String),
    #[error("basis order must list every basis vector exactly once")]
    BadBasisOrder,
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("{0}")]
    Expr(#[from] ExprError),
    #[error("family `{0}` needs a parameter value")]
    MissingParameter(String),
    #[error("`{0}` is not a family and takes no parameter")]
    UnexpectedParameter(String),
    #[error("argument is not homogeneous")]
    NonHomogeneousArgument,
}

/// One product rule `left * right = Σ coeff * name`.
#[derive(Clone, Debug, PartialEq)]
pub struct Product<F> {
    pub left: String,
    pub right: String,
    pub rhs: Vec<(String, F)>,
}

/// Element split into even and odd coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<F> {
    pub even: Vec<F>,
    pub odd: Vec<F>,
}

impl<F: Field> Element<F> {
    pub fn zero(m: usize, n: usize) -> Self {
        Element {
            even: vec![F::zero(); m],
            odd: vec![F::zero(); n],
        }
    }

    pub fn from_coords(m: usize, v: Vec<F>) -> Self {
        let mut even = v;
        let odd = even.split_off(m);
        Element { even, odd }
    }

    pub fn coords(&self) -> Vec<F> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }

    /// `Some(0)` or `Some(1)` for homogeneous elements (zero counts as even).
    pub fn parity(&self) -> Option<u8> {
        let has_even = self.even.iter().any(|v| !v.is_zero());
        let has_odd = self.odd.iter().any(|v| !v.is_zero());
        match (has_even, has_odd) {
            (_, false) => Some(0),
            (false, true) => Some(1),
            (true, true) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parity() == Some(0) && self.even.iter().all(Zero::is_zero)
    }
}

/// `(m, n)`-graded supercommutative algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperAlgebra<F = Rational> {
    name: Option<String>,
    m: usize,
    n: usize,
    table: Table<F>,
    basis_order: Vec<String>,
}

/// Graded dimensions of `J^1, J^2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerFiltration {
    pub dims: Vec<(usize, usize)>,
}

/// Default declared order: odd vectors first for type `(1, 3)`, even first
/// otherwise.
pub fn default_basis_order(m: usize, n: usize, even: &[String], odd: &[String]) -> Vec<String> {
    if (m, n) == (1, 3) {
        odd.iter().chain(even).cloned().collect()
    } else {
        even.iter().chain(odd).cloned().collect()
    }
}

impl<F: Field> SuperAlgebra<F> {
    /// Builds an algebra from products listed once per unordered pair; the
    /// opposite order is filled in by supercommutativity.
    pub fn load(
        name: Option<String>,
        even: Vec<String>,
        odd: Vec<String>,
        products: &[Product<F>],
        basis_order: Option<Vec<String>>,
    ) -> Result<Self, LoadError> {
        let (m, n) = (even.len(), odd.len());
        let names: Vec<String> = even.iter().chain(&odd).cloned().collect();
        let parity: Vec<u8> = (0..m + n).map(|i| u8::from(i >= m)).collect();
        let idx = |s: &str| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| LoadError::UnknownBasis(s.to_string()))
        };
        let mut table = Table::zero(names.clone(), parity.clone());
        let mut seen: BTreeMap<(usize, usize), Vec<F>> = BTreeMap::new();
        for p in products {
            let label = format!("{}*{}", p.left, p.right);
            let (i, j) = (idx(&p.left)?, idx(&p.right)?);
            let mut v = vec![F::zero(); m + n];
            for (target, c) in &p.rhs {
                let k = idx(target)?;
                v[k] = v[k].clone() + c.clone();
            }
            let nonzero = v.iter().any(|c| !c.is_zero());
            if nonzero && i == j && parity[i] == 1 {
                return Err(LoadError::SquareOfOdd(p.left.clone()));
            }
            let target_parity = parity[i] ^ parity[j];
            if v.iter()
                .enumerate()
                .any(|(k, c)| !c.is_zero() && parity[k] != target_parity)
            {
                return Err(LoadError::GradingViolation(label));
            }
            let sign_odd = parity[i] & parity[j] == 1;
            let mirrored: Vec<F> = if sign_odd {
                v.iter().map(|c| -c.clone()).collect()
            } else {
                v.clone()
            };
            for ((a, b), val) in [((i, j), v), ((j, i), mirrored)] {
                if let Some(prev) = seen.get(&(a, b)) {
                    if *prev != val {
                        return Err(LoadError::DuplicateProduct(label));
                    }
                    continue;
                }
                for (k, c) in val.iter().enumerate() {
                    table.set(a, b, k, c.clone());
                }
                seen.insert((a, b), val);
            }
        }
        let basis_order = match basis_order {
            Some(o) => {
                let mut sorted = o.clone();
                sorted.sort();
                let mut all = names.clone();
                all.sort();
                if sorted != all {
                    return Err(LoadError::BadBasisOrder);
                }
                o
            }
            None => default_basis_order(m, n, &even, &odd),
        };
        Ok(SuperAlgebra {
            name,
            m,
            n,
            table,
            basis_order,
        })
    }

    /// Wraps a table already listed in graded order. No identity or
    /// supercommutativity check is made.
    pub fn from_graded_table(
        name: Option<String>,
        m: usize,
        n: usize,
        table: Table<F>,
        basis_order: Vec<String>,
    ) -> Self {
        assert_eq!(table.dim(), m + n);
        assert!(table
            .parity()
            .iter()
            .enumerate()
            .all(|(i, &p)| p == u8::from(i >= m)));
        SuperAlgebra {
            name,
            m,
            n,
            table,
            basis_order,
        }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        let even: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
        let odd: Vec<String> = (1..=n).map(|i| format!("f{i}")).collect();
        SuperAlgebra::load(None, even, odd, &[], None).expect("zero algebra")
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    pub fn basis_order(&self) -> &[String] {
        &self.basis_order
    }

    pub fn even_names(&self) -> &[String] {
        &self.table.names()[..self.m]
    }

    pub fn odd_names(&self) -> &[String] {
        &self.table.names()[self.m..]
    }

    /// Constants in graded order (even vectors first).
    pub fn graded_table(&self) -> &Table<F> {
        &self.table
    }

    pub fn alpha(&self, i: usize, j: usize, k: usize) -> &F {
        self.table.get(i, j, k)
    }

    pub fn beta(&self, i: usize, p: usize, q: usize) -> &F {
        self.table.get(i, self.m + p, self.m + q)
    }

    pub fn gamma(&self, p: usize, i: usize, q: usize) -> &F {
        self.table.get(self.m + p, i, self.m + q)
    }

    pub fn delta(&self, p: usize, q: usize, k: usize) -> &F {
        self.table.get(self.m + p, self.m + q, k)
    }

    /// Number of independent structure-constant slots, `m^3 + 3mn^2`.
    pub fn ambient_dimension(&self) -> usize {
        ambient_dimension(self.m, self.n)
    }

    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        Element::from_coords(self.m, self.table.multiply(&x.coords(), &y.coords()))
    }

    pub fn basis_element(&self, name: &str) -> Option<Element<F>> {
        let i = self.table.index_of(name)?;
        Some(Element::from_coords(self.m, unit(self.dim(), i)))
    }

    /// Ungraded table in the declared basis order.
    pub fn flatten(&self) -> Table<F> {
        self.table
            .reorder(&self.basis_order)
            .expect("basis order is a permutation of the basis")
    }

    /// Graded subspace product; the returned basis is in graded coordinates.
    pub fn subspace_product(&self, u: &Subspace<F>, w: &Subspace<F>) -> Subspace<F> {
        self.table.subspace_product(u, w)
    }

    /// Graded dimensions `(dim U_0, dim U_1)` of a graded subspace.
    pub fn graded_dims(&self, u: &Subspace<F>) -> (usize, usize) {
        let even: Vec<usize> = (0..self.m).collect();
        let odd: Vec<usize> = (self.m..self.dim()).collect();
        (u.projected_dim(&even), u.projected_dim(&odd))
    }

    pub fn power_filtration(&self, r_max: usize) -> PowerFiltration {
        let dims = self
            .table
            .powers(r_max.max(1))
            .iter()
            .map(|s| self.graded_dims(s))
            .collect();
        PowerFiltration { dims }
    }

    /// Replaces the constants, keeping names and grading.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SuperAlgebra<G> {
        SuperAlgebra {
            name: self.name.clone(),
            m: self.m,
            n: self.n,
            table: self.table.map(f),
            basis_order: self.basis_order.clone(),
        }
    }
}

pub fn ambient_dimension(m: usize, n: usize) -> usize {
    m * m * m + 3 * m * n * n
}

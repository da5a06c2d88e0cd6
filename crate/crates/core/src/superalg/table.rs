//! Flattened multiplication tables over a named, ordered basis.

use std::fmt;

use num_traits::Zero;

use crate::exactmath::{Field, Matrix, Rational};

/// Structure constants `c[i][j][k]` with `x_i x_j = Σ_k c[i][j][k] x_k`.
///
/// Each basis vector carries a parity (0 even, 1 odd). Tables produced by
/// ungraded basis changes keep the parities of the vectors they were named
/// after, but nothing in this type enforces grading.
#[derive(Clone, PartialEq, Debug)]
pub struct Table<F> {
    names: Vec<String>,
    parity: Vec<u8>,
    c: Vec<F>,
}

impl<F: Field> Table<F> {
    pub fn zero(names: Vec<String>, parity: Vec<u8>) -> Self {
        assert_eq!(names.len(), parity.len());
        let d = names.len();
        Table {
            names,
            parity,
            c: vec![F::zero(); d * d * d],
        }
    }

    pub fn from_constants(names: Vec<String>, parity: Vec<u8>, c: Vec<F>) -> Self {
        let d = names.len();
        assert_eq!(parity.len(), d);
        assert_eq!(c.len(), d * d * d);
        Table { names, parity, c }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn constants(&self) -> &[F] {
        &self.c
    }

    #[inline]
    fn at(&self, i: usize, j: usize, k: usize) -> usize {
        let d = self.dim();
        (i * d + j) * d + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &F {
        &self.c[self.at(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: F) {
        let idx = self.at(i, j, k);
        self.c[idx] = v;
    }

    /// Coordinates of `x_i x_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[F] {
        let d = self.dim();
        let start = (i * d + j) * d;
        &self.c[start..start + d]
    }

    pub fn multiply(&self, x: &[F], y: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi.clone() * yj.clone();
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.c.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Table<G> {
        Table {
            names: self.names.clone(),
            parity: self.parity.clone(),
            c: self.c.iter().map(f).collect(),
        }
    }

    /// The same algebra listed in a different order of the same basis.
    pub fn reorder(&self, order: &[String]) -> Option<Table<F>> {
        let perm: Vec<usize> = order
            .iter()
            .map(|n| self.index_of(n))
            .collect::<Option<_>>()?;
        if perm.len() != self.dim() {
            return None;
        }
        let d = self.dim();
        let mut out = Table::zero(
            order.to_vec(),
            perm.iter().map(|&p| self.parity[p]).collect(),
        );
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    out.set(i, j, k, self.get(perm[i], perm[j], perm[k]).clone());
                }
            }
        }
        Some(out)
    }

    /// Renames the basis without touching the constants.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim());
        self.names = names;
        self
    }

    /// Sub-table on the given basis indices, assuming they span a subalgebra.
    pub fn restrict(&self, idx: &[usize]) -> Table<F> {
        let mut out = Table::zero(
            idx.iter().map(|&i| self.names[i].clone()).collect(),
            idx.iter().map(|&i| self.parity[i]).collect(),
        );
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                for (c, &k) in idx.iter().enumerate() {
                    out.set(a, b, c, self.get(i, j, k).clone());
                }
            }
        }
        out
    }

    /// Commutativity with the sign `(-1)^{|x||y|}`, taken on basis vectors.
    pub fn is_supercommutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (i..d).all(|j| {
                let odd = self.parity[i] & self.parity[j] == 1;
                (0..d).all(|k| {
                    let a = self.get(i, j, k);
                    let b = self.get(j, i, k);
                    if odd {
                        *a == -b.clone()
                    } else {
                        a == b
                    }
                })
            })
        })
    }

    /// Every nonzero constant `c[i][j][k]` has `|x_k| = |x_i| + |x_j|`.
    pub fn respects_grading(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    self.get(i, j, k).is_zero()
                        || self.parity[k] == (self.parity[i] ^ self.parity[j])
                })
            })
        })
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        let e = |i: usize| unit::<F>(d, i);
        (0..d).all(|i| {
            (0..d).all(|j| {
                let xy = self.basis_product(i, j).to_vec();
                (0..d).all(|k| {
                    let left = self.multiply(&xy, &e(k));
                    let right = self.multiply(&e(i), self.basis_product(j, k));
                    left == right
                })
            })
        })
    }

    /// Left multiplication operator: column `k` holds `x x_k`.
    pub fn left_mult(&self, x: &[F]) -> Matrix<F> {
        let d = self.dim();
        let mut m: Matrix<F> = Matrix::zeros(d, d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for k in 0..d {
                for (l, c) in self.basis_product(i, k).iter().enumerate() {
                    if !c.is_zero() {
                        m[(l, k)] = m[(l, k)].clone() + xi.clone() * c.clone();
                    }
                }
            }
        }
        m
    }

    /// Span of all products `u w` with `u` in `U`, `w` in `W`, in reduced
    /// echelon form.
    pub fn subspace_product(&self, u: &Subspace<F>, w: &Subspace<F>) -> Subspace<F> {
        let mut rows = Vec::new();
        for a in &u.basis {
            for b in &w.basis {
                let p = self.multiply(a, b);
                if p.iter().any(|v| !v.is_zero()) {
                    rows.push(p);
                }
            }
        }
        Subspace::span(self.dim(), rows)
    }

    pub fn whole_space(&self) -> Subspace<F> {
        let d = self.dim();
        Subspace::span(d, (0..d).map(|i| unit(d, i)).collect())
    }

    /// `J^1 .. J^r_max` by `J^r = Σ_{i=1}^{r-1} J^{r-i} J^i`.
    pub fn powers(&self, r_max: usize) -> Vec<Subspace<F>> {
        let mut pw: Vec<Subspace<F>> = vec![self.whole_space()];
        for r in 2..=r_max {
            let mut rows = Vec::new();
            for i in 1..r {
                let p = self.subspace_product(&pw[r - i - 1], &pw[i - 1]);
                rows.extend(p.basis);
            }
            pw.push(Subspace::span(self.dim(), rows));
        }
        pw
    }

    /// Dimension of the Lie algebra of ordinary (ungraded) derivations.
    pub fn derivation_dim(&self) -> usize {
        let d = self.dim();
        let unknowns: Vec<(usize, usize)> =
            (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
        leibniz_system(self, &unknowns, |_| false).nullspace_dim()
    }

    /// Human-readable list of nonzero products `x_i x_j` with `i <= j`.
    pub fn display_products(&self) -> Vec<String> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i..d {
                let terms: Vec<String> = (0..d)
                    .filter(|&k| !self.get(i, j, k).is_zero())
                    .map(|k| format!("{} {}", self.get(i, j, k), self.names[k]))
                    .collect();
                if !terms.is_empty() {
                    out.push(format!(
                        "{}*{} = {}",
                        self.names[i],
                        self.names[j],
                        terms.join(" + ")
                    ));
                }
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Table<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.display_products();
        if p.is_empty() {
            write!(f, "(zero product)")
        } else {
            write!(f, "{}", p.join(", "))
        }
    }
}

/// The `i`-th coordinate vector of length `d`.
pub fn unit<F: Field>(d: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); d];
    v[i] = F::one();
    v
}

/// Linear system whose nullspace is the space of derivations supported on
/// `unknowns`, a list of matrix positions `(a, b)` meaning `D(x_b) ∋ x_a`.
///
/// `odd_sign(i)` reports whether `(-1)^{|D||x_i|}` is `-1`.
pub(crate) fn leibniz_system<F: Field>(
    t: &Table<F>,
    unknowns: &[(usize, usize)],
    odd_sign: impl Fn(usize) -> bool,
) -> Matrix<F> {
    let d = t.dim();
    let mut m: Matrix<F> = Matrix::zeros(d * d * d, unknowns.len());
    for (u, &(a, b)) in unknowns.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                let row0 = (i * d + j) * d;
                // D(x_i x_j) contributes c[i][j][b] x_a
                let c = t.get(i, j, b);
                if !c.is_zero() {
                    m[(row0 + a, u)] = m[(row0 + a, u)].clone() + c.clone();
                }
                // D(x_i) x_j contributes -x_a x_j when i == b
                if i == b {
                    for (l, c) in t.basis_product(a, j).iter().enumerate() {
                        if !c.is_zero() {
                            m[(row0 + l, u)] = m[(row0 + l, u)].clone() - c.clone();
                        }
                    }
                }
                // sign * x_i D(x_j) contributes -sign x_i x_a when j == b
                if j == b {
                    let neg = odd_sign(i);
                    for (l, c) in t.basis_product(i, a).iter().enumerate() {
                        if !c.is_zero() {
                            let v = if neg { c.clone() } else { -c.clone() };
                            m[(row0 + l, u)] = m[(row0 + l, u)].clone() + v;
                        }
                    }
                }
            }
        }
    }
    m
}

/// Subspace given by a basis in reduced row echelon form.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F> {
    pub dim_ambient: usize,
    pub basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn span(dim_ambient: usize, rows: Vec<Vec<F>>) -> Self {
        if rows.is_empty() {
            return Subspace {
                dim_ambient,
                basis: Vec::new(),
            };
        }
        let (red, _) = Matrix::from_rows(rows).rref();
        Subspace {
            dim_ambient,
            basis: red.to_rows(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rank of the projection onto the coordinates in `coords`.
    pub fn projected_dim(&self, coords: &[usize]) -> usize {
        if self.basis.is_empty() || coords.is_empty() {
            return 0;
        }
        let rows = self
            .basis
            .iter()
            .map(|v| coords.iter().map(|&c| v[c].clone()).collect())
            .collect();
        Matrix::from_rows(rows).rank()
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }
}

/// Rational-valued convenience used by tests and invariants.
pub type QTable = Table<Rational>;

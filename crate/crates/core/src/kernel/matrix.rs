//! Sparse matrices over an exact field, with the elimination routines the
//! whole engine is built on: rank, kernel, solve, inverse.
//!
//! Matrices under 64 rows and columns are eliminated densely; larger ones go
//! through a sparse row elimination with Markowitz-style pivot selection.
//! Both paths produce identical results (tested against each other).

use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `a += c * b`
pub fn vec_axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += c * y;
    }
}

const DENSE_LIMIT: usize = 64;

/// Sparse matrix: only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    pub fn from_entries<I>(field: Field, rows: usize, cols: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = Self::zero(field, rows, cols);
        for (r, c, s) in it {
            m.add_entry(r, c, s);
        }
        m
    }

    pub fn from_dense(field: Field, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(field, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, s) in row.into_iter().enumerate() {
                if !s.is_zero() {
                    m.entries.insert((i, j), s);
                }
            }
        }
        m
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        Self::from_dense(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&n| field.from_i64(n)).collect())
                .collect(),
        )
    }

    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zero(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, s) in col.iter().enumerate() {
                if !s.is_zero() {
                    m.entries.insert((i, j), s.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if s.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), s);
        }
    }

    pub fn add_entry(&mut self, r: usize, c: usize, s: Scalar) {
        if s.is_zero() {
            return;
        }
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let v = match self.entries.remove(&(r, c)) {
            Some(old) => old + s,
            None => s,
        };
        if !v.is_zero() {
            self.entries.insert((r, c), v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), s)| (r, c, s))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.field, self.cols, self.rows);
        for (&(r, c), s) in &self.entries {
            m.entries.insert((c, r), s.clone());
        }
        m
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        for (_, s) in m.entries.iter_mut() {
            *s = -s.clone();
        }
        m
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut m = Self::zero(self.field, self.rows, self.cols);
        if c.is_zero() {
            return m;
        }
        for (&k, s) in &self.entries {
            m.entries.insert(k, c * s);
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (&(r, c), s) in &other.entries {
            m.add_entry(r, c, s.clone());
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        // row-major view of other for cache-friendly sparse product
        let mut other_rows: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); other.rows];
        for (&(r, c), s) in &other.entries {
            other_rows[r].push((c, s));
        }
        let mut m = Self::zero(self.field, self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &other_rows[k] {
                m.add_entry(r, c, a * b);
            }
        }
        m
    }

    /// Kronecker (tensor) product in row-major block layout.
    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zero(
            self.field,
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for (&(r1, c1), a) in &self.entries {
            for (&(r2, c2), b) in &other.entries {
                m.entries
                    .insert((r1 * other.rows + r2, c1 * other.cols + c2), a * b);
            }
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zero(self.field, self.rows, self.cols + other.cols);
        for (&(r, c), s) in &self.entries {
            m.entries.insert((r, c), s.clone());
        }
        for (&(r, c), s) in &other.entries {
            m.entries.insert((r, c + self.cols), s.clone());
        }
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut m = Self::zero(self.field, self.rows + other.rows, self.cols);
        for (&(r, c), s) in &self.entries {
            m.entries.insert((r, c), s.clone());
        }
        for (&(r, c), s) in &other.entries {
            m.entries.insert((r + self.rows, c), s.clone());
        }
        m
    }

    pub fn column(&self, j: usize) -> Vector {
        let mut v = zero_vector(self.field, self.rows);
        for (&(r, c), s) in &self.entries {
            if c == j {
                v[r] = s.clone();
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<Vector> {
        let mut cols = vec![zero_vector(self.field, self.rows); self.cols];
        for (&(r, c), s) in &self.entries {
            cols[c][r] = s.clone();
        }
        cols
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = zero_vector(self.field, self.rows);
        for (&(r, c), s) in &self.entries {
            if !v[c].is_zero() {
                out[r] += s * &v[c];
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (&(r, c), s) in &self.entries {
            d[r][c] = s.clone();
        }
        d
    }

    /// Row-major serialization of all entries as rational literals.
    pub fn dense_literals(&self) -> Vec<Vec<String>> {
        self.to_dense()
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.literal()).collect())
            .collect()
    }

    fn to_sparse_rows(&self) -> Vec<BTreeMap<usize, Scalar>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (&(r, c), s) in &self.entries {
            rows[r].insert(c, s.clone());
        }
        rows
    }

    fn echelon(&self) -> Echelon {
        if self.rows < DENSE_LIMIT && self.cols < DENSE_LIMIT {
            echelon_dense(self.field, self.to_dense(), self.cols)
        } else {
            echelon_sparse(self.field, self.to_sparse_rows(), self.cols)
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space `{ v : M v = 0 }`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let ech = self.echelon();
        let pivot_of_col: BTreeMap<usize, usize> = ech
            .pivots
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut v = zero_vector(self.field, self.cols);
            v[free] = self.field.one();
            for (&pc, &pr) in &pivot_of_col {
                // rref row pr: x_pc + sum_{c > pc non-pivot} a_c x_c = 0
                if let Some(a) = ech.rows[pr].get(&free) {
                    v[pc] = -a.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `M x = v`, or `None` when `v` is not in the image.
    pub fn solve(&self, v: &[Scalar]) -> Option<Vector> {
        let rhs = SparseMatrix::from_columns(self.field, self.rows, &[v.to_vec()]);
        self.solve_matrix(&rhs).map(|m| m.column(0))
    }

    /// Columnwise solve: finds `X` with `M X = RHS`, or `None` if any column
    /// of `RHS` is outside the image. One elimination for all columns.
    pub fn solve_matrix(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "rhs row count mismatch");
        let aug = self.hstack(rhs);
        let ech = aug.echelon();
        // any pivot in the augmented block means inconsistency
        if ech.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = SparseMatrix::zero(self.field, self.cols, rhs.cols);
        for (pr, &pc) in ech.pivots.iter().enumerate() {
            for (&c, s) in ech.rows[pr].range(self.cols..) {
                x.set(pc, c - self.cols, s.clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_matrix(&SparseMatrix::identity(self.field, self.rows))?;
        // solve_matrix succeeds for singular square systems too; check.
        if self.mul(&x) == SparseMatrix::identity(self.field, self.rows) {
            Some(x)
        } else {
            None
        }
    }

    /// Indices of pivot columns; the corresponding columns of `self` form a
    /// basis of the image.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    pub fn image_basis(&self) -> Vec<Vector> {
        self.pivot_columns()
            .into_iter()
            .map(|j| self.column(j))
            .collect()
    }

    /// For a matrix `B` with full column rank, returns `L` with `L B = I`.
    /// `L` is exact on the column space of `B`: it picks an invertible row
    /// subset and inverts it, so it works over any field.
    pub fn left_inverse_on_columnspace(&self) -> Option<Self> {
        let pivot_rows = self.transpose().pivot_columns();
        if pivot_rows.len() != self.cols {
            return None;
        }
        let mut sub = SparseMatrix::zero(self.field, self.cols, self.cols);
        for (i, &r) in pivot_rows.iter().enumerate() {
            for (rr, c, s) in self.iter() {
                if rr == r {
                    sub.set(i, c, s.clone());
                }
            }
        }
        let sub_inv = sub.inverse()?;
        // L = sub_inv composed with row selection
        let mut select = SparseMatrix::zero(self.field, self.cols, self.rows);
        for (i, &r) in pivot_rows.iter().enumerate() {
            select.set(i, r, self.field.one());
        }
        Some(sub_inv.mul(&select))
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|s| s.literal()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

struct Echelon {
    /// Reduced rows in pivot order; row i has its pivot at `pivots[i]` with
    /// coefficient 1 and zeros in every other pivot column.
    rows: Vec<BTreeMap<usize, Scalar>>,
    pivots: Vec<usize>,
}

fn echelon_dense(_field: Field, mut m: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut used = vec![false; rows];
    for c in 0..cols {
        let Some(r) = (0..rows).find(|&r| !used[r] && !m[r][c].is_zero()) else {
            continue;
        };
        used[r] = true;
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x *= inv.clone();
        }
        for r2 in 0..rows {
            if r2 != r && !m[r2][c].is_zero() {
                let f = -m[r2][c].clone();
                let pivot_row = m[r].clone();
                vec_axpy(&mut m[r2], &f, &pivot_row);
            }
        }
        pivots.push(c);
        pivot_rows.push(r);
    }
    let out_rows = pivot_rows
        .iter()
        .map(|&r| {
            m[r].iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(j, s)| (j, s.clone()))
                .collect()
        })
        .collect();
    Echelon {
        rows: out_rows,
        pivots,
    }
}

fn echelon_sparse(
    field: Field,
    mut rows: Vec<BTreeMap<usize, Scalar>>,
    cols: usize,
) -> Echelon {
    let _ = field;
    let nrows = rows.len();
    let mut used = vec![false; nrows];
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row)

    loop {
        // column fill counts among unused rows
        let mut col_count = vec![0usize; cols];
        for (r, row) in rows.iter().enumerate() {
            if used[r] {
                continue;
            }
            for (&c, _) in row.iter() {
                col_count[c] += 1;
            }
        }
        // Markowitz-style pivot: minimize (row_nnz - 1) * (col_count - 1),
        // ties broken by (col, row) for determinism.
        let mut best: Option<(usize, usize, usize)> = None; // (score, col, row)
        for (r, row) in rows.iter().enumerate() {
            if used[r] || row.is_empty() {
                continue;
            }
            let rn = row.len() - 1;
            for (&c, _) in row.iter() {
                let score = rn * (col_count[c] - 1);
                let cand = (score, c, r);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, pc, pr)) = best else { break };
        used[pr] = true;
        let inv = rows[pr][&pc].inv().expect("nonzero pivot");
        let prow: Vec<(usize, Scalar)> =
            rows[pr].iter().map(|(&c, s)| (c, s * &inv)).collect();
        rows[pr] = prow.iter().cloned().collect();
        for r in 0..nrows {
            if r == pr {
                continue;
            }
            let Some(f) = rows[r].get(&pc).cloned() else {
                continue;
            };
            let f = -f;
            for (c, s) in &prow {
                let v = match rows[r].remove(c) {
                    Some(old) => old + (&f * s),
                    None => &f * s,
                };
                if !v.is_zero() {
                    rows[r].insert(*c, v);
                }
            }
        }
        pivots.push((pc, pr));
    }
    // The Markowitz pass picks a fill-minimizing pivot set, which need not be
    // the canonical one. Re-reduce the surviving rows with first-nonzero
    // pivoting so sparse and dense elimination return identical forms.
    let reduced: Vec<BTreeMap<usize, Scalar>> = pivots
        .iter()
        .map(|&(_, r)| rows[r].clone())
        .filter(|r| !r.is_empty())
        .collect();
    canonicalize_rows(reduced, cols)
}

/// Standard reduced row echelon form with first-nonzero-column pivoting, on
/// sparse rows that already span the row space.
fn canonicalize_rows(mut rows: Vec<BTreeMap<usize, Scalar>>, cols: usize) -> Echelon {
    let _ = cols;
    let nrows = rows.len();
    let mut used = vec![false; nrows];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    loop {
        // first column holding a nonzero entry of an unused row
        let mut best: Option<(usize, usize)> = None; // (col, row)
        for (r, row) in rows.iter().enumerate() {
            if used[r] || row.is_empty() {
                continue;
            }
            let c = *row.keys().next().unwrap();
            if best.map_or(true, |(bc, br)| (c, r) < (bc, br)) {
                best = Some((c, r));
            }
        }
        let Some((pc, pr)) = best else { break };
        used[pr] = true;
        let inv = rows[pr][&pc].inv().expect("nonzero pivot");
        let prow: Vec<(usize, Scalar)> =
            rows[pr].iter().map(|(&c, s)| (c, s * &inv)).collect();
        rows[pr] = prow.iter().cloned().collect();
        for r in 0..nrows {
            if r == pr {
                continue;
            }
            let Some(f) = rows[r].get(&pc).cloned() else {
                continue;
            };
            let f = -f;
            for (c, s) in &prow {
                let v = match rows[r].remove(c) {
                    Some(old) => old + (&f * s),
                    None => &f * s,
                };
                if !v.is_zero() {
                    rows[r].insert(*c, v);
                }
            }
        }
        pivots.push((pc, pr));
    }
    pivots.sort();
    Echelon {
        rows: pivots.iter().map(|&(_, r)| rows[r].clone()).collect(),
        pivots: pivots.iter().map(|&(c, _)| c).collect(),
    }
}

/// Incrementally maintained row space with reduction bookkeeping. Used for
/// greedy basis selection and for Krylov-style dependency detection.
pub struct RowSpace {
    field: Field,
    dim: usize,
    /// echelon rows with pivot normalized to 1
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    /// combination[i] expresses rows[i] in terms of inserted vectors
    combos: Vec<Vector>,
    inserted: usize,
    track: bool,
}

impl RowSpace {
    pub fn new(field: Field, dim: usize, track_combinations: bool) -> Self {
        RowSpace {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
            track: track_combinations,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current space. Returns `None` if `v` was
    /// independent (and is now part of the space); otherwise returns the
    /// coefficients expressing `v` as a combination of previously *inserted*
    /// vectors (only when combination tracking is on, else an empty vec).
    pub fn insert(&mut self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        let mut combo = if self.track {
            let mut c = zero_vector(self.field, self.inserted + 1);
            c[self.inserted] = self.field.one();
            c
        } else {
            Vec::new()
        };
        for (i, &p) in self.pivots.iter().enumerate() {
            if !w[p].is_zero() {
                let f = -w[p].clone();
                vec_axpy(&mut w, &f, &self.rows[i]);
                if self.track {
                    let mut rc = self.combos[i].clone();
                    rc.resize(self.inserted + 1, self.field.zero());
                    vec_axpy(&mut combo, &f, &rc);
                }
            }
        }
        self.inserted += 1;
        match w.iter().position(|s| !s.is_zero()) {
            None => {
                if self.track {
                    // v = -sum of the combination's earlier part
                    combo.pop();
                    Some(combo.into_iter().map(|c| -c).collect())
                } else {
                    Some(Vec::new())
                }
            }
            Some(p) => {
                let inv = w[p].inv().expect("nonzero");
                let w: Vector = w.iter().map(|s| s * &inv).collect();
                let combo = if self.track {
                    combo.iter().map(|s| s * &inv).collect()
                } else {
                    Vec::new()
                };
                self.rows.push(w);
                self.pivots.push(p);
                self.combos.push(combo);
                None
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_is_zero(&self.residue(v))
    }

    /// Reduces `v` against the space without inserting it; the result is zero
    /// iff `v` lies in the space.
    pub fn residue(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if !w[p].is_zero() {
                let f = -w[p].clone();
                vec_axpy(&mut w, &f, &self.rows[i]);
            }
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Q
    }

    #[test]
    fn rank_identity_zero_proportional() {
        assert_eq!(SparseMatrix::identity(q(), 2).rank(), 2);
        assert_eq!(SparseMatrix::zero(q(), 3, 4).rank(), 0);
        let m = SparseMatrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_cases() {
        assert!(SparseMatrix::identity(q(), 3).kernel_basis().is_empty());
        assert_eq!(SparseMatrix::zero(q(), 2, 3).kernel_basis().len(), 3);
        let m = SparseMatrix::from_i64(q(), &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&m.apply(&k[0])));
    }

    #[test]
    fn solve_cases() {
        let id = SparseMatrix::identity(q(), 2);
        let v = vec![q().from_i64(3), q().from_i64(-5)];
        assert_eq!(id.solve(&v).unwrap(), v);

        let z = SparseMatrix::zero(q(), 2, 2);
        assert!(z.solve(&v).is_none());

        let m = SparseMatrix::from_i64(q(), &[&[2]]);
        let x = m.solve(&[q().one()]).unwrap();
        assert_eq!(x[0].literal(), "1/2");
    }

    #[test]
    fn inverse_roundtrip() {
        let m = SparseMatrix::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SparseMatrix::identity(q(), 2));
        let sing = SparseMatrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // force the sparse path with a 70-column matrix
        let field = q();
        let mut m = SparseMatrix::zero(field, 5, 70);
        for i in 0..5 {
            for j in 0..70 {
                if (i * 31 + j * 17) % 7 == 0 {
                    m.set(i, j, field.from_i64(((i + 2) * j) as i64 % 5 - 2));
                }
            }
        }
        let dense_rank = echelon_dense(field, m.to_dense(), m.cols()).pivots.len();
        assert_eq!(m.rank(), dense_rank);
        for v in m.kernel_basis() {
            assert!(vec_is_zero(&m.apply(&v)));
        }
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
    }

    #[test]
    fn rowspace_dependency_tracking() {
        let field = q();
        let mut rs = RowSpace::new(field, 3, true);
        let a = vec![field.from_i64(1), field.from_i64(0), field.from_i64(1)];
        let b = vec![field.from_i64(0), field.from_i64(1), field.from_i64(1)];
        let c = vec![field.from_i64(2), field.from_i64(3), field.from_i64(5)];
        assert!(rs.insert(&a).is_none());
        assert!(rs.insert(&b).is_none());
        let dep = rs.insert(&c).unwrap();
        // c = 2a + 3b
        assert_eq!(dep[0].literal(), "2");
        assert_eq!(dep[1].literal(), "3");
    }
}

#[cfg(test)]
mod sparse_path_tests {
    use super::*;

    // deterministic pseudo-random scalars
    fn next(state: &mut u64) -> i64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*state >> 33) % 7) as i64 - 3
    }

    #[test]
    fn sparse_elimination_matches_dense_on_large_random_matrices() {
        let f = Field::Q;
        let mut state = 42u64;
        for trial in 0..5 {
            let rows = 70 + trial * 3;
            let cols = 70 + trial * 5;
            let mut m = SparseMatrix::zero(f, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let v = next(&mut state);
                    if v != 0 && (r + c) % 3 == 0 {
                        m.set(r, c, f.from_i64(v));
                    }
                }
            }
            // dense reference on the same data
            let dense = echelon_dense(f, m.to_dense(), cols);
            let sparse = echelon_sparse(f, m.to_sparse_rows(), cols);
            assert_eq!(dense.pivots, sparse.pivots, "trial {trial}");
            for v in m.kernel_basis() {
                assert!(vec_is_zero(&m.apply(&v)));
            }
            assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        }
    }

    #[test]
    fn large_square_inverse_roundtrip() {
        let f = Field::Q;
        let mut state = 7u64;
        let n = 80;
        let mut m = SparseMatrix::identity(f, n);
        // well-conditioned-by-construction: identity plus sparse noise on one side
        for r in 0..n {
            for c in (r + 1)..n {
                let v = next(&mut state);
                if v != 0 && (r * 31 + c) % 5 == 0 {
                    m.set(r, c, f.from_i64(v));
                }
            }
        }
        let inv = m.inverse().expect("triangular with unit diagonal");
        assert_eq!(m.mul(&inv), SparseMatrix::identity(f, n));
    }
}

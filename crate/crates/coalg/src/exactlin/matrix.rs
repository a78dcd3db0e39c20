use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::scalar::{Field, Scalar};

/// A sparse row: nonzero entries sorted by column index.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Sparse exact matrix. Absent entries are zero; all entries share one field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.entries.insert((i, i), Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zero(rows.len(), ncols, field);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    ncols
                )));
            }
            for (j, s) in row.into_iter().enumerate() {
                m.set(i, j, s)?;
            }
        }
        Ok(m)
    }

    /// Convenience constructor from integer literals.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&n| Scalar::from_int(n, field)).collect())
            .collect();
        Matrix::from_rows(field, data).expect("consistent integer rows")
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) -> Result<()> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                got: s.field(),
            });
        }
        assert!(i < self.rows && j < self.cols, "index out of range");
        if s.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), s);
        }
        Ok(())
    }

    pub fn add_to(&mut self, i: usize, j: usize, s: Scalar) -> Result<()> {
        let cur = self.get(i, j);
        self.set(i, j, cur + s)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
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

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn sparse_row(&self, i: usize) -> SparseRow {
        self.entries
            .range((i, 0)..(i + 1, 0))
            .map(|(&(_, j), s)| (j, s.clone()))
            .collect()
    }

    pub fn dense_row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows, self.field);
        for (&(i, j), s) in &self.entries {
            t.entries.insert((j, i), s.clone());
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "matrix has {} cols, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Scalar::zero(self.field); self.rows];
        for (&(i, j), s) in &self.entries {
            if v[j].field() != self.field {
                return Err(Error::FieldMismatch {
                    expected: self.field,
                    got: v[j].field(),
                });
            }
            out[i] = out[i].clone() + s.clone() * v[j].clone();
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                got: other.field,
            });
        }
        let mut out = Matrix::zero(self.rows, other.cols, self.field);
        for (&(i, k), a) in &self.entries {
            for ((_, j), b) in other.entries.range((k, 0)..(k + 1, 0)) {
                out.add_to(i, *j, a.clone() * b.clone())?;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, self.field);
        for i in 0..self.rows {
            ech.insert(self.sparse_row(i));
        }
        ech.rank()
    }


    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incremental reduced row echelon structure over sparse rows.
/// Rows are kept fully reduced with leading coefficient 1 and pivot
/// columns strictly increasing.
pub struct Echelon {
    cols: usize,
    field: Field,
    // (pivot column, row) sorted by pivot column
    rows: Vec<(usize, SparseRow)>,
}

fn row_axpy(target: &mut SparseRow, coef: &Scalar, source: &SparseRow) {
    // target += coef * source, both sorted sparse rows
    if coef.is_zero() {
        return;
    }
    let mut out = SparseRow::with_capacity(target.len() + source.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < source.len() {
        if b >= source.len() || (a < target.len() && target[a].0 < source[b].0) {
            out.push(target[a].clone());
            a += 1;
        } else if a >= target.len() || source[b].0 < target[a].0 {
            let v = coef.clone() * source[b].1.clone();
            if !v.is_zero() {
                out.push((source[b].0, v));
            }
            b += 1;
        } else {
            let v = target[a].1.clone() + coef.clone() * source[b].1.clone();
            if !v.is_zero() {
                out.push((target[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    *target = out;
}

impl Echelon {
    pub fn new(cols: usize, field: Field) -> Self {
        Echelon {
            cols,
            field,
            rows: Vec::new(),
        }
    }

    /// Fully reduce `row` against the current pivot rows.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return row;
            };
            match self.rows.binary_search_by_key(&lead, |(p, _)| *p) {
                Ok(idx) => {
                    let coef = -row[0].1.clone();
                    let source = self.rows[idx].1.clone();
                    row_axpy(&mut row, &coef, &source);
                }
                Err(_) => {
                    // lead column is not a pivot; eliminate later pivot columns too
                    let mut changed = false;
                    for k in 1..row.len() {
                        let col = row[k].0;
                        if let Ok(idx) = self.rows.binary_search_by_key(&col, |(p, _)| *p) {
                            let coef = -row[k].1.clone();
                            let source = self.rows[idx].1.clone();
                            row_axpy(&mut row, &coef, &source);
                            changed = true;
                            break;
                        }
                    }
                    if !changed {
                        return row;
                    }
                }
            }
        }
    }

    /// Insert a row; returns true when the rank grows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((lead, lead_val)) = row.first().cloned() else {
            return false;
        };
        let inv = lead_val.inv().expect("nonzero leading entry");
        for (_, v) in row.iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pos = self
            .rows
            .binary_search_by_key(&lead, |(p, _)| *p)
            .unwrap_err();
        // back-reduce existing rows against the new pivot
        for (_, existing) in self.rows.iter_mut() {
            if let Some(k) = existing.iter().position(|(c, _)| *c == lead) {
                let coef = -existing[k].1.clone();
                row_axpy(existing, &coef, &row);
            }
        }
        self.rows.insert(pos, (lead, row));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn rows_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|(_, r)| {
                let mut v = vec![Scalar::zero(self.field); self.cols];
                for (j, s) in r {
                    v[*j] = s.clone();
                }
                v
            })
            .collect()
    }

    /// True when the vector lies in the row space.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let row: SparseRow = v
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(j, s)| (j, s.clone()))
            .collect();
        self.reduce(row).is_empty()
    }

    /// Basis of { x : r·x = 0 for every row r }.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[free] = Scalar::one(self.field);
            for (p, row) in &self.rows {
                if let Some((_, c)) = row.iter().find(|(j, _)| *j == free) {
                    v[*p] = -c.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Reduced row echelon form with pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut ech = Echelon::new(m.cols(), m.field());
    for i in 0..m.rows() {
        ech.insert(m.sparse_row(i));
    }
    let pivots = ech.pivots();
    let rows = ech.rows_dense();
    let out = Matrix::from_rows(m.field(), rows).expect("echelon rows are consistent");
    (out, pivots)
}

/// Basis of the right kernel { v : m·v = 0 }.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new(m.cols(), m.field());
    for i in 0..m.rows() {
        ech.insert(m.sparse_row(i));
    }
    ech.kernel()
}

/// Some x with a·x = b, if the system is consistent.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows() {
        return Err(Error::ShapeMismatch(format!(
            "matrix has {} rows, rhs has length {}",
            a.rows(),
            b.len()
        )));
    }
    for s in b {
        if s.field() != a.field() {
            return Err(Error::FieldMismatch {
                expected: a.field(),
                got: s.field(),
            });
        }
    }
    // eliminate on the augmented matrix [A | b]
    let n = a.cols();
    let mut ech = Echelon::new(n + 1, a.field());
    for (i, bi) in b.iter().enumerate().take(a.rows()) {
        let mut row = a.sparse_row(i);
        if !bi.is_zero() {
            row.push((n, bi.clone()));
        }
        ech.insert(row);
    }
    if ech.pivots().contains(&n) {
        return Ok(None); // inconsistent
    }
    let mut x = vec![Scalar::zero(a.field()); n];
    for (p, row) in ech.rows.iter() {
        if let Some((_, v)) = row.iter().find(|(j, _)| *j == n) {
            x[*p] = v.clone();
        }
    }
    Ok(Some(x))
}

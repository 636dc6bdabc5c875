//! Dense exact matrices with rank-revealing elimination.
//!
//! A matrix carries its [`ScalarRing`]; every entry is kept in that
//! ring's canonical form, so matrix equality is mathematical equality.
//! Elimination (`rref`, `kernel_basis`, `solve`, `inverse`, `det`)
//! requires a field; matrices over `k[t]` must be embedded into k(t) first
//! via [`ExactMatrix::embed_fraction_field`].

use std::fmt;

use crate::error::Error;
use crate::scalar::{FieldScalar, ScalarRing};
use crate::Result;

/// Row-major dense matrix over one [`ScalarRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: ScalarRing,
    rows: usize,
    cols: usize,
    entries: Vec<FieldScalar>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    /// Builds a matrix from row-major entries, coercing each entry into
    /// the ring's canonical representation.
    pub fn new(ring: ScalarRing, rows: usize, cols: usize, entries: Vec<FieldScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries
            .iter()
            .map(|e| ring.coerce(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { ring, rows, cols, entries })
    }

    pub fn zero(ring: ScalarRing, rows: usize, cols: usize) -> Self {
        let entries = vec![ring.zero(); rows * cols];
        ExactMatrix { ring, rows, cols, entries }
    }

    pub fn identity(ring: ScalarRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_fn(ring: ScalarRing, rows: usize, cols: usize, f: impl FnMut(usize, usize) -> FieldScalar) -> Self {
        let mut f = f;
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { ring, rows, cols, entries }
    }

    /// Convenience constructor from integer rows.
    pub fn from_int_rows(ring: &ScalarRing, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(ring.clone(), r, c, |i, j| ring.from_integer(rows[i][j]))
    }

    /// Convenience constructor from string entries parsed in the ring.
    pub fn from_str_rows(ring: &ScalarRing, rows: &[Vec<&str>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for s in row {
                entries.push(ring.parse(s)?);
            }
        }
        ExactMatrix::new(ring.clone(), r, c, entries)
    }

    /// A single column vector.
    pub fn column(ring: ScalarRing, entries: Vec<FieldScalar>) -> Result<Self> {
        let n = entries.len();
        ExactMatrix::new(ring, n, 1, entries)
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.at(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                format!("{}", self.ring),
                format!("{}", other.ring),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| {
            self.at(i, j).add(other.at(i, j))
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| self.at(i, j).neg())
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        Self::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| self.at(i, j).mul(c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).add(&a.mul(other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix power; requires a square matrix.
    pub fn pow(&self, e: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(self.ring.clone(), self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row mismatch".into()));
        }
        Ok(Self::from_fn(self.ring.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        }))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack col mismatch".into()));
        }
        Ok(Self::from_fn(self.ring.clone(), self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        }))
    }

    /// Block-diagonal sum of any number of matrices over one ring.
    pub fn block_diag(ring: &ScalarRing, blocks: &[&ExactMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(ring.clone(), rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.at(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.ring.clone(), rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        })
    }

    pub fn col_vector(&self, c: usize) -> Self {
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &[c])
    }

    /// Reinterprets a `k[t]` matrix over the fraction field k(t); field
    /// matrices are returned unchanged.
    pub fn embed_fraction_field(&self) -> Self {
        let field = ScalarRing::Field(self.ring.fraction_field());
        if field == self.ring {
            return self.clone();
        }
        Self::from_fn(field.clone(), self.rows, self.cols, |i, j| {
            field.coerce(self.at(i, j)).expect("k[t] embeds into k(t)")
        })
    }

    /// Evaluates a polynomial matrix at t = c, landing in the base field.
    pub fn eval_at(&self, at: &FieldScalar) -> Result<Self> {
        let base = match &self.ring {
            ScalarRing::Polynomials(b) => b.clone(),
            other => return Err(Error::NotPolynomial(format!("{}", other))),
        };
        let ring = match base {
            crate::scalar::BaseField::Rationals => ScalarRing::rationals(),
            crate::scalar::BaseField::Prime(p) => ScalarRing::prime_field(p)?,
        };
        Ok(Self::from_fn(ring, self.rows, self.cols, |i, j| {
            self.at(i, j).as_poly().expect("polynomial ring entry").eval(at)
        }))
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    ///
    /// Rejects matrices over a non-field ring: embed `k[t]` into k(t)
    /// first if that is what you mean.
    pub fn rref(&self) -> Result<Rref> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(format!("{}", self.ring)));
        }
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            // first nonzero entry at or below pivot_row
            let found = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let r = match found {
                Some(r) => r,
                None => continue,
            };
            if r != pivot_row {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(pivot_row, j).clone();
                    m.set(r, j, b);
                    m.set(pivot_row, j, a);
                }
            }
            let inv = m.at(pivot_row, col).inv()?;
            for j in 0..m.cols {
                let v = m.at(pivot_row, j).mul(&inv);
                m.set(pivot_row, j, v);
            }
            for i in 0..m.rows {
                if i == pivot_row || m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col).clone();
                for j in 0..m.cols {
                    let v = m.at(i, j).sub(&f.mul(m.at(pivot_row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Ok(Rref { rank: pivots.len(), reduced: m, pivots })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.embed_fraction_field().rref()?.rank)
    }

    /// A basis of the right kernel `{x : self * x = 0}` as column
    /// vectors. `k[t]` matrices are computed over k(t). Each vector is
    /// re-verified by multiplication before being returned.
    pub fn kernel_basis(&self) -> Result<Vec<ExactMatrix>> {
        let m = self.embed_fraction_field();
        let Rref { reduced, pivots, .. } = m.rref()?;
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; m.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = Self::zero(m.ring.clone(), m.cols, 1);
            vec.set(free, 0, m.ring.one());
            for (col, row) in pivot_of_col.iter().enumerate() {
                if let Some(row) = row {
                    vec.set(col, 0, reduced.at(*row, free).neg());
                }
            }
            debug_assert!(m.mul(&vec).unwrap().is_zero());
            basis.push(vec);
        }
        Ok(basis)
    }

    /// One solution of `self * x = b`, if any; the solution is verified
    /// by multiplication before being returned.
    pub fn solve(&self, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
        self.check_same_ring(b)?;
        if b.rows != self.rows || b.cols != 1 {
            return Err(Error::DimensionMismatch(format!(
                "solve: {}x{} vs rhs {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let aug = self.hstack(b)?.embed_fraction_field();
        let Rref { reduced, pivots, .. } = aug.rref()?;
        if pivots.contains(&self.cols) {
            return Ok(None); // inconsistent
        }
        let field = ScalarRing::Field(self.ring.fraction_field());
        let mut x = Self::zero(field.clone(), self.cols, 1);
        for (row, &col) in pivots.iter().enumerate() {
            x.set(col, 0, reduced.at(row, self.cols).clone());
        }
        // map the solution back into the original ring when possible
        let x = if field == self.ring {
            x
        } else {
            let mut back = Self::zero(self.ring.clone(), self.cols, 1);
            let mut polynomial = true;
            for i in 0..self.cols {
                let r = x.at(i, 0).as_ratfun().expect("fraction field entry");
                if !r.is_polynomial() {
                    polynomial = false;
                    break;
                }
                back.set(i, 0, FieldScalar::Poly(r.num().clone()));
            }
            if polynomial {
                back
            } else {
                // solvable only over the fraction field
                return Ok(Some(x));
            }
        };
        debug_assert!({
            let lhs = self.embed_fraction_field().mul(&x.embed_fraction_field()).unwrap();
            lhs == b.embed_fraction_field()
        });
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column; `None` if any column is
    /// inconsistent.
    pub fn solve_matrix(&self, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
        let mut cols = Vec::new();
        for c in 0..b.cols {
            match self.solve(&b.col_vector(c))? {
                None => return Ok(None),
                Some(x) => cols.push(x),
            }
        }
        if cols.is_empty() {
            return Ok(Some(Self::zero(self.ring.clone(), self.cols, 0)));
        }
        let mut out = cols[0].clone();
        for c in &cols[1..] {
            out = out.hstack(c)?;
        }
        Ok(Some(out))
    }

    /// Inverse of a square matrix over a field, if invertible.
    pub fn inverse(&self) -> Result<Option<ExactMatrix>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.ring.clone(), n))?;
        let Rref { reduced, rank, .. } = aug.rref()?;
        if rank < n {
            return Ok(None);
        }
        let left = reduced.submatrix(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
        if !left.is_identity() {
            return Ok(None);
        }
        Ok(Some(reduced.submatrix(
            &(0..n).collect::<Vec<_>>(),
            &(n..2 * n).collect::<Vec<_>>(),
        )))
    }

    pub fn is_invertible(&self) -> Result<bool> {
        if !self.is_square() {
            return Ok(false);
        }
        Ok(self.rank()? == self.rows)
    }

    /// Determinant, computed over the fraction field (exact).
    pub fn det(&self) -> Result<FieldScalar> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let m = self.embed_fraction_field();
        let n = m.rows;
        let mut work = m.clone();
        let mut det = work.ring.one();
        for col in 0..n {
            let r = (col..n).find(|&r| !work.at(r, col).is_zero());
            let r = match r {
                Some(r) => r,
                None => return Ok(work.ring.zero()),
            };
            if r != col {
                for j in 0..n {
                    let a = work.at(r, j).clone();
                    let b = work.at(col, j).clone();
                    work.set(r, j, b);
                    work.set(col, j, a);
                }
                det = det.neg();
            }
            let pivot = work.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv()?;
            for i in col + 1..n {
                if work.at(i, col).is_zero() {
                    continue;
                }
                let f = work.at(i, col).mul(&inv);
                for j in col..n {
                    let v = work.at(i, j).sub(&f.mul(work.at(col, j)));
                    work.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::DetRng;
    use crate::scalar::BaseField;
    use proptest::prelude::*;

    fn f5() -> ScalarRing {
        ScalarRing::prime_field(5).unwrap()
    }

    fn q() -> ScalarRing {
        ScalarRing::rationals()
    }

    #[test]
    fn rref_identity_case() {
        let m = ExactMatrix::identity(f5(), 2);
        let r = m.rref().unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced, m);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = ExactMatrix::from_int_rows(&q(), &[vec![1, 2], vec![2, 4]]);
        let r = m.rref().unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        let expect = ExactMatrix::from_int_rows(&q(), &[vec![1, 2], vec![0, 0]]);
        assert_eq!(r.reduced, expect);
    }

    #[test]
    fn rref_over_function_field() {
        // second row = t * first row, so rank 1 (hand elimination)
        let ring = ScalarRing::rational_functions(BaseField::prime(3).unwrap());
        let m = ExactMatrix::from_str_rows(&ring, &[vec!["t", "1"], vec!["t^2", "t"]]).unwrap();
        let r = m.rref().unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_rejects_polynomial_ring() {
        let ring = ScalarRing::polynomials(BaseField::prime(3).unwrap());
        let m = ExactMatrix::from_str_rows(&ring, &[vec!["t"]]).unwrap();
        match m.rref() {
            Err(Error::NotAField(_)) => {}
            other => panic!("expected NotAField, got {:?}", other),
        }
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let m = ExactMatrix::zero(q(), 2, 2);
        let k = m.kernel_basis().unwrap();
        assert_eq!(k.len(), 2);
        // standard basis
        assert!(k[0].at(0, 0).is_one() && k[0].at(1, 0).is_zero());
        assert!(k[1].at(1, 0).is_one() && k[1].at(0, 0).is_zero());
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let m = ExactMatrix::identity(f5(), 3);
        assert!(m.kernel_basis().unwrap().is_empty());
    }

    #[test]
    fn kernel_over_f2_matches_enumeration() {
        // oracle: enumerate all 4 vectors of F_2^2 and keep those killed by m
        let ring = ScalarRing::prime_field(2).unwrap();
        let m = ExactMatrix::from_int_rows(&ring, &[vec![1, 1]]);
        let basis = m.kernel_basis().unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], ExactMatrix::from_int_rows(&ring, &[vec![1], vec![1]]));

        let mut in_kernel = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                let v = ExactMatrix::from_int_rows(&ring, &[vec![a], vec![b]]);
                if m.mul(&v).unwrap().is_zero() {
                    in_kernel.push((a, b));
                }
            }
        }
        assert_eq!(in_kernel, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn solve_examples() {
        // identity: x = b
        let id = ExactMatrix::identity(q(), 2);
        let b = ExactMatrix::from_int_rows(&q(), &[vec![3], vec![4]]);
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        // b not proportional to (1,2): no solution
        let m = ExactMatrix::from_int_rows(&q(), &[vec![1, 2], vec![2, 4]]);
        let b = ExactMatrix::from_int_rows(&q(), &[vec![1], vec![3]]);
        assert!(m.solve(&b).unwrap().is_none());

        // [[t]] x = (1): x = 1/t over k(t)
        let ring = ScalarRing::rational_functions(BaseField::prime(3).unwrap());
        let m = ExactMatrix::from_str_rows(&ring, &[vec!["t"]]).unwrap();
        let b = ExactMatrix::from_str_rows(&ring, &[vec!["1"]]).unwrap();
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(x, ExactMatrix::from_str_rows(&ring, &[vec!["(1)/(t)"]]).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let m = ExactMatrix::from_int_rows(&f5(), &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let sing = ExactMatrix::from_int_rows(&f5(), &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().unwrap().is_none());
    }

    #[test]
    fn det_agrees_with_rank_drop() {
        let m = ExactMatrix::from_int_rows(&q(), &[vec![1, 2], vec![2, 4]]);
        assert!(m.det().unwrap().is_zero());
        let m = ExactMatrix::from_int_rows(&q(), &[vec![2, 0], vec![1, 3]]);
        assert_eq!(m.det().unwrap(), q().from_integer(6));
    }

    #[test]
    fn seeded_rank_nullity_and_transpose_rank() {
        let mut rng = DetRng::new(99);
        for _ in 0..50 {
            let rows = 1 + rng.below(4) as usize;
            let cols = 1 + rng.below(4) as usize;
            let ring = f5();
            let mut vals = Vec::new();
            for _ in 0..rows * cols {
                vals.push(rng.below(5) as i64);
            }
            let m = ExactMatrix::from_fn(ring.clone(), rows, cols, |i, j| {
                ring.from_integer(vals[i * cols + j])
            });
            let rank = m.rank().unwrap();
            let kernel = m.kernel_basis().unwrap();
            assert_eq!(rank + kernel.len(), cols);
            assert_eq!(rank, m.transpose().rank().unwrap());
            // rref idempotence
            let r1 = m.rref().unwrap().reduced;
            let r2 = r1.rref().unwrap().reduced;
            assert_eq!(r1, r2);
        }
    }

    proptest! {
        #[test]
        fn rref_idempotent_f3(entries in proptest::collection::vec(0i64..3, 9)) {
            let ring = ScalarRing::prime_field(3).unwrap();
            let m = ExactMatrix::from_fn(ring.clone(), 3, 3, |i, j| ring.from_integer(entries[3*i + j]));
            let r1 = m.rref().unwrap().reduced;
            let r2 = r1.rref().unwrap().reduced;
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn rank_matches_transpose_q(entries in proptest::collection::vec(-4i64..5, 6)) {
            let ring = ScalarRing::rationals();
            let m = ExactMatrix::from_fn(ring.clone(), 2, 3, |i, j| ring.from_integer(entries[3*i + j]));
            prop_assert_eq!(m.rank().unwrap(), m.transpose().rank().unwrap());
        }
    }
}

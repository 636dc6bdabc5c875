//! Smith normal form over `k[t]`, and characteristic/minimal polynomials
//! of field matrices derived from it.
//!
//! The transforms are accumulated together with their inverses, so the
//! factorisation `left * m * right = diag(d)` can be undone without a
//! polynomial-matrix inversion. All transforms are unimodular: products
//! of row/column swaps, unit scalings and polynomial shears.

use crate::error::Error;
use crate::matrix::ExactMatrix;
use crate::scalar::{FieldScalar, Polynomial, ScalarRing};
use crate::Result;

/// `left * m * right = d` with `d` diagonal, each invariant factor monic
/// and dividing the next, and `left`, `right` unimodular; `left_inv` and
/// `right_inv` are their exact inverses.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub d: ExactMatrix,
    pub left: ExactMatrix,
    pub left_inv: ExactMatrix,
    pub right: ExactMatrix,
    pub right_inv: ExactMatrix,
    /// The nonzero diagonal entries, in order.
    pub invariant_factors: Vec<Polynomial>,
}

struct Workspace {
    m: ExactMatrix,
    left: ExactMatrix,
    left_inv: ExactMatrix,
    right: ExactMatrix,
    right_inv: ExactMatrix,
}

impl Workspace {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols() {
            let x = self.m.at(a, j).clone();
            let y = self.m.at(b, j).clone();
            self.m.set(a, j, y);
            self.m.set(b, j, x);
        }
        for j in 0..self.left.cols() {
            let x = self.left.at(a, j).clone();
            let y = self.left.at(b, j).clone();
            self.left.set(a, j, y);
            self.left.set(b, j, x);
        }
        // inverse picks up the inverse swap: exchange columns
        for i in 0..self.left_inv.rows() {
            let x = self.left_inv.at(i, a).clone();
            let y = self.left_inv.at(i, b).clone();
            self.left_inv.set(i, a, y);
            self.left_inv.set(i, b, x);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows() {
            let x = self.m.at(i, a).clone();
            let y = self.m.at(i, b).clone();
            self.m.set(i, a, y);
            self.m.set(i, b, x);
        }
        for i in 0..self.right.rows() {
            let x = self.right.at(i, a).clone();
            let y = self.right.at(i, b).clone();
            self.right.set(i, a, y);
            self.right.set(i, b, x);
        }
        for j in 0..self.right_inv.cols() {
            let x = self.right_inv.at(a, j).clone();
            let y = self.right_inv.at(b, j).clone();
            self.right_inv.set(a, j, y);
            self.right_inv.set(b, j, x);
        }
    }

    /// row[i] += f * row[k]
    fn add_row(&mut self, i: usize, k: usize, f: &FieldScalar) {
        for j in 0..self.m.cols() {
            let v = self.m.at(i, j).add(&f.mul(self.m.at(k, j)));
            self.m.set(i, j, v);
        }
        for j in 0..self.left.cols() {
            let v = self.left.at(i, j).add(&f.mul(self.left.at(k, j)));
            self.left.set(i, j, v);
        }
        // inverse of the shear: column k -= f * column i
        for r in 0..self.left_inv.rows() {
            let v = self.left_inv.at(r, k).sub(&f.mul(self.left_inv.at(r, i)));
            self.left_inv.set(r, k, v);
        }
    }

    /// col[j] += f * col[k]
    fn add_col(&mut self, j: usize, k: usize, f: &FieldScalar) {
        for i in 0..self.m.rows() {
            let v = self.m.at(i, j).add(&f.mul(self.m.at(i, k)));
            self.m.set(i, j, v);
        }
        for i in 0..self.right.rows() {
            let v = self.right.at(i, j).add(&f.mul(self.right.at(i, k)));
            self.right.set(i, j, v);
        }
        for c in 0..self.right_inv.cols() {
            let v = self.right_inv.at(k, c).sub(&f.mul(self.right_inv.at(j, c)));
            self.right_inv.set(k, c, v);
        }
    }

    /// row[i] *= unit (a nonzero constant).
    fn scale_row(&mut self, i: usize, unit: &FieldScalar) {
        let inv = unit.inv().expect("unit scalar");
        for j in 0..self.m.cols() {
            let v = self.m.at(i, j).mul(unit);
            self.m.set(i, j, v);
        }
        for j in 0..self.left.cols() {
            let v = self.left.at(i, j).mul(unit);
            self.left.set(i, j, v);
        }
        for r in 0..self.left_inv.rows() {
            let v = self.left_inv.at(r, i).mul(&inv);
            self.left_inv.set(r, i, v);
        }
    }
}

fn poly_of(m: &ExactMatrix, i: usize, j: usize) -> Polynomial {
    m.at(i, j).as_poly().expect("polynomial entry").clone()
}

/// Smith normal form of a matrix over `k[t]`.
pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithNormalForm> {
    let ring = m.ring().clone();
    if !matches!(ring, ScalarRing::Polynomials(_)) {
        return Err(Error::NotPolynomial(format!("{}", ring)));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Workspace {
        m: m.clone(),
        left: ExactMatrix::identity(ring.clone(), rows),
        left_inv: ExactMatrix::identity(ring.clone(), rows),
        right: ExactMatrix::identity(ring.clone(), cols),
        right_inv: ExactMatrix::identity(ring.clone(), cols),
    };

    let k_max = rows.min(cols);
    for k in 0..k_max {
        'pivot: loop {
            // minimal-degree nonzero entry of the trailing block
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if let Some(d) = poly_of(&w.m, i, j).degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let (pi, pj, _) = match best {
                None => break 'pivot, // trailing block is zero
                Some(b) => b,
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);

            // clear the pivot column by euclidean division
            let mut dirty = false;
            let pivot = poly_of(&w.m, k, k);
            for i in k + 1..rows {
                let e = poly_of(&w.m, i, k);
                if e.is_zero() {
                    continue;
                }
                let (q, r) = e.divmod(&pivot);
                w.add_row(i, k, &FieldScalar::Poly(q.neg()));
                if !r.is_zero() {
                    dirty = true; // a smaller-degree entry appeared
                }
            }
            if dirty {
                continue 'pivot;
            }
            // clear the pivot row
            let mut dirty = false;
            for j in k + 1..cols {
                let e = poly_of(&w.m, k, j);
                if e.is_zero() {
                    continue;
                }
                let (q, r) = e.divmod(&pivot);
                w.add_col(j, k, &FieldScalar::Poly(q.neg()));
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // divisibility sweep: the pivot must divide the whole block
            let pivot = poly_of(&w.m, k, k);
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    let e = poly_of(&w.m, i, j);
                    if !e.is_zero() && !pivot.divides(&e) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = w.m.ring().one();
                    w.add_row(k, i, &one);
                }
                None => break 'pivot,
            }
        }
        // normalise the pivot monic
        let pivot = poly_of(&w.m, k, k);
        if let Some(lead) = pivot.leading() {
            if !lead.is_one() {
                let unit = FieldScalar::Poly(Polynomial::constant(
                    pivot.base().clone(),
                    lead.inv()?,
                ));
                w.scale_row(k, &unit);
            }
        }
    }

    let mut invariant_factors = Vec::new();
    for k in 0..k_max {
        let d = poly_of(&w.m, k, k);
        if !d.is_zero() {
            invariant_factors.push(d);
        }
    }

    let snf = SmithNormalForm {
        d: w.m,
        left: w.left,
        left_inv: w.left_inv,
        right: w.right,
        right_inv: w.right_inv,
        invariant_factors,
    };
    verify_snf(m, &snf)?;
    Ok(snf)
}

/// Re-checks the factorisation: diagonal shape, monic divisibility chain,
/// `left*m*right = d`, unit determinants, and that the inverses invert.
fn verify_snf(m: &ExactMatrix, s: &SmithNormalForm) -> Result<()> {
    let fail = |why: &str| Err(Error::Internal(format!("smith normal form: {}", why)));
    let prod = s.left.mul(m)?.mul(&s.right)?;
    if prod != s.d {
        return fail("left*m*right != d");
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d.at(i, j).is_zero() {
                return fail("off-diagonal entry");
            }
        }
    }
    for w in s.invariant_factors.windows(2) {
        if !w[0].divides(&w[1]) {
            return fail("divisibility chain broken");
        }
    }
    for f in &s.invariant_factors {
        if !f.is_monic() {
            return fail("invariant factor not monic");
        }
    }
    if !s.left.mul(&s.left_inv)?.is_identity() || !s.right.mul(&s.right_inv)?.is_identity() {
        return fail("inverse transforms do not invert");
    }
    let is_unit_det = |m: &ExactMatrix| -> Result<bool> {
        let d = m.det()?;
        Ok(!d.is_zero()
            && d.as_ratfun()
                .is_none_or(|r| r.is_polynomial() && r.num().is_constant()))
    };
    if !is_unit_det(&s.left)? || !is_unit_det(&s.right)? {
        return fail("transform determinant is not a unit");
    }
    Ok(())
}

/// The matrix `tI - m` over `k[t]` for a square matrix `m` over ℚ or F_p.
pub fn char_matrix(m: &ExactMatrix) -> Result<ExactMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let base = match m.ring() {
        ScalarRing::Field(f) if !f.is_function_field() => f.base(),
        other => {
            return Err(Error::NotAField(format!(
                "characteristic polynomial needs a base-field matrix, got {}",
                other
            )))
        }
    };
    let ring = ScalarRing::polynomials(base.clone());
    let t = Polynomial::t(base.clone());
    Ok(ExactMatrix::from_fn(ring, m.rows(), m.cols(), |i, j| {
        let c = Polynomial::constant(base.clone(), m.at(i, j).clone());
        if i == j {
            FieldScalar::Poly(t.sub(&c))
        } else {
            FieldScalar::Poly(c.neg())
        }
    }))
}

/// Invariant factors of `tI - m`: their product is the characteristic
/// polynomial and the last one is the minimal polynomial.
pub fn similarity_invariants(m: &ExactMatrix) -> Result<Vec<Polynomial>> {
    Ok(smith_normal_form(&char_matrix(m)?)?.invariant_factors)
}

/// Monic characteristic polynomial of a square matrix over ℚ or F_p.
pub fn charpoly(m: &ExactMatrix) -> Result<Polynomial> {
    let base = match m.ring() {
        ScalarRing::Field(f) => f.base(),
        other => return Err(Error::NotAField(format!("{}", other))),
    };
    let mut acc = Polynomial::one(base);
    for f in similarity_invariants(m)? {
        acc = acc.mul(&f);
    }
    // tI - m has full rank over k(t), so the product has degree n
    debug_assert_eq!(acc.degree(), Some(m.rows()));
    Ok(acc)
}

/// Monic minimal polynomial of a square matrix over ℚ or F_p. For the
/// 0x0 matrix this is 1.
pub fn minpoly(m: &ExactMatrix) -> Result<Polynomial> {
    let base = match m.ring() {
        ScalarRing::Field(f) => f.base(),
        other => return Err(Error::NotAField(format!("{}", other))),
    };
    Ok(similarity_invariants(m)?
        .last()
        .cloned()
        .unwrap_or_else(|| Polynomial::one(base)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BaseField;

    fn poly_ring(p: u64) -> ScalarRing {
        ScalarRing::polynomials(BaseField::prime(p).unwrap())
    }

    #[test]
    fn snf_of_column_with_unit_gcd() {
        // (-t, 1)^T has gcd 1, cokernel free of rank 1
        let ring = poly_ring(5);
        let m = ExactMatrix::from_str_rows(&ring, &[vec!["-t"], vec!["1"]]).unwrap();
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.invariant_factors.len(), 1);
        assert!(s.invariant_factors[0].is_one());
    }

    #[test]
    fn snf_of_diag_already_in_form() {
        let ring = poly_ring(5);
        let m = ExactMatrix::from_str_rows(&ring, &[vec!["t", "0"], vec!["0", "t^2"]]).unwrap();
        let s = smith_normal_form(&m).unwrap();
        let strs: Vec<String> = s.invariant_factors.iter().map(|f| f.to_string()).collect();
        assert_eq!(strs, vec!["t", "t^2"]);
    }

    #[test]
    fn snf_rank_one_with_content() {
        // [[t, t], [t, t]]: rank 1, content t, zero second row
        let ring = poly_ring(5);
        let m = ExactMatrix::from_str_rows(&ring, &[vec!["t", "t"], vec!["t", "t"]]).unwrap();
        let s = smith_normal_form(&m).unwrap();
        let strs: Vec<String> = s.invariant_factors.iter().map(|f| f.to_string()).collect();
        assert_eq!(strs, vec!["t"]);
        assert!(s.d.at(1, 1).is_zero());
    }

    #[test]
    fn snf_over_rationals_base() {
        let ring = ScalarRing::polynomials(BaseField::Rationals);
        let m =
            ExactMatrix::from_str_rows(&ring, &[vec!["t^2-1", "t+1"], vec!["t-1", "2"]]).unwrap();
        let s = smith_normal_form(&m).unwrap();
        // the internal checker already ran; pin the chain shape
        for w in s.invariant_factors.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
    }

    #[test]
    fn charpoly_examples() {
        let f2 = ScalarRing::prime_field(2).unwrap();
        // diag(0,1) over F_2: t(t+1) = t + t^2
        let m = ExactMatrix::from_int_rows(&f2, &[vec![0, 0], vec![0, 1]]);
        assert_eq!(charpoly(&m).unwrap().to_string(), "t+t^2");

        // nilpotent Jordan block of size 2: t^2
        let q = ScalarRing::rationals();
        let j = ExactMatrix::from_int_rows(&q, &[vec![0, 1], vec![0, 0]]);
        assert_eq!(charpoly(&j).unwrap().to_string(), "t^2");
        assert_eq!(minpoly(&j).unwrap().to_string(), "t^2");

        // companion matrix of t^2+1 over F_3
        let f3 = ScalarRing::prime_field(3).unwrap();
        let comp = ExactMatrix::from_int_rows(&f3, &[vec![0, -1], vec![1, 0]]);
        assert_eq!(charpoly(&comp).unwrap().to_string(), "1+t^2");

        // 2x2 with trace 7, det 10
        let m = ExactMatrix::from_int_rows(&q, &[vec![3, 1], vec![2, 4]]);
        assert_eq!(charpoly(&m).unwrap().to_string(), "10-7*t+t^2");
    }

    #[test]
    fn minpoly_divides_charpoly_on_seeded_matrices() {
        use crate::rng::DetRng;
        let ring = ScalarRing::prime_field(3).unwrap();
        let mut rng = DetRng::new(7);
        for _ in 0..25 {
            let n = 1 + rng.below(4) as usize;
            let mut vals = Vec::new();
            for _ in 0..n * n {
                vals.push(rng.below(3) as i64);
            }
            let m =
                ExactMatrix::from_fn(ring.clone(), n, n, |i, j| ring.from_integer(vals[i * n + j]));
            let cp = charpoly(&m).unwrap();
            let mp = minpoly(&m).unwrap();
            assert!(mp.divides(&cp));
            // the minimal polynomial annihilates the matrix
            let mut acc = ExactMatrix::zero(ring.clone(), n, n);
            for (k, c) in mp.coeffs().iter().enumerate() {
                acc = acc.add(&m.pow(k).unwrap().scale(c)).unwrap();
            }
            assert!(acc.is_zero());
        }
    }
}

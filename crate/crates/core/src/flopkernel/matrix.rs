//! Matrices over the polynomial ring, with dimension-checked products.
//! Entries stay in canonical form, so matrix equality is entrywise
//! polynomial identity.

use super::poly::{MPoly, MatrixFamily, Var};

/// A rows × cols matrix of integer polynomials, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![MPoly::zero(); rows * cols] }
    }

    /// The fully generic matrix of one family: entry (i, j) is the
    /// indeterminate family[i, j].
    pub fn symbolic(family: MatrixFamily, rows: usize, cols: usize) -> Self {
        let mut m = PolyMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.entry_mut(i, j) = MPoly::var(Var { family, row: i, col: j });
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

    pub fn entry(&self, row: usize, col: usize) -> &MPoly {
        &self.entries[row * self.cols + col]
    }

    fn entry_mut(&mut self, row: usize, col: usize) -> &mut MPoly {
        &mut self.entries[row * self.cols + col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MPoly::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = PolyMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = MPoly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.entry(i, k) * rhs.entry(k, j));
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shapes must agree");
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a + b;
        }
        out
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shapes must agree");
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a - b;
        }
        out
    }

    /// Applies an entrywise polynomial map (substitution, evaluation-like
    /// transforms).
    pub fn map(&self, f: &dyn Fn(&MPoly) -> MPoly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| f(p)).collect(),
        }
    }

    /// Position of the first entry where the two matrices differ.
    pub fn first_difference(&self, rhs: &PolyMatrix) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shapes must agree");
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.entry(i, j) != rhs.entry(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_product_has_expected_entry() {
        let b = PolyMatrix::symbolic(MatrixFamily::BLeft, 2, 2);
        let a = PolyMatrix::symbolic(MatrixFamily::ALeft, 2, 2);
        let ba = b.mul(&a);
        // (BA)[0,0] = b[0,0] a[0,0] + b[0,1] a[1,0]
        assert_eq!(ba.entry(0, 0).term_count(), 2);
        assert_eq!(format!("{}", ba.entry(0, 0)), "aL[0,0]*bL[0,0] + aL[1,0]*bL[0,1]");
    }

    #[test]
    fn product_is_associative_on_symbols() {
        let b = PolyMatrix::symbolic(MatrixFamily::BRight, 2, 3);
        let c = PolyMatrix::symbolic(MatrixFamily::C, 3, 3);
        let a = PolyMatrix::symbolic(MatrixFamily::ALeft, 3, 2);
        assert_eq!(b.mul(&c).mul(&a), b.mul(&c.mul(&a)));
    }

    #[test]
    fn subtraction_of_equal_products_vanishes() {
        let b = PolyMatrix::symbolic(MatrixFamily::BLeft, 2, 2);
        let a = PolyMatrix::symbolic(MatrixFamily::ARight, 2, 2);
        assert!(b.mul(&a).sub(&b.mul(&a)).is_zero());
    }
}

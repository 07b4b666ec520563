//! Sparse multivariate polynomials over the integers, with variables drawn
//! from a fixed set of indexed matrix families.  Arithmetic keeps every
//! polynomial in canonical form — sorted monomials, no zero terms — so
//! equality is structural.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The five matrix alphabets of the kernel presentation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum MatrixFamily {
    ALeft,
    ARight,
    BLeft,
    BRight,
    C,
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixFamily::ALeft => write!(f, "aL"),
            MatrixFamily::ARight => write!(f, "aR"),
            MatrixFamily::BLeft => write!(f, "bL"),
            MatrixFamily::BRight => write!(f, "bR"),
            MatrixFamily::C => write!(f, "c"),
        }
    }
}

/// One scalar indeterminate: an entry of a named symbolic matrix.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct Var {
    pub family: MatrixFamily,
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.family, self.row, self.col)
    }
}

/// A power product of variables, sorted with positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            *exps.entry(v).or_insert(0) += e;
        }
        Monomial(exps.into_iter().collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// An integer polynomial in canonical expanded form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, i64>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Monomial::var(v), 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                *c = c.checked_add(coeff).expect("coefficient overflow");
                if *c == 0 {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Applies a variable substitution; `None` keeps the variable.  The
    /// result of a substitution is again canonical, and substitution is a
    /// ring homomorphism.
    pub fn substitute(&self, image: &dyn Fn(&Var) -> Option<MPoly>) -> MPoly {
        let mut out = MPoly::zero();
        for (mono, &coeff) in &self.terms {
            let mut term = MPoly::constant(coeff);
            for &(v, e) in &mono.0 {
                let factor = image(&v).unwrap_or_else(|| MPoly::var(v));
                term = &term * &factor.pow(e);
            }
            out = &out + &term;
        }
        out
    }

    /// Evaluates at an integer point with overflow checking.
    pub fn evaluate(&self, point: &dyn Fn(&Var) -> i64) -> i64 {
        let mut total: i64 = 0;
        for (mono, &coeff) in &self.terms {
            let mut value = coeff;
            for &(v, e) in &mono.0 {
                for _ in 0..e {
                    value = value.checked_mul(point(&v)).expect("evaluation overflow");
                }
            }
            total = total.checked_add(value).expect("evaluation overflow");
        }
        total
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if *coeff < 0 { "-" } else { "+" })?;
            } else if *coeff < 0 {
                write!(f, "-")?;
            }
            let mag = coeff.unsigned_abs();
            if mag != 1 || mono.0.is_empty() {
                write!(f, "{mag}")?;
                if !mono.0.is_empty() {
                    write!(f, "*")?;
                }
            }
            if !mono.0.is_empty() {
                write!(f, "{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (mono, &coeff) in &rhs.terms {
            out.add_term(mono.clone(), coeff);
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &-rhs
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        let mut out = MPoly::zero();
        for (mono, &coeff) in &self.terms {
            out.add_term(mono.clone(), -coeff);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(family: MatrixFamily, row: usize, col: usize) -> Var {
        Var { family, row, col }
    }

    fn x() -> MPoly {
        MPoly::var(v(MatrixFamily::C, 0, 0))
    }

    fn y() -> MPoly {
        MPoly::var(v(MatrixFamily::C, 0, 1))
    }

    #[test]
    fn cancellation_restores_canonical_form() {
        let sum = &(&x() + &y()) - &x();
        assert_eq!(sum, y());
        assert!((&x() - &x()).is_zero());
    }

    #[test]
    fn binomial_square_expands() {
        let square = &(&x() + &y()) * &(&x() + &y());
        let expected = &(&x() * &x()) + &(&(&MPoly::constant(2) * &(&x() * &y())) + &(&y() * &y()));
        assert_eq!(square, expected);
        assert_eq!(square.term_count(), 3);
    }

    fn random_poly(rng: &mut ChaCha8Rng, vars: &[Var]) -> MPoly {
        let mut p = MPoly::zero();
        for _ in 0..rng.random_range(1..=4) {
            let mut mono = Monomial::unit();
            for _ in 0..rng.random_range(0..=3usize) {
                mono = mono.mul(&Monomial::var(vars[rng.random_range(0..vars.len())]));
            }
            p.add_term(mono, rng.random_range(-4..=4));
        }
        p
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vars: Vec<Var> = (0..3).map(|i| v(MatrixFamily::ALeft, 0, i)).collect();
        let image = |var: &Var| {
            if var.col == 0 {
                Some(&x() + &MPoly::constant(1))
            } else if var.col == 1 {
                Some(&x() * &y())
            } else {
                None
            }
        };
        for _ in 0..50 {
            let p = random_poly(&mut rng, &vars);
            let q = random_poly(&mut rng, &vars);
            assert_eq!((&p * &q).substitute(&image), &p.substitute(&image) * &q.substitute(&image));
            assert_eq!((&p + &q).substitute(&image), &p.substitute(&image) + &q.substitute(&image));
        }
    }

    #[test]
    fn evaluation_commutes_with_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let vars: Vec<Var> = (0..4).map(|i| v(MatrixFamily::BRight, i, 0)).collect();
        for _ in 0..50 {
            let p = random_poly(&mut rng, &vars);
            let q = random_poly(&mut rng, &vars);
            let vals: Vec<i64> = (0..4).map(|_| rng.random_range(-5..=5)).collect();
            let point = |var: &Var| vals[var.row];
            assert_eq!((&p * &q).evaluate(&point), p.evaluate(&point) * q.evaluate(&point));
            assert_eq!((&p - &q).evaluate(&point), p.evaluate(&point) - q.evaluate(&point));
        }
    }
}

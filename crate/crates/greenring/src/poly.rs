//! Sparse multivariate polynomials over exact rational coefficients.
//!
//! Polynomials live in the commuting variables `Y`, `Z`, `X1`, ..., `X{m-1}`.
//! The number of `X` variables (the *arity*) is fixed per polynomial and two
//! polynomials can only be combined when their arities agree. Coefficients
//! are arbitrary-precision rationals; the quotient-ring reduction in
//! [`crate::presented`] temporarily divides by powers of `n` and re-checks
//! integrality afterwards, so the substrate must be a field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Errors raised by polynomial operations.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PolyError {
    /// Two polynomials with a different number of `X` variables were combined.
    #[error("variable context mismatch: {left} X-variables vs {right}")]
    ArityMismatch { left: usize, right: usize },
    /// Evaluation at `(Y, Z)` was requested for a polynomial containing `X` variables.
    #[error("cannot evaluate at (Y, Z): polynomial contains X variables")]
    XVarsInEval,
}

/// Exponent vector of a single term: `Y^y_exp * Z^z_exp * X1^x_exps[0] * ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub y_exp: u32,
    pub z_exp: u32,
    /// Exponents of `X1..X{m-1}`; the length is the polynomial arity.
    pub x_exps: Vec<u32>,
}

impl Monomial {
    pub fn constant(arity: usize) -> Self {
        Monomial { y_exp: 0, z_exp: 0, x_exps: vec![0; arity] }
    }

    pub fn yz(y_exp: u32, z_exp: u32, arity: usize) -> Self {
        Monomial { y_exp, z_exp, x_exps: vec![0; arity] }
    }

    pub fn total_x_degree(&self) -> u64 {
        self.x_exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.y_exp == 0 && self.z_exp == 0 && self.has_no_x()
    }

    pub fn has_no_x(&self) -> bool {
        self.x_exps.iter().all(|&e| e == 0)
    }

    /// Product of two monomials: exponent-wise sum.
    fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.x_exps.len(), other.x_exps.len());
        Monomial {
            y_exp: self.y_exp + other.y_exp,
            z_exp: self.z_exp + other.z_exp,
            x_exps: self
                .x_exps
                .iter()
                .zip(&other.x_exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

// Term order: by (total X-degree, x_exps lexicographic, z_exp, y_exp).
// Canonical iteration is *descending* in this order; see `Poly::terms`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total_x_degree(), &self.x_exps, self.z_exp, self.y_exp).cmp(&(
            other.total_x_degree(),
            &other.x_exps,
            other.z_exp,
            other.y_exp,
        ))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial in canonical form: no zero coefficients are stored and
/// equality is term-map equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Poly::constant(arity, BigRational::one())
    }

    pub fn constant(arity: usize, c: impl Into<BigRational>) -> Self {
        let mut p = Poly::zero(arity);
        p.insert(Monomial::constant(arity), c.into());
        p
    }

    pub fn constant_int(arity: usize, c: i64) -> Self {
        Poly::constant(arity, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var_y(arity: usize) -> Self {
        Poly::monomial(Monomial { y_exp: 1, z_exp: 0, x_exps: vec![0; arity] }, BigRational::one())
    }

    pub fn var_z(arity: usize) -> Self {
        Poly::monomial(Monomial { y_exp: 0, z_exp: 1, x_exps: vec![0; arity] }, BigRational::one())
    }

    /// The variable `X{index}`, `index` in `1..=arity`.
    pub fn var_x(arity: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= arity, "X{index} not in context with {arity} X-variables");
        let mut x_exps = vec![0; arity];
        x_exps[index - 1] = 1;
        Poly::monomial(Monomial { y_exp: 0, z_exp: 0, x_exps }, BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Poly::zero(m.x_exps.len());
        p.insert(m, c);
        p
    }

    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Poly::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.x_exps.len(), arity, "monomial arity mismatch");
            p.insert(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest Z-exponent, or `None` for the zero polynomial.
    pub fn z_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.z_exp).max()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn insert(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_context(&self, other: &Poly) -> Result<(), PolyError> {
        if self.arity != other.arity {
            Err(PolyError::ArityMismatch { left: self.arity, right: other.arity })
        } else {
            Ok(())
        }
    }

    /// Termwise sum; errors when the variable contexts differ.
    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.try_add(&-other)
    }

    /// Distributive product; errors when the variable contexts differ.
    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_context(other)?;
        let mut out = Poly::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Substitutes exact rational values for `Y` and `Z`.
    pub fn eval_yz(&self, y: &BigRational, z: &BigRational) -> Result<BigRational, PolyError> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            if !m.has_no_x() {
                return Err(PolyError::XVarsInEval);
            }
            acc += c * pow_rat(y, m.y_exp) * pow_rat(z, m.z_exp);
        }
        Ok(acc)
    }

    /// Substitutes floating-point values for `Y` and `Z`.
    pub fn eval_yz_f64(&self, y: f64, z: f64) -> Result<f64, PolyError> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            if !m.has_no_x() {
                return Err(PolyError::XVarsInEval);
            }
            acc += rat_to_f64(c) * y.powi(m.y_exp as i32) * z.powi(m.z_exp as i32);
        }
        Ok(acc)
    }

    /// Re-targets a polynomial without `X` variables to a different arity.
    pub fn with_arity(&self, arity: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                assert!(m.has_no_x(), "cannot change arity of a polynomial with X variables");
                (Monomial::yz(m.y_exp, m.z_exp, arity), c.clone())
            })
            .collect();
        Poly { arity, terms }
    }
}

fn pow_rat(base: &BigRational, e: u32) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    num::pow::pow(base.clone(), e as usize)
}

pub(crate) fn rat_to_f64(c: &BigRational) -> f64 {
    use num::ToPrimitive;
    c.to_f64().expect("rational out of f64 range")
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial contexts differ")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial contexts differ")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial contexts differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Renders one monomial as `Y^a*Z^b*X1^c*...`, or `""` for the constant monomial.
fn fmt_monomial(m: &Monomial, out: &mut String) {
    let mut push_var = |name: String, e: u32| {
        if e == 0 {
            return;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(&name);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    };
    push_var("Y".to_string(), m.y_exp);
    push_var("Z".to_string(), m.z_exp);
    for (i, &e) in m.x_exps.iter().enumerate() {
        push_var(format!("X{}", i + 1), e);
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut vars = String::new();
            fmt_monomial(m, &mut vars);
            if vars.is_empty() {
                write!(f, "{}", fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{}*{vars}", fmt_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y() -> Poly {
        Poly::var_y(0)
    }

    fn z() -> Poly {
        Poly::var_z(0)
    }

    #[test]
    fn add_basic() {
        // (Z) + (Z^2 - Y) = Z^2 + Z - Y
        let sum = &z() + &(&z().pow(2) - &y());
        assert_eq!(sum.to_string(), "Z^2 + Z - Y");
    }

    #[test]
    fn add_identity_and_cancellation() {
        let p = &z().pow(3) - &y();
        assert_eq!(&p + &Poly::zero(0), p);
        let q = &(&z() - &y()) + &(&y() - &z());
        assert!(q.is_zero());
        assert_eq!(q.num_terms(), 0);
    }

    #[test]
    fn mul_basic() {
        assert_eq!(&z() * &z(), z().pow(2));
        let p = &z().pow(2) - &y();
        assert_eq!(&p * &Poly::one(0), p);
        // Z * (Z^2 - Y) = Z^3 - Y*Z, expanded by hand
        let expect = &z().pow(3) - &(&y() * &z());
        assert_eq!(&z() * &p, expect);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = Poly::var_y(0);
        let b = Poly::var_x(2, 1);
        assert_eq!(
            a.try_add(&b).unwrap_err(),
            PolyError::ArityMismatch { left: 0, right: 2 }
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn eval_rational() {
        // F_4 = Z^3 - 2YZ at (1, 2) is 4
        let p = &z().pow(3) - &(&y() * &z()).scale(&BigRational::from_integer(2.into()));
        let v = p
            .eval_yz(
                &BigRational::from_integer(1.into()),
                &BigRational::from_integer(2.into()),
            )
            .unwrap();
        assert_eq!(v, BigRational::from_integer(4.into()));
        let one = Poly::one(0);
        assert!(one
            .eval_yz(&BigRational::from_integer(7.into()), &BigRational::from_integer(9.into()))
            .unwrap()
            .is_one());
    }

    #[test]
    fn eval_real() {
        // Z^2 - Y at y=1, z=2cos(pi/4): 2cos^2(pi/4)*2 - 1 = 1
        let p = &z().pow(2) - &y();
        let c = 2.0 * (std::f64::consts::PI / 4.0).cos();
        let v = p.eval_yz_f64(1.0, c).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eval_rejects_x_vars() {
        let p = Poly::var_x(1, 1);
        assert_eq!(
            p.eval_yz(&BigRational::zero(), &BigRational::zero()).unwrap_err(),
            PolyError::XVarsInEval
        );
    }

    #[test]
    fn rendering() {
        let p = &(&z().pow(3) - &(&y() * &z()).scale(&BigRational::from_integer(2.into())))
            + &Poly::one(0);
        assert_eq!(p.to_string(), "Z^3 - 2*Y*Z + 1");
        assert_eq!(Poly::zero(3).to_string(), "0");
        let half = Poly::constant(0, BigRational::new(1.into(), 2.into()));
        assert_eq!((&half * &y()).to_string(), "1/2*Y");
    }

    #[test]
    fn x_variables_render_and_multiply() {
        let x1 = Poly::var_x(2, 1);
        let x2 = Poly::var_x(2, 2);
        let p = &x1 * &x2;
        assert_eq!(p.to_string(), "X1*X2");
        assert_eq!((&x1 * &x1).to_string(), "X1^2");
    }

    // Random polynomials with <= 8 terms, exponents <= 10, small rational coefficients.
    fn arb_poly() -> impl Strategy<Value = Poly> {
        let term = (0u32..=10, 0u32..=10, -6i64..=6, 1i64..=3).prop_map(|(ye, ze, num, den)| {
            (
                Monomial { y_exp: ye, z_exp: ze, x_exps: vec![] },
                BigRational::new(num.into(), den.into()),
            )
        });
        proptest::collection::vec(term, 0..8)
            .prop_map(|terms| Poly::from_terms(0, terms))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn canonical_form_is_stable(a in arb_poly()) {
            // Rebuilding from the term list is the identity: canonicalization
            // is idempotent.
            let rebuilt = Poly::from_terms(
                0,
                a.terms().map(|(m, c)| (m.clone(), c.clone())),
            );
            prop_assert_eq!(&rebuilt, &a);
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly()) {
            let y = BigRational::new(3.into(), 2.into());
            let z = BigRational::new((-5).into(), 3.into());
            let lhs = (&a * &b).eval_yz(&y, &z).unwrap();
            let rhs = a.eval_yz(&y, &z).unwrap() * b.eval_yz(&y, &z).unwrap();
            prop_assert_eq!(lhs, rhs);
            let (yf, zf) = (0.7, -1.3);
            let lf = (&a * &b).eval_yz_f64(yf, zf).unwrap();
            let rf = a.eval_yz_f64(yf, zf).unwrap() * b.eval_yz_f64(yf, zf).unwrap();
            prop_assert!((lf - rf).abs() < 1e-10 * (1.0 + lf.abs()));
        }
    }
}

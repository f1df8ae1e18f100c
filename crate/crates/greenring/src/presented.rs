//! The three presented rings attached to a Radford Hopf algebra of parameters
//! `(n, m)`: the Green ring, the Grothendieck ring and the stable Green ring
//! (the latter coincides with the stable Green ring of the Taft algebra and
//! depends on `n` alone).
//!
//! Presentations, with `F_n` the Dickson polynomial of the second type:
//!
//! * Green ring: `Z[Y,Z,X1..X{m-1}]` modulo
//!   `Y^n - 1`, `(1+Y-Z) F_n(Y,Z)`, `Y X1 - X1`, `Z X1 - 2 X1`,
//!   `X1^j - n^{j-1} X_j` and `X1^m - n^{m-2} (1+Y+...+Y^{n-1}) F_n(Y,Z)`.
//!   Normal-form basis `{ Y^a Z^b : a,b < n } ∪ { X1..X{m-1} }`, rank
//!   `n^2 + m - 1`. `m = 1` is the Taft case with no `X` generators.
//! * Grothendieck ring: `Z[Y,X1..X{m-1}]` modulo `Y^n - 1`, `Y X1 - X1`,
//!   `X1^j - n^{j-1} X_j`, `X1^m - n^{m-1} (1+Y+...+Y^{n-1})`; rank `n+m-1`.
//! * Stable Green ring: `Z[Y,Z]` modulo `Y^n - 1` and `F_n(Y,Z)`; rank
//!   `n(n-1)` with basis `{ y^i F_j : 0 <= i < n, 1 <= j < n }`.
//!
//! Each ideal is oriented into a finite rewrite system; products of `X`
//! generators pass through the substitution `X_j = X1^j / n^{j-1}` over the
//! rationals and every public result re-asserts integrality.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::dickson;
use crate::poly::{Monomial, Poly, PolyError};

#[derive(Debug, Error, PartialEq, Clone)]
pub enum RingError {
    #[error("invalid ring parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial uses Z but the Grothendieck presentation has no Z variable")]
    ZNotInContext,
    #[error("elements belong to different ring specs")]
    SpecMismatch,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("label {0} does not belong to this ring")]
    LabelOutOfRange(String),
    #[error("non-integral normal form: coefficient {value} at {label}")]
    IntegralityViolation { label: String, value: String },
    #[error("presentation self-check failed: {0}")]
    PresentationCheck(String),
    #[error("operation requires a {expected} ring, got {found}")]
    WrongKind { expected: &'static str, found: &'static str },
}

/// Which of the three presented rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    RadfordGreen,
    Grothendieck,
    Stable,
}

impl RingKind {
    pub fn name(&self) -> &'static str {
        match self {
            RingKind::RadfordGreen => "radford-green",
            RingKind::Grothendieck => "grothendieck",
            RingKind::Stable => "stable",
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A normal-form basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// `Y^y_exp Z^z_exp` (with `z_exp = 0` in the Grothendieck ring).
    Mono { y_exp: u32, z_exp: u32 },
    /// The generator `X{index}`, `1 <= index <= m-1`.
    Xgen { index: u32 },
    /// `y^y_exp F_{f_index}(y, z)` in the stable ring.
    StableF { y_exp: u32, f_index: u32 },
}

// Deterministic enumeration order: Mono by (z_exp, y_exp) ascending, then
// Xgen by index; StableF by (f_index, y_exp) ascending.
impl Ord for BasisLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use BasisLabel::*;
        fn rank(l: &BasisLabel) -> (u8, u32, u32) {
            match *l {
                Mono { y_exp, z_exp } => (0, z_exp, y_exp),
                Xgen { index } => (1, index, 0),
                StableF { y_exp, f_index } => (2, f_index, y_exp),
            }
        }
        rank(self).cmp(&rank(other))
    }
}

impl PartialOrd for BasisLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisLabel::Mono { y_exp: 0, z_exp: 0 } => write!(f, "1"),
            BasisLabel::Mono { y_exp, z_exp } => {
                let mut parts = Vec::new();
                if y_exp == 1 {
                    parts.push("Y".to_string());
                } else if y_exp > 1 {
                    parts.push(format!("Y^{y_exp}"));
                }
                if z_exp == 1 {
                    parts.push("Z".to_string());
                } else if z_exp > 1 {
                    parts.push(format!("Z^{z_exp}"));
                }
                write!(f, "{}", parts.join("*"))
            }
            BasisLabel::Xgen { index } => write!(f, "X{index}"),
            BasisLabel::StableF { y_exp: 0, f_index } => write!(f, "F_{f_index}"),
            BasisLabel::StableF { y_exp: 1, f_index } => write!(f, "y*F_{f_index}"),
            BasisLabel::StableF { y_exp, f_index } => write!(f, "y^{y_exp}*F_{f_index}"),
        }
    }
}

/// A validated ring presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    kind: RingKind,
    n: u32,
    m: u32,
}

/// Constructs and validates a ring presentation; see [`RingSpec::new`].
pub fn make_ring(kind: RingKind, n: u32, m: u32) -> Result<RingSpec, RingError> {
    RingSpec::new(kind, n, m)
}

impl RingSpec {
    /// Validates parameters, enumerates the basis and runs the construction
    /// self-checks: `F_n(1,2) = n`, every defining relation reduces to zero,
    /// and (for the Green ring) both projection maps send every defining
    /// relation to zero.
    pub fn new(kind: RingKind, n: u32, m: u32) -> Result<Self, RingError> {
        if n < 2 {
            return Err(RingError::InvalidParams(format!("n must be >= 2, got {n}")));
        }
        if m < 1 {
            return Err(RingError::InvalidParams(format!("m must be >= 1, got {m}")));
        }
        let m = if kind == RingKind::Stable { 1 } else { m };
        let spec = RingSpec { kind, n, m };
        spec.self_check()?;
        Ok(spec)
    }

    fn unchecked(kind: RingKind, n: u32, m: u32) -> Self {
        RingSpec { kind, n, m: if kind == RingKind::Stable { 1 } else { m } }
    }

    fn self_check(&self) -> Result<(), RingError> {
        // The X-power rewrites rely on F_n(1, 2) = n; verify by recursion
        // instead of hard-coding it.
        let f_n = dickson::dickson_f(self.n).expect("n >= 2");
        let two = BigRational::from_integer(2.into());
        let at_12 = f_n.eval_yz(&BigRational::one(), &two)?;
        if at_12 != BigRational::from_integer(self.n.into()) {
            return Err(RingError::PresentationCheck(format!(
                "F_{}(1,2) = {} != {}",
                self.n, at_12, self.n
            )));
        }
        for rel in self.defining_relations() {
            let nf = self.reduce(&rel)?;
            if !nf.is_zero() {
                return Err(RingError::PresentationCheck(format!(
                    "relation {rel} does not reduce to zero (got {nf})"
                )));
            }
        }
        if self.kind == RingKind::RadfordGreen {
            let stable = RingSpec::unchecked(RingKind::Stable, self.n, 1);
            let groth = RingSpec::unchecked(RingKind::Grothendieck, self.n, self.m);
            for rel in self.defining_relations() {
                let s = stable.reduce(&stable_image_poly(&rel))?;
                if !s.is_zero() {
                    return Err(RingError::PresentationCheck(format!(
                        "stable image of relation {rel} is {s}, not zero"
                    )));
                }
                let g = groth.reduce(&grothendieck_image_poly(&rel))?;
                if !g.is_zero() {
                    return Err(RingError::PresentationCheck(format!(
                        "Grothendieck image of relation {rel} is {g}, not zero"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of `X` variables in the polynomial context.
    pub fn arity(&self) -> usize {
        match self.kind {
            RingKind::Stable => 0,
            _ => self.m as usize - 1,
        }
    }

    pub fn rank(&self) -> usize {
        let (n, m) = (self.n as usize, self.m as usize);
        match self.kind {
            RingKind::RadfordGreen => n * n + m - 1,
            RingKind::Grothendieck => n + m - 1,
            RingKind::Stable => n * (n - 1),
        }
    }

    /// The normal-form basis in deterministic enumeration order.
    pub fn basis(&self) -> Vec<BasisLabel> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.rank());
        match self.kind {
            RingKind::RadfordGreen => {
                for z_exp in 0..n {
                    for y_exp in 0..n {
                        out.push(BasisLabel::Mono { y_exp, z_exp });
                    }
                }
                for index in 1..self.m {
                    out.push(BasisLabel::Xgen { index });
                }
            }
            RingKind::Grothendieck => {
                for y_exp in 0..n {
                    out.push(BasisLabel::Mono { y_exp, z_exp: 0 });
                }
                for index in 1..self.m {
                    out.push(BasisLabel::Xgen { index });
                }
            }
            RingKind::Stable => {
                for f_index in 1..n {
                    for y_exp in 0..n {
                        out.push(BasisLabel::StableF { y_exp, f_index });
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), self.rank());
        out
    }

    /// Position of a label in [`RingSpec::basis`], if it belongs to the ring.
    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        let n = self.n;
        match (self.kind, *label) {
            (RingKind::RadfordGreen, BasisLabel::Mono { y_exp, z_exp })
                if y_exp < n && z_exp < n =>
            {
                Some((z_exp * n + y_exp) as usize)
            }
            (RingKind::RadfordGreen, BasisLabel::Xgen { index })
                if index >= 1 && index < self.m =>
            {
                Some((n * n + index - 1) as usize)
            }
            (RingKind::Grothendieck, BasisLabel::Mono { y_exp, z_exp: 0 }) if y_exp < n => {
                Some(y_exp as usize)
            }
            (RingKind::Grothendieck, BasisLabel::Xgen { index })
                if index >= 1 && index < self.m =>
            {
                Some((n + index - 1) as usize)
            }
            (RingKind::Stable, BasisLabel::StableF { y_exp, f_index })
                if y_exp < n && f_index >= 1 && f_index < n =>
            {
                Some(((f_index - 1) * n + y_exp) as usize)
            }
            _ => None,
        }
    }

    pub fn unit_label(&self) -> BasisLabel {
        match self.kind {
            RingKind::Stable => BasisLabel::StableF { y_exp: 0, f_index: 1 },
            _ => BasisLabel::Mono { y_exp: 0, z_exp: 0 },
        }
    }

    pub fn unit_index(&self) -> usize {
        self.index_of(&self.unit_label()).expect("unit is a basis label")
    }

    /// The generators of the defining ideal, as polynomials in this ring's
    /// variable context.
    pub fn defining_relations(&self) -> Vec<Poly> {
        let n = self.n;
        let m = self.m;
        let a = self.arity();
        let y = Poly::var_y(a);
        let one = Poly::one(a);
        let yn_minus_1 = &y.pow(n) - &one;
        let geom = geometric_y(n, a);
        match self.kind {
            RingKind::Stable => {
                let f_n = dickson::dickson_f(n).expect("n >= 2");
                vec![yn_minus_1, f_n]
            }
            RingKind::RadfordGreen => {
                let z = Poly::var_z(a);
                let f_n = dickson::dickson_f(n).expect("n >= 2").with_arity(a);
                let mut rels = vec![
                    yn_minus_1,
                    &(&(&one + &y) - &z) * &f_n,
                ];
                if m >= 2 {
                    let x1 = Poly::var_x(a, 1);
                    rels.push(&(&y * &x1) - &x1);
                    rels.push(&(&z * &x1) - &x1.scale(&BigRational::from_integer(2.into())));
                    for j in 2..m {
                        let nj = big_pow(n, (j - 1) as u64);
                        rels.push(
                            &x1.pow(j)
                                - &Poly::var_x(a, j as usize)
                                    .scale(&BigRational::from_integer(nj)),
                        );
                    }
                    let scale = BigRational::from_integer(big_pow(n, (m - 2) as u64));
                    rels.push(&x1.pow(m) - &(&geom * &f_n).scale(&scale));
                }
                rels
            }
            RingKind::Grothendieck => {
                let mut rels = vec![yn_minus_1];
                if m >= 2 {
                    let x1 = Poly::var_x(a, 1);
                    rels.push(&(&y * &x1) - &x1);
                    for j in 2..m {
                        let nj = big_pow(n, (j - 1) as u64);
                        rels.push(
                            &x1.pow(j)
                                - &Poly::var_x(a, j as usize)
                                    .scale(&BigRational::from_integer(nj)),
                        );
                    }
                    let scale = BigRational::from_integer(big_pow(n, (m - 1) as u64));
                    rels.push(&x1.pow(m) - &geom.scale(&scale));
                }
                rels
            }
        }
    }

    /// Normal form of a polynomial in the quotient ring.
    pub fn reduce(&self, p: &Poly) -> Result<RingElement, RingError> {
        if p.arity() != self.arity() {
            return Err(PolyError::ArityMismatch { left: p.arity(), right: self.arity() }.into());
        }
        match self.kind {
            RingKind::RadfordGreen => self.reduce_radford(p),
            RingKind::Grothendieck => self.reduce_grothendieck(p),
            RingKind::Stable => self.reduce_stable(p),
        }
    }

    fn reduce_radford(&self, p: &Poly) -> Result<RingElement, RingError> {
        let n = self.n;
        let m = self.m as u64;
        let mut yz = Poly::zero(0);
        // Accumulated X1 powers after the substitution X_j = X1^j / n^{j-1};
        // Y and Z absorb into the coefficient via Y X1 = X1, Z X1 = 2 X1.
        let mut xpow: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (mono, coeff) in p.terms() {
            let e: u64 = mono
                .x_exps
                .iter()
                .enumerate()
                .map(|(i, &exp)| (i as u64 + 1) * exp as u64)
                .sum();
            if e == 0 {
                yz = &yz + &Poly::monomial(Monomial::yz(mono.y_exp, mono.z_exp, 0), coeff.clone());
            } else {
                let down: u64 = mono
                    .x_exps
                    .iter()
                    .enumerate()
                    .map(|(i, &exp)| i as u64 * exp as u64)
                    .sum();
                let mut c = coeff / BigRational::from_integer(big_pow(n, down));
                c *= BigRational::from_integer(BigInt::from(2).pow(mono.z_exp));
                add_entry(&mut xpow, e, c);
            }
        }
        let mut xfinal: BTreeMap<u32, BigRational> = BTreeMap::new();
        while let Some((&e, _)) = xpow.last_key_value() {
            let c = xpow.remove(&e).expect("key present");
            if c.is_zero() {
                continue;
            }
            if e > m {
                // X1^e = n^m X1^{e-m} for e - m >= 1
                let scaled = c * BigRational::from_integer(big_pow(n, m));
                add_entry(&mut xpow, e - m, scaled);
            } else if e == m {
                let f_n = dickson::dickson_f(n).expect("n >= 2");
                let repl = &geometric_y(n, 0) * &f_n;
                let scale = c * BigRational::from_integer(big_pow(n, m - 2));
                yz = &yz + &repl.scale(&scale);
            } else {
                let scaled = c * BigRational::from_integer(big_pow(n, e - 1));
                add_entry(&mut xfinal, e as u32, scaled);
            }
        }
        let yz = self.reduce_yz_radford(yz);
        let mut coeffs: BTreeMap<BasisLabel, BigRational> = BTreeMap::new();
        for (mono, c) in yz.terms() {
            let label = BasisLabel::Mono { y_exp: mono.y_exp, z_exp: mono.z_exp };
            add_entry(&mut coeffs, label, c.clone());
        }
        for (index, c) in xfinal {
            add_entry(&mut coeffs, BasisLabel::Xgen { index }, c);
        }
        RingElement::from_rational_coeffs(*self, coeffs)
    }

    // Y^n -> 1, then Z^n -> (1+Y)F_n - Z(F_n - Z^{n-1}) on leading Z powers.
    // Terms with very large Z exponents go through square-and-multiply on
    // reduced powers of Z so the cost is logarithmic in the exponent.
    fn reduce_yz_radford(&self, p: Poly) -> Poly {
        let n = self.n;
        let f_n = dickson::dickson_f(n).expect("n >= 2");
        let zn1 = Poly::monomial(Monomial::yz(0, n - 1, 0), BigRational::one());
        let one = Poly::one(0);
        let y = Poly::var_y(0);
        let z = Poly::var_z(0);
        let repl = &(&(&one + &y) * &f_n) - &(&z * &(&f_n - &zn1));
        reduce_yz_with(p, n, n, &repl)
    }

    fn reduce_grothendieck(&self, p: &Poly) -> Result<RingElement, RingError> {
        let n = self.n;
        let m = self.m as u64;
        let mut ypoly = Poly::zero(0);
        let mut xpow: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (mono, coeff) in p.terms() {
            if mono.z_exp > 0 {
                return Err(RingError::ZNotInContext);
            }
            let e: u64 = mono
                .x_exps
                .iter()
                .enumerate()
                .map(|(i, &exp)| (i as u64 + 1) * exp as u64)
                .sum();
            if e == 0 {
                ypoly = &ypoly + &Poly::monomial(Monomial::yz(mono.y_exp, 0, 0), coeff.clone());
            } else {
                let down: u64 = mono
                    .x_exps
                    .iter()
                    .enumerate()
                    .map(|(i, &exp)| i as u64 * exp as u64)
                    .sum();
                let c = coeff / BigRational::from_integer(big_pow(n, down));
                add_entry(&mut xpow, e, c);
            }
        }
        let mut xfinal: BTreeMap<u32, BigRational> = BTreeMap::new();
        while let Some((&e, _)) = xpow.last_key_value() {
            let c = xpow.remove(&e).expect("key present");
            if c.is_zero() {
                continue;
            }
            if e > m {
                let scaled = c * BigRational::from_integer(big_pow(n, m));
                add_entry(&mut xpow, e - m, scaled);
            } else if e == m {
                let scale = c * BigRational::from_integer(big_pow(n, m - 1));
                ypoly = &ypoly + &geometric_y(n, 0).scale(&scale);
            } else {
                let scaled = c * BigRational::from_integer(big_pow(n, e - 1));
                add_entry(&mut xfinal, e as u32, scaled);
            }
        }
        let ypoly = mod_y(&ypoly, n);
        let mut coeffs: BTreeMap<BasisLabel, BigRational> = BTreeMap::new();
        for (mono, c) in ypoly.terms() {
            add_entry(
                &mut coeffs,
                BasisLabel::Mono { y_exp: mono.y_exp, z_exp: 0 },
                c.clone(),
            );
        }
        for (index, c) in xfinal {
            add_entry(&mut coeffs, BasisLabel::Xgen { index }, c);
        }
        RingElement::from_rational_coeffs(*self, coeffs)
    }

    fn reduce_stable(&self, p: &Poly) -> Result<RingElement, RingError> {
        let n = self.n;
        let f_n = dickson::dickson_f(n).expect("n >= 2");
        let zn1 = Poly::monomial(Monomial::yz(0, n - 1, 0), BigRational::one());
        // Z^{n-1} -> Z^{n-1} - F_n, which has Z-degree <= n-3.
        let repl = &zn1 - &f_n;
        let p = reduce_yz_with(p.clone(), n, n - 1, &repl);
        // Monomial normal form { y^a z^b : a < n, b <= n-2 }, then the
        // inverse Dickson expansion to the F-basis.
        let mut coeffs: BTreeMap<BasisLabel, BigRational> = BTreeMap::new();
        for (mono, c) in p.terms() {
            for (f_index, y_pow, k) in dickson::monomial_to_f_coeffs(mono.z_exp) {
                let label = BasisLabel::StableF {
                    y_exp: (mono.y_exp + y_pow) % n,
                    f_index,
                };
                add_entry(&mut coeffs, label, c * BigRational::from_integer(k));
            }
        }
        RingElement::from_rational_coeffs(*self, coeffs)
    }

    /// Expansion of the monomial `y^i z^j` (with `0 <= i < n`, `0 <= j <= n-2`)
    /// over the `StableF` basis.
    pub fn to_f_basis(&self, i: u32, j: u32) -> Result<RingElement, RingError> {
        self.expect_kind(RingKind::Stable)?;
        let n = self.n;
        if i >= n {
            return Err(RingError::IndexOutOfRange(format!("y exponent {i} not in 0..{n}")));
        }
        if j > n - 2 {
            return Err(RingError::IndexOutOfRange(format!(
                "z exponent {j} not in 0..={} (not a monomial-basis label)",
                n - 2
            )));
        }
        let mut coeffs = BTreeMap::new();
        for (f_index, y_pow, k) in dickson::monomial_to_f_coeffs(j) {
            let label = BasisLabel::StableF { y_exp: (i + y_pow) % n, f_index };
            coeffs.insert(label, k);
        }
        Ok(RingElement { spec: *self, coeffs })
    }

    /// Kernel generators of the stable projection: normal forms of
    /// `y^i F_n(y, z)` for `i = 0..n-1`, then `X1..X{m-1}`.
    pub fn projective_kernel_basis(&self) -> Result<Vec<RingElement>, RingError> {
        self.expect_kind(RingKind::RadfordGreen)?;
        let a = self.arity();
        let f_n = dickson::dickson_f(self.n).expect("n >= 2").with_arity(a);
        let y = Poly::var_y(a);
        let mut out = Vec::with_capacity((self.n + self.m - 1) as usize);
        for i in 0..self.n {
            out.push(self.reduce(&(&y.pow(i) * &f_n))?);
        }
        for index in 1..self.m {
            out.push(RingElement::from_label(*self, BasisLabel::Xgen { index })?);
        }
        Ok(out)
    }

    fn expect_kind(&self, kind: RingKind) -> Result<(), RingError> {
        if self.kind != kind {
            return Err(RingError::WrongKind { expected: kind.name(), found: self.kind.name() });
        }
        Ok(())
    }
}

/// `1 + Y + ... + Y^{n-1}`.
fn geometric_y(n: u32, arity: usize) -> Poly {
    let mut p = Poly::zero(arity);
    for i in 0..n {
        p = &p + &Poly::monomial(Monomial::yz(i, 0, arity), BigRational::one());
    }
    p
}

fn big_pow(n: u32, e: u64) -> BigInt {
    let e = u32::try_from(e).expect("power of n exceeds u32 exponent range");
    BigInt::from(n).pow(e)
}

/// Reduces `Y` exponents mod `n` and rewrites `Z^deg -> repl` (with `repl` of
/// Z-degree < `deg`) until every Z exponent is below `deg`. Terms whose Z
/// exponent is at least `2*deg` are handled by square-and-multiply on reduced
/// powers of `Z`.
fn reduce_yz_with(p: Poly, n: u32, deg: u32, repl: &Poly) -> Poly {
    let mut cache: std::collections::HashMap<u32, Poly> = std::collections::HashMap::new();
    let mut staged = Poly::zero(0);
    for (mono, c) in p.terms() {
        if mono.z_exp >= 2 * deg {
            let zp = z_power_reduced(mono.z_exp, n, deg, repl, &mut cache);
            let rest = Poly::monomial(Monomial::yz(mono.y_exp, 0, 0), c.clone());
            staged = &staged + &(&rest * &zp);
        } else {
            staged = &staged + &Poly::monomial(mono.clone(), c.clone());
        }
    }
    small_sweep(staged, n, deg, repl)
}

/// `Z^b` in normal form (Z-degree < `deg`), by square-and-multiply with
/// memoization.
fn z_power_reduced(
    b: u32,
    n: u32,
    deg: u32,
    repl: &Poly,
    cache: &mut std::collections::HashMap<u32, Poly>,
) -> Poly {
    if b < deg {
        return Poly::monomial(Monomial::yz(0, b, 0), BigRational::one());
    }
    if let Some(hit) = cache.get(&b) {
        return hit.clone();
    }
    let half = z_power_reduced(b / 2, n, deg, repl, cache);
    let mut prod = &half * &half;
    if b % 2 == 1 {
        prod = &prod * &Poly::var_z(0);
    }
    let reduced = small_sweep(prod, n, deg, repl);
    cache.insert(b, reduced.clone());
    reduced
}

fn small_sweep(mut p: Poly, n: u32, deg: u32, repl: &Poly) -> Poly {
    loop {
        p = mod_y(&p, n);
        let Some(max_z) = p.z_degree() else { return p };
        if max_z < deg {
            return p;
        }
        let mut next = Poly::zero(0);
        for (mono, c) in p.terms() {
            if mono.z_exp >= deg {
                let rest = Poly::monomial(Monomial::yz(mono.y_exp, mono.z_exp - deg, 0), c.clone());
                next = &next + &(&rest * repl);
            } else {
                next = &next + &Poly::monomial(mono.clone(), c.clone());
            }
        }
        p = next;
    }
}

fn mod_y(p: &Poly, n: u32) -> Poly {
    Poly::from_terms(
        p.arity(),
        p.terms().map(|(m, c)| {
            let mut m = m.clone();
            m.y_exp %= n;
            (m, c.clone())
        }),
    )
}

fn add_entry<K: Ord>(map: &mut BTreeMap<K, BigRational>, key: K, val: BigRational) {
    use std::collections::btree_map::Entry;
    if val.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(val);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &val;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// The image of a Green-ring polynomial under `Y -> y, Z -> z, X_j -> 0`.
fn stable_image_poly(p: &Poly) -> Poly {
    Poly::from_terms(
        0,
        p.terms().filter(|(m, _)| m.has_no_x()).map(|(m, c)| {
            (Monomial::yz(m.y_exp, m.z_exp, 0), c.clone())
        }),
    )
}

/// The image of a Green-ring polynomial under `Y -> Y, Z -> 1 + Y, X_j -> X_j`.
fn grothendieck_image_poly(p: &Poly) -> Poly {
    let a = p.arity();
    let one_plus_y = &Poly::one(a) + &Poly::var_y(a);
    let mut out = Poly::zero(a);
    for (m, c) in p.terms() {
        let base = Poly::monomial(
            Monomial { y_exp: m.y_exp, z_exp: 0, x_exps: m.x_exps.clone() },
            c.clone(),
        );
        out = &out + &(&base * &one_plus_y.pow(m.z_exp));
    }
    out
}

/// A ring element in normal form: integer coordinates over the basis of its
/// spec. Produced by [`RingSpec::reduce`] and the arithmetic below; every
/// construction path asserts integrality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    spec: RingSpec,
    coeffs: BTreeMap<BasisLabel, BigInt>,
}

impl RingElement {
    pub fn zero(spec: RingSpec) -> Self {
        RingElement { spec, coeffs: BTreeMap::new() }
    }

    pub fn unit(spec: RingSpec) -> Self {
        Self::from_label(spec, spec.unit_label()).expect("unit label is valid")
    }

    pub fn from_label(spec: RingSpec, label: BasisLabel) -> Result<Self, RingError> {
        Self::from_coeffs(spec, [(label, BigInt::one())])
    }

    pub fn from_coeffs(
        spec: RingSpec,
        coeffs: impl IntoIterator<Item = (BasisLabel, BigInt)>,
    ) -> Result<Self, RingError> {
        let mut map = BTreeMap::new();
        for (label, c) in coeffs {
            if spec.index_of(&label).is_none() {
                return Err(RingError::LabelOutOfRange(label.to_string()));
            }
            if !c.is_zero() {
                let entry = map.entry(label).or_insert_with(BigInt::zero);
                *entry += c;
                if entry.is_zero() {
                    map.remove(&label);
                }
            }
        }
        Ok(RingElement { spec, coeffs: map })
    }

    fn from_rational_coeffs(
        spec: RingSpec,
        coeffs: BTreeMap<BasisLabel, BigRational>,
    ) -> Result<Self, RingError> {
        let mut map = BTreeMap::new();
        for (label, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return Err(RingError::IntegralityViolation {
                    label: label.to_string(),
                    value: c.to_string(),
                });
            }
            debug_assert!(spec.index_of(&label).is_some(), "reduce produced {label}");
            map.insert(label, c.numer().clone());
        }
        Ok(RingElement { spec, coeffs: map })
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&BasisLabel, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, label: &BasisLabel) -> BigInt {
        self.coeffs.get(label).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Dense coordinates in basis enumeration order.
    pub fn to_vector(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.spec.rank()];
        for (label, c) in &self.coeffs {
            v[self.spec.index_of(label).expect("validated label")] = c.clone();
        }
        v
    }

    pub fn from_vector(spec: RingSpec, v: &[BigInt]) -> Result<Self, RingError> {
        if v.len() != spec.rank() {
            return Err(RingError::IndexOutOfRange(format!(
                "vector length {} != rank {}",
                v.len(),
                spec.rank()
            )));
        }
        Self::from_coeffs(spec, spec.basis().into_iter().zip(v.iter().cloned()))
    }

    fn check_spec(&self, other: &RingElement) -> Result<(), RingError> {
        if self.spec != other.spec {
            return Err(RingError::SpecMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_spec(other)?;
        let mut out = self.clone();
        for (label, c) in &other.coeffs {
            let entry = out.coeffs.entry(*label).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(label);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|(l, c)| (*l, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        if k.is_zero() {
            return RingElement::zero(self.spec);
        }
        RingElement {
            spec: self.spec,
            coeffs: self.coeffs.iter().map(|(l, c)| (*l, c * k)).collect(),
        }
    }

    /// Product in normal form. Stable rings multiply through the closed
    /// formula per basis pair; the other rings multiply representative
    /// polynomials and reduce.
    pub fn mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_spec(other)?;
        match self.spec.kind {
            RingKind::Stable => {
                let mut acc = RingElement::zero(self.spec);
                for (la, ca) in &self.coeffs {
                    for (lb, cb) in &other.coeffs {
                        let (BasisLabel::StableF { y_exp: i, f_index: j },
                             BasisLabel::StableF { y_exp: k, f_index: l }) = (la, lb)
                        else {
                            unreachable!("stable elements only hold StableF labels")
                        };
                        let prod = stable_pair_product(self.spec, (*i, *j), (*k, *l));
                        acc = acc.add(&prod.scale(&(ca * cb)))?;
                    }
                }
                Ok(acc)
            }
            _ => {
                let p = &self.to_poly() * &other.to_poly();
                self.spec.reduce(&p)
            }
        }
    }

    /// Representative polynomial of the normal form.
    pub fn to_poly(&self) -> Poly {
        let a = self.spec.arity();
        let mut p = Poly::zero(a);
        for (label, c) in &self.coeffs {
            let c = BigRational::from_integer(c.clone());
            let term = match *label {
                BasisLabel::Mono { y_exp, z_exp } => {
                    Poly::monomial(Monomial::yz(y_exp, z_exp, a), c)
                }
                BasisLabel::Xgen { index } => Poly::var_x(a, index as usize).scale(&c),
                BasisLabel::StableF { y_exp, f_index } => {
                    let f = dickson::dickson_f(f_index).expect("f_index >= 1");
                    (&Poly::monomial(Monomial::yz(y_exp, 0, 0), c) * &f).with_arity(a)
                }
            };
            p = &p + &term;
        }
        p
    }

    /// Coordinates of a stable element over the monomial basis
    /// `{ y^i z^j : 0 <= i < n, 0 <= j <= n-2 }`. Exact inverse of
    /// [`RingSpec::to_f_basis`].
    pub fn to_monomial_basis(&self) -> Result<BTreeMap<(u32, u32), BigInt>, RingError> {
        self.spec.expect_kind(RingKind::Stable)?;
        let n = self.spec.n;
        let mut out: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (label, c) in &self.coeffs {
            let BasisLabel::StableF { y_exp, f_index } = label else {
                unreachable!("stable elements only hold StableF labels")
            };
            let f = dickson::dickson_f(*f_index).expect("f_index >= 1");
            for (m, fc) in f.terms() {
                debug_assert!(fc.is_integer());
                let key = ((y_exp + m.y_exp) % n, m.z_exp);
                let entry = out.entry(key).or_insert_with(BigInt::zero);
                *entry += c * fc.numer();
                if entry.is_zero() {
                    out.remove(&key);
                }
            }
        }
        Ok(out)
    }

    /// Ring homomorphism onto the stable Green ring determined by
    /// `Y -> y, Z -> z, X_j -> 0`; defined for Green-ring elements.
    pub fn stable_projection(&self) -> Result<RingElement, RingError> {
        self.spec.expect_kind(RingKind::RadfordGreen)?;
        let target = RingSpec::unchecked(RingKind::Stable, self.spec.n, 1);
        target.reduce(&stable_image_poly(&self.to_poly()))
    }

    /// Ring homomorphism onto the Grothendieck ring determined by
    /// `Y -> Y, Z -> 1 + Y, X_j -> X_j`; defined for Green-ring elements.
    pub fn grothendieck_projection(&self) -> Result<RingElement, RingError> {
        self.spec.expect_kind(RingKind::RadfordGreen)?;
        let target = RingSpec::unchecked(RingKind::Grothendieck, self.spec.n, self.spec.m);
        target.reduce(&grothendieck_image_poly(&self.to_poly()))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (label, c) in &self.coeffs {
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
            let is_unit_mono = matches!(label, BasisLabel::Mono { y_exp: 0, z_exp: 0 });
            if is_unit_mono {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{abs}*{label}")?;
            }
        }
        Ok(())
    }
}

/// Closed-form product of two stable basis elements
/// `y^i F_j * y^k F_l = sum_t y^{i+k+t} F_{j+l-1-2t}` with
/// `t` running from `zeta(j,l)` to `min(j,l) - 1`, where `zeta(j,l) = 0` when
/// `j + l - 1 < n` and `j + l - n` otherwise.
pub fn stable_mul_closed(
    n: u32,
    lhs: (u32, u32),
    rhs: (u32, u32),
) -> Result<RingElement, RingError> {
    let spec = RingSpec::new(RingKind::Stable, n, 1)?;
    let (i, j) = lhs;
    let (k, l) = rhs;
    for (y, f_idx) in [(i, j), (k, l)] {
        if y >= n || f_idx < 1 || f_idx >= n {
            return Err(RingError::IndexOutOfRange(format!(
                "(y={y}, F_{f_idx}) is not a stable basis label for n={n}"
            )));
        }
    }
    Ok(stable_pair_product(spec, lhs, rhs))
}

fn stable_pair_product(spec: RingSpec, (i, j): (u32, u32), (k, l): (u32, u32)) -> RingElement {
    let n = spec.n;
    let zeta = if j + l - 1 < n { 0 } else { j + l - n };
    let t_max = j.min(l) - 1;
    // zeta <= min(j,l) - 1 always holds for valid labels: the sum is never empty.
    assert!(zeta <= t_max, "empty stable product sum for n={n}, ({i},{j})*({k},{l})");
    let mut coeffs = BTreeMap::new();
    for t in zeta..=t_max {
        coeffs.insert(
            BasisLabel::StableF { y_exp: (i + k + t) % n, f_index: j + l - 1 - 2 * t },
            BigInt::one(),
        );
    }
    RingElement { spec, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn radford(n: u32, m: u32) -> RingSpec {
        RingSpec::new(RingKind::RadfordGreen, n, m).unwrap()
    }

    fn groth(n: u32, m: u32) -> RingSpec {
        RingSpec::new(RingKind::Grothendieck, n, m).unwrap()
    }

    fn stable(n: u32) -> RingSpec {
        RingSpec::new(RingKind::Stable, n, 1).unwrap()
    }

    fn parse_labels(spec: RingSpec) -> Vec<String> {
        spec.basis().iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn make_ring_ranks_and_bases() {
        let r = radford(2, 2);
        assert_eq!(r.rank(), 5);
        assert_eq!(parse_labels(r), ["1", "Y", "Z", "Y*Z", "X1"]);

        let s = stable(3);
        assert_eq!(s.rank(), 6);
        assert_eq!(
            parse_labels(s),
            ["F_1", "y*F_1", "y^2*F_1", "F_2", "y*F_2", "y^2*F_2"]
        );

        let g = groth(2, 2);
        assert_eq!(g.rank(), 3);
        assert_eq!(parse_labels(g), ["1", "Y", "X1"]);
    }

    #[test]
    fn make_ring_rejects_small_n() {
        assert!(RingSpec::new(RingKind::RadfordGreen, 1, 2).is_err());
        assert!(RingSpec::new(RingKind::Stable, 0, 1).is_err());
        assert!(RingSpec::new(RingKind::Grothendieck, 3, 0).is_err());
    }

    #[test]
    fn basis_and_index_agree() {
        for spec in [radford(4, 3), groth(4, 3), stable(5), radford(3, 1)] {
            for (idx, label) in spec.basis().iter().enumerate() {
                assert_eq!(spec.index_of(label), Some(idx));
            }
        }
    }

    #[test]
    fn reduce_radford_examples() {
        let spec = radford(2, 2);
        let z = Poly::var_z(1);
        // (1+Y-Z)Z = 0 forces Z^2 = Z + YZ
        let e = spec.reduce(&z.pow(2)).unwrap();
        assert_eq!(e.to_string(), "Z + Y*Z");
        // X1^2 = n^{m-2} (1+Y) F_2 = (1+Y) Z
        let x1 = Poly::var_x(1, 1);
        let e = spec.reduce(&x1.pow(2)).unwrap();
        assert_eq!(e.to_string(), "Z + Y*Z");
    }

    #[test]
    fn reduce_stable_examples() {
        let spec = stable(2);
        assert!(spec.reduce(&Poly::var_z(0)).unwrap().is_zero());
        let spec4 = stable(4);
        let z2 = Poly::var_z(0).pow(2);
        let e = spec4.reduce(&z2).unwrap();
        assert_eq!(e.to_string(), "y*F_1 + F_3");
    }

    #[test]
    fn ring_mul_examples() {
        // Z X1 = 2 X1 in the Green ring
        let spec = radford(2, 2);
        let x1 = spec.reduce(&Poly::var_x(1, 1)).unwrap();
        let z = spec.reduce(&Poly::var_z(1)).unwrap();
        assert_eq!(x1.mul(&z).unwrap().to_string(), "2*X1");

        // X1^2 = 2 + 2Y in the Grothendieck ring at n = m = 2
        let g = groth(2, 2);
        let x1 = g.reduce(&Poly::var_x(1, 1)).unwrap();
        assert_eq!(x1.mul(&x1).unwrap().to_string(), "2 + 2*Y");

        // F_2 F_3 = y F_2 in the stable ring at n = 4
        let s = stable(4);
        let f2 = RingElement::from_label(s, BasisLabel::StableF { y_exp: 0, f_index: 2 }).unwrap();
        let f3 = RingElement::from_label(s, BasisLabel::StableF { y_exp: 0, f_index: 3 }).unwrap();
        assert_eq!(f2.mul(&f3).unwrap().to_string(), "y*F_2");
    }

    #[test]
    fn stable_mul_closed_examples() {
        let e = stable_mul_closed(4, (0, 2), (0, 2)).unwrap();
        assert_eq!(e.to_string(), "y*F_1 + F_3");
        let e = stable_mul_closed(3, (0, 2), (0, 2)).unwrap();
        assert_eq!(e.to_string(), "y*F_1");
        // y^2 F_3 * y^3 F_3 at n=4: zeta = 2, single term y^3 F_1
        let e = stable_mul_closed(4, (2, 3), (3, 3)).unwrap();
        assert_eq!(e.to_string(), "y^3*F_1");
        assert!(stable_mul_closed(4, (4, 2), (0, 2)).is_err());
        assert!(stable_mul_closed(4, (0, 0), (0, 2)).is_err());
    }

    #[test]
    fn stable_closed_form_matches_polynomial_route() {
        for n in 2..=6u32 {
            let spec = stable(n);
            for i in 0..n {
                for j in 1..n {
                    for k in 0..n {
                        for l in 1..n {
                            let closed = stable_mul_closed(n, (i, j), (k, l)).unwrap();
                            let a = RingElement::from_label(
                                spec,
                                BasisLabel::StableF { y_exp: i, f_index: j },
                            )
                            .unwrap();
                            let b = RingElement::from_label(
                                spec,
                                BasisLabel::StableF { y_exp: k, f_index: l },
                            )
                            .unwrap();
                            let oracle = spec.reduce(&(&a.to_poly() * &b.to_poly())).unwrap();
                            assert_eq!(closed, oracle, "n={n} ({i},{j})*({k},{l})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f_basis_conversions() {
        let s = stable(4);
        let e = s.to_f_basis(0, 2).unwrap();
        assert_eq!(e.to_string(), "y*F_1 + F_3");
        for i in 0..4 {
            let e = s.to_f_basis(i, 0).unwrap();
            assert_eq!(e.to_string(), BasisLabel::StableF { y_exp: i, f_index: 1 }.to_string());
        }
        let s5 = stable(5);
        let e = s5.to_f_basis(0, 3).unwrap();
        assert_eq!(e.to_string(), "2*y*F_2 + F_4");
        assert!(s5.to_f_basis(0, 4).is_err());
        assert!(s5.to_f_basis(5, 0).is_err());
    }

    #[test]
    fn monomial_round_trip() {
        for n in 2..=12u32 {
            let s = stable(n);
            for i in 0..n {
                for j in 0..=n - 2 {
                    let e = s.to_f_basis(i, j).unwrap();
                    let coords = e.to_monomial_basis().unwrap();
                    assert_eq!(coords.len(), 1, "n={n} y^{i} z^{j}");
                    assert_eq!(coords.get(&(i, j)), Some(&BigInt::one()));
                }
            }
        }
    }

    #[test]
    fn to_monomial_basis_examples() {
        let s = stable(4);
        let f1 = RingElement::unit(s);
        assert_eq!(
            f1.to_monomial_basis().unwrap(),
            BTreeMap::from([((0, 0), BigInt::one())])
        );
        let yf2 =
            RingElement::from_label(s, BasisLabel::StableF { y_exp: 1, f_index: 2 }).unwrap();
        assert_eq!(
            yf2.to_monomial_basis().unwrap(),
            BTreeMap::from([((1, 1), BigInt::one())])
        );
    }

    #[test]
    fn projections_on_generators() {
        let spec = radford(2, 2);
        let x1 = spec.reduce(&Poly::var_x(1, 1)).unwrap();
        assert!(x1.stable_projection().unwrap().is_zero());
        let z = spec.reduce(&Poly::var_z(1)).unwrap();
        assert!(z.stable_projection().unwrap().is_zero()); // F_2 = Z vanishes at n=2
        let y = spec.reduce(&Poly::var_y(1)).unwrap();
        assert_eq!(y.stable_projection().unwrap().to_string(), "y*F_1");

        assert_eq!(z.grothendieck_projection().unwrap().to_string(), "1 + Y");
        assert_eq!(x1.grothendieck_projection().unwrap().to_string(), "X1");
        // Z^2 = Z + YZ maps to (1+Y)^2 = 2 + 2Y both ways
        let z2 = spec.reduce(&Poly::var_z(1).pow(2)).unwrap();
        assert_eq!(z2.grothendieck_projection().unwrap().to_string(), "2 + 2*Y");
    }

    #[test]
    fn projections_are_multiplicative_spot() {
        let spec = radford(3, 2);
        let a = spec
            .reduce(&(&Poly::var_z(1).pow(2) - &Poly::var_x(1, 1)))
            .unwrap();
        let b = spec
            .reduce(&(&Poly::var_y(1) + &Poly::var_z(1)))
            .unwrap();
        let ab = a.mul(&b).unwrap();
        for (f, g, fg) in [
            (
                a.stable_projection().unwrap(),
                b.stable_projection().unwrap(),
                ab.stable_projection().unwrap(),
            ),
            (
                a.grothendieck_projection().unwrap(),
                b.grothendieck_projection().unwrap(),
                ab.grothendieck_projection().unwrap(),
            ),
        ] {
            assert_eq!(f.mul(&g).unwrap(), fg);
        }
    }

    #[test]
    fn projective_kernel_basis_examples() {
        let spec = radford(2, 2);
        let basis = spec.projective_kernel_basis().unwrap();
        let rendered: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
        assert_eq!(rendered, ["Z", "Y*Z", "X1"]);

        let taft = radford(2, 1);
        let basis = taft.projective_kernel_basis().unwrap();
        let rendered: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
        assert_eq!(rendered, ["Z", "Y*Z"]);
    }

    #[test]
    fn large_z_powers_reduce_consistently() {
        // The logarithmic path must agree with element-level square-and-multiply.
        for spec in [stable(5), radford(3, 2)] {
            let z_poly = Poly::var_z(spec.arity());
            let direct = spec.reduce(&z_poly.pow(999)).unwrap();
            let z = spec.reduce(&z_poly).unwrap();
            let mut acc = RingElement::unit(spec);
            let mut base = z;
            let mut e = 999u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&base).unwrap();
                }
                e >>= 1;
                if e > 0 {
                    base = base.mul(&base).unwrap();
                }
            }
            assert_eq!(direct, acc);
        }
    }

    #[test]
    fn grothendieck_rejects_z() {
        let g = groth(3, 2);
        assert_eq!(g.reduce(&Poly::var_z(1)).unwrap_err(), RingError::ZNotInContext);
    }

    #[test]
    fn reduce_rejects_wrong_arity() {
        let s = stable(3);
        assert!(matches!(
            s.reduce(&Poly::var_x(2, 1)).unwrap_err(),
            RingError::Poly(crate::poly::PolyError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let a = RingElement::unit(stable(3));
        let b = RingElement::unit(stable(4));
        assert_eq!(a.mul(&b).unwrap_err(), RingError::SpecMismatch);
        assert_eq!(a.add(&b).unwrap_err(), RingError::SpecMismatch);
    }

    #[test]
    fn label_validation() {
        let s = stable(3);
        assert!(RingElement::from_label(s, BasisLabel::Mono { y_exp: 0, z_exp: 0 }).is_err());
        assert!(RingElement::from_label(s, BasisLabel::StableF { y_exp: 3, f_index: 1 }).is_err());
        let r = radford(2, 2);
        assert!(RingElement::from_label(r, BasisLabel::Xgen { index: 2 }).is_err());
        assert!(RingElement::from_label(r, BasisLabel::Xgen { index: 1 }).is_ok());
    }

    #[test]
    fn high_x_powers_stay_integral() {
        // X2 X3 = X1^5 / 8 = 2 X1 at n=2, m=4
        let spec = radford(2, 4);
        let x2 = spec.reduce(&Poly::var_x(3, 2)).unwrap();
        let x3 = spec.reduce(&Poly::var_x(3, 3)).unwrap();
        assert_eq!(x2.mul(&x3).unwrap().to_string(), "2*X1");
    }

    fn spot_specs() -> Vec<RingSpec> {
        vec![radford(3, 3), groth(4, 3), stable(5), radford(2, 1)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms_random_elements(seed in 0usize..4, idx in 0usize..4,
                                        picks in proptest::collection::vec((-5i64..=5, 0usize..40), 0..18)) {
            let spec = spot_specs()[idx];
            let rank = spec.rank();
            let basis = spec.basis();
            let chunk = picks.len() / 3;
            let mk = |slice: &[(i64, usize)]| {
                RingElement::from_coeffs(
                    spec,
                    slice.iter().map(|&(c, i)| (basis[(i + seed) % rank], BigInt::from(c))),
                )
                .unwrap()
            };
            let a = mk(&picks[..chunk]);
            let b = mk(&picks[chunk..2 * chunk]);
            let c = mk(&picks[2 * chunk..]);
            let one = RingElement::unit(spec);
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.mul(&one).unwrap(), a);
        }

        #[test]
        fn confluence_smoke(idx in 0usize..3, e in arb_small_poly(false), f in arb_small_poly(false)) {
            let spec = [radford(3, 3), stable(5), radford(2, 1)][idx];
            let p = e.with_arity(spec.arity());
            let q = f.with_arity(spec.arity());
            let lhs = spec.reduce(&(&p * &q)).unwrap();
            let rhs = spec.reduce(&p).unwrap().mul(&spec.reduce(&q).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn confluence_smoke_grothendieck(e in arb_small_poly(true), f in arb_small_poly(true)) {
            let spec = groth(4, 3);
            let p = e.with_arity(spec.arity());
            let q = f.with_arity(spec.arity());
            let lhs = spec.reduce(&(&p * &q)).unwrap();
            let rhs = spec.reduce(&p).unwrap().mul(&spec.reduce(&q).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    // Y,Z-only random polynomials; the Grothendieck context needs z = 0.
    fn arb_small_poly(y_only: bool) -> impl Strategy<Value = Poly> {
        let z_range = if y_only { 0u32..1 } else { 0u32..6 };
        proptest::collection::vec((0u32..6, z_range, -4i64..=4), 0..5).prop_map(|terms| {
            Poly::from_terms(
                0,
                terms.into_iter().map(|(y, z, c)| {
                    (Monomial::yz(y, z, 0), BigRational::from_integer(c.into()))
                }),
            )
        })
    }
}

//! Dickson polynomials of the second type.
//!
//! `F_1 = 1`, `F_2 = Z` and `F_k = Z*F_{k-1} - Y*F_{k-2}`; these are the
//! bivariate homogenisation of the Chebyshev polynomials of the second kind.
//! The module provides the recursion (memoized), the binomial closed form as
//! an independent route, the inverse expansion of `Z^j` over the `F_k`, and
//! the scalar evaluations `q_j = F_j(1, 2cos(pi/n))`.

use std::sync::{LazyLock, Mutex};

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::poly::Poly;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum DicksonError {
    #[error("Dickson index must be >= 1, got {0}")]
    IndexZero(u64),
    #[error("q_eval index out of range: need 1 <= j <= n, got n={n}, j={j}")]
    QIndexOutOfRange { n: u32, j: u32 },
    #[error("q_eval needs n >= 2, got {0}")]
    NTooSmall(u32),
}

/// Memoized table of `F_1, F_2, ...` in the variables `Y`, `Z` (arity 0).
///
/// Extension is race-free: the table only ever grows and entry `k` is always
/// the same polynomial regardless of which thread computes it.
pub struct DicksonCache {
    table: Mutex<Vec<Poly>>,
}

impl DicksonCache {
    pub fn new() -> Self {
        DicksonCache {
            table: Mutex::new(vec![Poly::one(0), Poly::var_z(0)]),
        }
    }

    /// Returns `F_k` for `k >= 1`.
    pub fn get(&self, k: u32) -> Result<Poly, DicksonError> {
        if k == 0 {
            return Err(DicksonError::IndexZero(0));
        }
        let mut table = self.table.lock().unwrap();
        let z = Poly::var_z(0);
        let y = Poly::var_y(0);
        while table.len() < k as usize {
            let next = &(&z * &table[table.len() - 1]) - &(&y * &table[table.len() - 2]);
            table.push(next);
        }
        Ok(table[k as usize - 1].clone())
    }
}

impl Default for DicksonCache {
    fn default() -> Self {
        Self::new()
    }
}

static CACHE: LazyLock<DicksonCache> = LazyLock::new(DicksonCache::new);

/// `F_k(Y, Z)` by the recursion, memoized in a process-wide cache.
pub fn dickson_f(k: u32) -> Result<Poly, DicksonError> {
    CACHE.get(k)
}

/// `F_k(Y, Z)` by the closed form
/// `sum_i (-1)^i C(k-1-i, i) Y^i Z^{k-1-2i}`, `0 <= i <= floor((k-1)/2)`.
pub fn dickson_closed(k: u32) -> Result<Poly, DicksonError> {
    if k == 0 {
        return Err(DicksonError::IndexZero(0));
    }
    let mut p = Poly::zero(0);
    let d = k - 1;
    for i in 0..=(d / 2) {
        let mut c = BigRational::from_integer(binomial(d - i, i));
        if i % 2 == 1 {
            c = -c;
        }
        let term = Poly::monomial(
            crate::poly::Monomial { y_exp: i, z_exp: d - 2 * i, x_exps: vec![] },
            c,
        );
        p = &p + &term;
    }
    Ok(p)
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    num::integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Expands `Z^j` over the Dickson basis:
/// `Z^j = sum_k C(j,k) (j+1-2k)/(j+1-k) Y^k F_{j+1-2k}`,
/// returned as pairs `(j+1-2k, c * Y^k)`. The rational coefficient is
/// provably integral; a non-integral value indicates an index-convention bug
/// and is treated as a hard error.
pub fn monomial_to_f_basis(j: u32) -> Vec<(u32, Poly)> {
    let mut out = Vec::with_capacity(j as usize / 2 + 1);
    for k in 0..=(j / 2) {
        let c = BigRational::new(
            binomial(j, k) * BigInt::from(j + 1 - 2 * k),
            BigInt::from(j + 1 - k),
        );
        assert!(
            c.is_integer(),
            "inverse Dickson coefficient C({j},{k})*({}/{}) is not an integer",
            j + 1 - 2 * k,
            j + 1 - k
        );
        let coeff_poly = Poly::monomial(
            crate::poly::Monomial { y_exp: k, z_exp: 0, x_exps: vec![] },
            c,
        );
        out.push((j + 1 - 2 * k, coeff_poly));
    }
    out
}

/// Integer coefficient list of the same expansion: `(f_index, y_power, coeff)`.
pub fn monomial_to_f_coeffs(j: u32) -> Vec<(u32, u32, BigInt)> {
    monomial_to_f_basis(j)
        .into_iter()
        .map(|(idx, poly)| {
            let (m, c) = poly.terms().next().expect("coefficient polynomial is nonzero");
            (idx, m.y_exp, c.numer().clone())
        })
        .collect()
}

/// `q_j = F_j(1, 2cos(pi/n))` by the scalar recursion
/// `q_1 = 1`, `q_2 = 2cos(pi/n)`, `q_j = q_2 q_{j-1} - q_{j-2}`.
///
/// For `1 <= j <= n-1` the values are strictly positive and `q_n` vanishes.
pub fn q_eval(n: u32, j: u32) -> Result<f64, DicksonError> {
    if n < 2 {
        return Err(DicksonError::NTooSmall(n));
    }
    if j < 1 || j > n {
        return Err(DicksonError::QIndexOutOfRange { n, j });
    }
    Ok(q_sequence(n)[j as usize - 1])
}

/// The whole sequence `q_1..q_n` for one `n`.
pub fn q_sequence(n: u32) -> Vec<f64> {
    assert!(n >= 2);
    let c = 2.0 * (std::f64::consts::PI / n as f64).cos();
    let mut q = Vec::with_capacity(n as usize);
    q.push(1.0);
    if n >= 2 {
        q.push(c);
    }
    for _ in 2..n {
        let len = q.len();
        q.push(c * q[len - 1] - q[len - 2]);
    }
    q.truncate(n as usize);
    q
}

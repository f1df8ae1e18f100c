//! Finite-rank based rings given by structure constants.
//!
//! A [`BasedRing`] is a free abelian group of finite rank with a
//! distinguished basis containing the unit and integer structure constants
//! `N_{ij}^k` (so `b_i b_j = sum_k N_{ij}^k b_k`). On top of the raw data the
//! module provides the unit-coefficient bilinear form `[x, y]` (coefficient
//! of the unit in `x y`), its Gram matrix and saturated radical lattices, the
//! duality involution read off from the unit coefficients, Frobenius-Perron
//! dimensions by power iteration, and the transitivity check for fusion
//! rings.

use std::collections::BTreeMap;

use num::BigInt;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::lattice;
use crate::presented::RingSpec;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum BasedRingError {
    #[error("unit index {unit} out of range for rank {rank}")]
    UnitOutOfRange { unit: usize, rank: usize },
    #[error("structure constant index out of range in entry ({i},{j}) -> ({k}, {n})")]
    IndexOutOfRange { i: usize, j: usize, k: usize, n: i64 },
    #[error("unit law fails: b_{unit} * b_{j} != b_{j} (or the transpose)")]
    UnitLaw { unit: usize, j: usize },
    #[error("associativity fails at basis triple ({i}, {j}, {k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("vector length {len} does not match ring rank {rank}")]
    RankMismatch { len: usize, rank: usize },
    #[error("negative structure constant N_{{{i},{j}}}^{{{k}}} = {n}: not a fusion ring")]
    NegativeConstant { i: usize, j: usize, k: usize, n: i64 },
    #[error("basis element {i} has no duality partner with unit coefficient 1")]
    NoDualityPartner { i: usize },
    #[error("duality candidate is not an involution: sigma^2({i}) = {back} != {i}")]
    NotInvolutive { i: usize, back: usize },
    #[error("no involution detected on this ring; run detect_involution first")]
    MissingInvolution,
    #[error("power iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("Frobenius-Perron dimension {value} of basis element {i} is below 1")]
    FpdimBelowOne { i: usize, value: f64 },
    #[error("structure constant overflows i64 at ({i},{j})")]
    ConstantOverflow { i: usize, j: usize },
    #[error(transparent)]
    Ring(#[from] crate::presented::RingError),
}

/// Gram matrix of the unit-coefficient form together with the saturated
/// integer radical lattices.
#[derive(Debug, Clone, PartialEq)]
pub struct FormReport {
    pub gram: Vec<Vec<i64>>,
    pub left_radical: Vec<Vec<BigInt>>,
    pub right_radical: Vec<Vec<BigInt>>,
    pub nondegenerate: bool,
}

/// Outcome of the fusion-ring transitivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityReport {
    pub transitive: bool,
    /// A pair `(i, j)` violating the condition, when one exists.
    pub witness: Option<(usize, usize)>,
}

const EXHAUSTIVE_ASSOC_RANK: usize = 64;
const ASSOC_SAMPLES: usize = 1000;
const FPDIM_MAX_ITERS: usize = 100_000;
const FPDIM_CONVERGENCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedRing {
    labels: Vec<String>,
    unit: usize,
    constants: BTreeMap<(usize, usize), Vec<(usize, i64)>>,
    involution: Option<Vec<usize>>,
}

impl BasedRing {
    /// Builds a based ring and validates the unit law and associativity
    /// (exhaustively up to rank 64, on 1000 deterministic random triples
    /// above that).
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        constants: BTreeMap<(usize, usize), Vec<(usize, i64)>>,
    ) -> Result<Self, BasedRingError> {
        let ring = Self::from_parts_unchecked(labels, unit, constants, None);
        ring.validate()?;
        Ok(ring)
    }

    /// Assembles the ring without validation; pair with [`BasedRing::validate`]
    /// or [`BasedRing::violations`] when the data is untrusted.
    pub fn from_parts_unchecked(
        labels: Vec<String>,
        unit: usize,
        mut constants: BTreeMap<(usize, usize), Vec<(usize, i64)>>,
        involution: Option<Vec<usize>>,
    ) -> Self {
        for row in constants.values_mut() {
            row.retain(|&(_, n)| n != 0);
            row.sort_unstable();
        }
        constants.retain(|_, row| !row.is_empty());
        BasedRing { labels, unit, constants, involution }
    }

    /// Structure constants of a presented ring, computed by multiplying all
    /// basis pairs and asserting integrality.
    pub fn from_presented(spec: &RingSpec) -> Result<Self, BasedRingError> {
        use crate::presented::RingElement;
        let basis = spec.basis();
        let elements: Vec<RingElement> = basis
            .iter()
            .map(|l| RingElement::from_label(*spec, *l).expect("basis label is valid"))
            .collect();
        let mut constants = BTreeMap::new();
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let prod = a.mul(b)?;
                let mut row = Vec::new();
                for (label, c) in prod.coeffs() {
                    let k = spec.index_of(label).expect("product stays in the basis");
                    let n = i64::try_from(c)
                        .map_err(|_| BasedRingError::ConstantOverflow { i, j })?;
                    row.push((k, n));
                }
                if !row.is_empty() {
                    constants.insert((i, j), row);
                }
            }
        }
        let labels = basis.iter().map(|l| l.to_string()).collect();
        BasedRing::new(labels, spec.unit_index(), constants)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn involution(&self) -> Option<&[usize]> {
        self.involution.as_deref()
    }

    /// Nonzero coefficients of `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        self.constants.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> i64 {
        self.product(i, j)
            .iter()
            .find(|&&(idx, _)| idx == k)
            .map_or(0, |&(_, n)| n)
    }

    /// All nonzero constants as `(i, j, k, N)`, ordered.
    pub fn constants(&self) -> Vec<(usize, usize, usize, i64)> {
        self.constants
            .iter()
            .flat_map(|(&(i, j), row)| row.iter().map(move |&(k, n)| (i, j, k, n)))
            .collect()
    }

    pub fn has_nonnegative_constants(&self) -> bool {
        self.constants
            .values()
            .all(|row| row.iter().all(|&(_, n)| n >= 0))
    }

    fn check_rank(&self, v: &[i64]) -> Result<(), BasedRingError> {
        if v.len() != self.rank() {
            return Err(BasedRingError::RankMismatch { len: v.len(), rank: self.rank() });
        }
        Ok(())
    }

    /// Coordinates of the product of two coordinate vectors.
    pub fn mul_vectors(&self, x: &[i64], y: &[i64]) -> Result<Vec<i64>, BasedRingError> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        let mut out = vec![0i64; self.rank()];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                for &(k, n) in self.product(i, j) {
                    out[k] += xi * yj * n;
                }
            }
        }
        Ok(out)
    }

    /// The unit-coefficient form: coefficient of the unit basis element in
    /// `x * y`.
    pub fn unit_coeff_form(&self, x: &[i64], y: &[i64]) -> Result<i64, BasedRingError> {
        Ok(self.mul_vectors(x, y)?[self.unit])
    }

    /// Gram matrix `G[i][j] = N_{ij}^{unit}`.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut g = vec![vec![0i64; r]; r];
        for (&(i, j), row) in &self.constants {
            for &(k, n) in row {
                if k == self.unit {
                    g[i][j] = n;
                }
            }
        }
        g
    }

    /// Gram matrix plus saturated left/right radical lattices of the form.
    pub fn gram_and_radicals(&self) -> FormReport {
        let gram = self.gram();
        let big: Vec<Vec<BigInt>> = gram
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let left_radical = lattice::left_kernel(&big);
        let right_radical = lattice::right_kernel(&big);
        let nondegenerate = left_radical.is_empty() && right_radical.is_empty();
        FormReport { gram, left_radical, right_radical, nondegenerate }
    }

    /// Reads the duality involution off the unit coefficients: for each `i`
    /// there must be exactly one `j` with `N_{ij}^{unit} != 0`, that constant
    /// must be 1, and the resulting map must square to the identity. The
    /// permutation is stored on the ring.
    pub fn detect_involution(&mut self) -> Result<Vec<usize>, BasedRingError> {
        let r = self.rank();
        let mut sigma = Vec::with_capacity(r);
        for i in 0..r {
            let mut candidate = None;
            for j in 0..r {
                let n = self.constant(i, j, self.unit);
                if n != 0 {
                    if candidate.is_some() || n != 1 {
                        return Err(BasedRingError::NoDualityPartner { i });
                    }
                    candidate = Some(j);
                }
            }
            sigma.push(candidate.ok_or(BasedRingError::NoDualityPartner { i })?);
        }
        for i in 0..r {
            let back = sigma[sigma[i]];
            if back != i {
                return Err(BasedRingError::NotInvolutive { i, back });
            }
        }
        self.involution = Some(sigma.clone());
        Ok(sigma)
    }

    /// Matrix of left multiplication by `b_i`: entry `[r][c]` is the
    /// coefficient of `b_r` in `b_i b_c`.
    pub fn left_mult_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut m = vec![vec![0i64; r]; r];
        for c in 0..r {
            for &(k, n) in self.product(i, c) {
                m[k][c] = n;
            }
        }
        m
    }

    /// Frobenius-Perron dimension of every basis element: the dominant
    /// eigenvalue of the left-multiplication matrix, computed by power
    /// iteration on `M_i + I` (the shift defeats periodic nonnegative
    /// matrices) with the all-ones start vector, then shifted back by 1.
    pub fn fpdim(&self, tol: f64) -> Result<Vec<f64>, BasedRingError> {
        for (&(i, j), row) in &self.constants {
            for &(k, n) in row {
                if n < 0 {
                    return Err(BasedRingError::NegativeConstant { i, j, k, n });
                }
            }
        }
        let values: Result<Vec<f64>, BasedRingError> = (0..self.rank())
            .into_par_iter()
            .map(|i| self.fpdim_single(i))
            .collect();
        let values = values?;
        for (i, &v) in values.iter().enumerate() {
            if v < 1.0 - tol {
                return Err(BasedRingError::FpdimBelowOne { i, value: v });
            }
        }
        Ok(values)
    }

    fn fpdim_single(&self, i: usize) -> Result<f64, BasedRingError> {
        let r = self.rank();
        let m = self.left_mult_matrix(i);
        let mut v = vec![1.0f64; r];
        let mut rayleigh = f64::NAN;
        for _ in 0..FPDIM_MAX_ITERS {
            // w = (M + I) v
            let mut w = v.clone();
            for (row, wr) in w.iter_mut().enumerate() {
                for (col, &vc) in v.iter().enumerate() {
                    if m[row][col] != 0 {
                        *wr += m[row][col] as f64 * vc;
                    }
                }
            }
            let num: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
            let den: f64 = v.iter().map(|a| a * a).sum();
            let next = num / den;
            let norm = w.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
            if norm == 0.0 {
                return Ok(-1.0); // M + I annihilates v: dominant eigenvalue shifted is 0
            }
            for x in &mut w {
                *x /= norm;
            }
            v = w;
            if (next - rayleigh).abs() < FPDIM_CONVERGENCE {
                return Ok(next - 1.0);
            }
            rayleigh = next;
        }
        Err(BasedRingError::NonConvergence { iterations: FPDIM_MAX_ITERS })
    }

    /// Transitivity of a fusion ring: for all `i, j` there are `k, l` with
    /// `N_{jk}^i > 0` and `N_{lj}^i > 0`.
    pub fn check_transitive(&self) -> TransitivityReport {
        let r = self.rank();
        let mut right_reach = vec![vec![false; r]; r]; // [j][i]: some b_j b_k contains b_i
        let mut left_reach = vec![vec![false; r]; r]; // [j][i]: some b_l b_j contains b_i
        for (&(a, b), row) in &self.constants {
            for &(k, n) in row {
                if n > 0 {
                    right_reach[a][k] = true;
                    left_reach[b][k] = true;
                }
            }
        }
        for j in 0..r {
            for i in 0..r {
                if !right_reach[j][i] || !left_reach[j][i] {
                    return TransitivityReport { transitive: false, witness: Some((i, j)) };
                }
            }
        }
        TransitivityReport { transitive: true, witness: None }
    }

    /// First violation found, as an error.
    pub fn validate(&self) -> Result<(), BasedRingError> {
        match self.violations(true).into_iter().next() {
            None => Ok(()),
            Some((err, _)) => Err(err),
        }
    }

    /// Every violation of the based-ring axioms found, with a rendered
    /// description. `stop_early` bails at the first one.
    pub fn violations(&self, stop_early: bool) -> Vec<(BasedRingError, String)> {
        let mut out: Vec<(BasedRingError, String)> = Vec::new();
        let r = self.rank();
        fn push(out: &mut Vec<(BasedRingError, String)>, e: BasedRingError) {
            let msg = e.to_string();
            out.push((e, msg));
        }
        if self.unit >= r {
            push(&mut out, BasedRingError::UnitOutOfRange { unit: self.unit, rank: r });
            return out;
        }
        for (&(i, j), row) in &self.constants {
            for &(k, n) in row {
                if i >= r || j >= r || k >= r {
                    push(&mut out, BasedRingError::IndexOutOfRange { i, j, k, n });
                    if stop_early {
                        return out;
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for j in 0..r {
            let left_ok = self.product(self.unit, j) == [(j, 1)];
            let right_ok = self.product(j, self.unit) == [(j, 1)];
            if !left_ok || !right_ok {
                push(&mut out, BasedRingError::UnitLaw { unit: self.unit, j });
                if stop_early {
                    return out;
                }
            }
        }
        // Associativity, componentwise in the last index: exhaustive triples
        // up to rank 64, deterministic random sample above.
        let check_triple = |out: &mut Vec<(BasedRingError, String)>,
                                i: usize,
                                j: usize,
                                k: usize|
         -> bool {
            let mut lhs = vec![0i64; r];
            for &(t, n1) in self.product(i, j) {
                for &(l, n2) in self.product(t, k) {
                    lhs[l] += n1 * n2;
                }
            }
            let mut rhs = vec![0i64; r];
            for &(t, n1) in self.product(j, k) {
                for &(l, n2) in self.product(i, t) {
                    rhs[l] += n1 * n2;
                }
            }
            if lhs != rhs {
                push(out, BasedRingError::Associativity { i, j, k });
                return false;
            }
            true
        };
        if r <= EXHAUSTIVE_ASSOC_RANK {
            'outer: for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        if !check_triple(&mut out, i, j, k) && stop_early {
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_ba5e);
            for _ in 0..ASSOC_SAMPLES {
                let i = rng.gen_range(0..r);
                let j = rng.gen_range(0..r);
                let k = rng.gen_range(0..r);
                if !check_triple(&mut out, i, j, k) && stop_early {
                    break;
                }
            }
        }
        out
    }
}

/// Convenience: structure constants of a presented ring.
pub fn based_from_presented(spec: &RingSpec) -> Result<BasedRing, BasedRingError> {
    BasedRing::from_presented(spec)
}

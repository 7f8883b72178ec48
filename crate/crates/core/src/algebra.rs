//! Exact linear algebra over a prime field and over the rationals, plus the
//! deterministic random source every randomized routine draws from.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

/// 2^61 - 1, the default modulus for randomized rank evaluations.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit in 62 bits")]
    ModulusTooLarge(u64),
    #[error("{0} entries do not fill a {1}x{2} matrix")]
    ShapeMismatch(usize, usize, usize),
}

/// A field given as a context object; elements carry no reference back to it.
/// All operations are exact.
pub trait Field: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// None exactly for the zero element.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Z/pZ for a prime p < 2^62. Elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self, AlgebraError> {
        if modulus >= 1 << 62 {
            return Err(AlgebraError::ModulusTooLarge(modulus));
        }
        if !is_prime_u64(modulus) {
            return Err(AlgebraError::NotPrime(modulus));
        }
        Ok(PrimeField { modulus })
    }

    pub fn mersenne61() -> Self {
        PrimeField { modulus: DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn element_from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, self.modulus);
            }
            base = mul_mod(base, base, self.modulus);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.modulus)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.modulus - 2))
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

/// Deterministic Miller-Rabin, valid for all u64 inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = {
            let f = PrimeField { modulus: n };
            f.pow(a % n, d)
        };
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The rational numbers with arbitrary-precision arithmetic. `BigRational`
/// keeps every value in lowest terms automatically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

pub fn rational_from_i64(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Dense matrix over a field context, stored row-major.
#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, entries }
    }

    pub fn from_entries(
        field: F,
        rows: usize,
        cols: usize,
        entries: Vec<F::Elem>,
    ) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::ShapeMismatch(entries.len(), rows, cols));
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: F::Elem) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn without_row(&self, row: usize) -> Matrix<F> {
        assert!(row < self.rows);
        let mut entries = Vec::with_capacity((self.rows - 1) * self.cols);
        for r in 0..self.rows {
            if r != row {
                entries.extend_from_slice(&self.entries[r * self.cols..(r + 1) * self.cols]);
            }
        }
        Matrix { field: self.field.clone(), rows: self.rows - 1, cols: self.cols, entries }
    }

    pub fn mul_vector(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(x.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (c, xv) in x.iter().enumerate() {
                    acc = f.add(&acc, &f.mul(self.get(r, c), xv));
                }
                acc
            })
            .collect()
    }

    /// Rank by Gaussian elimination with exact arithmetic.
    pub fn rank(&self) -> usize {
        let f = self.field.clone();
        let cols = self.cols;
        let mut work = self.entries.clone();
        let mut pivots = 0;
        for col in 0..cols {
            if pivots == self.rows {
                break;
            }
            let Some(pr) = (pivots..self.rows).find(|&r| !f.is_zero(&work[r * cols + col])) else {
                continue;
            };
            if pr != pivots {
                for c in 0..cols {
                    work.swap(pr * cols + c, pivots * cols + c);
                }
            }
            let inv = f.inv(&work[pivots * cols + col]).expect("pivot is nonzero");
            for r in pivots + 1..self.rows {
                let factor = f.mul(&work[r * cols + col], &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                work[r * cols + col] = f.zero();
                for c in col + 1..cols {
                    let delta = f.mul(&factor, &work[pivots * cols + c]);
                    work[r * cols + c] = f.sub(&work[r * cols + c], &delta);
                }
            }
            pivots += 1;
        }
        pivots
    }

    /// A basis of the right nullspace. Each vector `x` satisfies `M x = 0`
    /// exactly; the list is empty iff the columns are independent.
    pub fn nullspace_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut work = self.entries.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !f.is_zero(&work[r * cols + col])) else {
                continue;
            };
            if pr != row {
                for c in 0..cols {
                    work.swap(pr * cols + c, row * cols + c);
                }
            }
            let inv = f.inv(&work[row * cols + col]).expect("pivot is nonzero");
            for c in col..cols {
                work[row * cols + c] = f.mul(&work[row * cols + c], &inv);
            }
            for r in 0..self.rows {
                if r == row || f.is_zero(&work[r * cols + col]) {
                    continue;
                }
                let factor = work[r * cols + col].clone();
                for c in col..cols {
                    let delta = f.mul(&factor, &work[row * cols + c]);
                    work[r * cols + c] = f.sub(&work[r * cols + c], &delta);
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        let pivot_of_col: Vec<Option<usize>> = {
            let mut map = vec![None; cols];
            for (i, &c) in pivot_cols.iter().enumerate() {
                map[c] = Some(i);
            }
            map
        };
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![f.zero(); cols];
            x[free] = f.one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = f.neg(&work[i * cols + free]);
            }
            basis.push(x);
        }
        basis
    }
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

/// Seeded stream of randomness. Two sources built from the same seed produce
/// identical draws; everything randomized in this crate routes through one.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha12Rng,
}

impl RandomSource {
    pub fn from_seed(seed: u64) -> Self {
        RandomSource { seed, rng: ChaCha12Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw from `0..bound` by rejection sampling.
    pub fn uniform_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        if bound == 1 {
            return 0;
        }
        let bits = 64 - (bound - 1).leading_zeros();
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        loop {
            let x = self.next_u64() & mask;
            if x < bound {
                return x;
            }
        }
    }

    pub fn uniform_isize(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + self.uniform_below(span) as i64
    }

    pub fn field_element(&mut self, field: &PrimeField) -> u64 {
        self.uniform_below(field.modulus())
    }

    /// `count` independent uniform field elements.
    pub fn random_assignment(&mut self, field: &PrimeField, count: usize) -> Vec<u64> {
        (0..count).map(|_| self.field_element(field)).collect()
    }

    pub fn rational_integer(&mut self, lo: i64, hi: i64) -> BigRational {
        rational_from_i64(self.uniform_isize(lo, hi))
    }
}

pub fn rational_is_integer(x: &BigRational) -> bool {
    x.denom().abs().is_one()
}

//! Bernoulli numbers and polynomials over the rationals, and the dense
//! polynomial type they live in.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial, format_rational, integer, Rational};

/// Dense univariate polynomial with rational coefficients, `coeffs[i]` being
/// the coefficient of `x^i`.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector. Equality is therefore structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c x^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// Builds from ascending coefficients, stripping trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * integer(i))
                .collect(),
        )
    }

    /// The antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / integer(i + 1)),
        );
        Self::new(coeffs)
    }

    /// `∫_lo^hi p(z) dz`.
    pub fn integral(&self, lo: &Rational, hi: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }

    /// The polynomial `x ↦ p(a + b x)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let inner = Self::new(vec![a.clone(), b.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &inner) + &Self::constant(c.clone())
        })
    }

    /// Coefficients rendered in the `p/q` wire format, lowest degree first.
    /// The zero polynomial renders as a single `0`.
    pub fn coefficient_strings(&self) -> Vec<String> {
        if self.is_zero() {
            return vec!["0".to_string()];
        }
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coefficient_strings().join(", "))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Polynomial::new(coeffs)
    }
}

/// Grow-only table of Bernoulli numbers `B_0, B_1, ...` with `B_1 = -1/2`,
/// and of the polynomials built from them.
///
/// Reads take a shared lock; a miss takes the write lock and extends the
/// table. Stored entries are never modified, so a cache can be shared freely
/// between threads.
#[derive(Debug)]
pub struct BernoulliCache {
    values: RwLock<Vec<Rational>>,
    polys: RwLock<Vec<Polynomial>>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            values: RwLock::new(vec![Rational::one()]),
            polys: RwLock::new(Vec::new()),
        }
    }

    /// A cache already holding `B_0..=B_n`.
    pub fn with_max(n: usize) -> Self {
        let cache = Self::new();
        cache.ensure(n);
        cache
    }

    /// Number of stored entries.
    pub fn len(&self) -> usize {
        self.values.read().expect("bernoulli cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `B_k`.
    pub fn number(&self, k: usize) -> Rational {
        if let Some(b) = self.values.read().expect("bernoulli cache poisoned").get(k) {
            return b.clone();
        }
        self.ensure(k);
        self.values.read().expect("bernoulli cache poisoned")[k].clone()
    }

    /// `B_0..=B_n` as one snapshot.
    pub fn numbers(&self, n: usize) -> Vec<Rational> {
        self.ensure(n);
        self.values.read().expect("bernoulli cache poisoned")[..=n].to_vec()
    }

    /// `B_k(x) = Σ_j C(k, j) B_{k-j} x^j`.
    pub fn polynomial(&self, k: usize) -> Polynomial {
        if let Some(p) = self.polys.read().expect("bernoulli cache poisoned").get(k) {
            return p.clone();
        }
        let numbers = self.numbers(k);
        let mut polys = self.polys.write().expect("bernoulli cache poisoned");
        while polys.len() <= k {
            let m = polys.len();
            polys.push(Polynomial::new(
                (0..=m)
                    .map(|j| &numbers[m - j] * integer(binomial(m as i64, j as i64)))
                    .collect(),
            ));
        }
        polys[k].clone()
    }

    fn ensure(&self, n: usize) {
        if self.len() > n {
            return;
        }
        let mut values = self.values.write().expect("bernoulli cache poisoned");
        // B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j
        while values.len() <= n {
            let m = values.len();
            let mut row = BigInt::one(); // C(m+1, 0)
            let mut acc = Rational::zero();
            for (j, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * Rational::from_integer(row.clone());
                }
                row = row * (m + 1 - j) / (j + 1);
            }
            values.push(-acc / integer(m + 1));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn poly(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&(n, d)| rational(n, d)).collect())
    }

    // Independent check: B_n from Σ_{j=0}^{n} C(n+1, j) B_j = 0, solved in
    // plain i128 fractions without the cache or BigRational.
    fn reference_bernoulli(n: usize) -> (i128, i128) {
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        fn binom(n: i128, k: i128) -> i128 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        let mut bs: Vec<(i128, i128)> = vec![(1, 1)];
        for m in 1..=n {
            let (mut num, mut den) = (0i128, 1i128);
            for (j, &(bn, bd)) in bs.iter().enumerate() {
                let c = binom(m as i128 + 1, j as i128);
                num = num * bd + c * bn * den;
                den *= bd;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
            let (mut num, mut den) = (-num, den * (m as i128 + 1));
            let g = gcd(num, den);
            num /= g;
            den /= g;
            bs.push((num, den));
        }
        bs[n]
    }

    #[test]
    fn bernoulli_number_examples() {
        let cache = BernoulliCache::new();
        assert_eq!(cache.number(0), rational(1, 1));
        assert_eq!(cache.number(1), rational(-1, 2));
        assert_eq!(cache.number(12), rational(-691, 2730));
        assert_eq!(reference_bernoulli(12), (-691, 2730));
        for n in 0..=20 {
            let (num, den) = reference_bernoulli(n);
            assert_eq!(
                cache.number(n),
                Rational::new(BigInt::from(num), BigInt::from(den)),
                "B_{n}"
            );
        }
    }

    #[test]
    fn odd_bernoulli_numbers_vanish() {
        let cache = BernoulliCache::new();
        for k in 1..=10 {
            assert!(cache.number(2 * k + 1).is_zero(), "B_{}", 2 * k + 1);
        }
    }

    #[test]
    fn even_bernoulli_numbers_alternate_in_sign() {
        let cache = BernoulliCache::new();
        for k in 1..=15 {
            let b = cache.number(2 * k);
            let positive = b > Rational::zero();
            assert_eq!(positive, k % 2 == 1, "B_{}", 2 * k);
        }
    }

    #[test]
    fn extension_keeps_existing_entries() {
        let cache = BernoulliCache::with_max(8);
        let before = cache.numbers(8);
        cache.number(30);
        assert_eq!(cache.numbers(8), before);
        assert_eq!(cache.len(), 31);
    }

    #[test]
    fn shared_cache_across_threads() {
        let cache = BernoulliCache::new();
        let results: Vec<Rational> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..4)
                .map(|t| {
                    let cache = &cache;
                    s.spawn(move || cache.number(10 + 4 * t))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let fresh = BernoulliCache::new();
        for (t, value) in results.iter().enumerate() {
            assert_eq!(value, &fresh.number(10 + 4 * t));
        }
    }

    #[test]
    fn bernoulli_polynomial_examples() {
        let cache = BernoulliCache::new();
        assert_eq!(cache.polynomial(0), poly(&[(1, 1)]));
        assert_eq!(cache.polynomial(1), poly(&[(-1, 2), (1, 1)]));
        assert_eq!(cache.polynomial(2), poly(&[(1, 6), (-1, 1), (1, 1)]));
        assert_eq!(
            cache.polynomial(3),
            poly(&[(0, 1), (1, 2), (-3, 2), (1, 1)])
        );
        for k in 0..=15 {
            let p = cache.polynomial(k);
            assert_eq!(p.degree(), Some(k));
            assert_eq!(p.coeffs().last(), Some(&Rational::one()));
        }
    }

    #[test]
    fn eval_examples() {
        let one = rational(1, 1);
        assert_eq!(poly(&[(-1, 2), (1, 1)]).eval(&one), rational(1, 2));
        assert_eq!(poly(&[(1, 1)]).eval(&rational(7, 3)), one);
        assert!(poly(&[(0, 1), (1, 2), (-3, 2), (1, 1)])
            .eval(&one)
            .is_zero());
        assert!(Polynomial::zero().eval(&one).is_zero());
    }

    #[test]
    fn mul_examples() {
        let half = poly(&[(-1, 2), (1, 1)]);
        assert_eq!(&half * &half, poly(&[(1, 4), (-1, 1), (1, 1)]));
        assert_eq!(&half * &Polynomial::one(), half);
        assert_eq!(
            &Polynomial::x() * &Polynomial::x(),
            poly(&[(0, 1), (0, 1), (1, 1)])
        );
        assert_eq!(&half * &Polynomial::zero(), Polynomial::zero());
        let cache = BernoulliCache::new();
        let product = &cache.polynomial(3) * &cache.polynomial(4);
        assert_eq!(product.degree(), Some(7));
    }

    #[test]
    fn derivative_examples() {
        let cache = BernoulliCache::new();
        assert_eq!(
            cache.polynomial(3).derivative(),
            cache.polynomial(2).scale(&rational(3, 1))
        );
        assert!(poly(&[(5, 3)]).derivative().is_zero());
        assert_eq!(
            poly(&[(0, 1), (0, 1), (1, 1)]).derivative(),
            poly(&[(0, 1), (2, 1)])
        );
    }

    #[test]
    fn integral_examples() {
        let cache = BernoulliCache::new();
        let zero = rational(0, 1);
        let one = rational(1, 1);
        assert!(cache.polynomial(2).integral(&zero, &one).is_zero());
        let x0 = rational(-9, 4);
        assert_eq!(Polynomial::one().integral(&zero, &x0), x0);
        assert_eq!(
            poly(&[(1, 4), (-1, 1), (1, 1)]).integral(&zero, &one),
            rational(1, 12)
        );
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(Polynomial::one().antiderivative(), poly(&[(0, 1), (1, 1)]));
        assert_eq!(
            poly(&[(0, 1), (2, 1)]).antiderivative(),
            poly(&[(0, 1), (0, 1), (1, 1)])
        );
        assert_eq!(
            poly(&[(1, 4), (-1, 1), (1, 1)]).antiderivative(),
            poly(&[(0, 1), (1, 4), (-1, 2), (1, 3)])
        );
        assert!(Polynomial::zero().antiderivative().is_zero());
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let p = poly(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(p.coeffs().len(), 1);
        assert_eq!(p, Polynomial::one());
        assert_eq!(poly(&[(0, 1)]), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(&Polynomial::x() - &Polynomial::x(), Polynomial::zero());
    }

    #[test]
    fn compose_affine_shifts_and_reflects() {
        let p = poly(&[(1, 1), (2, 1), (3, 1)]); // 1 + 2x + 3x^2
                                                 // p(1 - x) = 6 - 8x + 3x^2
        assert_eq!(
            p.compose_affine(&rational(1, 1), &rational(-1, 1)),
            poly(&[(6, 1), (-8, 1), (3, 1)])
        );
        // p(x + 1) = 6 + 8x + 3x^2
        assert_eq!(
            p.compose_affine(&rational(1, 1), &rational(1, 1)),
            poly(&[(6, 1), (8, 1), (3, 1)])
        );
    }

    #[test]
    fn coefficient_rendering() {
        let cache = BernoulliCache::new();
        assert_eq!(cache.polynomial(2).to_string(), "1/6, -1, 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        // B_12(0) = B_12
        assert_eq!(cache.polynomial(12).coeff(0), cache.number(12));
    }
}

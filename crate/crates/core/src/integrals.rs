//! Integrals `I_{k_1..k_r}(x) = ∫_0^x B_{k_1}(z)···B_{k_r}(z) dz` and their
//! scaled forms `Ĩ = I / (k_1!···k_r!)`.
//!
//! Notation used in comments: `B̃_m = B_m / m!` (zero for negative `m`), and
//! for a tuple `m` the boundary term
//! `C̃_m(x) = Π B̃_{m_j}(x) - Π B̃_{m_j}`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bernoulli::{BernoulliCache, Polynomial};
use crate::error::{Error, Result};
use crate::exact::{
    binomial, factorial, integer, multinomial, sign, Compositions, MultiIndex, Rational,
};

/// Arguments of one integral: nonnegative indices and the upper limit `x`
/// of `∫_0^x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralSpec {
    ks: MultiIndex,
    upper: Rational,
}

impl IntegralSpec {
    pub fn new(ks: impl Into<MultiIndex>, upper: Rational) -> Result<Self> {
        let ks = ks.into();
        if ks.is_empty() {
            return Err(Error::EmptyIndices);
        }
        if let Some(&k) = ks.iter().find(|&&k| k < 0) {
            return Err(Error::NegativeIndex(k));
        }
        Ok(IntegralSpec { ks, upper })
    }

    /// The integral over `[0, 1]`.
    pub fn at_one(ks: impl Into<MultiIndex>) -> Result<Self> {
        Self::new(ks, Rational::one())
    }

    pub fn ks(&self) -> &MultiIndex {
        &self.ks
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    /// Number of factors `r`.
    pub fn arity(&self) -> usize {
        self.ks.len()
    }

    /// `k_1!···k_r!`, the factor between `I` and `Ĩ`.
    pub fn factorial_product(&self) -> BigInt {
        factorial_product(self.ks.as_slice())
    }
}

fn factorial_product(ks: &[i64]) -> BigInt {
    ks.iter()
        .map(|&k| factorial(k).expect("indices validated nonnegative"))
        .product()
}

/// A value that is either `I` (or `C`) or its scaled form `Ĩ` (or `C̃`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledValue {
    pub value: Rational,
    pub scaled: bool,
}

impl ScaledValue {
    pub fn new(value: Rational, scaled: bool) -> Self {
        ScaledValue { value, scaled }
    }

    /// The unscaled value for indices `ks`.
    pub fn unscaled(&self, ks: &MultiIndex) -> Rational {
        if self.scaled {
            &self.value * integer(factorial_product(ks.as_slice()))
        } else {
            self.value.clone()
        }
    }

    /// The scaled value for indices `ks`.
    pub fn scaled(&self, ks: &MultiIndex) -> Rational {
        if self.scaled {
            self.value.clone()
        } else {
            &self.value / integer(factorial_product(ks.as_slice()))
        }
    }
}

fn factorial_rational(n: i64) -> Rational {
    integer(factorial(n).expect("nonnegative"))
}

/// `B̃_m(x)` for `m = 0..=n`.
fn scaled_bernoulli_at(x: &Rational, n: usize, cache: &BernoulliCache) -> Vec<Rational> {
    (0..=n)
        .map(|m| cache.polynomial(m).eval(x) / factorial_rational(m as i64))
        .collect()
}

/// `B̃_m(p) = numer[m] / denom` for `m = 0..=n`, over one common denominator
/// so that boundary sums at a point run in integer arithmetic.
struct PointTable {
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl PointTable {
    fn new(x: &Rational, n: usize, cache: &BernoulliCache) -> Self {
        let numbers = cache.numbers(n);
        let lcm = numbers
            .iter()
            .fold(BigInt::one(), |acc, b| acc.lcm(b.denom()));
        let bernoulli: Vec<BigInt> = numbers
            .iter()
            .map(|b| b.numer() * (&lcm / b.denom()))
            .collect();
        let (p, q) = (x.numer(), x.denom());
        let mut p_pow = vec![BigInt::one()];
        let mut q_pow = vec![BigInt::one()];
        for j in 1..=n {
            p_pow.push(&p_pow[j - 1] * p);
            q_pow.push(&q_pow[j - 1] * q);
        }
        // n!/m!, so that B̃_m(p) · lcm · q^n · n! is an integer
        let mut falling = vec![BigInt::one(); n + 1];
        for m in (0..n).rev() {
            falling[m] = &falling[m + 1] * (m + 1);
        }
        let mut row = vec![BigInt::one()];
        let mut numer = Vec::with_capacity(n + 1);
        for m in 0..=n {
            if m > 0 {
                // Pascal row m from row m-1
                let mut next = vec![BigInt::one(); m + 1];
                for j in 1..m {
                    next[j] = &row[j - 1] + &row[j];
                }
                row = next;
            }
            let mut acc = BigInt::zero();
            for j in 0..=m {
                let b = &bernoulli[m - j];
                if !b.is_zero() && !p_pow[j].is_zero() {
                    acc += b * &row[j] * &p_pow[j] * &q_pow[n - j];
                }
            }
            numer.push(acc * &falling[m]);
        }
        PointTable {
            numer,
            denom: lcm * &q_pow[n] * &falling[0],
        }
    }

    fn get(&self, m: i64) -> Option<&BigInt> {
        usize::try_from(m)
            .ok()
            .and_then(|m| self.numer.get(m))
            .filter(|v| !v.is_zero())
    }
}

/// [`boundary_sum`] at a point, in integers: with `A = a_max` every row entry
/// `B̃_{k-i} / i!` is stored as `numer[k-i] · A!/i!`, and the common factor
/// `denom^r · A!^(r-1)` is divided out once at the end.
fn boundary_value(ks: &[i64], a_max: i64, table: &PointTable) -> Rational {
    let (last, head) = ks.split_last().expect("at least one index");
    let a_max = a_max.min(head.iter().sum());
    if a_max < 0 {
        return Rational::zero();
    }
    let len = a_max as usize + 1;
    let mut fact = vec![BigInt::one(); len];
    for i in 1..len {
        fact[i] = &fact[i - 1] * i;
    }
    let top = &fact[len - 1];
    let mut series = vec![BigInt::zero(); len];
    series[0] = BigInt::one();
    for &k in head {
        let row: Vec<BigInt> = (0..=k.min(a_max))
            .map(|i| match table.get(k - i) {
                Some(v) => v * (top / &fact[i as usize]),
                None => BigInt::zero(),
            })
            .collect();
        let mut next = vec![BigInt::zero(); len];
        for (i, x) in series.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in row.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    next[i + j] += x * y;
                }
            }
        }
        series = next;
    }
    let mut total = BigInt::zero();
    for (a, coeff) in series.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        if let Some(tail) = table.get(last + a as i64 + 1) {
            let term = coeff * tail * &fact[a];
            if a % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    let denom =
        num_traits::pow(table.denom.clone(), ks.len()) * num_traits::pow(top.clone(), head.len());
    Rational::new(total, denom)
}

/// `boundary_value` at `x` minus the same at `0`.
fn boundary_difference(
    ks: &[i64],
    a_max: i64,
    upper: &Rational,
    cache: &BernoulliCache,
) -> Rational {
    let n = table_size(ks) - 1;
    let at_upper = PointTable::new(upper, n, cache);
    let at_zero = PointTable::new(&Rational::zero(), n, cache);
    boundary_value(ks, a_max, &at_upper) - boundary_value(ks, a_max, &at_zero)
}

/// `B̃_m` for `m = 0..=n`.
fn scaled_bernoulli_numbers(n: usize, cache: &BernoulliCache) -> Vec<Rational> {
    cache
        .numbers(n)
        .into_iter()
        .enumerate()
        .map(|(m, b)| b / factorial_rational(m as i64))
        .collect()
}

/// `B̃_m(x)` for `m = 0..=n` as polynomials.
fn scaled_bernoulli_polys(n: usize, cache: &BernoulliCache) -> Vec<Polynomial> {
    (0..=n)
        .map(|m| {
            let inv = Rational::one() / factorial_rational(m as i64);
            cache.polynomial(m).scale(&inv)
        })
        .collect()
}

fn lookup<T: Term>(table: &[T], m: i64) -> T {
    if m < 0 {
        T::nothing()
    } else {
        table[m as usize].clone()
    }
}

/// The two coefficient domains the boundary sums are evaluated in: plain
/// rationals (a value of `x`) and polynomials (symbolic `x`).
trait Term: Clone {
    fn nothing() -> Self;
    fn unit() -> Self;
    fn vanishes(&self) -> bool;
    fn times(&self, other: &Self) -> Self;
    fn times_rational(&self, factor: &Rational) -> Self;
    fn accumulate(&mut self, other: &Self);
}

impl Term for Rational {
    fn nothing() -> Self {
        Zero::zero()
    }

    fn unit() -> Self {
        One::one()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn times_rational(&self, factor: &Rational) -> Self {
        self * factor
    }

    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
}

impl Term for Polynomial {
    fn nothing() -> Self {
        Polynomial::zero()
    }

    fn unit() -> Self {
        Polynomial::one()
    }

    fn vanishes(&self) -> bool {
        Polynomial::is_zero(self)
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn times_rational(&self, factor: &Rational) -> Self {
        self.scale(factor)
    }

    fn accumulate(&mut self, other: &Self) {
        *self = &*self + other;
    }
}

/// `Σ_{a=0}^{a_max} (-1)^a Σ_{i_1+..+i_{r-1}=a} mult(a; i) Π_{j<r} B̃_{k_j-i_j}(p) · B̃_{k_r+a+1}(p)`
/// at one point `p`, given `table[m] = B̃_m(p)`.
///
/// The boundary sum of the closed form is this quantity at `x` minus the same
/// at `0`. Writing `mult(a; i) = a! / Π i_j!`, the inner sum over compositions
/// is `a!` times the coefficient of `u^a` in `Π_j Σ_i B̃_{k_j-i}(p) u^i / i!`,
/// so it is read off one truncated series product. Parts `i_j > k_j` would
/// need a negative index and contribute nothing.
fn boundary_sum<T: Term>(ks: &[i64], a_max: i64, table: &[T]) -> T {
    let (last, head) = ks.split_last().expect("at least one index");
    let a_max = a_max.min(head.iter().sum()).max(-1);
    let len = (a_max + 1) as usize;
    let inv_fact: Vec<Rational> = (0..len as i64)
        .map(|i| Rational::one() / factorial_rational(i))
        .collect();

    let mut series: Vec<T> = vec![T::nothing(); len];
    if len > 0 {
        series[0] = T::unit();
    }
    for &k in head {
        let row: Vec<T> = (0..=k.min(a_max))
            .map(|i| lookup(table, k - i).times_rational(&inv_fact[i as usize]))
            .collect();
        series = truncated_product(&series, &row, len);
    }

    let mut total = T::nothing();
    for (a, coeff) in series.iter().enumerate() {
        if coeff.vanishes() {
            continue;
        }
        let tail = lookup(table, last + a as i64 + 1);
        if tail.vanishes() {
            continue;
        }
        let weight = integer(sign(a as i64)) * factorial_rational(a as i64);
        total.accumulate(&coeff.times(&tail).times_rational(&weight));
    }
    total
}

// Cauchy product of two coefficient lists, keeping the first `len` terms.
fn truncated_product<T: Term>(lhs: &[T], rhs: &[T], len: usize) -> Vec<T> {
    let mut out = vec![T::nothing(); len];
    for (i, x) in lhs.iter().enumerate() {
        if x.vanishes() {
            continue;
        }
        for (j, y) in rhs.iter().enumerate().take(len.saturating_sub(i)) {
            if !y.vanishes() {
                out[i + j].accumulate(&x.times(y));
            }
        }
    }
    out
}

/// `I_{ks}(upper)` by brute force: multiply the Bernoulli polynomials and
/// integrate termwise. Independent of every formula in this module.
pub fn oracle_integral(spec: &IntegralSpec, cache: &BernoulliCache) -> Rational {
    oracle_integral_poly(spec.ks(), cache).eval(spec.upper())
}

/// The polynomial `x ↦ I_{ks}(x)`.
pub fn oracle_integral_poly(ks: &MultiIndex, cache: &BernoulliCache) -> Polynomial {
    debug_assert!(ks.is_nonnegative());
    ks.iter()
        .fold(Polynomial::one(), |acc, &k| {
            &acc * &cache.polynomial(k as usize)
        })
        .antiderivative()
}

/// `C_{ks}(upper) = Π B_{k_j}(upper) - Π B_{k_j}`, or `C̃` when `scaled`.
pub fn c_term(
    ks: &MultiIndex,
    upper: &Rational,
    scaled: bool,
    cache: &BernoulliCache,
) -> Result<Rational> {
    if let Some(&k) = ks.iter().find(|&&k| k < 0) {
        return Err(Error::NegativeIndex(k));
    }
    let at_upper: Rational = ks
        .iter()
        .map(|&k| cache.polynomial(k as usize).eval(upper))
        .product();
    let at_zero: Rational = ks.iter().map(|&k| cache.number(k as usize)).product();
    let value = at_upper - at_zero;
    Ok(if scaled {
        value / integer(factorial_product(ks.as_slice()))
    } else {
        value
    })
}

fn table_size(ks: &[i64]) -> usize {
    ks.iter().sum::<i64>() as usize + 2
}

fn head_sum(ks: &[i64]) -> i64 {
    ks[..ks.len() - 1].iter().sum()
}

/// `Ĩ_{ks}(upper)` (or `I` when `scaled` is false) from the closed form: the
/// alternating sum over `a = 0..=k_1+..+k_{r-1}` and compositions
/// `i_1+..+i_{r-1} = a` of `mult(a; i) C̃_{k_1-i_1,..,k_{r-1}-i_{r-1},k_r+a+1}(upper)`.
///
/// For a single factor the sum degenerates to `C̃_{k+1}(upper)`.
pub fn closed_form_integral(spec: &IntegralSpec, scaled: bool, cache: &BernoulliCache) -> Rational {
    let ks = spec.ks().as_slice();
    let value = boundary_difference(ks, head_sum(ks), spec.upper(), cache);
    ScaledValue::new(value, true).with_scaling(scaled, spec.ks())
}

impl ScaledValue {
    fn with_scaling(self, scaled: bool, ks: &MultiIndex) -> Rational {
        if scaled {
            self.scaled(ks)
        } else {
            self.unscaled(ks)
        }
    }
}

/// The closed form assembled symbolically: `x ↦ I_{ks}(x)` as a polynomial.
pub fn closed_form_integral_poly(ks: &MultiIndex, cache: &BernoulliCache) -> Polynomial {
    let slice = ks.as_slice();
    let n = table_size(slice);
    let polys = scaled_bernoulli_polys(n, cache);
    let at_zero = scaled_bernoulli_numbers(n, cache);
    let a_max = head_sum(slice);
    let scaled = &boundary_sum(slice, a_max, &polys)
        - &Polynomial::constant(boundary_sum(slice, a_max, &at_zero));
    scaled.scale(&integer(factorial_product(slice)))
}

/// Result of the depth-`mu` recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceValue {
    /// `Ĩ_{ks}(upper)`.
    pub value: Rational,
    /// How many leftover integrals `Ĩ_{k_1-i_1,..,k_r+mu}` had all indices
    /// nonnegative and therefore had to be evaluated.
    pub residual_terms: usize,
}

/// `Ĩ_{ks}(upper)` from the depth-`mu` integration-by-parts recurrence: the
/// boundary sum for `a < mu` plus `(-1)^mu Σ_{i_1+..+i_{r-1}=mu} mult(mu; i)
/// Ĩ_{k_1-i_1,..,k_{r-1}-i_{r-1},k_r+mu}(upper)`.
///
/// Leftover integrals come from [`oracle_integral`], never from this
/// function, so agreement across `mu` is a real cross-check. Once
/// `mu > k_1+..+k_{r-1}` every leftover has a negative index and the sum is
/// empty.
pub fn recurrence_integral(
    spec: &IntegralSpec,
    mu: i64,
    cache: &BernoulliCache,
) -> Result<RecurrenceValue> {
    if mu < 1 {
        return Err(Error::InvalidDepth(mu));
    }
    let ks = spec.ks().as_slice();
    let boundary = boundary_difference(ks, mu - 1, spec.upper(), cache);

    let (last, head) = ks.split_last().expect("validated nonempty");
    let mut residual = Rational::zero();
    let mut residual_terms = 0;
    let mut walk = Compositions::bounded(mu, head.to_vec());
    while let Some(i) = walk.advance() {
        residual_terms += 1;
        let weight = multinomial(mu, &MultiIndex::from(i))?;
        let mut shifted: Vec<i64> = head.iter().zip(i).map(|(k, i)| k - i).collect();
        shifted.push(last + mu);
        let inner = IntegralSpec::new(shifted, spec.upper().clone())?;
        let scaled = oracle_integral(&inner, cache) / integer(inner.factorial_product());
        residual += scaled * integer(weight);
    }
    Ok(RecurrenceValue {
        value: boundary + integer(sign(mu)) * residual,
        residual_terms,
    })
}

/// `∫_0^upper B_k B_m` from the binomial-weighted two-factor formula
/// `k!m!/(k+m+1)! Σ_{j=0}^{k} (-1)^j C(k+m+1, k-j) C_{k-j, m+j+1}(upper)`.
pub fn two_factor_formula(k: u32, m: u32, upper: &Rational, cache: &BernoulliCache) -> Rational {
    let (k, m) = (i64::from(k), i64::from(m));
    let mut sum = Rational::zero();
    for j in 0..=k {
        let c = c_term(&MultiIndex::from([k - j, m + j + 1]), upper, false, cache)
            .expect("nonnegative");
        sum += c * integer(sign(j) * binomial(k + m + 1, k - j));
    }
    sum * factorial_rational(k) * factorial_rational(m) / factorial_rational(k + m + 1)
}

/// `∫_0^1 B_k B_l = (-1)^{k-1} k! l! / (k+l)! B_{k+l}` for `k, l >= 1`.
pub fn two_factor_at_one(k: u32, l: u32, cache: &BernoulliCache) -> Result<Rational> {
    let (ki, li) = (i64::from(k), i64::from(l));
    if ki + li < 2 {
        return Err(Error::IndexSumTooSmall { k: ki, l: li });
    }
    if let Some(bad) = [ki, li].into_iter().find(|&v| v < 1) {
        return Err(Error::NonPositiveIndex(bad));
    }
    Ok(
        integer(sign(ki - 1)) * factorial_rational(ki) * factorial_rational(li)
            / factorial_rational(ki + li)
            * cache.number((k + l) as usize),
    )
}

/// `∫_0^upper B_n B_m B_k` from
/// `n!m!k! Σ_{a=0}^{n+m} (-1)^a Σ_{i=0}^{a} C(a,i) C̃_{n-a+i, m-i, k+a+1}(upper)`.
pub fn three_factor_formula(
    n: u32,
    m: u32,
    k: u32,
    upper: &Rational,
    cache: &BernoulliCache,
) -> Rational {
    let (n, m, k) = (i64::from(n), i64::from(m), i64::from(k));
    let size = (n + m + k + 2) as usize;
    let at_upper = scaled_bernoulli_at(upper, size, cache);
    let at_zero = scaled_bernoulli_numbers(size, cache);
    let mut sum = Rational::zero();
    for a in 0..=n + m {
        let mut inner = Rational::zero();
        for i in 0..=a {
            let idx = [n - a + i, m - i, k + a + 1];
            if idx.iter().any(|&v| v < 0) {
                continue;
            }
            let c = idx
                .iter()
                .map(|&v| lookup(&at_upper, v))
                .product::<Rational>()
                - idx
                    .iter()
                    .map(|&v| lookup(&at_zero, v))
                    .product::<Rational>();
            inner += c * integer(binomial(a, i));
        }
        sum += inner * integer(sign(a));
    }
    sum * factorial_rational(n) * factorial_rational(m) * factorial_rational(k)
}

/// `∫_0^1 B_k B_l B_m` for `k, l, m >= 1`:
/// `(-1)^{m+1} k!l!m! Σ_{a=0}^{k+l} [C(a,l-1) + C(a,k-1)] B̃_{m+a+1} B̃_{k+l-a-1}`
/// when `k+l+m` is even, and zero otherwise.
pub fn three_factor_at_one(k: u32, l: u32, m: u32, cache: &BernoulliCache) -> Result<Rational> {
    let (k, l, m) = (i64::from(k), i64::from(l), i64::from(m));
    if let Some(bad) = [k, l, m].into_iter().find(|&v| v < 1) {
        return Err(Error::NonPositiveIndex(bad));
    }
    if (k + l + m) % 2 != 0 {
        return Ok(Rational::zero());
    }
    let bt = scaled_bernoulli_numbers((k + l + m + 1) as usize, cache);
    let mut sum = Rational::zero();
    for a in 0..=k + l {
        let weight = binomial(a, l - 1) + binomial(a, k - 1);
        sum += integer(weight) * lookup(&bt, m + a + 1) * lookup(&bt, k + l - a - 1);
    }
    Ok(sum
        * integer(sign(m + 1))
        * factorial_rational(k)
        * factorial_rational(l)
        * factorial_rational(m))
}

/// Which form of the four-factor theorem at `x = 1` to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FourFactorVariant {
    /// The case (A)–(D) sums exactly as stated. Wrong whenever `k_4 = 0`
    /// and the index sum is even.
    AsPrinted,
    /// The stated sums with the `a = 0` summand replaced by the direct term
    /// when `k_4 = 0`.
    #[default]
    Corrected,
}

/// The pieces of the four-factor theorem for one tuple, all scaled by
/// `1/(k_1!k_2!k_3!k_4!)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourFactorTerms {
    /// `Σ_a (-1)^a B̃_{k_4+a+1} C(a, k_1-1) Σ_i C(a-k_1+1, i) B̃_{k_3-i} B̃_{k_1+k_2+i-a-1}`.
    pub case_a: Rational,
    /// Same with `C(a, k_2-1)` and `B̃_{k_1-i} B̃_{k_2+k_3+i-a-1}`.
    pub case_b: Rational,
    /// Same with `C(a, k_3-1)` and `B̃_{k_1-i} B̃_{k_2+k_3+i-a-1}`.
    pub case_c: Rational,
    /// `½ (-1)^{k_1+k_2+k_3} C(k_1+k_2+k_3-3, k_1-1) C(k_2+k_3-2, k_2-1) B̃_{k_1+k_2+k_3+k_4-2}`.
    pub case_d: Rational,
    /// Correction added by [`FourFactorVariant::Corrected`]; zero unless
    /// `k_4 = 0`.
    pub boundary_correction: Rational,
}

impl FourFactorTerms {
    pub fn total(&self, variant: FourFactorVariant) -> Rational {
        let printed = &self.case_a + &self.case_b + &self.case_c + &self.case_d;
        match variant {
            FourFactorVariant::AsPrinted => printed,
            FourFactorVariant::Corrected => printed + &self.boundary_correction,
        }
    }
}

fn four_factor_case_sum(bt: &[Rational], ks: [i64; 4], a: i64, case: usize) -> Rational {
    let [k1, k2, k3, k4] = ks;
    let pivot = [k1, k2, k3][case];
    let outer = binomial(a, pivot - 1);
    if outer.is_zero() {
        return Rational::zero();
    }
    let width = a - pivot + 1;
    let mut inner = Rational::zero();
    for i in 0..=width {
        let (x, y) = match case {
            0 => (k3 - i, k1 + k2 + i - a - 1),
            _ => (k1 - i, k2 + k3 + i - a - 1),
        };
        inner += integer(binomial(width, i)) * lookup(bt, x) * lookup(bt, y);
    }
    integer(sign(a) * outer) * lookup(bt, k4 + a + 1) * inner
}

/// The case sums of the four-factor theorem, for an even index sum.
pub fn four_factor_terms(ks: [u32; 4], cache: &BernoulliCache) -> FourFactorTerms {
    let ks = ks.map(i64::from);
    let [k1, k2, k3, k4] = ks;
    let bt = scaled_bernoulli_numbers((k1 + k2 + k3 + k4 + 2) as usize, cache);

    let mut cases = [Rational::zero(), Rational::zero(), Rational::zero()];
    let mut printed_first = Rational::zero();
    for a in 0..=k1 + k2 + k3 {
        for (case, slot) in cases.iter_mut().enumerate() {
            let term = four_factor_case_sum(&bt, ks, a, case);
            if a == 0 {
                printed_first += &term;
            }
            *slot += term;
        }
    }
    let d_weight = binomial(k1 + k2 + k3 - 3, k1 - 1) * binomial(k2 + k3 - 2, k2 - 1);
    let case_d =
        integer(sign(k1 + k2 + k3) * d_weight) * lookup(&bt, k1 + k2 + k3 + k4 - 2) / integer(2);

    // With k_4 = 0 the a = 0 term has B̃_1 in the last slot, outside the
    // parity case split; the true summand is 2(-1)^{0+1} B̃_1 Π B̃_{k_j}.
    let boundary_correction = if k4 == 0 {
        lookup(&bt, k1) * lookup(&bt, k2) * lookup(&bt, k3) - printed_first
    } else {
        Rational::zero()
    };

    let [case_a, case_b, case_c] = cases;
    FourFactorTerms {
        case_a,
        case_b,
        case_c,
        case_d,
        boundary_correction,
    }
}

/// `∫_0^1 B_{k_1}B_{k_2}B_{k_3}B_{k_4}` from the four-factor theorem
/// (corrected variant). Zero for an odd index sum.
pub fn four_factor_at_one(ks: [u32; 4], cache: &BernoulliCache) -> Rational {
    four_factor_at_one_with(ks, FourFactorVariant::Corrected, cache)
}

pub fn four_factor_at_one_with(
    ks: [u32; 4],
    variant: FourFactorVariant,
    cache: &BernoulliCache,
) -> Rational {
    let sum: u32 = ks.iter().sum();
    if !sum.is_multiple_of(2) {
        return Rational::zero();
    }
    let scale: BigInt = ks
        .iter()
        .map(|&k| factorial(i64::from(k)).expect("nonnegative"))
        .product();
    four_factor_terms(ks, cache).total(variant) * integer(scale)
}

/// Terms of the symmetrised four-factor sum
/// `Ĩ(1) = 2 Σ_a (-1)^{a+1} B̃_{k_4+a+1} Σ_{i_1+i_2+i_3=a} mult(a; i) B̃_{k_1-i_1} B̃_{k_2-i_2} B̃_{k_3-i_3}`,
/// grouped by which of the first three indices equal one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FourFactorExpansion {
    pub total: Rational,
    /// Terms with `k_1 - i_1 = 1`.
    pub first_is_one: Rational,
    /// Terms with `k_2 - i_2 = 1`.
    pub second_is_one: Rational,
    /// Terms with `k_3 - i_3 = 1`.
    pub third_is_one: Rational,
    /// Terms with all three equal to one.
    pub all_are_one: Rational,
}

/// Evaluates the symmetrised triple sum for an even index sum.
pub fn four_factor_expansion(
    ks: &MultiIndex,
    cache: &BernoulliCache,
) -> Result<FourFactorExpansion> {
    if ks.len() != 4 {
        return Err(Error::Arity {
            expected: 4,
            got: ks.len(),
        });
    }
    if let Some(&k) = ks.iter().find(|&&k| k < 0) {
        return Err(Error::NegativeIndex(k));
    }
    let sum = ks.sum();
    if sum % 2 != 0 {
        return Err(Error::OddIndexSum(sum));
    }
    let [k1, k2, k3, k4] = [ks[0], ks[1], ks[2], ks[3]];
    let bt = scaled_bernoulli_numbers((sum + 2) as usize, cache);
    let mut out = FourFactorExpansion::default();
    for a in 0..=k1 + k2 + k3 {
        let tail = lookup(&bt, k4 + a + 1);
        if tail.is_zero() {
            continue;
        }
        let factor = integer(2 * sign(a + 1)) * tail;
        let mut walk = Compositions::bounded(a, vec![k1, k2, k3]);
        while let Some(i) = walk.advance() {
            let m = [k1 - i[0], k2 - i[1], k3 - i[2]];
            let product: Rational = m.iter().map(|&v| lookup(&bt, v)).product();
            if product.is_zero() {
                continue;
            }
            let term = &factor * integer(multinomial(a, &MultiIndex::from(i))?) * product;
            let ones = m.map(|v| v == 1);
            if ones[0] {
                out.first_is_one += &term;
            }
            if ones[1] {
                out.second_is_one += &term;
            }
            if ones[2] {
                out.third_is_one += &term;
            }
            if ones.iter().all(|&b| b) {
                out.all_are_one += &term;
            }
            out.total += term;
        }
    }
    Ok(out)
}

/// `Ĩ_{k_1..k_4}(1)` from the symmetrised triple sum. Requires an even index
/// sum; for odd sums the integral is zero by reflection.
pub fn four_factor_even_sum(ks: &MultiIndex, cache: &BernoulliCache) -> Result<Rational> {
    four_factor_expansion(ks, cache).map(|e| e.total)
}

/// How to evaluate an integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Closed,
    Recurrence(i64),
    Oracle,
    /// The specialised two-, three- or four-factor formula when one applies
    /// at `x = 1`, otherwise the closed form.
    Auto,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "closed" => Ok(Method::Closed),
            "oracle" => Ok(Method::Oracle),
            "auto" => Ok(Method::Auto),
            _ => {
                let mu = s.strip_prefix("recurrence:").ok_or_else(|| {
                    format!(
                        "unknown method `{s}` (expected closed, recurrence:<mu>, oracle or auto)"
                    )
                })?;
                let mu: i64 = mu
                    .parse()
                    .map_err(|_| format!("invalid recurrence depth `{mu}`"))?;
                if mu < 1 {
                    return Err(format!("recurrence depth must be at least 1, got {mu}"));
                }
                Ok(Method::Recurrence(mu))
            }
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Closed => write!(f, "closed"),
            Method::Recurrence(mu) => write!(f, "recurrence:{mu}"),
            Method::Oracle => write!(f, "oracle"),
            Method::Auto => write!(f, "auto"),
        }
    }
}

/// The specialised formula for `r ∈ {2, 3, 4}` at `x = 1`, if one applies.
pub fn specialized_at_one(ks: &MultiIndex, cache: &BernoulliCache) -> Option<Rational> {
    if !ks.is_nonnegative() {
        return None;
    }
    let k: Vec<u32> = ks.iter().map(|&v| v as u32).collect();
    match *k.as_slice() {
        [a, b] if a >= 1 && b >= 1 => two_factor_at_one(a, b, cache).ok(),
        [a, b] => Some(two_factor_formula(a, b, &Rational::one(), cache)),
        [a, b, c] if a >= 1 && b >= 1 && c >= 1 => three_factor_at_one(a, b, c, cache).ok(),
        [a, b, c] => Some(three_factor_formula(a, b, c, &Rational::one(), cache)),
        [a, b, c, d] => Some(four_factor_at_one([a, b, c, d], cache)),
        _ => None,
    }
}

/// Unscaled `I_{ks}(upper)` by the chosen method.
pub fn evaluate(spec: &IntegralSpec, method: Method, cache: &BernoulliCache) -> Result<Rational> {
    match method {
        Method::Closed => Ok(closed_form_integral(spec, false, cache)),
        Method::Oracle => Ok(oracle_integral(spec, cache)),
        Method::Recurrence(mu) => recurrence_integral(spec, mu, cache)
            .map(|r| r.value * integer(spec.factorial_product())),
        Method::Auto => {
            if spec.upper().is_one() {
                if let Some(v) = specialized_at_one(spec.ks(), cache) {
                    return Ok(v);
                }
            }
            Ok(closed_form_integral(spec, false, cache))
        }
    }
}

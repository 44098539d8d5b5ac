//! Exact integer and rational arithmetic: factorials, binomial and
//! multinomial coefficients, composition enumeration, and the `p/q` wire
//! format for rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Renders `p/q`, or `p` when the denominator is one. The sign is carried on
/// the numerator.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p` or `p/q` (optional leading `-` or `+` on `p`, ASCII digits
/// only, no whitespace) and reduces to canonical form.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer = parse_signed_digits(num).ok_or_else(bad)?;
    let denom = match den {
        Some(d) if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) => {
            d.parse::<BigInt>().map_err(|_| bad())?
        }
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

fn parse_signed_digits(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `n!` for `n >= 0`.
pub fn factorial(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    Ok((2..=n).fold(BigInt::one(), |acc, i| acc * i))
}

/// `n! / (k! (n-k)!)` for `0 <= k <= n`, and zero for every other pair.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division
    // is exact at every step.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `mu! / (k_1! ··· k_r!)`, extended by zero whenever some part is negative
/// or exceeds `mu`.
///
/// Nonnegative parts that do not sum to `mu` are a caller error.
pub fn multinomial(mu: i64, parts: &MultiIndex) -> Result<BigInt> {
    if mu < 0 {
        return Err(Error::NegativeArgument(mu));
    }
    if parts.iter().any(|&k| k < 0 || k > mu) {
        return Ok(BigInt::zero());
    }
    let sum = parts.sum();
    if sum != mu {
        return Err(Error::PartsSumMismatch {
            mu,
            sum,
            parts: parts.to_string(),
        });
    }
    // mu!/(k_1!···k_r!) = C(k_1, k_1) C(k_1+k_2, k_2) ··· C(mu, k_r)
    let mut running = 0;
    let mut acc = BigInt::one();
    for &k in parts.iter() {
        running += k;
        acc *= binomial(running, k);
    }
    Ok(acc)
}

/// Ordered list of integer indices of fixed length.
///
/// Entries are allowed to be negative; functions that need nonnegative
/// indices check at their own boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(parts: Vec<i64>) -> Self {
        MultiIndex(parts)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> Option<i64> {
        self.0.get(i).copied()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i64> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    /// Parses a comma-separated list such as `1,2,3`. Surrounding whitespace
    /// around each entry is tolerated.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::ParseIndices(text.to_string());
        if text.trim().is_empty() {
            return Err(bad());
        }
        text.split(',')
            .map(|part| {
                let part = part.trim();
                let digits = part.strip_prefix('-').unwrap_or(part);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                part.parse::<i64>().map_err(|_| bad())
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(parts: Vec<i64>) -> Self {
        MultiIndex(parts)
    }
}

impl From<&[i64]> for MultiIndex {
    fn from(parts: &[i64]) -> Self {
        MultiIndex(parts.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for MultiIndex {
    fn from(parts: [i64; N]) -> Self {
        MultiIndex(parts.to_vec())
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a MultiIndex {
    type Item = &'a i64;
    type IntoIter = std::slice::Iter<'a, i64>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Enumerates ordered tuples of nonnegative integers with a fixed sum and
/// per-position upper bounds, in lexicographic order.
///
/// [`Compositions::advance`] walks the sequence without allocating; the
/// `Iterator` impl yields owned [`MultiIndex`] values.
#[derive(Clone, Debug)]
pub struct Compositions {
    bounds: Vec<i64>,
    current: Vec<i64>,
    started: bool,
    done: bool,
}

/// Every ordered `parts`-tuple of nonnegative integers summing to `total`.
/// There are `binomial(total + parts - 1, parts - 1)` of them.
///
/// With `parts == 0` the only composition is the empty one, and only when
/// `total == 0`.
pub fn compositions(total: i64, parts: usize) -> Compositions {
    Compositions::bounded(total, vec![total.max(0); parts])
}

impl Compositions {
    /// Compositions of `total` whose `j`-th entry is at most `bounds[j]`.
    pub fn bounded(total: i64, bounds: Vec<i64>) -> Self {
        let mut current = vec![0; bounds.len()];
        let done = total < 0 || !fill_from_right(&mut current, &bounds, total);
        Compositions {
            bounds,
            current,
            started: false,
            done,
        }
    }

    pub fn advance(&mut self) -> Option<&[i64]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        let n = self.current.len();
        let mut tail = 0;
        for i in (0..n.saturating_sub(1)).rev() {
            tail += self.current[i + 1];
            if tail > 0 && self.current[i] < self.bounds[i] {
                self.current[i] += 1;
                self.current[i + 1..].iter_mut().for_each(|x| *x = 0);
                let filled =
                    fill_from_right(&mut self.current[i + 1..], &self.bounds[i + 1..], tail - 1);
                debug_assert!(filled);
                return Some(&self.current);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for Compositions {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        self.advance().map(MultiIndex::from)
    }
}

// Lexicographically smallest placement: push as much as possible to the end.
fn fill_from_right(slots: &mut [i64], bounds: &[i64], mut total: i64) -> bool {
    for (slot, &bound) in slots.iter_mut().zip(bounds).rev() {
        let take = bound.max(0).min(total);
        *slot = take;
        total -= take;
    }
    total == 0
}

/// `(-1)^n` as a small integer.
pub fn sign(n: i64) -> i64 {
    if n.is_even() {
        1
    } else {
        -1
    }
}

/// All orderings of `items`, duplicates included when entries repeat.
pub fn permutations(items: &[i64]) -> Vec<Vec<i64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), big(1));
        assert_eq!(factorial(5).unwrap(), big(120));
        let iterated: i64 = (1..=12).product();
        assert_eq!(factorial(12).unwrap(), big(iterated));
        assert_eq!(factorial(12).unwrap(), big(479_001_600));
        assert_eq!(factorial(-1), Err(Error::NegativeArgument(-1)));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(-1, 0), big(0));
        assert_eq!(
            binomial(100, 49).to_string(),
            "98913082887808032681188722800"
        );
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(3, &[1, 1, 1].into()).unwrap(), big(6));
        assert_eq!(multinomial(4, &[2, 1, 1].into()).unwrap(), big(12));
        assert_eq!(multinomial(2, &[-1, 3].into()).unwrap(), big(0));
        assert_eq!(multinomial(0, &[0, 0].into()).unwrap(), big(1));
        assert!(matches!(
            multinomial(4, &[1, 1].into()),
            Err(Error::PartsSumMismatch { mu: 4, sum: 2, .. })
        ));
    }

    #[test]
    fn multinomial_recurrence_exhaustive() {
        for mu in 1..=10 {
            for r in 1..=5 {
                for parts in compositions(mu, r) {
                    let lhs = multinomial(mu, &parts).unwrap();
                    let rhs: BigInt = (0..r)
                        .map(|j| {
                            let mut lowered = parts.clone().into_vec();
                            lowered[j] -= 1;
                            multinomial(mu - 1, &lowered.into()).unwrap()
                        })
                        .sum();
                    assert_eq!(lhs, rhs, "mu = {mu}, parts = {parts}");
                }
            }
        }
    }

    #[test]
    fn multinomial_symmetry_exhaustive() {
        for mu in 0..=8 {
            for r in 1..=4 {
                for parts in compositions(mu, r) {
                    let reference = multinomial(mu, &parts).unwrap();
                    for perm in permutations(parts.as_slice()) {
                        assert_eq!(multinomial(mu, &perm.into()).unwrap(), reference);
                    }
                }
            }
        }
    }

    #[test]
    fn binomial_is_two_part_multinomial() {
        for n in 0..=20 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), multinomial(n, &[k, n - k].into()).unwrap());
            }
        }
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(&[1, 2, 3, 4]).len(), 24);
        assert_eq!(permutations(&[]).len(), 1);
    }

    #[test]
    fn composition_examples() {
        let all: Vec<_> = compositions(0, 3).collect();
        assert_eq!(all, vec![MultiIndex::from([0, 0, 0])]);

        let all: Vec<_> = compositions(2, 2).map(MultiIndex::into_vec).collect();
        assert_eq!(all, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);

        assert_eq!(compositions(4, 3).count(), 15);
        assert_eq!(compositions(3, 1).count(), 1);
        assert_eq!(compositions(0, 0).count(), 1);
        assert_eq!(compositions(2, 0).count(), 0);
    }

    #[test]
    fn bounded_compositions_match_filtered_enumeration() {
        let bounds = vec![2, 0, 3, 1];
        for total in 0..=7 {
            let filtered: Vec<_> = compositions(total, 4)
                .filter(|c| c.iter().zip(&bounds).all(|(x, b)| x <= b))
                .collect();
            let bounded: Vec<_> = Compositions::bounded(total, bounds.clone()).collect();
            assert_eq!(bounded, filtered, "total = {total}");
        }
        assert_eq!(Compositions::bounded(7, bounds).count(), 0);
    }

    #[test]
    fn rational_wire_format() {
        assert_eq!(format_rational(&rational(-3, 6)), "-1/2");
        assert_eq!(format_rational(&rational(4, 2)), "2");
        assert_eq!(format_rational(&rational(0, 5)), "0");
        assert_eq!(format_rational(&rational(1, -80)), "-1/80");
        assert_eq!(parse_rational("5/7").unwrap(), rational(5, 7));
        assert_eq!(parse_rational("-2/4").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational("+3").unwrap(), rational(3, 1));
        for bad in ["", "1/", "/2", "1 / 2", "1/-2", "a", "1.5", "1/2/3", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
        assert_eq!(
            parse_rational("1/0"),
            Err(Error::ZeroDenominator("1/0".into()))
        );
    }

    #[test]
    fn multi_index_parse() {
        assert_eq!(
            MultiIndex::parse("1,1,2").unwrap(),
            MultiIndex::from([1, 1, 2])
        );
        assert_eq!(
            MultiIndex::parse(" 3 , 0").unwrap(),
            MultiIndex::from([3, 0])
        );
        assert_eq!(
            MultiIndex::parse("-1,2").unwrap(),
            MultiIndex::from([-1, 2])
        );
        for bad in ["", "1,,2", "1;2", "x", "1,2,"] {
            assert!(MultiIndex::parse(bad).is_err(), "{bad:?} should not parse");
        }
        assert_eq!(MultiIndex::from([1, -2, 3]).to_string(), "(1,-2,3)");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rational(n, d))
    }

    proptest! {
        #[test]
        fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            for v in [&a + &b, &a * &c, &b - &c] {
                prop_assert!(v.denom().is_positive());
                prop_assert!(v.numer().gcd(v.denom()).is_one());
            }
        }

        #[test]
        fn rational_text_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
            let value = rational(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value);
        }

        #[test]
        fn composition_count_is_stars_and_bars(total in 0i64..9, parts in 1usize..6) {
            let all: Vec<_> = compositions(total, parts).collect();
            let expected = binomial(total + parts as i64 - 1, parts as i64 - 1);
            prop_assert_eq!(BigInt::from(all.len()), expected);
            prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(all.iter().all(|c| c.len() == parts && c.sum() == total && c.is_nonnegative()));
        }
    }
}

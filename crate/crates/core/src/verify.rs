//! Exhaustive verification sweeps. Each suite pits one family of formulas
//! against an independent route (normally the brute-force oracle) and
//! reports how many instances agreed.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli::{BernoulliCache, Polynomial};
use crate::exact::{
    format_rational, integer, permutations, rational, Compositions, MultiIndex, Rational,
};
use crate::integrals::{
    closed_form_integral, closed_form_integral_poly, four_factor_at_one_with,
    four_factor_expansion, four_factor_terms, oracle_integral, oracle_integral_poly,
    recurrence_integral, three_factor_at_one, three_factor_formula, two_factor_at_one,
    two_factor_formula, FourFactorVariant, IntegralSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Identities,
    Oracle,
    Symmetry,
    Parity,
    Mu,
    Table,
    FourFactor,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Identities,
        Suite::Oracle,
        Suite::Symmetry,
        Suite::Parity,
        Suite::Mu,
        Suite::Table,
        Suite::FourFactor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Oracle => "oracle",
            Suite::Symmetry => "symmetry",
            Suite::Parity => "parity",
            Suite::Mu => "mu",
            Suite::Table => "table",
            Suite::FourFactor => "carlitz4",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Size limits of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepBounds {
    /// Largest index sum `k_1 + ... + k_r`.
    pub max_sum: i64,
    /// Largest number of factors `r`.
    pub max_r: usize,
    /// Largest single index; each suite picks its own default when unset.
    pub max_entry: Option<i64>,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_sum: 12,
            max_r: 4,
            max_entry: None,
        }
    }
}

/// The instance that made a suite fail first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub ks: Vec<i64>,
    pub upper: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub attempted: u64,
    pub passed: u64,
    pub first_failure: Option<Failure>,
    pub wall_time_us: u128,
    /// Free-form findings, e.g. per-case breakdowns.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.attempted
    }
}

struct Tally {
    attempted: u64,
    passed: u64,
    first_failure: Option<Failure>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            attempted: 0,
            passed: 0,
            first_failure: None,
            notes: Vec::new(),
        }
    }

    fn check(
        &mut self,
        check: &str,
        ks: &[i64],
        upper: &Rational,
        expected: &Rational,
        got: &Rational,
    ) -> bool {
        self.attempted += 1;
        if expected == got {
            self.passed += 1;
            return true;
        }
        if self.first_failure.is_none() {
            self.first_failure = Some(Failure {
                check: check.to_string(),
                ks: ks.to_vec(),
                upper: format_rational(upper),
                expected: format_rational(expected),
                got: format_rational(got),
            });
        }
        false
    }

    fn check_poly(
        &mut self,
        check: &str,
        ks: &[i64],
        expected: &Polynomial,
        got: &Polynomial,
    ) -> bool {
        self.attempted += 1;
        if expected == got {
            self.passed += 1;
            return true;
        }
        if self.first_failure.is_none() {
            self.first_failure = Some(Failure {
                check: check.to_string(),
                ks: ks.to_vec(),
                upper: "x".to_string(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
        false
    }

    fn check_flag(&mut self, check: &str, ks: &[i64], ok: bool) -> bool {
        self.check(
            check,
            ks,
            &Rational::zero(),
            &Rational::one(),
            &if ok {
                Rational::one()
            } else {
                Rational::zero()
            },
        )
    }

    fn finish(self, suite: Suite, started: Instant) -> VerificationReport {
        VerificationReport {
            suite: suite.name().to_string(),
            attempted: self.attempted,
            passed: self.passed,
            first_failure: self.first_failure,
            wall_time_us: started.elapsed().as_micros(),
            notes: self.notes,
        }
    }
}

/// Upper limits every sweep evaluates at.
pub fn sweep_uppers() -> [Rational; 4] {
    [
        rational(1, 1),
        rational(1, 2),
        rational(2, 1),
        rational(-1, 3),
    ]
}

/// All `r`-tuples with entries in `0..=max_entry` and sum at most `max_sum`,
/// in lexicographic order.
pub fn index_tuples(r: usize, max_entry: i64, max_sum: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for total in 0..=max_sum.min(max_entry * r as i64) {
        out.extend(Compositions::bounded(total, vec![max_entry; r]).map(MultiIndex::into_vec));
    }
    out.sort();
    out
}

pub fn run_suite(suite: Suite, bounds: SweepBounds, cache: &BernoulliCache) -> VerificationReport {
    let started = Instant::now();
    let mut tally = Tally::new();
    match suite {
        Suite::Identities => identities(&mut tally, bounds, cache),
        Suite::Oracle => oracle_sweep(&mut tally, bounds, cache),
        Suite::Symmetry => symmetry(&mut tally, bounds, cache),
        Suite::Parity => parity(&mut tally, bounds, cache),
        Suite::Mu => mu_independence(&mut tally, bounds, cache),
        Suite::Table => table(&mut tally, cache),
        Suite::FourFactor => four_factor_suite(&mut tally, bounds, cache),
    }
    tally.finish(suite, started)
}

/// `B_k(x)` for `k = 0..=order`, read off the power series of
/// `t e^{xt} / (e^t - 1)` in `t`. Uses only series division, not the
/// Bernoulli-number recurrence.
pub fn generating_function_polynomials(order: usize) -> Vec<Polynomial> {
    let mut fact = vec![Rational::one()];
    for n in 1..=order + 1 {
        let next = &fact[n - 1] * integer(n);
        fact.push(next);
    }
    // numerator e^{xt}: coefficient of t^n is x^n / n!
    let numer: Vec<Polynomial> = (0..=order)
        .map(|n| Polynomial::monomial(Rational::one() / &fact[n], n))
        .collect();
    // denominator (e^t - 1)/t: coefficient of t^n is 1/(n+1)!, constant term 1
    let denom: Vec<Rational> = (0..=order)
        .map(|n| Rational::one() / &fact[n + 1])
        .collect();
    let mut quotient: Vec<Polynomial> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut q = numer[n].clone();
        for j in 1..=n {
            q = &q - &quotient[n - j].scale(&denom[j]);
        }
        quotient.push(q);
    }
    quotient
        .into_iter()
        .enumerate()
        .map(|(k, q)| q.scale(&fact[k]))
        .collect()
}

fn identities(tally: &mut Tally, bounds: SweepBounds, cache: &BernoulliCache) {
    let max_k = bounds.max_entry.unwrap_or(bounds.max_sum).max(0) as usize;
    let zero = Rational::zero();
    let one = Rational::one();
    let minus_one = -Rational::one();
    let points = [
        rational(0, 1),
        rational(1, 3),
        rational(-5, 2),
        rational(7, 4),
    ];
    let series = generating_function_polynomials(max_k);
    for (k, from_series) in series.iter().enumerate() {
        let ks = [k as i64];
        let bk = cache.polynomial(k);
        let kq = integer(k);
        if k >= 1 {
            // B_k(x+1) - B_k(x) = k x^{k-1}
            let shifted = bk.compose_affine(&one, &one);
            tally.check_poly(
                "difference",
                &ks,
                &Polynomial::monomial(kq.clone(), k - 1),
                &(&shifted - &bk),
            );
            // d/dx B_k = k B_{k-1}
            tally.check_poly(
                "derivative",
                &ks,
                &cache.polynomial(k - 1).scale(&kq),
                &bk.derivative(),
            );
        }
        // ∫_x^y B_k = (B_{k+1}(y) - B_{k+1}(x)) / (k+1), as a polynomial in y with x = 0
        let next = cache.polynomial(k + 1);
        let k1 = integer(k + 1);
        let expected_anti =
            (&next - &Polynomial::constant(cache.number(k + 1))).scale(&(Rational::one() / &k1));
        tally.check_poly("integral", &ks, &expected_anti, &bk.antiderivative());
        for pair in points.windows(2) {
            let (x, y) = (&pair[0], &pair[1]);
            let expected = (next.eval(y) - next.eval(x)) / &k1;
            tally.check("integral", &ks, y, &expected, &bk.integral(x, y));
        }
        // B_k(1 - x) = (-1)^k B_k(x)
        let reflected = bk.compose_affine(&one, &minus_one);
        let signed = if k % 2 == 0 { bk.clone() } else { -&bk };
        tally.check_poly("reflection", &ks, &signed, &reflected);
        // B_k(1) = B_k except B_1(1) = -B_1
        let special = if k == 1 {
            -cache.number(1)
        } else {
            cache.number(k)
        };
        tally.check("special value", &ks, &one, &special, &bk.eval(&one));
        if k >= 3 && k % 2 == 1 {
            tally.check("odd vanishing", &ks, &zero, &zero, &cache.number(k));
        }
        tally.check_poly("generating function", &ks, from_series, &bk);
    }
}

fn oracle_sweep(tally: &mut Tally, bounds: SweepBounds, cache: &BernoulliCache) {
    let max_entry = bounds.max_entry.unwrap_or(bounds.max_sum);
    let uppers = sweep_uppers();
    for r in 1..=bounds.max_r {
        for ks in index_tuples(r, max_entry, bounds.max_sum) {
            let multi = MultiIndex::from(ks.clone());
            let oracle_poly = oracle_integral_poly(&multi, cache);
            tally.check_poly(
                "closed form polynomial",
                &ks,
                &oracle_poly,
                &closed_form_integral_poly(&multi, cache),
            );
            for upper in &uppers {
                let spec = IntegralSpec::new(ks.clone(), upper.clone()).expect("nonnegative");
                let expected = oracle_integral(&spec, cache);
                tally.check(
                    "closed form",
                    &ks,
                    upper,
                    &expected,
                    &closed_form_integral(&spec, false, cache),
                );
                let k: Vec<u32> = ks.iter().map(|&v| v as u32).collect();
                match *k.as_slice() {
                    [a, b] => {
                        tally.check(
                            "two-factor",
                            &ks,
                            upper,
                            &expected,
                            &two_factor_formula(a, b, upper, cache),
                        );
                        if upper.is_one() && a >= 1 && b >= 1 {
                            let got = two_factor_at_one(a, b, cache).expect("k, l >= 1");
                            tally.check("two-factor at one", &ks, upper, &expected, &got);
                        }
                    }
                    [a, b, c] => {
                        tally.check(
                            "three-factor",
                            &ks,
                            upper,
                            &expected,
                            &three_factor_formula(a, b, c, upper, cache),
                        );
                        if upper.is_one() && a >= 1 && b >= 1 && c >= 1 {
                            let got = three_factor_at_one(a, b, c, cache).expect("k, l, m >= 1");
                            tally.check("three-factor at one", &ks, upper, &expected, &got);
                        }
                    }
                    [a, b, c, d] if upper.is_one() => {
                        let got = four_factor_at_one_with(
                            [a, b, c, d],
                            FourFactorVariant::Corrected,
                            cache,
                        );
                        tally.check("four-factor at one", &ks, upper, &expected, &got);
                    }
                    _ => {}
                }
            }
        }
    }
}

fn symmetry(tally: &mut Tally, bounds: SweepBounds, cache: &BernoulliCache) {
    let max_entry = bounds.max_entry.unwrap_or(4);
    let uppers = [rational(1, 1), rational(-1, 3)];
    for r in 2..=bounds.max_r {
        for ks in index_tuples(r, max_entry, bounds.max_sum) {
            // one representative per multiset
            if ks.windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            for upper in &uppers {
                let base = IntegralSpec::new(ks.clone(), upper.clone()).expect("nonnegative");
                let expected = closed_form_integral(&base, true, cache);
                for perm in permutations(&ks) {
                    let spec = IntegralSpec::new(perm.clone(), upper.clone()).expect("nonnegative");
                    tally.check(
                        "permutation",
                        &perm,
                        upper,
                        &expected,
                        &closed_form_integral(&spec, true, cache),
                    );
                }
            }
        }
    }
}

fn parity(tally: &mut Tally, bounds: SweepBounds, cache: &BernoulliCache) {
    let max_entry = bounds.max_entry.unwrap_or(bounds.max_sum);
    let zero = Rational::zero();
    let one = Rational::one();
    for r in 1..=bounds.max_r {
        for ks in index_tuples(r, max_entry, bounds.max_sum) {
            if ks.iter().sum::<i64>() % 2 == 0 {
                continue;
            }
            let spec = IntegralSpec::at_one(ks.clone()).expect("nonnegative");
            tally.check(
                "oracle parity",
                &ks,
                &one,
                &zero,
                &oracle_integral(&spec, cache),
            );
            tally.check(
                "closed form parity",
                &ks,
                &one,
                &zero,
                &closed_form_integral(&spec, false, cache),
            );
        }
    }
}

/// Tuples for the recurrence sweep: `r` from 1 to `max_r`, sum at most
/// `max_sum`, thinned to `limit` evenly spaced ones.
pub fn recurrence_tuples(max_r: usize, max_sum: i64, limit: usize) -> Vec<Vec<i64>> {
    let all: Vec<Vec<i64>> = (1..=max_r)
        .flat_map(|r| index_tuples(r, max_sum, max_sum))
        .collect();
    if all.len() <= limit {
        return all;
    }
    (0..limit)
        .map(|i| all[i * all.len() / limit].clone())
        .collect()
}

/// Checks one tuple: every depth `1..=k_1+..+k_{r-1}+1` reproduces the
/// closed form, and the leftover sum is empty exactly at the last depth.
pub fn check_recurrence_tuple(
    ks: &[i64],
    upper: &Rational,
    cache: &BernoulliCache,
) -> Result<(), String> {
    let spec = IntegralSpec::new(ks.to_vec(), upper.clone()).map_err(|e| e.to_string())?;
    let expected = closed_form_integral(&spec, true, cache);
    let depth = ks[..ks.len() - 1].iter().sum::<i64>() + 1;
    for mu in 1..=depth {
        let r = recurrence_integral(&spec, mu, cache).map_err(|e| e.to_string())?;
        if r.value != expected {
            return Err(format!(
                "mu = {mu}: expected {}, got {}",
                format_rational(&expected),
                format_rational(&r.value)
            ));
        }
        if (r.residual_terms == 0) != (mu == depth) {
            return Err(format!("mu = {mu}: {} leftover terms", r.residual_terms));
        }
    }
    Ok(())
}

fn mu_independence(tally: &mut Tally, bounds: SweepBounds, cache: &BernoulliCache) {
    let uppers = [rational(1, 1), rational(-1, 3)];
    for ks in recurrence_tuples(bounds.max_r, bounds.max_sum, usize::MAX) {
        for upper in &uppers {
            let spec = IntegralSpec::new(ks.clone(), upper.clone()).expect("nonnegative");
            let expected = closed_form_integral(&spec, true, cache);
            let depth = ks[..ks.len() - 1].iter().sum::<i64>() + 1;
            for mu in 1..=depth {
                let r = recurrence_integral(&spec, mu, cache).expect("mu >= 1");
                tally.check(
                    &format!("recurrence depth {mu}"),
                    &ks,
                    upper,
                    &expected,
                    &r.value,
                );
            }
            let last = recurrence_integral(&spec, depth, cache).expect("mu >= 1");
            tally.check_flag(
                "empty leftover at full depth",
                &ks,
                last.residual_terms == 0,
            );
        }
    }
}

/// One printed expression for a four-factor integral at `x = 1`, as a sum of
/// `coefficient · Π B_j` monomials in Bernoulli numbers.
#[derive(Clone, Copy, Debug)]
pub struct TableEntry {
    pub ks: [i64; 4],
    pub variant: char,
    /// `(numerator, denominator, Bernoulli indices of the monomial)`.
    pub terms: &'static [(i64, i64, &'static [usize])],
}

impl TableEntry {
    pub fn evaluate(&self, cache: &BernoulliCache) -> Rational {
        self.terms
            .iter()
            .map(|&(n, d, idx)| {
                rational(n, d) * idx.iter().map(|&j| cache.number(j)).product::<Rational>()
            })
            .sum()
    }

    pub fn label(&self) -> String {
        let [a, b, c, d] = self.ks;
        format!("I_{{{a},{b},{c},{d}}}(1) ({})", self.variant)
    }
}

/// The worked examples for four factors at `x = 1`, every printed variant.
pub fn example_table() -> Vec<TableEntry> {
    vec![
        TableEntry {
            ks: [1, 1, 1, 1],
            variant: 'a',
            terms: &[(3, 2, &[1, 1, 2]), (1, 4, &[4]), (-1, 4, &[2])],
        },
        TableEntry {
            ks: [1, 1, 1, 3],
            variant: 'a',
            terms: &[(3, 4, &[1, 1, 4]), (1, 20, &[6]), (-1, 8, &[4])],
        },
        TableEntry {
            ks: [1, 1, 1, 3],
            variant: 'b',
            terms: &[
                (1, 2, &[2, 4]),
                (3, 4, &[1, 1, 4]),
                (1, 6, &[6]),
                (-1, 8, &[4]),
            ],
        },
        TableEntry {
            ks: [1, 1, 1, 5],
            variant: 'a',
            terms: &[(1, 2, &[1, 1, 6]), (1, 56, &[8]), (-1, 12, &[6])],
        },
        TableEntry {
            ks: [1, 1, 1, 5],
            variant: 'b',
            terms: &[
                (5, 6, &[4, 4]),
                (1, 2, &[1, 1, 6]),
                (2, 3, &[2, 6]),
                (1, 8, &[8]),
                (-1, 12, &[6]),
            ],
        },
        TableEntry {
            ks: [1, 1, 2, 2],
            variant: 'a',
            terms: &[
                (-1, 6, &[2, 4]),
                (-1, 2, &[1, 1, 4]),
                (-1, 15, &[6]),
                (1, 12, &[4]),
            ],
        },
        TableEntry {
            ks: [1, 1, 2, 2],
            variant: 'b',
            terms: &[
                (1, 2, &[2, 2, 2]),
                (1, 2, &[2, 4]),
                (1, 1, &[1, 1, 4]),
                (1, 6, &[6]),
                (-1, 6, &[4]),
            ],
        },
        TableEntry {
            ks: [1, 1, 2, 4],
            variant: 'a',
            terms: &[
                (-1, 15, &[2, 6]),
                (-1, 5, &[1, 1, 6]),
                (-1, 70, &[8]),
                (1, 30, &[6]),
            ],
        },
        TableEntry {
            ks: [1, 1, 2, 4],
            variant: 'b',
            terms: &[
                (-1, 6, &[4, 4]),
                (-1, 5, &[1, 1, 6]),
                (-1, 5, &[2, 6]),
                (-1, 28, &[8]),
                (1, 30, &[6]),
            ],
        },
        TableEntry {
            ks: [1, 1, 2, 4],
            variant: 'c',
            terms: &[
                (1, 1, &[2, 2, 4]),
                (1, 4, &[4, 4]),
                (23, 30, &[2, 6]),
                (4, 5, &[1, 1, 6]),
                (1, 8, &[8]),
                (-2, 15, &[6]),
            ],
        },
    ]
}

fn table(tally: &mut Tally, cache: &BernoulliCache) {
    let one = Rational::one();
    let entries = example_table();
    for entry in &entries {
        let spec = IntegralSpec::at_one(entry.ks).expect("nonnegative");
        let expected = oracle_integral(&spec, cache);
        let got = entry.evaluate(cache);
        let ok = tally.check(&entry.label(), &entry.ks, &one, &expected, &got);
        tally.notes.push(format!(
            "{} = {} (direct integration {}){}",
            entry.label(),
            format_rational(&got),
            format_rational(&expected),
            if ok { "" } else { "  DISCREPANCY" }
        ));
    }
    // variants of one row must agree with each other
    for pair in entries.windows(2) {
        if pair[0].ks == pair[1].ks {
            let (a, b) = (pair[0].evaluate(cache), pair[1].evaluate(cache));
            if a != b {
                tally.notes.push(format!(
                    "{} and {} disagree: {} vs {}",
                    pair[0].label(),
                    pair[1].label(),
                    format_rational(&a),
                    format_rational(&b)
                ));
            }
        }
    }
}

fn four_factor_suite(tally: &mut Tally, bounds: SweepBounds, cache: &BernoulliCache) {
    let max_entry = bounds.max_entry.unwrap_or(bounds.max_sum);
    let one = Rational::one();
    let mut case_hits = [0u64; 4];
    let mut printed_misses = Vec::new();
    let mut tuples = 0u64;
    for ks in index_tuples(4, max_entry, bounds.max_sum) {
        if ks.iter().sum::<i64>() % 2 != 0 {
            continue;
        }
        tuples += 1;
        let multi = MultiIndex::from(ks.clone());
        let spec = IntegralSpec::at_one(ks.clone()).expect("nonnegative");
        let oracle = oracle_integral(&spec, cache);
        let scale = integer(spec.factorial_product());
        let k: [u32; 4] = [ks[0] as u32, ks[1] as u32, ks[2] as u32, ks[3] as u32];

        let terms = four_factor_terms(k, cache);
        let expansion = four_factor_expansion(&multi, cache).expect("even sum");
        let cases = [
            ("case A", &terms.case_a, expansion.first_is_one.clone()),
            ("case B", &terms.case_b, expansion.second_is_one.clone()),
            ("case C", &terms.case_c, expansion.third_is_one.clone()),
            (
                "case D",
                &terms.case_d,
                -integer(2) * &expansion.all_are_one,
            ),
        ];
        for (slot, (name, got, expected)) in cases.into_iter().enumerate() {
            if tally.check(name, &ks, &one, &expected, got) {
                case_hits[slot] += 1;
            }
        }
        tally.check(
            "symmetrised sum",
            &ks,
            &one,
            &oracle,
            &(&expansion.total * &scale),
        );
        tally.check(
            "theorem (corrected)",
            &ks,
            &one,
            &oracle,
            &(terms.total(FourFactorVariant::Corrected) * &scale),
        );
        if terms.total(FourFactorVariant::AsPrinted) * &scale != oracle {
            printed_misses.push(ks);
        }
    }
    for (name, hits) in ["A", "B", "C", "D"].iter().zip(case_hits) {
        tally.notes.push(format!(
            "case ({name}) agrees with the expansion on {hits}/{tuples} tuples"
        ));
    }
    let all_k4_zero = printed_misses.iter().all(|ks| ks[3] == 0);
    tally.notes.push(format!(
        "as-printed form differs from direct integration on {}/{tuples} tuples{}",
        printed_misses.len(),
        if printed_misses.is_empty() {
            String::new()
        } else if all_k4_zero {
            ", all with k4 = 0 (corrected by the k4 = 0 boundary term)".to_string()
        } else {
            ", not all with k4 = 0".to_string()
        }
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>(), Ok(suite));
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn index_tuple_counts() {
        // 3-tuples with entries <= 2 and sum <= 3: 1 + 3 + 6 + 7
        assert_eq!(index_tuples(3, 2, 3).len(), 17);
        assert_eq!(index_tuples(2, 6, 14).len(), 49);
        assert_eq!(index_tuples(1, 5, 3).len(), 4);
    }

    #[test]
    fn recurrence_tuple_selection_is_capped() {
        let picked = recurrence_tuples(4, 10, 50);
        assert_eq!(picked.len(), 50);
        assert!(picked
            .iter()
            .all(|ks| (1..=4).contains(&ks.len()) && ks.iter().sum::<i64>() <= 10));
        assert!(picked.iter().any(|ks| ks.len() == 4));
    }

    #[test]
    fn generating_function_small_orders() {
        let cache = BernoulliCache::new();
        let series = generating_function_polynomials(4);
        for (k, p) in series.iter().enumerate() {
            assert_eq!(p, &cache.polynomial(k));
        }
    }

    #[test]
    fn table_suite_passes() {
        let cache = BernoulliCache::new();
        let report = run_suite(Suite::Table, SweepBounds::default(), &cache);
        assert_eq!(report.attempted, 10);
        assert!(report.all_passed(), "{report:?}");
        assert!(report.notes.iter().all(|n| !n.contains("disagree")));
    }

    #[test]
    fn small_sweeps_pass() {
        let cache = BernoulliCache::new();
        let bounds = SweepBounds {
            max_sum: 6,
            max_r: 3,
            max_entry: None,
        };
        for suite in Suite::ALL {
            let report = run_suite(suite, bounds, &cache);
            assert!(report.attempted > 0, "{suite}");
            assert!(report.all_passed(), "{suite}: {:?}", report.first_failure);
        }
    }

    #[test]
    fn failing_check_is_recorded_once() {
        let mut tally = Tally::new();
        let one = Rational::one();
        assert!(!tally.check("x", &[1], &one, &one, &Rational::zero()));
        assert!(!tally.check("y", &[2], &one, &one, &Rational::zero()));
        let report = tally.finish(Suite::Oracle, Instant::now());
        assert_eq!((report.attempted, report.passed), (2, 0));
        assert_eq!(report.first_failure.unwrap().check, "x");
    }
}

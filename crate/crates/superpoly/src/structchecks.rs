//! Structural predicates and decompositions of superpolynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{Exp, Poly3, SignedMono, Substitution};
use crate::torus::super_t2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinResult {
    pub superpoly: Poly3,
    pub s: i64,
    pub sawtooth: Poly3,
    pub squares_q: Poly3,
}

/// `(1 + a^-2 q^2 t^-1)(1 + a^-2 q^-2 t^-3)`, the Poincaré polynomial of
/// one bicanceling square relative to its top corner.
pub fn square_factor() -> Poly3 {
    let left = &Poly3::one() + &Poly3::mono(1, (-2, 2, -1));
    let right = &Poly3::one() + &Poly3::mono(1, (-2, -2, -3));
    &left * &right
}

/// Superpolynomial of the `T(2, |s|+1)` zigzag, mirrored when `s < 0`.
pub fn sawtooth(s: i64) -> Result<Poly3> {
    if s % 2 != 0 {
        return Err(Error::Precondition(format!("S = {s} must be even")));
    }
    Ok(match s.signum() {
        0 => Poly3::one(),
        1 => super_t2(s / 2)?,
        _ => super_t2(-s / 2)?.mirror(),
    })
}

/// Superpolynomial of a thin knot from its HOMFLY polynomial and `S`.
pub fn thin_super(homfly: &Poly3, s: i64) -> Result<ThinResult> {
    if s % 2 != 0 {
        return Err(Error::Precondition(format!("S = {s} must be even")));
    }
    if !homfly.is_homfly_alternating()? {
        return Err(Error::NotAlternating);
    }
    let mut superpoly = Poly3::zero();
    for ((i, j, _), c) in homfly.terms() {
        superpoly.add_term((i, j, i + j / 2 - s / 2), c.abs());
    }
    let saw = sawtooth(s)?;
    let rest = &superpoly - &saw;
    let squares_q = rest.exact_divide(&square_factor()).map_err(|_| Error::NotDecomposable)?;
    if !squares_q.is_nonneg() {
        return Err(Error::NotDecomposable);
    }
    Ok(ThinResult { superpoly, s, sawtooth: saw, squares_q })
}

fn pattern(p: &Poly3, survivor: impl Fn(i64) -> Exp, binomial: Exp) -> Result<(i64, Poly3)> {
    let divisor = &Poly3::one() + &Poly3::mono(1, binomial);
    let mut first_err = None;
    for (e, c) in p.terms() {
        if !c.is_positive() || e != survivor(e.0) {
            continue;
        }
        let rest = p - &Poly3::mono(1, e);
        let outcome = match rest.exact_divide(&divisor) {
            Ok(q) if q.is_nonneg() => return Ok((e.0, q)),
            Ok(_) => Error::NegativeQuotient,
            Err(err) => err,
        };
        first_err.get_or_insert(outcome);
    }
    Err(first_err.unwrap_or(Error::NoSurvivor))
}

/// `p = (a/q)^S + (1 + a^2 q^-2 t) Q_+`; returns `(S, Q_+)`.
pub fn pattern_plus(p: &Poly3) -> Result<(i64, Poly3)> {
    pattern(p, |s| (s, -s, 0), (2, -2, 1))
}

/// `p = (aqt)^S + (1 + a^2 q^2 t^3) Q_-`; returns `(S, Q_-)`.
pub fn pattern_minus(p: &Poly3) -> Result<(i64, Poly3)> {
    pattern(p, |s| (s, s, s), (2, 2, 3))
}

/// All decompositions `khr2 = q^m t^n + (1 + q^6 t^3) Q_-` with `Q_-`
/// nonnegative, in canonical survivor order.
pub fn three_step_pairings(khr2: &Poly3) -> Vec<(i64, i64, Poly3)> {
    let divisor = Poly3::from_exps([(0, 0, 0), (0, 6, 3)]);
    let mut out = Vec::new();
    for ((_, m, n), c) in khr2.terms() {
        if !c.is_positive() {
            continue;
        }
        let rest = khr2 - &Poly3::mono(1, (0, m, n));
        if let Ok(q) = rest.exact_divide(&divisor) {
            if q.is_nonneg() {
                out.push((m, n, q));
            }
        }
    }
    out
}

/// First three-step pairing in canonical order.
pub fn three_step_pairing(khr2: &Poly3) -> Option<(i64, i64, Poly3)> {
    three_step_pairings(khr2).into_iter().next()
}

/// Which divisor conventions gave an exact alternating quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientOutcome {
    /// `(1 - a^2 q^2)(1 - a^2 q^-2)`
    pub positive_a: bool,
    /// `(1 - a^-2 q^2)(1 - a^-2 q^-2)`
    pub negative_a: bool,
}

impl QuotientOutcome {
    pub fn any(&self) -> bool {
        self.positive_a || self.negative_a
    }
}

/// Divides `P(K) - P(T)` by both quotient conventions, `T` the `T(2, k)`
/// knot (or unknot) with the same `S`.
pub fn thin_quotient_test(homfly: &Poly3, s: i64) -> Result<QuotientOutcome> {
    let reference = sawtooth(s)?.at_t_minus_one();
    let diff = homfly - &reference;
    let test = |sa: i64| -> bool {
        let d = &(&Poly3::one() - &Poly3::mono(1, (sa, 2, 0)))
            * &(&Poly3::one() - &Poly3::mono(1, (sa, -2, 0)));
        match diff.exact_divide(&d) {
            Ok(q) => q.is_homfly_alternating().unwrap_or(false),
            Err(_) => false,
        }
    };
    Ok(QuotientOutcome { positive_a: test(2), negative_a: test(-2) })
}

/// Morton-type bounds `w - c + 1 <= a_min <= a_max <= w + c - 1`.
pub fn morton_check(p: &Poly3, writhe: i64, crossings: i64) -> bool {
    match p.degree_range(0) {
        Some((lo, hi)) => writhe - crossings < lo && hi < writhe + crossings,
        None => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedInvariants {
    pub g_h: i64,
    pub alexander: Poly3,
    /// `2 delta -> total multiplicity`
    pub delta_spectrum: BTreeMap<i64, BigInt>,
}

/// Twice the delta grading, `2t - 2a - q`.
pub fn delta2(e: Exp) -> i64 {
    2 * e.2 - 2 * e.0 - e.1
}

pub fn delta_spectrum(p: &Poly3) -> BTreeMap<i64, BigInt> {
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (e, c) in p.terms() {
        *out.entry(delta2(e)).or_insert_with(BigInt::zero) += c;
    }
    out
}

pub fn derived_invariants(p: &Poly3) -> Result<DerivedInvariants> {
    let max_q = p.degree_range(1).map(|r| r.1).unwrap_or(0);
    if max_q % 2 != 0 {
        return Err(Error::OddMaxQ(max_q));
    }
    let alexander = p
        .at_t_minus_one()
        .substitute(&Substitution::a_to(SignedMono::new(1, (0, 0, 0))));
    Ok(DerivedInvariants { g_h: max_q / 2, alexander, delta_spectrum: delta_spectrum(p) })
}

//! Closed forms for torus knots `T(n, m)`.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::laurent::{Exp, Poly3};
use crate::structchecks::pattern_plus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusKnotId {
    pub n: i64,
    pub m: i64,
}

impl TorusKnotId {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if n < 2 || m <= n || n.gcd(&m) != 1 {
            return Err(Error::Precondition(format!(
                "T({n},{m}) needs 2 <= n < m with gcd(n, m) = 1"
            )));
        }
        Ok(TorusKnotId { n, m })
    }

    /// `(n-1)(m-1)`.
    pub fn s_invariant(&self) -> i64 {
        (self.n - 1) * (self.m - 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomflyForm {
    Jones,
    Product,
}

fn mono(c: i64, e: Exp) -> Poly3 {
    Poly3::mono(c, e)
}

/// `q^k - q^-k`.
fn qint(k: i64) -> Poly3 {
    &mono(1, (0, k, 0)) - &mono(1, (0, -k, 0))
}

fn qfact(k: i64) -> Poly3 {
    (1..=k).fold(Poly3::one(), |acc, i| &acc * &qint(i))
}

/// Normalized HOMFLY polynomial of `T(n, m)`.
pub fn homfly_torus(id: TorusKnotId, form: HomflyForm) -> Result<Poly3> {
    match form {
        HomflyForm::Jones => homfly_jones(id),
        HomflyForm::Product => homfly_product(id),
    }
}

fn homfly_jones(TorusKnotId { n, m }: TorusKnotId) -> Result<Poly3> {
    // Scale every summand by [n-1]! so the quantum factorials in the
    // denominators become exact quotients, then divide once at the end.
    let big = qfact(n - 1);
    let mut sum = Poly3::zero();
    for beta in 0..n {
        let denom = &qfact(beta) * &qfact(n - 1 - beta);
        let mut term = big.exact_divide(&denom)?;
        for j in (beta - n + 1)..=beta {
            if j != 0 {
                term = &term * &(&mono(1, (1, j, 0)) - &mono(1, (-1, -j, 0)));
            }
        }
        let sign = if (n - 1 - beta) % 2 == 0 { 1 } else { -1 };
        term = term.shift((0, -m * (2 * beta - n + 1), 0));
        if sign < 0 {
            term = -term;
        }
        sum += &term;
    }
    let num = (&sum * &qint(1)).shift((m * (n - 1), 0, 0));
    num.exact_divide(&(&qint(n) * &big))
}

fn homfly_product(TorusKnotId { n, m }: TorusKnotId) -> Result<Poly3> {
    // Common denominator prod_{i<n} (q^{2i} - 1); each summand's own
    // denominator divides it exactly.
    let qm1 = |i: i64| &mono(1, (0, 2 * i, 0)) - &Poly3::one();
    let common = (1..n).fold(Poly3::one(), |acc, i| &acc * &qm1(i));
    let mut sum = Poly3::zero();
    for beta in 0..n {
        let gamma = n - 1 - beta;
        let own = (1..=beta).chain(1..=gamma).fold(Poly3::one(), |acc, i| &acc * &qm1(i));
        let mut term = common.exact_divide(&own)?;
        for i in 1..=beta {
            term = &term * &(&mono(1, (2, 2 * i, 0)) - &Poly3::one());
        }
        for j in 1..=gamma {
            // (a^2 - q^{2j}) / (1 - q^{2j}) = -(a^2 - q^{2j}) / (q^{2j} - 1)
            term = &term * &(&mono(-1, (2, 0, 0)) + &mono(1, (0, 2 * j, 0)));
        }
        sum += &term.shift((0, -2 * m * beta, 0));
    }
    let num = &sum * &(&Poly3::one() - &mono(1, (0, -2, 0)));
    let den = &(&Poly3::one() - &mono(1, (0, -2 * n, 0))) * &common;
    let s = (n - 1) * (m - 1);
    Ok(num.exact_divide(&den)?.shift((s, s, 0)))
}

/// Superpolynomial of `T(2, 2k+1)`.
pub fn super_t2(k: i64) -> Result<Poly3> {
    if k < 1 {
        return Err(Error::Precondition("super_t2 needs k >= 1".into()));
    }
    let mut out = Poly3::zero();
    for i in 0..=k {
        out.add_term((2 * k, 4 * i - 2 * k, 2 * i), 1.into());
    }
    for i in 1..=k {
        out.add_term((2 * k + 2, 4 * i - 2 * k - 2, 2 * i + 1), 1.into());
    }
    Ok(out)
}

fn t3_k(m: i64) -> Result<i64> {
    if m < 4 || m % 3 == 0 {
        return Err(Error::Precondition(format!("T(3,{m}) needs m >= 4 coprime to 3")));
    }
    Ok(m / 3)
}

/// Superpolynomial of `T(3, m)`.
pub fn super_t3(m: i64) -> Result<Poly3> {
    let k = t3_k(m)?;
    let mut out = Poly3::zero();
    let mut put = |e: Exp| out.add_term(e, 1.into());
    if m % 3 == 1 {
        for j in 0..=k {
            for i in 0..=3 * j {
                put((2 * m - 2, 6 * j - 4 * i, 4 * k + 2 * j - 2 * i));
            }
        }
        for j in 1..=k {
            for i in 0..=6 * j - 2 {
                put((2 * m, 6 * j - 2 * i - 2, 4 * k + 2 * j - 2 * (i / 2) + 1));
            }
        }
        for j in 0..k {
            for i in 0..=3 * j {
                put((2 * m + 2, 6 * j - 4 * i, 4 * k + 2 * j - 2 * i + 4));
            }
        }
    } else {
        for j in 0..=k {
            for i in 0..=3 * j + 1 {
                put((2 * m - 2, 6 * j - 4 * i + 2, 4 * k + 2 * j - 2 * i + 2));
            }
        }
        for j in 0..=k {
            for i in 0..=6 * j {
                put((2 * m, 6 * j - 2 * i, 4 * k + 2 * j - 2 * (i / 2) + 3));
            }
        }
        for j in 0..k {
            for i in 0..=3 * j + 1 {
                put((2 * m + 2, 6 * j - 4 * i + 2, 4 * k + 2 * j - 2 * i + 6));
            }
        }
    }
    Ok(out)
}

/// Differential degree of `d_N`.
pub fn diff_degree(n: i64) -> Exp {
    match n.signum() {
        1 => (-2, 2 * n, -1),
        0 => (-2, 0, -3),
        _ => (-2, 2 * n, -1 + 2 * n),
    }
}

/// Source gradings canceled by `d_2` (and by `d_0`) on `T(3, m)`, one
/// entry per canceled generator.
pub fn t3_killed_sources(m: i64) -> Result<Vec<Exp>> {
    let k = t3_k(m)?;
    let mut out = Vec::new();
    if m % 3 == 1 {
        for j in 1..=k {
            for i in 0..=3 * j - 2 {
                out.push((6 * k + 2, 6 * j - 4 * i - 4, 4 * k + 2 * j - 2 * i + 1));
            }
        }
        for j in 0..k {
            for i in 0..=3 * j {
                out.push((6 * k + 4, 6 * j - 4 * i, 4 * k + 2 * j - 2 * i + 4));
            }
        }
    } else {
        for j in 0..k {
            for i in 0..=3 * j + 1 {
                out.push((6 * k + 6, 6 * j - 4 * i + 2, 4 * k + 2 * j - 2 * i + 6));
            }
        }
        for j in 0..=k {
            for i in 0..3 * j {
                out.push((6 * k + 4, 6 * j - 4 * i - 2, 4 * k + 2 * j - 2 * i + 3));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Canceled sources and their images under `d_n`, `n` in {2, 0}.
pub fn t3_reduction_terms(m: i64, n: i64) -> Result<(Poly3, Poly3)> {
    if n != 2 && n != 0 {
        return Err(Error::Precondition("only d_2 and d_0 cancellations are tabulated".into()));
    }
    let src = t3_killed_sources(m)?;
    let deg = diff_degree(n);
    let killed = Poly3::from_exps(src.iter().copied());
    let images = killed.shift(deg);
    Ok((killed, images))
}

/// `d_n` homology of `T(3, m)` predicted by removing canceled pairs:
/// `a = q^2` regrading for `n = 2`, `(q, t - a)` regrading for `n = 0`.
pub fn t3_reduced(m: i64, n: i64) -> Result<Poly3> {
    let (killed, images) = t3_reduction_terms(m, n)?;
    let rest = &(&super_t3(m)? - &killed) - &images;
    if !rest.is_nonneg() {
        return Err(Error::NegativeCoefficient(format!("T(3,{m}) after d_{n} cancellation")));
    }
    Ok(if n == 2 { rest.at_a_q_power(2) } else { regrade_t_prime(&rest) })
}

/// `a^i q^j t^k -> q^j t^{k-i}`.
pub fn regrade_t_prime(p: &Poly3) -> Poly3 {
    let mut out = Poly3::zero();
    for ((ea, eq, et), c) in p.terms() {
        out.add_term((0, eq, et - ea), c.clone());
    }
    out
}

fn checked_nonneg(p: Poly3, what: &str) -> Result<Poly3> {
    if p.is_nonneg() {
        Ok(p)
    } else {
        Err(Error::NegativeCoefficient(what.to_string()))
    }
}

/// Closed form of reduced `KhR_2(T(3, m))`.
pub fn khr2_t3_closed(m: i64) -> Result<Poly3> {
    let k = t3_k(m)?;
    let period = Poly3::from_exps([(0, 0, 0), (0, 4, 2), (0, 6, 3), (0, 10, 5)]);
    let mut out = Poly3::zero();
    if m % 3 == 1 {
        for i in 0..k {
            out += &period.shift((0, 6 * k + 6 * i, 4 * i));
        }
        out.add_term((0, 12 * k, 4 * k), 1.into());
    } else {
        for i in 0..=k {
            out += &period.shift((0, 6 * k + 2 + 6 * i, 4 * i));
        }
        out.add_term((0, 12 * (k + 1), 4 * k + 5), (-1).into());
    }
    checked_nonneg(out, &format!("closed KhR_2 of T(3,{m})"))
}

/// Closed form of the `d_0` homology of `T(3, m)` in `(q, t')` gradings.
pub fn cp0_t3_closed(m: i64) -> Result<Poly3> {
    let k = t3_k(m)?;
    let mut out = Poly3::zero();
    let mut put = |q: i64, t: i64| out.add_term((0, q, t), 1.into());
    if m % 3 == 1 {
        put(0, -2 * k);
        for i in 1..=k {
            for (q, t) in [(6 * i, 2 * i), (6 * i - 2, 2 * i - 1), (-6 * i + 2, -4 * i + 1), (-6 * i, -4 * i)] {
                put(q, t - 2 * k);
            }
        }
    } else {
        for (q, t) in [(2, 1), (0, 0), (-2, -1)] {
            put(q, t - 2 * k - 1);
        }
        for i in 1..=k {
            for (q, t) in [(6 * i + 2, 2 * i + 1), (6 * i, 2 * i), (-6 * i, -4 * i), (-6 * i - 2, -4 * i - 1)] {
                put(q, t - 2 * k - 1);
            }
        }
    }
    checked_nonneg(out, &format!("closed d_0 homology of T(3,{m})"))
}

/// Knot Floer homology of `T(2, 2k+1)` as `q^{-2k} t^{-2k}` times a sum.
pub fn hfk_t2(k: i64) -> Result<Poly3> {
    if k < 1 {
        return Err(Error::Precondition("hfk_t2 needs k >= 1".into()));
    }
    let base = mono(1, (0, -2 * k, -2 * k));
    let mut sum = Poly3::zero();
    for i in 1..=k {
        sum.add_term((0, 4 * i, 2 * i), 1.into());
    }
    let pair = &Poly3::one() + &mono(1, (0, -2, -1));
    Ok(&base + &(&(&base * &pair) * &sum))
}

/// Unreduced superpolynomial from a reduced one with invariant `s`.
pub fn unreduce(cp: &Poly3, s: i64) -> Result<Poly3> {
    let (s_found, qplus) = pattern_plus(cp)?;
    if s_found != s {
        return Err(Error::Precondition(format!(
            "survivor grade S = {s_found} differs from the supplied S = {s}"
        )));
    }
    let unknot = &mono(1, (1, 0, 0)) - &mono(1, (-1, 0, 0));
    let lead = unknot.shift((s, -s, 0));
    let left = &mono(1, (0, -1, 0)) + &mono(1, (2, -1, 1));
    let right = &mono(1, (1, -1, 0)) - &mono(1, (-1, 1, 0));
    Ok(&lead + &(&(&left * &right) * &qplus))
}

/// Unreduced `sl(N)` prediction `pbar(a = q^N) / (q - q^-1)`.
pub fn khrn_unreduced_prediction(pbar: &Poly3, n: i64) -> Result<Poly3> {
    if n < 1 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    pbar.at_a_q_power(n).exact_divide(&qint(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaTerm {
    First,
    Last,
}

/// Series for the extreme-`beta` contributions, expanded in powers of
/// `q^-1` and cut below q-degree `-d`.
pub fn stable_beta_terms(n: i64, which: BetaTerm, d: i64) -> Result<Poly3> {
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let keep = |p: Poly3| p.filter(|e| e.1 >= -d);
    let mut out = Poly3::one();
    for j in 1..n {
        let num = match which {
            BetaTerm::First => &Poly3::one() + &mono(1, (2, -2 * j, 1)),
            BetaTerm::Last => &mono(1, (2, 0, 0)) + &mono(1, (0, -2 * j, -3)),
        };
        out = keep(&out * &num);
        let step = 2 * (j + 1);
        let mut geo = Poly3::zero();
        let mut r = 0;
        while r * step <= d {
            geo.add_term((0, -step * r, -2 * r), BigInt::from(1));
            r += 1;
        }
        out = keep(&out * &geo);
    }
    Ok(out)
}

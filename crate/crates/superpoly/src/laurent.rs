//! Sparse Laurent polynomials in `a`, `q`, `t` with arbitrary-precision
//! integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent triple `(a, q, t)`.
pub type Exp = (i64, i64, i64);

pub fn exp_add(x: Exp, y: Exp) -> Exp {
    (x.0 + y.0, x.1 + y.1, x.2 + y.2)
}

pub fn exp_sub(x: Exp, y: Exp) -> Exp {
    (x.0 - y.0, x.1 - y.1, x.2 - y.2)
}

pub fn exp_scale(x: Exp, k: i64) -> Exp {
    (x.0 * k, x.1 * k, x.2 * k)
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly3 {
    terms: BTreeMap<Exp, BigInt>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn one() -> Self {
        Poly3::mono(1, (0, 0, 0))
    }

    /// `c * a^ea q^eq t^et`.
    pub fn mono<C: Into<BigInt>>(c: C, e: Exp) -> Self {
        let mut p = Poly3::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, C)>,
        C: Into<BigInt>,
    {
        let mut p = Poly3::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Sum of `x^e` over the given exponents, each with coefficient one.
    pub fn from_exps<I: IntoIterator<Item = Exp>>(exps: I) -> Self {
        Poly3::from_terms(exps.into_iter().map(|e| (e, 1)))
    }

    pub fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff((0, 0, 0)).is_one()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Exp, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: Exp) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Lexicographically greatest term.
    pub fn leading(&self) -> Option<(Exp, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Lexicographically smallest term.
    pub fn trailing(&self) -> Option<(Exp, &BigInt)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Sum of coefficients; the dimension when `self` is a Poincaré polynomial.
    pub fn coeff_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn abs_coeff_sum(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn scale(&self, c: &BigInt) -> Poly3 {
        if c.is_zero() {
            return Poly3::zero();
        }
        Poly3 {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiply by the monomial `a^e.0 q^e.1 t^e.2`.
    pub fn shift(&self, e: Exp) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(f, c)| (exp_add(*f, e), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly3 {
        let mut out = Poly3::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Range of one coordinate (0 = a, 1 = q, 2 = t) over the support.
    pub fn degree_range(&self, var: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| pick(*e, var));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    pub fn filter<F: Fn(Exp) -> bool>(&self, keep: F) -> Poly3 {
        Poly3 {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(**e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Drop every term whose q-exponent exceeds `qmax`.
    pub fn truncate_q(&self, qmax: i64) -> Poly3 {
        self.filter(|e| e.1 <= qmax)
    }

    /// Multiply and drop terms with q-exponent above `qmax` as they arise.
    pub fn mul_truncated(&self, other: &Poly3, qmax: i64) -> Poly3 {
        let mut out = Poly3::zero();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let g = exp_add(*e, *f);
                if g.1 <= qmax {
                    out.add_term(g, c * d);
                }
            }
        }
        out
    }

    pub fn substitute(&self, s: &Substitution) -> Poly3 {
        let mut out = Poly3::zero();
        for (&(i, j, k), c) in &self.terms {
            let (sa, ea) = s.a.power(i);
            let (sq, eq) = s.q.power(j);
            let (st, et) = s.t.power(k);
            let e = exp_add(exp_add(ea, eq), et);
            let c = if sa * sq * st < 0 { -c.clone() } else { c.clone() };
            out.add_term(e, c);
        }
        out
    }

    /// Value at `t = -1`.
    pub fn at_t_minus_one(&self) -> Poly3 {
        self.substitute(&Substitution::t_to(SignedMono::new(-1, (0, 0, 0))))
    }

    /// Value at `a = q^n`, leaving `q` and `t` alone.
    pub fn at_a_q_power(&self, n: i64) -> Poly3 {
        self.substitute(&Substitution::a_to(SignedMono::new(1, (0, n, 0))))
    }

    /// `(a, q, t) -> (a^-1, q^-1, t^-1)`.
    pub fn mirror(&self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(e, c)| (exp_scale(*e, -1), c.clone())).collect(),
        }
    }

    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// True when a global sign `eps` makes every coefficient of
    /// `a^{2i} q^{2j}` carry the sign `eps (-1)^j`.
    pub fn is_homfly_alternating(&self) -> Result<bool> {
        let mut eps = 0i32;
        for (&(ea, eq, et), c) in &self.terms {
            if et != 0 {
                return Err(Error::Precondition(format!("t-exponent {et} in a HOMFLY polynomial")));
            }
            if ea.rem_euclid(2) != 0 || eq.rem_euclid(2) != 0 {
                return Err(Error::OddExponent((ea, eq, et)));
            }
            let j_sign = if (eq / 2).rem_euclid(2) == 0 { 1 } else { -1 };
            let s = if c.is_positive() { j_sign } else { -j_sign };
            if eps == 0 {
                eps = s;
            } else if eps != s {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact quotient by `d`, or `NotDivisible`.
    ///
    /// Term elimination against the lexicographically greatest term of `d`.
    /// Every quotient exponent must lie in the box forced by per-variable
    /// degree additivity, which bounds the loop.
    pub fn exact_divide(&self, d: &Poly3) -> Result<Poly3> {
        let (lead_e, lead_c) = match d.leading() {
            Some((e, c)) => (e, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(Poly3::zero());
        }
        let mut lo = [0i64; 3];
        let mut hi = [0i64; 3];
        for v in 0..3 {
            let (pl, ph) = self.degree_range(v).unwrap();
            let (dl, dh) = d.degree_range(v).unwrap();
            lo[v] = pl - dl;
            hi[v] = ph - dh;
            if lo[v] > hi[v] {
                return Err(Error::NotDivisible);
            }
        }
        let mut rem = self.clone();
        let mut quot = Poly3::zero();
        while let Some((e, c)) = rem.leading() {
            let qe = exp_sub(e, lead_e);
            let in_box = (0..3).all(|v| lo[v] <= pick(qe, v) && pick(qe, v) <= hi[v]);
            if !in_box {
                return Err(Error::NotDivisible);
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (f, dc) in &d.terms {
                rem.add_term(exp_add(*f, qe), -(&qc * dc));
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Rewrite in the basis `a^i t^j y^g`, `y = q^2 t + 2 + q^-2 t^-1`.
    pub fn y_rewrite(&self) -> Result<YExpansion> {
        let mut rem = self.clone();
        let mut coeffs = BTreeMap::new();
        loop {
            // term with the largest |eq|; ties broken by canonical order
            let pick_term = rem
                .terms
                .iter()
                .max_by_key(|(e, _)| (e.1.abs(), e.1 > 0))
                .map(|(e, c)| (*e, c.clone()));
            let Some(((ea, eq, et), c)) = pick_term else { break };
            if eq.rem_euclid(2) != 0 {
                return Err(Error::NotYExpressible((ea, eq, et)));
            }
            let g = eq / 2;
            if g < 0 {
                // a negative top degree with no positive partner left over
                return Err(Error::NotYExpressible((ea, eq, et)));
            }
            let key = (ea, et - g, g as u32);
            rem = &rem - &YExpansion::y_power(g as u32).shift((ea, 0, et - g)).scale(&c);
            let slot: &mut BigInt = coeffs.entry(key).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                coeffs.remove(&key);
            }
        }
        Ok(YExpansion { coeffs })
    }
}

fn pick(e: Exp, v: usize) -> i64 {
    match v {
        0 => e.0,
        1 => e.1,
        _ => e.2,
    }
}

/// `sign * a^ea q^eq t^et`, the image of one variable under a substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedMono {
    pub sign: i8,
    pub exp: Exp,
}

impl SignedMono {
    pub fn new(sign: i8, exp: Exp) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        SignedMono { sign, exp }
    }

    fn power(&self, k: i64) -> (i8, Exp) {
        let s = if self.sign < 0 && k.rem_euclid(2) == 1 { -1 } else { 1 };
        (s, exp_scale(self.exp, k))
    }
}

/// Simultaneous monomial substitution for `a`, `q`, `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub a: SignedMono,
    pub q: SignedMono,
    pub t: SignedMono,
}

impl Default for Substitution {
    fn default() -> Self {
        Substitution {
            a: SignedMono::new(1, (1, 0, 0)),
            q: SignedMono::new(1, (0, 1, 0)),
            t: SignedMono::new(1, (0, 0, 1)),
        }
    }
}

impl Substitution {
    pub fn a_to(m: SignedMono) -> Self {
        Substitution { a: m, ..Default::default() }
    }

    pub fn q_to(m: SignedMono) -> Self {
        Substitution { q: m, ..Default::default() }
    }

    pub fn t_to(m: SignedMono) -> Self {
        Substitution { t: m, ..Default::default() }
    }

    /// `(a, q, t) -> (a^-1, q^-1, t^-1)`.
    pub fn mirror() -> Self {
        Substitution {
            a: SignedMono::new(1, (-1, 0, 0)),
            q: SignedMono::new(1, (0, -1, 0)),
            t: SignedMono::new(1, (0, 0, -1)),
        }
    }
}

/// Coefficients of `a^i t^j y^g`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YExpansion {
    pub coeffs: BTreeMap<(i64, i64, u32), BigInt>,
}

impl YExpansion {
    /// `y^g = sum_j C(2g, j) q^{2(g-j)} t^{g-j}`.
    pub fn y_power(g: u32) -> Poly3 {
        let n = 2 * g as i64;
        let mut binom = BigInt::one();
        let mut out = Poly3::zero();
        for j in 0..=n {
            let d = g as i64 - j;
            out.add_term((0, 2 * d, d), binom.clone());
            binom = binom * (n - j) / (j + 1);
        }
        out
    }

    pub fn reconstruct(&self) -> Poly3 {
        let mut out = Poly3::zero();
        for (&(i, j, g), c) in &self.coeffs {
            out += &Self::y_power(g).shift((i, 0, j)).scale(c);
        }
        out
    }

    /// Highest power of `y` present.
    pub fn max_genus(&self) -> u32 {
        self.coeffs.keys().map(|k| k.2).max().unwrap_or(0)
    }
}

impl Add<&Poly3> for &Poly3 {
    type Output = Poly3;
    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly3> for &Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly3> for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term(exp_add(*e, *f), c * d);
            }
        }
        out
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl AddAssign<&Poly3> for Poly3 {
    fn add_assign(&mut self, rhs: &Poly3) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&Poly3> for Poly3 {
    fn sub_assign(&mut self, rhs: &Poly3) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly3> for Poly3 {
            type Output = Poly3;
            fn $m(self, rhs: Poly3) -> Poly3 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly3> for Poly3 {
            type Output = Poly3;
            fn $m(self, rhs: &Poly3) -> Poly3 {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        -&self
    }
}

impl fmt::Display for Poly3 {
    /// Canonical text: `c*a^i*q^j*t^k` terms in ascending exponent order,
    /// joined by ` + ` / ` - `; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((ea, eq, et), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write!(f, "{mag}*a^{ea}*q^{eq}*t^{et}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly3({self})")
    }
}

impl FromStr for Poly3 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly3> {
        Parser { src: s.as_bytes(), pos: 0 }.poly()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn poly(&mut self) -> Result<Poly3> {
        let mut out = Poly3::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return Err(self.err("empty polynomial")),
            _ => 1,
        };
        loop {
            let (c, e) = self.term()?;
            out.add_term(e, if sign < 0 { -c } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("expected '+', '-' or end of input")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(BigInt, Exp)> {
        let mut coeff = BigInt::one();
        let mut e = (0, 0, 0);
        let mut need_factor = true;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            coeff = self.digits()?;
            need_factor = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                need_factor = true;
            }
        }
        if need_factor {
            loop {
                let v = match self.peek() {
                    Some(b'a') => 0,
                    Some(b'q') => 1,
                    Some(b't') => 2,
                    _ => return Err(self.err("expected a, q or t")),
                };
                self.pos += 1;
                let mut k = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    k = self.signed_int()?;
                }
                match v {
                    0 => e.0 += k,
                    1 => e.1 += k,
                    _ => e.2 += k,
                }
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Ok((coeff, e))
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let at = self.pos;
        let v = self.digits()?;
        let v: i64 = i64::try_from(v).map_err(|_| Error::Parse {
            pos: at,
            msg: "exponent out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }
}

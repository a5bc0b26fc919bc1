//! Stable limits of torus knots as `m -> infinity`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complex::{anticommute_rows, sawtooth_complex, DiffMatrix, DotComplex};
use crate::error::{Error, Result};
use crate::laurent::{exp_add, Exp, Poly3};
use crate::linalg::generic_kernel_point;
use crate::torus::{khr2_t3_closed, super_t2, super_t3, TorusKnotId};

/// Power series in `q` kept up to `q^qmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    pub body: Poly3,
    pub qmax: i64,
}

impl TruncSeries {
    pub fn new(body: &Poly3, qmax: i64) -> Self {
        TruncSeries { body: body.truncate_q(qmax), qmax }
    }

    pub fn one(qmax: i64) -> Self {
        Self::new(&Poly3::one(), qmax)
    }

    /// `1 / (1 - m)` for a monomial `m` of positive q-degree.
    pub fn geometric(step: Exp, qmax: i64) -> Self {
        assert!(step.1 > 0, "geometric series needs a positive q step");
        let mut body = Poly3::zero();
        let mut e = (0, 0, 0);
        while e.1 <= qmax {
            body.add_term(e, BigInt::one());
            e = exp_add(e, step);
        }
        TruncSeries { body, qmax }
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let qmax = self.qmax.min(other.qmax);
        TruncSeries { body: self.body.mul_truncated(&other.body, qmax), qmax }
    }

    pub fn mul_poly(&self, p: &Poly3) -> TruncSeries {
        TruncSeries { body: self.body.mul_truncated(p, self.qmax), qmax: self.qmax }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let qmax = self.qmax.min(other.qmax);
        TruncSeries::new(&(&self.body + &other.body), qmax)
    }

    /// Poly3 text preceded by a `# qmax=<D>` line.
    pub fn to_text(&self) -> String {
        format!("# qmax={}\n{}\n", self.qmax, self.body)
    }
}

fn geo(step: Exp, qmax: i64) -> TruncSeries {
    TruncSeries::geometric(step, qmax)
}

fn binom(e: Exp) -> Poly3 {
    &Poly3::one() + &Poly3::mono(1, e)
}

fn check_n(n: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("stable limit needs n >= 2, got {n}")));
    }
    Ok(())
}

/// Stable superpolynomial of `T(n, infinity)`:
/// `prod_{j<n} (1 + a^2 q^2j t^{2j+1}) / prod_{2<=j<=n} (1 - q^2j t^{2j-2})`.
pub fn stable_super(n: i64, qmax: i64) -> Result<TruncSeries> {
    check_n(n)?;
    let mut s = TruncSeries::one(qmax);
    for j in 1..n {
        s = s.mul_poly(&binom((2, 2 * j, 2 * j + 1)));
    }
    for j in 2..=n {
        s = s.mul(&geo((0, 2 * j, 2 * j - 2), qmax));
    }
    Ok(s)
}

/// Stable HOMFLY polynomial
/// `(1 - q^2)/(1 - q^2n) prod_{j<n} (1 - a^2 q^2j)/(1 - q^2j)`.
pub fn stable_homfly(n: i64, qmax: i64) -> Result<TruncSeries> {
    check_n(n)?;
    let mut s = TruncSeries::one(qmax).mul_poly(&(&Poly3::one() - &Poly3::mono(1, (0, 2, 0))));
    s = s.mul(&geo((0, 2 * n, 0), qmax));
    for j in 1..n {
        s = s.mul_poly(&(&Poly3::one() - &Poly3::mono(1, (2, 2 * j, 0))));
        s = s.mul(&geo((0, 2 * j, 0), qmax));
    }
    Ok(s)
}

/// Stable knot Floer homology `(1 + q^2 t) sum_i q^{2ni} t^{2(n-1)i}`.
pub fn stable_hfk(n: i64, qmax: i64) -> Result<TruncSeries> {
    check_n(n)?;
    Ok(geo((0, 2 * n, 2 * n - 2), qmax).mul_poly(&binom((0, 2, 1))))
}

/// Closed forms of stable reduced `KhR_2` for `n` in 2..=4.
pub fn stable_khr2_closed(n: i64, qmax: i64) -> Result<TruncSeries> {
    let p = |s: &str| -> Poly3 { s.parse().expect("literal") };
    Ok(match n {
        2 => geo((0, 4, 2), qmax).mul_poly(&binom((0, 6, 3))),
        3 => geo((0, 6, 4), qmax).mul_poly(&p("1 + q^4*t^2 + q^6*t^3 + q^10*t^5")),
        4 => {
            let tail = geo((0, 6, 4), qmax).mul_poly(&p("q^6*t^4 + q^14*t^9"));
            let bracket = TruncSeries::new(&p("1 + q^4*t^2"), qmax).add(&tail);
            bracket.mul(&geo((0, 8, 6), qmax)).mul_poly(&binom((0, 6, 3)))
        }
        _ => return Err(Error::Precondition(format!("no closed stable KhR_2 for n = {n}"))),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

/// Path of `(side, block index)` pairs from level `n` down to level 2.
pub type BlockKey = Vec<(Side, i64)>;

/// Materialized recursive complex of `T(n, infinity)` up to `q^qmax`.
#[derive(Clone, Debug)]
pub struct BlockComplex {
    pub n: i64,
    pub qmax: i64,
    pub complex: DotComplex,
    pub keys: Vec<BlockKey>,
    /// `d_2`, built only on request since it needs a generic choice.
    pub d2: Option<DiffMatrix>,
}

impl BlockComplex {
    /// Generators far enough from the cutoff that every arrow touching
    /// them is present.
    pub fn interior(&self) -> impl Fn(Exp) -> bool {
        let lim = self.qmax - 2 * self.n;
        move |e: Exp| e.1 <= lim
    }
}

pub fn build_stable_complex(n: i64, qmax: i64) -> Result<BlockComplex> {
    check_n(n)?;
    if qmax < 0 {
        return Err(Error::Precondition("qmax must be nonnegative".into()));
    }
    Ok(build_level(n, qmax, false))
}

/// As `build_stable_complex`, with a generic `d_2` attached.
pub fn build_stable_d2(n: i64, qmax: i64) -> Result<BlockComplex> {
    check_n(n)?;
    Ok(build_level(n, qmax, true))
}

fn build_level(n: i64, qmax: i64, with_d2: bool) -> BlockComplex {
    if n == 1 {
        return BlockComplex {
            n,
            qmax,
            complex: DotComplex::new(vec![(0, 0, 0)]),
            keys: vec![vec![]],
            d2: with_d2.then(DiffMatrix::new),
        };
    }
    let inner = build_level(n - 1, qmax, with_d2);
    let period = (0, 2 * n, 2 * n - 2);
    let a_shift = (2, 2 * n - 2, 2 * n - 1);
    let mut gens = Vec::new();
    let mut keys = Vec::new();
    let mut idx: BTreeMap<(Side, i64, usize), usize> = BTreeMap::new();
    let mut i = 0;
    while i * period.1 <= qmax {
        for side in [Side::B, Side::A] {
            let mut shift = (0, i * period.1, i * period.2);
            if side == Side::A {
                shift = exp_add(shift, a_shift);
            }
            for (x, (g, k)) in inner.complex.generators.iter().zip(&inner.keys).enumerate() {
                let e = exp_add(*g, shift);
                if e.1 <= qmax {
                    idx.insert((side, i, x), gens.len());
                    gens.push(e);
                    let mut key = vec![(side, i)];
                    key.extend_from_slice(k);
                    keys.push(key);
                }
            }
        }
        i += 1;
    }
    let inner_pos: BTreeMap<&BlockKey, usize> = inner.keys.iter().enumerate().map(|(x, k)| (k, x)).collect();
    let mut cx = DotComplex::new(gens);
    let lift = |m: &DiffMatrix, out: &mut DiffMatrix| {
        for (&(side, i, x), &a) in &idx {
            for (&(_, t), c) in m.range((x, 0)..=(x, usize::MAX)) {
                if let Some(&b) = idx.get(&(side, i, t)) {
                    out.insert((a, b), if side == Side::B { c.clone() } else { -c.clone() });
                }
            }
        }
    };
    for (&dn, m) in &inner.complex.diffs {
        let mut lifted = DiffMatrix::new();
        lift(m, &mut lifted);
        for ((a, b), c) in lifted {
            cx.set(dn, a, b, c);
        }
    }
    let one = BigRational::one;
    for (&(side, i, x), &a) in &idx {
        if side != Side::A {
            continue;
        }
        if let Some(&b) = idx.get(&(Side::B, i, x)) {
            cx.set(-(n - 1), a, b, one());
        }
        if let Some(&b) = idx.get(&(Side::B, i + 1, x)) {
            cx.set(1, a, b, one());
        }
        if n >= 3 {
            // psi: next block of the level below
            let mut k = inner.keys[x].clone();
            k[0].1 += 1;
            if let Some(&y) = inner_pos.get(&k) {
                if let Some(&b) = idx.get(&(Side::B, i, y)) {
                    cx.set(0, a, b, one());
                }
            }
        }
    }
    let d2 = inner.d2.as_ref().map(|inner_d2| {
        let mut fixed = DiffMatrix::new();
        lift(inner_d2, &mut fixed);
        if n >= 3 {
            let deg = crate::torus::diff_degree(2);
            let mut by_grade: BTreeMap<(Exp, i64), Vec<usize>> = BTreeMap::new();
            for (&(side, i, _), &b) in &idx {
                if side == Side::B {
                    by_grade.entry((cx.generators[b], i)).or_default().push(b);
                }
            }
            let mut vars = Vec::new();
            for (&(side, i, _), &a) in &idx {
                if side == Side::A {
                    let target = exp_add(cx.generators[a], deg);
                    for &b in by_grade.get(&(target, i)).into_iter().flatten() {
                        vars.push((a, b));
                    }
                }
            }
            let rows = anticommute_rows(&fixed, &vars);
            let sol = generic_kernel_point(&rows, vars.len());
            for (v, c) in vars.into_iter().zip(sol) {
                if !c.is_zero() {
                    fixed.insert(v, c);
                }
            }
        }
        fixed
    });
    BlockComplex { n, qmax, complex: cx, keys, d2 }
}

/// Stable `KhR_2` by both routes; they must agree.
pub fn stable_khr2(n: i64, qmax: i64) -> Result<TruncSeries> {
    let closed = stable_khr2_closed(n, qmax)?;
    let generic = stable_khr2_generic(n, qmax)?;
    if closed != generic {
        let diff = &closed.body - &generic.body;
        let first = diff.terms().map(|(e, _)| e.1).min().unwrap_or(qmax);
        return Err(Error::GenericityMismatch(first));
    }
    Ok(closed)
}

/// `d_2` homology of the block complex, graded by `(2a + q, t)`.
pub fn stable_khr2_generic(n: i64, qmax: i64) -> Result<TruncSeries> {
    let b = build_stable_d2(n, qmax)?;
    let mut cx = DotComplex::new(b.complex.generators.clone());
    cx.diffs.insert(2, b.d2.unwrap_or_default());
    Ok(TruncSeries::new(&cx.homology(2)?.poincare, qmax))
}

/// `d_0` homology of the block complex, graded by `(q, t - a)`.
pub fn stable_d0_homology(n: i64, qmax: i64) -> Result<TruncSeries> {
    let b = build_stable_complex(n, qmax)?;
    Ok(TruncSeries::new(&b.complex.homology(0)?.poincare, qmax))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitKind {
    Super,
    Khr2,
}

/// Largest `D` such that the normalized finite invariant of `T(n, m)` and
/// the stable series agree in every term of q-degree `<= D`.
pub fn finite_vs_stable(n: i64, m: i64, kind: LimitKind) -> Result<i64> {
    let id = TorusKnotId::new(n, m)?;
    let s = (m - 1) * (n - 1);
    let finite = match (kind, id.n) {
        (LimitKind::Super, 2) => super_t2((m - 1) / 2)?.shift((-s, s, 0)),
        (LimitKind::Super, 3) => super_t3(m)?.shift((-s, s, 0)),
        (LimitKind::Khr2, 2) => sawtooth_complex((m - 1) / 2).homology(2)?.poincare.shift((0, -s, 0)),
        (LimitKind::Khr2, 3) => khr2_t3_closed(m)?.shift((0, -s, 0)),
        _ => return Err(Error::Precondition("finite_vs_stable supports n = 2 and n = 3".into())),
    };
    let top = finite.degree_range(1).map(|r| r.1).unwrap_or(0).max(0);
    let cap = top + 2 * n + 2;
    let stable = match kind {
        LimitKind::Super => stable_super(n, cap)?,
        LimitKind::Khr2 => stable_khr2_closed(n, cap)?,
    };
    let diff = &finite.truncate_q(cap) - &stable.body;
    Ok(diff.terms().map(|(e, _)| e.1 - 1).min().unwrap_or(cap))
}

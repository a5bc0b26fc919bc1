//! Triply graded dot-diagram complexes with the differentials `d_N`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{exp_add, Exp, Poly3};
use crate::linalg::{generic_kernel_point, nullspace, rational_rank};
use crate::structchecks::{delta2, pattern_minus, pattern_plus, ThinResult};
use crate::torus::{diff_degree, super_t3, t3_killed_sources, TorusKnotId};

/// Sparse matrix of one differential, keyed by `(src, dst)`.
pub type DiffMatrix = BTreeMap<(usize, usize), BigRational>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DotComplex {
    pub generators: Vec<Exp>,
    pub diffs: BTreeMap<i64, DiffMatrix>,
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IndexOutOfRange { n: i64, src: usize, dst: usize },
    Grading { n: i64, src: usize, dst: usize },
    SquareNonzero { n: i64, src: usize, dst: usize },
    Anticommute { n: i64, m: i64, src: usize, dst: usize },
    Symmetry(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
    /// `2 delta -> number of generators`
    pub delta_spectrum: BTreeMap<i64, usize>,
    pub thin: bool,
    pub symmetric: bool,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub n: i64,
    pub poincare: Poly3,
    /// amalgamated bigrade `(p, k)` -> dimension
    pub dims: BTreeMap<(i64, i64), usize>,
    pub rank: usize,
}

impl HomologyReport {
    pub fn dimension(&self) -> usize {
        self.dims.values().sum()
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl DotComplex {
    pub fn new(generators: Vec<Exp>) -> Self {
        DotComplex { generators, ..Default::default() }
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn set(&mut self, n: i64, src: usize, dst: usize, c: BigRational) {
        let m = self.diffs.entry(n).or_default();
        if c.is_zero() {
            m.remove(&(src, dst));
        } else {
            m.insert((src, dst), c);
        }
    }

    pub fn diff(&self, n: i64) -> Option<&DiffMatrix> {
        self.diffs.get(&n).filter(|m| !m.is_empty())
    }

    pub fn poincare(&self) -> Poly3 {
        Poly3::from_exps(self.generators.iter().copied())
    }

    /// Disjoint union, reindexing `other` after `self`.
    pub fn direct_sum(&mut self, other: &DotComplex) {
        let off = self.generators.len();
        self.generators.extend_from_slice(&other.generators);
        for (n, m) in &other.diffs {
            for ((s, d), c) in m {
                self.set(*n, s + off, d + off, c.clone());
            }
        }
    }

    /// Gradings negated and arrows reversed; `d_N` stays `d_N`.
    pub fn mirror(&self) -> DotComplex {
        let generators = self.generators.iter().map(|e| (-e.0, -e.1, -e.2)).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(n, m)| (*n, m.iter().map(|((s, d), c)| ((*d, *s), c.clone())).collect()))
            .collect();
        DotComplex { generators, diffs, label: self.label.as_ref().map(|l| format!("mirror {l}")) }
    }

    fn composite(&self, outer: &DiffMatrix, inner: &DiffMatrix) -> DiffMatrix {
        // (outer . inner)[s -> u] = sum_t inner[s -> t] outer[t -> u]
        let mut by_src: BTreeMap<usize, Vec<(usize, &BigRational)>> = BTreeMap::new();
        for ((t, u), c) in outer {
            by_src.entry(*t).or_default().push((*u, c));
        }
        let mut out = DiffMatrix::new();
        for ((s, t), c) in inner {
            if let Some(next) = by_src.get(t) {
                for (u, c2) in next {
                    let e = out.entry((*s, *u)).or_insert_with(BigRational::zero);
                    *e += c * *c2;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Check degrees, `d_N^2 = 0`, pairwise anticommutativity, symmetry of
    /// the Poincaré polynomial and the delta spectrum.
    pub fn verify(&self) -> VerifyReport {
        let mut r = self.verify_where(|_| true);
        if let Err(e) = self.poincare().y_rewrite() {
            r.violations.push(Violation::Symmetry(e.to_string()));
        }
        r
    }

    /// Degrees and algebraic identities only, the latter checked between
    /// generators accepted by `keep`.  Symmetry is recorded in the report
    /// but not counted as a violation, since truncated complexes lack it.
    pub fn verify_where<F: Fn(Exp) -> bool>(&self, keep: F) -> VerifyReport {
        let mut violations = Vec::new();
        let g = &self.generators;
        for (&n, m) in &self.diffs {
            for &(src, dst) in m.keys() {
                if src >= g.len() || dst >= g.len() {
                    violations.push(Violation::IndexOutOfRange { n, src, dst });
                } else if exp_add(g[src], diff_degree(n)) != g[dst] {
                    violations.push(Violation::Grading { n, src, dst });
                }
            }
        }
        if violations.is_empty() {
            let keys: Vec<i64> = self.diffs.keys().copied().collect();
            for (i, &n) in keys.iter().enumerate() {
                for &m in &keys[i..] {
                    let dn = &self.diffs[&n];
                    let dm = &self.diffs[&m];
                    let mut total = self.composite(dn, dm);
                    if n != m {
                        for (k, v) in self.composite(dm, dn) {
                            let e = total.entry(k).or_insert_with(BigRational::zero);
                            *e += v;
                        }
                        total.retain(|_, v| !v.is_zero());
                    }
                    for &(src, dst) in total.keys() {
                        if !keep(g[src]) || !keep(g[dst]) {
                            continue;
                        }
                        violations.push(if n == m {
                            Violation::SquareNonzero { n, src, dst }
                        } else {
                            Violation::Anticommute { n, m, src, dst }
                        });
                    }
                }
            }
        }
        let symmetric = self.poincare().y_rewrite().is_ok();
        let mut delta_spectrum = BTreeMap::new();
        for e in g {
            *delta_spectrum.entry(delta2(*e)).or_insert(0) += 1;
        }
        let thin = delta_spectrum.len() <= 1;
        VerifyReport { violations, delta_spectrum, thin, symmetric }
    }

    /// Amalgamated bigrade of a generator for the `d_n` homology.
    pub fn bigrade(n: i64, e: Exp) -> (i64, i64) {
        if n == 0 {
            (e.1, e.2 - e.0)
        } else {
            (n * e.0 + e.1, e.2)
        }
    }

    /// Homology of `d_n`, computed block by block over the rationals.
    pub fn homology(&self, n: i64) -> Result<HomologyReport> {
        let g = &self.generators;
        let empty = DiffMatrix::new();
        let d = self.diffs.get(&n).unwrap_or(&empty);
        let deg = diff_degree(n);
        for &(src, dst) in d.keys() {
            if src >= g.len() || dst >= g.len() || exp_add(g[src], deg) != g[dst] {
                return Err(Error::GradingMismatch { n, src, dst });
            }
        }
        let mut blocks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (i, e) in g.iter().enumerate() {
            blocks.entry(Self::bigrade(n, *e)).or_default().push(i);
        }
        let pos: BTreeMap<usize, usize> = blocks
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(k, &i)| (i, k)))
            .collect();
        // group matrix entries by source block
        type Entries<'a> = Vec<(usize, usize, &'a BigRational)>;
        let mut by_block: BTreeMap<(i64, i64), Entries> = BTreeMap::new();
        for ((s, t), c) in d {
            by_block.entry(Self::bigrade(n, g[*s])).or_default().push((*s, *t, c));
        }
        let mut out_rank: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        let mut in_rank: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (b, entries) in &by_block {
            let target = Self::bigrade(n, g[entries[0].1]);
            let rows = blocks[&target].len();
            let cols = blocks[b].len();
            let mut m = vec![vec![BigRational::zero(); cols]; rows];
            for (s, t, c) in entries {
                m[pos[t]][pos[s]] = (*c).clone();
            }
            let r = rational_rank(&m);
            out_rank.insert(*b, r);
            *in_rank.entry(target).or_insert(0) += r;
        }
        let mut dims = BTreeMap::new();
        let mut poincare = Poly3::zero();
        let mut rank = 0;
        for (b, members) in &blocks {
            let o = out_rank.get(b).copied().unwrap_or(0);
            let i = in_rank.get(b).copied().unwrap_or(0);
            rank += o;
            let dim = members.len() - o - i;
            if dim > 0 {
                dims.insert(*b, dim);
                poincare.add_term((0, b.0, b.1), BigInt::from(dim));
            }
        }
        Ok(HomologyReport { n, poincare, dims, rank })
    }

    /// `S` from the unique `d_1` survivor, located through the
    /// a-filtration: the least `s` with a cycle in `{a <= s}` that is not
    /// a boundary.
    pub fn s_invariant(&self) -> Result<i64> {
        let h = self.homology(1)?;
        if h.dimension() != 1 {
            return Err(Error::NotCanceling(h.dimension()));
        }
        let (&(p, k), _) = h.dims.iter().next().unwrap();
        let g = &self.generators;
        let empty = DiffMatrix::new();
        let d = self.diffs.get(&1).unwrap_or(&empty);
        let members: Vec<usize> =
            (0..g.len()).filter(|&i| Self::bigrade(1, g[i]) == (p, k)).collect();
        let idx: BTreeMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        // boundaries landing in the block
        let mut sources: BTreeSet<usize> = BTreeSet::new();
        for &(s, t) in d.keys() {
            if idx.contains_key(&t) {
                sources.insert(s);
            }
        }
        let src_list: Vec<usize> = sources.into_iter().collect();
        let mut boundary: Vec<Vec<BigRational>> = Vec::new();
        for &s in &src_list {
            let mut v = vec![BigRational::zero(); members.len()];
            for (&(s2, t), c) in d.range((s, 0)..=(s, usize::MAX)) {
                debug_assert_eq!(s2, s);
                if let Some(&k) = idx.get(&t) {
                    v[k] = c.clone();
                }
            }
            boundary.push(v);
        }
        let b_rank = rational_rank(&boundary);
        let mut levels: Vec<i64> = members.iter().map(|&i| g[i].0).collect();
        levels.sort();
        levels.dedup();
        for &s in &levels {
            // cycles supported on block members with a <= s
            let support: Vec<usize> = members.iter().copied().filter(|&i| g[i].0 <= s).collect();
            let mut out_targets: BTreeMap<usize, usize> = BTreeMap::new();
            for &i in &support {
                for (&(_, t), _) in d.range((i, 0)..=(i, usize::MAX)) {
                    let n = out_targets.len();
                    out_targets.entry(t).or_insert(n);
                }
            }
            let mut m = vec![vec![BigRational::zero(); support.len()]; out_targets.len()];
            for (col, &i) in support.iter().enumerate() {
                for (&(_, t), c) in d.range((i, 0)..=(i, usize::MAX)) {
                    m[out_targets[&t]][col] = c.clone();
                }
            }
            let cycles = nullspace(&m, support.len());
            let mut stacked = boundary.clone();
            for z in cycles {
                let mut v = vec![BigRational::zero(); members.len()];
                for (col, &i) in support.iter().enumerate() {
                    v[idx[&i]] = z[col].clone();
                }
                stacked.push(v);
            }
            if rational_rank(&stacked) > b_rank {
                let e = (s, p - s, k);
                if e.1 != -e.0 || e.2 != 0 {
                    return Err(Error::SurvivorOffLine(e));
                }
                return Ok(s);
            }
        }
        Err(Error::NotCanceling(0))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(l) = &self.label {
            let _ = writeln!(out, "# label: {l}");
        }
        for (i, e) in self.generators.iter().enumerate() {
            let _ = writeln!(out, "gen {i} {} {} {}", e.0, e.1, e.2);
        }
        for (n, m) in &self.diffs {
            for ((s, d), c) in m {
                let _ = writeln!(out, "diff {n} {s} {d} {}/{}", c.numer(), c.denom());
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<DotComplex> {
        let mut c = DotComplex::default();
        let mut pending = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let err = |msg: &str| Error::ParseLine { line, msg: msg.to_string() };
            let trimmed = raw.trim();
            if let Some(rest) = trimmed.strip_prefix('#') {
                if let Some(l) = rest.trim().strip_prefix("label:") {
                    c.label = Some(l.trim().to_string());
                }
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            let f: Vec<&str> = trimmed.split_whitespace().collect();
            let int = |s: &str| s.parse::<i64>().map_err(|_| err(&format!("bad integer '{s}'")));
            match f[0] {
                "gen" => {
                    if f.len() != 5 {
                        return Err(err("gen needs: gen <id> <ea> <eq> <et>"));
                    }
                    let id = int(f[1])?;
                    if id != c.generators.len() as i64 {
                        return Err(err("generator ids must be dense and in order from 0"));
                    }
                    c.generators.push((int(f[2])?, int(f[3])?, int(f[4])?));
                }
                "diff" => {
                    if f.len() != 5 {
                        return Err(err("diff needs: diff <N> <src> <dst> <num>/<den>"));
                    }
                    let n = int(f[1])?;
                    let s = int(f[2])?;
                    let d = int(f[3])?;
                    let (num, den) = f[4].split_once('/').ok_or_else(|| err("coefficient must be num/den"))?;
                    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
                    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
                    if den <= BigInt::zero() {
                        return Err(err("denominator must be positive"));
                    }
                    if s < 0 || d < 0 {
                        return Err(err("negative generator index"));
                    }
                    pending.push((line, n, s as usize, d as usize, BigRational::new(num, den)));
                }
                other => return Err(err(&format!("unknown record '{other}'"))),
            }
        }
        for (line, n, s, d, coeff) in pending {
            if s >= c.generators.len() || d >= c.generators.len() {
                return Err(Error::ParseLine { line, msg: "dangling generator index".into() });
            }
            let m = c.diffs.entry(n).or_default();
            if m.contains_key(&(s, d)) {
                return Err(Error::ParseLine { line, msg: "duplicate (N, src, dst)".into() });
            }
            if !coeff.is_zero() {
                m.insert((s, d), coeff);
            }
        }
        Ok(c)
    }
}

/// Zigzag complex of `T(2, 2k+1)`: `d_1` and `d_{-1}` from each top dot to
/// its two lower neighbours.
pub fn sawtooth_complex(k: i64) -> DotComplex {
    let mut c = DotComplex::default();
    for i in 0..=k {
        c.generators.push((2 * k, 4 * i - 2 * k, 2 * i));
    }
    for i in 1..=k {
        let top = c.generators.len();
        c.generators.push((2 * k + 2, 4 * i - 2 * k - 2, 2 * i + 1));
        c.set(1, top, i as usize, BigRational::one());
        c.set(-1, top, (i - 1) as usize, BigRational::one());
    }
    c
}

/// One bicanceling square with top corner `e`.
pub fn square_complex(e: Exp) -> DotComplex {
    let x = exp_add(e, (-2, 2, -1));
    let y = exp_add(e, (-2, -2, -3));
    let z = exp_add(e, (-4, 0, -4));
    let mut c = DotComplex::new(vec![e, x, y, z]);
    c.set(1, 0, 1, rat(1));
    c.set(1, 2, 3, rat(1));
    c.set(-1, 0, 2, rat(1));
    c.set(-1, 1, 3, rat(-1));
    c
}

/// Sawtooth plus one square per monomial of `Q` (with multiplicity).
pub fn thin_complex(r: &ThinResult) -> Result<DotComplex> {
    let mut c = match r.s.signum() {
        0 => DotComplex::new(vec![(0, 0, 0)]),
        1 => sawtooth_complex(r.s / 2),
        _ => sawtooth_complex(-r.s / 2).mirror(),
    };
    c.label = None;
    for (e, mult) in r.squares_q.terms() {
        let times: usize = mult
            .try_into()
            .map_err(|_| Error::Precondition("square multiplicity out of range".into()))?;
        for _ in 0..times {
            c.direct_sum(&square_complex(e));
        }
    }
    Ok(c)
}

/// Complex for `T(2, m)` or `T(3, m)`; the result has been verified.
pub fn build_torus_complex(id: TorusKnotId) -> Result<DotComplex> {
    let c = match id.n {
        2 => sawtooth_complex((id.m - 1) / 2),
        3 => build_t3_complex(id.m)?,
        _ => return Err(Error::Precondition("only n = 2 and n = 3 are supported".into())),
    };
    let c = c.with_label(&format!("T({},{})", id.n, id.m));
    let report = c.verify();
    if !report.ok() {
        return Err(Error::ConstructionFailed(format!(
            "T({},{}): {} axiom violations, first {:?}",
            id.n,
            id.m,
            report.violations.len(),
            report.violations[0]
        )));
    }
    Ok(c)
}

/// `phi: (a, q, t) -> (a, -q, t - q)`.
fn phi(e: Exp) -> Exp {
    (e.0, -e.1, e.2 - e.1)
}

/// Grading-level edges `(N, src grading, dst grading)` with multiplicity.
fn t3_grading_edges(p: &Poly3) -> Result<Vec<(i64, Exp, Exp)>> {
    let mut edges = Vec::new();
    let (_, qplus) = pattern_plus(p)?;
    for (e, c) in qplus.terms() {
        for _ in 0..to_usize(c)? {
            edges.push((1, exp_add(e, (2, -2, 1)), e));
        }
    }
    let (_, qminus) = pattern_minus(p)?;
    for (e, c) in qminus.terms() {
        for _ in 0..to_usize(c)? {
            edges.push((-1, exp_add(e, (2, 2, 3)), e));
        }
    }
    Ok(edges)
}

fn to_usize(c: &BigInt) -> Result<usize> {
    c.try_into().map_err(|_| Error::Precondition("multiplicity out of range".into()))
}

fn build_t3_complex(m: i64) -> Result<DotComplex> {
    let p = super_t3(m)?;
    let mut gens = Vec::new();
    let mut copies: BTreeMap<Exp, Vec<usize>> = BTreeMap::new();
    for (e, c) in p.terms() {
        for _ in 0..to_usize(c)? {
            copies.entry(e).or_default().push(gens.len());
            gens.push(e);
        }
    }
    let mut cx = DotComplex::new(gens);

    // d_1 and d_{-1}: matchings read off the two pattern quotients, with
    // copies chosen so every composite has an even number of paths.
    let edges = t3_grading_edges(&p)?;
    let chosen = match_copies(&edges, &copies)
        .ok_or_else(|| Error::ConstructionFailed(format!("T(3,{m}): no copy matching for d_1, d_-1")))?;
    let signs = solve_signs(&chosen)
        .ok_or_else(|| Error::ConstructionFailed(format!("T(3,{m}): sign system inconsistent")))?;
    for ((n, s, d), neg) in chosen.iter().zip(signs) {
        cx.set(*n, *s, *d, rat(if neg { -1 } else { 1 }));
    }

    // d_2, d_0, d_{-2}: supported on the canceled pairs, coefficients from
    // a generic point of the linear space anticommuting with what exists.
    let killed = t3_killed_sources(m)?;
    for n in [2, 0, -2] {
        let mut support: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &s in &killed {
            let src = if n == -2 { phi(s) } else { s };
            let dst = exp_add(src, diff_degree(n));
            for &a in copies.get(&src).into_iter().flatten() {
                for &b in copies.get(&dst).into_iter().flatten() {
                    support.insert((a, b));
                }
            }
        }
        let vars: Vec<(usize, usize)> = support.into_iter().collect();
        let solved = generic_anticommuting(&cx, &vars);
        for ((s, d), c) in vars.iter().zip(solved) {
            cx.set(n, *s, *d, c);
        }
    }
    Ok(cx)
}

/// Depth-first choice of generator copies for each grading-level edge so
/// that each differential is a matching and mixed composites pair up.
fn match_copies(
    edges: &[(i64, Exp, Exp)],
    copies: &BTreeMap<Exp, Vec<usize>>,
) -> Option<Vec<(i64, usize, usize)>> {
    let opts: Vec<Vec<(usize, usize)>> = edges
        .iter()
        .map(|(_, s, d)| {
            let mut v = Vec::new();
            for &a in &copies[s] {
                for &b in &copies[d] {
                    v.push((a, b));
                }
            }
            v
        })
        .collect();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| opts[i].len());
    let mut used: BTreeSet<(i64, usize)> = BTreeSet::new();
    let mut choice = vec![(0usize, 0usize); edges.len()];
    let mut budget = 200_000usize;

    fn paths_even(edges: &[(i64, Exp, Exp)], choice: &[(usize, usize)]) -> bool {
        let mut out: BTreeMap<(i64, usize), Vec<usize>> = BTreeMap::new();
        for (i, (n, _, _)) in edges.iter().enumerate() {
            out.entry((*n, choice[i].0)).or_default().push(choice[i].1);
        }
        let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (&(n, s), ts) in &out {
            for t in ts {
                if let Some(us) = out.get(&(-n, *t)) {
                    for u in us {
                        *count.entry((s, *u)).or_insert(0) += 1;
                    }
                }
            }
        }
        count.values().all(|c| c % 2 == 0)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        order: &[usize],
        edges: &[(i64, Exp, Exp)],
        opts: &[Vec<(usize, usize)>],
        used: &mut BTreeSet<(i64, usize)>,
        choice: &mut Vec<(usize, usize)>,
        budget: &mut usize,
    ) -> bool {
        if k == order.len() {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            return paths_even(edges, choice);
        }
        let i = order[k];
        let n = edges[i].0;
        for &(a, b) in &opts[i] {
            if used.contains(&(n, a)) || used.contains(&(n, b)) {
                continue;
            }
            used.insert((n, a));
            used.insert((n, b));
            choice[i] = (a, b);
            if rec(k + 1, order, edges, opts, used, choice, budget) {
                return true;
            }
            used.remove(&(n, a));
            used.remove(&(n, b));
            if *budget == 0 {
                return false;
            }
        }
        false
    }

    if rec(0, &order, edges, &opts, &mut used, &mut choice, &mut budget) {
        Some(edges.iter().zip(choice).map(|((n, _, _), (a, b))| (*n, a, b)).collect())
    } else {
        None
    }
}

/// Signs for the matched edges: each pair of paths `s -> t -> u` through
/// `d_1 d_{-1}` and `d_{-1} d_1` must carry opposite products.  Solved
/// over GF(2); free variables stay `+1`, pivots are the earliest edges.
fn solve_signs(edges: &[(i64, usize, usize)]) -> Option<Vec<bool>> {
    let mut out: BTreeMap<(i64, usize), Vec<usize>> = BTreeMap::new();
    for (i, (n, s, _)) in edges.iter().enumerate() {
        out.entry((*n, *s)).or_default().push(i);
    }
    let mut paths: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (i, (n, s, t)) in edges.iter().enumerate() {
        for &j in out.get(&(-n, *t)).into_iter().flatten() {
            paths.entry((*s, edges[j].2)).or_default().push((i, j));
        }
    }
    let mut rows: Vec<(BTreeSet<usize>, bool)> = Vec::new();
    for ps in paths.values() {
        if ps.len() != 2 {
            return None;
        }
        let mut bits = BTreeSet::new();
        for &(i, j) in ps {
            for e in [i, j] {
                if !bits.remove(&e) {
                    bits.insert(e);
                }
            }
        }
        rows.push((bits, true));
    }
    let mut pivots: BTreeMap<usize, (BTreeSet<usize>, bool)> = BTreeMap::new();
    for (mut bits, mut rhs) in rows {
        while let Some(&x) = bits.iter().find(|x| pivots.contains_key(x)) {
            let (pb, pr) = &pivots[&x];
            for e in pb {
                if !bits.remove(e) {
                    bits.insert(*e);
                }
            }
            rhs ^= pr;
        }
        match bits.iter().next().copied() {
            None if rhs => return None,
            None => {}
            Some(x) => {
                pivots.insert(x, (bits, rhs));
            }
        }
    }
    let mut sol = vec![false; edges.len()];
    for (&x, (bits, rhs)) in pivots.iter().rev() {
        let mut v = *rhs;
        for &y in bits {
            if y != x {
                v ^= sol[y];
            }
        }
        sol[x] = v;
    }
    Some(sol)
}

/// Coefficients on `vars` anticommuting with every differential already in
/// `cx`, at a generic point of that linear space.
fn generic_anticommuting(cx: &DotComplex, vars: &[(usize, usize)]) -> Vec<BigRational> {
    let rows: Vec<_> = cx.diffs.values().flat_map(|dm| anticommute_rows(dm, vars)).collect();
    generic_kernel_point(&rows, vars.len())
}

/// Linear conditions on the unknown entries `vars` of `X` for `D X + X D = 0`.
pub(crate) fn anticommute_rows(d: &DiffMatrix, vars: &[(usize, usize)]) -> Vec<BTreeMap<usize, BigRational>> {
    let mut out: BTreeMap<usize, Vec<(usize, &BigRational)>> = BTreeMap::new();
    let mut inc: BTreeMap<usize, Vec<(usize, &BigRational)>> = BTreeMap::new();
    for ((a, b), c) in d {
        out.entry(*a).or_default().push((*b, c));
        inc.entry(*b).or_default().push((*a, c));
    }
    let mut eqs: BTreeMap<(usize, usize), BTreeMap<usize, BigRational>> = BTreeMap::new();
    for (v, &(a, b)) in vars.iter().enumerate() {
        for (w, c) in out.get(&b).into_iter().flatten() {
            *eqs.entry((a, *w)).or_default().entry(v).or_insert_with(BigRational::zero) += *c;
        }
        for (u, c) in inc.get(&a).into_iter().flatten() {
            *eqs.entry((*u, b)).or_default().entry(v).or_insert_with(BigRational::zero) += *c;
        }
    }
    eqs.into_values()
        .map(|mut r| {
            r.retain(|_, c| !c.is_zero());
            r
        })
        .filter(|r| !r.is_empty())
        .collect()
}

//! Exact rank and nullspace computations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank of a dense integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = &row[j] * &pivot - &factor * &pivot_row[j];
                // exact by Sylvester's identity
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Scale each rational row by the lcm of its denominators.
pub fn integer_rows(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

pub fn rational_rank(m: &[Vec<BigRational>]) -> usize {
    bareiss_rank(integer_rows(m))
}

/// Basis of `{x : m x = 0}` by Gauss-Jordan over the rationals.
/// `cols` is needed when `m` has no rows.
pub fn nullspace(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// First `k` primes, used as deterministic generic coefficients.
pub fn primes(k: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(k);
    let mut n = 2i64;
    while out.len() < k {
        if out.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// A generic point of `{x : rows . x = 0}` for sparse rows over `nvars`
/// unknowns.  The system is split into connected components, each
/// component's nullspace basis is combined with prime weights, so the
/// result is deterministic.
pub fn generic_kernel_point(rows: &[BTreeMap<usize, BigRational>], nvars: usize) -> Vec<BigRational> {
    // union-find over unknowns sharing a row
    let mut parent: Vec<usize> = (0..nvars).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for row in rows {
        let mut it = row.keys();
        if let Some(&first) = it.next() {
            for &v in it {
                let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                parent[a] = b;
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..nvars {
        let r = find(&mut parent, v);
        comps.entry(r).or_default().push(v);
    }
    let mut comp_rows: BTreeMap<usize, Vec<&BTreeMap<usize, BigRational>>> = BTreeMap::new();
    for row in rows {
        if let Some(&v) = row.keys().next() {
            let r = find(&mut parent, v);
            comp_rows.entry(r).or_default().push(row);
        }
    }
    let mut out = vec![BigRational::zero(); nvars];
    let mut weight_index = 0usize;
    let mut weights = primes(64);
    for (root, vars) in &comps {
        let local: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let dense: Vec<Vec<BigRational>> = comp_rows
            .get(root)
            .into_iter()
            .flatten()
            .map(|row| {
                let mut d = vec![BigRational::zero(); vars.len()];
                for (v, c) in row.iter() {
                    d[local[v]] = c.clone();
                }
                d
            })
            .collect();
        for b in nullspace(&dense, vars.len()) {
            if weight_index == weights.len() {
                weights = primes(2 * weights.len());
            }
            let w = BigRational::from_integer(BigInt::from(weights[weight_index]));
            weight_index += 1;
            for (i, x) in b.iter().enumerate() {
                if !x.is_zero() {
                    out[vars[i]] += x * &w;
                }
            }
        }
    }
    out
}

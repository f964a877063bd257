//! Spectral radius of a nonnegative integer matrix, two ways.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};

/// Sparse rows: `rows[i]` lists `(column, weight)`.
pub type SparseRows = [Vec<(usize, u32)>];

/// Coefficients `c_0..=c_n` of `det(x I - A)`, lowest degree first.
pub fn characteristic_polynomial(rows: &SparseRows) -> Vec<BigInt> {
    let n = rows.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter().enumerate() {
            for &(l, w) in row {
                let w = BigInt::from(w);
                for j in 0..n {
                    if !m[l][j].is_zero() {
                        next[i][j] += &w * &m[l][j];
                    }
                }
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut trace = BigInt::zero();
        for (i, row) in rows.iter().enumerate() {
            for &(l, w) in row {
                trace += BigInt::from(w) * &m[l][i];
            }
        }
        coeffs[n - k] = -(trace / BigInt::from(k));
    }
    coeffs
}

/// Coefficients of `p(x + shift)` for an integer shift.
fn taylor_shift(coeffs: &[BigInt], shift: &BigInt) -> Vec<BigInt> {
    let mut out = coeffs.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let carry = &out[j + 1] * shift;
            out[j] += carry;
        }
    }
    out
}

/// `x >= rho` iff every derivative of `p` is nonnegative at `x`, where
/// `rho` is the largest real root. Here `x = num / 2^bits`.
fn at_or_above_largest_root(coeffs: &[BigInt], num: &BigInt, bits: u32) -> bool {
    let n = coeffs.len() - 1;
    let scaled: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c << (bits as usize * (n - i)))
        .collect();
    taylor_shift(&scaled, num).iter().all(|c| !c.is_negative())
}

/// Largest real root of the characteristic polynomial, by exact bisection
/// down to width `tol`.
pub fn perron_root_exact(rows: &SparseRows, tol: f64) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    let coeffs = characteristic_polynomial(rows);
    let bound: u64 = rows
        .iter()
        .map(|r| r.iter().map(|&(_, w)| w as u64).sum::<u64>())
        .max()
        .unwrap_or(0);
    // dyadic grid fine enough for the tolerance
    let bits = (1.0 / tol).log2().ceil().max(1.0) as u32 + 1;
    let mut lo = BigInt::zero();
    let mut hi = BigInt::from(bound) << bits as usize;
    if at_or_above_largest_root(&coeffs, &lo, bits) {
        return 0.0;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if at_or_above_largest_root(&coeffs, &mid, bits) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let scale = 2f64.powi(bits as i32);
    let (lo, hi) = (lo.to_f64().unwrap_or(0.0), hi.to_f64().unwrap_or(0.0));
    (lo + hi) / 2.0 / scale
}

/// Power iteration on `B + I` for each strongly connected component, with
/// Collatz-Wielandt bounds as the stopping rule.
pub fn perron_root_power(rows: &SparseRows, tol: f64, max_iter: usize) -> Result<f64> {
    let mut graph = DiGraph::<(), u32>::new();
    let nodes: Vec<_> = (0..rows.len()).map(|_| graph.add_node(())).collect();
    for (i, row) in rows.iter().enumerate() {
        for &(j, w) in row {
            graph.add_edge(nodes[i], nodes[j], w);
        }
    }
    let mut best: f64 = 0.0;
    for component in tarjan_scc(&graph) {
        let members: Vec<usize> = component.iter().map(|n| n.index()).collect();
        let local = |g: usize| members.iter().position(|&m| m == g);
        let sub: Vec<Vec<(usize, f64)>> = members
            .iter()
            .map(|&g| {
                rows[g]
                    .iter()
                    .filter_map(|&(j, w)| local(j).map(|l| (l, w as f64)))
                    .collect()
            })
            .collect();
        if sub.iter().all(Vec::is_empty) {
            continue;
        }
        best = best.max(component_radius(&sub, tol, max_iter)?);
    }
    Ok(best)
}

fn component_radius(sub: &[Vec<(usize, f64)>], tol: f64, max_iter: usize) -> Result<f64> {
    let n = sub.len();
    let mut x = vec![1.0; n];
    for _ in 0..max_iter {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + sub[i].iter().map(|&(j, w)| w * x[j]).sum::<f64>())
            .collect();
        let ratios = (0..n).map(|i| y[i] / x[i]);
        let (lower, upper) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        });
        if upper - lower < tol {
            return Ok((lower + upper) / 2.0 - 1.0);
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
    }
    Err(Error::NotConverged(max_iter))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &[&[u32]]) -> Vec<Vec<(usize, u32)>> {
        m.iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &w)| w > 0)
                    .map(|(j, &w)| (j, w))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn polynomials() {
        let fib = dense(&[&[1, 1], &[1, 0]]);
        let p: Vec<i64> = characteristic_polynomial(&fib)
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(p, vec![-1, -1, 1]);
        let cycle = dense(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let p: Vec<i64> = characteristic_polynomial(&cycle)
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(p, vec![-1, 0, 0, 1]);
    }

    #[test]
    fn radii_agree() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for (m, expected) in [
            (dense(&[&[2]]), 2.0),
            (dense(&[&[1, 1], &[1, 0]]), phi),
            (dense(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]), 1.0),
            (dense(&[&[0, 1], &[0, 0]]), 0.0),
            (dense(&[&[1, 1, 0], &[1, 0, 0], &[0, 1, 0]]), phi),
        ] {
            let exact = perron_root_exact(&m, 1e-10);
            let power = perron_root_power(&m, 1e-10, 100_000).unwrap();
            assert!((exact - expected).abs() < 1e-9, "{exact} vs {expected}");
            assert!((power - expected).abs() < 1e-9, "{power} vs {expected}");
        }
    }

    #[test]
    fn repeated_root_is_found() {
        // (x - 1)^2 with a nontrivial Jordan block
        let m = dense(&[&[1, 1], &[0, 1]]);
        assert!((perron_root_exact(&m, 1e-10) - 1.0).abs() < 1e-9);
    }
}

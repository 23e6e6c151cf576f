//! Dense eigenvalue oracle and inclusion verification.
//!
//! Eigenvalues come from Householder reduction to upper Hessenberg form
//! followed by explicitly shifted QR iteration with Wilkinson shifts and
//! relative-threshold deflation; trailing 1x1 and 2x2 blocks are solved in
//! closed form. Intended for desk-scale matrices (order capped at 64 by
//! default).

use crate::matrix::ComplexMatrix;
use crate::regions::{RegionIndex, RegionSet};
use crate::{Error, Result};
use num_complex::Complex64;

/// Largest order the solver accepts by default.
pub const DEFAULT_ORDER_CAP: usize = 64;

/// Subdiagonal deflation threshold, relative to the neighboring diagonals.
const DEFLATE_REL: f64 = 1e-14;

/// QR sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of a matrix, with multiplicity, plus a backward-error
/// style residual estimate (the largest subdiagonal magnitude discarded at
/// deflation, relative to the matrix scale).
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub residual: f64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn cabs(z: Complex64) -> f64 {
    z.re.hypot(z.im)
}

/// Unitary Givens pair (c real, s complex) with
/// [c s; -conj(s) c] [f; g] = [r; 0].
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g == ZERO {
        return (1.0, ZERO);
    }
    if f == ZERO {
        return (0.0, g.conj() / cabs(g));
    }
    let fa = cabs(f);
    let ga = cabs(g);
    let r = fa.hypot(ga);
    (fa / r, (f / fa) * g.conj() / r)
}

/// Eigenvalues of [[a, b], [c, d]].
fn eig2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
    (half_tr + disc, half_tr - disc)
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(h: &mut [Vec<Complex64>]) {
    let n = h.len();
    for k in 0..n.saturating_sub(2) {
        let norm2: f64 = (k + 1..n).map(|i| h[i][k].norm_sqr()).sum();
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0 == ZERO { Complex64::new(1.0, 0.0) } else { x0 / cabs(x0) };
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[i][k]).collect();
        v[0] += phase * norm;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // left: rows k+1..n over columns k..n
        for j in k..n {
            let mut s = ZERO;
            for (i, vi) in v.iter().enumerate() {
                s += vi.conj() * h[k + 1 + i][j];
            }
            let s = s * tau;
            for (i, vi) in v.iter().enumerate() {
                h[k + 1 + i][j] -= s * vi;
            }
        }
        // right: columns k+1..n over all rows
        for r in 0..n {
            let mut s = ZERO;
            for (i, vi) in v.iter().enumerate() {
                s += h[r][k + 1 + i] * vi;
            }
            let s = s * tau;
            for (i, vi) in v.iter().enumerate() {
                h[r][k + 1 + i] -= s * vi.conj();
            }
        }
        h[k + 1][k] = -phase * norm;
        for i in k + 2..n {
            h[i][k] = ZERO;
        }
    }
}

/// One explicitly shifted QR sweep on the window lo..=hi, applied as a
/// similarity on the full matrix.
fn qr_sweep(h: &mut [Vec<Complex64>], lo: usize, hi: usize, mu: Complex64) {
    let n = h.len();
    for i in lo..=hi {
        h[i][i] -= mu;
    }
    let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[k][k], h[k + 1][k]);
        for j in k..n {
            let t1 = h[k][j];
            let t2 = h[k + 1][j];
            h[k][j] = c * t1 + s * t2;
            h[k + 1][j] = -s.conj() * t1 + c * t2;
        }
        h[k + 1][k] = ZERO;
        rots.push((c, s));
    }
    for (off, &(c, s)) in rots.iter().enumerate() {
        let k = lo + off;
        let rmax = (k + 2).min(n - 1);
        for r in 0..=rmax {
            let t1 = h[r][k];
            let t2 = h[r][k + 1];
            h[r][k] = t1 * c + t2 * s.conj();
            h[r][k + 1] = -t1 * s + t2 * c;
        }
    }
    for i in lo..=hi {
        h[i][i] += mu;
    }
}

/// Computes all eigenvalues; deterministic for a given matrix.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Spectrum> {
    eigenvalues_with_cap(a, DEFAULT_ORDER_CAP)
}

pub fn eigenvalues_with_cap(a: &ComplexMatrix, cap: usize) -> Result<Spectrum> {
    let n = a.order();
    if n > cap {
        return Err(Error::OrderCap { n, cap });
    }
    let scale = 1.0
        + a.entries()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
    let mut h: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    hessenberg(&mut h);

    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let mut residual = 0.0_f64;
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    loop {
        // deflate negligible subdiagonals in the live part
        for k in 0..hi {
            let sub = cabs(h[k + 1][k]);
            if sub > 0.0 && sub <= DEFLATE_REL * (cabs(h[k][k]) + cabs(h[k + 1][k + 1])) {
                residual = residual.max(sub / scale);
                h[k + 1][k] = ZERO;
            }
        }
        // active block lo..=hi
        let mut lo = hi;
        while lo > 0 && h[lo][lo - 1] != ZERO {
            lo -= 1;
        }
        if lo == hi {
            eigs.push(h[hi][hi]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            sweeps = 0;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig2x2(h[lo][lo], h[lo][hi], h[hi][lo], h[hi][hi]);
            eigs.push(l1);
            eigs.push(l2);
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::NonConvergence {
                context: format!(
                    "qr iteration stalled with {} of {} eigenvalues deflated",
                    eigs.len(),
                    n
                ),
                iterations: sweeps,
            });
        }
        let mu = if sweeps % 10 == 0 {
            // exceptional shift to break symmetric cycling
            h[hi][hi] + Complex64::new(1.5 * cabs(h[hi][hi - 1]), 0.0)
        } else {
            let (l1, l2) = eig2x2(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi]);
            if cabs(l1 - h[hi][hi]) <= cabs(l2 - h[hi][hi]) {
                l1
            } else {
                l2
            }
        };
        qr_sweep(&mut h, lo, hi, mu);
    }
    eigs.reverse(); // deflation collects from the bottom
    Ok(Spectrum {
        eigenvalues: eigs,
        residual,
    })
}

/// Bottleneck distance between two equally sized spectra: the smallest t
/// such that a perfect matching exists using only pairs within distance t.
pub fn spectrum_match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spectra must have equal length");
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let d: Vec<Vec<f64>> = a
        .iter()
        .map(|&x| b.iter().map(|&y| cabs(x - y)).collect())
        .collect();
    let mut thresholds: Vec<f64> = d.iter().flatten().cloned().collect();
    thresholds.sort_by(|p, q| p.partial_cmp(q).unwrap());
    thresholds.dedup();

    // Kuhn's augmenting paths restricted to edges <= t.
    fn feasible(d: &[Vec<f64>], t: f64) -> bool {
        let n = d.len();
        let mut match_of = vec![usize::MAX; n];
        fn augment(
            u: usize,
            d: &[Vec<f64>],
            t: f64,
            seen: &mut [bool],
            match_of: &mut [usize],
        ) -> bool {
            for v in 0..d.len() {
                if d[u][v] <= t && !seen[v] {
                    seen[v] = true;
                    if match_of[v] == usize::MAX
                        || augment(match_of[v], d, t, seen, match_of)
                    {
                        match_of[v] = u;
                        return true;
                    }
                }
            }
            false
        }
        for u in 0..n {
            let mut seen = vec![false; n];
            if !augment(u, d, t, &mut seen, &mut match_of) {
                return false;
            }
        }
        true
    }

    let mut lo = 0usize;
    let mut hi = thresholds.len() - 1;
    if feasible(&d, thresholds[lo]) {
        return thresholds[lo];
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if feasible(&d, thresholds[mid]) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    thresholds[hi]
}

/// Per-eigenvalue inclusion result. `margin` is the best signed boundary
/// distance over the member regions (bound minus predicate value, >= 0
/// strictly inside); containment allows the scale-aware slack.
#[derive(Debug, Clone)]
pub struct WitnessRecord {
    pub eigenvalue: Complex64,
    pub contained: bool,
    pub witness: Option<RegionIndex>,
    pub margin: f64,
}

#[derive(Debug, Clone)]
pub struct InclusionReport {
    pub records: Vec<WitnessRecord>,
    pub violations: usize,
}

/// Checks a supplied spectrum against a region set. Violations are data,
/// not errors.
pub fn verify_spectrum_inclusion(
    set: &RegionSet,
    spectrum: &[Complex64],
    tol: f64,
) -> InclusionReport {
    let mut records = Vec::with_capacity(spectrum.len());
    let mut violations = 0usize;
    for &lambda in spectrum {
        let slack = set.slack(lambda, tol);
        match set.best_margin(lambda) {
            Some((index, margin)) => {
                let contained = margin >= -slack;
                if !contained {
                    violations += 1;
                }
                records.push(WitnessRecord {
                    eigenvalue: lambda,
                    contained,
                    witness: contained.then_some(index),
                    margin,
                });
            }
            None => {
                violations += 1;
                records.push(WitnessRecord {
                    eigenvalue: lambda,
                    contained: false,
                    witness: None,
                    margin: f64::NEG_INFINITY,
                });
            }
        }
    }
    InclusionReport {
        records,
        violations,
    }
}

/// Computes the spectrum first, then verifies inclusion.
pub fn verify_inclusion(a: &ComplexMatrix, set: &RegionSet, tol: f64) -> Result<InclusionReport> {
    let spectrum = eigenvalues(a)?;
    Ok(verify_spectrum_inclusion(set, &spectrum.eigenvalues, tol))
}

//! Eigenvalue inclusion region catalogs: Gersgorin-style disks, ovals of
//! Cassini, and power-mean ovals, together with point membership.
//!
//! Five catalogs ship. The universal one (27 kinds) takes an arbitrary
//! G-function pair; the other four (31 kinds each) fix the pair to
//! (r~^X, c~^Y), (r^X, c^Y), (r~, c~) or (r, c). Every pair-indexed kind
//! stores all n(n-1) ordered pairs; symmetric duplicates are kept for
//! fidelity to the index sets.

use crate::gfun::wgm;
use crate::matrix::{ComplexMatrix, SumVector};
use crate::{Error, Result};
use num_complex::Complex64;

/// Which region-catalog definition a set was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionDef {
    /// Universal catalog on an arbitrary (g, h): 27 kinds.
    D51,
    /// (r~^X, c~^Y): 31 kinds.
    D52,
    /// (r^X, c^Y): 31 kinds.
    D53,
    /// (r~, c~): 31 kinds.
    D54,
    /// (r, c): 31 kinds.
    D55,
}

impl RegionDef {
    pub fn max_k(&self) -> usize {
        match self {
            RegionDef::D51 => 27,
            _ => 31,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RegionDef::D51 => "5.1",
            RegionDef::D52 => "5.2",
            RegionDef::D53 => "5.3",
            RegionDef::D54 => "5.4",
            RegionDef::D55 => "5.5",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "5.1" => Ok(RegionDef::D51),
            "5.2" => Ok(RegionDef::D52),
            "5.3" => Ok(RegionDef::D53),
            "5.4" => Ok(RegionDef::D54),
            "5.5" => Ok(RegionDef::D55),
            _ => Err(Error::InvalidParam(format!(
                "unknown region definition {s} (expected 5.1..5.5)"
            ))),
        }
    }
}

/// Index of the matrix row (or ordered row pair) a region belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionIndex {
    Point(usize),
    Pair(usize, usize),
}

/// One region with its membership predicate.
#[derive(Debug, Clone, PartialEq)]
pub enum RegionKind {
    Disk {
        center: Complex64,
    },
    Cassini {
        c1: Complex64,
        c2: Complex64,
    },
    PowerMean {
        c1: Complex64,
        c2: Complex64,
        alpha: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub index: RegionIndex,
    pub kind: RegionKind,
    pub bound: f64,
}

fn dist(z: Complex64, c: Complex64) -> f64 {
    (z.re - c.re).hypot(z.im - c.im)
}

impl Region {
    /// Left-hand side of the membership inequality at z.
    pub fn predicate_value(&self, z: Complex64) -> f64 {
        match &self.kind {
            RegionKind::Disk { center } => dist(z, *center),
            RegionKind::Cassini { c1, c2 } => dist(z, *c1) * dist(z, *c2),
            RegionKind::PowerMean { c1, c2, alpha } => wgm(dist(z, *c1), *alpha, dist(z, *c2)),
        }
    }

    /// Signed boundary distance: bound - predicate value (>= 0 inside).
    pub fn margin(&self, z: Complex64) -> f64 {
        self.bound - self.predicate_value(z)
    }

    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        self.predicate_value(z) <= self.bound + slack
    }

    pub fn centers(&self) -> Vec<Complex64> {
        match &self.kind {
            RegionKind::Disk { center } => vec![*center],
            RegionKind::Cassini { c1, c2 } | RegionKind::PowerMean { c1, c2, .. } => {
                vec![*c1, *c2]
            }
        }
    }

    /// Disks that together cover the region, used for bounding boxes: a
    /// point outside all of them violates the membership inequality.
    pub fn bounding_disks(&self) -> Vec<(Complex64, f64)> {
        match &self.kind {
            RegionKind::Disk { center } => vec![(*center, self.bound)],
            RegionKind::Cassini { c1, c2 } => {
                let r = self.bound.sqrt();
                vec![(*c1, r), (*c2, r)]
            }
            RegionKind::PowerMean { c1, c2, .. } => {
                vec![(*c1, self.bound), (*c2, self.bound)]
            }
        }
    }
}

/// Construction parameters echoed into reports and plots.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub def: RegionDef,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Free-form echo of the vector sources (e.g. scaling labels).
    pub params: String,
}

/// A full region family: one region per row or per ordered row pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSet {
    pub regions: Vec<Region>,
    pub provenance: Provenance,
    max_center_norm: f64,
}

impl RegionSet {
    pub fn max_center_norm(&self) -> f64 {
        self.max_center_norm
    }

    /// Scale-aware membership slack at z.
    pub fn slack(&self, z: Complex64, tol: f64) -> f64 {
        tol * (1.0 + z.re.hypot(z.im) + self.max_center_norm)
    }

    /// Best (largest) signed boundary distance over the member regions,
    /// with the witnessing index. None for an empty set.
    pub fn best_margin(&self, z: Complex64) -> Option<(RegionIndex, f64)> {
        let mut best: Option<(RegionIndex, f64)> = None;
        for r in &self.regions {
            let m = r.margin(z);
            if best.map_or(true, |(_, bm)| m > bm) {
                best = Some((r.index, m));
            }
        }
        best
    }

    /// Union membership with scale-aware slack.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        let slack = self.slack(z, tol);
        self.regions.iter().any(|r| r.contains(z, slack))
    }

    pub fn bounding_disks(&self) -> Vec<(Complex64, f64)> {
        self.regions.iter().flat_map(|r| r.bounding_disks()).collect()
    }
}

/// Classifies a kind number into its membership shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Point,
    Cassini,
    PowerMean,
}

fn shape_of(def: RegionDef, k: usize) -> Shape {
    match def {
        RegionDef::D51 => match k {
            1..=3 => Shape::Point,
            4..=13 => Shape::Cassini,
            _ => Shape::PowerMean,
        },
        _ => match k {
            1..=4 => Shape::Point,
            5..=15 => Shape::Cassini,
            _ => Shape::PowerMean,
        },
    }
}

/// Radius table for the 31-kind catalogs. For point kinds only the i-side
/// arguments are read.
fn rho31(k: usize, gi: f64, gj: f64, hi: f64, hj: f64, a: f64, b: f64) -> f64 {
    match k {
        1 => gi,
        2 => hi,
        3 => wgm(gi, a, hi),
        4 => a * gi + (1.0 - a) * hi,
        5 => gi * gj,
        6 => hi * hj,
        7 => gi * hj,
        8 => wgm(gi * gj, a, hi * hj),
        9 => wgm(gi * hj, a, gj * hi),
        10 => a * gi * gj + (1.0 - a) * hi * hj,
        11 => a * gi * hj + (1.0 - a) * gj * hi,
        12 => (a * gi + (1.0 - a) * hi) * (a * gj + (1.0 - a) * hj),
        13 => (a * gi + (1.0 - a) * hi) * (a * hj + (1.0 - a) * gj),
        14 => (a * gi + (1.0 - a) * hj) * (a * gj + (1.0 - a) * hi),
        15 => (a * gi + (1.0 - a) * gj) * (a * hj + (1.0 - a) * hi),
        16 => wgm(gi, a, gj),
        17 => wgm(hi, a, hj),
        18 => wgm(gi, a, hj),
        19 => a * gi + (1.0 - a) * gj,
        20 => a * hi + (1.0 - a) * hj,
        21 => a * gi + (1.0 - a) * hj,
        22 => wgm(wgm(gi, b, hi), a, wgm(gj, b, hj)),
        23 => wgm(wgm(gi, b, hi), a, wgm(hj, b, gj)),
        24 => b * wgm(gi, a, gj) + (1.0 - b) * wgm(hi, a, hj),
        25 => b * wgm(gi, a, hj) + (1.0 - b) * wgm(hi, a, gj),
        26 => a * wgm(gi, b, hi) + (1.0 - a) * wgm(gj, b, hj),
        27 => a * wgm(gi, b, hi) + (1.0 - a) * wgm(hj, b, gj),
        28 => wgm(b * gi + (1.0 - b) * hi, a, b * gj + (1.0 - b) * hj),
        29 => wgm(b * gi + (1.0 - b) * hi, a, b * hj + (1.0 - b) * gj),
        30 => wgm(a * gi + (1.0 - a) * gj, b, a * hi + (1.0 - a) * hj),
        31 => wgm(a * gi + (1.0 - a) * hj, b, a * hi + (1.0 - a) * gj),
        _ => unreachable!("k validated by caller"),
    }
}

/// Radius table for the universal 27-kind catalog.
fn rho27(k: usize, gi: f64, gj: f64, hi: f64, hj: f64, a: f64, b: f64) -> f64 {
    match k {
        1 => gi,
        2 => wgm(gi, a, hi),
        3 => a * gi + (1.0 - a) * hi,
        4 => gi * gj,
        5 => gi * hj,
        6 => wgm(gi * gj, a, hi * hj),
        7 => wgm(gi * hj, a, gj * hi),
        8 => a * gi * gj + (1.0 - a) * hi * hj,
        9 => a * gi * hj + (1.0 - a) * gj * hi,
        10 => (a * gi + (1.0 - a) * hi) * (a * gj + (1.0 - a) * hj),
        11 => (a * gi + (1.0 - a) * hi) * (a * hj + (1.0 - a) * gj),
        12 => (a * gi + (1.0 - a) * hj) * (a * gj + (1.0 - a) * hi),
        13 => (a * gi + (1.0 - a) * gj) * (a * hj + (1.0 - a) * hi),
        14 => wgm(gi, a, gj),
        15 => wgm(gi, a, hj),
        16 => a * gi + (1.0 - a) * gj,
        17 => a * gi + (1.0 - a) * hj,
        18 => wgm(wgm(gi, b, hi), a, wgm(gj, b, hj)),
        19 => wgm(wgm(gi, b, hi), a, wgm(hj, b, gj)),
        20 => b * wgm(gi, a, gj) + (1.0 - b) * wgm(hi, a, hj),
        21 => b * wgm(gi, a, hj) + (1.0 - b) * wgm(hi, a, gj),
        22 => a * wgm(gi, b, hi) + (1.0 - a) * wgm(gj, b, hj),
        23 => a * wgm(gi, b, hi) + (1.0 - a) * wgm(hj, b, gj),
        24 => wgm(b * gi + (1.0 - b) * hi, a, b * gj + (1.0 - b) * hj),
        25 => wgm(b * gi + (1.0 - b) * hi, a, b * hj + (1.0 - b) * gj),
        26 => wgm(a * gi + (1.0 - a) * gj, b, a * hi + (1.0 - a) * hj),
        27 => wgm(a * gi + (1.0 - a) * hj, b, a * hi + (1.0 - a) * gj),
        _ => unreachable!("k validated by caller"),
    }
}

pub(crate) fn radius(
    def: RegionDef,
    k: usize,
    gi: f64,
    gj: f64,
    hi: f64,
    hj: f64,
    a: f64,
    b: f64,
) -> f64 {
    match def {
        RegionDef::D51 => rho27(k, gi, gj, hi, hj, a, b),
        _ => rho31(k, gi, gj, hi, hj, a, b),
    }
}

/// Builds the k-th region family of the chosen definition from the supplied
/// sum vectors g, h (the caller picks the vectors matching the definition).
/// Point-indexed kinds emit n disks centered at the diagonal entries;
/// pair-indexed kinds emit n(n-1) Cassini or power-mean regions.
pub fn build_region_set(
    a: &ComplexMatrix,
    def: RegionDef,
    k: usize,
    g: &SumVector,
    h: &SumVector,
    alpha: f64,
    beta: f64,
) -> Result<RegionSet> {
    let n = a.order();
    if k < 1 || k > def.max_k() {
        return Err(Error::KOutOfRange {
            def: def.label().to_string(),
            k,
            max: def.max_k(),
        });
    }
    if g.len() != n || h.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if g.len() != n { g.len() } else { h.len() },
        });
    }
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParam("alpha and beta must be in [0, 1]".into()));
    }
    let gv = g.values();
    let hv = h.values();
    let mut regions = Vec::new();
    match shape_of(def, k) {
        Shape::Point => {
            for i in 0..n {
                let bound = radius(def, k, gv[i], 0.0, hv[i], 0.0, alpha, beta);
                regions.push(Region {
                    index: RegionIndex::Point(i),
                    kind: RegionKind::Disk { center: a.get(i, i) },
                    bound,
                });
            }
        }
        Shape::Cassini => {
            for i in 0..n {
                for j in 0..n {
                    if j != i {
                        let bound = radius(def, k, gv[i], gv[j], hv[i], hv[j], alpha, beta);
                        regions.push(Region {
                            index: RegionIndex::Pair(i, j),
                            kind: RegionKind::Cassini {
                                c1: a.get(i, i),
                                c2: a.get(j, j),
                            },
                            bound,
                        });
                    }
                }
            }
        }
        Shape::PowerMean => {
            for i in 0..n {
                for j in 0..n {
                    if j != i {
                        let bound = radius(def, k, gv[i], gv[j], hv[i], hv[j], alpha, beta);
                        regions.push(Region {
                            index: RegionIndex::Pair(i, j),
                            kind: RegionKind::PowerMean {
                                c1: a.get(i, i),
                                c2: a.get(j, j),
                                alpha,
                            },
                            bound,
                        });
                    }
                }
            }
        }
    }
    let max_center_norm = regions
        .iter()
        .flat_map(|r| r.centers())
        .map(|c| c.re.hypot(c.im))
        .fold(0.0_f64, f64::max);
    Ok(RegionSet {
        regions,
        provenance: Provenance {
            def,
            k,
            alpha,
            beta,
            params: String::new(),
        },
        max_center_norm,
    })
}

/// Convenience: the vectors each definition family expects, given optional
/// scalings (definitions 5.4/5.5 ignore them).
pub fn definition_vectors(
    a: &ComplexMatrix,
    def: RegionDef,
    x: Option<&crate::matrix::PositiveScaling>,
    y: Option<&crate::matrix::PositiveScaling>,
) -> Result<(SumVector, SumVector)> {
    use crate::gfun::{eval_gfunction, GFunction};
    let ones = crate::matrix::PositiveScaling::ones(a.order());
    let xv = x.cloned().unwrap_or_else(|| ones.clone());
    let yv = y.cloned().unwrap_or(ones);
    let (gf, hf) = match def {
        RegionDef::D51 | RegionDef::D55 => (GFunction::Row, GFunction::Col),
        RegionDef::D52 => (
            GFunction::RowTildeWeighted(xv),
            GFunction::ColTildeWeighted(yv),
        ),
        RegionDef::D53 => (GFunction::RowWeighted(xv), GFunction::ColWeighted(yv)),
        RegionDef::D54 => (GFunction::RowTilde, GFunction::ColTilde),
    };
    Ok((eval_gfunction(&gf, a)?, eval_gfunction(&hf, a)?))
}

/// Union membership test with scale-aware tolerance.
pub fn contains(set: &RegionSet, z: Complex64, tol: f64) -> bool {
    set.contains(z, tol)
}

/// Whether kind k of the given definition reads the alpha parameter
/// (either in its radius formula or in the power-mean membership exponent).
pub fn k_uses_alpha(def: RegionDef, k: usize) -> bool {
    match def {
        RegionDef::D51 => !matches!(k, 1 | 4 | 5),
        _ => !matches!(k, 1 | 2 | 5 | 6 | 7),
    }
}

/// Whether kind k of the given definition reads the beta parameter.
pub fn k_uses_beta(def: RegionDef, k: usize) -> bool {
    match def {
        RegionDef::D51 => k >= 18,
        _ => k >= 22,
    }
}

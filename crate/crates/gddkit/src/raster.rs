//! Rasterization of region sets to bitmaps, sampled containment checks,
//! intersection approximations, and CSV/SVG export.

use crate::matrix::PositiveScaling;
use crate::regions::{Region, RegionKind, RegionSet};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

/// Sampling grid: bounding box (lower-left, upper-right) and resolution.
#[derive(Debug, Clone, Copy)]
pub struct GridParams {
    pub bbox: Option<(Complex64, Complex64)>,
    pub nx: usize,
    pub ny: usize,
}

impl GridParams {
    pub fn new(nx: usize, ny: usize) -> Self {
        Self {
            bbox: None,
            nx,
            ny,
        }
    }

    pub fn with_bbox(mut self, lo: Complex64, hi: Complex64) -> Self {
        self.bbox = Some((lo, hi));
        self
    }
}

/// Boolean membership bitmap over a rectangle, row-major with iy * nx + ix;
/// iy = 0 is the bottom scanline.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMask {
    pub bbox: (Complex64, Complex64),
    pub nx: usize,
    pub ny: usize,
    bits: Vec<bool>,
}

impl GridMask {
    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> bool {
        self.bits[iy * self.nx + ix]
    }

    pub fn cell_center(&self, ix: usize, iy: usize) -> Complex64 {
        let (lo, hi) = self.bbox;
        let dx = (hi.re - lo.re) / self.nx as f64;
        let dy = (hi.im - lo.im) / self.ny as f64;
        Complex64::new(
            lo.re + (ix as f64 + 0.5) * dx,
            lo.im + (iy as f64 + 0.5) * dy,
        )
    }

    pub fn count_set(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn fill_fraction(&self) -> f64 {
        self.count_set() as f64 / (self.nx * self.ny) as f64
    }

    /// Cells set in self but not in other.
    pub fn excess_over(&self, other: &GridMask) -> usize {
        assert_eq!(self.bits.len(), other.bits.len(), "masks must share a grid");
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|&(&a, &b)| a && !b)
            .count()
    }

    /// CSV export: one row per scanline (top first), cells 0/1 comma-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.nx * 2 * self.ny);
        for iy in (0..self.ny).rev() {
            for ix in 0..self.nx {
                if ix > 0 {
                    out.push(',');
                }
                out.push(if self.get(ix, iy) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

/// Bounding box of a slice of region sets: union of their covering disks,
/// inflated 10%. Degenerate boxes expand to the minimal square around the
/// centers.
pub fn default_bbox(sets: &[&RegionSet]) -> (Complex64, Complex64) {
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for set in sets {
        for (c, r) in set.bounding_disks() {
            xmin = xmin.min(c.re - r);
            xmax = xmax.max(c.re + r);
            ymin = ymin.min(c.im - r);
            ymax = ymax.max(c.im + r);
        }
    }
    if !xmin.is_finite() {
        return (Complex64::new(-1.0, -1.0), Complex64::new(1.0, 1.0));
    }
    let w = xmax - xmin;
    let h = ymax - ymin;
    let side = if w.max(h) > 0.0 { w.max(h) } else { 1.0 };
    // expand degenerate directions to a square, then inflate 10%
    let cx = 0.5 * (xmin + xmax);
    let cy = 0.5 * (ymin + ymax);
    let half = 0.55 * side;
    (
        Complex64::new(cx - half, cy - half),
        Complex64::new(cx + half, cy + half),
    )
}

fn resolve_bbox(set: &RegionSet, params: &GridParams) -> (Complex64, Complex64) {
    let (lo, hi) = params.bbox.unwrap_or_else(|| default_bbox(&[set]));
    if hi.re > lo.re && hi.im > lo.im {
        (lo, hi)
    } else {
        // degenerate box: minimal square around the given corners
        let cx = 0.5 * (lo.re + hi.re);
        let cy = 0.5 * (lo.im + hi.im);
        let half = 0.5 * ((hi.re - lo.re).abs().max((hi.im - lo.im).abs())).max(1.0);
        (
            Complex64::new(cx - half, cy - half),
            Complex64::new(cx + half, cy + half),
        )
    }
}

/// Rasterizes a region set: a cell is marked iff its center satisfies the
/// membership predicate with zero tolerance; additionally the cell holding
/// each region center that is itself a member is marked, so zero-radius
/// regions stay visible at any resolution. Deterministic.
pub fn rasterize(set: &RegionSet, params: &GridParams) -> Result<GridMask> {
    if params.nx < 2 || params.ny < 2 {
        return Err(Error::InvalidParam(
            "rasterization resolution must be at least 2x2".into(),
        ));
    }
    let bbox = resolve_bbox(set, params);
    let (nx, ny) = (params.nx, params.ny);
    let mut mask = GridMask {
        bbox,
        nx,
        ny,
        bits: vec![false; nx * ny],
    };
    for iy in 0..ny {
        for ix in 0..nx {
            let z = mask.cell_center(ix, iy);
            if set.contains(z, 0.0) {
                mask.bits[iy * nx + ix] = true;
            }
        }
    }
    let (lo, hi) = bbox;
    let dx = (hi.re - lo.re) / nx as f64;
    let dy = (hi.im - lo.im) / ny as f64;
    for region in &set.regions {
        for c in region.centers() {
            if region.contains(c, 0.0)
                && c.re >= lo.re
                && c.re < hi.re
                && c.im >= lo.im
                && c.im < hi.im
            {
                let ix = (((c.re - lo.re) / dx) as usize).min(nx - 1);
                let iy = (((c.im - lo.im) / dy) as usize).min(ny - 1);
                mask.bits[iy * nx + ix] = true;
            }
        }
    }
    Ok(mask)
}

/// Grid-sampled subset test: true iff no sampled cell lies in `sa` but not
/// in `sb`. A sampled check, not a proof. Both sets are rasterized over a
/// shared bounding box covering them both.
pub fn check_containment(sa: &RegionSet, sb: &RegionSet, params: &GridParams) -> Result<bool> {
    Ok(containment_violations(sa, sb, params)? == 0)
}

/// Number of sampled cells in `sa` and not in `sb`.
pub fn containment_violations(
    sa: &RegionSet,
    sb: &RegionSet,
    params: &GridParams,
) -> Result<usize> {
    let bbox = params.bbox.unwrap_or_else(|| default_bbox(&[sa, sb]));
    let shared = GridParams {
        bbox: Some(bbox),
        nx: params.nx,
        ny: params.ny,
    };
    let ma = rasterize(sa, &shared)?;
    let mb = rasterize(sb, &shared)?;
    Ok(ma.excess_over(&mb))
}

/// Conjunction of several region sets, labeled as an outer approximation:
/// a finite sample of an intersection over an infinite parameter family.
#[derive(Debug, Clone)]
pub struct IntersectionRegion {
    pub sets: Vec<RegionSet>,
}

impl IntersectionRegion {
    /// Every output of this approximation is an outer bound of the true
    /// intersected set.
    pub const LABEL: &'static str = "outer approximation";

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.sets.iter().all(|s| s.contains(z, tol))
    }

    /// Mask of the conjunction over a shared grid.
    pub fn rasterize(&self, params: &GridParams) -> Result<GridMask> {
        if self.sets.is_empty() {
            return Err(Error::InvalidParam(
                "intersection of an empty set list".into(),
            ));
        }
        let refs: Vec<&RegionSet> = self.sets.iter().collect();
        let bbox = params.bbox.unwrap_or_else(|| default_bbox(&refs));
        let shared = GridParams {
            bbox: Some(bbox),
            nx: params.nx,
            ny: params.ny,
        };
        let mut out: Option<GridMask> = None;
        for s in &self.sets {
            let m = rasterize(s, &shared)?;
            out = Some(match out {
                None => m,
                Some(mut acc) => {
                    for (a, b) in acc.bits.iter_mut().zip(&m.bits) {
                        *a = *a && *b;
                    }
                    acc
                }
            });
        }
        Ok(out.expect("nonempty list"))
    }
}

/// Membership predicate of the conjunction of the given sets.
pub fn approx_intersection(sets: Vec<RegionSet>) -> Result<IntersectionRegion> {
    if sets.is_empty() {
        return Err(Error::InvalidParam(
            "intersection of an empty set list".into(),
        ));
    }
    Ok(IntersectionRegion { sets })
}

/// Default sampling plan for approximating intersections over scalings and
/// exponents: 33-point uniform alpha/beta grids and scaling candidates
/// {ones, classification certificate, 16 seeded log-uniform draws}.
#[derive(Debug, Clone)]
pub struct IntersectionPlan {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub scalings: Vec<(String, PositiveScaling)>,
    pub seed: u64,
}

impl IntersectionPlan {
    pub fn default_for(a: &crate::matrix::ComplexMatrix, seed: u64) -> Self {
        let n = a.order();
        let grid: Vec<f64> = (0..33).map(|i| i as f64 / 32.0).collect();
        let mut scalings = vec![("ones".to_string(), PositiveScaling::ones(n))];
        if let Some(cert) = crate::classify::classify_h(a).certificate {
            scalings.push(("certificate".to_string(), cert));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..16 {
            let v: Vec<f64> = (0..n)
                .map(|_| 10f64.powf(rng.gen_range(-2.0..2.0)))
                .collect();
            scalings.push((
                format!("random:{t}"),
                PositiveScaling::new(v).expect("positive draw"),
            ));
        }
        Self {
            alphas: grid.clone(),
            betas: grid,
            scalings,
            seed,
        }
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// SVG export: one group per region set carrying provenance attributes;
/// boundary cells of the mask are filled squares and disk regions also get
/// outline circles. The y axis points up (plot convention).
pub fn masks_to_svg(items: &[(&GridMask, &RegionSet)]) -> String {
    let mut svg = String::new();
    if items.is_empty() {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>".to_string();
    }
    let (lo, hi) = items[0].0.bbox;
    let w = hi.re - lo.re;
    let h = hi.im - lo.im;
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        fmt_f64(lo.re),
        fmt_f64(-hi.im),
        fmt_f64(w),
        fmt_f64(h)
    );
    let palette = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    ];
    for (idx, (mask, set)) in items.iter().enumerate() {
        let color = palette[idx % palette.len()];
        let p = &set.provenance;
        let _ = writeln!(
            svg,
            "<g data-definition=\"{}\" data-k=\"{}\" data-alpha=\"{}\" data-beta=\"{}\" data-params=\"{}\" fill=\"{}\" fill-opacity=\"0.6\" stroke=\"{}\">",
            p.def.label(),
            p.k,
            fmt_f64(p.alpha),
            fmt_f64(p.beta),
            p.params,
            color,
            color
        );
        let dx = (mask.bbox.1.re - mask.bbox.0.re) / mask.nx as f64;
        let dy = (mask.bbox.1.im - mask.bbox.0.im) / mask.ny as f64;
        for iy in 0..mask.ny {
            for ix in 0..mask.nx {
                if !mask.get(ix, iy) {
                    continue;
                }
                let boundary = ix == 0
                    || iy == 0
                    || ix == mask.nx - 1
                    || iy == mask.ny - 1
                    || !mask.get(ix - 1, iy)
                    || !mask.get(ix + 1, iy)
                    || !mask.get(ix, iy - 1)
                    || !mask.get(ix, iy + 1);
                if boundary {
                    let x = mask.bbox.0.re + ix as f64 * dx;
                    let y_top = mask.bbox.0.im + (iy + 1) as f64 * dy;
                    let _ = writeln!(
                        svg,
                        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" stroke=\"none\"/>",
                        fmt_f64(x),
                        fmt_f64(-y_top),
                        fmt_f64(dx),
                        fmt_f64(dy)
                    );
                }
            }
        }
        for region in &set.regions {
            if let Region {
                kind: RegionKind::Disk { center },
                bound,
                ..
            } = region
            {
                let _ = writeln!(
                    svg,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\"/>",
                    fmt_f64(center.re),
                    fmt_f64(-center.im),
                    fmt_f64(*bound)
                );
            }
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{deleted_sums, Axis, ComplexMatrix, PositiveScaling};
    use crate::regions::{build_region_set, RegionDef};

    fn mat(rows: &[&[f64]]) -> ComplexMatrix {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        ComplexMatrix::from_real_rows(&rows).unwrap()
    }

    fn gershgorin(a: &ComplexMatrix) -> crate::regions::RegionSet {
        let g = deleted_sums(a, Axis::Row);
        let h = deleted_sums(a, Axis::Column);
        build_region_set(a, RegionDef::D55, 1, &g, &h, 0.5, 0.5).unwrap()
    }

    #[test]
    fn disk_fill_fraction() {
        let a = mat(&[&[3.0, 1.0], &[1.0, 3.0]]);
        let s = gershgorin(&a);
        let params = GridParams::new(512, 512).with_bbox(
            Complex64::new(1.8, -1.2),
            Complex64::new(4.2, 1.2),
        );
        let mask = rasterize(&s, &params).unwrap();
        let expected = std::f64::consts::PI / (2.4 * 2.4);
        let got = mask.fill_fraction();
        assert!(
            (got - expected).abs() < 0.01 * expected,
            "fill fraction {got} vs {expected}"
        );
    }

    #[test]
    fn zero_radius_set_marks_center_cells() {
        let a = mat(&[&[1.0, 0.0], &[0.0, 5.0]]);
        let s = gershgorin(&a); // radii 0
        let mask = rasterize(&s, &GridParams::new(64, 64)).unwrap();
        assert!(mask.count_set() >= 1 && mask.count_set() <= 4);
    }

    #[test]
    fn empty_region_list_rasterizes_empty() {
        let a = mat(&[&[7.0]]);
        let g = deleted_sums(&a, Axis::Row);
        let h = deleted_sums(&a, Axis::Column);
        // pair-indexed kind on a 1x1 matrix: no regions
        let s = build_region_set(&a, RegionDef::D55, 5, &g, &h, 0.5, 0.5).unwrap();
        assert!(s.regions.is_empty());
        let mask = rasterize(
            &s,
            &GridParams::new(16, 16).with_bbox(Complex64::new(-1.0, -1.0), Complex64::new(1.0, 1.0)),
        )
        .unwrap();
        assert_eq!(mask.count_set(), 0);
    }

    #[test]
    fn intersection_excludes_point_not_in_all() {
        let a = mat(&[&[2.0, 4.0], &[0.5, 2.0]]);
        let ones_set = gershgorin(&a);
        let x = PositiveScaling::new(vec![3.0, 1.0]).unwrap();
        let (g, h) = crate::regions::definition_vectors(&a, RegionDef::D53, Some(&x), Some(&x)).unwrap();
        let scaled_set = build_region_set(&a, RegionDef::D53, 1, &g, &h, 0.5, 0.5).unwrap();
        let z6 = Complex64::new(6.0, 0.0);
        assert!(ones_set.contains(z6, 1e-12)); // |6-2| = 4 <= 4 boundary
        assert!(!scaled_set.contains(z6, 1e-12)); // radii (4/3, 1.5)
        let inter = approx_intersection(vec![ones_set.clone(), scaled_set]).unwrap();
        assert!(!inter.contains(z6, 1e-12));
        // single-element intersection behaves like the element
        let single = approx_intersection(vec![ones_set.clone()]).unwrap();
        for &p in &[Complex64::new(0.0, 0.0), Complex64::new(3.0, 0.5), z6] {
            assert_eq!(single.contains(p, 0.0), ones_set.contains(p, 0.0));
        }
    }

    #[test]
    fn alpha_endpoint_intersection_matches_disk_pair() {
        // intersecting the k=21 sets at alpha in {0, 1} reproduces the
        // row-disk/column-disk intersection pattern
        let a = mat(&[&[2.0, 4.0, 0.0], &[0.5, 2.0, 1.0], &[1.0, 0.0, 3.0]]);
        let g = deleted_sums(&a, Axis::Row);
        let h = deleted_sums(&a, Axis::Column);
        let k21_1 = build_region_set(&a, RegionDef::D55, 21, &g, &h, 1.0, 0.5).unwrap();
        let k21_0 = build_region_set(&a, RegionDef::D55, 21, &g, &h, 0.0, 0.5).unwrap();
        let k1 = build_region_set(&a, RegionDef::D55, 1, &g, &h, 0.5, 0.5).unwrap();
        let k2 = build_region_set(&a, RegionDef::D55, 2, &g, &h, 0.5, 0.5).unwrap();
        let bbox = default_bbox(&[&k21_1, &k21_0, &k1, &k2]);
        let p = GridParams::new(96, 96).with_bbox(bbox.0, bbox.1);
        let inter = approx_intersection(vec![k21_1, k21_0]).unwrap();
        let got = inter.rasterize(&p).unwrap();
        let m1 = rasterize(&k1, &p).unwrap();
        let m2 = rasterize(&k2, &p).unwrap();
        for iy in 0..p.ny {
            for ix in 0..p.nx {
                assert_eq!(
                    got.get(ix, iy),
                    m1.get(ix, iy) && m2.get(ix, iy),
                    "cell ({ix},{iy})"
                );
            }
        }
    }

    #[test]
    fn intersection_plan_defaults_are_deterministic() {
        let a = mat(&[&[3.0, 1.0], &[1.0, 3.0]]);
        let plan = IntersectionPlan::default_for(&a, 9);
        assert_eq!(plan.alphas.len(), 33);
        assert_eq!(plan.betas.len(), 33);
        assert_eq!(plan.alphas[0], 0.0);
        assert_eq!(*plan.alphas.last().unwrap(), 1.0);
        // ones + certificate + 16 random draws
        assert_eq!(plan.scalings.len(), 18);
        assert_eq!(plan.scalings[0].0, "ones");
        assert_eq!(plan.scalings[1].0, "certificate");
        let again = IntersectionPlan::default_for(&a, 9);
        for (p, q) in plan.scalings.iter().zip(&again.scalings) {
            assert_eq!(p.1.values(), q.1.values());
        }
    }

    #[test]
    fn containment_identity_and_strict() {
        let a = mat(&[&[3.0, 1.0], &[1.0, 3.0]]);
        let s = gershgorin(&a);
        let params = GridParams::new(128, 128);
        assert!(check_containment(&s, &s, &params).unwrap());
        let mut bigger = s.clone();
        for r in bigger.regions.iter_mut() {
            r.bound *= 2.0;
        }
        assert!(check_containment(&s, &bigger, &params).unwrap());
        assert!(!check_containment(&bigger, &s, &params).unwrap());
    }

    #[test]
    fn csv_shape() {
        let a = mat(&[&[3.0, 1.0], &[1.0, 3.0]]);
        let s = gershgorin(&a);
        let mask = rasterize(&s, &GridParams::new(8, 4)).unwrap();
        let csv = mask.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().all(|l| l.split(',').count() == 8));
        assert!(csv
            .chars()
            .all(|c| c == '0' || c == '1' || c == ',' || c == '\n'));
    }

    #[test]
    fn svg_contains_groups_and_metadata() {
        let a = mat(&[&[3.0, 1.0], &[1.0, 3.0]]);
        let s = gershgorin(&a);
        let mask = rasterize(&s, &GridParams::new(32, 32)).unwrap();
        let svg = masks_to_svg(&[(&mask, &s)]);
        assert!(svg.contains("<g data-definition=\"5.5\" data-k=\"1\""));
        assert!(svg.contains("<circle"));
        assert!(svg.contains("<rect"));
    }

    #[test]
    fn rejects_tiny_resolution() {
        let a = mat(&[&[3.0, 1.0], &[1.0, 3.0]]);
        let s = gershgorin(&a);
        assert!(rasterize(&s, &GridParams::new(1, 8)).is_err());
    }
}

//! The dominance-criterion catalog and sweep engine.
//!
//! Catalog ids are stable strings "T<list>-<item>", with primed items for
//! the second half of the T4.5 list and "alt" ids for the two T4.3 items
//! whose printed scaling pattern differs from the T4.2 analog (both readings
//! ship). Every entry evaluates one strict inequality family over all rows
//! or all ordered row pairs and certifies generalized diagonal dominance
//! when it holds.

use crate::classify::classify_h;
use crate::gfun::{eval_gfunction, pair_condition_margin, wgm, GFunction, PairFunctionSpec};
use crate::matrix::{ComplexMatrix, PositiveScaling, SumVector};
use crate::{Error, Result};
use std::sync::OnceLock;

/// Which fixed vector pair a standard-list entry evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorPair {
    /// (r~^X, c~^Y)
    TildeWeighted,
    /// (r^X, c^Y)
    Weighted,
    /// (r~, c~)
    Tilde,
    /// (r, c)
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EntryFamily {
    /// T4.1 item 1..=19 on caller-selected (g, h).
    General(u8),
    /// T4.4 item 1..=8 on caller-selected (g, h), mapped onto the mixed list.
    GeneralMixed(u8),
    /// Standard 22-item list on a fixed vector pair.
    Std(u8, VectorPair),
    /// Mixed 9-item list on a fixed vector pair.
    Mixed(u8, VectorPair),
    /// T4.3-14/15 as printed: both factors row sums (or both column sums)
    /// but under two different scalings.
    PrintedMixedScaling(u8),
}

/// One catalog entry with its parameter schema.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub theorem: &'static str,
    pub item: &'static str,
    pub(crate) family: EntryFamily,
    pub uses_alpha: bool,
    pub uses_beta: bool,
    pub uses_x: bool,
    pub uses_y: bool,
    pub uses_gh: bool,
    pub note: Option<&'static str>,
}

/// Arity of the quantifier: one index or an ordered pair.
impl CatalogEntry {
    pub fn is_pair_indexed(&self) -> bool {
        match self.family {
            EntryFamily::General(item) => item > 3,
            EntryFamily::Std(item, _) => item > 4,
            EntryFamily::GeneralMixed(_) | EntryFamily::Mixed(..) => true,
            EntryFamily::PrintedMixedScaling(_) => true,
        }
    }
}

/// Full parameterization of one criterion check.
#[derive(Debug, Clone)]
pub struct CriterionSpec {
    pub catalog_id: String,
    pub alpha: f64,
    pub beta: f64,
    /// G-function selectors for the general lists; default (r, c).
    pub g: Option<GFunction>,
    pub h: Option<GFunction>,
    /// Scalings for the weighted lists.
    pub x: Option<PositiveScaling>,
    pub y: Option<PositiveScaling>,
}

impl CriterionSpec {
    pub fn new(catalog_id: &str) -> Self {
        Self {
            catalog_id: catalog_id.to_string(),
            alpha: 0.5,
            beta: 0.5,
            g: None,
            h: None,
            x: None,
            y: None,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_scalings(mut self, x: PositiveScaling, y: PositiveScaling) -> Self {
        self.x = Some(x);
        self.y = Some(y);
        self
    }

    pub fn with_gh(mut self, g: GFunction, h: GFunction) -> Self {
        self.g = Some(g);
        self.h = Some(h);
        self
    }
}

fn build_catalog() -> Vec<CatalogEntry> {
    use EntryFamily::*;
    let mut cat = Vec::with_capacity(160);

    // T4.1: 19 conditions on arbitrary catalog G-functions (g, h).
    let t41_alpha = |i: u8| !matches!(i, 1 | 4 | 5);
    let t41_beta = |i: u8| i >= 14;
    let t41_items: [&str; 19] = [
        "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16",
        "17", "18", "19",
    ];
    let t41_ids: [&str; 19] = [
        "T4.1-1", "T4.1-2", "T4.1-3", "T4.1-4", "T4.1-5", "T4.1-6", "T4.1-7", "T4.1-8", "T4.1-9",
        "T4.1-10", "T4.1-11", "T4.1-12", "T4.1-13", "T4.1-14", "T4.1-15", "T4.1-16", "T4.1-17",
        "T4.1-18", "T4.1-19",
    ];
    for i in 1..=19u8 {
        cat.push(CatalogEntry {
            id: t41_ids[(i - 1) as usize],
            theorem: "4.1",
            item: t41_items[(i - 1) as usize],
            family: General(i),
            uses_alpha: t41_alpha(i),
            uses_beta: t41_beta(i),
            uses_x: false,
            uses_y: false,
            uses_gh: true,
            note: None,
        });
    }

    // Standard 22-item lists: T4.2 on (r~^X, c~^Y), T4.3 on (r^X, c^Y).
    let std_alpha = |i: u8| !matches!(i, 1 | 2 | 5 | 6 | 7);
    let std_beta = |i: u8| i >= 17;
    let std_uses_g = |i: u8| !matches!(i, 2 | 6 | 15);
    let std_uses_h = |i: u8| !matches!(i, 1 | 5 | 14);
    let t42_ids: [&str; 22] = [
        "T4.2-1", "T4.2-2", "T4.2-3", "T4.2-4", "T4.2-5", "T4.2-6", "T4.2-7", "T4.2-8", "T4.2-9",
        "T4.2-10", "T4.2-11", "T4.2-12", "T4.2-13", "T4.2-14", "T4.2-15", "T4.2-16", "T4.2-17",
        "T4.2-18", "T4.2-19", "T4.2-20", "T4.2-21", "T4.2-22",
    ];
    let t43_ids: [&str; 22] = [
        "T4.3-1", "T4.3-2", "T4.3-3", "T4.3-4", "T4.3-5", "T4.3-6", "T4.3-7", "T4.3-8", "T4.3-9",
        "T4.3-10", "T4.3-11", "T4.3-12", "T4.3-13", "T4.3-14", "T4.3-15", "T4.3-16", "T4.3-17",
        "T4.3-18", "T4.3-19", "T4.3-20", "T4.3-21", "T4.3-22",
    ];
    let items22: [&str; 22] = [
        "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16",
        "17", "18", "19", "20", "21", "22",
    ];
    for i in 1..=22u8 {
        cat.push(CatalogEntry {
            id: t42_ids[(i - 1) as usize],
            theorem: "4.2",
            item: items22[(i - 1) as usize],
            family: Std(i, VectorPair::TildeWeighted),
            uses_alpha: std_alpha(i),
            uses_beta: std_beta(i),
            uses_x: std_uses_g(i),
            uses_y: std_uses_h(i),
            uses_gh: false,
            note: None,
        });
    }
    for i in 1..=22u8 {
        let (family, uses_x, uses_y, note): (EntryFamily, bool, bool, Option<&'static str>) =
            match i {
                14 => (
                    PrintedMixedScaling(14),
                    true,
                    true,
                    Some("printed form mixes the X and Y scalings across the two row-sum factors; T4.3-14alt carries the same-scaling reading"),
                ),
                15 => (
                    PrintedMixedScaling(15),
                    true,
                    true,
                    Some("printed form mixes the X and Y scalings across the two column-sum factors; T4.3-15alt carries the same-scaling reading"),
                ),
                _ => (
                    Std(i, VectorPair::Weighted),
                    std_uses_g(i),
                    std_uses_h(i),
                    None,
                ),
            };
        cat.push(CatalogEntry {
            id: t43_ids[(i - 1) as usize],
            theorem: "4.3",
            item: items22[(i - 1) as usize],
            family,
            uses_alpha: std_alpha(i),
            uses_beta: std_beta(i),
            uses_x,
            uses_y,
            uses_gh: false,
            note,
        });
        if i == 14 {
            cat.push(CatalogEntry {
                id: "T4.3-14alt",
                theorem: "4.3",
                item: "14alt",
                family: Std(14, VectorPair::Weighted),
                uses_alpha: true,
                uses_beta: false,
                uses_x: true,
                uses_y: false,
                uses_gh: false,
                note: Some("same-scaling reading of item 14, matching the T4.2 pattern"),
            });
        }
        if i == 15 {
            cat.push(CatalogEntry {
                id: "T4.3-15alt",
                theorem: "4.3",
                item: "15alt",
                family: Std(15, VectorPair::Weighted),
                uses_alpha: true,
                uses_beta: false,
                uses_x: false,
                uses_y: true,
                uses_gh: false,
                note: Some("same-scaling reading of item 15, matching the T4.2 pattern"),
            });
        }
    }

    // T4.4: 8 mixed-index conditions on arbitrary (g, h).
    let t44_to_mixed: [u8; 8] = [1, 2, 3, 5, 6, 7, 8, 9];
    let t44_ids: [&str; 8] = [
        "T4.4-1", "T4.4-2", "T4.4-3", "T4.4-4", "T4.4-5", "T4.4-6", "T4.4-7", "T4.4-8",
    ];
    for i in 1..=8u8 {
        cat.push(CatalogEntry {
            id: t44_ids[(i - 1) as usize],
            theorem: "4.4",
            item: items22[(i - 1) as usize],
            family: GeneralMixed(t44_to_mixed[(i - 1) as usize]),
            uses_alpha: true,
            uses_beta: i >= 5,
            uses_x: false,
            uses_y: false,
            uses_gh: true,
            note: None,
        });
    }

    // T4.5: 9 mixed items on (r~^X, c~^Y) plus the primed list on (r^X, c^Y).
    let mixed_uses_g = |m: u8| m != 4;
    let mixed_uses_h = |m: u8| m != 3;
    let mixed_beta = |m: u8| m >= 6;
    let t45_ids: [&str; 9] = [
        "T4.5-1", "T4.5-2", "T4.5-3", "T4.5-4", "T4.5-5", "T4.5-6", "T4.5-7", "T4.5-8", "T4.5-9",
    ];
    let t45p_ids: [&str; 9] = [
        "T4.5-1'", "T4.5-2'", "T4.5-3'", "T4.5-4'", "T4.5-5'", "T4.5-6'", "T4.5-7'", "T4.5-8'",
        "T4.5-9'",
    ];
    let items9: [&str; 9] = ["1", "2", "3", "4", "5", "6", "7", "8", "9"];
    let itemsp9: [&str; 9] = ["1'", "2'", "3'", "4'", "5'", "6'", "7'", "8'", "9'"];
    for m in 1..=9u8 {
        cat.push(CatalogEntry {
            id: t45_ids[(m - 1) as usize],
            theorem: "4.5",
            item: items9[(m - 1) as usize],
            family: Mixed(m, VectorPair::TildeWeighted),
            uses_alpha: true,
            uses_beta: mixed_beta(m),
            uses_x: mixed_uses_g(m),
            uses_y: mixed_uses_h(m),
            uses_gh: false,
            note: None,
        });
    }
    for m in 1..=9u8 {
        cat.push(CatalogEntry {
            id: t45p_ids[(m - 1) as usize],
            theorem: "4.5",
            item: itemsp9[(m - 1) as usize],
            family: Mixed(m, VectorPair::Weighted),
            uses_alpha: true,
            uses_beta: mixed_beta(m),
            uses_x: mixed_uses_g(m),
            uses_y: mixed_uses_h(m),
            uses_gh: false,
            note: None,
        });
    }

    // The 31-item lists: T4.6 on (r~, c~), T4.7 on (r, c). Items route to the
    // standard list or the mixed list.
    let route31 = |k: u8| -> EntryFamily31 {
        match k {
            1..=13 => EntryFamily31::Std(k),
            14 => EntryFamily31::Mixed(1),
            15 => EntryFamily31::Mixed(2),
            16..=18 => EntryFamily31::Std(k - 2),
            19..=21 => EntryFamily31::Mixed(k - 16),
            22..=25 => EntryFamily31::Std(k - 5),
            26 | 27 => EntryFamily31::Mixed(k - 20),
            28 | 29 => EntryFamily31::Std(k - 7),
            30 | 31 => EntryFamily31::Mixed(k - 22),
            _ => unreachable!(),
        }
    };
    enum EntryFamily31 {
        Std(u8),
        Mixed(u8),
    }
    let k31_alpha = |k: u8| !matches!(k, 1 | 2 | 5 | 6 | 7);
    let k31_beta = |k: u8| k >= 22;
    let t46_ids: [&str; 31] = [
        "T4.6-1", "T4.6-2", "T4.6-3", "T4.6-4", "T4.6-5", "T4.6-6", "T4.6-7", "T4.6-8", "T4.6-9",
        "T4.6-10", "T4.6-11", "T4.6-12", "T4.6-13", "T4.6-14", "T4.6-15", "T4.6-16", "T4.6-17",
        "T4.6-18", "T4.6-19", "T4.6-20", "T4.6-21", "T4.6-22", "T4.6-23", "T4.6-24", "T4.6-25",
        "T4.6-26", "T4.6-27", "T4.6-28", "T4.6-29", "T4.6-30", "T4.6-31",
    ];
    let t47_ids: [&str; 31] = [
        "T4.7-1", "T4.7-2", "T4.7-3", "T4.7-4", "T4.7-5", "T4.7-6", "T4.7-7", "T4.7-8", "T4.7-9",
        "T4.7-10", "T4.7-11", "T4.7-12", "T4.7-13", "T4.7-14", "T4.7-15", "T4.7-16", "T4.7-17",
        "T4.7-18", "T4.7-19", "T4.7-20", "T4.7-21", "T4.7-22", "T4.7-23", "T4.7-24", "T4.7-25",
        "T4.7-26", "T4.7-27", "T4.7-28", "T4.7-29", "T4.7-30", "T4.7-31",
    ];
    let items31: [&str; 31] = [
        "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16",
        "17", "18", "19", "20", "21", "22", "23", "24", "25", "26", "27", "28", "29", "30", "31",
    ];
    for (ids, thm, pair) in [
        (&t46_ids, "4.6", VectorPair::Tilde),
        (&t47_ids, "4.7", VectorPair::Plain),
    ] {
        for k in 1..=31u8 {
            let family = match route31(k) {
                EntryFamily31::Std(i) => Std(i, pair),
                EntryFamily31::Mixed(m) => Mixed(m, pair),
            };
            cat.push(CatalogEntry {
                id: ids[(k - 1) as usize],
                theorem: thm,
                item: items31[(k - 1) as usize],
                family,
                uses_alpha: k31_alpha(k),
                uses_beta: k31_beta(k),
                uses_x: false,
                uses_y: false,
                uses_gh: false,
                note: None,
            });
        }
    }
    cat
}

static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();

/// The shipped criterion catalog, in stable listing order.
pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG.get_or_init(build_catalog)
}

pub fn catalog_entry(id: &str) -> Result<&'static CatalogEntry> {
    catalog()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownCriterion(id.to_string()))
}

/// Point-indexed condition margins: min over i of |a_{i,i}| - rhs_i.
fn point_margin(rhs: impl Fn(usize) -> f64, diag: &[f64], tau: f64, early: bool) -> f64 {
    let mut margin = f64::INFINITY;
    for (i, &d) in diag.iter().enumerate() {
        margin = margin.min(d - rhs(i));
        if early && margin <= tau {
            return margin;
        }
    }
    margin
}

/// Mixed-list condition margins over ordered pairs.
fn mixed_margin(
    item: u8,
    diag: &[f64],
    g: &[f64],
    h: &[f64],
    a: f64,
    b: f64,
    tau: f64,
    early: bool,
) -> f64 {
    let n = diag.len();
    let mut margin = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            let lhs = if item <= 2 {
                diag[i] * diag[j]
            } else {
                wgm(diag[i], a, diag[j])
            };
            let rhs = match item {
                1 => (a * g[i] + (1.0 - a) * h[j]) * (a * g[j] + (1.0 - a) * h[i]),
                2 => (a * g[i] + (1.0 - a) * g[j]) * (a * h[j] + (1.0 - a) * h[i]),
                3 => a * g[i] + (1.0 - a) * g[j],
                4 => a * h[i] + (1.0 - a) * h[j],
                5 => a * g[i] + (1.0 - a) * h[j],
                6 => a * wgm(g[i], b, h[i]) + (1.0 - a) * wgm(g[j], b, h[j]),
                7 => a * wgm(g[i], b, h[i]) + (1.0 - a) * wgm(h[j], b, g[j]),
                8 => wgm(a * g[i] + (1.0 - a) * h[j], b, a * h[i] + (1.0 - a) * g[j]),
                9 => wgm(a * g[i] + (1.0 - a) * g[j], b, a * h[i] + (1.0 - a) * h[j]),
                _ => unreachable!("mixed item out of range"),
            };
            margin = margin.min(lhs - rhs);
            if early && margin <= tau {
                return margin;
            }
        }
    }
    margin
}

/// Standard-list margin for items 5..=22 via the matching pair function.
fn std_pair_margin(
    item: u8,
    diag: &[f64],
    g: &[f64],
    h: &[f64],
    a: f64,
    b: f64,
    tau: f64,
    early: bool,
) -> f64 {
    let (kind, fa, fb) = match item {
        5 => (2, 1.0, 0.0),
        6 => (2, 0.0, 0.0),
        7 => (3, 1.0, 0.0),
        8 => (2, a, 0.0),
        9 => (3, a, 0.0),
        10 => (4, a, 0.0),
        11 => (5, a, 0.0),
        12 => (6, a, 0.0),
        13 => (7, a, 0.0),
        14 => (10, a, 1.0),
        15 => (10, a, 0.0),
        16 => (1, a, 0.0),
        17 => (8, a, b),
        18 => (9, a, b),
        19 => (10, a, b),
        20 => (11, a, b),
        21 => (12, a, b),
        22 => (13, a, b),
        _ => unreachable!("not a pair item"),
    };
    let spec = PairFunctionSpec::new(kind, fa, fb).expect("valid pair spec");
    pair_condition_margin(&spec, diag, g, h, tau, early)
}

fn std_margin(
    item: u8,
    diag: &[f64],
    g: &[f64],
    h: &[f64],
    a: f64,
    b: f64,
    tau: f64,
    early: bool,
) -> f64 {
    match item {
        1 => point_margin(|i| g[i], diag, tau, early),
        2 => point_margin(|i| h[i], diag, tau, early),
        3 => point_margin(|i| wgm(g[i], a, h[i]), diag, tau, early),
        4 => point_margin(|i| a * g[i] + (1.0 - a) * h[i], diag, tau, early),
        _ => std_pair_margin(item, diag, g, h, a, b, tau, early),
    }
}

/// General-list (T4.1) margin via the matching pair function; items 1..=3
/// are point-indexed.
fn general_margin(
    item: u8,
    diag: &[f64],
    g: &[f64],
    h: &[f64],
    a: f64,
    b: f64,
    tau: f64,
    early: bool,
) -> f64 {
    let pair = |kind: u8, fa: f64, fb: f64| {
        let spec = PairFunctionSpec::new(kind, fa, fb).expect("valid pair spec");
        pair_condition_margin(&spec, diag, g, h, tau, early)
    };
    match item {
        1 => point_margin(|i| g[i], diag, tau, early),
        2 => point_margin(|i| wgm(g[i], a, h[i]), diag, tau, early),
        3 => point_margin(|i| a * g[i] + (1.0 - a) * h[i], diag, tau, early),
        4 => pair(2, 1.0, 0.0),
        5 => pair(3, 1.0, 0.0),
        6..=11 => pair(item - 4, a, 0.0),
        12 => pair(10, a, 1.0),
        13 => pair(1, a, 0.0),
        14..=19 => pair(item - 6, a, b),
        _ => unreachable!("general item out of range"),
    }
}

fn resolve_pair(
    a: &ComplexMatrix,
    pair: VectorPair,
    entry: &CatalogEntry,
    x: Option<&PositiveScaling>,
    y: Option<&PositiveScaling>,
) -> Result<(SumVector, SumVector)> {
    let need = |s: Option<&PositiveScaling>, used: bool| -> Result<PositiveScaling> {
        if !used {
            return Ok(s.cloned().unwrap_or_else(|| PositiveScaling::ones(a.order())));
        }
        s.cloned()
            .ok_or_else(|| Error::MissingScaling(entry.id.to_string()))
    };
    let (gf, hf) = match pair {
        VectorPair::TildeWeighted => (
            GFunction::RowTildeWeighted(need(x, entry.uses_x)?),
            GFunction::ColTildeWeighted(need(y, entry.uses_y)?),
        ),
        VectorPair::Weighted => (
            GFunction::RowWeighted(need(x, entry.uses_x)?),
            GFunction::ColWeighted(need(y, entry.uses_y)?),
        ),
        VectorPair::Tilde => (GFunction::RowTilde, GFunction::ColTilde),
        VectorPair::Plain => (GFunction::Row, GFunction::Col),
    };
    Ok((eval_gfunction(&gf, a)?, eval_gfunction(&hf, a)?))
}

/// Margin of the named criterion: min over quantified indices of lhs - rhs.
/// The criterion fires iff the margin exceeds `tau`. With `early_exit`, the
/// scan stops at the first failing index, so the reported margin is then a
/// witness of failure rather than the global minimum.
pub fn criterion_margin(
    spec: &CriterionSpec,
    a: &ComplexMatrix,
    tau: f64,
    early_exit: bool,
) -> Result<f64> {
    let entry = catalog_entry(&spec.catalog_id)?;
    let diag = a.diagonal_abs();
    let alpha = spec.alpha;
    let beta = spec.beta;
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParam("alpha and beta must be in [0, 1]".into()));
    }
    match entry.family {
        EntryFamily::General(item) | EntryFamily::GeneralMixed(item) => {
            let gf = spec.g.clone().unwrap_or(GFunction::Row);
            let hf = spec.h.clone().unwrap_or(GFunction::Col);
            let g = eval_gfunction(&gf, a)?;
            let h = eval_gfunction(&hf, a)?;
            Ok(match entry.family {
                EntryFamily::General(_) => general_margin(
                    item,
                    &diag,
                    g.values(),
                    h.values(),
                    alpha,
                    beta,
                    tau,
                    early_exit,
                ),
                _ => mixed_margin(
                    item,
                    &diag,
                    g.values(),
                    h.values(),
                    alpha,
                    beta,
                    tau,
                    early_exit,
                ),
            })
        }
        EntryFamily::Std(item, pair) => {
            let (g, h) = resolve_pair(a, pair, entry, spec.x.as_ref(), spec.y.as_ref())?;
            Ok(std_margin(
                item,
                &diag,
                g.values(),
                h.values(),
                alpha,
                beta,
                tau,
                early_exit,
            ))
        }
        EntryFamily::Mixed(item, pair) => {
            let (g, h) = resolve_pair(a, pair, entry, spec.x.as_ref(), spec.y.as_ref())?;
            Ok(mixed_margin(
                item,
                &diag,
                g.values(),
                h.values(),
                alpha,
                beta,
                tau,
                early_exit,
            ))
        }
        EntryFamily::PrintedMixedScaling(item) => {
            let x = spec
                .x
                .clone()
                .ok_or_else(|| Error::MissingScaling(entry.id.to_string()))?;
            let y = spec
                .y
                .clone()
                .ok_or_else(|| Error::MissingScaling(entry.id.to_string()))?;
            let (gx, gy) = match item {
                14 => (GFunction::RowWeighted(x), GFunction::RowWeighted(y)),
                15 => (GFunction::ColWeighted(x), GFunction::ColWeighted(y)),
                _ => unreachable!(),
            };
            let u = eval_gfunction(&gx, a)?;
            let v = eval_gfunction(&gy, a)?;
            let f = PairFunctionSpec::new(1, alpha, 0.0).expect("valid pair spec");
            Ok(pair_condition_margin(
                &f,
                &diag,
                u.values(),
                v.values(),
                tau,
                early_exit,
            ))
        }
    }
}

/// Evaluates exactly the named inequality family over all rows (or ordered
/// pairs) and returns whether every instance holds with margin > tau.
/// Pair-indexed families are vacuously true for matrices of order 1; the
/// soundness guarantee assumes order >= 2.
pub fn check_criterion(spec: &CriterionSpec, a: &ComplexMatrix, tau: f64) -> Result<bool> {
    Ok(criterion_margin(spec, a, tau, true)? > tau)
}

/// Sweep configuration: which entries, parameter grids, and labeled scaling
/// candidates to enumerate.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    /// Catalog ids to run; empty means the whole catalog.
    pub ids: Vec<String>,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub x_scalings: Vec<(String, PositiveScaling)>,
    pub y_scalings: Vec<(String, PositiveScaling)>,
    /// (g, h) selectors for the general lists.
    pub gh: (GFunction, GFunction),
    pub tau: f64,
}

pub const DEFAULT_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

impl SweepPlan {
    /// Default plan: five-point alpha/beta grids, scalings {ones} plus the
    /// classification certificate of A (for X) and of A^T (for Y) when they
    /// exist, (g, h) = (r, c).
    pub fn default_for(a: &ComplexMatrix) -> Self {
        let n = a.order();
        let mut x_scalings = vec![("ones".to_string(), PositiveScaling::ones(n))];
        let mut y_scalings = x_scalings.clone();
        if let Some(cert) = classify_h(a).certificate {
            x_scalings.push(("certificate".to_string(), cert));
        }
        if let Some(cert_t) = classify_h(&a.transpose()).certificate {
            y_scalings.push(("certificate_t".to_string(), cert_t));
        }
        Self {
            ids: Vec::new(),
            alphas: DEFAULT_GRID.to_vec(),
            betas: DEFAULT_GRID.to_vec(),
            x_scalings,
            y_scalings,
            gh: (GFunction::Row, GFunction::Col),
            tau: 0.0,
        }
    }
}

/// One sweep row; unused parameters are None.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: String,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub fired: bool,
    pub margin: f64,
}

/// Runs the plan over the catalog in listing order, enumerating only the
/// parameters each entry uses; results are deterministic.
pub fn sweep_criteria(a: &ComplexMatrix, plan: &SweepPlan) -> Result<Vec<CriterionResult>> {
    let mut results = Vec::new();
    let selected: Vec<&CatalogEntry> = if plan.ids.is_empty() {
        catalog().iter().collect()
    } else {
        let mut v = Vec::new();
        for id in &plan.ids {
            v.push(catalog_entry(id)?);
        }
        v.sort_by_key(|e| catalog().iter().position(|c| c.id == e.id));
        v.dedup_by_key(|e| e.id);
        v
    };
    let one = [("".to_string(), PositiveScaling::ones(a.order()))];
    for entry in selected {
        let xs: &[(String, PositiveScaling)] = if entry.uses_x { &plan.x_scalings } else { &one };
        let ys: &[(String, PositiveScaling)] = if entry.uses_y { &plan.y_scalings } else { &one };
        let alphas: &[f64] = if entry.uses_alpha { &plan.alphas } else { &[0.5] };
        let betas: &[f64] = if entry.uses_beta { &plan.betas } else { &[0.5] };
        for (xl, xv) in xs {
            for (yl, yv) in ys {
                for &alpha in alphas {
                    for &beta in betas {
                        let spec = CriterionSpec {
                            catalog_id: entry.id.to_string(),
                            alpha,
                            beta,
                            g: Some(plan.gh.0.clone()),
                            h: Some(plan.gh.1.clone()),
                            x: Some(xv.clone()),
                            y: Some(yv.clone()),
                        };
                        let margin = criterion_margin(&spec, a, plan.tau, true)?;
                        results.push(CriterionResult {
                            id: entry.id.to_string(),
                            alpha: entry.uses_alpha.then_some(alpha),
                            beta: entry.uses_beta.then_some(beta),
                            x: entry.uses_x.then(|| xl.clone()),
                            y: entry.uses_y.then(|| yl.clone()),
                            fired: margin > plan.tau,
                            margin,
                        });
                    }
                }
            }
        }
    }
    Ok(results)
}

/// Catalog ids that fired at least once, in catalog order.
pub fn fired_ids(results: &[CriterionResult]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for e in catalog() {
        if results.iter().any(|r| r.fired && r.id == e.id) {
            out.push(e.id.to_string());
        }
    }
    out
}

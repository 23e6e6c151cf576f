//! Command-line front end: ingest Matrix Market files, classify dominance
//! structure, sweep the criterion catalog, build and plot inclusion regions,
//! and verify spectra against them.
//!
//! Exit codes: 0 success, 1 verification found violations, 2 input error.

use clap::{Parser, Subcommand};
use gddkit::classify::classify_h;
use gddkit::criteria::{catalog, fired_ids, sweep_criteria, SweepPlan, DEFAULT_GRID};
use gddkit::eigen::{eigenvalues, verify_spectrum_inclusion};
use gddkit::matrix::{ComplexMatrix, PositiveScaling};
use gddkit::mm::{parse_matrix_market, parse_spectrum};
use gddkit::raster::{approx_intersection, default_bbox, masks_to_svg, rasterize, GridParams};
use gddkit::regions::{
    build_region_set, definition_vectors, k_uses_alpha, k_uses_beta, RegionDef, RegionSet,
};
use gddkit::report::{
    to_json, BundleReport, CatalogListing, CatalogRow, ClassifyReport, CriteriaReport,
    CriterionRow, IntersectionRow, RegionSetRow, RegionsReport, VerifyBlock, VerifyReport, SCHEMA,
};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gddkit",
    version,
    about = "Diagonal-dominance certificates and eigenvalue inclusion regions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide SDD / Z / M / H-matrix status and emit a scaling certificate.
    Classify {
        #[arg(long)]
        input: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the criterion catalog, or list it with --list.
    Criteria {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Print the catalog (id, parameter schema, provenance) and exit.
        #[arg(long)]
        list: bool,
        /// Comma-separated catalog ids; default is the whole catalog.
        #[arg(long)]
        ids: Option<String>,
        #[arg(long, default_value = "0,0.25,0.5,0.75,1")]
        alpha_grid: String,
        #[arg(long, default_value = "0,0.25,0.5,0.75,1")]
        beta_grid: String,
        /// Scaling candidates: ones | certificate | random:<k> | file:<path>.
        #[arg(long, default_value = "ones,certificate")]
        scalings: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Strictness margin for the > comparisons.
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the sweep table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build region sets, rasterize them, and export SVG/CSV masks.
    Regions {
        #[arg(long)]
        input: PathBuf,
        /// Region catalog: 5.1, 5.2, 5.3, 5.4 or 5.5.
        #[arg(long, default_value = "5.5")]
        def: String,
        /// Comma-separated kind numbers.
        #[arg(long, default_value = "1")]
        k: String,
        #[arg(long, default_value = "0.5")]
        alpha_grid: String,
        #[arg(long, default_value = "0.5")]
        beta_grid: String,
        #[arg(long, default_value = "ones")]
        scalings: String,
        #[arg(long, default_value = "256x256")]
        resolution: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Also compute the intersection of every enumerated set (an outer
        /// approximation of the family intersection).
        #[arg(long)]
        intersect: bool,
        /// SVG output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV mask output path (intersection mask when --intersect).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSON summary output path (stdout when omitted).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check every eigenvalue against region sets; exit 1 on violations.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "5.5")]
        def: String,
        #[arg(long, default_value = "1")]
        k: String,
        #[arg(long, default_value = "0.5")]
        alpha_grid: String,
        #[arg(long, default_value = "0.5")]
        beta_grid: String,
        #[arg(long, default_value = "ones")]
        scalings: String,
        /// Externally supplied spectrum file (one "re im" per line).
        #[arg(long)]
        spectrum: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bundle classify + criteria + verify into one JSON report.
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "5.5")]
        def: String,
        #[arg(long, default_value = "1")]
        k: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_matrix_market(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => {
            std::fs::write(p, content).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let v: f64 = tok
            .trim()
            .parse()
            .map_err(|_| format!("bad grid value '{tok}'"))?;
        if !(0.0..=1.0).contains(&v) {
            return Err(format!("grid value {v} outside [0, 1]"));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err("empty grid".into());
    }
    Ok(out)
}

fn parse_k_list(s: &str, def: RegionDef) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let k: usize = tok
            .trim()
            .parse()
            .map_err(|_| format!("bad kind number '{tok}'"))?;
        if k < 1 || k > def.max_k() {
            return Err(format!(
                "kind {k} out of range for definition {} (1..={})",
                def.label(),
                def.max_k()
            ));
        }
        out.push(k);
    }
    Ok(out)
}

fn parse_resolution(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(['x', 'X']).collect();
    if parts.len() != 2 {
        return Err(format!("resolution '{s}' should look like 512x512"));
    }
    let nx: usize = parts[0].parse().map_err(|_| "bad resolution".to_string())?;
    let ny: usize = parts[1].parse().map_err(|_| "bad resolution".to_string())?;
    Ok((nx, ny))
}

fn read_scaling_file(path: &str, n: usize) -> Result<PositiveScaling, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let vals: Result<Vec<f64>, _> = text.split_whitespace().map(|t| t.parse::<f64>()).collect();
    let vals = vals.map_err(|_| format!("{path}: scaling entries must be numbers"))?;
    if vals.len() != n {
        return Err(format!(
            "{path}: scaling has {} entries, matrix has order {n}",
            vals.len()
        ));
    }
    PositiveScaling::new(vals).map_err(|e| format!("{path}: {e}"))
}

/// Resolves scaling tokens to labeled (X, Y) candidate pairs. The
/// "certificate" token pairs the classification certificate of A with the
/// certificate of A transposed.
fn resolve_scaling_pairs(
    tokens: &str,
    a: &ComplexMatrix,
    seed: u64,
) -> Result<Vec<(String, PositiveScaling, PositiveScaling)>, String> {
    let n = a.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for tok in tokens.split(',') {
        let tok = tok.trim();
        if tok == "ones" {
            out.push((
                "ones".to_string(),
                PositiveScaling::ones(n),
                PositiveScaling::ones(n),
            ));
        } else if tok == "certificate" {
            let cx = classify_h(a).certificate;
            let cy = classify_h(&a.transpose()).certificate;
            if let (Some(x), Some(y)) = (cx, cy) {
                out.push(("certificate".to_string(), x, y));
            }
            // token contributes nothing when the matrix is not GDD
        } else if let Some(count) = tok.strip_prefix("random:") {
            let count: usize = count
                .parse()
                .map_err(|_| format!("bad random scaling count in '{tok}'"))?;
            for t in 0..count {
                let mut draw = || {
                    PositiveScaling::new(
                        (0..n)
                            .map(|_| 10f64.powf(rng.gen_range(-2.0..2.0)))
                            .collect(),
                    )
                    .expect("positive draw")
                };
                let x = draw();
                let y = draw();
                out.push((format!("random:{t}"), x, y));
            }
        } else if let Some(path) = tok.strip_prefix("file:") {
            let s = read_scaling_file(path, n)?;
            out.push((format!("file:{path}"), s.clone(), s));
        } else {
            return Err(format!("unknown scaling token '{tok}'"));
        }
    }
    if out.is_empty() {
        return Err("no usable scalings resolved".into());
    }
    Ok(out)
}

/// Enumerates region sets for the selected kinds over the parameter grids,
/// skipping grid dimensions a kind does not read.
fn enumerate_sets(
    a: &ComplexMatrix,
    def: RegionDef,
    ks: &[usize],
    alphas: &[f64],
    betas: &[f64],
    pairs: &[(String, PositiveScaling, PositiveScaling)],
) -> Result<Vec<RegionSet>, String> {
    let weighted = matches!(def, RegionDef::D52 | RegionDef::D53);
    let mut sets = Vec::new();
    let pairs_used: &[(String, PositiveScaling, PositiveScaling)] =
        if weighted { pairs } else { &pairs[..1] };
    for (label, x, y) in pairs_used {
        let (g, h) = definition_vectors(a, def, weighted.then_some(x), weighted.then_some(y))
            .map_err(|e| e.to_string())?;
        for &k in ks {
            let al: &[f64] = if k_uses_alpha(def, k) { alphas } else { &[0.5] };
            let bl: &[f64] = if k_uses_beta(def, k) { betas } else { &[0.5] };
            for &alpha in al {
                for &beta in bl {
                    let mut set = build_region_set(a, def, k, &g, &h, alpha, beta)
                        .map_err(|e| e.to_string())?;
                    set.provenance.params =
                        if weighted { label.clone() } else { String::new() };
                    sets.push(set);
                }
            }
        }
    }
    Ok(sets)
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { input, out } => {
            let a = read_matrix(&input)?;
            let rep = classify_h(&a);
            let report =
                ClassifyReport::from_classification(&input.display().to_string(), a.order(), &rep);
            write_or_print(&out, &to_json(&report))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Criteria {
            input,
            list,
            ids,
            alpha_grid,
            beta_grid,
            scalings,
            seed,
            tau,
            out,
            csv,
        } => {
            if list {
                let listing = CatalogListing {
                    schema: SCHEMA,
                    command: "criteria --list",
                    entries: catalog().iter().map(CatalogRow::from).collect(),
                };
                write_or_print(&out, &to_json(&listing))?;
                return Ok(ExitCode::SUCCESS);
            }
            let input = input.ok_or("criteria needs --input (or --list)")?;
            let a = read_matrix(&input)?;
            let pairs = resolve_scaling_pairs(&scalings, &a, seed.unwrap_or(0))?;
            let mut plan = SweepPlan::default_for(&a);
            plan.alphas = parse_grid(&alpha_grid)?;
            plan.betas = parse_grid(&beta_grid)?;
            plan.tau = tau;
            plan.x_scalings = pairs
                .iter()
                .map(|(l, x, _)| (l.clone(), x.clone()))
                .collect();
            plan.y_scalings = pairs
                .iter()
                .map(|(l, _, y)| (l.clone(), y.clone()))
                .collect();
            if let Some(ids) = ids {
                plan.ids = ids.split(',').map(|s| s.trim().to_string()).collect();
            }
            let results = sweep_criteria(&a, &plan).map_err(|e| e.to_string())?;
            let fired = fired_ids(&results);
            let report = CriteriaReport {
                schema: SCHEMA,
                command: "criteria",
                input: input.display().to_string(),
                seed,
                tau,
                gdd_certified: !fired.is_empty(),
                fired,
                results: results.iter().map(CriterionRow::from).collect(),
            };
            if let Some(csv_path) = csv {
                let mut table = String::from("id,alpha,beta,x,y,fired,margin\n");
                for r in &results {
                    let opt = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
                    let opts = |v: &Option<String>| v.clone().unwrap_or_default();
                    table.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        r.id,
                        opt(&r.alpha),
                        opt(&r.beta),
                        opts(&r.x),
                        opts(&r.y),
                        r.fired,
                        r.margin
                    ));
                }
                std::fs::write(&csv_path, table)
                    .map_err(|e| format!("cannot write {}: {e}", csv_path.display()))?;
            }
            write_or_print(&out, &to_json(&report))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Regions {
            input,
            def,
            k,
            alpha_grid,
            beta_grid,
            scalings,
            resolution,
            seed,
            intersect,
            out,
            csv,
            json,
        } => {
            let a = read_matrix(&input)?;
            let def = RegionDef::parse(&def).map_err(|e| e.to_string())?;
            let ks = parse_k_list(&k, def)?;
            let alphas = parse_grid(&alpha_grid)?;
            let betas = parse_grid(&beta_grid)?;
            let (nx, ny) = parse_resolution(&resolution)?;
            let pairs = resolve_scaling_pairs(&scalings, &a, seed.unwrap_or(0))?;
            let sets = enumerate_sets(&a, def, &ks, &alphas, &betas, &pairs)?;
            // shared frame: Gersgorin disks of A inflated 10%
            let (gg, hh) =
                definition_vectors(&a, RegionDef::D55, None, None).map_err(|e| e.to_string())?;
            let gersh = build_region_set(&a, RegionDef::D55, 1, &gg, &hh, 0.5, 0.5)
                .map_err(|e| e.to_string())?;
            let mut frame_sets: Vec<&RegionSet> = vec![&gersh];
            frame_sets.extend(sets.iter());
            let bbox = default_bbox(&frame_sets);
            let params = GridParams {
                bbox: Some(bbox),
                nx,
                ny,
            };
            let mut masks = Vec::new();
            for s in &sets {
                masks.push(rasterize(s, &params).map_err(|e| e.to_string())?);
            }
            let mut rows = Vec::new();
            for (s, m) in sets.iter().zip(&masks) {
                rows.push(RegionSetRow {
                    def: s.provenance.def.label().to_string(),
                    k: s.provenance.k,
                    alpha: s.provenance.alpha,
                    beta: s.provenance.beta,
                    params: s.provenance.params.clone(),
                    regions: s.regions.len(),
                    cells_set: Some(m.count_set()),
                });
            }
            let mut intersection_row = None;
            let mut intersection_mask = None;
            if intersect {
                let inter = approx_intersection(sets.clone()).map_err(|e| e.to_string())?;
                let mask = inter.rasterize(&params).map_err(|e| e.to_string())?;
                intersection_row = Some(IntersectionRow {
                    label: gddkit::raster::IntersectionRegion::LABEL,
                    member_sets: sets.len(),
                    cells_set: mask.count_set(),
                });
                intersection_mask = Some(mask);
            }
            if let Some(svg_path) = out {
                let items: Vec<(&gddkit::raster::GridMask, &RegionSet)> =
                    masks.iter().zip(sets.iter()).collect();
                std::fs::write(&svg_path, masks_to_svg(&items))
                    .map_err(|e| format!("cannot write {}: {e}", svg_path.display()))?;
            }
            if let Some(csv_path) = csv {
                let mask = intersection_mask
                    .as_ref()
                    .or(masks.first())
                    .ok_or("no mask to export")?;
                std::fs::write(&csv_path, mask.to_csv())
                    .map_err(|e| format!("cannot write {}: {e}", csv_path.display()))?;
            }
            let report = RegionsReport {
                schema: SCHEMA,
                command: "regions",
                input: input.display().to_string(),
                resolution: (nx, ny),
                bbox: ((bbox.0.re, bbox.0.im), (bbox.1.re, bbox.1.im)),
                sets: rows,
                intersection: intersection_row,
            };
            write_or_print(&json, &to_json(&report))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            input,
            def,
            k,
            alpha_grid,
            beta_grid,
            scalings,
            spectrum,
            tol,
            out,
        } => {
            let a = read_matrix(&input)?;
            let def = RegionDef::parse(&def).map_err(|e| e.to_string())?;
            let ks = parse_k_list(&k, def)?;
            let alphas = parse_grid(&alpha_grid)?;
            let betas = parse_grid(&beta_grid)?;
            let pairs = resolve_scaling_pairs(&scalings, &a, 0)?;
            let (eigs, source) = match &spectrum {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                    (
                        parse_spectrum(&text).map_err(|e| e.to_string())?,
                        path.display().to_string(),
                    )
                }
                None => (
                    eigenvalues(&a).map_err(|e| e.to_string())?.eigenvalues,
                    "computed".to_string(),
                ),
            };
            if eigs.len() != a.order() {
                return Err(format!(
                    "spectrum has {} values, matrix has order {}",
                    eigs.len(),
                    a.order()
                ));
            }
            let sets = enumerate_sets(&a, def, &ks, &alphas, &betas, &pairs)?;
            let mut blocks = Vec::new();
            let mut total = 0usize;
            for s in &sets {
                let rep = verify_spectrum_inclusion(s, &eigs, tol);
                total += rep.violations;
                blocks.push(VerifyBlock::from_report(s, &rep));
            }
            let report = VerifyReport {
                schema: SCHEMA,
                command: "verify",
                input: input.display().to_string(),
                tol,
                spectrum_source: source,
                spectrum: eigs.iter().map(|z| (z.re, z.im)).collect(),
                total_violations: total,
                blocks,
            };
            write_or_print(&out, &to_json(&report))?;
            Ok(if total == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Report {
            input,
            def,
            k,
            seed,
            tol,
            out,
        } => {
            let a = read_matrix(&input)?;
            let input_name = input.display().to_string();
            let classify_rep = classify_h(&a);
            let classify =
                ClassifyReport::from_classification(&input_name, a.order(), &classify_rep);
            let mut plan = SweepPlan::default_for(&a);
            plan.alphas = DEFAULT_GRID.to_vec();
            plan.betas = DEFAULT_GRID.to_vec();
            let results = sweep_criteria(&a, &plan).map_err(|e| e.to_string())?;
            let fired = fired_ids(&results);
            let criteria_rep = CriteriaReport {
                schema: SCHEMA,
                command: "criteria",
                input: input_name.clone(),
                seed,
                tau: 0.0,
                gdd_certified: !fired.is_empty(),
                fired,
                results: results.iter().map(CriterionRow::from).collect(),
            };
            let defp = RegionDef::parse(&def).map_err(|e| e.to_string())?;
            let ks = parse_k_list(&k, defp)?;
            let pairs = resolve_scaling_pairs("ones", &a, seed.unwrap_or(0))?;
            let eigs = eigenvalues(&a).map_err(|e| e.to_string())?.eigenvalues;
            let sets = enumerate_sets(&a, defp, &ks, &[0.5], &[0.5], &pairs)?;
            let mut blocks = Vec::new();
            let mut total = 0usize;
            for s in &sets {
                let rep = verify_spectrum_inclusion(s, &eigs, tol);
                total += rep.violations;
                blocks.push(VerifyBlock::from_report(s, &rep));
            }
            let verify = VerifyReport {
                schema: SCHEMA,
                command: "verify",
                input: input_name,
                tol,
                spectrum_source: "computed".to_string(),
                spectrum: eigs.iter().map(|z: &Complex64| (z.re, z.im)).collect(),
                total_violations: total,
                blocks,
            };
            let bundle = BundleReport {
                schema: SCHEMA,
                command: "report",
                classify,
                criteria: criteria_rep,
                verify,
            };
            write_or_print(&out, &to_json(&bundle))?;
            Ok(if total == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => fail(msg),
    }
}

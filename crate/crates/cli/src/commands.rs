use serde::Serialize;
use serde_json::json;
use wrlattice::ecdp::default_radius_sq;
use wrlattice::ideal::square_free_range;
use wrlattice::io::{read_matrix, CodeDescriptor, MatrixData};
use wrlattice::minima::wr_from_report;
use wrlattice::*;

use crate::config::{parse_ideal, AnalyzeParams, Format, IdealScanParams, SearchParams, SimulateParams};
use crate::failure::{Failure, EMPTY, EXPECTATION};
use crate::output::{csv_bytes, json_bytes, Report};

fn columns_string(cols: &[Vec<i64>]) -> String {
    cols.iter().map(|c| c.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(";")
}

#[derive(Serialize)]
struct SearchRow {
    index: u64,
    lambda1_sq: u64,
    wr_class: WrClass,
    iterations_used: u64,
    /// Basis columns separated by `;`.
    basis: String,
    hnf: String,
}

pub fn search(p: &SearchParams, seed: u64, format: Format) -> Result<Report, Failure> {
    let mut cfg = SearchConfig::new(p.n, p.index)?;
    cfg.mode = p.mode.into();
    cfg.seed = seed;
    cfg.max_iterations = p.max_iterations;
    if !p.norms.is_empty() {
        cfg.norm_candidates = p.norms.clone();
    }
    let (hits, exhausted) = match run_search(&cfg) {
        Ok(h) => (h, false),
        Err(Error::BudgetExhausted { .. }) => (Vec::new(), true),
        Err(e) => return Err(e.into()),
    };
    let body = match format {
        Format::Json => json_bytes(&json!({
            "n": p.n,
            "index": p.index,
            "mode": p.mode,
            "seed": seed,
            "budget_exhausted": exhausted,
            "hits": hits,
        })),
        Format::Csv => csv_bytes(
            &["index", "lambda1_sq", "wr_class", "iterations_used", "basis", "hnf"],
            &hits
                .iter()
                .map(|h| SearchRow {
                    index: h.index,
                    lambda1_sq: h.lambda1_sq,
                    wr_class: h.wr_class,
                    iterations_used: h.iterations_used,
                    basis: columns_string(&h.basis),
                    hnf: columns_string(&h.hnf),
                })
                .collect::<Vec<_>>(),
        )?,
    };
    let best = hits.iter().map(|h| h.lambda1_sq).max();
    let mut r = Report::new(body, p, json!({ "hits": hits.len(), "best_lambda1_sq": best, "budget_exhausted": exhausted }));
    if hits.is_empty() {
        r.exit = EMPTY;
        r.diagnostic = Some(if exhausted {
            format!("no WR sublattice of index {} found within {} sampled tuples", p.index, p.max_iterations)
        } else {
            format!("Z^{} has no WR sublattice of index {}", p.n, p.index)
        });
    }
    Ok(r)
}

/// Known WR principal ideals: `(D, p, q, index)` for the generator `(p + q√D)/2`.
pub const KNOWN_IDEALS: [(i64, i64, i64, u64); 10] = [
    (3, 6, 2, 6),
    (15, 10, 2, 10),
    (35, 14, 2, 14),
    (143, 26, 2, 26),
    (195, 30, 2, 30),
    (21, 7, -1, 7),
    (77, 11, -1, 11),
    (165, 15, -1, 15),
    (221, 17, -1, 17),
    (285, 19, -1, 19),
];

#[derive(Serialize)]
struct ScanRow {
    #[serde(rename = "D")]
    d: i64,
    #[serde(rename = "Delta")]
    delta: i64,
    generator_p: String,
    generator_q: String,
    denom: u8,
    index: u64,
    lambda1_sq: String,
    wr_class: WrClass,
    largenorm_ok: bool,
}

fn same_ideal(a: &IdealLattice, b: &IdealLattice) -> bool {
    a.norm() == b.norm() && a.basis_elements().iter().all(|x| b.contains(x))
}

pub fn ideal_scan(p: &IdealScanParams, format: Format) -> Result<Report, Failure> {
    if p.d_from > p.d_to {
        return Err(Failure::usage(format!("empty range {}..={}", p.d_from, p.d_to)));
    }
    let ds: Vec<i64> = square_free_range(p.d_from, p.d_to)
        .into_iter()
        .filter(|d| !(p.even_only && d % 2 != 0) && !(p.odd_only && d % 2 == 0))
        .collect();
    if ds.is_empty() {
        return Err(Failure::usage(format!("no square-free D > 1 in {}..={} matches the parity filter", p.d_from, p.d_to)));
    }
    let hits = wr_principal_scan(&ds, p.bound_factor)?;
    let rows: Vec<ScanRow> = hits
        .iter()
        .map(|h| {
            let (gp, gq, denom) = h.generator.display_parts();
            ScanRow {
                d: h.d,
                delta: h.discriminant,
                generator_p: gp.to_string(),
                generator_q: gq.to_string(),
                denom,
                index: h.index,
                lambda1_sq: h.lambda1.to_string(),
                wr_class: h.class,
                largenorm_ok: h.largenorm_ok,
            }
        })
        .collect();
    let body = match format {
        Format::Csv => csv_bytes(
            &["D", "Delta", "generator_p", "generator_q", "denom", "index", "lambda1_sq", "wr_class", "largenorm_ok"],
            &rows,
        )?,
        Format::Json => json_bytes(&rows),
    };
    let mut missing = Vec::new();
    let mut checked = 0;
    if p.expect_known {
        for (d, gp, gq, index) in KNOWN_IDEALS.into_iter().filter(|k| ds.contains(&k.0)) {
            checked += 1;
            let f = QuadraticField::new(d)?;
            let alpha = f.element(gp, gq)?;
            let listed = principal_ideal_lattice(&f, &alpha)?;
            let found = hits.iter().any(|h| {
                h.d == d && h.index == index && principal_ideal_lattice(&f, &h.generator).is_ok_and(|l| same_ideal(&l, &listed))
            });
            if !found {
                missing.push(format!("- D={d} ({alpha}) index {index}"));
            }
        }
    }
    let fields = hits.iter().map(|h| h.d).collect::<std::collections::BTreeSet<_>>().len();
    let mut r = Report::new(
        body,
        p,
        json!({ "fields_scanned": ds.len(), "fields_with_hits": fields, "hits": hits.len(), "known_checked": checked, "known_missing": missing.len() }),
    );
    if !missing.is_empty() {
        r.exit = EXPECTATION;
        r.diagnostic = Some(format!("expected ideals not found:\n{}", missing.join("\n")));
    }
    Ok(r)
}

#[derive(Serialize)]
struct AnalyzeRow {
    source: String,
    n: usize,
    volume: f64,
    index: f64,
    lambda1: f64,
    wr_class: WrClass,
    kissing: usize,
    hermite_lo: f64,
    hermite_hi: f64,
    hermite_in_interval: bool,
    min_product_distance: f64,
    ecdp: Vec<EcdpValue>,
}

fn analyze_lattice<T: Scalar>(source: String, l: &Lattice<T>, p: &AnalyzeParams) -> Result<AnalyzeRow, Failure> {
    let n = l.dim();
    let report = shortest_vectors(l)?;
    let wr = wr_from_report(n, &report)?;
    let lambda1 = report.lambda1.as_f64();
    let volume = l.volume_f64();
    let lo = volume.powf(2.0 / n as f64);
    let hi = HermiteTable::gamma(n)? * lo;
    let slack = 1e-9 * hi;
    let min_product_distance = min_product_distance(l, p.product_radius_sq.unwrap_or(4.0 * lambda1))?;
    let ecdp = p
        .sigma
        .iter()
        .map(|&s| ecdp_series(l, p.vol_b, s, p.radius_sq.unwrap_or_else(|| default_radius_sq(s, lambda1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalyzeRow {
        source,
        n,
        volume,
        index: volume / p.vol_b,
        lambda1,
        wr_class: wr.class,
        kissing: report.count_with_signs,
        hermite_lo: lo,
        hermite_hi: hi,
        hermite_in_interval: lambda1 >= lo - slack && lambda1 <= hi + slack,
        min_product_distance,
        ecdp,
    })
}

fn normalized(l: Lattice<f64>, p: &AnalyzeParams) -> Result<Lattice<f64>, Failure> {
    match p.normalize_vol {
        Some(v) => Ok(normalize_to_covolume(&l, v)?),
        None => Ok(l),
    }
}

pub fn analyze(p: &AnalyzeParams, format: Format) -> Result<Report, Failure> {
    if !(p.vol_b > 0.0) {
        return Err(Failure::usage("--vol-b must be positive"));
    }
    let mut rows = Vec::new();
    for path in &p.files {
        let file = read_matrix(path).map_err(Failure::input)?;
        if file.rotation {
            return Err(Failure::new(crate::failure::INPUT, format!("{} is a rotation file, not a lattice", path.display())));
        }
        let source = path.display().to_string();
        let row = match file.data {
            MatrixData::Integer(m) if p.normalize_vol.is_none() => {
                analyze_lattice(source, &Lattice::new(m).map_err(Failure::input)?, p)?
            }
            data => analyze_lattice(source, &normalized(Lattice::new(data.to_f64()).map_err(Failure::input)?, p)?, p)?,
        };
        rows.push(row);
    }
    for s in &p.ideal {
        let spec = parse_ideal(s)?;
        let f = QuadraticField::new(spec.d)?;
        let l = principal_ideal_lattice(&f, &f.from_parts(spec.generator[0], spec.generator[1]))?.lattice()?;
        rows.push(analyze_lattice(format!("ideal:{s}"), &normalized(l, p)?, p)?);
    }
    let body = match format {
        Format::Json => json_bytes(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<String> = [
                "source",
                "n",
                "volume",
                "index",
                "lambda1",
                "wr_class",
                "kissing",
                "hermite_lo",
                "hermite_hi",
                "hermite_in_interval",
                "min_product_distance",
            ]
            .map(String::from)
            .to_vec();
            header.extend(p.sigma.iter().map(|s| format!("ecdp_sigma_{s}")));
            let io = |e: csv::Error| Failure::new(crate::failure::INPUT, e.to_string());
            w.write_record(&header).map_err(io)?;
            for r in &rows {
                let mut rec = vec![
                    r.source.clone(),
                    r.n.to_string(),
                    r.volume.to_string(),
                    r.index.to_string(),
                    r.lambda1.to_string(),
                    r.wr_class.to_string(),
                    r.kissing.to_string(),
                    r.hermite_lo.to_string(),
                    r.hermite_hi.to_string(),
                    r.hermite_in_interval.to_string(),
                    r.min_product_distance.to_string(),
                ];
                rec.extend(r.ecdp.iter().map(|e| e.value.to_string()));
                w.write_record(&rec).map_err(io)?;
            }
            w.into_inner().map_err(|e| Failure::new(crate::failure::INPUT, e.to_string()))?
        }
    };
    let result = json!({
        "lattices": rows.len(),
        "truncation": rows.iter().map(|r| json!({ "source": r.source, "ecdp": r.ecdp })).collect::<Vec<_>>(),
    });
    Ok(Report::new(body, p, result))
}

#[derive(Serialize)]
struct CurveRow<'a> {
    code: &'a str,
    grid_index: usize,
    sigma: f64,
    snr_db: f64,
    trials: u64,
    successes: u64,
    ecdp: f64,
    ci_lo: f64,
    ci_hi: f64,
}

#[derive(Serialize)]
struct CompareRow<'a> {
    grid_index: usize,
    sigma: f64,
    code_a: &'a str,
    code_b: &'a str,
    ecdp_a: f64,
    ecdp_b: f64,
    verdict: Verdict,
}

pub fn simulate(p: &SimulateParams, seed: u64, format: Format) -> Result<Report, Failure> {
    let names: Vec<String> = p.codes.iter().map(|c| c.display().to_string()).collect();
    let mut codes = Vec::new();
    for path in &p.codes {
        let (desc, base) = CodeDescriptor::read(path).map_err(Failure::input)?;
        let code = desc.build(&base).map_err(|e| {
            let mut f = Failure::construction(e);
            f.message = format!("{}: {}", path.display(), f.message);
            f
        })?;
        codes.push(code);
    }
    let seeds: Vec<u64> = (0..codes.len() as u64).map(|k| seed.wrapping_add(k)).collect();
    let mut curves = Vec::new();
    for (code, &s) in codes.iter().zip(&seeds) {
        let plan = SimPlan { code, sigma_grid: p.sigma.clone(), trials: p.trials, master_seed: s, threads: p.threads };
        curves.push(simulate_ecdp(&plan)?);
    }
    let rows: Vec<CurveRow> = curves
        .iter()
        .zip(&names)
        .flat_map(|(c, name)| {
            c.points.iter().map(move |pt| CurveRow {
                code: name,
                grid_index: pt.grid_index,
                sigma: pt.sigma,
                snr_db: pt.snr_db,
                trials: pt.trials,
                successes: pt.successes,
                ecdp: pt.ecdp,
                ci_lo: pt.ci_lo,
                ci_hi: pt.ci_hi,
            })
        })
        .collect();
    let comparison: Vec<CompareRow> = if curves.len() >= 2 {
        compare_codes(&curves.iter().collect::<Vec<_>>())?
            .into_iter()
            .map(|r| CompareRow {
                grid_index: r.grid_index,
                sigma: r.sigma,
                code_a: &names[r.a],
                code_b: &names[r.b],
                ecdp_a: r.ecdp_a,
                ecdp_b: r.ecdp_b,
                verdict: r.verdict,
            })
            .collect()
    } else {
        Vec::new()
    };
    let per_code: Vec<_> = curves
        .iter()
        .zip(&names)
        .map(|(c, name)| json!({ "code": name, "metadata": c.metadata }))
        .collect();
    let (body, extra) = match format {
        Format::Json => {
            let curves: Vec<_> = curves
                .iter()
                .zip(&names)
                .map(|(c, name)| json!({ "code": name, "points": c.points, "metadata": c.metadata }))
                .collect();
            (json_bytes(&json!({ "curves": curves, "comparison": comparison })), None)
        }
        Format::Csv => (
            csv_bytes(&["code", "grid_index", "sigma", "snr_db", "trials", "successes", "ecdp", "ci_lo", "ci_hi"], &rows)?,
            (!comparison.is_empty())
                .then(|| csv_bytes(&["grid_index", "sigma", "code_a", "code_b", "ecdp_a", "ecdp_b", "verdict"], &comparison))
                .transpose()?,
        ),
    };
    let mut r = Report::new(body, p, json!({ "codes": per_code }));
    if let Some(bytes) = extra {
        r.extras.push(("compare.csv".into(), bytes));
    }
    Ok(r)
}

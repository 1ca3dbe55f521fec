//! Convergence experiments: finite-rank Bessel functions along generated VK
//! sequences compared against their infinite-rank limits.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bessel::{BesselKernel, MultiplicityB, SeriesConfig};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::limits::{lim_bessel_a, lim_bessel_b};
use crate::symfun::JackParam;
use crate::vk::{generate_vk, generate_vk_plus, vk_min_n, vk_plus_min_n, GeometricPreset, VKParams, VKParamsPlus};

/// Series settings used by the convergence harness unless overridden.
///
/// Rank 64 with `k = 1/2` and `|x| = 2` needs layers well beyond degree 60
/// before they stagnate, hence the larger cap.
pub const CONVERGE_SERIES: SeriesConfig = SeriesConfig { max_degree: 240, rel_tol: 1e-12, stagnation_window: 3 };

/// Largest evaluation dimension the harness accepts.
pub const MAX_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExperimentKind {
    ConvergeA,
    ConvergeB,
}

/// Source of `k′_n` for type B runs without a geometric preset.
#[derive(Clone, Debug, PartialEq)]
pub enum KPrimeSchedule {
    Constant(BigRational),
    /// One value per entry of the `n` list.
    PerN(Vec<BigRational>),
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub k: JackParam,
    pub omega: VKParams,
    pub n_list: Vec<usize>,
    pub x_grid: Vec<Vec<f64>>,
    pub series: SeriesConfig,
    pub preset: Option<GeometricPreset>,
    pub k_prime: Option<KPrimeSchedule>,
    pub exec: Execution,
}

impl ExperimentSpec {
    pub fn converge_a(k: JackParam, omega: VKParams, n_list: Vec<usize>, x_grid: Vec<Vec<f64>>) -> Self {
        ExperimentSpec {
            kind: ExperimentKind::ConvergeA,
            k,
            omega,
            n_list,
            x_grid,
            series: CONVERGE_SERIES,
            preset: None,
            k_prime: None,
            exec: Execution::default(),
        }
    }

    /// Type B run with multiplicities from a geometric preset.
    pub fn converge_b(preset: GeometricPreset, omega: VKParamsPlus, n_list: Vec<usize>, x_grid: Vec<Vec<f64>>) -> Self {
        ExperimentSpec {
            kind: ExperimentKind::ConvergeB,
            k: preset.k(),
            omega: omega.into(),
            n_list,
            x_grid,
            series: CONVERGE_SERIES,
            preset: Some(preset),
            k_prime: None,
            exec: Execution::default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.x_grid.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        self.series.validate()?;
        if self.n_list.is_empty() {
            return Err(Error::precondition("the n list is empty"));
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::precondition(format!("the n list {:?} is not strictly ascending", self.n_list)));
        }
        let r = self.dim();
        if self.x_grid.is_empty() || r == 0 || r > MAX_DIM {
            return Err(Error::precondition(format!("the x grid must be nonempty with dimension 1 to {MAX_DIM}")));
        }
        if self.x_grid.iter().any(|x| x.len() != r || x.iter().any(|v| !v.is_finite())) {
            return Err(Error::precondition("grid points must share one dimension and be finite"));
        }
        let min_n = match self.kind {
            ExperimentKind::ConvergeA => vk_min_n(&self.omega)?,
            ExperimentKind::ConvergeB => vk_plus_min_n(&self.omega.to_plus()?),
        };
        let first = self.n_list[0];
        if first < r.max(min_n) {
            return Err(Error::precondition(format!(
                "every n must be at least max(r, smallest admissible row length) = {}, got {first}",
                r.max(min_n)
            )));
        }
        if self.kind == ExperimentKind::ConvergeB {
            match (&self.preset, &self.k_prime) {
                (Some(p), None) => {
                    if p.k() != self.k {
                        return Err(Error::precondition(format!("preset fixes k = {}, got k = {}", p.k(), self.k)));
                    }
                }
                (None, Some(KPrimeSchedule::PerN(v))) if v.len() != self.n_list.len() => {
                    return Err(Error::precondition(format!(
                        "{} k' values for {} ranks",
                        v.len(),
                        self.n_list.len()
                    )));
                }
                (None, Some(_)) => {}
                (Some(_), Some(_)) => return Err(Error::precondition("give either a preset or k', not both")),
                (None, None) => return Err(Error::precondition("type B runs need a preset or k'")),
            }
        }
        Ok(())
    }

    /// `(k′_n, whether ν_n ~ kn)` for the `idx`-th rank.
    fn multiplicity(&self, idx: usize) -> Result<(MultiplicityB, bool)> {
        let n = self.n_list[idx];
        match (&self.preset, &self.k_prime) {
            (Some(p), _) => Ok((p.multiplicity(n)?, p.nu_asymptotically_kn())),
            (None, Some(KPrimeSchedule::Constant(kp))) => Ok((MultiplicityB::new(kp.clone(), self.k.clone())?, true)),
            (None, Some(KPrimeSchedule::PerN(v))) => Ok((MultiplicityB::new(v[idx].clone(), self.k.clone())?, false)),
            (None, None) => Err(Error::precondition("type B runs need a preset or k'")),
        }
    }
}

/// One `(n, x)` evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub x: Vec<f64>,
    pub finite: Complex64,
    pub limit: Complex64,
    pub abs_err: f64,
    pub truncated: bool,
}

/// Per-rank aggregate of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub sup_err: f64,
    pub mean_err: f64,
    pub max_truncation_estimate: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub summary: Vec<SummaryRow>,
}

impl Report {
    pub fn sup_errors(&self) -> Vec<f64> {
        self.summary.iter().map(|s| s.sup_err).collect()
    }
}

/// Evaluates the experiment: for every `n`, builds row `λ(n)` of a VK
/// sequence with the requested parameters and compares the finite-rank
/// Bessel function at `iλ(n)` with its limit on the grid.
///
/// Type A uses [`generate_vk`]. Type B uses [`generate_vk_plus`] for the row
/// `ρ(n)` and sets `λ(n)² = kn·ρ(n)` when `ν_n ~ kn`, else `ν_n·ρ(n)`.
pub fn run_convergence(spec: &ExperimentSpec) -> Result<Report> {
    spec.validate()?;
    let r = spec.dim();
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for (idx, &n) in spec.n_list.iter().enumerate() {
        let (kernel, limit): (BesselKernel, Box<dyn Fn(&[f64]) -> Result<Complex64> + Sync>) = match spec.kind {
            ExperimentKind::ConvergeA => {
                let row = generate_vk(&spec.omega, n)?;
                let lambda: Vec<Complex64> = row.iter().map(|&v| Complex64::new(0.0, v)).collect();
                let kernel = BesselKernel::type_a(&spec.k, &lambda, r, spec.series.max_degree)?;
                let (omega, k) = (spec.omega.clone(), spec.k.clone());
                (kernel, Box::new(move |x| Ok(lim_bessel_a(&omega, &k, x))))
            }
            ExperimentKind::ConvergeB => {
                let plus = spec.omega.to_plus()?;
                let row = generate_vk_plus(&plus, n)?;
                let (mult, nu_like_kn) = spec.multiplicity(idx)?;
                let factor = if nu_like_kn { spec.k.k_f64() * n as f64 } else { mult.nu(n) };
                let lambda: Vec<Complex64> = row.iter().map(|&v| Complex64::new(0.0, (factor * v).sqrt())).collect();
                let kernel = BesselKernel::type_b(&mult, &lambda, r, spec.series.max_degree)?;
                let (omega, k) = (spec.omega.clone(), spec.k.clone());
                (kernel, Box::new(move |x| Ok(Complex64::new(lim_bessel_b(&omega, &k, x)?, 0.0))))
            }
        };
        let evaluated = spec.exec.map(&spec.x_grid, |x| -> Result<(ReportRow, f64)> {
            let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            let value = kernel.eval(&z, &spec.series)?;
            let lim = limit(x)?;
            let row = ReportRow {
                n,
                x: x.clone(),
                finite: value.value,
                limit: lim,
                abs_err: (value.value - lim).norm(),
                truncated: value.truncated,
            };
            Ok((row, value.tail_estimate))
        });
        let mut sup_err: f64 = 0.0;
        let mut total = 0.0;
        let mut max_tail: f64 = 0.0;
        let count = evaluated.len();
        for item in evaluated {
            let (row, tail) = item?;
            sup_err = sup_err.max(row.abs_err);
            total += row.abs_err;
            max_tail = max_tail.max(tail);
            rows.push(row);
        }
        summary.push(SummaryRow { n, sup_err, mean_err: total / count as f64, max_truncation_estimate: max_tail });
    }
    Ok(Report { rows, summary })
}

/// Builds evaluation points from a textual description.
///
/// * `grid:a:b:NxR`: the `N^R` points of the uniform grid with `N` nodes
///   per axis on `[a, b]`;
/// * `random:a:b:NxR`: `N` points drawn uniformly from `[a, b]^R` with the
///   given seed;
/// * anything else is a file with one point per line, coordinates separated
///   by whitespace or commas.
///
/// Appending `:chamber` maps every point to `x_1 ≥ … ≥ x_R ≥ 0` by taking
/// absolute values and sorting, dropping duplicates.
pub fn parse_grid(spec: &str, seed: u64) -> Result<Vec<Vec<f64>>> {
    let (body, chamber) = match spec.strip_suffix(":chamber") {
        Some(b) => (b, true),
        None => (spec, false),
    };
    let mut points = if let Some(rest) = body.strip_prefix("grid:") {
        let (a, b, count, r) = grid_fields(rest)?;
        let axis: Vec<f64> = (0..count)
            .map(|i| if count == 1 { a } else { a + (b - a) * i as f64 / (count - 1) as f64 })
            .collect();
        let mut pts: Vec<Vec<f64>> = vec![Vec::new()];
        for _ in 0..r {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        pts
    } else if let Some(rest) = body.strip_prefix("random:") {
        let (a, b, count, r) = grid_fields(rest)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| (0..r).map(|_| rng.random_range(a..=b)).collect()).collect()
    } else {
        read_points(Path::new(body))?
    };
    if chamber {
        for p in &mut points {
            for v in p.iter_mut() {
                *v = v.abs();
            }
            p.sort_by(|a, b| b.total_cmp(a));
        }
        let mut seen = Vec::new();
        points.retain(|p| {
            if seen.contains(p) {
                false
            } else {
                seen.push(p.clone());
                true
            }
        });
    }
    Ok(points)
}

fn grid_fields(rest: &str) -> Result<(f64, f64, usize, usize)> {
    let bad = || Error::parse(format!("grid description {rest:?} should look like a:b:NxR"));
    let fields: Vec<&str> = rest.split(':').collect();
    let [a, b, shape] = fields[..] else {
        return Err(bad());
    };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let (count, r) = shape.split_once('x').ok_or_else(bad)?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    let r: usize = r.trim().parse().map_err(|_| bad())?;
    if count == 0 || r == 0 || !(a <= b) {
        return Err(bad());
    }
    Ok((a, b, count, r))
}

fn read_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<f64>().map_err(|e| Error::parse(format!("{}:{}: {t:?}: {e}", path.display(), i + 1))))
                .collect()
        })
        .collect()
}

/// Output encodings of reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::parse(format!("format must be csv or json, got {other:?}"))),
        }
    }
}

fn row_header(r: usize) -> Vec<String> {
    let mut h = vec!["n".to_string()];
    h.extend((1..=r).map(|i| format!("x_{i}")));
    h.extend(
        ["re_finite", "im_finite", "re_limit", "im_limit", "abs_err", "truncation_flag"]
            .iter()
            .map(|s| s.to_string()),
    );
    h
}

const SUMMARY_HEADER: [&str; 4] = ["n", "sup_err", "mean_err", "max_truncation_estimate"];

fn row_fields(row: &ReportRow) -> Vec<String> {
    let mut f = vec![row.n.to_string()];
    f.extend(row.x.iter().map(|v| v.to_string()));
    for v in [row.finite.re, row.finite.im, row.limit.re, row.limit.im, row.abs_err] {
        f.push(v.to_string());
    }
    f.push(if row.truncated { "1" } else { "0" }.to_string());
    f
}

fn summary_fields(s: &SummaryRow) -> Vec<String> {
    vec![s.n.to_string(), s.sup_err.to_string(), s.mean_err.to_string(), s.max_truncation_estimate.to_string()]
}

fn to_csv(header: &[String], records: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::parse(format!("csv: {e}"));
    w.write_record(header).map_err(csv_err)?;
    for rec in records {
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::parse(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn to_json(header: &[String], records: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = String::from("[\n");
    for (i, rec) in records.enumerate() {
        if i > 0 {
            out.push_str(",\n");
        }
        out.push_str("  {");
        for (j, (key, value)) in header.iter().zip(&rec).enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            // every field is a plain number, so it is already valid JSON
            let value = if value.contains("inf") || value.contains("NaN") { "null" } else { value.as_str() };
            write!(out, "\"{key}\": {value}").expect("writing to a String");
        }
        out.push('}');
    }
    out.push_str("\n]\n");
    out
}

/// Encodes a table whose fields are already formatted numbers.
pub fn write_table(header: &[String], records: &[Vec<String>], format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(header, records.iter().cloned()),
        Format::Json => Ok(to_json(header, records.iter().cloned())),
    }
}

/// Encodes report rows with the columns
/// `n, x_1..x_r, re_finite, im_finite, re_limit, im_limit, abs_err, truncation_flag`.
pub fn write_rows(rows: &[ReportRow], format: Format) -> Result<String> {
    let r = rows.first().map_or(0, |row| row.x.len());
    let header = row_header(r);
    match format {
        Format::Csv => to_csv(&header, rows.iter().map(row_fields)),
        Format::Json => Ok(to_json(&header, rows.iter().map(row_fields))),
    }
}

/// Encodes the summary with the columns `n, sup_err, mean_err, max_truncation_estimate`.
pub fn write_summary(summary: &[SummaryRow], format: Format) -> Result<String> {
    let header: Vec<String> = SUMMARY_HEADER.iter().map(|s| s.to_string()).collect();
    match format {
        Format::Csv => to_csv(&header, summary.iter().map(summary_fields)),
        Format::Json => Ok(to_json(&header, summary.iter().map(summary_fields))),
    }
}

/// Field records keyed by header, from either encoding.
fn read_records(text: &str, format: Format) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    match format {
        Format::Csv => {
            let mut rd = csv::Reader::from_reader(text.as_bytes());
            let header: Vec<String> = rd
                .headers()
                .map_err(|e| Error::parse(format!("csv: {e}")))?
                .iter()
                .map(str::to_string)
                .collect();
            let records = rd
                .records()
                .map(|r| {
                    r.map(|rec| rec.iter().map(str::to_string).collect())
                        .map_err(|e| Error::parse(format!("csv: {e}")))
                })
                .collect::<Result<Vec<Vec<String>>>>()?;
            Ok((header, records))
        }
        Format::Json => {
            let value: Vec<serde_json::Map<String, serde_json::Value>> =
                serde_json::from_str(text).map_err(|e| Error::parse(format!("json: {e}")))?;
            let header: Vec<String> = value.first().map(|m| m.keys().cloned().collect()).unwrap_or_default();
            let records = value
                .iter()
                .map(|m| {
                    header
                        .iter()
                        .map(|key| match m.get(key) {
                            Some(serde_json::Value::Null) => Ok("NaN".to_string()),
                            Some(v) => Ok(v.to_string()),
                            None => Err(Error::parse(format!("json record lacks {key:?}"))),
                        })
                        .collect()
                })
                .collect::<Result<Vec<Vec<String>>>>()?;
            Ok((header, records))
        }
    }
}

fn field<T: std::str::FromStr>(header: &[String], rec: &[String], key: &str) -> Result<T> {
    let pos = header
        .iter()
        .position(|h| h == key)
        .ok_or_else(|| Error::parse(format!("missing column {key:?}")))?;
    let raw = rec.get(pos).ok_or_else(|| Error::parse(format!("short record for {key:?}")))?;
    raw.parse().map_err(|_| Error::parse(format!("column {key:?}: cannot read {raw:?}")))
}

/// Inverse of [`write_rows`].
pub fn read_rows(text: &str, format: Format) -> Result<Vec<ReportRow>> {
    let (header, records) = read_records(text, format)?;
    let r = header.iter().filter(|h| h.starts_with("x_")).count();
    records
        .iter()
        .map(|rec| {
            let x = (1..=r).map(|i| field(&header, rec, &format!("x_{i}"))).collect::<Result<Vec<f64>>>()?;
            let flag: u8 = field(&header, rec, "truncation_flag")?;
            Ok(ReportRow {
                n: field(&header, rec, "n")?,
                x,
                finite: Complex64::new(field(&header, rec, "re_finite")?, field(&header, rec, "im_finite")?),
                limit: Complex64::new(field(&header, rec, "re_limit")?, field(&header, rec, "im_limit")?),
                abs_err: field(&header, rec, "abs_err")?,
                truncated: flag != 0,
            })
        })
        .collect()
}

/// Inverse of [`write_summary`].
pub fn read_summary(text: &str, format: Format) -> Result<Vec<SummaryRow>> {
    let (header, records) = read_records(text, format)?;
    records
        .iter()
        .map(|rec| {
            Ok(SummaryRow {
                n: field(&header, rec, "n")?,
                sup_err: field(&header, rec, "sup_err")?,
                mean_err: field(&header, rec, "mean_err")?,
                max_truncation_estimate: field(&header, rec, "max_truncation_estimate")?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_descriptions() {
        let g = parse_grid("grid:-2:2:5x2", 0).unwrap();
        assert_eq!(g.len(), 25);
        assert_eq!(g[0], vec![-2.0, -2.0]);
        assert_eq!(g[24], vec![2.0, 2.0]);
        let c = parse_grid("grid:0:2:5x2:chamber", 0).unwrap();
        assert_eq!(c.len(), 15);
        assert!(c.iter().all(|p| p[0] >= p[1] && p[1] >= 0.0));
        let a = parse_grid("random:-1:1:12x2", 7).unwrap();
        assert_eq!(a, parse_grid("random:-1:1:12x2", 7).unwrap());
        assert_ne!(a, parse_grid("random:-1:1:12x2", 8).unwrap());
        assert!(a.iter().flatten().all(|v| (-1.0..=1.0).contains(v)));
        assert!(parse_grid("grid:1:0:3x1", 0).is_err());
    }

    #[test]
    fn rows_round_trip_both_formats() {
        let rows = vec![
            ReportRow {
                n: 8,
                x: vec![0.1, -1.0 / 3.0],
                finite: Complex64::new(0.25, -1e-17),
                limit: Complex64::new(std::f64::consts::PI, 0.0),
                abs_err: 2.0f64.sqrt(),
                truncated: true,
            },
            ReportRow { n: 16, x: vec![2.0, 0.0], finite: Complex64::new(1.0, 0.0), limit: Complex64::new(1.0, 0.0), abs_err: 0.0, truncated: false },
        ];
        for format in [Format::Csv, Format::Json] {
            let text = write_rows(&rows, format).unwrap();
            assert_eq!(read_rows(&text, format).unwrap(), rows);
        }
        let summary = vec![SummaryRow { n: 8, sup_err: 0.1, mean_err: 1.0 / 7.0, max_truncation_estimate: 3e-300 }];
        for format in [Format::Csv, Format::Json] {
            let text = write_summary(&summary, format).unwrap();
            assert_eq!(read_summary(&text, format).unwrap(), summary);
        }
    }
}

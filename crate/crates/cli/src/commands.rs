//! The four subcommands. Each writes its files under the output directory
//! and returns what it wrote.

use std::path::{Path, PathBuf};
use std::time::Instant;

use gfdm::channel::TdlProfile;
use gfdm::linkquality::{BlerLut, LinkAbstraction};
use gfdm::sim::LinkSimulator;
use gfdm::syslevel::{drop_ues, empirical_cdf, generate_deployment, rate_mbps, Case, SystemModel};
use serde::Serialize;

use crate::cache::{CacheStatus, LutCache};
use crate::config::{ExperimentConfig, Scenario};
use crate::link::run_link;
use crate::output::{header, write_csv};
use crate::report::{build_report, ReportRow, TimingRow};
use crate::syslevel::{abstraction_results, allocation, bitlevel_results, mcs_rows, result_rows};
use crate::CliError;

fn prepare(cfg: &ExperimentConfig, out: &Path) -> Result<(String, LutCache), CliError> {
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let h = header(&cfg.hash(), cfg.seed);
    let cache = LutCache::new(out.join("luts"), h.clone())?;
    Ok((h, cache))
}

/// Builds (or finds) the SI tables and the AWGN LUT of every (filter, MCS).
pub fn cmd_calibrate(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<(String, CacheStatus)>, CliError> {
    let (_, cache) = prepare(cfg, out)?;
    let opts = cfg.calibration_options();
    let mut done = Vec::new();
    for spec in cfg.mcs_specs()? {
        cache.si_table(spec.bits)?;
    }
    for filter in cfg.filters()? {
        for spec in cfg.mcs_specs()? {
            let sim = LinkSimulator::new(cfg.gfdm(filter), spec).map_err(CliError::runtime)?;
            let (_, status) = cache.get(&sim, &opts)?;
            done.push((cache.lut_path(&sim).display().to_string(), status));
        }
    }
    Ok(done)
}

/// Link-level sweep; writes `link.csv`, `timing.csv` and, when the coding
/// correction is calibrated, `gamma_code.csv`.
pub fn cmd_link(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    if cfg.scenario == Scenario::Syslevel {
        return Err(CliError::Config("link needs an awgn, rayleigh or tdl scenario".into()));
    }
    let (h, cache) = prepare(cfg, out)?;
    let opts = cfg.calibration_options();
    for spec in cfg.mcs_specs()? {
        cache.si_table(spec.bits)?;
    }
    let res = run_link(cfg, |sim| cache.get(sim, &opts).map(|r| r.0))?;
    let mut files = vec![out.join("link.csv"), out.join("timing.csv")];
    write_csv(&files[0], &[h.clone()], &res.rows)?;
    let scenario = format!("{:?}", cfg.scenario).to_lowercase();
    let timing = [("bitlevel", res.bitlevel_seconds), ("abstraction", res.abstraction_seconds)].map(|(m, s)| TimingRow {
        method: m.into(),
        case: scenario.clone(),
        ues: 0,
        snapshots: 0,
        seconds: s,
    });
    write_csv(&files[1], &[h.clone()], &timing)?;
    if !res.gammas.is_empty() {
        files.push(out.join("gamma_code.csv"));
        write_csv(&files[2], &[h], &res.gammas)?;
    }
    Ok(files)
}

#[derive(Serialize)]
struct QuantileRow {
    quantile: f64,
    value: f64,
}

fn write_cdf(path: &Path, h: &str, values: &[f64]) -> Result<(), CliError> {
    let rows: Vec<QuantileRow> = empirical_cdf(values)
        .map_err(CliError::runtime)?
        .into_iter()
        .map(|(quantile, value)| QuantileRow { quantile, value })
        .collect();
    write_csv(path, &[h.to_string()], &rows)
}

/// System-level run over both cases. The abstraction covers every user;
/// with `bitlevel` the first `bitlevel_ues` users are also run through the
/// bit-level chain, alongside a matched abstraction run (`abstraction_xc`)
/// on the same users and snapshots.
pub fn cmd_syslevel(cfg: &ExperimentConfig, out: &Path, bitlevel: bool) -> Result<Vec<PathBuf>, CliError> {
    let s = cfg
        .syslevel
        .as_ref()
        .filter(|_| cfg.scenario == Scenario::Syslevel)
        .ok_or_else(|| CliError::Config("syslevel needs scenario = \"syslevel\" and a [syslevel] table".into()))?;
    let (h, cache) = prepare(cfg, out)?;
    let opts = cfg.calibration_options();
    let filter = cfg.filters()?[0];
    let config = cfg.gfdm(filter);
    let specs = cfg.mcs_specs()?;
    let sims = specs
        .iter()
        .map(|&sp| LinkSimulator::new(config.clone(), sp))
        .collect::<gfdm::Result<Vec<_>>>()
        .map_err(CliError::runtime)?;
    let luts: Vec<BlerLut> = sims.iter().map(|sim| cache.get(sim, &opts).map(|r| r.0)).collect::<Result<_, _>>()?;
    let abstractions: Vec<LinkAbstraction<'_>> = specs
        .iter()
        .zip(&luts)
        .enumerate()
        .map(|(i, (sp, lut))| {
            let gamma = cfg.gamma_code.fixed(i).unwrap_or(1.0);
            Ok(LinkAbstraction::new(cache.si_table(sp.bits)?, lut, gamma))
        })
        .collect::<Result<_, CliError>>()?;
    let rates: Vec<f64> = sims.iter().map(|sim| rate_mbps(sim.mcs(), &config)).collect();
    let labels: Vec<String> = sims.iter().map(|sim| sim.mcs().label()).collect();
    let max_rate = rates.iter().cloned().fold(0.0, f64::max);

    let dep = generate_deployment(cfg.system_params()).map_err(CliError::runtime)?;
    let model = SystemModel::new(dep.clone(), config.clone(), allocation(&config)?, TdlProfile::urban_default(), cfg.seed)
        .map_err(CliError::runtime)?;
    let ues = drop_ues(s.ues as usize, &dep, cfg.seed);
    let xc = &ues[..s.bitlevel_ues as usize];

    let mut files = Vec::new();
    let mut timing = Vec::new();
    let result_header = format!("{h} max_rate_mbps={max_rate}");
    for case in [Case::Snr, Case::Sinr] {
        let c = case.label();
        let mut runs = Vec::new();
        let t = Instant::now();
        runs.push(("abstraction", abstraction_results(&model, &abstractions, &rates, &ues, s.snapshots, case)?));
        timing.push(TimingRow {
            method: "abstraction".into(),
            case: c.into(),
            ues: s.ues,
            snapshots: s.snapshots,
            seconds: t.elapsed().as_secs_f64(),
        });
        if bitlevel && !xc.is_empty() {
            let t = Instant::now();
            runs.push((
                "abstraction_xc",
                abstraction_results(&model, &abstractions, &rates, xc, s.bitlevel_snapshots, case)?,
            ));
            timing.push(TimingRow {
                method: "abstraction_xc".into(),
                case: c.into(),
                ues: s.bitlevel_ues,
                snapshots: s.bitlevel_snapshots,
                seconds: t.elapsed().as_secs_f64(),
            });
            let t = Instant::now();
            runs.push((
                "bitlevel",
                bitlevel_results(&model, &sims, &rates, xc, s.bitlevel_snapshots, s.packets_per_snapshot, case)?,
            ));
            timing.push(TimingRow {
                method: "bitlevel".into(),
                case: c.into(),
                ues: s.bitlevel_ues,
                snapshots: s.bitlevel_snapshots,
                seconds: t.elapsed().as_secs_f64(),
            });
        }
        let rows: Vec<_> = runs.iter().flat_map(|(m, r)| result_rows(r, m, &labels)).collect();
        let per_mcs: Vec<_> = runs.iter().flat_map(|(m, r)| mcs_rows(r, m, &labels)).collect();
        let p = out.join(format!("results_{c}.csv"));
        write_csv(&p, &[result_header.clone()], &rows)?;
        files.push(p);
        let p = out.join(format!("per_by_mcs_{c}.csv"));
        write_csv(&p, &[h.clone()], &per_mcs)?;
        files.push(p);
        for (m, r) in &runs {
            let per: Vec<f64> = r.iter().map(|d| d.per).collect();
            let tp: Vec<f64> = r.iter().map(|d| d.throughput_mbps).collect();
            for (metric, v) in [("per", per), ("throughput", tp)] {
                let p = out.join(format!("cdf_{metric}_{c}_{m}.csv"));
                write_cdf(&p, &h, &v)?;
                files.push(p);
            }
        }
    }
    let p = out.join("timing.csv");
    write_csv(&p, &[h], &timing)?;
    files.push(p);
    Ok(files)
}

/// Recomputes the accuracy summary from the CSVs in `dir` and writes
/// `report.csv` there.
pub fn cmd_report(dir: &Path) -> Result<Vec<ReportRow>, CliError> {
    let rows = build_report(dir)?;
    let hash = crate::output::header_value(&dir.join("timing.csv"), "config_hash")
        .or_else(|| crate::output::header_value(&dir.join("link.csv"), "config_hash"))
        .unwrap_or_else(|| "unknown".into());
    write_csv(&dir.join("report.csv"), &[format!("gfdm config_hash={hash}")], &rows)?;
    Ok(rows)
}

use std::f64::consts::PI;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::{CodeConfig, ConductanceConfig, GateConfig, ModesConfig, NanowireConfig, SweepConfig};
use super::output::{num, staircase_svg, write_file, write_json, Csv};
use super::CliError;
use crate::edge_modes::{extract_majorana_modes, quasienergy_spectrum, EdgeError};
use crate::floquet_model::{CouplingLaw, DriveProtocol, ModelError};
use crate::invariants::{locate_jumps, sweep_invariants, InvariantError, Sector, SweepStatus};
use crate::majorana::{
    enumerate_branches, initialize_state, qp_monte_carlo, steane_code, syndrome_table, tetron_layout_with,
    validate_code, RngOutcomes, MAX_MODES,
};
use crate::nanowire::{effective_gap, effective_kitaev, momentum_grid, spectrum_comparison, NanowireError};
use crate::readout::{mean_conductance, stabilizer_readout, ParityAssignment};

pub(crate) struct Context {
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub svg: bool,
}

fn invariant_error(e: InvariantError) -> CliError {
    match e {
        InvariantError::InvalidSweep(_)
        | InvariantError::GridTooSmall(_)
        | InvariantError::Model(ModelError::NonFinite) => CliError::Config(e.to_string()),
        e => CliError::Numerical(e.to_string()),
    }
}

fn edge_error(e: EdgeError) -> CliError {
    match e {
        EdgeError::TooSmall(_)
        | EdgeError::InvalidTolerance(_)
        | EdgeError::Model(ModelError::NonFinite | ModelError::TooSmall { .. }) => CliError::Config(e.to_string()),
        e => CliError::Numerical(e.to_string()),
    }
}

fn numerical(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

pub(crate) fn sweep(ctx: &Context, mut cfg: SweepConfig) -> Result<Vec<String>, CliError> {
    cfg.seed = ctx.seed.unwrap_or(cfg.seed);
    cfg.emit_svg |= ctx.svg;
    if cfg.law == CouplingLaw::Explicit {
        return Err(CliError::Config("a sweep needs a coupling law other than explicit".into()));
    }
    let rows = sweep_invariants(cfg.base, cfg.law, cfg.m_from_pi * PI, cfg.m_to_pi * PI, cfg.m_step_pi * PI, cfg.grid)
        .map_err(invariant_error)?;

    let mut csv = Csv::new("sweep", &cfg, cfg.seed, &["m", "nu0", "nupi", "status"]);
    for r in &rows {
        let (a, b) = r.winding.map_or((String::new(), String::new()), |w| (w.nu0.to_string(), w.nupi.to_string()));
        csv.row([num(r.m), a, b, r.status.as_str().to_string()]);
    }
    csv.save(&ctx.out, "sweep.csv")?;
    let mut lines = vec![format!("sweep.csv: {} rows", rows.len())];

    if let Some(res) = cfg.jump_resolution_pi {
        if !(res > 0.0) {
            return Err(CliError::Config("jump_resolution_pi must be positive".into()));
        }
        let jumps = locate_jumps(cfg.base, cfg.law, &rows, cfg.grid, res * PI).map_err(invariant_error)?;
        let mut jc = Csv::new("sweep", &cfg, cfg.seed, &["sector", "m", "m_over_pi", "from", "to"]);
        for j in &jumps {
            jc.row([j.sector.to_string(), num(j.m), num(j.m / PI), j.from.to_string(), j.to.to_string()]);
        }
        jc.save(&ctx.out, "jumps.csv")?;
        lines.push(format!("jumps.csv: {} jumps", jumps.len()));
    }

    if cfg.emit_svg {
        let x: Vec<f64> = rows.iter().map(|r| r.m / PI).collect();
        let nu0 = rows.iter().map(|r| r.winding.map(|w| w.nu0)).collect();
        let nupi = rows.iter().map(|r| r.winding.map(|w| w.nupi)).collect();
        let svg = staircase_svg("m / π", &x, &[("ν0", "#1f77b4", nu0), ("νπ", "#d62728", nupi)]);
        write_file(&ctx.out, "sweep.svg", &svg)?;
        lines.push("sweep.svg".into());
    }

    let failed: Vec<String> =
        rows.iter().filter(|r| r.status == SweepStatus::NonConvergent).map(|r| format!("m = {}", r.m)).collect();
    if !failed.is_empty() {
        return Err(CliError::Numerical(format!("winding did not converge at {}", failed.join(", "))));
    }
    Ok(lines)
}

pub(crate) fn modes(ctx: &Context, mut cfg: ModesConfig) -> Result<Vec<String>, CliError> {
    cfg.seed = ctx.seed.unwrap_or(cfg.seed);
    let drive = match cfg.law {
        CouplingLaw::Explicit => DriveProtocol::explicit(cfg.base, cfg.h2.unwrap_or(cfg.base)),
        law => {
            if cfg.h2.is_some() {
                return Err(CliError::Config("h2 is only used with the explicit law".into()));
            }
            DriveProtocol::with_law(cfg.base, law, cfg.m_pi * PI)
        }
    }
    .map_err(|e| CliError::Config(e.to_string()))?;
    let spectrum = quasienergy_spectrum(&drive, cfg.sites).map_err(edge_error)?;
    let modes = extract_majorana_modes(&spectrum, cfg.tol).map_err(edge_error)?;
    let n_zero = modes.iter().filter(|m| m.sector == Sector::Zero).count();
    let n_pi = modes.len() - n_zero;

    let mut csv = Csv::new("modes", &cfg, cfg.seed, &["index", "sector", "side", "phase", "weight_beyond_cutoff"]);
    csv.comment(&format!("n_zero,n_pi = {n_zero},{n_pi}"));
    for (i, m) in modes.iter().enumerate() {
        let side = serde_json::to_value(m.side).expect("side serializes");
        csv.row([
            i.to_string(),
            m.sector.to_string(),
            side.as_str().unwrap_or_default().to_string(),
            num(m.phase),
            num(m.weight_beyond(cfg.cutoff)),
        ]);
    }
    csv.save(&ctx.out, "modes.csv")?;

    let names: Vec<String> = (0..modes.len()).map(|i| format!("mode_{i}")).collect();
    let mut columns = vec!["majorana", "site"];
    columns.extend(names.iter().map(String::as_str));
    let mut prof = Csv::new("modes", &cfg, cfg.seed, &columns);
    for j in 0..2 * cfg.sites {
        let mut cells = vec![j.to_string(), (j / 2).to_string()];
        cells.extend(modes.iter().map(|m| num(m.weights[j])));
        prof.row(cells);
    }
    prof.save(&ctx.out, "modes_profile.csv")?;

    Ok(vec!["n_zero,n_pi".into(), format!("{n_zero},{n_pi}")])
}

pub(crate) fn code(ctx: &Context, mut cfg: CodeConfig) -> Result<Vec<String>, CliError> {
    cfg.seed = ctx.seed.unwrap_or(cfg.seed);
    let code = steane_code();

    let mut table = Csv::new("code", &cfg, cfg.seed, &["error", "anticommutes_with", "syndrome"]);
    for row in syndrome_table(&code) {
        let hit: Vec<String> =
            row.syndrome.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| format!("S{}", i + 1)).collect();
        table.row([row.label.to_string(), hit.join(" "), format!("\"{}\"", row.syndrome)]);
    }
    table.save(&ctx.out, "tableI.csv")?;

    let report = validate_code(&code).map_err(|e| CliError::Validation(e.to_string()))?;
    write_json(&ctx.out, "validate.json", "code", &cfg, cfg.seed, &report)?;

    let mc = qp_monte_carlo(&code, cfg.trials, cfg.seed, cfg.error_model).map_err(numerical)?;
    write_json(&ctx.out, "montecarlo.json", "code", &cfg, cfg.seed, &mc)?;
    Ok(vec![
        "tableI.csv, validate.json: code valid".into(),
        format!("montecarlo.json: {}/{} corrected, {} logical failures", mc.corrected, mc.trials, mc.logical_failures),
    ])
}

#[derive(Serialize)]
struct BranchReport {
    outcomes: [i8; 4],
    random: [bool; 4],
    correction_terms: Vec<String>,
    correction: String,
    choi: bool,
    tracked_z: bool,
    tracked_x: bool,
    verified: bool,
}

#[derive(Serialize)]
struct GateReport {
    mzm_per_corner: usize,
    n_modes: usize,
    verified: usize,
    branches: Vec<BranchReport>,
}

pub(crate) fn gate(ctx: &Context, mut cfg: GateConfig) -> Result<Vec<String>, CliError> {
    cfg.seed = ctx.seed.unwrap_or(cfg.seed);
    let m = cfg.mzm_per_corner;
    if m == 0 || m.is_multiple_of(2) || 8 * m + 4 > MAX_MODES {
        return Err(CliError::Config(format!("mzm_per_corner must be odd with 8m + 4 ≤ {MAX_MODES}, got {m}")));
    }
    let layout = tetron_layout_with(m).map_err(|e| CliError::Config(e.to_string()))?;
    let branches = enumerate_branches(&layout).map_err(numerical)?;
    let reports: Vec<BranchReport> = branches
        .iter()
        .map(|(t, c)| BranchReport {
            outcomes: t.outcomes,
            random: t.random,
            correction_terms: t.correction_terms.clone(),
            correction: t.correction.to_string(),
            choi: c.choi,
            tracked_z: c.tracked_z,
            tracked_x: c.tracked_x,
            verified: c.passed(),
        })
        .collect();
    let verified = reports.iter().filter(|r| r.verified).count();
    let total = reports.len();
    let report = GateReport { mzm_per_corner: m, n_modes: layout.n_modes, verified, branches: reports };
    write_json(&ctx.out, "gate.json", "gate", &cfg, cfg.seed, &report)?;
    if verified != total {
        return Err(CliError::Validation(format!("{verified}/{total} branches verified")));
    }
    Ok(vec![format!("gate.json: {verified}/{total} branches verified")])
}

pub(crate) fn nanowire(ctx: &Context, mut cfg: NanowireConfig) -> Result<Vec<String>, CliError> {
    cfg.seed = ctx.seed.unwrap_or(cfg.seed);
    cfg.wire.validate().map_err(|e| CliError::Config(e.to_string()))?;
    if cfg.k_points < 2 {
        return Err(CliError::Config("k_points must be at least 2".into()));
    }
    if cfg.zeeman_multiples.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(CliError::Config("zeeman_multiples must be finite and non-negative".into()));
    }
    let ladder: Vec<f64> = if cfg.zeeman_multiples.is_empty() {
        vec![cfg.wire.e_z]
    } else {
        cfg.zeeman_multiples.iter().map(|x| x * cfg.wire.delta_s).collect()
    };
    let ks = momentum_grid(cfg.k_points);
    let nw = |e: NanowireError| match e {
        NanowireError::InvalidParams(_) => CliError::Config(e.to_string()),
        e => CliError::Numerical(e.to_string()),
    };

    let mut summary = Csv::new(
        "nanowire",
        &cfg,
        cfg.seed,
        &["E_Z", "projection_error", "effective_gap", "mu_eff", "J_eff", "Delta_eff", "validity"],
    );
    let mut lines = Vec::new();
    for (i, &e_z) in ladder.iter().enumerate() {
        let p = cfg.wire.with_zeeman(e_z);
        let rows = spectrum_comparison(&p, &ks).map_err(nw)?;
        let mut csv = Csv::new("nanowire", &cfg, cfg.seed, &["k", "E1", "E2", "E_eff1", "E_eff2", "abs_error"]);
        csv.comment(&format!("E_Z = {e_z}"));
        for r in &rows {
            csv.row([r.k, r.e1, r.e2, r.e_eff1, r.e_eff2, r.abs_error].map(num));
        }
        csv.save(&ctx.out, &format!("nanowire_{i}.csv"))?;
        let err = rows.iter().map(|r| r.abs_error).fold(0.0, f64::max);
        let gap = effective_gap(&p, &ks).map_err(nw)?;
        let (k, validity) = effective_kitaev(&p).map_err(nw)?;
        summary.row([e_z, err, gap, k.mu, k.j, k.delta, validity].map(num));
        lines.push(format!("E_Z = {e_z}: projection error {err:.6}, effective gap {gap:.6}"));
    }
    summary.save(&ctx.out, "nanowire_summary.csv")?;
    Ok(lines)
}

pub(crate) fn conductance(ctx: &Context, mut cfg: ConductanceConfig) -> Result<Vec<String>, CliError> {
    cfg.seed = ctx.seed.unwrap_or(cfg.seed);
    let c = cfg.params;
    c.validate().map_err(|e| CliError::Config(e.to_string()))?;
    if c.a3 == 0.0 {
        return Err(CliError::Config("a3 must be non-zero for four-Majorana readout".into()));
    }
    let f0 = if cfg.flux0.is_empty() { vec![c.phi0] } else { cfg.flux0.clone() };
    let fp = if cfg.fluxpi.is_empty() { vec![c.phipi] } else { cfg.fluxpi.clone() };
    if f0.iter().chain(&fp).any(|x| !x.is_finite()) {
        return Err(CliError::Config("fluxes must be finite".into()));
    }

    let mut csv = Csv::new("conductance", &cfg, cfg.seed, &["flux0", "fluxpi", "p0", "ppi", "p4", "G"]);
    for &a in &f0 {
        for &b in &fp {
            for p in ParityAssignment::all() {
                let g = mean_conductance(&c, a, b, &p);
                csv.row([num(a), num(b), p.p0.to_string(), p.ppi.to_string(), p.p4.to_string(), num(g)]);
            }
        }
    }
    csv.save(&ctx.out, "conductance.csv")?;

    let code = steane_code();
    let clean = initialize_state(&code, 1);
    let mut rng = RngOutcomes(ChaCha8Rng::seed_from_u64(cfg.seed));
    let stabs: Vec<String> = (1..=code.stabilizers.len()).map(|i| format!("S{i}")).collect();
    let mut columns = vec!["error"];
    columns.extend(stabs.iter().map(String::as_str));
    let mut readout = Csv::new("conductance", &cfg, cfg.seed, &columns);
    for id in 0..code.n_modes {
        let dirty = clean.apply_string(&code.single(id)).map_err(numerical)?;
        let mut cells = vec![code.label(id).to_string()];
        for s in 0..code.stabilizers.len() {
            let r = stabilizer_readout(&code, &dirty, s, &c, &mut rng).map_err(numerical)?;
            cells.push(num(r.conductance));
        }
        readout.row(cells);
    }
    readout.save(&ctx.out, "readout.csv")?;
    Ok(vec![format!("conductance.csv: {} rows", 4 * f0.len() * fp.len()), "readout.csv: 14 rows".into()])
}

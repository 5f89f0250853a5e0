//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use floquet_majorana::edge_modes::{extract_majorana_modes, quasienergy_spectrum, Side};
use floquet_majorana::floquet_model::{CouplingLaw, DriveProtocol, KitaevParams};
use floquet_majorana::invariants::{closed_form_invariants, locate_jumps, sweep_invariants, winding_numbers, Sector};
use floquet_majorana::majorana::{
    cross_block_pairs, enumerate_branches, exhaustive, initialize_state, qp_monte_carlo, same_block_pairs, steane_code,
    syndrome_table, tetron_layout, validate_code, ErrorModel, ForcedOutcomes, ResidualClass,
};
use floquet_majorana::nanowire::{effective_gap, effective_pairings, momentum_grid, projection_error, NanowireParams};
use floquet_majorana::readout::{mean_conductance, stabilizer_readout, ConductanceParams, ParityAssignment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reference syndromes: each single Majorana and the stabilizers it anticommutes with.
const SYNDROMES: [(&str, &[usize]); 14] = [
    ("0L1", &[1, 2, 3]),
    ("0L2", &[4, 6]),
    ("0L3", &[5]),
    ("0R1", &[1, 3]),
    ("0R2", &[2]),
    ("0R3", &[4, 5, 6]),
    ("piL1", &[1, 2]),
    ("piL2", &[3]),
    ("piL3", &[4, 5]),
    ("piL4", &[6]),
    ("piR1", &[1]),
    ("piR2", &[2, 3]),
    ("piR3", &[4]),
    ("piR4", &[5, 6]),
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn closed_form_staircase() -> Outcome {
    let start = Instant::now();
    let base = KitaevParams::new(1.0, 0.5, 0.5);
    let (mut tested, mut mismatches) = (0, Vec::new());
    for j in 1..160 {
        let m = 0.05 * PI * f64::from(j);
        let q = m / (PI / 2.0);
        if (q - q.round()).abs() * (PI / 2.0) <= 0.02 * PI {
            continue;
        }
        tested += 1;
        let d = DriveProtocol::fig1(base, m).map_err(|e| e.to_string())?;
        let numeric = winding_numbers(&d, 256).map_err(|e| format!("m = {m}: {e}"))?.pair();
        let closed = closed_form_invariants(m).map_err(|e| e.to_string())?.pair();
        if numeric != closed {
            mismatches.push(format!("m/π = {:.2}: {numeric:?} vs {closed:?}", m / PI));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        mismatches.is_empty() && secs < 60.0,
        format!("{tested} points, {} mismatches {mismatches:?}, {secs:.2} s", mismatches.len()),
    )
}

fn fig1_trend() -> Outcome {
    // Window around the expected nπ/2 and the allowed spacing between
    // successive jumps of one invariant ("≈ π"): 0.35π and [0.5π, 1.5π].
    const WINDOW: f64 = 0.35 * PI;
    let base = KitaevParams::new(1.0, 0.55, 0.6);
    let rows =
        sweep_invariants(base, CouplingLaw::Fig1, 0.05 * PI, 7.95 * PI, 0.05 * PI, 256).map_err(|e| e.to_string())?;
    let jumps = locate_jumps(base, CouplingLaw::Fig1, &rows, 256, 1e-3).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    let mut worst: f64 = 0.0;
    for sector in [Sector::Zero, Sector::Pi] {
        let offset = if sector == Sector::Zero { 0.0 } else { PI / 2.0 };
        let mine: Vec<_> = jumps.iter().filter(|j| j.sector == sector).collect();
        for j in &mine {
            let dist = ((j.m - offset) / PI - ((j.m - offset) / PI).round()).abs() * PI;
            worst = worst.max(dist);
            if dist > WINDOW {
                problems.push(format!(
                    "{sector} jump {}→{} at m/π = {:.4} is {:.3}π from its nπ/2",
                    j.from,
                    j.to,
                    j.m / PI,
                    dist / PI
                ));
            }
            if j.to.abs() != j.from.abs() + 1 {
                problems.push(format!(
                    "{sector} jump {}→{} at m/π = {:.4} is not a unit increase",
                    j.from,
                    j.to,
                    j.m / PI
                ));
            }
        }
        for w in mine.windows(2) {
            let gap = w[1].m - w[0].m;
            if !(0.5 * PI..=1.5 * PI).contains(&gap) {
                problems.push(format!(
                    "{sector} jumps at m/π = {:.4} and {:.4} are {:.3}π apart",
                    w[0].m / PI,
                    w[1].m / PI,
                    gap / PI
                ));
            }
        }
    }
    check(
        problems.is_empty(),
        format!("{} jumps, largest distance {:.3}π; {}", jumps.len(), worst / PI, problems.join("; ")),
    )
}

fn fig3_drive() -> DriveProtocol {
    DriveProtocol::fig1(KitaevParams::new(1.0, 0.5, 0.5), 3.6 * PI).expect("finite")
}

fn bulk_boundary() -> Outcome {
    let tol = 1e-3;
    let s = quasienergy_spectrum(&fig3_drive(), 100).map_err(|e| e.to_string())?;
    let zero = s.phases.iter().filter(|p| p.abs() < tol).count();
    let pi = s.phases.iter().filter(|p| (p.abs() - PI).abs() < tol).count();
    let bulk_min = s
        .phases
        .iter()
        .filter(|p| p.abs() >= tol && (p.abs() - PI).abs() >= tol)
        .map(|p| p.abs().min(PI - p.abs()))
        .fold(f64::INFINITY, f64::min);
    check(
        zero == 6 && pi == 8 && bulk_min > 10.0 * tol,
        format!("{zero} zero and {pi} π eigenphases, nearest bulk phase {bulk_min:.4} from 0/π"),
    )
}

fn localization() -> Outcome {
    let s = quasienergy_spectrum(&fig3_drive(), 100).map_err(|e| e.to_string())?;
    let modes = extract_majorana_modes(&s, 1e-3).map_err(|e| e.to_string())?;
    let n = s.sites;
    let mut worst: f64 = 0.0;
    let mut counts = [[0usize; 2]; 2];
    for m in &modes {
        // weights are over γ_{2j}, γ_{2j+1} of site j
        let left: f64 = m.weights.iter().enumerate().filter(|(i, _)| i / 2 < n / 2).map(|(_, w)| w).sum();
        let is_left = left > 0.5;
        let far: f64 = m
            .weights
            .iter()
            .enumerate()
            .filter(|(i, _)| if is_left { i / 2 >= 20 } else { n - 1 - i / 2 >= 20 })
            .map(|(_, w)| w)
            .sum();
        worst = worst.max(far);
        let expected_side = if is_left { Side::Left } else { Side::Right };
        if m.side != expected_side {
            return Err(format!("mode at phase {} assigned {:?}", m.phase, m.side));
        }
        counts[usize::from(m.sector == Sector::Pi)][usize::from(!is_left)] += 1;
    }
    check(
        modes.len() == 14 && worst < 0.01 && counts == [[3, 3], [4, 4]],
        format!("{} modes, per side {counts:?}, largest weight beyond 20 sites {worst:.2e}", modes.len()),
    )
}

fn table_one() -> Outcome {
    let rows = syndrome_table(&steane_code());
    let mut diffs = Vec::new();
    for (row, (label, stabs)) in rows.iter().zip(SYNDROMES) {
        let got: Vec<usize> = row.syndrome.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect();
        if row.label.to_string() != label || got != stabs {
            diffs.push(format!("{} {got:?}", row.label));
        }
    }
    check(rows.len() == 14 && diffs.is_empty(), format!("{} rows, differences {diffs:?}", rows.len()))
}

fn code_and_monte_carlo() -> Outcome {
    let start = Instant::now();
    let code = steane_code();
    let report = validate_code(&code).map_err(|e| e.to_string())?;
    let mc = qp_monte_carlo(&code, 10_000, 7, ErrorModel::Single).map_err(|e| e.to_string())?;
    let cross = exhaustive(&code, &cross_block_pairs(&code)).map_err(|e| e.to_string())?;
    let same = exhaustive(&code, &same_block_pairs(&code)).map_err(|e| e.to_string())?;
    let cross_ok = cross.iter().filter(|o| o.corrected()).count();
    let same_logical = same
        .iter()
        .filter(|o| matches!(o.residual, ResidualClass::LogicalX | ResidualClass::LogicalY | ResidualClass::LogicalZ))
        .count();
    let secs = start.elapsed().as_secs_f64();
    check(
        report.low_weight_strings == 105
            && report.low_weight_logicals == 0
            && mc.corrected == 10_000
            && mc.logical_failures == 0
            && cross.len() == 49
            && cross_ok == 49
            && same_logical == same.len()
            && secs < 10.0,
        format!(
            "{} low-weight strings, {} logicals; Monte Carlo {}/{} corrected, {} failures; cross-block {cross_ok}/{}; same-block logical {same_logical}/{}; {secs:.2} s",
            report.low_weight_strings,
            report.low_weight_logicals,
            mc.corrected,
            mc.trials,
            mc.logical_failures,
            cross.len(),
            same.len()
        ),
    )
}

fn phase_gate() -> Outcome {
    let branches = enumerate_branches(&tetron_layout()).map_err(|e| e.to_string())?;
    let ok = branches.iter().filter(|(_, c)| c.tracked_z && c.tracked_x && c.choi).count();
    check(branches.len() == 16 && ok == 16, format!("{ok}/{} branches implement P", branches.len()))
}

fn nanowire_projection() -> Outcome {
    let ks = momentum_grid(401);
    let ds = 0.1;
    let wire = |e_z: f64| NanowireParams { mu: 1.5, j: 0.5, alpha: 0.5, e_z, delta_s: ds };
    let mut errs = Vec::new();
    for m in [5.0, 10.0, 20.0, 40.0] {
        errs.push(projection_error(&wire(m * ds), &ks).map_err(|e| e.to_string())?);
    }
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
    let gap = effective_gap(&wire(40.0 * ds), &ks).map_err(|e| e.to_string())?;
    let small = errs[3] < 0.05 * gap;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (dsr, a, ez, k) =
            (rng.gen_range(0.0..1.0), rng.gen_range(0.0..2.0), rng.gen_range(0.01..5.0), rng.gen_range(-PI..PI));
        let (s, p) = effective_pairings(dsr, a, ez, k).map_err(|e| e.to_string())?;
        let root = ((2.0 * a * k.sin()).powi(2) + ez * ez).sqrt();
        worst = worst.max((s - dsr * ez / root).abs()).max((p - dsr * a / root).abs());
    }
    check(
        decreasing && small && worst < 1e-12,
        format!(
            "errors {errs:?} (strictly decreasing: {decreasing}); {:.2}% of the effective gap at 40Δs; pairing deviation {worst:.1e}",
            100.0 * errs[3] / gap
        ),
    )
}

fn conductance() -> Outcome {
    let c = ConductanceParams::default();
    let (f0, fp) = c.tuned_fluxes();
    let mut values: Vec<f64> = ParityAssignment::all().iter().map(|p| mean_conductance(&c, f0, fp, p)).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let mut flips_ok = true;
    for (p0, ppi) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let up = ParityAssignment::new(p0, ppi, 1).map_err(|e| e.to_string())?;
        let down = ParityAssignment::new(p0, ppi, -1).map_err(|e| e.to_string())?;
        flips_ok &=
            (mean_conductance(&c, f0, fp, &up) - mean_conductance(&c, f0, fp, &down) - 2.0 * c.a3).abs() < 1e-15;
    }
    let two_levels = values.len() == 2 && (values[1] - values[0] - 2.0 * c.a3).abs() < 1e-15;

    let code = steane_code();
    let clean = initialize_state(&code, 1);
    let mut wrong = Vec::new();
    for (id, (label, stabs)) in SYNDROMES.iter().enumerate() {
        let dirty = clean.apply_string(&code.single(id)).map_err(|e| e.to_string())?;
        for s in 0..6 {
            let r = stabilizer_readout(&code, &dirty, s, &c, &mut ForcedOutcomes::new(vec![]))
                .map_err(|e| e.to_string())?;
            let expected = if stabs.contains(&(s + 1)) { -1 } else { 1 };
            let g_expected = c.a0 + c.a3 * f64::from(expected);
            if r.outcome != expected || r.conductance != g_expected {
                wrong.push(format!("{label} S{}", s + 1));
            }
        }
    }
    check(
        two_levels && flips_ok && wrong.is_empty(),
        format!("tuned levels {values:?}; p4 flip gives 2a3: {flips_ok}; readout mismatches {wrong:?}"),
    )
}

fn modulation_sweep() -> Outcome {
    let rows =
        sweep_invariants(KitaevParams::new(1.0, 0.55, 0.6), CouplingLaw::Fig5, 0.05 * PI, 7.95 * PI, 0.05 * PI, 256)
            .map_err(|e| e.to_string())?;
    let hits: Vec<f64> = rows
        .iter()
        .filter(|r| r.m > 6.0 * PI && r.m < 7.0 * PI && r.winding.map(|w| w.pair()) == Some((3, 4)))
        .map(|r| r.m / PI)
        .collect();
    let plateau = hits.windows(2).any(|w| (w[1] - w[0] - 0.05).abs() < 1e-9);
    let span = hits.first().zip(hits.last()).map(|(a, b)| format!("m/π ∈ [{a:.2}, {b:.2}]")).unwrap_or_default();
    check(plateau, format!("{} sweep points with (3, 4) inside (6π, 7π) {span}", hits.len()))
}

fn oracle_equivalence() -> Outcome {
    let gammas: Vec<_> = (1..=4).map(|q| common::jw_gammas(2 * q)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20_000);
    for t in 0..10_000 {
        common::oracle_trial(&mut rng, &gammas).map_err(|e| format!("trial {t}: {e}"))?;
    }
    Ok("10000 randomized products, commutations and 4-step measurement sequences agree".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("closed-form staircase", closed_form_staircase),
        ("fig1 trend", fig1_trend),
        ("bulk-boundary at the 6+8 point", bulk_boundary),
        ("edge localization", localization),
        ("syndrome table", table_one),
        ("code validation and Monte Carlo", code_and_monte_carlo),
        ("phase gate", phase_gate),
        ("nanowire projection", nanowire_projection),
        ("conductance readout", conductance),
        ("mu/Delta modulation sweep", modulation_sweep),
        ("dense oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail} [{:.2} s]", i + 1, start.elapsed().as_secs_f64());
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

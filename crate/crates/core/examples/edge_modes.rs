//! Quasienergy spectrum of an open 100-site chain at m = 3.6π and the
//! localized Majorana modes at phases 0 and π.

use std::f64::consts::PI;

use floquet_majorana::edge_modes::{extract_majorana_modes, quasienergy_spectrum};
use floquet_majorana::floquet_model::{DriveProtocol, KitaevParams};
use floquet_majorana::invariants::{winding_numbers, Sector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = DriveProtocol::fig1(KitaevParams::new(1.0, 0.5, 0.5), 3.6 * PI)?;
    let w = winding_numbers(&d, 256)?;
    let s = quasienergy_spectrum(&d, 100)?;
    let tol = 1e-3;
    println!("winding (nu0, nupi) = {:?}", w.pair());
    println!(
        "eigenphases near 0: {}, near pi: {}, bulk gap {:.4}",
        s.window(Sector::Zero, tol).len(),
        s.window(Sector::Pi, tol).len(),
        s.bulk_gap(tol)
    );
    for m in extract_majorana_modes(&s, tol)? {
        let peak = m.weights.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(i, _)| i / 2).unwrap_or(0);
        println!(
            "{:<4} {:<5} |phase| {:.6}  peak at site {:>2}  weight beyond 20 sites {:.2e}",
            m.sector.to_string(),
            format!("{:?}", m.side),
            m.phase.abs(),
            peak,
            m.weight_beyond(20)
        );
    }
    Ok(())
}

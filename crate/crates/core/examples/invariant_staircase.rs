//! Winding numbers of the two-step drive as the coupling multiple grows,
//! next to the closed form, followed by the located phase transitions.

use std::f64::consts::PI;

use floquet_majorana::floquet_model::{CouplingLaw, KitaevParams};
use floquet_majorana::invariants::{closed_form_invariants, locate_jumps, sweep_invariants};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = KitaevParams::new(1.0, 0.5, 0.5);
    let rows = sweep_invariants(base, CouplingLaw::Fig1, 0.05 * PI, 7.85 * PI, 0.2 * PI, 256)?;
    println!("{:>6} {:>4} {:>4} {:>8}", "m/pi", "nu0", "nupi", "closed");
    for r in &rows {
        let (c0, cpi) = closed_form_invariants(r.m)?.pair();
        let closed = format!("({c0}, {cpi})");
        match &r.winding {
            Some(w) => println!("{:>6.2} {:>4} {:>4} {:>8}", r.m / PI, w.nu0, w.nupi, closed),
            None => println!("{:>6.2}  gap closes", r.m / PI),
        }
    }

    let wide = KitaevParams::new(1.0, 0.55, 0.6);
    let rows = sweep_invariants(wide, CouplingLaw::Fig1, 0.05 * PI, 7.95 * PI, 0.05 * PI, 256)?;
    println!("\ntransitions for (mu, J, Delta) = (1, 0.55, 0.6):");
    for j in locate_jumps(wide, CouplingLaw::Fig1, &rows, 256, 1e-3)? {
        println!("  {:<4} {:>2} -> {:>2} at m/pi = {:.4}", j.sector.to_string(), j.from, j.to, j.m / PI);
    }
    Ok(())
}

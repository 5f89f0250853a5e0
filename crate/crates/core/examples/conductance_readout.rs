//! Interferometric conductance versus flux, and stabilizer readout of a
//! code state carrying one quasiparticle error.

use std::f64::consts::PI;

use floquet_majorana::majorana::{initialize_state, steane_code, ForcedOutcomes};
use floquet_majorana::readout::{
    discriminability, mean_conductance, stabilizer_readout, ConductanceParams, ParityAssignment,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = ConductanceParams::default();
    println!("flux0/pi  G(p4=+1)  G(p4=-1)");
    for i in 0..=8 {
        let f0 = f64::from(i) * PI / 4.0;
        let g = |p4| ParityAssignment::new(1, p4, p4).map(|p| mean_conductance(&c, f0, c.phipi, &p));
        println!("{:>8.2} {:>9.4} {:>9.4}", f0 / PI, g(1)?, g(-1)?);
    }
    let (f0, fp) = c.tuned_fluxes();
    let level = |p4| ParityAssignment::new(1, p4, p4).map(|p| mean_conductance(&c, f0, fp, &p));
    println!("tuned fluxes: p4 levels separated by {:.3}", level(1)? - level(-1)?);
    let off = (f0 + 0.3, fp);
    println!("0.3 rad off tuning: four-parity signal / residual = {:.2}", discriminability(&c, off.0, off.1));

    let code = steane_code();
    let error = (0..code.n_modes).find(|&i| code.label(i).to_string() == "piL3").expect("label exists");
    let state = initialize_state(&code, 1).apply_string(&code.single(error))?;
    for s in 0..code.stabilizers.len() {
        let r = stabilizer_readout(&code, &state, s, &c, &mut ForcedOutcomes::new(vec![]))?;
        println!("S{}: outcome {:+}, G = {:.2}", s + 1, r.outcome, r.conductance);
    }
    Ok(())
}

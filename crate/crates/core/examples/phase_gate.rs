//! Measurement-only phase gate on a tetron pair: one random branch in
//! detail, then all 16 outcome branches checked.

use floquet_majorana::majorana::verify_phase_gate;
use floquet_majorana::majorana::{
    enumerate_branches, initial_gate_state, phase_gate_sequence, tetron_layout, RngOutcomes,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let layout = tetron_layout();
    println!("{} Majorana modes, {} per corner", layout.n_modes, layout.mzm_per_corner);
    let initial = initial_gate_state(&layout)?;
    let mut source = RngOutcomes(ChaCha8Rng::seed_from_u64(3));
    let t = phase_gate_sequence(&layout, &initial, &mut source)?;
    println!("outcomes {:?}, correction {}", t.outcomes, t.correction_terms.join(" * "));
    println!("verified: {}", verify_phase_gate(&layout, &t)?.passed());

    let branches = enumerate_branches(&layout)?;
    let ok = branches.iter().filter(|(_, c)| c.passed()).count();
    println!("{ok}/{} branches implement the phase gate", branches.len());
    Ok(())
}

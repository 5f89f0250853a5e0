//! The seven-qubit Majorana code built from 14 edge modes: syndrome table,
//! validation, and quasiparticle-poisoning Monte Carlo.

use floquet_majorana::majorana::{
    cross_block_pairs, exhaustive, qp_monte_carlo, same_block_pairs, steane_code, syndrome_table, validate_code,
    ErrorModel,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let code = steane_code();
    println!("mode   syndrome");
    for row in syndrome_table(&code) {
        let hits: Vec<String> =
            row.syndrome.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| format!("S{}", i + 1)).collect();
        println!("{:<6} {}", row.label.to_string(), hits.join(" "));
    }

    let v = validate_code(&code)?;
    println!("\nstrings of weight <= 2: {}, logical among them: {}", v.low_weight_strings, v.low_weight_logicals);

    let mc = qp_monte_carlo(&code, 10_000, 7, ErrorModel::Single)?;
    println!("single errors: {}/{} corrected", mc.corrected, mc.trials);
    let cross = exhaustive(&code, &cross_block_pairs(&code))?;
    let same = exhaustive(&code, &same_block_pairs(&code))?;
    println!("0/pi pairs corrected: {}/{}", cross.iter().filter(|o| o.corrected()).count(), cross.len());
    println!("same-sector pairs corrected: {}/{}", same.iter().filter(|o| o.corrected()).count(), same.len());
    Ok(())
}

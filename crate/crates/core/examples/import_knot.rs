//! Imports a knot complex given by Maslov and Alexander gradings and prints
//! the Θ₂ complex in file form.

use theta_upsilon::complex::CfkData;
use theta_upsilon::TangleComplex;

fn main() -> theta_upsilon::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/t34_cfk.json").into());
    let data: CfkData = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let c = TangleComplex::from_knot_cfk(&data)?;
    let report = c.validate();
    println!("{} generators, {} arrows, valid: {}", c.generators().len(), c.arrows().len(), report.is_valid());
    println!("{}", c.to_json());
    Ok(())
}

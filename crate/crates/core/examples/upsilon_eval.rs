//! Upsilon and the full t-modified homology of the trefoil at one point.

use theta_upsilon::corpus::trefoil;
use theta_upsilon::homology::Evaluator;
use theta_upsilon::rational::{format, parse_list};

fn main() -> theta_upsilon::Result<()> {
    let c = trefoil();
    let ev = Evaluator::new(&c)?;
    for t in ["2,0", "3/2,1/2", "1,1", "1/3,5/3"] {
        let h = ev.homology(&parse_list(t)?)?;
        let torsion: Vec<String> = h.torsion.iter().map(|(g, b)| format!("R/u^{} at {}", format(b), format(g))).collect();
        println!("t = ({t}): Υ = {}, torsion [{}]", format(&h.free[0]), torsion.join(", "));
    }
    Ok(())
}

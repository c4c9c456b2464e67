//! τ, derivative jumps, f_i and d read off Upsilon.

use theta_upsilon::corpus::{theta1, torus_3_4, trefoil};
use theta_upsilon::homology::{d_invariant, Evaluator};
use theta_upsilon::pl::{f_i_components, jump_delta, tau_matrix, SegmentOptions};
use theta_upsilon::rational::{format, int, ratio};

fn main() -> theta_upsilon::Result<()> {
    let opts = SegmentOptions::default();
    for (name, c) in [("trefoil", trefoil()), ("T(3,4)", torus_3_4())] {
        let ev = Evaluator::new(&c)?;
        let m = tau_matrix(&ev, &opts)?;
        let tau = -m[0][1].clone().expect("off-diagonal");
        let j = jump_delta(&ev, 1, &int(1), &opts)?;
        let f = f_i_components(&ev, 1, 5, &opts)?;
        let fs: Vec<String> = f.values.iter().map(format).collect();
        println!(
            "{name}: τ = {}, Δ at a = 1 is {} (a·Δ = {}), f_1 = ({})",
            format(&tau),
            format(&j.delta),
            format(&j.parity_product()),
            fs.join(", ")
        );
    }
    println!("d of a Θ₁ complex in grading 1/2: {}", format(&d_invariant(&theta1(ratio(1, 2)))?));
    Ok(())
}

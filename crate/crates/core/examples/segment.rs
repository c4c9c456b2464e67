//! Exact piecewise-linear Upsilon of T(3,4) along the edge of its Θ₂ polytope.

use theta_upsilon::corpus::torus_3_4;
use theta_upsilon::homology::Evaluator;
use theta_upsilon::pl::{reconstruct_segment, vertex_weight, SegmentOptions};
use theta_upsilon::rational::format;

fn main() -> theta_upsilon::Result<()> {
    let c = torus_3_4();
    let ev = Evaluator::new(&c)?;
    let p = reconstruct_segment(&ev, &vertex_weight(2, 0), &vertex_weight(2, 1), &SegmentOptions::default())?;
    println!("certified: {}, {} evaluations", p.certified, p.evaluations);
    let f = &p.functions[0];
    for (s, v) in f.breakpoints.iter().zip(&f.values) {
        println!("s = {:>4}  Υ = {}", format(s), format(v));
    }
    let slopes: Vec<String> = f.slopes().iter().map(format).collect();
    println!("slopes: {}", slopes.join(", "));
    Ok(())
}

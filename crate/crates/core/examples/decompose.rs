//! Writes a weight vector as a convex combination of matchings, then pushes
//! it to the boundary with a loop move.

use theta_upsilon::polytope::{decompose_to_matchings, loop_move};
use theta_upsilon::rational::{format, parse_list};
use theta_upsilon::LabeledGraph;

fn main() -> theta_upsilon::Result<()> {
    let g = LabeledGraph::cycle(3);
    let t = parse_list("1/2,3/2,1/2,3/2,1/2,3/2")?;
    let c = decompose_to_matchings(&g, &t)?;
    for (m, x) in &c.terms {
        println!("{} x {m}", format(x));
    }
    assert_eq!(c.evaluate(&g), t);

    let moved = loop_move(&g, &t, &[0, 1, 2, 3, 4, 5])?;
    let shown: Vec<String> = moved.iter().map(format).collect();
    println!("after the loop move: ({})", shown.join(", "));
    Ok(())
}

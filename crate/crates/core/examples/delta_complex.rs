//! Triangulates the square polytope of the two-component link graph and
//! locates a point in it.

use theta_upsilon::rational::{format, parse_list};
use theta_upsilon::{DeltaComplex, LabeledGraph};

fn main() -> theta_upsilon::Result<()> {
    let g = LabeledGraph::link_graph(2);
    let dc = DeltaComplex::build(&g)?;
    println!("dimension {}", dc.dimension());
    for (i, m) in dc.matchings().iter().enumerate() {
        println!("vertex {i}: {m}");
    }
    for (d, faces) in dc.simplices().iter().enumerate() {
        println!("{d}-simplices: {faces:?}");
    }

    let t = parse_list("1/2,1,3/2,1")?;
    let loc = dc.locate(&g, &t)?;
    let coords: Vec<String> = loc.coords.iter().map(format).collect();
    println!("t lies in {:?} with coordinates ({})", loc.simplex, coords.join(", "));
    assert_eq!(dc.reconstruct(&loc), t);
    Ok(())
}

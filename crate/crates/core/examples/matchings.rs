//! Perfect matchings and the solution polytope of a few small graphs.

use theta_upsilon::polytope::solution_polytope;
use theta_upsilon::rational::format;
use theta_upsilon::LabeledGraph;

fn main() {
    for (name, g) in [
        ("Θ_3", LabeledGraph::theta(3)),
        ("C_6", LabeledGraph::cycle(3)),
        ("two-component link graph", LabeledGraph::link_graph(2)),
    ] {
        let p = solution_polytope(&g);
        println!("{name}: {} matchings, dimension {}", p.matchings.len(), p.dimension);
        for (m, v) in p.matchings.iter().zip(&p.vertices) {
            let w: Vec<String> = v.iter().map(format).collect();
            println!("  {m}  t = ({})", w.join(", "));
        }
    }
}

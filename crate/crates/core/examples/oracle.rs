//! Pivot reduction against the persistence barcode on random points of the
//! regression corpus.

use theta_upsilon::corpus::{self, corpus};
use theta_upsilon::homology::{reduce, Evaluator};
use theta_upsilon::oracle::persistence_reduce;

fn main() -> theta_upsilon::Result<()> {
    let mut rng = corpus::rng(7);
    let mut agree = 0;
    for e in corpus() {
        let ev = Evaluator::new(&e.complex)?;
        let t = corpus::random_point(e.complex.graph(), e.complex.matchings(), &mut rng, false);
        let tc = ev.t_modify(&t)?;
        let (h, b) = (reduce(&tc), persistence_reduce(&tc));
        if h.free == b.infinite && h.torsion == b.finite {
            agree += 1;
        } else {
            println!("disagreement on {}", e.name);
        }
    }
    println!("{agree} of {} complexes agree", corpus().len());
    Ok(())
}

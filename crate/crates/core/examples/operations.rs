//! Tensor products, stabilization and gluing, checked against the
//! regrouped-weight formulas.

use theta_upsilon::complex::{glue, stabilize, tensor};
use theta_upsilon::corpus::{figure_eight, trefoil};
use theta_upsilon::homology::upsilon_at;
use theta_upsilon::rational::{format, parse_list};

fn main() -> theta_upsilon::Result<()> {
    let t = parse_list("2/3,4/3")?;
    let k = trefoil();
    let sum = tensor(&k, &figure_eight())?;
    println!("Υ(trefoil # figure-eight)(2/3,4/3) = {}", format(&upsilon_at(&sum, &t)?[0]));

    let s = stabilize(&k, 2, 1)?;
    let t3 = parse_list("2/3,1,1/3")?;
    println!("Υ(stabilized trefoil)(2/3,1,1/3) = {}", format(&upsilon_at(&s, &t3)?[0]));
    assert_eq!(upsilon_at(&s, &t3)?, upsilon_at(&k, &t)?);

    // glue along the last edges: Υ(t̃) = Υ(t1, t2 + t3) + Υ(t2, t3 + t1)
    let g = glue(&s, &k)?;
    let lhs = upsilon_at(&g, &t3)?[0].clone();
    let rhs = &upsilon_at(&s, &parse_list("2/3,4/3,0")?)?[0] + &upsilon_at(&k, &parse_list("1/3,5/3")?)?[0];
    println!("glued: {} = {}", format(&lhs), format(&rhs));
    Ok(())
}

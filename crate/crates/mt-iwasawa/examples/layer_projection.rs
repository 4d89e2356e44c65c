//! Reduction of power series modulo omega_n = (1+T)^(p^n) - 1: the division
//! terms, p-largeness, the transfer formula and the Newton-polygon criterion.
//!
//!     cargo run --example layer_projection

use mt_iwasawa::arith::{Poly, PrimeContext};
use mt_iwasawa::iwasawa::{
    b_region_contains, division_terms, invariants, is_p_large, layer_invariants_via_theorem, newton_polygon, project,
};

fn main() -> anyhow::Result<()> {
    let ctx = PrimeContext::new(3)?;
    let n = 1;
    println!("T^(3+N) mod omega_1 for N = 0..4:");
    for (big_n, row) in division_terms(&ctx, n, 4).iter().enumerate() {
        println!("  N = {big_n}: {row:?}");
    }

    // lambda < p^n: invariants survive the projection
    let small = Poly::from_ints_q(&[9, 3, 1]);
    println!("{:?} -> {:?}", invariants(&small, 3)?, project(&small, &ctx, n).invariants(3)?);

    // a p-large series: the transfer formula predicts the layer invariants
    let large = Poly::from_ints_q(&[27, 27, 9, 9, 1]);
    let layer = project(&large, &ctx, n).invariants(3)?;
    println!(
        "{:?}: p-large {}, layer {:?}, formula {:?}, Newton polygon {:?} in region {}",
        invariants(&large, 3)?,
        is_p_large(&large, &ctx, n)?,
        layer,
        layer_invariants_via_theorem(&large, &ctx, n).ok(),
        newton_polygon(&large, 5, 3).vertices,
        b_region_contains(&large, &ctx, n)?
    );

    // T^3 + 3T is not p-large and the transfer identity fails for it
    let bad = Poly::from_ints_q(&[0, 3, 0, 1]);
    println!(
        "{:?}: p-large {}, layer {:?}",
        invariants(&bad, 3)?,
        is_p_large(&bad, &ctx, n)?,
        project(&bad, &ctx, n).invariants(3)?
    );
    Ok(())
}

//! Exact truncated power series: arithmetic, exp/log, rational powers and reversion.
//!
//! Run with `cargo run --example power_series`.

use segre::kernel::{frac, int, TruncatedPowerSeries};

fn main() -> segre::Result<()> {
    let order = 6;
    let z = TruncatedPowerSeries::variable(order);
    let one = TruncatedPowerSeries::one(order);

    let f = &one + &z;
    println!("f          = {f}");
    println!("1/f        = {}", f.recip()?);
    println!("log f      = {}", f.log()?);
    println!("exp z      = {}", z.exp()?);
    println!("f^(1/2)    = {}", f.pow(&frac(1, 2))?);
    println!("f^-3       = {}", f.pow_int(-3)?);

    // z / (1 - z) reverts to z / (1 + z)
    let g = z.div(&(&one - &z))?;
    let r = g.revert()?;
    println!("rev(z/(1-z)) = {r}");
    assert_eq!(g.compose(&r)?, z);

    // catalan generating function: C = 1 + z C^2, so z C(z) reverts z - z^2
    let q = &z - &(&z * &z);
    let cat = q.revert()?;
    let coeffs: Vec<String> = cat.coeffs().iter().map(ToString::to_string).collect();
    println!("catalan    = {}", coeffs.join(", "));
    assert_eq!(cat.coeffs()[4], int(5));
    Ok(())
}

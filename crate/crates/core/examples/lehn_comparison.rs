//! Compares the engine series with the closed form obtained by the Lehn substitution.

use segre::lehn::{lehn_exponents, LehnOracle};
use segre::universal::segre_series;
use segre::{SurfaceInvariants, UniversalSeriesSet};

fn main() -> segre::Result<()> {
    let order = 8;
    let u = UniversalSeriesSet::determine(order);
    let oracle = LehnOracle::new(order);
    println!("z(w) = {}", oracle.z_of_w());
    println!("w(z) = {}", oracle.w_of_z());

    for inv in [
        SurfaceInvariants::new(2, 0, 0, 0),
        SurfaceInvariants::new(-3, 1, 2, 10),
        SurfaceInvariants::new(7, -2, -1, 25),
    ] {
        let x = lehn_exponents(&inv);
        let engine = segre_series(&inv, order, &u)?;
        let lehn = oracle.series(&inv)?;
        println!("{inv}: exponents a={} b={} c={} chi={}", x.a, x.b, x.c, x.chi);
        println!("  engine {engine}");
        println!("  lehn   {lehn}");
        assert_eq!(engine, lehn);
    }
    Ok(())
}

//! Determines the universal series A, B, C, D and evaluates Segre numbers of sample surfaces.

use segre::universal::{segre_number, segre_series};
use segre::{SurfaceInvariants, UniversalSeriesSet};

fn main() -> segre::Result<()> {
    let order = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let u = UniversalSeriesSet::determine(order);
    for name in ["A", "B", "C", "D"] {
        println!("{name} = {}", u.by_name(name).unwrap());
    }

    let surfaces = [
        ("K3, genus 3", SurfaceInvariants::k3(3)),
        ("abelian, d = 2", SurfaceInvariants::abelian(2)),
        ("sample", SurfaceInvariants::new(1, -2, 9, 3)),
        ("sample", SurfaceInvariants::new(5, 5, 5, 55)),
    ];
    for (label, inv) in surfaces {
        println!("{label} {inv}: {}", segre_series(&inv, order, &u)?);
        println!("  s_4 = {}", segre_number(&inv, 4, &u)?);
    }
    Ok(())
}

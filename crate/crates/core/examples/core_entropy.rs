// Core entropy from the pair graph, and the growth of biaccessible angles.

use laminations::entropy::spectral_radius;
use laminations::{hdim_growth, pair_graph, Angle, Result};

fn run_example() -> Result<String> {
    let mut out = String::new();
    for theta in [
        Angle::frac(1, 7),
        Angle::frac(1, 3),
        Angle::frac(3, 7),
        Angle::frac(1, 2),
    ] {
        let g = pair_graph(&theta);
        let rho = spectral_radius(&g, 1e-9)?;
        out += &format!(
            "{theta}: {} pairs, rho {:.9}, h {:.9}\n",
            g.node_count(),
            rho.value(),
            rho.value().max(1.0).ln()
        );
    }
    let fit = hdim_growth(&Angle::frac(3, 7), 10)?;
    out += &format!(
        "3/7 counts {:?}, dimension estimate {:.3}\n",
        fit.counts, fit.dimension
    );
    Ok(out)
}

fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}

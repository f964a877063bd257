// Narrow times and the valence inequality on a finite portrait orbit.

use laminations::portrait::{first_narrow_time, key_inequality_audit, parse_orbits};
use laminations::Result;
use num_rational::BigRational;

const PREFIX: &str = include_str!("data/degree4_prefix.txt");

fn run_example() -> Result<String> {
    let orbits = parse_orbits(PREFIX)?;
    let eps: BigRational = "1/10".parse().expect("literal ratio");
    let cert = first_narrow_time(&orbits[0], 4, &eps, 1)?;
    let mut out = format!(
        "first narrow time {}, smallest sector {}\n",
        cert.time, cert.size
    );
    let report = key_inequality_audit(&orbits, 4, &eps)?;
    for w in &report.witnesses {
        out += &format!("witness at time {}: {}\n", w.time, w.sector);
    }
    out += &format!(
        "sum of excess valence {} <= {}: {}, consistent {}\n",
        report.valence_excess,
        report.bound,
        report.inequality_holds,
        report.consistent()
    );
    Ok(out)
}

fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}

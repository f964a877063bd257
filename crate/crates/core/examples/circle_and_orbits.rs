// Angles, orbits under the doubling map and the unlinked test.

use laminations::circle::angles_with_orbit_bounds;
use laminations::{orbit, unlinked, Angle, Result};

fn run_example() -> Result<String> {
    let mut out = String::new();
    for text in ["1/7", "1/14", "11/56", "1/2"] {
        let theta: Angle = text.parse()?;
        let o = orbit(&theta, 2)?;
        let points: Vec<String> = o.points.iter().map(ToString::to_string).collect();
        out += &format!(
            "{theta}: preperiod {}, period {}, orbit {}\n",
            o.preperiod,
            o.period,
            points.join(" -> ")
        );
    }
    let rabbit = [Angle::frac(1, 7), Angle::frac(2, 7), Angle::frac(4, 7)];
    let airplane = [Angle::frac(3, 7), Angle::frac(4, 7)];
    let inside = [Angle::frac(5, 7), Angle::frac(6, 7)];
    out += &format!(
        "rabbit and {{5/7, 6/7}} unlinked: {}\n",
        unlinked(&rabbit, &inside)?
    );
    out += &format!(
        "{{1/7, 2/7}} and {{3/7, 6/7}} unlinked: {}\n",
        unlinked(&rabbit[..2], &[Angle::frac(3, 7), Angle::frac(6, 7)])?
    );
    out += &format!(
        "rabbit and airplane share 4/7: {:?}\n",
        unlinked(&rabbit, &airplane).is_err()
    );
    let period3 = angles_with_orbit_bounds(2, 3, 0)?;
    out += &format!("periodic angles of period at most 3: {}\n", period3.len());
    Ok(out)
}

fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}

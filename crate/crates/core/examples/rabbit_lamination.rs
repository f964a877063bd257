// Landing classes of the rabbit, decided by itineraries.

use laminations::{lamination, valence_histogram, Angle, LandingModel, Result};

fn run_example() -> Result<String> {
    let theta = Angle::frac(1, 7);
    let model = LandingModel::new(&theta);
    let mut out = format!("rule {}\n", model.rule());
    for x in [
        Angle::frac(1, 7),
        Angle::frac(2, 7),
        Angle::frac(3, 7),
        Angle::frac(1, 14),
    ] {
        out += &format!("{x}: {}\n", model.itinerary(&x));
    }
    let lam = lamination(&theta, 3, 1)?;
    for class in lam.nontrivial() {
        let names: Vec<String> = class.iter().map(ToString::to_string).collect();
        out += &format!("class {{{}}}\n", names.join(", "));
    }
    lam.verify()?;
    let hist = valence_histogram(&lam);
    out += &format!("valences {:?}\n", hist.counts);
    Ok(out)
}

fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}

// Characteristic arcs, their preimages and the monotonicity check.

use laminations::quadratic::{audit_characteristic_arc, escape_time, monotonicity_check};
use laminations::{characteristic_arc, precedes, Angle, Result};

fn run_example() -> Result<String> {
    let a = Angle::frac;
    let mut out = String::new();
    for theta in [a(1, 7), a(1, 3), a(3, 7), a(11, 56), a(1, 2)] {
        let ch = characteristic_arc(&theta);
        out += &format!("{theta}: {:?} {}\n", ch.kind, ch.arc);
    }
    let audit = audit_characteristic_arc(&a(3, 7))?;
    out += &format!(
        "3/7 preimages {} and {}, pass {}\n",
        audit.preimages.0,
        audit.preimages.1,
        audit.pass()
    );
    out += &format!(
        "3/28 leaves the preimage arcs of 1/7 after {} steps\n",
        escape_time(&a(3, 28), &a(1, 7), 10)?
    );
    out += &format!("1/3 precedes 3/7: {}\n", precedes(&a(1, 3), &a(3, 7)));
    let report = monotonicity_check(&a(1, 3), &a(3, 7), 8, 1e-9)?;
    out += &format!(
        "|Acc| {} -> {}, pass {}\n",
        report.acc_from,
        report.acc_to,
        report.pass()
    );
    Ok(out)
}

fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}

// A cubic critical portrait, its partition and a diagram.

use laminations::critportrait::{hat_closure, partition, piece_of};
use laminations::{svg, Angle, Result};

fn run_example() -> Result<String> {
    let a = Angle::frac;
    let cp = hat_closure(&[vec![a(1, 9), a(4, 9)], vec![a(5, 9), a(8, 9)]], 3)?;
    let p = partition(&cp)?;
    let mut out = format!("{p}");
    for theta in [a(1, 5), a(1, 2), a(1, 9)] {
        out += &format!("piece of {theta}: {}\n", piece_of(&theta, &p));
    }
    let image = svg::critical_diagram(&cp, &p);
    out += &format!(
        "diagram: {} bytes, {} chords\n",
        image.len(),
        image.matches("<line").count()
    );
    Ok(out)
}

fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}

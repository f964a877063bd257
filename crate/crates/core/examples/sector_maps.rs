// Sectors of a ray portrait and how the angle map carries them.

use laminations::portrait::containing_sector;
use laminations::{map_portrait, sector_image, sectors, Angle, Portrait, Result};

fn run_example() -> Result<String> {
    let rabbit = Portrait::new([Angle::frac(1, 7), Angle::frac(2, 7), Angle::frac(4, 7)])?;
    let mut out = format!("portrait {rabbit}, image {}\n", map_portrait(&rabbit, 2)?);
    for (rank, s) in sectors(&rabbit).iter().enumerate() {
        let img = sector_image(s, &rabbit, 2)?;
        out += &format!(
            "S_{} = {s}: image {}, critical points {}\n",
            rank + 1,
            img.image,
            img.critical_count
        );
    }
    let s = containing_sector(&rabbit, &[Angle::frac(5, 7), Angle::frac(6, 7)])?;
    out += &format!("5/7 and 6/7 lie in {s}\n");
    Ok(out)
}

fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}

//! Chord diagrams on the unit circle.

use std::fmt::Write;

use crate::circle::{Angle, Arc};
use crate::critportrait::{CriticalPortrait, Partition};
use crate::itinerary::Lamination;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn coord(v: f64) -> String {
    if v.abs() < 5e-7 {
        return "0".into();
    }
    format!("{v:.6}")
}

/// Screen position of an angle at radius `r`; the y axis points down.
fn point(theta: &Angle, r: f64) -> (String, String) {
    let t = std::f64::consts::TAU * theta.to_f64();
    (coord(r * t.cos()), coord(-r * t.sin()))
}

fn open(out: &mut String) {
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.25 -1.25 2.5 2.5\" width=\"500\" height=\"500\">\n",
    );
    out.push_str("<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.006\"/>\n");
}

fn band(out: &mut String, arc: &Arc, r: f64, color: &str) {
    let Some((start, end)) = arc.endpoints() else {
        return;
    };
    let (x0, y0) = point(start, r);
    let (x1, y1) = point(end, r);
    let large = u8::from(arc.length() > num_rational::BigRational::new(1.into(), 2.into()));
    let _ = writeln!(
        out,
        "<path d=\"M {x0} {y0} A {r} {r} 0 {large} 0 {x1} {y1}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"0.06\"/>"
    );
}

fn chord(out: &mut String, a: (&str, &str), b: (&str, &str), color: &str) {
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"0.01\"/>",
        a.0, a.1, b.0, b.1
    );
}

/// Each class drawn as a star of chords to its centre, each piece as a
/// coloured band outside the circle.
pub fn critical_diagram(cp: &CriticalPortrait, p: &Partition) -> String {
    let mut out = String::new();
    open(&mut out);
    for piece in p.pieces() {
        let color = PALETTE[(piece.index - 1) % PALETTE.len()];
        for arc in &piece.arcs {
            band(&mut out, arc, 1.08, color);
        }
    }
    for class in cp.classes() {
        let n = class.len() as f64;
        let (mut cx, mut cy) = (0.0, 0.0);
        for t in class {
            let a = std::f64::consts::TAU * t.to_f64();
            cx += a.cos() / n;
            cy -= a.sin() / n;
        }
        let centre = (coord(cx), coord(cy));
        for t in class {
            let (x, y) = point(t, 1.0);
            chord(&mut out, (&centre.0, &centre.1), (&x, &y), "#000000");
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Nontrivial classes as filled polygons, one colour per class.
pub fn lamination_diagram(lam: &Lamination) -> String {
    let mut out = String::new();
    open(&mut out);
    for (k, class) in lam.nontrivial().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<(String, String)> = class.iter().map(|t| point(t, 1.0)).collect();
        if pts.len() == 2 {
            chord(
                &mut out,
                (&pts[0].0, &pts[0].1),
                (&pts[1].0, &pts[1].1),
                color,
            );
            continue;
        }
        let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.35\" stroke=\"{color}\" stroke-width=\"0.01\"/>",
            list.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

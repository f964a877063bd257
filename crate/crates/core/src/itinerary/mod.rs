//! Itineraries relative to a partition and the same-itinerary criterion.
//!
//! Symbols are sets of piece indices so that boundary angles, which lie in
//! the closure of two pieces, can carry both.

mod lamination;
mod landing;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::circle::{lcm, orbit, Angle, Orbit};
use crate::critportrait::Partition;

pub use lamination::{
    lamination, lamination_with_model, valence_histogram, BranchedClass, Lamination,
    LaminationBounds, ValenceHistogram,
};
pub use landing::{BoundaryRule, LandingModel};

/// A set of piece indices in `1..=64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbols(u64);

impl Symbols {
    pub fn single(piece: usize) -> Self {
        assert!((1..=64).contains(&piece), "piece index out of range");
        Symbols(1 << (piece - 1))
    }

    pub fn union(self, other: Symbols) -> Symbols {
        Symbols(self.0 | other.0)
    }

    pub fn intersects(self, other: Symbols) -> bool {
        self.0 & other.0 != 0
    }

    pub fn contains(self, piece: usize) -> bool {
        (1..=64).contains(&piece) && self.0 & (1 << (piece - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_single(self) -> bool {
        self.len() == 1
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=64).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<usize> for Symbols {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Symbols::default(), |acc, i| acc.union(Symbols::single(i)))
    }
}

impl fmt::Display for Symbols {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            return write!(f, "{}", self.iter().next().unwrap_or(0));
        }
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Symbols {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Symbols {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Eventually periodic itinerary: `symbols[..preperiod]` then `symbols[preperiod..]` forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Itinerary {
    symbols: Vec<Symbols>,
    preperiod: usize,
    period: usize,
}

/// Normal form of a single-valued itinerary: shortest prefix, primitive cycle.
pub type ItineraryKey = (Vec<Symbols>, Vec<Symbols>);

impl Itinerary {
    pub fn from_orbit(orbit: &Orbit, symbol: impl Fn(&Angle) -> Symbols) -> Self {
        Itinerary {
            symbols: orbit.points.iter().map(symbol).collect(),
            preperiod: orbit.preperiod,
            period: orbit.period,
        }
    }

    pub fn symbols(&self) -> &[Symbols] {
        &self.symbols
    }

    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn at(&self, n: usize) -> Symbols {
        if n < self.preperiod {
            self.symbols[n]
        } else {
            self.symbols[self.preperiod + (n - self.preperiod) % self.period]
        }
    }

    /// Every symbol set is a single piece.
    pub fn is_single_valued(&self) -> bool {
        self.symbols.iter().all(|s| s.is_single())
    }

    /// Number of indices that decide every comparison with `other`.
    fn horizon(&self, other: &Itinerary) -> usize {
        self.preperiod.max(other.preperiod) + lcm(self.period, other.period)
    }

    /// First index where the symbol sets are disjoint.
    pub fn first_split(&self, other: &Itinerary) -> Option<usize> {
        (0..self.horizon(other)).find(|&n| !self.at(n).intersects(other.at(n)))
    }

    pub fn compatible(&self, other: &Itinerary) -> bool {
        self.first_split(other).is_none()
    }

    /// Normal form; equal sequences have equal keys.
    pub fn key(&self) -> ItineraryKey {
        normalize(
            self.symbols[..self.preperiod].to_vec(),
            self.symbols[self.preperiod..].to_vec(),
        )
    }

    /// Keys of every single-valued sequence compatible with `self`, or `None`
    /// when a multi-valued symbol recurs in the cycle.
    pub fn expansions(&self) -> Option<Vec<ItineraryKey>> {
        if !self.symbols[self.preperiod..].iter().all(|s| s.is_single()) {
            return None;
        }
        let mut prefixes: Vec<Vec<Symbols>> = vec![Vec::new()];
        for s in &self.symbols[..self.preperiod] {
            prefixes = prefixes
                .into_iter()
                .flat_map(|p| {
                    s.iter().map(move |i| {
                        let mut next = p.clone();
                        next.push(Symbols::single(i));
                        next
                    })
                })
                .collect();
        }
        let cycle = self.symbols[self.preperiod..].to_vec();
        Some(
            prefixes
                .into_iter()
                .map(|p| normalize(p, cycle.clone()))
                .collect(),
        )
    }
}

fn normalize(mut prefix: Vec<Symbols>, mut cycle: Vec<Symbols>) -> ItineraryKey {
    let m = cycle.len();
    if let Some(q) =
        (1..=m).find(|&q| m.is_multiple_of(q) && (0..m).all(|i| cycle[i] == cycle[i % q]))
    {
        cycle.truncate(q);
    }
    while let (Some(last), Some(tail)) = (prefix.last(), cycle.last()) {
        if last != tail {
            break;
        }
        prefix.pop();
        cycle.rotate_right(1);
    }
    (prefix, cycle)
}

impl fmt::Display for Itinerary {
    /// Prefix symbols, then the cycle in brackets: `{1,2} 1 [2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &[Symbols]| {
            s.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let prefix = show(&self.symbols[..self.preperiod]);
        let cycle = show(&self.symbols[self.preperiod..]);
        if prefix.is_empty() {
            write!(f, "[{cycle}]")
        } else {
            write!(f, "{prefix} [{cycle}]")
        }
    }
}

pub fn itinerary(theta: &Angle, p: &Partition) -> Itinerary {
    let orbit = orbit(theta, p.degree()).expect("partitions carry a valid degree");
    Itinerary::from_orbit(&orbit, |t| p.piece_of(t))
}

/// Symbol sets meet at every index.
pub fn same_itinerary(a: &Angle, b: &Angle, p: &Partition) -> bool {
    itinerary(a, p).compatible(&itinerary(b, p))
}

pub fn first_split(a: &Angle, b: &Angle, p: &Partition) -> Option<usize> {
    itinerary(a, p).first_split(&itinerary(b, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critportrait::{partition, quadratic_portrait};

    fn a(n: i64, d: i64) -> Angle {
        Angle::frac(n, d)
    }

    fn s(items: &[usize]) -> Symbols {
        items.iter().copied().collect()
    }

    fn rabbit() -> Partition {
        partition(&quadratic_portrait(&a(1, 7))).unwrap()
    }

    #[test]
    fn itineraries_in_the_rabbit_partition() {
        let it = itinerary(&a(1, 7), &rabbit());
        assert_eq!(it.symbols(), &[s(&[1]), s(&[1]), s(&[1, 2])]);
        assert_eq!((it.preperiod(), it.period()), (0, 3));
        assert_eq!(it.to_string(), "[1 1 {1,2}]");

        let it = itinerary(&a(3, 7), &rabbit());
        assert_eq!(it.symbols(), &[s(&[1]), s(&[2]), s(&[2])]);
    }

    #[test]
    fn boundary_itinerary_for_the_tip() {
        let p = partition(&quadratic_portrait(&a(1, 2))).unwrap();
        let it = itinerary(&a(1, 4), &p);
        assert_eq!(it.symbols(), &[s(&[1, 2]), s(&[1]), s(&[2])]);
        assert_eq!((it.preperiod(), it.period()), (2, 1));
        assert_eq!(it.at(9), s(&[2]));
    }

    #[test]
    fn same_itinerary_examples() {
        let p = rabbit();
        assert!(same_itinerary(&a(1, 7), &a(2, 7), &p));
        assert!(!same_itinerary(&a(3, 7), &a(5, 7), &p));
        assert_eq!(first_split(&a(3, 7), &a(5, 7), &p), Some(0));
        assert!(same_itinerary(&a(1, 14), &a(9, 14), &p));
        assert!(same_itinerary(&a(3, 7), &a(3, 7), &p));
    }

    #[test]
    fn normal_form() {
        let (one, two) = (s(&[1]), s(&[2]));
        assert_eq!(
            normalize(vec![two, one], vec![two, one]),
            (vec![], vec![two, one])
        );
        assert_eq!(
            normalize(vec![one], vec![one, one, one]),
            (vec![], vec![one])
        );
        assert_eq!(
            normalize(vec![two, two], vec![one, two]),
            (vec![two], vec![two, one])
        );
    }

    #[test]
    fn expansions_cover_boundary_choices() {
        let p = partition(&quadratic_portrait(&a(1, 2))).unwrap();
        let keys = itinerary(&a(1, 4), &p).expansions().unwrap();
        assert_eq!(keys.len(), 2);
        let rabbit_cycle = itinerary(&a(1, 7), &rabbit());
        assert!(rabbit_cycle.expansions().is_none());
    }
}

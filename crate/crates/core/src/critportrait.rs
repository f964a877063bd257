//! Critical portraits and the circle partition they induce.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::circle::{check_degree, first_linked_pair, sorted_unique, Angle, Arc};
use crate::error::{Error, PortraitCondition, Result};
use crate::itinerary::Symbols;
use crate::portrait::ser_ratio;

/// Unlinked angle classes, each collapsed to one angle by `t -> d t`, with
/// `sum (|class| - 1) = d - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPortrait {
    d: u32,
    classes: Vec<Vec<Angle>>,
}

#[derive(Deserialize)]
struct RawPortrait {
    d: u32,
    classes: Vec<Vec<Angle>>,
}

impl CriticalPortrait {
    pub fn new(classes: Vec<Vec<Angle>>, d: u32) -> Result<Self> {
        check_degree(d)?;
        let mut classes: Vec<Vec<Angle>> = classes.into_iter().map(sorted_unique).collect();
        classes.sort();
        check_conditions(&classes, d)?;
        Ok(CriticalPortrait { d, classes })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn classes(&self) -> &[Vec<Angle>] {
        &self.classes
    }

    /// All angles of all classes, sorted.
    pub fn boundary(&self) -> Vec<Angle> {
        sorted_unique(self.classes.iter().flatten().cloned())
    }

    /// Every class rotated by `by`. Rotation keeps all three conditions.
    pub fn rotate(&self, by: &BigRational) -> Result<Self> {
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().map(|t| t.rotate(by)).collect())
            .collect();
        CriticalPortrait::new(classes, self.d)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawPortrait = serde_json::from_str(text)?;
        CriticalPortrait::new(raw.classes, raw.d)
    }
}

fn check_conditions(classes: &[Vec<Angle>], d: u32) -> Result<()> {
    let violation = |c| Err(Error::ConditionViolation(c));
    let excess: usize = classes.iter().map(|c| c.len().saturating_sub(1)).sum();
    if excess != d as usize - 1 || classes.iter().any(|c| c.len() < 2) {
        return violation(PortraitCondition::CriticalCount);
    }
    let all: Vec<&Angle> = classes.iter().flatten().collect();
    let distinct = sorted_unique(all.iter().map(|a| (*a).clone()));
    if distinct.len() != all.len() || first_linked_pair(classes).is_some() {
        return violation(PortraitCondition::Unlinked);
    }
    for class in classes {
        let image = class[0].times(d);
        if class.iter().any(|t| t.times(d) != image) {
            return violation(PortraitCondition::Collapse);
        }
    }
    Ok(())
}

/// Merges raw sets that are chained through shared angles, then validates.
pub fn hat_closure(raw: &[Vec<Angle>], d: u32) -> Result<CriticalPortrait> {
    let mut owner: HashMap<&Angle, usize> = HashMap::new();
    let mut parent: Vec<usize> = (0..raw.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, set) in raw.iter().enumerate() {
        for t in set {
            if let Some(&j) = owner.get(t) {
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                parent[ri] = rj;
            } else {
                owner.insert(t, i);
            }
        }
    }
    let mut merged: BTreeMap<usize, Vec<Angle>> = BTreeMap::new();
    for (i, set) in raw.iter().enumerate() {
        let r = root(&mut parent, i);
        merged.entry(r).or_default().extend(set.iter().cloned());
    }
    CriticalPortrait::new(merged.into_values().collect(), d)
}

/// One piece `I_i` of the partition: a union of open arcs of total length `1/d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub index: usize,
    pub arcs: Vec<Arc>,
    #[serde(serialize_with = "ser_ratio")]
    pub length: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    d: u32,
    boundary: Vec<Angle>,
    pieces: Vec<Piece>,
    /// Piece index of the gap that starts at `boundary[i]`.
    #[serde(skip)]
    gap_piece: Vec<usize>,
}

impl Partition {
    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn boundary(&self) -> &[Angle] {
        &self.boundary
    }

    /// Indices of the pieces whose closure contains `theta`.
    pub fn piece_of(&self, theta: &Angle) -> Symbols {
        let n = self.boundary.len();
        match self.boundary.binary_search(theta) {
            Ok(i) => Symbols::single(self.gap_piece[(i + n - 1) % n])
                .union(Symbols::single(self.gap_piece[i])),
            Err(0) => Symbols::single(self.gap_piece[n - 1]),
            Err(i) => Symbols::single(self.gap_piece[i - 1]),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for piece in &self.pieces {
            let arcs: Vec<String> = piece.arcs.iter().map(ToString::to_string).collect();
            writeln!(f, "I_{} = {}", piece.index, arcs.join(" u "))?;
        }
        Ok(())
    }
}

pub fn piece_of(theta: &Angle, p: &Partition) -> Symbols {
    p.piece_of(theta)
}

/// Pieces of the circle cut out by the chord stars of `cp`.
///
/// Two gaps between consecutive boundary angles lie in the same piece iff no
/// class separates them, so each gap is keyed by the complementary arc it
/// occupies for every class.
pub fn partition(cp: &CriticalPortrait) -> Result<Partition> {
    let d = cp.d;
    let boundary = cp.boundary();
    let n = boundary.len();
    let gap_signature = |start: &Angle| -> Vec<usize> {
        cp.classes
            .iter()
            .map(|class| {
                let below = class.partition_point(|c| c <= start);
                (below + class.len() - 1) % class.len()
            })
            .collect()
    };
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, start) in boundary.iter().enumerate() {
        groups.entry(gap_signature(start)).or_default().push(i);
    }
    if groups.len() != d as usize {
        return Err(Error::InternalInvariant(format!(
            "expected {d} complementary regions, found {}",
            groups.len()
        )));
    }
    let mut members: Vec<Vec<usize>> = groups.into_values().collect();
    members.sort_by_key(|gaps| gaps[0]);

    let inv_d = BigRational::new(BigInt::one(), BigInt::from(d));
    let mut gap_piece = vec![0; n];
    let mut pieces = Vec::with_capacity(members.len());
    for (k, gaps) in members.iter().enumerate() {
        let mut length = BigRational::zero();
        let mut arcs = Vec::new();
        for &i in gaps {
            gap_piece[i] = k + 1;
            let (start, end) = (&boundary[i], &boundary[(i + 1) % n]);
            length += if n == 1 {
                BigRational::one()
            } else {
                start.ccw_to(end)
            };
            arcs.push(Arc::open(start.clone(), end.clone()));
        }
        if length != inv_d {
            return Err(Error::InternalInvariant(format!(
                "piece {} has length {length}",
                k + 1
            )));
        }
        check_injective(&arcs, d)?;
        pieces.push(Piece {
            index: k + 1,
            arcs,
            length,
        });
    }
    Ok(Partition {
        d,
        boundary,
        pieces,
        gap_piece,
    })
}

/// The images of a piece's arcs must tile the circle minus finitely many
/// points without overlap.
fn check_injective(arcs: &[Arc], d: u32) -> Result<()> {
    let d_big = BigRational::from_integer(BigInt::from(d));
    let mut images: Vec<(Angle, BigRational)> = arcs
        .iter()
        .map(|arc| {
            let (start, _) = arc.endpoints().expect("piece arcs are spans");
            (start.times(d), arc.length() * &d_big)
        })
        .collect();
    images.sort();
    let total: BigRational = images.iter().map(|(_, l)| l.clone()).sum();
    let tiles = (0..images.len()).all(|i| {
        let (start, len) = &images[i];
        let next = &images[(i + 1) % images.len()].0;
        images.len() == 1 || &start.ccw_to(next) >= len
    });
    if total != BigRational::one() || !tiles {
        return Err(Error::InternalInvariant(
            "angle map is not injective on a piece".into(),
        ));
    }
    Ok(())
}

/// The quadratic critical portrait `{theta/2, theta/2 + 1/2}`.
pub fn quadratic_portrait(theta_c: &Angle) -> CriticalPortrait {
    let halves = theta_c.preimages(2);
    CriticalPortrait::new(vec![halves], 2).expect("a diameter is always a valid quadratic portrait")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: i64, d: i64) -> Angle {
        Angle::frac(n, d)
    }

    fn set(items: &[(i64, i64)]) -> Vec<Angle> {
        items.iter().map(|&(n, d)| a(n, d)).collect()
    }

    fn arcs(p: &Partition, index: usize) -> Vec<String> {
        p.pieces()[index - 1]
            .arcs
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    #[test]
    fn closure_of_raw_sets() {
        let cp = hat_closure(&[set(&[(1, 14), (4, 7)])], 2).unwrap();
        assert_eq!(cp.classes(), &[set(&[(1, 14), (4, 7)])]);

        let cp = hat_closure(&[set(&[(1, 9), (4, 9)]), set(&[(5, 9), (8, 9)])], 3).unwrap();
        assert_eq!(cp.classes().len(), 2);

        let cp = hat_closure(&[set(&[(0, 1), (1, 3)]), set(&[(1, 3), (2, 3)])], 3).unwrap();
        assert_eq!(cp.classes(), &[set(&[(0, 1), (1, 3), (2, 3)])]);
    }

    #[test]
    fn condition_violations() {
        let fail = |classes: Vec<Vec<Angle>>, d| match CriticalPortrait::new(classes, d) {
            Err(Error::ConditionViolation(c)) => c,
            other => panic!("expected a violation, got {other:?}"),
        };
        assert_eq!(
            fail(vec![set(&[(1, 9), (4, 9)])], 3),
            PortraitCondition::CriticalCount
        );
        assert_eq!(
            fail(vec![set(&[(0, 1), (1, 2)]), set(&[(1, 4), (3, 4)])], 3),
            PortraitCondition::Unlinked
        );
        assert_eq!(
            fail(vec![set(&[(1, 7), (2, 7)])], 2),
            PortraitCondition::Collapse
        );
    }

    #[test]
    fn partitions() {
        let rabbit = partition(&quadratic_portrait(&a(1, 7))).unwrap();
        assert_eq!(arcs(&rabbit, 1), vec!["(1/14, 4/7)"]);
        assert_eq!(arcs(&rabbit, 2), vec!["(4/7, 1/14)"]);

        let cp =
            CriticalPortrait::new(vec![set(&[(1, 9), (4, 9)]), set(&[(5, 9), (8, 9)])], 3).unwrap();
        let p = partition(&cp).unwrap();
        assert_eq!(arcs(&p, 1), vec!["(1/9, 4/9)"]);
        assert_eq!(arcs(&p, 2), vec!["(4/9, 5/9)", "(8/9, 1/9)"]);
        assert_eq!(arcs(&p, 3), vec!["(5/9, 8/9)"]);

        let star = CriticalPortrait::new(vec![set(&[(0, 1), (1, 3), (2, 3)])], 3).unwrap();
        let p = partition(&star).unwrap();
        assert_eq!(arcs(&p, 1), vec!["(0, 1/3)"]);
        assert_eq!(arcs(&p, 2), vec!["(1/3, 2/3)"]);
        assert_eq!(arcs(&p, 3), vec!["(2/3, 0)"]);
        for piece in p.pieces() {
            assert_eq!(piece.length, BigRational::new(1.into(), 3.into()));
        }
    }

    #[test]
    fn quadratic_portraits() {
        assert_eq!(
            quadratic_portrait(&a(1, 7)).classes(),
            &[set(&[(1, 14), (4, 7)])]
        );
        assert_eq!(
            quadratic_portrait(&a(1, 3)).classes(),
            &[set(&[(1, 6), (2, 3)])]
        );
        assert_eq!(
            quadratic_portrait(&a(1, 2)).classes(),
            &[set(&[(1, 4), (3, 4)])]
        );
        assert_eq!(
            quadratic_portrait(&Angle::zero()).classes(),
            &[set(&[(0, 1), (1, 2)])]
        );
    }

    #[test]
    fn pieces_of_angles() {
        let rabbit = partition(&quadratic_portrait(&a(1, 7))).unwrap();
        assert_eq!(rabbit.piece_of(&a(1, 7)), Symbols::single(1));
        assert_eq!(rabbit.piece_of(&a(4, 7)), Symbols::from_iter([1, 2]));
        assert_eq!(rabbit.piece_of(&a(6, 7)), Symbols::single(2));
        assert_eq!(rabbit.piece_of(&Angle::zero()), Symbols::single(2));
    }

    #[test]
    fn json_round_trip() {
        let cp =
            CriticalPortrait::new(vec![set(&[(1, 9), (4, 9)]), set(&[(5, 9), (8, 9)])], 3).unwrap();
        let text = cp.to_json().unwrap();
        assert!(text.contains("\"1/9\""));
        assert_eq!(CriticalPortrait::from_json(&text).unwrap(), cp);
        assert!(CriticalPortrait::from_json(r#"{"d": 2, "classes": [["1/7", "2/7"]]}"#).is_err());
    }
}

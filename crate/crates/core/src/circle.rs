//! Exact angles on the circle `R/Z`, oriented arcs and the unlinked relation.
//!
//! Every angle is a reduced rational in `[0, 1)`. Nothing in this module
//! touches floating point except [`Angle::to_f64`], which exists for
//! rendering only.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact point of `R/Z`, stored as a reduced fraction in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

fn frac(value: &BigRational) -> BigRational {
    value - value.floor()
}

impl Angle {
    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    /// Builds `numer / denom mod 1`.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Parse {
                input: "denominator".into(),
                reason: "zero denominator".into(),
            });
        }
        Ok(Self::from_ratio(BigRational::new(numer.into(), denom)))
    }

    /// Shorthand for small literals; panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_ratio(BigRational::new(numer.into(), denom.into()))
    }

    /// Reduces any rational modulo 1.
    pub fn from_ratio(value: BigRational) -> Self {
        Angle(frac(&value))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }

    /// `d * self mod 1`.
    pub fn times(&self, d: u32) -> Angle {
        Angle::from_ratio(&self.0 * BigRational::from_integer(BigInt::from(d)))
    }

    /// Rotation by `by`.
    pub fn rotate(&self, by: &BigRational) -> Angle {
        Angle::from_ratio(&self.0 + by)
    }

    /// The `d` preimages under `t -> d t`, in increasing order.
    pub fn preimages(&self, d: u32) -> Vec<Angle> {
        let d_big = BigRational::from_integer(BigInt::from(d));
        (0..d)
            .map(|k| Angle((&self.0 + BigRational::from_integer(BigInt::from(k))) / &d_big))
            .collect()
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_to(&self, other: &Angle) -> BigRational {
        frac(&(&other.0 - &self.0))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `p/q` or a bare integer; the value is reduced modulo 1.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let text = s.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| bad("numerator is not an integer"))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| bad("denominator is not an integer"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Angle::from_ratio(BigRational::new(num, den)))
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_degree(d: u32) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidDegree(d))
    } else {
        Ok(())
    }
}

/// The angle map `t -> d t mod 1`.
pub fn sigma(theta: &Angle, d: u32) -> Result<Angle> {
    check_degree(d)?;
    Ok(theta.times(d))
}

/// Forward orbit of an angle up to its first repetition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub preperiod: usize,
    pub period: usize,
    pub points: Vec<Angle>,
}

impl Orbit {
    /// `sigma^n` of the starting angle, read off the stored orbit.
    pub fn at(&self, n: usize) -> &Angle {
        &self.points[self.index(n)]
    }

    /// Position in `points` of `sigma^n`.
    pub fn index(&self, n: usize) -> usize {
        if n < self.preperiod {
            n
        } else {
            self.preperiod + (n - self.preperiod) % self.period
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.preperiod == 0
    }

    pub fn cycle(&self) -> &[Angle] {
        &self.points[self.preperiod..]
    }
}

pub fn orbit(theta: &Angle, d: u32) -> Result<Orbit> {
    check_degree(d)?;
    let mut seen: HashMap<Angle, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut current = theta.clone();
    loop {
        if let Some(&first) = seen.get(&current) {
            let period = points.len() - first;
            return Ok(Orbit {
                preperiod: first,
                period,
                points,
            });
        }
        seen.insert(current.clone(), points.len());
        let next = current.times(d);
        points.push(current);
        current = next;
    }
}

/// An oriented arc of the circle. Spans always run counterclockwise from
/// `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arc {
    Whole,
    /// The circle with one point removed.
    Punctured(Angle),
    Span {
        start: Angle,
        end: Angle,
        start_closed: bool,
        end_closed: bool,
    },
}

impl Arc {
    pub fn open(start: Angle, end: Angle) -> Arc {
        if start == end {
            return Arc::Punctured(start);
        }
        Arc::Span {
            start,
            end,
            start_closed: false,
            end_closed: false,
        }
    }

    pub fn closed(start: Angle, end: Angle) -> Arc {
        Arc::Span {
            start,
            end,
            start_closed: true,
            end_closed: true,
        }
    }

    pub fn singleton(at: Angle) -> Arc {
        Arc::closed(at.clone(), at)
    }

    pub fn length(&self) -> BigRational {
        match self {
            Arc::Whole | Arc::Punctured(_) => BigRational::one(),
            Arc::Span { start, end, .. } => start.ccw_to(end),
        }
    }

    pub fn is_singleton(&self) -> bool {
        matches!(self, Arc::Span { start, end, .. } if start == end)
    }

    pub fn endpoints(&self) -> Option<(&Angle, &Angle)> {
        match self {
            Arc::Span { start, end, .. } => Some((start, end)),
            Arc::Punctured(p) => Some((p, p)),
            Arc::Whole => None,
        }
    }

    pub fn contains(&self, theta: &Angle) -> bool {
        match self {
            Arc::Whole => true,
            Arc::Punctured(p) => p != theta,
            Arc::Span {
                start,
                end,
                start_closed,
                end_closed,
            } => {
                if theta == start {
                    return *start_closed || (theta == end && *end_closed);
                }
                if theta == end {
                    return *end_closed;
                }
                start.ccw_to(theta) < start.ccw_to(end)
            }
        }
    }

    /// Interior membership, ignoring the endpoint flags.
    pub fn contains_interior(&self, theta: &Angle) -> bool {
        match self {
            Arc::Whole => true,
            Arc::Punctured(p) => p != theta,
            Arc::Span { start, end, .. } => {
                theta != start && theta != end && start.ccw_to(theta) < start.ccw_to(end)
            }
        }
    }

    /// Closed-set containment of `other` in `self`, treating both as closures.
    pub fn contains_closure_of(&self, other: &Arc) -> bool {
        match (self, other) {
            (Arc::Whole, _) | (Arc::Punctured(_), _) => true,
            (_, Arc::Whole) | (_, Arc::Punctured(_)) => false,
            (
                Arc::Span { start, end, .. },
                Arc::Span {
                    start: o_start,
                    end: o_end,
                    ..
                },
            ) => {
                let len = start.ccw_to(end);
                let offset = start.ccw_to(o_start);
                if start == end {
                    return o_start == start && o_end == end;
                }
                let o_len = o_start.ccw_to(o_end);
                // the start may sit exactly on our end point only for a singleton
                offset <= len && &offset + &o_len <= len
            }
        }
    }

    /// Closed sub-arcs `[start, at]` and `[at, end]`.
    pub fn split_at(&self, at: &Angle) -> Option<(Arc, Arc)> {
        match self {
            Arc::Span {
                start,
                end,
                start_closed,
                end_closed,
            } if self.contains_interior(at) => Some((
                Arc::Span {
                    start: start.clone(),
                    end: at.clone(),
                    start_closed: *start_closed,
                    end_closed: true,
                },
                Arc::Span {
                    start: at.clone(),
                    end: end.clone(),
                    start_closed: true,
                    end_closed: *end_closed,
                },
            )),
            _ => None,
        }
    }

    pub fn rotate(&self, by: &BigRational) -> Arc {
        match self {
            Arc::Whole => Arc::Whole,
            Arc::Punctured(p) => Arc::Punctured(p.rotate(by)),
            Arc::Span {
                start,
                end,
                start_closed,
                end_closed,
            } => Arc::Span {
                start: start.rotate(by),
                end: end.rotate(by),
                start_closed: *start_closed,
                end_closed: *end_closed,
            },
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arc::Whole => write!(f, "whole"),
            Arc::Punctured(p) => write!(f, "({p}, {p})"),
            Arc::Span {
                start,
                end,
                start_closed,
                end_closed,
            } => write!(
                f,
                "{}{}, {}{}",
                if *start_closed { '[' } else { '(' },
                start,
                end,
                if *end_closed { ']' } else { ')' }
            ),
        }
    }
}

impl FromStr for Arc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text == "whole" {
            return Ok(Arc::Whole);
        }
        let bad = || Error::Parse {
            input: s.to_string(),
            reason: "expected an arc like \"[p/q, r/s)\"".into(),
        };
        let start_closed = match text.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let end_closed = match text.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let inner = &text[1..text.len() - 1];
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let (start, end): (Angle, Angle) = (a.parse()?, b.parse()?);
        if start == end && !(start_closed && end_closed) {
            return Ok(Arc::Punctured(start));
        }
        Ok(Arc::Span {
            start,
            end,
            start_closed,
            end_closed,
        })
    }
}

impl Serialize for Arc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Sorts angles increasingly and drops duplicates.
pub fn sorted_unique(angles: impl IntoIterator<Item = Angle>) -> Vec<Angle> {
    let mut out: Vec<Angle> = angles.into_iter().collect();
    out.sort();
    out.dedup();
    out
}

/// True iff `a` and `b` lie in two disjoint arcs of the circle.
pub fn unlinked(a: &[Angle], b: &[Angle]) -> Result<bool> {
    let mut labelled: Vec<(&Angle, bool)> = a.iter().map(|t| (t, false)).collect();
    labelled.extend(b.iter().map(|t| (t, true)));
    labelled.sort();
    for pair in labelled.windows(2) {
        if pair[0].0 == pair[1].0 && pair[0].1 != pair[1].1 {
            return Err(Error::Overlapping(pair[0].0.clone()));
        }
    }
    let changes = (0..labelled.len())
        .filter(|&i| labelled[i].1 != labelled[(i + 1) % labelled.len()].1)
        .count();
    Ok(changes <= 2)
}

/// Finds two classes that are linked, if any, in linear time.
///
/// `classes` must be pairwise disjoint. Walks the circle once and keeps the
/// open classes on a stack; a class may only be revisited while it sits on
/// top.
pub fn first_linked_pair(classes: &[Vec<Angle>]) -> Option<(usize, usize)> {
    let mut points: Vec<(&Angle, usize)> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |t| (t, i)))
        .collect();
    points.sort();
    let mut remaining: Vec<usize> = classes.iter().map(Vec::len).collect();
    let mut opened = vec![false; classes.len()];
    let mut stack: Vec<usize> = Vec::new();
    for (_, label) in points {
        while let Some(&top) = stack.last() {
            if remaining[top] == 0 {
                stack.pop();
            } else {
                break;
            }
        }
        if opened[label] {
            match stack.last() {
                Some(&top) if top == label => {}
                Some(&top) => return Some((label.min(top), label.max(top))),
                None => unreachable!("an opened class with remaining points stays on the stack"),
            }
        } else {
            opened[label] = true;
            stack.push(label);
        }
        remaining[label] -= 1;
    }
    None
}

fn pow_u128(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // operands stay below 2^100, so the product of a small factor fits
    (a % m) * b % m
}

/// Every angle whose orbit under `t -> d t` has period at most `max_period`
/// and preperiod at most `max_preperiod`, sorted increasingly.
pub fn angles_with_orbit_bounds(
    d: u32,
    max_period: usize,
    max_preperiod: usize,
) -> Result<Vec<Angle>> {
    check_degree(d)?;
    if max_period == 0 {
        return Err(Error::Config("max_period must be at least 1".into()));
    }
    let base = d as u128;
    let mut out = Vec::new();
    for period in 1..=max_period {
        let cycle_den = pow_u128(base, period)
            .and_then(|p| p.checked_sub(1))
            .filter(|&v| v < (1u128 << 100))
            .ok_or_else(|| Error::Config(format!("period {period} is too large to enumerate")))?;
        let proper_divisors: Vec<usize> = (1..period).filter(|m| period % m == 0).collect();
        for preperiod in 0..=max_preperiod {
            let den = pow_u128(base, preperiod)
                .and_then(|p| p.checked_mul(cycle_den))
                .filter(|&v| v < (1u128 << 100))
                .ok_or_else(|| Error::Config("enumeration bounds are too large".into()))?;
            let shift = pow_u128(base, preperiod).unwrap_or(1);
            for k in 0..den {
                let landed = mul_mod(k, shift, den);
                let is_fixed_by = |x: u128, m: usize| {
                    let mut y = x;
                    for _ in 0..m {
                        y = mul_mod(y, base, den);
                    }
                    y == x
                };
                if proper_divisors.iter().any(|&m| is_fixed_by(landed, m)) {
                    continue;
                }
                if preperiod > 0 {
                    let before = mul_mod(k, shift / base, den);
                    if is_fixed_by(before, period) {
                        continue;
                    }
                }
                out.push(Angle::from_ratio(BigRational::new(
                    BigInt::from(k),
                    BigInt::from(den),
                )));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Least common multiple of two periods.
pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: i64, d: i64) -> Angle {
        Angle::frac(n, d)
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&a(1, 7), 2).unwrap(), a(2, 7));
        assert_eq!(sigma(&a(1, 2), 2).unwrap(), Angle::zero());
        assert_eq!(sigma(&a(5, 8), 3).unwrap(), a(7, 8));
        assert!(matches!(sigma(&a(1, 3), 1), Err(Error::InvalidDegree(1))));
    }

    #[test]
    fn orbit_examples() {
        let o = orbit(&a(1, 7), 2).unwrap();
        assert_eq!((o.preperiod, o.period), (0, 3));
        assert_eq!(o.points, vec![a(1, 7), a(2, 7), a(4, 7)]);

        let o = orbit(&a(1, 2), 2).unwrap();
        assert_eq!((o.preperiod, o.period), (1, 1));
        assert_eq!(o.points, vec![a(1, 2), Angle::zero()]);

        let o = orbit(&a(1, 12), 2).unwrap();
        assert_eq!((o.preperiod, o.period), (2, 2));
        assert_eq!(o.points, vec![a(1, 12), a(1, 6), a(1, 3), a(2, 3)]);
        assert_eq!(o.at(7), &a(2, 3));
    }

    #[test]
    fn unlinked_examples() {
        assert!(!unlinked(&[Angle::zero(), a(1, 2)], &[a(1, 4), a(3, 4)]).unwrap());
        assert!(unlinked(&[a(1, 7), a(2, 7)], &[a(4, 7), a(5, 7)]).unwrap());
        assert!(unlinked(&[a(1, 14), a(4, 7)], &[a(1, 7), a(2, 7)]).unwrap());
        assert!(matches!(
            unlinked(&[a(1, 7)], &[a(1, 7), a(2, 7)]),
            Err(Error::Overlapping(_))
        ));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("3/14".parse::<Angle>().unwrap(), a(3, 14));
        assert_eq!("17/14".parse::<Angle>().unwrap(), a(3, 14));
        assert_eq!("0".parse::<Angle>().unwrap().to_string(), "0");
        assert!("1/0".parse::<Angle>().is_err());
        assert!("x".parse::<Angle>().is_err());

        let arc: Arc = "[1/7, 2/7)".parse().unwrap();
        assert_eq!(arc.to_string(), "[1/7, 2/7)");
        assert!(arc.contains(&a(1, 7)));
        assert!(!arc.contains(&a(2, 7)));
        assert_eq!(arc.length(), BigRational::new(1.into(), 7.into()));
        assert_eq!(
            "(4/7, 1/14)".parse::<Arc>().unwrap().length(),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn arc_membership_wraps() {
        let arc = Arc::open(a(4, 7), a(1, 14));
        assert!(arc.contains(&Angle::zero()));
        assert!(arc.contains(&a(6, 7)));
        assert!(!arc.contains(&a(1, 7)));
        assert!(!arc.contains(&a(4, 7)));
        let point = Arc::singleton(a(1, 2));
        assert!(point.contains(&a(1, 2)));
        assert!(!point.contains(&a(1, 3)));
        assert_eq!(point.length(), BigRational::zero());
    }

    #[test]
    fn closure_containment() {
        let big = Arc::closed(a(1, 3), a(2, 3));
        assert!(big.contains_closure_of(&Arc::closed(a(3, 7), a(4, 7))));
        assert!(big.contains_closure_of(&Arc::singleton(a(1, 2))));
        assert!(big.contains_closure_of(&big));
        assert!(!big.contains_closure_of(&Arc::closed(a(1, 7), a(2, 7))));
        assert!(!Arc::closed(a(3, 7), a(4, 7)).contains_closure_of(&big));
        let wrapping = Arc::closed(a(5, 6), a(1, 6));
        assert!(wrapping.contains_closure_of(&Arc::closed(a(11, 12), a(1, 12))));
        assert!(!wrapping.contains_closure_of(&Arc::closed(a(1, 12), a(11, 12))));
    }

    #[test]
    fn enumeration_by_orbit_type() {
        let found = angles_with_orbit_bounds(2, 3, 1).unwrap();
        let expected: Vec<Angle> = {
            let mut v = Vec::new();
            for den in [1i64, 3, 7, 2, 6, 14] {
                for k in 0..den {
                    let t = a(k, den);
                    let o = orbit(&t, 2).unwrap();
                    if o.period <= 3 && o.preperiod <= 1 {
                        v.push(t);
                    }
                }
            }
            sorted_unique(v)
        };
        assert_eq!(found, expected);
        assert_eq!(
            angles_with_orbit_bounds(3, 1, 0).unwrap(),
            vec![Angle::zero(), a(1, 2)]
        );
    }

    #[test]
    fn linked_pair_detection() {
        let rabbit = vec![
            vec![a(1, 7), a(2, 7), a(4, 7)],
            vec![a(1, 14), a(9, 14), a(11, 14)],
        ];
        assert_eq!(first_linked_pair(&rabbit), None);
        let crossing = vec![
            vec![Angle::zero(), a(1, 2)],
            vec![a(1, 4), a(3, 4)],
            vec![a(1, 8)],
        ];
        assert_eq!(first_linked_pair(&crossing), Some((0, 1)));
    }
}

//! Quadratic landing model: the partition cut by the critical diameter of a
//! parameter angle, with a rule for the two boundary angles.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Itinerary, Symbols};
use crate::circle::{orbit, sorted_unique, Angle};
use crate::error::{Error, Result};

/// How the critical angles `theta_c/2` and `theta_c/2 + 1/2` are labelled.
///
/// Piece 1 is the open half circle `(theta_c/2, theta_c/2 + 1/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryRule {
    /// Both angles carry `{1,2}`.
    Closure,
    /// Each boundary angle joins the piece that ends at it.
    Below,
    /// Each boundary angle joins the piece that starts at it.
    Above,
}

impl fmt::Display for BoundaryRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BoundaryRule::Closure => "closure",
            BoundaryRule::Below => "below",
            BoundaryRule::Above => "above",
        };
        f.write_str(name)
    }
}

impl FromStr for BoundaryRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closure" => Ok(BoundaryRule::Closure),
            "below" => Ok(BoundaryRule::Below),
            "above" => Ok(BoundaryRule::Above),
            _ => Err(Error::Parse {
                input: s.into(),
                reason: "expected closure, below or above".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LandingModel {
    theta_c: Angle,
    rule: BoundaryRule,
    low: Angle,
    high: Angle,
}

/// `y -> y / 2^k + offset` on the closed interval `[lo, hi]`.
#[derive(Clone, Debug)]
struct Branch {
    lo: BigRational,
    hi: BigRational,
    scale: u32,
    offset: BigRational,
}

impl Branch {
    fn eval(&self, y: &BigRational) -> BigRational {
        y / pow2(self.scale) + &self.offset
    }
}

fn pow2(k: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << k)
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

impl LandingModel {
    /// Chooses the rule under which rays land together.
    ///
    /// Preperiodic parameters use [`BoundaryRule::Closure`]: their critical
    /// angles are strictly preperiodic, so a boundary symbol appears at most
    /// once per orbit. Periodic parameters use whichever one-sided rule gives
    /// `theta_c` a nontrivial class; exactly one does unless `theta_c = 0`.
    pub fn new(theta_c: &Angle) -> Self {
        let o = orbit(theta_c, 2).expect("degree 2 is valid");
        if !o.is_periodic() {
            return LandingModel::with_rule(theta_c, BoundaryRule::Closure);
        }
        let below = LandingModel::with_rule(theta_c, BoundaryRule::Below);
        if below.same_type_class(theta_c).len() > 1 {
            return below;
        }
        let above = LandingModel::with_rule(theta_c, BoundaryRule::Above);
        if above.same_type_class(theta_c).len() > 1 {
            return above;
        }
        below
    }

    pub fn with_rule(theta_c: &Angle, rule: BoundaryRule) -> Self {
        let [low, high]: [Angle; 2] = theta_c.preimages(2).try_into().expect("two preimages");
        LandingModel {
            theta_c: theta_c.clone(),
            rule,
            low,
            high,
        }
    }

    pub fn theta_c(&self) -> &Angle {
        &self.theta_c
    }

    pub fn rule(&self) -> BoundaryRule {
        self.rule
    }

    /// `theta_c/2` and `theta_c/2 + 1/2`.
    pub fn critical_angles(&self) -> [Angle; 2] {
        [self.low.clone(), self.high.clone()]
    }

    pub fn symbol(&self, x: &Angle) -> Symbols {
        let (one, two) = (Symbols::single(1), Symbols::single(2));
        let on_boundary = |ends_piece_one: bool| match self.rule {
            BoundaryRule::Closure => one.union(two),
            BoundaryRule::Below if ends_piece_one => one,
            BoundaryRule::Below => two,
            BoundaryRule::Above if ends_piece_one => two,
            BoundaryRule::Above => one,
        };
        if *x == self.low {
            on_boundary(false)
        } else if *x == self.high {
            on_boundary(true)
        } else if self.low < *x && *x < self.high {
            one
        } else {
            two
        }
    }

    pub fn itinerary(&self, x: &Angle) -> Itinerary {
        let o = orbit(x, 2).expect("degree 2 is valid");
        Itinerary::from_orbit(&o, |t| self.symbol(t))
    }

    pub fn equivalent(&self, x: &Angle, y: &Angle) -> bool {
        self.itinerary(x).compatible(&self.itinerary(y))
    }

    /// Preimages of `y` whose symbol contains `s`.
    fn pull_backs(&self, s: usize, y: &Angle) -> Vec<Angle> {
        y.preimages(2)
            .into_iter()
            .filter(|h| self.symbol(h).contains(s))
            .collect()
    }

    /// Every angle of period `cycle.len()` (not necessarily exact) whose
    /// itinerary repeats `cycle`, plus spurious candidates at branch ends.
    fn cycle_candidates(&self, cycle: &[usize]) -> Vec<Angle> {
        let theta = self.theta_c.value();
        let mut branches = vec![Branch {
            lo: BigRational::zero(),
            hi: BigRational::one(),
            scale: 0,
            offset: BigRational::zero(),
        }];
        for &s in cycle.iter().rev() {
            let mut next = Vec::with_capacity(branches.len() + 1);
            for b in branches {
                let cut = (theta - &b.offset) * pow2(b.scale);
                let pieces = if b.lo < cut && cut < b.hi {
                    vec![(b.lo.clone(), cut.clone()), (cut, b.hi.clone())]
                } else {
                    vec![(b.lo.clone(), b.hi.clone())]
                };
                for (lo, hi) in pieces {
                    let mid = b.eval(&((&lo + &hi) * half()));
                    // v/2 lies in piece 1 exactly when v > theta_c
                    let upper = &mid > theta;
                    let shift = if upper == (s == 1) {
                        BigRational::zero()
                    } else {
                        half()
                    };
                    next.push(Branch {
                        lo,
                        hi,
                        scale: b.scale + 1,
                        offset: &b.offset * half() + shift,
                    });
                }
            }
            branches = next;
        }
        let m = cycle.len() as u32;
        let fixed_scale = pow2(m) / (pow2(m) - BigRational::one());
        let candidates = branches.iter().filter_map(|b| {
            let y = &b.offset * &fixed_scale;
            (b.lo <= y && y <= b.hi).then(|| Angle::from_ratio(y))
        });
        sorted_unique(candidates)
    }

    /// Angles with the same preperiod, period and itinerary as `x`.
    ///
    /// Solves for the cycle by composing inverse branches, then pulls back
    /// along the prefix. Every candidate is checked exactly.
    pub fn same_type_class(&self, x: &Angle) -> Vec<Angle> {
        let o = orbit(x, 2).expect("degree 2 is valid");
        let target = self.itinerary(x);
        let choices = |n: usize| target.at(n).iter().collect::<Vec<_>>();
        let mut cycles: Vec<Vec<usize>> = vec![Vec::new()];
        for j in 0..o.period {
            cycles = cycles
                .into_iter()
                .flat_map(|c| {
                    choices(o.preperiod + j).into_iter().map(move |s| {
                        let mut next = c.clone();
                        next.push(s);
                        next
                    })
                })
                .collect();
        }
        let mut found: Vec<Angle> = cycles
            .iter()
            .flat_map(|c| self.cycle_candidates(c))
            .collect();
        for j in (0..o.preperiod).rev() {
            found = sorted_unique(
                found
                    .iter()
                    .flat_map(|z| {
                        choices(j)
                            .into_iter()
                            .flat_map(move |s| self.pull_backs(s, z))
                    })
                    .collect::<Vec<_>>(),
            );
        }
        let found = found.into_iter().filter(|z| {
            let oz = orbit(z, 2).expect("degree 2 is valid");
            oz.preperiod == o.preperiod
                && oz.period == o.period
                && self.itinerary(z).compatible(&target)
        });
        sorted_unique(found)
    }
}

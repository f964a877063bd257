//! Characteristic arcs of quadratic parameters and the order they induce.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::circle::{orbit, Angle, Arc};
use crate::entropy::{acc_angles, core_entropy, AccSet};
use crate::error::{Error, Result};
use crate::itinerary::LandingModel;
use crate::portrait::ser_ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcKind {
    /// Periodic angle; the arc is cut by the class of `theta_c`.
    Hyperbolic,
    /// Periodic angle landing alone, which among rationals means `theta_c = 0`.
    HyperbolicWhole,
    /// Strictly preperiodic angle with several rays at the critical value.
    Misiurewicz,
    /// Strictly preperiodic angle landing alone.
    MisiurewiczSingleton,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicArc {
    pub theta_c: Angle,
    pub kind: ArcKind,
    pub arc: Arc,
    /// Rays landing with `theta_c`.
    pub class: Vec<Angle>,
}

impl CharacteristicArc {
    pub fn is_whole(&self) -> bool {
        matches!(self.arc, Arc::Whole)
    }

    pub fn is_singleton(&self) -> bool {
        self.arc.is_singleton()
    }

    pub fn length(&self) -> BigRational {
        self.arc.length()
    }

    /// `(eta, xi)`, the endpoints in counterclockwise order.
    pub fn endpoints(&self) -> Option<(&Angle, &Angle)> {
        match self.arc {
            Arc::Whole => None,
            _ => self.arc.endpoints(),
        }
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

pub fn characteristic_arc(theta_c: &Angle) -> CharacteristicArc {
    let model = LandingModel::new(theta_c);
    let class = model.same_type_class(theta_c);
    let periodic = orbit(theta_c, 2).expect("degree 2 is valid").is_periodic();
    let (kind, arc) = match (periodic, class.len()) {
        (true, 1) => (ArcKind::HyperbolicWhole, Arc::Whole),
        (false, 1) => (
            ArcKind::MisiurewiczSingleton,
            Arc::singleton(theta_c.clone()),
        ),
        (true, n) => {
            let i = class
                .binary_search(theta_c)
                .expect("class contains theta_c");
            let (next, prev) = (&class[(i + 1) % n], &class[(i + n - 1) % n]);
            if theta_c.ccw_to(next) < prev.ccw_to(theta_c) {
                (
                    ArcKind::Hyperbolic,
                    Arc::closed(theta_c.clone(), next.clone()),
                )
            } else {
                (
                    ArcKind::Hyperbolic,
                    Arc::closed(prev.clone(), theta_c.clone()),
                )
            }
        }
        (false, n) => {
            // the gap holding the critical rays is the complement of I_c
            let [critical, _] = model.critical_angles();
            let after = class.partition_point(|t| t < &critical) % n;
            let before = (after + n - 1) % n;
            (
                ArcKind::Misiurewicz,
                Arc::closed(class[after].clone(), class[before].clone()),
            )
        }
    };
    CharacteristicArc {
        theta_c: theta_c.clone(),
        kind,
        arc,
        class,
    }
}

/// `I_a` contains `I_b` as closed sets. The whole circle contains everything.
pub fn precedes(a: &Angle, b: &Angle) -> bool {
    characteristic_arc(a)
        .arc
        .contains_closure_of(&characteristic_arc(b).arc)
}

/// The two preimage arcs `I'` and `I'' = I' + 1/2`, each half as long.
pub fn preimage_arcs(i: &CharacteristicArc) -> Result<(Arc, Arc)> {
    let (eta, _) = i.endpoints().ok_or(Error::FullCircle)?;
    let start = Angle::from_ratio(eta.value() * half());
    let end = start.rotate(&(i.length() * half()));
    let first = Arc::closed(start, end);
    let second = first.rotate(&half());
    if first.length() * BigRational::from_integer(2.into()) != i.length()
        || second.length() != first.length()
    {
        return Err(Error::InternalInvariant(
            "preimage arcs do not halve".into(),
        ));
    }
    Ok((first, second))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub left: Angle,
    pub right: Angle,
    pub equivalent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicAudit {
    pub theta_c: Angle,
    pub kind: ArcKind,
    pub arc: Arc,
    #[serde(serialize_with = "ser_ratio")]
    pub length: BigRational,
    /// `|I_c| < 1/2`, checked for periodic parameters only.
    pub shorter_than_half: Option<bool>,
    pub halves_exact: bool,
    pub preimages: (Arc, Arc),
    /// Periodic: `(eta', xi'')` and `(eta'', xi')`. Preperiodic: each
    /// preimage endpoint against the critical angle.
    pub pairs: Vec<PairCheck>,
}

impl CharacteristicAudit {
    pub fn pass(&self) -> bool {
        self.shorter_than_half != Some(false)
            && self.halves_exact
            && self.pairs.iter().all(|p| p.equivalent)
    }
}

pub fn audit_characteristic_arc(theta_c: &Angle) -> Result<CharacteristicAudit> {
    let ch = characteristic_arc(theta_c);
    let (first, second) = preimage_arcs(&ch)?;
    let model = LandingModel::new(theta_c);
    let (eta1, xi1) = first.endpoints().expect("spans have endpoints");
    let (eta2, xi2) = second.endpoints().expect("spans have endpoints");
    let check = |l: &Angle, r: &Angle| PairCheck {
        left: l.clone(),
        right: r.clone(),
        equivalent: model.equivalent(l, r),
    };
    let periodic = matches!(ch.kind, ArcKind::Hyperbolic);
    let pairs = if periodic {
        vec![check(eta1, xi2), check(eta2, xi1)]
    } else {
        let [critical, _] = model.critical_angles();
        [eta1, xi1, eta2, xi2]
            .iter()
            .map(|t| check(&critical, t))
            .collect()
    };
    let halves_exact = first.length() + second.length() == ch.length();
    Ok(CharacteristicAudit {
        theta_c: theta_c.clone(),
        kind: ch.kind,
        length: ch.length(),
        shorter_than_half: periodic.then(|| ch.length() < half()),
        arc: ch.arc,
        halves_exact,
        preimages: (first.clone(), second.clone()),
        pairs,
    })
}

/// Least `N <= max_iter` after which the orbit of `theta` stays out of the
/// open arcs `I'` and `I''`.
pub fn escape_time(theta: &Angle, theta_c: &Angle, max_iter: usize) -> Result<usize> {
    let ch = characteristic_arc(theta_c);
    if ch.is_whole() {
        return Err(Error::Degenerate(
            "characteristic arc is the whole circle".into(),
        ));
    }
    if ch.is_singleton() {
        return Err(Error::Degenerate(
            "characteristic arc is a single angle".into(),
        ));
    }
    let (first, second) = preimage_arcs(&ch)?;
    let inside = |t: &Angle| first.contains_interior(t) || second.contains_interior(t);
    let o = orbit(theta, 2)?;
    if o.cycle().iter().any(inside) {
        return Err(Error::NotFound { len: max_iter });
    }
    let n = o.points[..o.preperiod]
        .iter()
        .rposition(inside)
        .map_or(0, |i| i + 1);
    if n > max_iter {
        return Err(Error::NotFound { len: max_iter });
    }
    Ok(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub from: Angle,
    pub to: Angle,
    pub max_period: usize,
    pub acc_from: usize,
    pub acc_to: usize,
    /// Biaccessible for `from` but not for `to`.
    pub missing: Vec<Angle>,
    pub entropy_from: f64,
    pub entropy_to: f64,
    pub tol: f64,
}

impl MonotonicityReport {
    pub fn pass(&self) -> bool {
        self.missing.is_empty() && self.entropy_from <= self.entropy_to + self.tol
    }
}

/// Compares precomputed biaccessible sets and entropies of a precedes-pair.
pub fn monotonicity_from_parts(
    acc_from: &AccSet,
    acc_to: &AccSet,
    entropy_from: f64,
    entropy_to: f64,
    tol: f64,
) -> MonotonicityReport {
    MonotonicityReport {
        from: acc_from.theta_c.clone(),
        to: acc_to.theta_c.clone(),
        max_period: acc_from.bound.min(acc_to.bound),
        acc_from: acc_from.len(),
        acc_to: acc_to.len(),
        missing: acc_from
            .angles
            .iter()
            .filter(|t| !acc_to.contains(t))
            .cloned()
            .collect(),
        entropy_from,
        entropy_to,
        tol,
    }
}

pub fn monotonicity_check(
    a: &Angle,
    b: &Angle,
    max_period: usize,
    tol: f64,
) -> Result<MonotonicityReport> {
    if !precedes(a, b) {
        return Err(Error::PrecedenceFails {
            from: a.clone(),
            to: b.clone(),
        });
    }
    Ok(monotonicity_from_parts(
        &acc_angles(a, max_period)?,
        &acc_angles(b, max_period)?,
        core_entropy(a, tol)?,
        core_entropy(b, tol)?,
        tol,
    ))
}

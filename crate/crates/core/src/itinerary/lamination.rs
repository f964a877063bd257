//! Landing classes of all angles up to an orbit bound.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{ItineraryKey, LandingModel};
use crate::circle::{angles_with_orbit_bounds, first_linked_pair, orbit, sorted_unique, Angle};
use crate::error::{Error, Result};
use crate::itinerary::BoundaryRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LaminationBounds {
    pub max_period: usize,
    pub max_preperiod: usize,
}

/// Classes of angles whose rays land together, for a quadratic parameter.
#[derive(Clone, Debug, Serialize)]
pub struct Lamination {
    theta_c: Angle,
    rule: BoundaryRule,
    bounds: LaminationBounds,
    classes: Vec<Vec<Angle>>,
    #[serde(skip)]
    index: HashMap<Angle, usize>,
}

impl Lamination {
    /// Wraps precomputed classes; each class is sorted and classes are
    /// ordered by their smallest angle.
    pub fn from_classes(
        theta_c: Angle,
        rule: BoundaryRule,
        bounds: LaminationBounds,
        classes: Vec<Vec<Angle>>,
    ) -> Self {
        let mut classes: Vec<Vec<Angle>> = classes.into_iter().map(sorted_unique).collect();
        classes.sort();
        let index = classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |t| (t.clone(), i)))
            .collect();
        Lamination {
            theta_c,
            rule,
            bounds,
            classes,
            index,
        }
    }

    pub fn theta_c(&self) -> &Angle {
        &self.theta_c
    }

    pub fn rule(&self) -> BoundaryRule {
        self.rule
    }

    pub fn bounds(&self) -> LaminationBounds {
        self.bounds
    }

    pub fn classes(&self) -> &[Vec<Angle>] {
        &self.classes
    }

    pub fn class_of(&self, theta: &Angle) -> Option<&[Angle]> {
        self.index.get(theta).map(|&i| self.classes[i].as_slice())
    }

    pub fn angle_count(&self) -> usize {
        self.index.len()
    }

    /// Classes with at least two angles.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<Angle>> {
        self.classes.iter().filter(|c| c.len() >= 2)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Classes are pairwise unlinked and the doubling map sends each class
    /// into a single class.
    pub fn verify(&self) -> Result<()> {
        let big: Vec<Vec<Angle>> = self.nontrivial().cloned().collect();
        if let Some((i, j)) = first_linked_pair(&big) {
            return Err(Error::InvariantViolation(
                big[i][0].clone(),
                big[j][0].clone(),
                "classes are linked".into(),
            ));
        }
        for class in &big {
            let first = class[0].times(2);
            let target = self.index.get(&first);
            for t in &class[1..] {
                let image = t.times(2);
                if self.index.get(&image) != target {
                    return Err(Error::InvariantViolation(
                        class[0].clone(),
                        t.clone(),
                        "images fall in different classes".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Every angle with period at most `max_period` and preperiod at most
/// `max_preperiod`, together with the orbit of `theta_c` and the two
/// critical angles, grouped into landing classes.
pub fn lamination(theta_c: &Angle, max_period: usize, max_preperiod: usize) -> Result<Lamination> {
    lamination_with_model(&LandingModel::new(theta_c), max_period, max_preperiod)
}

pub fn lamination_with_model(
    model: &LandingModel,
    max_period: usize,
    max_preperiod: usize,
) -> Result<Lamination> {
    if max_period == 0 {
        return Err(Error::Config("max_period must be at least 1".into()));
    }
    let theta_c = model.theta_c();
    let mut angles = angles_with_orbit_bounds(2, max_period, max_preperiod)?;
    angles.extend(orbit(theta_c, 2)?.points);
    angles.extend(model.critical_angles());
    let angles = sorted_unique(angles);

    let keys: Vec<Option<Vec<ItineraryKey>>> = angles
        .par_iter()
        .map(|t| model.itinerary(t).expansions())
        .collect();

    let mut parent: Vec<usize> = (0..angles.len()).collect();
    let mut first_with: HashMap<&ItineraryKey, usize> = HashMap::new();
    let mut loose = Vec::new();
    for (i, expansions) in keys.iter().enumerate() {
        match expansions {
            Some(list) => {
                for key in list {
                    match first_with.get(key) {
                        Some(&j) => union(&mut parent, i, j),
                        None => {
                            first_with.insert(key, i);
                        }
                    }
                }
            }
            None => loose.push(i),
        }
    }
    if !loose.is_empty() {
        // multi-valued symbols recur; compare these angles pairwise
        let itineraries: Vec<_> = angles.par_iter().map(|t| model.itinerary(t)).collect();
        for &i in &loose {
            for j in 0..angles.len() {
                if i != j && itineraries[i].compatible(&itineraries[j]) {
                    union(&mut parent, i, j);
                }
            }
        }
    }

    let mut grouped: BTreeMap<usize, Vec<Angle>> = BTreeMap::new();
    for (i, t) in angles.iter().enumerate() {
        grouped
            .entry(find(&mut parent, i))
            .or_default()
            .push(t.clone());
    }
    let lam = Lamination::from_classes(
        theta_c.clone(),
        model.rule(),
        LaminationBounds {
            max_period,
            max_preperiod,
        },
        grouped.into_values().collect(),
    );
    lam.verify()?;
    Ok(lam)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], i: usize, j: usize) {
    let (ri, rj) = (find(parent, i), find(parent, j));
    if ri != rj {
        parent[ri.max(rj)] = ri.min(rj);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchedClass {
    pub angles: Vec<Angle>,
    pub preperiod: usize,
    pub period: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValenceHistogram {
    /// Class size to number of classes.
    pub counts: BTreeMap<usize, usize>,
    /// Classes of size at least three.
    pub branched: Vec<BranchedClass>,
}

pub fn valence_histogram(l: &Lamination) -> ValenceHistogram {
    let mut out = ValenceHistogram::default();
    for class in l.classes() {
        *out.counts.entry(class.len()).or_default() += 1;
        if class.len() >= 3 {
            let o = orbit(&class[0], 2).expect("degree 2 is valid");
            out.branched.push(BranchedClass {
                angles: class.clone(),
                preperiod: o.preperiod,
                period: o.period,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::unlinked;

    fn a(n: i64, d: i64) -> Angle {
        Angle::frac(n, d)
    }

    fn set(items: &[(i64, i64)]) -> Vec<Angle> {
        items.iter().map(|&(n, d)| a(n, d)).collect()
    }

    #[test]
    fn rabbit_classes() {
        let lam = lamination(&a(1, 7), 3, 1).unwrap();
        assert_eq!(
            lam.class_of(&a(2, 7)).unwrap(),
            set(&[(1, 7), (2, 7), (4, 7)]).as_slice()
        );
        assert_eq!(
            lam.class_of(&a(9, 14)).unwrap(),
            set(&[(1, 14), (9, 14), (11, 14)]).as_slice()
        );
        for t in set(&[(3, 7), (5, 7), (6, 7)]) {
            assert_eq!(lam.class_of(&t).unwrap().len(), 1);
        }
    }

    #[test]
    fn basilica_and_tip() {
        let lam = lamination(&a(1, 3), 2, 0).unwrap();
        assert_eq!(
            lam.class_of(&a(1, 3)).unwrap(),
            set(&[(1, 3), (2, 3)]).as_slice()
        );
        assert_eq!(lam.class_of(&Angle::zero()).unwrap(), &[Angle::zero()]);

        let lam = lamination(&a(1, 2), 1, 1).unwrap();
        assert_eq!(lam.class_of(&a(1, 2)).unwrap(), &[a(1, 2)]);
        assert_eq!(lam.class_of(&Angle::zero()).unwrap(), &[Angle::zero()]);
        assert_eq!(
            lam.class_of(&a(1, 4)).unwrap(),
            set(&[(1, 4), (3, 4)]).as_slice()
        );
    }

    #[test]
    fn histograms() {
        let rabbit = valence_histogram(&lamination(&a(1, 7), 3, 1).unwrap());
        assert!(rabbit.counts[&3] >= 2);
        assert!(rabbit
            .branched
            .iter()
            .any(|b| b.period == 3 && b.preperiod == 0));

        let basilica = valence_histogram(&lamination(&a(1, 3), 2, 0).unwrap());
        assert!(basilica.counts.keys().all(|&v| v < 3));
        assert!(basilica.branched.is_empty());

        let bounds = LaminationBounds {
            max_period: 1,
            max_preperiod: 0,
        };
        let empty = Lamination::from_classes(a(1, 3), BoundaryRule::Below, bounds, Vec::new());
        assert!(valence_histogram(&empty).counts.is_empty());
    }

    #[test]
    fn stack_check_agrees_with_pairwise_check() {
        for theta in [a(1, 7), a(3, 7), a(1, 2), a(1, 5), a(11, 56)] {
            let lam = lamination(&theta, 5, 2).unwrap();
            let big: Vec<_> = lam.nontrivial().collect();
            for i in 0..big.len() {
                for j in i + 1..big.len() {
                    assert!(
                        unlinked(big[i], big[j]).unwrap(),
                        "{theta}: {:?} {:?}",
                        big[i],
                        big[j]
                    );
                }
            }
        }
    }

    #[test]
    fn linked_classes_are_reported() {
        let bounds = LaminationBounds {
            max_period: 2,
            max_preperiod: 2,
        };
        let bad = Lamination::from_classes(
            a(1, 2),
            BoundaryRule::Closure,
            bounds,
            vec![set(&[(0, 1), (1, 2)]), set(&[(1, 4), (3, 4)])],
        );
        assert!(matches!(
            bad.verify(),
            Err(Error::InvariantViolation(_, _, _))
        ));
    }
}

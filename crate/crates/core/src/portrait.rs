//! Portraits, sectors and the sector map.
//!
//! A portrait is a finite set of angles whose rays land at one point. Its
//! sectors are the complementary arcs, ranked by annular size.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::circle::{check_degree, Angle, Arc};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Portrait {
    angles: Vec<Angle>,
}

impl Portrait {
    pub fn new(angles: impl IntoIterator<Item = Angle>) -> Result<Self> {
        let mut angles: Vec<Angle> = angles.into_iter().collect();
        angles.sort();
        if let Some(pair) = angles.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Overlapping(pair[0].clone()));
        }
        if angles.len() < 2 {
            return Err(Error::PortraitTooSmall);
        }
        Ok(Portrait { angles })
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn valence(&self) -> usize {
        self.angles.len()
    }

    /// Valence at least three. Two-angle portraits are accepted but are not
    /// branch points.
    pub fn is_branched(&self) -> bool {
        self.valence() >= 3
    }

    /// `S_rank(T)` with ranks counted from 1.
    pub fn sector(&self, rank: usize) -> Result<Sector> {
        let all = sectors(self);
        if rank == 0 || rank > all.len() {
            return Err(Error::InvalidRank {
                rank,
                max: all.len(),
            });
        }
        Ok(all[rank - 1].clone())
    }

    fn has_sector(&self, sector: &Sector) -> bool {
        let n = self.angles.len();
        (0..n).any(|i| self.angles[i] == sector.start && self.angles[(i + 1) % n] == sector.end)
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.angles.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A complementary arc of a portrait, from `start` counterclockwise to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Sector {
    pub start: Angle,
    pub end: Angle,
    #[serde(serialize_with = "ser_ratio")]
    pub size: BigRational,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(
    value: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    if value.is_integer() {
        s.collect_str(value.numer())
    } else {
        s.collect_str(&format_args!("{}/{}", value.numer(), value.denom()))
    }
}

impl Sector {
    fn between(start: &Angle, end: &Angle) -> Sector {
        let size = if start == end {
            BigRational::one()
        } else {
            start.ccw_to(end)
        };
        Sector {
            start: start.clone(),
            end: end.clone(),
            size,
        }
    }

    /// The open arc `I(S)`.
    pub fn arc(&self) -> Arc {
        Arc::open(self.start.clone(), self.end.clone())
    }

    /// Interiors do not meet.
    pub fn is_disjoint_from(&self, other: &Sector) -> bool {
        self.start.ccw_to(&other.start) >= self.size
            && other.start.ccw_to(&self.start) >= other.size
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {})", self.start, self.end)
    }
}

/// Sectors sorted by annular size; ties go to the smaller left endpoint.
pub fn sectors(t: &Portrait) -> Vec<Sector> {
    let n = t.angles.len();
    let mut out: Vec<Sector> = (0..n)
        .map(|i| Sector::between(&t.angles[i], &t.angles[(i + 1) % n]))
        .collect();
    out.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.start.cmp(&b.start)));
    out
}

/// The image portrait under `t -> d t`.
pub fn map_portrait(t: &Portrait, d: u32) -> Result<Portrait> {
    check_degree(d)?;
    let images: Vec<Angle> = t.angles.iter().map(|a| a.times(d)).collect();
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] == images[j] {
                return Err(Error::NotInjective(
                    t.angles[i].clone(),
                    t.angles[j].clone(),
                ));
            }
        }
    }
    let n = images.len();
    let descents = (0..n).filter(|&i| images[(i + 1) % n] < images[i]).count();
    if descents != 1 {
        return Err(Error::OrderNotPreserved);
    }
    Portrait::new(images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorImage {
    pub image: Sector,
    pub critical_count: u32,
}

/// Image of a sector under the sector map, with the number of critical
/// points it carries, `d l(S) - l(image)`.
///
/// A two-angle portrait whose angles collide maps onto a single angle; the
/// image is then taken to be the complement of that angle, with size 1.
pub fn sector_image(s: &Sector, t: &Portrait, d: u32) -> Result<SectorImage> {
    check_degree(d)?;
    if !t.has_sector(s) {
        return Err(Error::UnknownSector(s.start.clone(), s.end.clone()));
    }
    let (from, to) = (s.start.times(d), s.end.times(d));
    if !(t.valence() == 2 && from == to) {
        map_portrait(t, d)?;
    }
    let image = Sector::between(&from, &to);
    let excess = BigRational::from_integer(BigInt::from(d)) * &s.size - &image.size;
    if !excess.is_integer() || excess.is_negative() {
        return Err(Error::InternalInvariant(format!(
            "sector {s} of {t} has non-integral critical count {excess}"
        )));
    }
    let critical_count = excess
        .to_integer()
        .to_u32()
        .ok_or_else(|| Error::InternalInvariant("critical count overflow".into()))?;
    Ok(SectorImage {
        image,
        critical_count,
    })
}

/// The unique sector of `t` whose arc contains every angle of `x`.
pub fn containing_sector(t: &Portrait, x: &[Angle]) -> Result<Sector> {
    let first = x
        .first()
        .ok_or_else(|| Error::Config("empty angle set".into()))?;
    if let Some(hit) = x.iter().find(|a| t.angles.binary_search(a).is_ok()) {
        return Err(Error::MeetsPortrait(hit.clone()));
    }
    let find = |a: &Angle| {
        sectors(t)
            .into_iter()
            .find(|s| s.arc().contains(a))
            .expect("sectors cover the complement of the portrait")
    };
    let sector = find(first);
    if let Some(other) = x.iter().find(|a| !sector.arc().contains(a)) {
        return Err(Error::Straddles(first.clone(), other.clone()));
    }
    Ok(sector)
}

/// Checks that every portrait is the image of the previous one.
pub fn validate_orbit(orbit: &[Portrait], d: u32) -> Result<()> {
    check_degree(d)?;
    for (i, pair) in orbit.windows(2).enumerate() {
        match map_portrait(&pair[0], d) {
            Ok(image) if image == pair[1] => {}
            _ => return Err(Error::InvalidOrbit { index: i + 1 }),
        }
    }
    Ok(())
}

/// Sectors of `orbit[n]` that are images of critical sectors of `orbit[n-1]`.
fn critical_value_sectors(orbit: &[Portrait], n: usize, d: u32) -> Result<HashSet<(Angle, Angle)>> {
    let mut out = HashSet::new();
    if n == 0 {
        return Ok(out);
    }
    let prev = &orbit[n - 1];
    for s in sectors(prev) {
        let img = sector_image(&s, prev, d)?;
        if img.critical_count >= 1 {
            out.insert((img.image.start, img.image.end));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NarrowCertificate {
    pub time: usize,
    pub rank: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub size: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub next_size: BigRational,
    /// `l(S_{k+1}) > epsilon` at the narrow time.
    pub next_exceeds: bool,
    /// Smallest rank `k0 <= k` of a critical value sector at the narrow time.
    pub critical_value_rank: Option<usize>,
    pub critical_value_sector: Option<Sector>,
}

/// The first time the `k`-th smallest sector drops below `epsilon`.
pub fn first_narrow_time(
    orbit: &[Portrait],
    d: u32,
    epsilon: &BigRational,
    k: usize,
) -> Result<NarrowCertificate> {
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    validate_orbit(orbit, d)?;
    let v = orbit.first().map(Portrait::valence).unwrap_or(0);
    if k == 0 || k + 2 > v {
        return Err(Error::InvalidRank {
            rank: k,
            max: v.saturating_sub(2),
        });
    }
    for (n, t) in orbit.iter().enumerate() {
        let ranked = sectors(t);
        if ranked[k - 1].size >= *epsilon {
            continue;
        }
        let marked = critical_value_sectors(orbit, n, d)?;
        let hit = ranked[..k]
            .iter()
            .position(|s| marked.contains(&(s.start.clone(), s.end.clone())));
        return Ok(NarrowCertificate {
            time: n,
            rank: k,
            size: ranked[k - 1].size.clone(),
            next_size: ranked[k].size.clone(),
            next_exceeds: ranked[k].size > *epsilon,
            critical_value_rank: hit.map(|i| i + 1),
            critical_value_sector: hit.map(|i| ranked[i].clone()),
        });
    }
    Err(Error::NotFound { len: orbit.len() })
}

/// Running supremum of `l(S_{v-2}(T_m))` over `m >= n`, for each `n` of the prefix.
pub fn tail_sup_profile(orbit: &[Portrait]) -> Result<Vec<BigRational>> {
    let mut out = Vec::with_capacity(orbit.len());
    let mut running = BigRational::zero();
    for t in orbit.iter().rev() {
        let v = t.valence();
        if v < 3 {
            return Err(Error::InvalidRank { rank: 1, max: 0 });
        }
        let size = sectors(t)[v - 3].size.clone();
        if size > running {
            running = size;
        }
        out.push(running.clone());
    }
    out.reverse();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub orbit: usize,
    pub rank: usize,
    pub time: usize,
    pub critical_value_rank: usize,
    pub sector: Sector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyInequalityReport {
    pub degree: u32,
    /// `sum (v - 2)` over every supplied orbit.
    pub valence_excess: usize,
    pub bound: usize,
    pub inequality_holds: bool,
    /// Orbits whose prefix repeats a portrait; they cannot be wandering.
    pub periodic_orbits: Vec<usize>,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub refined_epsilon: Option<BigRational>,
    pub witnesses: Vec<Witness>,
    /// `(orbit, rank)` pairs whose narrow time shows no critical value sector.
    pub missing: Vec<(usize, usize)>,
    pub witnesses_disjoint: bool,
}

fn ser_opt_ratio<S: serde::Serializer>(
    value: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => ser_ratio(v, s),
        None => s.serialize_none(),
    }
}

impl KeyInequalityReport {
    pub fn consistent(&self) -> bool {
        self.inequality_holds && self.witnesses_disjoint && self.missing.is_empty()
    }
}

/// Replays the counting argument behind `sum (v - 2) <= d - 2` on finite
/// prefixes of portrait orbits.
pub fn key_inequality_audit(
    orbits: &[Vec<Portrait>],
    d: u32,
    epsilon: &BigRational,
) -> Result<KeyInequalityReport> {
    check_degree(d)?;
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    for orbit in orbits {
        validate_orbit(orbit, d)?;
    }
    let valence_excess = orbits
        .iter()
        .filter_map(|o| o.first())
        .map(|t| t.valence() - 2)
        .sum();
    let bound = d as usize - 2;
    let periodic_orbits: Vec<usize> = orbits
        .iter()
        .enumerate()
        .filter(|(_, o)| o.iter().collect::<HashSet<_>>().len() < o.len())
        .map(|(i, _)| i)
        .collect();
    let candidates: Vec<usize> = (0..orbits.len())
        .filter(|i| {
            !periodic_orbits.contains(i) && orbits[*i].first().is_some_and(Portrait::is_branched)
        })
        .collect();

    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    let mut refined_epsilon = None;
    let mut record = |orbit: usize, cert: NarrowCertificate| match (
        cert.critical_value_rank,
        cert.critical_value_sector,
    ) {
        (Some(rank), Some(sector)) => witnesses.push(Witness {
            orbit,
            rank: cert.rank,
            time: cert.time,
            critical_value_rank: rank,
            sector,
        }),
        _ => missing.push((orbit, cert.rank)),
    };
    let narrow = |i: usize, eps: &BigRational, k: usize| {
        first_narrow_time(&orbits[i], d, eps, k).map_err(|e| match e {
            Error::NotFound { .. } => Error::PrefixTooShort { orbit: i, rank: k },
            other => other,
        })
    };

    if let Some(&lead) = candidates.first() {
        let cert = narrow(lead, epsilon, 1)?;
        let eps = cert.size.clone();
        refined_epsilon = Some(eps.clone());
        record(lead, cert);
        for &i in &candidates {
            for k in 1..=orbits[i][0].valence() - 2 {
                let cert = narrow(i, &eps, k)?;
                record(i, cert);
            }
        }
    }

    let witnesses_disjoint = witnesses.iter().enumerate().all(|(i, a)| {
        witnesses[i + 1..]
            .iter()
            .all(|b| a.sector.is_disjoint_from(&b.sector))
    });
    Ok(KeyInequalityReport {
        degree: d,
        valence_excess,
        bound,
        inequality_holds: valence_excess <= bound,
        periodic_orbits,
        refined_epsilon,
        witnesses,
        missing,
        witnesses_disjoint,
    })
}

/// Parses portrait orbits: one portrait per line as comma-separated angles,
/// blank lines between orbits, `#` starts a comment.
pub fn parse_orbits(text: &str) -> Result<Vec<Vec<Portrait>>> {
    let mut orbits = Vec::new();
    let mut current: Vec<Portrait> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if !current.is_empty() {
                orbits.push(std::mem::take(&mut current));
            }
            continue;
        }
        let angles = line
            .split(',')
            .map(|s| s.trim().parse::<Angle>())
            .collect::<Result<Vec<_>>>()?;
        current.push(Portrait::new(angles)?);
    }
    if !current.is_empty() {
        orbits.push(current);
    }
    Ok(orbits)
}

pub fn load_orbits(path: &Path) -> Result<Vec<Vec<Portrait>>> {
    parse_orbits(&std::fs::read_to_string(path)?)
}

/// The forward orbit of a portrait, `len` portraits long.
pub fn portrait_orbit(t: &Portrait, d: u32, len: usize) -> Result<Vec<Portrait>> {
    let mut out = Vec::with_capacity(len);
    let mut current = t.clone();
    for i in 0..len {
        if i > 0 {
            current = map_portrait(&current, d)?;
        }
        out.push(current.clone());
    }
    Ok(out)
}

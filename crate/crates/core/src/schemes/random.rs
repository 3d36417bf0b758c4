//! Seeded random configurations with prescribed special position.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{forms_dim, Arc, ProjPoint, SchemeError, ZeroDimScheme, MAX_ARC_LENGTH};
use crate::field::Field;

/// Random schemes stay at desk scale.
pub const MAX_RANDOM_DEGREE: usize = 12;
pub const MAX_RESAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    /// No three-length subscheme on a line, no six on a conic, maximal
    /// Hilbert function.
    Generic,
    /// Exactly `k` points on one line; nothing else special.
    CollinearSubset(usize),
    /// All points on one smooth conic; no three collinear.
    OnConic,
    /// One arc of the given length plus generic reduced points.
    WithArc(usize),
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Generic => write!(f, "generic"),
            Constraint::CollinearSubset(k) => write!(f, "collinear:{k}"),
            Constraint::OnConic => write!(f, "conic"),
            Constraint::WithArc(l) => write!(f, "arc:{l}"),
        }
    }
}

impl FromStr for Constraint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> Result<usize, String> {
            a.ok_or_else(|| format!("{head} needs an argument, e.g. {head}:3"))?
                .parse()
                .map_err(|_| format!("bad argument in {s:?}"))
        };
        match head {
            "generic" if arg.is_none() => Ok(Constraint::Generic),
            "conic" if arg.is_none() => Ok(Constraint::OnConic),
            "collinear" => Ok(Constraint::CollinearSubset(num(arg)?)),
            "arc" => Ok(Constraint::WithArc(num(arg)?)),
            _ => Err(format!(
                "unknown constraint {s:?} (expected generic, collinear:K, conic, arc:L)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeSpec {
    pub u: usize,
    pub constraint: Constraint,
}

impl SchemeSpec {
    pub fn new(u: usize, constraint: Constraint) -> Self {
        SchemeSpec { u, constraint }
    }

    fn validate(&self) -> Result<(), SchemeError> {
        let bad = |m: String| Err(SchemeError::BadRequest(m));
        if self.u > MAX_RANDOM_DEGREE {
            return bad(format!("degree {} exceeds {MAX_RANDOM_DEGREE}", self.u));
        }
        match self.constraint {
            Constraint::CollinearSubset(k) if k > self.u => {
                bad(format!("collinear subset {k} larger than degree {}", self.u))
            }
            Constraint::WithArc(l) if l < 2 || l > self.u.min(MAX_ARC_LENGTH) => bad(format!(
                "arc length {l} outside 2..={}",
                self.u.min(MAX_ARC_LENGTH)
            )),
            _ => Ok(()),
        }
    }
}

/// Draws a scheme of degree `spec.u` satisfying the constraint and no other
/// special position, resampling up to [`MAX_RESAMPLES`] times.
pub fn random_scheme<F: Field, R: Rng + ?Sized>(
    field: &F,
    spec: &SchemeSpec,
    rng: &mut R,
) -> Result<ZeroDimScheme<F>, SchemeError> {
    spec.validate()?;
    for _ in 0..MAX_RESAMPLES {
        let Some(z) = draw(field, spec, rng) else {
            continue;
        };
        if admissible(&z, spec) {
            return Ok(z);
        }
    }
    Err(SchemeError::RetriesExhausted(MAX_RESAMPLES))
}

fn random_triple<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> [F::Elem; 3] {
    [field.sample(rng), field.sample(rng), field.sample(rng)]
}

fn random_point<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> Option<ProjPoint<F>> {
    ProjPoint::new(field, random_triple(field, rng)).ok()
}

fn combine<F: Field>(field: &F, a: &F::Elem, p: &[F::Elem; 3], b: &F::Elem, q: &[F::Elem; 3]) -> [F::Elem; 3] {
    [0, 1, 2].map(|i| field.add(&field.mul(a, &p[i]), &field.mul(b, &q[i])))
}

fn draw<F: Field, R: Rng + ?Sized>(field: &F, spec: &SchemeSpec, rng: &mut R) -> Option<ZeroDimScheme<F>> {
    let u = spec.u;
    let mut points = Vec::with_capacity(u);
    let mut arcs = Vec::new();
    let free = match spec.constraint {
        Constraint::Generic => u,
        Constraint::CollinearSubset(k) if k <= 2 => u,
        Constraint::CollinearSubset(k) => {
            let p = random_triple(field, rng);
            let q = random_triple(field, rng);
            for _ in 0..k {
                let (a, b) = (field.sample(rng), field.sample(rng));
                points.push(ProjPoint::new(field, combine(field, &a, &p, &b, &q)).ok()?);
            }
            u - k
        }
        Constraint::OnConic => {
            // Image of the standard conic (1, s, s^2) under a random linear map.
            let m = [random_triple(field, rng), random_triple(field, rng), random_triple(field, rng)];
            for _ in 0..u {
                let s = field.sample(rng);
                let param = [field.one(), s.clone(), field.mul(&s, &s)];
                let img = m.clone().map(|row| {
                    row.iter()
                        .zip(&param)
                        .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
                });
                points.push(ProjPoint::new(field, img).ok()?);
            }
            0
        }
        Constraint::WithArc(l) => {
            let base = random_point(field, rng)?;
            let arc = Arc::new(field, base, random_triple(field, rng), random_triple(field, rng), l).ok()?;
            arcs.push(arc);
            u - l
        }
    };
    for _ in 0..free {
        points.push(random_point(field, rng)?);
    }
    ZeroDimScheme::new(field.clone(), points, arcs).ok()
}

fn maximal_hilbert_function<F: Field>(z: &ZeroDimScheme<F>) -> bool {
    let u = z.degree();
    (0..=u as i64).all(|d| z.conditions(d) == u.min(forms_dim(d)))
}

fn generic_position<F: Field>(z: &ZeroDimScheme<F>) -> bool {
    z.max_collinear_degree() <= 2 && !z.has_subscheme_on_conic(6) && maximal_hilbert_function(z)
}

fn binomial3(k: usize) -> usize {
    if k < 3 {
        0
    } else {
        k * (k - 1) * (k - 2) / 6
    }
}

fn admissible<F: Field>(z: &ZeroDimScheme<F>, spec: &SchemeSpec) -> bool {
    let u = spec.u;
    match spec.constraint {
        Constraint::Generic | Constraint::WithArc(_) => generic_position(z),
        Constraint::CollinearSubset(k) if k <= 2 => generic_position(z),
        Constraint::CollinearSubset(k) => {
            if z.max_collinear_degree() != k || z.count_special_subschemes(3, 1, 2) != binomial3(k) {
                return false;
            }
            let lens: Vec<usize> = (0..u).map(|i| usize::from(i >= k)).collect();
            generic_position(&z.truncate(&lens))
        }
        Constraint::OnConic => {
            let conics = forms_dim(2) - z.conditions(2);
            z.max_collinear_degree() <= 2 && conics == 1usize.max(6usize.saturating_sub(u))
        }
    }
}

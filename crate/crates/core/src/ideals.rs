//! Cohomology of twisted ideal sheaves `I_Z(d)`, regularity, and the graded
//! Betti numbers of the (length one) minimal free resolution of `I_Z`.
//!
//! Generator degrees come from exact ranks of multiplication maps; syzygy
//! degrees are then forced by the Hilbert function.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::linalg::{self, DenseMatrix};
use crate::schemes::{forms_dim, monomial_basis, monomial_index, ZeroDimScheme};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("operation undefined for the empty scheme")]
    EmptyScheme,
    #[error("classification needs 1 <= degree <= 5, got {0}")]
    DegreeOutOfRange(usize),
    #[error("minimal generator found in degree {0}, beyond regularity + 1")]
    GeneratorBeyondRegularity(i64),
    #[error("negative syzygy count in degree {0}")]
    NegativeSyzygies(i64),
    #[error("Hilbert consistency fails in degree {0}")]
    HilbertMismatch(i64),
    #[error("resolution rank condition fails: {generators} generators, {syzygies} syzygies")]
    RankCondition { generators: usize, syzygies: usize },
    #[error("no resolution template matches generators {generators:?}, syzygies {syzygies:?}")]
    NoTemplate { generators: Vec<i64>, syzygies: Vec<i64> },
    #[error("side condition of case {label} fails: {detail}")]
    SideCondition { label: String, detail: String },
}

/// `(h^0, h^1, h^2)` of `I_Z(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdealCohomology {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

/// `h^2(O(d)) = h^0(O(-d-3))`.
pub fn h2_plane(d: i64) -> usize {
    forms_dim(-d - 3)
}

/// The Hilbert function of `Z`: number of conditions imposed on degree-`d`
/// forms, cached up to the degree where it reaches `deg Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    degree: usize,
    ranks: Vec<usize>,
}

impl HilbertFunction {
    pub fn of<F: Field>(z: &ZeroDimScheme<F>) -> Self {
        let degree = z.degree();
        let mut ranks = Vec::new();
        let mut d = 0i64;
        while ranks.last() != Some(&degree) {
            let r = z.conditions(d);
            assert!(
                r == degree || (d as usize) + 1 < degree,
                "conditions must be independent in degree >= deg Z - 1"
            );
            ranks.push(r);
            d += 1;
        }
        HilbertFunction { degree, ranks }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn conditions(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.ranks.get(d as usize).copied().unwrap_or(self.degree)
        }
    }

    pub fn h0(&self, d: i64) -> usize {
        forms_dim(d) - self.conditions(d)
    }

    pub fn h1(&self, d: i64) -> usize {
        self.degree - self.conditions(d)
    }

    pub fn cohomology(&self, d: i64) -> IdealCohomology {
        IdealCohomology {
            h0: self.h0(d),
            h1: self.h1(d),
            h2: h2_plane(d),
        }
    }

    /// Smallest `m >= 1` with `h^1(I_Z(m-1)) = 0`.
    pub fn regularity(&self) -> Result<usize, IdealError> {
        if self.degree == 0 {
            return Err(IdealError::EmptyScheme);
        }
        Ok((1..).find(|&m| self.h1(m as i64 - 1) == 0).expect("h1 vanishes eventually"))
    }
}

pub fn ideal_cohomology<F: Field>(z: &ZeroDimScheme<F>, d: i64) -> IdealCohomology {
    let u = z.degree();
    let c = z.conditions(d);
    IdealCohomology {
        h0: forms_dim(d) - c,
        h1: u - c,
        h2: h2_plane(d),
    }
}

pub fn regularity<F: Field>(z: &ZeroDimScheme<F>) -> Result<usize, IdealError> {
    HilbertFunction::of(z).regularity()
}

/// Multiplies each form (coefficients in the degree-`d` monomial basis) by
/// `x`, `y`, `z`, giving forms of degree `d + 1`.
fn multiply_by_variables<F: Field>(field: &F, forms: &[Vec<F::Elem>], d: usize) -> DenseMatrix<F::Elem> {
    let basis = monomial_basis(d);
    let cols = forms_dim(d as i64 + 1);
    let mut rows = Vec::with_capacity(3 * forms.len());
    for f in forms {
        for var in 0..3 {
            let mut row = vec![field.zero(); cols];
            for (e, c) in basis.iter().zip(f) {
                let mut shifted = *e;
                shifted[var] += 1;
                row[monomial_index(shifted)] = c.clone();
            }
            rows.push(row);
        }
    }
    DenseMatrix::from_rows(cols, rows)
}

/// Number of minimal generators of the homogeneous ideal of `Z` per degree.
/// Degrees past the regularity are checked to contribute nothing.
pub fn minimal_generator_counts<F: Field>(z: &ZeroDimScheme<F>) -> Result<BTreeMap<i64, usize>, IdealError> {
    let field = z.field();
    let reg = regularity(z)?;
    let mut counts = BTreeMap::new();
    let mut previous: Vec<Vec<F::Elem>> = Vec::new();
    for d in 0..=reg + 2 {
        let current = linalg::kernel_basis(field, &z.evaluation_matrix(d));
        let old = if previous.is_empty() {
            0
        } else {
            linalg::rank(field, &multiply_by_variables(field, &previous, d - 1))
        };
        let new = current.len() - old;
        if new > 0 {
            if d > reg {
                return Err(IdealError::GeneratorBeyondRegularity(d as i64));
            }
            counts.insert(d as i64, new);
        }
        previous = current;
    }
    Ok(counts)
}

/// Degrees of generators and syzygies of `0 -> L1 -> L0 -> I_Z -> 0`, a
/// summand `O(-e)` recorded as `e`. Both lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedBetti {
    pub generators: Vec<i64>,
    pub syzygies: Vec<i64>,
}

impl GradedBetti {
    /// The resolution `0 -> O -> I_Z` of the empty scheme's (unit) ideal.
    pub fn unit_ideal() -> Self {
        GradedBetti {
            generators: vec![0],
            syzygies: Vec::new(),
        }
    }

    /// `dim I(d)` predicted by the resolution.
    pub fn predicted_h0(&self, d: i64) -> i64 {
        let sum = |v: &[i64]| v.iter().map(|&e| forms_dim(d - e) as i64).sum::<i64>();
        sum(&self.generators) - sum(&self.syzygies)
    }

    pub fn rank_condition_holds(&self) -> bool {
        self.generators.len() == self.syzygies.len() + 1
    }
}

fn expand(counts: &BTreeMap<i64, usize>) -> Vec<i64> {
    counts
        .iter()
        .flat_map(|(&d, &n)| std::iter::repeat_n(d, n))
        .collect()
}

pub fn graded_betti<F: Field>(z: &ZeroDimScheme<F>) -> Result<GradedBetti, IdealError> {
    let hf = HilbertFunction::of(z);
    let reg = hf.regularity()? as i64;
    let generators = expand(&minimal_generator_counts(z)?);
    let mut betti = GradedBetti {
        generators,
        syzygies: Vec::new(),
    };
    for d in 0..=reg + 2 {
        let defect = betti.predicted_h0(d) - hf.h0(d) as i64;
        if defect < 0 {
            return Err(IdealError::NegativeSyzygies(d));
        }
        betti.syzygies.extend(std::iter::repeat_n(d, defect as usize));
    }
    if let Some(d) = (0..=reg + 2).find(|&d| betti.predicted_h0(d) != hf.h0(d) as i64) {
        return Err(IdealError::HilbertMismatch(d));
    }
    let min_gen = betti.generators.first().copied().unwrap_or(0);
    if !betti.rank_condition_holds() || betti.syzygies.iter().any(|&s| s <= min_gen) {
        return Err(IdealError::RankCondition {
            generators: betti.generators.len(),
            syzygies: betti.syzygies.len(),
        });
    }
    Ok(betti)
}

/// The ten minimal free resolutions of ideals of degree `<= 5` schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResolutionClass {
    /// `Z` on a line: complete intersection of type `(1, u)`.
    CiLine(usize),
    /// Three points off a line.
    B1,
    /// Degree 4, not on a line, with a collinear length-3 subscheme.
    B2,
    /// Complete intersection of two conics.
    B3,
    /// Degree 5, not on a line, with a collinear length-4 subscheme.
    B4,
    /// Degree 5 on a unique conic.
    B5,
}

impl ResolutionClass {
    pub const ALL: [ResolutionClass; 10] = [
        ResolutionClass::CiLine(1),
        ResolutionClass::CiLine(2),
        ResolutionClass::CiLine(3),
        ResolutionClass::CiLine(4),
        ResolutionClass::CiLine(5),
        ResolutionClass::B1,
        ResolutionClass::B2,
        ResolutionClass::B3,
        ResolutionClass::B4,
        ResolutionClass::B5,
    ];

    pub fn degree(&self) -> usize {
        match *self {
            ResolutionClass::CiLine(u) => u,
            ResolutionClass::B1 => 3,
            ResolutionClass::B2 | ResolutionClass::B3 => 4,
            ResolutionClass::B4 | ResolutionClass::B5 => 5,
        }
    }

    /// Expected generator and syzygy degrees.
    pub fn template(&self) -> GradedBetti {
        let (generators, syzygies) = match *self {
            ResolutionClass::CiLine(u) => {
                let u = u as i64;
                let mut g = vec![1, u];
                g.sort_unstable();
                (g, vec![u + 1])
            }
            ResolutionClass::B1 => (vec![2, 2, 2], vec![3, 3]),
            ResolutionClass::B2 => (vec![2, 2, 3], vec![3, 4]),
            ResolutionClass::B3 => (vec![2, 2], vec![4]),
            ResolutionClass::B4 => (vec![2, 2, 4], vec![3, 5]),
            ResolutionClass::B5 => (vec![2, 3, 3], vec![4, 4]),
        };
        GradedBetti { generators, syzygies }
    }
}

impl fmt::Display for ResolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionClass::CiLine(u) => write!(f, "CI_LINE({u})"),
            ResolutionClass::B1 => write!(f, "B1"),
            ResolutionClass::B2 => write!(f, "B2"),
            ResolutionClass::B3 => write!(f, "B3"),
            ResolutionClass::B4 => write!(f, "B4"),
            ResolutionClass::B5 => write!(f, "B5"),
        }
    }
}

/// Matches the Betti numbers of `Z` against the ten templates and confirms
/// the matched case's geometric hypotheses by rank probes.
pub fn classify_resolution<F: Field>(z: &ZeroDimScheme<F>) -> Result<ResolutionClass, IdealError> {
    let u = z.degree();
    if !(1..=5).contains(&u) {
        return Err(IdealError::DegreeOutOfRange(u));
    }
    let betti = graded_betti(z)?;
    let class = ResolutionClass::ALL
        .into_iter()
        .find(|c| c.degree() == u && c.template() == betti)
        .ok_or_else(|| IdealError::NoTemplate {
            generators: betti.generators.clone(),
            syzygies: betti.syzygies.clone(),
        })?;

    let hf = HilbertFunction::of(z);
    let (lines, conics) = (hf.h0(1), hf.h0(2));
    let collinear = z.max_collinear_degree();
    let fail = |detail: String| {
        Err(IdealError::SideCondition {
            label: class.to_string(),
            detail,
        })
    };
    match class {
        ResolutionClass::CiLine(_) if lines == 0 => fail("Z is not contained in a line".into()),
        ResolutionClass::B1 | ResolutionClass::B2 | ResolutionClass::B4 if lines != 0 => {
            fail(format!("h0(I_Z(1)) = {lines}, expected 0"))
        }
        ResolutionClass::B2 if collinear != 3 => {
            fail(format!("longest collinear subscheme has length {collinear}, expected 3"))
        }
        ResolutionClass::B3 if conics != 2 || collinear > 2 => fail(format!(
            "h0(I_Z(2)) = {conics}, collinear length {collinear}; not a (2,2) complete intersection"
        )),
        ResolutionClass::B4 if collinear != 4 => {
            fail(format!("longest collinear subscheme has length {collinear}, expected 4"))
        }
        ResolutionClass::B5 if conics != 1 => fail(format!("h0(I_Z(2)) = {conics}, expected 1")),
        _ => Ok(class),
    }
}

/// Whether every colength-one subscheme `Z'` has `h^0(I_Z'(l)) =
/// h^0(I_Z(l))`. Vacuously true for `l < 0`. Arc components contribute
/// their one-step truncation.
pub fn cayley_bacharach<F: Field>(z: &ZeroDimScheme<F>, l: i64) -> bool {
    if l < 0 {
        return true;
    }
    let h0 = ideal_cohomology(z, l).h0;
    z.colength_one_subschemes()
        .iter()
        .all(|sub| ideal_cohomology(sub, l).h0 == h0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn pts(p: &[[i64; 3]]) -> ZeroDimScheme<Rationals> {
        ZeroDimScheme::from_int_points(Rationals, p).unwrap()
    }

    fn generic3() -> ZeroDimScheme<Rationals> {
        pts(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    fn collinear(n: i64) -> ZeroDimScheme<Rationals> {
        pts(&(1..=n).map(|i| [i, 0, 1]).collect::<Vec<_>>())
    }

    fn generic(n: usize) -> ZeroDimScheme<Rationals> {
        // Points on the cubic twisted away from special position.
        let all = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]];
        pts(&all[..n])
    }

    #[test]
    fn cohomology_examples() {
        let c = ideal_cohomology(&generic3(), 1);
        assert_eq!(c, IdealCohomology { h0: 0, h1: 0, h2: 0 });
        let c = ideal_cohomology(&collinear(3), 1);
        assert_eq!(c, IdealCohomology { h0: 1, h1: 1, h2: 0 });
        for u in 1..5 {
            let c = ideal_cohomology(&collinear(u), -1);
            assert_eq!(c, IdealCohomology { h0: 0, h1: u as usize, h2: 0 });
        }
        assert_eq!(ideal_cohomology(&generic3(), -4).h2, 3);
        assert_eq!(ideal_cohomology(&generic3(), -3).h2, 1);
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(regularity(&collinear(4)), Ok(4));
        assert_eq!(regularity(&generic3()), Ok(2));
        assert_eq!(regularity(&pts(&[[3, 1, 1]])), Ok(1));
        assert_eq!(regularity(&ZeroDimScheme::empty(Rationals)), Err(IdealError::EmptyScheme));
    }

    #[test]
    fn generator_counts() {
        assert_eq!(minimal_generator_counts(&generic3()).unwrap(), BTreeMap::from([(2, 3)]));
        assert_eq!(
            minimal_generator_counts(&collinear(4)).unwrap(),
            BTreeMap::from([(1, 1), (4, 1)])
        );
        assert_eq!(
            minimal_generator_counts(&generic(5)).unwrap(),
            BTreeMap::from([(2, 1), (3, 2)])
        );
    }

    #[test]
    fn betti_examples() {
        let b = graded_betti(&generic3()).unwrap();
        assert_eq!((b.generators, b.syzygies), (vec![2, 2, 2], vec![3, 3]));
        let b = graded_betti(&generic(4)).unwrap();
        assert_eq!((b.generators, b.syzygies), (vec![2, 2], vec![4]));
        let b = graded_betti(&pts(&[[1, 0, 1], [2, 0, 1], [3, 0, 1], [4, 0, 1], [0, 1, 1]])).unwrap();
        assert_eq!((b.generators, b.syzygies), (vec![2, 2, 4], vec![3, 5]));
        let b = graded_betti(&pts(&[[1, 2, 1]])).unwrap();
        assert_eq!((b.generators, b.syzygies), (vec![1, 1], vec![2]));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_resolution(&pts(&[[1, 0, 0], [0, 1, 0]])), Ok(ResolutionClass::CiLine(2)));
        let b2 = pts(&[[1, 0, 1], [2, 0, 1], [3, 0, 1], [0, 1, 1]]);
        assert_eq!(classify_resolution(&b2), Ok(ResolutionClass::B2));
        assert_eq!(classify_resolution(&generic(5)), Ok(ResolutionClass::B5));
        assert_eq!(classify_resolution(&generic(4)), Ok(ResolutionClass::B3));
        assert_eq!(classify_resolution(&generic3()), Ok(ResolutionClass::B1));
        assert_eq!(
            classify_resolution(&generic(6)),
            Err(IdealError::DegreeOutOfRange(6))
        );
        // Five points with exactly three collinear still lie on one conic.
        let three_on_line = pts(&[[1, 0, 1], [2, 0, 1], [3, 0, 1], [0, 1, 1], [5, 7, 1]]);
        assert_eq!(classify_resolution(&three_on_line), Ok(ResolutionClass::B5));
    }

    #[test]
    fn templates_satisfy_rank_condition() {
        for c in ResolutionClass::ALL {
            let t = c.template();
            assert!(t.rank_condition_holds(), "{c}");
            // Leading term of the Hilbert polynomial: h0(I(d)) = N(d) - u.
            for d in 6..10 {
                assert_eq!(t.predicted_h0(d), forms_dim(d) as i64 - c.degree() as i64, "{c}");
            }
        }
    }

    #[test]
    fn cayley_bacharach_examples() {
        assert!(cayley_bacharach(&generic3(), -1));
        assert!(!cayley_bacharach(&pts(&[[1, 1, 1]]), 0));
        assert!(cayley_bacharach(&generic(6), 0));
        // Three collinear points satisfy CB for lines, generic ones do not.
        assert!(cayley_bacharach(&collinear(3), 1));
        assert!(!cayley_bacharach(&generic3(), 1));
    }

    #[test]
    fn collinear_closed_form() {
        let f = PrimeField::default();
        for u in 1..=6i64 {
            let z = ZeroDimScheme::from_int_points(f, &(1..=u).map(|i| [i, 0, 1]).collect::<Vec<_>>()).unwrap();
            let hf = HilbertFunction::of(&z);
            for d in 0..=u + 2 {
                let expect = forms_dim(d) - (u as usize).min(d as usize + 1);
                assert_eq!(hf.h0(d), expect);
                assert_eq!(ideal_cohomology(&z, d).h0, expect);
            }
        }
    }
}

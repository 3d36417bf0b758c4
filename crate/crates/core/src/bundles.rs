//! Normalized rank-two bundles on the plane given by a minimal section:
//! `0 -> O -> E(r) -> I_Z(2r + c1) -> 0`.
//!
//! A bundle is stored as `(Z, c1, r)`. `h^0` comes straight from the
//! sequence (the twisted `H^1` of line bundles vanish on the plane), `h^2`
//! from Serre duality `h^2(E(k)) = h^0(E(-c1-k-3))`, and `h^1` from
//! Riemann–Roch.

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::ideals::{self, GradedBetti, HilbertFunction, IdealError};
use crate::schemes::{forms_dim, ZeroDimScheme};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("c1 = {0} is not normalized (expected -1 or 0)")]
    InvalidC1(i64),
    #[error("r = {r} is not the least section twist: h0(I_Z({twist})) = {h0}")]
    MinimalityViolation { r: i64, twist: i64, h0: usize },
    #[error("Cayley-Bacharach fails for O({twist}); the extension is not locally free")]
    LocalFreenessViolation { twist: i64 },
    #[error("an empty zero scheme needs r <= 0 (split bundle), got r = {0}")]
    EmptySchemeStable(i64),
    #[error("window [{lo}, {hi}] does not contain the H^1 support [{support_lo}, {support_hi}] in its interior")]
    WindowTooSmall { lo: i64, hi: i64, support_lo: i64, support_hi: i64 },
    #[error("empty window [{0}, {1}]")]
    EmptyWindow(i64, i64),
    #[error("splitting criteria disagree: h1(E(-1)) = {h1}, deg Z = {degree}")]
    OracleMismatch { h1: usize, degree: usize },
    #[error("H^1 support {0:?} is not an interval")]
    ConnectednessViolation(Vec<i64>),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

fn check_c1(c1: i64) -> Result<(), BundleError> {
    if c1 == 0 || c1 == -1 {
        Ok(())
    } else {
        Err(BundleError::InvalidC1(c1))
    }
}

/// `chi(E(k))` for a normalized bundle on the plane.
pub fn rr_chi_p2(c1: i64, c2: i64, k: i64) -> Result<i64, BundleError> {
    check_c1(c1)?;
    // c1 (c1 + 2k + 3) is even for c1 in {-1, 0}.
    Ok(c1 * (c1 + 2 * k + 3) / 2 + (k + 1) * (k + 2) - c2)
}

/// `chi(F(k))` for a normalized rank-two bundle on three-space.
pub fn rr_chi_p3(c1: i64, c2: i64, k: i64) -> Result<Rational64, BundleError> {
    check_c1(c1)?;
    let r = |n: i64| Rational64::from_integer(n);
    Ok(if c1 == 0 {
        -r(c2 * (k + 2)) + Rational64::new((k + 1) * (k + 2) * (k + 3), 3)
    } else {
        Rational64::new((k + 1) * (k + 2) * (2 * k + 3), 6) - Rational64::new(c2 * (2 * k + 3), 2)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChernPair {
    pub c1: i64,
    pub c2: i64,
}

impl ChernPair {
    pub fn new(c1: i64, c2: i64) -> Self {
        ChernPair { c1, c2 }
    }

    /// Chern classes of the twist by `O(m)`.
    pub fn twist(&self, m: i64) -> ChernPair {
        ChernPair {
            c1: self.c1 + 2 * m,
            c2: self.c1 * m + self.c2 + m * m,
        }
    }

    /// Riemann–Roch for any rank-two bundle on the plane.
    pub fn chi(&self) -> i64 {
        2 + self.c1 * (self.c1 + 3) / 2 - self.c2
    }
}

pub fn twist_chern(c: ChernPair, m: i64) -> ChernPair {
    c.twist(m)
}

/// A normalized rank-two bundle presented by the zero scheme `Z` of a
/// section of its least twist `E(r)` having one.
#[derive(Debug, Clone)]
pub struct SerreBundle<F: Field> {
    scheme: ZeroDimScheme<F>,
    c1: i64,
    r: i64,
    c2: i64,
    hilbert: HilbertFunction,
    betti: GradedBetti,
}

/// Builds and validates `E` from `(Z, c1, r)`.
pub fn make_bundle<F: Field>(scheme: ZeroDimScheme<F>, c1: i64, r: i64) -> Result<SerreBundle<F>, BundleError> {
    SerreBundle::new(scheme, c1, r)
}

impl<F: Field> SerreBundle<F> {
    pub fn new(scheme: ZeroDimScheme<F>, c1: i64, r: i64) -> Result<Self, BundleError> {
        check_c1(c1)?;
        if scheme.is_empty() && r > 0 {
            return Err(BundleError::EmptySchemeStable(r));
        }
        let k = 2 * r + c1;
        if k > 2 && !ideals::cayley_bacharach(&scheme, k - 3) {
            return Err(BundleError::LocalFreenessViolation { twist: k - 3 });
        }
        let hilbert = HilbertFunction::of(&scheme);
        let h0 = hilbert.h0(k - 1);
        if h0 != 0 {
            return Err(BundleError::MinimalityViolation { r, twist: k - 1, h0 });
        }
        let betti = if scheme.is_empty() {
            GradedBetti::unit_ideal()
        } else {
            ideals::graded_betti(&scheme)?
        };
        let u = scheme.degree() as i64;
        Ok(SerreBundle {
            scheme,
            c1,
            r,
            c2: u - c1 * r - r * r,
            hilbert,
            betti,
        })
    }

    pub fn scheme(&self) -> &ZeroDimScheme<F> {
        &self.scheme
    }

    pub fn c1(&self) -> i64 {
        self.c1
    }

    pub fn c2(&self) -> i64 {
        self.c2
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn chern(&self) -> ChernPair {
        ChernPair::new(self.c1, self.c2)
    }

    /// Stable in the section sense: `r > 0`.
    pub fn is_stable(&self) -> bool {
        self.r >= 1
    }

    pub fn hilbert(&self) -> &HilbertFunction {
        &self.hilbert
    }

    /// Betti numbers of `I_Z` (`O` for the empty scheme).
    pub fn betti(&self) -> &GradedBetti {
        &self.betti
    }

    /// `h^0(O(k - r)) + h^0(I_Z(k + r + c1))`.
    pub fn h0(&self, k: i64) -> usize {
        forms_dim(k - self.r) + self.hilbert.h0(k + self.r + self.c1)
    }

    pub fn h2(&self, k: i64) -> usize {
        self.h0(-self.c1 - k - 3)
    }

    pub fn chi(&self, k: i64) -> i64 {
        rr_chi_p2(self.c1, self.c2, k).expect("c1 validated at construction")
    }

    pub fn h1(&self, k: i64) -> usize {
        let h1 = self.h0(k) as i64 + self.h2(k) as i64 - self.chi(k);
        assert!(h1 >= 0, "negative h1 at twist {k}: inconsistent data");
        h1 as usize
    }

    /// Twists `[-c1-3-K, K]` symmetric under duality; `h^1` vanishes from
    /// `K` on because `h^1(E(k)) <= h^1(I_Z(k + r + c1))`.
    pub fn default_window(&self) -> (i64, i64) {
        let reach = match self.hilbert.regularity() {
            Ok(reg) => (self.r - 2).max(reg as i64 - 1 - self.r - self.c1),
            Err(_) => (self.r - 2).max(0),
        };
        let k = reach + 1;
        (-self.c1 - 3 - k, k)
    }

    pub fn cohomology_table(&self, window: Option<(i64, i64)>) -> Result<CohomologyTable, BundleError> {
        let (lo, hi) = window.unwrap_or_else(|| self.default_window());
        if lo > hi {
            return Err(BundleError::EmptyWindow(lo, hi));
        }
        if window.is_some() {
            let full = self.cohomology_table(None)?;
            if let Some((slo, shi)) = full.h1_support_bounds() {
                if slo <= lo || shi >= hi {
                    return Err(BundleError::WindowTooSmall {
                        lo,
                        hi,
                        support_lo: slo,
                        support_hi: shi,
                    });
                }
            }
        }
        let rows = (lo..=hi)
            .map(|k| TableRow {
                k,
                h0: self.h0(k),
                h1: self.h1(k),
                h2: self.h2(k),
                chi: self.chi(k),
            })
            .collect();
        Ok(CohomologyTable {
            chern: self.chern(),
            r: self.r,
            stable: self.is_stable(),
            k_min: lo,
            k_max: hi,
            rows,
        })
    }

    /// Least `k` with `h^0(E(k)) != 0`, found by scanning.
    pub fn minimal_section_twist(&self) -> i64 {
        let start = self.r.min(-self.r - self.c1);
        (start..).find(|&k| self.h0(k) > 0).expect("h0 is eventually positive")
    }

    /// `h^1(E(-1)) = 0`, cross-checked against `deg Z = 0`.
    pub fn splits(&self) -> Result<bool, BundleError> {
        let h1 = self.h1(-1);
        let degree = self.scheme.degree();
        if (h1 == 0) != (degree == 0) {
            return Err(BundleError::OracleMismatch { h1, degree });
        }
        Ok(h1 == 0)
    }

    /// `0 -> L1(r+c1) -> O(-r) + L0(r+c1) -> E -> 0` as twists of the
    /// line-bundle summands.
    pub fn bundle_resolution(&self) -> Presentation {
        let shift = self.r + self.c1;
        let mut middle = vec![-self.r];
        middle.extend(self.betti.generators.iter().map(|g| shift - g));
        Presentation::new(middle, self.betti.syzygies.iter().map(|s| shift - s).collect())
    }

    /// `0 -> E -> O(r+c1) + L0^*(-r) -> L1^*(-r) -> 0`.
    pub fn dual_presentation(&self) -> Presentation {
        let mut middle = vec![self.r + self.c1];
        middle.extend(self.betti.generators.iter().map(|g| g - self.r));
        Presentation::new(middle, self.betti.syzygies.iter().map(|s| s - self.r).collect())
    }

    pub fn h1_module(&self) -> Result<H1Module, BundleError> {
        let table = self.cohomology_table(None)?;
        let support: Vec<i64> = table.rows.iter().filter(|row| row.h1 > 0).map(|row| row.k).collect();
        if let (Some(&lo), Some(&hi)) = (support.first(), support.last()) {
            if (hi - lo + 1) as usize != support.len() {
                return Err(BundleError::ConnectednessViolation(support));
            }
        }
        let dims = support.iter().map(|&k| table.row(k).expect("in window").h1).collect();
        Ok(H1Module {
            support: support.first().map(|&lo| (lo, *support.last().unwrap())),
            dims,
            gens_plus_two: 1 + self.betti.generators.len() == self.betti.syzygies.len() + 2,
        })
    }
}

/// A two-term complex of sums of line bundles, listed as twists in
/// decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub middle: Vec<i64>,
    pub back: Vec<i64>,
}

impl Presentation {
    pub fn new(mut middle: Vec<i64>, mut back: Vec<i64>) -> Self {
        middle.sort_unstable_by(|a, b| b.cmp(a));
        back.sort_unstable_by(|a, b| b.cmp(a));
        Presentation { middle, back }
    }

    /// `h^0` of the cokernel at twist `k` when the complex is exact on
    /// global sections.
    pub fn h0_sum(&self, k: i64) -> i64 {
        let sum = |v: &[i64]| v.iter().map(|&t| forms_dim(k + t) as i64).sum::<i64>();
        sum(&self.middle) - sum(&self.back)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub k: i64,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    #[serde(flatten)]
    pub chern: ChernPair,
    pub r: i64,
    pub stable: bool,
    #[serde(skip)]
    pub k_min: i64,
    #[serde(skip)]
    pub k_max: i64,
    pub rows: Vec<TableRow>,
}

impl CohomologyTable {
    pub fn row(&self, k: i64) -> Option<&TableRow> {
        if k < self.k_min || k > self.k_max {
            None
        } else {
            self.rows.get((k - self.k_min) as usize)
        }
    }

    pub fn h1_support_bounds(&self) -> Option<(i64, i64)> {
        let mut it = self.rows.iter().filter(|r| r.h1 > 0).map(|r| r.k);
        let lo = it.next()?;
        Some((lo, it.next_back().unwrap_or(lo)))
    }

    pub fn max_h1(&self) -> usize {
        self.rows.iter().map(|r| r.h1).max().unwrap_or(0)
    }

    /// Aligned three-row text rendering.
    pub fn to_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .flat_map(|r| [r.k.to_string().len(), r.h0.to_string().len(), r.h1.to_string().len(), r.h2.to_string().len()])
            .max()
            .unwrap_or(1)
            + 1;
        let line = |name: &str, vals: Vec<String>| {
            let cells: String = vals.iter().map(|v| format!("{v:>width$}")).collect();
            format!("{name:<3}|{cells}\n")
        };
        let mut out = format!(
            "c1 = {}, c2 = {}, r = {}, {}\n",
            self.chern.c1,
            self.chern.c2,
            self.r,
            if self.stable { "stable" } else { "not stable" }
        );
        out += &line("k", self.rows.iter().map(|r| r.k.to_string()).collect());
        out += &line("h0", self.rows.iter().map(|r| r.h0.to_string()).collect());
        out += &line("h1", self.rows.iter().map(|r| r.h1.to_string()).collect());
        out += &line("h2", self.rows.iter().map(|r| r.h2.to_string()).collect());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Module {
    pub support: Option<(i64, i64)>,
    pub dims: Vec<usize>,
    pub gens_plus_two: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn pts(p: &[[i64; 3]]) -> ZeroDimScheme<Rationals> {
        ZeroDimScheme::from_int_points(Rationals, p).unwrap()
    }

    fn omega1() -> SerreBundle<Rationals> {
        make_bundle(pts(&[[1, 1, 1]]), -1, 1).unwrap()
    }

    fn split00() -> SerreBundle<Rationals> {
        make_bundle(ZeroDimScheme::empty(Rationals), 0, 0).unwrap()
    }

    #[test]
    fn rr_p2_examples() {
        assert_eq!(rr_chi_p2(0, 0, 0), Ok(2));
        assert_eq!(rr_chi_p2(-1, 3, 1), Ok(1));
        assert_eq!(rr_chi_p2(-1, 4, 2), Ok(5));
        assert_eq!(rr_chi_p2(1, 0, 0), Err(BundleError::InvalidC1(1)));
    }

    #[test]
    fn rr_p3_examples() {
        for c2 in 0..6 {
            assert_eq!(rr_chi_p3(-1, c2, 0), Ok(Rational64::new(2 - 3 * c2, 2)));
            assert_eq!(rr_chi_p3(-1, c2, 1), Ok(Rational64::new(10 - 5 * c2, 2)));
            assert_eq!(rr_chi_p3(0, c2, 0), Ok(Rational64::from_integer(2 - 2 * c2)));
        }
        assert_eq!(rr_chi_p3(-2, 0, 0), Err(BundleError::InvalidC1(-2)));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(twist_chern(ChernPair::new(0, 2), 1), ChernPair::new(2, 3));
        assert_eq!(twist_chern(ChernPair::new(-1, 5), 0), ChernPair::new(-1, 5));
        assert_eq!(twist_chern(ChernPair::new(-1, 1), 1), ChernPair::new(1, 1));
    }

    #[test]
    fn make_bundle_examples() {
        let e = omega1();
        assert!(e.is_stable());
        assert_eq!(e.c2(), 1);
        let s = split00();
        assert!(!s.is_stable());
        assert_eq!(s.c2(), 0);
        let e = make_bundle(pts(&[[1, 0, 0], [0, 1, 0]]), 0, 0).unwrap();
        assert!(!e.is_stable());
        assert_eq!(e.c2(), 2);
    }

    #[test]
    fn make_bundle_errors() {
        assert_eq!(make_bundle(pts(&[[1, 0, 0]]), 1, 0).unwrap_err(), BundleError::InvalidC1(1));
        // Three collinear points lie on a line: r = 1, c1 = 0 is not minimal.
        let err = make_bundle(pts(&[[1, 0, 1], [2, 0, 1], [3, 0, 1]]), 0, 1).unwrap_err();
        assert!(matches!(err, BundleError::MinimalityViolation { twist: 1, h0: 1, .. }));
        // A point cannot be the zero scheme of E(1) when c1 = 0: O(1) has
        // sections vanishing on it.
        let err = make_bundle(pts(&[[1, 1, 1]]), 0, 1).unwrap_err();
        assert!(matches!(err, BundleError::MinimalityViolation { twist: 1, h0: 2, .. }));
        assert_eq!(
            make_bundle(ZeroDimScheme::empty(Rationals), 0, 1).unwrap_err(),
            BundleError::EmptySchemeStable(1)
        );
    }

    #[test]
    fn local_freeness_guard() {
        // E(2) with c1 = -1 extends I_p(3) by O: Cayley-Bacharach for O(0)
        // fails at a single point.
        let err = make_bundle(pts(&[[1, 1, 1]]), -1, 2).unwrap_err();
        assert_eq!(err, BundleError::LocalFreenessViolation { twist: 0 });
        let ten = pts(&[
            [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3],
            [2, -1, 5], [3, 7, -2], [5, 1, 4], [-3, 2, 7], [4, 4, 1],
        ]);
        let e = make_bundle(ten, 0, 2).unwrap();
        assert_eq!(e.c2(), 6);
        assert_eq!(e.minimal_section_twist(), 2);
    }

    #[test]
    fn h0_examples() {
        let e = omega1();
        assert_eq!(e.h0(0), 0);
        assert_eq!(e.h0(1), 3);
        assert_eq!(e.h0(e.r() - 1), 0);
    }

    #[test]
    fn omega_table() {
        let t = omega1().cohomology_table(None).unwrap();
        for row in &t.rows {
            assert_eq!(row.h1, usize::from(row.k == -1), "k = {}", row.k);
            assert_eq!(row.chi, row.h0 as i64 - row.h1 as i64 + row.h2 as i64);
        }
        assert_eq!(t.rows.first().unwrap().h1, 0);
        assert_eq!(t.rows.last().unwrap().h1, 0);
    }

    #[test]
    fn two_points_table() {
        let e = make_bundle(pts(&[[1, 0, 0], [0, 1, 0]]), 0, 0).unwrap();
        let t = e.cohomology_table(None).unwrap();
        assert_eq!(t.row(-1).unwrap().h1, 2);
        assert_eq!(t.max_h1(), 2);
        assert!(split00().cohomology_table(None).unwrap().rows.iter().all(|r| r.h1 == 0));
    }

    #[test]
    fn user_window_validation() {
        let e = omega1();
        assert!(e.cohomology_table(Some((-3, 1))).is_ok());
        assert!(matches!(
            e.cohomology_table(Some((-1, 3))),
            Err(BundleError::WindowTooSmall { .. })
        ));
        assert_eq!(e.cohomology_table(Some((2, 1))), Err(BundleError::EmptyWindow(2, 1)));
    }

    #[test]
    fn minimal_twist_examples() {
        assert_eq!(omega1().minimal_section_twist(), 1);
        assert_eq!(split00().minimal_section_twist(), 0);
        let six = pts(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]]);
        let e = make_bundle(six, -1, 2).unwrap();
        assert_eq!(e.minimal_section_twist(), 2);
        assert_eq!(e.c2(), 4);
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(split00().splits(), Ok(true));
        assert_eq!(omega1().splits(), Ok(false));
        let e = make_bundle(pts(&[[1, 1, 1]]), -1, 0).unwrap();
        assert_eq!(e.splits(), Ok(false));
    }

    #[test]
    fn resolution_examples() {
        let p = omega1().bundle_resolution();
        assert_eq!(p, Presentation::new(vec![-1, -1, -1], vec![-2]));
        let e = make_bundle(pts(&[[1, 0, 0], [0, 1, 0]]), -1, 1).unwrap();
        assert_eq!(e.bundle_resolution(), Presentation::new(vec![-1, -1, -2], vec![-3]));
        let e = make_bundle(pts(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 0, 1).unwrap();
        assert_eq!(e.bundle_resolution(), Presentation::new(vec![-1; 4], vec![-2, -2]));
    }

    #[test]
    fn dual_presentation_examples() {
        assert_eq!(omega1().dual_presentation(), Presentation::new(vec![0, 0, 0], vec![1]));
        let e = make_bundle(pts(&[[1, 0, 0], [0, 1, 0]]), 0, 0).unwrap();
        let d = e.dual_presentation();
        assert_eq!(d, Presentation::new(vec![0, 1, 2], vec![3]));
        assert_eq!(d.middle.len(), d.back.len() + 2);
    }

    #[test]
    fn h1_module_examples() {
        let m = omega1().h1_module().unwrap();
        assert_eq!(m.support, Some((-1, -1)));
        assert_eq!(m.dims, vec![1]);
        assert!(m.gens_plus_two);
        let m = split00().h1_module().unwrap();
        assert_eq!(m.support, None);
        assert!(m.gens_plus_two);
        let four = pts(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        let e = make_bundle(four, 0, 0).unwrap();
        let m = e.h1_module().unwrap();
        let (lo, hi) = m.support.unwrap();
        assert!(lo <= -1 && -1 <= hi);
        assert_eq!(m.dims[(-1 - lo) as usize], 4);
        assert_eq!(*m.dims.iter().max().unwrap(), 4);
    }

    #[test]
    fn text_table_has_three_cohomology_rows() {
        let text = omega1().cohomology_table(None).unwrap().to_text();
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().nth(2).unwrap().starts_with("h0"));
    }
}

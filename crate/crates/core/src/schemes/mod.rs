//! Zero-dimensional subschemes of the projective plane made of reduced points
//! and curvilinear arcs, and the linear conditions they impose on forms.

mod file;
mod random;

pub use file::{SchemeFile, SchemeFileArc};
pub use random::{random_scheme, Constraint, SchemeSpec, MAX_RANDOM_DEGREE, MAX_RESAMPLES};

use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::linalg::{self, DenseMatrix};

/// Arcs longer than this are never needed (total degree stays small).
pub const MAX_ARC_LENGTH: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("point coordinates are all zero")]
    ZeroPoint,
    #[error("arc length {0} outside 2..={MAX_ARC_LENGTH}")]
    ArcLength(usize),
    #[error("arc direction is proportional to its base point")]
    DegenerateArc,
    #[error("two components share the base point {0}")]
    DuplicateBase(String),
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
    #[error("component {0} is an arc, not a reduced point")]
    ComponentIsArc(usize),
    #[error("component {0} is a reduced point, not an arc")]
    ComponentIsPoint(usize),
    #[error("invalid random scheme request: {0}")]
    BadRequest(String),
    #[error("no admissible configuration after {0} resamples")]
    RetriesExhausted(usize),
    #[error("field mismatch: file declares {file:?}, caller expects {expected:?}")]
    FieldMismatch {
        file: crate::field::FieldSpec,
        expected: crate::field::FieldSpec,
    },
    #[error("malformed scheme file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `(d+1)(d+2)/2`, the dimension of degree-`d` forms; zero for `d < 0`.
pub fn forms_dim(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        let d = d as usize;
        (d + 1) * (d + 2) / 2
    }
}

/// Exponent triples of degree `d`, graded-lex with `x` heaviest.
pub fn monomial_basis(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(forms_dim(d as i64));
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Index of `[a, b, c]` in [`monomial_basis`] of degree `a + b + c`.
pub fn monomial_index(e: [usize; 3]) -> usize {
    let d = e[0] + e[1] + e[2];
    let k = d - e[0];
    k * (k + 1) / 2 + (k - e[1])
}

/// A point of the plane, normalized so its last nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint<F: Field> {
    coords: [F::Elem; 3],
}

impl<F: Field> ProjPoint<F> {
    pub fn new(field: &F, coords: [F::Elem; 3]) -> Result<Self, SchemeError> {
        let j = chart_index(field, &coords).ok_or(SchemeError::ZeroPoint)?;
        let inv = field.inv(&coords[j]).expect("nonzero");
        Ok(ProjPoint {
            coords: coords.map(|c| field.mul(&c, &inv)),
        })
    }

    pub fn coords(&self) -> &[F::Elem; 3] {
        &self.coords
    }

    /// The coordinate equal to 1; the affine chart the point lives in.
    pub fn chart(&self, field: &F) -> usize {
        chart_index(field, &self.coords).expect("normalized point is nonzero")
    }
}

fn chart_index<F: Field>(field: &F, c: &[F::Elem; 3]) -> Option<usize> {
    (0..3).rev().find(|&i| !field.is_zero(&c[i]))
}

fn proportional<F: Field>(field: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> bool {
    let cross = |i: usize, j: usize| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]));
    field.is_zero(&cross(0, 1)) && field.is_zero(&cross(0, 2)) && field.is_zero(&cross(1, 2))
}

/// The curvilinear scheme cut out by the first `length` Taylor coefficients
/// along `t -> base + t v + t^2 w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc<F: Field> {
    base: ProjPoint<F>,
    v: [F::Elem; 3],
    w: [F::Elem; 3],
    length: usize,
}

impl<F: Field> Arc<F> {
    pub fn new(
        field: &F,
        base: ProjPoint<F>,
        v: [F::Elem; 3],
        w: [F::Elem; 3],
        length: usize,
    ) -> Result<Self, SchemeError> {
        if !(2..=MAX_ARC_LENGTH).contains(&length) {
            return Err(SchemeError::ArcLength(length));
        }
        if proportional(field, base.coords(), &v) {
            return Err(SchemeError::DegenerateArc);
        }
        Ok(Arc { base, v, w, length })
    }

    pub fn base(&self) -> &ProjPoint<F> {
        &self.base
    }

    pub fn v(&self) -> &[F::Elem; 3] {
        &self.v
    }

    pub fn w(&self) -> &[F::Elem; 3] {
        &self.w
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Rows of the arc's conditions on degree-`d` forms: the coefficient of
    /// `t^i`, `i < length`, of the dehomogenized form along the jet.
    fn condition_rows(&self, field: &F, d: usize, length: usize) -> Vec<Vec<F::Elem>> {
        let j = self.base.chart(field);
        let jet: Vec<Series<F>> = (0..3)
            .map(|i| {
                Series::new(
                    field,
                    vec![self.base.coords[i].clone(), self.v[i].clone(), self.w[i].clone()],
                    length,
                )
            })
            .collect();
        let denom_inv = jet[j].inverse(field);
        let affine: Vec<Series<F>> = jet.iter().map(|s| s.mul(field, &denom_inv)).collect();
        let powers: Vec<Vec<Series<F>>> = affine
            .iter()
            .map(|s| {
                let mut p = vec![Series::one(field, length)];
                for k in 1..=d {
                    let next = p[k - 1].mul(field, s);
                    p.push(next);
                }
                p
            })
            .collect();
        let basis = monomial_basis(d);
        let values: Vec<Series<F>> = basis
            .iter()
            .map(|e| powers[0][e[0]].mul(field, &powers[1][e[1]]).mul(field, &powers[2][e[2]]))
            .collect();
        (0..length)
            .map(|i| values.iter().map(|s| s.coeffs[i].clone()).collect())
            .collect()
    }
}

/// Truncated power series in `t` modulo `t^len`.
#[derive(Debug, Clone)]
struct Series<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Series<F> {
    fn new(field: &F, mut coeffs: Vec<F::Elem>, len: usize) -> Self {
        coeffs.resize(len, field.zero());
        Series { coeffs }
    }

    fn one(field: &F, len: usize) -> Self {
        Series::new(field, vec![field.one()], len)
    }

    fn mul(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![field.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (k, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + k] = field.add(&out[i + k], &field.mul(a, b));
            }
        }
        Series { coeffs: out }
    }

    /// Requires a unit constant term.
    fn inverse(&self, field: &F) -> Self {
        let n = self.coeffs.len();
        let c0 = field.inv(&self.coeffs[0]).expect("series has a unit constant term");
        let mut out = vec![field.zero(); n];
        out[0] = c0.clone();
        for k in 1..n {
            let mut acc = field.zero();
            for i in 1..=k {
                acc = field.add(&acc, &field.mul(&self.coeffs[i], &out[k - i]));
            }
            out[k] = field.neg(&field.mul(&acc, &c0));
        }
        Series { coeffs: out }
    }
}

/// Which colength-one subschemes count: reduced points only, or also the
/// one-step truncation of each arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Removal {
    PointsOnly,
    TruncateArcs,
}

/// A zero-dimensional l.c.i. subscheme: reduced points plus curvilinear
/// arcs with pairwise distinct supports. Components are indexed points
/// first, then arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDimScheme<F: Field> {
    field: F,
    points: Vec<ProjPoint<F>>,
    arcs: Vec<Arc<F>>,
}

impl<F: Field> ZeroDimScheme<F> {
    pub fn new(field: F, points: Vec<ProjPoint<F>>, arcs: Vec<Arc<F>>) -> Result<Self, SchemeError> {
        let bases: Vec<&ProjPoint<F>> = points.iter().chain(arcs.iter().map(|a| &a.base)).collect();
        for (i, a) in bases.iter().enumerate() {
            if bases[..i].contains(a) {
                let c: Vec<String> = a.coords.iter().map(|x| field.format(x)).collect();
                return Err(SchemeError::DuplicateBase(format!("({})", c.join(", "))));
            }
        }
        Ok(ZeroDimScheme { field, points, arcs })
    }

    pub fn empty(field: F) -> Self {
        ZeroDimScheme {
            field,
            points: Vec::new(),
            arcs: Vec::new(),
        }
    }

    /// Reduced points given by integer coordinates; convenient for tests.
    pub fn from_int_points(field: F, pts: &[[i64; 3]]) -> Result<Self, SchemeError> {
        let points = pts
            .iter()
            .map(|p| ProjPoint::new(&field, p.map(|x| field.from_i64(x))))
            .collect::<Result<Vec<_>, _>>()?;
        ZeroDimScheme::new(field, points, Vec::new())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn points(&self) -> &[ProjPoint<F>] {
        &self.points
    }

    pub fn arcs(&self) -> &[Arc<F>] {
        &self.arcs
    }

    pub fn degree(&self) -> usize {
        self.points.len() + self.arcs.iter().map(|a| a.length).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_reduced(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.points.len() + self.arcs.len()
    }

    /// Lengths of the components in index order.
    pub fn component_lengths(&self) -> Vec<usize> {
        self.points
            .iter()
            .map(|_| 1)
            .chain(self.arcs.iter().map(|a| a.length))
            .collect()
    }

    /// Matrix of the restriction `H^0(O(d)) -> H^0(O_Z)`; rows follow the
    /// component order, an arc contributing consecutive rows `t^0, t^1, ...`.
    pub fn evaluation_matrix(&self, d: usize) -> DenseMatrix<F::Elem> {
        let cols = forms_dim(d as i64);
        let basis = monomial_basis(d);
        let mut rows = Vec::with_capacity(self.degree());
        for p in &self.points {
            rows.push(basis.iter().map(|e| eval_monomial(&self.field, p.coords(), *e)).collect());
        }
        for a in &self.arcs {
            rows.extend(a.condition_rows(&self.field, d, a.length));
        }
        DenseMatrix::from_rows(cols, rows)
    }

    /// Rank of the evaluation matrix: the number of conditions `Z` imposes
    /// on forms of degree `d`.
    pub fn conditions(&self, d: i64) -> usize {
        if d < 0 || self.is_empty() {
            return 0;
        }
        linalg::rank(&self.field, &self.evaluation_matrix(d as usize))
    }

    /// The subscheme keeping the first `lens[i]` of each component's length.
    /// An arc truncated to length one becomes a reduced point.
    pub fn truncate(&self, lens: &[usize]) -> ZeroDimScheme<F> {
        assert_eq!(lens.len(), self.component_count());
        let np = self.points.len();
        let mut points: Vec<ProjPoint<F>> = self
            .points
            .iter()
            .zip(lens)
            .filter(|(_, &l)| l >= 1)
            .map(|(p, _)| p.clone())
            .collect();
        let mut arcs = Vec::new();
        for (a, &l) in self.arcs.iter().zip(&lens[np..]) {
            assert!(l <= a.length, "truncation longer than the arc");
            match l {
                0 => {}
                1 => points.push(a.base.clone()),
                _ => arcs.push(Arc {
                    length: l,
                    ..a.clone()
                }),
            }
        }
        ZeroDimScheme {
            field: self.field.clone(),
            points,
            arcs,
        }
    }

    /// Drops one reduced point, or with [`Removal::TruncateArcs`] shortens
    /// an arc by one. Degree drops by exactly one.
    pub fn remove_component_point(&self, index: usize, mode: Removal) -> Result<Self, SchemeError> {
        let mut lens = self.component_lengths();
        if index >= lens.len() {
            return Err(SchemeError::NoSuchComponent(index));
        }
        if index >= self.points.len() && mode == Removal::PointsOnly {
            return Err(SchemeError::ComponentIsArc(index));
        }
        lens[index] -= 1;
        Ok(self.truncate(&lens))
    }

    /// Every colength-one subscheme (one per component).
    pub fn colength_one_subschemes(&self) -> Vec<ZeroDimScheme<F>> {
        (0..self.component_count())
            .map(|i| {
                self.remove_component_point(i, Removal::TruncateArcs)
                    .expect("index in range")
            })
            .collect()
    }

    /// Truncation vectors of all subschemes of degree `k`.
    pub fn subschemes_of_degree(&self, k: usize) -> Vec<Vec<usize>> {
        let lens = self.component_lengths();
        let mut out = Vec::new();
        let mut cur = vec![0; lens.len()];
        fill_truncations(&lens, 0, k, &mut cur, &mut out);
        out
    }

    /// Row indices of the evaluation matrix belonging to a truncation.
    pub fn truncation_rows(&self, lens: &[usize]) -> Vec<usize> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for (full, &l) in self.component_lengths().iter().zip(lens) {
            rows.extend(offset..offset + l);
            offset += full;
        }
        rows
    }

    /// Number of degree-`k` subschemes imposing at most `max_conditions`
    /// conditions on forms of degree `d`, i.e. lying on some curve of
    /// degree `d` when `max_conditions < k`.
    pub fn count_special_subschemes(&self, k: usize, d: usize, max_conditions: usize) -> usize {
        if k > self.degree() {
            return 0;
        }
        let m = self.evaluation_matrix(d);
        self.subschemes_of_degree(k)
            .iter()
            .filter(|t| linalg::rank(&self.field, &m.select_rows(&self.truncation_rows(t))) <= max_conditions)
            .count()
    }

    /// Largest degree of a subscheme contained in a line (at least
    /// `min(degree, 2)`: any two points are collinear).
    pub fn max_collinear_degree(&self) -> usize {
        let u = self.degree();
        let mut best = u.min(2);
        for k in 3..=u {
            if self.count_special_subschemes(k, 1, 2) == 0 {
                break;
            }
            best = k;
        }
        best
    }

    /// Whether some degree-`k` subscheme lies on a conic, for `k >= 6`.
    pub fn has_subscheme_on_conic(&self, k: usize) -> bool {
        k >= 6 && self.count_special_subschemes(k, 2, 5) > 0
    }
}

fn fill_truncations(lens: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if i == lens.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let rest: usize = lens[i + 1..].iter().sum();
    for l in 0..=lens[i].min(left) {
        if left - l > rest {
            continue;
        }
        cur[i] = l;
        fill_truncations(lens, i + 1, left - l, cur, out);
    }
    cur[i] = 0;
}

fn eval_monomial<F: Field>(field: &F, c: &[F::Elem; 3], e: [usize; 3]) -> F::Elem {
    let mut acc = field.one();
    for i in 0..3 {
        for _ in 0..e[i] {
            acc = field.mul(&acc, &c[i]);
        }
    }
    acc
}

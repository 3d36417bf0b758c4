//! The JSON scheme file: the one input format shared by every command.
//!
//! ```json
//! { "field": {"type": "fp", "p": 2147483647},
//!   "points": [["1", "0", "1"]],
//!   "arcs": [{"base": ["0","0","1"], "v": ["1","0","0"], "w": ["0","0","0"], "length": 2}] }
//! ```
//!
//! Coordinates are decimal strings; fractions are written `"p/q"`.

use serde::{Deserialize, Serialize};

use super::{Arc, ProjPoint, SchemeError, ZeroDimScheme};
use crate::field::{Field, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFileArc {
    pub base: [String; 3],
    pub v: [String; 3],
    pub w: [String; 3],
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub field: FieldSpec,
    #[serde(default)]
    pub points: Vec<[String; 3]>,
    #[serde(default)]
    pub arcs: Vec<SchemeFileArc>,
}

fn triple<F: Field>(field: &F, s: &[String; 3]) -> Result<[F::Elem; 3], SchemeError> {
    Ok([field.parse(&s[0])?, field.parse(&s[1])?, field.parse(&s[2])?])
}

fn strings<F: Field>(field: &F, c: &[F::Elem; 3]) -> [String; 3] {
    [field.format(&c[0]), field.format(&c[1]), field.format(&c[2])]
}

impl SchemeFile {
    pub fn from_json(text: &str) -> Result<Self, SchemeError> {
        let file: SchemeFile = serde_json::from_str(text).map_err(|e| SchemeError::Malformed(e.to_string()))?;
        file.field.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scheme file serializes")
    }

    /// Builds the scheme over `field`, which must match the declared field.
    pub fn to_scheme<F: Field>(&self, field: &F) -> Result<ZeroDimScheme<F>, SchemeError> {
        if field.spec() != self.field {
            return Err(SchemeError::FieldMismatch {
                file: self.field,
                expected: field.spec(),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| ProjPoint::new(field, triple(field, p)?))
            .collect::<Result<Vec<_>, _>>()?;
        let arcs = self
            .arcs
            .iter()
            .map(|a| {
                let base = ProjPoint::new(field, triple(field, &a.base)?)?;
                Arc::new(field, base, triple(field, &a.v)?, triple(field, &a.w)?, a.length)
            })
            .collect::<Result<Vec<_>, _>>()?;
        ZeroDimScheme::new(field.clone(), points, arcs)
    }

    pub fn from_scheme<F: Field>(z: &ZeroDimScheme<F>) -> Self {
        let field = z.field();
        SchemeFile {
            field: field.spec(),
            points: z.points().iter().map(|p| strings(field, p.coords())).collect(),
            arcs: z
                .arcs()
                .iter()
                .map(|a| SchemeFileArc {
                    base: strings(field, a.base().coords()),
                    v: strings(field, a.v()),
                    w: strings(field, a.w()),
                    length: a.length(),
                })
                .collect(),
        }
    }
}

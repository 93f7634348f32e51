//! JSON input files. Unknown keys are rejected everywhere.
//!
//! Datum values are integer pairs `[x, y]` meaning `x + y√e`; rational
//! values reduce to integers by clearing squares of denominators.

use std::fmt;

use serde::{Deserialize, Serialize};

use hasse_core::galois::GaloisDatum;
use hasse_core::perm::{enumerate_group, Permutation, Subgroup};
use hasse_core::{DatumEntry, EtaleProblem, LocalDatum, Place, QuadraticTower, Result, TowerElement};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub base: String,
    pub factors: Vec<TowerSpec>,
    #[serde(default)]
    pub split_rank: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    pub d: i64,
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<EtaleProblem> {
        if self.base != "Q" {
            return Err(hasse_core::Error::Malformed(format!(
                "unsupported base field {:?}",
                self.base
            )));
        }
        let towers = self
            .factors
            .iter()
            .map(|t| QuadraticTower::new(t.e, t.d))
            .collect::<Result<Vec<_>>>()?;
        EtaleProblem::new(towers, self.split_rank)
    }
}

/// A place as written in files: a prime or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaceSpec(pub Place);

impl Serialize for PlaceSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Place::Infinite => s.serialize_str("inf"),
            Place::Prime(p) => s.serialize_u64(p),
        }
    }
}

impl<'de> Deserialize<'de> for PlaceSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = PlaceSpec;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a prime number or \"inf\"")
            }
            fn visit_u64<E: serde::de::Error>(self, p: u64) -> std::result::Result<PlaceSpec, E> {
                Place::prime(p).map(PlaceSpec).map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, p: i64) -> std::result::Result<PlaceSpec, E> {
                u64::try_from(p)
                    .map_err(|_| E::custom(format!("{p} is not prime")))
                    .and_then(|p| self.visit_u64(p))
            }
            fn visit_str<E: serde::de::Error>(self, s: &str) -> std::result::Result<PlaceSpec, E> {
                if s == "inf" {
                    Ok(PlaceSpec(Place::Infinite))
                } else {
                    Err(E::custom(format!("unknown place {s:?}")))
                }
            }
        }
        d.deserialize_any(Visitor)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub entries: Vec<EntrySpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub factor: usize,
    pub place: PlaceSpec,
    #[serde(default)]
    pub component: u8,
    pub value: Vec<i64>,
}

impl DatumFile {
    pub fn to_datum(&self) -> Result<LocalDatum> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let (x, y) = match e.value.as_slice() {
                [x] => (*x, 0),
                [x, y] => (*x, *y),
                _ => {
                    return Err(hasse_core::Error::Malformed(format!(
                        "value {:?} must be [x] or [x, y]",
                        e.value
                    )))
                }
            };
            if e.component > 1 {
                return Err(hasse_core::Error::Malformed(format!(
                    "component {} is not 0 or 1",
                    e.component
                )));
            }
            entries.push(DatumEntry {
                factor: e.factor,
                place: e.place.0,
                component: e.component,
                value: TowerElement::new(x as i128, y as i128)?,
            });
        }
        Ok(LocalDatum { entries })
    }
}

/// Abstract Galois data. `G` and `H` of each factor are generating sets
/// (a full element list is also a generating set).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisFile {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    pub factors: Vec<GaloisFactorSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisFactorSpec {
    #[serde(rename = "G")]
    pub g: Vec<Vec<u32>>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<u32>>,
}

fn perms(degree: usize, arrays: &[Vec<u32>]) -> Result<Vec<Permutation>> {
    arrays
        .iter()
        .map(|a| {
            if a.len() != degree {
                return Err(hasse_core::Error::Malformed(format!(
                    "image array of length {} for degree {degree}",
                    a.len()
                )));
            }
            Permutation::new(a.clone())
        })
        .collect()
}

impl GaloisFile {
    pub fn to_datum(&self) -> Result<GaloisDatum> {
        let group = enumerate_group(self.degree, &perms(self.degree, &self.generators)?)?;
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let base = Subgroup::generated(&group, &perms(self.degree, &f.g)?)?;
            let top = Subgroup::generated(&group, &perms(self.degree, &f.h)?)?;
            factors.push((base, top));
        }
        GaloisDatum::from_subgroups(group, factors)
    }
}

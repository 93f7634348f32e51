//! Obstruction group of a concrete problem, the homomorphism `ρ` attached to
//! a local datum, and the resulting embedding verdict.
//!
//! The verdict is conditional: it assumes that local (oriented) embeddings
//! exist at every place and that the supplied datum comes from them. Only the
//! checkable conditions on the datum (shape, finite support, total sum zero)
//! are verified here.

use std::collections::BTreeMap;

use crate::arith::is_prime;
use crate::error::{malformed, Error, Result, ViolationReport};
use crate::local::{cor_inv, InvValue, LocalComponent, Place, TowerElement};
use crate::obstruction::{closure, group_of, ClassMap, ObstructionGroup, Partition};
use crate::qfields::{completions, independent_q, v_intersection_empty, Completion, EtaleProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DatumEntry {
    pub factor: usize,
    pub place: Place,
    /// Which copy of `Q_v` at a split place; always 0 elsewhere.
    pub component: u8,
    pub value: TowerElement,
}

/// Finitely supported family `(a_i^v)`; absent entries are the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalDatum {
    pub entries: Vec<DatumEntry>,
}

/// Local invariants `inv_v cor(a_i^v, d_i)` of a datum, keyed by factor and place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalInvariants {
    values: BTreeMap<(usize, Place), InvValue>,
}

impl LocalInvariants {
    pub fn total(&self) -> InvValue {
        self.values.values().copied().sum()
    }

    pub fn get(&self, factor: usize, place: Place) -> InvValue {
        self.values.get(&(factor, place)).copied().unwrap_or_default()
    }

    /// `Σ_v Σ_i c(i) inv_v cor(a_i^v, d_i)`.
    pub fn pair_with(&self, c: &ClassMap) -> InvValue {
        self.values
            .iter()
            .filter(|((i, _), _)| c.values[*i])
            .map(|(_, &x)| x)
            .sum()
    }

    fn violation(&self) -> ViolationReport {
        let mut per_place: BTreeMap<Place, InvValue> = BTreeMap::new();
        for (&(_, v), &x) in &self.values {
            *per_place.entry(v).or_default() += x;
        }
        ViolationReport {
            total: self.total(),
            places: per_place
                .into_iter()
                .filter(|(_, x)| x.is_half())
                .map(|(v, _)| v)
                .collect(),
        }
    }
}

fn assemble(p: &EtaleProblem, a: &LocalDatum) -> Result<BTreeMap<(usize, Place), LocalComponent>> {
    let mut out: BTreeMap<(usize, Place), LocalComponent> = BTreeMap::new();
    let mut filled: BTreeMap<(usize, Place, u8), ()> = BTreeMap::new();
    for entry in &a.entries {
        let tower = p
            .factors()
            .get(entry.factor)
            .ok_or_else(|| malformed(format!("entry refers to factor {} of {}", entry.factor, p.len())))?;
        if let Place::Prime(q) = entry.place {
            if !is_prime(q) {
                return Err(malformed(format!("place {q} is not prime")));
            }
        }
        if filled
            .insert((entry.factor, entry.place, entry.component), ())
            .is_some()
        {
            return Err(malformed(format!(
                "duplicate entry for factor {} at {} component {}",
                entry.factor, entry.place, entry.component
            )));
        }
        let shape = completions(tower, entry.place)?;
        let key = (entry.factor, entry.place);
        if shape == [Completion::Base, Completion::Base] {
            if entry.component > 1 {
                return Err(malformed(format!("component {} at a split place", entry.component)));
            }
            if entry.value.y != 0 {
                return Err(malformed(format!(
                    "split component at {} must be a rational integer",
                    entry.place
                )));
            }
            let slot = out.entry(key).or_insert(LocalComponent::Split([1, 1]));
            if let LocalComponent::Split(xs) = slot {
                xs[entry.component as usize] = entry.value.x;
            }
        } else {
            if entry.component != 0 {
                return Err(malformed(format!(
                    "component {} given for factor {} at {}, where F does not split",
                    entry.component, entry.factor, entry.place
                )));
            }
            out.insert(key, LocalComponent::Field(entry.value));
        }
    }
    Ok(out)
}

/// Structural checks plus every local invariant, without the sum condition.
pub fn local_invariants(p: &EtaleProblem, a: &LocalDatum) -> Result<LocalInvariants> {
    let mut values = BTreeMap::new();
    for ((i, v), component) in assemble(p, a)? {
        values.insert((i, v), cor_inv(&p.factors()[i], &component, v)?);
    }
    Ok(LocalInvariants { values })
}

/// Accepts a datum whose local invariants sum to zero over all places and factors.
pub fn validate_datum(p: &EtaleProblem, a: &LocalDatum) -> Result<LocalInvariants> {
    let inv = local_invariants(p, a)?;
    if inv.total().is_half() {
        return Err(Error::Violation(inv.violation()));
    }
    Ok(inv)
}

/// Classes of the relation generated by `V_i ∩ V_j ≠ ∅`.
pub fn obstruction_partition(p: &EtaleProblem) -> Result<Partition> {
    let f = p.factors();
    let mut related = Vec::new();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if !v_intersection_empty(&f[i], &f[j])? {
                related.push((i, j));
            }
        }
    }
    closure(f.len(), &related)
}

/// Classes of the relation generated by field independence.
pub fn independence_partition(p: &EtaleProblem) -> Result<Partition> {
    let f = p.factors();
    let mut related = Vec::new();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if independent_q(&f[i], &f[j])? {
                related.push((i, j));
            }
        }
    }
    closure(f.len(), &related)
}

pub fn obstruction_group(p: &EtaleProblem) -> Result<ObstructionGroup> {
    Ok(group_of(&obstruction_partition(p)?))
}

pub fn independence_group(p: &EtaleProblem) -> Result<ObstructionGroup> {
    Ok(group_of(&independence_partition(p)?))
}

/// `ρ_a(c)` for a class-constant map `c`.
pub fn rho(p: &EtaleProblem, a: &LocalDatum, c: &ClassMap) -> Result<InvValue> {
    let partition = obstruction_partition(p)?;
    if !c.is_constant_on(&partition) {
        return Err(malformed("map is not constant on the obstruction classes"));
    }
    Ok(validate_datum(p, a)?.pair_with(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Existence {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub group: ObstructionGroup,
    pub indep_group: ObstructionGroup,
    pub rho_on_basis: Option<Vec<InvValue>>,
    pub exists: Existence,
    /// Smallest basis element on which `ρ` is nonzero.
    pub witness: Option<ClassMap>,
}

/// Embedding verdict, assuming local embeddings exist at every place.
pub fn decide(p: &EtaleProblem, a: Option<&LocalDatum>) -> Result<Verdict> {
    let group = obstruction_group(p)?;
    let indep_group = independence_group(p)?;
    let rho_on_basis = match a {
        Some(a) => {
            let inv = validate_datum(p, a)?;
            Some(group.basis.iter().map(|c| inv.pair_with(c)).collect::<Vec<_>>())
        }
        None => None,
    };
    let (exists, witness) = if group.is_trivial() {
        (Existence::Yes, None)
    } else {
        match &rho_on_basis {
            None => (Existence::Unknown, None),
            Some(values) => match values.iter().position(|x| x.is_half()) {
                Some(k) => (Existence::No, Some(group.basis[k].clone())),
                None => (Existence::Yes, None),
            },
        }
    };
    Ok(Verdict {
        group,
        indep_group,
        rho_on_basis,
        exists,
        witness,
    })
}

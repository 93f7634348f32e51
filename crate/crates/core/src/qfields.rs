//! Towers `Q ⊂ F = Q(√e) ⊂ E = F(√d)` (or `F = Q`) with rational `d`, and
//! exact decisions about the sets `V_i` of places where some place of `F`
//! is inert or ramified in `E`.

use crate::arith::{self, DEFAULT_FACTOR_BOUND};
use crate::error::{malformed, Error, Result};
use crate::galois::GaloisDatum;
use crate::gf2::{functional_exists, rank, BitRow, Gf2Basis, SquareClassSpace};
use crate::local::{local_square, Place};
use crate::perm::{enumerate_group, Permutation, Subgroup};

/// Default cap on the F2-rank of all square classes in `to_galois`.
pub const DEFAULT_MAX_GALOIS_RANK: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticTower {
    e: Option<i64>,
    d: i64,
}

impl QuadraticTower {
    /// Both parameters must be squarefree, different from 0 and 1, and `d ≠ e`.
    pub fn new(e: Option<i64>, d: i64) -> Result<Self> {
        let check = |name: &str, n: i64| -> Result<()> {
            if n == 0 || n == 1 {
                return Err(malformed(format!("{name} = {n} does not give a quadratic extension")));
            }
            if !arith::is_squarefree(n as i128, DEFAULT_FACTOR_BOUND)? {
                return Err(malformed(format!("{name} = {n} is not squarefree")));
            }
            Ok(())
        };
        if let Some(e) = e {
            check("e", e)?;
            if e == d {
                return Err(malformed(format!("d = e = {d}: E would not be a field")));
            }
        }
        check("d", d)?;
        Ok(QuadraticTower { e, d })
    }

    pub fn e(&self) -> Option<i64> {
        self.e
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Square classes generating `E` over Q.
    pub fn generators(&self) -> Vec<i128> {
        self.e.into_iter().chain([self.d]).map(i128::from).collect()
    }

    /// Primes that can ramify somewhere in the tower, plus 2.
    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        let mut ps = vec![2];
        for n in self.generators() {
            ps.extend(arith::prime_divisors(n, DEFAULT_FACTOR_BOUND)?);
        }
        ps.sort_unstable();
        ps.dedup();
        Ok(ps)
    }
}

/// The field factors `E_i` stable under the involution, plus the number of
/// swapped pairs (which never affects the obstruction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleProblem {
    factors: Vec<QuadraticTower>,
    split_rank: usize,
}

impl EtaleProblem {
    pub fn new(factors: Vec<QuadraticTower>, split_rank: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(malformed("problem has no involution-stable factors"));
        }
        Ok(EtaleProblem { factors, split_rank })
    }

    pub fn factors(&self) -> &[QuadraticTower] {
        &self.factors
    }

    pub fn split_rank(&self) -> usize {
        self.split_rank
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Shape of one factor of `F ⊗ Q_v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completion {
    /// `Q_v` itself.
    Base,
    /// `Q_v(√e)`, unramified or ramified.
    Quadratic,
    /// `C` over the real place.
    Complex,
}

pub fn completions(t: &QuadraticTower, v: Place) -> Result<Vec<Completion>> {
    Ok(match t.e {
        None => vec![Completion::Base],
        Some(e) => {
            if local_square(e as i128, v)? {
                vec![Completion::Base, Completion::Base]
            } else if v == Place::Infinite {
                vec![Completion::Complex]
            } else {
                vec![Completion::Quadratic]
            }
        }
    })
}

/// `v ∈ V`: `d` is a nonsquare in some completion of `F` at `v`.
pub fn v_contains(t: &QuadraticTower, v: Place) -> Result<bool> {
    let d = t.d as i128;
    for w in completions(t, v)? {
        let inert_or_ramified = match w {
            Completion::Base => !local_square(d, v)?,
            // Q_v^× ∩ (Q_v(√e)^×)² = (Q_v^×)² ∪ e·(Q_v^×)²
            Completion::Quadratic => {
                let e = t.e.expect("quadratic completion needs e") as i128;
                !(local_square(d, v)? || local_square(d * e, v)?)
            }
            Completion::Complex => false,
        };
        if inert_or_ramified {
            return Ok(true);
        }
    }
    Ok(false)
}

fn pair_space(t1: &QuadraticTower, t2: &QuadraticTower) -> Result<(SquareClassSpace, Vec<BitRow>, Vec<BitRow>)> {
    let values: Vec<i128> = t1.generators().into_iter().chain(t2.generators()).collect();
    let space = SquareClassSpace::new(&values, DEFAULT_FACTOR_BOUND)?;
    let vecs = |t: &QuadraticTower| -> Result<Vec<BitRow>> {
        t.generators()
            .into_iter()
            .map(|n| space.vector(n, DEFAULT_FACTOR_BOUND))
            .collect()
    };
    let (a, b) = (vecs(t1)?, vecs(t2)?);
    Ok((space, a, b))
}

/// `E_1 ⊗ E_2` is a field: the square-class spans of the two towers meet trivially.
pub fn independent_q(t1: &QuadraticTower, t2: &QuadraticTower) -> Result<bool> {
    let (_, a, b) = pair_space(t1, t2)?;
    let both: Vec<BitRow> = a.iter().chain(&b).cloned().collect();
    Ok(rank(&both) == rank(&a) + rank(&b))
}

/// Character conditions for an unramified odd `p` to lie in `V`:
/// `χ_e(p) = +1` when `e` is present and `χ_d(p) = −1`. A `true` target
/// means the character takes the value −1.
fn generic_constraints(t: &QuadraticTower, vectors: &[BitRow]) -> Vec<(BitRow, bool)> {
    match t.e {
        Some(_) => vec![(vectors[0].clone(), false), (vectors[1].clone(), true)],
        None => vec![(vectors[0].clone(), true)],
    }
}

/// Infinitely many unramified primes lie in `V_1 ∩ V_2`, decided by
/// consistency of the joint character conditions.
pub fn generic_system_consistent(t1: &QuadraticTower, t2: &QuadraticTower) -> Result<bool> {
    let (_, a, b) = pair_space(t1, t2)?;
    let mut system = generic_constraints(t1, &a);
    system.extend(generic_constraints(t2, &b));
    Ok(functional_exists(&system))
}

/// Real place, 2 and every prime dividing some `e_i` or `d_i`.
pub fn boundary_places(t1: &QuadraticTower, t2: &QuadraticTower) -> Result<Vec<Place>> {
    let mut ps = t1.bad_primes()?;
    ps.extend(t2.bad_primes()?);
    ps.sort_unstable();
    ps.dedup();
    Ok(std::iter::once(Place::Infinite)
        .chain(ps.into_iter().map(Place::Prime))
        .collect())
}

/// First boundary place lying in both `V_1` and `V_2`.
pub fn common_boundary_place(t1: &QuadraticTower, t2: &QuadraticTower) -> Result<Option<Place>> {
    for v in boundary_places(t1, t2)? {
        if v_contains(t1, v)? && v_contains(t2, v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// `V_1 ∩ V_2 = ∅` over all places of Q.
pub fn v_intersection_empty(t1: &QuadraticTower, t2: &QuadraticTower) -> Result<bool> {
    if generic_system_consistent(t1, t2)? {
        return Ok(false);
    }
    Ok(common_boundary_place(t1, t2)?.is_none())
}

/// The multiquadratic Galois datum of a problem.
pub fn to_galois(p: &EtaleProblem) -> Result<GaloisDatum> {
    to_galois_bounded(p, DEFAULT_MAX_GALOIS_RANK)
}

/// `Ω` is generated by every `√e_i` and `√d_i`, so `G = (Z/2)^k` acting
/// regularly on `2^k` points; `g` moves `√m` iff `⟨g, coords(m)⟩ = 1`.
pub fn to_galois_bounded(p: &EtaleProblem, max_rank: usize) -> Result<GaloisDatum> {
    let values: Vec<i128> = p.factors.iter().flat_map(|t| t.generators()).collect();
    let space = SquareClassSpace::new(&values, DEFAULT_FACTOR_BOUND)?;
    let vectors: Vec<BitRow> = values
        .iter()
        .map(|&n| space.vector(n, DEFAULT_FACTOR_BOUND))
        .collect::<Result<_>>()?;
    let mut basis = Gf2Basis::new();
    for v in &vectors {
        basis.insert(v);
    }
    let k = basis.rank();
    if k > max_rank {
        return Err(Error::SizeLimit(format!(
            "Galois group of rank {k} exceeds the limit {max_rank}"
        )));
    }
    let coords = |n: i128| -> Result<u32> {
        let c = basis
            .coordinates(&space.vector(n, DEFAULT_FACTOR_BOUND)?)
            .expect("in span");
        Ok((0..k).filter(|&j| c.get(j)).fold(0, |m, j| m | 1 << j))
    };
    let degree = 1usize << k;
    let generators: Vec<Permutation> = (0..k)
        .map(|j| Permutation::from_images_unchecked((0..degree as u32).map(|u| u ^ (1 << j)).collect()))
        .collect();
    let group = enumerate_group(degree, &generators)?;
    // in the regular action g sends point 0 to its own label
    let label = |g: &Permutation| g.apply(0);
    let fixes = |g: &Permutation, m: u32| (label(g) & m).count_ones().is_multiple_of(2);
    let mut factors = Vec::with_capacity(p.len());
    for t in &p.factors {
        let d = coords(t.d as i128)?;
        let e = t.e.map(|e| coords(e as i128)).transpose()?;
        let base = Subgroup::filtered(&group, |g| e.is_none_or(|e| fixes(g, e)));
        let top = Subgroup::filtered(&group, |g| e.is_none_or(|e| fixes(g, e)) && fixes(g, d));
        factors.push((base, top));
    }
    GaloisDatum::from_subgroups(group, factors)
}

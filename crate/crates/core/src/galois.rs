//! Splitting behaviour read off from abstract Galois data.
//!
//! A factor `E_i ⊃ F_i` is given by subgroups `H_i ⊂ G_i` of `G = Gal(Ω/K)`
//! with `[G_i : H_i] = 2`. At an unramified place with Frobenius `g`, the
//! places of `F_i` above it are the `⟨g⟩`-orbits on `G/G_i`, and such a place
//! is inert in `E_i` exactly when its local Frobenius falls outside `H_i`.

use crate::error::{malformed, Result};
use crate::obstruction::{closure, Partition};
use crate::perm::{cyclic_orbit, left_cosets, CosetSpace, FiniteGroup, Permutation, Subgroup};

#[derive(Clone, Debug)]
pub struct GaloisFactor {
    /// `G_i`, fixing `F_i`.
    pub base: Subgroup,
    /// `H_i`, fixing `E_i`.
    pub top: Subgroup,
    cosets: CosetSpace,
}

#[derive(Clone, Debug)]
pub struct GaloisDatum {
    ambient: FiniteGroup,
    factors: Vec<GaloisFactor>,
}

impl GaloisDatum {
    /// Validates raw element lists: both must be subgroups of `ambient`,
    /// `H_i ⊂ G_i`, and `[G_i : H_i] = 2`.
    pub fn new(ambient: FiniteGroup, factors: &[(Vec<Permutation>, Vec<Permutation>)]) -> Result<Self> {
        let mut parts = Vec::with_capacity(factors.len());
        for (g, h) in factors {
            parts.push((Subgroup::new(&ambient, g)?, Subgroup::new(&ambient, h)?));
        }
        Self::from_subgroups(ambient, parts)
    }

    pub fn from_subgroups(ambient: FiniteGroup, factors: Vec<(Subgroup, Subgroup)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(malformed("Galois datum has no factors"));
        }
        let mut out = Vec::with_capacity(factors.len());
        for (k, (base, top)) in factors.into_iter().enumerate() {
            if !top.is_subset_of(&base) {
                return Err(malformed(format!("factor {k}: H is not contained in G_i")));
            }
            if base.order() != 2 * top.order() {
                return Err(malformed(format!(
                    "factor {k}: [G_i : H_i] = {}/{} is not 2",
                    base.order(),
                    top.order()
                )));
            }
            let cosets = left_cosets(&ambient, &base)?;
            out.push(GaloisFactor { base, top, cosets });
        }
        Ok(GaloisDatum { ambient, factors: out })
    }

    pub fn ambient(&self) -> &FiniteGroup {
        &self.ambient
    }

    pub fn factors(&self) -> &[GaloisFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn factor(&self, i: usize) -> Result<&GaloisFactor> {
        self.factors
            .get(i)
            .ok_or_else(|| malformed(format!("factor index {i} out of range")))
    }
}

/// Whether an unramified place with Frobenius `g` lies in `V_i`: some place of
/// `F_i` above it is inert in `E_i`.
pub fn detects(datum: &GaloisDatum, g: &Permutation, i: usize) -> Result<bool> {
    let factor = datum.factor(i)?;
    if !datum.ambient.contains(g) {
        return Err(malformed(format!("{g:?} is not in the ambient group")));
    }
    let cosets = &factor.cosets;
    let mut visited = vec![false; cosets.len()];
    for start in 0..cosets.len() {
        if visited[start] {
            continue;
        }
        let (length, frobenius) = cyclic_orbit(g, start, cosets)?;
        if !factor.top.contains(&frobenius) {
            return Ok(true);
        }
        let mut y = cosets.representatives()[start].clone();
        for _ in 0..length {
            visited[cosets.index_of(&y).expect("closed")] = true;
            y = g.compose(&y);
        }
    }
    Ok(false)
}

/// Some Frobenius class is detected by both factors, so by Chebotarev
/// infinitely many unramified places lie in `V_i ∩ V_j`.
pub fn generic_intersection_nonempty(datum: &GaloisDatum, i: usize, j: usize) -> Result<bool> {
    Ok(common_detector(datum, i, j)?.is_some())
}

/// First element (in enumeration order) detected by both factors.
pub fn common_detector(datum: &GaloisDatum, i: usize, j: usize) -> Result<Option<Permutation>> {
    datum.factor(i)?;
    datum.factor(j)?;
    for g in datum.ambient.elements() {
        if detects(datum, g, i)? && detects(datum, g, j)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// `E_i ⊗ E_j` is a field: `[G : H_i ∩ H_j] = [G : H_i][G : H_j]`.
pub fn independent(datum: &GaloisDatum, i: usize, j: usize) -> Result<bool> {
    if i == j {
        return Err(malformed("independence needs two distinct factors"));
    }
    let (hi, hj) = (&datum.factor(i)?.top, &datum.factor(j)?.top);
    let n = datum.ambient.order();
    let meet = hi.intersection(hj).order();
    Ok(n / meet == (n / hi.order()) * (n / hj.order()))
}

/// Classes of the equivalence generated by generically nonempty intersections.
pub fn obstruction_partition(datum: &GaloisDatum) -> Result<Partition> {
    let mut related = Vec::new();
    for i in 0..datum.len() {
        for j in i + 1..datum.len() {
            if generic_intersection_nonempty(datum, i, j)? {
                related.push((i, j));
            }
        }
    }
    closure(datum.len(), &related)
}

/// Partition from the independence relation, read off the Galois data.
pub fn independence_partition(datum: &GaloisDatum) -> Result<Partition> {
    let mut related = Vec::new();
    for i in 0..datum.len() {
        for j in i + 1..datum.len() {
            if independent(datum, i, j)? {
                related.push((i, j));
            }
        }
    }
    closure(datum.len(), &related)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_group;

    struct Klein {
        group: FiniteGroup,
        a: Permutation,
        b: Permutation,
    }

    fn klein() -> Klein {
        let a = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        Klein {
            group: enumerate_group(4, &[a.clone(), b.clone()]).unwrap(),
            a,
            b,
        }
    }

    fn sub(g: &FiniteGroup, gens: &[Permutation]) -> Subgroup {
        Subgroup::generated(g, gens).unwrap()
    }

    /// Two factors over the Klein group: `(G, ⟨h1⟩)` and `(g2, ⟨h2⟩)`.
    fn datum(k: &Klein, f1: (&[Permutation], &[Permutation]), f2: (&[Permutation], &[Permutation])) -> GaloisDatum {
        let g = &k.group;
        GaloisDatum::from_subgroups(
            g.clone(),
            vec![(sub(g, f1.0), sub(g, f1.1)), (sub(g, f2.0), sub(g, f2.1))],
        )
        .unwrap()
    }

    #[test]
    fn detection_examples() {
        let k = klein();
        let all = [k.a.clone(), k.b.clone()];
        let d = datum(
            &k,
            (&all, std::slice::from_ref(&k.b)),
            (&all, std::slice::from_ref(&k.a)),
        );
        assert!(detects(&d, &k.a, 0).unwrap());
        assert!(!detects(&d, &k.b, 0).unwrap());
        for i in 0..2 {
            assert!(!detects(&d, &Permutation::identity(4), i).unwrap());
        }
        assert!(detects(&d, &Permutation::identity(3), 0).is_err());
        assert!(detects(&d, &k.a, 2).is_err());
    }

    #[test]
    fn biquadratic_pair_meets() {
        let k = klein();
        let all = [k.a.clone(), k.b.clone()];
        let d = datum(
            &k,
            (&all, std::slice::from_ref(&k.b)),
            (&all, std::slice::from_ref(&k.a)),
        );
        let ab = k.a.compose(&k.b);
        assert_eq!(common_detector(&d, 0, 1).unwrap(), Some(ab));
        assert!(independent(&d, 0, 1).unwrap());
        assert_eq!(obstruction_partition(&d).unwrap().classes(), &[vec![0, 1]]);
    }

    #[test]
    fn tower_over_its_own_base_is_missed() {
        // s = a flips √5, t = b flips √41; factors Q(√5) and Q(√5, √41)
        let k = klein();
        let (s, t) = (k.a.clone(), k.b.clone());
        let d = datum(
            &k,
            (&[s.clone(), t.clone()], std::slice::from_ref(&t)),
            (std::slice::from_ref(&t), &[]),
        );
        assert!(!generic_intersection_nonempty(&d, 0, 1).unwrap());
        assert!(!generic_intersection_nonempty(&d, 1, 0).unwrap());
        assert_eq!(obstruction_partition(&d).unwrap().classes(), &[vec![0], vec![1]]);
        assert!(!independent(&d, 0, 1).unwrap());
        assert!(generic_intersection_nonempty(&d, 1, 1).unwrap());
        assert!(generic_intersection_nonempty(&d, 0, 0).unwrap());
    }

    #[test]
    fn identical_factors_are_dependent() {
        let k = klein();
        let all = [k.a.clone(), k.b.clone()];
        let d = datum(
            &k,
            (&all, std::slice::from_ref(&k.b)),
            (&all, std::slice::from_ref(&k.b)),
        );
        assert!(!independent(&d, 0, 1).unwrap());
        assert!(independent(&d, 0, 0).is_err());
        assert_eq!(obstruction_partition(&d).unwrap().classes(), &[vec![0, 1]]);
    }

    #[test]
    fn rejects_wrong_index() {
        let k = klein();
        let g = &k.group;
        let err = GaloisDatum::from_subgroups(g.clone(), vec![(sub(g, &[k.a.clone(), k.b.clone()]), sub(g, &[]))]);
        assert!(err.is_err());
        let err = GaloisDatum::new(
            g.clone(),
            &[(
                vec![Permutation::identity(4), k.a.clone()],
                vec![Permutation::identity(4), k.b.clone()],
            )],
        );
        assert!(err.is_err());
        assert!(GaloisDatum::from_subgroups(g.clone(), vec![]).is_err());
    }

    /// Every subgroup pair of index 2 in S4 as a one-factor datum, plus all pairs of them.
    fn s4_factors() -> (FiniteGroup, Vec<(Subgroup, Subgroup)>) {
        let p = |c: &[&[u32]]| Permutation::from_cycles(4, c).unwrap();
        let g = enumerate_group(4, &[p(&[&[0, 1]]), p(&[&[0, 1, 2, 3]])]).unwrap();
        let gens: Vec<Vec<Permutation>> = vec![
            vec![p(&[&[0, 1]]), p(&[&[0, 1, 2, 3]])],
            vec![p(&[&[0, 1, 2]]), p(&[&[0, 1], &[2, 3]])],
            vec![p(&[&[0, 1, 2, 3]]), p(&[&[0, 2]])],
            vec![p(&[&[0, 1]]), p(&[&[2, 3]])],
            vec![p(&[&[0, 1, 2, 3]])],
            vec![p(&[&[0, 1], &[2, 3]]), p(&[&[0, 2], &[1, 3]])],
            vec![p(&[&[0, 1, 2]]), p(&[&[0, 1]])],
            vec![p(&[&[0, 1, 2]])],
            vec![p(&[&[0, 1]])],
            vec![p(&[&[0, 1], &[2, 3]])],
            vec![],
        ];
        let subs: Vec<Subgroup> = gens.iter().map(|x| Subgroup::generated(&g, x).unwrap()).collect();
        let mut pairs = Vec::new();
        for big in &subs {
            for small in &subs {
                if big.order() == 2 * small.order() && small.is_subset_of(big) {
                    pairs.push((big.clone(), small.clone()));
                }
            }
        }
        (g, pairs)
    }

    #[test]
    fn class_function_and_symmetry_on_s4() {
        let (g, pairs) = s4_factors();
        assert!(pairs.len() >= 8);
        let d = GaloisDatum::from_subgroups(g.clone(), pairs.clone()).unwrap();
        for i in 0..d.len() {
            let mut some = false;
            for x in g.elements() {
                let di = detects(&d, x, i).unwrap();
                some |= di;
                for y in g.elements() {
                    let conj = y.compose(x).compose(&y.inverse());
                    assert_eq!(detects(&d, &conj, i).unwrap(), di);
                }
            }
            assert!(some, "factor {i} must be inert somewhere");
            for j in 0..d.len() {
                let ij = generic_intersection_nonempty(&d, i, j).unwrap();
                assert_eq!(ij, generic_intersection_nonempty(&d, j, i).unwrap());
                if i != j && independent(&d, i, j).unwrap() {
                    assert!(ij, "independent factors {i}, {j} must share a detector");
                }
            }
        }
    }
}

//! Finite permutation groups, fully enumerated.
//!
//! Groups here are small (at most a few thousand elements), so every group
//! carries its complete element list together with a hash index. Products
//! compose right to left: `(a * b)(k) = a(b(k))`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{malformed, Error, Result};

/// Default cap on the number of elements `enumerate_group` will produce.
pub const DEFAULT_GROUP_BOUND: usize = 100_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(malformed(format!("image array {images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(malformed(format!("cycle point out of range for degree {degree}")));
                }
                images[a as usize] = b;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k as u32 == x)
    }

    /// `self * rhs`, i.e. `rhs` first.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation {
            images: rhs.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x as usize] = k as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            exp >>= 1;
        }
        acc
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u64 {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

/// A fully enumerated permutation group.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl FiniteGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements, identity first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub fn position(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    fn from_elements(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(k, g)| (g, k)).collect();
        FiniteGroup {
            degree,
            generators,
            elements,
            index,
        }
    }
}

/// Closure of `generators` under composition, breadth-first from the identity.
pub fn enumerate_group(degree: usize, generators: &[Permutation]) -> Result<FiniteGroup> {
    enumerate_group_bounded(degree, generators, DEFAULT_GROUP_BOUND)
}

pub fn enumerate_group_bounded(degree: usize, generators: &[Permutation], bound: usize) -> Result<FiniteGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(malformed(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
    }
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if elements.len() >= bound {
                    return Err(Error::SizeLimit(format!("group exceeds {bound} elements")));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(FiniteGroup::from_elements(degree, generators.to_vec(), elements))
}

/// A subgroup of some ambient group, held as an explicit element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
}

impl Subgroup {
    /// Checks that `elements` is a subgroup of `ambient`: contained,
    /// identity present, closed under products (finiteness gives inverses).
    pub fn new(ambient: &FiniteGroup, elements: &[Permutation]) -> Result<Self> {
        let mut members = HashSet::with_capacity(elements.len());
        let mut list = Vec::with_capacity(elements.len());
        for h in elements {
            if !ambient.contains(h) {
                return Err(malformed(format!("{h:?} is not an element of the ambient group")));
            }
            if members.insert(h.clone()) {
                list.push(h.clone());
            }
        }
        if !members.contains(&Permutation::identity(ambient.degree())) {
            return Err(malformed("subgroup does not contain the identity"));
        }
        for a in &list {
            for b in &list {
                if !members.contains(&a.compose(b)) {
                    return Err(malformed("element set is not closed under composition"));
                }
            }
        }
        Ok(Self::from_parts(list))
    }

    /// Subgroup generated by `generators` inside `ambient`.
    pub fn generated(ambient: &FiniteGroup, generators: &[Permutation]) -> Result<Self> {
        for g in generators {
            if !ambient.contains(g) {
                return Err(malformed(format!("{g:?} is not an element of the ambient group")));
            }
        }
        let h = enumerate_group_bounded(ambient.degree(), generators, ambient.order())?;
        Ok(Self::from_parts(h.elements))
    }

    /// Elements of `ambient` satisfying a predicate that is known to cut out a subgroup.
    pub(crate) fn filtered(ambient: &FiniteGroup, keep: impl Fn(&Permutation) -> bool) -> Self {
        Self::from_parts(ambient.elements().iter().filter(|g| keep(g)).cloned().collect())
    }

    fn from_parts(elements: Vec<Permutation>) -> Self {
        let members = elements.iter().cloned().collect();
        Subgroup { elements, members }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.members.contains(g)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Self::from_parts(self.elements.iter().filter(|g| other.contains(g)).cloned().collect())
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }
}

/// Left cosets `xH` of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    subgroup: Subgroup,
    representatives: Vec<Permutation>,
    coset_of: HashMap<Permutation, usize>,
}

impl CosetSpace {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Index of the coset containing `g`, if `g` lies in the ambient group.
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.coset_of.get(g).copied()
    }
}

/// Partitions `group` into left cosets of `subgroup`; coset 0 is `subgroup` itself.
pub fn left_cosets(group: &FiniteGroup, subgroup: &Subgroup) -> Result<CosetSpace> {
    if !subgroup.elements().iter().all(|h| group.contains(h)) {
        return Err(malformed("subgroup is not contained in the group"));
    }
    let mut coset_of = HashMap::with_capacity(group.order());
    let mut representatives = Vec::new();
    for x in group.elements() {
        if coset_of.contains_key(x) {
            continue;
        }
        let c = representatives.len();
        for h in subgroup.elements() {
            coset_of.insert(x.compose(h), c);
        }
        representatives.push(x.clone());
    }
    Ok(CosetSpace {
        subgroup: subgroup.clone(),
        representatives,
        coset_of,
    })
}

/// Same as [`left_cosets`] but takes the subgroup as a raw element list and validates it.
pub fn left_cosets_of(group: &FiniteGroup, subgroup: &[Permutation]) -> Result<CosetSpace> {
    left_cosets(group, &Subgroup::new(group, subgroup)?)
}

/// Orbit of the coset `start` under left multiplication by `g`.
///
/// Returns the orbit length `f` and the local Frobenius `x⁻¹ g^f x`, where
/// `x` is the stored representative of `start`; the latter lies in the subgroup.
pub fn cyclic_orbit(g: &Permutation, start: usize, cosets: &CosetSpace) -> Result<(usize, Permutation)> {
    let x = cosets
        .representatives
        .get(start)
        .ok_or_else(|| malformed(format!("coset index {start} out of range")))?;
    if cosets.index_of(g).is_none() {
        return Err(malformed(format!("{g:?} is not an element of the group")));
    }
    let mut g_pow = g.clone();
    let mut length = 1;
    loop {
        let y = g_pow.compose(x);
        let c = cosets.index_of(&y).expect("group is closed");
        if c == start {
            break;
        }
        g_pow = g_pow.compose(g);
        length += 1;
    }
    let frobenius = x.inverse().compose(&g_pow).compose(x);
    Ok((length, frobenius))
}

/// `[G : H]`.
pub fn subgroup_index(group: &FiniteGroup, subgroup: &[Permutation]) -> Result<usize> {
    let h = Subgroup::new(group, subgroup)?;
    Ok(group.order() / h.order())
}

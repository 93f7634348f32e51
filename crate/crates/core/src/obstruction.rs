//! Obstruction groups: maps `I → Z/2` constant on the classes of an
//! equivalence relation, modulo the constant maps.

use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;

use crate::error::{malformed, Error, Result};

/// Largest index set `s_group_bruteforce` will enumerate.
pub const MAX_BRUTEFORCE_FACTORS: usize = 20;

/// A partition of `{0, …, n−1}`; classes sorted internally and ordered by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    size: usize,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn discrete(size: usize) -> Self {
        Partition {
            size,
            classes: (0..size).map(|i| vec![i]).collect(),
        }
    }

    /// Normalizes arbitrary disjoint classes covering `0..size`.
    pub fn from_classes(size: usize, mut classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; size];
        for class in &mut classes {
            if class.is_empty() {
                return Err(malformed("empty class"));
            }
            class.sort_unstable();
            for &i in class.iter() {
                if i >= size || seen[i] {
                    return Err(malformed(format!("index {i} repeated or out of range")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(malformed("classes do not cover the index set"));
        }
        classes.sort_unstable_by_key(|c| c[0]);
        Ok(Partition { size, classes })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&i))
    }
}

/// A map `I → Z/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassMap {
    pub values: Vec<bool>,
}

impl ClassMap {
    pub fn zero(size: usize) -> Self {
        ClassMap {
            values: vec![false; size],
        }
    }

    pub fn constant(size: usize, bit: bool) -> Self {
        ClassMap {
            values: vec![bit; size],
        }
    }

    pub fn indicator(size: usize, class: &[usize]) -> Self {
        let mut values = vec![false; size];
        for &i in class {
            values[i] = true;
        }
        ClassMap { values }
    }

    pub fn is_constant_on(&self, partition: &Partition) -> bool {
        self.values.len() == partition.size()
            && partition
                .classes()
                .iter()
                .all(|c| c.iter().all(|&i| self.values[i] == self.values[c[0]]))
    }

    pub fn add(&self, other: &ClassMap) -> ClassMap {
        ClassMap {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a ^ b).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionGroup {
    pub partition: Partition,
    pub dimension: usize,
    /// Indicators of every class except the one containing 0.
    pub basis: Vec<ClassMap>,
}

impl ObstructionGroup {
    pub fn is_trivial(&self) -> bool {
        self.dimension == 0
    }

    /// All elements as class-constant maps vanishing on the class of 0.
    pub fn elements(&self) -> Vec<ClassMap> {
        let n = self.partition.size();
        let mut out = vec![ClassMap::zero(n)];
        for b in &self.basis {
            let more: Vec<ClassMap> = out.iter().map(|c| c.add(b)).collect();
            out.extend(more);
        }
        out
    }
}

/// Finest partition of `0..size` in which every related pair shares a class.
pub fn closure(size: usize, related: &[(usize, usize)]) -> Result<Partition> {
    let mut uf = UnionFind::<usize>::new(size);
    for &(i, j) in related {
        if i >= size || j >= size {
            return Err(malformed(format!("pair ({i}, {j}) out of range for {size} factors")));
        }
        uf.union(i, j);
    }
    let labels = uf.into_labeling();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; size];
    for (i, &root) in labels.iter().enumerate() {
        if slot[root] == usize::MAX {
            slot[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[root]].push(i);
    }
    Ok(Partition { size, classes })
}

pub fn group_of(partition: &Partition) -> ObstructionGroup {
    let n = partition.size();
    let basis: Vec<ClassMap> = partition
        .classes()
        .iter()
        .skip(1)
        .map(|c| ClassMap::indicator(n, c))
        .collect();
    ObstructionGroup {
        partition: partition.clone(),
        dimension: basis.len(),
        basis,
    }
}

/// Every class of `finer` lies inside a class of `coarser`.
pub fn refines(finer: &Partition, coarser: &Partition) -> Result<bool> {
    if finer.size() != coarser.size() {
        return Err(malformed("partitions of different index sets"));
    }
    Ok(finer.classes().iter().all(|c| {
        let target = coarser.class_of(c[0]);
        c.iter().all(|&i| coarser.class_of(i) == target)
    }))
}

/// The group of sign vectors `x` for which the places avoided by every
/// `x = 0` factor, together with those avoided by every `x = 1` factor,
/// exhaust the universe; taken modulo `(1, …, 1)`.
///
/// Works on finite stand-ins for the sets `V_i`, by direct enumeration.
pub fn s_group_bruteforce(finite_v: &[BTreeSet<usize>], universe: &BTreeSet<usize>) -> Result<ObstructionGroup> {
    let m = finite_v.len();
    if m == 0 {
        return Err(malformed("no factors"));
    }
    if m > MAX_BRUTEFORCE_FACTORS {
        return Err(Error::SizeLimit(format!("{m} factors exceed the enumeration limit")));
    }
    if let Some(i) = finite_v.iter().position(|v| !v.is_subset(universe)) {
        return Err(malformed(format!("set {i} is not inside the universe")));
    }
    let sigma: Vec<BTreeSet<usize>> = finite_v
        .iter()
        .map(|v| universe.difference(v).copied().collect())
        .collect();
    let meet = |x: u32, bit: bool| -> BTreeSet<usize> {
        let mut acc = universe.clone();
        for (i, s) in sigma.iter().enumerate() {
            if (x >> i & 1 == 1) == bit {
                acc = acc.intersection(s).copied().collect();
            }
        }
        acc
    };
    let all_ones = (1u32 << m) - 1;
    let mut s: Vec<u32> = (0..=all_ones)
        .filter(|&x| {
            let covered: BTreeSet<usize> = meet(x, false).union(&meet(x, true)).copied().collect();
            &covered == universe
        })
        .collect();
    for extra in [0, all_ones] {
        if !s.contains(&extra) {
            s.push(extra);
        }
    }
    // i and j share a class iff every element of S agrees on them
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        match classes
            .iter_mut()
            .find(|c| s.iter().all(|&x| (x >> c[0] & 1) == (x >> i & 1)))
        {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    if s.len() != 1 << classes.len() {
        return Err(malformed(format!(
            "S has {} elements, not a group on {} classes",
            s.len(),
            classes.len()
        )));
    }
    let partition = Partition::from_classes(m, classes)?;
    let dimension = s.len().trailing_zeros() as usize - 1;
    let group = group_of(&partition);
    debug_assert_eq!(group.dimension, dimension);
    Ok(group)
}

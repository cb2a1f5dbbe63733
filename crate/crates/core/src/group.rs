//! Finite permutation groups enumerated element by element.
//!
//! Everything here is desk scale: groups are closed by breadth-first search
//! and subgroups are always enumerated in full.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::perm::{PermError, Permutation};

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("no generators given")]
    NoGenerators,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("group closure exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("subgroup generator {0} is not an element of the group")]
    SubgroupNotContained(String),
}

/// A finite permutation group with all of its elements listed.
///
/// `elements[0]` is always the identity. The remaining elements appear in
/// breadth-first order from the identity, right-multiplying by the
/// generators in the order they were given.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generator_indices: Vec<usize>,
    index: HashMap<Permutation, usize>,
}

impl FiniteGroup {
    pub fn generate(gens: &[Permutation], cap: usize) -> Result<Self, GroupError> {
        let first = gens.first().ok_or(GroupError::NoGenerators)?;
        let degree = first.degree();
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()).into());
            }
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in gens {
                let y = x.then(g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let generator_indices = gens.iter().map(|g| index[g]).collect();
        Ok(Self {
            degree,
            elements,
            generator_indices,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Elements of the subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<Vec<Permutation>, GroupError> {
        for g in gens {
            if !self.contains(g) {
                return Err(GroupError::SubgroupNotContained(g.to_cycle_string()));
            }
        }
        if gens.is_empty() {
            return Ok(vec![Permutation::identity(self.degree)]);
        }
        let sub = FiniteGroup::generate(gens, self.order())?;
        Ok(sub.elements)
    }

    /// Conjugacy classes as lists of element indices. Classes are ordered by
    /// their smallest element index, so the identity class `[0]` comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let inverses: Vec<Permutation> = self.elements.iter().map(Permutation::inverse).collect();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let x = &self.elements[start];
            let mut members = Vec::new();
            for (g, g_inv) in self.elements.iter().zip(&inverses) {
                let y = g_inv.then(x).then(g);
                let k = self.index[&y];
                if class_of[k] == usize::MAX {
                    class_of[k] = id;
                    members.push(k);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Right cosets `Hg` of the subgroup generated by `h_gens`.
    pub fn right_cosets(&self, h_gens: &[Permutation]) -> Result<CosetTable, GroupError> {
        let h = self.subgroup(h_gens)?;
        Ok(CosetTable::build(self, &h))
    }

    /// Tests `|[g] ∩ H1| = |[g] ∩ H2|` for every conjugacy class and returns
    /// the per-class count table either way.
    pub fn almost_conjugate(
        &self,
        h1_gens: &[Permutation],
        h2_gens: &[Permutation],
    ) -> Result<(bool, Vec<ClassCount>), GroupError> {
        let h1: HashSet<Permutation> = self.subgroup(h1_gens)?.into_iter().collect();
        let h2: HashSet<Permutation> = self.subgroup(h2_gens)?.into_iter().collect();
        let table: Vec<ClassCount> = self
            .conjugacy_classes()
            .into_iter()
            .map(|class| {
                let count = |h: &HashSet<Permutation>| {
                    class
                        .iter()
                        .filter(|&&k| h.contains(&self.elements[k]))
                        .count()
                };
                let rep = &self.elements[class[0]];
                ClassCount {
                    representative: rep.to_cycle_string(),
                    element_order: rep.order(),
                    size: class.len(),
                    in_h1: count(&h1),
                    in_h2: count(&h2),
                }
            })
            .collect();
        let ok = table.iter().all(|c| c.in_h1 == c.in_h2);
        Ok((ok, table))
    }
}

/// One row of the almost-conjugacy count table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub representative: String,
    pub element_order: usize,
    pub size: usize,
    pub in_h1: usize,
    pub in_h2: usize,
}

/// Right cosets of a subgroup, numbered by their canonical representative
/// (the lexicographically smallest image array in the coset).
#[derive(Debug, Clone)]
pub struct CosetTable {
    representatives: Vec<Permutation>,
    coset_of: HashMap<Permutation, usize>,
    subgroup_order: usize,
}

impl CosetTable {
    fn build(group: &FiniteGroup, h: &[Permutation]) -> Self {
        let mut assigned: HashMap<Permutation, usize> = HashMap::with_capacity(group.order());
        let mut cosets: Vec<Vec<Permutation>> = Vec::new();
        for g in group.elements() {
            if assigned.contains_key(g) {
                continue;
            }
            let members: Vec<Permutation> = h.iter().map(|x| x.then(g)).collect();
            for m in &members {
                assigned.insert(m.clone(), cosets.len());
            }
            cosets.push(members);
        }
        let mut order: Vec<(Permutation, usize)> = cosets
            .iter()
            .enumerate()
            .map(|(i, c)| (c.iter().min().expect("coset is nonempty").clone(), i))
            .collect();
        order.sort();
        let mut renumber = vec![0; cosets.len()];
        for (new, (_, old)) in order.iter().enumerate() {
            renumber[*old] = new;
        }
        let coset_of = assigned
            .into_iter()
            .map(|(g, c)| (g, renumber[c]))
            .collect();
        Self {
            representatives: order.into_iter().map(|(r, _)| r).collect(),
            coset_of,
            subgroup_order: h.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }

    /// Coset index of a group element; `None` if the element is not in the group.
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.coset_of.get(g).copied()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("generator `{0}` is the identity")]
    IdentityInGenerators(String),
    #[error("generator `{name}` = {element} is an involution; labels must have order at least 3")]
    InvolutionInGenerators { name: String, element: String },
    #[error("generators `{0}` and `{1}` are equal or mutually inverse")]
    DuplicateGenerator(String, String),
    #[error("duplicate label name `{0}`")]
    DuplicateName(String),
    #[error("no generators given")]
    Empty,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The chosen half `C_pos` of a symmetric generating set: one representative
/// per inverse pair, each with a label name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSystem {
    entries: Vec<(String, Permutation)>,
}

impl GeneratorSystem {
    pub fn new(entries: Vec<(String, Permutation)>) -> Result<Self, GeneratorError> {
        let Some((_, first)) = entries.first() else {
            return Err(GeneratorError::Empty);
        };
        let degree = first.degree();
        for (i, (name, z)) in entries.iter().enumerate() {
            if z.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, z.degree()).into());
            }
            if z.is_identity() {
                return Err(GeneratorError::IdentityInGenerators(name.clone()));
            }
            if z.order() == 2 {
                return Err(GeneratorError::InvolutionInGenerators {
                    name: name.clone(),
                    element: z.to_cycle_string(),
                });
            }
            for (other, w) in &entries[..i] {
                if other == name {
                    return Err(GeneratorError::DuplicateName(name.clone()));
                }
                if w == z || *w == z.inverse() {
                    return Err(GeneratorError::DuplicateGenerator(
                        other.clone(),
                        name.clone(),
                    ));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.entries[0].1.degree()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.entries.iter().map(|(_, z)| z)
    }

    pub fn entries(&self) -> &[(String, Permutation)] {
        &self.entries
    }

    /// The group generated by `C_pos` (equivalently by `C = C_pos ∪ C_pos⁻¹`).
    pub fn generate(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        let gens: Vec<Permutation> = self.elements().cloned().collect();
        FiniteGroup::generate(&gens, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn s4() -> FiniteGroup {
        FiniteGroup::generate(&[p("(1 2 3)", 4), p("(1 2 3 4)", 4)], DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn generation_orders() {
        assert_eq!(s4().order(), 24);
        let c3 = FiniteGroup::generate(&[p("(1 2 3)", 3)], 100).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(c3.elements()[0].is_identity());
        assert!(matches!(
            FiniteGroup::generate(&[p("(1 2 3)", 4), p("(1 2 3 4)", 4)], 10),
            Err(GroupError::CapExceeded(10))
        ));
        assert!(matches!(
            FiniteGroup::generate(&[], 10),
            Err(GroupError::NoGenerators)
        ));
    }

    #[test]
    fn generator_system_rejects_bad_labels() {
        let ok = GeneratorSystem::new(vec![
            ("a".into(), p("(1 2 3)", 4)),
            ("b".into(), p("(1 2 3 4)", 4)),
        ]);
        assert!(ok.is_ok());
        assert!(matches!(
            GeneratorSystem::new(vec![("t".into(), p("(1 2)", 4))]),
            Err(GeneratorError::InvolutionInGenerators { .. })
        ));
        assert!(matches!(
            GeneratorSystem::new(vec![("e".into(), p("()", 4))]),
            Err(GeneratorError::IdentityInGenerators(_))
        ));
        assert!(matches!(
            GeneratorSystem::new(vec![
                ("a".into(), p("(1 2 3)", 4)),
                ("b".into(), p("(1 3 2)", 4)),
            ]),
            Err(GeneratorError::DuplicateGenerator(..))
        ));
    }

    #[test]
    fn s4_classes() {
        let g = s4();
        let classes = g.conjugacy_classes();
        assert_eq!(classes[0], vec![0]);
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let c3 = FiniteGroup::generate(&[p("(1 2 3)", 3)], 100).unwrap();
        assert_eq!(c3.conjugacy_classes().len(), 3);
    }

    #[test]
    fn s4_cosets_of_s3() {
        let g = s4();
        let t = g.right_cosets(&[p("(1 2)", 4), p("(2 3)", 4)]).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.subgroup_order() * t.len(), g.order());
        let reps: Vec<String> = t
            .representatives()
            .iter()
            .map(|r| r.to_cycle_string())
            .collect();
        assert_eq!(reps, vec!["()", "(3 4)", "(2 3 4)", "(1 2 3 4)"]);
        let whole = g
            .right_cosets(&[p("(1 2 3)", 4), p("(1 2 3 4)", 4)])
            .unwrap();
        assert_eq!(whole.len(), 1);
    }

    #[test]
    fn subgroup_outside_group_is_rejected() {
        let a4 = FiniteGroup::generate(&[p("(1 2 3)", 4), p("(2 3 4)", 4)], 100).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(matches!(
            a4.right_cosets(&[p("(1 2)", 4)]),
            Err(GroupError::SubgroupNotContained(_))
        ));
    }

    #[test]
    fn almost_conjugacy_distinguishes_involution_types() {
        let g = s4();
        let (ok, table) = g
            .almost_conjugate(&[p("(1 2)", 4)], &[p("(1 2)(3 4)", 4)])
            .unwrap();
        assert!(!ok);
        assert_eq!(table.iter().map(|c| c.in_h1).sum::<usize>(), 2);
        assert_eq!(table.iter().map(|c| c.in_h2).sum::<usize>(), 2);
        let h = [p("(1 2)", 4), p("(2 3)", 4)];
        assert!(g.almost_conjugate(&h, &h).unwrap().0);
    }
}

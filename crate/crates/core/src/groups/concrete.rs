use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use super::law::{Element, GroupLaw};
use super::GroupError;

/// Default enumeration cap, `10^7` elements.
pub const DEFAULT_CAP: usize = 10_000_000;

/// A fully enumerated finite group.
///
/// Elements are addressed by index into the element universe; index 0 is
/// always the identity. The enumeration order is the breadth-first order
/// from the recorded generators, which makes every derived listing
/// deterministic.
pub struct ConcreteGroup {
    descriptor: String,
    law: Arc<dyn GroupLaw>,
    elements: Vec<Element>,
    index: HashMap<Element, u32>,
    generators: Vec<u32>,
    orders: OnceLock<Vec<u64>>,
}

impl fmt::Debug for ConcreteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConcreteGroup")
            .field("descriptor", &self.descriptor)
            .field("order", &self.elements.len())
            .finish()
    }
}

/// A subgroup of a [`ConcreteGroup`], as a sorted list of element indices
/// plus a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: Vec<bool>,
    generators: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn contains(&self, i: u32) -> bool {
        self.mask.get(i as usize).copied().unwrap_or(false)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

impl ConcreteGroup {
    /// Breadth-first closure of `generators` under right multiplication.
    pub fn generate(
        descriptor: impl Into<String>,
        law: Arc<dyn GroupLaw>,
        generators: Vec<Element>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let descriptor = descriptor.into();
        let identity = law.identity();
        for g in &generators {
            if !law.is_canonical(g) {
                return Err(GroupError::NotCanonical(format!("{g:?}")));
            }
        }
        let mut gens: Vec<Element> = Vec::new();
        for g in generators {
            if g != identity && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0u32);
        let mut cursor = 0;
        while cursor < elements.len() {
            for g in &gens {
                let prod = law.multiply(&elements[cursor], g);
                if !index.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded {
                            descriptor,
                            cap,
                            predicted: None,
                        });
                    }
                    index.insert(prod.clone(), elements.len() as u32);
                    elements.push(prod);
                }
            }
            cursor += 1;
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(Self {
            descriptor,
            law,
            elements,
            index,
            generators,
            orders: OnceLock::new(),
        })
    }

    pub fn trivial(descriptor: impl Into<String>, law: Arc<dyn GroupLaw>) -> Self {
        Self::generate(descriptor, law, Vec::new(), 1).expect("trivial group fits any cap")
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn renamed(mut self, descriptor: impl Into<String>) -> Self {
        self.descriptor = descriptor.into();
        self
    }

    pub fn law(&self) -> &Arc<dyn GroupLaw> {
        &self.law
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn element(&self, i: u32) -> &[u32] {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, g: &[u32]) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let prod = self.law.multiply(self.element(a), self.element(b));
        self.index[&prod]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.index[&self.law.invert(self.element(a))]
    }

    /// `b^{-1} a b`.
    pub fn conjugate(&self, a: u32, b: u32) -> u32 {
        let law = &self.law;
        let t = law.multiply(&law.invert(self.element(b)), self.element(a));
        self.index[&law.multiply(&t, self.element(b))]
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = self.law.identity();
        let mut base = self.element(a).to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.law.multiply(&acc, &base);
            }
            base = self.law.multiply(&base, &base);
            e >>= 1;
        }
        self.index[&acc]
    }

    /// Order of an arbitrary element word; errors unless the word is a
    /// canonical member of this group.
    pub fn element_order(&self, g: &[u32]) -> Result<u64, GroupError> {
        if !self.law.is_canonical(g) {
            return Err(GroupError::NotCanonical(format!("{g:?}")));
        }
        let i = self
            .index_of(g)
            .ok_or_else(|| GroupError::NotAMember(format!("{g:?}")))?;
        Ok(self.order_of(i))
    }

    pub fn order_of(&self, i: u32) -> u64 {
        self.orders()[i as usize]
    }

    fn compute_order(&self, g: &[u32]) -> u64 {
        let identity = &self.elements[0];
        let mut x = g.to_vec();
        let mut k = 1u64;
        while &x != identity {
            x = self.law.multiply(&x, g);
            k += 1;
        }
        k
    }

    /// Orders of all elements, indexed like the element universe.
    pub fn orders(&self) -> &[u64] {
        self.orders.get_or_init(|| {
            self.elements
                .par_iter()
                .map(|g| self.compute_order(g))
                .collect()
        })
    }

    pub fn all(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order() as u32).collect(),
            mask: vec![true; self.order()],
            generators: self.generators.clone(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.closure(&[])
    }

    /// The subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut sub = Subgroup {
            members: vec![0],
            mask,
            generators: Vec::new(),
        };
        for &g in gens {
            sub = self.extend(sub, g);
        }
        sub
    }

    /// `⟨sub, g⟩`, enumerated as a union of right cosets of `sub`
    /// (Dimino's method): each coset costs `|sub|` products, and only coset
    /// representatives are multiplied by the generators.
    pub fn extend(&self, sub: Subgroup, g: u32) -> Subgroup {
        let Subgroup {
            mut members,
            mut mask,
            mut generators,
        } = sub;
        if mask[g as usize] {
            return Subgroup {
                members,
                mask,
                generators,
            };
        }
        generators.push(g);
        let base = members.clone();
        let mut reps = vec![self.identity()];
        let add_coset = |r: u32, members: &mut Vec<u32>, mask: &mut [bool]| {
            for &h in &base {
                let x = self.mul(h, r);
                mask[x as usize] = true;
                members.push(x);
            }
        };
        add_coset(g, &mut members, &mut mask);
        reps.push(g);
        let mut i = 0;
        while i < reps.len() {
            for &s in &generators {
                let x = self.mul(reps[i], s);
                if !mask[x as usize] {
                    add_coset(x, &mut members, &mut mask);
                    reps.push(x);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            generators,
        }
    }

    /// Builds a subgroup from an explicit member list, checking closure.
    pub fn subgroup_from_members(&self, members: &[u32]) -> Result<Subgroup, GroupError> {
        let mut listed = members.to_vec();
        listed.sort_unstable();
        listed.dedup();
        let sub = self.closure(&self.small_generating_set(&listed));
        if sub.members() != listed.as_slice() {
            return Err(GroupError::NotASubgroup);
        }
        Ok(sub)
    }

    /// Greedy generating set: keeps an element whenever it lies outside the
    /// closure of those kept so far.
    pub fn small_generating_set(&self, members: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for &m in members {
            if !current.contains(m) {
                gens.push(m);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// `sub` is normalized by every generator of the group.
    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        let sub_gens: &[u32] = if sub.generators.is_empty() && sub.order() > 1 {
            &sub.members
        } else {
            &sub.generators
        };
        self.generators
            .iter()
            .all(|&g| sub_gens.iter().all(|&h| sub.contains(self.conjugate(h, g))))
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[u32]) -> Subgroup {
        self.normal_closure_in(&self.all(), elems)
    }

    /// Conjugacy class of `x`, as a membership mask.
    pub fn conjugacy_class(&self, x: u32) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[x as usize] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &g in &self.generators {
                let c = self.conjugate(y, g);
                if !mask[c as usize] {
                    mask[c as usize] = true;
                    queue.push_back(c);
                }
            }
        }
        mask
    }

    /// Elements commuting with every generator of `sub`.
    pub fn centralizer(&self, sub: &Subgroup) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32)
            .into_par_iter()
            .filter(|&x| {
                sub.generators
                    .iter()
                    .all(|&h| self.mul(x, h) == self.mul(h, x))
            })
            .collect();
        self.closure(&self.small_generating_set(&members))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.all())
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Cyclic iff some element has order `|G|`.
    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.orders().contains(&n)
    }

    /// The subgroup as a group in its own right, sharing the law.
    pub fn subgroup_group(&self, sub: &Subgroup, descriptor: impl Into<String>) -> ConcreteGroup {
        let gens = sub
            .generators
            .iter()
            .map(|&g| self.element(g).to_vec())
            .collect();
        ConcreteGroup::generate(descriptor, self.law.clone(), gens, usize::MAX)
            .expect("a subgroup never exceeds its parent")
    }

    /// `parent / normal`, with cosets numbered by first appearance in the
    /// parent's enumeration order.
    pub fn quotient(
        parent: Arc<ConcreteGroup>,
        normal: &Subgroup,
        descriptor: impl Into<String>,
    ) -> Result<ConcreteGroup, GroupError> {
        if !parent.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let n = parent.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &k in normal.members() {
                coset_of[parent.mul(g, k) as usize] = id;
            }
        }
        let law = Arc::new(QuotientLaw {
            parent: parent.clone(),
            coset_of,
            reps,
        });
        let gens = parent
            .generators
            .iter()
            .map(|&g| vec![law.coset_of[g as usize]])
            .collect();
        let expected = n / normal.order();
        let q = ConcreteGroup::generate(descriptor, law, gens, expected)?;
        debug_assert_eq!(q.order(), expected);
        Ok(q)
    }

    /// Image of a parent element when `self` was built by
    /// [`ConcreteGroup::quotient`].
    pub fn project(&self, parent_index: u32) -> Option<u32> {
        let q = self.law.as_quotient()?;
        self.index_of(&[*q.coset_of.get(parent_index as usize)?])
    }
}

/// Multiplication on cosets of a normal subgroup, via representatives.
#[derive(Debug)]
pub struct QuotientLaw {
    parent: Arc<ConcreteGroup>,
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

impl GroupLaw for QuotientLaw {
    fn width(&self) -> usize {
        1
    }
    fn identity(&self) -> Element {
        vec![self.coset_of[0]]
    }
    fn multiply(&self, a: &[u32], b: &[u32]) -> Element {
        let x = self
            .parent
            .mul(self.reps[a[0] as usize], self.reps[b[0] as usize]);
        vec![self.coset_of[x as usize]]
    }
    fn invert(&self, a: &[u32]) -> Element {
        vec![self.coset_of[self.parent.inv(self.reps[a[0] as usize]) as usize]]
    }
    fn is_canonical(&self, a: &[u32]) -> bool {
        a.len() == 1 && (a[0] as usize) < self.reps.len()
    }
    fn as_quotient(&self) -> Option<&QuotientLaw> {
        Some(self)
    }
}

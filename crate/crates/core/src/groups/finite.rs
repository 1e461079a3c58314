use std::collections::VecDeque;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::abelian::AbelianGroup;
use super::GroupError;

/// A finite group given by its multiplication table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<usize>,
    inverse: Vec<usize>,
    order: usize,
    names: Vec<String>,
    generators: Vec<usize>,
}

/// Input description of a group, as found in configuration files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Dihedral(usize),
    Abelian(Vec<u64>),
    Cayley(Vec<Vec<usize>>),
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    match spec {
        GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n),
        GroupSpec::Abelian(orders) => Ok(AbelianGroup::new(orders.clone())?.to_finite_group()),
        GroupSpec::Cayley(rows) => FiniteGroup::from_cayley(rows.clone(), None),
    }
}

impl FiniteGroup {
    /// Validates a multiplication table: Latin square, identity at index 0,
    /// associativity over every triple.
    pub fn from_cayley(rows: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::RaggedTable { row: a, len: row.len(), order });
            }
            let mut seen = vec![false; order];
            for (b, &c) in row.iter().enumerate() {
                if c >= order || seen[c] {
                    return Err(GroupError::NotLatin { row: a, col: b });
                }
                seen[c] = true;
            }
            table.extend_from_slice(row);
        }
        for b in 0..order {
            let mut seen = vec![false; order];
            for a in 0..order {
                let c = table[a * order + b];
                if seen[c] {
                    return Err(GroupError::NotLatin { row: a, col: b });
                }
                seen[c] = true;
            }
        }
        for a in 0..order {
            if table[a] != a || table[a * order] != a {
                return Err(GroupError::IdentityNotFirst { element: a });
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(GroupError::NonAssociative { a, b, c });
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] == 0).expect("latin square"))
            .collect();
        let names = match names {
            Some(n) if n.len() == order => n,
            _ => (0..order).map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") }).collect(),
        };
        let mut g = FiniteGroup {
            table,
            inverse,
            order,
            names,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Dihedral group of order `2n`, elements `1, r, ..., r^(n-1), s, rs, ..., r^(n-1)s`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let order = 2 * n;
        let decode = |x: usize| (x % n, x / n); // (rotation, reflection)
        let encode = |r: usize, f: usize| f * n + r;
        let rows = (0..order)
            .map(|x| {
                let (i, b) = decode(x);
                (0..order)
                    .map(|y| {
                        let (j, c) = decode(y);
                        // r^i s^b . r^j s^c = r^(i + (-1)^b j) s^(b+c)
                        let rot = if b == 0 { (i + j) % n } else { (i + n - j) % n };
                        encode(rot, (b + c) % 2)
                    })
                    .collect()
            })
            .collect();
        let names = (0..order)
            .map(|x| {
                let (i, b) = decode(x);
                let rot = match i {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r{i}"),
                };
                match (rot.is_empty(), b) {
                    (true, 0) => "1".to_string(),
                    (false, 0) => rot,
                    (_, _) => format!("{rot}s"),
                }
            })
            .collect();
        let mut g = Self::from_cayley(rows, Some(names))?;
        g.generators = if n == 1 { vec![1] } else { vec![1, n] };
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        let orders = if n == 1 { vec![] } else { vec![n as u64] };
        Ok(AbelianGroup::new(orders)?.to_finite_group())
    }

    pub(crate) fn with_names_and_generators(mut self, names: Vec<String>, generators: Vec<usize>) -> Self {
        assert_eq!(names.len(), self.order);
        self.names = names;
        self.generators = generators;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `x a x^-1`
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest subgroup containing the given elements, as a sorted index list.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| member[x]).collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        while span.len() < self.order {
            let next = (0..self.order).find(|x| span.binary_search(x).is_err()).expect("proper span");
            gens.push(next);
            span = self.generated_by(&gens);
        }
        gens
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order).filter(|&x| self.mul(x, a) == self.mul(a, x)).collect()
    }

    /// Builds the subgroup on a sorted element list, re-indexed locally.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(GroupError::NotSubgroup);
        }
        let local = |x: usize| elements.binary_search(&x).ok();
        let mut rows = Vec::with_capacity(elements.len());
        for &a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in &elements {
                row.push(local(self.mul(a, b)).ok_or(GroupError::NotSubgroup)?);
            }
            rows.push(row);
        }
        let names = elements.iter().map(|&x| self.names[x].clone()).collect();
        let group = FiniteGroup::from_cayley(rows, Some(names))?;
        Ok(Subgroup { elements, group })
    }

    pub fn conjugacy_structure(&self) -> ConjugacyStructure {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..self.order {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|x| self.conjugate(a, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = classes.len();
            }
            classes.push(class);
        }
        let centralizers = classes
            .iter()
            .map(|c| self.subgroup(&self.centralizer(c[0])).expect("centralizer is a subgroup"))
            .collect::<Vec<_>>();
        let center = classes.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
        ConjugacyStructure {
            classes,
            class_of,
            centralizers,
            center,
        }
    }

    /// Some `x` with `x a x^-1 = b`.
    pub fn conjugator(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.order).find(|&x| self.conjugate(a, x) == b)
    }

    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

/// Subgroup with its own locally indexed multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    /// Sorted parent indices; `elements[i]` is local element `i`.
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn local(&self, parent: usize) -> Option<usize> {
        self.elements.binary_search(&parent).ok()
    }

    pub fn contains(&self, parent: usize) -> bool {
        self.local(parent).is_some()
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyStructure {
    /// Classes ordered by smallest member; each class sorted.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Centralizer of each class representative (the smallest member).
    pub centralizers: Vec<Subgroup>,
    pub center: Vec<usize>,
}

impl ConjugacyStructure {
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Homomorphism between finite groups, stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMorphism {
    images: Vec<usize>,
    codomain_order: usize,
}

impl GroupMorphism {
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != domain.order() || images.iter().any(|&x| x >= codomain.order()) {
            return Err(GroupError::BadMorphismTable);
        }
        if images[0] != 0 {
            return Err(GroupError::NotHomomorphism { a: 0, b: 0 });
        }
        for a in 0..domain.order() {
            for b in 0..domain.order() {
                if images[domain.mul(a, b)] != codomain.mul(images[a], images[b]) {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(GroupMorphism {
            images,
            codomain_order: codomain.order(),
        })
    }

    /// Extends generator images to a homomorphism, rejecting inconsistent assignments.
    pub fn from_generator_images(
        domain: &FiniteGroup,
        codomain: &FiniteGroup,
        gen_images: &[usize],
    ) -> Result<Self, GroupError> {
        let gens = domain.generators();
        if gen_images.len() != gens.len() {
            return Err(GroupError::GeneratorCount {
                expected: gens.len(),
                got: gen_images.len(),
            });
        }
        if gen_images.iter().any(|&x| x >= codomain.order()) {
            return Err(GroupError::BadMorphismTable);
        }
        let mut images = vec![usize::MAX; domain.order()];
        images[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &gi) in gens.iter().zip(gen_images) {
                let y = domain.mul(x, g);
                let yi = codomain.mul(images[x], gi);
                if images[y] == usize::MAX {
                    images[y] = yi;
                    queue.push_back(y);
                } else if images[y] != yi {
                    return Err(GroupError::NotHomomorphism { a: x, b: g });
                }
            }
        }
        Self::new(domain, codomain, images)
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupMorphism {
            images: (0..group.order()).collect(),
            codomain_order: group.order(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_bijective(&self) -> bool {
        if self.images.len() != self.codomain_order {
            return false;
        }
        let mut seen = vec![false; self.codomain_order];
        self.images.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            inv[b] = a;
        }
        Some(GroupMorphism {
            images: inv,
            codomain_order: self.images.len(),
        })
    }
}

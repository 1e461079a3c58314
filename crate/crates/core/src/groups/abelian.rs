use num_integer::Integer;

use super::cyclotomic::Cyclotomic;
use super::finite::{FiniteGroup, GroupMorphism};
use super::GroupError;

/// Finite abelian group `Z/n_1 x ... x Z/n_r`, elements as exponent tuples in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, GroupError> {
        if orders.contains(&0) {
            return Err(GroupError::ZeroCyclicOrder);
        }
        Ok(AbelianGroup { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    /// Least common multiple of the cyclic orders; the conductor of all characters.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, n| acc.lcm(n))
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as usize;
            out[i] = (index % n) as u64;
            index /= n;
        }
        out
    }

    pub fn index(&self, element: &[u64]) -> usize {
        element
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + (x % n) as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(x, n)| (n - x % n) % n).collect()
    }

    /// Generator `e_i`, the unit vector in the `i`-th factor.
    pub fn generator(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.orders.len()];
        v[i] = 1 % self.orders[i];
        v
    }

    pub fn element_name(&self, a: &[u64]) -> String {
        if a.is_empty() {
            return "0".to_string();
        }
        if a.len() == 1 {
            return a[0].to_string();
        }
        let parts: Vec<String> = a.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }

    pub fn to_finite_group(&self) -> FiniteGroup {
        let n = self.order();
        let elems: Vec<Vec<u64>> = self.elements().collect();
        let rows = elems
            .iter()
            .map(|a| elems.iter().map(|b| self.index(&self.add(a, b))).collect())
            .collect();
        let names = elems.iter().map(|a| self.element_name(a)).collect();
        let generators = (0..self.rank())
            .filter(|&i| self.orders[i] > 1)
            .map(|i| self.index(&self.generator(i)))
            .collect();
        let g = FiniteGroup::from_cayley(rows, None)
            .expect("abelian group table is valid")
            .with_names_and_generators(names, generators);
        debug_assert_eq!(g.order(), n);
        g
    }

    /// The dual group has the same invariant factors; a character is an exponent tuple.
    pub fn dual(&self) -> AbelianGroup {
        self.clone()
    }

    pub fn character(&self, exponents: Vec<u64>) -> DualCharacter {
        let exponents = exponents.iter().zip(&self.orders).map(|(y, n)| y % n).collect();
        DualCharacter { exponents }
    }

    pub fn characters(&self) -> impl Iterator<Item = DualCharacter> + '_ {
        self.elements().map(|y| DualCharacter { exponents: y })
    }

    /// Evaluates a character as a root of unity over the group exponent.
    pub fn evaluate(&self, chi: &DualCharacter, x: &[u64]) -> Cyclotomic {
        let e = self.exponent();
        Cyclotomic::root_of_unity(e as u32, self.pairing_exponent(chi, x) as i64)
    }

    /// Exponent `k` with `chi(x) = zeta_e^k`.
    pub fn pairing_exponent(&self, chi: &DualCharacter, x: &[u64]) -> u64 {
        let e = self.exponent();
        chi.exponents
            .iter()
            .zip(x)
            .zip(&self.orders)
            .map(|((y, x), n)| (y * x % n) * (e / n))
            .sum::<u64>()
            % e
    }
}

/// Character `x -> zeta^(sum x_i y_i e/n_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualCharacter {
    pub exponents: Vec<u64>,
}

impl DualCharacter {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&y| y == 0)
    }
}

/// Bicharacter `beta(e_i, e_j) = exp(2 pi i B_ij / gcd(n_i, n_j))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    group: AbelianGroup,
    matrix: Vec<Vec<i64>>,
}

impl Bicharacter {
    pub fn new(group: AbelianGroup, matrix: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        let r = group.rank();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(GroupError::BicharacterShape { rank: r });
        }
        Ok(Bicharacter { group, matrix })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Exponent of `beta(x, y)` over the group exponent.
    pub fn exponent(&self, x: &[u64], y: &[u64]) -> u64 {
        let e = self.group.exponent() as i128;
        let n = self.group.orders();
        let mut total: i128 = 0;
        for i in 0..n.len() {
            for j in 0..n.len() {
                let g = n[i].gcd(&n[j]) as i128;
                total += self.matrix[i][j] as i128 * x[i] as i128 * y[j] as i128 * (e / g);
            }
        }
        total.rem_euclid(e) as u64
    }

    pub fn evaluate(&self, x: &[u64], y: &[u64]) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.group.exponent() as u32, self.exponent(x, y) as i64)
    }

    /// `g -> beta(g, .)` as a character.
    pub fn musical(&self, g: &[u64]) -> DualCharacter {
        let n = self.group.orders();
        let exps = (0..n.len())
            .map(|j| {
                let s: i128 = (0..n.len())
                    .map(|i| {
                        let gcd = n[i].gcd(&n[j]) as i128;
                        self.matrix[i][j] as i128 * g[i] as i128 * (n[j] as i128 / gcd)
                    })
                    .sum();
                s.rem_euclid(n[j] as i128) as u64
            })
            .collect();
        DualCharacter { exponents: exps }
    }

    pub fn is_symmetric(&self) -> bool {
        let elems: Vec<_> = self.group.elements().collect();
        elems
            .iter()
            .all(|x| elems.iter().all(|y| self.exponent(x, y) == self.exponent(y, x)))
    }

    /// Musical map as a morphism `A -> A^`, with `A^` indexed like `A`.
    pub fn musical_morphism(&self) -> GroupMorphism {
        let g = self.group.to_finite_group();
        let images = self
            .group
            .elements()
            .map(|x| self.group.index(&self.musical(&x).exponents))
            .collect();
        GroupMorphism::new(&g, &g, images).expect("musical map is a homomorphism")
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.musical_morphism().is_bijective()
    }
}

/// Result of pairing an abelian group with its dual.
#[derive(Clone, Debug)]
pub struct DualPairing {
    pub dual: AbelianGroup,
    pub musical: Option<GroupMorphism>,
    pub nondegenerate: Option<bool>,
}

pub fn dual_pairing(group: &AbelianGroup, beta: Option<&Bicharacter>) -> Result<DualPairing, GroupError> {
    let (musical, nondegenerate) = match beta {
        Some(b) => {
            if b.group() != group {
                return Err(GroupError::BicharacterShape { rank: group.rank() });
            }
            let m = b.musical_morphism();
            let nd = m.is_bijective();
            (Some(m), Some(nd))
        }
        None => (None, None),
    };
    Ok(DualPairing {
        dual: group.dual(),
        musical,
        nondegenerate,
    })
}

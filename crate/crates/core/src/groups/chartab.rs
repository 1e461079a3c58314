//! Exact character tables by the Burnside-Dixon method.
//!
//! Central characters are found as simultaneous eigenvectors of the class
//! multiplication matrices over a prime field `F_p` with `p = 1 mod exp(G)`.
//! Each character value is then lifted to `Z[zeta_e]` by counting eigenvalue
//! multiplicities of the power map, which are bounded by the degree and hence
//! recovered exactly once `p > 2 sqrt|G|`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclotomic::Cyclotomic;
use super::finite::{FiniteGroup, Subgroup};
use super::GroupError;

/// Number of admissible primes tried before giving up.
const MAX_PRIME_ATTEMPTS: usize = 8;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// One row per irreducible character, values per class.
    pub rows: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<u64>,
    /// Group exponent; every value lies in `Z[zeta_conductor]`.
    pub conductor: u32,
    /// Prime that produced the table.
    pub prime: u64,
    group_order: usize,
}

impl CharacterTable {
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn value(&self, row: usize, element: usize) -> &Cyclotomic {
        &self.rows[row][self.class_of[element]]
    }

    /// Character values per group element.
    pub fn expand(&self, row: usize) -> Vec<Cyclotomic> {
        self.class_of.iter().map(|&c| self.rows[row][c].clone()).collect()
    }

    /// `<a, b> = 1/|G| sum_k h_k a_k conj(b_k)` for class functions given per class.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<BigInt, GroupError> {
        let mut sum = Cyclotomic::zero(self.conductor);
        for k in 0..self.classes.len() {
            let term = (&a[k] * &b[k].conj()).scale(&BigInt::from(self.class_sizes[k]));
            sum = &sum + &term;
        }
        let total = sum.as_integer().ok_or(GroupError::NonIntegral)?;
        let order = BigInt::from(self.group_order);
        if (&total % &order).is_zero() {
            Ok(total / order)
        } else {
            Err(GroupError::NonIntegral)
        }
    }

    pub fn is_trivial_row(&self, row: usize) -> bool {
        self.rows[row].iter().all(|v| *v == Cyclotomic::one(1))
    }

    /// Row index of the complex conjugate character.
    pub fn dual_row(&self, row: usize) -> usize {
        let conj: Vec<Cyclotomic> = self.rows[row].iter().map(Cyclotomic::conj).collect();
        self.find_row(&conj).expect("conjugate of an irreducible is irreducible")
    }

    pub fn find_row(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.rows.iter().position(|r| r.as_slice() == values)
    }

    /// Locates a row from values given per element of the group.
    pub fn find_row_by_elements(&self, per_element: &[Cyclotomic]) -> Option<usize> {
        let per_class: Vec<Cyclotomic> = self.class_reps.iter().map(|&g| per_element[g].clone()).collect();
        // all members of a class must agree, otherwise this is not a class function
        let consistent = self
            .class_of
            .iter()
            .enumerate()
            .all(|(x, &c)| per_element[x] == per_class[c]);
        if !consistent {
            return None;
        }
        self.find_row(&per_class)
    }

    /// Human-readable row labels derived from values on the group's generators.
    ///
    /// Linear characters taking only the values `+-1` on generators are named
    /// `chi` followed by one bit per generator; other linear characters use the
    /// exponents of `zeta_{ord(g)}`; higher-degree rows are `rho`, suffixed when
    /// several share a degree.
    pub fn row_labels(&self, group: &FiniteGroup) -> Vec<String> {
        let gens = group.generators();
        let linear: Vec<usize> = (0..self.len()).filter(|&r| self.degrees[r] == 1).collect();
        let all_signs = linear.iter().all(|&r| {
            gens.iter().all(|&g| {
                let v = self.value(r, g);
                *v == Cyclotomic::one(1) || *v == Cyclotomic::integer(1, -1)
            })
        });
        let mut labels = Vec::with_capacity(self.len());
        for r in 0..self.len() {
            if self.degrees[r] == 1 {
                if all_signs {
                    let bits: String = gens
                        .iter()
                        .map(|&g| if *self.value(r, g) == Cyclotomic::one(1) { '0' } else { '1' })
                        .collect();
                    labels.push(format!("chi{bits}"));
                } else {
                    let exps: Vec<String> = gens
                        .iter()
                        .map(|&g| {
                            let o = group.element_order(g) as i64;
                            let v = self.value(r, g);
                            let j = (0..o)
                                .find(|&j| *v == Cyclotomic::root_of_unity(o as u32, j))
                                .expect("linear character values are roots of unity");
                            j.to_string()
                        })
                        .collect();
                    labels.push(format!("chi[{}]", exps.join(",")));
                }
            } else {
                let same: Vec<usize> = (0..self.len()).filter(|&q| self.degrees[q] == self.degrees[r]).collect();
                if same.len() == 1 && self.degrees.iter().filter(|&&d| d > 1).count() == 1 {
                    labels.push("rho".to_string());
                } else {
                    let pos = same.iter().position(|&q| q == r).unwrap();
                    labels.push(format!("rho{}_{}", self.degrees[r], pos));
                }
            }
        }
        labels
    }
}

/// `<Res_H chi, psi>_H = 1/|H| sum_h chi(h) psi(h^-1)`, with `chi` given per
/// element of the parent group and `psi` per local element of `H`.
pub fn restrict_inner(chi: &[Cyclotomic], subgroup: &Subgroup, psi: &[Cyclotomic]) -> Result<u64, GroupError> {
    let h = &subgroup.group;
    let conductor = chi.iter().chain(psi).map(Cyclotomic::conductor).fold(1u32, num_integer::lcm);
    let mut sum = Cyclotomic::zero(conductor);
    for (local, &parent) in subgroup.elements.iter().enumerate() {
        sum = &sum + &(&chi[parent] * &psi[h.inv(local)]);
    }
    let total = sum.as_integer().ok_or(GroupError::NonIntegral)?;
    let order = BigInt::from(subgroup.order());
    if !(&total % &order).is_zero() || total < BigInt::zero() {
        return Err(GroupError::NonIntegral);
    }
    u64::try_from(total / order).map_err(|_| GroupError::NonIntegral)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Admissible primes: `p = 1 mod exponent` and `p^2 > 4|G|`, in increasing order.
pub fn admissible_primes(exponent: u64, order: u64) -> impl Iterator<Item = u64> {
    (1u64..)
        .map(move |t| t * exponent + 1)
        .filter(move |&p| p * p > 4 * order && is_prime(p))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime field has a primitive root")
}

/// Basis of the null space of an `rows x cols` matrix over `F_p`.
fn null_space(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

struct ClassData {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    sizes: Vec<usize>,
    reps: Vec<usize>,
    inverse_class: Vec<usize>,
    /// `mult[j][i][k]` = #{x in C_i : x^-1 g_k in C_j}
    mult: Vec<Vec<Vec<u64>>>,
}

fn class_data(group: &FiniteGroup) -> ClassData {
    let cs = group.conjugacy_structure();
    let r = cs.len();
    let reps: Vec<usize> = (0..r).map(|c| cs.representative(c)).collect();
    let mut mult = vec![vec![vec![0u64; r]; r]; r];
    for (k, &gk) in reps.iter().enumerate() {
        for x in 0..group.order() {
            let i = cs.class_of[x];
            let j = cs.class_of[group.mul(group.inv(x), gk)];
            mult[j][i][k] += 1;
        }
    }
    let inverse_class = reps.iter().map(|&g| cs.class_of[group.inv(g)]).collect();
    ClassData {
        sizes: cs.classes.iter().map(Vec::len).collect(),
        classes: cs.classes,
        class_of: cs.class_of,
        reps,
        inverse_class,
        mult,
    }
}

/// Split of the common eigenspaces failed at this prime.
struct SplitFailure;

fn central_characters(data: &ClassData, p: u64) -> Result<Vec<Vec<u64>>, SplitFailure> {
    let r = data.classes.len();
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = &data.mult[j];
        let apply = |v: &[u64]| -> Vec<u64> {
            (0..r)
                .map(|i| (0..r).map(|k| m[i][k] % p * v[k] % p).sum::<u64>() % p)
                .collect()
        };
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(b)).collect();
            let mut found = 0;
            for lambda in 0..p {
                // columns (M - lambda) b_m
                let mat: Vec<Vec<u64>> = (0..r)
                    .map(|i| {
                        basis
                            .iter()
                            .zip(&images)
                            .map(|(b, mb)| (mb[i] + p - lambda * b[i] % p) % p)
                            .collect()
                    })
                    .collect();
                let kernel = null_space(mat, basis.len(), p);
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let sub: Vec<Vec<u64>> = kernel
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|i| basis.iter().zip(c).map(|(b, &ci)| b[i] * ci % p).sum::<u64>() % p)
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == basis.len() {
                    break;
                }
            }
            if found != basis.len() {
                return Err(SplitFailure);
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(SplitFailure);
    }
    spaces
        .into_iter()
        .map(|s| {
            let v = &s[0];
            if v[0] == 0 {
                return Err(SplitFailure);
            }
            let inv = inv_mod(v[0], p);
            Ok(v.iter().map(|x| x * inv % p).collect())
        })
        .collect()
}

fn table_at_prime(group: &FiniteGroup, data: &ClassData, p: u64) -> Result<Vec<(u64, Vec<Cyclotomic>)>, SplitFailure> {
    let order = group.order() as u64;
    let e = group.exponent() as u64;
    let omegas = central_characters(data, p)?;
    let z = pow_mod(primitive_root(p), (p - 1) / e, p);
    let r = data.classes.len();
    // power map: class of g_k^l
    let power_class: Vec<Vec<usize>> = data
        .reps
        .iter()
        .map(|&g| (0..e as usize).map(|l| data.class_of[group.pow(g, l)]).collect())
        .collect();
    let e_inv = inv_mod(e % p, p);
    let mut rows = Vec::with_capacity(r);
    for omega in omegas {
        let s = (0..r)
            .map(|k| omega[k] * omega[data.inverse_class[k]] % p * inv_mod(data.sizes[k] as u64 % p, p) % p)
            .sum::<u64>()
            % p;
        if s == 0 {
            return Err(SplitFailure);
        }
        let d2 = order % p * inv_mod(s, p) % p;
        let degree = (1..=order).take_while(|d| d * d <= order).find(|d| d * d % p == d2).ok_or(SplitFailure)?;
        let modular: Vec<u64> = (0..r)
            .map(|k| degree % p * omega[k] % p * inv_mod(data.sizes[k] as u64 % p, p) % p)
            .collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let mut coeffs = vec![BigInt::zero(); e as usize];
            let mut total = 0;
            for (j, slot) in coeffs.iter_mut().enumerate() {
                let mut acc = 0u64;
                for l in 0..e {
                    let chi = modular[power_class[k][l as usize]];
                    let root = pow_mod(z, (e - (j as u64 * l) % e) % e, p);
                    acc = (acc + chi * root) % p;
                }
                let m = acc * e_inv % p;
                if m > degree {
                    return Err(SplitFailure);
                }
                total += m;
                *slot = BigInt::from(m);
            }
            if total != degree {
                return Err(SplitFailure);
            }
            values.push(Cyclotomic::from_coeffs(e as u32, coeffs));
        }
        rows.push((degree, values));
    }
    Ok(rows)
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable, GroupError> {
    let data = class_data(group);
    let order = group.order() as u64;
    let e = group.exponent() as u64;
    let mut tried = Vec::new();
    for p in admissible_primes(e, order).take(MAX_PRIME_ATTEMPTS) {
        tried.push(p);
        let Ok(mut rows) = table_at_prime(group, &data, p) else {
            continue;
        };
        let one = Cyclotomic::one(1);
        rows.sort_by(|(da, a), (db, b)| {
            let ta = a.iter().all(|v| *v == one);
            let tb = b.iter().all(|v| *v == one);
            da.cmp(db).then(tb.cmp(&ta)).then_with(|| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| y.canonical_cmp(x))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
            })
        });
        let table = CharacterTable {
            class_reps: data.reps.clone(),
            class_sizes: data.sizes.clone(),
            classes: data.classes.clone(),
            class_of: data.class_of.clone(),
            degrees: rows.iter().map(|(d, _)| *d).collect(),
            rows: rows.into_iter().map(|(_, v)| v).collect(),
            conductor: e as u32,
            prime: p,
            group_order: group.order(),
        };
        if verify_orthogonality(&table) {
            return Ok(table);
        }
    }
    Err(GroupError::DixonExhausted { primes: tried })
}

/// Row orthogonality, degree sum of squares and class-size sum, all exact.
pub fn verify_orthogonality(table: &CharacterTable) -> bool {
    if table.class_sizes.iter().sum::<usize>() != table.group_order {
        return false;
    }
    if table.degrees.iter().map(|d| d * d).sum::<u64>() != table.group_order as u64 {
        return false;
    }
    if table.rows.len() != table.classes.len() {
        return false;
    }
    for i in 0..table.len() {
        for j in 0..=i {
            let expected = if i == j { BigInt::one() } else { BigInt::zero() };
            match table.inner_product(&table.rows[i], &table.rows[j]) {
                Ok(v) if v == expected => {}
                _ => return false,
            }
        }
    }
    true
}

//! Fusion rings, multiplicity vectors and the Bratteli data of `End(X^m)`.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::groups::{AbelianGroup, CharacterTable, Cyclotomic, FiniteGroup, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("object vectors belong to different fusion rings")]
    RingMismatch,
    #[error("vector has {got} entries but the ring has {rank} simples")]
    RankMismatch { rank: usize, got: usize },
    #[error("unknown simple label {0:?}")]
    UnknownLabel(String),
    #[error("not a strong generator within cutoff {cutoff}")]
    NotStrongGenerator { cutoff: usize },
    #[error("zero object")]
    ZeroObject,
    #[error("invalid fusion ring: {0}")]
    InvalidRing(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Based ring with nonnegative structure constants `N_{ab}^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    /// `n[a][b][c] = N_{ab}^c`
    n: Vec<Vec<Vec<u64>>>,
    id: u64,
}

impl FusionRing {
    /// Validates unit, duality and associativity before accepting the data.
    pub fn new(labels: Vec<String>, unit: usize, n: Vec<Vec<Vec<u64>>>) -> Result<Self, FusionError> {
        let r = labels.len();
        if r == 0 || unit >= r {
            return Err(FusionError::InvalidRing("empty ring or unit out of range".into()));
        }
        if n.len() != r || n.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != r)) {
            return Err(FusionError::InvalidRing("structure constants have the wrong shape".into()));
        }
        for a in 0..r {
            for b in 0..r {
                let d = u64::from(a == b);
                if n[unit][a][b] != d || n[a][unit][b] != d {
                    return Err(FusionError::InvalidRing(format!("unit law fails at ({}, {})", labels[a], labels[b])));
                }
            }
        }
        let mut dual = Vec::with_capacity(r);
        for a in 0..r {
            let duals: Vec<usize> = (0..r).filter(|&b| n[a][b][unit] != 0).collect();
            match duals.as_slice() {
                [b] if n[a][*b][unit] == 1 => dual.push(*b),
                _ => return Err(FusionError::InvalidRing(format!("{} has no unique dual", labels[a]))),
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let lhs: u64 = (0..r).map(|e| n[a][b][e] * n[e][c][d]).sum();
                        let rhs: u64 = (0..r).map(|f| n[b][c][f] * n[a][f][d]).sum();
                        if lhs != rhs {
                            return Err(FusionError::InvalidRing(format!(
                                "associativity fails at ({}, {}, {}; {})",
                                labels[a], labels[b], labels[c], labels[d]
                            )));
                        }
                    }
                }
            }
        }
        let mut h = DefaultHasher::new();
        labels.hash(&mut h);
        n.hash(&mut h);
        Ok(FusionRing {
            labels,
            unit,
            dual,
            n,
            id: h.finish(),
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, FusionError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| FusionError::UnknownLabel(label.to_string()))
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> u64 {
        self.n[a][b][c]
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|a| (0..r).all(|b| self.n[a][b] == self.n[b][a]))
    }

    pub fn is_invertible(&self, a: usize) -> bool {
        let prod = &self.n[a][self.dual[a]];
        prod.iter().enumerate().all(|(c, &m)| m == u64::from(c == self.unit))
    }

    pub fn zero(&self) -> ObjectVector {
        ObjectVector {
            ring: self.id,
            coeffs: vec![BigUint::zero(); self.rank()],
        }
    }

    pub fn simple(&self, a: usize) -> ObjectVector {
        let mut v = self.zero();
        v.coeffs[a] = BigUint::one();
        v
    }

    pub fn unit_object(&self) -> ObjectVector {
        self.simple(self.unit)
    }

    /// Direct sum of all simples, each with multiplicity one.
    pub fn regular(&self) -> ObjectVector {
        self.vector(vec![BigUint::one(); self.rank()]).expect("rank matches")
    }

    pub fn vector(&self, coeffs: Vec<BigUint>) -> Result<ObjectVector, FusionError> {
        if coeffs.len() != self.rank() {
            return Err(FusionError::RankMismatch {
                rank: self.rank(),
                got: coeffs.len(),
            });
        }
        Ok(ObjectVector { ring: self.id, coeffs })
    }

    pub fn vector_u64(&self, coeffs: &[u64]) -> Result<ObjectVector, FusionError> {
        self.vector(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// Builds a vector from a label-to-multiplicity map; unmentioned labels get zero.
    pub fn vector_from_labels(&self, entries: &BTreeMap<String, u64>) -> Result<ObjectVector, FusionError> {
        let mut v = self.zero();
        for (label, &m) in entries {
            v.coeffs[self.index_of(label)?] = BigUint::from(m);
        }
        Ok(v)
    }

    pub fn check(&self, v: &ObjectVector) -> Result<(), FusionError> {
        if v.ring != self.id {
            return Err(FusionError::RingMismatch);
        }
        Ok(())
    }

    pub fn tensor(&self, v: &ObjectVector, w: &ObjectVector) -> Result<ObjectVector, FusionError> {
        self.check(v)?;
        self.check(w)?;
        let r = self.rank();
        let mut out = self.zero();
        for a in 0..r {
            if v.coeffs[a].is_zero() {
                continue;
            }
            for b in 0..r {
                if w.coeffs[b].is_zero() {
                    continue;
                }
                let ab = &v.coeffs[a] * &w.coeffs[b];
                for c in 0..r {
                    let m = self.n[a][b][c];
                    if m != 0 {
                        out.coeffs[c] += &ab * m;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `v^1, v^2, ..., v^k` by repeated multiplication.
    pub fn powers(&self, v: &ObjectVector, k: usize) -> Result<Vec<ObjectVector>, FusionError> {
        self.check(v)?;
        let mut out: Vec<ObjectVector> = Vec::with_capacity(k);
        for i in 0..k {
            let next = match i {
                0 => v.clone(),
                _ => self.tensor(&out[i - 1], v)?,
            };
            out.push(next);
        }
        Ok(out)
    }

    /// `v^k` for `k >= 1`; `k = 0` gives the unit object.
    pub fn power(&self, v: &ObjectVector, k: usize) -> Result<ObjectVector, FusionError> {
        if k == 0 {
            self.check(v)?;
            return Ok(self.unit_object());
        }
        Ok(self.powers(v, k)?.pop().expect("k >= 1"))
    }

    /// `dim Hom(v, w) = sum_s v_s w_s`.
    pub fn hom_dim(&self, v: &ObjectVector, w: &ObjectVector) -> Result<BigUint, FusionError> {
        self.check(v)?;
        self.check(w)?;
        Ok(v.coeffs.iter().zip(&w.coeffs).map(|(a, b)| a * b).sum())
    }

    /// Minimal `n` with every simple appearing in `X^n`.
    pub fn strong_gen_index(&self, x: &ObjectVector, cutoff: usize) -> Result<usize, FusionError> {
        self.check(x)?;
        if x.is_zero() {
            return Err(FusionError::ZeroObject);
        }
        let mut p = x.clone();
        for n in 1..=cutoff {
            if n > 1 {
                p = self.tensor(&p, x)?;
            }
            if p.has_full_support() {
                let next = self.tensor(&p, x)?;
                if !next.has_full_support() {
                    return Err(FusionError::InvalidRing("full support of a power did not persist".into()));
                }
                return Ok(n);
            }
        }
        Err(FusionError::NotStrongGenerator { cutoff })
    }

    pub fn default_cutoff(&self) -> usize {
        4 * self.rank()
    }

    /// Bratteli data of `End(X^m) -> End(X^(m+1))`: rows are the support of
    /// `X^m`, columns the support of `X^(m+1)`, entries `N_{sX}^t`.
    pub fn inclusion_matrix(&self, x: &ObjectVector, m: usize) -> Result<InclusionMatrix, FusionError> {
        let lower = self.power(x, m)?;
        let upper = self.tensor(&lower, x)?;
        let rows = lower.support();
        let cols = upper.support();
        let entries = rows
            .iter()
            .map(|&s| {
                let sx = self.tensor(&self.simple(s), x)?;
                Ok(cols.iter().map(|&t| sx.coeffs[t].clone()).collect())
            })
            .collect::<Result<Vec<Vec<BigUint>>, FusionError>>()?;
        Ok(InclusionMatrix { rows, cols, entries })
    }

    pub fn format_vector(&self, v: &ObjectVector) -> String {
        let terms: Vec<String> = v
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { self.labels[i].clone() } else { format!("{c}*{}", self.labels[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Nonnegative multiplicity vector over the simples of a fusion ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObjectVector {
    ring: u64,
    coeffs: Vec<BigUint>,
}

impl ObjectVector {
    pub fn ring_id(&self) -> u64 {
        self.ring
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn get(&self, i: usize) -> &BigUint {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn has_full_support(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_zero())
    }

    /// `dim End(v) = sum_s v_s^2`.
    pub fn end_dim(&self) -> BigUint {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn add(&self, other: &ObjectVector) -> Result<ObjectVector, FusionError> {
        if self.ring != other.ring {
            return Err(FusionError::RingMismatch);
        }
        Ok(ObjectVector {
            ring: self.ring,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled(&self, k: u64) -> ObjectVector {
        ObjectVector {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(ToPrimitive::to_u64).collect()
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| BigInt::from(c.clone())).collect()
    }
}

impl fmt::Display for ObjectVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(BigUint::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<BigUint>>,
}

impl InclusionMatrix {
    /// `d^(m+1)_t = sum_s d^(m)_s N_{sX}^t` over the supports.
    pub fn propagate(&self, lower: &[BigUint]) -> Vec<BigUint> {
        (0..self.cols.len())
            .map(|j| (0..self.rows.len()).map(|i| &lower[i] * &self.entries[i][j]).sum())
            .collect()
    }
}

/// `Rep(G)` from its character table: `N_{ab}^c = <chi_a chi_b, chi_c>`.
pub fn fusion_ring_from_characters(table: &CharacterTable, labels: Vec<String>) -> Result<FusionRing, FusionError> {
    let r = table.len();
    if labels.len() != r {
        return Err(FusionError::RankMismatch { rank: r, got: labels.len() });
    }
    let unit = (0..r)
        .find(|&i| table.is_trivial_row(i))
        .ok_or_else(|| FusionError::InvalidRing("no trivial character".into()))?;
    let mut n = vec![vec![vec![0u64; r]; r]; r];
    for a in 0..r {
        for b in 0..r {
            let prod: Vec<Cyclotomic> = table.rows[a].iter().zip(&table.rows[b]).map(|(x, y)| x * y).collect();
            for c in 0..r {
                let m = table.inner_product(&prod, &table.rows[c])?;
                n[a][b][c] = m.to_u64().ok_or(GroupError::NonIntegral)?;
            }
        }
    }
    let ring = FusionRing::new(labels, unit, n)?;
    for a in 0..r {
        if ring.dual(a) != table.dual_row(a) {
            return Err(FusionError::InvalidRing("dual does not match complex conjugation".into()));
        }
    }
    if !ring.is_commutative() {
        return Err(FusionError::InvalidRing("character ring must be commutative".into()));
    }
    Ok(ring)
}

/// `Rep(G)` with labels derived from the table.
pub fn rep_ring(group: &FiniteGroup, table: &CharacterTable) -> Result<FusionRing, FusionError> {
    fusion_ring_from_characters(table, table.row_labels(group))
}

/// Tambara-Yamagami fusion rules on `A u {m}`.
pub fn ty_fusion_ring(group: &AbelianGroup) -> FusionRing {
    let k = group.order();
    let r = k + 1;
    let m = k;
    let mut n = vec![vec![vec![0u64; r]; r]; r];
    let elems: Vec<Vec<u64>> = group.elements().collect();
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            n[i][j][group.index(&group.add(a, b))] = 1;
        }
        n[i][m][m] = 1;
        n[m][i][m] = 1;
        n[m][m][i] = 1;
    }
    let mut labels: Vec<String> = elems.iter().map(|a| group.element_name(a)).collect();
    labels.push("m".to_string());
    FusionRing::new(labels, 0, n).expect("Tambara-Yamagami fusion rules are valid")
}

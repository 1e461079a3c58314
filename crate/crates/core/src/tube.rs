//! Tube algebra dimensions computed three ways: directly from fusion rules,
//! from the induced object in the center, and by gluing local algebras over a
//! cover of the circle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center::{CenterError, CenterModel};
use crate::fusion::{FusionError, FusionRing, ObjectVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TubeError {
    #[error("bad cover: {0}")]
    BadCover(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Center(#[from] CenterError),
}

/// `sum_s dim Hom(v, s (x) v (x) s*)`.
pub fn tube_dim_hom(ring: &FusionRing, v: &ObjectVector) -> Result<BigUint, TubeError> {
    let mut total = BigUint::zero();
    for s in 0..ring.rank() {
        let sv = ring.tensor(&ring.simple(s), v)?;
        let svs = ring.tensor(&sv, &ring.simple(ring.dual(s)))?;
        total += ring.hom_dim(v, &svs)?;
    }
    Ok(total)
}

/// `dim End(I(v)) = sum_z w_z m_z^2`, with `w_z` the number of simples an
/// aggregated label stands for.
pub fn tube_dim_center(model: &CenterModel, ring: &FusionRing, v: &ObjectVector) -> Result<BigUint, TubeError> {
    if model.ring_id() != ring.id() {
        return Err(CenterError::RingMismatch.into());
    }
    let m = model.induce(v)?;
    Ok(m.iter().zip(model.weights()).map(|(c, &w)| c * c * w).sum())
}

/// `dim End(X^m) <= dim Tube(X^k)` for every `m <= k - 1`.
pub fn local_embedding_bound(ring: &FusionRing, x: &ObjectVector, k: usize) -> Result<bool, TubeError> {
    let tube = tube_dim_hom(ring, &ring.power(x, k)?)?;
    for m in 0..k {
        if ring.power(x, m)?.end_dim() > tube {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cyclic cover of `Z/k` by intervals. Piece `i` has `lengths[i]` sites and
/// shares its last `overlaps[i]` sites with the first sites of piece `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cover {
    pub lengths: Vec<usize>,
    pub overlaps: Vec<usize>,
}

impl Cover {
    pub fn new(lengths: Vec<usize>, overlaps: Vec<usize>) -> Self {
        Cover { lengths, overlaps }
    }

    pub fn pieces(&self) -> usize {
        self.lengths.len()
    }

    pub fn circumference(&self) -> usize {
        self.lengths.iter().sum::<usize>().saturating_sub(self.overlaps.iter().sum())
    }

    /// Sites of each piece as positions on `Z/k`.
    pub fn intervals(&self) -> Vec<Vec<usize>> {
        let k = self.circumference().max(1);
        let mut start = 0;
        let mut out = Vec::with_capacity(self.pieces());
        for (&len, &ov) in self.lengths.iter().zip(&self.overlaps) {
            out.push((start..start + len).map(|x| x % k).collect());
            start += len - ov.min(len);
        }
        out
    }

    /// Checks that the cover is good for a strong generator of index `n`.
    pub fn validate(&self, k: usize, n: usize) -> Result<(), TubeError> {
        let l = self.pieces();
        let bad = |msg: String| Err(TubeError::BadCover(msg));
        if l < 2 {
            return bad(format!("a good cover needs at least 2 pieces, got {l}"));
        }
        if self.overlaps.len() != l {
            return bad(format!("{l} pieces need {l} overlaps, got {}", self.overlaps.len()));
        }
        for i in 0..l {
            let prev = self.overlaps[(i + l - 1) % l];
            if self.overlaps[i] < n {
                return bad(format!(
                    "overlap {i} has {} sites, fewer than the generator index {n}",
                    self.overlaps[i]
                ));
            }
            if self.lengths[i] >= k {
                return bad(format!("piece {i} of length {} wraps the whole circle of {k} sites", self.lengths[i]));
            }
            if prev + self.overlaps[i] > self.lengths[i] {
                return bad(format!("the two overlaps of piece {i} exceed its length {}", self.lengths[i]));
            }
        }
        if self.circumference() != k {
            return bad(format!("pieces cover {} sites, expected {k}", self.circumference()));
        }
        let sets = self.intervals();
        let mut covered = vec![false; k];
        for s in &sets {
            let mut seen = vec![false; k];
            for &x in s {
                if std::mem::replace(&mut seen[x], true) {
                    return bad("a piece overlaps itself".into());
                }
                covered[x] = true;
            }
        }
        if covered.iter().any(|c| !c) {
            return bad("pieces do not cover the circle".into());
        }
        for i in 0..l {
            for j in i + 1..l {
                let shared = sets[i].iter().filter(|x| sets[j].contains(x)).count();
                let expected = if l == 2 {
                    self.overlaps[0] + self.overlaps[1]
                } else if j == i + 1 {
                    self.overlaps[i]
                } else if i == 0 && j == l - 1 {
                    self.overlaps[l - 1]
                } else {
                    0
                };
                if shared != expected {
                    return bad(format!("pieces {i} and {j} share {shared} sites, expected {expected}"));
                }
            }
        }
        Ok(())
    }

    /// Every good cover of `Z/k` with between 2 and `max_pieces` pieces, in a
    /// canonical order (rotations are not identified).
    pub fn enumerate(k: usize, n: usize, max_pieces: usize) -> Vec<Cover> {
        let mut out = Vec::new();
        for l in 2..=max_pieces {
            let mut lengths = vec![0; l];
            let mut overlaps = vec![0; l];
            enumerate_rec(k, n, 0, &mut lengths, &mut overlaps, &mut out);
        }
        out
    }
}

fn enumerate_rec(k: usize, n: usize, i: usize, lengths: &mut Vec<usize>, overlaps: &mut Vec<usize>, out: &mut Vec<Cover>) {
    let l = lengths.len();
    if i == l {
        let cover = Cover::new(lengths.clone(), overlaps.clone());
        if cover.validate(k, n).is_ok() {
            out.push(cover);
        }
        return;
    }
    for len in 1..k {
        for ov in n.max(1)..=len {
            lengths[i] = len;
            overlaps[i] = ov;
            let used: usize = lengths[..=i].iter().sum::<usize>() - overlaps[..=i].iter().sum::<usize>();
            if used <= k {
                enumerate_rec(k, n, i + 1, lengths, overlaps, out);
            }
        }
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}/{}", join(&self.lengths), join(&self.overlaps))
    }
}

impl FromStr for Cover {
    type Err = TubeError;

    /// Parses `"3,3/1,1"`: lengths, a slash, then overlaps.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, o) = s
            .split_once('/')
            .ok_or_else(|| TubeError::BadCover(format!("expected LENGTHS/OVERLAPS, got {s:?}")))?;
        let parse = |part: &str| {
            part.split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| TubeError::BadCover(format!("{part:?}: {e}")))
        };
        Ok(Cover::new(parse(l)?, parse(o)?))
    }
}

/// Multiplicities of the simple bimodules `V_u (x) V_v^*` of a bimodule over
/// a pair of multi-matrix algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<BigUint>>,
}

impl BimoduleMatrix {
    /// `End(X^len)` over its subalgebras on the first `left` and last `right` sites.
    pub fn of_local_algebra(
        ring: &FusionRing,
        x: &ObjectVector,
        len: usize,
        left: usize,
        right: usize,
    ) -> Result<Self, TubeError> {
        if left + right > len {
            return Err(TubeError::BadCover(format!(
                "boundary subalgebras on {left} and {right} sites do not fit in {len} sites"
            )));
        }
        let whole = ring.power(x, len)?;
        let mid_left = ring.power(x, len - left)?;
        let mid_right = ring.power(x, len - right)?;
        let rows = ring.power(x, left)?.support();
        let cols = ring.power(x, right)?.support();
        let ts = whole.support();
        let lmat: Vec<ObjectVector> = rows
            .iter()
            .map(|&u| ring.tensor(&ring.simple(u), &mid_left))
            .collect::<Result<_, _>>()?;
        let rmat: Vec<ObjectVector> = cols
            .iter()
            .map(|&v| ring.tensor(&mid_right, &ring.simple(v)))
            .collect::<Result<_, _>>()?;
        let entries = lmat
            .iter()
            .map(|lu| {
                rmat.iter()
                    .map(|rv| ts.iter().map(|&t| lu.get(t) * rv.get(t)).sum())
                    .collect()
            })
            .collect();
        Ok(BimoduleMatrix { rows, cols, entries })
    }

    /// Relative tensor product over the shared middle algebra.
    pub fn compose(&self, other: &BimoduleMatrix) -> Result<BimoduleMatrix, TubeError> {
        if self.cols != other.rows {
            return Err(TubeError::BadCover("adjacent pieces disagree on their shared algebra".into()));
        }
        let entries = self
            .entries
            .iter()
            .map(|row| {
                (0..other.cols.len())
                    .map(|j| row.iter().zip(&other.entries).map(|(a, b)| a * &b[j]).sum())
                    .collect()
            })
            .collect();
        Ok(BimoduleMatrix {
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            entries,
        })
    }

    /// Tensor over `B (x) B^op`, closing a chain into a circle.
    pub fn trace(&self) -> Result<BigUint, TubeError> {
        if self.rows != self.cols {
            return Err(TubeError::BadCover("chain does not close up".into()));
        }
        Ok((0..self.rows.len()).map(|i| self.entries[i][i].clone()).sum())
    }

    /// `sum_{u,v} entry * d_u * d_v` for simple module dimensions `d`.
    pub fn weighted_dim(&self, row_dims: &ObjectVector, col_dims: &ObjectVector) -> BigUint {
        let mut total = BigUint::zero();
        for (i, &u) in self.rows.iter().enumerate() {
            for (j, &v) in self.cols.iter().enumerate() {
                total += &self.entries[i][j] * row_dims.get(u) * col_dims.get(v);
            }
        }
        total
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationCheck {
    pub cover: Cover,
    pub generator_index: usize,
    /// Dimension obtained by gluing the local algebras.
    pub contracted: BigUint,
    /// `tube_dim_hom(X^k)`.
    pub direct: BigUint,
}

impl FactorizationCheck {
    pub fn equal(&self) -> bool {
        self.contracted == self.direct
    }
}

/// Glues `End(X^{|I_i|})` along a good cover and compares the result with
/// the tube dimension of `X^k`.
pub fn factorization_dim_check(
    ring: &FusionRing,
    x: &ObjectVector,
    k: usize,
    cover: &Cover,
    cutoff: usize,
) -> Result<FactorizationCheck, TubeError> {
    let n = ring.strong_gen_index(x, cutoff)?;
    cover.validate(k, n)?;
    let l = cover.pieces();
    let mut chain: Option<BimoduleMatrix> = None;
    for i in 0..l {
        let left = cover.overlaps[(i + l - 1) % l];
        let right = cover.overlaps[i];
        let piece = BimoduleMatrix::of_local_algebra(ring, x, cover.lengths[i], left, right)?;
        chain = Some(match chain {
            None => piece,
            Some(acc) => acc.compose(&piece)?,
        });
    }
    let contracted = chain.expect("at least two pieces").trace()?;
    let direct = tube_dim_hom(ring, &ring.power(x, k)?)?;
    Ok(FactorizationCheck {
        cover: cover.clone(),
        generator_index: n,
        contracted,
        direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{rep_ring, ty_fusion_ring};
    use crate::groups::{build_group, character_table, AbelianGroup, GroupSpec};

    fn z2() -> FusionRing {
        let g = build_group(&GroupSpec::Abelian(vec![2])).unwrap();
        rep_ring(&g, &character_table(&g).unwrap()).unwrap()
    }

    #[test]
    fn hom_route_values() {
        let r = z2();
        let x = r.regular();
        assert_eq!(tube_dim_hom(&r, &x).unwrap(), BigUint::from(4u8));
        assert_eq!(tube_dim_hom(&r, &r.unit_object()).unwrap(), BigUint::from(2u8));
        for k in 1..6 {
            let xk = r.power(&x, k).unwrap();
            assert_eq!(tube_dim_hom(&r, &xk).unwrap(), BigUint::from(4u64.pow(k as u32)));
        }
    }

    #[test]
    fn cover_validation() {
        assert!(Cover::new(vec![3, 3], vec![1, 1]).validate(4, 1).is_ok());
        assert!(Cover::new(vec![2, 2, 2], vec![1, 1, 1]).validate(3, 1).is_ok());
        assert!(Cover::new(vec![4], vec![0]).validate(4, 1).is_err());
        assert!(Cover::new(vec![2, 2], vec![1, 1]).validate(4, 1).is_err());
        assert!(Cover::new(vec![3, 3], vec![1, 1]).validate(4, 2).is_err());
        assert_eq!("3,3/1,1".parse::<Cover>().unwrap(), Cover::new(vec![3, 3], vec![1, 1]));
        assert!(Cover::enumerate(4, 1, 3).contains(&Cover::new(vec![3, 3], vec![1, 1])));
    }

    #[test]
    fn z2_factorization_256() {
        let r = z2();
        let c = factorization_dim_check(&r, &r.regular(), 4, &Cover::new(vec![3, 3], vec![1, 1]), 8).unwrap();
        assert_eq!(c.contracted, BigUint::from(256u32));
        assert!(c.equal());
    }

    #[test]
    fn ty_factorization() {
        let r = ty_fusion_ring(&AbelianGroup::new(vec![2]).unwrap());
        let x = r.vector_u64(&[1, 0, 1]).unwrap();
        for cover in [Cover::new(vec![5, 5], vec![2, 2]), Cover::new(vec![4, 4, 4], vec![2, 2, 2])] {
            let c = factorization_dim_check(&r, &x, 6, &cover, 12).unwrap();
            assert!(c.equal(), "{cover}: {} vs {}", c.contracted, c.direct);
        }
    }

    #[test]
    fn bimodule_reproduces_algebra_dimension() {
        let r = ty_fusion_ring(&AbelianGroup::new(vec![2]).unwrap());
        let x = r.vector_u64(&[1, 0, 1]).unwrap();
        let p = BimoduleMatrix::of_local_algebra(&r, &x, 5, 2, 2).unwrap();
        let d2 = r.power(&x, 2).unwrap();
        assert_eq!(p.weighted_dim(&d2, &d2), r.power(&x, 5).unwrap().end_dim());
    }

    #[test]
    fn embedding_bound() {
        let r = z2();
        assert!(local_embedding_bound(&r, &r.regular(), 3).unwrap());
        assert_eq!(r.power(&r.regular(), 2).unwrap().end_dim(), BigUint::from(8u8));
    }
}

use num_bigint::BigInt;
use num_traits::Zero;

use super::abelian::AbelianGroup;
use super::cyclotomic::Cyclotomic;
use super::GroupError;

/// `f^(a) = sum_chi conj(chi(a)) f(chi)` for `f` indexed by the dual group
/// (same lexicographic order as the group itself).
pub fn fourier(group: &AbelianGroup, f: &[BigInt]) -> Vec<Cyclotomic> {
    assert_eq!(f.len(), group.order(), "function must be total on the dual group");
    let e = group.exponent();
    let chars: Vec<_> = group.characters().collect();
    group
        .elements()
        .map(|a| {
            let mut coeffs = vec![BigInt::zero(); e as usize];
            for (chi, fv) in chars.iter().zip(f) {
                let k = group.pairing_exponent(chi, &a);
                coeffs[((e - k) % e) as usize] += fv;
            }
            Cyclotomic::from_coeffs(e as u32, coeffs)
        })
        .collect()
}

/// `f(chi) = 1/|A| sum_a chi(a) f^(a)`; fails unless every value is a rational integer.
pub fn inverse_fourier(group: &AbelianGroup, transform: &[Cyclotomic]) -> Result<Vec<BigInt>, GroupError> {
    assert_eq!(transform.len(), group.order());
    let order = BigInt::from(group.order());
    let elems: Vec<_> = group.elements().collect();
    group
        .characters()
        .map(|chi| {
            let mut sum = Cyclotomic::zero(group.exponent() as u32);
            for (a, v) in elems.iter().zip(transform) {
                sum = &sum + &(&group.evaluate(&chi, a) * v);
            }
            let total = sum.as_integer().ok_or(GroupError::NonIntegral)?;
            if (&total % &order).is_zero() {
                Ok(total / &order)
            } else {
                Err(GroupError::NonIntegral)
            }
        })
        .collect()
}

/// Convolution on the dual group: `(f * g)(chi) = sum_{chi1 chi2 = chi} f(chi1) g(chi2)`.
pub fn convolve(group: &AbelianGroup, f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let n = group.order();
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        if f[i].is_zero() {
            continue;
        }
        let a = group.element(i);
        for j in 0..n {
            let idx = group.index(&group.add(&a, &group.element(j)));
            out[idx] += &f[i] * &g[j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn z2_transform() {
        let a = AbelianGroup::new(vec![2]).unwrap();
        let t = fourier(&a, &ints(&[2, 1]));
        assert_eq!(t, vec![Cyclotomic::integer(1, 3), Cyclotomic::integer(1, 1)]);
        assert_eq!(inverse_fourier(&a, &t).unwrap(), ints(&[2, 1]));
    }

    #[test]
    fn constant_is_supported_at_identity() {
        let a = AbelianGroup::new(vec![2, 3]).unwrap();
        let t = fourier(&a, &ints(&[5; 6]));
        assert_eq!(t[0], Cyclotomic::integer(1, 30));
        assert!(t[1..].iter().all(Cyclotomic::is_zero));
    }

    #[test]
    fn delta_transforms_to_one() {
        let a = AbelianGroup::new(vec![4]).unwrap();
        let t = fourier(&a, &ints(&[1, 0, 0, 0]));
        assert!(t.iter().all(|v| *v == Cyclotomic::one(1)));
    }

    #[test]
    fn non_transform_rejected() {
        let a = AbelianGroup::new(vec![2]).unwrap();
        let bogus = vec![Cyclotomic::integer(1, 1), Cyclotomic::integer(1, 0)];
        assert!(inverse_fourier(&a, &bogus).is_err());
    }
}

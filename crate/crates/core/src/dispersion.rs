//! Autodispersion sets and polar dispersion.
//!
//! `shift_set(b)` returns the positive integers `l` with
//! `gcd(b(x), b(x+l)) != 1`. It is the one place the summability pipeline
//! needs integer root extraction: the set consists of the positive integer
//! roots of `R(z) = Resultant_x(b(x), b(x+z))`. Since `R(l) = 0` iff
//! `R(-l) = 0`, the squarefree part of `R` with the root `z = 0` removed is
//! an even polynomial `T(z^2)`, and only the integer roots of `T` that are
//! perfect squares contribute. Everything stays factorization-free.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qpoly::{self, Poly};
use crate::ratfun::RatFun;

/// Ascending positive integers `l` with `deg(gcd(b, b(x+l))) >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftSet {
    pub shifts: Vec<i64>,
}

impl ShiftSet {
    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    /// `disp(b) = max(shifts, 0)`.
    pub fn dispersion(&self) -> i64 {
        self.shifts.last().copied().unwrap_or(0)
    }
}

/// Autodispersion set of a squarefree polynomial.
pub fn shift_set(b: &Poly) -> Result<ShiftSet> {
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !qpoly::is_squarefree(b) {
        return Err(Error::NotSquarefree);
    }
    if b.degree() <= 1 {
        return Ok(ShiftSet { shifts: Vec::new() });
    }
    let r = qpoly::shift_resultant(b)?;
    // strip the root at z = 0 together with all multiplicities
    let sf = qpoly::squarefree_part(&r)?;
    let rt = qpoly::exact_div(&sf, &Poly::x())?;
    // rt is even: rt(z) = t(z^2)
    let mut even = Vec::with_capacity(rt.coeffs().len() / 2 + 1);
    for (i, c) in rt.coeffs().iter().enumerate() {
        if i % 2 == 0 {
            even.push(c.clone());
        } else if !c.is_zero() {
            return Err(Error::Internal(
                "shift resultant squarefree part is not even".into(),
            ));
        }
    }
    let t = Poly::from_coeffs(even);
    let mut shifts = Vec::new();
    for root in qpoly::integer_roots(&t)? {
        if root.is_positive() {
            let s = root.sqrt();
            if &s * &s == root {
                let l = s
                    .to_i64()
                    .ok_or_else(|| Error::Internal("shift exceeds i64".into()))?;
                shifts.push(l);
            }
        }
    }
    shifts.sort_unstable();
    Ok(ShiftSet { shifts })
}

/// Polar dispersion `pdisp(f) = disp(denominator)`; the denominator must be
/// non-constant.
pub fn pdisp(f: &RatFun) -> Result<i64> {
    if f.den().is_constant() {
        return Err(Error::ConstantDenominator);
    }
    let sf = qpoly::squarefree_part(f.den())?;
    Ok(shift_set(&sf)?.dispersion())
}

/// Brute-force oracle for tests: scans `gcd(b, b(x+l))` for `l = 1..=limit`.
pub fn shift_set_bruteforce(b: &Poly, limit: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for l in 1..=limit {
        let g = qpoly::gcd_monic(b, &b.shift_int(l)).expect("nonzero inputs");
        if !g.is_one() {
            out.push(l);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_int_coeffs(coeffs)
    }

    #[test]
    fn shift_set_of_x_times_x_plus_2() {
        let b = &Poly::x() * &p(&[2, 1]);
        assert_eq!(shift_set(&b).unwrap().shifts, vec![2]);
    }

    #[test]
    fn shift_set_of_degree_seven_worked_denominator() {
        // (x^2+1)(x+3)(x^2+4x+5)(x+2)x
        let b = &(&(&(&p(&[1, 0, 1]) * &p(&[3, 1])) * &p(&[5, 4, 1])) * &p(&[2, 1])) * &Poly::x();
        assert_eq!(shift_set(&b).unwrap().shifts, vec![1, 2, 3]);
    }

    #[test]
    fn shift_set_degree_one_is_empty() {
        assert!(shift_set(&p(&[5, 1])).unwrap().is_empty());
    }

    #[test]
    fn shift_set_complex_orbit_pair() {
        // (x^2+2)(x^2+4x+6): roots +-i sqrt2 and -2 +- i sqrt2 differ by 2
        let b = &p(&[2, 0, 1]) * &p(&[6, 4, 1]);
        assert_eq!(shift_set(&b).unwrap().shifts, vec![2]);
        assert_eq!(shift_set_bruteforce(&b, 10), vec![2]);
    }

    #[test]
    fn shift_set_rejects_non_squarefree() {
        assert_eq!(shift_set(&Poly::x().pow(2)).err(), Some(Error::NotSquarefree));
        assert_eq!(shift_set(&Poly::zero()).err(), Some(Error::ZeroInput));
    }

    #[test]
    fn pdisp_examples() {
        let f = RatFun::new(Poly::one(), &Poly::x() * &p(&[2, 1])).unwrap();
        assert_eq!(pdisp(&f).unwrap(), 2);
        let g = RatFun::new(Poly::one(), p(&[2, 0, 1])).unwrap();
        assert_eq!(pdisp(&g).unwrap(), 0);
        let h = RatFun::new(Poly::one(), Poly::x()).unwrap();
        assert_eq!(pdisp(&h).unwrap(), 0);
        assert_eq!(pdisp(&RatFun::one()).err(), Some(Error::ConstantDenominator));
    }

    #[test]
    fn pdisp_handles_multiplicities_via_squarefree_part() {
        // (x(x+5))^3 has dispersion 5
        let den = (&Poly::x() * &p(&[5, 1])).pow(3);
        let f = RatFun::new(Poly::one(), den).unwrap();
        assert_eq!(pdisp(&f).unwrap(), 5);
    }

    #[test]
    fn shift_set_matches_bruteforce_on_constructed_family() {
        // q(x) q(x+3) q(x+7) for irreducible q = x^2 + x + 1
        let q = p(&[1, 1, 1]);
        let b = &(&q * &q.shift_int(3)) * &q.shift_int(7);
        let got = shift_set(&b).unwrap().shifts;
        assert_eq!(got, shift_set_bruteforce(&b, 20));
        assert_eq!(got, vec![3, 4, 7]);
    }
}

//! Shift reduction of simple-pole rational functions to shiftfree reduced
//! forms, with explicit summability certificates.
//!
//! For a proper `f` with squarefree denominator `b`, the reduction groups the
//! roots of `b` by their Z-orbits. The divisor of initial roots `b_0` keeps
//! the leftmost root of each orbit: `b_0 = b / lcm(gcd(b, b(x-l)))` over the
//! autodispersion set. Each factor `b_l = gcd(b_0(x-l), b)` collects the
//! roots sitting exactly `l` steps to the right of an initial root, and the
//! partial fraction summand over `b_l` is shifted back by `sigma^l`. The
//! result has all poles on initial roots, so its denominator is squarefree
//! and shiftfree and its first-order residues are the orbit sums of `f`'s.
//!
//! The certificate comes from the telescoping identity
//! `u - sigma^l(u) = delta(-(u + sigma(u) + ... + sigma^(l-1)(u)))`, so
//! `input - reduced = delta(certificate)` holds exactly. It is rechecked on
//! every call in debug builds.
//!
//! The joint variant reduces several inputs against the initial roots of the
//! lcm of all denominators, which forces one shared pole representative per
//! orbit across the whole tuple: the product of the reduced denominators is
//! then shiftfree.

use crate::dispersion::{self, ShiftSet};
use crate::error::{Error, Result};
use crate::qpoly::{self, Poly};
use crate::ratfun::{self, RatFun};

/// Reduced form and certificate: `input - reduced = delta(certificate)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    pub reduced: RatFun,
    pub certificate: RatFun,
}

/// Jointly reduced tuple; the product of the reduced denominators is
/// shiftfree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointReducedForms {
    pub reduced: Vec<RatFun>,
    pub certificates: Vec<RatFun>,
}

fn validate(f: &RatFun, index: Option<usize>) -> Result<()> {
    if !f.is_proper() {
        return Err(match index {
            Some(i) => Error::NotProperAt(i),
            None => Error::NotProper,
        });
    }
    if !qpoly::is_squarefree(f.den()) {
        return Err(match index {
            Some(i) => Error::NotSquarefreeAt(i),
            None => Error::NotSquarefree,
        });
    }
    Ok(())
}

/// Divisor of initial roots of `b`: the monic factor whose roots have no
/// earlier root of `b` in their orbit.
fn initial_root_divisor(b: &Poly, shifts: &ShiftSet) -> Result<Poly> {
    let mut g_lcm = Poly::one();
    for &l in &shifts.shifts {
        let g = qpoly::gcd_monic(b, &b.shift_int(-l))?;
        if !g.is_one() {
            g_lcm = qpoly::lcm_monic(&g_lcm, &g)?;
        }
    }
    qpoly::exact_div(b, &g_lcm)
}

/// Reduces one input against a fixed divisor of initial roots.
fn reduce_against(f: &RatFun, b0: &Poly, shifts: &ShiftSet) -> Result<(RatFun, RatFun)> {
    if f.is_zero() {
        return Ok((RatFun::zero(), RatFun::zero()));
    }
    let bi = f.den();
    let mut ells: Vec<i64> = Vec::with_capacity(shifts.shifts.len() + 1);
    let mut factors: Vec<Poly> = Vec::new();
    for &l in std::iter::once(&0).chain(shifts.shifts.iter()) {
        let bl = qpoly::gcd_monic(&b0.shift_int(-l), bi)?;
        if bl.degree() >= 1 {
            ells.push(l);
            factors.push(bl);
        }
    }
    let nums = ratfun::parfrac(f, &factors)?;
    let mut reduced = RatFun::zero();
    let mut certificate = RatFun::zero();
    for ((l, num), den) in ells.iter().zip(nums).zip(factors) {
        let term = RatFun::new(num, den)?;
        reduced = &reduced + &term.sigma_pow(*l);
        let mut shifted = term;
        for _ in 0..*l {
            certificate = &certificate - &shifted;
            shifted = shifted.sigma();
        }
    }
    debug_assert_eq!(ratfun::delta(&certificate), f - &reduced);
    Ok((reduced, certificate))
}

/// Reduced form of a proper rational function with squarefree denominator:
/// the output has squarefree shiftfree denominator, the same first-order
/// orbit residues, and an exact certificate.
pub fn simple_reduction(f: &RatFun) -> Result<ReducedForm> {
    validate(f, None)?;
    if f.is_zero() {
        return Ok(ReducedForm {
            reduced: RatFun::zero(),
            certificate: RatFun::zero(),
        });
    }
    let b = f.den();
    let shifts = dispersion::shift_set(b)?;
    if shifts.is_empty() {
        return Ok(ReducedForm {
            reduced: f.clone(),
            certificate: RatFun::zero(),
        });
    }
    let b0 = initial_root_divisor(b, &shifts)?;
    let (reduced, certificate) = reduce_against(f, &b0, &shifts)?;
    debug_assert!(
        reduced.is_zero()
            || reduced.den().is_constant()
            || dispersion::pdisp(&reduced).unwrap() == 0
    );
    Ok(ReducedForm { reduced, certificate })
}

/// Jointly and compatibly reduces a tuple of proper rational functions with
/// squarefree denominators, sharing one pole representative per orbit.
pub fn simple_reduction_plus(fs: &[RatFun]) -> Result<JointReducedForms> {
    for (i, f) in fs.iter().enumerate() {
        validate(f, Some(i))?;
    }
    let mut b = Poly::one();
    for f in fs {
        if !f.is_zero() {
            b = qpoly::lcm_monic(&b, f.den())?;
        }
    }
    let shifts = dispersion::shift_set(&b)?;
    if shifts.is_empty() {
        return Ok(JointReducedForms {
            reduced: fs.to_vec(),
            certificates: vec![RatFun::zero(); fs.len()],
        });
    }
    let b0 = initial_root_divisor(&b, &shifts)?;
    let mut reduced = Vec::with_capacity(fs.len());
    let mut certificates = Vec::with_capacity(fs.len());
    for f in fs {
        let (r, c) = reduce_against(f, &b0, &shifts)?;
        reduced.push(r);
        certificates.push(c);
    }
    debug_assert!({
        let prod = reduced
            .iter()
            .fold(Poly::one(), |acc, r| &acc * r.den());
        prod.is_constant()
            || dispersion::shift_set(&qpoly::squarefree_part(&prod).unwrap())
                .unwrap()
                .is_empty()
    });
    Ok(JointReducedForms { reduced, certificates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{rat, rat_int};
    use crate::ratfun::delta;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_int_coeffs(coeffs)
    }

    fn rf(num: Poly, den: Poly) -> RatFun {
        RatFun::new(num, den).unwrap()
    }

    #[test]
    fn already_shiftfree_is_identity() {
        let f = rf(Poly::one(), p(&[2, 0, 1]));
        let out = simple_reduction(&f).unwrap();
        assert_eq!(out.reduced, f);
        assert!(out.certificate.is_zero());
    }

    #[test]
    fn telescoping_difference_reduces_to_zero() {
        // 1/x - 1/(x+3)
        let f = &rf(Poly::one(), Poly::x()) - &rf(Poly::one(), p(&[3, 1]));
        let out = simple_reduction(&f).unwrap();
        assert!(out.reduced.is_zero());
        assert_eq!(delta(&out.certificate), f);
    }

    #[test]
    fn worked_reduction_order_two_component() {
        // f = (x^3+2x^2+5x+10)/(36 (x^2-1)(x^2+2)) reduces to
        // (x^2-3x+2)/(36 (x+1)(x^2+2))
        let den = (&p(&[-1, 0, 1]) * &p(&[2, 0, 1])).scale(&rat_int(36));
        let f = rf(p(&[10, 5, 2, 1]), den);
        let out = simple_reduction(&f).unwrap();
        let rden = (&p(&[1, 1]) * &p(&[2, 0, 1])).scale(&rat_int(36));
        assert_eq!(out.reduced, rf(p(&[2, -3, 1]), rden));
        assert_eq!(delta(&out.certificate), &f - &out.reduced);
    }

    #[test]
    fn worked_reduction_order_one_component() {
        // f = -(x^3+4x^2+13x+36)/(36 x(x^2-1)(x^2+2)) reduces to
        // (-x+13)/(36 (x+1)(x^2+2))
        let den = (&(&Poly::x() * &p(&[-1, 0, 1])) * &p(&[2, 0, 1])).scale(&rat_int(36));
        let f = rf(p(&[-36, -13, -4, -1]), den);
        let out = simple_reduction(&f).unwrap();
        let rden = (&p(&[1, 1]) * &p(&[2, 0, 1])).scale(&rat_int(36));
        assert_eq!(out.reduced, rf(p(&[13, -1]), rden));
        assert_eq!(delta(&out.certificate), &f - &out.reduced);
        assert_eq!(dispersion::pdisp(&out.reduced).unwrap(), 0);
    }

    #[test]
    fn rejects_non_squarefree_and_improper() {
        let f = rf(Poly::one(), Poly::x().pow(2));
        assert_eq!(simple_reduction(&f).err(), Some(Error::NotSquarefree));
        let g = RatFun::from_poly(Poly::x());
        assert_eq!(simple_reduction(&g).err(), Some(Error::NotProper));
        assert_eq!(
            simple_reduction_plus(&[RatFun::zero(), f]).err(),
            Some(Error::NotSquarefreeAt(1))
        );
    }

    #[test]
    fn joint_reduction_of_singleton_matches_single() {
        let den = &Poly::x() * &p(&[-3, 1]);
        let f = rf(p(&[1, 1]), den);
        let single = simple_reduction(&f).unwrap();
        let joint = simple_reduction_plus(std::slice::from_ref(&f)).unwrap();
        assert_eq!(joint.reduced[0], single.reduced);
        assert_eq!(joint.certificates[0], single.certificate);
    }

    #[test]
    fn joint_reduction_shares_pole_representatives() {
        let f1 = rf(Poly::one(), Poly::x());
        let f2 = rf(Poly::one(), p(&[1, 1]));
        let out = simple_reduction_plus(&[f1.clone(), f2.clone()]).unwrap();
        // both reduced forms sit on the initial root of the joint orbit
        assert_eq!(out.reduced[0].den(), out.reduced[1].den());
        for (f, (r, c)) in [f1, f2]
            .iter()
            .zip(out.reduced.iter().zip(&out.certificates))
        {
            assert_eq!(delta(c), f - r);
        }
        let prod = out.reduced[0].den() * out.reduced[1].den();
        let sf = qpoly::squarefree_part(&prod).unwrap();
        assert!(dispersion::shift_set(&sf).unwrap().is_empty());
    }

    #[test]
    fn zero_entries_pass_through_joint_reduction() {
        let f = rf(Poly::one(), &Poly::x() * &p(&[-1, 1]));
        let out = simple_reduction_plus(&[RatFun::zero(), f.clone()]).unwrap();
        assert!(out.reduced[0].is_zero());
        assert!(out.certificates[0].is_zero());
        assert_eq!(delta(&out.certificates[1]), &f - &out.reduced[1]);
    }

    #[test]
    fn certificate_identity_on_random_simple_pole_inputs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut done = 0;
        while done < 40 {
            let nroots = rng.gen_range(2..=5);
            let mut den = Poly::one();
            for _ in 0..nroots {
                den = &den * &p(&[rng.gen_range(-8..=8), 1]);
            }
            if !qpoly::is_squarefree(&den) {
                continue;
            }
            let num = Poly::from_coeffs(
                (0..den.degree()).map(|_| rat(rng.gen_range(-50..=50), 1)).collect(),
            );
            if num.is_zero() {
                continue;
            }
            let f = RatFun::new(num, den).unwrap();
            if !qpoly::is_squarefree(f.den()) {
                continue;
            }
            let out = simple_reduction(&f).unwrap();
            assert_eq!(delta(&out.certificate), &f - &out.reduced);
            if !out.reduced.is_zero() && !out.reduced.den().is_constant() {
                assert_eq!(dispersion::pdisp(&out.reduced).unwrap(), 0);
            }
            done += 1;
        }
    }
}

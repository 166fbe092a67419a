//! Hermite reduction and iterated pole-order splitting.
//!
//! `hermite_reduction` writes a proper `f` as `f = d/dx(g) + h` with `h`
//! proper with squarefree denominator; the pair is unique once `g` is also
//! required to be proper. The implementation performs one Yun squarefree
//! decomposition of the denominator up front and then peels one multiplicity
//! layer per pass with a single Bezout solve, so no linear system is built.
//!
//! `hermite_list` iterates the reduction to split `f` into components
//! `(f_1, ..., f_m)` where `f_k` collects exactly the order-`k` poles of `f`:
//!
//! ```text
//! f = sum_k ((-1)^(k-1) / (k-1)!) * d^(k-1)/dx^(k-1) (f_k)
//! ```
//!
//! and every `f_k` is proper with squarefree denominator. The sign/factorial
//! scaling is carried inline by rescaling the running remainder with `-k`
//! after the `k`-th pass, which avoids recomputing factorials at the end.

use num_traits::One;

use crate::error::{Error, Result};
use crate::qpoly::{self, rat_int, Poly, Rat};
use crate::ratfun::RatFun;

/// Result of one Hermite reduction: `f = d/dx(g) + h`, both parts proper,
/// `h` with squarefree denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteSplit {
    pub g: RatFun,
    pub h: RatFun,
}

/// Pole-order components `(f_1, ..., f_m)` with `f_m` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteList {
    pub components: Vec<RatFun>,
}

impl HermiteList {
    /// Highest pole order `m`.
    pub fn order(&self) -> usize {
        self.components.len()
    }

    /// Evaluates `sum_k ((-1)^(k-1)/(k-1)!) d^(k-1)/dx^(k-1)(f_k)`, which
    /// reconstructs the original input exactly.
    pub fn reconstruct(&self) -> RatFun {
        let mut total = RatFun::zero();
        let mut scale = Rat::one();
        for (k, fk) in self.components.iter().enumerate() {
            if k > 0 {
                scale = -scale / rat_int(k as i64);
            }
            total = &total + &fk.derivative_n(k as u32).scale(&scale);
        }
        total
    }
}

/// Hermite reduction of a proper rational function.
pub fn hermite_reduction(f: &RatFun) -> Result<HermiteSplit> {
    if !f.is_proper() {
        return Err(Error::NotProper);
    }
    if f.is_zero() {
        return Ok(HermiteSplit {
            g: RatFun::zero(),
            h: RatFun::zero(),
        });
    }
    let parts = qpoly::squarefree_decomposition(f.den())?;
    // distinct factors with their multiplicities
    let factors: Vec<(Poly, u32)> = parts
        .into_iter()
        .enumerate()
        .filter(|(_, d)| !d.is_constant())
        .map(|(i, d)| (d, i as u32 + 1))
        .collect();
    let dstar: Poly = factors.iter().fold(Poly::one(), |acc, (d, _)| &acc * d);
    let mut exps: Vec<u32> = factors.iter().map(|(_, m)| m - 1).collect();
    if exps.iter().all(|&e| e == 0) {
        return Ok(HermiteSplit {
            g: RatFun::zero(),
            h: f.clone(),
        });
    }

    let mut a = f.num().clone();
    let mut g = RatFun::zero();
    while exps.iter().any(|&e| e > 0) {
        let dminus = factors
            .iter()
            .zip(&exps)
            .fold(Poly::one(), |acc, ((d, _), &e)| &acc * &d.pow(e));
        let dstar2 = factors
            .iter()
            .zip(&exps)
            .filter(|(_, &e)| e >= 1)
            .fold(Poly::one(), |acc, ((d, _), _)| &acc * d);
        // p = -(dstar * dminus') / dminus, a polynomial coprime to dstar2
        let p = -&qpoly::exact_div(&(&dstar * &dminus.derivative()), &dminus)?;
        // solve b*p + c*dstar2 = a with deg(b) < deg(dstar2)
        let pinv = qpoly::invmod(&p, &dstar2)?;
        let (_, b) = qpoly::divrem(&(&a * &pinv), &dstar2)?;
        let c = qpoly::exact_div(&(&a - &(&b * &p)), &dstar2)?;
        g = &g + &RatFun::new(b.clone(), dminus)?;
        let carry = qpoly::exact_div(&dstar, &dstar2)?;
        a = &c - &(&b.derivative() * &carry);
        for e in exps.iter_mut() {
            if *e > 0 {
                *e -= 1;
            }
        }
    }
    let h = RatFun::new(a, dstar)?;
    debug_assert!(h.is_zero() || qpoly::is_squarefree(h.den()));
    debug_assert_eq!(&g.derivative() + &h, *f);
    Ok(HermiteSplit { g, h })
}

/// Splits a nonzero proper `f` into its pole-order components.
pub fn hermite_list(f: &RatFun) -> Result<HermiteList> {
    if !f.is_proper() {
        return Err(Error::NotProper);
    }
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut components = Vec::new();
    let mut g = f.clone();
    let mut k: i64 = 0;
    while !g.is_zero() {
        let split = hermite_reduction(&g)?;
        components.push(split.h);
        k += 1;
        g = split.g.scale(&rat_int(-k));
    }
    debug_assert!(!components.last().unwrap().is_zero());
    Ok(HermiteList { components })
}

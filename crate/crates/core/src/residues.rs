//! Q-rational systems of discrete residues.
//!
//! The discrete residue of `f` of order `k` at a Z-orbit `omega` is the sum
//! of the order-`k` partial fraction coefficients of `f` over all poles in
//! `omega`; `f` is rationally summable iff all of them vanish. The residues
//! live in algebraic extensions in general, so they are represented
//! rationally by pairs `(B_k, D_k)`: `B_k` is squarefree and shiftfree with
//! one root per orbit carrying a nonzero order-`k` residue, and `D_k`
//! evaluates at each such root to the residue.
//!
//! `first_residues` is the classical symbolic residue computation for simple
//! poles: the unique `r` with `deg(r) < deg(b)` and `r * b' = a mod b`
//! evaluates at each root of `b` to the residue of `a/b` there.
//!
//! `discrete_residues` chains pole-order splitting, shift reduction, and
//! `first_residues` per order. The `_plus` variants process a tuple with one
//! shared `B` for all inputs and orders, which is what the serial
//! summability and telescoping solvers consume.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hermite;
use crate::qpoly::{self, Poly, Rat};
use crate::ratfun::RatFun;
use crate::reduce;

/// One order of a rational residue system: `B` monic squarefree shiftfree,
/// `deg(D) < deg(B)`, `D(alpha)` the orbit residue at each root `alpha` of
/// `B`. The zero system is `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePair {
    pub b: Poly,
    pub d: Poly,
}

impl ResiduePair {
    pub fn trivial() -> ResiduePair {
        ResiduePair {
            b: Poly::one(),
            d: Poly::zero(),
        }
    }

    /// True when no orbit carries a nonzero residue at this order.
    pub fn is_trivial(&self) -> bool {
        self.d.is_zero()
    }
}

/// Residue pairs indexed by order `k = 1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSystem {
    pub pairs: Vec<ResiduePair>,
}

impl ResidueSystem {
    /// True iff every pair is `(1, 0)`, i.e. the input is summable.
    pub fn is_trivial(&self) -> bool {
        self.pairs.iter().all(|p| p.is_trivial())
    }
}

/// Joint system for a tuple: one `B` serves every input and order;
/// `d[i][k-1]` is the order-`k` residue polynomial of input `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedResidueSystem {
    pub b: Poly,
    pub d: Vec<Vec<Poly>>,
}

impl SharedResidueSystem {
    /// Common padded order `m`.
    pub fn order(&self) -> usize {
        self.d.first().map(|row| row.len()).unwrap_or(0)
    }
}

/// Symbolic first-order residues of a proper `f` with squarefree
/// denominator: returns `(b, r)` with `r * b' = a mod b`;
/// `first_residues(0) = (1, 0)`.
pub fn first_residues(f: &RatFun) -> Result<ResiduePair> {
    if f.is_zero() {
        return Ok(ResiduePair::trivial());
    }
    if !f.is_proper() {
        return Err(Error::NotProper);
    }
    if !qpoly::is_squarefree(f.den()) {
        return Err(Error::NotSquarefree);
    }
    let b = f.den().clone();
    let inv = qpoly::invmod(&b.derivative(), &b)?;
    let (_, r) = qpoly::divrem(&(f.num() * &inv), &b)?;
    debug_assert!({
        let (_, chk) = qpoly::divrem(&(&r * &b.derivative()), &b).unwrap();
        let (_, a) = qpoly::divrem(f.num(), &b).unwrap();
        chk == a
    });
    Ok(ResiduePair { b, d: r })
}

/// First residues of a tuple over the common denominator `B = lcm(b_i)`.
///
/// Each returned `p_i` satisfies `p_i * b_i' = a_i mod b_i` and
/// `p_i = 0 mod B/b_i` with `deg(p_i) < deg(B)`, so `p_i` evaluates to the
/// residue of `f_i` at every root of `B`, zero where `f_i` has no pole.
pub fn first_residues_plus(fs: &[RatFun]) -> Result<(Poly, Vec<Poly>)> {
    for (i, f) in fs.iter().enumerate() {
        if !f.is_proper() {
            return Err(Error::NotProperAt(i));
        }
        if !qpoly::is_squarefree(f.den()) {
            return Err(Error::NotSquarefreeAt(i));
        }
    }
    let mut big = Poly::one();
    for f in fs {
        if !f.is_zero() {
            big = qpoly::lcm_monic(&big, f.den())?;
        }
    }
    let mut ps = Vec::with_capacity(fs.len());
    for f in fs {
        if f.is_zero() {
            ps.push(Poly::zero());
            continue;
        }
        let bi = f.den();
        let inv = qpoly::invmod(&bi.derivative(), bi)?;
        let (_, ri) = qpoly::divrem(&(f.num() * &inv), bi)?;
        let di = qpoly::exact_div(&big, bi)?;
        if di.is_one() {
            ps.push(ri);
            continue;
        }
        let dinv = qpoly::invmod(&di, bi)?;
        let (_, w) = qpoly::divrem(&(&ri * &dinv), bi)?;
        ps.push(&di * &w);
    }
    Ok((big, ps))
}

/// Q-rational system of discrete residues of a nonzero proper `f`.
///
/// Pipeline: pole-order splitting, then per order a shift reduction followed
/// by symbolic first residues. Orders whose component reduces to zero come
/// out as the canonical `(1, 0)`.
pub fn discrete_residues(f: &RatFun) -> Result<ResidueSystem> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !f.is_proper() {
        return Err(Error::NotProper);
    }
    let list = hermite::hermite_list(f)?;
    let mut pairs = Vec::with_capacity(list.order());
    for fk in &list.components {
        let red = reduce::simple_reduction(fk)?;
        pairs.push(first_residues(&red.reduced)?);
    }
    Ok(ResidueSystem { pairs })
}

/// Shared residue system for a tuple of nonzero proper inputs: one `B` for
/// all inputs and all orders.
///
/// Each input is order-split, short component lists are padded with zeros to
/// the common length, the whole grid is reduced jointly, and the first
/// residues are taken over the common denominator.
pub fn discrete_residues_plus(fs: &[RatFun]) -> Result<SharedResidueSystem> {
    for (i, f) in fs.iter().enumerate() {
        if f.is_zero() {
            return Err(Error::ZeroInputAt(i));
        }
        if !f.is_proper() {
            return Err(Error::NotProperAt(i));
        }
    }
    let lists: Vec<hermite::HermiteList> = fs
        .iter()
        .map(hermite::hermite_list)
        .collect::<Result<_>>()?;
    let m = lists.iter().map(|l| l.order()).max().unwrap_or(0);
    let mut grid: Vec<RatFun> = Vec::with_capacity(fs.len() * m);
    for list in &lists {
        for k in 0..m {
            grid.push(list.components.get(k).cloned().unwrap_or_else(RatFun::zero));
        }
    }
    let joint = reduce::simple_reduction_plus(&grid)?;
    let (b, ps) = first_residues_plus(&joint.reduced)?;
    let d: Vec<Vec<Poly>> = ps.chunks(m.max(1)).map(|c| c.to_vec()).collect();
    debug_assert_eq!(d.len(), fs.len());
    Ok(SharedResidueSystem { b, d })
}

/// Specification of poles by orbit, offset, order, and coefficient:
/// `f = sum c / (x - alpha - n)^k`. Distinct `alpha` values must lie in
/// distinct Z-orbits, so orbit sums can be read off directly. This is the
/// brute-force side of the round-trip checks: the residue system of the
/// built function must reproduce exactly the sums recorded here.
#[derive(Clone, Debug)]
pub struct OrbitEntry {
    pub alpha: Rat,
    pub offset: i64,
    pub order: u32,
    pub coeff: Rat,
}

#[derive(Clone, Debug, Default)]
pub struct OrbitSpec {
    pub entries: Vec<OrbitEntry>,
}

impl OrbitSpec {
    /// Checks the orbit separation invariant: distinct `alpha` values must
    /// have a non-integer difference.
    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.entries.iter().enumerate() {
            if a.order == 0 {
                return Err(Error::Internal("orbit entry of order zero".into()));
            }
            for b in &self.entries[i + 1..] {
                if a.alpha != b.alpha && (&a.alpha - &b.alpha).is_integer() {
                    return Err(Error::Internal(
                        "distinct alphas share a Z-orbit".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Builds `sum c / (x - alpha - n)^k` by exact summation.
    pub fn to_ratfun(&self) -> RatFun {
        let mut total = RatFun::zero();
        for e in &self.entries {
            let pole = Poly::from_coeffs(vec![-(&e.alpha + Rat::from_integer(e.offset.into())), num_traits::One::one()]);
            let den = pole.pow(e.order);
            let term = RatFun::new(Poly::constant(e.coeff.clone()), den).expect("nonzero den");
            total = &total + &term;
        }
        total
    }

    /// Orbit sums keyed by `(alpha, order)`: the expected discrete residues.
    pub fn orbit_sums(&self) -> BTreeMap<(Rat, u32), Rat> {
        let mut sums: BTreeMap<(Rat, u32), Rat> = BTreeMap::new();
        for e in &self.entries {
            let key = (e.alpha.clone(), e.order);
            let slot = sums.entry(key).or_insert_with(Rat::zero);
            *slot += &e.coeff;
        }
        sums
    }
}

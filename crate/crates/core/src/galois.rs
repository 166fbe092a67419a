//! Galois-theoretic applications: relation lattices of diagonal difference
//! systems and the additive relation space of block-diagonal systems.
//!
//! For a diagonal system `sigma(Y) = diag(r_1, ..., r_n) Y`, the difference
//! Galois group is cut out by the integer vectors `e` with
//! `r_1^e_1 ... r_n^e_n = epsilon * sigma(p)/p` for rational `p` and constant
//! `epsilon`. Taking logarithmic derivatives `f_i = r_i'/r_i` turns the
//! multiplicative condition into summability of `sum e_i f_i`, so the
//! lattice `V(f) cap Z^n` is computable from the shared residue system. For
//! each lattice basis vector the summability certificate `g` has only simple
//! poles with integer residues; `exp_log_integrate` reconstructs `p` with
//! `p'/p = g` as a product of gcd powers, and the constant
//! `epsilon = (prod r_i^e_i) * p / sigma(p)` is recovered exactly.
//!
//! `multiplicative_relations` then cuts the lattice of exponent relations
//! among the epsilons themselves via prime factorization over Q.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::qpoly::{self, Rat};
use crate::ratfun::RatFun;
use crate::residues;
use crate::telescope;

/// Default trial-division bound for factoring epsilon values.
pub const DEFAULT_TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// A diagonal difference system `sigma(Y) = diag(r_1, ..., r_n) Y`.
#[derive(Clone, Debug)]
pub struct DiagonalSystem {
    pub rs: Vec<RatFun>,
}

/// Integer lattice given by a Hermite-normal-form row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    pub basis: Vec<Vec<BigInt>>,
}

impl IntLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Witness for one lattice basis vector: `prod r_i^e_i = epsilon *
/// sigma(p)/p` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub p: RatFun,
    pub epsilon: Rat,
}

/// Multiplicative relation data of a diagonal system.
#[derive(Clone, Debug)]
pub struct MultRelationData {
    pub lattice: IntLattice,
    pub witnesses: Vec<Witness>,
}

/// Logarithmic derivative `r'/r` of a nonzero rational function. The result
/// is proper with squarefree denominator and integer residues.
pub fn log_derivative(r: &RatFun) -> Result<RatFun> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(&r.derivative() / r)
}

/// Z-basis (HNF rows) of `{v in Z^n : sum v_i f_i is summable}`.
///
/// Assembles the same scalar system as `vspace_basis`, clears denominators
/// row by row, and returns the integer kernel; the result spans `V(f)` over
/// Q because the system is Q-linear.
pub fn integer_lattice(fs: &[RatFun]) -> Result<IntLattice> {
    let sys = residues::discrete_residues_plus(fs)?;
    let rows = telescope::residue_rows(&sys);
    let zrows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut den = BigInt::one();
            for c in row {
                den = num_integer::Integer::lcm(&den, c.denom());
            }
            row.iter().map(|c| c.numer() * &den / c.denom()).collect()
        })
        .collect();
    Ok(IntLattice {
        basis: linalg::integer_kernel(&zrows, fs.len()),
    })
}

/// Reconstructs `p` with `p'/p = g` for a proper `g` with squarefree
/// denominator and integer residues.
///
/// Candidate residue values are the integer roots in `z` of
/// `Resultant_x(b(x), a(x) - z b'(x))`; for each value `c` the factor
/// `gcd(b, a - c b')^c` enters the product. The identity `p'/p = g` is
/// verified before returning; failure means a non-integer residue.
pub fn exp_log_integrate(g: &RatFun) -> Result<RatFun> {
    if !g.is_proper() {
        return Err(Error::NotProper);
    }
    if g.is_zero() {
        return Ok(RatFun::one());
    }
    if !qpoly::is_squarefree(g.den()) {
        return Err(Error::NotSquarefree);
    }
    let b = g.den();
    let a = g.num();
    let bp = b.derivative();
    // interpolate R(z) = Res_x(b, a - z b'), degree deg(b) in z
    let npoints = b.degree() as usize + 1;
    let mut points = Vec::with_capacity(npoints);
    let mut t: i64 = 0;
    while points.len() < npoints {
        let shifted = a - &bp.scale(&qpoly::rat_int(t));
        points.push((qpoly::rat_int(t), qpoly::resultant(b, &shifted)));
        t = if t > 0 { -t } else { -t + 1 };
    }
    let rz = qpoly::interpolate(&points);
    let mut p = RatFun::one();
    for root in qpoly::integer_roots(&rz)? {
        if root.is_zero() {
            continue;
        }
        let c = root
            .to_i64()
            .ok_or_else(|| Error::Internal("residue value exceeds i64".into()))?;
        let factor = qpoly::gcd_monic(b, &(a - &bp.scale(&Rat::from_integer(root))))?;
        if factor.is_one() {
            continue;
        }
        p = &p * &RatFun::from_poly(factor).pow(c)?;
    }
    if &log_derivative(&p)? != g {
        return Err(Error::NonIntegerResidues);
    }
    Ok(p)
}

/// Computes the multiplicative relation lattice of a diagonal system with
/// explicit witnesses `(p_j, epsilon_j)` for each basis vector.
pub fn diagonal_relations(sys: &DiagonalSystem) -> Result<MultRelationData> {
    for (i, r) in sys.rs.iter().enumerate() {
        if r.is_zero() {
            return Err(Error::ZeroInputAt(i));
        }
    }
    let fs: Vec<RatFun> = sys.rs.iter().map(log_derivative).collect::<Result<_>>()?;
    let lattice = integer_lattice(&fs)?;
    let mut witnesses = Vec::with_capacity(lattice.basis.len());
    for e in &lattice.basis {
        let mut h = RatFun::zero();
        for (ei, fi) in e.iter().zip(&fs) {
            h = &h + &fi.scale(&Rat::from_integer(ei.clone()));
        }
        let verdict = telescope::is_summable(&h)?;
        let cert = verdict
            .certificate
            .ok_or_else(|| Error::Internal("lattice vector is not summable".into()))?;
        let p = exp_log_integrate(&cert)?;
        let mut power = RatFun::one();
        for (ei, ri) in e.iter().zip(&sys.rs) {
            let exp = ei
                .to_i64()
                .ok_or_else(|| Error::Internal("lattice exponent exceeds i64".into()))?;
            power = &power * &ri.pow(exp)?;
        }
        let ratio = &(&power * &p) / &p.sigma();
        if !ratio.den().is_one() || !ratio.num().is_constant() {
            return Err(Error::NonConstantEpsilon);
        }
        let epsilon = ratio.num().coeff(0);
        debug_assert!(!epsilon.is_zero());
        witnesses.push(Witness { p, epsilon });
    }
    Ok(MultRelationData { lattice, witnesses })
}

fn factor_magnitude(n: &BigUint, bound: u64) -> Result<BTreeMap<BigUint, i64>> {
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    let one = BigUint::one();
    if n == one {
        return Ok(out);
    }
    let mut p: u64 = 2;
    loop {
        let pz = BigUint::from(p);
        if &pz * &pz > n {
            break;
        }
        if p > bound {
            return Err(Error::FactorBoundExceeded(bound));
        }
        while (&n % &pz).is_zero() {
            *out.entry(pz.clone()).or_insert(0) += 1;
            n /= &pz;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n != one {
        *out.entry(n).or_insert(0) += 1;
    }
    Ok(out)
}

/// HNF basis of `{m in Z^s : prod epsilon_j^(m_j) = 1}`.
///
/// Each epsilon is factored as `sign * prod p^a_p` by trial division up to
/// `trial_division_bound`; the lattice is the integer kernel of the exponent
/// matrix intersected with the sublattice where the signs multiply to +1.
pub fn multiplicative_relations(eps: &[Rat], trial_division_bound: u64) -> Result<IntLattice> {
    for e in eps {
        if e.is_zero() {
            return Err(Error::ZeroEpsilon);
        }
    }
    let s = eps.len();
    let mut factorizations: Vec<BTreeMap<BigUint, i64>> = Vec::with_capacity(s);
    for e in eps {
        let mut exps = factor_magnitude(e.numer().magnitude(), trial_division_bound)?;
        for (p, k) in factor_magnitude(e.denom().magnitude(), trial_division_bound)? {
            *exps.entry(p).or_insert(0) -= k;
        }
        exps.retain(|_, k| *k != 0);
        factorizations.push(exps);
    }
    let primes: BTreeSet<BigUint> = factorizations
        .iter()
        .flat_map(|m| m.keys().cloned())
        .collect();
    let rows: Vec<Vec<BigInt>> = primes
        .iter()
        .map(|p| {
            factorizations
                .iter()
                .map(|m| BigInt::from(m.get(p).copied().unwrap_or(0)))
                .collect()
        })
        .collect();
    let mut kernel = linalg::integer_kernel(&rows, s);
    let negatives: Vec<bool> = eps.iter().map(|e| e.is_negative()).collect();
    if negatives.iter().any(|&b| b) {
        let parity = |v: &[BigInt]| -> bool {
            let mut odd = false;
            for (m, &neg) in v.iter().zip(&negatives) {
                if neg && m.is_odd() {
                    odd = !odd;
                }
            }
            odd
        };
        let odd_rows: Vec<usize> = (0..kernel.len()).filter(|&i| parity(&kernel[i])).collect();
        if let Some(&pivot) = odd_rows.first() {
            let pivot_row = kernel[pivot].clone();
            for &i in &odd_rows[1..] {
                for (a, b) in kernel[i].iter_mut().zip(&pivot_row) {
                    *a += b;
                }
            }
            for a in kernel[pivot].iter_mut() {
                *a *= 2;
            }
            kernel = linalg::hnf_rows(kernel, s);
        }
    }
    Ok(IntLattice { basis: kernel })
}

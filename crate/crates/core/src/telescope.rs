//! Summability decisions, serial summability, and differential creative
//! telescoping.
//!
//! `is_summable` decides whether a proper `f` is `delta(g)` for rational `g`
//! and returns the certificate `g` when it is. The decision reads off the
//! residue system: `f` is summable iff every reduced order component is
//! zero, and in that case the per-order reduction certificates `g_k`
//! recombine through the order-splitting identity into one exact
//! certificate `g = sum_k ((-1)^(k-1)/(k-1)!) d^(k-1)/dx^(k-1) (g_k)`.
//!
//! For a tuple `(f_1, ..., f_n)`, the space of rational vectors `v` with
//! `sum v_i f_i` summable is the kernel of the linear system obtained by
//! equating `sum_i v_i D_{i,k}` to zero as a polynomial for each order `k`;
//! since `deg(D_{i,k}) < deg(B)`, each order contributes `deg(B)` scalar
//! equations. Replacing scalars by linear differential operators
//! `L_i = sum_j lambda_{i,j} d^j/dx^j` twists the residues of order `j` into
//! orders up to `j + ord`, giving for each order `k`:
//!
//! ```text
//! sum_i sum_j lambda_{i,k-j} * (-1)^j * D_{i,j} / (j-1)! = 0
//! ```
//!
//! with `lambda` out of range read as zero. Order bounds `ord(L_i) <= m - m_i`
//! suffice for a generating set of the whole operator module, so
//! `wspace_generators` solves the system with exactly those bounds.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hermite;
use crate::linalg;
use crate::qpoly::{rat_int, Poly, Rat};
use crate::ratfun::{self, RatFun};
use crate::reduce;
use crate::residues::{self, SharedResidueSystem};

/// Linear differential operator `sum_j coeffs[j] * d^j/dx^j`; the zero
/// operator is the empty sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    coeffs: Vec<Rat>,
}

impl DiffOp {
    pub fn new(coeffs: Vec<Rat>) -> DiffOp {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    /// The scalar operator 1.
    pub fn identity() -> DiffOp {
        DiffOp { coeffs: vec![Rat::one()] }
    }

    pub fn zero() -> DiffOp {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order with the convention `ord(0) = -1`.
    pub fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Applies the operator to a rational function.
    pub fn apply(&self, f: &RatFun) -> RatFun {
        let mut out = RatFun::zero();
        let mut der = f.clone();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                der = der.derivative();
            }
            if !c.is_zero() {
                out = &out + &der.scale(c);
            }
        }
        out
    }

    /// Renders as a polynomial in `D = d/dx`.
    pub fn to_string_op(&self) -> String {
        Poly::from_coeffs(self.coeffs.clone()).to_string_var("D")
    }
}

/// An element of the telescoping module: one operator per input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTuple {
    pub ops: Vec<DiffOp>,
}

impl OperatorTuple {
    /// `sum_i L_i(f_i)`.
    pub fn apply(&self, fs: &[RatFun]) -> RatFun {
        let mut out = RatFun::zero();
        for (op, f) in self.ops.iter().zip(fs) {
            out = &out + &op.apply(f);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.ops.iter().all(|op| op.is_zero())
    }
}

/// Outcome of a summability decision; the certificate satisfies
/// `delta(certificate) = input` exactly whenever `summable` is true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummabilityVerdict {
    pub summable: bool,
    pub certificate: Option<RatFun>,
}

/// Decides rational summability of a proper `f`, with certificate.
pub fn is_summable(f: &RatFun) -> Result<SummabilityVerdict> {
    if !f.is_proper() {
        return Err(Error::NonzeroPolynomialPart);
    }
    if f.is_zero() {
        return Ok(SummabilityVerdict {
            summable: true,
            certificate: Some(RatFun::zero()),
        });
    }
    let list = hermite::hermite_list(f)?;
    let mut order_certs = Vec::with_capacity(list.order());
    for fk in &list.components {
        let red = reduce::simple_reduction(fk)?;
        if !red.reduced.is_zero() {
            return Ok(SummabilityVerdict {
                summable: false,
                certificate: None,
            });
        }
        order_certs.push(red.certificate);
    }
    let mut total = RatFun::zero();
    let mut scale = Rat::one();
    for (k, g) in order_certs.iter().enumerate() {
        if k > 0 {
            scale = -scale / rat_int(k as i64);
        }
        total = &total + &g.derivative_n(k as u32).scale(&scale);
    }
    if ratfun::delta(&total) != *f {
        return Err(Error::Internal("summability certificate failed to verify".into()));
    }
    Ok(SummabilityVerdict {
        summable: true,
        certificate: Some(total),
    })
}

/// Scalar rows of the serial summability system: for each order and each
/// coefficient of `B`, one equation over the tuple coordinates.
pub(crate) fn residue_rows(sys: &SharedResidueSystem) -> Vec<Vec<Rat>> {
    let n = sys.d.len();
    let degb = sys.b.degree().max(0) as usize;
    let m = sys.order();
    let mut rows = Vec::with_capacity(m * degb);
    for k in 0..m {
        for c in 0..degb {
            rows.push((0..n).map(|i| sys.d[i][k].coeff(c)).collect());
        }
    }
    rows
}

/// Echelon basis of `{v in Q^n : sum v_i f_i is summable}`.
pub fn vspace_basis(fs: &[RatFun]) -> Result<Vec<Vec<Rat>>> {
    let sys = residues::discrete_residues_plus(fs)?;
    Ok(linalg::kernel_basis(residue_rows(&sys), fs.len()))
}

/// `(-1)^j / (j-1)!` for `j >= 1`.
fn twist_coeff(j: usize) -> Rat {
    let mut fact = Rat::one();
    for t in 1..j {
        fact *= rat_int(t as i64);
    }
    let sign = if j % 2 == 1 { rat_int(-1) } else { rat_int(1) };
    sign / fact
}

/// Kernel of the telescoping system with per-coordinate order bounds,
/// checking orders `k = 1..=krange`.
fn wspace_kernel(sys: &SharedResidueSystem, bounds: &[u32], krange: usize) -> Vec<OperatorTuple> {
    let n = sys.d.len();
    let m = sys.order();
    let degb = sys.b.degree().max(0) as usize;
    let mut offsets = Vec::with_capacity(n);
    let mut nunk = 0usize;
    for &b in bounds {
        offsets.push(nunk);
        nunk += b as usize + 1;
    }
    let mut rows = Vec::new();
    for k in 1..=krange {
        for c in 0..degb {
            let mut row = vec![Rat::zero(); nunk];
            for i in 0..n {
                for j in 1..=m.min(k) {
                    let r = k - j;
                    if r > bounds[i] as usize {
                        continue;
                    }
                    let contrib = twist_coeff(j) * sys.d[i][j - 1].coeff(c);
                    row[offsets[i] + r] += contrib;
                }
            }
            rows.push(row);
        }
    }
    let kernel = linalg::kernel_basis(rows, nunk);
    kernel
        .into_iter()
        .map(|v| OperatorTuple {
            ops: (0..n)
                .map(|i| {
                    DiffOp::new(v[offsets[i]..offsets[i] + bounds[i] as usize + 1].to_vec())
                })
                .collect(),
        })
        .collect()
}

/// Echelon basis of the operator tuples of order at most `beta` in every
/// coordinate whose combination is summable.
pub fn wspace_bounded(fs: &[RatFun], beta: u32) -> Result<Vec<OperatorTuple>> {
    let sys = residues::discrete_residues_plus(fs)?;
    let m = sys.order();
    let bounds = vec![beta; fs.len()];
    Ok(wspace_kernel(&sys, &bounds, m + beta as usize))
}

/// Generating set of the full telescoping module, solved with the
/// per-coordinate order bounds `ord(L_i) <= m - m_i`.
pub fn wspace_generators(fs: &[RatFun]) -> Result<Vec<OperatorTuple>> {
    let sys = residues::discrete_residues_plus(fs)?;
    let m = sys.order();
    let mut bounds = Vec::with_capacity(fs.len());
    for f in fs {
        let mi = hermite::hermite_list(f)?.order();
        bounds.push((m - mi) as u32);
    }
    // poles of order above m cannot occur within these bounds
    Ok(wspace_kernel(&sys, &bounds, m))
}

/// Membership test for a given operator tuple, checking only the orders up
/// to `M = max(ord(L_i) + m_i)` that its image can reach.
pub fn wspace_contains(fs: &[RatFun], tuple: &OperatorTuple) -> Result<bool> {
    if tuple.ops.len() != fs.len() {
        return Err(Error::Internal("operator tuple length mismatch".into()));
    }
    if tuple.is_zero() {
        return Ok(true);
    }
    let sys = residues::discrete_residues_plus(fs)?;
    let m = sys.order();
    let degb = sys.b.degree().max(0) as usize;
    let mut cap = 0usize;
    for (f, op) in fs.iter().zip(&tuple.ops) {
        if op.is_zero() {
            continue;
        }
        let mi = hermite::hermite_list(f)?.order();
        cap = cap.max(op.order() as usize + mi);
    }
    for k in 1..=cap {
        for c in 0..degb {
            let mut acc = Rat::zero();
            for (i, op) in tuple.ops.iter().enumerate() {
                for j in 1..=m.min(k) {
                    let r = k - j;
                    if let Some(lam) = op.coeffs().get(r) {
                        if !lam.is_zero() {
                            acc += twist_coeff(j) * lam * sys.d[i][j - 1].coeff(c);
                        }
                    }
                }
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat;
    use crate::ratfun::delta;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_int_coeffs(coeffs)
    }

    fn rf(num: Poly, den: Poly) -> RatFun {
        RatFun::new(num, den).unwrap()
    }

    fn inv_pow(shift: i64, k: u32) -> RatFun {
        rf(Poly::one(), p(&[shift, 1]).pow(k))
    }

    #[test]
    fn telescoping_kernel_is_summable_with_certificate() {
        let f = rf(Poly::one(), &Poly::x() * &p(&[1, 1]));
        let v = is_summable(&f).unwrap();
        assert!(v.summable);
        let cert = v.certificate.unwrap();
        assert_eq!(cert, rf(p(&[-1]), Poly::x()));
        assert_eq!(delta(&cert), f);
    }

    #[test]
    fn single_pole_is_not_summable() {
        let v = is_summable(&inv_pow(0, 1)).unwrap();
        assert!(!v.summable);
        assert!(v.certificate.is_none());
    }

    #[test]
    fn cancelling_double_poles_are_summable() {
        // 5/(x-1)^2 - 5/(x+4)^2
        let f = &inv_pow(-1, 2).scale(&rat_int(5)) - &inv_pow(4, 2).scale(&rat_int(5));
        let v = is_summable(&f).unwrap();
        assert!(v.summable);
        assert_eq!(delta(&v.certificate.unwrap()), f);
    }

    #[test]
    fn zero_is_summable_and_improper_is_rejected() {
        let v = is_summable(&RatFun::zero()).unwrap();
        assert!(v.summable);
        assert!(v.certificate.unwrap().is_zero());
        assert_eq!(
            is_summable(&RatFun::from_poly(Poly::one())).err(),
            Some(Error::NonzeroPolynomialPart)
        );
    }

    #[test]
    fn vspace_of_shifted_pair() {
        let fs = [inv_pow(0, 1), inv_pow(1, 1)];
        let basis = vspace_basis(&fs).unwrap();
        assert_eq!(basis, vec![vec![rat_int(1), rat_int(-1)]]);
    }

    #[test]
    fn vspace_of_independent_orbits_is_zero() {
        let fs = [inv_pow(0, 1), rf(Poly::one(), p(&[2, 0, 1]))];
        assert!(vspace_basis(&fs).unwrap().is_empty());
    }

    #[test]
    fn vspace_of_duplicate_inputs() {
        let f = inv_pow(0, 1);
        let basis = vspace_basis(&[f.clone(), f]).unwrap();
        assert_eq!(basis, vec![vec![rat_int(1), rat_int(-1)]]);
    }

    #[test]
    fn wspace_bounded_finds_derivative_pairing() {
        let fs = [inv_pow(0, 2), inv_pow(0, 1)];
        let basis = wspace_bounded(&fs, 1).unwrap();
        assert_eq!(basis.len(), 1);
        let t = &basis[0];
        assert_eq!(t.ops[0], DiffOp::identity());
        assert_eq!(t.ops[1], DiffOp::new(vec![Rat::zero(), Rat::one()]));
        // soundness: the image is summable
        let image = t.apply(&fs);
        assert!(is_summable(&image).unwrap().summable);
    }

    #[test]
    fn wspace_of_single_pole_is_empty() {
        for beta in 0..4 {
            assert!(wspace_bounded(&[inv_pow(0, 1)], beta).unwrap().is_empty());
        }
        assert!(wspace_generators(&[inv_pow(0, 1)]).unwrap().is_empty());
    }

    #[test]
    fn wspace_of_summable_single_input_contains_identity() {
        let f = delta(&inv_pow(0, 1));
        let basis = wspace_bounded(&[f], 0).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].ops[0], DiffOp::identity());
    }

    #[test]
    fn wspace_generators_match_bounds() {
        let fs = [inv_pow(0, 2), inv_pow(0, 1)];
        let gens = wspace_generators(&fs).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].ops[0], DiffOp::identity());
        assert_eq!(gens[0].ops[1], DiffOp::new(vec![Rat::zero(), Rat::one()]));
    }

    #[test]
    fn wspace_generators_same_orbit_double_poles() {
        let fs = [inv_pow(0, 2), inv_pow(5, 2)];
        let gens = wspace_generators(&fs).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].ops[0], DiffOp::identity());
        assert_eq!(gens[0].ops[1], DiffOp::new(vec![rat_int(-1)]));
        assert!(is_summable(&gens[0].apply(&fs)).unwrap().summable);
    }

    #[test]
    fn vspace_embeds_in_order_zero_wspace() {
        let fs = [inv_pow(0, 1), inv_pow(3, 1), rf(Poly::one(), p(&[2, 0, 1]))];
        let v = vspace_basis(&fs).unwrap();
        let w = wspace_bounded(&fs, 0).unwrap();
        let flattened: Vec<Vec<Rat>> = w
            .iter()
            .map(|t| t.ops.iter().map(|op| op.coeffs().first().cloned().unwrap_or_else(Rat::zero)).collect())
            .collect();
        assert_eq!(v, flattened);
    }

    #[test]
    fn membership_check_accepts_basis_and_rejects_junk() {
        let fs = [inv_pow(0, 2), inv_pow(0, 1)];
        let basis = wspace_bounded(&fs, 1).unwrap();
        for t in &basis {
            assert!(wspace_contains(&fs, t).unwrap());
        }
        let junk = OperatorTuple {
            ops: vec![DiffOp::identity(), DiffOp::zero()],
        };
        assert!(!wspace_contains(&fs, &junk).unwrap());
        let zero = OperatorTuple {
            ops: vec![DiffOp::zero(), DiffOp::zero()],
        };
        assert!(wspace_contains(&fs, &zero).unwrap());
    }

    #[test]
    fn twist_coeff_values() {
        assert_eq!(twist_coeff(1), rat_int(-1));
        assert_eq!(twist_coeff(2), rat_int(1));
        assert_eq!(twist_coeff(3), rat(-1, 2));
        assert_eq!(twist_coeff(4), rat(1, 6));
    }
}

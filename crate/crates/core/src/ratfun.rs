//! Normalized rational functions over Q(x).
//!
//! A `RatFun` is always kept reduced (`gcd(num, den) = 1`) with a monic
//! denominator; zero is `0/1`. On top of field arithmetic this module
//! provides the proper/polynomial split, shifts `f(x) -> f(x + l)`, the
//! quotient-rule derivative, and partial fraction decomposition over a
//! pre-factored squarefree denominator.
//!
//! Partial fractions are computed with Bezout coefficients from the extended
//! Euclidean algorithm: for factors `b_i` of `b`, the numerator over `b_i` is
//! `a * d_i mod b_i` where `d_i * (b/b_i) = 1 mod b_i`. No linear system is
//! ever solved.

use std::fmt;

use crate::error::{Error, Result};
use crate::qpoly::{self, Poly, Rat};

use num_traits::Zero;

/// Reduced rational function with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Normalizes `num/den`: cancels the gcd and rescales the denominator to
    /// be monic.
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = qpoly::gcd_monic(&num, &den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (qpoly::exact_div(&num, &g)?, qpoly::exact_div(&den, &g)?)
        };
        let lc = den.leading_coeff().unwrap().recip();
        Ok(RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    /// Constructs from parts already satisfying the invariants.
    fn from_reduced(num: Poly, den: Poly) -> RatFun {
        debug_assert!(den.is_monic());
        debug_assert!(
            num.is_zero() && den.is_one()
                || qpoly::gcd_monic(&num, &den).map(|g| g.is_one()).unwrap_or(false)
        );
        RatFun { num, den }
    }

    pub fn zero() -> RatFun {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> RatFun {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when `deg(num) < deg(den)`.
    pub fn is_proper(&self) -> bool {
        self.num.degree() < self.den.degree()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Splits `f = polypart + proper` with the proper part sharing `f`'s
    /// denominator.
    pub fn proper_split(&self) -> (Poly, RatFun) {
        if self.is_proper() {
            return (Poly::zero(), self.clone());
        }
        let (q, r) = qpoly::divrem(&self.num, &self.den).expect("denominator is nonzero");
        if r.is_zero() {
            (q, RatFun::zero())
        } else {
            (q, RatFun::from_reduced(r, self.den.clone()))
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun::from_reduced(self.num.scale(c), self.den.clone())
    }

    /// `f(x + l)` for an integer shift `l`.
    pub fn sigma_pow(&self, l: i64) -> RatFun {
        if l == 0 || self.is_zero() {
            return self.clone();
        }
        RatFun::from_reduced(self.num.shift_int(l), self.den.shift_int(l))
    }

    /// `f(x + 1)`.
    pub fn sigma(&self) -> RatFun {
        self.sigma_pow(1)
    }

    /// Quotient-rule derivative d/dx.
    pub fn derivative(&self) -> RatFun {
        if self.is_polynomial() {
            return RatFun::from_poly(self.num.derivative());
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        RatFun::new(num, den).expect("denominator is nonzero")
    }

    /// `j`-th derivative.
    pub fn derivative_n(&self, j: u32) -> RatFun {
        let mut acc = self.clone();
        for _ in 0..j {
            acc = acc.derivative();
        }
        acc
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, e: i64) -> Result<RatFun> {
        if e < 0 && self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let k = e.unsigned_abs() as u32;
        if e >= 0 {
            Ok(RatFun::from_reduced(self.num.pow(k), self.den.pow(k)))
        } else {
            RatFun::new(self.den.pow(k), self.num.pow(k))
        }
    }

    /// Multiplicative inverse of a nonzero rational function.
    pub fn recip(&self) -> Result<RatFun> {
        self.pow(-1)
    }

    /// Renders with an explicit variable name; `Display` uses `x`.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.is_polynomial() {
            return self.num.to_string_var(var);
        }
        let wrap = |p: &Poly| {
            let s = p.to_string_var(var);
            let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            if terms > 1 {
                format!("({})", s)
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl std::ops::Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = qpoly::gcd_monic(&self.den, &rhs.den).expect("denominators nonzero");
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RatFun::new(num, den).expect("denominator nonzero");
        }
        let db = qpoly::exact_div(&self.den, &g).expect("gcd divides");
        let dd = qpoly::exact_div(&rhs.den, &g).expect("gcd divides");
        let num = &(&self.num * &dd) + &(&rhs.num * &db);
        let den = &self.den * &dd;
        RatFun::new(num, den).expect("denominator nonzero")
    }
}

impl std::ops::Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // cross-cancel before multiplying
        let g1 = qpoly::gcd_monic(&self.num, &rhs.den).expect("nonzero");
        let g2 = qpoly::gcd_monic(&rhs.num, &self.den).expect("nonzero");
        let a = qpoly::exact_div(&self.num, &g1).expect("gcd divides");
        let d = qpoly::exact_div(&rhs.den, &g1).expect("gcd divides");
        let c = qpoly::exact_div(&rhs.num, &g2).expect("gcd divides");
        let b = qpoly::exact_div(&self.den, &g2).expect("gcd divides");
        RatFun::new(&a * &c, &b * &d).expect("denominator nonzero")
    }
}

impl std::ops::Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self * &rhs.recip().expect("division by zero rational function")
    }
}

macro_rules! owned_ops {
    ($($trait:ident, $method:ident);*) => {$(
        impl std::ops::$trait for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: RatFun) -> RatFun {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &RatFun) -> RatFun {
                (&self).$method(rhs)
            }
        }
    )*};
}
owned_ops!(Add, add; Sub, sub; Mul, mul; Div, div);

impl std::ops::Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

/// Forward difference `delta(f) = f(x+1) - f(x)`.
pub fn delta(f: &RatFun) -> RatFun {
    &f.sigma() - f
}

/// Partial fraction numerators of a proper `f` over the pre-factored
/// squarefree denominator `b = prod factors`.
///
/// Returns `(a_1, ..., a_n)` with `f = sum a_i / b_i` and
/// `deg(a_i) < deg(b_i)`, computed via Bezout coefficients. The factors must
/// be monic, non-constant, and multiply to `den(f)`.
pub fn parfrac(f: &RatFun, factors: &[Poly]) -> Result<Vec<Poly>> {
    if !f.is_proper() {
        return Err(Error::NotProper);
    }
    if !qpoly::is_squarefree(f.den()) {
        return Err(Error::NotSquarefree);
    }
    let mut product = Poly::one();
    for b in factors {
        if b.is_constant() || !b.is_monic() {
            return Err(Error::ProductMismatch);
        }
        product = &product * b;
    }
    if &product != f.den() {
        return Err(Error::ProductMismatch);
    }
    let b = f.den();
    let a = f.num();
    let mut out = Vec::with_capacity(factors.len());
    for bi in factors {
        let cofactor = qpoly::exact_div(b, bi)?;
        let (g, s, _) = qpoly::xgcd(&cofactor, bi)?;
        if !g.is_one() {
            return Err(Error::FactorsNotCoprime);
        }
        let (_, di) = qpoly::divrem(&s, bi)?;
        let (_, ai) = qpoly::divrem(&(a * &di), bi)?;
        out.push(ai);
    }
    debug_assert!({
        let mut sum = RatFun::zero();
        for (ai, bi) in out.iter().zip(factors) {
            sum = &sum + &RatFun::new(ai.clone(), bi.clone()).unwrap();
        }
        sum == *f
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{rat, rat_int};
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_int_coeffs(coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn normalize_scales_and_cancels() {
        let f = rf(&[2, 2], &[0, 2]);
        assert_eq!(f.num(), &p(&[1, 1]));
        assert_eq!(f.den(), &Poly::x());

        let g = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(g.num(), &p(&[1, 1]));
        assert!(g.den().is_one());

        let z = RatFun::new(Poly::zero(), p(&[0, 0, 0, 1])).unwrap();
        assert!(z.is_zero());
        assert!(z.den().is_one());

        assert_eq!(
            RatFun::new(Poly::one(), Poly::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn proper_split_examples() {
        let (pp, pr) = rf(&[0, 0, 1], &[1, 1]).proper_split();
        assert_eq!(pp, p(&[-1, 1]));
        assert_eq!(pr, rf(&[1], &[1, 1]));

        let (pp, pr) = rf(&[1], &[0, 1]).proper_split();
        assert!(pp.is_zero());
        assert_eq!(pr, rf(&[1], &[0, 1]));

        let (pp, pr) = RatFun::from_poly(p(&[3, 1])).proper_split();
        assert_eq!(pp, p(&[3, 1]));
        assert!(pr.is_zero());
    }

    #[test]
    fn sigma_pow_examples() {
        assert_eq!(rf(&[1], &[0, 1]).sigma_pow(2), rf(&[1], &[2, 1]));
        let f = rf(&[1, 2], &[3, 0, 1]);
        assert_eq!(f.sigma_pow(0), f);
        assert_eq!(rf(&[1], &[-1, 1]).sigma_pow(-1), rf(&[1], &[-2, 1]));
        assert_eq!(f.sigma_pow(5).sigma_pow(-5), f);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(rf(&[1], &[0, 1]).derivative(), rf(&[-1], &[0, 0, 1]));
        assert_eq!(RatFun::from_poly(Poly::x()).derivative(), RatFun::one());
        let f = rf(&[1], &[1, 0, 1]);
        assert_eq!(
            f.derivative(),
            RatFun::new(p(&[0, -2]), p(&[1, 0, 1]).pow(2)).unwrap()
        );
    }

    #[test]
    fn parfrac_telescoping_kernel() {
        let f = RatFun::new(Poly::one(), &Poly::x() * &p(&[1, 1])).unwrap();
        let out = parfrac(&f, &[Poly::x(), p(&[1, 1])]).unwrap();
        assert_eq!(out, vec![Poly::one(), p(&[-1])]);
    }

    #[test]
    fn parfrac_single_factor() {
        let f = rf(&[1], &[0, 1]);
        assert_eq!(parfrac(&f, &[Poly::x()]).unwrap(), vec![Poly::one()]);
    }

    #[test]
    fn parfrac_second_hermite_component() {
        // (x^3+2x^2+5x+10)/(36 (x^2-1)(x^2+2)) over ((x+1)(x^2+2), x-1)
        let den = (&p(&[-1, 0, 1]) * &p(&[2, 0, 1])).scale(&rat_int(36));
        let f = RatFun::new(p(&[10, 5, 2, 1]), den).unwrap();
        let b0 = &p(&[1, 1]) * &p(&[2, 0, 1]);
        let b2 = p(&[-1, 1]);
        let out = parfrac(&f, &[b0.clone(), b2.clone()]).unwrap();
        // a_0 = -(2x^2+3x+4)/36 and a_2 = 1/12
        assert_eq!(out[0], p(&[-4, -3, -2]).scale(&rat(1, 36)));
        assert_eq!(out[1], Poly::constant(rat(1, 12)));
    }

    #[test]
    fn parfrac_rejects_bad_inputs() {
        let f = rf(&[0, 1], &[1, 1]); // improper? deg num = deg den -> not proper
        assert_eq!(parfrac(&f, &[p(&[1, 1])]), Err(Error::NotProper));

        let g = RatFun::new(Poly::one(), Poly::x().pow(2)).unwrap();
        assert_eq!(parfrac(&g, &[Poly::x(), Poly::x()]), Err(Error::NotSquarefree));

        let h = RatFun::new(Poly::one(), &Poly::x() * &p(&[1, 1])).unwrap();
        assert_eq!(parfrac(&h, &[Poly::x()]), Err(Error::ProductMismatch));
    }

    #[test]
    fn delta_of_inverse_x() {
        let f = rf(&[1], &[0, 1]);
        // 1/(x+1) - 1/x = -1/(x(x+1))
        let expected = RatFun::new(p(&[-1]), &Poly::x() * &p(&[1, 1])).unwrap();
        assert_eq!(delta(&f), expected);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn sigma_round_trip(num in proptest::collection::vec(-20i64..20, 1..6),
                            den in proptest::collection::vec(-20i64..20, 1..6),
                            l in -8i64..8) {
            let den = Poly::from_int_coeffs(&den);
            prop_assume!(!den.is_zero());
            let f = RatFun::new(Poly::from_int_coeffs(&num), den).unwrap();
            prop_assert_eq!(f.sigma_pow(l).sigma_pow(-l), f);
        }

        #[test]
        fn proper_split_reconstructs(num in proptest::collection::vec(-20i64..20, 1..8),
                                     den in proptest::collection::vec(-20i64..20, 1..6)) {
            let den = Poly::from_int_coeffs(&den);
            prop_assume!(!den.is_zero());
            let f = RatFun::new(Poly::from_int_coeffs(&num), den).unwrap();
            let (pp, pr) = f.proper_split();
            prop_assert!(pr.is_zero() || pr.is_proper());
            prop_assert_eq!(&RatFun::from_poly(pp) + &pr, f);
        }
    }

    #[test]
    fn parfrac_recombines_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 100 {
            // distinct linear and irreducible quadratic factors
            let nfac = rng.gen_range(2..=4);
            let mut factors: Vec<Poly> = Vec::new();
            for _ in 0..nfac {
                let f = if rng.gen_bool(0.5) {
                    p(&[rng.gen_range(-10..=10), 1])
                } else {
                    p(&[rng.gen_range(1..=10), rng.gen_range(-3..=3), 1])
                };
                factors.push(f);
            }
            let mut den = Poly::one();
            for f in &factors {
                den = &den * f;
            }
            if !qpoly::is_squarefree(&den) {
                continue;
            }
            let dd = den.degree();
            let num = Poly::from_coeffs(
                (0..dd).map(|_| rat_int(rng.gen_range(-100..=100))).collect(),
            );
            if num.is_zero() {
                continue;
            }
            let f = RatFun::new(num, den).unwrap();
            if factors.iter().map(|q| q.degree()).sum::<i64>() != f.den().degree() {
                continue; // cancellation happened; resample
            }
            let out = parfrac(&f, &factors).unwrap();
            let mut sum = RatFun::zero();
            for (ai, bi) in out.iter().zip(&factors) {
                assert!(ai.degree() < bi.degree());
                sum = &sum + &RatFun::new(ai.clone(), bi.clone()).unwrap();
            }
            assert_eq!(sum, f);
            done += 1;
        }
    }
}

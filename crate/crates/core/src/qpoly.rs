//! Dense exact univariate polynomial arithmetic over Q.
//!
//! This is the computational kernel for the whole crate: polynomials are
//! represented as dense coefficient vectors of arbitrary-precision rationals,
//! with the convention deg(0) = -1. Division, gcd, extended gcd, Taylor
//! shifts, squarefree decomposition, resultants, and integer root extraction
//! all reduce to exact arithmetic.
//!
//! Polynomial gcds and resultants are computed on primitive integer forms via
//! the subresultant polynomial remainder sequence, which avoids the
//! coefficient explosion of naive rational Euclid on inputs of degree in the
//! hundreds. The resultant of `b(x)` and `b(x+z)` with respect to `x` is
//! computed by evaluation at integer values of `z` followed by Newton
//! interpolation, so no bivariate arithmetic is needed anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator (zero is 0/1).
pub type Rat = BigRational;

/// Rational `n/d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from a machine integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Dense univariate polynomial over Q.
///
/// Invariant: `coeffs[i]` is the coefficient of `x^i` and the last entry is
/// nonzero; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    /// The monomial `x`.
    pub fn x() -> Poly {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Poly {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Ascending integer coefficients; convenient in tests and fixtures.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Degree with the convention deg(0) = -1.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Scales so the leading coefficient is 1; `monic(0) = 0`.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative d/dx.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int(i as i64 + 1))
                .collect(),
        )
    }

    /// Returns `p(x + c)` exactly.
    pub fn taylor_shift(&self, c: &Rat) -> Poly {
        if self.is_zero() || c.is_zero() {
            return self.clone();
        }
        // Horner in (x + c): acc = acc*(x+c) + a_i, descending i.
        let mut acc: Vec<Rat> = Vec::with_capacity(self.coeffs.len());
        for a in self.coeffs.iter().rev() {
            acc.push(Rat::zero());
            for j in (0..acc.len()).rev() {
                let lower = if j > 0 { acc[j - 1].clone() } else { Rat::zero() };
                acc[j] = lower + c * &acc[j];
            }
            acc[0] += a;
        }
        Poly::from_coeffs(acc)
    }

    /// Shift by an integer, `p(x + n)`.
    pub fn shift_int(&self, n: i64) -> Poly {
        self.taylor_shift(&rat_int(n))
    }

    /// `p^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Renders with an explicit variable name; `Display` uses `x`.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, k) in (0..self.coeffs.len()).rev().enumerate() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_part = if abs.is_one() && k > 0 {
                String::new()
            } else {
                abs.to_string()
            };
            let var_part = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, k),
            };
            match (coeff_part.is_empty(), var_part.is_empty()) {
                (true, _) => out.push_str(&var_part),
                (_, true) => out.push_str(&coeff_part),
                (false, false) => {
                    out.push_str(&coeff_part);
                    out.push('*');
                    out.push_str(&var_part);
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

// ---------------------------------------------------------------------------
// Ring operations
// ---------------------------------------------------------------------------

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(out)
    }
}

macro_rules! owned_ops {
    ($($trait:ident, $method:ident);*) => {$(
        impl std::ops::$trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    )*};
}
owned_ops!(Add, add; Sub, sub; Mul, mul);

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Euclidean division: `a = q*b + r` with `deg(r) < deg(b)`.
pub fn divrem(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    if b.is_zero() {
        return Err(Error::DivisionByZeroPoly);
    }
    let db = b.coeffs.len() - 1;
    let lb = b.leading_coeff().unwrap().clone();
    let mut r = a.coeffs.clone();
    let mut q = vec![Rat::zero(); a.coeffs.len().saturating_sub(db)];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        let c = lr / &lb;
        for (j, bc) in b.coeffs.iter().enumerate() {
            if !bc.is_zero() {
                let t = &c * bc;
                r[k + j] -= t;
            }
        }
        // the leading term cancels exactly
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        q[k] = c;
    }
    Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
}

/// Exact division; an inexact division signals a bug in the caller.
pub(crate) fn exact_div(a: &Poly, b: &Poly) -> Result<Poly> {
    let (q, r) = divrem(a, b)?;
    if !r.is_zero() {
        return Err(Error::Internal("inexact polynomial division".into()));
    }
    Ok(q)
}

/// Monic greatest common divisor; `gcd(a, 0) = monic(a)`.
pub fn gcd_monic(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Poly::one());
    }
    let za = to_primitive_zpoly(a).0;
    let zb = to_primitive_zpoly(b).0;
    let g = z_gcd(&za, &zb);
    Ok(zpoly_to_poly(&g).monic())
}

/// Monic least common multiple of two nonzero polynomials.
pub fn lcm_monic(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let g = gcd_monic(a, b)?;
    Ok(exact_div(&(a * b), &g)?.monic())
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g` monic,
/// `deg(s) < deg(b/g)` and `deg(t) < deg(a/g)`.
///
/// For equal inputs the tie rule is `(monic(a), 0, 1/lc(b))`.
pub fn xgcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    if a == b {
        let lc = b.leading_coeff().unwrap().recip();
        return Ok((a.monic(), Poly::zero(), Poly::constant(lc)));
    }
    if a.is_zero() {
        let lc = b.leading_coeff().unwrap().recip();
        return Ok((b.monic(), Poly::zero(), Poly::constant(lc)));
    }
    if b.is_zero() {
        let lc = a.leading_coeff().unwrap().recip();
        return Ok((a.monic(), Poly::constant(lc), Poly::zero()));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r2) = divrem(&r0, &r1)?;
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lc = r0.leading_coeff().unwrap().recip();
    Ok((r0.scale(&lc), s0.scale(&lc), t0.scale(&lc)))
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub(crate) fn invmod(a: &Poly, m: &Poly) -> Result<Poly> {
    let (g, s, _) = xgcd(a, m)?;
    if !g.is_one() {
        return Err(Error::FactorsNotCoprime);
    }
    let (_, r) = divrem(&s, m)?;
    Ok(r)
}

/// Monic `b / gcd(b, b')`, the product of the distinct irreducible factors.
pub fn squarefree_part(b: &Poly) -> Result<Poly> {
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    if b.is_constant() {
        return Ok(Poly::one());
    }
    let g = gcd_monic(b, &b.derivative())?;
    Ok(exact_div(b, &g)?.monic())
}

/// True when `b` is nonzero with `gcd(b, b') = 1`.
pub fn is_squarefree(b: &Poly) -> bool {
    if b.is_zero() {
        return false;
    }
    if b.is_constant() {
        return true;
    }
    gcd_monic(b, &b.derivative()).map(|g| g.is_one()).unwrap_or(false)
}

/// Yun squarefree decomposition: returns monic `(d_1, ..., d_n)` with
/// `b = lc(b) * prod d_i^i`; entries for absent multiplicities are 1.
pub fn squarefree_decomposition(b: &Poly) -> Result<Vec<Poly>> {
    if b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let bm = b.monic();
    if bm.is_constant() {
        return Ok(Vec::new());
    }
    let g = gcd_monic(&bm, &bm.derivative())?;
    if g.is_one() {
        return Ok(vec![bm]);
    }
    let mut w = exact_div(&bm, &g)?;
    let mut y = exact_div(&bm.derivative(), &g)?;
    let mut z = &y - &w.derivative();
    let mut parts = Vec::new();
    while !w.is_constant() {
        let a = gcd_monic(&w, &z)?;
        w = exact_div(&w, &a)?;
        y = exact_div(&z, &a)?;
        z = &y - &w.derivative();
        parts.push(a);
    }
    Ok(parts)
}

// ---------------------------------------------------------------------------
// Integer polynomial layer (subresultant PRS)
// ---------------------------------------------------------------------------

fn z_trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn z_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn z_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut c = z_content(&v);
    if c.is_zero() {
        return v;
    }
    if v.last().unwrap().is_negative() {
        c = -c;
    }
    for x in v.iter_mut() {
        *x = &*x / &c;
    }
    v
}

/// Clears denominators and removes the content: returns `(p_z, scale)` with
/// `p = scale * p_z`, `p_z` primitive with positive leading coefficient.
fn to_primitive_zpoly(p: &Poly) -> (Vec<BigInt>, Rat) {
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * &den / c.denom()).collect();
    let prim = z_primitive(ints.clone());
    if prim.is_empty() {
        return (prim, Rat::zero());
    }
    let mut content = z_content(&ints);
    if ints.last().unwrap().is_negative() {
        content = -content;
    }
    (prim, Rat::new(content, den))
}

fn zpoly_to_poly(v: &[BigInt]) -> Poly {
    Poly::from_coeffs(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn z_scale(v: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    v.iter().map(|x| x * c).collect()
}

fn z_eval(v: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in v.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Integer Taylor shift `p(x + n)`.
fn z_shift(v: &[BigInt], n: &BigInt) -> Vec<BigInt> {
    let mut acc: Vec<BigInt> = Vec::with_capacity(v.len());
    for a in v.iter().rev() {
        acc.push(BigInt::zero());
        for j in (0..acc.len()).rev() {
            let lower = if j > 0 { acc[j - 1].clone() } else { BigInt::zero() };
            acc[j] = lower + n * &acc[j];
        }
        acc[0] += a;
    }
    z_trim(&mut acc);
    acc
}

/// Full pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn z_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let d = b.last().unwrap();
    let mut r = a.to_vec();
    let mut e = (a.len() - 1 - db + 1) as i64;
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        r = z_scale(&r, d);
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
        z_trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = d.pow(e as u32);
        r = z_scale(&r, &f);
    }
    r
}

/// Primitive gcd of two nonzero integer polynomials (subresultant PRS).
fn z_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut big, mut small) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    big = z_primitive(big);
    small = z_primitive(small);
    if small.len() <= 1 {
        return vec![BigInt::one()];
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (big.len() - small.len()) as u32;
        let r = z_prem(&big, &small);
        if r.is_empty() {
            return z_primitive(small);
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        big = small;
        let divisor = &g * h.pow(delta);
        small = r.iter().map(|c| c / &divisor).collect();
        g = big.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta) / h.pow(delta - 1),
        };
    }
}

/// Resultant of two nonzero integer polynomials (subresultant PRS).
fn z_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (mut big, mut small, sign) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec(), false)
    } else {
        let flip = (a.len() - 1) * (b.len() - 1) % 2 == 1;
        (b.to_vec(), a.to_vec(), flip)
    };
    let ca = z_content(&big);
    let cb = z_content(&small);
    big = big.iter().map(|c| c / &ca).collect();
    small = small.iter().map(|c| c / &cb).collect();
    let mut t = ca.pow((small.len() - 1) as u32) * cb.pow((big.len() - 1) as u32);
    if sign {
        t = -t;
    }
    if big.len() == 1 {
        // two constants: empty Sylvester matrix
        return t;
    }
    if small.len() == 1 {
        return t * small[0].pow((big.len() - 1) as u32);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (big.len() - small.len()) as u32;
        if (big.len() - 1) % 2 == 1 && (small.len() - 1) % 2 == 1 {
            t = -t;
        }
        let r = z_prem(&big, &small);
        if r.is_empty() {
            return BigInt::zero();
        }
        big = small;
        let divisor = &g * h.pow(delta);
        small = r.iter().map(|c| c / &divisor).collect();
        g = big.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta) / h.pow(delta - 1),
        };
        if small.len() == 1 {
            let da = (big.len() - 1) as u32;
            let val = if da >= 1 {
                small[0].pow(da) / h.pow(da - 1)
            } else {
                BigInt::one()
            };
            return t * val;
        }
    }
}

/// Resultant of `a` and `b` over Q; zero when either input is zero.
pub fn resultant(a: &Poly, b: &Poly) -> Rat {
    if a.is_zero() || b.is_zero() {
        return Rat::zero();
    }
    let da = a.degree() as u32;
    let db = b.degree() as u32;
    if da == 0 && db == 0 {
        return Rat::one();
    }
    if da == 0 {
        return pow_rat(a.leading_coeff().unwrap(), db);
    }
    if db == 0 {
        return pow_rat(b.leading_coeff().unwrap(), da);
    }
    let (za, ra) = to_primitive_zpoly(a);
    let (zb, rb) = to_primitive_zpoly(b);
    let core = z_resultant(&za, &zb);
    pow_rat(&ra, db) * pow_rat(&rb, da) * Rat::from_integer(core)
}

fn pow_rat(c: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= c;
    }
    acc
}

// ---------------------------------------------------------------------------
// Shift resultant and integer roots
// ---------------------------------------------------------------------------

// --- modular arithmetic helpers for the shift resultant ---

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod_u64(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    if n < 2 {
        return false;
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn modular_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(192);
        let mut c = (1u64 << 62) - 1;
        while out.len() < 192 {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

fn zp_reduce(v: &[BigInt], p: u64) -> Vec<u64> {
    let pz = BigInt::from(p);
    let mut out: Vec<u64> = v
        .iter()
        .map(|c| c.mod_floor(&pz).to_u64().expect("residue fits"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// `v(x + t) mod p`.
fn zp_shift(v: &[u64], t: u64, p: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::with_capacity(v.len());
    for &a in v.iter().rev() {
        acc.push(0);
        for j in (0..acc.len()).rev() {
            let lower = if j > 0 { acc[j - 1] } else { 0 };
            acc[j] = (lower + mulmod(t, acc[j], p)) % p;
        }
        acc[0] = (acc[0] + a) % p;
    }
    while acc.last() == Some(&0) {
        acc.pop();
    }
    acc
}

/// Remainder `a mod b` over Z/p, `b` nonzero.
fn zp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let binv = inv_mod_u64(b[db], p);
    let mut r = a.to_vec();
    while r.len() > db {
        let c = mulmod(*r.last().unwrap(), binv, p);
        let k = r.len() - 1 - db;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let sub = mulmod(c, bc, p);
                r[k + j] = (r[k + j] + p - sub) % p;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

/// Resultant over Z/p by the Euclidean recurrence.
fn zp_resultant(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> u64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut neg = false;
    if a.len() < b.len() {
        if (a.len() - 1) * (b.len() - 1) % 2 == 1 {
            neg = !neg;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut res: u64 = 1;
    loop {
        if b.len() == 1 {
            res = mulmod(res, powmod(b[0], (a.len() - 1) as u64, p), p);
            break;
        }
        let r = zp_rem(&a, &b, p);
        if r.is_empty() {
            return 0;
        }
        let da = a.len() - 1;
        let db = b.len() - 1;
        let dr = r.len() - 1;
        if da % 2 == 1 && db % 2 == 1 {
            neg = !neg;
        }
        res = mulmod(res, powmod(b[db], (da - dr) as u64, p), p);
        a = b;
        b = r;
    }
    if neg {
        (p - res) % p
    } else {
        res
    }
}

/// Newton interpolation over Z/p at the nodes `0, 1, ..., N-1`; returns all
/// `N` monomial coefficients (top ones may be zero mod p).
fn zp_interpolate(values: &[u64], p: u64) -> Vec<u64> {
    let n = values.len();
    let mut coef = values.to_vec();
    let mut inv = vec![0u64; n];
    for (j, entry) in inv.iter_mut().enumerate().skip(1) {
        *entry = inv_mod_u64(j as u64, p);
    }
    for j in 1..n {
        for i in (j..n).rev() {
            let diff = (coef[i] + p - coef[i - 1]) % p;
            coef[i] = mulmod(diff, inv[j], p);
        }
    }
    let mut poly = vec![coef[n - 1]];
    for i in (0..n - 1).rev() {
        // poly = poly * (z - i) + coef[i]
        poly.push(0);
        let xi = (i as u64) % p;
        for j in (0..poly.len()).rev() {
            let lower = if j > 0 { poly[j - 1] } else { 0 };
            let t = mulmod(xi, poly[j], p);
            poly[j] = (lower + p - t) % p;
        }
        poly[0] = (poly[0] + coef[i]) % p;
    }
    poly
}

/// `Resultant_x(b(x), b(x+z))` as a polynomial in `z`, of degree `deg(b)^2`.
///
/// Computed by evaluating at `deg(b)^2 + 1` integer values of `z` (using the
/// primitive integer form of `b`) and interpolating in `z`. The per-point
/// resultants and the interpolation run modulo 62-bit primes and the integer
/// coefficients are recovered by CRT; the reconstruction is certified by the
/// bound `|coeff| <= lc^(2n) (1 + 2 rho)^(n^2)` with `rho` a root magnitude
/// bound of `b`, which dominates every coefficient of
/// `lc^(2n) prod (z - (a_j - a_i))` over the root pairs.
pub fn shift_resultant(b: &Poly) -> Result<Poly> {
    let n = b.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let (zb, rb) = to_primitive_zpoly(b);
    let npoints = (n * n + 1) as usize;
    let lead = BigInt::from(zb.last().unwrap().magnitude().clone());
    let rho = z_root_bound(&zb);
    let bound: BigInt =
        lead.pow(2 * n as u32) * (BigInt::from(1) + BigInt::from(2) * rho).pow((n * n) as u32);
    let target: BigInt = BigInt::from(2) * &bound + 1;
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); npoints];
    let mut modulus = BigInt::one();
    for &p in modular_primes() {
        let pb = zp_reduce(&zb, p);
        if pb.len() != zb.len() {
            continue; // leading coefficient vanished mod p
        }
        let mut values = Vec::with_capacity(npoints);
        for t in 0..npoints {
            let shifted = zp_shift(&pb, (t as u64) % p, p);
            values.push(zp_resultant(pb.clone(), shifted, p));
        }
        let images = zp_interpolate(&values, p);
        let pz = BigInt::from(p);
        let minv = inv_mod_u64(modulus.mod_floor(&pz).to_u64().expect("fits"), p);
        for (acc, &c) in coeffs.iter_mut().zip(&images) {
            let rem = acc.mod_floor(&pz).to_u64().expect("fits");
            let delta = (c + p - rem) % p;
            let lift = mulmod(delta, minv, p);
            *acc += &modulus * BigInt::from(lift);
        }
        modulus *= &pz;
        if modulus > target {
            break;
        }
    }
    if modulus <= target {
        // astronomically large input: fall back to the exact integer route
        return shift_resultant_exact(&zb, &rb, n, npoints);
    }
    let half: BigInt = &modulus >> 1;
    let core = Poly::from_coeffs(
        coeffs
            .into_iter()
            .map(|c| {
                let centered = if c > half { c - &modulus } else { c };
                Rat::from_integer(centered)
            })
            .collect(),
    );
    // b = rb * zb, so Res(b(x), b(x+z)) = rb^(2n) * Res(zb(x), zb(x+z)).
    Ok(core.scale(&pow_rat(&rb, 2 * n as u32)))
}

/// Exact fallback: subresultant PRS per point, rational interpolation.
fn shift_resultant_exact(zb: &[BigInt], rb: &Rat, n: i64, npoints: usize) -> Result<Poly> {
    let mut points: Vec<(Rat, Rat)> = Vec::with_capacity(npoints);
    let mut t: i64 = 0;
    while points.len() < npoints {
        let tz = BigInt::from(t);
        let shifted = z_shift(zb, &tz);
        let v = z_resultant(zb, &shifted);
        points.push((rat_int(t), Rat::from_integer(v)));
        t = if t > 0 { -t } else { -t + 1 };
    }
    let core = interpolate(&points);
    Ok(core.scale(&pow_rat(rb, 2 * n as u32)))
}

/// Newton interpolation through distinct rational nodes.
pub(crate) fn interpolate(points: &[(Rat, Rat)]) -> Poly {
    let n = points.len();
    let mut coef: Vec<Rat> = points.iter().map(|(_, v)| v.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            coef[i] = num / den;
        }
    }
    let mut p = Poly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let node = Poly::from_coeffs(vec![-&points[i].0, Rat::one()]);
        p = &(&p * &node) + &Poly::constant(coef[i].clone());
    }
    p
}

/// Upper bound on the magnitude of every complex root of a nonzero integer
/// polynomial: the smaller of the Cauchy bound `1 + max|a_i|/|a_n|` and the
/// Fujiwara-style bound `2 max_i |a_(n-i)/a_n|^(1/i)`. The latter stays small
/// when the coefficients are huge but the roots are not, as for shift
/// resultants.
fn z_root_bound(q: &[BigInt]) -> BigInt {
    let lead = q.last().unwrap().magnitude().clone();
    let mut cauchy = BigInt::zero();
    let mut fujiwara = BigInt::one();
    for (i, c) in q.iter().enumerate() {
        if i + 1 == q.len() || c.is_zero() {
            continue;
        }
        let ratio = BigInt::from(c.magnitude() / &lead + 1u32); // >= |a_i|/|a_n|
        if ratio > cauchy {
            cauchy = ratio.clone();
        }
        let k = (q.len() - 1 - i) as u32;
        let root = ratio.nth_root(k) + 1;
        if root > fujiwara {
            fujiwara = root;
        }
    }
    let cauchy: BigInt = cauchy + 1;
    let fujiwara: BigInt = fujiwara * 2;
    cauchy.min(fujiwara)
}

/// All integer roots of a nonzero polynomial, ascending.
///
/// Clears denominators, strips the power of `x`, and tests the divisors of
/// the trailing coefficient that survive the root magnitude bound.
pub fn integer_roots(p: &Poly) -> Result<Vec<BigInt>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (zp, _) = to_primitive_zpoly(p);
    let v = zp.iter().position(|c| !c.is_zero()).unwrap();
    let q: Vec<BigInt> = zp[v..].to_vec();
    let mut roots: Vec<BigInt> = Vec::new();
    if v > 0 {
        roots.push(BigInt::zero());
    }
    if q.len() <= 1 {
        return Ok(roots);
    }
    let bound: u64 = z_root_bound(&q)
        .to_u64()
        .ok_or_else(|| Error::Internal("integer root bound exceeds u64".into()))?;
    let trailing = q[0].clone();
    for d in 1..=bound {
        let dz = BigInt::from(d);
        if (&trailing % &dz).is_zero() {
            if z_eval(&q, &dz).is_zero() {
                roots.push(dz.clone());
            }
            if z_eval(&q, &(-&dz)).is_zero() {
                roots.push(-dz);
            }
        }
    }
    roots.sort();
    Ok(roots)
}

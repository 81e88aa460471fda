//! Exact Laurent polynomials in `p` and `q` with integer coefficients.
//!
//! Exponents of `q` are stored in quarter units (`e_q4 = 4 * exponent`), so
//! the ring is `Z[p, 1/p, q^(1/4), q^(-1/4)]`. Kasteleyn matrices only use
//! integral `q` powers; connection matrices use the quarter powers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent pair `(e_p, e_q4)`.
pub type Exponent = (i64, i64);

/// Sparse Laurent polynomial. No zero coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

/// An invertible element `sign * p^p * q^(q4/4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnitMonomial {
    pub sign: i8,
    pub p: i64,
    pub q4: i64,
}

impl UnitMonomial {
    pub const ONE: UnitMonomial = UnitMonomial { sign: 1, p: 0, q4: 0 };

    pub fn new(sign: i8, p: i64, q4: i64) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        UnitMonomial { sign, p, q4 }
    }

    pub fn inverse(self) -> Self {
        UnitMonomial { sign: self.sign, p: -self.p, q4: -self.q4 }
    }

    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::monomial(self.sign as i64, self.p, self.q4)
    }
}

impl Mul for UnitMonomial {
    type Output = UnitMonomial;
    fn mul(self, o: UnitMonomial) -> UnitMonomial {
        UnitMonomial { sign: self.sign * o.sign, p: self.p + o.p, q4: self.q4 + o.q4 }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e_p: i64, e_q4: i64) -> Self {
        let mut out = LaurentPoly::zero();
        out.add_term((e_p, e_q4), c.into());
        out
    }

    /// `p`
    pub fn p() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// `q` (one full unit, four quarter units)
    pub fn q() -> Self {
        Self::monomial(1, 0, 4)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = LaurentPoly::zero();
        for (ep, eq, c) in terms {
            out.add_term((ep, eq), c.into());
        }
        out
    }

    /// Univariate polynomial in `p` from ascending integer coefficients, with
    /// `coeffs[0]` multiplying `p^valuation`.
    pub fn from_p_coeffs(valuation: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs.iter().enumerate().map(|(i, &c)| (valuation + i as i64, 0, c)),
        )
    }

    pub fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e_p: i64, e_q4: i64) -> BigInt {
        self.terms.get(&(e_p, e_q4)).cloned().unwrap_or_default()
    }

    /// Terms in ascending lexicographic `(e_p, e_q4)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn p_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?.0;
        let hi = self.terms.keys().next_back()?.0;
        Some((lo, hi))
    }

    pub fn q4_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|e| e.1).min()?;
        let hi = self.terms.keys().map(|e| e.1).max()?;
        Some((lo, hi))
    }

    /// True when every `q` exponent is an integer.
    pub fn has_integral_q(&self) -> bool {
        self.terms.keys().all(|e| e.1.rem_euclid(4) == 0)
    }

    /// True when the polynomial does not involve `q`.
    pub fn is_univariate_p(&self) -> bool {
        self.terms.keys().all(|e| e.1 == 0)
    }

    /// Coefficient of each `p^f`, as a polynomial in `q` alone.
    pub fn p_coefficients(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (&(ep, eq), c) in &self.terms {
            out.entry(ep).or_default().add_term((0, eq), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul_unit(&self, u: UnitMonomial) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(ep, eq), v)| {
                    let v = if u.sign < 0 { -v } else { v.clone() };
                    ((ep + u.p, eq + u.q4), v)
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `p -> -p` and/or `q -> -q`. Negating `q` needs integral `q` powers.
    pub fn negate_variables(&self, neg_p: bool, neg_q: bool) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (&(ep, eq), c) in &self.terms {
            let mut flip = neg_p && ep.rem_euclid(2) == 1;
            if neg_q {
                if eq.rem_euclid(4) != 0 {
                    return Err(Error::InexactDivision);
                }
                flip ^= (eq / 4).rem_euclid(2) == 1;
            }
            out.add_term((ep, eq), if flip { -c } else { c.clone() });
        }
        Ok(out)
    }

    /// Set `q = 1`.
    pub fn at_q_one(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(ep, _), c) in &self.terms {
            out.add_term((ep, 0), c.clone());
        }
        out
    }

    /// Set `q = -1`; fails on quarter powers.
    pub fn at_q_minus_one(&self) -> Result<LaurentPoly> {
        Ok(self.negate_variables(false, true)?.at_q_one())
    }

    /// Replace `q` by `q^k` (exponents scaled by `k`).
    pub fn scale_q_exponents(&self, k: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(ep, eq), c) in &self.terms {
            out.add_term((ep, eq * k), c.clone());
        }
        out
    }

    /// Evaluate at complex `(p, q)`. `q^(1/4)` uses the principal branch.
    pub fn eval(&self, p: Complex64, q: Complex64) -> Result<Complex64> {
        let q14 = if q == Complex64::new(0.0, 0.0) {
            q
        } else {
            Complex64::from_polar(q.norm().powf(0.25), q.arg() / 4.0)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(ep, eq), c) in &self.terms {
            if (ep < 0 && p.norm() == 0.0) || (eq < 0 && q.norm() == 0.0) {
                return Err(Error::EvalAtZero);
            }
            let cf = c.to_f64().unwrap_or(f64::NAN);
            acc += p.powi(ep as i32) * q14.powi(eq as i32) * cf;
        }
        Ok(acc)
    }

    /// Specialize `q` to a positive real, returning `(valuation, ascending coefficients)` in `p`.
    pub fn coeffs_at_q(&self, q: f64) -> Result<(i64, Vec<f64>)> {
        let (lo, hi) = self.p_range().ok_or(Error::ZeroPolynomial)?;
        let mut coeffs = vec![0.0; (hi - lo + 1) as usize];
        let q14 = q.powf(0.25);
        for (&(ep, eq), c) in &self.terms {
            if eq < 0 && q == 0.0 {
                return Err(Error::EvalAtZero);
            }
            coeffs[(ep - lo) as usize] += c.to_f64().unwrap_or(f64::NAN) * q14.powi(eq as i32);
        }
        Ok((lo, coeffs))
    }

    /// Split off a unit so that the remaining polynomial has minimal `p` and `q`
    /// exponents zero and a positive coefficient on its least monomial.
    pub fn canonicalize(&self) -> Result<(LaurentPoly, UnitMonomial)> {
        let (minp, _) = self.p_range().ok_or(Error::ZeroPolynomial)?;
        let (minq, _) = self.q4_range().ok_or(Error::ZeroPolynomial)?;
        let mut shifted = self.mul_unit(UnitMonomial::new(1, -minp, -minq));
        let sign = if shifted.terms.values().next().is_some_and(|c| c.is_negative()) {
            -1
        } else {
            1
        };
        if sign < 0 {
            shifted = -shifted;
        }
        Ok((shifted, UnitMonomial::new(sign, minp, minq)))
    }

    pub fn canonical(&self) -> LaurentPoly {
        self.canonicalize().map(|c| c.0).unwrap_or_default()
    }

    /// Equality up to multiplication by a unit monomial.
    pub fn equals_up_to_unit(&self, other: &LaurentPoly) -> bool {
        match (self.canonicalize(), other.canonicalize()) {
            (Ok(a), Ok(b)) => a.0 == b.0,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// The unit `u` with `self = u * other`, if one exists.
    pub fn unit_ratio(&self, other: &LaurentPoly) -> Option<UnitMonomial> {
        let (a, ua) = self.canonicalize().ok()?;
        let (b, ub) = other.canonicalize().ok()?;
        (a == b).then(|| ua * ub.inverse())
    }

    fn leading(&self) -> Option<(Exponent, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact division. Fails with `InexactDivision` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if divisor.terms.len() == 1 {
            let (&(dp, dq), dc) = divisor.terms.iter().next().unwrap();
            let mut out = LaurentPoly::zero();
            for (&(ep, eq), c) in &self.terms {
                let (quo, rem) = c.div_rem(dc);
                if !rem.is_zero() {
                    return Err(Error::InexactDivision);
                }
                out.terms.insert((ep - dp, eq - dq), quo);
            }
            return Ok(out);
        }
        let (ap_lo, ap_hi) = self.p_range().unwrap();
        let (aq_lo, aq_hi) = self.q4_range().unwrap();
        let (bp_lo, bp_hi) = divisor.p_range().unwrap();
        let (bq_lo, bq_hi) = divisor.q4_range().unwrap();
        let p_bounds = (ap_lo - bp_lo, ap_hi - bp_hi);
        let q_bounds = (aq_lo - bq_lo, aq_hi - bq_hi);
        if p_bounds.0 > p_bounds.1 || q_bounds.0 > q_bounds.1 {
            return Err(Error::InexactDivision);
        }
        let (lead_e, lead_c) = divisor.leading().unwrap();
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quo = LaurentPoly::zero();
        while let Some((re, rc)) = rem.leading() {
            let (qc, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let qe = (re.0 - lead_e.0, re.1 - lead_e.1);
            if qe.0 < p_bounds.0 || qe.0 > p_bounds.1 || qe.1 < q_bounds.0 || qe.1 > q_bounds.1 {
                return Err(Error::InexactDivision);
            }
            for (&(dp, dq), dc) in &divisor.terms {
                rem.add_term((dp + qe.0, dq + qe.1), -(dc * &qc));
            }
            quo.terms.insert(qe, qc);
        }
        Ok(quo)
    }

    /// Polynomial JSON form: sorted `[e_p, e_q4, "coefficient"]` triples.
    pub fn to_triples(&self) -> Vec<(i64, i64, String)> {
        self.terms.iter().map(|(&(ep, eq), c)| (ep, eq, c.to_string())).collect()
    }

    pub fn from_triples(triples: &[(i64, i64, String)]) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (ep, eq, c) in triples {
            let c: BigInt = c.parse().map_err(|_| Error::Parse {
                line: 0,
                column: 0,
                message: format!("bad coefficient {c:?}"),
            })?;
            out.add_term((*ep, *eq), c);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(i64, i64, String)>::deserialize(d)?;
        LaurentPoly::from_triples(&triples).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(ep, eq), c) in &self.terms {
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || (ep == 0 && eq == 0) {
                parts.push(mag.to_string());
            }
            match ep {
                0 => {}
                1 => parts.push("p".into()),
                _ => parts.push(format!("p^{ep}")),
            }
            if eq != 0 {
                if eq % 4 == 0 {
                    if eq == 4 {
                        parts.push("q".into());
                    } else {
                        parts.push(format!("q^{}", eq / 4));
                    }
                } else {
                    parts.push(format!("q^({eq}/4)"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.len() == 1 {
            let (&(sp, sq), sc) = small.terms.iter().next().unwrap();
            return LaurentPoly {
                terms: big.terms.iter().map(|(&(ep, eq), c)| ((ep + sp, eq + sq), c * sc)).collect(),
            };
        }
        // dense accumulation over the bounding box when it is small enough
        let (ap, bp) = (self.p_range().unwrap(), rhs.p_range().unwrap());
        let (aq, bq) = (self.q4_range().unwrap(), rhs.q4_range().unwrap());
        let p_lo = ap.0 + bp.0;
        let q_lo = aq.0 + bq.0;
        let wp = (ap.1 + bp.1 - p_lo + 1) as usize;
        let wq = (aq.1 + bq.1 - q_lo + 1) as usize;
        if wp.saturating_mul(wq) <= 4 * self.len() * rhs.len() + 64 {
            let mut buf = vec![BigInt::zero(); wp * wq];
            for (&(ep, eq), c) in &self.terms {
                for (&(fp, fq), d) in &rhs.terms {
                    let idx = (ep + fp - p_lo) as usize * wq + (eq + fq - q_lo) as usize;
                    buf[idx] += c * d;
                }
            }
            let mut terms = BTreeMap::new();
            for (idx, c) in buf.into_iter().enumerate() {
                if !c.is_zero() {
                    let ep = (idx / wq) as i64 + p_lo;
                    let eq = (idx % wq) as i64 + q_lo;
                    terms.insert((ep, eq), c);
                }
            }
            return LaurentPoly { terms };
        }
        let mut out = LaurentPoly::zero();
        for (&(ep, eq), c) in &self.terms {
            for (&(fp, fq), d) in &rhs.terms {
                out.add_term((ep + fp, eq + fq), c * d);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Square matrix over the Laurent ring.
pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

/// Size below which [`det_exact`] uses memoized cofactor expansion.
pub const COFACTOR_LIMIT: usize = 7;

/// Exact determinant. Cofactor expansion below [`COFACTOR_LIMIT`], fraction-free
/// Bareiss elimination otherwise.
pub fn det_exact(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return LaurentPoly::one();
    }
    if n < COFACTOR_LIMIT {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}

/// Laplace expansion along rows, memoized over the set of remaining columns.
pub fn det_cofactor(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    assert!(n <= 20, "cofactor expansion limited to 20x20");
    let mut memo: Vec<Option<LaurentPoly>> = vec![None; 1 << n];
    fn rec(m: &[Vec<LaurentPoly>], cols: usize, memo: &mut Vec<Option<LaurentPoly>>) -> LaurentPoly {
        let n = m.len();
        let row = n - cols.count_ones() as usize;
        if row == n {
            return LaurentPoly::one();
        }
        if let Some(v) = &memo[cols] {
            return v.clone();
        }
        let mut acc = LaurentPoly::zero();
        let mut idx = 0usize;
        for j in 0..n {
            if cols & (1 << j) == 0 {
                continue;
            }
            if !m[row][j].is_zero() {
                let minor = rec(m, cols & !(1 << j), memo);
                let term = &m[row][j] * &minor;
                if idx.is_multiple_of(2) {
                    acc += &term;
                } else {
                    acc = &acc - &term;
                }
            }
            idx += 1;
        }
        memo[cols] = Some(acc.clone());
        acc
    }
    rec(m, (1usize << n) - 1, &mut memo)
}

/// Fraction-free Bareiss elimination with sparsest-pivot row swaps.
pub fn det_bareiss(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut sign = 1i64;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (a[i][k].len(), i));
        let Some(piv) = pivot else {
            return LaurentPoly::zero();
        };
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        if k + 1 == n {
            break;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let akk = &pivot_row[k];
        for row in bottom.iter_mut() {
            let aik = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let lhs = if row[j].is_zero() { LaurentPoly::zero() } else { &row[j] * akk };
                let rhs = if aik.is_zero() || pivot_row[j].is_zero() {
                    LaurentPoly::zero()
                } else {
                    &aik * &pivot_row[j]
                };
                let num = &lhs - &rhs;
                row[j] = if prev.is_one() {
                    num
                } else {
                    num.div_exact(&prev).expect("Bareiss division must be exact")
                };
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// The `n`-th root power: the polynomial whose nonzero roots are
/// `(-1)^(n+1) * lambda^n` for the nonzero roots `lambda` of `poly` (in `p`),
/// with leading coefficient raised to the `n` and the same `p`-valuation.
///
/// Computed exactly as a norm: the determinant of multiplication by `poly` on
/// `R[X][Y]/(Y^n - X)`, followed by `X -> (-1)^(n+1) X`.
pub fn root_power(poly: &LaurentPoly, n: u32) -> Result<LaurentPoly> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert!(n >= 1, "root power needs n >= 1");
    if n == 1 {
        return Ok(poly.clone());
    }
    let n_us = n as usize;
    let (val, _) = poly.p_range().unwrap();
    let shifted = poly.mul_unit(UnitMonomial::new(1, -val, 0));
    // residue parts P_r(X) with P(Y) = sum_r Y^r P_r(Y^n)
    let mut parts = vec![LaurentPoly::zero(); n_us];
    for ((ep, eq), c) in shifted.terms() {
        let r = (ep as usize) % n_us;
        let k = ep / n as i64;
        parts[r].add_term((k, eq), c.clone());
    }
    let mut mat = vec![vec![LaurentPoly::zero(); n_us]; n_us];
    for (i, col) in (0..n_us).map(|i| (i, i)) {
        for (r, part) in parts.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let e = i + r;
            let (row, wrap) = if e >= n_us { (e - n_us, 1) } else { (e, 0) };
            mat[row][col] += &part.mul_unit(UnitMonomial::new(1, wrap, 0));
        }
    }
    let norm = det_exact(&mat);
    let flipped = norm.negate_variables(n.is_multiple_of(2), false)?;
    Ok(flipped.mul_unit(UnitMonomial::new(1, val, 0)))
}

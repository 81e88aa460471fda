//! Root analysis of flux polynomials and spectral checks on connection matrices.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{det_exact, LaurentPoly, UnitMonomial};

/// Relative separation below which two roots count as equal.
pub const SEPARATION_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    /// Nonzero roots, sorted by real part.
    #[serde(serialize_with = "ser_complex")]
    pub roots: Vec<Complex64>,
    /// `p`-valuation `b`.
    pub valuation: i64,
    /// Leading coefficient `a`.
    pub leading: f64,
    /// Largest relative backward error over the roots.
    pub backward_error: f64,
    pub all_real_negative: bool,
    pub all_distinct: bool,
    pub all_unit_modulus: bool,
}

fn ser_complex<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&(z.re, z.im))?;
    }
    seq.end()
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::zero();
    let mut der = Complex64::zero();
    for &c in coeffs.iter().rev() {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

fn backward_error(coeffs: &[f64], z: Complex64) -> f64 {
    let (val, _) = horner(coeffs, z);
    let scale: f64 = coeffs.iter().enumerate().map(|(i, c)| c.abs() * z.norm().powi(i as i32)).sum();
    if scale == 0.0 {
        0.0
    } else {
        val.norm() / scale
    }
}

/// Roots of a dense polynomial given by ascending coefficients.
pub fn roots_of_coeffs(valuation: i64, coeffs: &[f64]) -> Result<RootReport> {
    let lo = coeffs.iter().position(|&c| c != 0.0).ok_or(Error::ZeroPolynomial)?;
    let hi = coeffs.iter().rposition(|&c| c != 0.0).unwrap();
    let c = &coeffs[lo..=hi];
    let deg = c.len() - 1;
    let mut roots = Vec::with_capacity(deg);
    if deg > 0 {
        let lead = c[deg];
        let mut comp = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            comp[(i, deg - 1)] = -c[i] / lead;
        }
        for z in comp.complex_eigenvalues().iter() {
            let mut z = *z;
            let (v, d) = horner(c, z);
            if d.norm() > 0.0 {
                let step = v / d;
                let polished = z - step;
                if backward_error(c, polished) <= backward_error(c, z) {
                    z = polished;
                }
            }
            roots.push(z);
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let backward_error = roots.iter().map(|&z| backward_error(c, z)).fold(0.0, f64::max);
    let all_real_negative = roots.iter().all(|z| z.im.abs() < 1e-8 * z.norm() && z.re < 0.0);
    let all_distinct = roots.iter().enumerate().all(|(i, a)| {
        roots[i + 1..]
            .iter()
            .all(|b| (a - b).norm() > SEPARATION_TOL * a.norm().max(b.norm()))
    });
    let all_unit_modulus = roots.iter().all(|z| (z.norm() - 1.0).abs() < 1e-8);
    Ok(RootReport {
        roots,
        valuation: valuation + lo as i64,
        leading: c[deg],
        backward_error,
        all_real_negative,
        all_distinct,
        all_unit_modulus,
    })
}

/// Nonzero roots in `p` of a polynomial without `q`.
pub fn numeric_roots(poly: &LaurentPoly) -> Result<RootReport> {
    numeric_roots_at_q(poly, 1.0)
}

/// Nonzero roots in `p` of `poly(., q)` for a positive real `q`.
pub fn numeric_roots_at_q(poly: &LaurentPoly, q: f64) -> Result<RootReport> {
    let (val, coeffs) = poly.coeffs_at_q(q)?;
    roots_of_coeffs(val, &coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct QPositiveVerdict {
    pub q: f64,
    pub report: RootReport,
    pub pass: bool,
}

/// Checks that all nonzero roots of `phi(., q)` are distinct and negative.
/// Fails with `WallsPresent` when the annulus has walls.
pub fn check_q_positive(phi: &LaurentPoly, q: f64, wall_free: bool) -> Result<QPositiveVerdict> {
    if !wall_free {
        return Err(Error::WallsPresent);
    }
    let report = numeric_roots_at_q(phi, q)?;
    let pass = report.all_real_negative && report.all_distinct;
    Ok(QPositiveVerdict { q, report, pass })
}

type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Exact division of integer polynomials; `None` when not divisible.
fn divide(num: &[BigInt], den: &[BigInt]) -> Option<IntPoly> {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return rem.is_empty().then(Vec::new);
    }
    let lead = den.last()?;
    let mut quot = vec![BigInt::zero(); rem.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + den.len() - 1];
        if top.is_zero() {
            continue;
        }
        if !(top % lead).is_zero() {
            return None;
        }
        let f = top / lead;
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &f * d;
        }
        quot[k] = f;
    }
    rem.iter().all(|c| c.is_zero()).then_some(quot)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The `d`-th cyclotomic polynomial, ascending coefficients.
pub fn cyclotomic(d: u64) -> Vec<BigInt> {
    let mut p: IntPoly = vec![BigInt::zero(); d as usize + 1];
    p[0] = BigInt::from(-1);
    p[d as usize] = BigInt::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = divide(&p, &cyclotomic(e)).expect("cyclotomic divisibility");
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicFactorization {
    /// Multiplicity of each cyclotomic index.
    pub factors: BTreeMap<u64, u32>,
    pub residual: UnitMonomial,
}

/// Exact certification that every nonzero root of `poly` (in `p`, no `q`) is a
/// root of unity, by trial division by cyclotomic polynomials.
pub fn cyclotomic_part(poly: &LaurentPoly) -> Option<CyclotomicFactorization> {
    if !poly.is_univariate_p() || poly.is_zero() {
        return None;
    }
    let (canon, unit) = poly.canonicalize().ok()?;
    let (_, hi) = canon.p_range()?;
    let mut rest: IntPoly = (0..=hi).map(|e| canon.coeff(e, 0)).collect();
    let mut factors = BTreeMap::new();
    let deg = hi as u64;
    let mut d = 1;
    while rest.len() > 1 && d <= 2 * deg * deg + 2 {
        if (euler_phi(d) as usize) < rest.len() {
            let c = cyclotomic(d);
            while let Some(q) = divide(&rest, &c) {
                rest = q;
                *factors.entry(d).or_insert(0) += 1;
            }
        }
        d += 1;
    }
    if rest.len() != 1 || rest[0].abs() != BigInt::one() {
        return None;
    }
    let sign = if rest[0].is_negative() { -unit.sign } else { unit.sign };
    Some(CyclotomicFactorization { factors, residual: UnitMonomial::new(sign, unit.p, unit.q4) })
}

/// Largest `k` with `(p + 1)^k` dividing `poly`.
pub fn multiplicity_at_minus_one(poly: &LaurentPoly) -> u32 {
    let f = LaurentPoly::from_p_coeffs(0, &[1, 1]);
    let mut rest = poly.clone();
    let mut k = 0;
    while !rest.is_zero() {
        match rest.div_exact(&f) {
            Ok(q) => {
                rest = q;
                k += 1;
            }
            Err(_) => break,
        }
    }
    k
}

/// `a_f` at a rational `q = num/den`, for polynomials with integral `q` exponents.
pub fn coefficients_at_rational_q(phi: &LaurentPoly, num: i64, den: i64) -> BTreeMap<i64, BigRational> {
    let q = BigRational::new(num.into(), den.into());
    let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
    for ((ep, eq4), c) in phi.terms() {
        let e = eq4.div_euclid(4);
        let qe = if e >= 0 { pow(&q, e as u32) } else { pow(&q.recip(), (-e) as u32) };
        *out.entry(ep).or_insert_with(BigRational::zero) += BigRational::from(c.clone()) * qe;
    }
    out
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcavityReport {
    pub log_concave: bool,
    pub max_exponent_concave: bool,
    pub min_exponent_convex: bool,
}

/// `a_f^2 >= a_(f-1) a_(f+1)` over the full `p`-range, exact.
pub fn is_log_concave(a: &BTreeMap<i64, BigRational>) -> bool {
    let (Some(&lo), Some(&hi)) = (a.keys().next(), a.keys().next_back()) else {
        return true;
    };
    let get = |f: i64| a.get(&f).cloned().unwrap_or_else(BigRational::zero);
    (lo + 1..hi).all(|f| get(f) * get(f) >= get(f - 1) * get(f + 1))
}

/// Per `p`-exponent maximal and minimal `q`-exponents (in quarters).
pub fn exponent_envelopes(phi: &LaurentPoly) -> BTreeMap<i64, (i64, i64)> {
    let mut out: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
    for ((ep, eq), _) in phi.terms() {
        let e = out.entry(ep).or_insert((eq, eq));
        e.0 = e.0.max(eq);
        e.1 = e.1.min(eq);
    }
    out
}

/// Log-concavity of `a_f` at `q = num/den`, concavity of the top and
/// convexity of the bottom `q`-exponent envelope.
pub fn concavity_report(phi: &LaurentPoly, num: i64, den: i64) -> ConcavityReport {
    let env = exponent_envelopes(phi);
    let fs: Vec<i64> = env.keys().copied().collect();
    let contiguous = fs.windows(2).all(|w| w[1] == w[0] + 1);
    let tops: Vec<i64> = env.values().map(|e| e.0).collect();
    let bots: Vec<i64> = env.values().map(|e| e.1).collect();
    ConcavityReport {
        log_concave: is_log_concave(&coefficients_at_rational_q(phi, num, den)),
        max_exponent_concave: contiguous && tops.windows(3).all(|w| 2 * w[1] >= w[0] + w[2]),
        min_exponent_convex: contiguous && bots.windows(3).all(|w| 2 * w[1] <= w[0] + w[2]),
    }
}

/// Elementary symmetric functions `e_0..e_m` of the given values.
pub fn elementary_symmetric(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::one()];
    for &v in values {
        e.push(Complex64::zero());
        for k in (1..e.len()).rev() {
            let prev = e[k - 1];
            e[k] += prev * v;
        }
    }
    e
}

/// Predicted `tr C_f^n` indexed by `k = f_max - f`: `a^n e_k((-lambda_i)^n)`.
pub fn predicted_traces(report: &RootReport, n: u32) -> Vec<f64> {
    let powered: Vec<Complex64> = report.roots.iter().map(|&z| (-z).powu(n)).collect();
    let an = report.leading.powi(n as i32);
    elementary_symmetric(&powered).into_iter().map(|e| an * e.re).collect()
}

/// Compares `traces[k] = tr C_(f_max - k)^n` with [`predicted_traces`].
pub fn symmetric_check(report: &RootReport, traces: &[f64], n: u32, tol: f64) -> bool {
    let pred = predicted_traces(report, n);
    let scale = pred.iter().chain(traces).fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let len = pred.len().max(traces.len());
    (0..len).all(|k| {
        let a = pred.get(k).copied().unwrap_or(0.0);
        let b = traces.get(k).copied().unwrap_or(0.0);
        (a - b).abs() <= tol * scale.max(a.abs())
    })
}

/// Eigenvalues of a real square matrix.
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Eigenvalue moduli of a complex matrix, via its real `2n x 2n` form
/// (each modulus then appears twice).
pub fn complex_eigen_moduli(m: &[Vec<Complex64>]) -> Vec<f64> {
    let n = m.len();
    let real = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = m[i % n][j % n];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    eigenvalues(&real).iter().map(|z| z.norm()).collect()
}

/// Multisets equal after discarding values of modulus below `tol * scale`.
pub fn spectra_match_up_to_zeros(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let scale = a.iter().chain(b).fold(1.0f64, |m, z| m.max(z.norm()));
    let nonzero = |v: &[Complex64]| -> Vec<Complex64> {
        let mut out: Vec<_> = v.iter().copied().filter(|z| z.norm() > tol * scale).collect();
        out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
        out
    };
    let (x, mut y) = (nonzero(a), nonzero(b));
    if x.len() != y.len() {
        return false;
    }
    for z in x {
        let Some(i) = y.iter().position(|w| (z - w).norm() <= 1e-6 * scale) else {
            return false;
        };
        y.swap_remove(i);
    }
    true
}

/// Perron property: the top eigenvalue is real, positive, simple and strictly
/// dominant in modulus by a relative margin.
pub fn perron_dominant(m: &DMatrix<f64>, margin: f64) -> bool {
    let mut ev = eigenvalues(m);
    ev.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let Some(top) = ev.first() else { return false };
    let real_pos = top.re > 0.0 && top.im.abs() <= margin * top.norm();
    let dominant = ev.get(1).is_none_or(|s| top.norm() - s.norm() > margin * top.norm());
    real_pos && dominant
}

/// Characteristic polynomial `det(x I - C)` with `x` stored as the `p` variable.
/// `C` must have no `p` terms.
pub fn char_poly(c: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = c.len();
    let m: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = -&c[i][j];
                    if i == j {
                        e += &LaurentPoly::p();
                    }
                    e
                })
                .collect()
        })
        .collect();
    det_exact(&m)
}

/// Spectra of `full` and `sub` agree up to zero eigenvalues, exactly:
/// `charpoly(full) = x^k charpoly(sub)`.
pub fn char_polys_match_up_to_zeros(full: &[Vec<LaurentPoly>], sub: &[Vec<LaurentPoly>]) -> bool {
    let k = full.len() as i64 - sub.len() as i64;
    k >= 0 && char_poly(full) == char_poly(sub).mul_unit(UnitMonomial::new(1, k, 0))
}

/// Element of `Z[z]`, `z = exp(i pi/4) = q^(1/4)` at `q = -1`, in the basis `1, z, z^2, z^3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cyclo8(pub [i128; 4]);

impl Cyclo8 {
    /// `z^k`.
    pub fn unit(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Cyclo8(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    fn checked_add(self, o: Cyclo8) -> Option<Cyclo8> {
        let mut c = [0; 4];
        for i in 0..4 {
            c[i] = self.0[i].checked_add(o.0[i])?;
        }
        Some(Cyclo8(c))
    }

    fn checked_mul(self, o: Cyclo8) -> Option<Cyclo8> {
        let mut c = [0i128; 4];
        for i in 0..4 {
            for j in 0..4 {
                let t = self.0[i].checked_mul(o.0[j])?;
                if i + j < 4 {
                    c[i + j] = c[i + j].checked_add(t)?;
                } else {
                    c[i + j - 4] = c[i + j - 4].checked_sub(t)?;
                }
            }
        }
        Some(Cyclo8(c))
    }

    pub fn to_complex(self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        (0..4).map(|i| z.powu(i as u32) * self.0[i] as f64).sum()
    }

    /// Value of a `q`-only Laurent polynomial at `q = -1`.
    pub fn from_poly(poly: &LaurentPoly) -> Option<Cyclo8> {
        let mut acc = Cyclo8::default();
        for ((ep, eq), c) in poly.terms() {
            if ep != 0 {
                return None;
            }
            let u = Cyclo8::unit(eq);
            let k = c.to_i128()?;
            acc = acc.checked_add(Cyclo8(u.0.map(|x| x * k)))?;
        }
        Some(acc)
    }
}

fn mat_mul(a: &[Vec<Cyclo8>], b: &[Vec<Cyclo8>]) -> Option<Vec<Vec<Cyclo8>>> {
    let n = a.len();
    let mut out = vec![vec![Cyclo8::default(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].checked_add(a[i][k].checked_mul(b[k][j])?)?;
            }
        }
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Periodicity {
    /// `C^a = C^b` with `a < b`.
    Periodic { start: usize, period: usize },
    /// Not detected within the horizon or entries overflowed.
    Inconclusive,
}

/// Searches for `C^a = C^b` with `1 <= a < b <= horizon`, exactly.
pub fn eventual_periodicity(c: &[Vec<Cyclo8>], horizon: usize) -> Periodicity {
    if c.is_empty() {
        return Periodicity::Periodic { start: 1, period: 1 };
    }
    let mut seen: std::collections::HashMap<Vec<Vec<Cyclo8>>, usize> = std::collections::HashMap::new();
    let mut power = c.to_vec();
    for k in 1..=horizon {
        if let Some(&a) = seen.get(&power) {
            return Periodicity::Periodic { start: a, period: k - a };
        }
        seen.insert(power.clone(), k);
        match mat_mul(&power, c) {
            Some(next) => power = next,
            None => return Periodicity::Inconclusive,
        }
    }
    Periodicity::Inconclusive
}

/// Least-squares slope of `log tr C^n` against `n`, an estimate of the log of the top eigenvalue.
pub fn growth_rate(traces: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = traces
        .iter()
        .enumerate()
        .filter(|(_, &t)| t > 0.0)
        .map(|(i, &t)| ((i + 1) as f64, t.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_p_coeffs(0, c)
    }

    #[test]
    fn roots_of_simple_polys() {
        let r = numeric_roots(&poly(&[1, 1])).unwrap();
        assert!((r.roots[0] + 1.0).norm() < 1e-12);
        assert!(r.all_real_negative && r.all_distinct);
        let r = numeric_roots(&poly(&[1, 0, 1])).unwrap();
        assert!(!r.all_real_negative && r.all_unit_modulus);
        assert_eq!(numeric_roots(&LaurentPoly::zero()).unwrap_err(), Error::ZeroPolynomial);
        let r = numeric_roots(&LaurentPoly::from_p_coeffs(3, &[2, 2])).unwrap();
        assert_eq!((r.valuation, r.leading, r.roots.len()), (3, 2.0, 1));
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(cyclotomic(6).iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>(), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12).len(), 5);
        let f = cyclotomic_part(&poly(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(1, 1), (2, 1)]));
        assert!(cyclotomic_part(&poly(&[-2, 0, 1])).is_none());
        let f = cyclotomic_part(&LaurentPoly::from_p_coeffs(-2, &[-3, -3])).is_none();
        assert!(f);
        let f = cyclotomic_part(&LaurentPoly::from_p_coeffs(-2, &[-1, -1])).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(2, 1)]));
        assert_eq!(f.residual, UnitMonomial::new(-1, -2, 0));
    }

    #[test]
    fn multiplicity() {
        assert_eq!(multiplicity_at_minus_one(&poly(&[1, 3, 3, 1])), 3);
        assert_eq!(multiplicity_at_minus_one(&poly(&[1, 1, 1])), 0);
    }

    #[test]
    fn log_concavity() {
        let a = coefficients_at_rational_q(&poly(&[1, 91, 541, 91, 1]), 1, 1);
        assert!(is_log_concave(&a));
        let a = coefficients_at_rational_q(&poly(&[1, 1]), 1, 2);
        assert!(is_log_concave(&a));
        let a = coefficients_at_rational_q(&poly(&[1, 0, 1]), 1, 1);
        assert!(!is_log_concave(&a));
    }

    #[test]
    fn symmetric_functions_at_n_one_recover_coefficients() {
        let p = poly(&[2, 7, 3]);
        let r = numeric_roots(&p).unwrap();
        // k = f_max - f
        assert!(symmetric_check(&r, &[3.0, 7.0, 2.0], 1, 1e-9));
    }

    #[test]
    fn cyclo8_units() {
        assert_eq!(Cyclo8::unit(4), Cyclo8([-1, 0, 0, 0]));
        let z = Cyclo8::unit(1);
        assert_eq!(z.checked_mul(Cyclo8::unit(7)).unwrap(), Cyclo8::unit(0));
        assert!((Cyclo8::unit(2).to_complex() - Complex64::i()).norm() < 1e-12);
        let m = vec![vec![Cyclo8::unit(4)]];
        assert_eq!(eventual_periodicity(&m, 64), Periodicity::Periodic { start: 1, period: 2 });
        let m = vec![vec![Cyclo8([2, 0, 0, 0])]];
        assert_eq!(eventual_periodicity(&m, 64), Periodicity::Inconclusive);
    }

    #[test]
    fn char_poly_of_nilpotent_block() {
        let z = LaurentPoly::zero;
        let full = vec![vec![z(), LaurentPoly::one()], vec![z(), LaurentPoly::q()]];
        let sub = vec![vec![LaurentPoly::q()]];
        assert!(char_polys_match_up_to_zeros(&full, &sub));
    }
}

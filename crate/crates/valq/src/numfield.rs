//! Number fields L = Q[t]/(m) of degree at most 3 carrying the unique
//! supported extension of the p-adic valuation.
//!
//! Two shapes are supported, and they are exactly the ones where the naive
//! minimum rule *is* the valuation:
//!
//! * Case A (ramified): the Newton polygon of m has a single slope -h/e in
//!   lowest terms with e = deg m. Then mu(t) = h/e and values of distinct
//!   powers of t never collide modulo Z, so minima are exact.
//! * Case B (unramified): a single integral slope -s and the residual
//!   polynomial of m irreducible over F_p. Then the residue of t/p^s has
//!   degree deg m over F_p and again no cancellation can occur.
//!
//! Everything else is rejected as unsupported rather than silently wrong.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::newton::NewtonPolygon;
use crate::ordgroup::GroupValue;
use crate::poly::{fmt_qpoly, Coeff, Poly};
use crate::rat::{check_prime, fmt_rat, rat_int, rat_mod_p, vp, Rat};

pub const MAX_FIELD_DEGREE: usize = 3;

/// How the prime p sits in L.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionCase {
    Ramified,
    Unramified,
}

/// The unique supported extension of v_p to L, evaluated by
/// mu(sum g_i t^i) = min_i (v_p(g_i) + i*lambda) on reduced representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionValuation {
    pub p: u32,
    /// Value of the generator t.
    pub lambda: Rat,
    /// Ramification index of the value group (1/e_m)Z over Z.
    pub e_m: u32,
    pub case: ExtensionCase,
}

#[derive(Debug)]
struct NfData {
    min_poly: Poly<Rat>,
    p: u32,
    degree: usize,
    ext: ExtensionValuation,
    /// t^(degree + k) reduced modulo m, for k = 0..=degree-2.
    reductions: Vec<[Rat; 3]>,
}

/// Handle to an immutable number field; cheap to clone.
#[derive(Clone, Debug)]
pub struct NumberField {
    data: Arc<NfData>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.min_poly == other.data.min_poly && self.data.p == other.data.p)
    }
}
impl Eq for NumberField {}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q[t]/({}) at p = {}",
            fmt_qpoly(self.data.min_poly.coeffs(), "t"),
            self.data.p
        )
    }
}

/// Element of a number field, reduced modulo the minimal polynomial.
/// Coefficients beyond the field degree are zero.
#[derive(Clone)]
pub struct NfElement {
    field: NumberField,
    c: [Rat; 3],
}

impl PartialEq for NfElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}

impl fmt::Debug for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElement({})", self)
    }
}

impl fmt::Display for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_qpoly(&self.c, "t"))
    }
}

fn zero3() -> [Rat; 3] {
    [Rat::zero(), Rat::zero(), Rat::zero()]
}

impl NumberField {
    /// Builds L = Q[t]/(m) with the supported extension of v_p.
    ///
    /// Errors: `Reducible` when a rational root certifies reducibility
    /// (complete for degree <= 3), `UnsupportedExtension` when the polygon
    /// does not match Case A or B.
    pub fn new(min_poly: &Poly<Rat>, p: u32) -> Result<(NumberField, ExtensionValuation)> {
        check_prime(p)?;
        let degree = min_poly.degree().ok_or(Error::ZeroPolynomial)?;
        if degree == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if degree > MAX_FIELD_DEGREE {
            return Err(Error::DegreeTooLarge {
                got: degree,
                bound: MAX_FIELD_DEGREE,
            });
        }
        if !min_poly.is_monic() {
            return Err(Error::NotMonic(min_poly.to_string()));
        }
        if degree >= 2 {
            if let Some(root) = rational_root(min_poly) {
                return Err(Error::Reducible(fmt_rat(&root)));
            }
        }
        if min_poly.coeff(0).map_or(true, |c| Zero::is_zero(&c)) {
            // m = t * (...) has the zero root; degree 1 hits this too.
            return Err(Error::Reducible("0".into()));
        }

        // Classify via the Newton polygon of m at v_p.
        let vals: Vec<(usize, GroupValue)> = min_poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                (
                    i,
                    vp(c, p).map_or(GroupValue::Infinity, |k| {
                        GroupValue::from_rat(rat_int(i128::from(k)))
                    }),
                )
            })
            .collect();
        let polygon = NewtonPolygon::from_values(&vals)?;
        if polygon.segments.len() != 1 {
            return Err(Error::UnsupportedExtension(format!(
                "newton polygon of the minimal polynomial has {} slopes",
                polygon.segments.len()
            )));
        }
        let (slope, _len) = polygon.segments[0];
        let lambda = -slope;
        let e = *lambda.denom() as usize;
        let case;
        let e_m;
        if e == degree {
            case = ExtensionCase::Ramified;
            e_m = degree as u32;
        } else if e == 1 {
            let residual = residual_coeffs(min_poly, lambda, p)?;
            let fp = FpPoly::new(u64::from(p), residual);
            if !fp_residual_irreducible(&fp)? {
                return Err(Error::UnsupportedExtension(format!(
                    "residual polynomial {} is reducible over F_{}",
                    fp, p
                )));
            }
            case = ExtensionCase::Unramified;
            e_m = 1;
        } else {
            return Err(Error::UnsupportedExtension(format!(
                "slope denominator {} divides neither 1 nor deg m = {}",
                e, degree
            )));
        }

        let ext = ExtensionValuation {
            p,
            lambda,
            e_m,
            case,
        };

        // t^(degree + k) reduction table.
        let mut reductions: Vec<[Rat; 3]> = Vec::new();
        if degree >= 2 {
            let mut cur = zero3();
            for i in 0..degree {
                cur[i] = -min_poly.coeff(i).unwrap();
            }
            reductions.push(cur);
            for _ in 1..degree - 1 {
                let prev = *reductions.last().unwrap();
                // multiply by t then reduce the single overflowing power
                let mut next = zero3();
                for i in 0..degree - 1 {
                    next[i + 1] = prev[i];
                }
                let top = prev[degree - 1];
                if !Zero::is_zero(&top) {
                    let base = reductions[0];
                    for i in 0..degree {
                        next[i] = next[i] + top * base[i];
                    }
                }
                reductions.push(next);
            }
        }

        let field = NumberField {
            data: Arc::new(NfData {
                min_poly: min_poly.clone(),
                p,
                degree,
                ext,
                reductions,
            }),
        };
        field.spot_check_multiplicativity()?;
        Ok((field, ext))
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn p(&self) -> u32 {
        self.data.p
    }

    pub fn min_poly(&self) -> &Poly<Rat> {
        &self.data.min_poly
    }

    pub fn extension(&self) -> ExtensionValuation {
        self.data.ext
    }

    pub fn zero(&self) -> NfElement {
        NfElement {
            field: self.clone(),
            c: zero3(),
        }
    }

    pub fn one(&self) -> NfElement {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(&self, r: Rat) -> NfElement {
        let mut c = zero3();
        c[0] = r;
        NfElement {
            field: self.clone(),
            c,
        }
    }

    /// The generator t (reduced, so for degree-1 fields this is a rational).
    pub fn generator(&self) -> NfElement {
        if self.data.degree == 1 {
            return self.from_rat(-self.data.min_poly.coeff(0).unwrap());
        }
        let mut c = zero3();
        c[1] = Rat::one();
        NfElement {
            field: self.clone(),
            c,
        }
    }

    /// Element from coefficients of powers of t, reducing modulo m.
    pub fn element(&self, coeffs: &[Rat]) -> NfElement {
        let n = self.data.degree;
        let mut c = zero3();
        let mut overflow: Vec<(usize, Rat)> = Vec::new();
        for (i, r) in coeffs.iter().enumerate() {
            if Zero::is_zero(r) {
                continue;
            }
            if i < n {
                c[i] = c[i] + r;
            } else {
                overflow.push((i, *r));
            }
        }
        if overflow.is_empty() {
            return NfElement {
                field: self.clone(),
                c,
            };
        }
        // fold overflowing powers through generator multiplication
        let mut acc = NfElement {
            field: self.clone(),
            c,
        };
        for (i, r) in overflow {
            let mut term = self.from_rat(r);
            let g = self.generator();
            for _ in 0..i {
                term = term.mul(&g);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn coerce_poly(&self, f: &Poly<Rat>) -> Poly<NfElement> {
        Poly::new(f.coeffs().iter().map(|c| self.from_rat(*c)).collect())
    }

    /// mu_L on a reduced representative; mu_L(0) = infinity.
    pub fn mu(&self, a: &NfElement) -> GroupValue {
        debug_assert!(self == &a.field);
        self.mu_coeffs(&a.c)
    }

    /// mu_L straight from a reduced coefficient array.
    pub(crate) fn mu_coeffs(&self, c: &[Rat; 3]) -> GroupValue {
        let mut best: Option<Rat> = None;
        let lambda = self.data.ext.lambda;
        for (i, ci) in c.iter().enumerate().take(self.data.degree) {
            if let Some(k) = vp(ci, self.data.p) {
                let v = rat_int(i128::from(k)) + lambda * rat_int(i as i128);
                best = Some(match best {
                    Some(b) if b <= v => b,
                    _ => v,
                });
            }
        }
        best.map_or(GroupValue::Infinity, GroupValue::from_rat)
    }

    /// Minimal polynomial of an element over Q (monic). Degree divides the
    /// field degree, so it is 1 for rationals and deg m otherwise.
    pub fn minimal_polynomial(&self, a: &NfElement) -> Poly<Rat> {
        if let Some(r) = a.to_rat() {
            return Poly::x_minus(r);
        }
        let n = self.data.degree;
        // Solve sum_{i<n} x_i a^i = a^n coordinatewise.
        let mut powers: Vec<[Rat; 3]> = Vec::with_capacity(n + 1);
        let mut cur = self.one();
        for _ in 0..=n {
            powers.push(cur.c);
            cur = cur.mul(a);
        }
        let target = powers[n];
        let sol = solve_square(&powers[..n], &target, n)
            .expect("powers of a degree-n element are linearly independent");
        let mut coeffs: Vec<Rat> = sol.iter().map(|x| -x).collect();
        coeffs.push(Rat::one());
        Poly::new(coeffs)
    }

    /// Degree of Q(a) over Q.
    pub fn element_degree(&self, a: &NfElement) -> usize {
        if a.to_rat().is_some() {
            1
        } else {
            self.data.degree
        }
    }

    /// When mu(g) is an integer k attained only by the constant coordinate,
    /// the residue of g/p^k lies in F_p^* and rational digits can still
    /// improve an approximation; returns (k, digit) in that case.
    pub(crate) fn rational_leading_digit(&self, g: &NfElement) -> Option<(i64, u64)> {
        let lambda = self.data.ext.lambda;
        let p = self.data.p;
        let mut min: Option<Rat> = None;
        let mut attained = Vec::new();
        for (i, c) in g.c.iter().enumerate().take(self.data.degree) {
            if let Some(k) = vp(c, p) {
                let v = rat_int(i128::from(k)) + lambda * rat_int(i as i128);
                match min {
                    Some(m) if v > m => {}
                    Some(m) if v == m => attained.push(i),
                    _ => {
                        min = Some(v);
                        attained = vec![i];
                    }
                }
            }
        }
        let w = min?;
        if !w.denom().is_one() || attained != vec![0] {
            return None;
        }
        let k = *w.numer() as i64;
        // digit = (g_0 / p^k) mod p
        let scale = if k >= 0 {
            Rat::one() / rat_int(i128::from(p)).pow(k as i32)
        } else {
            rat_int(i128::from(p)).pow((-k) as i32)
        };
        let unit = g.c[0] * scale;
        let d = rat_mod_p(&unit, u64::from(p)).expect("unit part is p-integral");
        debug_assert!(d != 0);
        Some((k, d))
    }

    fn spot_check_multiplicativity(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x76616c71);
        let p = i128::from(self.data.p);
        let sample = |rng: &mut ChaCha8Rng| {
            let mut c = zero3();
            for slot in c.iter_mut().take(self.data.degree) {
                let n = rng.gen_range(-4i128..=4);
                let d = [1i128, 2, p][rng.gen_range(0..3usize)];
                *slot = Rat::new(n, d);
            }
            NfElement {
                field: self.clone(),
                c,
            }
        };
        for _ in 0..100 {
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let lhs = self.mu(&a.mul(&b));
            let rhs = self.mu(&a) + self.mu(&b);
            if lhs != rhs {
                return Err(Error::UnsupportedExtension(format!(
                    "multiplicativity spot-check failed at a = {}, b = {}: {} != {}",
                    a, b, lhs, rhs
                )));
            }
        }
        Ok(())
    }
}

impl NfElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat; 3] {
        &self.c
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(self.c[0])
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rat().is_some()
    }

    pub fn value(&self) -> GroupValue {
        self.field.mu(self)
    }

    fn as_poly(&self) -> Poly<Rat> {
        Poly::new(self.c.to_vec())
    }
}

impl Coeff for NfElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.field == rhs.field);
        let mut c = zero3();
        for i in 0..3 {
            c[i] = self.c[i] + rhs.c[i];
        }
        NfElement {
            field: self.field.clone(),
            c,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert!(self.field == rhs.field);
        let mut c = zero3();
        for i in 0..3 {
            c[i] = self.c[i] - rhs.c[i];
        }
        NfElement {
            field: self.field.clone(),
            c,
        }
    }
    fn neg(&self) -> Self {
        let mut c = zero3();
        for i in 0..3 {
            c[i] = -self.c[i];
        }
        NfElement {
            field: self.field.clone(),
            c,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.field == rhs.field);
        let n = self.field.data.degree;
        let mut full = [Rat::zero(); 5];
        for i in 0..n {
            if Zero::is_zero(&self.c[i]) {
                continue;
            }
            for j in 0..n {
                if Zero::is_zero(&rhs.c[j]) {
                    continue;
                }
                full[i + j] = full[i + j] + self.c[i] * rhs.c[j];
            }
        }
        let mut c = zero3();
        c[..n.min(3)].copy_from_slice(&full[..n.min(3)]);
        for k in n..=2 * (n.saturating_sub(1)) {
            if Zero::is_zero(&full[k]) {
                continue;
            }
            let red = self.field.data.reductions[k - n];
            for i in 0..n {
                c[i] = c[i] + full[k] * red[i];
            }
        }
        NfElement {
            field: self.field.clone(),
            c,
        }
    }
    fn inv(&self) -> Result<Self> {
        if Coeff::is_zero(self) {
            return Err(Error::ZeroInverse);
        }
        if let Some(r) = self.to_rat() {
            return Ok(self.field.from_rat(Coeff::inv(&r)?));
        }
        let (g, u) = xgcd_against(&self.as_poly(), self.field.min_poly());
        // g is a nonzero constant since m is irreducible
        let g0 = g.coeff(0).expect("gcd of a unit and m is a nonzero constant");
        let scaled = u.mul_coeff(&Coeff::inv(&g0)?);
        Ok(self.field.element(scaled.coeffs()))
    }
    fn mul_int(&self, k: i128) -> Self {
        let mut c = zero3();
        for i in 0..3 {
            c[i] = self.c[i] * rat_int(k);
        }
        NfElement {
            field: self.field.clone(),
            c,
        }
    }
}

fn x_part(k: usize) -> String {
    match k {
        1 => "x".into(),
        _ => format!("x^{k}"),
    }
}

fn term_body(abs: &str, tpow: usize, xpow: usize) -> String {
    let mut parts: Vec<String> = Vec::new();
    if abs != "1" || (tpow == 0 && xpow == 0) {
        parts.push(abs.to_string());
    }
    if tpow >= 1 {
        parts.push(if tpow == 1 {
            "t".into()
        } else {
            format!("t^{tpow}")
        });
    }
    if xpow >= 1 {
        parts.push(x_part(xpow));
    }
    parts.join("*")
}

/// Canonical text for a polynomial over a number field: descending powers,
/// multi-term coefficients parenthesized, the constant digit inlined.
pub fn fmt_nfpoly(f: &Poly<NfElement>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (k, c) in f.coeffs().iter().enumerate().rev() {
        if Coeff::is_zero(c) {
            continue;
        }
        let tc = &c.c;
        let nonzero: Vec<usize> = (0..3).filter(|&j| !Zero::is_zero(&tc[j])).collect();
        if nonzero.len() == 1 {
            let j = nonzero[0];
            let (neg, abs) = crate::rat::fmt_rat_abs(&tc[j]);
            terms.push((neg, term_body(&abs, j, k)));
        } else if k == 0 {
            for j in (0..3).rev() {
                if Zero::is_zero(&tc[j]) {
                    continue;
                }
                let (neg, abs) = crate::rat::fmt_rat_abs(&tc[j]);
                terms.push((neg, term_body(&abs, j, 0)));
            }
        } else {
            let lead = *nonzero.last().unwrap();
            let neg = tc[lead] < Rat::zero();
            let shown: Vec<Rat> = tc.iter().map(|r| if neg { -r } else { *r }).collect();
            terms.push((neg, format!("({})*{}", fmt_qpoly(&shown, "t"), x_part(k))));
        }
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for Poly<NfElement> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_nfpoly(self))
    }
}

/// Extended Euclid returning (gcd, u) with u*a = gcd (mod m).
fn xgcd_against(a: &Poly<Rat>, m: &Poly<Rat>) -> (Poly<Rat>, Poly<Rat>) {
    let mut r0 = m.clone();
    let mut r1 = a.clone();
    let mut u0 = Poly::zero();
    let mut u1 = Poly::constant(Rat::one());
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
        let u = u0.sub(&q.mul(&u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    (r0, u0)
}

/// Gaussian elimination for an n x n system whose columns are coordinate
/// vectors; returns x with sum x_i cols[i] = target.
fn solve_square(cols: &[[Rat; 3]], target: &[Rat; 3], n: usize) -> Option<Vec<Rat>> {
    let mut a = vec![vec![Rat::zero(); n + 1]; n];
    for r in 0..n {
        for (c, col) in cols.iter().enumerate() {
            a[r][c] = col[r];
        }
        a[r][n] = target[r];
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !Zero::is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        let inv = Rat::one() / a[col][col];
        for j in col..=n {
            a[col][j] = a[col][j] * inv;
        }
        for r in 0..n {
            if r != col && !Zero::is_zero(&a[r][col]) {
                let f = a[r][col];
                for j in col..=n {
                    a[r][j] = a[r][j] - f * a[col][j];
                }
            }
        }
    }
    Some((0..n).map(|r| a[r][n]).collect())
}

/// Complete rational-root search for a monic polynomial with rational
/// coefficients (clears denominators first). Sufficient as an
/// irreducibility certificate through degree 3.
pub fn rational_root(f: &Poly<Rat>) -> Option<Rat> {
    let lcm = f
        .coeffs()
        .iter()
        .fold(1i128, |l, c| num_integer::lcm(l, *c.denom()));
    let ints: Vec<i128> = f
        .coeffs()
        .iter()
        .map(|c| (c * rat_int(lcm)).to_integer())
        .collect();
    let c0 = ints[0];
    if c0 == 0 {
        return Some(Rat::zero());
    }
    let cn = *ints.last().unwrap();
    let num_divs = divisors(c0.unsigned_abs());
    let den_divs = divisors(cn.unsigned_abs());
    for nd in &num_divs {
        for dd in &den_divs {
            for sign in [1i128, -1] {
                let cand = Rat::new(sign * (*nd as i128), *dd as i128);
                if Zero::is_zero(&f.eval(&cand)) {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn divisors(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn residual_coeffs(m: &Poly<Rat>, lambda: Rat, p: u32) -> Result<Vec<u64>> {
    debug_assert!(lambda.denom().is_one());
    let s = *lambda.numer() as i32;
    let n = m.degree().unwrap() as i32;
    let p_rat = rat_int(i128::from(p));
    let mut out = Vec::new();
    for (i, c) in m.coeffs().iter().enumerate() {
        let shift = s * (i as i32 - n);
        let scaled = if shift >= 0 {
            c * p_rat.pow(shift)
        } else {
            c / p_rat.pow(-shift)
        };
        out.push(rat_mod_p(&scaled, u64::from(p))?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// F_p polynomials and the trial-division irreducibility certificate.

/// Polynomial over F_p, ascending coefficients reduced modulo p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> FpPoly {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn rem(&self, d: &FpPoly) -> FpPoly {
        let p = self.p;
        let dd = d.degree().expect("nonzero divisor");
        let lead_inv = crate::rat::mod_inv(*d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let f = r[r.len() - 1] * lead_inv % p;
            if f != 0 {
                for (j, dj) in d.c.iter().enumerate() {
                    let idx = k + j;
                    r[idx] = (r[idx] + p * p - f * dj % p) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        FpPoly { p, c: r }
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| match i {
                0 => format!("{x}"),
                1 if x == 1 => "y".into(),
                1 => format!("{x}*y"),
                _ if x == 1 => format!("y^{i}"),
                _ => format!("{x}*y^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Irreducibility over F_p by trial division by every monic polynomial of
/// degree at most deg(g)/2.
pub fn fp_residual_irreducible(g: &FpPoly) -> Result<bool> {
    let deg = match g.degree() {
        None | Some(0) => {
            return Err(Error::ConstantPolynomial);
        }
        Some(d) => d,
    };
    if deg == 1 {
        return Ok(true);
    }
    let p = g.p;
    for d in 1..=deg / 2 {
        // enumerate monic polynomials of degree d
        let mut counter = vec![0u64; d];
        loop {
            let mut coeffs = counter.clone();
            coeffs.push(1);
            let cand = FpPoly::new(p, coeffs);
            if g.rem(&cand).is_zero() {
                return Ok(false);
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                counter[i] += 1;
                if counter[i] < p {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn sqrt2_field() -> NumberField {
        let m = Poly::from_ints(&[-2, 0, 1]);
        NumberField::new(&m, 2).unwrap().0
    }

    #[test]
    fn construction_ramified() {
        let m = Poly::from_ints(&[-2, 0, 1]);
        let (_, ext) = NumberField::new(&m, 2).unwrap();
        assert_eq!(ext.case, ExtensionCase::Ramified);
        assert_eq!(ext.lambda, rat(1, 2));
        assert_eq!(ext.e_m, 2);
    }

    #[test]
    fn construction_unramified() {
        let m = Poly::from_ints(&[1, 1, 1]);
        let (_, ext) = NumberField::new(&m, 2).unwrap();
        assert_eq!(ext.case, ExtensionCase::Unramified);
        assert_eq!(ext.lambda, rat(0, 1));
        assert_eq!(ext.e_m, 1);
    }

    #[test]
    fn construction_rejects_reducible() {
        let m = Poly::from_ints(&[0, -1, 1]); // t^2 - t
        assert!(matches!(
            NumberField::new(&m, 2),
            Err(Error::Reducible(_))
        ));
        // t^2 - 17 at p = 2 is irreducible over Q but 17 is a square in Q_2;
        // the residual certificate rejects it.
        let m = Poly::from_ints(&[-17, 0, 1]);
        assert!(matches!(
            NumberField::new(&m, 2),
            Err(Error::UnsupportedExtension(_))
        ));
    }

    #[test]
    fn construction_p3_unramified() {
        let m = Poly::from_ints(&[-2, 0, 1]);
        let (_, ext) = NumberField::new(&m, 3).unwrap();
        assert_eq!(ext.case, ExtensionCase::Unramified);
        assert_eq!(ext.lambda, rat(0, 1));
    }

    #[test]
    fn cubic_ramified() {
        let m = Poly::from_ints(&[-2, 0, 0, 1]);
        let (field, ext) = NumberField::new(&m, 2).unwrap();
        assert_eq!(ext.case, ExtensionCase::Ramified);
        assert_eq!(ext.lambda, rat(1, 3));
        assert_eq!(ext.e_m, 3);
        let t = field.generator();
        let t4 = t.mul(&t).mul(&t).mul(&t); // t^4 = 2t
        assert_eq!(t4, field.element(&[rat(0, 1), rat(2, 1)]));
        assert_eq!(field.mu(&t4), GroupValue::from_rat(rat(4, 3)));
    }

    #[test]
    fn arithmetic_in_sqrt2() {
        let f = sqrt2_field();
        let t = f.generator();
        assert_eq!(t.mul(&t), f.from_rat(rat(2, 1)));
        // inv(t) = t/2
        let inv = Coeff::inv(&t).unwrap();
        assert_eq!(inv, f.element(&[rat(0, 1), rat(1, 2)]));
        assert_eq!(t.mul(&inv), f.one());
        let a = f.element(&[rat(1, 1), rat(3, 1)]);
        assert_eq!(a.add(&f.zero()), a);
        assert!(Coeff::inv(&f.zero()).is_err());
    }

    #[test]
    fn mu_examples() {
        let f = sqrt2_field();
        // mu(2t + 2) = min(1 + 1/2, 1) = 1
        let a = f.element(&[rat(2, 1), rat(2, 1)]);
        assert_eq!(f.mu(&a), GroupValue::from_rat(rat(1, 1)));
        assert_eq!(f.mu(&f.generator()), GroupValue::from_rat(rat(1, 2)));
        assert_eq!(f.mu(&f.zero()), GroupValue::Infinity);
    }

    #[test]
    fn mu_is_a_valuation_on_small_corpus() {
        for (m, p) in [
            (Poly::from_ints(&[-2, 0, 1]), 2u32),
            (Poly::from_ints(&[1, 1, 1]), 2),
            (Poly::from_ints(&[-2, 0, 1]), 3),
        ] {
            let (f, ext) = NumberField::new(&m, p).unwrap();
            let set = [
                rat(0, 1),
                rat(1, 1),
                rat(-1, 1),
                rat(2, 1),
                rat(-2, 1),
                rat(i128::from(p), 1),
                rat(1, i128::from(p)),
            ];
            let mut elems = Vec::new();
            for a in &set {
                for b in &set {
                    elems.push(f.element(&[*a, *b]));
                }
            }
            for x in &elems {
                // value set inside (1/e_m)Z
                if let Some(r) = f.mu(x).r1() {
                    assert!((r * rat_int(i128::from(ext.e_m))).denom().is_one());
                }
                for y in &elems {
                    assert_eq!(f.mu(&x.mul(y)), f.mu(x) + f.mu(y), "x={x} y={y}");
                    assert!(f.mu(&x.add(y)) >= f.mu(x).min(f.mu(y)));
                }
            }
            // restriction to Q is v_p
            assert_eq!(
                f.mu(&f.from_rat(rat(i128::from(p), 1))),
                GroupValue::from_rat(rat(1, 1))
            );
        }
    }

    #[test]
    fn minimal_polynomials() {
        let f = sqrt2_field();
        let t = f.generator();
        assert_eq!(f.minimal_polynomial(&t), Poly::from_ints(&[-2, 0, 1]));
        // 1 + t has minimal polynomial x^2 - 2x - 1
        let a = f.element(&[rat(1, 1), rat(1, 1)]);
        assert_eq!(f.minimal_polynomial(&a), Poly::from_ints(&[-1, -2, 1]));
        assert_eq!(
            f.minimal_polynomial(&f.from_rat(rat(5, 2))),
            Poly::x_minus(rat(5, 2))
        );
        assert_eq!(f.element_degree(&t), 2);
        assert_eq!(f.element_degree(&f.from_rat(rat(3, 1))), 1);
    }

    #[test]
    fn rational_digit_detection() {
        let f = sqrt2_field();
        // a = 3 + t: mu = 0 attained only at the constant, digit 1
        let a = f.element(&[rat(3, 1), rat(1, 1)]);
        assert_eq!(f.rational_leading_digit(&a), Some((0, 1)));
        // t alone: value 1/2 not integral
        assert_eq!(f.rational_leading_digit(&f.generator()), None);
        // unramified: residue of t is not rational
        let (g, _) = NumberField::new(&Poly::from_ints(&[1, 1, 1]), 2).unwrap();
        assert_eq!(g.rational_leading_digit(&g.generator()), None);
        let b = g.element(&[rat(1, 1), rat(1, 1)]);
        assert_eq!(g.rational_leading_digit(&b), None);
    }

    #[test]
    fn fp_irreducibility() {
        assert!(fp_residual_irreducible(&FpPoly::new(2, vec![1, 1, 1])).unwrap());
        assert!(!fp_residual_irreducible(&FpPoly::new(2, vec![0, 0, 1])).unwrap());
        assert!(fp_residual_irreducible(&FpPoly::new(3, vec![0, 1])).unwrap());
        assert!(!fp_residual_irreducible(&FpPoly::new(3, vec![1, 0, 1, 1])).unwrap());
        assert!(fp_residual_irreducible(&FpPoly::new(2, vec![1, 1, 0, 1])).unwrap());
        assert!(fp_residual_irreducible(&FpPoly::new(5, vec![2, 0, 1])).unwrap());
    }

    #[test]
    fn rational_roots() {
        assert_eq!(
            rational_root(&Poly::from_ints(&[0, -1, 1])),
            Some(rat(0, 1))
        );
        assert_eq!(rational_root(&Poly::from_ints(&[-2, 0, 1])), None);
        // x^2 - 5x + 6 = (x-2)(x-3)
        assert!(rational_root(&Poly::from_ints(&[6, -5, 1])).is_some());
        // monic with fractional coefficients: x - 1/2
        let f = Poly::new(vec![rat(-1, 2), rat(1, 1)]);
        assert_eq!(rational_root(&f), Some(rat(1, 2)));
    }

    #[test]
    fn degree_one_field_degenerates_to_q() {
        let m = Poly::from_ints(&[-3, 1]); // t = 3
        let (f, ext) = NumberField::new(&m, 3).unwrap();
        assert_eq!(ext.e_m, 1);
        assert_eq!(ext.lambda, rat(1, 1));
        let t = f.generator();
        assert_eq!(t.to_rat(), Some(rat(3, 1)));
        assert_eq!(f.mu(&t), GroupValue::from_rat(rat(1, 1)));
    }
}

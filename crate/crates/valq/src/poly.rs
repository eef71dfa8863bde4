//! Dense polynomials over an exact coefficient field, q-expansions, Hasse
//! derivatives and Taylor expansions about a point.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{fmt_rat_abs, Rat};

/// Coefficient-field element. Context (e.g. which number field an element
/// lives in) travels inside the element, so zero/one are derived from an
/// existing value rather than free-standing.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn mul_int(&self, n: i128) -> Self;
}

impl Coeff for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.recip())
    }
    fn mul_int(&self, n: i128) -> Self {
        self * Rat::from_integer(n)
    }
}

/// Dense polynomial, lowest degree first, no trailing zero coefficient.
/// The zero polynomial is the empty coefficient sequence.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Coeff> {
    coeffs: Vec<F>,
}

impl<F: Coeff> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of x^i, materializing zeros above the degree.
    pub fn coeff(&self, i: usize) -> Option<F> {
        if self.coeffs.is_empty() {
            return None;
        }
        Some(
            self.coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(|| self.coeffs[0].zero_like()),
        )
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| *c == c.one_like())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn mul_coeff(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul_int(&self, n: i128) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul_int(n)).collect())
    }

    /// Multiplication by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![self.coeffs[0].zero_like(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Monic normalization: self / leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.mul_coeff(&lead.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            let one = self
                .coeffs
                .first()
                .map(|c| c.one_like())
                .expect("pow(0) of the zero polynomial is undefined");
            return Poly::constant(one);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division with remainder; any nonzero divisor works since the
    /// coefficients form a field.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        let d_deg = d.degree().ok_or(Error::ZeroPolynomialDivisor)?;
        if self.degree().map_or(true, |n| n < d_deg) {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = d.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let q_len = rem.len() - d_deg;
        let zero = rem[0].zero_like();
        let mut quot = vec![zero; q_len];
        for k in (0..q_len).rev() {
            let c = rem[k + d_deg].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(dj));
            }
            quot[k] = c;
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn eval(&self, a: &F) -> F {
        let mut acc = a.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(c);
        }
        acc
    }

    /// Unique digits f_i with deg(f_i) < deg(q) and f = sum f_i q^i.
    pub fn q_expansion(&self, q: &Self) -> Result<QExpansion<F>> {
        if q.degree().map_or(true, |d| d == 0) {
            return Err(Error::ConstantPolynomial);
        }
        let mut digits = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (quot, rem) = rest.divmod(q)?;
            digits.push(rem);
            rest = quot;
        }
        Ok(QExpansion {
            q: q.clone(),
            digits,
        })
    }

    /// Hasse derivative of order b: x^i -> binom(i, b) x^(i-b).
    pub fn hasse_derivative(&self, b: usize) -> Self {
        if b == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= b {
            return Poly::zero();
        }
        let out = self.coeffs[b..]
            .iter()
            .enumerate()
            .map(|(k, c)| c.mul_int(binomial(k + b, b)))
            .collect();
        Poly::new(out)
    }

    /// Coefficients c_i with f = sum c_i (x - a)^i, computed by iterated
    /// synthetic division. Equals ((hasse_i f)(a))_i; the unit tests pin the
    /// two routes against each other and against reassembly.
    pub fn taylor_about(&self, a: &F) -> Vec<F> {
        let n = self.coeffs.len();
        if n == 0 {
            return Vec::new();
        }
        let mut c = self.coeffs.clone();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c[j + 1].mul(a);
                c[j] = c[j].add(&t);
            }
        }
        c
    }
}

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// A q-expansion: source = sum digits[i] * q^i with deg(digit) < deg(q).
#[derive(Clone, Debug)]
pub struct QExpansion<F: Coeff> {
    pub q: Poly<F>,
    pub digits: Vec<Poly<F>>,
}

impl<F: Coeff> QExpansion<F> {
    pub fn digit(&self, i: usize) -> Poly<F> {
        self.digits.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn reassemble(&self) -> Poly<F> {
        let mut acc = Poly::zero();
        for d in self.digits.iter().rev() {
            acc = acc.mul(&self.q).add(d);
        }
        acc
    }
}

impl<F: Coeff> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Canonical text for a rational-coefficient polynomial in the named
/// variable: descending powers, no zero terms, "a/b" rationals.
pub fn fmt_qpoly(coeffs: &[Rat], var: &str) -> String {
    if coeffs.iter().all(|c| Zero::is_zero(c)) {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if Zero::is_zero(c) {
            continue;
        }
        let (neg, abs) = fmt_rat_abs(c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = abs == "1";
        match (i, unit) {
            (0, _) => out.push_str(&abs),
            (_, true) => {}
            (_, false) => {
                out.push_str(&abs);
                out.push('*');
            }
        }
        if i >= 1 {
            out.push_str(var);
            if i >= 2 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    out
}

impl fmt::Display for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_qpoly(&self.coeffs, "x"))
    }
}

/// Convenience constructors for rational-coefficient polynomials.
impl Poly<Rat> {
    pub fn from_ints(coeffs: &[i128]) -> Self {
        Poly::new(coeffs.iter().map(|&n| Rat::from_integer(n)).collect())
    }

    /// x - c
    pub fn x_minus(c: Rat) -> Self {
        Poly::new(vec![-c, Rat::one()])
    }

    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// Content-free check used by the display code.
    pub fn is_negative_leading(&self) -> bool {
        self.leading().map_or(false, |c| c.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn p(coeffs: &[i128]) -> Poly<Rat> {
        Poly::from_ints(coeffs)
    }

    #[test]
    fn arithmetic_examples() {
        // (x+1)(x-1) = x^2 - 1
        assert_eq!(p(&[1, 1]).mul(&p(&[-1, 1])), p(&[-1, 0, 1]));
        assert_eq!(p(&[2, 3]).add(&Poly::zero()), p(&[2, 3]));
        assert_eq!(p(&[1, 1]).sub(&p(&[1, 1])), Poly::zero());
    }

    #[test]
    fn divmod_example() {
        // x^2 + 2x - 2 = 1*(x^2 - 2) + 2x
        let f = p(&[-2, 2, 1]);
        let g = p(&[-2, 0, 1]);
        let (q, r) = f.divmod(&g).unwrap();
        assert_eq!(q, p(&[1]));
        assert_eq!(r, p(&[0, 2]));
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(p(&[1]).divmod(&Poly::zero()).is_err());
    }

    #[test]
    fn q_expansion_examples() {
        // x^4 + x + 1 by x^2: digits [x+1, 0, 1]
        let f = p(&[1, 1, 0, 0, 1]);
        let q = p(&[0, 0, 1]);
        let e = f.q_expansion(&q).unwrap();
        assert_eq!(e.digits.len(), 3);
        assert_eq!(e.digits[0], p(&[1, 1]));
        assert_eq!(e.digits[1], Poly::zero());
        assert_eq!(e.digits[2], p(&[1]));
        assert_eq!(e.reassemble(), f);

        // x^2 by x^2 - 2: digits [2, 1]
        let e = p(&[0, 0, 1]).q_expansion(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(e.digits[0], p(&[2]));
        assert_eq!(e.digits[1], p(&[1]));

        // deg f < deg q: single digit
        let e = p(&[3, 1]).q_expansion(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(e.digits.len(), 1);
        assert_eq!(e.digits[0], p(&[3, 1]));

        assert!(p(&[1]).q_expansion(&p(&[5])).is_err());
    }

    #[test]
    fn hasse_examples() {
        let f = p(&[2, 0, 1]); // x^2 + 2
        assert_eq!(f.hasse_derivative(0), f);
        assert_eq!(f.hasse_derivative(1), p(&[0, 2])); // 2x
        assert_eq!(p(&[0, 0, 0, 1]).hasse_derivative(2), p(&[0, 3])); // 3x
        assert_eq!(p(&[7]).hasse_derivative(1), Poly::zero());
    }

    #[test]
    fn taylor_about_zero_is_identity() {
        let f = p(&[1, -2, 0, 5]);
        assert_eq!(f.taylor_about(&rat(0, 1)), f.coeffs().to_vec());
        assert!(p(&[]).taylor_about(&rat(1, 1)).is_empty());
    }

    #[test]
    fn taylor_linear_and_constant() {
        let a = rat(3, 1);
        // x - 3 about 3: [0, 1]
        assert_eq!(Poly::x_minus(a).taylor_about(&a), vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(p(&[9]).taylor_about(&a), vec![rat(9, 1)]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(2, 1), 2);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(1, 2), 0);
        assert_eq!(binomial(40, 20), 137846528820);
    }

    #[test]
    fn display_canonical() {
        assert_eq!(p(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(Poly::<Rat>::zero().to_string(), "0");
        assert_eq!(
            Poly::new(vec![rat(1, 2), rat(-1, 1), rat(3, 1)]).to_string(),
            "3*x^2 - x + 1/2"
        );
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly<Rat>> {
        prop::collection::vec((-6i128..=6, 1i128..=3), 0..=max_deg + 1)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn divmod_remultiplies(f in arb_poly(6), g in arb_poly(4)) {
            prop_assume!(!g.is_zero());
            let (q, r) = f.divmod(&g).unwrap();
            prop_assert_eq!(q.mul(&g).add(&r), f.clone());
            if let Some(rd) = r.degree() {
                prop_assert!(rd < g.degree().unwrap());
            }
        }

        #[test]
        fn q_expansion_reassembles(f in arb_poly(6), g in arb_poly(3)) {
            prop_assume!(g.degree().map_or(false, |d| d >= 1));
            let e = f.q_expansion(&g).unwrap();
            prop_assert_eq!(e.reassemble(), f);
            for d in &e.digits {
                if let Some(dd) = d.degree() {
                    prop_assert!(dd < g.degree().unwrap());
                }
            }
        }

        #[test]
        fn hasse_is_linear_and_degree_drops(f in arb_poly(5), g in arb_poly(5), b in 0usize..4) {
            prop_assert_eq!(
                f.add(&g).hasse_derivative(b),
                f.hasse_derivative(b).add(&g.hasse_derivative(b))
            );
            if let (Some(fd), Some(hd)) = (f.degree(), f.hasse_derivative(b).degree()) {
                prop_assert!(hd + b <= fd);
            }
        }

        #[test]
        fn taylor_reassembles_and_matches_hasse(f in arb_poly(5), n in -4i128..=4, d in 1i128..=3) {
            let a = rat(n, d);
            let c = f.taylor_about(&a);
            // reassembly oracle
            let mut acc = Poly::zero();
            for ci in c.iter().rev() {
                acc = acc.mul(&Poly::x_minus(a)).add(&Poly::constant(*ci));
            }
            prop_assert_eq!(acc, f.clone());
            // independent route: c_i = (hasse_i f)(a)
            for (i, ci) in c.iter().enumerate() {
                prop_assert_eq!(*ci, f.hasse_derivative(i).eval(&a));
            }
        }

        #[test]
        fn display_parses_back(f in arb_poly(5)) {
            let s = f.to_string();
            let parsed = crate::parse::parse_qpoly(&s).unwrap();
            prop_assert_eq!(parsed, f);
        }
    }
}

//! Key-polynomial machinery: the epsilon invariant, optimizing-root values,
//! Krasner bounds, distances to lower-degree centers, minimal pairs, and the
//! three-valued key decision.
//!
//! Complete certificates exist only on the constructed instance classes
//! (degree-1 always; Q equal to the minimal polynomial of the center with
//! matching optimizing value). Everything else is falsification search, and
//! `Unknown` is an honest answer.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::newton::root_valuations_of;
use crate::numfield::NfElement;
use crate::ordgroup::{EpsilonValue, GroupValue};
use crate::poly::{Coeff, Poly};
use crate::rat::{fmt_rat, rat_int, Rat};
use crate::valuation::{is_valuation_sample, BaseVal, SampleSpec, Truncation, Valuation};
use crate::verdict::{Verdict, Witness};

// ---------------------------------------------------------------------------
// epsilon

#[derive(Clone, Debug)]
pub struct EpsilonRow {
    pub b: u32,
    pub v_f: GroupValue,
    pub v_hasse: GroupValue,
    pub ratio: Option<EpsilonValue>,
}

#[derive(Clone, Debug)]
pub struct EpsilonReport {
    pub value: EpsilonValue,
    pub rows: Vec<EpsilonRow>,
    pub argmax_b: Option<u32>,
    /// Set when no b had both values finite although f is outside the
    /// support; the -infinity result is a convention, not forced.
    pub degenerate_empty_b: bool,
}

impl EpsilonReport {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value.to_string(),
            "argmax_b": self.argmax_b,
            "degenerate_empty_b": self.degenerate_empty_b,
            "table": self.rows.iter().map(|r| json!({
                "b": r.b,
                "v_f": r.v_f.to_string(),
                "v_hasse_b": r.v_hasse.to_string(),
                "ratio": r.ratio.map(|x| x.to_string()),
            })).collect::<Vec<_>>(),
        })
    }
}

/// max over 1 <= b <= deg f with v(f), v(hasse_b f) finite of
/// (v(f) - v(hasse_b f)) / b; -infinity for constants, +infinity for a
/// generator of the support.
pub fn epsilon(v: &Valuation, f: &Poly<Rat>) -> Result<EpsilonValue> {
    Ok(epsilon_report(v, f)?.value)
}

pub fn epsilon_report(v: &Valuation, f: &Poly<Rat>) -> Result<EpsilonReport> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(EpsilonReport {
            value: EpsilonValue::MinusInfinity,
            rows: Vec::new(),
            argmax_b: None,
            degenerate_empty_b: false,
        });
    }
    if let Some(s) = v.support_q() {
        if f.monic()? == s {
            return Ok(EpsilonReport {
                value: EpsilonValue::PlusInfinity,
                rows: Vec::new(),
                argmax_b: None,
                degenerate_empty_b: false,
            });
        }
    }
    let v_f = v.eval_q(f)?;
    let mut rows = Vec::with_capacity(deg);
    let mut best: Option<(EpsilonValue, u32)> = None;
    for b in 1..=deg {
        let hb = f.hasse_derivative(b);
        let v_hb = v.eval_q(&hb)?;
        let ratio = if v_f.is_infinite() || v_hb.is_infinite() {
            None
        } else {
            Some(EpsilonValue::diff_quotient(&v_f, &v_hb, b as u32)?)
        };
        if let Some(r) = ratio {
            best = match best {
                Some((cur, _)) if cur >= r => best,
                _ => Some((r, b as u32)),
            };
        }
        rows.push(EpsilonRow {
            b: b as u32,
            v_f,
            v_hasse: v_hb,
            ratio,
        });
    }
    match best {
        Some((value, b)) => Ok(EpsilonReport {
            value,
            rows,
            argmax_b: Some(b),
            degenerate_empty_b: false,
        }),
        None => Ok(EpsilonReport {
            value: EpsilonValue::MinusInfinity,
            rows,
            argmax_b: None,
            degenerate_empty_b: true,
        }),
    }
}

// ---------------------------------------------------------------------------
// optimizing-root values via Newton polygons

/// delta(f) = max over roots b of f of mu(x - b), computed as
/// min(delta, max root valuation of f(x + center)); the polygon encodes the
/// conjugate distances and the intermediate-value lemma caps them at delta.
pub fn delta_of(v: &Valuation, f: &Poly<Rat>) -> Result<GroupValue> {
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let delta = v
        .delta()
        .ok_or_else(|| Error::DomainMismatch("delta_of needs a monomial descriptor".into()))?;
    let max_root = if let Some(m) = v.as_monomial_nf() {
        let shifted = Poly::new(m.field().coerce_poly(f).taylor_about(m.center()));
        root_valuations_of(&shifted, |c| m.field().mu(c))?.max()
    } else if let Some(m) = v.as_monomial_q() {
        let shifted = Poly::new(f.taylor_about(&m.center()));
        let base = m.base();
        root_valuations_of(&shifted, |c| base.value(c))?.max()
    } else {
        return Err(Error::DomainMismatch(
            "delta_of needs a monomial descriptor".into(),
        ));
    };
    let max_root = max_root.expect("non-constant polynomial has a root");
    Ok(delta.min(max_root))
}

/// Krasner bound: the largest valuation distance from `a` to one of its
/// conjugates, read off the polygon of m_a(x + a) / x.
pub fn krasner_bound(a: &NfElement) -> Result<GroupValue> {
    let field = a.field().clone();
    if field.element_degree(a) < 2 {
        return Err(Error::RationalElement);
    }
    let m = field.minimal_polynomial(a);
    let shifted = field.coerce_poly(&m).taylor_about(a);
    debug_assert!(Coeff::is_zero(&shifted[0]));
    let quotient = Poly::new(shifted[1..].to_vec());
    let rv = root_valuations_of(&quotient, |c| field.mu(c))?;
    Ok(rv.max().expect("conjugates exist"))
}

// ---------------------------------------------------------------------------
// greedy p-adic digit search

/// Trace of a greedy rational approximation of a field element.
#[derive(Clone, Debug)]
pub struct DigitSearch {
    /// Best rational found.
    pub witness: Rat,
    /// mu(a - witness) at the end of the search.
    pub value: GroupValue,
    /// Successive approximants, including the final witness.
    pub path: Vec<Rat>,
    pub steps: u32,
    /// Step bound derived from the Krasner bound; recorded for
    /// reproducibility.
    pub bound: u32,
    /// True when the search stopped because no rational digit could improve
    /// the approximation; the value is then the exact maximum.
    pub stuck: bool,
}

/// Greedily improves c from 0 by p-adic digits while mu(a - c) keeps a
/// rational leading term. Stops at `target` when given, otherwise at the
/// Krasner bound. When it stops stuck, the reached value is exactly
/// max over rational c of mu(a - c): any better rational would force a
/// rational digit at the current level.
fn greedy_digits(a: &NfElement, target: Option<GroupValue>) -> Result<DigitSearch> {
    let field = a.field().clone();
    let kappa = krasner_bound(a)?;
    let k_r = kappa.r1().expect("conjugate distances are rank-1");
    let e_m = field.extension().e_m;
    let mut c = rat_int(0);
    let mut g = a.clone();
    let w0 = field.mu(&g).r1().unwrap_or_else(|| rat_int(0));
    let span = (k_r - w0.min(rat_int(0))).ceil().to_integer().max(0) as u32;
    let bound = e_m * (span + 1) + 2;
    let mut path = vec![c];
    let mut steps = 0u32;
    loop {
        let w = field.mu(&g);
        let reached_target = target.map_or(false, |t| w >= t);
        if reached_target || w >= kappa || steps >= bound {
            return Ok(DigitSearch {
                witness: c,
                value: w,
                path,
                steps,
                bound,
                stuck: false,
            });
        }
        match field.rational_leading_digit(&g) {
            None => {
                return Ok(DigitSearch {
                    witness: c,
                    value: w,
                    path,
                    steps,
                    bound,
                    stuck: true,
                })
            }
            Some((k, d)) => {
                let p = rat_int(i128::from(field.p()));
                let step = if k >= 0 {
                    rat_int(d as i128) * p.pow(k as i32)
                } else {
                    rat_int(d as i128) / p.pow((-k) as i32)
                };
                c = c + step;
                g = g.sub(&field.from_rat(step));
                path.push(c);
                steps += 1;
            }
        }
    }
}

/// max over rational c of mu_L(a - c) for a quadratic element, by greedy
/// digit search capped at the Krasner bound.
pub fn dist_to_rationals(a: &NfElement) -> Result<DigitSearch> {
    let deg = a.field().element_degree(a);
    if deg != 2 {
        return Err(Error::WrongElementDegree { want: 2, got: deg });
    }
    greedy_digits(a, None)
}

// ---------------------------------------------------------------------------
// minimal pairs

#[derive(Clone, Debug)]
pub enum PairCenter {
    Rational { base: BaseVal, a: Rat },
    Algebraic(NfElement),
}

/// A candidate pair (a, delta) for the minimal-pair test: every b at
/// distance >= delta must have field degree at least that of a.
#[derive(Clone, Debug)]
pub struct PairData {
    pub center: PairCenter,
    pub delta: GroupValue,
}

impl PairData {
    pub fn from_valuation(v: &Valuation) -> Option<PairData> {
        let delta = v.delta()?;
        if let Some(m) = v.as_monomial_nf() {
            return Some(PairData {
                center: PairCenter::Algebraic(m.center().clone()),
                delta,
            });
        }
        let m = v.as_monomial_q()?;
        Some(PairData {
            center: PairCenter::Rational {
                base: m.base(),
                a: m.center(),
            },
            delta,
        })
    }

    pub fn degree(&self) -> usize {
        match &self.center {
            PairCenter::Rational { .. } => 1,
            PairCenter::Algebraic(a) => a.field().element_degree(a),
        }
    }

    pub fn describe(&self) -> String {
        match &self.center {
            PairCenter::Rational { a, .. } => format!("({}, {})", fmt_rat(a), self.delta),
            PairCenter::Algebraic(a) => format!("({}, {})", a, self.delta),
        }
    }
}

/// Degree 1 is always minimal. Degree 2 is decided completely through the
/// rational-distance search. Degree 3 has a Krasner-sufficient Yes and a
/// digit-search No; anything else stays Unknown.
pub fn is_minimal_pair(pair: &PairData) -> Result<Verdict> {
    let deg = pair.degree();
    if deg == 1 {
        return Ok(Verdict::yes("degree-1 center: nothing lies below degree 1"));
    }
    let a = match &pair.center {
        PairCenter::Algebraic(a) => a,
        PairCenter::Rational { .. } => unreachable!("rational centers have degree 1"),
    };
    if deg == 2 {
        let d = dist_to_rationals(a)?;
        if pair.delta > d.value {
            return Ok(Verdict::yes(format!(
                "delta = {} exceeds the max rational distance {} (attained at c = {}, \
                 digit-search bound {})",
                pair.delta,
                d.value,
                fmt_rat(&d.witness),
                d.bound
            )));
        }
        return Ok(Verdict::no(Witness::CloserLowerDegree {
            c: fmt_rat(&d.witness),
            distance: d.value.to_string(),
            delta: pair.delta.to_string(),
        }));
    }
    // degree 3
    let kappa = krasner_bound(a)?;
    if pair.delta > kappa {
        return Ok(Verdict::yes(format!(
            "Krasner: delta = {} exceeds the max conjugate distance {}; any closer \
             element generates a field of degree >= 3",
            pair.delta, kappa
        )));
    }
    let search = greedy_digits(a, Some(pair.delta))?;
    if search.value >= pair.delta {
        return Ok(Verdict::no(Witness::CloserLowerDegree {
            c: fmt_rat(&search.witness),
            distance: search.value.to_string(),
            delta: pair.delta.to_string(),
        }));
    }
    Ok(Verdict::unknown(format!(
        "delta = {} is within the conjugate distance {} and no rational witness was \
         found (digit-search bound {}); quadratic centers are not searched",
        pair.delta, kappa, search.bound
    )))
}

/// Two pairs define the same monomial valuation iff the deltas agree and the
/// centers are within delta of each other.
pub fn same_valuation_pairs(p1: &PairData, p2: &PairData) -> Result<bool> {
    if p1.delta != p2.delta {
        return Ok(false);
    }
    let dist = match (&p1.center, &p2.center) {
        (
            PairCenter::Rational { base: b1, a: a1 },
            PairCenter::Rational { base: b2, a: a2 },
        ) => {
            if b1 != b2 {
                return Err(Error::IncompatibleFields);
            }
            b1.value(&(a1 - a2))
        }
        (PairCenter::Algebraic(a1), PairCenter::Algebraic(a2)) => {
            if a1.field() != a2.field() {
                return Err(Error::IncompatibleFields);
            }
            a1.field().mu(&a1.sub(a2))
        }
        (PairCenter::Algebraic(a1), PairCenter::Rational { base, a: a2 })
        | (PairCenter::Rational { base, a: a2 }, PairCenter::Algebraic(a1)) => {
            if base.p() != Some(a1.field().p()) {
                return Err(Error::IncompatibleFields);
            }
            let coerced = a1.field().from_rat(*a2);
            a1.field().mu(&a1.sub(&coerced))
        }
    };
    Ok(dist >= p1.delta)
}

// ---------------------------------------------------------------------------
// the key-polynomial decision

#[derive(Clone, Debug)]
pub struct KeySearchConfig {
    /// Rational centers tried as monic linear falsifiers x - c, in addition
    /// to the digit-search path toward the descriptor center.
    pub extra_centers: Vec<Rat>,
    /// Coefficient set for the exhaustive low-height falsification sweep
    /// over monic polynomials of degree < deg Q.
    pub low_height_coeffs: Vec<Rat>,
    /// Corpus bounds for the valuation precheck when the descriptor is a
    /// truncation.
    pub sample: SampleSpec,
}

impl KeySearchConfig {
    pub fn for_prime(p: u32) -> KeySearchConfig {
        let mut extra_centers = vec![rat_int(0)];
        for c in 1..=i128::from(p) {
            extra_centers.push(rat_int(c));
            extra_centers.push(rat_int(-c));
        }
        KeySearchConfig {
            extra_centers,
            low_height_coeffs: crate::corpus::coeffs_with_p(p),
            sample: SampleSpec::default(),
        }
    }
}

pub fn is_key(v: &Valuation, q: &Poly<Rat>) -> Result<Verdict> {
    let p = v.base().p().unwrap_or(2);
    is_key_with(v, q, &KeySearchConfig::for_prime(p))
}

pub fn is_key_with(v: &Valuation, q: &Poly<Rat>, cfg: &KeySearchConfig) -> Result<Verdict> {
    let deg_q = q.degree().ok_or(Error::ZeroPolynomial)?;
    if !q.is_monic() {
        return Err(Error::NotMonic(q.to_string()));
    }
    let mut notes = Vec::new();
    if let Some(t) = v.as_truncation() {
        // the abstract decision only makes sense over a valuation; refuse a
        // falsified truncation
        let verdict = is_valuation_sample(t, &cfg.sample)?;
        if verdict.is_no() {
            return Err(Error::NotAValuation(
                verdict.witness.map(|w| w.to_string()).unwrap_or_default(),
            ));
        }
        notes.push(
            "descriptor is a truncation, unfalsified as a valuation on the sample corpus"
                .to_string(),
        );
    }
    if deg_q == 1 {
        let mut out = Verdict::yes(
            "monic linear: every lower-degree polynomial is a constant with epsilon = -infinity",
        );
        out.notes = notes;
        return Ok(out);
    }

    // Certificate path: Q is the minimal polynomial of the center and the
    // center is an optimizing root of it.
    if let Some(m) = v.as_monomial_nf() {
        let center_min = m.field().minimal_polynomial(m.center());
        if center_min == *q {
            let dq = delta_of(v, q)?;
            if dq == m.delta() {
                let pair = PairData::from_valuation(v).expect("monomial descriptor");
                let mp = is_minimal_pair(&pair)?;
                match mp.status {
                    crate::verdict::VerdictStatus::Yes => {
                        let mut out = Verdict::yes(format!(
                            "minimal-pair certificate for center pair {}: {}",
                            pair.describe(),
                            mp.certificate.unwrap_or_default()
                        ));
                        out.notes = notes;
                        return Ok(out);
                    }
                    crate::verdict::VerdictStatus::No => {
                        // turn the closer lower-degree center into an epsilon
                        // witness and verify it
                        if let Some(Witness::CloserLowerDegree { c, .. }) = &mp.witness {
                            let cr = crate::rat::parse_rat(c)?;
                            let f = Poly::x_minus(cr);
                            let ef = epsilon(v, &f)?;
                            let eq = epsilon(v, q)?;
                            if ef >= eq {
                                let mut out = Verdict::no(Witness::EpsilonAtLeast {
                                    f: f.to_string(),
                                    eps_f: ef.to_string(),
                                    eps_q: eq.to_string(),
                                });
                                out.notes = notes;
                                return Ok(out);
                            }
                            notes.push(format!(
                                "minimal-pair witness c = {c} did not verify as an epsilon \
                                 witness; falling back to search"
                            ));
                        }
                    }
                    crate::verdict::VerdictStatus::Unknown => {
                        notes.extend(mp.notes);
                    }
                }
            } else {
                notes.push(format!(
                    "center is not an optimizing root of Q: delta(Q) = {dq} != delta = {}",
                    m.delta()
                ));
            }
        }
    }

    // Falsification: look for deg f < deg Q with eps(f) >= eps(Q).
    let eq = epsilon(v, q)?;
    let try_witness = |f: &Poly<Rat>| -> Result<Option<Verdict>> {
        if f.degree().map_or(true, |d| d >= deg_q || d == 0) {
            return Ok(None);
        }
        let ef = epsilon(v, f)?;
        if ef >= eq {
            Ok(Some(Verdict::no(Witness::EpsilonAtLeast {
                f: f.to_string(),
                eps_f: ef.to_string(),
                eps_q: eq.to_string(),
            })))
        } else {
            Ok(None)
        }
    };

    // Candidate centers in priority order: the descriptor's own center (or
    // its digit-search approximants), then the declared extras.
    let mut centers: Vec<Rat> = Vec::new();
    if let Some(m) = v.as_monomial_q() {
        centers.push(m.center());
    }
    if let Some(m) = v.as_monomial_nf() {
        if !m.center().is_rational() && m.field().element_degree(m.center()) == 2 {
            let d = dist_to_rationals(m.center())?;
            centers.extend(d.path);
        }
    }
    for c in &cfg.extra_centers {
        if !centers.contains(c) {
            centers.push(*c);
        }
    }
    for c in &centers {
        if let Some(no) = try_witness(&Poly::x_minus(*c))? {
            return Ok(no);
        }
    }
    for f in crate::corpus::exhaustive_polys(deg_q.saturating_sub(2), &cfg.low_height_coeffs) {
        // monic candidates of each degree below deg Q
        let Some(fd) = f.degree() else { continue };
        for extra_deg in (fd + 1)..deg_q {
            let cand = f.add(&Poly::monomial(rat_int(1), extra_deg));
            if let Some(no) = try_witness(&cand)? {
                return Ok(no);
            }
        }
    }

    let mut out = Verdict::unknown(
        "no certificate applies and the falsification search found no lower-degree \
         polynomial with epsilon >= eps(Q)",
    );
    out.notes.extend(notes);
    Ok(out)
}

/// Checks that truncating at a key polynomial preserves epsilon below
/// deg Q and at Q itself, so Q stays key for its own truncation.
pub fn key_for_truncation_check(v: &Valuation, q: &Poly<Rat>, coeffs: &[Rat]) -> Result<Verdict> {
    let deg_q = q.degree().ok_or(Error::ZeroPolynomial)?;
    let trunc = Valuation::Truncation(Truncation::new(v.clone(), q.clone())?);
    let mut cases = 0u64;
    for f in crate::corpus::exhaustive_polys(deg_q.saturating_sub(1), coeffs) {
        if f.is_zero() {
            continue;
        }
        let under_v = epsilon(v, &f)?;
        let under_t = epsilon(&trunc, &f)?;
        cases += 1;
        if under_v != under_t {
            return Ok(Verdict::no(Witness::ValueMismatch {
                f: f.to_string(),
                lhs: under_t.to_string(),
                rhs: under_v.to_string(),
                context: "epsilon under the truncation vs under the valuation".into(),
            }));
        }
    }
    let eq_v = epsilon(v, q)?;
    let eq_t = epsilon(&trunc, q)?;
    if eq_v != eq_t {
        return Ok(Verdict::no(Witness::ValueMismatch {
            f: q.to_string(),
            lhs: eq_t.to_string(),
            rhs: eq_v.to_string(),
            context: "epsilon of Q under the truncation vs under the valuation".into(),
        }));
    }
    Ok(Verdict::yes(format!(
        "epsilon agrees on {cases} polynomials below deg Q and at Q itself"
    )))
}

//! Valuation descriptors and their evaluators: the p-adic (or trivial) base
//! valuation on Q, monomial valuations with rational or number-field
//! centers, restrictions of the latter to Q[x], and truncations along
//! q-expansions. Truncations are maps, not assumed to be valuations; a
//! sampling falsifier is provided.

use serde_json::{json, Value};

use crate::corpus;
use crate::error::{Error, Result};
use crate::numfield::{NfElement, NumberField};
use crate::ordgroup::GroupValue;
use crate::parse::{parse_nfelement, parse_qpoly};
use crate::poly::{binomial, Coeff, Poly};
use crate::rat::{check_prime, fmt_rat, parse_rat, rat_int, vp, Rat};
use crate::verdict::{Verdict, Witness};

/// Taylor-shift tables are precomputed up to this degree; higher degrees
/// fall back to the generic synthetic-division route.
const SHIFT_TABLE_DEG: usize = 16;

/// The valuation on the coefficient field Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseVal {
    /// v_p normalized with v_p(p) = (1, 0).
    Padic(u32),
    /// Every nonzero rational has value (0, 0).
    Trivial,
}

impl BaseVal {
    pub fn padic(p: u32) -> Result<BaseVal> {
        check_prime(p)?;
        Ok(BaseVal::Padic(p))
    }

    pub fn value(&self, c: &Rat) -> GroupValue {
        match self {
            BaseVal::Padic(p) => match vp(c, *p) {
                Some(k) => GroupValue::from_rat(rat_int(i128::from(k))),
                None => GroupValue::Infinity,
            },
            BaseVal::Trivial => {
                if c.is_zero() {
                    GroupValue::Infinity
                } else {
                    GroupValue::zero()
                }
            }
        }
    }

    pub fn p(&self) -> Option<u32> {
        match self {
            BaseVal::Padic(p) => Some(*p),
            BaseVal::Trivial => None,
        }
    }
}

fn shift_table_q(center: &Rat) -> Vec<Vec<Rat>> {
    let mut table = Vec::with_capacity(SHIFT_TABLE_DEG + 1);
    for j in 0..=SHIFT_TABLE_DEG {
        let mut row = vec![rat_int(0); j + 1];
        let mut pw = rat_int(1);
        for i in (0..=j).rev() {
            row[i] = rat_int(binomial(j, i)) * pw;
            pw = pw * center;
        }
        table.push(row);
    }
    table
}

fn shift_table_nf(center: &NfElement) -> Vec<Vec<NfElement>> {
    let mut table = Vec::with_capacity(SHIFT_TABLE_DEG + 1);
    for j in 0..=SHIFT_TABLE_DEG {
        let mut row = vec![center.zero_like(); j + 1];
        let mut pw = center.one_like();
        for i in (0..=j).rev() {
            row[i] = pw.mul_int(binomial(j, i));
            pw = pw.mul(center);
        }
        table.push(row);
    }
    table
}

/// Monomial valuation with a rational center: f evaluated through its
/// Taylor expansion about the center, digit i weighted by i*delta.
#[derive(Clone, Debug)]
pub struct MonomialQ {
    base: BaseVal,
    center: Rat,
    delta: GroupValue,
    table: Option<Vec<Vec<Rat>>>,
}

impl MonomialQ {
    pub fn new(base: BaseVal, center: Rat, delta: GroupValue) -> MonomialQ {
        let table = if center.is_zero() {
            None
        } else {
            Some(shift_table_q(&center))
        };
        MonomialQ {
            base,
            center,
            delta,
            table,
        }
    }

    pub fn base(&self) -> BaseVal {
        self.base
    }

    pub fn center(&self) -> Rat {
        self.center
    }

    pub fn delta(&self) -> GroupValue {
        self.delta
    }

    pub fn eval(&self, f: &Poly<Rat>) -> GroupValue {
        let n = match f.degree() {
            None => return GroupValue::Infinity,
            Some(n) => n,
        };
        let mut best = GroupValue::Infinity;
        let mut consider = |i: usize, c: &Rat| {
            let v = self.base.value(c) + self.delta.times(i);
            if v < best {
                best = v;
            }
        };
        match &self.table {
            None => {
                for (i, c) in f.coeffs().iter().enumerate() {
                    consider(i, c);
                }
            }
            Some(table) if n <= SHIFT_TABLE_DEG => {
                for i in 0..=n {
                    let mut acc = rat_int(0);
                    for (j, fj) in f.coeffs().iter().enumerate().skip(i) {
                        if !fj.is_zero() {
                            acc = acc + fj * table[j][i];
                        }
                    }
                    consider(i, &acc);
                }
            }
            Some(_) => {
                for (i, c) in f.taylor_about(&self.center).iter().enumerate() {
                    consider(i, c);
                }
            }
        }
        best
    }
}

/// Monomial valuation with a number-field center. Acts on L[x] directly and
/// on Q[x] by coercion; the latter is what `Restriction` exposes.
#[derive(Clone, Debug)]
pub struct MonomialNf {
    field: NumberField,
    center: NfElement,
    delta: GroupValue,
    table: Vec<Vec<NfElement>>,
}

impl MonomialNf {
    pub fn new(field: NumberField, center: NfElement, delta: GroupValue) -> MonomialNf {
        debug_assert!(center.field() == &field);
        let table = shift_table_nf(&center);
        MonomialNf {
            field,
            center,
            delta,
            table,
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn center(&self) -> &NfElement {
        &self.center
    }

    pub fn delta(&self) -> GroupValue {
        self.delta
    }

    /// Evaluation on Q[x] through the coercion into L[x].
    pub fn eval_q(&self, f: &Poly<Rat>) -> GroupValue {
        let n = match f.degree() {
            None => return GroupValue::Infinity,
            Some(n) => n,
        };
        let mut best = GroupValue::Infinity;
        if n <= SHIFT_TABLE_DEG {
            for i in 0..=n {
                let mut acc = [rat_int(0), rat_int(0), rat_int(0)];
                for (j, fj) in f.coeffs().iter().enumerate().skip(i) {
                    if fj.is_zero() {
                        continue;
                    }
                    let t = &self.table[j][i];
                    for (k, tc) in t.coeffs().iter().enumerate() {
                        if !tc.is_zero() {
                            acc[k] = acc[k] + fj * tc;
                        }
                    }
                }
                let v = self.field.mu_coeffs(&acc) + self.delta.times(i);
                if v < best {
                    best = v;
                }
            }
            best
        } else {
            self.eval_nf(&self.field.coerce_poly(f))
        }
    }

    /// Evaluation on L[x].
    pub fn eval_nf(&self, f: &Poly<NfElement>) -> GroupValue {
        if f.is_zero() {
            return GroupValue::Infinity;
        }
        let mut best = GroupValue::Infinity;
        for (i, c) in f.taylor_about(&self.center).iter().enumerate() {
            let v = self.field.mu(c) + self.delta.times(i);
            if v < best {
                best = v;
            }
        }
        best
    }
}

/// Truncation of an inner descriptor along the q-expansion:
/// f -> min_i (inner(f_i) + i * inner(q)).
#[derive(Clone, Debug)]
pub struct Truncation {
    inner: Box<Valuation>,
    q: Poly<Rat>,
    vq: GroupValue,
}

impl Truncation {
    pub fn new(inner: Valuation, q: Poly<Rat>) -> Result<Truncation> {
        if q.degree().map_or(true, |d| d == 0) {
            return Err(Error::ConstantPolynomial);
        }
        if !q.is_monic() {
            return Err(Error::NotMonic(q.to_string()));
        }
        let vq = inner.eval_q(&q)?;
        Ok(Truncation {
            inner: Box::new(inner),
            q,
            vq,
        })
    }

    pub fn inner(&self) -> &Valuation {
        &self.inner
    }

    pub fn q(&self) -> &Poly<Rat> {
        &self.q
    }

    /// inner(q), cached at construction.
    pub fn vq(&self) -> GroupValue {
        self.vq
    }

    pub fn eval(&self, f: &Poly<Rat>) -> Result<GroupValue> {
        if f.is_zero() {
            return Ok(GroupValue::Infinity);
        }
        let expansion = f.q_expansion(&self.q)?;
        let mut best = GroupValue::Infinity;
        for (i, digit) in expansion.digits.iter().enumerate() {
            let v = self.inner.eval_q(digit)? + self.vq.times(i);
            if v < best {
                best = v;
            }
        }
        Ok(best)
    }
}

/// A valuation (or truncation map) on Q[x].
#[derive(Clone, Debug)]
pub enum Valuation {
    /// Base valuation extended coefficientwise: f -> min_i v(c_i).
    Base(BaseVal),
    Monomial(MonomialQ),
    /// Monomial over a number field, acting on L[x] and on Q[x] by coercion.
    MonomialNf(MonomialNf),
    /// The restriction of a number-field monomial valuation to Q[x].
    Restriction(MonomialNf),
    Truncation(Truncation),
}

impl Valuation {
    pub fn truncation(inner: Valuation, q: Poly<Rat>) -> Result<Valuation> {
        Ok(Valuation::Truncation(Truncation::new(inner, q)?))
    }

    /// Evaluation on Q[x]; every variant supports this.
    pub fn eval_q(&self, f: &Poly<Rat>) -> Result<GroupValue> {
        match self {
            Valuation::Base(b) => {
                let mut best = GroupValue::Infinity;
                for c in f.coeffs() {
                    let v = b.value(c);
                    if v < best {
                        best = v;
                    }
                }
                Ok(best)
            }
            Valuation::Monomial(m) => Ok(m.eval(f)),
            Valuation::MonomialNf(m) | Valuation::Restriction(m) => Ok(m.eval_q(f)),
            Valuation::Truncation(t) => t.eval(f),
        }
    }

    /// Evaluation on L[x]; only number-field monomials support this.
    pub fn eval_nf(&self, f: &Poly<NfElement>) -> Result<GroupValue> {
        match self {
            Valuation::MonomialNf(m) | Valuation::Restriction(m) => Ok(m.eval_nf(f)),
            _ => Err(Error::DomainMismatch(
                "this descriptor evaluates polynomials over Q only".into(),
            )),
        }
    }

    /// The base valuation underlying the descriptor.
    pub fn base(&self) -> BaseVal {
        match self {
            Valuation::Base(b) => *b,
            Valuation::Monomial(m) => m.base,
            Valuation::MonomialNf(m) | Valuation::Restriction(m) => BaseVal::Padic(m.field.p()),
            Valuation::Truncation(t) => t.inner.base(),
        }
    }

    pub fn delta(&self) -> Option<GroupValue> {
        match self {
            Valuation::Monomial(m) => Some(m.delta),
            Valuation::MonomialNf(m) | Valuation::Restriction(m) => Some(m.delta),
            _ => None,
        }
    }

    pub fn as_monomial_nf(&self) -> Option<&MonomialNf> {
        match self {
            Valuation::MonomialNf(m) | Valuation::Restriction(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_monomial_q(&self) -> Option<&MonomialQ> {
        match self {
            Valuation::Monomial(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_truncation(&self) -> Option<&Truncation> {
        match self {
            Valuation::Truncation(t) => Some(t),
            _ => None,
        }
    }

    /// Monic minimal polynomial over Q of the monomial center, when there is
    /// one: x - a for rational centers, the field-theoretic minimal
    /// polynomial otherwise.
    pub fn min_poly_of_center(&self) -> Option<Poly<Rat>> {
        match self {
            Valuation::Monomial(m) => Some(Poly::x_minus(m.center)),
            Valuation::MonomialNf(m) | Valuation::Restriction(m) => {
                Some(m.field.minimal_polynomial(&m.center))
            }
            _ => None,
        }
    }

    /// Ramification index of the value group of mu on Q(center).
    pub fn e_m_of_center(&self) -> Option<u32> {
        match self {
            Valuation::Monomial(_) => Some(1),
            Valuation::MonomialNf(m) | Valuation::Restriction(m) => {
                if m.center.is_rational() {
                    Some(1)
                } else {
                    Some(m.field.extension().e_m)
                }
            }
            _ => None,
        }
    }

    /// Generator of the support ideal on Q[x]: the minimal polynomial of the
    /// center when delta is infinite, none otherwise.
    pub fn support_q(&self) -> Option<Poly<Rat>> {
        match self {
            Valuation::Monomial(m) if m.delta.is_infinite() => Some(Poly::x_minus(m.center)),
            Valuation::MonomialNf(m) | Valuation::Restriction(m) if m.delta.is_infinite() => {
                Some(m.field.minimal_polynomial(&m.center))
            }
            _ => None,
        }
    }

    /// Minimal degree of a nonzero support element; `None` encodes alpha =
    /// infinity (trivial support).
    pub fn support_degree(&self) -> Option<usize> {
        self.support_q().and_then(|s| s.degree())
    }

    pub fn is_truncation(&self) -> bool {
        matches!(self, Valuation::Truncation(_))
    }

    /// Number of truncation layers; depth of 2 or more is allowed but
    /// untested territory and gets flagged in reports.
    pub fn truncation_depth(&self) -> usize {
        match self {
            Valuation::Truncation(t) => 1 + t.inner.truncation_depth(),
            _ => 0,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Valuation::Base(BaseVal::Padic(p)) => format!("v_{p} on Q"),
            Valuation::Base(BaseVal::Trivial) => "trivial valuation on Q".into(),
            Valuation::Monomial(m) => {
                let base = match m.base {
                    BaseVal::Padic(p) => format!("v_{p}"),
                    BaseVal::Trivial => "trivial".into(),
                };
                format!(
                    "monomial(center = {}, delta = {}) over {}",
                    fmt_rat(&m.center),
                    m.delta,
                    base
                )
            }
            Valuation::MonomialNf(m) => format!(
                "monomial(center = {}, delta = {}) on {}",
                m.center, m.delta, m.field
            ),
            Valuation::Restriction(m) => format!(
                "restriction to Q[x] of monomial(center = {}, delta = {}) on {}",
                m.center, m.delta, m.field
            ),
            Valuation::Truncation(t) => {
                format!("truncation at q = {} of [{}]", t.q, t.inner.describe())
            }
        }
    }

    /// Descriptor as scenario-file JSON.
    pub fn to_json(&self) -> Value {
        match self {
            Valuation::Base(BaseVal::Padic(p)) => json!({"kind": "base", "p": p}),
            Valuation::Base(BaseVal::Trivial) => json!({"kind": "base", "base": "trivial"}),
            Valuation::Monomial(m) => {
                let mut v = json!({
                    "kind": "monomial",
                    "center": fmt_rat(&m.center),
                    "delta": m.delta.to_string(),
                });
                match m.base {
                    BaseVal::Padic(p) => v["base_p"] = json!(p),
                    BaseVal::Trivial => v["base"] = json!("trivial"),
                }
                v
            }
            Valuation::MonomialNf(m) | Valuation::Restriction(m) => {
                let kind = if matches!(self, Valuation::Restriction(_)) {
                    "restriction"
                } else {
                    "monomial"
                };
                json!({
                    "kind": kind,
                    "field": {
                        "min_poly": crate::poly::fmt_qpoly(m.field.min_poly().coeffs(), "t"),
                        "p": m.field.p(),
                    },
                    "center": m.center.to_string(),
                    "delta": m.delta.to_string(),
                })
            }
            Valuation::Truncation(t) => json!({
                "kind": "truncation",
                "inner": t.inner.to_json(),
                "q": t.q.to_string(),
            }),
        }
    }

    /// Parses a descriptor from scenario-file JSON.
    pub fn from_json(v: &Value) -> Result<Valuation> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Scenario("descriptor needs a \"kind\"".into()))?;
        match kind {
            "base" => Ok(Valuation::Base(base_from_json(v)?)),
            "monomial" | "restriction" => {
                let delta: GroupValue = v
                    .get("delta")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Scenario("monomial needs \"delta\"".into()))?
                    .parse()?;
                let center_text = v
                    .get("center")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Scenario("monomial needs \"center\"".into()))?;
                if let Some(field_spec) = v.get("field") {
                    let field = field_from_json(field_spec)?;
                    let center = parse_nfelement(center_text, &field)?;
                    let m = MonomialNf::new(field, center, delta);
                    if kind == "restriction" {
                        Ok(Valuation::Restriction(m))
                    } else {
                        Ok(Valuation::MonomialNf(m))
                    }
                } else {
                    if kind == "restriction" {
                        return Err(Error::Scenario(
                            "restriction needs a \"field\"".into(),
                        ));
                    }
                    let base = base_from_json(v)?;
                    let center = parse_rat(center_text)?;
                    Ok(Valuation::Monomial(MonomialQ::new(base, center, delta)))
                }
            }
            "truncation" => {
                let inner = Valuation::from_json(v.get("inner").ok_or_else(|| {
                    Error::Scenario("truncation needs \"inner\"".into())
                })?)?;
                let q = parse_qpoly(
                    v.get("q")
                        .and_then(Value::as_str)
                        .ok_or_else(|| Error::Scenario("truncation needs \"q\"".into()))?,
                )?;
                Valuation::truncation(inner, q)
            }
            other => Err(Error::Scenario(format!("unknown descriptor kind {other:?}"))),
        }
    }
}

fn base_from_json(v: &Value) -> Result<BaseVal> {
    if v.get("base").and_then(Value::as_str) == Some("trivial")
        || v.get("trivial").and_then(Value::as_bool) == Some(true)
    {
        return Ok(BaseVal::Trivial);
    }
    let p = v
        .get("base_p")
        .or_else(|| v.get("p"))
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Scenario("descriptor needs \"p\" or \"base\": \"trivial\"".into()))?;
    BaseVal::padic(p as u32)
}

/// Parses `{"min_poly": "...", "p": n}`.
pub fn field_from_json(v: &Value) -> Result<NumberField> {
    let text = v
        .get("min_poly")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Scenario("field needs \"min_poly\"".into()))?;
    let p = v
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Scenario("field needs \"p\"".into()))?;
    // the minimal polynomial text uses t as the variable
    let m = parse_tpoly_as_qpoly(text)?;
    Ok(NumberField::new(&m, p as u32)?.0)
}

/// Minimal polynomials are written in t; reuse the x-parser by relabeling.
/// Any literal x in the input becomes an invalid character and errors.
fn parse_tpoly_as_qpoly(text: &str) -> Result<Poly<Rat>> {
    let swapped: String = text
        .chars()
        .map(|c| match c {
            't' => 'x',
            'x' => '?',
            c => c,
        })
        .collect();
    parse_qpoly(&swapped)
}

/// Corpus bounds for the truncation-falsification sampler.
#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub max_deg: usize,
    pub coeffs: Vec<Rat>,
    pub n_random_pairs: usize,
    pub rand_max_deg: usize,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            max_deg: 3,
            coeffs: corpus::default_coeffs(),
            n_random_pairs: 200,
            rand_max_deg: 5,
            seed: 42,
        }
    }
}

/// Exhaustively tests v(fg) = v(f) + v(g) and v(f+g) >= min over the corpus,
/// plus seeded random pairs. `No` carries the first witness in corpus order;
/// a passing run is reported as unfalsified, never as proof.
pub fn is_valuation_sample(t: &Truncation, spec: &SampleSpec) -> Result<Verdict> {
    let polys = corpus::exhaustive_polys(spec.max_deg, &spec.coeffs);
    let vals: Vec<GroupValue> = polys
        .iter()
        .map(|f| t.eval(f))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = 0u64;
    for j in 0..polys.len() {
        for i in 0..=j {
            pairs += 1;
            if let Some(w) = check_pair(t, &polys[i], &polys[j], vals[i], vals[j])? {
                return Ok(Verdict::no(w));
            }
        }
    }
    let p = t.inner.base().p().unwrap_or(2);
    let mut rng = corpus::rng_for(spec.seed, 1);
    for _ in 0..spec.n_random_pairs {
        let f = corpus::random_poly(&mut rng, spec.rand_max_deg, p);
        let g = corpus::random_poly(&mut rng, spec.rand_max_deg, p);
        let vf = t.eval(&f)?;
        let vg = t.eval(&g)?;
        if let Some(w) = check_pair(t, &f, &g, vf, vg)? {
            return Ok(Verdict::no(w));
        }
    }
    let mut v = Verdict::yes(format!(
        "unfalsified: exhaustive deg <= {} corpus ({} polynomials, {} pairs) \
         plus {} seeded random pairs (seed {})",
        spec.max_deg,
        polys.len(),
        pairs,
        spec.n_random_pairs,
        spec.seed
    ));
    if t.inner.truncation_depth() > 0 {
        v = v.with_note(format!(
            "nested truncation depth {}: untested territory",
            t.inner.truncation_depth() + 1
        ));
    }
    Ok(v)
}

fn check_pair(
    t: &Truncation,
    f: &Poly<Rat>,
    g: &Poly<Rat>,
    vf: GroupValue,
    vg: GroupValue,
) -> Result<Option<Witness>> {
    let prod = t.eval(&f.mul(g))?;
    if prod != vf + vg {
        return Ok(Some(Witness::PairMultiplicativity {
            f: f.to_string(),
            g: g.to_string(),
            lhs: prod.to_string(),
            rhs: (vf + vg).to_string(),
        }));
    }
    let sum = t.eval(&f.add(g))?;
    let min = vf.min(vg);
    if sum < min {
        return Ok(Some(Witness::PairSubadditivity {
            f: f.to_string(),
            g: g.to_string(),
            lhs: sum.to_string(),
            min_rhs: min.to_string(),
        }));
    }
    Ok(None)
}

/// Data of the r = Q^e / h construction: the least e with e*nu(Q) in the
/// value group of the center field, and a witness h of lower degree with
/// nu(h) equal to the target.
#[derive(Clone, Debug)]
pub struct EHData {
    pub e: u64,
    pub h: Poly<Rat>,
    pub nu_q: GroupValue,
    pub target: GroupValue,
    pub note: String,
}

/// Returns `None` on the branch where nu(Q) lies outside the divisible hull
/// of the base value group (infinitesimal part, or nonzero over a trivial
/// base). Errors with `ExistenceNotFound` if the bounded search family
/// {p^k (x-c)^j} is exhausted, which is reported, never ignored.
pub fn least_e_and_h(v: &Valuation, big_q: &Poly<Rat>) -> Result<Option<EHData>> {
    if !matches!(
        v,
        Valuation::Monomial(_) | Valuation::MonomialNf(_) | Valuation::Restriction(_)
    ) {
        return Err(Error::DomainMismatch(
            "least_e_and_h expects a monomial or restriction descriptor".into(),
        ));
    }
    let nu_q = v.eval_q(big_q)?;
    if nu_q.is_infinite() {
        return Err(Error::DomainMismatch("nu(Q) must be finite".into()));
    }
    let deg_q = big_q.degree().unwrap_or(0);
    let (e, target, p) = match v.base() {
        BaseVal::Trivial => {
            if !nu_q.is_zero() {
                return Ok(None);
            }
            (1u64, GroupValue::zero(), None)
        }
        BaseVal::Padic(p) => {
            let e_m = v.e_m_of_center().unwrap();
            match nu_q.least_multiplier(e_m) {
                None => return Ok(None),
                Some(e) => (e, nu_q.times(e as usize), Some(p)),
            }
        }
    };

    // Deterministic search: j ascending, c in 0, 1, -1, ..., p, -p; the k
    // exponent is forced by the target and only needs to be integral.
    let mut candidates = vec![rat_int(0)];
    if let Some(p) = p {
        for c in 1..=i128::from(p) {
            candidates.push(rat_int(c));
            candidates.push(rat_int(-c));
        }
    }
    let note = format!(
        "family p^k (x - c)^j with 0 <= j < {deg_q}, c in 0, +-1, ..., +-p, k forced by the target"
    );
    for j in 0..deg_q.max(1) {
        let c_list: &[Rat] = if j == 0 { &candidates[..1] } else { &candidates };
        for c in c_list {
            let pow = if j == 0 {
                Poly::constant(rat_int(1))
            } else {
                Poly::x_minus(*c).pow(j as u32)
            };
            let w = v.eval_q(&pow)?;
            let diff = match target.sub(&w) {
                Ok(d) => d,
                Err(_) => continue,
            };
            let (k1, k2) = match diff {
                GroupValue::Finite(a, b) => (a, b),
                GroupValue::Infinity => continue,
            };
            if !k2.is_zero() || *k1.denom() != 1 {
                continue;
            }
            let k = *k1.numer();
            let h = match p {
                None => pow.clone(),
                Some(p) => {
                    let scale = if k >= 0 {
                        rat_int(i128::from(p)).pow(k as i32)
                    } else {
                        rat_int(1) / rat_int(i128::from(p)).pow((-k) as i32)
                    };
                    pow.mul_coeff(&scale)
                }
            };
            debug_assert_eq!(v.eval_q(&h)?, target);
            return Ok(Some(EHData {
                e,
                h,
                nu_q,
                target,
                note: format!("{note}; hit at j = {j}, c = {}, k = {k}", fmt_rat(c)),
            }));
        }
    }
    Err(Error::ExistenceNotFound(note))
}

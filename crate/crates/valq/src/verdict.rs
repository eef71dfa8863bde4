//! Three-valued verdicts for semi-decidable checks, with machine-checkable
//! witnesses on the negative side.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictStatus {
    Yes,
    No,
    Unknown,
}

/// Evidence attached to a verdict or a failed check. Values are carried as
/// their canonical strings so witnesses serialize exactly and can be
/// re-parsed and re-evaluated.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// v(f*g) != v(f) + v(g) under the named map.
    PairMultiplicativity {
        f: String,
        g: String,
        lhs: String,
        rhs: String,
    },
    /// v(f+g) < min(v(f), v(g)).
    PairSubadditivity {
        f: String,
        g: String,
        lhs: String,
        min_rhs: String,
    },
    /// A lower-degree element at distance >= delta from the center.
    CloserLowerDegree {
        c: String,
        distance: String,
        delta: String,
    },
    /// A lower-degree polynomial with epsilon at least that of Q.
    EpsilonAtLeast {
        f: String,
        eps_f: String,
        eps_q: String,
    },
    /// Two routes that must agree disagreed on f.
    ValueMismatch {
        f: String,
        lhs: String,
        rhs: String,
        context: String,
    },
    /// A pair (f, g) violating one of the graded criteria.
    CriterionPair {
        condition: String,
        f: String,
        g: String,
        detail: String,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::PairMultiplicativity { f: a, g, lhs, rhs } => {
                write!(f, "v({a} * {g}) = {lhs} != {rhs} = v({a}) + v({g})")
            }
            Witness::PairSubadditivity { f: a, g, lhs, min_rhs } => {
                write!(f, "v({a} + {g}) = {lhs} < min = {min_rhs}")
            }
            Witness::CloserLowerDegree { c, distance, delta } => {
                write!(f, "mu(a - ({c})) = {distance} >= delta = {delta}")
            }
            Witness::EpsilonAtLeast { f: a, eps_f, eps_q } => {
                write!(f, "eps({a}) = {eps_f} >= eps(Q) = {eps_q} at lower degree")
            }
            Witness::ValueMismatch { f: a, lhs, rhs, context } => {
                write!(f, "{context}: at {a}, {lhs} != {rhs}")
            }
            Witness::CriterionPair { condition, f: a, g, detail } => {
                write!(f, "condition {condition} fails at ({a}, {g}): {detail}")
            }
        }
    }
}

/// Yes / No(witness) / Unknown. A `No` always carries a witness; a `Yes`
/// names the certificate that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn yes(certificate: impl Into<String>) -> Verdict {
        Verdict {
            status: VerdictStatus::Yes,
            certificate: Some(certificate.into()),
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn no(witness: Witness) -> Verdict {
        Verdict {
            status: VerdictStatus::No,
            certificate: None,
            witness: Some(witness),
            notes: Vec::new(),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Verdict {
        Verdict {
            status: VerdictStatus::Unknown,
            certificate: None,
            witness: None,
            notes: vec![reason.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Verdict {
        self.notes.push(note.into());
        self
    }

    pub fn is_yes(&self) -> bool {
        self.status == VerdictStatus::Yes
    }

    pub fn is_no(&self) -> bool {
        self.status == VerdictStatus::No
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            VerdictStatus::Yes => {
                write!(f, "Yes")?;
                if let Some(c) = &self.certificate {
                    write!(f, " [{c}]")?;
                }
            }
            VerdictStatus::No => {
                write!(f, "No")?;
                if let Some(w) = &self.witness {
                    write!(f, " [{w}]")?;
                }
            }
            VerdictStatus::Unknown => {
                write!(f, "Unknown")?;
                if let Some(n) = self.notes.first() {
                    write!(f, " [{n}]")?;
                }
            }
        }
        Ok(())
    }
}

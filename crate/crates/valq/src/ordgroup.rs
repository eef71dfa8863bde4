//! The value group: (Q x Q, lex) with an absorbing infinity, plus the
//! divisible extension used by the epsilon invariant.
//!
//! The first coordinate lives over the normalized base valuation (v_p(p) = 1);
//! the second coordinate carries infinitesimals. Rank two is all the
//! constructions here ever need: one coordinate torsion over the base, one
//! torsion-free.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, parse_rat, rat_int, Rat};

/// An element of (Q x Q, lex) together with infinity.
///
/// Derived `Ord` is exactly the lexicographic order with `Infinity` on top,
/// because the variants are declared in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupValue {
    Finite(Rat, Rat),
    Infinity,
}

pub use GroupValue::Infinity;

impl GroupValue {
    pub fn zero() -> Self {
        GroupValue::Finite(Rat::zero(), Rat::zero())
    }

    pub fn finite(r1: Rat, r2: Rat) -> Self {
        GroupValue::Finite(r1, r2)
    }

    /// Rank-1 embedding r -> (r, 0).
    pub fn from_rat(r: Rat) -> Self {
        GroupValue::Finite(r, Rat::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, GroupValue::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        *self == GroupValue::zero()
    }

    /// First coordinate of a finite value.
    pub fn r1(&self) -> Option<Rat> {
        match self {
            GroupValue::Finite(a, _) => Some(*a),
            GroupValue::Infinity => None,
        }
    }

    pub fn neg(&self) -> Result<GroupValue> {
        match self {
            GroupValue::Finite(a, b) => Ok(GroupValue::Finite(-a, -b)),
            GroupValue::Infinity => Err(Error::InfiniteValue),
        }
    }

    pub fn sub(&self, rhs: &GroupValue) -> Result<GroupValue> {
        match (self, rhs) {
            (GroupValue::Finite(a, b), GroupValue::Finite(c, d)) => {
                Ok(GroupValue::Finite(a - c, b - d))
            }
            _ => Err(Error::InfiniteValue),
        }
    }

    /// Scales by a rational factor. Scaling infinity by a non-positive
    /// factor is rejected.
    pub fn scale(&self, n: Rat) -> Result<GroupValue> {
        match self {
            GroupValue::Finite(a, b) => Ok(GroupValue::Finite(a * n, b * n)),
            GroupValue::Infinity => {
                if n > Rat::zero() {
                    Ok(GroupValue::Infinity)
                } else {
                    Err(Error::InfiniteScale)
                }
            }
        }
    }

    /// n-fold sum. The empty sum is zero, also for infinity, so i = 0 terms
    /// of expansions stay well-defined when the base value is infinite.
    pub fn times(&self, n: usize) -> GroupValue {
        if n == 0 {
            return GroupValue::zero();
        }
        match self {
            GroupValue::Finite(a, b) => {
                let k = rat_int(n as i128);
                GroupValue::Finite(a * k, b * k)
            }
            GroupValue::Infinity => GroupValue::Infinity,
        }
    }

    /// True iff some positive multiple lands in Q x {0}, i.e. the
    /// infinitesimal coordinate vanishes. Rejects infinity.
    pub fn is_torsion_over_base(&self) -> Result<bool> {
        match self {
            GroupValue::Finite(_, b) => Ok(b.is_zero()),
            GroupValue::Infinity => Err(Error::InfiniteValue),
        }
    }

    /// Least e >= 1 with e * self in (1/e_m)Z x {0}; `None` when the
    /// infinitesimal coordinate is nonzero (or the value is infinite).
    pub fn least_multiplier(&self, e_m: u32) -> Option<u64> {
        match self {
            GroupValue::Finite(a, b) => {
                if !b.is_zero() {
                    return None;
                }
                // e*a in (1/e_m)Z  <=>  e * (a*e_m) in Z; with a*e_m = x/y
                // reduced, the least such e is y.
                let scaled = a * rat_int(i128::from(e_m));
                Some(*scaled.denom() as u64)
            }
            GroupValue::Infinity => None,
        }
    }
}

impl Add for GroupValue {
    type Output = GroupValue;

    fn add(self, rhs: GroupValue) -> GroupValue {
        match (self, rhs) {
            (GroupValue::Finite(a, b), GroupValue::Finite(c, d)) => {
                GroupValue::Finite(a + c, b + d)
            }
            _ => GroupValue::Infinity,
        }
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupValue::Infinity => write!(f, "inf"),
            GroupValue::Finite(a, b) => {
                if b.is_zero() {
                    write!(f, "{}", fmt_rat(a))
                } else {
                    write!(f, "({}, {})", fmt_rat(a), fmt_rat(b))
                }
            }
        }
    }
}

impl FromStr for GroupValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "inf" {
            return Ok(GroupValue::Infinity);
        }
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or(Error::Parse {
                col: 1,
                msg: format!("expected \"(a, b)\": {s:?}"),
            })?;
            return Ok(GroupValue::Finite(parse_rat(a)?, parse_rat(b)?));
        }
        Ok(GroupValue::from_rat(parse_rat(t)?))
    }
}

impl Serialize for GroupValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Element of (Q x Q) tensor Q extended by both infinities; the codomain of
/// the epsilon invariant. Derived `Ord` gives -inf < finite (lex) < +inf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EpsilonValue {
    MinusInfinity,
    Finite(Rat, Rat),
    PlusInfinity,
}

impl EpsilonValue {
    /// (x - y) / b for finite group values; the divisor is a positive order.
    pub fn diff_quotient(x: &GroupValue, y: &GroupValue, b: u32) -> Result<EpsilonValue> {
        debug_assert!(b >= 1);
        let d = x.sub(y)?;
        match d.scale(rat(1, i128::from(b)))? {
            GroupValue::Finite(a, c) => Ok(EpsilonValue::Finite(a, c)),
            GroupValue::Infinity => unreachable!("difference of finite values is finite"),
        }
    }

    pub fn from_group(v: &GroupValue) -> Result<EpsilonValue> {
        match v {
            GroupValue::Finite(a, b) => Ok(EpsilonValue::Finite(*a, *b)),
            GroupValue::Infinity => Err(Error::InfiniteValue),
        }
    }
}

use crate::rat::rat;

impl fmt::Display for EpsilonValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsilonValue::MinusInfinity => write!(f, "-inf"),
            EpsilonValue::PlusInfinity => write!(f, "inf"),
            EpsilonValue::Finite(a, b) => {
                write!(f, "{}", GroupValue::Finite(*a, *b))
            }
        }
    }
}

impl FromStr for EpsilonValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "-inf" {
            return Ok(EpsilonValue::MinusInfinity);
        }
        match GroupValue::from_str(t)? {
            GroupValue::Finite(a, b) => Ok(EpsilonValue::Finite(a, b)),
            GroupValue::Infinity => Ok(EpsilonValue::PlusInfinity),
        }
    }
}

impl Serialize for EpsilonValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn gv(a: (i128, i128), b: (i128, i128)) -> GroupValue {
        GroupValue::Finite(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn addition_examples() {
        assert_eq!(gv((1, 2), (0, 1)) + gv((1, 1), (2, 1)), gv((3, 2), (2, 1)));
        assert_eq!(Infinity + GroupValue::zero(), Infinity);
        assert_eq!(gv((0, 1), (1, 1)) + gv((0, 1), (-1, 1)), GroupValue::zero());
    }

    #[test]
    fn order_examples() {
        assert!(gv((1, 2), (1, 1)) < gv((3, 2), (0, 1)));
        assert!(gv((1, 2), (1, 1)) > gv((1, 2), (0, 1)));
        assert!(Infinity > gv((100, 1), (0, 1)));
    }

    #[test]
    fn scaling_examples() {
        assert_eq!(gv((3, 2), (0, 1)).scale(rat(1, 3)).unwrap(), gv((1, 2), (0, 1)));
        assert_eq!(gv((0, 1), (1, 1)).scale(rat(2, 1)).unwrap(), gv((0, 1), (2, 1)));
        assert_eq!(Infinity.scale(rat(2, 1)).unwrap(), Infinity);
        assert!(Infinity.scale(rat(0, 1)).is_err());
        assert!(Infinity.scale(rat(-1, 1)).is_err());
    }

    #[test]
    fn times_zero_is_zero_even_for_infinity() {
        assert_eq!(Infinity.times(0), GroupValue::zero());
        assert_eq!(Infinity.times(3), Infinity);
        assert_eq!(gv((1, 2), (1, 1)).times(2), gv((1, 1), (2, 1)));
    }

    #[test]
    fn torsion_examples() {
        assert!(gv((3, 4), (0, 1)).is_torsion_over_base().unwrap());
        assert!(!gv((0, 1), (1, 1)).is_torsion_over_base().unwrap());
        assert!(!gv((-2, 1), (5, 1)).is_torsion_over_base().unwrap());
        assert!(Infinity.is_torsion_over_base().is_err());
    }

    #[test]
    fn least_multiplier_examples() {
        // 3/4: e = 1 gives 3/4, not in (1/2)Z; e = 2 gives 3/2, which is.
        assert_eq!(gv((3, 4), (0, 1)).least_multiplier(2), Some(2));
        assert_eq!(gv((1, 2), (0, 1)).least_multiplier(2), Some(1));
        assert_eq!(gv((1, 1), (2, 1)).least_multiplier(7), None);
        assert_eq!(gv((5, 3), (0, 1)).least_multiplier(3), Some(1));
        assert_eq!(gv((1, 2), (0, 1)).least_multiplier(1), Some(2));
    }

    #[test]
    fn display_round_trip() {
        for v in [
            gv((3, 4), (0, 1)),
            gv((-1, 2), (5, 3)),
            GroupValue::zero(),
            Infinity,
        ] {
            let s = v.to_string();
            assert_eq!(s.parse::<GroupValue>().unwrap(), v);
        }
        assert_eq!(gv((3, 4), (0, 1)).to_string(), "3/4");
        assert_eq!(gv((3, 4), (1, 1)).to_string(), "(3/4, 1)");
        assert_eq!(Infinity.to_string(), "inf");
    }

    #[test]
    fn epsilon_order() {
        use EpsilonValue::*;
        assert!(MinusInfinity < Finite(rat(-100, 1), rat(0, 1)));
        assert!(Finite(rat(100, 1), rat(0, 1)) < PlusInfinity);
        assert!(Finite(rat(1, 2), rat(0, 1)) < Finite(rat(1, 2), rat(1, 1)));
    }

    #[test]
    fn epsilon_diff_quotient() {
        let x = gv((3, 2), (0, 1));
        let y = gv((0, 1), (0, 1));
        assert_eq!(
            EpsilonValue::diff_quotient(&x, &y, 2).unwrap(),
            EpsilonValue::Finite(rat(3, 4), rat(0, 1))
        );
        assert!(EpsilonValue::diff_quotient(&Infinity, &y, 1).is_err());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-40i128..40, 1i128..12).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_finite() -> impl Strategy<Value = GroupValue> {
        (arb_rat(), arb_rat()).prop_map(|(a, b)| GroupValue::Finite(a, b))
    }

    proptest! {
        #[test]
        fn group_axioms(x in arb_finite(), y in arb_finite(), z in arb_finite()) {
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x + GroupValue::zero(), x);
            let neg = x.neg().unwrap();
            prop_assert_eq!(x + neg, GroupValue::zero());
        }

        #[test]
        fn order_translation_invariant(x in arb_finite(), y in arb_finite(), z in arb_finite()) {
            if x < y {
                prop_assert!(x + z < y + z);
            }
        }

        #[test]
        fn torsion_stable_under_positive_multiples(x in arb_finite(), n in 1usize..9) {
            prop_assert_eq!(
                x.is_torsion_over_base().unwrap(),
                x.times(n).is_torsion_over_base().unwrap()
            );
        }
    }
}

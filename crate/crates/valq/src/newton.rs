//! Newton polygons: lower convex hulls of (index, value) point sets and the
//! root-valuation multisets they encode.

use crate::error::{Error, Result};
use crate::ordgroup::GroupValue;
use crate::poly::{Coeff, Poly};
use crate::rat::{fmt_rat, rat_int, Rat};

/// Lower convex hull of finitely many (i, v) points with strictly increasing
/// slopes. Values must be rank-1 (no infinitesimal part): slopes are plain
/// rationals, and root-valuation extraction is only meaningful there.
#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    /// The finite input points (index, first coordinate).
    pub points: Vec<(usize, Rat)>,
    /// Hull vertices, a subsequence of `points`.
    pub vertices: Vec<(usize, Rat)>,
    /// (slope, horizontal length) per hull segment, slopes strictly increasing.
    pub segments: Vec<(Rat, usize)>,
}

impl NewtonPolygon {
    /// Builds the polygon from (index, value) pairs; infinite values are
    /// allowed and simply absent from the hull.
    pub fn from_values(values: &[(usize, GroupValue)]) -> Result<NewtonPolygon> {
        let mut points = Vec::new();
        for (i, v) in values {
            match v {
                GroupValue::Infinity => {}
                GroupValue::Finite(a, b) => {
                    if !num_traits::Zero::is_zero(b) {
                        return Err(Error::InfinitesimalSlopeInput(v.to_string()));
                    }
                    points.push((*i, *a));
                }
            }
        }
        if points.is_empty() {
            return Err(Error::AllValuesInfinite);
        }
        points.sort_by_key(|(i, _)| *i);
        points.dedup_by_key(|(i, _)| *i);

        // Monotone-chain lower hull over (i, v).
        let mut hull: Vec<(usize, Rat)> = Vec::new();
        for &(i, v) in &points {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // drop (x2,y2) if it lies on or above the chord (x1,y1)-(i,v)
                let lhs = (y2 - y1) * rat_int((i - x1) as i128);
                let rhs = (v - y1) * rat_int((x2 - x1) as i128);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((i, v));
        }

        let mut segments = Vec::new();
        for w in hull.windows(2) {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            let len = x2 - x1;
            let slope = (y2 - y1) / rat_int(len as i128);
            segments.push((slope, len));
        }
        Ok(NewtonPolygon {
            points,
            vertices: hull,
            segments,
        })
    }

    /// The multiset of valuations of the nonzero roots: negated slopes with
    /// their horizontal lengths as multiplicities.
    pub fn root_valuations(&self) -> Vec<(Rat, usize)> {
        self.segments.iter().map(|(s, l)| (-s, *l)).collect()
    }

    /// Largest root valuation, when a segment exists.
    pub fn max_root_valuation(&self) -> Option<Rat> {
        self.segments.first().map(|(s, _)| -s)
    }

    /// JSON view with exact rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "points": self.points.iter()
                .map(|(i, v)| serde_json::json!([i, fmt_rat(v)]))
                .collect::<Vec<_>>(),
            "vertices": self.vertices.iter()
                .map(|(i, v)| serde_json::json!([i, fmt_rat(v)]))
                .collect::<Vec<_>>(),
            "segments": self.segments.iter()
                .map(|(s, l)| serde_json::json!({"slope": fmt_rat(s), "length": l}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Root-valuation data of a polynomial with respect to a coefficient
/// valuation: polygon of the nonzero part plus the multiplicity of the zero
/// root stripped off the bottom.
pub struct RootValuations {
    pub zero_root_multiplicity: usize,
    pub polygon: Option<NewtonPolygon>,
}

impl RootValuations {
    /// Largest valuation among all roots; `GroupValue::Infinity` when the
    /// zero root is present.
    pub fn max(&self) -> Option<GroupValue> {
        if self.zero_root_multiplicity > 0 {
            return Some(GroupValue::Infinity);
        }
        self.polygon
            .as_ref()
            .and_then(|p| p.max_root_valuation())
            .map(GroupValue::from_rat)
    }

    pub fn multiset(&self) -> Vec<(GroupValue, usize)> {
        let mut out = Vec::new();
        if self.zero_root_multiplicity > 0 {
            out.push((GroupValue::Infinity, self.zero_root_multiplicity));
        }
        if let Some(p) = &self.polygon {
            for (v, m) in p.root_valuations() {
                out.push((GroupValue::from_rat(v), m));
            }
        }
        out
    }
}

/// Computes root valuations of a non-constant `g` given a valuation of its
/// coefficients.
pub fn root_valuations_of<F: Coeff>(
    g: &Poly<F>,
    value: impl Fn(&F) -> GroupValue,
) -> Result<RootValuations> {
    if g.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let coeffs = g.coeffs();
    let zero_mult = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("non-constant polynomial has a nonzero coefficient");
    let rest = &coeffs[zero_mult..];
    let polygon = if rest.len() >= 2 {
        let vals: Vec<(usize, GroupValue)> = rest
            .iter()
            .enumerate()
            .map(|(i, c)| (i, value(c)))
            .collect();
        Some(NewtonPolygon::from_values(&vals)?)
    } else {
        None
    };
    Ok(RootValuations {
        zero_root_multiplicity: zero_mult,
        polygon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, vp};

    fn pts(v: &[(usize, i128, i128)]) -> Vec<(usize, GroupValue)> {
        v.iter()
            .map(|&(i, n, d)| (i, GroupValue::from_rat(rat(n, d))))
            .collect()
    }

    #[test]
    fn single_slope_example() {
        // g = t^2 - 2 over v_2: points (0,1),(2,0) -> slope -1/2, length 2
        let p = NewtonPolygon::from_values(&pts(&[(0, 1, 1), (2, 0, 1)])).unwrap();
        assert_eq!(p.segments, vec![(rat(-1, 2), 2)]);
        assert_eq!(p.root_valuations(), vec![(rat(1, 2), 2)]);
    }

    #[test]
    fn hull_drops_interior_point() {
        // g = x^2 + 2x + 4 over v_2: (0,2),(1,1),(2,0): the middle point sits
        // on the chord, one segment of slope -1 and length 2.
        let p = NewtonPolygon::from_values(&pts(&[(0, 2, 1), (1, 1, 1), (2, 0, 1)])).unwrap();
        assert_eq!(p.segments, vec![(rat(-1, 1), 2)]);
        assert_eq!(p.root_valuations(), vec![(rat(1, 1), 2)]);
    }

    #[test]
    fn two_segments() {
        // (0,1),(1,0),(2,0): slopes -1 then 0
        let p = NewtonPolygon::from_values(&pts(&[(0, 1, 1), (1, 0, 1), (2, 0, 1)])).unwrap();
        assert_eq!(p.segments, vec![(rat(-1, 1), 1), (rat(0, 1), 1)]);
        let slopes: Vec<Rat> = p.segments.iter().map(|(s, _)| *s).collect();
        assert!(slopes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn infinite_points_are_skipped() {
        let mut v = pts(&[(1, 1, 1), (2, 0, 1)]);
        v.push((0, GroupValue::Infinity));
        let p = NewtonPolygon::from_values(&v).unwrap();
        assert_eq!(p.segments, vec![(rat(-1, 1), 1)]);
        assert!(matches!(
            NewtonPolygon::from_values(&[(0, GroupValue::Infinity)]),
            Err(Error::AllValuesInfinite)
        ));
    }

    #[test]
    fn rejects_infinitesimal_values() {
        let v = vec![(0usize, GroupValue::finite(rat(1, 1), rat(1, 1)))];
        assert!(matches!(
            NewtonPolygon::from_values(&v),
            Err(Error::InfinitesimalSlopeInput(_))
        ));
    }

    #[test]
    fn conservation_across_segments() {
        // sum over segments of (-slope * length) = v(first) - v(last)
        let v = pts(&[(0, 5, 1), (1, 1, 1), (3, 0, 1), (4, 2, 1)]);
        let p = NewtonPolygon::from_values(&v).unwrap();
        let total: Rat = p
            .segments
            .iter()
            .map(|(s, l)| -s * rat_int(*l as i128))
            .sum();
        let first = p.vertices.first().unwrap().1;
        let last = p.vertices.last().unwrap().1;
        assert_eq!(total, first - last);
    }

    #[test]
    fn poly_root_valuations_strip_zero_roots() {
        // g = x^3 + 2x over v_2 = x(x^2 + 2): zero root once, then +-sqrt(-2)
        let g = Poly::from_ints(&[0, 2, 0, 1]);
        let rv = root_valuations_of(&g, |c| match vp(c, 2) {
            Some(k) => GroupValue::from_rat(rat_int(k as i128)),
            None => GroupValue::Infinity,
        })
        .unwrap();
        assert_eq!(rv.zero_root_multiplicity, 1);
        assert_eq!(rv.max(), Some(GroupValue::Infinity));
        let ms = rv.multiset();
        assert_eq!(ms[0], (GroupValue::Infinity, 1));
        assert_eq!(ms[1], (GroupValue::from_rat(rat(1, 2)), 2));

        // monic linear x - 6: root valuation {v(6)} = {1}
        let g = Poly::from_ints(&[-6, 1]);
        let rv = root_valuations_of(&g, |c| match vp(c, 2) {
            Some(k) => GroupValue::from_rat(rat_int(k as i128)),
            None => GroupValue::Infinity,
        })
        .unwrap();
        assert_eq!(
            rv.multiset(),
            vec![(GroupValue::from_rat(rat(1, 1)), 1)]
        );
    }
}

//! Regular closed subsets of the rational line that are finite unions of
//! closed intervals, with overlap contact and the ideal of bounded regions.
//!
//! Endpoints are exact rationals or ±∞. A region is kept in normal form:
//! intervals sorted, nondegenerate, pairwise disjoint and non-touching.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Endpoint {
    pub fn int(v: i64) -> Self {
        Endpoint::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Endpoint::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Endpoint::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Endpoint::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("+inf"),
            Endpoint::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for Endpoint {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "-inf" => Ok(Endpoint::NegInf),
            "inf" | "+inf" => Ok(Endpoint::PosInf),
            t => {
                let r = BigRational::from_str(t).map_err(|_| format!("`{t}` is not a rational"))?;
                Ok(Endpoint::Finite(r))
            }
        }
    }
}

/// A closed interval `[lo, hi]` with `lo < hi` (open at infinite ends).
pub type Interval = (Endpoint, Endpoint);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RegionRepr", into = "RegionRepr")]
pub struct RationalRegion {
    intervals: Vec<Interval>,
}

#[derive(Serialize, Deserialize)]
struct RegionRepr {
    intervals: Vec<[String; 2]>,
}

impl From<RationalRegion> for RegionRepr {
    fn from(r: RationalRegion) -> Self {
        RegionRepr {
            intervals: r
                .intervals
                .into_iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
        }
    }
}

impl TryFrom<RegionRepr> for RationalRegion {
    type Error = String;

    fn try_from(r: RegionRepr) -> std::result::Result<Self, String> {
        let intervals = r
            .intervals
            .iter()
            .map(|[a, b]| Ok((a.parse()?, b.parse()?)))
            .collect::<std::result::Result<Vec<Interval>, String>>()?;
        RationalRegion::from_intervals(intervals).map_err(|e| e.to_string())
    }
}

fn check_interval(iv: &Interval) -> Result<()> {
    let (a, b) = iv;
    if a == &Endpoint::PosInf || b == &Endpoint::NegInf || a >= b {
        return Err(Error::Malformed(format!("[{a},{b}] is not a nondegenerate interval")));
    }
    Ok(())
}

/// Sorts and merges overlapping or touching intervals.
fn normalize(mut ivs: Vec<Interval>) -> Vec<Interval> {
    ivs.sort();
    let mut out: Vec<Interval> = Vec::with_capacity(ivs.len());
    for (a, b) in ivs {
        match out.last_mut() {
            Some((_, hi)) if a <= *hi => {
                if b > *hi {
                    *hi = b;
                }
            }
            _ => out.push((a, b)),
        }
    }
    out
}

impl RationalRegion {
    pub fn empty() -> Self {
        RationalRegion::default()
    }

    pub fn whole() -> Self {
        RationalRegion {
            intervals: vec![(Endpoint::NegInf, Endpoint::PosInf)],
        }
    }

    pub fn interval(a: Endpoint, b: Endpoint) -> Result<Self> {
        Self::from_intervals(vec![(a, b)])
    }

    /// Validates each interval and merges the list into normal form.
    pub fn from_intervals(intervals: Vec<Interval>) -> Result<Self> {
        for iv in &intervals {
            check_interval(iv)?;
        }
        Ok(RationalRegion {
            intervals: normalize(intervals),
        })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        RationalRegion {
            intervals: normalize(all),
        }
    }

    /// `cl(int(F ∩ G))`: pairwise intersections, degenerate pieces dropped.
    pub fn meet(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (a, b) in &self.intervals {
            for (c, d) in &other.intervals {
                let lo = a.max(c);
                let hi = b.min(d);
                if lo < hi {
                    out.push((lo.clone(), hi.clone()));
                }
            }
        }
        RationalRegion {
            intervals: normalize(out),
        }
    }

    /// Closure of the set complement.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut prev = Endpoint::NegInf;
        for (a, b) in &self.intervals {
            if prev < *a {
                out.push((prev, a.clone()));
            }
            prev = b.clone();
        }
        if prev < Endpoint::PosInf {
            out.push((prev, Endpoint::PosInf));
        }
        RationalRegion { intervals: out }
    }

    /// Containment.
    pub fn le(&self, other: &Self) -> bool {
        self.intervals
            .iter()
            .all(|(a, b)| other.intervals.iter().any(|(c, d)| c <= a && b <= d))
    }

    /// Nonempty intersection; shared endpoints count.
    pub fn contact(&self, other: &Self) -> bool {
        self.contact_point(other).is_some()
    }

    /// Some point of `F ∩ G`, if any.
    pub fn contact_point(&self, other: &Self) -> Option<BigRational> {
        for (a, b) in &self.intervals {
            for (c, d) in &other.intervals {
                let lo = a.max(c);
                let hi = b.min(d);
                if lo <= hi {
                    return Some(match (lo, hi) {
                        (Endpoint::Finite(x), _) | (_, Endpoint::Finite(x)) => x.clone(),
                        _ => BigRational::zero(),
                    });
                }
            }
        }
        None
    }

    /// `F ⊆ int(G)`: each interval of `F` sits strictly inside one of `G`.
    pub fn way_below(&self, other: &Self) -> bool {
        self.intervals
            .iter()
            .all(|iv| other.enclosing(iv).is_some())
    }

    /// The interval of `self` whose interior contains `[a, b]`.
    fn enclosing(&self, (a, b): &Interval) -> Option<&Interval> {
        self.intervals.iter().find(|(c, d)| {
            let lower = *c == Endpoint::NegInf || c < a;
            let upper = *d == Endpoint::PosInf || b < d;
            lower && upper
        })
    }

    /// No infinite endpoints.
    pub fn is_bounded(&self) -> bool {
        self.intervals.iter().all(|(a, b)| a.is_finite() && b.is_finite())
    }

    /// `F C_ρ G`: contact, or both unbounded.
    pub fn alexandroff_contact(&self, other: &Self) -> bool {
        self.contact(other) || (!self.is_bounded() && !other.is_bounded())
    }

    pub fn alexandroff_way_below(&self, other: &Self) -> bool {
        !self.alexandroff_contact(&other.complement())
    }
}

/// A bounded `H` with `F ≪ H ≪ G`: each interval of `F` widened by half its
/// margin to the enclosing interval of `G` (by 1 towards an infinite end).
pub fn interpolate(f: &RationalRegion, g: &RationalRegion) -> Result<RationalRegion> {
    if !f.is_bounded() {
        return Err(Error::Precondition("interpolation needs a bounded region".into()));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = Vec::with_capacity(f.intervals.len());
    for iv in &f.intervals {
        let (c, d) = g
            .enclosing(iv)
            .ok_or_else(|| Error::Precondition("F is not way below G".into()))?;
        let (a, b) = (iv.0.finite().expect("bounded"), iv.1.finite().expect("bounded"));
        let lo = match c {
            Endpoint::Finite(c) => a - (a - c) / &two,
            _ => a - BigRational::one(),
        };
        let hi = match d {
            Endpoint::Finite(d) => b + (d - b) / &two,
            _ => b + BigRational::one(),
        };
        out.push((Endpoint::Finite(lo), Endpoint::Finite(hi)));
    }
    Ok(RationalRegion {
        intervals: normalize(out),
    })
}

/// `cl(f⁻¹(int F))` for `f(x) = αx + β`, which is just `f⁻¹(F)`.
pub fn affine_dual(alpha: &BigRational, beta: &BigRational, f: &RationalRegion) -> Result<RationalRegion> {
    if alpha.is_zero() {
        return Err(Error::Precondition("a constant map of the line is not perfect".into()));
    }
    let inv = |e: &Endpoint| match e {
        Endpoint::Finite(x) => Endpoint::Finite((x - beta) / alpha),
        Endpoint::NegInf if alpha.is_negative() => Endpoint::PosInf,
        Endpoint::PosInf if alpha.is_negative() => Endpoint::NegInf,
        other => other.clone(),
    };
    let out = f
        .intervals
        .iter()
        .map(|(a, b)| {
            let (x, y) = (inv(a), inv(b));
            if alpha.is_negative() { (y, x) } else { (x, y) }
        })
        .collect();
    Ok(RationalRegion {
        intervals: normalize(out),
    })
}

/// A bounded `C` with `F ρ (C ∧ G)` whenever `F ρ G`: the interval of radius
/// one around a contact point.
pub fn bc2_witness(f: &RationalRegion, g: &RationalRegion) -> Option<RationalRegion> {
    let x = f.contact_point(g)?;
    let one = BigRational::one();
    Some(RationalRegion {
        intervals: vec![(Endpoint::Finite(&x - &one), Endpoint::Finite(&x + &one))],
    })
}

/// A bounded nonempty `H ≪ F` for nonempty `F`.
pub fn bc3_witness(f: &RationalRegion) -> Option<RationalRegion> {
    let (a, b) = f.intervals.first()?;
    let one = BigRational::one();
    let four = BigRational::from_integer(BigInt::from(4));
    let (lo, hi) = match (a, b) {
        (Endpoint::Finite(a), Endpoint::Finite(b)) => {
            let q = (b - a) / &four;
            (a + &q, b - &q)
        }
        (Endpoint::Finite(a), _) => (a + &one, a + &one + &one),
        (_, Endpoint::Finite(b)) => (b - &one - &one, b - &one),
        _ => (BigRational::zero(), one),
    };
    Some(RationalRegion {
        intervals: vec![(Endpoint::Finite(lo), Endpoint::Finite(hi))],
    })
}

impl fmt::Display for RationalRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("empty");
        }
        for (i, (a, b)) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "[{a},{b}]")?;
        }
        Ok(())
    }
}

impl FromStr for RationalRegion {
    type Err = Error;

    /// Parses `"[-inf,0] u [1/2,3/4]"` or `"empty"`; errors carry the column.
    fn from_str(s: &str) -> Result<Self> {
        let syntax = |col: usize, msg: String| Error::Syntax { line: 1, col, msg };
        let trimmed = s.trim();
        if trimmed == "empty" {
            return Ok(RationalRegion::empty());
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut intervals = Vec::new();
        loop {
            skip_ws(&mut pos);
            if bytes.get(pos) != Some(&b'[') {
                return Err(syntax(pos + 1, "expected `[`".into()));
            }
            let start = pos;
            let close = s[pos..]
                .find(']')
                .map(|i| pos + i)
                .ok_or_else(|| syntax(start + 1, "unclosed interval".into()))?;
            let body = &s[pos + 1..close];
            let comma = body
                .find(',')
                .ok_or_else(|| syntax(start + 2, "expected `lo,hi`".into()))?;
            let lo: Endpoint = body[..comma].parse().map_err(|m| syntax(start + 2, m))?;
            let hi: Endpoint = body[comma + 1..]
                .parse()
                .map_err(|m| syntax(start + comma + 3, m))?;
            let iv = (lo, hi);
            check_interval(&iv).map_err(|e| syntax(start + 1, e.to_string()))?;
            intervals.push(iv);
            pos = close + 1;
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'u' {
                return Err(syntax(pos + 1, "expected `u` between intervals".into()));
            }
            pos += 1;
        }
        RationalRegion::from_intervals(intervals)
    }
}

//! Points and finite unions of half-open arcs on the circle ℝ/ℤ.
//!
//! Every point has the form p + q·α mod 1 with p ∈ ℚ, q ∈ ℤ. Constructors
//! canonicalize so that the stored value already lies in [0, 1); because α
//! is irrational the canonical pair is unique, which makes equality a plain
//! structural check. Ordering is decided by a certified double-precision
//! filter backed by exact convergent enclosures when the float gap is too
//! small to trust.
//!
//! A [`CircleSet`] is kept in canonical form: arcs sorted by start point,
//! pairwise disjoint, never adjacent (touching arcs are fused on
//! construction). At most the last arc wraps through 0. The full circle is
//! the one distinguished arc whose start equals its end. Boolean operations
//! share one sweep over the combined arc boundaries: membership of each
//! operand is constant between consecutive boundaries, so sampling the left
//! endpoint of every elementary arc determines the result exactly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::exact::AlphaNum;

/// A point of ℝ/ℤ, stored as the unique p + q·α ∈ [0, 1).
#[derive(Clone, Debug)]
pub struct CirclePoint {
    p: BigRational,
    q: i64,
    approx: f64,
}

impl PartialEq for CirclePoint {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.p == other.p
    }
}

impl Eq for CirclePoint {}

impl CirclePoint {
    /// Canonicalizes p + q·α into [0, 1).
    pub fn new(p: BigRational, q: i64, alpha: &Alpha) -> Result<Self> {
        let k = alpha.floor_linear(&p, q)?;
        let p = p - BigRational::from_integer(k);
        let approx = Self::approx_of(&p, q, alpha);
        Ok(CirclePoint { p, q, approx })
    }

    fn approx_of(p: &BigRational, q: i64, alpha: &Alpha) -> f64 {
        p.to_f64().unwrap_or(f64::NAN) + (q as f64) * alpha.approx()
    }

    pub fn zero() -> Self {
        CirclePoint {
            p: BigRational::zero(),
            q: 0,
            approx: 0.0,
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        let p = &r - r.floor();
        let approx = p.to_f64().unwrap_or(f64::NAN);
        CirclePoint { p, q: 0, approx }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// k·α mod 1.
    pub fn alpha_multiple(k: i64, alpha: &Alpha) -> Result<Self> {
        Self::new(BigRational::zero(), k, alpha)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.p
    }

    pub fn alpha_coeff(&self) -> i64 {
        self.q
    }

    /// Double-precision estimate of the canonical value, off by at most
    /// (|q| + 2)·2⁻⁵⁰.
    pub fn approx(&self) -> f64 {
        self.approx
    }

    /// The canonical value as an exact scalar in [0, 1).
    pub fn value(&self) -> AlphaNum {
        AlphaNum::new(
            self.p.clone(),
            BigRational::from_integer(BigInt::from(self.q)),
        )
    }

    pub fn add(&self, other: &CirclePoint, alpha: &Alpha) -> Result<CirclePoint> {
        let q = self.q.checked_add(other.q).ok_or_else(|| {
            Error::InvalidParameter("α-coefficient overflow in point addition".into())
        })?;
        Self::new(&self.p + &other.p, q, alpha)
    }

    pub fn negated(&self, alpha: &Alpha) -> Result<CirclePoint> {
        let q = self
            .q
            .checked_neg()
            .ok_or_else(|| Error::InvalidParameter("α-coefficient overflow in negation".into()))?;
        Self::new(-&self.p, q, alpha)
    }

    /// Exact cyclic-representative order in [0, 1). Equal only when the
    /// canonical pairs coincide. The float filter is certified: it decides
    /// only when the observed gap exceeds the worst-case approximation
    /// error of both operands.
    pub fn cmp_in(&self, other: &CirclePoint, alpha: &Alpha) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        let d = self.approx - other.approx;
        let tol = ((self.q.unsigned_abs().saturating_add(other.q.unsigned_abs())) as f64 + 8.0)
            * 2f64.powi(-48);
        if d.is_finite() && d.abs() > tol {
            return Ok(if d > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            });
        }
        let r = &self.p - &other.p;
        let s = BigRational::from_integer(BigInt::from(self.q as i128 - other.q as i128));
        let ord = alpha.sign_linear(&r, &s)?;
        debug_assert_ne!(ord, Ordering::Equal, "distinct canonical pairs, equal value");
        Ok(ord)
    }

    /// Parses the endpoint grammar `<rational>` | `<rational>±<int>a` |
    /// `<int>a`, e.g. `1/100+3a`, `3/4`, `-2a`.
    pub fn parse(input: &str, alpha: &Alpha) -> Result<CirclePoint> {
        let (p, q) = Self::parse_parts(input)?;
        Self::new(p, q, alpha)
    }

    pub fn parse_parts(input: &str) -> Result<(BigRational, i64)> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.replace("*a", "a");
        if s.is_empty() {
            return Err(Error::InvalidParameter("empty point expression".into()));
        }
        let Some(body) = s.strip_suffix('a') else {
            return Ok((parse_rational(&s)?, 0));
        };
        // the α coefficient is the trailing signed integer; a sign splits
        // the rational head from it only when a digit precedes the sign
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit() {
                split = Some(i);
                break;
            }
        }
        let (head, coeff) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let q: i64 = match coeff {
            "" | "+" => 1,
            "-" => -1,
            _ => coeff.parse().map_err(|_| {
                Error::InvalidParameter(format!("bad α coefficient {coeff:?} in {input:?}"))
            })?,
        };
        let p = if head.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(head)?
        };
        Ok((p, q))
    }
}

/// Parses `p`, `-p`, or `p/q` with integer parts; rejects decimals and zero
/// denominators.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |_| Error::InvalidParameter(format!("bad rational {s:?} (use p or p/q)"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(bad)?)),
        Some((num, den)) => {
            let n = BigInt::from_str(num).map_err(bad)?;
            let d = BigInt::from_str(den).map_err(bad)?;
            if d.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "zero denominator in {s:?}"
                )));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q) {
            (true, 0) => f.write_str("0"),
            (true, q) => write!(f, "{q}a"),
            (false, 0) => write!(f, "{}", self.p),
            (false, q) if q > 0 => write!(f, "{}+{}a", self.p, q),
            (false, q) => write!(f, "{}{}a", self.p, q),
        }
    }
}

/// Half-open arc [start, end), possibly wrapping through 0. The single arc
/// with start == end denotes the full circle and is only built internally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    start: CirclePoint,
    end: CirclePoint,
}

impl Arc {
    pub fn new(start: CirclePoint, end: CirclePoint) -> Result<Arc> {
        if start == end {
            return Err(Error::InvalidParameter(
                "arc endpoints coincide; an empty arc is not representable and the full circle is CircleSet::full()".into(),
            ));
        }
        Ok(Arc { start, end })
    }

    fn full() -> Arc {
        Arc {
            start: CirclePoint::zero(),
            end: CirclePoint::zero(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.start == self.end
    }

    pub fn start(&self) -> &CirclePoint {
        &self.start
    }

    pub fn end(&self) -> &CirclePoint {
        &self.end
    }

    pub fn length(&self, alpha: &Alpha) -> Result<AlphaNum> {
        if self.is_full() {
            return Ok(AlphaNum::one());
        }
        let d = &self.end.value() - &self.start.value();
        match d.sign(alpha)? {
            Ordering::Greater => Ok(d),
            Ordering::Less => Ok(&d + &AlphaNum::one()),
            Ordering::Equal => unreachable!("distinct endpoints with equal value"),
        }
    }

    pub fn contains_point(&self, x: &CirclePoint, alpha: &Alpha) -> Result<bool> {
        if self.is_full() {
            return Ok(true);
        }
        let wraps = self.end.cmp_in(&self.start, alpha)? == Ordering::Less;
        let ge_start = self.start.cmp_in(x, alpha)? != Ordering::Greater;
        if wraps {
            if ge_start {
                return Ok(true);
            }
            Ok(x.cmp_in(&self.end, alpha)? == Ordering::Less)
        } else {
            if !ge_start {
                return Ok(false);
            }
            Ok(x.cmp_in(&self.end, alpha)? == Ordering::Less)
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            f.write_str("[0,1)")
        } else {
            write!(f, "[{},{})", self.start, self.end)
        }
    }
}

/// A finite union of half-open arcs in canonical form.
///
/// Canonical form makes set equality equal representation equality, which
/// the derived `PartialEq` relies on.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CircleSet {
    arcs: Vec<Arc>,
}

impl CircleSet {
    pub fn empty() -> Self {
        CircleSet { arcs: Vec::new() }
    }

    pub fn full() -> Self {
        CircleSet {
            arcs: vec![Arc::full()],
        }
    }

    pub fn from_arc(arc: Arc) -> Self {
        if arc.is_full() {
            Self::full()
        } else {
            CircleSet { arcs: vec![arc] }
        }
    }

    /// Builds from arbitrary (possibly overlapping) arcs by folding unions.
    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>, alpha: &Alpha) -> Result<Self> {
        let mut acc = CircleSet::empty();
        for arc in arcs {
            acc = acc.union(&CircleSet::from_arc(arc), alpha)?;
        }
        Ok(acc)
    }

    /// Fast path for arcs already known pairwise disjoint: sort, fuse
    /// touching neighbours, detect the full circle.
    pub(crate) fn from_disjoint_arcs(mut arcs: Vec<Arc>, alpha: &Alpha) -> Result<Self> {
        if arcs.iter().any(Arc::is_full) {
            debug_assert_eq!(arcs.len(), 1);
            return Ok(CircleSet::full());
        }
        if arcs.is_empty() {
            return Ok(CircleSet::empty());
        }
        sort_by_key_point(&mut arcs, alpha, |arc: &Arc| arc.start.clone())?;
        let mut merged: Vec<Arc> = Vec::with_capacity(arcs.len());
        for arc in arcs {
            if let Some(last) = merged.last_mut() {
                if last.end == arc.start {
                    last.end = arc.end;
                    continue;
                }
            }
            merged.push(arc);
        }
        if merged.len() >= 2 && merged.last().expect("nonempty").end == merged[0].start {
            let first = merged.remove(0);
            merged.last_mut().expect("nonempty").end = first.end;
        }
        if merged.len() == 1 && merged[0].start == merged[0].end {
            return Ok(CircleSet::full());
        }
        Ok(CircleSet { arcs: merged })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].is_full()
    }

    pub fn contains(&self, x: &CirclePoint, alpha: &Alpha) -> Result<bool> {
        if self.arcs.is_empty() {
            return Ok(false);
        }
        if self.is_full() {
            return Ok(true);
        }
        let mut err: Option<Error> = None;
        let idx = self.arcs.partition_point(|arc| {
            if err.is_some() {
                return false;
            }
            match arc.start.cmp_in(x, alpha) {
                Ok(o) => o != Ordering::Greater,
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        // the only arc that can contain x is the one with the greatest
        // start ≤ x, or the wrapping last arc when every start exceeds x
        let candidate = if idx > 0 {
            &self.arcs[idx - 1]
        } else {
            self.arcs.last().expect("nonempty")
        };
        candidate.contains_point(x, alpha)
    }

    pub fn measure(&self, alpha: &Alpha) -> Result<AlphaNum> {
        let mut total = AlphaNum::zero();
        for arc in &self.arcs {
            total = &total + &arc.length(alpha)?;
        }
        Ok(total)
    }

    pub fn translate(&self, delta: &CirclePoint, alpha: &Alpha) -> Result<CircleSet> {
        if self.arcs.is_empty() || self.is_full() {
            return Ok(self.clone());
        }
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for arc in &self.arcs {
            arcs.push(Arc {
                start: arc.start.add(delta, alpha)?,
                end: arc.end.add(delta, alpha)?,
            });
        }
        sort_by_key_point(&mut arcs, alpha, |arc: &Arc| arc.start.clone())?;
        Ok(CircleSet { arcs })
    }

    pub fn union(&self, other: &CircleSet, alpha: &Alpha) -> Result<CircleSet> {
        self.combine(other, alpha, |a, b| a || b)
    }

    pub fn intersect(&self, other: &CircleSet, alpha: &Alpha) -> Result<CircleSet> {
        self.combine(other, alpha, |a, b| a && b)
    }

    pub fn difference(&self, other: &CircleSet, alpha: &Alpha) -> Result<CircleSet> {
        self.combine(other, alpha, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &CircleSet, alpha: &Alpha) -> Result<CircleSet> {
        self.combine(other, alpha, |a, b| a != b)
    }

    pub fn complement(&self, alpha: &Alpha) -> Result<CircleSet> {
        self.combine(&CircleSet::empty(), alpha, |a, _| !a)
    }

    /// One sweep serves every boolean operation. Boundaries of both
    /// operands cut the circle into elementary arcs on which membership in
    /// each operand is constant; evaluating `op` at each left endpoint and
    /// merging kept runs (including across the 0 seam) yields the canonical
    /// result.
    fn combine(
        &self,
        other: &CircleSet,
        alpha: &Alpha,
        op: impl Fn(bool, bool) -> bool,
    ) -> Result<CircleSet> {
        let mut pts: Vec<CirclePoint> = Vec::new();
        for arc in self.arcs.iter().chain(other.arcs.iter()) {
            if arc.is_full() {
                continue;
            }
            pts.push(arc.start.clone());
            pts.push(arc.end.clone());
        }
        sort_points(&mut pts, alpha)?;
        pts.dedup();
        if pts.is_empty() {
            return Ok(if op(self.is_full(), other.is_full()) {
                CircleSet::full()
            } else {
                CircleSet::empty()
            });
        }
        let m = pts.len();
        debug_assert!(m >= 2, "a non-full arc contributes two distinct boundaries");
        let mut keep = Vec::with_capacity(m);
        for pt in &pts {
            keep.push(op(self.contains(pt, alpha)?, other.contains(pt, alpha)?));
        }
        if keep.iter().all(|&b| b) {
            return Ok(CircleSet::full());
        }
        if !keep.iter().any(|&b| b) {
            return Ok(CircleSet::empty());
        }
        let mut arcs: Vec<Arc> = Vec::new();
        let mut i = 0;
        while i < m {
            if !keep[i] {
                i += 1;
                continue;
            }
            let mut j = i;
            while j < m && keep[j] {
                j += 1;
            }
            arcs.push(Arc {
                start: pts[i].clone(),
                end: pts[j % m].clone(),
            });
            i = j;
        }
        if keep[m - 1] && keep[0] {
            // the run through the 0 seam was emitted as two pieces; fuse
            let first = arcs.remove(0);
            arcs.last_mut().expect("seam run exists").end = first.end;
        }
        Ok(CircleSet { arcs })
    }
}

impl fmt::Display for CircleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arcs.is_empty() {
            return f.write_str("{}");
        }
        f.write_str("{")?;
        for (i, arc) in self.arcs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{arc}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn sort_points(pts: &mut [CirclePoint], alpha: &Alpha) -> Result<()> {
    let mut err: Option<Error> = None;
    pts.sort_by(|a, b| {
        if err.is_some() {
            return Ordering::Equal;
        }
        match a.cmp_in(b, alpha) {
            Ok(o) => o,
            Err(e) => {
                err = Some(e);
                Ordering::Equal
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn sort_by_key_point<T>(
    items: &mut [T],
    alpha: &Alpha,
    key: impl Fn(&T) -> CirclePoint,
) -> Result<()> {
    let mut err: Option<Error> = None;
    items.sort_by(|a, b| {
        if err.is_some() {
            return Ordering::Equal;
        }
        match key(a).cmp_in(&key(b), alpha) {
            Ok(o) => o,
            Err(e) => {
                err = Some(e);
                Ordering::Equal
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

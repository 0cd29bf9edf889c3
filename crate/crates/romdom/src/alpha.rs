//! The rotation constant α and exact decision procedures against it.
//!
//! α is specified by its continued fraction expansion, which keeps it exactly
//! representable and certifiably irrational. Consecutive convergents p_n/q_n
//! bracket α with `|α − p_n/q_n| < 1/(q_n q_{n+1})`, so any desired enclosure
//! width is reached by extending the expansion. All order decisions against
//! rationals go through such enclosures: start at the configured precision
//! and double the width target until the enclosure separates the operands,
//! giving up with [`Error::PrecisionExhausted`] past the hard ceiling.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Starting enclosure width target, in bits, for exact comparisons.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// Hard ceiling for the comparison ladder.
pub const MAX_PRECISION_BITS: u32 = 16384;

const MIN_PRECISION_BITS: u32 = 32;

/// How α is specified. Every representable value lies in (0, 1) and is
/// irrational: a finite term list is continued by repeating its last term
/// forever, which always yields a quadratic irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaKind {
    /// (√5 − 1)/2 = [0; 1, 1, 1, …]
    Golden,
    /// √2 − 1 = [0; 2, 2, 2, …]
    Sqrt2M1,
    /// Explicit terms `[a0; a1, …, ak]` with a0 = 0 and a_i ≥ 1; the last
    /// term repeats forever.
    ContinuedFraction(Vec<u64>),
}

impl AlphaKind {
    fn term(&self, i: usize) -> u64 {
        match self {
            AlphaKind::Golden => {
                if i == 0 {
                    0
                } else {
                    1
                }
            }
            AlphaKind::Sqrt2M1 => {
                if i == 0 {
                    0
                } else {
                    2
                }
            }
            AlphaKind::ContinuedFraction(terms) => {
                *terms.get(i).unwrap_or_else(|| terms.last().expect("nonempty"))
            }
        }
    }

    fn name(&self) -> String {
        match self {
            AlphaKind::Golden => "golden".into(),
            AlphaKind::Sqrt2M1 => "sqrt2m1".into(),
            AlphaKind::ContinuedFraction(terms) => {
                let body: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                format!("cf:{}", body.join(","))
            }
        }
    }
}

struct ConvergentTable {
    h: Vec<BigInt>,
    k: Vec<BigInt>,
}

impl ConvergentTable {
    fn seeded(kind: &AlphaKind) -> Self {
        let a0 = BigInt::from(kind.term(0));
        let a1 = BigInt::from(kind.term(1));
        // c0 = a0/1, c1 = (a1·a0 + 1)/a1
        let h = vec![a0.clone(), &a1 * &a0 + BigInt::one()];
        let k = vec![BigInt::one(), a1];
        ConvergentTable { h, k }
    }

    fn extend(&mut self, term: u64) {
        let n = self.h.len();
        let a = BigInt::from(term);
        self.h.push(&a * &self.h[n - 1] + &self.h[n - 2]);
        self.k.push(&a * &self.k[n - 1] + &self.k[n - 2]);
    }

    fn ratio(&self, i: usize) -> BigRational {
        BigRational::new(self.h[i].clone(), self.k[i].clone())
    }

    fn tail_product_exceeds(&self, threshold: &BigInt) -> bool {
        let n = self.k.len();
        &self.k[n - 1] * &self.k[n - 2] > *threshold
    }
}

/// An exactly represented irrational rotation constant in (0, 1).
///
/// Cloning is cheap; clones share the growing convergent table.
#[derive(Clone)]
pub struct Alpha {
    kind: AlphaKind,
    precision_bits: u32,
    approx: f64,
    table: Arc<RwLock<ConvergentTable>>,
}

impl PartialEq for Alpha {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Alpha {}

impl fmt::Debug for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alpha")
            .field("kind", &self.kind)
            .field("approx", &self.approx)
            .finish()
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind.name())
    }
}

impl Alpha {
    pub fn new(kind: AlphaKind) -> Result<Self> {
        Self::with_precision(kind, DEFAULT_PRECISION_BITS)
    }

    pub fn with_precision(kind: AlphaKind, precision_bits: u32) -> Result<Self> {
        if !(MIN_PRECISION_BITS..=MAX_PRECISION_BITS).contains(&precision_bits) {
            return Err(Error::InvalidParameter(format!(
                "precision must lie in [{MIN_PRECISION_BITS}, {MAX_PRECISION_BITS}] bits, got {precision_bits}"
            )));
        }
        if let AlphaKind::ContinuedFraction(terms) = &kind {
            if terms.len() < 2 {
                return Err(Error::InvalidParameter(
                    "continued fraction needs at least [0; a1]".into(),
                ));
            }
            if terms[0] != 0 {
                return Err(Error::InvalidParameter(format!(
                    "continued fraction must start with 0 (α ∈ (0,1)), got a0 = {}",
                    terms[0]
                )));
            }
            if let Some(pos) = terms[1..].iter().position(|&t| t == 0) {
                return Err(Error::InvalidParameter(format!(
                    "continued fraction term a{} must be ≥ 1",
                    pos + 1
                )));
            }
        }
        Ok(Self::from_valid(kind, precision_bits))
    }

    fn from_valid(kind: AlphaKind, precision_bits: u32) -> Self {
        let mut table = ConvergentTable::seeded(&kind);
        let threshold = BigInt::one() << 60u32;
        while !table.tail_product_exceeds(&threshold) {
            let i = table.h.len();
            table.extend(kind.term(i));
        }
        let n = table.h.len() - 1;
        let mid = (table.ratio(n) + table.ratio(n - 1)) / BigRational::from_integer(2.into());
        let approx = mid.to_f64().unwrap_or(f64::NAN);
        Alpha {
            kind,
            precision_bits,
            approx,
            table: Arc::new(RwLock::new(table)),
        }
    }

    pub fn golden() -> Self {
        Self::from_valid(AlphaKind::Golden, DEFAULT_PRECISION_BITS)
    }

    pub fn sqrt2m1() -> Self {
        Self::from_valid(AlphaKind::Sqrt2M1, DEFAULT_PRECISION_BITS)
    }

    /// Parses `golden`, `sqrt2m1`, or `cf:0,a1,a2,…`. Decimal literals are
    /// rejected: a decimal is a rational, and a rational rotation constant
    /// does not define the graphs this crate works with.
    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim();
        match s {
            "golden" => return Ok(Self::golden()),
            "sqrt2m1" => return Ok(Self::sqrt2m1()),
            _ => {}
        }
        if let Some(body) = s.strip_prefix("cf:") {
            let mut terms = Vec::new();
            for piece in body.split(',') {
                let piece = piece.trim();
                let t: u64 = piece.parse().map_err(|_| {
                    Error::InvalidParameter(format!(
                        "bad continued fraction term {piece:?} in {s:?}"
                    ))
                })?;
                terms.push(t);
            }
            return Self::new(AlphaKind::ContinuedFraction(terms));
        }
        if s.parse::<f64>().is_ok() {
            return Err(Error::InvalidParameter(format!(
                "α = {s:?} is a decimal, hence rational; use golden, sqrt2m1, or cf:0,a1,…"
            )));
        }
        Err(Error::InvalidParameter(format!(
            "unknown α spec {s:?}; use golden, sqrt2m1, or cf:0,a1,…"
        )))
    }

    pub fn kind(&self) -> &AlphaKind {
        &self.kind
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// A double-precision approximation, accurate to within 2^-52.
    pub fn approx(&self) -> f64 {
        self.approx
    }

    /// Continued fraction term a_i under the repeat-last-term convention.
    pub fn cf_term(&self, i: usize) -> u64 {
        self.kind.term(i)
    }

    /// The convergent h_i/k_i (i = 0 gives a0 = 0/1).
    pub fn convergent(&self, i: usize) -> BigRational {
        {
            let table = self.table.read().expect("poisoned");
            if i < table.h.len() {
                return table.ratio(i);
            }
        }
        let mut table = self.table.write().expect("poisoned");
        while table.h.len() <= i {
            let n = table.h.len();
            table.extend(self.kind.term(n));
        }
        table.ratio(i)
    }

    /// An open interval (lo, hi) ∋ α of width < 2^-bits with rational ends.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let threshold = BigInt::one() << bits;
        {
            let table = self.table.read().expect("poisoned");
            if table.tail_product_exceeds(&threshold) {
                return Self::tail_enclosure(&table);
            }
        }
        let mut table = self.table.write().expect("poisoned");
        while !table.tail_product_exceeds(&threshold) {
            let n = table.h.len();
            table.extend(self.kind.term(n));
        }
        Self::tail_enclosure(&table)
    }

    fn tail_enclosure(table: &ConvergentTable) -> (BigRational, BigRational) {
        let n = table.h.len() - 1;
        // even-index convergents lie below α, odd-index ones above
        if n % 2 == 1 {
            (table.ratio(n - 1), table.ratio(n))
        } else {
            (table.ratio(n), table.ratio(n - 1))
        }
    }

    /// Exact order of α against a rational. Never Equal: α is irrational.
    pub fn cmp_rational(&self, t: &BigRational) -> Result<Ordering> {
        if t <= &BigRational::zero() {
            return Ok(Ordering::Greater);
        }
        if t >= &BigRational::one() {
            return Ok(Ordering::Less);
        }
        let mut bits = self.precision_bits;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if *t <= lo {
                return Ok(Ordering::Greater);
            }
            if *t >= hi {
                return Ok(Ordering::Less);
            }
            if bits >= MAX_PRECISION_BITS {
                return Err(Error::PrecisionExhausted { bits });
            }
            bits = bits.saturating_mul(2).min(MAX_PRECISION_BITS);
        }
    }

    /// Exact sign of r + s·α, as an Ordering against zero.
    pub fn sign_linear(&self, r: &BigRational, s: &BigRational) -> Result<Ordering> {
        if s.is_zero() {
            return Ok(r.cmp(&BigRational::zero()));
        }
        let t = -(r / s);
        let ord = self.cmp_rational(&t)?;
        Ok(if s.is_positive() { ord } else { ord.reverse() })
    }

    /// Exact ⌊p + q·α⌋.
    pub fn floor_linear(&self, p: &BigRational, q: i64) -> Result<BigInt> {
        if q == 0 {
            return Ok(p.floor().to_integer());
        }
        let qr = BigRational::from_integer(BigInt::from(q));
        let mut bits = self.precision_bits;
        loop {
            let (lo, hi) = self.enclosure(bits);
            let (vlo, vhi) = if q > 0 {
                (p + &qr * lo, p + &qr * hi)
            } else {
                (p + &qr * hi, p + &qr * lo)
            };
            let flo = vlo.floor();
            if flo == vhi.floor() {
                return Ok(flo.to_integer());
            }
            if bits >= MAX_PRECISION_BITS {
                return Err(Error::PrecisionExhausted { bits });
            }
            bits = bits.saturating_mul(2).min(MAX_PRECISION_BITS);
        }
    }
}

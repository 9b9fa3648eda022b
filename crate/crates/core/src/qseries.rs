//! Truncated Laurent series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] carries an explicit *determined window* `[valuation, horizon)`:
//! every coefficient inside the window is known exactly, and nothing outside it
//! is ever guessed. Reading a coefficient at or beyond the horizon is an
//! [`Error::InsufficientPrecision`], never a silent zero. Arithmetic propagates
//! windows so that results only claim what the inputs determine:
//!
//! * `add`/`sub`: valuation is the smaller valuation, horizon the smaller horizon.
//! * `mul`: valuation is the sum of valuations, horizon is
//!   `min(a.horizon + b.valuation, b.horizon + a.valuation)`.
//! * `invert`: the relative precision `horizon - valuation` is preserved.
//!
//! Storage is sparse (exponent → coefficient), so powers of `Δ` with widely
//! spread supports stay cheap. Products are computed over a common
//! denominator with big-integer convolution.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Exact truncated Laurent series `Σ c_n q^n` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct QSeries {
    valuation: i64,
    horizon: i64,
    coeffs: BTreeMap<i64, BigRational>,
}

impl QSeries {
    /// Builds a series from `(exponent, coefficient)` pairs.
    ///
    /// Zero coefficients are dropped. Every exponent must lie inside
    /// `[valuation, horizon)` and the window must be non-empty.
    pub fn new<I>(valuation: i64, horizon: i64, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        if horizon <= valuation {
            return Err(Error::InsufficientPrecision {
                needed: valuation,
                valuation,
                horizon,
            });
        }
        let mut map = BTreeMap::new();
        for (n, c) in coeffs {
            if n < valuation || n >= horizon {
                return Err(invalid(format!(
                    "exponent {n} outside window [{valuation}, {horizon})"
                )));
            }
            if map.insert(n, c).is_some() {
                return Err(invalid(format!("duplicate exponent {n}")));
            }
        }
        map.retain(|_, c: &mut BigRational| !c.is_zero());
        Ok(QSeries {
            valuation,
            horizon,
            coeffs: map,
        })
    }

    /// Dense integer coefficients starting at `valuation`.
    pub fn from_integers(valuation: i64, coeffs: &[i64]) -> Result<Self> {
        let horizon = valuation + coeffs.len() as i64;
        Self::new(
            valuation,
            horizon,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (valuation + k as i64, BigRational::from_integer(c.into()))),
        )
    }

    pub fn zero(valuation: i64, horizon: i64) -> Result<Self> {
        Self::new(valuation, horizon, std::iter::empty())
    }

    /// The constant `1` determined on `[0, horizon)`.
    pub fn one(horizon: i64) -> Result<Self> {
        Self::monomial(BigRational::one(), 0, horizon)
    }

    /// `c·q^n` determined on `[n, horizon)`.
    pub fn monomial(c: BigRational, n: i64, horizon: i64) -> Result<Self> {
        Self::new(n, horizon, std::iter::once((n, c)))
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn horizon(&self) -> i64 {
        self.horizon
    }

    /// Number of determined coefficients, `horizon - valuation`.
    pub fn precision(&self) -> i64 {
        self.horizon - self.valuation
    }

    /// Exact coefficient of `q^n`.
    pub fn coefficient(&self, n: i64) -> Result<BigRational> {
        if n < self.valuation || n >= self.horizon {
            return Err(self.out_of_window(n));
        }
        Ok(self.coeffs.get(&n).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Nonzero terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    /// Number of stored (nonzero) terms.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// True when every determined coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn leading_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Raises the valuation to the first nonzero exponent, keeping the horizon.
    /// The zero series is returned unchanged.
    pub fn trim(&self) -> QSeries {
        match self.leading_exponent() {
            Some(n) if n > self.valuation => QSeries {
                valuation: n,
                horizon: self.horizon,
                coeffs: self.coeffs.clone(),
            },
            _ => self.clone(),
        }
    }

    /// Lowers the horizon to `min(horizon, self.horizon)`.
    pub fn truncate(&self, horizon: i64) -> Result<QSeries> {
        let horizon = horizon.min(self.horizon);
        if horizon <= self.valuation {
            return Err(Error::InsufficientPrecision {
                needed: self.valuation,
                valuation: self.valuation,
                horizon,
            });
        }
        Ok(QSeries {
            valuation: self.valuation,
            horizon,
            coeffs: self.coeffs.range(..horizon).map(|(&n, c)| (n, c.clone())).collect(),
        })
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> QSeries {
        QSeries {
            valuation: self.valuation + k,
            horizon: self.horizon + k,
            coeffs: self.coeffs.iter().map(|(&n, c)| (n + k, c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            valuation: self.valuation,
            horizon: self.horizon,
            coeffs: self.coeffs.iter().map(|(&n, c)| (n, -c)).collect(),
        }
    }

    /// Coefficient-wise sum on `[min valuation, min horizon)`.
    ///
    /// Both windows are non-empty, so the result window is too.
    pub fn add(&self, other: &QSeries) -> QSeries {
        let valuation = self.valuation.min(other.valuation);
        let horizon = self.horizon.min(other.horizon);
        let mut coeffs: BTreeMap<i64, BigRational> =
            self.coeffs.range(..horizon).map(|(&n, c)| (n, c.clone())).collect();
        for (&n, c) in other.coeffs.range(..horizon) {
            let entry = coeffs.entry(n).or_insert_with(BigRational::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        QSeries {
            valuation,
            horizon,
            coeffs,
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    /// Every coefficient multiplied by `c`; the window is unchanged.
    pub fn scale(&self, c: &BigRational) -> QSeries {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(&n, a)| (n, a * c)).collect()
        };
        QSeries {
            valuation: self.valuation,
            horizon: self.horizon,
            coeffs,
        }
    }

    /// Cauchy product on the window determined by both factors.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let valuation = self.valuation + other.valuation;
        let horizon = (self.horizon + other.valuation).min(other.horizon + self.valuation);
        let len = (horizon - valuation) as usize;

        let (den_a, num_a) = self.integer_parts();
        let (den_b, num_b) = other.integer_parts();
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); len];
        for (ea, ca) in &num_a {
            let base = ea - self.valuation;
            if base >= len as i64 {
                break;
            }
            for (eb, cb) in &num_b {
                let idx = base + (eb - other.valuation);
                if idx >= len as i64 {
                    break;
                }
                acc[idx as usize] += ca * cb;
            }
        }
        let den = den_a * den_b;
        let coeffs = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (valuation + k as i64, BigRational::new(c, den.clone())))
            .collect();
        QSeries {
            valuation,
            horizon,
            coeffs,
        }
    }

    /// Multiplicative inverse. Requires a nonzero coefficient at the valuation;
    /// the result has valuation `-valuation` and the same precision.
    pub fn invert(&self) -> Result<QSeries> {
        let lead = self
            .coeffs
            .get(&self.valuation)
            .ok_or(Error::NotInvertible(self.valuation))?;
        let precision = self.precision() as usize;
        // u = self / (lead q^valuation) = 1 + u_1 q + ...
        let unit: Vec<(usize, BigRational)> = self
            .coeffs
            .iter()
            .skip(1)
            .map(|(&n, c)| ((n - self.valuation) as usize, c / lead))
            .collect();
        let inv_lead = lead.recip();
        let valuation = -self.valuation;

        let coeffs: Vec<BigRational> = if unit.iter().all(|(_, c)| c.is_integer()) {
            let unit: Vec<(usize, BigInt)> =
                unit.into_iter().map(|(k, c)| (k, c.to_integer())).collect();
            let mut b: Vec<BigInt> = Vec::with_capacity(precision);
            b.push(BigInt::one());
            for n in 1..precision {
                let mut s = BigInt::zero();
                for (k, u) in &unit {
                    if *k > n {
                        break;
                    }
                    s += u * &b[n - k];
                }
                b.push(-s);
            }
            b.into_iter()
                .map(|c| BigRational::from_integer(c) * &inv_lead)
                .collect()
        } else {
            let mut b: Vec<BigRational> = Vec::with_capacity(precision);
            b.push(BigRational::one());
            for n in 1..precision {
                let mut s = BigRational::zero();
                for (k, u) in &unit {
                    if *k > n {
                        break;
                    }
                    s += u * &b[n - k];
                }
                b.push(-s);
            }
            b.into_iter().map(|c| c * &inv_lead).collect()
        };
        QSeries::new(
            valuation,
            valuation + precision as i64,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (valuation + k as i64, c)),
        )
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, exponent: i64) -> Result<QSeries> {
        if exponent == 0 {
            return QSeries::one(self.precision());
        }
        let mut base = if exponent < 0 {
            self.invert()?
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut acc: Option<QSeries> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("exponent is nonzero"))
    }

    /// True when the two series agree on every exponent both determine
    /// (coefficients below a valuation count as zero).
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let horizon = self.horizon.min(other.horizon);
        let zero = BigRational::zero();
        let lhs = self.coeffs.range(..horizon);
        let rhs = other.coeffs.range(..horizon);
        let mut merged: BTreeMap<i64, (&BigRational, &BigRational)> = BTreeMap::new();
        for (&n, c) in lhs {
            merged.insert(n, (c, &zero));
        }
        for (&n, c) in rhs {
            merged.entry(n).or_insert((&zero, &zero)).1 = c;
        }
        merged.values().all(|(a, b)| a == b)
    }

    /// Common-denominator form: `(L, [(n, L·c_n)])`.
    fn integer_parts(&self) -> (BigInt, Vec<(i64, BigInt)>) {
        let den = self
            .coeffs
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|(&n, c)| (n, c.numer() * (&den / c.denom())))
            .collect();
        (den, nums)
    }

    fn out_of_window(&self, n: i64) -> Error {
        Error::InsufficientPrecision {
            needed: n,
            valuation: self.valuation,
            horizon: self.horizon,
        }
    }
}

impl fmt::Display for QSeries {
    /// `q - 24*q^2 + 252*q^3`; the truncation order is not printed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&n, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let var = match n {
                0 => None,
                1 => Some("q".to_string()),
                _ => Some(format!("q^{n}")),
            };
            match var {
                None => write!(f, "{mag}")?,
                Some(v) if mag.is_one() => f.write_str(&v)?,
                Some(v) => write!(f, "{mag}*{v}")?,
            }
        }
        Ok(())
    }
}

/// The generators whose q-expansions everything else is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GeneratorName {
    C4,
    C6,
    Delta,
    DeltaInv,
    E2,
}

impl GeneratorName {
    pub const ALL: [GeneratorName; 5] = [
        GeneratorName::C4,
        GeneratorName::C6,
        GeneratorName::Delta,
        GeneratorName::DeltaInv,
        GeneratorName::E2,
    ];

    /// Modular weight (E2 is only quasi-modular, but has weight 2).
    pub fn weight(self) -> i64 {
        match self {
            GeneratorName::C4 => 4,
            GeneratorName::C6 => 6,
            GeneratorName::Delta => 12,
            GeneratorName::DeltaInv => -12,
            GeneratorName::E2 => 2,
        }
    }

    pub fn valuation(self) -> i64 {
        match self {
            GeneratorName::Delta => 1,
            GeneratorName::DeltaInv => -1,
            _ => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorName::C4 => "C4",
            GeneratorName::C6 => "C6",
            GeneratorName::Delta => "DELTA",
            GeneratorName::DeltaInv => "DELTA_INV",
            GeneratorName::E2 => "E2",
        }
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for GeneratorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C4" => Ok(GeneratorName::C4),
            "C6" => Ok(GeneratorName::C6),
            "DELTA" => Ok(GeneratorName::Delta),
            "DELTA_INV" | "DELTAINV" => Ok(GeneratorName::DeltaInv),
            "E2" => Ok(GeneratorName::E2),
            _ => Err(Error::Parse(format!("unknown generator `{s}`"))),
        }
    }
}

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn divisor_sum(k: u32, n: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

/// `1 + factor·Σ_{n≥1} σ_k(n) q^n` on `[0, terms)`.
fn eisenstein(factor: i64, k: u32, terms: i64) -> Result<QSeries> {
    let factor = BigInt::from(factor);
    let coeffs = (0..terms).map(|n| {
        let c = if n == 0 {
            BigInt::one()
        } else {
            &factor * divisor_sum(k, n as u64)
        };
        (n, BigRational::from_integer(c))
    });
    QSeries::new(0, terms, coeffs)
}

/// q-expansion of a generator with `terms` determined coefficients counted
/// from its valuation.
pub fn generator(name: GeneratorName, terms: i64) -> Result<QSeries> {
    if terms < 1 {
        return Err(invalid(format!("terms must be positive, got {terms}")));
    }
    match name {
        GeneratorName::C4 => eisenstein(240, 3, terms),
        GeneratorName::C6 => eisenstein(-504, 5, terms),
        GeneratorName::E2 => eisenstein(-24, 1, terms),
        GeneratorName::Delta => {
            let c4 = eisenstein(240, 3, terms + 1)?;
            let c6 = eisenstein(-504, 5, terms + 1)?;
            let disc = c4.pow(3)?.sub(&c6.mul(&c6));
            let delta = disc.scale(&BigRational::new(1.into(), 1728.into()));
            // c4^3 - c6^2 vanishes at q^0; drop it so the valuation is 1.
            let trimmed = QSeries {
                valuation: 1,
                horizon: delta.horizon,
                coeffs: delta.coeffs,
            };
            Ok(trimmed)
        }
        GeneratorName::DeltaInv => generator(GeneratorName::Delta, terms)?.invert(),
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    valuation: i64,
    horizon: i64,
    coeffs: Vec<CoeffJson>,
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    n: i64,
    num: String,
    den: String,
}

impl From<QSeries> for SeriesJson {
    fn from(s: QSeries) -> Self {
        SeriesJson {
            valuation: s.valuation,
            horizon: s.horizon,
            coeffs: s
                .coeffs
                .into_iter()
                .map(|(n, c)| {
                    let (num, den) = rational_to_parts(&c);
                    CoeffJson { n, num, den }
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesJson> for QSeries {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        let coeffs = j
            .coeffs
            .into_iter()
            .map(|c| Ok((c.n, rational_from_parts(&c.num, &c.den)?)))
            .collect::<Result<Vec<_>>>()?;
        QSeries::new(j.valuation, j.horizon, coeffs)
    }
}

/// Decimal numerator and (positive) denominator of a reduced fraction.
pub(crate) fn rational_to_parts(c: &BigRational) -> (String, String) {
    (c.numer().to_string(), c.denom().to_string())
}

pub(crate) fn rational_from_parts(num: &str, den: &str) -> Result<BigRational> {
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator `{num}`")))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator `{den}`")))?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

/// `{"num": "...", "den": "..."}`, the rational encoding shared by all schemas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(c: &BigRational) -> Self {
        let (num, den) = rational_to_parts(c);
        RationalJson { num, den }
    }
}

impl TryFrom<&RationalJson> for BigRational {
    type Error = Error;

    fn try_from(j: &RationalJson) -> Result<Self> {
        rational_from_parts(&j.num, &j.den)
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => rational_from_parts(p, q),
        None => rational_from_parts(s, "1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(s: &QSeries) -> Vec<(i64, BigRational)> {
        s.iter().map(|(n, c)| (n, c.clone())).collect()
    }

    #[test]
    fn out_of_window_read_is_an_error() {
        let c4 = generator(GeneratorName::C4, 3).unwrap();
        assert!(matches!(
            c4.coefficient(5),
            Err(Error::InsufficientPrecision { needed: 5, .. })
        ));
        assert!(c4.coefficient(-1).is_err());
        assert_eq!(c4.coefficient(2).unwrap(), r(2160, 1));
    }

    #[test]
    fn terms_must_be_positive() {
        assert!(matches!(
            generator(GeneratorName::E2, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn empty_window_rejected() {
        assert!(QSeries::zero(3, 3).is_err());
        assert!(QSeries::new(0, 2, vec![(2, r(1, 1))]).is_err());
    }

    #[test]
    fn additive_inverse_and_identity() {
        let a = QSeries::monomial(r(1, 1), -1, 5).unwrap();
        let s = a.add(&a.neg());
        assert!(s.is_zero());
        assert_eq!((s.valuation(), s.horizon()), (-1, 5));
        let z = QSeries::zero(-1, 5).unwrap();
        assert_eq!(a.add(&z), a);
    }

    #[test]
    fn monomial_product() {
        let q = QSeries::monomial(r(1, 1), 1, 10).unwrap();
        let q2 = q.mul(&q);
        assert_eq!(ints(&q2), vec![(2, r(1, 1))]);
        assert_eq!((q2.valuation(), q2.horizon()), (2, 11));
    }

    #[test]
    fn laurent_product_with_mixed_valuations() {
        let a = QSeries::from_integers(-1, &[1, 1]).unwrap();
        let b = QSeries::from_integers(2, &[1, 1, 1]).unwrap();
        let p = a.mul(&b);
        assert_eq!((p.valuation(), p.horizon()), (1, 3));
        assert_eq!(ints(&p), vec![(1, r(1, 1)), (2, r(2, 1))]);
    }

    #[test]
    fn scale_by_zero_and_involution() {
        let e2 = generator(GeneratorName::E2, 4).unwrap();
        let z = e2.scale(&BigRational::zero());
        assert!(z.is_zero());
        assert_eq!(z.horizon(), e2.horizon());
        let m1 = r(-1, 1);
        assert_eq!(e2.scale(&m1).scale(&m1), e2);
    }

    #[test]
    fn geometric_series_inverse() {
        let a = QSeries::from_integers(0, &[1, 1, 0, 0, 0, 0]).unwrap();
        let b = a.invert().unwrap();
        assert_eq!(b, QSeries::from_integers(0, &[1, -1, 1, -1, 1, -1]).unwrap());
        assert_eq!(b.invert().unwrap(), a);
    }

    #[test]
    fn invert_zero_leading_coefficient_fails() {
        let a = QSeries::from_integers(0, &[0, 1, 2]).unwrap();
        assert_eq!(a.invert(), Err(Error::NotInvertible(0)));
    }

    #[test]
    fn rational_inverse_path() {
        let a = QSeries::new(2, 8, vec![(2, r(2, 1)), (3, r(1, 3))]).unwrap();
        let b = a.invert().unwrap();
        assert_eq!(b.valuation(), -2);
        let one = a.mul(&b);
        assert!(one.agrees_with(&QSeries::one(6).unwrap()));
    }

    #[test]
    fn display_matches_expected_text() {
        let d = generator(GeneratorName::Delta, 3).unwrap();
        assert_eq!(d.to_string(), "q - 24*q^2 + 252*q^3");
        let di = generator(GeneratorName::DeltaInv, 3).unwrap();
        assert_eq!(di.to_string(), "q^-1 + 24 + 324*q");
        let e = generator(GeneratorName::E2, 2).unwrap().scale(&r(1, 12));
        assert_eq!(e.to_string(), "1/12 - 2*q");
        assert_eq!(QSeries::zero(0, 1).unwrap().to_string(), "0");
    }

    #[test]
    fn json_schema_shape() {
        let s = QSeries::new(-1, 2, vec![(-1, r(1, 1)), (1, r(-3, 6))]).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "valuation": -1,
                "horizon": 2,
                "coeffs": [
                    {"n": -1, "num": "1", "den": "1"},
                    {"n": 1, "num": "-1", "den": "2"}
                ]
            })
        );
        let back: QSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_rejects_bad_window_and_denominator() {
        let bad = r#"{"valuation": 0, "horizon": 0, "coeffs": []}"#;
        assert!(serde_json::from_str::<QSeries>(bad).is_err());
        let bad = r#"{"valuation": 0, "horizon": 2, "coeffs": [{"n": 0, "num": "1", "den": "0"}]}"#;
        assert!(serde_json::from_str::<QSeries>(bad).is_err());
    }

    #[test]
    fn generator_names_parse() {
        for g in GeneratorName::ALL {
            assert_eq!(g.as_str().parse::<GeneratorName>().unwrap(), g);
        }
        assert!("E4".parse::<GeneratorName>().is_err());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("-3/6").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}

//! The graded ring of weakly holomorphic modular forms
//! `MF_* = Z[c4, c6, Δ, Δ⁻¹] / (c4³ − c6² − 1728Δ)` and its rational span.
//!
//! Every element is kept in monomial normal form `Σ a · c4^i c6^j Δ^d` with
//! `j ∈ {0, 1}`. For a fixed weight `w` and exponent `d` there is at most one
//! such monomial (`4i + 6j = w − 12d` has at most one solution with
//! `j ∈ {0,1}`), and its q-expansion is monic with leading term `q^d`. The
//! monomials of one weight therefore form an echelon basis ordered by `d`,
//! which turns membership testing into a single forward sweep ([`reduce`]).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::qseries::{generator, rational_from_parts, rational_to_parts, GeneratorName, QSeries};

/// `c4^c4 · c6^c6 · Δ^delta` with `c6 ∈ {0, 1}`.
///
/// Ordered by `delta` first, which is also the order of leading exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    delta: i64,
    c4: u32,
    c6: u32,
}

impl Monomial {
    pub fn new(c4: u32, c6: u32, delta: i64) -> Result<Self> {
        if c6 > 1 {
            return Err(invalid(format!("c6 exponent must be 0 or 1, got {c6}")));
        }
        Ok(Monomial { delta, c4, c6 })
    }

    pub const ONE: Monomial = Monomial {
        delta: 0,
        c4: 0,
        c6: 0,
    };

    pub fn delta_power(delta: i64) -> Self {
        Monomial { delta, c4: 0, c6: 0 }
    }

    pub fn c4_exp(&self) -> u32 {
        self.c4
    }

    pub fn c6_exp(&self) -> u32 {
        self.c6
    }

    pub fn delta_exp(&self) -> i64 {
        self.delta
    }

    pub fn weight(&self) -> i64 {
        4 * self.c4 as i64 + 6 * self.c6 as i64 + 12 * self.delta
    }

    /// The unique monomial of weight `weight` with `Δ`-exponent `delta`.
    pub fn for_weight(weight: i64, delta: i64) -> Option<Monomial> {
        let rest = weight - 12 * delta;
        if rest < 0 || rest.is_odd() {
            return None;
        }
        if rest % 4 == 0 {
            Some(Monomial {
                delta,
                c4: (rest / 4) as u32,
                c6: 0,
            })
        } else if rest >= 6 {
            Some(Monomial {
                delta,
                c4: ((rest - 6) / 4) as u32,
                c6: 1,
            })
        } else {
            None
        }
    }

    /// Multiplier `a` such that `a · (this monomial)` generates the Witten
    /// image lattice along this basis direction: `24/gcd(24, d)` for pure
    /// `Δ`-powers, `2` when `c6` appears, `1` otherwise.
    pub fn lattice_multiplier(&self) -> u64 {
        if self.c6 == 1 {
            2
        } else if self.c4 == 0 {
            24 / 24u64.gcd(&self.delta.unsigned_abs())
        } else {
            1
        }
    }

    fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        match self.c4 {
            0 => {}
            1 => parts.push("c4".to_string()),
            i => parts.push(format!("c4^{i}")),
        }
        if self.c6 == 1 {
            parts.push("c6".to_string());
        }
        match self.delta {
            0 => {}
            1 => parts.push("Delta".to_string()),
            d => parts.push(format!("Delta^{d}")),
        }
        f.write_str(&parts.join("*"))
    }
}

/// `a_{i,j,d}` for the exponents `(c4, c6, delta)`.
pub fn image_lattice_coefficient(c4: u32, c6: u32, delta: i64) -> Result<u64> {
    Ok(Monomial::new(c4, c6, delta)?.lattice_multiplier())
}

/// A homogeneous element of `MF_*^Q` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct MfElement {
    weight: i64,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MfElement {
    pub fn zero(weight: i64) -> Self {
        MfElement {
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE, BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MfElement {
            weight: m.weight(),
            terms,
        }
    }

    pub fn delta_power(d: i64) -> Self {
        Self::monomial(Monomial::delta_power(d), BigRational::one())
    }

    pub fn c4() -> Self {
        Self::monomial(Monomial { delta: 0, c4: 1, c6: 0 }, BigRational::one())
    }

    pub fn c6() -> Self {
        Self::monomial(Monomial { delta: 0, c4: 0, c6: 1 }, BigRational::one())
    }

    /// Builds an element from normal-form terms of a single weight.
    pub fn new<I>(weight: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut out = MfElement::zero(weight);
        for (m, c) in terms {
            if m.weight() != weight {
                return Err(Error::MixedWeight {
                    expected: weight,
                    found: m.weight(),
                });
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Order of the q-expansion at the cusp (the smallest `Δ`-exponent).
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().map(|m| m.delta)
    }

    pub fn add(&self, other: &MfElement) -> Result<MfElement> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.weight != other.weight {
            return Err(Error::MixedWeight {
                expected: self.weight,
                found: other.weight,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MfElement) -> Result<MfElement> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> MfElement {
        if c.is_zero() {
            return MfElement::zero(self.weight);
        }
        MfElement {
            weight: self.weight,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Ring product, rewritten back into normal form.
    pub fn mul(&self, other: &MfElement) -> MfElement {
        let mut poly = Polynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                poly.push(
                    ca * cb,
                    ma.c4 + mb.c4,
                    ma.c6 + mb.c6,
                    ma.delta + mb.delta,
                );
            }
        }
        if poly.terms.is_empty() {
            return MfElement::zero(self.weight + other.weight);
        }
        normalize(&poly).expect("products of homogeneous elements are homogeneous")
    }

    pub fn pow(&self, e: u32) -> MfElement {
        (0..e).fold(MfElement::one(), |acc, _| acc.mul(self))
    }

    /// q-expansion with `terms` determined coefficients from the valuation.
    pub fn expand(&self, terms: i64) -> Result<QSeries> {
        if terms < 1 {
            return Err(invalid(format!("terms must be positive, got {terms}")));
        }
        let Some(v) = self.valuation() else {
            return QSeries::zero(0, terms);
        };
        self.expand_to(v + terms)
    }

    /// q-expansion determined on `[valuation, horizon)`.
    pub fn expand_to(&self, horizon: i64) -> Result<QSeries> {
        let Some(v) = self.valuation() else {
            return QSeries::zero(horizon - 1, horizon);
        };
        if horizon <= v {
            return Err(Error::InsufficientPrecision {
                needed: v,
                valuation: v,
                horizon,
            });
        }
        let mut ex = Expander::new(horizon - v)?;
        let mut acc = QSeries::zero(v, horizon)?;
        for (m, c) in &self.terms {
            acc = acc.add(&ex.monomial(m, horizon)?.scale(c));
        }
        Ok(acc)
    }

    /// True iff this is `±Δ^d`.
    pub fn is_unit(&self) -> bool {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 => {
                m.c4 == 0 && m.c6 == 0 && c.is_integer() && c.abs().is_one()
            }
            _ => false,
        }
    }
}

impl fmt::Display for MfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A formal polynomial in `c4, c6, Δ, Δ⁻¹` whose `c6`-exponents are unrestricted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(BigRational, u32, u32, i64)>,
}

impl Polynomial {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `coeff · c4^c4 c6^c6 Δ^delta`.
    pub fn push(&mut self, coeff: BigRational, c4: u32, c6: u32, delta: i64) {
        self.terms.push((coeff, c4, c6, delta));
    }

    pub fn with(mut self, coeff: BigRational, c4: u32, c6: u32, delta: i64) -> Self {
        self.push(coeff, c4, c6, delta);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expansion straight from the generators, without rewriting `c6²`.
    pub fn expand_direct(&self, terms: i64) -> Result<QSeries> {
        let v = self
            .terms
            .iter()
            .map(|t| t.3)
            .min()
            .ok_or_else(|| invalid("empty polynomial"))?;
        let horizon = v + terms;
        let mut acc = QSeries::zero(v, horizon)?;
        for (c, i, j, d) in &self.terms {
            let rel = horizon - d;
            let c4 = generator(GeneratorName::C4, rel)?;
            let c6 = generator(GeneratorName::C6, rel)?;
            let dq = generator(GeneratorName::Delta, rel)?.shift(-1);
            let s = c4
                .pow(*i as i64)?
                .mul(&c6.pow(*j as i64)?)
                .mul(&dq.pow(*d)?)
                .shift(*d);
            acc = acc.add(&s.scale(c));
        }
        Ok(acc)
    }
}

/// Rewrites `c6² → c4³ − 1728Δ` until every `c6`-exponent is 0 or 1.
pub fn normalize(poly: &Polynomial) -> Result<MfElement> {
    let Some(first) = poly.terms.first() else {
        return Err(invalid("cannot infer the weight of an empty polynomial"));
    };
    let weight = 4 * first.1 as i64 + 6 * first.2 as i64 + 12 * first.3;
    let mut out = MfElement::zero(weight);
    let minus_1728 = BigInt::from(-1728);
    for (c, c4, c6, delta) in &poly.terms {
        let w = 4 * *c4 as i64 + 6 * *c6 as i64 + 12 * delta;
        if w != weight {
            return Err(Error::MixedWeight {
                expected: weight,
                found: w,
            });
        }
        let k = c6 / 2;
        let rest = c6 % 2;
        // c6^(2k) = Σ_t C(k,t) c4^(3(k-t)) (-1728 Δ)^t
        let mut binom = BigInt::one();
        for t in 0..=k {
            if t > 0 {
                binom = binom * BigInt::from(k - t + 1) / BigInt::from(t);
            }
            let factor = &binom * minus_1728.pow(t);
            let m = Monomial {
                delta: delta + t as i64,
                c4: c4 + 3 * (k - t),
                c6: rest,
            };
            out.add_term(m, c * BigRational::from_integer(factor));
        }
    }
    Ok(out)
}

/// Memoized q-expansions of monomials at a fixed relative precision.
///
/// Powers of `c4` and of `Δ/q` are cached, so expanding a whole echelon basis
/// costs one chain of squarings rather than one per monomial.
pub struct Expander {
    precision: i64,
    c4: QSeries,
    c6: QSeries,
    delta_q: QSeries,
    delta_q_inv: QSeries,
    c4_pows: HashMap<u32, QSeries>,
    delta_pows: HashMap<i64, QSeries>,
}

impl Expander {
    pub fn new(precision: i64) -> Result<Self> {
        if precision < 1 {
            return Err(invalid(format!("precision must be positive, got {precision}")));
        }
        let delta_q = generator(GeneratorName::Delta, precision)?.shift(-1);
        Ok(Expander {
            precision,
            c4: generator(GeneratorName::C4, precision)?,
            c6: generator(GeneratorName::C6, precision)?,
            delta_q_inv: delta_q.invert()?,
            delta_q,
            c4_pows: HashMap::new(),
            delta_pows: HashMap::new(),
        })
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    fn c4_pow(&mut self, e: u32) -> QSeries {
        if let Some(s) = self.c4_pows.get(&e) {
            return s.clone();
        }
        let s = match e {
            0 => QSeries::one(self.precision).expect("positive precision"),
            1 => self.c4.clone(),
            _ => {
                let half = self.c4_pow(e / 2);
                let sq = half.mul(&half);
                if e % 2 == 1 {
                    sq.mul(&self.c4)
                } else {
                    sq
                }
            }
        };
        self.c4_pows.insert(e, s.clone());
        s
    }

    fn delta_pow(&mut self, e: i64) -> QSeries {
        if let Some(s) = self.delta_pows.get(&e) {
            return s.clone();
        }
        let s = match e {
            0 => QSeries::one(self.precision).expect("positive precision"),
            1 => self.delta_q.clone(),
            -1 => self.delta_q_inv.clone(),
            _ => {
                let half = self.delta_pow(e / 2);
                let sq = half.mul(&half);
                match e % 2 {
                    1 => sq.mul(&self.delta_q),
                    -1 => sq.mul(&self.delta_q_inv),
                    _ => sq,
                }
            }
        };
        self.delta_pows.insert(e, s.clone());
        s
    }

    /// Expansion of `m` determined on `[m.delta, horizon)`.
    pub fn monomial(&mut self, m: &Monomial, horizon: i64) -> Result<QSeries> {
        let rel = horizon - m.delta;
        if rel < 1 {
            return Err(Error::InsufficientPrecision {
                needed: m.delta,
                valuation: m.delta,
                horizon,
            });
        }
        if rel > self.precision {
            *self = Expander::new(rel)?;
        }
        let mut s = self.c4_pow(m.c4).truncate(rel)?;
        if m.c6 == 1 {
            s = s.mul(&self.c6.truncate(rel)?);
        }
        if m.delta != 0 {
            s = s.mul(&self.delta_pow(m.delta).truncate(rel)?);
        }
        Ok(s.shift(m.delta))
    }
}

/// Largest `Δ`-exponent of a weight-`weight` basis monomial.
pub fn max_leading_exponent(weight: i64) -> Option<i64> {
    if weight.is_odd() {
        return None;
    }
    let top = Integer::div_floor(&weight, &12);
    if weight - 12 * top == 2 {
        Some(top - 1)
    } else {
        Some(top)
    }
}

/// Weight-`weight` monomials with `d_min ≤ d ≤ d_max`, ascending in `d`.
pub fn basis(weight: i64, d_min: i64, d_max: i64) -> Result<Vec<Monomial>> {
    if d_min > d_max {
        return Err(invalid(format!("empty exponent range [{d_min}, {d_max}]")));
    }
    Ok((d_min..=d_max)
        .filter_map(|d| Monomial::for_weight(weight, d))
        .collect())
}

/// Outcome of echelon elimination of a series against `MF_w^Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub coords: MfElement,
    pub remainder: QSeries,
}

impl Reduction {
    /// Membership within the determined window.
    pub fn is_member(&self) -> bool {
        self.remainder.is_zero()
    }
}

/// Eliminates every weight-`weight` basis direction from `s`.
///
/// Sweeps `n` upward from the valuation to the largest leading exponent of the
/// weight; at each `n` the coefficient of `q^n` is recorded and that multiple
/// of the monic basis monomial with `d = n` is subtracted.
pub fn reduce(s: &QSeries, weight: i64) -> Result<Reduction> {
    if weight.is_odd() {
        return Err(invalid(format!("weight must be even, got {weight}")));
    }
    let top = max_leading_exponent(weight).expect("even weight");
    let mut coords = MfElement::zero(weight);
    if s.valuation() > top {
        return Ok(Reduction {
            coords,
            remainder: s.clone(),
        });
    }
    if s.horizon() <= top {
        return Err(Error::InsufficientPrecision {
            needed: top,
            valuation: s.valuation(),
            horizon: s.horizon(),
        });
    }
    let mut ex = Expander::new(s.precision())?;
    let mut rem = s.clone();
    for n in s.valuation()..=top {
        let c = rem.coefficient(n)?;
        if c.is_zero() {
            continue;
        }
        let m = Monomial::for_weight(weight, n).expect("every n up to the top exponent has a monomial");
        rem = rem.sub(&ex.monomial(&m, s.horizon())?.scale(&c));
        coords.add_term(m, c);
    }
    Ok(Reduction {
        coords,
        remainder: rem,
    })
}

/// Per-monomial constant terms for the weight-2 vanishing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingRecord {
    pub weight: i64,
    pub max_pole: i64,
    pub entries: Vec<VanishingEntry>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingEntry {
    pub monomial: String,
    pub delta: i64,
    pub constant_term: crate::qseries::RationalJson,
    #[serde(skip)]
    pub value: BigRational,
}

/// Constant terms of every weight-`weight` basis monomial with pole order at
/// most `max_pole` (and `d = 0` when such a monomial exists).
pub fn constant_term_vanishing(weight: i64, max_pole: i64) -> Result<VanishingRecord> {
    if max_pole < 1 {
        return Err(invalid(format!("max_pole must be positive, got {max_pole}")));
    }
    let mut ex = Expander::new(max_pole + 1)?;
    let mut entries = Vec::new();
    for m in basis(weight, -max_pole, 0)? {
        let value = ex.monomial(&m, 1)?.coefficient(0)?;
        entries.push(VanishingEntry {
            monomial: m.to_string(),
            delta: m.delta,
            constant_term: (&value).into(),
            value,
        });
    }
    let passed = entries.iter().all(|e| e.value.is_zero());
    Ok(VanishingRecord {
        weight,
        max_pole,
        entries,
        passed,
    })
}

/// One coordinate of a lattice-membership certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEntry {
    pub monomial: Monomial,
    pub coefficient: BigRational,
    pub modulus: u64,
    pub divisible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCertificate {
    pub contained: bool,
    pub entries: Vec<LatticeEntry>,
}

/// Decides whether `f` lies in the Witten image lattice spanned by
/// `a_{i,j,d} c4^i c6^j Δ^d`.
pub fn image_lattice_contains(f: &MfElement) -> LatticeCertificate {
    let entries: Vec<LatticeEntry> = f
        .terms()
        .map(|(m, c)| {
            let modulus = m.lattice_multiplier();
            let divisible = c.is_integer() && c.to_integer().is_multiple_of(&BigInt::from(modulus));
            LatticeEntry {
                monomial: *m,
                coefficient: c.clone(),
                modulus,
                divisible,
            }
        })
        .collect();
    LatticeCertificate {
        contained: entries.iter().all(|e| e.divisible),
        entries,
    }
}

pub fn is_unit(f: &MfElement) -> bool {
    f.is_unit()
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    weight: i64,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: u32,
    j: u32,
    d: i64,
    num: String,
    den: String,
}

impl From<MfElement> for ElementJson {
    fn from(f: MfElement) -> Self {
        ElementJson {
            weight: f.weight,
            terms: f
                .terms
                .into_iter()
                .map(|(m, c)| {
                    let (num, den) = rational_to_parts(&c);
                    TermJson {
                        i: m.c4,
                        j: m.c6,
                        d: m.delta,
                        num,
                        den,
                    }
                })
                .collect(),
        }
    }
}

impl TryFrom<ElementJson> for MfElement {
    type Error = Error;

    fn try_from(j: ElementJson) -> Result<Self> {
        let terms = j
            .terms
            .into_iter()
            .map(|t| Ok((Monomial::new(t.i, t.j, t.d)?, rational_from_parts(&t.num, &t.den)?)))
            .collect::<Result<Vec<_>>>()?;
        MfElement::new(j.weight, terms)
    }
}

//! Bordism classes entering the obstructions, represented by their Witten
//! genera, relative Witten genera or relative Dirac indices.
//!
//! The geometric constructions are not modelled. Each entry records the
//! invariant that the pairing consumes together with a short provenance note.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cosets::{coset_equal, coset_scale, mf_action, Coset};
use crate::error::{invalid, Error, Result};
use crate::mfring::{image_lattice_contains, MfElement, Monomial};
use crate::qseries::{generator, GeneratorName, QSeries, RationalJson};
use crate::DEFAULT_TERMS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    /// A string manifold; invariant is its Witten genus.
    StringClass,
    /// A spin manifold with string boundary; invariant is a class in `Q((q))/MF_{deg/2}`.
    RelativeWitten,
    /// A spin^c manifold with spin boundary; invariant is a rational index.
    RelativeDirac,
    /// A closed spin manifold; invariant is its (quasi-modular) Witten genus.
    SpinWitten,
    /// A closed spin manifold; invariant is its Dirac index.
    SpinIndex,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::StringClass => "STRING_CLASS",
            WitnessKind::RelativeWitten => "RELATIVE_WITTEN",
            WitnessKind::RelativeDirac => "RELATIVE_DIRAC",
            WitnessKind::SpinWitten => "SPIN_WITTEN",
            WitnessKind::SpinIndex => "SPIN_INDEX",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for WitnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "STRING_CLASS" => Ok(WitnessKind::StringClass),
            "RELATIVE_WITTEN" => Ok(WitnessKind::RelativeWitten),
            "RELATIVE_DIRAC" => Ok(WitnessKind::RelativeDirac),
            "SPIN_WITTEN" => Ok(WitnessKind::SpinWitten),
            "SPIN_INDEX" => Ok(WitnessKind::SpinIndex),
            _ => Err(Error::Parse(format!("unknown witness kind `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariant {
    ModularForm(MfElement),
    Coset(Coset),
    Rational(BigRational),
    Series(QSeries),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WitnessJson", into = "WitnessJson")]
pub struct Witness {
    name: String,
    degree: i64,
    kind: WitnessKind,
    invariant: Invariant,
    provenance: String,
}

impl Witness {
    /// Validates that the invariant matches the kind and the degree.
    pub fn new(
        name: impl Into<String>,
        degree: i64,
        kind: WitnessKind,
        invariant: Invariant,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let name = name.into();
        match (kind, &invariant) {
            (WitnessKind::StringClass, Invariant::ModularForm(f)) => {
                if degree % 4 != 0 || (!f.is_zero() && f.weight() != degree / 2) {
                    return Err(invalid(format!(
                        "{name}: Witten genus of weight {} in degree {degree}",
                        f.weight()
                    )));
                }
                if !image_lattice_contains(f).contained {
                    return Err(invalid(format!("{name}: {f} is not in the Witten image lattice")));
                }
            }
            (WitnessKind::RelativeWitten, Invariant::Coset(c)) => {
                if degree % 4 != 0 || c.weight() != degree / 2 {
                    return Err(invalid(format!(
                        "{name}: coset of weight {} in degree {degree}",
                        c.weight()
                    )));
                }
            }
            (WitnessKind::RelativeDirac, Invariant::Rational(_)) => {
                if degree.rem_euclid(4) != 2 {
                    return Err(invalid(format!("{name}: relative Dirac index in degree {degree}")));
                }
            }
            (WitnessKind::SpinWitten, Invariant::Series(_)) => {
                if degree % 4 != 0 {
                    return Err(invalid(format!("{name}: spin Witten genus in degree {degree}")));
                }
            }
            (WitnessKind::SpinIndex, Invariant::Rational(_)) => {
                if degree % 4 != 0 {
                    return Err(invalid(format!("{name}: spin index in degree {degree}")));
                }
            }
            _ => return Err(invalid(format!("{name}: invariant does not match kind {kind}"))),
        }
        Ok(Witness {
            name,
            degree,
            kind,
            invariant,
            provenance: provenance.into(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    pub fn invariant(&self) -> &Invariant {
        &self.invariant
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn modular_form(&self) -> Option<&MfElement> {
        match &self.invariant {
            Invariant::ModularForm(f) => Some(f),
            _ => None,
        }
    }

    pub fn coset(&self) -> Option<&Coset> {
        match &self.invariant {
            Invariant::Coset(c) => Some(c),
            _ => None,
        }
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match &self.invariant {
            Invariant::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn series(&self) -> Option<&QSeries> {
        match &self.invariant {
            Invariant::Series(s) => Some(s),
            _ => None,
        }
    }

    /// Short human-readable form of the invariant.
    pub fn invariant_summary(&self) -> String {
        match &self.invariant {
            Invariant::ModularForm(f) => f.to_string(),
            Invariant::Coset(c) => format!("{} mod MF_{}", describe_rep(c.rep()), c.weight()),
            Invariant::Rational(r) => r.to_string(),
            Invariant::Series(s) => describe_rep(s),
        }
    }
}

fn describe_rep(s: &QSeries) -> String {
    let head = s.truncate(s.valuation() + 4).unwrap_or_else(|_| s.clone());
    if head.horizon() < s.horizon() {
        format!("{head} + O(q^{})", head.horizon())
    } else {
        head.to_string()
    }
}

/// The built-in witnesses, expanded to a fixed number of terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    terms: i64,
    witnesses: Vec<Witness>,
}

impl Catalog {
    pub fn standard(terms: i64) -> Result<Self> {
        let e2 = generator(GeneratorName::E2, terms)?;
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let d4s3 = Coset::new(2, e2.scale(&r(1, 12)))?;
        let witnesses = vec![
            Witness::new(
                "D2S1",
                2,
                WitnessKind::RelativeDirac,
                Invariant::Rational(r(1, 2)),
                "relative Dirac index of (D^2, S^1_Lie): 1/2, half the spin^c index of CP^1",
            )?,
            Witness::new(
                "CP1",
                2,
                WitnessKind::RelativeDirac,
                Invariant::Rational(r(1, 1)),
                "spin^c index of CP^1 = 2[D^2, S^1_Lie]: 1",
            )?,
            Witness::new(
                "BOTT8",
                8,
                WitnessKind::SpinIndex,
                Invariant::Rational(r(1, 1)),
                "closed spin 8-manifold with Dirac index 1 (Bott element)",
            )?,
            Witness::new(
                "D4S3",
                4,
                WitnessKind::RelativeWitten,
                Invariant::Coset(d4s3.clone()),
                "relative Witten genus of (D^4, S^3_Lie): E2/12 modulo weight-2 modular forms",
            )?,
            Witness::new(
                "K3",
                4,
                WitnessKind::SpinWitten,
                Invariant::Series(e2.scale(&r(2, 1))),
                "spin Witten genus of the K3 surface, [K3] = 24[D^4, S^3_Lie]: 2E2",
            )?,
            Witness::new(
                "U_ETA3",
                4,
                WitnessKind::RelativeWitten,
                Invariant::Coset(coset_scale(&r(12, 1), &d4s3)),
                "relative class of the Lie framing cubed, [S^1_Lie]^3 = 12[S^3_Lie]: E2 modulo weight-2 modular forms",
            )?,
            Witness::new(
                "L24_STRING",
                24,
                WitnessKind::StringClass,
                Invariant::ModularForm(MfElement::delta_power(1).scale(&r(24, 1))),
                "string Witten genus of the normalized degree-24 Toda bracket manifold: 24 Delta",
            )?,
            Witness::new(
                "USPIN76",
                76,
                WitnessKind::RelativeWitten,
                Invariant::Coset(Coset::new(
                    38,
                    e2.mul(&generator(GeneratorName::Delta, terms)?.pow(3)?),
                )?),
                "relative Witten genus of the degree-76 spin manifold with string boundary: E2 Delta^3 modulo weight-38 modular forms",
            )?,
        ];
        Ok(Catalog { terms, witnesses })
    }

    pub fn terms(&self) -> i64 {
        self.terms
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn get(&self, name: &str) -> Result<&Witness> {
        self.witnesses
            .iter()
            .find(|w| w.name == name)
            .ok_or_else(|| Error::MissingWitness(name.to_string()))
    }

    /// A copy of the catalog with one entry removed.
    pub fn without(&self, name: &str) -> Catalog {
        Catalog {
            terms: self.terms,
            witnesses: self.witnesses.iter().filter(|w| w.name != name).cloned().collect(),
        }
    }

    pub fn with(mut self, w: Witness) -> Catalog {
        self.witnesses.retain(|x| x.name != w.name);
        self.witnesses.push(w);
        self
    }
}

/// The standard catalog at the default precision.
pub fn catalog() -> Catalog {
    Catalog::standard(DEFAULT_TERMS).expect("the standard catalog is well formed")
}

/// A string class realizing the smallest positive multiple of `Δ^d` in the
/// Witten image lattice, `24/gcd(24, d) · Δ^d`.
pub fn image_realizer(d: i64) -> Witness {
    let m = Monomial::delta_power(d);
    let a = BigRational::from_integer(BigInt::from(m.lattice_multiplier()));
    Witness::new(
        format!("REALIZER_{d}"),
        24 * d,
        WitnessKind::StringClass,
        Invariant::ModularForm(MfElement::monomial(m, a.clone())),
        format!("string class with Witten genus {a}*Delta^{d}, the minimal multiple in the image lattice"),
    )
    .expect("minimal lattice multiples are realizable")
}

/// `[L] · [M, N]`, whose relative Witten genus is `Wit(L) · Wit_rel(M, N)`.
pub fn product_witness(s: &Witness, r: &Witness) -> Result<Witness> {
    let (Some(f), Some(c)) = (s.modular_form(), r.coset()) else {
        return Err(invalid(format!(
            "product needs a string class and a relative Witten class, got {} and {}",
            s.kind, r.kind
        )));
    };
    Witness::new(
        format!("{}*{}", s.name, r.name),
        s.degree + r.degree,
        WitnessKind::RelativeWitten,
        Invariant::Coset(mf_action(f, c)?),
        format!("product of {} with {} via the module action of Witten genera", s.name, r.name),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub description: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub result: Coset,
    pub steps: Vec<DerivationStep>,
}

/// Recomputes the degree-76 relative class from the catalog inputs:
/// `(1/24³) · Wit(L24)³ · 12 · Wit_rel(D4S3)`.
pub fn derive_uspin76(catalog: &Catalog) -> Result<Derivation> {
    let l24 = catalog
        .get("L24_STRING")?
        .modular_form()
        .ok_or_else(|| invalid("L24_STRING must be a string class"))?;
    let d4s3 = catalog
        .get("D4S3")?
        .coset()
        .ok_or_else(|| invalid("D4S3 must be a relative Witten class"))?;
    derive_relative_76(l24, d4s3)
}

/// The same chain with explicit inputs, so that alternative choices of the
/// degree-24 Witten genus can be compared.
pub fn derive_relative_76(l24: &MfElement, d4s3: &Coset) -> Result<Derivation> {
    let cube = l24.pow(3);
    let twelve = BigRational::from_integer(12.into());
    let u_eta3 = coset_scale(&twelve, d4s3);
    let acted = mf_action(&cube, &u_eta3)?;
    let k = BigRational::from_integer(BigInt::from(24).pow(3));
    let result = coset_scale(&(BigRational::one() / k), &acted);
    let steps = vec![
        DerivationStep {
            description: "cube the Witten genus of L24".into(),
            value: cube.to_string(),
        },
        DerivationStep {
            description: "12 times the relative class of (D^4, S^3_Lie)".into(),
            value: format!("{} mod MF_{}", describe_rep(u_eta3.rep()), u_eta3.weight()),
        },
        DerivationStep {
            description: "act by the cube on the relative class".into(),
            value: format!("{} mod MF_{}", describe_rep(acted.rep()), acted.weight()),
        },
        DerivationStep {
            description: "divide by 24^3".into(),
            value: format!("{} mod MF_{}", describe_rep(result.rep()), result.weight()),
        },
    ];
    Ok(Derivation { result, steps })
}

/// Outcome of a named consistency check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Degree/weight coherence, K3 and U_ETA3 relations, lattice membership of
/// string classes, and the degree-76 derivation.
pub fn catalog_coherence(catalog: &Catalog) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for w in catalog.witnesses() {
        if let Some(c) = w.coset() {
            checks.push(Check {
                name: format!("{}: weight = degree/2", w.name),
                passed: c.weight() * 2 == w.degree,
                detail: format!("weight {}, degree {}", c.weight(), w.degree),
            });
        }
        if let Some(f) = w.modular_form() {
            checks.push(Check {
                name: format!("{}: Witten genus in image lattice", w.name),
                passed: image_lattice_contains(f).contained,
                detail: f.to_string(),
            });
        }
    }
    let d4s3 = catalog
        .get("D4S3")?
        .coset()
        .ok_or_else(|| invalid("D4S3 must be a relative Witten class"))?;
    let k3 = catalog
        .get("K3")?
        .series()
        .ok_or_else(|| invalid("K3 must carry a Witten genus series"))?;
    let k3_class = Coset::new(2, k3.clone())?;
    checks.push(Check {
        name: "K3 = 24 D4S3 modulo MF_2".into(),
        passed: coset_equal(&coset_scale(&BigRational::from_integer(24.into()), d4s3), &k3_class)?,
        detail: describe_rep(k3),
    });
    let u = catalog
        .get("U_ETA3")?
        .coset()
        .ok_or_else(|| invalid("U_ETA3 must be a relative Witten class"))?;
    checks.push(Check {
        name: "U_ETA3 = 12 D4S3".into(),
        passed: *u == coset_scale(&BigRational::from_integer(12.into()), d4s3),
        detail: describe_rep(u.rep()),
    });
    let derived = derive_uspin76(catalog)?;
    let u76 = catalog
        .get("USPIN76")?
        .coset()
        .ok_or_else(|| invalid("USPIN76 must be a relative Witten class"))?;
    checks.push(Check {
        name: "USPIN76 from L24 and D4S3".into(),
        passed: coset_equal(&derived.result, u76)?,
        detail: describe_rep(derived.result.rep()),
    });
    Ok(checks)
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    name: String,
    degree: i64,
    kind: WitnessKind,
    invariant: serde_json::Value,
    provenance: String,
}

impl From<Witness> for WitnessJson {
    fn from(w: Witness) -> Self {
        let invariant = match &w.invariant {
            Invariant::ModularForm(f) => serde_json::to_value(f),
            Invariant::Coset(c) => serde_json::to_value(c),
            Invariant::Rational(r) => serde_json::to_value(RationalJson::from(r)),
            Invariant::Series(s) => serde_json::to_value(s),
        }
        .expect("invariants serialize");
        WitnessJson {
            name: w.name,
            degree: w.degree,
            kind: w.kind,
            invariant,
            provenance: w.provenance,
        }
    }
}

impl TryFrom<WitnessJson> for Witness {
    type Error = Error;

    fn try_from(j: WitnessJson) -> Result<Self> {
        let parse = |e: serde_json::Error| Error::Parse(e.to_string());
        let invariant = match j.kind {
            WitnessKind::StringClass => Invariant::ModularForm(serde_json::from_value(j.invariant).map_err(parse)?),
            WitnessKind::RelativeWitten => Invariant::Coset(serde_json::from_value(j.invariant).map_err(parse)?),
            WitnessKind::RelativeDirac | WitnessKind::SpinIndex => {
                let r: RationalJson = serde_json::from_value(j.invariant).map_err(parse)?;
                Invariant::Rational(BigRational::try_from(&r)?)
            }
            WitnessKind::SpinWitten => Invariant::Series(serde_json::from_value(j.invariant).map_err(parse)?),
        };
        Witness::new(j.name, j.degree, j.kind, invariant, j.provenance)
    }
}

impl Invariant {
    pub fn is_zero(&self) -> bool {
        match self {
            Invariant::ModularForm(f) => f.is_zero(),
            Invariant::Coset(c) => c.rep().is_zero(),
            Invariant::Rational(r) => r.is_zero(),
            Invariant::Series(s) => s.is_zero(),
        }
    }
}

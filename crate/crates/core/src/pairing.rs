//! The integral Anderson duality pairings, evaluated on rational invariants.
//!
//! For SQFT the pairing of `φ ∈ MF_{-d/2}` with a relative class of degree
//! `d − 20` is the constant term of `½ · Δ · φ · Wit_rel`. The integrand has
//! total weight 2, so changing the representative of `Wit_rel` by a modular
//! form changes it by a weight-2 form, whose constant term vanishes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::cosets::Coset;
use crate::error::{invalid, Error, Result};
use crate::mfring::{basis, max_leading_exponent, Expander, MfElement, Monomial};
use crate::qseries::{generator, GeneratorName, QSeries, RationalJson};
use crate::witnesses::{Witness, WitnessKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingResult {
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub d: i64,
    pub integral: bool,
    /// Weights of `Δ`, `φ` and the relative class (SQFT only).
    pub weights: Vec<i64>,
}

pub(crate) fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    RationalJson::from(r).serialize(s)
}

impl PairingResult {
    fn new(value: BigRational, d: i64, weights: Vec<i64>) -> Self {
        PairingResult {
            integral: value.is_integer(),
            value,
            d,
            weights,
        }
    }
}

/// `⟨φ, w⟩` for a relative Witten class `w` of degree `d − 20`.
pub fn pair_sqft(phi: &MfElement, w: &Witness) -> Result<PairingResult> {
    let c = w.coset().filter(|_| w.kind() == WitnessKind::RelativeWitten).ok_or_else(|| {
        invalid(format!(
            "{} is {}, the SQFT pairing needs a RELATIVE_WITTEN class",
            w.name(),
            w.kind()
        ))
    })?;
    pair_sqft_coset(phi, c)
}

/// `⟨φ, c⟩` for a class `c` of weight `(d − 20)/2`.
pub fn pair_sqft_coset(phi: &MfElement, c: &Coset) -> Result<PairingResult> {
    let d = 2 * c.weight() + 20;
    if d % 4 != 0 {
        return Err(invalid(format!("pairing degree {d} is not divisible by 4")));
    }
    let weights = vec![12, -d / 2, c.weight()];
    if !phi.is_zero() && phi.weight() != -d / 2 {
        return Err(invalid(format!(
            "phi has weight {}, a class of weight {} pairs with weight {}",
            phi.weight(),
            c.weight(),
            -d / 2
        )));
    }
    let value = constant_term(phi, c.rep())?;
    Ok(PairingResult::new(value, d, weights))
}

/// Constant term of `½ Δ φ rep`, expanding each factor only as far as q⁰ needs.
fn constant_term(phi: &MfElement, rep: &QSeries) -> Result<BigRational> {
    let Some(phi_val) = phi.valuation() else {
        return Ok(BigRational::zero());
    };
    let v = 1 + phi_val + rep.valuation();
    if v > 0 {
        return Ok(BigRational::zero());
    }
    let need = 1 - v;
    if rep.precision() < need {
        return Err(Error::InsufficientPrecision {
            needed: 0,
            valuation: v,
            horizon: v + rep.precision(),
        });
    }
    let delta = generator(GeneratorName::Delta, need)?;
    let integrand = delta
        .mul(&phi.expand(need)?)
        .mul(&rep.truncate(rep.valuation() + need)?);
    Ok(integrand.coefficient(0)? / BigRational::from_integer(2.into()))
}

/// `⟨x, w⟩ = x · Ind_rel(w)` for a relative Dirac class of degree `d − 2`.
pub fn pair_sqm(x: &BigRational, w: &Witness) -> Result<PairingResult> {
    let idx = w.rational().filter(|_| w.kind() == WitnessKind::RelativeDirac).ok_or_else(|| {
        invalid(format!(
            "{} is {}, the SQM pairing needs a RELATIVE_DIRAC class",
            w.name(),
            w.kind()
        ))
    })?;
    Ok(PairingResult::new(x * idx, w.degree() + 2, Vec::new()))
}

/// Change of the pairing when `perturbation` is added to the representative.
pub fn perturbation_delta(phi: &MfElement, c: &Coset, perturbation: &QSeries) -> Result<BigRational> {
    let base = pair_sqft_coset(phi, c)?.value;
    let moved = Coset::new(c.weight(), c.rep().add(perturbation))?;
    Ok(pair_sqft_coset(phi, &moved)?.value - base)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub member: String,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDefinedness {
    pub witness: String,
    pub phi: String,
    pub trials: usize,
    #[serde(serialize_with = "ser_rational")]
    pub base: BigRational,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    /// Change caused by adding the non-member `E2 · q^n`.
    #[serde(serialize_with = "ser_rational")]
    pub control_delta: BigRational,
    pub control_detected: bool,
}

/// Adds `trials` seeded random integer combinations of basis monomials of
/// weight `(d − 20)/2` (with `Δ`-exponents in `[d_min, top]`) to the
/// representative of `w` and checks the pairing does not move. A quasi-modular
/// control `E2 · q^n` is also added and must move it.
pub fn well_definedness_check(
    phi: &MfElement,
    w: &Witness,
    trials: usize,
    seed: u64,
    d_min: i64,
) -> Result<WellDefinedness> {
    let c = w
        .coset()
        .ok_or_else(|| invalid(format!("{} is not a relative Witten class", w.name())))?;
    let base = pair_sqft(phi, w)?.value;
    let weight = c.weight();
    let horizon = c.rep().horizon();
    let top = max_leading_exponent(weight).expect("coset weights are even");
    let monomials: Vec<Monomial> = if d_min <= top {
        basis(weight, d_min, top)?
    } else {
        Vec::new()
    };
    let mut counterexample = None;
    if trials > 0 && monomials.is_empty() {
        return Err(invalid(format!("no weight-{weight} basis monomials with d >= {d_min}")));
    }
    let mut ex = Expander::new(horizon - d_min.min(c.rep().valuation()))?;
    let mut expanded: Vec<Option<QSeries>> = vec![None; monomials.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let count = rng.gen_range(1..=5usize.min(monomials.len()));
        let mut member = MfElement::zero(weight);
        let mut series: Option<QSeries> = None;
        for _ in 0..count {
            let idx = rng.gen_range(0..monomials.len());
            let mut k: i64 = rng.gen_range(-5..=4);
            if k >= 0 {
                k += 1;
            }
            let coeff = BigRational::from_integer(BigInt::from(k));
            member = member.add(&MfElement::monomial(monomials[idx], coeff.clone()))?;
            if expanded[idx].is_none() {
                expanded[idx] = Some(ex.monomial(&monomials[idx], horizon)?);
            }
            let term = expanded[idx].as_ref().expect("just filled").scale(&coeff);
            series = Some(match series {
                Some(s) => s.add(&term),
                None => term,
            });
        }
        let series = series.expect("at least one monomial");
        let delta = perturbation_delta(phi, c, &series)?;
        if !delta.is_zero() && counterexample.is_none() {
            counterexample = Some(Counterexample {
                trial,
                member: member.to_string(),
                value: delta,
            });
        }
    }
    let control_delta = match phi.valuation() {
        Some(v) => {
            let n = -(1 + v);
            let terms = (horizon - n).max(1);
            let control = generator(GeneratorName::E2, terms)?.shift(n);
            perturbation_delta(phi, c, &control)?
        }
        None => BigRational::zero(),
    };
    Ok(WellDefinedness {
        witness: w.name().to_string(),
        phi: phi.to_string(),
        trials,
        base,
        passed: counterexample.is_none(),
        counterexample,
        control_detected: !control_delta.is_zero(),
        control_delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witnesses::{image_realizer, product_witness, Catalog};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn cat() -> Catalog {
        Catalog::standard(40).unwrap()
    }

    #[test]
    fn delta_inverse_with_d4s3() {
        let c = cat();
        let res = pair_sqft(&MfElement::delta_power(-1), c.get("D4S3").unwrap()).unwrap();
        assert_eq!(res.value, r(1, 24));
        assert_eq!(res.d, 24);
        assert!(!res.integral);
        assert_eq!(res.weights, vec![12, -12, 2]);
        assert_eq!(res.weights.iter().sum::<i64>(), 2);
    }

    #[test]
    fn sixteen_and_twelve() {
        let c = cat();
        let w16 = product_witness(&image_realizer(15), c.get("D4S3").unwrap()).unwrap();
        assert_eq!(pair_sqft(&MfElement::delta_power(-16), &w16).unwrap().value, r(1, 3));
        let w12 = product_witness(&image_realizer(8), c.get("USPIN76").unwrap()).unwrap();
        let res = pair_sqft(&MfElement::delta_power(-12), &w12).unwrap();
        assert_eq!(res.value, r(3, 2));
        assert_eq!(res.d, 288);
    }

    #[test]
    fn zero_phi_pairs_to_zero() {
        let c = cat();
        let res = pair_sqft(&MfElement::zero(-12), c.get("D4S3").unwrap()).unwrap();
        assert_eq!(res.value, r(0, 1));
        assert!(res.integral);
    }

    #[test]
    fn weight_mismatch() {
        let c = cat();
        assert!(matches!(
            pair_sqft(&MfElement::delta_power(-2), c.get("D4S3").unwrap()),
            Err(Error::InvalidArgument(_))
        ));
        assert!(pair_sqft(&MfElement::delta_power(-1), c.get("D2S1").unwrap()).is_err());
    }

    #[test]
    fn insufficient_window() {
        let rep = generator(GeneratorName::E2, 3).unwrap();
        let coset = Coset::new(2, rep).unwrap();
        let phi = crate::expr::parse_element("Delta^-4*c4^9").unwrap();
        assert!(matches!(
            pair_sqft_coset(&phi, &coset),
            Err(Error::InsufficientPrecision { needed: 0, .. })
        ));
    }

    #[test]
    fn sqm_values() {
        let c = cat();
        let w = c.get("D2S1").unwrap();
        assert_eq!(pair_sqm(&r(1, 1), w).unwrap().value, r(1, 2));
        assert!(pair_sqm(&r(2, 1), w).unwrap().integral);
        assert_eq!(pair_sqm(&r(0, 1), w).unwrap().value, r(0, 1));
        assert!(pair_sqm(&r(1, 1), c.get("D4S3").unwrap()).is_err());
    }

    #[test]
    fn well_defined_on_d4s3() {
        let c = cat();
        let rec = well_definedness_check(&MfElement::delta_power(-1), c.get("D4S3").unwrap(), 20, 7, -25).unwrap();
        assert!(rec.passed);
        assert_eq!(rec.base, r(1, 24));
        assert!(rec.control_detected);
        let vacuous = well_definedness_check(&MfElement::delta_power(-1), c.get("D4S3").unwrap(), 0, 7, -25).unwrap();
        assert!(vacuous.passed);
    }

    #[test]
    fn json_shape() {
        let c = cat();
        let res = pair_sqft(&MfElement::delta_power(-1), c.get("D4S3").unwrap()).unwrap();
        let v = serde_json::to_value(&res).unwrap();
        assert_eq!(v["value"]["num"], "1");
        assert_eq!(v["value"]["den"], "24");
        assert_eq!(v["weights"], serde_json::json!([12, -12, 2]));
    }
}

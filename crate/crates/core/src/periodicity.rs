//! Divisibility obstructions and the periodicity lower bounds they imply.
//!
//! Every modulus reported here is the denominator of a pairing that is
//! recomputed from the catalog on each call. Removing a witness from the
//! catalog makes the dependent case fail with [`Error::MissingWitness`].

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::mfring::{image_lattice_coefficient, MfElement, Monomial};
use crate::pairing::{pair_sqft, pair_sqm, ser_rational};
use crate::witnesses::{image_realizer, product_witness, Catalog, Witness};

const CITE_PAIRING: &str = "integrality of the Anderson duality pairing";
const CITE_WEIGHT_TWO: &str = "constant terms of weight-2 weakly holomorphic forms vanish";
const CITE_LATTICE: &str = "Witten image lattice multipliers 24/gcd(24,d)";
const CITE_PRODUCT: &str = "module action of Witten genera on relative Witten genera";
const CITE_UNITS: &str = "units of the modular forms ring are exactly the powers ±Delta^d";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    /// The hypothetical image element, `k·Δ^{-d}`.
    pub target: String,
    pub delta_exponent: i64,
    pub witness_chain: Vec<String>,
    /// `c` with `⟨k·Δ^{-d}, w⟩ = c·k`.
    #[serde(serialize_with = "ser_rational")]
    pub pairing_coefficient: BigRational,
    /// Denominator of `c`: integrality forces `modulus | k`.
    pub modulus: u64,
    pub citations: Vec<String>,
}

fn witness_for(catalog: &Catalog, d: i64) -> Result<Option<Witness>> {
    Ok(match d {
        1 => Some(catalog.get("D4S3")?.clone()),
        16 => Some(product_witness(&image_realizer(15), catalog.get("D4S3")?)?),
        12 => Some(product_witness(&image_realizer(8), catalog.get("USPIN76")?)?),
        _ => None,
    })
}

fn report(target_d: i64, w: &Witness, extra: &[&str]) -> Result<ObstructionReport> {
    let phi = MfElement::delta_power(-target_d);
    let res = pair_sqft(&phi, w)?;
    let modulus = res
        .value
        .denom()
        .to_u64()
        .ok_or_else(|| invalid("pairing denominator out of range"))?;
    let mut citations = vec![CITE_PAIRING.to_string(), CITE_WEIGHT_TWO.to_string()];
    citations.extend(extra.iter().map(|s| s.to_string()));
    Ok(ObstructionReport {
        target: format!("k*Delta^-{target_d}"),
        delta_exponent: -target_d,
        witness_chain: w.name().split('*').map(str::to_string).collect(),
        pairing_coefficient: res.value,
        modulus,
        citations,
    })
}

/// The obstruction to `k·Δ^{-d}` lying in the image, for the exponents the
/// catalog has witnesses for (`d ∈ {1, 12, 16}`); `None` otherwise.
pub fn obstruct_delta_power(catalog: &Catalog, d: i64) -> Result<Option<ObstructionReport>> {
    if d < 1 {
        return Err(invalid(format!("exponent must be positive, got {d}")));
    }
    let Some(w) = witness_for(catalog, d)? else {
        return Ok(None);
    };
    let extra: &[&str] = match d {
        1 => &["relative Witten genus of (D^4, S^3_Lie) is E2/12"],
        16 => &[CITE_LATTICE, CITE_PRODUCT],
        _ => &[CITE_LATTICE, CITE_PRODUCT, "relative Witten genus E2 Delta^3 in degree 76"],
    };
    report(d, &w, extra).map(Some)
}

/// Minimal `n ≥ 1` with `n·d ≡ 12 (mod 24)`, together with `m = (n·d + 12)/24`,
/// so that `(Δ^d)^n · (Δ^{-24})^m = Δ^{-12}`.
pub fn reduction_exponents(d: i64) -> Option<(u64, u64)> {
    (1..=24i64)
        .find(|n| (n * d).rem_euclid(24) == 12)
        .map(|n| (n as u64, ((n * d + 12) / 24) as u64))
}

/// The `d = 12` attempt with the naive witness `24Δ^{11} · [D^4, S^3_Lie]`.
/// Its coefficient is an integer, so it obstructs nothing.
pub fn naive_twelve_obstruction(catalog: &Catalog) -> Result<ObstructionReport> {
    let w = product_witness(&image_realizer(11), catalog.get("D4S3")?)?;
    report(12, &w, &[CITE_LATTICE, CITE_PRODUCT])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseEntry {
    pub d: i64,
    pub method: String,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub chain: String,
    pub modulus: Option<u64>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub pairing: Option<BigRational>,
    pub excluded: bool,
    pub citations: Vec<String>,
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_rational(r, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub spectrum: String,
    pub bound: u64,
    /// Degrees that can carry a unit are multiples of this.
    pub grading_step: u64,
    pub cases: Vec<CaseEntry>,
    /// Why the first candidate past the table is not excluded.
    pub boundary: String,
    pub conclusion: String,
}

/// Lower bound on the periodicity of the image of the SQFT pairing
/// (units are `±Δ^d`, so candidate periods are `24d`).
pub fn sqft_lower_bound(catalog: &Catalog) -> Result<LowerBoundReport> {
    let step = (2 * Monomial::delta_power(1).weight()) as u64;
    let twelve = obstruct_delta_power(catalog, 12)?.ok_or_else(|| Error::MissingWitness("USPIN76".into()))?;
    let sixteen = obstruct_delta_power(catalog, 16)?.ok_or_else(|| Error::MissingWitness("D4S3".into()))?;
    let a24 = image_lattice_coefficient(0, 0, -24)?;
    let mut cases = Vec::new();
    let mut d = 1i64;
    let boundary = loop {
        let entry = match reduction_exponents(d) {
            Some((n, m)) => {
                if a24 != 1 {
                    return Err(invalid("Delta^-24 is not a lattice generator"));
                }
                CaseEntry {
                    d,
                    method: "reduction".into(),
                    n: Some(n),
                    m: Some(m),
                    chain: format!("(Delta^{d})^{n} * (Delta^-24)^{m} = Delta^-12"),
                    modulus: Some(twelve.modulus),
                    pairing: Some(twelve.pairing_coefficient.clone()),
                    excluded: twelve.modulus > 1,
                    citations: [CITE_UNITS, CITE_LATTICE]
                        .iter()
                        .map(|s| s.to_string())
                        .chain(twelve.citations.iter().cloned())
                        .collect(),
                }
            }
            None if 16 % d == 0 => {
                let n = (16 / d) as u64;
                CaseEntry {
                    d,
                    method: "obstruction".into(),
                    n: Some(n),
                    m: None,
                    chain: format!("(Delta^-{d})^{n} = Delta^-16"),
                    modulus: Some(sixteen.modulus),
                    pairing: Some(sixteen.pairing_coefficient.clone()),
                    excluded: sixteen.modulus > 1,
                    citations: std::iter::once(CITE_UNITS.to_string())
                        .chain(sixteen.citations.iter().cloned())
                        .collect(),
                }
            }
            None => {
                break format!(
                    "Delta^{d} has lattice multiplier {} and no catalog witness obstructs it",
                    image_lattice_coefficient(0, 0, d)?
                )
            }
        };
        if !entry.excluded {
            break format!("case d = {d} is not obstructed");
        }
        cases.push(entry);
        d += 1;
    };
    let bound = step * d as u64;
    Ok(LowerBoundReport {
        spectrum: "SQFT".into(),
        bound,
        grading_step: step,
        cases,
        boundary,
        conclusion: format!("no unit of the image ring in degree 24d for 0 < d < {d}; periodicity is at least {bound}"),
    })
}

/// Lower bound on the periodicity of the image of the SQM pairing
/// (rational image concentrated in degrees `4Z`).
pub fn sqm_lower_bound(catalog: &Catalog) -> Result<LowerBoundReport> {
    let step = 4u64;
    let d2s1 = catalog.get("D2S1")?;
    let bott = catalog.get("BOTT8")?;
    let bott_index = bott
        .rational()
        .ok_or_else(|| invalid("BOTT8 must carry a spin index"))?
        .clone();
    let res = pair_sqm(&BigRational::one(), d2s1)?;
    let modulus = res
        .value
        .denom()
        .to_u64()
        .ok_or_else(|| invalid("pairing denominator out of range"))?;
    let mut cases = Vec::new();
    let mut n = 1i64;
    let boundary = loop {
        let entry = if n % step as i64 != 0 {
            CaseEntry {
                d: n,
                method: "unit-grading".into(),
                n: None,
                m: None,
                chain: format!("the rational image vanishes in degree {n}"),
                modulus: None,
                pairing: None,
                excluded: true,
                citations: vec!["the image lies in the 4Z-periodic rational Eilenberg-MacLane spectrum".into()],
            }
        } else if n % 8 == 4 {
            // x in degree n and its inverse y in degree -n, shifted by the Bott
            // class into degree -4, both lie in modulus·Z; then modulus² | xy = 1.
            let sq = modulus * modulus;
            CaseEntry {
                d: n,
                method: "obstruction".into(),
                n: None,
                m: None,
                chain: format!(
                    "x*y = 1 with x, y in {modulus}Z (after shifting by BOTT8, index {bott_index}) forces {sq} | 1"
                ),
                modulus: Some(modulus),
                pairing: Some(res.value.clone()),
                excluded: bott_index.abs().is_one() && modulus > 1,
                citations: vec![
                    CITE_PAIRING.into(),
                    "relative Dirac index of (D^2, S^1_Lie) is 1/2".into(),
                    "closed spin 8-manifold with Dirac index 1".into(),
                ],
            }
        } else {
            break format!("BOTT8 realizes the unit {bott_index} in degree {n}");
        };
        if !entry.excluded {
            break format!("case n = {n} is not obstructed");
        }
        cases.push(entry);
        n += 1;
    };
    let bound = n as u64;
    Ok(LowerBoundReport {
        spectrum: "SQM".into(),
        bound,
        grading_step: step,
        cases,
        boundary,
        conclusion: format!("no unit of the image ring in degree n for 0 < n < {bound}; periodicity is at least {bound}"),
    })
}

/// Whether `n·d ≡ 12 (mod 24)` is solvable, i.e. `gcd(d, 24) | 12`.
pub fn reduction_possible(d: i64) -> bool {
    12i64.is_multiple_of(&24i64.gcd(&d))
}

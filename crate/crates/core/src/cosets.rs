//! Classes in `Q((q)) / MF_w^Q`, the codomain of the relative Witten genus.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::mfring::{reduce, MfElement};
use crate::qseries::QSeries;

/// A class `rep mod MF_weight^Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CosetJson", into = "CosetJson")]
pub struct Coset {
    weight: i64,
    rep: QSeries,
    canonical: bool,
}

impl Coset {
    pub fn new(weight: i64, rep: QSeries) -> Result<Self> {
        if weight % 2 != 0 {
            return Err(invalid(format!("coset weight must be even, got {weight}")));
        }
        Ok(Coset {
            weight,
            rep,
            canonical: false,
        })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn rep(&self) -> &QSeries {
        &self.rep
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Subtracts the weight-`w` basis monomials so that the representative
    /// vanishes at every leading exponent of the basis.
    pub fn canonicalize(&self) -> Result<Coset> {
        if self.canonical {
            return Ok(self.clone());
        }
        let red = reduce(&self.rep, self.weight)?;
        Ok(Coset {
            weight: self.weight,
            rep: red.remainder,
            canonical: true,
        })
    }

    pub fn add(&self, other: &Coset) -> Result<Coset> {
        check_weights(self, other)?;
        Coset::new(self.weight, self.rep.add(&other.rep))
    }

    /// Adds a modular form of the coset's weight, which leaves the class unchanged.
    pub fn add_member(&self, m: &MfElement) -> Result<Coset> {
        if !m.is_zero() && m.weight() != self.weight {
            return Err(Error::MixedWeight {
                expected: self.weight,
                found: m.weight(),
            });
        }
        let s = m.expand_to(self.rep.horizon())?;
        Coset::new(self.weight, self.rep.add(&s))
    }
}

fn check_weights(a: &Coset, b: &Coset) -> Result<()> {
    if a.weight != b.weight {
        return Err(invalid(format!(
            "cosets of different weights {} and {}",
            a.weight, b.weight
        )));
    }
    Ok(())
}

pub fn canonicalize(c: &Coset) -> Result<Coset> {
    c.canonicalize()
}

/// Equality in `Q((q))/MF_w^Q` on the common window.
pub fn coset_equal(a: &Coset, b: &Coset) -> Result<bool> {
    check_weights(a, b)?;
    Ok(reduce(&a.rep.sub(&b.rep), a.weight)?.is_member())
}

/// `f · c`, a class of weight `f.weight() + c.weight()`.
///
/// The representative window keeps the relative precision of `c`.
pub fn mf_action(f: &MfElement, c: &Coset) -> Result<Coset> {
    let weight = f.weight() + c.weight;
    if f.is_zero() {
        return Coset::new(weight, c.rep.scale(&BigRational::from_integer(0.into())));
    }
    let s = f.expand(c.rep.precision())?;
    Coset::new(weight, s.mul(&c.rep))
}

pub fn coset_scale(r: &BigRational, c: &Coset) -> Coset {
    Coset {
        weight: c.weight,
        rep: c.rep.scale(r),
        canonical: c.canonical,
    }
}

#[derive(Serialize, Deserialize)]
struct CosetJson {
    weight: i64,
    rep: QSeries,
    canonical: bool,
}

impl From<Coset> for CosetJson {
    fn from(c: Coset) -> Self {
        CosetJson {
            weight: c.weight,
            rep: c.rep,
            canonical: c.canonical,
        }
    }
}

impl TryFrom<CosetJson> for Coset {
    type Error = Error;

    fn try_from(j: CosetJson) -> Result<Self> {
        let c = Coset::new(j.weight, j.rep)?;
        if j.canonical {
            c.canonicalize()
        } else {
            Ok(c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::qseries::{generator, GeneratorName};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn e2_over(k: i64, terms: i64) -> Coset {
        let e2 = generator(GeneratorName::E2, terms).unwrap();
        Coset::new(2, e2.scale(&q(1, k))).unwrap()
    }

    #[test]
    fn e2_twelfth_is_already_canonical() {
        let c = e2_over(12, 30);
        assert_eq!(c.canonicalize().unwrap().rep(), c.rep());
    }

    #[test]
    fn canonicalize_strips_basis_monomial() {
        let c = e2_over(12, 30);
        let m = parse_element("c4^2*c6*Delta^-1").unwrap();
        let shifted = Coset::new(2, c.rep().add(&m.expand(31).unwrap())).unwrap();
        let canon = shifted.canonicalize().unwrap();
        assert!(canon.rep().agrees_with(c.rep()));
        assert!(canon.canonicalize().unwrap() == canon);
    }

    #[test]
    fn zero_canonicalizes_to_zero() {
        let c = Coset::new(8, QSeries::zero(0, 10).unwrap()).unwrap();
        assert!(c.canonicalize().unwrap().rep().is_zero());
    }

    #[test]
    fn equality_modulo_members() {
        let c = e2_over(12, 30);
        let m = parse_element("3*c4^5*c6*Delta^-2 - c4^2*c6*Delta^-1").unwrap();
        assert!(coset_equal(&c, &c.add_member(&m).unwrap()).unwrap());
        assert!(!coset_equal(&c, &e2_over(6, 30)).unwrap());
        assert!(coset_equal(&c, &c).unwrap());
    }

    #[test]
    fn equality_requires_same_weight() {
        let a = e2_over(12, 10);
        let b = mf_action(&MfElement::c4(), &a).unwrap();
        assert!(matches!(coset_equal(&a, &b), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn odd_weight_rejected() {
        assert!(Coset::new(3, QSeries::zero(0, 1).unwrap()).is_err());
    }

    #[test]
    fn action_by_delta() {
        let c = e2_over(12, 40);
        let f = MfElement::delta_power(1).scale(&q(24, 1));
        let got = mf_action(&f, &c).unwrap();
        assert_eq!(got.weight(), 14);
        let e2 = generator(GeneratorName::E2, 40).unwrap();
        let delta = generator(GeneratorName::Delta, 40).unwrap();
        let want = Coset::new(14, e2.mul(&delta).scale(&q(2, 1))).unwrap();
        assert!(coset_equal(&got, &want).unwrap());
    }

    #[test]
    fn action_by_one_is_identity() {
        let c = e2_over(12, 20);
        assert_eq!(mf_action(&MfElement::one(), &c).unwrap().rep(), c.rep());
    }

    #[test]
    fn scaling() {
        let c = e2_over(12, 20);
        assert!(coset_scale(&q(0, 1), &c).rep().is_zero());
        let back = coset_scale(&q(13824, 1), &coset_scale(&q(1, 13824), &c));
        assert_eq!(back, c);
        let k3 = coset_scale(&q(24, 1), &c);
        let two_e2 = Coset::new(2, generator(GeneratorName::E2, 20).unwrap().scale(&q(2, 1))).unwrap();
        assert!(coset_equal(&k3, &two_e2).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let c = e2_over(12, 5);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["weight"], 2);
        assert_eq!(v["canonical"], false);
        let back: Coset = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }
}

//! Perversities: maps from singular strata to extended integers.
//!
//! Several flavors share one type. Codimensional flavors (`Gm`, `Codim`,
//! `Zero`, `Top`, `Constant`, `TopOffset`) depend only on the codimension of
//! a stratum; `Strata` assigns values per stratum id of one particular
//! complex. Every flavor is 0 on regular strata.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{FilteredComplex, Stratum};
use crate::error::{Error, Result};
use crate::ext::{ExtendedInt, Finite, PosInf};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "flavor", rename_all = "snake_case")]
pub enum Perversity {
    /// Goresky–MacPherson perversity; `values[k]` is the value at codim `k + 2`.
    Gm { values: Vec<i64> },
    /// Codimensional perversity given by its values per codimension.
    Codim {
        #[serde(deserialize_with = "numeric_keys")]
        values: BTreeMap<usize, ExtendedInt>,
    },
    /// General perversity keyed by stratum id of a fixed complex.
    Strata {
        #[serde(deserialize_with = "numeric_keys")]
        values: BTreeMap<usize, ExtendedInt>,
    },
    Named { name: Named },
    /// The constant perversity `k̄`.
    Constant { value: ExtendedInt },
    /// `t̄ + k̄`.
    TopOffset { value: ExtendedInt },
    /// `t̄ - p̄` for a perversity that has no closed form complement.
    Complement { of: Box<Perversity> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Named {
    Zero,
    Top,
}

// Internally tagged enums buffer their content, which loses serde_json's
// string-to-integer key coercion, so keys are parsed by hand.
fn numeric_keys<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<usize, ExtendedInt>, D::Error> {
    let raw = BTreeMap::<String, ExtendedInt>::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.parse::<usize>()
                .map(|k| (k, v))
                .map_err(|_| serde::de::Error::custom(format!("invalid key {k:?}")))
        })
        .collect()
}

/// `t̄(c) = c - 2`.
pub fn top_value(codim: usize) -> i64 {
    codim as i64 - 2
}

impl Perversity {
    pub fn zero() -> Self {
        Perversity::Named { name: Named::Zero }
    }

    pub fn top() -> Self {
        Perversity::Named { name: Named::Top }
    }

    pub fn gm(values: Vec<i64>) -> Self {
        Perversity::Gm { values }
    }

    pub fn constant(value: impl Into<ExtendedInt>) -> Self {
        Perversity::Constant { value: value.into() }
    }

    pub fn top_offset(value: impl Into<ExtendedInt>) -> Self {
        Perversity::TopOffset { value: value.into() }
    }

    pub fn codim(values: impl IntoIterator<Item = (usize, ExtendedInt)>) -> Self {
        Perversity::Codim { values: values.into_iter().collect() }
    }

    pub fn strata(values: impl IntoIterator<Item = (usize, ExtendedInt)>) -> Self {
        Perversity::Strata { values: values.into_iter().collect() }
    }

    /// `m̄(k) = ⌊(k-2)/2⌋` on codimensions `2..=max_codim`.
    pub fn lower_middle(max_codim: usize) -> Self {
        Perversity::gm((2..=max_codim.max(2)).map(|k| (k as i64 - 2) / 2).collect())
    }

    /// `n̄(k) = ⌈(k-2)/2⌉` on codimensions `2..=max_codim`.
    pub fn upper_middle(max_codim: usize) -> Self {
        Perversity::gm((2..=max_codim.max(2)).map(|k| (k as i64 - 1) / 2).collect())
    }

    pub fn is_codimensional(&self) -> bool {
        match self {
            Perversity::Strata { .. } => false,
            Perversity::Complement { of } => of.is_codimensional(),
            _ => true,
        }
    }

    /// Value at a codimension for codimensional flavors.
    pub fn at_codim(&self, codim: usize) -> Result<ExtendedInt> {
        if codim == 0 {
            return Ok(ExtendedInt::ZERO);
        }
        match self {
            Perversity::Gm { values } => {
                if codim == 1 {
                    return Err(Error::precondition(
                        "GM perversities are not defined on codimension-one strata",
                    ));
                }
                values
                    .get(codim - 2)
                    .map(|&v| Finite(v))
                    .ok_or_else(|| Error::precondition(format!("GM values do not cover codimension {codim}")))
            }
            Perversity::Codim { values } => values
                .get(&codim)
                .copied()
                .ok_or_else(|| Error::precondition(format!("no value for codimension {codim}"))),
            Perversity::Named { name: Named::Zero } => Ok(Finite(0)),
            Perversity::Named { name: Named::Top } => Ok(Finite(top_value(codim))),
            Perversity::Constant { value } => Ok(*value),
            Perversity::TopOffset { value } => Finite(top_value(codim)).checked_add(*value),
            Perversity::Complement { of } => Finite(top_value(codim)).checked_sub(of.at_codim(codim)?),
            Perversity::Strata { .. } => Err(Error::precondition(
                "stratum-keyed perversity has no codimension function",
            )),
        }
    }

    /// `p̄(S)`; 0 on regular strata.
    pub fn evaluate(&self, stratum: &Stratum) -> Result<ExtendedInt> {
        if stratum.is_regular() {
            return Ok(ExtendedInt::ZERO);
        }
        match self {
            Perversity::Strata { values } => {
                values.get(&stratum.id).copied().ok_or_else(|| Error::malformed(format!("no perversity value for singular stratum {}", stratum.id)))
            }
            Perversity::Complement { of } if !of.is_codimensional() => {
                Finite(top_value(stratum.codim)).checked_sub(of.evaluate(stratum)?)
            }
            _ => self.at_codim(stratum.codim),
        }
    }

    /// Evaluates on a stratum of `complex`, checking the id belongs to it.
    pub fn evaluate_on(&self, complex: &FilteredComplex, stratum_id: usize) -> Result<ExtendedInt> {
        self.evaluate(complex.stratum(stratum_id)?)
    }

    /// `Dp̄ = t̄ - p̄`.
    pub fn complement(&self) -> Perversity {
        match self {
            Perversity::Gm { values } => Perversity::Gm {
                values: values.iter().enumerate().map(|(k, v)| k as i64 - v).collect(),
            },
            Perversity::Codim { values } => Perversity::Codim {
                values: values
                    .iter()
                    .map(|(&c, v)| {
                        // t - p never hits ∞ - ∞ since t is finite
                        (c, Finite(top_value(c)).checked_sub(*v).expect("finite minus extended"))
                    })
                    .collect(),
            },
            Perversity::Named { name: Named::Zero } => Perversity::top(),
            Perversity::Named { name: Named::Top } => Perversity::zero(),
            Perversity::Constant { value } => Perversity::TopOffset { value: value.neg() },
            Perversity::TopOffset { value } => Perversity::Constant { value: value.neg() },
            Perversity::Complement { of } => (**of).clone(),
            Perversity::Strata { .. } => Perversity::Complement { of: Box::new(self.clone()) },
        }
    }

    /// Value of `Dp̄` on a stratum.
    pub fn complement_at(&self, stratum: &Stratum) -> Result<ExtendedInt> {
        if stratum.is_regular() {
            return Ok(ExtendedInt::ZERO);
        }
        Finite(top_value(stratum.codim)).checked_sub(self.evaluate(stratum)?)
    }

    /// GM condition: `p(2) = 0`, `p(k) ≤ p(k+1) ≤ p(k) + 1`.
    pub fn is_gm(&self) -> bool {
        match self {
            Perversity::Gm { values } => gm_sequence(values.iter().map(|&v| Finite(v))),
            Perversity::Codim { values } => {
                let keys: Vec<usize> = values.keys().copied().collect();
                !keys.is_empty()
                    && keys.iter().enumerate().all(|(i, &k)| k == i + 2)
                    && gm_sequence(values.values().copied())
            }
            Perversity::Named { .. } => true,
            Perversity::Constant { value } => *value == Finite(0),
            Perversity::TopOffset { value } => *value == Finite(0),
            Perversity::Complement { of } => of.is_gm(),
            Perversity::Strata { .. } => false,
        }
    }

    /// Largest codimension covered by the perversity's own data, if bounded.
    fn covered_codims(&self) -> Option<usize> {
        match self {
            Perversity::Gm { values } => Some(values.len() + 1),
            Perversity::Codim { values } => values.keys().max().copied(),
            Perversity::Complement { of } => of.covered_codims(),
            _ => None,
        }
    }

    /// `ℓ_p̄ = sup { k : p̄(k) = t̄(k) }`, computed from `p̄` directly.
    pub fn cleaving_point(&self) -> Result<ExtendedInt> {
        if !self.is_gm() {
            return Err(Error::precondition("cleaving point needs a GM perversity"));
        }
        match self.covered_codims() {
            None => {
                // unbounded flavors: t̄ + 0 and t̄ agree everywhere; 0̄ only at 2
                Ok(if self.at_codim(3)? == Finite(1) { PosInf } else { Finite(2) })
            }
            Some(max) => {
                let mut best = 2;
                for k in 2..=max {
                    if self.at_codim(k)? == Finite(top_value(k)) {
                        best = k;
                    }
                }
                Ok(Finite(best as i64))
            }
        }
    }

    /// The same number read off the zeros of `Dp̄`.
    pub fn cleaving_point_from_complement(&self) -> Result<ExtendedInt> {
        if !self.is_gm() {
            return Err(Error::precondition("cleaving point needs a GM perversity"));
        }
        let d = self.complement();
        match d.covered_codims() {
            None => Ok(if d.at_codim(3)? == Finite(0) { PosInf } else { Finite(2) }),
            Some(max) => Ok(Finite(
                (2..=max)
                    .filter(|&k| d.at_codim(k).map_or(false, |v| v == Finite(0)))
                    .max()
                    .unwrap_or(2) as i64,
            )),
        }
    }

    /// Perversity induced on the link of a singular vertex: a link stratum
    /// `T` gets the value of the stratum of `K` containing `T ∗ v`.
    pub fn induced_on_link(&self, complex: &FilteredComplex, vertex: usize) -> Result<(FilteredComplex, Perversity)> {
        if complex.is_regular_vertex(vertex) {
            return Err(Error::precondition(format!("vertex {vertex} is regular")));
        }
        let link = complex.link(vertex)?;
        let p = match self {
            Perversity::Strata { .. } => {
                let mut values = BTreeMap::new();
                for t in link.singular_strata() {
                    let tau = &link.simplices()[t.simplices[0]];
                    let sigma = tau.join(&crate::simplex::Simplex::vertex(vertex));
                    let s = complex.stratum_of(&sigma)?;
                    values.insert(t.id, self.evaluate(s)?);
                }
                Perversity::Strata { values }
            }
            Perversity::Complement { of } if !of.is_codimensional() => Perversity::Complement {
                of: Box::new(of.induced_on_link(complex, vertex)?.1),
            },
            other => other.clone(),
        };
        Ok((link, p))
    }

    /// Values on every stratum of `complex`, in stratum order.
    pub fn values_on(&self, complex: &FilteredComplex) -> Result<Vec<ExtendedInt>> {
        complex.strata().iter().map(|s| self.evaluate(s)).collect()
    }

    /// `p ≤ q` stratum-wise on `complex`.
    pub fn le_on(&self, other: &Perversity, complex: &FilteredComplex) -> Result<bool> {
        Ok(self
            .values_on(complex)?
            .iter()
            .zip(other.values_on(complex)?)
            .all(|(a, b)| *a <= b))
    }

    /// Whether `Dp̄ ≥ 0` on every singular stratum of `complex` (`p̄ ≤ t̄`).
    pub fn below_top_on(&self, complex: &FilteredComplex) -> Result<bool> {
        for s in complex.singular_strata() {
            if self.complement_at(s)? < Finite(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The equivalent `Strata` perversity on `complex`.
    pub fn on_strata(&self, complex: &FilteredComplex) -> Result<Perversity> {
        let mut values = BTreeMap::new();
        for s in complex.singular_strata() {
            values.insert(s.id, self.evaluate(s)?);
        }
        Ok(Perversity::Strata { values })
    }

    /// The perversity on `sd` (the barycentric subdivision of `complex`)
    /// taking on each stratum the value of the stratum of `complex` that
    /// contains it. Codimensional flavors are returned unchanged.
    pub fn pull_back_subdivision(&self, complex: &FilteredComplex, sd: &FilteredComplex) -> Result<Perversity> {
        if self.is_codimensional() {
            return Ok(self.clone());
        }
        let all = complex.simplices();
        let mut values = BTreeMap::new();
        for t in sd.singular_strata() {
            let chain = &sd.simplices()[t.simplices[0]];
            let top = chain
                .vertices()
                .iter()
                .copied()
                .max_by_key(|&v| all.get(v).map_or(0, |s| s.dim()))
                .ok_or_else(|| Error::malformed("empty simplex"))?;
            if top >= all.len() {
                return Err(Error::malformed("not a subdivision of the given complex"));
            }
            values.insert(t.id, self.evaluate(complex.stratum_at(top))?);
        }
        Ok(Perversity::Strata { values })
    }
}

fn gm_sequence(values: impl Iterator<Item = ExtendedInt>) -> bool {
    let mut prev: Option<i64> = None;
    for v in values {
        let Some(v) = v.finite() else { return false };
        match prev {
            None if v != 0 => return false,
            Some(p) if v < p || v > p + 1 => return false,
            _ => {}
        }
        prev = Some(v);
    }
    prev.is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::NegInf;

    fn codim_stratum(codim: usize) -> Stratum {
        Stratum { id: 0, dim: 5 - codim, codim, simplices: vec![] }
    }

    #[test]
    fn top_on_codim_three_is_one() {
        assert_eq!(Perversity::top().evaluate(&codim_stratum(3)).unwrap(), Finite(1));
    }

    #[test]
    fn regular_strata_evaluate_to_zero() {
        for p in [
            Perversity::top(),
            Perversity::constant(PosInf),
            Perversity::strata([]),
            Perversity::gm(vec![0]),
        ] {
            assert_eq!(p.evaluate(&codim_stratum(0)).unwrap(), Finite(0));
        }
        assert_eq!(Perversity::constant(2).evaluate(&codim_stratum(4)).unwrap(), Finite(2));
    }

    #[test]
    fn complement_values() {
        let s3 = codim_stratum(3);
        assert_eq!(Perversity::zero().complement().evaluate(&s3).unwrap(), Finite(1));
        assert_eq!(Perversity::top().complement().evaluate(&s3).unwrap(), Finite(0));
        assert_eq!(Perversity::constant(NegInf).complement().evaluate(&s3).unwrap(), PosInf);
        assert_eq!(Perversity::constant(PosInf).complement().evaluate(&s3).unwrap(), NegInf);
    }

    #[test]
    fn cleaving_points() {
        let p = Perversity::gm(vec![0, 1, 1]);
        assert_eq!(p.complement(), Perversity::gm(vec![0, 0, 1]));
        assert_eq!(p.cleaving_point().unwrap(), Finite(3));
        assert_eq!(Perversity::zero().cleaving_point().unwrap(), Finite(2));
        assert_eq!(Perversity::top().cleaving_point().unwrap(), PosInf);
        assert!(Perversity::gm(vec![0, 2]).cleaving_point().is_err());
        for p in [Perversity::gm(vec![0, 1, 1]), Perversity::zero(), Perversity::top()] {
            assert_eq!(p.cleaving_point().unwrap(), p.cleaving_point_from_complement().unwrap());
        }
    }

    #[test]
    fn gm_rejects_codim_one() {
        assert!(Perversity::gm(vec![0, 1]).at_codim(1).is_err());
        assert!(Perversity::gm(vec![0, 1]).at_codim(4).is_err());
    }

    #[test]
    fn is_gm_checks_growth() {
        assert!(Perversity::gm(vec![0, 1, 1, 2]).is_gm());
        assert!(!Perversity::gm(vec![1, 1]).is_gm());
        assert!(!Perversity::gm(vec![0, 2]).is_gm());
        assert!(!Perversity::gm(vec![0, 1, 0]).is_gm());
        assert!(Perversity::codim([(2, Finite(0)), (3, Finite(0))]).is_gm());
        assert!(!Perversity::codim([(2, Finite(-1))]).is_gm());
    }

    #[test]
    fn json_forms() {
        let cases = [
            (Perversity::gm(vec![0, 1, 1]), r#"{"flavor":"gm","values":[0,1,1]}"#),
            (Perversity::top(), r#"{"flavor":"named","name":"top"}"#),
            (
                Perversity::strata([(3, PosInf), (1, Finite(-1))]),
                r#"{"flavor":"strata","values":{"1":-1,"3":"inf"}}"#,
            ),
        ];
        for (p, s) in cases {
            assert_eq!(serde_json::to_string(&p).unwrap(), s);
            assert_eq!(serde_json::from_str::<Perversity>(s).unwrap(), p);
        }
    }

    #[test]
    fn middle_perversities() {
        assert_eq!(Perversity::lower_middle(5), Perversity::gm(vec![0, 0, 1, 1]));
        assert_eq!(Perversity::upper_middle(5), Perversity::gm(vec![0, 1, 1, 2]));
    }
}

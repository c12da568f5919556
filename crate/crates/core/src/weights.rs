//! Weight gradings on free dgas.
//!
//! A weight assigns an integer to every generator and extends additively to
//! monomials. It is compatible with the differential when `d(g)` is
//! homogeneous of weight `w(g)` for every generator `g`, in which case `d`
//! preserves the weight decomposition of every element.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Element, Monomial};
use crate::dga::{DgaMorphism, SullivanDga};
use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightGrading {
    weights: Vec<i64>,
    compatible: bool,
}

impl WeightGrading {
    /// Attaches `weights` (one per generator) to `dga` and records whether the
    /// differential respects them.
    pub fn new(dga: &SullivanDga, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != dga.algebra().len() {
            return Err(Error::Weight(format!(
                "{} weights for {} generators",
                weights.len(),
                dga.algebra().len()
            )));
        }
        let mut w = WeightGrading {
            weights,
            compatible: false,
        };
        w.compatible = w.incompatible_generator(dga).is_none();
        Ok(w)
    }

    /// First generator whose differential is not homogeneous of its own weight.
    pub fn incompatible_generator(&self, dga: &SullivanDga) -> Option<String> {
        dga.algebra().generators().iter().find_map(|g| {
            let dg = dga.generator_differential(g.index);
            if dg.is_zero() {
                return None;
            }
            match self.weight_of(dg) {
                Some(k) if k == self.weights[g.index] => None,
                _ => Some(g.name.clone()),
            }
        })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn generator_weight(&self, index: usize) -> i64 {
        self.weights[index]
    }

    pub fn is_compatible(&self) -> bool {
        self.compatible
    }

    pub fn monomial_weight(&self, m: &Monomial) -> i64 {
        m.factors()
            .into_iter()
            .map(|(i, e)| self.weights[i] * i64::from(e))
            .sum()
    }

    /// Weight of a nonzero homogeneous element.
    pub fn weight_of(&self, e: &Element) -> Option<i64> {
        let mut it = e.terms().map(|(m, _)| self.monomial_weight(m));
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// Splits `e` into weight-homogeneous parts, weights strictly increasing.
    pub fn decompose(&self, e: &Element) -> Vec<(i64, Element)> {
        let mut parts: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in e.terms() {
            parts
                .entry(self.monomial_weight(m))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    /// Positive: every generator has weight at least 1. For a free algebra on
    /// positive-degree generators this is the same as having no negative
    /// weights and weight zero only in degree zero.
    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|&w| w >= 1)
    }

    /// This grading extended by further generator weights.
    pub fn extended(&self, dga: &SullivanDga, extra: &[i64]) -> Result<WeightGrading> {
        let mut weights = self.weights.clone();
        weights.extend_from_slice(extra);
        WeightGrading::new(dga, weights)
    }
}

/// How a generator of a 2-step algebra sits in the two layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layer {
    /// Closed generator.
    Closed,
    /// Differential is a polynomial in the closed generators.
    Second,
}

/// Classifies generators into the two layers, or names the first generator
/// whose differential involves a non-closed generator.
pub fn two_step_layers(dga: &SullivanDga) -> Result<Vec<Layer>> {
    let closed: Vec<bool> = dga.differentials().iter().map(Element::is_zero).collect();
    dga.algebra()
        .generators()
        .iter()
        .map(|g| {
            let dg = dga.generator_differential(g.index);
            if dg.is_zero() {
                return Ok(Layer::Closed);
            }
            let in_closed = dg.terms().all(|(m, _)| m.factors().iter().all(|&(i, _)| closed[i]));
            if in_closed {
                Ok(Layer::Second)
            } else {
                Err(Error::NotTwoStep(g.name.clone()))
            }
        })
        .collect()
}

/// The canonical positive weight of a 2-step algebra: `|x|` on closed
/// generators and `|y| + 1` on the second layer.
pub fn two_step_weight(dga: &SullivanDga) -> Result<WeightGrading> {
    let layers = two_step_layers(dga)?;
    let weights = dga
        .algebra()
        .generators()
        .iter()
        .zip(&layers)
        .map(|(g, l)| match l {
            Layer::Closed => i64::from(g.degree),
            Layer::Second => i64::from(g.degree) + 1,
        })
        .collect();
    let w = WeightGrading::new(dga, weights)?;
    debug_assert!(w.is_compatible());
    Ok(w)
}

fn scalar_pow(q: &Scalar, k: i64) -> Result<Scalar> {
    if k == 0 {
        return Ok(Scalar::one());
    }
    if q.is_zero() {
        if k > 0 {
            return Ok(Scalar::zero());
        }
        return Err(Error::Weight("0 raised to a negative weight".into()));
    }
    let mut acc = Scalar::one();
    for _ in 0..k.unsigned_abs() {
        acc *= q;
    }
    Ok(if k < 0 { Scalar::one() / acc } else { acc })
}

/// The endomorphism `g -> q^{w(g)} g`.
pub fn scaling_endomorphism(dga: Arc<SullivanDga>, w: &WeightGrading, q: &Scalar) -> Result<DgaMorphism> {
    if !w.is_compatible() {
        return Err(Error::Weight("scaling needs a weight compatible with d".into()));
    }
    let images = (0..dga.algebra().len())
        .map(|i| Ok(dga.algebra().gen(i).scale(&scalar_pow(q, w.generator_weight(i))?)))
        .collect::<Result<Vec<_>>>()?;
    DgaMorphism::new(dga.clone(), dga, images)
}

/// `P(x) = x^{w_0} + sum alpha_i x^{w_i}`, normalized so the top exponent has
/// coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreePolynomial {
    /// `(exponent, coefficient)` pairs, exponents strictly decreasing.
    pub terms: Vec<(i64, String)>,
    #[serde(skip)]
    coefficients: Vec<(i64, Scalar)>,
}

impl DegreePolynomial {
    pub fn top_exponent(&self) -> i64 {
        self.coefficients[0].0
    }

    pub fn coefficients(&self) -> &[(i64, Scalar)] {
        &self.coefficients
    }

    pub fn evaluate(&self, x: &Scalar) -> Scalar {
        self.coefficients
            .iter()
            .map(|(k, c)| c * scalar_pow(x, *k).expect("nonzero base or nonnegative exponent"))
            .fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Builds the monic degree polynomial from `(weight, class coefficient)` parts.
pub fn degree_polynomial(parts: &[(i64, Scalar)]) -> Result<DegreePolynomial> {
    let mut acc: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (w, c) in parts {
        *acc.entry(*w).or_insert_with(Scalar::zero) += c;
    }
    acc.retain(|_, c| !c.is_zero());
    let (_, lead) = acc
        .iter()
        .next_back()
        .ok_or_else(|| Error::Weight("degree polynomial of no parts".into()))?;
    let lead = lead.clone();
    let coefficients: Vec<(i64, Scalar)> = acc.into_iter().rev().map(|(w, c)| (w, c / &lead)).collect();
    Ok(DegreePolynomial {
        terms: coefficients.iter().map(|(w, c)| (*w, c.to_string())).collect(),
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qr};

    fn al2() -> SullivanDga {
        SullivanDga::from_tables(
            &[("x1", 8), ("x2", 10), ("y1", 33), ("y2", 35), ("y3", 37)],
            &[("y1", "x1^3*x2"), ("y2", "x1^2*x2^2"), ("y3", "x1*x2^3")],
        )
        .unwrap()
    }

    #[test]
    fn al_two_step_weight() {
        let m = al2();
        let w = two_step_weight(&m).unwrap();
        assert_eq!(w.weights(), &[8, 10, 34, 36, 38]);
        assert!(w.is_compatible());
        assert!(w.is_positive());
        let gamma = m.parse("x1^2*y2*y3 - x1*x2*y1*y3 + x2^2*y1*y2").unwrap();
        let parts = w.decompose(&gamma);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, 90);
    }

    #[test]
    fn not_two_step() {
        let m = SullivanDga::from_tables(&[("x", 2), ("y", 3), ("z", 4)], &[("y", "x^2"), ("z", "x*y")]).unwrap();
        match two_step_weight(&m) {
            Err(Error::NotTwoStep(g)) => assert_eq!(g, "z"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_on_cocycles() {
        let m = SullivanDga::from_tables(&[("x", 4)], &[]).unwrap();
        assert_eq!(two_step_weight(&m).unwrap().weights(), &[4]);
    }

    #[test]
    fn zero_weight_is_not_positive() {
        let m = al2();
        let w = WeightGrading::new(&m, vec![0, 0, 0, 0, 0]).unwrap();
        assert!(w.is_compatible());
        assert!(!w.is_positive());
    }

    #[test]
    fn decomposition_of_mixed_element() {
        let m = al2();
        let w = two_step_weight(&m).unwrap();
        let e = m.parse("x1^5 + x2^4 + y1").unwrap();
        let parts = w.decompose(&e);
        assert_eq!(parts.iter().map(|p| p.0).collect::<Vec<_>>(), vec![34, 40]);
        let sum = parts.iter().fold(Element::zero(), |a, (_, p)| &a + p);
        assert_eq!(sum, e);
        assert!(w.decompose(&Element::zero()).is_empty());
    }

    #[test]
    fn scaling_edge_cases() {
        let m = Arc::new(al2());
        let w = two_step_weight(&m).unwrap();
        let one = scaling_endomorphism(m.clone(), &w, &q(1)).unwrap();
        assert_eq!(one.images, DgaMorphism::identity(m.clone()).images);
        let zero = scaling_endomorphism(m.clone(), &w, &q(0)).unwrap();
        assert!(zero.images.iter().all(Element::is_zero));
        assert!(zero.verify().ok);
        let half = scaling_endomorphism(m.clone(), &w, &qr(1, 2)).unwrap();
        assert!(half.verify().ok);
    }

    #[test]
    fn polynomial_definition() {
        let p = degree_polynomial(&[(0, q(0)), (5, q(1)), (3, qr(2, 3))]).unwrap();
        assert_eq!(p.top_exponent(), 5);
        assert_eq!(p.evaluate(&q(2)), q(32) + qr(2, 3) * q(8));
        let single = degree_polynomial(&[(7, q(3))]).unwrap();
        assert_eq!(single.coefficients(), &[(7, q(1))]);
        assert!(degree_polynomial(&[]).is_err());
    }
}

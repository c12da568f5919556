//! The dot algebra of a 2-step dga.
//!
//! Every base generator `g` gets a dotted twin `@g` of the same degree with
//! `d(@g) = theta(dg)`, where `theta` is the degree-0 derivation sending `g`
//! to `@g`. Products of two dotted factors vanish, which is enforced by the
//! monomial representation itself.

use std::sync::Arc;

use crate::algebra::{Element, Monomial};
use crate::dga::SullivanDga;
use crate::error::{Error, Result};
use crate::weights::{two_step_layers, WeightGrading};
use crate::Scalar;
use num_traits::One;

#[derive(Clone, Debug)]
pub struct DotDga {
    base: Arc<SullivanDga>,
    extended: Arc<SullivanDga>,
}

/// Builds the dot algebra of a 2-step dga. Dotted generators are appended
/// after the base generators, in the same order.
pub fn build_dot(base: Arc<SullivanDga>) -> Result<DotDga> {
    two_step_layers(&base)?;
    let n = base.algebra().len();
    let mut algebra = base.algebra().clone();
    for i in 0..n {
        algebra.add_dotted(i)?;
    }
    let mut diff: Vec<Element> = base.differentials().to_vec();
    for i in 0..n {
        diff.push(theta_in(n, base.generator_differential(i), &algebra));
    }
    let extended = Arc::new(SullivanDga::new(algebra, diff)?);
    Ok(DotDga { base, extended })
}

fn theta_monomial(base_len: usize, m: &Monomial, alg: &crate::Algebra) -> Element {
    let mut out = Element::zero();
    if m.is_dotted() {
        return out;
    }
    let even = m.even_exponents();
    let odd = m.odd_part();
    let odd_elem = Element::from_monomial(Monomial::from_parts(alg, Vec::new(), odd.to_vec()));
    for (i, &e) in even.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut rest = even.to_vec();
        rest[i] -= 1;
        let rest = Element::from_monomial(Monomial::from_parts(alg, rest, Vec::new()));
        let t = &(&rest * &alg.gen(base_len + i)) * &odd_elem;
        out.add_scaled(&t, &Scalar::from_integer(e.into()));
    }
    let even_elem = Element::from_monomial(Monomial::from_parts(alg, even.to_vec(), Vec::new()));
    for (j, &y) in odd.iter().enumerate() {
        let prefix = Element::from_monomial(Monomial::from_parts(alg, Vec::new(), odd[..j].to_vec()));
        let suffix = Element::from_monomial(Monomial::from_parts(alg, Vec::new(), odd[j + 1..].to_vec()));
        let t = &(&(&even_elem * &prefix) * &alg.gen(base_len + y)) * &suffix;
        out.add_scaled(&t, &Scalar::one());
    }
    out
}

fn theta_in(base_len: usize, e: &Element, alg: &crate::Algebra) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        out.add_scaled(&theta_monomial(base_len, m, alg), c);
    }
    out
}

impl DotDga {
    pub fn base(&self) -> &Arc<SullivanDga> {
        &self.base
    }

    /// The dga containing both base and dotted generators.
    pub fn extended(&self) -> &Arc<SullivanDga> {
        &self.extended
    }

    pub fn base_len(&self) -> usize {
        self.base.algebra().len()
    }

    /// Index of the dotted twin of base generator `i`.
    pub fn dotted_index(&self, i: usize) -> usize {
        self.base_len() + i
    }

    /// `theta` on an element of the base algebra.
    pub fn theta(&self, e: &Element) -> Result<Element> {
        if e.has_dotted() {
            return Err(Error::Contract("theta is applied to base elements only".into()));
        }
        self.base.algebra().check_element(e)?;
        Ok(self.theta_total(e))
    }

    /// `theta` extended to the whole dot algebra, where it kills every
    /// monomial that already carries a dot.
    pub fn theta_total(&self, e: &Element) -> Element {
        theta_in(self.base_len(), e, self.extended.algebra())
    }

    /// `m -> m + theta(m)` on base elements.
    pub fn plus_dot(&self, e: &Element) -> Element {
        e + &self.theta_total(e)
    }

    /// Extends a base weight by `w(@g) = w(g) + shift`.
    pub fn dot_weight(&self, w: &WeightGrading, shift: i64) -> Result<WeightGrading> {
        if !w.is_compatible() {
            return Err(Error::Weight("base weight is not compatible with d".into()));
        }
        let extra: Vec<i64> = w.weights().iter().map(|x| x + shift).collect();
        let out = w.extended(&self.extended, &extra)?;
        if !out.is_compatible() {
            return Err(Error::Weight(format!(
                "dotted weight with shift {shift} is not compatible (generator {:?})",
                out.incompatible_generator(&self.extended)
            )));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::two_step_weight;

    fn al_dot() -> DotDga {
        let base = SullivanDga::from_tables(
            &[("x1", 8), ("x2", 10), ("y1", 33), ("y2", 35), ("y3", 37)],
            &[("y1", "x1^3*x2"), ("y2", "x1^2*x2^2"), ("y3", "x1*x2^3")],
        )
        .unwrap();
        build_dot(Arc::new(base)).unwrap()
    }

    #[test]
    fn dotted_differentials() {
        let d = al_dot();
        let ext = d.extended();
        let dy1 = ext.generator_differential(ext.algebra().index_of("@y1").unwrap());
        assert_eq!(*dy1, ext.parse("3*x1^2*@x1*x2 + x1^3*@x2").unwrap());
        let dy2 = ext.generator_differential(ext.algebra().index_of("@y2").unwrap());
        assert_eq!(*dy2, ext.parse("2*x1*@x1*x2^2 + 2*x1^2*x2*@x2").unwrap());
        let dy3 = ext.generator_differential(ext.algebra().index_of("@y3").unwrap());
        assert_eq!(*dy3, ext.parse("@x1*x2^3 + 3*x1*x2^2*@x2").unwrap());
        assert!(ext
            .generator_differential(ext.algebra().index_of("@x1").unwrap())
            .is_zero());
        assert!(ext.check_d_squared().is_empty());
    }

    #[test]
    fn theta_examples() {
        let d = al_dot();
        let ext = d.extended();
        assert!(d.theta(&Element::one()).unwrap().is_zero());
        let p0 = ext.parse("x1^15 + x2^12").unwrap();
        assert_eq!(d.theta(&p0).unwrap(), ext.parse("15*x1^14*@x1 + 12*x2^11*@x2").unwrap());
        let gamma = ext.parse("x1^2*y2*y3 - x1*x2*y1*y3 + x2^2*y1*y2").unwrap();
        let expected = ext
            .parse(
                "2*@x1*x1*y2*y3 - @x1*x2*y1*y3 - x1*@x2*y1*y3 + 2*x2*@x2*y1*y2 \
                 + x1^2*@y2*y3 - x1*x2*@y1*y3 + x2^2*@y1*y2 + x1^2*y2*@y3 - x1*x2*y1*@y3 + x2^2*y1*@y2",
            )
            .unwrap();
        let dg = d.theta(&gamma).unwrap();
        assert_eq!(dg.len(), 10);
        assert_eq!(dg, expected);
        assert!(d.theta(&ext.parse("@x1").unwrap()).is_err());
    }

    #[test]
    fn dotted_weights() {
        let d = al_dot();
        let w = two_step_weight(d.base()).unwrap();
        let dw = d.dot_weight(&w, -2).unwrap();
        let ext = d.extended();
        assert_eq!(dw.generator_weight(ext.algebra().index_of("@x1").unwrap()), 6);
        assert_eq!(dw.generator_weight(ext.algebra().index_of("@y1").unwrap()), 32);
        let same = d.dot_weight(&w, 0).unwrap();
        assert_eq!(&same.weights()[5..], w.weights());
    }

    #[test]
    fn non_two_step_rejected() {
        let m = SullivanDga::from_tables(&[("x", 2), ("y", 3), ("z", 4)], &[("y", "x^2"), ("z", "x*y")]).unwrap();
        assert!(build_dot(Arc::new(m)).is_err());
    }
}

//! Connected sums and tensor products of dgas.
//!
//! The connected sum `A1 # A2` along cocycles `a1`, `a2` of equal degree is
//! the fibre product over the unit, `Q (+) A1^+ (+) A2^+`, with products of
//! positive-degree elements from different sides set to zero, modulo the
//! differential ideal generated by `a1 - a2`. It is not free, so it is handled
//! one degree at a time.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Algebra, Element};
use crate::dga::{quotient_cohomology_dim, substitute, SullivanDga};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::weights::WeightGrading;
use crate::Scalar;

/// An element `s + e1 + e2` of the fibre product; `e1`, `e2` have no constant
/// term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairElement {
    pub unit: Scalar,
    pub left: Element,
    pub right: Element,
}

fn drop_constant(e: &Element) -> (Scalar, Element) {
    (e.coefficient(&crate::Monomial::one()), e.filter(|m| !m.is_one()))
}

impl PairElement {
    /// `e1 + e2`, where the constant terms of both add up on the shared unit.
    pub fn new(left: &Element, right: &Element) -> Self {
        let (u1, left) = drop_constant(left);
        let (u2, right) = drop_constant(right);
        PairElement {
            unit: u1 + u2,
            left,
            right,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.left.is_zero() && self.right.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        let mut degrees = BTreeSet::new();
        if !self.unit.is_zero() {
            degrees.insert(0);
        }
        for e in [&self.left, &self.right] {
            if !e.is_zero() {
                degrees.insert(e.degree()?);
            }
        }
        match degrees.len() {
            1 => degrees.into_iter().next(),
            _ => None,
        }
    }

    pub fn mul(&self, other: &PairElement) -> PairElement {
        let u = Element::scalar(self.unit.clone());
        let v = Element::scalar(other.unit.clone());
        let side = |a: &Element, b: &Element| &(&(&u * b) + &(a * &v)) + &(a * b);
        PairElement {
            unit: &self.unit * &other.unit,
            left: side(&self.left, &other.left),
            right: side(&self.right, &other.right),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConnectedSum {
    a1: Arc<SullivanDga>,
    c1: Element,
    a2: Arc<SullivanDga>,
    c2: Element,
    degree: u32,
}

fn class_degree(dga: &SullivanDga, c: &Element, side: &str) -> Result<u32> {
    dga.algebra().check_element(c)?;
    let n = c.degree().filter(|&n| n > 0).ok_or_else(|| {
        Error::Degree(format!(
            "{side} class must be nonzero, homogeneous and of positive degree"
        ))
    })?;
    if !dga.is_cocycle(c) {
        return Err(Error::Contract(format!(
            "{side} class {} is not a cocycle",
            dga.format(c)
        )));
    }
    Ok(n)
}

impl ConnectedSum {
    pub fn new(a1: Arc<SullivanDga>, c1: Element, a2: Arc<SullivanDga>, c2: Element) -> Result<Self> {
        let n1 = class_degree(&a1, &c1, "first")?;
        let n2 = class_degree(&a2, &c2, "second")?;
        if n1 != n2 {
            return Err(Error::Degree(format!(
                "classes of degrees {n1} and {n2} cannot be identified"
            )));
        }
        Ok(ConnectedSum {
            a1,
            c1,
            a2,
            c2,
            degree: n1,
        })
    }

    pub fn left(&self) -> &Arc<SullivanDga> {
        &self.a1
    }

    pub fn right(&self) -> &Arc<SullivanDga> {
        &self.a2
    }

    /// Degree of the identified classes.
    pub fn class_degree(&self) -> u32 {
        self.degree
    }

    fn split(&self, n: u32) -> usize {
        self.a1.slice(n).len()
    }

    /// Dimension of the fibre product in degree `n`.
    pub fn slice_dim(&self, n: u32) -> usize {
        if n == 0 {
            1
        } else {
            self.a1.slice(n).len() + self.a2.slice(n).len()
        }
    }

    pub fn coords(&self, e: &PairElement) -> Result<SparseVec> {
        let Some(n) = e.degree() else {
            if e.is_zero() {
                return Ok(Vec::new());
            }
            return Err(Error::Degree("element of the connected sum is not homogeneous".into()));
        };
        if n == 0 {
            return Ok(vec![(0, e.unit.clone())]);
        }
        let mut v = if e.left.is_zero() {
            Vec::new()
        } else {
            self.a1.slice(n).coords(&e.left)?
        };
        if !e.right.is_zero() {
            let off = self.split(n);
            v.extend(
                self.a2
                    .slice(n)
                    .coords(&e.right)?
                    .into_iter()
                    .map(|(i, c)| (i + off, c)),
            );
        }
        Ok(v)
    }

    pub fn d(&self, e: &PairElement) -> PairElement {
        PairElement {
            unit: Scalar::zero(),
            left: self.a1.d(&e.left),
            right: self.a2.d(&e.right),
        }
    }

    /// Columns of `d` from degree `n` to `n + 1`.
    pub fn d_columns(&self, n: u32) -> Vec<SparseVec> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let off = self.split(n + 1);
        let mut cols = self.a1.d_columns(n);
        cols.extend(
            self.a2
                .d_columns(n)
                .into_iter()
                .map(|c| c.into_iter().map(|(i, x)| (i + off, x)).collect()),
        );
        cols
    }

    /// Spanning set of the ideal generated by `a1 - a2` in degree `n`.
    pub fn ideal_span(&self, n: u32) -> Result<Vec<SparseVec>> {
        let mut out = Vec::new();
        if n < self.degree {
            return Ok(out);
        }
        if n == self.degree {
            out.push(self.coords(&PairElement::new(&self.c1, &-&self.c2))?);
            return Ok(out);
        }
        let k = n - self.degree;
        let off = self.split(n);
        for m in &self.a1.slice(k).basis {
            let p = &Element::from_monomial(m.clone()) * &self.c1;
            out.push(self.a1.slice(n).coords(&p)?);
        }
        for m in &self.a2.slice(k).basis {
            let p = &Element::from_monomial(m.clone()) * &self.c2;
            let v = self.a2.slice(n).coords(&p)?;
            out.push(v.into_iter().map(|(i, c)| (i + off, c)).collect());
        }
        Ok(out)
    }

    fn ideal_echelon(&self, n: u32) -> Result<Echelon> {
        let mut e = Echelon::new(self.slice_dim(n), false);
        for v in self.ideal_span(n)? {
            e.insert(&v);
        }
        Ok(e)
    }

    /// Does `e` vanish in the connected sum?
    pub fn is_zero(&self, e: &PairElement) -> Result<bool> {
        if e.is_zero() {
            return Ok(true);
        }
        let n = e
            .degree()
            .ok_or_else(|| Error::Degree("element of the connected sum is not homogeneous".into()))?;
        Ok(self.ideal_echelon(n)?.contains(&self.coords(e)?))
    }

    /// Is `e` a coboundary in the connected sum?
    pub fn is_coboundary(&self, e: &PairElement) -> Result<bool> {
        if e.is_zero() {
            return Ok(true);
        }
        let n = e
            .degree()
            .ok_or_else(|| Error::Degree("element of the connected sum is not homogeneous".into()))?;
        if n == 0 {
            return Ok(false);
        }
        let mut span = self.ideal_echelon(n)?;
        for col in self.d_columns(n - 1) {
            span.insert(&col);
        }
        Ok(span.contains(&self.coords(e)?))
    }

    /// Dimension of `H^n` of the connected sum.
    pub fn cohomology_dim(&self, n: u32) -> Result<usize> {
        let prev = if n > 0 { self.d_columns(n - 1) } else { Vec::new() };
        Ok(quotient_cohomology_dim(
            self.slice_dim(n),
            self.slice_dim(n + 1),
            &self.d_columns(n),
            &prev,
            &self.ideal_span(n)?,
            &self.ideal_span(n + 1)?,
        ))
    }

    /// Combines positive weights on the summands: generators of `A1` get
    /// `w2(a2) * w1` and generators of `A2` get `w1(a1) * w2`, so that
    /// `a1 - a2` is homogeneous.
    pub fn combined_weight(&self, w1: &WeightGrading, w2: &WeightGrading) -> Result<CombinedWeight> {
        for (w, side) in [(w1, "first"), (w2, "second")] {
            if !w.is_compatible() || !w.is_positive() {
                return Err(Error::Weight(format!(
                    "the {side} weight must be positive and compatible with d"
                )));
            }
        }
        let k1 = w1
            .weight_of(&self.c1)
            .ok_or_else(|| Error::Weight("the first class is not weight-homogeneous".into()))?;
        let k2 = w2
            .weight_of(&self.c2)
            .ok_or_else(|| Error::Weight("the second class is not weight-homogeneous".into()))?;
        let left = WeightGrading::new(&self.a1, w1.weights().iter().map(|x| x * k2).collect())?;
        let right = WeightGrading::new(&self.a2, w2.weights().iter().map(|x| x * k1).collect())?;
        let class_weight = k1 * k2;
        debug_assert_eq!(left.weight_of(&self.c1), Some(class_weight));
        debug_assert_eq!(right.weight_of(&self.c2), Some(class_weight));
        Ok(CombinedWeight {
            left,
            right,
            class_weight,
        })
    }
}

/// Weight on a connected sum, given on each side.
#[derive(Clone, Debug)]
pub struct CombinedWeight {
    pub left: WeightGrading,
    pub right: WeightGrading,
    /// Common weight of `a1` and `a2`.
    pub class_weight: i64,
}

impl CombinedWeight {
    pub fn is_positive(&self) -> bool {
        self.left.is_positive() && self.right.is_positive()
    }

    pub fn is_compatible(&self) -> bool {
        self.left.is_compatible() && self.right.is_compatible()
    }
}

fn fresh(taken: &BTreeSet<String>, base: &str, suffix: &str) -> String {
    let mut name = format!("{base}{suffix}");
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// The tensor product `A (x) B`. Generators of `B` follow those of `A`; names
/// occurring in both get the suffixes `_l` and `_r`.
pub fn tensor(a: &SullivanDga, b: &SullivanDga) -> Result<SullivanDga> {
    let names_a: BTreeSet<String> = a.algebra().generators().iter().map(|g| g.name.clone()).collect();
    let names_b: BTreeSet<String> = b.algebra().generators().iter().map(|g| g.name.clone()).collect();
    let clash: BTreeSet<&String> = names_a.intersection(&names_b).collect();
    let mut taken: BTreeSet<String> = names_a.union(&names_b).cloned().collect();
    let mut algebra = Algebra::new();
    let mut rename = |name: &str, suffix: &str| {
        if clash.contains(&name.to_string()) {
            let n = fresh(&taken, name, suffix);
            taken.insert(n.clone());
            n
        } else {
            name.to_string()
        }
    };
    for g in a.algebra().generators() {
        algebra.add_generator(&rename(&g.name, "_l"), g.degree)?;
    }
    for g in b.algebra().generators() {
        algebra.add_generator(&rename(&g.name, "_r"), g.degree)?;
    }
    let na = a.algebra().len();
    let left: Vec<Element> = (0..na).map(|i| algebra.gen(i)).collect();
    let right: Vec<Element> = (0..b.algebra().len()).map(|i| algebra.gen(na + i)).collect();
    let mut diff: Vec<Element> = a.differentials().iter().map(|e| substitute(e, &left)).collect();
    diff.extend(b.differentials().iter().map(|e| substitute(e, &right)));
    SullivanDga::new(algebra, diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;
    use crate::weights::two_step_weight;

    fn s4() -> Arc<SullivanDga> {
        Arc::new(SullivanDga::from_tables(&[("e", 4), ("f", 7)], &[("f", "e^2")]).unwrap())
    }

    #[test]
    fn sphere_sum() {
        let a = s4();
        let e = a.var("e").unwrap();
        let cs = ConnectedSum::new(a.clone(), e.clone(), a.clone(), e.clone()).unwrap();
        let dims: Vec<usize> = (0..=6).map(|n| cs.cohomology_dim(n).unwrap()).collect();
        assert_eq!(dims, vec![1, 0, 0, 0, 1, 0, 0]);
        // e^2 = df dies in the quotient, so both f's become cocycles
        assert_eq!(cs.cohomology_dim(7).unwrap(), 2);
        let diff = PairElement::new(&e, &-&e);
        assert!(cs.is_zero(&diff).unwrap());
        assert!(!cs.is_zero(&PairElement::new(&e, &Element::zero())).unwrap());
        let sq = PairElement::new(&e.pow(2), &Element::zero());
        assert!(cs.is_coboundary(&sq).unwrap());
    }

    #[test]
    fn sphere_sum_weight() {
        let a = s4();
        let e = a.var("e").unwrap();
        let cs = ConnectedSum::new(a.clone(), e.clone(), a.clone(), e).unwrap();
        let w = two_step_weight(&a).unwrap();
        let c = cs.combined_weight(&w, &w).unwrap();
        assert_eq!(c.left.weights(), &[16, 32]);
        assert_eq!(c.right.weights(), &[16, 32]);
        assert_eq!(c.class_weight, 16);
        assert!(c.is_positive() && c.is_compatible());
    }

    #[test]
    fn mismatched_degrees() {
        let a = s4();
        let e = a.var("e").unwrap();
        assert!(matches!(
            ConnectedSum::new(a.clone(), e.clone(), a.clone(), e.pow(2)),
            Err(Error::Degree(_))
        ));
        let f = a.var("f").unwrap();
        assert!(ConnectedSum::new(a.clone(), f.clone(), a, f).is_err());
    }

    #[test]
    fn pair_products() {
        let a = s4();
        let e = a.var("e").unwrap();
        let x = PairElement::new(&(&Element::one() + &e), &Element::zero());
        let y = PairElement::new(&Element::zero(), &e);
        let p = x.mul(&y);
        assert_eq!(p.unit, q(0));
        assert!(p.left.is_zero());
        assert_eq!(p.right, e);
    }

    #[test]
    fn tensor_of_spheres() {
        let a = s4();
        let t = tensor(&a, &a).unwrap();
        let names: Vec<&str> = t.algebra().generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["e_l", "f_l", "e_r", "f_r"]);
        assert!(t.check_d_squared().is_empty());
        let h = t.cohomology(8);
        assert_eq!(h.dimension, 1);
        assert!(!t.is_exact(&t.parse("e_l*e_r").unwrap()).unwrap());
        let empty = SullivanDga::from_tables(&[], &[]).unwrap();
        let same = tensor(&a, &empty).unwrap();
        assert_eq!(same.differentials(), a.differentials());
    }
}

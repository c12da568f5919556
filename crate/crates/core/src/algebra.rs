//! Free graded-commutative algebras over Q.
//!
//! A monomial is stored as an exponent vector over the even-degree generators
//! together with the ascending list of odd-degree generators it contains. The
//! sign convention is that a monomial with coefficient `+1` stands for the
//! product of its even factors followed by its odd factors in increasing index
//! order. Dotted generators obey the extra rule that a product of two dotted
//! factors vanishes, so a monomial carries at most one dotted factor.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Scalar;

/// A generator of a free graded-commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub dotted: bool,
    pub index: usize,
    /// For a dotted generator, the index of the generator it is the dot of.
    pub base: Option<usize>,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// The generator table of a free graded-commutative algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Algebra {
    generators: Vec<Generator>,
    by_name: HashMap<String, usize>,
}

impl Algebra {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends an undotted generator and returns its index.
    pub fn add_generator(&mut self, name: &str, degree: u32) -> Result<usize> {
        self.push(name, degree, false, None)
    }

    /// Appends the dot of generator `base` under the name `@<base name>`.
    pub fn add_dotted(&mut self, base: usize) -> Result<usize> {
        let g = self
            .generators
            .get(base)
            .ok_or_else(|| Error::Structure(format!("no generator with index {base}")))?
            .clone();
        if g.dotted {
            return Err(Error::Structure(format!(
                "cannot dot the already dotted generator {}",
                g.name
            )));
        }
        self.push(&format!("@{}", g.name), g.degree, true, Some(base))
    }

    fn push(&mut self, name: &str, degree: u32, dotted: bool, base: Option<usize>) -> Result<usize> {
        if degree == 0 {
            return Err(Error::Structure(format!("generator {name} has degree 0")));
        }
        if !valid_ident(name) {
            return Err(Error::Structure(format!("invalid generator name {name:?}")));
        }
        if self.by_name.contains_key(name) {
            return Err(Error::Structure(format!("duplicate generator name {name}")));
        }
        let index = self.generators.len();
        self.generators.push(Generator {
            name: name.to_string(),
            degree,
            dotted,
            index,
            base,
        });
        self.by_name.insert(name.to_string(), index);
        Ok(index)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, index: usize) -> &Generator {
        &self.generators[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// Index of the dot of `base`, if this algebra has one.
    pub fn dot_of(&self, base: usize) -> Option<usize> {
        self.generators.iter().find(|g| g.base == Some(base)).map(|g| g.index)
    }

    /// The monomial consisting of a single generator.
    pub fn gen_monomial(&self, index: usize) -> Monomial {
        let g = &self.generators[index];
        let mut m = Monomial::one();
        m.degree = g.degree;
        m.dotted = g.dotted;
        if g.is_odd() {
            m.odd.push(index);
        } else {
            m.even = vec![0; index + 1];
            m.even[index] = 1;
        }
        m
    }

    /// The element consisting of a single generator.
    pub fn gen(&self, index: usize) -> Element {
        Element::from_monomial(self.gen_monomial(index))
    }

    /// Looks a generator up by name.
    pub fn var(&self, name: &str) -> Result<Element> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(self.gen(i))
    }

    /// Builds a monomial from (generator, exponent) pairs, or `None` when the
    /// product vanishes. The sign of the product relative to the canonical
    /// monomial is returned alongside.
    pub fn monomial(&self, factors: &[(usize, u32)]) -> Option<(Monomial, bool)> {
        let mut acc = Monomial::one();
        let mut negative = false;
        for &(i, e) in factors {
            for _ in 0..e {
                let (m, neg) = acc.mul(&self.gen_monomial(i))?;
                acc = m;
                negative ^= neg;
            }
        }
        Some((acc, negative))
    }

    /// Rejects elements mentioning generators that do not exist here.
    pub fn check_element(&self, e: &Element) -> Result<()> {
        for m in e.terms.keys() {
            if m.max_generator().is_some_and(|i| i >= self.len()) {
                return Err(Error::Structure(format!(
                    "element term {} refers to a generator outside this algebra",
                    m.display(self)
                )));
            }
        }
        Ok(())
    }

    /// Product of two elements of this algebra.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(a * b)
    }

    /// Every monomial of total degree `n`, in canonical order.
    pub fn monomial_basis(&self, n: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = Monomial::one();
        self.enumerate(0, n, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, start: usize, remaining: u32, current: &mut Monomial, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            let mut m = current.clone();
            m.trim();
            out.push(m);
            return;
        }
        for i in start..self.generators.len() {
            let g = &self.generators[i];
            if g.degree > remaining || (g.dotted && current.dotted) {
                continue;
            }
            let max_exp = if g.is_odd() || g.dotted {
                1
            } else {
                remaining / g.degree
            };
            for e in 1..=max_exp {
                let saved_dot = current.dotted;
                current.degree += e * g.degree;
                current.dotted |= g.dotted;
                if g.is_odd() {
                    current.odd.push(i);
                } else {
                    if current.even.len() <= i {
                        current.even.resize(i + 1, 0);
                    }
                    current.even[i] = e;
                }
                self.enumerate(i + 1, remaining - e * g.degree, current, out);
                if g.is_odd() {
                    current.odd.pop();
                } else {
                    current.even[i] = 0;
                }
                current.degree -= e * g.degree;
                current.dotted = saved_dot;
            }
        }
    }
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '@' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A monomial in a free graded-commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    /// Exponents of even-degree generators, indexed by generator, trailing
    /// zeros trimmed.
    even: Vec<u32>,
    /// Odd-degree generators present, strictly increasing.
    odd: Vec<usize>,
    dotted: bool,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            degree: 0,
            even: Vec::new(),
            odd: Vec::new(),
            dotted: false,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn is_dotted(&self) -> bool {
        self.dotted
    }

    pub fn even_exponents(&self) -> &[u32] {
        &self.even
    }

    pub fn odd_part(&self) -> &[usize] {
        &self.odd
    }

    /// Exponent of generator `i` (0 or 1 for odd generators).
    pub fn exponent(&self, i: usize) -> u32 {
        if let Some(&e) = self.even.get(i) {
            if e > 0 {
                return e;
            }
        }
        u32::from(self.odd.binary_search(&i).is_ok())
    }

    /// `(generator, exponent)` pairs in increasing generator order.
    pub fn factors(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = self
            .even
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect();
        out.extend(self.odd.iter().map(|&i| (i, 1)));
        out.sort_unstable();
        out
    }

    fn max_generator(&self) -> Option<usize> {
        let e = if self.even.is_empty() {
            None
        } else {
            Some(self.even.len() - 1)
        };
        e.max(self.odd.last().copied())
    }

    fn trim(&mut self) {
        while self.even.last() == Some(&0) {
            self.even.pop();
        }
    }

    /// Product of two monomials. Returns `None` when it vanishes (repeated odd
    /// factor or two dotted factors); otherwise the monomial and whether the
    /// Koszul sign is negative.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.dotted && other.dotted {
            return None;
        }
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() || j < other.odd.len() {
            if j == other.odd.len() || (i < self.odd.len() && self.odd[i] < other.odd[j]) {
                odd.push(self.odd[i]);
                i += 1;
            } else if i == self.odd.len() || other.odd[j] < self.odd[i] {
                // other.odd[j] moves past the remaining self.odd[i..]
                if (self.odd.len() - i) % 2 == 1 {
                    negative = !negative;
                }
                odd.push(other.odd[j]);
                j += 1;
            } else {
                return None;
            }
        }
        let (long, short) = if self.even.len() >= other.even.len() {
            (&self.even, &other.even)
        } else {
            (&other.even, &self.even)
        };
        let mut even = long.clone();
        for (k, e) in short.iter().enumerate() {
            even[k] += e;
        }
        Some((
            Monomial {
                degree: self.degree + other.degree,
                even,
                odd,
                dotted: self.dotted || other.dotted,
            },
            negative,
        ))
    }

    /// Renders the monomial using the generator names of `alg`.
    pub fn display<'a>(&'a self, alg: &'a Algebra) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, alg }
    }

    /// Builds a monomial directly from parts; the caller guarantees validity.
    pub(crate) fn from_parts(alg: &Algebra, even: Vec<u32>, odd: Vec<usize>) -> Monomial {
        let mut degree = 0;
        let mut dotted = false;
        for (i, &e) in even.iter().enumerate() {
            if e > 0 {
                degree += e * alg.generators[i].degree;
                dotted |= alg.generators[i].dotted;
            }
        }
        for &i in &odd {
            degree += alg.generators[i].degree;
            dotted |= alg.generators[i].dotted;
        }
        let mut m = Monomial {
            degree,
            even,
            odd,
            dotted,
        };
        m.trim();
        m
    }
}

/// Graded first, then reverse-lexicographic on even exponents, then
/// lexicographic on the odd part.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| {
                let len = self.even.len().max(other.even.len());
                for k in (0..len).rev() {
                    let a = self.even.get(k).copied().unwrap_or(0);
                    let b = other.even.get(k).copied().unwrap_or(0);
                    if a != b {
                        return b.cmp(&a);
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.odd.cmp(&other.odd))
            .then_with(|| self.dotted.cmp(&other.dotted))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    alg: &'a Algebra,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.m.factors() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self
                .alg
                .generators
                .get(i)
                .map(|g| g.name.clone())
                .unwrap_or_else(|| format!("g{i}"));
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse rational linear combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_monomial(Monomial::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(Monomial::one(), c);
        e
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Scalar::one());
        Element { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The common degree of all terms, `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn has_dotted(&self) -> bool {
        self.terms.keys().any(Monomial::is_dotted)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = Element::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The part of the element whose terms satisfy `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renders the element with generator names from `alg`.
    pub fn display<'a>(&'a self, alg: &'a Algebra) -> ElementDisplay<'a> {
        ElementDisplay { e: self, alg }
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }
}

pub struct ElementDisplay<'a> {
    e: &'a Element,
    alg: &'a Algebra,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.e.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(self.alg))?;
            } else {
                write!(f, "{abs}*{}", m.display(self.alg))?;
            }
        }
        Ok(())
    }
}

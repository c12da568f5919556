#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sullivan::checker::ThreeStepPresentation;
use sullivan::dot::{build_dot, DotDga};
use sullivan::weights::WeightGrading;
use sullivan::{q, qr, Algebra, Element, SullivanDga};

pub fn al_two_step() -> SullivanDga {
    SullivanDga::from_tables(
        &[("x1", 8), ("x2", 10), ("y1", 33), ("y2", 35), ("y3", 37)],
        &[("y1", "x1^3*x2"), ("y2", "x1^2*x2^2"), ("y3", "x1*x2^3")],
    )
    .unwrap()
}

pub fn al_dot() -> DotDga {
    build_dot(Arc::new(al_two_step())).unwrap()
}

/// Small mixed-parity algebra with low degrees, for ring axioms.
pub fn mixed_algebra() -> Algebra {
    let mut a = Algebra::new();
    for (n, d) in [("a", 2), ("b", 3), ("c", 4), ("e", 5), ("f", 1), ("g", 3)] {
        a.add_generator(n, d).unwrap();
    }
    a
}

/// A small 2-step dga with an odd closed generator.
pub fn small_two_step() -> SullivanDga {
    SullivanDga::from_tables(
        &[("a", 2), ("t", 3), ("b", 4), ("y", 5), ("w", 7), ("s", 8)],
        &[("y", "a^3"), ("w", "a^2*b"), ("s", "a*b*t")],
    )
    .unwrap()
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> sullivan::Scalar {
    let num = rng.gen_range(-5i64..=5);
    let den = rng.gen_range(1i64..=3);
    qr(if num == 0 { 1 } else { num }, den)
}

/// A random homogeneous element of degree `n` with up to `terms` terms.
pub fn random_homogeneous(alg: &Algebra, n: u32, terms: usize, rng: &mut ChaCha8Rng) -> Element {
    let basis = alg.monomial_basis(n);
    let mut e = Element::zero();
    if basis.is_empty() {
        return e;
    }
    for _ in 0..rng.gen_range(1..=terms) {
        let m = basis.choose(rng).unwrap().clone();
        e.add_term(m, random_scalar(rng));
    }
    e
}

/// A random nonzero homogeneous element with degree drawn from `degrees`.
pub fn random_element(alg: &Algebra, degrees: &[u32], terms: usize, rng: &mut ChaCha8Rng) -> Element {
    loop {
        let n = *degrees.choose(rng).unwrap();
        let e = random_homogeneous(alg, n, terms, rng);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random element of the base part of the dot algebra, possibly mixing degrees.
pub fn random_base(dot: &DotDga, rng: &mut ChaCha8Rng) -> Element {
    let alg = dot.base().algebra();
    random_element(alg, &[8, 10, 16, 18, 33, 35, 41, 43, 51, 68, 70, 88], 3, rng)
}

pub fn sign(a: &Element, b: &Element) -> i64 {
    let p = a.degree().unwrap() * b.degree().unwrap();
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn check_ring_axioms(a: &Element, b: &Element, c: &Element) -> Result<(), String> {
    let ab = a * b;
    let ba = b * a;
    if ab != ba.scale(&q(sign(a, b))) {
        return Err(format!("graded commutativity fails for {a:?}, {b:?}"));
    }
    if &ab * c != a * &(b * c) {
        return Err("associativity fails".into());
    }
    if a * &(b + c) != &ab + &(a * c) {
        return Err("distributivity fails".into());
    }
    Ok(())
}

pub fn check_leibniz(dga: &SullivanDga, a: &Element, b: &Element) -> Result<(), String> {
    let lhs = dga.d(&(a * b));
    let s = if a.degree().unwrap().is_multiple_of(2) { 1 } else { -1 };
    let rhs = &(&dga.d(a) * b) + &(a * &dga.d(b)).scale(&q(s));
    if lhs != rhs {
        return Err(format!("Leibniz fails for {} and {}", dga.format(a), dga.format(b)));
    }
    if !dga.d(&dga.d(a)).is_zero() {
        return Err(format!("d^2 != 0 on {}", dga.format(a)));
    }
    Ok(())
}

pub fn check_theta(dot: &DotDga, a: &Element, b: &Element) -> Result<(), String> {
    let ext = dot.extended();
    let ta = dot.theta(a).unwrap();
    let tb = dot.theta(b).unwrap();
    if dot.theta(&(a * b)).unwrap() != &(&ta * b) + &(a * &tb) {
        return Err("theta is not a derivation".into());
    }
    if !dot.theta_total(&ta).is_zero() {
        return Err("theta^2 != 0".into());
    }
    if !(&ta * &tb).is_zero() {
        return Err("product of two dotted elements survives".into());
    }
    if ext.d(&ta) != dot.theta(&dot.base().d(a)).unwrap() {
        return Err("d theta != theta d".into());
    }
    Ok(())
}

pub fn check_decomposition(dga: &SullivanDga, w: &WeightGrading, e: &Element) -> Result<(), String> {
    let parts = w.decompose(e);
    let sum = parts.iter().fold(Element::zero(), |acc, (_, p)| &acc + p);
    if &sum != e {
        return Err("parts do not add up".into());
    }
    for pair in parts.windows(2) {
        if pair[0].0 >= pair[1].0 {
            return Err("weights not increasing".into());
        }
    }
    for (k, p) in &parts {
        if w.weight_of(p) != Some(*k) {
            return Err(format!("part of weight {k} is not homogeneous"));
        }
        let dp = dga.d(p);
        if !dp.is_zero() && w.weight_of(&dp) != Some(*k) {
            return Err("d does not preserve weight".into());
        }
    }
    Ok(())
}

/// Replaces a basis of representatives by random invertible combinations
/// plus random coboundaries.
pub fn scramble(pres: &ThreeStepPresentation, reps: &[Element], rng: &mut ChaCha8Rng) -> Vec<Element> {
    let m2 = pres.two_step();
    let n = pres.coefficient_degree() as u32;
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.shuffle(rng);
    let below = m2.slice(n - 1);
    let mut out = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let lead = q(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let mut e = reps[i].scale(&lead);
        // unitriangular in the shuffled order keeps the family a basis
        for &j in &order[..pos] {
            e.add_scaled(&reps[j], &q(rng.gen_range(-3..=3)));
        }
        if !below.is_empty() {
            let m = below.basis[rng.gen_range(0..below.len())].clone();
            e = &e + &m2.d(&Element::from_monomial(m)).scale(&q(rng.gen_range(-2..=2)));
        }
        out.push(e);
    }
    out
}

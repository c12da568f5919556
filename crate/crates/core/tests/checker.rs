mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sullivan::checker::{
    build_bm, check_h3, check_h3_with_classes, run_checker, split_top_differential, Ordering, PresentationOptions,
    Splitting, ThreeStepPresentation, Verdict,
};
use sullivan::corpus::{build_corpus, CorpusParams};

use common::scramble;

fn presentation(key: &str, k: Option<u32>) -> ThreeStepPresentation {
    let params = CorpusParams {
        k,
        ..Default::default()
    };
    build_corpus(key, &params)
        .unwrap()
        .presentation(PresentationOptions::default())
        .unwrap()
}

fn orderings(pres: &ThreeStepPresentation) -> [Ordering; 2] {
    match split_top_differential(pres) {
        Splitting::TwoPieces(o) => o,
        other => panic!("expected two pieces, got {other:?}"),
    }
}

/// The ordering with the lighter piece as `P0`.
fn light_first(pres: &ThreeStepPresentation) -> Ordering {
    let [a, b] = orderings(pres);
    if a.w0 < a.w1 {
        a
    } else {
        b
    }
}

#[test]
fn h3_does_not_depend_on_representatives() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (key, k) in [("arkowitz-lupton-5.1", None), ("cl-I.2", None), ("cmv", Some(1))] {
        let pres = presentation(key, k);
        let reps = pres
            .two_step()
            .cohomology(pres.coefficient_degree() as u32)
            .representatives;
        for ord in orderings(&pres) {
            let reference = check_h3(&pres, &ord).unwrap();
            for _ in 0..20 {
                let classes = scramble(&pres, &reps, &mut rng);
                let r = check_h3_with_classes(&pres, &ord, &classes).unwrap();
                assert_eq!(r.feasible, reference.feasible, "{key}");
                assert_eq!(r.constraint_feasible, reference.constraint_feasible, "{key}");
                assert_eq!(r.ideal_span_rank, reference.ideal_span_rank);
            }
        }
    }
}

#[test]
fn top_class_of_the_first_example_is_exact_in_b() {
    let pres = presentation("arkowitz-lupton-5.1", None);
    let bm = build_bm(&pres, &light_first(&pres)).unwrap();
    let b = &bm.dga;
    let chi = b
        .parse(
            "-5*x2*y1*y2*@x2*u1 + 2*x1*y1*y3*@x2*u1 - 26*x1^7*x2^11*y1*@x1 - x2*y1*y3*@x1*u1 \
             + 26*x1^10*@x1*u1 - 61/4*x1^10*@x1*u2 + 3*x1*y2*y3*@x1*u1 - x1^8*x2^11*y1 \
             + x2^10*y1*y3*@y3 - x2^10*y2*y3*@y2 - x1*x2^9*y2*y3*@y3 + 5/12*x2^2*y1*y2*u3 \
             + x1^12*x2*y1*y2*@y1 - 5/12*x1*x2*y1*y3*u3 + x1*x2*y1*@y3*u1 - x1*x2*y2*@y2*u1 \
             + x1^13*y1*y2*@y2 - x1^13*y1*y3*@y1 + x1^11*u1 + 5/12*x1^2*y2*y3*u3 \
             - x1^2*y2*@y3*u1 + x1^2*y3*@y2*u1",
        )
        .unwrap();
    let image = bm.psi.apply(pres.nu());
    assert_eq!(b.format(&image), "26*x1^25*@x1 + x1^26");
    assert_eq!(b.d(&chi), image);
    assert!(b.is_exact(&image).unwrap());
}

#[test]
fn obstruction_lies_in_the_ideal_for_the_first_example() {
    let pres = presentation("arkowitz-lupton-5.1", None);
    let ord = light_first(&pres);
    let dot = pres.dot();
    let ext = dot.extended();
    let gamma = ext.parse("x1^2*y2*y3 - x1*x2*y1*y3 + x2^2*y1*y2").unwrap();
    let target = &ext.parse("x1^15").unwrap() * &dot.theta(&gamma).unwrap();
    let p0 = &ord.p0;
    let p0_dot = dot.theta(p0).unwrap();
    let p1 = &ord.p1;
    let e = |t: &str| ext.parse(t).unwrap();
    let mut rhs = &e(
        "5*x2*y1*y2*@x2 - 2*x1*y1*y3*@x2 + x2*y1*y3*@x1 - 3*x1*y2*y3*@x1 - x1*x2*y1*@y3 \
                      + x1*x2*y2*@y2 + x1^2*y2*@y3 - x1^2*y3*@y2",
    ) * p0;
    rhs = &rhs + &(&e("-5/12*x2^2*y1*y2 + 5/12*x1*x2*y1*y3 - 5/12*x1^2*y2*y3") * &p0_dot);
    rhs = &rhs + &(&e("45/4*x1^10*@x1") * p1);
    let boundary = e(
        "-x2^10*y1*y3*@y3 + x2^10*y2*y3*@y2 + x1*x2^9*y2*y3*@y3 - x1^12*x2*y1*y2*@y1 \
                      - x1^13*y1*y2*@y2 + x1^13*y1*y3*@y1",
    );
    rhs = &rhs + &ext.d(&boundary);
    assert_eq!(target, rhs);
}

#[test]
fn verdicts_are_consistent_with_direct_checks() {
    for (key, k) in [
        ("arkowitz-lupton-5.1", None),
        ("arkowitz-lupton-5.2", None),
        ("cl-I.1", None),
        ("cl-I.2", None),
        ("amann-3.8", None),
        ("cmv", Some(1)),
        ("amann-massey", Some(0)),
    ] {
        let pres = presentation(key, k);
        let report = run_checker(&pres, key).unwrap();
        assert!(report.soundness_ok, "{key}");
        assert_eq!(report.orderings.len(), 2);
        for o in &report.orderings {
            let d = o.direct.as_ref().expect("direct check recorded");
            if report.verdict == Verdict::Refuted && o.pass {
                assert!(!d.exact_in_bm, "{key}");
            }
        }
    }
}

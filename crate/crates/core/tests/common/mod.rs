//! Strategies and property bodies shared by the property suite and the
//! acceptance harness.
#![allow(dead_code)]

use proptest::prelude::*;
use ternary_gf::algebra::{rat, BiSeries, HalfSeries, Rat, Var};

pub const TU: (Var, Var) = (Var::T, Var::Shifted);
pub const TAU_U: (Var, Var) = (Var::Tau, Var::Shifted);

pub fn coeff() -> impl Strategy<Value = Rat> {
    prop_oneof![
        1 => Just(rat(0, 1)),
        3 => (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d)),
    ]
}

pub fn series_on(vars: (Var, Var), o1: usize, o2: usize) -> impl Strategy<Value = BiSeries> {
    prop::collection::vec(coeff(), (o1 + 1) * (o2 + 1)).prop_map(move |cs| {
        let mut it = cs.into_iter();
        BiSeries::from_fn(vars, o1, o2, |_, _| it.next().unwrap())
    })
}

pub fn grid() -> impl Strategy<Value = (usize, usize)> {
    (0usize..=12, 0usize..=6)
}

pub fn triple() -> impl Strategy<Value = (BiSeries, BiSeries, BiSeries)> {
    grid().prop_flat_map(|(o1, o2)| (series_on(TU, o1, o2), series_on(TU, o1, o2), series_on(TU, o1, o2)))
}

/// Unit series: constant term forced to a nonzero value.
pub fn with_constant(mut s: BiSeries, c: Rat) -> BiSeries {
    s.set(0, 0, c);
    s
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (1i64..=9, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

pub fn positive_rat() -> impl Strategy<Value = Rat> {
    (1i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn half_triple() -> impl Strategy<Value = (HalfSeries, HalfSeries, HalfSeries)> {
    grid().prop_flat_map(|(o1, o2)| {
        let h = move || {
            (series_on(TU, o1, o2), series_on(TU, o1, o2)).prop_map(|(e, o)| HalfSeries::new(e, o).unwrap())
        };
        (h(), h(), h())
    })
}

/// Inner series for composition: `(tau, U)` grid no larger than the outer
/// grid in `tau`, zero row at `tau^0`.
pub fn compose_inputs() -> impl Strategy<Value = (BiSeries, BiSeries, BiSeries)> {
    grid().prop_flat_map(|(o1, o2)| {
        (0..=o1).prop_flat_map(move |p1| {
            (
                series_on(TU, o1, o2),
                series_on(TU, o1, o2),
                series_on(TAU_U, p1, o2).prop_map(|mut s| {
                    for j in 0..=s.ord2() {
                        s.set(0, j, rat(0, 1));
                    }
                    s
                }),
            )
        })
    })
}

/// Inputs on a `(n + 5, m)` grid: a generic series, a unit divisor, a
/// series with square constant term, and a composable inner series.
pub fn coherence_inputs() -> impl Strategy<Value = (usize, usize, BiSeries, BiSeries, BiSeries, BiSeries)> {
    (0usize..=7, 0usize..=6).prop_flat_map(|(n, m)| {
        let big = n + 5;
        (
            Just(n),
            Just(m),
            series_on(TU, big, m),
            (series_on(TU, big, m), nonzero_rat()).prop_map(|(s, c)| with_constant(s, c)),
            (series_on(TU, big, m), positive_rat()).prop_map(|(s, c)| with_constant(s, &c * &c)),
            series_on(TAU_U, big, m).prop_map(|mut s| {
                for j in 0..=s.ord2() {
                    s.set(0, j, rat(0, 1));
                }
                s
            }),
        )
    })
}

pub type Triple = (BiSeries, BiSeries, BiSeries);
pub type HalfTriple = (HalfSeries, HalfSeries, HalfSeries);
pub type Coherence = (usize, usize, BiSeries, BiSeries, BiSeries, BiSeries);

pub fn bi_ring_axioms((a, b, c): Triple) -> Result<(), TestCaseError> {
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a - &b) + &b, a.clone());
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &a.one_like(), a.clone());
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    Ok(())
}

pub fn half_ring_axioms((a, b, c): HalfTriple) -> Result<(), TestCaseError> {
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    let one = HalfSeries::embed(a.even().one_like());
    prop_assert_eq!(&a * &one, a.clone());
    Ok(())
}

pub fn half_embedding((a, b, _): Triple) -> Result<(), TestCaseError> {
    let (ha, hb) = (HalfSeries::embed(a.clone()), HalfSeries::embed(b.clone()));
    prop_assert_eq!(&ha * &hb, HalfSeries::embed(&a * &b));
    prop_assert_eq!(&ha + &hb, HalfSeries::embed(&a + &b));
    Ok(())
}

pub fn div_inverse(((a, b, _), c0): (Triple, Rat)) -> Result<(), TestCaseError> {
    let b = with_constant(b, c0);
    let q = a.checked_div(&b).unwrap();
    prop_assert_eq!(&q * &b, a.clone());
    prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    Ok(())
}

pub fn sqrt_square(((c, _, _), c0): (Triple, Rat)) -> Result<(), TestCaseError> {
    let c = with_constant(c, c0);
    let a = &c * &c;
    let s = a.sqrt().unwrap();
    prop_assert_eq!(&s * &s, a);
    prop_assert_eq!(s, c);
    Ok(())
}

pub fn composition_morphism((a, b, inner): Triple) -> Result<(), TestCaseError> {
    let ca = a.compose_v1(&inner).unwrap();
    let cb = b.compose_v1(&inner).unwrap();
    prop_assert_eq!((&a * &b).compose_v1(&inner).unwrap(), &ca * &cb);
    prop_assert_eq!((&a + &b).compose_v1(&inner).unwrap(), &ca + &cb);
    prop_assert_eq!(a.one_like().compose_v1(&inner).unwrap(), inner.one_like());
    Ok(())
}

pub fn truncation_coherence((n, m, a, b, c, inner): Coherence) -> Result<(), TestCaseError> {
    let tr = |s: &BiSeries| s.truncate(n, m).unwrap();
    let (ta, tb, tc, ti) = (tr(&a), tr(&b), tr(&c), tr(&inner));

    prop_assert_eq!(tr(&(&a + &b)), &ta + &tb);
    prop_assert_eq!(tr(&(&a - &b)), &ta - &tb);
    prop_assert_eq!(tr(&(&a * &b)), &ta * &tb);
    prop_assert_eq!(tr(&a.checked_div(&b).unwrap()), ta.checked_div(&tb).unwrap());
    prop_assert_eq!(tr(&c.sqrt().unwrap()), tc.sqrt().unwrap());
    prop_assert_eq!(tr(&a.compose_v1(&inner).unwrap()), ta.compose_v1(&ti).unwrap());

    let prod = &HalfSeries::new(a.clone(), b.clone()).unwrap() * &HalfSeries::new(c.clone(), a.clone()).unwrap();
    let tprod = &HalfSeries::new(ta.clone(), tb).unwrap() * &HalfSeries::new(tc, ta).unwrap();
    prop_assert_eq!(tr(prod.even()), tprod.even().clone());
    prop_assert_eq!(tr(prod.odd()), tprod.odd().clone());
    Ok(())
}

use orbclass_core::algebra::int;
use orbclass_core::orbit::{
    localization_oracle, orbit_class, twist_class, twist_datum, twist_rep, OrbitDatum, OrbitPoint,
    Representation, Summand,
};
use proptest::prelude::*;

/// Turns raw draws into a valid input whose vector has finite stabilizer:
/// orders are clipped to each summand's budget, the roots of a unique
/// minimal-slope summand are all listed, and at least three distinct points
/// of `P^1` carry a zero of some component.
fn assemble(
    raw: Vec<(i64, i64, bool)>,
    orders: Vec<Vec<u32>>,
) -> Option<(Representation, OrbitDatum)> {
    let summands: Vec<Summand> = raw
        .iter()
        .map(|&(e, b, _)| Summand::new(b + e, b))
        .filter(|s| s.weight() > 0)
        .collect();
    if summands.is_empty() {
        return None;
    }
    let mut nonzero: Vec<bool> = raw.iter().filter(|&&(e, b, _)| 2 * b + e > 0).map(|r| r.2).collect();
    if !nonzero.iter().any(|&z| z) {
        nonzero[0] = true;
    }
    let active: Vec<Summand> = summands.iter().zip(&nonzero).filter(|p| *p.1).map(|p| *p.0).collect();
    if active.iter().map(Summand::dim).sum::<i64>() < 4 {
        return None;
    }
    let mut left: Vec<u32> = active.iter().map(|s| (s.a - s.b) as u32).collect();
    let mut points: Vec<OrbitPoint> = orders
        .into_iter()
        .enumerate()
        .map(|(k, raw)| {
            let o = (0..active.len())
                .map(|i| {
                    let r = raw.get(i).copied().unwrap_or(0).min(left[i]);
                    left[i] -= r;
                    r
                })
                .collect();
            OrbitPoint::new(format!("u{}", k), o)
        })
        .collect();
    let b = active.iter().map(Summand::slope).min()?;
    let minimal: Vec<usize> = (0..active.len()).filter(|&i| active[i].slope() == b).collect();
    if minimal.len() == 1 && left[minimal[0]] > 0 {
        let i = minimal[0];
        if points.is_empty() {
            points.push(OrbitPoint::new("u0", vec![0; active.len()]));
        }
        points[0].orders[i] += left[i];
        left[i] = 0;
    }
    let listed = points.iter().filter(|p| p.orders.iter().any(|&r| r > 0)).count();
    let generic: u32 = left.iter().sum();
    if listed + generic as usize >= 3 {
        Some((
            Representation::new(summands),
            OrbitDatum { nonzero, points, a_complete: true },
        ))
    } else {
        None
    }
}

fn input() -> impl Strategy<Value = (Representation, OrbitDatum)> {
    (
        prop::collection::vec((0i64..=6, -2i64..=3, prop::bool::weighted(0.85)), 1..=3),
        prop::collection::vec(prop::collection::vec(0u32..=4, 3), 0..=3),
    )
        .prop_filter_map("finite stabilizer", |(raw, orders)| assemble(raw, orders))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_is_symmetric_homogeneous_and_matches_oracle((rep, datum) in input()) {
        let c = orbit_class(&rep, &datum).unwrap();
        prop_assert!(c.poly.is_symmetric());
        prop_assert_eq!(c.codim, rep.dim() - 4);
        if !c.poly.is_zero() {
            prop_assert!(c.poly.is_homogeneous());
            prop_assert_eq!(c.poly.degree(), Some(c.codim as u32));
        }
        let o = localization_oracle(&rep, &datum).unwrap();
        prop_assert_eq!(o.poly, c.poly);
    }

    #[test]
    fn enlarging_a_is_harmless((rep, datum) in input(), at in 0usize..4) {
        let c = orbit_class(&rep, &datum).unwrap();
        let mut bigger = datum.clone();
        let at = at.min(bigger.points.len());
        bigger.points.insert(at, OrbitPoint::new("extra", vec![0; datum.nonzero_count()]));
        prop_assert_eq!(orbit_class(&rep, &bigger).unwrap().poly, c.poly);
    }

    #[test]
    fn point_order_is_irrelevant((rep, datum) in input(), seed in any::<u64>()) {
        let c = orbit_class(&rep, &datum).unwrap();
        let mut shuffled = datum.clone();
        let n = shuffled.points.len();
        if n > 1 {
            shuffled.points.rotate_left((seed as usize) % n);
            shuffled.points.swap(0, n - 1);
        }
        for (k, p) in shuffled.points.iter_mut().enumerate() {
            p.label = format!("renamed{}", k);
        }
        prop_assert_eq!(orbit_class(&rep, &shuffled).unwrap().poly, c.poly);
    }

    #[test]
    fn twist_multiplies_by_two_n_plus_one((rep, datum) in input(), n in 1i64..=3) {
        let c = orbit_class(&rep, &datum).unwrap();
        let twisted = orbit_class(&twist_rep(&rep, n).unwrap(), &twist_datum(&datum)).unwrap();
        let pulled = twist_class(&c, n).unwrap();
        prop_assert_eq!(pulled.poly.scale(&int(2 * n + 1)), twisted.poly);
    }
}

//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use orbclass_core::orbit::{OrbitDatum, OrbitPoint, Representation, Summand};
use orbclass_core::torus::{cone, CharacterList, Cone};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct zeros of the components: listed points with a positive order
/// plus the unlisted simple roots, which are taken pairwise distinct.
fn root_points(datum: &OrbitDatum, active: &[Summand]) -> usize {
    let listed = datum.points.iter().filter(|p| p.orders.iter().any(|&r| r > 0)).count();
    let generic: i64 = active
        .iter()
        .enumerate()
        .map(|(i, s)| s.dim() - 1 - datum.points.iter().map(|p| p.orders[i] as i64).sum::<i64>())
        .sum();
    listed + generic as usize
}

/// A valid input with at most 3 summands of degree `a - b <= 8`, at most 3
/// points, positive central weights, and a vector with finite stabilizer
/// (its components vanish at 3 or more distinct points and the nonzero part
/// has dimension at least 4).
pub fn class_input(rng: &mut ChaCha8Rng) -> (Representation, OrbitDatum) {
    loop {
        if let Some(x) = try_class_input(rng) {
            return x;
        }
    }
}

fn try_class_input(rng: &mut ChaCha8Rng) -> Option<(Representation, OrbitDatum)> {
    let k = rng.gen_range(1..=3);
    let mut summands = Vec::new();
    while summands.len() < k {
        let e: i64 = rng.gen_range(0..=8);
        let b: i64 = rng.gen_range(-2..=3);
        if 2 * b + e > 0 {
            summands.push(Summand::new(b + e, b));
        }
    }
    let mut nonzero: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.85)).collect();
    if !nonzero.iter().any(|&z| z) {
        nonzero[rng.gen_range(0..k)] = true;
    }
    let active: Vec<Summand> =
        summands.iter().zip(&nonzero).filter(|p| *p.1).map(|p| *p.0).collect();
    if active.iter().map(Summand::dim).sum::<i64>() < 4 {
        return None;
    }
    let mut left: Vec<u32> = active.iter().map(|s| (s.a - s.b) as u32).collect();
    let npoints = rng.gen_range(0..=3);
    let mut points = Vec::new();
    for u in 0..npoints {
        let orders = (0..active.len())
            .map(|i| {
                let r = rng.gen_range(0..=left[i].min(4));
                left[i] -= r;
                r
            })
            .collect();
        points.push(OrbitPoint::new(format!("u{}", u), orders));
    }
    // the zeros of a unique minimal-slope component must all be listed
    let b = active.iter().map(Summand::slope).min()?;
    let minimal: Vec<usize> = (0..active.len()).filter(|&i| active[i].slope() == b).collect();
    if minimal.len() == 1 && left[minimal[0]] > 0 {
        let i = minimal[0];
        if points.is_empty() {
            points.push(OrbitPoint::new("u0", vec![0; active.len()]));
        }
        let at = rng.gen_range(0..points.len());
        points[at].orders[i] += left[i];
    }
    let datum = OrbitDatum { nonzero, points, a_complete: true };
    (root_points(&datum, &active) >= 3).then(|| (Representation::new(summands), datum))
}

/// Characters with `d <= 4` and at most 6 entries, all supported.
pub fn characters(rng: &mut ChaCha8Rng) -> CharacterList {
    let d = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=6);
    let chars = (0..m)
        .map(|_| (0..d).map(|_| rng.gen_range(-2..=3)).collect())
        .collect();
    CharacterList::full(d, chars)
}

/// A pointed cone with at least one generator.
pub fn pointed_cone(rng: &mut ChaCha8Rng) -> (CharacterList, Cone) {
    loop {
        let c = characters(rng);
        if let Ok(k) = cone(&c) {
            if k.pointed && !k.generators.is_empty() {
                return (c, k);
            }
        }
    }
}

/// A character list whose cone contains a line.
pub fn non_pointed(rng: &mut ChaCha8Rng) -> CharacterList {
    loop {
        let mut c = characters(rng);
        let v: Vec<i64> = (0..c.d).map(|_| rng.gen_range(-2..=2)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let k = rng.gen_range(1..=2);
        c.chars.push(v.iter().map(|x| x * k).collect());
        c.chars.push(v.iter().map(|x| -x).collect());
        c.support.extend([true, true]);
        return c;
    }
}

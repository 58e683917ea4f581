//! Minimum enclosing circle by randomized incremental construction.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Smallest circle containing a finite point set, together with the indices
/// of the input points that determine it (one, two or three of them).
#[derive(Clone, Debug, PartialEq)]
pub struct EnclosingCircle {
    pub center: Complex64,
    pub radius: f64,
    pub support: Vec<usize>,
}

impl EnclosingCircle {
    fn point(points: &[Complex64], i: usize) -> Self {
        EnclosingCircle {
            center: points[i],
            radius: 0.0,
            support: vec![i],
        }
    }

    fn diametral(points: &[Complex64], i: usize, j: usize) -> Self {
        let center = (points[i] + points[j]) * 0.5;
        EnclosingCircle {
            center,
            radius: (points[i] - center).norm().max((points[j] - center).norm()),
            support: vec![i, j],
        }
    }

    fn circumscribed(points: &[Complex64], i: usize, j: usize, k: usize) -> Self {
        let (a, b, c) = (points[i], points[j], points[k]);
        let (ba, ca) = (b - a, c - a);
        let d = 2.0 * (ba.re * ca.im - ba.im * ca.re);
        let scale = ba.norm_sqr().max(ca.norm_sqr());
        if d.abs() <= 1e-14 * scale {
            // Collinear: the widest pair decides.
            let cands = [(i, j), (i, k), (j, k)];
            return cands
                .iter()
                .map(|&(p, q)| EnclosingCircle::diametral(points, p, q))
                .max_by(|x, y| x.radius.total_cmp(&y.radius))
                .unwrap();
        }
        let (nb, nc) = (ba.norm_sqr(), ca.norm_sqr());
        let offset = Complex64::new(ca.im * nb - ba.im * nc, ba.re * nc - ca.re * nb) / d;
        let center = a + offset;
        let radius = [a, b, c].iter().map(|p| (p - center).norm()).fold(0.0, f64::max);
        EnclosingCircle {
            center,
            radius,
            support: vec![i, j, k],
        }
    }

    pub fn contains(&self, p: Complex64) -> bool {
        (p - self.center).norm() <= self.radius * (1.0 + 1e-12) + 1e-15
    }
}

/// Computes the minimum enclosing circle of a non-empty point set. The
/// insertion order is shuffled with a seeded generator, so results are
/// reproducible for a fixed seed.
pub fn minimum_enclosing_circle(points: &[Complex64], seed: u64) -> Option<EnclosingCircle> {
    if points.is_empty() {
        return None;
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut circle = EnclosingCircle::point(points, order[0]);
    for a in 1..order.len() {
        let i = order[a];
        if circle.contains(points[i]) {
            continue;
        }
        circle = EnclosingCircle::point(points, i);
        for b in 0..a {
            let j = order[b];
            if circle.contains(points[j]) {
                continue;
            }
            circle = EnclosingCircle::diametral(points, i, j);
            for &k in &order[..b] {
                if !circle.contains(points[k]) {
                    circle = EnclosingCircle::circumscribed(points, i, j, k);
                }
            }
        }
    }
    Some(circle)
}

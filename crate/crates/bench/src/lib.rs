//! Fixed inputs shared by the benchmarks.

use pedalgeom::quad::QuadTag;
use pedalgeom::Polygon;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn triangle_pairs(count: usize, seed: u64) -> Vec<(Polygon, Polygon)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            (
                pedalgeom::random::triangle(&mut rng, 0.15),
                pedalgeom::random::triangle(&mut rng, 0.15),
            )
        })
        .collect()
}

pub fn quads(tag: QuadTag, count: usize, seed: u64) -> Vec<Polygon> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| pedalgeom::random::quad(&mut rng, tag))
        .collect()
}

/// `(W, V)` pairs of `n`-gons with `W = P(V, X)`, so the inner polygon of
/// `W` with `V`'s angles collapses at some θ.
pub fn collapsing_pairs(n: usize, count: usize, seed: u64) -> Vec<(Polygon, Polygon)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let v = pedalgeom::random::star_polygon(&mut rng, n, 0.2);
            let x = pedalgeom::random::point_in_disk(&mut rng, v.centroid(), 0.3);
            (pedalgeom::pedal(&v, x).unwrap(), v)
        })
        .collect()
}

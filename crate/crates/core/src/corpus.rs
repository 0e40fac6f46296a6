//! Seeded random instance generators for the test corpus and the `corpus`
//! CLI command. Generation is deterministic in the RNG; counting results
//! never depend on a seed.

use rand::Rng;

use crate::coloring::{Graph, PartialColoring};
use crate::marked::Marking;
use crate::poset::Poset;

/// Random poset on up to `max_elements` elements, labels `p0, p1, ...`.
/// Edges are sampled on index-increasing pairs, so the relation is acyclic
/// by construction; the builder strips whatever is transitively implied.
pub fn random_poset<R: Rng>(rng: &mut R, max_elements: usize) -> Poset {
    let n = rng.gen_range(1..=max_elements);
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.35) {
                covers.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::build(&labels, &covers)
        .expect("index-increasing edges cannot cycle")
        .poset
}

/// Random valid marking with values in `[lo, hi]`: the marked set contains
/// every minimal and maximal element plus a random sprinkle, and the values
/// restrict a random order-preserving map on the whole poset.
pub fn random_marking<R: Rng>(rng: &mut R, poset: &Poset, lo: i64, hi: i64) -> Marking {
    let n = poset.len();
    // labels p0.. are in topological order by construction of random_poset,
    // but recompute a linear extension to stay correct for any poset
    let topo = poset.topo_order();
    let mut phi = vec![lo; n];
    for &p in &topo {
        let mut lower = lo;
        for &(u, v) in poset.cover_indices() {
            if v == p {
                lower = lower.max(phi[u]);
            }
        }
        let bump = rng.gen_range(0..=2);
        phi[p] = (lower + bump).min(hi);
    }
    let extremes = poset.minimal_mask() | poset.maximal_mask();
    let mut values = Vec::new();
    for (i, &v) in phi.iter().enumerate() {
        if extremes & (1 << i) != 0 || rng.gen_bool(0.4) {
            values.push((poset.label(i).to_string(), v));
        }
    }
    Marking::new(poset.clone(), &values).expect("labels come from the poset")
}

/// Random simple graph on up to `max_vertices` vertices, labels `v0, ...`.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Graph::build(&labels, &edges).expect("distinct labels")
}

/// Random partial coloring with palette size in `1..=max_k`. The coloring
/// may be improper on the marked set; the counting operations treat that as
/// the zero polynomial.
pub fn random_coloring<R: Rng>(rng: &mut R, graph: &Graph, max_k: u32) -> PartialColoring {
    let k = rng.gen_range(1..=max_k);
    let mut colors = Vec::new();
    for v in graph.vertices() {
        if rng.gen_bool(0.5) {
            colors.push((v.as_str(), rng.gen_range(1..=k)));
        }
    }
    PartialColoring {
        k,
        colors: colors
            .into_iter()
            .map(|(v, c)| (v.to_string(), c))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(11);
        let mut b = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let pa = random_poset(&mut a, 7);
            let pb = random_poset(&mut b, 7);
            assert_eq!(pa, pb);
            let ma = random_marking(&mut a, &pa, -3, 5);
            let mb = random_marking(&mut b, &pb, -3, 5);
            assert_eq!(ma, mb);
            assert!(ma.validate().is_ok());
        }
    }

    #[test]
    fn markings_cover_extremes_and_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = random_poset(&mut rng, 7);
            let m = random_marking(&mut rng, &p, -3, 5);
            m.validate().unwrap();
            for (_, v) in m.marker_values() {
                assert!((-3..=5).contains(&v));
            }
        }
    }
}

#![allow(dead_code)]

use cayley_fr::group::units_mod;
use cayley_fr::{CayleyGraph, FiniteAbelianGroup, GraphSpec, GroupElement};
use rand::Rng;

pub fn graph(orders: &[u64], set: &[&[u64]]) -> CayleyGraph {
    CayleyGraph::from_spec(&GraphSpec {
        group: orders.to_vec(),
        set: set.iter().map(|c| c.to_vec()).collect(),
    })
    .unwrap()
}

pub fn element(g: &CayleyGraph, coords: &[u64]) -> GroupElement {
    g.group().element(coords.to_vec()).unwrap()
}

/// `Z_2 + Z_9`, `S = {(0, l) : l unit} + {(1, 0)}`.
pub fn z2_z9_units() -> CayleyGraph {
    graph(
        &[2, 9],
        &[
            &[0, 1],
            &[0, 2],
            &[0, 4],
            &[0, 5],
            &[0, 7],
            &[0, 8],
            &[1, 0],
        ],
    )
}

/// `Z_2 + Z_3`, `S = {(0,1), (0,2), (1,0)}`.
pub fn z2_z3_prism() -> CayleyGraph {
    graph(&[2, 3], &[&[0, 1], &[0, 2], &[1, 0]])
}

pub fn hypercube(dim: usize) -> CayleyGraph {
    let grp = FiniteAbelianGroup::elementary_two_group(dim).unwrap();
    let set = (0..dim).map(|i| {
        let mut c = vec![0; dim];
        c[i] = 1;
        grp.element(c).unwrap()
    });
    CayleyGraph::new(grp.clone(), set.collect::<Vec<_>>()).unwrap()
}

pub fn cycle(n: u64) -> CayleyGraph {
    graph(&[n], &[&[1], &[n - 1]])
}

/// Orbits of `g -> -g` on the nonzero elements.
pub fn inverse_orbits(grp: &FiniteAbelianGroup) -> Vec<Vec<GroupElement>> {
    let mut out = Vec::new();
    for g in grp.elements().skip(1) {
        let ng = grp.neg(&g);
        if ng >= g {
            out.push(if ng == g { vec![g] } else { vec![g, ng] });
        }
    }
    out
}

/// Orbits of `g -> l g` over the units `l` of the exponent, on nonzero elements.
pub fn unit_orbits(grp: &FiniteAbelianGroup) -> Vec<Vec<GroupElement>> {
    let units = units_mod(grp.exponent());
    let mut seen = vec![false; grp.size()];
    seen[0] = true;
    let mut out = Vec::new();
    for g in grp.elements() {
        if seen[grp.rank(&g)] {
            continue;
        }
        let mut orbit: Vec<GroupElement> = units.iter().map(|&l| grp.scale(l, &g)).collect();
        orbit.sort();
        orbit.dedup();
        for x in &orbit {
            seen[grp.rank(x)] = true;
        }
        out.push(orbit);
    }
    out
}

pub fn union_of(orbits: &[Vec<GroupElement>], mask: u64) -> Vec<GroupElement> {
    orbits
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .flat_map(|(_, o)| o.iter().cloned())
        .collect()
}

/// Every Cayley graph on `grp` (all symmetric connection sets).
pub fn all_cayley_graphs(grp: &FiniteAbelianGroup) -> Vec<CayleyGraph> {
    let orbits = inverse_orbits(grp);
    assert!(orbits.len() < 20, "too many connection sets to enumerate");
    (0u64..1 << orbits.len())
        .map(|mask| CayleyGraph::new(grp.clone(), union_of(&orbits, mask)).unwrap())
        .collect()
}

pub fn random_symmetric_graph(grp: &FiniteAbelianGroup, rng: &mut impl Rng) -> CayleyGraph {
    let orbits = inverse_orbits(grp);
    let mask = rng.gen_range(0..1u64 << orbits.len().min(63));
    CayleyGraph::new(grp.clone(), union_of(&orbits, mask)).unwrap()
}

pub fn random_unit_closed_graph(grp: &FiniteAbelianGroup, rng: &mut impl Rng) -> CayleyGraph {
    let orbits = unit_orbits(grp);
    let mask = rng.gen_range(0..1u64 << orbits.len().min(63));
    CayleyGraph::new(grp.clone(), union_of(&orbits, mask)).unwrap()
}

/// Inner-product bent function composed with a random permutation of the
/// second half and a random additive function of it (Maiorana-McFarland).
pub fn random_mm_bent(vars: u32, rng: &mut impl Rng) -> cayley_fr::BooleanFunction {
    use rand::seq::SliceRandom;
    let k = vars / 2;
    let half = 1usize << k;
    let mut perm: Vec<usize> = (0..half).collect();
    perm.shuffle(rng);
    let g: Vec<bool> = (0..half).map(|_| rng.gen_bool(0.5)).collect();
    cayley_fr::BooleanFunction::from_index_fn(vars, |i| {
        let x = i >> k;
        let y = i & (half - 1);
        ((x & perm[y]).count_ones() % 2 == 1) ^ g[y]
    })
    .unwrap()
}

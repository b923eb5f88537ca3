//! Lifted orderings measured against brute-force ground truth.

use std::collections::BTreeSet;
use std::sync::Arc;

use ddp_core::{
    build_group, enumerate_ddp, enumerate_lifts, parse_descriptor, DdpSequence, Epimorphism,
    GroupTable,
};

fn table(desc: &str) -> Arc<GroupTable> {
    Arc::new(build_group(&parse_descriptor(desc).unwrap()).unwrap())
}

/// The reduction Z_source → Z_target, x ↦ x mod target.
fn mod_epi(source: &str, target: &str) -> Epimorphism {
    let g = table(source);
    let h = table(target);
    let t = h.order();
    let map = (0..g.order()).map(|x| x % t).collect();
    Epimorphism::new(g, h, map).unwrap()
}

#[test]
fn swept_lifts_sit_inside_the_true_lift_set() {
    let epi = mod_epi("Z12", "Z4");
    let base = DdpSequence::new(table("Z4"), vec![0, 1, 3, 2]).unwrap();
    // ground truth: all Z12 orderings whose first block projects onto the base
    let z12 = table("Z12");
    let true_lifts: BTreeSet<Vec<usize>> = enumerate_ddp(&z12, usize::MAX)
        .into_iter()
        .filter(|seq| (0..4).all(|i| seq[i] % 4 == base.elements()[i]))
        .collect();
    assert_eq!(true_lifts.len(), 104);
    let swept = enumerate_lifts(&epi, &base, usize::MAX).unwrap();
    assert_eq!(swept.len(), 6);
    for lift in &swept {
        assert!(true_lifts.contains(lift.elements()));
    }
}

/// Block structure of a lifted ordering: position i = q·n + r projects
/// onto base position r when q is even and onto n−1−r when q is odd.
fn assert_block_projection(epi: &Epimorphism, base: &DdpSequence, lift: &DdpSequence) {
    let n = base.len();
    for (i, &x) in lift.elements().iter().enumerate() {
        let (q, r) = (i / n, i % n);
        let expected = if q % 2 == 0 {
            base.elements()[r]
        } else {
            base.elements()[n - 1 - r]
        };
        assert_eq!(epi.apply(x), expected, "position {i}");
    }
}

#[test]
fn lifts_follow_the_block_projection_pattern() {
    let base = DdpSequence::new(table("Z4"), vec![0, 1, 3, 2]).unwrap();
    for source in ["Z12", "Z36"] {
        let epi = mod_epi(source, "Z4");
        for lift in enumerate_lifts(&epi, &base, usize::MAX).unwrap() {
            assert_block_projection(&epi, &base, &lift);
        }
    }
}

#[test]
fn pairless_plans_still_sweep_the_kernel_units() {
    // Z2×Z9 → Z2: the single base divisor is an involution, so the plan
    // has no cross pairs and the multiplicity comes from unit rescalings
    // of the kernel ordering alone: φ(9) = 6.
    let g = table("Z2xZ9");
    let h = table("Z2");
    let map = (0..18).map(|x| x / 9).collect();
    let epi = Epimorphism::new(g, h.clone(), map).unwrap();
    let base = DdpSequence::new(h, vec![0, 1]).unwrap();
    let lifts = enumerate_lifts(&epi, &base, usize::MAX).unwrap();
    assert_eq!(lifts.len(), 6);
    let distinct: BTreeSet<Vec<usize>> = lifts
        .iter()
        .map(|s| s.elements().to_vec())
        .collect();
    assert_eq!(distinct.len(), 6);
}

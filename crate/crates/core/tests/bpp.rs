mod common;

use proptest::prelude::*;
use twobar::exact::oracle_opt;
use twobar::gen::{ffd_bpp, gen_certified_bpp, transform_bpp_detailed, BppInstance, BppSolution};
use twobar::{evaluate_packing, Family};

/// Bins of a random BPP solution: each bin filled with items whose sizes
/// sum to at most `cap`.
fn arb_solution() -> impl Strategy<Value = (BppInstance, BppSolution)> {
    (
        2u64..=40,
        prop::collection::vec(prop::collection::vec(1u64..=40, 1..6), 2..8),
    )
        .prop_map(|(cap, raw)| {
            let mut sizes = Vec::new();
            let mut bins = Vec::new();
            for bin in raw {
                let mut free = cap;
                let mut items = Vec::new();
                for s in bin {
                    let s = 1 + (s - 1) % free.max(1);
                    if s > free {
                        break;
                    }
                    free -= s;
                    items.push(sizes.len());
                    sizes.push(s);
                    if free == 0 {
                        break;
                    }
                }
                bins.push(items);
            }
            (BppInstance::new(sizes, cap).unwrap(), BppSolution { bins })
        })
}

proptest! {
    #[test]
    fn transform_invariants((bpp, sol) in arb_solution()) {
        let t = transform_bpp_detailed(&bpp, &sol).unwrap();
        let i = &t.instance;
        prop_assert_eq!(i.n(), t.residuals.iter().sum::<usize>());
        prop_assert_eq!(2 * i.n(), bpp.sizes.len() - t.removed);
        prop_assert_eq!(i.family, Family::Bpp);
        prop_assert!(i.pairs().all(|(a, b)| a <= bpp.capacity && b <= bpp.capacity));
        let e = evaluate_packing(i, &t.witness).unwrap();
        prop_assert!(e.feasible);
        prop_assert!(e.length <= t.bins);
        prop_assert_eq!(i.witness_length, Some(e.length as u64));
        prop_assert_eq!(i.known_opt, Some(t.bins as u64 - 1));
    }

    #[test]
    fn ffd_is_a_valid_packing(sizes in prop::collection::vec(1u64..=50, 1..60), cap in 50u64..=120) {
        let bpp = BppInstance::new(sizes, cap).unwrap();
        let sol = ffd_bpp(&bpp);
        prop_assert!(sol.validate(&bpp).is_ok());
        prop_assert!(sol.bin_count() >= bpp.area_bound());
    }
}

#[test]
fn tiny_transformed_optimum_is_n_minus_one_or_n() {
    let mut checked = 0;
    for seed in 0..400 {
        let Some((bpp, sol, _)) = gen_certified_bpp(8, 20, (3, 12), seed, 50).unwrap() else {
            continue;
        };
        let t = transform_bpp_detailed(&bpp, &sol).unwrap();
        if t.instance.n() > 7 {
            continue;
        }
        let opt = oracle_opt(&t.instance).unwrap();
        assert!(
            opt + 1 == t.bins || opt == t.bins,
            "seed {seed}: opt {opt}, N {}",
            t.bins
        );
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} instances checked");
}

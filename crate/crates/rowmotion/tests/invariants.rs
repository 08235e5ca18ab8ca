use num_integer::binomial;
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use rowmotion::decompose::{decompose, Decomposition};
use rowmotion::dynamics::{ideal_orbits, rowmotion, Action, RankPermutation};
use rowmotion::families::*;
use rowmotion::lifted::{
    b_rowmotion, b_toggle, pl_rowmotion, pl_toggle, random_b_point, random_pl_point,
    random_positive, seeded_rng,
};
use rowmotion::parse::parse_q_expr;
use rowmotion::qrow::{enumerate_labelings, flavor_cycle_counts, q_orbits, FlavorAlphabet};
use rowmotion::scalar::{int, rat};
use rowmotion::statistics::{homomesy_check, t_signed};
use rowmotion::{IdealLattice, Poset, Rational, Stat};

fn small_poset(k: usize) -> Poset {
    match k % 8 {
        0 => rectangle(2, 3),
        1 => rectangle(3, 3),
        2 => shifted_staircase(3),
        3 => root_poset_a(3),
        4 => root_poset_b(2),
        5 => double_tailed_diamond(3),
        6 => trapezoid(2, 3),
        _ => chain_of_vs(2),
    }
    .unwrap()
}

#[test]
fn ideal_counts() {
    for a in 1..=4u64 {
        for b in 1..=4u64 {
            let l = IdealLattice::new(rectangle(a as usize, b as usize).unwrap()).unwrap();
            assert_eq!(l.len() as u64, binomial(a + b, a));
        }
    }
    for n in 1..=5u64 {
        let catalan = binomial(2 * n + 2, n + 1) / (n + 2);
        let a = IdealLattice::new(root_poset_a(n as usize).unwrap()).unwrap();
        let b = IdealLattice::new(root_poset_b(n as usize).unwrap()).unwrap();
        let s = IdealLattice::new(shifted_staircase(n as usize).unwrap()).unwrap();
        assert_eq!(a.len() as u64, catalan);
        assert_eq!(b.len() as u64, binomial(2 * n, n));
        assert_eq!(s.len() as u64, 1 << n);
    }
    // the minuscule representations of E6 and E7 have dimension 27 and 56
    assert_eq!(IdealLattice::new(minuscule_e6()).unwrap().len(), 27);
    assert_eq!(IdealLattice::new(minuscule_e7()).unwrap().len(), 56);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn span_statistics_decompose_to_their_coefficients(k in 0usize..8, seed in any::<u64>()) {
        let lat = IdealLattice::new(small_poset(k)).unwrap();
        let n = lat.poset().len();
        let mut rng = seeded_rng(seed);
        let mut draw = || rat(rng.gen_range(-20..=20), rng.gen_range(1..=7));
        let c = draw();
        let cs: Vec<Rational> = (0..n).map(|_| draw()).collect();
        let mut f = Stat::constant(&lat, c.clone());
        for (x, cx) in cs.iter().enumerate() {
            f = &f + &t_signed(&lat, x).scale(cx);
        }
        let d = decompose(&lat, &f).unwrap();
        prop_assert_eq!(d, Some(Decomposition { constant: c, coeffs: cs }));
    }

    #[test]
    fn toggleability_is_zero_mesic_under_every_rank_order(k in 0usize..8, seed in any::<u64>()) {
        let lat = IdealLattice::new(small_poset(k)).unwrap();
        let p = lat.poset();
        let mut order: Vec<u32> = (0..=p.max_rank().unwrap()).collect();
        order.shuffle(&mut seeded_rng(seed));
        let orbits = ideal_orbits(&lat, &Action::Sigma(RankPermutation::new(p, order).unwrap())).unwrap();
        for x in 0..p.len() {
            let r = homomesy_check(&t_signed(&lat, x), &orbits);
            prop_assert!(r.is_homomesic && r.global_average.is_zero());
        }
    }

    #[test]
    fn lifted_toggles_are_involutions(k in 0usize..8, seed in any::<u64>()) {
        let p = small_poset(k);
        let mut rng = seeded_rng(seed);
        let (a, w) = (random_positive(&mut rng), random_positive(&mut rng));
        let pl = random_pl_point(p.len(), a.clone(), w.clone(), &mut rng);
        let bp = random_b_point(p.len(), a, w, &mut rng).unwrap();
        for x in 0..p.len() {
            prop_assert_eq!(pl_toggle(&p, x, &pl_toggle(&p, x, &pl)), pl.clone());
            prop_assert_eq!(b_toggle(&p, x, &b_toggle(&p, x, &bp)), bp.clone());
        }
        prop_assert_ne!(pl_rowmotion(&p, &pl), pl);
        prop_assert_ne!(b_rowmotion(&p, &bp), bp);
    }

    #[test]
    fn q_rowmotion_cycles_flavors_in_ratio(k in 0usize..3, r in 1usize..3, s in 1usize..3, seed in any::<u64>()) {
        let p = [root_poset_a(2), rectangle(2, 2), shifted_staircase(2)].into_iter().nth(k).unwrap();
        let lat = IdealLattice::new(p.unwrap()).unwrap();
        let p = lat.poset();
        let al = FlavorAlphabet::random(r, s, &mut seeded_rng(seed)).unwrap();
        let space = enumerate_labelings(&lat, &al, 100_000).unwrap();
        let orbits = q_orbits(p, &al, &space).unwrap();
        prop_assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), space.len());
        for orb in &orbits {
            let members: Vec<_> = orb.iter().map(|&m| &space[m]).collect();
            for (ins, outs) in flavor_cycle_counts(p, &members) {
                // toggle-in events come in multiples of r, toggle-out events of s, equally often
                prop_assert_eq!(ins * s, outs * r);
            }
        }
    }

    #[test]
    fn q_expressions_specialize(a in 1usize..6, b in 1usize..6, num in 1i64..9, den in 1i64..9) {
        let f = parse_q_expr(&format!("[{a}]*[{b}]/[{}]", a + b)).unwrap();
        prop_assert_eq!(f.eval(&int(1)), Some(rat((a * b) as i64, (a + b) as i64)));
        let q = rat(num, den);
        let qn = |n: usize| (0..n).fold(Rational::zero(), |acc, e| acc + q.pow(e as i32));
        prop_assert_eq!(f.eval(&q), Some(qn(a) * qn(b) / qn(a + b)));
    }
}

#[test]
fn rowmotion_on_vertices_of_the_order_polytope() {
    let lat = IdealLattice::new(rectangle(2, 3).unwrap()).unwrap();
    let p = lat.poset();
    for &i in lat.ideals() {
        let v = |i: rowmotion::OrderIdeal| rowmotion::lifted::PLPoint::vertex(p, i);
        assert_eq!(pl_rowmotion(p, &v(i)), v(rowmotion(p, i)));
    }
}

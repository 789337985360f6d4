use binsparse::roots::{
    all_roots, check_dj_growth, check_epsilon_threshold, check_random_lower_family,
    check_random_upper_family, check_real_count_agreement, count_real_roots, heuristic_roots,
    lower_threshold, random_lower_family, random_upper_family, SolveOptions,
};
use binsparse::binomial::binomial;
use binsparse::Status;

// Real-root counts for n = 1..=14 (m = 3) and n = 1..=12 (m = 4). The
// Aberth disks below are an independent derivation of the same table.
const N3: [u64; 14] = [0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 2, 2];
const N4: [u64; 12] = [0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3];

#[test]
fn real_root_tables_match_certified_disks() {
    let opts = SolveOptions::default();
    for (m, table) in [(3u32, &N3[..]), (4, &N4[..])] {
        for (i, &expected) in table.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(count_real_roots(m, n, 600).unwrap().count, expected, "sturm m={m} n={n}");
            if n > m as u64 {
                let r = all_roots(m, n, &opts).unwrap();
                assert_eq!(r.solution.real_roots.len() as u64, expected, "disks m={m} n={n}");
            }
        }
    }
}

#[test]
fn quadratic_exponents_count_floor() {
    for n in 2..=16 {
        assert_eq!(count_real_roots(2, n, 600).unwrap().count, n / 2, "n={n}");
    }
}

#[test]
fn real_counts_agree_with_disks() {
    let opts = SolveOptions::default();
    for m in 2..=5 {
        for n in (m as u64 + 1..=m as u64 + 7).filter(|&n| binomial(n, m as i64) <= 600.into()) {
            let r = check_real_count_agreement(m, n, 600, &opts);
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
    }
}

#[test]
fn heuristic_predictions_land_near_real_roots() {
    let c = count_real_roots(3, 14, 600).unwrap();
    let h = heuristic_roots(3, 14, &c);
    assert_eq!(h.len(), 3);
    let gap = |label: &str| h.iter().find(|x| x.label == label).unwrap().gap.unwrap();
    assert!(gap("constant-linear") < 0.1, "{h:?}");
    assert!(gap("linear-next") < 0.2 && gap("linear-next-crude") < 0.2, "{h:?}");
}

#[test]
fn growth_and_threshold_inequalities() {
    for m in 3..=8 {
        assert_eq!(check_dj_growth(m, 50).status, Status::Pass);
        for n in 2 * m as u64 + 1..=60 {
            assert_eq!(check_epsilon_threshold(m, n).status, Status::Pass, "m={m} n={n}");
        }
    }
}

#[test]
fn random_upper_families_stay_inside_disc() {
    let r = check_random_upper_family(3, 19, 0xabc, 20, &SolveOptions::default());
    assert_eq!(r.status, Status::Pass, "{r:?}");
}

#[test]
fn random_lower_families_avoid_inner_disc() {
    for m in 3..=5 {
        let n = lower_threshold(m);
        let r = check_random_lower_family(m, n, 0xdef, 20, &SolveOptions::default());
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
}

#[test]
fn random_families_are_reproducible_and_within_hypotheses() {
    assert_eq!(random_upper_family(3, 19, 5), random_upper_family(3, 19, 5));
    assert_ne!(random_upper_family(3, 19, 5), random_upper_family(3, 19, 6));
    let (m, n) = (4u32, 12u64);
    for seed in 0..20 {
        let g = random_lower_family(m, n, seed);
        assert!(g.constant_term().magnitude() >= binomial(n + 1, m as i64 - 1).magnitude());
        for t in g.terms().iter().skip(2) {
            let j = t.exp / (m as u64 + 1) + 1;
            assert!(t.exp >= (m as u64 + 1) * (j - 1));
            assert!(t.coeff.magnitude() <= binomial(n, (m as u64 + j - 1) as i64).magnitude());
        }
    }
}

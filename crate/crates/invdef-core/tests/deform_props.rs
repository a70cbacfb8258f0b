use invdef_core::action::{GroupAction, Twist};
use invdef_core::algebra::{rational, Monomial, Polynomial, QMatrix, Ring};
use invdef_core::deform::iterate::{obstruction_step, stop_check, DeformationState};
use invdef_core::deform::{
    build_presentation, covariant_basis, first_order, run, tangent_space, verify, Options, Presentation, Problem,
};
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

const P: u64 = 1_000_000_007;

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % P;
                for k in c..ncols {
                    rows[r][k] = (rows[r][k] + P - f * rows[rank][k] % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn weight(e: &[u32], w: &[i64]) -> i64 {
    e.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A finite-colength monomial ideal: the standard set is everything below
/// the corners; returns (minimal generators, standard monomials).
fn staircase(corners: &[Vec<u32>]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let n = corners[0].len();
    let mut std: BTreeSet<Vec<u32>> = BTreeSet::new();
    for c in corners {
        let mut e = vec![0u32; n];
        loop {
            std.insert(e.clone());
            let mut i = 0;
            while i < n && e[i] == c[i] {
                e[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            e[i] += 1;
        }
    }
    let mut outside: BTreeSet<Vec<u32>> = BTreeSet::new();
    for s in &std {
        for v in 0..n {
            let mut t = s.clone();
            t[v] += 1;
            if !std.contains(&t) {
                outside.insert(t);
            }
        }
    }
    let gens: Vec<Vec<u32>> = outside
        .iter()
        .filter(|g| !outside.iter().any(|h| h != *g && divides(h, g)))
        .cloned()
        .collect();
    (gens, std.into_iter().collect())
}

/// Graded dimensions of `Hom(I, P/I)` for a monomial ideal, keyed by the
/// shift `deg phi(g) - deg g`, by plain linear algebra on the pairwise
/// lcm relations.
fn hom_oracle(gens: &[Vec<u32>], std: &[Vec<u32>], w: &[i64]) -> BTreeMap<i64, usize> {
    let n = w.len();
    let std_set: BTreeSet<&Vec<u32>> = std.iter().collect();
    let span = std.iter().map(|s| weight(s, w)).max().unwrap() + gens.iter().map(|g| weight(g, w)).max().unwrap();
    let mut out = BTreeMap::new();
    for delta in -span..=span {
        // unknown (i, s): coefficient of the standard monomial s in phi(g_i)
        let mut unknowns = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            for s in std {
                if weight(s, w) == weight(g, w) + delta {
                    unknowns.push((i, s.clone()));
                }
            }
        }
        if unknowns.is_empty() {
            continue;
        }
        let mut eqs: BTreeMap<(usize, usize, Vec<u32>), Vec<u64>> = BTreeMap::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let l: Vec<u32> = (0..n).map(|v| gens[i][v].max(gens[j][v])).collect();
                for (u, (k, s)) in unknowns.iter().enumerate() {
                    let (sign, g) = if *k == i {
                        (1, &gens[i])
                    } else if *k == j {
                        (P - 1, &gens[j])
                    } else {
                        continue;
                    };
                    let image: Vec<u32> = (0..n).map(|v| s[v] + l[v] - g[v]).collect();
                    if std_set.contains(&image) {
                        let row = eqs.entry((i, j, image)).or_insert_with(|| vec![0; unknowns.len()]);
                        row[u] = (row[u] + sign) % P;
                    }
                }
            }
        }
        let dim = unknowns.len() - rank_mod_p(eqs.into_values().collect());
        if dim > 0 {
            out.insert(delta, dim);
        }
    }
    out
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{}", i + 1)).collect()
}

fn monomial_problem(gens: &[Vec<u32>], colength: usize, w: &[i64]) -> Problem {
    let n = w.len();
    Problem {
        ring: Ring::new(&names(n)).unwrap(),
        gm_weights: w.to_vec(),
        action: GroupAction::trivial(n),
        ideal: gens
            .iter()
            .map(|g| Polynomial::term(Monomial::from_exps(g), rational::one()))
            .collect(),
        decomposition: vec![(gens.len(), colength)],
        invariants: Vec::new(),
        options: Options::default(),
    }
}

fn tangent_weights(p: &Problem) -> Vec<i64> {
    let pres = build_presentation(p).unwrap();
    let covs = covariant_basis(p, &pres).unwrap();
    let mut w = tangent_space(&pres, &covs).weights;
    w.sort();
    w
}

fn oracle_weights(gens: &[Vec<u32>], std: &[Vec<u32>], w: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = hom_oracle(gens, std, w)
        .into_iter()
        .flat_map(|(delta, k)| std::iter::repeat_n(-delta, k))
        .collect();
    out.sort();
    out
}

/// The symmetries of the square acting on `x, y`, and the fat point
/// `(x^2 + y^2, xy)` that spreads out to four symmetric points.
fn square_symmetric_point() -> Problem {
    let q = |rows: [[i64; 2]; 2]| {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect())
    };
    let g = GroupAction::close_finite(&[q([[0, 1], [1, 0]]), q([[-1, 0], [0, 1]])], 2, 64).unwrap();
    let action = GroupAction::new(2, g, Vec::new(), Vec::new()).unwrap();
    let ring = Ring::new(&["x", "y"]).unwrap();
    Problem {
        ideal: vec![ring.parse("x^2+y^2").unwrap(), ring.parse("x*y").unwrap()],
        invariants: vec![ring.parse("x^2+y^2").unwrap(), ring.parse("x^2*y^2").unwrap()],
        ring,
        gm_weights: vec![1, 1],
        action,
        // two characters among the generators; only the trivial one occurs in P/I
        decomposition: vec![(1, 1), (1, 0)],
        options: Options::default(),
    }
}

/// Flatness up to the current order, equivariance and weight homogeneity of
/// the truncated family.
fn check_order(p: &Problem, pres: &Presentation, state: &DeformationState) -> Result<(), TestCaseError> {
    prop_assert!(state.invariant_holds(pres), "flatness fails at order {}", state.order);
    let (u, v) = (state.u(), state.v());
    prop_assert!(Twist::new(&p.action, None, Some(&pres.rho1)).is_equivariant(&u));
    prop_assert!(Twist::new(&p.action, Some(&pres.rho1), Some(&pres.rho2)).is_equivariant(&v));
    let w = state.layout.weights();
    for j in 0..pres.n1() {
        prop_assert_eq!(u.get(0, j).weight(&w), Some(pres.f_weights[j]));
        for k in 0..pres.n2() {
            let e = v.get(j, k);
            if !e.is_zero() {
                prop_assert_eq!(e.weight(&w), Some(pres.r_weights[k] - pres.f_weights[j]));
            }
        }
    }
    for c in state.obstruction.values() {
        prop_assert!(c.is_zero() || c.weight(&state.layout.t_weights).is_some());
    }
    Ok(())
}

fn run_orders(p: &Problem, orders: usize) -> Result<(), TestCaseError> {
    let pres = build_presentation(p).unwrap();
    let tan = tangent_space(&pres, &covariant_basis(p, &pres).unwrap()).positive_part();
    // the first order part is the tangent space: each row sends syzygies into I
    for row in &tan.rows {
        let image = row.mul(&pres.b0);
        for k in 0..pres.n2() {
            prop_assert!(pres.ideal_gb.contains(image.get(0, k)));
        }
    }
    let mut state = first_order(p, &pres, &tan).unwrap();
    for _ in 0..orders {
        check_order(p, &pres, &state)?;
        if stop_check(&pres, &state).unwrap().1 {
            break;
        }
        obstruction_step(p, &pres, &mut state).unwrap();
    }
    check_order(p, &pres, &state)
}

#[test]
fn square_symmetric_point_is_unobstructed() {
    let p = square_symmetric_point();
    run_orders(&p, 4).unwrap();
    let pres = build_presentation(&p).unwrap();
    let tan = tangent_space(&pres, &covariant_basis(&p, &pres).unwrap());
    assert_eq!(tan.weights, vec![2]);
    let res = run(&p, &pres, &tan).unwrap();
    assert!(res.stopped);
    assert!(res.k.is_empty());
    assert!(verify(&p, &res).passed());
}

fn corners(n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..3, n), 1..4)
        .prop_filter("small colength", |cs| staircase(cs).1.len() <= 6)
}

#[test]
fn oracle_agrees_with_known_tangent_dimensions() {
    // two points on a line, and the square of the maximal ideal in three variables
    let (g, s) = staircase(&[vec![1, 0]]);
    assert_eq!(hom_oracle(&g, &s, &[1, 2]).values().sum::<usize>(), 4);
    let (g, s) = staircase(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(g.len(), 6);
    assert_eq!(hom_oracle(&g, &s, &[1, 1, 1]).values().sum::<usize>(), 18);
}

#[test]
fn length_two_scheme_in_the_plane() {
    let (g, s) = staircase(&[vec![1, 0]]);
    let p = monomial_problem(&g, s.len(), &[1, 2]);
    let pres = build_presentation(&p).unwrap();
    let tan = tangent_space(&pres, &covariant_basis(&p, &pres).unwrap());
    assert_eq!(tan.dim(), 4);
    let res = run(&p, &pres, &tan).unwrap();
    assert!(res.stopped);
    assert!(res.k.is_empty());
    assert!(verify(&p, &res).passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn plane_tangent_has_twice_the_colength(cs in corners(2), w in prop::collection::vec(1i64..3, 2)) {
        let (g, s) = staircase(&cs);
        prop_assume!(!g.is_empty());
        let p = monomial_problem(&g, s.len(), &w);
        let ours = tangent_weights(&p);
        prop_assert_eq!(ours.len(), 2 * s.len());
        prop_assert_eq!(ours, oracle_weights(&g, &s, &w));
    }

    #[test]
    fn space_tangent_matches_the_hom_oracle(cs in corners(3), w in prop::collection::vec(1i64..3, 3)) {
        let (g, s) = staircase(&cs);
        let p = monomial_problem(&g, s.len(), &w);
        prop_assert_eq!(tangent_weights(&p), oracle_weights(&g, &s, &w));
    }

    #[test]
    fn every_order_keeps_the_flatness_invariant(cs in corners(2), w in prop::collection::vec(1i64..3, 2)) {
        let (g, s) = staircase(&cs);
        run_orders(&monomial_problem(&g, s.len(), &w), 3)?;
    }
}

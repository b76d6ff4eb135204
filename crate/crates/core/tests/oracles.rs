//! Brute-force oracles checked against the library. The oracles evaluate
//! tables directly and never go through the library's checkers.

use pentagon::algebra::{left_group, Semigroup};
use pentagon::census::{census, CensusConfig};
use pentagon::construct::{
    cosimpo_construction, cyclic_solution, ea2_solution, extension_decompose, group_solution,
    left_zero_construction, proj_solution, reconstruct_via_cosimpo, sigma_construction, GroupSpec,
    SigmaFamily,
};
use pentagon::perm::group_iso;
use pentagon::retraction::{check_cardinalities, orbit_retract_iso, retract};
use pentagon::{CayleyGroup, Partition, PermGroup, Permutation, RawTables, Solution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Evaluates `s23 s13 s12` and `s12 s23` on every triple.
fn pentagon_oracle(n: usize, m: &[usize], t: &[usize]) -> bool {
    let s = |x: usize, y: usize| (m[x * n + y], t[x * n + y]);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // s12
                let (a, b) = s(x, y);
                let (p, q, r) = (a, b, z);
                // s13: act on (p, r), keep q
                let (a, c) = s(p, r);
                let (p, r) = (a, c);
                // s23
                let (b, c) = s(q, r);
                let lhs = (p, b, c);
                let (b, c) = s(y, z);
                let (a, b) = s(x, b);
                let rhs = (a, b, c);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn brute_iso(a: &Solution, b: &Solution) -> bool {
    let n = a.n();
    if n != b.n() {
        return false;
    }
    all_perms(n).iter().any(|phi| {
        (0..n).all(|x| {
            (0..n).all(|y| {
                phi[a.mul(x, y)] == b.mul(phi[x], phi[y])
                    && phi[a.theta(x, y)] == b.theta(phi[x], phi[y])
            })
        })
    })
}

fn brute_group_iso(g: &CayleyGroup, h: &CayleyGroup) -> bool {
    let n = g.order();
    n == h.order()
        && all_perms(n)
            .iter()
            .any(|phi| (0..n).all(|x| (0..n).all(|y| phi[g.mul(x, y)] == h.mul(phi[x], phi[y]))))
}

fn group(spec: &str) -> Solution {
    group_solution(&GroupSpec::parse(spec).unwrap()).unwrap()
}

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

#[test]
fn klein_action_closure() {
    let g = PermGroup::generate(4, &[perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])]).unwrap();
    // closure by hand: id, a, b, ab
    let ab: Vec<usize> = (0..4).map(|i| [1, 0, 3, 2][[2, 3, 0, 1][i]]).collect();
    assert_eq!(ab, vec![3, 2, 1, 0]);
    assert_eq!(g.order(), 4);
    for e in g.elements().iter().filter(|e| !e.is_identity()) {
        assert!((0..4).all(|i| e.apply(i) != i));
    }
    assert!(g.contains(&perm(&ab)));
}

#[test]
fn orbits_and_blocks_by_hand() {
    let g = PermGroup::generate(4, &[perm(&[1, 0, 3, 2])]).unwrap();
    assert_eq!(g.orbits().classes(), &[vec![0, 1], vec![2, 3]]);
    let rot = PermGroup::generate(4, &[perm(&[1, 2, 3, 0])]).unwrap();
    let block = |parts: &Partition| {
        rot.elements().iter().all(|e| {
            parts.classes().iter().all(|c| {
                let img: Vec<usize> = c.iter().map(|&x| e.apply(x)).collect();
                let same = img.iter().all(|x| c.contains(x));
                let disjoint = img.iter().all(|x| !c.contains(x));
                same || disjoint
            })
        })
    };
    for classes in [vec![vec![0, 2], vec![1, 3]], vec![vec![0, 1], vec![2, 3]]] {
        let p = Partition::new(4, classes).unwrap();
        assert_eq!(rot.is_block_system(&p).unwrap(), block(&p));
    }
    assert!(block(
        &Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap()
    ));
    assert!(!block(
        &Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap()
    ));
}

#[test]
fn groups_of_order_six_are_distinct() {
    let c6 = CayleyGroup::cyclic(6);
    let s3 = GroupSpec::parse("C3:C2").unwrap().resolve().unwrap();
    assert!(!brute_group_iso(&c6, &s3));
    assert!(group_iso(&c6.regular_representation(), &s3.regular_representation()).is_none());
}

#[test]
fn first_associativity_failure() {
    let table = [0, 1, 0, 0];
    let mut first = None;
    'scan: for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                if table[table[x * 2 + y] * 2 + z] != table[x * 2 + table[y * 2 + z]] {
                    first = Some((x, y, z));
                    break 'scan;
                }
            }
        }
    }
    assert_eq!(first, Some((1, 0, 1)));
    assert_eq!(
        Semigroup::new(2, table.to_vec()).unwrap_err(),
        pentagon::Error::NotAssociative(1, 0, 1)
    );
}

#[test]
fn symmetric_group_is_not_weak_commutative() {
    let s3 = GroupSpec::parse("C3:C2").unwrap().resolve().unwrap();
    let s = Semigroup::from_group(&s3);
    let brute = (0..6).any(|x| {
        (0..6).any(|y| (0..6).any(|z| s3.mul(s3.mul(x, y), z) != s3.mul(s3.mul(x, z), y)))
    });
    assert!(brute);
    assert!(!s.is_weak_commutative());
    assert!(s.weak_commutativity_witness().is_some());
}

#[test]
fn automorphisms_of_z4() {
    let z4 = Semigroup::cyclic_group(4);
    let brute = |f: &[usize]| (0..4).all(|x| (0..4).all(|y| f[(x + y) % 4] == (f[x] + f[y]) % 4));
    let triple = [0, 3, 2, 1];
    let shift = [1, 2, 3, 0];
    assert!(brute(&triple) && z4.is_automorphism(&perm(&triple)));
    assert!(!brute(&shift) && !z4.is_automorphism(&perm(&shift)));
}

#[test]
fn small_left_group() {
    let lg = left_group(2, &CayleyGroup::cyclic(2)).unwrap();
    let t = lg.table();
    let wc = (0..4).all(|x| {
        (0..4).all(|y| (0..4).all(|z| t[t[x * 4 + y] * 4 + z] == t[t[x * 4 + z] * 4 + y]))
    });
    let lz = (0..4).all(|x| (0..4).all(|y| t[x * 4 + y] == x));
    assert!(wc && !lz);
    assert!(lg.is_weak_commutative() && !lg.is_left_zero());
}

#[test]
fn additive_z2_cases() {
    let m = vec![0, 1, 1, 0];
    assert!(pentagon_oracle(2, &m, &[0, 1, 0, 1]));
    assert!(RawTables::new(2, m.clone(), vec![0, 1, 0, 1])
        .unwrap()
        .verify_pentagon());
    let plus = vec![0, 1, 1, 0];
    let oracle = pentagon_oracle(2, &m, &plus);
    let raw = RawTables::new(2, m, plus).unwrap();
    assert!(!oracle);
    assert_eq!(raw.verify_pentagon(), oracle);
    // θ_{x+y}(x+y+z) = z differs from θ_y(z) = y+z when y = 1
    assert_eq!(
        raw.verify_component_equations().flags(),
        (true, false, false)
    );
}

#[test]
fn pentagon_oracle_on_constructions() {
    for sol in [
        group("C4"),
        group("C3:C2"),
        cyclic_solution(2, 3).unwrap(),
        ea2_solution(2),
        Solution::identity(4),
    ] {
        let raw = sol.raw();
        assert!(pentagon_oracle(raw.n(), raw.product(), raw.theta()));
    }
}

#[test]
fn c4_group_solution_is_not_involutive() {
    let s = group("C4");
    let n = s.n();
    let mut order = 1;
    'grow: loop {
        for x in 0..n {
            for y in 0..n {
                let mut p = (x, y);
                for _ in 0..order {
                    p = s.apply(p.0, p.1);
                }
                if p != (x, y) {
                    order += 1;
                    continue 'grow;
                }
            }
        }
        break;
    }
    assert_eq!(order, 4);
    assert!(!s.is_involutive());
    assert_eq!(s.map_order(), Some(4));
    let p = s.profile().unwrap();
    assert!(p.commutative && p.non_degenerate && p.bijective && !p.involutive);
}

#[test]
fn subsolutions_of_c4() {
    let s = group("C4");
    let closed = |t: &[usize]| {
        t.iter().all(|&x| {
            t.iter()
                .all(|&y| t.contains(&s.mul(x, y)) && t.contains(&s.theta(x, y)))
        })
    };
    assert!(closed(&[0, 2]) && s.is_subsolution(&[0, 2]).unwrap());
    assert!(!closed(&[0, 1]) && !s.is_subsolution(&[0, 1]).unwrap());
    let sub = s.restrict(&[0, 2]).unwrap();
    assert_eq!(sub, group("C2"));
}

#[test]
fn cyclic_parameters_distinguish() {
    assert!(!brute_iso(
        &cyclic_solution(1, 4).unwrap(),
        &cyclic_solution(2, 2).unwrap()
    ));
    assert!(cyclic_solution(1, 4)
        .unwrap()
        .isomorphic(&cyclic_solution(2, 2).unwrap())
        .is_none());
    for n in 1..=6 {
        let a = cyclic_solution(1, n).unwrap();
        let b = group(&format!("C{n}"));
        assert!(brute_iso(&a, &b));
        assert!(a.isomorphic(&b).is_some());
    }
}

#[test]
fn retraction_sizes() {
    let s = cyclic_solution(3, 2).unwrap();
    let r = retract(&s).unwrap();
    assert_eq!(r.quotient().n(), 2);
    assert!(brute_iso(r.quotient(), &group("C2")));
    let s = cyclic_solution(2, 3).unwrap();
    // rows equal exactly on points with equal j
    let classes = Partition::from_labels(&(0..6).map(|k| k % 3).collect::<Vec<_>>());
    assert_eq!(retract(&s).unwrap().classes(), &classes);
    let c = check_cardinalities(&s).unwrap();
    assert_eq!((c.carrier, c.group_order, c.retraction), (6, 3, 3));
    assert_eq!(c.class_sizes, vec![2, 2, 2]);
}

#[test]
fn census_exhaustive_properties() {
    for n in 1..=6 {
        let r = census(n, &CensusConfig::default()).unwrap();
        for sol in &r.representatives {
            assert!(sol.theta_shift_check().unwrap());
            // the shift law by brute force over the group
            let g = sol.assoc_group().unwrap();
            for z in 0..n {
                let tz = sol.theta_perm(z).unwrap();
                for e in g.elements() {
                    assert_eq!(sol.theta_perm(e.apply(z)).unwrap(), tz.after(&e.inverse()));
                }
            }
            for (orbit, phi) in g
                .orbits()
                .classes()
                .iter()
                .zip(orbit_retract_iso(sol).unwrap())
            {
                assert_eq!(orbit.len(), phi.len());
            }
            let rebuilt = reconstruct_via_cosimpo(sol).unwrap();
            assert!(rebuilt.isomorphic(sol).is_some());
            let d = extension_decompose(sol).unwrap();
            assert_eq!(d.x_size * d.group.order(), n);
        }
    }
}

#[test]
fn left_zero_constructions_match_by_brute_force() {
    let a = left_zero_construction(4, &[perm(&[1, 2, 3, 0])], &[0]).unwrap();
    assert!(brute_iso(&a, &group("C4")));
    let b = left_zero_construction(4, &[perm(&[1, 0, 3, 2])], &[0, 2]).unwrap();
    assert!(brute_iso(&b, &cyclic_solution(2, 2).unwrap()));
}

#[test]
fn cosimpo_on_a_left_group() {
    let lg = left_group(2, &CayleyGroup::cyclic(2)).unwrap();
    let c = lg
        .congruence(Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap())
        .unwrap();
    let sol = cosimpo_construction(&lg, &c, &[perm(&[2, 3, 0, 1])], 1).unwrap();
    let raw = sol.raw();
    assert!(pentagon_oracle(4, raw.product(), raw.theta()));
}

#[test]
fn sigma_example_is_a_solution() {
    let sigma = SigmaFamily::new(2, vec![Permutation::identity(2), perm(&[1, 0])]).unwrap();
    let s = sigma_construction(2, &CayleyGroup::cyclic(2), &sigma).unwrap();
    let raw = s.raw();
    assert!(pentagon_oracle(4, raw.product(), raw.theta()));
}

#[test]
fn decompose_cyclic_two_two() {
    let d = extension_decompose(&cyclic_solution(2, 2).unwrap()).unwrap();
    assert_eq!(d.x_size, 2);
    assert!(brute_group_iso(&d.group, &CayleyGroup::cyclic(2)));
}

#[test]
fn random_projection_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tried = 0;
    while tried < 200 {
        let f: Vec<usize> = (0..4).map(|_| rng.gen_range(0..4)).collect();
        let g: Vec<usize> = (0..4).map(|_| rng.gen_range(0..4)).collect();
        let idem = |h: &[usize]| (0..4).all(|x| h[h[x]] == h[x]);
        if !(idem(&f) && idem(&g) && (0..4).all(|x| f[g[x]] == g[f[x]])) {
            continue;
        }
        tried += 1;
        let raw = proj_solution(4, &f, &g).unwrap();
        assert!(pentagon_oracle(4, raw.product(), raw.theta()));
    }
}

#[test]
fn ea2_of_rank_two_is_the_klein_group_solution() {
    assert!(brute_iso(&ea2_solution(2), &group("C2xC2")));
}

/// Row-at-a-time search: every full assignment of permutation rows that
/// satisfies `θ_{θ_x(y)} θ_x = θ_y`, deduplicated by brute-force isomorphism.
fn naive_census(n: usize) -> Vec<Solution> {
    fn ok(n: usize, rows: &[Vec<usize>]) -> bool {
        let k = rows.len();
        for x in 0..k {
            for y in 0..k {
                let a = rows[x][y];
                if a >= k {
                    continue;
                }
                for z in 0..n {
                    if rows[a][rows[x][z]] != rows[y][z] {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(n: usize, perms: &[Vec<usize>], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Solution>) {
        if rows.len() == n {
            let sol = Solution::left_zero(n, rows.concat()).unwrap();
            if !out.iter().any(|s| brute_iso(s, &sol)) {
                out.push(sol);
            }
            return;
        }
        for p in perms {
            rows.push(p.clone());
            if ok(n, rows) {
                go(n, perms, rows, out);
            }
            rows.pop();
        }
    }
    let perms = all_perms(n);
    let mut out = Vec::new();
    go(n, &perms, &mut Vec::new(), &mut out);
    out
}

#[test]
fn census_agrees_with_naive_enumeration() {
    for n in 1..=4 {
        let naive = naive_census(n);
        let fast = census(n, &CensusConfig::default()).unwrap();
        assert_eq!(naive.len(), fast.count(), "n = {n}");
        for rep in &fast.representatives {
            assert!(naive.iter().any(|s| brute_iso(s, rep)));
        }
    }
}

use std::collections::{BTreeSet, VecDeque};

use milnor::bracket::{canonicalize, Bracket, FormalLinking};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Form = (i8, Bracket, Bracket);

fn pair(a: Bracket, b: Bracket) -> Bracket {
    Bracket::pair(a, b)
}

// every bracket obtained by swapping the children of one node
fn single_swaps(b: &Bracket) -> Vec<Bracket> {
    match b {
        Bracket::Leaf(_) => Vec::new(),
        Bracket::Node(l, r) => {
            let mut out = vec![pair((**r).clone(), (**l).clone())];
            for l2 in single_swaps(l) {
                out.push(pair(l2, (**r).clone()));
            }
            for r2 in single_swaps(r) {
                out.push(pair((**l).clone(), r2));
            }
            out
        }
    }
}

// proper swaps exclude the joining edge, so the top pair (u,v) is never a node here
fn moves((s, u, v): &Form) -> Vec<Form> {
    let mut out = vec![(*s, v.clone(), u.clone())];
    if let Bracket::Node(a, b) = u {
        out.push((*s, (**a).clone(), pair((**b).clone(), v.clone())));
    }
    if let Bracket::Node(b, c) = v {
        out.push((*s, pair(u.clone(), (**b).clone()), (**c).clone()));
    }
    for u2 in single_swaps(u) {
        out.push((-s, u2, v.clone()));
    }
    for v2 in single_swaps(v) {
        out.push((-s, u.clone(), v2));
    }
    out
}

fn orbit(start: Form) -> BTreeSet<Form> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        if !seen.insert(f.clone()) {
            continue;
        }
        for g in moves(&f) {
            if !seen.contains(&g) {
                queue.push_back(g);
            }
        }
    }
    seen
}

fn linking(f: &Form) -> FormalLinking {
    FormalLinking { sign: f.0, u: f.1.clone(), v: f.2.clone() }
}

fn imbalance(u: &Bracket, v: &Bracket) -> usize {
    u.weight().abs_diff(v.weight())
}

fn check_orbit(start: Form) {
    let orb = orbit(start.clone());
    let zero = orb.iter().any(|(s, u, v)| orb.contains(&(-s, u.clone(), v.clone())));
    let first = canonicalize(&linking(&start));
    for f in &orb {
        assert_eq!(canonicalize(&linking(f)), first, "{} vs {}", linking(f), linking(&start));
    }
    match first {
        None => assert!(zero, "{} canonicalized to zero but its orbit is sign-consistent", linking(&start)),
        Some((form, sign)) => {
            assert!(!zero, "{} has a vanishing orbit", linking(&start));
            assert!(orb.contains(&(sign, form.u.clone(), form.v.clone())));
            let best = orb.iter().map(|(_, u, v)| imbalance(u, v)).min().unwrap();
            assert_eq!(imbalance(&form.u, &form.v), best);
            assert!(form.u.weight() <= form.v.weight());
        }
    }
}

fn all_brackets(leaves: usize, letters: u32) -> Vec<Bracket> {
    if leaves == 1 {
        return (1..=letters).map(Bracket::Leaf).collect();
    }
    let mut out = Vec::new();
    for k in 1..leaves {
        for a in all_brackets(k, letters) {
            for b in all_brackets(leaves - k, letters) {
                out.push(pair(a.clone(), b));
            }
        }
    }
    out
}

fn random_bracket(rng: &mut ChaCha8Rng, leaves: usize, letters: u32) -> Bracket {
    if leaves == 1 {
        return Bracket::Leaf(rng.gen_range(1..=letters));
    }
    let k = rng.gen_range(1..leaves);
    pair(random_bracket(rng, k, letters), random_bracket(rng, leaves - k, letters))
}

#[test]
fn exhaustive_orbits_up_to_weight_six() {
    for weight in 2..=6 {
        let mut done: BTreeSet<Form> = BTreeSet::new();
        for b in all_brackets(weight, 2) {
            let Bracket::Node(u, v) = b else { unreachable!() };
            let start: Form = (1, *u, *v);
            if done.contains(&start) {
                continue;
            }
            check_orbit(start.clone());
            done.extend(orbit(start));
        }
    }
}

#[test]
fn three_letter_orbits_at_weight_five() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..150 {
        let b = random_bracket(&mut rng, 5, 3);
        let Bracket::Node(u, v) = b else { unreachable!() };
        check_orbit((1, *u, *v));
    }
}

#[test]
fn random_walks_up_to_weight_nine() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for weight in 7..=9 {
        for _ in 0..40 {
            let b = random_bracket(&mut rng, weight, 2);
            let Bracket::Node(u, v) = b else { unreachable!() };
            let mut f: Form = (1, *u, *v);
            let expected = canonicalize(&linking(&f));
            for _ in 0..300 {
                let options = moves(&f);
                f = options[rng.gen_range(0..options.len())].clone();
                assert_eq!(canonicalize(&linking(&f)), expected);
            }
        }
    }
}

#[test]
fn full_orbits_of_the_weight_nine_terms() {
    for s in ["lk(yyxy,yxyxy)", "lk(yyxy,yyxxy)", "lk(yyxy,(yxy,xy))"] {
        let l: FormalLinking = s.parse().unwrap();
        check_orbit((1, l.u, l.v));
    }
}

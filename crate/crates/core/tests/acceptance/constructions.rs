use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gonality::constructions::{glue_nonsep_distinct, glue_nonsep_equal, join_subcurve_covers, LegRef};
use gonality::fixtures::{figure, figure1_input, figure2_input, figure3_input, figure4_input, figure5_input};
use gonality::samples::{random_distinct_input, random_equal_input, random_fiber_marked};
use gonality::{AdmissibleCover, Mode};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Verdict;

const RUNS: usize = 200;
const MAX_RUN: Duration = Duration::from_secs(1);

/// Degree, genus and weighted branch count.
fn numbers(c: &AdmissibleCover) -> (i64, i64, i64) {
    (c.degree as i64, c.genus_of_source().unwrap() as i64, c.weighted_branch_count() as i64)
}

fn genus_degree(rng: &mut ChaCha8Rng, min_degree: u32) -> (u32, u32) {
    let k = rng.gen_range(min_degree..=4);
    let g = if k == 1 { 0 } else { rng.gen_range(0..=3) };
    (g, k)
}

/// One randomized instance of a construction and what it should do.
pub struct Instance {
    pub kind: &'static str,
    pub output: AdmissibleCover,
    pub expected: (i64, i64, i64),
    pub elapsed: Duration,
}

fn distinct(rng: &mut ChaCha8Rng) -> Instance {
    let (g, k) = genus_degree(rng, 1);
    let simple = rng.gen_bool(0.5);
    let input = random_distinct_input(rng, g, k, simple);
    let (d, gg, b) = numbers(&input);
    let start = Instant::now();
    let output = glue_nonsep_distinct(&input, "n1", "n2").unwrap().output;
    Instance { kind: "distinct", elapsed: start.elapsed(), output, expected: (d + 1, gg + 1, b + 4) }
}

fn equal(rng: &mut ChaCha8Rng) -> Instance {
    let (g, k) = genus_degree(rng, 2);
    let simple = rng.gen_bool(0.5);
    let input = random_equal_input(rng, g, k, simple);
    let (d, gg, b) = numbers(&input);
    let start = Instant::now();
    let output = glue_nonsep_equal(&input, "n1", "n2").unwrap().output;
    Instance { kind: "equal", elapsed: start.elapsed(), output, expected: (d, gg + 1, b + 2) }
}

fn join(rng: &mut ChaCha8Rng) -> Instance {
    let r = rng.gen_range(2..=3usize);
    // A spanning tree plus up to two extra nodes.
    let mut incidence: Vec<(usize, usize)> = (1..r).map(|i| (rng.gen_range(0..i), i)).collect();
    for _ in 0..rng.gen_range(0..=2) {
        let a = rng.gen_range(0..r);
        let mut b = rng.gen_range(0..r - 1);
        if b >= a {
            b += 1;
        }
        incidence.push((a.min(b), a.max(b)));
    }
    let delta = incidence.len();
    let mut valence = vec![0usize; r];
    for &(a, b) in &incidence {
        valence[a] += 1;
        valence[b] += 1;
    }
    let mut inputs = Vec::new();
    for (i, &v) in valence.iter().enumerate() {
        // A degree-1 line has no branch points and would leave its target unstable.
        let k = rng.gen_range(v.max(2) as u32..=4.max(v as u32));
        let g = rng.gen_range(0..=2);
        let simple = rng.gen_bool(0.5);
        inputs.push(random_fiber_marked(rng, g, k, v, &format!("p{i}."), simple));
    }
    let mut used = vec![0usize; r];
    let mut next = |i: usize| {
        used[i] += 1;
        LegRef::new(i, format!("p{i}.{}", used[i]))
    };
    let mut pairs = Vec::new();
    for &(a, b) in &incidence {
        pairs.push((next(a), next(b)));
    }
    pairs.shuffle(rng);
    let sum = |f: fn(&AdmissibleCover) -> (i64, i64, i64)| {
        inputs.iter().map(f).fold((0, 0, 0), |s, x| (s.0 + x.0, s.1 + x.1, s.2 + x.2))
    };
    let (k, g, b) = sum(numbers);
    let expected = (k - delta as i64, g + delta as i64 - (r as i64 - 1), b);
    let start = Instant::now();
    let output = join_subcurve_covers(&inputs, &pairs).unwrap().output;
    Instance { kind: "join", elapsed: start.elapsed(), output, expected }
}

/// `RUNS` instances of each construction from a fixed seed.
pub fn instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for make in [distinct, equal, join] {
        for _ in 0..RUNS {
            out.push(make(&mut rng));
        }
    }
    out
}

pub fn deltas() -> Verdict {
    let all = instances();
    let mut wrong = Vec::new();
    let mut slowest = Duration::ZERO;
    for (i, x) in all.iter().enumerate() {
        let got = (x.output.degree as i64, x.output.genus_of_source().unwrap() as i64, x.output.branch_count(Mode::Strict).map_or(-1, |b| b as i64));
        if got != x.expected {
            wrong.push(format!("#{i} {}: {got:?} != {:?}", x.kind, x.expected));
        }
        slowest = slowest.max(x.elapsed);
    }
    let pass = wrong.is_empty() && slowest < MAX_RUN;
    Verdict::new(
        pass,
        format!(
            "{} instances ({RUNS} per construction), {} mismatches, slowest run {:.1} ms{}",
            all.len(),
            wrong.len(),
            slowest.as_secs_f64() * 1e3,
            wrong.first().map_or(String::new(), |w| format!("; first: {w}"))
        ),
    )
}

/// Changes one thing about `c`: a node's ramification index, a branch
/// profile, or removes a rational tail.
fn mutate(rng: &mut ChaCha8Rng, c: &AdmissibleCover) -> Option<AdmissibleCover> {
    let mut m = c.clone();
    match rng.gen_range(0..3) {
        0 => {
            let e = m.edge_ram.keys().cloned().collect::<Vec<_>>().choose(rng)?.clone();
            let r = &mut m.edge_ram.get_mut(&e).unwrap().ram;
            *r = if *r > 1 && rng.gen_bool(0.5) { *r - 1 } else { *r + 1 };
        }
        1 => {
            let branch: BTreeSet<String> = m.target.branch_legs().map(|l| l.label.clone()).collect();
            let idx: Vec<usize> = (0..m.profiles.len())
                .filter(|&i| matches!(&m.profiles[i].point, gonality::TargetPoint::Leg(l) if branch.contains(l)))
                .filter(|&i| m.profiles[i].parts.len() > 1 || m.profiles[i].parts[0] > 1)
                .collect();
            let p = &mut m.profiles[*idx.choose(rng)?].parts;
            // Merge two parts, or split one.
            if p.len() >= 2 && rng.gen_bool(0.5) {
                let last = p.pop().unwrap();
                p[0] += last;
            } else if let Some(i) = p.iter().position(|&x| x > 1) {
                p[i] -= 1;
                p.push(1);
            } else {
                let last = p.pop().unwrap();
                p[0] += last;
            }
        }
        _ => {
            let tails: Vec<String> = m
                .source
                .vertices
                .iter()
                .filter(|v| v.genus == 0 && m.source.half_edges(&v.id) == 1)
                .map(|v| v.id.clone())
                .collect();
            let v = tails.choose(rng)?.clone();
            let edges: Vec<String> = m.source.edges.iter().filter(|e| e.ends.contains(&v)).map(|e| e.id.clone()).collect();
            m.source.vertices.retain(|x| x.id != v);
            m.source.edges.retain(|e| !edges.contains(&e.id));
            m.source.legs.retain(|l| l.at != v);
            m.vmap.remove(&v);
            m.degrees.remove(&v);
            for e in &edges {
                m.edge_ram.remove(e);
            }
            m.profiles.retain(|p| p.vertex != v);
        }
    }
    Some(m)
}

pub fn soundness() -> Verdict {
    let all = instances();
    let mut outputs: Vec<AdmissibleCover> = all.into_iter().map(|x| x.output).collect();
    outputs.extend((1..=5).map(|i| figure(i).unwrap().output));
    let invalid = outputs.iter().filter(|c| !c.is_valid(Mode::Strict)).count();
    let mut rng = ChaCha8Rng::seed_from_u64(0xbad);
    let (mut mutants, mut flipped) = (0, 0);
    while mutants < 500 {
        let c = outputs.choose(&mut rng).unwrap();
        let Some(m) = mutate(&mut rng, c) else { continue };
        mutants += 1;
        if !m.is_valid(Mode::Strict) {
            flipped += 1;
        }
    }
    let rate = flipped as f64 / mutants as f64;
    Verdict::new(
        invalid == 0 && rate >= 0.99,
        format!(
            "{} outputs, {invalid} fail strict validation; {flipped}/{mutants} mutants rejected ({:.1}%, need >= 99%)",
            outputs.len(),
            rate * 100.0
        ),
    )
}

pub fn figures() -> Verdict {
    let degrees = |cs: &[AdmissibleCover]| cs.iter().map(|c| c.degree).collect::<Vec<_>>();
    let genera = |cs: &[AdmissibleCover]| cs.iter().map(|c| c.genus_of_source().unwrap()).sum::<u32>();
    // (input degrees, nodes, output degree, output genus)
    let (f3, p3) = figure3_input();
    let (f4, p4) = figure4_input();
    let (f5, p5) = figure5_input();
    let g1 = figure1_input().genus_of_source().unwrap();
    let g2 = figure2_input().genus_of_source().unwrap();
    let expected: [(Vec<u32>, usize, u32, u32); 5] = [
        (vec![3], 1, 4, g1 + 1),
        (vec![4], 1, 4, g2 + 1),
        (vec![4, 2, 2], 2, 6, genera(&f3) + 2 - 2),
        (vec![4, 2], 2, 4, genera(&f4) + 2 - 1),
        (vec![3, 2, 2], 2, 7, genera(&f5) + 2 - 2),
    ];
    let inputs = [
        (degrees(&[figure1_input()]), 1),
        (degrees(&[figure2_input()]), 1),
        (degrees(&f3), p3.len()),
        (degrees(&f4), p4.len()),
        (degrees(&f5), p5.len()),
    ];
    let mut bad = Vec::new();
    let mut layout = Vec::new();
    for (i, ((want_in, want_nodes, k, g), (got_in, nodes))) in expected.iter().zip(&inputs).enumerate() {
        let id = i as u32 + 1;
        let out = figure(id).unwrap().output;
        let got_g = out.genus_of_source().unwrap();
        let b = out.branch_count(Mode::Strict).ok();
        let ok = got_in == want_in
            && nodes == want_nodes
            && out.degree == *k
            && got_g == *g
            && b == Some(2 * got_g + 2 * out.degree - 2)
            && out.is_valid(Mode::Strict);
        if !ok {
            bad.push(id);
        }
        layout.push(format!("{id}: {got_in:?}->{} g={got_g} b={}", out.degree, b.unwrap_or(0)));
    }
    // The two-subcurve join keeps only the two input lines.
    let contracted = figure(4).unwrap().output.target.curve.vertices.len() == 2;
    Verdict::new(bad.is_empty() && contracted, format!("{}; mismatched {bad:?}", layout.join(", ")))
}

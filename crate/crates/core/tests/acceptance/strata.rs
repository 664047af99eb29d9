use std::collections::BTreeSet;

use gonality::canon::CanonicalForm;
use gonality::samples::{random_distinct_input, random_equal_input, random_fiber_marked};
use gonality::strata::{
    classify_stratum, hurwitz_dim, image_dimension_checks, image_stratum_of_lambda, lambda, lambda_dimension_check,
    phi, pointed_hurwitz_dim, psi, sampled_injectivity, StratumDescriptor,
};
use gonality::AdmissibleCover;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Verdict;

const RUNS: usize = 100;

fn b(g: u32, k: u32) -> usize {
    (2 * g + 2 * k - 2) as usize
}

fn pairing(delta: usize) -> Vec<(String, String)> {
    (1..=delta).map(|i| (format!("a{i}"), format!("b{i}"))).collect()
}

/// Two simple covers with `delta` marked points over one point each.
fn lambda_inputs(rng: &mut ChaCha8Rng) -> ((u32, u32, u32, u32, usize), AdmissibleCover, AdmissibleCover) {
    let delta = rng.gen_range(1..=3usize);
    let k1 = rng.gen_range((delta as u32).max(2)..=4);
    let k2 = rng.gen_range((delta as u32).max(2)..=4);
    let (g1, g2) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
    let c1 = random_fiber_marked(rng, g1, k1, delta, "a", true);
    let c2 = random_fiber_marked(rng, g2, k2, delta, "b", true).renamed(|x| {
        if x.starts_with('b') && x[1..].parse::<u32>().is_ok() {
            x.to_string()
        } else {
            format!("r.{x}")
        }
    });
    ((k1, g1, k2, g2, delta), c1, c2)
}

pub fn membership() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut misses: Vec<String> = Vec::new();
    let mut check = |what: &str, got: gonality::Result<StratumDescriptor>, want: StratumDescriptor| {
        match got {
            Ok(s) if s == want => {}
            other => misses.push(format!("{what}: {other:?} != {want:?}")),
        }
    };
    for _ in 0..RUNS {
        let (g, k) = (rng.gen_range(0..=3), rng.gen_range(2..=4));
        let input = random_equal_input(&mut rng, g, k, true);
        let out = psi(&input, "n1", "n2").unwrap().output;
        check("ψ", classify_stratum(&out), StratumDescriptor::chain(vec![2, b(g + 1, k) - 2]));

        let input = random_distinct_input(&mut rng, g, k, true);
        let out = phi(&input, "n1", "n2").unwrap().output;
        check("φ", classify_stratum(&out), StratumDescriptor::chain(vec![2, b(g, k), 2]));

        let ((k1, g1, k2, g2, delta), c1, c2) = lambda_inputs(&mut rng);
        let out = lambda(&c1, &c2, &pairing(delta)).unwrap().output;
        let (b1, b2) = (b(g1, k1), b(g2, k2));
        let want = StratumDescriptor::chain(vec![b1.min(b2), b1.max(b2)]);
        assert_eq!(image_stratum_of_lambda(k1, g1, k2, g2, delta as u32).unwrap(), want);
        check("λ", classify_stratum(&out), want);
    }
    Verdict::new(misses.is_empty(), format!("{RUNS} inputs for each of φ, ψ, λ; {} misclassified{}", misses.len(),
        misses.first().map_or(String::new(), |m| format!("; first: {m}"))))
}

pub fn dimensions() -> Verdict {
    let mut bad = Vec::new();
    let mut comparisons = 0;
    for k in 1..=10u32 {
        for g in 2..=10u32 {
            let expect = 2 * g as i64 + 2 * k as i64 - 5;
            if hurwitz_dim(k, g) != expect {
                bad.push(format!("dim H({k},{g})"));
            }
            for n in 0..=4u32 {
                comparisons += 1;
                if pointed_hurwitz_dim(k, g, n) != expect + n as i64 {
                    bad.push(format!("dim H({k},{g},{n})"));
                }
            }
            // Images of φ and ψ: every smaller-degree locus one genus up has
            // strictly smaller dimension than the image.
            let phi_image = expect + 2;
            let psi_image = expect + 1;
            for r in 1..=k {
                comparisons += 1;
                let d = 2 * (g as i64 + 1) + 2 * r as i64 - 5;
                if r < k && d >= psi_image {
                    bad.push(format!("ψ chain at ({k},{g}), r={r}"));
                }
                if d - 1 >= phi_image {
                    bad.push(format!("φ chain at ({k},{g}), r={r}"));
                }
            }
            if let Some(e) = image_dimension_checks(k, g) {
                bad.push(e);
            }
        }
    }
    for k1 in 1..=5u32 {
        for k2 in 1..=5u32 {
            for g1 in 1..=5u32 {
                for g2 in 1..=5u32 {
                    for delta in 1..=k1.min(k2) {
                        comparisons += 1;
                        let image = pointed_hurwitz_dim(k1, g1, 1) + pointed_hurwitz_dim(k2, g2, 1);
                        let g = g1 + g2 + delta - 1;
                        let worst = (1..(k1 + k2).saturating_sub(delta)).map(|r| 2 * g as i64 + 2 * r as i64 - 5).max();
                        if worst.is_some_and(|w| w >= image) {
                            bad.push(format!("λ chain at ({k1},{g1},{k2},{g2},{delta})"));
                        }
                        if let Some(e) = lambda_dimension_check(k1, g1, k2, g2, delta) {
                            bad.push(e);
                        }
                    }
                }
            }
        }
    }
    Verdict::new(bad.is_empty(), format!("{comparisons} comparisons on the grid, {} violations{}", bad.len(),
        bad.first().map_or(String::new(), |m| format!("; first: {m}"))))
}

/// Inputs drawn until `want` pairwise non-isomorphic ones are collected.
fn distinct_inputs(want: usize, mut draw: impl FnMut(&mut ChaCha8Rng) -> AdmissibleCover) -> Vec<AdmissibleCover> {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..100 * want {
        let c = draw(&mut rng);
        if seen.insert(c.canonical_form()) {
            out.push(c);
            if out.len() == want {
                break;
            }
        }
    }
    out
}

fn grid(rng: &mut ChaCha8Rng) -> (u32, u32, bool) {
    (rng.gen_range(0..=4), rng.gen_range(2..=5), rng.gen_bool(0.3))
}

pub fn injectivity() -> Verdict {
    const WANT: usize = 50;
    let mut lines = Vec::new();
    let mut pass = true;

    type Map = fn(&AdmissibleCover, &str, &str) -> gonality::Result<gonality::constructions::GluingReport>;
    let cases: [(&str, Map, Vec<AdmissibleCover>); 2] = [
        ("φ", phi, distinct_inputs(WANT, |r| { let (g, k, s) = grid(r); random_distinct_input(r, g, k, s) })),
        ("ψ", psi, distinct_inputs(WANT, |r| { let (g, k, s) = grid(r); random_equal_input(r, g, k, s) })),
    ];
    for (name, map, inputs) in cases {
        let report = sampled_injectivity(&inputs, |c| c.canonical_form(), |c| Ok(map(c, "n1", "n2")?.output)).unwrap();
        pass &= inputs.len() == WANT && report.collisions.is_empty();
        lines.push(format!("{name}: {} inputs -> {} outputs", report.distinct_inputs, report.distinct_outputs));
    }

    // λ: unordered pairs of non-isomorphic input pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    let mut seen: BTreeSet<(CanonicalForm, CanonicalForm)> = BTreeSet::new();
    let mut outputs = BTreeSet::new();
    let mut tries = 0;
    while seen.len() < WANT && tries < 100 * WANT {
        tries += 1;
        let ((_, _, _, _, delta), c1, c2) = lambda_inputs(&mut rng);
        let (f1, f2) = (c1.canonical_form(), c2.canonical_form());
        if !seen.insert((f1.clone().min(f2.clone()), f1.max(f2))) {
            continue;
        }
        outputs.insert(lambda(&c1, &c2, &pairing(delta)).unwrap().output.canonical_form());
    }
    pass &= seen.len() == WANT && outputs.len() == WANT;
    lines.push(format!("λ: {} input pairs -> {} outputs", seen.len(), outputs.len()));

    // Swapping the two sides of λ with equal parameters.
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    let mut asymmetric = 0;
    for _ in 0..20 {
        let (g, k) = (rng.gen_range(1..=3), rng.gen_range(2..=4));
        let delta = rng.gen_range(1..=k as usize);
        let h1 = random_fiber_marked(&mut rng, g, k, delta, "a", true);
        let h2 = random_fiber_marked(&mut rng, g, k, delta, "a", false).renamed(|x| format!("s.{x}"));
        let forward: Vec<(String, String)> = (1..=delta).map(|i| (format!("a{i}"), format!("s.a{i}"))).collect();
        let back: Vec<(String, String)> = forward.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        let one = lambda(&h1, &h2, &forward).unwrap().output.canonical_form();
        let two = lambda(&h2, &h1, &back).unwrap().output.canonical_form();
        asymmetric += (one != two) as usize;
    }
    pass &= asymmetric == 0;
    lines.push(format!("λ swapped sides: {asymmetric}/20 differ"));
    Verdict::new(pass, lines.join("; "))
}

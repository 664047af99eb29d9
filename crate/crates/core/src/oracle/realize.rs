//! Riemann existence for a single component map: is there a tuple of
//! permutations with the given cycle types, product one, generating a
//! transitive group?

use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest degree the permutation search accepts.
pub const MAX_REALIZABILITY_DEGREE: u32 = 6;

const N: usize = MAX_REALIZABILITY_DEGREE as usize;

type Perm = [u8; N];
/// Each symbol labelled by the least symbol in its orbit.
type Blocks = [u8; N];

/// Whether a degree-`d` map from a genus-`genus` curve to a line with the
/// given ramification profiles exists.
pub fn hurwitz_realizability(d: u32, profiles: &[Vec<u32>], genus: u32) -> Result<bool> {
    if d == 0 {
        return Err(Error::pre("degree must be positive"));
    }
    for p in profiles {
        if p.contains(&0) || p.iter().sum::<u32>() != d {
            return Err(Error::pre(format!("profile {p:?} does not partition {d}")));
        }
    }
    let excess: i64 = profiles.iter().map(|p| (d as usize - p.len()) as i64).sum();
    if 2 * genus as i64 - 2 != -2 * d as i64 + excess {
        return Ok(false);
    }
    if d > MAX_REALIZABILITY_DEGREE {
        return Err(Error::BudgetExceeded(format!(
            "realizability search is limited to degree {MAX_REALIZABILITY_DEGREE}, got {d}"
        )));
    }
    let mut key: Vec<Vec<u32>> = profiles
        .iter()
        .filter(|p| p.len() < d as usize)
        .map(|p| crate::cover::sorted(p.clone()))
        .collect();
    key.sort();
    static MEMO: OnceLock<Mutex<HashMap<(u32, Vec<Vec<u32>>), bool>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(&hit) = memo.lock().unwrap().get(&(d, key.clone())) {
        return Ok(hit);
    }
    let found = search(d as usize, &key);
    memo.lock().unwrap().insert((d, key), found);
    Ok(found)
}

fn search(d: usize, profiles: &[Vec<u32>]) -> bool {
    match profiles.len() {
        0 => return d == 1,
        1 => return false,
        _ => {}
    }
    let classes: Vec<Vec<Perm>> = profiles.iter().map(|p| class(d, p)).collect();
    let mut order: Vec<usize> = (0..profiles.len()).collect();
    order.sort_by_key(|&i| classes[i].len());
    let last = order.pop().unwrap();
    // Conjugating the whole tuple fixes the first permutation.
    let first = classes[order[0]][0];
    let mut states: HashSet<(Perm, Blocks)> = HashSet::from([(first, join(&identity(), &first, d))]);
    for &i in &order[1..] {
        let mut next = HashSet::with_capacity(states.len() * 2);
        for (prod, blocks) in &states {
            for s in &classes[i] {
                next.insert((compose(prod, s, d), join(blocks, s, d)));
            }
        }
        states = next;
    }
    let target = &profiles[last];
    states
        .iter()
        .any(|(prod, blocks)| blocks[..d].iter().all(|&b| b == 0) && cycle_type(prod, d) == *target)
}

fn identity() -> Perm {
    std::array::from_fn(|i| i as u8)
}

fn compose(p: &Perm, s: &Perm, d: usize) -> Perm {
    let mut out = identity();
    for i in 0..d {
        out[i] = s[p[i] as usize];
    }
    out
}

/// Merges the orbits of `blocks` along the cycles of `s`.
fn join(blocks: &Blocks, s: &Perm, d: usize) -> Blocks {
    let mut b = *blocks;
    loop {
        let mut changed = false;
        for i in 0..d {
            let (x, y) = (b[i], b[s[i] as usize]);
            if x != y {
                let (lo, hi) = (x.min(y), x.max(y));
                for v in b.iter_mut().take(d) {
                    if *v == hi {
                        *v = lo;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            return b;
        }
    }
}

pub(crate) fn cycle_type(p: &Perm, d: usize) -> Vec<u32> {
    let mut seen = [false; N];
    let mut parts = Vec::new();
    for i in 0..d {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j] as usize;
            len += 1;
        }
        parts.push(len);
    }
    crate::cover::sorted(parts)
}

/// All permutations of `d` symbols with cycle type `profile`.
fn class(d: usize, profile: &[u32]) -> Vec<Perm> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Vec<u32>), Vec<Perm>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (d, profile.to_vec());
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..d as u8).collect();
    permutations(&mut p, 0, &mut |q| {
        let mut perm = identity();
        perm[..d].copy_from_slice(q);
        if cycle_type(&perm, d) == profile {
            out.push(perm);
        }
    });
    cache.lock().unwrap().insert(key, out.clone());
    out
}

fn permutations(p: &mut [u8], i: usize, f: &mut impl FnMut(&[u8])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, f);
        p.swap(i, j);
    }
}

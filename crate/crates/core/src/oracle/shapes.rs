//! Small combinatorial generators behind the cover enumeration.

/// Unlabelled trees on `t` vertices (`t <= 4`), as edge lists.
pub(crate) fn target_trees(t: usize) -> Vec<Vec<(usize, usize)>> {
    match t {
        1 => vec![vec![]],
        2 => vec![vec![(0, 1)]],
        3 => vec![vec![(0, 1), (1, 2)]],
        4 => vec![vec![(0, 1), (1, 2), (2, 3)], vec![(0, 1), (0, 2), (0, 3)]],
        _ => vec![],
    }
}

/// A source component placed over a target vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Slot {
    pub genus: u32,
    pub target: usize,
    pub degree: u32,
    /// Index of the curve vertex this is, or `None` for an added rational one.
    pub vertex: Option<usize>,
}

/// Partitions of `n` into parts of size at most `max`, parts decreasing.
pub(crate) fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every placement of the curve vertices with `genera` over `t` target
/// vertices, completed by at most `rational` added rational components so
/// that each fiber has degree `k`.
pub(crate) fn fibers(genera: &[u32], t: usize, k: u32, rational: u32) -> Vec<Vec<Slot>> {
    let mut out = Vec::new();
    let mut placed = Vec::new();
    place(genera, t, k, rational, &mut vec![0; t], &mut placed, &mut out);
    out
}

fn place(
    genera: &[u32],
    t: usize,
    k: u32,
    rational: u32,
    load: &mut Vec<u32>,
    placed: &mut Vec<Slot>,
    out: &mut Vec<Vec<Slot>>,
) {
    let i = placed.len();
    if i == genera.len() {
        complete(k, rational, load, placed, 0, out);
        return;
    }
    let least = if genera[i] > 0 { 2 } else { 1 };
    for w in 0..t {
        for d in least..=k - load[w] {
            load[w] += d;
            placed.push(Slot { genus: genera[i], target: w, degree: d, vertex: Some(i) });
            place(genera, t, k, rational, load, placed, out);
            placed.pop();
            load[w] -= d;
        }
    }
}

fn complete(k: u32, rational: u32, load: &[u32], slots: &mut Vec<Slot>, w: usize, out: &mut Vec<Vec<Slot>>) {
    if w == load.len() {
        out.push(slots.clone());
        return;
    }
    let rem = k - load[w];
    for parts in partitions(rem, rem) {
        if parts.len() as u32 > rational {
            continue;
        }
        let before = slots.len();
        slots.extend(parts.iter().map(|&d| Slot { genus: 0, target: w, degree: d, vertex: None }));
        complete(k, rational - parts.len() as u32, load, slots, w + 1, out);
        slots.truncate(before);
    }
}

/// Weighted bipartite multigraphs between sides with vertex weights `a` and
/// `b` (equal totals): lists of `(i, j, weight)` whose weights at each
/// vertex sum to its weight.
pub(crate) fn transports(a: &[u32], b: &[u32]) -> Vec<Vec<(usize, usize, u32)>> {
    let mut out = Vec::new();
    let mut cap = b.to_vec();
    let mut cur = Vec::new();
    fill_row(a, 0, a.first().copied().unwrap_or(0), (0, 1), &mut cap, &mut cur, &mut out);
    out
}

fn fill_row(
    a: &[u32],
    i: usize,
    left: u32,
    from: (usize, u32),
    cap: &mut Vec<u32>,
    cur: &mut Vec<(usize, usize, u32)>,
    out: &mut Vec<Vec<(usize, usize, u32)>>,
) {
    if i == a.len() {
        if cap.iter().all(|&c| c == 0) {
            out.push(cur.clone());
        }
        return;
    }
    if left == 0 {
        let next = a.get(i + 1).copied().unwrap_or(0);
        fill_row(a, i + 1, next, (0, 1), cap, cur, out);
        return;
    }
    // Pairs (j, weight) are chosen in non-decreasing order to list each
    // multiset once.
    for j in from.0..cap.len() {
        let start = if j == from.0 { from.1 } else { 1 };
        for l in start..=left.min(cap[j]) {
            cap[j] -= l;
            cur.push((i, j, l));
            fill_row(a, i, left - l, (j, l), cap, cur, out);
            cur.pop();
            cap[j] += l;
        }
    }
}

//! Partial matchings with a diagonal escape, via augmenting paths.

/// Partner in the other multiset for each left element, `None` if left unmatched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub left: Vec<Option<usize>>,
}

/// Matches `n` left items with `m` right items so that every matched pair
/// satisfies `edge` and every unmatched item satisfies its `trivial` test.
///
/// Each side is padded with a diagonal copy of the other; the copies pair
/// freely with each other, so an assignment exists exactly when the padded
/// bipartite graph has a perfect matching. Vertices and edges are visited in
/// index order, so the result is deterministic.
pub fn perfect_matching(
    n: usize,
    m: usize,
    edge: impl Fn(usize, usize) -> bool,
    left_trivial: impl Fn(usize) -> bool,
    right_trivial: impl Fn(usize) -> bool,
) -> Option<Assignment> {
    let size = n + m;
    // Left vertices: items 0..n, then diagonal copies of right items.
    // Right vertices: items 0..m, then diagonal copies of left items.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, out) in adj.iter_mut().enumerate().take(n) {
        out.extend((0..m).filter(|&j| edge(i, j)));
        if left_trivial(i) {
            out.push(m + i);
        }
    }
    for j in 0..m {
        let out = &mut adj[n + j];
        if right_trivial(j) {
            out.push(j);
        }
        out.extend(m..m + n);
    }

    let mut owner: Vec<Option<usize>> = vec![None; size];
    for u in 0..size {
        let mut seen = vec![false; size];
        if !augment(u, &adj, &mut owner, &mut seen) {
            return None;
        }
    }

    let mut left = vec![None; n];
    for (v, o) in owner.iter().enumerate().take(m) {
        if let Some(u) = *o {
            if u < n {
                left[u] = Some(v);
            }
        }
    }
    Some(Assignment { left })
}

fn augment(u: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if owner[v].is_none_or(|w| augment(w, adj, owner, seen)) {
            owner[v] = Some(u);
            return true;
        }
    }
    false
}

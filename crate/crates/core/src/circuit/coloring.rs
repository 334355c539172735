//! Edge coloring for cost-layer scheduling.
//!
//! The edges of one cost layer are grouped into disjoint sublayers. For
//! bipartite graphs we compute an optimal coloring with max-degree many
//! colors (alternating-path recoloring, Koenig's construction), which is
//! what realizes the closed-form depths (chains in 2 sublayers, heavy-hex
//! in 3, square lattices in 4). Other graphs use first-fit greedy.

const NONE: usize = usize::MAX;

fn max_degree(n: usize, edges: &[(usize, usize, f64)]) -> usize {
    let mut deg = vec![0usize; n];
    for &(u, v, _) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.into_iter().max().unwrap_or(0)
}

fn is_bipartite(n: usize, edges: &[(usize, usize, f64)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, _) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut color = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Optimal edge coloring of a bipartite graph with `max_degree` colors.
/// `at[v * delta + c]` holds the neighbor joined to `v` by a `c`-colored
/// edge, or `NONE`.
fn koenig_colors(n: usize, edges: &[(usize, usize, f64)], delta: usize) -> Vec<usize> {
    let mut at = vec![NONE; n * delta];
    let free = |at: &[usize], v: usize| (0..delta).find(|&c| at[v * delta + c] == NONE);
    for &(u, v, _) in edges {
        let a = free(&at, u).expect("vertex below final degree has a free color");
        if at[v * delta + a] == NONE {
            at[u * delta + a] = v;
            at[v * delta + a] = u;
            continue;
        }
        let b = free(&at, v).expect("vertex below final degree has a free color");
        // walk the a/b alternating path from v and swap its colors; in a
        // bipartite graph the path cannot reach u, so color a frees up at
        // both endpoints
        let mut path = Vec::new();
        let mut cur = v;
        let mut col = a;
        loop {
            let next = at[cur * delta + col];
            if next == NONE {
                break;
            }
            path.push((cur, next, col));
            cur = next;
            col = if col == a { b } else { a };
        }
        debug_assert!(path.iter().all(|&(x, y, _)| x != u && y != u));
        for &(x, y, c) in &path {
            at[x * delta + c] = NONE;
            at[y * delta + c] = NONE;
        }
        for &(x, y, c) in &path {
            let nc = if c == a { b } else { a };
            at[x * delta + nc] = y;
            at[y * delta + nc] = x;
        }
        at[u * delta + a] = v;
        at[v * delta + a] = u;
    }
    edges
        .iter()
        .map(|&(u, v, _)| {
            (0..delta)
                .find(|&c| at[u * delta + c] == v)
                .expect("every edge was colored")
        })
        .collect()
}

/// First-fit greedy edge coloring.
fn greedy_colors(n: usize, edges: &[(usize, usize, f64)]) -> Vec<usize> {
    let mut used: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut colors = Vec::with_capacity(edges.len());
    for &(u, v, _) in edges {
        let mut c = 0;
        while used[u].contains(&c) || used[v].contains(&c) {
            c += 1;
        }
        used[u].push(c);
        used[v].push(c);
        colors.push(c);
    }
    colors
}

/// Partition edges into disjoint sublayers; edges keep canonical order
/// within each sublayer.
pub fn color_classes(
    n: usize,
    edges: &[(usize, usize, f64)],
) -> Vec<Vec<(usize, usize, f64)>> {
    if edges.is_empty() {
        return Vec::new();
    }
    let colors = if is_bipartite(n, edges) {
        koenig_colors(n, edges, max_degree(n, edges))
    } else {
        greedy_colors(n, edges)
    };
    let n_classes = colors.iter().max().unwrap() + 1;
    let mut classes = vec![Vec::new(); n_classes];
    for (e, &c) in edges.iter().zip(&colors) {
        classes[c].push(*e);
    }
    classes
}

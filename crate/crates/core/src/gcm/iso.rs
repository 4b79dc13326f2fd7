//! Backtracking search for simultaneous row/column permutations between
//! small integer matrices.

use super::IntMatrix;

/// Sorted row contents; invariant under relabeling.
fn row_signature(m: &IntMatrix, i: usize) -> Vec<i64> {
    let mut r = m[i].clone();
    let mut c: Vec<i64> = m.iter().map(|row| row[i]).collect();
    r.sort_unstable();
    c.sort_unstable();
    r.extend(c);
    r
}

/// Visit order: breadth-first over the nonzero pattern, so each newly placed
/// node is adjacent to something already placed.
fn search_order(m: &IntMatrix) -> Vec<usize> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for j in 0..n {
                if !seen[j] && (m[i][j] != 0 || m[j][i] != 0) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    order
}

/// All bijections `π` with `a[i][j] == b[π(i)][π(j)]`, stopping after `limit`.
pub(crate) fn matrix_isomorphisms(a: &IntMatrix, b: &IntMatrix, limit: usize) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut out = Vec::new();
    if n != b.len() || a.iter().chain(b.iter()).any(|r| r.len() != n) {
        return out;
    }
    let sig_a: Vec<_> = (0..n).map(|i| row_signature(a, i)).collect();
    let sig_b: Vec<_> = (0..n).map(|i| row_signature(b, i)).collect();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return out;
        }
    }
    let order = search_order(a);
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &sig_a, &sig_b, &order, 0, &mut image, &mut used, &mut out, limit);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &IntMatrix,
    b: &IntMatrix,
    sig_a: &[Vec<i64>],
    sig_b: &[Vec<i64>],
    order: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if depth == order.len() {
        out.push(image.clone());
        return;
    }
    let i = order[depth];
    for t in 0..b.len() {
        if used[t] || sig_a[i] != sig_b[t] || a[i][i] != b[t][t] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&p| {
            let q = image[p];
            a[i][p] == b[t][q] && a[p][i] == b[q][t]
        });
        if !consistent {
            continue;
        }
        image[i] = t;
        used[t] = true;
        extend(a, b, sig_a, sig_b, order, depth + 1, image, used, out, limit);
        used[t] = false;
        image[i] = usize::MAX;
    }
}

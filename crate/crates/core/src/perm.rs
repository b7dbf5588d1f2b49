//! Permutations on `0..n`, and canonical labelling of a set carrying a
//! permutation together with an involution.
//!
//! Both a complete gentle quiver (arrows, `σ`, "other arrow at the same
//! source") and a ribbon graph (slots, next slot at the node, other end of
//! the edge) are such structures, so one routine decides isomorphism for
//! both.

pub fn is_permutation(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    for &x in map {
        if x >= map.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Cycles of a permutation, each starting at its smallest point, listed by
/// smallest point.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        out.push(cycle);
    }
    out
}

pub fn order_of_point(perm: &[usize], start: usize) -> usize {
    let mut x = perm[start];
    let mut k = 1;
    while x != start {
        x = perm[x];
        k += 1;
    }
    k
}

type Code = Vec<(usize, usize)>;

/// Connected components under `next` and `pair`.
fn components(next: &[usize], pair: &[usize]) -> Vec<Vec<usize>> {
    let n = next.len();
    let prev = inverse(next);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let p = comp[i];
            for q in [next[p], prev[p], pair[p]] {
                if !seen[q] {
                    seen[q] = true;
                    comp.push(q);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

/// Breadth-first labelling from `start`; returns the code and the points in
/// label order.
fn label_from(next: &[usize], pair: &[usize], start: usize, size: usize) -> (Code, Vec<usize>) {
    let mut label = std::collections::HashMap::with_capacity(size);
    let mut order = Vec::with_capacity(size);
    label.insert(start, 0);
    order.push(start);
    let mut i = 0;
    while i < order.len() {
        let p = order[i];
        for q in [next[p], pair[p]] {
            if let std::collections::hash_map::Entry::Vacant(e) = label.entry(q) {
                e.insert(order.len());
                order.push(q);
            }
        }
        i += 1;
    }
    let code = order.iter().map(|&p| (label[&next[p]], label[&pair[p]])).collect();
    (code, order)
}

/// Reaching every point by `next` and `pair` alone suffices since `next`
/// is a permutation of a finite set.
fn canonical_component(next: &[usize], pair: &[usize], comp: &[usize]) -> (Code, Vec<usize>) {
    comp.iter()
        .map(|&s| label_from(next, pair, s, comp.len()))
        .min_by(|a, b| a.0.cmp(&b.0))
        .expect("components are nonempty")
}

/// Isomorphism-invariant code: sorted canonical codes of the components.
pub fn canonical_code(next: &[usize], pair: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut codes: Vec<Code> =
        components(next, pair).iter().map(|c| canonical_component(next, pair, c).0).collect();
    codes.sort();
    codes
}

/// A bijection `f` with `f(next1(p)) = next2(f(p))` and
/// `f(pair1(p)) = pair2(f(p))`, if one exists.
pub fn find_isomorphism(
    next1: &[usize],
    pair1: &[usize],
    next2: &[usize],
    pair2: &[usize],
) -> Option<Vec<usize>> {
    if next1.len() != next2.len() {
        return None;
    }
    let canon = |next: &[usize], pair: &[usize]| {
        let mut v: Vec<(Code, Vec<usize>)> =
            components(next, pair).iter().map(|c| canonical_component(next, pair, c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    };
    let c1 = canon(next1, pair1);
    let c2 = canon(next2, pair2);
    if c1.len() != c2.len() {
        return None;
    }
    let mut map = vec![usize::MAX; next1.len()];
    for ((code1, order1), (code2, order2)) in c1.iter().zip(&c2) {
        if code1 != code2 {
            return None;
        }
        for (&p, &q) in order1.iter().zip(order2) {
            map[p] = q;
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_inverse() {
        let p = vec![1, 2, 0, 4, 3, 5];
        assert!(is_permutation(&p));
        assert!(!is_permutation(&[0, 0]));
        assert_eq!(cycles(&p), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert_eq!(inverse(&p), vec![2, 0, 1, 4, 3, 5]);
        assert_eq!(order_of_point(&p, 1), 3);
    }

    #[test]
    fn relabelled_structures_are_isomorphic() {
        let next = vec![1, 0, 3, 2];
        let pair = vec![2, 3, 0, 1];
        // relabel by the permutation 0->3, 1->0, 2->1, 3->2
        let f = [3, 0, 1, 2];
        let mut next2 = vec![0; 4];
        let mut pair2 = vec![0; 4];
        for p in 0..4 {
            next2[f[p]] = f[next[p]];
            pair2[f[p]] = f[pair[p]];
        }
        let iso = find_isomorphism(&next, &pair, &next2, &pair2).unwrap();
        for p in 0..4 {
            assert_eq!(iso[next[p]], next2[iso[p]]);
            assert_eq!(iso[pair[p]], pair2[iso[p]]);
        }
        assert_eq!(canonical_code(&next, &pair), canonical_code(&next2, &pair2));
    }

    #[test]
    fn different_cycle_types_differ() {
        let pair = vec![1, 0];
        assert!(find_isomorphism(&[1, 0], &pair, &[0, 1], &pair).is_none());
    }
}

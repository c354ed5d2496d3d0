//! Seeded generators and brute-force oracles shared by the integration
//! tests. Nothing here calls into the solvers it is used to check.
#![allow(dead_code, clippy::needless_range_loop)]

use flowkit::network::{Capacity, Network};
use flowkit::numeric::{int, Rational};
use flowkit::IntMatrix;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple network on `2..=max_n` vertices, source 0, sink n-1,
/// integer capacities in `0..=max_cap`.
pub fn random_network(rng: &mut impl Rng, max_n: usize, max_cap: i64) -> Network {
    let n = rng.gen_range(2..=max_n);
    let (s, t) = (0, n - 1);
    let density: f64 = rng.gen_range(0.2..0.8);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !rng.gen_bool(density) {
                continue;
            }
            // one direction per pair, never into s or out of t
            let (a, b) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
            let (a, b) = if b == s || a == t { (b, a) } else { (a, b) };
            if b == s || a == t {
                continue;
            }
            arcs.push((a, b, rng.gen_range(0..=max_cap)));
        }
    }
    Network::from_int_arcs(n, s, t, &arcs).expect("generator emits valid networks")
}

/// Minimum cut capacity by enumerating all `2^(n-2)` source sides.
pub fn brute_force_min_cut(net: &Network) -> Rational {
    let n = net.vertex_count();
    let inner: Vec<usize> = (0..n)
        .filter(|&v| v != net.source() && v != net.sink())
        .collect();
    let mut best: Option<Rational> = None;
    for mask in 0u64..(1 << inner.len()) {
        let mut side = vec![false; n];
        side[net.source()] = true;
        for (bit, &v) in inner.iter().enumerate() {
            side[v] = mask >> bit & 1 == 1;
        }
        let mut cap = Rational::zero();
        for a in net.arcs() {
            if side[a.tail] && !side[a.head] {
                match &a.capacity {
                    Capacity::Finite(c) => cap += c,
                    Capacity::Unbounded => unreachable!("finite networks only"),
                }
            }
        }
        if best.as_ref().is_none_or(|b| &cap < b) {
            best = Some(cap);
        }
    }
    best.unwrap()
}

/// All source sides `S` (as masks) of an `n`-vertex network.
pub fn all_cut_masks(net: &Network) -> Vec<Vec<bool>> {
    let n = net.vertex_count();
    let inner: Vec<usize> = (0..n)
        .filter(|&v| v != net.source() && v != net.sink())
        .collect();
    (0u64..(1 << inner.len()))
        .map(|mask| {
            let mut side = vec![false; n];
            side[net.source()] = true;
            for (bit, &v) in inner.iter().enumerate() {
                side[v] = mask >> bit & 1 == 1;
            }
            side
        })
        .collect()
}

/// Maximum of `Σ_{S} w - Σ_{S→S̄} c` over all subsets.
pub fn brute_force_max_surplus(weights: &[Rational], arcs: &[(usize, usize, Rational)]) -> Rational {
    let n = weights.len();
    let mut best = Rational::zero();
    for mask in 0u64..(1 << n) {
        let inside = |v: usize| mask >> v & 1 == 1;
        let mut value: Rational = (0..n).filter(|&v| inside(v)).map(|v| weights[v].clone()).sum();
        for (a, b, c) in arcs {
            if inside(*a) && !inside(*b) {
                value -= c;
            }
        }
        if value > best {
            best = value;
        }
    }
    best
}

/// Ghouila-Houri: a matrix is totally unimodular iff every subset of rows
/// can be signed so that the signed row sum has entries in {-1, 0, 1}.
pub fn ghouila_houri_tu(m: &IntMatrix) -> bool {
    let rows = m.rows();
    assert!(rows <= 16, "oracle is exponential in the row count");
    for subset in 0u32..(1 << rows) {
        let members: Vec<usize> = (0..rows).filter(|&r| subset >> r & 1 == 1).collect();
        let mut ok = false;
        for signs in 0u32..(1 << members.len()) {
            let fits = (0..m.cols()).all(|c| {
                let total: i64 = members
                    .iter()
                    .enumerate()
                    .map(|(k, &r)| if signs >> k & 1 == 1 { -m.get(r, c) } else { m.get(r, c) })
                    .sum();
                (-1..=1).contains(&total)
            });
            if fits {
                ok = true;
                break;
            }
        }
        if !ok {
            return false;
        }
    }
    true
}

pub fn random_sign_matrix(rng: &mut impl Rng, max_dim: usize) -> IntMatrix {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let zero_bias: f64 = rng.gen_range(0.3..0.8);
    IntMatrix::from_rows(
        (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| {
                        if rng.gen_bool(zero_bias) {
                            0
                        } else if rng.gen_bool(0.5) {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect(),
    )
}

pub fn small_rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(0..=max_num * q);
    Rational::new(p.into(), q.into())
}

pub fn is_nonneg(v: &Rational) -> bool {
    !v.is_negative()
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Solve a square system exactly; `None` when singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = &a[r][col] / &a[col][col];
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Optimum of `max c·x, Ax ≤ b, x ≥ 0` over all basic feasible points.
/// `None` if no basic point is feasible. Assumes the program is bounded.
pub fn vertex_enumeration_max(
    c: &[Rational],
    a: &[Vec<Rational>],
    b: &[Rational],
) -> Option<Rational> {
    let n = c.len();
    let mut rows: Vec<(Vec<Rational>, Rational)> =
        a.iter().cloned().zip(b.iter().cloned()).collect();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = int(-1);
        rows.push((e, Rational::zero()));
    }
    let total = rows.len();
    let mut best: Option<Rational> = None;
    let mut pick = Vec::new();
    fn rec(
        start: usize,
        need: usize,
        total: usize,
        pick: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if pick.len() == need {
            visit(pick);
            return;
        }
        for i in start..total {
            pick.push(i);
            rec(i + 1, need, total, pick, visit);
            pick.pop();
        }
    }
    let mut visit = |chosen: &[usize]| {
        let sa = chosen.iter().map(|&i| rows[i].0.clone()).collect();
        let sb = chosen.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve_square(sa, sb) {
            let feasible = rows.iter().all(|(row, rhs)| {
                let lhs: Rational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                lhs <= *rhs
            });
            if feasible {
                let value: Rational = c.iter().zip(&x).map(|(p, q)| p * q).sum();
                if best.as_ref().is_none_or(|b| value > *b) {
                    best = Some(value);
                }
            }
        }
    };
    rec(0, n, total, &mut pick, &mut visit);
    best
}

/// Some permutation `σ` with every `(v, σ(v))` an edge.
pub fn brute_force_has_perfect_matching(n: usize, edges: &[(usize, usize)]) -> bool {
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|v| edges.contains(&(v, p[v]))))
}

/// All `0̂ .. 1̂` paths in the cover graph given as `covers[a] = [b, ..]`.
pub fn cover_paths(covers: &[Vec<usize>], bottom: usize, top: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![bottom];
    fn walk(covers: &[Vec<usize>], top: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == top {
            out.push(path.clone());
            return;
        }
        for &next in &covers[last] {
            path.push(next);
            walk(covers, top, path, out);
            path.pop();
        }
    }
    walk(covers, top, &mut path, &mut out);
    out
}

/// Largest family of pairwise cover-disjoint chains, by exhaustive
/// branching over the conflict graph.
pub fn brute_force_max_disjoint(chains: &[Vec<usize>]) -> usize {
    let steps: Vec<Vec<(usize, usize)>> =
        chains.iter().map(|c| c.windows(2).map(|w| (w[0], w[1])).collect()).collect();
    let k = chains.len();
    let conflict: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i != j && steps[i].iter().any(|s| steps[j].contains(s))).collect())
        .collect();
    fn best(candidates: &[usize], conflict: &[Vec<bool>]) -> usize {
        let Some((&v, rest)) = candidates.split_first() else { return 0 };
        let without_neighbors: Vec<usize> = rest.iter().copied().filter(|&u| !conflict[v][u]).collect();
        let take = 1 + best(&without_neighbors, conflict);
        if without_neighbors.len() == rest.len() {
            return take;
        }
        take.max(best(rest, conflict))
    }
    best(&(0..k).collect::<Vec<_>>(), &conflict)
}

/// Raw segmentation instance: likelihoods and penalties on a `w x h` grid,
/// with `right[y][x]` between `(x, y)`, `(x+1, y)` and `down[y][x]` between
/// `(x, y)`, `(x, y+1)`.
pub struct RawImage {
    pub w: usize,
    pub h: usize,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub right: Vec<Vec<Rational>>,
    pub down: Vec<Vec<Rational>>,
}

pub fn random_image(rng: &mut impl Rng, w: usize, h: usize) -> RawImage {
    let prob = |rng: &mut ChaCha8Rng| -> Rational {
        let q = rng.gen_range(1..=6i64);
        Rational::new(rng.gen_range(0..=q).into(), q.into())
    };
    let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
    let a = (0..w * h).map(|_| prob(&mut inner)).collect();
    let b = (0..w * h).map(|_| prob(&mut inner)).collect();
    let right = (0..h).map(|_| (0..w - 1).map(|_| small_rational(&mut inner, 1, 4)).collect()).collect();
    let down = (0..h - 1).map(|_| (0..w).map(|_| small_rational(&mut inner, 1, 4)).collect()).collect();
    RawImage { w, h, a, b, right, down }
}

/// `max s(A, B)` over all `2^(w h)` foreground sets.
pub fn brute_force_segmentation(img: &RawImage) -> Rational {
    let n = img.w * img.h;
    let mut best: Option<Rational> = None;
    for mask in 0u32..(1 << n) {
        let fg = |x: usize, y: usize| mask >> (y * img.w + x) & 1 == 1;
        let mut s = Rational::zero();
        for y in 0..img.h {
            for x in 0..img.w {
                let v = y * img.w + x;
                s += if fg(x, y) { &img.a[v] } else { &img.b[v] };
                if x + 1 < img.w && fg(x, y) != fg(x + 1, y) {
                    s -= &img.right[y][x];
                }
                if y + 1 < img.h && fg(x, y) != fg(x, y + 1) {
                    s -= &img.down[y][x];
                }
            }
        }
        if best.as_ref().is_none_or(|b| s > *b) {
            best = Some(s);
        }
    }
    best.unwrap()
}

/// The 200 seeded networks (n ≤ 8, integer capacities ≤ 10) shared by the
/// cross-solver checks.
pub fn criterion_networks() -> Vec<Network> {
    (0..200u64).map(|i| random_network(&mut rng(1000 + i), 8, 10)).collect()
}

/// `(M⁺, M⁻)`: total capacity leaving the source and entering the sink.
pub fn terminal_capacities(net: &Network) -> (Rational, Rational) {
    let mut plus = Rational::zero();
    let mut minus = Rational::zero();
    for a in net.arcs() {
        let c = a.capacity.finite().expect("finite").clone();
        if a.tail == net.source() {
            plus += &c;
        }
        if a.head == net.sink() {
            minus += c;
        }
    }
    (plus, minus)
}

/// Rows normalized so that their first nonzero entry is positive, sorted.
pub fn row_signature(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            let flip = r.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
            r.iter().map(|&x| if flip { -x } else { x }).collect()
        })
        .collect();
    out.sort();
    out
}

/// Column permutation `p` (and column signs, if `allow_column_signs`) such
/// that `ours` with columns reordered by `p` equals `target` up to row
/// order and row signs.
pub fn signed_permutation_match(
    ours: &IntMatrix,
    target: &IntMatrix,
    allow_column_signs: bool,
) -> Option<(Vec<usize>, Vec<i64>)> {
    if ours.rows() != target.rows() || ours.cols() != target.cols() {
        return None;
    }
    let goal = row_signature(&target.to_rows());
    let k = ours.cols();
    let sign_patterns: u32 = if allow_column_signs { 1 << k } else { 1 };
    for p in permutations(k) {
        for signs in 0..sign_patterns {
            let sign: Vec<i64> = (0..k).map(|j| if signs >> j & 1 == 1 { -1 } else { 1 }).collect();
            let rows: Vec<Vec<i64>> = (0..ours.rows())
                .map(|r| (0..k).map(|j| sign[j] * ours.get(r, p[j])).collect())
                .collect();
            if row_signature(&rows) == goal {
                return Some((p, sign));
            }
        }
    }
    None
}

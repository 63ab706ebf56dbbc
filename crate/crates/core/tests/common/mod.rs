//! Independent oracles for integration tests. Nothing here calls into the
//! library's algorithms; only its value types are used for conversion.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use maxcirc::{
    Circulant, Equation, IntervalBox, IntervalCirculant, MaxMatrix, MaxVector, Scalar,
    TwoSidedSystem,
};
use num_integer::Integer;

pub fn s(v: &str) -> Scalar {
    v.parse().unwrap()
}

pub fn circ(row: &[&str]) -> Circulant {
    Circulant::parse(row).unwrap()
}

pub fn vector(vals: &[&str]) -> MaxVector {
    MaxVector::new(vals.iter().map(|v| s(v)).collect()).unwrap()
}

pub fn matrix(rows: &[&[&str]]) -> MaxMatrix {
    MaxMatrix::from_rows(rows.iter().map(|r| r.iter().map(|v| s(v)).collect()).collect()).unwrap()
}

// Plain max-times arithmetic.

pub type Mat = Vec<Vec<Scalar>>;

pub fn to_mat(a: &MaxMatrix) -> Mat {
    (0..a.dim()).map(|i| a.row(i).to_vec()).collect()
}

pub fn circ_mat(c: &Circulant) -> Mat {
    let n = c.dim();
    (0..n)
        .map(|i| (0..n).map(|j| c.row()[(j + n - i) % n].clone()).collect())
        .collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).max().unwrap())
                .collect()
        })
        .collect()
}

pub fn apply(a: &Mat, x: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(w, v)| w * v).max().unwrap())
        .collect()
}

pub fn divide(a: &Mat, d: &Scalar) -> Mat {
    let r = Scalar::one().checked_div(d).unwrap();
    a.iter().map(|row| row.iter().map(|v| v * &r).collect()).collect()
}

/// Defining row of the product of two circulants.
pub fn circ_row_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len();
    (0..n)
        .map(|k| (0..n).map(|i| &a[i] * &b[(k + n - i) % n]).max().unwrap())
        .collect()
}

// Cycles.

/// All simple cycles, each listed from its smallest node.
pub fn simple_cycles(a: &Mat) -> Vec<Vec<usize>> {
    fn dfs(a: &Mat, start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        for v in start..a.len() {
            if a[u][v].is_zero() {
                continue;
            }
            if v == start {
                out.push(path.clone());
            } else if !on[v] {
                on[v] = true;
                path.push(v);
                dfs(a, start, path, on, out);
                path.pop();
                on[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..a.len() {
        let mut on = vec![false; a.len()];
        on[start] = true;
        dfs(a, start, &mut vec![start], &mut on, &mut out);
    }
    out
}

pub fn cycle_weight(a: &Mat, cyc: &[usize]) -> Scalar {
    (0..cyc.len()).fold(Scalar::one(), |acc, k| &acc * &a[cyc[k]][cyc[(k + 1) % cyc.len()]])
}

/// Compares `w1^(1/l1)` with `w2^(1/l2)`.
pub fn cmp_means(w1: &Scalar, l1: usize, w2: &Scalar, l2: usize) -> Ordering {
    w1.pow(l2 as u32).cmp(&w2.pow(l1 as u32))
}

/// Largest geometric cycle mean as `(weight, length)`.
pub fn brute_max_cycle_mean(a: &Mat) -> Option<(Scalar, usize)> {
    simple_cycles(a)
        .iter()
        .map(|c| (cycle_weight(a, c), c.len()))
        .max_by(|(w1, l1), (w2, l2)| cmp_means(w1, *l1, w2, *l2))
}

/// Edges lying on a simple cycle of maximal mean.
pub fn brute_critical_edges(a: &Mat) -> BTreeSet<(usize, usize)> {
    let Some((w, l)) = brute_max_cycle_mean(a) else {
        return BTreeSet::new();
    };
    let mut edges = BTreeSet::new();
    for c in simple_cycles(a) {
        if cmp_means(&cycle_weight(a, &c), c.len(), &w, l) == Ordering::Equal {
            for k in 0..c.len() {
                edges.insert((c[k], c[(k + 1) % c.len()]));
            }
        }
    }
    edges
}

/// Cyclicity from closed-walk lengths: per node the gcd of all `k ≤ 3n`
/// admitting a closed walk of length `k`, lcm over nodes on some cycle.
/// `None` when there is no cycle.
pub fn walk_cyclicity(n: usize, edges: &BTreeSet<(usize, usize)>) -> Option<usize> {
    let mut adj = vec![0u64; n];
    for &(i, j) in edges {
        adj[i] |= 1 << j;
    }
    let step = |cur: &[u64]| -> Vec<u64> {
        cur.iter()
            .map(|&row| (0..n).filter(|k| row >> k & 1 == 1).fold(0u64, |acc, k| acc | adj[k]))
            .collect()
    };
    let mut per_node = vec![0usize; n];
    let mut cur = adj.clone();
    for len in 1..=3 * n.max(1) {
        for (i, g) in per_node.iter_mut().enumerate() {
            if cur[i] >> i & 1 == 1 {
                *g = g.gcd(&len);
            }
        }
        cur = step(&cur);
    }
    let on_cycle: Vec<usize> = per_node.into_iter().filter(|&g| g > 0).collect();
    if on_cycle.is_empty() {
        None
    } else {
        Some(on_cycle.into_iter().fold(1, |acc, g| acc.lcm(&g)))
    }
}

// Periodicity and orbits.

/// `(transient, period)` of `(C/λ)^t`, `t ≥ 1`, found by first repetition
/// of the defining rows.
pub fn measured_circ_periodicity(c: &Circulant) -> (usize, usize) {
    let lambda = c.row().iter().max().unwrap().clone();
    assert!(!lambda.is_zero());
    let r = Scalar::one().checked_div(&lambda).unwrap();
    let base: Vec<Scalar> = c.row().iter().map(|v| v * &r).collect();
    let mut seen: HashMap<Vec<Scalar>, usize> = HashMap::new();
    let mut cur = base.clone();
    for t in 1.. {
        if let Some(&t0) = seen.get(&cur) {
            return (t0, t - t0);
        }
        seen.insert(cur.clone(), t);
        cur = circ_row_mul(&cur, &base);
    }
    unreachable!()
}

/// `(transient, period)` of `(A/λ)^t`, `t ≥ 1`, for a matrix with rational `λ`.
pub fn measured_periodicity(a: &Mat, lambda: &Scalar, horizon: usize) -> Option<(usize, usize)> {
    let base = divide(a, lambda);
    let mut seen: HashMap<Mat, usize> = HashMap::new();
    let mut cur = base.clone();
    for t in 1..=horizon {
        if let Some(&t0) = seen.get(&cur) {
            return Some((t0, t - t0));
        }
        seen.insert(cur.clone(), t);
        cur = mul(&cur, &base);
    }
    None
}

/// Whether the orbit of `x` under `A` eventually satisfies `A y = λ y`,
/// decided by simulating the normalized orbit until it repeats.
pub fn orbit_member(a: &Mat, lambda: &Scalar, x: &[Scalar]) -> bool {
    if lambda.is_zero() {
        return true;
    }
    let base = divide(a, lambda);
    let mut seen: HashMap<Vec<Scalar>, usize> = HashMap::new();
    let mut cur = x.to_vec();
    for t in 0..100_000 {
        if let Some(&t0) = seen.get(&cur) {
            return t - t0 == 1;
        }
        seen.insert(cur.clone(), t);
        cur = apply(&base, &cur);
    }
    panic!("orbit did not become periodic");
}

pub fn circ_orbit_member(c: &Circulant, x: &MaxVector) -> bool {
    let lambda = c.row().iter().max().unwrap().clone();
    orbit_member(&circ_mat(c), &lambda, x.entries())
}

// Exact max-plus arithmetic on base-2 logarithms, for inputs made of zero
// and powers of two.

pub type Log = Option<i64>;

pub fn log2(v: &Scalar) -> Log {
    if v.is_zero() {
        return None;
    }
    let (p, q) = (v.numer(), v.denom());
    let bits = |x: &num_bigint::BigInt| -> i64 {
        let b = x.bits() as i64 - 1;
        assert_eq!(*x, num_bigint::BigInt::from(1) << b, "{v} is not a power of two");
        b
    };
    Some(bits(p) - bits(q))
}

pub fn exp2(l: Log) -> Scalar {
    match l {
        None => Scalar::zero(),
        Some(k) if k >= 0 => Scalar::from(1u64 << k),
        Some(k) => Scalar::frac(1, 1u64 << (-k)),
    }
}

fn add(a: Log, b: Log) -> Log {
    Some(a? + b?)
}

/// Attraction-cone membership for a circulant with row `row`, by orbit
/// simulation in the log domain.
pub fn log_circ_member(row: &[Log], x: &[Log]) -> bool {
    let n = row.len();
    let Some(lambda) = row.iter().copied().max().flatten() else {
        return true;
    };
    let mut seen: HashMap<Vec<Log>, usize> = HashMap::new();
    let mut cur = x.to_vec();
    for t in 0..100_000 {
        if let Some(&t0) = seen.get(&cur) {
            return t - t0 == 1;
        }
        let next = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| add(row[(j + n - i) % n], cur[j]))
                    .max()
                    .unwrap()
                    .map(|v| v - lambda)
            })
            .collect();
        seen.insert(std::mem::replace(&mut cur, next), t);
    }
    panic!("orbit did not become periodic");
}

/// Cartesian product of the given axes.
pub fn product<T: Clone>(axes: &[Vec<T>]) -> Vec<Vec<T>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect()
    })
}

pub const MATRIX_GRID: [&str; 3] = ["0", "1/2", "1"];
pub const VECTOR_GRID: [&str; 5] = ["0", "1/8", "1/4", "1/2", "1"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantifierVerdicts {
    pub possibly_x: bool,
    pub universally_x: bool,
    pub tolerance_x: bool,
    pub weakly_tolerance_x: bool,
    pub x_possibly_circ: bool,
    pub x_tolerance_circ: bool,
}

impl QuantifierVerdicts {
    pub fn named(&self) -> [(&'static str, bool); 6] {
        [
            ("possibly_X", self.possibly_x),
            ("universally_X", self.universally_x),
            ("tolerance_X", self.tolerance_x),
            ("weakly_tolerance_X", self.weakly_tolerance_x),
            ("X_possibly_Circ", self.x_possibly_circ),
            ("X_tolerance_Circ", self.x_tolerance_circ),
        ]
    }
}

/// Evaluates the six quantifier combinations literally, with matrices
/// ranging over `MATRIX_GRID ∩ IC` and vectors over `VECTOR_GRID ∩ X`.
pub fn grid_quantifiers(ic: &IntervalCirculant, bx: &IntervalBox) -> QuantifierVerdicts {
    let axis = |grid: &[&str], iv: &maxcirc::ScalarInterval| -> Vec<Log> {
        grid.iter().map(|v| s(v)).filter(|v| iv.contains(v)).map(|v| log2(&v)).collect()
    };
    let mats = product(&ic.entries().iter().map(|iv| axis(&MATRIX_GRID, iv)).collect::<Vec<_>>());
    let vecs = product(&bx.intervals().iter().map(|iv| axis(&VECTOR_GRID, iv)).collect::<Vec<_>>());
    assert!(!mats.is_empty() && !vecs.is_empty(), "grid misses the interval");
    let member: Vec<Vec<bool>> = mats
        .iter()
        .map(|a| vecs.iter().map(|x| log_circ_member(a, x)).collect())
        .collect();
    let (na, nx) = (mats.len(), vecs.len());
    QuantifierVerdicts {
        possibly_x: (0..na).any(|a| (0..nx).all(|x| member[a][x])),
        universally_x: (0..na).all(|a| (0..nx).all(|x| member[a][x])),
        tolerance_x: (0..na).all(|a| (0..nx).any(|x| member[a][x])),
        weakly_tolerance_x: (0..na).any(|a| (0..nx).any(|x| member[a][x])),
        x_possibly_circ: (0..nx).any(|x| (0..na).all(|a| member[a][x])),
        x_tolerance_circ: (0..nx).all(|x| (0..na).any(|a| member[a][x])),
    }
}

// Two-sided systems.

fn log_side(v: &MaxVector) -> Vec<Log> {
    v.iter().map(log2).collect()
}

fn log_eval(side: &[Log], x: &[Log]) -> Log {
    side.iter().zip(x).map(|(&c, &v)| add(c, v)).max().unwrap()
}

/// Independent substitution check: every equation holds exactly.
pub fn satisfies(s: &TwoSidedSystem, x: &MaxVector) -> bool {
    let dot = |c: &MaxVector| c.iter().zip(x.iter()).map(|(a, b)| a * b).max().unwrap();
    s.equations().iter().all(|e: &Equation| dot(&e.lhs) == dot(&e.rhs))
}

/// Exhaustive search over `{0} ∪ {2^k : -depth ≤ k ≤ 8}` restricted to the
/// box, for systems and boxes made of zero and powers of two.
pub fn log_grid_witness(s: &TwoSidedSystem, bx: &IntervalBox, depth: i64) -> Option<MaxVector> {
    let eqs: Vec<(Vec<Log>, Vec<Log>)> = s
        .equations()
        .iter()
        .map(|e| (log_side(&e.lhs), log_side(&e.rhs)))
        .collect();
    let axes: Vec<Vec<Log>> = bx
        .intervals()
        .iter()
        .map(|iv| {
            std::iter::once(None)
                .chain((-depth..=8).map(Some))
                .filter(|&l| iv.contains(&exp2(l)))
                .collect()
        })
        .collect();
    product(&axes)
        .into_iter()
        .find(|x| eqs.iter().all(|(l, r)| log_eval(l, x) == log_eval(r, x)))
        .map(|x| MaxVector::new(x.into_iter().map(exp2).collect()).unwrap())
}

pub mod strategies;

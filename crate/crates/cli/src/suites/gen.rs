use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::ops::RangeInclusive;
use vasreach::{IntVector, StateId, Transition, Vass};

pub type Rng8 = ChaCha8Rng;

pub fn vector(rng: &mut Rng8, d: usize, lo: i64, hi: i64) -> IntVector {
    IntVector::from_i64s(&(0..d).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
}

pub fn naturals(rng: &mut Rng8, d: usize, hi: i64) -> IntVector {
    vector(rng, d, 0, hi)
}

pub fn states(n: usize) -> Vec<StateId> {
    (0..n).map(|i| StateId::new(&format!("p{i}"))).collect()
}

fn small_norm(x: &IntVector, bound: i64) -> bool {
    x.norm() <= bound.into()
}

/// A VASS whose cycle effects all lie in span(u, w): every transition p → q
/// has effect a·u + b·w + φ(q) − φ(p) for a potential φ. Returns the
/// system with u and w. Effects stay within `norm`.
pub fn planar_vass(
    rng: &mut Rng8,
    d: usize,
    nq: RangeInclusive<usize>,
    nt: RangeInclusive<usize>,
    norm: i64,
) -> (Vass, IntVector, IntVector) {
    let (nq, nt) = (rng.gen_range(nq), rng.gen_range(nt));
    let u = vector(rng, d, -1, 1);
    let w = vector(rng, d, -1, 1);
    let phi: Vec<IntVector> = (0..nq)
        .map(|_| {
            if rng.gen_bool(0.5) {
                IntVector::zeros(d)
            } else {
                vector(rng, d, -1, 1)
            }
        })
        .collect();
    let qs = states(nq);
    let mut ts = Vec::new();
    let mut attempts = 0;
    while ts.len() < nt && attempts < 200 * nt {
        attempts += 1;
        let (p, q) = (rng.gen_range(0..nq), rng.gen_range(0..nq));
        let (a, b) = (rng.gen_range(-1i64..=1), rng.gen_range(-1i64..=1));
        let e = &(&u.scale(&a.into()) + &w.scale(&b.into())) + &(&phi[q] - &phi[p]);
        if small_norm(&e, norm) {
            ts.push(Transition::new(qs[p].clone(), e, qs[q].clone()));
        }
    }
    (Vass::new(d, qs, ts).expect("well-formed"), u, w)
}

/// Effects of a single-state VAS inside span(u, w).
pub fn planar_effects(rng: &mut Rng8, d: usize, n: RangeInclusive<usize>, norm: i64) -> Vec<IntVector> {
    let n = rng.gen_range(n);
    let u = vector(rng, d, -1, 1);
    let w = vector(rng, d, -1, 1);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < n && attempts < 200 * n {
        attempts += 1;
        let (a, b) = (rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2));
        let e = &u.scale(&a.into()) + &w.scale(&b.into());
        if small_norm(&e, norm) {
            out.push(e);
        }
    }
    out
}

pub fn random_vass(
    rng: &mut Rng8,
    d: usize,
    nq: RangeInclusive<usize>,
    nt: RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> Vass {
    let (nq, nt) = (rng.gen_range(nq), rng.gen_range(nt));
    let qs = states(nq);
    let ts = (0..nt)
        .map(|_| {
            let (p, q) = (rng.gen_range(0..nq), rng.gen_range(0..nq));
            Transition::new(qs[p].clone(), vector(rng, d, lo, hi), qs[q].clone())
        })
        .collect();
    Vass::new(d, qs, ts).expect("well-formed")
}

/// A random matrix in GL₂(ℤ) as a product of elementary moves.
pub fn unimodular(rng: &mut Rng8) -> [[i64; 2]; 2] {
    let mut m = [[1i64, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..=6) {
        let k = rng.gen_range(-2i64..=2);
        let step = *[[[1, k], [0, 1]], [[1, 0], [k, 1]], [[0, 1], [1, 0]], [[-1, 0], [0, 1]]]
            .choose(rng)
            .expect("nonempty");
        let mut next = [[0i64; 2]; 2];
        for (i, row) in next.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..2).map(|l| step[i][l] * m[l][j]).sum();
            }
        }
        m = next;
    }
    m
}

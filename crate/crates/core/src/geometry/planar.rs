//! Projectiveness of a two-dimensional space span{u, v}, studied through
//! the planar row vectors r_ℓ = (u(ℓ), v(ℓ)).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{cross, minimal_cone_generators_2d, rank};
use crate::vector::IntVector;
use crate::{Error, Result};

pub fn r_vectors(u: &IntVector, v: &IntVector) -> Vec<IntVector> {
    assert_eq!(u.dim(), v.dim(), "basis vectors of equal dimension");
    u.iter()
        .zip(v.iter())
        .map(|(a, b)| IntVector::new(vec![a.clone(), b.clone()]))
        .collect()
}

fn planar(x: BigInt, y: BigInt) -> IntVector {
    IntVector::new(vec![x, y])
}

/// A direction with positive inner product against every nonzero r_ℓ, if
/// one exists. Opposite rays (a line) admit none.
pub fn is_projective(u: &IntVector, v: &IntVector) -> Option<IntVector> {
    let rs = r_vectors(u, v);
    let gens = minimal_cone_generators_2d(&rs);
    match gens.as_slice() {
        [] => Some(planar(BigInt::one(), BigInt::zero())),
        [g] => Some(rs[*g].clone()),
        [i, j] => {
            let (mut a, mut b) = (&rs[*i], &rs[*j]);
            let det = cross(a, b);
            if det.is_zero() {
                return None;
            }
            if det.is_negative() {
                std::mem::swap(&mut a, &mut b);
            }
            Some(planar(&b[1] - &a[1], &a[0] - &b[0]))
        }
        _ => None,
    }
}

/// Coordinates I = {i, j} and nonnegative axes ū, v̄ of span{u, v} with
/// ū|_I = (c, 0) and v̄|_I = (0, c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCertificate {
    pub i: usize,
    pub j: usize,
    pub witness_n: IntVector,
    pub u_bar: IntVector,
    pub v_bar: IntVector,
    pub c: BigInt,
}

impl ProjectionCertificate {
    pub fn verify(&self, u: &IntVector, v: &IntVector) -> bool {
        let (i, j) = (self.i, self.j);
        self.c.is_positive()
            && self.u_bar.is_nonneg()
            && self.v_bar.is_nonneg()
            && self.u_bar[i] == self.c
            && self.u_bar[j].is_zero()
            && self.v_bar[i].is_zero()
            && self.v_bar[j] == self.c
            && r_vectors(u, v)
                .iter()
                .all(|r| r.is_zero() || self.witness_n.inner(r).is_positive())
    }
}

fn require_rank_two(u: &IntVector, v: &IntVector) -> Result<()> {
    if rank(u.dim(), &[u.clone(), v.clone()]) < 2 {
        return Err(Error::Precondition("span{u, v} is not two-dimensional".into()));
    }
    Ok(())
}

pub fn sign_reflecting_projection(u: &IntVector, v: &IntVector) -> Result<ProjectionCertificate> {
    require_rank_two(u, v)?;
    let witness_n = is_projective(u, v).ok_or_else(|| Error::Precondition("span{u, v} is not projective".into()))?;
    let rs = r_vectors(u, v);
    let gens = minimal_cone_generators_2d(&rs);
    let (mut i, mut j) = (gens[0], gens[1]);
    let mut c = cross(&rs[i], &rs[j]);
    if c.is_negative() {
        std::mem::swap(&mut i, &mut j);
        c = -c;
    }
    let u_bar = u.scale(&v[j]) - v.scale(&u[j]);
    let v_bar = v.scale(&u[i]) - u.scale(&v[i]);
    Ok(ProjectionCertificate {
        i,
        j,
        witness_n,
        u_bar,
        v_bar,
        c,
    })
}

/// δ(x) = c·x − x(i)·ū − x(j)·v̄, zero exactly on span{ū, v̄}.
pub fn shift(x: &IntVector, cert: &ProjectionCertificate) -> IntVector {
    x.scale(&cert.c) - cert.u_bar.scale(&x[cert.i]) - cert.v_bar.scale(&x[cert.j])
}

/// A nonnegative n, supported on at most three coordinates, orthogonal to
/// span{u, v}. Exists exactly when the space is two-dimensional and not
/// projective.
pub fn nonprojective_normal(u: &IntVector, v: &IntVector) -> Result<IntVector> {
    require_rank_two(u, v)?;
    if is_projective(u, v).is_some() {
        return Err(Error::Precondition("span{u, v} is projective".into()));
    }
    let rs = r_vectors(u, v);
    let gens = minimal_cone_generators_2d(&rs);
    for (a, &i) in gens.iter().enumerate() {
        for &j in &gens[a + 1..] {
            let det = cross(&rs[i], &rs[j]);
            if det.is_zero() {
                continue;
            }
            for &k in gens.iter().filter(|&&k| k != i && k != j) {
                // r_k = α r_i + β r_j with α = a_num/det, β = b_num/det.
                let a_num = cross(&rs[k], &rs[j]);
                let b_num = cross(&rs[i], &rs[k]);
                let sign = det.signum();
                let (ca, cb) = (&a_num * &sign, &b_num * &sign);
                if ca.is_positive() || cb.is_positive() {
                    continue;
                }
                let mut n = IntVector::zeros(u.dim());
                n.set(k, det.abs());
                n.set(i, -ca);
                n.set(j, -cb);
                return Ok(n);
            }
        }
    }
    Err(Error::Internal(
        "no triple of generators certifies non-projectiveness".into(),
    ))
}

/// c·x(ℓ) = α·x(i) + β·x(j) for every x in the space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourTuple {
    pub c: BigInt,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeByFour {
    pub generators: Vec<usize>,
    pub tuples: Vec<FourTuple>,
}

impl ConeByFour {
    pub fn holds_for(&self, x: &IntVector) -> bool {
        self.tuples
            .iter()
            .enumerate()
            .all(|(l, t)| &t.c * &x[l] == &t.alpha * &x[t.i] + &t.beta * &x[t.j])
    }
}

fn reduced(c: BigInt, alpha: BigInt, beta: BigInt, i: usize, j: usize) -> FourTuple {
    let g = c.gcd(&alpha).gcd(&beta);
    FourTuple {
        c: &c / &g,
        alpha: &alpha / &g,
        beta: &beta / &g,
        i,
        j,
    }
}

/// Expresses every coordinate of span{u, v} as a nonnegative combination of
/// at most four generator coordinates.
pub fn cone_by_four(u: &IntVector, v: &IntVector) -> ConeByFour {
    let rs = r_vectors(u, v);
    let gens = minimal_cone_generators_2d(&rs);
    if gens.is_empty() {
        let t = FourTuple {
            c: BigInt::one(),
            alpha: BigInt::zero(),
            beta: BigInt::zero(),
            i: 0,
            j: 0,
        };
        return ConeByFour {
            generators: vec![0],
            tuples: vec![t; rs.len()],
        };
    }
    let tuples = rs
        .iter()
        .enumerate()
        .map(|(l, r)| {
            if gens.contains(&l) {
                return reduced(BigInt::one(), BigInt::one(), BigInt::zero(), l, l);
            }
            if r.is_zero() {
                return reduced(BigInt::one(), BigInt::zero(), BigInt::zero(), gens[0], gens[0]);
            }
            for &i in &gens {
                let g = &rs[i];
                if cross(r, g).is_zero() && r.inner(g).is_positive() {
                    // r = (p/q)·g, read off a nonzero coordinate.
                    let k = if g[0].is_zero() { 1 } else { 0 };
                    return reduced(g[k].abs(), &r[k] * g[k].signum(), BigInt::zero(), i, i);
                }
            }
            for (a, &i) in gens.iter().enumerate() {
                for &j in &gens[a + 1..] {
                    let (mut i, mut j) = (i, j);
                    let mut det = cross(&rs[i], &rs[j]);
                    if det.is_zero() {
                        continue;
                    }
                    if det.is_negative() {
                        std::mem::swap(&mut i, &mut j);
                        det = -det;
                    }
                    let alpha = cross(r, &rs[j]);
                    let beta = cross(&rs[i], r);
                    if !alpha.is_negative() && !beta.is_negative() {
                        return reduced(det, alpha, beta, i, j);
                    }
                }
            }
            unreachable!("minimal generators cover every r-vector")
        })
        .collect();
    ConeByFour {
        generators: gens,
        tuples,
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::model::{StateId, Transition, Vass};
use crate::vector::IntVector;
use crate::{Error, Result};

/// Two-state test passing (x, y) through unchanged iff mx + ny + b ≥ 0:
/// p −(−point)→ s_point −(+point)→ q for each minimal point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegGadget {
    pub m: BigInt,
    pub n: BigInt,
    pub b: BigInt,
    pub minimal_points: Vec<(BigInt, BigInt)>,
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

pub fn gadget_nonneg(m: &BigInt, n: &BigInt, b: &BigInt) -> Result<NonnegGadget> {
    if m.is_negative() || n.is_negative() {
        return Err(Error::Precondition(format!(
            "gadget coefficients must be nonnegative, got ({m}, {n})"
        )));
    }
    let zero = BigInt::zero();
    let minimal_points = if !b.is_negative() {
        vec![(zero.clone(), zero)]
    } else if m.is_zero() && n.is_zero() {
        Vec::new()
    } else if n.is_zero() {
        vec![(ceil_div(&-b, m), zero)]
    } else if m.is_zero() {
        vec![(zero, ceil_div(&-b, n))]
    } else {
        let last = ceil_div(&-b, m);
        let mut points = Vec::new();
        let mut i = zero.clone();
        while i <= last {
            let y = ceil_div(&-(b + m * &i), n).max(zero.clone());
            points.push((i.clone(), y));
            i += 1;
        }
        points
    };
    Ok(NonnegGadget {
        m: m.clone(),
        n: n.clone(),
        b: b.clone(),
        minimal_points,
    })
}

impl NonnegGadget {
    /// Whether (x, y) dominates some minimal point.
    pub fn accepts(&self, x: &BigInt, y: &BigInt) -> bool {
        self.minimal_points.iter().any(|(a, c)| x >= a && y >= c)
    }

    /// Adds the gadget between `from` and `to`, its two coordinates placed
    /// at `i` and `j` of a `dim`-dimensional system. With i = j both
    /// contributions land on the same coordinate, so the caller must pass
    /// a gadget with n = 0.
    #[allow(clippy::too_many_arguments)]
    pub fn wire(
        &self,
        from: &StateId,
        to: &StateId,
        label: &str,
        dim: usize,
        (i, j): (usize, usize),
        states: &mut Vec<StateId>,
        transitions: &mut Vec<Transition>,
    ) {
        debug_assert!(i != j || self.n.is_zero());
        for (a, c) in &self.minimal_points {
            let mid = from.derived("gadget", &format!("{label},{a},{c}"));
            let mut point = IntVector::zeros(dim);
            point.set(i, a.clone());
            point.set(j, &point[j] + c);
            states.push(mid.clone());
            transitions.push(Transition::new(from.clone(), -&point, mid.clone()));
            transitions.push(Transition::new(mid, point, to.clone()));
        }
    }

    /// The gadget on its own: a 2-VASS from `p` to `q`.
    pub fn vass(&self) -> Vass {
        let (p, q) = (StateId::new("p"), StateId::new("q"));
        let mut states = vec![p.clone(), q.clone()];
        let mut ts = Vec::new();
        self.wire(&p, &q, "0", 2, (0, 1), &mut states, &mut ts);
        Vass::new(2, states, ts).expect("well-formed gadget")
    }
}

/// The gadget testing α·x(i) + β·x(j) + b ≥ 0, folded to one coordinate
/// when i = j.
pub(crate) fn gadget_on(alpha: &BigInt, beta: &BigInt, b: &BigInt, i: usize, j: usize) -> Result<NonnegGadget> {
    if i == j {
        gadget_nonneg(&(alpha + beta), &BigInt::zero(), b)
    } else {
        gadget_nonneg(alpha, beta, b)
    }
}

//! Vector addition systems with states, sequential VAS, configurations, paths and runs.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::vector::IntVector;

/// Name of the single state of a plain VAS.
pub const VAS_STATE: &str = "⋆";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("undeclared state `{0}`")]
    UndeclaredState(String),
    #[error("transition index {0} out of range")]
    NoSuchTransition(usize),
    #[error("malformed path: transition at position {position} does not continue from the previous one")]
    BrokenChain { position: usize },
    #[error("malformed path: it starts at `{path}` but the configuration is at `{config}`")]
    StateMismatch { config: String, path: String },
    /// `step` counts fired transitions from 1; `coordinate` is 0-based.
    #[error("blocked at step {step}, coordinate {coordinate}")]
    Blocked { step: usize, coordinate: usize },
    #[error("configuration {0} has a negative entry")]
    NegativeConfiguration(String),
    #[error("sequential instance must run from `{expected_source}` to `{expected_target}`")]
    SequentialEndpoints {
        expected_source: String,
        expected_target: String,
    },
}

/// Interned state name. Constructed states follow `orig#tag(args)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(Arc<str>);

impl StateId {
    pub fn new(name: &str) -> Self {
        StateId(Arc::from(name))
    }

    pub fn vas() -> Self {
        StateId::new(VAS_STATE)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `self#tag(args)`.
    pub fn derived(&self, tag: &str, args: &str) -> StateId {
        StateId::new(&format!("{}#{}({})", self.0, tag, args))
    }
}

impl fmt::Debug for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for StateId {
    fn from(s: &str) -> Self {
        StateId::new(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub src: StateId,
    pub effect: IntVector,
    pub dst: StateId,
}

impl Transition {
    pub fn new(src: impl Into<StateId>, effect: IntVector, dst: impl Into<StateId>) -> Self {
        Transition {
            src: src.into(),
            effect,
            dst: dst.into(),
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.src == self.dst
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// Every intermediate vector must stay nonnegative.
    N,
    /// Negative entries allowed.
    Z,
}

/// How numbers are assumed to be written when reporting sizes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Encoding {
    #[default]
    Unary,
    Binary,
}

impl Encoding {
    fn weight(self, n: &BigInt) -> BigInt {
        match self {
            Encoding::Unary => n.clone(),
            Encoding::Binary => BigInt::from(n.bits().max(1)),
        }
    }
}

/// A configuration `p(x)`. Nothing here forces `x >= 0`; N-configurations are
/// checked where they are required.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: StateId,
    pub vector: IntVector,
}

impl Configuration {
    pub fn new(state: impl Into<StateId>, vector: IntVector) -> Self {
        Configuration {
            state: state.into(),
            vector,
        }
    }

    pub fn is_nonneg(&self) -> bool {
        self.vector.is_nonneg()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.state, self.vector)
    }
}

/// A word over transitions, stored as indices into the owning system.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn empty() -> Self {
        Path(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn then(&self, other: &Path) -> Path {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Path(v)
    }

    pub fn repeat(&self, times: usize) -> Path {
        Path(self.0.repeat(times))
    }
}

/// A VASS `(Q, T)`.
#[derive(Clone, Debug)]
pub struct Vass {
    dim: usize,
    states: Vec<StateId>,
    index: HashMap<StateId, usize>,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<usize>>,
}

impl PartialEq for Vass {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.states == other.states && self.transitions == other.transitions
    }
}

impl Eq for Vass {}

impl Vass {
    /// Builds a VASS; duplicate state names are merged, keeping first position.
    pub fn new(
        dim: usize,
        states: impl IntoIterator<Item = StateId>,
        transitions: Vec<Transition>,
    ) -> Result<Vass, ModelError> {
        let mut ordered = Vec::new();
        let mut index = HashMap::new();
        for s in states {
            if !index.contains_key(&s) {
                index.insert(s.clone(), ordered.len());
                ordered.push(s);
            }
        }
        let mut outgoing = vec![Vec::new(); ordered.len()];
        for (k, t) in transitions.iter().enumerate() {
            if t.effect.dim() != dim {
                return Err(ModelError::DimensionMismatch {
                    expected: dim,
                    found: t.effect.dim(),
                });
            }
            let src = *index
                .get(&t.src)
                .ok_or_else(|| ModelError::UndeclaredState(t.src.to_string()))?;
            if !index.contains_key(&t.dst) {
                return Err(ModelError::UndeclaredState(t.dst.to_string()));
            }
            outgoing[src].push(k);
        }
        Ok(Vass {
            dim,
            states: ordered,
            index,
            transitions,
            outgoing,
        })
    }

    /// A plain VAS: one state `⋆` with every effect as a self-loop.
    pub fn vas(dim: usize, effects: Vec<IntVector>) -> Result<Vass, ModelError> {
        let q = StateId::vas();
        let ts = effects
            .into_iter()
            .map(|a| Transition::new(q.clone(), a, q.clone()))
            .collect();
        Vass::new(dim, [q.clone()], ts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, k: usize) -> &Transition {
        &self.transitions[k]
    }

    pub fn state_index(&self, q: &StateId) -> Option<usize> {
        self.index.get(q).copied()
    }

    pub fn has_state(&self, q: &StateId) -> bool {
        self.index.contains_key(q)
    }

    /// Indices of transitions leaving state number `q`.
    pub fn outgoing(&self, q: usize) -> &[usize] {
        &self.outgoing[q]
    }

    /// Single-state systems.
    pub fn is_vas(&self) -> bool {
        self.states.len() == 1
    }

    pub fn effects(&self) -> Vec<IntVector> {
        self.transitions.iter().map(|t| t.effect.clone()).collect()
    }

    /// ‖T‖, zero when there are no transitions.
    pub fn norm(&self) -> BigInt {
        self.transitions
            .iter()
            .map(|t| t.effect.norm())
            .max()
            .unwrap_or_default()
    }

    /// |Q| + d·|T|·(‖T‖+1).
    pub fn size(&self) -> BigInt {
        self.size_under(Encoding::Unary)
    }

    pub fn size_under(&self, enc: Encoding) -> BigInt {
        BigInt::from(self.states.len())
            + BigInt::from(self.dim) * BigInt::from(self.transitions.len()) * (enc.weight(&self.norm()) + 1)
    }

    /// Every `(p, a, q)` becomes `(q, -a, p)`.
    pub fn reverse(&self) -> Vass {
        let ts = self
            .transitions
            .iter()
            .map(|t| Transition::new(t.dst.clone(), -&t.effect, t.src.clone()))
            .collect();
        Vass::new(self.dim, self.states.clone(), ts).expect("reverse of a valid system is valid")
    }

    fn check_index(&self, k: usize) -> Result<&Transition, ModelError> {
        self.transitions.get(k).ok_or(ModelError::NoSuchTransition(k))
    }

    /// Checks that consecutive transitions chain.
    pub fn check_chain(&self, path: &Path) -> Result<(), ModelError> {
        let mut prev: Option<&StateId> = None;
        for (pos, &k) in path.0.iter().enumerate() {
            let t = self.check_index(k)?;
            if let Some(p) = prev {
                if *p != t.src {
                    return Err(ModelError::BrokenChain { position: pos });
                }
            }
            prev = Some(&t.dst);
        }
        Ok(())
    }

    /// Δ(π).
    pub fn effect(&self, path: &Path) -> Result<IntVector, ModelError> {
        self.check_chain(path)?;
        let mut sum = IntVector::zeros(self.dim);
        for &k in &path.0 {
            sum += &self.transitions[k].effect;
        }
        Ok(sum)
    }

    /// drop(π): per coordinate, the largest decrease over all prefixes.
    pub fn drop_vector(&self, path: &Path) -> Result<IntVector, ModelError> {
        self.check_chain(path)?;
        let mut sum = IntVector::zeros(self.dim);
        let mut low = IntVector::zeros(self.dim);
        for &k in &path.0 {
            sum += &self.transitions[k].effect;
            for i in 0..self.dim {
                if sum[i] < low[i] {
                    low.set(i, sum[i].clone());
                }
            }
        }
        Ok(-low)
    }

    /// Fires `path` from `start`.
    pub fn replay(
        &self,
        start: &Configuration,
        path: &Path,
        semantics: Semantics,
    ) -> Result<Configuration, ModelError> {
        self.check_chain(path)?;
        if start.vector.dim() != self.dim {
            return Err(ModelError::DimensionMismatch {
                expected: self.dim,
                found: start.vector.dim(),
            });
        }
        if let Some(&k) = path.0.first() {
            if self.transitions[k].src != start.state {
                return Err(ModelError::StateMismatch {
                    config: start.state.to_string(),
                    path: self.transitions[k].src.to_string(),
                });
            }
        }
        let mut x = start.vector.clone();
        let mut state = start.state.clone();
        for (step, &k) in path.0.iter().enumerate() {
            let t = &self.transitions[k];
            x += &t.effect;
            if semantics == Semantics::N {
                if let Some(i) = x.first_negative() {
                    return Err(ModelError::Blocked {
                        step: step + 1,
                        coordinate: i,
                    });
                }
            }
            state = t.dst.clone();
        }
        Ok(Configuration::new(state, x))
    }

    /// All configurations visited by `path` from `start` under Z-semantics,
    /// starting with `start` itself.
    pub fn trace(&self, start: &Configuration, path: &Path) -> Result<Vec<Configuration>, ModelError> {
        self.replay(start, path, Semantics::Z)?;
        let mut out = Vec::with_capacity(path.len() + 1);
        let mut cur = start.clone();
        out.push(cur.clone());
        for &k in &path.0 {
            let t = &self.transitions[k];
            cur = Configuration::new(t.dst.clone(), &cur.vector + &t.effect);
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Same transitions with the listed coordinates removed.
    pub fn without_coordinates(&self, coords: &[usize]) -> Vass {
        let ts = self
            .transitions
            .iter()
            .map(|t| Transition::new(t.src.clone(), t.effect.without(coords), t.dst.clone()))
            .collect();
        Vass::new(self.dim - coords.len(), self.states.clone(), ts).expect("coordinate removal keeps a valid system")
    }
}

/// `V[a₁…a_k]`: base effects on every state `q_j`, bridges fired once in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentialVas {
    dim: usize,
    base: Vec<IntVector>,
    bridges: Vec<IntVector>,
}

/// What an expanded transition index stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequentialTransition {
    /// Base effect `base` as a self-loop on `q_state`.
    Loop { state: usize, base: usize },
    /// Bridge `a_index` (1-based) from `q_{index-1}` to `q_index`.
    Bridge { index: usize },
}

impl SequentialVas {
    pub fn new(dim: usize, base: Vec<IntVector>, bridges: Vec<IntVector>) -> Result<Self, ModelError> {
        for v in base.iter().chain(&bridges) {
            if v.dim() != dim {
                return Err(ModelError::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        Ok(SequentialVas { dim, base, bridges })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> &[IntVector] {
        &self.base
    }

    pub fn bridges(&self) -> &[IntVector] {
        &self.bridges
    }

    pub fn bridge_sum(&self) -> IntVector {
        let mut s = IntVector::zeros(self.dim);
        for b in &self.bridges {
            s += b;
        }
        s
    }

    pub fn state(j: usize) -> StateId {
        StateId::new(&format!("q{j}"))
    }

    pub fn source_state(&self) -> StateId {
        Self::state(0)
    }

    pub fn target_state(&self) -> StateId {
        Self::state(self.bridges.len())
    }

    /// Expanded index of base effect `base` looping on `q_state`.
    pub fn loop_index(&self, state: usize, base: usize) -> usize {
        state * (self.base.len() + 1) + base
    }

    /// Expanded index of bridge `index` (1-based).
    pub fn bridge_index(&self, index: usize) -> usize {
        (index - 1) * (self.base.len() + 1) + self.base.len()
    }

    pub fn classify(&self, k: usize) -> SequentialTransition {
        let block = self.base.len() + 1;
        let (state, off) = (k / block, k % block);
        if off < self.base.len() {
            SequentialTransition::Loop { state, base: off }
        } else {
            SequentialTransition::Bridge { index: state + 1 }
        }
    }

    /// States `q0…qk`, every base effect on every state, bridges in order.
    pub fn expand(&self) -> Vass {
        let k = self.bridges.len();
        let states: Vec<StateId> = (0..=k).map(Self::state).collect();
        let mut ts = Vec::with_capacity((k + 1) * self.base.len() + k);
        for j in 0..=k {
            for a in &self.base {
                ts.push(Transition::new(states[j].clone(), a.clone(), states[j].clone()));
            }
            if j < k {
                ts.push(Transition::new(
                    states[j].clone(),
                    self.bridges[j].clone(),
                    states[j + 1].clone(),
                ));
            }
        }
        Vass::new(self.dim, states, ts).expect("sequential expansion is valid")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum System {
    Vass(Vass),
    Sequential(SequentialVas),
}

impl System {
    pub fn dim(&self) -> usize {
        match self {
            System::Vass(v) => v.dim(),
            System::Sequential(s) => s.dim(),
        }
    }

    pub fn to_vass(&self) -> Vass {
        match self {
            System::Vass(v) => v.clone(),
            System::Sequential(s) => s.expand(),
        }
    }
}

/// A triple `(V, s, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachInstance {
    system: System,
    vass: Vass,
    source: Configuration,
    target: Configuration,
}

impl ReachInstance {
    pub fn new(system: System, source: Configuration, target: Configuration) -> Result<Self, ModelError> {
        let vass = system.to_vass();
        for c in [&source, &target] {
            if c.vector.dim() != vass.dim() {
                return Err(ModelError::DimensionMismatch {
                    expected: vass.dim(),
                    found: c.vector.dim(),
                });
            }
            if !c.is_nonneg() {
                return Err(ModelError::NegativeConfiguration(c.to_string()));
            }
            if !vass.has_state(&c.state) {
                return Err(ModelError::UndeclaredState(c.state.to_string()));
            }
        }
        if let System::Sequential(s) = &system {
            if source.state != s.source_state() || target.state != s.target_state() {
                return Err(ModelError::SequentialEndpoints {
                    expected_source: s.source_state().to_string(),
                    expected_target: s.target_state().to_string(),
                });
            }
        }
        Ok(ReachInstance {
            system,
            vass,
            source,
            target,
        })
    }

    pub fn from_vass(vass: Vass, source: Configuration, target: Configuration) -> Result<Self, ModelError> {
        Self::new(System::Vass(vass), source, target)
    }

    pub fn sequential(seq: SequentialVas, s: IntVector, t: IntVector) -> Result<Self, ModelError> {
        let (p, q) = (seq.source_state(), seq.target_state());
        Self::new(
            System::Sequential(seq),
            Configuration::new(p, s),
            Configuration::new(q, t),
        )
    }

    /// A VAS instance from effects and source/target vectors.
    pub fn vas(dim: usize, effects: Vec<IntVector>, s: IntVector, t: IntVector) -> Result<Self, ModelError> {
        let v = Vass::vas(dim, effects)?;
        Self::from_vass(
            v,
            Configuration::new(StateId::vas(), s),
            Configuration::new(StateId::vas(), t),
        )
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    /// The system as a VASS (sequential systems expanded).
    pub fn vass(&self) -> &Vass {
        &self.vass
    }

    pub fn source(&self) -> &Configuration {
        &self.source
    }

    pub fn target(&self) -> &Configuration {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.vass.dim()
    }

    /// size(V) + d·(‖s‖+‖t‖+1).
    pub fn size(&self) -> BigInt {
        self.size_under(Encoding::Unary)
    }

    pub fn size_under(&self, enc: Encoding) -> BigInt {
        self.vass.size_under(enc)
            + BigInt::from(self.dim())
                * (enc.weight(&self.source.vector.norm()) + enc.weight(&self.target.vector.norm()) + 1)
    }
}

/// A path with a start configuration whose N-replay succeeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    start: Configuration,
    path: Path,
}

impl Run {
    pub fn new(vass: &Vass, start: Configuration, path: Path) -> Result<Run, ModelError> {
        if !start.is_nonneg() {
            return Err(ModelError::NegativeConfiguration(start.to_string()));
        }
        if !vass.has_state(&start.state) {
            return Err(ModelError::UndeclaredState(start.state.to_string()));
        }
        vass.replay(&start, &path, Semantics::N)?;
        Ok(Run { start, path })
    }

    pub fn start(&self) -> &Configuration {
        &self.start
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Configurations visited, recomputed from the start.
    pub fn configurations(&self, vass: &Vass) -> Vec<Configuration> {
        vass.trace(&self.start, &self.path)
            .expect("run was validated at construction")
    }

    pub fn end(&self, vass: &Vass) -> Configuration {
        vass.replay(&self.start, &self.path, Semantics::N)
            .expect("run was validated at construction")
    }
}

/// Sum of the positive parts, handy for bounds on scalar quantities.
pub fn positive_part(x: &BigInt) -> BigInt {
    if x.is_positive() {
        x.clone()
    } else {
        BigInt::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(effects: &[&[i64]]) -> Vass {
        let d = effects.first().map_or(0, |e| e.len());
        Vass::vas(d, effects.iter().map(|e| IntVector::from_i64s(e)).collect()).unwrap()
    }

    fn p(x: &[i64]) -> Configuration {
        Configuration::new(StateId::vas(), IntVector::from_i64s(x))
    }

    #[test]
    fn effect_of_paths() {
        let v = single(&[&[1, -1], &[-3, 1], &[0, 2]]);
        assert_eq!(v.effect(&Path(vec![])).unwrap(), IntVector::zeros(2));
        assert_eq!(v.effect(&Path(vec![0, 1, 2])).unwrap(), IntVector::from([-2, 2]));
        let w = single(&[&[1, -1], &[2, 0]]);
        assert_eq!(w.effect(&Path(vec![0, 1])).unwrap(), IntVector::from([3, -1]));
    }

    #[test]
    fn drop_of_paths() {
        let v = single(&[&[1, -1], &[-3, 1], &[-2, 3]]);
        assert_eq!(v.drop_vector(&Path(vec![2])).unwrap(), IntVector::from([2, 0]));
        assert_eq!(v.drop_vector(&Path(vec![0, 1])).unwrap(), IntVector::from([2, 1]));
        assert_eq!(v.drop_vector(&Path(vec![])).unwrap(), IntVector::from([0, 0]));
    }

    #[test]
    fn replay_semantics() {
        let v = single(&[&[1, 0], &[-1, 0], &[2, 0]]);
        assert_eq!(v.replay(&p(&[0, 0]), &Path(vec![0]), Semantics::N).unwrap(), p(&[1, 0]));
        assert_eq!(
            v.replay(&p(&[0, 0]), &Path(vec![1]), Semantics::N),
            Err(ModelError::Blocked { step: 1, coordinate: 0 })
        );
        assert_eq!(
            v.replay(&p(&[0, 0]), &Path(vec![1, 2]), Semantics::Z).unwrap(),
            p(&[1, 0])
        );
    }

    #[test]
    fn broken_chain_is_malformed() {
        let v = Vass::new(
            1,
            ["a".into(), "b".into()],
            vec![Transition::new("a", IntVector::from([1]), "b")],
        )
        .unwrap();
        assert_eq!(
            v.effect(&Path(vec![0, 0])),
            Err(ModelError::BrokenChain { position: 1 })
        );
    }

    #[test]
    fn sizes() {
        let v = single(&[&[1, 0]]);
        assert_eq!(v.size(), BigInt::from(5));
        let inst = ReachInstance::from_vass(v, p(&[0, 0]), p(&[3, 0])).unwrap();
        assert_eq!(inst.size(), BigInt::from(13));
        let e = Vass::vas(1, vec![]).unwrap();
        let inst = ReachInstance::from_vass(e, p(&[0]), p(&[0])).unwrap();
        assert_eq!(inst.size(), BigInt::from(2));
    }

    #[test]
    fn reverse_is_involution() {
        let v = Vass::new(
            2,
            ["p".into(), "q".into()],
            vec![Transition::new("p", IntVector::from([1, -2]), "q")],
        )
        .unwrap();
        let r = v.reverse();
        assert_eq!(r.transitions()[0], Transition::new("q", IntVector::from([-1, 2]), "p"));
        assert_eq!(r.reverse(), v);
    }

    #[test]
    fn sequential_expansion_counts() {
        let one = SequentialVas::new(2, vec![IntVector::from([1, 0])], vec![])
            .unwrap()
            .expand();
        assert_eq!((one.states().len(), one.transitions().len()), (1, 1));
        let s = SequentialVas::new(
            2,
            vec![IntVector::from([1, 0]), IntVector::from([0, 1])],
            vec![IntVector::from([-1, 0]), IntVector::from([0, -1])],
        )
        .unwrap();
        let v = s.expand();
        assert_eq!(v.states().len(), 3);
        assert_eq!(v.transitions().len(), 8);
        assert_eq!(v.transitions().iter().filter(|t| t.is_self_loop()).count(), 6);
        for k in 0..v.transitions().len() {
            match s.classify(k) {
                SequentialTransition::Loop { state, base } => {
                    assert_eq!(s.loop_index(state, base), k);
                    assert_eq!(v.transition(k).effect, s.base()[base]);
                }
                SequentialTransition::Bridge { index } => {
                    assert_eq!(s.bridge_index(index), k);
                    assert_eq!(v.transition(k).src, SequentialVas::state(index - 1));
                }
            }
        }
    }

    #[test]
    fn run_rejects_blocked_paths() {
        let v = single(&[&[-1]]);
        assert!(Run::new(&v, p(&[0]), Path(vec![0])).is_err());
        let r = Run::new(&v, p(&[2]), Path(vec![0, 0])).unwrap();
        assert_eq!(r.end(&v), p(&[0]));
        assert_eq!(r.configurations(&v).len(), 3);
    }

    #[test]
    fn derived_names() {
        assert_eq!(StateId::new("q").derived("vec", "0,2").as_str(), "q#vec(0,2)");
    }
}

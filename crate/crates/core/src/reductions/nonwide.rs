use std::collections::VecDeque;

use num_traits::{Signed, ToPrimitive};

use super::{Produced, Provenance, ReductionOutput, Relation};
use crate::geometry::{farkas_normal_vector, is_wide};
use crate::model::{ReachInstance, SequentialVas, System};
use crate::vector::IntVector;
use crate::{Error, Result};

/// Wide sequential instances, one per bridge word, enumerated lazily in
/// length-lexicographic order. Stops after `cap` members; `is_truncated`
/// then reports whether more words existed.
#[derive(Clone, Debug)]
pub struct WideFamily {
    dim: usize,
    base: Vec<IntVector>,
    letters: Vec<IntVector>,
    weights: Vec<usize>,
    budget: usize,
    source: IntVector,
    target: IntVector,
    cap: usize,
    emitted: usize,
    next_len: usize,
    buffer: VecDeque<Vec<usize>>,
    truncated: bool,
}

impl WideFamily {
    #[allow(clippy::too_many_arguments)]
    fn new(
        dim: usize,
        base: Vec<IntVector>,
        letters: Vec<IntVector>,
        weights: Vec<usize>,
        budget: usize,
        source: IntVector,
        target: IntVector,
        cap: usize,
    ) -> Self {
        WideFamily {
            dim,
            base,
            letters,
            weights,
            budget,
            source,
            target,
            cap,
            emitted: 0,
            next_len: 0,
            buffer: VecDeque::new(),
            truncated: false,
        }
    }

    pub fn base(&self) -> &[IntVector] {
        &self.base
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Every member up to the cap, and whether the cap cut the family short.
    pub fn collect_all(mut self) -> (Vec<ReachInstance>, bool) {
        let members: Vec<ReachInstance> = self.by_ref().collect();
        (members, self.truncated)
    }

    fn longest(&self) -> usize {
        match self.weights.iter().min() {
            Some(&w) => self.budget / w,
            None => 0,
        }
    }

    /// Words of exactly `len` letters with total weight equal to the budget.
    fn words(&self, len: usize, limit: usize) -> Vec<Vec<usize>> {
        let (lo, hi) = match (self.weights.iter().min(), self.weights.iter().max()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (0, 0),
        };
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(len);
        fn go(
            f: &WideFamily,
            len: usize,
            left: usize,
            (lo, hi): (usize, usize),
            word: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            limit: usize,
        ) {
            if out.len() >= limit {
                return;
            }
            let slots = len - word.len();
            if slots == 0 {
                if left == 0 {
                    out.push(word.clone());
                }
                return;
            }
            if left < slots * lo || left > slots * hi {
                return;
            }
            for (a, &w) in f.weights.iter().enumerate() {
                if w <= left {
                    word.push(a);
                    go(f, len, left - w, (lo, hi), word, out, limit);
                    word.pop();
                }
            }
        }
        go(self, len, self.budget, (lo, hi), &mut word, &mut out, limit);
        out
    }

    fn member(&self, word: &[usize]) -> ReachInstance {
        let bridges = word.iter().map(|&a| self.letters[a].clone()).collect();
        let seq = SequentialVas::new(self.dim, self.base.clone(), bridges).expect("consistent dimensions");
        ReachInstance::sequential(seq, self.source.clone(), self.target.clone()).expect("valid endpoints")
    }
}

impl Iterator for WideFamily {
    type Item = ReachInstance;

    fn next(&mut self) -> Option<ReachInstance> {
        loop {
            if let Some(word) = self.buffer.pop_front() {
                if self.emitted == self.cap {
                    self.truncated = true;
                    self.buffer.clear();
                    self.next_len = usize::MAX;
                    return None;
                }
                self.emitted += 1;
                return Some(self.member(&word));
            }
            if self.next_len == usize::MAX || self.next_len > self.longest() {
                return None;
            }
            let limit = self.cap - self.emitted + 1;
            self.buffer = self.words(self.next_len, limit).into();
            self.next_len += 1;
        }
    }
}

/// For a non-wide VAS, a normal vector n splits the transitions into T₀
/// (orthogonal, wide) and T₁ (positive). Each run uses a word over T₁ of
/// total weight K = ⟨n, t − s⟩; the family has one sequential VAS with base
/// T₀ per such word. A wide VAS gives the singleton family.
pub fn decompose_nonwide(inst: &ReachInstance, cap: usize) -> Result<ReductionOutput> {
    let v = match inst.system() {
        System::Vass(v) if v.states().len() == 1 => v,
        _ => {
            return Err(Error::UnsupportedShape(
                "non-wide decomposition takes a single-state VAS".into(),
            ))
        }
    };
    let d = v.dim();
    let effects = v.effects();
    let (s, t) = (inst.source().vector.clone(), inst.target().vector.clone());
    let provenance = Provenance::new("decompose_nonwide").with("cap", cap);
    if is_wide(inst.system())? {
        let family = WideFamily::new(d, effects, Vec::new(), Vec::new(), 0, s, t, cap);
        return Ok(ReductionOutput {
            produced: Produced::Family(family),
            relation: Relation::LenCapturedByUnion,
            provenance: provenance.with("wide", true),
        });
    }
    let cert = farkas_normal_vector(&effects)?;
    let k = cert.n.inner(&(&t - &s));
    let provenance = provenance.with("normal", &cert.n).with("K", &k);
    if k.is_negative() {
        return Ok(ReductionOutput::unreachable(
            "⟨n, t − s⟩ < 0 but no transition decreases ⟨n, ·⟩",
            Relation::LenCapturedByUnion,
            provenance,
        ));
    }
    let base: Vec<IntVector> = cert.zero_set.iter().map(|&i| effects[i].clone()).collect();
    let mut letters: Vec<IntVector> = Vec::new();
    let mut weights = Vec::new();
    for (i, a) in effects.iter().enumerate() {
        if cert.zero_set.contains(&i) || letters.contains(a) {
            continue;
        }
        let w = cert.n.inner(a).to_usize().ok_or_else(|| Error::Capacity {
            what: "bridge weight".into(),
            cap: usize::MAX,
        })?;
        letters.push(a.clone());
        weights.push(w);
    }
    let budget = k.to_usize().ok_or_else(|| Error::Capacity {
        what: "bridge budget ⟨n, t − s⟩".into(),
        cap: usize::MAX,
    })?;
    debug_assert!(weights.iter().all(|&w| w > 0));
    Ok(ReductionOutput {
        produced: Produced::Family(WideFamily::new(d, base, letters, weights, budget, s, t, cap)),
        relation: Relation::LenCapturedByUnion,
        provenance,
    })
}

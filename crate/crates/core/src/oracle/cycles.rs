use crate::model::{Path, Vass};
use crate::vector::IntVector;

#[derive(Clone, Debug)]
pub struct SimpleCycles {
    pub cycles: Vec<Path>,
    pub effects: Vec<IntVector>,
    pub truncated: bool,
}

/// Every simple cycle (as a transition sequence; parallel edges give distinct
/// cycles), each found once from its lowest-numbered state.
pub fn enumerate_simple_cycles(vass: &Vass, cap: usize) -> SimpleCycles {
    let n = vass.states().len();
    let dst = |k: usize| vass.state_index(&vass.transition(k).dst).expect("declared");
    let mut cycles = Vec::new();
    let mut truncated = false;
    'outer: for s in 0..n {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        // DFS frames: (state, next outgoing position); edges parallel the frames.
        let mut frames = vec![(s, 0usize)];
        let mut edges: Vec<usize> = Vec::new();
        while let Some(&mut (q, ref mut pos)) = frames.last_mut() {
            let out = vass.outgoing(q);
            if *pos >= out.len() {
                frames.pop();
                on_path[q] = q == s;
                edges.pop();
                continue;
            }
            let t = out[*pos];
            *pos += 1;
            let r = dst(t);
            if r == s {
                if cycles.len() == cap {
                    truncated = true;
                    break 'outer;
                }
                let mut c = edges.clone();
                c.push(t);
                cycles.push(Path(c));
            } else if r > s && !on_path[r] {
                on_path[r] = true;
                edges.push(t);
                frames.push((r, 0));
            }
        }
    }
    let effects = cycles.iter().map(|c| vass.effect(c).expect("cycles chain")).collect();
    SimpleCycles {
        cycles,
        effects,
        truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{StateId, Transition};

    fn t(p: &str, e: &[i64], q: &str) -> Transition {
        Transition::new(p, IntVector::from_i64s(e), q)
    }

    fn vass(states: &[&str], ts: Vec<Transition>) -> Vass {
        let d = ts.first().map_or(1, |t| t.effect.dim());
        Vass::new(d, states.iter().map(|s| StateId::new(s)), ts).unwrap()
    }

    #[test]
    fn self_loops() {
        let v = Vass::vas(
            1,
            vec![IntVector::from([1]), IntVector::from([2]), IntVector::from([-1])],
        )
        .unwrap();
        let c = enumerate_simple_cycles(&v, 100);
        assert_eq!(
            c.effects,
            vec![IntVector::from([1]), IntVector::from([2]), IntVector::from([-1])]
        );
    }

    #[test]
    fn triangle() {
        let v = vass(
            &["p", "q", "r"],
            vec![t("p", &[1, 0], "q"), t("q", &[0, 1], "r"), t("r", &[2, 2], "p")],
        );
        let c = enumerate_simple_cycles(&v, 100);
        assert_eq!(c.effects, vec![IntVector::from([3, 3])]);
        assert!(!c.truncated);
    }

    #[test]
    fn parallel_edges_multiply() {
        // 3 edges p→q and 2 edges q→p: 6 simple cycles.
        let v = vass(
            &["p", "q"],
            vec![
                t("p", &[1], "q"),
                t("p", &[2], "q"),
                t("p", &[3], "q"),
                t("q", &[10], "p"),
                t("q", &[20], "p"),
            ],
        );
        let c = enumerate_simple_cycles(&v, 100);
        assert_eq!(c.cycles.len(), 6);
        let capped = enumerate_simple_cycles(&v, 4);
        assert_eq!(capped.cycles.len(), 4);
        assert!(capped.truncated);
    }

    #[test]
    fn no_repeated_states() {
        // Two loops through p sharing nothing else, plus a chord.
        let v = vass(
            &["p", "q", "r"],
            vec![
                t("p", &[1], "q"),
                t("q", &[1], "p"),
                t("p", &[1], "r"),
                t("r", &[1], "p"),
                t("q", &[1], "r"),
            ],
        );
        let c = enumerate_simple_cycles(&v, 100);
        // p-q-p, p-q-r-p, p-r-p
        assert_eq!(c.cycles.len(), 3);
        for cyc in &c.cycles {
            let mut seen = std::collections::HashSet::new();
            for &k in cyc.indices() {
                assert!(seen.insert(v.transition(k).src.clone()));
            }
        }
    }
}

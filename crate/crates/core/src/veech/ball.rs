use std::collections::HashSet;

use serde::Serialize;

use super::{FuchsianSubgroup, IntMatrix, VeechError};

/// Default cap on the number of ball elements.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;

/// A group element with a shortest word in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallElement {
    pub matrix: IntMatrix,
    pub word_length: usize,
    /// Space-separated generator labels, inverses written `X^-1`; empty for the identity.
    pub word: String,
}

/// Generators together with their inverses, projectively deduplicated.
pub(crate) fn symmetric_generators(g: &FuchsianSubgroup) -> Vec<(String, IntMatrix)> {
    let mut out: Vec<(String, IntMatrix)> = Vec::new();
    let mut push = |name: String, m: IntMatrix| {
        let m = m.normalized();
        if !m.is_proj_identity() && !out.iter().any(|(_, x)| *x == m) {
            out.push((name, m));
        }
    };
    for (name, m) in &g.generators {
        push(name.clone(), *m);
        push(format!("{name}^-1"), m.inverse());
    }
    out
}

/// Breadth-first word ball; each projective element appears once with its
/// word length, in order of discovery.
pub fn group_ball(g: &FuchsianSubgroup, radius: usize, cap: usize) -> Result<Vec<BallElement>, VeechError> {
    let gens = symmetric_generators(g);
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    seen.insert(IntMatrix::IDENTITY);
    let mut ball = vec![BallElement { matrix: IntMatrix::IDENTITY, word_length: 0, word: String::new() }];
    let mut layer_start = 0;
    for len in 1..=radius {
        let layer_end = ball.len();
        for i in layer_start..layer_end {
            for (name, m) in &gens {
                let next = ball[i].matrix.mul(m).normalized();
                if seen.insert(next) {
                    if ball.len() >= cap {
                        return Err(VeechError::BallCapExceeded(cap));
                    }
                    let word = if ball[i].word.is_empty() {
                        name.clone()
                    } else {
                        format!("{} {}", ball[i].word, name)
                    };
                    ball.push(BallElement { matrix: next, word_length: len, word });
                }
            }
        }
        if ball.len() == layer_end {
            break;
        }
        layer_start = layer_end;
    }
    Ok(ball)
}

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::matrix::{IntMatrix, StLetter};
use super::subgroup::FuchsianSubgroup;
use super::VeechError;
use crate::flat::Origami;

/// Default cap on the `SL(2, Z)`-orbit size.
pub const DEFAULT_ORBIT_CAP: usize = 100_000;

/// Generator of the `SL(2, Z)` action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    S,
    T,
}

/// Applies one generator to an origami.
pub fn sl2z_move(s: &Origami, g: Generator) -> Origami {
    match g {
        Generator::S => s.act_s(),
        Generator::T => s.act_t(),
    }
}

/// The Veech group as the stabilizer of an origami in `PSL(2, Z)`.
#[derive(Clone, Debug, Serialize)]
pub struct VeechGroup {
    /// Schreier generators, deduplicated projectively.
    pub generators: Vec<IntMatrix>,
    /// Index in `PSL(2, Z)`, equal to the orbit size.
    pub index: usize,
    /// Orbit representatives; entry 0 is the input.
    #[serde(skip)]
    pub orbit: Vec<Origami>,
    /// `transversal[k]·s ≅ orbit[k]`.
    pub transversal: Vec<IntMatrix>,
    /// Coset action of `S` on orbit indices.
    pub s_perm: Vec<usize>,
    /// Coset action of `T` on orbit indices.
    pub t_perm: Vec<usize>,
    /// `(cycle, position)` of each orbit index under `T`.
    #[serde(skip)]
    t_pos: Vec<(usize, usize)>,
    #[serde(skip)]
    t_cycles: Vec<Vec<usize>>,
}

/// Orbit walk with Schreier generators.
pub fn veech_group(s: &Origami, cap: usize) -> Result<VeechGroup, VeechError> {
    let mut index_of: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut orbit = vec![s.clone()];
    let mut transversal = vec![IntMatrix::IDENTITY];
    index_of.insert(s.projective_key(), 0);
    let mut s_perm = Vec::new();
    let mut t_perm = Vec::new();
    let mut generators: Vec<IntMatrix> = Vec::new();
    let mut head = 0;
    while head < orbit.len() {
        let x = orbit[head].clone();
        let ax = transversal[head];
        for (g, mat) in [(Generator::S, IntMatrix::S), (Generator::T, IntMatrix::T)] {
            let y = sl2z_move(&x, g);
            let key = y.projective_key();
            let gx = mat.mul(&ax);
            let target = match index_of.get(&key) {
                Some(&k) => {
                    let h = transversal[k].inverse().mul(&gx).normalized();
                    if !h.is_proj_identity() && !generators.contains(&h) {
                        generators.push(h);
                    }
                    k
                }
                None => {
                    if orbit.len() >= cap {
                        return Err(VeechError::OrbitCapExceeded(cap));
                    }
                    let k = orbit.len();
                    index_of.insert(key, k);
                    orbit.push(y);
                    transversal.push(gx.normalized());
                    k
                }
            };
            match g {
                Generator::S => s_perm.push(target),
                Generator::T => t_perm.push(target),
            }
        }
        head += 1;
    }
    let t_cycles = crate::flat::perm::cycles(&t_perm);
    let mut t_pos = vec![(0, 0); t_perm.len()];
    for (c, cyc) in t_cycles.iter().enumerate() {
        for (i, &x) in cyc.iter().enumerate() {
            t_pos[x] = (c, i);
        }
    }
    Ok(VeechGroup {
        generators,
        index: orbit.len(),
        orbit,
        transversal,
        s_perm,
        t_perm,
        t_pos,
        t_cycles,
    })
}

impl VeechGroup {
    /// Orbit index of `M·orbit[k]`.
    pub fn act_on_coset(&self, m: &IntMatrix, k: usize) -> usize {
        let mut cur = k;
        for l in m.st_word().iter().rev() {
            cur = match *l {
                // S² = −I acts trivially.
                StLetter::S => self.s_perm[cur],
                StLetter::T(j) => {
                    let (c, i) = self.t_pos[cur];
                    let cyc = &self.t_cycles[c];
                    cyc[(i as i64 + j).rem_euclid(cyc.len() as i64) as usize]
                }
            };
        }
        cur
    }

    /// Membership in the Veech group.
    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.act_on_coset(m, 0) == 0
    }

    /// Cycles of `T` on the orbit; each is a cusp with width its length.
    pub fn t_cycles(&self) -> &[Vec<usize>] {
        &self.t_cycles
    }

    /// Index of the `T`-cycle, i.e. of the cusp class, containing an orbit index.
    pub fn t_cycle_of(&self, k: usize) -> usize {
        self.t_pos[k].0
    }

    /// The group as a [`FuchsianSubgroup`] with the lattice flag set.
    pub fn as_subgroup(&self, label: &str) -> FuchsianSubgroup {
        let generators = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("g{}", i + 1), *g))
            .collect();
        FuchsianSubgroup::full_veech(label, generators, self.index)
    }

    /// Schreier coset graph in DOT format; nodes are 1-based orbit positions.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph coset_graph {\n");
        for k in 0..self.index {
            let _ = writeln!(out, "  {} [label=\"{}\"];", k + 1, self.orbit[k].cycle_notation());
        }
        for k in 0..self.index {
            let _ = writeln!(out, "  {} -> {} [label=\"S\"];", k + 1, self.s_perm[k] + 1);
            let _ = writeln!(out, "  {} -> {} [label=\"T\"];", k + 1, self.t_perm[k] + 1);
        }
        out.push_str("}\n");
        out
    }
}

use serde::{Deserialize, Serialize};

use super::perm;
use super::FlatError;

/// A connected square-tiled translation surface.
///
/// Squares are stored 0-based; all user-facing formats are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Origami {
    h: Vec<usize>,
    v: Vec<usize>,
    h_inv: Vec<usize>,
    v_inv: Vec<usize>,
    label: String,
    /// Vertex id of the lower-left corner of each square.
    ll_vertex: Vec<usize>,
    /// Cone angle of each vertex in multiples of `2π`.
    vertex_angle: Vec<usize>,
    /// Whether each vertex belongs to the singular set.
    vertex_singular: Vec<bool>,
}

/// A corner of a unit square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Corner {
    LowerLeft,
    LowerRight,
    UpperRight,
    UpperLeft,
}

/// Cone angles, genus and stratum of an origami.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexData {
    /// Cone angle of each vertex as a multiple of `2π`.
    pub cone_angles: Vec<usize>,
    pub genus: usize,
    /// Orders of the zeros (`angle/2π − 1`), sorted descending; marked points are zeros of order 0.
    pub stratum: Vec<usize>,
    /// Whether each vertex is treated as a singularity.
    pub singular: Vec<bool>,
}

/// JSON input/output form: 1-based cycles.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrigamiSpec {
    pub n: usize,
    pub h: Vec<Vec<usize>>,
    pub v: Vec<Vec<usize>>,
    #[serde(default)]
    pub label: String,
}

impl Origami {
    /// Builds an origami from 1-based cycle lists. Omitted labels are fixed points.
    pub fn build(
        n: usize,
        h: &[Vec<usize>],
        v: &[Vec<usize>],
        label: &str,
    ) -> Result<Self, FlatError> {
        let h = perm::from_cycles(n, h).map_err(|detail| FlatError::NonPermutation { n, detail })?;
        let v = perm::from_cycles(n, v).map_err(|detail| FlatError::NonPermutation { n, detail })?;
        Self::from_perms(h, v, label)
    }

    /// Builds an origami from 0-based permutation arrays.
    pub fn from_perms(h: Vec<usize>, v: Vec<usize>, label: &str) -> Result<Self, FlatError> {
        let n = h.len();
        if n == 0 {
            return Err(FlatError::NonPermutation { n, detail: "no squares".into() });
        }
        if v.len() != n || !perm::is_permutation(&h) || !perm::is_permutation(&v) {
            return Err(FlatError::NonPermutation {
                n,
                detail: "h and v must be permutations of the same set".into(),
            });
        }
        let reached = orbit_size(&h, &v);
        if reached != n {
            return Err(FlatError::Disconnected { reached, n });
        }
        Ok(Self::assemble(h, v, label.to_string()))
    }

    fn assemble(h: Vec<usize>, v: Vec<usize>, label: String) -> Self {
        let h_inv = perm::inverse(&h);
        let v_inv = perm::inverse(&v);
        // LL(i) and LL(c(i)) are the same point for c = h ∘ v ∘ h⁻¹ ∘ v⁻¹.
        let c = perm::compose(&h, &perm::compose(&v, &perm::compose(&h_inv, &v_inv)));
        let mut ll_vertex = vec![0; h.len()];
        let mut vertex_angle = Vec::new();
        for (id, cyc) in perm::cycles(&c).into_iter().enumerate() {
            for &sq in &cyc {
                ll_vertex[sq] = id;
            }
            vertex_angle.push(cyc.len());
        }
        let any_cone = vertex_angle.iter().any(|&k| k > 1);
        let vertex_singular = vertex_angle.iter().map(|&k| k > 1 || !any_cone).collect();
        Self { h, v, h_inv, v_inv, label, ll_vertex, vertex_angle, vertex_singular }
    }

    /// The one-square torus.
    pub fn torus() -> Self {
        Self::assemble(vec![0], vec![0], "torus".into())
    }

    /// The three-square L-shaped origami `h = (1 2)`, `v = (1 3)`.
    pub fn l_shape() -> Self {
        Self::build(3, &[vec![1, 2]], &[vec![1, 3]], "L").expect("valid L origami")
    }

    /// Parses the JSON form `{"n", "h", "v", "label"}`.
    pub fn from_json(text: &str) -> Result<Self, FlatError> {
        let spec: OrigamiSpec =
            serde_json::from_str(text).map_err(|e| FlatError::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn from_spec(spec: &OrigamiSpec) -> Result<Self, FlatError> {
        Self::build(spec.n, &spec.h, &spec.v, &spec.label)
    }

    /// Parses one-line cycle notation such as `h=(1 2)(3) v=(1 3)`.
    ///
    /// The square count is the largest label mentioned.
    pub fn from_cycle_notation(line: &str, label: &str) -> Result<Self, FlatError> {
        let line = line.trim();
        let v_at = line
            .find("v=")
            .ok_or_else(|| FlatError::Parse("missing `v=`".into()))?;
        let (h_part, v_part) = line.split_at(v_at);
        let h_part = h_part
            .trim()
            .strip_prefix("h=")
            .ok_or_else(|| FlatError::Parse("expected `h=` first".into()))?;
        let h = parse_cycles(h_part)?;
        let v = parse_cycles(&v_part[2..])?;
        let n = h.iter().chain(v.iter()).flatten().copied().max().unwrap_or(0);
        Self::build(n, &h, &v, label)
    }

    pub fn spec(&self) -> OrigamiSpec {
        let to_1 = |p: &[usize]| -> Vec<Vec<usize>> {
            perm::cycles(p)
                .into_iter()
                .map(|c| c.into_iter().map(|x| x + 1).collect())
                .collect()
        };
        OrigamiSpec { n: self.n(), h: to_1(&self.h), v: to_1(&self.v), label: self.label.clone() }
    }

    pub fn cycle_notation(&self) -> String {
        format!("h={} v={}", perm::to_cycle_string(&self.h), perm::to_cycle_string(&self.v))
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    pub fn right(&self, sq: usize) -> usize {
        self.h[sq]
    }

    pub fn left(&self, sq: usize) -> usize {
        self.h_inv[sq]
    }

    pub fn up(&self, sq: usize) -> usize {
        self.v[sq]
    }

    pub fn down(&self, sq: usize) -> usize {
        self.v_inv[sq]
    }

    /// Vertex id of a corner of a square.
    pub fn vertex_of(&self, sq: usize, corner: Corner) -> usize {
        let owner = match corner {
            Corner::LowerLeft => sq,
            Corner::LowerRight => self.h[sq],
            Corner::UpperLeft => self.v[sq],
            Corner::UpperRight => self.v[self.h[sq]],
        };
        self.ll_vertex[owner]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_angle.len()
    }

    pub fn is_singular_vertex(&self, vertex: usize) -> bool {
        self.vertex_singular[vertex]
    }

    /// Whether the lower-left corner of `sq` is a singular point.
    pub fn ll_singular(&self, sq: usize) -> bool {
        self.vertex_singular[self.ll_vertex[sq]]
    }

    pub fn genus(&self) -> usize {
        // χ = V − E + F = V − 2n + n
        (self.n() + 2 - self.vertex_count()) / 2
    }

    pub fn vertex_data(&self) -> VertexData {
        let mut stratum: Vec<usize> = self.vertex_angle.iter().map(|k| k - 1).collect();
        stratum.sort_unstable_by(|a, b| b.cmp(a));
        VertexData {
            cone_angles: self.vertex_angle.clone(),
            genus: self.genus(),
            stratum,
            singular: self.vertex_singular.clone(),
        }
    }

    /// Rotation by a quarter turn counterclockwise (matrix `[[0,−1],[1,0]]`).
    ///
    /// Square labels are preserved: square `i` of the result is square `i` rotated.
    pub fn act_s(&self) -> Self {
        Self::assemble(self.v_inv.clone(), self.h.clone(), self.label.clone())
    }

    /// Rotation by a quarter turn clockwise; square labels are preserved.
    pub fn act_s_inv(&self) -> Self {
        Self::assemble(self.v.clone(), self.h_inv.clone(), self.label.clone())
    }

    /// Horizontal shear by `[[1,1],[0,1]]`, re-cut into unit squares.
    ///
    /// New square `i` keeps the bottom edge of old square `i`.
    pub fn act_t(&self) -> Self {
        Self::assemble(self.h.clone(), perm::compose(&self.v, &self.h_inv), self.label.clone())
    }

    /// Inverse shear `[[1,−1],[0,1]]`.
    pub fn act_t_inv(&self) -> Self {
        Self::assemble(self.h.clone(), perm::compose(&self.v, &self.h), self.label.clone())
    }

    /// Rotation by a half turn (the action of `−I`).
    pub fn negated(&self) -> Self {
        Self::assemble(self.h_inv.clone(), self.v_inv.clone(), self.label.clone())
    }

    /// Canonical key for origami isomorphism (simultaneous conjugation of `h`, `v`).
    ///
    /// Computed as the lexicographically smallest relabelling obtained by a
    /// breadth-first numbering from each starting square.
    pub fn canonical_key(&self) -> Vec<u32> {
        (0..self.n())
            .map(|start| relabel_from(&self.h, &self.v, start))
            .min()
            .expect("non-empty origami")
    }

    /// Canonical key up to isomorphism and the half-turn `−I`, i.e. as a
    /// half-translation surface.
    pub fn projective_key(&self) -> Vec<u32> {
        let a = self.canonical_key();
        let b = self.negated().canonical_key();
        a.min(b)
    }

    pub fn is_isomorphic(&self, other: &Origami) -> bool {
        self.n() == other.n() && self.canonical_key() == other.canonical_key()
    }

    /// Isomorphic as half-translation surfaces (allowing the half turn).
    pub fn is_projectively_isomorphic(&self, other: &Origami) -> bool {
        self.n() == other.n() && self.projective_key() == other.projective_key()
    }
}

fn orbit_size(h: &[usize], v: &[usize]) -> usize {
    let mut seen = vec![false; h.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for y in [h[x], v[x]] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

fn relabel_from(h: &[usize], v: &[usize], start: usize) -> Vec<u32> {
    let n = h.len();
    let mut new_label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    new_label[start] = 0;
    order.push(start);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for y in [h[x], v[x]] {
            if new_label[y] == usize::MAX {
                new_label[y] = order.len();
                order.push(y);
            }
        }
    }
    let mut key = Vec::with_capacity(2 * n);
    for &x in &order {
        key.push(new_label[h[x]] as u32);
    }
    for &x in &order {
        key.push(new_label[v[x]] as u32);
    }
    key
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, FlatError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| FlatError::Parse(format!("expected `(` at `{rest}`")))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| FlatError::Parse("unclosed cycle".into()))?;
        let cyc = body_start[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| FlatError::Parse(format!("`{t}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if !cyc.is_empty() {
            out.push(cyc);
        }
        rest = body_start[close + 1..].trim_start();
    }
    Ok(out)
}

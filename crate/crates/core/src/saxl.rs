//! Generalised Saxl graphs Σ(G) and irredundant base graphs.
//!
//! Σ(G) is stored as a set of selected orbitals. For each G-orbit we keep
//! a representative r, a chain whose first base point is r (so the level-0
//! transversal moves any point of the orbit to r) and the G_r-orbit label
//! of every point. The orbital of (x, y) is then read off in O(n).

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;

use crate::bases;
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Orbitals of G, grouped by the G-orbit of the first point.
#[derive(Clone, Debug)]
pub struct Orbitals {
    pub degree: usize,
    /// G-orbit index of each point.
    pub orbit_of: Vec<u32>,
    pub reps: Vec<usize>,
    chains: Vec<Arc<Chain>>,
    /// labels[i][y]: index of the G_{r_i}-orbit containing y.
    pub labels: Vec<Vec<u32>>,
    /// suborbit_reps[i][j]: smallest point of suborbit j of r_i.
    pub suborbit_reps: Vec<Vec<usize>>,
    pub suborbit_sizes: Vec<Vec<usize>>,
    /// offset[i] + j is the global orbital id of suborbit j of r_i.
    pub offset: Vec<usize>,
}

impl Orbitals {
    pub fn new(g: &PermGroup) -> Result<Orbitals> {
        let n = g.degree();
        let orbits = g.orbits();
        let mut orbit_of = vec![0u32; n];
        for (i, o) in orbits.iter().enumerate() {
            for &x in o {
                orbit_of[x] = i as u32;
            }
        }
        let reps: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
        let mut chains = Vec::new();
        let mut labels = Vec::new();
        let mut suborbit_reps = Vec::new();
        let mut suborbit_sizes = Vec::new();
        let mut offset = Vec::new();
        let mut total = 0;
        for &r in &reps {
            chains.push(g.chain_with_prefix(&[r]));
            let stab = g.point_stabilizer(r)?;
            let subs = stab.orbits();
            let mut lab = vec![0u32; n];
            for (j, o) in subs.iter().enumerate() {
                for &y in o {
                    lab[y] = j as u32;
                }
            }
            labels.push(lab);
            suborbit_reps.push(subs.iter().map(|o| o[0]).collect());
            suborbit_sizes.push(subs.iter().map(|o| o.len()).collect());
            offset.push(total);
            total += subs.len();
        }
        Ok(Orbitals { degree: n, orbit_of, reps, chains, labels, suborbit_reps, suborbit_sizes, offset })
    }

    pub fn transitive(&self) -> bool {
        self.reps.len() == 1
    }

    pub fn count(&self) -> usize {
        self.offset.last().unwrap() + self.suborbit_reps.last().unwrap().len()
    }

    /// Element mapping x to its orbit representative.
    fn to_rep(&self, x: usize) -> &Perm {
        let i = self.orbit_of[x] as usize;
        self.chains[i].levels()[0].tinv_of(x).expect("point in orbit")
    }

    /// Element mapping the orbit representative to x.
    fn from_rep(&self, x: usize) -> Perm {
        self.to_rep(x).inverse()
    }

    /// (orbit index, suborbit index) of the ordered pair (x, y).
    pub fn orbital(&self, x: usize, y: usize) -> (usize, usize) {
        let i = self.orbit_of[x] as usize;
        if x == self.reps[i] {
            return (i, self.labels[i][y] as usize);
        }
        let t = self.to_rep(x);
        (i, self.labels[i][t.image(y)] as usize)
    }

    pub fn orbital_id(&self, x: usize, y: usize) -> usize {
        let (i, j) = self.orbital(x, y);
        self.offset[i] + j
    }

    /// True when (i, j) is the diagonal orbital.
    pub fn is_diagonal(&self, i: usize, j: usize) -> bool {
        self.suborbit_reps[i][j] == self.reps[i]
    }

    /// Paired orbital of (r_i, suborbit_reps[i][j]).
    pub fn paired(&self, i: usize, j: usize) -> (usize, usize) {
        let beta = self.suborbit_reps[i][j];
        self.orbital(beta, self.reps[i])
    }

    pub fn self_paired(&self, i: usize, j: usize) -> bool {
        self.paired(i, j) == (i, j)
    }

    /// Points y with (x, y) in one of the given suborbits of x's orbit.
    fn image_of_suborbits(&self, x: usize, keep: &[bool]) -> Vec<usize> {
        let i = self.orbit_of[x] as usize;
        let lab = &self.labels[i];
        let u = if x == self.reps[i] { None } else { Some(self.from_rep(x)) };
        let mut out: Vec<usize> = (0..self.degree)
            .filter(|&y| keep[lab[y] as usize])
            .map(|y| u.as_ref().map_or(y, |u| u.image(y)))
            .collect();
        out.sort_unstable();
        out
    }
}

/// True iff {a, b} extends to a base of size b.
pub fn is_edge(g: &PermGroup, b: usize, a: usize, c: usize) -> Result<bool> {
    if a == c {
        return Err(Error::invalid("edge test needs two distinct points"));
    }
    if b < 2 {
        return Err(Error::BaseSizeBelowTwo);
    }
    let h = g.pointwise_stabilizer(&[a, c])?;
    Ok(bases::has_base_of_size(&h, b - 2))
}

#[derive(Clone, Debug)]
pub struct SaxlGraph {
    pub group: PermGroup,
    pub b: usize,
    pub orbitals: Orbitals,
    /// selected[i][j]: suborbit j of r_i consists of neighbours of r_i.
    pub selected: Vec<Vec<bool>>,
    pub warnings: Vec<String>,
}

pub fn saxl_graph(g: &PermGroup) -> Result<SaxlGraph> {
    let b = bases::base_size(g).b;
    saxl_graph_with_b(g, b)
}

pub fn saxl_graph_with_b(g: &PermGroup, b: usize) -> Result<SaxlGraph> {
    if b < 2 {
        return Err(Error::BaseSizeBelowTwo);
    }
    let orbitals = Orbitals::new(g)?;
    let mut warnings = Vec::new();
    if !orbitals.transitive() {
        warnings.push(format!("group is intransitive ({} orbits)", orbitals.reps.len()));
    }
    let mut selected = Vec::new();
    for (i, &r) in orbitals.reps.iter().enumerate() {
        let sel: Result<Vec<bool>> = orbitals.suborbit_reps[i]
            .par_iter()
            .map(|&beta| if beta == r { Ok(false) } else { is_edge(g, b, r, beta) })
            .collect();
        selected.push(sel?);
    }
    Ok(SaxlGraph { group: g.clone(), b, orbitals, selected, warnings })
}

impl SaxlGraph {
    pub fn degree(&self) -> usize {
        self.orbitals.degree
    }

    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        if x == y {
            return false;
        }
        let (i, j) = self.orbitals.orbital(x, y);
        self.selected[i][j]
    }

    pub fn neighbours(&self, x: usize) -> Vec<usize> {
        let i = self.orbitals.orbit_of[x] as usize;
        self.orbitals.image_of_suborbits(x, &self.selected[i])
    }

    /// Valency at each orbit representative.
    pub fn valencies(&self) -> Vec<usize> {
        (0..self.orbitals.reps.len())
            .map(|i| self.selected[i].iter().zip(&self.orbitals.suborbit_sizes[i]).filter(|(s, _)| **s).map(|(_, n)| n).sum())
            .collect()
    }

    pub fn valency(&self) -> usize {
        self.valencies()[0]
    }

    /// Representatives of the G_alpha-orbits adjacent to alpha (alpha the
    /// representative of its G-orbit).
    pub fn almost_regular_suborbits(&self, alpha: usize) -> Vec<usize> {
        let i = self.orbitals.orbit_of[alpha] as usize;
        let u = if alpha == self.orbitals.reps[i] { None } else { Some(self.orbitals.from_rep(alpha)) };
        self.orbitals.suborbit_reps[i]
            .iter()
            .zip(&self.selected[i])
            .filter(|(_, s)| **s)
            .map(|(&y, _)| u.as_ref().map_or(y, |u| u.image(y)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.orbitals.reps.len())
            .map(|i| {
                let orbit_len = self.orbitals.orbit_of.iter().filter(|&&o| o as usize == i).count();
                orbit_len * self.valencies()[i]
            })
            .sum();
        total / 2
    }

    /// Semi-Frobenius test: every non-diagonal orbital is selected.
    pub fn is_complete(&self) -> bool {
        (0..self.orbitals.reps.len()).all(|i| self.selected[i].iter().enumerate().all(|(j, &s)| s || self.orbitals.is_diagonal(i, j)))
    }

    fn bfs(&self, start: usize, seen: &mut [u32]) -> (usize, u32) {
        let mut q = VecDeque::from([start]);
        seen[start] = 0;
        let (mut count, mut ecc) = (1, 0);
        while let Some(x) = q.pop_front() {
            let d = seen[x];
            for y in self.neighbours(x) {
                if seen[y] == u32::MAX {
                    seen[y] = d + 1;
                    ecc = ecc.max(d + 1);
                    count += 1;
                    q.push_back(y);
                }
            }
        }
        (count, ecc)
    }

    pub fn components(&self) -> usize {
        let n = self.degree();
        if self.orbitals.transitive() {
            let mut seen = vec![u32::MAX; n];
            let (c, _) = self.bfs(self.orbitals.reps[0], &mut seen);
            return n / c;
        }
        let mut seen = vec![u32::MAX; n];
        let mut comps = 0;
        for x in 0..n {
            if seen[x] == u32::MAX {
                self.bfs(x, &mut seen);
                comps += 1;
            }
        }
        comps
    }

    /// Diameter, or None when disconnected. BFS from one vertex per
    /// G-orbit suffices since G acts by automorphisms.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.degree();
        let mut diam = 0;
        for &r in &self.orbitals.reps {
            let mut seen = vec![u32::MAX; n];
            let (c, e) = self.bfs(r, &mut seen);
            if c < n {
                return None;
            }
            diam = diam.max(e as usize);
        }
        Some(diam)
    }

    fn share_neighbour(&self, x: usize, y: usize) -> bool {
        let nx: HashSet<usize> = self.neighbours(x).into_iter().collect();
        self.neighbours(y).into_iter().any(|z| nx.contains(&z))
    }

    /// Any two vertices have a common neighbour.
    pub fn common_neighbour_check(&self) -> bool {
        if self.b >= 3 && self.orbitals.transitive() {
            return matches!(self.diameter(), Some(d) if d <= 2);
        }
        for (i, &r) in self.orbitals.reps.iter().enumerate() {
            if self.neighbours(r).is_empty() {
                return false;
            }
            for (&y, _) in self.orbitals.suborbit_reps[i].iter().zip(&self.orbitals.suborbit_sizes[i]) {
                if y != r && !self.share_neighbour(r, y) {
                    return false;
                }
            }
        }
        true
    }

    /// Exactly one orbital selected and it is self-paired.
    pub fn is_arc_transitive(&self) -> bool {
        if !self.orbitals.transitive() {
            return false;
        }
        let sel: Vec<usize> = (0..self.selected[0].len()).filter(|&j| self.selected[0][j]).collect();
        sel.len() == 1 && self.orbitals.self_paired(0, sel[0])
    }

    /// The stabilizer of alpha fixing N(alpha) pointwise is trivial.
    pub fn is_locally_faithful(&self) -> Result<bool> {
        for &r in &self.orbitals.reps {
            let h = self.group.point_stabilizer(r)?;
            let k = h.pointwise_stabilizer(&self.neighbours(r))?;
            if !k.order().is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For every alpha and beta, N(beta) meets every almost-regular
    /// G_alpha-orbit. The G_alpha-orbit representatives cover all of Ω, so
    /// beta ranges over them.
    pub fn strong_conjecture_check(&self) -> bool {
        for i in 0..self.orbitals.reps.len() {
            let lab = &self.orbitals.labels[i];
            let want: Vec<usize> = (0..self.selected[i].len()).filter(|&j| self.selected[i][j]).collect();
            for &beta in &self.orbitals.suborbit_reps[i] {
                let mut hit = vec![false; self.selected[i].len()];
                for z in self.neighbours(beta) {
                    hit[lab[z] as usize] = true;
                }
                if want.iter().any(|&j| !hit[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Dirac condition val > n/2.
    pub fn dirac_condition(&self) -> bool {
        self.valencies().iter().all(|&v| 2 * v > self.degree())
    }

    /// Greedy search for a clique of the given size through an edge at the
    /// first orbit representative. None means inconclusive.
    pub fn greedy_clique(&self, size: usize) -> Option<Vec<usize>> {
        let r = self.orbitals.reps[0];
        let nr = self.neighbours(r);
        for &start in nr.iter().take(64) {
            let mut clique = vec![r, start];
            let mut cand: Vec<usize> = nr.iter().copied().filter(|&z| z != start && self.is_adjacent(start, z)).collect();
            while clique.len() < size {
                let Some(&z) = cand.first() else { break };
                clique.push(z);
                cand.retain(|&w| w != z && self.is_adjacent(z, w));
            }
            if clique.len() >= size {
                clique.truncate(size);
                return Some(clique);
            }
        }
        None
    }

    /// Edges (u, v, orbital id) with u < v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.degree() {
            for v in self.neighbours(u) {
                if u < v {
                    out.push((u, v, self.orbitals.orbital_id(u, v)));
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph saxl {\n");
        for v in 0..self.degree() {
            let _ = writeln!(s, "  {v};");
        }
        for (u, v, o) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v} [orbital={o}];");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v, o) in self.edges() {
            let _ = writeln!(s, "{u} {v} {o}");
        }
        s
    }
}

/// Maximum over non-diagonal orbitals of the diameter of the undirected
/// orbital graph. Requires a primitive group.
pub fn orbital_diameter(g: &PermGroup) -> Result<usize> {
    if !g.is_primitive()? {
        return Err(Error::Imprimitive);
    }
    let orb = Orbitals::new(g)?;
    let n = g.degree();
    let r = orb.reps[0];
    let mut best = 0;
    for j in 0..orb.suborbit_reps[0].len() {
        if orb.is_diagonal(0, j) {
            continue;
        }
        let (_, pj) = orb.paired(0, j);
        let mut keep = vec![false; orb.suborbit_reps[0].len()];
        keep[j] = true;
        keep[pj] = true;
        let mut dist = vec![u32::MAX; n];
        dist[r] = 0;
        let mut q = VecDeque::from([r]);
        let mut ecc = 0;
        while let Some(x) = q.pop_front() {
            for y in orb.image_of_suborbits(x, &keep) {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    ecc = ecc.max(dist[y]);
                    q.push_back(y);
                }
            }
        }
        best = best.max(ecc as usize);
    }
    Ok(best)
}

/// Number of isolated vertices in Σ(G_alpha) for alpha the first orbit
/// representative, together with whether alpha is the unique one. Needs
/// b(G) >= 3.
pub fn isolated_vertex_criterion(g: &PermGroup, b: usize) -> Result<(bool, usize)> {
    if b < 3 {
        return Err(Error::invalid("isolated-vertex criterion needs b(G) >= 3"));
    }
    let alpha = g.orbits()[0][0];
    let h = g.point_stabilizer(alpha)?;
    let sh = saxl_graph_with_b(&h, b - 1)?;
    let isolated: Vec<usize> = sh.orbitals.reps.iter().enumerate().filter(|(i, _)| sh.valencies()[*i] == 0).map(|(i, _)| i).collect();
    let count: usize = isolated.iter().map(|&i| sh.orbitals.orbit_of.iter().filter(|&&o| o as usize == i).count()).sum();
    let alpha_isolated = isolated.contains(&(sh.orbitals.orbit_of[alpha] as usize));
    Ok((alpha_isolated && count == 1, count))
}

/// IΣ(G): vertices adjacent iff their stabilizers differ. Stored as the
/// class of each point under stabilizer equality; the graph is complete
/// multipartite with these classes as parts.
#[derive(Clone, Debug)]
pub struct IrredundantGraph {
    pub class_of: Vec<u32>,
    pub classes: usize,
}

impl IrredundantGraph {
    pub fn is_adjacent(&self, x: usize, y: usize) -> bool {
        self.class_of[x] != self.class_of[y]
    }
    pub fn is_complete(&self) -> bool {
        self.classes == self.class_of.len()
    }
    pub fn is_edgeless(&self) -> bool {
        self.classes == 1
    }
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut p = vec![Vec::new(); self.classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            p[c as usize].push(x);
        }
        p
    }
}

/// G_x = G_y iff G_x fixes y and G_y fixes x.
pub fn isigma(g: &PermGroup) -> Result<IrredundantGraph> {
    let orb = Orbitals::new(g)?;
    let n = g.degree();
    // fixed points of G_r for each representative
    let mut fix_of_rep: Vec<Vec<bool>> = Vec::new();
    for &r in &orb.reps {
        let s = g.point_stabilizer(r)?;
        let gens = s.nontrivial_generators();
        fix_of_rep.push((0..n).map(|y| gens.iter().all(|h| h.image(y) == y)).collect());
    }
    let fixes = |x: usize, y: usize| -> bool {
        let i = orb.orbit_of[x] as usize;
        let t = orb.to_rep(x);
        fix_of_rep[i][t.image(y)]
    };
    let mut class_of = vec![u32::MAX; n];
    let mut classes = 0;
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        class_of[x] = classes;
        for y in x + 1..n {
            if class_of[y] == u32::MAX && fixes(x, y) && fixes(y, x) {
                class_of[y] = classes;
            }
        }
        classes += 1;
    }
    Ok(IrredundantGraph { class_of, classes: classes as usize })
}

/// Edge set of IΣ_k(G) as sorted pairs.
pub fn isigma_k(g: &PermGroup, k: usize, node_cap: u64) -> Result<Vec<(usize, usize)>> {
    let mut v: Vec<(usize, usize)> = bases::irredundant_pairs(g, k, node_cap)?.into_iter().collect();
    v.sort_unstable();
    Ok(v)
}

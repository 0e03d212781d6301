//! Bundled small groups T given inside a natural overgroup N that induces
//! Aut(T) by conjugation. Elements of T are listed in image order, so the
//! identity is element 0.

use std::collections::HashMap;

use crate::actions::{self, Psl2Variant};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

pub const BUNDLED: &[&str] = &["A5", "A6", "A7", "L2_7", "L2_8", "L2_11", "C5"];

#[derive(Clone, Debug)]
pub struct SmallGroup {
    pub name: String,
    /// T in its natural action.
    pub t: PermGroup,
    /// Generators of N beyond T; conjugation by these gives the outer
    /// automorphisms.
    pub outer: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Vec<u32>, usize>,
    pub simple: bool,
}

fn canonical_name(name: &str) -> String {
    name.trim().to_ascii_uppercase().replace(['(', ','], "_").replace(')', "")
}

impl SmallGroup {
    pub fn bundled(name: &str) -> Result<SmallGroup> {
        let key = canonical_name(name);
        let (t, n): (PermGroup, PermGroup) = match key.as_str() {
            "A5" => (actions::alternating(5), actions::symmetric(5)),
            "A6" => (actions::psl2_projective(9, Psl2Variant::Psl)?, actions::psl2_projective(9, Psl2Variant::Pgammal)?),
            "A7" => (actions::alternating(7), actions::symmetric(7)),
            "L2_7" => (actions::psl2_projective(7, Psl2Variant::Psl)?, actions::psl2_projective(7, Psl2Variant::Pgl)?),
            "L2_8" => (actions::psl2_projective(8, Psl2Variant::Psl)?, actions::psl2_projective(8, Psl2Variant::Pgammal)?),
            "L2_11" => (actions::psl2_projective(11, Psl2Variant::Psl)?, actions::psl2_projective(11, Psl2Variant::Pgl)?),
            "C5" => {
                let x2 = Perm::from_images((0..5).map(|i| 2 * i % 5).collect())?;
                (actions::cyclic(5), PermGroup::new(vec![actions::cyclic(5).generators()[0].clone(), x2])?)
            }
            _ => return Err(Error::invalid(format!("unknown group '{name}'; bundled: {}", BUNDLED.join(", ")))),
        };
        let outer = n.generators().iter().filter(|g| !t.contains(g).unwrap()).cloned().collect();
        SmallGroup::new(&key, t, outer)
    }

    pub fn new(name: &str, t: PermGroup, outer: Vec<Perm>) -> Result<SmallGroup> {
        let elements = actions::elements(&t, 100_000)?;
        let index = elements.iter().enumerate().map(|(i, e)| (e.images().to_vec(), i)).collect();
        let mut g = SmallGroup { name: name.to_string(), t, outer, elements, index, simple: false };
        g.simple = g.is_nonabelian_simple_heuristic();
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> usize {
        self.index[p.images()]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.elements[a].mul(&self.elements[b]))
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index_of(&self.elements[a].inverse())
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.t.nontrivial_generators().iter().map(|g| self.index_of(g)).collect()
    }

    /// Element map t -> n^-1 t n.
    pub fn conjugation_map(&self, n: &Perm) -> Vec<usize> {
        self.elements.iter().map(|t| self.index_of(&t.conjugate(n))).collect()
    }

    /// Automorphisms as element maps: inner ones from T's generators, then
    /// the outer ones if requested.
    pub fn automorphism_maps(&self, with_outer: bool) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.t.nontrivial_generators().iter().map(|g| self.conjugation_map(g)).collect();
        if with_outer {
            v.extend(self.outer.iter().map(|n| self.conjugation_map(n)));
        }
        v
    }

    /// Inn(T) or Aut(T) (with outer part) acting on the elements of T.
    pub fn automorphism_group(&self, with_outer: bool) -> PermGroup {
        let gens = self.automorphism_maps(with_outer).into_iter().map(|m| Perm::from_images(m).unwrap()).collect();
        PermGroup::from_parts(self.order(), gens)
    }

    fn is_nonabelian_simple_heuristic(&self) -> bool {
        let gens = self.t.nontrivial_generators();
        let central = self.elements.iter().skip(1).any(|z| gens.iter().all(|g| z.mul(g) == g.mul(z)));
        if central {
            return false;
        }
        // perfect: the normal closure of the commutators of generators is T
        let mut comm: Vec<Perm> = Vec::new();
        for a in &gens {
            for b in &gens {
                let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
                if !c.is_identity() {
                    comm.push(c);
                }
            }
        }
        if comm.is_empty() {
            return false;
        }
        let mut d = PermGroup::new(comm.clone()).unwrap();
        loop {
            let mut grew = false;
            for c in comm.clone() {
                for g in &gens {
                    let x = c.conjugate(g);
                    if !d.contains(&x).unwrap() {
                        comm.push(x);
                        d = PermGroup::new(comm.clone()).unwrap();
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        d.order() == self.t.order()
    }
}

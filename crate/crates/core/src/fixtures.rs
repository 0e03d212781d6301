//! Bundled fixture groups. Each fixture is rebuilt deterministically from
//! the constructions in `actions`, so the files under fixtures/ can be
//! regenerated and checked against these definitions.

use num_bigint::BigUint;

use crate::actions::{self, LinearKind, Psl2Variant};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gensfile;
use crate::group::PermGroup;
use crate::linear::{self, Mat};
use crate::perm::Perm;

#[derive(Clone, Debug)]
pub enum FixtureData {
    Gens(PermGroup),
    /// Linear generators over GF(q) of dimension n.
    Matrices { q: usize, n: usize, mats: Vec<Mat> },
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub family: &'static str,
    pub description: &'static str,
    pub order: u64,
    pub degree: usize,
    pub data: FixtureData,
}

impl Fixture {
    pub fn file_name(&self) -> String {
        match self.data {
            FixtureData::Gens(_) => format!("{}/{}.gens", self.family, self.name),
            FixtureData::Matrices { .. } => format!("{}/{}.mat", self.family, self.name),
        }
    }

    pub fn contents(&self) -> String {
        let header = format!("{}\norder {}", self.description, self.order);
        match &self.data {
            FixtureData::Gens(g) => gensfile::format_gens(g.degree(), &g.nontrivial_generators(), &header),
            FixtureData::Matrices { q, n, mats } => linear::format_matrices(mats, &format!("{header}\nGF({q}) dimension {n}")),
        }
    }

    pub fn group(&self) -> Result<PermGroup> {
        match &self.data {
            FixtureData::Gens(g) => Ok(g.clone()),
            FixtureData::Matrices { q, n, mats } => {
                let k = Field::of_order(*q)?;
                let gens = mats.iter().map(|m| linear::nonzero_vector_perm(m, &k)).collect();
                Ok(PermGroup::from_parts(q.pow(*n as u32) - 1, gens))
            }
        }
    }
}

pub const NAMES: &[&str] = &[
    "m12",
    "l211-in-m12",
    "m11",
    "m11-3set-stabilizer",
    "l34-hyperovals",
    "3a6-in-sl3-4",
    "a4-in-psl2-5",
    "s4-in-psl2-7",
    "a5-in-psl2-11",
    "s4-in-pgl2-5",
    "a5-in-psl2-9",
    "s5-in-psigmal2-9",
    "a5-in-psl2-19",
    "a4-in-psl2-13",
    "d12-in-psl2-11",
    "pgl2-7-on-14",
    "psigmal2-9-subfield",
    "psigmal2-16-subfield",
    "psigmal2-25-subfield",
    "pgammal2-8",
    "agl3-2",
];

/// M_12 on the projective line over GF(11): L_2(11) together with a map
/// fixing infinity and 0 that sends x to a x^3 on nonzero squares and
/// c x^3 on non-squares. The pairs (a, c) are scanned in lexicographic
/// order and the first giving order 95040 is kept.
pub fn m12() -> Result<PermGroup> {
    let k = Field::of_order(11)?;
    let l = actions::psl2_projective(11, Psl2Variant::Psl)?;
    for (a, c) in (1..11).flat_map(|a| (1..11).map(move |c| (a, c))) {
        let img: Vec<usize> = (0..12)
            .map(|i| {
                if i <= 1 {
                    return i;
                }
                let x = i - 1;
                let x3 = k.pow(x, 3);
                let y = if k.is_square(x) { k.mul(x3, a) } else { k.mul(x3, c) };
                1 + y
            })
            .collect();
        let Ok(d) = Perm::from_images(img) else { continue };
        let mut gens = l.nontrivial_generators();
        gens.push(d);
        let g = PermGroup::new(gens)?;
        if g.order() == BigUint::from(95040u32) {
            return Ok(g);
        }
    }
    Err(Error::invalid("no variant of the extra generator gives M12"))
}

fn pick_generators(g: &PermGroup) -> Result<PermGroup> {
    // a small generating set: greedily keep generators that enlarge the group
    let target = g.order();
    let mut gens: Vec<Perm> = Vec::new();
    let mut cur = PermGroup::trivial(g.degree());
    for x in g.nontrivial_generators() {
        if cur.order() == target {
            break;
        }
        if !cur.contains(&x)? {
            gens.push(x);
            cur = PermGroup::new(gens.clone())?;
        }
    }
    Ok(cur)
}

/// M_11 as the stabilizer of the point 0 (infinity) in M_12.
pub fn m11_on_12() -> Result<PermGroup> {
    let s = m12()?.point_stabilizer(0)?;
    pick_generators(&s)
}

/// M_11 on the 11 points it moves, relabelled 0..10.
pub fn m11() -> Result<PermGroup> {
    let s = m11_on_12()?;
    let gens = s
        .nontrivial_generators()
        .iter()
        .map(|g| Perm::from_images((1..12).map(|i| g.image(i) - 1).collect()).unwrap())
        .collect();
    Ok(PermGroup::from_parts(11, gens))
}

/// Setwise stabilizer of {0,1,2} in M_11 (order 48).
pub fn m11_3set_stabilizer() -> Result<PermGroup> {
    let g = m11()?;
    actions::subgroup_by_filter(&g, 10_000, |x| x.image_set(&[0, 1, 2]) == vec![0, 1, 2])
}

/// Points of PG(2,4) on the conic x0 x2 = x1^2 together with its nucleus.
pub fn hyperoval_points() -> Result<Vec<usize>> {
    let k = Field::of_order(4)?;
    let pts = linear::projective_points(3, &k);
    let mut out: Vec<usize> = pts
        .iter()
        .enumerate()
        .filter(|(_, v)| {
            let on_conic = k.mul(v[0], v[2]) == k.mul(v[1], v[1]);
            let nucleus = v.as_slice() == [0, 1, 0];
            on_conic || nucleus
        })
        .map(|(i, _)| i)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// L_3(4) acting on the orbit of a hyperoval (56 points).
pub fn l34_hyperovals() -> Result<PermGroup> {
    let g = actions::linear_projective(3, 4, LinearKind::Sl, false)?;
    let a = actions::set_orbit_action(&g, &hyperoval_points()?, 1000)?;
    Ok(a.group)
}

/// The stabilizer in SL_3(4) of the hyperoval, a group 3.A_6 of order
/// 1080, as matrices.
pub fn three_a6_matrices() -> Result<Vec<Mat>> {
    let k = Field::of_order(4)?;
    let sl = actions::linear_on_nonzero(3, 4, LinearKind::Sl)?;
    let pts = linear::projective_points(3, &k);
    // nonzero vectors (index - 1) spanning hyperoval points
    let mut vecs: Vec<usize> = Vec::new();
    for &p in &hyperoval_points()? {
        for c in 1..4 {
            let v: Vec<usize> = pts[p].iter().map(|&x| k.mul(x, c)).collect();
            vecs.push(linear::vector_index(&v, 4) - 1);
        }
    }
    vecs.sort_unstable();
    let h = actions::subgroup_by_filter(&sl, 100_000, |x| x.image_set(&vecs) == vecs)?;
    if h.order() != BigUint::from(1080u32) {
        return Err(Error::invalid("hyperoval stabilizer has unexpected order"));
    }
    let e: Vec<usize> = (0..3).map(|i| {
        let mut v = vec![0; 3];
        v[i] = 1;
        linear::vector_index(&v, 4) - 1
    }).collect();
    Ok(h.nontrivial_generators()
        .iter()
        .map(|g| {
            let rows = e.iter().map(|&b| linear::index_vector(g.image(b) + 1, 3, 4)).collect();
            Mat::from_rows(rows).unwrap()
        })
        .collect())
}

/// Subgroup of G generated by an element of order 2 and one of order `ob`
/// with product of order `oab`, of the given order; first hit in element
/// order.
fn two_generated(g: &PermGroup, ob: u64, oab: u64, order: u64) -> Result<PermGroup> {
    actions::find_two_generated(g, 2, ob, Some(oab), order)?.ok_or_else(|| Error::invalid("no subgroup of the requested shape"))
}

/// Orbit of the subline PG(1, q0) under PΣL_2(q0^2).
pub fn subfield_action(q0: usize) -> Result<PermGroup> {
    let q = q0 * q0;
    let g = actions::psl2_projective(q, Psl2Variant::Psigmal)?;
    let k = Field::of_order(q)?;
    let sub = k.subfield(k.degree() / 2);
    let mut line: Vec<usize> = vec![0];
    line.extend(sub.iter().map(|&x| 1 + x));
    Ok(actions::set_orbit_action(&g, &line, 100_000)?.group)
}

pub fn build(name: &str) -> Result<Fixture> {
    use FixtureData::Gens;
    let f = |name, family, description, g: PermGroup| -> Result<Fixture> {
        let order = g.order_u64().unwrap();
        Ok(Fixture { name, family, description, order, degree: g.degree(), data: Gens(g) })
    };
    let psl = |q| actions::psl2_projective(q, Psl2Variant::Psl);
    match name {
        "m12" => f("m12", "sporadic", "M12 on 12 points", m12()?),
        "l211-in-m12" => f("l211-in-m12", "sporadic", "L2(11) inside M12, transitive on the 12 points", psl(11)?),
        "m11" => f("m11", "sporadic", "M11 on 11 points", m11()?),
        "m11-3set-stabilizer" => f("m11-3set-stabilizer", "sporadic", "setwise stabilizer of {0,1,2} in M11, index 165", m11_3set_stabilizer()?),
        "l34-hyperovals" => f("l34-hyperovals", "linear", "L3(4) on one orbit of 56 hyperovals of PG(2,4)", l34_hyperovals()?),
        "3a6-in-sl3-4" => {
            let mats = three_a6_matrices()?;
            Ok(Fixture { name: "3a6-in-sl3-4", family: "linear", description: "3.A6 in SL3(4), the stabilizer of a hyperoval", order: 1080, degree: 63, data: FixtureData::Matrices { q: 4, n: 3, mats } })
        }
        "a4-in-psl2-5" => f("a4-in-psl2-5", "psl2", "A4 in L2(5) on the projective line", two_generated(&psl(5)?, 3, 3, 12)?),
        "s4-in-psl2-7" => f("s4-in-psl2-7", "psl2", "S4 in L2(7) on the projective line", two_generated(&psl(7)?, 3, 4, 24)?),
        "a5-in-psl2-11" => f("a5-in-psl2-11", "psl2", "A5 in L2(11) on the projective line", two_generated(&psl(11)?, 3, 5, 60)?),
        "s4-in-pgl2-5" => f("s4-in-pgl2-5", "psl2", "S4 in PGL2(5) on the projective line", two_generated(&actions::psl2_projective(5, Psl2Variant::Pgl)?, 3, 4, 24)?),
        "a5-in-psl2-9" => f("a5-in-psl2-9", "psl2", "A5 in L2(9) on the projective line", two_generated(&psl(9)?, 3, 5, 60)?),
        "a5-in-psl2-19" => f("a5-in-psl2-19", "psl2", "A5 in L2(19) on the projective line", two_generated(&psl(19)?, 3, 5, 60)?),
        "a4-in-psl2-13" => f("a4-in-psl2-13", "psl2", "A4 in L2(13) on the projective line", two_generated(&psl(13)?, 3, 3, 12)?),
        "d12-in-psl2-11" => f("d12-in-psl2-11", "psl2", "D12 in L2(11) on the projective line", two_generated(&psl(11)?, 2, 6, 12)?),
        "s5-in-psigmal2-9" => {
            let g = actions::psl2_projective(9, Psl2Variant::Psigmal)?;
            let h = actions::find_two_generated(&g, 2, 5, Some(4), 120)?.ok_or_else(|| Error::invalid("no S5 found"))?;
            f("s5-in-psigmal2-9", "psl2", "S5 in PSigmaL2(9) on the projective line", h)
        }
        "pgl2-7-on-14" => {
            let g = actions::psl2_projective(7, Psl2Variant::Pgl)?;
            let h = two_generated(&psl(7)?, 3, 4, 24)?;
            let a = actions::coset_action(&g, &h.nontrivial_generators(), 1000)?;
            f("pgl2-7-on-14", "psl2", "PGL2(7) on the cosets of S4 < L2(7), imprimitive of degree 14", a.action.group)
        }
        "psigmal2-9-subfield" => f("psigmal2-9-subfield", "psl2", "PSigmaL2(9) on the 15 sublines over GF(3)", subfield_action(3)?),
        "psigmal2-16-subfield" => f("psigmal2-16-subfield", "psl2", "PSigmaL2(16) on the 68 sublines over GF(4)", subfield_action(4)?),
        "psigmal2-25-subfield" => f("psigmal2-25-subfield", "psl2", "PSigmaL2(25) on the 65 sublines over GF(5)", subfield_action(5)?),
        "pgammal2-8" => f("pgammal2-8", "psl2", "PGammaL2(8) on 9 points", actions::psl2_projective(8, Psl2Variant::Pgammal)?),
        "agl3-2" => {
            let k = Field::of_order(2)?;
            f("agl3-2", "affine", "AGL3(2) on 8 points", actions::affine_group(2, 3, &linear::gl_generators(3, &k))?)
        }
        _ => Err(Error::invalid(format!("unknown fixture '{name}'; available: {}", NAMES.join(", ")))),
    }
}

/// Manifest lines "name<TAB>file<TAB>degree<TAB>order<TAB>description".
pub fn manifest(fixtures: &[Fixture]) -> String {
    let mut s = String::from("# name\tfile\tdegree\torder\tdescription\n");
    for f in fixtures {
        s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", f.name, f.file_name(), f.degree, f.order, f.description));
    }
    s
}

/// Writes every fixture and the manifest below `dir`.
pub fn write_all(dir: &std::path::Path) -> Result<Vec<Fixture>> {
    let mut all = Vec::new();
    for name in NAMES {
        let f = build(name)?;
        let path = dir.join(f.file_name());
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(&path, f.contents())?;
        all.push(f);
    }
    std::fs::write(dir.join("manifest.tsv"), manifest(&all))?;
    Ok(all)
}

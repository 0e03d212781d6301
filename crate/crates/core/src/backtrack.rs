//! Depth-first search over a stabilizer chain by base images.

use crate::chain::Chain;
use crate::perm::Perm;

/// Transporter when the chain's base begins with the source tuple: each
/// level's coset is forced, so the search never branches.
pub fn transporter_in_chain(chain: &Chain, targets: &[usize]) -> Option<Perm> {
    let mut sinv = Perm::identity(chain.degree());
    for (l, &t) in chain.levels().iter().zip(targets) {
        let beta = sinv.image(t);
        let tinv = l.tinv_of(beta)?;
        sinv = sinv.mul(tinv);
    }
    debug_assert!(targets.len() <= chain.levels().len());
    Some(sinv.inverse())
}

/// Search for an element accepted by `accept`, visiting base images in
/// orbit order. `keep(level, images)` may reject a partial assignment of
/// base images; `images[i]` is the image of the i-th base point.
pub fn search<K, A>(chain: &Chain, mut keep: K, mut accept: A) -> Option<Perm>
where
    K: FnMut(usize, &[usize]) -> bool,
    A: FnMut(&Perm) -> bool,
{
    let mut images = Vec::with_capacity(chain.levels().len());
    let id = Perm::identity(chain.degree());
    rec(chain, 0, &id, &mut images, &mut keep, &mut accept)
}

fn rec<K, A>(chain: &Chain, level: usize, s: &Perm, images: &mut Vec<usize>, keep: &mut K, accept: &mut A) -> Option<Perm>
where
    K: FnMut(usize, &[usize]) -> bool,
    A: FnMut(&Perm) -> bool,
{
    if level == chain.levels().len() {
        return accept(s).then(|| s.clone());
    }
    let l = &chain.levels()[level];
    for (j, &beta) in l.orbit().iter().enumerate() {
        let gamma = s.image(beta as usize);
        images.push(gamma);
        if keep(level, images) {
            let next = if j == 0 { s.clone() } else { l.tinv_at(j).inverse().mul(s) };
            if let Some(g) = rec(chain, level + 1, &next, images, keep, accept) {
                images.pop();
                return Some(g);
            }
        }
        images.pop();
    }
    None
}

/// Nontrivial element preserving the colouring `colour` (a point map to
/// colour classes), if any.
pub fn nontrivial_colour_preserver(chain: &Chain, colour: &[u32]) -> Option<Perm> {
    let base = chain.base();
    search(
        chain,
        |lvl, imgs| colour[imgs[lvl]] == colour[base[lvl]],
        |g| !g.is_identity() && (0..colour.len()).all(|x| colour[g.image(x)] == colour[x]),
    )
}

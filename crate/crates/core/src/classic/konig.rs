use super::ClassicError;
use crate::coloring::{kempe_chain, EdgeColoring};
use crate::graph::Multigraph;

/// Proper Δ-edge-coloring of a bipartite multigraph.
///
/// Each edge uv takes a color α missing at u; when α is present at v, the
/// (α, β)-path from v (β missing at v) cannot reach u in a bipartite graph,
/// so exchanging it frees α at v.
pub fn konig_color(g: &Multigraph) -> Result<EdgeColoring, ClassicError> {
    if g.bipartition().is_none() {
        return Err(ClassicError::NotBipartite);
    }
    let delta = g.max_degree();
    let mut c = EdgeColoring::new(g, delta);
    for (e, u, v) in g.edges() {
        let alpha = c.first_missing(u).expect("u has an uncolored edge");
        if !c.is_missing(v, alpha) {
            let beta = c.first_missing(v).expect("v has an uncolored edge");
            let chain = kempe_chain(g, &c, v, alpha, beta);
            debug_assert!(!chain.vertices.contains(&u));
            crate::coloring::kempe_swap(g, &mut c, &chain).expect("fresh chain");
        }
        c.set(g, e, alpha).expect("alpha missing at both ends");
    }
    Ok(c)
}

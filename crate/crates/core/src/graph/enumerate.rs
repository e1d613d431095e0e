use super::{ChargedGraph, CycleSubgraph};
use crate::error::{Error, Result};

/// Calls `visit(vertices, edges)` for every simple path from `a` to `b` with
/// at most `max_edges` edges, skipping edge `skip`. `visit` returns `false`
/// to stop early. Fails once more than `cap` paths have been produced.
pub(crate) fn simple_paths(
    g: &ChargedGraph,
    a: usize,
    b: usize,
    skip: Option<usize>,
    max_edges: usize,
    cap: usize,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> Result<bool>,
) -> Result<()> {
    struct State<'a> {
        g: &'a ChargedGraph,
        b: usize,
        skip: Option<usize>,
        max_edges: usize,
        cap: usize,
        count: usize,
        on_path: Vec<bool>,
        verts: Vec<usize>,
        edges: Vec<usize>,
    }
    fn go(st: &mut State, visit: &mut dyn FnMut(&[usize], &[usize]) -> Result<bool>) -> Result<bool> {
        let x = *st.verts.last().expect("nonempty path");
        if x == st.b {
            st.count += 1;
            if st.count > st.cap {
                return Err(Error::CapExceeded(format!("more than {} simple paths", st.cap)));
            }
            return visit(&st.verts, &st.edges);
        }
        if st.edges.len() == st.max_edges {
            return Ok(true);
        }
        for &(y, e) in st.g.neighbors(x) {
            if st.on_path[y] || Some(e) == st.skip {
                continue;
            }
            st.on_path[y] = true;
            st.verts.push(y);
            st.edges.push(e);
            let more = go(st, visit)?;
            st.verts.pop();
            st.edges.pop();
            st.on_path[y] = false;
            if !more {
                return Ok(false);
            }
        }
        Ok(true)
    }
    let mut on_path = vec![false; g.n()];
    on_path[a] = true;
    let mut st = State {
        g,
        b,
        skip,
        max_edges,
        cap,
        count: 0,
        on_path,
        verts: vec![a],
        edges: Vec::new(),
    };
    go(&mut st, visit).map(|_| ())
}

/// All simple cycles with at most `max_len` edges, sorted by length then edge
/// list. Fails with `CapExceeded` past `cap` cycles.
pub fn simple_cycles(g: &ChargedGraph, max_len: usize, cap: usize) -> Result<Vec<CycleSubgraph>> {
    let mut out = Vec::new();
    // Each cycle is found once: from its lowest edge, as a path avoiding it.
    for e in 0..g.m() {
        let (a, b) = g.edge(e);
        simple_paths(g, a, b, Some(e), max_len.saturating_sub(1), usize::MAX, &mut |_, es| {
            if es.len() < 2 || es.iter().any(|&x| x < e) {
                return Ok(true);
            }
            let mut c = es.to_vec();
            c.push(e);
            out.push(CycleSubgraph::from_edges(g, &c)?);
            if out.len() > cap {
                return Err(Error::CapExceeded(format!("more than {cap} simple cycles")));
            }
            Ok(true)
        })?;
    }
    out.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    Ok(out)
}

/// All simple cycles through edge `e` with at most `max_len` edges, sorted.
pub fn simple_cycles_through(g: &ChargedGraph, e: usize, max_len: usize, cap: usize) -> Result<Vec<CycleSubgraph>> {
    if e >= g.m() {
        return Err(Error::IndexOutOfRange { index: e, n: g.m() });
    }
    let (a, b) = g.edge(e);
    let mut out = Vec::new();
    simple_paths(g, a, b, Some(e), max_len.saturating_sub(1), cap, &mut |_, es| {
        if es.len() >= 2 {
            let mut c = es.to_vec();
            c.push(e);
            out.push(CycleSubgraph::from_edges(g, &c)?);
        }
        Ok(true)
    })?;
    out.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> ChargedGraph {
        let mut p = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                p.push((i, j));
            }
        }
        ChargedGraph::uncharged(n, &p).unwrap()
    }

    #[test]
    fn k4_cycles() {
        let cs = simple_cycles(&complete(4), 10, 100).unwrap();
        assert_eq!(cs.len(), 7);
        assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), 4);
    }

    #[test]
    fn k5_cycle_count() {
        // 10 triangles, 15 four-cycles, 12 five-cycles
        assert_eq!(simple_cycles(&complete(5), 5, 1000).unwrap().len(), 37);
        assert!(simple_cycles(&complete(5), 5, 10).is_err());
        assert_eq!(simple_cycles_through(&complete(5), 0, 3, 100).unwrap().len(), 3);
    }
}

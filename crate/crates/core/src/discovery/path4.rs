use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, EdgeId, Matching};
use crate::oracle::{argmax_queried, WeightOracle};
use crate::reference::validate_path;

/// Three-query 2-approximation on a four-edge path `e1..e4`: if
/// w(e2) > w(e3) keep `e4` and the heavier of `e1, e2`, otherwise keep `e1`
/// and the heavier of `e3, e4`.
pub fn path4_saver_ids(oracle: &mut WeightOracle<'_>, path: &[EdgeId]) -> Result<Vec<EdgeId>> {
    let topo = oracle.topology();
    if path.len() != 4 {
        return Err(Error::MalformedPath(format!("expected 4 edges, got {}", path.len())));
    }
    if let Some(&bad) = path.iter().find(|&&id| id >= topo.m()) {
        return Err(Error::UnknownEdgeId(bad));
    }
    let edges: Vec<_> = path.iter().map(|&id| topo.edge(id)).collect();
    validate_path(&edges)?;
    let w2 = oracle.query(path[1])?;
    let w3 = oracle.query(path[2])?;
    if w2 > w3 {
        Ok(vec![argmax_queried(oracle, &path[0..2])?, path[3]])
    } else {
        Ok(vec![path[0], argmax_queried(oracle, &path[2..4])?])
    }
}

/// [`path4_saver_ids`] on an instance, returning the priced matching and the
/// number of queries spent.
pub fn path4_saver(inst: &BipartiteInstance, path: &[EdgeId]) -> Result<(Matching, usize)> {
    let topo = inst.topology()?;
    let mut oracle = WeightOracle::new(&topo, inst);
    let ids = path4_saver_ids(&mut oracle, path)?;
    Ok((Matching::from_ids(inst, &ids), oracle.ledger().query_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generators::p4_instance;
    use crate::instance::Edge;

    #[test]
    fn spec_examples() {
        let (m, q) = path4_saver(&p4_instance([1.0, 5.0, 2.0, 1.0]).unwrap(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(m.total_weight, 6.0);
        assert_eq!(m.edges, vec![Edge::new(1, 0), Edge::new(2, 1)]);
        assert_eq!(q, 3);
        let (m, q) =
            path4_saver(&p4_instance([10.0, 1.0, 2.0, 10.0]).unwrap(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(m.total_weight, 20.0);
        assert_eq!(q, 3);
        let (m, _) = path4_saver(&p4_instance([1.0; 4]).unwrap(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(m.total_weight, 2.0);
    }

    #[test]
    fn query_order_on_first_branch() {
        let inst = p4_instance([1.0, 5.0, 2.0, 1.0]).unwrap();
        let topo = inst.topology().unwrap();
        let mut oracle = WeightOracle::new(&topo, &inst);
        path4_saver_ids(&mut oracle, &[0, 1, 2, 3]).unwrap();
        let order: Vec<usize> = oracle.ledger().trace().iter().map(|t| t.0).collect();
        assert_eq!(order, vec![1, 2, 0]);
    }

    #[test]
    fn rejects_non_paths() {
        let inst = p4_instance([1.0; 4]).unwrap();
        assert!(matches!(path4_saver(&inst, &[0, 1, 2]), Err(Error::MalformedPath(_))));
        assert!(matches!(path4_saver(&inst, &[0, 2, 1, 3]), Err(Error::MalformedPath(_))));
    }
}

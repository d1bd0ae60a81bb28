use std::collections::BTreeSet;

use opmonoid::data;
use opmonoid::DiagramCatalog;

fn names(d: &DiagramCatalog, set: impl IntoIterator<Item = usize>) -> BTreeSet<String> {
    set.into_iter().map(|i| d.nodes[i].clone()).collect()
}

fn upper_component(d: &DiagramCatalog) -> Vec<usize> {
    let id = d.index("id").unwrap();
    d.components().into_iter().find(|c| c.contains(&id)).unwrap()
}

#[test]
fn interior_pseudocomplement_catalog_shape() {
    let d = data::catalog(data::INTERIOR_PSEUDOCOMPLEMENT).unwrap();
    assert_eq!(d.len(), 31);
    assert_eq!(d.solid_edges().len(), 46);
    assert!(d.redundant_edges().is_empty());
    let comps = d.components();
    let mut sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![14, 17]);
}

#[test]
fn upper_join_irreducibles() {
    let d = data::catalog(data::INTERIOR_PSEUDOCOMPLEMENT).unwrap();
    let upper: BTreeSet<usize> = upper_component(&d).into_iter().collect();
    let exact: BTreeSet<usize> = d.join_irreducibles().intersection(&upper).copied().collect();
    let want: BTreeSet<String> =
        ["ib", "bi", "id", "i--", "ibi", "--i", "i--i"].iter().map(|s| s.to_string()).collect();
    assert_eq!(names(&d, exact.clone()), want);
    let by_edges: BTreeSet<usize> = d.join_irreducibles_by_edges().intersection(&upper).copied().collect();
    assert_eq!(exact, by_edges);
    let meets: BTreeSet<usize> = d.meet_irreducibles().intersection(&upper).copied().collect();
    let want_m: BTreeSet<String> =
        ["bib", "--", "--ib", "bi--", "ib", "bi", "id"].iter().map(|s| s.to_string()).collect();
    assert_eq!(names(&d, meets), want_m);
}

#[test]
fn interior_pseudocomplement_critical_pairs() {
    let d = data::catalog(data::INTERIOR_PSEUDOCOMPLEMENT).unwrap();
    let report = d.verify_annotations();
    assert!(report.is_empty(), "{report:?}");
    assert_eq!(d.critical_pairs().len(), 13);
    let dashed = d.edges.iter().filter(|e| e.2 == opmonoid::EdgeKind::Dashed).count();
    assert_eq!(dashed, 6);
    let idd = (d.index("i--i").unwrap(), d.index("id").unwrap());
    assert!(d.critical_pairs().contains(&idd));
}

#[test]
fn quotient_critical_pairs() {
    let d = data::catalog(data::INTERIOR_PSEUDOCOMPLEMENT_QUOTIENT).unwrap();
    assert_eq!(d.len(), 21);
    assert!(d.redundant_edges().is_empty());
    assert_eq!(d.critical_pairs().len(), 11);
    let report = d.verify_annotations();
    assert!(report.is_empty(), "{report:?}");
}

#[test]
fn corrupted_catalog_is_detected() {
    let mut d = data::catalog(data::INTERIOR_PSEUDOCOMPLEMENT).unwrap();
    let pos = d.edges.iter().position(|e| e.2 == opmonoid::EdgeKind::Solid).unwrap();
    d.edges.remove(pos);
    assert!(!d.verify_annotations().is_empty());
}

#[test]
fn critical_pairs_are_incomparable_and_trichotomy_holds() {
    for file in [data::INTERIOR_PSEUDOCOMPLEMENT, data::INTERIOR_PSEUDOCOMPLEMENT_QUOTIENT, data::SUBLOCALE_OPERATORS] {
        let d = data::catalog(file).unwrap();
        let order = d.order().unwrap();
        let crit: BTreeSet<_> = d.critical_pairs().into_iter().collect();
        for &(x, y) in &crit {
            assert!(!order[x][y]);
        }
        let joins = d.join_irreducibles();
        let meets = d.meet_irreducibles();
        for comp in d.components() {
            for &x in comp.iter().filter(|x| joins.contains(x)) {
                for &y in comp.iter().filter(|y| meets.contains(y)) {
                    if order[x][y] {
                        continue;
                    }
                    let x_min = !joins.iter().any(|&z| comp.contains(&z) && z != x && order[z][x] && !order[z][y]);
                    let y_max = !meets.iter().any(|&z| comp.contains(&z) && z != y && order[y][z] && !order[x][z]);
                    assert_eq!(crit.contains(&(x, y)), x_min && y_max);
                }
            }
        }
    }
}

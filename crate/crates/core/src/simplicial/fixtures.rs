//! Small reference networks on the boundary of tetrahedra.

use super::complex::OrientedComplex;
use super::hnetwork::{build_hnetwork, HNetwork};
use crate::numeric::int;

/// Boundary of the tetrahedron on `{1, 2, 3, 4}` with outward orientation,
/// facets `[234] [124] [143] [132]`, edges `[12] [14] [24] [13] [34] [23]`,
/// source `[132]` and unit capacities.
pub fn tetrahedron() -> HNetwork {
    let facets = vec![vec![2, 3, 4], vec![1, 2, 4], vec![1, 4, 3], vec![1, 3, 2]];
    let edges = vec![vec![1, 2], vec![1, 4], vec![2, 4], vec![1, 3], vec![3, 4], vec![2, 3]];
    let complex = OrientedComplex::with_faces(2, facets, edges).expect("fixture is valid");
    build_hnetwork(complex, 3, vec![int(1); 4]).expect("fixture is valid")
}

/// Two tetrahedra on `{1, ..., 5}` glued along the source `[132]`, with
/// unit capacities. The source is oriented consistently with both
/// boundaries so that each tetrahedron is a cycle through it; edges use
/// the sorted enumeration and the source is the last facet.
pub fn double_tetrahedron() -> HNetwork {
    let facets = vec![
        vec![2, 3, 4],
        vec![1, 2, 4],
        vec![1, 4, 3],
        vec![2, 3, 5],
        vec![1, 2, 5],
        vec![1, 5, 3],
        vec![1, 3, 2],
    ];
    let complex = OrientedComplex::new(2, facets).expect("fixture is valid");
    build_hnetwork(complex, 6, vec![int(1); 7]).expect("fixture is valid")
}

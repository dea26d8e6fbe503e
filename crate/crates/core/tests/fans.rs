mod common;

use symtrop::fans::{assemble_fan, cone_rays, Kind};
use symtrop::symtrees::{build_complex, Family};
use symtrop::ExecMode;

#[test]
fn table_a_rows() {
    let c = build_complex(Family::AS, 3).unwrap();
    let f = assemble_fan(&c, Kind::C).unwrap();
    let got: Vec<Vec<i64>> = f.rays.clone();
    let want: Vec<Vec<i64>> = common::TABLE_A.iter().map(|r| r.to_vec()).collect();
    assert_eq!(got, want);
    assert_eq!(f.cones_of_dim(2).len(), 21);
    f.verify_intersections(ExecMode::Sequential).unwrap();
    for v in c.vertices() {
        let cone = cone_rays(v, Kind::C).unwrap();
        assert_eq!(cone.dim(), 1);
    }
}

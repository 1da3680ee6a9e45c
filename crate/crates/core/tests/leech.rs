use coxnorm::category::Ambient;
use coxnorm::diagram::SphericalType;
use coxnorm::leech::*;
use coxnorm::Error;
use std::path::PathBuf;
use std::sync::OnceLock;

fn leech() -> &'static Leech {
    static L: OnceLock<Leech> = OnceLock::new();
    L.get_or_init(|| {
        let dir = std::env::var_os("COXNORM_CACHE")
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("coxnorm-test-cache"));
        std::fs::create_dir_all(&dir).unwrap();
        Leech::new(Some(dir)).unwrap()
    })
}

fn ty(s: &str) -> SphericalType {
    s.parse().unwrap()
}

#[test]
fn code_and_shells() {
    let l = leech();
    let w = l.code().weight_distribution();
    assert_eq!((w[0], w[8], w[12], w[16], w[24]), (1, 759, 2576, 759, 1));
    assert_eq!(l.code().octads().len(), 759);
    assert_eq!(l.shell4().len(), 196_560);
    assert_eq!(l.shell6().unwrap().len(), 16_773_120);
    assert!(l.shell4().iter().all(|v| l.is_lattice_point(&LeechPoint::from_shell(v))));
}

#[test]
fn found_configurations_have_the_requested_type() {
    let l = leech();
    for t in ["A2", "E6", "D4"] {
        let c = find_configuration(l, &ty(t), Selector::FirstFound).unwrap();
        assert_eq!(c.spherical_type(), Some(ty(t)));
        assert_eq!(c.points[0], LeechPoint::ZERO);
    }
    assert!(matches!(
        find_configuration(l, &ty("B3"), Selector::FirstFound),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn stabilizer_is_translation_invariant() {
    let l = leech();
    let c = find_configuration(l, &ty("E6"), Selector::FirstFound).unwrap();
    let t = LeechPoint::from_shell(&l.shell4()[12345]);
    let a = l.pointwise_stabilizer(&c.points).unwrap().order;
    let b = l.pointwise_stabilizer(&c.translate(&t).points).unwrap().order;
    assert_eq!(a, b);
}

#[test]
fn extension_count_is_conjugation_invariant() {
    let l = leech();
    let c = find_configuration(l, &ty("A6"), Selector::FirstFound).unwrap();
    let ext: Vec<_> = extension_nodes(l, &c)
        .unwrap()
        .into_iter()
        .filter(|(_, t)| *t == ty("A7"))
        .collect();
    let mut src = c.points.clone();
    src.push(ext[0].0);
    // a symmetry that moves the configuration: translate and then apply a
    // stabilizer generator of a smaller piece
    let t = LeechPoint::from_shell(&l.shell4()[777]);
    let g0 = l.pointwise_stabilizer(&c.points[..2]).unwrap().generators[0].clone();
    let g = l.compose(&g0, &l.realize(&[LeechPoint::ZERO], &[t]).unwrap().unwrap());
    let moved: Vec<LeechPoint> = src.iter().map(|p| l.apply(&g, p)).collect();
    let direct = l.extension_count(&src, &src).unwrap();
    assert!(direct > 0);
    assert_eq!(l.extension_count(&moved, &moved).unwrap(), direct);
    assert_eq!(l.extension_count(&src, &moved).unwrap(), direct);
    let gi = l.inverse(&g);
    assert!(src.iter().all(|p| l.apply(&gi, &l.apply(&g, p)) == *p));
}

/// Every extension of each listed type lies in a single orbit.
fn single_orbits(base: &str, types: &[&str]) {
    let l = leech();
    let c = find_configuration(l, &ty(base), Selector::FirstFound).unwrap();
    let ext = extension_nodes(l, &c).unwrap();
    for t in types {
        let mut it = ext.iter().filter(|(_, s)| *s == ty(t)).map(|(p, _)| {
            let mut pts = c.points.clone();
            pts.push(*p);
            PointConfiguration::new(pts)
        });
        let first = it.next().unwrap_or_else(|| panic!("no {t} over {base}"));
        for other in it {
            assert!(equivalent_configurations(l, &first, &other).unwrap(), "{t} over {base}");
        }
    }
}

#[test]
fn e7_over_e6_is_one_orbit() {
    single_orbits("E6", &["E7"]);
}

#[test]
fn extensions_of_a6_are_single_orbits() {
    single_orbits("A6", &["A7", "D7", "E7"]);
}

#[test]
fn d8_over_a7_is_one_orbit() {
    single_orbits("A7", &["D8"]);
}

#[test]
fn kondo_configuration_stabilizer() {
    let l = leech();
    let k = kondo_configuration(l).unwrap();
    assert_eq!(k.spherical_type(), Some(ty("A3A1^6")));
    assert_eq!(setwise_stabilizer_order(l, &k).unwrap(), 23040);
    let first = find_configuration(l, &ty("A3A1^6"), Selector::FirstFound).unwrap();
    let s = setwise_stabilizer_order(l, &first).unwrap();
    assert_eq!(equivalent_configurations(l, &k, &first).unwrap(), s == 23040);
}

#[test]
fn realized_symmetries_map_points() {
    let l = leech();
    let c = find_configuration(l, &ty("D4"), Selector::FirstFound).unwrap();
    for (h, g) in realized_automorphisms(l, &c).unwrap() {
        for (i, p) in c.points.iter().enumerate() {
            assert_eq!(l.apply(&g, p), c.points[h.apply(i)]);
        }
    }
    let (order, gens) = Ambient::pointwise_stabilizer(l, &c.points).unwrap();
    assert!(order > 1 && !gens.is_empty());
    for g in &gens {
        assert!(c.points.iter().all(|p| l.apply(g, p) == *p));
    }
}

use berge_catalog::*;
use num_bigint::BigInt;
use surgery_engine::lens_equivalent;

fn small_grid() -> Grid {
    let mut g = Grid::default();
    for spec in ["p=-2..2", "q=-2..2", "r=-3..3", "s=-3..3", "n=-2..2", "K=-2..2"] {
        g.set_spec(spec).unwrap();
    }
    g
}

#[test]
fn derived_slopes_satisfy_their_bezout_identity() {
    // with r = 2 eps + (2p + eps) K and s = eps + p K the pair (2p + eps, p)
    // witnesses |ps - qr| = 1 without expanding anything
    for f in [Family::III, Family::IV, Family::V] {
        for fp in grid_tuples(f, &Grid::default()).unwrap() {
            let (p, eps) = (fp.get("p").unwrap(), fp.get("eps").unwrap());
            let (r, s) = fp.derived_rs().unwrap();
            assert_eq!((2 * p + eps) * s - p * r, 1, "{fp}");
        }
    }
}

#[test]
fn family_one_lens_order_is_p_times_r() {
    for fp in grid_tuples(Family::I, &Grid::default()).unwrap() {
        let pr = fp.get("p").unwrap() * fp.get("r").unwrap();
        let rep = verify(&fp, 200).unwrap();
        if pr == 0 {
            assert!(!rep.lens_homology.is_finite_cyclic(), "{fp}");
        } else {
            assert_eq!(rep.lens_order(), Some(BigInt::from(pr.abs())), "{fp}");
        }
    }
}

#[test]
fn every_family_fills_to_the_sphere() {
    let g = small_grid();
    for f in Family::ALL {
        for fp in grid_tuples(f, &g).unwrap() {
            let rep = verify(&fp, 0).unwrap();
            assert!(rep.s3_ok(), "{fp}: {:?}", rep.notes);
            assert!(rep.unknot_ok(), "{fp}");
            assert!(rep.tangle_order_ok(), "{fp}");
        }
    }
}

#[test]
fn resolved_routes_agree() {
    let g = small_grid();
    let mut both = 0;
    for f in Family::ALL {
        for rep in sweep(f, &g, 5_000, None).unwrap().reports {
            if rep.both_resolved() {
                both += 1;
                let (a, b) = (rep.surgery_lens().unwrap(), rep.tangle_lens.as_ref().unwrap());
                assert!(lens_equivalent(a, b, false), "{}: {a} vs {b}", rep.params);
                assert!(rep.consistent || !rep.lens_homology.is_finite_cyclic(), "{}: {:?}", rep.params, rep.notes);
            }
        }
    }
    assert!(both > 50, "{both}");
}

#[test]
fn mirrored_description_keeps_the_order() {
    let fp = FamilyParams::from_pairs(Family::VI, &[("p", 2), ("q", 1), ("r", 1), ("s", 1), ("n", 2)]).unwrap();
    let desc = surgery_description(&fp).unwrap();
    let (a, b) = (verify_description(&desc, 2_000), verify_description(&desc.mirror(), 2_000));
    assert!(b.s3_ok());
    assert_eq!(a.lens_order(), b.lens_order());
    if let (Some(x), Some(y)) = (a.surgery_lens(), b.surgery_lens()) {
        assert!(lens_equivalent(&x.mirror(), y, true), "{x} vs {y}");
    }
}

#[test]
fn sweep_output_does_not_depend_on_workers() {
    let g = small_grid();
    let lines = |jobs| -> Vec<String> {
        sweep(Family::II, &g, 500, Some(jobs)).unwrap().reports.iter().map(|r| r.to_json_line()).collect()
    };
    assert_eq!(lines(1), lines(4));
}

//! Each runnable example, executed and checked for its key lines.

mod circle_and_orbits {
    #![allow(dead_code)]
    include!("../examples/circle_and_orbits.rs");

    #[test]
    fn runs() {
        let out = run_example().unwrap();
        assert!(out.contains("1/7: preperiod 0, period 3, orbit 1/7 -> 2/7 -> 4/7"));
        assert!(out.contains("11/56: preperiod 3, period 3"));
        assert!(out.contains("rabbit and {5/7, 6/7} unlinked: true"));
        assert!(out.contains("{1/7, 2/7} and {3/7, 6/7} unlinked: true"));
        assert!(out.contains("periodic angles of period at most 3: 9"));
    }
}

mod sector_maps {
    #![allow(dead_code)]
    include!("../examples/sector_maps.rs");

    #[test]
    fn runs() {
        let out = run_example().unwrap();
        assert!(out.contains("critical points 1"));
        assert_eq!(out.matches("critical points 0").count(), 2);
    }
}

mod critical_partition {
    #![allow(dead_code)]
    include!("../examples/critical_partition.rs");

    #[test]
    fn runs() {
        let out = run_example().unwrap();
        assert!(out.contains("piece of 1/9: {"));
        assert!(out.contains("4 chords"));
    }
}

mod rabbit_lamination {
    #![allow(dead_code)]
    include!("../examples/rabbit_lamination.rs");

    #[test]
    fn runs() {
        let out = run_example().unwrap();
        assert!(out.contains("class {1/7, 2/7, 4/7}"));
        assert!(out.contains("class {1/14, 9/14, 11/14}"));
    }
}

mod core_entropy {
    #![allow(dead_code)]
    include!("../examples/core_entropy.rs");

    #[test]
    fn runs() {
        let out = run_example().unwrap();
        assert!(out.contains("3/7: 3 pairs, rho 1.618033989"));
        assert!(out.contains("1/2: 1 pairs, rho 2.000000000"));
    }
}

mod characteristic_arcs {
    #![allow(dead_code)]
    include!("../examples/characteristic_arcs.rs");

    #[test]
    fn runs() {
        let out = run_example().unwrap();
        assert!(out.contains("11/56: Misiurewicz [9/56, 15/56]"));
        assert!(out.contains("after 1 steps"));
        assert!(out.contains("pass true\n"));
    }
}

mod wandering_audit {
    #![allow(dead_code)]
    include!("../examples/wandering_audit.rs");

    #[test]
    fn runs() {
        let out = run_example().unwrap();
        assert!(out.contains("first narrow time 2, smallest sector 3/101"));
        assert!(out.contains("consistent true"));
    }
}

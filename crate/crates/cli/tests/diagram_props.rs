use proptest::prelude::*;
use tanaka_forge::{diagram_spec, parse_config};

fn config(e: [&str; 2], j: [&str; 2], a: u32, b: u32) -> String {
    format!(
        r#"{{"schema": 1, "algebra": {{"type": "A2", "E": ["{}", "{}"], "J": ["{}", "{}"]}}, "modules": [{{"highest_weight": [{a}, {b}]}}]}}"#,
        e[0], e[1], j[0], j[1]
    )
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Weights of equal degree sit within two pixels of their degree line.
    #[test]
    fn equal_degree_weights_are_collinear(upper in any::<bool>(), a in 0u32..4, b in 0u32..4) {
        let e = if upper { ["-1", "-1"] } else { ["1", "1"] };
        let cfg = parse_config(&config(e, ["1", "-1"], a, b)).unwrap();
        let spec = diagram_spec(&cfg).unwrap();
        prop_assert!(spec.planar());
        for line in &spec.lines {
            let (p, q) = line.ends.unwrap();
            let dir = (q.0 - p.0, q.1 - p.1);
            let len2 = dir.0 * dir.0 + dir.1 * dir.1;
            prop_assert!(len2 > 0);
            for w in &line.weights {
                let r = spec.position(w).unwrap();
                let c = cross(dir, (r.0 - p.0, r.1 - p.1));
                prop_assert!(c * c <= 4 * len2, "weight {:?} off line by {}/{}", w, c, len2);
            }
        }
    }

    /// Every weight lands on exactly one degree line, with multiplicities kept.
    #[test]
    fn lines_partition_the_weights(upper in any::<bool>(), a in 0u32..4, b in 0u32..4) {
        let e = if upper { ["-1", "-1"] } else { ["1", "1"] };
        let cfg = parse_config(&config(e, ["1", "-1"], a, b)).unwrap();
        let spec = diagram_spec(&cfg).unwrap();
        let on_lines: usize = spec.lines.iter().map(|l| l.weights.len()).sum();
        prop_assert_eq!(on_lines, spec.dots.len());
        let dim: u64 = spec.dots.iter().map(|d| d.multiplicity).sum();
        let (a, b) = (a as u64, b as u64);
        prop_assert_eq!(dim, (a + 1) * (b + 1) * (a + b + 2) / 2);
        for d in &spec.dots {
            prop_assert!(spec.lines.iter().any(|l| l.degree == d.degree && l.weights.contains(&d.weight)));
        }
    }
}

use proptest::prelude::*;
use ultraspherical::harness::SweepConfig;
use ultraspherical::{eval_x, eval_y, EvalPoint, HalfInt, IndexPair};

fn pair() -> impl Strategy<Value = IndexPair> {
    (0i64..120, 0usize..80).prop_map(|(two_m, j)| {
        let m = HalfInt::from_twice(two_m);
        IndexPair::new(HalfInt::from_twice(two_m + 1 + 2 * j as i64), m).unwrap()
    })
}

proptest! {
    #[test]
    fn halfint_display_parses_back(twice in -1000i64..1000) {
        let h = HalfInt::from_twice(twice);
        prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
    }

    #[test]
    fn y_has_definite_parity(p in pair(), x in -0.999f64..0.999) {
        let y = eval_y(p, &EvalPoint::new(x).unwrap()).unwrap();
        let y_neg = eval_y(p, &EvalPoint::new(-x).unwrap()).unwrap();
        let sign = if p.degree() % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((y_neg - sign * y).abs() <= 1e-12 * (1.0 + y.abs()), "{} {} {}", p, y, y_neg);
    }

    #[test]
    fn x_tilde_is_y_at_d_2(p in pair(), x in -0.99f64..0.99) {
        prop_assume!(p.m.is_integer());
        let pt = EvalPoint::new(x).unwrap();
        prop_assert_eq!(eval_x(2, p, &pt).unwrap(), eval_y(p, &pt).unwrap());
    }

    #[test]
    fn config_round_trips_through_key_value_text(
        ds in proptest::collection::vec(2i64..9, 1..4),
        twice in 0i64..200,
        half_grid in 1usize..500,
        eps in 0.05f64..0.95,
    ) {
        let list: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
        let text = format!(
            "d_list={}\nell_max={}\nx_grid_size={}\nepsilon={eps}\n",
            list.join(","),
            HalfInt::from_twice(twice),
            2 * half_grid + 1
        );
        let cfg = SweepConfig::from_kv_str(&text).unwrap();
        prop_assert_eq!(&cfg.d_list, &ds);
        prop_assert_eq!(cfg.ell_max.twice(), twice);
        prop_assert_eq!(cfg.x_grid_size, 2 * half_grid + 1);
        prop_assert_eq!(cfg.epsilon, eps);
    }
}

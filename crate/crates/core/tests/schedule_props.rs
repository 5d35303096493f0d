use proptest::prelude::*;
use wildfire_planner::fire::QuenchCapability;
use wildfire_planner::schedule::{
    baseline_score, build_schedule, dpmc_score, marginal_insertion, AgentSnapshot, CostFunction,
    FireBook, FireSnapshot, Score, TaskTiming,
};
use wildfire_planner::Vec2;

fn instance() -> impl Strategy<Value = (AgentSnapshot, FireBook)> {
    let fire = (0.0f64..1000.0, 0.0f64..1000.0, 3.0f64..40.0);
    (
        0.0f64..1000.0,
        0.0f64..1000.0,
        prop::sample::select(vec![(16.0, 16.0), (20.0, 20.0), (26.0, 26.0)]),
        0.0f64..30.0,
        prop::collection::vec(fire, 1..7),
    )
        .prop_map(|(x, y, (v, q), ready, fires)| {
            let mut a = AgentSnapshot::new(1, Vec2::new(x, y), QuenchCapability::new(q, v).unwrap());
            a.ready_offset = ready;
            let book = fires
                .into_iter()
                .enumerate()
                .map(|(k, (fx, fy, r))| FireSnapshot {
                    id: k + 1,
                    center: Vec2::new(fx, fy),
                    area: std::f64::consts::PI * r * r,
                    spread_rate: 0.075,
                })
                .collect();
            (a, book)
        })
}

proptest! {
    #[test]
    fn schedules_are_deterministic((a, book) in instance()) {
        let path: Vec<usize> = book.ids().collect();
        let s1 = build_schedule(&a, &path, &book, 0.0).unwrap();
        let s2 = build_schedule(&a, &path, &book, 0.0).unwrap();
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn insertion_keeps_the_prefix((a, book) in instance(), pos_seed in 0usize..100) {
        let ids: Vec<usize> = book.ids().collect();
        let (path, new) = ids.split_at(ids.len() - 1);
        let pos = pos_seed % (path.len() + 1);
        let mut grown = path.to_vec();
        grown.insert(pos, new[0]);
        let before = build_schedule(&a, path, &book, 0.0).unwrap();
        let after = build_schedule(&a, &grown, &book, 0.0).unwrap();
        prop_assert_eq!(&before.tasks[..pos], &after.tasks[..pos]);
    }

    #[test]
    fn feasible_schedules_start_before_deadlines((a, book) in instance()) {
        let path: Vec<usize> = book.ids().collect();
        let s = build_schedule(&a, &path, &book, 0.0).unwrap();
        if s.feasible {
            let mut margins = 0.0;
            for t in &s.tasks {
                let TaskTiming::Feasible { start_time, area_at_start, .. } = t.timing else {
                    panic!("feasible schedule with an infeasible task");
                };
                prop_assert!(start_time < t.deadline);
                margins += t.critical_area.sqrt() - area_at_start.sqrt();
            }
            prop_assert!(margins > 0.0);
            prop_assert!(dpmc_score(&s).value().unwrap() >= 0.0);
        } else {
            prop_assert_eq!(dpmc_score(&s), Score::Infeasible);
        }
    }

    #[test]
    fn appending_a_feasible_task_raises_baseline((a, book) in instance()) {
        let ids: Vec<usize> = book.ids().collect();
        let short = build_schedule(&a, &ids[..ids.len() - 1], &book, 0.0).unwrap();
        let long = build_schedule(&a, &ids, &book, 0.0).unwrap();
        if long.feasible {
            prop_assert!(baseline_score(&long) > baseline_score(&short));
        }
    }

    #[test]
    fn marginal_insertion_is_the_best_position((a, book) in instance(), dpmc in any::<bool>()) {
        let cost = if dpmc { CostFunction::Dpmc } else { CostFunction::Baseline };
        let ids: Vec<usize> = book.ids().collect();
        let (path, new) = ids.split_at(ids.len() - 1);
        let ins = marginal_insertion(&a, path, new[0], &book, cost).unwrap();
        let base = wildfire_planner::schedule::path_score(&a, path, &book, cost).unwrap();
        let mut best = Score::Infeasible;
        for pos in 0..=path.len() {
            let mut p = path.to_vec();
            p.insert(pos, new[0]);
            let s = wildfire_planner::schedule::path_score(&a, &p, &book, cost).unwrap();
            best = best.min(s.minus(base));
        }
        match (ins.cost, best) {
            (Score::Finite(x), Score::Finite(y)) => prop_assert!((x - y).abs() <= 1e-9 * y.abs().max(1.0)),
            (x, y) => prop_assert_eq!(x, y),
        }
    }
}

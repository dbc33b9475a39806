//! At `d = 1` every tuple is a point and operator monotonicity is ordinary
//! coordinatewise monotonicity, checked here on full grids.

use opmono::linalg::{CommutingTuple, DominatingPair, Interval, Regime, SymMatrix};
use opmono::monotonicity::{check_pair, Domain, FunctionUnderTest};
use opmono::stieltjes::{product_measure, Atom, AtomicMeasure, QAlphaFunction, RMinusFunction};

fn grid(n: usize, bounds: Interval, per_axis: usize) -> Vec<Vec<f64>> {
    let ticks: Vec<f64> = (0..per_axis)
        .map(|k| bounds.lo + bounds.width() * k as f64 / (per_axis - 1) as f64)
        .collect();
    let mut points = vec![vec![]];
    for _ in 0..n {
        points = points
            .into_iter()
            .flat_map(|p| {
                ticks.iter().map(move |&t| {
                    let mut q = p.clone();
                    q.push(t);
                    q
                })
            })
            .collect();
    }
    points
}

fn point_tuple(x: &[f64]) -> CommutingTuple {
    CommutingTuple::new(x.iter().map(|&v| SymMatrix::from_diagonal(&[v])).collect()).unwrap()
}

/// Number of coordinatewise-ordered grid pairs where `f` decreases.
fn grid_decreases(f: &FunctionUnderTest, bounds: Interval) -> usize {
    let points = grid(f.arity(), bounds, 10);
    let values: Vec<f64> = points.iter().map(|x| f.eval_real(x).unwrap()).collect();
    let mut bad = 0;
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            if x.iter().zip(y).all(|(a, b)| a <= b)
                && values[j] < values[i] - 1e-12 * values[i].abs().max(1.0)
            {
                bad += 1;
            }
        }
    }
    bad
}

fn monotone_functions() -> Vec<FunctionUnderTest> {
    let measure = |n| {
        AtomicMeasure::new(
            n,
            (0..3)
                .map(|k| Atom {
                    xi: (0..n).map(|j| ((k + j) % 3) as f64 * 0.7).collect(),
                    w: 0.5 + k as f64,
                })
                .collect(),
        )
        .unwrap()
    };
    let one_dim = |xi: f64, w: f64| AtomicMeasure::new(1, vec![Atom { xi: vec![xi], w }]).unwrap();
    vec![
        FunctionUnderTest::power(2, 0.5).unwrap(),
        FunctionUnderTest::power(3, 1.0 / 3.0).unwrap(),
        FunctionUnderTest::power(2, 1.0).unwrap(),
        FunctionUnderTest::polyproduct(vec![1.0, 2.0, 0.5], vec![0.3, 0.5, 0.2]).unwrap(),
        FunctionUnderTest::bilinear(1.0).unwrap(),
        FunctionUnderTest::qalpha(QAlphaFunction::new(0.5, 0.3, measure(2)).unwrap()),
        FunctionUnderTest::qalpha(QAlphaFunction::new(0.3, 0.0, measure(3)).unwrap()),
        FunctionUnderTest::qalpha(
            QAlphaFunction::new(
                0.5,
                1.0,
                product_measure(&[one_dim(0.0, 1.0), one_dim(2.0, 0.5)]).unwrap(),
            )
            .unwrap(),
        ),
        FunctionUnderTest::rminus(RMinusFunction::new(2.0, 0.0, measure(2)).unwrap()),
        FunctionUnderTest::rminus(RMinusFunction::new(1.0, 0.5, measure(3)).unwrap()),
    ]
}

#[test]
fn registry_is_coordinatewise_monotone_on_grids() {
    for f in monotone_functions() {
        assert_eq!(grid_decreases(&f, f.default_box()), 0, "{:?}", f.spec());
    }
}

#[test]
fn decreasing_function_is_caught_by_the_grid() {
    let f = FunctionUnderTest::custom("neg", 2, Domain::Everywhere, |x| -x[0] * x[1]);
    assert!(grid_decreases(&f, Interval::new(0.1, 10.0).unwrap()) > 0);
}

#[test]
fn one_dimensional_pairs_reduce_to_scalar_differences() {
    for f in monotone_functions() {
        let points = grid(f.arity(), f.default_box(), 4);
        for (i, x) in points.iter().enumerate() {
            for y in &points[i..] {
                if !x.iter().zip(y).all(|(a, b)| a <= b) {
                    continue;
                }
                for regime in [Regime::Cross, Regime::Tuple] {
                    let pair = DominatingPair::new(point_tuple(x), point_tuple(y), regime).unwrap();
                    let margin = check_pair(&f, &pair).unwrap();
                    let (fx, fy) = (f.eval_real(x).unwrap(), f.eval_real(y).unwrap());
                    let expected = (fy - fx) / 1f64.max(fx.abs()).max(fy.abs());
                    assert!(
                        (margin - expected).abs() <= 1e-12,
                        "{:?}: {margin} vs {expected}",
                        f.spec()
                    );
                    assert!(margin >= -1e-12);
                }
            }
        }
    }
}

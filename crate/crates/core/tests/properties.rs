use proptest::prelude::*;
use qadeg::boolfn::{Basis, MultilinearPolynomial, TruthTable};

fn truth_table(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1 << n).prop_map(move |v| TruthTable::new(n, v).unwrap())
    })
}

fn polynomial(max_n: usize) -> impl Strategy<Value = MultilinearPolynomial> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-4.0f64..4.0, 1 << n)
            .prop_map(move |c| MultilinearPolynomial::from_coefficients(n, Basis::FourierPm1, c).unwrap())
    })
}

/// `f̂(S) = E_x[f(x) chi_S(x)]`, summed directly.
fn direct_coefficient(tt: &TruthTable, mask: usize) -> f64 {
    let pm = tt.pm1_values();
    let sum: f64 = pm
        .iter()
        .enumerate()
        .map(|(r, v)| {
            if (r & mask).count_ones().is_multiple_of(2) {
                *v
            } else {
                -*v
            }
        })
        .sum();
    sum / pm.len() as f64
}

proptest! {
    #[test]
    fn fourier_matches_direct_summation(tt in truth_table(6)) {
        let f = tt.fourier();
        for mask in 0..tt.len() {
            prop_assert!((f.coefficient(mask as u32) - direct_coefficient(&tt, mask)).abs() < 1e-12);
        }
    }

    #[test]
    fn parseval(tt in truth_table(8)) {
        prop_assert!((tt.fourier().fourier_weight().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn basis_round_trip(p in polynomial(6)) {
        let back = p.convert(Basis::Monomial01).convert(Basis::FourierPm1);
        for (a, b) in p.coefficients().iter().zip(back.coefficients()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn conversion_agrees_pointwise(p in polynomial(6)) {
        let q = p.convert(Basis::Monomial01);
        for (a, b) in p.evaluate_all().iter().zip(q.evaluate_all()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn derivative_pointwise(p in polynomial(5), i in 1usize..=5) {
        prop_assume!(i <= p.n());
        let n = p.n();
        let di = p.derivative(i).unwrap().evaluate_all();
        let values = p.evaluate_all();
        let bit = 1 << (n - i);
        for (r, d) in di.iter().enumerate() {
            prop_assert!((d - (values[r] - values[r ^ bit]) / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn influences_are_derivative_weights(tt in truth_table(7)) {
        let f = tt.fourier();
        for i in 1..=tt.n() {
            let w = f.derivative(i).unwrap().fourier_weight().unwrap();
            let inf = tt.influence(i).unwrap();
            prop_assert!((w - *inf.numer() as f64 / *inf.denom() as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn complement_preserves_analysis(tt in truth_table(7)) {
        let c = tt.complement();
        prop_assert_eq!(c.degree(), tt.degree());
        prop_assert_eq!(c.influences(), tt.influences());
        prop_assert_eq!(c.sensitivity(), tt.sensitivity());
    }

    #[test]
    fn influence_sum_at_most_degree(tt in truth_table(8)) {
        let total = tt.total_influence();
        prop_assert!(total <= num_rational::Ratio::from_integer(tt.degree() as u64));
    }

    #[test]
    fn text_format_round_trip(tt in truth_table(8)) {
        let back: TruthTable = tt.to_string().parse().unwrap();
        prop_assert_eq!(back, tt);
    }

    #[test]
    fn norms_nondecreasing(p in polynomial(6)) {
        let mut last = 0.0;
        for q in [1.0, 1.5, 2.0, 3.0, 5.0] {
            let v = p.p_norm(q).unwrap();
            prop_assert!(v >= last * (1.0 - 1e-12));
            last = v;
        }
    }
}

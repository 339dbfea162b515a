#![allow(clippy::excessive_precision)]

use std::collections::BTreeMap;

use serde::Serialize;

/// One exactly known eigenvalue of a small `B_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormEigenvalue {
    pub label: &'static str,
    pub value: f64,
}

const fn ev(label: &'static str, value: f64) -> ClosedFormEigenvalue {
    ClosedFormEigenvalue { label, value }
}

/// Published numerical spectrum of `B_6`, descending. Digits as printed.
pub const PRINTED_N6: [f64; 6] = [
    3.3242574335521,
    1.889175877753,
    0.61670659019259,
    -0.61670659019259,
    -1.889175877753,
    -3.3242574335521,
];

/// Exact spectra of `B_2 .. B_5`, descending.
pub fn closed_form_table() -> BTreeMap<usize, Vec<ClosedFormEigenvalue>> {
    BTreeMap::from([
        (2, vec![ev("1", 1.0), ev("-1", -1.0)]),
        (
            3,
            vec![
                ev("sqrt(3)", 1.732_050_807_568_877_293_527),
                ev("0", 0.0),
                ev("-sqrt(3)", -1.732_050_807_568_877_293_527),
            ],
        ),
        (
            4,
            vec![
                ev("sqrt(3+sqrt(6))", 2.334_414_218_338_977_239_318),
                ev("sqrt(3-sqrt(6))", 0.741_963_784_302_725_857_649),
                ev("-sqrt(3-sqrt(6))", -0.741_963_784_302_725_857_649),
                ev("-sqrt(3+sqrt(6))", -2.334_414_218_338_977_239_318),
            ],
        ),
        (
            5,
            vec![
                ev("sqrt(5+sqrt(10))", 2.856_970_013_872_805_654_162),
                ev("sqrt(5-sqrt(10))", 1.355_626_179_974_265_865_831),
                ev("0", 0.0),
                ev("-sqrt(5-sqrt(10))", -1.355_626_179_974_265_865_831),
                ev("-sqrt(5+sqrt(10))", -2.856_970_013_872_805_654_162),
            ],
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_match_their_labels() {
        let t = closed_form_table();
        let s = f64::sqrt;
        let checks = [
            (3, 0, s(3.0)),
            (4, 0, s(3.0 + s(6.0))),
            (4, 1, s(3.0 - s(6.0))),
            (5, 0, s(5.0 + s(10.0))),
            (5, 1, s(5.0 - s(10.0))),
        ];
        for (n, i, exact) in checks {
            assert!((t[&n][i].value - exact).abs() < 1e-15, "n={n} i={i}");
        }
        assert!((t[&4][0].value - 2.334414).abs() < 1e-6);
        assert!((t[&5][0].value - 2.856970).abs() < 1e-6);
        assert_eq!(t[&3][1].value, 0.0);
    }

    #[test]
    fn table_shape() {
        let t = closed_form_table();
        assert_eq!(t.keys().copied().collect::<Vec<_>>(), vec![2, 3, 4, 5]);
        for (n, evs) in &t {
            assert_eq!(evs.len(), *n);
            assert!(evs.windows(2).all(|w| w[0].value > w[1].value));
            let sum: f64 = evs.iter().map(|e| e.value).sum();
            assert!(sum.abs() < 1e-15);
        }
    }
}

//! Small named spaces from the theory, used as fixtures and CLI inputs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::space::MmSpace;

/// `k` points at mutual distance `d` with the given weights.
fn equidistant(d: f64, weights: Vec<f64>) -> MmSpace {
    let k = weights.len();
    let dist = (0..k)
        .map(|i| (0..k).map(|j| if i == j { 0.0 } else { d }).collect())
        .collect();
    MmSpace::from_matrix(dist, weights).expect("equidistant spaces are valid")
}

/// Two points with masses 1/2 at distance 1.
pub fn exp25_x() -> MmSpace {
    equidistant(1.0, vec![0.5, 0.5])
}

/// Three points at mutual distance 1 with masses `(2-sqrt3)/6, 1/3, (2+sqrt3)/6`.
///
/// Same distance distribution as [`exp25_x`]: the sum of squared masses is 1/2.
pub fn exp25_y() -> MmSpace {
    let s = 3f64.sqrt();
    equidistant(1.0, vec![(2.0 - s) / 6.0, 1.0 / 3.0, (2.0 + s) / 6.0])
}

/// Two points with masses 1/2 at distance `n`.
pub fn exp212i(n: u32) -> MmSpace {
    equidistant(n as f64, vec![0.5, 0.5])
}

/// `2^n` points at mutual distance 1, uniform.
pub fn exp212ii(n: u32) -> MmSpace {
    assert!(n <= 12, "2^{n} points is too many for a fixture");
    let k = 1usize << n;
    equidistant(1.0, vec![1.0 / k as f64; k])
}

/// Two clusters of four leaves hanging off two adjacent hubs: leaves in the
/// same cluster are at distance 2, leaves in different clusters at 3.
/// `left` and `right` are the leaf masses in twentieths.
fn two_clusters(left: [u32; 4], right: [u32; 4]) -> MmSpace {
    let labels: Vec<String> = (1..=4)
        .map(|i| format!("a{i}"))
        .chain((1..=4).map(|i| format!("b{i}")))
        .collect();
    let dist = (0..8)
        .map(|i| {
            (0..8)
                .map(|j| {
                    if i == j {
                        0.0
                    } else if i / 4 == j / 4 {
                        2.0
                    } else {
                        3.0
                    }
                })
                .collect()
        })
        .collect();
    let weights = left
        .iter()
        .chain(&right)
        .map(|&w| w as f64 / 20.0)
        .collect();
    MmSpace::new(labels, dist, weights).expect("cluster spaces are valid")
}

/// Masses `1, 2, 3, 4` (twentieths) on both sides.
pub fn exp62_x() -> MmSpace {
    two_clusters([1, 2, 3, 4], [1, 2, 3, 4])
}

/// Masses `1, 1, 4, 4` on one side and `2, 2, 3, 3` on the other.
///
/// Same random distance distribution as [`exp62_x`] but not isomorphic to it.
pub fn exp62_y() -> MmSpace {
    two_clusters([1, 1, 4, 4], [2, 2, 3, 3])
}

/// Look up a fixture by name.
///
/// Names: `one-point`, `exp25_x`, `exp25_y`, `exp212i:n`, `exp212ii:n`,
/// `exp62_x` and `exp62_y`.
pub fn fixture(name: &str) -> Result<MmSpace> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let (base, arg) = name
        .split_once(':')
        .map_or((name, None), |(b, a)| (b, Some(a)));
    let index = || -> Result<u32> {
        arg.and_then(|a| a.trim().parse().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(unknown)
    };
    Ok(match (base, arg) {
        ("one-point", None) => MmSpace::one_point(),
        ("exp25_x", None) => exp25_x(),
        ("exp25_y", None) => exp25_y(),
        ("exp62_x", None) => exp62_x(),
        ("exp62_y", None) => exp62_y(),
        ("exp212i", Some(_)) => exp212i(index()?),
        ("exp212ii", Some(_)) => {
            let n = index()?;
            if n > 12 {
                return Err(unknown());
            }
            exp212ii(n)
        }
        _ => return Err(unknown()),
    })
}

/// The catalog: the fixed fixtures plus `exp212i:n` and `exp212ii:n` for `n = 1..=8`.
pub fn fixtures() -> BTreeMap<String, MmSpace> {
    let mut out = BTreeMap::new();
    for name in ["one-point", "exp25_x", "exp25_y", "exp62_x", "exp62_y"] {
        out.insert(name.to_string(), fixture(name).unwrap());
    }
    for n in 1..=8 {
        out.insert(format!("exp212i:{n}"), exp212i(n));
        out.insert(format!("exp212ii:{n}"), exp212ii(n));
    }
    out
}

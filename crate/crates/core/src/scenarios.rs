//! Seeded generators for the six benchmark scenarios. Each returns the data
//! and the true partition.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, Exp, StandardNormal, Uniform};

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rng::RngSeed;

pub const SCENARIO2_MAX_REJECTIONS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    ThreeGaussians2d,
    FourGaussians10d,
    MixedWithOutliers6d,
    Elongated3d,
    Rings2d,
    Moons2d,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::ThreeGaussians2d,
        Scenario::FourGaussians10d,
        Scenario::MixedWithOutliers6d,
        Scenario::Elongated3d,
        Scenario::Rings2d,
        Scenario::Moons2d,
    ];

    pub fn number(self) -> usize {
        Scenario::ALL.iter().position(|&s| s == self).expect("listed") + 1
    }

    pub fn name(self) -> String {
        format!("scenario{}", self.number())
    }

    pub fn description(self) -> &'static str {
        match self {
            Scenario::ThreeGaussians2d => "three Gaussian clusters in 2-d",
            Scenario::FourGaussians10d => "four Gaussian clusters in 10-d",
            Scenario::MixedWithOutliers6d => "four clusters plus two outlier groups in 6-d",
            Scenario::Elongated3d => "two elongated clusters in 3-d",
            Scenario::Rings2d => "two rings in 2-d",
            Scenario::Moons2d => "two moons in 2-d",
        }
    }

    /// Numbers of clusters counted as correct; scenario 3 accepts 4 or 6.
    pub fn true_ks(self) -> &'static [usize] {
        match self {
            Scenario::ThreeGaussians2d => &[3],
            Scenario::FourGaussians10d => &[4],
            Scenario::MixedWithOutliers6d => &[4, 6],
            _ => &[2],
        }
    }

    pub fn generate(self, seed: &RngSeed) -> Result<(DataMatrix, Partition)> {
        match self {
            Scenario::ThreeGaussians2d => scenario1(seed),
            Scenario::FourGaussians10d => scenario2(seed),
            Scenario::MixedWithOutliers6d => scenario3(seed),
            Scenario::Elongated3d => scenario4(seed),
            Scenario::Rings2d => scenario5(seed),
            Scenario::Moons2d => scenario6(seed),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let num = t.strip_prefix("scenario").or_else(|| t.strip_prefix('s')).unwrap_or(&t);
        num.parse::<usize>()
            .ok()
            .and_then(|i| i.checked_sub(1))
            .and_then(|i| Scenario::ALL.get(i).copied())
            .ok_or_else(|| Error::Contract(format!("unknown scenario {s:?}")))
    }
}

struct Builder {
    rows: Vec<Vec<f64>>,
    labels: Vec<usize>,
}

impl Builder {
    fn new() -> Self {
        Self {
            rows: Vec::new(),
            labels: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<f64>, label: usize) {
        self.rows.push(row);
        self.labels.push(label);
    }

    fn finish(self) -> Result<(DataMatrix, Partition)> {
        let k = self.labels.iter().max().map_or(0, |m| m + 1);
        Ok((DataMatrix::from_rows(&self.rows)?, Partition::new(self.labels, k)?))
    }
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Standard t with ν degrees of freedom: Z / sqrt(χ²_ν / ν).
fn t_scale(rng: &mut ChaCha8Rng, nu: f64) -> f64 {
    let chi: f64 = ChiSquared::new(nu).expect("positive dof").sample(rng);
    (chi / nu).sqrt()
}

/// Sizes 25, 25, 50 around (0,0), (0,5), (5,−3), identity covariance.
pub fn scenario1(seed: &RngSeed) -> Result<(DataMatrix, Partition)> {
    let mut rng = seed.rng();
    let mut b = Builder::new();
    for (label, (size, centre)) in [(25, [0.0, 0.0]), (25, [0.0, 5.0]), (50, [5.0, -3.0])]
        .into_iter()
        .enumerate()
    {
        for _ in 0..size {
            b.push(centre.iter().map(|c| c + normal(&mut rng)).collect(), label);
        }
    }
    b.finish()
}

/// Four 10-d unit-covariance Gaussians of 25 or 50 points; centres from
/// N(0, 1.9·I), redrawn while two centres are closer than 1.
pub fn scenario2(seed: &RngSeed) -> Result<(DataMatrix, Partition)> {
    let mut rng = seed.rng();
    let sd = 1.9_f64.sqrt();
    let mut centres = None;
    for _ in 0..SCENARIO2_MAX_REJECTIONS {
        let cand: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..10).map(|_| sd * normal(&mut rng)).collect())
            .collect();
        let min_dist = (0..4)
            .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
            .map(|(i, j)| crate::data::sq_euclid(&cand[i], &cand[j]).sqrt())
            .fold(f64::INFINITY, f64::min);
        if min_dist >= 1.0 {
            centres = Some(cand);
            break;
        }
    }
    let centres = centres.ok_or(Error::RetryCapExceeded {
        attempts: SCENARIO2_MAX_REJECTIONS,
        reason: "scenario 2 centres kept violating the minimum distance".into(),
    })?;
    let mut b = Builder::new();
    for (label, c) in centres.iter().enumerate() {
        let size = if rng.random_bool(0.5) { 25 } else { 50 };
        for _ in 0..size {
            b.push(c.iter().map(|m| m + normal(&mut rng)).collect(), label);
        }
    }
    b.finish()
}

/// Four clusters of different shapes, two outlier groups, and two noise
/// variables (N(0,1) and t₂) in dimensions 5 and 6.
pub fn scenario3(seed: &RngSeed) -> Result<(DataMatrix, Partition)> {
    let mut rng = seed.rng();
    let exp1 = Exp::new(1.0).expect("rate 1");
    let outlier = Uniform::new(-2.0, 5.0).expect("range");
    let mut b = Builder::new();
    let push = |b: &mut Builder, rng: &mut ChaCha8Rng, mut row: Vec<f64>, label| {
        row.push(normal(rng));
        row.push(normal(rng) / t_scale(rng, 2.0));
        b.push(row, label);
    };
    for _ in 0..150 {
        let row = [0.0, 2.0, 0.0, 2.0]
            .iter()
            .map(|m| m + 0.1_f64.sqrt() * normal(&mut rng))
            .collect();
        push(&mut b, &mut rng, row, 0);
    }
    for _ in 0..250 {
        // variances 0.5, covariances 0.25 via a shared factor
        let common = normal(&mut rng);
        let row = (0..4)
            .map(|_| 3.0 + 0.5 * common + 0.5 * normal(&mut rng))
            .collect();
        push(&mut b, &mut rng, row, 1);
    }
    for _ in 0..70 {
        let row = (0..4).map(|_| exp1.sample(&mut rng) - 2.0).collect();
        push(&mut b, &mut rng, row, 2);
    }
    for _ in 0..70 {
        let w = t_scale(&mut rng, 2.0);
        let row = [2.0, 0.0, 2.0, 0.0]
            .iter()
            .map(|m| m + 0.1_f64.sqrt() * normal(&mut rng) / w)
            .collect();
        push(&mut b, &mut rng, row, 3);
    }
    for _ in 0..10 {
        let row = (0..4).map(|_| outlier.sample(&mut rng)).collect();
        push(&mut b, &mut rng, row, 4);
    }
    for _ in 0..10 {
        let w = t_scale(&mut rng, 2.0);
        let row = (0..4)
            .map(|_| 1.5 + 2.0_f64.sqrt() * normal(&mut rng) / w)
            .collect();
        push(&mut b, &mut rng, row, 5);
    }
    b.finish()
}

/// Shift of the second segment in every coordinate. A shift of 1 would put
/// the segments end to end on the same line with no gap between them.
pub const SCENARIO4_SHIFT: f64 = 10.0;

/// Two noisy line segments along (1,1,1), the second shifted by
/// [`SCENARIO4_SHIFT`] in every coordinate.
pub fn scenario4(seed: &RngSeed) -> Result<(DataMatrix, Partition)> {
    let mut rng = seed.rng();
    let mut b = Builder::new();
    for (label, shift) in [(0, 0.0), (1, SCENARIO4_SHIFT)] {
        for i in 0..100 {
            let t = -0.5 + f64::from(i) / 99.0;
            b.push((0..3).map(|_| t + shift + 0.1 * normal(&mut rng)).collect(), label);
        }
    }
    b.finish()
}

/// Outer ring with radius U[0.75, 0.9], inner ring with U[0.35, 0.5].
pub fn scenario5(seed: &RngSeed) -> Result<(DataMatrix, Partition)> {
    let mut rng = seed.rng();
    let angle = Uniform::new(0.0, 2.0 * PI).expect("range");
    let mut b = Builder::new();
    for (label, (lo, hi)) in [(0.75, 0.9), (0.35, 0.5)].into_iter().enumerate() {
        let radius = Uniform::new_inclusive(lo, hi).expect("range");
        for _ in 0..180 {
            let r = radius.sample(&mut rng);
            let a = angle.sample(&mut rng);
            b.push(vec![r * a.cos(), r * a.sin()], label);
        }
    }
    b.finish()
}

/// Two interleaved half-rings with radius U[0.8, 1.2], a = −0.4, b = 1.
pub fn scenario6(seed: &RngSeed) -> Result<(DataMatrix, Partition)> {
    const A: f64 = -0.4;
    const B: f64 = 1.0;
    let mut rng = seed.rng();
    let radius = Uniform::new_inclusive(0.8, 1.2).expect("range");
    let angle = Uniform::new(0.0, 2.0 * PI).expect("range");
    let mut b = Builder::new();
    for label in 0..2 {
        for _ in 0..180 {
            let r = radius.sample(&mut rng);
            let a = angle.sample(&mut rng);
            let (x, y) = if label == 0 {
                (A + (r * a.cos()).abs(), r * a.sin())
            } else {
                (-(r * a.cos()).abs(), r * a.sin() - B)
            };
            b.push(vec![x, y], label);
        }
    }
    b.finish()
}

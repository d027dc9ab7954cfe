//! JSON report types.

use qwalk::spectra::{Branch, LiftDetails, SpectrumReport, WalkSpectrum};
use qwalk::{EigenMultiset, C64};
use serde::{Serialize, Serializer};

// Eigenvalue components below this magnitude print as zero.
const ZERO_SNAP: f64 = 1e-12;

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let y: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Float serialized through [`round12`]; non-finite values become `null`.
#[derive(Clone, Copy, Debug)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(round12(self.0))
        } else {
            s.serialize_none()
        }
    }
}

fn component(x: f64) -> Num {
    Num(if x.abs() < ZERO_SNAP { 0.0 } else { x })
}

// Sort key on printed values, so that rounding noise cannot reorder output.
fn printed(z: C64) -> (f64, f64) {
    (round12(component(z.re).0), round12(component(z.im).0))
}

fn by_printed(a: C64, b: C64) -> std::cmp::Ordering {
    let (a, b) = (printed(a), printed(b));
    a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1))
}

#[derive(Serialize)]
pub struct Complex {
    pub re: Num,
    pub im: Num,
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Self {
            re: component(z.re),
            im: component(z.im),
        }
    }
}

#[derive(Serialize)]
pub struct ClusteredValue {
    pub re: Num,
    pub im: Num,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct Eigenvalues {
    pub count: usize,
    pub clustered: Vec<ClusteredValue>,
    pub raw: Vec<Complex>,
}

impl From<&EigenMultiset> for Eigenvalues {
    fn from(values: &EigenMultiset) -> Self {
        let mut clusters = values.clusters();
        clusters.sort_by(|a, b| by_printed(a.value, b.value));
        let mut raw = values.values().to_vec();
        raw.sort_by(|&a, &b| by_printed(a, b));
        let clustered = clusters
            .into_iter()
            .map(|c| ClusteredValue {
                re: component(c.value.re),
                im: component(c.value.im),
                multiplicity: c.multiplicity,
            })
            .collect();
        Self {
            count: values.len(),
            clustered,
            raw: raw.into_iter().map(Complex::from).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Pair {
    pub lambda: Num,
    pub plus: Complex,
    pub minus: Complex,
}

#[derive(Serialize)]
pub struct Lift {
    #[serde(rename = "N")]
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub branch: &'static str,
    pub discriminant_label: &'static str,
    pub discriminant: Vec<Num>,
    pub plus_one: usize,
    pub minus_one: usize,
    pub forced_zero: usize,
    pub forced_one: usize,
    pub pairs: Vec<Pair>,
}

impl Lift {
    fn new(d: &LiftDetails, label: &'static str) -> Self {
        Self {
            n: d.n,
            s: d.s,
            t: d.t,
            branch: match d.branch {
                Branch::Surplus => "surplus",
                Branch::Deficit => "deficit",
            },
            discriminant_label: label,
            discriminant: d.discriminant.iter().map(|&x| component(x)).collect(),
            plus_one: d.plus_one,
            minus_one: d.minus_one,
            forced_zero: d.forced_zero,
            forced_one: d.forced_one,
            pairs: d
                .pairs
                .iter()
                .map(|p| Pair {
                    lambda: component(p.lambda),
                    plus: p.plus.into(),
                    minus: p.minus.into(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Side {
    pub eigenvalues: Eigenvalues,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift: Option<Lift>,
}

impl Side {
    fn new(r: &SpectrumReport, label: &'static str) -> Self {
        Self {
            eigenvalues: (&r.values).into(),
            lift: r.lift.as_ref().map(|d| Lift::new(d, label)),
        }
    }
}

#[derive(Serialize)]
pub struct Spectrum {
    pub dimension: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    pub tolerance: Num,
    pub max_distance: Num,
    pub formula: Side,
    pub direct: Side,
}

impl Spectrum {
    /// `label` names the discriminant the formula side was lifted from.
    pub fn new(ws: &WalkSpectrum, label: &'static str) -> Self {
        Self {
            dimension: ws.direct.dimension(),
            matches: ws.matches(),
            tolerance: Num(ws.agreement.tolerance),
            max_distance: Num(ws.agreement.max_distance),
            formula: Side::new(&ws.formula, label),
            direct: Side::new(&ws.direct, label),
        }
    }
}

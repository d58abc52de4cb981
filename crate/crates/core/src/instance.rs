//! Problem input documents, seeded random instances and the self-test pipeline.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{build_betti_algebra, build_derham_algebra, compare_dimensions, verify_presentation, Orientation};
use crate::arrangement::{validate_arrangement, PolarizedArrangement};
use crate::error::{Error, Result};
use crate::gale::{dual_pair, exchange_between};
use crate::lattice::{is_saturated, is_unimodular, IntMatrix, Params, ToriSequence};
use crate::repalg::{euler_inverts_cartan, ext_table, flatten, koszul_compare};
use crate::ring::GbLimits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrientationSpec {
    /// `"default"`
    Named(String),
    /// 1-based coordinates whose crossing factor uses the inverse monodromy.
    Flipped(Vec<usize>),
}

impl Default for OrientationSpec {
    fn default() -> Self {
        OrientationSpec::Named("default".into())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_pairs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_basis: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    #[serde(default)]
    pub orientation: OrientationSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_deg: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Caps>,
}

/// The JSON input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInput {
    pub n: usize,
    /// Columns of the inclusion `Z^k → Z^n`.
    pub g_basis: Vec<Vec<i64>>,
    /// Stability parameter in the dual basis of `g_basis`.
    pub t: Vec<i64>,
    pub m_lift: Vec<i64>,
    #[serde(default)]
    pub options: InputOptions,
}

/// A validated input.
#[derive(Clone, Debug)]
pub struct Instance {
    pub input: ProblemInput,
    pub seq: ToriSequence,
    pub params: Params,
    pub arrangement: PolarizedArrangement,
    pub orientation: Orientation,
    pub max_deg: usize,
    pub limits: GbLimits,
}

impl ProblemInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSequence(format!("malformed input: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("input serializes")
    }

    pub fn sequence(&self) -> Result<ToriSequence> {
        if self.g_basis.iter().any(|c| c.len() != self.n) {
            return Err(Error::InvalidSequence(format!("every g_basis column must have length {}", self.n)));
        }
        ToriSequence::from_columns(self.n, &self.g_basis)
    }

    pub fn params(&self) -> Params {
        Params::from_ints(&self.t, &self.m_lift)
    }

    pub fn orientation(&self) -> Result<Orientation> {
        match &self.options.orientation {
            OrientationSpec::Named(s) if s == "default" => Ok(Orientation::default()),
            OrientationSpec::Named(s) => Err(Error::InvalidParameter(format!("unknown orientation {s:?}"))),
            OrientationSpec::Flipped(c) => {
                if c.iter().any(|&i| i == 0 || i > self.n) {
                    return Err(Error::InvalidParameter("orientation coordinates must lie in 1..=n".into()));
                }
                Ok(Orientation::from_coords(c))
            }
        }
    }

    pub fn validate(&self, limits: GbLimits) -> Result<Instance> {
        let seq = self.sequence()?;
        let params = self.params();
        let arrangement = validate_arrangement(&seq, &params)?;
        let mut limits = limits;
        if let Some(c) = &self.options.caps {
            limits.max_pairs = c.max_pairs.unwrap_or(limits.max_pairs);
            limits.max_basis = c.max_basis.unwrap_or(limits.max_basis);
        }
        Ok(Instance {
            orientation: self.orientation()?,
            max_deg: self.options.max_deg.unwrap_or(2 * self.n.max(1)),
            input: self.clone(),
            seq,
            params,
            arrangement,
            limits,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Reject sequences whose projection has non-unit maximal minors.
    pub unimodular: bool,
}

impl RandomConfig {
    pub fn new(n_max: usize, unimodular: bool) -> Self {
        RandomConfig { n_min: 1, n_max, unimodular }
    }
}

/// Both the instance and its Gale dual validate with generic parameters.
pub fn is_doubly_generic(seq: &ToriSequence, params: &Params) -> bool {
    match dual_pair(seq, params) {
        Ok((p, d)) => p.require_generic().is_ok() && d.require_generic().is_ok(),
        Err(_) => false,
    }
}

/// Random saturated inclusion with entries in `[−3, 3]` and generic integral parameters.
/// `n` is drawn first, so rejection does not bias the size distribution; for `n ≥ 2` the
/// subtorus is proper and nontrivial.
pub fn random_instance(rng: &mut ChaCha8Rng, cfg: RandomConfig) -> ProblemInput {
    let n = rng.gen_range(cfg.n_min..=cfg.n_max);
    loop {
        let k = if n == 1 { rng.gen_range(0..=1) } else { rng.gen_range(1..n) };
        let cols: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let Ok(m) = IntMatrix::from_columns(n, &cols) else { continue };
        if !matches!(is_saturated(&m), Ok(true)) {
            continue;
        }
        let Ok(seq) = ToriSequence::from_inclusion(m) else { continue };
        if cfg.unimodular && !is_unimodular(&seq) {
            continue;
        }
        for _ in 0..20 {
            let t: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
            let m_lift: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let params = Params::from_ints(&t, &m_lift);
            if is_doubly_generic(&seq, &params) {
                return ProblemInput { n, g_basis: cols, t, m_lift, options: InputOptions::default() };
            }
        }
    }
}

pub fn random_instances(seed: u64, count: usize, cfg: RandomConfig) -> Vec<ProblemInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, cfg)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub index: usize,
    pub input: ProblemInput,
    pub exchange: bool,
    pub vertex_count: bool,
    pub presentation: bool,
    pub riemann_hilbert: bool,
    pub euler: bool,
    pub koszul: bool,
    pub errors: Vec<String>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub count: usize,
    pub n_max: usize,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseReport>,
}

/// All property checks on one instance; failures are collected, not raised.
pub fn check_case(index: usize, input: &ProblemInput, limits: GbLimits) -> CaseReport {
    let mut r = CaseReport {
        index,
        input: input.clone(),
        exchange: false,
        vertex_count: false,
        presentation: false,
        riemann_hilbert: false,
        euler: false,
        koszul: false,
        errors: Vec::new(),
    };
    let run = |r: &mut CaseReport| -> Result<()> {
        let inst = input.validate(limits)?;
        let (primal, dual) = dual_pair(&inst.seq, &inst.params)?;
        let ex = exchange_between(&primal, &dual);
        r.exchange = ex.is_clean();
        if !r.exchange {
            r.errors.push(format!("exchange violations: {:?}", ex.violations));
        }
        let bounded = primal.classification().with_class(crate::arrangement::ChamberClass::FeasibleBounded).len();
        let vertices = primal.count_vertices()?;
        r.vertex_count = bounded == vertices;
        if !r.vertex_count {
            r.errors.push(format!("{bounded} bounded chambers but {vertices} vertices"));
        }
        let betti = build_betti_algebra(&primal, inst.orientation, limits)?;
        let derham = build_derham_algebra(&primal, limits)?;
        match verify_presentation(&betti, limits) {
            Ok(_) => r.presentation = true,
            Err(e) => r.errors.push(e.to_string()),
        }
        let cmp = compare_dimensions(&betti, &derham);
        r.riemann_hilbert = cmp.is_equal();
        if !r.riemann_hilbert {
            r.errors.push(format!("betti/derham dimensions differ: {:?}", cmp.diffs));
        }
        let ext = ext_table(&flatten(&betti), inst.max_deg)?;
        r.euler = euler_inverts_cartan(&ext.euler, &betti.cartan_and_total().0);
        if !r.euler {
            r.errors.push("alternating Ext sums do not invert the Cartan matrix".into());
        }
        let dual_alg = build_betti_algebra(&dual, Orientation::default(), limits)?;
        let k = koszul_compare(&betti, &dual_alg, inst.max_deg)?;
        r.koszul = k.is_clean(true);
        if !r.koszul {
            r.errors.push(format!("koszul mismatch: ext {} vs dual {}; diffs {:?}", k.ext_grand_total, k.dual_total_dim, k.diffs));
        }
        Ok(())
    };
    if let Err(e) = run(&mut r) {
        r.errors.push(e.to_string());
    }
    r
}

pub fn selftest(seed: u64, count: usize, n_max: usize, limits: GbLimits) -> SelftestReport {
    let inputs = random_instances(seed, count, RandomConfig::new(n_max, true));
    let cases: Vec<CaseReport> = inputs.par_iter().enumerate().map(|(i, inp)| check_case(i, inp, limits)).collect();
    let passed = cases.iter().filter(|c| c.passed()).count();
    SelftestReport { seed, count, n_max, passed, failed: count - passed, cases }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_e1() {
        let text = r#"{"n":2,"g_basis":[[1,-1]],"t":[1],"m_lift":[-1,0],"options":{"orientation":[2],"max_deg":3}}"#;
        let p = ProblemInput::from_json(text).unwrap();
        let inst = p.validate(GbLimits::default()).unwrap();
        assert_eq!(inst.orientation, Orientation(2));
        assert_eq!(inst.max_deg, 3);
        assert!(ProblemInput::from_json(r#"{"n":2}"#).is_err());
        let bad = ProblemInput { n: 2, g_basis: vec![vec![1]], t: vec![1], m_lift: vec![0, 0], options: InputOptions::default() };
        assert!(matches!(bad.validate(GbLimits::default()), Err(Error::InvalidSequence(_))));
    }

    #[test]
    fn degenerate_input_rejected() {
        let p = ProblemInput { n: 1, g_basis: vec![vec![1]], t: vec![0], m_lift: vec![0], options: InputOptions::default() };
        assert_eq!(p.validate(GbLimits::default()).unwrap_err(), Error::DegenerateHyperplane(1));
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_instances(7, 5, RandomConfig::new(4, false));
        let b = random_instances(7, 5, RandomConfig::new(4, false));
        assert_eq!(a, b);
        for p in &a {
            assert!(is_doubly_generic(&p.sequence().unwrap(), &p.params()));
        }
    }

    #[test]
    fn small_selftest_passes() {
        let r = selftest(0, 4, 3, GbLimits::default());
        assert_eq!(r.failed, 0, "{:#?}", r.cases.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
        assert_eq!(selftest(0, 0, 3, GbLimits::default()).passed, 0);
    }
}

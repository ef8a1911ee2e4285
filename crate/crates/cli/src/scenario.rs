//! Figure scenarios and their default parameters.

use std::fmt;
use std::str::FromStr;

use discorr_core::oracle::{CircuitInput, ModeInput};
use discorr_core::{CoherentAmplitude, LossPoint, SqueezingParameter, C64};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::expr::{parse_complex, parse_real};

pub const DEFAULT_DIM_CAP: usize = 64;
pub const DIM_CAP_ENV: &str = "DISCORR_DIM_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioId {
    Fig1,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
    Fig5a,
    Fig5b,
    Fig5c,
    Fig6a,
    Fig6b,
    Fig6c,
    Custom,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 16] = [
        ScenarioId::Fig1,
        ScenarioId::Fig3a,
        ScenarioId::Fig3b,
        ScenarioId::Fig3c,
        ScenarioId::Fig3d,
        ScenarioId::Fig4a,
        ScenarioId::Fig4b,
        ScenarioId::Fig4c,
        ScenarioId::Fig4d,
        ScenarioId::Fig5a,
        ScenarioId::Fig5b,
        ScenarioId::Fig5c,
        ScenarioId::Fig6a,
        ScenarioId::Fig6b,
        ScenarioId::Fig6c,
        ScenarioId::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::Fig1 => "fig1",
            ScenarioId::Fig3a => "fig3a",
            ScenarioId::Fig3b => "fig3b",
            ScenarioId::Fig3c => "fig3c",
            ScenarioId::Fig3d => "fig3d",
            ScenarioId::Fig4a => "fig4a",
            ScenarioId::Fig4b => "fig4b",
            ScenarioId::Fig4c => "fig4c",
            ScenarioId::Fig4d => "fig4d",
            ScenarioId::Fig5a => "fig5a",
            ScenarioId::Fig5b => "fig5b",
            ScenarioId::Fig5c => "fig5c",
            ScenarioId::Fig6a => "fig6a",
            ScenarioId::Fig6b => "fig6b",
            ScenarioId::Fig6c => "fig6c",
            ScenarioId::Custom => "custom",
        }
    }

    /// The caption wording each default is taken from.
    pub fn caption(self) -> &'static str {
        match self {
            ScenarioId::Fig1 => "single photon and coherent state |alpha>, alpha = sqrt8, on a 50:50 beam splitter",
            ScenarioId::Fig3a => "input coherent states before the discorrelation procedure",
            ScenarioId::Fig3b => "alpha = sqrt8 = -i beta, t = sqrt(2/30)",
            ScenarioId::Fig3c => "alpha = beta, t = sqrt(2/30)",
            ScenarioId::Fig3d => "alpha = beta, t = sqrt(2/15)",
            ScenarioId::Fig4a => "input single-mode squeezed vacua before the discorrelation procedure",
            ScenarioId::Fig4b => "lambda1 = 1 = -lambda2, t = sqrt(2/9)",
            ScenarioId::Fig4c => "lambda1 = lambda2, t = sqrt(2/9)",
            ScenarioId::Fig4d => "lambda1 = lambda2, t = sqrt(2/5)",
            ScenarioId::Fig5a => "two-mode squeezed vacuum input with lambda = 1",
            ScenarioId::Fig5b => "two-mode squeezed vacuum, t = sqrt(2/15)",
            ScenarioId::Fig5c => "two-mode squeezed vacuum, t = 1/sqrt2",
            ScenarioId::Fig6a => "logarithmic negativity versus loss applied symmetrically to both modes",
            ScenarioId::Fig6b => "discorrelation versus loss for the discorrelated states",
            ScenarioId::Fig6c => "discorrelation versus loss at three different points in the circuit",
            ScenarioId::Custom => "user-supplied heralded circuit",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioId {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = ScenarioId::ALL.iter().map(|id| id.name()).collect();
                CliError::spec(format!("unknown scenario {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// States compared in the loss figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossState {
    Hom,
    DisplacedPhoton,
    /// Fig. 3(c): the HOM state displaced by two equal coherent states.
    DisplacedHom,
    Tmsv,
    /// Fig. 3(b) phases with `t = 0.5`.
    NotDiscorrelated,
    /// TMSV sent through the heralded circuit.
    DiscorrelatedTmsv,
}

impl LossState {
    pub const ALL: [LossState; 6] = [
        LossState::Hom,
        LossState::DisplacedPhoton,
        LossState::DisplacedHom,
        LossState::Tmsv,
        LossState::NotDiscorrelated,
        LossState::DiscorrelatedTmsv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LossState::Hom => "hom",
            LossState::DisplacedPhoton => "displaced-photon",
            LossState::DisplacedHom => "displaced-hom",
            LossState::Tmsv => "tmsv",
            LossState::NotDiscorrelated => "not-discorrelated",
            LossState::DiscorrelatedTmsv => "discorrelated-tmsv",
        }
    }
}

impl FromStr for LossState {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        LossState::ALL.into_iter().find(|v| v.name() == s.to_ascii_lowercase()).ok_or_else(|| {
            let names: Vec<_> = LossState::ALL.iter().map(|v| v.name()).collect();
            CliError::spec(format!("unknown state {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

pub fn parse_loss_point(s: &str) -> CliResult<LossPoint> {
    match s.to_ascii_lowercase().as_str() {
        "anc" | "ancilla" | "ancilla-preparation" => Ok(LossPoint::AncillaPreparation),
        "herald" | "detectors" | "before-herald-detectors" => Ok(LossPoint::BeforeHeraldDetectors),
        "after" | "output" | "after-discorrelation" => Ok(LossPoint::AfterDiscorrelation),
        _ => Err(CliError::spec(format!("unknown loss point {s:?}; expected anc, herald or after"))),
    }
}

pub fn loss_point_name(p: LossPoint) -> &'static str {
    match p {
        LossPoint::AncillaPreparation => "ancilla-preparation",
        LossPoint::BeforeHeraldDetectors => "before-herald-detectors",
        LossPoint::AfterDiscorrelation => "after-discorrelation",
    }
}

/// Input family for the `custom` scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Coherent,
    Squeezed,
    Tmsv,
}

impl FromStr for InputKind {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.to_ascii_lowercase().as_str() {
            "coherent" => Ok(InputKind::Coherent),
            "squeezed" | "smsv" => Ok(InputKind::Squeezed),
            "tmsv" => Ok(InputKind::Tmsv),
            _ => Err(CliError::spec(format!("unknown input {s:?}; expected coherent, squeezed or tmsv"))),
        }
    }
}

/// Raw command-line overrides, still as text.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub alpha: Option<String>,
    pub beta: Option<String>,
    /// One value for both modes, or `a,b`.
    pub lambda: Option<String>,
    pub t: Option<String>,
    pub dim: Option<usize>,
    pub loss: Option<String>,
    pub loss_point: Option<String>,
    pub state: Option<String>,
    pub input: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub id: ScenarioId,
    pub overrides: Overrides,
    pub dim_cap: usize,
}

impl ScenarioSpec {
    pub fn new(id: ScenarioId) -> Self {
        Self { id, overrides: Overrides::default(), dim_cap: DEFAULT_DIM_CAP }
    }

    pub fn with(mut self, f: impl FnOnce(&mut Overrides)) -> Self {
        f(&mut self.overrides);
        self
    }
}

/// What a resolved scenario computes before any loss.
#[derive(Debug, Clone, PartialEq)]
pub enum Kind {
    DisplacedPhoton { alpha: CoherentAmplitude },
    Hom,
    /// The input state itself, shown before the circuit.
    Input(CircuitInput),
    Circuit { input: CircuitInput, t: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub scenario: ScenarioId,
    pub state: Option<LossState>,
    pub kind: Kind,
    pub dim: usize,
    /// Loss fraction `1 - eta`.
    pub loss: f64,
    pub loss_point: LossPoint,
}

impl Resolved {
    pub fn is_circuit(&self) -> bool {
        matches!(self.kind, Kind::Circuit { .. })
    }
}

fn sqrt8() -> f64 {
    8f64.sqrt()
}

fn coherent(v: C64) -> CliResult<CoherentAmplitude> {
    Ok(CoherentAmplitude::from_complex(v)?)
}

fn squeezing(v: C64) -> CliResult<SqueezingParameter> {
    Ok(if v.norm() < 1.0 { SqueezingParameter::new(v)? } else { SqueezingParameter::edge(v)? })
}

struct Reader<'a> {
    o: &'a Overrides,
    used: Vec<&'static str>,
}

impl Reader<'_> {
    fn complex(&mut self, flag: &'static str, value: &Option<String>, default: C64) -> CliResult<C64> {
        self.used.push(flag);
        match value {
            Some(s) => parse_complex(s).map_err(|source| CliError::Expr { flag, source }),
            None => Ok(default),
        }
    }

    fn alpha(&mut self, default: C64) -> CliResult<C64> {
        let v = self.o.alpha.clone();
        self.complex("alpha", &v, default)
    }

    fn beta(&mut self, default: C64) -> CliResult<C64> {
        let v = self.o.beta.clone();
        self.complex("beta", &v, default)
    }

    fn t(&mut self, default: f64) -> CliResult<f64> {
        self.used.push("t");
        let t = match &self.o.t {
            Some(s) => parse_real(s).map_err(|source| CliError::Expr { flag: "t", source })?,
            None => default,
        };
        if !(0.0..=1.0).contains(&t) {
            return Err(CliError::spec(format!("--t must lie in [0, 1], got {t}")));
        }
        Ok(t)
    }

    fn lambdas(&mut self, default: (C64, C64)) -> CliResult<(C64, C64)> {
        self.used.push("lambda");
        let Some(s) = &self.o.lambda else { return Ok(default) };
        let parts: Vec<&str> = s.split(',').collect();
        let parse = |p: &str| parse_complex(p).map_err(|source| CliError::Expr { flag: "lambda", source });
        match parts.as_slice() {
            [one] => {
                let v = parse(one)?;
                Ok((v, v))
            }
            [a, b] => Ok((parse(a)?, parse(b)?)),
            _ => Err(CliError::spec("--lambda takes one value or two separated by a comma")),
        }
    }

    fn lambda(&mut self, default: C64) -> CliResult<C64> {
        let (a, b) = self.lambdas((default, default))?;
        if a != b {
            return Err(CliError::spec("this scenario takes a single --lambda"));
        }
        Ok(a)
    }

    fn reject_unused(&self, scenario: ScenarioId, state: Option<LossState>) -> CliResult<()> {
        let given = [
            ("alpha", self.o.alpha.is_some()),
            ("beta", self.o.beta.is_some()),
            ("lambda", self.o.lambda.is_some()),
            ("t", self.o.t.is_some()),
            ("state", self.o.state.is_some()),
            ("input", self.o.input.is_some()),
        ];
        for (flag, present) in given {
            if present && !self.used.contains(&flag) {
                let what = match state {
                    Some(s) => format!("scenario {scenario} with state {}", s.name()),
                    None => format!("scenario {scenario}"),
                };
                return Err(CliError::spec(format!("{what} does not take --{flag}")));
            }
        }
        Ok(())
    }
}

fn coherent_pair(alpha: C64, beta: C64) -> CliResult<CircuitInput> {
    Ok(CircuitInput::coherent_pair(coherent(alpha)?, coherent(beta)?))
}

fn squeezed_pair((a, b): (C64, C64)) -> CliResult<CircuitInput> {
    Ok(CircuitInput::squeezed_pair(squeezing(a)?, squeezing(b)?))
}

/// Parameters for one of the loss-figure states, with its default dim.
fn loss_state_kind(r: &mut Reader<'_>, state: LossState) -> CliResult<(Kind, usize)> {
    let real = |x: f64| C64::new(x, 0.0);
    Ok(match state {
        LossState::Hom => (Kind::Hom, 3),
        LossState::DisplacedPhoton => (Kind::DisplacedPhoton { alpha: coherent(r.alpha(real(sqrt8()))?)? }, 60),
        LossState::DisplacedHom => {
            let a = r.alpha(real(sqrt8()))?;
            let b = r.beta(a)?;
            (Kind::Circuit { input: coherent_pair(a, b)?, t: r.t((2.0f64 / 30.0).sqrt())? }, 40)
        }
        LossState::Tmsv => (Kind::Input(CircuitInput::Tmsv(squeezing(r.lambda(real(1.0 / 3.0))?)?)), 30),
        LossState::NotDiscorrelated => {
            let a = r.alpha(real(sqrt8()))?;
            let b = r.beta(a * C64::new(0.0, 1.0))?;
            (Kind::Circuit { input: coherent_pair(a, b)?, t: r.t(0.5)? }, 40)
        }
        LossState::DiscorrelatedTmsv => {
            let l = squeezing(r.lambda(real(1.0 / 3.0))?)?;
            (Kind::Circuit { input: CircuitInput::Tmsv(l), t: r.t(std::f64::consts::FRAC_1_SQRT_2)? }, 30)
        }
    })
}

/// Applies overrides to the scenario's caption defaults and validates them.
pub fn resolve(spec: &ScenarioSpec) -> CliResult<Resolved> {
    use ScenarioId as S;
    let o = &spec.overrides;
    let mut r = Reader { o, used: Vec::new() };
    let real = |x: f64| C64::new(x, 0.0);
    let one = real(1.0);
    let mut state = None;

    let (kind, default_dim) = match spec.id {
        S::Fig1 => (Kind::DisplacedPhoton { alpha: coherent(r.alpha(real(sqrt8()))?)? }, 40),
        S::Fig3a => {
            let a = r.alpha(real(sqrt8()))?;
            let b = r.beta(a)?;
            (Kind::Input(coherent_pair(a, b)?), 40)
        }
        S::Fig3b | S::Fig3c | S::Fig3d => {
            let a = r.alpha(real(sqrt8()))?;
            let b = r.beta(if spec.id == S::Fig3b { a * C64::new(0.0, 1.0) } else { a })?;
            let t = if spec.id == S::Fig3d { (2.0f64 / 15.0).sqrt() } else { (2.0f64 / 30.0).sqrt() };
            (Kind::Circuit { input: coherent_pair(a, b)?, t: r.t(t)? }, 40)
        }
        S::Fig4a => (Kind::Input(squeezed_pair(r.lambdas((one, one))?)?), 40),
        S::Fig4b | S::Fig4c | S::Fig4d => {
            let default = if spec.id == S::Fig4b { (one, -one) } else { (one, one) };
            let t = if spec.id == S::Fig4d { (2.0f64 / 5.0).sqrt() } else { (2.0f64 / 9.0).sqrt() };
            (Kind::Circuit { input: squeezed_pair(r.lambdas(default)?)?, t: r.t(t)? }, 40)
        }
        S::Fig5a => (Kind::Input(CircuitInput::Tmsv(squeezing(r.lambda(one)?)?)), 30),
        S::Fig5b | S::Fig5c => {
            let t = if spec.id == S::Fig5b { (2.0f64 / 15.0).sqrt() } else { std::f64::consts::FRAC_1_SQRT_2 };
            (Kind::Circuit { input: CircuitInput::Tmsv(squeezing(r.lambda(one)?)?), t: r.t(t)? }, 30)
        }
        S::Fig6a | S::Fig6b | S::Fig6c => {
            r.used.push("state");
            let s = match &o.state {
                Some(name) => name.parse()?,
                None => LossState::DisplacedHom,
            };
            state = Some(s);
            loss_state_kind(&mut r, s)?
        }
        S::Custom => {
            r.used.push("input");
            let input = match &o.input {
                Some(s) => s.parse()?,
                None => InputKind::Coherent,
            };
            let input = match input {
                InputKind::Coherent => {
                    let a = r.alpha(one)?;
                    let b = r.beta(a)?;
                    coherent_pair(a, b)?
                }
                InputKind::Squeezed => squeezed_pair(r.lambdas((real(0.5), real(0.5)))?)?,
                InputKind::Tmsv => CircuitInput::Tmsv(squeezing(r.lambda(real(0.5))?)?),
            };
            (Kind::Circuit { input, t: r.t(std::f64::consts::FRAC_1_SQRT_2)? }, 30)
        }
    };
    r.reject_unused(spec.id, state)?;

    let dim = o.dim.unwrap_or(default_dim);
    if dim > spec.dim_cap {
        return Err(CliError::spec(format!(
            "dim {dim} exceeds the cap of {} (raise {DIM_CAP_ENV} to allow it)",
            spec.dim_cap
        )));
    }
    if dim < 2 {
        return Err(CliError::spec(format!("dim must be at least 2, got {dim}")));
    }

    let loss = match &o.loss {
        Some(s) => parse_real(s).map_err(|source| CliError::Expr { flag: "loss", source })?,
        None => 0.0,
    };
    if !(0.0..=1.0).contains(&loss) {
        return Err(CliError::spec(format!("--loss must lie in [0, 1], got {loss}")));
    }
    let loss_point = match &o.loss_point {
        Some(s) => parse_loss_point(s)?,
        None => LossPoint::AfterDiscorrelation,
    };
    if loss_point != LossPoint::AfterDiscorrelation && !matches!(kind, Kind::Circuit { .. }) {
        return Err(CliError::spec(format!(
            "loss point {} needs a heralded circuit; this scenario has no ancilla stage",
            loss_point_name(loss_point)
        )));
    }
    Ok(Resolved { scenario: spec.id, state, kind, dim, loss, loss_point })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexValue {
    fn from(c: C64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

/// Fully resolved parameters, as recorded in summaries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<&'static str>,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ComplexValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<ComplexValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_a: Option<ComplexValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_b: Option<ComplexValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<ComplexValue>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub lambda_edge: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub dim: usize,
    pub loss: f64,
    pub loss_point: &'static str,
}

fn mode_params(m: &ModeInput) -> (Option<ComplexValue>, Option<ComplexValue>, bool) {
    match m {
        ModeInput::Coherent(a) => (Some(a.value().into()), None, false),
        ModeInput::Squeezed(l) => (None, Some(l.value().into()), l.is_edge()),
        _ => (None, None, false),
    }
}

impl Resolved {
    pub fn parameters(&self) -> Parameters {
        let mut p = Parameters {
            state: self.state.map(LossState::name),
            kind: "",
            alpha: None,
            beta: None,
            lambda_a: None,
            lambda_b: None,
            lambda: None,
            lambda_edge: false,
            t: None,
            dim: self.dim,
            loss: self.loss,
            loss_point: loss_point_name(self.loss_point),
        };
        let fill_input = |p: &mut Parameters, input: &CircuitInput| match input {
            CircuitInput::Separable { a, b } => {
                let (alpha, la, ea) = mode_params(a);
                let (beta, lb, eb) = mode_params(b);
                p.alpha = alpha;
                p.beta = beta;
                p.lambda_a = la;
                p.lambda_b = lb;
                p.lambda_edge = ea || eb;
            }
            CircuitInput::Tmsv(l) => {
                p.lambda = Some(l.value().into());
                p.lambda_edge = l.is_edge();
            }
            CircuitInput::Entangled(_) => {}
        };
        match &self.kind {
            Kind::DisplacedPhoton { alpha } => {
                p.kind = "displaced-photon";
                p.alpha = Some(alpha.value().into());
                p.t = Some(std::f64::consts::FRAC_1_SQRT_2);
            }
            Kind::Hom => p.kind = "hom",
            Kind::Input(input) => {
                p.kind = "input";
                fill_input(&mut p, input);
            }
            Kind::Circuit { input, t } => {
                p.kind = "heralded-circuit";
                fill_input(&mut p, input);
                p.t = Some(*t);
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in ScenarioId::ALL {
            assert_eq!(id.name().parse::<ScenarioId>().unwrap(), id);
        }
        for s in LossState::ALL {
            assert_eq!(s.name().parse::<LossState>().unwrap(), s);
        }
        assert!("fig7".parse::<ScenarioId>().is_err());
    }

    #[test]
    fn fig3b_defaults_follow_caption() {
        let r = resolve(&ScenarioSpec::new(ScenarioId::Fig3b)).unwrap();
        let p = r.parameters();
        assert_eq!(p.alpha, Some(ComplexValue { re: 8f64.sqrt(), im: 0.0 }));
        let beta = p.beta.unwrap();
        assert!(beta.re.abs() < 1e-15 && (beta.im - 8f64.sqrt()).abs() < 1e-15);
        assert_eq!(p.t, Some((2.0f64 / 30.0).sqrt()));
        assert_eq!(r.dim, 40);
    }

    #[test]
    fn overrides_apply() {
        let spec = ScenarioSpec::new(ScenarioId::Fig3c).with(|o| {
            o.alpha = Some("2".into());
            o.t = Some("sqrt(2/15)".into());
            o.dim = Some(30);
        });
        let r = resolve(&spec).unwrap();
        let p = r.parameters();
        assert_eq!(p.alpha, Some(ComplexValue { re: 2.0, im: 0.0 }));
        assert_eq!(p.beta, Some(ComplexValue { re: 2.0, im: 0.0 }));
        assert_eq!(p.t, Some((2.0f64 / 15.0).sqrt()));
    }

    #[test]
    fn rejects_flags_the_scenario_ignores() {
        let spec = ScenarioSpec::new(ScenarioId::Fig1).with(|o| o.t = Some("0.5".into()));
        assert!(matches!(resolve(&spec), Err(CliError::Spec(_))));
        let spec = ScenarioSpec::new(ScenarioId::Fig3c).with(|o| o.lambda = Some("0.5".into()));
        assert!(resolve(&spec).is_err());
        let spec = ScenarioSpec::new(ScenarioId::Fig6a).with(|o| {
            o.state = Some("hom".into());
            o.alpha = Some("1".into());
        });
        assert!(resolve(&spec).is_err());
    }

    #[test]
    fn dim_cap_is_enforced() {
        let mut spec = ScenarioSpec::new(ScenarioId::Fig3c).with(|o| o.dim = Some(65));
        assert!(resolve(&spec).is_err());
        spec.dim_cap = 80;
        assert!(resolve(&spec).is_ok());
    }

    #[test]
    fn edge_squeezing_is_flagged() {
        let r = resolve(&ScenarioSpec::new(ScenarioId::Fig4b)).unwrap();
        let p = r.parameters();
        assert!(p.lambda_edge);
        assert_eq!(p.lambda_b, Some(ComplexValue { re: -1.0, im: 0.0 }));
        let spec = ScenarioSpec::new(ScenarioId::Fig4c).with(|o| o.lambda = Some("1.5".into()));
        assert!(resolve(&spec).is_err());
    }

    #[test]
    fn loss_points_need_a_circuit() {
        let spec = ScenarioSpec::new(ScenarioId::Fig1).with(|o| {
            o.loss = Some("0.1".into());
            o.loss_point = Some("anc".into());
        });
        assert!(resolve(&spec).is_err());
        let spec = ScenarioSpec::new(ScenarioId::Fig6c).with(|o| o.loss_point = Some("herald".into()));
        assert_eq!(resolve(&spec).unwrap().loss_point, LossPoint::BeforeHeraldDetectors);
    }

    #[test]
    fn not_discorrelated_defaults() {
        let spec = ScenarioSpec::new(ScenarioId::Fig6a).with(|o| o.state = Some("not-discorrelated".into()));
        let p = resolve(&spec).unwrap().parameters();
        assert_eq!(p.t, Some(0.5));
        assert!((p.beta.unwrap().im - 8f64.sqrt()).abs() < 1e-15);
    }
}

//! Symbolic connectivity arithmetic for the Taylor tower of the
//! r-immersion functor: connectivity values with infinity, composition and
//! fiber rules, and traced derivations of every tower label.
//!
//! Each derived label carries a [`DerivationTrace`] whose steps cite entries
//! of the [`citation_registry`]; estimates that rest on unproved
//! cocartesianness hypotheses are marked [`Status::Conjectural`] and are only
//! produced when [`TowerParams::conjectural`] is set. For `r = 2` the engine
//! switches to the embedding tower, where the layer and convergence
//! statements are theorems.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("invalid tower parameters: {0}")]
    InvalidParams(String),
    #[error("{rule} is undefined for stage k = {k}")]
    StageOutOfRange { rule: &'static str, k: u32 },
    #[error("hypothesis of clause `{clause}` violated: {detail}")]
    HypothesisViolated {
        clause: &'static str,
        detail: String,
    },
    #[error("a cartesianness estimate needs at least one direction")]
    EmptyCube,
    #[error("{rule} at stage k = {k} is conjectural; set the conjectural flag to emit it")]
    RequiresConjecturalFlag { rule: &'static str, k: u32 },
    #[error("citation anchor `{anchor}` is not registered")]
    UnknownCitation { anchor: String },
    #[error("derivation trace is inconsistent: {detail}")]
    TraceInconsistent { detail: String },
}

/// A connectivity: an integer or infinity. Maps and spaces are `c`-connected
/// for `c` in this set; negative finite values carry no information and are
/// flagged as vacuous in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConnValue {
    Finite(i64),
    Infinite,
}

impl ConnValue {
    pub fn is_finite(self) -> bool {
        matches!(self, ConnValue::Finite(_))
    }

    /// Negative finite connectivities assert nothing.
    pub fn is_vacuous(self) -> bool {
        matches!(self, ConnValue::Finite(v) if v < 0)
    }

    /// Adds an integer; infinity absorbs.
    pub fn shift(self, delta: i64) -> ConnValue {
        match self {
            ConnValue::Finite(v) => ConnValue::Finite(v + delta),
            ConnValue::Infinite => ConnValue::Infinite,
        }
    }

    pub fn min(self, other: ConnValue) -> ConnValue {
        std::cmp::min(self, other)
    }
}

impl PartialOrd for ConnValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConnValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use ConnValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

impl From<i64> for ConnValue {
    fn from(v: i64) -> Self {
        ConnValue::Finite(v)
    }
}

impl fmt::Display for ConnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnValue::Finite(v) => write!(f, "{v}"),
            ConnValue::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for ConnValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ConnValue::Finite(v) => serializer.serialize_i64(*v),
            ConnValue::Infinite => serializer.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for ConnValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ConnVisitor;
        impl Visitor<'_> for ConnVisitor {
            type Value = ConnValue;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or the string \"infinity\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ConnValue, E> {
                Ok(ConnValue::Finite(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ConnValue, E> {
                i64::try_from(v)
                    .map(ConnValue::Finite)
                    .map_err(|_| E::custom("connectivity out of range for i64"))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<ConnValue, E> {
                match s {
                    "infinity" | "∞" => Ok(ConnValue::Infinite),
                    _ => Err(E::custom(format!("unknown connectivity string `{s}`"))),
                }
            }
        }
        deserializer.deserialize_any(ConnVisitor)
    }
}

/// Whether a statement is proved or rests on explicitly flagged
/// hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proved,
    Conjectural,
}

/// Parameters of a tower computation: source dimension `m`, target
/// dimension `n`, multiplicity bound `r`, highest reported stage, and the
/// opt-in flag for conjectural estimates beyond the proved range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerParams {
    pub m: u32,
    pub n: u32,
    pub r: u32,
    pub k_max: u32,
    #[serde(default)]
    pub conjectural: bool,
}

impl TowerParams {
    pub fn new(m: u32, n: u32, r: u32, k_max: u32) -> Result<Self, CalculusError> {
        let p = TowerParams {
            m,
            n,
            r,
            k_max,
            conjectural: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_conjectural(mut self, flag: bool) -> Self {
        self.conjectural = flag;
        self
    }

    pub fn validate(&self) -> Result<(), CalculusError> {
        if self.m < 1 {
            return Err(CalculusError::InvalidParams("m must be at least 1".into()));
        }
        if self.m > self.n {
            return Err(CalculusError::InvalidParams(format!(
                "m = {} exceeds n = {}; the standing assumption is m <= n",
                self.m, self.n
            )));
        }
        if self.r < 2 {
            return Err(CalculusError::InvalidParams(
                "multiplicity bound r must be at least 2".into(),
            ));
        }
        if self.k_max < 1 {
            return Err(CalculusError::InvalidParams(
                "k_max must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// `r = 2` means no two points coincide: the embedding tower.
    pub fn embedding_mode(&self) -> bool {
        self.r == 2
    }

    fn mi(&self) -> i64 {
        self.m as i64
    }

    fn ni(&self) -> i64 {
        self.n as i64
    }

    fn ri(&self) -> i64 {
        self.r as i64
    }
}

/// A registered statement that derivation steps may cite. `assumed` marks
/// estimates resting on hypotheses that remain open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Citation {
    pub anchor: &'static str,
    pub statement: &'static str,
    pub assumed: bool,
}

static CITATIONS: &[Citation] = &[
    Citation {
        anchor: "multiplicity-transversality",
        statement: "A generic family of maps of total dimension d misses a stratum of \
                    codimension c when d < c, making the inclusion of the complement \
                    (c - d - 1)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "r-immersions-into-immersions",
        statement: "The inclusion of the space of immersions without r-fold \
                    self-intersections into all immersions is ((r-1)n - rm - 1)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "configuration-projection",
        statement: "For l > k >= r, forgetting configuration points gives an \
                    ((r-1)n - 1)-connected map between partial configuration spaces.",
        assumed: false,
    },
    Citation {
        anchor: "sphere-at-multiplicity",
        statement: "The space of r points in R^n with no r-fold coincidence, (R^n)^r \
                    minus the thin diagonal, is homotopy equivalent to S^((r-1)n - 1).",
        assumed: false,
    },
    Citation {
        anchor: "complement-connectivity",
        statement: "For every k >= r, the partial configuration space rConf(k, R^n) is \
                    ((r-1)n - 2)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "composition-connectivity",
        statement: "If f and g are k-connected so is g o f; if f is (k-1)-connected and \
                    g o f is k-connected then g is k-connected; if g is (k+1)-connected \
                    and g o f is k-connected then f is k-connected.",
        assumed: false,
    },
    Citation {
        anchor: "fiber-shift",
        statement: "A map is k-connected exactly when all its homotopy fibers are \
                    (k-1)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "iterated-fiber",
        statement: "The total fiber of a cube is the homotopy fiber of the map between \
                    the total fibers of two opposite faces; over the initial vertex it \
                    is the fiber of the map to the punctured-cube homotopy limit.",
        assumed: false,
    },
    Citation {
        anchor: "product-cube-cartesian",
        statement: "Cubes assembled from a finite product by deleting factors (or \
                    collapsing to single factors), with projections as maps, are \
                    homotopy cartesian.",
        assumed: false,
    },
    Citation {
        anchor: "blakers-massey-cube",
        statement: "A strongly cocartesian d-cube whose initial maps are c_i-connected \
                    is (1 - d + sum of the c_i)-cartesian.",
        assumed: false,
    },
    Citation {
        anchor: "linearization-is-immersions",
        statement: "The first Taylor stage of the r-immersion functor (and of the \
                    embedding functor) is the immersion functor.",
        assumed: false,
    },
    Citation {
        anchor: "layer-from-derivative",
        statement: "If the k-th derivative at the empty set is c-connected, the k-th \
                    layer over an m-manifold is (c - km)-connected and the stage map \
                    T_k -> T_(k-1) is (c - km + 1)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "derivative-below-multiplicity",
        statement: "For 2 <= k <= r-1 the k-th derivative of the r-immersion functor \
                    is weakly contractible: its configuration cube is a product cube.",
        assumed: false,
    },
    Citation {
        anchor: "stages-below-multiplicity",
        statement: "For 2 <= k <= r-1 the stage maps T_k -> T_(k-1) of the r-immersion \
                    tower are weak equivalences.",
        assumed: false,
    },
    Citation {
        anchor: "approximation-below-multiplicity",
        statement: "For 1 <= k <= r-1 the map from r-immersions to the k-th Taylor \
                    stage is ((r-1)n - rm - 1)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "diagonal-complement-inclusion",
        statement: "The inclusion of N^r minus the thin diagonal into N^r is \
                    ((r-1)n - 1)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "derivative-at-multiplicity",
        statement: "The r-th derivative is the homotopy fiber of the \
                    ((r-1)n - 1)-connected inclusion of rConf(r, R^n) into the full \
                    product, hence ((r-1)n - 2)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "embedding-derivative",
        statement: "The k-th derivative of the embedding functor is \
                    ((k-1)(n-2))-connected, so T_k Emb -> T_(k-1) Emb is \
                    ((k-1)(n-2) - km + 1)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "embedding-convergence",
        statement: "For a closed m-manifold and codimension n - m >= 2, the map \
                    Emb(M, N) -> T_k Emb(M, N) is (k(n-m-2) - m + 1)-connected.",
        assumed: false,
    },
    Citation {
        anchor: "higher-derivative-estimate",
        statement: "Granting strongly cocartesian fiber cubes for configuration \
                    projections, the Blakers-Massey estimate records the k-th \
                    derivative for k > r as ((k-1)((r-1)n - 1) - r)-connected.",
        assumed: true,
    },
    Citation {
        anchor: "higher-approximation-estimate",
        statement: "Granting convergence of the tower at the expected rate, the k-th \
                    approximation for k >= r is recorded as \
                    (k((r-1)n - m - 2) - m + 1)-connected.",
        assumed: true,
    },
];

pub fn citation_registry() -> &'static [Citation] {
    CITATIONS
}

pub fn lookup_citation(anchor: &str) -> Option<&'static Citation> {
    CITATIONS.iter().find(|c| c.anchor == anchor)
}

/// One step of a derivation: a rule name, rendered inputs, an optional
/// output (structural steps produce none), and a registered citation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub rule: String,
    pub inputs: Vec<String>,
    pub output: Option<ConnValue>,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl DerivationStep {
    fn new(rule: &str, inputs: Vec<String>, output: Option<ConnValue>, citation: &str) -> Self {
        DerivationStep {
            rule: rule.to_string(),
            inputs,
            output,
            citation: citation.to_string(),
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// An ordered list of derivation steps ending in the reported value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTrace {
    pub steps: Vec<DerivationStep>,
}

impl DerivationTrace {
    pub fn conclusion(&self) -> Option<ConnValue> {
        self.steps.last().and_then(|s| s.output)
    }

    /// Whether any step cites an assumed (conjectural) statement.
    pub fn uses_assumption(&self) -> bool {
        self.steps
            .iter()
            .any(|s| lookup_citation(&s.citation).is_some_and(|c| c.assumed))
    }

    pub fn validate(&self) -> Result<(), CalculusError> {
        for step in &self.steps {
            if lookup_citation(&step.citation).is_none() {
                return Err(CalculusError::UnknownCitation {
                    anchor: step.citation.clone(),
                });
            }
        }
        if self.conclusion().is_none() {
            return Err(CalculusError::TraceInconsistent {
                detail: "trace has no concluding value".into(),
            });
        }
        Ok(())
    }
}

/// A connectivity label with its provenance: value, proof status, vacuity
/// flag (finite negative values assert nothing), and full derivation trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnLabel {
    pub value: ConnValue,
    pub status: Status,
    pub vacuous: bool,
    pub trace: DerivationTrace,
}

impl ConnLabel {
    fn from_trace(trace: DerivationTrace) -> Self {
        let value = trace
            .conclusion()
            .expect("labels are built from concluded traces");
        let status = if trace.uses_assumption() {
            Status::Conjectural
        } else {
            Status::Proved
        };
        ConnLabel {
            value,
            status,
            vacuous: value.is_vacuous(),
            trace,
        }
    }

    pub fn validate(&self) -> Result<(), CalculusError> {
        self.trace.validate()?;
        if self.trace.conclusion() != Some(self.value) {
            return Err(CalculusError::TraceInconsistent {
                detail: format!(
                    "label value {} differs from trace conclusion {:?}",
                    self.value,
                    self.trace.conclusion()
                ),
            });
        }
        let expected_status = if self.trace.uses_assumption() {
            Status::Conjectural
        } else {
            Status::Proved
        };
        if self.status != expected_status {
            return Err(CalculusError::TraceInconsistent {
                detail: format!(
                    "label status {:?} disagrees with its citations",
                    self.status
                ),
            });
        }
        if self.vacuous != self.value.is_vacuous() {
            return Err(CalculusError::TraceInconsistent {
                detail: "vacuous flag disagrees with the value".into(),
            });
        }
        Ok(())
    }
}

/// Clause selector for [`compose_conn`]. With `g o f` the composite of
/// `f: X -> Y` and `g: Y -> Z`:
///
/// * `Both`: arguments `(f, g)`, both connectivities known.
/// * `LeftLower`: arguments `(f, composite)`; `f` at least one below the
///   composite recovers the connectivity of `g`.
/// * `RightHigher`: arguments `(composite, g)`; `g` at least one above the
///   composite recovers the connectivity of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionMode {
    Both,
    LeftLower,
    RightHigher,
}

/// Connectivity of compositions, in all three clauses.
pub fn compose_conn(
    a: ConnValue,
    b: ConnValue,
    mode: CompositionMode,
) -> Result<ConnValue, CalculusError> {
    match mode {
        CompositionMode::Both => Ok(a.min(b)),
        CompositionMode::LeftLower => {
            // a = connectivity of f, b = connectivity of g o f.
            if a >= b.shift(-1) {
                Ok(b)
            } else {
                Err(CalculusError::HypothesisViolated {
                    clause: "left_lower",
                    detail: format!("f must be at least ({b} - 1)-connected, got {a}"),
                })
            }
        }
        CompositionMode::RightHigher => {
            // a = connectivity of g o f, b = connectivity of g.
            if b >= a.shift(1) {
                Ok(a)
            } else {
                Err(CalculusError::HypothesisViolated {
                    clause: "right_higher",
                    detail: format!("g must be at least ({a} + 1)-connected, got {b}"),
                })
            }
        }
    }
}

/// Connectivity of the homotopy fiber of a `c`-connected map.
pub fn hofiber_shift(map_conn: ConnValue) -> ConnValue {
    map_conn.shift(-1)
}

/// The generic-position counting rule: a family of dimension `d` misses a
/// stratum of codimension `c`, and the inclusion of the complement is
/// `(c - d - 1)`-connected.
pub fn transversality_conn(bad_codim: i64, family_dim: i64) -> ConnValue {
    ConnValue::Finite(bad_codim - family_dim - 1)
}

/// Blakers-Massey first-order estimate: a strongly cocartesian `d`-cube
/// with `c_i`-connected initial maps is `(sum c_i - d + 1)`-cartesian.
pub fn bm_cartesian_estimate(connectivities: &[ConnValue]) -> Result<ConnValue, CalculusError> {
    if connectivities.is_empty() {
        return Err(CalculusError::EmptyCube);
    }
    let d = connectivities.len() as i64;
    let mut sum = 0i64;
    for c in connectivities {
        match c {
            ConnValue::Infinite => return Ok(ConnValue::Infinite),
            ConnValue::Finite(v) => sum += v,
        }
    }
    Ok(ConnValue::Finite(sum - d + 1))
}

/// The two product-cube shapes (deleting factors towards a point, or
/// collapsing a product onto its factors); both are homotopy cartesian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeShape {
    DeletingProducts,
    CollapsingProducts,
}

pub fn product_cube_cartesianness(shape: CubeShape) -> ConnValue {
    let _ = shape;
    ConnValue::Infinite
}

/// Trace-structuring rule: reduces a total-fiber question for a `d`-cube to
/// a homotopy fiber of total fibers of `(d-1)`-cubes. Produces a step with
/// no output value.
pub fn iterated_fiber_reduce(cube_dim: u32) -> DerivationStep {
    let note = match cube_dim {
        0 => "the total fiber of a 0-cube is the initial space itself".to_string(),
        1 => "the total fiber of a 1-cube is the homotopy fiber of the map".to_string(),
        d => format!(
            "the total fiber of the {d}-cube is the homotopy fiber of the map from the \
             initial space to the punctured-cube homotopy limit"
        ),
    };
    DerivationStep::new(
        "iterated_fiber_reduce",
        vec![format!("cube_dim={cube_dim}")],
        None,
        "iterated-fiber",
    )
    .with_note(note)
}

/// Connectivity of the inclusion of r-immersions into immersions, by the
/// transversality count.
pub fn rimm_to_imm_conn(p: &TowerParams) -> ConnLabel {
    let value = transversality_conn((p.ri() - 1) * p.ni(), p.ri() * p.mi());
    let mut trace = DerivationTrace::default();
    trace.steps.push(
        DerivationStep::new(
            "transversality_conn",
            vec![
                format!("bad_codim=(r-1)n={}", (p.ri() - 1) * p.ni()),
                format!("family_dim=rm={}", p.ri() * p.mi()),
            ],
            Some(value),
            "multiplicity-transversality",
        )
        .with_note("generic position pushes an rm-dimensional family off the r-fold stratum"),
    );
    trace.steps.push(DerivationStep::new(
        "rimm_to_imm_conn",
        vec![
            format!("m={}", p.m),
            format!("n={}", p.n),
            format!("r={}", p.r),
        ],
        Some(value),
        "r-immersions-into-immersions",
    ));
    ConnLabel::from_trace(trace)
}

/// Connectivity of the k-th derivative of the r-immersion functor at the
/// empty set. Defined for k >= 2; stage one is handled by the
/// immersion identification instead.
pub fn derivative_conn(k: u32, p: &TowerParams) -> Result<ConnLabel, CalculusError> {
    p.validate()?;
    if k < 2 {
        return Err(CalculusError::StageOutOfRange {
            rule: "derivative_conn",
            k,
        });
    }
    let mut trace = DerivationTrace::default();
    if k < p.r {
        trace.steps.push(iterated_fiber_reduce(k));
        trace.steps.push(
            DerivationStep::new(
                "product_cube_cartesianness",
                vec!["shape=deleting_products".into()],
                Some(ConnValue::Infinite),
                "product-cube-cartesian",
            )
            .with_note(format!(
                "below the multiplicity bound every rConf(j, R^n) with j <= {k} is the \
                 full product, so the configuration cube is a product cube"
            )),
        );
        trace.steps.push(
            DerivationStep::new(
                "derivative_conn",
                vec![format!("k={k}"), format!("r={}", p.r)],
                Some(ConnValue::Infinite),
                "derivative-below-multiplicity",
            )
            .with_note("total fiber of a homotopy cartesian cube is weakly contractible"),
        );
        return Ok(ConnLabel::from_trace(trace));
    }
    if k == p.r {
        let inclusion = transversality_conn((p.ri() - 1) * p.ni(), 0);
        let value = hofiber_shift(inclusion);
        trace.steps.push(iterated_fiber_reduce(k));
        trace.steps.push(
            DerivationStep::new(
                "product_cube_cartesianness",
                vec!["shape=deleting_products".into()],
                Some(ConnValue::Infinite),
                "product-cube-cartesian",
            )
            .with_note(
                "the punctured configuration cube consists of full products, so its \
                 homotopy limit is (R^n)^r",
            ),
        );
        trace.steps.push(
            DerivationStep::new(
                "transversality_conn",
                vec![
                    format!("bad_codim=(r-1)n={}", (p.ri() - 1) * p.ni()),
                    "family_dim=0".into(),
                ],
                Some(inclusion),
                "diagonal-complement-inclusion",
            )
            .with_note("connectivity of the inclusion of rConf(r, R^n) into the product"),
        );
        trace.steps.push(DerivationStep::new(
            "hofiber_shift",
            vec![format!("map_conn={inclusion}")],
            Some(value),
            "fiber-shift",
        ));
        trace.steps.push(DerivationStep::new(
            "derivative_conn",
            vec![format!("k=r={k}")],
            Some(value),
            "derivative-at-multiplicity",
        ));
        return Ok(ConnLabel::from_trace(trace));
    }
    // k > r.
    if p.embedding_mode() {
        let value = ConnValue::Finite((k as i64 - 1) * (p.ni() - 2));
        trace.steps.push(
            DerivationStep::new(
                "derivative_conn",
                vec![
                    format!("k={k}"),
                    format!("n={}", p.n),
                    "mode=embedding".into(),
                ],
                Some(value),
                "embedding-derivative",
            )
            .with_note("embedding tower: the configuration cube estimate is a theorem"),
        );
        return Ok(ConnLabel::from_trace(trace));
    }
    if !p.conjectural {
        return Err(CalculusError::RequiresConjecturalFlag {
            rule: "derivative_conn",
            k,
        });
    }
    let projections = transversality_conn((p.ri() - 1) * p.ni(), 0);
    let map_estimate = ConnValue::Finite((k as i64 - 1) * ((p.ri() - 1) * p.ni() - 1) - p.ri() + 1);
    let value = hofiber_shift(map_estimate);
    trace.steps.push(
        DerivationStep::new(
            "configuration_projection",
            vec![format!("r={}", p.r), format!("n={}", p.n)],
            Some(projections),
            "configuration-projection",
        )
        .with_note("direction maps of the configuration cube"),
    );
    trace.steps.push(
        DerivationStep::new(
            "cartesian_estimate_recorded",
            vec![format!("k={k}"), format!("directions={}", k - 1)],
            Some(map_estimate),
            "higher-derivative-estimate",
        )
        .with_note(
            "Blakers-Massey applied to presumed strongly cocartesian fiber cubes; \
             the estimate is recorded as stated, not derived from the first-order rules",
        ),
    );
    trace.steps.push(DerivationStep::new(
        "hofiber_shift",
        vec![format!("map_conn={map_estimate}")],
        Some(value),
        "fiber-shift",
    ));
    Ok(ConnLabel::from_trace(trace))
}

/// Connectivity of the k-th layer: derivative connectivity minus `k m`.
pub fn layer_conn(k: u32, p: &TowerParams) -> Result<ConnLabel, CalculusError> {
    let derivative = derivative_conn(k, p)?;
    let value = derivative.value.shift(-(k as i64) * p.mi());
    let mut trace = derivative.trace;
    trace.steps.push(DerivationStep::new(
        "layer_conn",
        vec![
            format!("derivative={}", derivative.value),
            format!("k={k}"),
            format!("m={}", p.m),
        ],
        Some(value),
        "layer-from-derivative",
    ));
    Ok(ConnLabel::from_trace(trace))
}

/// Connectivity of the stage map `T_k -> T_(k-1)`: layer connectivity
/// plus one.
pub fn stage_map_conn(k: u32, p: &TowerParams) -> Result<ConnLabel, CalculusError> {
    let layer = layer_conn(k, p)?;
    let value = layer.value.shift(1);
    let mut trace = layer.trace;
    trace.steps.push(DerivationStep::new(
        "stage_map_conn",
        vec![format!("layer={}", layer.value), format!("k={k}")],
        Some(value),
        "layer-from-derivative",
    ));
    Ok(ConnLabel::from_trace(trace))
}

/// Connectivity of the approximation `rImm -> T_k`.
///
/// For `k <= r - 1` the value is derived in-trace: the transversality count
/// lands on `T_1 = Imm`, the stages below the multiplicity are equivalences,
/// and the composition rule recovers the map into `T_k`. For `k >= r` the
/// generic engine only emits the recorded conjectural rate; the embedding
/// tower (`r = 2`) instead has a convergence theorem.
pub fn approx_conn(k: u32, p: &TowerParams) -> Result<ConnLabel, CalculusError> {
    p.validate()?;
    if k < 1 {
        return Err(CalculusError::StageOutOfRange {
            rule: "approx_conn",
            k,
        });
    }
    if k < p.r {
        let base = rimm_to_imm_conn(p);
        let mut trace = base.trace;
        let value = base.value;
        trace.steps.push(
            DerivationStep::new(
                "stage_one_identification",
                Vec::new(),
                Some(value),
                "linearization-is-immersions",
            )
            .with_note("T_1 rImm is the immersion functor, so rImm -> T_1 has this connectivity"),
        );
        if k >= 2 {
            trace.steps.push(
                DerivationStep::new(
                    "stage_equivalences_below_multiplicity",
                    vec![format!("stages=2..={k}")],
                    Some(ConnValue::Infinite),
                    "stages-below-multiplicity",
                )
                .with_note(format!(
                    "T_{k} -> ... -> T_1 is a weak equivalence since {k} <= r - 1"
                )),
            );
            trace.steps.push(
                DerivationStep::new(
                    "compose_conn",
                    vec![
                        "mode=right_higher".into(),
                        format!("composite={value}"),
                        "g=∞".into(),
                    ],
                    Some(value),
                    "composition-connectivity",
                )
                .with_note(format!(
                    "rImm -> T_1 factors through T_{k}; cancelling the equivalence \
                     recovers the connectivity of rImm -> T_{k}"
                )),
            );
        }
        trace.steps.push(DerivationStep::new(
            "approx_conn",
            vec![format!("k={k}")],
            Some(value),
            "approximation-below-multiplicity",
        ));
        return Ok(ConnLabel::from_trace(trace));
    }
    // k >= r.
    if p.embedding_mode() {
        let value = ConnValue::Finite(k as i64 * (p.ni() - p.mi() - 2) - p.mi() + 1);
        let mut step = DerivationStep::new(
            "approx_conn",
            vec![
                format!("k={k}"),
                format!("m={}", p.m),
                format!("n={}", p.n),
                "mode=embedding".into(),
            ],
            Some(value),
            "embedding-convergence",
        );
        if p.n - p.m < 2 {
            step = step.with_note(
                "codimension below two: outside the stated range of the convergence theorem",
            );
        }
        let trace = DerivationTrace { steps: vec![step] };
        return Ok(ConnLabel::from_trace(trace));
    }
    if !p.conjectural {
        return Err(CalculusError::RequiresConjecturalFlag {
            rule: "approx_conn",
            k,
        });
    }
    let value = ConnValue::Finite(k as i64 * ((p.ri() - 1) * p.ni() - p.mi() - 2) - p.mi() + 1);
    let trace = DerivationTrace {
        steps: vec![DerivationStep::new(
            "convergence_rate_recorded",
            vec![
                format!("k={k}"),
                format!("m={}", p.m),
                format!("n={}", p.n),
                format!("r={}", p.r),
            ],
            Some(value),
            "higher-approximation-estimate",
        )
        .with_note(
            "expected convergence rate, assuming the tower converges; recorded as \
             stated, not derived from the first-order rules",
        )],
    };
    Ok(ConnLabel::from_trace(trace))
}

/// One stage of the tower report. Labels gated behind the conjectural flag
/// are absent, with an explanatory note.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageEntry {
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivative: Option<ConnLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layer: Option<ConnLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage_map: Option<ConnLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<ConnLabel>,
    pub status: Status,
    pub notes: Vec<String>,
}

/// The annotated Taylor tower: per-stage connectivity labels with traces,
/// plus the inclusion into immersions that seeds the whole diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub params: TowerParams,
    pub rimm_to_imm: ConnLabel,
    pub stages: Vec<StageEntry>,
    pub status: Status,
}

impl TowerReport {
    /// Re-checks every label: registered citations, concluding outputs,
    /// status and vacuity consistency, and the fiber relation between
    /// stage maps and layers.
    pub fn validate(&self) -> Result<(), CalculusError> {
        self.params.validate()?;
        self.rimm_to_imm.validate()?;
        for stage in &self.stages {
            for label in [
                &stage.derivative,
                &stage.layer,
                &stage.stage_map,
                &stage.approx,
            ]
            .into_iter()
            .flatten()
            {
                label.validate()?;
            }
            if let (Some(sm), Some(layer)) = (&stage.stage_map, &stage.layer) {
                if hofiber_shift(sm.value) != layer.value {
                    return Err(CalculusError::TraceInconsistent {
                        detail: format!(
                            "stage {} has stage map {} whose fiber shift misses layer {}",
                            stage.k, sm.value, layer.value
                        ),
                    });
                }
            }
            let conjectural = [
                &stage.derivative,
                &stage.layer,
                &stage.stage_map,
                &stage.approx,
            ]
            .into_iter()
            .flatten()
            .any(|l| l.status == Status::Conjectural);
            let expected = if conjectural {
                Status::Conjectural
            } else {
                Status::Proved
            };
            if stage.status != expected {
                return Err(CalculusError::TraceInconsistent {
                    detail: format!("stage {} status flag is inconsistent", stage.k),
                });
            }
        }
        Ok(())
    }
}

/// Assembles the annotated tower diagram for stages `1..=k_max`.
pub fn tower_report(p: &TowerParams) -> Result<TowerReport, CalculusError> {
    p.validate()?;
    let mut stages = Vec::with_capacity(p.k_max as usize);
    for k in 1..=p.k_max {
        let mut notes = Vec::new();
        let take = |result: Result<ConnLabel, CalculusError>,
                    notes: &mut Vec<String>|
         -> Result<Option<ConnLabel>, CalculusError> {
            match result {
                Ok(label) => Ok(Some(label)),
                Err(CalculusError::RequiresConjecturalFlag { rule, k }) => {
                    notes.push(format!(
                        "{rule} at stage {k} is conjectural and omitted; rerun with the \
                         conjectural flag to include it"
                    ));
                    Ok(None)
                }
                Err(other) => Err(other),
            }
        };
        let (derivative, layer, stage_map) = if k == 1 {
            notes.push(
                "stage one is the immersion functor; the approximation is the inclusion \
                 of r-immersions into immersions"
                    .to_string(),
            );
            (None, None, None)
        } else {
            (
                take(derivative_conn(k, p), &mut notes)?,
                take(layer_conn(k, p), &mut notes)?,
                take(stage_map_conn(k, p), &mut notes)?,
            )
        };
        let approx = take(approx_conn(k, p), &mut notes)?;
        let status = if [&derivative, &layer, &stage_map, &approx]
            .into_iter()
            .flatten()
            .any(|l| l.status == Status::Conjectural)
        {
            Status::Conjectural
        } else {
            Status::Proved
        };
        stages.push(StageEntry {
            k,
            derivative,
            layer,
            stage_map,
            approx,
            status,
            notes,
        });
    }
    let status = if stages.iter().any(|s| s.status == Status::Conjectural) {
        Status::Conjectural
    } else {
        Status::Proved
    };
    Ok(TowerReport {
        params: *p,
        rimm_to_imm: rimm_to_imm_conn(p),
        stages,
        status,
    })
}

//! Statement catalog, verdicts, and the per-check report format.
//!
//! A [`TheoremReport`] is the unit of output for one verified statement on
//! one projection pair: a three-valued verdict, a map of labeled Frobenius
//! residuals, any hypothesis flags that gated the check, and a stable
//! fingerprint of the input pair. Maps are ordered and no timestamps are
//! recorded, so serialized reports are byte-stable across reruns.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::exact::ExactMatrix;
use crate::float::FloatMatrix;
use crate::ring::{judged_eq, Decision, StarRing};

pub const SCHEMA: &str = "projcalc/1";

/// Catalog of verified statements. The identifiers are the stable keys
/// used by the CLI, report files, and campaign configs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementId {
    L2_2,
    L2_3,
    L2_5,
    L3_1,
    L3_2_1,
    L3_2_2,
    L3_2_3,
    L3_2_4,
    L3_3,
    T3_4,
    C3_5,
    C3_6,
    R3_8,
    T3_9,
    C3_10,
    T3_11_1,
    T3_11_2,
    T3_11_3,
    T3_13,
}

impl StatementId {
    pub const ALL: [StatementId; 19] = [
        StatementId::L2_2,
        StatementId::L2_3,
        StatementId::L2_5,
        StatementId::L3_1,
        StatementId::L3_2_1,
        StatementId::L3_2_2,
        StatementId::L3_2_3,
        StatementId::L3_2_4,
        StatementId::L3_3,
        StatementId::T3_4,
        StatementId::C3_5,
        StatementId::C3_6,
        StatementId::R3_8,
        StatementId::T3_9,
        StatementId::C3_10,
        StatementId::T3_11_1,
        StatementId::T3_11_2,
        StatementId::T3_11_3,
        StatementId::T3_13,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            StatementId::L2_2 => "L2.2",
            StatementId::L2_3 => "L2.3",
            StatementId::L2_5 => "L2.5",
            StatementId::L3_1 => "L3.1",
            StatementId::L3_2_1 => "L3.2.1",
            StatementId::L3_2_2 => "L3.2.2",
            StatementId::L3_2_3 => "L3.2.3",
            StatementId::L3_2_4 => "L3.2.4",
            StatementId::L3_3 => "L3.3",
            StatementId::T3_4 => "T3.4",
            StatementId::C3_5 => "C3.5",
            StatementId::C3_6 => "C3.6",
            StatementId::R3_8 => "R3.8",
            StatementId::T3_9 => "T3.9",
            StatementId::C3_10 => "C3.10",
            StatementId::T3_11_1 => "T3.11.1",
            StatementId::T3_11_2 => "T3.11.2",
            StatementId::T3_11_3 => "T3.11.3",
            StatementId::T3_13 => "T3.13",
        }
    }

    /// What the check asserts, in the fixed notation `a = pqp`,
    /// `b = pq(1-p)`, `d = (1-p)q(1-p)` for projections `p`, `q`.
    pub fn describe(&self) -> &'static str {
        match self {
            StatementId::L2_2 => "bb* = (p-a)-(p-a)^2 and b*b = d-d^2",
            StatementId::L2_3 => {
                "(p-a)(p-a)+b = b, bdd+ = b, bd+ = (p-a)+b, d+b* = b*(p-a)+, and p-q has an MP inverse"
            }
            StatementId::L2_5 => {
                "(p-pqp)+ = (1-pq)+p, (1-pq)+ = (p-a)+(1+b)+1-p, and both products of 1-pq with its MP inverse equal (p-a)(p-a)+ + 1-p"
            }
            StatementId::L3_1 => "pqp(pqp)+pq = pq",
            StatementId::L3_2_1 => "((1-p)q)+ = q((1-p)q(1-p))+",
            StatementId::L3_2_2 => "p + (1-p)((1-p)q)+ is the projection onto pR + qR",
            StatementId::L3_2_3 => "p - p(p(1-q))+ is the projection onto pR ∩ qR",
            StatementId::L3_2_4 => "pR + qR = R iff (1-p)q(1-p)R = (1-p)R",
            StatementId::L3_3 => "for idempotent e: ee+R = eR and (1-e+e)R = (1-e)R",
            StatementId::T3_4 => {
                "E = ((1-q)p)+ is idempotent with ER = pR ∩ ((1-p)R + (1-q)R) and (1-E)R = ((1-p)R ∩ (1-q)R) ⊕⊥ qR"
            }
            StatementId::C3_5 => {
                "if pR ∩ qR = 0: 1-pq is invertible and ((1-q)p)+ = (1-pq)^{-1} p(1-q), with ((1-q)p)+R = pR"
            }
            StatementId::C3_6 => {
                "if pR + qR = R: ((1-q)p)+R = pR ∩ ((1-p)R + (1-q)R) and (1-((1-q)p)+)R = qR"
            }
            StatementId::R3_8 => "pR ∩ qR = 0 iff 1-pq is invertible",
            StatementId::T3_9 => {
                "F = (1-qp)+(1-q) and G = p(p+q-qp)+ are idempotents with the stated ranges; F+ = 1-qp-dd+ and G+ = 2p-qp-(p-a)(p-a)+"
            }
            StatementId::C3_10 => {
                "if pR ⊕ qR = R: 1-qp and p+q-qp are invertible and the inverse forms of F and G project onto pR along qR"
            }
            StatementId::T3_11_1 => "((1-q)p)+ = (1-qp)+(1-q) iff pR + qR = R",
            StatementId::T3_11_2 => "((1-q)p)+ = p(p+q-qp)+ iff pR ∩ qR = 0",
            StatementId::T3_11_3 => "(1-qp)+(1-q) = p(p+q-qp)+ iff pR ⊕ qR = R",
            StatementId::T3_13 => {
                "1 - p(1-q)(p(1-q)p)+ - (1-p)q((1-p)q(1-p))+ is the projection onto (pR ∩ qR) ⊕⊥ ((1-p)R ∩ (1-q)R)"
            }
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StatementId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown statement id {s:?}"))
    }
}

impl Serialize for StatementId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for StatementId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Outcome of one check. Serialized into the `pass` field as `true`,
/// `false`, or the string `"inconclusive"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Pass => serializer.serialize_bool(true),
            Verdict::Fail => serializer.serialize_bool(false),
            Verdict::Inconclusive => serializer.serialize_str("inconclusive"),
        }
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Verdict;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a boolean or the string \"inconclusive\"")
            }

            fn visit_bool<E: de::Error>(self, v: bool) -> Result<Verdict, E> {
                Ok(if v { Verdict::Pass } else { Verdict::Fail })
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Verdict, E> {
                if v == "inconclusive" {
                    Ok(Verdict::Inconclusive)
                } else {
                    Err(E::custom(format!("unexpected verdict string {v:?}")))
                }
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// Where a generated pair came from, for exact replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedPath {
    pub dim: usize,
    pub trial: u64,
    pub child_seed: u64,
    pub pair_kind: String,
}

/// Result of verifying one statement against one projection pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremReport {
    pub schema: String,
    pub statement_id: StatementId,
    #[serde(rename = "pass")]
    pub verdict: Verdict,
    /// Label of each verified identity to its Frobenius residual. Purely
    /// boolean claims record 0.0 for holds and 1.0 for fails.
    pub residuals: BTreeMap<String, f64>,
    /// Hypothesis gates and context bits relevant to the verdict.
    pub hypothesis_flags: BTreeMap<String, bool>,
    pub pair_fingerprint: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed_path: Option<SeedPath>,
}

impl TheoremReport {
    pub fn new(statement_id: StatementId, pair_fingerprint: String) -> Self {
        TheoremReport {
            schema: SCHEMA.to_string(),
            statement_id,
            verdict: Verdict::Pass,
            residuals: BTreeMap::new(),
            hypothesis_flags: BTreeMap::new(),
            pair_fingerprint,
            seed_path: None,
        }
    }

    fn fail(&mut self) {
        self.verdict = Verdict::Fail;
    }

    /// Downgrade to inconclusive unless a hard failure is already recorded.
    pub fn mark_inconclusive(&mut self, reason: &str) {
        self.hypothesis_flags.insert(reason.to_string(), true);
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inconclusive;
        }
    }

    /// Record the identity `lhs = rhs` under the backend equality test.
    /// A residual inside the guard band around the comparison threshold
    /// leaves the verdict inconclusive instead of deciding either way;
    /// exact backends are never in the band.
    pub fn check_eq<R: StarRing>(&mut self, name: &str, lhs: &R, rhs: &R) {
        let (d, residual) = judged_eq(lhs, rhs);
        self.residuals.insert(name.to_string(), residual);
        self.judge(name, d);
    }

    /// Record a boolean claim as a 0/1 residual.
    pub fn require(&mut self, name: &str, ok: bool) {
        self.residuals.insert(name.to_string(), if ok { 0.0 } else { 1.0 });
        if !ok {
            self.fail();
        }
    }

    /// Record a possibly-marginal decision: a definite false fails, a
    /// marginal answer (either way) leaves the verdict inconclusive.
    pub fn require_decision(&mut self, name: &str, d: Decision) {
        self.residuals
            .insert(name.to_string(), if d.holds { 0.0 } else { 1.0 });
        self.judge(name, d);
    }

    /// Record a raw residual value with an explicit judgment.
    pub fn record_residual(&mut self, name: &str, value: f64, ok: bool) {
        self.residuals.insert(name.to_string(), value);
        if !ok {
            self.fail();
        }
    }

    /// Record a raw residual value judged by a possibly-marginal decision.
    pub fn record_residual_decision(&mut self, name: &str, value: f64, d: Decision) {
        self.residuals.insert(name.to_string(), value);
        self.judge(name, d);
    }

    fn judge(&mut self, name: &str, d: Decision) {
        if d.marginal {
            self.mark_inconclusive(&format!("{name}_marginal"));
        } else if !d.holds {
            self.fail();
        }
    }

    pub fn flag(&mut self, name: &str, value: bool) {
        self.hypothesis_flags.insert(name.to_string(), value);
    }

    pub fn with_seed_path(mut self, seed_path: SeedPath) -> Self {
        self.seed_path = Some(seed_path);
        self
    }

    pub fn is_hard_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().cloned().fold(0.0, f64::max)
    }
}

/// Feed a canonical byte representation of a value into a hash. Exact
/// matrices hash their canonical scalar text, float matrices the IEEE bit
/// patterns, so fingerprints are stable across runs and platforms.
pub trait StableDigest {
    fn digest_update(&self, hasher: &mut Sha256);
}

impl StableDigest for ExactMatrix {
    fn digest_update(&self, hasher: &mut Sha256) {
        hasher.update(self.nrows().to_le_bytes());
        hasher.update(self.ncols().to_le_bytes());
        for r in 0..self.nrows() {
            for c in 0..self.ncols() {
                hasher.update(self.at(r, c).to_string().as_bytes());
                hasher.update([b';']);
            }
        }
    }
}

impl StableDigest for FloatMatrix {
    fn digest_update(&self, hasher: &mut Sha256) {
        hasher.update(self.nrows().to_le_bytes());
        hasher.update(self.ncols().to_le_bytes());
        for r in 0..self.nrows() {
            for c in 0..self.ncols() {
                let z = self.at(r, c);
                hasher.update(z.re.to_le_bytes());
                hasher.update(z.im.to_le_bytes());
            }
        }
    }
}

/// Fingerprint of a `(p, q)` pair: truncated hex SHA-256 over both
/// matrices' canonical encodings.
pub fn pair_fingerprint<R: StableDigest>(p: &R, q: &R) -> String {
    let mut hasher = Sha256::new();
    hasher.update(b"p:");
    p.digest_update(&mut hasher);
    hasher.update(b"q:");
    q.digest_update(&mut hasher);
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(16);
    for byte in digest.iter().take(8) {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statement_ids_round_trip() {
        for id in StatementId::ALL {
            let s = id.as_str();
            assert_eq!(s.parse::<StatementId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{s}\""));
            let back: StatementId = serde_json::from_str(&json).unwrap();
            assert_eq!(back, id);
        }
        assert!("L9.9".parse::<StatementId>().is_err());
        assert_eq!(StatementId::ALL.len(), 19);
    }

    #[test]
    fn verdict_serialization_is_bool_or_string() {
        assert_eq!(serde_json::to_string(&Verdict::Pass).unwrap(), "true");
        assert_eq!(serde_json::to_string(&Verdict::Fail).unwrap(), "false");
        assert_eq!(
            serde_json::to_string(&Verdict::Inconclusive).unwrap(),
            "\"inconclusive\""
        );
        for v in [Verdict::Pass, Verdict::Fail, Verdict::Inconclusive] {
            let json = serde_json::to_string(&v).unwrap();
            let back: Verdict = serde_json::from_str(&json).unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn verdict_transitions() {
        let mut r = TheoremReport::new(StatementId::L2_2, "deadbeef".into());
        assert_eq!(r.verdict, Verdict::Pass);
        r.mark_inconclusive("rank_marginal");
        assert_eq!(r.verdict, Verdict::Inconclusive);
        r.require("must_hold", false);
        assert_eq!(r.verdict, Verdict::Fail);
        // Fail is sticky.
        r.mark_inconclusive("later_marginal");
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.is_hard_fail());
        assert_eq!(r.residuals["must_hold"], 1.0);
    }

    #[test]
    fn marginal_decisions_do_not_hard_fail() {
        let mut r = TheoremReport::new(StatementId::R3_8, "00".into());
        r.require_decision("edge", Decision { holds: false, marginal: true });
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.hypothesis_flags["edge_marginal"], true);
        let mut r2 = TheoremReport::new(StatementId::R3_8, "00".into());
        r2.require_decision("solid", Decision { holds: false, marginal: false });
        assert_eq!(r2.verdict, Verdict::Fail);
    }

    #[test]
    fn borderline_equalities_go_inconclusive_not_fail() {
        use crate::float::FloatMatrix;
        let tol = crate::float::ToleranceConfig::default();
        let a = FloatMatrix::from_real_rows(&[&[1.0]], tol);
        // Threshold for 1x1 unit entries is abs 1e-12 + rel 1e-10, so a
        // gap of 2e-10 is unequal but inside the guard band, and a gap of
        // 1e-3 is a definite violation.
        let near = FloatMatrix::from_real_rows(&[&[1.0 + 2e-10]], tol);
        let far = FloatMatrix::from_real_rows(&[&[1.0 + 1e-3]], tol);
        let clean = FloatMatrix::from_real_rows(&[&[1.0 + 1e-15]], tol);

        let mut r = TheoremReport::new(StatementId::L2_2, "00".into());
        r.check_eq("near", &a, &near);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.hypothesis_flags["near_marginal"], true);

        let mut r = TheoremReport::new(StatementId::L2_2, "00".into());
        r.check_eq("far", &a, &far);
        assert_eq!(r.verdict, Verdict::Fail);

        let mut r = TheoremReport::new(StatementId::L2_2, "00".into());
        r.check_eq("clean", &a, &clean);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.hypothesis_flags.is_empty());
    }

    #[test]
    fn exact_equalities_are_never_marginal() {
        let mut r = TheoremReport::new(StatementId::L2_2, "00".into());
        r.check_eq("same", &ExactMatrix::identity(2), &ExactMatrix::identity(2));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.hypothesis_flags.is_empty());
        r.check_eq("differ", &ExactMatrix::identity(2), &ExactMatrix::zeros(2, 2));
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.hypothesis_flags.is_empty());
    }

    #[test]
    fn report_json_shape_is_stable() {
        let mut r = TheoremReport::new(StatementId::T3_4, "0011223344556677".into());
        r.check_eq(
            "dual_route_agreement",
            &ExactMatrix::identity(2),
            &ExactMatrix::identity(2),
        );
        r.flag("meet_trivial", true);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"schema\":\"projcalc/1\""));
        assert!(json.contains("\"statement_id\":\"T3.4\""));
        assert!(json.contains("\"pass\":true"));
        assert!(json.contains("\"dual_route_agreement\":0.0"));
        // No seed path: the field is omitted entirely.
        assert!(!json.contains("seed_path"));
        let back: TheoremReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.verdict, Verdict::Pass);
        assert_eq!(back.statement_id, StatementId::T3_4);
    }

    #[test]
    fn fingerprints_separate_pairs_and_are_stable() {
        let p = ExactMatrix::diag_i64(&[1, 0]);
        let q = ExactMatrix::diag_i64(&[0, 1]);
        let f1 = pair_fingerprint(&p, &q);
        let f2 = pair_fingerprint(&p, &q);
        assert_eq!(f1, f2);
        assert_eq!(f1.len(), 16);
        // Order matters: (p, q) and (q, p) are different pairs.
        assert_ne!(pair_fingerprint(&p, &q), pair_fingerprint(&q, &p));
        let fl = crate::float::FloatMatrix::identity(2, Default::default());
        let f3 = pair_fingerprint(&fl, &fl);
        assert_eq!(f3.len(), 16);
        assert_ne!(f1, f3);
    }
}

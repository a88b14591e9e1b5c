//! JSON reports of analysis results.

use serde::Serialize;

use crate::ltl::LassoTrace;
use crate::scene::{BcKind, BcVerdict, BoundaryCondition, Scene};
use crate::semantic::SemanticOutcome;
use crate::syntac::SyntacOutcome;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BcRecord {
    pub kind: BcKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<LassoTrace>,
    pub scope: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict_atom: Option<String>,
    pub verdict: Option<BcVerdict>,
}

impl From<&BoundaryCondition> for BcRecord {
    fn from(bc: &BoundaryCondition) -> BcRecord {
        BcRecord {
            kind: bc.kind,
            formula: bc.formula_text(),
            word: bc.word.clone(),
            scope: bc.scope.clone(),
            conflict_atom: bc.conflict_atom.as_ref().map(|a| a.to_string()),
            verdict: bc.verdict.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub sat_calls: u64,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bc_t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bc_w: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scene: String,
    pub algorithm: String,
    pub bcs: Vec<BcRecord>,
    pub stats: Stats,
    /// Why no boundary condition was searched for, if that is the case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Report {
    pub fn new(scene: &Scene, algorithm: &str, bcs: &[BoundaryCondition]) -> Report {
        Report {
            scene: scene.name().to_string(),
            algorithm: algorithm.to_string(),
            bcs: bcs.iter().map(BcRecord::from).collect(),
            stats: Stats::default(),
            reason: None,
        }
    }

    pub fn syntac(scene: &Scene, outcome: &SyntacOutcome) -> Report {
        let mut r = Report::new(scene, "syntacbc", &outcome.bcs);
        if !outcome.extra_goals.is_empty() {
            r.reason = Some(format!("extra goals: [{}]", outcome.extra_goals.join(", ")));
        }
        r
    }

    pub fn semantic(scene: &Scene, outcome: &SemanticOutcome) -> Report {
        let mut r = Report::new(scene, "semanticbc", &outcome.bcs);
        r.stats.bc_t = Some(outcome.count(BcKind::TraceFormula));
        r.stats.bc_w = Some(outcome.count(BcKind::Word));
        r
    }

    pub fn with_stats(mut self, sat_calls: u64, elapsed_ms: u64) -> Report {
        self.stats.sat_calls = sat_calls;
        self.stats.elapsed_ms = elapsed_ms;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{parse, Cube};

    #[test]
    fn record_layout() {
        let s = Scene::parse(
            "[scene]\nname = \"t\"\natoms = [h, p]\n[goals]\ng1 = \"G h\"\ng2 = \"G p\"\n",
        )
        .unwrap();
        let word = LassoTrace::new(
            vec![Cube::parse_literals(["h", "!p"]).unwrap()],
            vec![Cube::top()],
        );
        let bcs = vec![
            BoundaryCondition::syntactic(parse("!h | F !p").unwrap(), s.goal_names()),
            BoundaryCondition::word(word, s.goal_names(), Some("p".into())),
        ];
        let json: serde_json::Value =
            serde_json::from_str(&Report::new(&s, "x", &bcs).with_stats(3, 0).to_json()).unwrap();
        assert_eq!(json["scene"], "t");
        assert_eq!(json["bcs"][0]["kind"], "syntactic");
        assert_eq!(json["bcs"][0]["formula"], "!h | (F !p)");
        assert!(json["bcs"][0].get("word").is_none());
        assert_eq!(
            json["bcs"][1]["word"]["stem"],
            serde_json::json!([["h", "!p"]])
        );
        assert_eq!(json["bcs"][1]["word"]["loop"], serde_json::json!([[]]));
        assert_eq!(json["bcs"][1]["conflict_atom"], "p");
        assert_eq!(json["stats"]["sat_calls"], 3);
        assert!(json.get("reason").is_none());
    }
}

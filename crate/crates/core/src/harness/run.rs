use serde::{Deserialize, Serialize};

use super::{HarnessError, Scenario};
use crate::agent::{thunt, CowPathStat, HuntOptions, HuntOutcome};
use crate::codec::AdviceString;
use crate::geom::EPS;
use crate::oracle::{accessibility, advice_length_bound, make_advice, shortest_path};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub trajectory_inside: bool,
    pub reached_qprime: bool,
    pub qprime_sees_treasure: bool,
    pub advice_within_bound: bool,
    pub cowpaths_within_bound: bool,
    pub treasure_sighted: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.trajectory_inside
            && self.reached_qprime
            && self.qprime_sees_treasure
            && self.advice_within_bound
            && self.cowpaths_within_bound
            && self.treasure_sighted
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.trajectory_inside, "trajectory_inside"),
            (self.reached_qprime, "reached_qprime"),
            (self.qprime_sees_treasure, "qprime_sees_treasure"),
            (self.advice_within_bound, "advice_within_bound"),
            (self.cowpaths_within_bound, "cowpaths_within_bound"),
            (self.treasure_sighted, "treasure_sighted"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub advice: AdviceString,
    pub advice_bits: usize,
    pub advice_bound: usize,
    pub lambda: f64,
    pub rho: f64,
    /// Geodesic distance from start to treasure.
    pub geodesic: f64,
    pub total_length: f64,
    pub first_sight_length: Option<f64>,
    /// `first_sight_length / max(geodesic, 1e-9)`.
    pub ratio: Option<f64>,
    pub max_cowpath_ratio: f64,
    pub cowpaths: Vec<CowPathStat>,
    pub checks: Checks,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.all()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub report: RunReport,
    pub outcome: HuntOutcome,
}

/// Cow-path cost bound for one obstacle.
pub fn cowpath_bound(dmin: f64) -> f64 {
    (9.0 * dmin).max(dmin + 2.0)
}

fn hunt_options(s: &Scenario) -> HuntOptions {
    HuntOptions {
        strict_fatness: s.meta().strict.then_some(s.meta().fatness),
        sample_step: s.meta().sample_step,
        ..Default::default()
    }
}

/// Hunts with the given advice and audits the result.
pub fn hunt_scenario(s: &Scenario, advice: &AdviceString) -> Result<RunResult, HarnessError> {
    let t = s.terrain();
    let spec = accessibility(t, s.treasure())?;
    let geodesic = shortest_path(t, s.start(), s.treasure())?.length;
    let outcome = thunt(t, s.start(), advice, s.treasure(), &hunt_options(s))?;
    let nav = &outcome.navigation;
    let advice_bound = advice_length_bound(geodesic, spec.lambda);
    let checks = Checks {
        trajectory_inside: nav.trajectory.segments().all(|(_, a, b)| t.segment_inside(a, b)),
        reached_qprime: nav.reached_qprime,
        qprime_sees_treasure: t.sees(nav.qprime, s.treasure()),
        advice_within_bound: advice.len() <= advice_bound,
        cowpaths_within_bound: nav.cowpaths.iter().all(|c| c.walked <= cowpath_bound(c.dmin) + EPS),
        treasure_sighted: outcome.first_sight_length.is_some(),
    };
    let report = RunReport {
        advice: advice.clone(),
        advice_bits: advice.len(),
        advice_bound,
        lambda: spec.lambda,
        rho: spec.rho,
        geodesic,
        total_length: outcome.total_length,
        first_sight_length: outcome.first_sight_length,
        ratio: outcome.first_sight_length.map(|f| f / geodesic.max(EPS)),
        max_cowpath_ratio: outcome.max_cowpath_ratio(),
        cowpaths: nav.cowpaths.clone(),
        checks,
    };
    Ok(RunResult { report, outcome })
}

/// Oracle advice followed by the hunt and its audit.
pub fn run_scenario(s: &Scenario) -> Result<RunResult, HarnessError> {
    let advice = make_advice(s.terrain(), s.start(), s.treasure())?;
    hunt_scenario(s, &advice.bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{encode, AdviceTriple};
    use crate::geom::{Point, Polygon, Terrain};
    use crate::harness::ScenarioMeta;

    fn open(treasure: Point) -> Scenario {
        let outer = Polygon::rect(Point::new(-10.0, -10.0), Point::new(10.0, 10.0)).unwrap();
        Scenario::new(Terrain::empty(outer), Point::ORIGIN, treasure, ScenarioMeta::default()).unwrap()
    }

    #[test]
    fn empty_terrain_run() {
        let s = open(Point::new(6.0, 2.0));
        let r = run_scenario(&s).unwrap().report;
        assert!(r.passed(), "{:?}", r.checks.failures());
        assert_eq!(r.lambda, 1.0);
        assert_eq!(r.advice.len(), encode(&AdviceTriple::new(2, 12, 4).unwrap()).len());
        let ratio = r.ratio.unwrap();
        assert!(ratio > 0.8 && ratio <= 1.0 + 1e-9, "{ratio}");
        assert!(r.cowpaths.is_empty());
    }

    #[test]
    fn foreign_advice_is_audited() {
        let s = open(Point::new(6.0, 2.0));
        // Points the agent at a tile far from the treasure.
        let wrong = encode(&AdviceTriple::new(2, -6, -6).unwrap());
        let r = hunt_scenario(&s, &wrong).unwrap().report;
        assert!(!r.passed());
        assert_eq!(r.checks.failures(), vec!["qprime_sees_treasure", "treasure_sighted"]);
    }
}

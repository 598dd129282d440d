use serde::{Deserialize, Serialize};

use super::cowpath::{cow_path, CowPathStat};
use super::{AgentError, Trajectory};
use crate::codec::{decode, AdviceString, AdviceTriple};
use crate::geom::{validate_regular_terrain, Point, RingId, Terrain, EPS};
use crate::oracle::{TileIndex, Tiling};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntOptions {
    /// When set, the terrain must be regular for this fatness bound before
    /// the agent moves.
    pub strict_fatness: Option<f64>,
    /// Spacing used when scanning the trajectory for the first sighting.
    /// Defaults to `min(lambda, 1) / 8` where lambda is the tile side times two.
    pub sample_step: Option<f64>,
    /// Cap on obstacle encounters before the run is declared stuck.
    pub max_encounters: usize,
}

impl Default for HuntOptions {
    fn default() -> Self {
        HuntOptions { strict_fatness: None, sample_step: None, max_encounters: 10_000 }
    }
}

/// What the agent does with the advice alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Navigation {
    pub triple: AdviceTriple,
    pub tiling: Tiling,
    pub qprime: Point,
    pub trajectory: Trajectory,
    pub reached_qprime: bool,
    pub cowpaths: Vec<CowPathStat>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntOutcome {
    pub navigation: Navigation,
    /// Arc length along the trajectory at which the treasure first becomes
    /// visible, if it ever does.
    pub first_sight_length: Option<f64>,
    pub total_length: f64,
}

impl HuntOutcome {
    pub fn max_cowpath_ratio(&self) -> f64 {
        self.navigation.cowpaths.iter().map(CowPathStat::ratio).fold(0.0, f64::max)
    }
}

/// Decodes the advice and walks from `p` toward the centre of the advised
/// tile along the line M through both, detouring around every obstacle the
/// line enters. The treasure position is never consulted.
pub fn navigate(t: &Terrain, p: Point, advice: &AdviceString, opts: &HuntOptions) -> Result<Navigation, AgentError> {
    if let Some(c) = opts.strict_fatness {
        validate_regular_terrain(t, c)?;
    }
    if !t.contains(p) {
        return Err(AgentError::StartOutside(p));
    }
    let triple = decode(advice)?;
    let tiling = Tiling::new(p, triple.a1());
    let tile = TileIndex::new(triple.a2(), triple.a3()).expect("decoded indices are nonzero");
    let qprime = tiling.center(tile);
    if !t.contains(qprime) {
        return Err(AgentError::TargetOutside(qprime));
    }

    let mut trajectory = Trajectory::new(p);
    let mut cowpaths = Vec::new();
    let mut pos = p;
    let dir = qprime - p;
    let param = |x: Point| (x - p).dot(dir) / dir.dot(dir);
    while pos.dist(qprime) > EPS {
        if cowpaths.len() >= opts.max_encounters {
            return Err(AgentError::TooManyEncounters(cowpaths.len()));
        }
        let Some(hit) = t.first_hit(pos, qprime)? else {
            trajectory.push_free(qprime);
            pos = qprime;
            break;
        };
        if hit.travel > 0.0 {
            trajectory.push_free(hit.point);
        }
        if hit.ring == RingId::Outer {
            return Err(AgentError::LeftTerrain(hit.point));
        }
        let stat = cow_path(t, hit.ring, p, qprime, hit.point, &mut trajectory)?;
        if param(stat.rprime) <= param(hit.point) {
            return Err(AgentError::NoProgress(hit.point));
        }
        pos = stat.rprime;
        cowpaths.push(stat);
    }
    Ok(Navigation { triple, tiling, qprime, trajectory, reached_qprime: pos.dist(qprime) <= EPS, cowpaths })
}

/// Arc length at which `q` first becomes visible along `traj`, located by a
/// scan at spacing `step` refined by bisection to 1e-6.
pub fn first_sight(t: &Terrain, traj: &Trajectory, q: Point, step: f64) -> Option<f64> {
    let sees = |x: Point| t.sees(x, q);
    if sees(traj.start()) {
        return Some(0.0);
    }
    let mut base = 0.0;
    for (_, a, b) in traj.segments() {
        let len = a.dist(b);
        let n = (len / step).ceil().max(1.0) as usize;
        for k in 1..=n {
            if sees(a.lerp(b, k as f64 / n as f64)) {
                let (mut lo, mut hi) = ((k - 1) as f64 / n as f64, k as f64 / n as f64);
                while (hi - lo) * len > 1e-6 {
                    let mid = 0.5 * (lo + hi);
                    if sees(a.lerp(b, mid)) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return Some(base + hi * len);
            }
        }
        base += len;
    }
    None
}

/// Full run: navigate from the advice, then measure when `q` is first seen.
pub fn thunt(t: &Terrain, p: Point, advice: &AdviceString, q: Point, opts: &HuntOptions) -> Result<HuntOutcome, AgentError> {
    let navigation = navigate(t, p, advice, opts)?;
    // Tile side 1/a1 is at most lambda/2, so this never exceeds lambda/8.
    let step = opts.sample_step.unwrap_or_else(|| (2.0 * navigation.tiling.side()).min(1.0) / 8.0);
    let first_sight_length = first_sight(t, &navigation.trajectory, q, step);
    let total_length = navigation.trajectory.length();
    Ok(HuntOutcome { navigation, first_sight_length, total_length })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode;
    use crate::geom::Polygon;
    use crate::oracle::make_advice;

    fn big_square() -> Polygon {
        Polygon::rect(Point::new(-10.0, -10.0), Point::new(10.0, 10.0)).unwrap()
    }

    #[test]
    fn empty_terrain_walks_straight() {
        let t = Terrain::empty(big_square());
        let bits = encode(&AdviceTriple::new(2, 2, 1).unwrap());
        let out = thunt(&t, Point::ORIGIN, &bits, Point::new(0.75, 0.75), &HuntOptions::default()).unwrap();
        let nav = &out.navigation;
        assert!(nav.reached_qprime);
        assert_eq!(nav.qprime, Point::new(0.75, 0.25));
        assert!((out.total_length - (0.75f64.powi(2) + 0.25f64.powi(2)).sqrt()).abs() < 1e-12);
        assert!(nav.cowpaths.is_empty());
        // First point s*u on the ray with |q - s*u| = 1.
        let q = Point::new(0.75, 0.75);
        let u = nav.qprime.normalized().unwrap();
        let b = q.dot(u);
        let s = b - (b * b - (q.dot(q) - 1.0)).sqrt();
        assert!((out.first_sight_length.unwrap() - s).abs() <= 1e-6);
    }

    #[test]
    fn obstacle_on_line_is_circumvented() {
        let ob = Polygon::rect(Point::new(2.0, -0.5), Point::new(3.0, 0.5)).unwrap();
        let t = Terrain::new(big_square(), vec![ob]).unwrap();
        let q = Point::new(5.75, 0.25);
        let adv = make_advice(&t, Point::ORIGIN, q).unwrap();
        let out = thunt(&t, Point::ORIGIN, &adv.bits, q, &HuntOptions { strict_fatness: Some(2.0), ..Default::default() }).unwrap();
        let nav = &out.navigation;
        assert!(nav.reached_qprime);
        assert_eq!(nav.qprime, adv.selection.qprime);
        assert_eq!(nav.cowpaths.len(), 1);
        let cp = nav.cowpaths[0];
        assert!(cp.walked <= (9.0 * cp.dmin).max(cp.dmin + 2.0) + 1e-9);
        assert!(t.sees(nav.qprime, q));
        let fs = out.first_sight_length.unwrap();
        assert!(fs > 0.0 && fs <= out.total_length);
        // Every trajectory segment stays in the terrain.
        for (_, a, b) in nav.trajectory.segments() {
            assert!(t.segment_inside(a, b), "{a} -> {b}");
        }
    }

    #[test]
    fn first_sight_is_bisected() {
        let t = Terrain::empty(big_square());
        let mut traj = Trajectory::new(Point::ORIGIN);
        traj.push_free(Point::new(5.0, 0.0));
        let fs = first_sight(&t, &traj, Point::new(5.0, 0.5), 0.1).unwrap();
        let exact = 5.0 - 0.75f64.sqrt();
        assert!((fs - exact).abs() <= 1e-6);
        assert!(fs >= exact);
        assert_eq!(first_sight(&t, &traj, Point::new(0.0, 8.0), 0.1), None);
    }

    #[test]
    fn rejects_bad_inputs() {
        let t = Terrain::empty(big_square());
        let far = encode(&AdviceTriple::new(1, 40, 1).unwrap());
        assert!(matches!(navigate(&t, Point::ORIGIN, &far, &HuntOptions::default()), Err(AgentError::TargetOutside(_))));
        let bad: AdviceString = "1".parse().unwrap();
        assert!(matches!(navigate(&t, Point::ORIGIN, &bad, &HuntOptions::default()), Err(AgentError::Codec(_))));
        let ok = encode(&AdviceTriple::new(2, 1, 1).unwrap());
        assert!(matches!(navigate(&t, Point::new(20.0, 0.0), &ok, &HuntOptions::default()), Err(AgentError::StartOutside(_))));
        let thin = Polygon::rect(Point::new(1.0, 1.0), Point::new(9.0, 1.5)).unwrap();
        let t2 = Terrain::new(big_square(), vec![thin]).unwrap();
        let strict = HuntOptions { strict_fatness: Some(2.0), ..Default::default() };
        assert!(matches!(navigate(&t2, Point::ORIGIN, &ok, &strict), Err(AgentError::Irregular(_))));
    }
}

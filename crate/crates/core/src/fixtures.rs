//! Scene files shipped with the crate.

use crate::scene::Scene;

pub const MPC: &str = include_str!("../fixtures/mpc.scene");
pub const ELEVATOR: &str = include_str!("../fixtures/elevator.scene");
pub const ATM: &str = include_str!("../fixtures/atm.scene");
/// Two goals, the second implied by the first.
pub const EXTRA_GOAL: &str = include_str!("../fixtures/extra_goal.scene");
/// A domain property the goals do not imply.
pub const INFLUENTIAL_DOMAIN: &str = include_str!("../fixtures/influential_domain.scene");

pub const ALL: [(&str, &str); 5] = [
    ("mpc", MPC),
    ("elevator", ELEVATOR),
    ("atm", ATM),
    ("extra_goal", EXTRA_GOAL),
    ("influential_domain", INFLUENTIAL_DOMAIN),
];

/// Parses a shipped scene by name.
pub fn load(name: &str) -> Option<Scene> {
    ALL.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| Scene::parse(text).expect("shipped scene parses"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse() {
        for (name, _) in ALL {
            assert_eq!(load(name).unwrap().name(), name);
        }
        assert!(load("nope").is_none());
    }
}

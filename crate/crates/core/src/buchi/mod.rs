//! Büchi automata: translation from LTL, emptiness, products and DOT output.

mod automaton;
mod emptiness;
mod product;
mod translate;

pub use automaton::{BuchiAutomaton, EdgeKind, Transition};
pub use emptiness::{accepts, find_accepting_lasso, witness, Run};
pub use product::{find_single_fusion_lassos, intersection, synthesis_product, FusionRun};
pub use translate::{simplify, translate};

/// Size limits for automaton construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub state_cap: usize,
    pub transition_cap: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            state_cap: 100_000,
            transition_cap: 2_000_000,
        }
    }
}

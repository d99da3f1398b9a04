//! Bundled blocksworld instances.

use crate::pddl::{ground, parse_domain, parse_problem, Grounded, PddlError};

pub const BLOCKSWORLD: &str = include_str!("../benchmarks/blocksworld.pddl");
pub const BLOCKSWORLD_3: &str = include_str!("../benchmarks/blocksworld-3.pddl");
pub const BLOCKSWORLD_4: &str = include_str!("../benchmarks/blocksworld-4.pddl");
pub const BLOCKSWORLD_21: &str = include_str!("../benchmarks/blocksworld-21.pddl");
pub const BLOCKSWORLD_3_PLAN: &str = include_str!("../benchmarks/blocksworld-3.plan");

/// Extra-parameter variant where `pick-up` and `put-down` also name a table.
pub const BLOCKSWORLD_TABLES: &str = include_str!("../benchmarks/blocksworld-tables.pddl");
pub const BLOCKSWORLD_TABLES_3: &str = include_str!("../benchmarks/blocksworld-tables-3.pddl");

pub fn load(domain: &str, problem: &str) -> Result<Grounded, PddlError> {
    ground(&parse_domain(domain)?, &parse_problem(problem)?)
}

/// Standard blocksworld with `blocks` ∈ {3, 4, 21}.
pub fn blocksworld(blocks: usize) -> Result<Grounded, PddlError> {
    let problem = match blocks {
        3 => BLOCKSWORLD_3,
        4 => BLOCKSWORLD_4,
        21 => BLOCKSWORLD_21,
        _ => {
            return Err(PddlError::Model(crate::Error::InvalidArgument(format!(
                "no bundled blocksworld problem with {blocks} blocks"
            ))))
        }
    };
    load(BLOCKSWORLD, problem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let g = blocksworld(3).unwrap();
        assert_eq!(g.model.universe().len(), 19);
        assert_eq!(blocksworld(4).unwrap().model.universe().len(), 16 + 12 + 1);
        assert_eq!(blocksworld(21).unwrap().model.universe().len(), 505);
        let t = load(BLOCKSWORLD_TABLES, BLOCKSWORLD_TABLES_3).unwrap();
        assert_eq!(t.model.universe().len(), 9 + 6 + 3 + 3 + 1);
        assert!(blocksworld(5).is_err());
    }

    #[test]
    fn initial_state_is_executable() {
        for n in [3, 4, 21] {
            let g = blocksworld(n).unwrap();
            assert!(!g.model.applicable_actions(&g.initial).is_empty());
        }
    }
}

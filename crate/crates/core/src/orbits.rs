//! Periodic orbits of a strongly connected network and their necklaces.
//!
//! A periodic orbit is identified with the necklace formed by the values one
//! node takes over `p` consecutive steps, `p` being the loop number. Periodic
//! states are exactly the states that are constant on every class `U_k`, and
//! one step moves the value of `U_k` to `U_{k+1}`. So a node of `U_0` reads
//! `s_0, s_1, ...` over time iff at the anchor time `U_k` holds `s_{-k mod p}`.

use crate::error::{CbnError, Result};
use crate::graph::{irreducible_components, Partition};
use crate::model::{step, CbnState, Digraph};
use crate::necklace::{enumerate_necklaces, necklace_canonical, Necklace};

/// The orbit of `s`, starting with the state whose base node (node 0) begins
/// the canonical string.
pub fn orbit_from_necklace(
    net: &Digraph,
    partition: &Partition,
    s: &Necklace,
) -> Result<Vec<CbnState>> {
    check_partition(net, partition)?;
    let p = partition.loop_number;
    if s.len() != p {
        return Err(CbnError::Spec(format!(
            "necklace of length {} for loop number {p}",
            s.len()
        )));
    }
    let mut x = CbnState::zeros(net.node_count());
    for (v, &k) in partition.class_of.iter().enumerate() {
        x.set(v, s.bits()[(p - k) % p]);
    }
    let mut orbit = vec![x.clone()];
    let mut cur = step(net, &x)?;
    while cur != x {
        if orbit.len() == p {
            return Err(CbnError::Internal(format!(
                "state built from necklace {s} does not recur within {p} steps"
            )));
        }
        orbit.push(cur.clone());
        cur = step(net, &cur)?;
    }
    Ok(orbit)
}

/// Necklace read off node 0 over `p` consecutive steps of the orbit.
pub fn necklace_from_orbit(
    net: &Digraph,
    partition: &Partition,
    orbit_states: &[CbnState],
) -> Result<Necklace> {
    check_partition(net, partition)?;
    validate_orbit(net, orbit_states)?;
    let p = partition.loop_number;
    let seq: Vec<bool> = (0..p)
        .map(|t| orbit_states[t % orbit_states.len()].get(0))
        .collect();
    necklace_canonical(&seq)
}

/// One `(necklace, orbit)` pair per necklace of length `p`.
pub fn enumerate_orbits(net: &Digraph) -> Result<Vec<(Necklace, Vec<CbnState>)>> {
    let partition = irreducible_components(net)?;
    enumerate_necklaces(partition.loop_number)?
        .into_iter()
        .map(|s| {
            let orbit = orbit_from_necklace(net, &partition, &s)?;
            Ok((s, orbit))
        })
        .collect()
}

/// Checks that `states` is a cycle of the free dynamics listed in time order
/// without repetition.
pub fn validate_orbit(net: &Digraph, states: &[CbnState]) -> Result<()> {
    let Some(first) = states.first() else {
        return Err(CbnError::Validation("empty orbit".into()));
    };
    for (t, x) in states.iter().enumerate() {
        let next = step(net, x)?;
        let expected = states.get(t + 1).unwrap_or(first);
        if &next != expected {
            return Err(CbnError::Validation(format!(
                "state {x} at position {t} is not followed by its successor {next}"
            )));
        }
    }
    if states[1..].contains(first) {
        return Err(CbnError::Validation("orbit lists a state twice".into()));
    }
    Ok(())
}

fn check_partition(net: &Digraph, partition: &Partition) -> Result<()> {
    if partition.class_of.len() == net.node_count() {
        Ok(())
    } else {
        Err(CbnError::Spec(
            "partition was computed for a different network".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{find_orbit, Digraph};
    use std::collections::BTreeSet;

    fn nk(s: &str) -> Necklace {
        s.parse().unwrap()
    }

    #[test]
    fn constant_necklaces_are_fixed_points() {
        let net = fixtures::eight_node_example();
        let part = irreducible_components(&net).unwrap();
        assert_eq!(
            orbit_from_necklace(&net, &part, &nk("11")).unwrap(),
            vec![CbnState::ones(8)]
        );
        assert_eq!(
            orbit_from_necklace(&net, &part, &nk("00")).unwrap(),
            vec![CbnState::zeros(8)]
        );
        assert_eq!(
            necklace_from_orbit(&net, &part, &[CbnState::ones(8)]).unwrap(),
            nk("11")
        );
        assert_eq!(
            necklace_from_orbit(&net, &part, &[CbnState::zeros(8)]).unwrap(),
            nk("00")
        );
    }

    #[test]
    fn alternating_orbit_on_the_example() {
        let net = fixtures::eight_node_example();
        let part = irreducible_components(&net).unwrap();
        let orbit = orbit_from_necklace(&net, &part, &nk("01")).unwrap();
        assert_eq!(orbit.len(), 2);
        assert_eq!(orbit[0].to_string(), "01010101");
        assert_eq!(orbit[1].to_string(), "10101010");
        assert!(orbit.iter().all(|x| part.is_class_constant(x)));
    }

    #[test]
    fn round_trip_on_the_example() {
        let net = fixtures::eight_node_example();
        let part = irreducible_components(&net).unwrap();
        for s in enumerate_necklaces(2).unwrap() {
            let orbit = orbit_from_necklace(&net, &part, &s).unwrap();
            assert_eq!(necklace_from_orbit(&net, &part, &orbit).unwrap(), s);
        }
    }

    #[test]
    fn round_trip_with_chiral_necklaces() {
        // loop number 6 admits the mirror pair 001011 / 001101
        let net = Digraph::cycle(6).unwrap();
        let part = irreducible_components(&net).unwrap();
        for s in enumerate_necklaces(6).unwrap() {
            let orbit = orbit_from_necklace(&net, &part, &s).unwrap();
            assert_eq!(necklace_from_orbit(&net, &part, &orbit).unwrap(), s);
            assert_eq!(orbit.len(), s.period());
        }
    }

    /// Orbits found by running the free dynamics from every state.
    fn exhaustive_orbit_sets(net: &Digraph) -> BTreeSet<BTreeSet<CbnState>> {
        let n = net.node_count();
        (0..1u64 << n)
            .map(|i| {
                let info = find_orbit(net, &CbnState::from_index(n, i)).unwrap();
                info.orbit_states.into_iter().collect()
            })
            .collect()
    }

    #[test]
    fn enumerate_orbits_matches_exhaustive_search() {
        let cases = [
            (fixtures::eight_node_example(), 3),
            (Digraph::cycle(3).unwrap(), 4),
        ];
        for (net, expected) in cases {
            let orbits = enumerate_orbits(&net).unwrap();
            assert_eq!(orbits.len(), expected);
            let found: BTreeSet<BTreeSet<CbnState>> = orbits
                .into_iter()
                .map(|(_, o)| o.into_iter().collect())
                .collect();
            assert_eq!(found, exhaustive_orbit_sets(&net));
        }
        let aperiodic = Digraph::new(2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(enumerate_orbits(&aperiodic).unwrap().len(), 2);
    }

    #[test]
    fn necklace_from_orbit_rejects_non_orbits() {
        let net = fixtures::eight_node_example();
        let part = irreducible_components(&net).unwrap();
        let bogus = vec!["01010101".parse().unwrap()];
        assert!(matches!(
            necklace_from_orbit(&net, &part, &bogus),
            Err(CbnError::Validation(_))
        ));
        assert!(matches!(
            necklace_from_orbit(&net, &part, &[]),
            Err(CbnError::Validation(_))
        ));
    }

    #[test]
    fn wrong_length_necklace_is_rejected() {
        let net = fixtures::eight_node_example();
        let part = irreducible_components(&net).unwrap();
        assert!(matches!(
            orbit_from_necklace(&net, &part, &nk("011")),
            Err(CbnError::Spec(_))
        ));
    }
}

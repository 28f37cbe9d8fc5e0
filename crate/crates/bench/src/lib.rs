//! Shared fixtures for the engine benchmarks.

use eqbound_core::coverage::{generate_coverage, CoverageGenParams};
use eqbound_core::game::{Game, Grouping};
use eqbound_core::spectrum::{generate_scenario, spectrum_game, GenParams, SpectrumFlavor};

/// A seeded interference game with a two-block partition.
pub fn spectrum_fixture(seed: u64, users: usize, channels: usize) -> Game {
    let mut scenario =
        generate_scenario(seed, users, channels, &GenParams::default()).expect("valid fixture");
    scenario.partition = Some(Grouping::from_sizes(vec![2, users - 2], users).expect("partition"));
    spectrum_game(&scenario, SpectrumFlavor::Private).expect("valid scenario")
}

/// A seeded weighted-coverage game with identical action spaces.
pub fn coverage_fixture(seed: u64, users: usize) -> Game {
    generate_coverage(seed, users, &CoverageGenParams::default())
        .expect("valid fixture")
        .to_game()
        .expect("valid system")
        .with_grouping(Grouping::from_sizes(vec![2, users - 2], users).expect("partition"))
        .expect("grouping fits")
}

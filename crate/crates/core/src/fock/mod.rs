//! Non-interacting photons in linear-optical networks: Fock states,
//! permanents, interferometers, Reck meshes, and exact output statistics.

mod distribution;
mod interferometer;
mod permanent;
mod reck;
mod state;

pub use distribution::{
    evolve, evolve_capped, output_amplitude, output_distribution, output_distribution_capped,
    sample_output, OutputDistribution, DEFAULT_CONFIGURATION_CAP,
};
pub use interferometer::{haar_unitary, haar_unitary_from_seed, Interferometer};
pub use permanent::permanent;
pub use reck::{ReckElement, ReckNetwork};
pub use state::{enumerate_sector, sector_size, FockBasisState, PureState};

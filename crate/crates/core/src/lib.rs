//! Elementary cellular automata on finite rings under periodic update modes.
//!
//! Configurations are cyclic bit words with cell 0 as the least significant
//! bit. An [`UpdateMode`] is normalized to a block sequence `(B_0, …, B_{p-1})`;
//! one step of the global map applies the blocks in order, and the cells of a
//! block read the state left by the previous block.

pub mod analysis;
pub mod budget;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod measures;
pub mod rule;
pub mod schedule;
pub mod seed;

pub use analysis::{
    classify_regime, craft_lcm_config, find_absolute_walls, max_cycle_scaling, primorial, primorial_table,
    verify_relative_wall, verify_wall_set, CraftedConfig, Placement, Regime, RegimeThresholds, ScalingRecord, Wall, WallKind,
};
pub use budget::Budget;
pub use config::Configuration;
pub use dynamics::{
    detect_cycle, step, substep, sweep_all, sweep_sample, trajectory, AttractorOutcome, Stepper, SweepReport,
    Trajectory,
};
pub use error::{Error, Result};
pub use measures::{density, energy, normalized_energy, run_series, sample_configs, ConfigSource, MeasureSeries};
pub use rule::{apply_local, Rule};
pub use schedule::{load_mode, sample_mode, save_mode, Constraints, Family, ModeParams, UpdateMode};

//! Planar (yaw-plane) dynamics of a towed cable / sensor-array chain.
//!
//! A surface ship tows a chain of hinged rigid links: a cable discretized
//! into equal segments plus a sensor array hinged at the end. The tow point
//! follows a prescribed maneuver plan; every link obeys a moment balance
//! about its leading node under hydrodynamic drag and the reaction forces
//! of its downstream neighbours. Solving all balances simultaneously gives
//! the yaw angle of each link over time, and with it the trajectory of the
//! array's center of gravity.
//!
//! Modules:
//! - [`model`]: link/fluid parameters, derived properties, config validation
//! - [`shiptrack`]: piecewise ship maneuver plan and exact tow-point kinematics
//! - [`hydro`]: per-link drag densities, integrated forces, drag moment
//! - [`statics`]: steady-state pitch/tension solver and depth estimate
//! - [`dynamics`]: chain kinematics, reaction coupling, the coupled ODE system
//! - [`numerics`]: Gauss-Legendre quadrature, dense linear solve, RK4
//! - [`cli`]: scenario files, simulation driver, CSV output

pub mod cli;
pub mod dynamics;
pub mod hydro;
pub mod model;
pub mod numerics;
pub mod shiptrack;
pub mod statics;
pub mod vec2;

pub use model::{BodyParams, ChainConfig, ChainState, DerivedBodyProps, FluidEnv};
pub use shiptrack::{ShipTrajectory, TowPointKinematics, TrajectoryLeg};
pub use vec2::Vec2;

/// Conversion factor from knots to m/s.
pub const KNOTS_TO_MPS: f64 = 0.514444;

//! Two-stage lateral trajectory planning for vehicles with independent front
//! and rear axle steering.
//!
//! The stack splits planning into a *guidance* stage and a *stabilization*
//! stage:
//!
//! * [`world`] represents the static environment as simple polygons (optionally
//!   extracted from an occupancy grid) and searches a visibility graph with
//!   heading-penalized edge costs to produce a reference polyline.
//! * [`guidance`] parameterizes that polyline by arc length, projects geometry
//!   into the Frenet frame, derives per-step lateral corridors from the obstacle
//!   contours, and assembles the tactical parameter set (weights, bounds,
//!   degradation scaling) handed to the optimizer.
//! * [`vehicle`] holds the speed-scheduled linear single-track prediction model,
//!   its zero-order-hold discretization, and the nonlinear double-track plant
//!   used for closed-loop validation.
//! * [`mpc`] condenses the model over the horizon into a dense convex QP,
//!   solves it with the interior-point method in [`qp`], detects infeasibility
//!   and maintains the fallback trajectory buffer.
//! * [`harness`] runs scenario-driven closed-loop simulations, injects actuator
//!   degradations and forced infeasibility windows, scores runs and emits
//!   CSV traces and SVG plots.
//!
//! See the crate examples for runnable entry points covering each capability,
//! and the `corridor-mpc` binary for the scenario CLI.

pub mod geom;
pub mod guidance;
pub mod harness;
pub mod mpc;
pub mod qp;
pub mod vehicle;
pub mod world;

pub use geom::{Point2, Polygon, Rect};
pub use guidance::{
    build_corridor, build_reference, project_to_frenet, Corridor, CorridorParams, FrenetSample,
    ReferencePath, TacticalParameters,
};
pub use mpc::{MpcConfig, PlannedTrajectory, SolveReport, SolveStatus};
pub use vehicle::{LpvState, PlantState, VehicleParams};
pub use world::{OccupancyGrid, PolygonalWorld, Pose2, VisibilityGraph};

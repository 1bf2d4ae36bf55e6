//! Admission control for interference-constrained link demands.
//!
//! A conflict graph has one vertex per wireless link and an edge between
//! links that cannot be active at the same time. Given per-link time demands
//! and a horizon `T`, this crate provides:
//!
//! - local admission tests ([`admission`]) that each link can evaluate from
//!   its neighborhood alone,
//! - constructive schedulers ([`scheduler`]) that turn a passing test into a
//!   concrete interval schedule,
//! - an exact oracle ([`oracle`]) for the fractional chromatic number and for
//!   the worst-case ratio of every local test,
//! - graph invariants ([`invariants`]) and the closed forms they predict,
//! - generators for the graph families involved ([`generators`]).
//!
//! All arithmetic is exact ([`Rational`]).

pub mod admission;
pub mod demand;
pub mod enumerate;
pub mod error;
pub mod generators;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod schedule;
pub mod scheduler;

pub use demand::DemandVector;
pub use enumerate::Limits;
pub use error::{ConditionFailure, Error, Result};
pub use graph::{ConflictGraph, Link, LinkSpec, NetworkGraph};
pub use rational::{q, Rational};
pub use schedule::{Interval, IntervalSet, Schedule, SetSchedule, ValidationVerdict};

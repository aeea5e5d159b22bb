//! Average throughput of a wireless-powered communication network in which a
//! multi-antenna access point beamforms energy to a single-antenna user during
//! a harvesting phase of fraction `tau` of each block, and the user spends the
//! harvested energy transmitting data back during the remaining `1 - tau`.
//!
//! The crate computes, for both a delay-limited (fixed-rate, outage-driven)
//! and a delay-tolerant (ergodic-rate) uplink:
//!
//! * exact closed forms for the uplink SNR distribution and throughput,
//! * a gamma-distribution approximation and its high-SNR asymptote,
//! * the throughput-optimal harvesting fraction, in closed form where a
//!   closed form exists and by direct search everywhere,
//! * Monte Carlo estimates of the same quantities from independent channel
//!   draws, for cross-validation.
//!
//! Everything here is deterministic: the Monte Carlo estimators are pure
//! functions of their parameters and seed.
//!
//! The crate is `no_std`-compatible (with `alloc`) when built without the
//! default `std` feature; float math then comes from `libm` via `num-traits`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod accum;
pub mod analytic;
pub mod model;
pub mod montecarlo;
pub mod optimize;
pub mod quad;
pub mod specfun;

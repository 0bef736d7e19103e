// SPDX-License-Identifier: Apache-2.0
//! Exact computations in twisted differential cohomology on finite rational
//! models: coefficient rings, twisted de Rham complexes, Čech–Deligne
//! cocycles, twisted Chern–Weil forms, and the anomaly pair (ω, h).

pub mod coeff;
pub mod error;
pub mod eta;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Q;
pub mod anomaly;
pub mod cdga;
pub mod chern;
pub mod deligne;
pub mod forms;
pub mod twisted;
pub mod verify;

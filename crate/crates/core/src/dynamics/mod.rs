// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact quantum evolution for the two-level control problem and the
//! three-level driven transmon.

mod three_level;
mod two_level;

pub use three_level::*;
pub use two_level::*;

// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

pub mod adiabatic;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod interp;
pub mod optimize;
pub mod quadrature;
pub mod remap;
pub mod simplex;
pub mod spectrum;
pub mod trajectory;
pub mod waveform;
pub mod window;

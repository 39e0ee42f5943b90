//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/thinchar.hpp
//! Umbrella header for the library (the CLI front end is in cli.hpp).
//---------------------------------------------------------------------------//
#pragma once

#include "errors.hpp"
#include "exact_law.hpp"
#include "independence_test.hpp"
#include "io.hpp"
#include "pmf.hpp"
#include "power_series.hpp"
#include "rng.hpp"
#include "series_solver.hpp"
#include "special.hpp"
#include "thinning.hpp"

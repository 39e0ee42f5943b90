//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/thinchar.cpp
//---------------------------------------------------------------------------//
#include <iostream>

#include "thinchar/cli.hpp"

int main(int argc, char** argv)
{
    return thinchar::cli::run(argc, argv, std::cout, std::cerr);
}

//---------------------------------------------------------------------------//
// Copyright 2026 thinchar contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file thinchar/errors.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace thinchar
{
//---------------------------------------------------------------------------//
//! Parameter outside the documented domain (a <= 1, |z| > 1, p not in (0,1)).
class DomainError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Precondition of a recursion or solver violated (e.g. P(0) <= 0).
class PreconditionError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! A pmf that cannot be sampled or a malformed probability vector.
class InvalidDistributionError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Dense grid larger than the configured cell cap.
class CapacityError : public std::length_error
{
  public:
    using std::length_error::length_error;
};

//! Not enough observations to build a test.
class InsufficientDataError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Contingency table with a constant margin or a zero expected cell.
class DegenerateTableError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Scalar root finder could not bracket or converge.
class SolverError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

namespace detail
{
template<class E>
inline void require(bool cond, std::string const& msg)
{
    if (!cond)
    {
        throw E(msg);
    }
}
}  // namespace detail

//---------------------------------------------------------------------------//
}  // namespace thinchar

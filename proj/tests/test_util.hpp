#pragma once

#include <doctest.h>

#include "selberg/errors.hpp"

// Passes when `expr` throws selberg::Error of the given kind.
#define CHECK_FAILS_WITH(expr, expected_kind)                            \
  do {                                                                   \
    bool thrown_ = false;                                                \
    try {                                                                \
      (void)(expr);                                                      \
    } catch (const selberg::Error& e_) {                                 \
      thrown_ = true;                                                    \
      CHECK_MESSAGE(e_.kind() == (expected_kind), e_.what());            \
    }                                                                    \
    CHECK_MESSAGE(thrown_, "expected an error from " #expr);             \
  } while (false)

#pragma once

#include <doctest.h>

#include "fockq/linalg.hpp"

// Max-entry closeness with a readable failure message.
#define CHECK_MAT_NEAR(a, b, tol)                                   \
  do {                                                              \
    double r_ = fockq::norm_inf(fockq::Mat((a) - (b)));             \
    INFO("max-entry difference ", r_);                              \
    CHECK(r_ <= (tol));                                             \
  } while (0)

#define CHECK_RMAT_NEAR(a, b, tol)                                  \
  do {                                                              \
    double r_ = fockq::norm_inf(fockq::RMat((a) - (b)));            \
    INFO("max-entry difference ", r_);                              \
    CHECK(r_ <= (tol));                                             \
  } while (0)

// The expression must throw fockq::Error with the given code.
#define CHECK_ERROR_CODE(expr, wanted)                              \
  do {                                                              \
    bool threw_ = false;                                            \
    try {                                                           \
      (void)(expr);                                                 \
    } catch (const fockq::Error& e_) {                              \
      threw_ = true;                                                \
      CHECK(e_.code() == (wanted));                                 \
    }                                                               \
    CHECK_MESSAGE(threw_, "expected an error from " #expr);         \
  } while (0)

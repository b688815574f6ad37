#pragma once

#include <gtest/gtest.h>

#include "h2ror/error.hpp"

namespace h2ror::testing {

template <typename Fn>
void ExpectErrorCode(ErrorCode code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected error " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace h2ror::testing

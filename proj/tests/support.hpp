#pragma once

#include <gtest/gtest.h>

#include "svf/error.hpp"

namespace support {

/// Error code thrown by f; records a test failure when nothing is thrown.
template <typename F>
svf::Errc code_of(F&& f) {
  try {
    f();
  } catch (const svf::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no svf::Error thrown";
  return svf::Errc::InvalidArgument;
}

}  // namespace support

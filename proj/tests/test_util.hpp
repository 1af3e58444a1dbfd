#pragma once

#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>

#include "crtvss/common/error.hpp"

namespace crtvss::testing {

inline int failures = 0;

inline void Expect(bool condition, const std::string& message) {
  if (!condition) {
    throw std::runtime_error("expectation failed: " + message);
  }
}

template <typename Fn>
void ExpectError(ErrorCode code, Fn&& fn, const std::string& message) {
  try {
    fn();
  } catch (const Error& err) {
    if (err.code() != code) {
      throw std::runtime_error("expected " + std::string(ErrorCodeName(code)) + " but got " +
                               err.what() + ": " + message);
    }
    return;
  }
  throw std::runtime_error("expected " + std::string(ErrorCodeName(code)) +
                           " but nothing was thrown: " + message);
}

template <typename Fn>
void RunCase(const std::string& name, Fn&& fn) {
  try {
    fn();
    std::cout << "ok " << name << '\n';
  } catch (const std::exception& ex) {
    ++failures;
    std::cout << "FAIL " << name << ": " << ex.what() << '\n';
  }
}

inline int Summary(const std::string& suite) {
  if (failures != 0) {
    std::cout << suite << ": " << failures << " case(s) failed" << '\n';
    return 1;
  }
  std::cout << suite << ": all cases passed" << '\n';
  return 0;
}

}  // namespace crtvss::testing

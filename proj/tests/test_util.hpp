#pragma once

#include <gtest/gtest.h>

#include <functional>
#include <initializer_list>
#include <vector>

#include "entropic/algebra.hpp"

namespace testutil {

inline entropic::Element el(std::initializer_list<long> xs) {
  std::vector<entropic::BigInt> c;
  for (long x : xs) c.emplace_back(x);
  return entropic::Element(std::move(c));
}

inline std::vector<entropic::Element> els(std::initializer_list<long> xs) {
  std::vector<entropic::Element> out;
  for (long x : xs) out.push_back(entropic::Element::scalar(x));
  return out;
}

/// The code of the Error thrown by f, or a test failure if nothing is thrown.
inline entropic::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const entropic::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return entropic::ErrorCode::ParseError;
}

}  // namespace testutil

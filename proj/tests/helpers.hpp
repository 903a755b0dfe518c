#pragma once

#include "gmra/errors.hpp"

#include <optional>

// Code of the gmra::Error thrown by f, if any.
template <class F>
std::optional<gmra::ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const gmra::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

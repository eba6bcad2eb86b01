#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace gfo {

enum class Errc {
  NotPrime,
  NotIrreducible,
  DegreeMismatch,
  Unsupported,
  DivisionByZero,
  ShapeMismatch,
  FieldMismatch,
  ZeroAtNegativePower,
  ZeroFreeTerm,
  NoAnchorColumn,
  NotParaunitary,
  OddPermutation,
  BudgetExceeded,
  InvalidArgument,
  Parse,
};

const char* errc_name(Errc code);

// Usage and input errors. Mathematical outcomes that batch callers are
// expected to handle (a singular system, an unreached target) travel as
// values through Expected instead.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Minimal stand-in for std::expected (C++23).
template <class T, class E>
class Expected {
 public:
  Expected(T value) : v_(std::in_place_index<0>, std::move(value)) {}  // NOLINT
  Expected(E error) : v_(std::in_place_index<1>, std::move(error)) {}  // NOLINT

  bool has_value() const noexcept { return v_.index() == 0; }
  explicit operator bool() const noexcept { return has_value(); }

  T& value() & { check(); return std::get<0>(v_); }
  const T& value() const& { check(); return std::get<0>(v_); }
  T&& value() && { check(); return std::get<0>(std::move(v_)); }

  const E& error() const {
    if (has_value()) throw std::logic_error("Expected::error() on a value");
    return std::get<1>(v_);
  }

  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }
  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }

 private:
  void check() const {
    if (!has_value()) throw std::logic_error("Expected::value() on an error");
  }

  std::variant<T, E> v_;
};

}  // namespace gfo

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcalc {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
  public:
    explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Incompatible shapes or axis extents (e.g. contraction over unequal extents).
class shape_error : public error {
  public:
    explicit shape_error(const std::string &msg) : error(msg) {}
};

/// Structurally invalid axis pairing (duplicate axes, out-of-range axes, p == q).
class pairing_error : public error {
  public:
    explicit pairing_error(const std::string &msg) : error(msg) {}
};

/// Mixing element domains where an explicit conversion is required.
class domain_mismatch_error : public error {
  public:
    explicit domain_mismatch_error(const std::string &msg) : error(msg) {}
};

/// Text could not be parsed. Carries a character position (0-based offset).
class parse_error : public error {
  public:
    parse_error(const std::string &msg, std::size_t position)
        : error(msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    explicit parse_error(const std::string &msg) : error(msg), position_(0) {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// Evaluation failed, typically a variable without an assigned value.
class eval_error : public error {
  public:
    explicit eval_error(const std::string &msg) : error(msg) {}
};

/// A precondition on an argument was violated (bad permutation, bad order, ...).
class argument_error : public error {
  public:
    explicit argument_error(const std::string &msg) : error(msg) {}
};

} // namespace tcalc

#pragma once

#include <stdexcept>
#include <string>

namespace shapeforge {

enum class Errc {
  internal_arithmetic,   // nonexact division and similar arithmetic bugs
  invalid_argument,
  dimension_mismatch,
  odd_dimension_required,
  no_shape_at_grade,
  indexing,
  column_space_mismatch,
  empty_vocabulary,
  incomplete,
  notation_regression,
  out_of_range,
  parse,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace shapeforge

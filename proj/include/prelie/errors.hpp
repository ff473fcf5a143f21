#pragma once

#include <stdexcept>
#include <string>

namespace prelie {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised with the byte offset of the first offending character.
struct parse_error : error {
  parse_error(const std::string& msg, std::size_t position)
      : error(msg + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
  std::size_t pos;
};

struct not_finite : error {
  using error::error;
};
struct element_mismatch : error {
  using error::error;
};
struct invalid_path : error {
  using error::error;
};
struct unknown_label : error {
  using error::error;
};
struct label_clash : error {
  using error::error;
};
struct not_bijective : error {
  using error::error;
};
struct duplicate_decoration : error {
  using error::error;
};
struct window_overflow : error {
  using error::error;
};
struct nonzero_weight : error {
  using error::error;
};
struct not_commutative : error {
  using error::error;
};
struct unknown_suite : error {
  using error::error;
};

}  // namespace prelie

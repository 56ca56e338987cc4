#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lfpoly {

// Thrown when a label or index is outside its declared range.
class bounds_error : public std::out_of_range {
 public:
  explicit bounds_error(const std::string& what) : std::out_of_range(what) {}
};

// Thrown when vector/matrix dimensions do not match the expected shape.
class dimension_error : public std::invalid_argument {
 public:
  explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

class unbounded_error : public std::runtime_error {
 public:
  explicit unbounded_error(const std::string& what) : std::runtime_error(what) {}
};

class empty_error : public std::runtime_error {
 public:
  explicit empty_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the scale guards before starting an enumeration that would be
// too large for desk-scale exact computation.
class scale_error : public std::runtime_error {
 public:
  explicit scale_error(const std::string& what) : std::runtime_error(what) {}
};

class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

// Ambient-dimension guard. LFPOLY_MAX_DIM overrides the default of 64.
inline int max_dimension() {
  static const int cached = [] {
    if (const char* s = std::getenv("LFPOLY_MAX_DIM")) {
      int v = std::atoi(s);
      if (v > 0) return v;
    }
    return 64;
  }();
  return cached;
}

// Cap on intermediate/final vertex and ray counts in enumerations.
inline constexpr std::size_t max_vertex_count = 100000;

inline void check_dimension_guard(int dim, const std::string& where) {
  if (dim > max_dimension()) {
    throw scale_error(where + ": dimension " + std::to_string(dim) +
                      " exceeds guard " + std::to_string(max_dimension()) +
                      " (set LFPOLY_MAX_DIM to override)");
  }
}

inline void check_count_guard(std::size_t count, const std::string& where) {
  if (count > max_vertex_count) {
    throw scale_error(where + ": count " + std::to_string(count) +
                      " exceeds guard " + std::to_string(max_vertex_count));
  }
}

}  // namespace lfpoly

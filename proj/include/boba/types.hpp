#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace boba {

// Dense 0-based vertex index in [0, n).
using vertex_t = std::uint32_t;
// Edge index / CSR offset. Also indexes the flattened list I++J of length 2m.
using edge_t = std::uint64_t;

inline constexpr edge_t kUnsetRank = std::numeric_limits<edge_t>::max();

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A graph or file whose contents violate a structural invariant.
class malformed_input_error : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class argument_error : public error {
 public:
  using error::error;
};

class precondition_error : public error {
 public:
  using error::error;
};

// A metric whose definition does not apply to the input (e.g. NBR with no edges).
class undefined_metric_error : public error {
 public:
  using error::error;
};

class retry_exhausted_error : public error {
 public:
  using error::error;
};

}  // namespace boba

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "pnhs/core.hpp"
#include "pnhs/semilinear.hpp"

namespace pnhs {

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// Net format:
//   dim <d>
//   action <name> : <d naturals> -> <d naturals>
// '#' starts a comment; blank lines are ignored.
PetriNet parse_net(std::string_view text);
std::string format_net(const PetriNet& net);

// Semilinear format, one linear component per line:
//   linear base <naturals> [ periods ( <naturals> ) ( <naturals> ) ... ]
// An empty file is the empty set; its dimension is taken from `dim`.
SemilinearSet parse_semilinear(std::string_view text, std::optional<std::size_t> dim = std::nullopt);
std::string format_semilinear(const SemilinearSet& set);

std::string read_file(const std::string& path);

}  // namespace pnhs

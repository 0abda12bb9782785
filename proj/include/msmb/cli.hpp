#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "msmb/ints.hpp"
#include "msmb/matrix.hpp"

namespace msmb {

// One batch invocation: a command name plus everything it may consume.
// Identical configurations produce byte-identical output.
struct JobConfig {
  std::optional<SemigroupMatrix> matrix;
  std::optional<std::vector<IntVector>> basis;  // rows as given on the command line
  std::optional<IntVector> x;                   // fiber endpoints for connect
  std::optional<IntVector> y;
  std::optional<std::string> signs;  // sign pattern for the sign game

  Int kernel_ball{0};   // when > 0, verify-markov additionally sweeps this ball
  Int coeff_bound{3};   // relation coefficient bound for closure / complex
  long long search_caps = 0;  // when > 0, overrides the enumeration budget
  std::string format = "text";  // "text" or "json"
  unsigned long seed = 0;       // recorded for reproducibility

  bool strict = false;          // check-* commands exit 1 on a negative answer
  bool ascii = false;           // ASCII gluing notation
  bool all_trees = false;       // every gluing tree instead of the first
  bool intersections = false;   // pairwise cell overlaps in reduction-complex
  bool weak_projection = false; // projected inequalities instead of closure
};

// "5 -3 0" or "5, -3, 0". Throws Error(ParseError) on malformed input and,
// when allow_negative is false, on any negative entry.
IntVector parse_cli_vector(const std::string& text, bool allow_negative);

// Rows separated by ';' or newlines, entries as above.
std::vector<IntVector> parse_cli_rows(const std::string& text, bool allow_negative);

// Executes one command. Returns the process exit status: 0 on success, 1 when
// a check answers false under strict mode (or selftest finds a mismatch),
// 2 on input or configuration errors.
int run(const std::string& command, const JobConfig& cfg, std::ostream& out, std::ostream& err);

// Full argv surface (excluding the program name is fine; both forms work).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace msmb

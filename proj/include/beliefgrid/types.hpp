#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace beliefgrid {

/// Optimization sense of a model. Internally the solver always minimizes;
/// reward models are negated on entry and un-negated on exit.
enum class Objective { Minimize, Maximize };

/// Norm used for nearest-neighbor assignment on the probability simplex.
enum class SimplexNorm { L1, L2, Linf };

// Error taxonomy. Config/usage problems and numeric/model problems are kept
// as distinct types because the CLI maps them to different exit codes.

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bayes correction received an observation with (near-)zero predictive mass.
struct ZeroLikelihoodError : NumericError {
  explicit ZeroLikelihoodError(const std::string& msg) : NumericError(msg) {}
};

/// A posterior-density support intersection came out empty.
struct EmptySupportError : NumericError {
  explicit EmptySupportError(const std::string& msg) : NumericError(msg) {}
};

/// A transition row failed the stochasticity check (sum != 1 beyond tolerance).
struct NonStochasticRowError : NumericError {
  explicit NonStochasticRowError(const std::string& msg) : NumericError(msg) {}
};

/// An iterative routine hit its iteration cap before meeting tolerance.
struct IterationCapError : NumericError {
  explicit IterationCapError(const std::string& msg) : NumericError(msg) {}
};

inline const char* objective_name(Objective o) {
  return o == Objective::Minimize ? "minimize" : "maximize";
}

inline const char* norm_name(SimplexNorm m) {
  switch (m) {
    case SimplexNorm::L1: return "l1";
    case SimplexNorm::L2: return "l2";
    default: return "linf";
  }
}

}  // namespace beliefgrid

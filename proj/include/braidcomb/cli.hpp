#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "braidcomb/presentation.hpp"
#include "braidcomb/slp_eq.hpp"

namespace braidcomb {

struct RunConfig {
  SurfaceParams params;
  int lambda = 64;
  std::uint64_t exact_threshold = 1'000'000;
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = EqOptions{}.seed;
  bool json = false;
  bool show_eval = false;

  EqOptions eq_options() const {
    return EqOptions{lambda, exact_threshold, seed};
  }
};

/// Runs the command line tool on the given arguments (without argv[0]).
/// Exit codes: 0 success/equal, 1 unequal, 2 any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace braidcomb

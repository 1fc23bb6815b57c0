#pragma once

// Command-line front end.  All logic lives here so tests can drive it
// in-process; tools/qdesign.cpp only forwards argv.
//
// Exit codes: 0 success, 1 result inconsistent with --expect, 2 usage or
// input error, 3 resource limit, 4 internal error.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qdesign/order_solver.hpp"
#include "qdesign/symmetry.hpp"

namespace qdesign {

enum class Method { Exact, Theorem, Both };

struct QueryResult {
  std::string symmetry;
  std::optional<long long> n;  // absent for custom specs
  std::optional<long long> k;
  Method method = Method::Both;
  std::optional<DesignOrder> order;    // exact answer, or theorem answer for Method::Theorem
  std::optional<DesignOrder> theorem;  // when covered and requested
  bool covered = false;
  std::optional<bool> agreement;  // Method::Both on covered instances
  double timing_ms = 0;
};

QueryResult run_query(const SymmetrySpec& spec, long long n, long long k, Method method,
                      const SearchOptions& options = default_search_options());

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdesign

#include "qdesign/cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qdesign/errors.hpp"
#include "qdesign/oracles.hpp"

namespace qdesign {

QueryResult run_query(const SymmetrySpec& spec, long long n, long long k, Method method, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  QueryResult r;
  r.symmetry = std::string(to_string(spec.kind));
  if (spec.is_builtin()) {
    r.n = n;
    r.k = k;
    constraint_system(spec, n, k);  // validates n and k
  }
  r.method = method;
  const std::optional<DesignOrder> theorem = theorem_order(spec, n, k);
  r.covered = theorem.has_value();
  if (method != Method::Exact) r.theorem = theorem;
  if (method == Method::Theorem) {
    r.order = theorem;
  } else {
    r.order = max_design_order(spec, n, k, options);
    if (method == Method::Both && theorem) r.agreement = (*theorem == *r.order);
  }
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

using json = nlohmann::ordered_json;

constexpr int kExpectFailed = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;
constexpr int kInternal = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json big_json(const BigInt& v) {
  static const BigInt limit = BigInt(1) << 62;
  if (abs(v) < limit) return v.convert_to<long long>();
  return v.str();
}

json vector_json(const IntegerVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(big_json(v(i)));
  return out;
}

json order_json(const std::optional<DesignOrder>& order) {
  if (!order) return nullptr;
  if (!order->is_finite()) return "infinite";
  return json{{"finite", big_json(order->t_max)}};
}

std::string order_text(const std::optional<DesignOrder>& order) {
  if (!order) return "n/a";
  return order->is_finite() ? order->t_max.str() : "inf";
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Theorem: return "theorem";
    case Method::Both: return "both";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "exact") return Method::Exact;
  if (s == "theorem") return Method::Theorem;
  return Method::Both;
}

json agreement_json(const QueryResult& r) {
  if (!r.agreement) return "n/a";
  return *r.agreement;
}

std::string agreement_text(const QueryResult& r) {
  if (!r.agreement) return "n/a";
  return *r.agreement ? "yes" : "NO";
}

json query_json(const QueryResult& r, bool with_timing) {
  json j;
  j["symmetry"] = r.symmetry;
  j["n"] = r.n ? json(*r.n) : json(nullptr);
  j["k"] = r.k ? json(*r.k) : json(nullptr);
  j["order"] = order_json(r.order);
  j["certificate"] = (r.order && r.order->certificate) ? vector_json(r.order->certificate->vector) : json(nullptr);
  j["method"] = method_name(r.method);
  j["covered"] = r.covered;
  j["agreement"] = agreement_json(r);
  if (with_timing) j["timing_ms"] = std::round(r.timing_ms * 1000) / 1000;
  return j;
}

struct Expectation {
  enum class Kind { Design, NoDesign, Finite, Infinite } kind;
  BigInt value;
};

std::optional<Expectation> parse_expect(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "design") return Expectation{Expectation::Kind::Design, 0};
  if (text == "no-design") return Expectation{Expectation::Kind::NoDesign, 0};
  if (text == "infinite") return Expectation{Expectation::Kind::Infinite, 0};
  if (text.rfind("finite:", 0) == 0) {
    const std::string digits = text.substr(7);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
      return Expectation{Expectation::Kind::Finite, BigInt(digits)};
  }
  throw UsageError("--expect must be one of design, no-design, finite:N, infinite (got '" + text + "')");
}

// Parsed flags shared by all subcommands.
struct Flags {
  std::string symmetry;
  std::string custom;
  long long n = -1;
  long long k = -1;
  long long t = -1;
  long long n_from = -1;
  long long n_to = -1;
  std::string method = "both";
  bool json = false;
  bool csv = false;
  unsigned jobs = 1;
  std::uint64_t node_budget = 0;
  std::string expect;
  std::string fixture;
};

SymmetrySpec resolve_spec(const Flags& f, std::ostream& err) {
  if (!f.custom.empty()) {
    err << "warning: custom spec '" << f.custom
        << "': results assume the gate set is semi-universal for the stated symmetry\n";
    return load_custom(f.custom);
  }
  if (f.symmetry.empty()) throw UsageError("one of --symmetry or --custom is required");
  if (f.n < 0 || f.k < 0) throw UsageError("--n and --k are required with --symmetry");
  return SymmetrySpec::builtin(parse_symmetry_kind(f.symmetry));
}

SearchOptions search_options(const Flags& f) {
  SearchOptions options = default_search_options();
  if (f.node_budget) options.node_budget = f.node_budget;
  options.jobs = f.jobs;
  return options;
}

void print_interval(const ResourceLimitError& e, std::ostream& out, bool as_json, json context) {
  if (as_json) {
    context["error"] = "resource-limit";
    context["message"] = e.what();
    context["t_max_interval"] = (e.lower() && e.upper()) ? json::array({big_json(*e.lower()), big_json(*e.upper())})
                                                         : json(nullptr);
    out << context.dump(2) << "\n";
    return;
  }
  out << "t_max: unknown";
  if (e.lower() && e.upper()) out << ", within [" << *e.lower() << ", " << *e.upper() << "]";
  out << " (resource limit)\n";
}

// Design/no-design verdict at t implied by an order.
bool design_at(const DesignOrder& order, long long t) { return !order.is_finite() || BigInt(t) <= order.t_max; }

int check_order_expectation(const std::optional<Expectation>& expect, const std::optional<DesignOrder>& order,
                            long long t, std::ostream& err) {
  if (!expect) return 0;
  bool ok = false;
  std::string wanted;
  switch (expect->kind) {
    case Expectation::Kind::Infinite:
      ok = order && !order->is_finite();
      wanted = "infinite";
      break;
    case Expectation::Kind::Finite:
      ok = order && order->is_finite() && order->t_max == expect->value;
      wanted = "finite:" + expect->value.str();
      break;
    case Expectation::Kind::Design:
    case Expectation::Kind::NoDesign: {
      if (t < 0) throw UsageError("--expect design/no-design needs --t");
      const bool want = expect->kind == Expectation::Kind::Design;
      ok = order && design_at(*order, t) == want;
      wanted = std::string(want ? "design" : "no-design") + " at t=" + std::to_string(t);
      break;
    }
  }
  if (ok) return 0;
  err << "expectation failed: wanted " << wanted << ", got t_max=" << order_text(order) << "\n";
  return kExpectFailed;
}

std::optional<Expectation> parse_verdict_expect(const std::string& text) {
  auto expect = parse_expect(text);
  if (expect && expect->kind != Expectation::Kind::Design && expect->kind != Expectation::Kind::NoDesign)
    throw UsageError("oracle commands accept only --expect design or --expect no-design");
  return expect;
}

int check_verdict_expectation(const std::optional<Expectation>& expect, bool is_design, std::ostream& err) {
  if (!expect) return 0;
  const bool want = expect->kind == Expectation::Kind::Design;
  if (want == is_design) return 0;
  err << "expectation failed: wanted " << (want ? "design" : "no-design") << ", oracle says "
      << (is_design ? "design" : "no-design") << "\n";
  return kExpectFailed;
}

int cmd_order(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto expect = parse_expect(f.expect);
  if (expect && f.t < 0 &&
      (expect->kind == Expectation::Kind::Design || expect->kind == Expectation::Kind::NoDesign))
    throw UsageError("--expect design/no-design needs --t");
  const Method method = parse_method(f.method);
  const SymmetrySpec spec = resolve_spec(f, err);
  if (!spec.is_builtin() && method == Method::Theorem) throw UsageError("--custom supports the exact method only");
  const long long n = spec.is_builtin() ? f.n : 0;
  const long long k = spec.is_builtin() ? f.k : 0;

  QueryResult r;
  try {
    r = run_query(spec, n, k, spec.is_builtin() ? method : Method::Exact, search_options(f));
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    json context;
    context["symmetry"] = std::string(to_string(spec.kind));
    context["n"] = spec.is_builtin() ? json(n) : json(nullptr);
    context["k"] = spec.is_builtin() ? json(k) : json(nullptr);
    print_interval(e, out, f.json, context);
    return kResource;
  }

  if (f.json) {
    out << query_json(r, true).dump(2) << "\n";
  } else {
    out << "symmetry:    " << r.symmetry;
    if (r.n) out << " n=" << *r.n << " k=" << *r.k;
    out << "\n";
    out << "method:      " << method_name(r.method) << "\n";
    if (r.order) {
      out << "t_max:       " << order_text(r.order);
      out << (r.order->is_finite() ? "  (t-design iff t <= " + r.order->t_max.str() + ")" : "  (t-design for every t)")
          << "\n";
      if (r.order->certificate)
        out << "certificate: " << to_string(r.order->certificate->vector) << "  cost " << r.order->certificate->cost
            << "\n";
    } else {
      out << "t_max:       not covered by the closed forms\n";
    }
    if (r.method == Method::Both) out << "theorem:     " << (r.theorem ? order_text(r.theorem) : "not covered") << "\n";
    out << "agreement:   " << agreement_text(r) << "\n";
  }
  err << "order: " << std::fixed << std::setprecision(1) << r.timing_ms << " ms\n";
  if (r.agreement && !*r.agreement) err << "warning: exact and theorem answers disagree\n";
  return check_order_expectation(expect, r.order, f.t, err);
}

int cmd_table(const Flags& f, std::ostream& out, std::ostream& err) {
  if (!f.custom.empty()) throw UsageError("table works with built-in symmetries only");
  if (f.symmetry.empty() || f.k < 0 || f.n_from < 0 || f.n_to < 0)
    throw UsageError("table needs --symmetry, --k, --n-from and --n-to");
  if (f.n_from < f.k + 1) throw UsageError("--n-from must be at least k+1");
  if (f.n_to < f.n_from) throw UsageError("--n-to must not be below --n-from");
  if (f.json && f.csv) throw UsageError("--json and --csv are mutually exclusive");
  const SymmetrySpec spec = SymmetrySpec::builtin(parse_symmetry_kind(f.symmetry));
  const Method method = parse_method(f.method);
  const SearchOptions options = search_options(f);

  std::vector<QueryResult> rows;
  for (long long n = f.n_from; n <= f.n_to; ++n) {
    try {
      rows.push_back(run_query(spec, n, f.k, method, options));
    } catch (const ResourceLimitError& e) {
      err << "error: n=" << n << ": " << e.what() << "\n";
      json context;
      context["symmetry"] = f.symmetry;
      context["n"] = n;
      context["k"] = f.k;
      print_interval(e, out, f.json, context);
      return kResource;
    }
    err << "table: n=" << n << " done (" << std::fixed << std::setprecision(1) << rows.back().timing_ms << " ms)\n";
  }

  auto exact_cell = [&](const QueryResult& r) { return method == Method::Theorem ? std::string("-") : order_text(r.order); };
  auto theorem_cell = [&](const QueryResult& r) {
    if (method == Method::Exact) return std::string("-");
    return r.covered ? order_text(r.theorem) : std::string("n/a");
  };

  if (f.json) {
    json doc;
    doc["symmetry"] = f.symmetry;
    doc["k"] = f.k;
    doc["method"] = method_name(method);
    doc["rows"] = json::array();
    for (const auto& r : rows) doc["rows"].push_back(query_json(r, false));
    out << doc.dump(2) << "\n";
    return 0;
  }
  if (f.csv) {
    out << "n,exact,theorem,match\n";
    for (const auto& r : rows) out << *r.n << "," << exact_cell(r) << "," << theorem_cell(r) << "," << agreement_text(r) << "\n";
    return 0;
  }
  std::vector<std::array<std::string, 4>> cells{{"n", "exact", "theorem", "match"}};
  for (const auto& r : rows) cells.push_back({std::to_string(*r.n), exact_cell(r), theorem_cell(r), agreement_text(r)});
  std::array<std::size_t, 4> width{};
  for (const auto& row : cells)
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < 4; ++c) {
      line += row[c];
      if (c + 1 < 4) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << line << "\n";
  }
  return 0;
}

int cmd_collision(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto expect = parse_verdict_expect(f.expect);
  if (f.t < 0) throw UsageError("--t is required");
  const SymmetrySpec spec = resolve_spec(f, err);
  const long long n = spec.is_builtin() ? f.n : 0;
  const long long k = spec.is_builtin() ? f.k : 0;
  const IrrepTable table = irrep_table(spec, n);
  const ConstraintSystem system = constraint_system(spec, n, k);
  const std::uint64_t budget = f.node_budget ? f.node_budget : kDefaultEnumerationBudget;

  json context;
  context["oracle"] = "collision";
  context["symmetry"] = std::string(to_string(spec.kind));
  context["n"] = spec.is_builtin() ? json(n) : json(nullptr);
  context["k"] = spec.is_builtin() ? json(k) : json(nullptr);
  context["t"] = f.t;

  CollisionReport report;
  try {
    report = collision_exists(table, system, f.t, budget);
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    if (f.json) {
      context["error"] = "resource-limit";
      context["message"] = e.what();
      out << context.dump(2) << "\n";
    } else {
      out << "collision: unknown (resource limit)\n";
    }
    return kResource;
  }

  if (f.json) {
    context["found"] = report.found;
    context["weight"] = report.weight ? big_json(*report.weight) : json(nullptr);
    context["pair"] = report.pair ? json::array({vector_json(report.pair->first), vector_json(report.pair->second)})
                                  : json(nullptr);
    context["enumerated"] = report.enumerated;
    out << context.dump(2) << "\n";
  } else {
    out << "collision oracle: " << to_string(spec.kind);
    if (spec.is_builtin()) out << " n=" << n << " k=" << k;
    out << " t=" << f.t << "\n";
    out << "found:      " << (report.found ? "yes" : "no") << "\n";
    if (report.found) {
      out << "weight:     " << *report.weight << "\n";
      out << "y:          " << to_string(report.pair->first) << "\n";
      out << "y':         " << to_string(report.pair->second) << "\n";
    }
    out << "enumerated: " << report.enumerated << "\n";
  }
  return check_verdict_expectation(expect, !report.found, err);
}

int cmd_moment(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto expect = parse_verdict_expect(f.expect);
  if (f.t < 0) throw UsageError("--t is required");
  json context;
  context["oracle"] = "moment";
  CommutantReport report;
  if (!f.fixture.empty()) {
    if (!f.symmetry.empty() || !f.custom.empty()) throw UsageError("--fixture excludes --symmetry and --custom");
    const GateSetFixture fx = fixture(f.fixture);
    context["fixture"] = fx.name;
    context["symmetry"] = std::string(to_string(fx.spec.kind));
    context["n"] = fx.n;
    context["k"] = nullptr;
    context["t"] = f.t;
    err << "fixture: " << fx.description << "\n";
    report = commutant_check(fx.spec, fx.generators, fx.n, f.t);
  } else {
    if (!f.custom.empty()) throw UsageError("the moment oracle supports built-in symmetries only");
    const SymmetrySpec spec = resolve_spec(f, err);
    context["symmetry"] = std::string(to_string(spec.kind));
    context["n"] = f.n;
    context["k"] = f.k;
    context["t"] = f.t;
    report = commutant_check(spec, f.n, f.k, f.t);
  }
  if (f.json) {
    context["dim_gateset"] = report.dim_gateset;
    context["dim_full"] = report.dim_full;
    context["is_design"] = report.is_design;
    out << context.dump(2) << "\n";
  } else {
    out << "moment oracle: ";
    if (context.contains("fixture")) out << "fixture " << context["fixture"].get<std::string>();
    else out << context["symmetry"].get<std::string>() << " n=" << f.n << " k=" << f.k;
    out << " t=" << f.t << "\n";
    out << "dim_gateset: " << report.dim_gateset << "\n";
    out << "dim_full:    " << report.dim_full << "\n";
    out << "is_design:   " << (report.is_design ? "true" : "false") << "\n";
  }
  return check_verdict_expectation(expect, report.is_design, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact maximal design order of symmetric local random circuits", "qdesign"};
  app.require_subcommand(1);
  Flags f;

  auto symmetry_flags = [&](CLI::App* cmd) {
    auto* sym = cmd->add_option("--symmetry", f.symmetry, "built-in symmetry")
                    ->check(CLI::IsMember({"z2", "u1", "su2"}, CLI::ignore_case));
    auto* custom = cmd->add_option("--custom", f.custom, "custom symmetry JSON file");
    sym->excludes(custom);
    cmd->add_option("--n", f.n, "number of qubits")->check(CLI::NonNegativeNumber);
    cmd->add_option("--k", f.k, "gate locality")->check(CLI::NonNegativeNumber);
  };
  auto search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--method", f.method, "exact, theorem or both")
        ->check(CLI::IsMember({"exact", "theorem", "both"}));
    cmd->add_option("--jobs", f.jobs, "worker threads for the exact search")->check(CLI::PositiveNumber);
    cmd->add_option("--node-budget", f.node_budget, "search node budget")->check(CLI::PositiveNumber);
  };

  auto* order = app.add_subcommand("order", "maximal design order of one instance");
  symmetry_flags(order);
  search_flags(order);
  order->add_option("--t", f.t, "moment order for --expect design/no-design")->check(CLI::NonNegativeNumber);
  order->add_flag("--json", f.json, "structured output");
  order->add_option("--expect", f.expect, "design|no-design|finite:N|infinite");

  auto* table = app.add_subcommand("table", "design orders over a range of n");
  table->add_option("--symmetry", f.symmetry, "built-in symmetry")
      ->check(CLI::IsMember({"z2", "u1", "su2"}, CLI::ignore_case));
  table->add_option("--custom", f.custom, "not supported for tables");
  table->add_option("--k", f.k, "gate locality")->check(CLI::NonNegativeNumber);
  table->add_option("--n-from", f.n_from, "first n")->check(CLI::NonNegativeNumber);
  table->add_option("--n-to", f.n_to, "last n")->check(CLI::NonNegativeNumber);
  search_flags(table);
  table->add_flag("--json", f.json, "structured output");
  table->add_flag("--csv", f.csv, "CSV output");

  auto* oracle = app.add_subcommand("oracle", "independent verification oracles");
  oracle->require_subcommand(1);
  auto* collision = oracle->add_subcommand("collision", "nonnegative collision enumeration");
  symmetry_flags(collision);
  collision->add_option("--t", f.t, "moment order")->check(CLI::NonNegativeNumber);
  collision->add_option("--node-budget", f.node_budget, "enumeration budget")->check(CLI::PositiveNumber);
  collision->add_flag("--json", f.json, "structured output");
  collision->add_option("--expect", f.expect, "design|no-design");
  auto* moment = oracle->add_subcommand("moment", "exact commutant dimensions");
  symmetry_flags(moment);
  moment->add_option("--fixture", f.fixture, "named gate set")->check(CLI::IsMember(fixture_names()));
  moment->add_option("--t", f.t, "moment order")->check(CLI::NonNegativeNumber);
  moment->add_flag("--json", f.json, "structured output");
  moment->add_option("--expect", f.expect, "design|no-design");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  std::transform(f.symmetry.begin(), f.symmetry.end(), f.symmetry.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  try {
    if (order->parsed()) return cmd_order(f, out, err);
    if (table->parsed()) return cmd_table(f, out, err);
    if (collision->parsed()) return cmd_collision(f, out, err);
    if (moment->parsed()) return cmd_moment(f, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace qdesign

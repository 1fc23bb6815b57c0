#include "qdesign/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qdesign/combinatorics.hpp"
#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

using json = nlohmann::json;

void require_locality(long long n, long long k) {
  if (n < 1) throw PreconditionError("qubit count must be positive");
  if (k < 2 || k > n - 1)
    throw PreconditionError("built-in symmetries require 2 <= k <= n-1 (got n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
}

IntegerMatrix stack_rows(const std::vector<IntegerVector>& rows, Eigen::Index width) {
  IntegerMatrix m(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return m;
}

Rational parse_rational(const json& entry, const std::string& where) {
  if (entry.is_number_integer()) {
    if (entry.is_number_unsigned()) return Rational(entry.get<unsigned long long>());
    return Rational(entry.get<long long>());
  }
  if (!entry.is_string()) throw FormatError(where + ": expected an integer or a \"p/q\" string");
  std::string text = entry.get<std::string>();
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
             text.end());
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& digits) {
    const bool ok = !digits.empty() &&
                    std::all_of(digits.begin() + ((digits[0] == '-' || digits[0] == '+') ? 1 : 0), digits.end(),
                                [](unsigned char c) { return std::isdigit(c); }) &&
                    digits.find_first_of("0123456789") != std::string::npos;
    if (!ok) throw FormatError(where + ": malformed rational \"" + entry.get<std::string>() + "\"");
    return BigInt(digits[0] == '+' ? digits.substr(1) : digits);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw FormatError(where + ": zero denominator");
  return Rational(num, den);
}

}  // namespace

std::string_view to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::Z2: return "z2";
    case SymmetryKind::U1: return "u1";
    case SymmetryKind::SU2: return "su2";
    case SymmetryKind::Custom: return "custom";
  }
  return "?";
}

SymmetryKind parse_symmetry_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "z2") return SymmetryKind::Z2;
  if (lower == "u1") return SymmetryKind::U1;
  if (lower == "su2") return SymmetryKind::SU2;
  throw PreconditionError("unknown symmetry '" + std::string(name) + "'");
}

SymmetrySpec SymmetrySpec::builtin(SymmetryKind kind) {
  if (kind == SymmetryKind::Custom) throw PreconditionError("custom specs must be parsed from a document");
  SymmetrySpec spec;
  spec.kind = kind;
  return spec;
}

bool ConstraintSystem::annihilates(const IntegerVector& x) const {
  return is_zero(rows * x);
}

IrrepTable irrep_table(const SymmetrySpec& spec, long long n) {
  IrrepTable table;
  if (spec.kind == SymmetryKind::Custom) {
    table.multiplicities = spec.multiplicities;
    table.irrep_dims = IntegerVector::Ones(spec.multiplicities.size());
    table.labels = spec.labels;
    if (table.labels.size() != static_cast<std::size_t>(spec.multiplicities.size()))
      throw FormatError("custom spec: labels and multiplicities differ in length");
    return table;
  }
  if (n < 1) throw PreconditionError("qubit count must be positive");

  switch (spec.kind) {
    case SymmetryKind::Z2: {
      BigInt half = 1;
      half <<= static_cast<unsigned>(n - 1);
      table.labels = {"0", "1"};
      table.multiplicities = IntegerVector::Constant(2, half);
      table.irrep_dims = IntegerVector::Ones(2);
      break;
    }
    case SymmetryKind::U1: {
      table.multiplicities.resize(n + 1);
      table.irrep_dims = IntegerVector::Ones(n + 1);
      for (long long l = 0; l <= n; ++l) {
        table.labels.push_back(std::to_string(l));
        table.multiplicities(l) = binomial(n, l);
      }
      break;
    }
    case SymmetryKind::SU2: {
      const long long top = n / 2;
      table.multiplicities.resize(top + 1);
      table.irrep_dims.resize(top + 1);
      for (long long j = 0; j <= top; ++j) {
        // spin n/2 - j, written as a fraction when n is odd
        const long long twice_spin = n - 2 * j;
        table.labels.push_back(twice_spin % 2 ? std::to_string(twice_spin) + "/2" : std::to_string(twice_spin / 2));
        table.multiplicities(j) = binomial(n, j) - binomial(n, j - 1);
        table.irrep_dims(j) = twice_spin + 1;
      }
      break;
    }
    case SymmetryKind::Custom: break;
  }
  return table;
}

ConstraintSystem constraint_system(const SymmetrySpec& spec, long long n, long long k) {
  ConstraintSystem system;
  std::vector<IntegerVector> rows;

  if (spec.kind == SymmetryKind::Custom) {
    rows = spec.constraints;
    for (std::size_t i = 0; i < rows.size(); ++i) system.provenance.push_back("custom[" + std::to_string(i) + "]");
    rows.push_back(spec.multiplicities);
    system.provenance.emplace_back("m");
    system.rows = stack_rows(rows, spec.multiplicities.size());
    return system;
  }

  require_locality(n, k);
  const IrrepTable table = irrep_table(spec, n);
  const auto width = static_cast<Eigen::Index>(table.size());

  switch (spec.kind) {
    case SymmetryKind::Z2:
      rows.push_back(make_vector({1, 1}));
      system.provenance.emplace_back("parity-blind");
      break;
    case SymmetryKind::U1:
      for (long long j = 0; j <= k; ++j) {
        IntegerVector row(width);
        for (long long l = 0; l <= n; ++l) row(l) = binomial(n - k, l - j);
        rows.push_back(std::move(row));
        system.provenance.push_back("j=" + std::to_string(j));
      }
      break;
    case SymmetryKind::SU2:
      for (long long jp = 0; jp <= k / 2; ++jp) {
        IntegerVector row(width);
        for (long long j = 0; j < width; ++j)
          row(j) = binomial(n - 2 * jp, j - jp) - binomial(n - 2 * jp, j - jp - 1);
        rows.push_back(std::move(row));
        system.provenance.push_back("j=" + std::to_string(jp));
      }
      break;
    case SymmetryKind::Custom: break;
  }

  rows.push_back(table.multiplicities);
  system.provenance.emplace_back("m");
  system.rows = stack_rows(rows, width);
  return system;
}

SymmetrySpec parse_custom(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("custom spec: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("custom spec: top level must be an object");
  for (const auto& [key, _] : doc.items())
    if (key != "multiplicities" && key != "constraints" && key != "labels")
      throw FormatError("custom spec: unknown field '" + key + "'");

  if (!doc.contains("multiplicities")) throw FormatError("custom spec: missing field 'multiplicities'");
  const json& mults = doc["multiplicities"];
  if (!mults.is_array() || mults.empty())
    throw FormatError("custom spec: 'multiplicities' must be a non-empty array");

  SymmetrySpec spec;
  spec.kind = SymmetryKind::Custom;
  const auto width = static_cast<Eigen::Index>(mults.size());
  spec.multiplicities.resize(width);
  for (Eigen::Index i = 0; i < width; ++i) {
    const std::string where = "multiplicities[" + std::to_string(i) + "]";
    const json& entry = mults[static_cast<std::size_t>(i)];
    if (!entry.is_number_integer())
      throw FormatError("custom spec: " + where + ": expected an integer");
    const Rational value = parse_rational(entry, "custom spec: " + where);
    if (denominator(value) != 1) throw FormatError("custom spec: " + where + ": expected an integer");
    if (value <= 0) throw ValidationError("custom spec: " + where + ": multiplicity must be positive");
    spec.multiplicities(i) = numerator(value);
  }

  if (doc.contains("constraints")) {
    const json& rows = doc["constraints"];
    if (!rows.is_array()) throw FormatError("custom spec: 'constraints' must be an array of arrays");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string where = "custom spec: constraints[" + std::to_string(r) + "]";
      if (!rows[r].is_array()) throw FormatError(where + ": expected an array");
      if (static_cast<Eigen::Index>(rows[r].size()) != width)
        throw FormatError(where + ": has " + std::to_string(rows[r].size()) + " entries, expected " +
                          std::to_string(width));
      std::vector<Rational> values;
      BigInt lcm_den = 1;
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        values.push_back(parse_rational(rows[r][c], where + "[" + std::to_string(c) + "]"));
        lcm_den = lcm(lcm_den, denominator(values.back()));
      }
      IntegerVector row(width);
      for (Eigen::Index c = 0; c < width; ++c) {
        const Rational scaled = values[static_cast<std::size_t>(c)] * Rational(lcm_den);
        row(c) = numerator(scaled);
      }
      spec.constraints.push_back(std::move(row));
    }
  }

  if (doc.contains("labels")) {
    const json& labels = doc["labels"];
    if (!labels.is_array() || static_cast<Eigen::Index>(labels.size()) != width)
      throw FormatError("custom spec: 'labels' must be an array matching 'multiplicities'");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i].is_string()) throw FormatError("custom spec: labels[" + std::to_string(i) + "]: expected a string");
      spec.labels.push_back(labels[i].get<std::string>());
    }
  } else {
    for (Eigen::Index i = 0; i < width; ++i) spec.labels.push_back(std::to_string(i));
  }
  return spec;
}

SymmetrySpec load_custom(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open custom spec '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_custom(buffer.str());
}

BigInt represented_dimension(const IrrepTable& table) {
  BigInt total = 0;
  for (Eigen::Index i = 0; i < table.multiplicities.size(); ++i)
    total += table.multiplicities(i) * table.irrep_dims(i);
  return total;
}

}  // namespace qdesign

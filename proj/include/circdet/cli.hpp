#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bricks.hpp"
#include "circulant.hpp"
#include "exactmath.hpp"
#include "parallel.hpp"
#include "partitions.hpp"
#include "theorem.hpp"

namespace circdet::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInconsistent = 2 };

enum class Format { csv, json };

// Bad arguments; maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One output row. Values are strings, booleans or small integers; exact
// quantities are always passed in as decimal strings.
using Record = nlohmann::ordered_json;

inline std::string csv_field(const nlohmann::ordered_json& v) {
  std::string s;
  if (v.is_string()) s = v.get<std::string>();
  else if (v.is_null()) s = "";
  else s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

/// CSV with a header row, or a JSON array of objects. Key order follows
/// `columns` in both encodings.
inline void write_records(std::ostream& out, Format format, const std::vector<std::string>& columns,
                          const std::vector<Record>& records) {
  if (format == Format::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (const auto& c : columns) obj[c] = r.contains(c) ? r.at(c) : nlohmann::ordered_json(nullptr);
      arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_field(columns[i]);
  out << '\n';
  for (const auto& r : records) {
    for (std::size_t i = 0; i < columns.size(); ++i)
      out << (i ? "," : "") << (r.contains(columns[i]) ? csv_field(r.at(columns[i])) : "");
    out << '\n';
  }
}

// Term counts d(n), p(n) for n = 1..12 as published.
inline constexpr std::array<long, 12> kReferenceD{1, 2, 4, 10, 26, 68, 246, 810, 2704, 7492, 32066, 86500};
inline constexpr std::array<long, 12> kReferenceP{1, 2, 4, 10, 26, 80, 246, 810, 2704, 9252, 32066, 112720};

/// Label for a partition in tabular output: parts joined by '+'.
inline std::string label(const Partition& p) {
  std::string s;
  for (std::size_t j = 0; j < p.parts().size(); ++j) s += (j ? "+" : "") + std::to_string(p.parts()[j]);
  return s;
}

inline Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw UsageError("unknown format: " + std::string(s));
}

/// Parses "b1,b2,...,bn"; malformed input or wrong arity is a UsageError,
/// a well-formed vector whose entries do not sum to n is std::invalid_argument.
inline ExponentVector parse_exponent_vector(int n, std::string_view text) {
  std::vector<int> b;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    int v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size() || v < 0)
      throw UsageError("malformed exponent vector: " + std::string(text));
    b.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(b.size()) != n)
    throw UsageError("exponent vector must have " + std::to_string(n) + " entries");
  return ExponentVector(std::move(b));
}

struct TableOptions {
  int max_n = 12;
  Format format = Format::csv;
  int oracle_max = 8;
  int jobs = 1;
  // formula, congruence, necklaces, lattice, or all (cross-checks the four).
  std::string p_method = "formula";
};

inline int cmd_table(const TableOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.max_n < 1 || opt.max_n > kBruteForceMaxN) throw UsageError("--max-n must be in 1..12");
  if (opt.oracle_max < 0 || opt.oracle_max > kBruteForceMaxN) throw UsageError("--oracle-max must be in 0..12");
  std::vector<PMethod> methods;
  if (opt.p_method == "all") methods = {PMethod::formula, PMethod::congruence, PMethod::necklaces, PMethod::lattice};
  else if (opt.p_method == "formula") methods = {PMethod::formula};
  else if (opt.p_method == "congruence") methods = {PMethod::congruence};
  else if (opt.p_method == "necklaces") methods = {PMethod::necklaces};
  else if (opt.p_method == "lattice") methods = {PMethod::lattice};
  else throw UsageError("--method for table must be formula, congruence, necklaces, lattice or all");

  int status = kOk;
  std::vector<Record> rows;
  for (int n = 1; n <= opt.max_n; ++n) {
    const ExactInt d = d_count(n, DMethod::er, opt.jobs);
    const ExactInt p = p_count(n, methods.front());
    for (std::size_t m = 1; m < methods.size(); ++m) {
      const ExactInt other = p_count(n, methods[m]);
      if (other != p) {
        err << "inconsistency: n=" << n << " p(" << to_string(methods.front()) << ")=" << p << " p("
            << to_string(methods[m]) << ")=" << other << '\n';
        status = kInconsistent;
      }
    }
    if (n <= opt.oracle_max) {
      const ExactInt d_oracle = d_count(n, DMethod::oracle, opt.jobs);
      if (d_oracle != d) {
        err << "inconsistency: n=" << n << " d(er)=" << d << " d(oracle)=" << d_oracle << '\n';
        status = kInconsistent;
      }
      const auto terms = static_cast<unsigned long>(permanent_terms(n).size());
      if (ExactInt(terms) != p) {
        err << "inconsistency: n=" << n << " p=" << p << " permanent terms=" << terms << '\n';
        status = kInconsistent;
      }
    }
    Record r;
    r["n"] = n;
    r["d"] = to_string(d);
    r["p"] = to_string(p);
    r["equal"] = d == p;
    rows.push_back(std::move(r));
  }
  write_records(out, opt.format, {"n", "d", "p", "equal"}, rows);
  return status;
}

enum class CoeffMethod { er, oracle, both };

inline CoeffMethod parse_coeff_method(std::string_view s) {
  if (s == "er") return CoeffMethod::er;
  if (s == "oracle") return CoeffMethod::oracle;
  if (s == "both") return CoeffMethod::both;
  throw UsageError("--method for coeff must be er, oracle or both");
}

inline int cmd_coeff(int n, std::string_view b_text, CoeffMethod method, Format format, std::ostream& out,
                     std::ostream& err) {
  if (n < 1) throw UsageError("n must be positive");
  const ExponentVector b = parse_exponent_vector(n, b_text);
  if (method != CoeffMethod::er && n > kBruteForceMaxN) throw UsageError("oracle bound exceeded (n <= 12)");

  Record r;
  r["n"] = n;
  r["b"] = to_string(b);
  std::vector<std::string> columns{"n", "b"};
  int status = kOk;
  std::optional<ExactInt> er, oracle;
  if (method != CoeffMethod::oracle) {
    er = det_coeff_er(b);
    r["coeff_er"] = to_string(*er);
    columns.push_back("coeff_er");
  }
  if (method != CoeffMethod::er) {
    oracle = det_coeff_oracle(b);
    r["coeff_oracle"] = to_string(*oracle);
    columns.push_back("coeff_oracle");
  }
  if (method == CoeffMethod::both) {
    const int eps = epsilon(n);
    const bool consistent = *er == eps * *oracle;
    r["sign_epsilon"] = std::to_string(eps);
    r["consistent"] = consistent;
    columns.insert(columns.end(), {"sign_epsilon", "consistent"});
    if (!consistent) {
      err << "inconsistency: er=" << *er << " oracle=" << *oracle << " epsilon=" << eps << '\n';
      status = kInconsistent;
    }
  }
  write_records(out, format, columns, {r});
  return status;
}

inline std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

inline int cmd_verify(int n, Format format, int jobs, std::ostream& out, std::ostream& err) {
  if (n < 2) throw UsageError("verify requires n >= 2");
  const std::vector<std::string> columns{"n", "b", "coeff", "dominance", "q_valuation", "min_other_valuation",
                                         "valuations"};
  if (n > kBruteForceMaxN) {
    Record r;
    r["n"] = n;
    r["dominance"] = "skipped";
    write_records(out, format, columns, {r});
    err << "verify n=" << n << ": skipped, resource bound is n <= " << kBruteForceMaxN << '\n';
    return kUsage;
  }

  const auto terms = permanent_terms(n);
  const auto pp = prime_power(n);
  std::vector<ExactInt> coeffs(terms.size());
  std::vector<std::optional<DominanceReport>> reports(terms.size());
  parallel_for(terms.size(), jobs, [&](std::size_t i) {
    coeffs[i] = det_coeff_er(terms[i]);
    if (pp) reports[i] = dominance_check(terms[i]);
  });

  int status = kOk;
  long nonzero = 0, passes = 0;
  std::vector<Record> rows;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (coeffs[i] != 0) ++nonzero;
    Record r;
    r["n"] = n;
    r["b"] = to_string(terms[i]);
    r["coeff"] = to_string(coeffs[i]);
    if (pp) {
      const auto& rep = *reports[i];
      if (rep.passed) ++passes;
      if (rep.total() != ExactRat(coeffs[i])) {
        err << "inconsistency: class contributions of b=" << to_string(terms[i]) << " sum to " << to_string(rep.total())
            << ", coefficient is " << coeffs[i] << '\n';
        status = kInconsistent;
      }
      std::vector<int> vals;
      for (const auto& rec : rep.class_records)
        if (!rec.base) vals.push_back(rec.valuation);
      r["dominance"] = rep.passed;
      r["q_valuation"] = rep.q_class_valuation;
      if (const auto m = rep.min_other_valuation()) r["min_other_valuation"] = *m;
      r["valuations"] = join(vals, ';');
      rows.push_back(std::move(r));
    } else if (coeffs[i] == 0) {
      r["dominance"] = "n/a";
      rows.push_back(std::move(r));
    }
  }
  write_records(out, format, columns, rows);

  const long p = static_cast<long>(terms.size());
  const long ref_d = kReferenceD[static_cast<std::size_t>(n - 1)];
  const long ref_p = kReferenceP[static_cast<std::size_t>(n - 1)];
  const bool table_match = nonzero == ref_d && p == ref_p;
  err << "verify n=" << n << ": ";
  if (pp) {
    err << "prime power " << pp->prime << '^' << pp->exponent << ", " << passes << '/' << p << " dominance passes, ";
    if (passes != p) status = kInconsistent;
  } else {
    err << (p - nonzero) << " vanishing coefficients, ";
  }
  err << "d=" << nonzero << " p=" << p << (table_match ? ", matches reference table" : ", DIFFERS from reference table")
      << '\n';
  if (!table_match) status = kInconsistent;
  return status;
}

inline int cmd_m2p(int q, Format format, std::ostream& out, std::ostream&) {
  if (q < 1 || q > 8) throw UsageError("m2p requires 1 <= q <= 8");
  auto parts = partitions_of(q);
  std::sort(parts.begin(), parts.end());
  std::vector<std::string> columns{"mu"};
  for (const auto& lambda : parts) columns.push_back(label(lambda));
  std::vector<Record> rows;
  for (const auto& mu : parts) {
    const auto expansion = m_to_p_expansion(mu);
    Record r;
    r["mu"] = label(mu);
    for (const auto& lambda : parts) {
      const auto it = expansion.find(lambda);
      r[label(lambda)] = it == expansion.end() ? std::string("0") : to_string(it->second);
    }
    rows.push_back(std::move(r));
  }
  write_records(out, format, columns, rows);
  return kOk;
}

}  // namespace circdet::cli

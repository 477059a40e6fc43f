#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <circdet/cli.hpp>

namespace cli = circdet::cli;

int main(int argc, char** argv) {
  CLI::App app{"Term counts and determinant coefficients of the generic circulant matrix"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string out_path;
  int jobs = 1;
  app.add_option("--format", format, "Output encoding")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "Write data to FILE instead of stdout");
  app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  cli::TableOptions table_opt;
  auto* table = app.add_subcommand("table", "d(n) and p(n) for n = 1..max-n");
  table->add_option("--max-n", table_opt.max_n)->check(CLI::Range(1, 12));
  table->add_option("--oracle-max", table_opt.oracle_max, "Cross-check d(n) by full expansion up to this n")
      ->check(CLI::Range(0, 12));
  table->add_option("--method", table_opt.p_method, "p(n) method")
      ->check(CLI::IsMember({"formula", "congruence", "necklaces", "lattice", "all"}));

  int coeff_n = 0;
  std::string coeff_b, coeff_method = "both";
  auto* coeff = app.add_subcommand("coeff", "Coefficient of x^b in det(A)");
  coeff->add_option("n", coeff_n)->required();
  coeff->add_option("b", coeff_b, "Comma-separated exponents b_1,...,b_n")->required();
  coeff->add_option("--method", coeff_method)->check(CLI::IsMember({"er", "oracle", "both"}));

  int verify_n = 0;
  auto* verify = app.add_subcommand("verify", "Certify d(n) = p(n) for prime powers, or list vanishing terms");
  verify->add_option("n", verify_n)->required();

  int m2p_q = 0;
  auto* m2p = app.add_subcommand("m2p", "Monomial to power-sum transition matrix in degree q");
  m2p->add_option("q", m2p_q)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsage;
  }

  std::unique_ptr<std::ofstream> file;
  if (!out_path.empty()) {
    file = std::make_unique<std::ofstream>(out_path);
    if (!*file) {
      std::cerr << "cannot open " << out_path << '\n';
      return cli::kUsage;
    }
  }
  std::ostream& out = file ? *file : std::cout;

  try {
    const auto fmt = cli::parse_format(format);
    table_opt.format = fmt;
    table_opt.jobs = jobs;
    if (*table) return cli::cmd_table(table_opt, out, std::cerr);
    if (*coeff) return cli::cmd_coeff(coeff_n, coeff_b, cli::parse_coeff_method(coeff_method), fmt, out, std::cerr);
    if (*verify) return cli::cmd_verify(verify_n, fmt, jobs, out, std::cerr);
    if (*m2p) return cli::cmd_m2p(m2p_q, fmt, out, std::cerr);
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cli::kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return cli::kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return cli::kInconsistent;
  }
  return cli::kUsage;
}

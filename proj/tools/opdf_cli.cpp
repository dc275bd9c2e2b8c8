// Command-line front end. Parses a spec file, forwards it through the C
// API, and writes the JSON report to stdout or --out. Exit code: 0 when a
// verdict was computed (including negative verdicts), 2 parse error,
// 3 validation error, 4 numeric-consistency error, 1 anything else.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "opdf.h"

namespace {

struct Flags {
  std::string spec_path;
  std::optional<int> n;
  std::optional<int> level;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out_path;
};

std::string build_options_json(const Flags& flags) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  auto sep = [&] {
    if (!first) os << ",";
    first = false;
  };
  if (flags.n) { sep(); os << "\"n\":" << *flags.n; }
  if (flags.level) { sep(); os << "\"level\":" << *flags.level; }
  if (flags.strict) { sep(); os << "\"strict\":true"; }
  if (flags.seed) { sep(); os << "\"seed\":" << *flags.seed; }
  if (flags.tol) {
    sep();
    os.precision(17);
    os << "\"tol\":" << *flags.tol;
  }
  os << "}";
  return os.str();
}

int run(const std::string& command, const Flags& flags) {
  std::string spec_text;
  if (!flags.spec_path.empty()) {
    std::ifstream in(flags.spec_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open spec file '" << flags.spec_path << "'\n";
      return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    spec_text = buffer.str();
  }

  opdf_report* report = nullptr;
  const opdf_status status =
      opdf_run(command.c_str(), spec_text.c_str(), build_options_json(flags).c_str(), &report);
  if (!report) {
    std::cerr << "error: out of memory\n";
    return 1;
  }
  const std::string json = opdf_report_json(report);
  opdf_report_free(report);

  if (!flags.out_path.empty()) {
    std::ofstream out(flags.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << flags.out_path << "'\n";
      return 1;
    }
    out << json;
  } else {
    std::cout << json;
  }
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opdf: positive definite functions, dilations and representation "
               "structure on finite groups"};
  app.require_subcommand(1);

  Flags flags;
  std::string command;

  std::istringstream names(opdf_commands());
  std::string name;
  while (names >> name) {
    CLI::App* sub = app.add_subcommand(name, "");
    // counterexample-det needs no spec file; everything else takes one.
    auto* spec_opt = sub->add_option("spec", flags.spec_path, "spec file (JSON)");
    if (name != "counterexample-det") spec_opt->required()->check(CLI::ExistingFile);
    sub->add_option("--n", [&](const CLI::results_t& r) {
      try { flags.n = std::stoi(r.at(0)); } catch (...) { return false; }
      return true;
    }, "power / determinant index");
    sub->add_option("--level", [&](const CLI::results_t& r) {
      try { flags.level = std::stoi(r.at(0)); } catch (...) { return false; }
      return true;
    }, "truncation level");
    sub->add_flag("--strict", flags.strict, "strict-positivity variant where defined");
    sub->add_option("--seed", [&](const CLI::results_t& r) {
      try { flags.seed = std::stoull(r.at(0)); } catch (...) { return false; }
      return true;
    }, "seed for the seeded eigen-refinement");
    sub->add_option("--tol", [&](const CLI::results_t& r) {
      try { flags.tol = std::stod(r.at(0)); } catch (...) { return false; }
      return true;
    }, "overrides psd_tol and contraction_tol");
    sub->add_option("--out", flags.out_path, "write the report here instead of stdout");
    sub->callback([&, name] { command = name; });
  }

  CLI11_PARSE(app, argc, argv);
  return run(command, flags);
}

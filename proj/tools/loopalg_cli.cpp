// loopalg: command-line front end.
//
// Exit codes: 0 success (or every check passed), 1 a check failed or a golden
// file differs, 2 usage error or unsupported input.
//
// With LOOPALG_GOLDEN_DIR set, the output is compared byte for byte with
// <dir>/<slug>.json, where the slug is built from the arguments; setting
// LOOPALG_GOLDEN_UPDATE=1 writes the file instead.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "loopalg/errors.hpp"
#include "report.hpp"

namespace {

using loopalg::report::ordered_json;

std::string slug(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--output" || arg == "-o" || arg == "--jobs") {
      ++i;
      continue;
    }
    if (arg.rfind("--output=", 0) == 0 || arg.rfind("--jobs=", 0) == 0) continue;
    if (!out.empty()) out += "_";
    for (char c : arg) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '-';
  }
  return out;
}

int compare_golden(const std::string& text, const std::string& name) {
  const char* dir = std::getenv("LOOPALG_GOLDEN_DIR");
  if (!dir) return 0;
  const std::filesystem::path path = std::filesystem::path(dir) / (name + ".json");
  const char* update = std::getenv("LOOPALG_GOLDEN_UPDATE");
  if (update && std::string(update) == "1") {
    std::ofstream(path) << text;
    return 0;
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "golden file missing: " << path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  if (buf.str() != text) {
    std::cerr << "golden mismatch: " << path << "\n";
    return 1;
  }
  return 0;
}

bool is_usage_error(const loopalg::Error& e) {
  const std::string& k = e.kind();
  return k == "UnsupportedType" || k == "InvalidCoordinates" || k == "UnsupportedTwisted" ||
         k == "PreconditionError";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with parahoric Hitchin maps and opers"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json", output;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("-o,--output", output, "Write the report to a file as well as stdout");

  loopalg::report::RunConfig cfg;
  std::string a_text = "1", proposition;
  int degree_bound = 3;

  auto* degrees = app.add_subcommand(
      "degrees", "Fundamental degrees, Coxeter number and Kac labels of a root system");
  degrees->add_option("type", cfg.type, "Cartan type, e.g. A2, C2, G2")->required();

  auto* kac = app.add_subcommand(
      "kac", "Standard parahoric from Kac coordinates: m, barycenter, principality of its grading");
  kac->add_option("type", cfg.type, "Cartan type")->required();
  kac->add_option("--kac", cfg.kac, "Kac coordinates s_0,...,s_l in {0,1} (default Iwahori)")
      ->delimiter(',');

  auto* grading = app.add_subcommand(
      "grading", "Z/m-grading of g attached to a parahoric and its graded pieces");
  grading->add_option("type", cfg.type, "Cartan type")->required();
  grading->add_option("--kac", cfg.kac, "Kac coordinates")->delimiter(',');

  auto* image = app.add_subcommand(
      "hitchin-image",
      "Pole-order bounds d_i - ceil(d_i (1 - n) / m) for the image of p(n)^perp");
  image->add_option("type", cfg.type, "Cartan type")->required();
  image->add_option("--kac", cfg.kac, "Kac coordinates")->delimiter(',');
  image->add_option("--n", cfg.n, "Moy-Prasad level");

  auto* verify = app.add_subcommand(
      "verify",
      "Seeded exact checks: size-of-image (containment of the Hitchin image in the order "
      "bounds), surjectivity (Kostant section round trips onto the bounds for n = 2), "
      "n1-corollary (surjectivity for n = 1 and every parahoric), residue-diagram (leading "
      "terms of the Hitchin map against the invariant of V_P), global-oper (the global oper "
      "space and the global Hitchin base are lines), invariant-generator (the torus invariant "
      "of V_P has the Kac labels as exponents)");
  verify->add_option("proposition", proposition, "Statement to check")
      ->required()
      ->check(CLI::IsMember(loopalg::report::propositions()));
  verify->add_option("--type", cfg.type, "Cartan type")->required();
  verify->add_option("--kac", cfg.kac, "Kac coordinates (default Iwahori)")->delimiter(',');
  verify->add_option("--n", cfg.n, "Moy-Prasad level");
  verify->add_option("--samples", cfg.samples, "Number of seeded samples or trials");
  verify->add_option("--seed", cfg.seed, "Seed for every random draw");
  verify->add_option("--jobs", cfg.jobs, "Worker threads for sample sweeps")
      ->check(CLI::PositiveNumber);

  auto* fg = app.add_subcommand(
      "fg",
      "The connection d/dz + f/z + a e_theta on the dual group: matrix, condition at 0, "
      "irregular type and slope certificate at infinity, scalar equation");
  fg->add_option("type", cfg.type, "Cartan type (the connection lives on its dual)")->required();
  fg->add_option("a", a_text, "Rational coefficient of e_theta, e.g. 2/3")->required();

  auto* opers = app.add_subcommand(
      "oper-space", "Opers on G_m with residue f/z at 0 and slope at most 1/h at infinity");
  opers->add_option("type", cfg.type, "Cartan type")->required();
  opers->add_option("--degree-bound", degree_bound, "Polynomial degree of the ansatz");

  auto* base = app.add_subcommand(
      "hitchin-base", "Global Hitchin base on P^1 for the level structure at 0 and infinity");
  base->add_option("type", cfg.type, "Cartan type")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ordered_json report;
  int code = 0;
  try {
    namespace r = loopalg::report;
    if (degrees->parsed()) report = r::degrees(cfg.type);
    if (kac->parsed()) report = r::kac(cfg.type, cfg.kac);
    if (grading->parsed()) report = r::grading(cfg.type, cfg.kac);
    if (image->parsed()) report = r::hitchin_image(cfg.type, cfg.kac, cfg.n);
    if (fg->parsed()) report = r::fg(cfg.type, a_text);
    if (opers->parsed()) report = r::oper_space(cfg.type, degree_bound);
    if (base->parsed()) report = r::hitchin_base(cfg.type);
    if (verify->parsed()) {
      report = r::verify(proposition, cfg);
      if (report["status"] != "pass") code = 1;
    }
  } catch (const loopalg::Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return is_usage_error(e) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string text = format == "json" ? report.dump(2) + "\n"
                                            : loopalg::report::as_table(report);
  std::cout << text;
  if (!output.empty()) std::ofstream(output) << text;
  const int golden = compare_golden(text, slug(argc, argv));
  return golden != 0 ? golden : code;
}

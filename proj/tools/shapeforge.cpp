// Command-line front end: poly, count, gen, verify.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "shapeforge/enumerate.hpp"
#include "shapeforge/error.hpp"
#include "shapeforge/io.hpp"
#include "shapeforge/qseries.hpp"
#include "shapeforge/slater.hpp"

namespace fs = std::filesystem;
namespace sf = shapeforge;

namespace {

constexpr int kBadArgs = 2;
constexpr int kIncomplete = 3;
constexpr int kHistogram = 4;
constexpr int kReplay = 5;

struct RunConfig {
  int particles = 3;
  int dims = 3;
  bool fermion = false;
  bool boson = false;
  long max_grade = 0;
  bool oracle = false;
  sf::enumerate::VocabularyConfig vocabulary;
  int threads = 1;
  bool extra_edges = true;
  bool completeness = true;
  std::string out_dir = ".";
  std::string json_path;
  int verbosity = 0;
};

int threads_from_env(int fallback) {
  const char* env = std::getenv("SHAPE_FORGE_THREADS");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    int t = std::stoi(env);
    if (t >= 1) return t;
  } catch (const std::exception&) {
  }
  std::cerr << "ignoring SHAPE_FORGE_THREADS=" << env << '\n';
  return fallback;
}

int cmd_poly(const RunConfig& cfg) {
  if (cfg.fermion && cfg.boson) {
    std::cerr << "--fermion and --boson are mutually exclusive\n";
    return kBadArgs;
  }
  const auto stats = cfg.boson ? sf::qseries::Statistics::Boson : sf::qseries::Statistics::Fermion;
  const auto p = sf::qseries::shape_poly(cfg.particles, cfg.dims, stats);
  std::cout << p.to_string() << '\n';
  std::cout << '[';
  const auto& c = p.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) std::cout << (i ? "," : "") << c[i].get_str();
  std::cout << "]\n";
  return 0;
}

int cmd_count(const RunConfig& cfg) {
  const auto z = sf::qseries::state_count_series(cfg.particles, cfg.dims,
                                                 static_cast<std::size_t>(cfg.max_grade));
  int status = 0;
  for (long g = 0; g <= cfg.max_grade; ++g) {
    const auto& count = z[static_cast<std::size_t>(g)];
    std::cout << g << ' ' << count.get_str();
    if (cfg.oracle) {
      const auto n = sf::multipoly::slater_basis(cfg.particles, cfg.dims, static_cast<std::uint64_t>(g)).size();
      std::cout << ' ' << n;
      if (count != n) {
        std::cerr << "grade " << g << ": series gives " << count.get_str() << ", enumeration gives "
                  << n << '\n';
        status = 1;
      }
    }
    std::cout << '\n';
  }
  return status;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

int cmd_gen(const RunConfig& cfg) {
  if (cfg.dims % 2 == 0) {
    std::cerr << "enumeration requires odd d\n";
    return kBadArgs;
  }
  sf::enumerate::EnumerateConfig ec;
  ec.vocabulary = cfg.vocabulary;
  ec.threads = threads_from_env(cfg.threads);
  ec.detect_extra_edges = cfg.extra_edges;
  if (cfg.verbosity > 0) ec.progress = [](const std::string& line) { std::cerr << line << '\n'; };

  sf::enumerate::Enumeration run;
  try {
    run = sf::enumerate::enumerate_shapes(cfg.particles, cfg.dims, ec);
  } catch (const sf::Error& e) {
    std::cerr << "enumeration failed: " << e.what() << '\n';
    return e.code() == sf::Errc::incomplete ? kIncomplete : 1;
  }
  const auto set = sf::io::make_shape_set(run);

  std::optional<sf::enumerate::CompletenessReport> completeness;
  int status = 0;
  std::vector<sf::Integer> histogram(set.shape_poly.coefficients().size());
  for (const auto& s : set.shapes) {
    if (s.grade < 0 || static_cast<std::size_t>(s.grade) >= histogram.size()) {
      histogram.clear();
      break;
    }
    histogram[static_cast<std::size_t>(s.grade)] += 1;
  }
  if (histogram != set.shape_poly.coefficients()) {
    std::cerr << "grade histogram does not match the shape polynomial\n";
    status = kHistogram;
  }
  if (status == 0 && cfg.completeness) {
    try {
      completeness = sf::enumerate::verify_completeness(cfg.particles, cfg.dims, set.shapes);
    } catch (const sf::Error& e) {
      std::cerr << "completeness check failed: " << e.what() << '\n';
      status = kIncomplete;
    }
  }

  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  write_file(dir / "shapes.json", sf::io::to_json(set).dump(1) + "\n");
  write_file(dir / "tree.dot", sf::io::to_dot(set));
  const auto report = sf::io::format_report(run.report, completeness);
  write_file(dir / "report.txt", report);
  if (cfg.verbosity > 0) std::cerr << report;
  std::cout << set.shapes.size() << " shapes, " << set.tree.edges.size() << " tree edges, "
            << set.tree.extra_edges.size() << " extra edges\n";
  return status;
}

int cmd_verify(const RunConfig& cfg) {
  std::ifstream in(cfg.json_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << cfg.json_path << '\n';
    return kBadArgs;
  }
  sf::io::ShapeSet set;
  try {
    set = sf::io::shape_set_from_json(nlohmann::json::parse(in));
  } catch (const std::exception& e) {
    std::cerr << "malformed shape set: " << e.what() << '\n';
    return kReplay;
  }
  sf::io::VerifyResult result;
  try {
    result = sf::io::verify_shape_set(set, cfg.completeness);
  } catch (const std::exception& e) {
    result = {false, std::nullopt, e.what()};
  }
  if (!result.ok) {
    std::cerr << "verification failed";
    if (result.shape) std::cerr << " at shape " << *result.shape;
    std::cerr << ": " << result.message << '\n';
    return kReplay;
  }
  std::cout << "ok: " << set.shapes.size() << " shapes replayed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate and verify fermionic shape functions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* poly = app.add_subcommand("poly", "Print the shape polynomial");
  poly->add_option("-N", cfg.particles, "Number of particles")->required()->check(CLI::NonNegativeNumber);
  poly->add_option("-d", cfg.dims, "Spatial dimension")->required()->check(CLI::PositiveNumber);
  poly->add_flag("--fermion", cfg.fermion, "Fermion statistics (default)");
  poly->add_flag("--boson", cfg.boson, "Boson statistics");

  auto* count = app.add_subcommand("count", "Print state counts per grade");
  count->add_option("-N", cfg.particles, "Number of particles")->required()->check(CLI::NonNegativeNumber);
  count->add_option("-d", cfg.dims, "Spatial dimension")->required()->check(CLI::PositiveNumber);
  count->add_option("-g", cfg.max_grade, "Highest grade")->required()->check(CLI::NonNegativeNumber);
  count->add_flag("--oracle", cfg.oracle, "Cross-check against direct enumeration");

  auto* gen = app.add_subcommand("gen", "Enumerate shapes and write shapes.json, tree.dot, report.txt");
  gen->add_option("-N", cfg.particles, "Number of particles")->required()->check(CLI::PositiveNumber);
  gen->add_option("-d", cfg.dims, "Spatial dimension (odd)")->required()->check(CLI::PositiveNumber);
  gen->add_option("--max-letters", cfg.vocabulary.max_letters, "Letters per word")->check(CLI::PositiveNumber);
  gen->add_option("--max-amount", cfg.vocabulary.max_amount, "Shift amount per letter")->check(CLI::PositiveNumber);
  gen->add_option("--max-drop", cfg.vocabulary.max_drop, "Grade drop per word")->check(CLI::PositiveNumber);
  gen->add_option("-j,--threads", cfg.threads, "Worker threads (SHAPE_FORGE_THREADS overrides)")
      ->check(CLI::PositiveNumber);
  gen->add_option("-o,--out-dir", cfg.out_dir, "Output directory");
  gen->add_flag("!--no-extra-edges", cfg.extra_edges, "Stop evaluating words once a grade is full");
  gen->add_flag("!--no-completeness", cfg.completeness, "Skip the module-span completeness check");
  gen->add_flag("-v", cfg.verbosity, "Print the report to stderr");

  auto* verify = app.add_subcommand("verify", "Replay and check a shapes.json file");
  verify->add_option("file", cfg.json_path, "shapes.json")->required();
  verify->add_flag("!--no-completeness", cfg.completeness, "Skip the module-span completeness check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kBadArgs;
  }

  try {
    if (*poly) return cmd_poly(cfg);
    if (*count) return cmd_count(cfg);
    if (*gen) return cmd_gen(cfg);
    if (*verify) return cmd_verify(cfg);
  } catch (const sf::Error& e) {
    std::cerr << sf::errc_name(e.code()) << ": " << e.what() << '\n';
    return e.code() == sf::Errc::invalid_argument ? kBadArgs : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return kBadArgs;
}

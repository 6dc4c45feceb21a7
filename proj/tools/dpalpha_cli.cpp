// Command-line interface for computing the alpha invariant of del Pezzo
// surfaces of degree 1..7 from the Galois action on their (-1)-curves.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dpalpha/io.hpp"
#include "dpalpha/pipeline.hpp"

namespace {

using namespace dpa;

void require_degree(int d) {
  if (d < 1 || d > 7)
    throw DomainError("degree must be between 1 and 7, got " + std::to_string(d));
}

unsigned long bound_for(bool enumerate_large) { return enumerate_large ? 60000 : 10000; }

SymmetryMode symmetry_mode(const std::string& s) {
  return s == "off" ? SymmetryMode::kOff : SymmetryMode::kAuto;
}

std::vector<SubgroupClassRecord> load_or_compute_classes(int d, const std::string& cache_flag,
                                                         unsigned long bound) {
  PermGroup w = weyl_group(d);
  if (w.order() > bound)
    throw CapacityError("symmetry group of degree-" + std::to_string(d) + " surfaces has order " +
                        w.order().get_str() + ", beyond the enumeration bound " +
                        std::to_string(bound) +
                        " (pass --enumerate-large to opt in, or supply generators)");
  std::string dir = cache_directory(cache_flag);
  std::string path;
  if (!dir.empty()) {
    path = dir + "/classes_d" + std::to_string(d) + ".json";
    std::ifstream in(path);
    if (in) {
      try {
        json j;
        in >> j;
        return classes_from_json(j, d, line_count(d));
      } catch (const std::exception&) {
        // stale or corrupt cache entry: fall through and recompute
      }
    }
  }
  auto classes = subgroup_classes(w, SubgroupStrategy::kExhaustive, bound);
  if (!path.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(path);
    if (out) out << classes_to_json(d, classes) << "\n";
  }
  return classes;
}

void sort_results(std::vector<AlphaResult>& out) {
  std::sort(out.begin(), out.end(), [](const AlphaResult& a, const AlphaResult& b) {
    if (a.rho != b.rho) return a.rho < b.rho;
    if (a.alpha != b.alpha) return a.alpha > b.alpha;
    return a.key < b.key;
  });
}

std::vector<AlphaResult> run_enumerated(int d, bool rho_maximal, const std::string& cache_flag,
                                        unsigned long bound, SymmetryMode symmetry,
                                        bool emit_polytope) {
  LineConfiguration cfg = enumerate_lines(d);
  auto classes = load_or_compute_classes(d, cache_flag, bound);
  for (auto& c : classes) c.rho = invariant_rank(c.representative, cfg);
  std::vector<const SubgroupClassRecord*> wanted;
  std::vector<SubgroupClassRecord> retained;
  if (rho_maximal) {
    retained = rho_maximal_reduce(classes, weyl_group(d));
    for (const auto& c : retained) wanted.push_back(&c);
  } else {
    for (const auto& c : classes) wanted.push_back(&c);
  }
  std::vector<AlphaResult> out;
  for (const auto* c : wanted) {
    auto r = alpha_for_subgroup(c->representative, cfg, symmetry, emit_polytope);
    if (d == 3) r.label = classify_cubic(c->representative, cfg);
    r.key = c->key;
    r.class_size = c->class_size;
    r.children = c->children;
    r.rho_maximal_parent = c->rho_maximal_parent.value_or("");
    out.push_back(std::move(r));
  }
  sort_results(out);
  return out;
}

void print_results(const std::vector<AlphaResult>& rs, const std::string& format) {
  if (format == "json")
    std::cout << results_to_json(rs).dump(2) << "\n";
  else if (format == "csv")
    std::cout << results_to_csv(rs);
  else
    std::cout << results_to_text(rs);
}

PermGroup point_subgroup(const LineConfiguration& cfg, const std::vector<std::string>& cycles) {
  std::vector<Perm> gens;
  for (const auto& c : cycles)
    gens.push_back(point_permutation_action(cfg, Perm::from_cycle_string(c, 9 - cfg.degree)));
  return PermGroup::from_generators(gens, static_cast<int>(cfg.lines.size()));
}

// Reference values for the self-check tables.  Rows are matched by
// (rho, alpha, subgroup order); `classes` is the number of subgroup
// conjugacy classes sharing the row's rho-maximal representative.
struct DegreeFourRow {
  int rho;
  const char* alpha;
  long order;
  long classes;
};

constexpr DegreeFourRow kDegreeFourTable[] = {
    {1, "1", 1920, 98}, {2, "1", 192, 50},  {2, "1", 48, 11},  {2, "1", 24, 7},
    {2, "2/3", 120, 5}, {3, "1/2", 24, 5},  {3, "1/2", 8, 5},  {3, "1/3", 24, 5},
    {3, "1/3", 12, 3},  {4, "1/6", 4, 2},   {4, "1/9", 6, 2},  {4, "1/9", 4, 2},
    {5, "1/36", 2, 1},  {6, "1/180", 1, 1},
};

struct SplitRow {
  int degree;
  const char* alpha;
};

constexpr SplitRow kSplitTable[] = {
    {7, "1/24"}, {6, "1/72"}, {5, "1/144"}, {4, "1/180"}, {3, "1/120"}, {2, "1/30"}, {1, "1"},
};

int run_tables(const std::vector<int>& degrees, SymmetryMode symmetry) {
  auto wants = [&](int d) {
    return degrees.empty() || std::find(degrees.begin(), degrees.end(), d) != degrees.end();
  };
  int mismatches = 0;
  auto report = [&](const std::string& what, const std::string& expected,
                    const std::string& got) {
    bool ok = expected == got;
    if (!ok) ++mismatches;
    std::cout << (ok ? "   ok    " : "MISMATCH ") << what << "  expected " << expected
              << "  got " << got << "\n";
  };

  for (const auto& row : kSplitTable) {
    if (!wants(row.degree)) continue;
    auto r = alpha_for_subgroup(PermGroup::trivial(line_count(row.degree)), row.degree, symmetry);
    report("split degree " + std::to_string(row.degree) + " alpha", row.alpha,
           rat_to_string(r.alpha));
  }

  if (wants(4)) {
    std::cout << "degree 4, rho-maximal classification:\n";
    auto table = run_enumerated(4, true, "", 10000, symmetry, false);
    report("degree 4 rho-maximal row count", "14", std::to_string(table.size()));
    for (const auto& row : kDegreeFourTable) {
      std::string what = "degree 4 rho=" + std::to_string(row.rho) + " alpha=" + row.alpha +
                         " |G|=" + std::to_string(row.order);
      const AlphaResult* found = nullptr;
      for (const auto& r : table)
        if (r.rho == row.rho && rat_to_string(r.alpha) == row.alpha &&
            r.subgroup_order == row.order) {
          found = &r;
          break;
        }
      if (!found) {
        ++mismatches;
        std::cout << "MISMATCH " << what << "  no matching row\n";
        continue;
      }
      // children counts the absorbed classes; the reference column includes
      // the representative itself
      report(what + " classes", std::to_string(row.classes), std::to_string(found->children + 1));
    }
  }

  if (wants(3)) {
    std::cout << "degree 3, sample cases:\n";
    auto cfg = enumerate_lines(3);
    struct Sample {
      PermGroup g;
      const char* label;
      const char* alpha;
    };
    std::vector<long> root{0, 1, -1, 0, 0, 0, 0};
    std::vector<Sample> samples;
    samples.push_back({PermGroup::trivial(27), "VII", "1/120"});
    samples.push_back(
        {PermGroup::from_generators({reflection_action(cfg, root)}, 27), "VI", "1/30"});
    samples.push_back(
        {point_subgroup(cfg, {"(1,2,3)", "(1,2)", "(4,5,6)", "(4,5)"}), "III.ii", "1"});
    samples.push_back({point_subgroup(cfg, {"(1,2,3,4,5)", "(1,2)"}), "III.v", "17/24"});
    samples.push_back({point_subgroup(cfg, {"(1,2,3,4,5,6)", "(1,2)"}), "II.ii", "4/3"});
    for (const auto& s : samples) {
      auto r = alpha_for_subgroup(s.g, cfg, symmetry);
      report("degree 3 case " + std::string(s.label) + " alpha", s.alpha, rat_to_string(r.alpha));
      report("degree 3 case " + std::string(s.label) + " label", s.label, classify_cubic(s.g, cfg));
    }
  }

  std::cout << (mismatches ? "self-check FAILED\n" : "all table rows verified\n");
  return mismatches ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha invariants of del Pezzo surfaces of degree 1-7"};
  app.require_subcommand(1);

  int degree = 0;
  bool all = false, rho_maximal = false, emit_polytope = false, enumerate_large = false;
  std::string subgroup_file, cache_flag, format = "text", symmetry = "auto";
  std::string polytope_file;
  long mc_samples = 0;
  unsigned long seed = 0;
  std::vector<int> table_degrees;

  auto add_common = [&](CLI::App* cmd, bool with_degree) {
    if (with_degree) cmd->add_option("--degree", degree, "degree of the surface (1-7)")->required();
    cmd->add_option("--cache", cache_flag,
                    "directory for cached subgroup tables (or $" + std::string(kCacheEnvVar) + ")");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_flag("--enumerate-large", enumerate_large,
                  "allow subgroup enumeration in symmetry groups beyond the default bound");
    cmd->add_option("--symmetry", symmetry, "polytope symmetry reduction")
        ->check(CLI::IsMember({"auto", "off"}));
  };

  auto* alpha_cmd =
      app.add_subcommand("alpha", "compute alpha for one Galois action or a whole degree");
  add_common(alpha_cmd, true);
  alpha_cmd->add_flag("--all", all, "tabulate every subgroup conjugacy class");
  alpha_cmd->add_flag("--rho-maximal", rho_maximal, "tabulate only rho-maximal classes");
  alpha_cmd->add_option("--subgroup", subgroup_file,
                        "file with generators of the Galois action on the lines");
  alpha_cmd->add_flag("--emit-polytope", emit_polytope, "include the polytope in json output");

  auto* volume_cmd = app.add_subcommand("volume", "measure a polytope given by inequalities");
  volume_cmd->add_option("file", polytope_file, "json or polymake-style inequality file")
      ->required();
  volume_cmd->add_option("--monte-carlo", mc_samples, "also run a sampling estimate");
  volume_cmd->add_option("--seed", seed, "seed for the sampling estimate");
  volume_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  volume_cmd->add_option("--symmetry", symmetry, "polytope symmetry reduction")
      ->check(CLI::IsMember({"auto", "off"}));

  auto* classes_cmd =
      app.add_subcommand("classes", "list subgroup conjugacy classes of the symmetry group");
  add_common(classes_cmd, true);

  auto* classify_cmd =
      app.add_subcommand("classify", "name the classification case of a cubic surface action");
  classify_cmd->add_option("--subgroup", subgroup_file, "file with generators of the action")
      ->required();
  classify_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));

  auto* tables_cmd =
      app.add_subcommand("tables", "recompute the reference tables and verify them");
  tables_cmd->add_option("--degree", table_degrees, "restrict to these degrees");
  tables_cmd->add_option("--symmetry", symmetry, "polytope symmetry reduction")
      ->check(CLI::IsMember({"auto", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    SymmetryMode sym = symmetry_mode(symmetry);
    if (alpha_cmd->parsed()) {
      require_degree(degree);
      std::vector<AlphaResult> results;
      if (!subgroup_file.empty()) {
        auto g = group_from_file(subgroup_file, line_count(degree));
        auto cfg = enumerate_lines(degree);
        auto r = alpha_for_subgroup(g, cfg, sym, emit_polytope);
        if (degree == 3) r.label = classify_cubic(g, cfg);
        results.push_back(std::move(r));
      } else if (all || rho_maximal) {
        results = run_enumerated(degree, rho_maximal && !all, cache_flag,
                                 bound_for(enumerate_large), sym, emit_polytope);
      } else {
        auto r = alpha_for_subgroup(PermGroup::trivial(line_count(degree)), degree, sym,
                                    emit_polytope);
        if (degree == 3) r.label = "VII";
        results.push_back(std::move(r));
      }
      print_results(results, format);
    } else if (volume_cmd->parsed()) {
      auto [p, file_sym] = polytope_from_file(polytope_file);
      std::optional<SymmetrySpec> use_sym;
      if (sym == SymmetryMode::kAuto) {
        use_sym = file_sym;
        if (!use_sym) {
          auto detected = detect_symmetry(p);
          if (!detected.generators.empty()) use_sym = detected;
        }
      }
      Rat vol = volume(p, use_sym);
      Rat scaled = Rat(p.dim) * vol;
      if (format == "json") {
        json j{{"dimension", p.dim},
               {"volume", rat_to_string(vol)},
               {"dimension_times_volume", rat_to_string(scaled)}};
        if (mc_samples > 0) {
          auto mc = monte_carlo_volume(p, static_cast<unsigned long>(mc_samples), seed);
          j["monte_carlo"] = mc.estimate;
          j["monte_carlo_stderr"] = mc.stderr_;
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "dimension: " << p.dim << "\n"
                  << "volume: " << rat_to_string(vol) << "\n"
                  << "dimension * volume: " << rat_to_string(scaled) << "\n";
        if (mc_samples > 0) {
          auto mc = monte_carlo_volume(p, static_cast<unsigned long>(mc_samples), seed);
          std::cout << "monte carlo estimate: " << mc.estimate << " (stderr " << mc.stderr_
                    << ")\n";
        }
      }
    } else if (classes_cmd->parsed()) {
      require_degree(degree);
      auto classes = load_or_compute_classes(degree, cache_flag, bound_for(enumerate_large));
      if (format == "json") {
        std::cout << classes_to_json(degree, classes).dump(2) << "\n";
      } else {
        for (const auto& c : classes)
          std::cout << c.key << "  |G|=" << c.representative.order().get_str() << "  classes "
                    << c.class_size.get_str() << "  orbits "
                    << orbit_structure_string(c.orbit_structure) << "\n";
        std::cout << classes.size() << " subgroup conjugacy classes\n";
      }
    } else if (classify_cmd->parsed()) {
      auto cfg = enumerate_lines(3);
      auto g = group_from_file(subgroup_file, 27);
      auto label = classify_cubic(g, cfg);
      auto r = alpha_for_subgroup(g, cfg, sym);
      if (format == "json") {
        json j{{"case", label}, {"rho", r.rho}, {"alpha", rat_to_string(r.alpha)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "case: " << label << "\nrho: " << r.rho
                  << "\nalpha: " << rat_to_string(r.alpha) << "\n";
      }
    } else if (tables_cmd->parsed()) {
      return run_tables(table_degrees, sym);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

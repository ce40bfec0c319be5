// Command-line front end: neighbor classification tables, graph synthesis
// with validation, going-up runs, and the brute-force oracle suite.
//
// One JSON config file with a "command" discriminator drives a run; the
// command-line flags override individual fields.  Exit codes: 0 success,
// 2 config error, 3 precision exhaustion, 4 validation failure, 5 oracle
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "isovolc/io.hpp"
#include "isovolc/oracle.hpp"
#include "isovolc/synth.hpp"

using namespace isovolc;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  AlgebraConfig algebra;
  std::string out_dir = ".";
  u64 seed = 0;
  json body = json::object();  // command-specific block
};

RunConfig parse_config(const json& j) {
  RunConfig cfg;
  cfg.command = j.at("command").get<std::string>();
  if (j.contains("algebra")) cfg.algebra = algebra_config_from_json(j.at("algebra"));
  cfg.out_dir = j.value("out", ".");
  cfg.seed = j.value("seed", u64(0));
  if (j.contains(cfg.command)) cfg.body = j.at(cfg.command);
  return cfg;
}

SurfaceState starting_state(const RunConfig& cfg, const json& body,
                            std::shared_ptr<const SymplecticSpace> sp) {
  std::vector<int> cond(sp->algebra->real_prime_count(), 0);
  if (body.contains("conductor")) {
    cond.clear();
    for (auto& e : body.at("conductor")) cond.push_back(e.get<int>());
  }
  SurfaceState st = surface_state_from_conductor(sp, RealIdeal(cond));
  int descents = body.value("descents", 0);
  std::mt19937_64 rng(cfg.seed);
  for (int k = 0; k < descents; ++k) {
    int level = real_multiplier_order(st.lattice);
    auto planes = enumerate_isotropic_planes(st.lattice, st.form());
    std::vector<SubspaceModEll> down;
    for (auto& h : planes) {
      auto cand = scaled_lattice(lattice_from_plane(st.lattice, h), -1);
      if (real_multiplier_order(cand) == level + 1) down.push_back(h);
    }
    st = step_ll(st, down[rng() % down.size()]);
  }
  return st;
}

int cmd_neighbors(const RunConfig& cfg) {
  auto alg = build_algebra(cfg.algebra);
  auto sp = build_space(alg);
  std::string kind = cfg.body.value("kind", "ll");
  SurfaceState st = starting_state(cfg, cfg.body, sp);

  if (kind == "ll") {
    auto cls = classify_ll_neighbors(st.lattice, st.form());
    int level = real_multiplier_order(st.lattice);
    std::map<std::string, int> counts;
    for (auto& c : cls) counts[to_string(c.kind)]++;
    std::cout << "state: real level " << level;
    if (level == 0)
      std::cout << ", conductor " << lattice_order_descriptor(st.lattice).conductor->str();
    std::cout << "\n(l,l)-neighbors: " << cls.size() << "\n";
    if (level > 0) {
      std::cout << "ascending:" << counts["rm-ascending"] << " horizontal:" << counts["rm-horizontal"]
                << " descending:" << counts["rm-descending"] << "\n";
    } else {
      int pres = counts["rm-ascending"] + counts["rm-horizontal"];
      std::cout << "rm-preserving:" << pres << " rm-descending:" << counts["rm-descending"] << "\n";
    }
    std::cout << "targets:\n";
    std::map<std::string, int> orders;
    for (auto& c : cls) orders[c.resulting_order.str()]++;
    for (auto& [o, n] : orders) std::cout << "  " << o << " x" << n << "\n";
  } else if (kind == "l") {
    int pi = cfg.body.value("prime_index", 0);
    auto cls = classify_l_neighbors(st.lattice, pi);
    std::map<std::string, int> counts;
    for (auto& c : cls) counts[to_string(c.kind)]++;
    std::cout << "l-neighbors at prime " << pi << ": " << cls.size() << "\n";
    std::cout << "ascending:" << counts["l-ascending"] << " horizontal:" << counts["l-horizontal"]
              << " descending:" << counts["l-descending"] << "\n";
    std::map<std::string, int> orders;
    for (auto& c : cls) orders[c.resulting_order.str()]++;
    for (auto& [o, n] : orders) std::cout << "  " << o << " x" << n << "\n";
  } else {
    throw InvalidParams("neighbors.kind must be 'l' or 'll'");
  }
  return 0;
}

VolcanoParams volcano_params_from(const json& b) {
  VolcanoParams p;
  p.norm_l = b.value("norm_l", u64(2));
  p.symbol_in_K = b.value("symbol_in_K", -1);
  p.surface_cycle_length = b.value("surface_cycle_length", 1);
  p.depth = b.value("depth", 1);
  if (b.contains("unit_indices"))
    for (auto& u : b["unit_indices"]) p.unit_indices.push_back(u.get<int>());
  if (b.contains("level_ell_orders"))
    for (auto& o : b["level_ell_orders"]) p.level_ell_orders.push_back(o.get<int>());
  return p;
}

int cmd_synth(const RunConfig& cfg) try {
  std::filesystem::create_directories(cfg.out_dir);
  std::string family = cfg.body.value("family", "volcano");
  LeveledGraph g;
  ValidationReport rep;

  if (family == "volcano") {
    VolcanoParams p = volcano_params_from(cfg.body);
    g = synth_l_volcano(p);
    rep = validate_volcano(g, p);
  } else if (family == "polarized") {
    PolarizedParams p;
    p.base = volcano_params_from(cfg.body.at("base"));
    p.shimura_order_doubling = cfg.body.value("shimura_order_doubling", false);
    if (cfg.body.contains("u_ratios"))
      for (auto& r : cfg.body["u_ratios"]) p.u_ratios.push_back(r.get<int>());
    g = synth_polarized(p);
    VolcanoParams shape = p.base;
    if (p.shimura_order_doubling) shape.surface_cycle_length *= 2;
    shape.level_ell_orders.assign(shape.depth + 1, 1);
    bool exact = p.u_ratios.empty();
    for (int r : p.u_ratios) exact &= r == 1;
    rep = validate_volcano(g, shape, exact ? SizeCheck::absolute : SizeCheck::none, true, exact);
  } else if (family == "bileveled") {
    BiLeveledParams p;
    auto m = cfg.body.at("relation_matrix");
    p.relation_matrix = {{{m[0][0].get<long long>(), m[0][1].get<long long>()},
                          {m[1][0].get<long long>(), m[1][1].get<long long>()}}};
    p.ell = cfg.body.value("ell", cfg.algebra.ell);
    p.depth = cfg.body.value("depth", 1);
    g = synth_bileveled_unchecked(p);
    rep = validate_bileveled(g, p);
  } else if (family == "paste") {
    SplitType symbol = split_type_from_string(cfg.body.at("symbol").get<std::string>());
    u64 ell = cfg.body.value("ell", cfg.algebra.ell);
    LeveledGraph input;
    if (symbol == SplitType::split) {
      BiLeveledParams p;
      auto m = cfg.body.at("relation_matrix");
      p.relation_matrix = {{{m[0][0].get<long long>(), m[0][1].get<long long>()},
                            {m[1][0].get<long long>(), m[1][1].get<long long>()}}};
      p.ell = ell;
      p.depth = cfg.body.value("depth", 2);
      input = synth_bileveled(p);
    } else {
      input = synth_l_volcano(volcano_params_from(cfg.body.at("base")));
    }
    g = paste_ll_graph(input, symbol, ell);
    int want = symbol == SplitType::inert      ? static_cast<int>(ell * ell + 1)
               : symbol == SplitType::ramified ? static_cast<int>(ell * ell + ell + 1)
                                               : static_cast<int>(ell * ell + 2 * ell + 1);
    rep = validate_regular_outdegree(g, want);
  } else {
    throw InvalidParams("synth.family must be volcano, polarized, bileveled or paste");
  }

  write_file(cfg.out_dir + "/graph.dot", graph_to_dot(g));
  write_file(cfg.out_dir + "/graph.json", graph_to_json(g));
  write_file(cfg.out_dir + "/validation.json", rep.to_json());
  std::cout << rep.str();
  if (!rep.all_pass()) {
    std::cerr << "validation failed\n";
    return 4;
  }
  std::cout << "wrote " << cfg.out_dir << "/graph.{dot,json} and validation.json\n";
  return 0;
} catch (const InvalidParams& e) {
  // parameters that violate a structural constraint are a validation failure
  std::cerr << "validation failed: " << e.what() << "\n";
  return 4;
} catch (const ValidationFailed& e) {
  std::cerr << "validation failed: " << e.what() << "\n";
  return 4;
}

int cmd_goup(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  GoingUpOptions opts;
  opts.allow_cyclic = cfg.body.value("allow_cyclic", false);
  opts.l_principal_narrow = cfg.body.value("l_principal_narrow", opts.allow_cyclic);

  if (cfg.body.value("matrix", false)) {
    // exhaustive outcome table over symbols and parities at the configured l
    std::cout << "symbol                 parity reachable exceptional        largest\n";
    json rows = json::array();
    for (auto& sym : oracle::validated_symbols(cfg.algebra.ell)) {
      auto alg = build_algebra(cfg.algebra.ell, sym, cfg.algebra.precision);
      auto sp = build_space(alg);
      int np = alg->real_prime_count();
      for (int par = 0; par <= 1; ++par) {
        if (par == 1 && sym.real == SplitType::inert) continue;  // parity is always 0
        std::vector<int> cond(np, 0);
        cond[0] = par == 0 ? 2 : 1;
        SurfaceState st = surface_state_from_conductor(sp, RealIdeal(cond));
        auto rep = going_up(st, opts);
        std::ostringstream largest;
        for (auto& o : rep.largest_orders) largest << o.str() << " ";
        std::cout << sym.str() << std::string(sym.str().size() < 22 ? 22 - sym.str().size() : 1, ' ')
                  << "  " << par << "     " << (rep.reachable_max ? "yes" : "no ") << "      "
                  << (rep.exceptional_case.empty() ? "-" : rep.exceptional_case) << "  "
                  << largest.str() << "\n";
        json row;
        row["symbol"] = sym.str();
        row["parity"] = par;
        row["report"] = json::parse(rep.to_json());
        rows.push_back(row);
      }
    }
    write_file(cfg.out_dir + "/report.json", rows.dump(2));
    std::cout << "wrote " << cfg.out_dir << "/report.json\n";
    return 0;
  }

  auto alg = build_algebra(cfg.algebra);
  auto sp = build_space(alg);
  SurfaceState st = starting_state(cfg, cfg.body, sp);
  auto rep = going_up(st, opts);
  write_file(cfg.out_dir + "/report.json", rep.to_json());
  std::cout << "reachable_max: " << (rep.reachable_max ? "true" : "false") << "\n";
  if (!rep.exceptional_case.empty()) std::cout << "exceptional: " << rep.exceptional_case << "\n";
  std::cout << "largest orders:";
  for (auto& o : rep.largest_orders) std::cout << " " << o.str();
  std::cout << "\npath length: " << rep.path.size() << "\n";
  std::cout << "wrote " << cfg.out_dir << "/report.json\n";
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  oracle::OracleOptions opts;
  opts.fault_skip_isotropy = cfg.body.value("fault_skip_isotropy", false);
  u64 ell = cfg.body.value("ell", cfg.algebra.ell);
  auto rep = oracle::run_suite(ell, cfg.algebra.precision, opts);
  for (auto& c : rep.checks)
    std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name
              << (c.pass || c.detail.empty() ? "" : " -- " + c.detail) << "\n";
  std::cout << (rep.all_pass() ? "all oracle checks pass\n" : "oracle checks FAILED\n");
  return rep.all_pass() ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l-adic lattice models of isogeny graphs for abelian surfaces"};
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int precision = -1;
  int depth = -1;
  bool allow_cyclic = false;
  bool matrix = false;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory override");
  app.add_option("--seed", seed, "RNG seed override");
  app.add_option("--precision", precision, "working precision override (l-adic digits)");
  app.add_option("--depth", depth, "depth override for synthesis/exploration");
  app.add_flag("--allow-cyclic", allow_cyclic, "permit the final cyclic ascending step");
  app.add_flag("--matrix", matrix, "run the exhaustive going-up outcome table");
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot read config " << config_path << "\n";
      return 2;
    }
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return 2;
    }
    RunConfig cfg;
    try {
      cfg = parse_config(j);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<u64>(seed);
    if (precision > 0) cfg.algebra.precision = precision;
    if (depth >= 0) cfg.body["depth"] = depth;
    if (allow_cyclic) {
      cfg.body["allow_cyclic"] = true;
      cfg.body["l_principal_narrow"] = true;
    }
    if (matrix) cfg.body["matrix"] = true;
    if (cfg.algebra.precision < cfg.body.value("depth", 0) + 4) {
      std::cerr << "config error: precision must be at least depth + 4\n";
      return 2;
    }

    if (cfg.command == "neighbors") return cmd_neighbors(cfg);
    if (cfg.command == "synth") return cmd_synth(cfg);
    if (cfg.command == "goup") return cmd_goup(cfg);
    if (cfg.command == "oracle") return cmd_oracle(cfg);
    std::cerr << "unknown command: " << cfg.command << "\n";
    return 2;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const ValidationFailed& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return 4;
  } catch (const InvalidParams& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidSymbol& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedConfig& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

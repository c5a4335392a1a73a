#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "balor/common.hpp"
#include "balor/decorations.hpp"
#include "balor/fiid.hpp"
#include "balor/graph.hpp"
#include "balor/lazy_graph.hpp"
#include "balor/matching.hpp"
#include "balor/quotient.hpp"
#include "balor/star_transform.hpp"

using nlohmann::json;

namespace {

// 0 ok / 2 precondition / 3 numeric non-convergence / 4 I/O
int exit_code_for(balor::Errc c) {
  switch (c) {
    case balor::Errc::EigenFailure:
    case balor::Errc::GenerationFailed:
      return 3;
    case balor::Errc::IoError:
      return 4;
    default:
      return 2;
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw balor::Error(balor::Errc::IoError, "cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw balor::Error(balor::Errc::IoError, "read failure on " + path);
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw balor::Error(balor::Errc::IoError, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw balor::Error(balor::Errc::IoError, "write failure on " + path);
}

std::string hex16(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::string(buf);
}

// Canonical key=value record of the resolved invocation; its hash goes into every
// output header so a file can be traced back to the exact configuration.
struct Config {
  std::vector<std::pair<std::string, std::string>> kv;
  void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
  void add(const std::string& k, long long v) { add(k, std::to_string(v)); }
  std::string canonical() const {
    std::string s;
    for (const auto& [k, v] : kv) {
      s += k;
      s += '=';
      s += v;
      s += ';';
    }
    return s;
  }
  std::string hash() const { return hex16(balor::hash_str(0xc0f1ULL, canonical())); }
};

json json_header(const std::string& command, const Config& cfg, bool has_seed,
                 std::uint64_t seed) {
  json h;
  h["version"] = balor::kVersion;
  h["command"] = command;
  h["config_hash"] = cfg.hash();
  if (has_seed)
    h["seed"] = seed;
  else
    h["seed"] = nullptr;
  return h;
}

std::string csv_header(const std::string& command, const Config& cfg, bool has_seed,
                       std::uint64_t seed) {
  std::string s = "# version=";
  s += balor::kVersion;
  s += " command=" + command;
  s += " seed=" + (has_seed ? std::to_string(seed) : std::string("none"));
  s += " config=" + cfg.hash();
  s += "\n";
  return s;
}

// Inputs are keyed by content (canonical JSON), not by path, so the same graph
// reached two ways yields byte-identical output.
std::string graph_key(const balor::Graph& g) {
  return hex16(balor::hash_str(0x6b65ULL, balor::graph_to_json(g)));
}

balor::Graph load_graph(const std::string& input, const std::string& builtin) {
  if (!builtin.empty() && !input.empty())
    throw balor::Error(balor::Errc::InvalidInput, "give either --input or --builtin, not both");
  if (!builtin.empty()) return balor::builtin_finite(builtin);
  if (input.empty())
    throw balor::Error(balor::Errc::InvalidInput,
                       "missing input graph: use --input FILE or --builtin SPEC");
  return balor::graph_from_json(read_text(input));
}

balor::LazyGraph load_lazy(const std::string& input, const std::string& builtin,
                           bool transitive) {
  if (!builtin.empty() && !input.empty())
    throw balor::Error(balor::Errc::InvalidInput, "give either --input or --builtin, not both");
  if (!builtin.empty()) return balor::builtin_lazy(builtin);
  if (input.empty())
    throw balor::Error(balor::Errc::InvalidInput,
                       "missing input graph: use --input FILE or --builtin SPEC");
  balor::Graph g = balor::graph_from_json(read_text(input));
  return transitive ? balor::wrap_transitive(g) : balor::wrap_finite(g);
}

json orientation_json(const balor::Graph& g, const balor::Orientation& o) {
  json pairs = json::array();
  for (int e = 0; e < g.m(); ++e) pairs.push_back({o.tail(g, e), o.head[e]});
  return pairs;
}

std::string orientation_dot(const balor::Graph& g, const balor::Orientation& o) {
  std::string s = "digraph g {\n";
  for (int e = 0; e < g.m(); ++e)
    s += "  " + std::to_string(o.tail(g, e)) + " -> " + std::to_string(o.head[e]) + ";\n";
  s += "}\n";
  return s;
}

std::vector<double> seeded_labels(int n, std::uint64_t seed) {
  std::vector<double> lab(n);
  for (int v = 0; v < n; ++v)
    lab[v] = balor::to_unit(balor::mix64(balor::hash_combine(balor::mix64(seed), v)));
  return lab;
}

json round_stats_json(const std::vector<balor::RoundStats>& rounds) {
  json arr = json::array();
  for (const auto& r : rounds) {
    json j;
    j["round"] = r.round;
    j["max_path_len"] = r.max_path_len;
    j["flips"] = r.flips;
    j["unmatched_frac"] = r.unmatched_frac;
    arr.push_back(j);
  }
  return arr;
}

struct CommonOpts {
  std::string input, builtin, output, format = "json";
  std::uint64_t seed = 0;
  bool has_seed = false;
};

int run_transform(const CommonOpts& c) {
  balor::Graph g = load_graph(c.input, c.builtin);
  balor::StarGraph sg = balor::build_star(g);
  Config cfg;
  cfg.add("command", "transform");
  cfg.add("graph", graph_key(g));
  cfg.add("format", c.format);
  if (c.format == "dot") {
    write_output(c.output, balor::graph_to_dot(sg.star));
    return 0;
  }
  json out;
  out["header"] = json_header("transform", cfg, false, 0);
  out["base"] = json::parse(balor::graph_to_json(g));
  out["star"] = json::parse(balor::graph_to_json(sg.star));
  json kinds = json::array();
  for (const auto& k : sg.kind) {
    json kj;
    if (k.is_edge) {
      kj["type"] = "edge";
      kj["e"] = k.e;
    } else {
      kj["type"] = "copy";
      kj["v"] = k.v;
      kj["i"] = k.i;
    }
    kinds.push_back(kj);
  }
  out["kind"] = kinds;
  write_output(c.output, out.dump(2) + "\n");
  return 0;
}

int run_orient(const CommonOpts& c, bool use_euler, bool use_local, int rounds) {
  if (use_euler && use_local)
    throw balor::Error(balor::Errc::InvalidInput, "--euler and --local are mutually exclusive");
  if (use_local && !c.has_seed)
    throw balor::Error(balor::Errc::InvalidInput, "--local is randomized: --seed is required");
  balor::Graph g = load_graph(c.input, c.builtin);
  Config cfg;
  cfg.add("command", "orient");
  cfg.add("graph", graph_key(g));
  cfg.add("method", use_euler ? "euler" : (use_local ? "local" : "star_matching"));
  if (use_local) {
    cfg.add("rounds", rounds);
    cfg.add("seed", static_cast<long long>(c.seed));
  }
  cfg.add("format", c.format);

  balor::Orientation o;
  json stats = json::array();
  if (use_euler) {
    o = balor::euler_orient(g);
  } else {
    balor::StarGraph sg = balor::build_star(g);
    balor::Matching match;
    if (use_local) {
      auto [m, rs] = balor::local_matching_rounds(sg.star, seeded_labels(sg.star.n, c.seed),
                                                  rounds, c.seed);
      if (!m.covers_all())
        throw balor::Error(balor::Errc::GenerationFailed,
                           "local matching did not converge to a perfect matching after " +
                               std::to_string(rounds) + " rounds");
      match = std::move(m);
      stats = round_stats_json(rs);
    } else {
      match = balor::hopcroft_karp(sg.star);
      if (!match.covers_all())
        throw balor::Error(balor::Errc::NotPerfect, "star graph has no perfect matching");
    }
    o = balor::matching_to_orientation(sg, match);
  }
  if (!balor::verify_balanced(g, o).empty())
    throw balor::Error(balor::Errc::NotBalanced, "internal: produced orientation is unbalanced");

  if (c.format == "dot") {
    write_output(c.output, orientation_dot(g, o));
    return 0;
  }
  json out;
  out["header"] = json_header("orient", cfg, use_local && c.has_seed, c.seed);
  out["method"] = use_euler ? "euler" : (use_local ? "local" : "star_matching");
  out["n"] = g.n;
  out["m"] = g.m();
  out["pairs"] = orientation_json(g, o);
  out["balanced"] = true;
  if (use_local) out["rounds"] = stats;
  write_output(c.output, out.dump(2) + "\n");
  return 0;
}

int run_spectra(const CommonOpts& c, bool transitive) {
  balor::LazyGraph lg = load_lazy(c.input, c.builtin, transitive);
  Config cfg;
  cfg.add("command", "spectra");
  cfg.add("graph", c.builtin.empty() ? graph_key(balor::graph_from_json(read_text(c.input)))
                                     : "builtin:" + c.builtin);
  cfg.add("transitive", transitive ? 1 : 0);
  auto os = balor::orbit_structure(lg);
  auto P = balor::transition_matrix(os);
  auto sp = balor::mt_spectrum(P, os.ptilde);

  std::string s = csv_header("spectra", cfg, false, 0);
  s += "key,index,value\n";
  s += "orbits,," + std::to_string(os.t) + "\n";
  for (int i = 0; i < os.t; ++i) s += "rep," + std::to_string(i) + "," + os.reps[i] + "\n";
  for (int i = 0; i < os.t; ++i)
    s += "degree," + std::to_string(i) + "," + std::to_string(os.deg[i]) + "\n";
  for (int i = 0; i < os.t; ++i)
    for (int j = 0; j < os.t; ++j)
      s += "count," + std::to_string(i) + ":" + std::to_string(j) + "," +
           std::to_string(os.counts[i][j]) + "\n";
  for (int i = 0; i < os.t; ++i) s += "p," + std::to_string(i) + "," + fmt(os.p[i]) + "\n";
  for (int i = 0; i < os.t; ++i)
    s += "ptilde," + std::to_string(i) + "," + fmt(os.ptilde[i]) + "\n";
  s += "Delta,," + fmt(os.Delta) + "\n";
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i)
    s += "lambda," + std::to_string(i) + "," + fmt(sp.lambdas[i]) + "\n";
  s += "rho_T,," + fmt(sp.rho_T) + "\n";
  s += std::string("bipartite,,") + (sp.is_bipartite ? "1" : "0") + "\n";
  if (sp.is_bipartite)
    for (int i = 0; i < os.t; ++i)
      s += "part," + std::to_string(i) + "," + std::to_string(sp.parts[i]) + "\n";
  write_output(c.output, s);
  return 0;
}

int run_decay(const CommonOpts& c, bool transitive, const std::string& factor, int kmax,
              long long samples, long long center, int factor_rounds, double reference) {
  if (!c.has_seed)
    throw balor::Error(balor::Errc::InvalidInput, "decay is randomized: --seed is required");
  balor::LazyGraph lg = load_lazy(c.input, c.builtin, transitive);

  balor::BlockFactor bf;
  if (factor == "root") {
    bf = balor::factor_root_label();
  } else if (factor == "neighbors") {
    bf = balor::factor_neighbor_threshold();
  } else if (factor == "orientation") {
    // scalar view of the orientation factor: the +-1/0 state of the root's first edge
    balor::BlockFactor base = balor::factor_local_orientation(factor_rounds);
    bf.radius = base.radius;
    bf.rule = [base](const balor::FactorInput& in) {
      auto v = base.rule(in);
      return std::vector<double>{v.empty() ? 0.0 : v[0]};
    };
  } else {
    throw balor::Error(balor::Errc::UnsupportedParams, "unknown factor: " + factor);
  }

  Config cfg;
  cfg.add("command", "decay");
  cfg.add("graph", c.builtin.empty() ? graph_key(balor::graph_from_json(read_text(c.input)))
                                     : "builtin:" + c.builtin);
  cfg.add("transitive", transitive ? 1 : 0);
  cfg.add("factor", factor);
  if (factor == "orientation") cfg.add("factor_rounds", factor_rounds);
  cfg.add("kmax", kmax);
  cfg.add("samples", samples);
  cfg.add("center", center);
  cfg.add("seed", static_cast<long long>(c.seed));

  auto rep = balor::correlation_decay(lg, bf, kmax, samples, c.seed, center, reference);

  std::string s = csv_header("decay", cfg, true, c.seed);
  s += "# factor=" + factor + " radius=" + std::to_string(bf.radius) +
       " kmax=" + std::to_string(kmax) + " walks=" + std::to_string(rep.samples) +
       " center_samples=" + std::to_string(rep.center_samples) + " mean=" + fmt(rep.mean) +
       " fitted_rate=" + fmt(rep.fitted_rate) + " reference_rate=" + fmt(rep.reference_rate) +
       "\n";
  s += "k,estimate,std_error,kth_root\n";
  for (std::size_t i = 0; i < rep.ks.size(); ++i)
    s += std::to_string(rep.ks[i]) + "," + fmt(rep.estimates[i]) + "," +
         fmt(rep.std_errors[i]) + "," + fmt(rep.kth_roots[i]) + "\n";
  write_output(c.output, s);
  return 0;
}

int run_schreier(const CommonOpts& c) {
  balor::Graph g = load_graph(c.input, c.builtin);
  Config cfg;
  cfg.add("command", "schreier");
  cfg.add("graph", graph_key(g));
  balor::SchreierDecoration sd = balor::schreier_decorate_finite(g);
  auto errs = balor::verify_schreier(g, sd);
  if (!errs.empty())
    throw balor::Error(balor::Errc::InvalidInput, "internal: decoration invalid: " + errs[0]);
  json out;
  out["header"] = json_header("schreier", cfg, false, 0);
  out["n"] = g.n;
  out["m"] = g.m();
  out["colors"] = sd.colors;
  out["pairs"] = orientation_json(g, sd.orientation);
  out["color"] = sd.color;
  out["valid"] = true;
  write_output(c.output, out.dump(2) + "\n");
  return 0;
}

int run_match(const CommonOpts& c, bool use_local, int rounds) {
  if (use_local && !c.has_seed)
    throw balor::Error(balor::Errc::InvalidInput, "--local is randomized: --seed is required");
  balor::Graph g = load_graph(c.input, c.builtin);
  Config cfg;
  cfg.add("command", "match");
  cfg.add("graph", graph_key(g));
  cfg.add("method", use_local ? "local" : "hopcroft_karp");
  if (use_local) {
    cfg.add("rounds", rounds);
    cfg.add("seed", static_cast<long long>(c.seed));
  }
  balor::Matching m;
  json stats = json::array();
  if (use_local) {
    auto [mm, rs] = balor::local_matching_rounds(g, seeded_labels(g.n, c.seed), rounds, c.seed);
    m = std::move(mm);
    stats = round_stats_json(rs);
  } else {
    m = balor::hopcroft_karp(g);
  }
  json out;
  out["header"] = json_header("match", cfg, use_local && c.has_seed, c.seed);
  out["method"] = use_local ? "local" : "hopcroft_karp";
  out["n"] = g.n;
  out["partner"] = m.partner;
  out["size"] = m.size();
  out["perfect"] = m.covers_all();
  if (use_local) out["rounds"] = stats;
  write_output(c.output, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"balanced orientations, star transforms, and spectral estimation"};
  app.require_subcommand(1);

  // BALOR_THREADS is reserved for future parallel builds; validate it so a typo
  // fails loudly instead of silently running with an unintended configuration.
  if (const char* tv = std::getenv("BALOR_THREADS")) {
    char* end = nullptr;
    long t = std::strtol(tv, &end, 10);
    if (end == tv || *end != '\0' || t < 1) {
      std::cerr << "error code=UnsupportedParams message=BALOR_THREADS must be a positive "
                   "integer\n";
      return 2;
    }
  }

  CommonOpts t_opts, o_opts, sp_opts, d_opts, sc_opts, ma_opts;
  bool o_euler = false, o_local = false, sp_transitive = false, d_transitive = false,
       ma_local = false;
  int o_rounds = 12, ma_rounds = 12, d_kmax = 16, d_factor_rounds = 2;
  long long d_samples = 100000, d_center = 100000;
  double d_reference = std::numeric_limits<double>::quiet_NaN();
  std::string d_factor = "neighbors";

  auto add_common = [](CLI::App* sub, CommonOpts& c, bool with_format,
                       const std::string& builtin_help) {
    sub->add_option("--input", c.input, "input graph as JSON {\"n\":..,\"edges\":[[u,v],..]}");
    sub->add_option("--builtin", c.builtin, builtin_help);
    sub->add_option("--output", c.output, "output file (default: stdout)");
    if (with_format)
      sub->add_option("--format", c.format, "output format")
          ->check(CLI::IsMember({"json", "dot"}));
  };

  auto* t = app.add_subcommand("transform", "build the bipartite star graph of an even-degree graph");
  add_common(t, t_opts, true, "finite builtin, e.g. circulant:8:1,2");

  auto* o = app.add_subcommand("orient", "balanced orientation via star matching, local rounds, or Euler circuits");
  add_common(o, o_opts, true, "finite builtin, e.g. circulant:8:1,2");
  o->add_flag("--euler", o_euler, "orient along Euler circuits instead of star matching");
  o->add_flag("--local", o_local, "use local matching rounds on the star (requires --seed)");
  o->add_option("--rounds", o_rounds, "matching rounds for --local")->check(CLI::PositiveNumber);
  auto* o_seed = o->add_option("--seed", o_opts.seed, "RNG seed (required with --local)");

  auto* sp = app.add_subcommand("spectra", "orbit chain: stationary weights, eigenvalues, rho_T");
  add_common(sp, sp_opts, false, "lazy builtin: tree:4, biregular:3:4, pendant:2, circulant:8:1,2");
  sp->add_flag("--transitive", sp_transitive,
               "treat a finite --input as vertex-transitive (single orbit)");

  auto* d = app.add_subcommand("decay", "Monte Carlo correlation decay of a local factor");
  add_common(d, d_opts, false, "lazy builtin: tree:4, biregular:3:4, pendant:2, circulant:8:1,2");
  d->add_flag("--transitive", d_transitive,
              "treat a finite --input as vertex-transitive (single orbit)");
  d->add_option("--factor", d_factor, "observable: root, neighbors, or orientation")
      ->check(CLI::IsMember({"root", "neighbors", "orientation"}));
  d->add_option("--kmax", d_kmax, "largest lag k")->check(CLI::PositiveNumber);
  d->add_option("--samples", d_samples, "independent walks")->check(CLI::PositiveNumber);
  d->add_option("--center", d_center, "samples for the empirical mean")
      ->check(CLI::PositiveNumber);
  d->add_option("--factor-rounds", d_factor_rounds,
                "matching rounds inside the orientation factor")
      ->check(CLI::PositiveNumber);
  d->add_option("--reference", d_reference, "reference rate echoed in the report");
  auto* d_seed = d->add_option("--seed", d_opts.seed, "RNG seed (required)");

  auto* sc = app.add_subcommand("schreier", "orientation + color classes with one in/out edge per color per vertex");
  add_common(sc, sc_opts, false, "finite builtin, e.g. circulant:8:1,2");

  auto* ma = app.add_subcommand("match", "maximum matching of a bipartite graph");
  add_common(ma, ma_opts, false, "finite builtin, e.g. circulant:8:1,2 (must be bipartite)");
  ma->add_flag("--local", ma_local, "use local matching rounds (requires --seed)");
  ma->add_option("--rounds", ma_rounds, "matching rounds for --local")
      ->check(CLI::PositiveNumber);
  auto* ma_seed = ma->add_option("--seed", ma_opts.seed, "RNG seed (required with --local)");

  try {
    app.parse(argc, argv);
    o_opts.has_seed = o_seed->count() > 0;
    d_opts.has_seed = d_seed->count() > 0;
    ma_opts.has_seed = ma_seed->count() > 0;
    if (*t) return run_transform(t_opts);
    if (*o) return run_orient(o_opts, o_euler, o_local, o_rounds);
    if (*sp) return run_spectra(sp_opts, sp_transitive);
    if (*d)
      return run_decay(d_opts, d_transitive, d_factor, d_kmax, d_samples, d_center,
                       d_factor_rounds, d_reference);
    if (*sc) return run_schreier(sc_opts);
    if (*ma) return run_match(ma_opts, ma_local, ma_rounds);
    std::cerr << "error code=InvalidInput message=no subcommand\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error code=InvalidInput message=" << e.what() << "\n";
    return 2;
  } catch (const balor::Error& e) {
    std::cerr << "error code=" << balor::errc_name(e.code) << " message=" << e.what() << "\n";
    return exit_code_for(e.code);
  } catch (const std::exception& e) {
    std::cerr << "error code=InvalidInput message=" << e.what() << "\n";
    return 2;
  }
}

#include "lohe/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lohe/checks.hpp"
#include "lohe/dynamics.hpp"
#include "lohe/generate.hpp"
#include "lohe/models.hpp"
#include "lohe/serialize.hpp"

namespace lohe {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct RunFiles {
  fs::path dir;
  std::vector<std::string> manifest;

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + (dir / name).string());
    out << content;
    manifest.push_back(name);
  }
};

double get_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

int get_or(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ConfigError(std::string("field '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

bool get_or(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError(std::string("field '") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

InitialSpec parse_init(const json& j, const SizeVector& size, int ensemble, std::uint64_t seed) {
  InitialSpec spec;
  spec.size = size;
  spec.ensemble = ensemble;
  spec.seed = seed;
  spec.kind = InitKind::UnitTensor;
  if (j.contains("init")) {
    const json& init = j.at("init");
    const std::string kind = init.value("kind", "unit_tensor");
    if (kind == "sphere") spec.kind = InitKind::Sphere;
    else if (kind == "unitary") spec.kind = InitKind::Unitary;
    else if (kind == "special_orthogonal") spec.kind = InitKind::SpecialOrthogonal;
    else if (kind == "unit_tensor") spec.kind = InitKind::UnitTensor;
    else if (kind == "phase") spec.kind = InitKind::Phase;
    else throw ConfigError("unknown init kind: " + kind);
    spec.spread = get_or(init, "spread", 0.0);
    if (init.contains("min_alignment")) spec.min_alignment = init.at("min_alignment").get<double>();
    if (init.contains("max_diameter")) spec.max_diameter = init.at("max_diameter").get<double>();
    spec.budget = get_or(init, "budget", 100000);
    spec.real = get_or(init, "real", false);
  }
  return spec;
}

CharacteristicSymbol generated_symbol(const json& gen, std::uint64_t default_seed) {
  if (!gen.contains("size")) throw ConfigError("generate: missing 'size'");
  SizeVector size;
  try {
    size = SizeVector{gen.at("size").get<std::vector<int>>()};
  } catch (const ShapeError& e) {
    throw ConfigError(std::string("generate: ") + e.what());
  } catch (const json::exception&) {
    throw ConfigError("generate: 'size' must be an array of integers");
  }
  const int ensemble = get_or(gen, "N", 3);
  if (ensemble < 1) throw ConfigError("generate: N must be >= 1");
  const auto seed = gen.contains("seed") ? gen.at("seed").get<std::uint64_t>() : default_seed;
  Rng rng(seed);

  CharacteristicSymbol c;
  c.size = size;
  if (gen.contains("coupling")) {
    const auto values = gen.at("coupling").get<std::vector<double>>();
    if (values.size() != (std::size_t{1} << size.rank())) {
      throw ConfigError("generate: 'coupling' must hold exactly 2^rank strengths");
    }
    c.coupling = CouplingTensor(size.rank(), values);
  } else {
    c.coupling = CouplingTensor(size.rank());
    for (double& v : c.coupling.values()) v = 2.0 * rng.uniform() - 1.0;
  }
  const double freq_scale = get_or(gen, "freq_scale", 1.0);
  const bool freq_common = get_or(gen, "freq_common", false);
  const bool real = get_or(gen, "real", false);
  const FrequencyTensor shared = random_block_skew_freq(size, rng, freq_scale, real);
  for (int j = 0; j < ensemble; ++j) {
    c.freqs.push_back(freq_common ? shared : random_block_skew_freq(size, rng, freq_scale, real));
  }
  InitialSpec init = parse_init(gen, size, ensemble, seed + 1);
  init.real = init.real || real;
  c.initial = generate_initial(init);
  return c;
}

CharacteristicSymbol resolve_symbol(const json& spec, std::uint64_t default_seed) {
  if (spec.is_object() && spec.contains("file")) return load_symbol(spec.at("file").get<std::string>());
  if (spec.is_object() && spec.contains("generate")) return generated_symbol(spec.at("generate"), default_seed);
  return symbol_from_json(spec);
}

// -- named model simulation -----------------------------------------------------

struct ModelSim {
  std::vector<DiagnosticsRecord> records;
  std::vector<std::vector<DenseTensor>> snapshots;  // tensor view of each sample
  std::string summary;
};

ModelSim simulate_model(const json& m, double h, double t_end, int sample_every, std::uint64_t seed) {
  const std::string kind = m.value("kind", "");
  const int ensemble = get_or(m, "N", 4);
  const double kappa = get_or(m, "kappa", 1.0);
  const double freq_scale = get_or(m, "freq_scale", 0.0);
  const bool freq_common = get_or(m, "freq_common", false);
  Rng rng(seed);
  ModelSim sim;

  const auto skews = [&](int count, int n) {
    std::vector<RealMatrix> out;
    const RealMatrix base = random_skew_symmetric(n, rng, freq_scale);
    for (int j = 0; j < count; ++j) {
      out.push_back(freq_common ? base : random_skew_symmetric(n, rng, freq_scale));
    }
    return out;
  };

  if (kind == "kuramoto") {
    KuramotoParams p;
    p.kappa = kappa;
    for (int j = 0; j < ensemble; ++j) p.nu.push_back(freq_scale * rng.gauss());
    const auto run = integrate_kuramoto(p, sample_phases(ensemble, rng), h, t_end, sample_every);
    for (std::size_t s = 0; s < run.states.size(); ++s) {
      std::vector<DenseTensor> z;
      for (double th : run.states[s]) z.push_back(DenseTensor::scalar(std::exp(Complex{0.0, th})));
      DiagnosticsRecord rec = functionals(run.times[s], z);
      sim.records.push_back(rec);
      sim.snapshots.push_back(std::move(z));
    }
    sim.summary = "kuramoto N=" + std::to_string(ensemble);
  } else if (kind == "sphere") {
    const int d = get_or(m, "d", 3);
    SphereParams p{skews(ensemble, d), kappa};
    InitialSpec init = parse_init(m, SizeVector{{d}}, ensemble, seed + 1);
    Rng init_rng(init.seed);
    const auto x0 = sample_sphere(d, ensemble, init_rng, init.spread, init.min_alignment,
                                  init.max_diameter, init.budget);
    const auto run = integrate_sphere(p, x0, h, t_end, sample_every);
    for (std::size_t s = 0; s < run.states.size(); ++s) {
      sim.records.push_back(functionals(run.times[s], run.states[s]));
      std::vector<DenseTensor> ts;
      for (const auto& x : run.states[s]) ts.push_back(tensor_from_vec(x));
      sim.snapshots.push_back(std::move(ts));
    }
    sim.summary = "sphere d=" + std::to_string(d);
  } else if (kind == "sphere_so") {
    const int d = get_or(m, "d", 3);
    const int n = get_or(m, "n", 3);
    SphereSOParams p;
    p.kappa = kappa;
    p.omega = skews(ensemble, d);
    const double a_scale = get_or(m, "a_scale", freq_scale);
    const RealMatrix base_a = random_skew_symmetric(n, rng, a_scale);
    const bool a_common = get_or(m, "a_common", false);
    for (int j = 0; j < ensemble; ++j) {
      p.a.push_back(a_common ? base_a : random_skew_symmetric(n, rng, a_scale));
    }
    InitialSpec init = parse_init(m, SizeVector{{d}}, ensemble, seed + 1);
    Rng init_rng(init.seed);
    SphereSOState s0;
    s0.x = sample_sphere(d, ensemble, init_rng, init.spread, init.min_alignment, std::nullopt,
                         init.budget);
    s0.u = sample_special_orthogonal(n, ensemble, init_rng, init.spread, std::nullopt,
                                     init.max_diameter, init.budget);
    const auto run = integrate_sphere_so(p, s0, h, t_end, sample_every);
    for (std::size_t s = 0; s < run.states.size(); ++s) {
      DiagnosticsRecord rec = functionals(run.times[s], run.states[s].x);
      const DiagnosticsRecord urec = functionals(run.times[s], run.states[s].u);
      rec.diameter_u = urec.diameter_u;
      rec.s_u = urec.s_u;
      sim.records.push_back(rec);
      std::vector<DenseTensor> ts;
      for (const auto& x : run.states[s].x) ts.push_back(tensor_from_vec(x));
      for (const auto& u : run.states[s].u) ts.push_back(tensor_from_matrix(u));
      sim.snapshots.push_back(std::move(ts));
    }
    sim.summary = "sphere_so d=" + std::to_string(d) + " n=" + std::to_string(n);
  } else if (kind == "lohe_matrix") {
    const int d = get_or(m, "d", 2);
    LoheMatrixParams p;
    p.kappa = kappa;
    for (int j = 0; j < ensemble; ++j) p.h.push_back(random_hermitian(d, rng, freq_scale));
    Rng init_rng(seed + 1);
    const auto run = integrate_lohe_matrix(p, sample_unitary(d, ensemble, init_rng), h, t_end,
                                           sample_every);
    for (std::size_t s = 0; s < run.states.size(); ++s) {
      sim.records.push_back(functionals(run.times[s], run.states[s]));
      std::vector<DenseTensor> ts;
      for (const auto& u : run.states[s]) ts.push_back(tensor_from_matrix(u));
      sim.snapshots.push_back(std::move(ts));
    }
    sim.summary = "lohe_matrix d=" + std::to_string(d);
  } else if (kind == "double_sphere") {
    const int d1 = get_or(m, "d1", 3);
    const int d2 = get_or(m, "d2", 3);
    DoubleSphereParams p;
    p.kappa = kappa;
    p.omega = skews(ensemble, d1);
    p.lambda = skews(ensemble, d2);
    InitialSpec init = parse_init(m, SizeVector{{d1}}, ensemble, seed + 1);
    Rng init_rng(init.seed);
    DoubleSphereState s0;
    s0.u = sample_sphere(d1, ensemble, init_rng, init.spread, init.min_alignment, std::nullopt,
                         init.budget);
    s0.v = sample_sphere(d2, ensemble, init_rng, init.spread, init.min_alignment, std::nullopt,
                         init.budget);
    const auto run = integrate_double_sphere(p, s0, h, t_end, sample_every);
    for (std::size_t s = 0; s < run.states.size(); ++s) {
      DiagnosticsRecord rec = functionals(run.times[s], run.states[s].u);
      const DiagnosticsRecord vrec = functionals(run.times[s], run.states[s].v);
      rec.diameter_u = vrec.diameter_x;
      sim.records.push_back(rec);
      std::vector<DenseTensor> ts;
      for (const auto& x : run.states[s].u) ts.push_back(tensor_from_vec(x));
      for (const auto& x : run.states[s].v) ts.push_back(tensor_from_vec(x));
      sim.snapshots.push_back(std::move(ts));
    }
    sim.summary = "double_sphere";
  } else if (kind == "kuramoto_sphere") {
    const int d = get_or(m, "d", 4);
    KuramotoSphereParams p;
    p.kappa_theta = get_or(m, "kappa_theta", kappa);
    p.kappa_x = get_or(m, "kappa_x", kappa);
    p.omega = skews(ensemble, d);
    for (int j = 0; j < ensemble; ++j) p.nu.push_back(freq_scale * rng.gauss());
    Rng init_rng(seed + 1);
    KuramotoSphereState s0;
    s0.theta = sample_phases(ensemble, init_rng);
    s0.x = sample_sphere(d, ensemble, init_rng);
    const auto run = integrate_kuramoto_sphere(p, s0, h, t_end, sample_every);
    for (std::size_t s = 0; s < run.states.size(); ++s) {
      sim.records.push_back(functionals(run.times[s], run.states[s].x));
      std::vector<DenseTensor> ts;
      for (std::size_t j = 0; j < run.states[s].theta.size(); ++j) {
        ts.push_back(DenseTensor::scalar(std::exp(Complex{0.0, run.states[s].theta[j]})));
      }
      for (const auto& x : run.states[s].x) ts.push_back(tensor_from_vec(x));
      sim.snapshots.push_back(std::move(ts));
    }
    sim.summary = "kuramoto_sphere d=" + std::to_string(d);
  } else {
    throw ConfigError("unknown model kind: " + kind);
  }
  return sim;
}

std::string snapshot_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "state_%04zu.csv", index);
  return buf;
}

int simulate(const json& cfg, const CliOverrides& o, RunFiles& files, std::string& report,
             std::ostream& log) {
  IntegrateOptions opt;
  opt.h = o.h.value_or(get_or(cfg, "h", 1e-3));
  opt.t_end = o.t_end.value_or(get_or(cfg, "t_end", 10.0));
  opt.sample_every = get_or(cfg, "sample_every", 100);
  opt.renormalize = o.renormalize || get_or(cfg, "renormalize", false);
  opt.record_residual = get_or(cfg, "record_residual", false);
  if (!(opt.h > 0.0) || !(opt.t_end > 0.0)) throw ConfigError("h and t_end must be positive");
  const auto seed = o.seed ? *o.seed : static_cast<std::uint64_t>(get_or(cfg, "seed", 12345));
  const int snapshots = get_or(cfg, "snapshots", 0);

  std::vector<DiagnosticsRecord> records;
  std::vector<std::vector<DenseTensor>> states;
  std::string what;

  if (cfg.contains("model")) {
    ModelSim sim = simulate_model(cfg.at("model"), opt.h, opt.t_end, opt.sample_every, seed);
    records = std::move(sim.records);
    states = std::move(sim.snapshots);
    what = sim.summary;
  } else if (cfg.contains("components")) {
    std::vector<CharacteristicSymbol> comps;
    for (const auto& spec : cfg.at("components")) comps.push_back(resolve_symbol(spec, seed));
    const ComponentTrajectory traj = integrate_components(comps, opt);
    records = traj.records;
    for (const auto& sample : traj.states) {
      std::vector<DenseTensor> flat;
      for (const auto& comp : sample) flat.insert(flat.end(), comp.begin(), comp.end());
      states.push_back(std::move(flat));
    }
    what = "weakly coupled system, " + std::to_string(comps.size()) + " components";
  } else if (cfg.contains("symbol")) {
    const CharacteristicSymbol c = resolve_symbol(cfg.at("symbol"), seed);
    const SymbolValidation v = validate_symbol(c);
    if (!v.shapes_ok) throw ConfigError("invalid symbol: " + v.shape_message);
    const Trajectory traj = integrate_symbol(c, opt);
    records = traj.records;
    states = traj.states;
    what = "tensor flow, rank " + std::to_string(c.rank()) + ", N=" + std::to_string(c.ensemble_size());
  } else {
    throw ConfigError("simulate: provide 'symbol', 'components', or 'model'");
  }

  files.write("diagnostics.csv", diagnostics_csv(records));
  if (snapshots > 0) {
    for (std::size_t s = 0; s < states.size(); s += static_cast<std::size_t>(snapshots)) {
      files.write(snapshot_name(s), state_csv(states[s]));
    }
  }

  report += "simulated: " + what + "\n";
  report += "samples: " + std::to_string(records.size()) + "\n";
  if (!records.empty()) report += "final: " + record_summary(records.back()) + "\n";
  bool ok = true;
  if (cfg.contains("assert")) {
    const json& a = cfg.at("assert");
    if (a.contains("norm_drift_below")) {
      const double bound = a.at("norm_drift_below").get<double>();
      double worst = 0.0;
      for (const auto& r : records) worst = std::max(worst, r.norm_drift.value_or(0.0));
      const bool pass = worst <= bound;
      ok = ok && pass;
      report += std::string(pass ? "PASS" : "FAIL") + " norm drift " + num(worst) + " <= " +
                num(bound) + "\n";
    }
    if (a.contains("final_diameter_below")) {
      const double bound = a.at("final_diameter_below").get<double>();
      const double value = records.back().diameter_x.value_or(0.0);
      const bool pass = value <= bound;
      ok = ok && pass;
      report += std::string(pass ? "PASS" : "FAIL") + " final diameter " + num(value) + " <= " +
                num(bound) + "\n";
    }
  }
  log << report;
  return ok ? 0 : 1;
}

int fuse(const json& cfg, RunFiles& files, std::string& report, std::ostream& log) {
  if (!cfg.contains("inputs") || !cfg.at("inputs").is_array() || cfg.at("inputs").size() < 2) {
    throw ConfigError("fuse: 'inputs' must list at least two symbol files");
  }
  std::vector<CharacteristicSymbol> symbols;
  std::vector<SizeVector> sizes;
  for (const auto& path : cfg.at("inputs")) {
    symbols.push_back(load_symbol(path.get<std::string>()));
    sizes.push_back(symbols.back().size);
  }
  CharacteristicSymbol fused = symbols.front();
  for (std::size_t i = 1; i < symbols.size(); ++i) {
    try {
      fused = fuse_symbols(fused, symbols[i]);
    } catch (const EnsembleSizeError& e) {
      throw ConfigError(e.what());
    }
  }
  const std::string name = cfg.value("output_file", std::string("fused.json"));
  files.write(name, symbol_to_json(fused).dump(2) + "\n");

  const CostReport cost = cost_report(sizes);
  report += "fused " + std::to_string(symbols.size()) + " symbols; rank " +
            std::to_string(fused.rank()) + ", entries " + std::to_string(cost.fused_entries) + "\n";
  report += "factored entry count " + std::to_string(cost.summed_entries) + ", bound " + num(cost.bound) +
            (cost.bound_applicable ? (cost.bound_holds ? " (holds)" : " (violated)") : " (n/a)") + "\n";
  if (cost.bound_applicable) {
    report += "factored-cost reduction ratio >= " + num(cost.reduction_ratio) + "\n";
  }
  const SymbolValidation v = validate_symbol(fused);
  report += std::string("fused symbol valid: ") + (v.ok() ? "yes" : "no") + "\n";
  log << report;
  return 0;
}

int check(const json& cfg, const CliOverrides& o, std::string& report, std::ostream& log) {
  std::string suite = o.suite.value_or(cfg.value("suite", std::string{}));
  if (suite.empty()) throw ConfigError("check: no suite named (use --suite or the 'suite' field)");
  const auto seed = o.seed ? *o.seed : static_cast<std::uint64_t>(get_or(cfg, "seed", 20240));
  SuiteResult result;
  try {
    result = run_suite(suite, seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& l : result.lines) {
    report += std::string(l.passed ? "PASS " : "FAIL ") + l.name +
              (l.detail.empty() ? "" : " [" + l.detail + "]") + "\n";
  }
  log << report;
  return result.passed() ? 0 : 1;
}

}  // namespace

int run_config(const std::string& config_path, const CliOverrides& overrides, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  json cfg;
  RunFiles files;
  std::string report;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config: " + config_path);
    try {
      in >> cfg;
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    files.dir = overrides.out.value_or(cfg.value("out", std::string("out")));
    report += "config: " + config_path + "\n" + cfg.dump(2) + "\n";

    const std::string mode = cfg.value("mode", "simulate");
    int code = 0;
    if (mode == "simulate") {
      code = simulate(cfg, overrides, files, report, log);
    } else if (mode == "fuse") {
      code = fuse(cfg, files, report, log);
    } else if (mode == "check") {
      code = check(cfg, overrides, report, log);
    } else {
      throw ConfigError("unknown mode: " + mode);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report += "wall time: " + num(wall) + " s\n";
    report += "files:";
    for (const auto& name : files.manifest) report += " " + name;
    report += " report.txt\n";
    report += std::string("exit: ") + std::to_string(code) + "\n";
    files.write("report.txt", report);
    return code;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  } catch (const GenerationError& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DivergenceError& e) {
    log << "divergence: " << e.what() << "\n";
    return 1;
  } catch (const ShapeError& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  } catch (const EnsembleSizeError& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lohe

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wigner_lab/analysis.hpp"
#include "wigner_lab/errors.hpp"
#include "wigner_lab/io.hpp"
#include "wigner_lab/kernels.hpp"
#include "wigner_lab/parallel.hpp"
#include "wigner_lab/reference.hpp"
#include "wigner_lab/smoothing.hpp"
#include "wigner_lab/transforms.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace wigner_lab;
using std::numbers::pi;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t n = 256;
  double half_width = 8.0;
  std::string phase = R"({"family":"kohn_nirenberg"})";
  std::string symbol = R"("one")";
  std::string smoothing = R"({"kind":"gaussian"})";
  std::string N = "1,2,3,4";
  std::string route = "analytic";
  double mask_width = 1.0;
  std::string csv;
  std::string output;
  std::size_t threads = 0;
  std::uint64_t seed = 20240601;
  std::string config;
  std::string builtin;
  std::string input;
  std::vector<std::string> z, w;
  std::size_t max_samples = 1'000'000;
  bool allow_large = false;
};

// Builtins are built on phi(t) = e^{-pi t^2}, whose Wigner distribution is
// 2^{1/2} e^{-2 pi (x^2 + xi^2)}.
const std::map<std::string, std::string> builtins{
    {"gaussian", "e^{-pi t^2}"},
    {"shifted-gaussian", "e^{-pi (t - 2)^2} e^{2 pi i t}"},
    {"chirp", "e^{-pi t^2} e^{i pi t^2}"},
    {"two-gaussians", "e^{-pi (t - 3)^2} + e^{-pi (t + 3)^2}"},
};

std::string builtin_list() {
  std::string s;
  for (const auto& [name, formula] : builtins) s += "  " + name + ": " + formula + "\n";
  return s;
}

Signal builtin_signal(const std::string& name, const Grid1D& g) {
  auto phi = [](double t) { return std::exp(-pi * t * t); };
  if (name == "gaussian") return Signal::sample(g, [&](double t) { return cplx(phi(t)); });
  if (name == "shifted-gaussian") return Signal::sample(g, [&](double t) { return phi(t - 2.0) * std::polar(1.0, 2.0 * pi * t); });
  if (name == "chirp") return Signal::sample(g, [&](double t) { return phi(t) * std::polar(1.0, pi * t * t); });
  if (name == "two-gaussians") return Signal::sample(g, [&](double t) { return cplx(phi(t - 3.0) + phi(t + 3.0)); });
  throw UsageError("unknown builtin '" + name + "'; available builtins:\n" + builtin_list());
}

// Mask around the bumps a builtin is made of; its complement holds the
// interference terms.
Mask auto_mask(const std::string& name, double width) {
  auto strip = [&](double c) { return Tube{Tube::Kind::x, c, width, {}, ""}; };
  if (name == "two-gaussians") return Mask{{strip(-3.0), strip(3.0)}};
  if (name == "shifted-gaussian") return Mask{{strip(2.0)}};
  return Mask{{strip(0.0)}};
}

json parse_json_flag(const std::string& text, const std::string& flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("--" + flag + ": " + e.what(), e.byte);
  }
}

std::vector<int> parse_N(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("--N expects a comma-separated list of integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw UsageError("--N is empty");
  return out;
}

PhasePoint parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("phase-space point must be 'x,xi', got '" + s + "'");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("phase-space point must be 'x,xi', got '" + s + "'");
  }
}

json provenance(const std::string& command, const Options& o) {
  return {{"command", command},
          {"n", o.n},
          {"half_width", o.half_width},
          {"builtin", o.builtin},
          {"input", o.input},
          {"seed", o.seed}};
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
  out << j.dump(2) << "\n";
}

fs::path with_suffix(const std::string& base, const std::string& suffix) { return fs::path(base + suffix); }

void require_output(const Options& o) {
  if (o.output.empty()) throw UsageError("missing required output path -o");
}

Signal input_signal(const Options& o) {
  if (!o.builtin.empty() && !o.input.empty()) throw UsageError("give either --builtin or --input, not both");
  if (!o.input.empty()) return io::to_signal(io::read_field(o.input));
  if (o.builtin.empty()) throw UsageError("no input: pass --builtin <name> or --input <signal file>");
  return builtin_signal(o.builtin, Grid1D(0.0, o.half_width, o.n));
}

void write_field2d(const Options& o, const PhaseSpaceField& f, const std::string& command, json extra = {}) {
  io::FieldFile file = io::to_file(f);
  file.extra = {{"provenance", provenance(command, o)}};
  for (auto& [k, v] : extra.items()) file.extra[k] = v;
  io::write_field(o.output, file);
  if (!o.csv.empty()) io::write_csv(o.csv, f);
}

int cmd_wigner(const Options& o) {
  require_output(o);
  const PhaseSpaceField w = wigner(input_signal(o));
  json summary{{"output", o.output}, {"max_abs", w.max_abs()}};
  if (!o.builtin.empty()) {
    const GhostReport g = ghost_energy(w, auto_mask(o.builtin, o.mask_width));
    summary["ghost"] = g.to_json();
    write_json(with_suffix(o.output, ".ghost.json"), g.to_json());
  }
  write_field2d(o, w, "wigner");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_stft(const Options& o) {
  require_output(o);
  const PhaseSpaceField v = stft(input_signal(o), WindowSpec{});
  write_field2d(o, v, "stft", {{"window", "2^{1/4} e^{-pi t^2}"}});
  std::cout << json{{"output", o.output}, {"max_abs", v.max_abs()}}.dump(2) << "\n";
  return 0;
}

int cmd_husimi(const Options& o) {
  require_output(o);
  const PhaseSpaceField h = husimi(input_signal(o));
  json summary{{"output", o.output}, {"max_abs", h.max_abs()}};
  if (!o.builtin.empty()) summary["ghost"] = ghost_energy(h, auto_mask(o.builtin, o.mask_width)).to_json();
  write_field2d(o, h, "husimi");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct KernelSetup {
  PhaseSpec phase;
  SymbolSpec symbol;
  SmoothingSpec smoothing;
  Grid4D grid;
};

KernelSetup kernel_setup(const Options& o) {
  const Grid1D base(0.0, o.half_width, o.n);
  return {PhaseSpec::from_json(parse_json_flag(o.phase, "phase")), SymbolSpec::from_json(parse_json_flag(o.symbol, "symbol")),
          SmoothingSpec::from_json(parse_json_flag(o.smoothing, "smoothing")), kernel_grid(base)};
}

// Agreement of the two routes at lattice points with |x|, |y| <= h / 3 and
// |xi|, |eta| <= 2/5 of the frequency half-width.
json route_agreement(const KernelField& dense, const KernelField& analytic, std::uint64_t seed) {
  const Grid4D& g = dense.grid();
  const double X = g.x.half_width() / 3.0, E = 0.4 * g.xi.half_width();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto node = [](const Grid1D& a, double v) { return static_cast<std::size_t>(std::lround((v - a.point(0)) / a.spacing())); };
  double num = 0.0, den = 0.0;
  json points = json::array();
  for (int s = 0; s < 50; ++s) {
    const std::size_t a = node(g.x, X * u(rng)), b = node(g.xi, E * u(rng)), c = node(g.y, X * u(rng)), d = node(g.eta, E * u(rng));
    const double x = g.x.point(a), xi = g.xi.point(b), y = g.y.point(c), eta = g.eta.point(d);
    const cplx vd = dense.dense().at(a, b, c, d), va = analytic.evaluate(x, xi, y, eta);
    num = std::max(num, std::abs(vd - va));
    den = std::max(den, std::abs(va));
    points.push_back({{"z", {x, xi}}, {"w", {y, eta}}, {"schwartz", {vd.real(), vd.imag()}}, {"analytic", {va.real(), va.imag()}}});
  }
  return {{"relative_error", den > 0.0 ? num / den : num},
          {"max_abs_difference", num},
          {"interior", {{"position", X}, {"frequency", E}}},
          {"points", points}};
}

int cmd_kernel(const Options& o) {
  require_output(o);
  if (o.route != "schwartz" && o.route != "analytic" && o.route != "both")
    throw UsageError("--route must be schwartz, analytic or both");
  const KernelSetup s = kernel_setup(o);
  const CanonicalMap chi = canonical_map(s.phase);
  const std::vector<int> Ns = parse_N(o.N);
  DecayOptions d;
  d.seed = o.seed;
  d.max_samples = o.max_samples;
  std::vector<std::string> warnings;
  json summary{{"output", o.output}};

  std::optional<KernelField> dense, analytic;
  if (o.route != "schwartz") {
    try {
      analytic = smooth_kernel(wigner_kernel_analytic(s.phase, s.symbol, s.grid), s.smoothing, &warnings);
    } catch (const DomainError& e) {
      throw DomainError(std::string("analytic route unavailable: ") + e.what());
    }
    json j = io::factored_json(analytic->factored(), Profile::canonical_grid());
    j["provenance"] = provenance("kernel", o);
    j["smoothing"] = s.smoothing.to_json();
    j["phase"] = s.phase.to_json();
    write_json(with_suffix(o.output, ".analytic.json"), j);
    const DecayReport r = decay_fit(*analytic, chi, Ns, d);
    write_json(with_suffix(o.output, ".analytic.decay.json"), r.to_json());
    summary["analytic"] = {{"decay", r.to_json()}};
  }
  if (o.route != "analytic") {
    dense = smooth_kernel(wigner_kernel_via_schwartz(s.phase, s.symbol, s.grid, o.allow_large), s.smoothing, &warnings);
    io::FieldFile f = io::to_file(dense->dense());
    f.extra = {{"provenance", provenance("kernel", o)}, {"smoothing", s.smoothing.to_json()}, {"phase", s.phase.to_json()}};
    io::write_field(with_suffix(o.output, ".schwartz.bin"), f);
    const DecayReport r = decay_fit(*dense, chi, Ns, d);
    write_json(with_suffix(o.output, ".schwartz.decay.json"), r.to_json());
    summary["schwartz"] = {{"decay", r.to_json()}};
  }
  if (dense && analytic) {
    const json a = route_agreement(*dense, *analytic, o.seed);
    write_json(with_suffix(o.output, ".agreement.json"), a);
    summary["agreement"] = {{"relative_error", a["relative_error"]}};
  }
  summary["warnings"] = warnings;
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_decay(const Options& o) {
  const PhaseSpec phase = PhaseSpec::from_json(parse_json_flag(o.phase, "phase"));
  const std::vector<int> Ns = parse_N(o.N);
  DecayOptions d;
  d.seed = o.seed;
  d.max_samples = o.max_samples;
  KernelField k = [&] {
    if (!o.input.empty()) return KernelField{io::to_kernel4d(io::read_field(o.input))};
    const KernelSetup s = kernel_setup(o);
    return smooth_kernel(wigner_kernel_analytic(s.phase, s.symbol, s.grid), s.smoothing);
  }();
  const DecayReport r = decay_fit(k, canonical_map(phase), Ns, d);
  if (!o.output.empty()) write_json(o.output, r.to_json());
  std::cout << r.to_json().dump(2) << "\n";
  return 0;
}

int cmd_gabor(const Options& o) {
  require_output(o);
  const PhaseSpec phase = PhaseSpec::from_json(parse_json_flag(o.phase, "phase"));
  const SymbolSpec symbol = SymbolSpec::from_json(parse_json_flag(o.symbol, "symbol"));
  std::vector<PhasePoint> zs, ws;
  for (const auto& s : o.z) zs.push_back(parse_point(s));
  for (const auto& s : o.w) ws.push_back(parse_point(s));
  if (zs.empty() != ws.empty()) throw UsageError("give both --z and --w, or neither for the default 10 x 10 sample");
  if (zs.empty()) {
    // w on a 10-point sample of [-1.5, 1.5]^2, z near chi(w).
    const CanonicalMap chi = canonical_map(phase);
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(-1.5, 1.5), v(-0.5, 0.5);
    for (int i = 0; i < 10; ++i) ws.push_back({u(rng), u(rng)});
    for (const auto& [y, eta] : ws) {
      const auto [x, xi] = chi(y, eta);
      zs.push_back({x + v(rng), xi + v(rng)});
    }
  }
  std::vector<std::string> warnings;
  const WindowSpec window{WindowSpec::Kind::standard_gaussian, WindowSpec::Normalization::gabor};
  const auto m = gabor_matrix_block(phase, symbol, zs, ws, window, &warnings);
  json rows = json::array();
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (std::size_t j = 0; j < ws.size(); ++j)
      rows.push_back({{"z", {zs[i].first, zs[i].second}},
                      {"w", {ws[j].first, ws[j].second}},
                      {"re", m[i][j].real()},
                      {"im", m[i][j].imag()},
                      {"abs2", std::norm(m[i][j])}});
  const json out{{"provenance", provenance("gabor", o)},
                 {"phase", phase.to_json()},
                 {"window", "2^{-1/4} e^{-pi t^2}"},
                 {"orientation", "G(z, w) = <T pi(w) g, pi(z) g>"},
                 {"entries", rows},
                 {"warnings", warnings}};
  write_json(o.output, out);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << json{{"output", o.output}, {"entries", rows.size()}}.dump(2) << "\n";
  return 0;
}

int cmd_ghostbusters(const Options& o) {
  require_output(o);
  const Grid1D axis(0.0, o.half_width, o.n);
  const Grid2D grid{axis, axis};
  const Mask mask = Mask::axes_cross(o.mask_width);
  const AppendixWigner w = appendix_wigner_one_plus_delta(grid);
  const PhaseSpaceField h = appendix_husimi_one_plus_delta(grid);
  const PhaseSpaceField b = appendix_bessel_smoothed(grid);

  json ridges = json::array();
  for (const auto& l : w.lines)
    ridges.push_back({{"axis", l.axis == 0 ? "x" : "xi"}, {"position", l.position}, {"density", l.density}});
  auto emit = [&](const std::string& suffix, const PhaseSpaceField& f, json extra) {
    io::FieldFile file = io::to_file(f);
    file.extra = {{"provenance", "closed-form"}, {"run", provenance("ghostbusters", o)}};
    for (auto& [k, v] : extra.items()) file.extra[k] = v;
    io::write_field(with_suffix(o.output, suffix), file);
  };
  emit(".wigner.bin", w.smooth, {{"field", "W(1 + delta), smooth part"}, {"ridges", ridges}});
  emit(".husimi.bin", h, {{"field", "H(1 + delta)"}});
  emit(".bessel.bin", b, {{"field", "W(1 + delta) * e^{-|u| - |v|}"}});

  // The ridges of W(1 + delta) lie on the axes, inside any axes-cross mask;
  // its report covers the smooth part.
  const json report{{"mask_width", o.mask_width},
                    {"wigner_smooth_part", ghost_energy(w.smooth, mask).to_json()},
                    {"husimi", ghost_energy(h, mask).to_json()},
                    {"bessel_smoothed", ghost_energy(b, mask).to_json()}};
  write_json(with_suffix(o.output, ".ghost.json"), report);
  std::cout << report.dump(2) << "\n";
  return 0;
}

// Values from --config fill options whose flags were not given.
void apply_config(Options& o, const CLI::App& app) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw UsageError("cannot read config file " + o.config);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const json j = parse_json_flag(buffer.str(), "config");
  auto unset = [&](const std::string& flag) { return app.get_option(flag)->count() == 0; };
  auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.contains("n") && unset("--n")) o.n = j["n"].get<std::size_t>();
  if (j.contains("half_width") && unset("--half-width")) o.half_width = j["half_width"].get<double>();
  if (j.contains("phase") && unset("--phase")) o.phase = j["phase"].dump();
  if (j.contains("symbol") && unset("--symbol")) o.symbol = j["symbol"].dump();
  if (j.contains("smoothing") && unset("--smoothing")) o.smoothing = j["smoothing"].dump();
  if (j.contains("N") && unset("--N")) {
    if (j["N"].is_array()) {
      o.N.clear();
      for (const auto& v : j["N"]) o.N += (o.N.empty() ? "" : ",") + std::to_string(v.get<int>());
    } else {
      o.N = text(j["N"]);
    }
  }
  if (j.contains("route") && unset("--route")) o.route = j["route"].get<std::string>();
  if (j.contains("mask_width") && unset("--mask-width")) o.mask_width = j["mask_width"].get<double>();
  if (j.contains("seed") && unset("--seed")) o.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("threads") && unset("--threads")) o.threads = j["threads"].get<std::size_t>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner kernels of Fourier integral operators: fields, kernels, decay and ghost diagnostics", "wigner-lab"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--n", o.n, "Lattice points per axis");
    c->add_option("--half-width", o.half_width, "Lattice half-width h (points c - h + 2hk/n)");
    c->add_option("-o,--output", o.output, "Output path (prefix for multi-file commands)");
    c->add_option("--csv", o.csv, "Also write the 2D field as CSV");
    c->add_option("--threads", o.threads, "Worker threads (default: WIGNER_LAB_THREADS, else all cores)");
    c->add_option("--seed", o.seed, "Seed for sampled points");
    c->add_option("--config", o.config, "JSON file with defaults for the flags");
    c->add_option("--mask-width", o.mask_width, "Half-width of the mask tubes");
    c->add_option("--phase", o.phase, "Phase JSON, e.g. {\"family\":\"cubic\",\"t\":1}");
    c->add_option("--symbol", o.symbol, "Symbol JSON: \"one\" or \"bounded_trig\"");
    c->add_option("--smoothing", o.smoothing, "Smoothing JSON, e.g. {\"kind\":\"bessel\",\"M\":-2,\"axes\":[\"xi\",\"y\"]}");
    c->add_option("--N", o.N, "Comma-separated decay orders");
    c->add_option("--route", o.route, "Kernel route: schwartz, analytic or both");
    c->add_option("--max-samples", o.max_samples, "Lattice points evaluated by the decay fit");
  };
  auto signal_input = [&](CLI::App* c) {
    c->add_option("--builtin", o.builtin, "Builtin signal: gaussian, shifted-gaussian, chirp, two-gaussians");
    c->add_option("--input", o.input, "Signal file (binary + sidecar)");
  };

  std::map<CLI::App*, std::function<int(const Options&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<int(const Options&)> fn) {
    CLI::App* c = app.add_subcommand(name, help);
    common(c);
    handlers[c] = std::move(fn);
    return c;
  };
  signal_input(sub("wigner", "Wigner distribution of a signal", cmd_wigner));
  signal_input(sub("stft", "Short-time Fourier transform with the Gaussian window", cmd_stft));
  signal_input(sub("husimi", "Husimi distribution |V_phi f|^2", cmd_husimi));
  CLI::App* kernel = sub("kernel", "Wigner kernel of an FIO by the Schwartz and/or closed-form route, smoothed, with decay report",
                         cmd_kernel);
  kernel->add_flag("--allow-large", o.allow_large, "Build dense kernels above 64 points per axis");
  CLI::App* gabor = sub("gabor", "Gabor matrix entries with the 2^{-1/4} e^{-pi t^2} window", cmd_gabor);
  gabor->add_option("--z", o.z, "Point z as x,xi (repeatable)");
  gabor->add_option("--w", o.w, "Point w as y,eta (repeatable)");
  sub("ghostbusters", "W(1 + delta), H(1 + delta), the Bessel-smoothed field and their ghost reports",
      cmd_ghostbusters);
  CLI::App* decay = sub("decay", "Decay report of a kernel file or of a closed-form smoothed kernel", cmd_decay);
  decay->add_option("--input", o.input, "Dense kernel file (binary + sidecar)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto& [c, fn] : handlers) {
      if (!c->parsed()) continue;
      apply_config(o, *c);
      if (o.threads > 0) set_thread_count(o.threads);
      return fn(o);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NumericalGuard& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const GridMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "wigner_lab/errors.hpp"
#include "wigner_lab/io.hpp"

namespace wigner_lab {

Signal::Signal(Grid1D g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
  if (samples.size() != grid.n()) throw SizingError("signal length does not match its grid");
}

PhaseSpaceField::PhaseSpaceField(Grid2D g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
  if (samples.size() != grid.size()) throw SizingError("field size does not match its grid");
}

double PhaseSpaceField::max_abs() const {
  double m = 0.0;
  for (const auto& v : samples) m = std::max(m, std::abs(v));
  return m;
}

double PhaseSpaceField::max_abs_imag() const {
  double m = 0.0;
  for (const auto& v : samples) m = std::max(m, std::abs(v.imag()));
  return m;
}

double DenseKernel::max_abs() const {
  double m = 0.0;
  for (const auto& v : samples) m = std::max(m, std::abs(v));
  return m;
}

namespace io {

static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");

std::filesystem::path sidecar_path(const std::filesystem::path& bin) {
  auto p = bin;
  p += ".json";
  return p;
}

nlohmann::json grid_json(const Grid1D& g) {
  return {{"center", g.center()}, {"half_width", g.half_width()}, {"n", g.n()}};
}

Grid1D grid_from_json(const nlohmann::json& j) {
  return Grid1D(j.at("center").get<double>(), j.at("half_width").get<double>(), j.at("n").get<std::size_t>());
}

void write_field(const std::filesystem::path& bin, const FieldFile& f) {
  std::size_t expected = 1;
  for (const auto& a : f.axes) expected *= a.n();
  if (expected != f.samples.size()) throw SizingError("field sample count does not match axes");
  {
    std::ofstream out(bin, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + bin.string() + " for writing");
    out.write(reinterpret_cast<const char*>(f.samples.data()),
              static_cast<std::streamsize>(f.samples.size() * sizeof(cplx)));
  }
  nlohmann::json side = f.extra.is_object() ? f.extra : nlohmann::json::object();
  side["kind"] = f.kind;
  side["real_only"] = f.real_only;
  side["axes"] = nlohmann::json::array();
  for (const auto& a : f.axes) side["axes"].push_back(grid_json(a));
  side["format"] = "f64le interleaved re,im; row-major";
  std::ofstream js(sidecar_path(bin));
  js << side.dump(2) << "\n";
}

FieldFile read_field(const std::filesystem::path& bin) {
  FieldFile f;
  nlohmann::json side;
  {
    std::ifstream js(sidecar_path(bin));
    if (!js) throw FormatError("missing sidecar " + sidecar_path(bin).string(), 0);
    std::string text((std::istreambuf_iterator<char>(js)), std::istreambuf_iterator<char>());
    try {
      side = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError("sidecar parse error: " + std::string(e.what()), e.byte);
    }
  }
  try {
    f.kind = side.at("kind").get<std::string>();
    f.real_only = side.value("real_only", false);
    for (const auto& a : side.at("axes")) f.axes.push_back(grid_from_json(a));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("sidecar schema error: " + std::string(e.what()), 0);
  }
  f.extra = side;
  std::size_t expected = 1;
  for (const auto& a : f.axes) expected *= a.n();
  std::ifstream in(bin, std::ios::binary | std::ios::ate);
  if (!in) throw FormatError("cannot open " + bin.string(), 0);
  const auto bytes = static_cast<std::size_t>(in.tellg());
  const std::size_t want = expected * sizeof(cplx);
  if (bytes != want)
    throw FormatError("binary payload has " + std::to_string(bytes) + " bytes, expected " + std::to_string(want),
                      std::min(bytes, want));
  in.seekg(0);
  f.samples.resize(expected);
  in.read(reinterpret_cast<char*>(f.samples.data()), static_cast<std::streamsize>(want));
  return f;
}

namespace {
bool all_real(const std::vector<cplx>& v) {
  return std::all_of(v.begin(), v.end(), [](const cplx& c) { return c.imag() == 0.0; });
}
}  // namespace

FieldFile to_file(const Signal& s) { return {"signal", {s.grid}, s.samples, all_real(s.samples), {}}; }

FieldFile to_file(const PhaseSpaceField& f) {
  return {"field2d", {f.grid.axis0, f.grid.axis1}, f.samples, all_real(f.samples), {}};
}

FieldFile to_file(const DenseKernel& k) {
  return {"kernel4d", {k.grid.x, k.grid.xi, k.grid.y, k.grid.eta}, k.samples, all_real(k.samples), {}};
}

namespace {
void require_kind(const FieldFile& f, const char* kind, std::size_t axes) {
  if (f.kind != kind || f.axes.size() != axes)
    throw FormatError("expected a " + std::string(kind) + " file, got '" + f.kind + "'", 0);
}
}  // namespace

Signal to_signal(const FieldFile& f) {
  require_kind(f, "signal", 1);
  return Signal(f.axes[0], f.samples);
}

PhaseSpaceField to_field2d(const FieldFile& f) {
  require_kind(f, "field2d", 2);
  return PhaseSpaceField(Grid2D{f.axes[0], f.axes[1]}, f.samples);
}

DenseKernel to_kernel4d(const FieldFile& f) {
  require_kind(f, "kernel4d", 4);
  DenseKernel k(Grid4D{f.axes[0], f.axes[1], f.axes[2], f.axes[3]});
  k.samples = f.samples;
  return k;
}

void write_csv(const std::filesystem::path& path, const PhaseSpaceField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "x,xi,re,im\n";
  for (std::size_t j = 0; j < f.grid.axis0.n(); ++j)
    for (std::size_t k = 0; k < f.grid.axis1.n(); ++k) {
      const auto v = f.at(j, k);
      out << f.grid.axis0.point(j) << ',' << f.grid.axis1.point(k) << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

nlohmann::json factored_json(const FactoredKernel& k, const Grid1D& profile_grid) {
  auto profile_json = [&](const Profile& p) {
    nlohmann::json j;
    if (p.is_delta()) {
      j["kind"] = "delta";
      return j;
    }
    if (!p.pointwise()) {
      j["kind"] = "distribution";
      return j;
    }
    j["kind"] = "sampled";
    j["grid"] = grid_json(profile_grid);
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (std::size_t i = 0; i < profile_grid.n(); ++i) {
      const auto v = p(profile_grid.point(i));
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
  };
  nlohmann::json out;
  out["kind"] = "kernel4d-factored";
  out["axes"] = {grid_json(k.grid.x), grid_json(k.grid.xi), grid_json(k.grid.y), grid_json(k.grid.eta)};
  out["form"] = "sum_i w_i exp(2 pi i (x_frequency_i x + eta_frequency_i eta)) P_i(y - x + shift_i(eta)) Q_i(xi - eta - offset_i)";
  out["pending_x_smoothing"] = k.pending_x.has_value();
  out["pending_eta_smoothing"] = k.pending_eta.has_value();
  out["terms"] = nlohmann::json::array();
  for (const auto& t : k.terms) {
    nlohmann::json tj;
    tj["weight"] = {t.weight.real(), t.weight.imag()};
    tj["x_frequency"] = t.x_freq;
    tj["eta_frequency"] = t.eta_freq;
    tj["shift_poly_eta"] = t.shift;
    tj["offset"] = t.offset;
    tj["position_profile"] = profile_json(t.position);
    tj["frequency_profile"] = profile_json(t.frequency);
    out["terms"].push_back(tj);
  }
  return out;
}

}  // namespace io
}  // namespace wigner_lab

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "wigner_lab/field.hpp"

namespace wigner_lab::io {

/// Generic content of a binary field file: little-endian float64 (re, im)
/// pairs, row-major in the sidecar's axis order.
struct FieldFile {
  std::string kind;  // "signal" | "field2d" | "kernel4d"
  std::vector<Grid1D> axes;
  std::vector<cplx> samples;
  bool real_only = false;
  nlohmann::json extra;  // provenance and other echoed metadata
};

std::filesystem::path sidecar_path(const std::filesystem::path& bin);

void write_field(const std::filesystem::path& bin, const FieldFile& f);
FieldFile read_field(const std::filesystem::path& bin);

FieldFile to_file(const Signal& s);
FieldFile to_file(const PhaseSpaceField& f);
FieldFile to_file(const DenseKernel& k);

Signal to_signal(const FieldFile& f);
PhaseSpaceField to_field2d(const FieldFile& f);
DenseKernel to_kernel4d(const FieldFile& f);

/// 2D slice export with header `x,xi,re,im`.
void write_csv(const std::filesystem::path& path, const PhaseSpaceField& f);

nlohmann::json grid_json(const Grid1D& g);
Grid1D grid_from_json(const nlohmann::json& j);

/// Factored kernels export their profiles (sampled on `profile_grid`) and the
/// affine argument map of every term.
nlohmann::json factored_json(const FactoredKernel& k, const Grid1D& profile_grid);

}  // namespace wigner_lab::io

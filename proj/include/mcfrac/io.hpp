#pragma once

// File formats.
//
// Tensor files (little-endian):
//   "MCFT" | u32 version | u32 dims | u32 size[dims] | u8 kind | f64 nu |
//   f64 payload, row-major, complex values interleaved (re, im).
// kind: 0 real grid, 1 complex grid, 2 MCF coefficients, 3 Fourier-like
// coefficients, 4 complex MCF, 5 complex Fourier-like.
//
// Basis files are JSON: {"format": "mcfrac-basis", "version": 1, "degree",
// "nu", "eigenvalues": [...], "vectors": [[row 0], ...]}.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "mcfrac/fnls.hpp"
#include "mcfrac/fourier_like.hpp"
#include "mcfrac/tensor.hpp"

namespace mcfrac {

enum class TensorKind : std::uint8_t {
  grid_real = 0,
  grid_complex = 1,
  mcf = 2,
  fourier_like = 3,
  mcf_complex = 4,
  fourier_like_complex = 5,
};

inline constexpr std::uint32_t kTensorFormatVersion = 1;

/// Raw contents of a tensor file.
struct TensorFile {
  TensorKind kind = TensorKind::grid_real;
  std::uint32_t dims = 1;
  std::vector<std::uint32_t> sizes;
  double nu = 1.0;
  std::vector<double> payload;  // complex kinds hold 2 doubles per entry
};

void write_tensor_file(const std::string& path, const TensorFile& t);
TensorFile read_tensor_file(const std::string& path);

void save(const std::string& path, const GridField& f);
void save(const std::string& path, const ComplexGridField& f);
void save(const std::string& path, const Expansion& e);
void save(const std::string& path, const ComplexExpansion& e);

/// Loads a real expansion; the file must match `basis` in shape and nu.
Expansion load_expansion(const std::string& path, const TensorBasisPtr& basis);
GridField load_grid_field(const std::string& path, const TensorBasisPtr& basis);

std::string basis_to_json(const FourierLikeBasis1d& b);
FourierLikeBasis1d basis_from_json(const std::string& text);
void save_basis(const std::string& path, const FourierLikeBasis1d& b);
FourierLikeBasis1d load_basis(const std::string& path);

/// One {"step","time","mass"} object per line.
void write_mass_trace(const std::string& path, const std::vector<MassSample>& trace);

}  // namespace mcfrac

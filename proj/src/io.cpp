#include "mcfrac/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "mcfrac/error.hpp"

namespace mcfrac {
namespace {

static_assert(std::endian::native == std::endian::little, "tensor files assume a little-endian host");

constexpr char kMagic[4] = {'M', 'C', 'F', 'T'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is, const std::string& path) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw DataError(path + ": truncated tensor header");
  return v;
}

bool is_complex(TensorKind k) {
  return k == TensorKind::grid_complex || k == TensorKind::mcf_complex || k == TensorKind::fourier_like_complex;
}

std::vector<std::uint32_t> sizes_of(const TensorBasis& b) {
  return std::vector<std::uint32_t>(b.dims(), static_cast<std::uint32_t>(b.order()));
}

std::vector<double> interleave(const std::vector<std::complex<double>>& z) {
  std::vector<double> out(2 * z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[2 * i] = z[i].real();
    out[2 * i + 1] = z[i].imag();
  }
  return out;
}

void check_matches(const TensorFile& t, const TensorBasis& b, const std::string& path) {
  if (t.dims != b.dims() || t.sizes != sizes_of(b))
    throw DataError(path + ": tensor shape does not match the basis");
  if (t.nu != b.nu()) throw DataError(path + ": tensor nu " + std::to_string(t.nu) + " differs from basis nu");
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

}  // namespace

void write_tensor_file(const std::string& path, const TensorFile& t) {
  std::size_t count = 1;
  for (auto s : t.sizes) count *= s;
  if (t.sizes.size() != t.dims) throw InvalidArgument("write_tensor_file: sizes do not match dims");
  if (t.payload.size() != count * (is_complex(t.kind) ? 2 : 1))
    throw InvalidArgument("write_tensor_file: payload does not match sizes");
  auto os = open_out(path, std::ios::binary);
  os.write(kMagic, 4);
  put(os, kTensorFormatVersion);
  put(os, t.dims);
  for (auto s : t.sizes) put(os, s);
  put(os, static_cast<std::uint8_t>(t.kind));
  put(os, t.nu);
  os.write(reinterpret_cast<const char*>(t.payload.data()), static_cast<std::streamsize>(t.payload.size() * sizeof(double)));
  if (!os) throw IoError("write to '" + path + "' failed");
}

TensorFile read_tensor_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "'");
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw DataError(path + ": not a tensor file");
  const auto version = get<std::uint32_t>(is, path);
  if (version != kTensorFormatVersion) throw DataError(path + ": unsupported tensor format version " + std::to_string(version));
  TensorFile t;
  t.dims = get<std::uint32_t>(is, path);
  if (t.dims < 1 || t.dims > 3) throw DataError(path + ": dims must be 1, 2 or 3");
  std::size_t count = 1;
  for (std::uint32_t k = 0; k < t.dims; ++k) {
    t.sizes.push_back(get<std::uint32_t>(is, path));
    count *= t.sizes.back();
  }
  const auto kind = get<std::uint8_t>(is, path);
  if (kind > 5) throw DataError(path + ": unknown tensor kind " + std::to_string(kind));
  t.kind = static_cast<TensorKind>(kind);
  t.nu = get<double>(is, path);
  t.payload.resize(count * (is_complex(t.kind) ? 2 : 1));
  if (!is.read(reinterpret_cast<char*>(t.payload.data()), static_cast<std::streamsize>(t.payload.size() * sizeof(double))))
    throw DataError(path + ": truncated payload");
  return t;
}

void save(const std::string& path, const GridField& f) {
  check_shape(f, "save");
  write_tensor_file(path, {TensorKind::grid_real, static_cast<std::uint32_t>(f.basis->dims()), sizes_of(*f.basis),
                           f.basis->nu(), f.values});
}

void save(const std::string& path, const ComplexGridField& f) {
  check_shape(f, "save");
  write_tensor_file(path, {TensorKind::grid_complex, static_cast<std::uint32_t>(f.basis->dims()), sizes_of(*f.basis),
                           f.basis->nu(), interleave(f.values)});
}

void save(const std::string& path, const Expansion& e) {
  check_shape(e, "save");
  const auto kind = e.rep == Representation::mcf ? TensorKind::mcf : TensorKind::fourier_like;
  write_tensor_file(path, {kind, static_cast<std::uint32_t>(e.basis->dims()), sizes_of(*e.basis), e.basis->nu(), e.coeffs});
}

void save(const std::string& path, const ComplexExpansion& e) {
  check_shape(e, "save");
  const auto kind = e.rep == Representation::mcf ? TensorKind::mcf_complex : TensorKind::fourier_like_complex;
  write_tensor_file(path, {kind, static_cast<std::uint32_t>(e.basis->dims()), sizes_of(*e.basis), e.basis->nu(),
                           interleave(e.coeffs)});
}

Expansion load_expansion(const std::string& path, const TensorBasisPtr& basis) {
  auto t = read_tensor_file(path);
  if (t.kind != TensorKind::mcf && t.kind != TensorKind::fourier_like)
    throw DataError(path + ": not a real coefficient tensor");
  check_matches(t, *basis, path);
  return {basis, t.kind == TensorKind::mcf ? Representation::mcf : Representation::fourier_like, std::move(t.payload)};
}

GridField load_grid_field(const std::string& path, const TensorBasisPtr& basis) {
  auto t = read_tensor_file(path);
  if (t.kind != TensorKind::grid_real) throw DataError(path + ": not a real grid tensor");
  check_matches(t, *basis, path);
  return {basis, std::move(t.payload)};
}

std::string basis_to_json(const FourierLikeBasis1d& b) {
  nlohmann::json j;
  j["format"] = "mcfrac-basis";
  j["version"] = 1;
  j["degree"] = b.degree();
  j["nu"] = b.nu();
  j["eigenvalues"] = std::vector<double>(b.eigenvalues().begin(), b.eigenvalues().end());
  nlohmann::json rows = nlohmann::json::array();
  const std::size_t n = b.order();
  for (std::size_t i = 0; i < n; ++i)
    rows.push_back(std::vector<double>(b.vectors().begin() + static_cast<std::ptrdiff_t>(i * n),
                                       b.vectors().begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
  j["vectors"] = std::move(rows);
  return j.dump();
}

FourierLikeBasis1d basis_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "mcfrac-basis") throw DataError("basis file: wrong format tag");
    if (j.at("version").get<int>() != 1) throw DataError("basis file: unsupported version");
    const auto degree = j.at("degree").get<std::size_t>();
    const auto nu = j.at("nu").get<double>();
    auto lambda = j.at("eigenvalues").get<std::vector<double>>();
    std::vector<double> e;
    for (const auto& row : j.at("vectors")) {
      auto r = row.get<std::vector<double>>();
      if (r.size() != degree + 1) throw DataError("basis file: ragged eigenvector matrix");
      e.insert(e.end(), r.begin(), r.end());
    }
    return FourierLikeBasis1d(degree, nu, std::move(lambda), std::move(e));
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("basis file: ") + ex.what());
  } catch (const InvalidArgument& ex) {
    throw DataError(std::string("basis file: ") + ex.what());
  }
}

void save_basis(const std::string& path, const FourierLikeBasis1d& b) {
  auto os = open_out(path);
  os << basis_to_json(b) << '\n';
  if (!os) throw IoError("write to '" + path + "' failed");
}

FourierLikeBasis1d load_basis(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return basis_from_json(ss.str());
}

void write_mass_trace(const std::string& path, const std::vector<MassSample>& trace) {
  auto os = open_out(path);
  os << std::setprecision(17);
  for (const auto& m : trace) os << R"({"step":)" << m.step << R"(,"time":)" << m.time << R"(,"mass":)" << m.mass << "}\n";
  if (!os) throw IoError("write to '" + path + "' failed");
}

}  // namespace mcfrac

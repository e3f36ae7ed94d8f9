#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "mcfrac/error.hpp"
#include "mcfrac/io.hpp"
#include "mcfrac/transforms.hpp"

using namespace mcfrac;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("mcfrac_io_" + std::to_string(::getpid()))) { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

double bump(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) r += v * v;
  return std::exp(-r) * (1.0 + x[0]);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("tensor files round trip") {
  TempDir tmp;
  const auto basis = TensorBasis::create(2, 6, 1.7);
  const auto g = sample(bump, basis);
  const auto e = analyze(g);
  const auto fl = to_fourier_like(e);

  save(tmp.file("g.mcft"), g);
  save(tmp.file("e.mcft"), e);
  save(tmp.file("fl.mcft"), fl);
  CHECK(load_grid_field(tmp.file("g.mcft"), basis).values == g.values);
  const auto le = load_expansion(tmp.file("e.mcft"), basis);
  CHECK(le.rep == Representation::mcf);
  CHECK(le.coeffs == e.coeffs);
  const auto lf = load_expansion(tmp.file("fl.mcft"), basis);
  CHECK(lf.rep == Representation::fourier_like);
  CHECK(lf.coeffs == fl.coeffs);

  const auto raw = read_tensor_file(tmp.file("fl.mcft"));
  CHECK(raw.kind == TensorKind::fourier_like);
  CHECK(raw.dims == 2);
  CHECK(raw.sizes == std::vector<std::uint32_t>{7, 7});
  CHECK(raw.nu == 1.7);
  // header: magic, version, dims, sizes, kind, nu
  const auto bytes = slurp(tmp.file("fl.mcft"));
  CHECK(bytes.substr(0, 4) == "MCFT");
  CHECK(bytes.size() == 4 + 4 + 4 + 2 * 4 + 1 + 8 + 49 * 8);

  ComplexGridField cg{basis, {}};
  for (double v : g.values) cg.values.emplace_back(v, -v);
  save(tmp.file("c.mcft"), cg);
  const auto rc = read_tensor_file(tmp.file("c.mcft"));
  CHECK(rc.kind == TensorKind::grid_complex);
  REQUIRE(rc.payload.size() == 2 * g.values.size());
  CHECK(rc.payload[2] == g.values[1]);
  CHECK(rc.payload[3] == -g.values[1]);
  save(tmp.file("ce.mcft"), to_fourier_like(analyze(cg)));
  CHECK(read_tensor_file(tmp.file("ce.mcft")).kind == TensorKind::fourier_like_complex);
}

TEST_CASE("tensor file errors") {
  TempDir tmp;
  const auto basis = TensorBasis::create(1, 6, 1.0);
  const auto g = sample(bump, basis);
  save(tmp.file("g.mcft"), g);

  CHECK_THROWS_AS(read_tensor_file(tmp.file("missing.mcft")), IoError);
  CHECK_THROWS_AS(save(tmp.file("no/such/dir/x.mcft"), g), IoError);
  CHECK_THROWS_AS(load_grid_field(tmp.file("g.mcft"), TensorBasis::create(1, 7, 1.0)), DataError);
  CHECK_THROWS_AS(load_grid_field(tmp.file("g.mcft"), TensorBasis::create(1, 6, 2.0)), DataError);
  CHECK_THROWS_AS(load_expansion(tmp.file("g.mcft"), basis), DataError);
  save(tmp.file("e.mcft"), analyze(g));
  CHECK_THROWS_AS(load_grid_field(tmp.file("e.mcft"), basis), DataError);

  const auto bytes = slurp(tmp.file("g.mcft"));
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream(tmp.file(name), std::ios::binary) << content;
    return tmp.file(name);
  };
  CHECK_THROWS_AS(read_tensor_file(write("trunc.mcft", bytes.substr(0, bytes.size() - 3))), DataError);
  CHECK_THROWS_AS(read_tensor_file(write("short.mcft", bytes.substr(0, 6))), DataError);
  CHECK_THROWS_AS(read_tensor_file(write("magic.mcft", "XXXX" + bytes.substr(4))), DataError);
  std::string v2 = bytes;
  v2[4] = 2;
  CHECK_THROWS_AS(read_tensor_file(write("v2.mcft", v2)), DataError);
  std::string kind = bytes;
  kind[16] = 9;
  CHECK_THROWS_AS(read_tensor_file(write("kind.mcft", kind)), DataError);

  TensorFile bad;
  bad.dims = 2;
  bad.sizes = {3};
  CHECK_THROWS_AS(write_tensor_file(tmp.file("bad.mcft"), bad), InvalidArgument);
  bad.sizes = {3, 3};
  bad.payload.assign(8, 0.0);
  CHECK_THROWS_AS(write_tensor_file(tmp.file("bad.mcft"), bad), InvalidArgument);
}

TEST_CASE("basis files") {
  TempDir tmp;
  const auto b = make_fourier_like_basis(9, 2.5);
  save_basis(tmp.file("b.json"), *b);
  const auto l = load_basis(tmp.file("b.json"));
  CHECK(l.degree() == 9);
  CHECK(l.nu() == 2.5);
  for (std::size_t p = 0; p <= 9; ++p) CHECK(l.eigenvalue(p) == b->eigenvalue(p));
  for (std::size_t i = 0; i < 100; ++i) CHECK(l.vectors()[i] == b->vectors()[i]);

  auto j = nlohmann::json::parse(basis_to_json(*b));
  CHECK(j["format"] == "mcfrac-basis");
  CHECK(j["version"] == 1);
  CHECK(j["vectors"].size() == 10);

  auto broken = j;
  broken["format"] = "other";
  CHECK_THROWS_AS(basis_from_json(broken.dump()), DataError);
  broken = j;
  broken["version"] = 2;
  CHECK_THROWS_AS(basis_from_json(broken.dump()), DataError);
  broken = j;
  broken["vectors"][3].erase(0);
  CHECK_THROWS_AS(basis_from_json(broken.dump()), DataError);
  broken = j;
  broken.erase("eigenvalues");
  CHECK_THROWS_AS(basis_from_json(broken.dump()), DataError);
  CHECK_THROWS_AS(basis_from_json("{not json"), DataError);
  CHECK_THROWS_AS(load_basis(tmp.file("none.json")), IoError);
}

TEST_CASE("mass trace") {
  TempDir tmp;
  write_mass_trace(tmp.file("m.jsonl"), {{0, 0.0, 1.5}, {1, 0.1, 1.5000001}});
  std::ifstream is(tmp.file("m.jsonl"));
  std::string line;
  int count = 0;
  while (std::getline(is, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["step"] == count);
    CHECK(j.contains("time"));
    CHECK(j.contains("mass"));
    ++count;
  }
  CHECK(count == 2);
}

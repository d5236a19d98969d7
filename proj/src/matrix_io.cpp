#include "fockq/matrix_io.hpp"

#include <fstream>
#include <random>

#include <json.hpp>

namespace fockq {

void atomic_write(const std::filesystem::path& path, const std::string& data) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += "." + std::to_string(std::random_device{}()) + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::IoError,
            "atomic_write: cannot open " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    require(out.good(), ErrorCode::IoError,
            "atomic_write: short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    fail(ErrorCode::IoError,
         "atomic_write: rename to " + path.string() + " failed: " +
             ec.message());
  }
}

void save_matrix(const std::filesystem::path& path, const Mat& m,
                 const std::string& label) {
  std::string bytes;
  bytes.resize(static_cast<std::size_t>(m.size()) * 2 * sizeof(double));
  auto* out = reinterpret_cast<double*>(bytes.data());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      *out++ = m(r, c).real();
      *out++ = m(r, c).imag();
    }
  atomic_write(path, bytes);

  nlohmann::json side;
  side["rows"] = m.rows();
  side["cols"] = m.cols();
  side["label"] = label;
  side["format"] = "complex128-interleaved-le";
  std::filesystem::path sp = path;
  sp += ".json";
  atomic_write(sp, side.dump(2) + "\n");
}

Mat load_matrix(const std::filesystem::path& path) {
  std::filesystem::path sp = path;
  sp += ".json";
  std::ifstream side(sp);
  require(side.good(), ErrorCode::IoError,
          "load_matrix: missing sidecar " + sp.string());
  nlohmann::json meta = nlohmann::json::parse(side, nullptr, true);
  const auto rows = meta.at("rows").get<Eigen::Index>();
  const auto cols = meta.at("cols").get<Eigen::Index>();
  require(rows >= 0 && cols >= 0, ErrorCode::IoError,
          "load_matrix: bad shape in " + sp.string());

  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::IoError,
          "load_matrix: cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  require(bytes.size() ==
              static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) *
                  2 * sizeof(double),
          ErrorCode::IoError,
          "load_matrix: size mismatch in " + path.string());
  const auto* src = reinterpret_cast<const double*>(bytes.data());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      double re = *src++;
      double im = *src++;
      m(r, c) = Complex(re, im);
    }
  return m;
}

}  // namespace fockq
